use num_bigint::BigInt;

use super::PlusSeries;
use crate::cyclotomic::{CycloElem, CycloLevel};
use crate::error::{Error, Result};
use crate::padic::ilog;
use crate::ring::{Coeff, Q};

impl<R: Coeff> PlusSeries<R> {
    /// Lower bound for `min_{k ≥ len} (v(r_k) + k r)` over the unknown tail; `None` for polynomials.
    pub fn tail_min(&self, r: Q) -> Option<Q> {
        let env = self.tail?;
        let p = self.p() as u64;
        let n = self.len() as u64;
        let at = |k: u64| env.bound(self.p(), k as usize) + r * Q::from_integer(k as i64);
        let mut best = at(n);
        if env.log_loss > 0 && r > Q::from_integer(0) {
            // between powers of p the bound increases, so only k = p^a can improve on it
            let mut pa = p.pow(ilog(self.p(), n.max(1)) as u32 + 1);
            while pa < 1 << 40 {
                best = best.min(at(pa));
                pa *= p;
            }
        }
        Some(best)
    }

    /// `f(π_n)` in `L_n`, certified against the tail.
    pub fn eval_at_pi(&self, n: u32) -> Result<CycloElem<R>> {
        let level = CycloLevel::get(self.p(), n)?;
        if n == 0 {
            return Ok(CycloElem::constant(level, self.coeffs[0].clone()));
        }
        let len = self.len();
        let mut acc = CycloElem::constant(level.clone(), self.coeffs[len - 1].clone());
        for k in (0..len - 1).rev() {
            acc = acc.mul_pi().add_constant(&self.coeffs[k]);
        }
        if let Some(b) = self.tail_min(level.r()) {
            acc = acc.cap_val(b);
        }
        if acc.prec() <= 0 && !self.coeffs.iter().all(|c| c.prec() <= 0) {
            return Err(Error::InsufficientTruncation(acc.prec()));
        }
        Ok(acc)
    }

    /// The `t^j` coefficient of `φ^{-n} f`, namely `p^{-nj}/j! (∂^j f)(π_n)`.
    pub fn loc_coeff(&self, n: u32, j: u32) -> Result<CycloElem<R>> {
        let v = self.partial_pow(j).eval_at_pi(n)?;
        let mut fact = BigInt::from(1);
        for i in 2..=j as u64 {
            fact *= BigInt::from(i);
        }
        let out = v.shift(-(n as i64) * j as i64).map(|c| c.div_bigint(&fact));
        if out.prec() <= 0 {
            return Err(Error::InsufficientTruncation(out.prec()));
        }
        Ok(out)
    }

    /// `v^{[r,s]}` on the closed annulus; for plus series the inner radius governs.
    pub fn annulus_valuation(&self, r: Q, s: Q) -> Q {
        assert!(r <= s, "empty annulus");
        let at = |x: Q| {
            let known = self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.val_bound() + x * Q::from_integer(k as i64))
                .min()
                .unwrap();
            match self.tail_min(x) {
                Some(t) => known.min(t),
                None => known,
            }
        };
        at(r).min(at(s))
    }
}

impl<R: Coeff> CycloElem<R> {
    pub fn add_constant(&self, c: &R) -> Self {
        let mut coeffs = self.coeffs().to_vec();
        coeffs[0] = coeffs[0].add(c);
        CycloElem::from_coeffs(self.level().clone(), coeffs)
    }
}
