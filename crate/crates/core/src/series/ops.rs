use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::{Envelope, PlusSeries, ScalarSeries};
use crate::error::{Error, Result};
use crate::padic::{ilog, padic_binomial, PadicScalar};
use crate::poly;
use crate::ring::{Coeff, Q};

fn small_binomials(p: u32) -> Vec<i64> {
    let mut b = vec![1i64];
    for i in 1..=p as i64 {
        let prev = b[b.len() - 1];
        b.push(prev * (p as i64 - i + 1) / i);
    }
    b
}

/// Powers `u^k` of `u = (1+T)^a - 1`, truncated; `rows[k][i]` is the coefficient of `T^{k+i}`.
/// When `p^prec` fits a machine word the rows are also kept as residues.
struct SigmaTable {
    rows: Vec<Vec<PadicScalar>>,
    fixed: Option<(u64, Vec<Vec<u64>>)>,
}

type TableKey = (u32, String, usize, i64);

fn tables() -> &'static Mutex<HashMap<TableKey, Arc<SigmaTable>>> {
    static T: OnceLock<Mutex<HashMap<TableKey, Arc<SigmaTable>>>> = OnceLock::new();
    T.get_or_init(|| Mutex::new(HashMap::new()))
}

// `Σ x_i y_i mod m` for residues below `m < 2^62`.
fn dot_mod(m: u64, xs: impl Iterator<Item = (u64, u64)>) -> u64 {
    let mut acc: u128 = 0;
    for (x, y) in xs {
        acc += x as u128 * y as u128;
        if acc >= 1 << 126 {
            acc %= m as u128;
        }
    }
    (acc % m as u128) as u64
}

fn sigma_table(a: &PadicScalar, len: usize, prec: i64) -> Arc<SigmaTable> {
    let key = (a.p(), a.render(), len, prec);
    if let Some(t) = tables().lock().unwrap().get(&key) {
        return t.clone();
    }
    let p = a.p();
    let u: Vec<PadicScalar> = (0..len).map(|s| padic_binomial(a, s as u64).with_prec(prec)).collect();
    let fixed = PadicScalar::residues(&u).map(|(m, r)| {
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(len);
        let mut first = vec![0u64; len];
        first[0] = 1 % m;
        rows.push(first);
        for k in 1..len {
            let prev = &rows[k - 1];
            let row =
                (0..len - k).into_par_iter().map(|i| dot_mod(m, (0..=i).map(|j| (prev[j], r[i - j + 1])))).collect();
            rows.push(row);
        }
        (m, rows)
    });
    let rows = match &fixed {
        Some((_, rows)) => {
            rows.iter().map(|row| row.iter().map(|&x| PadicScalar::from_residue(p, x, prec)).collect()).collect()
        }
        None => {
            let mut rows: Vec<Vec<PadicScalar>> = Vec::with_capacity(len);
            let mut first = vec![PadicScalar::zero(p, prec); len];
            first[0] = PadicScalar::one(p, prec);
            rows.push(first);
            for k in 1..len {
                let prev = &rows[k - 1];
                let row: Vec<PadicScalar> = (0..len - k)
                    .into_par_iter()
                    .map(|i| {
                        let mut acc = PadicScalar::zero(p, prec);
                        for j in 0..=i {
                            let x = &prev[j];
                            if !x.is_zero() {
                                acc = acc.add(&x.mul(&u[i - j + 1]));
                            }
                        }
                        acc
                    })
                    .collect();
                rows.push(row);
            }
            rows
        }
    };
    let t = Arc::new(SigmaTable { rows, fixed });
    tables().lock().unwrap().insert(key, t.clone());
    t
}

impl<R: Coeff> PlusSeries<R> {
    fn phi_horner(&self) -> Vec<R> {
        let b = small_binomials(self.p());
        let p = self.p() as usize;
        let n = self.len();
        let mut acc: Vec<R> = vec![self.coeffs[n - 1].clone()];
        for k in (0..n - 1).rev() {
            let deg = acc.len() - 1;
            let mut next: Vec<R> = Vec::with_capacity(deg + p + 1);
            next.push(self.coeffs[k].clone());
            for e in 1..=deg + p {
                let lo = e.saturating_sub(deg).max(1);
                let hi = e.min(p);
                let mut s = acc[e - lo].mul_int(b[lo]);
                for i in lo + 1..=hi {
                    s = s.add(&acc[e - i].mul_int(b[i]));
                }
                next.push(s);
            }
            acc = next;
        }
        acc
    }

    /// `f((1+T)^p - 1)`. Exact polynomials stay exact; a truncated input of length n
    /// gives length `p n`, with the tail's influence charged to each coefficient.
    pub fn phi(&self) -> Self {
        let p = self.p() as usize;
        let n = self.len();
        let fast = R::with_residues(&self.coeffs, |m, r| {
            let d = poly::taylor_minus_one_mod(m, &r);
            let mut spread = vec![0u64; p * (n - 1) + 1];
            for (k, x) in d.into_iter().enumerate() {
                spread[p * k] = x;
            }
            poly::taylor_plus_one_mod(m, &spread)
        });
        let mut acc = fast.unwrap_or_else(|| self.phi_horner());
        match self.tail {
            None => PlusSeries::exact(acc),
            Some(env) => {
                let out_len = p * n;
                let z = self.exact_zero();
                acc.resize(out_len, z);
                for (e, c) in acc.iter_mut().enumerate().skip(n) {
                    // tail terms r_k φ(T)^k, k ≥ n, reach T^e with valuation ≥ (p k - e)/(p-1)
                    let extra = Q::new(((p * n) as i64 - e as i64).max(0), p as i64 - 1).ceil();
                    *c = c.cap_val(env.bound(self.p(), e) + extra);
                }
                PlusSeries::truncated(acc, env)
            }
        }
    }

    /// `φ^k`.
    pub fn phi_pow(&self, k: u32) -> Self {
        (0..k).fold(self.clone(), |f, _| f.phi())
    }

    /// The left inverse `ψ`, through the basis `(1+T)^k`.
    pub fn psi(&self) -> Result<Self> {
        if let Some(env) = self.tail {
            if env.log_loss > 0 {
                return Err(Error::Unsupported("psi of a series with logarithmic tail growth".into()));
            }
        }
        let p = self.p() as usize;
        let top = self.max_prec();
        let lifted: Vec<R> = self.coeffs.iter().map(|c| c.lift_prec(top)).collect();
        let d = poly::taylor_minus_one(&lifted);
        let m = (d.len() - 1) / p;
        let e: Vec<R> = (0..=m).map(|l| d[p * l].clone()).collect();
        let mut out = poly::taylor_plus_one(&e);
        // an error of valuation v at T^j, j ≥ pK, moves to T^i with valuation ≥ v + max(K - i, 0),
        // since ψ(T^{pK} g) ∈ Σ_s p^s T^{K-s} Z_p[[T]] for integral g
        let mut block: Vec<Q> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            let v = Q::from_integer(c.prec());
            match block.get_mut(j / p) {
                Some(b) => *b = (*b).min(v),
                None => block.push(v),
            }
        }
        if let Some(env) = self.tail {
            let k = self.len() / p;
            if block.len() > k {
                block[k] = block[k].min(env.floor);
            } else {
                block.push(env.floor);
            }
            block.truncate(k + 1);
        }
        let mut cap = vec![None::<Q>; out.len()];
        for (i, c) in cap.iter_mut().enumerate() {
            for (k, b) in block.iter().enumerate() {
                let x = *b + Q::from_integer((k as i64 - i as i64).max(0));
                *c = Some(c.map_or(x, |y: Q| y.min(x)));
            }
        }
        for (c, b) in out.iter_mut().zip(cap) {
            *c = c.cap_val(b.unwrap());
        }
        match self.tail {
            None => Ok(PlusSeries::exact(out)),
            Some(env) => Ok(PlusSeries::truncated(out, Envelope { floor: env.floor, log_loss: 0 })),
        }
    }

    pub fn psi_pow(&self, k: u32) -> Result<Self> {
        (0..k).try_fold(self.clone(), |f, _| f.psi())
    }

    /// `σ_a` for an integer unit `a`.
    pub fn sigma(&self, a: i64) -> Result<Self> {
        let p = self.p();
        if a.rem_euclid(p as i64) == 0 {
            return Err(Error::NotAUnit(a.to_string()));
        }
        let prec = self.sigma_prec();
        let a = PadicScalar::from_i64(p, a, prec + ilog(p, self.len() as u64) + 1);
        self.sigma_scalar(&a)
    }

    fn sigma_prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec() - c.val_bound().floor().to_integer().min(0)).max().unwrap()
    }

    /// `f((1+T)^a - 1)` for a p-adic unit `a`, truncated at the current length.
    pub fn sigma_scalar(&self, a: &PadicScalar) -> Result<Self> {
        if a.valuation() != Some(0) {
            return Err(Error::NotAUnit(a.render()));
        }
        let n = self.len();
        let table = sigma_table(a, n, self.sigma_prec());
        let fast = table.fixed.as_ref().and_then(|(tm, rows)| {
            R::with_residues(&self.coeffs, |m, c| {
                debug_assert_eq!(m, *tm);
                (0..n)
                    .into_par_iter()
                    .map(|e| if e == 0 { c[0] } else { dot_mod(m, (1..=e).map(|k| (c[k], rows[k][e - k]))) })
                    .collect()
            })
        });
        let coeffs: Vec<R> = fast.unwrap_or_else(|| self.sigma_generic(&table));
        let env = match self.tail {
            Some(env) => env,
            None => Envelope { floor: self.norm_floor(), log_loss: 0 },
        };
        Ok(PlusSeries::truncated(coeffs, env))
    }

    fn sigma_generic(&self, table: &SigmaTable) -> Vec<R> {
        let n = self.len();
        (0..n)
            .into_par_iter()
            .map(|e| {
                let mut acc = self.coeffs[0].zero_like();
                if e == 0 {
                    return self.coeffs[0].clone();
                }
                let mut first = true;
                for k in 1..=e {
                    let t = self.coeffs[k].scale(&table.rows[k][e - k]);
                    acc = if first { t } else { acc.add(&t) };
                    first = false;
                }
                acc
            })
            .collect()
    }

    /// `∂ = (1+T) d/dT`.
    pub fn partial(&self) -> Self {
        match self.tail {
            None => {
                let n = self.len();
                let coeffs = (0..n)
                    .map(|k| {
                        let a = self.coeffs[k].mul_int(k as i64);
                        if k + 1 < n {
                            a.add(&self.coeffs[k + 1].mul_int(k as i64 + 1))
                        } else {
                            a
                        }
                    })
                    .collect();
                PlusSeries::exact(coeffs)
            }
            Some(_) => {
                let s = self.extend_to(2);
                let n = s.len();
                let coeffs = (0..n - 1)
                    .map(|k| s.coeffs[k].mul_int(k as i64).add(&s.coeffs[k + 1].mul_int(k as i64 + 1)))
                    .collect();
                let folded = s.truncate(n - 1).tail.unwrap();
                let env =
                    Envelope { floor: folded.floor - Q::from_integer(folded.log_loss), log_loss: folded.log_loss };
                PlusSeries::truncated(coeffs, env)
            }
        }
    }

    pub fn partial_pow(&self, j: u32) -> Self {
        (0..j).fold(self.clone(), |f, _| f.partial())
    }

    /// `∇ = t ∂` with `t = log(1+T)`.
    pub fn nabla(&self) -> Self {
        let d = self.partial();
        let prec = d.coeffs.iter().map(|c| c.prec()).max().unwrap();
        let t = log1p_t(self.p(), d.len(), prec + ilog(self.p(), d.len() as u64));
        d.mul_scalar_series(&t)
    }

    /// `∇_h = (∇ - h + 1) ∘ ⋯ ∘ (∇ - 1) ∘ ∇`.
    pub fn nabla_h(&self, h: u32) -> Self {
        let mut g = self.nabla();
        for i in 1..h as i64 {
            g = g.nabla().sub(&g.mul_int(i));
        }
        g
    }

    /// `(1 - φψ) f`, the restriction to `Z_p^×`.
    pub fn restrict_units(&self) -> Result<Self> {
        Ok(self.sub(&self.psi()?.phi()))
    }

    /// `f - α φ(f)`, equal to the restriction when `ψ f = α f`.
    pub fn restrict_units_eigen(&self, alpha: &R) -> Self {
        self.sub(&self.phi().mul_coeff(alpha))
    }
}

/// The Amice transform `(1+T)^b` of the Dirac mass at `b ∈ Z_p`, with `len` coefficients.
pub fn amice_of_dirac(b: &PadicScalar, len: usize) -> Result<ScalarSeries> {
    if b.val_bound() < 0 {
        return Err(Error::NotIntegral);
    }
    let coeffs = (0..len).map(|k| padic_binomial(b, k as u64)).collect();
    Ok(PlusSeries::truncated(coeffs, Envelope::new(0, 0)))
}

/// `(1+T)^b` for a natural number `b`, as an exact polynomial of degree `b`.
pub fn amice_of_integer(p: u32, b: u64, prec: i64) -> ScalarSeries {
    let mut coeffs = Vec::with_capacity(b as usize + 1);
    let mut c = BigInt::one();
    for k in 0..=b {
        coeffs.push(PadicScalar::from_bigint(p, &c, prec));
        c = c * BigInt::from(b - k) / BigInt::from(k + 1);
    }
    debug_assert!(c.is_zero());
    PlusSeries::exact(coeffs)
}

/// `t = log(1+T) = Σ (-1)^{k+1} T^k / k`, first `len` coefficients to absolute precision `prec`.
pub fn log1p_t(p: u32, len: usize, prec: i64) -> ScalarSeries {
    let coeffs = (0..len.max(1))
        .map(|k| {
            if k == 0 {
                PadicScalar::zero(p, prec)
            } else {
                let num = if k % 2 == 1 { 1 } else { -1 };
                PadicScalar::rational(p, &BigInt::from(num), &BigInt::from(k), prec)
            }
        })
        .collect();
    PlusSeries::truncated(coeffs, Envelope::new(0, 1))
}
