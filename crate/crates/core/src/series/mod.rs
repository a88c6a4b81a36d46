//! Truncated power series in `T` (the plus part of the Robba ring).

mod eval;
mod ops;
mod text;

pub use ops::{amice_of_dirac, amice_of_integer, log1p_t};

use serde::{Deserialize, Serialize};

use crate::padic::{ilog, PadicScalar};
use crate::poly;
use crate::ring::{Coeff, Q};

/// Bound on the unknown coefficients `r_k`, `k ≥ len`, of a truncated series:
/// `v(r_k) ≥ floor - log_loss * floor(log_p k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Envelope {
    pub floor: Q,
    pub log_loss: i64,
}

impl Envelope {
    pub fn new(floor: i64, log_loss: i64) -> Self {
        Envelope { floor: Q::from_integer(floor), log_loss }
    }

    pub fn bound(&self, p: u32, k: usize) -> Q {
        self.floor - Q::from_integer(self.log_loss * ilog(p, k.max(1) as u64))
    }
}

/// `Σ_{k<len} c_k T^k` plus an optional tail envelope; no tail means an exact polynomial.
#[derive(Clone, Debug)]
pub struct PlusSeries<R> {
    coeffs: Vec<R>,
    tail: Option<Envelope>,
}

pub type ScalarSeries = PlusSeries<PadicScalar>;

fn vb<R: Coeff>(c: &R) -> Q {
    c.val_bound()
}

impl<R: Coeff> PlusSeries<R> {
    pub fn new(coeffs: Vec<R>, tail: Option<Envelope>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        PlusSeries { coeffs, tail }
    }

    /// An exact polynomial.
    pub fn exact(coeffs: Vec<R>) -> Self {
        Self::new(coeffs, None)
    }

    /// Known coefficients followed by an unknown tail bounded by `env`.
    pub fn truncated(coeffs: Vec<R>, env: Envelope) -> Self {
        Self::new(coeffs, Some(env))
    }

    pub fn constant(c: R) -> Self {
        Self::exact(vec![c])
    }

    pub fn p(&self) -> u32 {
        self.coeffs[0].p()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Truncation degree `D_T`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn tail(&self) -> Option<Envelope> {
        self.tail
    }

    pub fn is_exact(&self) -> bool {
        self.tail.is_none()
    }

    /// Smallest absolute precision among the known coefficients.
    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap()
    }

    fn max_prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec()).max().unwrap()
    }

    fn log_loss(&self) -> i64 {
        self.tail.map_or(0, |e| e.log_loss)
    }

    /// A zero that is exact as far as this series can tell.
    pub(crate) fn exact_zero(&self) -> R {
        self.coeffs[0].embed(&PadicScalar::zero(self.p(), self.max_prec()))
    }

    /// Coefficient `k`, materializing the tail as zero with the envelope's precision.
    pub fn coeff(&self, k: usize) -> R {
        if k < self.len() {
            return self.coeffs[k].clone();
        }
        match self.tail {
            None => self.exact_zero(),
            Some(env) => self.coeffs[0].zero_like().cap_val(env.bound(self.p(), k)),
        }
    }

    /// `min_k (v(c_k) + L floor(log_p k))` over all coefficients, known or not.
    pub fn norm_floor(&self) -> Q {
        let l = self.log_loss();
        let p = self.p();
        let known = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| vb(c) + Q::from_integer(l * ilog(p, k.max(1) as u64)))
            .min()
            .unwrap();
        match self.tail {
            Some(e) => known.min(e.floor),
            None => known,
        }
    }

    /// Keep `len` coefficients, folding the dropped ones into the envelope.
    pub fn truncate(&self, len: usize) -> Self {
        assert!(len >= 1);
        if len >= self.len() {
            return self.clone();
        }
        let l = self.log_loss();
        let p = self.p();
        let mut floor = self.tail.map(|e| e.floor);
        for (k, c) in self.coeffs.iter().enumerate().skip(len) {
            let b = vb(c) + Q::from_integer(l * ilog(p, k as u64));
            floor = Some(floor.map_or(b, |f: Q| f.min(b)));
        }
        PlusSeries { coeffs: self.coeffs[..len].to_vec(), tail: Some(Envelope { floor: floor.unwrap(), log_loss: l }) }
    }

    /// Materialize the first `len` coefficients (unknown ones become capped zeros).
    pub fn extend_to(&self, len: usize) -> Self {
        if len <= self.len() {
            return self.clone();
        }
        let coeffs = (0..len).map(|k| self.coeff(k)).collect();
        PlusSeries { coeffs, tail: self.tail }
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        PlusSeries { coeffs: self.coeffs.iter().map(f).collect(), tail: self.tail }
    }

    fn combine(&self, o: &Self, f: impl Fn(&R, &R) -> R) -> Self {
        let len = match (self.tail, o.tail) {
            (None, None) => self.len().max(o.len()),
            (Some(_), None) => self.len(),
            (None, Some(_)) => o.len(),
            (Some(_), Some(_)) => self.len().min(o.len()),
        };
        let a = self.truncate(len);
        let b = o.truncate(len);
        let coeffs = (0..len).map(|k| f(&a.coeff(k), &b.coeff(k))).collect();
        let tail = match (a.tail, b.tail) {
            (None, None) => None,
            (Some(e), None) | (None, Some(e)) => Some(e),
            (Some(x), Some(y)) => Some(Envelope { floor: x.floor.min(y.floor), log_loss: x.log_loss.max(y.log_loss) }),
        };
        PlusSeries { coeffs, tail }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a.add(b))
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a.sub(b))
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn scale(&self, s: &PadicScalar) -> Self {
        let v = Q::from_integer(s.val_bound());
        let mut r = self.map(|c| c.scale(s));
        if let Some(e) = r.tail.as_mut() {
            e.floor += v;
        }
        r
    }

    pub fn mul_coeff(&self, x: &R) -> Self {
        let v = x.val_bound();
        let mut r = self.map(|c| c.mul(x));
        if let Some(e) = r.tail.as_mut() {
            e.floor += v;
        }
        r
    }

    pub fn mul_int(&self, k: i64) -> Self {
        if k == 0 {
            return PlusSeries { coeffs: self.coeffs.iter().map(|c| c.mul_int(0)).collect(), tail: None };
        }
        let v = Q::from_integer(crate::padic::int_valuation(self.p(), &k.into()));
        let mut r = self.map(|c| c.mul_int(k));
        if let Some(e) = r.tail.as_mut() {
            e.floor += v;
        }
        r
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        self.map(|c| c.with_prec(prec))
    }

    /// Truncated product.
    pub fn mul(&self, o: &Self) -> Self {
        self.mul_impl(o)
    }

    /// Product with a scalar series.
    pub fn mul_scalar_series(&self, o: &ScalarSeries) -> Self {
        let like = self.coeffs[0].clone();
        let lifted = PlusSeries { coeffs: o.coeffs.iter().map(|s| like.embed(s)).collect(), tail: o.tail };
        self.mul_impl(&lifted)
    }

    fn mul_impl(&self, o: &Self) -> Self {
        match (self.tail, o.tail) {
            (None, None) => {
                let len = self.len() + o.len() - 1;
                PlusSeries { coeffs: poly::mul_trunc(&self.coeffs, &o.coeffs, len), tail: None }
            }
            _ => {
                let len = match (self.tail, o.tail) {
                    (Some(_), None) => self.len(),
                    (None, Some(_)) => o.len(),
                    _ => self.len().min(o.len()),
                };
                let a = self.extend_to(len);
                let b = o.extend_to(len);
                let coeffs = poly::mul_trunc(&a.coeffs[..len], &b.coeffs[..len], len);
                let env =
                    Envelope { floor: self.norm_floor() + o.norm_floor(), log_loss: self.log_loss() + o.log_loss() };
                PlusSeries { coeffs, tail: Some(env) }
            }
        }
    }

    /// Coefficients on the basis `(1+T)^k`; exact only for polynomials.
    pub fn to_s_basis(&self) -> Vec<R> {
        poly::taylor_minus_one(&self.coeffs)
    }

    /// The polynomial `Σ d_k (1+T)^k`.
    pub fn from_s_basis(d: &[R]) -> Self {
        Self::exact(poly::taylor_plus_one(d))
    }

    /// Whether the first `n` coefficients agree to their common precision.
    pub fn agrees_with(&self, o: &Self, n: usize) -> bool {
        (0..n).all(|k| self.coeff(k).sub(&o.coeff(k)).is_zero())
    }

    /// Whether the first `n` coefficients agree modulo `p^m`, with at least that much precision.
    pub fn congruent(&self, o: &Self, n: usize, m: i64) -> bool {
        (0..n).all(|k| {
            let d = self.coeff(k).sub(&o.coeff(k));
            d.prec() >= m && d.is_zero()
        })
    }
}

impl<R: Coeff> PartialEq for PlusSeries<R> {
    /// Agreement on the common known range.
    fn eq(&self, o: &Self) -> bool {
        let n = match (self.tail, o.tail) {
            (None, None) => self.len().max(o.len()),
            (Some(_), None) => self.len(),
            (None, Some(_)) => o.len(),
            _ => self.len().min(o.len()),
        };
        self.agrees_with(o, n)
    }
}

#[cfg(test)]
mod tests;
