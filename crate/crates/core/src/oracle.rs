//! Brute-force reference values: Bernoulli numbers, Coleman series, Mahler expansions
//! and the Mahler pairing against an Amice transform.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::padic::PadicScalar;
use crate::ring::{Coeff, Q};
use crate::series::{Envelope, PlusSeries, ScalarSeries};

/// `B_k` with `B_1 = -1/2`, by the Akiyama–Tanigawa algorithm.
pub fn bernoulli(k: usize) -> BigRational {
    let mut a: Vec<BigRational> = Vec::with_capacity(k + 1);
    for m in 0..=k {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            a[j - 1] = BigRational::from_integer(BigInt::from(j)) * (&a[j - 1] - &a[j]);
        }
    }
    let b = a[0].clone();
    if k == 1 {
        -b
    } else {
        b
    }
}

/// `(1 - c^{j+1})(1 - p^j) B_{j+1} / (j+1)`.
pub fn kl_reference(p: u32, c: i64, j: u32) -> BigRational {
    let one = BigRational::one();
    let cj = BigRational::from_integer(BigInt::from(c).pow(j + 1));
    let pj = BigRational::from_integer(BigInt::from(p).pow(j));
    (&one - cj) * (&one - pj) * bernoulli(j as usize + 1) / BigRational::from_integer(BigInt::from(j + 1))
}

/// The rational `x` as a p-adic number modulo `p^prec`.
pub fn rational_to_padic(p: u32, x: &BigRational, prec: i64) -> PadicScalar {
    PadicScalar::rational(p, x.numer(), x.denom(), prec)
}

/// `1/T - c/((1+T)^c - 1)`, the first `len` coefficients, with an integral tail.
pub fn coleman_series(p: u32, c: i64, len: usize, prec: i64) -> Result<ScalarSeries> {
    if c.rem_euclid(p as i64) == 0 {
        return Err(Error::NotAUnit(c.to_string()));
    }
    if c < 2 {
        return Err(Error::Unsupported(format!("Coleman series for c = {c}")));
    }
    // with u = ((1+T)^c - 1)/(cT) = 1 + T h, the series is h / u
    let c_big = BigInt::from(c);
    let mut binom = BigInt::from(c);
    let mut u = Vec::new();
    for e in 0..c as usize {
        u.push(PadicScalar::rational(p, &binom, &c_big, prec));
        binom = binom * BigInt::from(c - 1 - e as i64) / BigInt::from(e as i64 + 2);
    }
    let h: Vec<PadicScalar> = u[1..].to_vec();
    let zero = PadicScalar::zero(p, prec);
    let mut out: Vec<PadicScalar> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = h.get(k).cloned().unwrap_or_else(|| zero.clone());
        for i in 1..=k.min(u.len() - 1) {
            acc = acc.sub(&u[i].mul(&out[k - i]));
        }
        out.push(acc);
    }
    Ok(PlusSeries::truncated(out, Envelope::new(0, 0)))
}

/// Mahler coefficients `c_n = Δ^n f(0)`, with the index past which they were observed to vanish.
#[derive(Clone, Debug)]
pub struct MahlerExpansion<R> {
    pub coeffs: Vec<R>,
    /// `v(c_n) ≥ threshold` is assumed for every `n ≥ coeffs.len()`.
    pub threshold: i64,
}

/// Forward differences of `f(0), f(1), ...` until `window` consecutive coefficients have
/// valuation at least `threshold`; at most `cap` terms.
pub fn mahler_coeffs<R: Coeff>(
    f: impl Fn(u64) -> R,
    cap: usize,
    window: usize,
    threshold: i64,
) -> Result<MahlerExpansion<R>> {
    let mut diag: Vec<R> = Vec::new();
    let mut coeffs: Vec<R> = Vec::new();
    let mut run = 0;
    let t = Q::from_integer(threshold);
    for n in 0..cap {
        // diag[i] = Δ^i f(n - i)
        let mut next = Vec::with_capacity(n + 1);
        next.push(f(n as u64));
        for i in 1..=n {
            let v = next[i - 1].sub(&diag[i - 1]);
            next.push(v);
        }
        let c = next[n].clone();
        run = if c.val_bound() >= t { run + 1 } else { 0 };
        coeffs.push(c);
        diag = next;
        if run >= window {
            coeffs.truncate(n + 1 - run);
            if coeffs.is_empty() {
                coeffs.push(diag[0].zero_like());
            }
            return Ok(MahlerExpansion { coeffs, threshold });
        }
    }
    Err(Error::NotLocallyAnalytic(cap))
}

/// `∫ f μ = Σ c_n(f) a_n(μ)` for the Amice transform `λ = Σ a_n T^n`.
pub fn mellin_oracle<R: Coeff>(lambda: &ScalarSeries, mahler: &MahlerExpansion<R>) -> Result<R> {
    if lambda.tail().is_some_and(|e| e.log_loss > 0) {
        return Err(Error::Unsupported("pairing against a series with logarithmic growth".into()));
    }
    let cs = &mahler.coeffs;
    let len = lambda.len();
    let n = len.min(cs.len());
    let mut acc = cs[0].zero_like();
    for k in 0..n {
        acc = acc.add(&cs[k].scale(&lambda.coeffs()[k]));
    }
    let t = Q::from_integer(mahler.threshold);
    let mut cap: Option<Q> = None;
    let mut lower = |v: Q| cap = Some(cap.map_or(v, |c: Q| c.min(v)));
    for k in n..len {
        lower(t + lambda.coeffs()[k].val_bound());
    }
    if let Some(env) = lambda.tail() {
        for c in cs.iter().skip(len) {
            lower(env.floor + c.val_bound());
        }
        lower(env.floor + t);
    }
    if let Some(c) = cap {
        acc = acc.cap_val(c);
    }
    if acc.prec() <= 0 {
        return Err(Error::InsufficientPrecision);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{amice_of_integer, ScalarSeries};
    use num_traits::Zero;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn bernoulli_numbers() {
        assert_eq!(bernoulli(0), r(1, 1));
        assert_eq!(bernoulli(1), r(-1, 2));
        assert_eq!(bernoulli(2), r(1, 6));
        assert_eq!(bernoulli(4), r(-1, 30));
        assert_eq!(bernoulli(12), r(-691, 2730));
        assert!(bernoulli(7).is_zero());
    }

    #[test]
    fn kl_examples() {
        assert_eq!(kl_reference(5, 2, 1), r(1, 1));
        assert_eq!(kl_reference(5, 2, 3), r(-31, 2));
        assert!(kl_reference(5, 2, 4).is_zero());
    }

    #[test]
    fn coleman_examples() {
        let p = 5;
        let f = coleman_series(p, 2, 40, 12).unwrap();
        let mut c = PadicScalar::rational(p, &1.into(), &2.into(), 12);
        for k in 0..40 {
            assert_eq!(f.coeffs()[k], c);
            c = c.mul(&PadicScalar::rational(p, &(-1).into(), &2.into(), 12));
        }
        let g = coleman_series(p, 3, 300, 12).unwrap();
        assert_eq!(g.coeffs()[0], PadicScalar::from_i64(p, 1, 12));
        assert!(g.psi().unwrap().congruent(&g, 30, 12));
        assert!(matches!(coleman_series(p, 10, 5, 5), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn mahler_examples() {
        let p = 5;
        let m = 10;
        let id = mahler_coeffs(|x| PadicScalar::from_i64(p, x as i64, m), 100, 5, m).unwrap();
        assert_eq!(id.coeffs.len(), 2);
        assert_eq!(id.coeffs[1], PadicScalar::from_i64(p, 1, m));
        let one = mahler_coeffs(|_| PadicScalar::one(p, m), 100, 5, m).unwrap();
        assert_eq!(one.coeffs.len(), 1);
        let units = mahler_coeffs(|x| PadicScalar::from_i64(p, (x % 5 != 0) as i64, m), 2000, 10, m).unwrap();
        for n in 0..12usize {
            let mut s = BigInt::zero();
            let mut b = BigInt::one();
            for k in 0..=n {
                if k % 5 != 0 {
                    s += if (n - k) % 2 == 0 { b.clone() } else { -b.clone() };
                }
                b = b * BigInt::from(n - k) / BigInt::from(k + 1);
            }
            assert_eq!(units.coeffs[n], PadicScalar::from_bigint(p, &s, m));
        }
    }

    #[test]
    fn pairing_against_diracs() {
        let p = 5;
        let m = 12;
        let f = |x: u64| PadicScalar::from_i64(p, (x * x * x + 2 * x + 7) as i64, m);
        let exp = mahler_coeffs(f, 100, 5, m).unwrap();
        for b in [0u64, 1, 4, 13] {
            let v = mellin_oracle(&amice_of_integer(p, b, m), &exp).unwrap();
            assert_eq!(v, f(b));
        }
        let one: ScalarSeries = PlusSeries::constant(PadicScalar::one(p, m));
        assert_eq!(mellin_oracle(&one, &exp).unwrap(), f(0));
    }

    #[test]
    fn restricted_moments_match_bernoulli() {
        let p = 5;
        let m = 20;
        let f = coleman_series(p, 2, 600, m).unwrap();
        let units = f.restrict_units().unwrap();
        for j in [1u32, 3, 5, 7] {
            let exp = mahler_coeffs(
                |x| {
                    let v = if x % 5 == 0 { BigInt::zero() } else { BigInt::from(x).pow(j) };
                    PadicScalar::from_bigint(p, &v, m)
                },
                5000,
                25,
                m,
            )
            .unwrap();
            let v = mellin_oracle(&units, &exp).unwrap();
            let expect = rational_to_padic(p, &kl_reference(p, 2, j), m);
            assert!(v.prec() >= 15);
            assert_eq!(v, expect);
        }
    }
}
