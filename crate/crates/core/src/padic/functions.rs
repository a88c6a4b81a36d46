use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};

use super::scalar::{big_pow, int_valuation, PadicScalar};
use crate::error::{Error, Result};

/// `floor(log_p k)` for `k >= 1`.
pub fn ilog(p: u32, k: u64) -> i64 {
    k.ilog(p as u64) as i64
}

/// `v_p(k!)` by Legendre's formula.
pub fn factorial_valuation(p: u32, k: u64) -> i64 {
    let mut v = 0;
    let mut q = k / p as u64;
    while q > 0 {
        v += q as i64;
        q /= p as u64;
    }
    v
}

/// Teichmüller lift of the residue of `a` modulo p.
pub fn teichmuller(p: u32, a: i64, prec: i64) -> Result<PadicScalar> {
    if a.rem_euclid(p as i64) == 0 {
        return Err(Error::NotAUnit(a.to_string()));
    }
    let mut x = PadicScalar::from_i64(p, a, prec);
    for _ in 0..=prec.max(1) {
        let y = x.pow(p as i64)?;
        if y == x {
            return Ok(x);
        }
        x = y;
    }
    Ok(x)
}

/// p-adic logarithm on `1 + pZ_p`.
pub fn plog(x: &PadicScalar) -> Result<PadicScalar> {
    let p = x.p();
    let m = x.prec();
    let y = x.sub(&PadicScalar::one(p, m));
    if y.is_zero() {
        return Ok(PadicScalar::zero(p, m));
    }
    let v = y.valuation().unwrap();
    if v < 1 {
        return Err(Error::OutsideLogDomain);
    }
    let mut sum = PadicScalar::zero(p, m);
    let mut power = y.clone();
    let mut k: u64 = 1;
    // v(y^k / k) >= k v - floor(log_p k), increasing in k
    while (k as i64) * v - ilog(p, k) < m {
        let term = power.div_int(k as i64);
        sum = if k % 2 == 1 { sum.add(&term) } else { sum.sub(&term) };
        power = power.mul(&y);
        k += 1;
    }
    Ok(sum.with_prec(m))
}

/// p-adic exponential on `pZ_p`.
pub fn pexp(x: &PadicScalar) -> Result<PadicScalar> {
    let p = x.p();
    let m = x.prec();
    if x.is_zero() {
        return Ok(PadicScalar::one(p, m));
    }
    let v = x.valuation().unwrap();
    if v < 1 {
        return Err(Error::OutsideExpDomain);
    }
    let mut sum = PadicScalar::one(p, m);
    let mut term = PadicScalar::one(p, m + 1);
    let mut k: i64 = 1;
    // v(x^k / k!) >= k (v - 1/(p-1))
    while k * (v * (p as i64 - 1) - 1) < m * (p as i64 - 1) {
        term = term.mul(x).div_int(k);
        sum = sum.add(&term);
        k += 1;
    }
    Ok(sum.with_prec(m))
}

/// `a (a-1) ... (a-k+1) / k!`.
pub fn padic_binomial(a: &PadicScalar, k: u64) -> PadicScalar {
    let p = a.p();
    if k == 0 {
        return PadicScalar::one(p, a.prec().max(0));
    }
    if a.val_bound() >= 0 {
        // Lift to an integer A; binom(A + h, k) - binom(A, k) has valuation
        // at least v(h) - floor(log_p k).
        let big_a = a.to_bigint().unwrap_or_default();
        let prec = a.prec() - ilog(p, k);
        if prec <= 0 {
            return PadicScalar::zero(p, prec);
        }
        let vk = factorial_valuation(p, k);
        let modulus = BigInt::from(big_pow(p, prec + vk));
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for i in 0..k {
            num = (num * (&big_a - BigInt::from(i))).mod_floor(&modulus);
            den *= BigInt::from(i + 1);
        }
        if num.is_zero() {
            return PadicScalar::zero(p, prec);
        }
        let x = PadicScalar::from_scaled_bigint(p, num, 0, prec + vk);
        return x.div_bigint(&den).with_prec(prec);
    }
    let mut r = a.clone();
    for i in 1..k {
        r = r.mul(&a.sub(&PadicScalar::from_i64(p, i as i64, a.prec())));
    }
    let mut fact = BigInt::one();
    for i in 2..=k {
        fact *= BigInt::from(i);
    }
    r.div_bigint(&fact)
}

/// Lower bound `k (min(v(a), 0) - 1/(p-1))` for the valuation of `binom(a, k)`.
pub fn binomial_valuation_bound(p: u32, va: i64, k: u64) -> Ratio<i64> {
    (Ratio::from_integer(va.min(0)) - Ratio::new(1, p as i64 - 1)) * Ratio::from_integer(k as i64)
}

/// Valuation of an integer, `None` for zero.
pub fn valuation_of(p: u32, n: &BigInt) -> Option<i64> {
    (!n.is_zero()).then(|| int_valuation(p, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: u32, n: i64, m: i64) -> PadicScalar {
        PadicScalar::from_i64(p, n, m)
    }

    #[test]
    fn teichmuller_values() {
        assert_eq!(teichmuller(3, 2, 10).unwrap(), s(3, -1, 10));
        assert_eq!(teichmuller(5, 2, 3).unwrap().to_bigint().unwrap(), BigInt::from(57));
        assert_eq!(teichmuller(7, 1, 5).unwrap(), s(7, 1, 5));
        assert!(teichmuller(5, 10, 3).is_err());
    }

    #[test]
    fn log_and_exp_examples() {
        assert_eq!(plog(&s(5, 1, 3)).unwrap(), s(5, 0, 3));
        assert_eq!(plog(&s(5, 6, 3)).unwrap().to_bigint().unwrap(), BigInt::from(55));
        assert_eq!(pexp(&s(5, 5, 3)).unwrap().to_bigint().unwrap(), BigInt::from(81));
        assert_eq!(plog(&pexp(&s(5, 5, 3)).unwrap()).unwrap(), s(5, 5, 3));
        assert_eq!(pexp(&plog(&s(5, 6, 3)).unwrap()).unwrap(), s(5, 6, 3));
        assert_eq!(pexp(&s(5, 0, 3)).unwrap(), s(5, 1, 3));
        assert_eq!(plog(&s(5, 2, 3)).unwrap_err(), Error::OutsideLogDomain);
        assert_eq!(pexp(&s(5, 2, 3)).unwrap_err(), Error::OutsideExpDomain);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(padic_binomial(&s(5, 7, 10), 2), s(5, 21, 10));
        assert_eq!(padic_binomial(&s(5, 5, 10), 2).valuation(), Some(1));
        assert_eq!(padic_binomial(&s(3, 12345, 10), 0), s(3, 1, 10));
        let half = PadicScalar::from_ratio(5, &BigInt::from(1), &BigInt::from(5), 10);
        // binom(1/5, 2) = (1/5)(-4/5)/2 = -2/25
        let b = padic_binomial(&half, 2);
        let expect = PadicScalar::from_ratio(5, &BigInt::from(-2), &BigInt::from(25), 10);
        assert!(b.congruent(&expect, b.prec()));
        assert_eq!(b.valuation(), Some(-2));
    }
}
