use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::ring::ExactInt;

// Residues below this bound use the u64/u128 fast path.
const SMALL_LIMIT: u64 = 1 << 62;

/// `p^k` if it fits the fast path.
#[inline]
pub(crate) fn small_pow(p: u32, k: i64) -> Option<u64> {
    if !(0..64).contains(&k) {
        return None;
    }
    (p as u64).checked_pow(k as u32).filter(|y| *y <= SMALL_LIMIT)
}

pub(crate) fn big_pow(p: u32, k: i64) -> BigUint {
    BigUint::from(p).pow(k.max(0) as u32)
}

fn inv_mod_u64(a: u64, m: u64) -> u64 {
    let (mut r0, mut r1) = (m as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    debug_assert_eq!(r0, 1);
    t0.rem_euclid(m as i128) as u64
}

fn inv_mod_big(a: &BigUint, m: &BigUint) -> BigUint {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let g = a.extended_gcd(&m);
    debug_assert!(g.gcd.is_one());
    g.x.mod_floor(&m).to_biguint().unwrap()
}

/// p-adic valuation of a nonzero integer.
pub fn int_valuation(p: u32, n: &BigInt) -> i64 {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub fn u64_valuation(p: u32, mut n: u64) -> i64 {
    debug_assert!(n != 0);
    let mut v = 0;
    while n.is_multiple_of(p as u64) {
        n /= p as u64;
        v += 1;
    }
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Residue {
    Small(u64),
    Big(BigUint),
}

impl Residue {
    fn to_big(&self) -> BigUint {
        match self {
            Residue::Small(u) => BigUint::from(*u),
            Residue::Big(b) => b.clone(),
        }
    }

    fn mod_small(&self, m: u64) -> u64 {
        match self {
            Residue::Small(u) => u % m,
            Residue::Big(b) => (b % m).to_u64().unwrap(),
        }
    }
}

/// An element of Q_p known modulo `p^prec`.
///
/// Stored as `p^val * unit` with `unit` a residue prime to p taken modulo
/// `p^(prec - val)`. An element whose value is divisible by `p^prec` is zero
/// to precision and has `val == prec`.
#[derive(Clone, Debug)]
pub struct PadicScalar {
    p: u32,
    prec: i64,
    val: i64,
    unit: Residue,
}

impl PadicScalar {
    pub fn zero(p: u32, prec: i64) -> Self {
        PadicScalar { p, prec, val: prec, unit: Residue::Small(0) }
    }

    pub fn one(p: u32, prec: i64) -> Self {
        Self::from_i64(p, 1, prec)
    }

    pub fn from_i64(p: u32, n: i64, prec: i64) -> Self {
        Self::from_bigint(p, &BigInt::from(n), prec)
    }

    pub fn from_bigint(p: u32, n: &BigInt, prec: i64) -> Self {
        Self::from_scaled_bigint(p, n.clone(), 0, prec)
    }

    /// `num/den` with `num` taken modulo `p^prec`; the precision drops by `v_p(den)`.
    pub fn from_ratio(p: u32, num: &BigInt, den: &BigInt, prec: i64) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self::from_bigint(p, num, prec).div_bigint(den)
    }

    /// The exact rational `num/den` to absolute precision `prec`.
    pub fn rational(p: u32, num: &BigInt, den: &BigInt, prec: i64) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let vd = int_valuation(p, den);
        Self::from_bigint(p, num, prec + vd).div_bigint(den)
    }

    /// The value `x * p^e` known modulo `p^prec`.
    pub fn from_scaled_bigint(p: u32, x: BigInt, e: i64, prec: i64) -> Self {
        if x.is_zero() || e >= prec {
            return Self::zero(p, prec);
        }
        let v = int_valuation(p, &x);
        let e = e + v;
        if e >= prec {
            return Self::zero(p, prec);
        }
        let x = x / BigInt::from(big_pow(p, v));
        let rel = prec - e;
        let m = BigInt::from(big_pow(p, rel));
        let u = x.mod_floor(&m).to_biguint().unwrap();
        Self::pack(p, u, e, prec)
    }

    fn pack(p: u32, u: BigUint, val: i64, prec: i64) -> Self {
        let unit =
            if small_pow(p, prec - val).is_some() { Residue::Small(u.to_u64().unwrap()) } else { Residue::Big(u) };
        PadicScalar { p, prec, val, unit }
    }

    // `x * p^e` with x < p^(prec - e) already reduced, fast path.
    fn from_small(p: u32, mut x: u64, mut e: i64, prec: i64) -> Self {
        if x == 0 {
            return Self::zero(p, prec);
        }
        while x.is_multiple_of(p as u64) {
            x /= p as u64;
            e += 1;
        }
        if e >= prec {
            return Self::zero(p, prec);
        }
        PadicScalar { p, prec, val: e, unit: Residue::Small(x) }
    }

    // `x * p^e`, x reduced below p^(prec - e).
    fn from_big_reduced(p: u32, x: BigUint, e: i64, prec: i64) -> Self {
        if x.is_zero() {
            return Self::zero(p, prec);
        }
        let pb = BigUint::from(p);
        let mut x = x;
        let mut e = e;
        loop {
            let (q, r) = x.div_rem(&pb);
            if !r.is_zero() {
                break;
            }
            x = q;
            e += 1;
        }
        if e >= prec {
            return Self::zero(p, prec);
        }
        Self::pack(p, x, e, prec)
    }

    fn residue(&self, m: u64) -> u64 {
        if self.is_zero() {
            0
        } else {
            self.unit.mod_small(m) * small_pow(self.p, self.val).unwrap() % m
        }
    }

    /// Residues modulo `m = p^prec` when all entries are integral with one common
    /// precision and `m < 2^62`.
    pub fn residues(c: &[Self]) -> Option<(u64, Vec<u64>)> {
        let first = c.first()?;
        let (p, prec) = (first.p, first.prec);
        if prec <= 0 || c.iter().any(|x| x.p != p || x.prec != prec || x.val < 0) {
            return None;
        }
        let m = small_pow(p, prec)?;
        Some((m, c.iter().map(|x| x.residue(m)).collect()))
    }

    /// The residue `x < p^prec` at precision `prec`.
    pub fn from_residue(p: u32, x: u64, prec: i64) -> Self {
        Self::from_small(p, x, 0, prec)
    }

    /// Apply an integer-linear map to the residues of `c`, as in [`Self::residues`].
    pub fn with_residues<F>(c: &[Self], f: F) -> Option<Vec<Self>>
    where
        F: FnOnce(u64, Vec<u64>) -> Vec<u64>,
    {
        let (m, r) = Self::residues(c)?;
        let (p, prec) = (c[0].p, c[0].prec);
        Some(f(m, r).into_iter().map(|x| Self::from_residue(p, x, prec)).collect())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Absolute precision: the value is known modulo `p^prec`.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.val >= self.prec
    }

    /// Valuation, or `None` when zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.val)
    }

    /// Valuation if nonzero, else the precision (a lower bound).
    pub fn val_bound(&self) -> i64 {
        self.val
    }

    /// Relative precision `prec - val`.
    pub fn rel_prec(&self) -> i64 {
        self.prec - self.val
    }

    /// Unit part as an integer in `[0, p^(prec - val))`.
    pub fn unit_part(&self) -> BigUint {
        self.unit.to_big()
    }

    /// Integer representative in `[0, p^prec)` when the element is integral.
    pub fn to_bigint(&self) -> Option<BigInt> {
        if self.is_zero() {
            return (self.prec >= 0).then(BigInt::zero);
        }
        if self.val < 0 {
            return None;
        }
        Some(BigInt::from(self.unit.to_big() * big_pow(self.p, self.val)))
    }

    /// Lower the precision to `min(prec, self.prec)`.
    pub fn with_prec(&self, prec: i64) -> Self {
        if prec >= self.prec {
            return self.clone();
        }
        if self.val >= prec {
            return Self::zero(self.p, prec);
        }
        let rel = prec - self.val;
        match small_pow(self.p, rel) {
            Some(m) => PadicScalar { p: self.p, prec, val: self.val, unit: Residue::Small(self.unit.mod_small(m)) },
            None => {
                let u = self.unit.to_big() % big_pow(self.p, rel);
                Self::pack(self.p, u, self.val, prec)
            }
        }
    }

    /// Raise the precision to `prec`, taking the stored representative as exact.
    pub fn lift_prec(&self, prec: i64) -> Self {
        if prec <= self.prec {
            return self.clone();
        }
        if self.is_zero() {
            return Self::zero(self.p, prec);
        }
        Self::pack(self.p, self.unit.to_big(), self.val, prec)
    }

    /// Multiply by `p^k`; exact.
    pub fn shift(&self, k: i64) -> Self {
        PadicScalar { p: self.p, prec: self.prec + k, val: self.val + k, unit: self.unit.clone() }
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "mixing p-adic numbers for different primes");
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.p;
        let prec = self.prec.min(o.prec);
        let az = self.val >= prec;
        let bz = o.val >= prec;
        match (az, bz) {
            (true, true) => return Self::zero(p, prec),
            (true, false) => return o.with_prec(prec),
            (false, true) => return self.with_prec(prec),
            _ => {}
        }
        let e = self.val.min(o.val);
        let rel = prec - e;
        if let Some(m) = small_pow(p, rel) {
            let ta = self.unit.mod_small(small_pow(p, prec - self.val).unwrap()) * small_pow(p, self.val - e).unwrap();
            let tb = o.unit.mod_small(small_pow(p, prec - o.val).unwrap()) * small_pow(p, o.val - e).unwrap();
            let mut s = ta + tb;
            if s >= m {
                s -= m;
            }
            return Self::from_small(p, s, e, prec);
        }
        let m = big_pow(p, rel);
        let ta = self.unit.to_big() * big_pow(p, self.val - e);
        let tb = o.unit.to_big() * big_pow(p, o.val - e);
        Self::from_big_reduced(p, (ta + tb) % m, e, prec)
    }

    pub fn neg(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let rel = self.prec - self.val;
        let unit = match (&self.unit, small_pow(self.p, rel)) {
            (Residue::Small(u), Some(m)) => Residue::Small(m - u),
            _ => Residue::Big(big_pow(self.p, rel) - self.unit.to_big()),
        };
        PadicScalar { unit, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.p;
        let val = self.val + o.val;
        let prec = (self.prec + o.val).min(o.prec + self.val);
        if self.is_zero() || o.is_zero() {
            return Self::zero(p, prec);
        }
        let rel = prec - val;
        if let Some(m) = small_pow(p, rel) {
            let a = self.unit.mod_small(m) as u128;
            let b = o.unit.mod_small(m) as u128;
            let u = (a * b % m as u128) as u64;
            return PadicScalar { p, prec, val, unit: Residue::Small(u) };
        }
        let u = self.unit.to_big() * o.unit.to_big() % big_pow(p, rel);
        PadicScalar { p, prec, val, unit: Residue::Big(u) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroPrecision);
        }
        let rel = self.prec - self.val;
        let unit = match (&self.unit, small_pow(self.p, rel)) {
            (Residue::Small(u), Some(m)) => Residue::Small(inv_mod_u64(*u, m)),
            _ => Residue::Big(inv_mod_big(&self.unit.to_big(), &big_pow(self.p, rel))),
        };
        Ok(PadicScalar { p: self.p, prec: rel - self.val, val: -self.val, unit })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut result = Self::one(self.p, self.prec.max(self.rel_prec()));
        let mut base = self.clone();
        let mut n = n as u64;
        let mut first = true;
        while n > 0 {
            if n & 1 == 1 {
                result = if first { base.clone() } else { result.mul(&base) };
                first = false;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    /// Exact product with an integer.
    pub fn mul_int(&self, k: i64) -> Self {
        if k == 0 {
            return Self::zero(self.p, self.prec);
        }
        let v = u64_valuation(self.p, k.unsigned_abs());
        if self.is_zero() {
            return Self::zero(self.p, self.prec + v);
        }
        if let (Some(m), Some(pv)) = (small_pow(self.p, self.prec - self.val), small_pow(self.p, v)) {
            let ku = k.unsigned_abs() / pv;
            let u = ((self.unit.mod_small(m) as u128 * (ku % m) as u128) % m as u128) as u64;
            let r = PadicScalar { p: self.p, prec: self.prec + v, val: self.val + v, unit: Residue::Small(u) };
            return if k < 0 { r.neg() } else { r };
        }
        self.mul_bigint(&BigInt::from(k))
    }

    /// Exact product with an integer.
    pub fn mul_bigint(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.p, self.prec);
        }
        let v = int_valuation(self.p, k);
        if self.is_zero() {
            return Self::zero(self.p, self.prec + v);
        }
        let ku = k.abs() / BigInt::from(big_pow(self.p, v));
        let rel = self.prec - self.val;
        let m = big_pow(self.p, rel);
        let u = self.unit.to_big() * (ku.to_biguint().unwrap() % &m) % &m;
        let r = Self::pack(self.p, u, self.val + v, self.prec + v);
        if k.sign() == Sign::Minus {
            r.neg()
        } else {
            r
        }
    }

    /// Exact product with a prepared integer.
    pub fn mul_exact(&self, k: &ExactInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.p, self.prec);
        }
        let v = k.valuation();
        if self.is_zero() {
            return Self::zero(self.p, self.prec + v);
        }
        let rel = self.prec - self.val;
        if let (Some(m), Some(ku)) = (small_pow(self.p, rel), k.small_unit(rel)) {
            let u = ((self.unit.mod_small(m) as u128 * (ku % m) as u128) % m as u128) as u64;
            return PadicScalar { p: self.p, prec: self.prec + v, val: self.val + v, unit: Residue::Small(u) };
        }
        self.mul_bigint(&k.value)
    }

    /// Exact quotient by a nonzero integer.
    pub fn div_int(&self, k: i64) -> Self {
        self.div_bigint(&BigInt::from(k))
    }

    pub fn div_bigint(&self, k: &BigInt) -> Self {
        assert!(!k.is_zero(), "division by zero integer");
        let v = int_valuation(self.p, k);
        let ku = k / BigInt::from(big_pow(self.p, v));
        self.div_unit_int(&ku).shift(-v)
    }

    fn div_unit_int(&self, ku: &BigInt) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let rel = self.prec - self.val;
        if let Some(m) = small_pow(self.p, rel) {
            let kr = ku.mod_floor(&BigInt::from(m)).to_u64().unwrap();
            let inv = inv_mod_u64(kr, m);
            let u = ((self.unit.mod_small(m) as u128 * inv as u128) % m as u128) as u64;
            return PadicScalar { unit: Residue::Small(u), ..self.clone() };
        }
        let m = big_pow(self.p, rel);
        let kr = ku.mod_floor(&BigInt::from(m.clone())).to_biguint().unwrap();
        let u = self.unit.to_big() * inv_mod_big(&kr, &m) % &m;
        PadicScalar { unit: Residue::Big(u), ..self.clone() }
    }

    /// Whether `self ≡ o` modulo `p^k`.
    pub fn congruent(&self, o: &Self, k: i64) -> bool {
        let d = self.sub(o);
        d.prec >= k && d.val >= k
    }

    pub fn render(&self) -> String {
        self.to_string()
    }

    /// The residue alone: `r`, or `u/p^k` for negative valuation.
    pub fn residue_string(&self) -> String {
        if self.is_zero() {
            "0".into()
        } else if self.val >= 0 {
            (self.unit.to_big() * big_pow(self.p, self.val)).to_string()
        } else {
            format!("{}/{}^{}", self.unit.to_big(), self.p, -self.val)
        }
    }
}

impl PartialEq for PadicScalar {
    /// Equality to the common precision.
    fn eq(&self, o: &Self) -> bool {
        self.p == o.p && self.sub(o).is_zero()
    }
}

impl fmt::Display for PadicScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        if self.is_zero() {
            return write!(f, "val=inf residue=0 mod {}^{}", p, self.prec);
        }
        if self.val >= 0 {
            let r = self.unit.to_big() * big_pow(p, self.val);
            write!(f, "val={} residue={} mod {}^{}", self.val, r, p, self.prec)
        } else {
            write!(f, "val={} residue={}/{}^{} mod {}^{}", self.val, self.unit.to_big(), p, -self.val, p, self.prec)
        }
    }
}

impl FromStr for PadicScalar {
    type Err = Error;

    /// Parses `val=v residue=r mod p^M`, where `r` may be `u/p^k` for negative valuations.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected `val=v residue=r mod p^M`, got `{s}`"));
        let mut parts = s.split_whitespace();
        let val = parts.next().and_then(|t| t.strip_prefix("val=")).ok_or_else(bad)?;
        let res = parts.next().and_then(|t| t.strip_prefix("residue=")).ok_or_else(bad)?;
        if parts.next() != Some("mod") {
            return Err(bad());
        }
        let modulus = parts.next().ok_or_else(bad)?;
        let (p, m) = modulus.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.parse().map_err(|_| bad())?;
        let m: i64 = m.parse().map_err(|_| bad())?;
        if val == "inf" {
            return Ok(Self::zero(p, m));
        }
        let v: i64 = val.parse().map_err(|_| bad())?;
        let (num, k) = match res.split_once('/') {
            Some((u, d)) => {
                let (dp, dk) = d.split_once('^').ok_or_else(bad)?;
                if dp.parse::<u32>().map_err(|_| bad())? != p {
                    return Err(bad());
                }
                (u.parse::<BigInt>().map_err(|_| bad())?, -dk.parse::<i64>().map_err(|_| bad())?)
            }
            None => (res.parse::<BigInt>().map_err(|_| bad())?, 0),
        };
        let x = Self::from_scaled_bigint(p, num, k, m);
        if x.valuation() != Some(v) {
            return Err(Error::Parse(format!("valuation {v} does not match residue in `{s}`")));
        }
        Ok(x)
    }
}

macro_rules! scalar_ops {
    ($tr:ident, $m:ident) => {
        impl std::ops::$tr<&PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            fn $m(self, o: &PadicScalar) -> PadicScalar {
                PadicScalar::$m(self, o)
            }
        }
        impl std::ops::$tr<PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $m(self, o: PadicScalar) -> PadicScalar {
                PadicScalar::$m(&self, &o)
            }
        }
        impl std::ops::$tr<&PadicScalar> for PadicScalar {
            type Output = PadicScalar;
            fn $m(self, o: &PadicScalar) -> PadicScalar {
                PadicScalar::$m(&self, o)
            }
        }
        impl std::ops::$tr<PadicScalar> for &PadicScalar {
            type Output = PadicScalar;
            fn $m(self, o: PadicScalar) -> PadicScalar {
                PadicScalar::$m(self, &o)
            }
        }
    };
}
scalar_ops!(Add, add);
scalar_ops!(Sub, sub);
scalar_ops!(Mul, mul);

impl std::ops::Neg for &PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        PadicScalar::neg(self)
    }
}

impl std::ops::Neg for PadicScalar {
    type Output = PadicScalar;
    fn neg(self) -> PadicScalar {
        PadicScalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(p: u32, n: i64, m: i64) -> PadicScalar {
        PadicScalar::from_i64(p, n, m)
    }

    #[test]
    fn small_sums() {
        let x = s(5, 2, 3) + s(5, 3, 3);
        assert_eq!(x.valuation(), Some(1));
        assert_eq!(x.to_bigint().unwrap(), BigInt::from(5));
    }

    #[test]
    fn inverse_of_two_mod_125() {
        let x = s(5, 2, 3).inv().unwrap();
        assert_eq!(x.to_bigint().unwrap(), BigInt::from(63));
        assert_eq!(x.prec(), 3);
    }

    #[test]
    fn dividing_by_p_drops_precision() {
        let x = s(5, 1, 3).div_int(5);
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.prec(), 2);
        // an inexact divisor limits the result by its relative precision
        let y = s(5, 1, 3).div(&s(5, 5, 3)).unwrap();
        assert_eq!(y.prec(), 1);
    }

    #[test]
    fn division_by_zero_precision() {
        assert_eq!(s(5, 125, 3).inv().unwrap_err(), Error::DivisionByZeroPrecision);
    }

    #[test]
    fn mul_precision() {
        // 5 * (1 + O(5^3)) is known mod 5^4
        let x = s(5, 5, 10) * s(5, 1, 3);
        assert_eq!(x.prec(), 4);
        let z = PadicScalar::zero(5, 2) * s(5, 10, 6);
        assert_eq!(z.prec(), 3);
    }

    #[test]
    fn big_path_agrees_with_small_path() {
        let a = s(3, 123456789, 80);
        let b = s(3, -987654321, 80);
        let c = (&a * &b + &a).with_prec(20);
        let d = (s(3, 123456789, 20) * s(3, -987654321, 20)) + s(3, 123456789, 20);
        assert_eq!(c.to_bigint(), d.to_bigint());
        let ai = a.inv().unwrap();
        assert!((&ai * &a).congruent(&s(3, 1, 80), 78));
    }

    #[test]
    fn ratio_and_render() {
        let x = PadicScalar::from_ratio(5, &BigInt::from(1), &BigInt::from(10), 4);
        assert_eq!(x.valuation(), Some(-1));
        assert_eq!(x.prec(), 3);
        assert_eq!(x.mul_int(10), s(5, 1, 4));
        let t = x.to_string();
        assert_eq!(t.parse::<PadicScalar>().unwrap(), x);
        let y = s(7, 49 * 3, 5);
        assert_eq!(y.to_string(), "val=2 residue=147 mod 7^5");
        assert_eq!(y.to_string().parse::<PadicScalar>().unwrap().to_bigint(), y.to_bigint());
        assert_eq!(PadicScalar::zero(3, 4).to_string(), "val=inf residue=0 mod 3^4");
    }

    #[test]
    fn exact_integer_products() {
        let x = s(5, 7, 3).mul_int(-50);
        assert_eq!(x.prec(), 5);
        assert_eq!(x, s(5, -350, 5));
        assert_eq!(x.div_int(-50), s(5, 7, 3));
        let big = BigInt::from(5u64.pow(20)) * 3;
        assert_eq!(s(5, 2, 3).mul_bigint(&big).prec(), 23);
    }
}
