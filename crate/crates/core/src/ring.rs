//! The coefficient-ring abstraction shared by cyclotomic elements and power series.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::Result;
use crate::padic::{int_valuation, PadicScalar};

/// Exact rationals used for valuations and radii.
pub type Q = Ratio<i64>;

/// An exact integer prepared for repeated multiplication into p-adic values.
#[derive(Clone, Debug)]
pub struct ExactInt {
    pub value: BigInt,
    val: i64,
    // unit part modulo the largest power of p below 2^62
    unit_small: Option<u64>,
    small_k: i64,
}

impl ExactInt {
    pub fn new(p: u32, value: BigInt) -> Self {
        if value.is_zero() {
            return ExactInt { value, val: 0, unit_small: None, small_k: 0 };
        }
        let val = int_valuation(p, &value);
        let unit = &value / BigInt::from(p).pow(val as u32);
        // largest k with p^k <= 2^62
        let mut k = 0i64;
        let mut pk: u64 = 1;
        while let Some(x) = pk.checked_mul(p as u64).filter(|x| *x <= 1 << 62) {
            pk = x;
            k += 1;
        }
        let unit_small = unit.mod_floor(&BigInt::from(pk)).to_u64();
        ExactInt { value, val, unit_small, small_k: k }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn valuation(&self) -> i64 {
        self.val
    }

    pub(crate) fn small_unit(&self, rel: i64) -> Option<u64> {
        if rel <= self.small_k {
            self.unit_small
        } else {
            None
        }
    }
}

/// A commutative ring of p-adic quantities with tracked precision.
pub trait Coeff: Clone + Debug + Send + Sync + 'static {
    fn p(&self) -> u32;
    /// Minimum absolute precision of the stored data.
    fn prec(&self) -> i64;
    /// Zero in the same ring, at the same precision.
    fn zero_like(&self) -> Self;
    /// The scalar `s` embedded in the ring of `self`.
    fn embed(&self, s: &PadicScalar) -> Self;
    fn with_prec(&self, prec: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn mul_int(&self, k: i64) -> Self;
    fn mul_exact(&self, k: &ExactInt) -> Self;
    /// Exact division by a nonzero integer.
    fn div_int(&self, k: i64) -> Self;
    fn div_bigint(&self, k: &BigInt) -> Self;
    /// Multiply by `p^k`.
    fn shift(&self, k: i64) -> Self;
    fn scale(&self, s: &PadicScalar) -> Self;
    fn inv(&self) -> Result<Self>;
    /// A lower bound for the valuation; exact for nonzero scalars.
    fn val_bound(&self) -> Q;

    /// Absorb an unknown error of valuation at least `b`.
    fn cap_val(&self, b: Q) -> Self;

    /// Raise the precision to `prec`, reading the stored residue as exact.
    fn lift_prec(&self, prec: i64) -> Self;

    fn one_like(&self) -> Self {
        self.embed(&PadicScalar::one(self.p(), self.prec().max(0) + 1))
    }

    /// Run an integer-linear map on machine residues modulo `p^prec`, when every
    /// entry is integral with the same small precision.
    fn with_residues<F>(_c: &[Self], _f: F) -> Option<Vec<Self>>
    where
        F: FnOnce(u64, Vec<u64>) -> Vec<u64>,
    {
        None
    }
}

impl Coeff for PadicScalar {
    fn p(&self) -> u32 {
        PadicScalar::p(self)
    }
    fn prec(&self) -> i64 {
        PadicScalar::prec(self)
    }
    fn zero_like(&self) -> Self {
        PadicScalar::zero(self.p(), PadicScalar::prec(self))
    }
    fn embed(&self, s: &PadicScalar) -> Self {
        s.clone()
    }
    fn with_prec(&self, prec: i64) -> Self {
        PadicScalar::with_prec(self, prec)
    }
    fn is_zero(&self) -> bool {
        PadicScalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        PadicScalar::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        PadicScalar::sub(self, o)
    }
    fn neg(&self) -> Self {
        PadicScalar::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        PadicScalar::mul(self, o)
    }
    fn mul_int(&self, k: i64) -> Self {
        PadicScalar::mul_int(self, k)
    }
    fn mul_exact(&self, k: &ExactInt) -> Self {
        PadicScalar::mul_exact(self, k)
    }
    fn div_int(&self, k: i64) -> Self {
        PadicScalar::div_int(self, k)
    }
    fn div_bigint(&self, k: &BigInt) -> Self {
        PadicScalar::div_bigint(self, k)
    }
    fn shift(&self, k: i64) -> Self {
        PadicScalar::shift(self, k)
    }
    fn scale(&self, s: &PadicScalar) -> Self {
        PadicScalar::mul(self, s)
    }
    fn inv(&self) -> Result<Self> {
        PadicScalar::inv(self)
    }
    fn val_bound(&self) -> Q {
        Q::from_integer(PadicScalar::val_bound(self))
    }
    fn cap_val(&self, b: Q) -> Self {
        PadicScalar::with_prec(self, b.ceil().to_integer())
    }
    fn lift_prec(&self, prec: i64) -> Self {
        PadicScalar::lift_prec(self, prec)
    }
    fn with_residues<F>(c: &[Self], f: F) -> Option<Vec<Self>>
    where
        F: FnOnce(u64, Vec<u64>) -> Vec<u64>,
    {
        PadicScalar::with_residues(c, f)
    }
}
