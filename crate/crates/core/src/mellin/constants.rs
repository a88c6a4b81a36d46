use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::cyclotomic::{Cyclo, CycloLevel};
use crate::error::{Error, Result};
use crate::padic::PadicScalar;
use crate::ring::Q;
use crate::weight::{epsilon_gl1, FiniteOrderChar, PPowerTimes};

fn factorial(k: u64) -> BigInt {
    (2..=k).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

/// `Γ*(k) = (k-1)!` for `k ≥ 1` and `(-1)^k / (-k)!` for `k ≤ 0`.
pub fn gamma_star(k: i64) -> BigRational {
    if k >= 1 {
        BigRational::from_integer(factorial(k as u64 - 1))
    } else {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        BigRational::new(BigInt::from(sign), factorial((-k) as u64))
    }
}

/// Factor relating `∇_h`-twisted moments: `j!/(j-h)!`, zero for `j < h`.
pub fn nabla_transfer_factor(j: u32, h: u32) -> BigInt {
    if j < h {
        return BigInt::from(0);
    }
    factorial(j as u64) / factorial((j - h) as u64)
}

/// `α^{-n}` at conductor `p^n`, `n > 0`; `(1 - α^{-1} ω p^{k-2-j})(1 - α^{-1} p^j)` at `n = 0`.
pub fn interpolation_factor(alpha: &PadicScalar, omega: &PadicScalar, k: i64, n: u32, j: i64) -> Result<PadicScalar> {
    if alpha.is_zero() {
        return Err(Error::InvalidEigenvalue);
    }
    let ai = alpha.inv()?;
    if n > 0 {
        return ai.pow(n as i64);
    }
    let p = alpha.p();
    let one = PadicScalar::one(p, alpha.prec());
    let a = one.sub(&ai.mul(omega).shift(k - 2 - j));
    let b = one.sub(&ai.shift(j));
    Ok(a.mul(&b))
}

/// Local constants `ε_p`, `ε_ℓ` of the functional equation.
#[derive(Clone, Debug)]
pub struct LocalEpsilons {
    pub eps_p: PadicScalar,
    pub eps_tame: Vec<(u64, PadicScalar)>,
}

/// `p^{n(2j-k+2)} Ω G(η^{-1})^2 ε_p^{-1} Π ε_ℓ^{-1}`, the p-power kept symbolic.
pub fn fe_constant(
    omega: &PadicScalar,
    eta: &FiniteOrderChar,
    j: i64,
    k: i64,
    eps: &LocalEpsilons,
    prec: i64,
) -> Result<PPowerTimes> {
    if eps.eps_p.is_zero() || eps.eps_tame.iter().any(|(_, e)| e.is_zero()) {
        return Err(Error::InvalidEpsilon);
    }
    let s = Q::new(2 * (-j) + k - 1, 2);
    let e = epsilon_gl1(eta, s, prec)?;
    let n = eta.conductor_exp() as i64;
    let sq = e.mul(&e)?;
    let mut scalar = omega.mul(&eps.eps_p.inv()?);
    for (_, e) in &eps.eps_tame {
        scalar = scalar.mul(&e.inv()?);
    }
    Ok(PPowerTimes { p_exponent: sq.p_exponent + Q::from_integer(n), algebraic: sq.algebraic.scale(&scalar) })
}

/// The rational `x` in `L_0`.
pub fn rational_in_l0(p: u32, x: &BigRational, prec: i64) -> Result<Cyclo> {
    Ok(Cyclo::constant(CycloLevel::get(p, 0)?, PadicScalar::rational(p, x.numer(), x.denom(), prec)))
}
