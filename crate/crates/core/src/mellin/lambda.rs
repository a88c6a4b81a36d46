use num_bigint::BigInt;

use super::certificate::{convergence_certificate, ConvergenceCertificate};
use super::kappa::kappa_partial;
use crate::cyclotomic::{Cyclo, CycloLevel};
use crate::error::{Error, Result};
use crate::oracle::{mahler_coeffs, mellin_oracle};
use crate::padic::PadicScalar;
use crate::series::ScalarSeries;
use crate::weight::{FiniteOrderChar, WeightChar};

/// Frobenius eigenvalues `α_i` on `D_cris`, with optional Hodge–Tate weights.
#[derive(Clone, Debug)]
pub struct CrisData {
    pub alphas: Vec<PadicScalar>,
    pub hodge_tate: Option<Vec<i64>>,
}

impl CrisData {
    pub fn new(alphas: Vec<PadicScalar>, hodge_tate: Option<Vec<i64>>) -> Result<Self> {
        if alphas.is_empty() || alphas.iter().any(|a| a.is_zero()) {
            return Err(Error::InvalidEigenvalue);
        }
        Ok(CrisData { alphas, hodge_tate })
    }

    pub fn rank(&self) -> usize {
        self.alphas.len()
    }
}

/// Components `λ_i` with `ψ(λ_i) = α_i λ_i`.
#[derive(Clone, Debug)]
pub struct IwasawaVector {
    pub components: Vec<ScalarSeries>,
}

impl IwasawaVector {
    pub fn new(components: Vec<ScalarSeries>) -> Self {
        IwasawaVector { components }
    }

    /// Checks `ψ(λ_i) = α_i λ_i` on every coefficient both sides know.
    pub fn check_eigen(&self, d: &CrisData) -> Result<()> {
        if self.components.len() != d.rank() {
            return Err(Error::Unsupported(format!("{} components for rank {}", self.components.len(), d.rank())));
        }
        for (i, (l, a)) in self.components.iter().zip(&d.alphas).enumerate() {
            let lhs = l.psi()?;
            let rhs = l.scale(a);
            let n = lhs.len().min(rhs.len());
            if !lhs.agrees_with(&rhs, n) {
                return Err(Error::EigenCondition(i));
            }
        }
        Ok(())
    }
}

/// `Σ_{a ∈ (Z/p^n)^×} η(a) σ_a(x)`, computed at level `max(m, n)`.
pub fn twisted_sum(eta: &FiniteOrderChar, x: &Cyclo) -> Result<Cyclo> {
    let p = eta.p;
    let n = eta.conductor_exp();
    let level = x.n().max(n);
    let x = x.lift_level(level)?;
    let prec = x.prec();
    let pn = (p as i64).pow(n);
    let mut acc = Cyclo::zero(CycloLevel::get(p, level)?, x.like());
    for a in (1..pn).filter(|a| a % p as i64 != 0) {
        let c = eta.value(&BigInt::from(a), level, prec)?;
        acc = acc.add(&x.galois(a)?.mul(&c));
    }
    Ok(acc)
}

/// `G(η)^{-1} Σ_a η(a) σ_a(x)` for `x ∈ L_n`, `p^n` the conductor of `η`.
///
/// Only the unit ζ-coordinates of `x` survive: the sum equals `Σ_b η^{-1}(b) x_b`.
pub fn gauss_normalized_twist(eta: &FiniteOrderChar, x: &Cyclo) -> Result<Cyclo> {
    let n = eta.conductor_exp();
    if n == 0 {
        return Err(Error::Unsupported("twisting needs a ramified character".into()));
    }
    if x.n() != n {
        return Err(Error::LevelError { from: x.n(), to: n });
    }
    let p = eta.p as usize;
    let vl = eta.value_level();
    let prec = x.prec();
    let inv = eta.inverse();
    let mut acc = Cyclo::zero(CycloLevel::get(eta.p, vl)?, x.like());
    for (b, c) in x.to_zeta_basis().iter().enumerate() {
        if b % p == 0 || c.is_zero() {
            continue;
        }
        acc = acc.add(&inv.value(&BigInt::from(b), vl, prec)?.scale(c));
    }
    acc.lift_level(n)
}

/// One component of `Λ`, before the factor `α^{-n}`.
#[derive(Clone, Debug)]
pub struct LambdaEntry {
    pub value: Cyclo,
    pub cert: ConvergenceCertificate,
}

/// `G(η)^{-1} Σ_a η(a) σ_a((κ(∂) y)(π_n))` for `ψ(y) = 0`.
pub fn lambda_from_units(
    y: &ScalarSeries,
    eta: &FiniteOrderChar,
    kappa: &WeightChar,
    m_delta: u32,
    target: i64,
) -> Result<LambdaEntry> {
    let n = eta.conductor_exp();
    let cert = convergence_certificate(kappa, n, m_delta)?;
    if !cert.admissible {
        return Err(Error::NotAdmissible);
    }
    let kp = kappa_partial(kappa, y, &cert, target)?;
    let x = kp.eval()?;
    Ok(LambdaEntry { value: gauss_normalized_twist(eta, &x)?, cert: kp.cert })
}

/// `Λ(z)(κη)` with one entry per Frobenius eigenvalue.
#[derive(Clone, Debug)]
pub struct LambdaValue {
    pub components: Vec<Cyclo>,
    pub certified: i64,
    pub cert: ConvergenceCertificate,
}

pub fn lambda_value(
    d: &CrisData,
    z: &IwasawaVector,
    eta: &FiniteOrderChar,
    kappa: &WeightChar,
    m_delta: u32,
    target: i64,
) -> Result<LambdaValue> {
    if z.components.len() != d.rank() {
        return Err(Error::EigenCondition(z.components.len().min(d.rank())));
    }
    let n = eta.conductor_exp() as i64;
    let mut components = Vec::new();
    let mut cert = None;
    for (l, a) in z.components.iter().zip(&d.alphas) {
        let y = l.sub(&l.phi().scale(a));
        let e = lambda_from_units(&y, eta, kappa, m_delta, target)?;
        components.push(e.value.scale(&a.pow(-n)?));
        cert.get_or_insert(e.cert);
    }
    let certified = components.iter().map(|c| c.prec()).min().unwrap();
    Ok(LambdaValue { components, certified, cert: cert.unwrap() })
}

/// `α^{-n} ∫ η^{-1}(x) x^j dλ` over `Z_p^×`, computed by Mahler pairing.
pub fn lambda_special(d: &CrisData, z: &IwasawaVector, eta: &FiniteOrderChar, j: u32, prec: i64) -> Result<Vec<Cyclo>> {
    let p = eta.p;
    let n = eta.conductor_exp();
    let vl = eta.value_level();
    let inv = eta.inverse();
    let work = prec + 2;
    let table: Vec<Cyclo> = (0..(p as u64).pow(n))
        .map(|b| {
            if b % p as u64 == 0 {
                Ok(Cyclo::zero(CycloLevel::get(p, vl)?, &PadicScalar::zero(p, work)))
            } else {
                inv.value(&BigInt::from(b), vl, work)
            }
        })
        .collect::<Result<_>>()?;
    let pn = table.len() as u64;
    let f = |x: u64| {
        let xj = PadicScalar::from_bigint(p, &BigInt::from(x).pow(j), work);
        table[(x % pn) as usize].scale(&xj)
    };
    let window = 2 * pn as usize + p as usize;
    let exp = mahler_coeffs(f, 40 * pn as usize + 4000, window, work)?;
    let mut out = Vec::new();
    for (l, a) in z.components.iter().zip(&d.alphas) {
        let v = mellin_oracle(l, &exp)?;
        out.push(v.scale(&a.pow(-(n as i64))?).lift_level(n)?);
    }
    Ok(out)
}

/// `(1/j!) p^{-m(j+1)} α^{-m} Tr_{L_m/L_n} (∂^j λ)(π_m)` per component.
pub fn exp_star_value(d: &CrisData, z: &IwasawaVector, j: u32, n: u32, m: u32) -> Result<Vec<Cyclo>> {
    if m < n || m == 0 {
        return Err(Error::LevelError { from: m, to: n });
    }
    z.components
        .iter()
        .zip(&d.alphas)
        .map(|(l, a)| {
            let v = l.loc_coeff(m, j)?.shift(-(m as i64)).scale(&a.pow(-(m as i64))?);
            v.trace_down(n)
        })
        .collect()
}
