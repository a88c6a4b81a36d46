use std::collections::HashMap;

use num_bigint::BigInt;

use super::certificate::ConvergenceCertificate;
use crate::cyclotomic::{Cyclo, CycloLevel};
use crate::error::{Error, Result};
use crate::padic::{padic_binomial, PadicScalar};
use crate::poly;
use crate::ring::{Coeff, Q};
use crate::series::{PlusSeries, ScalarSeries};
use crate::weight::WeightChar;

/// A truncation of `κ(∂) y` with a certified error at the radius `r_m`.
#[derive(Clone, Debug)]
pub struct KappaPartial {
    pub series: ScalarSeries,
    /// `v^{r_m}` of the difference between `κ(∂) y` and `series`.
    pub error: Q,
    pub cert: ConvergenceCertificate,
}

impl KappaPartial {
    /// `(κ(∂) y)(π_m)`, to the certified precision.
    pub fn eval(&self) -> Result<Cyclo> {
        let v = self.series.eval_at_pi(self.cert.m)?.cap_val(self.error);
        if v.prec() <= 0 {
            return Err(Error::InsufficientTruncation(v.prec()));
        }
        Ok(v)
    }
}

/// `y` read as an exact polynomial plus an error of known size at radius `r`.
struct Split {
    s_basis: Vec<PadicScalar>,
    /// `v^r` of `y` minus its unit part `P - φψP`.
    error: Q,
    base_val: Q,
}

fn split(y: &ScalarSeries, m: u32) -> Result<Split> {
    let p = y.p();
    let r = CycloLevel::get(p, m)?.r();
    let r_prev = CycloLevel::get(p, m - 1)?.r();
    let psi = y.psi()?;
    if !psi.coeffs().iter().all(|c| c.is_zero()) {
        return Err(Error::NotPsiZero);
    }
    let top = y.coeffs().iter().map(|c| c.prec()).max().unwrap();
    let lifted: Vec<PadicScalar> = y.coeffs().iter().map(|c| c.lift_prec(top)).collect();
    let mut error = y.tail_min(r).unwrap_or(Q::from_integer(i64::MAX / 4));
    for (e, c) in y.coeffs().iter().enumerate() {
        error = error.min(Q::from_integer(c.prec()) + r * Q::from_integer(e as i64));
    }
    let exact = PlusSeries::exact(lifted);
    let base_val = exact.annulus_valuation(r, r);
    let d = poly::taylor_minus_one(exact.coeffs());
    let pu = p as usize;
    let multiples: Vec<PadicScalar> = d.iter().step_by(pu).cloned().collect();
    let psi_part = PlusSeries::from_s_basis(&multiples);
    if !psi_part.coeffs().iter().all(|c| c.is_zero()) {
        error = error.min(psi_part.annulus_valuation(r_prev, r_prev));
    }
    Ok(Split { s_basis: d, error, base_val: base_val.min(error) })
}

/// Coefficient `κ(i) Σ_{j<J} binom(ω, j) i^{-j} (k - i)^j` for every unit `k`, split by `j`.
struct Expansion {
    kappa_i: HashMap<i64, PadicScalar>,
    inv_i: HashMap<i64, PadicScalar>,
    binoms: Vec<PadicScalar>,
    modulus: i64,
    shift: i64,
}

impl Expansion {
    fn new(kappa: &WeightChar, n: u32, terms: usize, rep_shift: i64, prec: i64) -> Result<Self> {
        let p = kappa.p();
        let modulus = (p as i64).pow(n);
        let omega = kappa.weight();
        let binoms = (0..terms as u64).map(|j| padic_binomial(&omega, j)).collect();
        let mut kappa_i = HashMap::new();
        let mut inv_i = HashMap::new();
        for i0 in (1..modulus).filter(|i| i % p as i64 != 0) {
            let i = i0 + rep_shift * modulus;
            let x = PadicScalar::from_i64(p, i, prec);
            kappa_i.insert(i0, kappa.eval(&x)?);
            inv_i.insert(i0, x.inv()?);
        }
        Ok(Expansion { kappa_i, inv_i, binoms, modulus, shift: rep_shift })
    }

    /// The `J` partial terms for the integer `k`.
    fn terms(&self, k: i64, prec: i64) -> Vec<PadicScalar> {
        let p = self.binoms[0].p();
        let i0 = k.rem_euclid(self.modulus);
        let i = i0 + self.shift * self.modulus;
        let step = PadicScalar::from_bigint(p, &BigInt::from(k - i), prec).mul(&self.inv_i[&i0]);
        let mut pw = PadicScalar::one(p, prec);
        let mut out = Vec::with_capacity(self.binoms.len());
        for b in &self.binoms {
            out.push(self.kappa_i[&i0].mul(b).mul(&pw));
            pw = pw.mul(&step);
        }
        out
    }
}

fn prepare(
    kappa: &WeightChar,
    y: &ScalarSeries,
    cert: &ConvergenceCertificate,
    target: i64,
) -> Result<(Split, ConvergenceCertificate)> {
    if !cert.admissible {
        return Err(Error::NotAdmissible);
    }
    if kappa.p() != y.p() {
        return Err(Error::PrimeMismatch(kappa.p(), y.p()));
    }
    let sp = split(y, cert.m)?;
    let base = sp.base_val - Q::from_integer(cert.n as i64);
    let terms = cert.terms_for(base, target);
    let mut cert = cert.clone();
    cert.terms = terms;
    cert.base = base;
    let dropped = base + cert.slope * Q::from_integer(terms as i64);
    cert.tail_bound = dropped.min(sp.error - Q::from_integer(cert.n as i64));
    Ok((sp, cert))
}

/// `κ(∂) y` for `ψ(y) = 0`, by the residue-class expansion around representatives mod `p^N`.
pub fn kappa_partial(
    kappa: &WeightChar,
    y: &ScalarSeries,
    cert: &ConvergenceCertificate,
    target: i64,
) -> Result<KappaPartial> {
    kappa_partial_with_reps(kappa, y, cert, target, 0)
}

/// As [`kappa_partial`], with representatives `i + shift p^N`.
pub fn kappa_partial_with_reps(
    kappa: &WeightChar,
    y: &ScalarSeries,
    cert: &ConvergenceCertificate,
    target: i64,
    shift: i64,
) -> Result<KappaPartial> {
    let (sp, cert) = prepare(kappa, y, cert, target)?;
    let p = y.p() as i64;
    let prec = y.prec().max(target) + 2;
    let ex = Expansion::new(kappa, cert.n, cert.terms, shift, prec)?;
    let zero = PadicScalar::zero(y.p(), prec);
    let coeffs: Vec<PadicScalar> = sp
        .s_basis
        .iter()
        .enumerate()
        .map(|(k, d)| {
            if k as i64 % p == 0 || d.is_zero() {
                return zero.clone();
            }
            let t = ex.terms(k as i64, prec);
            let c = t.iter().skip(1).fold(t[0].clone(), |a, b| a.add(b));
            d.mul(&c)
        })
        .collect();
    Ok(KappaPartial { series: PlusSeries::from_s_basis(&coeffs), error: cert.tail_bound, cert })
}

/// The individual terms `g_j`, `j < J`, of the expansion, as polynomials in `T`.
pub fn kappa_terms(
    kappa: &WeightChar,
    y: &ScalarSeries,
    cert: &ConvergenceCertificate,
    target: i64,
) -> Result<(Vec<ScalarSeries>, ConvergenceCertificate)> {
    let (sp, cert) = prepare(kappa, y, cert, target)?;
    let p = y.p() as i64;
    let prec = y.prec().max(target) + 2;
    let ex = Expansion::new(kappa, cert.n, cert.terms, 0, prec)?;
    let zero = PadicScalar::zero(y.p(), prec);
    let mut cols: Vec<Vec<PadicScalar>> = vec![vec![zero.clone(); sp.s_basis.len()]; cert.terms];
    for (k, d) in sp.s_basis.iter().enumerate() {
        if k as i64 % p == 0 || d.is_zero() {
            continue;
        }
        for (j, t) in ex.terms(k as i64, prec).into_iter().enumerate() {
            cols[j][k] = d.mul(&t);
        }
    }
    Ok((cols.iter().map(|c| PlusSeries::from_s_basis(c)).collect(), cert))
}
