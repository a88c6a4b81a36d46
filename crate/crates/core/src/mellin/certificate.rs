use serde::Serialize;

use crate::cyclotomic::CycloLevel;
use crate::error::{Error, Result};
use crate::ring::Q;
use crate::weight::WeightChar;

/// `N(D) = -1/ln p - ln ln p + v_p(q) + 1/(p-1) + 3 + m_Δ`, for reporting only.
pub fn surconvergence_constant(p: u32, m_delta: u32) -> f64 {
    let lp = (p as f64).ln();
    -1.0 / lp - lp.ln() + 1.0 + 1.0 / (p as f64 - 1.0) + 3.0 + m_delta as f64
}

/// Parameters that make the truncated expansion of `κ(∂)` provably accurate at level `m`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceCertificate {
    pub p: u32,
    /// Conductor exponent of the twisting character.
    pub m: u32,
    pub m_delta: u32,
    /// Depth `N` of the residue classes mod `p^N`.
    pub n: u32,
    /// Number of terms `J` kept.
    pub terms: usize,
    pub c_kappa: Q,
    /// Per-term gain `C_κ + N - p^N r_m - 1`.
    pub slope: Q,
    /// `v^{r_m}(y) - N`.
    pub base: Q,
    /// Certified valuation of everything that was dropped.
    pub tail_bound: Q,
    pub n_d: f64,
    pub admissible: bool,
}

/// `C_κ = min(inf_k {p^k v - k} - 1, 0) - 1/(p-1)` with `v = v(z_κ - 1)`.
pub fn c_kappa(p: u32, v: Option<Q>) -> Q {
    let tail = Q::new(1, p as i64 - 1);
    let Some(v) = v else {
        return -tail;
    };
    let f = |k: u32| v * Q::from_integer((p as i64).pow(k)) - Q::from_integer(k as i64);
    let mut best = f(0);
    let mut k = 1;
    while k < 30 && f(k) < best + Q::from_integer(1) {
        best = best.min(f(k));
        k += 1;
    }
    (best - Q::from_integer(1)).min(Q::from_integer(0)) - tail
}

pub fn convergence_certificate(kappa: &WeightChar, m: u32, m_delta: u32) -> Result<ConvergenceCertificate> {
    let p = kappa.p();
    if m < m_delta + 2 {
        return Err(Error::NoAdmissibleN { m, m_delta });
    }
    let c = c_kappa(p, kappa.z_valuation().map(Q::from_integer));
    let r = CycloLevel::get(p, m)?.r();
    let slope = |n: u32| c + Q::from_integer(n as i64) - r * Q::from_integer((p as i64).pow(n)) - Q::from_integer(1);
    let range = 1..=m - m_delta - 1;
    let (n, admissible) = match range.clone().find(|&n| slope(n) > Q::from_integer(0)) {
        Some(n) => (n, true),
        None => (range.max_by_key(|&n| slope(n)).unwrap(), false),
    };
    Ok(ConvergenceCertificate {
        p,
        m,
        m_delta,
        n,
        terms: 0,
        c_kappa: c,
        slope: slope(n),
        base: Q::from_integer(0),
        tail_bound: Q::from_integer(0),
        n_d: surconvergence_constant(p, m_delta),
        admissible,
    })
}

impl ConvergenceCertificate {
    /// Smallest `J ≥ 1` with `base + J slope ≥ target`.
    pub fn terms_for(&self, base: Q, target: i64) -> usize {
        let need = Q::from_integer(target) - base;
        if need <= Q::from_integer(0) {
            return 1;
        }
        ((need / self.slope).ceil().to_integer() as usize).max(1)
    }
}
