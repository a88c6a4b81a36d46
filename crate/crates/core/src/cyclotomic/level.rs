use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{ExactInt, Q};

/// Descriptor of the level-n field Q_p(ζ_{p^n}) presented by π_n = ζ_{p^n} - 1.
#[derive(Debug)]
pub struct CycloLevel {
    p: u32,
    n: u32,
    d: usize,
    pn: usize,
    pn1: usize,
    // E_n = X^d + Σ_{i<d} e_i X^i
    e: Vec<ExactInt>,
    e_big: Vec<BigInt>,
}

pub fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p.is_multiple_of(2) {
        return false;
    }
    let mut q = 3;
    while q * q <= p {
        if p.is_multiple_of(q) {
            return false;
        }
        q += 2;
    }
    true
}

pub(crate) fn check_prime(p: u32) -> Result<()> {
    if is_odd_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::UnsupportedPrime(p as u64))
    }
}

fn levels() -> &'static Mutex<HashMap<(u32, u32), Arc<CycloLevel>>> {
    static LEVELS: OnceLock<Mutex<HashMap<(u32, u32), Arc<CycloLevel>>>> = OnceLock::new();
    LEVELS.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycloLevel {
    /// The shared descriptor for level `n`.
    pub fn get(p: u32, n: u32) -> Result<Arc<CycloLevel>> {
        check_prime(p)?;
        let mut map = levels().lock().unwrap();
        Ok(map.entry((p, n)).or_insert_with(|| Arc::new(Self::build(p, n))).clone())
    }

    fn build(p: u32, n: u32) -> CycloLevel {
        if n == 0 {
            return CycloLevel {
                p,
                n,
                d: 1,
                pn: 1,
                pn1: 1,
                e: vec![ExactInt::new(p, BigInt::zero())],
                e_big: vec![BigInt::zero()],
            };
        }
        let pn1 = (p as usize).pow(n - 1);
        let pn = pn1 * p as usize;
        let d = pn - pn1;
        // Σ_{t<p} (1+X)^{t p^{n-1}}
        let mut coeffs = vec![BigInt::zero(); d + 1];
        for t in 0..p as usize {
            let big_n = t * pn1;
            let mut b = BigInt::one();
            for k in 0..=big_n {
                coeffs[k] += &b;
                b = b * BigInt::from(big_n - k) / BigInt::from(k + 1);
            }
        }
        debug_assert!(coeffs[d].is_one());
        coeffs.truncate(d);
        CycloLevel { p, n, d, pn, pn1, e: coeffs.iter().map(|c| ExactInt::new(p, c.clone())).collect(), e_big: coeffs }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Degree `d_n = p^{n-1}(p-1)` (1 at level 0).
    pub fn degree(&self) -> usize {
        self.d
    }

    /// `p^n`.
    pub fn order(&self) -> usize {
        self.pn
    }

    pub(crate) fn pn1(&self) -> usize {
        self.pn1
    }

    /// `v_p(π_n) = 1/(p^{n-1}(p-1))`; zero at level 0 where π_0 = 0.
    pub fn r(&self) -> Q {
        if self.n == 0 {
            Q::from_integer(0)
        } else {
            Q::new(1, self.d as i64)
        }
    }

    /// Lower coefficients of the minimal polynomial of π_n (monic of degree d).
    pub fn min_poly(&self) -> &[BigInt] {
        &self.e_big
    }

    pub(crate) fn min_poly_exact(&self) -> &[ExactInt] {
        &self.e
    }
}
