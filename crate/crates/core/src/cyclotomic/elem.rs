use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;

use super::level::CycloLevel;
use crate::error::{Error, Result};
use crate::padic::PadicScalar;
use crate::ring::{Coeff, ExactInt, Q};

/// An element `Σ c_k π_n^k` of the level-n cyclotomic field over a coefficient ring.
///
/// With `R = PadicScalar` this is Q_p(ζ_{p^n}); with `R` itself cyclotomic it is
/// the tensor product of two cyclotomic fields, and the Galois action, traces
/// and level changes act on the outer factor only.
#[derive(Clone, Debug)]
pub struct CycloElem<R> {
    level: Arc<CycloLevel>,
    coeffs: Vec<R>,
}

/// Elements of Q_p(ζ_{p^n}).
pub type Cyclo = CycloElem<PadicScalar>;

/// Elements of `L ⊗ Q_p(ζ_{p^n})` for a cyclotomic coefficient field `L`.
pub type Tensor = CycloElem<Cyclo>;

fn unit_check(a: i64, p: u32) -> Result<()> {
    if a.rem_euclid(p as i64) == 0 {
        Err(Error::NotAUnit(a.to_string()))
    } else {
        Ok(())
    }
}

impl<R: Coeff> CycloElem<R> {
    /// Build from power-basis coefficients; longer inputs are reduced modulo E_n.
    pub fn from_coeffs(level: Arc<CycloLevel>, coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "at least one coefficient is needed");
        let coeffs = reduce_poly(&level, coeffs);
        CycloElem { level, coeffs }
    }

    pub fn constant(level: Arc<CycloLevel>, c: R) -> Self {
        let mut coeffs = vec![c.zero_like(); level.degree()];
        coeffs[0] = c;
        CycloElem { level, coeffs }
    }

    pub fn zero(level: Arc<CycloLevel>, like: &R) -> Self {
        Self::constant(level, like.zero_like())
    }

    pub fn one(level: Arc<CycloLevel>, like: &R) -> Self {
        Self::constant(level, like.one_like())
    }

    /// π_n itself (zero at level 0).
    pub fn pi(level: Arc<CycloLevel>, like: &R) -> Self {
        if level.n() == 0 {
            return Self::zero(level, like);
        }
        let mut x = Self::zero(level, like);
        x.coeffs[1] = like.one_like();
        x
    }

    /// `ζ_{p^n}^a` for any integer `a`.
    pub fn zeta_power(level: Arc<CycloLevel>, a: i64, like: &R) -> Self {
        let pn = level.order() as i64;
        let mut buckets = vec![like.zero_like(); level.order()];
        buckets[a.rem_euclid(pn) as usize] = like.one_like();
        let z = reduce_zeta(&level, buckets);
        Self::from_zeta_basis(level, z)
    }

    pub fn level(&self) -> &Arc<CycloLevel> {
        &self.level
    }

    pub fn n(&self) -> u32 {
        self.level.n()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn like(&self) -> &R {
        &self.coeffs[0]
    }

    fn same_level(&self, o: &Self) {
        assert_eq!(
            (self.level.p(), self.level.n()),
            (o.level.p(), o.level.n()),
            "cyclotomic elements at different levels"
        );
    }

    pub fn map(&self, f: impl Fn(&R) -> R) -> Self {
        CycloElem { level: self.level.clone(), coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.same_level(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect();
        CycloElem { level: self.level.clone(), coeffs }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.same_level(o);
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect();
        CycloElem { level: self.level.clone(), coeffs }
    }

    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.same_level(o);
        let d = self.level.degree();
        let mut prod: Vec<Option<R>> = vec![None; 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let t = a.mul(b);
                prod[i + j] = Some(match prod[i + j].take() {
                    Some(s) => s.add(&t),
                    None => t,
                });
            }
        }
        // empty slots still carry the precision a product would have had
        let zero = self.coeffs[0].mul(&o.coeffs[0]).zero_like();
        let zero = zero.with_prec(self.prec_for_zero(o));
        let prod = prod.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect();
        CycloElem { level: self.level.clone(), coeffs: reduce_poly(&self.level, prod) }
    }

    fn prec_for_zero(&self, o: &Self) -> i64 {
        let a = self.coeffs.iter().map(|c| c.prec() + o.min_val()).min().unwrap();
        let b = o.coeffs.iter().map(|c| c.prec() + self.min_val()).min().unwrap();
        a.min(b)
    }

    fn min_val(&self) -> i64 {
        self.coeffs.iter().map(|c| c.val_bound().floor().to_integer()).min().unwrap()
    }

    /// Multiply by π_n: a shift plus one reduction step.
    pub fn mul_pi(&self) -> Self {
        let d = self.level.degree();
        if self.level.n() == 0 {
            return self.map(|c| c.zero_like());
        }
        let top = self.coeffs[d - 1].clone();
        let e = self.level.min_poly_exact();
        let mut out = Vec::with_capacity(d);
        out.push(top.mul_exact(&e[0]).neg());
        out.extend(self.coeffs[..d - 1].iter().cloned());
        if !top.is_zero() {
            for (o, ei) in out.iter_mut().zip(e).skip(1) {
                *o = o.sub(&top.mul_exact(ei));
            }
        }
        CycloElem { level: self.level.clone(), coeffs: out }
    }

    pub fn scale(&self, s: &PadicScalar) -> Self {
        self.map(|c| c.scale(s))
    }

    /// Multiply every coefficient by an element of the coefficient ring.
    pub fn mul_coeff(&self, r: &R) -> Self {
        self.map(|c| c.mul(r))
    }

    pub fn mul_int(&self, k: i64) -> Self {
        self.map(|c| c.mul_int(k))
    }

    pub fn div_int(&self, k: i64) -> Self {
        self.map(|c| c.div_int(k))
    }

    pub fn shift(&self, k: i64) -> Self {
        self.map(|c| c.shift(k))
    }

    pub fn with_prec(&self, prec: i64) -> Self {
        self.map(|c| c.with_prec(prec))
    }

    pub fn prec(&self) -> i64 {
        self.coeffs.iter().map(|c| c.prec()).min().unwrap()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `min_k (v(c_k) + k r_n)`, exact for field elements.
    pub fn val_bound(&self) -> Q {
        let r = self.level.r();
        self.coeffs.iter().enumerate().map(|(k, c)| c.val_bound() + r * Q::from_integer(k as i64)).min().unwrap()
    }

    /// Whether the element is divisible by `p^k` (as far as known).
    pub fn divisible_by_p_power(&self, k: i64) -> bool {
        self.coeffs.iter().all(|c| c.val_bound() >= Q::from_integer(k))
    }

    /// Coordinates on the basis `1, ζ, ..., ζ^{d-1}`.
    pub fn to_zeta_basis(&self) -> Vec<R> {
        let d = self.level.degree();
        let zero = self.coeffs[0].zero_like();
        let mut acc: Vec<R> = Vec::with_capacity(d);
        for c in self.coeffs.iter().rev() {
            // acc <- acc * (ζ - 1) + c
            acc.push(zero.clone());
            for j in (1..acc.len()).rev() {
                acc[j] = acc[j - 1].sub(&acc[j]);
            }
            acc[0] = c.sub(&acc[0]);
        }
        acc
    }

    /// Inverse of [`to_zeta_basis`](Self::to_zeta_basis); accepts up to d coordinates.
    pub fn from_zeta_basis(level: Arc<CycloLevel>, b: Vec<R>) -> Self {
        let d = level.degree();
        assert!(b.len() <= d && !b.is_empty());
        let zero = b[0].zero_like();
        let mut acc: Vec<R> = Vec::with_capacity(d);
        for c in b.iter().rev() {
            // acc <- acc * (1 + π) + c
            acc.push(zero.clone());
            for j in (1..acc.len()).rev() {
                acc[j] = acc[j].add(&acc[j - 1]);
            }
            acc[0] = acc[0].add(c);
        }
        acc.resize(d, zero);
        CycloElem { level, coeffs: acc }
    }

    /// The automorphism `ζ ↦ ζ^a` on the outer field.
    pub fn galois(&self, a: i64) -> Result<Self> {
        unit_check(a, self.level.p())?;
        if self.level.n() == 0 {
            return Ok(self.clone());
        }
        let z = self.to_zeta_basis();
        let pn = self.level.order() as i64;
        let mut buckets = vec![z[0].zero_like(); self.level.order()];
        for (i, c) in z.into_iter().enumerate() {
            buckets[(a * i as i64).rem_euclid(pn) as usize] = c;
        }
        let z = reduce_zeta(&self.level, buckets);
        Ok(Self::from_zeta_basis(self.level.clone(), z))
    }

    /// Image in level `m ≥ n` under `ζ_{p^n} ↦ ζ_{p^m}^{p^{m-n}}`.
    pub fn lift_level(&self, m: u32) -> Result<Self> {
        let n = self.level.n();
        if m < n {
            return Err(Error::LevelError { from: n, to: m });
        }
        let target = CycloLevel::get(self.level.p(), m)?;
        if m == n {
            return Ok(self.clone());
        }
        if n == 0 {
            return Ok(Self::constant(target, self.coeffs[0].clone()));
        }
        let step = (self.level.p() as usize).pow(m - n);
        let z = self.to_zeta_basis();
        let mut b = vec![z[0].zero_like(); target.degree()];
        for (i, c) in z.into_iter().enumerate() {
            b[i * step] = c;
        }
        Ok(Self::from_zeta_basis(target, b))
    }

    /// Trace from the current level `m` down to level `n ≤ m`.
    pub fn trace_down(&self, n: u32) -> Result<Self> {
        let m = self.level.n();
        if n > m {
            return Err(Error::LevelError { from: m, to: n });
        }
        if n == m {
            return Ok(self.clone());
        }
        let p = self.level.p() as usize;
        let pm = self.level.order();
        let reps: Vec<usize> = if n == 0 {
            (1..pm).filter(|a| a % p != 0).collect()
        } else {
            let pn = p.pow(n);
            (0..pm / pn).map(|k| 1 + k * pn).collect()
        };
        let z = self.to_zeta_basis();
        let zero = z[0].zero_like();
        let mut buckets: Vec<Option<R>> = vec![None; pm];
        for a in reps {
            for (i, c) in z.iter().enumerate() {
                let slot = &mut buckets[(a * i) % pm];
                *slot = Some(match slot.take() {
                    Some(s) => s.add(c),
                    None => c.clone(),
                });
            }
        }
        let buckets = buckets.into_iter().map(|c| c.unwrap_or_else(|| zero.clone())).collect();
        let w = reduce_zeta(&self.level, buckets);
        let target = CycloLevel::get(self.level.p(), n)?;
        let step = p.pow(m - n);
        let b: Vec<R> = (0..target.degree()).map(|i| w[i * step].clone()).collect();
        debug_assert!(w.iter().enumerate().all(|(i, c)| i % step == 0 || c.is_zero()));
        Ok(Self::from_zeta_basis(target, b))
    }

    /// `p^{-m} Tr_{L_m/L_n}` from the current level m.
    pub fn normalized_trace(&self, n: u32) -> Result<Self> {
        let m = self.level.n() as i64;
        Ok(self.trace_down(n)?.shift(-m))
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut result = Self::one(self.level.clone(), &self.coeffs[0]).with_prec(self.prec().max(0) + 1);
        let mut base = self.clone();
        let mut k = k;
        let mut first = true;
        while k > 0 {
            if k & 1 == 1 {
                result = if first { base.clone() } else { result.mul(&base) };
                first = false;
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Multiplicative inverse: strip `p^s π^t`, then Newton iteration on the unit part.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroPrecision);
        }
        if self.level.n() == 0 {
            return Ok(Self::constant(self.level.clone(), self.coeffs[0].inv()?));
        }
        let d = self.level.degree() as i64;
        let w = self.val_bound() * Q::from_integer(d);
        let w = w.floor().to_integer();
        let (s, t) = w.div_mod_floor(&d);
        let pi_inv = self.pi_inverse();
        let mut u = self.shift(-s);
        for _ in 0..t {
            u = u.mul(&pi_inv);
        }
        let c0 = u.coeffs[0].inv()?;
        let mut y = Self::constant(self.level.clone(), c0);
        let two = Self::constant(
            self.level.clone(),
            u.coeffs[0].embed(&PadicScalar::from_i64(self.level.p(), 2, u.prec().max(1) + 1)),
        );
        let target = u.prec();
        let mut iters = 0;
        loop {
            let e = u.mul(&y);
            y = y.mul(&two.sub(&e));
            iters += 1;
            let err = Self::one(self.level.clone(), &u.coeffs[0]).sub(&u.mul(&y));
            if err.divisible_by_p_power(target) || iters > 64 {
                break;
            }
        }
        let mut r = y;
        for _ in 0..t {
            r = r.mul(&pi_inv);
        }
        Ok(r.shift(-s))
    }

    fn pi_inverse(&self) -> Self {
        // π^{-1} = -(π^{d-1} + Σ_{i≥1} e_i π^{i-1}) / p
        let p = self.level.p();
        let d = self.level.degree();
        let prec = self.prec().max(0) + d as i64 + 2;
        let like = &self.coeffs[0];
        let e = self.level.min_poly();
        let coeffs = (0..d)
            .map(|k| {
                let num = if k + 1 == d { BigInt::from(1) } else { e[k + 1].clone() };
                like.embed(&PadicScalar::from_bigint(p, &(-num), prec).div_int(p as i64))
            })
            .collect();
        CycloElem { level: self.level.clone(), coeffs }
    }
}

/// Reduce a polynomial in π modulo E_n to exactly d coefficients.
pub(crate) fn reduce_poly<R: Coeff>(level: &CycloLevel, mut v: Vec<R>) -> Vec<R> {
    let d = level.degree();
    let e = level.min_poly_exact();
    for k in (d..v.len()).rev() {
        let c = v[k].clone();
        if c.is_zero() {
            // the dropped coefficient still bounds the precision of the reduction
            let z = c.mul_exact(&e[0]);
            v[k - d] = v[k - d].add(&z);
            continue;
        }
        for (i, ei) in e.iter().enumerate() {
            v[k - d + i] = v[k - d + i].sub(&c.mul_exact(ei));
        }
    }
    if v.len() < d {
        let z = v[0].zero_like();
        v.resize(d, z);
    }
    v.truncate(d);
    v
}

/// Fold coordinates on `ζ^0..ζ^{p^n-1}` onto the basis `ζ^0..ζ^{d-1}`.
pub(crate) fn reduce_zeta<R: Coeff>(level: &CycloLevel, mut b: Vec<R>) -> Vec<R> {
    let d = level.degree();
    let pn1 = level.pn1();
    let p = level.p() as usize;
    for e in d..b.len() {
        let c = b[e].clone();
        if c.is_zero() {
            continue;
        }
        let r = e - d;
        for t in 0..p - 1 {
            let idx = t * pn1 + r;
            b[idx] = b[idx].sub(&c);
        }
    }
    b.truncate(d);
    b
}

impl<R: Coeff> PartialEq for CycloElem<R> {
    /// Equality to the common precision.
    fn eq(&self, o: &Self) -> bool {
        self.level.p() == o.level.p() && self.level.n() == o.level.n() && self.sub(o).is_zero()
    }
}

impl<R: Coeff> Coeff for CycloElem<R> {
    fn p(&self) -> u32 {
        self.level.p()
    }
    fn prec(&self) -> i64 {
        CycloElem::prec(self)
    }
    fn zero_like(&self) -> Self {
        self.map(|c| c.zero_like())
    }
    fn embed(&self, s: &PadicScalar) -> Self {
        Self::constant(self.level.clone(), self.coeffs[0].embed(s))
    }
    fn with_prec(&self, prec: i64) -> Self {
        CycloElem::with_prec(self, prec)
    }
    fn is_zero(&self) -> bool {
        CycloElem::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        CycloElem::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycloElem::sub(self, o)
    }
    fn neg(&self) -> Self {
        CycloElem::neg(self)
    }
    fn mul(&self, o: &Self) -> Self {
        CycloElem::mul(self, o)
    }
    fn mul_int(&self, k: i64) -> Self {
        CycloElem::mul_int(self, k)
    }
    fn mul_exact(&self, k: &ExactInt) -> Self {
        self.map(|c| c.mul_exact(k))
    }
    fn div_int(&self, k: i64) -> Self {
        CycloElem::div_int(self, k)
    }
    fn div_bigint(&self, k: &BigInt) -> Self {
        self.map(|c| c.div_bigint(k))
    }
    fn shift(&self, k: i64) -> Self {
        CycloElem::shift(self, k)
    }
    fn scale(&self, s: &PadicScalar) -> Self {
        CycloElem::scale(self, s)
    }
    fn inv(&self) -> Result<Self> {
        CycloElem::inv(self)
    }
    fn val_bound(&self) -> Q {
        CycloElem::val_bound(self)
    }
    fn lift_prec(&self, prec: i64) -> Self {
        self.map(|c| c.lift_prec(prec))
    }
    fn cap_val(&self, b: Q) -> Self {
        // v(Σ e_i π^i) = min_i (v(e_i) + i r) in an Eisenstein basis
        let r = self.level.r();
        let coeffs =
            self.coeffs.iter().enumerate().map(|(i, c)| c.cap_val(b - r * Q::from_integer(i as i64))).collect();
        CycloElem { level: self.level.clone(), coeffs }
    }
}

/// Rendering of coefficients inside element dumps.
pub trait RenderCoeff {
    fn render_coeff(&self) -> String;
}

impl RenderCoeff for PadicScalar {
    fn render_coeff(&self) -> String {
        self.residue_string()
    }
}

impl<R: Coeff + RenderCoeff> RenderCoeff for CycloElem<R> {
    fn render_coeff(&self) -> String {
        let cs: Vec<String> = self.coeffs.iter().map(|c| c.render_coeff()).collect();
        format!("level={} [{}]", self.level.n(), cs.join(", "))
    }
}

impl<R: Coeff + RenderCoeff> fmt::Display for CycloElem<R> {
    /// `level=n [c_0, c_1, ...] mod p^M`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}^{}", self.render_coeff(), self.level.p(), self.prec())
    }
}

macro_rules! cyclo_ops {
    ($tr:ident, $m:ident) => {
        impl<R: Coeff> std::ops::$tr<&CycloElem<R>> for &CycloElem<R> {
            type Output = CycloElem<R>;
            fn $m(self, o: &CycloElem<R>) -> CycloElem<R> {
                CycloElem::$m(self, o)
            }
        }
        impl<R: Coeff> std::ops::$tr<CycloElem<R>> for CycloElem<R> {
            type Output = CycloElem<R>;
            fn $m(self, o: CycloElem<R>) -> CycloElem<R> {
                CycloElem::$m(&self, &o)
            }
        }
    };
}
cyclo_ops!(Add, add);
cyclo_ops!(Sub, sub);
cyclo_ops!(Mul, mul);
