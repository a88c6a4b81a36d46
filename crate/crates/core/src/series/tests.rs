use num_bigint::BigInt;

use super::*;
use crate::cyclotomic::{Cyclo, CycloLevel};
use crate::Error;

const M: i64 = 15;

fn s(p: u32, x: i64) -> PadicScalar {
    PadicScalar::from_i64(p, x, M)
}

fn poly(p: u32, cs: &[i64]) -> ScalarSeries {
    PlusSeries::exact(cs.iter().map(|&c| s(p, c)).collect())
}

/// `1/(2+T) = Σ (-1)^k 2^{-(k+1)} T^k`, `len` terms.
fn inv_two_plus_t(p: u32, len: usize) -> ScalarSeries {
    let half = s(p, 2).inv().unwrap();
    let mut c = half.clone();
    let mut coeffs = Vec::new();
    for _ in 0..len {
        coeffs.push(c.clone());
        c = c.mul(&half).neg();
    }
    PlusSeries::truncated(coeffs, Envelope::new(0, 0))
}

fn random_series(p: u32, len: usize, seed: u64) -> ScalarSeries {
    let mut x = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let coeffs = (0..len)
        .map(|_| {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            s(p, (x >> 20) as i64 % 1_000_000_007)
        })
        .collect();
    PlusSeries::truncated(coeffs, Envelope::new(0, 0))
}

#[test]
fn phi_examples() {
    assert_eq!(poly(5, &[1]).phi(), poly(5, &[1]));
    assert_eq!(poly(5, &[0, 1]).phi(), poly(5, &[0, 5, 10, 10, 5, 1]));
    let t = poly(5, &[0, 1]);
    assert_eq!(t.phi().partial(), t.partial().phi().mul_int(5));
}

#[test]
fn psi_examples() {
    assert_eq!(poly(5, &[0, 1]).phi().psi().unwrap(), poly(5, &[0, 1]));
    assert_eq!(poly(5, &[1, 1]).psi().unwrap(), poly(5, &[0]));
    for p in [3, 5, 7] {
        let f = inv_two_plus_t(p, p as usize * (21 + M as usize));
        let g = f.psi().unwrap();
        assert!(g.len() >= 20);
        assert!(g.congruent(&f, 20, M), "p={p}");
    }
}

#[test]
fn psi_tail_precision_is_honest() {
    // a truncation of 1/(2+T): later coefficients of ψ lose precision
    let f = inv_two_plus_t(5, 40);
    let g = f.psi().unwrap();
    // the tail starts at T^40, so ψ only knows coefficient i modulo p^{8-i}
    assert_eq!(g.coeffs()[0].prec(), 8);
    assert_eq!(g.coeffs()[5].prec(), 3);
    assert!(g.agrees_with(&inv_two_plus_t(5, 8), 8));
}

#[test]
fn sigma_examples() {
    let t = poly(3, &[0, 1]).truncate(2).extend_to(12);
    let f = t.sigma(-1).unwrap();
    for k in 1..12 {
        let sign = if k % 2 == 1 { -1 } else { 1 };
        assert_eq!(f.coeffs()[k], s(3, sign));
    }
    let g = random_series(5, 30, 3);
    assert_eq!(g.sigma(1).unwrap(), g);
    assert_eq!(g.sigma(2).unwrap().sigma(3).unwrap(), g.sigma(6).unwrap());
    assert_eq!(g.sigma(2).unwrap().partial(), g.partial().sigma(2).unwrap().mul_int(2));
    assert!(matches!(g.sigma(10), Err(Error::NotAUnit(_))));
}

#[test]
fn partial_and_dirac() {
    assert_eq!(poly(5, &[0, 1]).partial(), poly(5, &[1, 1]));
    let b = amice_of_integer(5, 7, M);
    assert_eq!(b.partial(), b.mul_int(7));
    assert_eq!(amice_of_integer(5, 0, M), poly(5, &[1]));
    assert_eq!(amice_of_integer(5, 2, M), poly(5, &[1, 2, 1]));
    let d = amice_of_dirac(&s(5, 13), 20).unwrap();
    assert_eq!(d.partial().coeffs()[0], s(5, 13));
    assert_eq!(amice_of_dirac(&PadicScalar::rational(5, &1.into(), &5.into(), M), 3).unwrap_err(), Error::NotIntegral);
}

#[test]
fn operator_relations_on_random_series() {
    for p in [3u32, 5] {
        for seed in 0..5 {
            let f = random_series(p, 80, seed);
            assert!(f.phi().psi().unwrap().agrees_with(&f, 80));
            assert_eq!(f.phi().partial(), f.partial().phi().mul_int(p as i64));
            assert_eq!(f.psi().unwrap().partial().mul_int(p as i64), f.partial().psi().unwrap());
            assert_eq!(f.phi().sigma(2).unwrap(), f.sigma(2).unwrap().phi());
        }
    }
}

#[test]
fn restriction_to_units() {
    assert_eq!(poly(5, &[1]).restrict_units().unwrap(), poly(5, &[0]));
    assert_eq!(poly(5, &[1, 1]).restrict_units().unwrap(), poly(5, &[1, 1]));
    let f = inv_two_plus_t(5, 200);
    let r = f.restrict_units().unwrap();
    let direct = f.restrict_units_eigen(&s(5, 1));
    assert!(r.congruent(&direct, 30, M));
    let again = r.restrict_units().unwrap();
    assert!(again.congruent(&r, 30, M));
    let z = r.psi().unwrap();
    assert!(z.congruent(&poly(5, &[0]), 10, M));
}

#[test]
fn evaluation_at_pi() {
    let l1 = CycloLevel::get(5, 1).unwrap();
    let zeta = Cyclo::zeta_power(l1.clone(), 1, &s(5, 0));
    assert_eq!(poly(5, &[1, 1]).eval_at_pi(1).unwrap(), zeta);
    assert_eq!(poly(5, &[0, 1]).eval_at_pi(1).unwrap(), Cyclo::pi(l1.clone(), &s(5, 0)));
    let two_plus_pi = Cyclo::pi(l1.clone(), &s(5, 0)).add_constant(&s(5, 2));
    let v = inv_two_plus_t(5, 80).eval_at_pi(1).unwrap();
    assert!(v.prec() >= 15);
    assert_eq!(v, two_plus_pi.inv().unwrap());
    let l2 = CycloLevel::get(5, 2).unwrap();
    let z2 = Cyclo::zeta_power(l2, 1, &s(5, 0));
    assert_eq!(poly(5, &[1, 1]).eval_at_pi(2).unwrap(), z2);
    // compatibility with φ along the tower
    let f = random_series(3, 200, 9);
    let a = f.phi().eval_at_pi(2).unwrap();
    let b = f.eval_at_pi(1).unwrap().lift_level(2).unwrap();
    assert_eq!(a, b);
    let short = inv_two_plus_t(3, 3);
    assert!(matches!(short.eval_at_pi(3), Err(Error::InsufficientTruncation(_))));
}

#[test]
fn localization_coefficients() {
    let f = poly(5, &[1, 1]);
    let l1 = CycloLevel::get(5, 1).unwrap();
    let zeta = Cyclo::zeta_power(l1, 1, &s(5, 0));
    assert_eq!(f.loc_coeff(1, 0).unwrap(), f.eval_at_pi(1).unwrap());
    assert_eq!(f.loc_coeff(1, 1).unwrap(), zeta.shift(-1));
    let l2 = CycloLevel::get(5, 2).unwrap();
    let z2 = Cyclo::zeta_power(l2, 1, &s(5, 0));
    let expect = z2.shift(-4).map(|c| c.div_bigint(&BigInt::from(2)));
    assert_eq!(f.loc_coeff(2, 2).unwrap(), expect);
}

#[test]
fn logarithm_series() {
    let t = log1p_t(5, 40, M);
    assert_eq!(t.coeffs()[1], s(5, 1));
    assert_eq!(t.coeffs()[5].valuation(), Some(-1));
    assert_eq!(t.coeffs()[5], PadicScalar::rational(5, &1.into(), &5.into(), M));
    let lhs = t.phi();
    let rhs = t.mul_int(5);
    assert!(lhs.agrees_with(&rhs, 40));
}

#[test]
fn nabla_examples() {
    let one = poly(5, &[1]);
    assert!(one.nabla().coeffs().iter().all(|c| c.is_zero()));
    let t = poly(5, &[0, 1]);
    let n = t.nabla();
    let expect = log1p_t(5, 2, M).mul(&poly(5, &[1, 1]));
    assert!(n.agrees_with(&expect, n.len()));
    let f = random_series(5, 30, 1);
    assert_eq!(f.nabla_h(1), f.nabla());
}

#[test]
fn kill_identity_for_nabla_h() {
    let f = random_series(3, 300, 4);
    for h in 1..=3u32 {
        let g = f.nabla_h(h);
        for j in 0..5u32 {
            let lhs = g.loc_coeff(2, j).unwrap();
            let mut factor = 1i64;
            for i in 0..h as i64 {
                factor *= j as i64 - i;
            }
            let rhs = f.loc_coeff(2, j).unwrap().mul_int(factor);
            assert_eq!(lhs, rhs, "h={h} j={j}");
        }
    }
}

#[test]
fn annulus_valuations() {
    let one = poly(5, &[1]);
    assert_eq!(one.annulus_valuation(Q::new(1, 4), Q::new(1, 2)), Q::from_integer(0));
    let f = poly(5, &[5, 1]);
    assert_eq!(f.annulus_valuation(Q::new(1, 4), Q::new(1, 4)), Q::new(1, 4));
    let g = random_series(5, 30, 2);
    let r = Q::new(1, 20);
    assert!(f.mul(&g).annulus_valuation(r, r) >= f.annulus_valuation(r, r) + g.annulus_valuation(r, r));
}

#[test]
fn text_round_trip() {
    let f = poly(5, &[3, 0, 7]);
    let txt = f.to_string();
    assert_eq!(txt, "[3, 0, 7] deg=2 prec=15 ring=Qp");
    assert_eq!(ScalarSeries::parse(5, &txt).unwrap(), f);
    let g = ScalarSeries::parse(5, "[1/5^1, 2] deg=1 prec=6 ring=Qp tail=0/0").unwrap();
    assert_eq!(g.coeffs()[0].valuation(), Some(-1));
    assert!(!g.is_exact());
    assert!(ScalarSeries::parse(5, "[1] prec=3 ring=L2").is_err());
}
