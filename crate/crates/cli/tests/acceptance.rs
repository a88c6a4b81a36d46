//! Acceptance criteria 1-10, one PASS/FAIL line each.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use padic_interp::cyclotomic::{Cyclo, CycloLevel};
use padic_interp::mellin::*;
use padic_interp::oracle::{coleman_series, kl_reference, mahler_coeffs, mellin_oracle, rational_to_padic};
use padic_interp::series::amice_of_integer;
use padic_interp::weight::{epsilon_gl1, gauss_sum, gauss_sum_tensor};
use padic_interp::{Envelope, FiniteOrderChar, PPowerTimes, PadicScalar, PlusSeries, ScalarSeries, WeightChar, Q};
use padic_interp_cli::Cli;

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<T>(r: padic_interp::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn random_series(rng: &mut ChaCha8Rng, p: u32, len: usize, prec: i64) -> ScalarSeries {
    let coeffs = (0..len).map(|_| PadicScalar::from_i64(p, rng.gen_range(0..i64::MAX / 4), prec)).collect();
    PlusSeries::truncated(coeffs, Envelope::new(0, 0))
}

fn random_unit(rng: &mut ChaCha8Rng, p: u32, below: i64) -> i64 {
    loop {
        let a = rng.gen_range(2..below);
        if a % p as i64 != 0 {
            return a;
        }
    }
}

fn primitive(p: u32, n: u32) -> FiniteOrderChar {
    FiniteOrderChar::of_conductor(p, n).into_iter().find(|e| n == 1 || e.wild_exponent % p as u64 != 0).unwrap()
}

fn coleman_job() -> (CrisData, IwasawaVector, FiniteOrderChar) {
    let p = 3;
    let lam = coleman_series(p, 2, 2500, 14).unwrap();
    let d = CrisData::new(vec![PadicScalar::one(p, 14)], None).unwrap();
    (d, IwasawaVector::new(vec![lam]), FiniteOrderChar::new(p, 4, 0, 1).unwrap())
}

/// Operator algebra on random series.
fn criterion_1() -> Outcome {
    const N: usize = 400;
    const M: i64 = 20;
    const UNITS: [i64; 8] = [2, -1, 4, 7, -7, 11, 13, -8];
    for p in [3u32, 5] {
        let mut rng = ChaCha8Rng::seed_from_u64(p as u64);
        let pi = p as i64;
        for i in 0..100 {
            let f = random_series(&mut rng, p, N + 40, M);
            let a = UNITS[rng.gen_range(0..UNITS.len())];
            let b = UNITS[rng.gen_range(0..UNITS.len())];
            let g = random_series(&mut rng, p, p as usize * (N + M as usize + 1), M);
            let checks = [
                ("ψφ = id", e2s(f.phi().psi())?.congruent(&f, N, M)),
                ("∂φ = pφ∂", f.phi().partial().congruent(&f.partial().phi().mul_int(pi), N, M)),
                ("ψ∂ = p∂ψ", e2s(g.psi())?.partial().mul_int(pi).congruent(&e2s(g.partial().psi())?, N, M)),
                ("∂σ_a = aσ_a∂", e2s(f.sigma(a))?.partial().congruent(&e2s(f.partial().sigma(a))?.mul_int(a), N, M)),
                ("σ_aσ_b = σ_ab", e2s(e2s(f.sigma(b))?.sigma(a))?.congruent(&e2s(f.sigma(a * b))?, N, M)),
            ];
            for (name, ok) in checks {
                ensure(ok, || format!("{name} fails for p={p}, series {i}, a={a}, b={b}"))?;
            }
        }
    }
    Ok(())
}

/// Gauss sums and GL1 ε-factors for every character of conductor at most p^3.
fn criterion_2() -> Outcome {
    const M: i64 = 12;
    for p in [3u32, 5] {
        let one = |prec| PadicScalar::one(p, prec);
        for n in 0..=3 {
            for eta in FiniteOrderChar::of_conductor(p, n) {
                let name = format!("p={p} n={n} tame={} wild={}", eta.tame_index, eta.wild_exponent);
                for s in [Q::from_integer(0), Q::new(1, 2), Q::new(-5, 3)] {
                    let a = e2s(epsilon_gl1(&eta, s, M))?;
                    let b = e2s(epsilon_gl1(&eta.inverse(), Q::from_integer(1) - s, M))?;
                    let sign = PPowerTimes {
                        p_exponent: Q::from_integer(0),
                        algebraic: Cyclo::constant(e2s(CycloLevel::get(p, 0))?, one(M).mul_int(eta.sign())),
                    };
                    ensure(e2s(e2s(a.mul(&b))?.same_value(&sign))?, || format!("ε(η,s)ε(η⁻¹,1−s) ≠ η(−1) at {name}"))?;
                }
                if n == 0 {
                    continue;
                }
                let pn = (p as i64).pow(n);
                let g = e2s(gauss_sum(&eta, 1, M))?;
                let gi = e2s(gauss_sum(&eta.inverse(), 1, M))?;
                let expect = Cyclo::one(g.level().clone(), &one(M)).mul_int(eta.sign() * pn);
                ensure(g.mul(&gi) == expect, || format!("G(η)G(η⁻¹) ≠ η(−1)pⁿ at {name}"))?;
                let gt = e2s(gauss_sum_tensor(&eta, 1, M))?;
                for b in (1..pn).filter(|b| b % p as i64 != 0).take(12) {
                    let eb = e2s(eta.inverse().value(&BigInt::from(b), n, M))?;
                    ensure(e2s(gauss_sum(&eta, b, M))? == eb.mul(&g), || format!("G(η,{b}) ≠ η⁻¹({b})G(η) at {name}"))?;
                    let inner = e2s(eta.inverse().value(&BigInt::from(b), eta.value_level(), M))?;
                    ensure(e2s(gt.galois(b))? == gt.mul_coeff(&inner), || {
                        format!("σ_{b}(G(η)) ≠ η⁻¹({b})G(η) at {name}")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// ψ fixes the Coleman series 1/(2+T).
fn criterion_3() -> Outcome {
    const M: i64 = 20;
    for p in [3u32, 5, 7] {
        let n = 400 / p as usize;
        let f = e2s(coleman_series(p, 2, p as usize * (n + M as usize + 1), M))?;
        let mut c = PadicScalar::rational(p, &1.into(), &2.into(), M);
        let minus_half = PadicScalar::rational(p, &(-1).into(), &2.into(), M);
        for k in 0..n {
            ensure(f.coeffs()[k] == c, || format!("coefficient {k} of f_2 is not (-1)^k/2^(k+1) at p={p}"))?;
            c = c.mul(&minus_half);
        }
        ensure(e2s(f.psi())?.congruent(&f, n, M), || format!("ψ(f) ≢ f mod (p^20, T^{n}) at p={p}"))?;
    }
    Ok(())
}

/// Restricted moments of the Coleman measure against Bernoulli numbers.
fn criterion_4() -> Outcome {
    let p = 5;
    let m = 20;
    let units = e2s(e2s(coleman_series(p, 2, 600, m))?.restrict_units())?;
    for j in [1u32, 3, 5, 7] {
        let exp = e2s(mahler_coeffs(
            |x| {
                let v = if x % 5 == 0 { BigInt::from(0) } else { BigInt::from(x).pow(j) };
                PadicScalar::from_bigint(p, &v, m)
            },
            5000,
            25,
            m,
        ))?;
        let v = e2s(mellin_oracle(&units, &exp))?;
        let expect = rational_to_padic(p, &kl_reference(p, 2, j), m);
        ensure(v.prec() >= 15 && v.with_prec(15) == expect.with_prec(15), || format!("moment j={j}: {v} vs {expect}"))?;
    }
    let one = PadicScalar::one(p, 15);
    let minus_31_2 = PadicScalar::rational(p, &(-31).into(), &2.into(), 15);
    ensure(kl_reference(p, 2, 1) == num_rational::BigRational::from_integer(1.into()), || {
        "j=1 reference is not 1".into()
    })?;
    ensure(rational_to_padic(p, &kl_reference(p, 2, 3), 15) == minus_31_2 && !one.is_zero(), || {
        "j=3 reference is not -31/2".into()
    })
}

/// Interpolation at conductor 3^4: Λ(ηx^j) against the Mahler-pairing oracle.
fn criterion_5(certs: &mut Vec<(WeightChar, ScalarSeries, ConvergenceCertificate, i64)>) -> Outcome {
    let (d, z, eta) = coleman_job();
    let p = 3;
    let y = z.components[0].sub(&z.components[0].phi());
    for j in 0..=6i64 {
        let kappa = WeightChar::power(p, j, 18);
        let v = e2s(lambda_value(&d, &z, &eta, &kappa, 1, 8))?;
        let s = e2s(lambda_special(&d, &z, &eta, j as u32, 8))?;
        ensure(v.certified >= 8 && s[0].prec() >= 8, || {
            format!("j={j}: certified only {} / {}", v.certified, s[0].prec())
        })?;
        ensure(v.components[0].with_prec(8) == s[0].with_prec(8), || {
            format!("j={j}: Λ value differs from the oracle")
        })?;
        let cert = e2s(convergence_certificate(&kappa, 4, 1))?;
        certs.push((kappa, y.clone(), cert, 8));
    }
    Ok(())
}

/// Dirac inputs: κ(∂)(1+T)^b twisted by η gives η⁻¹(b)κ(b).
fn criterion_6(certs: &mut Vec<(WeightChar, ScalarSeries, ConvergenceCertificate, i64)>) -> Outcome {
    let p = 3;
    let m = 14;
    let target = 10;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let weights = [
        ("x^5", WeightChar::power(p, 5, m + 4)),
        ("<x>^(1/2)", e2s(WeightChar::from_weight(0, &PadicScalar::rational(p, &1.into(), &2.into(), m + 4)))?),
    ];
    for n in [4u32, 5, 6] {
        let eta = primitive(p, n);
        for (name, kappa) in &weights {
            for _ in 0..20 {
                let b = random_unit(&mut rng, p, 1000) as u64;
                let y = amice_of_integer(p, b, m);
                let e = e2s(lambda_from_units(&y, &eta, kappa, 1, target))?;
                let kb = e2s(kappa.eval(&PadicScalar::from_i64(p, b as i64, m)))?;
                let want = e2s(eta.inverse().value(&BigInt::from(b), n, m))?.scale(&kb);
                ensure(e.value.prec() >= target, || format!("n={n} {name} b={b}: certified {}", e.value.prec()))?;
                ensure(e.value == want, || format!("n={n} {name} b={b}: value is not η⁻¹(b)κ(b)"))?;
                certs.push((kappa.clone(), y, e.cert.clone(), target));
            }
        }
    }
    Ok(())
}

/// Twisted sums vanish below the conductor; exp* does not depend on m.
fn criterion_7() -> Outcome {
    let p = 3;
    let m = 12;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..50 {
        let n = 2 + (i % 3) as u32;
        let eta = FiniteOrderChar::of_conductor(p, n);
        let eta = &eta[rng.gen_range(0..eta.len())];
        let low = rng.gen_range(0..n);
        let level = e2s(CycloLevel::get(p, low))?;
        let cs = (0..level.degree()).map(|_| PadicScalar::from_i64(p, rng.gen_range(0..1 << 40), m)).collect();
        let x = e2s(Cyclo::from_coeffs(level, cs).lift_level(n))?;
        ensure(e2s(twisted_sum(eta, &x))?.is_zero(), || {
            format!("twisted sum {i} (n={n}, from level {low}) is nonzero")
        })?;
    }
    let d = CrisData::new(vec![PadicScalar::one(p, 30)], None).unwrap();
    let z = IwasawaVector::new(vec![e2s(coleman_series(p, 2, 3000, 30))?]);
    for (j, n) in [(0u32, 0u32), (1, 1), (2, 1)] {
        let vals: Vec<Cyclo> = (1..=3)
            .map(|k| e2s(exp_star_value(&d, &z, j, n, n.max(1) + k - 1)).map(|v| v[0].clone()))
            .collect::<Result<_, _>>()?;
        let k = vals.iter().map(|v| v.prec()).min().unwrap();
        ensure(k >= 8, || format!("exp* j={j} n={n}: only {k} digits"))?;
        ensure(vals.iter().all(|v| v.with_prec(k) == vals[0].with_prec(k)), || {
            format!("exp* j={j} n={n} depends on m")
        })?;
    }
    Ok(())
}

/// ∇_h against the coefficients of φ^{-n}, and the transfer to exp*.
fn criterion_8() -> Outcome {
    let p = 3;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..3 {
        let f = random_series(&mut rng, p, 300, 16);
        for h in 1..=3u32 {
            let g = f.nabla_h(h);
            for j in 0..6u32 {
                let lhs = e2s(g.loc_coeff(2, j))?;
                if j < h {
                    ensure(lhs.is_zero(), || format!("h={h} j={j}: coefficient not killed"))?;
                }
                let rhs = e2s(f.loc_coeff(2, j))?.map(|c| c.mul_bigint(&nabla_transfer_factor(j, h)));
                ensure(lhs == rhs, || format!("h={h} j={j}: factor j!/(j-h)! fails"))?;
            }
        }
    }
    let d = CrisData::new(vec![PadicScalar::one(p, 24)], None).unwrap();
    let lam = e2s(coleman_series(p, 2, 2000, 24))?;
    let z = IwasawaVector::new(vec![lam.clone()]);
    for h in 1..=2u32 {
        let zh = IwasawaVector::new(vec![lam.nabla_h(h)]);
        for j in 0..=2u32 {
            let a = e2s(exp_star_value(&d, &zh, j, 1, 2))?;
            let b = e2s(exp_star_value(&d, &z, j, 1, 2))?;
            let b = b[0].map(|c| c.mul_bigint(&nabla_transfer_factor(j, h)));
            let k = a[0].prec().min(b.prec());
            ensure(k >= 4, || format!("transfer h={h} j={j}: only {k} digits"))?;
            ensure(a[0].with_prec(k) == b.with_prec(k), || format!("transfer h={h} j={j} fails"))?;
        }
    }
    Ok(())
}

/// Each computed term of the κ(∂) expansion dominates the certified linear bound.
fn criterion_9(certs: &[(WeightChar, ScalarSeries, ConvergenceCertificate, i64)]) -> Outcome {
    ensure(!certs.is_empty(), || "no certificates were issued".into())?;
    for (i, (kappa, y, cert, target)) in certs.iter().enumerate() {
        ensure(cert.admissible, || format!("certificate {i} not admissible"))?;
        let (terms, full) = e2s(kappa_terms(kappa, y, cert, *target))?;
        let r = e2s(CycloLevel::get(y.p(), full.m))?.r();
        for (j, g) in terms.iter().enumerate() {
            if g.coeffs().iter().all(|c| c.is_zero()) {
                continue;
            }
            let v = g.annulus_valuation(r, r);
            let bound = full.base + full.slope * Q::from_integer(j as i64);
            ensure(v >= bound, || format!("certificate {i}, term {j}: valuation {v} below {bound}"))?;
        }
    }
    Ok(())
}

/// The Λ table is byte-identical across thread counts.
fn criterion_10() -> Outcome {
    use clap::Parser;
    let cfg = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs/coleman_p3.json");
    let run = |threads: &str| {
        let cli =
            Cli::try_parse_from(["padic-interp", "lambda", "--config", cfg.to_str().unwrap(), "--threads", threads])
                .map_err(|e| e.to_string())?;
        padic_interp_cli::execute(&cli).map_err(|e| e.to_string())
    };
    let (a, ok_a) = run("1")?;
    let (b, ok_b) = run("4")?;
    ensure(ok_a && ok_b, || "lambda job reported failures".into())?;
    ensure(a.contains("\"certified_mod\": \"3^8\""), || "unexpected lambda output".into())?;
    ensure(a == b, || "outputs differ between thread counts".into())
}

fn main() {
    let mut certs = Vec::new();
    let mut failed = 0;
    let mut report = |n: u32, what: &str, limit: Option<u64>, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let el = t.elapsed();
        let r = match (r, limit) {
            (Ok(()), Some(l)) if el > Duration::from_secs(l) => Err(format!("took {el:.1?}, limit {l}s")),
            (r, _) => r,
        };
        match r {
            Ok(()) => println!("criterion {n:>2} PASS  {what}  ({el:.1?})"),
            Err(e) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {what}  ({el:.1?}): {e}");
            }
        }
    };
    report(1, "operator algebra", Some(30), &mut criterion_1);
    report(2, "Gauss sums and epsilon factors", Some(60), &mut criterion_2);
    report(3, "Coleman fixed point", None, &mut criterion_3);
    report(4, "Kubota-Leopoldt moments", Some(60), &mut criterion_4);
    report(5, "interpolation at conductor 3^4", Some(300), &mut || criterion_5(&mut certs));
    let mut certs6 = Vec::new();
    report(6, "Dirac closed forms", None, &mut || criterion_6(&mut certs6));
    report(7, "vanishing and m-independence", None, &mut criterion_7);
    report(8, "nabla_h calculus", None, &mut criterion_8);
    certs.extend(certs6);
    report(9, "certificate soundness", None, &mut || criterion_9(&certs));
    report(10, "determinism of the lambda table", None, &mut criterion_10);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
