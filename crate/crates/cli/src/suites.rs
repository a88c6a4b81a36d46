//! Identity suites run by `verify`.

use clap::ValueEnum;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use padic_interp::cyclotomic::{Cyclo, CycloLevel};
use padic_interp::mellin::*;
use padic_interp::oracle::{coleman_series, kl_reference, mahler_coeffs, mellin_oracle, rational_to_padic};
use padic_interp::series::amice_of_integer;
use padic_interp::weight::{epsilon_gl1, gauss_sum, gauss_sum_tensor};
use padic_interp::{Envelope, FiniteOrderChar, PPowerTimes, PadicScalar, PlusSeries, ScalarSeries, WeightChar, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ops,
    Gauss,
    Mellin,
    Lambda,
    Epsilon,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Ops => "ops",
            Suite::Gauss => "gauss",
            Suite::Mellin => "mellin",
            Suite::Lambda => "lambda",
            Suite::Epsilon => "epsilon",
            Suite::All => "all",
        }
    }
}

/// One identity, with the result of checking it.
#[derive(Clone, Debug)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub anchor: &'static str,
    pub pass: bool,
}

struct Report {
    suite: &'static str,
    checks: Vec<Check>,
}

impl Report {
    fn new(suite: &'static str) -> Self {
        Report { suite, checks: Vec::new() }
    }

    fn add(&mut self, name: impl Into<String>, anchor: &'static str, pass: bool) {
        self.checks.push(Check { suite: self.suite, name: name.into(), anchor, pass });
    }

    /// Errors count as failures.
    fn add_res(&mut self, name: impl Into<String>, anchor: &'static str, r: padic_interp::Result<bool>) {
        self.add(name, anchor, r.unwrap_or(false));
    }
}

pub fn run_suite(suite: Suite, p: u32, prec: i64) -> Vec<Check> {
    match suite {
        Suite::Ops => ops(p, prec),
        Suite::Gauss => gauss(p, prec),
        Suite::Mellin => mellin(p, prec),
        Suite::Lambda => lambda(p, prec),
        Suite::Epsilon => epsilon(p, prec),
        Suite::All => [Suite::Ops, Suite::Gauss, Suite::Mellin, Suite::Lambda, Suite::Epsilon]
            .into_iter()
            .flat_map(|s| run_suite(s, p, prec))
            .collect(),
    }
}

pub fn random_series(rng: &mut ChaCha8Rng, p: u32, len: usize, prec: i64) -> ScalarSeries {
    let coeffs = (0..len).map(|_| PadicScalar::from_i64(p, rng.gen_range(0..i64::MAX / 4), prec)).collect();
    PlusSeries::truncated(coeffs, Envelope::new(0, 0))
}

fn ops(p: u32, prec: i64) -> Vec<Check> {
    let mut r = Report::new("ops");
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let fs: Vec<ScalarSeries> = (0..10).map(|_| random_series(&mut rng, p, 120, prec)).collect();
    let pi = p as i64;
    let all = |f: &dyn Fn(&ScalarSeries) -> padic_interp::Result<bool>| -> padic_interp::Result<bool> {
        for x in &fs {
            if !f(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    r.add_res("ψ∘φ = id", "Frobenius operators", all(&|f| Ok(f.phi().psi()?.agrees_with(f, f.len()))));
    r.add_res("∂∘φ = p·φ∘∂", "Frobenius operators", all(&|f| Ok(f.phi().partial() == f.partial().phi().mul_int(pi))));
    r.add_res("ψ∘∂ = p·∂∘ψ", "Frobenius operators", all(&|f| Ok(f.psi()?.partial().mul_int(pi) == f.partial().psi()?)));
    r.add_res(
        "∂∘σ_a = a·σ_a∘∂",
        "Galois action on series",
        all(&|f| Ok(f.sigma(2)?.partial() == f.partial().sigma(2)?.mul_int(2))),
    );
    r.add_res("σ_a∘σ_b = σ_ab", "Galois action on series", all(&|f| Ok(f.sigma(2)?.sigma(-1)? == f.sigma(-2)?)));
    let coleman = coleman_series(p, 2, p as usize * (41 + prec as usize), prec);
    r.add_res("ψ(1/(2+T)) = 1/(2+T)", "Coleman series", coleman.and_then(|f| Ok(f.psi()?.congruent(&f, 40, prec))));
    let f = &fs[0];
    let nabla = (|| {
        for h in 1..=3u32 {
            let g = f.nabla_h(h);
            for j in 0..5u32 {
                let factor = nabla_transfer_factor(j, h);
                if g.loc_coeff(1, j)? != f.loc_coeff(1, j)?.map(|c| c.mul_bigint(&factor)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    r.add_res("t^j coefficient of ∇_h f = j!/(j−h)!·(that of f)", "∇_h calculus", nabla);
    r.checks
}

fn gauss(p: u32, prec: i64) -> Vec<Check> {
    let mut r = Report::new("gauss");
    let chars: Vec<FiniteOrderChar> = (1..=2).flat_map(|n| FiniteOrderChar::of_conductor(p, n)).collect();
    let each = |f: &dyn Fn(&FiniteOrderChar) -> padic_interp::Result<bool>| -> padic_interp::Result<bool> {
        for e in &chars {
            if !f(e)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let units = |e: &FiniteOrderChar| -> Vec<i64> {
        let pn = (p as i64).pow(e.conductor_exp());
        (2..pn).filter(|a| a % p as i64 != 0).take(4).collect()
    };
    r.add_res(
        "G(η,b)=η⁻¹(b)G(η)",
        "Gauss sums",
        each(&|e| {
            let g = gauss_sum(e, 1, prec)?;
            for b in units(e) {
                let rhs = e.inverse().value(&BigInt::from(b), e.conductor_exp(), prec)?.mul(&g);
                if gauss_sum(e, b, prec)? != rhs {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
    );
    r.add_res(
        "G(η)G(η⁻¹)=η(−1)pⁿ",
        "Gauss sums",
        each(&|e| {
            let g = gauss_sum(e, 1, prec)?.mul(&gauss_sum(&e.inverse(), 1, prec)?);
            let pn = (p as i64).pow(e.conductor_exp());
            Ok(g == Cyclo::one(g.level().clone(), &PadicScalar::zero(p, prec)).mul_int(e.sign() * pn))
        }),
    );
    r.add_res(
        "σ_a(G(η))=η⁻¹(a)G(η)",
        "Gauss sums",
        each(&|e| {
            let g = gauss_sum_tensor(e, 1, prec)?;
            for a in units(e) {
                let twist = g.mul_coeff(&e.inverse().value(&BigInt::from(a), e.value_level(), prec)?);
                if g.galois(a)? != twist {
                    return Ok(false);
                }
            }
            Ok(true)
        }),
    );
    r.checks
}

fn epsilon_pair(e: &FiniteOrderChar, s: Q, prec: i64) -> padic_interp::Result<bool> {
    let p = e.p;
    let a = epsilon_gl1(e, s, prec)?;
    let b = epsilon_gl1(&e.inverse(), Q::from_integer(1) - s, prec)?;
    let level = CycloLevel::get(p, 0)?;
    let sign = PPowerTimes {
        p_exponent: Q::from_integer(0),
        algebraic: Cyclo::constant(level, PadicScalar::from_i64(p, e.sign(), prec)),
    };
    a.mul(&b)?.same_value(&sign)
}

fn epsilon(p: u32, prec: i64) -> Vec<Check> {
    let mut r = Report::new("epsilon");
    let chars: Vec<FiniteOrderChar> = (0..=2).flat_map(|n| FiniteOrderChar::of_conductor(p, n)).collect();
    let all = (|| {
        for e in &chars {
            for s in [Q::from_integer(0), Q::new(1, 2), Q::new(-3, 2)] {
                if !epsilon_pair(e, s, prec)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })();
    r.add_res("ε(η,s)ε(η⁻¹,1−s)=η(−1)", "GL1 epsilon factors", all);
    let one = PadicScalar::one(p, prec);
    let eps = LocalEpsilons { eps_p: one.clone(), eps_tame: vec![(2, one.clone())] };
    r.add_res(
        "C(f,η,j)=1 for unramified η and unit inputs",
        "functional equation constant",
        fe_constant(&one, &FiniteOrderChar::trivial(p), 1, 2, &eps, prec)
            .map(|c| c.p_exponent == Q::from_integer(0) && c.algebraic.coeffs()[0] == one),
    );
    let r3 = |n: i64, d: i64| num_rational::BigRational::new(n.into(), d.into());
    r.add(
        "Γ*(3)=2, Γ*(0)=1, Γ*(−1)=−1",
        "leading Laurent coefficient of Γ",
        gamma_star(3) == r3(2, 1) && gamma_star(0) == r3(1, 1) && gamma_star(-1) == r3(-1, 1),
    );
    let three = PadicScalar::from_i64(p, 3, prec);
    let ninth = PadicScalar::rational(p, &1.into(), &9.into(), prec);
    r.add_res(
        "e_p,α = α⁻ⁿ for n > 0",
        "interpolation factor",
        interpolation_factor(&three, &one, 2, 2, 0).map(|v| v == ninth),
    );
    r.add_res(
        "e_p,α = (1 − α⁻¹ω p^{k−2−j})(1 − α⁻¹p^j) for n = 0",
        "interpolation factor",
        interpolation_factor(&one, &one, 2, 0, 0).map(|v| v.is_zero()),
    );
    r.checks
}

/// Smallest conductor exponent at which `x^1` has an admissible certificate.
pub fn first_admissible(p: u32, m_delta: u32, prec: i64) -> u32 {
    let kappa = WeightChar::power(p, 1, prec);
    (m_delta + 2..12).find(|&m| convergence_certificate(&kappa, m, m_delta).is_ok_and(|c| c.admissible)).unwrap_or(12)
}

fn mellin(p: u32, prec: i64) -> Vec<Check> {
    let mut r = Report::new("mellin");
    let f = |x: u64| PadicScalar::from_i64(p, (x * x * x + 2 * x + 7) as i64, prec);
    let dirac = mahler_coeffs(f, 100, 5, prec).and_then(|e| {
        for b in [0u64, 1, 4, 13] {
            if mellin_oracle(&amice_of_integer(p, b, prec), &e)? != f(b) {
                return Ok(false);
            }
        }
        Ok(true)
    });
    r.add_res("∫ f d(δ_b) = f(b)", "Amice transform", dirac);
    let moments = (|| {
        let units = coleman_series(p, 2, 30 * prec as usize, prec)?.restrict_units()?;
        for j in [1u32, 3] {
            let e = mahler_coeffs(
                |x| {
                    let v = if x % p as u64 == 0 { BigInt::from(0) } else { BigInt::from(x).pow(j) };
                    PadicScalar::from_bigint(p, &v, prec)
                },
                8000,
                (p * p) as usize,
                prec,
            )?;
            let v = mellin_oracle(&units, &e)?;
            if v != rational_to_padic(p, &kl_reference(p, 2, j), prec) || v.prec() < prec / 2 {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    r.add_res("∫_{Z_p^×} x^j dμ_2 = (1−2^{j+1})(1−p^j)B_{j+1}/(j+1), j=1,3", "Kubota–Leopoldt moments", moments);
    let m = first_admissible(p, 1, prec);
    let kappa = WeightChar::power(p, 3, prec + 4);
    let dirac_kappa = (|| {
        let cert = convergence_certificate(&kappa, m, 1)?;
        for b in [2u64, p as u64 + 1] {
            let y = amice_of_integer(p, b, prec);
            let got = kappa_partial(&kappa, &y, &cert, prec / 2)?.eval()?;
            let want = y.eval_at_pi(m)?.scale(&PadicScalar::from_i64(p, (b * b * b) as i64, prec));
            if got != want {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    r.add_res("κ(∂)(1+T)^b = κ(b)(1+T)^b", "κ(∂) on ψ = 0", dirac_kappa);
    if p == 3 {
        let c = convergence_certificate(&WeightChar::power(3, 1, prec), 4, 1);
        r.add_res(
            "certificate p=3, m=4: N=2, slope 1/3",
            "convergence certificate",
            c.map(|c| c.admissible && c.n == 2 && c.slope == Q::new(1, 3)),
        );
    }
    r.checks
}

fn lambda(p: u32, prec: i64) -> Vec<Check> {
    let mut r = Report::new("lambda");
    let n = first_admissible(p, 1, prec);
    let eta = FiniteOrderChar::of_conductor(p, n).into_iter().find(|e| e.wild_exponent % p as u64 != 0).unwrap();
    let kappa = WeightChar::power(p, 2, prec + 4);
    let one = PadicScalar::one(p, prec);
    let d = CrisData::new(vec![one.clone()], None).unwrap();
    let target = (prec / 2).max(2);
    let trivial = IwasawaVector::new(vec![PlusSeries::constant(one.clone())]);
    r.add_res(
        "Λ(ηκ) = 0 for λ = 1",
        "local L-function",
        lambda_value(&d, &trivial, &eta, &kappa, 1, target).map(|v| v.components[0].is_zero()),
    );
    let dirac = (|| {
        for b in [1u64, 2, p as u64 + 1] {
            let e = lambda_from_units(&amice_of_integer(p, b, prec), &eta, &kappa, 1, target)?;
            let want =
                eta.inverse().value(&BigInt::from(b), n, prec)?.scale(&PadicScalar::from_i64(p, (b * b) as i64, prec));
            if e.value != want || e.value.prec() < target {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    r.add_res("G(η)⁻¹Σ η(a)σ_a((κ(∂)(1+T)^b)(π_n)) = η⁻¹(b)κ(b)", "local L-function", dirac);
    let vanish = (|| {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let low = CycloLevel::get(p, 1)?;
        let e2 = FiniteOrderChar::of_conductor(p, 2).into_iter().find(|e| e.wild_exponent % p as u64 != 0).unwrap();
        for _ in 0..5 {
            let cs = (0..low.degree()).map(|_| PadicScalar::from_i64(p, rng.gen_range(0..1 << 40), prec)).collect();
            if !twisted_sum(&e2, &Cyclo::from_coeffs(low.clone(), cs))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    })();
    r.add_res("Σ η(a)σ_a(x) = 0 below the conductor", "twisted sums", vanish);
    let exp_star = (|| {
        let z = IwasawaVector::new(vec![coleman_series(p, 2, 600 * p as usize, prec)?]);
        let a = exp_star_value(&d, &z, 1, 1, 2)?;
        let b = exp_star_value(&d, &z, 1, 1, 3)?;
        let k = a[0].prec().min(b[0].prec());
        Ok(k > 0 && a[0].with_prec(k) == b[0].with_prec(k))
    })();
    r.add_res("exp* value independent of m", "dual exponential", exp_star);
    if p == 3 {
        let interp = (|| {
            let z = IwasawaVector::new(vec![coleman_series(p, 2, 2500, prec.max(12))?]);
            let target = 6;
            for j in [0u32, 1] {
                let k = WeightChar::power(p, j as i64, prec + 4);
                let v = lambda_value(&d, &z, &eta, &k, 1, target)?;
                let s = lambda_special(&d, &z, &eta, j, target)?;
                let m = v.certified.min(s[0].prec());
                if m < target || v.components[0].with_prec(m) != s[0].with_prec(m) {
                    return Ok(false);
                }
            }
            Ok(true)
        })();
        r.add_res("Λ(ηx^j) = α⁻ⁿ∫_{Z_p^×} η⁻¹(x)x^j dλ, j=0,1", "crystalline special values", interp);
    }
    r.checks
}
