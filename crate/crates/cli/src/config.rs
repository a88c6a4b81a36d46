//! JSON job descriptors.

use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Deserialize;

use padic_interp::cyclotomic::is_odd_prime;
use padic_interp::oracle::coleman_series;
use padic_interp::series::amice_of_integer;
use padic_interp::{FiniteOrderChar, PadicScalar, PlusSeries, ScalarSeries, WeightChar};

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub p: u32,
    #[serde(rename = "M")]
    pub prec: i64,
    #[serde(default)]
    pub crisdata: Option<CrisConfig>,
    /// One source per component.
    #[serde(default)]
    pub z: Vec<SeriesSource>,
    #[serde(default)]
    pub eta: Vec<EtaSpec>,
    #[serde(default)]
    pub kappa: Vec<KappaSpec>,
    #[serde(default)]
    pub target_precision: Option<i64>,
    #[serde(default = "one")]
    pub m_delta: u32,
    #[serde(default)]
    pub epsilon: Option<EpsilonSpec>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrisConfig {
    pub alphas: Vec<String>,
    #[serde(default)]
    pub hodge_tate: Option<Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SeriesSource {
    Coleman { coleman: ColemanSpec },
    Dirac { dirac: u64 },
    Constant { constant: String },
    Text { series: String },
    File { file: PathBuf },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ColemanSpec {
    pub c: i64,
    pub len: usize,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum EtaSpec {
    Char { conductor_exp: u32, tame_index: u64, wild_exponent: u64 },
    AllOf { all_of_conductor: u32 },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum KappaSpec {
    Power { j: i64 },
    Weight { tame_index: u64, weight: String },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsilonSpec {
    pub omega: String,
    pub j: Vec<i64>,
    pub k: i64,
    pub eps_p: String,
    #[serde(default)]
    pub eps_tame: Vec<(u64, String)>,
}

fn field(name: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("field `{name}`: {msg}"))
}

/// `a`, `-a` or `a/b`.
pub fn parse_rational(name: &str, s: &str) -> Result<BigRational, CliError> {
    let bad = || field(name, format!("`{s}` is not a rational number"));
    let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == BigInt::from(0) {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn parse_scalar(name: &str, s: &str, p: u32, prec: i64) -> Result<PadicScalar, CliError> {
    let r = parse_rational(name, s)?;
    Ok(PadicScalar::rational(p, r.numer(), r.denom(), prec))
}

pub fn check_prime(p: u32) -> Result<(), CliError> {
    if !is_odd_prime(p as u64) {
        return Err(field("p", format!("{p} is not an odd prime")));
    }
    Ok(())
}

pub fn check_prec(m: i64) -> Result<(), CliError> {
    if m < 4 {
        return Err(field("M", format!("{m} is below the minimum 4")));
    }
    Ok(())
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        let cfg: JobConfig =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        check_prime(cfg.p)?;
        check_prec(cfg.prec)?;
        if let Some(t) = cfg.target_precision {
            if t < 1 {
                return Err(field("target_precision", "must be positive"));
            }
        }
        for (i, s) in cfg.z.iter().enumerate() {
            if let SeriesSource::File { file } = s {
                let full = path.parent().unwrap_or(Path::new(".")).join(file);
                if !full.exists() {
                    return Err(field(&format!("z[{i}].file"), format!("{} does not exist", full.display())));
                }
            }
        }
        Ok(cfg)
    }

    pub fn target(&self) -> i64 {
        self.target_precision.unwrap_or(self.prec / 2)
    }

    pub fn characters(&self) -> Result<Vec<FiniteOrderChar>, CliError> {
        let mut out = Vec::new();
        for (i, e) in self.eta.iter().enumerate() {
            match *e {
                EtaSpec::Char { conductor_exp, tame_index, wild_exponent } => {
                    out.push(
                        FiniteOrderChar::new(self.p, conductor_exp, tame_index, wild_exponent)
                            .map_err(|err| field(&format!("eta[{i}]"), err))?,
                    );
                }
                EtaSpec::AllOf { all_of_conductor } => {
                    out.extend(FiniteOrderChar::of_conductor(self.p, all_of_conductor))
                }
            }
        }
        Ok(out)
    }

    pub fn weights(&self) -> Result<Vec<(String, WeightChar)>, CliError> {
        let wp = self.prec + 4;
        self.kappa
            .iter()
            .enumerate()
            .map(|(i, k)| match k {
                KappaSpec::Power { j } => Ok((format!("x^{j}"), WeightChar::power(self.p, *j, wp))),
                KappaSpec::Weight { tame_index, weight } => {
                    let w = parse_scalar(&format!("kappa[{i}].weight"), weight, self.p, wp)?;
                    let kappa =
                        WeightChar::from_weight(*tame_index, &w).map_err(|e| field(&format!("kappa[{i}]"), e))?;
                    Ok((format!("w^{tame_index}<x>^({weight})"), kappa))
                }
            })
            .collect()
    }

    pub fn alphas(&self) -> Result<Vec<PadicScalar>, CliError> {
        let c = self.crisdata.as_ref().ok_or_else(|| field("crisdata", "missing"))?;
        c.alphas
            .iter()
            .enumerate()
            .map(|(i, a)| parse_scalar(&format!("crisdata.alphas[{i}]"), a, self.p, self.prec))
            .collect()
    }

    pub fn series(&self, base: &Path) -> Result<Vec<ScalarSeries>, CliError> {
        self.z
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let name = format!("z[{i}]");
                match s {
                    SeriesSource::Coleman { coleman } => {
                        coleman_series(self.p, coleman.c, coleman.len, self.prec).map_err(|e| field(&name, e))
                    }
                    SeriesSource::Dirac { dirac } => Ok(amice_of_integer(self.p, *dirac, self.prec)),
                    SeriesSource::Constant { constant } => {
                        Ok(PlusSeries::constant(parse_scalar(&name, constant, self.p, self.prec)?))
                    }
                    SeriesSource::Text { series } => ScalarSeries::parse(self.p, series).map_err(|e| field(&name, e)),
                    SeriesSource::File { file } => {
                        let full = base.join(file);
                        let text = std::fs::read_to_string(&full).map_err(|e| field(&name, e))?;
                        ScalarSeries::parse(self.p, &text).map_err(|e| field(&name, e))
                    }
                }
            })
            .collect()
    }
}
