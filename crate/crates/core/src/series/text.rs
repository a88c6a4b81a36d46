use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use super::{Envelope, PlusSeries, ScalarSeries};
use crate::cyclotomic::RenderCoeff;
use crate::error::{Error, Result};
use crate::padic::PadicScalar;
use crate::ring::{Coeff, Q};

impl<R: Coeff + RenderCoeff> fmt::Display for PlusSeries<R> {
    /// `[c_0, c_1, ...] deg=D prec=M ring=Qp`, followed by `tail=floor/loss` when truncated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs: Vec<String> = self.coeffs().iter().map(|c| c.render_coeff()).collect();
        write!(f, "[{}] deg={} prec={} ring=Qp", cs.join(", "), self.degree(), self.prec())?;
        if let Some(e) = self.tail() {
            write!(f, " tail={}/{}", e.floor, e.log_loss)?;
        }
        Ok(())
    }
}

fn parse_coeff(p: u32, s: &str, prec: i64) -> Result<PadicScalar> {
    let bad = || Error::Parse(format!("bad coefficient `{s}`"));
    match s.split_once('/') {
        None => Ok(PadicScalar::from_bigint(p, &s.parse::<BigInt>().map_err(|_| bad())?, prec)),
        Some((num, den)) => {
            let num: BigInt = num.parse().map_err(|_| bad())?;
            let den: BigInt = match den.split_once('^') {
                Some((b, e)) => {
                    let b: BigInt = b.parse().map_err(|_| bad())?;
                    b.pow(e.parse::<u32>().map_err(|_| bad())?)
                }
                None => den.parse().map_err(|_| bad())?,
            };
            Ok(PadicScalar::rational(p, &num, &den, prec))
        }
    }
}

impl ScalarSeries {
    /// Parse the textual form for the prime `p`; integer or `u/p^k` coefficients.
    pub fn parse(p: u32, s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in series `{s}`"));
        let s = s.trim();
        let close = s.find(']').ok_or_else(|| bad("missing ]"))?;
        let body = s.strip_prefix('[').ok_or_else(|| bad("missing ["))?;
        let body = &body[..close - 1];
        let mut prec = None;
        let mut tail = None;
        let mut deg = None;
        for tok in s[close + 1..].split_whitespace() {
            let (k, v) = tok.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            match k {
                "prec" => prec = Some(v.parse::<i64>().map_err(|_| bad("bad prec"))?),
                "deg" => deg = Some(v.parse::<usize>().map_err(|_| bad("bad deg"))?),
                "ring" if v == "Qp" => {}
                "ring" => return Err(Error::Unsupported(format!("coefficient ring {v}"))),
                "tail" => {
                    let (f, l) = v.split_once('/').ok_or_else(|| bad("bad tail"))?;
                    let floor: Q = f.parse().map_err(|_| bad("bad tail floor"))?;
                    tail = Some(Envelope { floor, log_loss: l.parse().map_err(|_| bad("bad tail loss"))? });
                }
                _ => return Err(bad("unknown key")),
            }
        }
        let prec = prec.ok_or_else(|| bad("missing prec"))?;
        let coeffs: Vec<PadicScalar> = body
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| parse_coeff(p, t, prec))
            .collect::<Result<_>>()?;
        if coeffs.is_empty() {
            return Err(bad("no coefficients"));
        }
        if let Some(d) = deg {
            if d + 1 != coeffs.len() {
                return Err(bad("deg does not match the coefficient count"));
            }
        }
        Ok(PlusSeries::new(coeffs, tail))
    }
}

impl FromStr for Envelope {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (f, l) = s.split_once('/').ok_or_else(|| Error::Parse(s.into()))?;
        Ok(Envelope {
            floor: f.parse().map_err(|_| Error::Parse(s.into()))?,
            log_loss: l.parse().map_err(|_| Error::Parse(s.into()))?,
        })
    }
}
