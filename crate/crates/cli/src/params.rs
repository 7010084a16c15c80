//! Typed access to the string parameters of a job.

use std::collections::BTreeMap;

use dynheight::dynamics::PolyMap;
use dynheight::exactnum::{parse_rational, Ball, RatPoly, Rational};
use dynheight::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params(pub BTreeMap<String, String>);

impl Params {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    pub fn has(&self, key: &str) -> bool {
        self.0.contains_key(key)
    }

    pub fn flag(&self, key: &str) -> bool {
        matches!(self.get(key), Some("true" | "1" | "yes"))
    }

    pub fn req(&self, key: &str) -> Result<&str> {
        self.get(key).ok_or_else(|| Error::Parse(format!("missing parameter --{key}")))
    }

    pub fn rational(&self, key: &str) -> Result<Rational> {
        parse_rational(self.req(key)?).map_err(|e| Error::Parse(format!("--{key}: {e}")))
    }

    pub fn rational_or(&self, key: &str, default: &str) -> Result<Rational> {
        parse_rational(self.get(key).unwrap_or(default)).map_err(|e| Error::Parse(format!("--{key}: {e}")))
    }

    pub fn int<T: std::str::FromStr>(&self, key: &str) -> Result<T> {
        let s = self.req(key)?;
        s.trim().parse().map_err(|_| Error::Parse(format!("--{key}: expected an integer, got '{s}'")))
    }

    pub fn int_or<T: std::str::FromStr>(&self, key: &str, default: T) -> Result<T> {
        if self.has(key) {
            self.int(key)
        } else {
            Ok(default)
        }
    }

    pub fn map(&self, key: &str) -> Result<PolyMap> {
        let s = self.req(key)?;
        let poly = RatPoly::parse(s).map_err(|e| Error::Parse(format!("--{key}: {e}")))?;
        PolyMap::new(poly)
    }

    pub fn poly(&self, key: &str) -> Result<RatPoly> {
        RatPoly::parse(self.req(key)?).map_err(|e| Error::Parse(format!("--{key}: {e}")))
    }

    pub fn real(&self, key: &str, prec: u32) -> Result<Ball> {
        parse_real(self.req(key)?, prec).map_err(|e| Error::Parse(format!("--{key}: {e}")))
    }

    pub fn real_opt(&self, key: &str, prec: u32) -> Result<Option<Ball>> {
        if self.has(key) {
            self.real(key, prec).map(Some)
        } else {
            Ok(None)
        }
    }
}

/// A real number given as a rational or decimal, `e`, `pi`, `exp(x)` or `log(x)`
/// with rational `x`.
pub fn parse_real(s: &str, prec: u32) -> std::result::Result<Ball, String> {
    let s = s.trim();
    let inner = |name: &str| s.strip_prefix(name).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
    let rat = |t: &str| parse_rational(t.trim()).map_err(|e| e.to_string());
    match s {
        "e" => return Ok(Ball::e(prec)),
        "pi" => return Ok(Ball::pi(prec)),
        _ => {}
    }
    if let Some(x) = inner("exp") {
        return Ok(Ball::from_rational(&rat(x)?, prec).exp());
    }
    if let Some(x) = inner("log") {
        return Ball::from_rational(&rat(x)?, prec).log().map_err(|e| e.to_string());
    }
    Ok(Ball::from_rational(&rat(s)?, prec))
}

/// Expands `a..b` (inclusive integers) or a comma list into values.
pub fn expand_range(spec: &str) -> Result<Vec<String>> {
    if let Some((a, b)) = spec.split_once("..") {
        let parse = |t: &str| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad range bound '{t}'")));
        let (a, b) = (parse(a)?, parse(b.trim_start_matches('='))?);
        return Ok((a..=b).map(|x| x.to_string()).collect());
    }
    Ok(spec.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect())
}

/// `key = value` lines; `#` starts a comment.
pub fn parse_config(text: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("config line {}: expected key = value", i + 1)))?;
        let v = v.trim().trim_matches('"');
        out.insert(k.trim().to_string(), v.to_string());
    }
    Ok(out)
}
