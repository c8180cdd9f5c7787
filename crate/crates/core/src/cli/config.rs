//! Flat `key = value` experiment manifests and the list syntaxes shared with
//! the command-line flags.

use std::collections::BTreeMap;
use std::path::Path;

use crate::{Error, ParseError, Result};

/// Keys a manifest may set. Anything else is rejected before work starts.
pub const CONFIG_KEYS: [&str; 18] = [
    "experiment_id",
    "gate_set",
    "lengths",
    "seeds",
    "shots",
    "seed",
    "eps1",
    "eps2",
    "p_meas",
    "p_prep",
    "theta",
    "thetas",
    "xi",
    "analytic",
    "output",
    "sidecar",
    "coupling",
    "L",
];

/// Parsed manifest: key to raw value, in key order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    /// Blank lines and `#` comments are skipped; `key = value` or
    /// `key: value` otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| ParseError::new(i + 1, format!("expected `key = value`, got `{line}`")))?;
            let key = key.trim();
            if !CONFIG_KEYS.contains(&key) {
                return Err(ParseError::new(i + 1, format!("unknown config key `{key}`")).into());
            }
            if entries.insert(key.to_string(), value.trim().to_string()).is_some() {
                return Err(ParseError::new(i + 1, format!("key `{key}` set twice")).into());
            }
        }
        Ok(Self { entries })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    /// Typed lookup; `None` when absent.
    pub fn parsed<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>>
    where
        T::Err: std::fmt::Display,
    {
        self.get(key)
            .map(|v| {
                v.parse()
                    .map_err(|e| Error::InvalidArgument(format!("config key `{key}`: {e}")))
            })
            .transpose()
    }
}

/// `1,2,5`, `1..100` (inclusive) or any comma-separated mix.
pub fn parse_lengths(text: &str) -> Result<Vec<u32>> {
    let bad = || Error::InvalidArgument(format!("bad length list `{text}`"));
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((a, b)) => {
                let a: u32 = a.trim().parse().map_err(|_| bad())?;
                let b: u32 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => out.push(part.parse().map_err(|_| bad())?),
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// One angle: a decimal, or `[k]pi[/m]` such as `pi/8` or `3pi/4`.
pub fn parse_angle(text: &str) -> Result<f64> {
    let bad = || Error::InvalidArgument(format!("bad angle `{text}`"));
    let t = text.trim().to_ascii_lowercase();
    let Some(pos) = t.find("pi") else {
        let v: f64 = t.parse().map_err(|_| bad())?;
        return if v.is_finite() { Ok(v) } else { Err(bad()) };
    };
    let coeff = match t[..pos].trim().trim_end_matches('*') {
        "" => 1.0,
        "-" => -1.0,
        c => c.parse::<f64>().map_err(|_| bad())?,
    };
    let rest = t[pos + 2..].trim();
    let div = match rest.strip_prefix('/') {
        Some(d) => d.trim().parse::<f64>().map_err(|_| bad())?,
        None if rest.is_empty() => 1.0,
        None => return Err(bad()),
    };
    if div == 0.0 {
        return Err(bad());
    }
    Ok(coeff * std::f64::consts::PI / div)
}

pub fn parse_angles(text: &str) -> Result<Vec<f64>> {
    text.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(parse_angle)
        .collect()
}
