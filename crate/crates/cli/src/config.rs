use std::fmt;
use std::str::FromStr;

use kuznetsov_core::asymptotics::AnalysisParams;
use kuznetsov_core::kloosterman::CharacterModI;
use kuznetsov_core::measures::Parity;
use kuznetsov_core::numberfield::{parse_element, parse_field, parse_ideal, parse_rational, IdealLattice, LatticeTag, QuadField};
use kuznetsov_core::{Error, Result};
use serde::{Deserialize, Serialize};

/// The analysis constants `(τ, a, δ, γ)` from which `t₀`, `ρ`, `A` derive,
/// written `tau=0.3,a=3,delta=0.01,gamma=0.45`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParamSpec {
    pub tau: f64,
    pub a: f64,
    pub delta: f64,
    pub gamma: f64,
}

impl Default for ParamSpec {
    fn default() -> Self {
        ParamSpec { tau: 0.3, a: 3.0, delta: 0.01, gamma: 0.45 }
    }
}

impl ParamSpec {
    pub fn analysis(&self) -> Result<AnalysisParams> {
        AnalysisParams::derived(self.tau, self.a, self.delta, self.gamma)
    }
}

impl fmt::Display for ParamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau={},a={},delta={},gamma={}", self.tau, self.a, self.delta, self.gamma)
    }
}

impl FromStr for ParamSpec {
    type Err = Error;

    /// Any subset of the keys; missing keys keep their defaults.
    fn from_str(s: &str) -> Result<Self> {
        let mut p = ParamSpec::default();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (k, v) = item.split_once('=').ok_or_else(|| Error::InvalidInput(format!("parameter `{item}` is not key=value")))?;
            let v: f64 = v.trim().parse().map_err(|_| Error::InvalidInput(format!("parameter `{item}` has a non-numeric value")))?;
            match k.trim() {
                "tau" => p.tau = v,
                "a" => p.a = v,
                "delta" => p.delta = v,
                "gamma" => p.gamma = v,
                other => return Err(Error::InvalidInput(format!("unknown parameter `{other}` (expected tau, a, delta, gamma)"))),
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

/// Everything a run depends on besides the subcommand's own arguments.
/// Serialized as JSON; `parse(print(c)) == c`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub field: String,
    pub level: String,
    pub chi: String,
    pub params: ParamSpec,
    pub format: OutputFormat,
    pub seed: u64,
    pub threads: Option<usize>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            field: "Q(sqrt 5)".into(),
            level: "(1)".into(),
            chi: "trivial".into(),
            params: ParamSpec::default(),
            format: OutputFormat::Json,
            seed: 0,
            threads: None,
        }
    }
}

impl RunConfig {
    pub fn print(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }

    pub fn parse(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("bad run configuration: {e}")))
    }

    pub fn quad_field(&self) -> Result<QuadField> {
        parse_field(&self.field)
    }

    pub fn level_ideal(&self, field: &QuadField) -> Result<IdealLattice> {
        IdealLattice::from_generators(field, &parse_ideal(field, &self.level)?, LatticeTag::LevelIdeal)
    }

    /// `trivial`, or `g1=v1;g2=v2` assigning turns `v_j ∈ Q/Z` to unit
    /// generators of `(O/I)^*`.
    pub fn character(&self, field: &QuadField) -> Result<CharacterModI> {
        let level = self.level_ideal(field)?;
        parse_character(field, &level, &self.chi)
    }
}

pub fn parse_character(field: &QuadField, level: &IdealLattice, spec: &str) -> Result<CharacterModI> {
    if spec.trim() == "trivial" {
        return CharacterModI::trivial(level);
    }
    let gens = spec
        .split(';')
        .map(|item| {
            let (g, v) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("character entry `{item}` is not generator=turn")))?;
            Ok((parse_element(field, g)?, parse_rational(v)?))
        })
        .collect::<Result<Vec<_>>>()?;
    CharacterModI::from_generators(level, &gens)
}

/// `0,1` or `even,odd`; a single entry is repeated over all places.
pub fn parse_parities(s: &str, d: usize) -> Result<Vec<Parity>> {
    let items: Vec<Parity> = s
        .split(',')
        .map(|x| match x.trim() {
            "0" | "even" => Ok(Parity::Even),
            "1" | "odd" => Ok(Parity::Odd),
            other => Err(Error::InvalidInput(format!("parity `{other}` must be 0, 1, even or odd"))),
        })
        .collect::<Result<_>>()?;
    match items.len() {
        1 => Ok(vec![items[0]; d]),
        n if n == d => Ok(items),
        n => Err(Error::InvalidInput(format!("{n} parities for {d} places"))),
    }
}

/// `lo:hi:n`, `n ≥ 2` points spaced geometrically (`lo > 0`).
pub fn parse_grid(s: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidInput(format!("grid `{s}` must be lo:hi:n with 0 < lo < hi and n ≥ 2"));
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi > lo && hi.is_finite()) || n < 2 {
        return Err(bad());
    }
    let r = (hi / lo).ln() / (n - 1) as f64;
    Ok((0..n).map(|k| if k + 1 == n { hi } else { lo * (r * k as f64).exp() }).collect())
}

/// Comma-separated floats.
pub fn parse_floats(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| Error::InvalidInput(format!("`{x}` is not a number"))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn run_config_round_trips() {
        let c = RunConfig { seed: 7, threads: Some(3), chi: "2=1/3".into(), ..RunConfig::default() };
        assert_eq!(RunConfig::parse(&c.print()).unwrap(), c);
        let p: ParamSpec = "tau=0.35,gamma=0.4".parse().unwrap();
        assert_eq!(p.to_string().parse::<ParamSpec>().unwrap(), p);
        assert!("tau=x".parse::<ParamSpec>().is_err());
        assert!("beta=1".parse::<ParamSpec>().is_err());
    }

    #[test]
    fn grids_hit_both_ends() {
        let g = parse_grid("10:1000:5").unwrap();
        assert_eq!(g.len(), 5);
        assert_eq!(g[0], 10.0);
        assert_eq!(g[4], 1000.0);
        assert!((g[2] - 100.0).abs() < 1e-12);
        assert!(parse_grid("10:1:5").is_err());
    }

    #[test]
    fn parities_broadcast() {
        assert_eq!(parse_parities("1", 2).unwrap(), vec![Parity::Odd; 2]);
        assert!(parse_parities("0,1,0", 2).is_err());
    }
}
