//! Flat key-value experiment configuration: one human-editable TOML table,
//! no nesting, every key a scalar. Command-line flags override file keys.

use crate::error::{Error, Result};
use crate::run::{DeficitMode, DtSpec, FlowConfig, FlowKind, InitialData};
use std::path::{Path, PathBuf};

/// Overrides carried by CLI flags.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub s: Option<f64>,
    pub n: Option<usize>,
    pub dt: Option<f64>,
    pub t_end: Option<f64>,
    pub seed: Option<u64>,
    /// Output stem: writes <out>.csv and <out>.json.
    pub out: Option<PathBuf>,
}

pub fn load_config(path: &Path, overrides: &Overrides) -> Result<FlowConfig> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ConfigInvalid(format!("cannot read {}: {e}", path.display())))?;
    let mut config = parse_config(&text)?;
    apply_overrides(&mut config, overrides);
    config.validate()?;
    Ok(config)
}

pub fn apply_overrides(config: &mut FlowConfig, ov: &Overrides) {
    if let Some(s) = ov.s {
        config.s = s;
    }
    if let Some(n) = ov.n {
        config.n = n;
    }
    if let Some(dt) = ov.dt {
        config.dt = DtSpec::Fixed(dt);
    }
    if let Some(t) = ov.t_end {
        config.t_end = t;
    }
    if let Some(seed) = ov.seed {
        config.seed = seed;
    }
    if let Some(out) = &ov.out {
        config.out_csv = Some(out.with_extension("csv"));
        config.out_json = Some(out.with_extension("json"));
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::ConfigInvalid(msg.into())
}

fn as_f64(key: &str, value: &toml::Value) -> Result<f64> {
    value
        .as_float()
        .or_else(|| value.as_integer().map(|i| i as f64))
        .ok_or_else(|| bad(format!("key '{key}' must be a number")))
}

fn as_usize(key: &str, value: &toml::Value) -> Result<usize> {
    value
        .as_integer()
        .filter(|&i| i >= 0)
        .map(|i| i as usize)
        .ok_or_else(|| bad(format!("key '{key}' must be a non-negative integer")))
}

fn as_str<'a>(key: &str, value: &'a toml::Value) -> Result<&'a str> {
    value
        .as_str()
        .ok_or_else(|| bad(format!("key '{key}' must be a string")))
}

pub fn parse_config(text: &str) -> Result<FlowConfig> {
    let table: toml::Table = text
        .parse()
        .map_err(|e| bad(format!("TOML parse error: {e}")))?;
    let kind = match table.get("kind").and_then(|v| v.as_str()) {
        Some("sphere-vpmcf") => FlowKind::SphereVpmcf,
        Some("graph-mcf") => FlowKind::GraphMcf,
        Some(other) => return Err(bad(format!("unknown kind '{other}'"))),
        None => return Err(bad("missing key 'kind' (sphere-vpmcf | graph-mcf)")),
    };
    let mut config = FlowConfig::defaults(kind);

    for (key, value) in &table {
        // flat table contract: no nested tables or arrays
        if value.is_table() || value.is_array() {
            return Err(bad(format!("key '{key}': nested values are not allowed")));
        }
        match key.as_str() {
            "kind" => {}
            "n" => config.n = as_usize(key, value)?,
            "s" => config.s = as_f64(key, value)?,
            "dt" => {
                config.dt = match value {
                    toml::Value::String(s) if s == "auto" => DtSpec::Auto,
                    _ => DtSpec::Fixed(as_f64(key, value)?),
                }
            }
            "t_end" => config.t_end = as_f64(key, value)?,
            "initial" => {
                let s = value
                    .as_str()
                    .ok_or_else(|| bad("initial must be a string"))?;
                config.initial = parse_initial(s)?;
            }
            "cadence" => config.cadence = as_usize(key, value)?,
            "seed" => config.seed = as_usize(key, value)? as u64,
            "volume_reproject" => {
                config.volume_reproject = value
                    .as_bool()
                    .ok_or_else(|| bad("volume_reproject must be a bool"))?
            }
            "deficit_mode" => {
                config.deficit_mode = match value.as_str() {
                    Some("direct") => DeficitMode::Direct,
                    Some("dissipation-proxy") => DeficitMode::DissipationProxy,
                    _ => return Err(bad("deficit_mode must be 'direct' or 'dissipation-proxy'")),
                }
            }
            "deficit_node_cap" => config.deficit_node_cap = as_usize(key, value)?,
            "mode_amplitudes" => {
                let s = value
                    .as_str()
                    .ok_or_else(|| bad("mode_amplitudes must be a comma-separated string"))?;
                config.mode_amplitudes = s
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<usize>()
                            .map_err(|_| bad(format!("bad mode index '{p}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
            }
            "out_csv" => config.out_csv = Some(PathBuf::from(as_str(key, value)?)),
            "out_json" => config.out_json = Some(PathBuf::from(as_str(key, value)?)),
            other => return Err(bad(format!("unknown key '{other}'"))),
        }
    }
    Ok(config)
}

/// Initial-data grammar:
///   preset:<name>
///   fourier:c<k>=<amp>,s<k>=<amp>,...
///   random:kmax=<k>,cap=<amp>
pub fn parse_initial(spec: &str) -> Result<InitialData> {
    let (tag, rest) = spec
        .split_once(':')
        .ok_or_else(|| bad(format!("initial '{spec}' must be tag:args")))?;
    match tag {
        "preset" => Ok(InitialData::Preset(rest.to_string())),
        "fourier" => {
            let mut cos = Vec::new();
            let mut sin = Vec::new();
            for part in rest.split(',') {
                let part = part.trim();
                if part.is_empty() {
                    continue;
                }
                let (lhs, rhs) = part
                    .split_once('=')
                    .ok_or_else(|| bad(format!("bad fourier term '{part}'")))?;
                let amp: f64 = rhs
                    .trim()
                    .parse()
                    .map_err(|_| bad(format!("bad amplitude '{rhs}'")))?;
                let (which, kstr) = lhs.trim().split_at(1);
                let k: usize = kstr
                    .parse()
                    .map_err(|_| bad(format!("bad mode '{lhs}'")))?;
                match which {
                    "c" => cos.push((k, amp)),
                    "s" => sin.push((k, amp)),
                    _ => return Err(bad(format!("fourier terms start with c or s: '{lhs}'"))),
                }
            }
            Ok(InitialData::Fourier { cos, sin })
        }
        "random" => {
            let mut kmax = None;
            let mut cap = None;
            for part in rest.split(',') {
                let (lhs, rhs) = part
                    .trim()
                    .split_once('=')
                    .ok_or_else(|| bad(format!("bad random arg '{part}'")))?;
                match lhs.trim() {
                    "kmax" => kmax = Some(rhs.trim().parse().map_err(|_| bad("bad kmax"))?),
                    "cap" => cap = Some(rhs.trim().parse().map_err(|_| bad("bad cap"))?),
                    other => return Err(bad(format!("unknown random arg '{other}'"))),
                }
            }
            Ok(InitialData::RandomBandLimited {
                kmax: kmax.ok_or_else(|| bad("random needs kmax"))?,
                cap: cap.ok_or_else(|| bad("random needs cap"))?,
            })
        }
        other => Err(bad(format!("unknown initial tag '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_config() {
        let text = r#"
kind = "sphere-vpmcf"
n = 128
s = 0.5
dt = "auto"
t_end = 0.25
initial = "preset:sphere-cos2"
cadence = 4
seed = 7
volume_reproject = false
deficit_mode = "direct"
mode_amplitudes = "1,2,3"
"#;
        let c = parse_config(text).unwrap();
        assert_eq!(c.n, 128);
        assert_eq!(c.dt, DtSpec::Auto);
        assert_eq!(c.mode_amplitudes, vec![1, 2, 3]);
        c.validate().unwrap();
    }

    #[test]
    fn rejects_invalid_order() {
        let text = "kind = \"sphere-vpmcf\"\ns = 1.5\n";
        let c = parse_config(text).unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn rejects_nested_and_unknown() {
        assert!(parse_config("kind = \"sphere-vpmcf\"\n[nested]\nx = 1\n").is_err());
        assert!(parse_config("kind = \"sphere-vpmcf\"\nbogus_key = 3\n").is_err());
    }

    #[test]
    fn parses_initial_grammar() {
        assert_eq!(
            parse_initial("preset:sphere-cos2").unwrap(),
            InitialData::Preset("sphere-cos2".into())
        );
        match parse_initial("fourier:c2=0.05,s3=0.03").unwrap() {
            InitialData::Fourier { cos, sin } => {
                assert_eq!(cos, vec![(2, 0.05)]);
                assert_eq!(sin, vec![(3, 0.03)]);
            }
            _ => panic!(),
        }
        match parse_initial("random:kmax=8,cap=0.03").unwrap() {
            InitialData::RandomBandLimited { kmax, cap } => {
                assert_eq!(kmax, 8);
                assert!((cap - 0.03).abs() < 1e-15);
            }
            _ => panic!(),
        }
        assert!(parse_initial("nonsense").is_err());
    }

    #[test]
    fn overrides_apply() {
        let mut c = FlowConfig::defaults(FlowKind::SphereVpmcf);
        apply_overrides(
            &mut c,
            &Overrides {
                s: Some(0.7),
                n: Some(64),
                dt: Some(1e-4),
                t_end: Some(0.1),
                seed: Some(9),
                out: Some(PathBuf::from("runs/exp1")),
            },
        );
        assert_eq!(c.s, 0.7);
        assert_eq!(c.n, 64);
        assert_eq!(c.dt, DtSpec::Fixed(1e-4));
        assert_eq!(c.out_csv.unwrap(), PathBuf::from("runs/exp1.csv"));
    }
}
