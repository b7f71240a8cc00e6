use std::fs;
use std::path::Path;

use serde::Deserialize;

use crate::args::{CommonArgs, SimArgs};
use crate::CliError;

/// Contents of a `--config` file; keys mirror the flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub a: Option<f64>,
    pub c: Option<f64>,
    pub b: Option<f64>,
    pub d: Option<f64>,
    pub e: Option<f64>,
    pub n: Option<usize>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    #[serde(alias = "t-end")]
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
}

impl FileConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|err| CliError::Usage(format!("--config {}: {err}", path.display())))?;
        serde_json::from_str(&text).map_err(|err| CliError::Usage(format!("--config {}: {err}", path.display())))
    }
}

/// Parameters after merging flags over the config file.
#[derive(Debug, Clone, Copy)]
pub struct Resolved {
    pub a: f64,
    pub c: f64,
    pub b: f64,
    pub d: f64,
    pub e: f64,
    pub n: usize,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub t_end: Option<f64>,
    pub dt: Option<f64>,
}

fn required<T>(value: Option<T>, flag: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("missing required parameter --{flag} (flag or config key)")))
}

/// Merges flags over the config file. `default_n` applies when neither
/// gives `n`.
pub fn resolve(common: &CommonArgs, sim: Option<&SimArgs>, default_n: Option<usize>) -> Result<Resolved, CliError> {
    let file = match &common.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let a = required(common.a.or(file.a), "a")?;
    let c = required(common.c.or(file.c), "c")?;
    let d = required(common.d.or(file.d), "d")?;
    let e = required(common.e.or(file.e), "e")?;
    let n = required(common.n.or(file.n).or(default_n), "n")?;
    let b = common.b.or(file.b).unwrap_or(a + c);
    let alpha = common.alpha.or(file.alpha);
    let beta = common.beta.or(file.beta);
    if alpha.is_some() != beta.is_some() {
        return Err(CliError::Usage("--alpha and --beta must be given together".into()));
    }
    Ok(Resolved {
        a,
        c,
        b,
        d,
        e,
        n,
        alpha,
        beta,
        t_end: sim.and_then(|s| s.t_end).or(file.t_end),
        dt: sim.and_then(|s| s.dt).or(file.dt),
    })
}
