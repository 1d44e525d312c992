//! Optional TOML config file; command-line flags override its values.

use crate::AppError;
use serde::Deserialize;
use std::path::{Path, PathBuf};

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub game: Option<String>,
    pub algo: Option<String>,
    pub mode: Option<String>,
    pub side: Option<String>,
    pub mu: Option<f64>,
    pub eta: Option<f64>,
    pub iters: Option<u64>,
    pub seeds: Option<String>,
    pub tsigma: Option<u64>,
    pub eval_every: Option<u64>,
    pub record_every: Option<u64>,
    pub mus: Option<String>,
    pub tol: Option<f64>,
    pub out: Option<PathBuf>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, AppError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::config(format!("cannot read {}: {e}", path.display())))?;
        toml::from_str(&text)
            .map_err(|e| AppError::config(format!("bad config {}: {e}", path.display())))
    }
}

/// Flag wins over config; otherwise the default.
pub fn pick<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

/// Flag wins over config; the value is mandatory.
pub fn pick_required<T>(flag: Option<T>, file: Option<T>, what: &str) -> Result<T, AppError> {
    flag.or(file)
        .ok_or_else(|| AppError::config(format!("missing required value for {what}")))
}

/// Parses a seed specification: `7`, `1,2,3`, or `0..100` (end exclusive).
pub fn parse_seeds(spec: &str) -> Result<Vec<u64>, AppError> {
    let bad = |detail: &str| AppError::config(format!("bad seed spec {spec:?}: {detail}"));
    let spec = spec.trim();
    if let Some((start, end)) = spec.split_once("..") {
        let start: u64 = start.parse().map_err(|_| bad("range start"))?;
        let end: u64 = end.parse().map_err(|_| bad("range end"))?;
        if end <= start {
            return Err(bad("empty range"));
        }
        return Ok((start..end).collect());
    }
    let seeds: Result<Vec<u64>, _> = spec.split(',').map(|f| f.trim().parse()).collect();
    let seeds = seeds.map_err(|_| bad("expected integers"))?;
    if seeds.is_empty() {
        return Err(bad("no seeds"));
    }
    Ok(seeds)
}

/// Parses a strength grid: `1.5`, `0.5,1,2`, or `0.1:5.0:0.1`
/// (start:stop:step, stop inclusive).
pub fn parse_mus(spec: &str) -> Result<Vec<f64>, AppError> {
    let bad = |detail: &str| AppError::config(format!("bad strength grid {spec:?}: {detail}"));
    let spec = spec.trim();
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        [_] => {
            let values: Result<Vec<f64>, _> = spec.split(',').map(|f| f.trim().parse()).collect();
            values.map_err(|_| bad("expected numbers"))
        }
        [start, stop, step] => {
            let start: f64 = start.parse().map_err(|_| bad("start"))?;
            let stop: f64 = stop.parse().map_err(|_| bad("stop"))?;
            let step: f64 = step.parse().map_err(|_| bad("step"))?;
            if !step.is_finite() || step <= 0.0 || stop < start {
                return Err(bad("need step > 0 and stop >= start"));
            }
            let mut values = Vec::new();
            let mut i = 0u64;
            loop {
                let mu = start + i as f64 * step;
                if mu > stop + 1e-9 * step {
                    break;
                }
                values.push(mu);
                i += 1;
            }
            Ok(values)
        }
        _ => Err(bad("expected value, list, or start:stop:step")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seed_specs() {
        assert_eq!(parse_seeds("7").unwrap(), vec![7]);
        assert_eq!(parse_seeds("1,2,3").unwrap(), vec![1, 2, 3]);
        assert_eq!(parse_seeds("0..4").unwrap(), vec![0, 1, 2, 3]);
        assert!(parse_seeds("5..5").is_err());
        assert!(parse_seeds("x").is_err());
    }

    #[test]
    fn mu_grids() {
        assert_eq!(parse_mus("1.5").unwrap(), vec![1.5]);
        assert_eq!(parse_mus("0.5,1,2").unwrap(), vec![0.5, 1.0, 2.0]);
        let grid = parse_mus("0.1:0.5:0.1").unwrap();
        assert_eq!(grid.len(), 5);
        assert!((grid[4] - 0.5).abs() < 1e-12);
        assert!(parse_mus("1:0:0.1").is_err());
    }
}
