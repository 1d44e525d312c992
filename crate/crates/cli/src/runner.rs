//! Experiment implementations behind the CLI subcommands.

use crate::csvfmt::{fmt_f64, fmt_opt, mean_stderr, CsvFile};
use crate::registry::GameRef;
use crate::AppError;
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use zerosum::cfr::{run_cfr, CfrConfig};
use zerosum::gda::{check_step_size, run_solver, Algorithm, References, SolverConfig, Trajectory};
use zerosum::perturb::{
    exact_minimax, mu_sweep_with_budget, solve_perturbed, PerturbationConfig, PerturbationMode,
};
use zerosum::rational::{critical_mu_x_rational, critical_mu_y_rational, exact_minimax_rational};
use zerosum::{Error, MatrixGame, StrategyProfile};

/// Which player's critical strength to report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Prints the critical symmetric perturbation strength.
pub fn critical_mu(game: &GameRef, side: Side, rational: bool) -> Result<(), AppError> {
    let (rational_game, float_game) = game.as_matrix()?;
    if rational {
        let eq = exact_minimax_rational(rational_game).map_err(AppError::from_solver)?;
        let value = match side {
            Side::X => critical_mu_x_rational(rational_game, &eq),
            Side::Y => critical_mu_y_rational(rational_game, &eq),
        }
        .map_err(AppError::from_solver)?;
        match value {
            Some(v) => println!("{v}"),
            None => println!("none"),
        }
    } else {
        let eq = exact_minimax(float_game).map_err(AppError::from_solver)?;
        let value = match side {
            Side::X => zerosum::perturb::critical_mu_x(float_game, &eq),
            Side::Y => zerosum::perturb::critical_mu_y(float_game, &eq),
        }
        .map_err(AppError::from_solver)?;
        match value {
            Some(v) => println!("{v}"),
            None => println!("none"),
        }
    }
    Ok(())
}

pub struct MuSweepSpec {
    pub mode: PerturbationMode,
    pub mus: Vec<f64>,
    pub tol: f64,
    pub oracle_budget: u64,
    pub out: PathBuf,
}

/// Writes `mu,exploitability,converged`; a non-converged entry fails the
/// run with the convergence exit code after the CSV is written.
pub fn mu_sweep(game: &GameRef, spec: &MuSweepSpec) -> Result<(), AppError> {
    let (_, float_game) = game.as_matrix()?;
    let points = mu_sweep_with_budget(
        float_game,
        spec.mode,
        &spec.mus,
        spec.tol,
        spec.oracle_budget,
    )
    .map_err(AppError::from_solver)?;

    let mut csv = CsvFile::new("mu,exploitability,converged");
    for p in &points {
        csv.row(&[
            fmt_f64(p.mu),
            fmt_f64(p.exploitability),
            p.converged.to_string(),
        ]);
    }
    csv.write_to(&spec.out)?;

    let failed: Vec<f64> = points
        .iter()
        .filter(|p| !p.converged)
        .map(|p| p.mu)
        .collect();
    if !failed.is_empty() {
        return Err(AppError::convergence(format!(
            "oracle did not converge at mu = {failed:?}"
        )));
    }
    Ok(())
}

pub struct MatrixRunSpec {
    pub algorithm: Algorithm,
    pub eta: f64,
    pub mu: f64,
    pub tsigma: u64,
    pub iters: u64,
    pub record_every: u64,
    pub seeds: Vec<u64>,
    pub tol: f64,
    pub out: PathBuf,
}

fn solver_config(spec: &MatrixRunSpec, seed: u64) -> SolverConfig {
    SolverConfig::new(spec.algorithm, spec.eta, spec.mu)
        .with_anchor_period(spec.tsigma)
        .with_max_iters(spec.iters)
        .with_record_every(spec.record_every)
        .with_seed(seed)
}

/// Reference points for distance columns: the exact minimax strategy, and
/// the perturbed equilibrium for the statically perturbed algorithms.
fn references(game: &MatrixGame, spec: &MatrixRunSpec) -> References {
    let x_star = exact_minimax(game).ok().map(|eq| eq.x_star);
    let perturbation = match spec.algorithm {
        Algorithm::SympGda if spec.mu > 0.0 => Some(PerturbationConfig::symmetric(spec.mu)),
        Algorithm::AsympGda if spec.mu > 0.0 => Some(PerturbationConfig::asymmetric_x(spec.mu)),
        _ => None,
    };
    let perturbed = perturbation.and_then(|cfg| match solve_perturbed(game, &cfg, spec.tol) {
        Ok(eq) => Some(StrategyProfile::new(eq.x_star, eq.y_star)),
        Err(e) => {
            eprintln!("warning: perturbed-equilibrium reference unavailable: {e}");
            None
        }
    });
    References { x_star, perturbed }
}

fn warn_on_large_step(game: &MatrixGame, mu: f64, eta: f64) {
    if mu > 0.0 {
        let (valid, bound) = check_step_size(game, mu, eta);
        if !valid {
            eprintln!(
                "warning: eta = {eta} exceeds the provable step bound {bound:.6} for mu = {mu}; running anyway"
            );
        }
    }
}

fn run_seeds(
    game: &MatrixGame,
    spec: &MatrixRunSpec,
    refs: &References,
) -> Result<Vec<(u64, Trajectory)>, AppError> {
    spec.seeds
        .par_iter()
        .map(|&seed| {
            run_solver(game, &solver_config(spec, seed), None, refs)
                .map(|traj| (seed, traj))
                .map_err(AppError::from_solver)
        })
        .collect()
}

/// Multi-seed dynamics run: per-seed series in the schema
/// `t,seed,nashconv,dist_x_star,dist_perturbed`, plus a `.summary.csv`
/// companion with per-t mean and standard-error columns.
pub fn matrix_run(game: &GameRef, spec: &MatrixRunSpec) -> Result<(), AppError> {
    let (_, float_game) = game.as_matrix()?;
    warn_on_large_step(float_game, spec.mu, spec.eta);
    let refs = references(float_game, spec);
    let runs = run_seeds(float_game, spec, &refs)?;
    let aborted = runs.iter().any(|(_, t)| !t.is_complete());

    let mut header = "t,seed,nashconv,dist_x_star,dist_perturbed".to_string();
    if aborted {
        header.push_str(",status");
    }
    let mut csv = CsvFile::new(&header);
    for (seed, traj) in &runs {
        let status = match traj.aborted_at() {
            Some(t) => format!("aborted@{t}"),
            None => "ok".to_string(),
        };
        for rec in traj.records() {
            let mut fields = vec![
                rec.t.to_string(),
                seed.to_string(),
                fmt_f64(rec.nash_conv),
                fmt_opt(rec.dist_to_x_star),
                fmt_opt(rec.dist_to_perturbed),
            ];
            if aborted {
                fields.push(status.clone());
            }
            csv.row(&fields);
        }
    }
    csv.write_to(&spec.out)?;

    write_summary(&runs, &summary_path(&spec.out))?;

    if aborted {
        return Err(AppError::convergence(
            "one or more runs aborted on non-finite iterates; partial CSV flagged",
        ));
    }
    Ok(())
}

pub fn summary_path(out: &Path) -> PathBuf {
    let mut name = out.file_stem().unwrap_or_default().to_os_string();
    name.push(".summary.csv");
    out.with_file_name(name)
}

/// Per-t aggregates over seeds, restricted to timestamps present in every
/// run (aborted prefixes shorten the grid).
fn write_summary(runs: &[(u64, Trajectory)], path: &Path) -> Result<(), AppError> {
    let common_len = runs
        .iter()
        .map(|(_, t)| t.records().len())
        .min()
        .unwrap_or(0);
    let mut csv = CsvFile::new(
        "t,nashconv_mean,nashconv_stderr,dist_x_star_mean,dist_x_star_stderr,dist_perturbed_mean,dist_perturbed_stderr",
    );
    for i in 0..common_len {
        let t = runs[0].1.records()[i].t;
        let collect = |f: &dyn Fn(&zerosum::gda::TrajectoryRecord) -> Option<f64>| {
            runs.iter()
                .map(|(_, traj)| f(&traj.records()[i]))
                .collect::<Option<Vec<f64>>>()
        };
        let nash = collect(&|r| Some(r.nash_conv)).expect("nash_conv always recorded");
        let (nc_mean, nc_se) = mean_stderr(&nash);
        let dist_star = collect(&|r| r.dist_to_x_star).map(|v| mean_stderr(&v));
        let dist_pert = collect(&|r| r.dist_to_perturbed).map(|v| mean_stderr(&v));
        csv.row(&[
            t.to_string(),
            fmt_f64(nc_mean),
            fmt_f64(nc_se),
            fmt_opt(dist_star.map(|d| d.0)),
            fmt_opt(dist_star.map(|d| d.1)),
            fmt_opt(dist_pert.map(|d| d.0)),
            fmt_opt(dist_pert.map(|d| d.1)),
        ]);
    }
    csv.write_to(path)
}

/// Single-seed iterate trajectory: `t,x1..xm,y1..yn`.
pub fn matrix_trajectory(game: &GameRef, spec: &MatrixRunSpec) -> Result<(), AppError> {
    let (_, float_game) = game.as_matrix()?;
    warn_on_large_step(float_game, spec.mu, spec.eta);
    let seed = *spec
        .seeds
        .first()
        .ok_or_else(|| AppError::config("trajectory needs one seed"))?;
    let traj = run_solver(
        float_game,
        &solver_config(spec, seed),
        None,
        &References::default(),
    )
    .map_err(AppError::from_solver)?;

    let mut header = String::from("t");
    for i in 1..=float_game.rows() {
        header.push_str(&format!(",x{i}"));
    }
    for j in 1..=float_game.cols() {
        header.push_str(&format!(",y{j}"));
    }
    let aborted = !traj.is_complete();
    if aborted {
        header.push_str(",status");
    }
    let mut csv = CsvFile::new(&header);
    let status = match traj.aborted_at() {
        Some(t) => format!("aborted@{t}"),
        None => "ok".to_string(),
    };
    for rec in traj.records() {
        let mut fields = vec![rec.t.to_string()];
        fields.extend(rec.x.as_slice().iter().copied().map(fmt_f64));
        fields.extend(rec.y.as_slice().iter().copied().map(fmt_f64));
        if aborted {
            fields.push(status.clone());
        }
        csv.row(&fields);
    }
    csv.write_to(&spec.out)?;
    if aborted {
        return Err(AppError::convergence(
            "run aborted on non-finite iterates; partial CSV flagged",
        ));
    }
    Ok(())
}

pub struct EfgRunSpec {
    pub config: CfrConfig,
    pub out: PathBuf,
}

/// Regret-minimization run: `t,nashconv_last,nashconv_avg`.
pub fn efg_run(game: &GameRef, spec: &EfgRunSpec) -> Result<(), AppError> {
    let game = game.as_efg()?;
    let run = run_cfr(game, &spec.config).map_err(AppError::from_solver)?;
    let mut csv = CsvFile::new("t,nashconv_last,nashconv_avg");
    for eval in &run.evals {
        csv.row(&[
            eval.t.to_string(),
            fmt_f64(eval.nashconv_last),
            fmt_f64(eval.nashconv_avg),
        ]);
    }
    csv.write_to(&spec.out)
}

impl AppError {
    /// Solver-side failures map onto the exit-code contract: convergence
    /// and numeric failures exit with 3, everything else is a usage error.
    pub fn from_solver(e: Error) -> Self {
        match e {
            Error::ConvergenceFailure { .. } | Error::NonFinite { .. } => {
                AppError::convergence(e.to_string())
            }
            other => AppError::config(other.to_string()),
        }
    }
}
