//! Command-line front end for the zerosum solvers.
//!
//! Subcommands cover the experiment families: `critical-mu` (the unique
//! strength at which a symmetrically perturbed game can keep its original
//! minimax strategy), `mu-sweep` (proximity curves over the perturbation
//! strength), `matrix-run` / `matrix-trajectory` (gradient dynamics), and
//! `efg-run` (regret minimization on extensive-form games). Every flag can
//! also come from a TOML config file; flags win.
//!
//! Exit codes: 0 success, 2 configuration error, 3 convergence failure.

use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use zerosum::cfr::{CfrConfig, CfrVariant};
use zerosum::efg::Player;
use zerosum::gda::Algorithm;
use zerosum::perturb::PerturbationMode;
use zerosum_cli::config::{parse_mus, parse_seeds, pick, pick_required, FileConfig};
use zerosum_cli::runner::{self, EfgRunSpec, MatrixRunSpec, MuSweepSpec, Side};
use zerosum_cli::{registry, AppError};

#[derive(Parser)]
#[command(
    name = "zerosum",
    version,
    about = "Equilibrium solvers for two-player zero-sum games via perturbed dynamics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Critical symmetric perturbation strength of a matrix game.
    CriticalMu(CriticalMuArgs),
    /// Exploitability of the perturbed minimax strategy over a strength grid.
    MuSweep(MuSweepArgs),
    /// Multi-seed gradient-dynamics runs (per-seed CSV plus mean/stderr summary).
    MatrixRun(DynamicsArgs),
    /// Single-seed iterate trajectory of the gradient dynamics.
    MatrixTrajectory(DynamicsArgs),
    /// Regret-minimization run on an extensive-form game.
    EfgRun(EfgArgs),
}

#[derive(Args)]
struct CriticalMuArgs {
    /// Registry name (bmp, brps, mne) or inline matrix.
    game: Option<String>,
    /// Evaluate exactly over rationals instead of floats.
    #[arg(long)]
    rational: bool,
    /// Report the minimizing (x) or maximizing (y) player's threshold.
    #[arg(long, default_value = "x")]
    side: String,
    /// TOML config file supplying defaults for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct MuSweepArgs {
    /// Registry name or inline matrix.
    #[arg(long)]
    game: Option<String>,
    /// Perturbation mode: symmetric, asymmetric-x, or asymmetric-y.
    #[arg(long)]
    mode: Option<String>,
    /// Strength grid: a value, a comma list, or start:stop:step.
    #[arg(long)]
    mus: Option<String>,
    /// Oracle residual tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Iteration budget per oracle solve.
    #[arg(long)]
    oracle_budget: Option<u64>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file supplying defaults for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct DynamicsArgs {
    /// Registry name or inline matrix.
    #[arg(long)]
    game: Option<String>,
    /// gda, symp-gda, asymp-gda, ogda, ada-asymp-gda, or ada-symp-gda.
    #[arg(long)]
    algo: Option<String>,
    /// Perturbation strength.
    #[arg(long)]
    mu: Option<f64>,
    /// Learning rate.
    #[arg(long)]
    eta: Option<f64>,
    /// Total iterations.
    #[arg(long)]
    iters: Option<u64>,
    /// Seeds: a value, a comma list, or start..end.
    #[arg(long)]
    seeds: Option<String>,
    /// Anchor reset period for the anchored algorithms.
    #[arg(long)]
    tsigma: Option<u64>,
    /// Record every this many iterations.
    #[arg(long)]
    record_every: Option<u64>,
    /// Oracle tolerance for the reference equilibria.
    #[arg(long)]
    tol: Option<f64>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file supplying defaults for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args)]
struct EfgArgs {
    /// Extensive-form registry name (kuhn).
    #[arg(long)]
    game: Option<String>,
    /// cfr, cfr-plus, symp-cfr-plus, asymp-cfr-plus, ada-asymp-cfr-plus,
    /// or ada-symp-cfr-plus.
    #[arg(long)]
    algo: Option<String>,
    /// Perturbation strength (defaults per variant).
    #[arg(long)]
    mu: Option<f64>,
    /// Total iterations.
    #[arg(long)]
    iters: Option<u64>,
    /// Evaluate NashConv every this many iterations.
    #[arg(long)]
    eval_every: Option<u64>,
    /// Anchor reset period for the anchored variants.
    #[arg(long)]
    tsigma: Option<u64>,
    /// Which player carries the asymmetric perturbation: x or y.
    #[arg(long)]
    perturbed_player: Option<String>,
    /// Output CSV path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// TOML config file supplying defaults for any flag.
    #[arg(long)]
    config: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message());
            ExitCode::from(err.exit_code())
        }
    }
}

fn dispatch(command: Command) -> Result<(), AppError> {
    match command {
        Command::CriticalMu(args) => {
            let file = FileConfig::load(args.config.as_deref())?;
            let game = pick_required(args.game, file.game, "--game")?;
            let side = match pick(Some(args.side), file.side, "x".into()).as_str() {
                "x" => Side::X,
                "y" => Side::Y,
                other => return Err(AppError::config(format!("bad --side {other:?}"))),
            };
            runner::critical_mu(&registry::lookup(&game)?, side, args.rational)
        }
        Command::MuSweep(args) => {
            let file = FileConfig::load(args.config.as_deref())?;
            let game = pick_required(args.game, file.game, "--game")?;
            let mode = parse_mode(&pick_required(args.mode, file.mode, "--mode")?)?;
            let mus = parse_mus(&pick_required(args.mus, file.mus, "--mus")?)?;
            let spec = MuSweepSpec {
                mode,
                mus,
                tol: pick(args.tol, file.tol, 1e-10),
                oracle_budget: pick(args.oracle_budget, None, 100_000_000),
                out: pick_required(args.out, file.out, "--out")?,
            };
            runner::mu_sweep(&registry::lookup(&game)?, &spec)
        }
        Command::MatrixRun(args) => {
            let (game, spec) = dynamics_spec(args, "0..100")?;
            runner::matrix_run(&registry::lookup(&game)?, &spec)
        }
        Command::MatrixTrajectory(args) => {
            let (game, spec) = dynamics_spec(args, "0")?;
            runner::matrix_trajectory(&registry::lookup(&game)?, &spec)
        }
        Command::EfgRun(args) => {
            let file = FileConfig::load(args.config.as_deref())?;
            let game = pick_required(args.game, file.game, "--game")?;
            let variant = parse_cfr_variant(&pick_required(args.algo, file.algo, "--algo")?)?;
            let mut config = CfrConfig::new(variant)
                .with_iterations(pick(args.iters, file.iters, 10_000))
                .with_eval_every(pick(args.eval_every, file.eval_every, 100))
                .with_anchor_period(pick(args.tsigma, file.tsigma, 2_500));
            if let Some(mu) = args.mu.or(file.mu) {
                config = config.with_mu(mu);
            }
            if let Some(player) = args.perturbed_player {
                config = config.with_perturbed_player(match player.as_str() {
                    "x" => Player::X,
                    "y" => Player::Y,
                    other => {
                        return Err(AppError::config(format!(
                            "bad --perturbed-player {other:?}"
                        )))
                    }
                });
            }
            let spec = EfgRunSpec {
                config,
                out: pick_required(args.out, file.out, "--out")?,
            };
            runner::efg_run(&registry::lookup(&game)?, &spec)
        }
    }
}

fn dynamics_spec(
    args: DynamicsArgs,
    default_seeds: &str,
) -> Result<(String, MatrixRunSpec), AppError> {
    let file = FileConfig::load(args.config.as_deref())?;
    let game = pick_required(args.game, file.game, "--game")?;
    let algorithm = parse_algorithm(&pick_required(args.algo, file.algo, "--algo")?)?;
    let default_mu = match algorithm {
        Algorithm::Gda | Algorithm::Ogda => 0.0,
        Algorithm::SympGda | Algorithm::AsympGda => 1.0,
        Algorithm::AdaAsympGda | Algorithm::AdaSympGda => 5.0,
    };
    let seeds = parse_seeds(&pick(args.seeds, file.seeds, default_seeds.to_string()))?;
    let spec = MatrixRunSpec {
        algorithm,
        eta: pick(args.eta, file.eta, 0.01),
        mu: pick(args.mu, file.mu, default_mu),
        tsigma: pick(args.tsigma, file.tsigma, 10_000),
        iters: pick(args.iters, file.iters, 100_000),
        record_every: pick(args.record_every, file.record_every, 100),
        seeds,
        tol: pick(args.tol, file.tol, 1e-10),
        out: pick_required(args.out, file.out, "--out")?,
    };
    Ok((game, spec))
}

fn parse_algorithm(name: &str) -> Result<Algorithm, AppError> {
    Ok(match name {
        "gda" => Algorithm::Gda,
        "symp-gda" => Algorithm::SympGda,
        "asymp-gda" => Algorithm::AsympGda,
        "ogda" => Algorithm::Ogda,
        "ada-asymp-gda" => Algorithm::AdaAsympGda,
        "ada-symp-gda" => Algorithm::AdaSympGda,
        other => return Err(AppError::config(format!("unknown algorithm {other:?}"))),
    })
}

fn parse_cfr_variant(name: &str) -> Result<CfrVariant, AppError> {
    Ok(match name {
        "cfr" => CfrVariant::Cfr,
        "cfr-plus" => CfrVariant::CfrPlus,
        "symp-cfr-plus" => CfrVariant::SympCfrPlus,
        "asymp-cfr-plus" => CfrVariant::AsympCfrPlus,
        "ada-asymp-cfr-plus" => CfrVariant::AdaAsympCfrPlus,
        "ada-symp-cfr-plus" => CfrVariant::AdaSympCfrPlus,
        other => return Err(AppError::config(format!("unknown variant {other:?}"))),
    })
}

fn parse_mode(name: &str) -> Result<PerturbationMode, AppError> {
    Ok(match name {
        "symmetric" => PerturbationMode::Symmetric,
        "asymmetric-x" => PerturbationMode::AsymmetricX,
        "asymmetric-y" => PerturbationMode::AsymmetricY,
        other => {
            return Err(AppError::config(format!(
                "unknown mode {other:?}; expected symmetric, asymmetric-x, or asymmetric-y"
            )))
        }
    })
}
