//! Exact rational evaluation for games with rational payoffs.
//!
//! The critical perturbation strength is an equality claim, so for matrices
//! given as integer fractions the support-enumeration oracle and the
//! critical-strength formulas are mirrored here over arbitrary-precision
//! rationals. Comparisons are exact: no tolerances appear in this module.

use crate::{Error, MatrixGame, Result};
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational scalar.
pub type Rat = BigRational;

fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// A payoff matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for {rows}x{cols}",
                rows * cols
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    /// Builds from integer fractions `(numerator, denominator)` in row-major
    /// nested form.
    pub fn from_fractions(rows: &[Vec<(i64, i64)>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        if rows.iter().flatten().any(|(_, d)| *d == 0) {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let entries = rows.iter().flatten().map(|&(n, d)| rat(n, d)).collect();
        Self::new(m, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rat {
        &self.entries[i * self.cols + j]
    }

    /// Rounds every entry to the nearest f64 and builds a floating game.
    pub fn to_matrix_game(&self) -> Result<MatrixGame> {
        let entries = self
            .entries
            .iter()
            .map(|r| {
                r.to_f64()
                    .ok_or_else(|| Error::InvalidInput("entry out of f64 range".into()))
            })
            .collect::<Result<Vec<f64>>>()?;
        MatrixGame::new(self.rows, self.cols, entries)
    }

    fn mean(&self) -> Rat {
        let sum: Rat = self.entries.iter().sum();
        sum / rat((self.rows * self.cols) as i64, 1)
    }
}

/// An exact equilibrium of a rational matrix game.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalEquilibrium {
    pub x_star: Vec<Rat>,
    pub y_star: Vec<Rat>,
    pub game_value: Rat,
}

impl RationalEquilibrium {
    fn is_interior(&self) -> bool {
        self.x_star.iter().all(Rat::is_positive) && self.y_star.iter().all(Rat::is_positive)
    }
}

/// Exact support enumeration over rationals; mirrors
/// [`crate::perturb::exact_minimax`] with exact feasibility and optimality
/// comparisons.
pub fn exact_minimax_rational(game: &RationalMatrix) -> Result<RationalEquilibrium> {
    let (m, n) = (game.rows(), game.cols());
    let small = m.min(n);
    if small > crate::perturb::SUPPORT_ENUMERATION_LIMIT {
        return Err(Error::UnsupportedSize {
            size: small,
            limit: crate::perturb::SUPPORT_ENUMERATION_LIMIT,
        });
    }

    for k in 1..=small {
        for rows in (0..m).combinations(k) {
            for cols in (0..n).combinations(k) {
                if let Some(eq) = solve_support_pair(game, &rows, &cols) {
                    return Ok(eq);
                }
            }
        }
    }
    Err(Error::PreconditionViolated(
        "support enumeration certified no equilibrium".into(),
    ))
}

fn solve_support_pair(
    game: &RationalMatrix,
    rows: &[usize],
    cols: &[usize],
) -> Option<RationalEquilibrium> {
    let k = rows.len();
    let dim = k + 1;
    let zero = Rat::zero();

    // y block: (A y)_i = v on support rows, sum(y) = 1.
    let mut sys = vec![zero.clone(); dim * dim];
    let mut rhs = vec![zero.clone(); dim];
    for (r, &i) in rows.iter().enumerate() {
        for (c, &j) in cols.iter().enumerate() {
            sys[r * dim + c] = game.entry(i, j).clone();
        }
        sys[r * dim + k] = rat(-1, 1);
    }
    for c in 0..k {
        sys[k * dim + c] = rat(1, 1);
    }
    rhs[k] = rat(1, 1);
    let y_sol = solve_exact(&sys, &rhs, dim)?;
    let v = y_sol[k].clone();

    // x block: (x^T A)_j = w on support columns, sum(x) = 1.
    let mut sys = vec![zero.clone(); dim * dim];
    let mut rhs = vec![zero.clone(); dim];
    for (c, &j) in cols.iter().enumerate() {
        for (r, &i) in rows.iter().enumerate() {
            sys[c * dim + r] = game.entry(i, j).clone();
        }
        sys[c * dim + k] = rat(-1, 1);
    }
    for r in 0..k {
        sys[k * dim + r] = rat(1, 1);
    }
    rhs[k] = rat(1, 1);
    let x_sol = solve_exact(&sys, &rhs, dim)?;
    let w = x_sol[k].clone();

    if v != w {
        return None;
    }
    if y_sol[..k].iter().any(Rat::is_negative) || x_sol[..k].iter().any(Rat::is_negative) {
        return None;
    }

    let mut y = vec![zero.clone(); game.cols()];
    for (c, &j) in cols.iter().enumerate() {
        y[j] = y_sol[c].clone();
    }
    let mut x = vec![zero.clone(); game.rows()];
    for (r, &i) in rows.iter().enumerate() {
        x[i] = x_sol[r].clone();
    }

    // Optimality: no row strictly below the value, no column strictly above.
    for i in 0..game.rows() {
        let payoff: Rat = (0..game.cols()).map(|j| game.entry(i, j) * &y[j]).sum();
        if payoff < v {
            return None;
        }
    }
    for j in 0..game.cols() {
        let payoff: Rat = (0..game.rows()).map(|i| game.entry(i, j) * &x[i]).sum();
        if payoff > v {
            return None;
        }
    }

    Some(RationalEquilibrium {
        x_star: x,
        y_star: y,
        game_value: v,
    })
}

/// Exact Gaussian elimination; `None` on singular systems.
fn solve_exact(matrix: &[Rat], rhs: &[Rat], n: usize) -> Option<Vec<Rat>> {
    let mut a = matrix.to_vec();
    let mut b = rhs.to_vec();

    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !a[r * n + col].is_zero())?;
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        for row in (col + 1)..n {
            if a[row * n + col].is_zero() {
                continue;
            }
            let factor = &a[row * n + col] / &a[col * n + col];
            for k in col..n {
                let delta = &factor * &a[col * n + k];
                a[row * n + k] -= delta;
            }
            let delta = &factor * &b[col];
            b[row] -= delta;
        }
    }

    let mut x = vec![Rat::zero(); n];
    for row in (0..n).rev() {
        let mut s = b[row].clone();
        for k in (row + 1)..n {
            let delta = &a[row * n + k] * &x[k];
            s -= delta;
        }
        x[row] = s / &a[row * n + row];
    }
    Some(x)
}

/// Exact critical strength for the minimizing player.
pub fn critical_mu_x_rational(
    game: &RationalMatrix,
    eq: &RationalEquilibrium,
) -> Result<Option<Rat>> {
    critical_rational(game, eq, true)
}

/// Exact critical strength for the maximizing player.
pub fn critical_mu_y_rational(
    game: &RationalMatrix,
    eq: &RationalEquilibrium,
) -> Result<Option<Rat>> {
    critical_rational(game, eq, false)
}

fn critical_rational(
    game: &RationalMatrix,
    eq: &RationalEquilibrium,
    x_side: bool,
) -> Result<Option<Rat>> {
    if !eq.is_interior() {
        return Err(Error::PreconditionViolated(
            "critical strength formula assumes an interior equilibrium".into(),
        ));
    }
    let mean = game.mean();
    let (numerator, denominator) = if x_side {
        let norm_sq: Rat = eq.x_star.iter().map(|p| p * p).sum();
        (mean - &eq.game_value, norm_sq - rat(1, game.rows() as i64))
    } else {
        let norm_sq: Rat = eq.y_star.iter().map(|p| p * p).sum();
        (
            eq.game_value.clone() - mean,
            norm_sq - rat(1, game.cols() as i64),
        )
    };
    if denominator.is_zero() {
        return Err(Error::PreconditionViolated(
            "equilibrium strategy is uniform; the formula degenerates".into(),
        ));
    }
    if numerator.is_zero() {
        return Ok(None);
    }
    let mu = numerator / denominator;
    Ok(if mu.is_positive() { Some(mu) } else { None })
}
