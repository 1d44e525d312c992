//! Matrix games on probability simplices and the NashConv metric.
//!
//! Convention: entries are the payoff to player `y` (the maximizer), so
//! player `x` minimizes `x^T A y`.

use crate::simplex::SimplexPoint;
use crate::{linalg, Error, Result};

/// A two-player zero-sum matrix game with cached norm and diameter.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixGame {
    rows: usize,
    cols: usize,
    /// Row-major payoff entries (payoff to `y`, cost to `x`).
    entries: Vec<f64>,
    spectral_norm: f64,
    diameter: f64,
}

impl MatrixGame {
    /// Builds a game from row-major entries, caching `||A||` and the diameter
    /// of the product of the two simplices.
    pub fn new(rows: usize, cols: usize, entries: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidInput("matrix must be at least 1x1".into()));
        }
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                entries.len()
            )));
        }
        if !entries.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        let spectral_norm = linalg::spectral_norm(&entries, rows, cols);
        // Farthest pair in a simplex is a vertex pair at distance sqrt(2);
        // on the product space the squared distances add: D = sqrt(2 + 2).
        let diameter = (2.0f64 + 2.0).sqrt();
        Ok(Self {
            rows,
            cols,
            entries,
            spectral_norm,
            diameter,
        })
    }

    /// Builds a game from nested rows.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(m, n, rows.concat())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Cached largest singular value of the payoff matrix.
    pub fn spectral_norm(&self) -> f64 {
        self.spectral_norm
    }

    /// Cached diameter of the strategy-profile space.
    pub fn diameter(&self) -> f64 {
        self.diameter
    }

    /// `A y`: expected row payoffs against `y`.
    pub fn a_y(&self, y: &[f64]) -> Vec<f64> {
        assert_eq!(y.len(), self.cols, "y dimension mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.entries[i * self.cols + j] * y[j])
                    .sum()
            })
            .collect()
    }

    /// `A^T x`: expected column payoffs against `x`.
    pub fn at_x(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.rows, "x dimension mismatch");
        let mut out = vec![0.0; self.cols];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0.0 {
                continue;
            }
            let row = &self.entries[i * self.cols..(i + 1) * self.cols];
            for (o, a) in out.iter_mut().zip(row) {
                *o += a * xi;
            }
        }
        out
    }

    /// Bilinear payoff `x^T A y`.
    pub fn value(&self, x: &[f64], y: &[f64]) -> f64 {
        self.a_y(y).iter().zip(x).map(|(r, xi)| r * xi).sum()
    }

    /// True when `A^T = -A` (the game is antisymmetric).
    pub fn is_antisymmetric(&self, tol: f64) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                if (self.entry(i, j) + self.entry(j, i)).abs() > tol {
                    return false;
                }
            }
        }
        true
    }

    fn check_profile(&self, z: &StrategyProfile) -> Result<()> {
        if z.x.dim() != self.rows || z.y.dim() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "profile ({}, {}) vs game ({}, {})",
                z.x.dim(),
                z.y.dim(),
                self.rows,
                self.cols
            )));
        }
        Ok(())
    }
}

/// A pair of mixed strategies, one per player.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyProfile {
    pub x: SimplexPoint,
    pub y: SimplexPoint,
}

impl StrategyProfile {
    pub fn new(x: SimplexPoint, y: SimplexPoint) -> Self {
        Self { x, y }
    }

    pub fn uniform(game: &MatrixGame) -> Self {
        Self {
            x: SimplexPoint::uniform(game.rows()),
            y: SimplexPoint::uniform(game.cols()),
        }
    }

    /// Euclidean distance between two profiles, taken jointly over (x, y).
    pub fn distance(&self, other: &StrategyProfile) -> f64 {
        let dx = self.x.distance(&other.x);
        let dy = self.y.distance(&other.y);
        (dx * dx + dy * dy).sqrt()
    }
}

/// Rounding slack below which a NashConv value is clamped to zero.
const NASH_CONV_SLACK: f64 = 1e-12;

/// Best-response gap `max_j (x^T A)_j - min_i (A y)_i`.
///
/// Nonnegative by definition; values within `-1e-12` of zero are rounding
/// noise and are clamped.
pub fn nash_conv(game: &MatrixGame, z: &StrategyProfile) -> Result<f64> {
    game.check_profile(z)?;
    let best_col = game
        .at_x(z.x.as_slice())
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    let worst_row = game
        .a_y(z.y.as_slice())
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let gap = best_col - worst_row;
    if (-NASH_CONV_SLACK..0.0).contains(&gap) {
        return Ok(0.0);
    }
    Ok(gap)
}

/// Value and location of `y`'s best response to `x`: `max_j (x^T A)_j`.
///
/// Ties break toward the lowest column index.
pub fn best_response_value_x(game: &MatrixGame, x: &SimplexPoint) -> (f64, usize) {
    assert_eq!(x.dim(), game.rows(), "x dimension mismatch");
    let payoffs = game.at_x(x.as_slice());
    let mut best = payoffs[0];
    let mut arg = 0;
    for (j, &p) in payoffs.iter().enumerate().skip(1) {
        if p > best {
            best = p;
            arg = j;
        }
    }
    (best, arg)
}

/// Perturbed objective landscape for player `x`:
/// `max_j (x^T A)_j + (mu / 2) ||x||^2`.
pub fn perturbed_landscape(game: &MatrixGame, x: &SimplexPoint, mu: f64) -> f64 {
    assert!(mu >= 0.0, "perturbation strength must be nonnegative");
    best_response_value_x(game, x).0 + 0.5 * mu * x.norm_sq()
}
