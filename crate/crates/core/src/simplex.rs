//! Points on the probability simplex and the Euclidean projection onto it.

use crate::{Error, Result};
use rand::Rng;

/// Tolerance on the coordinate sum of a valid simplex point.
pub const SUM_TOL: f64 = 1e-9;

/// A probability vector: nonnegative coordinates summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    probs: Vec<f64>,
}

impl SimplexPoint {
    /// Validates and wraps a probability vector.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::NotASimplexPoint("empty vector".into()));
        }
        if !probs.iter().all(|p| p.is_finite() && *p >= 0.0) {
            return Err(Error::NotASimplexPoint(format!(
                "coordinates must be finite and nonnegative, got {probs:?}"
            )));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOL {
            return Err(Error::NotASimplexPoint(format!(
                "coordinates sum to {sum}, expected 1"
            )));
        }
        Ok(Self { probs })
    }

    /// Wraps a vector that is already known to satisfy the invariants.
    pub(crate) fn new_unchecked(probs: Vec<f64>) -> Self {
        debug_assert!(probs.iter().all(|p| *p >= 0.0));
        debug_assert!((probs.iter().sum::<f64>() - 1.0).abs() <= SUM_TOL);
        Self { probs }
    }

    /// The uniform distribution over `k` outcomes.
    pub fn uniform(k: usize) -> Self {
        assert!(k >= 1, "simplex dimension must be positive");
        Self {
            probs: vec![1.0 / k as f64; k],
        }
    }

    /// A point drawn uniformly from the simplex (normalized exponentials).
    pub fn sample_uniform<R: Rng>(k: usize, rng: &mut R) -> Self {
        assert!(k >= 1, "simplex dimension must be positive");
        let mut v: Vec<f64> = (0..k).map(|_| -(1.0 - rng.random::<f64>()).ln()).collect();
        let sum: f64 = v.iter().sum();
        if sum <= 0.0 {
            return Self::uniform(k);
        }
        v.iter_mut().for_each(|x| *x /= sum);
        Self::new_unchecked(v)
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.probs.clone()
    }

    /// Squared Euclidean norm of the coordinate vector.
    pub fn norm_sq(&self) -> f64 {
        self.probs.iter().map(|p| p * p).sum()
    }

    /// Euclidean distance to another point of the same dimension.
    pub fn distance(&self, other: &SimplexPoint) -> f64 {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    /// Index set of coordinates above `threshold`.
    pub fn support(&self, threshold: f64) -> Vec<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, p)| **p > threshold)
            .map(|(i, _)| i)
            .collect()
    }

    /// True when every coordinate is at least `eps` away from zero.
    pub fn is_interior(&self, eps: f64) -> bool {
        self.probs.iter().all(|p| *p >= eps)
    }
}

impl std::ops::Index<usize> for SimplexPoint {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.probs[i]
    }
}

/// Euclidean projection of `v` onto the probability simplex.
///
/// Sort-then-threshold: with the coordinates sorted in decreasing order,
/// the projection is `max(v_i - theta, 0)` where `theta` is determined by
/// the largest prefix whose shifted entries stay positive. Exact up to
/// rounding, O(k log k).
pub fn project_simplex(v: &[f64]) -> Result<SimplexPoint> {
    if v.is_empty() {
        return Err(Error::InvalidInput("empty vector".into()));
    }
    if !v.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidInput(format!("non-finite entries in {v:?}")));
    }
    Ok(project_simplex_unchecked(v))
}

pub(crate) fn project_simplex_unchecked(v: &[f64]) -> SimplexPoint {
    // A near-feasible input is its own projection; returning it unchanged
    // (rather than re-thresholding) makes the projection exactly idempotent.
    let sum: f64 = v.iter().sum();
    if (sum - 1.0).abs() <= 1e-12 && v.iter().all(|x| *x >= 0.0) {
        return SimplexPoint::new_unchecked(v.to_vec());
    }

    let k = v.len();
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).expect("finite entries"));

    // The j = 0 candidate always passes (u - (u - 1) = 1), so theta is
    // overwritten before use.
    let mut prefix = 0.0;
    let mut theta = 0.0;
    for (j, &u) in sorted.iter().enumerate() {
        prefix += u;
        let candidate = (prefix - 1.0) / (j + 1) as f64;
        if u - candidate > 0.0 {
            theta = candidate;
        }
    }

    let p: Vec<f64> = v.iter().map(|x| (x - theta).max(0.0)).collect();
    if p.iter().all(|x| *x == 0.0) {
        return SimplexPoint::uniform(k);
    }
    SimplexPoint::new_unchecked(p)
}
