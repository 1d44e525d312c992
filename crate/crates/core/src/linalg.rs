//! Small dense linear-algebra helpers: power iteration and Gaussian solves.
//!
//! Everything here targets matrices with at most a few dozen rows; no
//! attempt is made at cache-friendly blocking.

/// Largest singular value of the `m x n` row-major matrix `a`.
///
/// Power iteration on the Gram matrix `A^T A`, started from the normalized
/// all-ones vector. A fixed start can sit in a low eigenspace (or in the
/// kernel), so the basis vectors are run as additional deterministic starts
/// and the largest Rayleigh limit wins.
pub fn spectral_norm(a: &[f64], m: usize, n: usize) -> f64 {
    assert_eq!(a.len(), m * n);
    // gram[i][j] = <col_i, col_j>
    let mut gram = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0.0;
            for r in 0..m {
                s += a[r * n + i] * a[r * n + j];
            }
            gram[i * n + j] = s;
        }
    }
    let frobenius_sq: f64 = (0..n).map(|i| gram[i * n + i]).sum();
    if frobenius_sq == 0.0 {
        return 0.0;
    }

    let ones = vec![1.0 / (n as f64).sqrt(); n];
    let mut best = power_iterate(&gram, n, ones);
    for i in 0..n {
        let mut e = vec![0.0; n];
        e[i] = 1.0;
        best = best.max(power_iterate(&gram, n, e));
    }
    best.max(0.0).sqrt()
}

/// Rayleigh-quotient limit of power iteration on symmetric PSD `b` from `v`.
fn power_iterate(b: &[f64], n: usize, mut v: Vec<f64>) -> f64 {
    const MAX_ITERS: usize = 500_000;
    const REL_TOL: f64 = 1e-14;

    let mut lambda = 0.0;
    let mut settled = 0;
    for _ in 0..MAX_ITERS {
        let mut w = vec![0.0; n];
        for i in 0..n {
            let mut s = 0.0;
            for j in 0..n {
                s += b[i * n + j] * v[j];
            }
            w[i] = s;
        }
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            // Start vector lay in the kernel; report 0 and let another start win.
            return 0.0;
        }
        let next: f64 = w.iter().zip(&v).map(|(a, b)| a * b).sum();
        w.iter_mut().for_each(|x| *x /= norm);
        v = w;

        if (next - lambda).abs() <= REL_TOL * next.abs().max(f64::MIN_POSITIVE) {
            settled += 1;
            if settled >= 3 {
                return next;
            }
        } else {
            settled = 0;
        }
        lambda = next;
    }
    lambda
}

/// Solves the dense square system `M x = rhs` by Gaussian elimination with
/// partial pivoting. Returns `None` when a pivot degenerates (singular or
/// near-singular system).
pub fn solve_linear(matrix: &[f64], rhs: &[f64], n: usize) -> Option<Vec<f64>> {
    assert_eq!(matrix.len(), n * n);
    assert_eq!(rhs.len(), n);
    let mut a = matrix.to_vec();
    let mut b = rhs.to_vec();

    let scale = a.iter().fold(0.0f64, |acc, x| acc.max(x.abs())).max(1.0);
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&r, &s| {
                a[r * n + col]
                    .abs()
                    .partial_cmp(&a[s * n + col].abs())
                    .unwrap()
            })
            .unwrap();
        if a[pivot_row * n + col].abs() <= 1e-12 * scale {
            return None;
        }
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            b.swap(col, pivot_row);
        }
        for row in (col + 1)..n {
            let factor = a[row * n + col] / a[col * n + col];
            if factor == 0.0 {
                continue;
            }
            for k in col..n {
                a[row * n + k] -= factor * a[col * n + k];
            }
            b[row] -= factor * b[col];
        }
    }

    let mut x = vec![0.0; n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in (row + 1)..n {
            s -= a[row * n + k] * x[k];
        }
        x[row] = s / a[row * n + row];
    }
    Some(x)
}
