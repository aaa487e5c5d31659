//! Helpers shared by the integration tests.
#![allow(dead_code)]

/// Central difference of order `j` with step `h`: points at t + (j/2 - i) h.
fn central_difference(f: &dyn Fn(f64) -> f64, t: f64, j: usize, h: f64) -> f64 {
    let mut binom = 1.0;
    let mut sum = 0.0;
    for i in 0..=j {
        if i > 0 {
            binom = binom * (j + 1 - i) as f64 / i as f64;
        }
        let sign = if i % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * binom * f(t + (j as f64 / 2.0 - i as f64) * h);
    }
    sum / h.powi(j as i32)
}

/// j-th derivative by Richardson extrapolation of central differences over
/// `levels` successive halvings of `h0`.
pub fn richardson_derivative(f: &dyn Fn(f64) -> f64, t: f64, j: usize, h0: f64, levels: usize) -> f64 {
    let mut table: Vec<Vec<f64>> = Vec::new();
    let mut h = h0;
    for level in 0..levels {
        let mut row = vec![central_difference(f, t, j, h)];
        for m in 1..=level {
            let factor = 4f64.powi(m as i32);
            let prev = &table[level - 1];
            row.push((factor * row[m - 1] - prev[m - 1]) / (factor - 1.0));
        }
        table.push(row);
        h *= 0.5;
    }
    *table.last().and_then(|r| r.last()).expect("levels > 0")
}

/// Stirling numbers of the second kind S(k, j), 0 ≤ j ≤ k ≤ max.
pub fn stirling2(max: usize) -> Vec<Vec<f64>> {
    let mut s = vec![vec![0.0; max + 1]; max + 1];
    s[0][0] = 1.0;
    for k in 1..=max {
        for j in 1..=k {
            s[k][j] = j as f64 * s[k - 1][j] + s[k - 1][j - 1];
        }
    }
    s
}

/// x_k(t) = Σ_j S(k, j) t^j x^(j)(t) with x^(j) from finite differences.
/// Halvings used by [`x_sequence_fd`]; with h0 = 0.3 truncation and
/// roundoff balance near 1e-7 for fourth derivatives.
pub const FD_LEVELS: usize = 4;

pub fn x_sequence_fd(f: &dyn Fn(f64) -> f64, t: f64, depth: usize, h0: f64) -> Vec<f64> {
    let s = stirling2(depth);
    let derivs: Vec<f64> = (0..=depth)
        .map(|j| if j == 0 { f(t) } else { richardson_derivative(f, t, j, h0, FD_LEVELS) })
        .collect();
    (1..=depth)
        .map(|k| (1..=k).map(|j| s[k][j] * t.powi(j as i32) * derivs[j]).sum())
        .collect()
}

/// t_i = a + (b - a) i / (count + 1), i = 1..=count.
pub fn interior_grid(a: f64, b: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|i| a + (b - a) * i as f64 / (count + 1) as f64).collect()
}
