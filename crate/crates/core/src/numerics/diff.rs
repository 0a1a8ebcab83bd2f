use crate::error::{Error, Result};
use crate::Vector;

/// Finite-difference weights for the `order`-th derivative at `x0` using the
/// nodes `xs` (Fornberg's recursion).
pub fn fornberg_weights(x0: f64, xs: &[f64], order: usize) -> Vec<f64> {
    let n = xs.len();
    // c[j][k]: weight of node j for derivative k
    let mut c = vec![vec![0.0; order + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[order]).collect()
}

/// True when the spacing of `ts` is constant up to relative `1e-9`.
pub fn is_uniform(ts: &[f64]) -> bool {
    if ts.len() < 3 {
        return true;
    }
    let mean = (ts[ts.len() - 1] - ts[0]) / (ts.len() - 1) as f64;
    ts.windows(2)
        .all(|w| ((w[1] - w[0]) - mean).abs() <= 1e-9 * mean.abs())
}

fn check_increasing(ts: &[f64]) -> Result<()> {
    if ts.windows(2).all(|w| w[1] > w[0]) {
        Ok(())
    } else {
        Err(Error::InvalidInput(
            "sample parameters must be strictly increasing".into(),
        ))
    }
}

/// Window of `width` consecutive indices centred on `i`, clamped to `0..n`.
fn stencil(i: usize, width: usize, n: usize) -> std::ops::Range<usize> {
    let half = width / 2;
    let start = i.saturating_sub(half).min(n - width);
    start..start + width
}

/// First or second derivative of sampled vector data on the same grid.
///
/// Uniform grids use five-point stencils (fourth-order central differences
/// in the interior, one-sided five-point formulas at the ends). Non-uniform
/// grids fall back to three-point (first derivative) or four-point (second
/// derivative) Fornberg weights.
pub fn finite_diff(ts: &[f64], values: &[Vector], order: usize) -> Result<Vec<Vector>> {
    if order == 0 || order > 2 {
        return Err(Error::InvalidInput(format!(
            "finite_diff supports orders 1 and 2, got {order}"
        )));
    }
    if ts.len() != values.len() {
        return Err(Error::GridMismatch(format!(
            "{} parameters for {} values",
            ts.len(),
            values.len()
        )));
    }
    let needed = if order == 1 { 3 } else { 5 };
    let n = ts.len();
    if n < needed {
        return Err(Error::TooFewSamples { needed, got: n });
    }
    check_increasing(ts)?;

    let width = if is_uniform(ts) {
        5.min(n)
    } else if order == 1 {
        3
    } else {
        4
    };
    let dim = values[0].len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let idx = stencil(i, width, n);
        let w = fornberg_weights(ts[i], &ts[idx.clone()], order);
        let mut d = Vector::zeros(dim);
        for (wk, j) in w.iter().zip(idx) {
            d.axpy(*wk, &values[j], 1.0);
        }
        out.push(d);
    }
    Ok(out)
}

/// Evaluates the cubic Lagrange interpolant through the four nodes nearest
/// to `t` (fewer when `ts` is shorter).
pub fn lagrange_eval(ts: &[f64], values: &[Vector], t: f64) -> Vector {
    let n = ts.len();
    let width = 4.min(n);
    // interval containing t
    let k = match ts.partition_point(|&x| x <= t) {
        0 => 0,
        p => (p - 1).min(n.saturating_sub(2)),
    };
    let start = if k == 0 { 0 } else { (k - 1).min(n - width) };
    let nodes = start..start + width;
    let mut out = Vector::zeros(values[0].len());
    for j in nodes.clone() {
        let mut w = 1.0;
        for m in nodes.clone() {
            if m != j {
                w *= (t - ts[m]) / (ts[j] - ts[m]);
            }
        }
        out.axpy(w, &values[j], 1.0);
    }
    out
}

/// Running integral `∫_{t_0}^{t_i} f` of sampled scalar data.
///
/// Each interval integrates the local cubic interpolant exactly (two-point
/// Gauss rule), which is fourth-order accurate; with fewer than four
/// samples the trapezoid rule is used.
pub fn cumulative_integral(ts: &[f64], values: &[f64]) -> Result<Vec<f64>> {
    if ts.len() != values.len() {
        return Err(Error::GridMismatch(format!(
            "{} parameters for {} values",
            ts.len(),
            values.len()
        )));
    }
    if ts.len() < 2 {
        return Err(Error::TooFewSamples {
            needed: 2,
            got: ts.len(),
        });
    }
    check_increasing(ts)?;
    let n = ts.len();
    let mut out = Vec::with_capacity(n);
    out.push(0.0);
    if n < 4 {
        for i in 1..n {
            let h = ts[i] - ts[i - 1];
            out.push(out[i - 1] + 0.5 * h * (values[i] + values[i - 1]));
        }
        return Ok(out);
    }
    let g = 0.5 / 3f64.sqrt();
    for i in 1..n {
        let a = ts[i - 1];
        let b = ts[i];
        let start = if i == 1 { 0 } else { (i - 2).min(n - 4) };
        let nodes = start..start + 4;
        let interp = |t: f64| -> f64 {
            nodes
                .clone()
                .map(|j| {
                    let w: f64 = nodes
                        .clone()
                        .filter(|&m| m != j)
                        .map(|m| (t - ts[m]) / (ts[j] - ts[m]))
                        .product();
                    w * values[j]
                })
                .sum()
        };
        let mid = 0.5 * (a + b);
        let h = b - a;
        let piece = 0.5 * h * (interp(mid - g * h) + interp(mid + g * h));
        out.push(out[i - 1] + piece);
    }
    Ok(out)
}
