//! WFG4-9 evaluation (canonical toolkit formulations, minimization).
//!
//! All six problems share the concave shape with scaling constants
//! `S_m = 2m` and differ only in their transformation pipelines. Variable
//! `i` lives in `[0, 2i]` and is normalized to `[0, 1]` before the
//! transformations run. `k` position parameters (a multiple of `m - 1`)
//! come first, followed by `l = n - k` distance parameters.

use std::f64::consts::PI;

use super::ProblemFamily;

/// `A` constant of the parameter-dependent bias used by WFG7-9.
pub(crate) const B_PARAM_A: f64 = 0.98 / 49.98;
pub(crate) const B_PARAM_B: f64 = 0.02;
pub(crate) const B_PARAM_C: f64 = 50.0;

pub(super) fn evaluate(family: ProblemFamily, m: usize, k: usize, z: &[f64], out: &mut Vec<f64>) {
    let y: Vec<f64> = z
        .iter()
        .enumerate()
        .map(|(i, &zi)| zi / (2.0 * (i + 1) as f64))
        .collect();
    let t = match family {
        ProblemFamily::Wfg4 => {
            let y1: Vec<f64> = y.iter().map(|&v| s_multi(v, 30.0, 10.0, 0.35)).collect();
            reduce_weighted_sum(&y1, m, k)
        }
        ProblemFamily::Wfg5 => {
            let y1: Vec<f64> = y.iter().map(|&v| s_decept(v, 0.35, 0.001, 0.05)).collect();
            reduce_weighted_sum(&y1, m, k)
        }
        ProblemFamily::Wfg6 => {
            let mut y1 = y;
            for v in &mut y1[k..] {
                *v = s_linear(*v, 0.35);
            }
            reduce_nonseparable(&y1, m, k)
        }
        ProblemFamily::Wfg7 => {
            let mut y1 = y.clone();
            for i in 0..k {
                y1[i] = b_param(y[i], weighted_mean(&y[i + 1..]));
            }
            for v in &mut y1[k..] {
                *v = s_linear(*v, 0.35);
            }
            reduce_weighted_sum(&y1, m, k)
        }
        ProblemFamily::Wfg8 => {
            let mut y1 = y.clone();
            for i in k..y.len() {
                y1[i] = s_linear(b_param(y[i], weighted_mean(&y[..i])), 0.35);
            }
            reduce_weighted_sum(&y1, m, k)
        }
        ProblemFamily::Wfg9 => {
            let n = y.len();
            let mut y1 = y.clone();
            for i in 0..n - 1 {
                y1[i] = b_param(y[i], weighted_mean(&y[i + 1..]));
            }
            for v in &mut y1[..k] {
                *v = s_decept(*v, 0.35, 0.001, 0.05);
            }
            for v in &mut y1[k..] {
                *v = s_multi(*v, 30.0, 95.0, 0.35);
            }
            reduce_nonseparable(&y1, m, k)
        }
        _ => unreachable!("not a WFG family"),
    };
    concave_shape(&t, m, out);
}

/// Final shape: `f_j = x_M + 2j * h_j` on the concave surface. The WFG
/// degeneracy constants are all 1 for these problems, so the underlying
/// parameters equal the reduced transition values directly.
fn concave_shape(t: &[f64], m: usize, out: &mut Vec<f64>) {
    let x_m = t[m - 1];
    for j in 1..=m {
        let mut h = 1.0;
        for &x in &t[..m - j] {
            h *= (x * PI / 2.0).sin();
        }
        if j > 1 {
            h *= (t[m - j] * PI / 2.0).cos();
        }
        out.push(x_m + (2 * j) as f64 * h);
    }
}

/// Groups the k position parameters into `m - 1` blocks reduced by the
/// unit-weight sum, plus one block of all distance parameters.
fn reduce_weighted_sum(y: &[f64], m: usize, k: usize) -> Vec<f64> {
    let gap = k / (m - 1);
    let mut t = Vec::with_capacity(m);
    for i in 1..m {
        t.push(weighted_mean(&y[(i - 1) * gap..i * gap]));
    }
    t.push(weighted_mean(&y[k..]));
    t
}

fn reduce_nonseparable(y: &[f64], m: usize, k: usize) -> Vec<f64> {
    let gap = k / (m - 1);
    let mut t = Vec::with_capacity(m);
    for i in 1..m {
        t.push(r_nonsep(&y[(i - 1) * gap..i * gap], gap));
    }
    t.push(r_nonsep(&y[k..], y.len() - k));
    t
}

/// `r_sum` with unit weights.
fn weighted_mean(y: &[f64]) -> f64 {
    y.iter().sum::<f64>() / y.len() as f64
}

fn r_nonsep(y: &[f64], a: usize) -> f64 {
    let len = y.len();
    let mut numerator = 0.0;
    for j in 0..len {
        numerator += y[j];
        for kk in 0..a.saturating_sub(1) {
            numerator += (y[j] - y[(j + kk + 1) % len]).abs();
        }
    }
    let half = (a as f64 / 2.0).ceil();
    let denominator = (len as f64 / a as f64) * half * (1.0 + 2.0 * a as f64 - 2.0 * half);
    numerator / denominator
}

fn s_linear(y: f64, a: f64) -> f64 {
    (y - a).abs() / ((a - y).floor() + a).abs()
}

fn s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let tmp1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let tmp2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    1.0 + ((y - a).abs() - b) * (tmp1 + tmp2 + 1.0 / b)
}

fn s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let tmp1 = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    let tmp2 = (4.0 * a + 2.0) * PI * (0.5 - tmp1);
    (1.0 + tmp2.cos() + 4.0 * b * tmp1 * tmp1) / (b + 2.0)
}

fn b_param(y: f64, u: f64) -> f64 {
    y.powf(param_exponent(u))
}

/// Exponent of the parameter-dependent bias, shared with the front sampler
/// which inverts it to parameterize WFG8/9 optima.
pub(crate) fn param_exponent(u: f64) -> f64 {
    let v = B_PARAM_A - (1.0 - 2.0 * u) * ((0.5 - u).floor() + B_PARAM_A).abs();
    B_PARAM_B + (B_PARAM_C - B_PARAM_B) * v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transformations_stay_in_unit_interval() {
        for i in 0..=100 {
            let y = i as f64 / 100.0;
            for v in [
                s_linear(y, 0.35),
                s_decept(y, 0.35, 0.001, 0.05),
                s_multi(y, 30.0, 10.0, 0.35),
                s_multi(y, 30.0, 95.0, 0.35),
                b_param(y, 0.3),
            ] {
                assert!((-1e-12..=1.0 + 1e-12).contains(&v), "y={y}, v={v}");
            }
        }
    }

    #[test]
    fn shift_functions_vanish_at_their_optimum() {
        assert!(s_linear(0.35, 0.35).abs() < 1e-12);
        assert!(s_decept(0.35, 0.35, 0.001, 0.05).abs() < 1e-12);
        assert!(s_multi(0.35, 30.0, 10.0, 0.35).abs() < 1e-12);
    }

    #[test]
    fn shift_function_extremes() {
        for v in [
            s_linear(0.0, 0.35),
            s_linear(1.0, 0.35),
            s_multi(0.0, 30.0, 10.0, 0.35),
            s_multi(1.0, 30.0, 10.0, 0.35),
            s_multi(0.0, 30.0, 95.0, 0.35),
            s_multi(1.0, 30.0, 95.0, 0.35),
            // The deceptive shift peaks at A +/- B, not at the edges.
            s_decept(0.35 - 0.001, 0.35, 0.001, 0.05),
            s_decept(0.35 + 0.001, 0.35, 0.001, 0.05),
        ] {
            assert!((v - 1.0).abs() < 1e-9, "v={v}");
        }
        // At the domain edges the deceptive shift sits at its local-optimum
        // value C.
        for v in [
            s_decept(0.0, 0.35, 0.001, 0.05),
            s_decept(1.0, 0.35, 0.001, 0.05),
        ] {
            assert!((v - 0.05).abs() < 1e-9, "v={v}");
        }
    }

    #[test]
    fn nonseparable_reduction_degenerates_to_mean() {
        let y = [0.2, 0.4, 0.9];
        for (i, &v) in y.iter().enumerate() {
            assert!((r_nonsep(&y[i..i + 1], 1) - v).abs() < 1e-15);
        }
        let all = r_nonsep(&y, 1);
        assert!((all - (0.2 + 0.4 + 0.9) / 3.0).abs() < 1e-15);
    }

    #[test]
    fn param_exponent_range() {
        assert!((param_exponent(0.0) - B_PARAM_B).abs() < 1e-12);
        assert!((param_exponent(1.0) - B_PARAM_C).abs() < 1e-9);
        let mid = param_exponent(0.5);
        assert!(mid > B_PARAM_B && mid < B_PARAM_C);
    }
}
