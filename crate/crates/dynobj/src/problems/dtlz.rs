//! DTLZ1-4 evaluation (canonical formulations, minimization).
//!
//! The last `n - m + 1` variables are distance-related; the first `m - 1`
//! control the position on the front.

use std::f64::consts::PI;

use super::ProblemFamily;

/// Rastrigin-style distance function used by DTLZ1 and DTLZ3.
fn g_rastrigin(xm: &[f64]) -> f64 {
    let sum: f64 = xm
        .iter()
        .map(|&x| (x - 0.5).powi(2) - (20.0 * PI * (x - 0.5)).cos())
        .sum();
    100.0 * (xm.len() as f64 + sum)
}

/// Quadratic distance function used by DTLZ2 and DTLZ4.
fn g_sphere(xm: &[f64]) -> f64 {
    xm.iter().map(|&x| (x - 0.5).powi(2)).sum()
}

pub(super) fn evaluate(family: ProblemFamily, m: usize, x: &[f64], out: &mut Vec<f64>) {
    let position = &x[..m - 1];
    let distance = &x[m - 1..];
    match family {
        ProblemFamily::Dtlz1 => dtlz1(position, g_rastrigin(distance), out),
        ProblemFamily::Dtlz2 => spherical(position, g_sphere(distance), 1.0, out),
        ProblemFamily::Dtlz3 => spherical(position, g_rastrigin(distance), 1.0, out),
        ProblemFamily::Dtlz4 => spherical(position, g_sphere(distance), 100.0, out),
        _ => unreachable!("not a DTLZ family"),
    }
}

fn dtlz1(position: &[f64], g: f64, out: &mut Vec<f64>) {
    let m = position.len() + 1;
    let scale = 0.5 * (1.0 + g);
    for j in 1..=m {
        let mut f = scale;
        for &x in &position[..m - j] {
            f *= x;
        }
        if j > 1 {
            f *= 1.0 - position[m - j];
        }
        out.push(f);
    }
}

fn spherical(position: &[f64], g: f64, alpha: f64, out: &mut Vec<f64>) {
    let m = position.len() + 1;
    let scale = 1.0 + g;
    for j in 1..=m {
        let mut f = scale;
        for &x in &position[..m - j] {
            f *= (x.powf(alpha) * PI / 2.0).cos();
        }
        if j > 1 {
            f *= (position[m - j].powf(alpha) * PI / 2.0).sin();
        }
        out.push(f);
    }
}
