//! Cross-checks the WFG4-9 implementations against an independent, direct
//! transcription of the published toolkit definitions.
//!
//! The oracle below is deliberately written in a different style (1-based
//! working vectors, explicit weight vectors, the full underlying-parameter
//! mapping) and shares no code with the library implementation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dynobj::problems::{DecisionVector, ProblemFamily, ProblemSpec};

const PI: f64 = std::f64::consts::PI;

// --- transformation functions, transcribed one-to-one ---

fn o_s_linear(y: f64, a: f64) -> f64 {
    (y - a).abs() / ((a - y).floor() + a).abs()
}

fn o_s_decept(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let tmp1 = (y - a + b).floor() * (1.0 - c + (a - b) / b) / (a - b);
    let tmp2 = (a + b - y).floor() * (1.0 - c + (1.0 - a - b) / b) / (1.0 - a - b);
    1.0 + ((y - a).abs() - b) * (tmp1 + tmp2 + 1.0 / b)
}

fn o_s_multi(y: f64, a: f64, b: f64, c: f64) -> f64 {
    let tmp1 = (y - c).abs() / (2.0 * ((c - y).floor() + c));
    let tmp2 = (4.0 * a + 2.0) * PI * (0.5 - tmp1);
    (1.0 + tmp2.cos() + 4.0 * b * tmp1 * tmp1) / (b + 2.0)
}

fn o_b_param(y: f64, u: f64, a: f64, b: f64, c: f64) -> f64 {
    let v = a - (1.0 - 2.0 * u) * ((0.5 - u).floor() + a).abs();
    y.powf(b + (c - b) * v)
}

fn o_r_sum(y: &[f64], w: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for j in 0..y.len() {
        num += w[j] * y[j];
        den += w[j];
    }
    num / den
}

fn o_r_nonsep(y: &[f64], a: usize) -> f64 {
    let len = y.len();
    let mut num = 0.0;
    for j in 1..=len {
        num += y[j - 1];
        for k in 0..=(a as isize - 2) {
            let other = 1 + ((j as isize + k) % len as isize) as usize;
            num += (y[j - 1] - y[other - 1]).abs();
        }
    }
    let half = (a as f64 / 2.0).ceil();
    num / ((len as f64 / a as f64) * half * (1.0 + 2.0 * a as f64 - 2.0 * half))
}

// --- concave shape with the full underlying-parameter mapping ---

fn o_shape_concave(t: &[f64], m: usize) -> Vec<f64> {
    // x_i = max(t_M, A_i) (t_i - 1/2) + 1/2 with A_i = 1 for WFG4-9.
    let mut x = vec![0.0; m];
    for i in 0..m - 1 {
        x[i] = t[m - 1].max(1.0) * (t[i] - 0.5) + 0.5;
    }
    x[m - 1] = t[m - 1];

    let mut f = vec![0.0; m];
    for j in 1..=m {
        let mut h = 1.0;
        let mut i = 1;
        while i <= m - j {
            h *= (x[i - 1] * PI / 2.0).sin();
            i += 1;
        }
        if j != 1 {
            h *= (x[m - j] * PI / 2.0).cos();
        }
        f[j - 1] = x[m - 1] + (2 * j) as f64 * h;
    }
    f
}

fn normalize_domain(z: &[f64]) -> Vec<f64> {
    (1..=z.len()).map(|i| z[i - 1] / (2.0 * i as f64)).collect()
}

fn rsum_reduction(y: &[f64], m: usize, k: usize) -> Vec<f64> {
    let mut t = vec![0.0; m];
    let gap = k / (m - 1);
    for i in 1..=m - 1 {
        let head = (i - 1) * gap;
        let block = &y[head..head + gap];
        t[i - 1] = o_r_sum(block, &vec![1.0; block.len()]);
    }
    let tail = &y[k..];
    t[m - 1] = o_r_sum(tail, &vec![1.0; tail.len()]);
    t
}

fn nonsep_reduction(y: &[f64], m: usize, k: usize) -> Vec<f64> {
    let mut t = vec![0.0; m];
    let gap = k / (m - 1);
    for i in 1..=m - 1 {
        let head = (i - 1) * gap;
        t[i - 1] = o_r_nonsep(&y[head..head + gap], gap);
    }
    t[m - 1] = o_r_nonsep(&y[k..], y.len() - k);
    t
}

fn oracle(family: ProblemFamily, z: &[f64], m: usize, k: usize) -> Vec<f64> {
    let n = z.len();
    let y0 = normalize_domain(z);
    let t = match family {
        ProblemFamily::Wfg4 => {
            let y1: Vec<f64> = y0.iter().map(|&v| o_s_multi(v, 30.0, 10.0, 0.35)).collect();
            rsum_reduction(&y1, m, k)
        }
        ProblemFamily::Wfg5 => {
            let y1: Vec<f64> = y0
                .iter()
                .map(|&v| o_s_decept(v, 0.35, 0.001, 0.05))
                .collect();
            rsum_reduction(&y1, m, k)
        }
        ProblemFamily::Wfg6 => {
            let mut y1 = y0.clone();
            for i in k + 1..=n {
                y1[i - 1] = o_s_linear(y0[i - 1], 0.35);
            }
            nonsep_reduction(&y1, m, k)
        }
        ProblemFamily::Wfg7 => {
            let mut y1 = y0.clone();
            for i in 1..=k {
                let tail = &y0[i..];
                let u = o_r_sum(tail, &vec![1.0; tail.len()]);
                y1[i - 1] = o_b_param(y0[i - 1], u, 0.98 / 49.98, 0.02, 50.0);
            }
            let mut y2 = y1.clone();
            for i in k + 1..=n {
                y2[i - 1] = o_s_linear(y1[i - 1], 0.35);
            }
            rsum_reduction(&y2, m, k)
        }
        ProblemFamily::Wfg8 => {
            let mut y1 = y0.clone();
            for i in k + 1..=n {
                let head = &y0[..i - 1];
                let u = o_r_sum(head, &vec![1.0; head.len()]);
                y1[i - 1] = o_b_param(y0[i - 1], u, 0.98 / 49.98, 0.02, 50.0);
            }
            let mut y2 = y1.clone();
            for i in k + 1..=n {
                y2[i - 1] = o_s_linear(y1[i - 1], 0.35);
            }
            rsum_reduction(&y2, m, k)
        }
        ProblemFamily::Wfg9 => {
            let mut y1 = y0.clone();
            for i in 1..=n - 1 {
                let tail = &y0[i..];
                let u = o_r_sum(tail, &vec![1.0; tail.len()]);
                y1[i - 1] = o_b_param(y0[i - 1], u, 0.98 / 49.98, 0.02, 50.0);
            }
            let mut y2 = y1.clone();
            for i in 1..=k {
                y2[i - 1] = o_s_decept(y1[i - 1], 0.35, 0.001, 0.05);
            }
            for i in k + 1..=n {
                y2[i - 1] = o_s_multi(y1[i - 1], 30.0, 95.0, 0.35);
            }
            nonsep_reduction(&y2, m, k)
        }
        _ => panic!("not a WFG family"),
    };
    o_shape_concave(&t, m)
}

#[test]
fn implementation_matches_oracle_transcription() {
    let families = [
        ProblemFamily::Wfg4,
        ProblemFamily::Wfg5,
        ProblemFamily::Wfg6,
        ProblemFamily::Wfg7,
        ProblemFamily::Wfg8,
        ProblemFamily::Wfg9,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for family in families {
        for m_max in [2usize, 3, 6, 10] {
            let spec = ProblemSpec::with_default_dims(family, false, m_max).unwrap();
            let bounds = spec.decision_bounds();
            for _ in 0..50 {
                let z: Vec<f64> = bounds
                    .iter()
                    .map(|&(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
                    .collect();
                let got = spec
                    .evaluate_full(&DecisionVector::new(z.clone()))
                    .unwrap();
                let want = oracle(family, &z, m_max, spec.position_params());
                for (g, w) in got.values().iter().zip(&want) {
                    assert!(
                        (g - w).abs() <= 1e-12,
                        "{family:?} m={m_max}: got {g}, oracle {w}"
                    );
                }
            }
        }
    }
}

#[test]
fn minus_variant_negates_the_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let spec = ProblemSpec::with_default_dims(ProblemFamily::Wfg9, true, 3).unwrap();
    let bounds = spec.decision_bounds();
    for _ in 0..50 {
        let z: Vec<f64> = bounds
            .iter()
            .map(|&(lo, hi)| lo + rng.random::<f64>() * (hi - lo))
            .collect();
        let got = spec.evaluate_full(&DecisionVector::new(z.clone())).unwrap();
        let want = oracle(ProblemFamily::Wfg9, &z, 3, spec.position_params());
        for (g, w) in got.values().iter().zip(&want) {
            assert!((g + w).abs() <= 1e-12, "got {g}, oracle {w}");
        }
    }
}
