//! Nondominated filtering and ideal/nadir extraction.

use super::FrontError;

/// `a` Pareto-dominates `b` (minimization): `a <= b` componentwise and
/// `a != b`.
pub fn dominates(a: &[f64], b: &[f64]) -> bool {
    let mut strict = false;
    for (&ai, &bi) in a.iter().zip(b) {
        if ai > bi {
            return false;
        }
        if ai < bi {
            strict = true;
        }
    }
    strict
}

fn weakly_dominates(a: &[f64], b: &[f64]) -> bool {
    a.iter().zip(b).all(|(&ai, &bi)| ai <= bi)
}

/// Returns exactly the points not Pareto-dominated by any other point,
/// with exact duplicates collapsed to one representative. The result is
/// sorted lexicographically, so equal inputs give byte-equal outputs.
pub fn nondominated_filter(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    if points.is_empty() {
        return Vec::new();
    }
    let m = points[0].len();
    let mut kept = match m {
        1 => {
            let best = points
                .iter()
                .min_by(|a, b| a[0].partial_cmp(&b[0]).expect("finite objectives"))
                .expect("nonempty");
            vec![best.clone()]
        }
        2 => filter_2d(points),
        3 => filter_3d(points),
        _ => filter_general(points),
    };
    kept.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite objectives"));
    kept
}

/// 2-D: one sorted sweep keeping the strictly descending second coordinate.
fn filter_2d(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut sorted: Vec<&Vec<f64>> = points.iter().collect();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite objectives"));
    let mut kept: Vec<Vec<f64>> = Vec::new();
    let mut best = f64::INFINITY;
    for p in sorted {
        if p[1] < best {
            kept.push(p.clone());
            best = p[1];
        }
    }
    kept
}

/// 3-D: sweep on the first coordinate with a staircase over the other two.
/// The staircase is sorted ascending in `f2` with strictly descending `f3`.
fn filter_3d(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut sorted: Vec<&Vec<f64>> = points.iter().collect();
    sorted.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite objectives"));
    let mut kept: Vec<Vec<f64>> = Vec::new();
    let mut stair: Vec<(f64, f64)> = Vec::new();
    for p in sorted {
        let pos = stair.partition_point(|&(a2, _)| a2 <= p[1]);
        // Minimal f3 among entries with f2 <= p2 sits right before `pos`.
        if pos > 0 && stair[pos - 1].1 <= p[2] {
            continue;
        }
        let mut end = pos;
        while end < stair.len() && stair[end].1 >= p[2] {
            end += 1;
        }
        stair.splice(pos..end, [(p[1], p[2])]);
        kept.push(p.clone());
    }
    kept
}

/// General dimension: incremental archive, cheapest-sum first so dominated
/// points are rejected early.
fn filter_general(points: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let mut order: Vec<usize> = (0..points.len()).collect();
    let sums: Vec<f64> = points.iter().map(|p| p.iter().sum()).collect();
    order.sort_unstable_by(|&i, &j| {
        sums[i]
            .partial_cmp(&sums[j])
            .expect("finite objectives")
            .then_with(|| points[i].partial_cmp(&points[j]).expect("finite objectives"))
    });
    let mut kept: Vec<Vec<f64>> = Vec::new();
    for idx in order {
        let p = &points[idx];
        if kept.iter().any(|q| weakly_dominates(q, p)) {
            continue;
        }
        kept.retain(|q| !weakly_dominates(p, q));
        kept.push(p.clone());
    }
    kept
}

/// Per-point nondominated marks, preserving duplicates (a point tied with an
/// identical twin is still nondominated). Used by the inclusion checks where
/// decision-space identity matters.
pub fn nondominated_marks(points: &[Vec<f64>]) -> Vec<bool> {
    let n = points.len();
    let mut marks = vec![true; n];
    for i in 0..n {
        if !marks[i] {
            continue;
        }
        for j in 0..n {
            if i != j && dominates(&points[j], &points[i]) {
                marks[i] = false;
                break;
            }
        }
    }
    marks
}

/// Componentwise minimum and maximum over a front. A dimension where both
/// coincide signals a degenerate front.
pub fn ideal_nadir(points: &[Vec<f64>]) -> Result<(Vec<f64>, Vec<f64>), FrontError> {
    if points.is_empty() {
        return Err(FrontError::EmptyFront);
    }
    let (ideal, nadir) = raw_ideal_nadir(points);
    for (dim, (lo, hi)) in ideal.iter().zip(&nadir).enumerate() {
        if lo >= hi {
            return Err(FrontError::DegenerateDimension { dim: dim + 1 });
        }
    }
    Ok((ideal, nadir))
}

pub(super) fn raw_ideal_nadir(points: &[Vec<f64>]) -> (Vec<f64>, Vec<f64>) {
    let m = points[0].len();
    let mut ideal = vec![f64::INFINITY; m];
    let mut nadir = vec![f64::NEG_INFINITY; m];
    for p in points {
        for (d, &v) in p.iter().enumerate() {
            ideal[d] = ideal[d].min(v);
            nadir[d] = nadir[d].max(v);
        }
    }
    (ideal, nadir)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_drops_dominated_points() {
        let pts = vec![vec![0.0, 1.0], vec![1.0, 0.0], vec![1.0, 1.0]];
        assert_eq!(
            nondominated_filter(&pts),
            vec![vec![0.0, 1.0], vec![1.0, 0.0]]
        );
    }

    #[test]
    fn singleton_and_empty() {
        assert_eq!(
            nondominated_filter(&[vec![0.3, 0.3]]),
            vec![vec![0.3, 0.3]]
        );
        assert!(nondominated_filter(&[]).is_empty());
    }

    #[test]
    fn duplicates_collapse() {
        let pts = vec![vec![0.5, 0.5], vec![0.5, 0.5], vec![0.2, 0.9]];
        assert_eq!(
            nondominated_filter(&pts),
            vec![vec![0.2, 0.9], vec![0.5, 0.5]]
        );
        // The per-index marks keep both twins.
        assert_eq!(
            nondominated_marks(&[vec![0.5, 0.5], vec![0.5, 0.5]]),
            vec![true, true]
        );
    }

    #[test]
    fn ideal_nadir_basics() {
        let pts = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let (ideal, nadir) = ideal_nadir(&pts).unwrap();
        assert_eq!(ideal, vec![0.0, 0.0]);
        assert_eq!(nadir, vec![1.0, 1.0]);

        assert!(matches!(
            ideal_nadir(&[vec![0.5, 0.5]]),
            Err(FrontError::DegenerateDimension { dim: 1 })
        ));
        assert!(matches!(ideal_nadir(&[]), Err(FrontError::EmptyFront)));
    }
}
