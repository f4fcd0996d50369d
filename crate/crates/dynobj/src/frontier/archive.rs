//! Text persistence of reference fronts.
//!
//! One archive per `(problem, subset, seed)`: a `#`-prefixed header block
//! followed by one comma-separated objective row per front point at full
//! decimal precision. Re-rendering a parsed archive reproduces it byte for
//! byte.

use std::collections::BTreeMap;

use crate::hypervolume::HvMethod;
use crate::problems::{ProblemFamily, ProblemSpec};
use crate::subset::ObjectiveSubset;
use crate::textfmt::{format_full, parse_f64};

use super::{FrontError, ReferenceFront};

pub const FORMAT_VERSION: &str = "1";

pub fn render_front_archive(front: &ReferenceFront) -> String {
    let spec = front.spec();
    let mut out = String::new();
    out.push_str(&format!("# dynobj front archive v{FORMAT_VERSION}\n"));
    out.push_str(&format!("# problem={}\n", spec.id()));
    out.push_str(&format!("# m_max={}\n", spec.m_max()));
    out.push_str(&format!("# n={}\n", spec.n()));
    out.push_str(&format!("# position_params={}\n", spec.position_params()));
    out.push_str(&format!("# subset={}\n", front.subset()));
    out.push_str(&format!("# seed={}\n", front.seed()));
    out.push_str(&format!("# budget={}\n", front.budget()));
    out.push_str(&format!("# degenerate={}\n", front.degenerate()));
    out.push_str(&format!("# ideal={}\n", join_full(front.ideal())));
    out.push_str(&format!("# nadir={}\n", join_full(front.nadir())));
    out.push_str(&format!("# front_hv={}\n", format_full(front.front_hv())));
    match front.hv_method() {
        HvMethod::Exact => out.push_str("# hv_method=exact\n"),
        HvMethod::MonteCarlo { samples, seed } => {
            out.push_str(&format!("# hv_method=mc samples={samples} seed={seed}\n"))
        }
    }
    out.push_str(&format!("# points={}\n", front.points().len()));
    for row in front.points() {
        out.push_str(&join_full(row));
        out.push('\n');
    }
    out
}

fn join_full(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| format_full(v))
        .collect::<Vec<_>>()
        .join(",")
}

pub fn parse_front_archive(text: &str) -> Result<ReferenceFront, FrontError> {
    let bad = |msg: String| FrontError::Archive(msg);
    let mut header = BTreeMap::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut lines = text.lines();
    match lines.next() {
        Some(first) if first == format!("# dynobj front archive v{FORMAT_VERSION}") => {}
        Some(first) => return Err(bad(format!("unsupported archive version: {first:?}"))),
        None => return Err(bad("empty archive".into())),
    }
    for line in lines {
        if let Some(rest) = line.strip_prefix("# ") {
            let (key, value) = rest
                .split_once('=')
                .ok_or_else(|| bad(format!("malformed header line {line:?}")))?;
            header.insert(key.to_string(), value.to_string());
        } else if !line.trim().is_empty() {
            rows.push(
                line.split(',')
                    .map(|tok| parse_f64(tok).map_err(&bad))
                    .collect::<Result<Vec<f64>, _>>()?,
            );
        }
    }
    let get = |key: &str| {
        header
            .get(key)
            .cloned()
            .ok_or_else(|| bad(format!("missing header {key}")))
    };
    let problem = get("problem")?;
    let m_max: usize = get("m_max")?.parse().map_err(|_| bad("bad m_max".into()))?;
    let n: usize = get("n")?.parse().map_err(|_| bad("bad n".into()))?;
    let position_params: usize = get("position_params")?
        .parse()
        .map_err(|_| bad("bad position_params".into()))?;
    let (minus, base) = match problem.strip_prefix("minus-") {
        Some(rest) => (true, rest),
        None => (false, problem.as_str()),
    };
    let family = ProblemFamily::from_name(base)
        .ok_or_else(|| bad(format!("unknown problem {problem:?}")))?;
    let spec = ProblemSpec::new(family, minus, m_max, n, position_params)?;
    let subset = ObjectiveSubset::parse(&get("subset")?)?;
    let seed: u64 = get("seed")?.parse().map_err(|_| bad("bad seed".into()))?;
    let budget: usize = get("budget")?.parse().map_err(|_| bad("bad budget".into()))?;
    let degenerate: bool = get("degenerate")?
        .parse()
        .map_err(|_| bad("bad degenerate flag".into()))?;
    let ideal = parse_vector(&get("ideal")?).map_err(&bad)?;
    let nadir = parse_vector(&get("nadir")?).map_err(&bad)?;
    let front_hv = parse_f64(&get("front_hv")?).map_err(&bad)?;
    let hv_method = parse_method(&get("hv_method")?).map_err(&bad)?;
    let declared: usize = get("points")?.parse().map_err(|_| bad("bad points".into()))?;
    if rows.len() != declared {
        return Err(bad(format!(
            "archive declares {declared} points but contains {}",
            rows.len()
        )));
    }
    let m = subset.len();
    if ideal.len() != m || nadir.len() != m || rows.iter().any(|r| r.len() != m) {
        return Err(bad("row width does not match the subset".into()));
    }
    Ok(ReferenceFront {
        spec,
        subset,
        points: rows,
        ideal,
        nadir,
        front_hv,
        hv_method,
        degenerate,
        seed,
        budget,
    })
}

fn parse_vector(text: &str) -> Result<Vec<f64>, String> {
    text.split(',').map(parse_f64).collect()
}

fn parse_method(text: &str) -> Result<HvMethod, String> {
    if text == "exact" {
        return Ok(HvMethod::Exact);
    }
    let rest = text
        .strip_prefix("mc ")
        .ok_or_else(|| format!("unknown hv_method {text:?}"))?;
    let mut samples = None;
    let mut seed = None;
    for part in rest.split_whitespace() {
        match part.split_once('=') {
            Some(("samples", v)) => samples = v.parse::<usize>().ok(),
            Some(("seed", v)) => seed = v.parse::<u64>().ok(),
            _ => return Err(format!("unknown hv_method field {part:?}")),
        }
    }
    match (samples, seed) {
        (Some(samples), Some(seed)) => Ok(HvMethod::MonteCarlo { samples, seed }),
        _ => Err(format!("incomplete hv_method {text:?}")),
    }
}
