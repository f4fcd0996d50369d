//! Subcommand implementations: front precomputation, batch runs, metric
//! tables, Friedman ranks, plots and the property-check suite.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Context, Result};
use rayon::prelude::*;

use dynobj::dynamics::Setting;
use dynobj::frontier::{
    parse_front_archive, render_front_archive, sample_front, verify_inclusion,
    verify_inclusion_legacy, ReferenceFront, DEFAULT_GRID_CAP,
};
use dynobj::metrics::{aggregate_runs, friedman_ranks, mhv, RunKey};
use dynobj::optimizer::{run_dynamic, ChangeResponse, EaConfig};
use dynobj::problems::{legacy_f1_evaluate, legacy_g, DecisionVector, ProblemFamily, ProblemSpec};
use dynobj::subset::ObjectiveSubset;
use dynobj::textfmt::{format_full, format_mean_std};

use crate::config::{Cell, ExperimentConfig};
use crate::plot::{front_scatter, rank_bar_chart, ScatterPanel};
use crate::store::{self, StoredRun};

/// Enumerates problems, settings and algorithms.
pub fn cmd_list(config: Option<&ExperimentConfig>) -> String {
    let mut out = String::new();
    out.push_str("problems:\n");
    for family in ProblemFamily::ALL {
        out.push_str(&format!("  {:<12} minus-{}\n", family.name(), family.name()));
    }
    out.push_str("settings:\n");
    for setting in Setting::ALL {
        let schedule = dynobj::ObjectiveSchedule::builtin(setting, 1);
        let cards: Vec<String> = schedule
            .subsets()
            .iter()
            .map(|s| s.len().to_string())
            .collect();
        out.push_str(&format!(
            "  {:<4} m_max={:<3} objectives {}\n",
            setting.name(),
            setting.m_max(),
            cards.join(">")
        ));
    }
    if let Some(config) = config {
        for def in &config.settings {
            if Setting::from_name(&def.name).is_none() {
                out.push_str(&format!("  {:<4} m_max={:<3} (custom)\n", def.name, def.m_max));
            }
        }
    }
    out.push_str("algorithms:\n");
    out.push_str("  rvea-retain      keep all decisions, re-evaluate on the new subset\n");
    out.push_str("  rvea-restart<f>  replace fraction f in (0,1] with fresh uniform samples\n");
    out.push_str("  rvea-inherit     keep the new-subset nondominated set, refill by mutation\n");
    if let Some(config) = config {
        out.push_str(&format!("tau_t: {:?}\n", config.tau_ts));
        out.push_str(&format!("runs per cell: {}\n", config.runs));
    }
    out
}

/// Distinct `(problem, m_max, subset)` front jobs of a config.
fn front_jobs(config: &ExperimentConfig) -> Vec<(String, usize, ObjectiveSubset)> {
    let mut jobs = Vec::new();
    for problem in &config.problems {
        for setting in &config.settings {
            for subset in setting.distinct_subsets() {
                let job = (problem.clone(), setting.m_max, subset);
                if !jobs.contains(&job) {
                    jobs.push(job);
                }
            }
        }
    }
    jobs
}

/// Samples and persists every reference front the config needs. Existing
/// archives with a matching header are left untouched.
pub fn cmd_fronts(config: &ExperimentConfig) -> Result<String> {
    let jobs = front_jobs(config);
    let results: Vec<Result<String>> = jobs
        .par_iter()
        .map(|(problem, m_max, subset)| -> Result<String> {
            let spec = ProblemSpec::parse_id(problem, *m_max)?;
            let path = store::front_path(&config.out_dir, problem, *m_max, subset);
            let seed = config.front_seed(problem, *m_max, subset);
            if let Ok(existing) = std::fs::read_to_string(&path) {
                if let Ok(front) = parse_front_archive(&existing) {
                    if front.spec() == &spec
                        && front.subset() == subset
                        && front.seed() == seed
                        && front.budget() == config.front_budget
                    {
                        return Ok(format!("kept {}", path.display()));
                    }
                }
            }
            let front = sample_front(&spec, subset, &config.sample_options(seed))?;
            if front.degenerate() {
                if spec.minus() {
                    bail!(
                        "minus problem {problem} produced a degenerate front on subset {{{subset}}}"
                    );
                }
                eprintln!(
                    "warning: {problem} front on subset {{{subset}}} is degenerate (classical formulation)"
                );
            }
            store::atomic_write(&path, &render_front_archive(&front))?;
            Ok(format!("wrote {}", path.display()))
        })
        .collect();
    let mut lines = Vec::new();
    for result in results {
        lines.push(result?);
    }
    Ok(format!("{}\n{} fronts ready\n", lines.join("\n"), jobs.len()))
}

fn load_front(
    config: &ExperimentConfig,
    problem: &str,
    m_max: usize,
    subset: &ObjectiveSubset,
) -> Result<ReferenceFront> {
    let path = store::front_path(&config.out_dir, problem, m_max, subset);
    let text = std::fs::read_to_string(&path).with_context(|| {
        format!(
            "missing front archive {}; run `dynobj fronts` first",
            path.display()
        )
    })?;
    parse_front_archive(&text).map_err(|e| anyhow!("front archive {}: {e}", path.display()))
}

/// Executes all experiment cells, skipping those whose record already
/// exists with matching coordinates. Cells run in parallel; results do not
/// depend on the worker count.
pub fn cmd_run(config: &ExperimentConfig) -> Result<String> {
    // Fail fast if the fronts the later pipeline needs are absent.
    for (problem, m_max, subset) in front_jobs(config) {
        let path = store::front_path(&config.out_dir, &problem, m_max, &subset);
        if !path.exists() {
            bail!(
                "missing front archive {}; run `dynobj fronts` first",
                path.display()
            );
        }
    }
    let cells = config.cells();
    let done: Vec<Result<bool>> = cells
        .par_iter()
        .map(|cell| -> Result<bool> {
            let path = store::run_path(&config.out_dir, cell);
            if let Ok(existing) = std::fs::read_to_string(&path) {
                if let Ok(stored) = store::parse_run(&existing) {
                    if stored.key == cell_key(cell) && stored.run_index == cell.run_index {
                        return Ok(false);
                    }
                }
            }
            let stored = run_cell(config, cell)?;
            store::atomic_write(&path, &store::render_run(&stored))?;
            Ok(true)
        })
        .collect();
    let mut executed = 0usize;
    let mut skipped = 0usize;
    for item in done {
        if item? {
            executed += 1;
        } else {
            skipped += 1;
        }
    }
    Ok(format!("{executed} runs executed, {skipped} reused\n"))
}

fn cell_key(cell: &Cell) -> RunKey {
    RunKey {
        setting: cell.setting.clone(),
        problem: cell.problem.clone(),
        tau_t: cell.tau_t,
        algorithm: cell.algorithm.clone(),
        seed: cell.seed,
    }
}

/// Executes one experiment cell from its coordinates alone.
pub fn run_cell(config: &ExperimentConfig, cell: &Cell) -> Result<StoredRun> {
    let setting = config.setting(&cell.setting)?;
    let spec = config.spec(&cell.problem, setting)?;
    let schedule = setting.schedule(cell.tau_t)?;
    let response = ChangeResponse::parse_id(&cell.algorithm)
        .map_err(|e| anyhow!("cell algorithm: {e}"))?;
    let ea = EaConfig::new(cell.seed).with_population(config.population);
    let record = run_dynamic(&spec, &schedule, &ea, response)
        .map_err(|e| anyhow!("run {}: {e}", cell.setting))?;
    Ok(StoredRun {
        key: cell_key(cell),
        run_index: cell.run_index,
        population: config.population,
        warmup: schedule.warmup(),
        snapshots: record.snapshots,
    })
}

/// Per-run MHV rows plus the aggregated per-cell table with winner flags.
pub fn cmd_mhv(config: &ExperimentConfig) -> Result<String> {
    let cells = config.cells();
    let reports: Vec<Result<Option<dynobj::MhvReport>>> = cells
        .par_iter()
        .map(|cell| -> Result<Option<dynobj::MhvReport>> {
            let path = store::run_path(&config.out_dir, cell);
            let text = match std::fs::read_to_string(&path) {
                Ok(text) => text,
                Err(_) => return Ok(None),
            };
            let stored = store::parse_run(&text)
                .map_err(|e| anyhow!("run record {}: {e}", path.display()))?;
            let setting = config.setting(&cell.setting)?;
            let mut fronts = Vec::with_capacity(stored.snapshots.len());
            for snapshot in &stored.snapshots {
                fronts.push(load_front(config, &cell.problem, setting.m_max, &snapshot.subset)?);
            }
            let front_refs: Vec<&ReferenceFront> = fronts.iter().collect();
            let report = mhv(
                cell_key(cell),
                &stored.snapshots,
                &front_refs,
                config.mc_seed(cell),
            )
            .map_err(|e| anyhow!("MHV for {}: {e}", path.display()))?;
            Ok(Some(report))
        })
        .collect();

    let mut rows = Vec::new();
    let mut by_cell: BTreeMap<(String, String, usize, String), Vec<f64>> = BTreeMap::new();
    let mut missing = 0usize;
    for (cell, report) in cells.iter().zip(reports) {
        match report? {
            Some(report) => {
                by_cell
                    .entry((
                        cell.setting.clone(),
                        cell.problem.clone(),
                        cell.tau_t,
                        cell.algorithm.clone(),
                    ))
                    .or_default()
                    .push(report.mhv);
                rows.push(store::render_mhv_row(&report));
            }
            None => missing += 1,
        }
    }

    let mut rows_text = String::from("# dynobj mhv rows v1\n");
    rows_text.push_str("# columns: setting,problem,tau_t,algorithm,seed,mhv,stage_ratios...\n");
    for row in &rows {
        rows_text.push_str(row);
        rows_text.push('\n');
    }
    store::atomic_write(&store::mhv_rows_path(&config.out_dir), &rows_text)?;

    // Winner flags per (setting, problem, tau_t) group, by mean MHV.
    let mut winners: BTreeMap<(String, String, usize), (String, f64)> = BTreeMap::new();
    for ((setting, problem, tau, algorithm), values) in &by_cell {
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let group = (setting.clone(), problem.clone(), *tau);
        match winners.get(&group) {
            Some((_, best)) if *best >= mean => {}
            _ => {
                winners.insert(group, (algorithm.clone(), mean));
            }
        }
    }

    let mut table = String::from("# dynobj mhv table v1\n");
    table.push_str(
        "# columns: setting,problem,tau_t,algorithm,runs_expected,runs_found,mean,std,display,winner\n",
    );
    let mut incomplete = Vec::new();
    for ((setting, problem, tau, algorithm), values) in &by_cell {
        let found = values.len();
        let (mean, std, display) = if found >= 2 {
            let (mean, std) = aggregate_runs(values).expect("two or more runs");
            (format_full(mean), format_full(std), format_mean_std(mean, std))
        } else {
            let mean = values[0];
            (format_full(mean), String::new(), format!("{mean:.4} (n=1)"))
        };
        let winner = winners
            .get(&(setting.clone(), problem.clone(), *tau))
            .map(|(alg, _)| alg == algorithm)
            .unwrap_or(false);
        if found != config.runs {
            incomplete.push(format!(
                "{setting},{problem},tau={tau},{algorithm}: {found}/{} runs",
                config.runs
            ));
        }
        table.push_str(&format!(
            "{setting},{problem},{tau},{algorithm},{},{found},{mean},{std},{display},{}\n",
            config.runs,
            u8::from(winner)
        ));
    }
    if missing > 0 {
        table.push_str(&format!("# incomplete: {missing} run records absent\n"));
        for line in &incomplete {
            table.push_str(&format!("# incomplete: {line}\n"));
        }
    }
    store::atomic_write(&store::mhv_table_path(&config.out_dir), &table)?;

    let mut summary = format!(
        "{} rows -> {}\n",
        rows.len(),
        store::mhv_rows_path(&config.out_dir).display()
    );
    summary.push_str(&format!("table -> {}\n", store::mhv_table_path(&config.out_dir).display()));
    if missing > 0 {
        summary.push_str(&format!("warning: {missing} cells incomplete\n"));
        for line in incomplete {
            summary.push_str(&format!("  {line}\n"));
        }
    }
    Ok(summary)
}

/// Friedman rank summary per `(setting, tau_t)` plus one bar chart each.
pub fn cmd_rank(config: &ExperimentConfig) -> Result<String> {
    if config.algorithms.len() < 2 {
        bail!("Friedman ranking needs at least 2 algorithms");
    }
    let rows_path = store::mhv_rows_path(&config.out_dir);
    let text = std::fs::read_to_string(&rows_path)
        .with_context(|| format!("missing {}; run `dynobj mhv` first", rows_path.display()))?;
    match text.lines().next() {
        Some("# dynobj mhv rows v1") => {}
        other => bail!("unsupported MHV rows format: {other:?}"),
    }

    // cell mean MHV per (setting, tau, problem, algorithm)
    let mut cells: BTreeMap<(String, usize, String, String), Vec<f64>> = BTreeMap::new();
    for line in text.lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() < 6 {
            bail!("malformed MHV row {line:?}");
        }
        let key = (
            fields[0].to_string(),
            fields[2].parse::<usize>().context("tau_t column")?,
            fields[1].to_string(),
            fields[3].to_string(),
        );
        cells.entry(key).or_default().push(
            fields[5]
                .parse::<f64>()
                .context("mhv column")?,
        );
    }

    let k = config.algorithms.len();
    let mut out = String::new();
    let mut chart_files = Vec::new();
    let mut any_failed = false;

    for setting in &config.settings {
        let mut summary = String::from("# dynobj rank summary v1\n");
        summary.push_str(&format!("# setting: {}\n", setting.name));
        summary.push_str("# columns: tau_t,algorithm,avg_rank,cells\n");
        let mut checks = Vec::new();
        for tau in setting.taus(config) {
            let mut table: Vec<Vec<f64>> = Vec::new();
            for problem in &config.problems {
                let mut row = Vec::with_capacity(k);
                for algorithm in &config.algorithms {
                    let key = (setting.name.clone(), tau, problem.clone(), algorithm.clone());
                    let values = cells.get(&key).ok_or_else(|| {
                        anyhow!(
                            "missing MHV cell: setting={}, tau_t={tau}, problem={problem}, algorithm={algorithm}",
                            setting.name
                        )
                    })?;
                    row.push(values.iter().sum::<f64>() / values.len() as f64);
                }
                table.push(row);
            }
            let ranks = friedman_ranks(&table).map_err(|e| anyhow!("{e}"))?;
            for (algorithm, rank) in config.algorithms.iter().zip(&ranks) {
                summary.push_str(&format!(
                    "{tau},{algorithm},{},{}\n",
                    format_full(*rank),
                    table.len()
                ));
            }
            let expected = (k * (k + 1)) as f64 / 2.0;
            let all_ok = table.iter().all(|cell| {
                (dynobj::metrics::rank_descending(cell).iter().sum::<f64>() - expected).abs()
                    < 1e-9
            });
            any_failed |= !all_ok;
            checks.push(format!(
                "# check: tau_t={tau} per_cell_rank_sum={expected} status={}",
                if all_ok { "ok" } else { "FAILED" }
            ));

            let entries: Vec<(String, f64)> = config
                .algorithms
                .iter()
                .cloned()
                .zip(ranks.iter().copied())
                .collect();
            let chart = rank_bar_chart(
                &format!("Friedman ranks: setting {}, tau_t = {tau}", setting.name),
                &entries,
                k,
            );
            let chart_path = store::plots_dir(&config.out_dir)
                .join(format!("rank_{}_t{tau}.svg", setting.name));
            store::atomic_write(&chart_path, &chart)?;
            chart_files.push(chart_path.display().to_string());
        }
        for check in &checks {
            summary.push_str(check);
            summary.push('\n');
        }
        let path = store::rank_summary_path(&config.out_dir, &setting.name);
        store::atomic_write(&path, &summary)?;
        out.push_str(&format!("summary -> {}\n", path.display()));
    }

    for chart in chart_files {
        out.push_str(&format!("chart  -> {chart}\n"));
    }
    if any_failed {
        bail!("per-cell rank sums failed verification");
    }
    Ok(out)
}

/// Scatter plot of the front for the objective pair `{i, j}`, normalized
/// when nondegenerate. Missing archives trigger on-demand sampling.
pub fn cmd_front_plot(
    config: &ExperimentConfig,
    problems: &[String],
    pair: (usize, usize),
    m_max: usize,
) -> Result<String> {
    let subset = ObjectiveSubset::new(vec![pair.0, pair.1])
        .map_err(|e| anyhow!("objective pair: {e}"))?;
    let mut panels = Vec::new();
    for problem in problems {
        let spec = ProblemSpec::parse_id(problem, m_max)?;
        let path = store::front_path(&config.out_dir, problem, m_max, &subset);
        let front = match std::fs::read_to_string(&path) {
            Ok(text) => parse_front_archive(&text)
                .map_err(|e| anyhow!("front archive {}: {e}", path.display()))?,
            Err(_) => {
                eprintln!(
                    "warning: no archive for {problem} subset {{{subset}}}; sampling on demand"
                );
                let seed = config.front_seed(problem, m_max, &subset);
                let front = sample_front(&spec, &subset, &config.sample_options(seed))?;
                store::atomic_write(&path, &render_front_archive(&front))?;
                front
            }
        };
        let points: Vec<(f64, f64)> = if front.degenerate() {
            front.points().iter().map(|p| (p[0], p[1])).collect()
        } else {
            dynobj::metrics::normalize(front.points(), front.ideal(), front.nadir())
                .map_err(|e| anyhow!("normalize: {e}"))?
                .into_iter()
                .map(|p| (p[0], p[1]))
                .collect()
        };
        let suffix = if front.degenerate() { " (degenerate, raw)" } else { " (normalized)" };
        panels.push(ScatterPanel {
            title: format!("{problem}{suffix}"),
            points,
            x_label: format!("f{}", pair.0),
            y_label: format!("f{}", pair.1),
        });
    }
    let svg = front_scatter(&panels);
    let name = format!(
        "front_{}_m{m_max}_f{}-f{}.svg",
        problems.join("_vs_"),
        pair.0,
        pair.1
    );
    let path = store::plots_dir(&config.out_dir).join(name);
    store::atomic_write(&path, &svg)?;
    Ok(format!("plot -> {}\n", path.display()))
}

/// Runs the built-in property checks: the legacy worked example, the
/// subset-inclusion property at desk scale, its legacy violation, the
/// degeneracy dichotomy and function preservation.
pub fn cmd_verify() -> Result<String> {
    let mut out = String::new();
    let mut failures = 0usize;
    let mut check = |name: &str, pass: bool, detail: String| {
        if !pass {
            failures += 1;
        }
        out.push_str(&format!(
            "{} {name}: {detail}\n",
            if pass { "PASS" } else { "FAIL" }
        ));
    };

    // Legacy worked example.
    {
        let x = DecisionVector::new(vec![0.5, 0.5, 0.5]);
        let g2 = legacy_g(x.values(), 2);
        let g3 = legacy_g(x.values(), 3);
        let f2 = legacy_f1_evaluate(&x, 2).map(|f| f.values()[0]).unwrap_or(f64::NAN);
        let f3 = legacy_f1_evaluate(&x, 3).map(|f| f.values()[0]).unwrap_or(f64::NAN);
        check(
            "legacy-inconsistency",
            g2 == 0.0 && g3 == 0.0 && f2 == 0.5 && f3 == 0.25,
            format!("g(m=2)={g2}, g(m=3)={g3}, f1(m=2)={f2}, f1(m=3)={f3}"),
        );
    }

    // Inclusion on the proposed suite at desk scale.
    for family in [ProblemFamily::Dtlz2, ProblemFamily::Dtlz1] {
        let spec = ProblemSpec::new(family, true, 3, 4, 0)?;
        let a = ObjectiveSubset::new(vec![1, 2])?;
        let b = ObjectiveSubset::new(vec![1, 2, 3])?;
        let report = verify_inclusion(&spec, &a, &b, 8, DEFAULT_GRID_CAP)?;
        check(
            &format!("inclusion-{}", spec.id()),
            report.holds,
            format!(
                "{} of {} grid optima under {{1,2}} remain optimal under {{1,2,3}}",
                if report.holds { report.optimal_under_a } else { 0 },
                report.optimal_under_a
            ),
        );
    }

    // The legacy analogue is vacuous or violated.
    {
        let report = verify_inclusion_legacy(3, 2, 3, 8, DEFAULT_GRID_CAP)?;
        check(
            "legacy-inclusion-analogue",
            report.violated_or_vacuous(),
            format!(
                "shared objectives consistent: {}, max discrepancy {:.3}",
                report.shared_objectives_consistent, report.max_shared_discrepancy
            ),
        );
    }

    // Degeneracy dichotomy on the DTLZ1 pair front.
    {
        let subset = ObjectiveSubset::new(vec![1, 2])?;
        let opts = dynobj::SampleOptions::new(7).with_budget(20_000);
        let classical = ProblemSpec::with_default_dims(ProblemFamily::Dtlz1, false, 3)?;
        let front = sample_front(&classical, &subset, &opts)?;
        let collapsed = front.degenerate()
            && front.points().len() == 1
            && front.points()[0].iter().all(|v| v.abs() < 1e-9);
        check(
            "degeneracy-classical-dtlz1",
            collapsed,
            format!("{} point(s), degenerate={}", front.points().len(), front.degenerate()),
        );
        let minus = ProblemSpec::with_default_dims(ProblemFamily::Dtlz1, true, 3)?;
        let front = sample_front(&minus, &subset, &opts)?;
        check(
            "degeneracy-minus-dtlz1",
            !front.degenerate() && front.points().len() >= 100,
            format!("{} nondominated points", front.points().len()),
        );
    }

    // Function preservation across subsets, all 20 problem variants.
    {
        use dynobj::frontier::sample_cloud;
        let _ = sample_cloud; // spot check uses direct evaluation below
        let mut worst: u64 = 0;
        let mut checked = 0usize;
        for family in ProblemFamily::ALL {
            for minus in [false, true] {
                let spec = ProblemSpec::with_default_dims(family, minus, 6)?;
                let bounds = spec.decision_bounds();
                let a = ObjectiveSubset::new(vec![1, 2, 4, 5])?;
                let b = ObjectiveSubset::new(vec![2, 3, 4, 6])?;
                for trial in 0..100u64 {
                    let x: Vec<f64> = bounds
                        .iter()
                        .enumerate()
                        .map(|(i, &(lo, hi))| {
                            let t = ((trial + 1) as f64 * (i + 1) as f64 * 0.6180339887498949)
                                .fract();
                            lo + t * (hi - lo)
                        })
                        .collect();
                    let x = DecisionVector::new(x);
                    let fa = spec.evaluate_subset(&x, &a)?;
                    let fb = spec.evaluate_subset(&x, &b)?;
                    for i in [2usize, 4] {
                        let va = fa.value_of(i).expect("shared index");
                        let vb = fb.value_of(i).expect("shared index");
                        worst = worst.max(va.to_bits() ^ vb.to_bits());
                        checked += 1;
                    }
                }
            }
        }
        check(
            "function-preservation",
            worst == 0,
            format!("{checked} shared values bit-compared"),
        );
    }

    if failures > 0 {
        out.push_str(&format!("{failures} check(s) failed\n"));
        bail!("{out}");
    }
    out.push_str("all checks passed\n");
    Ok(out)
}

/// Parses the `i,j` pair argument of `front-plot`.
pub fn parse_pair(text: &str) -> Result<(usize, usize)> {
    let (a, b) = text
        .split_once(',')
        .ok_or_else(|| anyhow!("expected a pair like 1,2"))?;
    let i: usize = a.trim().parse().context("first index")?;
    let j: usize = b.trim().parse().context("second index")?;
    if i == 0 || j == 0 || i == j {
        bail!("pair must be two distinct 1-based indices");
    }
    Ok((i, j))
}
