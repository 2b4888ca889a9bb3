use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use tvgc::clustering::{static_sc, tv_cluster_multi, tv_cluster_two};
use tvgc::generators::{sbm_tv_sequence, SbmTvParams};
use tvgc::io::{read_labels, read_tvg, write_labels, write_tvg};
use tvgc::metrics::{accuracy_report, eigengap_profile};
use tvgc::pointcloud::{downsample, knn_graph, load_frames};
use tvgc::solver::SolveResult;
use tvgc::{LabelSequence, TVGraphSequence};

use crate::args::{
    ClusterArgs, Common, EigengapArgs, EvaluateArgs, GenerateArgs, KnnArgs, Method, Preset,
};
use crate::config::FileConfig;
use crate::error::{CliError, CliResult};
use crate::svg::accuracy_chart;

pub const GRAPH_FILE: &str = "graph.tvg";
pub const TRUTH_FILE: &str = "truth.lbl";
pub const LABELS_FILE: &str = "labels.lbl";
pub const REPORT_FILE: &str = "report.json";

/// One input found under a path: either the path itself or a `trial_*`
/// subdirectory of it.
#[derive(Debug, Clone)]
struct Unit {
    trial: Option<String>,
    path: PathBuf,
}

impl Unit {
    fn label(&self) -> &str {
        self.trial.as_deref().unwrap_or("run")
    }

    fn out_dir(&self, out: &Path) -> PathBuf {
        match &self.trial {
            Some(t) => out.join(t),
            None => out.to_path_buf(),
        }
    }
}

fn trial_name(i: usize) -> String {
    format!("trial_{i:03}")
}

fn resolve(input: &Path, file: &str, limit: Option<usize>) -> CliResult<Vec<Unit>> {
    if !input.exists() {
        return Err(CliError::Validation(format!(
            "{}: no such file or directory",
            input.display()
        )));
    }
    if input.is_file() {
        return Ok(vec![Unit {
            trial: None,
            path: input.to_path_buf(),
        }]);
    }
    if input.join(file).is_file() {
        return Ok(vec![Unit {
            trial: None,
            path: input.join(file),
        }]);
    }
    let entries = fs::read_dir(input).map_err(|e| CliError::io(input, e))?;
    let mut units = Vec::new();
    for entry in entries {
        let entry = entry.map_err(|e| CliError::io(input, e))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        let path = entry.path().join(file);
        if name.starts_with("trial_") && path.is_file() {
            units.push(Unit {
                trial: Some(name),
                path,
            });
        }
    }
    if units.is_empty() {
        return Err(CliError::missing(input.to_path_buf(), file));
    }
    units.sort_by(|a, b| a.trial.cmp(&b.trial));
    if let Some(n) = limit {
        units.truncate(n);
    }
    Ok(units)
}

fn trial_limit(common: &Common, file: &FileConfig) -> CliResult<Option<usize>> {
    match common.trials.or(file.trials) {
        Some(0) => Err(CliError::Validation("--trials must be at least 1".into())),
        t => Ok(t),
    }
}

fn create_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value).map_err(|e| CliError::io(path, e))?;
    text.push('\n');
    write_text(path, &text)
}

fn write_csv(path: &Path, header: &[String], rows: &[Vec<String>]) -> CliResult<()> {
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::io(path, e))?;
    w.write_record(header).map_err(|e| CliError::io(path, e))?;
    for row in rows {
        w.write_record(row).map_err(|e| CliError::io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn generate_sbm(args: &GenerateArgs) -> CliResult<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let base = match args.preset {
        Preset::Dense => SbmTvParams::dense(0),
        Preset::Sparse => SbmTvParams::sparse(0),
    };
    let params = file.sbm(base, &args.overrides());
    params.validate()?;
    let trials = trial_limit(&args.common, &file)?.unwrap_or(1);

    let runs = (0..trials)
        .into_par_iter()
        .map(|i| {
            let p = SbmTvParams {
                seed: params.seed.wrapping_add(i as u64),
                ..params
            };
            sbm_tv_sequence(&p).map(|(seq, truth)| (p, seq, truth))
        })
        .collect::<Result<Vec<_>, _>>()?;

    for (i, (p, seq, truth)) in runs.iter().enumerate() {
        let dir = args.common.out.join(trial_name(i));
        create_dir(&dir)?;
        write_tvg(&dir.join(GRAPH_FILE), seq)?;
        write_labels(&dir.join(TRUTH_FILE), truth)?;
        write_json(&dir.join("params.json"), p)?;
        let edges: usize = seq.graphs().iter().map(|g| g.edge_count()).sum();
        println!(
            "{}: seed={} N={} T={} K={} edges={} ({:.1}/frame)",
            trial_name(i),
            p.seed,
            seq.n(),
            seq.t_len(),
            p.k,
            edges,
            edges as f64 / seq.t_len() as f64
        );
    }
    Ok(())
}

pub fn build_knn(args: &KnnArgs) -> CliResult<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let seed = args.common.seed.or(file.seed).unwrap_or(0);
    let cloud = load_frames(&args.input)?;
    let target = args.target_n.unwrap_or(cloud.n());
    if target > cloud.n() {
        return Err(CliError::Validation(format!(
            "--target-n {target} exceeds the {} points per frame",
            cloud.n()
        )));
    }
    if args.k == 0 || args.k >= target {
        return Err(CliError::Validation(format!(
            "--k must be in 1..{target}, got {}",
            args.k
        )));
    }
    let cloud = downsample(&cloud, target, seed)?;
    let graphs = cloud
        .frames()
        .par_iter()
        .map(|pts| knn_graph(pts, args.k))
        .collect::<Result<Vec<_>, _>>()?;
    let seq = TVGraphSequence::new(graphs)?;

    create_dir(&args.common.out)?;
    write_tvg(&args.common.out.join(GRAPH_FILE), &seq)?;
    println!(
        "N={} T={} k={} edges/frame={:.1}",
        seq.n(),
        seq.t_len(),
        args.k,
        seq.graphs().iter().map(|g| g.edge_count()).sum::<usize>() as f64 / seq.t_len() as f64
    );
    Ok(())
}

#[derive(Debug, Serialize)]
struct LevelReport {
    iterations: usize,
    converged: bool,
    final_objective: f64,
    beta: f64,
}

impl From<&SolveResult> for LevelReport {
    fn from(r: &SolveResult) -> Self {
        LevelReport {
            iterations: r.iters,
            converged: r.converged,
            final_objective: r.final_objective(),
            beta: r.beta,
        }
    }
}

#[derive(Debug, Serialize)]
struct SolverReport {
    alpha: f64,
    seed: u64,
    levels: Vec<LevelReport>,
}

#[derive(Debug, Serialize)]
struct RunReport {
    method: &'static str,
    k: usize,
    n: usize,
    t_len: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    solver: Option<SolverReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_s: Option<f64>,
}

pub fn cluster(args: &ClusterArgs) -> CliResult<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let flags = args.overrides();
    let cfg = file.solver(&flags);
    cfg.validate()?;
    let k = flags
        .k
        .or(file.k)
        .ok_or_else(|| CliError::Validation("--k is required".into()))?;
    if k < 2 {
        return Err(CliError::Validation(format!(
            "--k must be at least 2, got {k}"
        )));
    }
    let units = resolve(&args.input, GRAPH_FILE, trial_limit(&args.common, &file)?)?;

    let runs = units
        .par_iter()
        .enumerate()
        .map(|(i, unit)| -> CliResult<(LabelSequence, RunReport, f64)> {
            let seq = read_tvg(&unit.path)?;
            let seed = cfg.seed.wrapping_add(i as u64);
            let start = Instant::now();
            let (labels, solver) = match args.method {
                Method::StaticSc => (static_sc(&seq, k, seed)?, None),
                Method::TvPds => {
                    let cfg = tvgc::solver::SolverConfig { seed, ..cfg };
                    let (labels, solves) = if k == 2 {
                        let (labels, res) = tv_cluster_two(&seq, &cfg)?;
                        (labels, vec![res])
                    } else {
                        let out = tv_cluster_multi(&seq, k, &cfg)?;
                        (out.labels, out.solves)
                    };
                    let levels = solves.iter().map(LevelReport::from).collect();
                    (
                        labels,
                        Some(SolverReport {
                            alpha: cfg.alpha,
                            seed,
                            levels,
                        }),
                    )
                }
            };
            let secs = start.elapsed().as_secs_f64();
            let report = RunReport {
                method: args.method.name(),
                k,
                n: seq.n(),
                t_len: seq.t_len(),
                solver,
                wall_time_s: args.record_time.then_some(secs),
            };
            Ok((labels, report, secs))
        })
        .collect::<CliResult<Vec<_>>>()?;

    for (unit, (labels, report, secs)) in units.iter().zip(&runs) {
        let dir = unit.out_dir(&args.common.out);
        create_dir(&dir)?;
        write_labels(&dir.join(LABELS_FILE), labels)?;
        write_json(&dir.join(REPORT_FILE), report)?;
        let detail = match &report.solver {
            Some(s) => s
                .levels
                .iter()
                .map(|l| {
                    format!(
                        " iters={} converged={} objective={:.6}",
                        l.iterations, l.converged, l.final_objective
                    )
                })
                .collect::<String>(),
            None => String::new(),
        };
        println!(
            "{}: {} k={}{} time={secs:.2}s",
            unit.label(),
            report.method,
            k,
            detail
        );
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct TrialSummary {
    trial: String,
    mean: f64,
    min: f64,
    mismatch_total: usize,
}

#[derive(Debug, Serialize)]
struct EvalSummary {
    mean: f64,
    min: f64,
    mismatch_total: usize,
    trials: Vec<TrialSummary>,
}

pub fn evaluate(args: &EvaluateArgs) -> CliResult<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let limit = trial_limit(&args.common, &file)?;
    let est_units = resolve(&args.est, LABELS_FILE, limit)?;
    let truth_units = resolve(&args.truth, TRUTH_FILE, None)?;

    let pairs: Vec<(Unit, Unit)> = est_units
        .into_iter()
        .map(|e| {
            let t = match (&e.trial, truth_units.as_slice()) {
                (None, [only]) if only.trial.is_none() => Some(only),
                (Some(name), _) => truth_units.iter().find(|t| t.trial.as_ref() == Some(name)),
                _ => None,
            };
            let t = t.ok_or_else(|| {
                CliError::Validation(format!("no ground truth for {}", e.label()))
            })?;
            Ok((e, t.clone()))
        })
        .collect::<CliResult<_>>()?;

    let reports = pairs
        .par_iter()
        .map(|(e, t)| {
            let est = read_labels(&e.path)?;
            let truth = read_labels(&t.path)?;
            if est.n() != truth.n() || est.t_len() != truth.t_len() {
                return Err(CliError::Validation(format!(
                    "{}: shape {}x{} does not match truth {}x{}",
                    e.path.display(),
                    est.t_len(),
                    est.n(),
                    truth.t_len(),
                    truth.n()
                )));
            }
            Ok(accuracy_report(est.frames(), truth.frames())?)
        })
        .collect::<CliResult<Vec<_>>>()?;

    let t_len = reports[0].per_frame.len();
    if reports.iter().any(|r| r.per_frame.len() != t_len) {
        return Err(CliError::Validation("trials differ in frame count".into()));
    }
    let names: Vec<String> = pairs
        .iter()
        .enumerate()
        .map(|(i, (e, _))| e.trial.clone().unwrap_or_else(|| trial_name(i)))
        .collect();
    let mean_curve: Vec<f64> = (0..t_len)
        .map(|t| reports.iter().map(|r| r.per_frame[t]).sum::<f64>() / reports.len() as f64)
        .collect();

    let mut header = vec!["t".to_string()];
    header.extend(names.iter().cloned());
    header.push("mean".into());
    let rows: Vec<Vec<String>> = (0..t_len)
        .map(|t| {
            let mut row = vec![t.to_string()];
            row.extend(reports.iter().map(|r| r.per_frame[t].to_string()));
            row.push(mean_curve[t].to_string());
            row
        })
        .collect();

    let trials: Vec<TrialSummary> = names
        .iter()
        .zip(&reports)
        .map(|(name, r)| TrialSummary {
            trial: name.clone(),
            mean: r.mean,
            min: r.per_frame.iter().copied().fold(f64::INFINITY, f64::min),
            mismatch_total: r.mismatch_per_frame.iter().sum(),
        })
        .collect();
    let summary = EvalSummary {
        mean: mean_curve.iter().sum::<f64>() / t_len as f64,
        min: trials.iter().map(|s| s.min).fold(f64::INFINITY, f64::min),
        mismatch_total: trials.iter().map(|s| s.mismatch_total).sum(),
        trials,
    };

    let out = &args.common.out;
    create_dir(out)?;
    write_csv(&out.join("accuracy.csv"), &header, &rows)?;
    write_json(&out.join("summary.json"), &summary)?;
    if args.svg {
        let curves: Vec<Vec<f64>> = reports.iter().map(|r| r.per_frame.clone()).collect();
        write_text(
            &out.join("accuracy.svg"),
            &accuracy_chart(&curves, &mean_curve),
        )?;
    }
    println!(
        "trials={} mean={:.4} min={:.4} mismatches={}",
        reports.len(),
        summary.mean,
        summary.min,
        summary.mismatch_total
    );
    Ok(())
}

pub fn eigengap(args: &EigengapArgs) -> CliResult<()> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    if args.m < 2 {
        return Err(CliError::Validation(format!(
            "--m must be at least 2, got {}",
            args.m
        )));
    }
    let units = resolve(&args.input, GRAPH_FILE, trial_limit(&args.common, &file)?)?;
    let profiles = units
        .par_iter()
        .map(|u| {
            let seq = read_tvg(&u.path)?;
            seq.laplacians()
                .par_iter()
                .map(|l| eigengap_profile(l, args.m))
                .collect::<Result<Vec<_>, _>>()
                .map_err(CliError::from)
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut header = vec!["t".to_string()];
    header.extend((1..args.m).map(|i| format!("gap_{i}")));
    for (unit, profile) in units.iter().zip(&profiles) {
        let dir = unit.out_dir(&args.common.out);
        create_dir(&dir)?;
        let rows: Vec<Vec<String>> = profile
            .iter()
            .enumerate()
            .map(|(t, gaps)| {
                let mut row = vec![t.to_string()];
                row.extend(gaps.iter().map(|g| g.to_string()));
                row
            })
            .collect();
        write_csv(&dir.join("eigengap.csv"), &header, &rows)?;
        let means: Vec<String> = (0..args.m - 1)
            .map(|j| {
                let m = profile.iter().map(|g| g[j]).sum::<f64>() / profile.len() as f64;
                format!("{m:.4}")
            })
            .collect();
        println!("{}: mean gaps [{}]", unit.label(), means.join(", "));
    }
    Ok(())
}
