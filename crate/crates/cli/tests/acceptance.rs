//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

#[path = "../../core/tests/support/oracles.rs"]
mod oracles;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use oracles::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tvgc::clustering::{static_sc, tv_cluster_multi, tv_cluster_two};
use tvgc::eigen::smallest_eigenvectors;
use tvgc::generators::{sbm_tv_sequence, SbmTvParams};
use tvgc::metrics::{accuracy_report, eigengap_profile, mismatch_count, pair_accuracy};
use tvgc::pointcloud::{articulated_blobs, knn_graph};
use tvgc::solver::*;
use tvgc::{LabelSequence, TVGraphSequence};

/// Alpha for the synthetic SBM experiments.
const EXPERIMENT_ALPHA: f64 = 50.0;
const TRIALS: u64 = 10;

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: String) -> Verdict {
    Verdict { pass, detail }
}

/// Feasibility residuals of every converged solve seen by other criteria.
#[derive(Default)]
struct FeasibilityLog {
    checked: usize,
    worst_mean: f64,
    worst_sphere: f64,
    failures: usize,
}

impl FeasibilityLog {
    fn record(&mut self, res: &SolveResult, cfg: &SolverConfig) {
        if !res.converged {
            return;
        }
        let n = res.c.n() as f64;
        let eps = cfg.epsilon_for(res.c.n());
        for f in res.c.frames() {
            let mean = f.iter().sum::<f64>().abs();
            let sphere = (f.iter().map(|v| v * v).sum::<f64>() - n).abs();
            self.checked += 1;
            self.worst_mean = self.worst_mean.max(mean - eps);
            self.worst_sphere = self.worst_sphere.max(sphere / n);
            if mean > eps + 1e-8 || sphere > 1e-6 * n {
                self.failures += 1;
            }
        }
    }
}

fn random_vec(rng: &mut ChaCha8Rng, n: usize, scale: f64) -> Vec<f64> {
    (0..n).map(|_| rng.random_range(-scale..scale)).collect()
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let mut v = f();
    let took = start.elapsed();
    v.detail.push_str(&format!(" [{:.2}s]", took.as_secs_f64()));
    if let Some(limit) = limit {
        if took > limit {
            v.pass = false;
            v.detail.push_str(&format!(" exceeds {}s", limit.as_secs()));
        }
    }
    v
}

fn prox_oracles() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let (mut sphere, mut slab, mut soft) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..100 {
        let n = rng.random_range(2..=5);
        let z = random_vec(&mut rng, n, 4.0);
        let v = random_vec(&mut rng, n, 2.0);
        let eps = rng.random_range(0.0..1.0);
        let tau = rng.random_range(0.0..2.0);
        sphere = sphere.max(max_abs_diff(
            &prox_sphere(&z).unwrap(),
            &sphere_projection_oracle(&z),
        ));
        slab = slab.max(max_abs_diff(
            &prox_slab(&z, &v, eps).unwrap(),
            &slab_projection_oracle(&z, &v, eps),
        ));
        soft = soft.max(max_abs_diff(
            &soft_threshold(&z, tau),
            &soft_threshold_oracle(&z, tau),
        ));
    }
    let worst = sphere.max(slab).max(soft);
    verdict(
        worst <= 1e-6,
        format!("max err sphere {sphere:.1e}, slab {slab:.1e}, soft {soft:.1e}"),
    )
}

fn moreau() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let (mut l1, mut slab) = (0.0f64, 0.0f64);
    let residual = |x: &[f64], y: &[f64], z: &[f64]| {
        let sum: Vec<f64> = x.iter().zip(y).map(|(a, b)| a + b).collect();
        max_abs_diff(&sum, z)
    };
    for _ in 0..100 {
        let n = rng.random_range(2..=6);
        let z = random_vec(&mut rng, n, 5.0);
        let gamma = rng.random_range(0.05..5.0);
        let alpha = rng.random_range(0.0..3.0);
        // prox of (γf)* is the conjugate prox of γf at unit step
        let x = L1Norm { alpha }.prox(&z, gamma);
        let y = prox_conjugate(
            &L1Norm {
                alpha: gamma * alpha,
            },
            1.0,
            &z,
        );
        l1 = l1.max(residual(&x, &y, &z)).max(max_abs_diff(
            &y,
            &l1_scaled_conjugate_prox(&z, gamma, alpha),
        ));

        let v = random_vec(&mut rng, n, 2.0);
        let dirs = vec![v.clone()];
        let f = SlabIndicator {
            directions: &dirs,
            eps: alpha / 3.0,
        };
        let x = f.prox(&z, gamma);
        let y = prox_conjugate(&f, 1.0, &z);
        slab = slab
            .max(residual(&x, &y, &z))
            .max(max_abs_diff(&y, &slab_conjugate_prox(&z, &v, alpha / 3.0)));
    }
    verdict(
        l1 <= 1e-12 && slab <= 1e-12,
        format!("max residual l1 {l1:.1e}, slab {slab:.1e}"),
    )
}

fn same_partition(a: &[usize], b: &[usize]) -> bool {
    pair_accuracy(a, b).unwrap() == 1.0
}

fn static_consistency(log: &mut FeasibilityLog) -> Verdict {
    let (mut single, mut decoupled, mut frames) = (0, 0, 0);
    for seed in 0..TRIALS {
        let p = SbmTvParams {
            n_per_cluster: 20,
            k: 2,
            t_len: 5,
            p_intra: 0.9,
            p_inter: 0.05,
            flip_prob: 0.0,
            seed,
        };
        let (seq, _) = sbm_tv_sequence(&p).unwrap();
        let fiedler: Vec<Vec<usize>> = seq
            .laplacians()
            .iter()
            .map(|l| {
                let e = smallest_eigenvectors(l, 2).unwrap();
                e.vectors[1].iter().map(|&v| usize::from(v < 0.0)).collect()
            })
            .collect();

        let one = TVGraphSequence::new(vec![seq.graphs()[0].clone()]).unwrap();
        let cfg = SolverConfig {
            seed,
            ..Default::default()
        };
        let (labels, res) = tv_cluster_two(&one, &cfg).unwrap();
        log.record(&res, &cfg);
        single += usize::from(same_partition(labels.frame(0), &fiedler[0]));

        let cfg = SolverConfig {
            alpha: 0.0,
            seed,
            ..Default::default()
        };
        let (labels, res) = tv_cluster_two(&seq, &cfg).unwrap();
        log.record(&res, &cfg);
        for (est, f) in labels.frames().iter().zip(&fiedler) {
            frames += 1;
            decoupled += usize::from(same_partition(est, f));
        }
    }
    let a = single as f64 / TRIALS as f64;
    let b = decoupled as f64 / frames as f64;
    verdict(
        a >= 0.95 && b >= 0.95,
        format!("T=1 match {single}/{TRIALS}, alpha=0 match {decoupled}/{frames} frames"),
    )
}

struct TrialOutcome {
    tv_acc: f64,
    static_acc: f64,
    tv_mismatch: usize,
    static_mismatch: usize,
}

fn total_mismatch(labels: &LabelSequence) -> usize {
    labels
        .frames()
        .windows(2)
        .map(|w| mismatch_count(&w[1], &w[0]).unwrap())
        .sum()
}

fn run_experiment(
    base: fn(u64) -> SbmTvParams,
    log: &mut FeasibilityLog,
) -> (Vec<TrialOutcome>, Duration) {
    let start = Instant::now();
    let mut out = Vec::new();
    for seed in 0..TRIALS {
        let p = SbmTvParams {
            n_per_cluster: 30,
            t_len: 50,
            ..base(seed)
        };
        let (seq, truth) = sbm_tv_sequence(&p).unwrap();
        let cfg = SolverConfig {
            alpha: EXPERIMENT_ALPHA,
            seed,
            ..Default::default()
        };
        let tv = tv_cluster_multi(&seq, p.k, &cfg).unwrap();
        tv.solves.iter().for_each(|r| log.record(r, &cfg));
        let st = static_sc(&seq, p.k, seed).unwrap();
        out.push(TrialOutcome {
            tv_acc: accuracy_report(tv.labels.frames(), truth.frames())
                .unwrap()
                .mean,
            static_acc: accuracy_report(st.frames(), truth.frames()).unwrap().mean,
            tv_mismatch: total_mismatch(&tv.labels),
            static_mismatch: total_mismatch(&st),
        });
    }
    (out, start.elapsed())
}

fn accuracy_gap(trials: &[TrialOutcome], margin: f64, took: Duration) -> Verdict {
    let m = trials.len() as f64;
    let tv = trials.iter().map(|t| t.tv_acc).sum::<f64>() / m;
    let st = trials.iter().map(|t| t.static_acc).sum::<f64>() / m;
    verdict(
        tv >= st + margin && took < Duration::from_secs(300),
        format!(
            "tv-pds {tv:.4} vs static-sc {st:.4} (need +{margin:.2}) [{:.2}s]",
            took.as_secs_f64()
        ),
    )
}

fn smoothness(dense: &[TrialOutcome], sparse: &[TrialOutcome]) -> Verdict {
    let wins = |ts: &[TrialOutcome]| {
        ts.iter()
            .filter(|t| t.tv_mismatch <= t.static_mismatch)
            .count()
    };
    let totals = |ts: &[TrialOutcome]| {
        (
            ts.iter().map(|t| t.tv_mismatch).sum::<usize>(),
            ts.iter().map(|t| t.static_mismatch).sum::<usize>(),
        )
    };
    let (wd, ws) = (wins(dense), wins(sparse));
    let (td, ts) = (totals(dense), totals(sparse));
    verdict(
        wd >= 8 && ws >= 8,
        format!(
            "tv <= static in dense {wd}/10, sparse {ws}/10 (mismatches dense {} vs {}, sparse {} vs {})",
            td.0, td.1, ts.0, ts.1
        ),
    )
}

fn mean_gap(p: &SbmTvParams, index: usize) -> f64 {
    let (seq, _) = sbm_tv_sequence(p).unwrap();
    let gaps: Vec<f64> = seq
        .laplacians()
        .iter()
        .map(|l| eigengap_profile(l, 4).unwrap()[index])
        .collect();
    gaps.iter().sum::<f64>() / gaps.len() as f64
}

fn eigengap() -> Verdict {
    let mut wins = 0;
    let (mut dsum, mut ssum) = (0.0, 0.0);
    for seed in 0..TRIALS {
        // λ4 − λ3 is the third consecutive gap
        let d = mean_gap(&SbmTvParams::dense(seed), 2);
        let s = mean_gap(&SbmTvParams::sparse(seed), 2);
        wins += usize::from(d > s);
        dsum += d;
        ssum += s;
    }
    let m = TRIALS as f64;
    verdict(
        wins == TRIALS as usize,
        format!(
            "dense > sparse in {wins}/{TRIALS} seeds (mean gap {:.3} vs {:.3})",
            dsum / m,
            ssum / m
        ),
    )
}

fn generator_stats() -> Verdict {
    let mut notes = Vec::new();
    let mut pass = true;
    for (name, base) in [
        ("dense", SbmTvParams::dense as fn(u64) -> SbmTvParams),
        ("sparse", SbmTvParams::sparse),
    ] {
        for seed in 0..3 {
            let p = base(seed);
            let (seq, truth) = sbm_tv_sequence(&p).unwrap();
            let n = seq.n();
            let (mut intra_e, mut intra_pairs, mut inter_e, mut inter_pairs) =
                (0usize, 0usize, 0usize, 0usize);
            for (g, labels) in seq.graphs().iter().zip(truth.frames()) {
                let mut sizes = vec![0usize; p.k];
                labels.iter().for_each(|&l| sizes[l] += 1);
                let same: usize = sizes.iter().map(|s| s * s.saturating_sub(1) / 2).sum();
                intra_pairs += same;
                inter_pairs += n * (n - 1) / 2 - same;
                for &(i, j, _) in g.edges() {
                    if labels[i] == labels[j] {
                        intra_e += 1;
                    } else {
                        inter_e += 1;
                    }
                }
            }
            let z = |edges: usize, pairs: usize, q: f64| {
                let sd = (q * (1.0 - q) / pairs as f64).sqrt();
                (edges as f64 / pairs as f64 - q) / sd
            };
            let z_intra = z(intra_e, intra_pairs, p.p_intra);
            let z_inter = z(inter_e, inter_pairs, p.p_inter);

            let changes: Vec<f64> = truth
                .frames()
                .windows(2)
                .map(|w| w[0].iter().zip(&w[1]).filter(|(a, b)| a != b).count() as f64)
                .collect();
            let mu = n as f64 * p.flip_prob;
            let sd = (n as f64 * p.flip_prob * (1.0 - p.flip_prob)).sqrt();
            let avg = changes.iter().sum::<f64>() / changes.len() as f64;
            let z_changes = (avg - mu) / (sd / (changes.len() as f64).sqrt());
            let outside = changes
                .iter()
                .filter(|c| (*c - mu).abs() > 3.0 * sd)
                .count();
            let ok = z_intra.abs() <= 3.0
                && z_inter.abs() <= 3.0
                && z_changes.abs() <= 3.0
                && outside as f64 <= 0.05 * changes.len() as f64;
            pass &= ok;
            if !ok || seed == 0 {
                notes.push(format!(
                    "{name}/{seed}: z intra {z_intra:+.2}, inter {z_inter:+.2}, flips {z_changes:+.2}, frames beyond 3sd {outside}/{}",
                    changes.len()
                ));
            }
        }
    }
    verdict(pass, notes.join("; "))
}

fn metric_correctness() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    let mut exact = 0;
    let mut invariant = 0;
    for _ in 0..100 {
        let n = rng.random_range(2..=30);
        let a: Vec<usize> = (0..n).map(|_| rng.random_range(0..4)).collect();
        let b: Vec<usize> = (0..n).map(|_| rng.random_range(0..4)).collect();
        exact += usize::from(pair_accuracy(&a, &b).unwrap() == pair_accuracy_brute(&a, &b));
        let mut perm = [0, 1, 2, 3];
        perm.shuffle(&mut rng);
        let renamed: Vec<usize> = a.iter().map(|&l| perm[l]).collect();
        invariant += usize::from(
            pair_accuracy(&a, &a).unwrap() == 1.0 && pair_accuracy(&a, &renamed).unwrap() == 1.0,
        );
    }
    let example = pair_accuracy(&[1, 1, 0], &[1, 0, 0]).unwrap();
    verdict(
        exact == 100 && invariant == 100 && example == 1.0 / 3.0,
        format!("exact {exact}/100, identical+renamed {invariant}/100, n=3 example {example:.6}"),
    )
}

fn collect_files(root: &Path, dir: &Path, out: &mut BTreeMap<PathBuf, Vec<u8>>) {
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            collect_files(root, &path, out);
        } else {
            out.insert(
                path.strip_prefix(root).unwrap().to_path_buf(),
                std::fs::read(&path).unwrap(),
            );
        }
    }
}

fn cli_pipeline(root: &Path) -> Result<BTreeMap<PathBuf, Vec<u8>>, String> {
    let bin = env!("CARGO_BIN_EXE_tvgc");
    let p = |s: &str| root.join(s).to_string_lossy().into_owned();
    let steps: [Vec<String>; 4] = [
        vec![
            "generate-sbm".into(),
            "--seed".into(),
            "7".into(),
            "--trials".into(),
            "2".into(),
            "--n-per-cluster".into(),
            "10".into(),
            "--t-len".into(),
            "8".into(),
            "--out".into(),
            p("data"),
        ],
        vec![
            "cluster".into(),
            "--input".into(),
            p("data"),
            "--k".into(),
            "3".into(),
            "--alpha".into(),
            "5".into(),
            "--seed".into(),
            "7".into(),
            "--out".into(),
            p("est"),
        ],
        vec![
            "evaluate".into(),
            "--est".into(),
            p("est"),
            "--truth".into(),
            p("data"),
            "--svg".into(),
            "--out".into(),
            p("eval"),
        ],
        vec![
            "eigengap".into(),
            "--input".into(),
            p("data"),
            "--m".into(),
            "4".into(),
            "--out".into(),
            p("gaps"),
        ],
    ];
    for args in &steps {
        let out = Command::new(bin)
            .args(args)
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!(
                "{} failed: {}",
                args[0],
                String::from_utf8_lossy(&out.stderr)
            ));
        }
    }
    let mut files = BTreeMap::new();
    collect_files(root, root, &mut files);
    Ok(files)
}

fn determinism() -> Verdict {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    match (cli_pipeline(a.path()), cli_pipeline(b.path())) {
        (Ok(fa), Ok(fb)) => {
            let differing: Vec<String> = fa
                .keys()
                .chain(fb.keys())
                .filter(|k| fa.get(*k) != fb.get(*k))
                .map(|k| k.display().to_string())
                .collect();
            verdict(
                differing.is_empty() && !fa.is_empty(),
                format!(
                    "{} files compared, {} differ {:?}",
                    fa.len(),
                    differing.len(),
                    differing
                ),
            )
        }
        (Err(e), _) | (_, Err(e)) => verdict(false, e),
    }
}

fn point_cloud_toy(log: &mut FeasibilityLog) -> Verdict {
    let (cloud, parts) = articulated_blobs(5, 30, 20, 0);
    let graphs = cloud
        .frames()
        .iter()
        .map(|f| knn_graph(f, 8).unwrap())
        .collect();
    let seq = TVGraphSequence::new(graphs).unwrap();
    let cfg = SolverConfig {
        alpha: 1.0,
        ..Default::default()
    };
    let out = tv_cluster_multi(&seq, 5, &cfg).unwrap();
    out.solves.iter().for_each(|r| log.record(r, &cfg));
    let truth = vec![parts; seq.t_len()];
    let rep = accuracy_report(out.labels.frames(), &truth).unwrap();
    let min = rep.per_frame.iter().copied().fold(1.0, f64::min);
    verdict(
        rep.mean >= 0.95,
        format!(
            "mean pair accuracy {:.4} over {} frames (min {min:.4})",
            rep.mean,
            seq.t_len()
        ),
    )
}

fn main() {
    let mut log = FeasibilityLog::default();
    let mut results: Vec<(&str, Verdict)> = Vec::new();

    results.push((
        " 1 prox oracle equivalence",
        timed(Some(Duration::from_secs(10)), prox_oracles),
    ));
    results.push((
        " 2 Moreau identity",
        timed(Some(Duration::from_secs(1)), moreau),
    ));
    results.push((
        " 4 static-SC consistency",
        timed(Some(Duration::from_secs(30)), || {
            static_consistency(&mut log)
        }),
    ));
    let (dense, dense_t) = run_experiment(SbmTvParams::dense, &mut log);
    results.push((
        " 5 dense synthetic experiment",
        accuracy_gap(&dense, 0.05, dense_t),
    ));
    let (sparse, sparse_t) = run_experiment(SbmTvParams::sparse, &mut log);
    results.push((
        " 6 sparse synthetic experiment",
        accuracy_gap(&sparse, 0.10, sparse_t),
    ));
    results.push((" 7 smoothness delivered", smoothness(&dense, &sparse)));
    results.push((
        " 8 eigengap diagnostic",
        timed(Some(Duration::from_secs(60)), eigengap),
    ));
    results.push((" 9 generator statistics", timed(None, generator_stats)));
    results.push(("10 metric correctness", timed(None, metric_correctness)));
    results.push(("11 CLI determinism", timed(None, determinism)));
    results.push((
        "12 point-cloud toy",
        timed(None, || point_cloud_toy(&mut log)),
    ));
    results.push((
        " 3 constraint feasibility",
        verdict(
            log.failures == 0 && log.checked > 0,
            format!(
                "{} converged frames, {} violations (worst |1'c|-eps {:.1e}, worst sphere rel {:.1e})",
                log.checked, log.failures, log.worst_mean, log.worst_sphere
            ),
        ),
    ));

    results.sort_by(|a, b| a.0.cmp(b.0));
    let mut failed = 0;
    for (name, v) in &results {
        println!(
            "criterion {name}: {} {}",
            if v.pass { "PASS" } else { "FAIL" },
            v.detail
        );
        failed += usize::from(!v.pass);
    }
    println!(
        "{} of {} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
