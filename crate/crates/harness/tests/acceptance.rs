//! Acceptance suite: one PASS/FAIL line per criterion. Runs as a plain
//! binary so the lines reach the test log.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use normkeep::delta::{delta_norm, strong_attainment};
use normkeep::membership::{check_lh, check_lhw, SpacePair, Verdict};
use normkeep::normed::{ElementSpace, NormedSpace};
use normkeep::projection::{
    check_prox_transfer, classify_proximinality, project, projection_homogeneity, Minimizers, ProximinalityClass,
    SubsetSpec,
};
use normkeep::renorm::{build_induced_seminorm, verify_lh_equality, verify_seminorm_axioms};
use normkeep::rng::{derive_seed, gaussian_vector, seeded};
use normkeep::{Matrix, Tolerance, Vector};
use normkeep_harness::cli::run_cli;
use normkeep_harness::run::run_checks;
use normkeep_harness::scenario::parse_scenario;
use normkeep_harness::search::{
    generate, run_search, scaled_witness, upgrade_consistency, Family, GeneratorConfig, Instance, SearchOptions,
};

const SEED: u64 = 20_240_601;

struct Line {
    id: u32,
    title: &'static str,
    pass: bool,
    detail: String,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn euclid(n: usize) -> Arc<NormedSpace> {
    Arc::new(NormedSpace::euclidean(n))
}

fn subspace(ambient: Arc<NormedSpace>, cols: &[Vec<f64>]) -> SubsetSpec {
    let n = ambient.dim();
    let basis = Matrix::from_fn(n, cols.len(), |i, j| cols[j][i]);
    SubsetSpec::subspace(ambient.clone(), basis, ambient).expect("valid subspace")
}

fn random_subspace(n: usize, q: usize, seed: u64) -> SubsetSpec {
    let mut rng = seeded(seed);
    let cols: Vec<Vec<f64>> = (0..q).map(|_| gaussian_vector(&mut rng, n).iter().copied().collect()).collect();
    subspace(euclid(n), &cols)
}

fn linf_axis() -> SubsetSpec {
    subspace(Arc::new(NormedSpace::p_norm(2, f64::INFINITY).unwrap()), &[vec![1.0, 0.0]])
}

/// Nearest `t` to `z` on the real axis by grid search, without using the
/// closed form. Near the minimum the squared distance is flat to rounding,
/// so the answer is the midpoint of the plateau of grid-minimal values,
/// whose edges are located by bisection.
fn grid_nearest_real(z: &Vector) -> f64 {
    let dist2 = |t: f64| (z[0] - t).powi(2) + z[1].powi(2);
    let (mut lo, mut hi) = (-1e3, 1e3);
    let mut best = 0.0;
    for _ in 0..6 {
        let steps = 400;
        let h = (hi - lo) / steps as f64;
        best = (0..=steps)
            .map(|k| lo + h * k as f64)
            .min_by(|a, b| dist2(*a).total_cmp(&dist2(*b)))
            .expect("nonempty grid");
        lo = best - h;
        hi = best + h;
    }
    let floor = dist2(best);
    let edge = |mut inside: f64, mut outside: f64| {
        for _ in 0..200 {
            let m = 0.5 * (inside + outside);
            if dist2(m) <= floor {
                inside = m;
            } else {
                outside = m;
            }
        }
        inside
    };
    0.5 * (edge(best, best - 1.0) + edge(best, best + 1.0))
}

fn criterion_1(tol: Tolerance) -> Line {
    let (res, time) = timed(|| {
        let x = SubsetSpec::real_axis_in_c(None).unwrap();
        let mut rng = seeded(derive_seed(SEED, 1));
        let zs: Vec<Vector> = (0..1000).map(|_| gaussian_vector(&mut rng, 2) * 10.0).collect();
        let (mut closed, mut grid) = (0.0f64, 0.0f64);
        let mut singletons = true;
        for z in &zs {
            let sol = project(&x, z, tol).unwrap();
            let Minimizers::Singleton(p) = &sol.minimizers else {
                singletons = false;
                continue;
            };
            closed = closed.max((p[0] - z[0]).abs()).max(p[1].abs());
            grid = grid.max((p[0] - grid_nearest_real(z)).abs());
        }
        let class = classify_proximinality(&x, &zs, tol).unwrap().class;
        (closed, grid, singletons, class)
    });
    let (closed, grid, singletons, class) = res;
    let pass = singletons
        && closed <= 1e-9
        && grid <= 1e-9
        && class == ProximinalityClass::ChebyshevOnProbes
        && time < Duration::from_secs(1);
    Line {
        id: 1,
        title: "real axis in C: P(z) = Re z",
        pass,
        detail: format!(
            "1000 z, max|d| closed form {closed:.1e}, grid oracle {grid:.1e}, class {}, {:.2}s",
            class.as_str(),
            time.as_secs_f64()
        ),
    }
}

fn criterion_2(tol: Tolerance) -> Line {
    let (res, time) = timed(|| {
        let mut families: Vec<(String, SubsetSpec)> = (2..=5)
            .map(|n| (format!("euclid{n}"), random_subspace(n, n / 2, derive_seed(SEED, 20 + n as u64))))
            .collect();
        families.push(("linf_axis".into(), linf_axis()));
        families.push(("real_axis_in_c".into(), SubsetSpec::real_axis_in_c(None).unwrap()));
        let mut failures = Vec::new();
        let mut worst = (0.0f64, 0.0f64);
        for (i, (name, x)) in families.iter().enumerate() {
            let sn = build_induced_seminorm(x, tol).unwrap();
            let ev = sn.evidence();
            let battery = ev.bounded && ev.injective_on_x && ev.triangular.holds;
            let slack = if sn.is_exact() { 1e-9 } else { 1e-6 };
            let ax = verify_seminorm_axioms(&sn, 1000, derive_seed(SEED, 200 + i as u64), tol).unwrap();
            let excess = ax.triangle_excess.max(ax.homogeneity_gap);
            let grid = if sn.is_exact() { &mut worst.0 } else { &mut worst.1 };
            *grid = grid.max(excess);
            let span = sn.source_space();
            let mut rng = seeded(derive_seed(SEED, 300 + i as u64));
            let xs: Vec<Vector> = (0..100).map(|_| span.sample(&mut rng)).collect();
            let lh = verify_lh_equality(&sn, &xs, tol).unwrap();
            if !(battery && ax.passed && excess <= slack && lh.all_in_lh) {
                failures.push(name.clone());
            }
        }
        (families.len(), failures, worst)
    });
    let (n, failures, (exact, grid)) = res;
    Line {
        id: 2,
        title: "induced seminorm pipeline",
        pass: failures.is_empty() && time < Duration::from_secs(30),
        detail: format!(
            "{n} families, failing {failures:?}, worst axiom slack exact {exact:.1e} / grid {grid:.1e}, {:.2}s",
            time.as_secs_f64()
        ),
    }
}

fn criterion_3(tol: Tolerance) -> Line {
    let l1 = Arc::new(NormedSpace::p_norm(3, 1.0).unwrap());
    let sets = [
        random_subspace(3, 1, derive_seed(SEED, 31)),
        random_subspace(4, 2, derive_seed(SEED, 32)),
        linf_axis(),
        subspace(l1, &[vec![1.0, 1.0, 0.0], vec![0.0, 1.0, -1.0]]),
        SubsetSpec::real_axis_in_c(None).unwrap(),
    ];
    let scalars = [-2.0, -0.5, 0.5, 3.0];
    let mut rng = seeded(derive_seed(SEED, 3));
    let (mut worst, mut all) = (0.0f64, true);
    for k in 0..100 {
        let x = &sets[k % sets.len()];
        let y = gaussian_vector(&mut rng, x.ambient().dim()) * 3.0;
        let r = projection_homogeneity(x, &y, &scalars, tol).unwrap();
        worst = worst.max(r.set_gap);
        all &= r.holds;
    }
    Line {
        id: 3,
        title: "projection homogeneity",
        pass: all && worst <= 1e-9,
        detail: format!("100 probes x 4 scalars over {} sets, worst Hausdorff {worst:.1e}", sets.len()),
    }
}

fn criterion_4(tol: Tolerance) -> Line {
    let (res, time) = timed(|| {
        let cfg = GeneratorConfig::default();
        let mut rng = seeded(derive_seed(SEED, 4));
        let (mut corpus, mut in_lh, mut bad) = (0, 0, 0);
        for k in 0..300 {
            let family = if k % 2 == 0 { Family::Normed } else { Family::Delta };
            let (pair, f): (SpacePair, Vector) = match generate(family, &cfg, &mut rng) {
                Instance::Normed(n) => {
                    let b = n.build().unwrap();
                    (b.pair, b.f)
                }
                Instance::Delta(d) => {
                    let b = d.build(tol, cfg.axiom_samples).unwrap();
                    (b.pair.as_space_pair().clone(), b.f)
                }
                Instance::Subset(_) => unreachable!(),
            };
            corpus += 1;
            if check_lh(&pair, &f, tol).unwrap().verdict == Verdict::InLh {
                in_lh += 1;
                if check_lhw(&pair, &f, None, tol).unwrap().verdict != Verdict::InLh {
                    bad += 1;
                }
            }
        }
        let mut scaled_ok = true;
        let mut scaled = 0;
        for c in [0.25, 0.5, 0.75] {
            let y = euclid(3);
            let base = y.clone();
            let x: Arc<NormedSpace> = Arc::new(NormedSpace::custom(3, format!("{c}*l2"), move |v: &Vector| c * base.norm_unchecked(v)).unwrap());
            let pair = SpacePair::new(x, y, None).unwrap();
            for _ in 0..20 {
                let f = gaussian_vector(&mut rng, 3);
                let g = gaussian_vector(&mut rng, 3);
                let w = scaled_witness(&f, c, &g, 8);
                let lhw = check_lhw(&pair, &f, Some(&w), tol).unwrap().verdict;
                let lh = check_lh(&pair, &f, tol).unwrap().verdict;
                scaled_ok &= lhw == Verdict::InLhwOnly && lh == Verdict::NotInLh;
                scaled += 1;
            }
        }
        (corpus, in_lh, bad, scaled, scaled_ok)
    });
    let (corpus, in_lh, bad, scaled, scaled_ok) = res;
    Line {
        id: 4,
        title: "LH inside LHW, scaled family separates",
        pass: corpus >= 100 && in_lh > 0 && bad == 0 && scaled_ok && time < Duration::from_secs(5),
        detail: format!(
            "{corpus} instances, {in_lh} in LH, {bad} failing the constant witness; {scaled} scaled (c = 0.25, 0.5, 0.75) {}; {:.2}s",
            if scaled_ok { "in_lhw_only and not_in_lh" } else { "MISCLASSIFIED" },
            time.as_secs_f64()
        ),
    }
}

fn criterion_5(tol: Tolerance) -> Line {
    let r = upgrade_consistency(1000, SEED, tol);
    Line {
        id: 5,
        title: "upgrade paths agree with check_lh",
        pass: r.agreements == r.instances && r.disagreements.is_empty(),
        detail: format!(
            "{}/{} agree, {} upgraded to in_lh, per checker {:?}{}",
            r.agreements,
            r.instances,
            r.upgraded_in_lh,
            r.by_checker,
            r.disagreements.first().map(|d| format!(", first: {d}")).unwrap_or_default()
        ),
    }
}

fn search(id: &str, trials: usize, tol: Tolerance) -> normkeep_harness::search::SearchReport {
    let opts = SearchOptions {
        trials,
        seed: SEED,
        tol,
        ..SearchOptions::default()
    };
    run_search(id, &opts).unwrap()
}

fn criterion_6(tol: Tolerance) -> Line {
    let cfg = GeneratorConfig::default();
    let mut rng = seeded(derive_seed(SEED, 6));
    let (mut spaces, mut strong_fail) = (0, 0);
    for _ in 0..500 {
        let Instance::Delta(d) = generate(Family::Delta, &cfg, &mut rng) else {
            unreachable!()
        };
        let b = d.build(tol, cfg.axiom_samples).unwrap();
        for space in [b.x(), b.y()] {
            let v = delta_norm(space, &b.f).unwrap();
            spaces += 1;
            if !strong_attainment(space, &b.f, v.pair, tol).unwrap().holds {
                strong_fail += 1;
            }
        }
    }
    let constant: Vec<_> = ["strong-implies-target-attainment", "lh-target-weak-target"]
        .iter()
        .map(|id| search(id, 1000, tol))
        .collect();
    let constant_ok = constant.iter().all(|r| r.violations == 0 && r.hypothesis_hits > 0);

    let sc = parse_scenario(include_str!("../scenarios/lip3.json")).unwrap();
    let run = run_checks(&sc);
    let by_name = |n: &str| run.checks.iter().find(|c| c.name == n).expect("fixture check");
    let lip = by_name("lip_norm");
    let holder = by_name("holder_norm");
    let lip_ok = lip.value == Some(2.0) && lip.detail["pair"] == serde_json::json!([0, 1]);
    let holder_gap = (holder.value.unwrap_or(f64::NAN) - 3.0 / 2f64.sqrt()).abs();
    Line {
        id: 6,
        title: "attainment suite",
        pass: strong_fail == 0 && constant_ok && lip_ok && holder_gap <= 1e-12,
        detail: format!(
            "strong attainment at argext on {spaces} spaces ({strong_fail} fail); constant-sequence implications {}; Lip0 norm {:?} at {}; Holder(1/2) gap {holder_gap:.1e}",
            constant
                .iter()
                .map(|r| format!("{} {} hits {} violations", r.statement, r.hypothesis_hits, r.violations))
                .collect::<Vec<_>>()
                .join(", "),
            lip.value,
            lip.detail["pair"],
        ),
    }
}

const SOUND: [&str; 8] = [
    "lh-subset-lhw",
    "strong-from-weak-attainment",
    "norm-sandwich",
    "strong-weak-attainment-lhw",
    "shared-target-attainment",
    "target-attainment-lhw-upgrade",
    "target-attainment-lh",
    "induced-renorm",
];

fn criterion_7(tol: Tolerance) -> Line {
    let (res, time) = timed(|| {
        let sound: Vec<_> = SOUND.iter().map(|id| search(id, 10_000, tol)).collect();
        let mutant = search("norm-sandwich-without-convergence", 10_000, tol);
        (sound, mutant)
    });
    let (sound, mutant) = res;
    let sound_ok = sound.iter().all(|r| r.hypothesis_hits >= 1000 && r.violations == 0 && r.findings.is_empty());
    let shrunk = mutant.findings.iter().filter(|f| f.shrink_steps > 0).count();
    let mutant_ok = !mutant.findings.is_empty() && shrunk >= 1;
    Line {
        id: 7,
        title: "counterexample search",
        pass: sound_ok && mutant_ok && time < Duration::from_secs(300),
        detail: format!(
            "{}; mutant {} violations, {} findings ({shrunk} shrunk); {:.1}s",
            sound
                .iter()
                .map(|r| format!("{} {}/{}", r.statement, r.hypothesis_hits, r.violations))
                .collect::<Vec<_>>()
                .join(", "),
            mutant.violations,
            mutant.findings.len(),
            time.as_secs_f64()
        ),
    }
}

fn criterion_8(tol: Tolerance) -> Line {
    let x = subspace(euclid(2), &[vec![1.0, 2.0]]);
    let mut rng = seeded(derive_seed(SEED, 8));
    let (mut tables, mut worst, mut all) = (0, 0.0f64, true);
    let configs: Vec<(usize, f64)> = [2usize, 3, 4]
        .iter()
        .flat_map(|&m| [1.0, 2.0, f64::INFINITY].map(|p| (m, p)))
        .collect();
    for (k, &(m, p)) in configs.iter().enumerate() {
        let count = if k < 100 % configs.len() { 100 / configs.len() + 1 } else { 100 / configs.len() };
        let weights: Vec<f64> = (0..m).map(|i| 0.5 + i as f64 * 0.75).collect();
        let probe: Vec<Vector> = (0..count).map(|_| gaussian_vector(&mut rng, 2 * m) * 2.0).collect();
        let r = check_prox_transfer(&x, &weights, p, &probe, 1e-6, tol).unwrap();
        tables += probe.len();
        worst = worst.max(r.worst_gap);
        all &= r.holds;
    }
    Line {
        id: 8,
        title: "discrete Bochner transfer",
        pass: tables >= 100 && all && worst <= 1e-6,
        detail: format!("{tables} tables over 2-4 atoms and p = 1, 2, inf, worst gap {worst:.1e}"),
    }
}

fn machine_suite() -> Vec<String> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/scenarios");
    let mut out = Vec::new();
    for name in ["r_in_c", "lip3", "lhw_only", "renorm_line", "wrong_expectation", "empty"] {
        let path = format!("{dir}/{name}.json");
        out.push(run_cli(["normkeep", "check", &path, "--format", "machine"]).stdout);
    }
    let r_in_c = format!("{dir}/r_in_c.json");
    out.push(run_cli(["normkeep", "project", &r_in_c, "--set", "R", "--point", "3,4", "--format", "machine"]).stdout);
    let line = format!("{dir}/renorm_line.json");
    out.push(run_cli(["normkeep", "renorm", &line, "--set", "axis", "--samples", "100", "--format", "machine"]).stdout);
    for id in ["lh-subset-lhw", "norm-sandwich-without-convergence", "induced-renorm"] {
        out.push(run_cli(["normkeep", "search", id, "--trials", "300", "--seed", "5", "--format", "machine"]).stdout);
    }
    out
}

fn criterion_9() -> Line {
    let a = machine_suite();
    let b = machine_suite();
    let empty = a.iter().filter(|s| s.is_empty()).count();
    let bytes: usize = a.iter().map(String::len).sum();
    Line {
        id: 9,
        title: "deterministic machine reports",
        pass: a == b && empty == 0,
        detail: format!("{} reports, {bytes} bytes, identical across two runs: {}", a.len(), a == b),
    }
}

fn main() -> ExitCode {
    let tol = Tolerance::default();
    let criteria: Vec<Box<dyn Fn() -> Line>> = vec![
        Box::new(move || criterion_1(tol)),
        Box::new(move || criterion_2(tol)),
        Box::new(move || criterion_3(tol)),
        Box::new(move || criterion_4(tol)),
        Box::new(move || criterion_5(tol)),
        Box::new(move || criterion_6(tol)),
        Box::new(move || criterion_7(tol)),
        Box::new(move || criterion_8(tol)),
        Box::new(criterion_9),
    ];
    let mut failed = 0;
    for c in &criteria {
        let line = c();
        let status = if line.pass { "PASS" } else { "FAIL" };
        println!("criterion {} {status}  {}: {}", line.id, line.title, line.detail);
        if !line.pass {
            failed += 1;
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
