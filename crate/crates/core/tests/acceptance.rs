//! Acceptance suite. Runs as a plain binary (`harness = false`) so that
//! every criterion prints one PASS/FAIL line in `cargo test` output.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use num_complex::Complex;
use rand::Rng;

use latticeqre::costing::{
    data_width, error_budget, iteration_count, keep_precision, logical_qubit_count, qroam_plan, total_cost,
    walk_cost, CostInputs, CostShape, QroamPlan, DEFAULT_B_R,
};
use latticeqre::ftqc::{code_distance, code_distance_for_volume, estimate_ftqc, runtime_seconds, FtqcConfig};
use latticeqre::hamiltonian::{load_system, synthetic, translational_symmetry_error, BasisKind, LoadOptions, ValueKind};
use latticeqre::lcu::{
    canonicalize, enumerate_restricted, enumerate_terms, expand_translations, l2_removal_count, truncate_l2,
    two_adic_order, EnumerateOptions, LcuTerm, TermClass,
};
use latticeqre::verify::circuit::{max_deviation, simulate, StateVector};
use latticeqre::verify::{
    dense_hamiltonian, lcu_reconstruct, pauli_l1, restoration::majorana_circuit_bloch, verify_majorana_restoration,
    verify_spin_restoration, verify_translational_restoration,
};

const ORACLE_TOL: f64 = 1e-10;
const CIRCUIT_TOL: f64 = 1e-12;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

fn verdict(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

/// The 50 complex instances shared by the first two criteria.
fn oracle_instances() -> Vec<latticeqre::Hamiltonian> {
    let mut rng = synthetic::rng(0x0AC1E);
    (0..50)
        .map(|i| synthetic::random_instance::<f64>(&mut rng, BasisKind::Bloch, 1 + i % 3, ValueKind::Complex))
        .collect()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for t in oracle_instances() {
        let set = enumerate_terms(&t, &EnumerateOptions::default()).expect("enumerates");
        let diff = lcu_reconstruct(&set).expect("reconstructs").max_abs_diff(&dense_hamiltonian(&t).expect("dense"));
        worst = worst.max(diff);
    }
    let secs = start.elapsed().as_secs_f64();
    verdict(worst <= ORACLE_TOL, format!("50 instances, max |LCU - H| = {worst:.3e} (tol {ORACLE_TOL:e}), {secs:.2} s"))
}

fn lambda_invariance() -> Outcome {
    let mut worst = 0.0f64;
    for t in oracle_instances() {
        let set = enumerate_terms(&t, &EnumerateOptions::default()).expect("enumerates");
        worst = worst.max((pauli_l1(&t).expect("pauli") - set.lambda.lambda).abs());
    }
    verdict(worst <= ORACLE_TOL, format!("50 instances, max |pauli_l1 - (lambda1 + lambda2)| = {worst:.3e} (tol {ORACLE_TOL:e})"))
}

fn majorana_states() -> Outcome {
    let s = simulate(&majorana_circuit_bloch(), "10000000").expect("simulates");
    // qubits a, s1, s2, s3, j1, j2, j3, j4 in order; input a = 1
    let ket = |j: [u64; 4]| 1 | j[0] << 4 | j[1] << 5 | j[2] << 6 | j[3] << 7;
    let want = StateVector::from([
        (ket([0, 1, 0, 1]), Complex::new(-0.5, 0.0)),
        (ket([1, 0, 0, 1]), Complex::new(0.5, 0.0)),
        (ket([0, 1, 1, 0]), Complex::new(0.5, 0.0)),
        (ket([1, 0, 1, 0]), Complex::new(-0.5, 0.0)),
    ]);
    let worked = max_deviation(&s, &want);
    let mut worst_class = 0.0f64;
    for class in TermClass::ALL {
        worst_class = worst_class.max(verify_majorana_restoration(class, BasisKind::Bloch).expect("runs").max());
    }
    for class in TermClass::ALL.into_iter().filter(|c| c.is_real_family()) {
        worst_class = worst_class.max(verify_majorana_restoration(class, BasisKind::Wannier).expect("runs").max());
    }
    verdict(
        worked <= CIRCUIT_TOL && worst_class <= CIRCUIT_TOL,
        format!("|1>|000> deviation {worked:.3e}; worst over 8 classes (+3 real-orbital) {worst_class:.3e} (tol {CIRCUIT_TOL:e})"),
    )
}

fn spin_and_translation() -> Outcome {
    let spin = verify_spin_restoration().expect("runs");
    let mut worst = 0.0f64;
    let mut shapes = 0;
    for a in 1..=16usize {
        for b in 1..=16 / a {
            for c in 1..=16 / (a * b) {
                worst = worst.max(verify_translational_restoration([a, b, c]).expect("runs"));
                shapes += 1;
            }
        }
    }
    verdict(
        spin <= CIRCUIT_TOL && worst <= CIRCUIT_TOL,
        format!("spin {spin:.3e}; translational worst {worst:.3e} over {shapes} shapes with prod N <= 16 (tol {CIRCUIT_TOL:e})"),
    )
}

type TermKey = (TermClass, [usize; 4], u64, i8);

fn multiset(terms: &[LcuTerm<f64>]) -> BTreeMap<TermKey, usize> {
    let mut m = BTreeMap::new();
    for t in terms {
        *m.entry((t.class, t.indices, t.weight.to_bits(), t.sign)).or_insert(0) += 1;
    }
    m
}

/// Number of translation classes among restricted terms, by union over all
/// lattice shifts.
fn brute_force_orbits(t: &latticeqre::Hamiltonian, terms: &[LcuTerm<f64>]) -> usize {
    let lat = t.spec.lattice;
    let present: BTreeSet<(TermClass, [usize; 4])> = terms.iter().map(|t| (t.class, t.indices)).collect();
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    for &(class, idx) in &present {
        if seen.contains(&(class, idx)) {
            continue;
        }
        orbits += 1;
        for v in lat.shifts() {
            let mut moved = idx;
            for slot in moved.iter_mut().take(class.arity()) {
                *slot = lat.translate(*slot, v);
            }
            if let Some((k, _)) = canonicalize(class, moved) {
                seen.insert((class, k));
            }
        }
    }
    orbits
}

fn wannier_dedup() -> Outcome {
    let shapes: [[usize; 3]; 8] = [[2, 1, 1], [3, 1, 1], [4, 1, 1], [2, 2, 1], [5, 1, 1], [6, 1, 1], [2, 2, 2], [8, 1, 1]];
    let mut rng = synthetic::rng(0xDED0);
    let mut failures = Vec::new();
    let mut total_terms = 0;
    for i in 0..20 {
        let bands = 1 + i % 2;
        let cells = shapes[i % shapes.len()];
        let density = if bands * cells.iter().product::<usize>() > 8 { 0.3 } else { 0.7 };
        let t = synthetic::random_wannier::<f64>(&mut rng, bands, cells, density);
        let full = enumerate_restricted(&t).expect("enumerates");
        let set = enumerate_terms(&t, &EnumerateOptions::default()).expect("enumerates");
        let expanded = expand_translations(&set);
        total_terms += full.len();
        if multiset(&expanded) != multiset(&full) {
            failures.push(format!("#{i} M={bands} N={cells:?}: expanded multiset differs"));
        }
        let orbits = brute_force_orbits(&t, &full);
        if orbits != set.d {
            failures.push(format!("#{i} M={bands} N={cells:?}: d = {} but {orbits} orbits", set.d));
        }
    }
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            format!("20 instances ({total_terms} restricted terms) reproduced exactly; d equals orbit count")
        } else {
            failures.join("; ")
        },
    )
}

/// Exhaustive minimum over `κ = 2^0 … 2^62`, ties to the smaller `κ`.
fn brute_kappa(cost: impl Fn(u128) -> u128) -> (u64, u64) {
    let mut best: Option<(u64, u128)> = None;
    for e in 0..63 {
        let k = 1u128 << e;
        let c = cost(k);
        if best.is_none_or(|(_, b)| c < b) {
            best = Some((k as u64, c));
        }
    }
    let (k, c) = best.expect("nonempty");
    (k, c as u64)
}

fn kappa_optimization() -> Outcome {
    let mut rng = synthetic::rng(0x4A99A);
    let mut agree = 0;
    let mut first_miss = None;
    for _ in 0..1000 {
        let d: u64 = if rng.gen_bool(0.5) { rng.gen_range(1..=4096) } else { 1u64 << rng.gen_range(0..30) | rng.gen_range(0..1024) };
        let m: u32 = rng.gen_range(1..=200);
        let plan = qroam_plan(d, m);
        let (d2, m2) = (d as u128, m as u128);
        let (k1, c1) = brute_kappa(|k| d2.div_ceil(k) + m2 * (k - 1));
        let (k2, c2) = brute_kappa(|k| d2.div_ceil(k) + k);
        let want = QroamPlan { kappa1: k1, kappa2: k2, compute_cost: c1, uncompute_cost: c2 };
        if plan == want {
            agree += 1;
        } else if first_miss.is_none() {
            first_miss = Some(format!("d={d} m={m}: got {plan:?}, scan {want:?}"));
        }
    }
    verdict(agree == 1000, format!("{agree}/1000 agree with exhaustive scan{}", first_miss.map(|s| format!("; {s}")).unwrap_or_default()))
}

fn cost_spot_checks() -> Outcome {
    let bloch8 = CostShape { basis: BasisKind::Bloch, bands: 8, cells: [1, 1, 1] };
    let mut misses = Vec::new();
    let mut check = |name: &str, got: u64, want: u64| {
        if got != want {
            misses.push(format!("{name}: {got} != {want}"));
        }
    };
    let p = qroam_plan(1024, 32);
    check("qroam compute (d=1024, m=32)", p.compute_cost, 352);
    check("qroam uncompute (d=1024, m=32)", p.uncompute_cost, 64);
    check("kappa1", p.kappa1, 4);
    check("kappa2", p.kappa2, 32);
    let plan = qroam_plan(1000, 46);
    let (w, _) = walk_cost(&bloch8, 1000, 3, 10, 46, &plan, DEFAULT_B_R);
    check("SELECT (P=8)", w.select, 122);
    check("iterations (lambda=10, eps=1 mHa)", iteration_count(10.0, 1e-3).unwrap_or(0), 15708);
    let fixed = QroamPlan { kappa1: 4, kappa2: 32, compute_cost: 0, uncompute_cost: 0 };
    check("logical qubits", logical_qubit_count(&bloch8, 1024, 10, 46, &fixed, 15708, DEFAULT_B_R).total, 264);
    check("keep bits (lambda=1, eps=0.5 mHa)", keep_precision(1.0, 0.5e-3).unwrap_or(0) as u64, 10);
    check("word width Bloch P=8", data_width(&bloch8, 10) as u64, 46);
    check(
        "word width Wannier M=2 N=(2,2,2)",
        data_width(&CostShape { basis: BasisKind::Wannier, bands: 2, cells: [2, 2, 2] }, 10) as u64,
        44,
    );
    let n = misses.len();
    verdict(n == 0, if n == 0 { "10 worked values reproduced exactly".into() } else { misses.join("; ") })
}

fn truncation_maximality() -> Outcome {
    let mut rng = synthetic::rng(0x7A0C);
    let mut bad = Vec::new();
    let mut removed_total = 0;
    for i in 0..100 {
        if i % 2 == 0 {
            // raw weights with multiplicities, already in removal order
            let n = rng.gen_range(1..200);
            let mut ws: Vec<(f64, usize)> = (0..n).map(|_| (rng.gen_range(0.0..1.0f64).powi(3), rng.gen_range(1..5))).collect();
            ws.sort_by(|a, b| a.0.total_cmp(&b.0));
            let total: f64 = ws.iter().map(|&(w, m)| m as f64 * w * w).sum::<f64>().sqrt();
            let eps = rng.gen_range(0.0..1.2) * total;
            let k = l2_removal_count(&ws, eps);
            removed_total += k;
            let removed: f64 = ws[..k].iter().map(|&(w, m)| m as f64 * w * w).sum();
            if !(removed.sqrt() < eps || (k == 0 && eps == 0.0)) {
                bad.push(format!("set {i}: removed {} >= eps {eps}", removed.sqrt()));
            }
            if let Some(&(w, m)) = ws.get(k) {
                if removed + m as f64 * w * w < eps * eps {
                    bad.push(format!("set {i}: not maximal"));
                }
            }
        } else {
            let t = synthetic::random_wannier::<f64>(&mut rng, 1, [2 + i % 3, 1, 1], 0.8);
            let set = enumerate_terms(&t, &EnumerateOptions::default()).expect("enumerates");
            let total: f64 = set.terms.iter().map(|t| t.multiplicity as f64 * t.weight * t.weight).sum::<f64>().sqrt();
            let eps = rng.gen_range(0.01..0.9) * total;
            let (kept, stats) = truncate_l2(&set, eps);
            removed_total += stats.terms_before - stats.terms_after;
            let kept_keys: BTreeSet<_> = kept.terms.iter().map(|t| (t.class, t.indices)).collect();
            let removed: Vec<&LcuTerm<f64>> = set.terms.iter().filter(|t| !kept_keys.contains(&(t.class, t.indices))).collect();
            let norm2: f64 = removed.iter().map(|t| t.multiplicity as f64 * t.weight * t.weight).sum();
            if norm2.sqrt() >= eps || (stats.removed_norm - norm2.sqrt()).abs() > 1e-12 {
                bad.push(format!("set {i}: removed norm {} vs eps {eps}", norm2.sqrt()));
            }
            let smallest_kept = kept.terms.iter().min_by(|a, b| a.weight.total_cmp(&b.weight).then((a.class, a.indices).cmp(&(b.class, b.indices))));
            if let Some(s) = smallest_kept {
                if norm2 + s.multiplicity as f64 * s.weight * s.weight < eps * eps {
                    bad.push(format!("set {i}: adding smallest kept weight stays within bound"));
                }
            }
        }
    }
    verdict(bad.is_empty(), if bad.is_empty() { format!("100 sets, {removed_total} terms removed, bound and maximality hold") } else { bad.join("; ") })
}

fn scaling_slope() -> Outcome {
    let budget = error_budget(1.6e-3, 1).expect("budget");
    let shape = CostShape { basis: BasisKind::Bloch, bands: 8, cells: [1, 1, 1] };
    let mut pts = Vec::new();
    let mut widths = BTreeSet::new();
    for e in 10..=24u32 {
        let d = 1u64 << e;
        let r = total_cost(&CostInputs { shape, d, eta: two_adic_order(d as usize), lambda: 100.0 }, &budget, DEFAULT_B_R).expect("costs");
        widths.insert(r.m);
        pts.push(((d as f64).ln(), (r.toffoli_total as f64).ln()));
    }
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let slope = pts.iter().map(|&(x, y)| (x - mx) * (y - my)).sum::<f64>() / pts.iter().map(|&(x, _)| (x - mx).powi(2)).sum::<f64>();
    verdict(
        (0.45..=0.55).contains(&slope) && widths.len() == 1,
        format!("log-log slope {slope:.4} over d = 2^10..2^24 (lambda = 100, m = {:?}), window [0.45, 0.55]", widths),
    )
}

fn ftqc_monotonicity() -> Outcome {
    let mut rng = synthetic::rng(0xF7C);
    let mut bad = Vec::new();
    for i in 0..20 {
        let tiles: u64 = rng.gen_range(10..100_000);
        let steps: u64 = 10f64.powf(rng.gen_range(3.0..13.0)) as u64;
        let hi = code_distance(1e-3, tiles, steps, 0.009).expect("below threshold");
        let lo = code_distance(1e-4, tiles, steps, 0.009).expect("below threshold");
        let (rt_hi, rt_lo) = (runtime_seconds(steps, hi, 1e-6), runtime_seconds(steps, lo, 1e-6));
        if !(lo <= hi && rt_lo < rt_hi) {
            bad.push(format!("#{i} tiles={tiles} steps={steps}: d {hi}->{lo}, runtime {rt_hi}->{rt_lo}"));
        }
        let q: u64 = rng.gen_range(10..2000);
        let a = estimate_ftqc(steps, q, &FtqcConfig::new(1e-3));
        let b = estimate_ftqc(steps, q, &FtqcConfig::new(1e-4));
        if let (Ok(a), Ok(b)) = (a, b) {
            if !(b.code_distance <= a.code_distance && b.runtime_seconds < a.runtime_seconds) {
                bad.push(format!("#{i}: full estimate not monotone"));
            }
        }
    }
    let d27 = code_distance_for_volume(1e-3, 1e12, 0.009).ok();
    let d13 = code_distance_for_volume(1e-4, 1e12, 0.009).ok();
    if d27 != Some(27) || d13 != Some(13) {
        bad.push(format!("worked examples gave {d27:?} and {d13:?}"));
    }
    verdict(bad.is_empty(), if bad.is_empty() { "20 volumes monotone; volume 1e12 gives d = 27 (p=1e-3) and 13 (p=1e-4)".into() } else { bad.join("; ") })
}

/// Optional: needs the H-16 Wannier dataset, fetched separately. Point
/// `LATTICEQRE_H16_MANIFEST` at its manifest to enable.
fn h16_dataset() -> Outcome {
    let Some(path) = std::env::var_os("LATTICEQRE_H16_MANIFEST").map(PathBuf::from) else {
        return Outcome::Skip("network dataset; set LATTICEQRE_H16_MANIFEST to a local H-16 manifest to run".into());
    };
    let reference = 1.53e-11;
    match load_system::<f64>(&path, &LoadOptions::default()).and_then(|(_, t)| translational_symmetry_error(&t)) {
        Ok(err) => verdict(
            err <= reference * 10.0 && err >= reference / 10.0,
            format!("translational error {err:.3e} Ha vs reference {reference:e} (within 10x)"),
        ),
        Err(e) => Outcome::Fail(format!("{}: {e}", path.display())),
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: &[Criterion] = &[
        ("oracle equivalence", oracle_equivalence),
        ("lambda invariance", lambda_invariance),
        ("majorana restoration states", majorana_states),
        ("spin and translational restoration", spin_and_translation),
        ("wannier deduplication", wannier_dedup),
        ("kappa optimization", kappa_optimization),
        ("cost spot checks", cost_spot_checks),
        ("l2 truncation", truncation_maximality),
        ("sqrt(d) scaling", scaling_slope),
        ("ftqc monotonicity", ftqc_monotonicity),
        ("h16 translational error", h16_dataset),
    ];
    let mut failed = 0;
    println!("acceptance: {} criteria", criteria.len());
    for &(name, f) in criteria {
        match f() {
            Outcome::Pass(d) => println!("PASS {name}: {d}"),
            Outcome::Fail(d) => {
                failed += 1;
                println!("FAIL {name}: {d}");
            }
            Outcome::Skip(d) => println!("SKIP {name}: {d}"),
        }
    }
    println!("acceptance: {failed} failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
