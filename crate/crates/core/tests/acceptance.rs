//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use superbridge_core::fox::fox_determinant;
use superbridge_core::gordan::{find_certificate, find_direction, parse_certificate, verify_certificate};
use superbridge_core::homsearch::hom_search;
use superbridge_core::ledger::Verdict;
use superbridge_core::poly::{apply, edge_vectors, proper_signed_permutations, sign_matrix, EdgeVectors, PolygonalKnot};
use superbridge_core::projection::project;
use superbridge_core::reproduce::reproduce_fixtures;
use superbridge_core::superbridge::{bridge_count, witness_search};
use superbridge_core::wirtinger::{
    labeling_from_specs, parse_labeling_lines, presentation, propagate, Propagation,
    TranspositionLabeling,
};
use superbridge_core::diagram::parse_pd;
use superbridge_core::Execution;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn certificates_verify() -> Result<String, String> {
    let start = Instant::now();
    let knots = all_knots();
    for k in &knots {
        let e = sign_matrix(&edge_vectors(&polygon(k))).map_err(|e| e.to_string())?;
        let u = parse_certificate(&read_fixture(&format!("{k}.cert"))).map_err(|e| e.to_string())?;
        let v = verify_certificate(&e, &u).map_err(|e| e.to_string())?;
        ensure(v.holds(), || format!("{k}: residual {:?}", v.residual))?;
    }
    let t = within(start, Duration::from_secs(1))?;
    Ok(format!("{} stored certificates verify exactly in {t:.2?}", knots.len()))
}

fn certificates_found() -> Result<String, String> {
    let start = Instant::now();
    let knots = all_knots();
    for k in &knots {
        let e = sign_matrix(&edge_vectors(&polygon(k))).map_err(|e| e.to_string())?;
        let u = find_certificate(&e).ok_or_else(|| format!("{k}: none found"))?;
        ensure(verify_certificate(&e, u.entries()).unwrap().holds(), || format!("{k}: found certificate fails"))?;
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("fresh certificates for all {} sign matrices in {t:.2?}", knots.len()))
}

fn x_axis_witnesses() -> Result<String, String> {
    for k in ["8_10", "9_7"] {
        let w = bridge_count(&edge_vectors(&polygon(k)), &[1, 0, 0]).map_err(|e| e.to_string())?;
        ensure(w.count == 4, || format!("{k}: {} maxima along x", w.count))?;
    }
    Ok("8_10 and 9_7 have 4 maxima along (1, 0, 0)".into())
}

fn sandwich() -> Result<String, String> {
    for k in all_knots() {
        let p = polygon(&k);
        let w = witness_search(&p, 10_000, 1, Execution::default()).map_err(|e| e.to_string())?;
        let target = if p.len() == 10 { 4 } else { 5 };
        ensure(w.count == target, || format!("{k}: best count {} (want {target})", w.count))?;
    }
    Ok("witness count n/2 - 1 on every fixture (budget 10^4, seed 1)".into())
}

fn gordan_exclusivity() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut checked = 0;
    for n in [4usize, 6, 8, 10, 12] {
        for i in 0..1000 {
            let range = if i % 2 == 0 { 2 } else { 40 };
            let e = superbridge_core::SignMatrix::from_columns(
                (0..n).map(|_| std::array::from_fn(|_| rng.gen_range(-range..=range))).collect(),
            );
            let cert = find_certificate(&e).is_some();
            let dir = find_direction(&e).is_some();
            ensure(cert != dir, || format!("n={n} #{i}: certificate {cert}, direction {dir}"))?;
            if n <= 8 {
                ensure(cert == gordan_oracle_feasible(&e), || format!("n={n} #{i}: oracle disagrees"))?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} random matrices, exactly one branch each, oracle agrees for n <= 8"))
}

fn replay(knot: &str) -> Result<TranspositionLabeling, String> {
    let d = diagram(knot);
    let specs = parse_labeling_lines(&read_fixture(&format!("{knot}.hom"))).map_err(|e| e.to_string())?;
    let partial = labeling_from_specs(&d, 5, &specs).map_err(|e| e.to_string())?;
    match propagate(&presentation(&d), &partial) {
        Propagation::Complete(l) => Ok(l),
        other => Err(format!("{knot}: {other:?}")),
    }
}

fn stored_labeling_replay() -> Result<String, String> {
    for k in HIGH_CROSSING {
        let l = replay(k)?;
        ensure(l.is_surjective(), || format!("{k}: not surjective"))?;
        ensure(l.violated_relation(&presentation(&diagram(k))).is_none(), || format!("{k}: relation fails"))?;
    }
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for t in replay("13n_350")?.values().unwrap() {
        *counts.entry(t.to_string()).or_default() += 1;
    }
    let printed: BTreeMap<String, usize> = [
        ("(1 2)", 3),
        ("(1 3)", 1),
        ("(1 4)", 1),
        ("(2 3)", 2),
        ("(2 4)", 2),
        ("(2 5)", 1),
        ("(3 4)", 1),
        ("(4 5)", 2),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    ensure(counts == printed, || format!("13n_350 labels {counts:?}"))?;
    Ok("10 stored generator sets propagate to surjections; 13n_350 labels match the printed ones".into())
}

fn independent_search() -> Result<String, String> {
    let start = Instant::now();
    let homs = hom_search(&presentation(&diagram("13n_350")), 5, Execution::default());
    let t = within(start, Duration::from_secs(60))?;
    let target = replay("13n_350")?.canonical();
    ensure(homs.contains(&target), || format!("{} labelings, printed one missing", homs.len()))?;
    Ok(format!("{} canonical labelings onto S_5 in {t:.2?}, printed one included", homs.len()))
}

fn reproduction() -> Result<String, String> {
    let par = reproduce_fixtures(&data_dir(), Execution::Parallel).map_err(|e| e.to_string())?;
    let seq = reproduce_fixtures(&data_dir(), Execution::Sequential).map_err(|e| e.to_string())?;
    ensure(par.to_tsv() == seq.to_tsv(), || "TSV differs between runs".into())?;
    let count = |v: Verdict| par.rows.iter().filter(|r| r.verdict() == v).count();
    ensure(count(Verdict::Exact(4)) == 20, || "exact-4 count".into())?;
    ensure(count(Verdict::Exact(5)) == 10, || "exact-5 count".into())?;
    let of = |k: &str| par.rows.iter().find(|r| r.knot == k).map(|r| r.verdict().to_string());
    ensure(of("8_4").as_deref() == Some("3 or 4"), || "8_4".into())?;
    ensure(of("8_9").as_deref() == Some("3 or 4"), || "8_9".into())?;
    ensure(of("10_76").as_deref() == Some("4 or 5"), || "10_76".into())?;
    let cited = |l: &str| !l.contains("lower=;") && !l.ends_with("upper=");
    ensure(par.to_tsv().lines().skip(1).all(cited), || "uncited row".into())?;
    Ok("20 knots at 4, 10 at 5, 8_4 and 8_9 at 3 or 4, 10_76 at 4 or 5; TSV byte-stable".into())
}

fn random_polygon(rng: &mut ChaCha8Rng, n: usize, range: i64) -> PolygonalKnot {
    loop {
        let v = (0..n).map(|_| std::array::from_fn(|_| rng.gen_range(-range..=range))).collect();
        if let Ok(p) = PolygonalKnot::new(None, v) {
            return p;
        }
    }
}

fn property_suites() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let perms = proper_signed_permutations();
    for i in 0..1000 {
        let n = rng.gen_range(3..14);
        let p = random_polygon(&mut rng, n, 100);
        let e = edge_vectors(&p);
        let v: [i128; 3] = std::array::from_fn(|_| rng.gen_range(-1000..=1000));
        let Ok(w) = bridge_count(&e, &v) else { continue };
        let neg = bridge_count(&e, &v.map(|x| -x)).map_err(|e| e.to_string())?;
        ensure(neg.count == w.count, || format!("polygon {i}: b_v != b_-v"))?;
        let k = rng.gen_range(1..100);
        ensure(bridge_count(&e, &v.map(|x| x * k)).unwrap().count == w.count, || format!("polygon {i}: scale"))?;
        let m = perms[rng.gen_range(0..perms.len())];
        let moved = EdgeVectors::from_edges(e.iter().map(|x| apply(&m, x)).collect()).unwrap();
        let mv = apply(&m, &v.map(|x| x as i64)).map(|x| x as i128);
        ensure(bridge_count(&moved, &mv).unwrap().count == w.count, || format!("polygon {i}: rotation"))?;
    }
    for k in all_knots() {
        let sum = edge_vectors(&polygon(&k)).iter().fold([0i64; 3], |s, e| [s[0] + e[0], s[1] + e[1], s[2] + e[2]]);
        ensure(sum == [0, 0, 0], || format!("{k}: edges do not close"))?;
        let (d, _) = project(&polygon(&k), None).map_err(|e| e.to_string())?;
        let det = fox_determinant(&presentation(&d));
        ensure(&det % 2 == BigInt::from(1), || format!("{k}: even determinant {det}"))?;
    }
    for (pd, want) in [(TREFOIL, 3), (FIGURE_EIGHT, 5)] {
        let d = parse_pd(pd).unwrap();
        let oracle = goeritz_determinant(&pd_tuples(&d));
        ensure(oracle == BigInt::from(want), || format!("Goeritz oracle gives {oracle}"))?;
        ensure(fox_determinant(&presentation(&d)) == oracle, || format!("{pd}: determinant"))?;
    }
    for i in 0..100 {
        let p = random_polygon(&mut rng, 10, 30);
        let (d, pose) = project(&p, None).map_err(|e| e.to_string())?;
        let brute = all_pairs_crossings(&p, &pose.direction);
        ensure(d.num_crossings() == brute, || format!("polygon {i}: {} vs {brute}", d.num_crossings()))?;
    }
    Ok("descent symmetry and equivariance, closure, odd determinants, trefoil 3 / figure-eight 5, projection counts".into())
}

fn main() {
    let criteria: [(&str, Check); 9] = [
        ("certificate verification", certificates_verify),
        ("certificate search", certificates_found),
        ("x-axis witnesses", x_axis_witnesses),
        ("sandwich completeness", sandwich),
        ("Gordan exclusivity", gordan_exclusivity),
        ("stored labeling replay", stored_labeling_replay),
        ("independent hom search", independent_search),
        ("full reproduction", reproduction),
        ("property suites", property_suites),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
