//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use formality_core::complex::{product_complex, sphere, surface, torus};
use formality_core::cup::{cup, intersection_form, FormKind};
use formality_core::formality::{
    exact_formality_residual, search_formal_weights, trace_csv, FormalityProbe, SearchConfig, SearchInit,
};
use formality_core::hodge::{HodgeContext, MetricWeights, DEFAULT_TOLERANCE};
use formality_core::homology::{apply_coboundary, betti_numbers};
use formality_core::obstruction::{check_obstructions, classify_symmetric_model, CohomologySummary, RuleId, Verdict};
use formality_core::{Cochain, SimplicialComplex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn betti_golden_table() -> Outcome {
    let mut cases: Vec<(SimplicialComplex, Vec<usize>)> = Vec::new();
    for n in 1..=4 {
        let mut b = vec![0; n + 1];
        b[0] = 1;
        b[n] = 1;
        cases.push((sphere(n), b));
        cases.push((torus(n), (0..=n).map(|k| binom(n, k)).collect()));
    }
    for g in 0..=3 {
        cases.push((surface(g), vec![1, 2 * g, 1]));
    }
    for (k, expected) in &cases {
        let got = betti_numbers(k).0;
        ensure(&got == expected, || format!("{}: {got:?} != {expected:?}", k.name()))?;
    }
    Ok(format!("{} complexes exact, torus attains C(n,k)", cases.len()))
}

fn discrete_hodge_theorem() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut checked = 0;
    for k in common::zoo() {
        let ctx = HodgeContext::new(&k);
        let mut rng = ChaCha8Rng::seed_from_u64(k.f_vector().iter().sum::<usize>() as u64);
        for _ in 0..10 {
            let w = MetricWeights::log_uniform(&k, 0.1, 10.0, &mut rng);
            for d in 0..=k.dimension() {
                let b = ctx
                    .harmonic_basis(&w, d, DEFAULT_TOLERANCE)
                    .map_err(|e| format!("{} degree {d}: {e}", k.name()))?;
                ensure(b.len() == ctx.betti().get(d), || format!("{} degree {d}: nullity {}", k.name(), b.len()))?;
                ensure(b.residual <= 1e-8, || format!("{} degree {d}: residual {:e}", k.name(), b.residual))?;
                worst = worst.max(b.residual);
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (complex, draw, degree) cases, worst residual {worst:.1e}"))
}

fn intersection_forms() -> Outcome {
    let cases = [(product_complex(&sphere(2), &sphere(2)), 1, 1), (torus(4), 3, 3)];
    for (k, p, m) in &cases {
        let f = intersection_form(k, &MetricWeights::unit(k)).map_err(|e| format!("{}: {e}", k.name()))?;
        ensure(f.kind == FormKind::Symmetric, || "expected a symmetric form".into())?;
        let got = (f.b_plus, f.b_minus, f.b_zero, f.signature);
        ensure(got == (Some(*p), Some(*m), 0, Some(*p as i64 - *m as i64)), || format!("{}: {got:?}", k.name()))?;
        ensure(f.exact.b_plus == Some(*p) && f.exact.b_minus == Some(*m), || {
            format!("{}: exact route {:?}", k.name(), f.exact)
        })?;
    }
    Ok("S²×S² (1,1,σ=0), T⁴ (3,3,σ=0); float and exact routes agree".into())
}

fn load_summary(name: &str) -> CohomologySummary {
    let path = format!("{}/data/summaries/{name}.json", env!("CARGO_MANIFEST_DIR"));
    CohomologySummary::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn obstruction_corpus() -> Outcome {
    use RuleId::*;
    let s2 = check_obstructions(&CohomologySummary::new("surface:2", betti_numbers(&surface(2)).0)).unwrap();
    ensure(s2.fired() == [R1, R5], || format!("surface(2) fired {:?}", s2.fired()))?;
    let k3 = check_obstructions(&load_summary("k3")).unwrap();
    ensure(k3.verdict == Verdict::Obstructed && k3.fired() == [R1, R2, R11], || format!("K3 fired {:?}", k3.fired()))?;
    for (file, label) in [("s2xt2", "S²×T²"), ("s3xs1", "S³×S¹"), ("t4", "T⁴"), ("cp2", "ℂP²"), ("s2xs2", "S²×S²")]
    {
        let r = check_obstructions(&load_summary(file)).unwrap();
        ensure(r.verdict == Verdict::PassesElementaryTests, || format!("{file} fired {:?}", r.fired()))?;
        ensure(r.model.as_deref() == Some(label), || format!("{file}: model {:?}", r.model))?;
    }
    Ok("surface(2) {R1,R5}, K3 {R1,R2,R11}, five models labeled".into())
}

fn classification_exhaustive() -> Outcome {
    let mut total = 0;
    let mut passing = 0;
    let mut counterexamples = Vec::new();
    let mut consider = |s: CohomologySummary| {
        total += 1;
        let r = check_obstructions(&s).unwrap();
        if r.verdict == Verdict::PassesElementaryTests {
            passing += 1;
            if classify_symmetric_model(&s).unwrap().is_none() {
                counterexamples.push(s.betti.clone());
            }
        }
    };
    consider(CohomologySummary::new("n1", vec![1, 1]));
    for b1 in 0..=8 {
        consider(CohomologySummary::new("n2", vec![1, b1, 1]));
        consider(CohomologySummary::new("n3", vec![1, b1, b1, 1]));
        for b2 in 0..=8 {
            for p in 0..=b2 {
                consider(CohomologySummary::new("n4", vec![1, b1, b2, b1, 1]).with_middle(p, b2 - p));
            }
        }
    }
    ensure(counterexamples.is_empty(), || format!("unlabeled passing summaries: {counterexamples:?}"))?;
    Ok(format!("{total} summaries, {passing} pass, 0 counterexamples"))
}

fn formality_soundness() -> Outcome {
    for n in 1..=4 {
        let r = exact_formality_residual(&sphere(n)).map_err(|e| e.to_string())?;
        ensure(r.aggregate_squared == "0", || format!("sphere({n}) exact residual² {}", r.aggregate_squared))?;
    }
    let s = surface(2);
    let probe = FormalityProbe::new(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut lowest = f64::INFINITY;
    let mut draws = vec![MetricWeights::unit(&s)];
    draws.extend((0..20).map(|_| MetricWeights::log_uniform(&s, 0.1, 10.0, &mut rng)));
    for w in &draws {
        let a = probe.aggregate(w).map_err(|e| e.to_string())?;
        lowest = lowest.min(a);
    }
    ensure(lowest > 1e-3, || format!("surface(2) aggregate {lowest:e}"))?;

    let mut worst: f64 = 0.0;
    let mut compared = 0;
    for k in [torus(2), surface(2)] {
        let probe = FormalityProbe::new(&k);
        let ws = [MetricWeights::unit(&k), MetricWeights::log_uniform(&k, 0.1, 10.0, &mut rng)];
        for w in &ws {
            let bases = probe.bases(w).unwrap();
            let report = probe.report_with(w, &bases);
            let projectors: Vec<_> = (0..=k.dimension()).map(|d| common::harmonic_projector(&k, w, d)).collect();
            for p in report.pairs.iter().filter(|p| !p.zero_product) {
                let a = &bases[p.left_degree].vectors[p.left_index].values;
                let b = &bases[p.right_degree].vectors[p.right_index].values;
                let c = common::cup(&k, p.left_degree, a, p.right_degree, b);
                let d = p.left_degree + p.right_degree;
                let oracle = common::projected_residual(&projectors[d].0, w.degree(d), &c);
                worst = worst.max((oracle - p.residual).abs());
                compared += 1;
            }
        }
    }
    ensure(worst <= 1e-9, || format!("oracle mismatch {worst:e}"))?;
    Ok(format!("spheres exactly 0; surface(2) min aggregate {lowest:.3} over 21 draws; {compared} pairs match oracle to {worst:.1e}"))
}

fn search_contract() -> Outcome {
    let t = torus(2);
    for seed in 1..=5 {
        let cfg = SearchConfig { seed, init: SearchInit::Random, max_iterations: 4, ..SearchConfig::default() };
        let a = search_formal_weights(&t, &cfg).map_err(|e| e.to_string())?;
        let b = search_formal_weights(&t, &cfg).map_err(|e| e.to_string())?;
        ensure(a.trace.windows(2).all(|p| p[1] <= p[0]), || format!("seed {seed}: trace {:?}", a.trace))?;
        ensure(a.trace.last() <= a.trace.first(), || format!("seed {seed}: final above initial"))?;
        ensure(trace_csv(&a.trace) == trace_csv(&b.trace), || format!("seed {seed}: traces differ"))?;
        ensure(a.weights == b.weights, || format!("seed {seed}: weights differ"))?;
    }
    Ok("5 seeds: nonincreasing, final ≤ initial, byte-identical reruns".into())
}

fn random_cochain(k: &SimplicialComplex, d: usize, rng: &mut ChaCha8Rng) -> Cochain {
    Cochain { degree: d, values: (0..k.count(d)).map(|_| rng.random_range(-1.0..1.0)).collect() }
}

fn cup_laws() -> Outcome {
    let mut worst_leibniz: f64 = 0.0;
    let mut worst_class: f64 = 0.0;
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for k in common::zoo() {
        let n = k.dimension();
        let one = Cochain::constant(&k, 0, 1.0);
        for _ in 0..100 {
            let p = rng.random_range(0..n);
            let q = rng.random_range(0..n - p);
            let a = random_cochain(&k, p, &mut rng);
            let b = random_cochain(&k, q, &mut rng);
            let lhs = apply_coboundary(&k, &cup(&k, &a, &b).unwrap()).unwrap();
            let da_b = cup(&k, &apply_coboundary(&k, &a).unwrap(), &b).unwrap();
            let a_db = cup(&k, &a, &apply_coboundary(&k, &b).unwrap()).unwrap();
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..lhs.len() {
                worst_leibniz = worst_leibniz.max((lhs.values[i] - da_b.values[i] - sign * a_db.values[i]).abs());
            }
            for (x, y) in [(cup(&k, &one, &a).unwrap(), &a), (cup(&k, &a, &one).unwrap(), &a)] {
                for (u, v) in x.values.iter().zip(&y.values) {
                    worst_leibniz = worst_leibniz.max((u - v).abs());
                }
            }
        }
        let Ok(orientation) = k.orient() else { continue };
        let ctx = HodgeContext::new(&k);
        let w = MetricWeights::unit(&k);
        let bases: Vec<_> = (0..=n).map(|d| ctx.harmonic_basis(&w, d, DEFAULT_TOLERANCE).unwrap()).collect();
        for p in 0..=n {
            for q in 0..=n - p {
                let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
                for a in &bases[p].vectors {
                    for b in &bases[q].vectors {
                        let ab = cup(&k, a, b).unwrap();
                        let ba = cup(&k, b, a).unwrap();
                        for h in &bases[n - p - q].vectors {
                            let x = cup(&k, &ab, h).unwrap();
                            let y = cup(&k, &ba, h).unwrap();
                            let diff = common::integrate(&orientation.facet_signs, &x.values)
                                - sign * common::integrate(&orientation.facet_signs, &y.values);
                            let scale: f64 = x.values.iter().chain(&y.values).map(|v| v.abs()).sum();
                            if scale > 0.0 {
                                worst_class = worst_class.max(diff.abs() / scale);
                            }
                        }
                    }
                }
            }
        }
    }
    ensure(worst_leibniz <= 1e-10, || format!("Leibniz/unit defect {worst_leibniz:e}"))?;
    ensure(worst_class <= 1e-8, || format!("graded commutativity defect {worst_class:e}"))?;
    Ok(format!("Leibniz and unit defect {worst_leibniz:.1e}; class-level commutativity defect {worst_class:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("Betti golden table", betti_golden_table),
        ("discrete Hodge theorem", discrete_hodge_theorem),
        ("intersection form", intersection_forms),
        ("obstruction corpus", obstruction_corpus),
        ("classification exhaustiveness", classification_exhaustive),
        ("formality probe soundness", formality_soundness),
        ("search contract", search_contract),
        ("cup-product laws", cup_laws),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} [{name}] PASS ({detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} [{name}] FAIL ({detail}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
