use formality_core::complex::{product_complex, sphere, surface, torus};
use formality_core::hodge::MetricWeights;
use formality_core::obstruction::{check_obstructions, summarize, CohomologySummary, RuleStatus, Verdict};
use proptest::prelude::*;

fn summary4(b1: usize, b2: usize) -> CohomologySummary {
    CohomologySummary::new("x", vec![1, b1, b2, b1, 1])
}

#[test]
fn middle_data_only_adds_fired_rules() {
    for b1 in 0..=6 {
        for b2 in 0..=8 {
            let bare = check_obstructions(&summary4(b1, b2)).unwrap();
            for p in 0..=b2 {
                let full = check_obstructions(&summary4(b1, b2).with_middle(p, b2 - p)).unwrap();
                for id in bare.fired() {
                    assert!(full.fired().contains(&id), "b1={b1} b2={b2} p={p}: {id} dropped");
                }
                for r in &full.rules {
                    assert_ne!(r.status, RuleStatus::NotEvaluated, "{} unevaluated with middle data", r.id);
                }
            }
        }
    }
}

#[test]
fn computed_summaries_of_symmetric_models_pass() {
    let cases = [
        (sphere(2), "S²"),
        (torus(2), "T²"),
        (torus(3), "T³"),
        (product_complex(&sphere(2), &sphere(2)), "S²×S²"),
        (product_complex(&sphere(2), &torus(1)), "S²×S¹"),
    ];
    for (k, label) in cases {
        let s = summarize(&k, &MetricWeights::unit(&k)).unwrap();
        let r = check_obstructions(&s).unwrap();
        assert_eq!(r.verdict, Verdict::PassesElementaryTests, "{label}: {:?}", r.fired());
        assert_eq!(r.model.as_deref(), Some(label));
    }
}

#[test]
fn higher_genus_surfaces_are_obstructed() {
    for g in 2..=3 {
        let s = surface(g);
        let r = check_obstructions(&summarize(&s, &MetricWeights::unit(&s)).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        assert!(r.model.is_none());
    }
}

#[test]
fn inconsistent_summaries_are_rejected() {
    assert!(check_obstructions(&CohomologySummary::new("x", vec![1, 2, 3])).is_err());
    assert!(check_obstructions(&CohomologySummary::new("x", vec![2, 0, 2])).is_err());
    assert!(check_obstructions(&summary4(0, 2).with_middle(1, 0)).is_err());
}

proptest! {
    #[test]
    fn evaluation_is_pure_and_round_trips(b1 in 0usize..10, b2 in 0usize..12, p in 0usize..12) {
        let s = if p <= b2 { summary4(b1, b2).with_middle(p, b2 - p) } else { summary4(b1, b2) };
        let first = check_obstructions(&s).unwrap();
        let again = check_obstructions(&CohomologySummary::from_json(&s.to_json()).unwrap()).unwrap();
        prop_assert_eq!(first, again);
    }
}
