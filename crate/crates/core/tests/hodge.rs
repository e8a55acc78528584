mod common;

use formality_core::complex::{surface, torus};
use formality_core::hodge::{HodgeContext, MetricWeights, DEFAULT_TOLERANCE};
use formality_core::Cochain;
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_cochain(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Cochain {
    Cochain { degree: d, values: (0..n).map(|_| rng.random_range(-1.0..1.0)).collect() }
}

#[test]
fn harmonic_span_matches_oracle_projector() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in common::small_zoo() {
        let ctx = HodgeContext::new(&k);
        for w in [MetricWeights::unit(&k), MetricWeights::log_uniform(&k, 0.2, 5.0, &mut rng)] {
            for d in 0..=k.dimension() {
                let (p, nullity) = common::harmonic_projector(&k, &w, d);
                let basis = ctx.harmonic_basis(&w, d, DEFAULT_TOLERANCE).unwrap();
                assert_eq!(basis.len(), nullity, "{} degree {d}", k.name());
                for v in &basis.vectors {
                    let pv = &p * DVector::from_column_slice(&v.values);
                    let err = v.values.iter().zip(pv.iter()).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
                    let scale = v.values.iter().map(|x| x.abs()).fold(0.0, f64::max);
                    assert!(err <= 1e-9 * scale, "{} degree {d}: {err:e}", k.name());
                }
            }
        }
    }
}

#[test]
fn harmonic_projection_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for k in [torus(2), surface(2), torus(3)] {
        let ctx = HodgeContext::new(&k);
        let w = MetricWeights::log_uniform(&k, 0.2, 5.0, &mut rng);
        for d in 0..=k.dimension() {
            let basis = ctx.harmonic_basis(&w, d, DEFAULT_TOLERANCE).unwrap();
            let (p, _) = common::harmonic_projector(&k, &w, d);
            let c = random_cochain(k.count(d), d, &mut rng);
            let lib = ctx.harmonic_projection(&basis, &w, &c).unwrap();
            let oracle = &p * DVector::from_column_slice(&c.values);
            for (x, y) in lib.values.iter().zip(oracle.iter()) {
                assert!((x - y).abs() <= 1e-9, "{} degree {d}", k.name());
            }
        }
    }
}

#[test]
fn projector_is_invariant_under_per_degree_scaling() {
    let k = surface(2);
    let ctx = HodgeContext::new(&k);
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let w = MetricWeights::log_uniform(&k, 0.5, 2.0, &mut rng);
    let c = random_cochain(k.count(1), 1, &mut rng);
    let base = ctx.harmonic_projection(&ctx.harmonic_basis(&w, 1, DEFAULT_TOLERANCE).unwrap(), &w, &c).unwrap();
    for d in 0..=2 {
        let scaled = w.scaled_degree(d, 7.5);
        // Scaling an adjacent degree changes the metric; only degree 1 itself
        // and the global scale leave the projector alone.
        if d != 1 {
            continue;
        }
        let basis = ctx.harmonic_basis(&scaled, 1, DEFAULT_TOLERANCE).unwrap();
        let p = ctx.harmonic_projection(&basis, &scaled, &c).unwrap();
        for (x, y) in p.values.iter().zip(&base.values) {
            assert!((x - y).abs() <= 1e-9);
        }
    }
    let global = w.scaled(3.0);
    let basis = ctx.harmonic_basis(&global, 1, DEFAULT_TOLERANCE).unwrap();
    let p = ctx.harmonic_projection(&basis, &global, &c).unwrap();
    for (x, y) in p.values.iter().zip(&base.values) {
        assert!((x - y).abs() <= 1e-9);
    }
}

#[test]
fn decomposition_reassembles_and_is_orthogonal() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for k in [torus(2), torus(3)] {
        let ctx = HodgeContext::new(&k);
        let w = MetricWeights::log_uniform(&k, 0.2, 5.0, &mut rng);
        let d = 1;
        let basis = ctx.harmonic_basis(&w, d, DEFAULT_TOLERANCE).unwrap();
        let c = random_cochain(k.count(d), d, &mut rng);
        let h = ctx.hodge_decompose(&w, &c, &basis).unwrap();
        let norm = w.norm(&c);
        for i in 0..c.len() {
            let sum = h.exact.values[i] + h.coexact.values[i] + h.harmonic.values[i];
            assert!((sum - c.values[i]).abs() <= 1e-8 * norm);
        }
        for (a, b) in [(&h.exact, &h.coexact), (&h.exact, &h.harmonic), (&h.coexact, &h.harmonic)] {
            assert!(w.inner(a, b).abs() <= 1e-8 * norm * norm, "{}", k.name());
        }
    }
}
