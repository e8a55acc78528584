//! The `analyze` pipeline: homology, Hodge, cup, formality, obstructions.

use std::collections::BTreeMap;
use std::time::Instant;

use formality_core::cup::{self, IntersectionForm};
use formality_core::formality::{self, ExactFormalityReport, FormalityProbe, FormalityReport};
use formality_core::hodge::{HarmonicBasis, MetricWeights};
use formality_core::obstruction::{self, CohomologySummary, ObstructionReport, SummarySource, Verdict};
use formality_core::{BettiVector, Error, SimplicialComplex};
use serde::Serialize;

use crate::cache::Cache;

/// Unit-weight exact residuals are attempted up to this many simplices.
pub const EXACT_FORMALITY_LIMIT: usize = 4000;

#[derive(Clone, Copy, Debug, Default)]
pub struct Stages {
    pub hodge: bool,
    pub formality: bool,
    pub obstructions: bool,
}

#[derive(Serialize)]
pub struct ComplexInfo {
    pub name: String,
    pub dimension: usize,
    pub f_vector: Vec<usize>,
    pub euler_characteristic: i64,
    pub closed_pseudomanifold: bool,
    pub orientable: bool,
}

#[derive(Serialize)]
pub struct HarmonicSummary {
    pub degree: usize,
    pub dimension: usize,
    pub residual: f64,
    pub lambda_max: f64,
    pub spectral_gap: Option<f64>,
}

#[derive(Serialize)]
pub struct StageError {
    pub stage: String,
    pub message: String,
    pub exit_code: u8,
}

#[derive(Serialize)]
pub struct RunReport {
    pub tool: String,
    pub version: String,
    pub complex: ComplexInfo,
    pub weights: String,
    pub tolerance: f64,
    pub betti: BettiVector,
    pub duality: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hodge: Option<Vec<HarmonicSummary>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intersection: Option<IntersectionForm>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formality: Option<FormalityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_formality: Option<ExactFormalityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub obstructions: Option<ObstructionReport>,
    pub errors: Vec<StageError>,
    /// Wall-clock seconds per stage; the only nondeterministic field.
    pub timings: BTreeMap<String, f64>,
}

impl RunReport {
    /// 0 on success, 1 when an obstruction fired, or the worst stage error.
    pub fn exit_code(&self) -> u8 {
        if let Some(worst) = self.errors.iter().map(|e| e.exit_code).max() {
            return worst;
        }
        match &self.obstructions {
            Some(r) if r.verdict == Verdict::Obstructed => 1,
            _ => 0,
        }
    }
}

/// Input problems exit with 2; failures of the numerical kernels with 3.
pub fn error_code(e: &Error) -> u8 {
    match e {
        Error::SolveFailed { .. }
        | Error::NotHarmonic(_)
        | Error::NullspaceMismatch { .. }
        | Error::DegenerateForm(_)
        | Error::RouteMismatch(_) => 3,
        _ => 2,
    }
}

pub struct Analysis<'a> {
    pub complex: &'a SimplicialComplex,
    pub weights: &'a MetricWeights,
    pub weights_label: String,
    pub unit_weights: bool,
    pub tolerance: f64,
    pub stages: Stages,
    pub cache: Option<Cache>,
}

struct Timer<'t> {
    timings: &'t mut BTreeMap<String, f64>,
}

impl Timer<'_> {
    fn run<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.timings.entry(stage.to_owned()).or_default() += start.elapsed().as_secs_f64();
        out
    }
}

impl Analysis<'_> {
    fn bases(&self, probe: &FormalityProbe<'_>) -> Result<Vec<HarmonicBasis>, Error> {
        let ctx = probe.context();
        (0..=self.complex.dimension())
            .map(|k| {
                if let Some(b) = self.cache.as_ref().and_then(|c| c.load(self.weights, self.tolerance, k)) {
                    return Ok(b);
                }
                let b = ctx.harmonic_basis(self.weights, k, self.tolerance)?;
                if let Some(c) = &self.cache {
                    if let Err(e) = c.store(self.weights, self.tolerance, &b) {
                        eprintln!("warning: cannot write cache entry in {}: {e}", c.dir().display());
                    }
                }
                Ok(b)
            })
            .collect()
    }

    pub fn run(&self) -> RunReport {
        let k = self.complex;
        let n = k.dimension();
        let mut timings = BTreeMap::new();
        let mut errors = Vec::new();
        let mut fail = |stage: &str, e: Error| {
            errors.push(StageError { stage: stage.to_owned(), message: e.to_string(), exit_code: error_code(&e) })
        };
        let mut t = Timer { timings: &mut timings };

        let orientation = k.orient();
        let betti = t.run("betti", || formality_core::homology::betti_numbers(k));
        let duality = orientation.is_ok() && betti.is_dual_symmetric();
        let probe = FormalityProbe::with_betti(k, betti.clone());

        let needs_bases = self.stages.hodge || self.stages.formality;
        let bases = if needs_bases {
            match t.run("hodge", || self.bases(&probe)) {
                Ok(b) => Some(b),
                Err(e) => {
                    fail("hodge", e);
                    None
                }
            }
        } else {
            None
        };
        let hodge = bases.as_ref().filter(|_| self.stages.hodge).map(|bs| {
            bs.iter()
                .map(|b| HarmonicSummary {
                    degree: b.degree,
                    dimension: b.len(),
                    residual: b.residual,
                    lambda_max: b.lambda_max,
                    spectral_gap: b.spectral_gap,
                })
                .collect()
        });

        let wants_form = (self.stages.hodge || self.stages.obstructions) && n.is_multiple_of(2) && duality;
        let intersection = if wants_form {
            let o = orientation.as_ref().expect("duality implies orientable");
            match t.run("cup", || cup::intersection_form_in(probe.context(), o, self.weights)) {
                Ok(f) => Some(f),
                Err(e) => {
                    fail("cup", e);
                    None
                }
            }
        } else {
            None
        };

        let formality = match (&bases, self.stages.formality) {
            (Some(b), true) => Some(t.run("formality", || probe.report_with(self.weights, b))),
            _ => None,
        };
        let total: usize = k.f_vector().iter().sum();
        let exact_formality = if self.stages.formality && self.unit_weights && total <= EXACT_FORMALITY_LIMIT {
            match t.run("formality", || formality::exact_formality_residual(k)) {
                Ok(r) => Some(r),
                Err(e) => {
                    fail("formality", e);
                    None
                }
            }
        } else {
            None
        };

        let obstructions = if self.stages.obstructions {
            let summary = match &orientation {
                Err(e) => Err(Error::InconsistentSummary(format!("complex is not a closed oriented manifold: {e}"))),
                Ok(_) if !duality => Err(Error::DualityFailure(betti.0.clone())),
                Ok(_) => {
                    let mut s = CohomologySummary::new(k.name(), betti.0.clone());
                    s.source = SummarySource::ComputedFromComplex;
                    match (&intersection, n.is_multiple_of(4)) {
                        (Some(f), true) => match (f.b_plus, f.b_minus) {
                            (Some(p), Some(m)) => Ok(s.with_middle(p, m)),
                            _ => Ok(s),
                        },
                        _ => Ok(s),
                    }
                }
            };
            match t.run("obstructions", || summary.and_then(|s| obstruction::check_obstructions(&s))) {
                Ok(r) => Some(r),
                Err(e) => {
                    fail("obstructions", e);
                    None
                }
            }
        } else {
            None
        };

        RunReport {
            tool: "formality".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            complex: ComplexInfo {
                name: k.name().to_owned(),
                dimension: n,
                f_vector: k.f_vector(),
                euler_characteristic: k.euler_characteristic(),
                closed_pseudomanifold: k.is_closed_pseudomanifold(),
                orientable: orientation.is_ok(),
            },
            weights: self.weights_label.clone(),
            tolerance: self.tolerance,
            betti,
            duality,
            hodge,
            intersection,
            formality,
            exact_formality,
            obstructions,
            errors,
            timings,
        }
    }
}
