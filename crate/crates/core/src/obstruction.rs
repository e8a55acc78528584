//! Topological obstructions to geometric formality, evaluated on cohomology
//! summaries, and matching against the real cohomology of low-dimensional
//! compact symmetric spaces.
//!
//! Rules only read Betti numbers and, when `n ≡ 0 (mod 4)`, the positive and
//! negative indices of the middle intersection form. A rule that needs
//! middle data which the summary lacks is reported as not evaluated.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::complex::generators::binomial;
use crate::complex::SimplicialComplex;
use crate::cup;
use crate::error::{Error, Result};
use crate::hodge::{HodgeContext, MetricWeights};

/// Largest dimension whose torus Betti numbers fit comfortably in `u64`.
pub const MAX_SUMMARY_DIMENSION: usize = 60;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummarySource {
    ComputedFromComplex,
    #[default]
    UserSupplied,
}

/// Rational cohomology data of a closed connected oriented manifold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CohomologySummary {
    pub name: String,
    pub dimension: usize,
    pub betti: Vec<usize>,
    pub orientable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_plus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_minus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<i64>,
    #[serde(default)]
    pub source: SummarySource,
}

impl CohomologySummary {
    pub fn new(name: impl Into<String>, betti: Vec<usize>) -> Self {
        Self {
            name: name.into(),
            dimension: betti.len().saturating_sub(1),
            betti,
            orientable: true,
            b_plus: None,
            b_minus: None,
            signature: None,
            source: SummarySource::UserSupplied,
        }
    }

    pub fn with_middle(mut self, b_plus: usize, b_minus: usize) -> Self {
        self.b_plus = Some(b_plus);
        self.b_minus = Some(b_minus);
        self.signature = Some(b_plus as i64 - b_minus as i64);
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Self = serde_json::from_str(text)?;
        s.validate()?;
        Ok(s)
    }

    pub fn to_json(&self) -> String {
        crate::io::canonical_json(self)
    }

    pub fn b(&self, k: usize) -> usize {
        self.betti.get(k).copied().unwrap_or(0)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.betti.iter().enumerate().map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    pub fn has_middle_data(&self) -> bool {
        self.b_plus.is_some()
    }

    /// Checks the invariants every rule relies on.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InconsistentSummary(m));
        let n = self.dimension;
        if n == 0 {
            return bad("dimension must be positive".into());
        }
        if n > MAX_SUMMARY_DIMENSION {
            return Err(Error::DimensionTooLarge(n));
        }
        if !self.orientable {
            return bad("obstructions are stated for orientable manifolds".into());
        }
        if self.betti.len() != n + 1 {
            return bad(format!("expected {} Betti numbers, found {}", n + 1, self.betti.len()));
        }
        if self.betti[0] != 1 || self.betti[n] != 1 {
            return bad("b_0 and b_n must equal 1 for a closed connected oriented manifold".into());
        }
        if !self.betti.iter().eq(self.betti.iter().rev()) {
            return bad(format!("Betti vector {:?} violates Poincaré duality", self.betti));
        }
        match (self.b_plus, self.b_minus) {
            (None, None) => {
                if self.signature.is_some() {
                    return bad("signature given without b_plus and b_minus".into());
                }
            }
            (Some(p), Some(m)) => {
                if !n.is_multiple_of(4) {
                    return bad(format!("b_plus/b_minus need dimension divisible by 4, got {n}"));
                }
                if p + m != self.betti[n / 2] {
                    return bad(format!("b_plus + b_minus = {} but b_{} = {}", p + m, n / 2, self.betti[n / 2]));
                }
                if let Some(s) = self.signature {
                    if s != p as i64 - m as i64 {
                        return bad(format!("signature {s} differs from b_plus - b_minus = {}", p as i64 - m as i64));
                    }
                }
            }
            _ => return bad("b_plus and b_minus must be given together".into()),
        }
        Ok(())
    }
}

/// Summary of a closed oriented pseudomanifold under the metric `w`.
pub fn summarize(k: &SimplicialComplex, w: &MetricWeights) -> Result<CohomologySummary> {
    let orientation = k.orient()?;
    let ctx = HodgeContext::new(k);
    let n = k.dimension();
    let betti = ctx.betti().clone();
    if !betti.is_dual_symmetric() {
        return Err(Error::DualityFailure(betti.0));
    }
    let mut s = CohomologySummary::new(k.name(), betti.0);
    s.source = SummarySource::ComputedFromComplex;
    if n.is_multiple_of(4) {
        let form = cup::intersection_form_in(&ctx, &orientation, w)?;
        if let (Some(p), Some(m)) = (form.b_plus, form.b_minus) {
            s = s.with_middle(p, m);
        }
    }
    s.validate()?;
    Ok(s)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
    R11,
}

impl RuleId {
    pub const ALL: [RuleId; 11] = [
        RuleId::R1,
        RuleId::R2,
        RuleId::R3,
        RuleId::R4,
        RuleId::R5,
        RuleId::R6,
        RuleId::R7,
        RuleId::R8,
        RuleId::R9,
        RuleId::R10,
        RuleId::R11,
    ];

    pub fn citation(self) -> &'static str {
        match self {
            RuleId::R1 => "Betti number bound by the torus: b_k(M) ≤ b_k(T^n)",
            RuleId::R2 => "middle-degree bound by the torus: b_2m^±(M) ≤ b_2m^±(T^n) for n = 4m",
            RuleId::R3 => "first Betti number gap: b_1(M) ≠ n − 1",
            RuleId::R4 => "nonzero first Betti number forces vanishing Euler characteristic",
            RuleId::R5 => "surfaces: b_1 · χ obstructs geometric formality",
            RuleId::R6 => "three-manifolds: b_1 ∈ {0, 1, 3}",
            RuleId::R7 => "four-manifolds: b_1 ∈ {0, 1, 2, 4}",
            RuleId::R8 => "four-manifolds with b_1 = 2: b_2^+ = b_2^- = 1",
            RuleId::R9 => "four-manifolds with b_1 = 1: b_2 = 0",
            RuleId::R10 => "four-manifolds with b_1 = 0: b_2^± odd or zero (almost complex parity)",
            RuleId::R11 => "four-manifolds with b_1 = 0: b_2^± ≠ 3, hence b_2^± ∈ {0, 1}",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RuleStatus {
    Passed,
    /// The violated inequality with the summary's numbers substituted.
    Fired {
        violation: String,
    },
    /// Hypotheses of the rule do not apply to this dimension or Betti vector.
    NotApplicable,
    /// Needs middle data that the summary does not carry.
    NotEvaluated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleEvaluation {
    pub id: RuleId,
    pub citation: String,
    #[serde(flatten)]
    pub status: RuleStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Obstructed,
    PassesElementaryTests,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub name: String,
    pub verdict: Verdict,
    /// Every rule in order, including those that did not fire.
    pub rules: Vec<RuleEvaluation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub model: Option<String>,
}

impl ObstructionReport {
    pub fn fired(&self) -> Vec<RuleId> {
        self.rules.iter().filter(|r| matches!(r.status, RuleStatus::Fired { .. })).map(|r| r.id).collect()
    }

    pub fn status(&self, id: RuleId) -> &RuleStatus {
        &self.rules.iter().find(|r| r.id == id).expect("every rule is evaluated").status
    }
}

fn check(ok: bool, violation: impl FnOnce() -> String) -> RuleStatus {
    if ok {
        RuleStatus::Passed
    } else {
        RuleStatus::Fired { violation: violation() }
    }
}

fn evaluate(id: RuleId, s: &CohomologySummary) -> RuleStatus {
    use RuleStatus::{NotApplicable, NotEvaluated};
    let n = s.dimension;
    let b1 = s.b(1);
    let chi = s.euler_characteristic();
    let middle = s.b_plus.zip(s.b_minus);
    match id {
        RuleId::R1 => {
            let bad: Vec<String> = (0..=n)
                .filter(|&k| s.b(k) > binomial(n, k))
                .map(|k| format!("b_{k} = {} > C({n},{k}) = {}", s.b(k), binomial(n, k)))
                .collect();
            check(bad.is_empty(), || bad.join("; "))
        }
        RuleId::R2 => {
            if !n.is_multiple_of(4) {
                return NotApplicable;
            }
            let Some((p, m)) = middle else { return NotEvaluated };
            let cap = binomial(n, n / 2) / 2;
            let bad: Vec<String> = [("+", p), ("-", m)]
                .into_iter()
                .filter(|&(_, v)| v > cap)
                .map(|(sign, v)| format!("b_{}^{sign} = {v} > {cap}", n / 2))
                .collect();
            check(bad.is_empty(), || bad.join("; "))
        }
        RuleId::R3 => check(b1 != n - 1, || format!("b_1 = {b1} = n - 1")),
        RuleId::R4 => {
            // In dimension 2 the sharper surface rule applies instead.
            if n == 2 || b1 == 0 {
                return NotApplicable;
            }
            check(chi == 0, || format!("b_1 = {b1} ≠ 0 but χ = {chi} ≠ 0"))
        }
        RuleId::R5 => {
            if n != 2 {
                return NotApplicable;
            }
            check(b1 as i64 * chi == 0, || format!("b_1 · χ = {b1} · {chi} = {} ≠ 0", b1 as i64 * chi))
        }
        RuleId::R6 => {
            if n != 3 {
                return NotApplicable;
            }
            check(matches!(b1, 0 | 1 | 3), || format!("b_1 = {b1} ∉ {{0, 1, 3}}"))
        }
        RuleId::R7 => {
            if n != 4 {
                return NotApplicable;
            }
            check(matches!(b1, 0 | 1 | 2 | 4), || format!("b_1 = {b1} ∉ {{0, 1, 2, 4}}"))
        }
        RuleId::R8 => {
            if n != 4 || b1 != 2 {
                return NotApplicable;
            }
            let Some((p, m)) = middle else { return NotEvaluated };
            check(p == 1 && m == 1, || format!("b_1 = 2 but (b_2^+, b_2^-) = ({p}, {m}) ≠ (1, 1)"))
        }
        RuleId::R9 => {
            if n != 4 || b1 != 1 {
                return NotApplicable;
            }
            check(s.b(2) == 0, || format!("b_1 = 1 but b_2 = {} ≠ 0", s.b(2)))
        }
        RuleId::R10 => {
            if n != 4 || b1 != 0 {
                return NotApplicable;
            }
            let Some((p, m)) = middle else { return NotEvaluated };
            let bad: Vec<String> = [("+", p), ("-", m)]
                .into_iter()
                .filter(|&(_, v)| v != 0 && v % 2 == 0)
                .map(|(sign, v)| format!("b_2^{sign} = {v} is even and nonzero"))
                .collect();
            check(bad.is_empty(), || bad.join("; "))
        }
        RuleId::R11 => {
            if n != 4 || b1 != 0 {
                return NotApplicable;
            }
            let Some((p, m)) = middle else { return NotEvaluated };
            let bad: Vec<String> = [("+", p), ("-", m)]
                .into_iter()
                .filter(|&(_, v)| v == 3)
                .map(|(sign, _)| format!("b_2^{sign} = 3"))
                .collect();
            check(bad.is_empty(), || bad.join("; "))
        }
    }
}

/// Evaluates every rule; the verdict is obstructed iff any rule fired.
pub fn check_obstructions(s: &CohomologySummary) -> Result<ObstructionReport> {
    s.validate()?;
    let rules: Vec<RuleEvaluation> = RuleId::ALL
        .iter()
        .map(|&id| RuleEvaluation { id, citation: id.citation().to_owned(), status: evaluate(id, s) })
        .collect();
    let obstructed = rules.iter().any(|r| matches!(r.status, RuleStatus::Fired { .. }));
    let model = if !obstructed && s.dimension <= 4 { classify_symmetric_model(s)? } else { None };
    Ok(ObstructionReport {
        name: s.name.clone(),
        verdict: if obstructed { Verdict::Obstructed } else { Verdict::PassesElementaryTests },
        rules,
        model,
    })
}

/// The compact symmetric space in dimension ≤ 4 whose real cohomology
/// matches the summary, if any.
///
/// Without middle data a label is given only when `b_{n/2}` vanishes or the
/// middle form is skew, since otherwise the form is not pinned down.
pub fn classify_symmetric_model(s: &CohomologySummary) -> Result<Option<String>> {
    s.validate()?;
    if s.dimension > 4 {
        return Err(Error::DimensionTooLarge(s.dimension));
    }
    let middle = s.b_plus.zip(s.b_minus);
    let label = match (s.betti.as_slice(), middle) {
        ([1, 1], _) => Some("S¹"),
        ([1, 0, 1], _) => Some("S²"),
        ([1, 2, 1], _) => Some("T²"),
        ([1, 0, 0, 1], _) => Some("S³"),
        ([1, 1, 1, 1], _) => Some("S²×S¹"),
        ([1, 3, 3, 1], _) => Some("T³"),
        ([1, 0, 0, 0, 1], _) => Some("S⁴"),
        ([1, 1, 0, 1, 1], _) => Some("S³×S¹"),
        ([1, 0, 1, 0, 1], Some((1, 0))) => Some("ℂP²"),
        ([1, 0, 1, 0, 1], Some((0, 1))) => Some("reversed ℂP²"),
        ([1, 0, 2, 0, 1], Some((1, 1))) => Some("S²×S²"),
        ([1, 2, 2, 2, 1], Some((1, 1))) => Some("S²×T²"),
        ([1, 4, 6, 4, 1], Some((3, 3))) => Some("T⁴"),
        _ => None,
    };
    Ok(label.map(str::to_owned))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(CohomologySummary::new("x", vec![1, 4, 1]).validate().is_ok());
        assert!(CohomologySummary::new("x", vec![1, 4, 2]).validate().is_err());
        assert!(CohomologySummary::new("x", vec![2, 0, 2]).validate().is_err());
        assert!(CohomologySummary::new("x", vec![1, 2, 1]).with_middle(1, 1).validate().is_err());
        assert!(CohomologySummary::new("x", vec![1, 0, 2, 0, 1]).with_middle(1, 0).validate().is_err());
        let mut s = CohomologySummary::new("x", vec![1, 0, 1]);
        s.orientable = false;
        assert!(s.validate().is_err());
    }

    #[test]
    fn surface_of_genus_two() {
        let r = check_obstructions(&CohomologySummary::new("surface:2", vec![1, 4, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::Obstructed);
        assert_eq!(r.fired(), vec![RuleId::R1, RuleId::R5]);
        assert_eq!(r.model, None);
    }

    #[test]
    fn k3() {
        let s = CohomologySummary::new("K3", vec![1, 0, 22, 0, 1]).with_middle(3, 19);
        let r = check_obstructions(&s).unwrap();
        assert_eq!(r.fired(), vec![RuleId::R1, RuleId::R2, RuleId::R11]);
        match r.status(RuleId::R1) {
            RuleStatus::Fired { violation } => assert_eq!(violation, "b_2 = 22 > C(4,2) = 6"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn missing_middle_data_is_marked() {
        let r = check_obstructions(&CohomologySummary::new("K3", vec![1, 0, 22, 0, 1])).unwrap();
        assert_eq!(r.fired(), vec![RuleId::R1]);
        for id in [RuleId::R2, RuleId::R10, RuleId::R11] {
            assert_eq!(r.status(id), &RuleStatus::NotEvaluated);
        }
        assert_eq!(r.status(RuleId::R8), &RuleStatus::NotApplicable);
    }

    #[test]
    fn models() {
        let label = |s: CohomologySummary| check_obstructions(&s).unwrap().model;
        assert_eq!(label(CohomologySummary::new("a", vec![1, 2, 2, 2, 1]).with_middle(1, 1)).as_deref(), Some("S²×T²"));
        assert_eq!(label(CohomologySummary::new("b", vec![1, 1, 1, 1])).as_deref(), Some("S²×S¹"));
        assert_eq!(label(CohomologySummary::new("c", vec![1, 0, 1, 0, 1]).with_middle(1, 0)).as_deref(), Some("ℂP²"));
        assert_eq!(label(CohomologySummary::new("d", vec![1, 0, 1, 0, 1])), None);
        assert!(classify_symmetric_model(&CohomologySummary::new("e", vec![1, 0, 0, 0, 0, 1])).is_err());
    }

    #[test]
    fn b1_three_in_dimension_four() {
        let r = check_obstructions(&CohomologySummary::new("x", vec![1, 3, 4, 3, 1])).unwrap();
        assert_eq!(r.fired(), vec![RuleId::R3, RuleId::R7]);
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"name":"K3","dimension":4,"betti":[1,0,22,0,1],"orientable":true,"b_plus":3,"b_minus":19}"#;
        let s = CohomologySummary::from_json(text).unwrap();
        assert_eq!(s.b_minus, Some(19));
        assert_eq!(CohomologySummary::from_json(&s.to_json()).unwrap(), s);
        assert!(CohomologySummary::from_json(
            r#"{"name":"x","dimension":2,"betti":[1,0,1],"orientable":true,"extra":1}"#
        )
        .is_err());
    }
}
