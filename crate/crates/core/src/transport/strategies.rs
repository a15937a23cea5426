//! Closed-form evaluators behind a common trait, registered by name.
//!
//! A strategy looks at a transport task (two systems with their weights),
//! checks its own hypotheses, and either produces a value or reports the
//! specific violated precondition. New variants plug in through
//! [`StrategyRegistry::register`].

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use crate::cdf::ValueInterval;
use crate::error::{HypothesisViolation, Result};
use crate::ifs::{IfSystem, WeightVector};
use crate::rational::Rational;

/// Value a closed form produces: exact rational when every ingredient is
/// exact, a certified enclosure otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedFormValue {
    Exact(Rational),
    Enclosure(ValueInterval),
}

#[derive(Debug, Clone)]
pub struct ClosedFormEvaluation {
    pub value: ClosedFormValue,
    /// Orientation or case notes, e.g. which measure's CDF dominates.
    pub detail: Option<String>,
}

/// A W1 task: first measure `(f, p)`, second measure `(g, q)`, and the
/// staircase resolution enclosure-mode evaluators may use.
pub struct TransportTask<'a> {
    pub f: &'a IfSystem,
    pub p: &'a WeightVector,
    pub g: &'a IfSystem,
    pub q: &'a WeightVector,
    pub resolution: f64,
}

/// One closed-form route to W1, guarded by its own hypotheses.
pub trait ClosedForm: Send + Sync {
    /// Stable name used for registry lookup and report entries.
    fn name(&self) -> &'static str;

    /// One-line description for help output.
    fn describe(&self) -> &'static str;

    /// Evaluates the closed form, or reports the violated hypothesis via
    /// `Error::Hypothesis`.
    fn evaluate(&self, task: &TransportTask) -> Result<ClosedFormEvaluation>;
}

/// Name-indexed collection of closed-form strategies.
pub struct StrategyRegistry {
    entries: Vec<Box<dyn ClosedForm>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        StrategyRegistry { entries: Vec::new() }
    }

    pub fn register(&mut self, strategy: Box<dyn ClosedForm>) {
        self.entries.push(strategy);
    }

    pub fn get(&self, name: &str) -> Option<&dyn ClosedForm> {
        self.entries
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|s| s.name()).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn ClosedForm> {
        self.entries.iter().map(|s| s.as_ref())
    }
}

/// The four built-in closed forms.
pub fn standard_registry() -> StrategyRegistry {
    let mut registry = StrategyRegistry::empty();
    registry.register(Box::new(SameSystem));
    registry.register(Box::new(DominatedPair));
    registry.register(Box::new(ReflectedWeights));
    registry.register(Box::new(MirrorPair));
    registry
}

/// Both measures on one system of increasing maps with disjoint images and
/// one-signed weight dominance: W1 is the absolute moment difference.
struct SameSystem;

impl ClosedForm for SameSystem {
    fn name(&self) -> &'static str {
        "same-system"
    }

    fn describe(&self) -> &'static str {
        "one shared system of increasing maps, one-signed weight dominance"
    }

    fn evaluate(&self, task: &TransportTask) -> Result<ClosedFormEvaluation> {
        if task.f != task.g {
            return Err(HypothesisViolation::SameSystemRequired.into());
        }
        let value = super::w1_closed_same_ifs(task.f, task.p, task.q, task.resolution)?;
        let dominance = crate::ifs::check_weight_dominance(task.p, task.q)?;
        Ok(ClosedFormEvaluation {
            value,
            detail: Some(format!("weight dominance: {dominance:?}")),
        })
    }
}

/// Two two-map systems sharing image left endpoints with the second lying
/// pointwise below the first and carrying at least the first's left weight.
struct DominatedPair;

impl ClosedForm for DominatedPair {
    fn name(&self) -> &'static str {
        "dominated-pair"
    }

    fn describe(&self) -> &'static str {
        "two-map pair with the second system pointwise below the first"
    }

    fn evaluate(&self, task: &TransportTask) -> Result<ClosedFormEvaluation> {
        let value = super::w1_closed_two_ifs(task.f, task.g, task.p, task.q, task.resolution)?;
        Ok(ClosedFormEvaluation {
            value,
            detail: Some("second measure's CDF dominates; mass moves left".into()),
        })
    }
}

/// One reflected-family system `(x/r, 1-x/r)` with `p = (1/(2k+1), ...)`
/// and the second weight vector reversed; evaluated through the signed
/// identity cost with crossing `r^2/(r^2+1)`.
struct ReflectedWeights;

impl ClosedForm for ReflectedWeights {
    fn name(&self) -> &'static str {
        "reflected-weights"
    }

    fn describe(&self) -> &'static str {
        "reflected two-map family with reversed weight pair, signed cost"
    }

    fn evaluate(&self, task: &TransportTask) -> Result<ClosedFormEvaluation> {
        if task.f != task.g {
            return Err(HypothesisViolation::SameSystemRequired.into());
        }
        let r = task
            .f
            .reflected_pair_ratio()
            .ok_or(HypothesisViolation::ReflectedFamilyRequired)?;
        let k = reflected_weight_index(task.p, task.q)
            .ok_or(HypothesisViolation::ReflectedWeightForm)?;
        let report = super::w1_reflected_weights(&r, k, task.resolution)?;
        Ok(ClosedFormEvaluation {
            value: ClosedFormValue::Enclosure(report.signed),
            detail: Some(format!(
                "cost sign flips at r^2/(r^2+1); numeric cross-check [{}, {}]",
                report.numeric.lo, report.numeric.hi
            )),
        })
    }
}

/// `p = (1/(2k+1), 2k/(2k+1))` with `q` its reversal; returns `k`.
fn reflected_weight_index(p: &WeightVector, q: &WeightVector) -> Option<u32> {
    if p.len() != 2 || q.len() != 2 {
        return None;
    }
    let p1 = &p.exact()[0];
    if !p1.numer().is_one() {
        return None;
    }
    let den = p1.denom();
    if den % BigInt::from(2) != BigInt::from(1) || *den < BigInt::from(3) {
        return None;
    }
    if q.exact()[0] != p.exact()[1] || q.exact()[1] != *p1 {
        return None;
    }
    let k: BigInt = (den - BigInt::from(1)) / BigInt::from(2);
    k.to_u32()
}

/// The reflected family vs the positive family with one shared ratio and
/// one shared weight vector.
struct MirrorPair;

impl ClosedForm for MirrorPair {
    fn name(&self) -> &'static str {
        "mirror-pair"
    }

    fn describe(&self) -> &'static str {
        "reflected vs positive family, common ratio, equal weights"
    }

    fn evaluate(&self, task: &TransportTask) -> Result<ClosedFormEvaluation> {
        // accept either order of (reflected, positive)
        let oriented = match (task.f.reflected_pair_ratio(), task.g.positive_pair_ratio()) {
            (Some(rf), Some(rg)) => Some((rf, rg, task.p, task.q)),
            _ => match (task.g.reflected_pair_ratio(), task.f.positive_pair_ratio()) {
                (Some(rf), Some(rg)) => Some((rf, rg, task.q, task.p)),
                _ => None,
            },
        };
        let (rf, rg, p, q) = oriented.ok_or(HypothesisViolation::MirrorPairSystems)?;
        if rf != rg {
            return Err(HypothesisViolation::MirrorPairSystems.into());
        }
        if p != q {
            return Err(HypothesisViolation::MirrorPairWeights.into());
        }
        let (value, case) = super::w1_mirror_pair(&rf, p)?;
        Ok(ClosedFormEvaluation {
            value: ClosedFormValue::Exact(value),
            detail: Some(format!("case: {case:?}")),
        })
    }
}
