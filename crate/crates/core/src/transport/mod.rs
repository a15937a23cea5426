//! W1 distances: certified numeric integration of `|F - G|`, closed forms
//! behind hypothesis guards, and the cross-checked report.
//!
//! Every closed form lives behind a [`ClosedForm`] strategy in a
//! [`StrategyRegistry`]; a report run attempts each strategy and records
//! either its value or the specific hypothesis it found violated. A closed
//! form is never reported without its preconditions: several of the worked
//! configurations exist precisely because a formula does NOT apply to them,
//! and silently evaluating it there would reproduce a wrong number.

mod strategies;

pub use strategies::{
    standard_registry, ClosedForm, ClosedFormEvaluation, ClosedFormValue, StrategyRegistry,
    TransportTask,
};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::cdf::{self, CostDescriptor, Staircase, ValueInterval};
use crate::error::{Error, HypothesisViolation, Result};
use crate::ifs::{reflected_system, IfSystem, WeightVector};
use crate::rational::{self, KahanSum, Rational};
use crate::sampler;

/// Absolute slack added on top of enclosure widths when comparing exact
/// closed forms against numeric results; covers floating rounding only.
pub const CONSISTENCY_SLACK: f64 = 1e-9;

/// Certified enclosure of `W1 = integral of |F_A - F_B|` over `[0,1]`.
///
/// The difference is exact on mutual gaps and bounded by interval
/// arithmetic on cells, so the enclosure width is at most the sum of the
/// two resolutions.
pub fn w1_numeric(a: &Staircase, b: &Staircase) -> ValueInterval {
    let mut lo = KahanSum::new();
    let mut hi = KahanSum::new();
    for region in cdf::merged_regions(a, b) {
        let width = region.hi - region.lo;
        let d = region.a_value.sub(&region.b_value).abs();
        lo.add(width * d.lo);
        hi.add(width * d.hi);
    }
    ValueInterval::new(lo.value(), hi.value())
}

/// Same-system closed form: under ordering, disjoint open images,
/// positivity and one-signed weight dominance, `W1` is the absolute moment
/// difference. Affine systems give the exact rational value
/// `|sum p_i t_i / (1 - sum p_i rho_i) - (same in q)|`; otherwise a
/// certified enclosure of the two identity integrals' difference.
pub fn w1_closed_same_ifs(
    system: &IfSystem,
    p: &WeightVector,
    q: &WeightVector,
    resolution: f64,
) -> Result<ClosedFormValue> {
    let report = system.report();
    if !report.ordering_ok {
        return Err(HypothesisViolation::Ordering.into());
    }
    if !report.disjoint_open_images {
        return Err(HypothesisViolation::DisjointImages.into());
    }
    if !report.all_positive {
        return Err(HypothesisViolation::Positivity.into());
    }
    if crate::ifs::check_weight_dominance(p, q)? == crate::ifs::Dominance::Neither {
        return Err(HypothesisViolation::WeightDominance.into());
    }
    if system.all_affine() {
        let mp = cdf::first_moment_closed(system, p)?;
        let mq = cdf::first_moment_closed(system, q)?;
        let diff = mp - mq;
        return Ok(ClosedFormValue::Exact(if diff.is_negative() { -diff } else { diff }));
    }
    let sp = Staircase::build(system, p, resolution)?;
    let sq = Staircase::build(system, q, resolution)?;
    let ip = sp.integrate_against(&CostDescriptor::Identity);
    let iq = sq.integrate_against(&CostDescriptor::Identity);
    Ok(ClosedFormValue::Enclosure(ip.sub(&iq).abs()))
}

/// Paired-system closed form for two maps: when the second system starts
/// at the same image left endpoints, lies pointwise at or below the first,
/// and carries at least as much weight on its left map, the dominated
/// pair's CDF lies above and `W1` is the moment gap.
///
/// The proof orders the CDFs as `F_{g,q} >= F_{f,p}`, which integrates to
/// `moment(f,p) - moment(g,q) >= 0`; that orientation is what this returns.
pub fn w1_closed_two_ifs(
    f: &IfSystem,
    g: &IfSystem,
    p: &WeightVector,
    q: &WeightVector,
    resolution: f64,
) -> Result<ClosedFormValue> {
    if f.len() != 2 || g.len() != 2 || p.len() != 2 || q.len() != 2 {
        return Err(HypothesisViolation::PairArity.into());
    }
    let fr = f.report();
    if !fr.ordering_ok {
        return Err(HypothesisViolation::Ordering.into());
    }
    if !fr.disjoint_open_images {
        return Err(HypothesisViolation::DisjointImages.into());
    }
    if !fr.all_positive || !g.report().all_positive {
        return Err(HypothesisViolation::Positivity.into());
    }
    for (fm, gm) in f.maps().iter().zip(g.maps()) {
        if (fm.evaluate(0.0)? - gm.evaluate(0.0)?).abs() > crate::ifs::EPS {
            return Err(HypothesisViolation::PairBaseMismatch.into());
        }
        if !map_dominates(fm, gm)? {
            return Err(HypothesisViolation::PairDomination.into());
        }
    }
    if p.exact()[0] > q.exact()[0] {
        return Err(HypothesisViolation::PairWeightOrder.into());
    }
    if f.all_affine() && g.all_affine() {
        let mf = cdf::first_moment_closed(f, p)?;
        let mg = cdf::first_moment_closed(g, q)?;
        return Ok(ClosedFormValue::Exact(mf - mg));
    }
    let sf = Staircase::build(f, p, resolution)?;
    let sg = Staircase::build(g, q, resolution)?;
    let m_f = sf.integrate_against(&CostDescriptor::Identity);
    let m_g = sg.integrate_against(&CostDescriptor::Identity);
    Ok(ClosedFormValue::Enclosure(m_f.sub(&m_g)))
}

/// `g <= f` pointwise on `[0,1]` for monotone maps of the known families.
/// Affine pairs compare exactly; anything else is checked on a dense grid.
fn map_dominates(f: &crate::ifs::ContractionMap, g: &crate::ifs::ContractionMap) -> Result<bool> {
    if let (Some((sf, tf)), Some((sg, tg))) = (f.affine_params(), g.affine_params()) {
        return Ok(tg <= tf && sg <= sf);
    }
    let n = 1024;
    for i in 0..=n {
        let x = i as f64 / n as f64;
        if g.evaluate(x)? > f.evaluate(x)? + crate::ifs::EPS {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Result of the signed-cost route for the reflected family.
#[derive(Debug, Clone)]
pub struct SignedCostReport {
    /// `|integral of c d(mu_p - mu_q)|` with `c = -x` below `r^2/(r^2+1)`.
    pub signed: ValueInterval,
    /// Dall'Aglio-Vallender route on the same staircases.
    pub numeric: ValueInterval,
    pub consistent: bool,
}

/// Signed-cost closed form on `(x/r, 1-x/r)` with weights
/// `p = (1/(2k+1), 2k/(2k+1))` and `q` reversed; requires `r >= 2k+1`
/// (equivalently `min(p, 1-p) * r >= 1`, the envelope hypothesis — the
/// worked `r = 3, k = 1` configuration sits exactly on this boundary).
///
/// The cost integral is returned in absolute value: with the proven CDF
/// ordering the oriented integral comes out as `-W1` (the integration by
/// parts flips the sign of the CDF difference), and distances are
/// nonnegative here.
pub fn w1_reflected_weights(r: &Rational, k: u32, resolution: f64) -> Result<SignedCostReport> {
    if k == 0 {
        return Err(Error::Domain("weight family index k must be >= 1".into()));
    }
    let bound = Rational::from_integer((2 * k as i64 + 1).into());
    if *r < bound {
        return Err(HypothesisViolation::ReflectedContraction.into());
    }
    let system = reflected_system(r)?;
    let p = WeightVector::binary(Rational::new(1.into(), (2 * k as i64 + 1).into()))?;
    let q = p.reversed();
    let sp = Staircase::build(&system, &p, resolution)?;
    let sq = Staircase::build(&system, &q, resolution)?;

    let r_f = rational::to_f64(r);
    let crossing = r_f * r_f / (r_f * r_f + 1.0);
    let cost = CostDescriptor::SignedIdentity { crossing };
    let signed = sp
        .integrate_against(&cost)
        .sub(&sq.integrate_against(&cost))
        .abs();
    let numeric = w1_numeric(&sp, &sq);
    let consistent = signed.intersects(&numeric.widened(CONSISTENCY_SLACK));
    Ok(SignedCostReport { signed, numeric, consistent })
}

/// Which of the mirror-pair cases applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MirrorCase {
    /// `p1 < 1/2`: the positive system's measure sits to the right.
    PositiveRight,
    /// `p1 = 1/2`: the measures coincide.
    Equal,
    /// `p1 > 1/2`: the reflected system's measure sits to the right.
    ReflectedRight,
}

/// Mirror-pair closed form: `W1` between the stationary measures of
/// `(x/r, 1-x/r)` and `(x/r, x/r + (r-1)/r)` under one shared weight
/// vector is the exact moment gap, zero exactly at `p1 = 1/2`.
pub fn w1_mirror_pair(r: &Rational, p: &WeightVector) -> Result<(Rational, MirrorCase)> {
    if p.len() != 2 {
        return Err(HypothesisViolation::PairArity.into());
    }
    let f = reflected_system(r)?;
    let g = crate::ifs::positive_system(r)?;
    let mf = cdf::first_moment_closed(&f, p)?;
    let mg = cdf::first_moment_closed(&g, p)?;
    let half = Rational::new(1.into(), 2.into());
    let p1 = &p.exact()[0];
    Ok(if *p1 < half {
        (mg - mf, MirrorCase::PositiveRight)
    } else if *p1 == half {
        (Rational::zero(), MirrorCase::Equal)
    } else {
        (mf - mg, MirrorCase::ReflectedRight)
    })
}

/// JSON-facing interval.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntervalJson {
    pub lo: f64,
    pub hi: f64,
}

impl From<ValueInterval> for IntervalJson {
    fn from(v: ValueInterval) -> Self {
        IntervalJson { lo: v.lo, hi: v.hi }
    }
}

/// One attempted closed form inside a report.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedFormEntry {
    pub name: String,
    pub hypotheses_held: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value_exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub enclosure: Option<IntervalJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violation: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonteCarloEntry {
    pub estimate: f64,
    pub std_error: f64,
    pub count: usize,
    pub seed: u64,
    pub burn_in: usize,
}

/// Cross-checked W1 report: the numeric enclosure always, every closed form
/// with its hypothesis outcome, and optionally a chaos-game estimate.
#[derive(Debug, Clone, Serialize)]
pub struct W1Report {
    pub schema: u32,
    pub numeric: IntervalJson,
    pub closed_forms: Vec<ClosedFormEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub monte_carlo: Option<MonteCarloEntry>,
    pub consistent: bool,
}

impl W1Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn numeric_interval(&self) -> ValueInterval {
        ValueInterval::new(self.numeric.lo, self.numeric.hi)
    }
}

#[derive(Debug, Clone)]
pub struct MonteCarloOptions {
    pub count: usize,
    pub seed: u64,
    pub burn_in: usize,
}

impl Default for MonteCarloOptions {
    fn default() -> Self {
        MonteCarloOptions { count: 1_000_000, seed: 42, burn_in: 64 }
    }
}

#[derive(Debug, Clone)]
pub struct ReportOptions {
    /// Mass ceiling per staircase cell.
    pub resolution: f64,
    pub monte_carlo: Option<MonteCarloOptions>,
    /// Restrict to these strategy names; `None` runs the whole registry.
    pub strategies: Option<Vec<String>>,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions { resolution: 1e-6, monte_carlo: None, strategies: None }
    }
}

/// Runs the numeric route, every applicable closed form, and optionally the
/// sampler; `consistent` records whether every applicable value agrees with
/// the numeric enclosure within the tolerance stack.
pub fn w1_report(
    f: &IfSystem,
    p: &WeightVector,
    g: &IfSystem,
    q: &WeightVector,
    options: &ReportOptions,
) -> Result<W1Report> {
    let sf = Staircase::build(f, p, options.resolution)?;
    let sg = Staircase::build(g, q, options.resolution)?;
    let numeric = w1_numeric(&sf, &sg);

    let registry = standard_registry();
    let task = TransportTask { f, p, g, q, resolution: options.resolution };
    let mut closed_forms = Vec::new();
    let mut consistent = true;
    for strategy in registry.iter() {
        if let Some(filter) = &options.strategies {
            if !filter.iter().any(|n| n == strategy.name()) {
                continue;
            }
        }
        let entry = match strategy.evaluate(&task) {
            Ok(eval) => {
                let widened = numeric.widened(CONSISTENCY_SLACK);
                let agrees = match &eval.value {
                    ClosedFormValue::Exact(v) => widened.contains(rational::to_f64(v)),
                    ClosedFormValue::Enclosure(enc) => widened.intersects(enc),
                };
                consistent &= agrees;
                let (value, value_exact, enclosure) = match &eval.value {
                    ClosedFormValue::Exact(v) => (
                        Some(rational::to_f64(v)),
                        Some(rational::format_rational(v)),
                        None,
                    ),
                    ClosedFormValue::Enclosure(enc) => (None, None, Some((*enc).into())),
                };
                ClosedFormEntry {
                    name: strategy.name().to_string(),
                    hypotheses_held: true,
                    value,
                    value_exact,
                    enclosure,
                    violation: None,
                    detail: eval.detail,
                }
            }
            Err(Error::Hypothesis(v)) => ClosedFormEntry {
                name: strategy.name().to_string(),
                hypotheses_held: false,
                value: None,
                value_exact: None,
                enclosure: None,
                violation: Some(v.to_string()),
                detail: None,
            },
            Err(other) => return Err(other),
        };
        closed_forms.push(entry);
    }

    let monte_carlo = match &options.monte_carlo {
        Some(mc) => {
            let a = sampler::chaos_game(f, p, mc.count, mc.burn_in, mc.seed)?;
            let b = sampler::chaos_game(g, q, mc.count, mc.burn_in, mc.seed.wrapping_add(1))?;
            let (estimate, std_error) = sampler::w1_empirical(&a, &b)?;
            // Distance from the enclosure, not the midpoint: a zero-width
            // true distance sits at the edge of its enclosure. The
            // empirical estimator carries an O(1/sqrt(n)) finite-sample
            // bias that batch means cannot see, so the band includes it.
            let gap = (numeric.lo - estimate).max(estimate - numeric.hi).max(0.0);
            let bias = 2.0 / (mc.count as f64).sqrt();
            consistent &= gap <= 4.0 * std_error + bias + CONSISTENCY_SLACK;
            Some(MonteCarloEntry {
                estimate,
                std_error,
                count: mc.count,
                seed: mc.seed,
                burn_in: mc.burn_in,
            })
        }
        None => None,
    };

    Ok(W1Report {
        schema: 1,
        numeric: numeric.into(),
        closed_forms,
        monte_carlo,
        consistent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ifs::ContractionMap;
    use crate::rational::ratio;

    fn eg1_system() -> IfSystem {
        IfSystem::new(vec![
            ContractionMap::affine_ratio(1, 5, 0, 1).unwrap(),
            ContractionMap::affine_ratio(1, 5, 2, 5).unwrap(),
            ContractionMap::affine_ratio(1, 5, 4, 5).unwrap(),
        ])
        .unwrap()
    }

    fn eg1_p() -> WeightVector {
        WeightVector::from_ratios(&[(1, 2), (1, 4), (1, 4)]).unwrap()
    }

    fn eg1_q() -> WeightVector {
        WeightVector::from_ratios(&[(1, 4), (1, 4), (1, 2)]).unwrap()
    }

    #[test]
    fn same_ifs_closed_form_is_exact_quarter() {
        let v = w1_closed_same_ifs(&eg1_system(), &eg1_p(), &eg1_q(), 1e-4).unwrap();
        assert_eq!(v, ClosedFormValue::Exact(ratio(1, 4)));
    }

    #[test]
    fn same_ifs_zero_for_equal_weights() {
        let v = w1_closed_same_ifs(&eg1_system(), &eg1_p(), &eg1_p(), 1e-4).unwrap();
        assert_eq!(v, ClosedFormValue::Exact(ratio(0, 1)));
    }

    #[test]
    fn same_ifs_guards_fire() {
        // dominance violation
        let p = WeightVector::from_ratios(&[(3, 10), (1, 10), (6, 10)]).unwrap();
        let q = WeightVector::from_ratios(&[(2, 10), (5, 10), (3, 10)]).unwrap();
        assert!(matches!(
            w1_closed_same_ifs(&eg1_system(), &p, &q, 1e-4),
            Err(Error::Hypothesis(HypothesisViolation::WeightDominance))
        ));

        // positivity violation
        let sys = reflected_system(&ratio(3, 1)).unwrap();
        let p = WeightVector::from_ratios(&[(1, 3), (2, 3)]).unwrap();
        let q = WeightVector::from_ratios(&[(2, 3), (1, 3)]).unwrap();
        assert!(matches!(
            w1_closed_same_ifs(&sys, &p, &q, 1e-4),
            Err(Error::Hypothesis(HypothesisViolation::Positivity))
        ));
    }

    #[test]
    fn second_example_closed_form() {
        // maps x/5, 3x/5 + 1/5, x/5 + 4/5
        let sys = IfSystem::new(vec![
            ContractionMap::affine_ratio(1, 5, 0, 1).unwrap(),
            ContractionMap::affine_ratio(3, 5, 1, 5).unwrap(),
            ContractionMap::affine_ratio(1, 5, 4, 5).unwrap(),
        ])
        .unwrap();
        let p = WeightVector::from_ratios(&[(1, 4), (1, 3), (5, 12)]).unwrap();
        let q = WeightVector::from_ratios(&[(1, 6), (1, 4), (7, 12)]).unwrap();
        let v = w1_closed_same_ifs(&sys, &p, &q, 1e-4).unwrap();
        assert_eq!(v, ClosedFormValue::Exact(ratio(29, 210)));
    }

    #[test]
    fn numeric_encloses_closed_forms() {
        let sys = eg1_system();
        let sp = Staircase::build(&sys, &eg1_p(), 1e-5).unwrap();
        let sq = Staircase::build(&sys, &eg1_q(), 1e-5).unwrap();
        let enc = w1_numeric(&sp, &sq);
        assert!(enc.widened(1e-9).contains(0.25), "{enc:?}");
        assert!(enc.width() <= 2.5e-5);
    }

    #[test]
    fn numeric_self_distance_contains_zero() {
        let sys = eg1_system();
        let s = Staircase::build(&sys, &eg1_p(), 1e-4).unwrap();
        let enc = w1_numeric(&s, &s);
        assert!(enc.contains(0.0));
        assert!(enc.hi <= 2e-4);
    }

    #[test]
    fn numeric_is_exactly_symmetric() {
        let sys = eg1_system();
        let sp = Staircase::build(&sys, &eg1_p(), 1e-3).unwrap();
        let sq = Staircase::build(&sys, &eg1_q(), 1e-3).unwrap();
        let ab = w1_numeric(&sp, &sq);
        let ba = w1_numeric(&sq, &sp);
        assert_eq!(ab, ba);
    }

    #[test]
    fn two_ifs_closed_form_by_hand() {
        // f = (x/3, x/3 + 2/3), g = (x/6, x/6 + 2/3)
        let f = IfSystem::new(vec![
            ContractionMap::affine_ratio(1, 3, 0, 1).unwrap(),
            ContractionMap::affine_ratio(1, 3, 2, 3).unwrap(),
        ])
        .unwrap();
        let g = IfSystem::new(vec![
            ContractionMap::affine_ratio(1, 6, 0, 1).unwrap(),
            ContractionMap::affine_ratio(1, 6, 2, 3).unwrap(),
        ])
        .unwrap();
        let p = WeightVector::from_ratios(&[(2, 5), (3, 5)]).unwrap();
        let q = WeightVector::from_ratios(&[(1, 2), (1, 2)]).unwrap();
        // moment(f,p) = 3/5, moment(g,q) = 2/5
        let v = w1_closed_two_ifs(&f, &g, &p, &q, 1e-4).unwrap();
        assert_eq!(v, ClosedFormValue::Exact(ratio(1, 5)));

        // numeric cross-check
        let sf = Staircase::build(&f, &p, 1e-5).unwrap();
        let sg = Staircase::build(&g, &q, 1e-5).unwrap();
        assert!(w1_numeric(&sf, &sg).widened(1e-9).contains(0.2));

        // weight-order violation in the reversed configuration
        assert!(matches!(
            w1_closed_two_ifs(&f, &g, &q, &p, 1e-4),
            Err(Error::Hypothesis(HypothesisViolation::PairWeightOrder))
        ));

        // identical everything: zero
        let v = w1_closed_two_ifs(&f, &f, &p, &p, 1e-4).unwrap();
        assert_eq!(v, ClosedFormValue::Exact(ratio(0, 1)));
    }

    #[test]
    fn reflected_weights_routes_agree() {
        let rep = w1_reflected_weights(&ratio(3, 1), 1, 1e-5).unwrap();
        assert!(rep.consistent, "signed {:?} vs numeric {:?}", rep.signed, rep.numeric);
        assert!(rep.numeric.lo > 0.1); // the two measures are far apart

        assert!(matches!(
            w1_reflected_weights(&ratio(3, 1), 2, 1e-4),
            Err(Error::Hypothesis(HypothesisViolation::ReflectedContraction))
        ));
    }

    #[test]
    fn mirror_pair_closed_form() {
        // m_f = p2 / (1 - (p1 - p2)/r), m_g = p2
        let p = WeightVector::from_ratios(&[(1, 4), (3, 4)]).unwrap();
        let (v, case) = w1_mirror_pair(&ratio(5, 2), &p).unwrap();
        assert_eq!(v, ratio(1, 8));
        assert_eq!(case, MirrorCase::PositiveRight);

        let half = WeightVector::from_ratios(&[(1, 2), (1, 2)]).unwrap();
        for r in [ratio(5, 2), ratio(3, 1), ratio(10, 1)] {
            let (v, case) = w1_mirror_pair(&r, &half).unwrap();
            assert_eq!(v, ratio(0, 1));
            assert_eq!(case, MirrorCase::Equal);
        }

        let p = WeightVector::from_ratios(&[(3, 4), (1, 4)]).unwrap();
        let (v, case) = w1_mirror_pair(&ratio(5, 2), &p).unwrap();
        assert!(v.is_positive());
        assert_eq!(case, MirrorCase::ReflectedRight);
    }

    #[test]
    fn report_runs_all_strategies() {
        let sys = eg1_system();
        let options = ReportOptions { resolution: 1e-5, ..Default::default() };
        let report = w1_report(&sys, &eg1_p(), &sys, &eg1_q(), &options).unwrap();
        assert!(report.consistent);
        assert_eq!(report.schema, 1);
        let same = report
            .closed_forms
            .iter()
            .find(|e| e.name == "same-system")
            .unwrap();
        assert!(same.hypotheses_held);
        assert_eq!(same.value_exact.as_deref(), Some("1/4"));
        // the pair strategies must report their violations, not values
        assert!(report
            .closed_forms
            .iter()
            .filter(|e| e.name != "same-system")
            .all(|e| !e.hypotheses_held));

        let json = report.to_json();
        assert!(json.contains("\"schema\": 1"));
        assert!(json.contains("same-system"));
    }

    #[test]
    fn report_with_monte_carlo_and_identical_inputs() {
        let sys = eg1_system();
        let options = ReportOptions {
            resolution: 1e-4,
            monte_carlo: Some(MonteCarloOptions { count: 20_000, seed: 7, burn_in: 64 }),
            strategies: None,
        };
        let report = w1_report(&sys, &eg1_p(), &sys, &eg1_p(), &options).unwrap();
        assert!(report.consistent);
        let mc = report.monte_carlo.unwrap();
        assert!(mc.estimate.abs() < 1e-2);
        assert!(report.numeric.lo <= 1e-12);
    }

    #[test]
    fn strategy_filter_restricts_entries() {
        let sys = eg1_system();
        let options = ReportOptions {
            resolution: 1e-4,
            monte_carlo: None,
            strategies: Some(vec!["same-system".to_string()]),
        };
        let report = w1_report(&sys, &eg1_p(), &sys, &eg1_q(), &options).unwrap();
        assert_eq!(report.closed_forms.len(), 1);
        assert_eq!(report.closed_forms[0].name, "same-system");
    }
}
