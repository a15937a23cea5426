//! Contraction-map families, iterated function systems, weight vectors and
//! symbol words.
//!
//! Map families form a closed enum so that Lipschitz bounds and monotonicity
//! are computed from the parameters rather than declared by the caller; the
//! certified CDF machinery depends on that.

use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Endpoint / tolerance slack used throughout geometric comparisons.
pub const EPS: f64 = 1e-12;

/// A monotone differentiable contraction of `[0,1]` from a closed set of
/// families.
///
/// * `Affine`: `f(x) = slope * x + intercept`, parameters exact rationals.
/// * `QuarterSine`: `f(x) = scale * sin(pi*x/4) + offset`.
#[derive(Debug, Clone, PartialEq)]
pub enum ContractionMap {
    Affine { slope: Rational, intercept: Rational },
    QuarterSine { scale: f64, offset: f64 },
}

impl ContractionMap {
    /// Affine map with exact rational parameters, validated.
    pub fn affine(slope: Rational, intercept: Rational) -> Result<Self> {
        let m = ContractionMap::Affine { slope, intercept };
        m.check()?;
        Ok(m)
    }

    /// Affine map from small integer fractions.
    pub fn affine_ratio(sn: i64, sd: i64, tn: i64, td: i64) -> Result<Self> {
        Self::affine(rational::ratio(sn, sd), rational::ratio(tn, td))
    }

    /// `scale * sin(pi*x/4) + offset`, validated.
    pub fn quarter_sine(scale: f64, offset: f64) -> Result<Self> {
        let m = ContractionMap::QuarterSine { scale, offset };
        m.check()?;
        Ok(m)
    }

    fn check(&self) -> Result<()> {
        match self {
            ContractionMap::Affine { slope, .. } => {
                if slope.is_zero() {
                    return Err(Error::InvalidMap("affine slope must be nonzero".into()));
                }
            }
            ContractionMap::QuarterSine { scale, .. } => {
                if *scale == 0.0 || !scale.is_finite() {
                    return Err(Error::InvalidMap("quarter-sine scale must be nonzero".into()));
                }
            }
        }
        if self.lipschitz() >= 1.0 {
            return Err(Error::InvalidMap(format!(
                "not a strict contraction (Lipschitz bound {})",
                self.lipschitz()
            )));
        }
        let (a, b) = (self.eval_unchecked(0.0), self.eval_unchecked(1.0));
        for v in [a, b] {
            if !(-EPS..=1.0 + EPS).contains(&v) {
                return Err(Error::InvalidMap(format!(
                    "does not map [0,1] into itself (endpoint value {v})"
                )));
            }
        }
        Ok(())
    }

    fn eval_unchecked(&self, x: f64) -> f64 {
        match self {
            ContractionMap::Affine { slope, intercept } => {
                rational::to_f64(slope) * x + rational::to_f64(intercept)
            }
            ContractionMap::QuarterSine { scale, offset } => {
                scale * (std::f64::consts::PI * x / 4.0).sin() + offset
            }
        }
    }

    /// Evaluates the map; `x` must be in `[0,1]` up to slack.
    pub fn evaluate(&self, x: f64) -> Result<f64> {
        if !(-EPS..=1.0 + EPS).contains(&x) {
            return Err(Error::Domain(format!("map argument {x} outside [0,1]")));
        }
        Ok(self.eval_unchecked(x.clamp(0.0, 1.0)))
    }

    /// Computed Lipschitz bound: `|slope|` for affine, `|scale| * pi/4` for
    /// quarter-sine (the derivative magnitude peaks at x = 0).
    pub fn lipschitz(&self) -> f64 {
        match self {
            ContractionMap::Affine { slope, .. } => rational::to_f64(slope).abs(),
            ContractionMap::QuarterSine { scale, .. } => scale.abs() * std::f64::consts::PI / 4.0,
        }
    }

    /// Sign of the derivative; `true` when increasing.
    pub fn is_increasing(&self) -> bool {
        match self {
            ContractionMap::Affine { slope, .. } => slope.is_positive(),
            ContractionMap::QuarterSine { scale, .. } => *scale > 0.0,
        }
    }

    /// Image of `[0,1]` as a sorted pair.
    pub fn image(&self) -> (f64, f64) {
        let a = self.eval_unchecked(0.0);
        let b = self.eval_unchecked(1.0);
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }

    /// Exact rational parameters when affine.
    pub fn affine_params(&self) -> Option<(&Rational, &Rational)> {
        match self {
            ContractionMap::Affine { slope, intercept } => Some((slope, intercept)),
            ContractionMap::QuarterSine { .. } => None,
        }
    }
}

/// Finite symbol sequence over `{1,..,k}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn new(symbols: Vec<u8>) -> Self {
        Word(symbols)
    }

    /// Word from its decimal digit rendering, e.g. `"121"`.
    pub fn from_digits(digits: &str) -> Result<Self> {
        let mut symbols = Vec::with_capacity(digits.len());
        for c in digits.chars() {
            let d = c
                .to_digit(10)
                .ok_or_else(|| Error::Domain(format!("bad word digit `{c}`")))?;
            if d == 0 {
                return Err(Error::Domain("word symbols start at 1".into()));
            }
            symbols.push(d as u8);
        }
        Ok(Word(symbols))
    }

    pub fn symbols(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Number of occurrences of the symbol 2.
    pub fn count_twos(&self) -> usize {
        self.0.iter().filter(|&&s| s == 2).count()
    }

    pub fn extended(&self, symbol: u8) -> Word {
        let mut v = self.0.clone();
        v.push(symbol);
        Word(v)
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Probability vector in `(0,1)^k`, kept both exactly and as cached floats.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    exact: Vec<Rational>,
    float: Vec<f64>,
}

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        if weights.len() < 2 {
            return Err(Error::InvalidWeights("need at least two weights".into()));
        }
        let one = Rational::from_integer(1.into());
        for w in &weights {
            if !w.is_positive() || *w >= one {
                return Err(Error::InvalidWeights(format!(
                    "weight {} outside (0,1)",
                    rational::format_rational(w)
                )));
            }
        }
        let sum: Rational = weights.iter().sum();
        let defect = (&sum - &one).to_f64().unwrap_or(f64::NAN).abs();
        if defect.is_nan() || defect > EPS {
            return Err(Error::InvalidWeights(format!(
                "weights sum to {}, not 1",
                rational::format_rational(&sum)
            )));
        }
        let float = weights.iter().map(rational::to_f64).collect();
        Ok(WeightVector { exact: weights, float })
    }

    pub fn from_ratios(pairs: &[(i64, i64)]) -> Result<Self> {
        Self::new(pairs.iter().map(|&(n, d)| rational::ratio(n, d)).collect())
    }

    /// Binary vector `(p, 1-p)`.
    pub fn binary(p: Rational) -> Result<Self> {
        let q = Rational::from_integer(1.into()) - &p;
        Self::new(vec![p, q])
    }

    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    pub fn exact(&self) -> &[Rational] {
        &self.exact
    }

    pub fn float(&self) -> &[f64] {
        &self.float
    }

    pub fn reversed(&self) -> WeightVector {
        let mut exact = self.exact.clone();
        exact.reverse();
        WeightVector::new(exact).expect("reversal preserves validity")
    }
}

/// Sign pattern of the partial sums of `p_i - q_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    NonNegative,
    NonPositive,
    /// `p = q`: both classifications hold.
    Both,
    Neither,
}

/// Classifies the partial sums `sum_{i<=m}(p_i - q_i)`, `m = 1..k`, exactly.
///
/// The single-signedness of these sums is the weight hypothesis of the
/// same-system closed form; `Neither` is precisely "does not apply".
pub fn check_weight_dominance(p: &WeightVector, q: &WeightVector) -> Result<Dominance> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    let mut partial = Rational::zero();
    let mut any_pos = false;
    let mut any_neg = false;
    for (pi, qi) in p.exact().iter().zip(q.exact()) {
        partial += pi - qi;
        if partial.is_positive() {
            any_pos = true;
        } else if partial.is_negative() {
            any_neg = true;
        }
    }
    Ok(match (any_pos, any_neg) {
        (false, false) => Dominance::Both,
        (true, false) => Dominance::NonNegative,
        (false, true) => Dominance::NonPositive,
        (true, true) => Dominance::Neither,
    })
}

/// Validation flags for a system, computed once at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ValidationReport {
    /// Images ordered left to right: `max f_i <= max f_{i+1}`.
    pub ordering_ok: bool,
    /// Open image intervals pairwise disjoint (shared endpoints allowed).
    pub disjoint_open_images: bool,
    /// Closed image intervals pairwise disjoint (strict separation).
    pub disjoint_closed_images: bool,
    /// Every map increasing.
    pub all_positive: bool,
}

/// Ordered list of contraction maps with cached validation flags.
///
/// Construction only requires `k >= 2` and per-map invariants; systems that
/// fail the ordering or disjointness checks still construct, carrying the
/// failures in their report. Callers that need the hypotheses consult the
/// flags. The ordering check is a validation, not a re-sort: weights are
/// positionally tied to maps.
#[derive(Debug, Clone, PartialEq)]
pub struct IfSystem {
    maps: Vec<ContractionMap>,
    report: ValidationReport,
}

impl IfSystem {
    pub fn new(maps: Vec<ContractionMap>) -> Result<Self> {
        if maps.len() < 2 {
            return Err(Error::InvalidSystem("need at least two maps".into()));
        }
        let report = compute_report(&maps);
        Ok(IfSystem { maps, report })
    }

    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn maps(&self) -> &[ContractionMap] {
        &self.maps
    }

    pub fn map(&self, i: usize) -> &ContractionMap {
        &self.maps[i]
    }

    /// Cached validation flags.
    pub fn report(&self) -> ValidationReport {
        self.report
    }

    pub fn all_affine(&self) -> bool {
        self.maps
            .iter()
            .all(|m| matches!(m, ContractionMap::Affine { .. }))
    }

    /// Image interval of the finite composition `f_{w_1} o ... o f_{w_n}`
    /// applied to `[0,1]`, endpoints sorted ascending.
    ///
    /// The composition of monotone maps is monotone, so the endpoints of the
    /// image are the images of the endpoints; orientation is the product of
    /// the map signs and is absorbed by the sort.
    pub fn cylinder_interval(&self, w: &Word) -> Result<(f64, f64)> {
        let mut lo = 0.0f64;
        let mut hi = 1.0f64;
        for &s in w.symbols().iter().rev() {
            let idx = s as usize;
            if idx == 0 || idx > self.maps.len() {
                return Err(Error::Domain(format!(
                    "word symbol {s} outside alphabet 1..={}",
                    self.maps.len()
                )));
            }
            let m = &self.maps[idx - 1];
            let a = m.evaluate(lo)?;
            let b = m.evaluate(hi)?;
            (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        }
        Ok((lo, hi))
    }

    /// Recognizes the reflected two-map family `(x/r, 1 - x/r)`; returns `r`.
    pub fn reflected_pair_ratio(&self) -> Option<Rational> {
        if self.maps.len() != 2 {
            return None;
        }
        let (s0, t0) = self.maps[0].affine_params()?;
        let (s1, t1) = self.maps[1].affine_params()?;
        let one = Rational::from_integer(1.into());
        if t0.is_zero() && s0.is_positive() && *t1 == one && *s1 == -s0 {
            Some(one / s0)
        } else {
            None
        }
    }

    /// Recognizes the positive two-map family `(x/r, x/r + (r-1)/r)`.
    pub fn positive_pair_ratio(&self) -> Option<Rational> {
        if self.maps.len() != 2 {
            return None;
        }
        let (s0, t0) = self.maps[0].affine_params()?;
        let (s1, t1) = self.maps[1].affine_params()?;
        let one = Rational::from_integer(1.into());
        if t0.is_zero() && s0.is_positive() && s1 == s0 && *t1 == &one - s0 {
            Some(one / s0)
        } else {
            None
        }
    }
}

/// Builds `(x/r, 1 - x/r)` for rational `r > 2`.
pub fn reflected_system(r: &Rational) -> Result<IfSystem> {
    let two = Rational::from_integer(2.into());
    if *r <= two {
        return Err(Error::Domain("reflected family needs r > 2".into()));
    }
    let one = Rational::from_integer(1.into());
    let slope = &one / r;
    IfSystem::new(vec![
        ContractionMap::affine(slope.clone(), Rational::zero())?,
        ContractionMap::affine(-slope, one)?,
    ])
}

/// Builds `(x/r, x/r + (r-1)/r)` for rational `r > 2`.
pub fn positive_system(r: &Rational) -> Result<IfSystem> {
    let two = Rational::from_integer(2.into());
    if *r <= two {
        return Err(Error::Domain("positive family needs r > 2".into()));
    }
    let one = Rational::from_integer(1.into());
    let slope = &one / r;
    let shift = &one - &slope;
    IfSystem::new(vec![
        ContractionMap::affine(slope.clone(), Rational::zero())?,
        ContractionMap::affine(slope, shift)?,
    ])
}

/// Returns the cached validation flags of a system.
pub fn validate_system(s: &IfSystem) -> ValidationReport {
    s.report()
}

fn compute_report(maps: &[ContractionMap]) -> ValidationReport {
    let images: Vec<(f64, f64)> = maps.iter().map(|m| m.image()).collect();

    let mut ordering_ok = true;
    for pair in images.windows(2) {
        if pair[0].1 > pair[1].1 + EPS {
            ordering_ok = false;
        }
    }

    let mut disjoint_open = true;
    let mut disjoint_closed = true;
    for i in 0..images.len() {
        for j in (i + 1)..images.len() {
            let (a, b) = images[i];
            let (c, d) = images[j];
            // Open intervals are disjoint iff one ends before the other
            // starts; shared endpoints are allowed up to slack.
            let open_ok = b <= c + EPS || d <= a + EPS;
            let closed_ok = b < c - EPS || d < a - EPS;
            disjoint_open &= open_ok;
            disjoint_closed &= closed_ok;
        }
    }

    ValidationReport {
        ordering_ok,
        disjoint_open_images: disjoint_open,
        disjoint_closed_images: disjoint_closed,
        all_positive: maps.iter().all(|m| m.is_increasing()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn third_system() -> IfSystem {
        // (x/3, 1 - x/3)
        IfSystem::new(vec![
            ContractionMap::affine_ratio(1, 3, 0, 1).unwrap(),
            ContractionMap::affine_ratio(-1, 3, 1, 1).unwrap(),
        ])
        .unwrap()
    }

    fn fifth_system() -> IfSystem {
        // (x/5, x/5 + 2/5, x/5 + 4/5)
        IfSystem::new(vec![
            ContractionMap::affine_ratio(1, 5, 0, 1).unwrap(),
            ContractionMap::affine_ratio(1, 5, 2, 5).unwrap(),
            ContractionMap::affine_ratio(1, 5, 4, 5).unwrap(),
        ])
        .unwrap()
    }

    #[test]
    fn evaluates_affine_endpoints() {
        let m = ContractionMap::affine_ratio(1, 5, 2, 5).unwrap();
        assert!((m.evaluate(1.0).unwrap() - 0.6).abs() < 1e-15);
        let m2 = ContractionMap::affine_ratio(-1, 3, 1, 1).unwrap();
        assert_eq!(m2.evaluate(0.0).unwrap(), 1.0);
    }

    #[test]
    fn evaluates_quarter_sine() {
        let m = ContractionMap::quarter_sine(1.0 / 6.0, 0.0).unwrap();
        // (1/6) sin(pi/4) = sqrt(2)/12
        let expected = 2f64.sqrt() / 12.0;
        assert!((m.evaluate(1.0).unwrap() - expected).abs() < 1e-15);
        assert!((expected - 0.117851).abs() < 1e-6);
    }

    #[test]
    fn rejects_domain_violations() {
        let m = ContractionMap::affine_ratio(1, 5, 2, 5).unwrap();
        assert!(m.evaluate(1.5).is_err());
        assert!(m.evaluate(-0.1).is_err());
        assert!(m.evaluate(1.0 + 1e-13).is_ok());
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(ContractionMap::affine_ratio(0, 1, 1, 2).is_err());
        assert!(ContractionMap::affine_ratio(1, 1, 0, 1).is_err());
        assert!(ContractionMap::affine_ratio(1, 2, 3, 4).is_err()); // f(1) = 5/4
        assert!(ContractionMap::quarter_sine(1.5, 0.0).is_err()); // Lip = 1.5*pi/4 > 1
    }

    #[test]
    fn validates_positive_three_map_system() {
        let r = fifth_system().report();
        assert!(r.ordering_ok);
        assert!(r.disjoint_open_images);
        assert!(r.disjoint_closed_images);
        assert!(r.all_positive);
    }

    #[test]
    fn validates_reflected_system() {
        let r = third_system().report();
        assert!(r.ordering_ok);
        assert!(r.disjoint_closed_images);
        assert!(!r.all_positive);
    }

    #[test]
    fn identical_images_are_not_disjoint() {
        let s = IfSystem::new(vec![
            ContractionMap::affine_ratio(1, 3, 0, 1).unwrap(),
            ContractionMap::affine_ratio(1, 3, 0, 1).unwrap(),
        ])
        .unwrap();
        assert!(!s.report().disjoint_open_images);
    }

    #[test]
    fn touching_images_are_open_disjoint_only() {
        // images [0,1/2] and [1/2,1]
        let s = IfSystem::new(vec![
            ContractionMap::affine_ratio(1, 2, 0, 1).unwrap(),
            ContractionMap::affine_ratio(1, 2, 1, 2).unwrap(),
        ])
        .unwrap();
        assert!(s.report().disjoint_open_images);
        assert!(!s.report().disjoint_closed_images);
    }

    #[test]
    fn dominance_classification() {
        let p = WeightVector::from_ratios(&[(1, 2), (1, 4), (1, 4)]).unwrap();
        let q = WeightVector::from_ratios(&[(1, 4), (1, 4), (1, 2)]).unwrap();
        assert_eq!(check_weight_dominance(&p, &q).unwrap(), Dominance::NonNegative);
        assert_eq!(check_weight_dominance(&q, &p).unwrap(), Dominance::NonPositive);
        assert_eq!(check_weight_dominance(&p, &p).unwrap(), Dominance::Both);

        let p = WeightVector::from_ratios(&[(3, 10), (1, 10), (6, 10)]).unwrap();
        let q = WeightVector::from_ratios(&[(2, 10), (5, 10), (3, 10)]).unwrap();
        assert_eq!(check_weight_dominance(&p, &q).unwrap(), Dominance::Neither);
    }

    #[test]
    fn dominance_length_mismatch() {
        let p = WeightVector::from_ratios(&[(1, 2), (1, 2)]).unwrap();
        let q = WeightVector::from_ratios(&[(1, 3), (1, 3), (1, 3)]).unwrap();
        assert!(check_weight_dominance(&p, &q).is_err());
    }

    #[test]
    fn cylinder_intervals_by_hand() {
        let f3 = third_system();
        let (lo, hi) = f3.cylinder_interval(&Word::from_digits("2").unwrap()).unwrap();
        assert!((lo - 2.0 / 3.0).abs() < 1e-15 && (hi - 1.0).abs() < 1e-15);

        // f_2 o f_2 : x -> 2/3 + x/9
        let (lo, hi) = f3.cylinder_interval(&Word::from_digits("22").unwrap()).unwrap();
        assert!((lo - 2.0 / 3.0).abs() < 1e-15 && (hi - 7.0 / 9.0).abs() < 1e-15);

        let e1 = fifth_system();
        let (lo, hi) = e1.cylinder_interval(&Word::from_digits("31").unwrap()).unwrap();
        assert!((lo - 0.8).abs() < 1e-15 && (hi - (0.8 + 0.04)).abs() < 1e-15);
    }

    #[test]
    fn cylinder_rejects_bad_symbols() {
        let f3 = third_system();
        assert!(f3.cylinder_interval(&Word::new(vec![3])).is_err());
    }

    #[test]
    fn recognizes_special_families() {
        let f3 = third_system();
        assert_eq!(f3.reflected_pair_ratio(), Some(ratio(3, 1)));
        assert_eq!(f3.positive_pair_ratio(), None);

        let g3 = positive_system(&ratio(3, 1)).unwrap();
        assert_eq!(g3.positive_pair_ratio(), Some(ratio(3, 1)));
        assert_eq!(g3.reflected_pair_ratio(), None);

        assert_eq!(
            reflected_system(&ratio(3, 1)).unwrap(),
            third_system()
        );
    }

    #[test]
    fn weight_vector_rules() {
        assert!(WeightVector::from_ratios(&[(1, 2), (1, 2)]).is_ok());
        assert!(WeightVector::from_ratios(&[(1, 2), (1, 3)]).is_err());
        assert!(WeightVector::from_ratios(&[(1, 1), (0, 1)]).is_err());
        assert!(WeightVector::from_ratios(&[(1, 2)]).is_err());
        let w = WeightVector::binary(ratio(1, 3)).unwrap();
        assert_eq!(w.exact(), &[ratio(1, 3), ratio(2, 3)]);
        assert_eq!(w.reversed().exact(), &[ratio(2, 3), ratio(1, 3)]);
    }

    #[test]
    fn two_weights_never_classify_as_neither() {
        for a in 1..=9i64 {
            let p = WeightVector::new(vec![ratio(a, 10), ratio(10 - a, 10)]).unwrap();
            for b in 1..=9i64 {
                let q = WeightVector::new(vec![ratio(b, 10), ratio(10 - b, 10)]).unwrap();
                assert_ne!(check_weight_dominance(&p, &q).unwrap(), Dominance::Neither);
            }
        }
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_system() -> impl Strategy<Value = IfSystem> {
            prop_oneof![
                Just(third_system()),
                Just(fifth_system()),
                Just(
                    IfSystem::new(vec![
                        ContractionMap::quarter_sine(1.0 / 6.0, 0.0).unwrap(),
                        ContractionMap::affine_ratio(1, 6, 1, 3).unwrap(),
                        ContractionMap::quarter_sine(1.0 / 3.0, 2.0 / 3.0).unwrap(),
                    ])
                    .unwrap()
                ),
            ]
        }

        proptest! {
            #[test]
            fn nesting_and_width_bound(
                sys in arb_system(),
                base in proptest::collection::vec(0u8..3, 1..8),
                ext in proptest::collection::vec(0u8..3, 1..6)
            ) {
                let k = sys.len() as u8;
                let prefix = Word::new(base.iter().map(|&b| b % k + 1).collect());
                let mut long = prefix.symbols().to_vec();
                long.extend(ext.iter().map(|&b| b % k + 1));
                let longer = Word::new(long);

                let (plo, phi) = sys.cylinder_interval(&prefix).unwrap();
                let (llo, lhi) = sys.cylinder_interval(&longer).unwrap();
                prop_assert!(llo >= plo - EPS && lhi <= phi + EPS, "nesting violated");

                let lip: f64 = prefix
                    .symbols()
                    .iter()
                    .map(|&s| sys.map(s as usize - 1).lipschitz())
                    .product();
                prop_assert!(phi - plo <= lip + EPS, "width bound violated");
            }

            #[test]
            fn dominance_antisymmetry(
                a in 1..99i64,
                b in 1..99i64,
                c in 1..99i64,
                d in 1..99i64
            ) {
                prop_assume!(a + b < 100 && c + d < 100);
                let p = WeightVector::new(vec![
                    ratio(a, 100), ratio(b, 100), ratio(100 - a - b, 100),
                ]).unwrap();
                let q = WeightVector::new(vec![
                    ratio(c, 100), ratio(d, 100), ratio(100 - c - d, 100),
                ]).unwrap();
                let pq = check_weight_dominance(&p, &q).unwrap();
                let qp = check_weight_dominance(&q, &p).unwrap();
                let expected = match pq {
                    Dominance::NonNegative => Dominance::NonPositive,
                    Dominance::NonPositive => Dominance::NonNegative,
                    other => other,
                };
                prop_assert_eq!(qp, expected);
            }
        }
    }
}
