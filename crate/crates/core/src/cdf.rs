//! Certified staircase approximations of stationary-measure CDFs.
//!
//! The CDF of a stationary measure with disjoint images is constant on the
//! complement of the attractor and singular on it. A [`Staircase`] is a
//! finite list of cylinder cells, each carrying its exact mass and the mass
//! strictly to its left; everything the CDF does inside a cell is bounded by
//! that cell's mass, and everything it does on a gap is known exactly. All
//! queries therefore return honest enclosures, never point estimates.

use std::io::Write as IoWrite;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, HypothesisViolation, Result};
use crate::ifs::{IfSystem, WeightVector, EPS};
use crate::rational::{self, KahanSum, Rational};

/// Default ceiling on the number of cells a build may materialize.
pub const DEFAULT_MAX_CELLS: usize = 1 << 22;

/// A closed interval of possible values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValueInterval {
    pub lo: f64,
    pub hi: f64,
}

impl ValueInterval {
    pub fn new(lo: f64, hi: f64) -> Self {
        debug_assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        ValueInterval { lo, hi }
    }

    pub fn point(v: f64) -> Self {
        ValueInterval { lo: v, hi: v }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn intersects(&self, other: &ValueInterval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Enclosure of `self - other` under interval arithmetic.
    pub fn sub(&self, other: &ValueInterval) -> ValueInterval {
        ValueInterval::new(self.lo - other.hi, self.hi - other.lo)
    }

    /// Enclosure of `|self|`.
    pub fn abs(&self) -> ValueInterval {
        if self.lo >= 0.0 {
            *self
        } else if self.hi <= 0.0 {
            ValueInterval::new(-self.hi, -self.lo)
        } else {
            ValueInterval::new(0.0, (-self.lo).max(self.hi))
        }
    }

    /// Widens both ends by `slack`.
    pub fn widened(&self, slack: f64) -> ValueInterval {
        ValueInterval::new(self.lo - slack, self.hi + slack)
    }
}

/// One cylinder cell of a staircase: geometric span, mass, and the total
/// mass strictly to its left.
#[derive(Debug, Clone, Copy)]
pub struct Cell {
    pub lo: f64,
    pub hi: f64,
    pub mass: f64,
    pub cum_left: f64,
}

/// A maximal interval carrying no mass, with the exact CDF value on it.
#[derive(Debug, Clone, Copy)]
pub struct Gap {
    pub lo: f64,
    pub hi: f64,
    pub value: f64,
}

/// Certified piecewise description of a stationary CDF.
#[derive(Debug, Clone)]
pub struct Staircase {
    system: IfSystem,
    weights: WeightVector,
    cells: Vec<Cell>,
    resolution: f64,
}

enum CellGeometry {
    /// Composed affine map `x -> a x + b` (all-affine systems).
    Affine { a: f64, b: f64 },
    /// Word of the cylinder; endpoints are evaluated through the system.
    Word(Vec<u8>),
}

impl Staircase {
    /// Adaptively refines cylinders until every cell's mass is at most
    /// `resolution`, then sorts geometrically and accumulates left masses.
    ///
    /// Cells are split by mass, not depth: a cell whose mass exceeds the
    /// resolution is replaced by its k children via word extension. Skewed
    /// weight vectors stay affordable this way, and the error budget of
    /// every query is driven by cell mass alone.
    pub fn build(system: &IfSystem, weights: &WeightVector, resolution: f64) -> Result<Staircase> {
        Self::build_with_cap(system, weights, resolution, DEFAULT_MAX_CELLS)
    }

    pub fn build_with_cap(
        system: &IfSystem,
        weights: &WeightVector,
        resolution: f64,
        max_cells: usize,
    ) -> Result<Staircase> {
        if weights.len() != system.len() {
            return Err(Error::LengthMismatch(system.len(), weights.len()));
        }
        if !(resolution > 0.0 && resolution <= 1.0) {
            return Err(Error::Domain(format!(
                "resolution {resolution} outside (0, 1]"
            )));
        }
        if !system.report().disjoint_open_images {
            return Err(Error::OverlappingImages);
        }

        let k = system.len();
        let p = weights.float();
        let affine_params: Option<Vec<(f64, f64)>> = if system.all_affine() {
            Some(
                system
                    .maps()
                    .iter()
                    .map(|m| {
                        let (s, t) = m.affine_params().expect("all affine");
                        (rational::to_f64(s), rational::to_f64(t))
                    })
                    .collect(),
            )
        } else {
            None
        };

        // Map indices in left-to-right image order. Children of any cell
        // appear in this order under an increasing composition and reversed
        // under a decreasing one, so tracking the orientation sign lets the
        // DFS emit cells in exact geometric order. Deep cells can be
        // narrower than an ulp, where sorting computed endpoints would
        // misplace them across touching image boundaries.
        let mut geom_order: Vec<usize> = (0..k).collect();
        geom_order.sort_by(|&i, &j| {
            let a = system.map(i).image();
            let b = system.map(j).image();
            a.partial_cmp(&b).expect("finite image endpoints")
        });

        let mut cells: Vec<Cell> = Vec::new();
        let mut stack: Vec<(CellGeometry, f64, bool)> = Vec::with_capacity(64);
        for &i in geom_order.iter().rev() {
            let geom = match &affine_params {
                Some(ap) => CellGeometry::Affine { a: ap[i].0, b: ap[i].1 },
                None => CellGeometry::Word(vec![i as u8 + 1]),
            };
            stack.push((geom, p[i], system.map(i).is_increasing()));
        }

        let order_rev: Vec<usize> = geom_order.iter().rev().copied().collect();
        while let Some((geom, mass, increasing)) = stack.pop() {
            if mass > resolution {
                // leftmost child must pop first, so push right-to-left
                let push_order = if increasing { &order_rev } else { &geom_order };
                for &i in push_order {
                    let child_increasing = increasing == system.map(i).is_increasing();
                    match &geom {
                        CellGeometry::Affine { a, b } => {
                            let (s, t) = affine_params.as_ref().expect("affine fast path")[i];
                            stack.push((
                                CellGeometry::Affine { a: a * s, b: a * t + b },
                                mass * p[i],
                                child_increasing,
                            ));
                        }
                        CellGeometry::Word(word) => {
                            let mut child = word.clone();
                            child.push(i as u8 + 1);
                            stack.push((CellGeometry::Word(child), mass * p[i], child_increasing));
                        }
                    }
                }
                continue;
            }
            let (lo, hi) = match &geom {
                CellGeometry::Affine { a, b } => {
                    let (x, y) = (*b, a + b);
                    if x <= y { (x, y) } else { (y, x) }
                }
                CellGeometry::Word(word) => {
                    let mut endpoints = [0.0f64, 1.0];
                    for e in &mut endpoints {
                        for &s in word.iter().rev() {
                            *e = system.map(s as usize - 1).evaluate(*e)?;
                        }
                    }
                    let [x, y] = endpoints;
                    if x <= y { (x, y) } else { (y, x) }
                }
            };
            cells.push(Cell { lo, hi, mass, cum_left: 0.0 });
            if cells.len() > max_cells {
                return Err(Error::CellCapExceeded { cap: max_cells });
            }
        }

        // Emission order is exact; computed endpoints may still jitter by a
        // few ulps around touching boundaries. Clamp them monotone so that
        // binary searches over `lo` stay coherent.
        let mut acc = KahanSum::new();
        let mut running_lo = 0.0f64;
        for c in &mut cells {
            debug_assert!(c.lo >= running_lo - EPS, "cell order broken at {}", c.lo);
            c.lo = c.lo.max(running_lo);
            c.hi = c.hi.max(c.lo);
            running_lo = c.lo;
            c.cum_left = acc.value();
            acc.add(c.mass);
        }
        let total = acc.value();
        debug_assert!(
            (total - 1.0).abs() <= 1e-12,
            "cell masses sum to {total}, not 1"
        );

        Ok(Staircase {
            system: system.clone(),
            weights: weights.clone(),
            cells,
            resolution,
        })
    }

    pub fn system(&self) -> &IfSystem {
        &self.system
    }

    pub fn weights(&self) -> &WeightVector {
        &self.weights
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// The build's mass ceiling per cell.
    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    /// CDF enclosure at `x`: exact on gaps, `[cum_left, cum_left + mass]`
    /// inside a cell. The endpoints 0 and 1 are exact by definition.
    pub fn eval(&self, x: f64) -> Result<ValueInterval> {
        if !(-EPS..=1.0 + EPS).contains(&x) {
            return Err(Error::Domain(format!("CDF argument {x} outside [0,1]")));
        }
        if x <= 0.0 {
            return Ok(ValueInterval::point(0.0));
        }
        if x >= 1.0 {
            return Ok(ValueInterval::point(1.0));
        }
        let idx = self.cells.partition_point(|c| c.lo <= x);
        if idx == 0 {
            return Ok(ValueInterval::point(0.0));
        }
        let cell = &self.cells[idx - 1];
        if x <= cell.hi {
            Ok(ValueInterval::new(cell.cum_left, cell.cum_left + cell.mass))
        } else {
            Ok(ValueInterval::point(cell.cum_left + cell.mass))
        }
    }

    /// Maximal mass-free intervals, including the leading and trailing ones
    /// when the attractor does not reach the domain endpoints.
    pub fn gaps(&self) -> Vec<Gap> {
        let mut out = Vec::new();
        let first = &self.cells[0];
        if first.lo > 0.0 {
            out.push(Gap { lo: 0.0, hi: first.lo, value: 0.0 });
        }
        for w in self.cells.windows(2) {
            if w[1].lo > w[0].hi {
                out.push(Gap {
                    lo: w[0].hi,
                    hi: w[1].lo,
                    value: w[0].cum_left + w[0].mass,
                });
            }
        }
        let last = &self.cells[self.cells.len() - 1];
        if last.hi < 1.0 {
            out.push(Gap {
                lo: last.hi,
                hi: 1.0,
                value: last.cum_left + last.mass,
            });
        }
        out
    }

    /// Certified enclosure of the Stieltjes integral of a cost function
    /// against the measure. Gaps carry no mass; each cell contributes its
    /// mass times the image interval of the cost over the cell's span, so a
    /// cell straddling the signed cost's crossing point widens honestly.
    pub fn integrate_against(&self, cost: &CostDescriptor) -> ValueInterval {
        let mut lo = KahanSum::new();
        let mut hi = KahanSum::new();
        for c in &self.cells {
            let image = cost.image(c.lo, c.hi);
            lo.add(c.mass * image.lo);
            hi.add(c.mass * image.hi);
        }
        ValueInterval::new(lo.value(), hi.value())
    }

    /// Writes the export format: `x_left,x_right,kind,value,mass` with
    /// `kind` in {gap, cell}; gaps carry their exact value and zero mass,
    /// cells carry `cum_left` as value. Rows ascend by `x_left`.
    pub fn write_csv<W: IoWrite>(&self, mut out: W) -> Result<()> {
        writeln!(out, "x_left,x_right,kind,value,mass")?;
        let mut gaps = self.gaps().into_iter().peekable();
        for c in self.cells.iter() {
            while let Some(g) = gaps.peek() {
                if g.lo <= c.lo {
                    writeln!(out, "{},{},gap,{},0", g.lo, g.hi, g.value)?;
                    gaps.next();
                } else {
                    break;
                }
            }
            writeln!(out, "{},{},cell,{},{}", c.lo, c.hi, c.cum_left, c.mass)?;
        }
        for g in gaps {
            writeln!(out, "{},{},gap,{},0", g.lo, g.hi, g.value)?;
        }
        Ok(())
    }
}

/// Cost functions the Stieltjes integrator understands.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CostDescriptor {
    /// `c(x) = x`.
    Identity,
    /// `c(x) = -x` below the crossing point, `+x` at and above it.
    /// The value at the crossing itself is a convention; the measures
    /// integrated here carry no atoms, so it never matters.
    SignedIdentity { crossing: f64 },
}

impl CostDescriptor {
    /// Image interval of the cost over `[lo, hi]` within `[0,1]`.
    fn image(&self, lo: f64, hi: f64) -> ValueInterval {
        match *self {
            CostDescriptor::Identity => ValueInterval::new(lo, hi),
            CostDescriptor::SignedIdentity { crossing } => {
                if hi <= crossing {
                    ValueInterval::new(-hi, -lo)
                } else if lo >= crossing {
                    ValueInterval::new(lo, hi)
                } else {
                    ValueInterval::new(-crossing, hi.max(-lo))
                }
            }
        }
    }
}

/// Exact first moment of the stationary measure of an all-affine system:
/// `sum_i p_i t_i / (1 - sum_i p_i rho_i)`.
pub fn first_moment_closed(system: &IfSystem, weights: &WeightVector) -> Result<Rational> {
    if weights.len() != system.len() {
        return Err(Error::LengthMismatch(system.len(), weights.len()));
    }
    let mut num = Rational::zero();
    let mut slope_part = Rational::zero();
    for (m, w) in system.maps().iter().zip(weights.exact()) {
        let (rho, t) = m.affine_params().ok_or(Error::NonAffine)?;
        num += w * t;
        slope_part += w * rho;
    }
    Ok(num / (Rational::one() - slope_part))
}

/// Power-law envelope `( (x/(r-1))^e, x^e )` with `e = -log_r(p) > 0`,
/// valid for the reflected and positive two-map families whenever
/// `min(p, 1-p) * r >= 1`.
pub fn power_law_envelope(r: f64, p: f64, x: f64) -> Result<(f64, f64)> {
    if !r.is_finite() || r <= 2.0 || !p.is_finite() || p <= 0.0 || p >= 1.0 {
        return Err(Error::Domain(format!(
            "need r > 2 and p in (0,1), got r={r}, p={p}"
        )));
    }
    if p.min(1.0 - p) * r < 1.0 - EPS {
        return Err(HypothesisViolation::EnvelopeHypothesis.into());
    }
    if !(x > 0.0 && x <= 1.0 + EPS) {
        return Err(Error::Domain(format!("envelope argument {x} outside (0,1]")));
    }
    let e = -p.ln() / r.ln();
    Ok(((x / (r - 1.0)).powf(e), x.powf(e)))
}

/// Maximum self-affinity defect `|F(x / r^n) - p^n F(x)|` over gap points
/// `x` in `[1/r, 1]` of the reflected system with weights `(p, 1-p)`.
///
/// Sample points come from a coarse staircase whose resolution is the fine
/// one divided by `p^n`: splitting decisions mirror exactly under
/// prepending the left symbol `n` times, so the rescaled point `x / r^n`
/// lands in a gap of the fine staircase and both evaluations stay exact.
pub fn self_affine_check(r: &Rational, p: &Rational, n: u32, samples: usize) -> Result<f64> {
    let p_f = rational::to_f64(p);
    if !(p_f > 0.0 && p_f < 1.0) {
        return Err(Error::Domain("weight must be in (0,1)".into()));
    }
    if samples == 0 {
        return Err(Error::Domain("need at least one sample".into()));
    }
    let system = crate::ifs::reflected_system(r)?;
    let weights = WeightVector::binary(p.clone())?;
    let r_f = rational::to_f64(r);

    let coarse_res = 1e-3;
    let coarse = Staircase::build(&system, &weights, coarse_res)?;
    let fine = if n == 0 {
        coarse.clone()
    } else {
        Staircase::build(&system, &weights, coarse_res * p_f.powi(n as i32))?
    };

    let window_lo = 1.0 / r_f;
    let points: Vec<f64> = coarse
        .gaps()
        .into_iter()
        .filter_map(|g| {
            let lo = g.lo.max(window_lo);
            let hi = g.hi.min(1.0);
            (hi > lo).then_some(0.5 * (lo + hi))
        })
        .collect();
    if points.is_empty() {
        return Err(Error::Domain("no gap samples in [1/r, 1]".into()));
    }

    let take = samples.min(points.len());
    let scale = r_f.powi(n as i32);
    let mass_scale = p_f.powi(n as i32);
    let mut max_defect = 0.0f64;
    for j in 0..take {
        let x = points[j * points.len() / take];
        let v = exact_gap_value(&fine, x)?;
        let v_scaled = exact_gap_value(&fine, x / scale)?;
        max_defect = max_defect.max((v_scaled - mass_scale * v).abs());
    }
    Ok(max_defect)
}

fn exact_gap_value(s: &Staircase, x: f64) -> Result<f64> {
    let enc = s.eval(x)?;
    if enc.width() > 0.0 {
        return Err(Error::Domain(format!(
            "sample point {x} is not in a gap at this resolution"
        )));
    }
    Ok(enc.lo)
}

/// One plateau of the pair `(F_{r,p}, F_{r,1-p})`: the two staircases
/// coincide on `(a, b)` with the given common value.
#[derive(Debug, Clone, PartialEq)]
pub struct PlateauRow {
    pub a: Rational,
    pub b: Rational,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlateauTable {
    pub rows: Vec<PlateauRow>,
    /// Accumulation point of the plateau endpoints: `1 / (1 + q^2)`.
    pub limit: Rational,
    /// False when produced in conjecture mode for weights outside the
    /// proven `1/(2m+1)` family.
    pub proven: bool,
}

/// Plateau intervals of `F_{r,p}` vs `F_{r,1-p}` generated by iterating the
/// rescaling map `S(x, y) = (1 - q^2 x, 1 - p(1-p) y)` with `q = 1/r`.
///
/// The `x`-contraction of `S` is negative, so which seed (`1 - q + q^2` or
/// `1 - q^2`) produces the left endpoint alternates with `k`. Weights
/// outside the proven family `p = 1/(2m+1)` are accepted only with
/// `conjecture = true` and mark the table unproven.
pub fn plateau_intervals(
    r: &Rational,
    p: &Rational,
    k_max: usize,
    conjecture: bool,
) -> Result<PlateauTable> {
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    if *r <= two {
        return Err(Error::Domain("plateau construction needs r > 2".into()));
    }
    if !p.is_positive() || *p >= one {
        return Err(Error::Domain("weight must be in (0,1)".into()));
    }
    let big_one = num_bigint::BigInt::from(1);
    let proven = *p.numer() == big_one
        && *p.denom() >= num_bigint::BigInt::from(3)
        && p.denom() % 2 == big_one;
    if !proven && !conjecture {
        return Err(HypothesisViolation::PlateauWeightFamily.into());
    }

    let q = &one / r;
    let q2 = &q * &q;
    let pq = p * &(&one - p);
    let seed_lower = &one - &q + &q2; // left end of the first plateau
    let seed_upper = &one - &q2;

    let mut u = seed_lower;
    let mut w = seed_upper;
    let mut v = &one - &pq;
    let mut rows = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let (a, b) = if k % 2 == 0 {
            (u.clone(), w.clone())
        } else {
            (w.clone(), u.clone())
        };
        rows.push(PlateauRow { a, b, value: v.clone() });
        u = &one - &(&q2 * &u);
        w = &one - &(&q2 * &w);
        v = &one - &(&pq * &v);
    }
    let limit = &one / &(&one + &q2);
    Ok(PlateauTable { rows, limit, proven })
}

/// Sign classification of `F_A - F_B`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    NonNegative,
    NonPositive,
    Mixed,
    Undetermined,
}

#[derive(Debug, Clone)]
pub struct SignReport {
    pub classification: SignClass,
    /// Largest `|F_A - F_B|` seen at a mutual gap point (exact values).
    pub max_abs_gap_difference: f64,
    /// Cells whose difference enclosure straddles zero at the given
    /// resolutions. Such cells always exist near the domain endpoints, so
    /// they are diagnostics, not classification evidence.
    pub straddling_cells: Vec<(f64, f64)>,
}

/// Classifies the sign of `D = F_A - F_B` over `[0,1]`.
///
/// Exact evidence comes from mutual gaps (where both CDFs are exact) and
/// from cells whose enclosures are entirely one-signed. `Mixed` requires
/// evidence of both signs; a pair with no evidence either way (identical
/// inputs) reports `NonNegative` with zero recorded difference.
pub fn cdf_difference_sign(a: &Staircase, b: &Staircase) -> SignReport {
    let sweep = merged_regions(a, b);
    let mut any_pos = false;
    let mut any_neg = false;
    let mut max_abs_gap = 0.0f64;
    let mut straddling = Vec::new();

    for region in &sweep {
        let d = region.a_value.sub(&region.b_value);
        if d.width() == 0.0 {
            max_abs_gap = max_abs_gap.max(d.lo.abs());
        }
        if d.lo > EPS {
            any_pos = true;
        } else if d.hi < -EPS {
            any_neg = true;
        } else if d.lo < -EPS && d.hi > EPS {
            straddling.push((region.lo, region.hi));
        }
    }

    let budget = 2.0 * (a.resolution() + b.resolution()) + EPS;
    let classification = match (any_pos, any_neg) {
        (true, true) => SignClass::Mixed,
        (true, false) => SignClass::NonNegative,
        (false, true) => SignClass::NonPositive,
        (false, false) => {
            let widest = sweep
                .iter()
                .map(|r| r.a_value.sub(&r.b_value).width())
                .fold(0.0f64, f64::max);
            if max_abs_gap <= EPS && widest <= budget {
                // No evidence of either sign anywhere: the zero case.
                SignClass::NonNegative
            } else {
                SignClass::Undetermined
            }
        }
    };

    SignReport {
        classification,
        max_abs_gap_difference: max_abs_gap,
        straddling_cells: straddling,
    }
}

pub(crate) struct Region {
    pub lo: f64,
    pub hi: f64,
    pub a_value: ValueInterval,
    pub b_value: ValueInterval,
}

/// Splits `[0,1]` at every cell boundary of either staircase and reports
/// the CDF enclosures of both sides on each elementary region.
pub(crate) fn merged_regions(a: &Staircase, b: &Staircase) -> Vec<Region> {
    let mut cuts: Vec<f64> = Vec::with_capacity(2 * (a.cells().len() + b.cells().len()) + 2);
    cuts.push(0.0);
    cuts.push(1.0);
    for c in a.cells().iter().chain(b.cells()) {
        cuts.push(c.lo);
        cuts.push(c.hi);
    }
    cuts.retain(|v| (0.0..=1.0).contains(v));
    cuts.sort_by(f64::total_cmp);
    cuts.dedup();

    let value_on = |s: &Staircase, lo: f64, hi: f64| -> ValueInterval {
        let mid = 0.5 * (lo + hi);
        let idx = s.cells().partition_point(|c| c.lo <= mid);
        if idx == 0 {
            return ValueInterval::point(0.0);
        }
        let cell = &s.cells()[idx - 1];
        if mid < cell.hi {
            ValueInterval::new(cell.cum_left, cell.cum_left + cell.mass)
        } else {
            ValueInterval::point(cell.cum_left + cell.mass)
        }
    };

    cuts.windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| Region {
            lo: w[0],
            hi: w[1],
            a_value: value_on(a, w[0], w[1]),
            b_value: value_on(b, w[0], w[1]),
        })
        .collect()
}
