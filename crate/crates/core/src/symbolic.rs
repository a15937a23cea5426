//! The alternating order on binary words, its ordered levels, and the
//! exact-rational crossing-equation search.
//!
//! Two staircases built from the reflected two-map family can only agree at
//! a point if certain partial sums of word weights coincide; everything here
//! runs on arbitrary-precision rationals so that odd/even integer arguments
//! survive intact. Floating point is deliberately absent from the search
//! paths.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::ifs::Word;
use crate::rational::Rational;

/// Hard cap on level size; `build_level` materializes `2^n` words.
/// At the cap a level holds 16M packed words (~64 MB).
pub const MAX_LEVEL: u32 = 24;

/// Compares binary words in the alternating order.
///
/// `a` precedes `b` when `a` is a proper prefix of `b`, or at the first
/// disagreement after the common prefix `u`: `a` continues with 1 and `b`
/// with 2 when `u` contains an even number of 2s, and the other way round
/// when odd.
pub fn prec_compare(a: &Word, b: &Word) -> Result<Ordering> {
    for w in [a, b] {
        if let Some(&s) = w.symbols().iter().find(|&&s| s != 1 && s != 2) {
            return Err(Error::Domain(format!("non-binary symbol {s} in word")));
        }
    }
    let mut twos_in_prefix = 0usize;
    for (&x, &y) in a.symbols().iter().zip(b.symbols()) {
        if x != y {
            let a_first = (x == 1) == twos_in_prefix.is_multiple_of(2);
            return Ok(if a_first { Ordering::Less } else { Ordering::Greater });
        }
        if x == 2 {
            twos_in_prefix += 1;
        }
    }
    Ok(a.len().cmp(&b.len()))
}

/// The `n`-th ordered level: all `2^n` binary words of length `n`, listed
/// ascending in the alternating order.
///
/// Words are stored packed (bit `j` set when symbol `j+1` of the word is 2),
/// which keeps deep levels affordable.
#[derive(Debug, Clone)]
pub struct OrderedLevel {
    n: u32,
    codes: Vec<u32>,
}

impl OrderedLevel {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// Materializes entry `i` (0-based) as a `Word`.
    pub fn word(&self, i: usize) -> Word {
        let code = self.codes[i];
        let symbols = (0..self.n)
            .map(|j| if code >> j & 1 == 1 { 2 } else { 1 })
            .collect();
        Word::new(symbols)
    }

    /// Number of 2s in entry `i`.
    pub fn twos(&self, i: usize) -> u32 {
        self.codes[i].count_ones()
    }

    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        (0..self.len()).map(|i| self.word(i))
    }
}

/// Builds level `n` by the doubling recursion: entry `i` (1-based) of the
/// parent spawns children by appending 1 then 2 when `i` is odd, and 2 then
/// 1 when `i` is even.
pub fn build_level(n: u32) -> Result<OrderedLevel> {
    if n == 0 || n > MAX_LEVEL {
        return Err(Error::Domain(format!("level must be in 1..={MAX_LEVEL}")));
    }
    let mut codes: Vec<u32> = vec![0b0, 0b1];
    for depth in 1..n {
        let mut next = Vec::with_capacity(codes.len() * 2);
        for (idx, &code) in codes.iter().enumerate() {
            let two = code | 1 << depth;
            if idx % 2 == 0 {
                // odd 1-based position: append 1 then 2
                next.push(code);
                next.push(two);
            } else {
                next.push(two);
                next.push(code);
            }
        }
        codes = next;
    }
    Ok(OrderedLevel { n, codes })
}

/// Product of component weights `prod_i p_{w_i}` in exact arithmetic.
///
/// For binary words this is `p^{#1(w)} (1-p)^{#2(w)}`.
pub fn word_weight(weights: &[Rational], w: &Word) -> Result<Rational> {
    let mut acc = Rational::one();
    for &s in w.symbols() {
        let idx = s as usize;
        if idx == 0 || idx > weights.len() {
            return Err(Error::Domain(format!(
                "word symbol {s} outside alphabet 1..={}",
                weights.len()
            )));
        }
        acc *= &weights[idx - 1];
    }
    Ok(acc)
}

/// Table of `p^{n-t} (1-p)^t` for `t = 0..=n`; the weight of a binary word
/// of length `n` depends only on its number of 2s.
fn binary_weight_table(p: &Rational, n: u32) -> Vec<Rational> {
    let q = Rational::one() - p;
    let mut table = Vec::with_capacity(n as usize + 1);
    let mut v = num_traits::pow(p.clone(), n as usize);
    let ratio = &q / p;
    for _ in 0..=n {
        table.push(v.clone());
        v *= &ratio;
    }
    table
}

/// Cumulative sums of entry weights along a level; exact, strictly
/// increasing, final entry 1.
pub fn prefix_sums(level: &OrderedLevel, p: &Rational) -> Vec<Rational> {
    let table = binary_weight_table(p, level.n);
    let mut acc = Rational::zero();
    (0..level.len())
        .map(|i| {
            acc += &table[level.twos(i) as usize];
            acc.clone()
        })
        .collect()
}

/// One index where the two prefix-sum sequences coincide.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossingMatch {
    pub n: u32,
    /// 1-based entry index within the level.
    pub i: usize,
    /// The shared partial-sum value.
    pub value: Rational,
}

/// Exhaustive exact search for indices where the `p` and `1-p` prefix sums
/// of a level agree, for `p = 1/(2k+1)` and all levels up to `n_max`.
///
/// The trivial final index `i = 2^n` (both sums are 1) is excluded. The
/// interesting outcome: no match ever occurs at `i <= 2^n - 2^{n-2} - 1`,
/// while `i = 2^n - 2^{n-2}` matches at every level with value `1 - p(1-p)`.
pub fn crossing_equation_search(k: u32, n_max: u32) -> Result<Vec<CrossingMatch>> {
    if k == 0 {
        return Err(Error::Domain("weight family index k must be >= 1".into()));
    }
    if n_max == 0 || n_max > 20 {
        return Err(Error::Domain("n_max must be in 1..=20".into()));
    }
    let p = Rational::new(1.into(), (2 * k as i64 + 1).into());
    let q = Rational::one() - &p;
    let mut matches = Vec::new();
    for n in 1..=n_max {
        let level = build_level(n)?;
        let table_p = binary_weight_table(&p, n);
        let table_q = binary_weight_table(&q, n);
        let mut sum_p = Rational::zero();
        let mut sum_q = Rational::zero();
        for i in 0..level.len() - 1 {
            let t = level.twos(i) as usize;
            sum_p += &table_p[t];
            sum_q += &table_q[t];
            if sum_p == sum_q {
                matches.push(CrossingMatch {
                    n,
                    i: i + 1,
                    value: sum_p.clone(),
                });
            }
        }
    }
    Ok(matches)
}

/// Checks the two-segment weight symmetry of a level: the multiset of
/// `p`-weights of entries `1..=2^{n-1}-2^{n-3}` must equal the multiset of
/// `(1-p)`-weights of entries `2^{n-1}-2^{n-3}+1..=2^n-2^{n-2}`, and vice
/// versa.
///
/// The weight of a word depends only on its number of 2s, so the multisets
/// are balances of exact weight values accumulated per 2-count.
pub fn segment_symmetry_check(n: u32, p: &Rational) -> Result<bool> {
    if n < 3 {
        return Err(Error::Domain("segment symmetry needs n >= 3".into()));
    }
    if !p.is_positive() || *p >= Rational::one() {
        return Err(Error::Domain("weight must be in (0,1)".into()));
    }
    let level = build_level(n)?;
    let first_end = (1usize << (n - 1)) - (1usize << (n - 3)); // 2^{n-1} - 2^{n-3}
    let second_end = (1usize << n) - (1usize << (n - 2)); // 2^n - 2^{n-2}

    let mut counts_first = vec![0i64; n as usize + 1];
    let mut counts_second = vec![0i64; n as usize + 1];
    for i in 0..first_end {
        counts_first[level.twos(i) as usize] += 1;
    }
    for i in first_end..second_end {
        counts_second[level.twos(i) as usize] += 1;
    }

    // weight_p[t] = p^{n-t} (1-p)^t; the (1-p)-weight of a t-twos word is
    // weight_p[n-t]
    let weight_p = binary_weight_table(p, n);
    let mut balance: std::collections::HashMap<&Rational, i64> = Default::default();
    let mut check = |first: &[i64], second: &[i64]| {
        balance.clear();
        for t in 0..=n as usize {
            *balance.entry(&weight_p[t]).or_insert(0) += first[t];
            *balance.entry(&weight_p[n as usize - t]).or_insert(0) -= second[t];
        }
        balance.values().all(|&v| v == 0)
    };
    // both stated directions: p-weights of the first segment against
    // (1-p)-weights of the second, and the other way round
    Ok(check(&counts_first, &counts_second) && check(&counts_second, &counts_first))
}

/// Verifies that cylinder intervals of the reflected family `(x/r, 1-x/r)`
/// sit on the line in exactly the order the level lists their words:
/// consecutive entries must satisfy `sup(cell_i) < inf(cell_{i+1})` strictly.
pub fn geometric_order_check(r: f64, n: u32) -> Result<bool> {
    if !r.is_finite() || r <= 2.0 {
        return Err(Error::Domain("geometric order check needs r > 2".into()));
    }
    if n == 0 || n > 12 {
        return Err(Error::Domain("geometric order check supports n in 1..=12".into()));
    }
    let level = build_level(n)?;
    let mut intervals = Vec::with_capacity(level.len());
    for i in 0..level.len() {
        intervals.push(reflected_cylinder(r, &level, i));
    }
    Ok(intervals.windows(2).all(|w| w[0].1 < w[1].0))
}

/// Cylinder interval of entry `i` under `(x/r, 1-x/r)`, computed by
/// composing the affine maps front to back.
fn reflected_cylinder(r: f64, level: &OrderedLevel, i: usize) -> (f64, f64) {
    // Composition of affine maps is affine: track f_w(x) = a x + b.
    let mut a = 1.0f64;
    let mut b = 0.0f64;
    let code = level.codes[i];
    for j in 0..level.n() {
        // f_w o f_s with s the j-th symbol
        if code >> j & 1 == 1 {
            // f_2(x) = 1 - x/r
            b += a;
            a = -a / r;
        } else {
            a /= r;
        }
    }
    let (x, y) = (b, a + b);
    if x <= y {
        (x, y)
    } else {
        (y, x)
    }
}

/// Exact cylinder right endpoints and prefix sums for the reflected family
/// with rational ratio; used by the exact sign diagnostics.
pub fn reflected_gap_points(
    r: &Rational,
    p: &Rational,
    n: u32,
) -> Result<Vec<(Rational, Rational, Rational)>> {
    let two = Rational::from_integer(2.into());
    if *r <= two {
        return Err(Error::Domain("reflected family needs r > 2".into()));
    }
    let level = build_level(n)?;
    let sums_p = prefix_sums(&level, p);
    let q = Rational::one() - p;
    let sums_q = prefix_sums(&level, &q);
    let mut out = Vec::with_capacity(level.len() - 1);
    for i in 0..level.len() - 1 {
        let sup = rational_cylinder_sup(r, &level, i);
        out.push((sup, sums_p[i].clone(), sums_q[i].clone()));
    }
    Ok(out)
}

fn rational_cylinder_sup(r: &Rational, level: &OrderedLevel, i: usize) -> Rational {
    let mut a = Rational::one();
    let mut b = Rational::zero();
    let word = level.word(i);
    for &s in word.symbols() {
        if s == 2 {
            b += &a;
            a = -(a / r);
        } else {
            a /= r;
        }
    }
    // image of [0,1] under x -> a x + b
    if a.is_negative() { b } else { a + b }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use proptest::prelude::*;

    fn w(digits: &str) -> Word {
        Word::from_digits(digits).unwrap()
    }

    fn level_string(n: u32) -> String {
        build_level(n)
            .unwrap()
            .words()
            .map(|w| w.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    #[test]
    fn order_examples() {
        assert_eq!(prec_compare(&w("112"), &w("121")).unwrap(), Ordering::Less);
        assert_eq!(prec_compare(&w("222"), &w("212")).unwrap(), Ordering::Less);
        assert_eq!(prec_compare(&w("12"), &w("121")).unwrap(), Ordering::Less);
        assert_eq!(prec_compare(&w("121"), &w("12")).unwrap(), Ordering::Greater);
        assert_eq!(prec_compare(&w("12"), &w("12")).unwrap(), Ordering::Equal);
        assert!(prec_compare(&w("13"), &w("12")).is_err());
    }

    #[test]
    fn level_enumerations() {
        assert_eq!(level_string(1), "1 2");
        assert_eq!(level_string(2), "11 12 22 21");
        assert_eq!(level_string(3), "111 112 122 121 221 222 212 211");
        assert_eq!(
            level_string(4),
            "1111 1112 1122 1121 1221 1222 1212 1211 \
             2211 2212 2222 2221 2121 2122 2112 2111"
        );
    }

    #[test]
    fn level_bounds() {
        assert!(build_level(0).is_err());
        assert!(build_level(MAX_LEVEL + 1).is_err());
    }

    #[test]
    fn position_parity_of_twos() {
        for n in 1..=10 {
            let level = build_level(n).unwrap();
            for i in 0..level.len() {
                // odd 1-based positions carry an even number of 2s
                assert_eq!(level.twos(i).is_multiple_of(2), i.is_multiple_of(2), "n={n} i={i}");
            }
        }
    }

    #[test]
    fn word_weights_by_hand() {
        let p = vec![ratio(1, 3), ratio(2, 3)];
        assert_eq!(word_weight(&p, &w("122")).unwrap(), ratio(4, 27));
        assert_eq!(word_weight(&p, &w("111")).unwrap(), ratio(1, 27));
        assert_eq!(word_weight(&p, &w("2")).unwrap(), ratio(2, 3));
        assert!(word_weight(&p, &w("3")).is_err());
    }

    #[test]
    fn prefix_sums_by_hand() {
        let level = build_level(2).unwrap();
        let sums = prefix_sums(&level, &ratio(1, 3));
        assert_eq!(sums, vec![ratio(1, 9), ratio(3, 9), ratio(7, 9), ratio(1, 1)]);
        let sums = prefix_sums(&level, &ratio(2, 3));
        assert_eq!(sums, vec![ratio(4, 9), ratio(6, 9), ratio(7, 9), ratio(1, 1)]);
        let level1 = build_level(1).unwrap();
        let p = ratio(2, 7);
        assert_eq!(prefix_sums(&level1, &p), vec![p.clone(), ratio(1, 1)]);
    }

    #[test]
    fn prefix_sums_increase_to_one() {
        for n in 1..=8 {
            let level = build_level(n).unwrap();
            let sums = prefix_sums(&level, &ratio(2, 5));
            assert!(sums.windows(2).all(|ab| ab[0] < ab[1]));
            assert_eq!(*sums.last().unwrap(), ratio(1, 1));
        }
    }

    #[test]
    fn crossing_search_small_cases() {
        let matches = crossing_equation_search(1, 2).unwrap();
        assert_eq!(
            matches,
            vec![CrossingMatch { n: 2, i: 3, value: ratio(7, 9) }]
        );

        let matches = crossing_equation_search(2, 2).unwrap();
        let at_three: Vec<_> = matches.iter().filter(|m| m.n == 2).collect();
        assert_eq!(at_three.len(), 1);
        assert_eq!(at_three[0].i, 3);
        assert_eq!(at_three[0].value, ratio(21, 25));
    }

    #[test]
    fn crossing_search_range_errors() {
        assert!(crossing_equation_search(0, 5).is_err());
        assert!(crossing_equation_search(1, 21).is_err());
    }

    #[test]
    fn crossing_match_structure() {
        for k in 1..=2u32 {
            let matches = crossing_equation_search(k, 10).unwrap();
            // The three-quarters index matches at every level >= 2 with the
            // level-independent value 1 - p(1-p).
            let p = ratio(1, 2 * k as i64 + 1);
            let first_value = ratio(1, 1) - &p * (ratio(1, 1) - &p);
            for n in 2..=10u32 {
                let threshold = (1usize << n) - (1usize << (n - 2));
                assert!(
                    matches
                        .iter()
                        .any(|m| m.n == n && m.i == threshold && m.value == first_value),
                    "missing threshold match at n={n}"
                );
            }
            // No match sits below the threshold for n <= 5 ...
            for m in &matches {
                let threshold = (1usize << m.n) - (1usize << (m.n - 2));
                if m.n <= 5 {
                    assert!(m.i >= threshold, "unexpected low match: {m:?}");
                }
            }
            // ... but from n = 6 on they exist: the entry at the threshold
            // has three 2s, so at n = 6 its weight p^3 (1-p)^3 is symmetric
            // in p and 1-p and the sums already agree one index earlier.
            assert!(
                matches.iter().any(|m| m.n == 6 && m.i == 47),
                "expected the balanced-tail match at n=6, i=47"
            );
        }
        // Hand-checked value of the n=6, i=47 match for p = 1/3.
        let matches = crossing_equation_search(1, 6).unwrap();
        let m = matches.iter().find(|m| m.n == 6 && m.i == 47).unwrap();
        assert_eq!(m.value, ratio(559, 729));
    }

    #[test]
    fn segment_symmetry_small_levels() {
        for p in [ratio(1, 3), ratio(1, 5), ratio(1, 2), ratio(3, 7)] {
            for n in 3..=12 {
                assert!(segment_symmetry_check(n, &p).unwrap(), "n={n}, p={p}");
            }
        }
        assert!(segment_symmetry_check(2, &ratio(1, 3)).is_err());
        assert!(segment_symmetry_check(4, &ratio(3, 2)).is_err());
    }

    #[test]
    fn entry_at_three_quarters_has_three_twos() {
        for n in 3..=14u32 {
            let level = build_level(n).unwrap();
            let i = (1usize << n) - (1usize << (n - 2));
            assert_eq!(level.twos(i - 1), 3, "n={n}");
        }
    }

    #[test]
    fn geometric_order_small() {
        assert!(geometric_order_check(3.0, 3).unwrap());
        assert!(geometric_order_check(2.1, 6).unwrap());
        assert!(geometric_order_check(5.0, 1).unwrap());
        assert!(geometric_order_check(2.0, 3).is_err());
        assert!(geometric_order_check(3.0, 13).is_err());
    }

    #[test]
    fn order_agrees_with_level_position() {
        for n in 1..=8 {
            let level = build_level(n).unwrap();
            let words: Vec<Word> = level.words().collect();
            for i in 0..words.len() {
                for j in 0..words.len() {
                    let expected = i.cmp(&j);
                    assert_eq!(
                        prec_compare(&words[i], &words[j]).unwrap(),
                        expected,
                        "n={n} i={i} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn gap_points_match_prefix_sums() {
        // level 2 for r=3: sup of entry 3 (word 22) is 7/9
        let rows = reflected_gap_points(&ratio(3, 1), &ratio(1, 3), 2).unwrap();
        assert_eq!(rows.len(), 3);
        assert_eq!(rows[2].0, ratio(7, 9));
        assert_eq!(rows[2].1, ratio(7, 9));
        assert_eq!(rows[2].2, ratio(7, 9));
    }

    proptest! {
        #[test]
        fn order_is_total_and_transitive(
            seed in proptest::collection::vec(0u8..2, 3..24)
        ) {
            // carve three words of equal length out of one random byte pool
            let n = seed.len() / 3;
            let mk = |s: &[u8]| Word::new(s.iter().map(|&b| b + 1).collect());
            let a = mk(&seed[..n]);
            let b = mk(&seed[n..2 * n]);
            let c = mk(&seed[2 * n..3 * n]);

            // antisymmetry
            let ab = prec_compare(&a, &b).unwrap();
            let ba = prec_compare(&b, &a).unwrap();
            prop_assert_eq!(ab, ba.reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);

            // transitivity over the sampled triple
            let bc = prec_compare(&b, &c).unwrap();
            let ac = prec_compare(&a, &c).unwrap();
            if ab == Ordering::Less && bc == Ordering::Less {
                prop_assert_eq!(ac, Ordering::Less);
            }
        }

        #[test]
        fn prefix_rule_orders_nested_words(
            base in proptest::collection::vec(1u8..3, 1..12),
            ext in proptest::collection::vec(1u8..3, 1..6)
        ) {
            let a = Word::new(base.clone());
            let mut longer = base;
            longer.extend(ext);
            let b = Word::new(longer);
            prop_assert_eq!(prec_compare(&a, &b).unwrap(), Ordering::Less);
        }
    }
}
