//! Exact rational arithmetic helpers.
//!
//! All parity-sensitive computations (crossing-equation search, prefix sums,
//! exact closed forms) run on arbitrary-precision rationals; floating point
//! only appears at the reporting boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored reduced.
pub type Rational = BigRational;

/// Rational from an integer pair.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Lossy view for numeric paths.
pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `a/b`, an integer, or a decimal literal into an exact rational.
///
/// Decimals are read as exact decimal fractions, so `0.3` is 3/10 and
/// `2.1` is 21/10 (not the nearest binary double).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::Domain("empty numeric literal".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad numerator in `{s}`")))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Domain(format!("bad denominator in `{s}`")))?;
        if d.is_zero() {
            return Err(Error::Domain(format!("zero denominator in `{s}`")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let negative = int_part.trim_start().starts_with('-');
        let int_part = if int_part.is_empty() || int_part == "-" {
            "0"
        } else {
            int_part
        };
        let i: BigInt = int_part
            .parse()
            .map_err(|_| Error::Domain(format!("bad decimal `{s}`")))?;
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Domain(format!("bad decimal `{s}`")));
        }
        let f: BigInt = frac_part
            .parse()
            .map_err(|_| Error::Domain(format!("bad decimal `{s}`")))?;
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let magnitude = i.abs() * &scale + f;
        let signed = if negative { -magnitude } else { magnitude };
        return Ok(Rational::new(signed, scale));
    }
    let n: BigInt = s
        .parse()
        .map_err(|_| Error::Domain(format!("bad numeric literal `{s}`")))?;
    Ok(Rational::from_integer(n))
}

/// Renders as `num/den`, or just `num` for integers.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Compensated (Kahan) summation. Cumulative staircase values are sums of up
/// to millions of cell masses; naive accumulation would eat the 1e-12 budget.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}
