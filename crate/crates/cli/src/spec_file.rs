//! Plain-text system descriptions.
//!
//! One map per line, weights afterwards, `#` comments anywhere:
//!
//! ```text
//! # three maps with slope 1/5
//! affine 1/5 0
//! affine 1/5 2/5
//! affine 1/5 4/5
//! weights 1/2 1/4 1/4
//! weights 1/4 1/4 1/2
//! ```
//!
//! Numbers are exact: `a/b` fractions, integers, or decimal literals
//! (read as decimal fractions, so `0.3` is exactly 3/10).

use ifs_transport::ifs::{ContractionMap, IfSystem, WeightVector};
use ifs_transport::rational::parse_rational;

/// Parse failure with a 1-based source position.
#[derive(Debug, Clone)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
pub struct ParsedSpec {
    pub system: IfSystem,
    pub weight_sets: Vec<WeightVector>,
}

pub fn parse_spec(text: &str) -> Result<ParsedSpec, ParseError> {
    let mut maps: Vec<ContractionMap> = Vec::new();
    let mut weight_sets: Vec<WeightVector> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.split_once('#') {
            Some((before, _)) => before,
            None => raw,
        };
        let mut tokens = line.split_whitespace();
        let Some(keyword) = tokens.next() else {
            continue;
        };
        let column = raw.find(keyword).map(|c| c + 1).unwrap_or(1);
        let err = |message: String| ParseError { line: line_no, column, message };

        match keyword {
            "affine" | "qsine" => {
                let args: Vec<&str> = tokens.collect();
                if args.len() != 2 {
                    return Err(err(format!(
                        "`{keyword}` takes two numbers, found {}",
                        args.len()
                    )));
                }
                let a = parse_rational(args[0]).map_err(|e| err(e.to_string()))?;
                let b = parse_rational(args[1]).map_err(|e| err(e.to_string()))?;
                let map = if keyword == "affine" {
                    ContractionMap::affine(a, b)
                } else {
                    ContractionMap::quarter_sine(
                        ifs_transport::rational::to_f64(&a),
                        ifs_transport::rational::to_f64(&b),
                    )
                };
                maps.push(map.map_err(|e| err(e.to_string()))?);
            }
            "weights" => {
                let mut ws = Vec::new();
                for tok in tokens {
                    ws.push(parse_rational(tok).map_err(|e| err(e.to_string()))?);
                }
                weight_sets.push(WeightVector::new(ws).map_err(|e| err(e.to_string()))?);
            }
            other => {
                return Err(err(format!(
                    "unknown keyword `{other}` (expected affine, qsine, or weights)"
                )));
            }
        }
    }

    let system = IfSystem::new(maps).map_err(|e| ParseError {
        line: text.lines().count().max(1),
        column: 1,
        message: e.to_string(),
    })?;
    for w in &weight_sets {
        if w.len() != system.len() {
            return Err(ParseError {
                line: text.lines().count().max(1),
                column: 1,
                message: format!(
                    "weight vector has {} entries for {} maps",
                    w.len(),
                    system.len()
                ),
            });
        }
    }
    Ok(ParsedSpec { system, weight_sets })
}
