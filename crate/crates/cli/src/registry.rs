//! The registry of worked example configurations.
//!
//! Each entry stores its systems and weights as spec-file text — the same
//! format the CLI accepts from users — so the registry is both the embedded
//! reference table and a continuous exercise of the parser. Expectations
//! say which closed-form strategy must apply (or which hypothesis must be
//! reported violated), or that the example is an envelope-bounds figure.

use ifs_transport::error::HypothesisViolation;
use ifs_transport::ifs::{IfSystem, WeightVector};
use ifs_transport::rational::{ratio, Rational};

use crate::spec_file::{parse_spec, ParseError};

#[derive(Debug, Clone)]
pub enum Expectation {
    /// The named strategy applies; the report must be consistent.
    Applies { strategy: &'static str },
    /// The named strategy must report exactly this violation.
    DoesNotApply {
        strategy: &'static str,
        violation: HypothesisViolation,
    },
    /// Envelope-bounds figure: every gap value must sit inside the
    /// power-law envelope for these parameters.
    Bounds { r: (i64, i64), p: (i64, i64) },
}

#[derive(Debug, Clone)]
pub struct ExampleSpec {
    pub id: &'static str,
    pub description: &'static str,
    /// First measure, spec-file format (maps + one weights line).
    pub first_text: &'static str,
    /// Second measure; absent for single-measure bounds figures.
    pub second_text: Option<&'static str>,
    pub expectation: Expectation,
}

impl ExampleSpec {
    pub fn first(&self) -> Result<(IfSystem, WeightVector), ParseError> {
        parse_measure(self.first_text)
    }

    pub fn second(&self) -> Result<Option<(IfSystem, WeightVector)>, ParseError> {
        self.second_text.map(parse_measure).transpose()
    }

    pub fn bounds_params(&self) -> Option<(Rational, Rational)> {
        match self.expectation {
            Expectation::Bounds { r, p } => Some((ratio(r.0, r.1), ratio(p.0, p.1))),
            _ => None,
        }
    }
}

fn parse_measure(text: &str) -> Result<(IfSystem, WeightVector), ParseError> {
    let parsed = parse_spec(text)?;
    let weights = parsed.weight_sets.into_iter().next().ok_or(ParseError {
        line: 1,
        column: 1,
        message: "registry measure needs a weights line".into(),
    })?;
    Ok((parsed.system, weights))
}

pub fn all() -> Vec<ExampleSpec> {
    vec![
        ExampleSpec {
            id: "eg1",
            description: "three maps of slope 1/5, reshuffled weights",
            first_text: "affine 1/5 0\naffine 1/5 2/5\naffine 1/5 4/5\nweights 1/2 1/4 1/4\n",
            second_text: Some(
                "affine 1/5 0\naffine 1/5 2/5\naffine 1/5 4/5\nweights 1/4 1/4 1/2\n",
            ),
            expectation: Expectation::Applies { strategy: "same-system" },
        },
        ExampleSpec {
            id: "eg2",
            description: "mixed slopes, dominance still one-signed",
            first_text: "affine 1/5 0\naffine 3/5 1/5\naffine 1/5 4/5\nweights 1/4 1/3 5/12\n",
            second_text: Some(
                "affine 1/5 0\naffine 3/5 1/5\naffine 1/5 4/5\nweights 1/6 1/4 7/12\n",
            ),
            expectation: Expectation::Applies { strategy: "same-system" },
        },
        ExampleSpec {
            id: "eg3",
            description: "two quarter-sine maps around an affine one",
            first_text: "qsine 1/6 0\naffine 1/6 1/3\nqsine 1/3 2/3\nweights 0.1 0.3 0.6\n",
            second_text: Some(
                "qsine 1/6 0\naffine 1/6 1/3\nqsine 1/3 2/3\nweights 0.2 0.5 0.3\n",
            ),
            expectation: Expectation::Applies { strategy: "same-system" },
        },
        ExampleSpec {
            id: "eg4",
            description: "same maps as eg3, weight dominance changes sign",
            first_text: "qsine 1/6 0\naffine 1/6 1/3\nqsine 1/3 2/3\nweights 0.3 0.1 0.6\n",
            second_text: Some(
                "qsine 1/6 0\naffine 1/6 1/3\nqsine 1/3 2/3\nweights 0.2 0.5 0.3\n",
            ),
            expectation: Expectation::DoesNotApply {
                strategy: "same-system",
                violation: HypothesisViolation::WeightDominance,
            },
        },
        ExampleSpec {
            id: "eg5",
            description: "middle map decreasing",
            first_text: "qsine 1/6 0\naffine -1/6 1/2\nqsine 1/3 2/3\nweights 0.1 0.3 0.6\n",
            second_text: Some(
                "qsine 1/6 0\naffine -1/6 1/2\nqsine 1/3 2/3\nweights 0.2 0.5 0.3\n",
            ),
            expectation: Expectation::DoesNotApply {
                strategy: "same-system",
                violation: HypothesisViolation::Positivity,
            },
        },
        ExampleSpec {
            id: "eg6",
            description: "second system halves the slopes, more left weight",
            first_text: "affine 1/3 0\naffine 1/3 2/3\nweights 0.4 0.6\n",
            second_text: Some("affine 1/6 0\naffine 1/6 2/3\nweights 0.5 0.5\n"),
            expectation: Expectation::Applies { strategy: "dominated-pair" },
        },
        ExampleSpec {
            id: "eg7",
            description: "eg6 pair with the weight order reversed",
            first_text: "affine 1/3 0\naffine 1/3 2/3\nweights 0.5 0.5\n",
            second_text: Some("affine 1/6 0\naffine 1/6 2/3\nweights 0.4 0.6\n"),
            expectation: Expectation::DoesNotApply {
                strategy: "dominated-pair",
                violation: HypothesisViolation::PairWeightOrder,
            },
        },
        ExampleSpec {
            id: "eg8",
            description: "eg6 pair, weight order reversed further",
            first_text: "affine 1/3 0\naffine 1/3 2/3\nweights 0.5 0.5\n",
            second_text: Some("affine 1/6 0\naffine 1/6 2/3\nweights 0.25 0.75\n"),
            expectation: Expectation::DoesNotApply {
                strategy: "dominated-pair",
                violation: HypothesisViolation::PairWeightOrder,
            },
        },
        ExampleSpec {
            id: "eg9",
            description: "reflected family r=3, weights (1/3,2/3) vs reversal",
            first_text: "affine 1/3 0\naffine -1/3 1\nweights 1/3 2/3\n",
            second_text: Some("affine 1/3 0\naffine -1/3 1\nweights 2/3 1/3\n"),
            expectation: Expectation::Applies { strategy: "reflected-weights" },
        },
        ExampleSpec {
            id: "eg10",
            description: "reflected family r=7, weights (1/5,4/5) vs reversal",
            first_text: "affine 1/7 0\naffine -1/7 1\nweights 1/5 4/5\n",
            second_text: Some("affine 1/7 0\naffine -1/7 1\nweights 4/5 1/5\n"),
            expectation: Expectation::Applies { strategy: "reflected-weights" },
        },
        ExampleSpec {
            id: "eg11",
            description: "reflected family r=3, weights outside the reversed \
                          1/(2k+1) family; the source prints the second vector \
                          inconsistently ((0.3,0.4) in text, (0.3,0.7) in the \
                          figure) and only the figure's is a probability vector",
            first_text: "affine 1/3 0\naffine -1/3 1\nweights 0.1 0.9\n",
            second_text: Some("affine 1/3 0\naffine -1/3 1\nweights 0.3 0.7\n"),
            expectation: Expectation::DoesNotApply {
                strategy: "reflected-weights",
                violation: HypothesisViolation::ReflectedWeightForm,
            },
        },
        ExampleSpec {
            id: "eg12",
            description: "envelope figure for the reflected family r=2.1 at \
                          the boundary weight 1/2.1",
            first_text: "affine 10/21 0\naffine -10/21 1\nweights 10/21 11/21\n",
            second_text: None,
            expectation: Expectation::Bounds { r: (21, 10), p: (10, 21) },
        },
        ExampleSpec {
            id: "eg13",
            description: "envelope figure for the reflected family r=3, p=2/3",
            first_text: "affine 1/3 0\naffine -1/3 1\nweights 2/3 1/3\n",
            second_text: None,
            expectation: Expectation::Bounds { r: (3, 1), p: (2, 3) },
        },
        ExampleSpec {
            id: "eg14",
            description: "reflected vs positive family, r=2.5, shared weights",
            first_text: "affine 2/5 0\naffine -2/5 1\nweights 1/4 3/4\n",
            second_text: Some("affine 2/5 0\naffine 2/5 3/5\nweights 1/4 3/4\n"),
            expectation: Expectation::Applies { strategy: "mirror-pair" },
        },
        ExampleSpec {
            id: "eg15",
            description: "mirror pair with mismatched ratios (2.5 vs 3)",
            first_text: "affine 2/5 0\naffine -2/5 1\nweights 0.25 0.75\n",
            second_text: Some("affine 1/3 0\naffine 1/3 2/3\nweights 0.25 0.75\n"),
            expectation: Expectation::DoesNotApply {
                strategy: "mirror-pair",
                violation: HypothesisViolation::MirrorPairSystems,
            },
        },
        ExampleSpec {
            id: "eg16",
            description: "mirror pair r=3 with different weight vectors",
            first_text: "affine 1/3 0\naffine -1/3 1\nweights 0.25 0.75\n",
            second_text: Some("affine 1/3 0\naffine 1/3 2/3\nweights 1/3 2/3\n"),
            expectation: Expectation::DoesNotApply {
                strategy: "mirror-pair",
                violation: HypothesisViolation::MirrorPairWeights,
            },
        },
    ]
}

pub fn find(id: &str) -> Option<ExampleSpec> {
    all().into_iter().find(|e| e.id == id)
}
