//! Command implementations. Each returns its stdout text plus a process
//! exit code; `main` stays a thin dispatcher so integration tests can call
//! straight into these.

use std::fmt::Write as FmtWrite;
use std::fs;
use std::path::{Path, PathBuf};

use ifs_transport::cdf::{power_law_envelope, plateau_intervals, Staircase};
use ifs_transport::error::Error as CoreError;
use ifs_transport::ifs::{check_weight_dominance, IfSystem, WeightVector};
use ifs_transport::rational::{self, parse_rational, Rational};
use ifs_transport::symbolic;
use ifs_transport::transport::{
    w1_report, MonteCarloOptions, ReportOptions, W1Report,
};

use crate::registry::{self, Expectation};
use crate::spec_file::{parse_spec, ParseError, ParsedSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED_EXPECTATION: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_IO: u8 = 3;

/// CLI-level error, mapped onto the documented exit codes.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Io(String),
    Core(CoreError),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Parse(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "{m}"),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Io(_) => EXIT_IO,
            CliError::Core(CoreError::Io(_)) => EXIT_IO,
            CliError::Core(_) => EXIT_PARSE,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        CliError::Core(e)
    }
}

pub type CliResult = Result<(String, u8), CliError>;

fn read_spec(path: &Path) -> Result<ParsedSpec, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    parse_spec(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

// ---------------------------------------------------------------- validate

pub fn run_validate(path: &Path) -> CliResult {
    let parsed = read_spec(path)?;
    let mut out = String::new();
    let report = parsed.system.report();
    writeln!(out, "maps: {}", parsed.system.len()).unwrap();
    writeln!(out, "ordering_ok: {}", report.ordering_ok).unwrap();
    writeln!(out, "disjoint_open_images: {}", report.disjoint_open_images).unwrap();
    writeln!(out, "disjoint_closed_images: {}", report.disjoint_closed_images).unwrap();
    writeln!(out, "all_positive: {}", report.all_positive).unwrap();
    for (i, w) in parsed.weight_sets.iter().enumerate() {
        let rendered: Vec<String> = w.exact().iter().map(rational::format_rational).collect();
        writeln!(out, "weights[{i}]: {}", rendered.join(" ")).unwrap();
    }
    if parsed.weight_sets.len() >= 2 {
        let d = check_weight_dominance(&parsed.weight_sets[0], &parsed.weight_sets[1])?;
        writeln!(out, "weight_dominance: {d:?}").unwrap();
    }
    Ok((out, EXIT_OK))
}

// --------------------------------------------------------------- staircase

pub struct StaircaseArgs {
    pub spec: PathBuf,
    pub resolution: f64,
    pub weights_index: usize,
    pub out: Option<PathBuf>,
    pub envelope: bool,
    pub json: bool,
}

pub fn run_staircase(args: &StaircaseArgs) -> CliResult {
    let parsed = read_spec(&args.spec)?;
    let weights = parsed
        .weight_sets
        .get(args.weights_index)
        .ok_or_else(|| {
            CliError::Parse(format!(
                "spec has {} weights lines, index {} requested",
                parsed.weight_sets.len(),
                args.weights_index
            ))
        })?;
    let staircase = Staircase::build(&parsed.system, weights, args.resolution)?;

    let body = if args.json {
        staircase_json(&staircase)
    } else {
        let mut buf = Vec::new();
        staircase.write_csv(&mut buf)?;
        String::from_utf8(buf).expect("csv is utf-8")
    };

    let mut stdout = String::new();
    match &args.out {
        Some(path) => {
            write_output(path, body.as_bytes())?;
            writeln!(stdout, "wrote {}", path.display()).unwrap();
        }
        None => stdout.push_str(&body),
    }

    if args.envelope {
        let (r, p) = envelope_parameters(&parsed.system, weights).ok_or_else(|| {
            CliError::Parse(
                "envelope output requires the reflected or positive two-map family".into(),
            )
        })?;
        let csv = envelope_csv(rational::to_f64(&r), rational::to_f64(&p))?;
        match &args.out {
            Some(path) => {
                let companion = companion_path(path, "_envelope.csv");
                write_output(&companion, csv.as_bytes())?;
                writeln!(stdout, "wrote {}", companion.display()).unwrap();
            }
            None => stdout.push_str(&csv),
        }
    }
    Ok((stdout, EXIT_OK))
}

fn staircase_json(s: &Staircase) -> String {
    let cells: Vec<serde_json::Value> = s
        .cells()
        .iter()
        .map(|c| {
            serde_json::json!({
                "x_left": c.lo, "x_right": c.hi, "kind": "cell",
                "value": c.cum_left, "mass": c.mass,
            })
        })
        .collect();
    let gaps: Vec<serde_json::Value> = s
        .gaps()
        .iter()
        .map(|g| {
            serde_json::json!({
                "x_left": g.lo, "x_right": g.hi, "kind": "gap",
                "value": g.value, "mass": 0.0,
            })
        })
        .collect();
    serde_json::to_string_pretty(&serde_json::json!({
        "schema": 1,
        "resolution": s.resolution(),
        "cells": cells,
        "gaps": gaps,
    }))
    .expect("staircase serializes")
}

fn companion_path(base: &Path, suffix: &str) -> PathBuf {
    let stem = base
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "out".into());
    base.with_file_name(format!("{stem}{suffix}"))
}

/// Envelope parameters for the two recognized families: `r` from the
/// system, `p` the weight of the left map.
fn envelope_parameters(system: &IfSystem, weights: &WeightVector) -> Option<(Rational, Rational)> {
    let r = system
        .reflected_pair_ratio()
        .or_else(|| system.positive_pair_ratio())?;
    Some((r, weights.exact()[0].clone()))
}

fn envelope_csv(r: f64, p: f64) -> Result<String, CliError> {
    let mut out = String::from("x,lower,upper\n");
    let n = 1024;
    for i in 1..=n {
        let x = i as f64 / n as f64;
        let (lo, hi) = power_law_envelope(r, p, x)?;
        writeln!(out, "{x},{lo},{hi}").unwrap();
    }
    Ok(out)
}

// ---------------------------------------------------------------------- w1

pub struct W1Args {
    pub spec_a: PathBuf,
    pub spec_b: Option<PathBuf>,
    pub resolution: f64,
    pub mc: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Prefix for chaos-game sample exports (`<prefix>_a.csv`, `_b.csv`);
    /// only meaningful together with `mc`.
    pub samples_out: Option<PathBuf>,
    pub strategies: Vec<String>,
}

pub fn run_w1(args: &W1Args) -> CliResult {
    let first = read_spec(&args.spec_a)?;
    let (f, p, g, q) = match &args.spec_b {
        Some(path) => {
            let second = read_spec(path)?;
            let p = first_weights(&first, &args.spec_a)?;
            let q = first_weights(&second, path)?;
            (first.system.clone(), p, second.system, q)
        }
        None => {
            if first.weight_sets.len() < 2 {
                return Err(CliError::Parse(format!(
                    "{}: single-spec mode needs two weights lines",
                    args.spec_a.display()
                )));
            }
            (
                first.system.clone(),
                first.weight_sets[0].clone(),
                first.system.clone(),
                first.weight_sets[1].clone(),
            )
        }
    };

    let options = ReportOptions {
        resolution: args.resolution,
        monte_carlo: args.mc.map(|count| MonteCarloOptions {
            count,
            seed: args.seed,
            burn_in: 64,
        }),
        strategies: (!args.strategies.is_empty()).then(|| args.strategies.clone()),
    };
    let report = w1_report(&f, &p, &g, &q, &options)?;

    if let (Some(prefix), Some(count)) = (&args.samples_out, args.mc) {
        for (suffix, sys, w, seed) in [
            ("a", &f, &p, args.seed),
            ("b", &g, &q, args.seed.wrapping_add(1)),
        ] {
            let samples = ifs_transport::sampler::chaos_game(sys, w, count, 64, seed)?;
            let mut buf = Vec::new();
            samples.write_csv(&mut buf)?;
            let path = companion_path(prefix, &format!("_{suffix}.csv"));
            write_output(&path, &buf)?;
        }
    }

    let json = report.to_json();
    let mut stdout = String::new();
    match &args.out {
        Some(path) => {
            write_output(path, json.as_bytes())?;
            writeln!(stdout, "wrote {}", path.display()).unwrap();
        }
        None => {
            stdout.push_str(&json);
            stdout.push('\n');
        }
    }
    let code = if report.consistent { EXIT_OK } else { EXIT_FAILED_EXPECTATION };
    Ok((stdout, code))
}

fn first_weights(parsed: &ParsedSpec, path: &Path) -> Result<WeightVector, CliError> {
    parsed.weight_sets.first().cloned().ok_or_else(|| {
        CliError::Parse(format!("{}: spec needs a weights line", path.display()))
    })
}

// ---------------------------------------------------------------- examples

pub struct ExamplesArgs {
    pub id: Option<String>,
    pub out: Option<PathBuf>,
    pub resolution: f64,
    pub mc: Option<usize>,
    pub seed: u64,
}

pub struct ExampleOutcome {
    pub id: &'static str,
    pub passed: bool,
    pub summary: String,
}

pub fn run_examples(args: &ExamplesArgs) -> CliResult {
    let entries = match &args.id {
        Some(id) => {
            let entry = registry::find(id)
                .ok_or_else(|| CliError::Parse(format!("unknown example id `{id}`")))?;
            vec![entry]
        }
        None => registry::all(),
    };

    if let Some(dir) = &args.out {
        fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    }

    let mut out = String::new();
    let mut passed = 0usize;
    writeln!(out, "{:<6} {:<18} {:<6} note", "id", "expectation", "ok").unwrap();
    for entry in &entries {
        let outcome = run_example(entry, args)?;
        passed += usize::from(outcome.passed);
        writeln!(
            out,
            "{:<6} {:<18} {:<6} {}",
            outcome.id,
            expectation_label(&entry.expectation),
            if outcome.passed { "pass" } else { "FAIL" },
            outcome.summary
        )
        .unwrap();
    }
    writeln!(out, "{passed}/{} expectations met", entries.len()).unwrap();
    let code = if passed == entries.len() { EXIT_OK } else { EXIT_FAILED_EXPECTATION };
    Ok((out, code))
}

fn expectation_label(e: &Expectation) -> String {
    match e {
        Expectation::Applies { strategy } => format!("applies:{strategy}"),
        Expectation::DoesNotApply { strategy, .. } => format!("guarded:{strategy}"),
        Expectation::Bounds { .. } => "bounds".to_string(),
    }
}

pub fn run_example(
    entry: &registry::ExampleSpec,
    args: &ExamplesArgs,
) -> Result<ExampleOutcome, CliError> {
    let (f, p) = entry.first()?;

    if let Expectation::Bounds { .. } = entry.expectation {
        let staircase = Staircase::build(&f, &p, args.resolution)?;
        let (r, pe) = entry.bounds_params().expect("bounds expectation");
        let (rf, pf) = (rational::to_f64(&r), rational::to_f64(&pe));
        let mut worst: f64 = 0.0;
        let mut holds = true;
        for gap in staircase.gaps() {
            let x = 0.5 * (gap.lo + gap.hi);
            if x <= 0.0 {
                continue;
            }
            let (lo, hi) = power_law_envelope(rf, pf, x)?;
            let v = staircase.eval(x)?.lo;
            holds &= v >= lo - 1e-9 && v <= hi + 1e-9;
            worst = worst.max((lo - v).max(v - hi));
        }
        if let Some(dir) = &args.out {
            let mut buf = Vec::new();
            staircase.write_csv(&mut buf)?;
            write_output(&dir.join(format!("{}.csv", entry.id)), &buf)?;
            let csv = envelope_csv(rf, pf)?;
            write_output(&dir.join(format!("{}_envelope.csv", entry.id)), csv.as_bytes())?;
        }
        return Ok(ExampleOutcome {
            id: entry.id,
            passed: holds,
            summary: format!("gap values inside envelope (worst excess {worst:.2e})"),
        });
    }

    let (g, q) = entry
        .second()?
        .expect("paired expectation carries a second measure");
    let options = ReportOptions {
        resolution: args.resolution,
        monte_carlo: args.mc.map(|count| MonteCarloOptions {
            count,
            seed: args.seed,
            burn_in: 64,
        }),
        strategies: None,
    };
    let report = w1_report(&f, &p, &g, &q, &options)?;

    if let Some(dir) = &args.out {
        let sf = Staircase::build(&f, &p, args.resolution)?;
        let sg = Staircase::build(&g, &q, args.resolution)?;
        let mut buf = Vec::new();
        sf.write_csv(&mut buf)?;
        write_output(&dir.join(format!("{}_first.csv", entry.id)), &buf)?;
        buf.clear();
        sg.write_csv(&mut buf)?;
        write_output(&dir.join(format!("{}_second.csv", entry.id)), &buf)?;
        write_output(
            &dir.join(format!("{}_report.json", entry.id)),
            report.to_json().as_bytes(),
        )?;
    }

    Ok(check_expectation(entry, &report))
}

fn check_expectation(entry: &registry::ExampleSpec, report: &W1Report) -> ExampleOutcome {
    match &entry.expectation {
        Expectation::Applies { strategy } => {
            let found = report.closed_forms.iter().find(|e| e.name == *strategy);
            match found {
                Some(e) if e.hypotheses_held && report.consistent => ExampleOutcome {
                    id: entry.id,
                    passed: true,
                    summary: match (&e.value_exact, &e.enclosure) {
                        (Some(v), _) => format!("closed form {v}, consistent"),
                        (None, Some(enc)) => {
                            format!("closed enclosure [{}, {}], consistent", enc.lo, enc.hi)
                        }
                        _ => "applies, consistent".into(),
                    },
                },
                Some(e) => ExampleOutcome {
                    id: entry.id,
                    passed: false,
                    summary: format!(
                        "expected strategy to apply; held={}, consistent={}, violation={:?}",
                        e.hypotheses_held, report.consistent, e.violation
                    ),
                },
                None => ExampleOutcome {
                    id: entry.id,
                    passed: false,
                    summary: format!("strategy `{strategy}` missing from report"),
                },
            }
        }
        Expectation::DoesNotApply { strategy, violation } => {
            let found = report.closed_forms.iter().find(|e| e.name == *strategy);
            match found {
                Some(e) if !e.hypotheses_held
                    && e.violation.as_deref() == Some(violation.to_string().as_str()) =>
                {
                    ExampleOutcome {
                        id: entry.id,
                        passed: report.consistent,
                        summary: format!("guarded: {}", violation),
                    }
                }
                Some(e) => ExampleOutcome {
                    id: entry.id,
                    passed: false,
                    summary: format!(
                        "expected violation `{violation}`, got held={} violation={:?}",
                        e.hypotheses_held, e.violation
                    ),
                },
                None => ExampleOutcome {
                    id: entry.id,
                    passed: false,
                    summary: format!("strategy `{strategy}` missing from report"),
                },
            }
        }
        Expectation::Bounds { .. } => unreachable!("bounds handled before report"),
    }
}

// ---------------------------------------------------------------- symbolic

pub enum SymbolicArgs {
    Level { n: u32, p: Option<String> },
    Search { k: u32, n_max: u32 },
    Plateaus { r: String, m: u32, k_max: usize },
}

pub fn run_symbolic(args: &SymbolicArgs) -> CliResult {
    let mut out = String::new();
    match args {
        SymbolicArgs::Level { n, p } => {
            let level = symbolic::build_level(*n)?;
            match p {
                None => {
                    let words: Vec<String> =
                        level.words().map(|w| w.to_string()).collect();
                    writeln!(out, "{}", words.join(" ")).unwrap();
                }
                Some(p_text) => {
                    let p = parse_rational(p_text).map_err(CliError::Core)?;
                    let sums = symbolic::prefix_sums(&level, &p);
                    for (i, sum) in sums.iter().enumerate() {
                        writeln!(
                            out,
                            "{} {} {}",
                            i + 1,
                            level.word(i),
                            rational::format_rational(sum)
                        )
                        .unwrap();
                    }
                }
            }
        }
        SymbolicArgs::Search { k, n_max } => {
            let matches = symbolic::crossing_equation_search(*k, *n_max)?;
            writeln!(out, "n i value").unwrap();
            for m in &matches {
                writeln!(out, "{} {} {}", m.n, m.i, rational::format_rational(&m.value))
                    .unwrap();
            }
            writeln!(out, "{} matches (trivial full-level index excluded)", matches.len())
                .unwrap();
        }
        SymbolicArgs::Plateaus { r, m, k_max } => {
            let r = parse_rational(r).map_err(CliError::Core)?;
            if *m == 0 {
                return Err(CliError::Parse("m must be at least 1".into()));
            }
            let p = Rational::new(1.into(), (2 * *m as i64 + 1).into());
            let table = plateau_intervals(&r, &p, *k_max, false)?;
            for row in &table.rows {
                writeln!(
                    out,
                    "({}, {}, {})",
                    rational::format_rational(&row.a),
                    rational::format_rational(&row.b),
                    rational::format_rational(&row.value)
                )
                .unwrap();
            }
            writeln!(out, "limit {}", rational::format_rational(&table.limit)).unwrap();
        }
    }
    Ok((out, EXIT_OK))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_level_matches_reference_enumeration() {
        let (out, code) = run_symbolic(&SymbolicArgs::Level { n: 3, p: None }).unwrap();
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.trim(), "111 112 122 121 221 222 212 211");
    }

    #[test]
    fn symbolic_prefix_sums_render_rationals() {
        let (out, _) =
            run_symbolic(&SymbolicArgs::Level { n: 2, p: Some("1/3".into()) }).unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines, vec!["1 11 1/9", "2 12 1/3", "3 22 7/9", "4 21 1"]);
    }

    #[test]
    fn symbolic_plateaus_by_hand() {
        let (out, _) = run_symbolic(&SymbolicArgs::Plateaus {
            r: "3".into(),
            m: 1,
            k_max: 1,
        })
        .unwrap();
        let lines: Vec<&str> = out.lines().collect();
        assert_eq!(lines[0], "(7/9, 8/9, 7/9)");
        assert_eq!(lines[1], "(73/81, 74/81, 67/81)");
        assert_eq!(lines[2], "limit 9/10");
    }

    #[test]
    fn symbolic_search_reports_matches() {
        let (out, _) = run_symbolic(&SymbolicArgs::Search { k: 1, n_max: 2 }).unwrap();
        assert!(out.contains("2 3 7/9"));
    }

    #[test]
    fn symbolic_range_errors() {
        assert!(run_symbolic(&SymbolicArgs::Level { n: 0, p: None }).is_err());
        assert!(run_symbolic(&SymbolicArgs::Search { k: 1, n_max: 30 }).is_err());
        assert!(run_symbolic(&SymbolicArgs::Plateaus { r: "2".into(), m: 1, k_max: 2 })
            .is_err());
    }
}
