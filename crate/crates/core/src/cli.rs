//! The `numerosity` command line.
//!
//! Reports are `key: value` lines, or one JSON object with the same keys
//! under `--json`. Exit status is 0 on success, 1 for domain errors and
//! failed checks, 2 for usage and parse errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::dsl::{parse_and_elaborate, render, DslError};
use crate::estimate::{estimate, EstimateConfig};
use crate::events::{Event, FiniteSpace, GroundModel};
use crate::measures::{
    finite_oracle, parse_space_file, FiniteMeasure, MeasureSpace, DEFAULT_ORACLE_BOUND,
};
use crate::nafield::{NaValue, Rational, DEFAULT_ORDER};
use crate::numerosity::NumerosityContext;
use crate::selftest::run_suites;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    Coin,
    Interval,
    Finite,
}

#[derive(Debug, Parser)]
#[command(name = "numerosity", version, about = "Exact numerosities, probabilities and measures of events")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "coin", global = true)]
    pub model: ModelArg,
    /// Number of terms kept by non-exact divisions.
    #[arg(long, default_value_t = DEFAULT_ORDER as u64, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    pub order: u64,
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..), global = true)]
    pub samples: u64,
    #[arg(long, default_value_t = 64, global = true)]
    pub horizon: u32,
    /// Finite measure space file (finite model).
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Numerosity, probability and measures of an event.
    Eval { expr: String },
    /// Probability of an event, optionally conditional on another.
    Prob {
        expr: String,
        #[arg(long)]
        given: Option<String>,
    },
    /// Compares the numerosities of two events.
    Compare { left: String, right: String },
    /// Monte Carlo estimate of a coin-event probability.
    Estimate { expr: String },
    /// Exhaustive finite-space checks and randomized property suites.
    Oracle {
        /// Cases per property suite.
        #[arg(long, default_value_t = 200)]
        cases: usize,
        /// Largest universe the exhaustive checks accept.
        #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
        bound: usize,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Domain(m) => m,
        }
    }
}

fn domain(e: impl std::fmt::Display) -> Failure {
    Failure::Domain(e.to_string())
}

struct Report {
    fields: Map<String, Value>,
    passed: bool,
}

impl Report {
    fn new() -> Self {
        Report {
            fields: Map::new(),
            passed: true,
        }
    }

    fn text(&mut self, key: &str, value: impl ToString) {
        self.fields.insert(key.into(), Value::String(value.to_string()));
    }

    fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.fields.insert(key.into(), value.into());
    }

    fn write(&self, json: bool, out: &mut dyn Write) -> std::io::Result<()> {
        if json {
            let text = serde_json::to_string_pretty(&self.fields).expect("plain values");
            return writeln!(out, "{text}");
        }
        for (k, v) in &self.fields {
            match v {
                Value::String(s) => writeln!(out, "{k}: {s}")?,
                other => writeln!(out, "{k}: {other}")?,
            }
        }
        Ok(())
    }
}

struct Session {
    model: GroundModel,
    measure: MeasureSpace,
    ctx: NumerosityContext,
    cli_order: usize,
}

impl Session {
    fn open(cli: &Cli) -> Result<Self, Failure> {
        let (model, measure) = match (cli.model, &cli.spec) {
            (ModelArg::Coin, None) => (GroundModel::Coin, MeasureSpace::Kolmogorov),
            (ModelArg::Interval, None) => (GroundModel::Interval, MeasureSpace::Lebesgue),
            (ModelArg::Finite, Some(path)) => {
                let m = load_spec(path)?;
                (GroundModel::Finite(m.space().clone()), MeasureSpace::Finite(m))
            }
            (ModelArg::Finite, None) => {
                return Err(Failure::Usage("the finite model needs --spec PATH".into()))
            }
            (_, Some(_)) => {
                return Err(Failure::Usage("--spec applies to the finite model only".into()))
            }
        };
        let ctx = NumerosityContext::for_model(&model)
            .with_order(cli.order as usize)
            .map_err(domain)?;
        Ok(Session {
            model,
            measure,
            ctx,
            cli_order: cli.order as usize,
        })
    }

    fn parse(&self, src: &str) -> Result<Event, Failure> {
        parse_and_elaborate(src, &self.model).map_err(|e| Failure::Usage(diagnostic(src, &e)))
    }

    fn numerosity(&self, e: &Event) -> Result<NaValue, Failure> {
        self.ctx.numerosity(e).map_err(domain)
    }

    fn measures(&self, e: &Event, report: &mut Report) -> Result<(), Failure> {
        match self.measure.measure(e).map_err(domain)? {
            Some(m) => report.text("measure", m),
            None => report.text("measure", "undefined (not in the algebra)"),
        }
        let outer = self.measure.outer_measure(e).map_err(domain)?;
        match self.measure.numerosity_context() {
            Ok(ctx) => {
                let inner = self
                    .measure
                    .inner_measure(&ctx.with_order(self.cli_order).map_err(domain)?, e)
                    .map_err(domain)?;
                report.text("inner_measure", inner);
            }
            Err(_) => report.text("inner_measure", "undefined (trivial measure)"),
        }
        report.text("outer_measure", outer);
        Ok(())
    }
}

fn load_spec(path: &PathBuf) -> Result<FiniteMeasure, Failure> {
    let src = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_space_file(&src).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn diagnostic(src: &str, e: &DslError) -> String {
    let pos = e.position();
    let line = src.lines().nth(pos.line.saturating_sub(1)).unwrap_or("");
    let caret = " ".repeat(pos.column.saturating_sub(1));
    format!("{e}\n  {line}\n  {caret}^")
}

fn eval(s: &Session, expr: &str) -> Result<Report, Failure> {
    let e = s.parse(expr)?;
    let mut r = Report::new();
    r.text("model", s.model.kind());
    r.text("event", render(&e));
    r.text("numerosity", s.numerosity(&e)?);
    if let GroundModel::Coin = s.model {
        let p = s.ctx.probability(&e).map_err(domain)?;
        r.text("probability", &p);
        r.put("exact", true);
        r.text("standard_part", p.standard_part());
    }
    s.measures(&e, &mut r)?;
    Ok(r)
}

fn prob(s: &Session, expr: &str, given: Option<&str>) -> Result<Report, Failure> {
    let e = s.parse(expr)?;
    let mut r = Report::new();
    r.text("model", s.model.kind());
    r.text("event", render(&e));
    let condition = match given {
        Some(g) => Some(s.parse(g)?),
        None => None,
    };
    match condition {
        None => {
            let p = s.ctx.probability(&e).map_err(domain)?;
            r.text("probability", &p);
            r.put("exact", true);
            r.text("standard_part", p.standard_part());
        }
        Some(f) => {
            r.text("given", render(&f));
            conditional(s, &e, &f, &mut r)?;
        }
    }
    Ok(r)
}

fn conditional(s: &Session, e: &Event, f: &Event, r: &mut Report) -> Result<(), Failure> {
    let q = s.ctx.conditional(e, f).map_err(domain)?;
    let joint = e.intersect(f).map_err(domain)?;
    let nf = s.numerosity(f)?;
    let st = s.ctx.nbeta(&joint, &nf).map_err(domain)?;
    r.text("probability", &q.value);
    r.put("exact", q.exact);
    r.text("standard_part", st);
    Ok(())
}

fn compare(s: &Session, left: &str, right: &str) -> Result<Report, Failure> {
    let (a, b) = (s.parse(left)?, s.parse(right)?);
    let (na, nb) = (s.numerosity(&a)?, s.numerosity(&b)?);
    let mut r = Report::new();
    r.text("model", s.model.kind());
    r.text("left", render(&a));
    r.text("right", render(&b));
    r.text("numerosity_left", &na);
    r.text("numerosity_right", &nb);
    r.text("difference", &na - &nb);
    r.text(
        "order",
        match na.cmp(&nb) {
            std::cmp::Ordering::Less => "less",
            std::cmp::Ordering::Equal => "equal",
            std::cmp::Ordering::Greater => "greater",
        },
    );
    let ab = a.is_subset(&b).map_err(domain)?;
    let ba = b.is_subset(&a).map_err(domain)?;
    r.text(
        "inclusion",
        match (ab, ba) {
            (true, true) => "equal",
            (true, false) => "left is a proper subset",
            (false, true) => "right is a proper subset",
            (false, false) => "incomparable",
        },
    );
    r.put("disjoint", a.is_disjoint(&b).map_err(domain)?);
    r.text("standard_ratio", na.standard_part_of_ratio(&nb).map_err(domain)?);
    Ok(r)
}

fn run_estimate(s: &Session, cli: &Cli, expr: &str) -> Result<Report, Failure> {
    let e = s.parse(expr)?;
    let Event::Coin(c) = &e else {
        return Err(Failure::Domain("estimate needs the coin model".into()));
    };
    let config = EstimateConfig {
        seed: cli.seed,
        samples: cli.samples,
        horizon: cli.horizon,
    };
    let est = estimate(c, &config).map_err(domain)?;
    let mut r = Report::new();
    r.text("event", render(&e));
    r.put("seed", cli.seed);
    r.put("samples", est.samples);
    r.put("horizon", cli.horizon);
    r.put("hits", est.hits);
    r.put("ambiguous", est.ambiguous);
    r.text("frequency", format!("{:.6}", est.frequency));
    r.text("standard_part", &est.standard_part);
    r.text("gap", format!("{:.6}", est.gap));
    r.text("half_width", format!("{:.6}", est.half_width));
    r.put("within_bound", est.within_bound());
    Ok(r)
}

fn builtin_measures() -> Vec<(&'static str, FiniteMeasure)> {
    let space = |labels: &[&str]| FiniteSpace::new(labels.iter().copied()).expect("labels");
    let four = space(&["a", "b", "c", "d"]);
    let half = Rational::new(1.into(), 2.into());
    vec![
        ("counting-4", FiniteMeasure::counting(four.clone())),
        (
            "trivial-algebra-4",
            FiniteMeasure::from_generators(four.clone(), &[], vec![(four.full_mask(), Rational::from_integer(1.into()))])
                .expect("valid"),
        ),
        (
            "halves-4",
            FiniteMeasure::from_generators(
                four.clone(),
                &[0b0011],
                vec![(0b0011, half.clone()), (0b1100, half)],
            )
            .expect("valid"),
        ),
        (
            "zero-2",
            FiniteMeasure::from_generators(space(&["a", "b"]), &[], vec![(0b11, Rational::from_integer(0.into()))])
                .expect("valid"),
        ),
    ]
}

fn oracle(cli: &Cli, cases: usize, bound: usize) -> Result<Report, Failure> {
    let measures = match (&cli.spec, cli.model) {
        (Some(path), ModelArg::Finite) => vec![("spec", load_spec(path)?)],
        (Some(_), _) => return Err(Failure::Usage("--spec applies to the finite model only".into())),
        (None, _) => builtin_measures(),
    };
    let mut r = Report::new();
    for (name, m) in &measures {
        let report = finite_oracle(m, bound).map_err(domain)?;
        r.passed &= report.passed();
        r.put(&format!("{name}.universe"), report.universe);
        r.put(&format!("{name}.algebra_size"), report.algebra_size);
        r.put(&format!("{name}.caratheodory_size"), report.caratheodory.len());
        if let Some(gaps) = report.strict_gaps {
            r.put(&format!("{name}.strict_gaps"), gaps);
        }
        for c in &report.checks {
            let text = c.to_string();
            let value = text.split_once(": ").map(|x| x.1).unwrap_or("");
            r.text(&format!("{name}.{}", c.name), value);
        }
    }
    for suite in run_suites(cli.seed, cases) {
        r.passed &= suite.passed();
        let text = suite.to_string();
        let value = text.split_once(": ").map(|x| x.1).unwrap_or("");
        r.text(&format!("suite.{}", suite.name), value);
    }
    r.put("passed", r.passed);
    Ok(r)
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    if let Command::Oracle { cases, bound } = &cli.command {
        return oracle(cli, *cases, *bound);
    }
    let s = Session::open(cli)?;
    match &cli.command {
        Command::Eval { expr } => eval(&s, expr),
        Command::Prob { expr, given } => prob(&s, expr, given.as_deref()),
        Command::Compare { left, right } => compare(&s, left, right),
        Command::Estimate { expr } => run_estimate(&s, cli, expr),
        Command::Oracle { .. } => unreachable!(),
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if report.write(cli.json, out).is_err() {
                return 1;
            }
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
