//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a mathematical check fails, 2 on input errors
//! (including exceeding `CCKIT_MAX_TERMS`).

use std::ffi::OsString;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::algebra::{set_term_limit, Chart, TermLimitExceeded};
use crate::catalog::get_example;
use crate::error::{Error, Result};
use crate::exterior::{exterior_derivative, schouten};
use crate::io::{alternating_to_spec, PairFile, PairSpec, StructureFile};
use crate::report::{ConditionReport, Residual};
use crate::structures::{
    classify, dualize, regularity_density, verify_contravariant_identities, verify_duality, CovariantPair, DualPair,
    StructureClass,
};
use crate::suite::{run_suite, SuiteConfig};
use crate::symmetries::{
    canonical_pair, check_generator_conditions, check_symmetry_direct, pair_bracket, pair_to_vector,
    theorem_equivalence_check, SymmetryTarget,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

pub const TERM_LIMIT_ENV: &str = "CCKIT_MAX_TERMS";

#[derive(Parser, Debug)]
#[command(name = "cckit", version, about = "Exact certification of almost-cosymplectic-contact structures and their symmetries")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Source {
    /// Structure file (JSON)
    #[arg(short = 's', long = "structure")]
    structure: Option<PathBuf>,
    /// Built-in example name
    #[arg(short = 'e', long = "example")]
    example: Option<String>,
}

#[derive(Args, Debug)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structure class and regularity density
    Classify(Common),
    /// Dual pair (E, Lambda) with its duality certificate
    Dualize(Common),
    /// Duality conditions and the contravariant identities
    Verify(Common),
    /// Bracket of two generator pairs and its compatibility with the vector-field bracket
    Bracket {
        #[command(flatten)]
        common: Common,
        /// Pair file holding two pairs
        #[arg(short = 'p', long = "pairs")]
        pairs: PathBuf,
    },
    /// Generator conditions for a symmetry target, cross-checked against Lie derivatives
    Symmetry {
        #[command(flatten)]
        common: Common,
        /// Pair file holding one or more pairs
        #[arg(short = 'p', long = "pairs")]
        pairs: PathBuf,
        /// omega, Omega, E, Lambda, cov_pair, contra_pair, E_Omega, Lambda_Omega, E_omega, Lambda_omega
        #[arg(short = 't', long = "target")]
        target: SymmetryTarget,
    },
    /// Randomized exact identity suite
    Suite {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A parsed structure and the chart used to print it.
#[derive(Clone, Debug)]
pub struct Structure {
    pub chart: Chart,
    pub cov: CovariantPair,
}

impl Structure {
    pub fn from_json(text: &str) -> Result<Self> {
        let (chart, cov) = StructureFile::from_json(text)?.to_structure()?;
        Ok(Structure { chart, cov })
    }

    pub fn from_example(name: &str) -> Result<Self> {
        let e = get_example(name)?;
        Ok(Structure { chart: e.chart, cov: e.cov })
    }
}

/// One command, with pair files given by their contents.
#[derive(Clone, Debug)]
pub enum Request<'a> {
    Classify,
    Dualize,
    Verify,
    Bracket { pairs_json: &'a str },
    Symmetry { pairs_json: &'a str, target: SymmetryTarget },
    Suite(SuiteConfig),
}

/// The machine-readable report of a command and its exit code.
#[derive(Clone, Debug)]
pub struct Response {
    pub json: Value,
    pub exit_code: i32,
}

/// Evaluates a request without touching the filesystem.
pub fn evaluate(s: &Structure, request: &Request<'_>) -> Result<Response> {
    let o = outcome(s, request)?;
    Ok(Response { json: o.to_json(s.chart.names()), exit_code: o.exit_code() })
}

fn outcome(l: &Structure, request: &Request<'_>) -> Result<Outcome> {
    Ok(match request {
        Request::Classify => classify_cmd(l),
        Request::Dualize => dualize_cmd(l),
        Request::Verify => verify_cmd(l),
        Request::Bracket { pairs_json } => bracket_cmd(l, pairs_json)?,
        Request::Symmetry { pairs_json, target } => symmetry_cmd(l, pairs_json, *target)?,
        Request::Suite(config) => suite_cmd(l, *config),
    })
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse { pos: 0, msg: format!("cannot read {}: {e}", path.display()) })
}

fn load(source: &Source) -> Result<Structure> {
    match (&source.example, &source.structure) {
        (Some(name), _) => Structure::from_example(name),
        (None, Some(path)) => Structure::from_json(&read(path)?),
        (None, None) => Err(Error::Parse { pos: 0, msg: "a structure file or example is required".into() }),
    }
}

fn parse_pairs(text: &str, chart: &Chart) -> Result<Vec<crate::symmetries::GeneratorPair>> {
    PairFile::from_json(text)?.to_pairs(chart)
}

/// Reports plus an optional payload, rendered as text or JSON.
struct Outcome {
    command: &'static str,
    lines: Vec<String>,
    payload: Value,
    reports: Vec<ConditionReport>,
    /// Print only report headers and failing entries in text mode.
    compact: bool,
}

impl Outcome {
    fn new(command: &'static str) -> Self {
        Outcome { command, lines: Vec::new(), payload: json!({}), reports: Vec::new(), compact: false }
    }

    fn pass(&self) -> bool {
        self.reports.iter().all(ConditionReport::pass)
    }

    fn exit_code(&self) -> i32 {
        if self.pass() {
            EXIT_PASS
        } else {
            EXIT_CHECK_FAILED
        }
    }

    fn to_json(&self, names: &[String]) -> Value {
        json!({
            "command": self.command,
            "pass": self.pass(),
            "result": self.payload,
            "reports": self.reports.iter().map(|r| r.to_json(names)).collect::<Vec<_>>(),
        })
    }

    fn write(&self, out: &mut dyn Write, chart: &Chart, as_json: bool) -> std::io::Result<()> {
        let names = chart.names();
        if as_json {
            writeln!(out, "{}", serde_json::to_string_pretty(&self.to_json(names)).expect("JSON value serializes"))
        } else {
            for l in &self.lines {
                writeln!(out, "{l}")?;
            }
            for r in &self.reports {
                if self.compact {
                    let mut failing = r.clone();
                    failing.entries.retain(|e| !e.pass);
                    let status = if r.pass() { "PASS" } else { "FAIL" };
                    writeln!(out, "{}: {status} ({} checks)", r.title, r.entries.len())?;
                    for e in &failing.entries {
                        writeln!(out, "  FAIL {}\n       residual = {}", e.label, e.residual.render(names))?;
                    }
                } else {
                    write!(out, "{}", r.display_with(names))?;
                }
            }
            Ok(())
        }
    }
}

fn structure_report(cov: &CovariantPair) -> ConditionReport {
    let mut r = ConditionReport::new("structure");
    let density = regularity_density(cov);
    r.push_verdict("omega ^ Omega^n != 0", !density.is_zero(), "");
    r.push("d Omega = 0", Residual::Form(exterior_derivative(cov.two_form())));
    r
}

fn dual_pair(l: &Structure) -> Result<DualPair> {
    let dp = DualPair::new(l.cov.clone())?;
    if !dp.class().is_almost_cosymplectic_contact() {
        return Err(Error::NotAlmostCosymplecticContact);
    }
    Ok(dp)
}

fn classify_cmd(l: &Structure) -> Outcome {
    let mut o = Outcome::new("classify");
    let class = classify(&l.cov);
    let density = l.chart.show(&regularity_density(&l.cov));
    o.lines.push(format!("{class}, density = {density}"));
    o.payload = json!({ "class": class, "density": density });
    o
}

fn dualize_cmd(l: &Structure) -> Outcome {
    let mut o = Outcome::new("dualize");
    let (con, cert) = match dualize(&l.cov).and_then(|con| Ok((verify_duality(&l.cov, &con)?, con))) {
        Ok((cert, con)) => (con, cert),
        Err(e) => {
            o.lines.push(format!("no dual pair: {e}"));
            let mut r = ConditionReport::new("duality");
            r.push_verdict("dual pair exists", false, e.to_string());
            o.reports.push(r);
            return o;
        }
    };
    let names = l.chart.names();
    o.lines.push(format!("E = {}", con.reeb().display_with(names)));
    o.lines.push(format!("Lambda = {}", con.lambda().display_with(names)));
    o.payload = json!({
        "E": alternating_to_spec(con.reeb(), &l.chart),
        "Lambda": alternating_to_spec(con.lambda(), &l.chart),
        "density": l.chart.show(&cert.density),
    });
    o.reports.push(cert.to_report());
    o
}

fn verify_cmd(l: &Structure) -> Outcome {
    let mut o = Outcome::new("verify");
    let class = classify(&l.cov);
    o.lines.push(format!("class: {class}"));
    o.payload = json!({ "class": class });
    o.reports.push(structure_report(&l.cov));
    if class == StructureClass::NotRegular {
        return o;
    }
    match dualize(&l.cov).and_then(|con| Ok((verify_duality(&l.cov, &con)?, con))) {
        Ok((cert, con)) => {
            o.reports.push(cert.to_report());
            if let Ok(dp) = DualPair::from_parts(l.cov.clone(), con) {
                o.reports.push(verify_contravariant_identities(&dp).expect("dual pair on one chart"));
            }
        }
        Err(e) => {
            let mut r = ConditionReport::new("duality");
            r.push_verdict("dual pair exists", false, e.to_string());
            o.reports.push(r);
        }
    }
    o
}

fn bracket_cmd(l: &Structure, pairs: &str) -> Result<Outcome> {
    let gs = parse_pairs(pairs, &l.chart)?;
    if gs.len() != 2 {
        return Err(Error::Parse { pos: 0, msg: format!("bracket needs exactly two pairs, got {}", gs.len()) });
    }
    let dp = dual_pair(l)?;
    let b = pair_bracket(&dp, &gs[0], &gs[1])?;
    let vf = schouten(&pair_to_vector(&dp, &gs[0]), &pair_to_vector(&dp, &gs[1]))?;
    let mut o = Outcome::new("bracket");
    let names = l.chart.names();
    o.lines.push(format!("alpha = {}", b.alpha.display_with(names)));
    o.lines.push(format!("h = {}", l.chart.show(&b.h)));
    o.payload = serde_json::to_value(PairSpec::from_pair(&b, &l.chart)).expect("pair serializes");
    let mut r = ConditionReport::new("compatibility");
    r.push("X_[[g1;g2]] = [X_g1, X_g2]", Residual::Multivector(&pair_to_vector(&dp, &b) - &vf));
    o.reports.push(r);
    Ok(o)
}

fn symmetry_cmd(l: &Structure, pairs: &str, target: SymmetryTarget) -> Result<Outcome> {
    let gs = parse_pairs(pairs, &l.chart)?;
    let dp = dual_pair(l)?;
    let mut o = Outcome::new("symmetry");
    let mut verdicts = Vec::new();
    for (k, g) in gs.iter().enumerate() {
        let mut conditions = check_generator_conditions(&dp, g, target);
        conditions.title = format!("pair {}: generator conditions", k + 1);
        let x = pair_to_vector(&dp, g);
        let mut direct = check_symmetry_direct(&dp, &x, target);
        direct.title = format!("pair {}: direct Lie derivatives", k + 1);
        let rep = if target.requires_kernel_representative() { canonical_pair(&dp, g) } else { g.clone() };
        let by_conditions = check_generator_conditions(&dp, &rep, target).pass();
        let mut cross = ConditionReport::for_target(format!("pair {}: cross-check", k + 1), target);
        cross.push_verdict(
            "generator conditions agree with direct Lie derivatives",
            by_conditions == direct.pass(),
            format!("conditions {by_conditions}, direct {}", direct.pass()),
        );
        if target.is_pair() {
            let eq = theorem_equivalence_check(&dp, g)?;
            cross.absorb("", eq.report);
        }
        let verdict = conditions.pass();
        o.lines.push(format!("pair {}: {}", k + 1, if verdict { "generator" } else { "not a generator" }));
        verdicts.push(json!({ "pair": k + 1, "generator": verdict, "symmetry": direct.pass() }));
        o.reports.extend([conditions, direct, cross]);
    }
    o.payload = json!({ "target": target.as_str(), "pairs": verdicts });
    Ok(o)
}

fn suite_cmd(l: &Structure, config: SuiteConfig) -> Outcome {
    let mut o = Outcome::new("suite");
    let report = run_suite(&l.cov, config);
    if let Some(reason) = &report.skipped {
        o.lines.push(format!("structure checks skipped: {reason}"));
    }
    o.lines.push(format!(
        "{} sections, {} checks, seed {}: {}",
        report.sections.len(),
        report.checks(),
        config.seed,
        if report.pass() { "all pass" } else { "FAILURES" }
    ));
    o.payload = json!({
        "trials": config.trials,
        "degree": config.degree,
        "seed": config.seed,
        "checks": report.checks(),
        "skipped": report.skipped,
    });
    o.reports = report.sections;
    o.compact = true;
    o
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    let common = match &cli.command {
        Command::Classify(c) | Command::Dualize(c) | Command::Verify(c) => c,
        Command::Bracket { common, .. } | Command::Symmetry { common, .. } | Command::Suite { common, .. } => common,
    };
    let l = load(&common.source)?;
    let pairs_text = match &cli.command {
        Command::Bracket { pairs, .. } | Command::Symmetry { pairs, .. } => read(pairs)?,
        _ => String::new(),
    };
    let request = match &cli.command {
        Command::Classify(_) => Request::Classify,
        Command::Dualize(_) => Request::Dualize,
        Command::Verify(_) => Request::Verify,
        Command::Bracket { .. } => Request::Bracket { pairs_json: &pairs_text },
        Command::Symmetry { target, .. } => Request::Symmetry { pairs_json: &pairs_text, target: *target },
        Command::Suite { trials, degree, seed, .. } => {
            Request::Suite(SuiteConfig { trials: *trials, degree: *degree, seed: *seed })
        }
    };
    let o = outcome(&l, &request)?;
    o.write(out, &l.chart, common.json).map_err(|e| Error::Internal(e.to_string()))?;
    Ok(o.exit_code())
}

fn apply_term_limit() -> Result<()> {
    match std::env::var(TERM_LIMIT_ENV) {
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse { pos: 0, msg: format!("{TERM_LIMIT_ENV} must be a positive integer") })?;
            set_term_limit(n);
            Ok(())
        }
        Err(_) => Ok(()),
    }
}

/// Runs the command line `argv` (including the program name), writing the report to `out`
/// and diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            write!(sink, "{}", e.render()).ok();
            return code;
        }
    };
    if let Err(e) = apply_term_limit() {
        writeln!(err, "error: {e}").ok();
        return EXIT_INPUT;
    }
    match panic::catch_unwind(AssertUnwindSafe(|| execute(cli, out))) {
        Ok(Ok(code)) => code,
        Ok(Err(e)) => {
            writeln!(err, "error: {e}").ok();
            EXIT_INPUT
        }
        Err(payload) => match payload.downcast::<TermLimitExceeded>() {
            Ok(t) => {
                writeln!(err, "error: {t} (raise {TERM_LIMIT_ENV} to allow larger expressions)").ok();
                EXIT_INPUT
            }
            Err(other) => panic::resume_unwind(other),
        },
    }
}
