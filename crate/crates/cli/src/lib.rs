//! The `richfan` command line front end.
//!
//! Exit codes: 0 success (or the checked property holds), 1 domain error,
//! 2 malformed input or usage, 3 the checked property fails. Domain errors
//! are reported on standard error as `{"error": code, "message": text}`.

pub mod cross_section;

use clap::{Parser, ValueEnum};
use cross_section::CrossSection;
use richfan::json;
use richfan::subdivision::{factors_through, richness_ideal, smoothness_report, weakly_rich_fan};
use richfan::{Error, Fan, Level, TropicalGraph};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_MALFORMED: i32 = 2;
pub const EXIT_FALSE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    /// List the cuts of a graph.
    Cuts,
    /// List the circuit components of a graph.
    Blocks,
    /// Contract the edges given by --contract.
    Contract,
    /// Check that a curve is r-rich.
    CheckRich,
    /// Check that a curve or a family is weakly r-rich.
    CheckWeaklyRich,
    /// Factor an r-rich curve through its circuit components.
    BasicModel,
    /// The richness ideal of a graph.
    Ideal,
    /// The weakly rich subdivision of a graph.
    Subdivide,
    /// Check the fan axioms and completeness on the orthant.
    VerifyFan,
    /// Unimodularity of every maximal cone of a fan (or of a graph's subdivision).
    Smoothness,
    /// Check that a family factors through a fan (default: its weakly rich subdivision).
    Factors,
    /// Draw a rank 3 fan (or a graph's subdivision) on the triangle x1 + x2 + x3 = 1.
    CrossSection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "richfan", version, about = "Richness conditions and weakly rich subdivisions of tropical curves")]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Input JSON file.
    pub input: PathBuf,
    /// Level r: a positive integer, or `inf` where allowed.
    #[arg(long, default_value = "1")]
    pub r: String,
    /// Comma separated edge ids to contract first.
    #[arg(long, value_delimiter = ',')]
    pub contract: Vec<String>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Fan JSON for `factors`.
    #[arg(long)]
    pub fan: Option<PathBuf>,
}

#[derive(Debug)]
enum Failure {
    Malformed(String),
    Domain(Error),
    Output(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Malformed(m) => Failure::Malformed(m),
            Error::InvalidLevel(m) => Failure::Malformed(format!("invalid r: {m}")),
            e => Failure::Domain(e),
        }
    }
}

/// A rendered result and, for checks, whether the property holds.
struct Output {
    text: String,
    holds: Option<bool>,
}

impl Output {
    fn value(v: Value) -> Self {
        Output { text: json::render(&v), holds: None }
    }

    fn check(v: Value, holds: bool) -> Self {
        Output { text: json::render(&v), holds: Some(holds) }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cmd = match Command::try_parse_from(args) {
        Ok(cmd) => cmd,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MALFORMED } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let pool = match thread_pool() {
        Ok(p) => p,
        Err(msg) => return report(Failure::Malformed(msg)),
    };
    match pool.install(|| execute(&cmd)) {
        Ok(out) => match emit(&cmd, &out.text) {
            Ok(()) => match out.holds {
                Some(false) => EXIT_FALSE,
                _ => EXIT_OK,
            },
            Err(msg) => report(Failure::Output(msg)),
        },
        Err(f) => report(f),
    }
}

fn thread_pool() -> Result<rayon::ThreadPool, String> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("RICHFAN_THREADS") {
        let n: usize =
            v.trim().parse().ok().filter(|&n| n > 0).ok_or(format!("RICHFAN_THREADS={v} is not a positive integer"))?;
        builder = builder.num_threads(n);
    }
    builder.build().map_err(|e| e.to_string())
}

fn report(f: Failure) -> i32 {
    let (code, value) = match f {
        Failure::Malformed(m) => (EXIT_MALFORMED, json!({"error": "Malformed", "message": m})),
        Failure::Domain(e) => (EXIT_DOMAIN, json!({"error": e.code(), "message": e.to_string()})),
        Failure::Output(m) => (EXIT_DOMAIN, json!({"error": "Output", "message": m})),
    };
    eprint!("{}", json::render(&value));
    code
}

fn emit(cmd: &Command, text: &str) -> Result<(), String> {
    match &cmd.out {
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
        Some(path) => write_atomically(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
    }
}

fn write_atomically(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(text.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Malformed(format!("cannot read {}: {e}", path.display())))?;
    Ok(json::parse(&text)?)
}

fn level(cmd: &Command) -> Result<Level, Failure> {
    Ok(cmd.r.parse::<Level>()?)
}

fn finite_level(cmd: &Command) -> Result<u64, Failure> {
    level(cmd)?.finite().ok_or_else(|| Failure::Malformed(format!("verb needs a finite r, got `{}`", cmd.r)))
}

fn graph(cmd: &Command, v: &Value) -> Result<TropicalGraph, Failure> {
    let g = json::graph_from_json(v)?;
    Ok(if cmd.contract.is_empty() { g } else { g.contract_ids(&cmd.contract)? })
}

fn no_contraction(cmd: &Command) -> Result<(), Failure> {
    if cmd.contract.is_empty() {
        Ok(())
    } else {
        Err(Failure::Malformed(format!("--contract is not supported by `{:?}`", cmd.verb)))
    }
}

/// A fan given directly, or the weakly rich subdivision of a graph.
fn fan_or_subdivision(cmd: &Command, v: &Value) -> Result<Fan, Failure> {
    if v.get("cones").is_some() {
        no_contraction(cmd)?;
        let fan = json::fan_from_json(v)?;
        fan.validate()?;
        Ok(fan)
    } else {
        Ok(weakly_rich_fan(&graph(cmd, v)?, finite_level(cmd)?)?)
    }
}

fn execute(cmd: &Command) -> Result<Output, Failure> {
    let input = read_json(&cmd.input)?;
    if cmd.format == Some(Format::Svg) && cmd.verb != Verb::CrossSection {
        return Err(Failure::Malformed("svg output is only available for cross-section".into()));
    }
    let r_text = cmd.r.trim().to_string();
    match cmd.verb {
        Verb::Cuts => {
            let g = graph(cmd, &input)?;
            Ok(Output::value(json::cuts_to_json(&g, &g.enumerate_cuts())))
        }
        Verb::Blocks => {
            let g = graph(cmd, &input)?;
            Ok(Output::value(json::components_to_json(&g, &g.circuit_components())))
        }
        Verb::Contract => Ok(Output::value(json::graph_to_json(&graph(cmd, &input)?))),
        Verb::CheckRich => {
            no_contraction(cmd)?;
            let curve = json::curve_from_json(&input)?;
            let holds = curve.is_r_rich(level(cmd)?)?;
            Ok(Output::check(json!({"property": "rich", "r": r_text, "holds": holds}), holds))
        }
        Verb::CheckWeaklyRich => {
            no_contraction(cmd)?;
            let r = finite_level(cmd)?;
            let holds = if input.get("sigma_rays").is_some() {
                json::family_from_json(&input)?.is_weakly_r_rich(r)?
            } else {
                json::curve_from_json(&input)?.is_weakly_r_rich(r)?
            };
            Ok(Output::check(json!({"property": "weakly-rich", "r": r_text, "holds": holds}), holds))
        }
        Verb::BasicModel => {
            no_contraction(cmd)?;
            let curve = json::curve_from_json(&input)?;
            let model = curve.basic_model(level(cmd)?)?;
            Ok(Output::value(json::basic_model_to_json(curve.graph(), &model)))
        }
        Verb::Ideal => {
            let g = graph(cmd, &input)?;
            Ok(Output::value(json::ideal_to_json(&richness_ideal(&g, finite_level(cmd)?)?)))
        }
        Verb::Subdivide => {
            let g = graph(cmd, &input)?;
            Ok(Output::value(json::fan_to_json(&weakly_rich_fan(&g, finite_level(cmd)?)?)))
        }
        Verb::VerifyFan => {
            no_contraction(cmd)?;
            let fan = json::fan_from_json(&input)?;
            fan.validate()?;
            let complete = fan.is_complete_on_orthant()?;
            Ok(Output::check(json!({"property": "complete", "holds": complete}), complete))
        }
        Verb::Smoothness => {
            let fan = fan_or_subdivision(cmd, &input)?;
            let report = smoothness_report(&fan);
            Ok(Output::check(json::smoothness_to_json(&fan, &report), report.smooth))
        }
        Verb::Factors => {
            no_contraction(cmd)?;
            let family = json::family_from_json(&input)?;
            let fan = match &cmd.fan {
                Some(path) => {
                    let fan = json::fan_from_json(&read_json(path)?)?;
                    fan.validate()?;
                    fan
                }
                None => weakly_rich_fan(family.graph(), finite_level(cmd)?)?,
            };
            let holds = factors_through(&family, &fan)?;
            Ok(Output::check(json!({"property": "factors", "holds": holds}), holds))
        }
        Verb::CrossSection => {
            let section = CrossSection::new(&fan_or_subdivision(cmd, &input)?)?;
            Ok(match cmd.format.unwrap_or(Format::Svg) {
                Format::Svg => Output { text: section.to_svg(), holds: None },
                Format::Json => Output::value(section.to_json()),
            })
        }
    }
}
