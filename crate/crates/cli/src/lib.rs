//! Argument parsing, configuration and dispatch for the `convring` binary.
//!
//! Every computation is delegated to the library; this crate only parses
//! inputs, picks an output format and maps errors to exit codes.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use convring::action::sorted_strings;
use convring::blowup::{BlowupAlgebra, Flavor};
use convring::centralizer::{kernel_of_map, model, ModelName};
use convring::fusion::{entries_to_csv, entry_to_json, fusion_sweep, fusion_table, FusionKind, FusionParams};
use convring::groebner::GbLimits;
use convring::json::poly_to_json;
use convring::kring::{KRing, Presentation};
use convring::poisson::PoissonChart;
use convring::relations::RelationSet;
use convring::suites::{run_suite, Suite, SuiteConfig};
use convring::text::parse_fraction;
use convring::{Error, Frac, GaussianRational, Poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
    #[default]
    Text,
}

/// Settings read from `--config FILE`; flags given on the command line win.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub degree_bound: u32,
    pub term_cap: usize,
    pub random_checks: usize,
    pub seed: u64,
    pub output: OutputFormat,
    /// Replacement texts for named relations, e.g. `{"S": "a*b*c - b^2 - c^2 - 2"}`.
    pub relations: BTreeMap<String, String>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            degree_bound: 4,
            term_cap: 200_000,
            random_checks: 20,
            seed: 0,
            output: OutputFormat::Text,
            relations: BTreeMap::new(),
        }
    }
}

impl Config {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let c: Config = serde_json::from_str(text).map_err(|e| Error::Parse(format!("config: {e}")))?;
        c.validate()?;
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Self, Error> {
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if self.degree_bound == 0 || self.term_cap == 0 || self.random_checks == 0 {
            return Err(Error::Parse("degree_bound, term_cap and random_checks must be positive".into()));
        }
        Ok(())
    }

    pub fn limits(&self) -> GbLimits {
        GbLimits { term_cap: self.term_cap }
    }

    pub fn suite_config(&self) -> Result<SuiteConfig, Error> {
        let relations = RelationSet::with_overrides(&self.relations).map_err(|e| Error::Parse(format!("config: {e}")))?;
        Ok(SuiteConfig {
            degree_bound: self.degree_bound,
            limits: self.limits(),
            random_checks: self.random_checks,
            seed: self.seed,
            relations,
        })
    }
}

#[derive(Debug, Parser)]
#[command(name = "convring", version, about = "Exact verification of rank-one convolution ring identities")]
pub struct Cli {
    /// JSON configuration file.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub output: Option<OutputFormat>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long = "degree-bound", global = true)]
    pub degree_bound: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite: all, blowup, centralizer, kring, homology, heisenberg or steinberg.
    Verify { suite: String },
    /// Run a single computation.
    #[command(subcommand)]
    Compute(Task),
}

#[derive(Debug, Subcommand)]
pub enum Task {
    /// Relations among the coordinates of a slice model.
    Kernel {
        #[arg(long)]
        model: String,
    },
    /// Generators of the invariants of a model under its involutions.
    Invariants {
        #[arg(long)]
        model: String,
        /// Comma-separated involution names (iota, jmath).
        #[arg(long, default_value = "iota")]
        involutions: String,
        #[arg(long, default_value_t = 2)]
        bound: u32,
    },
    /// Product in the convolution ring, reduced in the abstract presentation.
    Multiply {
        #[arg(long, default_value = "abstract")]
        presentation: String,
        f: String,
        g: String,
    },
    /// Convert an element between presentations.
    Convert {
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        f: String,
    },
    /// Chart bracket of two functions and its blow-up membership.
    Bracket {
        #[arg(long, default_value = "GG")]
        flavor: String,
        #[arg(long, default_value_t = 1)]
        kappa: i64,
        f: String,
        g: String,
    },
    /// Whether a fraction lies in a rank-one blow-up algebra.
    Membership {
        #[arg(long, default_value = "GG")]
        flavor: String,
        f: String,
    },
    /// One entry of the q-multiplication tables, or the whole consistency sweep.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// odin, dva or tri.
    #[arg(long, required_unless_present = "sweep")]
    pub kind: Option<String>,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub n: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub l: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub a: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    pub b: i64,
    /// Emit every entry of the sweep over n in 2..6 and l in 1..4.
    #[arg(long)]
    pub sweep: bool,
}

/// What the process prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, stderr: String::new(), code: 0 }
    }

    fn error(e: &Error) -> Self {
        let code = if e.is_resource_or_parse() { 2 } else { 1 };
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code }
    }
}

pub fn resolve_config(cli: &Cli) -> Result<Config, Error> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(o) = cli.output {
        cfg.output = o;
    }
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(d) = cli.degree_bound {
        cfg.degree_bound = d;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn execute(cli: &Cli) -> Outcome {
    let cfg = match resolve_config(cli) {
        Ok(c) => c,
        Err(e) => return Outcome::error(&e),
    };
    let result = match &cli.command {
        Command::Verify { suite } => return verify(suite, &cfg),
        Command::Compute(task) => compute(task, &cfg),
    };
    match result {
        Ok(s) => Outcome::ok(s),
        Err(e) => Outcome::error(&e),
    }
}

/// Parses `args` (including the program name) and executes; usage errors exit with 2.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

fn verify(suite: &str, cfg: &Config) -> Outcome {
    let run = || -> Result<_, Error> {
        let s = Suite::parse(suite)?;
        run_suite(s, &cfg.suite_config()?)
    };
    match run() {
        Ok(report) => {
            let stdout = match cfg.output {
                OutputFormat::Json => report.to_json() + "\n",
                OutputFormat::Csv => report.to_csv(),
                OutputFormat::Text => report.to_text(),
            };
            let code = if report.passed() { 0 } else { 1 };
            let stderr = if code == 0 { String::new() } else { format!("{} check(s) failed\n", report.failures().len()) };
            Outcome { stdout, stderr, code }
        }
        Err(e) => Outcome::error(&e),
    }
}

/// Renders a named list of text results in the chosen format.
fn render(cfg: &Config, task: &str, lines: &[String], extra: serde_json::Value) -> String {
    match cfg.output {
        OutputFormat::Text => lines.iter().map(|l| format!("{l}\n")).collect(),
        OutputFormat::Json => {
            let mut v = json!({ "task": task, "result": lines });
            if let (Some(obj), serde_json::Value::Object(more)) = (v.as_object_mut(), extra) {
                obj.extend(more);
            }
            v.to_string() + "\n"
        }
        OutputFormat::Csv => {
            let mut out = String::from("task,result\n");
            for l in lines {
                let _ = writeln!(out, "{task},{}", csv_field(l));
            }
            out
        }
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn kring(cfg: &Config) -> Result<KRing, Error> {
    let sc = cfg.suite_config()?;
    KRing::new(sc.relations.get("S"), &sc.limits)
}

fn compute(task: &Task, cfg: &Config) -> Result<String, Error> {
    let limits = cfg.limits();
    match task {
        Task::Kernel { model: name } => {
            let m = model(ModelName::parse(name)?);
            let k = kernel_of_map(&m.target, &m.parametrization, &limits)?;
            let lines = if k.is_empty() { vec!["0".to_string()] } else { sorted_strings(&k) };
            let json_gens: Vec<_> = k.iter().map(poly_to_json).collect();
            Ok(render(cfg, "kernel", &lines, json!({ "model": name, "terms": json_gens })))
        }
        Task::Invariants { model: name, involutions, bound } => {
            let m = model(ModelName::parse(name)?);
            let which: Vec<&str> = involutions.split(',').map(str::trim).collect();
            for w in &which {
                if !m.involutions.iter().any(|(n, _)| n == w) {
                    return Err(Error::Parse(format!("model {name} has no involution `{w}`")));
                }
            }
            let g = m.isogeny_invariants(&which, *bound, &limits)?;
            let redundant = sorted_strings(&g.redundant.iter().map(|x| x.poly.clone()).collect::<Vec<_>>());
            Ok(render(cfg, "invariants", &sorted_strings(&g.essential()), json!({ "redundant": redundant })))
        }
        Task::Multiply { presentation, f, g } => {
            let k = kring(cfg)?;
            let p = Presentation::parse(presentation)?;
            let prod = k.multiply(&k.parse(p, f)?, &k.parse(p, g)?)?;
            Ok(render(cfg, "multiply", &[prod.to_string()], json!({ "presentation": "abstract" })))
        }
        Task::Convert { from, to, f } => {
            let k = kring(cfg)?;
            let x = k.parse(Presentation::parse(from)?, f)?;
            let y = k.convert(&x, Presentation::parse(to)?)?;
            Ok(render(cfg, "convert", &[y.to_string()], json!({ "presentation": to })))
        }
        Task::Bracket { flavor, kappa, f, g } => {
            let b = BlowupAlgebra::rank_one(Flavor::parse(flavor)?, &limits)?;
            let chart = PoissonChart::for_blowup(&b, GaussianRational::from(*kappa))?;
            let br = chart.bracket(&in_base(&b, f)?, &in_base(&b, g)?)?;
            let m = b.membership(&br)?;
            let cert = m.certificate.as_ref().map(Poly::to_string);
            Ok(render(cfg, "bracket", &[br.to_string()], json!({ "member": m.member, "certificate": cert })))
        }
        Task::Membership { flavor, f } => {
            let b = BlowupAlgebra::rank_one(Flavor::parse(flavor)?, &limits)?;
            let m = b.membership(&parse_fraction(f, Some(b.ring().vars()))?)?;
            let line = match &m.certificate {
                Some(c) if m.member => format!("member: {c}"),
                _ => "not a member".to_string(),
            };
            let cert = m.certificate.as_ref().map(Poly::to_string);
            Ok(render(cfg, "membership", &[line], json!({ "member": m.member, "certificate": cert })))
        }
        Task::Table(t) => table(t, cfg),
    }
}

/// Parses a fraction over the presentation ring and rewrites the `T` generators in base coordinates.
fn in_base(b: &BlowupAlgebra, s: &str) -> Result<Frac, Error> {
    let f = parse_fraction(s, Some(b.ring().vars()))?;
    let num = b.to_fraction(f.num())?;
    let den = b.to_fraction(f.den())?;
    Ok(num.mul(&den.inverse()?))
}

fn table(t: &TableArgs, cfg: &Config) -> Result<String, Error> {
    let entries = if t.sweep {
        fusion_sweep(&kring(cfg)?, 2..=6, 1..=4)?.1
    } else {
        let kind = FusionKind::parse(t.kind.as_deref().unwrap_or_default())?;
        vec![fusion_table(kind, FusionParams { n: t.n, l: t.l, a: t.a, b: t.b })?]
    };
    Ok(match cfg.output {
        OutputFormat::Csv => entries_to_csv(&entries),
        OutputFormat::Json => {
            let v: Vec<_> = entries.iter().map(entry_to_json).collect();
            json!({ "task": "table", "entries": v }).to_string() + "\n"
        }
        OutputFormat::Text => entries
            .iter()
            .map(|e| if t.sweep { format!("{} = {}\n", e.lhs_string(), e.rhs_string()) } else { format!("{}\n", e.rhs_string()) })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_defaults_and_validation() {
        let c = Config::from_json("{}").unwrap();
        assert_eq!((c.degree_bound, c.term_cap, c.random_checks), (4, 200_000, 20));
        assert!(Config::from_json(r#"{"degree_bound": 0}"#).is_err());
        assert!(Config::from_json(r#"{"unknown": 1}"#).is_err());
        let c = Config::from_json(r#"{"output": "csv", "relations": {"S": "a*b*c - b^2 - c^2 - 2"}}"#).unwrap();
        assert_eq!(c.output, OutputFormat::Csv);
        assert_eq!(c.suite_config().unwrap().relations.overridden(), ["S"]);
    }

    #[test]
    fn unknown_relation_override_is_a_config_error() {
        let c = Config::from_json(r#"{"relations": {"nope": "x"}}"#).unwrap();
        assert!(matches!(c.suite_config(), Err(Error::Parse(_))));
    }
}
