//! The `cdcodes` command line.
//!
//! Human output is free-form; `--machine` switches every command to one
//! tab-separated record per line: a record type followed by `key=value`
//! fields in a fixed order.

use std::fmt::Write as _;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::codes::{CodeConfig, CodeError, MAX_ROWS};
use crate::harness::{
    simulate_channel, verify_paper_examples, ChannelSpec, ValueDistribution, Verdict,
};
use crate::residue::{build_field, BetaPolicy, Label, ResidueError, ResidueField};
use crate::search::{field_for, main_algorithm, SearchError, SearchOptions};
use crate::vring::{VContext, VElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Infeasible(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Infeasible(_) => EXIT_INFEASIBLE,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Internal(e.to_string())
    }
}

/// The flat on-disk form of a [`CodeConfig`].
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeConfigDescriptor {
    pub p: u64,
    pub t: u32,
    pub r: u32,
    pub pi_a: i64,
    pub pi_b: i64,
    pub s: u64,
    pub M: u64,
    pub n: u64,
    pub beta_label: u64,
    pub sign: i8,
    pub rows: usize,
}

#[derive(Debug, Error)]
pub enum DescriptorError {
    #[error("malformed config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("{field} = {stored} but the field gives {derived}")]
    Inconsistent {
        field: &'static str,
        stored: String,
        derived: String,
    },
    #[error(transparent)]
    Residue(#[from] ResidueError),
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error("context (t={t}, r={r}) is not admissible")]
    Context { t: u32, r: u32 },
    #[error("pi coordinates do not fit in 64 bits")]
    Overflow,
}

impl CodeConfigDescriptor {
    pub fn from_config(cfg: &CodeConfig) -> Result<Self, DescriptorError> {
        let field = cfg.field();
        let ctx = field.ctx();
        Ok(CodeConfigDescriptor {
            p: cfg.p(),
            t: ctx.t(),
            r: ctx.r(),
            pi_a: field.pi().a.to_i64().ok_or(DescriptorError::Overflow)?,
            pi_b: field.pi().b.to_i64().ok_or(DescriptorError::Overflow)?,
            s: field.s(),
            M: cfg.M(),
            n: cfg.n(),
            beta_label: cfg.beta().label,
            sign: cfg.sign(),
            rows: cfg.rows(),
        })
    }

    /// Rebuilds the field and code, checking every stored value.
    pub fn to_config(&self) -> Result<CodeConfig, DescriptorError> {
        let ctx = VContext::new(self.t, self.r).map_err(|_| DescriptorError::Context {
            t: self.t,
            r: self.r,
        })?;
        let field = build_field(&VElement::new(self.pi_a, self.pi_b), ctx)?;
        let cfg = CodeConfig::new(field, self.n, self.beta_label, self.rows)?;
        let derived = CodeConfigDescriptor::from_config(&cfg)?;
        let checks: [(&'static str, String, String); 4] = [
            ("p", self.p.to_string(), derived.p.to_string()),
            ("s", self.s.to_string(), derived.s.to_string()),
            ("M", self.M.to_string(), derived.M.to_string()),
            ("sign", self.sign.to_string(), derived.sign.to_string()),
        ];
        for (field, stored, derived) in checks {
            if stored != derived {
                return Err(DescriptorError::Inconsistent {
                    field,
                    stored,
                    derived,
                });
            }
        }
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat integer table serializes")
    }

    pub fn from_toml(text: &str) -> Result<Self, DescriptorError> {
        Ok(toml::from_str(text)?)
    }
}

pub fn save_config(cfg: &CodeConfig, path: &Path) -> Result<(), CliError> {
    let d =
        CodeConfigDescriptor::from_config(cfg).map_err(|e| CliError::Internal(e.to_string()))?;
    std::fs::write(path, d.to_toml())
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

pub fn load_config(path: &Path) -> Result<CodeConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    CodeConfigDescriptor::from_toml(&text)
        .and_then(|d| d.to_config())
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[derive(Debug, Parser)]
#[command(
    name = "cdcodes",
    version,
    about = "Codes over residue fields of Cayley-Dickson integer rings"
)]
pub struct Cli {
    /// One tab-separated `key=value` record per line.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank algebra and parameter choices for a prime.
    Search(SearchArgs),
    /// Build the residue field for a prime, algebra depth and r.
    Field(FieldCmd),
    /// Label of a + bw.
    Label {
        #[arg(allow_negative_numbers = true)]
        a: i64,
        #[arg(allow_negative_numbers = true)]
        b: i64,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Minimal-norm representative of a label.
    Unlabel {
        k: u64,
        #[command(flatten)]
        field: FieldArgs,
    },
    Encode {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated labels.
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        message: Vec<i64>,
        #[arg(long)]
        as_pairs: bool,
    },
    Decode {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
        word: Vec<i64>,
        #[arg(long)]
        as_pairs: bool,
    },
    /// Random errors through encode and decode.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=2))]
        errors: u8,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Values::Uniform)]
        values: Values,
    },
    /// Recompute the worked examples.
    VerifyPaper,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Values {
    Uniform,
    PowersOfW,
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    pub p: u64,
    #[arg(long, default_value_t = 6)]
    pub t_max: u32,
    #[arg(long, default_value_t = 4)]
    pub r_extra: u32,
    #[arg(long, default_value_t = 2)]
    pub rows: usize,
    /// Also list infeasible combinations.
    #[arg(long)]
    pub all: bool,
    /// Write the top feasible candidate as a code config.
    #[arg(long)]
    pub save_config: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub t: u32,
    /// Defaults to max(1, t - 2).
    #[arg(long)]
    pub r: Option<u32>,
}

#[derive(Debug, Args)]
pub struct FieldCmd {
    #[command(flatten)]
    pub field: FieldArgs,
    #[arg(long)]
    pub dump_labels: bool,
    /// Code length; with --save-config writes a code over this field.
    #[arg(long, requires = "save_config")]
    pub n: Option<u64>,
    #[arg(long, default_value_t = 2)]
    pub rows: usize,
    #[arg(long, requires = "n")]
    pub save_config: Option<PathBuf>,
}

struct Out<'a> {
    w: &'a mut dyn Write,
    machine: bool,
}

impl Out<'_> {
    fn record(&mut self, kind: &str, fields: &[(&str, String)]) -> Result<(), CliError> {
        let mut line = kind.to_string();
        for (k, v) in fields {
            write!(line, "\t{k}={v}").expect("string write");
        }
        writeln!(self.w, "{line}")?;
        Ok(())
    }

    fn human(&mut self, line: impl AsRef<str>) -> Result<(), CliError> {
        writeln!(self.w, "{}", line.as_ref())?;
        Ok(())
    }
}

fn join(v: &[Label]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn pairs(field: &ResidueField, v: &[Label]) -> Result<String, CliError> {
    let reps: Result<Vec<String>, _> = v
        .iter()
        .map(|&k| field.unlabel_min_norm(k).map(|x| x.to_string()))
        .collect();
    Ok(reps
        .map_err(|e| CliError::Internal(e.to_string()))?
        .join(","))
}

fn resolve_field(args: &FieldArgs) -> Result<ResidueField, CliError> {
    field_for(args.p, args.t, args.r).map_err(|e| match e {
        SearchError::NoRepresentation { .. } => CliError::Infeasible(e.to_string()),
        SearchError::NotPrime(_) | SearchError::Ring(_) => CliError::Usage(e.to_string()),
        _ => CliError::Internal(e.to_string()),
    })
}

fn symbols(v: &[i64], p: u64) -> Vec<Label> {
    v.iter().map(|&x| x.rem_euclid(p as i64) as u64).collect()
}

fn cmd_search(out: &mut Out, args: &SearchArgs) -> Result<(), CliError> {
    if !(1..=MAX_ROWS).contains(&args.rows) {
        return Err(CliError::Usage(format!("--rows must be in 1..={MAX_ROWS}")));
    }
    let opts = SearchOptions {
        t_max: args.t_max,
        r_extra: args.r_extra,
        rows: args.rows,
        policy: BetaPolicy::PrimitiveOnly,
    };
    let ranked = main_algorithm(args.p, &opts).map_err(|e| match e {
        SearchError::NotPrime(_) | SearchError::TooSmall(_) | SearchError::BadRows(_) => {
            CliError::Usage(e.to_string())
        }
        _ => CliError::Internal(e.to_string()),
    })?;
    if ranked.is_empty() {
        return Err(CliError::Infeasible(format!(
            "{} has no representation with t <= {}",
            args.p, args.t_max
        )));
    }
    let feasible = ranked.iter().filter(|c| c.feasible).count();
    for (i, c) in ranked
        .iter()
        .enumerate()
        .filter(|(_, c)| c.feasible || args.all)
    {
        let (beta, sign) = c.beta.as_ref().map_or((0, 0), |b| (b.label, b.sign));
        if out.machine {
            out.record(
                "candidate",
                &[
                    ("rank", (i + 1).to_string()),
                    ("t", c.repr.t.to_string()),
                    ("r", c.r.to_string()),
                    ("pi_a", c.field.pi().a.to_string()),
                    ("pi_b", c.field.pi().b.to_string()),
                    ("p", c.field.p().to_string()),
                    ("s", c.field.s().to_string()),
                    ("n", c.pair.n.to_string()),
                    ("M", c.pair.m.to_string()),
                    ("beta", beta.to_string()),
                    ("sign", sign.to_string()),
                    ("feasible", u8::from(c.feasible).to_string()),
                ],
            )?;
        } else if c.feasible {
            let w = if sign > 0 { "w" } else { "-w" };
            out.human(format!(
                "t={} r={} pi={} s={} n={} M={} beta={} (beta^{}={w}) rate k/{}",
                c.repr.t,
                c.r,
                c.field.pi(),
                c.field.s(),
                c.pair.n,
                c.pair.m,
                beta,
                c.pair.n,
                c.rate_denominator
            ))?;
        } else {
            out.human(format!(
                "t={} r={} pi={} s={} n={} infeasible",
                c.repr.t,
                c.r,
                c.field.pi(),
                c.field.s(),
                c.pair.n
            ))?;
        }
    }
    if feasible == 0 {
        return Err(CliError::Infeasible(format!(
            "no beta for any length at p = {}",
            args.p
        )));
    }
    if let Some(path) = &args.save_config {
        let cfg = ranked[0]
            .to_config(args.rows)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        save_config(&cfg, path)?;
    }
    Ok(())
}

fn cmd_field(out: &mut Out, args: &FieldCmd) -> Result<(), CliError> {
    let field = resolve_field(&args.field)?;
    let ctx = field.ctx();
    if out.machine {
        out.record(
            "field",
            &[
                ("p", field.p().to_string()),
                ("t", ctx.t().to_string()),
                ("r", ctx.r().to_string()),
                ("pi_a", field.pi().a.to_string()),
                ("pi_b", field.pi().b.to_string()),
                ("s", field.s().to_string()),
            ],
        )?;
    } else {
        out.human(field.to_string())?;
    }
    if args.dump_labels {
        for k in 0..field.p() {
            let rep = field
                .unlabel_min_norm(k)
                .map_err(|e| CliError::Internal(e.to_string()))?;
            let weight = field.weight_g(k);
            if out.machine {
                out.record(
                    "label",
                    &[
                        ("k", k.to_string()),
                        ("a", rep.a.to_string()),
                        ("b", rep.b.to_string()),
                        ("weight", weight.to_string()),
                    ],
                )?;
            } else {
                out.human(format!("{k:>6}  {rep:<12} weight {weight}"))?;
            }
        }
    }
    if let (Some(n), Some(path)) = (args.n, &args.save_config) {
        if n == 0 || (field.p() - 1) % n != 0 {
            return Err(CliError::Usage(format!("n = {n} does not divide p - 1")));
        }
        let cfg = CodeConfig::with_policy(field, n, args.rows, BetaPolicy::PrimitivePreferred)
            .map_err(|e| match e {
                CodeError::NoBeta { .. } => CliError::Infeasible(e.to_string()),
                _ => CliError::Usage(e.to_string()),
            })?;
        save_config(&cfg, path)?;
    }
    Ok(())
}

fn cmd_label(out: &mut Out, a: i64, b: i64, args: &FieldArgs) -> Result<(), CliError> {
    let field = resolve_field(args)?;
    let k = field.label_of_small(a, b);
    if out.machine {
        out.record(
            "label",
            &[
                ("a", a.to_string()),
                ("b", b.to_string()),
                ("k", k.to_string()),
            ],
        )
    } else {
        out.human(format!("{} -> {k}", VElement::new(a, b)))
    }
}

fn cmd_unlabel(out: &mut Out, k: u64, args: &FieldArgs) -> Result<(), CliError> {
    let field = resolve_field(args)?;
    if k >= field.p() {
        return Err(CliError::Usage(format!(
            "label {k} is not below p = {}",
            field.p()
        )));
    }
    let rep = field
        .unlabel_min_norm(k)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    if out.machine {
        out.record(
            "unlabel",
            &[
                ("k", k.to_string()),
                ("a", rep.a.to_string()),
                ("b", rep.b.to_string()),
                ("weight", field.weight_g(k).to_string()),
            ],
        )
    } else {
        out.human(format!("{k} -> {rep} (weight {})", field.weight_g(k)))
    }
}

fn cmd_encode(
    out: &mut Out,
    config: &Path,
    message: &[i64],
    as_pairs: bool,
) -> Result<(), CliError> {
    let cfg = load_config(config)?;
    let msg = symbols(message, cfg.p());
    let c = cfg
        .encode(&msg)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    if out.machine {
        let mut fields = vec![("codeword", join(&c))];
        if as_pairs {
            fields.push(("pairs", pairs(cfg.field(), &c)?));
        }
        out.record("encode", &fields)
    } else {
        out.human(join(&c))?;
        if as_pairs {
            out.human(pairs(cfg.field(), &c)?)?;
        }
        Ok(())
    }
}

fn cmd_decode(out: &mut Out, config: &Path, word: &[i64], as_pairs: bool) -> Result<(), CliError> {
    let cfg = load_config(config)?;
    let word = symbols(word, cfg.p());
    let res = cfg
        .decode(&word)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let errors = res
        .errors
        .iter()
        .map(|(i, e)| format!("{i}:{e}"))
        .collect::<Vec<_>>()
        .join(",");
    let corrected = res.corrected.as_deref().map(join).unwrap_or_default();
    if out.machine {
        let mut fields = vec![
            ("status", res.status.to_string()),
            ("errors", errors),
            ("corrected", corrected),
        ];
        if as_pairs {
            if let Some(c) = &res.corrected {
                fields.push(("pairs", pairs(cfg.field(), c)?));
            }
        }
        out.record("decode", &fields)
    } else {
        out.human(format!("status: {}", res.status))?;
        if !res.errors.is_empty() {
            out.human(format!("errors: {errors}"))?;
        }
        if let Some(c) = &res.corrected {
            out.human(format!("codeword: {corrected}"))?;
            if as_pairs {
                out.human(format!("pairs: {}", pairs(cfg.field(), c)?))?;
            }
        }
        Ok(())
    }
}

fn cmd_simulate(
    out: &mut Out,
    config: &Path,
    errors: u8,
    trials: u64,
    seed: u64,
    values: Values,
) -> Result<(), CliError> {
    let cfg = load_config(config)?;
    let spec = ChannelSpec {
        error_count: errors as usize,
        values: match values {
            Values::Uniform => ValueDistribution::UniformNonzero,
            Values::PowersOfW => ValueDistribution::PowersOfW,
        },
        seed,
    };
    let r = simulate_channel(&cfg, &spec, trials).map_err(|e| CliError::Usage(e.to_string()))?;
    if out.machine {
        out.record(
            "simulation",
            &[
                ("trials", r.trials.to_string()),
                ("corrected", r.corrected.to_string()),
                ("miscorrected", r.miscorrected.to_string()),
                ("detected", r.detected.to_string()),
                ("success", r.success_rate.to_string()),
                ("rng", r.rng.to_string()),
                ("seed", seed.to_string()),
            ],
        )
    } else {
        out.human(format!(
            "trials {}  corrected {}  miscorrected {}  detected {}  success {}  ({} seed {seed})",
            r.trials, r.corrected, r.miscorrected, r.detected, r.success_rate, r.rng
        ))
    }
}

fn cmd_verify(out: &mut Out) -> Result<(), CliError> {
    let report = verify_paper_examples();
    for c in &report.checks {
        if out.machine {
            out.record(
                "check",
                &[
                    ("example", c.example.to_string()),
                    ("claim", c.claim.to_string()),
                    ("verdict", c.verdict.to_string()),
                    ("expected", c.expected.clone()),
                    ("computed", c.computed.clone()),
                ],
            )?;
        } else {
            out.human(format!(
                "{:<4} {:<28} {:<16} {}",
                c.example, c.claim, c.verdict, c.computed
            ))?;
            if c.verdict != Verdict::Match {
                out.human(format!("     printed: {}", c.expected))?;
            }
        }
    }
    let counts =
        [Verdict::Match, Verdict::Mismatch, Verdict::CorrectedMatch].map(|v| report.count(v));
    if out.machine {
        out.record(
            "summary",
            &[
                ("match", counts[0].to_string()),
                ("mismatch", counts[1].to_string()),
                ("corrected-match", counts[2].to_string()),
            ],
        )
    } else {
        out.human(format!(
            "{} match, {} mismatch, {} corrected-match",
            counts[0], counts[1], counts[2]
        ))
    }
}

fn dispatch(cli: &Cli, out: &mut Out) -> Result<(), CliError> {
    match &cli.command {
        Command::Search(args) => cmd_search(out, args),
        Command::Field(args) => cmd_field(out, args),
        Command::Label { a, b, field } => cmd_label(out, *a, *b, field),
        Command::Unlabel { k, field } => cmd_unlabel(out, *k, field),
        Command::Encode {
            config,
            message,
            as_pairs,
        } => cmd_encode(out, config, message, *as_pairs),
        Command::Decode {
            config,
            word,
            as_pairs,
        } => cmd_decode(out, config, word, *as_pairs),
        Command::Simulate {
            config,
            errors,
            trials,
            seed,
            values,
        } => cmd_simulate(out, config, *errors, *trials, *seed, *values),
        Command::VerifyPaper => cmd_verify(out),
    }
}

/// Runs one invocation (`args[0]` is the program name) and returns the exit code.
pub fn run_cli_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let mut out = Out {
        w: stdout,
        machine: cli.machine,
    };
    match catch_unwind(AssertUnwindSafe(|| dispatch(&cli, &mut out))) {
        Ok(Ok(())) => EXIT_OK,
        Ok(Err(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
        Err(_) => EXIT_INTERNAL,
    }
}

pub fn run_cli<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    run_cli_with(args, &mut lock, &mut std::io::stderr())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::mod_pow;

    fn run(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let mut full = vec!["cdcodes"];
        full.extend_from_slice(args);
        let code = run_cli_with(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    fn quaternion61() -> CodeConfig {
        let f = build_field(&VElement::new(5, 4), VContext::new(2, 1).unwrap()).unwrap();
        CodeConfig::new(f, 10, 10, 2).unwrap()
    }

    #[test]
    fn field_prints_pi_and_s() {
        let (code, out, _) = run(&["field", "--p", "29", "--t", "3", "--r", "1"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().next(), Some("pi=-1+4w s=22"));
        let (_, out, _) = run(&["--machine", "field", "--p", "29", "--t", "3", "--r", "1"]);
        assert_eq!(out, "field\tp=29\tt=3\tr=1\tpi_a=-1\tpi_b=4\ts=22\n");
    }

    #[test]
    fn dump_labels_lists_every_label() {
        let (code, out, _) = run(&[
            "--machine",
            "field",
            "--p",
            "29",
            "--t",
            "3",
            "--r",
            "1",
            "--dump-labels",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().filter(|l| l.starts_with("label\t")).count(), 29);
        assert!(out.contains("label\tk=8\ta=1\tb=-1\tweight=2\n"));
    }

    #[test]
    fn label_and_unlabel() {
        let (_, out, _) = run(&[
            "--machine",
            "label",
            "1",
            "-1",
            "--p",
            "29",
            "--t",
            "3",
            "--r",
            "1",
        ]);
        assert_eq!(out, "label\ta=1\tb=-1\tk=8\n");
        let (_, out, _) = run(&["unlabel", "10", "--p", "61", "--t", "2"]);
        assert_eq!(out.trim(), "10 -> -4+1w (weight 5)");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(run(&["search", "60"]).0, EXIT_USAGE);
        assert_eq!(run(&["field", "--p", "29", "--t", "3", "--r", "9"]).0, 0);
        assert_eq!(run(&["field", "--p", "29", "--t", "2"]).0, EXIT_INFEASIBLE);
        assert_eq!(
            run(&["simulate", "--config", "x.toml", "--errors", "3"]).0,
            EXIT_USAGE
        );
        assert_eq!(
            run(&["decode", "--config", "/nonexistent.toml", "--word", "1"]).0,
            EXIT_USAGE
        );
        assert_eq!(run(&["--help"]).0, EXIT_OK);
    }

    #[test]
    fn search_machine_is_stable() {
        let a = run(&["--machine", "search", "61"]);
        let b = run(&["--machine", "search", "61"]);
        assert_eq!(a, b);
        assert_eq!(a.0, 0);
        let first = a.1.lines().next().unwrap();
        assert!(
            first.starts_with("candidate\trank=1\tt=4\tr=2\t"),
            "{first}"
        );
    }

    #[test]
    fn descriptor_round_trip() {
        let cfg = quaternion61();
        let d = CodeConfigDescriptor::from_config(&cfg).unwrap();
        assert_eq!(
            d,
            CodeConfigDescriptor {
                p: 61,
                t: 2,
                r: 1,
                pi_a: 5,
                pi_b: 4,
                s: 14,
                M: 6,
                n: 10,
                beta_label: 10,
                sign: 1,
                rows: 2
            }
        );
        let back = CodeConfigDescriptor::from_toml(&d.to_toml()).unwrap();
        assert_eq!(back, d);
        assert_eq!(back.to_config().unwrap(), cfg);
    }

    #[test]
    fn descriptor_revalidates() {
        let mut d = CodeConfigDescriptor::from_config(&quaternion61()).unwrap();
        d.s = 15;
        assert!(matches!(
            d.to_config(),
            Err(DescriptorError::Inconsistent { field: "s", .. })
        ));
        let mut d = CodeConfigDescriptor::from_config(&quaternion61()).unwrap();
        d.beta_label = 11;
        assert!(d.to_config().is_err());
        let mut d = CodeConfigDescriptor::from_config(&quaternion61()).unwrap();
        d.pi_a = 3;
        assert!(d.to_config().is_err());
        assert!(CodeConfigDescriptor::from_toml("p = 61").is_err());
    }

    #[test]
    fn encode_decode_simulate_through_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("q61.toml");
        let p = path.to_str().unwrap();
        let (code, _, err) = run(&[
            "field",
            "--p",
            "61",
            "--t",
            "2",
            "--n",
            "10",
            "--save-config",
            p,
        ]);
        assert_eq!(code, 0, "{err}");
        assert_eq!(load_config(&path).unwrap(), quaternion61());

        let (code, out, _) = run(&[
            "--machine",
            "encode",
            "--config",
            p,
            "--message",
            "1,2,3,4,5,6,7,8",
        ]);
        assert_eq!(code, 0);
        let word = out
            .trim()
            .strip_prefix("encode\tcodeword=")
            .unwrap()
            .to_string();
        let (code, out, _) = run(&["--machine", "decode", "--config", p, "--word", &word]);
        assert_eq!(code, 0);
        assert_eq!(
            out,
            format!("decode\tstatus=clean\terrors=\tcorrected={word}\n")
        );

        let mut symbols: Vec<u64> = word.split(',').map(|x| x.parse().unwrap()).collect();
        symbols[4] = (symbols[4] + 17) % 61;
        let bad = join(&symbols);
        let (_, out, _) = run(&["--machine", "decode", "--config", p, "--word", &bad]);
        assert_eq!(
            out,
            format!("decode\tstatus=corrected\terrors=4:17\tcorrected={word}\n")
        );

        let args = [
            "--machine",
            "simulate",
            "--config",
            p,
            "--errors",
            "1",
            "--trials",
            "1000",
            "--seed",
            "7",
        ];
        let (code, out, _) = run(&args);
        assert_eq!(code, 0);
        assert_eq!(out, "simulation\ttrials=1000\tcorrected=1000\tmiscorrected=0\tdetected=0\tsuccess=1\trng=chacha8\tseed=7\n");
    }

    #[test]
    fn verify_paper_reports_without_failing() {
        let (code, out, _) = run(&["--machine", "verify-paper"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("summary\tmatch=47\tmismatch=1\tcorrected-match=1\n"));
    }

    #[test]
    fn search_71_octonion_at_r1() {
        let (code, out, _) = run(&["--machine", "search", "71", "--r-extra", "0"]);
        assert_eq!(code, 0);
        assert!(out.lines().any(|l| l.contains("\tt=3\tr=1\t")
            && l.contains("\tn=10\t")
            && l.ends_with("feasible=1")));
        assert_eq!(run(&["search", "91"]).0, EXIT_USAGE);
        assert_eq!(run(&["search"]).0, EXIT_USAGE);
    }

    #[test]
    fn clean_decode_with_pairs() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("code.toml");
        let p = path.to_str().unwrap();
        assert_eq!(run(&["search", "61", "--save-config", p]).0, 0);
        let (_, out, _) = run(&["--machine", "encode", "--config", p, "--message", "5"]);
        let word = out
            .trim()
            .strip_prefix("encode\tcodeword=")
            .unwrap()
            .to_string();
        let (code, out, _) = run(&["decode", "--config", p, "--word", &word, "--as-pairs"]);
        assert_eq!(code, 0);
        assert!(out.starts_with("status: clean\n"), "{out}");
        assert!(out.contains("pairs: "));
    }

    #[test]
    fn search_saves_top_candidate() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("top.toml");
        let (code, _, _) = run(&["search", "29", "--save-config", path.to_str().unwrap()]);
        assert_eq!(code, 0);
        let cfg = load_config(&path).unwrap();
        assert_eq!((cfg.p(), cfg.n(), cfg.beta().label), (29, 4, 8));
        assert_eq!(mod_pow(8, 4, cfg.modulus()), 29 - 22);
    }
}
