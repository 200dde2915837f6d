//! Command line front end.
//!
//! [`run`] parses arguments, dispatches one subcommand and renders the
//! outcome either as a single JSON [`OutputEnvelope`] (`--json`) or as
//! plain text. Exit codes: 0 ok, 1 usage error, 2 math error, 3 convergence
//! failure.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::{Error, ErrorClass, ParseDiagnostic, Result};
use crate::expr::Expr;
use crate::forms::{MultiIndex, ProductForm};
use crate::geometry::Chain;
use crate::quad::{QuadratureRule, DEFAULT_BUDGET, DEFAULT_ORDER, DEFAULT_TOLERANCE};
use crate::scalar::{self, sig6, ComplexScalar, Interval, DEFAULT_ROOT_TOLERANCE, DEFAULT_SIGN_SAMPLES};
use crate::stokes::{stokes_check, StokesReport};

#[derive(Debug, Parser)]
#[command(name = "prodcalc", version, about = "Multiplicative calculus and product forms")]
pub struct Cli {
    /// Emit one JSON envelope on standard output
    #[arg(long, global = true)]
    pub json: bool,
    /// Gauss nodes per cell
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER)]
    pub order: usize,
    /// Relative tolerance for adaptive refinement
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    /// Maximum number of adaptive cells per integral
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct IntervalArgs {
    /// Lower limit
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    /// Upper limit
    #[arg(long, allow_negative_numbers = true)]
    pub b: f64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Product derivative exp(f'/f) at a point
    Pderiv {
        #[arg(long)]
        f: String,
        #[arg(long, allow_negative_numbers = true)]
        x: f64,
    },
    /// Geometric integral exp(∫ ln f); complex with --signed
    Pint {
        #[arg(long)]
        f: String,
        #[command(flatten)]
        interval: IntervalArgs,
        /// Allow sign changes and return a complex value
        #[arg(long)]
        signed: bool,
    },
    /// Volterra product integral exp(∫ g)
    Vint {
        #[arg(long)]
        g: String,
        #[command(flatten)]
        interval: IntervalArgs,
    },
    /// Geometric mean, complex when f is negative somewhere
    Geomean {
        #[arg(long)]
        f: String,
        #[command(flatten)]
        interval: IntervalArgs,
    },
    /// q differential of a product form
    Qdiff {
        /// Form such as "dx1:exp(x1*x2); dx2:2"
        #[arg(long)]
        form: String,
        /// Ambient dimension
        #[arg(long)]
        n: usize,
        /// Evaluate the coefficients at this point, e.g. "0.5,0.25"
        #[arg(long, allow_negative_numbers = true, value_delimiter = ',')]
        at: Option<Vec<f64>>,
        /// Apply q this many times
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// Product wedge of two product forms
    Wedge {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        n: usize,
        #[arg(long, allow_negative_numbers = true, value_delimiter = ',')]
        at: Option<Vec<f64>>,
    },
    /// Compare both sides of the product Stokes identity
    Stokes {
        #[arg(long)]
        form: String,
        #[arg(long)]
        n: usize,
        /// Chain such as "[(0,0),(1,0),(0,1)]" or "2*[(0),(1)] - [(1),(2)]"
        #[arg(long, allow_hyphen_values = true)]
        chain: String,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Pderiv { .. } => "pderiv",
            Command::Pint { .. } => "pint",
            Command::Vint { .. } => "vint",
            Command::Geomean { .. } => "geomean",
            Command::Qdiff { .. } => "qdiff",
            Command::Wedge { .. } => "wedge",
            Command::Stokes { .. } => "stokes",
        }
    }
}

/// One row of a coefficient table. Absent slots are listed with coefficient "1".
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableEntry {
    pub slot: String,
    pub coefficient: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientTable {
    pub dim: usize,
    pub degree: usize,
    pub entries: Vec<TableEntry>,
}

impl CoefficientTable {
    /// Every sorted slot of `form`; values come from `at` or, failing that, from constant coefficients.
    pub fn from_form(form: &ProductForm, at: Option<&[f64]>) -> Result<Self> {
        let values = at.map(|p| form.evaluate(p)).transpose()?;
        let entries = MultiIndex::all(form.dim(), form.degree())
            .into_iter()
            .map(|slot| {
                let c = form.coefficient(&slot);
                let value = match &values {
                    Some(v) => Some(v[&slot]),
                    None => c.as_const(),
                };
                TableEntry {
                    slot: slot.to_string(),
                    coefficient: c.to_string(),
                    value,
                }
            })
            .collect();
        Ok(Self {
            dim: form.dim(),
            degree: form.degree(),
            entries,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Payload {
    Real(f64),
    Complex(ComplexScalar),
    Table(CoefficientTable),
    Stokes(StokesReport),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parse: Option<ParseDiagnostic>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputEnvelope {
    pub command: String,
    pub args: Vec<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<Payload>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorReport>,
    pub diagnostics: Vec<String>,
}

/// What the binary prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

pub fn exit_code(class: ErrorClass) -> i32 {
    match class {
        ErrorClass::Usage => 1,
        ErrorClass::Math => 2,
        ErrorClass::Convergence => 3,
    }
}

fn interval(args: &IntervalArgs) -> Result<Interval> {
    Interval::new(args.a, args.b)
}

/// Run one parsed command; the second value lists diagnostics.
pub fn execute(cli: &Cli) -> Result<(Payload, Vec<String>)> {
    let rule = QuadratureRule::adaptive(cli.order, cli.tol, cli.budget);
    rule.validate()?;
    let mut notes = Vec::new();
    let payload = match &cli.command {
        Command::Pderiv { f, x } => Payload::Real(scalar::product_derivative(&Expr::parse(f)?, *x)?),
        Command::Pint {
            f,
            interval: iv,
            signed,
        } => {
            let (f, iv) = (Expr::parse(f)?, interval(iv)?);
            if *signed {
                let profile = profile_with_notes(&f, iv, &mut notes)?;
                Payload::Complex(scalar::geometric_integral_signed(&f, iv, &rule, &profile)?)
            } else {
                Payload::Real(scalar::geometric_integral(&f, iv, &rule)?)
            }
        }
        Command::Vint { g, interval: iv } => {
            Payload::Real(scalar::volterra_integral(&Expr::parse(g)?, interval(iv)?, &rule)?)
        }
        Command::Geomean { f, interval: iv } => {
            let (f, iv) = (Expr::parse(f)?, interval(iv)?);
            let profile = profile_with_notes(&f, iv, &mut notes)?;
            let mean = scalar::geometric_mean(&f, iv, &rule, &profile)?;
            if profile.negative_measure() == 0.0 {
                Payload::Real(mean.re)
            } else {
                Payload::Complex(mean)
            }
        }
        Command::Qdiff { form, n, at, times } => {
            let mut alpha = ProductForm::parse(form, *n)?;
            for _ in 0..*times {
                alpha = alpha.q_diff()?;
            }
            Payload::Table(CoefficientTable::from_form(&alpha, at.as_deref())?)
        }
        Command::Wedge { left, right, n, at } => {
            let w = ProductForm::parse(left, *n)?.wedge_p(&ProductForm::parse(right, *n)?)?;
            Payload::Table(CoefficientTable::from_form(&w, at.as_deref())?)
        }
        Command::Stokes { form, n, chain } => {
            let alpha = ProductForm::parse(form, *n)?;
            let chain = Chain::parse(chain)?;
            if chain.dim() != *n {
                return Err(Error::ShapeMismatch(format!(
                    "chain lives in ℝ^{} but --n is {n}",
                    chain.dim()
                )));
            }
            let report = stokes_check(&alpha, &chain, &rule)?;
            notes.push(format!(
                "boundary terms: {}",
                report.simplices.len() * (chain.degree() + 1)
            ));
            Payload::Stokes(report)
        }
    };
    Ok((payload, notes))
}

fn profile_with_notes(f: &Expr, iv: Interval, notes: &mut Vec<String>) -> Result<scalar::SignProfile> {
    let profile = scalar::sign_profile(f, iv, DEFAULT_SIGN_SAMPLES, DEFAULT_ROOT_TOLERANCE)?;
    if !profile.roots().is_empty() {
        let roots: Vec<String> = profile.roots().iter().map(|r| sig6(*r)).collect();
        notes.push(format!("sign changes at {}", roots.join(", ")));
    }
    if profile.negative_measure() > 0.0 {
        notes.push(format!("negative measure {}", sig6(profile.negative_measure())));
    }
    Ok(profile)
}

fn render_payload(payload: &Payload) -> String {
    match payload {
        Payload::Real(v) => format!("{}\n", sig6(*v)),
        Payload::Complex(z) => format!("{z}\n"),
        Payload::Table(t) => {
            let mut out = String::new();
            for e in &t.entries {
                let _ = match e.value {
                    Some(v) => writeln!(out, "{}: {} = {}", e.slot, e.coefficient, sig6(v)),
                    None => writeln!(out, "{}: {}", e.slot, e.coefficient),
                };
            }
            out
        }
        Payload::Stokes(r) => {
            let mut out = String::new();
            let _ = writeln!(out, "boundary side: {}", sig6(r.lhs));
            let _ = writeln!(out, "interior side: {}", sig6(r.rhs));
            let _ = writeln!(out, "log discrepancy: {:e}", r.log_discrepancy);
            out
        }
    }
}

/// Parse `args` (including the program name) and produce the full outcome.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let json = echo.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    stdout: e.to_string(),
                    stderr: String::new(),
                    code: 0,
                };
            }
            let message = e.kind().to_string();
            let rendered = e.render().to_string();
            if json {
                let envelope = OutputEnvelope {
                    command: echo.iter().find(|a| !a.starts_with('-')).cloned().unwrap_or_default(),
                    args: echo,
                    status: Status::Error,
                    result: None,
                    error: Some(ErrorReport {
                        kind: "UsageError".into(),
                        message,
                        parse: None,
                    }),
                    diagnostics: vec![rendered.trim_end().to_string()],
                };
                return Outcome {
                    stdout: to_json(&envelope),
                    stderr: String::new(),
                    code: 1,
                };
            }
            return Outcome {
                stdout: String::new(),
                stderr: rendered,
                code: 1,
            };
        }
    };
    let command = cli.command.name().to_string();
    match execute(&cli) {
        Ok((payload, diagnostics)) => {
            let stdout = if cli.json {
                to_json(&OutputEnvelope {
                    command,
                    args: echo,
                    status: Status::Ok,
                    result: Some(payload),
                    error: None,
                    diagnostics,
                })
            } else {
                render_payload(&payload)
            };
            Outcome {
                stdout,
                stderr: String::new(),
                code: 0,
            }
        }
        Err(err) => {
            let code = exit_code(err.class());
            let parse = match &err {
                Error::Parse(d) => Some(d.clone()),
                _ => None,
            };
            if cli.json {
                let envelope = OutputEnvelope {
                    command,
                    args: echo,
                    status: Status::Error,
                    result: None,
                    error: Some(ErrorReport {
                        kind: err.kind().to_string(),
                        message: err.to_string(),
                        parse,
                    }),
                    diagnostics: Vec::new(),
                };
                Outcome {
                    stdout: to_json(&envelope),
                    stderr: String::new(),
                    code,
                }
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: format!("error [{}]: {err}\n", err.kind()),
                    code,
                }
            }
        }
    }
}

fn to_json(envelope: &OutputEnvelope) -> String {
    let mut s = serde_json::to_string(envelope).expect("envelope serializes");
    s.push('\n');
    s
}
