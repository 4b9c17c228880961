//! The `linfty` command-line tool: documents, subcommands and reports.

pub mod commands;
pub mod document;
pub mod report;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

use commands::Options;
use document::{load_document, DocumentError};
use report::{Format, Report};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Document(#[from] DocumentError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("computation failed: {0}")]
    Computation(String),
}

#[derive(Debug, Parser)]
#[command(name = "linfty", version, about = "Exact computations with filtered L∞ and dg Lie algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Omit the timing field, making reports byte-identical across runs.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Path to a JSON document.
    pub file: String,
    /// Work in the quotient by weights ≥ R.
    #[arg(long, default_value_t = 4)]
    pub truncation: u32,
    /// Highest arity checked (default: the maximal arity plus one).
    #[arg(long)]
    pub arity_bound: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Antisymmetry, degrees, weights, Jacobi identities and the CE square.
    Verify(Common),
    /// Prints the quotient by weights ≥ R as a document.
    Truncate(Common),
    /// Maurer–Cartan residual of an element (or of every corpus point).
    McResidual {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: Option<String>,
    },
    /// The Maurer–Cartan equation as polynomials in degree-1 coordinates.
    McSystem(Common),
    /// Twisted brackets at a Maurer–Cartan element.
    Twist {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: Option<String>,
    },
    /// Order-by-order deformations over K[t]/(t^n).
    Lift {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Applies exp(ξ) to a Maurer–Cartan element.
    GaugeAct {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        element: Option<String>,
    },
    /// Homotopy from a gauge action and back.
    GaugeConnect {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        element: Option<String>,
        /// Polynomial degree bound in t (default R − 1).
        #[arg(long)]
        t_degree: Option<usize>,
    },
    /// Baker–Campbell–Hausdorff product and the group law on corpus points.
    Bch {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Maurer–Cartan check of an element of 𝔤 ⊗ Ω_n.
    SimplexVerify {
        #[command(flatten)]
        common: Common,
        /// Terms `id:coefficient[:monomial]` separated by `;`, e.g. `x:1; h:2:t; g:-2:dt`.
        #[arg(long)]
        simplex: Option<String>,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        /// Build the 1-simplex from `--xi` and `--element` instead.
        #[arg(long)]
        from_gauge: bool,
        #[arg(long)]
        xi: Option<String>,
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        t_degree: Option<usize>,
    },
    /// Deformations of an element modulo gauge over artinian coefficients.
    Pi0 {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: Option<String>,
        /// `dual`, `poly:n` or the name of a coefficient block.
        #[arg(long, default_value = "dual")]
        coefficients: String,
    },
    /// Checks a filtered morphism and its stagewise cohomology.
    MorphismVerify {
        #[command(flatten)]
        common: Common,
        /// Also check lifting of Maurer–Cartan elements and paths.
        #[arg(long)]
        fibration: bool,
        /// Also check the twisted morphism at this source element.
        #[arg(long)]
        twist_element: Option<String>,
    },
    /// Compares deformation data of source and target of a morphism.
    GmCheck {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// Tangent complex of the Maurer–Cartan quotient at an element.
    Tangent {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: Option<String>,
        #[arg(long, default_value_t = 2)]
        order: usize,
    },
    /// The convolution complex of an associative product and its Maurer–Cartan verdict.
    Hochschild {
        #[command(flatten)]
        common: Common,
    },
}

/// Exit code and rendered output of one invocation.
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let mut report = Report::new(echo);
    match execute(&cli.command, &mut report) {
        Ok(()) => {
            if !cli.no_timing {
                report.elapsed_us = Some(start.elapsed().as_micros());
            }
            Outcome {
                code: report.verdict.exit_code(),
                stdout: report.render(cli.format),
                stderr: String::new(),
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn common(c: &Command) -> &Common {
    match c {
        Command::Verify(c) | Command::Truncate(c) | Command::McSystem(c) => c,
        Command::McResidual { common, .. }
        | Command::Twist { common, .. }
        | Command::Lift { common, .. }
        | Command::GaugeAct { common, .. }
        | Command::GaugeConnect { common, .. }
        | Command::Bch { common, .. }
        | Command::SimplexVerify { common, .. }
        | Command::Pi0 { common, .. }
        | Command::MorphismVerify { common, .. }
        | Command::GmCheck { common, .. }
        | Command::Tangent { common, .. }
        | Command::Hochschild { common } => common,
    }
}

pub fn execute(command: &Command, report: &mut Report) -> Result<(), CliError> {
    let c = common(command);
    let doc = load_document(&c.file)?;
    let mut opts = Options {
        truncation: c.truncation,
        arity_bound: c.arity_bound,
        order: 2,
        t_degree: None,
    };
    if opts.truncation == 0 {
        return Err(CliError::Input("--truncation must be at least 1".into()));
    }
    match command {
        Command::Verify(_) => commands::verify(&doc, &opts, report),
        Command::Truncate(_) => commands::truncate_cmd(&doc, &opts, report),
        Command::McResidual { element, .. } => commands::mc_residual_cmd(&doc, element.as_deref(), report),
        Command::McSystem(_) => commands::mc_system(&doc, &opts, report),
        Command::Twist { element, .. } => commands::twist_cmd(&doc, &opts, element.as_deref(), report),
        Command::Lift { element, order, .. } => {
            opts.order = *order;
            commands::lift(&doc, &opts, element.as_deref(), report)
        }
        Command::GaugeAct { xi, element, .. } => {
            commands::gauge_act_cmd(&doc, &opts, xi, element.as_deref(), report)
        }
        Command::GaugeConnect { xi, element, t_degree, .. } => {
            opts.t_degree = *t_degree;
            commands::gauge_connect(&doc, &opts, xi, element.as_deref(), report)
        }
        Command::Bch { x, y, .. } => commands::bch_cmd(&doc, &opts, x, y, report),
        Command::SimplexVerify {
            simplex,
            dim,
            from_gauge,
            xi,
            element,
            t_degree,
            ..
        } => {
            opts.t_degree = *t_degree;
            commands::simplex_verify(&doc, &opts, simplex, *dim, *from_gauge, xi, element.as_deref(), report)
        }
        Command::Pi0 { element, coefficients, .. } => {
            commands::pi0_cmd(&doc, &opts, element.as_deref(), coefficients, report)
        }
        Command::MorphismVerify { fibration, twist_element, .. } => {
            commands::morphism_verify(&doc, &opts, *fibration, twist_element.as_deref(), report)
        }
        Command::GmCheck { order, .. } => {
            opts.order = *order;
            commands::gm_check(&doc, &opts, report)
        }
        Command::Tangent { element, order, .. } => {
            opts.order = *order;
            commands::tangent_cmd(&doc, &opts, element.as_deref(), report)
        }
        Command::Hochschild { .. } => commands::hochschild(&doc, &opts, report),
    }
}
