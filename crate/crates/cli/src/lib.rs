//! Command-line front end for `nilsupport-core`: the module-expression
//! syntax, JSON/CSV encodings, and the `nilsupport` subcommands.

pub mod dsl;
pub mod formats;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nilsupport_core::liealg::{enumerate_cr, sample_cr, DEFAULT_REJECTION_LIMIT};
use nilsupport_core::oneparam::exp_degree_bound;
use nilsupport_core::repcore::{is_irreducible_with, GeneratorSet};
use nilsupport_core::support::verify::DEFAULT_ITEMS;
use nilsupport_core::support::{
    alpha_operator, enumerate_support, jordan_type, mu_operator, sample_support, verify_grid, Grid,
    VerifyConfig,
};
use nilsupport_core::{Error, Field, FieldSpec, ModuleExpr, DEFAULT_BUDGET};

use formats::{FieldJson, MatrixJson, TupleJson};

pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INVARIANT: i32 = 4;

/// Overrides the default candidate budget.
pub const BUDGET_ENV: &str = "NILSUPPORT_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "nilsupport",
    version,
    about = "Support varieties of GL_n-modules over finite fields"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Maximum number of candidates an exhaustive search may scan.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Characteristic.
    #[arg(long, default_value_t = 2)]
    pub p: u32,
    /// Degree of the field over F_p.
    #[arg(long, default_value_t = 1)]
    pub m: u32,
    /// Monic irreducible modulus for m > 1, lowest coefficient first, e.g. 1,1,1.
    #[arg(long, value_delimiter = ',')]
    pub modulus: Vec<u32>,
}

impl FieldArgs {
    fn field(&self) -> Result<Field, CliError> {
        let json = FieldJson {
            p: self.p,
            m: self.m,
            modulus: self.modulus.clone(),
        };
        json.to_field().map_err(CliError::input)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OperatorKind {
    Alpha,
    Mu,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Generators {
    Algebraic,
    FiniteGroup,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Jordan type of the local operator of a module at a tuple.
    Jordan {
        #[arg(long)]
        module: String,
        /// JSON file holding the tuple.
        #[arg(long)]
        tuple: PathBuf,
        #[arg(long, value_enum, default_value_t = OperatorKind::Alpha)]
        operator: OperatorKind,
    },
    /// Support membership over all or sampled points.
    Support {
        #[command(subcommand)]
        action: SupportAction,
    },
    /// Torus weights with multiplicities.
    Weights {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Exponential degree bound of a module.
    Expdeg {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 2)]
        p: u32,
    },
    /// Exhaustive irreducibility test.
    Irreducible {
        #[arg(long)]
        module: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, value_enum, default_value_t = Generators::Algebraic)]
        generators: Generators,
    },
    /// Property suite over a named grid.
    Verify {
        #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ITEMS.to_vec())]
        items: Vec<u8>,
        #[arg(long, default_value = "tiny")]
        grid: String,
        #[arg(long, default_value_t = 50)]
        conjugations: usize,
    },
    /// Points of the commuting nilpotent variety.
    Cr {
        #[command(subcommand)]
        action: CrAction,
    },
}

#[derive(Subcommand, Debug)]
pub enum SupportAction {
    Enumerate {
        #[arg(long)]
        module: String,
        /// Matrix size; defaults to the module's.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
    Sample {
        #[arg(long)]
        module: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum CrAction {
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        r: usize,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[command(flatten)]
        field: FieldArgs,
    },
}

/// An error with its process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    /// Bad input data: unparseable text, or values that fail validation.
    pub fn input(e: impl fmt::Display) -> CliError {
        CliError {
            code: EXIT_PARSE,
            message: e.to_string(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match &e {
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::InvariantBreach(_) => EXIT_INVARIANT,
            Error::InvalidField(_)
            | Error::InvalidModule(_)
            | Error::InvalidArgument(_)
            | Error::NotNilpotent { .. }
            | Error::NotCommuting { .. } => EXIT_PARSE,
            _ => EXIT_USAGE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> CliError {
        CliError::usage(e.to_string())
    }
}

/// Output text and the exit code to finish with.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

/// `--budget`, else the environment override, else the default.
pub fn resolve_budget(flag: Option<u64>) -> Result<u64, CliError> {
    let budget = match flag {
        Some(b) => b,
        None => match std::env::var(BUDGET_ENV) {
            Ok(v) => v.trim().parse().map_err(|_| {
                CliError::usage(format!("{BUDGET_ENV}={v} is not a natural number"))
            })?,
            Err(_) => DEFAULT_BUDGET,
        },
    };
    if budget == 0 {
        return Err(CliError::usage("budget must be positive"));
    }
    Ok(budget)
}

fn module(text: &str) -> Result<ModuleExpr, CliError> {
    dsl::parse(text).map_err(CliError::input)
}

fn matrix_size(module: &ModuleExpr, n: Option<usize>) -> Result<usize, CliError> {
    match (n, module.n()) {
        (Some(n), 0) => Ok(n),
        (Some(n), k) if n == k => Ok(n),
        (Some(n), k) => Err(CliError::usage(format!(
            "--n {n} does not match the module's n = {k}"
        ))),
        (None, 0) => Err(CliError::usage(
            "--n is required for modules without def/ad leaves",
        )),
        (None, k) => Ok(k),
    }
}

fn line(s: impl fmt::Display) -> String {
    format!("{s}\n")
}

/// Runs one parsed command and renders its output.
pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let common = &cli.common;
    let budget = resolve_budget(common.budget)?;
    let csv = common.format == Format::Csv;
    match &cli.command {
        Command::Jordan {
            module: text,
            tuple,
            operator,
        } => {
            let e = module(text)?;
            let raw = std::fs::read_to_string(tuple)
                .map_err(|err| CliError::usage(format!("{}: {err}", tuple.display())))?;
            let tj: TupleJson = serde_json::from_str(&raw).map_err(CliError::input)?;
            let t = tj.to_tuple()?;
            let op = match operator {
                OperatorKind::Alpha => alpha_operator(&e, &t)?,
                OperatorKind::Mu => mu_operator(&e, &t)?,
            };
            let jt = jordan_type(&op)?;
            let in_support = !op.is_free();
            if csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["module", "tuple", "operator", "jordan_type", "in_support"])?;
                w.write_record([
                    e.to_string().as_str(),
                    &formats::tuple_cell(&t),
                    if *operator == OperatorKind::Alpha {
                        "alpha"
                    } else {
                        "mu"
                    },
                    &jt.to_string(),
                    if in_support { "true" } else { "false" },
                ])?;
                let bytes = w
                    .into_inner()
                    .map_err(|err| CliError::usage(err.to_string()))?;
                return Ok(Output::ok(String::from_utf8(bytes).expect("utf-8")));
            }
            #[derive(serde::Serialize)]
            struct JordanJson {
                module: String,
                tuple: TupleJson,
                operator: &'static str,
                matrix: MatrixJson,
                jordan_type: Vec<usize>,
                in_support: bool,
            }
            Ok(Output::ok(formats::pretty(&JordanJson {
                module: e.to_string(),
                tuple: (&t).into(),
                operator: if *operator == OperatorKind::Alpha {
                    "alpha"
                } else {
                    "mu"
                },
                matrix: op.matrix().into(),
                jordan_type: jt.parts().to_vec(),
                in_support,
            })))
        }
        Command::Support { action } => {
            let rep = match action {
                SupportAction::Enumerate {
                    module: text,
                    n,
                    r,
                    field,
                } => {
                    let e = module(text)?;
                    let n = matrix_size(&e, *n)?;
                    enumerate_support(&e, n, *r, &field.field()?, budget)?
                }
                SupportAction::Sample {
                    module: text,
                    n,
                    r,
                    count,
                    field,
                } => {
                    let e = module(text)?;
                    let n = matrix_size(&e, *n)?;
                    sample_support(&e, n, *r, &field.field()?, common.seed, *count)?
                }
            };
            Ok(Output::ok(if csv {
                formats::support_csv(&rep)?
            } else {
                formats::support_json(&rep)
            }))
        }
        Command::Weights { module: text, p } => {
            let e = module(text)?;
            Field::new(FieldSpec::prime(*p))?;
            let table = e.weights(*p);
            Ok(Output::ok(if csv {
                formats::weights_csv(&table)?
            } else {
                formats::weights_json(&e.to_string(), *p, &table)
            }))
        }
        Command::Expdeg { module: text, p } => {
            let e = module(text)?;
            Field::new(FieldSpec::prime(*p))?;
            Ok(Output::ok(line(exp_degree_bound(&e, *p))))
        }
        Command::Irreducible {
            module: text,
            field,
            generators,
        } => {
            let e = module(text)?;
            let f = field.field()?;
            let set = match generators {
                Generators::Algebraic => GeneratorSet::Algebraic,
                Generators::FiniteGroup => GeneratorSet::FiniteGroup,
            };
            let irreducible = is_irreducible_with(&e, &f, budget, set)?;
            let gens = if set == GeneratorSet::Algebraic {
                "algebraic"
            } else {
                "finite-group"
            };
            if csv {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(["module", "field", "generators", "irreducible"])?;
                w.write_record([
                    e.to_string().as_str(),
                    &f.spec().to_string(),
                    gens,
                    if irreducible { "true" } else { "false" },
                ])?;
                let bytes = w
                    .into_inner()
                    .map_err(|err| CliError::usage(err.to_string()))?;
                return Ok(Output::ok(String::from_utf8(bytes).expect("utf-8")));
            }
            #[derive(serde::Serialize)]
            struct IrreducibleJson {
                module: String,
                field: FieldJson,
                dim: usize,
                generators: &'static str,
                irreducible: bool,
            }
            Ok(Output::ok(formats::pretty(&IrreducibleJson {
                module: e.to_string(),
                field: f.spec().into(),
                dim: e.dim(),
                generators: gens,
                irreducible,
            })))
        }
        Command::Verify {
            items,
            grid,
            conjugations,
        } => {
            let g = Grid::preset(grid)
                .ok_or_else(|| CliError::usage(format!("unknown grid '{grid}'")))?;
            if let Some(bad) = items.iter().find(|&&i| !(1..=8).contains(&i)) {
                return Err(CliError::usage(format!("no property item {bad}")));
            }
            let config = VerifyConfig {
                items: items.clone(),
                seed: common.seed,
                conjugations: *conjugations,
            };
            let rep = verify_grid(&g, &config, budget)?;
            let text = if csv {
                formats::verify_csv(&rep)?
            } else {
                formats::verify_json(&rep, *conjugations)
            };
            Ok(Output {
                text,
                code: if rep.all_passed() { 0 } else { EXIT_INVARIANT },
            })
        }
        Command::Cr { action } => {
            let (f, n, r, scope, tuples) = match action {
                CrAction::Enumerate { n, r, field } => {
                    let f = field.field()?;
                    let tuples: Vec<_> = enumerate_cr(*n, *r, &f, budget)?.collect();
                    (f, *n, *r, "enumerate", tuples)
                }
                CrAction::Sample { n, r, count, field } => {
                    let f = field.field()?;
                    let tuples = (0..*count as u64)
                        .map(|i| {
                            sample_cr(
                                *n,
                                *r,
                                &f,
                                common.seed.wrapping_add(i),
                                DEFAULT_REJECTION_LIMIT,
                            )
                        })
                        .collect::<Vec<_>>();
                    (f, *n, *r, "sample", tuples)
                }
            };
            Ok(Output::ok(if csv {
                formats::tuples_csv(&f, &tuples)?
            } else {
                formats::tuples_json(&f, n, r, scope, &tuples)
            }))
        }
    }
}

/// Parses arguments, runs, writes output, and returns the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let out = match run(&cli) {
        Ok(out) => out,
        Err(e) => {
            eprintln!("error: {e}");
            return e.code;
        }
    };
    let written = match &cli.common.out {
        Some(path) => std::fs::write(path, out.text.as_bytes()),
        None => std::io::stdout().lock().write_all(out.text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    out.code
}
