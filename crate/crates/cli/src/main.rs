//! `mindex`: multi-index counterterm tables, model equations and property checks.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use mindex::check::{run_named, CheckConfig, Context, SUITES};
use mindex::deriv::Generator;
use mindex::enumerate::{counterterm_set_with_budget, enumerate_below, filter_symmetric, PopulationClass, DEFAULT_NODE_BUDGET};
use mindex::envelope::Envelope;
use mindex::grading::bracket;
use mindex::renorm::{model_equations, reduced_constants, renormalized_equation, RenormFlags, MOD_POLYNOMIALS_NOTE};
use mindex::spec::parse_spec_json;
use mindex::tree::{parse_tree, psi};
use mindex::{builtin_spec, DerivativeWord, EquationSpec, Error, Homogeneity, MultiIndex};

#[derive(Parser)]
#[command(name = "mindex", version, about = "Multi-index regularity structures for semi-linear SPDEs")]
struct Cli {
    #[command(flatten)]
    source: Source,

    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Upper bound on search nodes before the enumerator gives up.
    #[arg(long, global = true, default_value_t = DEFAULT_NODE_BUDGET)]
    node_budget: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// One of phi4_3, she_mult_1d, gkpz.
    #[arg(long, global = true, conflicts_with = "spec")]
    builtin: Option<String>,

    /// A JSON equation specification.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

#[derive(Args, Clone, Copy)]
struct Symmetry {
    /// Keep only reflection-even multi-indices.
    #[arg(long)]
    spatial: bool,
    /// Keep only multi-indices with an even number of noises.
    #[arg(long)]
    noise_even: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate the specification, then print it back.
    Validate,
    /// List the populated multi-indices of a class below a homogeneity cap.
    Enumerate {
        #[arg(long, default_value = "N")]
        class: PopulationClass,
        /// `BASE` or `BASE,KAPPA`, e.g. `-1/2` or `0,-1`.
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        cap: Homogeneity,
    },
    /// The multi-indices that carry renormalization constants.
    Counterterms {
        #[command(flatten)]
        symmetry: Symmetry,
    },
    /// Right-hand sides of the model equations below the cap.
    ModelEqs {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        cap: Homogeneity,
        /// Insert the renormalization constants.
        #[arg(long)]
        with_constants: bool,
        #[command(flatten)]
        symmetry: Symmetry,
        /// Merge constants whose model components are proportional.
        #[arg(long)]
        merge_redundant: bool,
    },
    /// The renormalized equation with its free constants.
    Renormalized {
        #[command(flatten)]
        symmetry: Symmetry,
        #[arg(long)]
        merge_redundant: bool,
    },
    /// Decorated-tree utilities.
    Tree {
        #[command(subcommand)]
        action: TreeAction,
    },
    /// Run the seeded property suites.
    Check {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        cap: Homogeneity,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Restrict to the named suites; repeatable.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Nonzero entries of one generator on the truncation below the cap.
    OpMatrix {
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        cap: Homogeneity,
        /// The multi-index of `z^gamma D^(n)`.
        #[arg(long, requires = "word", conflicts_with = "shift")]
        gamma: Option<String>,
        /// The derivative word `n`, comma separated.
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<u32>>,
        /// The shift along an axis instead.
        #[arg(long)]
        shift: Option<usize>,
    },
}

#[derive(Subcommand)]
enum TreeAction {
    /// The coefficient and multi-index of a tree, e.g. `Xi(0; I[0,1](Xi(xi)), I[0,1](Xi(xi)))`.
    Psi {
        #[arg(long)]
        tree: String,
    },
}

enum Failure {
    Invalid(Error),
    Checks(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

fn load(source: &Source) -> Result<EquationSpec, Failure> {
    match (&source.builtin, &source.spec) {
        (Some(name), None) => Ok(builtin_spec(name)?),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
            Ok(parse_spec_json(&text)?)
        }
        _ => Err(Failure::Usage("pass exactly one of --builtin NAME or --spec FILE".into())),
    }
}

fn record(spec: &EquationSpec, beta: &MultiIndex) -> Value {
    json!({
        "multiindex": spec.mi_to_json(beta),
        "notation": spec.format_mi(beta),
        "homogeneity": spec.homogeneity(beta).to_string(),
        "bracket": bracket(beta),
        "noise_hom": spec.noise_homogeneity(beta),
    })
}

fn listing(spec: &EquationSpec, set: &[MultiIndex], format: Format) -> String {
    match format {
        Format::Json => pretty(&Value::Array(set.iter().map(|b| record(spec, b)).collect())),
        Format::Text => set.iter().fold(String::new(), |mut out, b| {
            let _ = writeln!(out, "{:>10}  {}", spec.homogeneity(b).to_string(), spec.format_mi(b));
            out
        }),
        Format::Latex => set.iter().fold(String::new(), |mut out, b| {
            let _ = writeln!(out, "{} & {} \\\\", spec.latex_mi(b), spec.homogeneity(b));
            out
        }),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn line(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}

fn flags(symmetry: Symmetry, merge_redundant: bool) -> RenormFlags {
    RenormFlags { spatial: symmetry.spatial, noise_even: symmetry.noise_even, merge_redundant }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let spec = load(&cli.source)?;
    let budget = cli.node_budget;
    let out = match cli.command {
        Command::Validate => match cli.format.unwrap_or(Format::Text) {
            Format::Json => spec.render_json() + "\n",
            _ => {
                let labels: Vec<String> = spec.labels().map(|l| spec.noise(l).name.clone()).collect();
                format!("ok: {} (d = {}, labels {})\n", spec.name, spec.dim, labels.join(", "))
            }
        },
        Command::Enumerate { class, cap } => {
            if class == PopulationClass::Outside {
                return Err(Failure::Usage("--class must be N, Nbar or P".into()));
            }
            let set = mindex::enumerate::Enumerator::new(&spec).with_node_budget(budget).below(cap, class)?;
            listing(&spec, &set, cli.format.unwrap_or(Format::Json))
        }
        Command::Counterterms { symmetry } => {
            let sym = spec.with_symmetry(symmetry.spatial, symmetry.noise_even);
            let set = filter_symmetric(&counterterm_set_with_budget(&sym, budget)?, &sym);
            listing(&sym, &set, cli.format.unwrap_or(Format::Json))
        }
        Command::ModelEqs { cap, with_constants, symmetry, merge_redundant } => {
            let (sym, constants, _) = reduced_constants(&spec, flags(symmetry, merge_redundant), budget)?;
            let constants = if with_constants { constants } else { Vec::new() };
            let set = enumerate_below(&sym, cap, PopulationClass::N)?;
            let env = Envelope::new(&sym);
            let eqs = model_equations(&env, &set, &constants)?;
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => pretty(&json!({
                    "note": MOD_POLYNOMIALS_NOTE,
                    "constants": constants.iter().map(|b| sym.format_mi(b)).collect::<Vec<_>>(),
                    "equations": eqs.iter().map(|e| e.to_json(&sym)).collect::<Vec<_>>(),
                })),
                Format::Text => {
                    let mut out: String = eqs.iter().map(|e| e.render_text(&sym) + "\n").collect();
                    let _ = writeln!(out, "({MOD_POLYNOMIALS_NOTE})");
                    out
                }
                Format::Latex => {
                    let body: Vec<String> = eqs.iter().map(|e| e.render_latex(&sym)).collect();
                    format!("\\begin{{align*}}\n{}\n\\end{{align*}}\n% {MOD_POLYNOMIALS_NOTE}\n", body.join(" \\\\\n"))
                }
            }
        }
        Command::Renormalized { symmetry, merge_redundant } => {
            let eq = renormalized_equation(&spec, flags(symmetry, merge_redundant), budget)?;
            match cli.format.unwrap_or(Format::Latex) {
                Format::Json => pretty(&eq.to_json()),
                Format::Text => line(eq.render_text()),
                Format::Latex => line(eq.render_latex()),
            }
        }
        Command::Tree { action: TreeAction::Psi { tree } } => {
            let t = parse_tree(&tree, &spec)?;
            let (coeff, beta) = psi(&t);
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => pretty(&json!({
                    "tree": t.render(&spec),
                    "coefficient": coeff.to_string(),
                    "multiindex": spec.mi_to_json(&beta),
                    "notation": spec.format_mi(&beta),
                    "bracket": bracket(&beta),
                })),
                _ => format!("{} -> {} * {}\n", t.render(&spec), coeff, spec.format_mi(&beta)),
            }
        }
        Command::Check { cap, seed, suites } => {
            let known: Vec<&str> = SUITES.iter().map(|(n, _)| *n).collect();
            if let Some(bad) = suites.iter().find(|s| !known.contains(&s.as_str())) {
                return Err(Failure::Usage(format!("unknown suite `{bad}`; available: {}", known.join(", "))));
            }
            let names: Vec<&str> = if suites.is_empty() { known } else { suites.iter().map(String::as_str).collect() };
            let cfg = CheckConfig { cap, seed, ..CheckConfig::default() };
            let reports = run_named(&spec, &cfg, &names)?;
            let mut out = String::new();
            for r in &reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{status} {:<14} {} cases", r.name, r.cases);
                for f in &r.failures {
                    let _ = writeln!(out, "    {f}");
                }
            }
            if reports.iter().all(|r| r.passed()) {
                out
            } else {
                return Err(Failure::Checks(out));
            }
        }
        Command::OpMatrix { cap, gamma, word, shift } => {
            let g = match (gamma, word, shift) {
                (Some(g), Some(n), None) => {
                    if n.len() != spec.dim {
                        return Err(Failure::Usage(format!("--word needs {} entries", spec.dim)));
                    }
                    Generator::Deriv { gamma: spec.parse_mi(&g)?, n: DerivativeWord::from_slice(&n) }
                }
                (None, None, Some(axis)) if axis < spec.dim => Generator::Shift(axis),
                _ => return Err(Failure::Usage("pass --gamma with --word, or --shift AXIS".into())),
            };
            let ctx = Context::new(&spec, cap)?;
            let mut rows = Vec::new();
            for col in &ctx.columns {
                for (beta, c) in ctx.alg().generator_column(&g, col) {
                    rows.push((spec.format_mi(&beta), spec.format_mi(col), c.to_string()));
                }
            }
            match cli.format.unwrap_or(Format::Text) {
                Format::Json => pretty(&Value::Array(
                    rows.iter().map(|(b, g, c)| json!({"row": b, "column": g, "coefficient": c})).collect(),
                )),
                _ => rows.iter().fold(String::new(), |mut out, (b, g, c)| {
                    let _ = writeln!(out, "[{b}] <- [{g}]: {c}");
                    out
                }),
            }
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(64);
        }
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Checks(out)) => {
            print!("{out}");
            eprintln!("property checks failed");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("usage: {msg}");
            ExitCode::from(64)
        }
    }
}
