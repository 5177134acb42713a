//! Command-line front end: normal forms, equality, composition, enumeration,
//! verification suites and model evaluation, all reported as JSON.

pub mod term;

use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use eqprop_core::composites::{CompositeMorphism, DJGMorphism};
use eqprop_core::crossed::{Element, Family};
use eqprop_core::groups::FiniteGroup;
use eqprop_core::ncsets::{GFMap, NCSetMap};
use eqprop_core::ordmaps::OrderedMap;
use eqprop_core::semantics::BimonoidModel;
use eqprop_core::suites;

use term::Term;

#[derive(Debug, Parser)]
#[command(name = "eqprop", version, about = "Compute with equivariant PROPs and PROBs")]
pub struct Cli {
    /// symmetric, hyperoctahedral, braid or ribbon
    #[arg(long, global = true, default_value = "symmetric")]
    pub family: Family,
    /// A builtin group (trivial, c2, c3, ..., s3) or a group JSON file
    #[arg(long, global = true, default_value = "trivial")]
    pub group: String,
    #[arg(long, global = true, default_value_t = 3)]
    pub max_n: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Indented JSON
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical triple of a term
    Nf { term: String },
    /// Exit 0 when both terms denote the same morphism, 1 otherwise
    Eq { left: String, right: String },
    /// `first` then `second`
    Compose { first: String, second: String },
    /// Enumerate a hom-set
    Enum {
        #[arg(long, value_enum)]
        cat: EnumCategory,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Largest middle for spans
        #[arg(long, default_value_t = 2)]
        max_middle: usize,
        /// Print the morphisms as well as the count
        #[arg(long)]
        list: bool,
    },
    /// Run a verification suite; exit 1 on any failure
    Check {
        #[arg(long, value_enum)]
        suite: SuiteName,
        #[arg(long)]
        samples: Option<usize>,
        /// Model JSON for the semantics suite; defaults to the builtin models
        #[arg(long)]
        model: Option<PathBuf>,
    },
    /// Evaluate a term as a matrix in a model
    Interp {
        #[arg(long)]
        model: PathBuf,
        term: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnumCategory {
    /// Monotone maps
    Delta,
    /// Group elements of the chosen family with labels
    Elements,
    /// Pairs (monotone map, labelled element)
    Dpg,
    /// Labelled non-commutative set maps
    Gfas,
    /// Labelled set maps
    Gf,
    /// Canonical span triples up to the given middle
    Spans,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Category,
    Crossed,
    Rewrite,
    Iso,
    Semantics,
}

/// What a command produced: an exit code and a JSON document.
pub struct Outcome {
    pub code: i32,
    pub output: Value,
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

pub fn load_group(spec: &str) -> Result<Arc<FiniteGroup>, UsageError> {
    if let Some(g) = FiniteGroup::builtin(spec) {
        return Ok(Arc::new(g));
    }
    let text = std::fs::read_to_string(spec).map_err(|e| UsageError(format!("group {spec:?}: {e}")))?;
    Ok(Arc::new(FiniteGroup::from_json(&text)?))
}

fn evaluate(text: &str, family: Family, group: &Arc<FiniteGroup>) -> Result<(Term, CompositeMorphism), UsageError> {
    let t = term::parse(text)?;
    let c = t.evaluate(family, group)?;
    Ok((t, c))
}

fn described(t: &Term, c: &CompositeMorphism) -> Value {
    json!({
        "term": t.to_string(),
        "normal_form": c.to_json(),
        "text": c.to_string(),
    })
}

/// Runs a parsed command line.
pub fn run(cli: &Cli) -> Result<Outcome, UsageError> {
    let ok = |output| Ok(Outcome { code: 0, output });
    match &cli.command {
        Command::Nf { term } => {
            let group = load_group(&cli.group)?;
            let (t, c) = evaluate(term, cli.family, &group)?;
            ok(described(&t, &c))
        }
        Command::Eq { left, right } => {
            let group = load_group(&cli.group)?;
            let (lt, lc) = evaluate(left, cli.family, &group)?;
            let (rt, rc) = evaluate(right, cli.family, &group)?;
            let equal = lc == rc;
            Ok(Outcome {
                code: if equal { 0 } else { 1 },
                output: json!({
                    "equal": equal,
                    "left": described(&lt, &lc),
                    "right": described(&rt, &rc),
                }),
            })
        }
        Command::Compose { first, second } => {
            let group = load_group(&cli.group)?;
            let (ft, fc) = evaluate(first, cli.family, &group)?;
            let (st, sc) = evaluate(second, cli.family, &group)?;
            let c = sc.compose(&fc)?;
            let t = Term::Seq(Box::new(ft), Box::new(st));
            ok(described(&t, &c))
        }
        Command::Enum {
            cat,
            n,
            m,
            max_middle,
            list,
        } => {
            let group = load_group(&cli.group)?;
            enumerate(*cat, cli.family, &group, *n, *m, *max_middle, *list)
        }
        Command::Check { suite, samples, model } => {
            let group = load_group(&cli.group)?;
            let report = run_suite(*suite, cli, &group, *samples, model.as_ref())?;
            Ok(Outcome {
                code: if report.passed { 0 } else { 1 },
                output: serde_json::to_value(report)?,
            })
        }
        Command::Interp { model, term } => {
            let text = std::fs::read_to_string(model).map_err(|e| UsageError(format!("model {model:?}: {e}")))?;
            let model = BimonoidModel::from_json(&text)?;
            let failures = model.verify();
            let (t, c) = evaluate(term, cli.family, model.group())?;
            let matrix = model.eval_composite(&c)?;
            ok(json!({
                "term": t.to_string(),
                "p": matrix.modulus(),
                "rows": matrix.rows(),
                "cols": matrix.cols(),
                "matrix": matrix.to_rows(),
                "model_axiom_failures": failures,
            }))
        }
    }
}

fn enumerate(
    cat: EnumCategory,
    family: Family,
    group: &Arc<FiniteGroup>,
    n: usize,
    m: usize,
    max_middle: usize,
    list: bool,
) -> Result<Outcome, UsageError> {
    fn strings<T: ToString>(items: &[T]) -> Vec<String> {
        items.iter().map(ToString::to_string).collect()
    }
    let infinite = || UsageError(format!("the {family} hom-set is infinite"));
    let (items, formula): (Vec<String>, Option<u128>) = match cat {
        EnumCategory::Delta => (strings(&OrderedMap::enumerate(n, m)), Some(suites::monotone_count(n, m))),
        EnumCategory::Elements => {
            let items = if n == m {
                Element::enumerate(family, group, n).ok_or_else(infinite)?
            } else {
                Vec::new()
            };
            (strings(&items), None)
        }
        EnumCategory::Dpg => {
            let items = DJGMorphism::enumerate(family, group, n, m).ok_or_else(infinite)?;
            let formula = (family == Family::Symmetric).then(|| suites::djg_count_formula(n, m, group.order()));
            (strings(&items), formula)
        }
        EnumCategory::Gfas => (
            strings(&NCSetMap::enumerate(group, n, m)),
            Some(suites::ncset_count_by_fibres(n, m, group.order())),
        ),
        EnumCategory::Gf => (strings(&GFMap::enumerate(group, n, m)), None),
        EnumCategory::Spans => (
            strings(&CompositeMorphism::enumerate(family, group, n, m, max_middle).ok_or_else(infinite)?),
            None,
        ),
    };
    let mut out = json!({
        "category": format!("{cat:?}").to_lowercase(),
        "family": family.name(),
        "group_order": group.order(),
        "n": n,
        "m": m,
        "count": items.len(),
    });
    if let Some(f) = formula {
        out["formula"] = json!(f.to_string());
        out["matches_formula"] = json!(f == items.len() as u128);
    }
    if cat == EnumCategory::Spans {
        out["max_middle"] = json!(max_middle);
    }
    if list {
        out["items"] = json!(items);
    }
    Ok(Outcome { code: 0, output: out })
}

fn run_suite(
    suite: SuiteName,
    cli: &Cli,
    group: &Arc<FiniteGroup>,
    samples: Option<usize>,
    model: Option<&PathBuf>,
) -> Result<suites::SuiteReport, UsageError> {
    let max_n = cli.max_n;
    let seed = cli.seed;
    Ok(match suite {
        SuiteName::Category => {
            suites::category_suite(cli.family, group, max_n.min(2), max_n, samples.unwrap_or(300), seed)
        }
        SuiteName::Crossed => suites::crossed_suite(cli.family, group, max_n, samples.unwrap_or(500), seed),
        SuiteName::Rewrite => suites::rewrite_suite(group, max_n, max_n.min(2), samples.unwrap_or(2000), seed),
        SuiteName::Iso => suites::iso_suite(group, max_n, max_n.min(2)),
        SuiteName::Semantics => {
            let model = match model {
                Some(path) => {
                    let text =
                        std::fs::read_to_string(path).map_err(|e| UsageError(format!("model {path:?}: {e}")))?;
                    Some(BimonoidModel::from_json(&text)?)
                }
                None => None,
            };
            suites::semantics_suite(model.as_ref(), samples.unwrap_or(200), max_n, seed)?
        }
    })
}

/// Parses `args`, runs the command and renders the result:
/// `(exit code, stdout, stderr)`.
pub fn run_from_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (2, String::new(), text)
            };
        }
    };
    let render = |v: &Value| {
        if cli.pretty {
            serde_json::to_string_pretty(v).expect("plain JSON")
        } else {
            v.to_string()
        }
    };
    match run(&cli) {
        Ok(outcome) => (outcome.code, render(&outcome.output) + "\n", String::new()),
        Err(UsageError(msg)) => (2, String::new(), render(&json!({ "error": msg })) + "\n"),
    }
}
