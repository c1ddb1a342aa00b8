use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hopfcyc::scalar::{Field, FieldSpec};
use hopfcyc::simplicial::Family;
use serde_json::json;

use crate::file::{self, Loaded, K};
use crate::suites::{run_report, Config, EvalObject, Suite, REPORT_SCHEMA};

/// Exact verifier for the Connes-Moscovici paracocyclic object of Hopf algebras
/// in braided categories.
///
/// Generator words are written right to left and joined with '.', e.g.
/// "t(2).d(2,0)": first the coface d(2,0) into level 2, then t(2).
/// Generators: d(n,i) coface into level n, s(n,j) codegeneracy onto level n,
/// t(n) and t^-1(n) the cyclic operator on level n; "id(n)" is the empty word.
#[derive(Parser, Debug)]
#[command(name = "hopfcyc", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hopf axioms, modular pairs and the identity suite
    Verify(Common),
    /// Relation families of the paracocyclic objects
    Relations(Common),
    /// Powers of tau_n against the closed formulas
    Powers(Common),
    /// Solve for traces and check the trace morphism
    Traces(Common),
    /// Cyclic cohomology of the transported modules
    Homology(Common),
    /// Evaluate a generator word
    Eval(Common),
    /// Every suite
    Report(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Built-in algebra: trivial, group_c2, group_s3, sweedler, anyonic_line_q
    #[arg(long, conflicts_with = "file")]
    pub builtin: Option<String>,
    /// Algebra JSON file
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// q for anyonic_line_q, e.g. -1 or z (with --cyclotomic)
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<String>,
    /// Cyclotomic order used to read --q
    #[arg(long)]
    pub cyclotomic: Option<u32>,
    /// Restrict to one modular pair by name (default: all)
    #[arg(long)]
    pub pair: Option<String>,
    #[arg(long, default_value_t = 4)]
    pub n_max: usize,
    /// Comma separated: SR, PCR, CC, TwistedCC
    #[arg(long, default_value = "SR,PCR")]
    pub families: String,
    #[arg(long, default_value_t = 6)]
    pub degree_bound: usize,
    /// Word for `eval`
    #[arg(long)]
    pub word: Option<String>,
    /// Object for `eval`: cm or c
    #[arg(long, default_value = "cm")]
    pub object: String,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Command {
    fn parts(&self) -> (&'static str, &Common, Vec<Suite>) {
        use Suite::*;
        match self {
            Command::Verify(c) => ("verify", c, vec![Axioms, Lemmas]),
            Command::Relations(c) => ("relations", c, vec![Relations]),
            Command::Powers(c) => ("powers", c, vec![Powers]),
            Command::Traces(c) => ("traces", c, vec![Traces]),
            Command::Homology(c) => ("homology", c, vec![Homology]),
            Command::Eval(c) => ("eval", c, vec![Eval]),
            Command::Report(c) => ("report", c, vec![Axioms, Relations, Powers, Lemmas, Traces, Homology]),
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error(transparent)]
    Load(#[from] file::LoadError),
    #[error(transparent)]
    Core(#[from] hopfcyc::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {0}: {1}")]
    Io(String, std::io::Error),
}

fn load(c: &Common) -> Result<(String, Loaded), AppError> {
    match (&c.builtin, &c.file) {
        (Some(name), None) => {
            let q = match &c.q {
                None => None,
                Some(s) => {
                    let spec = match c.cyclotomic {
                        Some(n) => FieldSpec::cyclotomic(n)?,
                        None => FieldSpec::Rationals,
                    };
                    Some(K::parse(s, spec)?)
                }
            };
            Ok((format!("builtin:{name}"), file::builtin(name, q)?))
        }
        (None, Some(path)) => Ok((path.display().to_string(), file::load_algebra(path)?)),
        _ => Err(AppError::Usage("give exactly one of --builtin or --file".into())),
    }
}

fn config(c: &Common) -> Result<Config, AppError> {
    let families = c.families.split(',').filter(|s| !s.trim().is_empty()).map(Family::parse).collect::<hopfcyc::Result<Vec<_>>>()?;
    let object = match c.object.as_str() {
        "cm" => EvalObject::Cm,
        "c" => EvalObject::C,
        o => return Err(AppError::Usage(format!("unknown object {o:?}, expected cm or c"))),
    };
    Ok(Config {
        n_max: c.n_max,
        degree_bound: c.degree_bound.max(1),
        pair: c.pair.clone(),
        families,
        word: c.word.clone(),
        object,
    })
}

/// Runs a command; returns the exit code and the report text.
pub fn run(cli: &Cli) -> (i32, String) {
    let (name, common, suites) = cli.command.parts();
    let result = (|| -> Result<(bool, serde_json::Value), AppError> {
        let (source, alg) = load(common)?;
        let cfg = config(common)?;
        Ok(run_report(name, &source, &alg, &cfg, &suites)?)
    })();
    let (code, value) = match result {
        Ok((ok, v)) => (if ok { 0 } else { 1 }, v),
        Err(e) => {
            let v = json!({"schema": REPORT_SCHEMA, "tool": "hopfcyc", "version": env!("CARGO_PKG_VERSION"), "command": name, "error": e.to_string(), "passed": false});
            (2, v)
        }
    };
    let text = serde_json::to_string_pretty(&value).expect("serializable") + "\n";
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, &text) {
            eprintln!("{}", AppError::Io(path.display().to_string(), e));
            return (2, text);
        }
    }
    (code, text)
}
