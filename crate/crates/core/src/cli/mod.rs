//! Batch front end: one report record per input file, in input order.

pub mod files;
pub mod report;

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rayon::prelude::*;

use crate::duality::dual_gorenstein;
use crate::ehrhart::{classify_with, hstar_profile};
use crate::error::{Error, Result};
use crate::joins::{
    cayley_face_duality, constant_product_experiment, equality_faces, is_irreducible, join_kind,
    multiplicativity_check, JoinKind,
};
use crate::lattice::{lattice_isomorphic, Polytope};
use crate::nef::{
    cayley_polytope, cayley_round_trip, direct_sum_splits, nef_irreducible, nef_validate, split_over_z,
    split_stringy_experiment, NefPartition,
};
use crate::stringy::{s_tilde, StringyContext};
use crate::verify::verify_polytope;

pub use files::{parse_nef_file, parse_polytope_file, NefFile, PolytopeFile};
pub use report::{ErrorRecord, Report, Status, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CommandName {
    Info,
    Hstar,
    Dual,
    Faces,
    Stringy,
    Joins,
    Irreducible,
    NefBuild,
    NefIrreducible,
    NefSplit,
    Verify,
}

impl CommandName {
    pub fn as_str(self) -> &'static str {
        match self {
            CommandName::Info => "info",
            CommandName::Hstar => "hstar",
            CommandName::Dual => "dual",
            CommandName::Faces => "faces",
            CommandName::Stringy => "stringy",
            CommandName::Joins => "joins",
            CommandName::Irreducible => "irreducible",
            CommandName::NefBuild => "nef-build",
            CommandName::NefIrreducible => "nef-irreducible",
            CommandName::NefSplit => "nef-split",
            CommandName::Verify => "verify",
        }
    }

    fn takes_nef(self) -> bool {
        matches!(self, CommandName::NefBuild | CommandName::NefIrreducible | CommandName::NefSplit)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Invariants of Gorenstein polytopes, joins and nef-partitions.
#[derive(Debug, Parser)]
#[command(name = "gorenstein", version)]
pub struct Args {
    pub command: CommandName,
    /// Polytope files (nef-partition files for the nef-* commands).
    #[arg(required = true)]
    pub files: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Conjecture parts evaluated by `verify`.
    #[arg(long, value_delimiter = ',', default_values_t = [2u8, 3, 4, 5])]
    pub parts: Vec<u8>,
    /// Reject inputs of larger dimension.
    #[arg(long)]
    pub max_dim: Option<usize>,
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Faces for `joins`, as vertex ids: `0,1;2,3`.
    #[arg(long)]
    pub pair: Option<String>,
    /// Where `verify` writes reproducer files.
    #[arg(long, default_value = ".")]
    pub repro_dir: PathBuf,
}

/// Per-file options shared by every command.
#[derive(Debug, Clone)]
pub struct Options {
    pub parts: Vec<u8>,
    pub max_dim: Option<usize>,
    pub pair: Option<String>,
    pub repro_dir: PathBuf,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            parts: vec![2, 3, 4, 5],
            max_dim: None,
            pair: None,
            repro_dir: PathBuf::from("."),
        }
    }
}

impl Args {
    pub fn options(&self) -> Options {
        Options {
            parts: self.parts.clone(),
            max_dim: self.max_dim,
            pair: self.pair.clone(),
            repro_dir: self.repro_dir.clone(),
        }
    }
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VIOLATION: i32 = 2;
pub const EXIT_CONJECTURE: i32 = 3;

/// Parses `args`, runs the command and writes the report stream to `out`.
/// Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    run_args(&args, out, err)
}

pub fn run_args(args: &Args, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    if let Some(bad) = args.parts.iter().find(|p| !(2..=5).contains(*p)) {
        let _ = writeln!(err, "error: conjecture part {bad} is not one of 2,3,4,5");
        return EXIT_INPUT;
    }
    let reports = match args.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| run_files(args)),
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                return EXIT_INPUT;
            }
        },
        None => run_files(args),
    };
    let mut code = EXIT_OK;
    for r in &reports {
        let line = match args.format {
            Format::Json => r.to_json_line(),
            Format::Text => r.to_text(),
        };
        let _ = writeln!(out, "{line}");
        if let Some(e) = &r.error {
            let _ = writeln!(err, "{}: {} failed: {}", r.name, e.stage, e.message);
        }
        code = worse(code, r.status.exit_code());
    }
    code
}

/// Severity order: violation, conjecture failure, input error, success.
fn worse(a: i32, b: i32) -> i32 {
    let rank = |c| match c {
        EXIT_VIOLATION => 3,
        EXIT_CONJECTURE => 2,
        EXIT_INPUT => 1,
        _ => 0,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn run_files(args: &Args) -> Vec<Report> {
    let opts = args.options();
    args.files.par_iter().map(|path| run_file(args.command, &opts, path)).collect()
}

fn default_name(path: &Path) -> String {
    let s = path.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    s.split('.').next().unwrap_or_default().to_string()
}

fn run_file(command: CommandName, opts: &Options, path: &Path) -> Report {
    match std::fs::read_to_string(path) {
        Ok(text) => report_from_text(command, opts, &text, default_name(path), path.parent()),
        Err(e) => {
            let mut report = Report::new(command.as_str(), default_name(path));
            report.fail("read", &Error::Io(format!("{}: {e}", path.display())));
            report
        }
    }
}

/// Runs one command on the contents of an input file. `base` resolves
/// relative host paths in nef files; `name` is used when the file has none.
pub fn report_from_text(command: CommandName, opts: &Options, text: &str, name: String, base: Option<&Path>) -> Report {
    let mut report = Report::new(command.as_str(), name);
    let outcome = if command.takes_nef() {
        run_nef(command, opts, base, text, &mut report)
    } else {
        run_polytope(command, opts, text, &mut report)
    };
    if let Err((stage, e)) = outcome {
        report.fail(stage, &e);
    }
    report
}

type Staged<T> = std::result::Result<T, (&'static str, Error)>;

fn at<T>(stage: &'static str, r: Result<T>) -> Staged<T> {
    r.map_err(|e| (stage, e))
}

fn guard(opts: &Options, dim: isize) -> Result<()> {
    match opts.max_dim {
        Some(m) if dim > m as isize => Err(Error::Validation(format!("dimension {dim} exceeds --max-dim {m}"))),
        _ => Ok(()),
    }
}

fn parse_pair(s: &str) -> Result<(Vec<usize>, Vec<usize>)> {
    let side = |t: &str| -> Result<Vec<usize>> {
        t.split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse().map_err(|_| Error::Validation(format!("bad vertex id {x:?} in --pair"))))
            .collect()
    };
    match s.split_once(';') {
        Some((a, b)) => Ok((side(a)?, side(b)?)),
        None => Err(Error::Validation("--pair expects `F;G`".into())),
    }
}

fn run_polytope(command: CommandName, opts: &Options, text: &str, report: &mut Report) -> Staged<()> {
    let file = at("parse", parse_polytope_file(text))?;
    if let Some(n) = &file.name {
        report.name = n.clone();
    }
    let p = at("normalize", file.polytope())?;
    at("normalize", guard(opts, p.dim()))?;
    report.dim = Some(p.dim());
    report.ambient_dim = Some(p.ambient_dim());
    let c = "compute";
    match command {
        CommandName::Info => {
            let profile = at(c, hstar_profile(&p))?;
            let class = at(c, classify_with(&p, &profile))?;
            report.num_vertices = Some(p.vertices().len());
            report.f_vector = Some(at(c, p.face_lattice())?.f_vector());
            report.set_profile(&profile);
            report.set_class(&class);
            if class.gorenstein_index.is_some() {
                report.cy_dim = Some(profile.cy_dim());
            }
        }
        CommandName::Hstar => {
            let profile = at(c, hstar_profile(&p))?;
            report.set_profile(&profile);
            report.ehrhart_counts = Some(profile.ehrhart_counts.clone());
        }
        CommandName::Faces => {
            let fl = at(c, p.face_lattice())?;
            report.f_vector = Some(fl.f_vector());
            report.faces = Some(fl.faces().iter().map(|f| f.vertices.clone()).collect());
        }
        CommandName::Dual => {
            let pair = at(c, dual_gorenstein(&p))?;
            report.gorenstein_index = Some(pair.index());
            report.cy_dim = Some(pair.cy_dim());
            let dual = &pair.dual().polytope;
            report.dual_vertices = Some(dual.vertices().to_vec());
            report.dual_hstar = Some(at(c, hstar_profile(dual))?.hstar);
            report.self_dual = Some(at(c, lattice_isomorphic(&p, dual))?.is_some());
        }
        CommandName::Stringy => {
            let pair = at(c, dual_gorenstein(&p))?;
            let ctx = at(c, StringyContext::new(&pair))?;
            let st = at(c, ctx.report())?;
            let top = pair.primal().faces.top();
            report.set_profile(&ctx.primal.profiles[top]);
            report.gorenstein_index = Some(pair.index());
            report.s_tilde = Some(ctx.primal.s_tilde[top].clone());
            report.s_tilde_dual = Some(ctx.dual.s_tilde[pair.dual().faces.top()].clone());
            report.set_stringy(&st);
            report.conjecture = Some(st.conjecture.checks.clone());
            report.questions = Some(st.questions.clone());
        }
        CommandName::Joins => {
            if let Some(spec) = &opts.pair {
                let (f, g) = at("parse", parse_pair(spec))?;
                let cert = at(c, join_kind(&p, &f, &g))?;
                if cert.kind != JoinKind::None {
                    if let Ok(pair) = dual_gorenstein(&p) {
                        report.multiplicativity = Some(at(c, multiplicativity_check(&pair, &f, &g))?);
                        if cert.kind >= JoinKind::CayleyJoin {
                            report.face_duality = Some(at(c, cayley_face_duality(&pair, &f, &g))?);
                        }
                    }
                }
                report.join = Some(cert);
            } else {
                let pair = at(c, dual_gorenstein(&p))?;
                let eq = at(c, equality_faces(&pair))?;
                report.irreducible = Some(eq.is_empty());
                report.constant_products = Some(at(c, constant_product_experiment(&pair))?);
                report.equality_faces = Some(eq);
            }
        }
        CommandName::Irreducible => {
            let pair = at(c, dual_gorenstein(&p))?;
            report.gorenstein_index = Some(pair.index());
            report.irreducible = Some(at(c, is_irreducible(&pair))?);
        }
        CommandName::Verify => {
            let (outcome, st) = at("verify", verify_polytope(&p, &opts.parts))?;
            let failed = outcome.failed_parts();
            if let Some(st) = &st {
                report.set_stringy(st);
                report.s_tilde = Some(at(c, s_tilde(&p))?);
            }
            report.properties = Some(outcome.properties.clone());
            report.questions = outcome.questions.clone();
            report.conjecture = Some(outcome.conjecture.clone());
            if !failed.is_empty() {
                let path = opts.repro_dir.join(format!("{}.repro.json", report.name));
                let repro = PolytopeFile::from_polytope(Some(format!("{}-repro", report.name)), &p);
                at("reproducer", std::fs::write(&path, repro.to_json() + "\n").map_err(Error::from))?;
                report.reproducer = Some(path.display().to_string());
                report.status = Status::ConjectureFailure;
            }
        }
        _ => unreachable!("nef commands take nef files"),
    }
    Ok(())
}

fn run_nef(command: CommandName, opts: &Options, base: Option<&Path>, text: &str, report: &mut Report) -> Staged<()> {
    let file = at("parse", parse_nef_file(text))?;
    if let Some(n) = &file.name {
        report.name = n.clone();
    }
    let nef: NefPartition = at("normalize", file.partition(base))?;
    let c = "compute";
    report.parts = Some(nef.r());
    report.dim = Some(nef.reflexive.dim());
    report.ambient_dim = Some(nef.reflexive.ambient_dim());
    at("normalize", guard(opts, nef.reflexive.dim() + nef.r() as isize - 1))?;
    let invalid = at(c, nef_validate(&nef))?;
    report.nef_valid = Some(invalid.is_none());
    if let Some(reason) = invalid {
        let msg = serde_json::to_string(&reason).unwrap_or_default();
        report.nef_invalid = Some(reason);
        return Err(("validate", Error::Validation(format!("not a nef-partition: {msg}"))));
    }
    match command {
        CommandName::NefBuild => {
            let cayley = at(c, cayley_polytope(&nef.parts))?;
            let profile = at(c, hstar_profile(&cayley))?;
            report.cayley_vertices = Some(cayley.vertices().to_vec());
            report.set_profile(&profile);
            report.gorenstein_index = at(c, classify_with(&cayley, &profile))?.gorenstein_index;
            report.round_trip = Some(at(c, cayley_round_trip(&nef))?);
        }
        CommandName::NefIrreducible => {
            report.irreducible = Some(at(c, nef_irreducible(&nef))?);
        }
        CommandName::NefSplit => {
            report.splits = Some(at(c, direct_sum_splits(&nef))?);
            report.z_split = Some(at(c, split_over_z(&nef))?);
            report.split_stringy = Some(at(c, split_stringy_experiment(&nef))?);
        }
        _ => unreachable!("polytope commands take polytope files"),
    }
    Ok(())
}

/// Loads a polytope file from disk.
pub fn load_polytope(path: &Path) -> Result<Polytope> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_polytope_file(&text)?.polytope()
}

/// Loads a nef-partition file from disk.
pub fn load_nef(path: &Path) -> Result<NefPartition> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    parse_nef_file(&text)?.partition(path.parent())
}
