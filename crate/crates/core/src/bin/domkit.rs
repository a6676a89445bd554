//! `domkit` command-line front end.
//!
//! Exit status: 0 success / predicate holds, 1 predicate fails (report on
//! stdout), 2 input or usage error, 3 a size cap was exceeded.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use domkit::completion::{check_cpo, check_domain, check_isomorphic, check_subdomain, ideal_completion};
use domkit::constructors::{coalesced_sum, function_space, kleene_star, record_basis, strict_product};
use domkit::coop::{coop_construct, verify_ascending, StopReason};
use domkit::io::{export_dot, parse_basis, parse_poset, serialize_basis, serialize_completion};
use domkit::mappings::{check_am, enumerate_ams, smallest_am_containing};
use domkit::{ConstructorParams, CoopParams, DomainError, Element, FiniteBasis, Limits, Poset, RecordOrdering, SubsetReport};

#[derive(Parser)]
#[command(name = "domkit", version, about = "Finite domain-theory workbench")]
struct Cli {
    /// Largest universe scanned subset-by-subset.
    #[arg(long, global = true, default_value_t = Limits::default().subset_scan)]
    scan_cap: usize,
    /// Largest |A|*|B| accepted by mapping enumeration.
    #[arg(long, global = true, default_value_t = Limits::default().relation_space)]
    relation_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a basis and check that it is a finitary basis.
    Check { file: PathBuf },
    /// Evaluate one predicate on a poset or on a subset of it.
    Props {
        file: PathBuf,
        #[arg(long, value_enum)]
        predicate: Predicate,
        /// One subset member (canonical term); repeat for more.
        #[arg(long = "subset")]
        subset: Vec<String>,
    },
    /// Ideal completion, in the basis format.
    Complete { file: PathBuf },
    /// Order isomorphism between two posets.
    Iso { left: PathBuf, right: PathBuf },
    /// Is the first basis a subdomain of the second?
    Subdomain { sub: PathBuf, sup: PathBuf },
    /// Approximable mappings.
    Am {
        #[command(subcommand)]
        op: AmOp,
    },
    /// Coalesced sum.
    Sum(BinaryArgs),
    /// Strict product.
    Prod(BinaryArgs),
    /// Function space (approximable mappings ordered by inclusion).
    Fun {
        #[command(flatten)]
        args: BinaryArgs,
        /// Keep only strict mappings.
        #[arg(long)]
        strict: bool,
    },
    /// Strict sequences up to a length bound.
    Star {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
        #[arg(long, default_value_t = ConstructorParams::default().cardinality_cap)]
        max_card: usize,
    },
    /// Records over labels with fields from a method basis.
    Rec {
        file: PathBuf,
        /// Comma-separated labels.
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        /// Compare non-empty records only when their keys agree.
        #[arg(long)]
        equal_keys: bool,
        #[arg(long, default_value_t = ConstructorParams::default().cardinality_cap)]
        max_card: usize,
    },
    /// Iterate the object equation from the one-point basis.
    Coop {
        #[arg(long)]
        base: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        labels: Vec<String>,
        #[arg(long, default_value_t = 1)]
        max_seq_len: usize,
        #[arg(long, default_value_t = 3)]
        iters: usize,
        #[arg(long, default_value_t = 10_000)]
        max_card: usize,
        /// Write each stage as `O<i>.json` into this directory.
        #[arg(long)]
        emit_stages: Option<PathBuf>,
    },
    /// Hasse diagram in DOT.
    Export {
        file: PathBuf,
        /// Draw every non-reflexive pair, not just covers.
        #[arg(long)]
        full_order: bool,
    },
}

#[derive(Args)]
struct BinaryArgs {
    left: PathBuf,
    right: PathBuf,
    #[arg(long, default_value_t = ConstructorParams::default().cardinality_cap)]
    max_card: usize,
}

#[derive(Subcommand)]
enum AmOp {
    /// Check the mapping conditions on a relation given as an `am{...}` term.
    Check {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// List every approximable mapping.
    Enumerate { source: PathBuf, target: PathBuf },
    /// Smallest approximable mapping containing the given pairs.
    Close {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Predicate {
    Bounded,
    Consistent,
    Directed,
    DownwardClosed,
    Chain,
    Antichain,
    Ideal,
    WeakIdeal,
    FinitaryBasis,
    Cpo,
    Domain,
}

enum Output {
    Json(Value),
    Text(String),
    /// A predicate failed: report on stdout, exit 1.
    Fails(Value),
    /// A cap stopped the run after producing partial output: exit 3.
    Capped(Value),
}

fn read(path: &Path) -> Result<String, DomainError> {
    fs::read_to_string(path).map_err(|e| DomainError::Input(format!("{}: {e}", path.display())))
}

fn with_path<T>(path: &Path, r: Result<T, DomainError>) -> Result<T, DomainError> {
    r.map_err(|e| match e {
        DomainError::Syntax(s) => DomainError::Input(format!("{}: {s}", path.display())),
        other => other,
    })
}

fn load_poset(path: &Path) -> Result<Poset, DomainError> {
    with_path(path, parse_poset(&read(path)?))
}

fn load_basis(path: &Path) -> Result<FiniteBasis, DomainError> {
    with_path(path, parse_basis(&read(path)?))
}

fn term(s: &str) -> Result<Element, DomainError> {
    Ok(s.parse::<Element>()?)
}

fn am_pairs(s: &str) -> Result<Vec<(Element, Element)>, DomainError> {
    match term(s)? {
        Element::Am(pairs) => Ok(pairs.into_iter().collect()),
        other => Err(DomainError::Input(format!("expected an am{{...}} term, got `{other}`"))),
    }
}

fn report<T: serde::Serialize>(r: &SubsetReport<T>) -> Output {
    let v = serde_json::to_value(r).expect("report serializes");
    if r.holds() {
        Output::Json(v)
    } else {
        Output::Fails(v)
    }
}

fn basis_json(b: &FiniteBasis) -> Output {
    Output::Text(serialize_basis(b))
}

fn cparams(max_card: usize) -> ConstructorParams {
    ConstructorParams { cardinality_cap: max_card, ..ConstructorParams::default() }
}

fn props(poset: &Poset, predicate: Predicate, subset: &[String], limits: &Limits) -> Result<Output, DomainError> {
    let s: Vec<Element> = subset.iter().map(|t| term(t)).collect::<Result<_, _>>()?;
    let r = match predicate {
        Predicate::Bounded => poset.is_bounded(&s)?,
        Predicate::Consistent => poset.is_consistent(&s)?,
        Predicate::Directed => poset.is_directed(&s)?,
        Predicate::DownwardClosed => poset.is_downward_closed(&s)?,
        Predicate::Chain => poset.is_chain(&s)?,
        Predicate::Antichain => poset.is_antichain(&s)?,
        Predicate::Ideal => poset.is_ideal(&s)?,
        Predicate::WeakIdeal => poset.is_weak_ideal(&s)?,
        Predicate::FinitaryBasis => poset.is_finitary_basis(),
        Predicate::Cpo => check_cpo(poset, limits)?,
        Predicate::Domain => check_domain(poset, limits)?,
    };
    Ok(report(&r))
}

fn run(cli: Cli) -> Result<Output, DomainError> {
    let limits = Limits { subset_scan: cli.scan_cap, relation_space: cli.relation_cap, ..Limits::default() };
    match cli.command {
        Command::Check { file } => {
            let p = load_poset(&file)?;
            let r = p.is_finitary_basis();
            let v = json!({ "name": p.name(), "elements": p.len(), "report": r });
            Ok(if r.holds() { Output::Json(v) } else { Output::Fails(v) })
        }
        Command::Props { file, predicate, subset } => props(&load_poset(&file)?, predicate, &subset, &limits),
        Command::Complete { file } => Ok(Output::Text(serialize_completion(&ideal_completion(&load_basis(&file)?)?))),
        Command::Iso { left, right } => {
            let (l, r) = (load_poset(&left)?, load_poset(&right)?);
            Ok(match check_isomorphic(&l, &r, &limits)? {
                Some(w) => Output::Json(json!({ "isomorphic": true, "mapping": w.mapping })),
                None => Output::Fails(json!({ "isomorphic": false })),
            })
        }
        Command::Subdomain { sub, sup } => Ok(report(&check_subdomain(&load_basis(&sub)?, &load_basis(&sup)?))),
        Command::Am { op } => match op {
            AmOp::Check { source, target, map } => {
                let (s, t) = (load_basis(&source)?, load_basis(&target)?);
                let r = check_am(&s, &t, &am_pairs(&map)?)?;
                let v = serde_json::to_value(&r).expect("report serializes");
                Ok(if r.holds() { Output::Json(v) } else { Output::Fails(v) })
            }
            AmOp::Enumerate { source, target } => {
                let (s, t) = (load_basis(&source)?, load_basis(&target)?);
                let ams = enumerate_ams(&s, &t, &limits)?;
                let terms: Vec<String> = ams.iter().map(|m| m.to_term().to_string()).collect();
                Ok(Output::Json(json!({ "count": terms.len(), "mappings": terms })))
            }
            AmOp::Close { source, target, map } => {
                let (s, t) = (load_basis(&source)?, load_basis(&target)?);
                let am = smallest_am_containing(&s, &t, &am_pairs(&map)?)?;
                Ok(Output::Json(json!({ "mapping": am.to_term().to_string(), "pairs": am.len() })))
            }
        },
        Command::Sum(a) => Ok(basis_json(&coalesced_sum(&load_basis(&a.left)?, &load_basis(&a.right)?, &cparams(a.max_card))?)),
        Command::Prod(a) => Ok(basis_json(&strict_product(&load_basis(&a.left)?, &load_basis(&a.right)?, &cparams(a.max_card))?)),
        Command::Fun { args: a, strict } => {
            let (l, r) = (load_basis(&a.left)?, load_basis(&a.right)?);
            Ok(basis_json(&function_space(&l, &r, strict, &cparams(a.max_card))?))
        }
        Command::Star { file, max_len, max_card } => {
            let p = ConstructorParams { max_seq_len: max_len, ..cparams(max_card) };
            Ok(basis_json(&kleene_star(&load_basis(&file)?, &p)?))
        }
        Command::Rec { file, labels, equal_keys, max_card } => {
            let ordering = if equal_keys { RecordOrdering::EqualKeys } else { RecordOrdering::Pointwise };
            let p = ConstructorParams { record_ordering: ordering, ..cparams(max_card) };
            let labels: BTreeSet<String> = labels.into_iter().collect();
            Ok(basis_json(&record_basis(&labels, &load_basis(&file)?, &p)?))
        }
        Command::Coop { base, labels, max_seq_len, iters, max_card, emit_stages } => {
            let params = CoopParams {
                max_seq_len,
                max_iters: iters,
                cardinality_cap: max_card,
                ..CoopParams::new(load_basis(&base)?, labels)
            };
            let trace = coop_construct(&params)?;
            if let Some(dir) = emit_stages {
                fs::create_dir_all(&dir).map_err(|e| DomainError::Input(format!("{}: {e}", dir.display())))?;
                for (i, s) in trace.stages.iter().enumerate() {
                    let path = dir.join(format!("O{i}.json"));
                    fs::write(&path, serialize_basis(s)).map_err(|e| DomainError::Input(format!("{}: {e}", path.display())))?;
                }
            }
            let mut v = serde_json::to_value(trace.summary(&params)).expect("summary serializes");
            v["ascending"] = serde_json::to_value(verify_ascending(&trace)).expect("report serializes");
            Ok(match trace.stop_reason {
                StopReason::CardCap { .. } => Output::Capped(v),
                _ => Output::Json(v),
            })
        }
        Command::Export { file, full_order } => Ok(Output::Text(export_dot(&load_poset(&file)?, full_order))),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("json serializes");
    match run(cli) {
        Ok(Output::Json(v)) => {
            println!("{}", pretty(&v));
            ExitCode::SUCCESS
        }
        Ok(Output::Text(t)) => {
            print!("{t}");
            ExitCode::SUCCESS
        }
        Ok(Output::Fails(v)) => {
            println!("{}", pretty(&v));
            ExitCode::from(1)
        }
        Ok(Output::Capped(v)) => {
            println!("{}", pretty(&v));
            eprintln!("domkit: stopped at a cardinality cap; stages so far are reported");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("domkit: {e}");
            ExitCode::from(if e.is_cap() { 3 } else { 2 })
        }
    }
}
