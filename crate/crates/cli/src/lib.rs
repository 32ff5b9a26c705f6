//! Command-line front end. [`run`] parses arguments, writes the payload to
//! `out` and diagnostics to `err`, and returns the exit code:
//! 0 on success, 1 when a checked property fails, 2 on bad usage or input.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::json;

use greenseq_core::green::{complete_prefix, enumerate_mgs, require_dynkin, validate_mgs, GreenSequence, ValidationMode};
use greenseq_core::modlab::{
    check_brick_root, check_relations, ext1_dim, graded_submodules, hom_space, is_nilpotent, is_semistable, is_stable,
    Representation, SubmoduleBound,
};
use greenseq_core::quiver::{Quiver, QuiverClass, RootVector};
use greenseq_core::roots::{growth_witness, positive_roots, RootSystem, GROWTH_HEIGHTS};
use greenseq_core::stability::{induced_mgs, sample_charge, CentralCharge};
use greenseq_core::torsion::{all_torsion_classes, check_opposite, exchange_quiver, hasse_of_inclusion, LabeledArc, LabeledDigraph};
use greenseq_core::weyl::{count_maximal_chains, enumerate_maximal_chains, WeylGroup};
use greenseq_core::Error;

/// Version of the JSON, CSV and DOT layouts.
pub const FORMAT_VERSION: u32 = 1;

const VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), " (output format 1)");

/// Largest Weyl group the CLI will materialise.
pub const MAX_GROUP_ORDER: u64 = 60_000;

/// Largest group for the quadratic inclusion-Hasse construction.
pub const MAX_BRUTE_FORCE_ORDER: u64 = 6_000;

#[derive(Debug, Parser)]
#[command(name = "greenseq", version = VERSION, about = "Maximal green sequences, weak order and torsion classes for Dynkin quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Inspect a quiver.
    #[command(subcommand)]
    Quiver(QuiverCmd),
    /// Positive roots.
    #[command(subcommand)]
    Roots(RootsCmd),
    /// Weak order on the Weyl group.
    #[command(subcommand)]
    Weyl(WeylCmd),
    /// Maximal green sequences.
    #[command(subcommand)]
    Mgs(MgsCmd),
    /// Lattice of torsion classes.
    #[command(subcommand)]
    Torsion(TorsionCmd),
    /// Central charges.
    #[command(subcommand)]
    Stability(StabilityCmd),
    /// Explicit representations.
    #[command(subcommand)]
    Modlab(ModlabCmd),
}

/// QUIVER is a built-in name (A1..A8, D4..D8, E6..E8) or a quiver file.
#[derive(Debug, Subcommand)]
enum QuiverCmd {
    /// Classification, forms and Gram matrix as JSON.
    Info { quiver: String },
}

#[derive(Debug, Subcommand)]
enum RootsCmd {
    /// Positive roots in canonical order (height, then lexicographic).
    List {
        quiver: String,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum WeylCmd {
    /// Number of maximal chains (reduced words of the longest element).
    CountChains { quiver: String },
    /// Hasse diagram of the weak order in DOT.
    Hasse {
        quiver: String,
        #[arg(long)]
        dot: bool,
    },
    /// Maximal chains in lexicographic order.
    Chains {
        quiver: String,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Subcommand)]
enum MgsCmd {
    /// All maximal green sequences in lexicographic word order.
    Enumerate {
        quiver: String,
        #[arg(long)]
        limit: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Check a sequence of root classes such as "1,0;1,1;0,1".
    Validate {
        quiver: String,
        #[arg(long)]
        roots: String,
        /// Accept green sequences that stop before the end.
        #[arg(long)]
        prefix: bool,
    },
    /// Sequence induced by a charge such as "s1=-1/1,1/1;s2=1/1,1/1".
    FromCharge {
        quiver: String,
        #[arg(long)]
        charge: String,
    },
}

#[derive(Debug, Subcommand)]
enum TorsionCmd {
    /// Hasse quiver of inclusion, arcs from larger to smaller class.
    Lattice {
        quiver: String,
        #[arg(long)]
        dot: bool,
        #[arg(long, conflicts_with = "dot")]
        json: bool,
    },
    /// Number of torsion classes.
    Count { quiver: String },
    /// Compare the inclusion Hasse quiver with the reversed exchange quiver.
    CheckOpposite { quiver: String },
}

#[derive(Debug, Subcommand)]
enum StabilityCmd {
    /// Sample charges, check the induced sequences, tally the words.
    Fuzz {
        quiver: String,
        /// Number of charges.
        #[arg(long)]
        seeds: u64,
        /// First seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Numerators and denominators are bounded by this.
        #[arg(long, default_value_t = 5)]
        bound: u64,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Debug, Subcommand)]
enum ModlabCmd {
    /// Full report on a representation file as JSON.
    Check {
        file: PathBuf,
        #[arg(long)]
        charge: Option<String>,
    },
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

/// Runs with captured output.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let exit_code = run_with(args, &mut out, &mut err);
    CommandResult {
        exit_code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}

/// Runs, streaming to the given writers.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match execute(cli.command, out).and_then(|code| out.flush().map(|_| code).map_err(Into::into)) {
        Ok(code) => code,
        Err(e) if is_broken_pipe(&e) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            2
        }
    }
}

fn is_broken_pipe(e: &anyhow::Error) -> bool {
    e.downcast_ref::<io::Error>()
        .is_some_and(|io| io.kind() == io::ErrorKind::BrokenPipe)
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8> {
    match command {
        Command::Quiver(QuiverCmd::Info { quiver }) => quiver_info(&load_quiver(&quiver)?, out),
        Command::Roots(RootsCmd::List { quiver, json }) => roots_list(&load_quiver(&quiver)?, json, out),
        Command::Weyl(cmd) => weyl(cmd, out),
        Command::Mgs(cmd) => mgs(cmd, out),
        Command::Torsion(cmd) => torsion(cmd, out),
        Command::Stability(StabilityCmd::Fuzz {
            quiver,
            seeds,
            seed,
            bound,
            csv: _,
        }) => fuzz(&load_quiver(&quiver)?, seed, seeds, bound, out),
        Command::Modlab(ModlabCmd::Check { file, charge }) => modlab_check(&file, charge.as_deref(), out),
    }
}

/// Built-in name, or a quiver file named by path.
pub fn load_quiver(arg: &str) -> Result<Quiver> {
    if let Some(q) = Quiver::builtin(arg) {
        return Ok(q.with_name(arg.to_ascii_uppercase()));
    }
    let path = Path::new(arg);
    if !path.exists() {
        bail!(Error::UnknownQuiver(arg.to_string()));
    }
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let q = Quiver::parse(&text).with_context(|| format!("parsing {}", path.display()))?;
    let name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| arg.to_string());
    Ok(q.with_name(name))
}

fn root_system(q: &Quiver) -> Result<RootSystem> {
    require_dynkin(q)?;
    Ok(positive_roots(q)?)
}

fn weyl_group(q: &Quiver) -> Result<WeylGroup> {
    require_dynkin(q)?;
    if let QuiverClass::Dynkin(t) = q.classify() {
        if t.weyl_order() > MAX_GROUP_ORDER.into() {
            bail!(
                "Weyl group of {t} has {} elements, above the limit of {MAX_GROUP_ORDER}",
                t.weyl_order()
            );
        }
    }
    Ok(WeylGroup::generate(q)?)
}

fn one_based(word: &[usize]) -> Vec<usize> {
    word.iter().map(|i| i + 1).collect()
}

fn sequence_json(s: &GreenSequence) -> serde_json::Value {
    json!({ "word": one_based(&s.word), "roots": s.roots })
}

fn write_json(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn write_json_line(out: &mut dyn Write, value: &serde_json::Value) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn quiver_info(q: &Quiver, out: &mut dyn Write) -> Result<u8> {
    let class = q.classify();
    let (class_name, dynkin_type, weyl_order, growth) = match &class {
        QuiverClass::Dynkin(t) => ("Dynkin", Some(t.to_string()), Some(t.weyl_order().to_string()), None),
        QuiverClass::NonDynkin => ("NonDynkin", None, None, Some(growth_witness(q, &GROWTH_HEIGHTS))),
    };
    let arrows: Vec<_> = q
        .arrows()
        .iter()
        .map(|a| json!({ "id": a.id, "tail": a.tail + 1, "head": a.head + 1 }))
        .collect();
    let growth = growth.map(|g| {
        g.iter()
            .map(|(h, n)| json!({ "height": h, "real_roots": n }))
            .collect::<Vec<_>>()
    });
    let info = json!({
        "name": q.name(),
        "vertices": q.vertex_count(),
        "arrows": arrows,
        "class": class_name,
        "dynkin_type": dynkin_type,
        "weyl_group_order": weyl_order,
        "positive_definite": q.is_positive_definite(),
        "leading_minors": q.leading_minors().iter().map(|m| m.to_string()).collect::<Vec<_>>(),
        "euler_form": {
            "symmetric": q.gram_matrix(),
            "antisymmetric": q.antisymmetric_euler_matrix(),
            "implemented": "symmetric",
        },
        "growth_witness": growth,
    });
    write_json(out, &info)?;
    Ok(0)
}

fn roots_list(q: &Quiver, json: bool, out: &mut dyn Write) -> Result<u8> {
    let rs = root_system(q)?;
    if json {
        serde_json::to_writer(&mut *out, rs.roots())?;
        writeln!(out)?;
    } else {
        for r in rs.roots() {
            writeln!(out, "{r}")?;
        }
    }
    Ok(0)
}

fn weyl(cmd: WeylCmd, out: &mut dyn Write) -> Result<u8> {
    match cmd {
        WeylCmd::CountChains { quiver } => {
            let g = weyl_group(&load_quiver(&quiver)?)?;
            writeln!(out, "{}", count_maximal_chains(&g))?;
        }
        WeylCmd::Hasse { quiver, dot: _ } => {
            let g = weyl_group(&load_quiver(&quiver)?)?;
            write!(out, "{}", g.hasse_dot())?;
        }
        WeylCmd::Chains { quiver, limit, json } => {
            let g = weyl_group(&load_quiver(&quiver)?)?;
            let mut stream = enumerate_maximal_chains(&g, limit);
            let mut count = 0usize;
            for chain in stream.by_ref() {
                count += 1;
                let word = one_based(&chain.word());
                if json {
                    let roots: Vec<&RootVector> = chain.0.iter().map(|s| g.roots().get(s.root)).collect();
                    write_json_line(out, &json!({ "word": word, "roots": roots }))?;
                } else {
                    writeln!(out, "{}", join(&word, " "))?;
                }
            }
            footer(out, json, count, stream.truncated())?;
        }
    }
    Ok(0)
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn footer(out: &mut dyn Write, json: bool, count: usize, truncated: bool) -> Result<()> {
    if json {
        write_json_line(out, &json!({ "count": count, "truncated": truncated }))
    } else {
        writeln!(out, "# count {count}{}", if truncated { " (truncated)" } else { "" })?;
        Ok(())
    }
}

fn parse_roots(text: &str) -> Result<Vec<RootVector>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| RootVector::parse(s).with_context(|| format!("bad root `{s}`")))
        .collect()
}

fn mgs(cmd: MgsCmd, out: &mut dyn Write) -> Result<u8> {
    match cmd {
        MgsCmd::Enumerate { quiver, limit, json } => {
            let g = weyl_group(&load_quiver(&quiver)?)?;
            let mut stream = enumerate_mgs(&g, limit);
            let mut count = 0usize;
            for s in stream.by_ref() {
                count += 1;
                if json {
                    write_json_line(out, &sequence_json(&s))?;
                } else {
                    let roots: Vec<String> = s.roots.iter().map(|r| r.to_string()).collect();
                    writeln!(out, "{}\t{}", join(&one_based(&s.word), " "), roots.join(";"))?;
                }
            }
            footer(out, json, count, stream.truncated())?;
            Ok(0)
        }
        MgsCmd::Validate { quiver, roots, prefix } => {
            let q = load_quiver(&quiver)?;
            let rs = root_system(&q)?;
            let roots = parse_roots(&roots)?;
            let mode = if prefix { ValidationMode::Prefix } else { ValidationMode::Maximal };
            let report = validate_mgs(&rs, &roots, mode)?;
            let completion = if prefix && report.valid {
                let g = weyl_group(&q)?;
                complete_prefix(&g, &roots)?.map(|s| sequence_json(&s))
            } else {
                None
            };
            let mut value = json!({
                "mode": if prefix { "prefix" } else { "maximal" },
                "valid": report.valid,
                "word": one_based(&report.word),
                "failure": report.failure,
            });
            if prefix {
                value["completion"] = completion.unwrap_or(serde_json::Value::Null);
            }
            write_json(out, &value)?;
            Ok(if report.valid { 0 } else { 1 })
        }
        MgsCmd::FromCharge { quiver, charge } => {
            let q = load_quiver(&quiver)?;
            let rs = root_system(&q)?;
            let z = CentralCharge::parse(&charge, q.vertex_count())?;
            let s = induced_mgs(&rs, &z)?;
            let mut value = sequence_json(&s);
            value["charge"] = json!(z.to_string());
            write_json(out, &value)?;
            Ok(0)
        }
    }
}

/// Inclusion Hasse quiver, by brute force when small enough and otherwise
/// as the reversed exchange quiver.
fn lattice(g: &WeylGroup) -> Result<LabeledDigraph> {
    if g.len() as u64 <= MAX_BRUTE_FORCE_ORDER {
        return Ok(hasse_of_inclusion(&all_torsion_classes(g), g.roots())?);
    }
    let e = exchange_quiver(g);
    Ok(LabeledDigraph {
        vertices: e.vertices,
        arcs: e
            .arcs
            .into_iter()
            .map(|a| LabeledArc {
                from: a.to,
                to: a.from,
                label: a.label,
            })
            .collect(),
    })
}

fn torsion(cmd: TorsionCmd, out: &mut dyn Write) -> Result<u8> {
    match cmd {
        TorsionCmd::Lattice { quiver, dot: _, json } => {
            let q = load_quiver(&quiver)?;
            let g = weyl_group(&q)?;
            let h = lattice(&g)?;
            if json {
                let vertices: Vec<_> = h.vertices.iter().map(|t| t.classes(g.roots())).collect();
                write_json(out, &json!({ "vertices": vertices, "arcs": h.arcs }))?;
            } else {
                write!(out, "{}", h.to_dot(q.name().unwrap_or("Q"), g.roots()))?;
            }
            Ok(0)
        }
        TorsionCmd::Count { quiver } => {
            let g = weyl_group(&load_quiver(&quiver)?)?;
            writeln!(out, "{}", all_torsion_classes(&g).len())?;
            Ok(0)
        }
        TorsionCmd::CheckOpposite { quiver } => {
            let g = weyl_group(&load_quiver(&quiver)?)?;
            if g.len() as u64 > MAX_BRUTE_FORCE_ORDER {
                bail!(
                    "{} torsion classes exceed the brute-force limit of {MAX_BRUTE_FORCE_ORDER}",
                    g.len()
                );
            }
            let hasse = hasse_of_inclusion(&all_torsion_classes(&g), g.roots())?;
            let report = check_opposite(&hasse, &exchange_quiver(&g), g.roots())?;
            write_json(out, &serde_json::to_value(&report)?)?;
            Ok(if report.coincide { 0 } else { 1 })
        }
    }
}

fn fuzz(q: &Quiver, first: u64, seeds: u64, bound: u64, out: &mut dyn Write) -> Result<u8> {
    if bound == 0 {
        bail!("--bound must be positive");
    }
    let g = weyl_group(q)?;
    let rs = g.roots();
    let (mut discrete, mut not_discrete, mut valid, mut invalid) = (0u64, 0u64, 0u64, 0u64);
    let mut words: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    for seed in first..first + seeds {
        let z = sample_charge(q, seed, bound);
        match induced_mgs(rs, &z) {
            Ok(s) => {
                discrete += 1;
                if validate_mgs(rs, &s.roots, ValidationMode::Maximal)?.valid {
                    valid += 1;
                } else {
                    invalid += 1;
                }
                *words.entry(one_based(&s.word)).or_default() += 1;
            }
            Err(Error::NotDiscrete(..)) => not_discrete += 1,
            Err(e) => return Err(e.into()),
        }
    }
    writeln!(out, "kind,key,value")?;
    let summary = [
        ("first_seed", first.to_string()),
        ("samples", seeds.to_string()),
        ("bound", bound.to_string()),
        ("discrete", discrete.to_string()),
        ("not_discrete", not_discrete.to_string()),
        ("valid", valid.to_string()),
        ("invalid", invalid.to_string()),
        ("distinct_words", words.len().to_string()),
        ("total_sequences", count_maximal_chains(&g).to_string()),
    ];
    for (key, value) in summary {
        writeln!(out, "summary,{key},{value}")?;
    }
    for (word, n) in &words {
        writeln!(out, "word,{},{n}", join(word, " "))?;
    }
    Ok(if invalid == 0 { 0 } else { 1 })
}

/// Resolves the `quiver` line of a representation file: a built-in name,
/// or a quiver file relative to the representation file.
fn resolver(base: &Path) -> impl Fn(&str) -> greenseq_core::Result<Quiver> + '_ {
    move |name: &str| {
        if let Some(q) = Quiver::builtin(name) {
            return Ok(q.with_name(name.to_ascii_uppercase()));
        }
        let path = base.join(name);
        let text = std::fs::read_to_string(&path).map_err(|_| Error::UnknownQuiver(name.to_string()))?;
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        Ok(Quiver::parse(&text)?.with_name(stem.unwrap_or_else(|| name.to_string())))
    }
}

fn modlab_check(file: &Path, charge: Option<&str>, out: &mut dyn Write) -> Result<u8> {
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let base = file.parent().unwrap_or(Path::new("."));
    let m = Representation::parse(&text, resolver(base)).with_context(|| format!("parsing {}", file.display()))?;
    let q = m.quiver();
    let dynkin = q.is_dynkin();
    let relations = check_relations(&m);
    let nilpotent = is_nilpotent(&m);
    let end_dim = hom_space(&m, &m)?.dimension;
    let brick = end_dim == 1;
    let self_pairing = q.cartan_form(m.dim(), m.dim())?;
    let ext1_self = if relations.satisfied { Some(ext1_dim(&m, &m)?) } else { None };
    let brick_root = if dynkin && brick && relations.satisfied {
        Some(check_brick_root(&m)?)
    } else {
        None
    };
    let bound = SubmoduleBound::default();
    let (submodules, submodule_error) = match graded_submodules(&m, &bound) {
        Ok(subs) => (Some(subs.into_iter().map(|s| s.dim).collect::<Vec<_>>()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let stability = match charge {
        None => None,
        Some(text) => {
            let z = CentralCharge::parse(text, q.vertex_count())?;
            let stable = is_stable(&m, &z);
            let semistable = is_semistable(&m, &z);
            let error = stable.as_ref().err().map(|e| e.to_string());
            Some(json!({
                "charge": z.to_string(),
                "stable": stable.ok(),
                "semistable": semistable.ok(),
                "error": error,
            }))
        }
    };
    let failed = !relations.satisfied
        || (dynkin && relations.satisfied && !nilpotent)
        || brick_root.as_ref().is_some_and(|r| !r.passed);
    let report = json!({
        "file": file.file_name().map(|f| f.to_string_lossy().into_owned()),
        "field": m.field(),
        "quiver": q.name(),
        "dynkin": dynkin,
        "dim": m.dim(),
        "relations": relations,
        "nilpotent": nilpotent,
        "end_dim": end_dim,
        "brick": brick,
        "ext1_self": ext1_self,
        "self_pairing": self_pairing,
        "is_root": self_pairing == 2,
        "brick_root": brick_root,
        "submodules": submodules,
        "submodule_error": submodule_error,
        "stability": stability,
    });
    write_json(out, &report)?;
    Ok(if failed { 1 } else { 0 })
}
