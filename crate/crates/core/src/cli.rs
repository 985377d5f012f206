//! The `rootlat` command line.
//!
//! Exit codes: 0 success, 1 a computed value disagrees with a reference or
//! theoretical claim, 2 usage or configuration error, 3 resource cap hit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::census::{self, CensusFamily, ConjectureId, CounterexampleId};
use crate::families::{FamilyContext, FamilyTag};
use crate::weakorder::{self, Dir, HasseFormat, Level};
use crate::{Error, Result, RootSet, RootSystem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

const DEFAULT_TYPES: &str = "A1..A4,B2,B3";

#[derive(Debug, Parser)]
#[command(name = "rootlat", version, about = "Weak order on subsets of finite root systems")]
pub struct Cli {
    /// Worker threads for parallel enumeration (0 = all cores).
    #[arg(long, global = true, env = "ROOTLAT_THREADS", default_value_t = 0)]
    pub threads: usize,
    /// Accepted for interface stability; every computation is deterministic.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Root system data.
    Rootsys {
        #[command(subcommand)]
        cmd: RootsysCmd,
    },
    /// Build or validate a family of Φ-posets.
    Families {
        #[command(subcommand)]
        cmd: FamiliesCmd,
    },
    /// Compare two subsets in the weak order.
    Order {
        #[command(subcommand)]
        cmd: OrderCmd,
    },
    /// Brute-force lattice certification of a level.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Hasse diagram of a level or family.
    Hasse(HasseArgs),
    /// Counts against the reference table.
    Census {
        #[command(subcommand)]
        cmd: CensusCmd,
    },
    /// Exhaustive check of an open conjecture.
    CheckConjecture(ConjectureArgs),
    /// Reproduce a known counterexample (or `all`).
    Counterexample { id: String },
}

#[derive(Debug, Subcommand)]
pub enum RootsysCmd {
    Info {
        /// Cartan type, e.g. `B3`; also accepted positionally.
        #[arg(long = "type")]
        ty: Option<String>,
        positional: Option<String>,
    },
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    #[arg(long = "type")]
    pub ty: String,
    /// woep, woip, wofp, coep, coip, cofp, boep or boip.
    #[arg(long)]
    pub family: String,
    /// Coxeter element: `lin`, `bip`, or a word such as `s2s1s3`.
    #[arg(long, default_value = "lin")]
    pub coxeter: String,
}

#[derive(Debug, Subcommand)]
pub enum FamiliesCmd {
    /// Construct a family; `--out` receives a JSON array of set literals.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare construction with characterization, or validate a JSON file.
    Verify {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long = "in")]
        input: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrderCmd {
    Compare {
        #[arg(long = "type")]
        ty: String,
        /// Set literal such as `+[1,1],-[0,1]`.
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        /// Also report meet and join at this level.
        #[arg(long)]
        level: Option<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum LatticeCmd {
    Verify {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, default_value = "posets")]
        level: String,
        #[arg(long, default_value_t = weakorder::DEFAULT_LATTICE_CAP)]
        cap: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputFormat {
    Dot,
    Json,
}

#[derive(Debug, Args)]
pub struct HasseArgs {
    #[arg(long = "type")]
    pub ty: String,
    /// A level (all, antisym, semiclosed, closed, posets) or a family tag.
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value = "lin")]
    pub coxeter: String,
    #[arg(long, value_enum, default_value_t = OutputFormat::Dot)]
    pub format: OutputFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CensusCmd {
    Table1 {
        /// Comma list; `A1..A4` expands to a rank range.
        #[arg(long, default_value = DEFAULT_TYPES)]
        types: String,
        /// Comma list of levels and family tags; `coip` expands to both Coxeter elements.
        #[arg(long)]
        families: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    pub id: String,
    #[arg(long = "type")]
    pub ty: String,
    /// `lin`, `bip`, a word, or `both`.
    #[arg(long, default_value = "both")]
    pub coxeter: String,
    #[arg(long, default_value_t = census::CONJECTURE_RANK_CAP)]
    pub rank_cap: usize,
}

/// Result of a command: the document to emit and whether every claim held.
struct Outcome {
    text: String,
    out: Option<PathBuf>,
    ok: bool,
}

impl Outcome {
    fn json(system: &str, family: Option<&str>, result: Value, ok: bool) -> Self {
        let doc = json!({
            "tool_version": env!("CARGO_PKG_VERSION"),
            "system": system,
            "family": family,
            "result": result,
        });
        Outcome { text: serde_json::to_string_pretty(&doc).unwrap() + "\n", out: None, ok }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Resource(_) => EXIT_RESOURCE,
        Error::Invariant(_) => EXIT_MISMATCH,
        _ => EXIT_USAGE,
    }
}

/// Parses `argv` and runs the command, writing documents to stdout.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start thread pool: {e}");
            return EXIT_RESOURCE;
        }
    };
    match pool.install(|| dispatch(&cli.command)) {
        Ok(outcome) => {
            let written = match &outcome.out {
                Some(path) => std::fs::write(path, &outcome.text).map_err(Error::from),
                None => out.write_all(outcome.text.as_bytes()).map_err(Error::from),
            };
            if let Err(e) = written {
                let _ = writeln!(err, "error: {e}");
                return EXIT_USAGE;
            }
            if outcome.ok {
                EXIT_OK
            } else {
                EXIT_MISMATCH
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Rootsys { cmd: RootsysCmd::Info { ty, positional } } => {
            let label = ty
                .as_deref()
                .or(positional.as_deref())
                .ok_or_else(|| Error::Config("missing root system type".into()))?;
            rootsys_info(&RootSystem::parse(label)?)
        }
        Command::Families { cmd: FamiliesCmd::Build { family, out } } => families_build(family, out.clone()),
        Command::Families { cmd: FamiliesCmd::Verify { family, input } } => families_verify(family, input.as_deref()),
        Command::Order { cmd: OrderCmd::Compare { ty, left, right, level } } => {
            order_compare(ty, left, right, level.as_deref())
        }
        Command::Lattice { cmd: LatticeCmd::Verify { ty, level, cap } } => lattice_verify(ty, level, *cap),
        Command::Hasse(args) => hasse(args),
        Command::Census { cmd: CensusCmd::Table1 { types, families, out } } => {
            census_table1(types, families.as_deref(), out.clone())
        }
        Command::CheckConjecture(args) => check_conjecture(args),
        Command::Counterexample { id } => counterexample(id),
    }
}

fn coefficient_json(c: crate::Coefficient) -> Value {
    let s = c.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn rootsys_info(rs: &RootSystem) -> Result<Outcome> {
    let cartan: Vec<Vec<Value>> =
        rs.cartan().iter().map(|row| row.iter().map(|&c| coefficient_json(c)).collect()).collect();
    let positive: Vec<String> = (0..rs.num_roots()).filter(|&i| rs.is_positive(i)).map(|i| rs.root_name(i)).collect();
    let result = json!({
        "rank": rs.rank(),
        "roots": rs.num_roots(),
        "positive_roots": rs.num_positive(),
        "crystallographic": rs.is_crystallographic(),
        "cartan": cartan,
        "degrees": rs.degrees(),
        "weyl_order": rs.weyl_order(),
        "coxeter_catalan": rs.coxeter_catalan(),
        "positive_root_names": positive,
    });
    Ok(Outcome::json(&rs.kind().to_string(), None, result, true))
}

fn family_context(args: &FamilyArgs) -> Result<(RootSystem, FamilyContext, FamilyTag)> {
    let rs = RootSystem::parse(&args.ty)?;
    let tag: FamilyTag = args.family.parse()?;
    let cx = FamilyContext::new(&rs, &args.coxeter)?;
    Ok((rs, cx, tag))
}

fn literals(rs: &RootSystem, family: &[RootSet]) -> Vec<String> {
    family.iter().map(|r| r.to_literal(rs)).collect()
}

fn families_build(args: &FamilyArgs, out: Option<PathBuf>) -> Result<Outcome> {
    let (rs, cx, tag) = family_context(args)?;
    let family = weakorder::canonical(&cx.construct(tag)?);
    let id = cx.id(tag).to_string();
    let members = literals(&rs, &family);
    if let Some(path) = out {
        std::fs::write(&path, serde_json::to_string_pretty(&members).unwrap() + "\n")?;
        let result = json!({
            "count": family.len(),
            "checksum": census::checksum(&family),
            "written": path.display().to_string(),
        });
        return Ok(Outcome::json(&rs.kind().to_string(), Some(&id), result, true));
    }
    let result = json!({ "count": family.len(), "checksum": census::checksum(&family), "members": members });
    Ok(Outcome::json(&rs.kind().to_string(), Some(&id), result, true))
}

fn families_verify(args: &FamilyArgs, input: Option<&std::path::Path>) -> Result<Outcome> {
    let (rs, cx, tag) = family_context(args)?;
    let id = cx.id(tag).to_string();
    let system = rs.kind().to_string();
    let Some(path) = input else {
        let posets = census::all_posets(&rs)?;
        let report = cx.verify_family_equality(tag, &posets)?;
        let ok = report.equal != Some(false);
        return Ok(Outcome::json(&system, Some(&id), serde_json::to_value(&report).unwrap(), ok));
    };
    let text = std::fs::read_to_string(path)?;
    let items: Vec<String> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let constructed = match tag {
        FamilyTag::Cofp => Some(weakorder::canonical(&cx.construct(tag)?)),
        _ => None,
    };
    let mut rejected = Vec::new();
    for item in &items {
        let r = RootSet::parse(&rs, item)?;
        if r.to_literal(&rs) != *item {
            return Err(Error::Parse(format!("literal `{item}` does not round-trip")));
        }
        let member = match &constructed {
            Some(c) => c.binary_search(&r).is_ok(),
            None => cx.is_member(tag, r)?,
        };
        if !member {
            rejected.push(item.clone());
        }
    }
    let result = json!({ "count": items.len(), "valid": rejected.is_empty(), "rejected": rejected });
    Ok(Outcome::json(&system, Some(&id), result, rejected.is_empty()))
}

fn order_compare(ty: &str, left: &str, right: &str, level: Option<&str>) -> Result<Outcome> {
    let rs = RootSystem::parse(ty)?;
    let r = RootSet::parse(&rs, left)?;
    let s = RootSet::parse(&rs, right)?;
    let mut result = json!({
        "left": r.to_literal(&rs),
        "right": s.to_literal(&rs),
        "left_le_right": weakorder::weak_le(r, s)?,
        "right_le_left": weakorder::weak_le(s, r)?,
        "left_class": r.classify(&rs),
        "right_class": s.classify(&rs),
    });
    if let Some(level) = level {
        let level: Level = level.parse()?;
        if !level.contains(&rs, r) || !level.contains(&rs, s) {
            return Err(Error::Contract(format!("operands must lie in the {} level", level.name())));
        }
        result["level"] = json!(level.name());
        result["meet"] = json!(weakorder::lattice_op(&rs, level, Dir::Meet, r, s)?.to_literal(&rs));
        result["join"] = json!(weakorder::lattice_op(&rs, level, Dir::Join, r, s)?.to_literal(&rs));
    }
    Ok(Outcome::json(&rs.kind().to_string(), None, result, true))
}

fn lattice_verify(ty: &str, level: &str, cap: usize) -> Result<Outcome> {
    let rs = RootSystem::parse(ty)?;
    let level: Level = level.parse()?;
    let family = census::level_family(&rs, level)?;
    let report = weakorder::verify_lattice(&rs, &family, Some(level), cap)?;
    let witness = report
        .witness
        .as_ref()
        .map(|w| json!({ "kind": w.kind, "left": w.left.to_literal(&rs), "right": w.right.to_literal(&rs) }));
    let ok = report.is_lattice && report.formula_matches_bruteforce != Some(false);
    let result = json!({
        "size": report.size,
        "is_lattice": report.is_lattice,
        "formula_matches_bruteforce": report.formula_matches_bruteforce,
        "graded": report.graded,
        "cover_count": report.cover_count,
        "witness": witness,
    });
    Ok(Outcome::json(&rs.kind().to_string(), Some(level.name()), result, ok))
}

fn hasse(args: &HasseArgs) -> Result<Outcome> {
    let rs = RootSystem::parse(&args.ty)?;
    let (label, family) = match args.family.parse::<Level>() {
        Ok(level) => (level.name().to_string(), census::level_family(&rs, level)?),
        Err(_) => {
            let tag: FamilyTag = args.family.parse()?;
            let cx = FamilyContext::new(&rs, &args.coxeter)?;
            (cx.id(tag).to_string(), cx.construct(tag)?)
        }
    };
    let format = match args.format {
        OutputFormat::Dot => HasseFormat::Dot,
        OutputFormat::Json => HasseFormat::Json,
    };
    let body = weakorder::export_hasse(&rs, &family, format)?;
    let text = match args.format {
        OutputFormat::Dot => body,
        OutputFormat::Json => {
            let result: Value = serde_json::from_str(&body).map_err(|e| Error::Invariant(e.to_string()))?;
            Outcome::json(&rs.kind().to_string(), Some(&label), result, true).text
        }
    };
    Ok(Outcome { text, out: args.out.clone(), ok: true })
}

/// Expands `A1..A4,B2` into individual type labels.
pub fn expand_types(spec: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once("..") {
            Some((lo, hi)) => {
                let split = |s: &str| -> Result<(String, usize)> {
                    let at =
                        s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::Parse(format!("bad type `{s}`")))?;
                    let rank = s[at..].parse().map_err(|_| Error::Parse(format!("bad rank in `{s}`")))?;
                    Ok((s[..at].to_ascii_uppercase(), rank))
                };
                let ((f1, r1), (f2, r2)) = (split(lo)?, split(hi)?);
                if f1 != f2 || r1 > r2 {
                    return Err(Error::Parse(format!("bad type range `{part}`")));
                }
                out.extend((r1..=r2).map(|r| format!("{f1}{r}")));
            }
            None => out.push(part.to_ascii_uppercase()),
        }
    }
    if out.is_empty() {
        return Err(Error::Config("no root system types given".into()));
    }
    Ok(out)
}

const DEFAULT_FAMILIES: &str = "antisym,semiclosed,closed,posets,woep,woip,wofp,coep,coip,cofp,boep,boip";

/// (family, coxeter) pairs for a comma list; bare `coip` yields both elements.
fn expand_families(spec: &str) -> Result<Vec<(CensusFamily, &'static str)>> {
    let mut out = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let lower = part.to_ascii_lowercase();
        let (name, coxeter) = match lower.split_once('(') {
            Some((n, rest)) => (n.to_string(), Some(rest.trim_end_matches(')').to_string())),
            None => (lower.clone(), None),
        };
        let fam: CensusFamily = name.parse()?;
        match (&fam, coxeter.as_deref()) {
            (CensusFamily::Family(FamilyTag::Coip), None) => {
                out.push((fam.clone(), "bip"));
                out.push((fam, "lin"));
            }
            (_, None) => out.push((fam, "lin")),
            (_, Some("bip")) => out.push((fam, "bip")),
            (_, Some("lin")) => out.push((fam, "lin")),
            (_, Some(other)) => {
                return Err(Error::Config(format!("census rows use `lin` or `bip`, not `{other}`")));
            }
        }
    }
    Ok(out)
}

fn census_table1(types: &str, families: Option<&str>, out: Option<PathBuf>) -> Result<Outcome> {
    let types = expand_types(types)?;
    let families = expand_families(families.unwrap_or(DEFAULT_FAMILIES))?;
    let mut csv = String::from("type,family,count,reference_count,match\n");
    let mut ok = true;
    for ty in &types {
        let rs = RootSystem::parse(ty)?;
        for (fam, coxeter) in &families {
            let res = census::count_family(&rs, fam, coxeter)?;
            let cx = match fam {
                CensusFamily::Family(t) if t.is_cambrian() => Some(*coxeter),
                _ => None,
            };
            let reference = census::reference(&res.system, &fam.label(), cx);
            let verdict = match reference {
                Some(r) if r == res.count => "match",
                Some(_) => {
                    ok = false;
                    "mismatch"
                }
                None => "unreferenced",
            };
            let reference = reference.map(|r| r.to_string()).unwrap_or_default();
            csv.push_str(&format!("{},{},{},{reference},{verdict}\n", res.system, res.family, res.count));
        }
    }
    Ok(Outcome { text: csv, out, ok })
}

fn coxeters(spec: &str) -> Vec<&str> {
    match spec {
        "both" => vec!["lin", "bip"],
        other => vec![other],
    }
}

fn check_conjecture(args: &ConjectureArgs) -> Result<Outcome> {
    let id: ConjectureId = args.id.parse()?;
    let rs = RootSystem::parse(&args.ty)?;
    let mut reports = Vec::new();
    for c in coxeters(&args.coxeter) {
        reports.push(census::check_conjecture(id, &rs, c, args.rank_cap)?);
    }
    let ok = reports.iter().all(|r| r.verified);
    Ok(Outcome::json(&rs.kind().to_string(), Some(id.name()), serde_json::to_value(&reports).unwrap(), ok))
}

fn counterexample(id: &str) -> Result<Outcome> {
    let ids: Vec<CounterexampleId> = match id {
        "all" => CounterexampleId::ALL.to_vec(),
        one => vec![one.parse()?],
    };
    let reports = ids.into_iter().map(census::reproduce_counterexample).collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.reproduced);
    let system = if reports.len() == 1 { reports[0].system.clone() } else { "various".into() };
    Ok(Outcome::json(&system, None, serde_json::to_value(&reports).unwrap(), ok))
}
