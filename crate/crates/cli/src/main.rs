use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use fflat::autgroup::{isometry_group_order, perm_report, perm_stabilizer, DEFAULT_MAX_ISOMETRY_RANK, DEFAULT_MAX_PERM_DIM};
use fflat::builders::{build_ff_lattice, build_rational, LatticeBundle};
use fflat::curves::{HyperellipticModel, Selector};
use fflat::io::{
    isometry_report_to_json, lattice_from_json, lattice_to_json, places_to_json, to_canonical_string, CurveSpec,
    InvariantReport,
};
use fflat::latcore::{
    is_well_rounded, kissing_number, minimal_vector_basis, minimum2, successive_minima2, IntegerLattice,
    DEFAULT_BASIS_BUDGET, DEFAULT_ENUM_CAP,
};
use fflat::verify::{check_names, checks, run_all, run_check, Caps, CheckOutcome, Status};
use fflat::Error;

#[derive(Parser)]
#[command(name = "fflat", version, about = "Exact lattices from function fields over prime fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct CapArgs {
    /// Cap on enumerated short vectors (up to sign).
    #[arg(long, default_value_t = DEFAULT_ENUM_CAP, value_parser = positive)]
    max_enum: usize,
    /// Ambient-dimension guard for permutation searches.
    #[arg(long, default_value_t = DEFAULT_MAX_PERM_DIM, value_parser = positive)]
    max_perm_dim: usize,
}

impl CapArgs {
    fn caps(&self) -> Caps {
        Caps { max_enum: self.max_enum, max_perm_dim: self.max_perm_dim }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Build a lattice; writes the lattice JSON and a place-system sidecar.
    Build(BuildArgs),
    /// Report det2, minimum2, successive minima, kissing number, well-roundedness
    /// and a minimal-vector basis witness.
    Invariants(InvariantArgs),
    /// Automorphism group order of a lattice.
    Aut(AutArgs),
    /// Run the named verification checks.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct BuildArgs {
    /// Field size (a prime).
    #[arg(long)]
    p: Option<u64>,
    /// Coefficients of f, ascending, comma separated.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Curve spec JSON file {"p": .., "f": [..]}.
    #[arg(long, conflicts_with_all = ["p", "f"])]
    curve: Option<PathBuf>,
    /// Place selector.
    #[arg(long, value_parser = ["rational", "elliptic", "ramified-inert", "all-rational"])]
    places: Option<String>,
    /// Shorthand for `--places rational`.
    #[arg(long)]
    rational: bool,
    /// Number of places minus one for the rational selector.
    #[arg(long)]
    n: Option<usize>,
    /// Lattice output path; the sidecar goes next to it as `<stem>.places.json`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InvariantArgs {
    /// Lattice JSON file.
    lattice: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Skip the minimal-vector basis search.
    #[arg(long)]
    no_basis: bool,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum AutMode {
    /// Coordinate permutations stabilizing the lattice.
    Perm,
    /// Full isometry group, -Id included.
    Full,
}

#[derive(Args)]
struct AutArgs {
    /// Lattice JSON file.
    lattice: PathBuf,
    #[arg(long, value_enum, default_value = "full")]
    mode: AutMode,
    #[arg(long)]
    out: Option<PathBuf>,
    #[command(flatten)]
    caps: CapArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Check to run (repeatable).
    #[arg(long)]
    check: Vec<String>,
    /// Run every check.
    #[arg(long)]
    all: bool,
    /// List the checks and the criteria they cover.
    #[arg(long)]
    list: bool,
    #[command(flatten)]
    caps: CapArgs,
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Verification(_) => 1,
        Error::Resource(_) => 3,
        Error::InvalidInput(_) | Error::DimensionMismatch { .. } | Error::NotSublattice(_) => 2,
    }
}

fn read(path: &Path) -> fflat::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> fflat::Result<()> {
    fs::write(path, text).map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, v: &Value) -> fflat::Result<()> {
    let text = to_canonical_string(v);
    match out {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn sidecar_path(out: &Path) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "lattice".into());
    out.with_file_name(format!("{stem}.places.json"))
}

fn curve_model(args: &BuildArgs) -> fflat::Result<HyperellipticModel> {
    if let Some(path) = &args.curve {
        return CurveSpec::parse(&read(path)?)?.model();
    }
    match (args.p, &args.f) {
        (Some(p), Some(f)) => HyperellipticModel::parse(p, f),
        _ => Err(Error::InvalidInput("a curve needs --p and --f, or --curve".into())),
    }
}

fn build(args: BuildArgs) -> fflat::Result<()> {
    let selector = match (args.rational, args.places.as_deref()) {
        (true, None | Some("rational")) => Selector::RationalField,
        (true, Some(other)) => return Err(Error::InvalidInput(format!("--rational conflicts with --places {other}"))),
        (false, Some(name)) => Selector::from_name(name).expect("clap restricts the names"),
        (false, None) => return Err(Error::InvalidInput("--places is required".into())),
    };
    let bundle: LatticeBundle = match selector {
        Selector::RationalField => {
            let n = args.n.ok_or_else(|| Error::InvalidInput("the rational selector needs --n".into()))?;
            build_rational(n)?
        }
        sel => build_ff_lattice(&curve_model(&args)?, sel)?,
    };
    let lattice = lattice_to_json(&bundle.lattice);
    let places = places_to_json(&bundle.places);
    match &args.out {
        Some(out) => {
            emit(Some(out), &lattice)?;
            emit(Some(&sidecar_path(out)), &places)
        }
        None => emit(None, &json!({ "lattice": lattice, "places": places })),
    }
}

/// Accepts a bare lattice object or the `{"lattice", "places"}` pair that
/// `build` prints without `--out`.
fn load_lattice(path: &Path) -> fflat::Result<IntegerLattice> {
    let text = read(path)?;
    if let Ok(Value::Object(obj)) = serde_json::from_str::<Value>(&text) {
        if let Some(inner) = obj.get("lattice") {
            return lattice_from_json(&inner.to_string());
        }
    }
    lattice_from_json(&text)
}

fn invariants(args: InvariantArgs) -> fflat::Result<()> {
    let lat = load_lattice(&args.lattice)?;
    let cap = args.caps.max_enum;
    let report = InvariantReport {
        det2: Some(lat.det2()?),
        minimum2: Some(minimum2(&lat, cap)?),
        minima: Some(successive_minima2(&lat, cap)?),
        kissing: Some(kissing_number(&lat, cap)?),
        well_rounded: Some(is_well_rounded(&lat, cap)?),
        minimal_basis: if args.no_basis { None } else { Some(minimal_vector_basis(&lat, cap, DEFAULT_BASIS_BUDGET)?) },
    };
    emit(args.out.as_deref(), &report.to_json())
}

fn aut(args: AutArgs) -> fflat::Result<()> {
    let lat = load_lattice(&args.lattice)?;
    let report = match args.mode {
        AutMode::Perm => perm_report(&perm_stabilizer(&lat, args.caps.max_perm_dim, args.caps.max_enum)?),
        AutMode::Full => isometry_group_order(&lat, DEFAULT_MAX_ISOMETRY_RANK, args.caps.max_enum)?,
    };
    emit(args.out.as_deref(), &isometry_report_to_json(&report))
}

fn outcome_json(o: &CheckOutcome) -> Value {
    let (status, reason) = match &o.status {
        Status::Pass => ("pass", None),
        Status::Fail(r) => ("fail", Some(r.clone())),
        Status::Skipped(r) => ("skipped", Some(r.clone())),
    };
    let mut obj = Map::new();
    obj.insert("name".into(), json!(o.name));
    obj.insert("criterion".into(), json!(o.criterion));
    obj.insert("status".into(), json!(status));
    if let Some(r) = reason {
        obj.insert("reason".into(), json!(r));
    }
    obj.insert("details".into(), Value::Array(o.details.iter().map(|(k, v)| json!([k, v])).collect()));
    Value::Object(obj)
}

fn verify(args: VerifyArgs) -> fflat::Result<bool> {
    if args.list {
        for c in checks() {
            println!("{:<24} criterion {:>2}  {}", c.name, c.criterion, c.summary);
        }
        return Ok(true);
    }
    let caps = args.caps.caps();
    let outcomes = if args.all {
        run_all(&caps)
    } else if args.check.is_empty() {
        return Err(Error::InvalidInput(format!("pass --all, --list or --check NAME ({})", check_names().join(", "))));
    } else {
        // validate every name before running anything
        for name in &args.check {
            if !check_names().contains(&name.as_str()) {
                return Err(Error::InvalidInput(format!("unknown check {name:?}")));
            }
        }
        args.check.iter().map(|n| run_check(n, &caps)).collect::<fflat::Result<Vec<_>>>()?
    };
    for o in &outcomes {
        eprintln!("{:<24} {}", o.name, o.status);
    }
    let count = |f: fn(&Status) -> bool| outcomes.iter().filter(|o| f(&o.status)).count();
    let failed = count(|s| matches!(s, Status::Fail(_)));
    let summary = json!({
        "checks": outcomes.iter().map(outcome_json).collect::<Vec<_>>(),
        "passed": count(|s| matches!(s, Status::Pass)),
        "failed": failed,
        "skipped": count(|s| matches!(s, Status::Skipped(_))),
    });
    emit(None, &summary)?;
    Ok(failed == 0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(a) => build(a).map(|_| true),
        Command::Invariants(a) => invariants(a).map(|_| true),
        Command::Aut(a) => aut(a).map(|_| true),
        Command::Verify(a) => verify(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
