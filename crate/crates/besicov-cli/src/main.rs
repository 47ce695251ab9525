//! Command line interface over the `besicov` library: search for and verify
//! Besicovitch certificates, compute exact averaging-operator norms, evaluate
//! adversarial lower bounds and extrapolation constants, convert families,
//! and print the known-constant table.
//!
//! Exit codes: 0 on success, 1 when a mathematically valid request fails its
//! check (invalid certificate, failed witness), 2 on unparseable input or
//! invalid configuration.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use besicov::besicovitch::{
    clique_search_exact, clique_search_heuristic, equalize_family, open_closed_convert,
    table_rows, validate_family, CandidateSet, Certificate, DEFAULT_CLIQUE_CAP,
    DEFAULT_FLOAT_MARGIN,
};
use besicov::constructions::{build_adversarial, extrapolation_constant, weak_pp_witness};
use besicov::constructions::strong_lower_bound_eval;
use besicov::geometry::{BallKind, NormSpec};
use besicov::measure::{AveragingOperator, DiscreteMeasure};
use besicov::scalar::Scalar;
use besicov::Error;

#[derive(Parser)]
#[command(
    name = "besicov",
    version,
    about = "Averaging operators and Besicovitch families on finite metric measure spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Search a candidate universe for a maximum-cardinality valid family.
    Search(SearchArgs),
    /// Re-validate a certificate file; exit 0 only if it still holds.
    Verify(VerifyArgs),
    /// L1 operator norm of an averaging operator over a measure file.
    Norm(NormArgs),
    /// Strong-type lower bound from a certificate and a spike weight c.
    Adversarial(AdversarialArgs),
    /// Extrapolation constant and, given a certificate, the weak (p,p) witness.
    Extrapolate(ExtrapolateArgs),
    /// Print the known sharp constants.
    Table,
    /// Convert a certificate between ball kinds or equalize its radii.
    Convert(ConvertArgs),
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Generator {
    Corners,
    Lattice,
    FibCircle,
    FibSphere,
    Icosahedron,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Method {
    Auto,
    Exact,
    Heuristic,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum KindArg {
    Closed,
    Open,
}

impl From<KindArg> for BallKind {
    fn from(k: KindArg) -> BallKind {
        match k {
            KindArg::Closed => BallKind::Closed,
            KindArg::Open => BallKind::Open,
        }
    }
}

#[derive(Args)]
struct SearchArgs {
    /// Ambient norm: l1, l2, linf, or lp:<exponent>.
    #[arg(long, default_value = "l2")]
    norm: String,
    /// Ambient dimension; generators with a fixed dimension must agree.
    #[arg(long, default_value_t = 2)]
    dim: usize,
    /// Candidate generator.
    #[arg(long, value_enum)]
    gen: Generator,
    /// Point count (fib-circle, fib-sphere) or points per axis (lattice).
    #[arg(long, default_value_t = 500)]
    n: usize,
    /// Random seed for the heuristic method; recorded in the output.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Restart budget for the heuristic method.
    #[arg(long, default_value_t = 400)]
    budget: usize,
    /// Membership/separation margin. Defaults to 0 for exact universes and
    /// 1e-9 for float ones.
    #[arg(long)]
    margin: Option<f64>,
    /// Admissible-candidate cap for the exact method.
    #[arg(long, default_value_t = DEFAULT_CLIQUE_CAP)]
    cap: usize,
    #[arg(long, value_enum, default_value_t = Method::Auto)]
    method: Method,
    #[arg(long, value_enum, default_value_t = KindArg::Closed)]
    kind: KindArg,
    /// Write the certificate to this path as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Certificate file.
    file: PathBuf,
    /// Re-validate at this margin instead of the recorded one.
    #[arg(long)]
    margin: Option<f64>,
}

#[derive(Args)]
struct NormArgs {
    /// Measure file: JSON, or CSV with one atom per row and the weight last.
    file: PathBuf,
    /// Ball radius.
    #[arg(long, default_value = "1")]
    r: String,
    #[arg(long, value_enum, default_value_t = KindArg::Closed)]
    kind: KindArg,
    /// Ambient norm for CSV inputs (JSON inputs carry their own).
    #[arg(long, default_value = "l2")]
    norm: String,
    /// Print the full report as JSON.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct AdversarialArgs {
    /// Certificate file describing the ball family.
    file: PathBuf,
    /// Spike weight placed at the witness.
    #[arg(long, default_value = "1/1000")]
    c: String,
}

#[derive(Args)]
struct ExtrapolateArgs {
    /// Exponent p > 1, as an integer, fraction, or decimal.
    #[arg(long)]
    p: String,
    /// Target norm bound N.
    #[arg(long = "N")]
    n: u64,
    /// Certificate with at least J centers; runs the weak (p,p) witness.
    file: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum ConvertOp {
    /// Closed family to open or open family to closed.
    OpenClosed,
    /// Normalize to a common radius with the witness at the origin.
    Equalize,
}

#[derive(Args)]
struct ConvertArgs {
    /// Certificate file.
    file: PathBuf,
    #[arg(long, value_enum)]
    op: ConvertOp,
    /// Write the converted certificate to this path as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
}

/// A failure with the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

/// Unparseable input or invalid configuration: exit 2.
fn config<E: std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: 2,
        message: e.to_string(),
    }
}

/// A well-formed request whose mathematical check failed: exit 1.
fn broken<E: std::fmt::Display>(e: E) -> Failure {
    Failure {
        code: 1,
        message: e.to_string(),
    }
}

/// Exact scalars print as fractions, floats with 17 significant digits.
fn show(s: &Scalar) -> String {
    if s.is_exact() {
        s.to_string()
    } else {
        format!("{:.16e}", s.to_f64())
    }
}

fn show_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_norm(s: &str) -> Result<NormSpec, Failure> {
    match s.to_ascii_lowercase().as_str() {
        "l1" => Ok(NormSpec::L1),
        "l2" => Ok(NormSpec::L2),
        "linf" => Ok(NormSpec::Linf),
        lower => match lower.strip_prefix("lp:") {
            Some(p) => {
                let p: f64 = p.parse().map_err(|_| config(format!("bad exponent in {s:?}")))?;
                NormSpec::lp(p).map_err(config)
            }
            None => Err(config(format!(
                "unknown norm {s:?}; expected l1, l2, linf, or lp:<exponent>"
            ))),
        },
    }
}

fn parse_scalar(s: &str, what: &str) -> Result<Scalar, Failure> {
    Scalar::from_str(s).map_err(|e| config(format!("{what}: {e}")))
}

fn load_certificate(path: &Path) -> Result<Certificate, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| config(format!("cannot parse {}: {e}", path.display())))
}

fn load_measure(path: &Path, csv_norm: &NormSpec) -> Result<DiscreteMeasure, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| config(format!("cannot read {}: {e}", path.display())))?;
    let is_csv = path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"));
    if is_csv {
        DiscreteMeasure::from_csv(csv_norm.clone(), &text)
            .map_err(|e| config(format!("cannot parse {}: {e}", path.display())))
    } else {
        serde_json::from_str(&text)
            .map_err(|e| config(format!("cannot parse {}: {e}", path.display())))
    }
}

fn write_certificate(path: &Path, cert: &Certificate) -> Result<(), Failure> {
    let bytes = serde_json::to_vec(cert).map_err(broken)?;
    fs::write(path, bytes).map_err(|e| broken(format!("cannot write {}: {e}", path.display())))?;
    Ok(())
}

fn cmd_search(args: SearchArgs) -> Result<(), Failure> {
    let norm = parse_norm(&args.norm)?;
    let cands = match args.gen {
        Generator::Corners => CandidateSet::corners(norm, args.dim).map_err(config)?,
        Generator::Lattice => {
            let total = (args.n as f64).powi(args.dim as i32);
            if total > 200_000.0 {
                return Err(config(format!(
                    "lattice of {}^{} points is too large (cap 200000)",
                    args.n, args.dim
                )));
            }
            CandidateSet::lattice(norm, args.dim, args.n).map_err(config)?
        }
        Generator::FibCircle => {
            if args.dim != 2 {
                return Err(config("fib-circle generates planar candidates; use --dim 2"));
            }
            CandidateSet::fib_circle(norm, args.n).map_err(config)?
        }
        Generator::FibSphere => {
            if args.dim != 3 {
                return Err(config("fib-sphere generates 3D candidates; use --dim 3"));
            }
            CandidateSet::fib_sphere(norm, args.n).map_err(config)?
        }
        Generator::Icosahedron => {
            if args.dim != 3 || norm != NormSpec::L2 {
                return Err(config(
                    "the icosahedron lives in euclidean 3-space; use --norm l2 --dim 3",
                ));
            }
            CandidateSet::icosahedron().map_err(config)?
        }
    };
    let exact_universe = cands.radius().is_exact()
        && cands.anchor().mode() == besicov::scalar::ArithMode::Exact
        && cands
            .points()
            .iter()
            .all(|p| p.mode() == besicov::scalar::ArithMode::Exact);
    let margin = args
        .margin
        .unwrap_or(if exact_universe { 0.0 } else { DEFAULT_FLOAT_MARGIN });
    let kind = BallKind::from(args.kind);
    let (cert, method) = match args.method {
        Method::Exact => (
            clique_search_exact(&cands, kind, margin, args.cap).map_err(broken)?,
            "exact",
        ),
        Method::Heuristic => (
            clique_search_heuristic(&cands, kind, margin, args.seed, args.budget)
                .map_err(broken)?,
            "heuristic",
        ),
        Method::Auto => match clique_search_exact(&cands, kind, margin, args.cap) {
            Ok(cert) => (cert, "exact"),
            Err(Error::CandidateCap(..)) => (
                clique_search_heuristic(&cands, kind, margin, args.seed, args.budget)
                    .map_err(broken)?,
                "heuristic",
            ),
            Err(e) => return Err(broken(e)),
        },
    };
    cert.verify().map_err(broken)?;
    println!("seed {}", args.seed);
    println!("method {method}");
    println!("cardinality {}", cert.cardinality);
    println!("margin {}", show_f64(cert.margin));
    println!("claim E >= {}", cert.constant_claim());
    if let Some(out) = &args.out {
        write_certificate(out, &cert)?;
        println!("wrote {}", out.display());
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), Failure> {
    let cert = load_certificate(&args.file)?;
    let margin = args.margin.unwrap_or(cert.margin);
    cert.verify_at(margin).map_err(broken)?;
    println!(
        "valid: cardinality {}, margin {}, claim E >= {}",
        cert.cardinality,
        show_f64(margin),
        cert.constant_claim()
    );
    Ok(())
}

fn cmd_norm(args: NormArgs) -> Result<(), Failure> {
    let csv_norm = parse_norm(&args.norm)?;
    let mu = load_measure(&args.file, &csv_norm)?;
    let r = parse_scalar(&args.r, "bad radius")?;
    let op = AveragingOperator::new(mu, r, args.kind.into()).map_err(broken)?;
    let conjugate = op.conjugate();
    let (norm_value, argmax) = op.l1_operator_norm();
    if args.json {
        let report = serde_json::json!({
            "operator_norm": norm_value,
            "argmax": argmax,
            "conjugate": conjugate.values(),
        });
        println!("{report}");
    } else {
        println!("operator norm {}", show(&norm_value));
        println!("argmax atom {argmax}");
        let rendered: Vec<String> = conjugate.values().iter().map(show).collect();
        println!("conjugate [{}]", rendered.join(", "));
    }
    Ok(())
}

fn cmd_adversarial(args: AdversarialArgs) -> Result<(), Failure> {
    let cert = load_certificate(&args.file)?;
    let family = cert.family().map_err(broken)?;
    let c = parse_scalar(&args.c, "bad c")?;
    let inst = build_adversarial(&family, &c).map_err(broken)?;
    let bound = strong_lower_bound_eval(&inst).map_err(broken)?;
    println!("family size {}", inst.family_size);
    println!("c {}", show(&inst.c));
    println!("value {}", show(&bound.value));
    println!("value approx {}", show_f64(bound.value.to_f64()));
    println!("threshold n/(1+c) {}", show(&bound.threshold));
    println!("exceeds threshold: {}", bound.pass);
    if !bound.pass {
        return Err(broken("adversarial bound failed to exceed n/(1+c)"));
    }
    Ok(())
}

fn cmd_extrapolate(args: ExtrapolateArgs) -> Result<(), Failure> {
    let p = parse_scalar(&args.p, "bad p")?;
    let constant = extrapolation_constant(&p, args.n).map_err(config)?;
    println!("constant {constant}");
    println!("required family size J = {}", &constant + 1u32);
    let Some(path) = &args.file else {
        return Ok(());
    };
    let cert = load_certificate(path)?;
    let family = cert.family().map_err(broken)?;
    let witness = weak_pp_witness(&p, args.n, &family).map_err(broken)?;
    println!("c* = {}", show(&witness.c_star));
    println!("alpha = {}", show(&witness.alpha));
    println!("measured ratio {}", show(&witness.ratio));
    println!("target N = {}", witness.target);
    println!("witness passes: {}", witness.pass);
    if !witness.pass {
        return Err(broken("weak (p,p) witness did not exceed N"));
    }
    Ok(())
}

fn cmd_table() -> Result<(), Failure> {
    let rows = table_rows();
    let width = rows
        .iter()
        .map(|(space, _)| space.chars().count())
        .max()
        .unwrap_or(0);
    for (space, constant) in rows {
        let pad = " ".repeat(width - space.chars().count());
        println!("{space}{pad}  {constant}");
    }
    Ok(())
}

fn cmd_convert(args: ConvertArgs) -> Result<(), Failure> {
    let cert = load_certificate(&args.file)?;
    let family = cert.family().map_err(broken)?;
    let converted = match args.op {
        ConvertOp::OpenClosed => open_closed_convert(&family).map_err(broken)?,
        ConvertOp::Equalize => equalize_family(&family).map_err(broken)?,
    };
    // Fresh conversions sit exactly on their defining bounds, so they are
    // certified at margin 0 regardless of the input margin.
    let out = validate_family(&converted, 0.0).map_err(broken)?;
    println!(
        "converted {:?} -> {:?}",
        cert.kind,
        out.kind
    );
    println!("cardinality {}", out.cardinality);
    println!("radius {}", show(&out.radius));
    if let Some(path) = &args.out {
        write_certificate(path, &out)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("BESICOV_THREADS") {
        match threads.parse::<usize>() {
            Ok(k) if k > 0 => {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(k)
                    .build_global();
            }
            _ => {
                eprintln!("error: BESICOV_THREADS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Search(args) => cmd_search(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Norm(args) => cmd_norm(args),
        Command::Adversarial(args) => cmd_adversarial(args),
        Command::Extrapolate(args) => cmd_extrapolate(args),
        Command::Table => cmd_table(),
        Command::Convert(args) => cmd_convert(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
