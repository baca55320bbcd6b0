//! Command-line front end. The binary only forwards `argv` and the seed.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain or data error, 3 I/O
//! error, 4 failed verification.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};

use crate::bounds::{is_rigidity_point, report, BoundReport};
use crate::error::{Error, Result};
use crate::geodesy::{geodesy_report_with, Sources};
use crate::mesh::TriangleMesh;
use crate::spaceform::K_MAX;
use crate::surfaces::SurfaceModel;
use crate::sweep::{sweep, write_csv};
use crate::verify::{self, Level};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

/// Environment variable holding the sampling seed.
pub const SEED_VAR: &str = "ISODIA_SEED";

#[derive(Debug, Parser)]
#[command(name = "isodia", version, about = "Area bounds for closed surfaces with curvature bounded below")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Every applicable bound on V/D² for one (χ, k, ρ).
    Bound(BoundArgs),
    /// Tabulate bounds over a range of k as CSV.
    Sweep(SweepArgs),
    /// Run the cross-checks against model surfaces and meshes.
    Verify(VerifyArgs),
    /// Generate or load a mesh, export OFF, measure it.
    Mesh(MeshArgs),
}

/// `k` as a number or the token `pi2` for π².
pub fn parse_k(s: &str) -> std::result::Result<f64, String> {
    if s.trim() == "pi2" {
        return Ok(K_MAX);
    }
    s.trim().parse::<f64>().map_err(|e| format!("{s:?} is not a number or `pi2`: {e}"))
}

#[derive(Debug, Args)]
pub struct BoundArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub chi: i32,
    #[arg(long, value_parser = parse_k, allow_hyphen_values = true)]
    pub k: f64,
    /// R/D, in [1/2, 1].
    #[arg(long)]
    pub rho: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub chi: i32,
    #[arg(long, value_parser = parse_k, allow_hyphen_values = true)]
    pub k_min: f64,
    #[arg(long, value_parser = parse_k, allow_hyphen_values = true)]
    pub k_max: f64,
    #[arg(long)]
    pub steps: usize,
    /// Output CSV path; standard output if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LevelArg {
    Quick,
    Full,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value = "quick")]
    pub level: LevelArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Sphere,
    #[value(alias = "rp2")]
    ProjectivePlane,
    Torus,
    Klein,
    #[value(alias = "doubled-disk")]
    Disk,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("source").required(true).args(["model", "input"])))]
pub struct MeshArgs {
    /// Model to mesh; omit when reading `--in`.
    #[arg(value_enum)]
    pub model: Option<ModelKind>,
    /// Radius for sphere, projective plane and disk.
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    #[arg(long, default_value_t = 1.0)]
    pub q: f64,
    /// Subdivision level, grid size or ring count.
    #[arg(long)]
    pub res: Option<usize>,
    /// Read an OFF mesh instead of generating one.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// Write the mesh as OFF.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print the geodesy report as JSON.
    #[arg(long)]
    pub report: bool,
    #[arg(long, default_value_t = 1)]
    pub steiner: u32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io(_) | Error::Csv(_) | Error::Json(_) => EXIT_IO,
        _ => EXIT_DOMAIN,
    }
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map_or_else(|| "n/a".to_owned(), |v| format!("{v:.16}"))
}

pub fn render_bound_report(rep: &BoundReport) -> String {
    let mut s = String::new();
    let inv = &rep.invariants;
    let rho = rep.rho.map_or_else(|| "-".to_owned(), |r| r.to_string());
    let _ = writeln!(s, "chi = {}, k = {}, rho = {rho}", rep.chi, rep.k);
    let _ = writeln!(s, "w = {:.16}, lambda = {:.16e}, alpha = {:.16}", inv.w, inv.lambda_chi, inv.alpha_chi);
    let theorem_note = if rep.theorem_is_limit { "  (lambda = 0 limit v_k(1))" } else { "" };
    let _ = writeln!(s, "theorem_bound          {}{theorem_note}", fmt_opt(rep.theorem_bound));
    let _ = writeln!(s, "root_bound             {}", fmt_opt(rep.root_bound));
    let quartic_note = if rep.k < 0.0 { "" } else { "  (k < 0 only)" };
    let _ = writeln!(s, "quartic_bound          {}{quartic_note}", fmt_opt(rep.quartic_bound));
    let _ = writeln!(s, "prop_bound             {}", fmt_opt(rep.prop_bound));
    let _ = writeln!(s, "corollary_radius_bound {}", fmt_opt(rep.corollary_radius_bound));
    let _ = writeln!(s, "bishop_at_R            {}", fmt_opt(rep.bishop_at_r));
    let _ = writeln!(s, "bishop_at_D            {:.16}", rep.bishop_at_d);
    if rep.k >= 0.0 {
        let _ = writeln!(s, "trivial                {:.16}", rep.trivial_pi);
    } else {
        let _ = writeln!(s, "trivial                n/a  (pi bounds V/D^2 only for k >= 0)");
    }
    let _ = writeln!(s, "best                   {:.16} ({})", rep.best, rep.best_name);
    if is_rigidity_point(rep.chi, rep.k) {
        let model = match rep.chi {
            2 => "round sphere",
            1 => "round projective plane",
            _ => "flat surface",
        };
        let _ = writeln!(
            s,
            "note: lambda_chi(k) is (nearly) zero; equality case of the {model}, bound tends to v_k(1) = {:.16}",
            rep.bishop_at_d
        );
    }
    s
}

pub fn cmd_bound(args: &BoundArgs, out: &mut dyn Write) -> Result<()> {
    let rep = report(args.chi, args.k, args.rho)?;
    out.write_all(render_bound_report(&rep).as_bytes())?;
    Ok(())
}

pub fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write) -> Result<()> {
    let rows = sweep(args.chi, args.k_min, args.k_max, args.steps)?;
    match &args.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            write_csv(&rows, &mut file)?;
            file.flush()?;
        }
        None => write_csv(&rows, out)?,
    }
    Ok(())
}

/// Runs the suite; returns whether every check passed.
pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool> {
    let level = match args.level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let rep = verify::run(level);
    writeln!(out, "{rep}")?;
    for c in rep.failures() {
        writeln!(err, "failed: {}", c.name)?;
    }
    Ok(rep.passed())
}

pub fn model_from_args(args: &MeshArgs, kind: ModelKind) -> SurfaceModel {
    let (a, p, q) = (args.a, args.p, args.q);
    match kind {
        ModelKind::Sphere => SurfaceModel::RoundSphere { a },
        ModelKind::ProjectivePlane => SurfaceModel::RoundProjectivePlane { a },
        ModelKind::Torus => SurfaceModel::FlatTorus { p, q },
        ModelKind::Klein => SurfaceModel::FlatKleinBottle { p, q },
        ModelKind::Disk => SurfaceModel::DoubledFlatDisk { a },
    }
}

pub fn cmd_mesh(args: &MeshArgs, seed: u64, out: &mut dyn Write) -> Result<()> {
    let mesh = match (&args.input, args.model) {
        (Some(path), _) => TriangleMesh::read_off(path)?,
        (None, Some(kind)) => {
            let res = args
                .res
                .ok_or_else(|| Error::InvalidModel("--res is required when generating a mesh".into()))?;
            model_from_args(args, kind).sample_mesh(res)?
        }
        (None, None) => return Err(Error::InvalidModel("give a model or --in <file.off>".into())),
    };
    let mesh = mesh.with_steiner_level(args.steiner);
    if let Some(path) = &args.out {
        mesh.write_off(path)?;
    }
    if args.report {
        let rep = geodesy_report_with(&mesh, Sources::auto(&mesh), seed)?;
        writeln!(out, "{}", rep.to_json()?)?;
    } else if args.out.is_none() {
        writeln!(
            out,
            "{} vertices, {} triangles, euler characteristic {}",
            mesh.vertex_count(),
            mesh.triangles.len(),
            mesh.euler_characteristic()
        )?;
    }
    Ok(())
}

/// Parses `argv` (program name first) and runs the command; returns the
/// process exit code.
pub fn run<I, T>(argv: I, seed: u64, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{}", e.render())
            } else {
                write!(err, "{}", e.render())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Bound(a) => cmd_bound(a, out),
        Command::Sweep(a) => cmd_sweep(a, out),
        Command::Mesh(a) => cmd_mesh(a, seed, out),
        Command::Verify(a) => match cmd_verify(a, out, err) {
            Ok(true) => Ok(()),
            Ok(false) => return EXIT_VERIFY,
            Err(e) => Err(e),
        },
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Seed from [`SEED_VAR`], 0 when unset or unparseable.
pub fn seed_from_env() -> u64 {
    std::env::var(SEED_VAR).ok().and_then(|s| s.trim().parse().ok()).unwrap_or(0)
}
