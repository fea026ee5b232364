use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use posmap::classify::{family_params, report, ClassifyFamily};
use posmap::detect::{detect, parse_state, render};
use posmap::family::{parse_point_list, Axis, Family, Grid};
use posmap::prescribe::{parse_named_set, parse_zero_set_file, solve, write_basis};
use posmap::sweep::{run, write_csv, write_json, Format, OutsidePolicy, SweepConfig};
use posmap::CliError;
use posmap_core::prescribe::{projection_residual, DEFAULT_RANK_TOL};

#[derive(Parser)]
#[command(name = "posmap", version, about = "Positive maps on 3x3 matrices: sweeps, classification, detection, zero prescription")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the PPT-state SDP over a parameter grid of one family.
    Sweep(SweepArgs),
    /// Region membership, CP/co-CP status and spectrum checks for one map.
    Classify(ClassifyArgs),
    /// Run PPT, Choi-map and witness-bank tests on a 9x9 state.
    Detect(DetectArgs),
    /// Solve for all maps vanishing on a prescribed zero set.
    Prescribe(PrescribeArgs),
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// 1: PSD and PPT constraints; 2: additionally the Choi-map constraint.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    alg: u8,
    /// Axes `lo:hi:n[:centered]`, comma separated, one per parameter.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "points")]
    grid: Vec<Axis>,
    /// Explicit points `a,b;c,d;...`.
    #[arg(long, allow_hyphen_values = true)]
    points: Option<String>,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Exit 0 even if some points end without an optimal status.
    #[arg(long)]
    keep_going: bool,
    #[arg(long, value_enum, default_value_t = OutsidePolicy::Skip)]
    outside: OutsidePolicy,
    #[arg(long)]
    gap_tol: Option<f64>,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Worker threads; defaults to the number of CPUs. Output does not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long, value_enum)]
    family: ClassifyFamily,
    /// `t`; `p,q`; `m,n`; or `r,r0,r1,r2,c`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    params: Vec<f64>,
}

#[derive(Args)]
struct DetectArgs {
    /// JSON file with 9x9 row-major "re" and "im" arrays.
    #[arg(long)]
    state: PathBuf,
}

#[derive(Args)]
struct PrescribeArgs {
    /// `choi`, `t(T)`, `pq(P,Q)` or `mn(M,N)`.
    #[arg(long, conflicts_with = "file", required_unless_present = "file", allow_hyphen_values = true)]
    set: Option<String>,
    /// JSON zero-set file.
    #[arg(long)]
    file: Option<PathBuf>,
    #[arg(long, default_value_t = 8)]
    phase_grid: usize,
    #[arg(long, default_value_t = DEFAULT_RANK_TOL)]
    rank_tol: f64,
    /// Where to write the orthonormal basis (JSON).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, f: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<(), CliError> {
    let mut w = BufWriter::new(File::create(path)?);
    f(&mut w)?;
    w.flush()?;
    Ok(())
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let grid = match (&args.points, args.grid.is_empty()) {
        (Some(list), _) => Grid::Points { points: parse_point_list(list)? },
        (None, false) => Grid::Axes { axes: args.grid.clone() },
        (None, true) => Grid::Axes { axes: args.family.default_axes() },
    };
    let mut config = SweepConfig::new(args.family, args.alg, grid, args.outside);
    if let Some(tol) = args.gap_tol {
        config.gap_tol = tol;
    }
    if let Some(n) = args.max_iter {
        config.max_iter = n;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Input(format!("thread pool: {e}")))?;
    let out = pool.install(|| run(&config))?;
    if !out.skipped.is_empty() {
        eprintln!("note: skipped {} grid point(s) outside the {} region", out.skipped.len(), args.family);
    }
    for r in out.records.iter().filter(|r| !r.in_region) {
        eprintln!("warning: {:?} lies outside the {} region; solved anyway", r.params, args.family);
    }
    write_file(&args.out, |w| match args.format {
        Format::Csv => write_csv(&out, w),
        Format::Json => write_json(&out, w),
    })?;
    println!("wrote {} record(s) to {} (config hash {})", out.records.len(), args.out.display(), config.hash());
    let failures = out.failures();
    if failures > 0 {
        for r in out.records.iter().filter(|r| r.status != posmap_core::sdp::SdpStatus::Optimal) {
            eprintln!("solver: {:?} ended with status {}", r.params, r.status.as_str());
        }
        if !args.keep_going {
            return Err(CliError::Solver(format!("{failures} point(s) did not reach an optimal status")));
        }
    }
    Ok(())
}

fn cmd_classify(args: ClassifyArgs) -> Result<(), CliError> {
    let params = family_params(args.family, &args.params)?;
    print!("{}", report(&params)?);
    Ok(())
}

fn cmd_detect(args: DetectArgs) -> Result<(), CliError> {
    let text = read(&args.state)?;
    let rho = parse_state(&text).map_err(|e| CliError::Input(format!("{}: {e}", args.state.display())))?;
    print!("{}", render(&detect(&rho)?));
    Ok(())
}

fn cmd_prescribe(args: PrescribeArgs) -> Result<(), CliError> {
    let (label, zeros, reference) = match (&args.set, &args.file) {
        (Some(spec), _) => {
            let named = parse_named_set(spec)?;
            (named.label, named.zeros, Some(named.reference))
        }
        (None, Some(path)) => {
            let zeros = parse_zero_set_file(&read(path)?)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), zeros, None)
        }
        (None, None) => unreachable!("clap requires --set or --file"),
    };
    let sol = solve(&zeros, args.phase_grid, args.rank_tol)?;
    println!("zero_set: {label}");
    println!("phase_grid: {} (checked against {})", args.phase_grid, 2 * args.phase_grid);
    println!("dimension: {}", sol.dimension());
    if let Some(map) = reference {
        println!("projection_residual: {:e}", projection_residual(&sol.basis, &map));
    }
    if let Some(path) = &args.out {
        write_file(path, |w| write_basis(&sol, &label, args.phase_grid, args.rank_tol, w))?;
        println!("wrote basis to {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(a) => cmd_sweep(a),
        Command::Classify(a) => cmd_classify(a),
        Command::Detect(a) => cmd_detect(a),
        Command::Prescribe(a) => cmd_prescribe(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
