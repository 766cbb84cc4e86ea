use std::fs;
use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cyclex::config::{validate_config, DEFAULT_SPHERE_SAMPLES};
use cyclex::experiment::run_experiment;
use cyclex::geometry::{vector, ConvexSet, Vector};
use cyclex::impossibility::{falsify_candidate, spiral, CandidateFunctional, SpiralSpec};
use cyclex::output;

#[derive(Parser)]
#[command(
    name = "cyclex",
    version,
    about = "Periodic and parallel projection experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a JSON config file.
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Project a point onto a set given as a JSON descriptor.
    Project {
        #[arg(long)]
        set: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Print the polygonal spiral from y towards the ray through x as CSV.
    Spiral {
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_hyphen_values = true)]
        y: String,
        #[arg(long)]
        n: usize,
    },
    /// Run a built-in candidate functional around the degenerate-family loop.
    Falsify {
        #[arg(long)]
        candidate: String,
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value = "1,0", allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = DEFAULT_SPHERE_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_point(s: &str) -> Result<Vector, String> {
    let coords = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|e| format!("`{t}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(vector(&coords))
}

fn join(v: &Vector) -> String {
    v.iter()
        .map(|x| format!("{x:?}"))
        .collect::<Vec<_>>()
        .join(",")
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run {
            config,
            out_dir,
            seed,
        } => {
            let raw = match fs::read_to_string(&config) {
                Ok(r) => r,
                Err(e) => return fail(format!("{}: {e}", config.display())),
            };
            let mut cfg = match validate_config(&raw) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            match run_experiment(&cfg, out_dir.as_deref()) {
                Ok(outcome) => {
                    for w in &outcome.warnings {
                        eprintln!("warning: {w}");
                    }
                    println!("{}", outcome.summary);
                    for f in &outcome.files {
                        println!("wrote {}", f.display());
                    }
                    ExitCode::from(outcome.status.exit_code())
                }
                Err(e) => fail(e),
            }
        }
        Command::Project { set, point } => {
            let set: ConvexSet = match serde_json::from_str(&set) {
                Ok(s) => s,
                Err(e) => return fail(format!("--set: {e}")),
            };
            let x = match parse_point(&point) {
                Ok(x) => x,
                Err(e) => return fail(format!("--point: {e}")),
            };
            match set.project(&x) {
                Ok(p) => {
                    println!("{}", join(&p));
                    ExitCode::SUCCESS
                }
                Err(e) => fail(e),
            }
        }
        Command::Spiral { x, y, n } => {
            let (x, y) = match (parse_point(&x), parse_point(&y)) {
                (Ok(x), Ok(y)) => (x, y),
                (Err(e), _) => return fail(format!("--x: {e}")),
                (_, Err(e)) => return fail(format!("--y: {e}")),
            };
            let s = match SpiralSpec::new(x, y, n).and_then(|spec| spiral(&spec)) {
                Ok(s) => s,
                Err(e) => return fail(e),
            };
            let mut w = csv::Writer::from_writer(io::stdout());
            if let Err(e) = output::write_spiral_rows(&mut w, &s).and_then(|_| w.flush()) {
                return fail(e);
            }
            ExitCode::SUCCESS
        }
        Command::Falsify {
            candidate,
            m,
            rho,
            z,
            samples,
            seed,
        } => {
            let Some(c) = CandidateFunctional::builtin(&candidate) else {
                return fail(format!(
                    "unknown candidate `{candidate}` (perimeter, cyclic2, pairwise2, constant, norm)"
                ));
            };
            let z = match parse_point(&z) {
                Ok(z) => z,
                Err(e) => return fail(format!("--z: {e}")),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            match falsify_candidate(&c, m, &z, rho, samples, &mut rng) {
                Ok(report) => {
                    print!("{}", output::to_json(&report));
                    if report.falsified() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail(e),
            }
        }
    }
}
