use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use quadray::bench::{benchmark, write_csv, BenchStats};
use quadray::check::{oracle_check, CheckOptions};
use quadray::generate::{generate_scene, KindMix};
use quadray::render::render_detection;
use quadray::scene::parse_scene;
use quadray::Method;

const EXIT_USAGE: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_ORACLE: u8 = 3;

#[derive(Parser)]
#[command(name = "quadray", version, about = "Line–quadric intersection harness")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchMethod {
    Classical,
    Separated,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// Render a detection image (binary PGM) of a scene file.
    Render {
        scene: PathBuf,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Worker threads; 0 uses every core.
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Time detection over a generated scene and write CSV.
    Bench {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        objects: usize,
        #[arg(long)]
        rays: usize,
        #[arg(long, value_enum)]
        method: BenchMethod,
        #[arg(long, default_value_t = 5)]
        reps: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long, default_value_t = 0)]
        workers: usize,
    },
    /// Compare separated and classical results on random cases.
    Check {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        cases: usize,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
    /// Write a seeded random scene file.
    Gen {
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        objects: usize,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        #[arg(long, default_value_t = 0.5)]
        sphere_fraction: f64,
    },
}

fn fail(code: u8, message: impl std::fmt::Display) -> ExitCode {
    eprintln!("quadray: {message}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_USAGE) } else { ExitCode::SUCCESS };
        }
    };
    match cli.command {
        Command::Render { scene, method, output, workers } => {
            let text = match fs::read_to_string(&scene) {
                Ok(t) => t,
                Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", scene.display())),
            };
            let scene = match parse_scene(&text) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            let image = render_detection(&scene, method, workers);
            if let Err(e) = fs::write(&output, image.to_pgm()) {
                return fail(EXIT_USAGE, format!("{}: {e}", output.display()));
            }
            ExitCode::SUCCESS
        }
        Command::Bench { seed, objects, rays, method, reps, output, workers } => {
            if rays == 0 {
                return fail(EXIT_USAGE, "--rays must be at least 1");
            }
            let scene = match generate_scene(seed, objects, KindMix::default()) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_USAGE, e),
            };
            let methods: &[Method] = match method {
                BenchMethod::Classical => &[Method::Classical],
                BenchMethod::Separated => &[Method::Separated],
                BenchMethod::Both => &[Method::Classical, Method::Separated],
            };
            let stats: Vec<BenchStats> =
                methods.iter().map(|&m| benchmark(&scene, rays, m, reps, seed, workers)).collect();
            let file = match fs::File::create(&output) {
                Ok(f) => f,
                Err(e) => return fail(EXIT_USAGE, format!("{}: {e}", output.display())),
            };
            if let Err(e) = write_csv(std::io::BufWriter::new(file), &stats) {
                return fail(EXIT_USAGE, format!("{}: {e}", output.display()));
            }
            for s in &stats {
                let amortized =
                    (s.precompute_ns_total + s.detect_ns_total) as f64 / s.detections.max(1) as f64;
                println!(
                    "{}: hits {} / {}, {:.3} ns/test, precompute {:.3} ns/ray, {:.3} ns/test amortized, checksum {}",
                    s.method,
                    s.hits,
                    s.detections,
                    s.detect_ns_per_test(),
                    s.precompute_ns_per_ray(),
                    amortized,
                    s.checksum
                );
            }
            if let [a, b] = stats.as_slice() {
                if a.hits != b.hits || a.checksum != b.checksum {
                    return fail(EXIT_ORACLE, "hit counts differ between methods");
                }
            }
            ExitCode::SUCCESS
        }
        Command::Check { seed, cases, inject_fault } => {
            if cases == 0 {
                return fail(EXIT_USAGE, "--cases must be at least 1");
            }
            let report = oracle_check(seed, cases, CheckOptions { flip_r_sign: inject_fault });
            print!("{report}");
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_ORACLE)
            }
        }
        Command::Gen { seed, objects, output, sphere_fraction } => {
            let scene = match generate_scene(seed, objects, KindMix { sphere_fraction }) {
                Ok(s) => s,
                Err(e) => return fail(EXIT_USAGE, e),
            };
            if let Err(e) = fs::write(&output, scene.to_string()) {
                return fail(EXIT_USAGE, format!("{}: {e}", output.display()));
            }
            ExitCode::SUCCESS
        }
    }
}
