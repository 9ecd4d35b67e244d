use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use gpcode::code::{
    classify_words, default_weight_guard, low_weight_codewords, min_weight, CodeError, LinearCode,
};
use gpcode::constructions::gpg::{read_gpg, write_gpg};
use gpcode::constructions::{dual_geometry, Family};
use gpcode::field::FieldSpec;
use gpcode::geometry::{distances, expected_counts, verify_polygon, Geometry};
use gpcode::par;
use gpcode::report::{render_text, run_pipeline, RunConfig};
use gpcode::traces::{
    enumerate_traces, is_projective_plane, line_blocking_bound, min_x_blocking_size, perp_geometry,
    PerpVariant, TraceError, TraceIndex, DEFAULT_SUBSET_GUARD,
};

const EXIT_ANOMALY: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_GUARD: u8 = 3;

#[derive(Parser)]
#[command(name = "gpcode", version, about = "Codes and blocking sets of generalised polygons")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a geometry from a known family and write it as gpg.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        /// Field order, or the number of sides for `ngon`.
        #[arg(long)]
        q: u64,
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Certify a geometry as a generalised n-gon.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// Rank and low-weight words of the line code over GF(p).
    Code {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        min_weight: bool,
        #[arg(long)]
        w_max: Option<usize>,
        #[arg(long)]
        classify: bool,
        /// Allow `--w-max` beyond the default guard of s + 2.
        #[arg(long)]
        allow_override: bool,
    },
    /// Smallest X-blocking set and the line-blocking bound.
    Blocking {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        exhaustive_cap: Option<usize>,
    },
    /// Distance traces with parameter d.
    Traces {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        d: usize,
    },
    /// Perp-geometries and projective points.
    Perp {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "augmented")]
        variant: PerpVariant,
    },
    /// Run the full pipeline from a JSON config.
    Report {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
        /// Also print a text summary to stdout.
        #[arg(long)]
        text: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INPUT, message: e.to_string() }
}

fn print_json(value: &impl Serialize) {
    println!("{}", serde_json::to_string_pretty(value).expect("output serializes"));
}

fn load(path: &Path) -> Result<Geometry, Failure> {
    read_gpg(path).map_err(input_error)
}

fn main() -> ExitCode {
    let threads = std::env::var("GPCODE_THREADS").ok().and_then(|v| v.parse().ok());
    par::init_threads(threads);
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Construct { family, q, dual, out } => {
            let g = family.build(q).map_err(input_error)?;
            let g = if dual { dual_geometry(&g) } else { g };
            write_gpg(&g, &out).map_err(input_error)?;
            print_json(&json!({
                "label": g.label(),
                "points": g.num_points(),
                "lines": g.num_lines(),
                "order": g.order(),
                "out": out,
            }));
            Ok(0)
        }
        Command::Verify { input, n } => {
            if n < 3 {
                return Err(input_error("--n must be at least 3"));
            }
            let g = load(&input)?;
            let report = verify_polygon(&g, n);
            let expected = report.order.and_then(|o| expected_counts(n, o.s as u64, o.t as u64).ok());
            let counts_ok = expected.is_none_or(|(p, l)| p == g.num_points() as u64 && l == g.num_lines() as u64);
            let passed = report.passed() && counts_ok;
            print_json(&json!({ "passed": passed, "expected_counts": expected, "report": report }));
            Ok(if passed { 0 } else { EXIT_ANOMALY })
        }
        Command::Code { input, p, min_weight: want_min, w_max, classify, allow_override } => {
            let g = load(&input)?;
            let field = FieldSpec::prime(p).map_err(input_error)?;
            let code = LinearCode::build(&g, &field).map_err(input_error)?;
            let guard = default_weight_guard(&code);
            if let Some(w) = w_max {
                if w > guard && !allow_override {
                    return Err(Failure {
                        code: EXIT_GUARD,
                        message: CodeError::CostGuard { requested: w, limit: guard }.to_string(),
                    });
                }
            }
            let words = if want_min || classify {
                match min_weight(&code, Some(w_max.unwrap_or(guard))) {
                    Ok(mw) => Some(mw.words),
                    Err(e) => return Err(Failure { code: EXIT_GUARD, message: e.to_string() }),
                }
            } else if let Some(w) = w_max {
                Some(low_weight_codewords(&code, w, true).map_err(input_error)?)
            } else {
                None
            };
            let index = if classify {
                let dist = distances(&g).map_err(input_error)?;
                Some(TraceIndex::build(&g, &dist).map_err(input_error)?)
            } else {
                None
            };
            let words = words.map(|w| classify_words(&code, &w, index.as_ref()));
            print_json(&json!({
                "p": p,
                "length": code.length(),
                "rank": code.rank(),
                "dual_dimension": code.dual_dimension(),
                "min_weight": if want_min || classify { words.as_ref().and_then(|w| w.first()).map(|w| w.weight) } else { None },
                "words": words,
            }));
            Ok(0)
        }
        Command::Blocking { input, exhaustive_cap } => {
            let g = load(&input)?;
            let dist = distances(&g).map_err(input_error)?;
            let (s, _) = g.order().ok_or_else(|| input_error("geometry has no order (s, t)"))?;
            let cap = exhaustive_cap.unwrap_or(s + 1);
            let min = match min_x_blocking_size(&g, &dist, cap, DEFAULT_SUBSET_GUARD) {
                Ok(m) => Some(m),
                Err(TraceError::NoBlockingSetWithinCap { .. }) => None,
                Err(e @ TraceError::CostGuard { .. }) => return Err(Failure { code: EXIT_GUARD, message: e.to_string() }),
                Err(e) => return Err(input_error(e)),
            };
            let bound = line_blocking_bound(&g, &dist).ok();
            print_json(&json!({ "cap": cap, "min_x_blocking": min, "line_blocking_bound": bound }));
            Ok(0)
        }
        Command::Traces { input, d } => {
            let g = load(&input)?;
            let dist = distances(&g).map_err(input_error)?;
            let traces = enumerate_traces(&g, &dist, d).map_err(input_error)?;
            print_json(&json!({ "d": d, "count": traces.len(), "traces": traces }));
            Ok(0)
        }
        Command::Perp { input, variant } => {
            let g = load(&input)?;
            let dist = distances(&g).map_err(input_error)?;
            let rows = (0..g.num_points())
                .map(|x| {
                    let perp = perp_geometry(&g, &dist, x, variant)?;
                    Ok(json!({
                        "point": x,
                        "points": perp.geometry.num_points(),
                        "lines": perp.geometry.num_lines(),
                        "projective": is_projective_plane(&perp.geometry),
                    }))
                })
                .collect::<Result<Vec<_>, TraceError>>()
                .map_err(input_error)?;
            let projective = rows.iter().filter(|r| r["projective"] == true).count();
            print_json(&json!({ "variant": variant, "projective_points": projective, "points": rows }));
            Ok(0)
        }
        Command::Report { config, out, seed, text } => {
            let raw = fs::read_to_string(&config).map_err(|e| input_error(format!("{}: {e}", config.display())))?;
            let mut cfg = RunConfig::from_json(&raw).map_err(input_error)?;
            if let Some(seed) = seed {
                cfg.seed = seed;
            }
            let report = run_pipeline(&cfg, config.parent()).map_err(input_error)?;
            let target = out.or_else(|| cfg.output.clone());
            match target {
                Some(path) => fs::write(&path, report.to_json()).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
                None if !text => print!("{}", report.to_json()),
                None => {}
            }
            if text {
                print!("{}", render_text(&report));
            }
            Ok(report.exit_code() as u8)
        }
    }
}
