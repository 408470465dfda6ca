//! Command-line interface: classify germs, compute links and companions, and
//! verify exact links against the sampling oracle.

use clap::{Args, Parser, Subcommand};
use cdvlink::jet::Rat;
use cdvlink::parse::{parse_input, InputSpec};
use cdvlink::pipeline::{run_pipeline, PipelineOptions, EXIT_PARSE_ERROR};
use cdvlink::quotient::{companion, GradedAction};
use cdvlink::report::Diagnostic;
use num_bigint::BigInt;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cdvlink",
    about = "Classify real 3-fold compound Du Val singularities and compute the \
             topology of their real links",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Input germ, e.g. "x^2+y^2+z^4+t^6 quotient: 1/2(1,1,1,0)".
    input: Option<String>,
    /// Grading clause as 1/n(a,b,c,d), alternative to the inline clause.
    #[arg(long)]
    quotient: Option<String>,
    /// Truncation order for the jet arithmetic.
    #[arg(long, default_value_t = 12)]
    truncation: u32,
    /// Sphere radius for the sampling oracle, as a rational like 1/2.
    #[arg(long, default_value = "1/2")]
    epsilon: String,
    /// Grid resolution per axis for the sampling oracle.
    #[arg(long, default_value_t = 64)]
    resolution: u32,
    /// Emit the report as JSON (NDJSON in batch mode).
    #[arg(long)]
    json: bool,
    /// Process one input per line from a file; reports keep input order.
    #[arg(long)]
    batch: Option<PathBuf>,
    /// Write the sampled surface mesh in OFF format to a file.
    #[arg(long)]
    mesh_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify the singularity family and normal form.
    Classify(CommonArgs),
    /// Classify and compute the link of the real points.
    Link(CommonArgs),
    /// Print the companion of a graded input.
    Companion(CommonArgs),
    /// Compute the link and cross-check it with the sampling oracle.
    Verify(CommonArgs),
}

fn parse_epsilon(s: &str) -> Result<Rat, String> {
    let parts: Vec<&str> = s.split('/').collect();
    let parse_int = |p: &str| -> Result<BigInt, String> {
        p.trim()
            .parse::<BigInt>()
            .map_err(|e| format!("bad rational '{s}': {e}"))
    };
    match parts.as_slice() {
        [a] => Ok(Rat::from_integer(parse_int(a)?)),
        [a, b] => {
            let den = parse_int(b)?;
            if den == BigInt::from(0) {
                return Err("epsilon denominator is zero".into());
            }
            Ok(Rat::new(parse_int(a)?, den))
        }
        _ => Err(format!("bad rational '{s}'")),
    }
}

fn gather_inputs(args: &CommonArgs) -> Result<Vec<String>, String> {
    if let Some(path) = &args.batch {
        let data = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
        Ok(data
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(String::from)
            .collect())
    } else if let Some(input) = &args.input {
        Ok(vec![input.clone()])
    } else {
        Err("no input: pass a germ or --batch FILE".into())
    }
}

fn parse_one(text: &str, args: &CommonArgs) -> Result<InputSpec, cdvlink::ParseError> {
    let mut spec = parse_input(text)?;
    if spec.action.is_none() {
        if let Some(q) = &args.quotient {
            let clause = format!("t quotient: {q}");
            let parsed = parse_input(&clause)?;
            spec.action = parsed.action;
        }
    }
    Ok(spec)
}

fn write_mesh(path: &PathBuf, link: &cdvlink::SampledLink) -> Result<(), String> {
    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str(&format!(
        "{} {} 0\n",
        link.mesh_vertices.len(),
        link.mesh_triangles.len()
    ));
    for v in &link.mesh_vertices {
        // Project the 4d point along the last coordinate for viewing.
        out.push_str(&format!("{} {} {}\n", v[0], v[1], v[2]));
    }
    for t in &link.mesh_triangles {
        out.push_str(&format!("3 {} {} {}\n", t[0], t[1], t[2]));
    }
    std::fs::write(path, out).map_err(|e| format!("cannot write {}: {e}", path.display()))
}

fn run_common(args: &CommonArgs, verify: bool, link_stage: bool) -> ExitCode {
    let epsilon = match parse_epsilon(&args.epsilon) {
        Ok(e) => e,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_PARSE_ERROR as u8);
        }
    };
    let inputs = match gather_inputs(args) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_PARSE_ERROR as u8);
        }
    };
    // Exporting a mesh needs a sample even when the link is exact.
    let verify = verify || (link_stage && args.mesh_out.is_some());
    let opts = PipelineOptions {
        truncation: args.truncation,
        epsilon,
        resolution: args.resolution,
        verify,
        estimate_partial: verify || link_stage,
    };
    let mut worst = 0i32;
    let stdout = std::io::stdout();
    for (i, text) in inputs.iter().enumerate() {
        let spec = match parse_one(text, args) {
            Ok(s) => s,
            Err(e) => {
                if args.json {
                    let msg = serde_json::json!({
                        "schema": "v1",
                        "input": text,
                        "diagnostics": [Diagnostic::new("parse_error", e.to_string())],
                    });
                    println!("{}", serde_json::to_string(&msg).unwrap());
                } else {
                    eprintln!("parse error in input {}: {e}", i + 1);
                }
                worst = worst.max(EXIT_PARSE_ERROR);
                continue;
            }
        };
        let outcome = run_pipeline(&spec, &opts);
        worst = worst.max(outcome.exit_code);
        let mut report = outcome.report;
        if !link_stage && !verify {
            // classify subcommand: suppress the link section.
            report.link = None;
            report.oracle = None;
        }
        if args.json {
            if args.batch.is_some() {
                let compact = serde_json::to_string(&report).unwrap();
                println!("{compact}");
            } else {
                println!("{}", report.to_json());
            }
        } else {
            let mut lock = stdout.lock();
            let _ = write!(lock, "{}", report.to_text());
            if inputs.len() > 1 {
                let _ = writeln!(lock);
            }
        }
        if let (Some(path), Some(sampled)) = (&args.mesh_out, &outcome.sampled) {
            if let Err(e) = write_mesh(path, sampled) {
                eprintln!("error: {e}");
            }
        }
    }
    ExitCode::from(worst as u8)
}

fn run_companion(args: &CommonArgs) -> ExitCode {
    let inputs = match gather_inputs(args) {
        Ok(i) => i,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_PARSE_ERROR as u8);
        }
    };
    let mut worst = 0i32;
    for text in &inputs {
        let spec = match parse_one(text, args) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("parse error: {e}");
                worst = worst.max(EXIT_PARSE_ERROR);
                continue;
            }
        };
        let Some((n, grades)) = spec.action else {
            eprintln!("error: companion needs a grading (inline or --quotient)");
            worst = worst.max(EXIT_PARSE_ERROR);
            continue;
        };
        let action = GradedAction::new(n, grades);
        let order = spec.degree().max(4);
        let f = spec.to_jet(order);
        match companion(&f, &action) {
            Ok(c) => {
                if args.json {
                    let msg = serde_json::json!({
                        "schema": "v1",
                        "input": spec.text,
                        "index": action.index,
                        "grades": action.grades,
                        "tau": action.tau,
                        "companion": c.to_string(),
                    });
                    println!("{}", serde_json::to_string_pretty(&msg).unwrap());
                } else {
                    println!("{c}");
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                worst = worst.max(2);
            }
        }
    }
    ExitCode::from(worst as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Classify(args) => run_common(&args, false, false),
        Command::Link(args) => run_common(&args, false, true),
        Command::Verify(args) => run_common(&args, true, true),
        Command::Companion(args) => run_companion(&args),
    }
}
