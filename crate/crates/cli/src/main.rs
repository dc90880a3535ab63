//! `conelab` command-line front end.
//!
//! Exit codes: 0 success, 1 check failed, 2 usage error, 3 parse error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use conelab::cone::{cone_to_json, parse_cone_json, ConeFile};
use conelab::exactla::Scalar;
use conelab::facelat::{enumerate_faces_with, is_facially_exposed, Face};
use conelab::fdc::{classification_report, classify_exposure, is_fdc};
use conelab::paperbench::{self, DEFAULT_SAMPLES, DEFAULT_TOL};
use conelab::tangents::{is_strongly_tangentially_exposed, is_tangentially_exposed, lex_tangent_family, tangent_cone, tangential_depth};
use conelab::{CheckReport, Cone, Error};

mod slice;

#[derive(Parser)]
#[command(name = "conelab", version, about = "Exact facial and tangential structure of polyhedral cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Io {
    /// Input cone JSON file.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Dual cone `{s : <s, x> >= 0}`.
    Dual(Io),
    /// Both descriptions, minimal and canonical.
    Convert(Io),
    /// All faces, ordered by dimension then active set.
    Faces {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        include_empty_face: bool,
    },
    /// Tangent cone at the relative interior of a face.
    Tangent {
        #[command(flatten)]
        io: Io,
        /// Active facet indices, comma separated; empty for the whole cone.
        #[arg(long, value_name = "I,J,...", allow_hyphen_values = true)]
        face: String,
    },
    /// The lexicographic tangent family.
    Lextangents(Io),
    /// Tangential depth.
    Depth(Io),
    /// Check one exposure property.
    Check {
        property: Property,
        #[command(flatten)]
        io: Io,
    },
    /// All exposure properties and their implications.
    Classify(Io),
    /// Certificate suites for the curved examples.
    Verify {
        example: Example,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        /// Evaluate polynomial certificates exactly.
        #[arg(long)]
        exact: bool,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Cross-section at a height of the last coordinate, for plotting.
    Slice {
        #[command(flatten)]
        io: Io,
        /// Height, an integer or `p/q`.
        #[arg(long, allow_hyphen_values = true)]
        height: String,
        #[arg(long, value_enum, default_value_t = SliceFormat::Off)]
        format: SliceFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Exposed,
    Tangential,
    Strong,
    Fdc,
}

#[derive(Clone, Copy, ValueEnum)]
enum Example {
    Roshchina,
    Cubic,
    Circles,
}

#[derive(Clone, Copy, ValueEnum)]
enum SliceFormat {
    Off,
}

enum Failure {
    Usage(String),
    Parse(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Parse { .. } => Failure::Parse(e.to_string()),
            Error::InvalidArgument(_) | Error::NotMember(_) | Error::EmptyFace | Error::DimensionMismatch { .. } => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Other(other.to_string()),
        }
    }
}

/// What a command produced and whether it counts as a pass.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn json(v: &Value, ok: bool) -> Output {
        let mut text = serde_json::to_string_pretty(v).expect("json serializes");
        text.push('\n');
        Output { text, ok }
    }

    fn report(r: &CheckReport) -> Output {
        Output::json(&r.to_json(), r.passed())
    }
}

fn read_cone(path: &PathBuf) -> Result<ConeFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(parse_cone_json(&text)?)
}

fn label(f: &ConeFile, fallback: &str) -> String {
    f.name.clone().unwrap_or_else(|| fallback.to_string())
}

fn parse_face(k: &Cone, text: &str) -> Result<Face, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Face::whole(k));
    }
    let active = text
        .split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|_| Failure::Usage(format!("bad facet index {s:?} in --face"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Face::from_active_set(k, &active)?)
}

fn run(cmd: Command) -> Result<(Output, Option<PathBuf>), Failure> {
    Ok(match cmd {
        Command::Dual(io) => {
            let f = read_cone(&io.input)?;
            let name = format!("dual({})", label(&f, "cone"));
            (Output::json(&cone_to_json(Some(&name), &f.cone.dual()), true), io.out)
        }
        Command::Convert(io) => {
            let f = read_cone(&io.input)?;
            (Output::json(&cone_to_json(f.name.as_deref(), &f.cone), true), io.out)
        }
        Command::Faces { io, include_empty_face } => {
            let f = read_cone(&io.input)?;
            let faces = enumerate_faces_with(&f.cone, include_empty_face);
            let v = json!({
                "cone": label(&f, "cone"),
                "count": faces.len(),
                "faces": faces.iter().map(Face::to_json).collect::<Vec<_>>(),
            });
            (Output::json(&v, true), io.out)
        }
        Command::Tangent { io, face } => {
            let f = read_cone(&io.input)?;
            let k = f.cone.dd_convert();
            let face = parse_face(&k, &face)?;
            let t = tangent_cone(&k, &face)?;
            let name = format!("tangent({})", label(&f, "cone"));
            (Output::json(&cone_to_json(Some(&name), &t), true), io.out)
        }
        Command::Lextangents(io) => {
            let f = read_cone(&io.input)?;
            (Output::json(&lex_tangent_family(&f.cone)?.to_json(), true), io.out)
        }
        Command::Depth(io) => {
            let f = read_cone(&io.input)?;
            (Output { text: format!("{}\n", tangential_depth(&f.cone)?), ok: true }, io.out)
        }
        Command::Check { property, io } => {
            let f = read_cone(&io.input)?;
            let k = f.cone.dd_convert();
            let mut report = match property {
                Property::Exposed => is_facially_exposed(&k),
                Property::Tangential => is_tangentially_exposed(&k)?,
                Property::Strong => is_strongly_tangentially_exposed(&k)?,
                Property::Fdc => is_fdc(&k)?.to_check_report(),
            };
            report.example = label(&f, &report.example);
            (Output::report(&report), io.out)
        }
        Command::Classify(io) => {
            let f = read_cone(&io.input)?;
            let c = classify_exposure(&f.cone)?;
            let mut report = classification_report(&c);
            report.example = label(&f, "classify");
            // A classification is informative either way; only an internal
            // inconsistency (returned as an error above) fails.
            (Output::json(&report.to_json(), true), io.out)
        }
        Command::Verify { example, samples, tol, exact, out } => {
            if !(tol >= 0.0 && tol.is_finite()) {
                return Err(Failure::Usage(format!("--tol must be a finite nonnegative number, got {tol}")));
            }
            let report = match example {
                Example::Roshchina => paperbench::verify_roshchina(samples, tol)?,
                Example::Cubic => paperbench::verify_cubic_with(samples, tol, exact)?,
                Example::Circles => paperbench::verify_circles(samples, tol)?,
            };
            (Output::report(&report), out)
        }
        Command::Slice { io, height, format: SliceFormat::Off } => {
            let f = read_cone(&io.input)?;
            let h = Scalar::parse_rational(height.trim())
                .map(Scalar::from_rational)
                .ok_or_else(|| Failure::Usage(format!("bad --height {height:?}")))?;
            let text = slice::slice_off(&f.cone, &h)?;
            (Output { text, ok: true }, io.out)
        }
    })
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("CONELAB_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("CONELAB_THREADS must be a positive integer, got {v:?}")))?;
        // Only fails if a pool already exists, which cannot happen this early.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = configure_threads().and_then(|_| run(cli.command));
    match result {
        Ok((out, path)) => {
            let written = match path {
                Some(p) => fs::write(&p, &out.text).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Parse(m)) => {
            eprintln!("parse error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}
