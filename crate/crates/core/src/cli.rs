//! Command-line front end. Output is JSON on stdout; `explore` can also
//! write DOT and JSON files. Errors go to stderr as a JSON object.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::canonical::{representative, PLATEAU_LIMIT};
use crate::corpus::{self, CorpusConfig};
use crate::error::{Error, Result};
use crate::explorer::{check_tree, explore};
use crate::jump::neighbors;
use crate::minimization::{descent_path, plateau_within};
use crate::normal_form::{is_normal, normalize};
use crate::oracle::sample_valid;
use crate::surface::{realize, ArcSystem, DehnCoordinate};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_TRIPWIRE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "tangle3", version, about = "Classify rational 3-tangles by Dehn coordinates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that a coordinate describes an arc system.
    Validate {
        #[arg(allow_hyphen_values = true)]
        coord: String,
    },
    /// Replace a coordinate by its normal form.
    Normalize {
        #[arg(allow_hyphen_values = true)]
        coord: String,
    },
    /// Descend to a coordinate minimal on the first disk.
    Minimize {
        #[arg(allow_hyphen_values = true)]
        coord: String,
    },
    /// Canonical representative of the tangle.
    Rep {
        #[arg(allow_hyphen_values = true)]
        coord: String,
    },
    /// Exit 0 when both coordinates give the same tangle, 1 otherwise.
    Equiv {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Jump moves from the normal form of a coordinate.
    Neighbors {
        #[arg(allow_hyphen_values = true)]
        coord: String,
    },
    /// Ball of the move complex around a coordinate.
    Explore {
        #[arg(allow_hyphen_values = true)]
        coord: String,
        #[arg(long, default_value_t = 2)]
        radius: usize,
        /// Also write the ball as Graphviz to this file.
        #[arg(long)]
        dot: Option<PathBuf>,
        /// Also write the ball as JSON to this file.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Seeded sample of valid coordinates.
    Random {
        #[arg(long, default_value_t = 12)]
        bound: u32,
        #[arg(long, default_value_t = 3)]
        qbound: i64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Corpus checks against the brute-force oracles.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug)]
enum CorpusAction {
    Run {
        #[arg(long, default_value_t = 8)]
        bound: u32,
        #[arg(long, default_value_t = 3)]
        qbound: i64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 12)]
        sample_bound: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the full report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonCoordinate {
    p: Vec<i64>,
    q: Vec<i64>,
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        position,
        message: message.into(),
    }
}

/// Byte offset of a 1-based line and column.
fn offset(text: &str, line: usize, column: usize) -> usize {
    let start: usize = text.split_inclusive('\n').take(line.saturating_sub(1)).map(str::len).sum();
    start + column.saturating_sub(1)
}

/// Reads `{"p":[..],"q":[..]}` or six comma-separated integers
/// `p1,q1,p2,q2,p3,q3` (optionally in parentheses) and checks the
/// coordinate-level invariants.
pub fn parse_coordinate(input: &str) -> Result<DehnCoordinate> {
    let lead = input.len() - input.trim_start().len();
    let text = input.trim();
    let flat: [i64; 6] = if text.starts_with('{') {
        let j: JsonCoordinate = serde_json::from_str(text)
            .map_err(|e| parse_err(lead + offset(text, e.line(), e.column()), e.to_string()))?;
        if j.p.len() != 3 || j.q.len() != 3 {
            return Err(parse_err(lead, "\"p\" and \"q\" must each have three entries"));
        }
        [j.p[0], j.q[0], j.p[1], j.q[1], j.p[2], j.q[2]]
    } else {
        let (body, base) = match text.strip_prefix('(') {
            Some(rest) => match rest.strip_suffix(')') {
                Some(b) => (b, lead + 1),
                None => return Err(parse_err(lead + text.len(), "missing ')'")),
            },
            None => (text, lead),
        };
        let mut vals = Vec::with_capacity(6);
        let mut pos = base;
        for tok in body.split(',') {
            let pad = tok.len() - tok.trim_start().len();
            let t = tok.trim();
            let v: i64 = t
                .parse()
                .map_err(|_| parse_err(pos + pad, format!("expected an integer, found {t:?}")))?;
            vals.push(v);
            pos += tok.len() + 1;
        }
        if vals.len() != 6 {
            return Err(parse_err(base, format!("expected 6 integers, found {}", vals.len())));
        }
        [vals[0], vals[1], vals[2], vals[3], vals[4], vals[5]]
    };
    let c = DehnCoordinate::from_flat(flat)?;
    c.validate()?;
    Ok(c)
}

fn system(input: &str) -> Result<ArcSystem> {
    realize(&parse_coordinate(input)?)
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Tripwire(_) | Error::Internal(_) => EXIT_TRIPWIRE,
        _ => EXIT_INVALID,
    }
}

fn kind(e: &Error) -> &'static str {
    match e {
        Error::Parity { .. } => "parity",
        Error::ZeroWindowTwist { .. } => "zero_window_twist",
        Error::OddWindow { .. } => "odd_window",
        Error::ClosedComponent => "closed_component",
        Error::ComponentCount(_) => "component_count",
        Error::NotAViolation { .. } => "not_a_violation",
        Error::NoWindowIntersection { .. } => "no_window_intersection",
        Error::NotNormal => "not_normal",
        Error::NotMinimal => "not_minimal",
        Error::InvalidCoordinate(_) => "invalid_coordinate",
        Error::Parse { .. } => "parse",
        Error::Tripwire(_) => "tripwire",
        Error::Internal(_) => "internal",
    }
}

pub fn error_json(e: &Error) -> Value {
    let mut v = json!({ "error": kind(e), "message": e.to_string() });
    if let Error::Parse { position, .. } = e {
        v["position"] = json!(position);
    }
    v
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::InvalidCoordinate(format!("cannot write {}: {e}", path.display())))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).unwrap() + "\n"
}

fn execute(cmd: Command) -> Result<(Value, i32)> {
    let ok = |v: Value| Ok((v, EXIT_OK));
    match cmd {
        Command::Validate { coord } => {
            let s = system(&coord)?;
            ok(json!({
                "coordinate": s.dehn.flat(),
                "valid": true,
                "normal": is_normal(&s),
                "weight1": s.weight1(),
                "total_weight": s.total_weight(),
                "words": s.words,
            }))
        }
        Command::Normalize { coord } => {
            let s = system(&coord)?;
            let n = normalize(&s)?;
            ok(json!({
                "input": s.dehn.flat(),
                "normal_form": n.dehn.flat(),
                "changed": n.dehn != s.dehn,
            }))
        }
        Command::Minimize { coord } => {
            let n = normalize(&system(&coord)?)?;
            let path = descent_path(&n);
            let m = path.last().unwrap();
            let p = plateau_within(m, PLATEAU_LIMIT)?;
            ok(json!({
                "normal_form": n.dehn.flat(),
                "minimal": m.dehn.flat(),
                "weight1": m.weight1(),
                "path": path.iter().map(|x| x.dehn.flat()).collect::<Vec<_>>(),
                "plateau": p.members.iter().map(|x| x.dehn.flat()).collect::<Vec<_>>(),
                "plateau_complete": p.complete,
            }))
        }
        Command::Rep { coord } => {
            let r = representative(&system(&coord)?)?;
            let code = if r.unique_by_rule { EXIT_OK } else { EXIT_TRIPWIRE };
            Ok((serde_json::to_value(&r).unwrap(), code))
        }
        Command::Equiv { a, b } => {
            let ra = representative(&system(&a)?)?;
            let rb = representative(&system(&b)?)?;
            let same = ra.representative == rb.representative;
            let v = json!({ "equivalent": same, "a": ra, "b": rb });
            Ok((v, if same { EXIT_OK } else { EXIT_NOT_EQUIVALENT }))
        }
        Command::Neighbors { coord } => {
            let n = normalize(&system(&coord)?)?;
            let list: Vec<Value> = neighbors(&n)
                .iter()
                .map(|x| {
                    json!({
                        "arc": x.arc,
                        "variant": x.variant,
                        "result": x.result.dehn.flat(),
                        "weight1": x.result.weight1(),
                    })
                })
                .collect();
            ok(json!({ "coordinate": n.dehn.flat(), "neighbors": list }))
        }
        Command::Explore { coord, radius, dot, json } => {
            let ball = explore(&system(&coord)?, radius)?;
            let v = ball.to_json();
            if let Some(path) = dot {
                write_file(&path, &ball.export_dot())?;
            }
            if let Some(path) = json {
                write_file(&path, &pretty(&v))?;
            }
            check_tree(&ball)?;
            ok(v)
        }
        Command::Random {
            bound,
            qbound,
            count,
            seed,
        } => {
            let v: Vec<[i64; 6]> = sample_valid(bound, qbound, count, seed).iter().map(|c| c.flat()).collect();
            ok(json!(v))
        }
        Command::Corpus {
            action:
                CorpusAction::Run {
                    bound,
                    qbound,
                    samples,
                    sample_bound,
                    seed,
                    report,
                },
        } => {
            let config = CorpusConfig {
                bound,
                qbound,
                samples,
                sample_bound,
                sample_qbound: qbound,
                seed,
            };
            let r = corpus::run(&config);
            let full = serde_json::to_value(&r).unwrap();
            let code = if r.tripwires.total() + r.claims.total() == 0 {
                EXIT_OK
            } else {
                EXIT_TRIPWIRE
            };
            match report {
                Some(path) => {
                    write_file(&path, &pretty(&full))?;
                    let summary = json!({
                        "normal": r.normal,
                        "samples": r.samples,
                        "tripwires": r.tripwires,
                        "claims": r.claims,
                        "report": path.display().to_string(),
                    });
                    Ok((summary, code))
                }
                None => Ok((full, code)),
            }
        }
    }
}

/// Runs the CLI and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let v = json!({ "error": "usage", "message": e.to_string().trim_end() });
            let _ = writeln!(err, "{v}");
            return EXIT_INVALID;
        }
    };
    match execute(cli.command) {
        Ok((v, code)) => {
            let _ = write!(out, "{}", pretty(&v));
            code
        }
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(&e));
            exit_code(&e)
        }
    }
}
