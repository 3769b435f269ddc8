//! Command-line front end.
//!
//! Every command is first resolved into a self-contained [`Request`] (all
//! bodies, points and halfspaces inlined), executed, and written out as a
//! [`VerificationReport`] that embeds the request. `replay` re-executes the
//! embedded request and compares the computed fields.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::barycentric::build_grid;
use crate::bounds::{
    gruenbaum_body, milman_pajor_body, verify_prop1_body, verify_simplex_bound, Status,
};
use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};
use crate::harness::{random_halfspaces, run_suite, SearchConfig};
use crate::lattice::{enumerate_body, lambda1_body, unbounded_family};
use crate::planar::{pick_identity, scott_deficit, verify_thm3_body, Thm3Branch};
use crate::polytope::{gauge, membership, Body, BodySpec, HalfSpace, Simplex};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "centroid-lattice",
    version,
    about = "Exact lattice-point counts and bounds for convex bodies with centroid at the origin"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Add decimal approximations next to the exact values.
    #[arg(long, global = true)]
    pub float_preview: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Number of lattice points (total and interior).
    Count { body: PathBuf },
    /// First successive minimum with a witness vector.
    Lambda1 { body: PathBuf },
    /// Exact centroid.
    Centroid { body: PathBuf },
    /// Exact volume.
    Volume { body: PathBuf },
    /// Gauge of a point, given inline as a JSON array or as a file.
    Gauge { body: PathBuf, point: String },
    /// Check one of the bounds on a body.
    Verify {
        #[arg(value_enum)]
        check: Check,
        body: PathBuf,
        /// Halfspace for `gruenbaum`, e.g. '{"a": [1, 0], "b": 0}'.
        #[arg(long)]
        halfspace: Option<String>,
        /// Seed for the random halfspaces used by `gruenbaum` when no
        /// `--halfspace` is given.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        halfspaces: usize,
    },
    /// Residue grid of the barycentric covering.
    Grid {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        rho: String,
    },
    /// Run the search harness.
    Search {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        jobs: Option<usize>,
        /// Also write each violating body to its own file in this directory.
        #[arg(long)]
        replay_dir: Option<PathBuf>,
    },
    /// Member `m` of the triangle family with one interior lattice point
    /// and unboundedly many lattice points.
    Family {
        #[arg(long)]
        m: i64,
    },
    /// Re-execute the input embedded in a report and compare results.
    Replay { report: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Prop1,
    Simplex,
    Thm3,
    Pick,
    Scott,
    Mp,
    Gruenbaum,
}

/// A fully resolved command.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Request {
    Count {
        body: BodySpec,
    },
    Lambda1 {
        body: BodySpec,
    },
    Centroid {
        body: BodySpec,
    },
    Volume {
        body: BodySpec,
    },
    Gauge {
        body: BodySpec,
        point: RatVector,
    },
    Verify {
        check: Check,
        body: BodySpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        halfspaces: Option<Vec<HalfSpace>>,
    },
    Grid {
        dim: usize,
        rho: Rational,
    },
    Search {
        config: SearchConfig,
    },
    Family {
        m: i64,
    },
}

impl Request {
    pub fn name(&self) -> String {
        match self {
            Request::Count { .. } => "count".into(),
            Request::Lambda1 { .. } => "lambda1".into(),
            Request::Centroid { .. } => "centroid".into(),
            Request::Volume { .. } => "volume".into(),
            Request::Gauge { .. } => "gauge".into(),
            Request::Verify { check, .. } => {
                format!(
                    "verify {}",
                    check.to_possible_value().expect("named").get_name()
                )
            }
            Request::Grid { .. } => "grid".into(),
            Request::Search { .. } => "search".into(),
            Request::Family { .. } => "family".into(),
        }
    }

    pub fn digest(&self) -> String {
        let bytes = serde_json::to_vec(self).expect("request serializes");
        Sha256::digest(&bytes)
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub command: String,
    pub input: Request,
    pub input_digest: String,
    pub computed: BTreeMap<String, Value>,
    /// `ok` for plain computations; `strict`, `equal`, `pass` or
    /// `violated`/`fail` for checks.
    pub status: String,
    pub certificates: Vec<Value>,
    pub version: String,
    pub timing: Timing,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub float_preview: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub fn is_violation(&self) -> bool {
        matches!(self.status.as_str(), "violated" | "fail")
    }

    pub fn exit_code(&self) -> i32 {
        if self.is_violation() {
            EXIT_VIOLATION
        } else {
            EXIT_PASS
        }
    }
}

struct Outcome {
    computed: BTreeMap<String, Value>,
    status: String,
    certificates: Vec<Value>,
}

impl Outcome {
    fn ok(computed: Value) -> Outcome {
        Outcome {
            computed: into_map(computed),
            status: "ok".into(),
            certificates: Vec::new(),
        }
    }
}

fn into_map(v: Value) -> BTreeMap<String, Value> {
    match v {
        Value::Object(m) => m.into_iter().collect(),
        other => BTreeMap::from([("value".to_string(), other)]),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn status_name(s: Status) -> String {
    to_value(&s).as_str().expect("string").to_string()
}

fn pass_fail(ok: bool) -> String {
    if ok { "pass" } else { "fail" }.into()
}

fn simplex_of(body: &Body) -> Result<Simplex> {
    if body.vertices().len() != body.dim() + 1 {
        return Err(Error::precondition(format!(
            "body has {} vertices; a {}-simplex needs {}",
            body.vertices().len(),
            body.dim(),
            body.dim() + 1
        )));
    }
    Simplex::new(body.vertices().to_vec())
}

fn verify(check: Check, body: &Body, halfspaces: Option<&[HalfSpace]>) -> Result<Outcome> {
    let outcome = match check {
        Check::Prop1 => {
            let r = verify_prop1_body(body)?;
            Outcome {
                computed: into_map(to_value(&r)),
                status: status_name(r.status),
                certificates: Vec::new(),
            }
        }
        Check::Simplex => {
            let r = verify_simplex_bound(&simplex_of(body)?)?;
            let certificates = r
                .evidence
                .equality
                .as_ref()
                .and_then(|e| e.certificate())
                .map(to_value)
                .into_iter()
                .collect();
            Outcome {
                computed: into_map(to_value(&r)),
                status: status_name(r.status),
                certificates,
            }
        }
        Check::Thm3 => {
            let pts = enumerate_body(body)?;
            let r = verify_thm3_body(body, &pts)?;
            let certificates = match &r.evidence.branch {
                Thm3Branch::OriginInterior {
                    equality: Some(eq), ..
                } => eq.certificate.iter().map(to_value).collect(),
                _ => Vec::new(),
            };
            Outcome {
                computed: into_map(to_value(&r)),
                status: status_name(r.status),
                certificates,
            }
        }
        Check::Pick => {
            let r = pick_identity(body.polytope())?;
            Outcome {
                computed: into_map(to_value(&r)),
                status: pass_fail(r.holds),
                certificates: Vec::new(),
            }
        }
        Check::Scott => {
            let r = scott_deficit(body.polytope())?;
            Outcome {
                computed: into_map(to_value(&r)),
                status: if !r.holds || r.anomaly {
                    "fail".into()
                } else if r.equality {
                    "equal".into()
                } else {
                    "strict".into()
                },
                certificates: r.certificate.iter().map(to_value).collect(),
            }
        }
        Check::Mp => {
            let r = milman_pajor_body(body)?;
            Outcome {
                computed: into_map(to_value(&r)),
                status: pass_fail(r.pass),
                certificates: Vec::new(),
            }
        }
        Check::Gruenbaum => {
            let hs = halfspaces.ok_or_else(|| Error::precondition("no halfspaces given"))?;
            if !body.is_centered() {
                return Err(Error::precondition("centroid is not the origin"));
            }
            let (volume, pieces) = (body.volume(), body.triangulate());
            let results = hs
                .iter()
                .map(|h| gruenbaum_body(body, &volume, &pieces, h))
                .collect::<Result<Vec<_>>>()?;
            let min = results.iter().map(|r| r.fraction.clone()).min();
            let ok = results.iter().all(|r| r.pass);
            Outcome {
                computed: into_map(json!({
                    "volume": volume,
                    "min_fraction": min,
                    "threshold": crate::bounds::gruenbaum_threshold(body.dim()),
                    "checks": results,
                })),
                status: pass_fail(ok),
                certificates: Vec::new(),
            }
        }
    };
    Ok(outcome)
}

fn execute(req: &Request) -> Result<Outcome> {
    match req {
        Request::Count { body } => {
            let pts = enumerate_body(&body.to_body()?)?;
            Ok(Outcome::ok(json!({
                "G": pts.count(),
                "interior": pts.interior_count(),
                "boundary": pts.count() - pts.interior_count(),
            })))
        }
        Request::Lambda1 { body } => Ok(Outcome::ok(to_value(&lambda1_body(&body.to_body()?)?))),
        Request::Centroid { body } => Ok(Outcome::ok(
            json!({ "centroid": body.to_body()?.centroid() }),
        )),
        Request::Volume { body } => Ok(Outcome::ok(json!({ "volume": body.to_body()?.volume() }))),
        Request::Gauge { body, point } => {
            let b = body.to_body()?;
            Ok(Outcome::ok(json!({
                "gauge": gauge(b.hrep(), point)?,
                "membership": membership(b.hrep(), point)?,
            })))
        }
        Request::Verify {
            check,
            body,
            halfspaces,
        } => verify(*check, &body.to_body()?, halfspaces.as_deref()),
        Request::Grid { dim, rho } => {
            crate::polytope::check_dim(*dim)?;
            let g = build_grid(*dim, rho)?;
            Ok(Outcome::ok(json!({
                "n": g.n,
                "size": g.residues.len(),
                "expected_size": g.expected_size().to_string(),
                "residues": g.residues,
            })))
        }
        Request::Search { config } => {
            let s = run_suite(config)?;
            let mut computed = into_map(to_value(&s));
            computed.insert("conjecture".into(), json!(s.conjecture_verdict()));
            Ok(Outcome {
                computed,
                status: pass_fail(s.is_clean()),
                certificates: s
                    .equality_cases
                    .iter()
                    .map(|e| to_value(&e.certificate))
                    .collect(),
            })
        }
        Request::Family { m } => {
            let p = unbounded_family(*m)?;
            let b = Body::from_polytope(&p)?;
            let pts = enumerate_body(&b)?;
            let ok = pts.interior_count() == 1 && pts.count() > 2 * *m as u64;
            Ok(Outcome {
                computed: into_map(json!({
                    "body": BodySpec::from_polytope(&p),
                    "G": pts.count(),
                    "interior": pts.interior_count(),
                    "centroid": b.centroid(),
                })),
                status: pass_fail(ok),
                certificates: Vec::new(),
            })
        }
    }
}

/// Decimal approximations of every exact rational string in `v`.
fn float_preview(v: &Value) -> Value {
    match v {
        Value::String(s) => match s.parse::<Rational>() {
            Ok(r) => json!(r.to_f64()),
            Err(_) => v.clone(),
        },
        Value::Array(a) => Value::Array(a.iter().map(float_preview).collect()),
        Value::Object(m) => Value::Object(
            m.iter()
                .map(|(k, x)| (k.clone(), float_preview(x)))
                .collect(),
        ),
        other => other.clone(),
    }
}

/// Executes a request and wraps the result in a report.
pub fn run_request(req: Request, with_floats: bool) -> Result<VerificationReport> {
    let started = Instant::now();
    let out = execute(&req)?;
    let float_preview = with_floats.then(|| float_preview(&to_value(&out.computed)));
    Ok(VerificationReport {
        command: req.name(),
        input_digest: req.digest(),
        input: req,
        computed: out.computed,
        status: out.status,
        certificates: out.certificates,
        version: env!("CARGO_PKG_VERSION").into(),
        timing: Timing {
            elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
        },
        float_preview,
    })
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_body(path: &Path) -> Result<BodySpec> {
    BodySpec::parse(&read(path)?)
}

fn parse_json<T: serde::de::DeserializeOwned>(text: &str, what: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("{what}: {e}")))
}

/// Inline JSON if it parses, otherwise a path to a JSON file.
fn inline_or_file<T: serde::de::DeserializeOwned>(arg: &str, what: &str) -> Result<T> {
    match serde_json::from_str(arg) {
        Ok(v) => Ok(v),
        Err(_) => parse_json(&read(Path::new(arg))?, what),
    }
}

fn resolve(cmd: Command) -> Result<Request> {
    Ok(match cmd {
        Command::Count { body } => Request::Count {
            body: load_body(&body)?,
        },
        Command::Lambda1 { body } => Request::Lambda1 {
            body: load_body(&body)?,
        },
        Command::Centroid { body } => Request::Centroid {
            body: load_body(&body)?,
        },
        Command::Volume { body } => Request::Volume {
            body: load_body(&body)?,
        },
        Command::Gauge { body, point } => Request::Gauge {
            body: load_body(&body)?,
            point: inline_or_file(&point, "point")?,
        },
        Command::Verify {
            check,
            body,
            halfspace,
            seed,
            halfspaces,
        } => {
            let body = load_body(&body)?;
            let halfspaces = match (check, halfspace) {
                (Check::Gruenbaum, Some(h)) => Some(vec![inline_or_file(&h, "halfspace")?]),
                (Check::Gruenbaum, None) => Some(random_halfspaces(body.dim, seed, 0, halfspaces)),
                (_, Some(_)) => {
                    return Err(Error::precondition("--halfspace only applies to gruenbaum"))
                }
                (_, None) => None,
            };
            Request::Verify {
                check,
                body,
                halfspaces,
            }
        }
        Command::Grid { dim, rho } => Request::Grid {
            dim,
            rho: rho.parse()?,
        },
        Command::Search {
            config, seed, jobs, ..
        } => {
            let mut config: SearchConfig = parse_json(&read(&config)?, "search config")?;
            if let Some(s) = seed {
                config.rng_seed = s;
            }
            if let Some(j) = jobs {
                config.parallelism = j;
            }
            Request::Search { config }
        }
        Command::Family { m } => Request::Family { m },
        Command::Replay { .. } => unreachable!("handled by the caller"),
    })
}

fn replay(path: &Path, with_floats: bool) -> Result<VerificationReport> {
    let old: VerificationReport = parse_json(&read(path)?, "report")?;
    let new = run_request(old.input.clone(), with_floats)?;
    let same = new.computed == old.computed
        && new.status == old.status
        && new.certificates == old.certificates
        && new.input_digest == old.input_digest;
    let mut computed = BTreeMap::new();
    computed.insert("replayed_command".into(), json!(old.command));
    computed.insert("input_digest".into(), json!(new.input_digest));
    computed.insert("identical".into(), json!(same));
    computed.insert("status".into(), json!(new.status));
    Ok(VerificationReport {
        command: "replay".into(),
        computed,
        status: pass_fail(same),
        certificates: Vec::new(),
        float_preview: None,
        ..new
    })
}

/// One body JSON per violation, named by its position in the summary.
fn write_violation_bodies(report: &VerificationReport, dir: &Path) -> Result<()> {
    let io = |e: std::io::Error| Error::Parse(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let empty = Vec::new();
    let violations = report
        .computed
        .get("violations")
        .and_then(Value::as_array)
        .unwrap_or(&empty);
    for (i, v) in violations.iter().enumerate() {
        let text = serde_json::to_string_pretty(&v["body"]).expect("body serializes") + "\n";
        std::fs::write(dir.join(format!("violation-{i:04}.json")), text).map_err(io)?;
    }
    Ok(())
}

fn emit(report: &VerificationReport, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(report).expect("report serializes") + "\n";
    match out {
        Some(p) => {
            std::fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `args`, runs the command and writes the report; returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
        }
    };
    let replay_dir = match &cli.command {
        Command::Search { replay_dir, .. } => replay_dir.clone(),
        _ => None,
    };
    let result = match cli.command {
        Command::Replay { report } => replay(&report, cli.float_preview),
        cmd => resolve(cmd).and_then(|req| run_request(req, cli.float_preview)),
    };
    let result = result.and_then(|r| {
        if let Some(dir) = &replay_dir {
            write_violation_bodies(&r, dir)?;
        }
        emit(&r, cli.out.as_deref()).map(|_| r)
    });
    match result {
        Ok(r) => r.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}
