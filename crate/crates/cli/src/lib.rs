//! Command-line front end. [`run`] parses arguments, dispatches to
//! `prolong-core` and returns the exit code with the JSON it produced, so
//! the whole surface is testable without spawning a process.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

use std::fmt::Display;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use prolong_core::bundles::{
    enumerate_covering_classes, gysin_check, obstruction_vanishes, BundleJson, CircleBundle,
    CoveringEnumeration,
};
use prolong_core::engel::{
    characteristic_line_check, development_alpha, engel_check, fiber_field, prolonged_engel_frame,
    twisting_number, Distribution, EngelReport, DEFAULT_GRID, DEFAULT_TOLERANCE,
};
use prolong_core::groups::{reduce_mod_n, InvariantsJson, Manifold3Data};
use prolong_core::prolongation::{
    counterexample_search, prolongation_euler, prolongation_euler_from_e_xi, GaussClass,
};
use prolong_core::torus::{
    build_phi_alpha, classify_covering_map, classify_tabulated, SampleTable,
};
use prolong_core::{GroupElement, Result as CoreResult};
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Parser)]
#[command(
    name = "prolong",
    version,
    about = "Fiberwise coverings of circle bundles and n-fold prolongations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print π₁, H₁ and H² data of a manifold.
    Cohomology {
        #[arg(long, default_value = "T3")]
        base: String,
    },
    /// Decide whether a fiberwise n-fold covering exists.
    Obstruct(BundleArgs),
    /// List the covering classes as a torsor over H¹(M; Zₙ).
    Enumerate(BundleArgs),
    /// Check the exact sequence relating H¹ of base, total space and fiber.
    Gysin(BundleArgs),
    /// Classify a covering of T³ × S¹ by its class α ∈ H¹(T³; Zₙ).
    Classify {
        /// Sample table JSON of a black-box map.
        #[arg(long, conflicts_with_all = ["alpha", "n"])]
        map_file: Option<PathBuf>,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, requires = "n")]
        alpha: Option<[i64; 3]>,
        #[arg(long, requires = "alpha")]
        n: Option<u32>,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
    /// Verify the Engel conditions and development data of 𝒟ⁿ_α.
    VerifyEngel {
        #[arg(long, conflicts_with = "distribution_file")]
        n: Option<i64>,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true, default_value = "0,0,0")]
        alpha: [i64; 3],
        /// Distribution JSON (term lists) instead of the built-in family.
        #[arg(long)]
        distribution_file: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
    /// Euler classes of ξ and ℙ(ξ), and existence of n-fold prolongations.
    Prolong {
        #[arg(long, default_value = "T3")]
        base: String,
        /// Gauss class g, comma-separated.
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true, conflicts_with = "e_xi")]
        gauss: Option<IntList>,
        /// e(ξ) instead of the Gauss class.
        #[arg(long, value_parser = parse_ints, allow_hyphen_values = true)]
        e_xi: Option<IntList>,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u64>,
    },
    /// Search for a Gauss class without an n-fold prolongation.
    Counterexample {
        #[arg(long, default_value = "T3")]
        base: String,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 3)]
        bound: u64,
    },
}

#[derive(Debug, Args)]
pub struct BundleArgs {
    /// Built-in name (T3, L4, S3) or a manifold JSON file.
    #[arg(long, default_value = "T3", conflicts_with = "bundle_file")]
    base: String,
    #[arg(long, value_parser = parse_ints, allow_hyphen_values = true, required_unless_present = "bundle_file")]
    euler: Option<IntList>,
    /// Bundle JSON `{"base": …, "euler": […]}`.
    #[arg(long)]
    bundle_file: Option<PathBuf>,
    #[arg(long)]
    n: u64,
}

/// Comma-separated integers, one flag value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntList(pub Vec<i64>);

fn parse_ints(s: &str) -> Result<IntList, String> {
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}")))
        .collect::<Result<_, _>>()
        .map(IntList)
}

fn parse_triple(s: &str) -> Result<[i64; 3], String> {
    let v = parse_ints(s)?.0;
    v.try_into()
        .map_err(|v: Vec<i64>| format!("expected 3 integers, got {}", v.len()))
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn report(ok: bool, value: Value) -> Self {
        Self {
            code: if ok { 0 } else { 1 },
            stdout: serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n",
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl Display) -> Self {
        Self {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(o) => o,
        Err(e) => Outcome::input_error(e),
    }
}

#[derive(Debug)]
enum InputError {
    Core(prolong_core::Error),
    Io(PathBuf, std::io::Error),
}

impl Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            InputError::Core(e) => write!(f, "{e}"),
            InputError::Io(p, e) => write!(f, "{}: {e}", p.display()),
        }
    }
}

impl From<prolong_core::Error> for InputError {
    fn from(e: prolong_core::Error) -> Self {
        InputError::Core(e)
    }
}

impl From<serde_json::Error> for InputError {
    fn from(e: serde_json::Error) -> Self {
        InputError::Core(e.into())
    }
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|e| InputError::Io(path.to_path_buf(), e))
}

fn resolve_base(base: &str) -> Result<Manifold3Data, InputError> {
    match Manifold3Data::builtin(base) {
        Ok(m) => Ok(m),
        Err(_) if Path::new(base).is_file() => {
            Ok(Manifold3Data::from_json_str(&read(Path::new(base))?)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn bundle(args: &BundleArgs) -> Result<CircleBundle, InputError> {
    if let Some(path) = &args.bundle_file {
        let j: BundleJson = serde_json::from_str(&read(path)?)?;
        return Ok(j.into_bundle()?);
    }
    let euler = args.euler.as_ref().map_or(&[][..], |e| &e.0[..]);
    Ok(CircleBundle::with_euler_i64(
        resolve_base(&args.base)?,
        euler,
    )?)
}

fn to_value(x: &impl Serialize) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn dispatch(cmd: Command) -> Result<Outcome, InputError> {
    match cmd {
        Command::Cohomology { base } => {
            let m = resolve_base(&base)?;
            let j = m.to_json();
            Ok(Outcome::report(
                true,
                json!({
                    "name": j.name,
                    "generators": j.generators,
                    "relators": j.relators,
                    "h1": InvariantsJson::of(m.h1()),
                    "h2": j.h2,
                    "relator_pairing": j.relator_pairing,
                }),
            ))
        }
        Command::Obstruct(args) => {
            let p = bundle(&args)?;
            let red = reduce_mod_n(p.base().h2(), p.euler(), &args.n.into())?;
            let vanishes = obstruction_vanishes(&p, args.n)?;
            Ok(Outcome::report(
                vanishes,
                json!({
                    "base": p.base().name(),
                    "euler": p.euler(),
                    "n": args.n,
                    "vanishes": vanishes,
                    "euler_mod_n": red.element,
                }),
            ))
        }
        Command::Enumerate(args) => {
            let p = bundle(&args)?;
            let value = match enumerate_covering_classes(&p, args.n)? {
                CoveringEnumeration::Obstructed { euler_mod_n } => json!({
                    "base": p.base().name(),
                    "euler": p.euler(),
                    "n": args.n,
                    "obstructed": true,
                    "euler_mod_n": euler_mod_n,
                    "classes": [],
                }),
                CoveringEnumeration::Torsor { h1_zn, classes } => json!({
                    "base": p.base().name(),
                    "euler": p.euler(),
                    "n": args.n,
                    "obstructed": false,
                    "h1_zn": InvariantsJson::of(&h1_zn),
                    "count": classes.len(),
                    "classes": classes.iter().map(|c| json!({
                        "alpha": c.alpha,
                        "upstairs_euler": c.upstairs_euler,
                    })).collect::<Vec<_>>(),
                }),
            };
            let ok = !value["obstructed"].as_bool().unwrap_or(true);
            Ok(Outcome::report(ok, value))
        }
        Command::Gysin(args) => {
            let r = gysin_check(&bundle(&args)?, args.n)?;
            Ok(Outcome::report(r.passed(), to_value(&r)))
        }
        Command::Classify {
            map_file,
            alpha,
            n,
            samples,
        } => {
            let (n, alpha, source) = match (map_file, alpha, n) {
                (Some(path), _, _) => {
                    let table: SampleTable = serde_json::from_str(&read(&path)?)?;
                    (table.n, classify_tabulated(&table)?, "table")
                }
                (None, Some(a), Some(n)) => {
                    let phi = build_phi_alpha(n, a)?;
                    (n, classify_covering_map(&phi, samples)?, "explicit")
                }
                _ => {
                    return Ok(Outcome::input_error(
                        "classify needs --map-file or --alpha with --n",
                    ))
                }
            };
            Ok(Outcome::report(
                true,
                json!({ "n": n, "alpha": alpha, "source": source }),
            ))
        }
        Command::VerifyEngel {
            n,
            alpha,
            distribution_file,
            grid,
            tol,
        } => {
            let (d, n) = match (&distribution_file, n) {
                (Some(path), _) => (Distribution::from_json_str(&read(path)?)?, None),
                (None, Some(n)) => (prolonged_engel_frame(n, alpha)?, Some(n)),
                (None, None) => {
                    return Ok(Outcome::input_error(
                        "verify-engel needs --n or --distribution-file",
                    ))
                }
            };
            let report = engel_check(&d, grid, tol)?;
            let value = engel_value(&d, &report, n, grid, tol);
            Ok(Outcome::report(report.passed, value))
        }
        Command::Prolong {
            base,
            gauss,
            e_xi,
            n,
        } => {
            let m = resolve_base(&base)?;
            let report = match (gauss, e_xi) {
                (Some(g), _) => prolongation_euler(&GaussClass::from_i64(m.clone(), &g.0)?)?,
                (None, Some(e)) => prolongation_euler_from_e_xi(&m, &m.h2().element_i64(&e.0)?)?,
                (None, None) => return Ok(Outcome::input_error("prolong needs --gauss or --e-xi")),
            };
            let report = report.with_verdicts(&m, &n)?;
            let exists = report.verdicts.iter().all(|v| v.exists);
            let mut value = to_value(&report);
            value["exists"] = json!(exists);
            Ok(Outcome::report(exists, value))
        }
        Command::Counterexample { base, n, bound } => {
            let m = resolve_base(&base)?;
            let found = counterexample_search(&m, n, bound)?;
            let g: Option<&GroupElement> = found.as_ref().map(GaussClass::g);
            let e_prolongation = match &found {
                Some(gc) => Some(prolongation_euler(gc)?.e_prolongation),
                None => None,
            };
            Ok(Outcome::report(
                true,
                json!({
                    "base": m.name(),
                    "n": n,
                    "bound": bound,
                    "found": found.is_some(),
                    "gauss": g,
                    "e_prolongation": e_prolongation,
                }),
            ))
        }
    }
}

/// The Engel report, extended with the fiber and development data when the
/// distribution supports them.
fn engel_value(
    d: &Distribution,
    report: &EngelReport,
    n: Option<i64>,
    grid: usize,
    tol: f64,
) -> Value {
    let mut value = to_value(report);
    if !report.passed {
        return value;
    }
    let optional = |r: CoreResult<Value>| r.unwrap_or(Value::Null);
    value["fiber_characteristic"] = optional(
        characteristic_line_check(d, &fiber_field(), grid, tol).map(|c| json!(c.characteristic)),
    );
    let twist = twisting_number(d).ok();
    value["twisting_number"] = json!(twist);
    value["development_alpha"] = match twist {
        Some(t) if n.is_none_or(|n| n == t) => optional(development_alpha(d, t).map(|a| json!(a))),
        _ => Value::Null,
    };
    value
}
