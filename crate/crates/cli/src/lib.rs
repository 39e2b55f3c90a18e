//! Command-line front end: argument parsing, catalog loading, the report
//! envelope and output formats. `main.rs` only forwards to [`run`].

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use fpp_core::catalog::{load_catalog, parse_catalog, validate_catalog, Catalog, DEFAULT_CATALOG};
use fpp_core::characters::{dirichlet_l_neg, QuadChar};
use fpp_core::classify::{census, certify_class, plane_count_annotations, resolve_class, Census};
use fpp_core::cubes::cube_class_group;
use fpp_core::exact::ratio;
use fpp_core::exact::residue::FieldShape;
use fpp_core::parahoric::{chi_principal, fpp_viability, mu_principal, normalizer_chi, variants};
use fpp_core::torsion::{torsion_verdict, Level};
use fpp_core::{Error, Rat};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const REPORT_SCHEMA_VERSION: u32 = 1;
pub const CATALOG_ENV: &str = "FPP_CATALOG";

#[derive(Parser, Debug)]
#[command(
    name = "fpp",
    version,
    about = "Exact verification of the fake projective plane census"
)]
struct Cli {
    /// Catalog JSON file; defaults to $FPP_CATALOG, then the built-in catalog.
    #[arg(long, global = true)]
    catalog: Option<PathBuf>,
    /// Add approximate decimals next to every rational (never used in golden files).
    #[arg(long, global = true)]
    decimal: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Md,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Principal,
    Congruence,
    Normalizer,
}

impl From<LevelArg> for Level {
    fn from(l: LevelArg) -> Level {
        match l {
            LevelArg::Principal => Level::Principal,
            LevelArg::Congruence => Level::Congruence,
            LevelArg::Normalizer => Level::Normalizer,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Validate the catalog.
    Validate,
    /// L(1-n, chi_D) for a fundamental discriminant D.
    Lvalue {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        n: usize,
    },
    /// mu, chi(Lambda) and chi(Gamma-bar) for every collection with the given T.
    Chi {
        #[arg(long)]
        pair: String,
        /// Comma-separated place labels.
        #[arg(long = "T", value_delimiter = ',')]
        t: Vec<String>,
    },
    /// The full census.
    Classify {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Torsion certificates for a pair.
    Torsion {
        #[arg(long)]
        pair: String,
        /// Restrict to one T (comma-separated); default: every admissible T.
        #[arg(long = "T", value_delimiter = ',')]
        t: Option<Vec<String>>,
        #[arg(long, value_enum, default_value = "normalizer")]
        level: LevelArg,
    },
    /// Cube-class group of a field with respect to a set of primes.
    Cubes {
        /// `Q(sqrt-7)` or `Q(sqrt-2,sqrt-3)`.
        #[arg(long)]
        field: String,
        #[arg(long, value_delimiter = ',')]
        s: Vec<u64>,
    },
    /// Recompute and bundle the certificates behind one class.
    Certify {
        /// `pair/T/variant/index`, e.g. `C20/v0/base/1`.
        #[arg(long)]
        class: String,
    },
    /// Census, plane counts and validation summary.
    Report {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    VerificationFailure,
    UsageError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::UsageError => 1,
            Status::VerificationFailure => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub schema_version: u32,
    pub catalog_hash: String,
    pub command: Vec<String>,
    pub status: Status,
    pub payload: Value,
}

enum Output {
    Json(Status, Value),
    Text(Status, String),
}

struct Failure {
    status: Status,
    message: String,
    payload: Value,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Invariant(_) | Error::Discrepancy { .. } => Status::VerificationFailure,
            _ => Status::UsageError,
        };
        let payload = match &e {
            Error::Invariant(v) => json!({ "error": e.to_string(), "violations": v }),
            _ => json!({ "error": e.to_string() }),
        };
        Failure {
            status,
            message: e.to_string(),
            payload,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report payloads serialize")
}

fn status_of(ok: bool) -> Status {
    if ok {
        Status::Ok
    } else {
        Status::VerificationFailure
    }
}

/// Catalog bytes from `--catalog`, then `$FPP_CATALOG`, then the built-in copy.
fn catalog_source(flag: Option<&PathBuf>) -> Result<Vec<u8>, Failure> {
    let path = flag
        .cloned()
        .or_else(|| std::env::var_os(CATALOG_ENV).map(PathBuf::from));
    match path {
        None => Ok(DEFAULT_CATALOG.as_bytes().to_vec()),
        Some(p) => std::fs::read(&p).map_err(|e| Failure {
            status: Status::UsageError,
            message: format!("cannot read {}: {e}", p.display()),
            payload: json!({ "error": format!("cannot read catalog: {e}") }),
        }),
    }
}

pub fn catalog_hash(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

fn parse_field(s: &str) -> Result<FieldShape, Error> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = compact
        .strip_prefix("Q(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| {
            Error::InvalidArgument(format!("field `{s}` is not Q(sqrtD) or Q(sqrtD1,sqrtD2)"))
        })?;
    let rads: Vec<i64> = inner
        .split(',')
        .map(|r| {
            r.strip_prefix("sqrt")
                .and_then(|d| d.trim_matches(|c| c == '(' || c == ')').parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("bad radical `{r}`")))
        })
        .collect::<Result<_, _>>()?;
    match rads.as_slice() {
        [d] => Ok(FieldShape::Quadratic(*d)),
        [d1, d2] => Ok(FieldShape::Biquadratic(*d1, *d2)),
        _ => Err(Error::InvalidArgument(format!(
            "field `{s}` has too many generators"
        ))),
    }
}

fn census_ok(c: &Census) -> bool {
    c.passes()
}

fn census_md(c: &Census) -> String {
    let mut out = String::from(
        "| # | class | k | T | variant | χ(Λ) | χ(Γ̄) | fundamental groups | provenance |\n",
    );
    out.push_str("|---|---|---|---|---|---|---|---|---|\n");
    for (i, r) in c.records.iter().enumerate() {
        let (chi_l, chi_g) = r
            .chi_chain
            .as_ref()
            .map(|ch| {
                (
                    ratio::to_string(&ch.chi_lambda),
                    ratio::to_string(&ch.chi_gammabar),
                )
            })
            .unwrap_or_else(|| ("-".into(), "-".into()));
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            i + 1,
            r.id,
            r.k,
            r.t.join("+"),
            r.variant,
            chi_l,
            chi_g,
            r.fundamental_group_note.as_deref().unwrap_or("-"),
            to_value(&r.provenance).as_str().unwrap_or_default(),
        ));
    }
    out.push('\n');
    for (k, n) in &c.by_k {
        out.push_str(&format!("k = {k}: {n}\n"));
    }
    for check in c.checks.iter().filter(|x| !x.ok) {
        out.push_str(&format!(
            "MISMATCH {}: expected {}, found {}\n",
            check.name, check.expected, check.actual
        ));
    }
    out.push_str(&format!("total: {}\n", c.total));
    out
}

fn census_csv(c: &Census) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "class",
        "pair",
        "k",
        "T",
        "variant",
        "index",
        "mu",
        "chi_lambda",
        "chi_gammabar",
        "note",
        "provenance",
    ])
    .expect("in-memory csv");
    for r in &c.records {
        let rat = |x: Option<&Rat>| x.map(ratio::to_string).unwrap_or_default();
        let ch = r.chi_chain.as_ref();
        w.write_record([
            r.id.clone(),
            r.pair_id.clone(),
            r.k.clone(),
            r.t.join("+"),
            r.variant.clone(),
            r.collection_class_index.to_string(),
            rat(ch.and_then(|c| c.mu.as_ref())),
            rat(ch.map(|c| &c.chi_lambda)),
            rat(ch.map(|c| &c.chi_gammabar)),
            r.fundamental_group_note.clone().unwrap_or_default(),
            to_value(&r.provenance)
                .as_str()
                .unwrap_or_default()
                .to_string(),
        ])
        .expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn formatted(format: Format, c: &Census, json_payload: Value) -> Output {
    let status = status_of(census_ok(c));
    match format {
        Format::Json => Output::Json(status, json_payload),
        Format::Md => Output::Text(status, census_md(c)),
        Format::Csv => Output::Text(status, census_csv(c)),
    }
}

fn load(bytes: &[u8]) -> Result<Catalog, Failure> {
    Ok(load_catalog(bytes)?)
}

fn execute(cli: &Cli, bytes: &[u8]) -> Result<Output, Failure> {
    Ok(match &cli.command {
        Command::Validate => {
            let cat = parse_catalog(bytes)?;
            let report = validate_catalog(&cat);
            Output::Json(status_of(report.passed()), to_value(&report))
        }
        Command::Lvalue { disc, n } => {
            if *n == 0 {
                return Err(Error::InvalidArgument("n must be at least 1".into()).into());
            }
            let chi = QuadChar::new(*disc)?;
            let value: Rat = dirichlet_l_neg(*n, chi);
            Output::Json(
                Status::Ok,
                json!({ "disc": disc, "s": 1 - *n as i64, "value": ratio::to_string(&value) }),
            )
        }
        Command::Chi { pair, t } => {
            let cat = load(bytes)?;
            let pair = cat.pair(pair)?;
            let mut rows = Vec::new();
            for coll in variants(pair, t)? {
                let chi = chi_principal(pair, &coll)?;
                let gb = normalizer_chi(pair, &coll)?;
                rows.push(json!({
                    "collection": coll.to_string(),
                    "mu": mu_principal(pair, &coll).ok().map(|m| ratio::to_string(&m)),
                    "chi_lambda": ratio::to_string(&chi),
                    "chi_gammabar": ratio::to_string(&gb),
                    "viability": to_value(&fpp_viability(&gb)),
                }));
            }
            Output::Json(
                Status::Ok,
                json!({ "pair": pair.id, "T": t, "collections": rows }),
            )
        }
        Command::Classify { format } => {
            let cat = load(bytes)?;
            let c = census(&cat)?;
            let payload = to_value(&c);
            formatted(*format, &c, payload)
        }
        Command::Torsion { pair, t, level } => {
            let cat = load(bytes)?;
            let pair = cat.pair(pair)?;
            let ts = match t {
                Some(t) => vec![t.clone()],
                None => pair.admissible_t.clone(),
            };
            let mut certs = Vec::new();
            for t in &ts {
                for coll in variants(pair, t)? {
                    certs.push(to_value(&torsion_verdict(pair, &coll, (*level).into())));
                }
            }
            Output::Json(
                Status::Ok,
                json!({ "pair": pair.id, "certificates": certs }),
            )
        }
        Command::Cubes { field, s } => {
            let group = cube_class_group(parse_field(field)?, s)?;
            Output::Json(
                status_of(group.is_certified()),
                json!({ "order": group.order(), "certified": group.is_certified(), "group": to_value(&group) }),
            )
        }
        Command::Certify { class } => {
            let cat = load(bytes)?;
            let record = resolve_class(&cat, class)?;
            let bundle = certify_class(&cat, &record)?;
            Output::Json(
                status_of(bundle.passes()),
                json!({ "record": to_value(&record), "bundle": to_value(&bundle) }),
            )
        }
        Command::Report { format } => {
            let cat = load(bytes)?;
            let c = census(&cat)?;
            let validation = validate_catalog(&cat);
            let planes = plane_count_annotations(&cat);
            let payload = json!({
                "census": to_value(&c),
                "planes": to_value(&planes),
                "validation": {
                    "passed": validation.passed(),
                    "failures": validation.failures().map(to_value).collect::<Vec<_>>(),
                },
            });
            match formatted(*format, &c, payload) {
                Output::Json(s, p) => Output::Json(
                    if validation.passed() {
                        s
                    } else {
                        Status::VerificationFailure
                    },
                    p,
                ),
                Output::Text(s, mut text) if *format == Format::Md => {
                    let plane = |x: Option<u32>| x.map_or("unknown".to_string(), |n| n.to_string());
                    let last = text.split_off(text.trim_end().rfind('\n').map_or(0, |i| i + 1));
                    text.push_str(&format!(
                        "planes: {} isometry classes, {} up to biholomorphism, {} not in SU(2,1) (trusted)\n",
                        plane(planes.isometry),
                        plane(planes.biholomorphism),
                        plane(planes.not_in_su21)
                    ));
                    text.push_str(&last);
                    Output::Text(s, text)
                }
                other => other,
            }
        }
    })
}

/// Adds `<key>_decimal` next to every `num/den` string, marked approximate.
fn add_decimals(v: &mut Value) {
    match v {
        Value::Object(map) => {
            let extra: Vec<(String, Value)> = map
                .iter()
                .filter_map(|(k, x)| {
                    let s = x.as_str()?;
                    if !s.contains('/') {
                        return None;
                    }
                    let r = ratio::parse(s).ok()?;
                    Some((
                        format!("{k}_decimal"),
                        Value::String(format!("~{}", ratio::to_decimal(&r, 12))),
                    ))
                })
                .collect();
            for x in map.values_mut() {
                add_decimals(x);
            }
            map.extend(extra);
        }
        Value::Array(xs) => xs.iter_mut().for_each(add_decimals),
        _ => {}
    }
}

/// Runs one invocation; returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let command: Vec<String> = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let (hash, result) = match catalog_source(cli.catalog.as_ref()) {
        Ok(bytes) => (catalog_hash(&bytes), execute(&cli, &bytes)),
        Err(f) => (String::new(), Err(f)),
    };
    let (status, payload) = match result {
        Ok(Output::Text(status, text)) => {
            let _ = write!(out, "{text}");
            return status.exit_code();
        }
        Ok(Output::Json(status, payload)) => (status, payload),
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            (f.status, f.payload)
        }
    };
    let mut report = Report {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        schema_version: REPORT_SCHEMA_VERSION,
        catalog_hash: hash,
        command,
        status,
        payload,
    };
    if cli.decimal {
        add_decimals(&mut report.payload);
    }
    let _ = writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(&report).expect("report serializes")
    );
    status.exit_code()
}
