//! Command implementations behind the `spectracone` binary. Every command
//! returns a JSON value; [`render`] turns it into the requested output format.

use std::io::Read;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};
use thiserror::Error;

use spectracone_core::cones::{Cone, ConeError};
use spectracone_core::perron::{build_vandermonde, is_rhc, is_suleimanova, PerronContext, PerronError};
use spectracone_core::ratmath::{
    format_rational, parse_rational, to_f64, MathError, Rational, RationalMatrix, SpectralVector,
};
use spectracone_core::section::{CrossSection, SectionError};
use spectracone_core::transforms::{apply, predicted_effect, Transform, TransformError};

#[derive(Debug, Parser)]
#[command(
    name = "spectracone",
    version,
    about = "Exact spectracones and row cones of invertible matrices"
)]
pub struct Cli {
    #[command(flatten)]
    pub output: OutputArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Add `<key>_approx` decimal approximations next to exact values.
    #[arg(long, global = true)]
    pub approx: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// MATRIX is a file path, `-` for stdin, or inline rows separated by `;`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// H-representation and extremal rays of the spectracone.
    Spectracone {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// H-representation and extremal rays of the row cone.
    Rowcone {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Row Hadamard conic test. Rectangular input is accepted.
    Rhc {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Relationship between the spectracone and the row cone. Several
    /// matrices are classified concurrently. Put `--` before inline
    /// matrices that start with `-`.
    Classify {
        #[arg(required = true)]
        matrices: Vec<String>,
    },
    /// Nonnegative matrix `S diag(x) S^-1` for a spectrum `x`.
    Realize {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long, allow_hyphen_values = true)]
        spectrum: String,
    },
    /// Vandermonde matrix of a spectrum with its RHC and row tests.
    Vandermonde {
        #[arg(allow_hyphen_values = true)]
        spectrum: String,
    },
    /// Apply `permute-rows`, `scale-rows`, `permute-cols` or `scale-cols`
    /// and check the predicted cones.
    Transform {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(long = "transform")]
        spec: String,
    },
    /// Cross-section polygons of both cones for n = 3.
    PlotData {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        /// `<coordinate>=<value>`, coordinate counted from 1.
        #[arg(long, default_value = "1=1")]
        slice: String,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("matrix not invertible")]
    Singular,
    #[error("{message}")]
    Precondition { message: String, details: Option<Value> },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Singular => 3,
            CliError::Precondition { .. } => 4,
            CliError::Internal(_) => 5,
        }
    }

    /// Machine-readable body printed to stdout alongside the message.
    pub fn details(&self) -> Option<&Value> {
        match self {
            CliError::Precondition { details, .. } => details.as_ref(),
            _ => None,
        }
    }

    fn precondition(message: impl Into<String>) -> Self {
        CliError::Precondition {
            message: message.into(),
            details: None,
        }
    }
}

impl From<MathError> for CliError {
    fn from(e: MathError) -> Self {
        match e {
            MathError::Singular => CliError::Singular,
            MathError::Parse(_) | MathError::Ragged { .. } => CliError::Parse(e.to_string()),
            MathError::NotSquare { .. } | MathError::LengthMismatch { .. } | MathError::DimensionMismatch(_) => {
                CliError::precondition(e.to_string())
            }
        }
    }
}

impl From<ConeError> for CliError {
    fn from(e: ConeError) -> Self {
        match e {
            ConeError::Math(m) => m.into(),
            other => CliError::Internal(other.to_string()),
        }
    }
}

impl From<PerronError> for CliError {
    fn from(e: PerronError) -> Self {
        match e {
            PerronError::Math(m) => m.into(),
            PerronError::Cone(c) => c.into(),
            PerronError::NotInSpectracone { row, col, ref value } => CliError::Precondition {
                message: e.to_string(),
                details: Some(json!({
                    "error": "not_in_spectracone",
                    "entry": [row, col],
                    "value": format_rational(value),
                })),
            },
            PerronError::IndexOutOfRange { .. } | PerronError::NoTotallyNonzeroRow => {
                CliError::precondition(e.to_string())
            }
            PerronError::Inconsistent(m) => CliError::Internal(m),
        }
    }
}

impl From<TransformError> for CliError {
    fn from(e: TransformError) -> Self {
        match e {
            TransformError::BadParameter(m) => CliError::Parse(m),
            TransformError::Cone(c) => c.into(),
            TransformError::Math(m) => m.into(),
        }
    }
}

impl From<SectionError> for CliError {
    fn from(e: SectionError) -> Self {
        let details = match &e {
            SectionError::UnboundedSlice { rays } => Some(json!({ "error": "unbounded_slice", "rays": rays })),
            _ => None,
        };
        CliError::Precondition {
            message: e.to_string(),
            details,
        }
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

/// Reads a matrix from a file, from stdin (`-`), or from inline text.
pub fn read_matrix(source: &str) -> Result<RationalMatrix, CliError> {
    let text = if source == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| CliError::Parse(format!("cannot read stdin: {e}")))?;
        buf
    } else if Path::new(source).is_file() {
        std::fs::read_to_string(source).map_err(|e| CliError::Parse(format!("cannot read {source}: {e}")))?
    } else if source.contains(';') || source.contains(' ') || source.contains(',') {
        source.to_string()
    } else {
        match RationalMatrix::parse(source) {
            Ok(m) => return Ok(m),
            Err(_) => return Err(CliError::Parse(format!("no such file: {source}"))),
        }
    };
    let m = RationalMatrix::parse(&text)?;
    if m.rows() == 0 {
        return Err(CliError::Parse(format!("{source}: empty matrix")));
    }
    Ok(m)
}

fn context(source: &str) -> Result<PerronContext, CliError> {
    let m = read_matrix(source)?;
    if !m.is_square() {
        return Err(MathError::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        }
        .into());
    }
    Ok(PerronContext::new(m)?)
}

fn cone_value(cone: &Cone) -> Result<Value, CliError> {
    to_value(&cone.to_document())
}

pub fn cmd_spectracone(matrix: &str) -> Result<Value, CliError> {
    cone_value(context(matrix)?.spectracone())
}

pub fn cmd_rowcone(matrix: &str) -> Result<Value, CliError> {
    cone_value(context(matrix)?.row_cone())
}

pub fn cmd_rhc(matrix: &str) -> Result<Value, CliError> {
    let m = read_matrix(matrix)?;
    let verdict = is_rhc(&m)?;
    if let Some(f) = &verdict.failure {
        if !f.verify(&m) {
            return Err(CliError::Internal("RHC certificate does not verify".into()));
        }
    }
    to_value(&verdict)
}

pub fn cmd_classify(matrices: &[String]) -> Result<Value, CliError> {
    if let [single] = matrices {
        return to_value(&context(single)?.classify()?);
    }
    let results: Vec<Result<Value, CliError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = matrices
            .iter()
            .map(|source| scope.spawn(move || to_value(&context(source)?.classify()?)))
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .unwrap_or_else(|_| Err(CliError::Internal("worker panicked".into())))
            })
            .collect()
    });
    let mut out = Vec::with_capacity(matrices.len());
    for (source, result) in matrices.iter().zip(results) {
        let report = result.map_err(|e| prefix(source, e))?;
        out.push(json!({ "input": source, "report": report }));
    }
    Ok(Value::Array(out))
}

fn prefix(source: &str, e: CliError) -> CliError {
    match e {
        CliError::Parse(m) => CliError::Parse(format!("{source}: {m}")),
        CliError::Precondition { message, details } => CliError::Precondition {
            message: format!("{source}: {message}"),
            details,
        },
        CliError::Internal(m) => CliError::Internal(format!("{source}: {m}")),
        CliError::Singular => CliError::Singular,
    }
}

pub fn cmd_realize(matrix: &str, spectrum: &str) -> Result<Value, CliError> {
    let ctx = context(matrix)?;
    let x = SpectralVector::parse(spectrum)?;
    to_value(&ctx.realize(&x)?)
}

pub fn cmd_vandermonde(spectrum: &str) -> Result<Value, CliError> {
    let x = SpectralVector::parse(spectrum)?;
    let s = build_vandermonde(&x)?;
    let ctx = PerronContext::new(s.clone())?;
    let rhc = ctx.rhc();
    let rows = (0..ctx.n())
        .map(|i| ctx.row_spectrum_test(i))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(json!({
        "spectrum": x,
        "matrix": to_value(&s)?,
        "is_suleimanova": is_suleimanova(&x),
        "is_rhc": rhc.holds,
        "rhc_failure": rhc.failure,
        "row_spectrum_tests": rows,
    }))
}

pub fn cmd_transform(matrix: &str, spec: &str) -> Result<Value, CliError> {
    let t: Transform = spec.parse()?;
    let ctx = context(matrix)?;
    let (c, rc) = predicted_effect(&t, &ctx)?;
    let fresh = PerronContext::new(apply(&t, ctx.matrix())?)?;
    let c_agrees = c.equals_as_sets(fresh.spectracone())?;
    let rc_agrees = rc.equals_as_sets(fresh.row_cone())?;
    if !(c_agrees && rc_agrees) {
        return Err(CliError::Internal(format!(
            "{t}: predicted cones differ from recomputed cones"
        )));
    }
    Ok(json!({
        "transform": t.to_string(),
        "parameter": to_value(&t.parameter()?)?,
        "matrix": to_value(fresh.matrix())?,
        "spectracone_rays": fresh.spectracone().extremal_rays().rays(),
        "row_cone_rays": fresh.row_cone().extremal_rays().rays(),
        "spectracone_unchanged": fresh.spectracone().equals_as_sets(ctx.spectracone())?,
        "row_cone_unchanged": fresh.row_cone().equals_as_sets(ctx.row_cone())?,
        "prediction_holds": true,
    }))
}

/// Parses `k=v` with `k` counted from 1.
pub fn parse_slice(text: &str) -> Result<(usize, Rational), CliError> {
    let bad = || CliError::Parse(format!("slice must look like <coordinate>=<value>, got {text:?}"));
    let (k, v) = text.split_once('=').ok_or_else(bad)?;
    let k: usize = k.trim().parse().map_err(|_| bad())?;
    if k == 0 {
        return Err(bad());
    }
    Ok((k - 1, parse_rational(v.trim())?))
}

pub fn cmd_plot_data(matrix: &str, slice: &str) -> Result<Value, CliError> {
    let (k, v) = parse_slice(slice)?;
    let ctx = context(matrix)?;
    if ctx.n() != 3 {
        return Err(SectionError::UnsupportedDimension(ctx.n()).into());
    }
    let c = CrossSection::of(ctx.spectracone(), k, &v)?;
    let rc = CrossSection::of(ctx.row_cone(), k, &v)?;
    Ok(json!({
        "slice": { "coordinate": k + 1, "value": format_rational(&v) },
        "spectracone": c.vertices,
        "row_cone": rc.vertices,
    }))
}

pub fn run(command: &Command) -> Result<Value, CliError> {
    match command {
        Command::Spectracone { matrix } => cmd_spectracone(matrix),
        Command::Rowcone { matrix } => cmd_rowcone(matrix),
        Command::Rhc { matrix } => cmd_rhc(matrix),
        Command::Classify { matrices } => cmd_classify(matrices),
        Command::Realize { matrix, spectrum } => cmd_realize(matrix, spectrum),
        Command::Vandermonde { spectrum } => cmd_vandermonde(spectrum),
        Command::Transform { matrix, spec } => cmd_transform(matrix, spec),
        Command::PlotData { matrix, slice } => cmd_plot_data(matrix, slice),
    }
}

/// Adds `<key>_approx` siblings for every key whose value is a rational
/// string or a nested list of them.
pub fn add_approximations(value: &mut Value) {
    match value {
        Value::Object(map) => {
            let mut extra = Map::new();
            for (key, v) in map.iter_mut() {
                if key == "input" {
                    continue;
                }
                if let Some(approx) = approximate(v) {
                    extra.insert(format!("{key}_approx"), approx);
                } else {
                    add_approximations(v);
                }
            }
            map.extend(extra);
        }
        Value::Array(items) => items.iter_mut().for_each(add_approximations),
        _ => {}
    }
}

fn approximate(value: &Value) -> Option<Value> {
    match value {
        Value::String(s) => parse_rational(s).ok().map(|r| json!(to_f64(&r))),
        Value::Array(items) if !items.is_empty() => items
            .iter()
            .map(approximate)
            .collect::<Option<Vec<_>>>()
            .map(Value::Array),
        _ => None,
    }
}

/// Serializes a command result. JSON is pretty-printed with sorted keys.
pub fn render(command: &Command, value: &Value, output: &OutputArgs) -> Result<String, CliError> {
    let mut value = value.clone();
    if output.approx {
        add_approximations(&mut value);
    }
    match output.format {
        Format::Json => serde_json::to_string_pretty(&value)
            .map(|s| s + "\n")
            .map_err(|e| CliError::Internal(e.to_string())),
        Format::Csv => to_csv(command, &value, output.approx),
    }
}

fn to_csv(command: &Command, value: &Value, approx: bool) -> Result<String, CliError> {
    let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
    let mut write = |record: Vec<String>| w.write_record(&record).map_err(|e| CliError::Internal(e.to_string()));
    match command {
        Command::Spectracone { .. } | Command::Rowcone { .. } => {
            write(header(
                &["kind", "index"],
                value["dim"].as_u64().unwrap_or(0) as usize,
                approx,
            ))?;
            for kind in ["ray", "halfspace"] {
                let key = if kind == "ray" { "rays" } else { "hrep" };
                for (i, v) in value[key].as_array().into_iter().flatten().enumerate() {
                    write(row(&[kind.to_string(), i.to_string()], v, approx))?;
                }
            }
        }
        Command::PlotData { .. } => {
            write(header(&["cone", "vertex"], 3, approx))?;
            for cone in ["spectracone", "row_cone"] {
                for (i, v) in value[cone].as_array().into_iter().flatten().enumerate() {
                    write(row(&[cone.to_string(), i.to_string()], v, approx))?;
                }
            }
        }
        _ => {
            write(vec!["path".into(), "value".into()])?;
            let mut leaves = Vec::new();
            flatten("", value, &mut leaves);
            for leaf in leaves {
                write(leaf)?;
            }
        }
    }
    let bytes = w.into_inner().map_err(|e| CliError::Internal(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Internal(e.to_string()))
}

fn header(lead: &[&str], dim: usize, approx: bool) -> Vec<String> {
    let mut h: Vec<String> = lead.iter().map(|s| s.to_string()).collect();
    h.extend((1..=dim).map(|k| format!("x{k}")));
    if approx {
        h.extend((1..=dim).map(|k| format!("x{k}_approx")));
    }
    h
}

fn row(lead: &[String], v: &Value, approx: bool) -> Vec<String> {
    let entries: Vec<&str> = v.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
    let mut r = lead.to_vec();
    r.extend(entries.iter().map(|s| s.to_string()));
    if approx {
        r.extend(
            entries
                .iter()
                .map(|s| parse_rational(s).map(|q| to_f64(&q).to_string()).unwrap_or_default()),
        );
    }
    r
}

fn flatten(path: &str, value: &Value, out: &mut Vec<Vec<String>>) {
    let join = |k: &str| {
        if path.is_empty() {
            k.to_string()
        } else {
            format!("{path}.{k}")
        }
    };
    match value {
        Value::Object(map) => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, v)| flatten(&join(&i.to_string()), v, out)),
        Value::String(s) => out.push(vec![path.to_string(), s.clone()]),
        other => out.push(vec![path.to_string(), other.to_string()]),
    }
}
