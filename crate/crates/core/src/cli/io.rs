//! JSON input schemas and deterministic JSON/CSV output.

use std::fs;
use std::io;
use std::path::Path;

use serde::ser::Serialize;
use serde::Deserialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::linalg::Matrix;
use crate::polytope::GeneralizedPolytope;
use crate::quadric::Quadric;

use super::CliError;

pub const POLYTOPE_SCHEMA: &str = r#"polytope JSON: {"pieces": [{"vertices": [[x1, ..., xn], ...]}, ...]}"#;
pub const QUADRIC_SCHEMA: &str = r#"quadric JSON:  {"A": [[a11, ..., a1n], ...], "b": [b1, ..., bn], "c": c}  for ½ sᵀA s + bᵀs + c = 0"#;

#[derive(Deserialize)]
struct PieceFile {
    vertices: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct PolytopeFile {
    pieces: Vec<PieceFile>,
}

#[derive(Deserialize)]
struct QuadricFile {
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    b: Vec<f64>,
    c: f64,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_polytope(path: &Path) -> Result<GeneralizedPolytope<f64>, CliError> {
    let file: PolytopeFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display()), POLYTOPE_SCHEMA))?;
    let sets: Vec<Vec<Vec<f64>>> = file.pieces.into_iter().map(|p| p.vertices).collect();
    GeneralizedPolytope::from_vertex_sets(&sets).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn load_quadric(path: &Path) -> Result<Quadric<f64>, CliError> {
    let file: QuadricFile = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Schema(format!("{}: {e}", path.display()), QUADRIC_SCHEMA))?;
    let n = file.b.len();
    if file.a.len() != n || file.a.iter().any(|r| r.len() != n) {
        return Err(CliError::Schema(format!("{}: A must be {n}×{n}", path.display()), QUADRIC_SCHEMA));
    }
    Quadric::new(Matrix::from_rows(&file.a), file.b, file.c)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Parse `"x1,x2,..."`.
pub fn parse_vec(text: &str) -> Result<Vec<f64>, String> {
    text.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|e| format!("`{x}`: {e}")))
        .collect()
}

/// Pretty JSON whose floats carry 17 significant digits.
struct Digits17<'a>(PrettyFormatter<'a>);

impl Formatter for Digits17<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{}", float(v))
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        write!(w, "{}", float(v as f64))
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// 17 significant digits, scientific notation.
pub fn float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, Digits17(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("in-memory serialization");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

/// Fixed-header numeric table.
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory CSV");
        for r in &self.rows {
            w.write_record(r.iter().map(|&x| float(x))).expect("in-memory CSV");
        }
        String::from_utf8(w.into_inner().expect("in-memory CSV")).expect("CSV is UTF-8")
    }
}

/// Axis-indexed column names `prefix1..prefixN`.
pub fn columns(prefix: &str, n: usize) -> impl Iterator<Item = String> + '_ {
    (1..=n).map(move |i| format!("{prefix}{i}"))
}
