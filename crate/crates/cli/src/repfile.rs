//! On-disk representation files.
//!
//! A `.rep` file is TOML with a fixed field set (see `docs/repfile.md`).
//! Matrices are stored densely, one row per line. Floats are written in
//! the shortest form that parses back to the same `f64`, so
//! `load(save(r)) == r` bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use sdrep_core::{Labels, SDRep, SymMat};
use serde::Deserialize;
use thiserror::Error;

pub const FORMAT_VERSION: i64 = 1;

#[derive(Debug, Error)]
pub enum RepFileError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("missing field \"format_version\"")]
    MissingVersion,
    #[error("unsupported format_version {0} (this build reads version {FORMAT_VERSION})")]
    UnsupportedVersion(i64),
    #[error("field \"{field}\": {message}")]
    Field { field: String, message: String },
    #[error(transparent)]
    Rep(#[from] sdrep_core::Error),
}

fn field_err(field: impl Into<String>, message: impl Into<String>) -> RepFileError {
    RepFileError::Field {
        field: field.into(),
        message: message.into(),
    }
}

/// A representation plus the free-text history of how it was built.
#[derive(Debug, Clone, PartialEq)]
pub struct RepFile {
    pub rep: SDRep,
    pub provenance: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLabels {
    ambient: Option<Vec<String>>,
    lifted: Option<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRepFile {
    #[allow(dead_code)]
    format_version: i64,
    k: usize,
    n: usize,
    m: usize,
    blocks: Option<Vec<usize>>,
    provenance: Option<Vec<String>>,
    #[serde(rename = "A")]
    a: Vec<Vec<f64>>,
    #[serde(rename = "B")]
    b: Vec<Vec<Vec<f64>>>,
    #[serde(rename = "C", default)]
    c: Vec<Vec<Vec<f64>>>,
    labels: Option<RawLabels>,
}

fn matrix(field: &str, rows: &[Vec<f64>], k: usize) -> Result<SymMat, RepFileError> {
    if rows.len() != k {
        return Err(field_err(
            field,
            format!("expected {k} rows, found {}", rows.len()),
        ));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != k {
            return Err(field_err(
                field,
                format!("row {i} has {} entries, expected {k}", r.len()),
            ));
        }
    }
    SymMat::from_rows(rows).map_err(|e| field_err(field, e.to_string()))
}

fn matrices(
    name: &str,
    list: &[Vec<Vec<f64>>],
    count: usize,
    count_name: &str,
    k: usize,
) -> Result<Vec<SymMat>, RepFileError> {
    if list.len() != count {
        return Err(field_err(
            name,
            format!(
                "expected {count} matrices ({count_name} = {count}), found {}",
                list.len()
            ),
        ));
    }
    list.iter()
        .enumerate()
        .map(|(i, rows)| matrix(&format!("{name}[{i}]"), rows, k))
        .collect()
}

/// Parses the textual form.
pub fn parse(text: &str) -> Result<RepFile, RepFileError> {
    let table: toml::Table = toml::from_str(text)?;
    match table.get("format_version") {
        None => return Err(RepFileError::MissingVersion),
        Some(toml::Value::Integer(FORMAT_VERSION)) => {}
        Some(toml::Value::Integer(v)) => return Err(RepFileError::UnsupportedVersion(*v)),
        Some(other) => {
            return Err(field_err(
                "format_version",
                format!("expected an integer, found {}", other.type_str()),
            ))
        }
    }
    let raw: RawRepFile = table.try_into()?;
    if raw.k == 0 {
        return Err(field_err("k", "must be at least 1"));
    }
    if raw.n == 0 {
        return Err(field_err("n", "must be at least 1"));
    }
    let k = raw.k;
    let a = matrix("A", &raw.a, k)?;
    let b = matrices("B", &raw.b, raw.n, "n", k)?;
    let c = matrices("C", &raw.c, raw.m, "m", k)?;

    let mut labels = Labels::default_for(raw.n, raw.m);
    if let Some(l) = raw.labels {
        if let Some(ambient) = l.ambient {
            if ambient.len() != raw.n {
                return Err(field_err(
                    "labels.ambient",
                    format!("expected {} names", raw.n),
                ));
            }
            labels.ambient = ambient;
        }
        if let Some(lifted) = l.lifted {
            if lifted.len() != raw.m {
                return Err(field_err(
                    "labels.lifted",
                    format!("expected {} names", raw.m),
                ));
            }
            labels.lifted = lifted;
        }
    }
    let blocks = raw.blocks.unwrap_or_else(|| vec![k]);
    let rep = SDRep::with_layout(a, b, c, blocks, Some(labels))
        .map_err(|e| field_err("blocks", e.to_string()))?;
    Ok(RepFile {
        rep,
        provenance: raw.provenance.unwrap_or_default(),
    })
}

pub fn load(path: impl AsRef<Path>) -> Result<RepFile, RepFileError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|source| RepFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse(&text)
}

pub fn save(file: &RepFile, path: impl AsRef<Path>) -> Result<(), RepFileError> {
    let path = path.as_ref();
    std::fs::write(path, to_text(file)).map_err(|source| RepFileError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Shortest decimal that round-trips, always with a `.` or exponent so
/// TOML reads it back as a float.
pub fn format_float(v: f64) -> String {
    format!("{v:?}")
}

fn quoted(s: &str) -> String {
    toml::Value::String(s.to_owned()).to_string()
}

fn string_array(items: &[String]) -> String {
    let parts: Vec<String> = items.iter().map(|s| quoted(s)).collect();
    format!("[{}]", parts.join(", "))
}

fn write_matrix(out: &mut String, m: &SymMat, indent: &str) {
    out.push_str("[\n");
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(|v| format_float(*v)).collect();
        let _ = writeln!(out, "{indent}  [{}],", cells.join(", "));
    }
    let _ = write!(out, "{indent}]");
}

fn write_matrix_list(out: &mut String, name: &str, mats: &[SymMat]) {
    if mats.is_empty() {
        let _ = writeln!(out, "{name} = []");
        return;
    }
    let _ = writeln!(out, "{name} = [");
    for m in mats {
        out.push_str("  ");
        write_matrix(out, m, "  ");
        out.push_str(",\n");
    }
    out.push_str("]\n");
}

pub fn to_text(file: &RepFile) -> String {
    let rep = &file.rep;
    let mut out = String::new();
    let _ = writeln!(out, "format_version = {FORMAT_VERSION}");
    let _ = writeln!(out, "k = {}", rep.k());
    let _ = writeln!(out, "n = {}", rep.n());
    let _ = writeln!(out, "m = {}", rep.m());
    let blocks: Vec<String> = rep.blocks().iter().map(|b| b.to_string()).collect();
    let _ = writeln!(out, "blocks = [{}]", blocks.join(", "));
    if file.provenance.is_empty() {
        out.push_str("provenance = []\n");
    } else {
        out.push_str("provenance = [\n");
        for line in &file.provenance {
            let _ = writeln!(out, "  {},", quoted(line));
        }
        out.push_str("]\n");
    }
    out.push('\n');
    out.push_str("A = ");
    write_matrix(&mut out, rep.constant(), "");
    out.push_str("\n\n");
    write_matrix_list(&mut out, "B", rep.ambient_coeffs());
    out.push('\n');
    write_matrix_list(&mut out, "C", rep.lifted_coeffs());
    out.push_str("\n[labels]\n");
    let _ = writeln!(out, "ambient = {}", string_array(&rep.labels().ambient));
    let _ = writeln!(out, "lifted = {}", string_array(&rep.labels().lifted));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbola() -> RepFile {
        let rep = SDRep::spectrahedron(
            SymMat::unit(2, 0, 1),
            vec![SymMat::unit(2, 0, 0), SymMat::unit(2, 1, 1)],
        )
        .unwrap();
        RepFile {
            rep,
            provenance: vec!["hyperbola \"xy >= 1\"".into()],
        }
    }

    #[test]
    fn text_round_trip() {
        let f = hyperbola();
        let text = to_text(&f);
        assert_eq!(parse(&text).unwrap(), f);
        assert_eq!(to_text(&parse(&text).unwrap()), text);
    }

    #[test]
    fn awkward_floats_round_trip_exactly() {
        let v = [
            0.1,
            -1.0 / 3.0,
            1e-300,
            6.02214076e23,
            -0.0,
            f64::MIN_POSITIVE,
            1e15 + 0.5,
        ];
        let rep = SDRep::spectrahedron(SymMat::diag(&v), vec![SymMat::identity(v.len())]).unwrap();
        let f = RepFile {
            rep,
            provenance: vec![],
        };
        let back = parse(&to_text(&f)).unwrap();
        for (a, b) in back
            .rep
            .constant()
            .as_slice()
            .iter()
            .zip(f.rep.constant().as_slice())
        {
            assert_eq!(a.to_bits(), b.to_bits());
        }
    }

    #[test]
    fn integers_are_accepted_in_matrices() {
        let text = "format_version = 1\nk = 1\nn = 1\nm = 0\nA = [[-1]]\nB = [[[1]]]\n";
        let f = parse(text).unwrap();
        assert_eq!(f.rep.constant().get(0, 0), -1.0);
        assert_eq!(f.rep.labels().ambient, vec!["x1"]);
        assert_eq!(f.rep.blocks(), &[1]);
    }

    #[test]
    fn wrong_a_shape_names_field() {
        let text = "format_version = 1\nk = 2\nn = 1\nm = 0\n\
                    A = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]\n\
                    B = [[[1.0, 0.0], [0.0, 1.0]]]\n";
        let err = parse(text).unwrap_err();
        assert!(
            matches!(&err, RepFileError::Field { field, .. } if field == "A"),
            "{err}"
        );
        assert!(err.to_string().contains("\"A\""));
    }

    #[test]
    fn other_errors() {
        let base = "k = 1\nn = 1\nm = 0\nA = [[1.0]]\nB = [[[1.0]]]\n";
        assert!(matches!(parse(base), Err(RepFileError::MissingVersion)));
        assert!(matches!(
            parse(&format!("format_version = 2\n{base}")),
            Err(RepFileError::UnsupportedVersion(2))
        ));
        let asym = "format_version = 1\nk = 2\nn = 1\nm = 0\nA = [[1.0, 0.5], [0.4, 1.0]]\nB = [[[1.0, 0.0], [0.0, 1.0]]]\n";
        let err = parse(asym).unwrap_err();
        assert!(err.to_string().contains("asymmetry"), "{err}");
        let missing_c = "format_version = 1\nk = 1\nn = 1\nm = 1\nA = [[1.0]]\nB = [[[1.0]]]\n";
        assert!(matches!(parse(missing_c), Err(RepFileError::Field { field, .. }) if field == "C"));
        let bad_b = "format_version = 1\nk = 1\nn = 1\nm = 0\nA = [[1.0]]\nB = [[[1.0, 2.0]]]\n";
        assert!(matches!(parse(bad_b), Err(RepFileError::Field { field, .. }) if field == "B[0]"));
        let syntax = "format_version = 1\nk = = 2\n";
        let err = parse(syntax).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let bad_blocks = "format_version = 1\nk = 2\nn = 1\nm = 0\nblocks = [1, 1]\nA = [[0.0, 1.0], [1.0, 0.0]]\nB = [[[1.0, 0.0], [0.0, 1.0]]]\n";
        assert!(
            matches!(parse(bad_blocks), Err(RepFileError::Field { field, .. }) if field == "blocks")
        );
    }
}
