//! Matrix file ingestion and emission: Matrix Market and a plain JSON
//! encoding.
//!
//! Matrix Market support covers the `array` and `coordinate` formats with
//! fields `real`, `integer`, or `complex` and symmetry qualifiers `general`,
//! `symmetric`, or `hermitian` (the stored triangle is expanded). `pattern`
//! and `skew-symmetric` files are rejected as unsupported. The JSON encoding
//! is row-major with parallel real/imaginary arrays:
//! `{"rows": n, "cols": m, "re": [...], "im": [...]}`.
//!
//! Writers emit shortest round-trip decimal representations, so a write/read
//! cycle reproduces every entry bit for bit.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{OpError, Result};
use crate::matrix::{c, check_finite, CMatrix};

/// On-disk encodings the tool understands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FileFormat {
    /// NIST Matrix Market (`.mtx`).
    MatrixMarket,
    /// Row-major JSON with parallel `re`/`im` arrays.
    Json,
}

/// Pick a format from the file extension: `.json` → JSON, everything else →
/// Matrix Market.
pub fn detect_format(path: &Path) -> FileFormat {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => FileFormat::Json,
        _ => FileFormat::MatrixMarket,
    }
}

fn io_err(path: &Path, source: std::io::Error) -> OpError {
    OpError::Io {
        path: path.display().to_string(),
        source,
    }
}

fn parse_err(label: &str, line: usize, message: impl Into<String>) -> OpError {
    OpError::ParseError {
        path: label.to_string(),
        line,
        message: message.into(),
    }
}

/// Read a matrix from `path` in the given format.
pub fn read_matrix(path: &Path, format: FileFormat) -> Result<CMatrix> {
    let text = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let label = path.display().to_string();
    match format {
        FileFormat::MatrixMarket => parse_matrix_market(&text, &label),
        FileFormat::Json => parse_matrix_json(&text, &label),
    }
}

/// Write a matrix to `path` in the given format. Refuses non-finite entries.
pub fn write_matrix(m: &CMatrix, path: &Path, format: FileFormat) -> Result<()> {
    check_finite(m, "matrix to write")?;
    let text = match format {
        FileFormat::MatrixMarket => format_matrix_market(m),
        FileFormat::Json => format_matrix_json(m),
    };
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmFormat {
    Array,
    Coordinate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmField {
    Real,
    Integer,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MmSymmetry {
    General,
    Symmetric,
    Hermitian,
}

struct MmHeader {
    format: MmFormat,
    field: MmField,
    symmetry: MmSymmetry,
}

fn parse_mm_header(line: &str, label: &str) -> Result<MmHeader> {
    let tokens: Vec<String> = line.split_whitespace().map(|t| t.to_lowercase()).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" {
        return Err(parse_err(
            label,
            1,
            "expected header '%%MatrixMarket matrix <format> <field> <symmetry>'",
        ));
    }
    if tokens[1] != "matrix" {
        return Err(OpError::UnsupportedFormat(format!(
            "Matrix Market object '{}' (only 'matrix' is supported)",
            tokens[1]
        )));
    }
    let format = match tokens[2].as_str() {
        "array" => MmFormat::Array,
        "coordinate" => MmFormat::Coordinate,
        other => {
            return Err(parse_err(
                label,
                1,
                format!("unknown Matrix Market format '{other}'"),
            ))
        }
    };
    let field = match tokens[3].as_str() {
        "real" => MmField::Real,
        "integer" => MmField::Integer,
        "complex" => MmField::Complex,
        "pattern" => {
            return Err(OpError::UnsupportedFormat(
                "Matrix Market field 'pattern' carries no values".into(),
            ))
        }
        other => {
            return Err(parse_err(
                label,
                1,
                format!("unknown Matrix Market field '{other}'"),
            ))
        }
    };
    let symmetry = match tokens[4].as_str() {
        "general" => MmSymmetry::General,
        "symmetric" => MmSymmetry::Symmetric,
        "hermitian" => MmSymmetry::Hermitian,
        "skew-symmetric" => {
            return Err(OpError::UnsupportedFormat(
                "Matrix Market symmetry 'skew-symmetric'".into(),
            ))
        }
        other => {
            return Err(parse_err(
                label,
                1,
                format!("unknown Matrix Market symmetry '{other}'"),
            ))
        }
    };
    Ok(MmHeader {
        format,
        field,
        symmetry,
    })
}

fn parse_f64(tok: &str, label: &str, line: usize) -> Result<f64> {
    tok.parse::<f64>()
        .map_err(|_| parse_err(label, line, format!("expected a number, found '{tok}'")))
}

fn parse_usize(tok: &str, label: &str, line: usize) -> Result<usize> {
    tok.parse::<usize>()
        .map_err(|_| parse_err(label, line, format!("expected a dimension, found '{tok}'")))
}

/// One stored value: `real`/`integer` files carry one number per entry,
/// `complex` files carry two.
fn parse_value(tokens: &[&str], field: MmField, label: &str, line: usize) -> Result<num_complex::Complex64> {
    match field {
        MmField::Real | MmField::Integer => {
            if tokens.len() != 1 {
                return Err(parse_err(
                    label,
                    line,
                    format!("expected 1 value, found {}", tokens.len()),
                ));
            }
            Ok(c(parse_f64(tokens[0], label, line)?, 0.0))
        }
        MmField::Complex => {
            if tokens.len() != 2 {
                return Err(parse_err(
                    label,
                    line,
                    format!("expected 2 values (re im), found {}", tokens.len()),
                ));
            }
            Ok(c(
                parse_f64(tokens[0], label, line)?,
                parse_f64(tokens[1], label, line)?,
            ))
        }
    }
}

/// Parse Matrix Market text. `label` names the source in error messages.
pub fn parse_matrix_market(text: &str, label: &str) -> Result<CMatrix> {
    let mut lines = text.lines().enumerate();
    let header = match lines.next() {
        Some((_, l)) => parse_mm_header(l, label)?,
        None => return Err(parse_err(label, 1, "empty file")),
    };

    // Skip comments and blank lines up to the size line.
    let (size_lineno, size_line) = loop {
        match lines.next() {
            Some((i, l)) => {
                let t = l.trim();
                if t.is_empty() || t.starts_with('%') {
                    continue;
                }
                break (i + 1, t.to_string());
            }
            None => return Err(parse_err(label, 1, "missing size line")),
        }
    };
    let size_tokens: Vec<&str> = size_line.split_whitespace().collect();

    // Remaining data lines, with their 1-based line numbers.
    let mut data: Vec<(usize, Vec<&str>)> = Vec::new();
    for (i, l) in lines {
        let t = l.trim();
        if t.is_empty() || t.starts_with('%') {
            continue;
        }
        data.push((i + 1, t.split_whitespace().collect()));
    }

    match header.format {
        MmFormat::Array => {
            if size_tokens.len() != 2 {
                return Err(parse_err(label, size_lineno, "array size line must be 'rows cols'"));
            }
            let rows = parse_usize(size_tokens[0], label, size_lineno)?;
            let cols = parse_usize(size_tokens[1], label, size_lineno)?;
            if header.symmetry != MmSymmetry::General && rows != cols {
                return Err(parse_err(
                    label,
                    size_lineno,
                    "symmetric/hermitian matrices must be square",
                ));
            }
            let expected = if header.symmetry == MmSymmetry::General {
                rows * cols
            } else {
                rows * (rows + 1) / 2
            };
            if data.len() != expected {
                return Err(parse_err(
                    label,
                    data.last().map(|d| d.0).unwrap_or(size_lineno),
                    format!("expected {expected} entries, found {}", data.len()),
                ));
            }
            let mut m = CMatrix::zeros(rows, cols);
            let mut it = data.iter();
            match header.symmetry {
                MmSymmetry::General => {
                    // column-major per the format definition
                    for j in 0..cols {
                        for i in 0..rows {
                            let (ln, toks) = it.next().expect("count checked");
                            m[(i, j)] = parse_value(toks, header.field, label, *ln)?;
                        }
                    }
                }
                MmSymmetry::Symmetric | MmSymmetry::Hermitian => {
                    for j in 0..cols {
                        for i in j..rows {
                            let (ln, toks) = it.next().expect("count checked");
                            let v = parse_value(toks, header.field, label, *ln)?;
                            m[(i, j)] = v;
                            if i != j {
                                m[(j, i)] = if header.symmetry == MmSymmetry::Hermitian {
                                    v.conj()
                                } else {
                                    v
                                };
                            }
                        }
                    }
                }
            }
            Ok(m)
        }
        MmFormat::Coordinate => {
            if size_tokens.len() != 3 {
                return Err(parse_err(
                    label,
                    size_lineno,
                    "coordinate size line must be 'rows cols nnz'",
                ));
            }
            let rows = parse_usize(size_tokens[0], label, size_lineno)?;
            let cols = parse_usize(size_tokens[1], label, size_lineno)?;
            let nnz = parse_usize(size_tokens[2], label, size_lineno)?;
            if header.symmetry != MmSymmetry::General && rows != cols {
                return Err(parse_err(
                    label,
                    size_lineno,
                    "symmetric/hermitian matrices must be square",
                ));
            }
            if data.len() != nnz {
                return Err(parse_err(
                    label,
                    data.last().map(|d| d.0).unwrap_or(size_lineno),
                    format!("expected {nnz} entries, found {}", data.len()),
                ));
            }
            let mut m = CMatrix::zeros(rows, cols);
            for (ln, toks) in &data {
                if toks.len() < 3 {
                    return Err(parse_err(label, *ln, "entry must be 'row col value...'"));
                }
                let i = parse_usize(toks[0], label, *ln)?;
                let j = parse_usize(toks[1], label, *ln)?;
                if i < 1 || i > rows || j < 1 || j > cols {
                    return Err(parse_err(
                        label,
                        *ln,
                        format!("index ({i}, {j}) outside {rows}x{cols} (1-based)"),
                    ));
                }
                let v = parse_value(&toks[2..], header.field, label, *ln)?;
                if header.symmetry != MmSymmetry::General && i < j {
                    return Err(parse_err(
                        label,
                        *ln,
                        "symmetric/hermitian files must store the lower triangle only",
                    ));
                }
                m[(i - 1, j - 1)] = v;
                if header.symmetry != MmSymmetry::General && i != j {
                    m[(j - 1, i - 1)] = if header.symmetry == MmSymmetry::Hermitian {
                        v.conj()
                    } else {
                        v
                    };
                }
            }
            Ok(m)
        }
    }
}

/// Format a matrix as Matrix Market `array complex general`, column-major,
/// shortest round-trip decimals.
pub fn format_matrix_market(m: &CMatrix) -> String {
    let mut out = String::new();
    out.push_str("%%MatrixMarket matrix array complex general\n");
    let _ = writeln!(out, "{} {}", m.nrows(), m.ncols());
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            let _ = writeln!(out, "{} {}", z.re, z.im);
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
struct JsonMatrix {
    rows: usize,
    cols: usize,
    re: Vec<f64>,
    im: Vec<f64>,
}

/// Parse the JSON encoding. `label` names the source in error messages.
pub fn parse_matrix_json(text: &str, label: &str) -> Result<CMatrix> {
    let jm: JsonMatrix = serde_json::from_str(text)
        .map_err(|e| parse_err(label, e.line(), e.to_string()))?;
    let n = jm.rows * jm.cols;
    if jm.re.len() != n || jm.im.len() != n {
        return Err(parse_err(
            label,
            0,
            format!(
                "re/im arrays must hold rows*cols = {n} values, found {} and {}",
                jm.re.len(),
                jm.im.len()
            ),
        ));
    }
    Ok(CMatrix::from_fn(jm.rows, jm.cols, |i, j| {
        let k = i * jm.cols + j;
        c(jm.re[k], jm.im[k])
    }))
}

/// Format a matrix as row-major JSON with parallel `re`/`im` arrays.
pub fn format_matrix_json(m: &CMatrix) -> String {
    let n = m.nrows() * m.ncols();
    let mut re = Vec::with_capacity(n);
    let mut im = Vec::with_capacity(n);
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            re.push(m[(i, j)].re);
            im.push(m[(i, j)].im);
        }
    }
    let jm = JsonMatrix {
        rows: m.nrows(),
        cols: m.ncols(),
        re,
        im,
    };
    serde_json::to_string_pretty(&jm).expect("plain floats always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Stream;

    #[test]
    fn array_complex_general_is_column_major() {
        let text = "%%MatrixMarket matrix array complex general\n\
                    % a comment\n\
                    2 2\n\
                    1 0\n\
                    2 0\n\
                    3 0.5\n\
                    4 0\n";
        let m = parse_matrix_market(text, "t").unwrap();
        assert_eq!(m[(0, 0)], c(1.0, 0.0));
        assert_eq!(m[(1, 0)], c(2.0, 0.0));
        assert_eq!(m[(0, 1)], c(3.0, 0.5));
        assert_eq!(m[(1, 1)], c(4.0, 0.0));
    }

    #[test]
    fn hermitian_coordinate_expands_lower_triangle() {
        let text = "%%MatrixMarket matrix coordinate complex hermitian\n\
                    2 2 3\n\
                    1 1 2 0\n\
                    2 1 1 -3\n\
                    2 2 5 0\n";
        let m = parse_matrix_market(text, "t").unwrap();
        assert_eq!(m[(0, 1)], c(1.0, 3.0));
        assert_eq!(m[(1, 0)], c(1.0, -3.0));
        assert_eq!((m.clone() - m.adjoint()).norm(), 0.0);
    }

    #[test]
    fn symmetric_array_real_expands_without_conjugation() {
        let text = "%%MatrixMarket matrix array real symmetric\n\
                    2 2\n\
                    1\n\
                    7\n\
                    4\n";
        let m = parse_matrix_market(text, "t").unwrap();
        assert_eq!(m[(0, 1)], c(7.0, 0.0));
        assert_eq!(m[(1, 0)], c(7.0, 0.0));
        assert_eq!(m[(1, 1)], c(4.0, 0.0));
    }

    #[test]
    fn integer_coordinate_parses() {
        let text = "%%MatrixMarket matrix coordinate integer general\n\
                    3 3 2\n\
                    1 3 7\n\
                    2 2 -4\n";
        let m = parse_matrix_market(text, "t").unwrap();
        assert_eq!(m[(0, 2)], c(7.0, 0.0));
        assert_eq!(m[(1, 1)], c(-4.0, 0.0));
        assert_eq!(m[(2, 2)], c(0.0, 0.0));
    }

    #[test]
    fn rejects_pattern_and_skew() {
        let p = "%%MatrixMarket matrix coordinate pattern general\n2 2 1\n1 1\n";
        assert!(matches!(
            parse_matrix_market(p, "t"),
            Err(OpError::UnsupportedFormat(_))
        ));
        let s = "%%MatrixMarket matrix array real skew-symmetric\n2 2\n0\n1\n";
        assert!(matches!(
            parse_matrix_market(s, "t"),
            Err(OpError::UnsupportedFormat(_))
        ));
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let text = "%%MatrixMarket matrix array real general\n\
                    2 1\n\
                    1.5\n\
                    oops\n";
        match parse_matrix_market(text, "bad.mtx") {
            Err(OpError::ParseError { path, line, .. }) => {
                assert_eq!(path, "bad.mtx");
                assert_eq!(line, 4);
            }
            other => panic!("expected ParseError, got {other:?}"),
        }

        let short = "%%MatrixMarket matrix array real general\n2 2\n1\n2\n3\n";
        match parse_matrix_market(short, "t") {
            Err(OpError::ParseError { line, .. }) => assert_eq!(line, 5),
            other => panic!("expected ParseError, got {other:?}"),
        }
    }

    #[test]
    fn coordinate_index_bounds_checked() {
        let text = "%%MatrixMarket matrix coordinate real general\n\
                    2 2 1\n\
                    0 1 3.5\n";
        match parse_matrix_market(text, "t") {
            Err(OpError::ParseError { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected ParseError, got {other:?}"),
        }

        let upper = "%%MatrixMarket matrix coordinate real hermitian\n\
                     2 2 1\n\
                     1 2 3.5\n";
        assert!(matches!(
            parse_matrix_market(upper, "t"),
            Err(OpError::ParseError { line: 3, .. })
        ));
    }

    #[test]
    fn matrix_market_round_trip_is_bit_exact() {
        let mut s = Stream::new(77);
        let m = s.gaussian(5, 3);
        let text = format_matrix_market(&m);
        let back = parse_matrix_market(&text, "t").unwrap();
        assert_eq!(m, back);
        // and a second formatting pass is byte-identical
        assert_eq!(text, format_matrix_market(&back));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let mut s = Stream::new(78);
        let m = s.gaussian(4, 6);
        let text = format_matrix_json(&m);
        let back = parse_matrix_json(&text, "t").unwrap();
        assert_eq!(m, back);
        assert_eq!(text, format_matrix_json(&back));
    }

    #[test]
    fn json_length_mismatch_rejected() {
        let text = r#"{"rows": 2, "cols": 2, "re": [1, 2, 3], "im": [0, 0, 0, 0]}"#;
        assert!(matches!(
            parse_matrix_json(text, "t"),
            Err(OpError::ParseError { .. })
        ));
    }

    #[test]
    fn file_round_trip_both_formats() {
        let dir = std::env::temp_dir().join(format!("opkit-io-test-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let mut s = Stream::new(79);
        let m = s.gaussian(3, 3);
        for (name, fmt) in [("m.mtx", FileFormat::MatrixMarket), ("m.json", FileFormat::Json)] {
            let path = dir.join(name);
            assert_eq!(detect_format(&path), fmt);
            write_matrix(&m, &path, fmt).unwrap();
            let back = read_matrix(&path, fmt).unwrap();
            assert_eq!(m, back);
        }
        std::fs::remove_dir_all(&dir).ok();
    }

    #[test]
    fn missing_file_maps_to_io_error() {
        let e = read_matrix(Path::new("/nonexistent/nope.mtx"), FileFormat::MatrixMarket)
            .unwrap_err();
        assert!(matches!(e, OpError::Io { .. }), "{e}");
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arbitrary_matrix() -> impl Strategy<Value = CMatrix> {
            (1usize..7, 1usize..7).prop_flat_map(|(m, n)| {
                prop::collection::vec(
                    (
                        prop::num::f64::NORMAL | prop::num::f64::ZERO,
                        prop::num::f64::NORMAL | prop::num::f64::ZERO,
                    ),
                    m * n,
                )
                .prop_map(move |entries| {
                    CMatrix::from_fn(m, n, |i, j| {
                        let (re, im) = entries[i * n + j];
                        c(re, im)
                    })
                })
            })
        }

        proptest! {
            /// Writers emit shortest round-trip decimal, so text round
            /// trips must reproduce every f64 bit for bit, including
            /// extreme exponents.
            #[test]
            fn matrix_market_text_round_trip_is_exact(m in arbitrary_matrix()) {
                let text = format_matrix_market(&m);
                let back = parse_matrix_market(&text, "prop").unwrap();
                prop_assert_eq!(m, back);
            }

            #[test]
            fn json_text_round_trip_is_exact(m in arbitrary_matrix()) {
                let text = format_matrix_json(&m);
                let back = parse_matrix_json(&text, "prop").unwrap();
                prop_assert_eq!(m, back);
            }
        }
    }
}
