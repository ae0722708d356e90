//! Text file formats.
//!
//! * Barcodes: one `birth death` pair per line, `#` comments, `inf` deaths
//!   only with an explicit cap.
//! * Distance matrices: square CSV, or PHYLIP lower-triangular blocks.
//! * Tropical vectors: CSV with a `label,<orbit names>` header and the
//!   `(n, m)` spec in the manifest comments.
//! * Gaussian fits: CSV with a `label,mu,sigma2` header.
//!
//! Numbers are written in shortest round-trip form, so loading a written
//! file reproduces every value bit for bit.

use std::path::Path;

use tropix_core::tropical::{orbit_layout, TropicalVector};
use tropix_core::{Barcode, DistanceMatrix, GaussianModel, RegularizedSpec};

use crate::error::{Error, ParseError, Result};
use crate::manifest::RunManifest;

/// Shortest decimal that parses back to the same `f64`.
pub fn fmt_f64(v: f64) -> String {
    let v = if v == 0.0 { 0.0 } else { v };
    if v == 0.0 || (1e-5..1e16).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn join(values: impl IntoIterator<Item = f64>) -> String {
    values.into_iter().map(fmt_f64).collect::<Vec<_>>().join(",")
}

fn parse_number(token: &str, origin: &str, line: usize, column: usize) -> Result<f64, ParseError> {
    token
        .parse::<f64>()
        .map_err(|_| ParseError::new(origin, line, column, format!("expected a number, found {token:?}")))
}

fn is_infinity(token: &str) -> bool {
    matches!(token.to_ascii_lowercase().trim_start_matches('+'), "inf" | "infinity")
}

/// Tokens of a whitespace-separated line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (pos, ch) in line.char_indices().chain(std::iter::once((line.len(), ' '))) {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..pos]));
                start = None;
            }
            (false, None) => start = Some(pos),
            _ => {}
        }
    }
    out
}

fn strip_comment(line: &str) -> &str {
    line.split_once('#').map_or(line, |(data, _)| data)
}

pub fn parse_barcode(text: &str, origin: &str, cap: Option<f64>) -> Result<Barcode> {
    let mut bars = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let fields = tokens(strip_comment(raw));
        match fields.as_slice() {
            [] => continue,
            [(bc, birth), (dc, death)] => {
                let b = parse_number(birth, origin, line, *bc)?;
                if !b.is_finite() || b < 0.0 {
                    return Err(ParseError::new(origin, line, *bc, "birth must be finite and nonnegative").into());
                }
                let d = if is_infinity(death) {
                    let cap = cap.ok_or_else(|| Error::UncappedInfinity { origin: origin.to_owned(), line })?;
                    if cap < b {
                        return Err(ParseError::new(origin, line, *dc, format!("cap {cap} precedes birth {b}")).into());
                    }
                    cap
                } else {
                    parse_number(death, origin, line, *dc)?
                };
                if !d.is_finite() || d < b {
                    return Err(ParseError::new(origin, line, *dc, "death must be finite and not before birth").into());
                }
                bars.push((b, d - b));
            }
            [_] => {
                let column = raw.trim_end().chars().count() + 1;
                return Err(ParseError::new(origin, line, column, "expected `birth death`").into());
            }
            [_, _, (column, extra), ..] => {
                return Err(ParseError::new(origin, line, *column, format!("unexpected field {extra:?}")).into());
            }
        }
    }
    Ok(Barcode::normalize(bars)?)
}

pub fn write_barcode(barcode: &Barcode, manifest: &RunManifest) -> String {
    let mut out = manifest.header();
    for bar in barcode.iter() {
        out.push_str(&format!("{} {}\n", fmt_f64(bar.x), fmt_f64(bar.x + bar.d)));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixFormat {
    Csv,
    Phylip,
}

impl MatrixFormat {
    /// `.phy` and `.phylip` files are PHYLIP, everything else CSV.
    pub fn from_extension(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()).map(str::to_ascii_lowercase).as_deref() {
            Some("phy" | "phylip") => MatrixFormat::Phylip,
            _ => MatrixFormat::Csv,
        }
    }
}

pub fn parse_matrix(text: &str, origin: &str, format: MatrixFormat) -> Result<DistanceMatrix> {
    match format {
        MatrixFormat::Csv => parse_distance_csv(text, origin),
        MatrixFormat::Phylip => parse_phylip(text, origin).map(|(_, m)| m),
    }
}

fn csv_reader(text: &str, headers: bool) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(headers)
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes())
}

fn csv_error(origin: &str, err: csv::Error) -> Error {
    let line = err.position().map_or(0, |p| p.line() as usize);
    ParseError::new(origin, line, 1, err.to_string()).into()
}

fn record_line(record: &csv::StringRecord) -> usize {
    record.position().map_or(0, |p| p.line() as usize)
}

/// Square CSV matrix of nonnegative distances with a zero diagonal.
pub fn parse_distance_csv(text: &str, origin: &str) -> Result<DistanceMatrix> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for record in csv_reader(text, false).records() {
        let record = record.map_err(|e| csv_error(origin, e))?;
        let line = record_line(&record);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let row = record
            .iter()
            .enumerate()
            .map(|(k, field)| parse_number(field, origin, line, k + 1))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(first) = rows.first() {
            if row.len() != first.len() {
                let msg = format!("row has {} entries, expected {}", row.len(), first.len());
                return Err(ParseError::new(origin, line, row.len().min(first.len()) + 1, msg).into());
            }
        }
        rows.push(row);
    }
    let size = rows.len();
    if let Some(first) = rows.first() {
        if first.len() != size {
            let msg = format!("matrix has {size} rows but {} columns", first.len());
            return Err(ParseError::new(origin, 1, 1, msg).into());
        }
    }
    Ok(DistanceMatrix::new(size, rows.concat())?)
}

/// PHYLIP lower-triangular block: a count line, then one line per taxon with
/// its name and distances to every earlier taxon (a trailing zero diagonal
/// entry is accepted).
pub fn parse_phylip(text: &str, origin: &str) -> Result<(Vec<String>, DistanceMatrix)> {
    let mut lines =
        text.lines().enumerate().map(|(k, l)| (k + 1, tokens(strip_comment(l)))).filter(|(_, t)| !t.is_empty());
    let (count_line, header) = lines.next().ok_or_else(|| ParseError::new(origin, 1, 1, "missing taxon count"))?;
    let size = match header.as_slice() {
        [(_, count)] => count
            .parse::<usize>()
            .map_err(|_| ParseError::new(origin, count_line, 1, format!("bad taxon count {count:?}")))?,
        [_, (column, _), ..] => return Err(ParseError::new(origin, count_line, *column, "unexpected field").into()),
        [] => unreachable!(),
    };
    let mut names = Vec::with_capacity(size);
    let mut entries = vec![0.0; size * size];
    for row in 0..size {
        let (line, fields) = lines
            .next()
            .ok_or_else(|| ParseError::new(origin, count_line, 1, format!("expected {size} taxa, found {row}")))?;
        let values = &fields[1..];
        if values.len() != row && values.len() != row + 1 {
            let column = fields.last().map_or(1, |(c, _)| *c);
            let msg = format!("taxon {} needs {row} distances, found {}", row + 1, values.len());
            return Err(ParseError::new(origin, line, column, msg).into());
        }
        for (col, (column, token)) in values.iter().enumerate() {
            let v = parse_number(token, origin, line, *column)?;
            if col == row && v != 0.0 {
                return Err(ParseError::new(origin, line, *column, "diagonal entry must be 0").into());
            }
            entries[row * size + col] = v;
            entries[col * size + row] = v;
        }
        names.push(fields[0].1.to_owned());
    }
    if let Some((line, fields)) = lines.next() {
        return Err(ParseError::new(origin, line, fields[0].0, "unexpected data after the last taxon").into());
    }
    Ok((names, DistanceMatrix::new(size, entries)?))
}

/// Headerless square CSV of any matrix.
pub fn write_matrix(size: usize, entries: &[f64], manifest: &RunManifest) -> String {
    let mut out = manifest.header();
    for row in entries.chunks(size.max(1)) {
        out.push_str(&join(row.iter().copied()));
        out.push('\n');
    }
    out
}

/// Labeled tropical vectors sharing one spec.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorTable {
    pub labels: Vec<String>,
    pub spec: RegularizedSpec,
    pub vectors: Vec<TropicalVector>,
}

fn header_names(n: usize) -> Vec<String> {
    orbit_layout(n).iter().map(ToString::to_string).collect()
}

pub fn write_vectors(table: &VectorTable, manifest: &RunManifest) -> String {
    let mut manifest = manifest.clone();
    manifest.set("n", table.spec.n_max.to_string());
    manifest.set_f64("m", table.spec.m);
    let mut out = manifest.header();
    out.push_str("label,");
    out.push_str(&header_names(table.spec.n_max).join(","));
    out.push('\n');
    for (label, v) in table.labels.iter().zip(&table.vectors) {
        out.push_str(&format!("{label},{}\n", join(v.values().iter().copied())));
    }
    out
}

fn metadata<T: std::str::FromStr>(manifest: &RunManifest, key: &str, origin: &str) -> Result<T> {
    manifest
        .get(key)
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| ParseError::new(origin, 1, 1, format!("missing or invalid `# {key}=` line")).into())
}

pub fn parse_vectors(text: &str, origin: &str) -> Result<VectorTable> {
    let manifest = RunManifest::from_comments(text);
    let n: usize = metadata(&manifest, "n", origin)?;
    let m: f64 = metadata(&manifest, "m", origin)?;
    let spec = RegularizedSpec::new(n, m)?;
    let mut reader = csv_reader(text, true);
    let expected: Vec<String> = std::iter::once("label".to_owned()).chain(header_names(n)).collect();
    let headers = reader.headers().map_err(|e| csv_error(origin, e))?.clone();
    if headers.iter().ne(expected.iter().map(String::as_str)) {
        let line = record_line(&headers);
        return Err(ParseError::new(origin, line, 1, format!("header must be {}", expected.join(","))).into());
    }
    let mut table = VectorTable { labels: Vec::new(), spec, vectors: Vec::new() };
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(origin, e))?;
        let line = record_line(&record);
        if record.len() != expected.len() {
            let msg = format!("expected {} fields, found {}", expected.len(), record.len());
            return Err(ParseError::new(origin, line, 1, msg).into());
        }
        let values = record
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, f)| parse_number(f, origin, line, k + 1))
            .collect::<Result<Vec<_>, _>>()?;
        table.labels.push(record[0].to_owned());
        table.vectors.push(TropicalVector::from_values(spec, values)?);
    }
    Ok(table)
}

/// Labeled Gaussian fits.
#[derive(Debug, Clone, PartialEq)]
pub struct FitTable {
    pub labels: Vec<String>,
    pub models: Vec<GaussianModel>,
}

pub fn write_fits(table: &FitTable, manifest: &RunManifest) -> String {
    let mut out = manifest.header();
    out.push_str("label,mu,sigma2\n");
    for (label, g) in table.labels.iter().zip(&table.models) {
        out.push_str(&format!("{label},{},{}\n", fmt_f64(g.mu()), fmt_f64(g.sigma2())));
    }
    out
}

pub fn parse_fits(text: &str, origin: &str) -> Result<FitTable> {
    let mut reader = csv_reader(text, true);
    let headers = reader.headers().map_err(|e| csv_error(origin, e))?.clone();
    if headers.iter().ne(["label", "mu", "sigma2"]) {
        return Err(ParseError::new(origin, record_line(&headers), 1, "header must be label,mu,sigma2").into());
    }
    let mut table = FitTable { labels: Vec::new(), models: Vec::new() };
    for record in reader.records() {
        let record = record.map_err(|e| csv_error(origin, e))?;
        let line = record_line(&record);
        if record.len() != 3 {
            return Err(ParseError::new(origin, line, 1, format!("expected 3 fields, found {}", record.len())).into());
        }
        let mu = parse_number(&record[1], origin, line, 2)?;
        let sigma2 = parse_number(&record[2], origin, line, 3)?;
        table.labels.push(record[0].to_owned());
        table.models.push(GaussianModel::new(mu, sigma2)?);
    }
    Ok(table)
}

/// Row label derived from a file name: its stem with separators replaced.
pub fn label_for(path: &Path) -> String {
    let stem = path.file_stem().map_or_else(|| path.to_string_lossy(), |s| s.to_string_lossy());
    stem.chars().map(|c| if c == ',' || c.is_whitespace() || c == '#' { '_' } else { c }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(bars: &[(f64, f64)]) -> Barcode {
        Barcode::normalize(bars.iter().copied()).unwrap()
    }

    #[test]
    fn barcode_examples() {
        assert_eq!(parse_barcode("1 3\n3 4\n", "t", None).unwrap(), bc(&[(1.0, 2.0), (3.0, 1.0)]));
        assert_eq!(parse_barcode("0 0\n", "t", None).unwrap(), Barcode::empty());
        assert_eq!(parse_barcode("0 inf\n", "t", Some(10.0)).unwrap(), bc(&[(0.0, 10.0)]));
        assert_eq!(parse_barcode("# c\n\n  2 4 # tail\n", "t", None).unwrap(), bc(&[(2.0, 2.0)]));
    }

    #[test]
    fn barcode_errors() {
        assert!(matches!(parse_barcode("0 inf\n", "t", None), Err(Error::UncappedInfinity { line: 1, .. })));
        let err = |text: &str| match parse_barcode(text, "t", None) {
            Err(Error::Parse(p)) => (p.line, p.column),
            other => panic!("{other:?}"),
        };
        assert_eq!(err("1 2\n1 x\n"), (2, 3));
        assert_eq!(err("1 2 3\n"), (1, 5));
        assert_eq!(err("\n  5\n"), (2, 4));
        assert_eq!(err("3 1\n"), (1, 3));
        assert_eq!(err("-1 1\n"), (1, 1));
        assert_eq!(err("1 nan\n"), (1, 3));
    }

    #[test]
    fn csv_matrix() {
        let m = parse_distance_csv("# hi\n0,1,3\n1,0,2\n3,2,0\n", "t").unwrap();
        assert_eq!(m.get(0, 2), 3.0);
        let asym = parse_distance_csv("0,1\n1.5,0\n", "t");
        assert!(matches!(asym, Err(Error::Asymmetry { deviation, .. }) if deviation == 0.5));
        match parse_distance_csv("0,1\n1,zero\n", "t") {
            Err(Error::Parse(p)) => assert_eq!((p.line, p.column), (2, 2)),
            other => panic!("{other:?}"),
        }
        assert!(parse_distance_csv("0,1\n1\n", "t").is_err());
        assert!(parse_distance_csv("0,1,2\n1,0,2\n", "t").is_err());
    }

    #[test]
    fn phylip_lower_triangle() {
        let (names, m) = parse_phylip("3\na\nb 1\nc 3 2\n", "t").unwrap();
        assert_eq!(names, ["a", "b", "c"]);
        assert_eq!(m.entries(), &[0.0, 1.0, 3.0, 1.0, 0.0, 2.0, 3.0, 2.0, 0.0]);
        let (_, with_diag) = parse_phylip("3\na 0\nb 1 0\nc 3 2 0\n", "t").unwrap();
        assert_eq!(with_diag, m);
        assert!(parse_phylip("3\na\nb 1\n", "t").is_err());
        assert!(parse_phylip("2\na\nb 1 2\n", "t").is_err());
    }

    #[test]
    fn float_formatting_round_trips() {
        for v in [0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 1e-300, 12345.678, 2.5e17, f64::MAX, f64::MIN_POSITIVE] {
            let s = fmt_f64(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), (v + 0.0).to_bits(), "{s}");
        }
        assert_eq!(fmt_f64(3.0), "3");
        assert_eq!(fmt_f64(-0.0), "0");
    }

    #[test]
    fn labels_are_csv_safe() {
        assert_eq!(label_for(Path::new("dir/a b,c.txt")), "a_b_c");
    }
}
