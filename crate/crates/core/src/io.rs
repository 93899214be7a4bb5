//! On-disk formats: enumeration cache files and CSV tables of sampled
//! vectors.
//!
//! A cache file is plain text. The first line is a header
//! `osplpp-enumeration version=1 kind=syt n=4 count=16`, followed by one
//! record per line in enumeration order: a staircase tableau in its
//! row-major text form (`1,2,4/3,5/6`) or a sorting network as its swap
//! word (`1,2,1`).

use std::fmt;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{count_syt, enumerate_syt, StandardTableau, YoungDiagram};
use crate::sortnet::{enumerate_sorting_networks, SortingNetwork};

/// Bumped whenever the record layout or the enumeration order changes.
pub const CACHE_VERSION: u32 = 1;

const MAGIC: &str = "osplpp-enumeration";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EnumerationKind {
    Syt,
    Networks,
}

impl fmt::Display for EnumerationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EnumerationKind::Syt => "syt",
            EnumerationKind::Networks => "networks",
        })
    }
}

impl FromStr for EnumerationKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "syt" => Ok(EnumerationKind::Syt),
            "networks" => Ok(EnumerationKind::Networks),
            other => Err(Error::Parse(format!("enumeration kind {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheHeader {
    pub version: u32,
    pub kind: EnumerationKind,
    pub order: usize,
    pub count: u64,
}

impl fmt::Display for CacheHeader {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{MAGIC} version={} kind={} n={} count={}", self.version, self.kind, self.order, self.count)
    }
}

impl FromStr for CacheHeader {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("cache header {line:?}"));
        let mut parts = line.split_whitespace();
        if parts.next() != Some(MAGIC) {
            return Err(bad());
        }
        let (mut version, mut kind, mut order, mut count) = (None, None, None, None);
        for p in parts {
            let (key, value) = p.split_once('=').ok_or_else(bad)?;
            match key {
                "version" => version = value.parse().ok(),
                "kind" => kind = value.parse().ok(),
                "n" => order = value.parse().ok(),
                "count" => count = value.parse().ok(),
                _ => return Err(bad()),
            }
        }
        Ok(CacheHeader {
            version: version.ok_or_else(bad)?,
            kind: kind.ok_or_else(bad)?,
            order: order.ok_or_else(bad)?,
            count: count.ok_or_else(bad)?,
        })
    }
}

/// Number of staircase tableaux (equivalently sorting networks) of order `n`.
pub fn expected_count(n: usize) -> Result<u64> {
    let c = count_syt(&YoungDiagram::staircase(n)?);
    u64::try_from(c).map_err(|_| Error::SizeCap(format!("count {c} at order {n}")))
}

/// Writes the full enumeration of order `n` (at most 6) and returns the
/// number of records.
pub fn write_enumeration<W: Write>(w: W, kind: EnumerationKind, n: usize) -> Result<u64> {
    crate::error::check_range("order", n, 2, 6)?;
    let count = expected_count(n)?;
    let mut w = BufWriter::new(w);
    writeln!(w, "{}", CacheHeader { version: CACHE_VERSION, kind, order: n, count })?;
    let mut written = 0u64;
    match kind {
        EnumerationKind::Syt => {
            for t in enumerate_syt(&YoungDiagram::staircase(n)?) {
                writeln!(w, "{t}")?;
                written += 1;
            }
        }
        EnumerationKind::Networks => {
            for s in enumerate_sorting_networks(n) {
                writeln!(w, "{s}")?;
                written += 1;
            }
        }
    }
    w.flush()?;
    if written != count {
        return Err(Error::Io(format!("enumerated {written} records, expected {count}")));
    }
    Ok(written)
}

/// Header and raw record lines of a cache file.
pub fn read_cache_lines<R: Read>(r: R) -> Result<(CacheHeader, Vec<String>)> {
    let mut lines = BufReader::new(r).lines();
    let first = lines.next().ok_or(Error::EmptyInput("cache file"))??;
    let header: CacheHeader = first.parse()?;
    let records = lines.collect::<std::io::Result<Vec<_>>>()?;
    Ok((header, records))
}

pub fn parse_syt_records(lines: &[String]) -> Result<Vec<StandardTableau>> {
    lines.iter().map(|l| StandardTableau::parse(l)).collect()
}

pub fn parse_network_records(lines: &[String]) -> Result<Vec<SortingNetwork>> {
    lines.iter().map(|l| l.parse()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CacheStatus {
    Created,
    Reused,
    /// An existing file was rejected and rewritten, for the given reason.
    Rebuilt(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheOutcome {
    pub path: PathBuf,
    pub header: CacheHeader,
    pub status: CacheStatus,
}

pub fn cache_path(dir: &Path, kind: EnumerationKind, n: usize) -> PathBuf {
    dir.join(format!("{kind}-n{n}.txt"))
}

/// Why an existing cache file cannot be reused, if it cannot.
fn stale_reason(path: &Path, kind: EnumerationKind, n: usize) -> Result<Option<String>> {
    let (header, records) = match read_cache_lines(fs::File::open(path)?) {
        Ok(x) => x,
        Err(e) => return Ok(Some(e.to_string())),
    };
    let expected = expected_count(n)?;
    Ok(if header.version != CACHE_VERSION {
        Some(format!("version {} != {CACHE_VERSION}", header.version))
    } else if header.kind != kind || header.order != n {
        Some(format!("header describes {} n={}", header.kind, header.order))
    } else if header.count != expected {
        Some(format!("header count {} != {expected}", header.count))
    } else if records.len() as u64 != header.count {
        Some(format!("{} records under a count header of {}", records.len(), header.count))
    } else {
        None
    })
}

/// Makes sure `dir` holds a valid cache file for `(kind, n)`: an existing
/// file is reused only if its version, header and record count all check
/// out, otherwise it is enumerated again.
pub fn ensure_enumeration(dir: &Path, kind: EnumerationKind, n: usize) -> Result<CacheOutcome> {
    crate::error::check_range("order", n, 2, 6)?;
    fs::create_dir_all(dir)?;
    let path = cache_path(dir, kind, n);
    let status = if path.exists() {
        match stale_reason(&path, kind, n)? {
            None => CacheStatus::Reused,
            Some(reason) => CacheStatus::Rebuilt(reason),
        }
    } else {
        CacheStatus::Created
    };
    if status != CacheStatus::Reused {
        // Write beside the target and rename, so an interrupted run never
        // leaves a truncated file behind a valid header.
        let tmp = path.with_extension("tmp");
        write_enumeration(fs::File::create(&tmp)?, kind, n)?;
        fs::rename(&tmp, &path)?;
    }
    let header = CacheHeader { version: CACHE_VERSION, kind, order: n, count: expected_count(n)? };
    Ok(CacheOutcome { path, header, status })
}

/// One CSV row: a replica's coordinate vector and its maximum. `vector`
/// names the quantity (`U`, `V` or `W`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorRow {
    pub replica: u64,
    pub vector: String,
    pub coords: Vec<f64>,
    pub max: f64,
}

impl VectorRow {
    pub fn new(replica: u64, vector: impl Into<String>, coords: Vec<f64>) -> Self {
        let max = coords.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self { replica, vector: vector.into(), coords, max }
    }
}

/// Round-trip float format: 17 significant digits.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(e.to_string())
}

/// Writes rows with header `replica,vector,c1,...,cd,max`. All rows must
/// have the same dimension.
pub fn write_vectors_csv<W: Write>(w: W, rows: &[VectorRow]) -> Result<()> {
    let dim = rows.first().map_or(0, |r| r.coords.len());
    if rows.iter().any(|r| r.coords.len() != dim) {
        return Err(Error::Parse("rows of different dimension".into()));
    }
    let mut out = csv::Writer::from_writer(w);
    let mut header = vec!["replica".to_string(), "vector".to_string()];
    header.extend((1..=dim).map(|k| format!("c{k}")));
    header.push("max".into());
    out.write_record(&header).map_err(csv_error)?;
    for r in rows {
        let mut rec = vec![r.replica.to_string(), r.vector.clone()];
        rec.extend(r.coords.iter().map(|&x| format_float(x)));
        rec.push(format_float(r.max));
        out.write_record(&rec).map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

pub fn read_vectors_csv<R: Read>(r: R) -> Result<Vec<VectorRow>> {
    let mut input = csv::Reader::from_reader(r);
    let header = input.headers().map_err(csv_error)?.clone();
    let cols: Vec<&str> = header.iter().collect();
    let dim = cols.len().saturating_sub(3);
    let schema_ok = cols.len() >= 3
        && cols[0] == "replica"
        && cols[1] == "vector"
        && cols[cols.len() - 1] == "max"
        && (1..=dim).all(|k| cols[k + 1] == format!("c{k}"));
    if !schema_ok {
        return Err(Error::Parse(format!("unexpected CSV header {cols:?}")));
    }
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("{s:?}: {e}")));
    input
        .records()
        .map(|rec| {
            let rec = rec.map_err(csv_error)?;
            let replica = rec[0].trim().parse::<u64>().map_err(|e| Error::Parse(format!("replica: {e}")))?;
            let coords = (0..dim).map(|k| num(&rec[k + 2])).collect::<Result<Vec<_>>>()?;
            Ok(VectorRow { replica, vector: rec[1].to_string(), coords, max: num(&rec[dim + 2])? })
        })
        .collect()
}

/// Writes a numeric table (for example `point,value,error` rows of a
/// density evaluation) with the given header.
pub fn write_table_csv<W: Write>(w: W, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    if rows.iter().any(|r| r.len() != header.len()) {
        return Err(Error::Parse("row length differs from header".into()));
    }
    let mut out = csv::Writer::from_writer(w);
    out.write_record(header).map_err(csv_error)?;
    for r in rows {
        out.write_record(r.iter().map(|&x| format_float(x))).map_err(csv_error)?;
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_round_trip() {
        let h = CacheHeader { version: 1, kind: EnumerationKind::Networks, order: 5, count: 768 };
        assert_eq!(h.to_string(), "osplpp-enumeration version=1 kind=networks n=5 count=768");
        assert_eq!(h.to_string().parse::<CacheHeader>().unwrap(), h);
        assert!("osplpp-enumeration version=1 kind=syt n=4".parse::<CacheHeader>().is_err());
        assert!("other version=1 kind=syt n=4 count=16".parse::<CacheHeader>().is_err());
    }

    #[test]
    fn enumeration_round_trip() {
        let mut buf = Vec::new();
        assert_eq!(write_enumeration(&mut buf, EnumerationKind::Syt, 4).unwrap(), 16);
        let (h, lines) = read_cache_lines(&buf[..]).unwrap();
        assert_eq!((h.count, lines.len()), (16, 16));
        let ts = parse_syt_records(&lines).unwrap();
        assert_eq!(ts, enumerate_syt(&YoungDiagram::staircase(4).unwrap()).collect::<Vec<_>>());

        let mut buf = Vec::new();
        write_enumeration(&mut buf, EnumerationKind::Networks, 2).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "osplpp-enumeration version=1 kind=networks n=2 count=1\n1\n");
        assert!(write_enumeration(Vec::new(), EnumerationKind::Syt, 7).is_err());
    }

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 1e-300, 123456.789, f64::MIN_POSITIVE] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn vectors_csv_round_trip() {
        let rows = vec![VectorRow::new(0, "V", vec![0.25, 1.0 / 7.0]), VectorRow::new(1, "W", vec![2.0, 0.5])];
        let mut buf = Vec::new();
        write_vectors_csv(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("replica,vector,c1,c2,max\n0,V,2.5000000000000000e-1,"));
        assert_eq!(read_vectors_csv(&buf[..]).unwrap(), rows);
        assert!(read_vectors_csv("a,b\n1,2\n".as_bytes()).is_err());
        assert!(write_vectors_csv(Vec::new(), &[VectorRow::new(0, "V", vec![1.0]), VectorRow::new(1, "V", vec![])]).is_err());
    }
}
