//! Verification reports and their CSV / JSON-lines / plain-text encodings.

use std::fmt;
use std::io::{self, Read, Write};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::valuation::{Integer, Prime, Rational};

/// An exact value stored in a report: either an integer or a reduced fraction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(Integer),
    Rat(Rational),
}

impl Value {
    /// Integers compare equal to rationals with denominator one.
    pub fn to_rational(&self) -> Rational {
        match self {
            Value::Int(i) => Rational::from_integer(i.clone()),
            Value::Rat(r) => r.clone(),
        }
    }
}

impl From<Integer> for Value {
    fn from(v: Integer) -> Self {
        Value::Int(v)
    }
}

/// Whole rationals collapse to `Int` so the printed form parses back to the
/// same variant.
impl From<Rational> for Value {
    fn from(v: Rational) -> Self {
        if v.denom().is_one() {
            Value::Int(v.to_integer())
        } else {
            Value::Rat(v)
        }
    }
}

impl From<i64> for Value {
    fn from(v: i64) -> Self {
        Value::Int(Integer::from(v))
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseValueError(String);

impl fmt::Display for ParseValueError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid exact value {:?}", self.0)
    }
}

impl std::error::Error for ParseValueError {}

impl FromStr for Value {
    type Err = ParseValueError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseValueError(s.to_string());
        match s.split_once('/') {
            None => s.parse::<BigInt>().map(Value::Int).map_err(|_| bad()),
            Some((n, d)) => {
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d <= BigInt::from(0) {
                    return Err(bad());
                }
                Ok(Value::from(BigRational::new(n, d)))
            }
        }
    }
}

/// One line of a verification report.
///
/// `k` is set for identities indexed by a pair (orthogonality). `alt` holds a
/// third route's value where three computations are compared. Bounds and slack
/// are only used by the valuation checks.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Record {
    pub n: u64,
    pub k: Option<u64>,
    pub lhs: Option<Value>,
    pub rhs: Option<Value>,
    pub alt: Option<Value>,
    pub bound1: Option<Integer>,
    pub bound2: Option<Integer>,
    pub slack: Option<Integer>,
    pub pass: bool,
}

impl Record {
    pub fn new(n: u64) -> Self {
        Record {
            n,
            ..Record::default()
        }
    }

    pub fn equality(n: u64, lhs: impl Into<Value>, rhs: impl Into<Value>) -> Self {
        let lhs = Value::from(lhs.into().to_rational());
        let rhs = Value::from(rhs.into().to_rational());
        let pass = lhs.to_rational() == rhs.to_rational();
        Record {
            n,
            lhs: Some(lhs),
            rhs: Some(rhs),
            pass,
            ..Record::default()
        }
    }

    pub fn to_row(&self, identity: &str) -> Row {
        let s = |v: &Option<Value>| v.as_ref().map(Value::to_string);
        let i = |v: &Option<Integer>| v.as_ref().map(Integer::to_string);
        Row {
            identity: identity.to_string(),
            n: self.n,
            k: self.k,
            lhs: s(&self.lhs),
            rhs: s(&self.rhs),
            alt: s(&self.alt),
            bound1: i(&self.bound1),
            bound2: i(&self.bound2),
            slack: i(&self.slack),
            pass: self.pass,
        }
    }
}

/// Flat serialized form of a [`Record`]. Exact values travel as decimal
/// strings so that no consumer ever rounds them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub identity: String,
    pub n: u64,
    pub k: Option<u64>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub alt: Option<String>,
    pub bound1: Option<String>,
    pub bound2: Option<String>,
    pub slack: Option<String>,
    pub pass: bool,
}

impl Row {
    pub fn to_record(&self) -> Result<Record, ParseValueError> {
        fn val(v: &Option<String>) -> Result<Option<Value>, ParseValueError> {
            v.as_deref().map(str::parse).transpose()
        }
        fn int(v: &Option<String>) -> Result<Option<Integer>, ParseValueError> {
            v.as_deref()
                .map(|s| s.parse::<Integer>().map_err(|_| ParseValueError(s.to_string())))
                .transpose()
        }
        Ok(Record {
            n: self.n,
            k: self.k,
            lhs: val(&self.lhs)?,
            rhs: val(&self.rhs)?,
            alt: val(&self.alt)?,
            bound1: int(&self.bound1)?,
            bound2: int(&self.bound2)?,
            slack: int(&self.slack)?,
            pass: self.pass,
        })
    }
}

pub const CSV_HEADER: [&str; 10] = [
    "identity", "n", "k", "lhs", "rhs", "alt", "bound1", "bound2", "slack", "pass",
];

/// Result of running one identity over an inclusive range of `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub identity: String,
    pub n_min: u64,
    pub n_max: u64,
    pub p: Option<Prime>,
    pub records: Vec<Record>,
}

impl VerificationReport {
    pub fn new(identity: impl Into<String>, n_min: u64, n_max: u64) -> Self {
        VerificationReport {
            identity: identity.into(),
            n_min,
            n_max,
            p: None,
            records: Vec::new(),
        }
    }

    pub fn all_pass(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    /// True when every `n` in `n_min..=n_max` has at least one record and no
    /// record falls outside that range.
    pub fn covers_range(&self) -> bool {
        if self.n_min > self.n_max {
            return self.records.is_empty();
        }
        let mut expected = self.n_min;
        for r in &self.records {
            if r.n == expected {
                expected += 1;
            } else if r.n + 1 != expected {
                return false;
            }
        }
        expected == self.n_max + 1
    }

    pub fn rows(&self) -> Vec<Row> {
        self.records.iter().map(|r| r.to_row(&self.identity)).collect()
    }
}

pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> io::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}

pub fn read_csv<R: Read>(input: R) -> csv::Result<Vec<Row>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

pub fn write_jsonl<W: Write>(mut out: W, rows: &[Row]) -> io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut out, row)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl<R: io::BufRead>(input: R) -> io::Result<Vec<Row>> {
    input
        .lines()
        .filter(|l| !matches!(l, Ok(s) if s.is_empty()))
        .map(|l| Ok(serde_json::from_str(&l?)?))
        .collect()
}

/// Human-aligned table. Columns that are empty in every row are dropped.
pub fn write_plain<W: Write>(out: W, rows: &[Row]) -> io::Result<()> {
    let mut table = Table::new(CSV_HEADER);
    for r in rows {
        let o = |v: &Option<String>| v.clone().unwrap_or_default();
        table.push(vec![
            r.identity.clone(),
            r.n.to_string(),
            r.k.map(|k| k.to_string()).unwrap_or_default(),
            o(&r.lhs),
            o(&r.rhs),
            o(&r.alt),
            o(&r.bound1),
            o(&r.bound2),
            o(&r.slack),
            if r.pass { "pass" } else { "FAIL" }.to_string(),
        ]);
    }
    table.write_plain(out)
}

/// A rectangular table of preformatted cells with a header row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    /// Appends a row, padding short rows with empty cells.
    pub fn push(&mut self, mut row: Vec<String>) {
        assert!(row.len() <= self.header.len(), "row wider than header");
        row.resize(self.header.len(), String::new());
        self.rows.push(row);
    }

    /// Right-aligned columns separated by two spaces. Columns whose body
    /// cells are all empty are skipped.
    pub fn write_plain<W: Write>(&self, mut out: W) -> io::Result<()> {
        let keep: Vec<usize> = (0..self.header.len())
            .filter(|&c| self.rows.is_empty() || self.rows.iter().any(|r| !r[c].is_empty()))
            .collect();
        let widths: Vec<usize> = keep
            .iter()
            .map(|&c| {
                self.rows
                    .iter()
                    .map(|r| r[c].len())
                    .chain(std::iter::once(self.header[c].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |row: &[String]| {
            keep.iter()
                .zip(&widths)
                .map(|(&c, &w)| format!("{:>w$}", row[c]))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        writeln!(out, "{}", line(&self.header))?;
        for row in &self.rows {
            writeln!(out, "{}", line(row))?;
        }
        Ok(())
    }

    pub fn write_csv<W: Write>(&self, out: W) -> io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()
    }

    /// One JSON object per row with the header as keys, in header order.
    /// Empty cells become `null`; every other cell is a string.
    pub fn write_jsonl<W: Write>(&self, mut out: W) -> io::Result<()> {
        for row in &self.rows {
            let fields: Vec<String> = self
                .header
                .iter()
                .zip(row)
                .map(|(k, v)| {
                    let v = if v.is_empty() {
                        serde_json::Value::Null
                    } else {
                        serde_json::Value::String(v.clone())
                    };
                    format!("{}:{}", serde_json::Value::String(k.clone()), v)
                })
                .collect();
            writeln!(out, "{{{}}}", fields.join(","))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_spelling() {
        let r = Value::Rat(Rational::new(Integer::from(-691), Integer::from(2730)));
        assert_eq!(r.to_string(), "-691/2730");
        assert_eq!("-691/2730".parse::<Value>().unwrap(), r);
        assert_eq!("12".parse::<Value>().unwrap(), Value::from(12));
        assert!("1/0".parse::<Value>().is_err());
        assert!("1/-2".parse::<Value>().is_err());
        assert!("x".parse::<Value>().is_err());
    }

    #[test]
    fn equality_records_compare_across_kinds() {
        let rec = Record::equality(3, Integer::from(5), Rational::from_integer(Integer::from(5)));
        assert!(rec.pass);
        let rec = Record::equality(3, Integer::from(5), Rational::new(5.into(), 2.into()));
        assert!(!rec.pass);
    }

    #[test]
    fn coverage() {
        let mut rep = VerificationReport::new("x", 1, 3);
        assert!(!rep.covers_range());
        for n in 1..=3 {
            rep.records.push(Record::new(n));
            rep.records.push(Record::new(n));
        }
        assert!(rep.covers_range());
        rep.records.push(Record::new(5));
        assert!(!rep.covers_range());
    }

    #[test]
    fn csv_has_fixed_header() {
        let mut rec = Record::equality(0, 1, 1);
        rec.k = Some(0);
        let mut buf = Vec::new();
        write_csv(&mut buf, &[rec.to_row("rockett")]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "identity,n,k,lhs,rhs,alt,bound1,bound2,slack,pass\nrockett,0,0,1,1,,,,,true\n"
        );
    }

    #[test]
    fn plain_drops_empty_columns() {
        let rows = vec![Record::equality(0, 1, 1).to_row("lcm")];
        let mut buf = Vec::new();
        write_plain(&mut buf, &rows).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "identity  n  lhs  rhs  pass\n     lcm  0    1    1  pass\n");
    }

    #[test]
    fn table_formats() {
        let mut t = Table::new(["n", "value"]);
        t.push(vec!["0".into(), "-1/2".into()]);
        t.push(vec!["10".into()]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,value\n0,-1/2\n10,\n");
        let mut buf = Vec::new();
        t.write_jsonl(&mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "{\"n\":\"0\",\"value\":\"-1/2\"}\n{\"n\":\"10\",\"value\":null}\n"
        );
        let mut buf = Vec::new();
        t.write_plain(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), " n  value\n 0   -1/2\n10\n");
    }
}
