//! On-disk persistence of the factorial and Stirling caches.
//!
//! Each cache is one file: the 4-byte magic `GLAB`, a kind byte, a
//! little-endian `u64` entry count, then every integer as a little-endian
//! `u32` byte length followed by that many two's-complement little-endian
//! bytes. Stirling files count rows and store row `n` as `n + 1` integers.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use num_bigint::BigInt;

use crate::sequence::Engine;
use crate::stirling::{StirlingKind, StirlingTable};
use crate::valuation::Integer;

/// Environment variable naming the cache directory.
pub const CACHE_DIR_VAR: &str = "GLAB_CACHE_DIR";

const MAGIC: &[u8; 4] = b"GLAB";
const KIND_FACTORIALS: u8 = 0;
const KIND_FIRST: u8 = 1;
const KIND_SECOND: u8 = 2;

const FACTORIALS_FILE: &str = "factorials.bin";
const FIRST_FILE: &str = "stirling_first.bin";
const SECOND_FILE: &str = "stirling_second.bin";

fn invalid(msg: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.to_string())
}

fn write_header<W: Write>(w: &mut W, kind: u8, count: u64) -> io::Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&[kind])?;
    w.write_all(&count.to_le_bytes())
}

fn write_int<W: Write>(w: &mut W, v: &Integer) -> io::Result<()> {
    let bytes = v.to_signed_bytes_le();
    let len = u32::try_from(bytes.len()).map_err(|_| invalid("integer too large"))?;
    w.write_all(&len.to_le_bytes())?;
    w.write_all(&bytes)
}

fn read_header<R: Read>(r: &mut R, kind: u8) -> io::Result<u64> {
    let mut head = [0u8; 13];
    r.read_exact(&mut head)?;
    if &head[..4] != MAGIC || head[4] != kind {
        return Err(invalid("bad cache header"));
    }
    Ok(u64::from_le_bytes(head[5..].try_into().unwrap()))
}

fn read_int<R: Read>(r: &mut R) -> io::Result<Integer> {
    let mut len = [0u8; 4];
    r.read_exact(&mut len)?;
    let mut bytes = vec![0u8; u32::from_le_bytes(len) as usize];
    r.read_exact(&mut bytes)?;
    Ok(BigInt::from_signed_bytes_le(&bytes))
}

fn expect_eof<R: Read>(r: &mut R) -> io::Result<()> {
    let mut extra = [0u8; 1];
    match r.read(&mut extra)? {
        0 => Ok(()),
        _ => Err(invalid("trailing bytes in cache file")),
    }
}

pub fn encode_factorials<W: Write>(mut w: W, values: &[Integer]) -> io::Result<()> {
    write_header(&mut w, KIND_FACTORIALS, values.len() as u64)?;
    values.iter().try_for_each(|v| write_int(&mut w, v))
}

pub fn decode_factorials<R: Read>(mut r: R) -> io::Result<Vec<Integer>> {
    let count = read_header(&mut r, KIND_FACTORIALS)?;
    let values = (0..count).map(|_| read_int(&mut r)).collect::<io::Result<_>>()?;
    expect_eof(&mut r)?;
    Ok(values)
}

fn kind_byte(kind: StirlingKind) -> u8 {
    match kind {
        StirlingKind::FirstSigned => KIND_FIRST,
        StirlingKind::Second => KIND_SECOND,
    }
}

pub fn encode_stirling<W: Write>(mut w: W, table: &StirlingTable) -> io::Result<()> {
    write_header(&mut w, kind_byte(table.kind()), table.rows().len() as u64)?;
    table
        .rows()
        .iter()
        .flatten()
        .try_for_each(|v| write_int(&mut w, v))
}

/// Decodes and re-validates a table against its recurrence.
pub fn decode_stirling<R: Read>(mut r: R, kind: StirlingKind) -> io::Result<StirlingTable> {
    let count = read_header(&mut r, kind_byte(kind))?;
    let mut rows = Vec::new();
    for n in 0..count {
        let row = (0..=n).map(|_| read_int(&mut r)).collect::<io::Result<_>>()?;
        rows.push(row);
    }
    expect_eof(&mut r)?;
    StirlingTable::from_rows(kind, rows).map_err(|e| invalid(&e.to_string()))
}

/// Loads whatever valid caches exist in `dir`. Missing or corrupt files fall
/// back to empty caches.
pub fn load_engine(dir: &Path) -> Engine {
    let factorials = fs::File::open(dir.join(FACTORIALS_FILE))
        .and_then(|f| decode_factorials(io::BufReader::new(f)))
        .unwrap_or_else(|_| vec![Integer::from(1)]);
    let table = |file: &str, kind| {
        fs::File::open(dir.join(file))
            .and_then(|f| decode_stirling(io::BufReader::new(f), kind))
            .unwrap_or_else(|_| StirlingTable::new(kind))
    };
    let first = table(FIRST_FILE, StirlingKind::FirstSigned);
    let second = table(SECOND_FILE, StirlingKind::Second);
    Engine::with_caches(factorials, first, second).unwrap_or_default()
}

/// Writes the engine's caches into `dir`, creating it if needed. Each file is
/// written to a temporary name and renamed into place.
pub fn save_engine(dir: &Path, engine: &Engine) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let put = |name: &str, encode: &dyn Fn(&mut io::BufWriter<fs::File>) -> io::Result<()>| {
        let tmp = dir.join(format!("{name}.tmp"));
        let mut w = io::BufWriter::new(fs::File::create(&tmp)?);
        encode(&mut w)?;
        w.flush()?;
        drop(w);
        fs::rename(&tmp, dir.join(name))
    };
    put(FACTORIALS_FILE, &|w| encode_factorials(w, engine.cached_factorials()))?;
    put(FIRST_FILE, &|w| encode_stirling(w, engine.first_table()))?;
    put(SECOND_FILE, &|w| encode_stirling(w, engine.second_table()))
}
