use std::env;
use std::io::{self, Write};
use std::path::PathBuf;

use glab_core::cache::{load_engine, save_engine, CACHE_DIR_VAR};
use glab_core::identity::{
    search_open1, verify_corollary_eqq5, verify_digit_bound, verify_inversion, verify_lcm_identity, verify_legendre,
    verify_rockett, verify_theorem1, verify_theorem2,
};
use glab_core::report::{self, Row, Table, Value};
use glab_core::stirling::check_orthogonality_with;
use glab_core::{Engine, GenocchiRoute, Integer, Prime, VerificationReport};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Format, Kind, SeqName};

pub enum Outcome {
    Success,
    /// Verification failure or consistency error.
    Failed(Option<String>),
    Usage(String),
}

impl From<io::Error> for Outcome {
    fn from(e: io::Error) -> Self {
        Outcome::Failed(Some(e.to_string()))
    }
}

/// Bounds of the random integers fed to `verify inversion`.
const INVERSION_RANGE: std::ops::RangeInclusive<i64> = -1_000_000..=1_000_000;

/// An engine plus the optional cache directory it was loaded from.
pub struct Session {
    engine: Engine,
    cache_dir: Option<PathBuf>,
}

fn emit_table(table: &Table, format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Plain => table.write_plain(out),
        Format::Csv => table.write_csv(out),
        Format::Jsonl => table.write_jsonl(out),
    }
}

fn emit_rows(rows: &[Row], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Plain => report::write_plain(out, rows),
        Format::Csv => report::write_csv(out, rows),
        Format::Jsonl => report::write_jsonl(out, rows),
    }
}

fn usize_index(n: u64) -> Result<usize, Outcome> {
    usize::try_from(n).map_err(|_| Outcome::Usage(format!("{n} is too large")))
}

impl Session {
    pub fn open() -> Self {
        let cache_dir = env::var_os(CACHE_DIR_VAR).map(PathBuf::from);
        let engine = match &cache_dir {
            Some(dir) => load_engine(dir),
            None => Engine::new(),
        };
        Session { engine, cache_dir }
    }

    pub fn close(self) {
        if let Some(dir) = &self.cache_dir {
            if let Err(e) = save_engine(dir, &self.engine) {
                eprintln!("warning: could not write cache to {}: {e}", dir.display());
            }
        }
    }

    pub fn seq(
        &mut self,
        name: SeqName,
        n_max: u64,
        route: Option<&str>,
        format: Format,
        out: &mut dyn Write,
    ) -> Outcome {
        let route = match (name, route) {
            (_, None) => None,
            (SeqName::Genocchi, Some(r)) => match r.parse::<GenocchiRoute>() {
                Ok(r) => Some(r),
                Err(e) => return Outcome::Usage(e.to_string()),
            },
            (_, Some(_)) => return Outcome::Usage("--route only applies to genocchi".into()),
        };
        let n_max = match usize_index(n_max) {
            Ok(n) => n,
            Err(o) => return o,
        };
        match self.seq_table(name, n_max, route) {
            Ok((table, agree)) => match emit_table(&table, format, out) {
                Ok(()) if agree => Outcome::Success,
                Ok(()) => Outcome::Failed(Some("Genocchi routes disagree".into())),
                Err(e) => e.into(),
            },
            Err(e) => Outcome::Failed(Some(e.to_string())),
        }
    }

    fn seq_table(
        &mut self,
        name: SeqName,
        n_max: usize,
        route: Option<GenocchiRoute>,
    ) -> glab_core::Result<(Table, bool)> {
        let e = &mut self.engine;
        let mut agree_all = true;
        let table = match (name, route) {
            (SeqName::A, _) => {
                let mut t = Table::new(["n", "a"]);
                for n in 0..=n_max {
                    t.push(vec![n.to_string(), e.a_direct(n).to_string()]);
                }
                t
            }
            (SeqName::Bernoulli, _) => {
                let mut t = Table::new(["n", "bernoulli"]);
                for n in 0..=n_max {
                    t.push(vec![n.to_string(), Value::from(e.bernoulli(n)).to_string()]);
                }
                t
            }
            (SeqName::Genocchi, Some(route)) => {
                let mut t = Table::new(["n".to_string(), route.name().to_string()]);
                for n in 0..=n_max {
                    t.push(vec![n.to_string(), e.genocchi(n, route)?.to_string()]);
                }
                t
            }
            (SeqName::Genocchi, None) => {
                let mut header = vec!["n".to_string()];
                header.extend(GenocchiRoute::ALL.iter().map(|r| r.name().to_string()));
                header.push("agree".into());
                let mut t = Table::new(header);
                for n in 0..=n_max {
                    let values = GenocchiRoute::ALL
                        .iter()
                        .map(|&r| e.genocchi(n, r))
                        .collect::<glab_core::Result<Vec<Integer>>>()?;
                    let agree = values.windows(2).all(|w| w[0] == w[1]);
                    agree_all &= agree;
                    let mut row = vec![n.to_string()];
                    row.extend(values.iter().map(Integer::to_string));
                    row.push(if agree { "agree" } else { "disagree" }.into());
                    t.push(row);
                }
                t
            }
        };
        Ok((table, agree_all))
    }

    pub fn stirling(&mut self, kind: Kind, n_max: u64, format: Format, out: &mut dyn Write) -> Outcome {
        let n_max = match usize_index(n_max) {
            Ok(n) => n,
            Err(o) => return o,
        };
        self.engine.ensure_stirling(n_max);
        let table = match kind {
            Kind::First => self.engine.first_table(),
            Kind::Second => self.engine.second_table(),
        };
        let rows = &table.rows()[..=n_max];
        let result = match format {
            Format::Jsonl => rows.iter().enumerate().try_for_each(|(n, row)| {
                let row: Vec<String> = row.iter().map(Integer::to_string).collect();
                writeln!(out, "{{\"n\":{n},\"row\":{}}}", serde_row(&row))
            }),
            _ => {
                let mut header = vec!["n".to_string()];
                header.extend((0..=n_max).map(|k| k.to_string()));
                let mut t = Table::new(header);
                for (n, row) in rows.iter().enumerate() {
                    let mut cells = vec![n.to_string()];
                    cells.extend(row.iter().map(Integer::to_string));
                    t.push(cells);
                }
                emit_table(&t, format, out)
            }
        };
        match result {
            Ok(()) => Outcome::Success,
            Err(e) => e.into(),
        }
    }

    #[allow(clippy::too_many_arguments)]
    pub fn verify(
        &mut self,
        identity: &str,
        n_max: Option<u64>,
        m_max: Option<u64>,
        seed: Option<u64>,
        p: Option<u64>,
        format: Format,
        out: &mut dyn Write,
    ) -> Outcome {
        let report = match self.run_verifier(identity, n_max, m_max, seed, p) {
            Ok(r) => r,
            Err(o) => return o,
        };
        if let Err(e) = emit_rows(&report.rows(), format, out) {
            return e.into();
        }
        if report.all_pass() {
            Outcome::Success
        } else {
            let failed = report.failures().count();
            Outcome::Failed(Some(format!("{}: {failed} failing record(s)", report.identity)))
        }
    }

    fn run_verifier(
        &mut self,
        identity: &str,
        n_max: Option<u64>,
        m_max: Option<u64>,
        seed: Option<u64>,
        p: Option<u64>,
    ) -> Result<VerificationReport, Outcome> {
        let need_n = || n_max.ok_or_else(|| Outcome::Usage(format!("verify {identity} needs --n-max")));
        let reject = |flag: &str, set: bool| {
            if set {
                Err(Outcome::Usage(format!("{flag} does not apply to verify {identity}")))
            } else {
                Ok(())
            }
        };
        if identity != "lcm" {
            reject("--m-max", m_max.is_some())?;
        }
        if identity != "inversion" {
            reject("--seed", seed.is_some())?;
        }
        if identity != "legendre" && identity != "digit-bound" {
            reject("--p", p.is_some())?;
        }
        let e = &mut self.engine;
        let report = match identity {
            "rockett" => verify_rockett(need_n()?),
            "eqq5" => verify_corollary_eqq5(e, need_n()?),
            "theorem1" => verify_theorem1(e, need_n()?),
            "theorem2" => verify_theorem2(need_n()?).map_err(|err| Outcome::Usage(err.to_string()))?,
            "lcm" => {
                reject("--n-max", n_max.is_some())?;
                let m = m_max.ok_or_else(|| Outcome::Usage("verify lcm needs --m-max".into()))?;
                verify_lcm_identity(m)
            }
            "orthogonality" => {
                let n = usize_index(need_n()?)?;
                e.ensure_stirling(n);
                check_orthogonality_with(e.first_table(), e.second_table(), n)
            }
            "inversion" => {
                let n = usize_index(need_n()?)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0));
                let v: Vec<Integer> = (0..=n)
                    .map(|_| Integer::from(rng.gen_range(INVERSION_RANGE)))
                    .collect();
                verify_inversion(&v).map_err(|err| Outcome::Usage(err.to_string()))?
            }
            "legendre" | "digit-bound" => {
                let prime = Prime::new(p.unwrap_or(2)).map_err(|err| Outcome::Usage(err.to_string()))?;
                let n = need_n()?;
                if n < 1 {
                    return Err(Outcome::Usage(format!("verify {identity} needs --n-max >= 1")));
                }
                if identity == "legendre" {
                    verify_legendre(prime, n)
                } else {
                    verify_digit_bound(prime, n).map_err(|err| Outcome::Usage(err.to_string()))?
                }
            }
            other => return Err(Outcome::Usage(format!("unknown identity {other:?}"))),
        };
        Ok(report)
    }

    pub fn search_open1(&mut self, p: u64, n_max: u64, format: Format, out: &mut dyn Write) -> Outcome {
        let prime = match Prime::new(p) {
            Ok(prime) if prime.get() > 2 => prime,
            Ok(_) => return Outcome::Usage("search-open1 needs an odd prime".into()),
            Err(e) => return Outcome::Usage(e.to_string()),
        };
        let hits = match search_open1(prime, n_max) {
            Ok(h) => h,
            Err(e) => return Outcome::Usage(e.to_string()),
        };
        let identity = format!("open1-p{prime}");
        let rows: Vec<Row> = hits.iter().map(|h| h.to_record().to_row(&identity)).collect();
        match emit_rows(&rows, format, out) {
            Ok(()) => Outcome::Success,
            Err(e) => e.into(),
        }
    }
}

fn serde_row(row: &[String]) -> String {
    let cells: Vec<String> = row.iter().map(|c| format!("\"{c}\"")).collect();
    format!("[{}]", cells.join(","))
}
