//! Signed Stirling numbers of the first kind and Stirling numbers of the
//! second kind, stored as lazily grown triangles.

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::report::{Record, VerificationReport};
use crate::valuation::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StirlingKind {
    /// `s(n, k)`, the signed coefficients of the falling factorial.
    FirstSigned,
    /// `S(n, k)`.
    Second,
}

/// Rows `0..=N` of one Stirling triangle. `rows[n]` has `n + 1` entries.
///
/// Growth happens a whole row at a time through `&mut self`; once filled, a
/// table can be shared read-only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    kind: StirlingKind,
    rows: Vec<Vec<Integer>>,
}

impl StirlingTable {
    pub fn new(kind: StirlingKind) -> Self {
        StirlingTable {
            kind,
            rows: vec![vec![Integer::one()]],
        }
    }

    pub fn with_rows(kind: StirlingKind, n_max: usize) -> Self {
        let mut t = StirlingTable::new(kind);
        t.ensure(n_max);
        t
    }

    /// Rebuilds a table from stored rows, rejecting anything that does not
    /// satisfy the defining recurrence.
    pub fn from_rows(kind: StirlingKind, rows: Vec<Vec<Integer>>) -> Result<Self> {
        let check = StirlingTable::with_rows(kind, rows.len().saturating_sub(1));
        if rows.is_empty() || check.rows != rows {
            return domain("stored Stirling rows do not satisfy the recurrence");
        }
        Ok(check)
    }

    pub fn kind(&self) -> StirlingKind {
        self.kind
    }

    /// Largest materialized row index.
    pub fn max_row(&self) -> usize {
        self.rows.len() - 1
    }

    pub fn rows(&self) -> &[Vec<Integer>] {
        &self.rows
    }

    /// Materializes rows up to and including `n`.
    pub fn ensure(&mut self, n: usize) {
        while self.rows.len() <= n {
            let m = self.rows.len() - 1;
            let prev = &self.rows[m];
            let mut next = Vec::with_capacity(m + 2);
            next.push(Integer::zero());
            for k in 1..=m + 1 {
                let left = &prev[k - 1];
                let up = prev.get(k).cloned().unwrap_or_default();
                next.push(match self.kind {
                    // s(m+1, k) = s(m, k-1) - m s(m, k)
                    StirlingKind::FirstSigned => left - up * m,
                    // S(m+1, k) = S(m, k-1) + k S(m, k)
                    StirlingKind::Second => left + up * k,
                });
            }
            self.rows.push(next);
        }
    }

    /// Entry `(n, k)` if row `n` is already materialized.
    pub fn get(&self, n: usize, k: usize) -> Option<&Integer> {
        self.rows.get(n).and_then(|row| row.get(k))
    }

    /// Entry `(n, k)`, growing the table as needed.
    pub fn entry(&mut self, n: usize, k: usize) -> Result<&Integer> {
        if k > n {
            return domain(format!("Stirling index k = {k} exceeds n = {n}"));
        }
        self.ensure(n);
        Ok(&self.rows[n][k])
    }

    pub fn row(&mut self, n: usize) -> &[Integer] {
        self.ensure(n);
        &self.rows[n]
    }
}

/// Coefficients of `X^0..=X^n` in `X (X - 1) ... (X - n + 1)`, by repeated
/// polynomial multiplication.
pub fn falling_factorial_coeffs(n: usize) -> Vec<Integer> {
    let mut poly = vec![Integer::one()];
    for j in 0..n {
        // poly *= (X - j)
        let mut next = vec![Integer::zero(); poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * j;
        }
        poly = next;
    }
    poly
}

/// Checks both orders of the mutual-inverse relation between the two
/// triangles for every `0 <= k <= n <= n_max`.
///
/// One record per pair: `lhs` is `sum s(n,i) S(i,k)`, `alt` is
/// `sum S(n,i) s(i,k)`, `rhs` is the Kronecker delta.
pub fn check_orthogonality(n_max: usize) -> VerificationReport {
    let first = StirlingTable::with_rows(StirlingKind::FirstSigned, n_max);
    let second = StirlingTable::with_rows(StirlingKind::Second, n_max);
    check_orthogonality_with(&first, &second, n_max)
}

pub fn check_orthogonality_with(
    first: &StirlingTable,
    second: &StirlingTable,
    n_max: usize,
) -> VerificationReport {
    assert!(first.max_row() >= n_max && second.max_row() >= n_max);
    let s = |n: usize, k: usize| &first.rows[n][k];
    let big_s = |n: usize, k: usize| &second.rows[n][k];
    let mut report = VerificationReport::new("orthogonality", 0, n_max as u64);
    for n in 0..=n_max {
        for k in 0..=n {
            let fs: Integer = (k..=n).map(|i| s(n, i) * big_s(i, k)).sum();
            let sf: Integer = (k..=n).map(|i| big_s(n, i) * s(i, k)).sum();
            let delta = Integer::from(u8::from(n == k));
            let pass = fs == delta && sf == delta;
            report.records.push(Record {
                n: n as u64,
                k: Some(k as u64),
                lhs: Some(fs.into()),
                rhs: Some(delta.into()),
                alt: Some(sf.into()),
                pass,
                ..Record::default()
            });
        }
    }
    report
}
