//! Executable checks of the identities relating `a_n`, Stirling numbers,
//! Genocchi numbers and 2-adic valuations, plus the scan for primes `p > 2`
//! where `v_p(sum p^k/k) >= s_p(n)` breaks.
//!
//! Each verifier returns a dense [`VerificationReport`] with one record per
//! `n` in ascending order. Failures are recorded, never raised.

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::report::{Record, Value, VerificationReport};
use crate::sequence::{Engine, GenocchiRoute};
use crate::stirling::{StirlingKind, StirlingTable};
use crate::valuation::{
    binomial_row, digit_sum, floor_log2, lcm_binomial_row, lcm_range, vp_int, vp_rat, Integer,
    Prime, Rational,
};

fn fail_record(n: u64) -> Record {
    Record::new(n)
}

/// `sum_{k=0}^{n} 1/C(n,k) = ((n+1)/2^{n+1}) sum_{k=1}^{n+1} 2^k/k`.
pub fn verify_rockett(n_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new("rockett", 0, n_max);
    let mut power_sum = Rational::zero();
    let mut pow = Integer::one();
    for n in 0..=n_max {
        // extend sum_{k=1}^{n+1} 2^k/k by one term
        pow <<= 1;
        power_sum += Rational::new(pow.clone(), Integer::from(n + 1));
        let lhs: Rational = binomial_row(n)
            .into_iter()
            .map(|c| Rational::new(Integer::one(), c))
            .sum();
        let rhs = Rational::new(Integer::from(n + 1), Integer::one() << (n + 1)) * &power_sum;
        report.records.push(Record::equality(n, lhs, rhs));
    }
    report
}

/// `a_n = (-1)^{n-1} sum_{k=0}^{n} G_k s(n,k)`, with `G_k` from the Stirling
/// double sum.
pub fn verify_corollary_eqq5(engine: &mut Engine, n_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new("eqq5", 0, n_max);
    let top = n_max as usize;
    engine.ensure_stirling(top);
    let genocchi: Vec<Integer> = (0..=top)
        .map(|k| engine.genocchi(k, GenocchiRoute::StirlingIdentity))
        .collect::<Result<_>>()
        .expect("the Stirling route is infallible");
    for n in 0..=top {
        let row = &engine.first_table().rows()[n];
        let sum: Integer = genocchi[..=n].iter().zip(row).map(|(g, s)| g * s).sum();
        // (-1)^{n-1} is -1 for even n, including n = 0
        let rhs = if n % 2 == 0 { -sum } else { sum };
        let lhs = engine.a_direct(n);
        report.records.push(Record::equality(n as u64, lhs, rhs));
    }
    report
}

/// Compares the three Genocchi routes: `lhs` is the Stirling double sum, `rhs`
/// the Bernoulli scaling and `alt` the Seidel route.
pub fn verify_theorem1(engine: &mut Engine, n_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new("theorem1", 0, n_max);
    for n in 0..=n_max {
        let values: Vec<Result<Integer>> = GenocchiRoute::ALL
            .iter()
            .map(|&r| engine.genocchi(n as usize, r))
            .collect();
        let record = match values.as_slice() {
            [Ok(a), Ok(b), Ok(c)] => Record {
                n,
                lhs: Some(a.clone().into()),
                rhs: Some(b.clone().into()),
                alt: Some(c.clone().into()),
                pass: a == b && b == c,
                ..Record::default()
            },
            _ => {
                let pick = |v: &Result<Integer>| v.as_ref().ok().cloned().map(Value::Int);
                Record {
                    n,
                    lhs: pick(&values[0]),
                    rhs: pick(&values[1]),
                    alt: pick(&values[2]),
                    pass: false,
                    ..Record::default()
                }
            }
        };
        report.records.push(record);
    }
    report
}

/// Round-trips `v` through the two Stirling transforms in both orders.
///
/// `lhs` is `v_n`; `rhs` is `v_n` recovered by applying the first-kind
/// transform and then the second-kind transform; `alt` is recovered in the
/// opposite order.
pub fn verify_inversion(v: &[Integer]) -> Result<VerificationReport> {
    if v.is_empty() {
        return domain("inversion needs at least v_0");
    }
    let n_max = v.len() - 1;
    let first = StirlingTable::with_rows(StirlingKind::FirstSigned, n_max);
    let second = StirlingTable::with_rows(StirlingKind::Second, n_max);
    let transform = |table: &StirlingTable, seq: &[Integer]| -> Vec<Integer> {
        (0..seq.len())
            .map(|n| {
                table.rows()[n]
                    .iter()
                    .zip(seq)
                    .map(|(c, x)| c * x)
                    .sum()
            })
            .collect()
    };
    let forward = transform(&second, &transform(&first, v));
    let reverse = transform(&first, &transform(&second, v));
    let mut report = VerificationReport::new("inversion", 0, n_max as u64);
    for n in 0..=n_max {
        report.records.push(Record {
            n: n as u64,
            lhs: Some(v[n].clone().into()),
            rhs: Some(forward[n].clone().into()),
            alt: Some(reverse[n].clone().into()),
            pass: forward[n] == v[n] && reverse[n] == v[n],
            ..Record::default()
        });
    }
    Ok(report)
}

/// `v_2(sum_{k=1}^{n} 2^k/k)` against `s_2(n)` and `n - floor(log2 n)`.
///
/// `lhs` holds the valuation, `slack` the valuation minus the larger bound.
pub fn verify_theorem2(n_max: u64) -> Result<VerificationReport> {
    if n_max < 1 {
        return domain("theorem2 needs n_max >= 1");
    }
    let two = Prime::TWO;
    let mut report = VerificationReport::new("theorem2", 1, n_max);
    let mut sum = Rational::zero();
    let mut pow = Integer::one();
    for n in 1..=n_max {
        pow <<= 1;
        sum += Rational::new(pow.clone(), Integer::from(n));
        let big_n = Integer::from(n);
        let bound1 = digit_sum(&big_n, two)?;
        let bound2 = Integer::from(n - floor_log2(&big_n)?);
        let record = match vp_rat(&sum, two) {
            Ok(v) => {
                let v = Integer::from(v);
                let pass = v >= bound1 && v >= bound2;
                let slack = &v - (&bound1).max(&bound2);
                Record {
                    n,
                    lhs: Some(v.into()),
                    bound1: Some(bound1),
                    bound2: Some(bound2),
                    slack: Some(slack),
                    pass,
                    ..Record::default()
                }
            }
            Err(_) => Record {
                bound1: Some(bound1),
                bound2: Some(bound2),
                ..fail_record(n)
            },
        };
        report.records.push(record);
    }
    Ok(report)
}

/// Side-by-side values of the two lower bounds on `v_2(sum 2^k/k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundComparison {
    pub n: u64,
    pub digit_bound: u64,
    pub log_bound: u64,
}

impl BoundComparison {
    pub fn log_bound_dominates(&self) -> bool {
        self.log_bound >= self.digit_bound
    }
}

pub fn compare_bounds(n_max: u64) -> Vec<BoundComparison> {
    (1..=n_max)
        .map(|n| BoundComparison {
            n,
            digit_bound: u64::from(n.count_ones()),
            log_bound: n - u64::from(n.ilog2()),
        })
        .collect()
}

/// An `n` where `v_p(sum_{k=1}^{n} p^k/k) < s_p(n)`, or where the valuation is
/// undefined because the sum vanished.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub n: u64,
    pub valuation: Option<i64>,
    pub digit_sum: Integer,
}

impl Counterexample {
    pub fn to_record(&self) -> Record {
        Record {
            n: self.n,
            lhs: self.valuation.map(Value::from),
            rhs: Some(self.digit_sum.clone().into()),
            slack: self.valuation.map(|v| Integer::from(v) - &self.digit_sum),
            pass: false,
            ..Record::default()
        }
    }
}

/// `v_p(sum_{k=1}^{n} p^k/k) >= s_p(n)` for every `1 <= n <= n_max`.
///
/// Holds for `p = 2`; fails for odd primes. `lhs` is the valuation, `bound1`
/// the digit sum and `slack` their difference. A vanishing sum is recorded as
/// a failure with no valuation.
pub fn verify_digit_bound(p: Prime, n_max: u64) -> Result<VerificationReport> {
    if n_max < 1 {
        return domain("digit-bound needs n_max >= 1");
    }
    let mut report = VerificationReport::new("digit-bound", 1, n_max);
    report.p = Some(p);
    let base = p.to_integer();
    let mut sum = Rational::zero();
    let mut pow = Integer::one();
    for n in 1..=n_max {
        pow *= &base;
        sum += Rational::new(pow.clone(), Integer::from(n));
        let s = digit_sum(&Integer::from(n), p)?;
        let record = match vp_rat(&sum, p) {
            Ok(v) => {
                let v = Integer::from(v);
                Record {
                    n,
                    lhs: Some(v.clone().into()),
                    bound1: Some(s.clone()),
                    slack: Some(&v - &s),
                    pass: v >= s,
                    ..Record::default()
                }
            }
            Err(_) => Record {
                bound1: Some(s),
                ..fail_record(n)
            },
        };
        report.records.push(record);
    }
    Ok(report)
}

/// Every `n <= n_max` for which the digit-sum bound fails at the odd prime `p`.
pub fn search_open1(p: Prime, n_max: u64) -> Result<Vec<Counterexample>> {
    if p.get() == 2 {
        return domain("the scan is for odd primes");
    }
    if n_max == 0 {
        return Ok(Vec::new());
    }
    let report = verify_digit_bound(p, n_max)?;
    Ok(report
        .failures()
        .map(|r| Counterexample {
            n: r.n,
            valuation: r.lhs.as_ref().map(|v| {
                i64::try_from(v.to_rational().to_integer()).expect("valuation fits in i64")
            }),
            digit_sum: r.bound1.clone().expect("digit sum always recorded"),
        })
        .collect())
}

/// `lcm{C(m,0..=m)} * (m+1) = lcm(1..=m+1)`.
pub fn verify_lcm_identity(m_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new("lcm", 0, m_max);
    for m in 0..=m_max {
        let lhs = lcm_binomial_row(m) * (m + 1);
        let record = match lcm_range(m + 1) {
            Ok(rhs) => Record::equality(m, lhs, rhs),
            Err(_) => Record {
                lhs: Some(lhs.into()),
                ..fail_record(m)
            },
        };
        report.records.push(record);
    }
    report
}

/// `v_p(n!)` as `sum_{i>=1} floor(n/p^i)`, checked against Legendre's digit
/// formula for every `1 <= n <= n_max`.
pub fn verify_legendre(p: Prime, n_max: u64) -> VerificationReport {
    let mut report = VerificationReport::new("legendre", 1, n_max);
    report.p = Some(p);
    let mut fact_val = 0u64;
    for n in 1..=n_max {
        // v_p(n!) = v_p((n-1)!) + v_p(n)
        fact_val += vp_int(&Integer::from(n), p).expect("n >= 1");
        let formula = crate::valuation::legendre_valuation(&Integer::from(n), p);
        let record = match formula {
            Ok(f) => Record::equality(n, Integer::from(fact_val), f),
            Err(_) => fail_record(n),
        };
        report.records.push(record);
    }
    report
}
