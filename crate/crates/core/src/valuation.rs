//! Integer and rational conventions plus the p-adic and lcm primitives.
//!
//! Everything here is a pure function of its arguments.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{consistency, domain, Error, Result};

/// Signed arbitrary-precision integer.
pub type Integer = BigInt;

/// Reduced fraction with a strictly positive denominator.
pub type Rational = BigRational;

/// A prime below 2^64, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub const TWO: Prime = Prime(2);

    pub fn new(value: u64) -> Result<Self> {
        if is_prime_u64(value) {
            Ok(Prime(value))
        } else {
            Err(Error::NotPrime(value.to_string()))
        }
    }

    pub fn from_integer(value: &Integer) -> Result<Self> {
        match value.to_u64() {
            Some(v) => Prime::new(v),
            None => Err(Error::NotPrime(value.to_string())),
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn to_integer(self) -> Integer {
        Integer::from(self.0)
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin. The first twelve prime bases are a complete
/// witness set for every 64-bit input.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Sum of the base-`p` digits of `n`.
pub fn digit_sum(n: &Integer, p: Prime) -> Result<Integer> {
    if n.is_negative() {
        return domain(format!("digit sum of negative integer {n}"));
    }
    let base = p.to_integer();
    let mut rest = n.clone();
    let mut sum = Integer::zero();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(&base);
        sum += r;
        rest = q;
    }
    Ok(sum)
}

/// Exponent of `p` in `|n|`. Zero is rejected rather than mapped to infinity.
pub fn vp_int(n: &Integer, p: Prime) -> Result<u64> {
    if n.is_zero() {
        return domain("p-adic valuation of 0 is infinite");
    }
    if p.get() == 2 {
        return Ok(n.trailing_zeros().unwrap_or(0));
    }
    let base = p.to_integer();
    let mut rest = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = rest.div_rem(&base);
        if !r.is_zero() {
            return Ok(e);
        }
        rest = q;
        e += 1;
    }
}

/// `vp_int(numerator) - vp_int(denominator)`; negative when `p` divides the
/// denominator.
pub fn vp_rat(q: &Rational, p: Prime) -> Result<i64> {
    if q.is_zero() {
        return domain("p-adic valuation of 0 is infinite");
    }
    let num = vp_int(q.numer(), p)? as i64;
    let den = vp_int(q.denom(), p)? as i64;
    Ok(num - den)
}

/// Exponent of `p` in `n!`, as `(n - s_p(n)) / (p - 1)`.
pub fn legendre_valuation(n: &Integer, p: Prime) -> Result<Integer> {
    if n < &Integer::one() {
        return domain(format!("Legendre's formula needs n >= 1, got {n}"));
    }
    let diff = n - digit_sum(n, p)?;
    let (q, r) = diff.div_rem(&Integer::from(p.get() - 1));
    if !r.is_zero() {
        return consistency(format!("n - s_p(n) not divisible by p - 1 for n = {n}, p = {p}"));
    }
    Ok(q)
}

/// `floor(log2 n)` for `n >= 1`, computed as bit length minus one.
pub fn floor_log2(n: &Integer) -> Result<u64> {
    if n.sign() != Sign::Plus {
        return domain(format!("floor(log2 n) needs n >= 1, got {n}"));
    }
    Ok(n.bits() - 1)
}

/// `lcm(1, 2, ..., m)` as the product of the largest prime powers `<= m`.
pub fn lcm_range(m: u64) -> Result<Integer> {
    if m < 1 {
        return domain("lcm_range needs m >= 1");
    }
    let mut acc = Integer::one();
    for p in primes_up_to(m) {
        let mut pk = p;
        while let Some(next) = pk.checked_mul(p).filter(|&n| n <= m) {
            pk = next;
        }
        acc *= pk;
    }
    Ok(acc)
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(m: u64) -> Vec<u64> {
    let m = m as usize;
    let mut composite = vec![false; m + 1];
    let mut primes = Vec::new();
    for i in 2..=m {
        if composite[i] {
            continue;
        }
        primes.push(i as u64);
        let mut j = i * i;
        while j <= m {
            composite[j] = true;
            j += i;
        }
    }
    primes
}

/// Row `m` of Pascal's triangle.
pub fn binomial_row(m: u64) -> Vec<Integer> {
    let mut row = Vec::with_capacity(m as usize + 1);
    let mut c = Integer::one();
    row.push(c.clone());
    for k in 0..m {
        c = c * (m - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

pub fn binomial(n: u64, k: u64) -> Integer {
    if k > n {
        return Integer::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(Integer::one(), |c, i| c * (n - i) / (i + 1))
}

/// `lcm{C(m,0), ..., C(m,m)}` by folding over the binomial row.
pub fn lcm_binomial_row(m: u64) -> Integer {
    binomial_row(m)
        .iter()
        .fold(Integer::one(), |acc, c| acc.lcm(c))
}

/// `lcm(1..=m+1) / (m+1)`, the closed form of [`lcm_binomial_row`].
pub fn lcm_binomial_row_closed_form(m: u64) -> Result<Integer> {
    let l = lcm_range(m + 1)?;
    let (q, r) = l.div_rem(&Integer::from(m + 1));
    if !r.is_zero() {
        return consistency(format!("lcm(1..={}) not divisible by {}", m + 1, m + 1));
    }
    Ok(q)
}
