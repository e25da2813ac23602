//! Brute-force oracles, kept independent of the library's own algorithms.

#![allow(dead_code)]

use glab_core::{Integer, Rational};
use num_traits::{One, Zero};

/// `v_p(n!)` as `sum_{i>=1} floor(n / p^i)`.
pub fn floor_sum_legendre(n: u64, p: u64) -> u64 {
    let mut total = 0;
    let mut pk = p;
    while pk <= n {
        total += n / pk;
        match pk.checked_mul(p) {
            Some(next) => pk = next,
            None => break,
        }
    }
    total
}

pub fn digit_sum_divmod(mut n: u64, p: u64) -> u64 {
    let mut s = 0;
    while n > 0 {
        s += n % p;
        n /= p;
    }
    s
}

/// Counts set partitions of `{0..n}` by number of blocks, by enumerating
/// restricted growth strings.
pub fn partitions_by_blocks(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    if n == 0 {
        counts[0] = 1;
        return counts;
    }
    let mut rgs = vec![0usize; n];
    loop {
        let blocks = rgs.iter().max().unwrap() + 1;
        counts[blocks] += 1;
        // next restricted growth string
        let mut i = n - 1;
        loop {
            let prefix_max = rgs[..i].iter().copied().max().unwrap_or(0);
            if i > 0 && rgs[i] <= prefix_max {
                rgs[i] += 1;
                for x in &mut rgs[i + 1..] {
                    *x = 0;
                }
                break;
            }
            if i <= 1 {
                return counts;
            }
            i -= 1;
        }
    }
}

/// Counts permutations of `n` points by number of cycles (unsigned `|s(n,k)|`),
/// by enumerating all permutations.
pub fn permutations_by_cycles(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let mut seen = vec![false; n];
        let mut cycles = 0;
        for start in 0..n {
            if !seen[start] {
                cycles += 1;
                let mut j = start;
                while !seen[j] {
                    seen[j] = true;
                    j = perm[j];
                }
            }
        }
        counts[cycles] += 1;
        // lexicographic next permutation
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else {
            return counts;
        };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).unwrap();
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
}

pub fn factorial_u128(n: u32) -> u128 {
    (1..=n as u128).product()
}

pub fn a_u128(n: u32) -> u128 {
    (0..n)
        .map(|k| factorial_u128(k) * factorial_u128(n - k - 1))
        .sum()
}

/// Bernoulli numbers by the Akiyama-Tanigawa transform, which produces the
/// `B_1 = +1/2` convention; the sign of `B_1` is flipped on return.
pub fn bernoulli_akiyama_tanigawa(n_max: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(n_max + 1);
    let mut a: Vec<Rational> = Vec::with_capacity(n_max + 1);
    for m in 0..=n_max {
        a.push(Rational::new(Integer::one(), Integer::from(m + 1)));
        for j in (1..=m).rev() {
            a[j - 1] = Rational::from_integer(Integer::from(j)) * (&a[j - 1] - &a[j]);
        }
        out.push(a[0].clone());
    }
    if n_max >= 1 {
        out[1] = -out[1].clone();
    }
    out
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Evaluates `sum c_k X^k` at an integer point.
pub fn eval_poly(coeffs: &[Integer], x: i64) -> Integer {
    coeffs
        .iter()
        .rev()
        .fold(Integer::zero(), |acc, c| acc * x + c)
}
