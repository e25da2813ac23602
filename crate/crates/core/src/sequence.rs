//! The sequence `a_n = sum_{k<n} k! (n-k-1)!`, Bernoulli and Genocchi
//! numbers, each reachable by more than one route, and the generating
//! functions used to cross-check them.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

use crate::error::{consistency, domain, Error, Result};
use crate::series::SeriesPoly;
use crate::stirling::{StirlingKind, StirlingTable};
use crate::valuation::{binomial_row, Integer, Prime, Rational};

/// How a Genocchi number is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenocchiRoute {
    /// Double sum of factorials against Stirling numbers of the second kind.
    StirlingIdentity,
    /// `2 (1 - 2^n) B_n`.
    BernoulliScaling,
    /// Solving `sum_{k=0}^{n} C(n,k) G_{n+k} = 0` for its top term.
    Seidel,
}

impl GenocchiRoute {
    pub const ALL: [GenocchiRoute; 3] = [
        GenocchiRoute::StirlingIdentity,
        GenocchiRoute::BernoulliScaling,
        GenocchiRoute::Seidel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GenocchiRoute::StirlingIdentity => "stirling-identity",
            GenocchiRoute::BernoulliScaling => "bernoulli-scaling",
            GenocchiRoute::Seidel => "seidel",
        }
    }
}

impl fmt::Display for GenocchiRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenocchiRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GenocchiRoute::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown Genocchi route {s:?}")))
    }
}

/// Which generating function [`egf_coefficients`] expands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EgfKind {
    /// `-2 log(1 - x) / (2 - x)`, generating `a_n`.
    A,
    /// `2x / (e^x + 1)`.
    Genocchi,
    /// `x / (e^x - 1)`.
    Bernoulli,
    /// `log^k(1 + x) / k!`, or `log^k(1 - x) / k!` when `negated`.
    LogPower { k: usize, negated: bool },
}

/// Exact expansion of one of the generating functions, truncated at `order`.
pub fn egf_coefficients(which: EgfKind, order: usize) -> Result<SeriesPoly> {
    if order < 1 {
        return domain("series order must be at least 1");
    }
    let two = Rational::from_integer(2.into());
    let half = Rational::new(1.into(), 2.into());
    let series = match which {
        EgfKind::A => {
            let num = SeriesPoly::log1p(order, true).scale(&-two.clone());
            let den = &SeriesPoly::constant(two, order) - &SeriesPoly::x(order);
            &num * &den.reciprocal()?
        }
        EgfKind::Genocchi => {
            let unit = (&SeriesPoly::exp(order) + &SeriesPoly::one(order)).scale(&half);
            unit.reciprocal()?.mul_x()
        }
        EgfKind::Bernoulli => {
            // (e^x - 1)/x is a unit; its reciprocal is x/(e^x - 1).
            let e = SeriesPoly::exp(order + 1);
            (&e - &SeriesPoly::one(order + 1)).div_x()?.reciprocal()?
        }
        EgfKind::LogPower { k, negated } => {
            let kfact: Integer = (1..=k).product();
            SeriesPoly::log1p(order, negated)
                .pow(k)
                .scale(&Rational::new(Integer::one(), kfact))
        }
    };
    Ok(series)
}

/// Reduced `sum_{k=1}^{n} p^k / k`.
pub fn power_over_k_sum(n: u64, p: Prime) -> Result<Rational> {
    if n < 1 {
        return domain("power_over_k_sum needs n >= 1");
    }
    let base = p.to_integer();
    let mut pow = Integer::one();
    let mut sum = Rational::zero();
    for k in 1..=n {
        pow *= &base;
        sum += Rational::new(pow.clone(), Integer::from(k));
    }
    Ok(sum)
}

/// Memoized factorials, Stirling rows, Bernoulli numbers and the Seidel
/// Genocchi prefix. All caches only ever grow.
#[derive(Clone, Debug)]
pub struct Engine {
    factorials: Vec<Integer>,
    first: StirlingTable,
    second: StirlingTable,
    bernoulli: Vec<Rational>,
    seidel: Vec<Integer>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine {
            factorials: vec![Integer::one()],
            first: StirlingTable::new(StirlingKind::FirstSigned),
            second: StirlingTable::new(StirlingKind::Second),
            bernoulli: Vec::new(),
            seidel: Vec::new(),
        }
    }

    /// Builds an engine around previously computed caches. The factorial
    /// list is checked term by term.
    pub fn with_caches(
        factorials: Vec<Integer>,
        first: StirlingTable,
        second: StirlingTable,
    ) -> Result<Self> {
        if first.kind() != StirlingKind::FirstSigned || second.kind() != StirlingKind::Second {
            return domain("Stirling tables passed in the wrong slots");
        }
        let valid = factorials.first().is_some_and(One::is_one)
            && factorials
                .windows(2)
                .enumerate()
                .all(|(i, w)| w[1] == &w[0] * (i + 1));
        if !valid {
            return domain("stored factorials are not 0!, 1!, 2!, ...");
        }
        Ok(Engine {
            factorials,
            first,
            second,
            ..Engine::new()
        })
    }

    pub fn cached_factorials(&self) -> &[Integer] {
        &self.factorials
    }

    pub fn first_table(&self) -> &StirlingTable {
        &self.first
    }

    pub fn second_table(&self) -> &StirlingTable {
        &self.second
    }

    pub fn ensure_stirling(&mut self, n: usize) {
        self.first.ensure(n);
        self.second.ensure(n);
    }

    pub fn factorial(&mut self, n: usize) -> &Integer {
        while self.factorials.len() <= n {
            let i = self.factorials.len();
            let next = &self.factorials[i - 1] * i;
            self.factorials.push(next);
        }
        &self.factorials[n]
    }

    pub fn stirling_first(&mut self, n: usize, k: usize) -> Result<Integer> {
        self.first.entry(n, k).cloned()
    }

    pub fn stirling_second(&mut self, n: usize, k: usize) -> Result<Integer> {
        self.second.entry(n, k).cloned()
    }

    /// `a_0 = 0`, `a_n = sum_{k=0}^{n-1} k! (n-k-1)!`.
    pub fn a_direct(&mut self, n: usize) -> Integer {
        if n == 0 {
            return Integer::zero();
        }
        self.factorial(n);
        let f = &self.factorials;
        (0..n).map(|k| &f[k] * &f[n - k - 1]).sum()
    }

    /// Iterates `a_k = k a_{k-1} / 2 + (k-1)!` from `a_0 = 0`, requiring each
    /// halving to be exact.
    pub fn a_recurrence(&mut self, n: usize) -> Result<Integer> {
        let mut a = Integer::zero();
        let mut fact = Integer::one(); // (k-1)!
        for k in 1..=n {
            let (half, rem) = (&a * k).div_rem(&Integer::from(2));
            if !rem.is_zero() {
                return consistency(format!("k a_(k-1) is odd at k = {k}"));
            }
            a = half + &fact;
            fact *= k;
        }
        Ok(a)
    }

    /// `(n! / 2^n) sum_{k=1}^{n} 2^k / k`, which must reduce to an integer.
    pub fn a_rockett(&mut self, n: usize) -> Result<Integer> {
        if n == 0 {
            return Ok(Integer::zero());
        }
        let sum = power_over_k_sum(n as u64, Prime::TWO)?;
        let scale = Rational::new(self.factorial(n).clone(), Integer::one() << n);
        let value = scale * sum;
        if !value.is_integer() {
            return consistency(format!("(n!/2^n) sum 2^k/k = {value} is not an integer"));
        }
        Ok(value.to_integer())
    }

    /// `B_n` with `B_1 = -1/2`, from `sum_{k=0}^{n} C(n+1,k) B_k = 0`.
    pub fn bernoulli(&mut self, n: usize) -> Rational {
        while self.bernoulli.len() <= n {
            let m = self.bernoulli.len();
            let b = if m == 0 {
                Rational::one()
            } else {
                let row = binomial_row(m as u64 + 1);
                let acc: Rational = self
                    .bernoulli
                    .iter()
                    .zip(&row)
                    .map(|(b, c)| b * Rational::from_integer(c.clone()))
                    .sum();
                -acc / Rational::from_integer(Integer::from(m + 1))
            };
            self.bernoulli.push(b);
        }
        self.bernoulli[n].clone()
    }

    pub fn genocchi(&mut self, n: usize, route: GenocchiRoute) -> Result<Integer> {
        match route {
            GenocchiRoute::StirlingIdentity => Ok(self.genocchi_stirling(n)),
            GenocchiRoute::BernoulliScaling => self.genocchi_bernoulli(n),
            GenocchiRoute::Seidel => self.genocchi_seidel(n),
        }
    }

    /// `sum_{1 <= l <= k <= n} (-1)^{k-1} (l-1)! (k-l)! S(n,k)`.
    fn genocchi_stirling(&mut self, n: usize) -> Integer {
        self.factorial(n);
        self.second.ensure(n);
        let f = &self.factorials;
        let row = &self.second.rows()[n];
        let mut total = Integer::zero();
        for k in 1..=n {
            let inner: Integer = (1..=k).map(|l| &f[l - 1] * &f[k - l]).sum();
            let term = inner * &row[k];
            if k % 2 == 1 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn genocchi_bernoulli(&mut self, n: usize) -> Result<Integer> {
        let factor = Integer::from(2) * (Integer::one() - (Integer::one() << n));
        let value = self.bernoulli(n) * Rational::from_integer(factor);
        if !value.is_integer() {
            return consistency(format!("2(1 - 2^{n}) B_{n} = {value} is not an integer"));
        }
        Ok(value.to_integer())
    }

    /// Seeds `G_0, G_1` from the generating function. An even index `2h` is
    /// the unit-coefficient top term of the relation at `h`. Odd indices never
    /// head a relation of that family, so they come from
    /// `2 G_m = -sum_{k<m} C(m,k) G_k`, with the halving checked.
    fn genocchi_seidel(&mut self, n: usize) -> Result<Integer> {
        if self.seidel.is_empty() {
            for term in egf_coefficients(EgfKind::Genocchi, 2)?.egf_terms() {
                if !term.is_integer() {
                    return consistency("Genocchi seed is not an integer");
                }
                self.seidel.push(term.to_integer());
            }
        }
        while self.seidel.len() <= n {
            let m = self.seidel.len();
            let g = &self.seidel;
            let value = if m.is_multiple_of(2) {
                let h = m / 2;
                let row = binomial_row(h as u64);
                let acc: Integer = (0..h).map(|k| &row[k] * &g[h + k]).sum();
                -acc
            } else {
                let row = binomial_row(m as u64);
                let acc: Integer = (0..m).map(|k| &row[k] * &g[k]).sum();
                let (half, rem) = acc.div_rem(&Integer::from(2));
                if !rem.is_zero() {
                    return consistency(format!("odd sum while solving for G_{m}"));
                }
                -half
            };
            self.seidel.push(value);
        }
        Ok(self.seidel[n].clone())
    }
}

/// True when `q` is in lowest terms with a positive denominator.
pub fn is_reduced(q: &Rational) -> bool {
    q.denom().is_positive() && q.numer().gcd(q.denom()).is_one()
}
