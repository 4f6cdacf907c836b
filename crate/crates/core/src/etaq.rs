//! Eta quotients `∏_{δ|N} η^{r_δ}(δz)`: cusp orders, the Ligozat criterion
//! and the nebentypus character.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::arith::Rational;
use crate::characters::DirichletChar;
use crate::error::{Error, Result};

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EtaQuotient {
    level: u64,
    /// One entry per divisor of `level`, zeros included.
    exponents: BTreeMap<u64, i64>,
}

impl EtaQuotient {
    /// Exponents listed for the divisors of `level` in ascending order.
    pub fn new(level: u64, exponents: &[i64]) -> Result<Self> {
        if level == 0 {
            return Err(Error::InvalidEtaQuotient("level must be positive".into()));
        }
        let divs = divisors(level);
        if divs.len() != exponents.len() {
            return Err(Error::InvalidEtaQuotient(format!(
                "level {level} has {} divisors, got {} exponents",
                divs.len(),
                exponents.len()
            )));
        }
        if exponents.iter().all(|&r| r == 0) {
            return Err(Error::InvalidEtaQuotient("all exponents are zero".into()));
        }
        Ok(EtaQuotient { level, exponents: divs.into_iter().zip(exponents.iter().copied()).collect() })
    }

    /// Level-24 quotient from the exponents at `1, 2, 3, 4, 6, 8, 12, 24`.
    pub fn level24(exponents: [i64; 8]) -> Result<Self> {
        Self::new(24, &exponents)
    }

    /// Build from `(δ, r_δ)` pairs; divisors not mentioned get exponent 0.
    pub fn from_pairs(level: u64, pairs: &[(u64, i64)]) -> Result<Self> {
        let mut exps: BTreeMap<u64, i64> = divisors(level).into_iter().map(|d| (d, 0)).collect();
        for &(d, r) in pairs {
            match exps.get_mut(&d) {
                Some(slot) => *slot += r,
                None => {
                    return Err(Error::InvalidEtaQuotient(format!("{d} does not divide {level}")))
                }
            }
        }
        let list: Vec<i64> = exps.values().copied().collect();
        Self::new(level, &list)
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponent(&self, delta: u64) -> i64 {
        self.exponents.get(&delta).copied().unwrap_or(0)
    }

    /// `(δ, r_δ)` for every divisor, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = (u64, i64)> + '_ {
        self.exponents.iter().map(|(&d, &r)| (d, r))
    }

    pub fn exponent_list(&self) -> Vec<i64> {
        self.exponents.values().copied().collect()
    }

    /// `k = ½ Σ r_δ`.
    pub fn weight(&self) -> Rational {
        Rational::new(self.exponents.values().sum::<i64>(), 2).expect("nonzero denominator")
    }

    /// Order at infinity in grade-24 units, `Σ δ r_δ`.
    pub fn grade24_valuation(&self) -> i64 {
        self.exponents().map(|(d, r)| d as i64 * r).sum()
    }

    /// The same function viewed at a multiple of the level.
    pub fn lift(&self, level: u64) -> Result<Self> {
        if level == 0 || !level.is_multiple_of(self.level) {
            return Err(Error::InvalidEtaQuotient(format!(
                "cannot lift level {} to {level}",
                self.level
            )));
        }
        let pairs: Vec<(u64, i64)> = self.exponents().collect();
        Self::from_pairs(level, &pairs)
    }

    /// Product of two quotients at the lcm of their levels.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let level = self.level.lcm(&other.level);
        let pairs: Vec<(u64, i64)> = self.exponents().chain(other.exponents()).collect();
        Self::from_pairs(level, &pairs)
    }
}

impl fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eta{}[", self.level)?;
        for (i, r) in self.exponents.values().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for EtaQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for EtaQuotient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected etaN[r1,...,rd], got {s:?}"));
        let body = s.trim().strip_prefix("eta").ok_or_else(bad)?;
        let (level, rest) = body.split_once('[').ok_or_else(bad)?;
        let list = rest.strip_suffix(']').ok_or_else(bad)?;
        let level: u64 = level.trim().parse().map_err(|_| bad())?;
        let exps = list
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        EtaQuotient::new(level, &exps)
    }
}

impl Serialize for EtaQuotient {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The cusp `a/c` with `gcd(a, c) = 1`, `c > 0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cusp {
    a: i64,
    c: u64,
}

impl Cusp {
    pub fn new(a: i64, c: u64) -> Result<Self> {
        if c == 0 || a.unsigned_abs().gcd(&c) != 1 {
            return Err(Error::Parse(format!("{a}/{c} is not a reduced cusp")));
        }
        Ok(Cusp { a, c })
    }

    /// `1/c`.
    pub fn unit(c: u64) -> Self {
        Cusp { a: 1, c: c.max(1) }
    }

    pub fn numerator(self) -> i64 {
        self.a
    }

    pub fn denominator(self) -> u64 {
        self.c
    }

    /// One representative `1/c` per divisor `c` of `level`.
    pub fn representatives(level: u64) -> Vec<Cusp> {
        divisors(level).into_iter().map(Cusp::unit).collect()
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.c)
    }
}

impl fmt::Debug for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Cusp {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `v_{a/c}(f) = N/(24 gcd(c²,N)) Σ gcd(δ,c)² r_δ/δ`.
pub fn cusp_order(f: &EtaQuotient, cusp: Cusp) -> Rational {
    let n = f.level as i64;
    let c = cusp.c as i64;
    let sum: Rational = f
        .exponents()
        .filter(|&(_, r)| r != 0)
        .map(|(d, r)| {
            let g = (d as i64).gcd(&c);
            Rational::new(g * g * r, d as i64).expect("nonzero denominator")
        })
        .sum();
    let g = (c * c).gcd(&n);
    sum * Rational::new(n, 24 * g).expect("nonzero denominator")
}

/// Squarefree part of `|∏ δ^{r_δ}|`, i.e. the product of primes occurring to
/// an odd power.
fn squarefree_part(f: &EtaQuotient) -> u64 {
    let mut parity: BTreeMap<u64, i64> = BTreeMap::new();
    for (d, r) in f.exponents() {
        let mut m = d;
        let mut p = 2;
        while m > 1 {
            while m % p == 0 {
                *parity.entry(p).or_default() += r;
                m /= p;
            }
            p += 1;
        }
    }
    parity.into_iter().filter(|&(_, e)| e.rem_euclid(2) == 1).map(|(p, _)| p).product()
}

/// Nebentypus of an integer-weight eta quotient, as the Kronecker character
/// `((-1)^k s / ·)` with `s = ∏ δ^{r_δ}` reduced to its squarefree part and
/// written as a fundamental discriminant.
pub fn character_of(f: &EtaQuotient) -> Result<DirichletChar> {
    let weight = f.weight();
    let k = weight
        .to_integer()
        .ok_or_else(|| Error::NonIntegralWeight(format!("{f} has weight {weight}")))?;
    let s = squarefree_part(f) as i64;
    let x = if k.is_odd() { -s } else { s };
    let disc = if x.rem_euclid(4) == 1 { x } else { 4 * x };
    DirichletChar::new(disc)
}

/// Outcome of the Ligozat criterion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModularityReport {
    pub weight: Rational,
    pub l1_ok: bool,
    pub l2_ok: bool,
    pub l4_ok: bool,
    /// Orders at `1/c` for each divisor `c` of the level.
    pub cusp_orders: Vec<(Cusp, Rational)>,
    pub is_holomorphic: bool,
    pub is_cusp: bool,
    pub character: Option<DirichletChar>,
}

impl ModularityReport {
    pub fn character_discriminant(&self) -> Option<i64> {
        self.character.map(DirichletChar::discriminant)
    }

    pub fn order_at(&self, c: u64) -> Option<&Rational> {
        self.cusp_orders.iter().find(|(cusp, _)| cusp.denominator() == c).map(|(_, v)| v)
    }
}

/// Evaluate L1 through L4 and the cusp-form strengthening.
pub fn ligozat_check(f: &EtaQuotient) -> ModularityReport {
    let n = f.level as i64;
    let l1_ok = f.grade24_valuation().rem_euclid(24) == 0;
    let l2_ok = f.exponents().map(|(d, r)| (n / d as i64) * r).sum::<i64>().rem_euclid(24) == 0;
    let weight = f.weight();
    let l4_ok = weight.is_integer() && !weight.is_negative() && !weight.is_zero();
    let cusp_orders: Vec<(Cusp, Rational)> =
        Cusp::representatives(f.level).into_iter().map(|c| (c, cusp_order(f, c))).collect();
    let all_nonneg = cusp_orders.iter().all(|(_, v)| !v.is_negative());
    let all_pos = cusp_orders.iter().all(|(_, v)| !v.is_negative() && !v.is_zero());
    let is_holomorphic = l1_ok && l2_ok && l4_ok && all_nonneg;
    let character = if weight.is_integer() { character_of(f).ok() } else { None };
    ModularityReport {
        weight,
        l1_ok,
        l2_ok,
        l4_ok,
        cusp_orders,
        is_holomorphic,
        is_cusp: is_holomorphic && all_pos,
        character,
    }
}
