//! Weight-3 Eisenstein series `E_{3,χ,ψ}(tz)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::Rational;
use crate::characters::{gen_bernoulli3, sigma_twisted_scaled, DirichletChar};
use crate::error::{Error, Result};
use crate::qseries::QSeries;

/// `E_{3,χ,ψ}(tz) = c₀ + Σ σ_{(2,χ,ψ)}(n) q^{tn}`, with `c₀ = -B_{3,χ}/6`
/// when `ψ` is trivial and 0 otherwise.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EisensteinSpec {
    chi: DirichletChar,
    psi: DirichletChar,
    t: u64,
}

impl EisensteinSpec {
    pub fn new(chi: DirichletChar, psi: DirichletChar, t: u64) -> Result<Self> {
        if chi.parity() * psi.parity() != -1 {
            return Err(Error::Parity { chi: chi.discriminant(), psi: psi.discriminant() });
        }
        if t == 0 {
            return Err(Error::Parse("Eisenstein scale must be positive".into()));
        }
        Ok(EisensteinSpec { chi, psi, t })
    }

    pub fn chi(&self) -> DirichletChar {
        self.chi
    }

    pub fn psi(&self) -> DirichletChar {
        self.psi
    }

    pub fn scale(&self) -> u64 {
        self.t
    }

    pub fn constant_term(&self) -> Rational {
        if self.psi.is_trivial() {
            -gen_bernoulli3(self.chi) / Rational::from(6)
        } else {
            Rational::zero()
        }
    }

    /// Coefficient of `qⁿ`.
    pub fn coefficient(&self, n: i64) -> Rational {
        if n == 0 {
            self.constant_term()
        } else {
            Rational::from(sigma_twisted_scaled(2, self.chi, self.psi, n, self.t as i64))
        }
    }
}

impl fmt::Display for EisensteinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E3[{},{},{}]", self.chi, self.psi, self.t)
    }
}

impl fmt::Debug for EisensteinSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for EisensteinSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected E3[chi,psi,t], got {s:?}"));
        let body = s
            .trim()
            .strip_prefix("E3[")
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let parts: Vec<&str> = body.split(',').map(str::trim).collect();
        let [chi, psi, t] = parts.as_slice() else {
            return Err(bad());
        };
        let t: u64 = t.parse().map_err(|_| bad())?;
        EisensteinSpec::new(chi.parse()?, psi.parse()?, t)
    }
}

impl Serialize for EisensteinSpec {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Expansion of `spec` through `q^precision`.
pub fn eisenstein3(spec: &EisensteinSpec, precision: usize) -> QSeries<Rational> {
    let coeffs: Vec<Rational> = (0..=precision as i64).map(|n| spec.coefficient(n)).collect();
    QSeries::from_q_coeffs((), &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(chi: i64, psi: i64, t: u64) -> EisensteinSpec {
        EisensteinSpec::new(DirichletChar::new(chi).unwrap(), DirichletChar::new(psi).unwrap(), t).unwrap()
    }

    #[test]
    fn constant_terms() {
        assert_eq!(spec(-4, 1, 1).constant_term(), Rational::new(-1, 4).unwrap());
        assert_eq!(spec(1, -4, 1).constant_term(), Rational::zero());
        assert_eq!(spec(-3, 8, 1).constant_term(), Rational::zero());
        assert_eq!(spec(-24, 1, 1).constant_term(), Rational::from(-23));
    }

    #[test]
    fn first_coefficient_is_one() {
        for (chi, psi) in [(-4, 1), (1, -4), (-3, 1), (1, -3), (-8, 1), (1, -8), (-24, 1), (1, -24), (-3, 8), (8, -3)] {
            let e = eisenstein3(&spec(chi, psi, 1), 5);
            assert_eq!(e.q_coeff(1), Some(Rational::one()));
        }
    }

    #[test]
    fn parity_is_enforced() {
        let err = EisensteinSpec::new(DirichletChar::M4, DirichletChar::M3, 1).unwrap_err();
        assert_eq!(err, Error::Parity { chi: -4, psi: -3 });
        assert!(EisensteinSpec::new(DirichletChar::P8, DirichletChar::TRIVIAL, 1).is_err());
    }

    #[test]
    fn parse_and_display() {
        let s: EisensteinSpec = "E3[-4,1,2]".parse().unwrap();
        assert_eq!(s, spec(-4, 1, 2));
        assert_eq!(s.to_string(), "E3[-4,1,2]");
        assert!("E3[-4,1]".parse::<EisensteinSpec>().is_err());
        assert!("E3[-4,-3,1]".parse::<EisensteinSpec>().is_err());
        assert!("E3[5,1,1]".parse::<EisensteinSpec>().is_err());
    }

    #[test]
    fn scaling() {
        let base = eisenstein3(&spec(1, -3, 1), 40);
        for t in [2u64, 4, 8] {
            let scaled = eisenstein3(&spec(1, -3, t), 40);
            for n in 1..=40i64 {
                let expected = if n % t as i64 == 0 { base.q_coeff(n / t as i64) } else { Some(Rational::zero()) };
                assert_eq!(scaled.q_coeff(n), expected);
            }
        }
    }

    /// Counts of `x₁² + … + x₆² = n` by convolving the one-variable counts.
    fn six_squares(limit: usize) -> Vec<i64> {
        let mut one = vec![0i64; limit + 1];
        for x in -(limit as i64)..=(limit as i64) {
            if ((x * x) as usize) <= limit {
                one[(x * x) as usize] += 1;
            }
        }
        let mut acc = vec![0i64; limit + 1];
        acc[0] = 1;
        for _ in 0..6 {
            let mut next = vec![0i64; limit + 1];
            for (i, a) in acc.iter().enumerate() {
                for (j, b) in one.iter().enumerate().take(limit + 1 - i) {
                    next[i + j] += a * b;
                }
            }
            acc = next;
        }
        acc
    }

    #[test]
    fn six_squares_consistency() {
        let a = eisenstein3(&spec(-4, 1, 1), 50).scale(&Rational::from(-4));
        let b = eisenstein3(&spec(1, -4, 1), 50).scale(&Rational::from(16));
        let sum = &a + &b;
        let counts = six_squares(50);
        for (n, c) in counts.iter().enumerate() {
            assert_eq!(sum.q_coeff(n as i64), Some(Rational::from(*c)), "n = {n}");
        }
    }
}
