//! Diagonal senary quadratic forms with coefficients 1, 2, 3 and 6.

mod fixture;
mod formula;

pub use fixture::{
    column_names, compare_tables, load_tables, parse_tables, render_tables, Discrepancy, TABLES, TABLE_ORDER,
};
pub use formula::{derive_all, derive_formula, rep_count_formula, FormulaEvaluator, FormulaRow};

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arith::Rational;
use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::etaq::EtaQuotient;
use crate::qseries::{eta_quotient_expansion, q_truncation, QSeries};

/// Multiplicities `(l₁, l₂, l₃, l₆)` of the coefficients 1, 2, 3, 6.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ExponentVector([u32; 4]);

impl ExponentVector {
    pub fn new(l1: u32, l2: u32, l3: u32, l6: u32) -> Result<Self> {
        let l = [l1, l2, l3, l6];
        if l.iter().sum::<u32>() != 6 {
            return Err(Error::InvalidExponentVector(l));
        }
        Ok(ExponentVector(l))
    }

    /// All 84 vectors in descending lexicographic order.
    pub fn all() -> Vec<ExponentVector> {
        let mut out = Vec::with_capacity(84);
        for l1 in (0..=6).rev() {
            for l2 in (0..=6 - l1).rev() {
                for l3 in (0..=6 - l1 - l2).rev() {
                    out.push(ExponentVector([l1, l2, l3, 6 - l1 - l2 - l3]));
                }
            }
        }
        out
    }

    pub fn as_array(self) -> [u32; 4] {
        self.0
    }

    /// `∏_{d|6} φ^{l_d}(dz)` as a level-24 eta quotient, using
    /// `φ(z) = η⁵(2z) / (η²(z) η²(4z))`.
    pub fn eta_quotient(self) -> EtaQuotient {
        let [l1, l2, l3, l6] = self.0.map(i64::from);
        EtaQuotient::level24([
            -2 * l1,
            5 * l1 - 2 * l2,
            -2 * l3,
            -2 * l1 + 5 * l2,
            5 * l3 - 2 * l6,
            -2 * l2,
            -2 * l3 + 5 * l6,
            -2 * l6,
        ])
        .expect("weight 3 is nonzero")
    }

    pub fn form(self) -> QuadForm {
        let terms = [1, 2, 3, 6].into_iter().zip(self.0).filter(|&(_, r)| r > 0).collect();
        QuadForm { terms }
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "{a},{b},{c},{d}")
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "l({self})")
    }
}

impl FromStr for ExponentVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<u32>().map_err(|_| Error::Parse(format!("invalid exponent vector {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        let [a, b, c, d] = parts.as_slice() else {
            return Err(Error::Parse(format!("expected four entries, got {s:?}")));
        };
        ExponentVector::new(*a, *b, *c, *d)
    }
}

/// `Σᵢ aᵢ (x²_{i,1} + … + x²_{i,rᵢ})`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadForm {
    /// `(aᵢ, rᵢ)` pairs.
    terms: Vec<(u64, u32)>,
}

impl QuadForm {
    pub fn new(terms: Vec<(u64, u32)>) -> Result<Self> {
        if terms.iter().any(|&(a, _)| a == 0) {
            return Err(Error::InvalidForm("coefficients must be positive".into()));
        }
        if terms.iter().map(|&(_, r)| r).sum::<u32>() == 0 {
            return Err(Error::InvalidForm("form has no variables".into()));
        }
        Ok(QuadForm { terms })
    }

    /// One coefficient per variable, e.g. `[1, 1, 1, 1, 3, 3]`.
    pub fn from_coefficients(coeffs: &[u64]) -> Result<Self> {
        let mut terms: Vec<(u64, u32)> = Vec::new();
        for &a in coeffs {
            match terms.iter_mut().find(|(b, _)| *b == a) {
                Some((_, r)) => *r += 1,
                None => terms.push((a, 1)),
            }
        }
        terms.sort_unstable();
        Self::new(terms)
    }

    pub fn terms(&self) -> &[(u64, u32)] {
        &self.terms
    }

    /// Coefficient of each variable, in term order.
    pub fn coefficients(&self) -> Vec<u64> {
        self.terms.iter().flat_map(|&(a, r)| std::iter::repeat_n(a, r as usize)).collect()
    }

    /// The exponent vector when the form is senary with coefficients in {1,2,3,6}.
    pub fn exponent_vector(&self) -> Option<ExponentVector> {
        let mut l = [0u32; 4];
        for &(a, r) in &self.terms {
            let idx = [1, 2, 3, 6].iter().position(|&d| d == a)?;
            l[idx] += r;
        }
        ExponentVector::new(l[0], l[1], l[2], l[3]).ok()
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(a, r)| format!("{a}^{r}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N({self})")
    }
}

impl FromStr for QuadForm {
    type Err = Error;

    /// Comma-separated coefficients, one per variable.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<u64>().map_err(|_| Error::Parse(format!("invalid form {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_coefficients(&coeffs)
    }
}

/// Number of integer vectors `x` with `Σ aⱼ xⱼ² = n`, by direct enumeration.
pub fn rep_count_bruteforce(form: &QuadForm, n: u64) -> u64 {
    fn go(coeffs: &[u64], rem: u64) -> u64 {
        let Some((&a, rest)) = coeffs.split_first() else {
            return u64::from(rem == 0);
        };
        if rest.is_empty() {
            if !rem.is_multiple_of(a) {
                return 0;
            }
            let m = rem / a;
            let x = m.isqrt();
            return match (x * x == m, m) {
                (true, 0) => 1,
                (true, _) => 2,
                _ => 0,
            };
        }
        let mut total = go(rest, rem);
        let mut x = 1u64;
        while a * x * x <= rem {
            total += 2 * go(rest, rem - a * x * x);
            x += 1;
        }
        total
    }
    go(&form.coefficients(), n)
}

/// Nebentypus of `∏ φ^{l_d}(dz)` from the parities of `l₁ + l₃` and `l₃ + l₆`.
pub fn classify(l: ExponentVector) -> DirichletChar {
    let [l1, _, l3, l6] = l.0;
    match ((l1 + l3) % 2, (l3 + l6) % 2) {
        (0, 0) => DirichletChar::M4,
        (0, _) => DirichletChar::M3,
        (_, 0) => DirichletChar::M8,
        _ => DirichletChar::M24,
    }
}

/// `∏_{d|6} φ^{l_d}(dz)` through `q^precision`.
pub fn genfun(l: ExponentVector, precision: usize) -> QSeries<Rational> {
    eta_quotient_expansion(&l.eta_quotient(), q_truncation(precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::etaq::ligozat_check;

    fn l(a: u32, b: u32, c: u32, d: u32) -> ExponentVector {
        ExponentVector::new(a, b, c, d).unwrap()
    }

    #[test]
    fn enumerates_84_vectors() {
        let all = ExponentVector::all();
        assert_eq!(all.len(), 84);
        assert_eq!(all[0], l(6, 0, 0, 0));
        assert_eq!(all[1], l(5, 1, 0, 0));
        assert_eq!(all[83], l(0, 0, 0, 6));
        assert!(all.windows(2).all(|w| w[0] > w[1]));
        assert!(ExponentVector::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn parse_vector_and_form() {
        assert_eq!("5,0,1,0".parse::<ExponentVector>().unwrap(), l(5, 0, 1, 0));
        let form: QuadForm = "1,1,1,1,3,3".parse().unwrap();
        assert_eq!(form.to_string(), "1^4 3^2");
        assert_eq!(form.exponent_vector(), Some(l(4, 0, 2, 0)));
        assert!("1,0".parse::<QuadForm>().is_err());
        assert_eq!("1,5".parse::<QuadForm>().unwrap().exponent_vector(), None);
    }

    #[test]
    fn bruteforce_counts() {
        let six = l(6, 0, 0, 0).form();
        assert_eq!(rep_count_bruteforce(&six, 0), 1);
        assert_eq!(rep_count_bruteforce(&six, 1), 12);
        assert_eq!(rep_count_bruteforce(&six, 2), 60);
        assert_eq!(rep_count_bruteforce(&six, 5), 312);
        let f = QuadForm::from_coefficients(&[1, 1, 1, 1, 3, 3]).unwrap();
        assert_eq!(rep_count_bruteforce(&f, 1), 8);
        let two_squares = QuadForm::from_coefficients(&[1, 1]).unwrap();
        let r2: Vec<u64> = (0..=10).map(|n| rep_count_bruteforce(&two_squares, n)).collect();
        assert_eq!(r2, vec![1, 4, 4, 0, 4, 8, 0, 0, 4, 4, 8]);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(l(6, 0, 0, 0)), DirichletChar::M4);
        assert_eq!(classify(l(5, 0, 1, 0)), DirichletChar::M3);
        assert_eq!(classify(l(5, 1, 0, 0)), DirichletChar::M8);
        assert_eq!(classify(l(5, 0, 0, 1)), DirichletChar::M24);
    }

    #[test]
    fn ligozat_agrees_with_classification() {
        let mut counts = std::collections::BTreeMap::new();
        for v in ExponentVector::all() {
            let r = ligozat_check(&v.eta_quotient());
            assert_eq!(r.weight, Rational::from(3));
            assert!(r.is_holomorphic && !r.is_cusp, "{v}");
            assert_eq!(r.character, Some(classify(v)), "{v}");
            *counts.entry(classify(v).discriminant()).or_insert(0) += 1;
        }
        assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![(-24, 20), (-8, 20), (-4, 24), (-3, 20)]);
    }

    #[test]
    fn genfun_matches_bruteforce() {
        let s = genfun(l(6, 0, 0, 0), 3);
        assert_eq!(s.q_coefficients(2).unwrap(), vec![Rational::from(1), Rational::from(12), Rational::from(60)]);
        let s = genfun(l(0, 0, 0, 6), 10);
        for n in 1..=5 {
            assert_eq!(s.q_coeff(n), Some(Rational::zero()));
        }
        for v in [l(1, 2, 0, 3), l(0, 3, 1, 2), l(2, 1, 1, 2)] {
            let s = genfun(v, 30);
            for n in 0..=30 {
                assert_eq!(s.q_coeff(n as i64), Some(Rational::from(rep_count_bruteforce(&v.form(), n) as i64)));
            }
        }
    }
}
