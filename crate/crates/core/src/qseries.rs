//! Truncated formal power series in `q^{1/24}`.
//!
//! Exponents are always stored in grade-24 units: the exponent `e` stands for
//! `q^{e/24}`. A series knows every coefficient below its truncation `T`;
//! coefficients at `T` and beyond are unknown, not zero.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{Rational, Scalar};
use crate::etaq::EtaQuotient;

/// Denominator of the exponent grid.
pub const GRADE: i64 = 24;

/// Grade-24 truncation for a series known through `q^precision` inclusive.
pub fn q_truncation(precision: usize) -> i64 {
    GRADE * (precision as i64 + 1)
}

#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<S: Scalar> {
    field: S::Field,
    /// Exponent of `coeffs[0]`; equals `truncation` for the zero series.
    valuation: i64,
    /// Dense coefficients for `valuation..truncation`, first entry nonzero.
    coeffs: Vec<S>,
    truncation: i64,
}

impl<S: Scalar> QSeries<S> {
    /// `O(q^{truncation/24})`.
    pub fn zero(field: S::Field, truncation: i64) -> Self {
        QSeries { field, valuation: truncation, coeffs: Vec::new(), truncation }
    }

    pub fn one(field: S::Field, truncation: i64) -> Self {
        let one = S::one(&field);
        Self::monomial(field, 0, one, truncation)
    }

    pub fn monomial(field: S::Field, exponent: i64, coeff: S, truncation: i64) -> Self {
        Self::from_coeffs(field, exponent, vec![coeff], truncation)
    }

    /// Series with `coeffs[i]` at exponent `valuation + i`. Entries at or
    /// beyond `truncation` are dropped; missing entries below it are zero.
    pub fn from_coeffs(field: S::Field, valuation: i64, coeffs: Vec<S>, truncation: i64) -> Self {
        let mut s = QSeries { field, valuation, coeffs, truncation };
        s.normalize();
        s
    }

    /// Integer-exponent series `Σ coeffs[n] qⁿ`, known through `q^{len-1}`.
    pub fn from_q_coeffs(field: S::Field, coeffs: &[S]) -> Self {
        let len = coeffs.len() as i64;
        let mut dense = vec![S::zero(&field); (GRADE * len) as usize];
        for (n, c) in coeffs.iter().enumerate() {
            dense[n * GRADE as usize] = c.clone();
        }
        Self::from_coeffs(field, 0, dense, GRADE * len)
    }

    fn normalize(&mut self) {
        let span = (self.truncation - self.valuation).max(0) as usize;
        if self.truncation <= self.valuation {
            self.coeffs.clear();
            self.valuation = self.truncation;
            return;
        }
        self.coeffs.truncate(span);
        self.coeffs.resize(span, S::zero(&self.field));
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.valuation = self.truncation;
            }
        }
    }

    pub fn field(&self) -> &S::Field {
        &self.field
    }

    /// Smallest exponent with a nonzero coefficient; the truncation for the
    /// zero series.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient at grade-24 exponent `e`, `None` when `e >= truncation`.
    pub fn coeff(&self, e: i64) -> Option<S> {
        if e >= self.truncation {
            None
        } else if e < self.valuation {
            Some(S::zero(&self.field))
        } else {
            Some(self.coeffs[(e - self.valuation) as usize].clone())
        }
    }

    /// Coefficient of `qⁿ`.
    pub fn q_coeff(&self, n: i64) -> Option<S> {
        self.coeff(GRADE * n)
    }

    /// `[q⁰, …, q^precision]`, or `None` if any of them is unknown.
    pub fn q_coefficients(&self, precision: usize) -> Option<Vec<S>> {
        (0..=precision as i64).map(|n| self.q_coeff(n)).collect()
    }

    /// Highest integer `n` with `qⁿ` known.
    pub fn q_precision(&self) -> Option<usize> {
        let last = (self.truncation - 1).div_euclid(GRADE);
        (last >= 0).then_some(last as usize)
    }

    /// Nonzero terms as `(exponent, coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &S)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.valuation + i as i64, c))
    }

    /// True when every nonzero exponent is a multiple of 24.
    pub fn is_integral_q(&self) -> bool {
        self.terms().all(|(e, _)| e.rem_euclid(GRADE) == 0)
    }

    pub fn scale(&self, c: &S) -> Self {
        let coeffs = self.coeffs.iter().map(|x| x.times(c)).collect();
        Self::from_coeffs(self.field.clone(), self.valuation, coeffs, self.truncation)
    }

    /// `f(z) ↦ f(tz)`.
    pub fn rescale(&self, t: u64) -> Self {
        let t = t as i64;
        let mut dense = vec![S::zero(&self.field); ((self.truncation - self.valuation) * t) as usize];
        for (e, c) in self.terms() {
            dense[((e - self.valuation) * t) as usize] = c.clone();
        }
        Self::from_coeffs(self.field.clone(), self.valuation * t, dense, self.truncation * t)
    }

    /// Keep only exponents below `truncation` (never raises it).
    pub fn truncate(&self, truncation: i64) -> Self {
        let t = truncation.min(self.truncation);
        Self::from_coeffs(self.field.clone(), self.valuation, self.coeffs.clone(), t)
    }

    /// Apply a coefficient map into another scalar field.
    pub fn map<T: Scalar>(&self, field: &T::Field, f: impl Fn(&S) -> T) -> QSeries<T> {
        let coeffs = self.coeffs.iter().map(f).collect();
        QSeries::from_coeffs(field.clone(), self.valuation, coeffs, self.truncation)
    }

    fn binary(&self, other: &Self, op: impl Fn(&S, &S) -> S) -> Self {
        let v = self.valuation.min(other.valuation);
        let t = self.truncation.min(other.truncation);
        if t <= v {
            return Self::zero(self.field.clone(), t);
        }
        let zero = S::zero(&self.field);
        let coeffs = (v..t)
            .map(|e| {
                let a = self.get(e).unwrap_or(&zero);
                let b = other.get(e).unwrap_or(&zero);
                op(a, b)
            })
            .collect();
        Self::from_coeffs(self.field.clone(), v, coeffs, t)
    }

    fn get(&self, e: i64) -> Option<&S> {
        if e < self.valuation || e >= self.truncation {
            None
        } else {
            self.coeffs.get((e - self.valuation) as usize)
        }
    }

    /// Inverse of a series whose leading coefficient is a unit.
    pub fn inverse(&self) -> crate::Result<Self> {
        let lead = self.coeffs.first().ok_or(crate::Error::NotInvertible)?;
        let lead_inv = lead.inverse().ok_or(crate::Error::NotInvertible)?;
        let len = self.coeffs.len();
        let nz: Vec<(usize, &S)> =
            self.coeffs.iter().enumerate().skip(1).filter(|(_, c)| !c.is_zero()).collect();
        let mut out: Vec<S> = Vec::with_capacity(len);
        out.push(lead_inv.clone());
        for n in 1..len {
            let mut acc = S::zero(&self.field);
            for &(k, c) in &nz {
                if k > n {
                    break;
                }
                let g = &out[n - k];
                if !g.is_zero() {
                    acc = acc.plus(&c.times(g));
                }
            }
            out.push(acc.times(&lead_inv).negated());
        }
        Ok(Self::from_coeffs(self.field.clone(), -self.valuation, out, len as i64 - self.valuation))
    }

    /// `fᵉ`; negative powers go through [`QSeries::inverse`].
    pub fn pow(&self, e: i64) -> crate::Result<Self> {
        if e < 0 {
            return self.inverse()?.pow(-e);
        }
        if e == 0 {
            let rel = self.truncation - self.valuation;
            return Ok(Self::one(self.field.clone(), rel));
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => &a * &base,
                });
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc.expect("e > 0"))
    }

    /// Lines of `exponent coefficient` for the nonzero terms, exponents in
    /// grade-24 units.
    pub fn to_grade_lines(&self) -> String {
        let mut out = String::new();
        for (e, c) in self.terms() {
            let _ = writeln!(out, "{e} {c}");
        }
        out
    }

    /// Lines of `n coefficient` with integer q-exponents, or `None` when a
    /// fractional exponent carries a nonzero coefficient.
    pub fn to_q_lines(&self) -> Option<String> {
        if !self.is_integral_q() {
            return None;
        }
        let mut out = String::new();
        for (e, c) in self.terms() {
            let _ = writeln!(out, "{} {c}", e / GRADE);
        }
        Some(out)
    }
}

impl<S: Scalar> Add for &QSeries<S> {
    type Output = QSeries<S>;
    fn add(self, rhs: Self) -> QSeries<S> {
        self.binary(rhs, |a, b| a.plus(b))
    }
}

impl<S: Scalar> Sub for &QSeries<S> {
    type Output = QSeries<S>;
    fn sub(self, rhs: Self) -> QSeries<S> {
        self.binary(rhs, |a, b| a.minus(b))
    }
}

impl<S: Scalar> Neg for &QSeries<S> {
    type Output = QSeries<S>;
    fn neg(self) -> QSeries<S> {
        self.scale(&S::one(&self.field).negated())
    }
}

impl<S: Scalar> Mul for &QSeries<S> {
    type Output = QSeries<S>;

    /// Cauchy product; truncation `min(T_f + v_g, T_g + v_f)`.
    fn mul(self, rhs: Self) -> QSeries<S> {
        let v = self.valuation + rhs.valuation;
        let t = (self.truncation + rhs.valuation).min(rhs.truncation + self.valuation);
        let len = (t - v).max(0) as usize;
        let mut out = vec![S::zero(&self.field); len];
        let rhs_nz: Vec<(usize, &S)> =
            rhs.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len {
                break;
            }
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs_nz {
                if i + j >= len {
                    break;
                }
                out[i + j] = out[i + j].plus(&a.times(b));
            }
        }
        QSeries::from_coeffs(self.field.clone(), v, out, t)
    }
}

pub fn series_add<S: Scalar>(f: &QSeries<S>, g: &QSeries<S>) -> QSeries<S> {
    f + g
}

pub fn series_mul<S: Scalar>(f: &QSeries<S>, g: &QSeries<S>) -> QSeries<S> {
    f * g
}

pub fn series_pow<S: Scalar>(f: &QSeries<S>, e: i64) -> crate::Result<QSeries<S>> {
    f.pow(e)
}

/// `Σ cᵢ fᵢ`, with truncation the minimum over the summands.
pub fn linear_combination<S: Scalar>(field: &S::Field, terms: &[(S, &QSeries<S>)]) -> Option<QSeries<S>> {
    let trunc = terms.iter().map(|(_, f)| f.truncation()).min()?;
    Some(terms.iter().fold(QSeries::zero(field.clone(), trunc), |acc, (c, f)| &acc + &f.scale(c)))
}

/// Exponents `m(3m-1)/2` with signs `(-1)^m` for `m ∈ ℤ`, ascending, below `bound`.
fn pentagonal_terms(bound: i64) -> Vec<(i64, i64)> {
    let mut out = vec![(0, 1)];
    for m in 1.. {
        let sign = if m % 2 == 0 { 1 } else { -1 };
        let a = m * (3 * m - 1) / 2;
        let b = m * (3 * m + 1) / 2;
        if a >= bound {
            break;
        }
        out.push((a, sign));
        if b < bound {
            out.push((b, sign));
        }
    }
    out
}

/// `η(δz) = q^{δ/24} ∏_{n≥1} (1 - q^{δn})`, known below grade-24 exponent
/// `truncation`.
pub fn eta_expansion(delta: u64, truncation: i64) -> QSeries<Rational> {
    let delta = delta as i64;
    let len = (truncation - delta).max(0);
    let step = GRADE * delta;
    let mut dense = vec![Rational::zero(); len as usize];
    for (g, sign) in pentagonal_terms(len.div_euclid(step) + 1) {
        let idx = g * step;
        if idx < len {
            dense[idx as usize] = Rational::from(sign);
        }
    }
    QSeries::from_coeffs((), delta, dense, truncation)
}

/// `∏ η^{r_δ}(δz)`, known below grade-24 exponent `truncation`.
///
/// Uses the logarithmic derivative of `∏_δ ∏_n (1 - q^{δn})^{r_δ}`:
/// `n·F_n = Σ_{k=1}^{n} c_k F_{n-k}` with `c_k = -Σ_{δ|k} δ r_δ σ(k/δ)`.
pub fn eta_quotient_expansion(f: &EtaQuotient, truncation: i64) -> QSeries<Rational> {
    let factors: Vec<(i64, i64)> = f
        .exponents()
        .filter(|&(_, r)| r != 0)
        .map(|(d, r)| (d as i64, r))
        .collect();
    let v = f.grade24_valuation();
    let terms = if truncation > v { (truncation - v + GRADE - 1) / GRADE } else { 0 } as usize;
    let coeffs = eta_product_coefficients(&factors, terms);
    let mut dense = vec![Rational::zero(); (truncation - v).max(0) as usize];
    for (n, c) in coeffs.into_iter().enumerate() {
        let idx = n * GRADE as usize;
        if idx < dense.len() {
            dense[idx] = Rational::from(c);
        }
    }
    QSeries::from_coeffs((), v, dense, truncation)
}

/// First `terms` coefficients of `∏_δ ∏_{n≥1} (1 - q^{δn})^{r_δ}`.
pub(crate) fn eta_product_coefficients(factors: &[(i64, i64)], terms: usize) -> Vec<BigInt> {
    if terms == 0 {
        return Vec::new();
    }
    let sigma1: Vec<i128> = (0..terms as i64)
        .map(|m| if m == 0 { 0 } else { (1..=m).filter(|d| m % d == 0).map(i128::from).sum() })
        .collect();
    let c: Vec<i128> = (0..terms as i64)
        .map(|k| {
            if k == 0 {
                return 0;
            }
            -factors
                .iter()
                .filter(|&&(d, _)| k % d == 0)
                .map(|&(d, r)| i128::from(d) * i128::from(r) * sigma1[(k / d) as usize])
                .sum::<i128>()
        })
        .collect();
    let mut out: Vec<BigInt> = Vec::with_capacity(terms);
    out.push(BigInt::from(1));
    for n in 1..terms {
        let mut acc = BigInt::zero();
        for k in 1..=n {
            if c[k] != 0 && !out[n - k].is_zero() {
                acc += &out[n - k] * c[k];
            }
        }
        debug_assert!((&acc % n).is_zero());
        out.push(acc / n);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64) -> Rational {
        Rational::from(n)
    }

    fn q_series(coeffs: &[i64]) -> QSeries<Rational> {
        QSeries::from_q_coeffs((), &coeffs.iter().map(|&c| r(c)).collect::<Vec<_>>())
    }

    #[test]
    fn add_zero_and_cancellation() {
        let f = q_series(&[1, 2, 3]);
        let z = QSeries::zero((), 48);
        let s = &f + &z;
        assert_eq!(s.truncation(), 48);
        assert_eq!(s.q_coeff(1), Some(r(2)));
        assert_eq!(s.q_coeff(2), None);

        let sum = &q_series(&[1, 1, 0]) + &q_series(&[1, -1, 0]);
        assert_eq!(sum, QSeries::monomial((), 0, r(2), 72));

        let eta = eta_expansion(1, 500);
        let cancel = &eta + &eta.scale(&r(-1));
        assert!(cancel.is_zero());
        assert_eq!(cancel.truncation(), 500);
    }

    #[test]
    fn mul_identity_and_geometric() {
        let f = q_series(&[3, 0, -1, 7]);
        assert_eq!(&f * &QSeries::one((), 1000), f);
        let one_minus_q = q_series(&[1, -1, 0, 0, 0, 0, 0, 0]);
        let geom = q_series(&[1; 8]);
        assert_eq!(&one_minus_q * &geom, QSeries::one((), 8 * 24));
    }

    #[test]
    fn fractional_exponents_add() {
        let a = QSeries::monomial((), 1, r(1), 100);
        let b = QSeries::monomial((), 23, r(1), 100);
        let p = &a * &b;
        assert_eq!(p.valuation(), 24);
        assert_eq!(p.q_coeff(1), Some(r(1)));
        assert_eq!(p.truncation(), 100 + 1);
    }

    #[test]
    fn powers() {
        let f = q_series(&[1, -1, 0, 0, 0, 0]);
        assert_eq!(f.pow(0).unwrap(), QSeries::one((), 6 * 24));
        assert_eq!(f.pow(-1).unwrap(), q_series(&[1; 6]));
        let eta = eta_expansion(1, 24 * 20);
        let prod = &eta.pow(2).unwrap() * &eta.pow(-2).unwrap();
        assert_eq!(prod, QSeries::one((), prod.truncation()));
        assert!(QSeries::<Rational>::zero((), 48).pow(-1).is_err());
    }

    #[test]
    fn eta_coefficients() {
        let eta = eta_expansion(1, 24 * 8);
        for (e, c) in [(1, 1), (25, -1), (49, -1), (121, 1), (169, 1)] {
            assert_eq!(eta.coeff(e), Some(r(c)), "exponent {e}");
        }
        // Zero between the pentagonal exponents 2 and 5.
        for k in 1..=2 {
            assert_eq!(eta.coeff(49 + 24 * k), Some(r(0)));
        }
        assert_eq!(eta_expansion(2, 500).valuation(), 2);
    }

    /// Term-by-term expansion of q^{δ/24} ∏_{n<P} (1 - q^{δn}).
    fn direct_eta(delta: i64, truncation: i64) -> QSeries<Rational> {
        let mut acc = QSeries::monomial((), delta, r(1), truncation);
        let mut n = 1;
        while GRADE * delta * n < truncation {
            let factor = &QSeries::one((), truncation) - &QSeries::monomial((), GRADE * delta * n, r(1), truncation);
            acc = &acc * &factor;
            n += 1;
        }
        acc.truncate(truncation)
    }

    #[test]
    fn eta_matches_direct_product() {
        for delta in [1, 2, 3, 5, 24] {
            let t = 24 * 61;
            assert_eq!(eta_expansion(delta, t), direct_eta(delta as i64, t), "delta {delta}");
        }
    }

    #[test]
    fn theta_from_eta_quotient() {
        let phi = EtaQuotient::new(4, &[-2, 5, -2]).unwrap();
        let s = eta_quotient_expansion(&phi, q_truncation(9));
        let expected: Vec<Rational> = [1, 2, 0, 0, 2, 0, 0, 0, 0, 2].iter().map(|&c| r(c)).collect();
        assert_eq!(s.q_coefficients(9).unwrap(), expected);
        // Σ_{n∈ℤ} q^{n²} through q^200.
        let s = eta_quotient_expansion(&phi, q_truncation(200));
        for n in 0..=200i64 {
            let sq = (n as f64).sqrt() as i64;
            let expected = if n == 0 { 1 } else if sq * sq == n { 2 } else { 0 };
            assert_eq!(s.q_coeff(n), Some(r(expected)));
        }
    }

    #[test]
    fn eta_quotient_valuations() {
        let f = EtaQuotient::new(24, &[0, 3, 0, -4, -5, 2, 16, -6]).unwrap();
        let s = eta_quotient_expansion(&f, q_truncation(5));
        assert_eq!(s.valuation(), 24);
        let sq = EtaQuotient::new(1, &[2]).unwrap();
        assert_eq!(eta_quotient_expansion(&sq, 200).valuation(), 2);
    }

    /// The recurrence route agrees with repeated series powers.
    #[test]
    fn eta_quotient_matches_series_product() {
        for exps in [
            vec![0, 3, 0, -4, -5, 2, 16, -6],
            vec![-2, 5, -2, 0, 0, 0, 0, 0],
            vec![1, -2, -1, 4, 3, -2, -1, 4],
            vec![-2, -5, 23, -10, 0, 0, 0, 0],
        ] {
            let f = EtaQuotient::new(24, &exps).unwrap();
            let t = q_truncation(40);
            let mut prod = QSeries::one((), t + 24 * 30);
            for (d, e) in f.exponents() {
                let p = eta_expansion(d, t + 24 * 30).pow(e).unwrap();
                prod = &prod * &p;
            }
            assert_eq!(eta_quotient_expansion(&f, t), prod.truncate(t), "{f}");
        }
    }

    #[test]
    fn serialization_modes() {
        let f = q_series(&[1, 0, -3]);
        assert_eq!(f.to_q_lines().unwrap(), "0 1\n2 -3\n");
        assert_eq!(f.to_grade_lines(), "0 1\n48 -3\n");
        assert!(eta_expansion(1, 100).to_q_lines().is_none());
    }

    fn arb_series() -> impl Strategy<Value = QSeries<Rational>> {
        (-30i64..30, prop::collection::vec(-4i64..5, 1..40)).prop_map(|(v, cs)| {
            let len = cs.len() as i64;
            QSeries::from_coeffs((), v, cs.into_iter().map(Rational::from).collect(), v + len)
        })
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(f in arb_series(), g in arb_series(), h in arb_series()) {
            prop_assert_eq!(&f * &g, &g * &f);
            let left = &(&f * &g) * &h;
            let right = &f * &(&g * &h);
            let t = left.truncation().min(right.truncation());
            prop_assert_eq!(left.truncate(t), right.truncate(t));
        }

        #[test]
        fn inverse_roundtrip(f in arb_series()) {
            if !f.is_zero() {
                let p = &f * &f.inverse().unwrap();
                prop_assert_eq!(p.clone(), QSeries::one((), p.truncation()));
            }
        }

        #[test]
        fn l1_quotients_have_integral_exponents(exps in prop::collection::vec(-6i64..7, 8)) {
            let f = EtaQuotient::new(24, &exps);
            if let Ok(f) = f {
                let s = eta_quotient_expansion(&f, q_truncation(10));
                if f.grade24_valuation() % 24 == 0 {
                    prop_assert_eq!(s.valuation().rem_euclid(24), 0);
                    prop_assert!(s.is_integral_q());
                }
            }
        }
    }
}
