use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Rational, Scalar};
use crate::error::{Error, Result};

/// `Q[x] / (m(x))` for a monic defining polynomial `m`.
///
/// Irreducibility of `m` is not checked; with a reducible modulus some
/// nonzero elements have no inverse and [`Scalar::inverse`] returns `None`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberField {
    /// Coefficients of `m`, constant term first; the last entry is 1.
    modulus: Vec<Rational>,
}

impl NumberField {
    pub fn new(modulus: Vec<Rational>) -> Result<Arc<Self>> {
        let mut modulus = modulus;
        trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(Error::InvalidField("degree must be at least 1".into()));
        }
        if modulus.last() != Some(&Rational::one()) {
            return Err(Error::InvalidField("defining polynomial must be monic".into()));
        }
        Ok(Arc::new(NumberField { modulus }))
    }

    /// Integer defining polynomial, constant term first.
    pub fn from_integers(coeffs: &[i64]) -> Result<Arc<Self>> {
        Self::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// The field `Q` itself, as `Q[x]/(x)`.
    pub fn rationals() -> Arc<Self> {
        Self::from_integers(&[0, 1]).expect("x is monic")
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    /// Reduce an arbitrary polynomial to its residue of length `degree`.
    fn reduce(&self, mut poly: Vec<Rational>) -> Vec<Rational> {
        let d = self.degree();
        for i in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if c.is_zero() {
                continue;
            }
            for (j, m) in self.modulus[..d].iter().enumerate() {
                poly[i - d + j] -= &(&c * m);
            }
        }
        poly.resize(d, Rational::zero());
        poly
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", poly_string(&self.modulus, "x"))
    }
}

/// Residue class in a [`NumberField`], stored as its reduced representative.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NumberFieldElement {
    field: Arc<NumberField>,
    coeffs: Vec<Rational>,
}

impl NumberFieldElement {
    /// Reduce `poly` (constant term first) modulo the defining polynomial.
    pub fn from_poly(field: &Arc<NumberField>, poly: Vec<Rational>) -> Self {
        let coeffs = field.reduce(poly);
        NumberFieldElement { field: Arc::clone(field), coeffs }
    }

    pub fn from_rational(field: &Arc<NumberField>, r: Rational) -> Self {
        Self::from_poly(field, vec![r])
    }

    /// The class of `x`, i.e. a root of the defining polynomial.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, vec![Rational::zero(), Rational::one()])
    }

    /// Parse the comma-separated coefficient form produced by `Display`.
    pub fn parse(field: &Arc<NumberField>, s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| t.parse::<Rational>())
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() > field.degree() {
            return Err(Error::Parse(format!(
                "{} coefficients for a degree-{} field",
                coeffs.len(),
                field.degree()
            )));
        }
        Ok(Self::from_poly(field, coeffs))
    }

    pub fn number_field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `Some(r)` when the element is the rational `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        self.coeffs[1..]
            .iter()
            .all(Rational::is_zero)
            .then(|| self.coeffs[0].clone())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(NumberFieldElement { field: Arc::clone(&self.field), coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(NumberFieldElement { field: Arc::clone(&self.field), coeffs })
    }

    /// Product reduced modulo the defining polynomial.
    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let d = self.field.degree();
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        Ok(Self::from_poly(&self.field, prod))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let coeffs = self.coeffs.iter().map(|c| c * r).collect();
        NumberFieldElement { field: Arc::clone(&self.field), coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = NumberFieldElement::from_rational(&self.field, Rational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inverse(&self) -> Option<Self> {
        let mut a = self.coeffs.clone();
        trim(&mut a);
        if a.is_empty() {
            return None;
        }
        // Invariant: s_i * self == r_i (mod m).
        let (mut r0, mut r1) = (self.field.modulus.clone(), a);
        let (mut s0, mut s1) = (Vec::new(), vec![Rational::one()]);
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1));
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is the gcd; invertible iff it is a nonzero constant.
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].recip()?;
        let s = s0.iter().map(|x| x * &c).collect();
        Some(Self::from_poly(&self.field, s))
    }

    /// Human-readable polynomial in `var`, e.g. `2*a - 9`.
    pub fn to_poly_string(&self, var: &str) -> String {
        poly_string(&self.coeffs, var)
    }
}

/// Product of two residues; the error case is a field mismatch.
pub fn nf_mul(a: &NumberFieldElement, b: &NumberFieldElement) -> Result<NumberFieldElement> {
    a.checked_mul(b)
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl serde::Serialize for NumberFieldElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Debug for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_poly_string("a"))
    }
}

// The operator impls panic on mismatched fields; use the `checked_*` methods
// when the operands may come from different fields.
impl Add for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn add(self, rhs: Self) -> NumberFieldElement {
        self.checked_add(rhs).expect("number field mismatch")
    }
}

impl Sub for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn sub(self, rhs: Self) -> NumberFieldElement {
        self.checked_sub(rhs).expect("number field mismatch")
    }
}

impl Mul for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn mul(self, rhs: Self) -> NumberFieldElement {
        self.checked_mul(rhs).expect("number field mismatch")
    }
}

impl Neg for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn neg(self) -> NumberFieldElement {
        self.scale(&Rational::from(-1))
    }
}

impl Scalar for NumberFieldElement {
    type Field = Arc<NumberField>;

    fn field(&self) -> Arc<NumberField> {
        Arc::clone(&self.field)
    }

    fn zero(field: &Arc<NumberField>) -> Self {
        NumberFieldElement { field: Arc::clone(field), coeffs: vec![Rational::zero(); field.degree()] }
    }

    fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    fn from_rational(field: &Arc<NumberField>, r: &Rational) -> Self {
        NumberFieldElement::from_rational(field, r.clone())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn negated(&self) -> Self {
        -self
    }

    fn inverse(&self) -> Option<Self> {
        NumberFieldElement::inverse(self)
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.last().is_some_and(Rational::is_zero) {
        p.pop();
    }
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += &(x * y);
        }
    }
    trim(&mut out);
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    let mut out: Vec<Rational> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    trim(&mut out);
    out
}

/// Division with remainder; `b` must be trimmed and nonzero.
fn poly_divrem(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let db = b.len() - 1;
    let lead_inv = b[db].recip().expect("trimmed divisor");
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = &rem[i] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[i - db + j] -= &(&c * bj);
        }
        quot[i - db] = c;
    }
    rem.truncate(db);
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

fn poly_string(coeffs: &[Rational], var: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&mag.to_string());
        } else if mag == Rational::one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{mag}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
