//! Real Kronecker characters of conductor dividing 24, generalized Bernoulli
//! numbers and twisted divisor sums.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{Error, Result};

/// The Kronecker symbol `(t/n)` for arbitrary integers.
///
/// Conventions: `(t/0)` is 1 for `t = ±1` and 0 otherwise; `(t/-1)` is -1
/// for negative `t` and 1 otherwise; `(t/2)` is 0 for even `t`, 1 for
/// `t ≡ ±1 (mod 8)` and -1 for `t ≡ ±3 (mod 8)`.
pub fn kronecker(t: i64, n: i64) -> i8 {
    let a = t as i128;
    let mut n = n as i128;
    if n == 0 {
        return i8::from(a == 1 || a == -1);
    }
    let mut result = 1i8;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        n >>= twos;
        if twos % 2 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            result = -result;
        }
    }
    result * jacobi(a.rem_euclid(n), n)
}

/// Jacobi symbol `(a/n)` for odd positive `n` and `0 <= a < n`.
fn jacobi(mut a: i128, mut n: i128) -> i8 {
    let mut result = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// A real primitive character `n ↦ (t/n)` with `t` one of the fundamental
/// discriminants 1, -3, -4, 8, -8, 12, 24, -24.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DirichletChar(i64);

impl DirichletChar {
    pub const TRIVIAL: DirichletChar = DirichletChar(1);
    pub const M3: DirichletChar = DirichletChar(-3);
    pub const M4: DirichletChar = DirichletChar(-4);
    pub const P8: DirichletChar = DirichletChar(8);
    pub const M8: DirichletChar = DirichletChar(-8);
    pub const P12: DirichletChar = DirichletChar(12);
    pub const P24: DirichletChar = DirichletChar(24);
    pub const M24: DirichletChar = DirichletChar(-24);

    pub const ALL: [DirichletChar; 8] = [
        Self::TRIVIAL,
        Self::M3,
        Self::M4,
        Self::P8,
        Self::M8,
        Self::P12,
        Self::P24,
        Self::M24,
    ];

    /// The four odd characters that occur as nebentypus of the weight-3
    /// spaces on Γ₀(24).
    pub const NEBENTYPES: [DirichletChar; 4] = [Self::M3, Self::M4, Self::M8, Self::M24];

    pub fn new(discriminant: i64) -> Result<Self> {
        let chi = DirichletChar(discriminant);
        if Self::ALL.contains(&chi) {
            Ok(chi)
        } else {
            Err(Error::UnsupportedCharacter(discriminant))
        }
    }

    pub fn discriminant(self) -> i64 {
        self.0
    }

    pub fn conductor(self) -> u64 {
        self.0.unsigned_abs()
    }

    /// `χ(n)`; zero whenever `gcd(n, conductor) > 1`.
    pub fn eval(self, n: i64) -> i8 {
        kronecker(self.0, n)
    }

    /// `χ(-1)`: +1 for even characters, -1 for odd ones.
    pub fn parity(self) -> i8 {
        self.eval(-1)
    }

    pub fn is_trivial(self) -> bool {
        self.0 == 1
    }
}

/// `χ(n)` for a character given by its discriminant.
pub fn char_eval(chi: DirichletChar, n: i64) -> i8 {
    chi.eval(n)
}

impl fmt::Display for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for DirichletChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "chi[{}]", self.0)
    }
}

impl FromStr for DirichletChar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .parse::<i64>()
            .map_err(|_| Error::Parse(format!("invalid character {s:?}")))?;
        DirichletChar::new(t)
    }
}

impl serde::Serialize for DirichletChar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_i64(self.0)
    }
}

impl<'de> serde::Deserialize<'de> for DirichletChar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let t = i64::deserialize(deserializer)?;
        DirichletChar::new(t).map_err(serde::de::Error::custom)
    }
}

/// Truncated power series in `x` with rational coefficients, `len` terms.
fn exp_series(a: i64, len: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(len);
    let mut term = Rational::one();
    for k in 0..len {
        out.push(term.clone());
        term = &term * &Rational::new(a, (k + 1) as i64).expect("nonzero");
    }
    out
}

/// `B_{3,χ}`, read off as `6·[x³]` of `Σ_{a=1}^{L} χ(a) x e^{ax} / (e^{Lx} - 1)`.
pub fn gen_bernoulli3(chi: DirichletChar) -> Rational {
    const TERMS: usize = 4;
    let l = chi.conductor() as i64;
    let mut numer = vec![Rational::zero(); TERMS];
    for a in 1..=l {
        let c = chi.eval(a);
        if c == 0 {
            continue;
        }
        for (acc, t) in numer.iter_mut().zip(exp_series(a, TERMS)) {
            if c > 0 {
                *acc += &t;
            } else {
                *acc -= &t;
            }
        }
    }
    // (e^{Lx} - 1) / x, a unit power series with constant term L.
    let denom: Vec<Rational> = exp_series(l, TERMS + 1).into_iter().skip(1).collect();
    let lead_inv = denom[0].recip().expect("conductor is positive");
    let mut quot = vec![Rational::zero(); TERMS];
    for k in 0..TERMS {
        let mut acc = numer[k].clone();
        for j in 1..=k {
            acc -= &(&denom[j] * &quot[k - j]);
        }
        quot[k] = &acc * &lead_inv;
    }
    &quot[3] * &Rational::from(6)
}

/// `σ_{(k,χ,ψ)}(n) = Σ_{d | n} χ(d) ψ(n/d) d^k`, and 0 for `n <= 0`.
pub fn sigma_twisted(k: u32, chi: DirichletChar, psi: DirichletChar, n: i64) -> BigInt {
    let mut total = BigInt::zero();
    if n <= 0 {
        return total;
    }
    let mut d = 1i64;
    while d * d <= n {
        if n % d == 0 {
            let e = n / d;
            total += term(k, chi, psi, d, e);
            if e != d {
                total += term(k, chi, psi, e, d);
            }
        }
        d += 1;
    }
    total
}

fn term(k: u32, chi: DirichletChar, psi: DirichletChar, d: i64, e: i64) -> BigInt {
    let sign = chi.eval(d) * psi.eval(e);
    if sign == 0 {
        return BigInt::zero();
    }
    let p = num_traits::pow(BigInt::from(d), k as usize);
    if sign > 0 {
        p
    } else {
        -p
    }
}

/// `σ_{(k,χ,ψ)}(n/t)`, zero unless `t` divides `n`.
pub fn sigma_twisted_scaled(k: u32, chi: DirichletChar, psi: DirichletChar, n: i64, t: i64) -> BigInt {
    if t <= 0 || n % t != 0 {
        BigInt::zero()
    } else {
        sigma_twisted(k, chi, psi, n / t)
    }
}
