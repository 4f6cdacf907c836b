//! Census of the holomorphic eta quotients in `M₃(Γ₀(24), χ)` and the
//! divisor-sum identities for the Eisenstein-expressible ones.
//!
//! The census walks the lattice of scaled cusp-order vectors. For an eta
//! quotient `r` of level 24 the vector `v = 24·(v_{1/c}(r))_c` is `A r` for an
//! integer matrix `A`; weight 3 means `Σ v = 288` and holomorphy at the cusps
//! means `v ≥ 0`. Points of the lattice `A ℤ⁸` inside that simplex are visited
//! through an upper-triangular basis `H = A U` with `U` unimodular.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{ExactMatrix, Rational};
use crate::characters::{sigma_twisted_scaled, DirichletChar};
use crate::error::{Error, Result};
use crate::etaq::{character_of, cusp_order, divisors, ligozat_check, Cusp, EtaQuotient};
use crate::qseries::{eta_quotient_expansion, q_truncation, QSeries};
use crate::spaces::{build_basis, solve_in_span, DEFAULT_PRECISION, STURM_BOUND};

const LEVEL: u64 = 24;
const DIM: usize = 8;
/// `24 · Σ_c v_{1/c}` at weight 3.
const TOTAL: i64 = 24 * 12;

type Square = [[i64; DIM]; DIM];

/// `24 · v_{1/c}` coefficients: row `c`, column `δ`, both over the divisors
/// of 24 in ascending order.
pub fn order_matrix() -> Square {
    let divs = divisors(LEVEL);
    let mut a = [[0i64; DIM]; DIM];
    for (i, &c) in divs.iter().enumerate() {
        for j in 0..DIM {
            let mut r = [0i64; DIM];
            r[j] = 1;
            let f = EtaQuotient::level24(r).expect("nonzero");
            let v = cusp_order(&f, Cusp::unit(c)) * Rational::from(24);
            a[i][j] = i64::try_from(v.to_integer().expect("integral scaled order")).expect("small");
        }
    }
    a
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a.abs(), a.signum(), 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Upper-triangular basis of the column lattice of a nonsingular matrix,
/// with positive diagonal and off-diagonal entries reduced modulo it.
pub fn column_hnf(m: &Square) -> Square {
    let mut h: Vec<Vec<i128>> = m.iter().map(|row| row.iter().map(|&x| x as i128).collect()).collect();
    let combine = |h: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        let (a, b) = (h[i][i], h[i][j]);
        let (g, x, y) = ext_gcd(a, b);
        for row in h.iter_mut() {
            let (ci, cj) = (row[i], row[j]);
            row[i] = x * ci + y * cj;
            row[j] = (a / g) * cj - (b / g) * ci;
        }
    };
    for i in (0..DIM).rev() {
        for j in 0..i {
            if h[i][j] != 0 {
                combine(&mut h, i, j);
            }
        }
        assert!(h[i][i] != 0, "singular order matrix");
        if h[i][i] < 0 {
            h.iter_mut().for_each(|row| row[i] = -row[i]);
        }
    }
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            let q = h[i][j].div_euclid(h[i][i]);
            if q != 0 {
                for row in h.iter_mut() {
                    row[j] -= q * row[i];
                }
            }
        }
    }
    let mut out = [[0i64; DIM]; DIM];
    for i in 0..DIM {
        for j in 0..DIM {
            out[i][j] = i64::try_from(h[i][j]).expect("bounded entries");
        }
    }
    out
}

struct Lattice {
    h: Square,
    /// `r = U z` for lattice coordinates `z`.
    u: Square,
}

impl Lattice {
    fn new() -> Self {
        let a = order_matrix();
        let to_exact = |m: &Square| {
            ExactMatrix::from_rows((), m.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect())
                .expect("square")
        };
        let exact = to_exact(&a);
        assert_eq!(exact.rank(), DIM, "order matrix must be invertible");
        assert!(
            summed_order_coefficients().iter().all(|c| *c == Rational::from(2)),
            "cusp orders of a weight-k quotient must sum to 4k"
        );
        let h = column_hnf(&a);
        let mut u = [[0i64; DIM]; DIM];
        for j in 0..DIM {
            let col: Vec<Rational> = (0..DIM).map(|i| Rational::from(h[i][j])).collect();
            let x = exact.solve(&col).expect("dimensions").unique().expect("invertible");
            for (i, v) in x.into_iter().enumerate() {
                u[i][j] = i64::try_from(v.to_integer().expect("H spans the same lattice")).expect("small");
            }
        }
        Lattice { h, u }
    }

    fn exponents(&self, z: &[i64; DIM]) -> [i64; DIM] {
        let mut r = [0i64; DIM];
        for (i, ri) in r.iter_mut().enumerate() {
            *ri = (0..DIM).map(|j| self.u[i][j] * z[j]).sum();
        }
        r
    }

    /// Range of `z_i` keeping `0 ≤ v_i ≤ room` given the later coordinates.
    fn range(&self, i: usize, z: &[i64; DIM], room: i64) -> (i64, i64, i64) {
        let s: i64 = ((i + 1)..DIM).map(|j| self.h[i][j] * z[j]).sum();
        let d = self.h[i][i];
        ((-s).div_euclid(d) + i64::from((-s).rem_euclid(d) != 0), (room - s).div_euclid(d), s)
    }

    fn walk(&self, i: usize, z: &mut [i64; DIM], used: i64, out: &mut Vec<[i64; DIM]>) {
        let room = TOTAL - used;
        if i == 0 {
            let s: i64 = (1..DIM).map(|j| self.h[0][j] * z[j]).sum();
            // `room` is the scaled order at the cusp 1; integrality there is
            // the second Ligozat congruence.
            if (room - s).rem_euclid(self.h[0][0]) == 0 && room % 24 == 0 {
                z[0] = (room - s) / self.h[0][0];
                out.push(self.exponents(z));
            }
            return;
        }
        let (lo, hi, s) = self.range(i, z, room);
        for zi in lo..=hi {
            z[i] = zi;
            self.walk(i - 1, z, used + self.h[i][i] * zi + s, out);
        }
    }

    /// Every integer `r` of weight 3 with all cusp orders `≥ 0` and integral
    /// orders at the cusps 1 and ∞.
    fn points(&self) -> Vec<[i64; DIM]> {
        let z0 = [0i64; DIM];
        let (lo, hi, _) = self.range(DIM - 1, &z0, TOTAL);
        let top = self.h[DIM - 1][DIM - 1];
        let mut all: Vec<[i64; DIM]> = (lo..=hi)
            // the last row is the scaled order at ∞: first Ligozat congruence
            .filter(|zt| (top * zt) % 24 == 0)
            .collect::<Vec<_>>()
            .into_par_iter()
            .flat_map_iter(|zt| {
                let mut z = [0i64; DIM];
                z[DIM - 1] = zt;
                let mut out = Vec::new();
                self.walk(DIM - 2, &mut z, self.h[DIM - 1][DIM - 1] * zt, &mut out);
                out
            })
            .collect();
        all.sort_unstable();
        all
    }
}

/// All holomorphic weight-3 eta quotients of level 24 grouped by character,
/// each list sorted lexicographically by exponent vector.
pub fn census_all() -> BTreeMap<DirichletChar, Vec<EtaQuotient>> {
    let lattice = Lattice::new();
    let mut groups: BTreeMap<DirichletChar, Vec<EtaQuotient>> = BTreeMap::new();
    for r in lattice.points() {
        let f = EtaQuotient::level24(r).expect("weight 3");
        let report = ligozat_check(&f);
        if report.is_holomorphic {
            if let Some(chi) = report.character {
                groups.entry(chi).or_default().push(f);
            }
        }
    }
    groups
}

/// Sum over the eight cusps of the `r_δ` coefficient in the order formula,
/// for each divisor `δ`; every entry is 2.
pub fn summed_order_coefficients() -> [Rational; DIM] {
    let a = order_matrix();
    std::array::from_fn(|j| Rational::new((0..DIM).map(|i| a[i][j]).sum::<i64>(), 24).expect("nonzero"))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusResult {
    pub character: DirichletChar,
    pub members: Vec<EtaQuotient>,
    pub eisenstein_expressible: Vec<(EtaQuotient, Vec<Rational>)>,
}

impl CensusResult {
    /// Members failing the Ligozat re-check for weight 3, holomorphy and the
    /// stated character.
    pub fn unsound_members(&self) -> Vec<&EtaQuotient> {
        self.members
            .iter()
            .filter(|f| {
                let r = ligozat_check(f);
                !(r.is_holomorphic && r.weight == Rational::from(3) && r.character == Some(self.character))
            })
            .collect()
    }
}

/// Coefficients against the Eisenstein part of the basis of `chi`, if `f`
/// lies in its span.
pub fn eisenstein_expressible(f: &EtaQuotient, chi: DirichletChar) -> Result<Option<Vec<Rational>>> {
    let span = build_basis(chi)?.eisenstein_expansions(DEFAULT_PRECISION);
    expressible_in(f, &span)
}

fn expressible_in(f: &EtaQuotient, span: &[QSeries<Rational>]) -> Result<Option<Vec<Rational>>> {
    let series = eta_quotient_expansion(f, q_truncation(DEFAULT_PRECISION));
    match solve_in_span(&(), &series, span, STURM_BOUND + 1) {
        Ok(x) => Ok(Some(x)),
        Err(Error::NotInSpan(_) | Error::NoUniqueSolution) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Census of `M₃(Γ₀(24), χ)` with the Eisenstein-expressible members.
pub fn enumerate_space(chi: DirichletChar) -> Result<CensusResult> {
    let members = census_all().remove(&chi).unwrap_or_default();
    census_result(chi, members)
}

/// Attach the Eisenstein-expressible members to a census list.
pub fn census_result(chi: DirichletChar, members: Vec<EtaQuotient>) -> Result<CensusResult> {
    let span = build_basis(chi)?.eisenstein_expansions(DEFAULT_PRECISION);
    let found: Vec<Option<Vec<Rational>>> =
        members.par_iter().map(|f| expressible_in(f, &span)).collect::<Result<_>>()?;
    let eisenstein_expressible =
        members.iter().zip(found).filter_map(|(f, x)| x.map(|x| (f.clone(), x))).collect();
    Ok(CensusResult { character: chi, members, eisenstein_expressible })
}

/// Holomorphic weight-3 quotients with `lo ≤ r ≤ hi` entrywise, found by
/// testing every integer point of the box.
pub fn bruteforce_box(lo: [i64; DIM], hi: [i64; DIM]) -> Vec<EtaQuotient> {
    fn go(i: usize, r: &mut [i64; DIM], sum: i64, lo: &[i64; DIM], hi: &[i64; DIM], out: &mut Vec<EtaQuotient>) {
        if i == DIM - 1 {
            let last = 6 - sum;
            if lo[i] <= last && last <= hi[i] {
                r[i] = last;
                let f = EtaQuotient::level24(*r).expect("weight 3");
                if ligozat_check(&f).is_holomorphic {
                    out.push(f);
                }
            }
            return;
        }
        for x in lo[i]..=hi[i] {
            r[i] = x;
            go(i + 1, r, sum + x, lo, hi, out);
        }
    }
    let mut out = Vec::new();
    go(0, &mut [0; DIM], 0, &lo, &hi, &mut out);
    out.sort();
    out
}

/// `coeff · σ_{(k,χ,ψ)}(n/t)` inside a divisor-sum identity.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaTerm {
    pub coeff: Rational,
    pub chi: DirichletChar,
    pub psi: DirichletChar,
    pub t: u64,
}

/// `lhs = constant + Σ_{n≥1} (Σ terms) qⁿ`.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaIdentity {
    pub lhs: EtaQuotient,
    pub constant: Rational,
    pub terms: Vec<SigmaTerm>,
}

impl SigmaIdentity {
    /// Right-hand coefficient of `qⁿ` with divisor power `k`.
    pub fn rhs_coefficient(&self, k: u32, n: i64) -> Rational {
        if n == 0 {
            return self.constant.clone();
        }
        self.terms
            .iter()
            .map(|t| &t.coeff * &Rational::from(sigma_twisted_scaled(k, t.chi, t.psi, n, t.t as i64)))
            .sum()
    }

    /// First `n ≤ precision` where the two sides differ.
    pub fn first_failure(&self, k: u32, precision: usize) -> Option<usize> {
        let lhs = eta_quotient_expansion(&self.lhs, q_truncation(precision));
        (0..=precision).find(|&n| lhs.q_coeff(n as i64) != Some(self.rhs_coefficient(k, n as i64)))
    }
}

impl fmt::Display for SigmaIdentity {
    /// e.g. `eta6[4,1,-4,5] = sum (sigma[-3,1](n) - sigma[-3,1](n/2)) q^n`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = ", self.lhs)?;
        if !self.constant.is_zero() {
            write!(f, "{} + ", self.constant)?;
        }
        f.write_str("sum (")?;
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let c = t.coeff.abs();
            if c != Rational::one() {
                write!(f, "{c}*")?;
            }
            let arg = if t.t == 1 { "n".to_string() } else { format!("n/{}", t.t) };
            write!(f, "sigma[{},{}]({arg})", t.chi, t.psi)?;
        }
        f.write_str(") q^n")
    }
}

/// Divisor power in the identities: the Eisenstein coefficients of weight 3
/// are `σ_{(2,χ,ψ)}`.
pub const REMARK_SIGMA_POWER: u32 = 2;

/// The nine eta quotients with divisor-sum expansions using at most two
/// Eisenstein series.
pub fn remark_identities() -> Vec<SigmaIdentity> {
    let c = |d: i64| DirichletChar::new(d).expect("supported");
    let term = |num: i64, den: i64, chi: i64, psi: i64, t: u64| SigmaTerm {
        coeff: Rational::new(num, den).expect("nonzero"),
        chi: c(chi),
        psi: c(psi),
        t,
    };
    let id = |lhs: &str, constant: i64, terms: Vec<SigmaTerm>| SigmaIdentity {
        lhs: lhs.parse().expect("valid literal"),
        constant: Rational::from(constant),
        terms,
    };
    vec![
        id("eta3[-3,9]", 0, vec![term(1, 1, 1, -3, 1)]),
        id("eta6[-4,5,4,1]", 0, vec![term(1, 1, 1, -3, 1), term(1, 1, 1, -3, 2)]),
        id("eta6[4,1,-4,5]", 0, vec![term(1, 1, -3, 1, 1), term(-1, 1, -3, 1, 2)]),
        id("eta4[-4,6,4]", 0, vec![term(1, 1, 1, -4, 1)]),
        id("eta8[-4,2,16,-8]", 1, vec![term(4, 1, 1, -4, 1), term(-4, 1, -4, 1, 2)]),
        id("eta4[-12,30,-12]", 1, vec![term(16, 1, 1, -4, 1), term(-4, 1, -4, 1, 1)]),
        id("eta4[4,-6,8]", 0, vec![term(1, 1, 1, -4, 1), term(-8, 1, 1, -4, 2)]),
        id("eta4[-4,18,-8]", 1, vec![term(4, 1, -4, 1, 1), term(-8, 1, -4, 1, 2)]),
        id("eta8[-2,-5,23,-10]", 1, vec![term(8, 3, 1, -8, 1), term(-2, 3, -8, 1, 1)]),
    ]
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub first_failure: Option<usize>,
}

/// Check all nine identities through `q^precision`.
pub fn verify_remark_identities(precision: usize) -> Vec<IdentityCheck> {
    remark_identities()
        .par_iter()
        .map(|id| IdentityCheck {
            identity: id.to_string(),
            first_failure: id.first_failure(REMARK_SIGMA_POWER, precision),
        })
        .collect()
}

/// Characters of the census, computed from `character_of` on the lifted
/// quotient.
pub fn character_at_level24(f: &EtaQuotient) -> Result<DirichletChar> {
    character_of(&f.lift(LEVEL)?)
}
