//! Bases of `M₃(Γ₀(24), χ)` for the four odd nebentypes, and exact expansion
//! of a series in such a basis.

use std::fmt;

use serde::Serialize;

use crate::arith::{ExactMatrix, LinearSolution, Rational, Scalar};
use crate::characters::DirichletChar;
use crate::eisenstein::{eisenstein3, EisensteinSpec};
use crate::error::{Error, Result};
use crate::etaq::{ligozat_check, EtaQuotient};
use crate::qseries::{eta_quotient_expansion, q_truncation, QSeries};

/// `⌊k·[SL₂(ℤ):Γ₀(24)]/12⌋` for `k = 3`, index 48.
pub const STURM_BOUND: usize = 12;

/// Working precision for identity checks, in integer powers of q.
pub const DEFAULT_PRECISION: usize = 60;

const CUSP_M3: [[i64; 8]; 4] = [
    [0, 3, 0, -4, -5, 2, 16, -6],
    [1, -1, -3, 1, 7, 0, 1, 0],
    [0, 2, 0, -1, -2, 0, 7, 0],
    [0, 1, 0, 2, 1, -2, -2, 6],
];

const CUSP_M4: [[i64; 8]; 4] = [
    [1, -1, -3, 0, 7, 2, 2, -2],
    [0, 2, 0, -2, -2, 2, 8, -2],
    [0, 0, 0, 4, 0, -2, 2, 2],
    [0, 1, 0, 1, 1, 0, -1, 4],
];

const CUSP_M8: [[i64; 8]; 6] = [
    [2, -2, -4, -2, 7, 2, 7, -4],
    [1, 1, -1, -4, -2, 2, 13, -4],
    [2, -3, -4, 1, 10, 0, -2, 2],
    [1, 0, -1, -1, 1, 0, 4, 2],
    [0, 1, 2, 0, -2, -1, 1, 5],
    [1, -1, -1, 2, 4, -2, -5, 8],
];

const CUSP_M24: [[i64; 8]; 6] = [
    [1, 1, -1, -5, -2, 4, 14, -6],
    [2, -3, -4, 0, 10, 2, -1, 0],
    [1, 0, -1, -2, 1, 2, 5, 0],
    [1, -2, -1, 4, 3, -2, -1, 4],
    [1, -1, -1, 1, 4, 0, -4, 6],
    [-1, 4, 1, 0, -1, -2, -3, 8],
];

/// Dimension of `M₃(Γ₀(24), χ)` as quoted from the literature.
pub fn bundled_dimension(chi: DirichletChar) -> Result<usize> {
    match chi.discriminant() {
        -3 | -4 => Ok(12),
        -8 | -24 => Ok(10),
        t => Err(Error::UnsupportedCharacter(t)),
    }
}

/// One element of a basis, in dump order.
#[derive(Clone, Debug, PartialEq)]
pub enum BasisElement {
    Eisenstein(EisensteinSpec),
    Cusp(EtaQuotient),
}

impl BasisElement {
    pub fn expansion(&self, precision: usize) -> QSeries<Rational> {
        match self {
            BasisElement::Eisenstein(spec) => eisenstein3(spec, precision),
            BasisElement::Cusp(f) => eta_quotient_expansion(f, q_truncation(precision)),
        }
    }
}

impl fmt::Display for BasisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisElement::Eisenstein(s) => s.fmt(f),
            BasisElement::Cusp(e) => e.fmt(f),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceBasis {
    pub character: DirichletChar,
    pub eisenstein_part: Vec<EisensteinSpec>,
    pub cusp_part: Vec<EtaQuotient>,
    pub sturm_bound: usize,
}

impl SpaceBasis {
    pub fn new(character: DirichletChar, eisenstein_part: Vec<EisensteinSpec>, cusp_part: Vec<EtaQuotient>) -> Self {
        SpaceBasis { character, eisenstein_part, cusp_part, sturm_bound: STURM_BOUND }
    }

    pub fn dimension(&self) -> usize {
        self.eisenstein_part.len() + self.cusp_part.len()
    }

    /// Eisenstein part first, then the cusp part.
    pub fn elements(&self) -> Vec<BasisElement> {
        self.eisenstein_part
            .iter()
            .copied()
            .map(BasisElement::Eisenstein)
            .chain(self.cusp_part.iter().cloned().map(BasisElement::Cusp))
            .collect()
    }

    pub fn expansions(&self, precision: usize) -> Vec<QSeries<Rational>> {
        self.elements().iter().map(|e| e.expansion(precision)).collect()
    }

    pub fn eisenstein_expansions(&self, precision: usize) -> Vec<QSeries<Rational>> {
        self.eisenstein_part.iter().map(|s| eisenstein3(s, precision)).collect()
    }

    pub fn cusp_expansions(&self, precision: usize) -> Vec<QSeries<Rational>> {
        let t = q_truncation(precision);
        self.cusp_part.iter().map(|f| eta_quotient_expansion(f, t)).collect()
    }

    /// One element per line.
    pub fn dump(&self) -> String {
        self.elements().iter().map(|e| format!("{e}\n")).collect()
    }
}

fn eisenstein_pairs(chi: DirichletChar, scales: &[u64]) -> Vec<EisensteinSpec> {
    let one = DirichletChar::TRIVIAL;
    let first = scales.iter().map(|&t| EisensteinSpec::new(chi, one, t));
    let second = scales.iter().map(|&t| EisensteinSpec::new(one, chi, t));
    first.chain(second).map(|s| s.expect("odd parity")).collect()
}

fn cusp_list(rows: &[[i64; 8]]) -> Vec<EtaQuotient> {
    rows.iter().map(|&r| EtaQuotient::level24(r).expect("nonzero exponents")).collect()
}

/// The ordered basis `E(3,24,χ) ∪ S(3,24,χ)`.
pub fn build_basis(chi: DirichletChar) -> Result<SpaceBasis> {
    let (eis, cusp) = match chi.discriminant() {
        -3 => (eisenstein_pairs(chi, &[1, 2, 4, 8]), cusp_list(&CUSP_M3)),
        -4 => (eisenstein_pairs(chi, &[1, 2, 3, 6]), cusp_list(&CUSP_M4)),
        -8 => (eisenstein_pairs(chi, &[1, 3]), cusp_list(&CUSP_M8)),
        -24 => {
            let c = |a, b| EisensteinSpec::new(DirichletChar::new(a)?, DirichletChar::new(b)?, 1);
            (vec![c(-24, 1)?, c(1, -24)?, c(-3, 8)?, c(8, -3)?], cusp_list(&CUSP_M24))
        }
        t => return Err(Error::UnsupportedCharacter(t)),
    };
    Ok(SpaceBasis::new(chi, eis, cusp))
}

/// Ligozat status of one cusp-basis element.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CuspCheck {
    pub quotient: EtaQuotient,
    pub is_cusp: bool,
    pub character: Option<DirichletChar>,
    pub valuation: i64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BasisReport {
    pub character: DirichletChar,
    pub cusp_checks: Vec<CuspCheck>,
    pub rank: usize,
    pub size: usize,
    pub expected_dimension: Option<usize>,
    pub distinct_valuations: bool,
}

impl BasisReport {
    pub fn cusp_forms_ok(&self) -> bool {
        self.cusp_checks.iter().all(|c| c.is_cusp && c.character == Some(self.character))
    }

    pub fn full_rank(&self) -> bool {
        self.rank == self.size && self.expected_dimension.is_none_or(|d| d == self.size)
    }

    pub fn passed(&self) -> bool {
        self.cusp_forms_ok() && self.full_rank() && self.distinct_valuations
    }
}

/// Check Ligozat certification of the cusp part, full rank of the coefficient
/// matrix through `q^precision`, and distinct orders at infinity.
pub fn verify_basis(basis: &SpaceBasis, precision: usize) -> BasisReport {
    let cusp_checks: Vec<CuspCheck> = basis
        .cusp_part
        .iter()
        .map(|f| {
            let r = ligozat_check(f);
            CuspCheck { quotient: f.clone(), is_cusp: r.is_cusp, character: r.character, valuation: f.grade24_valuation() }
        })
        .collect();
    let mut vals: Vec<i64> = cusp_checks.iter().map(|c| c.valuation).collect();
    vals.sort_unstable();
    let distinct_valuations = vals.windows(2).all(|w| w[0] != w[1]);

    let series = basis.expansions(precision);
    let rank = coefficient_matrix(&(), &series, precision + 1).map_or(0, |m| m.rank());
    BasisReport {
        character: basis.character,
        cusp_checks,
        rank,
        size: basis.dimension(),
        expected_dimension: bundled_dimension(basis.character).ok(),
        distinct_valuations,
    }
}

/// Matrix whose column `j` holds `q⁰ … q^{rows-1}` of `span[j]`.
fn coefficient_matrix<S: Scalar>(field: &S::Field, span: &[QSeries<S>], rows: usize) -> Result<ExactMatrix<S>> {
    let mut m = ExactMatrix::zeros(field.clone(), rows, span.len());
    for (j, s) in span.iter().enumerate() {
        for n in 0..rows {
            let c = s
                .q_coeff(n as i64)
                .ok_or_else(|| Error::Precision(format!("basis element {j} unknown at q^{n}")))?;
            m.set(n, j, c);
        }
    }
    Ok(m)
}

/// Coefficients `x` with `Σ xⱼ spanⱼ = f`: solved on `q⁰ … q^{solve_rows-1}`,
/// then checked on every coefficient known for `f` and all of `span`.
pub fn solve_in_span<S: Scalar>(
    field: &S::Field,
    f: &QSeries<S>,
    span: &[QSeries<S>],
    solve_rows: usize,
) -> Result<Vec<S>> {
    let known = span
        .iter()
        .chain(std::iter::once(f))
        .map(|s| s.q_precision())
        .min()
        .flatten()
        .ok_or_else(|| Error::Precision("no coefficients known".into()))?;
    if known + 1 < solve_rows {
        return Err(Error::Precision(format!(
            "need {solve_rows} coefficients, only q^0..q^{known} known"
        )));
    }
    if let Some((e, _)) = f.terms().find(|(e, _)| e.rem_euclid(24) != 0) {
        return Err(Error::NotInSpan(e.div_euclid(24) as usize));
    }
    let a = coefficient_matrix(field, span, solve_rows)?;
    let y: Vec<S> = (0..solve_rows).map(|n| f.q_coeff(n as i64).expect("checked precision")).collect();
    let x = match a.solve(&y)? {
        LinearSolution::Unique(x) => x,
        LinearSolution::Underdetermined { .. } => return Err(Error::NoUniqueSolution),
        LinearSolution::Inconsistent => {
            let first = (1..=solve_rows)
                .find(|&m| {
                    let sub = coefficient_matrix(field, span, m).expect("checked precision");
                    matches!(sub.solve(&y[..m]), Ok(LinearSolution::Inconsistent))
                })
                .unwrap_or(solve_rows);
            return Err(Error::NotInSpan(first - 1));
        }
    };
    for n in 0..=known as i64 {
        let lhs = span.iter().zip(&x).fold(S::zero(field), |acc, (s, c)| {
            acc.plus(&s.q_coeff(n).expect("checked precision").times(c))
        });
        if lhs != f.q_coeff(n).expect("checked precision") {
            return Err(Error::NotInSpan(n as usize));
        }
    }
    Ok(x)
}

/// Expand `f` in `basis`, solving on `q⁰ … q^{sturm}` and verifying through
/// `q^precision` (or as far as `f` is known, if less).
pub fn solve_in_basis(f: &QSeries<Rational>, basis: &SpaceBasis, precision: usize) -> Result<Vec<Rational>> {
    if precision < basis.sturm_bound {
        return Err(Error::Precision(format!("precision {precision} below the Sturm bound")));
    }
    let span = basis.expansions(precision);
    solve_in_span(&(), f, &span, basis.sturm_bound + 1)
}
