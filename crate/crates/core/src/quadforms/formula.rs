use rayon::prelude::*;
use serde::Serialize;

use super::{classify, genfun, ExponentVector};
use crate::arith::Rational;
use crate::characters::DirichletChar;
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::spaces::{build_basis, solve_in_span, SpaceBasis, DEFAULT_PRECISION};

/// Coefficients of `∏ φ^{l_d}(dz)` against the ordered basis of its space.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormulaRow {
    pub l: ExponentVector,
    pub character: DirichletChar,
    pub eisenstein_coeffs: Vec<Rational>,
    pub cusp_coeffs: Vec<Rational>,
}

impl FormulaRow {
    /// Eisenstein coefficients followed by cusp coefficients.
    pub fn coefficients(&self) -> impl Iterator<Item = &Rational> {
        self.eisenstein_coeffs.iter().chain(&self.cusp_coeffs)
    }
}

fn row_from_solution(l: ExponentVector, basis: &SpaceBasis, mut x: Vec<Rational>) -> FormulaRow {
    let cusp_coeffs = x.split_off(basis.eisenstein_part.len());
    FormulaRow { l, character: basis.character, eisenstein_coeffs: x, cusp_coeffs }
}

/// Solve for the row of `l` using the first `sturm_bound + 1` coefficients,
/// re-verified through the default working precision.
pub fn derive_formula(l: ExponentVector) -> Result<FormulaRow> {
    let basis = build_basis(classify(l))?;
    let span = basis.expansions(DEFAULT_PRECISION);
    let x = solve_in_span(&(), &genfun(l, DEFAULT_PRECISION), &span, basis.sturm_bound + 1)?;
    Ok(row_from_solution(l, &basis, x))
}

/// Rows for every vector of character `chi` (all 84 when `None`), in
/// descending lexicographic order of `l`, verified through `q^precision`.
pub fn derive_all(chi: Option<DirichletChar>, precision: usize) -> Result<Vec<FormulaRow>> {
    if precision < crate::spaces::STURM_BOUND {
        return Err(Error::Precision(format!("precision {precision} below the Sturm bound")));
    }
    let mut ctx = Vec::new();
    for c in DirichletChar::NEBENTYPES {
        if chi.is_none_or(|x| x == c) {
            let basis = build_basis(c)?;
            let span = basis.expansions(precision);
            ctx.push((basis, span));
        }
    }
    let vectors: Vec<ExponentVector> =
        ExponentVector::all().into_iter().filter(|&l| chi.is_none_or(|c| classify(l) == c)).collect();
    vectors
        .par_iter()
        .map(|&l| {
            let (basis, span) = ctx.iter().find(|(b, _)| b.character == classify(l)).expect("built above");
            let x = solve_in_span(&(), &genfun(l, precision), span, basis.sturm_bound + 1)?;
            Ok(row_from_solution(l, basis, x))
        })
        .collect()
}

/// Evaluates formula rows of one character, holding the cusp-basis
/// expansions through a fixed precision.
pub struct FormulaEvaluator {
    basis: SpaceBasis,
    cusp: Vec<QSeries<Rational>>,
    precision: usize,
}

impl FormulaEvaluator {
    pub fn new(chi: DirichletChar, precision: usize) -> Result<Self> {
        let basis = build_basis(chi)?;
        let cusp = basis.cusp_expansions(precision);
        Ok(FormulaEvaluator { basis, cusp, precision })
    }

    pub fn character(&self) -> DirichletChar {
        self.basis.character
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// `Σ (Eisenstein coeff)·σ(n/t) + Σ (cusp coeff)·[qⁿ] Sⱼ`.
    pub fn eval(&self, row: &FormulaRow, n: u64) -> Result<Rational> {
        if row.character != self.basis.character {
            return Err(Error::UnsupportedCharacter(row.character.discriminant()));
        }
        if row.eisenstein_coeffs.len() != self.basis.eisenstein_part.len()
            || row.cusp_coeffs.len() != self.cusp.len()
        {
            return Err(Error::DimensionMismatch(format!("row {} does not fit the basis", row.l)));
        }
        if n as usize > self.precision {
            return Err(Error::Precision(format!("q^{n} beyond cached precision {}", self.precision)));
        }
        let n = n as i64;
        let eis: Rational = self
            .basis
            .eisenstein_part
            .iter()
            .zip(&row.eisenstein_coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(spec, c)| c * &spec.coefficient(n))
            .sum();
        let cusp: Rational = self
            .cusp
            .iter()
            .zip(&row.cusp_coeffs)
            .filter(|(_, c)| !c.is_zero())
            .map(|(s, c)| c * &s.q_coeff(n).expect("within cached precision"))
            .sum();
        Ok(eis + cusp)
    }
}

/// `N(1^{l₁} 2^{l₂} 3^{l₃} 6^{l₆}; n)` from a formula row.
pub fn rep_count_formula(row: &FormulaRow, n: u64) -> Result<Rational> {
    FormulaEvaluator::new(row.character, n as usize)?.eval(row, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadforms::rep_count_bruteforce;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn six_squares_row() {
        let row = derive_formula(ExponentVector::new(6, 0, 0, 0).unwrap()).unwrap();
        assert_eq!(row.character, DirichletChar::M4);
        assert_eq!(row.eisenstein_coeffs, ints(&[-4, 0, 0, 0, 16, 0, 0, 0]));
        assert_eq!(row.cusp_coeffs, ints(&[0, 0, 0, 0]));
        assert_eq!(rep_count_formula(&row, 2).unwrap(), Rational::from(60));
        assert_eq!(rep_count_formula(&row, 5).unwrap(), Rational::from(312));
    }

    #[test]
    fn chi_m3_row() {
        let row = derive_formula(ExponentVector::new(5, 0, 1, 0).unwrap()).unwrap();
        assert_eq!(row.eisenstein_coeffs, ints(&[1, -2, -8, 0, 9, 18, -72, 0]));
        assert_eq!(row.cusp_coeffs, ints(&[0, 0, 0, 0]));
    }

    #[test]
    fn chi_m24_row() {
        let row = derive_formula(ExponentVector::new(5, 0, 0, 1).unwrap()).unwrap();
        assert_eq!(row.eisenstein_coeffs, vec![q(-1, 23), q(144, 23), q(16, 23), q(-9, 23)]);
        assert_eq!(
            row.cusp_coeffs,
            vec![q(80, 23), q(480, 23), q(1600, 23), q(0, 1), q(320, 23), q(0, 1)]
        );
    }

    #[test]
    fn evaluator_rejects_mismatches() {
        let row = derive_formula(ExponentVector::new(6, 0, 0, 0).unwrap()).unwrap();
        let ev = FormulaEvaluator::new(DirichletChar::M3, 20).unwrap();
        assert!(ev.eval(&row, 3).is_err());
        let ev = FormulaEvaluator::new(DirichletChar::M4, 20).unwrap();
        assert!(matches!(ev.eval(&row, 21), Err(Error::Precision(_))));
    }

    #[test]
    fn derive_all_for_one_character() {
        let rows = derive_all(Some(DirichletChar::M8), 30).unwrap();
        assert_eq!(rows.len(), 20);
        let ev = FormulaEvaluator::new(DirichletChar::M8, 30).unwrap();
        for row in &rows {
            for n in 1..=30 {
                let count = rep_count_bruteforce(&row.l.form(), n) as i64;
                assert_eq!(ev.eval(row, n).unwrap(), Rational::from(count), "{} n={n}", row.l);
            }
        }
    }
}
