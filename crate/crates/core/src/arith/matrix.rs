use super::Scalar;
use crate::error::{Error, Result};

/// Dense row-major matrix over an exact field.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactMatrix<S: Scalar> {
    field: S::Field,
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

/// Outcome of [`ExactMatrix::solve`].
#[derive(Clone, Debug, PartialEq)]
pub enum LinearSolution<S> {
    Unique(Vec<S>),
    /// Some row reduces to `0 = c` with `c != 0`.
    Inconsistent,
    /// Consistent, with a solution space of the given dimension.
    Underdetermined { free_variables: usize },
}

impl<S> LinearSolution<S> {
    pub fn unique(self) -> Option<Vec<S>> {
        match self {
            LinearSolution::Unique(x) => Some(x),
            _ => None,
        }
    }
}

impl<S: Scalar> ExactMatrix<S> {
    pub fn new(field: S::Field, rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(ExactMatrix { field, rows, cols, entries })
    }

    pub fn from_rows(field: S::Field, rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn zeros(field: S::Field, rows: usize, cols: usize) -> Self {
        let entries = vec![S::zero(&field); rows * cols];
        ExactMatrix { field, rows, cols, entries }
    }

    pub fn identity(field: S::Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.entries[i * n + i] = S::one(&m.field);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: S) {
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(S::zero(&self.field), |acc, (a, b)| acc.plus(&a.times(b)))
            })
            .collect())
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        work.row_reduce(self.cols).len()
    }

    /// A basis of the right null space `{x : self * x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<S>> {
        let mut work = self.clone();
        let pivots = work.row_reduce(self.cols);
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![S::zero(&self.field); self.cols];
                v[free] = S::one(&self.field);
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = work.get(row, free).negated();
                }
                v
            })
            .collect()
    }

    /// Solve `self * x = y`.
    pub fn solve(&self, y: &[S]) -> Result<LinearSolution<S>> {
        if y.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                y.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let mut aug = ExactMatrix::zeros(self.field.clone(), self.rows, n + 1);
        for r in 0..self.rows {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n, y[r].clone());
        }
        let pivots = aug.row_reduce(n);
        // Rows past the pivot rows have zero coefficient part.
        if (pivots.len()..self.rows).any(|r| !aug.get(r, n).is_zero()) {
            return Ok(LinearSolution::Inconsistent);
        }
        if pivots.len() < n {
            return Ok(LinearSolution::Underdetermined { free_variables: n - pivots.len() });
        }
        Ok(LinearSolution::Unique((0..n).map(|r| aug.get(r, n).clone()).collect()))
    }

    /// Gauss-Jordan elimination on the first `pivot_cols` columns, taking the
    /// first nonzero entry of each column as pivot. Returns the pivot columns;
    /// pivot `i` ends up in row `i` with value 1.
    fn row_reduce(&mut self, pivot_cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..pivot_cols {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = self.get(row, col).inverse().expect("nonzero pivot in a field");
            for c in col..self.cols {
                let v = self.get(row, c).times(&inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = self.get(r, c).minus(&factor.times(self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Solve `a * x = y`, reporting inconsistency and underdetermination
/// separately.
pub fn solve_linear<S: Scalar>(a: &ExactMatrix<S>, y: &[S]) -> Result<LinearSolution<S>> {
    a.solve(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p, d).unwrap()
    }

    fn mat(rows: &[&[i64]]) -> ExactMatrix<Rational> {
        let rows = rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect();
        ExactMatrix::from_rows((), rows).unwrap()
    }

    #[test]
    fn identity_system() {
        let a = ExactMatrix::<Rational>::identity((), 2);
        let y = vec![q(3, 1), q(1, 2)];
        assert_eq!(solve_linear(&a, &y).unwrap(), LinearSolution::Unique(y));
    }

    #[test]
    fn two_by_two() {
        let a = mat(&[&[1, 1], &[1, -1]]);
        let sol = solve_linear(&a, &[q(2, 1), q(0, 1)]).unwrap();
        assert_eq!(sol, LinearSolution::Unique(vec![q(1, 1), q(1, 1)]));
    }

    #[test]
    fn inconsistent_and_underdetermined() {
        let a = mat(&[&[1, 1], &[2, 2]]);
        assert_eq!(solve_linear(&a, &[q(1, 1), q(3, 1)]).unwrap(), LinearSolution::Inconsistent);
        assert_eq!(
            solve_linear(&a, &[q(1, 1), q(2, 1)]).unwrap(),
            LinearSolution::Underdetermined { free_variables: 1 }
        );
    }

    #[test]
    fn overdetermined_consistent() {
        let a = mat(&[&[1, 0], &[0, 1], &[1, 1]]);
        let sol = solve_linear(&a, &[q(2, 1), q(3, 1), q(5, 1)]).unwrap();
        assert_eq!(sol.unique(), Some(vec![q(2, 1), q(3, 1)]));
    }

    #[test]
    fn kernel_vectors() {
        let a = mat(&[&[1, 2, 3], &[2, 4, 6]]);
        let k = a.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(a.mul_vec(v).unwrap().iter().all(Rational::is_zero));
        }
        assert!(ExactMatrix::<Rational>::identity((), 3).kernel().is_empty());
    }

    #[test]
    fn dimension_mismatch() {
        let a = mat(&[&[1, 0], &[0, 1]]);
        assert!(matches!(solve_linear(&a, &[q(1, 1)]), Err(Error::DimensionMismatch(_))));
        assert!(ExactMatrix::<Rational>::new((), 2, 2, vec![q(1, 1)]).is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(ExactMatrix::<Rational>::identity((), 3).rank(), 3);
        assert_eq!(ExactMatrix::<Rational>::zeros((), 2, 5).rank(), 0);
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn solution_satisfies_system(rows in small_matrix(), seed in prop::collection::vec(-5i64..5, 4)) {
            let a = ExactMatrix::<Rational>::from_rows((), rows.iter().map(|r| r.iter().map(|&x| Rational::from(x)).collect()).collect()).unwrap();
            let y: Vec<Rational> = (0..a.rows()).map(|i| Rational::from(seed[i % seed.len()])).collect();
            if let LinearSolution::Unique(x) = a.solve(&y).unwrap() {
                prop_assert_eq!(a.mul_vec(&x).unwrap(), y);
            }
        }

        #[test]
        fn rank_invariant_under_row_ops(rows in small_matrix(), i in 0usize..4, j in 0usize..4, s in 1i64..5) {
            let r = rows.len();
            let (i, j) = (i % r, j % r);
            let base = mat(&rows.iter().map(Vec::as_slice).collect::<Vec<_>>());
            let mut swapped = rows.clone();
            swapped.swap(i, j);
            let mut scaled = rows.clone();
            for x in scaled[i].iter_mut() { *x *= -s; }
            prop_assert_eq!(base.rank(), mat(&swapped.iter().map(Vec::as_slice).collect::<Vec<_>>()).rank());
            prop_assert_eq!(base.rank(), mat(&scaled.iter().map(Vec::as_slice).collect::<Vec<_>>()).rank());
        }
    }
}
