//! Matrices over the Laurent polynomial ring.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use super::laurent::LaurentPoly;
use super::rational::{Rational, RationalMatrix};
use super::AlgebraError;

/// Matrices with both dimensions below this bound are stored densely.
pub const DENSE_LIMIT: usize = 64;

#[derive(Clone, Debug)]
enum Storage {
    Dense(Vec<LaurentPoly>),
    Sparse(BTreeMap<(usize, usize), LaurentPoly>),
}

/// A `rows x cols` matrix of Laurent polynomials in `num_vars` variables.
///
/// Cellular coboundaries are mostly zero, so large matrices keep only their
/// nonzero entries in coordinate form; small ones use a dense array.
#[derive(Clone, Debug)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    num_vars: usize,
    storage: Storage,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize, num_vars: usize) -> Self {
        let storage = if rows < DENSE_LIMIT && cols < DENSE_LIMIT {
            Storage::Dense(vec![LaurentPoly::zero(num_vars); rows * cols])
        } else {
            Storage::Sparse(BTreeMap::new())
        };
        LaurentMatrix {
            rows,
            cols,
            num_vars,
            storage,
        }
    }

    /// Builds a matrix from `(row, col, entry)` triples. Repeated positions
    /// are summed.
    pub fn from_entries<I>(
        rows: usize,
        cols: usize,
        num_vars: usize,
        entries: I,
    ) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (usize, usize, LaurentPoly)>,
    {
        let mut m = Self::zeros(rows, cols, num_vars);
        for (i, j, p) in entries {
            if i >= rows || j >= cols {
                return Err(AlgebraError::ShapeMismatch(format!(
                    "entry ({i}, {j}) outside a {rows}x{cols} matrix"
                )));
            }
            if p.num_vars() != num_vars {
                return Err(AlgebraError::VarCountMismatch {
                    expected: num_vars,
                    found: p.num_vars(),
                });
            }
            let sum = match m.get(i, j) {
                Some(old) => old + &p,
                None => p,
            };
            m.set(i, j, sum);
        }
        Ok(m)
    }

    pub fn from_rows(num_vars: usize, rows: Vec<Vec<LaurentPoly>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(AlgebraError::ShapeMismatch("ragged matrix rows".into()));
        }
        let entries = rows
            .into_iter()
            .enumerate()
            .flat_map(|(i, r)| r.into_iter().enumerate().map(move |(j, p)| (i, j, p)));
        Self::from_entries(nrows, ncols, num_vars, entries)
    }

    pub fn from_rational(m: &RationalMatrix, num_vars: usize) -> Self {
        let entries = (0..m.rows()).flat_map(|i| {
            (0..m.cols()).filter_map(move |j| {
                let c = &m[(i, j)];
                (!c.is_zero()).then(|| (i, j, LaurentPoly::constant(num_vars, c.clone())))
            })
        });
        Self::from_entries(m.rows(), m.cols(), num_vars, entries).expect("shapes agree")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn is_sparse(&self) -> bool {
        matches!(self.storage, Storage::Sparse(_))
    }

    /// Entry at `(i, j)`, or `None` when it is zero.
    pub fn get(&self, i: usize, j: usize) -> Option<&LaurentPoly> {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        let p = match &self.storage {
            Storage::Dense(v) => &v[i * self.cols + j],
            Storage::Sparse(m) => m.get(&(i, j))?,
        };
        (!p.is_zero()).then_some(p)
    }

    /// Entry at `(i, j)` as an owned value (zero polynomial when absent).
    pub fn entry(&self, i: usize, j: usize) -> LaurentPoly {
        self.get(i, j)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(self.num_vars))
    }

    pub fn set(&mut self, i: usize, j: usize, p: LaurentPoly) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        assert_eq!(p.num_vars(), self.num_vars, "num_vars mismatch");
        match &mut self.storage {
            Storage::Dense(v) => v[i * self.cols + j] = p,
            Storage::Sparse(m) => {
                if p.is_zero() {
                    m.remove(&(i, j));
                } else {
                    m.insert((i, j), p);
                }
            }
        }
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> Box<dyn Iterator<Item = (usize, usize, &LaurentPoly)> + '_> {
        match &self.storage {
            Storage::Dense(v) => {
                let cols = self.cols;
                Box::new(
                    v.iter()
                        .enumerate()
                        .filter(|(_, p)| !p.is_zero())
                        .map(move |(k, p)| (k / cols, k % cols, p)),
                )
            }
            Storage::Sparse(m) => Box::new(m.iter().map(|(&(i, j), p)| (i, j, p))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.nonzero_entries().next().is_none()
    }

    pub fn to_dense_rows(&self) -> Vec<Vec<LaurentPoly>> {
        let mut out = vec![vec![LaurentPoly::zero(self.num_vars); self.cols]; self.rows];
        for (i, j, p) in self.nonzero_entries() {
            out[i][j] = p.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let entries: Vec<_> = self
            .nonzero_entries()
            .map(|(i, j, p)| (j, i, p.clone()))
            .collect();
        Self::from_entries(self.cols, self.rows, self.num_vars, entries).expect("shapes agree")
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        if self.num_vars != rhs.num_vars {
            return Err(AlgebraError::VarCountMismatch {
                expected: self.num_vars,
                found: rhs.num_vars,
            });
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &LaurentPoly)>> = BTreeMap::new();
        for (k, j, p) in rhs.nonzero_entries() {
            by_row.entry(k).or_default().push((j, p));
        }
        let mut acc: BTreeMap<(usize, usize), LaurentPoly> = BTreeMap::new();
        for (i, k, a) in self.nonzero_entries() {
            let Some(row) = by_row.get(&k) else { continue };
            for &(j, b) in row {
                let prod = a.try_mul(b)?;
                let slot = acc
                    .entry((i, j))
                    .or_insert_with(|| LaurentPoly::zero(self.num_vars));
                *slot = &*slot + &prod;
            }
        }
        Self::from_entries(
            self.rows,
            rhs.cols,
            self.num_vars,
            acc.into_iter().map(|((i, j), p)| (i, j, p)),
        )
    }

    /// Multiplies row `i` by the monomial `x^shift` (a unit of the ring).
    pub fn shift_row(&mut self, i: usize, shift: &[i64]) -> Result<(), AlgebraError> {
        for j in 0..self.cols {
            if let Some(p) = self.get(i, j) {
                let q = p.shift(shift)?;
                self.set(i, j, q);
            }
        }
        Ok(())
    }

    pub fn permute(&self, row_perm: &[usize], col_perm: &[usize]) -> Self {
        let entries: Vec<_> = self
            .nonzero_entries()
            .map(|(i, j, p)| (row_perm[i], col_perm[j], p.clone()))
            .collect();
        Self::from_entries(self.rows, self.cols, self.num_vars, entries).expect("permutation")
    }

    /// Substitutes a rational point into every entry.
    pub fn eval_rational(&self, point: &[Rational]) -> Result<RationalMatrix, AlgebraError> {
        super::laurent::check_point(self.num_vars, point)?;
        let mut m = RationalMatrix::zeros(self.rows, self.cols);
        for (i, j, p) in self.nonzero_entries() {
            m[(i, j)] = p.eval_rational(point)?;
        }
        Ok(m)
    }

    /// Substitutes `x_j = exp(-t a_j)` into every entry.
    pub fn eval_curve(&self, t: f64, periods: &[f64]) -> Result<nalgebra::DMatrix<f64>, AlgebraError> {
        if periods.len() != self.num_vars {
            return Err(AlgebraError::VarCountMismatch {
                expected: self.num_vars,
                found: periods.len(),
            });
        }
        let mut m = nalgebra::DMatrix::zeros(self.rows, self.cols);
        for (i, j, p) in self.nonzero_entries() {
            m[(i, j)] = p.eval_curve(t, periods)?;
        }
        Ok(m)
    }
}

impl PartialEq for LaurentMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self.num_vars == other.num_vars
            && self.nonzero_entries().eq(other.nonzero_entries())
    }
}

impl Eq for LaurentMatrix {}

impl fmt::Display for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_dense_rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::rational;

    #[test]
    fn dense_and_sparse_agree() {
        let x = LaurentPoly::var(1, 0);
        let small = LaurentMatrix::from_entries(3, 3, 1, vec![(0, 1, x.clone())]).unwrap();
        let large = LaurentMatrix::from_entries(70, 3, 1, vec![(0, 1, x.clone())]).unwrap();
        assert!(!small.is_sparse());
        assert!(large.is_sparse());
        assert_eq!(small.get(0, 1), Some(&x));
        assert_eq!(large.get(0, 1), Some(&x));
        assert_eq!(large.get(69, 2), None);
        assert_eq!(large.nonzero_entries().count(), 1);
    }

    #[test]
    fn rejects_mixed_var_counts() {
        let err = LaurentMatrix::from_entries(1, 1, 2, vec![(0, 0, LaurentPoly::var(1, 0))]);
        assert_eq!(
            err.unwrap_err(),
            AlgebraError::VarCountMismatch { expected: 2, found: 1 }
        );
    }

    #[test]
    fn product_of_torus_coboundaries_vanishes() {
        let nv = 2;
        let one = LaurentPoly::one(nv);
        let x = &LaurentPoly::var(nv, 0) - &one;
        let y = &LaurentPoly::var(nv, 1) - &one;
        let d0 = LaurentMatrix::from_rows(nv, vec![vec![x.clone()], vec![y.clone()]]).unwrap();
        let d1 = LaurentMatrix::from_rows(nv, vec![vec![-&y, x]]).unwrap();
        assert!(d1.try_mul(&d0).unwrap().is_zero());
    }

    #[test]
    fn rational_round_trip() {
        let r = RationalMatrix::from_i64(&[&[1, 0], &[0, -2]]);
        let m = LaurentMatrix::from_rational(&r, 0);
        assert_eq!(m.eval_rational(&[]).unwrap(), r);
        assert_eq!(m.get(1, 1).unwrap(), &LaurentPoly::constant(0, rational(-2)));
    }
}
