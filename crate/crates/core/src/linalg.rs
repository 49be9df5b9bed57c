//! Exact rational linear algebra.
//!
//! A linear map `f: Q^a -> Q^b` is stored as a `b x a` matrix acting on
//! column vectors, so composition `g . f` is the product `G * F`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape mismatch: {left:?} vs {right:?} in {op}")]
    ShapeMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("matrix is singular (rank {rank} < {size})")]
    Singular { rank: usize, size: usize },
    #[error("linear system has no solution")]
    Inconsistent,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: RationalMatrix,
    pub pivots: Vec<usize>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::ShapeMismatch {
                op: "from_entries",
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    /// Builds a matrix from integer rows. Panics on ragged input; meant for
    /// literals.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut entries = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), ncols, "ragged matrix literal");
            entries.extend(r.iter().map(|&x| rat(x)));
        }
        RationalMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    pub fn from_rows(rows: &[Vec<Rational>], cols: usize) -> Result<Self, LinalgError> {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinalgError::ShapeMismatch {
                    op: "from_rows",
                    left: (rows.len(), cols),
                    right: (1, r.len()),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(LinalgError::ShapeMismatch {
                    op: "from_columns",
                    left: (rows, columns.len()),
                    right: (c.len(), 1),
                });
            }
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// `self * rhs`, i.e. the map "first `rhs`, then `self`".
    pub fn compose(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "compose",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::ShapeMismatch {
                op: "apply",
                left: self.shape(),
                right: (v.len(), 1),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn add(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        self.zip_with(rhs, "add", |a, b| a + b)
    }

    pub fn sub(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        self.zip_with(rhs, "sub", |a, b| a - b)
    }

    fn zip_with(
        &self,
        rhs: &RationalMatrix,
        op: &'static str,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RationalMatrix, LinalgError> {
        if self.shape() != rhs.shape() {
            return Err(LinalgError::ShapeMismatch {
                op,
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| f(a, b)).collect(),
        })
    }

    /// Block row `[self | rhs]`.
    pub fn hstack(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "hstack",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut out = Self::zeros(self.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..rhs.cols {
                out[(i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        Ok(out)
    }

    /// Block column `[self; rhs]`.
    pub fn vstack(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.cols != rhs.cols {
            return Err(LinalgError::ShapeMismatch {
                op: "vstack",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(rhs.entries.iter().cloned());
        Ok(RationalMatrix {
            rows: self.rows + rhs.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Block diagonal `diag(self, rhs)`.
    pub fn direct_sum(&self, rhs: &RationalMatrix) -> RationalMatrix {
        let mut out = Self::zeros(self.rows + rhs.rows, self.cols + rhs.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..rhs.rows {
            for j in 0..rhs.cols {
                out[(self.rows + i, self.cols + j)] = rhs[(i, j)].clone();
            }
        }
        out
    }

    /// Reduced row-echelon form. The pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn echelon(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m[(i, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].recip();
            for j in col..m.cols {
                let x = &m[(row, j)] * &inv;
                m[(row, j)] = x;
            }
            for i in 0..m.rows {
                if i == row || m[(i, col)].is_zero() {
                    continue;
                }
                let factor = m[(i, col)].clone();
                for j in col..m.cols {
                    let d = &factor * &m[(row, j)];
                    m[(i, j)] -= d;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Rank together with a kernel basis stored as the columns of a
    /// `cols x (cols - rank)` matrix. Free variables are taken in ascending
    /// column order; the basis vector for free column `f` has a 1 in slot `f`.
    pub fn kernel_and_rank(&self) -> (usize, RationalMatrix) {
        let Echelon { reduced, pivots } = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Self::zeros(self.cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -reduced[(r, f)].clone();
            }
        }
        (pivots.len(), basis)
    }

    pub fn kernel(&self) -> RationalMatrix {
        self.kernel_and_rank().1
    }

    pub fn inverse(&self) -> Result<RationalMatrix, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let aug = self.hstack(&Self::identity(n))?;
        let Echelon { reduced, pivots } = aug.echelon();
        let rank = pivots.iter().filter(|&&p| p < n).count();
        if rank < n {
            return Err(LinalgError::Singular { rank, size: n });
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = reduced[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Solves `self * X = rhs` for `X`, requiring `self` to have full column
    /// rank so the solution is unique.
    pub fn solve(&self, rhs: &RationalMatrix) -> Result<RationalMatrix, LinalgError> {
        if self.rows != rhs.rows {
            return Err(LinalgError::ShapeMismatch {
                op: "solve",
                left: self.shape(),
                right: rhs.shape(),
            });
        }
        let n = self.cols;
        let Echelon { reduced, pivots } = self.hstack(rhs)?.echelon();
        if pivots.iter().any(|&p| p >= n) {
            return Err(LinalgError::Inconsistent);
        }
        if pivots.len() < n {
            return Err(LinalgError::Singular {
                rank: pivots.len(),
                size: n,
            });
        }
        let mut x = Self::zeros(n, rhs.cols);
        for i in 0..n {
            for j in 0..rhs.cols {
                x[(i, j)] = reduced[(i, n + j)].clone();
            }
        }
        Ok(x)
    }

    /// Maximum absolute entry; useful when reporting perturbations.
    pub fn max_abs(&self) -> Rational {
        self.entries
            .iter()
            .map(|x| x.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

impl std::ops::Index<(usize, usize)> for RationalMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for RationalMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        if self.rows == 0 {
            write!(f, "0x{}", self.cols)?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_full_rank_and_no_kernel() {
        let (rank, ker) = RationalMatrix::identity(2).kernel_and_rank();
        assert_eq!(rank, 2);
        assert_eq!(ker.shape(), (2, 0));
    }

    #[test]
    fn zero_matrix_kernel_is_everything() {
        let (rank, ker) = RationalMatrix::zeros(3, 4).kernel_and_rank();
        assert_eq!(rank, 0);
        assert_eq!(ker, RationalMatrix::identity(4));
    }

    #[test]
    fn kernel_of_pushforward_table() {
        let g = RationalMatrix::from_i64_rows(&[[1, 0, 2, 1], [0, 1, -1, 0]]);
        let (rank, ker) = g.kernel_and_rank();
        assert_eq!(rank, 2);
        let expected = RationalMatrix::from_i64_rows(&[[-2, -1], [1, 0], [1, 0], [0, 1]]);
        assert_eq!(ker, expected);
        assert!(g.compose(&ker).unwrap().is_zero());
    }

    #[test]
    fn inverse_of_half_monodromy_is_itself() {
        let m = RationalMatrix::from_i64_rows(&[[1, 2], [0, -1]]);
        assert_eq!(m.inverse().unwrap(), m);
        assert!(m.compose(&m).unwrap().is_identity());
    }

    #[test]
    fn inverse_identity_and_singular() {
        let id = RationalMatrix::identity(3);
        assert_eq!(id.inverse().unwrap(), id);
        let s = RationalMatrix::from_i64_rows(&[[1, 1], [1, 1]]);
        assert_eq!(s.inverse(), Err(LinalgError::Singular { rank: 1, size: 2 }));
        let rect = RationalMatrix::zeros(2, 3);
        assert_eq!(rect.inverse(), Err(LinalgError::NotSquare(2, 3)));
    }

    #[test]
    fn inverse_with_fractions() {
        let m = RationalMatrix::from_i64_rows(&[[2, 1], [1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, RationalMatrix::from_i64_rows(&[[1, -1], [-1, 2]]));
        let h = RationalMatrix::from_i64_rows(&[[2, 0], [0, 3]]).inverse().unwrap();
        assert_eq!(h[(0, 0)], ratio(1, 2));
        assert_eq!(h[(1, 1)], ratio(1, 3));
    }

    #[test]
    fn compose_checks_shapes() {
        let a = RationalMatrix::zeros(2, 3);
        let b = RationalMatrix::zeros(2, 3);
        assert!(matches!(a.compose(&b), Err(LinalgError::ShapeMismatch { .. })));
        assert_eq!(a.compose(&RationalMatrix::identity(3)).unwrap(), a);
    }

    #[test]
    fn empty_matrices_compose() {
        let a = RationalMatrix::zeros(2, 0);
        let b = RationalMatrix::zeros(0, 3);
        assert_eq!(a.compose(&b).unwrap(), RationalMatrix::zeros(2, 3));
        assert!(RationalMatrix::identity(0).is_identity());
        assert_eq!(RationalMatrix::identity(0).inverse().unwrap().shape(), (0, 0));
    }

    #[test]
    fn solve_recovers_coordinates() {
        let k = RationalMatrix::from_i64_rows(&[[-2, -1], [1, 0], [1, 0], [0, 1]]);
        let y = RationalMatrix::from_i64_rows(&[[3], [-1]]);
        let rhs = k.compose(&y).unwrap();
        assert_eq!(k.solve(&rhs).unwrap(), y);
        let outside = RationalMatrix::from_i64_rows(&[[1], [0], [0], [0]]);
        assert_eq!(k.solve(&outside), Err(LinalgError::Inconsistent));
    }

    #[test]
    fn display_is_compact() {
        let m = RationalMatrix::from_entries(1, 2, vec![ratio(1, 2), rat(-3)]).unwrap();
        assert_eq!(m.to_string(), "[[1/2, -3]]");
    }
}
