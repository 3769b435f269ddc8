use std::fmt;
use std::ops::{Deref, Index};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// A point or direction with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatVector(Vec<Rational>);

impl RatVector {
    pub fn new(entries: Vec<Rational>) -> Self {
        RatVector(entries)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        RatVector(entries.iter().map(|&x| Rational::from_integer(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    /// Integer coordinates, if every entry is an `i64` integer.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0.iter().map(Rational::to_i64).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rational::is_integer)
    }

    fn check_dim(&self, other: &RatVector) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }

    pub fn dot(&self, other: &RatVector) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn checked_dot(&self, other: &RatVector) -> Result<Rational> {
        self.check_dim(other)?;
        Ok(self.dot(other))
    }

    pub fn add(&self, other: &RatVector) -> RatVector {
        debug_assert_eq!(self.dim(), other.dim());
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RatVector) -> RatVector {
        debug_assert_eq!(self.dim(), other.dim());
        RatVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> RatVector {
        RatVector(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> RatVector {
        RatVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn sum<'a>(dim: usize, items: impl IntoIterator<Item = &'a RatVector>) -> RatVector {
        let mut acc = RatVector::zeros(dim);
        for v in items {
            for (a, b) in acc.0.iter_mut().zip(&v.0) {
                *a += b;
            }
        }
        acc
    }
}

impl Deref for RatVector {
    type Target = [Rational];
    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl From<Vec<Rational>> for RatVector {
    fn from(v: Vec<Rational>) -> Self {
        RatVector(v)
    }
}

impl fmt::Debug for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(RatMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&x| Rational::from_integer(x)).collect(),
        )
    }

    pub fn from_rows(rows: &[RatVector]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.dim());
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: r.dim(),
                });
            }
            entries.extend(r.iter().cloned());
        }
        Self::new(rows.len(), cols, entries)
    }

    pub fn from_cols(cols: &[RatVector]) -> Result<Self> {
        Ok(Self::from_rows(cols)?.transpose())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> RatVector {
        RatVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn col(&self, j: usize) -> RatVector {
        RatVector::new((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &RatVector) -> Result<RatVector> {
        if self.cols != v.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.dim(),
            });
        }
        Ok(RatVector::new(
            (0..self.rows).map(|i| self.row(i).dot(v)).collect(),
        ))
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * s).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    /// Exact determinant.
    ///
    /// Rows are first scaled to integers by the lcm of their denominators,
    /// then reduced with Bareiss fraction-free elimination; every division
    /// in the elimination is exact.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        for i in 0..n {
            let lcm = (0..n).fold(BigInt::one(), |l, j| l.lcm(&self.get(i, j).denom()));
            a.push(
                (0..n)
                    .map(|j| {
                        let x = self.get(i, j);
                        x.numer() * (&lcm / x.denom())
                    })
                    .collect(),
            );
            scale *= lcm;
        }
        let det = bareiss_det(a);
        Rational::from_bigints(det, scale)
    }

    /// Solve `self * x = b` exactly; `Ok(None)` when the matrix is singular.
    pub fn solve(&self, b: &RatVector) -> Result<Option<RatVector>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if b.dim() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.dim(),
            });
        }
        let n = self.rows;
        let mut aug: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                let mut row: Vec<Rational> = (0..n).map(|j| self.get(i, j).clone()).collect();
                row.push(b[i].clone());
                row
            })
            .collect();
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| !aug[r][col].is_zero()) else {
                return Ok(None);
            };
            aug.swap(col, pivot);
            let inv = aug[col][col].recip()?;
            for j in col..=n {
                let v = &aug[col][j] * &inv;
                aug[col][j] = v;
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for j in col..=n {
                        let v = &aug[col][j] * &f;
                        aug[r][j] -= v;
                    }
                }
            }
        }
        Ok(Some(RatVector::new(
            aug.into_iter().map(|mut r| r.pop().unwrap()).collect(),
        )))
    }

    pub fn inverse(&self) -> Result<Option<RatMatrix>> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            match self.solve(&RatVector::unit(n, j))? {
                Some(c) => cols.push(c),
                None => return Ok(None),
            }
        }
        Ok(Some(RatMatrix::from_cols(&cols)?))
    }

    /// Rank by exact row reduction.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..self.rows {
                if m[r][col].is_zero() {
                    continue;
                }
                let f = &m[r][col] / &m[rank][col];
                for j in col..self.cols {
                    let v = &m[rank][j] * &f;
                    m[r][j] -= v;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

fn bareiss_det(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k] == BigInt::from(0) {
            match (k + 1..n).find(|&r| a[r][k] != BigInt::from(0)) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::from(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        self.get(i, j)
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        f.write_str("]")
    }
}

/// Exact determinant of a square matrix.
pub fn det(m: &RatMatrix) -> Result<Rational> {
    m.det()
}

/// Exact solution of `a * x = b`, or `None` when `a` is singular.
pub fn solve_linear(a: &RatMatrix, b: &RatVector) -> Result<Option<RatVector>> {
    a.solve(b)
}

/// Integer entries and determinant `±1`. Non-square input is never unimodular.
pub fn is_unimodular(m: &RatMatrix) -> bool {
    m.is_square() && m.is_integral() && m.det().map(|d| d.abs() == Rational::one()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: usize, cols: usize, e: &[i64]) -> RatMatrix {
        RatMatrix::from_ints(rows, cols, e).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&RatMatrix::identity(2)).unwrap(), Rational::one());
        assert_eq!(det(&m(2, 2, &[1, 1, 0, 1])).unwrap(), Rational::one());
        // edge matrix of S2 scaled by 1/3: columns ((2,-1)-(-1,2))/3 and ((-1,-1)-(-1,2))/3
        let c1 = RatVector::new(vec![q(1, 1), q(-1, 1)]);
        let c2 = RatVector::new(vec![q(0, 1), q(-1, 1)]);
        let d = det(&RatMatrix::from_cols(&[c1, c2]).unwrap()).unwrap();
        assert_eq!(d.abs(), Rational::one());
        assert!(matches!(
            det(&m(2, 3, &[1, 2, 3, 4, 5, 6])),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn det_rational_and_swaps() {
        let a = RatMatrix::new(
            3,
            3,
            vec![
                q(0, 1),
                q(1, 2),
                q(1, 3),
                q(2, 1),
                q(0, 1),
                q(1, 1),
                q(1, 4),
                q(1, 1),
                q(0, 1),
            ],
        )
        .unwrap();
        // cofactor expansion along the first row:
        // -1/2 * (2*0 - 1*1/4) + 1/3 * (2*1 - 0*1/4) = 1/8 + 2/3
        assert_eq!(a.det().unwrap(), q(19, 24));
    }

    #[test]
    fn solve_examples() {
        let b = RatVector::from_ints(&[3, -4]);
        assert_eq!(
            solve_linear(&RatMatrix::identity(2), &b).unwrap(),
            Some(b.clone())
        );
        let x = solve_linear(&m(2, 2, &[2, 0, 0, 2]), &RatVector::from_ints(&[1, 1]))
            .unwrap()
            .unwrap();
        assert_eq!(x, RatVector::new(vec![q(1, 2), q(1, 2)]));
        assert_eq!(
            solve_linear(&m(2, 2, &[1, 1, 1, 1]), &RatVector::from_ints(&[0, 1])).unwrap(),
            None
        );
        assert!(solve_linear(&m(2, 2, &[1, 0, 0, 1]), &RatVector::from_ints(&[1])).is_err());
    }

    #[test]
    fn unimodular_examples() {
        assert!(is_unimodular(&RatMatrix::identity(3)));
        assert!(is_unimodular(&m(2, 2, &[1, 1, 0, 1])));
        assert!(!is_unimodular(&m(2, 2, &[2, 0, 0, 1])));
        let half = RatMatrix::new(1, 1, vec![q(1, 2)]).unwrap();
        assert!(!is_unimodular(&half));
    }

    #[test]
    fn inverse_and_rank() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), RatMatrix::identity(2));
        assert_eq!(m(2, 2, &[1, 2, 2, 4]).rank(), 1);
        assert_eq!(m(2, 3, &[1, 2, 3, 0, 0, 1]).rank(), 2);
        assert_eq!(RatMatrix::zeros(3, 2).rank(), 0);
    }
}
