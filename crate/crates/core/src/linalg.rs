//! Dense matrices over the rationals.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::fmt;

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

/// Result of row reduction: reduced matrix and pivot columns.
pub struct Rref {
    pub mat: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q::one();
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        assert_eq!(vals.len(), rows * cols);
        Matrix { rows, cols, data: vals.iter().map(|&v| q(v)).collect() }
    }

    pub fn from_rows(rows: &[Vec<Q>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (c, v) in row.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        m
    }

    pub fn from_cols(cols: &[Vec<Q>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (c, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, v) in col.iter().enumerate() {
                m[(r, c)] = v.clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn row(&self, r: usize) -> Vec<Q> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn col(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect();
        Matrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for c in 0..self.cols {
                    if !v[c].is_zero() {
                        acc += &self[(r, c)] * &v[c];
                    }
                }
                acc
            })
            .collect()
    }

    /// Horizontal concatenation.
    pub fn hcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                m[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                m[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        m
    }

    pub fn vcat(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block placement: copy `b` into self at (r0, c0).
    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Matrix) {
        for r in 0..b.rows {
            for c in 0..b.cols {
                self[(r0 + r, c0 + c)] = b[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        let mut m = Matrix::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = self[(r0 + r, c0 + c)].clone();
            }
        }
        m
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if a.is_zero() {
                    continue;
                }
                for rr in 0..other.rows {
                    for cc in 0..other.cols {
                        m[(r * other.rows + rr, c * other.cols + cc)] = a * &other[(rr, cc)];
                    }
                }
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else { continue };
            if p != row {
                for c in 0..m.cols {
                    m.data.swap(p * m.cols + c, row * m.cols + c);
                }
            }
            let inv = m[(row, col)].recip();
            for c in col..m.cols {
                let v = &m[(row, c)] * &inv;
                m[(row, c)] = v;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let f = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let v = &m[(r, c)] - &f * &m[(row, c)];
                    m[(r, c)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of {x : A x = 0}, one vector per free column, echelonized.
    pub fn nullspace(&self) -> Vec<Vec<Q>> {
        let Rref { mat, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q::zero(); self.cols];
            v[free] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -mat[(r, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Basis of {y : y A = 0} as row vectors.
    pub fn left_nullspace(&self) -> Vec<Vec<Q>> {
        self.transpose().nullspace()
    }

    /// Solve A X = B; returns one solution if it exists.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows);
        let aug = self.hcat(b);
        let Rref { mat, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, b.cols);
        for (r, &p) in pivots.iter().enumerate() {
            for c in 0..b.cols {
                x[(p, c)] = mat[(r, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let x = self.solve(&Matrix::identity(self.rows))?;
        if self.mul(&x) == Matrix::identity(self.rows) {
            Some(x)
        } else {
            None
        }
    }

    /// Integer entries, if every entry is integral.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.data
            .iter()
            .map(|v| if v.is_integer() { num::ToPrimitive::to_i64(&v.to_integer()) } else { None })
            .collect()
    }
}

/// Rank of a family of vectors of common length.
pub fn rank_of(vectors: &[Vec<Q>], len: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_rows(vectors, len).rank()
}

/// Indices of standard basis vectors completing the column span of `span` to the full space.
pub fn complement_by_standard(span: &[Vec<Q>], len: usize) -> Vec<usize> {
    let mut rows: Vec<Vec<Q>> = span.to_vec();
    let mut r = rank_of(&rows, len);
    let mut picked = Vec::new();
    for i in 0..len {
        if r == len {
            break;
        }
        let mut e = vec![Q::zero(); len];
        e[i] = Q::one();
        rows.push(e);
        let r2 = rank_of(&rows, len);
        if r2 > r {
            picked.push(i);
            r = r2;
        } else {
            rows.pop();
        }
    }
    picked
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one() {
        let a = Matrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(a.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn inverse_roundtrip() {
        let a = Matrix::from_i64(2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv.to_i64().unwrap(), vec![1, -1, -1, 2]);
        assert!(Matrix::from_i64(2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn complement_picks_missing_directions() {
        let span = vec![vec![q(1), q(1), q(0)]];
        assert_eq!(complement_by_standard(&span, 3), vec![0, 2]);
    }

    #[test]
    fn solve_inconsistent() {
        let a = Matrix::from_i64(2, 1, &[1, 1]);
        let b = Matrix::from_i64(2, 1, &[1, 2]);
        assert!(a.solve(&b).is_none());
    }
}
