//! Dense matrices over a [`Scalar`], with exact elimination over a [`Field`].

use std::fmt;
use std::ops::{Index, IndexMut};

use super::scalar::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub matrix: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn diagonal(values: &[T]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
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

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// First `(i, j)` with `i < j` and `a_ij != a_ji`.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self[(i, j)] != self[(j, i)] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(T::is_zero)
    }

    pub fn trace(&self) -> T {
        let mut acc = T::zero();
        for i in 0..self.rows.min(self.cols) {
            acc += &self[(i, i)];
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a.clone() * &other[(k, j)];
                    out[(i, j)] += &t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = T::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() {
                        acc += &(a.clone() * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len(), "vector-matrix dimension mismatch");
        let mut out = vec![T::zero(); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.row(i)) {
                if !b.is_zero() {
                    *o += &(a.clone() * b);
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix dimension mismatch");
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b).collect() }
    }

    pub fn scale(&self, c: &T) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a.clone() * c).collect() }
    }

    /// Principal submatrix on the given index set.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), idx.len(), |i, j| self[(idx[i], idx[j])].clone())
    }

    /// `P^T A P` for the permutation sending position `i` to `perm[i]`.
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(perm[i], perm[j])].clone())
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
}

impl<T: Field> Matrix<T> {
    /// Gauss–Jordan elimination to reduced row echelon form.
    pub fn rref(&self) -> Echelon<T> {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..a.cols {
            if row == a.rows {
                break;
            }
            let Some(p) = (row..a.rows).find(|&i| !a[(i, col)].is_exact_zero()) else {
                continue;
            };
            a.swap_rows(row, p);
            let inv = T::one() / a[(row, col)].clone();
            for j in col..a.cols {
                a[(row, j)] *= &inv;
            }
            for i in 0..a.rows {
                if i == row || a[(i, col)].is_exact_zero() {
                    continue;
                }
                let f = a[(i, col)].clone();
                for j in col..a.cols {
                    let t = f.clone() * &a[(row, j)];
                    a[(i, j)] -= &t;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Echelon { matrix: a, pivots }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut a = self.clone();
        let n = a.rows;
        let mut det = T::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&i| !a[(i, col)].is_exact_zero()) else {
                return T::zero();
            };
            if p != col {
                a.swap_rows(p, col);
                det = -det;
            }
            let pivot = a[(col, col)].clone();
            det *= &pivot;
            for i in col + 1..n {
                if a[(i, col)].is_exact_zero() {
                    continue;
                }
                let f = a[(i, col)].clone() / pivot.clone();
                for j in col..n {
                    let t = f.clone() * &a[(col, j)];
                    a[(i, j)] -= &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square(), "inverse of a non-square matrix");
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                T::one()
            } else {
                T::zero()
            }
        });
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| e.matrix[(i, j + n)].clone()))
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        assert_eq!(self.rows, b.len(), "right-hand side length mismatch");
        let aug = Self::from_fn(self.rows, self.cols + 1, |i, j| if j < self.cols { self[(i, j)].clone() } else { b[i].clone() });
        let e = aug.rref();
        if e.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![T::zero(); self.cols];
        for (r, &c) in e.pivots.iter().enumerate() {
            x[c] = e.matrix[(r, self.cols)].clone();
        }
        Some(x)
    }

    /// Basis of the right kernel.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let e = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !e.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![T::zero(); self.cols];
                v[f] = T::one();
                for (r, &c) in e.pivots.iter().enumerate() {
                    v[c] = -e.matrix[(r, f)].clone();
                }
                v
            })
            .collect()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            (0..self.rows).map(|i| format!("[{}]", self.row(i).iter().map(|v| v.to_string()).collect::<Vec<_>>().join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect())
    }

    #[test]
    fn rank_det_inverse() {
        let a = q(&[&[1, 1, 0], &[1, 1, 0], &[0, 0, 0]]);
        assert_eq!(a.rank(), 1);
        assert_eq!(a.det(), rat(0, 1));
        let b = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.det(), rat(1, 1));
        let inv = b.inverse().unwrap();
        assert_eq!(b.mul(&inv), Matrix::identity(2));
        assert!(a.inverse().is_none());
    }

    #[test]
    fn solve_and_kernel() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6]]);
        let x = a.solve(&[rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![rat(1, 1), rat(2, 1)]);
        assert!(a.solve(&[rat(1, 1), rat(3, 1)]).is_none());
        let ker = a.nullspace();
        assert_eq!(ker.len(), 2);
        for v in ker {
            assert!(a.mul_vec(&v).iter().all(|c| *c == rat(0, 1)));
        }
    }

    #[test]
    fn float_scalars() {
        let a = Matrix::from_rows(vec![vec![2.0f64, 0.0], vec![0.0, 3.0]]);
        assert_eq!(a.det(), 6.0);
        let b = Matrix::from_rows(vec![vec![1.0f32, 2.0], vec![3.0, 4.0]]);
        assert!((b.det() + 2.0).abs() < 1e-6);
    }
}
