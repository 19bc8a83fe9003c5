//! Matrices with multivariate polynomial entries.

use std::collections::HashMap;

use super::matrix::Matrix;
use super::multipoly::MultiPoly;
use super::scalar::Scalar;
use super::ArithError;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<T> {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly<T>>,
}

impl<T: Scalar> PolyMatrix<T> {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix { rows, cols, nvars, entries: vec![MultiPoly::zero(nvars); rows * cols] }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        Self::from_fn(n, n, nvars, |i, j| if i == j { MultiPoly::one(nvars) } else { MultiPoly::zero(nvars) })
    }

    pub fn from_fn(rows: usize, cols: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> MultiPoly<T>) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.nvars(), nvars, "entry arity mismatch");
                entries.push(e);
            }
        }
        PolyMatrix { rows, cols, nvars, entries }
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly<T>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        Self::from_fn(r, c, nvars, |i, j| rows[i][j].clone())
    }

    /// Constant matrix lifted to polynomials.
    pub fn from_matrix(m: &Matrix<T>, nvars: usize) -> Self {
        Self::from_fn(m.rows(), m.cols(), nvars, |i, j| MultiPoly::constant(nvars, m[(i, j)].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly<T> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: MultiPoly<T>) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[MultiPoly<T>] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|i| (i + 1..self.cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.nvars, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix dimension mismatch");
        Self::from_fn(self.rows, other.cols, self.nvars, |i, j| {
            let mut acc = MultiPoly::zero(self.nvars);
            for k in 0..self.cols {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix dimension mismatch");
        Self::from_fn(self.rows, self.cols, self.nvars, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn eval(&self, point: &[T]) -> Matrix<T> {
        Matrix::from_fn(self.rows, self.cols, |i, j| self.get(i, j).eval(point))
    }

    pub fn trace(&self) -> MultiPoly<T> {
        let mut acc = MultiPoly::zero(self.nvars);
        for i in 0..self.rows.min(self.cols) {
            acc = &acc + self.get(i, i);
        }
        acc
    }
}

/// Exact determinant by Laplace expansion memoized over column subsets.
///
/// Division-free, so it works over any commutative coefficient ring; the
/// cost is `O(2^m * m)` polynomial products.
pub fn det_poly_matrix<T: Scalar>(m: &PolyMatrix<T>) -> Result<MultiPoly<T>, ArithError> {
    if m.rows != m.cols {
        return Err(ArithError::NotSquare { rows: m.rows, cols: m.cols });
    }
    let n = m.rows;
    if n == 0 {
        return Ok(MultiPoly::one(m.nvars));
    }
    if n > 20 {
        return Err(ArithError::TooLarge(n));
    }
    // level k: minors on rows 0..k, keyed by column mask with k bits
    let mut level: HashMap<u32, MultiPoly<T>> = HashMap::new();
    level.insert(0, MultiPoly::one(m.nvars));
    for k in 0..n {
        let mut next: HashMap<u32, MultiPoly<T>> = HashMap::new();
        for (mask, minor) in &level {
            if minor.is_zero() {
                continue;
            }
            for j in 0..n {
                if mask & (1 << j) != 0 {
                    continue;
                }
                let a = m.get(k, j);
                if a.is_zero() {
                    continue;
                }
                let new_mask = mask | (1 << j);
                // sign = (-1)^(columns of new_mask greater than j)
                let above = (new_mask >> (j + 1)).count_ones();
                let mut term = a * minor;
                if above % 2 == 1 {
                    term = -&term;
                }
                let slot = next.entry(new_mask).or_insert_with(|| MultiPoly::zero(m.nvars));
                *slot = &*slot + &term;
            }
        }
        level = next;
    }
    Ok(level.remove(&((1u32 << n) - 1)).unwrap_or_else(|| MultiPoly::zero(m.nvars)))
}
