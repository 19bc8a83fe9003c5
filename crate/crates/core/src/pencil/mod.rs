//! Symmetric linear pencils `A(x) = A0 + x1*A1 + ... + xn*An`.

mod charpoly;
mod parse;

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::arith::rational::format_rational;
use crate::arith::{Matrix, MultiPoly, PolyMatrix};
use crate::{MatrixQ, MultiPolyQ, Rational};

pub use charpoly::{char_poly_by_expansion, char_poly_faddeev_leverrier, CharPolyCoeffs};
pub use parse::{parse_pencil, parse_pencil_json, parse_pencil_path};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PencilError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("matrix is not symmetric at entry ({i}, {j})")]
    Asymmetry { i: usize, j: usize },
    #[error("invalid dimensions: {0}")]
    Dimension(String),
    #[error("expected a point with {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("invalid JSON pencil: {0}")]
    Json(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}

#[derive(Debug)]
pub struct LinearPencil {
    m: usize,
    vars: Vec<String>,
    matrices: Vec<MatrixQ>,
    charpoly: OnceLock<CharPolyCoeffs>,
}

impl Clone for LinearPencil {
    fn clone(&self) -> Self {
        LinearPencil { m: self.m, vars: self.vars.clone(), matrices: self.matrices.clone(), charpoly: OnceLock::new() }
    }
}

impl PartialEq for LinearPencil {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars && self.matrices == other.matrices
    }
}

impl LinearPencil {
    /// Builds a pencil from `A0..An`; variables default to `x1..xn`.
    pub fn new(matrices: Vec<MatrixQ>, vars: Option<Vec<String>>) -> Result<Self, PencilError> {
        if matrices.len() < 2 {
            return Err(PencilError::Dimension("a pencil needs A0 and at least one variable matrix".into()));
        }
        let m = matrices[0].rows();
        if m == 0 {
            return Err(PencilError::Dimension("matrix size must be positive".into()));
        }
        for (k, a) in matrices.iter().enumerate() {
            if a.rows() != m || a.cols() != m {
                return Err(PencilError::Dimension(format!("A{k} is {}x{}, expected {m}x{m}", a.rows(), a.cols())));
            }
            if let Some((i, j)) = a.first_asymmetry() {
                return Err(PencilError::Asymmetry { i: i + 1, j: j + 1 });
            }
        }
        let n = matrices.len() - 1;
        let vars = vars.unwrap_or_else(|| MultiPoly::<Rational>::default_names(n));
        if vars.len() != n {
            return Err(PencilError::Dimension(format!("{} variable names for {n} variables", vars.len())));
        }
        Ok(LinearPencil { m, vars, matrices, charpoly: OnceLock::new() })
    }

    /// Builds a pencil from its affine entries (upper triangle mirrored).
    pub fn from_entries(m: usize, n: usize, entries: &[(usize, usize, MultiPolyQ)], vars: Option<Vec<String>>) -> Result<Self, PencilError> {
        let mut matrices = vec![Matrix::zeros(m, m); n + 1];
        for (i, j, form) in entries {
            let (c0, lin) = form.as_affine().ok_or_else(|| PencilError::Dimension(format!("entry ({}, {}) is not affine", i + 1, j + 1)))?;
            matrices[0][(*i, *j)] = c0.clone();
            matrices[0][(*j, *i)] = c0;
            for (k, c) in lin.into_iter().enumerate() {
                matrices[k + 1][(*i, *j)] = c.clone();
                matrices[k + 1][(*j, *i)] = c;
            }
        }
        Self::new(matrices, vars)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.matrices.len() - 1
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn matrices(&self) -> &[MatrixQ] {
        &self.matrices
    }

    /// Entry `(i, j)` (0-based) as an affine polynomial in `x`.
    pub fn entry(&self, i: usize, j: usize) -> MultiPolyQ {
        let c0 = self.matrices[0][(i, j)].clone();
        let lin: Vec<Rational> = self.matrices[1..].iter().map(|a| a[(i, j)].clone()).collect();
        MultiPoly::affine(c0, &lin)
    }

    pub fn poly_matrix(&self) -> PolyMatrix<Rational> {
        PolyMatrix::from_fn(self.m, self.m, self.n(), |i, j| self.entry(i, j))
    }

    fn check_arity(&self, x: &[Rational]) -> Result<(), PencilError> {
        if x.len() != self.n() {
            return Err(PencilError::Arity { expected: self.n(), got: x.len() });
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[Rational]) -> Result<MatrixQ, PencilError> {
        self.check_arity(x)?;
        let mut out = self.matrices[0].clone();
        for (a, xi) in self.matrices[1..].iter().zip(x) {
            if !xi.is_zero() {
                out = out.add(&a.scale(xi));
            }
        }
        Ok(out)
    }

    /// Coefficients of `det(s*I + A(x))`, computed on first use.
    pub fn char_poly_coeffs(&self) -> &CharPolyCoeffs {
        self.charpoly.get_or_init(|| {
            if self.m <= 8 {
                char_poly_faddeev_leverrier(&self.poly_matrix())
            } else {
                char_poly_by_expansion(&self.poly_matrix())
            }
        })
    }

    pub fn exact_rank_at_rational(&self, x: &[Rational]) -> Result<usize, PencilError> {
        Ok(self.evaluate(x)?.rank())
    }

    /// A rational `x` with `A(x) = 0`, if the linear system is consistent.
    pub fn solve_linear_zero(&self) -> Option<Vec<Rational>> {
        let n = self.n();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..self.m {
            for j in i..self.m {
                rows.push(self.matrices[1..].iter().map(|a| a[(i, j)].clone()).collect::<Vec<_>>());
                rhs.push(-self.matrices[0][(i, j)].clone());
            }
        }
        let a = Matrix::from_rows(rows);
        debug_assert_eq!(a.cols(), n);
        a.solve(&rhs)
    }

    /// The pencil `c * A(x)`.
    pub fn scaled(&self, c: &Rational) -> Self {
        LinearPencil {
            m: self.m,
            vars: self.vars.clone(),
            matrices: self.matrices.iter().map(|a| a.scale(c)).collect(),
            charpoly: OnceLock::new(),
        }
    }

    /// Symmetric permutation `P^T A(x) P`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        LinearPencil {
            m: self.m,
            vars: self.vars.clone(),
            matrices: self.matrices.iter().map(|a| a.permute_symmetric(perm)).collect(),
            charpoly: OnceLock::new(),
        }
    }

    /// Serializes to the text pencil format accepted by [`parse_pencil`].
    pub fn to_text(&self) -> String {
        let mut out = format!("lmi m={} n={} vars={}\n", self.m, self.n(), self.vars.join(","));
        for i in 0..self.m {
            for j in i..self.m {
                let form = self.entry(i, j);
                if !form.is_zero() {
                    out.push_str(&format!("entry {} {} : {}\n", i + 1, j + 1, format_affine(&form, &self.vars)));
                }
            }
        }
        out
    }
}

fn format_affine(form: &MultiPolyQ, vars: &[String]) -> String {
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (mon, c) in form.terms() {
        let negative = c < &Rational::zero();
        let abs = if negative { -c.clone() } else { c.clone() };
        let text = match mon.pure_power_var() {
            None => format_rational(&abs),
            Some(k) if abs.is_one() => vars[k].clone(),
            Some(k) => format!("{}*{}", format_rational(&abs), vars[k]),
        };
        parts.push((negative, text));
    }
    let mut out = String::new();
    for (idx, (negative, text)) in parts.into_iter().enumerate() {
        match (idx, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&text);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;

    pub(crate) fn half_disk() -> LinearPencil {
        parse_pencil("lmi m=3 n=2 vars=x1,x2\nentry 1 1 : 1+x1\nentry 1 2 : x2\nentry 2 2 : 1-x1\nentry 3 3 : x1\n").unwrap()
    }

    #[test]
    fn evaluation_and_rank() {
        let p = half_disk();
        let a = p.evaluate(&[rat(0, 1), rat(1, 1)]).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![rat(1, 1), rat(1, 1), rat(0, 1)],
            vec![rat(1, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(0, 1)],
        ]);
        assert_eq!(a, expected);
        assert_eq!(p.exact_rank_at_rational(&[rat(0, 1), rat(1, 1)]).unwrap(), 1);
        assert_eq!(p.evaluate(&[rat(0, 1), rat(0, 1)]).unwrap(), p.matrices()[0]);
        assert!(matches!(p.evaluate(&[rat(0, 1)]), Err(PencilError::Arity { expected: 2, got: 1 })));
    }

    #[test]
    fn linear_zero() {
        assert!(half_disk().solve_linear_zero().is_none());
        let p = parse_pencil("lmi m=1 n=1\nentry 1 1 : x1\n").unwrap();
        assert_eq!(p.solve_linear_zero(), Some(vec![rat(0, 1)]));
        let d = parse_pencil("lmi m=2 n=1\nentry 1 1 : x1-1\nentry 2 2 : x1 - 1\n").unwrap();
        assert_eq!(d.solve_linear_zero(), Some(vec![rat(1, 1)]));
    }

    #[test]
    fn text_round_trip() {
        let p = parse_pencil("lmi m=2 n=2\nentry 1 1 : -3/2 - x2\nentry 1 2 : 1/2*x1 + 2\nentry 2 2 : -2*x1\n").unwrap();
        let q = parse_pencil(&p.to_text()).unwrap();
        assert_eq!(p, q);
    }
}
