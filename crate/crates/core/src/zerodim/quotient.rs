//! The finite-dimensional algebra `Q[v]/I` of a zero-dimensional ideal.

use std::collections::HashMap;

use num_traits::{One, Zero};

use super::groebner::GroebnerBasis;
use crate::arith::{Matrix, Monomial};
use crate::{MatrixQ, MultiPolyQ, Rational};

#[derive(Clone, Debug)]
pub struct QuotientAlgebra {
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `mult[i]` has as column `k` the coordinates of `v_i * basis[k]`.
    mult: Vec<MatrixQ>,
}

impl QuotientAlgebra {
    /// `None` unless the basis is zero-dimensional. The unit ideal gives
    /// the zero algebra.
    pub fn new(gb: &GroebnerBasis) -> Option<Self> {
        let basis = gb.standard_monomials()?;
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let d = basis.len();
        let nvars = gb.nvars();
        let mut mult = Vec::with_capacity(nvars);
        for v in 0..nvars {
            let xv = Monomial::var(nvars, v);
            let mut m = Matrix::zeros(d, d);
            for (k, b) in basis.iter().enumerate() {
                let prod = b.mul(&xv);
                if let Some(&j) = index.get(&prod) {
                    m[(j, k)] = Rational::one();
                    continue;
                }
                let nf = gb.normal_form(&MultiPolyQ::from_terms_in(nvars, gb.order(), vec![(prod, Rational::one())]));
                for (mono, c) in nf.terms() {
                    m[(index[mono], k)] = c.clone();
                }
            }
            mult.push(m);
        }
        Some(QuotientAlgebra { basis, index, mult })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn nvars(&self) -> usize {
        self.mult.len()
    }

    pub fn mult_matrix(&self, var: usize) -> &MatrixQ {
        &self.mult[var]
    }

    /// Multiplication matrix of an affine form `c0 + sum c_i v_i`.
    pub fn affine_mult_matrix(&self, c0: &Rational, coeffs: &[Rational]) -> MatrixQ {
        let d = self.dim();
        let mut m = Matrix::identity(d).scale(c0);
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                m = m.add(&self.mult[i].scale(c));
            }
        }
        m
    }

    /// Coordinates of an affine form in the monomial basis.
    pub fn affine_coords(&self, c0: &Rational, coeffs: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        if self.dim() == 0 {
            return out;
        }
        out[0] = c0.clone();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                for (o, v) in out.iter_mut().zip(self.mult[i].column(0)) {
                    *o += c * v;
                }
            }
        }
        out
    }

    /// Coordinates of the remainder of an arbitrary polynomial.
    pub fn coords_of(&self, gb: &GroebnerBasis, f: &MultiPolyQ) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (mono, c) in gb.normal_form(f).terms() {
            out[self.index[mono]] = c.clone();
        }
        out
    }

    /// Row vector `w^T * M_b` for a basis monomial `b`.
    fn row_times_monomial(&self, mut w: Vec<Rational>, b: &Monomial) -> Vec<Rational> {
        for (v, &e) in b.exps().iter().enumerate() {
            for _ in 0..e {
                w = self.mult[v].vec_mul(&w);
            }
        }
        w
    }

    /// Trace form: `tau_k = Tr(M_{b_k})`.
    pub fn trace_vector(&self) -> Vec<Rational> {
        let d = self.dim();
        let mut tau = vec![Rational::zero(); d];
        for (j, b) in self.basis.iter().enumerate() {
            let mut e = vec![Rational::zero(); d];
            e[j] = Rational::one();
            let row = self.row_times_monomial(e, b);
            for (t, r) in tau.iter_mut().zip(row) {
                *t += r;
            }
        }
        tau
    }

    /// Hermite matrix `H_jk = Tr(M_{b_j b_k})`; its rank is the number of
    /// distinct complex solutions.
    pub fn hermite_matrix(&self, tau: &[Rational]) -> MatrixQ {
        Matrix::from_rows(self.basis.iter().map(|b| self.row_times_monomial(tau.to_vec(), b)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::arith::{MonomialOrder, MultiPoly};
    use crate::zerodim::groebner_basis;

    #[test]
    fn double_root_algebra() {
        // <x^2, y - 1>: one point of multiplicity two
        let x: MultiPolyQ = MultiPoly::var(2, 0);
        let y: MultiPolyQ = MultiPoly::var(2, 1);
        let gb = groebner_basis(&[&x * &x, &y - &MultiPoly::one(2)], MonomialOrder::DegRevLex);
        let qa = QuotientAlgebra::new(&gb).unwrap();
        assert_eq!(qa.dim(), 2);
        let tau = qa.trace_vector();
        assert_eq!(tau, vec![rat(2, 1), rat(0, 1)]);
        assert_eq!(qa.hermite_matrix(&tau).rank(), 1);
        assert_eq!(qa.mult_matrix(1), &Matrix::identity(2));
    }
}
