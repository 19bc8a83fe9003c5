//! Coefficients `p_1..p_m` of `det(s*I + A(x)) = s^m + p_1 s^(m-1) + ... + p_m`.

use crate::arith::rational::rat_int;
use crate::arith::{det_poly_matrix, MultiPoly, PolyMatrix};
use crate::{MultiPolyQ, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct CharPolyCoeffs {
    p: Vec<MultiPolyQ>,
}

impl CharPolyCoeffs {
    pub fn new(p: Vec<MultiPolyQ>) -> Self {
        CharPolyCoeffs { p }
    }

    pub fn m(&self) -> usize {
        self.p.len()
    }

    /// `p_k` for `k` in `1..=m`.
    pub fn p(&self, k: usize) -> &MultiPolyQ {
        &self.p[k - 1]
    }

    pub fn all(&self) -> &[MultiPolyQ] {
        &self.p
    }

    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        self.p.iter().map(|p| p.eval(x)).collect()
    }
}

/// Faddeev–LeVerrier recursion over `Q[x]`.
///
/// With `det(s*I - A) = sum c_k s^k`, `M_k = A M_{k-1} + c_{m-k+1} I` and
/// `c_{m-k} = -tr(A M_k) / k`; then `p_k = (-1)^k c_{m-k}`.
pub fn char_poly_faddeev_leverrier(a: &PolyMatrix<Rational>) -> CharPolyCoeffs {
    let m = a.rows();
    let nv = a.nvars();
    let mut mk = PolyMatrix::zeros(m, m, nv);
    let mut c_prev = MultiPoly::one(nv);
    let mut p = Vec::with_capacity(m);
    for k in 1..=m {
        let mut next = a.mul(&mk);
        for i in 0..m {
            let d = next.get(i, i) + &c_prev;
            next.set(i, i, d);
        }
        mk = next;
        let c = a.mul(&mk).trace().scale(&(-Rational::new(1.into(), (k as i64).into())));
        let pk = if k % 2 == 0 { c.clone() } else { -&c };
        p.push(pk);
        c_prev = c;
    }
    CharPolyCoeffs::new(p)
}

/// Direct expansion of `det(s*I + A(x))` with `s` as an extra variable.
pub fn char_poly_by_expansion(a: &PolyMatrix<Rational>) -> CharPolyCoeffs {
    let m = a.rows();
    let nv = a.nvars();
    let positions: Vec<usize> = (0..nv).collect();
    let shifted = PolyMatrix::from_fn(m, m, nv + 1, |i, j| {
        let e = a.get(i, j).embed(nv + 1, &positions);
        if i == j {
            &e + &MultiPoly::var(nv + 1, nv)
        } else {
            e
        }
    });
    let det = det_poly_matrix(&shifted).expect("square by construction");
    let mut by_power = vec![Vec::new(); m + 1];
    for (mon, c) in det.terms() {
        let mut exps = mon.exps().to_vec();
        let e = exps.pop().unwrap() as usize;
        by_power[e].push((crate::arith::Monomial::from_exps(exps), c.clone()));
    }
    let p = (1..=m).map(|k| MultiPoly::from_terms(nv, std::mem::take(&mut by_power[m - k]))).collect();
    debug_assert_eq!(MultiPoly::from_terms(nv, by_power[m].clone()), MultiPoly::constant(nv, rat_int(1)));
    CharPolyCoeffs::new(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::pencil::parse_pencil;

    #[test]
    fn unit_disk_coefficients() {
        let p = parse_pencil("lmi m=2 n=2\nentry 1 1 : 1+x1\nentry 1 2 : x2\nentry 2 2 : 1-x1\n").unwrap();
        let c = p.char_poly_coeffs();
        assert_eq!(c.p(1), &MultiPoly::constant(2, rat(2, 1)));
        let x1 = MultiPoly::var(2, 0);
        let x2 = MultiPoly::var(2, 1);
        let expected = &(&MultiPoly::constant(2, rat(1, 1)) - &(&x1 * &x1)) - &(&x2 * &x2);
        assert_eq!(c.p(2), &expected);
    }

    #[test]
    fn methods_agree() {
        let text = "lmi m=4 n=3\nentry 1 1 : 1+x3\nentry 1 2 : x1+x2\nentry 1 3 : x2\nentry 1 4 : x2+x3\n\
                    entry 2 2 : 1-x1\nentry 2 3 : x2-x3\nentry 2 4 : x2\nentry 3 3 : 1+x2\nentry 3 4 : x1+x3\nentry 4 4 : 1-x3\n";
        let p = parse_pencil(text).unwrap();
        let pm = p.poly_matrix();
        assert_eq!(char_poly_faddeev_leverrier(&pm), char_poly_by_expansion(&pm));
        assert_eq!(p.char_poly_coeffs().p(4), &det_poly_matrix(&pm).unwrap());
        assert_eq!(p.char_poly_coeffs().p(1), &pm.trace());
    }

    #[test]
    fn scalar_pencil() {
        let p = parse_pencil("lmi m=1 n=1\nentry 1 1 : x1\n").unwrap();
        assert_eq!(p.char_poly_coeffs().p(1), &MultiPoly::var(1, 0));
    }
}
