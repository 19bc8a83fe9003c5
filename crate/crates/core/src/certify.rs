//! Positive semidefiniteness and rank from the signs of the coefficients
//! of the characteristic polynomial.
//!
//! With `det(t I - A) = t^m - p_1 t^(m-1) + ... + (-1)^m p_m`, the matrix
//! is PSD iff every `p_k >= 0`, and its rank is `m` minus the length of
//! the run of zeros ending at `p_m`.

use crate::arith::Sign;
use crate::pencil::{CharPolyCoeffs, LinearPencil, PencilError};
use crate::realroots::{sign_at_algebraic, AlgebraicReal};
use crate::zerodim::Rur;
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub psd: bool,
    pub rank: usize,
    /// Signs of `p_1..p_m`; `None` for those not evaluated after the point
    /// was discarded.
    pub signs: Vec<Option<Sign>>,
}

/// Queries signs from `p_m` down and stops at the first negative one.
fn certify_with(m: usize, mut sign: impl FnMut(usize) -> Sign) -> Certificate {
    let mut signs = vec![None; m];
    let mut zero_run = 0;
    let mut in_run = true;
    for k in (1..=m).rev() {
        let s = sign(k);
        signs[k - 1] = Some(s);
        if s == Sign::Negative {
            return Certificate { psd: false, rank: m - zero_run, signs };
        }
        if s == Sign::Zero && in_run {
            zero_run += 1;
        } else {
            in_run = false;
        }
    }
    Certificate { psd: true, rank: m - zero_run, signs }
}

/// Certificate at the point of `rur` given by a root of its `q`.
pub fn certify_point(c: &CharPolyCoeffs, rur: &Rur, root: &AlgebraicReal) -> Certificate {
    certify_with(c.m(), |k| sign_at_algebraic(c.p(k), rur, root))
}

pub fn certify_rational(c: &CharPolyCoeffs, x: &[Rational]) -> Certificate {
    certify_with(c.m(), |k| Sign::of(&c.p(k).eval(x)))
}

/// Whether the certified rank agrees with Gaussian elimination at `x`.
pub fn rank_consistency_check(p: &LinearPencil, x: &[Rational], cert: &Certificate) -> Result<bool, PencilError> {
    Ok(p.exact_rank_at_rational(x)? == cert.rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::pencil::parse_pencil;

    fn unit_disk() -> LinearPencil {
        parse_pencil("lmi m=2 n=2\nentry 1 1 : 1+x1\nentry 1 2 : x2\nentry 2 2 : 1-x1\n").unwrap()
    }

    #[test]
    fn unit_disk_points() {
        let p = unit_disk();
        let c = p.char_poly_coeffs();
        let inner = certify_rational(c, &[rat(0, 1), rat(0, 1)]);
        assert_eq!((inner.psd, inner.rank), (true, 2));
        let outer = certify_rational(c, &[rat(2, 1), rat(0, 1)]);
        assert!(!outer.psd);
        assert_eq!(outer.signs[1], Some(Sign::Negative));
        assert_eq!(outer.signs[0], None);
        let edge = certify_rational(c, &[rat(1, 1), rat(0, 1)]);
        assert_eq!((edge.psd, edge.rank), (true, 1));
        assert!(rank_consistency_check(&p, &[rat(1, 1), rat(0, 1)], &edge).unwrap());
    }

    #[test]
    fn half_disk_boundary_point() {
        let p = parse_pencil("lmi m=3 n=2\nentry 1 1 : 1+x1\nentry 1 2 : x2\nentry 2 2 : 1-x1\nentry 3 3 : x1\n").unwrap();
        let cert = certify_rational(p.char_poly_coeffs(), &[rat(0, 1), rat(1, 1)]);
        assert_eq!(cert.signs, vec![Some(Sign::Positive), Some(Sign::Zero), Some(Sign::Zero)]);
        assert_eq!((cert.psd, cert.rank), (true, 1));
    }
}
