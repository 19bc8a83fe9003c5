//! Exact evaluation at the real points of a rational parametrization.

use num_traits::{One, Signed, Zero};

use super::algebraic::{identify_root, AlgebraicReal};
use crate::arith::rational::pow2;
use crate::arith::{RatInterval, Sign, UniPoly};
use crate::zerodim::{ParamEvaluator, Rur};
use crate::{MultiPolyQ, Rational, UniPolyQ, UniPolyZ};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("parametrization denominator vanishes at a root")]
    DenominatorVanishes,
}

/// A real solution: a root of `q` and the coordinates it parametrizes.
#[derive(Clone, Debug)]
pub struct RurPoint {
    pub root: AlgebraicReal,
    pub coords: Vec<AlgebraicReal>,
}

impl RurPoint {
    pub fn boxes(&self, digits: u32) -> Vec<RatInterval> {
        self.coords.iter().map(|c| c.digits_box(digits)).collect()
    }

    /// Exact lexicographic comparison of coordinates.
    pub fn cmp_coords(&self, other: &RurPoint) -> std::cmp::Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            let o = a.cmp_exact(b);
            if o != std::cmp::Ordering::Equal {
                return o;
            }
        }
        std::cmp::Ordering::Equal
    }

    pub fn same_point(&self, other: &RurPoint) -> bool {
        self.coords.len() == other.coords.len() && self.coords.iter().zip(&other.coords).all(|(a, b)| a.equals(b))
    }
}

/// Enclosure of `c(t) / q0(t)` over the root interval of `r`, evaluated
/// with `prec` fractional bits, if `q0` stays away from zero there.
fn quotient_enclosure(r: &AlgebraicReal, c: &UniPolyZ, q0: &UniPolyZ, prec: u64) -> Option<RatInterval> {
    if let Some(t) = r.as_rational() {
        return Some(RatInterval::point(c.eval_q(t) / q0.eval_q(t)));
    }
    let (nl, nh) = r.interval().eval_int_poly_fixed(c, prec);
    let (dl, dh) = r.interval().eval_int_poly_fixed(q0, prec);
    if !(dl.is_positive() || dh.is_negative()) {
        return None;
    }
    let ends = [(&nl, &dl), (&nl, &dh), (&nh, &dl), (&nh, &dh)].map(|(n, d)| Rational::new(n.clone(), d.clone()));
    let lo = ends.iter().min().expect("four ends").clone();
    let hi = ends.iter().max().expect("four ends").clone();
    Some(RatInterval::new(lo, hi))
}

/// Minimal polynomial of `h` in `Q[z]/(q)`, as a primitive integer
/// polynomial.
pub fn min_poly_mod(h: &UniPolyQ, q: &UniPolyQ) -> UniPolyZ {
    let d = q.deg();
    let vec_of = |p: &UniPolyQ| -> Vec<Rational> { (0..d).map(|i| p.coeff(i)).collect() };
    // rows: (reduced vector, pivot, combination of the powers h^0..h^k)
    let mut rows: Vec<(Vec<Rational>, usize, Vec<Rational>)> = Vec::new();
    let mut power = UniPoly::one().rem(q);
    for k in 0..=d {
        let mut v = vec_of(&power);
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for (row, piv, rc) in &rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone() / &row[*piv];
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &f * b;
            }
            for (a, b) in comb.iter_mut().zip(rc) {
                *a -= &f * b;
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(piv) => rows.push((v, piv, comb)),
            None => return UniPolyZ::from_rational(&UniPoly::new(comb)),
        }
        power = power.mul_mod(h, q);
    }
    unreachable!("d + 1 vectors in dimension d are dependent")
}

/// The real points of a parametrization, ordered by root of `q`.
pub fn real_points(rur: &Rur) -> Result<Vec<RurPoint>, EvalError> {
    if rur.is_empty() {
        return Ok(Vec::new());
    }
    let roots = AlgebraicReal::roots_of(&rur.q);
    if roots.is_empty() {
        return Ok(Vec::new());
    }
    if UniPolyZ::gcd(&rur.q, &rur.q0).deg() > 0 {
        return Err(EvalError::DenominatorVanishes);
    }
    let candidates: Vec<Vec<AlgebraicReal>> = rur.eliminants.iter().map(AlgebraicReal::roots_of).collect();
    let mut out = Vec::with_capacity(roots.len());
    for root in roots {
        let mut coords = Vec::with_capacity(rur.coords.len());
        for (c, cands) in rur.coords.iter().zip(&candidates) {
            let value = match root.as_rational() {
                Some(t) => AlgebraicReal::from_rational(c.eval_q(t) / rur.q0.eval_q(t)),
                None => {
                    let mut r = root.clone();
                    identify_root(cands, |step| {
                        let mut prec = 64u64 << step.min(24);
                        loop {
                            r.refine_to(&pow2(-(prec as i64)));
                            if let Some(e) = quotient_enclosure(&r, c, &rur.q0, prec + 32) {
                                return e;
                            }
                            prec *= 2;
                        }
                    })
                    .expect("real root of q maps to a real root of the eliminant")
                }
            };
            coords.push(value);
        }
        out.push(RurPoint { root, coords });
    }
    Ok(out)
}

/// Exact sign of `p(q_1/q_0, ..., q_n/q_0)` at a root of `q`.
pub fn sign_at_algebraic(p: &MultiPolyQ, rur: &Rur, root: &AlgebraicReal) -> Sign {
    if p.is_zero() {
        return Sign::Zero;
    }
    let deg = p.total_degree() as usize;
    let (num, k) = ParamEvaluator::new(&rur.q, &rur.q0, &rur.coords).numerator(p, deg);
    let s = root.sign_of(&num);
    let lc_neg = rur.q.lead().is_negative() && k % 2 == 1;
    let q0_neg = deg % 2 == 1 && root.sign_of(&rur.q0) == Sign::Negative;
    let flip = lc_neg != q0_neg;
    match (s, flip) {
        (Sign::Zero, _) => Sign::Zero,
        (s, false) => s,
        (Sign::Positive, true) => Sign::Negative,
        (Sign::Negative, true) => Sign::Positive,
    }
}

/// Coordinate boxes of the point at `root`, each meeting the digit
/// contract.
pub fn eval_rur_box(rur: &Rur, root: &AlgebraicReal, digits: u32) -> Result<Vec<RatInterval>, EvalError> {
    let points = real_points(rur)?;
    let p = points.into_iter().find(|p| p.root.equals(root)).expect("root of q");
    Ok(p.boxes(digits))
}
