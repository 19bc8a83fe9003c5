//! Real algebraic numbers as (squarefree polynomial, isolating interval).

use std::cmp::Ordering;

use num_traits::Zero;

use super::isolate::{bisect_step, descartes_bound, isolate_real_roots, refine_interval};
use crate::arith::rational::round_significant;
use crate::arith::{RatInterval, Sign};
use crate::{Rational, UniPolyZ};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicReal {
    poly: UniPolyZ,
    interval: RatInterval,
}

impl AlgebraicReal {
    /// `interval` must isolate a root of the squarefree, primitive `poly`
    /// as returned by [`isolate_real_roots`].
    pub fn new(poly: UniPolyZ, interval: RatInterval) -> Self {
        AlgebraicReal { poly, interval }
    }

    pub fn from_rational(r: Rational) -> Self {
        let poly = UniPolyZ::new(vec![-r.numer().clone(), r.denom().clone()]);
        AlgebraicReal { poly, interval: RatInterval::point(r) }
    }

    /// All real roots of `p`, in increasing order.
    pub fn roots_of(p: &UniPolyZ) -> Vec<AlgebraicReal> {
        let sf = p.squarefree().expect("nonzero polynomial");
        isolate_real_roots(&sf).expect("nonzero polynomial").into_iter().map(|iv| AlgebraicReal::new(sf.clone(), iv)).collect()
    }

    pub fn poly(&self) -> &UniPolyZ {
        &self.poly
    }

    pub fn interval(&self) -> &RatInterval {
        &self.interval
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.interval.is_point().then_some(&self.interval.lo)
    }

    pub fn refine_to(&mut self, width: &Rational) {
        self.interval = refine_interval(&self.poly, &self.interval, width);
    }

    /// One bisection step; no-op for rationals.
    pub fn halve(&mut self) {
        if self.interval.is_point() {
            return;
        }
        let s_lo = self.poly.sign_at(&self.interval.lo);
        self.interval = match bisect_step(&self.poly, &self.interval, s_lo) {
            Ok(iv) | Err(iv) => iv,
        };
    }

    /// Interval whose endpoints both round to the same `digits`-significant
    /// decimal, or the exact point.
    pub fn digits_box(&self, digits: u32) -> RatInterval {
        let mut a = self.clone();
        loop {
            let iv = &a.interval;
            if iv.is_point() {
                return iv.clone();
            }
            if !iv.contains_zero() && round_significant(&iv.lo, digits) == round_significant(&iv.hi, digits) {
                return iv.clone();
            }
            a.halve();
        }
    }

    /// Exact sign of `n` at this number.
    pub fn sign_of(&self, n: &UniPolyZ) -> Sign {
        if n.is_zero() {
            return Sign::Zero;
        }
        if let Some(r) = self.as_rational() {
            return n.sign_at(r);
        }
        let g = UniPolyZ::gcd(&self.poly, n);
        if g.deg() > 0 && g.sign_at(&self.interval.lo) != g.sign_at(&self.interval.hi) {
            return Sign::Zero;
        }
        let mut a = self.clone();
        loop {
            let iv = &a.interval;
            if iv.is_point() {
                return n.sign_at(&iv.lo);
            }
            let s_lo = n.sign_at(&iv.lo);
            if s_lo != Sign::Zero && n.sign_at(&iv.hi) == s_lo && descartes_bound(n, &iv.lo, &iv.hi) == 0 {
                return s_lo;
            }
            a.halve();
        }
    }

    /// Whether the two numbers are equal, decided exactly.
    pub fn equals(&self, other: &AlgebraicReal) -> bool {
        if self.interval.intersect(&other.interval).is_none() {
            return false;
        }
        match (self.as_rational(), other.as_rational()) {
            (Some(a), Some(b)) => a == b,
            (Some(a), None) => other.poly.sign_at(a) == Sign::Zero && other.interval.contains(a),
            (None, Some(b)) => self.poly.sign_at(b) == Sign::Zero && self.interval.contains(b),
            (None, None) => {
                let g = UniPolyZ::gcd(&self.poly, &other.poly);
                if g.deg() == 0 {
                    return false;
                }
                // the common root, if any, is the unique root of g in both intervals
                let in_self = g.sign_at(&self.interval.lo) != g.sign_at(&self.interval.hi);
                let in_other = g.sign_at(&other.interval.lo) != g.sign_at(&other.interval.hi);
                if !(in_self && in_other) {
                    return false;
                }
                // a root of g lies in each; they coincide iff g has one root in the union
                let lo = self.interval.lo.clone().min(other.interval.lo.clone());
                let hi = self.interval.hi.clone().max(other.interval.hi.clone());
                super::sturm::count_roots(&g, &lo, &hi) == 1
            }
        }
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &AlgebraicReal) -> Ordering {
        if self.equals(other) {
            return Ordering::Equal;
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.interval.hi < b.interval.lo {
                return Ordering::Less;
            }
            if b.interval.hi < a.interval.lo {
                return Ordering::Greater;
            }
            if a.interval.width() >= b.interval.width() {
                a.halve();
            } else {
                b.halve();
            }
        }
    }

    /// A rational strictly inside the isolating interval (or the value
    /// itself when rational).
    pub fn sample(&self) -> Rational {
        self.interval.midpoint()
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(Zero::is_zero)
    }
}

/// The candidate equal to a value known through enclosures:
/// `enclosure(k)` must contain the value and shrink to it as `k` grows.
/// Candidates must be distinct roots with disjoint isolating intervals.
pub fn identify_root(candidates: &[AlgebraicReal], mut enclosure: impl FnMut(u32) -> RatInterval) -> Option<AlgebraicReal> {
    let mut cands: Vec<AlgebraicReal> = candidates.to_vec();
    for step in 0..4096u32 {
        let e = enclosure(step);
        let hits: Vec<usize> = (0..cands.len()).filter(|&i| cands[i].interval.intersect(&e).is_some()).collect();
        match hits.len() {
            0 => return None,
            1 => return Some(cands[hits[0]].clone()),
            _ => {
                for &i in &hits {
                    let w = if e.is_point() { cands[i].interval.width() / Rational::from_integer(2.into()) } else { e.width() };
                    cands[i].refine_to(&w);
                }
            }
        }
    }
    None
}
