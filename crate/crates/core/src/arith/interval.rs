//! Closed intervals with rational endpoints and outward-exact arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::multipoly::MultiPoly;
use super::scalar::Sign;
use super::unipoly::UniPoly;
use crate::arith::rational::format_rational;
use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct RatInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl RatInterval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        RatInterval { lo, hi }
    }

    pub fn point(v: Rational) -> Self {
        RatInterval { lo: v.clone(), hi: v }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, v: &Rational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn intersect(&self, other: &Self) -> Option<Self> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then_some(RatInterval { lo, hi })
    }

    /// Sign when the interval excludes zero, or it is the point zero.
    pub fn sign(&self) -> Option<Sign> {
        if self.lo.is_positive() {
            Some(Sign::Positive)
        } else if self.hi.is_negative() {
            Some(Sign::Negative)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Sign::Zero)
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        RatInterval { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        RatInterval { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn neg(&self) -> Self {
        RatInterval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        RatInterval { lo, hi }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            RatInterval { lo: a, hi: b }
        } else {
            RatInterval { lo: b, hi: a }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::point(Rational::from_integer(1.into()));
        }
        let a = num_traits::pow(self.lo.clone(), e as usize);
        let b = num_traits::pow(self.hi.clone(), e as usize);
        if e % 2 == 1 {
            RatInterval { lo: a, hi: b }
        } else if self.contains_zero() {
            RatInterval { lo: Rational::zero(), hi: a.max(b) }
        } else {
            RatInterval { lo: a.clone().min(b.clone()), hi: a.max(b) }
        }
    }

    /// Quotient, or `None` when the divisor contains zero.
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.contains_zero() {
            return None;
        }
        let inv = RatInterval { lo: o.hi.recip(), hi: o.lo.recip() };
        Some(self.mul(&inv))
    }

    /// Horner enclosure of an integer polynomial over the interval.
    pub fn eval_int_poly(&self, p: &UniPoly<BigInt>) -> Self {
        let mut acc = Self::point(Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::point(Rational::from_integer(c.clone())));
        }
        acc
    }

    /// Horner enclosure of an integer polynomial in fixed point with
    /// `prec` fractional bits, rounded outward. The endpoints come back
    /// scaled by `2^prec`.
    pub fn eval_int_poly_fixed(&self, p: &UniPoly<BigInt>, prec: u64) -> (BigInt, BigInt) {
        let scale = |v: &Rational| (v.numer() << prec as usize, v.denom().clone());
        let (n, d) = scale(&self.lo);
        let xl = n.div_floor(&d);
        let (n, d) = scale(&self.hi);
        let xh = -((-n).div_floor(&d));
        let (mut al, mut ah) = (BigInt::zero(), BigInt::zero());
        for c in p.coeffs().iter().rev() {
            let prods = [&al * &xl, &al * &xh, &ah * &xl, &ah * &xh];
            let min = prods.iter().min().expect("four products");
            let max = prods.iter().max().expect("four products");
            let c = c << prec as usize;
            // arithmetic shifts round toward negative infinity
            al = (min >> prec as usize) + &c;
            ah = -((-max) >> prec as usize) + c;
        }
        (al, ah)
    }

    pub fn eval_rat_poly(&self, p: &UniPoly<Rational>) -> Self {
        let mut acc = Self::point(Rational::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).add(&Self::point(c.clone()));
        }
        acc
    }

    /// Enclosure of a multivariate polynomial over a box.
    pub fn eval_multi(p: &MultiPoly<Rational>, boxes: &[RatInterval]) -> Self {
        let mut acc = Self::point(Rational::zero());
        for (m, c) in p.terms() {
            let mut t = Self::point(c.clone());
            for (b, &e) in boxes.iter().zip(m.exps()) {
                if e > 0 {
                    t = t.mul(&b.pow(e as u32));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

impl fmt::Display for RatInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", format_rational(&self.lo), format_rational(&self.hi))
    }
}
