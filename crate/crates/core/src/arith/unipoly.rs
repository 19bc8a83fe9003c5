//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::scalar::{Field, Scalar, Sign};
use crate::Rational;

/// Polynomial with coefficients in ascending degree order. The leading
/// coefficient is nonzero unless the polynomial is zero (empty vector).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Scalar> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `c * z^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The polynomial `z`.
    pub fn var() -> Self {
        Self::monomial(T::one(), 1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<T> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let v = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.clone() * &T::from_usize(k).expect("degree fits the scalar type"))
            .collect();
        Self::new(v)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::new(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    /// `p(z + c)`
    pub fn taylor_shift(&self, c: &T) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = a[j + 1].clone() * c;
                a[j] += &t;
            }
        }
        Self::new(a)
    }

    /// `p(c * z)`
    pub fn scale_var(&self, c: &T) -> Self {
        let mut pow = T::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a.clone() * &pow);
            pow *= c;
        }
        Self::new(v)
    }

    /// `z^d p(1/z)` with `d = deg p`.
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// Composition `self(other(z))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> UniPoly<U> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Renders with the given variable name, Maple style (`8*z^3-8*z-1`).
    pub fn to_string_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = c.to_string();
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push(if negative { '-' } else { '+' });
            }
            let unit = s == "1";
            match k {
                0 => out.push_str(&s),
                _ => {
                    if !unit {
                        out.push_str(&s);
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push('^');
                        out.push_str(&k.to_string());
                    }
                }
            }
        }
        out
    }
}

impl<T: Scalar> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with("z"))
    }
}

impl<T: Scalar> Add for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn add(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeff(k);
            if let Some(b) = rhs.coeffs.get(k) {
                c += b;
            }
            v.push(c);
        }
        UniPoly::new(v)
    }
}

impl<T: Scalar> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn sub(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for k in 0..n {
            let mut c = self.coeff(k);
            if let Some(b) = rhs.coeffs.get(k) {
                c -= b;
            }
            v.push(c);
        }
        UniPoly::new(v)
    }
}

impl<T: Scalar> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn mul(self, rhs: &UniPoly<T>) -> UniPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let t = a.clone() * b;
                v[i + j] += &t;
            }
        }
        UniPoly::new(v)
    }
}

impl<T: Scalar> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn neg(self) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $m(self, rhs: UniPoly<T>) -> UniPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<T: Field> UniPoly<T> {
    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.deg();
        let lead_inv = T::one() / d.lead();
        let mut r = self.coeffs.clone();
        if r.len() < d.coeffs.len() {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![T::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].clone() * &lead_inv;
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    let t = c.clone() * b;
                    r[k + j] -= &t;
                }
            }
            r[k + dd] = T::zero();
            q[k] = c;
        }
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = T::one() / self.lead();
        self.scale(&inv)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd_field(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended Euclid: returns `(g, s, t)` with `s*a + t*b = g`, `g` monic.
    pub fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s2 = &s0 - &(&q * &s1);
            let t2 = &t0 - &(&q * &t1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = T::one() / r0.lead();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse of `self` modulo `m`, if the two are coprime.
    pub fn inverse_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = Self::ext_gcd(&self.rem(m), m);
        if g.degree() == Some(0) {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// `(self * other) mod m`
    pub fn mul_mod(&self, other: &Self, m: &Self) -> Self {
        (self * other).rem(m)
    }
}

/// Integer-coefficient specifics.
impl UniPoly<BigInt> {
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.lead().is_negative() {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    pub fn to_rational(&self) -> UniPoly<Rational> {
        self.map(|c| BigRational::from_integer(c.clone()))
    }

    /// Clears denominators, returning a primitive integer polynomial with the
    /// same roots (positive leading coefficient).
    pub fn from_rational(p: &UniPoly<Rational>) -> Self {
        let mut den = BigInt::one();
        for c in p.coeffs() {
            den = den.lcm(c.denom());
        }
        UniPoly::new(p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect()).primitive()
    }

    /// Pseudo-remainder `lc(b)^e * a mod b` for some `e >= 0`.
    pub fn pseudo_rem(&self, b: &Self) -> Self {
        self.pseudo_rem_counted(b).0
    }

    /// Pseudo-remainder together with the exponent `e` of `lc(b)` used.
    pub fn pseudo_rem_counted(&self, b: &Self) -> (Self, u32) {
        assert!(!b.is_zero());
        let db = b.deg();
        let mut r = self.clone();
        let lb = b.lead();
        let mut e = 0;
        while !r.is_zero() && r.deg() >= db {
            let shift = r.deg() - db;
            let lr = r.lead();
            // r = lb*r - lr*z^shift*b
            let mut v = r.coeffs.iter().map(|c| c * &lb).collect::<Vec<_>>();
            for (j, c) in b.coeffs.iter().enumerate() {
                v[j + shift] -= &lr * c;
            }
            r = Self::new(v);
            e += 1;
        }
        (r, e)
    }

    /// Exact division by `d`; `None` if `d` does not divide `self` over Z.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.deg() < d.deg() {
            return None;
        }
        let dd = d.deg();
        let ld = d.lead();
        let mut r = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let (c, rem) = r[k + dd].div_rem(&ld);
            if !rem.is_zero() {
                return None;
            }
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        if r.iter().all(|c| c.is_zero()) {
            Some(Self::new(q))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient (primitive PRS).
    /// `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.primitive();
        }
        if b.is_zero() {
            return a.primitive();
        }
        let (mut a, mut b) = if a.deg() >= b.deg() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive();
        }
        a.primitive()
    }

    /// Squarefree part `q / gcd(q, q')`, primitive. Errors on zero input.
    pub fn squarefree(&self) -> Result<Self, crate::arith::ArithError> {
        if self.is_zero() {
            return Err(crate::arith::ArithError::ZeroPolynomial);
        }
        let p = self.primitive();
        if p.deg() == 0 {
            return Ok(UniPoly::one());
        }
        let g = Self::gcd(&p, &p.derivative());
        Ok(p.exact_div(&g).expect("gcd divides").primitive())
    }

    /// Sign of `p(x)` at an exact rational.
    pub fn sign_at(&self, x: &Rational) -> Sign {
        Sign::of(&self.eval_rational(x))
    }

    /// `d^deg * p(n/d)` as an integer, sharing the sign of `p(n/d)`.
    pub fn eval_rational(&self, x: &Rational) -> BigInt {
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dpow = BigInt::one();
        // Horner on the homogenized form: sum c_k n^k d^(deg-k)
        for c in self.coeffs.iter().rev() {
            acc = acc * n + c * &dpow;
            dpow *= d;
        }
        // Each step multiplied the previous terms by n and new term by d^j:
        // acc = sum_k c_k n^k d^(deg-k) as required.
        acc
    }

    /// Exact value at a rational.
    pub fn eval_q(&self, x: &Rational) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let h = self.eval_rational(x);
        let dpow = num_traits::pow(x.denom().clone(), self.deg());
        BigRational::new(h, dpow)
    }

    /// Number of sign changes in the coefficient sequence.
    pub fn sign_variations(&self) -> usize {
        let mut count = 0;
        let mut last: Option<bool> = None;
        for c in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let pos = c.is_positive();
            if let Some(l) = last {
                if l != pos {
                    count += 1;
                }
            }
            last = Some(pos);
        }
        count
    }

    /// Reduction modulo `m` over Q, returned as a rational polynomial.
    pub fn rem_q(&self, m: &Self) -> UniPoly<Rational> {
        self.to_rational().rem(&m.to_rational())
    }
}
