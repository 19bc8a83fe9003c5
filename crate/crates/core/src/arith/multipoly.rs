//! Sparse multivariate polynomials over a [`Scalar`].
//!
//! Terms are kept sorted in decreasing order for the polynomial's
//! [`MonomialOrder`]; all polynomials combined in one operation must share
//! arity and order.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Field, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    DegLex,
    /// Graded reverse lexicographic; the default everywhere.
    #[default]
    DegRevLex,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: Vec<u16>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], deg: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, deg }
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::from_exps(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Whether the monomial is a pure power of one variable (returns it).
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn cmp_in(&self, other: &Monomial, order: MonomialOrder) -> Ordering {
        match order {
            MonomialOrder::Lex => self.exps.cmp(&other.exps),
            MonomialOrder::DegLex => self.deg.cmp(&other.deg).then_with(|| self.exps.cmp(&other.exps)),
            MonomialOrder::DegRevLex => self.deg.cmp(&other.deg).then_with(|| {
                for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                    if a != b {
                        return b.cmp(a);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    fn fmt_with(&self, names: &[String]) -> String {
        let mut parts = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(names[i].clone()),
                _ => parts.push(format!("{}^{}", names[i], e)),
            }
        }
        parts.join("*")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MultiPoly<T> {
    nvars: usize,
    order: MonomialOrder,
    terms: Vec<(Monomial, T)>,
}

impl<T: Scalar> MultiPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, order: MonomialOrder::default(), terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: T) -> Self {
        Self::from_terms(nvars, vec![(Monomial::one(nvars), c)])
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, T::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        Self::from_terms(nvars, vec![(Monomial::var(nvars, i), T::one())])
    }

    /// Builds from unsorted terms, merging duplicates and dropping zeros.
    pub fn from_terms(nvars: usize, terms: Vec<(Monomial, T)>) -> Self {
        Self::from_terms_in(nvars, MonomialOrder::default(), terms)
    }

    pub fn from_terms_in(nvars: usize, order: MonomialOrder, mut terms: Vec<(Monomial, T)>) -> Self {
        for (m, _) in &terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
        }
        terms.sort_by(|a, b| b.0.cmp_in(&a.0, order));
        let mut out: Vec<(Monomial, T)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += &c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        MultiPoly { nvars, order, terms: out }
    }

    /// Affine form `c0 + sum coeffs[i] * x_i`.
    pub fn affine(c0: T, coeffs: &[T]) -> Self {
        let n = coeffs.len();
        let mut terms = vec![(Monomial::one(n), c0)];
        for (i, c) in coeffs.iter().enumerate() {
            terms.push((Monomial::var(n, i), c.clone()));
        }
        Self::from_terms(n, terms)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[(Monomial, T)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Constant term.
    pub fn constant_term(&self) -> T {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => T::zero(),
        }
    }

    pub fn lead_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn lead_coeff(&self) -> Option<&T> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exps()[var]).max().unwrap_or(0)
    }

    /// Coefficient of a given monomial.
    pub fn coeff_of(&self, m: &Monomial) -> T {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(T::zero)
    }

    pub fn with_order(&self, order: MonomialOrder) -> Self {
        Self::from_terms_in(self.nvars, order, self.terms.clone())
    }

    fn check_compat(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomial arity mismatch");
        assert_eq!(self.order, other.order, "monomial order mismatch");
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        self.check_compat(other);
        let order = self.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match ma.cmp_in(mb, order) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), if negate_other { -cb.clone() } else { cb.clone() }));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other { ca.clone() - cb } else { ca.clone() + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for (m, c) in &other.terms[j..] {
            out.push((m.clone(), if negate_other { -c.clone() } else { c.clone() }));
        }
        MultiPoly { nvars: self.nvars, order, terms: out }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return MultiPoly { nvars: self.nvars, order: self.order, terms: Vec::new() };
        }
        MultiPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c)).collect(),
        }
    }

    /// `c * m * self`
    pub fn mul_term(&self, m: &Monomial, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars).with_order(self.order);
        }
        MultiPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c)).collect(),
        }
    }

    /// `a*self - b*m*g`, computed in one merge pass.
    pub fn combine_with_shifted(&self, a: &T, b: &T, m: &Monomial, g: &Self) -> Self {
        self.check_compat(g);
        let order = self.order;
        let a_one = a.is_one();
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let (mut i, mut j) = (0, 0);
        let mut shifted: Option<Monomial> = None;
        while i < self.terms.len() || j < g.terms.len() {
            if shifted.is_none() && j < g.terms.len() {
                shifted = Some(g.terms[j].0.mul(m));
            }
            let pick = match (self.terms.get(i), &shifted) {
                (Some((ma, _)), Some(mb)) => ma.cmp_in(mb, order),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match pick {
                Ordering::Greater => {
                    let (ma, ca) = &self.terms[i];
                    let c = if a_one { ca.clone() } else { ca.clone() * a };
                    out.push((ma.clone(), c));
                    i += 1;
                }
                Ordering::Less => {
                    let mb = shifted.take().unwrap();
                    out.push((mb, -(g.terms[j].1.clone() * b)));
                    j += 1;
                }
                Ordering::Equal => {
                    let mb = shifted.take().unwrap();
                    let mut c = if a_one { self.terms[i].1.clone() } else { self.terms[i].1.clone() * a };
                    c -= &(g.terms[j].1.clone() * b);
                    if !c.is_zero() {
                        out.push((mb, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        MultiPoly { nvars: self.nvars, order, terms: out }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.nvars).with_order(self.order);
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

    pub fn eval(&self, point: &[T]) -> T {
        assert_eq!(point.len(), self.nvars, "evaluation arity mismatch");
        let mut acc = T::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exps()) {
                for _ in 0..e {
                    t *= x;
                }
            }
            acc += &t;
        }
        acc
    }

    /// Partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.exps()[i] > 0)
            .map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                let e = exps[i];
                exps[i] -= 1;
                (Monomial::from_exps(exps), c.clone() * &T::from_u16(e).expect("exponent fits"))
            })
            .collect();
        Self::from_terms_in(self.nvars, self.order, terms)
    }

    /// Replaces every variable by the given polynomial (all over a common
    /// ring of `images[0].nvars()` variables).
    pub fn substitute(&self, images: &[MultiPoly<T>]) -> MultiPoly<T> {
        assert_eq!(images.len(), self.nvars, "substitution arity mismatch");
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let order = images.first().map(|p| p.order).unwrap_or_default();
        let mut powers: Vec<Vec<MultiPoly<T>>> = images.iter().map(|p| vec![MultiPoly::one(target).with_order(order), p.clone()]).collect();
        let mut acc = MultiPoly::zero(target).with_order(order);
        for (m, c) in &self.terms {
            let mut t = MultiPoly::constant(target, c.clone()).with_order(order);
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Fixes variable `var` to `value`, keeping the arity.
    pub fn fix_var(&self, var: usize, value: &T) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.exps()[var];
            let mut exps = m.exps().to_vec();
            exps[var] = 0;
            let mut coeff = c.clone();
            for _ in 0..e {
                coeff *= value;
            }
            terms.push((Monomial::from_exps(exps), coeff));
        }
        Self::from_terms_in(self.nvars, self.order, terms)
    }

    /// Re-embeds into a larger ring; variable `i` maps to `positions[i]`.
    pub fn embed(&self, target_nvars: usize, positions: &[usize]) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0u16; target_nvars];
                for (i, &e) in m.exps().iter().enumerate() {
                    exps[positions[i]] = e;
                }
                (Monomial::from_exps(exps), c.clone())
            })
            .collect();
        Self::from_terms_in(target_nvars, self.order, terms)
    }

    pub fn map_coeffs<U: Scalar>(&self, f: impl Fn(&T) -> U) -> MultiPoly<U> {
        MultiPoly::from_terms_in(self.nvars, self.order, self.terms.iter().map(|(m, c)| (m.clone(), f(c))).collect())
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps()[var] > 0)
    }

    /// Coefficients of the degree-one part and the constant, when affine.
    pub fn as_affine(&self) -> Option<(T, Vec<T>)> {
        if self.total_degree() > 1 {
            return None;
        }
        let mut lin = vec![T::zero(); self.nvars];
        let mut c0 = T::zero();
        for (m, c) in &self.terms {
            match m.pure_power_var() {
                Some(i) => lin[i] = c.clone(),
                None => c0 = c.clone(),
            }
        }
        Some((c0, lin))
    }

    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
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
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&s);
            } else {
                if s != "1" {
                    out.push_str(&s);
                    out.push('*');
                }
                out.push_str(&m.fmt_with(names));
            }
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("x{i}")).collect()
    }
}

impl<T: Field> MultiPoly<T> {
    /// Canonical scaling (monic, or primitive integral for rationals).
    pub fn normalized(&self) -> Self {
        let mut coeffs: Vec<T> = self.terms.iter().map(|(_, c)| c.clone()).collect();
        T::normalize_coeffs(&mut coeffs);
        MultiPoly {
            nvars: self.nvars,
            order: self.order,
            terms: self.terms.iter().zip(coeffs).map(|((m, _), c)| (m.clone(), c)).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead_coeff() {
            Some(c) => self.scale(&(T::one() / c.clone())),
            None => self.clone(),
        }
    }
}

impl<T: Scalar> fmt::Display for MultiPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&Self::default_names(self.nvars)))
    }
}

impl<T: Scalar> Add for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn add(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
        self.merge(rhs, false)
    }
}

impl<T: Scalar> Sub for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn sub(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
        self.merge(rhs, true)
    }
}

impl<T: Scalar> Neg for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn neg(self) -> MultiPoly<T> {
        MultiPoly { nvars: self.nvars, order: self.order, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<T: Scalar> Mul for &MultiPoly<T> {
    type Output = MultiPoly<T>;
    fn mul(self, rhs: &MultiPoly<T>) -> MultiPoly<T> {
        self.check_compat(rhs);
        if self.is_zero() || rhs.is_zero() {
            return MultiPoly { nvars: self.nvars, order: self.order, terms: Vec::new() };
        }
        let (small, large) = if self.len() <= rhs.len() { (self, rhs) } else { (rhs, self) };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return large.mul_term(m, c);
        }
        let mut terms = Vec::with_capacity(self.len() * rhs.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                terms.push((ma.mul(mb), ca.clone() * cb));
            }
        }
        MultiPoly::from_terms_in(self.nvars, self.order, terms)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl<T: Scalar> $tr for MultiPoly<T> {
            type Output = MultiPoly<T>;
            fn $m(self, rhs: MultiPoly<T>) -> MultiPoly<T> {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::{MultiPolyQ, Rational};

    fn x(n: usize, i: usize) -> MultiPolyQ {
        MultiPoly::var(n, i)
    }

    fn c(n: usize, v: i64) -> MultiPolyQ {
        MultiPoly::constant(n, rat(v, 1))
    }

    #[test]
    fn degrevlex_ordering() {
        let a = Monomial::from_exps(vec![1, 0, 1]); // x1 x3
        let b = Monomial::from_exps(vec![0, 2, 0]); // x2^2
        assert_eq!(a.cmp_in(&b, MonomialOrder::DegRevLex), Ordering::Less);
        assert_eq!(a.cmp_in(&b, MonomialOrder::Lex), Ordering::Greater);
        assert_eq!(a.cmp_in(&b, MonomialOrder::DegLex), Ordering::Greater);
    }

    #[test]
    fn arithmetic_identities() {
        let n = 2;
        let p = &(&c(n, 1) + &x(n, 0)) * &(&c(n, 1) - &x(n, 0));
        let expected = &c(n, 1) - &(&x(n, 0) * &x(n, 0));
        assert_eq!(p, expected);
        let q = &p - &(&x(n, 1) * &x(n, 1));
        assert_eq!(q.eval(&[rat(1, 2), rat(1, 2)]), rat(1, 2));
        assert_eq!(q.partial(0), x(n, 0).scale(&rat(-2, 1)));
        assert_eq!(q.total_degree(), 2);
    }

    #[test]
    fn substitution_and_fixing() {
        let n = 2;
        let f = &(&x(n, 0) * &x(n, 1)) + &c(n, 3);
        let g = f.substitute(&[&x(n, 0) + &x(n, 1), x(n, 1)]);
        assert_eq!(g.eval(&[rat(2, 1), rat(5, 1)]), rat(38, 1));
        let h = f.fix_var(0, &rat(2, 1));
        assert_eq!(h, &x(n, 1).scale(&rat(2, 1)) + &c(n, 3));
        let z: MultiPolyQ = MultiPoly::zero(2);
        assert!(z.is_zero());
        let r: Rational = f.constant_term();
        assert_eq!(r, rat(3, 1));
    }

    #[test]
    fn combine_matches_naive() {
        let n = 3;
        let f = &(&x(n, 0) * &x(n, 1)) + &(&x(n, 2) - &c(n, 4));
        let g = &x(n, 1) + &c(n, 2);
        let m = Monomial::var(n, 0);
        let fast = f.combine_with_shifted(&rat(3, 1), &rat(2, 1), &m, &g);
        let slow = &f.scale(&rat(3, 1)) - &g.mul_term(&m, &rat(2, 1));
        assert_eq!(fast, slow);
    }
}
