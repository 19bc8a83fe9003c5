//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the normal
//! selection strategy (smallest lcm first, sugar as tie-break).
//!
//! Reduction runs on integer coefficients (fraction-free `a*f - b*m*g`
//! steps with periodic content removal); the reduced basis is returned with
//! primitive integer coefficients and positive leading coefficients.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Monomial, MonomialOrder, MultiPoly};
use crate::{MultiPolyQ, Rational};

type IntPoly = MultiPoly<BigInt>;

#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    generators: Vec<MultiPolyQ>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine {
    order: MonomialOrder,
    polys: Vec<IntPoly>,
    sugar: Vec<u32>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

fn to_int_poly(f: &MultiPolyQ, order: MonomialOrder) -> IntPoly {
    let g = f.with_order(order).normalized();
    g.map_coeffs(|c| c.to_integer())
}

fn primitive(p: IntPoly) -> IntPoly {
    let mut g = BigInt::zero();
    for (_, c) in p.terms() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    let neg = p.lead_coeff().is_some_and(|c| c.is_negative());
    if g.is_zero() || (g.is_one() && !neg) {
        return p;
    }
    if neg {
        g = -g;
    }
    p.map_coeffs(|c| c / &g)
}

impl Engine {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].lead_monomial().unwrap()
    }

    fn find_reducer(&self, m: &Monomial) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (k, p) in self.polys.iter().enumerate() {
            if !self.active[k] {
                continue;
            }
            if p.lead_monomial().unwrap().divides(m) && best.is_none_or(|b| p.len() < self.polys[b].len()) {
                best = Some(k);
            }
        }
        best
    }

    /// Reduces `p` modulo the active polynomials; with `full`, every term.
    fn reduce(&self, p: IntPoly, full: bool) -> IntPoly {
        self.reduce_from(p, 0, full)
    }

    /// Reduction leaving the first `start` terms untouched (up to scaling).
    fn reduce_from(&self, mut p: IntPoly, start: usize, full: bool) -> IntPoly {
        let mut idx = start;
        let mut steps = 0u32;
        while idx < p.len() {
            let (mono, coeff) = &p.terms()[idx];
            match self.find_reducer(mono) {
                Some(r) => {
                    let g = &self.polys[r];
                    let q = g.lead_monomial().unwrap().quotient_of(mono).unwrap();
                    let lc = g.lead_coeff().unwrap();
                    let d = lc.gcd(coeff);
                    let (mut a, mut b) = (lc / &d, coeff / &d);
                    if a.is_negative() {
                        a = -a;
                        b = -b;
                    }
                    p = p.combine_with_shifted(&a, &b, &q, g);
                    steps += 1;
                    if steps.is_multiple_of(8) {
                        p = primitive(p);
                    }
                }
                None if full => idx += 1,
                None => break,
            }
        }
        primitive(p)
    }

    fn spoly(&self, pair: &Pair) -> IntPoly {
        let (f, g) = (&self.polys[pair.i], &self.polys[pair.j]);
        let mf = f.lead_monomial().unwrap().quotient_of(&pair.lcm).unwrap();
        let mg = g.lead_monomial().unwrap().quotient_of(&pair.lcm).unwrap();
        let (lf, lg) = (f.lead_coeff().unwrap(), g.lead_coeff().unwrap());
        let d = lf.gcd(lg);
        let a = lg / &d;
        let b = lf / &d;
        f.mul_term(&mf, &a).combine_with_shifted(&BigInt::one(), &b, &mg, g)
    }

    fn pair_sugar(&self, i: usize, j: usize, lcm: &Monomial) -> u32 {
        let si = self.sugar[i] + lcm.degree() - self.lm(i).degree();
        let sj = self.sugar[j] + lcm.degree() - self.lm(j).degree();
        si.max(sj)
    }

    /// Gebauer–Möller update after adding polynomial `h` (already pushed).
    fn update(&mut self, h: usize) {
        let lm_h = self.lm(h).clone();
        let candidates: Vec<usize> = (0..h).filter(|&g| self.active[g]).collect();
        let lcms: Vec<Monomial> = candidates.iter().map(|&g| self.lm(g).lcm(&lm_h)).collect();
        let coprime: Vec<bool> = candidates.iter().map(|&g| self.lm(g).is_coprime(&lm_h)).collect();
        // chain criterion among the new pairs
        let mut keep = vec![false; candidates.len()];
        for a in 0..candidates.len() {
            if coprime[a] {
                keep[a] = true;
                continue;
            }
            let dominated = (0..candidates.len()).any(|b| {
                if a == b || !lcms[b].divides(&lcms[a]) {
                    return false;
                }
                if lcms[b] != lcms[a] {
                    return true;
                }
                // equal lcm: keep only the first representative
                b < a && (keep[b] || coprime[b])
            });
            keep[a] = !dominated;
        }
        let mut new_pairs = Vec::new();
        for a in 0..candidates.len() {
            if keep[a] && !coprime[a] {
                let g = candidates[a];
                let sugar = self.pair_sugar(g, h, &lcms[a]);
                new_pairs.push(Pair { i: g, j: h, lcm: lcms[a].clone(), sugar });
            }
        }
        // prune old pairs whose lcm is strictly covered through h
        let polys = &self.polys;
        self.pairs.retain(|p| {
            if !lm_h.divides(&p.lcm) {
                return true;
            }
            let li = polys[p.i].lead_monomial().unwrap().lcm(&lm_h);
            let lj = polys[p.j].lead_monomial().unwrap().lcm(&lm_h);
            li == p.lcm || lj == p.lcm
        });
        self.pairs.extend(new_pairs);
        for g in candidates {
            if lm_h.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = a.lcm.cmp_in(&b.lcm, order).then_with(|| a.sugar.cmp(&b.sugar));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn add(&mut self, h: IntPoly, sugar: u32) -> usize {
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
        let idx = self.polys.len() - 1;
        self.update(idx);
        idx
    }
}

/// Reduced Gröbner basis of the ideal generated by `f` under `order`.
pub fn groebner_basis(f: &[MultiPolyQ], order: MonomialOrder) -> GroebnerBasis {
    let nvars = f.first().map_or(0, |p| p.nvars());
    let mut engine = Engine { order, polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut inputs: Vec<IntPoly> = f.iter().filter(|p| !p.is_zero()).map(|p| to_int_poly(p, order)).collect();
    inputs.sort_by(|a, b| a.lead_monomial().unwrap().cmp_in(b.lead_monomial().unwrap(), order));
    for p in inputs {
        let sugar = p.total_degree();
        let h = engine.reduce(p, true);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return GroebnerBasis::unit(nvars, order);
        }
        engine.add(h, sugar);
    }
    while let Some(pair) = engine.select() {
        let s = engine.spoly(&pair);
        let h = engine.reduce(s, false);
        if h.is_zero() {
            continue;
        }
        let h = engine.reduce(h, true);
        if h.is_constant() {
            return GroebnerBasis::unit(nvars, order);
        }
        engine.add(h, pair.sugar);
    }
    // the active set is minimal; inter-reduce tails
    let active: Vec<usize> = (0..engine.polys.len()).filter(|&k| engine.active[k]).collect();
    let mut reduced = Vec::with_capacity(active.len());
    for &k in &active {
        engine.active[k] = false;
        let q = engine.reduce_from(engine.polys[k].clone(), 1, true);
        engine.active[k] = true;
        reduced.push(primitive(q));
    }
    let mut generators: Vec<MultiPolyQ> = reduced.into_iter().map(|p| p.map_coeffs(|c| Rational::from_integer(c.clone()))).collect();
    generators.sort_by(|a, b| a.lead_monomial().unwrap().cmp_in(b.lead_monomial().unwrap(), order));
    GroebnerBasis { nvars, order, generators }
}

impl GroebnerBasis {
    fn unit(nvars: usize, order: MonomialOrder) -> Self {
        GroebnerBasis { nvars, order, generators: vec![MultiPoly::one(nvars).with_order(order)] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn generators(&self) -> &[MultiPolyQ] {
        &self.generators
    }

    /// Whether the ideal is the whole ring (no solutions).
    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.is_constant() && !g.is_zero())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().map(|g| g.lead_monomial().unwrap().clone()).collect()
    }

    /// Krull dimension of the ideal, `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        if self.is_unit() {
            return None;
        }
        let lms = self.leading_monomials();
        let supports: Vec<Vec<usize>> =
            lms.iter().map(|m| m.exps().iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, _)| i).collect()).collect();
        fn search(var: usize, n: usize, chosen: &mut Vec<bool>, size: usize, supports: &[Vec<usize>], best: &mut usize) {
            if size + (n - var) <= *best {
                return;
            }
            if var == n {
                *best = size;
                return;
            }
            chosen[var] = true;
            let ok = supports.iter().all(|s| !s.iter().all(|&v| chosen[v]));
            if ok {
                search(var + 1, n, chosen, size + 1, supports, best);
            }
            chosen[var] = false;
            search(var + 1, n, chosen, size, supports, best);
        }
        let mut best = 0;
        let mut chosen = vec![false; self.nvars];
        search(0, self.nvars, &mut chosen, 0, &supports, &mut best);
        Some(best)
    }

    /// `(true, count of standard monomials)` when the ideal is
    /// zero-dimensional; the unit ideal counts as zero-dimensional with 0.
    pub fn is_zero_dimensional(&self) -> (bool, Option<usize>) {
        if self.is_unit() {
            return (true, Some(0));
        }
        let lms = self.leading_monomials();
        let has_pure = (0..self.nvars).all(|v| lms.iter().any(|m| m.pure_power_var() == Some(v)));
        if !has_pure {
            return (false, None);
        }
        (true, Some(self.standard_monomials().map_or(0, |s| s.len())))
    }

    /// Monomials outside the leading ideal, increasing in the order, when
    /// there are finitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        let lms = self.leading_monomials();
        let n = self.nvars;
        let mut bounds = vec![u16::MAX; n];
        for m in &lms {
            if let Some(v) = m.pure_power_var() {
                bounds[v] = bounds[v].min(m.exps()[v]);
            }
        }
        if bounds.contains(&u16::MAX) {
            return None;
        }
        let mut out = Vec::new();
        if self.is_unit() {
            return Some(out);
        }
        let mut exps = vec![0u16; n];
        loop {
            let m = Monomial::from_exps(exps.clone());
            if !lms.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            let mut k = 0;
            loop {
                if k == n {
                    out.sort_by(|a, b| a.cmp_in(b, self.order));
                    return Some(out);
                }
                exps[k] += 1;
                if exps[k] < bounds[k] {
                    break;
                }
                exps[k] = 0;
                k += 1;
            }
        }
    }

    /// Remainder of `f` on division by the basis (unique for a reduced basis).
    pub fn normal_form(&self, f: &MultiPolyQ) -> MultiPolyQ {
        let mut p = f.with_order(self.order);
        let mut idx = 0;
        while idx < p.len() {
            let mono = p.terms()[idx].0.clone();
            let reducer = self.generators.iter().find(|g| g.lead_monomial().unwrap().divides(&mono));
            match reducer {
                Some(g) => {
                    let q = g.lead_monomial().unwrap().quotient_of(&mono).unwrap();
                    let b = p.terms()[idx].1.clone() / g.lead_coeff().unwrap();
                    p = p.combine_with_shifted(&Rational::one(), &b, &q, g);
                }
                None => idx += 1,
            }
        }
        p
    }

    pub fn reduces_to_zero(&self, f: &MultiPolyQ) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn check_s_polynomials(&self) -> bool {
        let g = &self.generators;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (li, lj) = (g[i].lead_monomial().unwrap(), g[j].lead_monomial().unwrap());
                let l = li.lcm(lj);
                let a = g[i].mul_term(&li.quotient_of(&l).unwrap(), &(Rational::one() / g[i].lead_coeff().unwrap()));
                let b = g[j].mul_term(&lj.quotient_of(&l).unwrap(), &(Rational::one() / g[j].lead_coeff().unwrap()));
                if !self.reduces_to_zero(&(&a - &b)) {
                    return false;
                }
            }
        }
        true
    }
}
