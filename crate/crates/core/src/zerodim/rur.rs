//! Rational univariate representations via traces in the quotient algebra.
//!
//! For a separating form `t`, the solutions are `{ v = g_v(z) / g_1(z) :
//! q(z) = 0 }` where `q` is the squarefree part of the characteristic
//! polynomial of multiplication by `t` and
//! `g_v(T) = sum_i T^i sum_j a_{i+j+1} Tr(M_{v t^j})`.
//! This stays correct when solutions have multiplicity.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use super::groebner::{groebner_basis, GroebnerBasis};
use super::quotient::QuotientAlgebra;
use crate::arith::{Matrix, MonomialOrder, UniPoly};
use crate::rng::rng_for;
use crate::{MultiPolyQ, Rational, UniPolyQ, UniPolyZ};

const MAX_FORM_ATTEMPTS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RurError {
    #[error("system is not zero-dimensional")]
    NotZeroDimensional,
    #[error("no separating linear form found after {0} attempts")]
    NoSeparatingForm(usize),
}

/// `{ (q_1(z)/q_0(z), ..., q_n(z)/q_0(z)) : q(z) = 0 }` with integer
/// polynomials; `q` is squarefree and coprime to `q_0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rur {
    pub q: UniPolyZ,
    pub q0: UniPolyZ,
    /// Numerators of the requested coordinates.
    pub coords: Vec<UniPolyZ>,
    /// Numerators of every variable of the solved system.
    pub system_coords: Vec<UniPolyZ>,
    /// Coefficients of the separating form over the system variables.
    pub separating_form: Vec<Rational>,
    /// Per coordinate, a squarefree polynomial vanishing at its value at
    /// every solution.
    pub eliminants: Vec<UniPolyZ>,
}

impl Rur {
    /// The representation of the empty set (`q = 1`).
    pub fn empty(ncoords: usize, nvars: usize) -> Self {
        Rur {
            q: UniPoly::one(),
            q0: UniPoly::one(),
            coords: vec![UniPoly::zero(); ncoords],
            system_coords: vec![UniPoly::zero(); nvars],
            separating_form: vec![Rational::zero(); nvars],
            eliminants: vec![UniPoly::one(); ncoords],
        }
    }

    pub fn is_empty(&self) -> bool {
        self.q.deg() == 0
    }

    pub fn degree(&self) -> usize {
        self.q.deg()
    }
}

/// RUR of a zero-dimensional system, with one coordinate per variable.
pub fn rur_from_system(f: &[MultiPolyQ], seed: u64) -> Result<Rur, RurError> {
    let gb = groebner_basis(f, MonomialOrder::DegRevLex);
    let nvars = gb.nvars();
    let forms: Vec<MultiPolyQ> = (0..nvars).map(|i| MultiPolyQ::var(nvars, i)).collect();
    rur_from_basis(&gb, &forms, nvars, seed)
}

/// RUR of `<gb>` reporting the given affine forms as coordinates.
///
/// Separating forms are tried first over the leading `preferred` variables
/// (coefficient 1 on the first one), then over all variables.
pub fn rur_from_basis(gb: &GroebnerBasis, coord_forms: &[MultiPolyQ], preferred: usize, seed: u64) -> Result<Rur, RurError> {
    let nvars = gb.nvars();
    if gb.is_unit() {
        return Ok(Rur::empty(coord_forms.len(), nvars));
    }
    let qa = QuotientAlgebra::new(gb).ok_or(RurError::NotZeroDimensional)?;
    let dim = qa.dim();
    let tau = qa.trace_vector();
    let mut hermite_rank: Option<usize> = None;
    let mut rng = rng_for(seed, &[0x5e9a]);
    for attempt in 0..MAX_FORM_ATTEMPTS {
        let lambda = candidate_form(attempt, nvars, preferred.clamp(1, nvars.max(1)), &mut rng);
        let u = Krylov::new(&qa, &tau, &Rational::zero(), &lambda);
        let q = u.squarefree_charpoly();
        let d = q.deg();
        if d < dim {
            let rank = *hermite_rank.get_or_insert_with(|| qa.hermite_matrix(&tau).rank());
            if rank != d {
                log::debug!("separating form attempt {attempt} rejected: {d} distinct values for {rank} points");
                continue;
            }
        }
        let a: Vec<Rational> = q.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect();
        let g_of = |coords: &[Rational]| -> UniPolyQ {
            let sigma: Vec<Rational> = (0..d).map(|j| u.dot(j, coords)).collect();
            let c: Vec<Rational> = (0..d)
                .map(|i| {
                    let mut acc = Rational::zero();
                    for j in 0..d - i {
                        acc += &a[i + j + 1] * &sigma[j];
                    }
                    acc
                })
                .collect();
            UniPoly::new(c)
        };
        let one = qa.affine_coords(&Rational::one(), &[]);
        let g1 = g_of(&one);
        let var_polys: Vec<UniPolyQ> = (0..nvars)
            .map(|i| {
                let mut e = vec![Rational::zero(); nvars];
                e[i] = Rational::one();
                g_of(&qa.affine_coords(&Rational::zero(), &e))
            })
            .collect();
        let coord_polys: Vec<UniPolyQ> = coord_forms
            .iter()
            .map(|f| {
                let (c0, lin) = f.as_affine().expect("coordinate forms are affine");
                g_of(&qa.affine_coords(&c0, &lin))
            })
            .collect();
        let mut all = vec![g1];
        all.extend(coord_polys);
        all.extend(var_polys);
        let ints = clear_jointly(&all);
        let q0 = ints[0].clone();
        let coords = ints[1..1 + coord_forms.len()].to_vec();
        let system_coords = ints[1 + coord_forms.len()..].to_vec();
        let mut table = ParamEvaluator::new(&q, &q0, &system_coords);
        if !gb.generators().iter().all(|f| table.vanishes(f)) {
            // cannot happen for a separating form; treat as a rejected form
            log::warn!("parametrization residual check failed for form attempt {attempt}");
            continue;
        }
        let eliminants = coord_forms
            .iter()
            .map(|f| {
                let (c0, lin) = f.as_affine().expect("coordinate forms are affine");
                Krylov::new(&qa, &tau, &c0, &lin).squarefree_charpoly()
            })
            .collect();
        return Ok(Rur { q, q0, coords, system_coords, separating_form: lambda, eliminants });
    }
    Err(RurError::NoSeparatingForm(MAX_FORM_ATTEMPTS))
}

/// The rows `tau^T M^j` for `j = 0..=dim`, stored as integer vectors
/// `w_j` with `tau^T M^j = w_j * scale_j`.
struct Krylov {
    w: Vec<Vec<BigInt>>,
    scale: Vec<Rational>,
}

impl Krylov {
    /// `M` is multiplication by `c0 + lin . x`.
    fn new(qa: &QuotientAlgebra, tau: &[Rational], c0: &Rational, lin: &[Rational]) -> Self {
        let m = qa.affine_mult_matrix(c0, lin);
        let l = (0..m.rows()).flat_map(|i| m.row(i)).fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let n: Matrix<BigInt> = m.map(|x| x.numer() * (&l / x.denom()));
        let (t, s) = integer_vector(tau);
        let dim = qa.dim();
        let mut w = Vec::with_capacity(dim + 1);
        let mut scale = Vec::with_capacity(dim + 1);
        w.push(t);
        scale.push(Rational::new(BigInt::one(), s));
        for j in 1..=dim {
            let next = n.vec_mul(&w[j - 1]);
            w.push(next);
            let sc = &scale[j - 1] / Rational::from_integer(l.clone());
            scale.push(sc);
        }
        Krylov { w, scale }
    }

    fn squarefree_charpoly(&self) -> UniPolyZ {
        let power_sums: Vec<Rational> = self.w.iter().zip(&self.scale).map(|(v, s)| s * Rational::from_integer(v[0].clone())).collect();
        let chi = charpoly_from_power_sums(&power_sums, self.w.len() - 1);
        UniPolyZ::from_rational(&chi).squarefree().expect("characteristic polynomial is nonzero")
    }

    /// `tau^T M^j . coords`
    fn dot(&self, j: usize, coords: &[Rational]) -> Rational {
        let (c, den) = integer_vector(coords);
        let mut acc = BigInt::zero();
        for (x, y) in self.w[j].iter().zip(&c) {
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
        Rational::new(acc, den) * &self.scale[j]
    }
}

/// `v = w / den` with integer `w`.
fn integer_vector(v: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    (v.iter().map(|x| x.numer() * (&den / x.denom())).collect(), den)
}

fn candidate_form(attempt: usize, nvars: usize, preferred: usize, rng: &mut impl Rng) -> Vec<Rational> {
    let mut lambda = vec![Rational::zero(); nvars];
    if nvars == 0 {
        return lambda;
    }
    lambda[0] = Rational::one();
    if attempt == 0 {
        for l in lambda.iter_mut().take(preferred).skip(1) {
            *l = Rational::from_integer(rng.gen_range(-3i64..=3).into());
        }
    } else {
        let bound = 4 * attempt as i64;
        for l in lambda.iter_mut().skip(1) {
            *l = Rational::from_integer(rng.gen_range(-bound..=bound).into());
        }
    }
    lambda
}

/// `det(T*I - M)` from the power sums `p_j = Tr(M^j)`, `j = 0..=dim`.
fn charpoly_from_power_sums(p: &[Rational], dim: usize) -> UniPolyQ {
    let mut e = vec![Rational::one()];
    for k in 1..=dim {
        let mut acc = Rational::zero();
        for i in 1..=k {
            let term = &e[k - i] * &p[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        e.push(acc / Rational::from_integer(BigInt::from(k)));
    }
    let mut coeffs = vec![Rational::zero(); dim + 1];
    for (k, ek) in e.into_iter().enumerate() {
        coeffs[dim - k] = if k % 2 == 0 { ek } else { -ek };
    }
    UniPoly::new(coeffs)
}

/// Residue `num / lc(q)^k` modulo an integer polynomial `q`.
#[derive(Clone)]
struct Residue {
    num: UniPolyZ,
    k: u32,
}

/// Substitutes `x_i = g_i(z)/g_0(z)` into polynomials modulo `q`, sharing
/// the powers of the `g_i` across calls. Arithmetic stays in `Z[z]`.
pub struct ParamEvaluator<'a> {
    q: &'a UniPolyZ,
    lc_pows: Vec<BigInt>,
    g0: Vec<Residue>,
    gs: Vec<Vec<Residue>>,
}

impl<'a> ParamEvaluator<'a> {
    pub fn new(q: &'a UniPolyZ, g0: &UniPolyZ, gs: &[UniPolyZ]) -> Self {
        let mut t = ParamEvaluator { q, lc_pows: vec![BigInt::one()], g0: Vec::new(), gs: Vec::new() };
        let one = t.reduce(UniPoly::one(), 0);
        t.g0 = vec![one.clone(), t.reduce(g0.clone(), 0)];
        t.gs = gs.iter().map(|g| vec![one.clone(), t.reduce(g.clone(), 0)]).collect();
        t
    }

    fn lc_pow(&mut self, k: u32) -> BigInt {
        while self.lc_pows.len() <= k as usize {
            let next = self.lc_pows.last().unwrap() * self.q.lead();
            self.lc_pows.push(next);
        }
        self.lc_pows[k as usize].clone()
    }

    fn reduce(&self, num: UniPolyZ, k: u32) -> Residue {
        let (num, e) = num.pseudo_rem_counted(self.q);
        Residue { num, k: k + e }
    }

    fn mul(&self, a: &Residue, b: &Residue) -> Residue {
        self.reduce(&a.num * &b.num, a.k + b.k)
    }

    fn add(&mut self, a: &Residue, b: &Residue) -> Residue {
        let k = a.k.max(b.k);
        let sa = a.num.scale(&self.lc_pow(k - a.k));
        let sb = b.num.scale(&self.lc_pow(k - b.k));
        Residue { num: &sa + &sb, k }
    }

    fn power(table: &mut Vec<Residue>, e: usize, this: &Self) {
        while table.len() <= e {
            let next = this.mul(&table[table.len() - 1], &table[1]);
            table.push(next);
        }
    }

    /// `(R, k)` with `R(z) = lc(q)^k * c * f(g_1/g_0, ..., g_n/g_0) * g_0^deg`
    /// modulo `q`, `deg(R) < deg(q)`, where `c > 0` clears the denominators
    /// of `f` and `deg >= deg(f)`.
    pub fn numerator(&mut self, f: &MultiPolyQ, deg: usize) -> (UniPolyZ, u32) {
        assert!(deg >= f.total_degree() as usize);
        let den = f.terms().iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let mut g0 = std::mem::take(&mut self.g0);
        Self::power(&mut g0, deg, self);
        self.g0 = g0;
        let mut acc = Residue { num: UniPoly::zero(), k: 0 };
        for (mono, c) in f.terms() {
            let c = c.numer() * (&den / c.denom());
            let mut t = self.g0[deg - mono.degree() as usize].clone();
            t.num = t.num.scale(&c);
            for (v, &e) in mono.exps().iter().enumerate() {
                if e > 0 {
                    let mut pows = std::mem::take(&mut self.gs[v]);
                    Self::power(&mut pows, e as usize, self);
                    t = self.mul(&t, &pows[e as usize]);
                    self.gs[v] = pows;
                }
            }
            acc = self.add(&acc, &t);
        }
        (acc.num, acc.k)
    }

    /// Whether `f(g_1/g_0, ..., g_n/g_0) * g_0^deg(f)` vanishes modulo `q`.
    pub fn vanishes(&mut self, f: &MultiPolyQ) -> bool {
        self.numerator(f, f.total_degree() as usize).0.is_zero()
    }
}

/// Whether substituting an integer parametrization into `f` leaves a
/// numerator divisible by `q`.
pub fn residual_vanishes(q: &UniPolyZ, q0: &UniPolyZ, coords: &[UniPolyZ], f: &MultiPolyQ) -> bool {
    ParamEvaluator::new(q, q0, coords).vanishes(f)
}

/// Scales rational polynomials by one common factor to coprime integer
/// polynomials, with the first one having a positive leading coefficient.
fn clear_jointly(polys: &[UniPolyQ]) -> Vec<UniPolyZ> {
    let mut den = BigInt::one();
    for p in polys {
        for c in p.coeffs() {
            den = den.lcm(c.denom());
        }
    }
    let ints: Vec<Vec<BigInt>> = polys.iter().map(|p| p.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect()).collect();
    let mut g = BigInt::zero();
    for c in ints.iter().flatten() {
        g = g.gcd(c);
    }
    if g.is_zero() {
        g = BigInt::one();
    }
    if polys[0].lead().is_negative() {
        g = -g;
    }
    ints.into_iter().map(|cs| UniPoly::new(cs.into_iter().map(|c| c / &g).collect())).collect()
}
