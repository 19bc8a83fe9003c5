//! Reduction of a positive-dimensional incidence system to finitely many
//! zero-dimensional systems whose real solutions meet every bounded real
//! component (under genericity).
//!
//! After a random change of the x coordinates, the solver takes the
//! critical points of the projection onto the first free x coordinate and
//! then recurses into a fiber where that coordinate is fixed to a random
//! integer. When all x coordinates are fixed, the remaining y fiber is cut
//! by random affine hyperplanes.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use super::groebner::{groebner_basis, GroebnerBasis};
use crate::arith::{det_poly_matrix, MonomialOrder, MultiPoly, PolyMatrix};
use crate::incidence::{random_coordinate_change, substitution_images, IncidenceSystem};
use crate::rng::rng_for;
use crate::{MultiPolyQ, Rational};

const MAX_MINORS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReduceError {
    #[error("zero-dimensionality not reached after {0} slicing rounds")]
    SlicingFailed(usize),
}

/// How a zero-dimensional system was obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Direct,
    Critical { fixed: usize },
    Sliced { fixed: usize, hyperplanes: usize },
}

#[derive(Debug, Clone)]
pub struct ZeroDimSystem {
    pub equations: Vec<MultiPolyQ>,
    pub basis: GroebnerBasis,
    /// Affine forms in the system variables giving the original x.
    pub x_forms: Vec<MultiPolyQ>,
    pub origin: Origin,
}

pub fn reduce_to_dimension_zero(sys: &IncidenceSystem, seed: u64) -> Result<Vec<ZeroDimSystem>, ReduceError> {
    let nv = sys.nvars();
    let nx = sys.nx;
    let gb = groebner_basis(&sys.equations, MonomialOrder::DegRevLex);
    if gb.is_unit() {
        return Ok(Vec::new());
    }
    if gb.dimension() == Some(0) {
        let x_forms = (0..nx).map(|i| MultiPoly::var(nv, i)).collect();
        return Ok(vec![ZeroDimSystem { equations: sys.equations.clone(), basis: gb, x_forms, origin: Origin::Direct }]);
    }
    let (_, m_inv) = random_coordinate_change(seed, nx);
    let images = substitution_images(&m_inv, nv);
    let equations: Vec<MultiPolyQ> = sys.equations.iter().map(|f| f.substitute(&images)).filter(|f| !f.is_zero()).collect();
    let mut ex = Explorer { nv, nx, x_forms: images[..nx].to_vec(), seed, out: Vec::new() };
    ex.explore(&equations, &[], None, &[0])?;
    Ok(ex.out)
}

struct Explorer {
    nv: usize,
    nx: usize,
    x_forms: Vec<MultiPolyQ>,
    seed: u64,
    out: Vec<ZeroDimSystem>,
}

impl Explorer {
    /// `base` never mentions the variables in `fixed`; the full system is
    /// `base` plus `v - value` for each fixed pair.
    fn explore(&mut self, base: &[MultiPolyQ], fixed: &[(usize, Rational)], known: Option<GroebnerBasis>, path: &[u64]) -> Result<(), ReduceError> {
        let full = with_fixings(base, fixed, self.nv);
        let gb = known.unwrap_or_else(|| groebner_basis(&full, MonomialOrder::DegRevLex));
        let Some(d) = gb.dimension() else {
            return Ok(());
        };
        if d == 0 {
            self.push(full, gb, Origin::Critical { fixed: fixed.len() });
            return Ok(());
        }
        let is_fixed = |v: usize| fixed.iter().any(|(w, _)| *w == v);
        let Some(k) = (0..self.nx).find(|&v| !is_fixed(v)) else {
            return self.slice(base, fixed, d, path);
        };
        let free: Vec<usize> = (0..self.nv).filter(|&v| !is_fixed(v)).collect();
        let c = free.len() - d;
        let others: Vec<usize> = free.iter().copied().filter(|&v| v != k).collect();
        if c > 0 {
            match self.critical_equations(base, c, &others, path) {
                Some(minors) => {
                    let mut crit = base.to_vec();
                    crit.extend(minors);
                    let cgb = groebner_basis(&with_fixings(&crit, fixed, self.nv), MonomialOrder::DegRevLex);
                    match cgb.dimension() {
                        None => {}
                        Some(cd) if cd >= d => {
                            log::debug!("critical locus keeps dimension {cd}; slicing instead");
                            return self.slice(base, fixed, d, path);
                        }
                        Some(_) => self.explore(&crit, fixed, Some(cgb), &child(path, 1))?,
                    }
                }
                None => {
                    log::debug!("too many Jacobian minors; slicing instead");
                    return self.slice(base, fixed, d, path);
                }
            }
        }
        let alpha = Rational::from_integer(rng_for(self.seed, &child(path, 2)).gen_range(-5i64..=5).into());
        let fiber: Vec<MultiPolyQ> = base.iter().map(|f| f.fix_var(k, &alpha)).filter(|f| !f.is_zero()).collect();
        let mut fixed2 = fixed.to_vec();
        fixed2.push((k, alpha));
        self.explore(&fiber, &fixed2, None, &child(path, 3))
    }

    /// Maximal minors of the Jacobian of `c` random combinations of `base`
    /// with respect to `vars`, or `None` when there are too many.
    fn critical_equations(&self, base: &[MultiPolyQ], c: usize, vars: &[usize], path: &[u64]) -> Option<Vec<MultiPolyQ>> {
        if c > vars.len() {
            return Some(vec![MultiPoly::one(self.nv)]);
        }
        if binomial(vars.len(), c) > MAX_MINORS {
            return None;
        }
        let g: Vec<MultiPolyQ> = if c == base.len() {
            base.to_vec()
        } else {
            let mut rng = rng_for(self.seed, &child(path, 4));
            (0..c)
                .map(|_| {
                    base.iter().fold(MultiPoly::zero(self.nv), |acc, f| {
                        let r = Rational::from_integer(BigInt::from(rng.gen_range(1i64..=9)));
                        &acc + &f.scale(&r)
                    })
                })
                .collect()
        };
        let jac: Vec<Vec<MultiPolyQ>> = g.iter().map(|f| vars.iter().map(|&v| f.partial(v)).collect()).collect();
        let mut minors = Vec::new();
        for cols in combinations(vars.len(), c) {
            let sub: PolyMatrix<Rational> = PolyMatrix::from_fn(c, c, self.nv, |i, j| jac[i][cols[j]].clone());
            let det = det_poly_matrix(&sub).expect("square and small");
            if !det.is_zero() {
                minors.push(det);
            }
        }
        Some(minors)
    }

    /// Cuts the remaining free variables with `d` random affine
    /// hyperplanes, redrawn until the section is finite.
    fn slice(&mut self, base: &[MultiPolyQ], fixed: &[(usize, Rational)], d: usize, path: &[u64]) -> Result<(), ReduceError> {
        let free: Vec<usize> = (0..self.nv).filter(|&v| !fixed.iter().any(|(w, _)| *w == v)).collect();
        let rounds = self.nx.max(1);
        let mut rng = rng_for(self.seed, &child(path, 5));
        for _ in 0..rounds {
            let mut eqs = with_fixings(base, fixed, self.nv);
            for _ in 0..d {
                let mut coeffs = vec![Rational::zero(); self.nv];
                for &v in &free {
                    coeffs[v] = Rational::from_integer(rng.gen_range(-9i64..=9).into());
                }
                let c0 = Rational::from_integer(rng.gen_range(-9i64..=9).into());
                eqs.push(MultiPoly::affine(c0, &coeffs));
            }
            let gb = groebner_basis(&eqs, MonomialOrder::DegRevLex);
            match gb.dimension() {
                None => return Ok(()),
                Some(0) => {
                    self.push(eqs, gb, Origin::Sliced { fixed: fixed.len(), hyperplanes: d });
                    return Ok(());
                }
                Some(_) => continue,
            }
        }
        Err(ReduceError::SlicingFailed(rounds))
    }

    fn push(&mut self, equations: Vec<MultiPolyQ>, basis: GroebnerBasis, origin: Origin) {
        self.out.push(ZeroDimSystem { equations, basis, x_forms: self.x_forms.clone(), origin });
    }
}

fn with_fixings(base: &[MultiPolyQ], fixed: &[(usize, Rational)], nv: usize) -> Vec<MultiPolyQ> {
    let mut out = base.to_vec();
    for (v, a) in fixed {
        out.push(&MultiPoly::var(nv, *v) - &MultiPoly::constant(nv, a.clone()));
    }
    out
}

fn child(path: &[u64], tag: u64) -> Vec<u64> {
    let mut p = path.to_vec();
    p.push(tag);
    p
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < n - (k - i)) else {
            break;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
    out
}
