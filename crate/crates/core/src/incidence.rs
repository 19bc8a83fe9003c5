//! Incidence systems `A(x) Y(y) = 0` and random changes of coordinates.
//!
//! For a target rank `r`, `Y` is an `m x (m-r)` matrix whose rows indexed by
//! a subset `s` of size `m-r` form the identity; the other `r*(m-r)` entries
//! are unknowns. Every solution gives an `x` with `rank A(x) <= r`, and the
//! `C(m, r)` subsets together cover all such `x`.

use std::fmt;

use num_traits::Zero;
use rand::Rng;

use crate::arith::{Matrix, MultiPoly};
use crate::pencil::LinearPencil;
use crate::rng::rng_for;
use crate::{MatrixQ, MultiPolyQ, Rational, UniPolyQ};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IncidenceError {
    #[error("rank {r} is outside 0..{m}")]
    RankOutOfRange { r: usize, m: usize },
    #[error("row subset {subset} is not valid for m={m}, r={r}")]
    InvalidSubset { subset: String, m: usize, r: usize },
}

/// Strictly increasing 1-based row indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowSubset {
    indices: Vec<usize>,
}

impl RowSubset {
    pub fn new(indices: Vec<usize>) -> Self {
        RowSubset { indices }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    fn is_valid(&self, m: usize, r: usize) -> bool {
        self.indices.len() + r == m && self.indices.windows(2).all(|w| w[0] < w[1]) && self.indices.iter().all(|&i| (1..=m).contains(&i))
    }
}

impl fmt::Display for RowSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `(m-r)`-subsets of `{1..m}` in lexicographic order.
pub fn enumerate_normalizations(m: usize, r: usize) -> Result<Vec<RowSubset>, IncidenceError> {
    if r >= m {
        return Err(IncidenceError::RankOutOfRange { r, m });
    }
    let k = m - r;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(RowSubset::new(cur.clone()));
        let Some(pos) = (0..k).rev().find(|&i| cur[i] < m - (k - 1 - i)) else {
            break;
        };
        cur[pos] += 1;
        for i in pos + 1..k {
            cur[i] = cur[i - 1] + 1;
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct IncidenceSystem {
    pub rank: usize,
    pub subset: RowSubset,
    /// Number of x variables; they come first in the roster.
    pub nx: usize,
    /// Names of all variables, x block then y block.
    pub var_names: Vec<String>,
    pub equations: Vec<MultiPolyQ>,
}

impl IncidenceSystem {
    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn ny(&self) -> usize {
        self.var_names.len() - self.nx
    }
}

pub fn build_incidence_system(p: &LinearPencil, r: usize, s: &RowSubset) -> Result<IncidenceSystem, IncidenceError> {
    let m = p.m();
    if r >= m {
        return Err(IncidenceError::RankOutOfRange { r, m });
    }
    if !s.is_valid(m, r) {
        return Err(IncidenceError::InvalidSubset { subset: s.to_string(), m, r });
    }
    let n = p.n();
    let k = m - r;
    let free_rows: Vec<usize> = (0..m).filter(|i| !s.indices.contains(&(i + 1))).collect();
    let ny = free_rows.len() * k;
    let nv = n + ny;
    let mut var_names: Vec<String> = p.vars().to_vec();
    for &row in &free_rows {
        for col in 0..k {
            var_names.push(format!("y{}_{}", row + 1, col + 1));
        }
    }
    let x_positions: Vec<usize> = (0..n).collect();
    let y = |row: usize, col: usize| -> MultiPolyQ {
        if let Some(pos) = s.indices.iter().position(|&i| i == row + 1) {
            if pos == col {
                MultiPoly::one(nv)
            } else {
                MultiPoly::zero(nv)
            }
        } else {
            let fr = free_rows.iter().position(|&f| f == row).unwrap();
            MultiPoly::var(nv, n + fr * k + col)
        }
    };
    let mut equations = Vec::with_capacity(m * k);
    for i in 0..m {
        for col in 0..k {
            let mut acc = MultiPoly::zero(nv);
            for j in 0..m {
                let a = p.entry(i, j);
                if a.is_zero() {
                    continue;
                }
                let yj = y(j, col);
                if yj.is_zero() {
                    continue;
                }
                acc = &acc + &(&a.embed(nv, &x_positions) * &yj);
            }
            equations.push(acc);
        }
    }
    Ok(IncidenceSystem { rank: r, subset: s.clone(), nx: n, var_names, equations })
}

/// A random invertible `n x n` integer matrix (entries uniform in
/// `[-99, 99]`, resampled until invertible) and its exact inverse.
pub fn random_coordinate_change(seed: u64, n: usize) -> (MatrixQ, MatrixQ) {
    let mut rng = rng_for(seed, &[0xc0de]);
    loop {
        let m = Matrix::from_fn(n, n, |_, _| Rational::from_integer(rng.gen_range(-99i64..=99).into()));
        if let Some(inv) = m.inverse() {
            return (m, inv);
        }
    }
}

/// `x = M^{-1} x'`.
pub fn pull_back_point(m_inv: &MatrixQ, point: &[Rational]) -> Vec<Rational> {
    m_inv.mul_vec(point)
}

/// `x' = M x`.
pub fn push_forward_point(m: &MatrixQ, point: &[Rational]) -> Vec<Rational> {
    m.mul_vec(point)
}

/// Coordinate numerators in the original frame: `q_i = sum_j Minv_ij q'_j`.
pub fn pull_back_coords(m_inv: &MatrixQ, coords: &[UniPolyQ]) -> Vec<UniPolyQ> {
    (0..m_inv.rows())
        .map(|i| {
            let mut acc = UniPolyQ::zero();
            for (j, q) in coords.iter().enumerate() {
                let c = &m_inv[(i, j)];
                if !c.is_zero() {
                    acc = &acc + &q.scale(c);
                }
            }
            acc
        })
        .collect()
}

/// Polynomials expressing old variables in new ones: `x_i = sum_j Minv_ij x'_j`,
/// embedded in a ring of `nvars` variables with the x block first.
pub fn substitution_images(m_inv: &MatrixQ, nvars: usize) -> Vec<MultiPolyQ> {
    let n = m_inv.rows();
    let mut images: Vec<MultiPolyQ> = (0..n)
        .map(|i| {
            let terms =
                (0..n).filter(|&j| !m_inv[(i, j)].is_zero()).map(|j| (crate::arith::Monomial::var(nvars, j), m_inv[(i, j)].clone())).collect();
            MultiPoly::from_terms(nvars, terms)
        })
        .collect();
    images.extend((n..nvars).map(|v| MultiPoly::var(nvars, v)));
    images
}
