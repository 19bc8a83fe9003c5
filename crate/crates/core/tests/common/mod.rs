#![allow(dead_code)]

use std::path::PathBuf;

use exactlmi::arith::{MultiPoly, UniPoly};
use exactlmi::pencil::parse_pencil_path;
use exactlmi::{LinearPencil, MultiPolyQ, Rational, UniPolyZ};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn load(name: &str) -> LinearPencil {
    parse_pencil_path(&data(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn qi(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn zpoly(c: &[i64]) -> UniPolyZ {
    UniPoly::from_i64(c)
}

pub fn var(nv: usize, i: usize) -> MultiPolyQ {
    MultiPoly::var(nv, i)
}

pub fn cst(nv: usize, c: i64) -> MultiPolyQ {
    MultiPoly::constant(nv, qi(c))
}

/// Dense polynomials over Q as coefficient vectors, constant term first.
/// Written independently of the crate's polynomial code.
pub mod dense {
    use super::*;

    pub fn trim(mut a: Vec<Rational>) -> Vec<Rational> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn from_z(p: &UniPolyZ) -> Vec<Rational> {
        trim(p.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect())
    }

    pub fn mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    pub fn add(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = a.len().max(b.len());
        trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect())
    }

    pub fn rem(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by zero polynomial");
        let mut r = trim(a.to_vec());
        let lb = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let c = r.last().unwrap() / &lb;
            let shift = r.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] -= &c * bi;
            }
            r.pop();
            r = trim(r);
        }
        r
    }

    pub fn div_exact(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let (a, b) = (trim(a.to_vec()), trim(b.to_vec()));
        if a.len() < b.len() {
            assert!(a.is_empty(), "inexact division");
            return a;
        }
        let mut r = a;
        let lb = b.last().unwrap().clone();
        let mut out = vec![Rational::zero(); r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let c = r.last().unwrap() / &lb;
            let shift = r.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                r[shift + i] -= &c * bi;
            }
            out[shift] = c;
            r.pop();
            r = trim(r);
        }
        assert!(r.is_empty(), "inexact division");
        trim(out)
    }

    pub fn monic(a: &[Rational]) -> Vec<Rational> {
        let a = trim(a.to_vec());
        match a.last() {
            Some(l) => {
                let l = l.clone();
                a.iter().map(|c| c / &l).collect()
            }
            None => a,
        }
    }

    /// Euclid's algorithm over Q, monic result.
    pub fn gcd(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        monic(&a)
    }

    pub fn eval(a: &[Rational], x: &Rational) -> Rational {
        a.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(a: &[Rational]) -> Vec<Rational> {
        trim(a.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(BigInt::from(i))).collect())
    }

    pub fn pow(a: &[Rational], e: u32) -> Vec<Rational> {
        (0..e).fold(vec![Rational::one()], |acc, _| mul(&acc, a))
    }
}

/// Determinant by expansion over permutations.
pub fn det_by_permutations(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Rational::zero();
    permute(&mut perm, 0, &mut |p| {
        let mut inversions = 0;
        for i in 0..n {
            for j in i + 1..n {
                if p[i] > p[j] {
                    inversions += 1;
                }
            }
        }
        let mut term = Rational::one();
        for (i, &j) in p.iter().enumerate() {
            term *= &a[i][j];
        }
        if inversions % 2 == 1 {
            term = -term;
        }
        total += term;
    });
    total
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Rank by Gaussian elimination over Q.
pub fn rank_by_elimination(a: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, p);
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &m[rank][c];
                let pivot = m[rank].clone();
                for (v, pk) in m[r].iter_mut().zip(&pivot).skip(c) {
                    *v -= &f * pk;
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn sign_dense(p: &[Rational], x: &Rational) -> i32 {
    let v = dense::eval(p, x);
    if v.is_zero() {
        0
    } else if v.is_positive() {
        1
    } else {
        -1
    }
}

/// Numerator of `f(c_1/c_0, ..., c_n/c_0)` reduced modulo `q`, computed
/// with dense rational polynomials: every monomial is homogenized to the
/// total degree of `f` with powers of `c_0`.
pub fn residual_mod(f: &MultiPolyQ, q: &UniPolyZ, c0: &UniPolyZ, coords: &[UniPolyZ]) -> Vec<Rational> {
    let qd = dense::from_z(q);
    let c0d = dense::from_z(c0);
    let cd: Vec<Vec<Rational>> = coords.iter().map(dense::from_z).collect();
    let deg = f.total_degree();
    let mut acc: Vec<Rational> = Vec::new();
    for (mono, c) in f.terms() {
        let mut term = vec![c.clone()];
        for (i, &e) in mono.exps().iter().enumerate() {
            for _ in 0..e {
                term = dense::rem(&dense::mul(&term, &cd[i]), &qd);
            }
        }
        for _ in mono.degree()..deg {
            term = dense::rem(&dense::mul(&term, &c0d), &qd);
        }
        acc = dense::add(&acc, &term);
    }
    dense::rem(&acc, &qd)
}

pub fn is_abs_le(x: &Rational, bound: i64) -> bool {
    x.abs() <= qi(bound)
}
