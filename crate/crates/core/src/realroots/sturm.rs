//! Sturm sequences, used to cross-check isolation results.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::Sign;
use crate::{Rational, UniPolyZ};

/// `p, p', -rem(p, p'), ...` with primitive integer entries (positive
/// rescaling keeps the sign pattern).
pub fn sturm_sequence(p: &UniPolyZ) -> Vec<UniPolyZ> {
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        // lc(b)^e * a = Q b + R; flip when lc(b)^e < 0 so R keeps the sign of rem(a, b)
        let (r, e) = seq[n - 2].pseudo_rem_counted(&seq[n - 1]);
        let flip = seq[n - 1].lead().is_negative() && e % 2 == 1;
        let r = if flip { r } else { r.scale(&BigInt::from(-1)) };
        if r.is_zero() {
            break;
        }
        let c = r.content();
        seq.push(UniPolyZ::new(r.coeffs().iter().map(|x| x / &c).collect()));
    }
    seq
}

fn variations_at(seq: &[UniPolyZ], x: &Rational) -> usize {
    let signs: Vec<Sign> = seq.iter().map(|p| p.sign_at(x)).filter(|s| *s != Sign::Zero).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn count_roots(p: &UniPolyZ, a: &Rational, b: &Rational) -> usize {
    let seq = sturm_sequence(&p.squarefree().expect("nonzero polynomial"));
    variations_at(&seq, a).saturating_sub(variations_at(&seq, b))
}

/// Number of distinct real roots of `p`.
pub fn count_all_roots(p: &UniPolyZ) -> usize {
    let seq = sturm_sequence(&p.squarefree().expect("nonzero polynomial"));
    let at = |neg: bool| {
        let signs: Vec<bool> = seq
            .iter()
            .filter(|q| !q.is_zero())
            .map(|q| {
                let pos = q.lead().is_positive();
                if neg && q.deg() % 2 == 1 {
                    !pos
                } else {
                    pos
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    at(true) - at(false)
}
