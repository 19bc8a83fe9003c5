//! Real root isolation by Descartes' rule of signs with bisection.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::rational::simplest_between;
use crate::arith::{ArithError, RatInterval, Sign};
use crate::{Rational, UniPolyZ};

/// Integer polynomial with the roots of `p` on `(a, b)` moved to `(0, 1)`:
/// a positive multiple of `p(a + (b - a) t)`.
fn to_unit_interval(p: &UniPolyZ, a: &Rational, b: &Rational) -> UniPolyZ {
    let w = b - a;
    let d = a.denom().clone() * w.denom() / num_integer::Integer::gcd(a.denom(), w.denom());
    let n = p.deg();
    // P1(s) = d^n p(s / d)
    let mut dpow = BigInt::one();
    let mut c1 = vec![BigInt::zero(); n + 1];
    for i in (0..=n).rev() {
        c1[i] = p.coeff(i) * &dpow;
        dpow *= &d;
    }
    let u = a.numer() * (&d / a.denom());
    let v = w.numer() * (&d / w.denom());
    UniPolyZ::new(c1).taylor_shift(&u).scale_var(&v)
}

/// Descartes bound on the number of roots of `p` in the open interval
/// `(a, b)`. Exact when it is 0 or 1.
pub fn descartes_bound(p: &UniPolyZ, a: &Rational, b: &Rational) -> usize {
    let t = to_unit_interval(p, a, b);
    t.reverse().taylor_shift(&BigInt::one()).sign_variations()
}

/// Power of two strictly larger than the absolute value of every root.
pub fn root_bound(p: &UniPolyZ) -> Rational {
    let lead = p.lead().abs();
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let k = (max.bits() as i64 - lead.bits() as i64 + 2).max(1);
    crate::arith::rational::pow2(k)
}

/// Isolating intervals for the real roots of `p`, in increasing order.
///
/// Rational roots come back as point intervals; for the others, the open
/// interval `(lo, hi)` contains exactly one root and the endpoints are not
/// roots.
pub fn isolate_real_roots(p: &UniPolyZ) -> Result<Vec<RatInterval>, ArithError> {
    let p = p.squarefree()?;
    if p.deg() == 0 {
        return Ok(Vec::new());
    }
    let b = root_bound(&p);
    let mut out = Vec::new();
    let mut stack = vec![(-b.clone(), b)];
    while let Some((lo, hi)) = stack.pop() {
        match descartes_bound(&p, &lo, &hi) {
            0 => {}
            1 => out.push(RatInterval::new(lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Rational::from_integer(BigInt::from(2));
                if p.sign_at(&mid) == Sign::Zero {
                    let delta = clear_neighbourhood(&p, &mid, &(&hi - &mid));
                    out.push(RatInterval::point(mid.clone()));
                    stack.push((&mid + &delta, hi));
                    stack.push((lo, &mid - &delta));
                } else {
                    stack.push((mid.clone(), hi));
                    stack.push((lo, mid));
                }
            }
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    let lc2 = p.lead() * p.lead();
    Ok(out.into_iter().map(|iv| detect_rational(&p, iv, &lc2)).collect())
}

/// A radius around the rational root `r` free of other roots.
fn clear_neighbourhood(p: &UniPolyZ, r: &Rational, start: &Rational) -> Rational {
    let lin = UniPolyZ::new(vec![-r.numer().clone(), r.denom().clone()]);
    let rest = p.exact_div(&lin).expect("rational root gives a linear factor");
    let mut delta = start.clone();
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    loop {
        delta = &delta * &half;
        let (a, b) = (r - &delta, r + &delta);
        if rest.deg() == 0 || (rest.sign_at(&a) != Sign::Zero && rest.sign_at(&b) != Sign::Zero && descartes_bound(&rest, &a, &b) == 0) {
            return delta;
        }
    }
}

/// Rational roots `n/d` of `p` have `d | lc(p)`, so two of them are at
/// least `1/lc^2` apart; below that width the simplest rational in the
/// interval is the only candidate.
fn detect_rational(p: &UniPolyZ, iv: RatInterval, lc2: &BigInt) -> RatInterval {
    if iv.is_point() {
        return iv;
    }
    let target = Rational::new(BigInt::one(), lc2.clone());
    let iv = refine_interval(p, &iv, &target);
    if iv.is_point() {
        return iv;
    }
    let s = simplest_between(&iv.lo, &iv.hi);
    if p.sign_at(&s) == Sign::Zero {
        RatInterval::point(s)
    } else {
        iv
    }
}

/// Shrinks an isolating interval of a root of squarefree `p` until its
/// width is at most `width`, by quadratic interval refinement: a secant
/// guess snapped to a grid of `n` cells, with `n` squared after each hit
/// and bisection after each miss.
pub fn refine_interval(p: &UniPolyZ, iv: &RatInterval, width: &Rational) -> RatInterval {
    let mut iv = iv.clone();
    if iv.is_point() {
        return iv;
    }
    let s_lo = p.sign_at(&iv.lo);
    let four = BigInt::from(4);
    let mut n = four.clone();
    while &iv.width() > width {
        let step = match secant_cell(p, &iv, s_lo, &n) {
            Some(r) => {
                n = &n * &n;
                r
            }
            None => {
                n = n.sqrt().max(four.clone());
                bisect_step(p, &iv, s_lo)
            }
        };
        match step {
            Ok(next) => iv = next,
            Err(exact) => return exact,
        }
    }
    iv
}

/// The cell of the `n`-grid on `iv` holding the secant root, if it
/// brackets the root of `p`; `Err` carries an exact root on the grid.
fn secant_cell(p: &UniPolyZ, iv: &RatInterval, s_lo: Sign, n: &BigInt) -> Option<Result<RatInterval, RatInterval>> {
    // p(lo) = a / dlo^deg, p(hi) = b / dhi^deg; the secant root sits at
    // fraction x / (x - y) of the interval
    let deg = p.deg();
    let x = p.eval_rational(&iv.lo) * num_traits::pow(iv.hi.denom().clone(), deg);
    let y = p.eval_rational(&iv.hi) * num_traits::pow(iv.lo.denom().clone(), deg);
    let k = num_integer::Integer::div_floor(&(n * &x), &(&x - &y)).clamp(BigInt::zero(), n - 1);
    let cell = iv.width() / Rational::from_integer(n.clone());
    let lo = &iv.lo + &cell * Rational::from_integer(k);
    let hi = &lo + &cell;
    let (sl, sh) = (p.sign_at(&lo), p.sign_at(&hi));
    if sl == Sign::Zero {
        return Some(Err(RatInterval::point(lo)));
    }
    if sh == Sign::Zero {
        return Some(Err(RatInterval::point(hi)));
    }
    (sl == s_lo && sh != s_lo).then(|| Ok(RatInterval::new(lo, hi)))
}

/// Halves an isolating interval whose lower endpoint has sign `s_lo`;
/// `Err` carries an exact root hit at the midpoint.
pub(crate) fn bisect_step(p: &UniPolyZ, iv: &RatInterval, s_lo: Sign) -> Result<RatInterval, RatInterval> {
    let mid = iv.midpoint();
    let s = p.sign_at(&mid);
    if s == Sign::Zero {
        Err(RatInterval::point(mid))
    } else if s == s_lo {
        Ok(RatInterval::new(mid, iv.hi.clone()))
    } else {
        Ok(RatInterval::new(iv.lo.clone(), mid))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rational::rat;
    use crate::arith::UniPoly;

    #[test]
    fn sqrt_two() {
        let roots = isolate_real_roots(&UniPoly::from_i64(&[-2, 0, 1])).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(roots[0].lo >= rat(-2, 1) && roots[0].hi <= rat(-1, 1));
        assert!(roots[1].lo >= rat(1, 1) && roots[1].hi <= rat(2, 1));
    }

    #[test]
    fn rational_roots_are_points() {
        let roots = isolate_real_roots(&UniPoly::from_i64(&[0, -1, 1])).unwrap();
        assert_eq!(roots, vec![RatInterval::point(rat(0, 1)), RatInterval::point(rat(1, 1))]);
        // (3z - 1)(z^2 - 2)(2z + 5)
        let p = &(&UniPoly::from_i64(&[-1, 3]) * &UniPoly::from_i64(&[-2, 0, 1])) * &UniPoly::from_i64(&[5, 2]);
        let roots = isolate_real_roots(&p).unwrap();
        assert_eq!(roots.len(), 4);
        assert_eq!(roots[0], RatInterval::point(rat(-5, 2)));
        assert_eq!(roots[2], RatInterval::point(rat(1, 3)));
        assert!(!roots[1].is_point() && !roots[3].is_point());
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_real_roots(&UniPoly::from_i64(&[1, 0, 1])).unwrap().is_empty());
        assert!(isolate_real_roots(&UniPoly::zero()).is_err());
    }

    #[test]
    fn refinement() {
        let p = UniPoly::from_i64(&[-2, 0, 1]);
        let iv = RatInterval::new(rat(1, 1), rat(2, 1));
        let r = refine_interval(&p, &iv, &rat(1, 100));
        assert!(r.width() <= rat(1, 100));
        assert!(&r.lo * &r.lo < rat(2, 1) && &r.hi * &r.hi > rat(2, 1));
        let fine = refine_interval(&p, &iv, &rat(1, 10i64.pow(15)));
        assert!(fine.width() <= rat(1, 10i64.pow(15)));
        assert!(&fine.lo * &fine.lo < rat(2, 1) && &fine.hi * &fine.hi > rat(2, 1));
        let third = refine_interval(&UniPoly::from_i64(&[-1, 3]), &RatInterval::new(rat(0, 1), rat(1, 1)), &rat(1, 1000));
        assert!(third.width() <= rat(1, 1000) && third.contains(&rat(1, 3)));
        // a root on the grid comes back exact
        let half = UniPoly::from_i64(&[-1, 2]);
        assert_eq!(refine_interval(&half, &RatInterval::new(rat(0, 1), rat(1, 1)), &rat(1, 1000)), RatInterval::point(rat(1, 2)));
        let pt = RatInterval::point(rat(3, 1));
        assert_eq!(refine_interval(&UniPoly::from_i64(&[-3, 1]), &pt, &rat(1, 100)), pt);
    }
}
