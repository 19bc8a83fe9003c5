mod common;

use common::*;
use exactlmi::arith::{det_poly_matrix, Matrix, Monomial, MonomialOrder, MultiPoly, PolyMatrix, RatInterval, UniPoly};
use exactlmi::certify::certify_rational;
use exactlmi::incidence::{build_incidence_system, enumerate_normalizations, pull_back_point, push_forward_point, random_coordinate_change};
use exactlmi::pencil::{char_poly_by_expansion, char_poly_faddeev_leverrier, parse_pencil};
use exactlmi::realroots::{count_all_roots, count_roots, isolate_real_roots, refine_interval};
use exactlmi::zerodim::{groebner_basis, rur_from_system};
use exactlmi::{LinearPencil, MatrixQ, MultiPolyQ, Rational, UniPolyZ};
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_rat() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn multipoly(nv: usize, max_terms: usize, max_deg: u16) -> impl Strategy<Value = MultiPolyQ> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nv), -5i64..=5), 0..=max_terms).prop_map(move |terms| {
        let terms = terms.into_iter().map(|(e, c)| (Monomial::from_exps(e), qi(c))).collect();
        MultiPoly::from_terms(nv, terms)
    })
}

fn int_poly(max_deg: usize) -> impl Strategy<Value = UniPolyZ> {
    prop::collection::vec(-8i64..=8, 1..=max_deg + 1).prop_map(|c| zpoly(&c)).prop_filter("nonconstant", |p| p.deg() >= 1)
}

fn symmetric(m: usize, entries: &[Rational]) -> MatrixQ {
    let mut a: MatrixQ = Matrix::zeros(m, m);
    let mut k = 0;
    for i in 0..m {
        for j in i..m {
            a[(i, j)] = entries[k].clone();
            a[(j, i)] = entries[k].clone();
            k += 1;
        }
    }
    a
}

/// Random symmetric pencil with small integer coefficients.
fn pencil(max_m: usize, max_n: usize) -> impl Strategy<Value = LinearPencil> {
    (1..=max_m, 1..=max_n).prop_flat_map(|(m, n)| {
        let tri = m * (m + 1) / 2;
        prop::collection::vec(prop::collection::vec(-3i64..=3, tri), n + 1).prop_map(move |mats| {
            let matrices = mats.iter().map(|e| symmetric(m, &e.iter().map(|&v| qi(v)).collect::<Vec<_>>())).collect();
            LinearPencil::new(matrices, None).unwrap()
        })
    })
}

fn pencil_and_point(max_m: usize, max_n: usize) -> impl Strategy<Value = (LinearPencil, Vec<Rational>)> {
    pencil(max_m, max_n).prop_flat_map(|p| {
        let n = p.n();
        (Just(p), prop::collection::vec(small_rat(), n))
    })
}

/// `e_k` of the eigenvalues: the sum of all principal `k x k` minors.
fn principal_minor_sums(a: &MatrixQ) -> Vec<Rational> {
    let m = a.rows();
    let mut sums = vec![Rational::zero(); m];
    for mask in 1u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| idx.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
        sums[idx.len() - 1] += det_by_permutations(&sub);
    }
    sums
}

fn all_principal_minors_nonnegative(a: &MatrixQ) -> bool {
    let m = a.rows();
    (1u32..(1 << m)).all(|mask| {
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let sub: Vec<Vec<Rational>> = idx.iter().map(|&i| idx.iter().map(|&j| a[(i, j)].clone()).collect()).collect();
        !det_by_permutations(&sub).is_negative()
    })
}

fn sylvester_resultant(a: &[Rational], b: &[Rational]) -> Rational {
    if a.is_empty() || b.is_empty() {
        return Rational::zero();
    }
    let (da, db) = (a.len() - 1, b.len() - 1);
    let n = da + db;
    let mut rows = vec![vec![Rational::zero(); n]; n];
    for i in 0..db {
        for (k, c) in a.iter().rev().enumerate() {
            rows[i][i + k] = c.clone();
        }
    }
    for i in 0..da {
        for (k, c) in b.iter().rev().enumerate() {
            rows[db + i][i + k] = c.clone();
        }
    }
    det_by_permutations(&rows)
}

fn interpolate(points: &[(Rational, Rational)]) -> Vec<Rational> {
    let mut acc = Vec::new();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = vec![yi.clone()];
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                let d = xi - xj;
                basis = dense::mul(&basis, &[-xj / &d, Rational::from_integer(1.into()) / &d]);
            }
        }
        acc = dense::add(&acc, &basis);
    }
    acc
}

fn distinct_root_count(p: &[Rational]) -> usize {
    let g = dense::gcd(p, &dense::derivative(p));
    dense::div_exact(p, &g).len() - 1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distributive_law(a in multipoly(2, 4, 2), b in multipoly(2, 4, 2), c in multipoly(2, 4, 2)) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, MultiPoly::zero(2));
    }

    #[test]
    fn det_matches_permutation_expansion(
        m in 1usize..=4,
        entries in prop::collection::vec((-4i64..=4, -4i64..=4, -4i64..=4), 16),
        pts in prop::collection::vec((small_rat(), small_rat()), 3),
    ) {
        let nv = 2;
        let entry = |i: usize, j: usize| {
            let (c, a, b) = entries[i * 4 + j];
            MultiPoly::affine(qi(c), &[qi(a), qi(b)])
        };
        let pm = PolyMatrix::from_fn(m, m, nv, entry);
        let det = det_poly_matrix(&pm).unwrap();
        for (x, y) in pts {
            let at = pm.eval(&[x.clone(), y.clone()]);
            prop_assert_eq!(det.eval(&[x, y]), det_by_permutations(&at.to_rows()));
        }
    }

    #[test]
    fn squarefree_part(factors in prop::collection::vec((-4i64..=4, 1i64..=3, 1u32..=3), 1..=4)) {
        let mut p = vec![qi(1)];
        for &(r, d, e) in &factors {
            p = dense::mul(&p, &dense::pow(&[qi(-r), qi(d)], e));
        }
        let den = p.iter().fold(num_bigint::BigInt::from(1), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
        let pz: UniPolyZ = UniPoly::new(p.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect());
        let s = pz.squarefree().unwrap();
        let sd = dense::from_z(&s);
        dense::div_exact(&dense::from_z(&pz), &sd);
        prop_assert_eq!(dense::gcd(&sd, &dense::derivative(&sd)), vec![qi(1)]);
        let mut roots: Vec<Rational> = factors.iter().map(|&(r, d, _)| q(r, d)).collect();
        roots.sort();
        roots.dedup();
        prop_assert_eq!(s.deg(), roots.len());
    }

    #[test]
    fn isolation_is_sound(p in int_poly(7)) {
        let s = p.squarefree().unwrap();
        let sd = dense::from_z(&s);
        let ivs = isolate_real_roots(&p).unwrap();
        let mut total = 0;
        for w in ivs.windows(2) {
            prop_assert!(w[0].hi <= w[1].lo);
        }
        for iv in &ivs {
            if iv.is_point() {
                prop_assert!(dense::eval(&sd, &iv.lo).is_zero());
                total += 1;
            } else {
                prop_assert_eq!(sign_dense(&sd, &iv.lo) * sign_dense(&sd, &iv.hi), -1);
                prop_assert_eq!(count_roots(&s, &iv.lo, &iv.hi), 1);
                total += count_roots(&s, &iv.lo, &iv.hi);
            }
        }
        prop_assert_eq!(total, count_all_roots(&s));
    }

    #[test]
    fn refinement_keeps_the_root(p in int_poly(6), k in 1u32..60) {
        let s = p.squarefree().unwrap();
        let width = Rational::new(1.into(), num_bigint::BigInt::from(2).pow(k));
        for iv in isolate_real_roots(&p).unwrap() {
            let r = refine_interval(&s, &iv, &width);
            prop_assert!(r.width() <= width);
            prop_assert!(iv.lo <= r.lo && r.hi <= iv.hi);
            if r.is_point() {
                prop_assert!(s.eval_q(&r.lo).is_zero());
            } else {
                prop_assert_eq!(count_roots(&s, &r.lo, &r.hi), 1);
            }
        }
    }

    #[test]
    fn point_interval_is_fixed(n in -20i64..20, d in 1i64..5) {
        let p = zpoly(&[-n, d]);
        let pt = RatInterval::point(q(n, d));
        prop_assert_eq!(refine_interval(&p, &pt, &q(1, 1000)), pt);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn groebner_basis_is_valid((nv, f) in (2usize..=3).prop_flat_map(|nv| (Just(nv), prop::collection::vec(multipoly(nv, 4, 2), 1..=3)))) {
        let gb = groebner_basis(&f, MonomialOrder::DegRevLex);
        prop_assert!(gb.check_s_polynomials());
        for g in &f {
            prop_assert!(gb.reduces_to_zero(g));
        }
        for g in gb.generators() {
            prop_assert!(gb.reduces_to_zero(g));
            prop_assert_eq!(gb.normal_form(g), MultiPoly::zero(nv));
        }
    }

    #[test]
    fn rur_residual_and_count(c in prop::collection::vec(-6i64..=6, 6), seed in 0u64..1000) {
        // x^2 + a1 x + b1 y + d1 = 0, y^2 + a2 x + b2 y + d2 = 0: four solutions
        // with multiplicity and none at infinity
        let (x, y) = (var(2, 0), var(2, 1));
        let f1 = &(&x * &x) + &MultiPoly::affine(qi(c[2]), &[qi(c[0]), qi(c[1])]);
        let f2 = &(&y * &y) + &MultiPoly::affine(qi(c[5]), &[qi(c[3]), qi(c[4])]);
        let rur = rur_from_system(&[f1.clone(), f2.clone()], seed).unwrap();
        for f in [&f1, &f2] {
            prop_assert!(residual_mod(f, &rur.q, &rur.q0, &rur.coords).is_empty());
        }
        // Distinct solutions counted through projections onto u = x + l*y:
        // eliminating y gives a resultant in u, evaluated and interpolated.
        // Each pair of solutions collides for at most one l, so seven values
        // of l include one that separates all four.
        let cq = |i: usize| qi(c[i]);
        let distinct = (1..=7i64).map(|l| {
            let l = qi(l);
            let pts: Vec<(Rational, Rational)> = (-4..=4).map(|u| {
                let u = qi(u);
                let a = vec![&u * &u + cq(0) * &u + cq(2), -qi(2) * &l * &u - cq(0) * &l + cq(1), &l * &l];
                let b = vec![cq(3) * &u + cq(5), cq(4) - cq(3) * &l, qi(1)];
                (u.clone(), sylvester_resultant(&a, &b))
            }).collect();
            distinct_root_count(&interpolate(&pts))
        }).max().unwrap();
        prop_assert_eq!(rur.degree(), distinct);
    }

    #[test]
    fn certificate_rank_on_congruent_diagonals(
        m in 1usize..=5,
        diag in prop::collection::vec((-2i64..=2, -2i64..=2), 5),
        upper in prop::collection::vec(-2i64..=2, 10),
        x in -2i64..=2,
    ) {
        // A(x) = P^T D(x) P with D affine diagonal and P unit upper triangular
        let mut p: MatrixQ = Matrix::identity(m);
        let mut k = 0;
        for i in 0..m {
            for j in i + 1..m {
                p[(i, j)] = qi(upper[k]);
                k += 1;
            }
        }
        let d0: MatrixQ = Matrix::diagonal(&diag[..m].iter().map(|&(c, _)| qi(c)).collect::<Vec<_>>());
        let d1: MatrixQ = Matrix::diagonal(&diag[..m].iter().map(|&(_, a)| qi(a)).collect::<Vec<_>>());
        let pt = p.transpose();
        let pencil = LinearPencil::new(vec![pt.mul(&d0).mul(&p), pt.mul(&d1).mul(&p)], None).unwrap();
        let xv = [qi(x)];
        let cert = certify_rational(pencil.char_poly_coeffs(), &xv);
        let dvals: Vec<i64> = diag[..m].iter().map(|&(c, a)| c + a * x).collect();
        prop_assert_eq!(cert.psd, dvals.iter().all(|&v| v >= 0));
        if cert.psd {
            prop_assert_eq!(cert.rank, rank_by_elimination(&pencil.evaluate(&xv).unwrap().to_rows()));
            prop_assert_eq!(cert.rank, dvals.iter().filter(|&&v| v != 0).count());
        }
        if !pencil.char_poly_coeffs().p(m).eval(&xv).is_zero() && cert.psd {
            prop_assert_eq!(cert.rank, m);
        }
    }

    #[test]
    fn psd_matches_principal_minors(
        m in 1usize..=4,
        k in 0usize..=4,
        b in prop::collection::vec(-3i64..=3, 16),
        noise in prop::collection::vec(-1i64..=1, 10),
        use_gram in any::<bool>(),
    ) {
        let a: MatrixQ = if use_gram {
            let rows = k.min(m);
            let bm: MatrixQ = Matrix::from_fn(rows.max(1), m, |i, j| if i < rows { qi(b[i * 4 + j]) } else { Rational::zero() });
            bm.transpose().mul(&bm)
        } else {
            symmetric(m, &noise.iter().map(|&v| qi(v)).collect::<Vec<_>>())
        };
        let pencil = LinearPencil::new(vec![a.clone(), Matrix::zeros(m, m)], None).unwrap();
        let cert = certify_rational(pencil.char_poly_coeffs(), &[qi(0)]);
        prop_assert_eq!(cert.psd, all_principal_minors_nonnegative(&a));
    }

    #[test]
    fn char_poly_routes_agree(p in pencil(4, 3)) {
        let pm = p.poly_matrix();
        prop_assert_eq!(char_poly_faddeev_leverrier(&pm), char_poly_by_expansion(&pm));
        let c = p.char_poly_coeffs();
        prop_assert_eq!(c.p(1), &pm.trace());
        prop_assert_eq!(c.p(p.m()), &det_poly_matrix(&pm).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn evaluation_commutes_with_char_poly((p, x) in pencil_and_point(4, 3)) {
        let a = p.evaluate(&x).unwrap();
        prop_assert_eq!(p.char_poly_coeffs().eval(&x), principal_minor_sums(&a));
    }

    #[test]
    fn rank_is_invariant_under_permutation_and_scaling((p, x) in pencil_and_point(5, 3), shuffle in any::<u64>(), c in small_rat()) {
        let m = p.m();
        let mut perm: Vec<usize> = (0..m).collect();
        let mut s = shuffle;
        for i in (1..m).rev() {
            perm.swap(i, (s % (i as u64 + 1)) as usize);
            s /= i as u64 + 1;
        }
        let r = p.exact_rank_at_rational(&x).unwrap();
        prop_assert_eq!(r, rank_by_elimination(&p.evaluate(&x).unwrap().to_rows()));
        prop_assert_eq!(p.permuted(&perm).exact_rank_at_rational(&x).unwrap(), r);
        prop_assume!(!c.is_zero());
        prop_assert_eq!(p.scaled(&c).exact_rank_at_rational(&x).unwrap(), r);
    }

    #[test]
    fn text_round_trip(p in pencil(4, 3)) {
        let back = parse_pencil(&p.to_text()).unwrap();
        prop_assert_eq!(back.matrices(), p.matrices());
        prop_assert_eq!(back.vars(), p.vars());
    }

    #[test]
    fn coordinate_change_round_trip(seed in any::<u64>(), x in prop::collection::vec(small_rat(), 1..=4)) {
        let (m, inv) = random_coordinate_change(seed, x.len());
        prop_assert!(!det_by_permutations(&m.to_rows()).is_zero());
        prop_assert_eq!(pull_back_point(&inv, &push_forward_point(&m, &x)), x.clone());
        prop_assert_eq!(push_forward_point(&m, &pull_back_point(&inv, &x)), x);
    }

    #[test]
    fn incidence_shape(p in pencil(4, 3), r_pick in 0usize..4) {
        let m = p.m();
        let r = r_pick % m;
        let subsets = enumerate_normalizations(m, r).unwrap();
        let binom = |n: usize, k: usize| (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1));
        prop_assert_eq!(subsets.len(), binom(m, m - r));
        let mut seen: Vec<Vec<usize>> = subsets.iter().map(|s| s.indices().to_vec()).collect();
        seen.sort();
        seen.dedup();
        prop_assert_eq!(seen.len(), subsets.len());
        for s in &subsets {
            let sys = build_incidence_system(&p, r, s).unwrap();
            prop_assert_eq!(sys.nvars(), p.n() + r * (m - r));
            prop_assert_eq!(sys.equations.len(), m * (m - r));
            for e in &sys.equations {
                for (mono, _) in e.terms() {
                    let (xs, ys) = mono.exps().split_at(sys.nx);
                    prop_assert!(xs.iter().map(|&v| v as u32).sum::<u32>() <= 1);
                    prop_assert!(ys.iter().map(|&v| v as u32).sum::<u32>() <= 1);
                }
            }
        }
    }

    #[test]
    fn incidence_solutions_have_low_rank(
        (p, x) in pencil_and_point(4, 2),
        vs in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..4),
        r_pick in 0usize..4,
    ) {
        // shift A0 so that A(x) is a sum of fewer than m squares, then read a
        // point on the incidence variety off the kernel of A(x)
        let m = p.m();
        let mut s: MatrixQ = Matrix::zeros(m, m);
        for v in vs.iter().take(m.saturating_sub(1)) {
            s = s.add(&Matrix::from_fn(m, m, |i, j| qi(v[i] * v[j])));
        }
        let mut mats = p.matrices().to_vec();
        mats[0] = mats[0].add(&p.evaluate(&x).unwrap().scale(&qi(-1))).add(&s);
        let p = LinearPencil::new(mats, None).unwrap();
        let a = p.evaluate(&x).unwrap();
        prop_assert_eq!(&a, &s);
        let kernel = a.nullspace();
        prop_assert!(!kernel.is_empty());
        let r = (m - kernel.len()).max(r_pick % m);
        let k = m - r;
        // reduced column echelon form of the kernel gives Y with an identity block
        let basis: MatrixQ = Matrix::from_fn(m, k, |i, j| kernel[j][i].clone());
        let ech = basis.transpose().rref();
        let pivots = ech.pivots.clone();
        prop_assert_eq!(pivots.len(), k);
        let y: MatrixQ = ech.matrix.transpose();
        let subset = exactlmi::incidence::RowSubset::new(pivots.iter().map(|&i| i + 1).collect());
        let sys = build_incidence_system(&p, r, &subset).unwrap();
        let mut point: Vec<Rational> = x.clone();
        for row in 0..m {
            if !pivots.contains(&row) {
                for col in 0..k {
                    point.push(y[(row, col)].clone());
                }
            }
        }
        for e in &sys.equations {
            prop_assert!(e.eval(&point).is_zero());
        }
        prop_assert!(p.exact_rank_at_rational(&x).unwrap() <= r);
    }
}
