//! Benchmark pencils: dense random ones and a family whose solutions have
//! doubly exponential size.

use rand::Rng;

use crate::arith::Matrix;
use crate::pencil::LinearPencil;
use crate::rng::rng_for;
use crate::{MatrixQ, Rational};

/// Dense symmetric `m x m` pencil in `n` variables with integer
/// coefficients uniform in `[-bound, bound]`.
pub fn gen_random_pencil(m: usize, n: usize, seed: u64, bound: i64) -> LinearPencil {
    assert!(m >= 1 && n >= 1, "pencil must have at least one row and one variable");
    let mut rng = rng_for(seed, &[0x9e4, m as u64, n as u64]);
    let mut matrices = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        let mut a: MatrixQ = Matrix::zeros(m, m);
        for i in 0..m {
            for j in i..m {
                let v = Rational::from_integer(rng.gen_range(-bound..=bound).into());
                a[(i, j)] = v.clone();
                a[(j, i)] = v;
            }
        }
        matrices.push(a);
    }
    LinearPencil::new(matrices, None).expect("symmetric by construction")
}

/// Block diagonal pencil with blocks `[[1, 2], [2, x1]]` and
/// `[[1, x(k-1)], [x(k-1), xk]]`, forcing `xk >= x(k-1)^2` and `x1 >= 4`.
pub fn gen_expbits_pencil(n: usize) -> LinearPencil {
    assert!(n >= 1, "need at least one block");
    let m = 2 * n;
    let mut matrices: Vec<MatrixQ> = vec![Matrix::zeros(m, m); n + 1];
    let one = Rational::from_integer(1.into());
    for k in 0..n {
        let (i, j) = (2 * k, 2 * k + 1);
        matrices[0][(i, i)] = one.clone();
        matrices[k + 1][(j, j)] = one.clone();
        if k == 0 {
            let two = Rational::from_integer(2.into());
            matrices[0][(i, j)] = two.clone();
            matrices[0][(j, i)] = two;
        } else {
            matrices[k][(i, j)] = one.clone();
            matrices[k][(j, i)] = one.clone();
        }
    }
    LinearPencil::new(matrices, None).expect("symmetric by construction")
}
