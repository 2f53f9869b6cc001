//! Seeded random inputs for property tests and sampling-based checks.

use num_bigint::BigInt;
use rand::Rng;

use crate::exact::{Matrix, Rational, Vector};
use crate::liealg::{central_extension, closed_forms, derivation_space, semidirect_product, KForm, LieAlgebra};

/// Numerator in `[−9, 9]`, denominator in `[1, 4]`.
pub fn random_rational<R: Rng>(rng: &mut R) -> Rational {
    Rational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=4)))
}

pub fn random_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    (0..n).map(|_| random_rational(rng)).collect()
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| random_rational(rng))
}

/// Random invertible matrix (resampled until the determinant is nonzero).
pub fn random_invertible<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.rank() == n {
            return m;
        }
    }
}

/// Random linear combination of `basis`, zero if empty.
pub fn random_combination<R: Rng>(rng: &mut R, basis: &[Matrix], rows: usize, cols: usize) -> Matrix {
    let mut out = Matrix::zeros(rows, cols);
    for b in basis {
        out = &out + &b.scale(&random_rational(rng));
    }
    out
}

/// Solvable algebra of dimension `dim`, grown from an abelian seed by random central
/// extensions and semidirect products with derivations, then put in a random basis.
pub fn random_solvable_algebra<R: Rng>(rng: &mut R, dim: usize) -> LieAlgebra {
    let start = rng.gen_range(1..=dim.clamp(1, 2));
    let mut g = LieAlgebra::abelian(start);
    while g.dim() < dim {
        if rng.gen_bool(0.5) && g.dim() >= 2 {
            let forms = closed_forms(&g, 2);
            let mut beta = KForm::zero(g.dim(), 2);
            for f in &forms {
                beta = beta.add(&f.scale(&random_rational(rng)));
            }
            g = central_extension(&g, &beta).expect("closed 2-form");
        } else {
            let ders = derivation_space(&g);
            let d = random_combination(rng, &ders, g.dim(), g.dim());
            g = semidirect_product(&g, &d, "a").expect("derivation");
        }
    }
    let p = random_invertible(rng, dim);
    g.change_basis(&p).expect("invertible change of basis").with_labels(crate::liealg::default_labels(dim))
}
