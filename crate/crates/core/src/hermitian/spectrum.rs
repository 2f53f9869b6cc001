use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::exact::{all_roots_real_nonpositive, char_poly, unit, Polynomial, Rational, Vector};
use crate::liealg::LieAlgebra;
use crate::samples::random_vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumReport {
    pub pass: bool,
    /// First `x` whose `ad_x` has a non-imaginary eigenvalue, with its characteristic polynomial.
    pub witness: Option<(Vector, Polynomial)>,
    pub checked: usize,
}

/// Whether `p` has only imaginary roots: `p(λ) = ±p(−λ)` and `p = λ^m r(λ²)` with `r` real-rooted on `(−∞, 0]`.
pub fn imaginary_spectrum(p: &Polynomial) -> bool {
    let d = match p.degree() {
        Some(d) => d,
        None => return false,
    };
    let refl = p.reflect();
    let sym = if d % 2 == 0 { refl == *p } else { refl.scale(&-Rational::from_integer(1.into())) == *p };
    if !sym {
        return false;
    }
    let (_, q) = p.strip_zero_roots();
    let cs = q.coeffs();
    if cs.iter().skip(1).step_by(2).any(|c| c != &Rational::from_integer(0.into())) {
        return false;
    }
    let r = Polynomial::new(cs.iter().step_by(2).cloned().collect());
    all_roots_real_nonpositive(&r).unwrap_or(false)
}

/// Tests every basis vector and `samples` seeded random vectors.
pub fn spectrum_all_imaginary(g: &LieAlgebra, samples: usize, seed: u64) -> SpectrumReport {
    let n = g.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let xs = (0..n).map(|i| unit(n, i)).chain((0..samples).map(|_| random_vector(&mut rng, n)));
    let mut checked = 0;
    for x in xs {
        checked += 1;
        let p = char_poly(&g.ad(&x)).expect("ad_x is square");
        if !imaginary_spectrum(&p) {
            return SpectrumReport { pass: false, witness: Some((x, p)), checked };
        }
    }
    SpectrumReport { pass: true, witness: None, checked }
}
