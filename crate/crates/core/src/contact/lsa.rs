use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::ContactError;
use crate::exact::{format_vector, is_zero_vec, mpoly_det, sub, unit, zeros, Matrix, MPoly, Rational, Vector};
use crate::liealg::{central_extension_labeled, KForm, LieAlgebra};
use crate::metricgeo::{is_flat, is_parallel_form, levi_civita, Metric};
use crate::samples::random_vector;

/// Bilinear product with `e_i · e_j = Σ_k p[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LsaProduct {
    dim: usize,
    table: Vec<Vector>,
}

impl LsaProduct {
    /// Checks `x·y − y·x = [x,y]` and left symmetry on all basis triples.
    pub fn new(g: &LieAlgebra, table: Vec<Vector>) -> Result<Self, ContactError> {
        let n = g.dim();
        if table.len() != n * n || table.iter().any(|v| v.len() != n) {
            return Err(ContactError::Dimension(format!("product table must be {n}x{n}x{n}")));
        }
        let p = LsaProduct { dim: n, table };
        if let Some(w) = p.torsion_witness(g) {
            return Err(ContactError::Product(w));
        }
        if let Some(w) = p.left_symmetry_witness() {
            return Err(ContactError::Product(w));
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &[Vector] {
        &self.table
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Vector {
        &self.table[i * self.dim + j]
    }

    pub fn product(&self, x: &[Rational], y: &[Rational]) -> Vector {
        let n = self.dim;
        let mut out = zeros(n);
        for (i, xi) in x.iter().enumerate() {
            if xi == &Rational::from_integer(0.into()) {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                let c = xi * yj;
                crate::exact::axpy(&mut out, &c, self.basis_product(i, j));
            }
        }
        out
    }

    /// Right multiplication `ρ(x)y = y·x`.
    pub fn rho(&self, x: &[Rational]) -> Matrix {
        let n = self.dim;
        let cols: Vec<Vector> = (0..n).map(|j| self.product(&unit(n, j), x)).collect();
        Matrix::from_cols(n, &cols)
    }

    pub fn torsion_witness(&self, g: &LieAlgebra) -> Option<String> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                let d = sub(&sub(self.basis_product(i, j), self.basis_product(j, i)), g.bracket_basis(i, j));
                if !is_zero_vec(&d) {
                    return Some(format!("e{}·e{} − e{}·e{} − [e{}, e{}] = {}", i + 1, j + 1, j + 1, i + 1, i + 1, j + 1, format_vector(&d)));
                }
            }
        }
        None
    }

    pub fn left_symmetry_witness(&self) -> Option<String> {
        let n = self.dim;
        let e = |i: usize| unit(n, i);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (e(i), e(j), e(k));
                    let lhs = sub(&self.product(&x, &self.product(&y, &z)), &self.product(&self.product(&x, &y), &z));
                    let rhs = sub(&self.product(&y, &self.product(&x, &z)), &self.product(&self.product(&y, &x), &z));
                    if lhs != rhs {
                        return Some(format!("associator not symmetric on (e{}, e{}, e{})", i + 1, j + 1, k + 1));
                    }
                }
            }
        }
        None
    }
}

/// Product `(aξ+x)·(bξ+y) = ½β(x,y)ξ + ∇_x y` on `h_β(ξ)` (ξ last), for a flat `h` and parallel `β`.
pub fn lsa_from_central_extension(
    h: &LieAlgebra,
    m: &Metric,
    beta: &KForm,
) -> Result<(LieAlgebra, LsaProduct), ContactError> {
    let fl = is_flat(h, m)?;
    if !fl.flat {
        return Err(ContactError::NotFlat(fl.describe(h)));
    }
    let conn = levi_civita(h, m)?;
    if beta.degree() != 2 || beta.dim() != h.dim() {
        return Err(ContactError::Dimension("beta must be a 2-form on h".into()));
    }
    if !is_parallel_form(&conn, beta) {
        return Err(ContactError::NotParallel);
    }
    let g = central_extension_labeled(h, beta, "xi")?;
    let n = h.dim();
    let half = Rational::new(1.into(), 2.into());
    let mut table = vec![zeros(n + 1); (n + 1) * (n + 1)];
    for i in 0..n {
        for j in 0..n {
            let mut v = conn.christoffel(i, j);
            v.push(&half * beta.component(&[i, j]));
            table[i * (n + 1) + j] = v;
        }
    }
    let p = LsaProduct::new(&g, table)?;
    Ok((g, p))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    /// No sampled `x` with `det(I + ρ(x)) = 0`.
    pub pass: bool,
    pub witness: Option<Vector>,
    pub checked: usize,
    /// `ρ(x)` nilpotent for every sampled `x`.
    pub nilpotent_certificate: bool,
    /// `det(I + ρ(x)) ≡ 1` as a polynomial in `x`; computed for dim ≤ 6 only.
    pub symbolic: Option<bool>,
}

impl CompletenessReport {
    /// Complete by an exact argument rather than sampling alone.
    pub fn certified(&self) -> bool {
        self.pass && (self.nilpotent_certificate || self.symbolic == Some(true))
    }
}

pub const SYMBOLIC_MAX_DIM: usize = 6;

/// Samples basis vectors, pairwise sums and `samples` seeded random vectors.
pub fn lsa_completeness(p: &LsaProduct, samples: usize, seed: u64) -> CompletenessReport {
    let n = p.dim();
    let mut xs: Vec<Vector> = (0..n).map(|i| unit(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            xs.push(crate::exact::add(&unit(n, i), &unit(n, j)));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    xs.extend((0..samples).map(|_| random_vector(&mut rng, n)));
    let id = Matrix::identity(n);
    let mut nilpotent = true;
    let mut witness = None;
    let mut checked = 0;
    for x in &xs {
        checked += 1;
        let r = p.rho(x);
        if nilpotent && !r.pow(n as u32).is_zero() {
            nilpotent = false;
        }
        if (&id + &r).det().expect("square").eq(&Rational::from_integer(0.into())) {
            witness = Some(x.clone());
            break;
        }
    }
    let symbolic = (n <= SYMBOLIC_MAX_DIM).then(|| {
        // (I + ρ(x))_{kj} = δ_kj + Σ_i x_i (e_j · e_i)_k
        let rows: Vec<Vec<MPoly>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|j| {
                        let c0 = if k == j { Rational::from_integer(1.into()) } else { Rational::from_integer(0.into()) };
                        let lin: Vec<Rational> = (0..n).map(|i| p.basis_product(j, i)[k].clone()).collect();
                        MPoly::affine(c0, &lin)
                    })
                    .collect()
            })
            .collect();
        mpoly_det(&rows, n).is_constant(&Rational::from_integer(1.into()))
    });
    CompletenessReport { pass: witness.is_none(), witness, checked, nilpotent_certificate: nilpotent && checked == xs.len(), symbolic }
}
