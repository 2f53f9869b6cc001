use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{FlatDecomposition, GeoError, Metric};
use crate::exact::{kernel_basis, to_f64, Matrix, Vector};
use crate::liealg::{LieAlgebra, Subspace};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Orthonormal basis `e₁, f₁, …, e_n, f_n` of k′ in which every operator is a sum of 2×2 rotation generators.
///
/// Floating point; for display and classification reports only.
#[derive(Clone, Debug, PartialEq)]
pub struct AdaptedBlockBasis {
    /// Ambient coordinates of e₁, f₁, e₂, f₂, …
    pub basis: Vec<Vec<f64>>,
    /// `block_params[t][i]` = a_i of operator t, i.e. `T e_i = a_i f_i`.
    pub block_params: Vec<Vec<f64>>,
    /// `lambdas[b][i]` = λ_i(H_b) for the stored basis H_b of h.
    pub lambdas: Vec<Vec<f64>>,
    /// Largest deviation from the block pattern over all operators.
    pub residual: f64,
}

fn check_admissible(m: &Metric, space: &Subspace, ops: &[Matrix]) -> Result<(), GeoError> {
    let err = |s: String| Err(GeoError::Operators(s));
    let b = space.basis();
    for (t, op) in ops.iter().enumerate() {
        if !space.is_invariant_under(op) {
            return err(format!("operator {t} does not preserve the subspace"));
        }
        for x in b {
            for y in b {
                if !(m.inner(&op.mul_vec(x), y) + m.inner(x, &op.mul_vec(y))).is_zero() {
                    return err(format!("operator {t} is not skew on the subspace"));
                }
            }
        }
    }
    for s in 0..ops.len() {
        for t in s + 1..ops.len() {
            for x in b {
                if ops[s].mul_vec(&ops[t].mul_vec(x)) != ops[t].mul_vec(&ops[s].mul_vec(x)) {
                    return err(format!("operators {s} and {t} do not commute on the subspace"));
                }
            }
        }
    }
    Ok(())
}

fn to_dvec(v: &Vector) -> DVector<f64> {
    DVector::from_iterator(v.len(), v.iter().map(to_f64))
}

/// Simultaneous block diagonalization of commuting skew operators on `space`.
///
/// Returns the basis, the per-operator block parameters oriented so that the first
/// operator's are nonnegative, and the residual.
pub fn block_diagonalize(
    m: &Metric,
    space: &Subspace,
    ops: &[Matrix],
    tol: f64,
) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>, f64), GeoError> {
    check_admissible(m, space, ops)?;
    let k = space.dim();
    if k % 2 != 0 {
        return Err(GeoError::Operators("subspace is odd-dimensional".into()));
    }
    if k == 0 {
        return Ok((vec![], vec![vec![]; ops.len()], 0.0));
    }
    let n = m.dim();
    let g = DMatrix::from_fn(n, n, |i, j| to_f64(&m.gram()[(i, j)]));
    let ip = |a: &DVector<f64>, b: &DVector<f64>| (a.transpose() * &g * b)[(0, 0)];

    // G-orthonormal basis q of the subspace
    let mut q: Vec<DVector<f64>> = Vec::new();
    for v in space.basis() {
        let mut w = to_dvec(v);
        for p in &q {
            w -= p * ip(p, &w);
        }
        let nn = ip(&w, &w).sqrt();
        q.push(w / nn);
    }
    let fops: Vec<DMatrix<f64>> =
        ops.iter().map(|op| DMatrix::from_fn(n, n, |i, j| to_f64(&op[(i, j)]))).collect();
    // operators in q-coordinates: M_ab = ⟨q_a, T q_b⟩
    let local: Vec<DMatrix<f64>> =
        fops.iter().map(|t| DMatrix::from_fn(k, k, |a, b| ip(&q[a], &(t * &q[b])))).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(0x0b10c);
    let mut s = DMatrix::<f64>::zeros(k, k);
    for l in &local {
        s += l * rng.gen_range(0.5..1.5);
    }
    let s2 = &s * &s;
    let eig = SymmetricEigen::new((&s2 + s2.transpose()) * 0.5);
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].partial_cmp(&eig.eigenvalues[b]).unwrap());

    let mut chosen: Vec<DVector<f64>> = Vec::new();
    let scale = s.norm().max(1.0);
    for &idx in &order {
        if chosen.len() == k {
            break;
        }
        let mut e = eig.eigenvectors.column(idx).into_owned();
        for c in &chosen {
            e -= c * c.dot(&e);
        }
        let ne = e.norm();
        if ne < 1e-6 {
            continue;
        }
        e /= ne;
        let w = (-eig.eigenvalues[idx]).max(0.0).sqrt();
        let mut f = if w > 1e-9 * scale {
            &s * &e / w
        } else {
            // S vanishes here: complete with any orthonormal vector
            let mut cand = None;
            for j in 0..k {
                let mut v = DVector::<f64>::zeros(k);
                v[j] = 1.0;
                v -= &e * e.dot(&v);
                for c in &chosen {
                    v -= c * c.dot(&v);
                }
                if v.norm() > 1e-6 {
                    cand = Some(v.normalize());
                    break;
                }
            }
            cand.ok_or_else(|| GeoError::Numerical("cannot complete a block".into()))?
        };
        for c in &chosen {
            f -= c * c.dot(&f);
        }
        f -= &e * e.dot(&f);
        let nf = f.norm();
        if nf < 1e-6 {
            return Err(GeoError::Numerical("degenerate block".into()));
        }
        f /= nf;
        chosen.push(e);
        chosen.push(f);
    }
    if chosen.len() != k {
        return Err(GeoError::Numerical("could not assemble a full basis".into()));
    }
    // orient by the first operator
    let mut p = DMatrix::<f64>::zeros(k, k);
    for (c, v) in chosen.iter().enumerate() {
        p.set_column(c, v);
    }
    if let Some(first) = local.first() {
        for b in 0..k / 2 {
            let a = p.column(2 * b + 1).dot(&(first * p.column(2 * b)));
            if a < 0.0 {
                let col = -p.column(2 * b + 1);
                p.set_column(2 * b + 1, &col);
            }
        }
    }
    let mut params = Vec::new();
    let mut residual: f64 = 0.0;
    for l in &local {
        let nmat = p.transpose() * l * &p;
        let mut a = Vec::new();
        for i in 0..k {
            for j in 0..k {
                let (bi, bj) = (i / 2, j / 2);
                let dev = if bi != bj || i == j {
                    nmat[(i, j)].abs()
                } else {
                    (nmat[(i, j)] + nmat[(j, i)]).abs()
                };
                residual = residual.max(dev);
            }
        }
        for b in 0..k / 2 {
            a.push(nmat[(2 * b + 1, 2 * b)]);
        }
        params.push(a);
    }
    if residual >= tol {
        return Err(GeoError::Numerical(format!("off-block residual {residual:e} exceeds {tol:e}")));
    }
    let qmat = DMatrix::from_fn(n, k, |i, a| q[a][i]);
    let basis = (0..k).map(|c| (&qmat * p.column(c)).iter().copied().collect()).collect();
    Ok((basis, params, residual))
}

/// Adapted basis of k′ for the given operators (typically `J` first, then `D`) and all `ad_H`, `H ∈ h`.
///
/// Before going numeric, checks exactly that no vector of k′ is killed by every `ad_H`
/// (all λ_i ≠ 0) and that `H ↦ ad_H|k′` is injective (∩ ker λ_i = 0).
pub fn adapted_block_basis(
    g: &LieAlgebra,
    m: &Metric,
    fd: &FlatDecomposition,
    operators: &[Matrix],
    tol: f64,
) -> Result<AdaptedBlockBasis, GeoError> {
    let kb = fd.kprime.basis();
    let hb = fd.h.basis();
    let ads: Vec<Matrix> = hb.iter().map(|h| g.ad(h)).collect();
    if !kb.is_empty() {
        // common kernel of ad_H on k′, in k′-coordinates
        let kmat = fd.kprime.basis_matrix();
        let mut rows: Vec<Vector> = Vec::new();
        for ad in &ads {
            let img = ad * &kmat;
            rows.extend(img.to_rows());
        }
        let common = if rows.is_empty() { kb.len() } else { kernel_basis(&Matrix::from_rows(rows)?).len() };
        if common != 0 {
            return Err(GeoError::Invariant("some λ_i vanishes identically on h".into()));
        }
        let images: Vec<Vector> = ads.iter().map(|ad| kb.iter().flat_map(|v| ad.mul_vec(v)).collect()).collect();
        if !images.is_empty() && Matrix::from_rows(images)?.rank() != hb.len() {
            return Err(GeoError::Invariant("∩ ker λ_i is nonzero".into()));
        }
    }
    let mut ops: Vec<Matrix> = operators.to_vec();
    ops.extend(ads);
    let (basis, mut params, residual) = block_diagonalize(m, &fd.kprime, &ops, tol)?;
    let lambdas = params.split_off(operators.len());
    Ok(AdaptedBlockBasis { basis, block_params: params, lambdas, residual })
}
