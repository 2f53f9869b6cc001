use num_traits::Zero;

use super::{levi_civita, GeoError, Metric};
use crate::exact::{kernel_basis, Matrix};
use crate::liealg::{bracket_spaces, center, derived_algebra, LieAlgebra, Subspace};

/// Orthogonal splitting `k = z ⊕ h ⊕ k′` of a flat metric Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatDecomposition {
    pub z: Subspace,
    pub h: Subspace,
    pub kprime: Subspace,
    /// `z ∩ Jz`, filled in once a complex structure is known.
    pub u: Option<Subspace>,
}

impl FlatDecomposition {
    pub fn dim_z(&self) -> usize {
        self.z.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.h.dim()
    }

    pub fn dim_kprime(&self) -> usize {
        self.kprime.dim()
    }
}

/// z = center, k′ = derived ideal, h = (z ⊕ k′)^⊥, with the structural properties checked exactly.
pub fn flat_decomposition(g: &LieAlgebra, m: &Metric) -> Result<FlatDecomposition, GeoError> {
    let conn = levi_civita(g, m)?;
    let fl = super::flatness(g, &conn);
    if !fl.flat {
        return Err(GeoError::NotFlat(fl.describe(g)));
    }
    let n = g.dim();
    let bad = |s: &str| Err(GeoError::Invariant(s.to_string()));
    let z = center(g);
    let kprime = derived_algebra(g);
    let zk = z.sum(&kprime);
    if zk.dim() != z.dim() + kprime.dim() {
        return bad("center meets the derived ideal");
    }
    if z.basis().iter().any(|a| kprime.basis().iter().any(|b| !m.inner(a, b).is_zero())) {
        return bad("center not orthogonal to the derived ideal");
    }
    let h = zk.orthogonal_complement(m.gram());

    if !bracket_spaces(g, &kprime, &kprime).is_zero() {
        return bad("derived ideal is not abelian");
    }
    if !bracket_spaces(g, &h, &h).is_zero() {
        return bad("h is not abelian");
    }
    if kprime.dim() % 2 != 0 {
        return bad("derived ideal is odd-dimensional");
    }
    // ad: h → so(k′) injective
    let kb = kprime.basis();
    let mut images = Vec::new();
    for hv in h.basis() {
        let ad = g.ad(hv);
        if !kprime.is_invariant_under(&ad) {
            return bad("ad_H does not preserve k′");
        }
        for a in kb {
            for b in kb {
                let s = m.inner(&ad.mul_vec(a), b) + m.inner(a, &ad.mul_vec(b));
                if !s.is_zero() {
                    return bad("ad_H is not skew on k′");
                }
            }
        }
        images.push(kb.iter().flat_map(|a| ad.mul_vec(a)).collect::<Vec<_>>());
    }
    if !images.is_empty() && Matrix::from_rows(images).unwrap().rank() != h.dim() {
        return bad("ad: h → so(k′) is not injective");
    }
    // ad_x = ∇_x on z ⊕ h
    for x in z.sum(&h).basis() {
        if g.ad(x) != conn.operator(x) {
            return bad("ad_x differs from ∇_x on z ⊕ h");
        }
    }
    // ∇_x = 0 exactly on z ⊕ k′
    let kmap = Matrix::from_fn(n * n, n, |r, i| conn.basis_operator(i)[(r / n, r % n)].clone());
    if Subspace::span(n, &kernel_basis(&kmap)) != zk {
        return bad("kernel of x ↦ ∇_x is not z ⊕ k′");
    }
    Ok(FlatDecomposition { z, h, kprime, u: None })
}
