use num_traits::Zero;

use super::{ce_differential, is_unimodular, Derivation, KForm, LieAlgebra, LieError, Subspace};
use crate::exact::{zeros, Matrix, Vector};

/// `h_β(ξ)`: `[x,y] = β(x,y)ξ + [x,y]_h`, with ξ appended as the last basis vector.
pub fn central_extension(h: &LieAlgebra, beta: &KForm) -> Result<LieAlgebra, LieError> {
    central_extension_labeled(h, beta, "xi")
}

pub fn central_extension_labeled(h: &LieAlgebra, beta: &KForm, label: &str) -> Result<LieAlgebra, LieError> {
    let n = h.dim();
    if beta.degree() != 2 || beta.dim() != n {
        return Err(LieError::Shape("β must be a 2-form on h".into()));
    }
    if !ce_differential(h, beta).is_zero() {
        return Err(LieError::NotClosed);
    }
    let mut labels = h.labels().to_vec();
    labels.push(label.to_string());
    let m = n + 1;
    let mut brackets = vec![zeros(m); m * m];
    for i in 0..n {
        for j in 0..n {
            let mut v: Vector = h.bracket_basis(i, j).clone();
            v.push(beta.component(&[i, j]));
            brackets[i * m + j] = v;
        }
    }
    LieAlgebra::new(labels, brackets)
}

/// `h(D, β) = ℝA ⋉_D h_β(ξ)` in the basis (A, ξ, h…).
///
/// `d` is given in the basis of [`central_extension`], i.e. (h…, ξ).
pub fn double_extension(h: &LieAlgebra, beta: &KForm, d: &Matrix) -> Result<LieAlgebra, LieError> {
    double_extension_labeled(h, beta, d, "A", "xi")
}

pub fn double_extension_labeled(
    h: &LieAlgebra,
    beta: &KForm,
    d: &Matrix,
    a_label: &str,
    xi_label: &str,
) -> Result<LieAlgebra, LieError> {
    let ce = central_extension_labeled(h, beta, xi_label)?;
    let d = Derivation::new(&ce, d.clone())?;
    let n = h.dim();
    let m = n + 2;
    // central-extension index → new index
    let map = |p: usize| if p < n { p + 2 } else { 1 };
    let remap = |v: &Vector| {
        let mut out = zeros(m);
        for (p, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out[map(p)] = c.clone();
            }
        }
        out
    };
    let mut labels = vec![a_label.to_string(), xi_label.to_string()];
    labels.extend(h.labels().iter().cloned());
    let mut brackets = vec![zeros(m); m * m];
    for p in 0..=n {
        let dv = remap(&d.matrix().col(p));
        brackets[map(p)] = dv.clone(); // row A = index 0
        brackets[map(p) * m] = crate::exact::neg(&dv);
        for q in 0..=n {
            brackets[map(p) * m + map(q)] = remap(ce.bracket_basis(p, q));
        }
    }
    let g = LieAlgebra::new(labels, brackets)?;

    // ξ central, derived ideal inside h_β(ξ), unimodularity lemma
    let xi = crate::exact::unit(m, 1);
    if (0..m).any(|i| !crate::exact::is_zero_vec(&g.bracket(&xi, &crate::exact::unit(m, i)))) {
        return Err(LieError::Invariant("ξ is not central in the double extension".into()));
    }
    let ext = Subspace::span(m, &(1..m).map(|i| crate::exact::unit(m, i)).collect::<Vec<_>>());
    if !super::derived_algebra(&g).is_subspace_of(&ext) {
        return Err(LieError::Invariant("derived ideal leaves the central extension".into()));
    }
    let predicted = is_unimodular(h) && d.matrix().trace().is_zero();
    if is_unimodular(&g) != predicted {
        return Err(LieError::Invariant("unimodularity disagrees with tr D criterion".into()));
    }
    Ok(g)
}

/// `ℝa ⋉_D h` in the basis (a, h…); errors if `D` is not a derivation of `h`.
pub fn semidirect_product(h: &LieAlgebra, d: &Matrix, a_label: &str) -> Result<LieAlgebra, LieError> {
    Derivation::new(h, d.clone())?;
    let n = h.dim();
    let mut labels = vec![a_label.to_string()];
    labels.extend(h.labels().iter().cloned());
    let mut brackets = Vec::new();
    for j in 0..n {
        let mut v = zeros(n + 1);
        for i in 0..n {
            v[i + 1] = d[(i, j)].clone();
        }
        brackets.push((0, j + 1, v));
    }
    for (i, j, v) in h.nonzero_brackets() {
        if i < j {
            let mut w = zeros(1);
            w.extend(v);
            brackets.push((i + 1, j + 1, w));
        }
    }
    LieAlgebra::from_brackets(labels, &brackets)
}
