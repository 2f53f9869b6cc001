use num_traits::Zero;

use super::{LieAlgebra, LieError, Subspace};
use crate::exact::{kernel_basis, Matrix, Rational, Vector};

/// Structural data of a Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub center: Subspace,
    pub derived: Subspace,
    pub derived_series: Vec<Subspace>,
    pub lower_central_series: Vec<Subspace>,
    pub solvable: bool,
    pub nilpotent: bool,
    pub unimodular: bool,
    pub nilradical: Subspace,
    /// `(p, q)` when the nilradical is `ℝ^p × h_{2q+1}`.
    pub heisenberg_profile: Option<(usize, usize)>,
}

/// Span of `[u, v]` over bases of `a` and `b`.
pub fn bracket_spaces(g: &LieAlgebra, a: &Subspace, b: &Subspace) -> Subspace {
    let mut vs = Vec::new();
    for u in a.basis() {
        for v in b.basis() {
            vs.push(g.bracket(u, v));
        }
    }
    Subspace::span(g.dim(), &vs)
}

pub fn derived_algebra(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    let vs: Vec<Vector> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.bracket_basis(i, j).clone()).collect();
    Subspace::span(n, &vs)
}

pub fn center(g: &LieAlgebra) -> Subspace {
    let n = g.dim();
    // x ↦ ([x, e_j])_k is linear in x with coefficient c[i][j][k]
    let m = Matrix::from_fn(n * n, n, |r, i| g.structure_constant(i, r / n, r % n).clone());
    Subspace::span(n, &kernel_basis(&m))
}

pub fn is_unimodular(g: &LieAlgebra) -> bool {
    (0..g.dim()).all(|i| g.ad_basis(i).trace().is_zero())
}

fn derived_series(g: &LieAlgebra) -> Vec<Subspace> {
    let mut s = vec![Subspace::full(g.dim())];
    loop {
        let last = s.last().unwrap();
        let next = bracket_spaces(g, last, last);
        if next == *last {
            break;
        }
        let done = next.is_zero();
        s.push(next);
        if done {
            break;
        }
    }
    s
}

fn lower_central_series(g: &LieAlgebra) -> Vec<Subspace> {
    let full = Subspace::full(g.dim());
    let mut s = vec![full.clone()];
    loop {
        let last = s.last().unwrap();
        let next = bracket_spaces(g, &full, last);
        if next == *last {
            break;
        }
        let done = next.is_zero();
        s.push(next);
        if done {
            break;
        }
    }
    s
}

pub fn is_solvable(g: &LieAlgebra) -> bool {
    derived_series(g).last().unwrap().is_zero()
}

/// `m^dim = 0`.
pub fn is_nilpotent_operator(m: &Matrix) -> bool {
    m.pow(m.rows() as u32).is_zero()
}

/// Nilradical of a solvable algebra by the associative closure of `ad(g)`.
///
/// `A` is spanned by all products of the `ad_{e_i}`; its radical is the radical of the
/// trace form, and `n = {x : ad_x ∈ Rad A}`. Since `ad_x ∈ A`, that is the kernel of
/// `x ↦ (tr(ad_x a_t))_t` over a basis `a_t` of `A`.
pub fn nilradical(g: &LieAlgebra) -> Result<Subspace, LieError> {
    if !is_solvable(g) {
        return Err(LieError::NotSolvable);
    }
    let n = g.dim();
    let gens: Vec<Matrix> = (0..n).map(|i| g.ad_basis(i)).collect();
    let algebra = associative_closure(&gens, n);
    let m = Matrix::from_fn(algebra.len().max(1), n, |t, i| {
        if algebra.is_empty() {
            Rational::zero()
        } else {
            (&gens[i] * &algebra[t]).trace()
        }
    });
    Ok(Subspace::span(n, &kernel_basis(&m)))
}

/// Basis of the span of all nonempty products of `gens`.
fn associative_closure(gens: &[Matrix], n: usize) -> Vec<Matrix> {
    let flat = |m: &Matrix| m.entries().to_vec();
    let mut basis: Vec<Matrix> = Vec::new();
    let mut echelon: Vec<(usize, Vector)> = Vec::new(); // (pivot, row) kept reduced
    let mut queue: Vec<Matrix> = gens.to_vec();
    while let Some(m) = queue.pop() {
        let mut v = flat(&m);
        for (p, row) in &echelon {
            if !v[*p].is_zero() {
                let f = v[*p].clone();
                crate::exact::axpy(&mut v, &-f, row);
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else { continue };
        let inv = v[p].recip();
        let v: Vector = v.iter().map(|x| x * &inv).collect();
        for (_, row) in echelon.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                crate::exact::axpy(row, &-f, &v);
            }
        }
        echelon.push((p, v));
        for gmat in gens {
            queue.push(gmat * &m);
        }
        basis.push(m);
        if basis.len() == n * n {
            break;
        }
    }
    basis
}

/// `(p, q)` when `n ≅ ℝ^p × h_{2q+1}`: derived ideal of `n` one-dimensional and central in `n`.
pub fn heisenberg_profile(g: &LieAlgebra, n: &Subspace) -> Option<(usize, usize)> {
    let dn = bracket_spaces(g, n, n);
    if dn.dim() != 1 {
        return None;
    }
    if !bracket_spaces(g, n, &dn).is_zero() {
        return None;
    }
    // center of n: x ∈ n with [x, n] = 0
    let basis = n.basis();
    let k = basis.len();
    let mut rows: Vec<Vector> = Vec::new();
    for b in basis {
        // coefficient vector t ↦ [Σ t_i n_i, b]
        let cols: Vec<Vector> = basis.iter().map(|a| g.bracket(a, b)).collect();
        for r in 0..g.dim() {
            rows.push((0..k).map(|i| cols[i][r].clone()).collect());
        }
    }
    let zdim = kernel_basis(&Matrix::from_rows(rows).unwrap()).len();
    if zdim == 0 || (k - zdim) % 2 != 0 {
        return None;
    }
    Some((zdim - 1, (k - zdim) / 2))
}

pub fn analyze(g: &LieAlgebra) -> Result<StructureReport, LieError> {
    super::validate(g).map_err(LieError::Violation)?;
    let ds = derived_series(g);
    let lcs = lower_central_series(g);
    let solvable = ds.last().unwrap().is_zero();
    if !solvable {
        return Err(LieError::NotSolvable);
    }
    let nilpotent = lcs.last().unwrap().is_zero();
    let nil = nilradical(g)?;
    let derived = derived_algebra(g);
    if !derived.is_subspace_of(&nil) || (nilpotent && nil.dim() != g.dim()) {
        return Err(LieError::Invariant("nilradical does not contain the derived ideal".into()));
    }
    Ok(StructureReport {
        center: center(g),
        heisenberg_profile: heisenberg_profile(g, &nil),
        derived,
        derived_series: ds,
        lower_central_series: lcs,
        solvable,
        nilpotent,
        unimodular: is_unimodular(g),
        nilradical: nil,
    })
}
