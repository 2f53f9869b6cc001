use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::LieAlgebra;
use crate::exact::{format_rational, kernel_basis, Matrix, Rational, Vector};

/// Alternating k-form on ℚⁿ; coefficients kept only on strictly increasing index tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KForm {
    dim: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<usize>, Rational>,
}

/// Sorts `idx` in place; returns the permutation sign, or `None` on a repeated index.
fn sort_with_sign(idx: &mut [usize]) -> Option<bool> {
    let mut even = true;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            even = !even;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(even)
    }
}

/// All strictly increasing k-tuples from 0..n.
pub(crate) fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl KForm {
    pub fn zero(dim: usize, degree: usize) -> Self {
        KForm { dim, degree, coeffs: BTreeMap::new() }
    }

    /// The dual basis 1-form `eⁱ`.
    pub fn basis_one_form(dim: usize, i: usize) -> Self {
        let mut f = Self::zero(dim, 1);
        f.coeffs.insert(vec![i], Rational::one());
        f
    }

    /// 1-form with the given values on the basis.
    pub fn one_form(covector: &[Rational]) -> Self {
        let mut f = Self::zero(covector.len(), 1);
        for (i, c) in covector.iter().enumerate() {
            f.add_component(&[i], c);
        }
        f
    }

    /// 2-form with `α(e_i, e_j) = m[i][j]` for `i < j`; the lower triangle is ignored.
    pub fn two_form_from_matrix(m: &Matrix) -> Self {
        let n = m.rows();
        let mut f = Self::zero(n, 2);
        for i in 0..n {
            for j in i + 1..n {
                f.add_component(&[i, j], &m[(i, j)]);
            }
        }
        f
    }

    pub fn from_terms(dim: usize, degree: usize, terms: &[(Vec<usize>, Rational)]) -> Self {
        let mut f = Self::zero(dim, degree);
        for (idx, c) in terms {
            f.add_component(idx, c);
        }
        f
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// All strictly increasing index tuples of this degree.
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        increasing_tuples(self.dim, self.degree)
    }

    /// Nonzero coefficients on increasing tuples.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.coeffs.iter()
    }

    /// Adds `c` to the component on `idx` (any order).
    pub fn add_component(&mut self, idx: &[usize], c: &Rational) {
        assert_eq!(idx.len(), self.degree, "index tuple has the wrong length");
        assert!(idx.iter().all(|&i| i < self.dim), "index out of range");
        if c.is_zero() {
            return;
        }
        let mut key = idx.to_vec();
        let Some(even) = sort_with_sign(&mut key) else { return };
        let entry = self.coeffs.entry(key.clone()).or_insert_with(Rational::zero);
        if even {
            *entry += c;
        } else {
            *entry -= c;
        }
        if entry.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    /// `α(e_{i₁}, …, e_{i_k})` for any index order.
    pub fn component(&self, idx: &[usize]) -> Rational {
        let mut key = idx.to_vec();
        match sort_with_sign(&mut key) {
            None => Rational::zero(),
            Some(even) => {
                let c = self.coeffs.get(&key).cloned().unwrap_or_else(Rational::zero);
                if even {
                    c
                } else {
                    -c
                }
            }
        }
    }

    /// `α(v₁, …, v_k)`; each increasing component contributes a k×k minor.
    pub fn eval(&self, vs: &[Vector]) -> Rational {
        assert_eq!(vs.len(), self.degree);
        let mut s = Rational::zero();
        for (idx, c) in &self.coeffs {
            let minor = Matrix::from_fn(self.degree, self.degree, |a, b| vs[b][idx[a]].clone());
            s += c * minor.det().unwrap();
        }
        s
    }

    /// Values on the basis of a 1-form.
    pub fn to_covector(&self) -> Vector {
        assert_eq!(self.degree, 1);
        (0..self.dim).map(|i| self.component(&[i])).collect()
    }

    /// Skew matrix `α(e_i, e_j)` of a 2-form.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.degree, 2);
        Matrix::from_fn(self.dim, self.dim, |i, j| self.component(&[i, j]))
    }

    pub fn add(&self, o: &KForm) -> KForm {
        assert_eq!((self.dim, self.degree), (o.dim, o.degree));
        let mut r = self.clone();
        for (idx, c) in &o.coeffs {
            r.add_component(idx, c);
        }
        r
    }

    pub fn sub(&self, o: &KForm) -> KForm {
        self.add(&o.scale(&-Rational::one()))
    }

    pub fn scale(&self, s: &Rational) -> KForm {
        if s.is_zero() {
            return Self::zero(self.dim, self.degree);
        }
        KForm { dim: self.dim, degree: self.degree, coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), c * s)).collect() }
    }

    /// `(P*α)(v, …) = α(P v, …)` for `P` of shape `self.dim × m`.
    pub fn pullback(&self, p: &Matrix) -> KForm {
        assert_eq!(p.rows(), self.dim);
        let m = p.cols();
        let cols: Vec<Vector> = (0..m).map(|j| p.col(j)).collect();
        let mut out = KForm::zero(m, self.degree);
        for idx in increasing_tuples(m, self.degree) {
            let vs: Vec<Vector> = idx.iter().map(|&j| cols[j].clone()).collect();
            let v = self.eval(&vs);
            out.add_component(&idx, &v);
        }
        out
    }

    /// Interior product `ι_v α`.
    pub fn interior(&self, v: &[Rational]) -> KForm {
        assert!(self.degree >= 1);
        let mut out = KForm::zero(self.dim, self.degree - 1);
        for (idx, c) in &self.coeffs {
            for (pos, &i) in idx.iter().enumerate() {
                if v[i].is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                let mut t = c * &v[i];
                if pos % 2 == 1 {
                    t = -t;
                }
                out.add_component(&rest, &t);
            }
        }
        out
    }

    pub fn display_with(&self, labels: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(idx, c)| {
                let names: Vec<String> = idx.iter().map(|&i| format!("{}*", labels[i])).collect();
                format!("{}·{}", format_rational(c), names.join("∧"))
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = super::default_labels(self.dim);
        write!(f, "{}", self.display_with(&labels))
    }
}

/// Wedge product by the shuffle formula.
pub fn wedge(a: &KForm, b: &KForm) -> KForm {
    assert_eq!(a.dim, b.dim);
    let mut out = KForm::zero(a.dim, a.degree + b.degree);
    if a.degree + b.degree > a.dim {
        return out;
    }
    for (i, ca) in &a.coeffs {
        for (j, cb) in &b.coeffs {
            let mut idx = i.clone();
            idx.extend_from_slice(j);
            out.add_component(&idx, &(ca * cb));
        }
    }
    out
}

/// Chevalley–Eilenberg differential with trivial coefficients:
/// `dα(x₀,…,x_k) = Σ_{i<j} (−1)^{i+j} α([x_i,x_j], x₀,…,x̂_i,…,x̂_j,…,x_k)`.
pub fn ce_differential(g: &LieAlgebra, alpha: &KForm) -> KForm {
    let n = g.dim();
    assert_eq!(alpha.dim, n, "form lives on a different dimension");
    let k = alpha.degree;
    let mut out = KForm::zero(n, k + 1);
    if k + 1 > n {
        return out;
    }
    for idx in increasing_tuples(n, k + 1) {
        let mut val = Rational::zero();
        for a in 0..=k {
            for b in a + 1..=k {
                let br = g.bracket_basis(idx[a], idx[b]);
                let rest: Vec<usize> =
                    idx.iter().enumerate().filter(|&(p, _)| p != a && p != b).map(|(_, &v)| v).collect();
                let mut inner = Rational::zero();
                for (m, c) in br.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let mut full = Vec::with_capacity(k);
                    full.push(m);
                    full.extend_from_slice(&rest);
                    let comp = alpha.component(&full);
                    if !comp.is_zero() {
                        inner += c * comp;
                    }
                }
                if (a + b) % 2 == 1 {
                    val -= inner;
                } else {
                    val += inner;
                }
            }
        }
        out.add_component(&idx, &val);
    }
    out
}

/// Basis of the closed k-forms.
pub fn closed_forms(g: &LieAlgebra, k: usize) -> Vec<KForm> {
    let n = g.dim();
    let src = increasing_tuples(n, k);
    let dst = increasing_tuples(n, k + 1);
    let images: Vec<KForm> = src
        .iter()
        .map(|idx| {
            let mut f = KForm::zero(n, k);
            f.add_component(idx, &Rational::one());
            ce_differential(g, &f)
        })
        .collect();
    let m = Matrix::from_fn(dst.len(), src.len(), |r, c| images[c].component(&dst[r]));
    if dst.is_empty() {
        return (0..src.len())
            .map(|c| KForm::from_terms(n, k, &[(src[c].clone(), Rational::one())]))
            .collect();
    }
    kernel_basis(&m)
        .into_iter()
        .map(|v| {
            let terms: Vec<(Vec<usize>, Rational)> =
                src.iter().cloned().zip(v).filter(|(_, c)| !c.is_zero()).collect();
            KForm::from_terms(n, k, &terms)
        })
        .collect()
}
