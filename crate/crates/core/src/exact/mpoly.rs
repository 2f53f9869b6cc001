use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::rational::Rational;

/// Multivariate polynomial over ℚ in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, Rational::one());
        p
    }

    /// Σ c_i x_i + c0
    pub fn affine(c0: Rational, c: &[Rational]) -> Self {
        let n = c.len();
        let mut p = Self::constant(n, c0);
        for (i, ci) in c.iter().enumerate() {
            if !ci.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, ci.clone());
            }
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self, c: &Rational) -> bool {
        if c.is_zero() {
            return self.is_zero();
        }
        self.terms.len() == 1 && self.terms.get(&vec![0; self.nvars]) == Some(c)
    }

    pub fn eval(&self, x: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &k) in x.iter().zip(e) {
                for _ in 0..k {
                    t *= xi;
                }
            }
            s += t;
        }
        s
    }

    pub fn add_assign(&mut self, o: &MPoly, sign: bool) {
        for (e, c) in &o.terms {
            let entry = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
            if sign {
                *entry += c;
            } else {
                *entry -= c;
            }
            if entry.is_zero() {
                self.terms.remove(e);
            }
        }
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(e).or_insert_with(Rational::zero);
                *entry += c1 * c2;
            }
        }
        out.terms.retain(|_, c| !c.is_zero());
        out
    }
}

/// Determinant of a square matrix of polynomials, by row-wise Laplace expansion memoized on column subsets.
pub fn mpoly_det(m: &[Vec<MPoly>], nvars: usize) -> MPoly {
    let n = m.len();
    assert!(n < 20, "symbolic determinant too large");
    let mut dp: Vec<Option<MPoly>> = vec![None; 1 << n];
    dp[0] = Some(MPoly::constant(nvars, Rational::one()));
    for mask in 0usize..(1 << n) {
        let Some(cur) = dp[mask].take() else { continue };
        let row = mask.count_ones() as usize;
        if row == n {
            dp[mask] = Some(cur);
            continue;
        }
        if cur.is_zero() {
            continue;
        }
        for j in 0..n {
            if mask & (1 << j) != 0 || m[row][j].is_zero() {
                continue;
            }
            let inversions = (mask >> (j + 1)).count_ones();
            let term = cur.mul(&m[row][j]);
            let slot = dp[mask | (1 << j)].get_or_insert_with(|| MPoly::zero(nvars));
            slot.add_assign(&term, inversions % 2 == 0);
        }
    }
    dp[(1 << n) - 1].take().unwrap_or_else(|| MPoly::zero(nvars))
}
