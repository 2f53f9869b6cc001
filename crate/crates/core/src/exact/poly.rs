use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::matrix::Matrix;
use super::rational::{format_rational, Rational};
use super::ExactError;

/// Univariate polynomial over ℚ, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| Rational::from_integer(x.into())).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial λ.
    pub fn x() -> Self {
        Self::new(vec![Rational::zero(), Rational::one()])
    }

    /// λ - r
    pub fn linear_root(r: Rational) -> Self {
        Self::new(vec![-r, Rational::one()])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// p(M) by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(n).scale(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Rational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn scale(&self, s: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Self::new(c)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() * &lead_inv;
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        (Self::new(q), Self::new(r))
    }

    /// Monic gcd.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// p(−λ)
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Divides by λ^k where k is the order of vanishing at 0; returns (k, quotient).
    pub fn strip_zero_roots(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (k, Self::new(self.coeffs[k.min(self.coeffs.len())..].to_vec()))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let coef = format_rational(&a);
            match (i, a.is_one()) {
                (0, _) => write!(f, "{coef}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{coef}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

/// det(λI − M), via Faddeev–LeVerrier on the integer matrix obtained by clearing denominators.
pub fn char_poly(m: &Matrix) -> Result<Polynomial, ExactError> {
    if !m.is_square() {
        return Err(ExactError::NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let den = m.denominator_lcm();
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (&m[(i, j)] * Rational::from_integer(den.clone())).to_integer())
                .collect()
        })
        .collect();
    // c[k] is the coefficient of λ^k of det(λI − A), A integral
    let mut c = vec![BigInt::zero(); n + 1];
    c[n] = BigInt::one();
    let mut mk: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    for k in 1..=n {
        let am = int_mul(&a, &mk);
        let tr: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let ck = -tr / BigInt::from(k);
        c[n - k] = ck.clone();
        mk = am;
        for (i, row) in mk.iter_mut().enumerate() {
            row[i] += &ck;
        }
    }
    // undo the scaling: p_M(λ) = den^{-n} p_A(den·λ)
    let coeffs = (0..=n)
        .map(|i| {
            Rational::new(c[i].clone() * num_traits::pow(den.clone(), i), num_traits::pow(den.clone(), n))
        })
        .collect();
    Ok(Polynomial::new(coeffs))
}

fn int_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] += &a[i][k] * &b[k][j];
                }
            }
        }
    }
    out
}

/// True iff every complex root of `p` is real and ≤ 0.
///
/// Square-free part p / gcd(p, p′), then Sturm counting on (−∞, 0].
pub fn all_roots_real_nonpositive(p: &Polynomial) -> Result<bool, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let q = p.div_rem(&p.gcd(&p.derivative())).0;
    let deg = q.degree().unwrap();
    if deg == 0 {
        return Ok(true);
    }
    let (k, rest) = q.strip_zero_roots();
    let negative = count_negative_roots(&rest);
    Ok(k + negative == deg)
}

/// Distinct real roots in (−∞, 0) of a square-free polynomial with nonzero constant term.
fn count_negative_roots(q: &Polynomial) -> usize {
    if q.degree() == Some(0) {
        return 0;
    }
    let chain = sturm_chain(q);
    let at_neg_inf: Vec<Rational> = chain
        .iter()
        .map(|s| {
            let d = s.degree().unwrap();
            if d % 2 == 0 {
                s.leading()
            } else {
                -s.leading()
            }
        })
        .collect();
    let at_zero: Vec<Rational> = chain.iter().map(|s| s.coeff(0)).collect();
    sign_changes(&at_neg_inf) - sign_changes(&at_zero)
}

pub fn sturm_chain(p: &Polynomial) -> Vec<Polynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            break;
        }
        let r = chain[n - 2].div_rem(&chain[n - 1]).1;
        if r.is_zero() {
            break;
        }
        chain.push(r.scale(&-Rational::one()));
    }
    chain
}

fn sign_changes(vals: &[Rational]) -> usize {
    let signs: Vec<bool> = vals.iter().filter(|v| !v.is_zero()).map(|v| v.is_positive()).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Rational roots with multiplicities, ascending; by the rational root theorem on the
/// integer primitive form. Candidate enumeration is by trial division, fine for small inputs.
pub fn rational_roots(p: &Polynomial) -> Result<Vec<(Rational, usize)>, ExactError> {
    use num_integer::Integer;
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let (k, mut q) = p.strip_zero_roots();
    let mut out = Vec::new();
    if k > 0 {
        out.push((Rational::zero(), k));
    }
    if q.degree() == Some(0) {
        return Ok(out);
    }
    let den = super::rational::lcm_of_denominators(q.coeffs().iter());
    let ints: Vec<BigInt> =
        q.coeffs().iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let divisors = |x: &BigInt| -> Vec<BigInt> {
        let x = x.abs();
        let mut ds = Vec::new();
        let mut i = BigInt::one();
        while &i * &i <= x {
            if x.is_multiple_of(&i) {
                ds.push(i.clone());
                ds.push(&x / &i);
            }
            i += 1;
        }
        ds
    };
    let mut cands: Vec<Rational> = Vec::new();
    for num in divisors(&ints[0]) {
        for d in divisors(ints.last().unwrap()) {
            let c = Rational::new(num.clone(), d);
            cands.push(c.clone());
            cands.push(-c);
        }
    }
    cands.sort();
    cands.dedup();
    for c in cands {
        let lin = Polynomial::linear_root(c.clone());
        let mut m = 0;
        loop {
            let (quo, rem) = q.div_rem(&lin);
            if !rem.is_zero() {
                break;
            }
            q = quo;
            m += 1;
        }
        if m > 0 {
            out.push((c, m));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}
