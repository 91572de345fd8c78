use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{binom_mod, Elem, Field};
use crate::error::{Error, Result};
use crate::geometry::{Line, Point};

use super::uni::UniPoly;

pub type Exponent = Vec<u32>;

/// Sparse multivariate polynomial in `n` variables. Zero coefficients are
/// never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    terms: BTreeMap<Exponent, Elem>,
}

fn total(e: &[u32]) -> u32 {
    e.iter().sum()
}

/// Graded order: total degree first, then lexicographic.
pub fn graded_cmp(a: &[u32], b: &[u32]) -> Ordering {
    total(a).cmp(&total(b)).then_with(|| a.cmp(b))
}

/// All exponent vectors of length `n` with total degree `k`, in
/// lexicographically descending order (x_1^k first).
pub fn exponents_of_degree(n: usize, k: u32) -> Vec<Exponent> {
    fn rec(n: usize, k: u32, prefix: &mut Vec<u32>, out: &mut Vec<Exponent>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for first in (0..=k).rev() {
            prefix.push(first);
            rec(n, k - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, k, &mut Vec::with_capacity(n), &mut out);
    out
}

/// All monomials of total degree at most `d`, grouped by ascending degree.
pub fn monomials_up_to(n: usize, d: u32) -> Vec<Exponent> {
    (0..=d).flat_map(|k| exponents_of_degree(n, k)).collect()
}

impl MultiPoly {
    pub fn zero(n: usize) -> MultiPoly {
        MultiPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Elem) -> MultiPoly {
        MultiPoly::monomial(vec![0; n], c)
    }

    pub fn monomial(exp: Exponent, c: Elem) -> MultiPoly {
        let mut p = MultiPoly::zero(exp.len());
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    /// The variable `x_i`.
    pub fn var(n: usize, i: usize) -> MultiPoly {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiPoly::monomial(e, Elem::ONE)
    }

    /// `constant + sum coeffs[i] x_i`.
    pub fn linear_form(constant: Elem, coeffs: &[Elem]) -> MultiPoly {
        let n = coeffs.len();
        let mut p = MultiPoly::constant(n, constant);
        for (i, &c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let mut e = vec![0; n];
                e[i] = 1;
                p.terms.insert(e, c);
            }
        }
        p
    }

    /// Sums repeated exponents and drops zeros.
    pub fn from_terms(
        field: &Field,
        n: usize,
        terms: impl IntoIterator<Item = (Exponent, Elem)>,
    ) -> Result<MultiPoly> {
        let mut p = MultiPoly::zero(n);
        for (e, c) in terms {
            if e.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: e.len(),
                });
            }
            if !field.contains(c) {
                return Err(Error::ForeignElement {
                    value: c.index(),
                    order: field.order(),
                });
            }
            p.add_term(field, e, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, Elem)> {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: &[u32]) -> Elem {
        self.terms.get(e).copied().unwrap_or(Elem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` stands for the zero polynomial's -infinity.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| total(e)).max()
    }

    /// The term that is largest in graded order.
    pub fn leading_term(&self) -> Option<(&Exponent, Elem)> {
        self.terms
            .iter()
            .max_by(|a, b| graded_cmp(a.0, b.0))
            .map(|(e, &c)| (e, c))
    }

    fn add_term(&mut self, field: &Field, e: Exponent, c: Elem) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(x) => {
                *x = field.add(*x, c);
                if x.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    pub fn add(&self, field: &Field, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(field, e.clone(), c);
        }
        out
    }

    pub fn neg(&self, field: &Field) -> MultiPoly {
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, field: &Field, other: &MultiPoly) -> MultiPoly {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: &Field, c: Elem) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.n);
        }
        MultiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, &x)| (e.clone(), field.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, field: &Field, other: &MultiPoly) -> MultiPoly {
        assert_eq!(self.n, other.n);
        let mut out = MultiPoly::zero(self.n);
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(field, e, field.mul(ca, cb));
            }
        }
        out
    }

    pub fn pow(&self, field: &Field, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.n, Elem::ONE);
        for _ in 0..k {
            acc = acc.mul(field, self);
        }
        acc
    }

    pub fn evaluate(&self, field: &Field, x: &Point) -> Elem {
        assert_eq!(x.dim(), self.n, "point dimension");
        field.sum(self.terms.iter().map(|(e, &c)| {
            e.iter()
                .zip(x.coords())
                .fold(c, |acc, (&k, &xi)| field.mul(acc, field.pow(xi, k as u64)))
        }))
    }

    /// Hasse derivative `H^alpha`: `x^e -> prod C(e_i, alpha_i) x^(e - alpha)`,
    /// binomials reduced mod the characteristic.
    pub fn hasse_derivative(&self, field: &Field, alpha: &[u32]) -> MultiPoly {
        assert_eq!(alpha.len(), self.n);
        let mut out = MultiPoly::zero(self.n);
        for (e, &c) in &self.terms {
            if let Some(coef) = hasse_coeff(field, e, alpha) {
                let reduced: Exponent = e.iter().zip(alpha).map(|(a, b)| a - b).collect();
                out.add_term(field, reduced, field.mul(c, coef));
            }
        }
        out
    }

    /// `H^alpha(f)(x)` without materializing the derivative.
    pub fn hasse_eval(&self, field: &Field, alpha: &[u32], x: &Point) -> Elem {
        field.sum(self.terms.iter().filter_map(|(e, &c)| {
            let coef = hasse_coeff(field, e, alpha)?;
            Some(
                e.iter()
                    .zip(alpha)
                    .zip(x.coords())
                    .fold(field.mul(c, coef), |acc, ((&ei, &ai), &xi)| {
                        field.mul(acc, field.pow(xi, (ei - ai) as u64))
                    }),
            )
        }))
    }

    /// Least `|alpha|` with `H^alpha(f)(x) != 0`.
    pub fn vanishing_order(&self, field: &Field, x: &Point) -> Result<u32> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        // A nonzero f has some nonzero Hasse derivative of order <= deg f.
        for k in 0..=deg + 1 {
            if exponents_of_degree(self.n, k)
                .iter()
                .any(|a| !self.hasse_eval(field, a, x).is_zero())
            {
                return Ok(k);
            }
        }
        Err(Error::Solver(deg + 1))
    }

    /// True when `f` vanishes at `x` to order at least `m`.
    pub fn vanishes_to_order(&self, field: &Field, x: &Point, m: u32) -> bool {
        (0..m).all(|k| {
            exponents_of_degree(self.n, k)
                .iter()
                .all(|a| self.hasse_eval(field, a, x).is_zero())
        })
    }

    /// Substitutes `x = base + t dir`.
    pub fn restrict_to_line(&self, field: &Field, line: &Line) -> UniPoly {
        assert_eq!(line.dim(), self.n, "line dimension");
        let max_exp = self
            .terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0);
        let powers = LinePowers::new(field, line, max_exp);
        self.terms.iter().fold(UniPoly::zero(), |acc, (e, &c)| {
            acc.add(field, &powers.monomial(field, e).scale(field, c))
        })
    }

    /// Exact: the restriction is the zero polynomial.
    pub fn vanishes_on_line(&self, field: &Field, line: &Line) -> bool {
        self.restrict_to_line(field, line).is_zero()
    }

    /// First-order Hasse derivatives.
    pub fn gradient(&self, field: &Field) -> Vec<MultiPoly> {
        (0..self.n)
            .map(|i| {
                let mut a = vec![0; self.n];
                a[i] = 1;
                self.hasse_derivative(field, &a)
            })
            .collect()
    }

    /// `g` with `g^p = f`, for `f` whose gradient vanishes identically.
    pub fn pth_root(&self, field: &Field) -> Result<MultiPoly> {
        if let Some(i) = self.gradient(field).iter().position(|g| !g.is_zero()) {
            return Err(Error::NotPthPower(format!(
                "gradient component {i} is nonzero"
            )));
        }
        let p = field.p() as u32;
        let mut out = MultiPoly::zero(self.n);
        for (e, &c) in &self.terms {
            let root: Exponent = e.iter().map(|k| k / p).collect();
            out.terms.insert(root, field.pth_root(c));
        }
        Ok(out)
    }

    /// Replaces variable `var` by the polynomial `h` (which must not involve
    /// `var` for the result to be meaningful as a restriction).
    pub fn substitute(&self, field: &Field, var: usize, h: &MultiPoly) -> MultiPoly {
        let max_k = self.terms.keys().map(|e| e[var]).max().unwrap_or(0);
        let mut powers = vec![MultiPoly::constant(self.n, Elem::ONE)];
        for k in 1..=max_k as usize {
            powers.push(powers[k - 1].mul(field, h));
        }
        let mut out = MultiPoly::zero(self.n);
        for (e, &c) in &self.terms {
            let mut rest = e.clone();
            let k = rest[var] as usize;
            rest[var] = 0;
            out = out.add(field, &MultiPoly::monomial(rest, c).mul(field, &powers[k]));
        }
        out
    }
}

fn hasse_coeff(field: &Field, e: &[u32], alpha: &[u32]) -> Option<Elem> {
    let p = field.p();
    let mut acc = 1u64;
    for (&ei, &ai) in e.iter().zip(alpha) {
        if ai > ei {
            return None;
        }
        acc = acc * binom_mod(ei as u64, ai as u64, p) % p;
        if acc == 0 {
            return None;
        }
    }
    Some(field.from_u64(acc))
}

/// Powers `(base_i + t dir_i)^k` for restricting monomials to a line.
pub(crate) struct LinePowers {
    per_var: Vec<Vec<UniPoly>>,
}

impl LinePowers {
    pub(crate) fn new(field: &Field, line: &Line, max_exp: u32) -> LinePowers {
        let per_var = line
            .base()
            .coords()
            .iter()
            .zip(line.dir())
            .map(|(&b, &d)| {
                let lin = UniPoly::linear(b, d);
                let mut v = vec![UniPoly::new(vec![Elem::ONE])];
                for k in 1..=max_exp as usize {
                    v.push(v[k - 1].mul(field, &lin));
                }
                v
            })
            .collect();
        LinePowers { per_var }
    }

    pub(crate) fn monomial(&self, field: &Field, e: &[u32]) -> UniPoly {
        e.iter()
            .enumerate()
            .fold(UniPoly::new(vec![Elem::ONE]), |acc, (i, &k)| {
                if k == 0 {
                    acc
                } else {
                    acc.mul(field, &self.per_var[i][k as usize])
                }
            })
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| graded_cmp(b.0, a.0));
        for (i, (e, c)) in terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let is_const = e.iter().all(|&k| k == 0);
            if c.index() != 1 || is_const {
                write!(f, "{c}")?;
            }
            for (v, &k) in e.iter().enumerate() {
                match k {
                    0 => {}
                    1 => write!(f, "x{v}")?,
                    _ => write!(f, "x{v}^{k}")?,
                }
            }
        }
        Ok(())
    }
}
