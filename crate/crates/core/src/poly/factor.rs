use crate::algebra::{Elem, Field};
use crate::error::{Error, Result};

use super::multi::{Exponent, MultiPoly};

/// Result of trial division by linear forms: `f = remainder * prod form^mult`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearFactorization {
    pub factors: Vec<(MultiPoly, u32)>,
    pub remainder: MultiPoly,
}

impl LinearFactorization {
    /// Multiplies everything back together.
    pub fn product(&self, field: &Field) -> MultiPoly {
        self.factors
            .iter()
            .fold(self.remainder.clone(), |acc, (g, k)| {
                acc.mul(field, &g.pow(field, *k))
            })
    }
}

/// Number of canonical linear forms `a_0 + sum a_i x_i` (first nonzero
/// `a_i` equal to 1) in `n` variables over a field of order `order`.
pub fn linear_form_count(order: u64, n: usize) -> Option<u64> {
    let mut total = 0u64;
    for pivot in 0..n {
        let rest = order.checked_pow((n - 1 - pivot) as u32)?;
        total = total.checked_add(rest.checked_mul(order)?)?;
    }
    Some(total)
}

/// The canonical linear forms, ordered by pivot, then the trailing variable
/// coefficients, then the constant.
pub fn canonical_linear_forms(field: &Field, n: usize) -> Vec<MultiPoly> {
    let q = field.order();
    let mut out = Vec::new();
    for pivot in 0..n {
        let free = n - 1 - pivot;
        let count = q.pow(free as u32);
        for code in 0..count {
            let mut coeffs = vec![Elem::ZERO; n];
            coeffs[pivot] = Elem::ONE;
            let mut v = code;
            for slot in coeffs[pivot + 1..].iter_mut().rev() {
                *slot = field.elem(v % q).unwrap();
                v /= q;
            }
            for c in field.elements() {
                out.push(MultiPoly::linear_form(c, &coeffs));
            }
        }
    }
    out
}

/// Splits `form` as `x_pivot - h` and returns `(pivot, h)`.
fn pivot_split(field: &Field, form: &MultiPoly) -> Option<(usize, MultiPoly)> {
    let n = form.n();
    if form.degree() != Some(1) {
        return None;
    }
    let pivot = (0..n).find(|&i| {
        let mut e = vec![0; n];
        e[i] = 1;
        !form.coeff(&e).is_zero()
    })?;
    let mut e = vec![0; n];
    e[pivot] = 1;
    let lead = form.coeff(&e);
    let monic = form.scale(field, field.inv(lead).unwrap());
    let h = MultiPoly::var(n, pivot).sub(field, &monic);
    Some((pivot, h))
}

/// Exact quotient `f / form` for a degree-one `form`, or `None` if it does
/// not divide. Synthetic division in the pivot variable.
pub fn divide_by_linear(field: &Field, f: &MultiPoly, form: &MultiPoly) -> Option<MultiPoly> {
    let (pivot, h) = pivot_split(field, form)?;
    let n = f.n();
    let max_k = f.terms().map(|(e, _)| e[pivot]).max().unwrap_or(0) as usize;
    // f = sum_k c_k x_pivot^k with c_k free of x_pivot
    let mut c = vec![MultiPoly::zero(n); max_k + 1];
    for (e, coef) in f.terms() {
        let mut rest = e.clone();
        let k = rest[pivot] as usize;
        rest[pivot] = 0;
        c[k] = c[k].add(field, &MultiPoly::monomial(rest, coef));
    }
    if max_k == 0 {
        return if f.is_zero() {
            Some(MultiPoly::zero(n))
        } else {
            None
        };
    }
    // quotient coefficients q_{k-1} = c_k + h q_k, remainder c_0 + h q_0
    let mut q = vec![MultiPoly::zero(n); max_k];
    q[max_k - 1] = c[max_k].clone();
    for k in (1..max_k).rev() {
        q[k - 1] = c[k].add(field, &h.mul(field, &q[k]));
    }
    let rem = c[0].add(field, &h.mul(field, &q[0]));
    if !rem.is_zero() {
        return None;
    }
    let mut quotient = MultiPoly::zero(n);
    for (k, qk) in q.into_iter().enumerate() {
        let mut e = vec![0; n];
        e[pivot] = k as u32;
        quotient = quotient.add(field, &qk.mul(field, &MultiPoly::monomial(e, Elem::ONE)));
    }
    Some(quotient)
}

/// Trial division of `f` by every canonical linear form. `cap` bounds the
/// number of candidate forms.
pub fn factor_linear(field: &Field, f: &MultiPoly, cap: u64) -> Result<LinearFactorization> {
    let n = f.n();
    let count = linear_form_count(field.order(), n).unwrap_or(u64::MAX);
    if count > cap {
        return Err(Error::BudgetExceeded(format!(
            "{count} candidate linear forms over {field} in {n} variables exceeds cap {cap}; \
             supply the factorization as a factor-list file instead"
        )));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut rem = f.clone();
    let mut factors = Vec::new();
    for form in canonical_linear_forms(field, n) {
        if rem.degree().unwrap_or(0) == 0 {
            break;
        }
        let mut mult = 0;
        while let Some(q) = divide_by_linear(field, &rem, &form) {
            rem = q;
            mult += 1;
        }
        if mult > 0 {
            factors.push((form, mult));
        }
    }
    Ok(LinearFactorization {
        factors,
        remainder: rem,
    })
}

/// Multivariate division of `f` by a single nonzero `g` in graded order:
/// returns `(quotient, remainder)` with `f = quotient * g + remainder` and no
/// remainder term divisible by the leading monomial of `g`. For a single
/// divisor the remainder is zero exactly when `g` divides `f`.
pub fn divide(field: &Field, f: &MultiPoly, g: &MultiPoly) -> Result<(MultiPoly, MultiPoly)> {
    let (lm_g, lc_g) = match g.leading_term() {
        Some((e, c)) => (e.clone(), c),
        None => return Err(Error::DivisionByZero),
    };
    let inv = field.inv(lc_g).unwrap();
    let n = f.n();
    let mut p = f.clone();
    let mut quotient = MultiPoly::zero(n);
    let mut remainder = MultiPoly::zero(n);
    while let Some((lm, lc)) = p.leading_term().map(|(e, c)| (e.clone(), c)) {
        if lm.iter().zip(&lm_g).all(|(a, b)| a >= b) {
            let shift: Exponent = lm.iter().zip(&lm_g).map(|(a, b)| a - b).collect();
            let t = MultiPoly::monomial(shift, field.mul(lc, inv));
            p = p.sub(field, &t.mul(field, g));
            quotient = quotient.add(field, &t);
        } else {
            let t = MultiPoly::monomial(lm, lc);
            p = p.sub(field, &t);
            remainder = remainder.add(field, &t);
        }
    }
    Ok((quotient, remainder))
}

pub fn divides(field: &Field, g: &MultiPoly, f: &MultiPoly) -> bool {
    match divide(field, f, g) {
        Ok((_, r)) => r.is_zero(),
        Err(_) => f.is_zero(),
    }
}
