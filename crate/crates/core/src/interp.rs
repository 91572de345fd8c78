//! Vanishing polynomials of minimal degree: prescribed vanishing orders at
//! points, or vanishing on a set of lines.
//!
//! Both searches share one scheme. Monomials are fed as columns of the
//! constraint matrix in graded order; the first column that depends on the
//! earlier ones fixes the minimal degree `d`. The returned polynomial is the
//! first nullspace basis vector of the full degree-`d` constraint matrix.
//!
//! Line constraints do not sample points on the line. A polynomial vanishes
//! on `base + t dir` exactly when every coefficient of its restriction in `t`
//! is zero, which is a linear condition that works over fields with fewer
//! elements than the degree.

use std::collections::HashSet;

use serde::Serialize;

use crate::algebra::{binom, binom_mod, ColumnEchelon, Elem, Field, Matrix};
use crate::error::{Error, Result};
use crate::geometry::{LineSet, Point};
use crate::poly::{exponents_of_degree, monomials_up_to, Exponent, LinePowers, MultiPoly};

/// Points with required vanishing orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicitySpec {
    pub n: usize,
    pub points: Vec<(Point, u32)>,
}

impl MultiplicitySpec {
    pub fn new(n: usize, points: Vec<(Point, u32)>) -> Result<MultiplicitySpec> {
        let mut seen = HashSet::new();
        for (x, m) in &points {
            if x.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: x.dim(),
                });
            }
            if *m == 0 {
                return Err(Error::InvalidParameter(
                    "multiplicities must be at least 1".into(),
                ));
            }
            if !seen.insert(x) {
                return Err(Error::InvalidParameter(format!("point {x} listed twice")));
            }
        }
        Ok(MultiplicitySpec { n, points })
    }

    /// `sum C(m + n - 1, n)`: the number of Hasse conditions.
    pub fn constraint_count(&self) -> u64 {
        self.points
            .iter()
            .map(|(_, m)| binom(*m as u64 + self.n as u64 - 1, self.n as u64))
            .sum()
    }

    /// `(sum (m + n)^n)^(1/n)`
    pub fn general_bound(&self) -> f64 {
        let n = self.n as i32;
        let s: f64 = self
            .points
            .iter()
            .map(|(_, m)| (*m as f64 + n as f64).powi(n))
            .sum();
        s.powf(1.0 / n as f64)
    }

    /// `2 (sum m^n)^(1/n)`, valid when every `m >= n`.
    pub fn large_order_bound(&self) -> Option<f64> {
        if self.points.iter().any(|(_, m)| (*m as usize) < self.n) {
            return None;
        }
        let n = self.n as i32;
        let s: f64 = self.points.iter().map(|(_, m)| (*m as f64).powi(n)).sum();
        Some(2.0 * s.powf(1.0 / n as f64))
    }

    /// Exact integer test of `d <= general_bound()`.
    pub fn within_general_bound(&self, d: u32) -> bool {
        let n = self.n as u32;
        let rhs: u128 = self
            .points
            .iter()
            .map(|(_, m)| (*m as u128 + n as u128).pow(n))
            .sum();
        (d as u128).pow(n) <= rhs
    }

    /// Exact integer test of `d <= large_order_bound()`; `None` when some
    /// `m < n`.
    pub fn within_large_order_bound(&self, d: u32) -> Option<bool> {
        self.large_order_bound()?;
        let n = self.n as u32;
        let rhs: u128 = self
            .points
            .iter()
            .map(|(_, m)| (*m as u128).pow(n))
            .sum::<u128>()
            * 2u128.pow(n);
        Some((d as u128).pow(n) <= rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundCheck {
    pub name: String,
    pub value: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct InterpResult {
    pub poly: MultiPoly,
    pub degree: u32,
    pub bounds: Vec<BoundCheck>,
    pub constraint_rows: usize,
    pub monomial_cols: usize,
    /// The output was re-checked against every constraint (Hasse orders or
    /// coefficient-level line restriction).
    pub verified: bool,
}

impl InterpResult {
    pub fn passes(&self) -> bool {
        self.verified && self.bounds.iter().all(|b| b.holds)
    }
}

/// Row labels for the point constraints: `(point index, alpha)` with
/// `|alpha| < m(point)`.
fn point_rows(spec: &MultiplicitySpec) -> Vec<(usize, Exponent)> {
    let mut rows = Vec::new();
    for (i, (_, m)) in spec.points.iter().enumerate() {
        for k in 0..*m {
            for a in exponents_of_degree(spec.n, k) {
                rows.push((i, a));
            }
        }
    }
    rows
}

fn point_column(
    field: &Field,
    spec: &MultiplicitySpec,
    rows: &[(usize, Exponent)],
    e: &[u32],
) -> Vec<Elem> {
    let p = field.p();
    rows.iter()
        .map(|(i, alpha)| {
            let x = spec.points[*i].0.coords();
            let mut acc = Elem::ONE;
            for ((&ei, &ai), &xi) in e.iter().zip(alpha).zip(x) {
                if ai > ei {
                    return Elem::ZERO;
                }
                let b = binom_mod(ei as u64, ai as u64, p);
                acc = field.mul(
                    acc,
                    field.mul(field.from_u64(b), field.pow(xi, (ei - ai) as u64)),
                );
                if acc.is_zero() {
                    return acc;
                }
            }
            acc
        })
        .collect()
}

/// The Hasse-condition matrix for polynomials of degree at most `d`.
pub fn point_constraint_matrix(field: &Field, spec: &MultiplicitySpec, d: u32) -> Matrix {
    let rows = point_rows(spec);
    let monos = monomials_up_to(spec.n, d);
    let mut m = Matrix::zeros(rows.len(), monos.len());
    for (j, e) in monos.iter().enumerate() {
        for (i, v) in point_column(field, spec, &rows, e).into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

fn line_column(field: &Field, powers: &[LinePowers], e: &[u32], d: u32) -> Vec<Elem> {
    let width = d as usize + 1;
    let mut col = vec![Elem::ZERO; width * powers.len()];
    for (li, pw) in powers.iter().enumerate() {
        let r = pw.monomial(field, e);
        for (k, &c) in r.coeffs().iter().enumerate() {
            col[li * width + k] = c;
        }
    }
    col
}

/// Restriction-coefficient matrix: rows are the `d + 1` coefficients of the
/// restriction to each line, columns the monomials of degree at most `d`.
pub fn line_constraint_matrix(ls: &LineSet, d: u32) -> Matrix {
    let field = ls.field();
    let powers: Vec<LinePowers> = ls
        .lines()
        .iter()
        .map(|l| LinePowers::new(field, l, d))
        .collect();
    let monos = monomials_up_to(ls.n(), d);
    let mut m = Matrix::zeros((d as usize + 1) * ls.len(), monos.len());
    for (j, e) in monos.iter().enumerate() {
        for (i, v) in line_column(field, &powers, e, d).into_iter().enumerate() {
            m[(i, j)] = v;
        }
    }
    m
}

/// Smallest degree whose monomial count exceeds `rows(d)`: a nonzero
/// solution is guaranteed there.
fn guaranteed_degree(n: usize, rows: impl Fn(u32) -> u64) -> u32 {
    (0..)
        .find(|&d| binom(d as u64 + n as u64, n as u64) > rows(d))
        .unwrap()
}

/// Feeds monomials in graded order until one is dependent; returns its
/// degree.
fn first_dependent_degree(
    field: &Field,
    n: usize,
    cap: u32,
    rows: usize,
    column: impl Fn(&[u32]) -> Vec<Elem>,
) -> Result<u32> {
    let mut echelon = ColumnEchelon::new(rows);
    for e in monomials_up_to(n, cap) {
        if echelon.push(field, &column(&e)).is_some() {
            return Ok(e.iter().sum());
        }
    }
    Err(Error::Solver(cap))
}

fn poly_from_vector(field: &Field, n: usize, d: u32, v: &[Elem]) -> MultiPoly {
    MultiPoly::from_terms(
        field,
        n,
        monomials_up_to(n, d).into_iter().zip(v.iter().copied()),
    )
    .expect("nullspace vector lies in the field")
}

/// A nonzero polynomial of minimal degree vanishing to order at least
/// `m(x)` at every point of `spec`.
pub fn vanish_at_points(field: &Field, spec: &MultiplicitySpec) -> Result<InterpResult> {
    let n = spec.n;
    for (x, _) in &spec.points {
        if let Some(c) = x.coords().iter().find(|c| !field.contains(**c)) {
            return Err(Error::ForeignElement {
                value: c.index(),
                order: field.order(),
            });
        }
    }
    let rows = point_rows(spec);
    let cap = guaranteed_degree(n, |_| rows.len() as u64);
    let d = first_dependent_degree(field, n, cap, rows.len(), |e| {
        point_column(field, spec, &rows, e)
    })?;

    let matrix = point_constraint_matrix(field, spec, d);
    let basis = matrix.nullspace(field);
    let v = basis.first().ok_or(Error::Solver(d))?;
    let poly = poly_from_vector(field, n, d, v);

    let verified = !poly.is_zero()
        && spec
            .points
            .iter()
            .all(|(x, m)| poly.vanishes_to_order(field, x, *m));
    let mut bounds = vec![BoundCheck {
        name: "general".into(),
        value: spec.general_bound(),
        holds: spec.within_general_bound(d),
    }];
    if let (Some(value), Some(holds)) = (spec.large_order_bound(), spec.within_large_order_bound(d))
    {
        bounds.push(BoundCheck {
            name: "large_order".into(),
            value,
            holds,
        });
    }
    Ok(InterpResult {
        degree: poly.degree().unwrap_or(0),
        poly,
        bounds,
        constraint_rows: matrix.rows(),
        monomial_cols: matrix.cols(),
        verified,
    })
}

/// `ceil(n L^(1/(n-1)))`, computed exactly as the least `c` with
/// `c^(n-1) >= n^(n-1) L`.
pub fn line_degree_bound(n: usize, line_count: usize) -> u32 {
    let e = (n - 1) as u32;
    let target = (n as u128).pow(e) * line_count as u128;
    (0u32..).find(|&c| (c as u128).pow(e) >= target).unwrap()
}

/// A nonzero polynomial of minimal degree vanishing on every line.
pub fn vanish_on_lines(ls: &LineSet) -> Result<InterpResult> {
    if ls.is_empty() {
        return Err(Error::InvalidParameter("need at least one line".into()));
    }
    let field = ls.field();
    let n = ls.n();
    let l = ls.len() as u64;
    let cap = guaranteed_degree(n, |d| (d as u64 + 1) * l);
    let powers: Vec<LinePowers> = ls
        .lines()
        .iter()
        .map(|line| LinePowers::new(field, line, cap))
        .collect();
    let rows = (cap as usize + 1) * ls.len();
    let d = first_dependent_degree(field, n, cap, rows, |e| line_column(field, &powers, e, cap))?;

    let matrix = line_constraint_matrix(ls, d);
    let basis = matrix.nullspace(field);
    let v = basis.first().ok_or(Error::Solver(d))?;
    let poly = poly_from_vector(field, n, d, v);

    let verified = !poly.is_zero()
        && ls
            .lines()
            .iter()
            .all(|line| poly.vanishes_on_line(field, line));
    let ceil_bound = line_degree_bound(n, ls.len());
    let bounds = vec![BoundCheck {
        name: "lines".into(),
        value: n as f64 * (ls.len() as f64).powf(1.0 / (n as f64 - 1.0)),
        holds: d <= ceil_bound,
    }];
    Ok(InterpResult {
        degree: poly.degree().unwrap_or(0),
        poly,
        bounds,
        constraint_rows: matrix.rows(),
        monomial_cols: matrix.cols(),
        verified,
    })
}
