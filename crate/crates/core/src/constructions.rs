//! Generators for explicit line configurations: the axis-parallel grid, the
//! plane counterexample, lines on the Heisenberg surface with transversals,
//! and seeded random line sets. Every generator returns lines in canonical
//! order.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Elem, Field};
use crate::error::{Error, Result};
use crate::geometry::{Line, LineSet, Point};
use crate::joints::{self, JointSummary};
use crate::par;
use crate::poly::MultiPoly;

pub const ENUM_BUDGET_VAR: &str = "JOINTSLAB_ENUM_BUDGET";
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// Cap on brute-force enumeration sizes, from `JOINTSLAB_ENUM_BUDGET`.
pub fn enum_budget() -> u64 {
    std::env::var(ENUM_BUDGET_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ENUM_BUDGET)
}

/// Number of affine lines in k^n for |k| = `order`:
/// `order^(n-1) (order^n - 1) / (order - 1)`.
pub fn total_line_count(order: u64, n: usize) -> Option<u64> {
    let dirs = (order.checked_pow(n as u32)? - 1) / (order - 1);
    dirs.checked_mul(order.checked_pow(n as u32 - 1)?)
}

fn check_budget(what: &str, count: Option<u64>) -> Result<u64> {
    let budget = enum_budget();
    match count {
        Some(c) if c <= budget => Ok(c),
        _ => Err(Error::BudgetExceeded(format!(
            "{what}: {} candidates exceeds {ENUM_BUDGET_VAR}={budget}",
            count.map_or("more than 2^64".to_string(), |c| c.to_string())
        ))),
    }
}

/// Vectors of length `len` over the field, in lexicographic order.
fn vectors(field: &Field, len: usize) -> impl Iterator<Item = Vec<Elem>> + '_ {
    let q = field.order();
    (0..q.pow(len as u32)).map(move |mut code| {
        let mut v = vec![Elem::ZERO; len];
        for slot in v.iter_mut().rev() {
            *slot = field.elem(code % q).unwrap();
            code /= q;
        }
        v
    })
}

/// Canonical direction vectors: first nonzero coordinate equal to 1.
pub fn canonical_directions(field: &Field, n: usize) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    for pivot in 0..n {
        for tail in vectors(field, n - 1 - pivot) {
            let mut d = vec![Elem::ZERO; n];
            d[pivot] = Elem::ONE;
            d[pivot + 1..].copy_from_slice(&tail);
            out.push(d);
        }
    }
    out
}

/// Every line of k^n in canonical order, subject to the enumeration budget.
pub fn all_lines(field: &Field, n: usize) -> Result<Vec<Line>> {
    check_budget("line enumeration", total_line_count(field.order(), n))?;
    let dirs = canonical_directions(field, n);
    let mut lines = par::flat_map_range(dirs.len(), |i| {
        let dir = &dirs[i];
        let pivot = dir.iter().position(|c| !c.is_zero()).unwrap();
        vectors(field, n - 1)
            .map(|rest| {
                let mut base = rest;
                base.insert(pivot, Elem::ZERO);
                Line::new(field, Point(base), dir.clone()).unwrap()
            })
            .collect()
    });
    lines.sort();
    Ok(lines)
}

/// Every point of k^n in lexicographic order, subject to the budget.
pub fn all_points(field: &Field, n: usize) -> Result<Vec<Point>> {
    check_budget("point enumeration", field.order().checked_pow(n as u32))?;
    Ok(vectors(field, n).map(Point).collect())
}

/// Axis-parallel lines through the grid `{0..m-1}^n`: `n m^(n-1)` lines whose
/// joints are the `m^n` grid points.
pub fn grid_lines(field: &Field, m: u64, n: usize) -> Result<LineSet> {
    if m == 0 || m > field.order() {
        return Err(Error::InvalidParameter(format!(
            "grid side {m} must be between 1 and the field order {}",
            field.order()
        )));
    }
    if n < 2 {
        return Err(Error::InvalidParameter("grid needs n >= 2".into()));
    }
    let side: Vec<Elem> = (0..m).map(|i| field.elem(i).unwrap()).collect();
    let mut lines = Vec::new();
    for axis in 0..n {
        let mut dir = vec![Elem::ZERO; n];
        dir[axis] = Elem::ONE;
        let count = (m as usize).pow(n as u32 - 1);
        for mut code in 0..count {
            let mut base = vec![Elem::ZERO; n];
            for (k, slot) in base.iter_mut().enumerate().rev() {
                if k == axis {
                    continue;
                }
                *slot = side[code % m as usize];
                code /= m as usize;
            }
            lines.push(Line::new(field, Point(base), dir.clone())?);
        }
    }
    Ok(LineSet::new(field.clone(), n, lines)?.sorted())
}

/// All `p^2 + p` lines of the plane `z = 0` in GF(p)^3 plus the vertical line
/// through each of its `p^2` points. Every plane point is a joint with
/// `r = p + 2`.
pub fn plane_counterexample(p: u64) -> Result<LineSet> {
    let field = Field::prime(p)?;
    let mut lines = Vec::new();
    for dir in canonical_directions(&field, 2) {
        let d = vec![dir[0], dir[1], Elem::ZERO];
        for c in field.elements() {
            // base on the axis transverse to the direction
            let base = if dir[0].is_zero() {
                vec![c, Elem::ZERO, Elem::ZERO]
            } else {
                vec![Elem::ZERO, c, Elem::ZERO]
            };
            lines.push(Line::new(&field, Point(base), d.clone())?);
        }
    }
    let up = vec![Elem::ZERO, Elem::ZERO, Elem::ONE];
    for x in field.elements() {
        for y in field.elements() {
            lines.push(Line::new(
                &field,
                Point(vec![x, y, Elem::ZERO]),
                up.clone(),
            )?);
        }
    }
    Ok(LineSet::new(field, 3, lines)?.sorted())
}

/// GF(p^2), the field of the Heisenberg surface.
pub fn heisenberg_field(p: u64) -> Result<Field> {
    Field::new(p, 2)
}

/// `x - x^p + y^p z - y z^p`
pub fn heisenberg_poly(field: &Field) -> MultiPoly {
    let p = field.p() as u32;
    let one = field.one();
    let minus = field.neg(one);
    MultiPoly::from_terms(
        field,
        3,
        [
            (vec![1, 0, 0], one),
            (vec![p, 0, 0], minus),
            (vec![0, p, 1], one),
            (vec![0, 1, p], minus),
        ],
    )
    .expect("well-formed terms")
}

/// Exactly the lines of GF(p^2)^3 on which the Heisenberg polynomial
/// vanishes identically.
pub fn heisenberg_lines(p: u64) -> Result<LineSet> {
    let field = heisenberg_field(p)?;
    let f = heisenberg_poly(&field);
    let candidates = all_lines(&field, 3)?;
    let keep = par::map(&candidates, |l| f.vanishes_on_line(&field, l));
    let lines = candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(l, k)| k.then_some(l))
        .collect();
    LineSet::new(field, 3, lines)
}

/// Zeros of `poly` in k^n, in lexicographic order.
pub fn surface_points(field: &Field, poly: &MultiPoly) -> Result<Vec<Point>> {
    let points = all_points(field, poly.n())?;
    let keep = par::map(&points, |x| poly.evaluate(field, x).is_zero());
    Ok(points
        .into_iter()
        .zip(keep)
        .filter_map(|(x, k)| k.then_some(x))
        .collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransversalMode {
    /// One line per surface point.
    PerPoint,
    /// Add a line only for points not yet covered.
    GreedyCover,
}

/// A line through `x` not contained in the surface: direction `e_j` for the
/// first `j` with `dF/dx_j(x) != 0`, otherwise the first canonical direction
/// that leaves the surface.
fn transversal_at(field: &Field, poly: &MultiPoly, grad: &[MultiPoly], x: &Point) -> Result<Line> {
    let n = poly.n();
    if let Some(j) = grad.iter().position(|g| !g.evaluate(field, x).is_zero()) {
        let mut dir = vec![Elem::ZERO; n];
        dir[j] = Elem::ONE;
        return Line::new(field, x.clone(), dir);
    }
    for dir in canonical_directions(field, n) {
        let l = Line::new(field, x.clone(), dir)?;
        if !poly.vanishes_on_line(field, &l) {
            return Ok(l);
        }
    }
    Err(Error::InvalidParameter(format!(
        "every line through {x} lies in the surface"
    )))
}

/// Lines attached to surface points so that each point lies on one of them.
/// In per-point mode the i-th line passes through the i-th point (lines may
/// repeat); in greedy mode lines are distinct.
pub fn attach_transversals(
    field: &Field,
    points: &[Point],
    poly: &MultiPoly,
    mode: TransversalMode,
) -> Result<Vec<Line>> {
    let grad = poly.gradient(field);
    match mode {
        TransversalMode::PerPoint => par::map(points, |x| transversal_at(field, poly, &grad, x))
            .into_iter()
            .collect(),
        TransversalMode::GreedyCover => {
            let on_surface: HashSet<&Point> = points.iter().collect();
            let mut covered: HashSet<Point> = HashSet::new();
            let mut out = Vec::new();
            for x in points {
                if covered.contains(x) {
                    continue;
                }
                let line = transversal_at(field, poly, &grad, x)?;
                for y in line.points(field) {
                    if on_surface.contains(&y) {
                        covered.insert(y);
                    }
                }
                out.push(line);
            }
            Ok(out)
        }
    }
}

/// `count` distinct lines of k^n drawn with a seeded ChaCha8 stream, in
/// canonical order.
pub fn random_lines(field: &Field, n: usize, count: usize, seed: u64) -> Result<LineSet> {
    if count == 0 {
        return Err(Error::InvalidParameter("count must be at least 1".into()));
    }
    let total = total_line_count(field.order(), n);
    if let Some(t) = total {
        if count as u64 > t {
            return Err(Error::InvalidParameter(format!(
                "{count} lines requested but {field}^{n} has only {t}"
            )));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let lines: Vec<Line> = match total {
        // dense requests: sample without replacement from the full list
        Some(t) if 2 * count as u64 > t => {
            let mut all = all_lines(field, n)?;
            all.partial_shuffle(&mut rng, count);
            all.truncate(count);
            all
        }
        _ => {
            let mut seen = BTreeSet::new();
            let q = field.order();
            while seen.len() < count {
                let base: Vec<Elem> = (0..n)
                    .map(|_| field.elem(rng.gen_range(0..q)).unwrap())
                    .collect();
                let dir: Vec<Elem> = (0..n)
                    .map(|_| field.elem(rng.gen_range(0..q)).unwrap())
                    .collect();
                if dir.iter().all(|c| c.is_zero()) {
                    continue;
                }
                seen.insert(Line::new(field, Point(base), dir)?);
            }
            seen.into_iter().collect()
        }
    };
    Ok(LineSet::new(field.clone(), n, lines)?.sorted())
}

/// A generated configuration with counts recomputed by the joints module.
#[derive(Clone, Debug)]
pub struct ConstructionReport {
    pub label: String,
    pub lines: LineSet,
    /// `(quantity, asymptotic prediction)`
    pub predictions: Vec<(String, String)>,
    pub summary: JointSummary,
}

impl ConstructionReport {
    pub fn new(
        label: impl Into<String>,
        lines: LineSet,
        predictions: Vec<(String, String)>,
    ) -> ConstructionReport {
        let summary = joints::summarize(&lines);
        ConstructionReport {
            label: label.into(),
            lines,
            predictions,
            summary,
        }
    }
}
