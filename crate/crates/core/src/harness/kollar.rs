//! Report-only check of the high-multiplicity inequality
//! `sum_{r(x) > M} r(x)^(n/(n-1)) <= (sum a_i)(prod a_i)` for lines lying on
//! `n - 1` hypersurfaces of degrees `a_i`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::geometry::{LineSet, Point};
use crate::poly::{factor_linear, MultiPoly};

/// Candidate-form cap for the linear-factor coprimality check.
const COPRIME_CHECK_CAP: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct KollarCheck {
    pub degrees: Vec<u32>,
    pub m: u64,
    /// Points with `r(x) > M` and their `r(x)`.
    #[serde(skip)]
    pub counted: Vec<(Point, usize)>,
    pub counted_points: usize,
    pub lhs: f64,
    pub rhs: u128,
    pub holds: bool,
    /// Every counted point evaluates to zero on every hypersurface.
    pub points_verified: bool,
    /// `Some` when every hypersurface splits into linear forms and pairwise
    /// coprimality could be decided; `None` when it is left to the caller.
    pub coprime_verified: Option<bool>,
}

fn linear_split(field: &Field, f: &MultiPoly) -> Option<Vec<MultiPoly>> {
    let fac = factor_linear(field, f, COPRIME_CHECK_CAP).ok()?;
    (fac.remainder.degree() == Some(0)).then(|| fac.factors.into_iter().map(|(g, _)| g).collect())
}

pub fn check_kollar(
    field: &Field,
    surfaces: &[MultiPoly],
    ls: &LineSet,
    m: u64,
) -> Result<KollarCheck> {
    let n = ls.n();
    if surfaces.len() + 1 != n {
        return Err(Error::InvalidParameter(format!(
            "need {} hypersurfaces in dimension {n}, got {}",
            n - 1,
            surfaces.len()
        )));
    }
    let mut degrees = Vec::new();
    for s in surfaces {
        if s.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: s.n(),
            });
        }
        degrees.push(s.degree().ok_or(Error::ZeroPolynomial)?);
    }
    for (li, line) in ls.lines().iter().enumerate() {
        for (si, s) in surfaces.iter().enumerate() {
            if !s.vanishes_on_line(field, line) {
                return Err(Error::NotContained {
                    line: li,
                    surface: si,
                });
            }
        }
    }

    let splits: Option<Vec<Vec<MultiPoly>>> =
        surfaces.iter().map(|s| linear_split(field, s)).collect();
    let coprime_verified = splits.map(|sp| {
        sp.iter()
            .enumerate()
            .all(|(i, a)| sp[i + 1..].iter().all(|b| a.iter().all(|g| !b.contains(g))))
    });
    if coprime_verified == Some(false) {
        return Err(Error::InvalidParameter(
            "hypersurfaces share a linear factor".into(),
        ));
    }

    let mut r: BTreeMap<Point, usize> = BTreeMap::new();
    for line in ls.lines() {
        for x in line.points(field) {
            *r.entry(x).or_default() += 1;
        }
    }
    let counted: Vec<(Point, usize)> = r.into_iter().filter(|&(_, k)| k as u64 > m).collect();
    let points_verified = counted
        .iter()
        .all(|(x, _)| surfaces.iter().all(|s| s.evaluate(field, x).is_zero()));
    let e = n as f64 / (n as f64 - 1.0);
    let lhs: f64 = counted.iter().map(|&(_, k)| (k as f64).powf(e)).sum();
    let sum: u128 = degrees.iter().map(|&a| a as u128).sum();
    let prod: u128 = degrees.iter().map(|&a| a as u128).product();
    let rhs = sum * prod;
    Ok(KollarCheck {
        degrees,
        m,
        counted_points: counted.len(),
        counted,
        lhs,
        rhs,
        holds: lhs <= rhs as f64,
        points_verified,
        coprime_verified,
    })
}
