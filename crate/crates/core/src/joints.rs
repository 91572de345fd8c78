//! Joint detection with multiplicities and the weighted joint sums.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::algebra::{binom, Field};
use crate::geometry::{directions_rank, Line, LineSet, Point};
use crate::par;

/// A joint `x`: the lines through it, `r(x)` and `N(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointRecord {
    pub point: Point,
    /// Indices into the line set, ascending.
    pub incident: Vec<usize>,
    pub r: usize,
    /// Number of unordered n-subsets of incident lines with independent
    /// directions.
    pub multiplicity: u64,
}

/// All joints of the configuration, sorted by point.
///
/// Candidates are the pairwise intersection points; every line through a
/// candidate meets another line there, so incident sets are complete.
pub fn find_joints(ls: &LineSet) -> Vec<JointRecord> {
    let n = ls.n();
    let field = ls.field();
    let lines = ls.lines();
    if lines.len() < n || n == 0 {
        return Vec::new();
    }
    let hits = par::flat_map_range(lines.len(), |i| {
        let mut out = Vec::new();
        for j in i + 1..lines.len() {
            if let Ok(Some(x)) = lines[i].intersect(field, &lines[j]) {
                out.push((x, i, j));
            }
        }
        out
    });
    let mut candidates: BTreeMap<Point, BTreeSet<usize>> = BTreeMap::new();
    for (x, i, j) in hits {
        let set = candidates.entry(x).or_default();
        set.insert(i);
        set.insert(j);
    }
    let candidates: Vec<(Point, Vec<usize>)> = candidates
        .into_iter()
        .filter(|(_, s)| s.len() >= n)
        .map(|(x, s)| (x, s.into_iter().collect()))
        .collect();
    par::map(&candidates, |(x, incident)| {
        let refs: Vec<&Line> = incident.iter().map(|&i| &lines[i]).collect();
        if directions_rank(field, &refs) < n {
            return None;
        }
        Some(JointRecord {
            point: x.clone(),
            incident: incident.clone(),
            r: incident.len(),
            multiplicity: multiplicity(field, lines, incident, n),
        })
    })
    .into_iter()
    .flatten()
    .collect()
}

/// `N(x)`: the number of n-subsets of `incident` whose directions span k^n.
pub fn multiplicity(field: &Field, lines: &[Line], incident: &[usize], n: usize) -> u64 {
    let mut count = 0;
    for_each_subset(incident.len(), n, |idx| {
        let refs: Vec<&Line> = idx.iter().map(|&k| &lines[incident[k]]).collect();
        if directions_rank(field, &refs) == n {
            count += 1;
        }
    });
    count
}

/// Calls `f` on every k-subset of `0..len` in lexicographic order.
pub fn for_each_subset(len: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > len {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + len - k) else {
            return;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// True iff `N(x) = C(r(x), n)` at every joint; vacuous for no joints.
pub fn check_full_joint_hypothesis(joints: &[JointRecord], n: usize) -> bool {
    joints
        .iter()
        .all(|j| j.multiplicity == binom(j.r as u64, n as u64))
}

/// An exact sum `sum_k c_k sqrt(k)` over squarefree `k`. Square roots of
/// distinct squarefree integers are linearly independent over Q, so equality
/// of the canonical maps is equality of the real numbers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RadicalSum {
    terms: BTreeMap<u64, u128>,
}

impl RadicalSum {
    pub fn zero() -> RadicalSum {
        RadicalSum::default()
    }

    pub fn integer(v: u128) -> RadicalSum {
        let mut s = RadicalSum::zero();
        s.add_scaled_sqrt(v, 1);
        s
    }

    /// Adds `a * sqrt(m)`.
    pub fn add_scaled_sqrt(&mut self, a: u128, m: u64) {
        if a == 0 || m == 0 {
            return;
        }
        let (s, k) = split_square(m);
        *self.terms.entry(k).or_default() += a * s as u128;
    }

    pub fn add(&mut self, other: &RadicalSum) {
        for (&k, &c) in &other.terms {
            *self.terms.entry(k).or_default() += c;
        }
    }

    /// `Some(v)` when the sum is the integer `v`.
    pub fn as_integer(&self) -> Option<u128> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&1).copied(),
            _ => None,
        }
    }

    /// `Some((c, k))` when the sum is the single radical `c sqrt(k)`.
    pub fn as_single(&self) -> Option<(u128, u64)> {
        match self.terms.len() {
            0 => Some((0, 1)),
            1 => self.terms.iter().next().map(|(&k, &c)| (c, k)),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&k, &c)| c as f64 * (k as f64).sqrt())
            .sum()
    }

    /// Exact comparison of two single-radical sums by comparing squares.
    pub fn cmp_single(&self, other: &RadicalSum) -> Option<std::cmp::Ordering> {
        let (a, k) = self.as_single()?;
        let (b, m) = other.as_single()?;
        let lhs = a.checked_mul(a)?.checked_mul(k as u128)?;
        let rhs = b.checked_mul(b)?.checked_mul(m as u128)?;
        Some(lhs.cmp(&rhs))
    }
}

impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&k, &c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if k == 1 {
                write!(f, "{c}")?;
            } else if c == 1 {
                write!(f, "sqrt({k})")?;
            } else {
                write!(f, "{c}*sqrt({k})")?;
            }
        }
        Ok(())
    }
}

/// `m = s^2 k` with `k` squarefree.
fn split_square(mut m: u64) -> (u64, u64) {
    let mut s = 1;
    let mut k = 1;
    let mut d = 2;
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        s *= d.pow(e / 2);
        if e % 2 == 1 {
            k *= d;
        }
        d += 1;
    }
    (s, k * m)
}

/// Exact `n = 3` forms of the sums.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExactSums {
    /// `sum sqrt(N(x))`
    pub s_n: RadicalSum,
    /// `sum r(x) sqrt(r(x))`
    pub s_r: RadicalSum,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JointSummary {
    pub joints: Vec<JointRecord>,
    pub n: usize,
    pub line_count: usize,
    /// `sum N(x)^(1/(n-1))`
    pub s_n: f64,
    /// `sum r(x)^(n/(n-1))`
    pub s_r: f64,
    pub hypothesis_holds: bool,
    pub exact: Option<ExactSums>,
}

impl JointSummary {
    pub fn joint_count(&self) -> usize {
        self.joints.len()
    }
}

pub fn weighted_sums(joints: Vec<JointRecord>, line_count: usize, n: usize) -> JointSummary {
    let e_n = 1.0 / (n as f64 - 1.0);
    let e_r = n as f64 / (n as f64 - 1.0);
    let s_n = joints
        .iter()
        .map(|j| (j.multiplicity as f64).powf(e_n))
        .sum();
    let s_r = joints.iter().map(|j| (j.r as f64).powf(e_r)).sum();
    let exact = (n == 3).then(|| {
        let mut sums = ExactSums {
            s_n: RadicalSum::zero(),
            s_r: RadicalSum::zero(),
        };
        for j in &joints {
            sums.s_n.add_scaled_sqrt(1, j.multiplicity);
            sums.s_r.add_scaled_sqrt(j.r as u128, j.r as u64);
        }
        sums
    });
    let hypothesis_holds = check_full_joint_hypothesis(&joints, n);
    JointSummary {
        joints,
        n,
        line_count,
        s_n,
        s_r,
        hypothesis_holds,
        exact,
    }
}

/// `find_joints` followed by `weighted_sums`.
pub fn summarize(ls: &LineSet) -> JointSummary {
    weighted_sums(find_joints(ls), ls.len(), ls.n())
}
