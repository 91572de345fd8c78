//! Weighted incidence counting and threshold refinement over a factored
//! vanishing polynomial.
//!
//! Weights are integers. The per-joint target is `t(x) = ceil(r(x)^(1/(n-1)))`
//! and incidence counts are exact integer sums.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::joints::JointRecord;
use crate::poly::{divide_by_linear, divides, MultiPoly};

pub type IndexSet = BTreeSet<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub poly: MultiPoly,
    pub degree: u32,
    /// Vanishing order at each joint, in joint order.
    pub orders: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FactorData {
    pub factors: Vec<Factor>,
}

impl FactorData {
    /// Computes degrees and vanishing orders. Each `(poly, mult)` entry is
    /// expanded into `mult` copies.
    pub fn new(
        field: &Field,
        factors: &[(MultiPoly, u32)],
        joints: &[JointRecord],
    ) -> Result<FactorData> {
        let mut out = Vec::new();
        for (poly, mult) in factors {
            let degree = poly.degree().ok_or(Error::ZeroPolynomial)?;
            let orders = joints
                .iter()
                .map(|j| poly.vanishing_order(field, &j.point))
                .collect::<Result<Vec<_>>>()?;
            for _ in 0..*mult {
                out.push(Factor {
                    poly: poly.clone(),
                    degree,
                    orders: orders.clone(),
                });
            }
        }
        Ok(FactorData { factors: out })
    }

    pub fn total_degree(&self) -> u32 {
        self.factors.iter().map(|f| f.degree).sum()
    }

    /// The product of all factors.
    pub fn product(&self, field: &Field, n: usize) -> MultiPoly {
        self.factors
            .iter()
            .fold(MultiPoly::constant(n, field.one()), |acc, f| {
                acc.mul(field, &f.poly)
            })
    }
}

/// Least `t` with `t^(n-1) >= r`.
pub fn weight_target(r: usize, n: usize) -> u32 {
    let e = (n - 1) as u32;
    (0u32..).find(|&t| (t as u128).pow(e) >= r as u128).unwrap()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum AllocationPolicy {
    /// Fill up to `min(t(x), sum m_i(x))`; fail only when a joint with a
    /// positive target has no vanishing at all.
    #[default]
    Truncate,
    /// Fail whenever `sum m_i(x) < t(x)`.
    Strict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightTable {
    pub targets: Vec<u32>,
    /// `weights[i][x]` is `n_i(x)`.
    pub weights: Vec<Vec<u32>>,
}

impl WeightTable {
    pub fn factor(&self, i: usize) -> &[u32] {
        &self.weights[i]
    }
}

/// Greedy allocation: factors in descending degree (ties by index), each
/// taking as much of the remaining target as its vanishing order allows.
pub fn allocate_weights(
    factors: &FactorData,
    joints: &[JointRecord],
    n: usize,
    policy: AllocationPolicy,
) -> Result<WeightTable> {
    let mut order: Vec<usize> = (0..factors.factors.len()).collect();
    order.sort_by(|&a, &b| {
        factors.factors[b]
            .degree
            .cmp(&factors.factors[a].degree)
            .then(a.cmp(&b))
    });
    let targets: Vec<u32> = joints.iter().map(|j| weight_target(j.r, n)).collect();
    let mut weights = vec![vec![0u32; joints.len()]; factors.factors.len()];
    for (x, &t) in targets.iter().enumerate() {
        let available: u32 = factors.factors.iter().map(|f| f.orders[x]).sum();
        let short = match policy {
            AllocationPolicy::Truncate => available == 0 && t > 0,
            AllocationPolicy::Strict => available < t,
        };
        if short {
            return Err(Error::Allocation {
                joint: x,
                target: t,
                available,
            });
        }
        let mut remaining = t;
        for &i in &order {
            let take = remaining.min(factors.factors[i].orders[x]);
            weights[i][x] = take;
            remaining -= take;
        }
    }
    Ok(WeightTable { targets, weights })
}

/// Line/joint incidences of a configuration, by index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incidence {
    /// Joints on each line.
    pub line_joints: Vec<Vec<usize>>,
    /// Lines through each joint.
    pub joint_lines: Vec<Vec<usize>>,
}

impl Incidence {
    pub fn from_joints(line_count: usize, joints: &[JointRecord]) -> Incidence {
        let mut line_joints = vec![Vec::new(); line_count];
        for (x, j) in joints.iter().enumerate() {
            for &l in &j.incident {
                line_joints[l].push(x);
            }
        }
        Incidence {
            line_joints,
            joint_lines: joints.iter().map(|j| j.incident.clone()).collect(),
        }
    }

    pub fn line_count(&self) -> usize {
        self.line_joints.len()
    }

    pub fn joint_count(&self) -> usize {
        self.joint_lines.len()
    }

    pub fn all_lines(&self) -> IndexSet {
        (0..self.line_count()).collect()
    }

    pub fn all_joints(&self) -> IndexSet {
        (0..self.joint_count()).collect()
    }
}

/// `I(lines, joints) = sum over l in lines, x in l and joints of n_i(x)`.
pub fn incidence_count(
    inc: &Incidence,
    lines: &IndexSet,
    joints: &IndexSet,
    weights: &[u32],
) -> u64 {
    lines
        .iter()
        .map(|&l| {
            inc.line_joints[l]
                .iter()
                .filter(|x| joints.contains(x))
                .map(|&x| weights[x] as u64)
                .sum::<u64>()
        })
        .sum()
}

/// The five incidence numbers of the refinement identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionTerms {
    /// `I(L, J)`
    pub total: u64,
    /// `I(L \ L_i, J)`
    pub dropped_lines: u64,
    /// `I(L_i, J \ J_i)`
    pub dropped_joints: u64,
    /// `I(L_i \ L_i', J_i)`
    pub dropped_refined_lines: u64,
    /// `I(L_i', J_i \ J_i')`
    pub dropped_refined_joints: u64,
    /// `I(L_i', J_i')`
    pub refined: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementResult {
    pub lines_i: IndexSet,
    pub joints_i: IndexSet,
    pub lines_i_prime: IndexSet,
    pub joints_i_prime: IndexSet,
    pub terms: PartitionTerms,
}

fn rich_joints(inc: &Incidence, pool: &IndexSet, lines: &IndexSet, m: u64) -> IndexSet {
    // "at least M/3 lines" as 3 * count >= M
    pool.iter()
        .copied()
        .filter(|&x| {
            3 * inc.joint_lines[x]
                .iter()
                .filter(|l| lines.contains(l))
                .count() as u64
                >= m
        })
        .collect()
}

/// Threshold refinement for one factor of degree `d`:
///
/// * `L_i`: lines of `L` with `I(l, J) >= 3d`
/// * `J_i`: joints of `J` on at least `M/3` lines of `L_i`
/// * `L_i'`: lines of `L_i` with `I(l, J_i) > 2d`
/// * `J_i'`: joints of `J_i` on at least `M/3` lines of `L_i'`
pub fn refine(
    inc: &Incidence,
    lines: &IndexSet,
    joints: &IndexSet,
    weights: &[u32],
    d: u32,
    m: u64,
) -> RefinementResult {
    let single = |l: usize, js: &IndexSet| incidence_count(inc, &IndexSet::from([l]), js, weights);
    let d = d as u64;
    let lines_i: IndexSet = lines
        .iter()
        .copied()
        .filter(|&l| single(l, joints) >= 3 * d)
        .collect();
    let joints_i = rich_joints(inc, joints, &lines_i, m);
    let lines_i_prime: IndexSet = lines_i
        .iter()
        .copied()
        .filter(|&l| single(l, &joints_i) > 2 * d)
        .collect();
    let joints_i_prime = rich_joints(inc, &joints_i, &lines_i_prime, m);

    let diff = |a: &IndexSet, b: &IndexSet| a.difference(b).copied().collect::<IndexSet>();
    let terms = PartitionTerms {
        total: incidence_count(inc, lines, joints, weights),
        dropped_lines: incidence_count(inc, &diff(lines, &lines_i), joints, weights),
        dropped_joints: incidence_count(inc, &lines_i, &diff(joints, &joints_i), weights),
        dropped_refined_lines: incidence_count(
            inc,
            &diff(&lines_i, &lines_i_prime),
            &joints_i,
            weights,
        ),
        dropped_refined_joints: incidence_count(
            inc,
            &lines_i_prime,
            &diff(&joints_i, &joints_i_prime),
            weights,
        ),
        refined: incidence_count(inc, &lines_i_prime, &joints_i_prime, weights),
    };
    RefinementResult {
        lines_i,
        joints_i,
        lines_i_prime,
        joints_i_prime,
        terms,
    }
}

/// Recomputes every incidence number from the sets and checks
/// `I(L_i', J_i') = I(L, J) - I(L \ L_i, J) - I(L_i, J \ J_i)
///   - I(L_i \ L_i', J_i) - I(L_i', J_i \ J_i')`.
pub fn partition_identity_check(
    inc: &Incidence,
    lines: &IndexSet,
    joints: &IndexSet,
    r: &RefinementResult,
    weights: &[u32],
) -> bool {
    let diff = |a: &IndexSet, b: &IndexSet| a.difference(b).copied().collect::<IndexSet>();
    let lhs = incidence_count(inc, &r.lines_i_prime, &r.joints_i_prime, weights) as i128;
    let rhs = incidence_count(inc, lines, joints, weights) as i128
        - incidence_count(inc, &diff(lines, &r.lines_i), joints, weights) as i128
        - incidence_count(inc, &r.lines_i, &diff(joints, &r.joints_i), weights) as i128
        - incidence_count(
            inc,
            &diff(&r.lines_i, &r.lines_i_prime),
            &r.joints_i,
            weights,
        ) as i128
        - incidence_count(
            inc,
            &r.lines_i_prime,
            &diff(&r.joints_i, &r.joints_i_prime),
            weights,
        ) as i128;
    lhs == rhs
}

/// Which gradient component of the selected factor to continue with.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GradientChoice {
    /// First component not divisible by the factor.
    Component { index: usize },
    /// Every component is identically zero: the factor is a p-th power.
    PthPower,
    /// Nonzero components exist but all are divisible by the factor.
    AllDivisible,
}

/// Picks the first gradient component not identically zero on the factor's
/// hypersurface, i.e. not divisible by the factor.
pub fn select_gradient_component(field: &Field, factor: &MultiPoly) -> GradientChoice {
    let grad = factor.gradient(field);
    if grad.iter().all(|g| g.is_zero()) {
        return GradientChoice::PthPower;
    }
    let linear = factor.degree() == Some(1);
    for (index, g) in grad.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let divisible = if linear {
            divide_by_linear(field, g, factor).is_some()
        } else {
            divides(field, factor, g)
        };
        if !divisible {
            return GradientChoice::Component { index };
        }
    }
    GradientChoice::AllDivisible
}

/// One round of the refinement driver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PruneStep {
    pub weights: WeightTable,
    /// `I_i(L, J)` for every factor.
    pub factor_incidences: Vec<u64>,
    pub selected: usize,
    pub refinement: RefinementResult,
    pub identity_holds: bool,
    pub gradient: GradientChoice,
}

/// allocate -> select the factor with the largest `I_i(L, J)` (lowest index
/// on ties) -> refine -> choose a gradient component.
pub fn prune_step(
    field: &Field,
    line_count: usize,
    joints: &[JointRecord],
    factors: &FactorData,
    n: usize,
    m: u64,
    policy: AllocationPolicy,
) -> Result<PruneStep> {
    if factors.factors.is_empty() {
        return Err(Error::InvalidParameter("factor list is empty".into()));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("M must be at least 1".into()));
    }
    let weights = allocate_weights(factors, joints, n, policy)?;
    let inc = Incidence::from_joints(line_count, joints);
    let (all_l, all_j) = (inc.all_lines(), inc.all_joints());
    let factor_incidences: Vec<u64> = (0..factors.factors.len())
        .map(|i| incidence_count(&inc, &all_l, &all_j, weights.factor(i)))
        .collect();
    let selected = factor_incidences
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i)
        .unwrap();
    let f = &factors.factors[selected];
    let refinement = refine(
        &inc,
        &all_l,
        &all_j,
        weights.factor(selected),
        f.degree.max(1),
        m,
    );
    let identity_holds =
        partition_identity_check(&inc, &all_l, &all_j, &refinement, weights.factor(selected));
    Ok(PruneStep {
        gradient: select_gradient_component(field, &f.poly),
        weights,
        factor_incidences,
        selected,
        refinement,
        identity_holds,
    })
}
