//! Seeded randomized campaigns for the two interpolation lemmas.
//!
//! Trial `i` draws from ChaCha8 stream `i` of the campaign seed, so rows do
//! not depend on scheduling and re-runs are byte-identical.

use std::collections::BTreeSet;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Field;
use crate::constructions::random_lines;
use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::interp::{line_degree_bound, vanish_at_points, vanish_on_lines, MultiplicitySpec};
use crate::par;

use super::report::fmt_g12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Lemma {
    /// Vanishing at points with multiplicities.
    Lemma1,
    /// Vanishing on lines.
    Lemma2,
}

impl std::str::FromStr for Lemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Lemma> {
        match s {
            "lemma1" => Ok(Lemma::Lemma1),
            "lemma2" => Ok(Lemma::Lemma2),
            _ => Err(Error::InvalidParameter(format!("unknown campaign {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignParams {
    pub p: u64,
    pub n: usize,
    pub max_points: usize,
    pub m_min: u32,
    pub m_max: u32,
    pub max_lines: usize,
}

impl Default for CampaignParams {
    fn default() -> CampaignParams {
        CampaignParams {
            p: 101,
            n: 3,
            max_points: 12,
            m_min: 3,
            m_max: 5,
            max_lines: 8,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TrialRow {
    pub trial: usize,
    /// Number of points (lemma 1) or lines (lemma 2).
    pub size: usize,
    /// `m` values joined by `;` (lemma 1 only).
    pub orders: String,
    pub degree: u32,
    pub bound: f64,
    pub within_bound: bool,
    pub verified: bool,
}

impl TrialRow {
    pub fn passed(&self) -> bool {
        self.within_bound && self.verified
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CampaignReport {
    pub lemma: Lemma,
    pub seed: u64,
    pub rows: Vec<TrialRow>,
}

impl CampaignReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(TrialRow::passed)
    }

    pub fn to_csv(&self) -> String {
        let size = match self.lemma {
            Lemma::Lemma1 => "points",
            Lemma::Lemma2 => "L",
        };
        let mut out = format!("trial,{size},orders,degree,bound,within_bound,verified,pass\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                r.trial,
                r.size,
                r.orders,
                r.degree,
                fmt_g12(r.bound),
                r.within_bound,
                r.verified,
                r.passed()
            ));
        }
        out
    }
}

/// The RNG for one trial: stream `trial` of `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_point(field: &Field, n: usize, rng: &mut impl Rng) -> Point {
    Point(
        (0..n)
            .map(|_| field.elem(rng.gen_range(0..field.order())).unwrap())
            .collect(),
    )
}

fn lemma1_trial(
    field: &Field,
    params: &CampaignParams,
    trial: usize,
    seed: u64,
) -> Result<TrialRow> {
    let mut rng = trial_rng(seed, trial);
    let k = rng.gen_range(1..=params.max_points);
    let mut seen = BTreeSet::new();
    let mut points = Vec::new();
    while points.len() < k {
        let x = random_point(field, params.n, &mut rng);
        if seen.insert(x.clone()) {
            points.push((x, rng.gen_range(params.m_min..=params.m_max)));
        }
    }
    let spec = MultiplicitySpec::new(params.n, points)?;
    let res = vanish_at_points(field, &spec)?;
    // every m >= n in the default ranges, so the sharper bound applies
    let (bound, within) = match (
        spec.large_order_bound(),
        spec.within_large_order_bound(res.degree),
    ) {
        (Some(b), Some(h)) => (b, h),
        _ => (spec.general_bound(), spec.within_general_bound(res.degree)),
    };
    let orders: Vec<String> = spec.points.iter().map(|(_, m)| m.to_string()).collect();
    Ok(TrialRow {
        trial,
        size: k,
        orders: orders.join(";"),
        degree: res.degree,
        bound,
        within_bound: within,
        verified: res.verified,
    })
}

fn lemma2_trial(
    field: &Field,
    params: &CampaignParams,
    trial: usize,
    seed: u64,
) -> Result<TrialRow> {
    let mut rng = trial_rng(seed, trial);
    let l = rng.gen_range(1..=params.max_lines);
    let ls = random_lines(field, params.n, l, rng.next_u64())?;
    let res = vanish_on_lines(&ls)?;
    let bound = line_degree_bound(params.n, l);
    Ok(TrialRow {
        trial,
        size: l,
        orders: String::new(),
        degree: res.degree,
        bound: bound as f64,
        within_bound: res.degree <= bound,
        verified: res.verified,
    })
}

pub fn verify_lemma_campaign(
    lemma: Lemma,
    trials: usize,
    seed: u64,
    params: &CampaignParams,
) -> Result<CampaignReport> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    if params.m_min == 0
        || params.m_min > params.m_max
        || params.max_points == 0
        || params.max_lines == 0
    {
        return Err(Error::InvalidParameter(format!(
            "bad campaign parameters {params:?}"
        )));
    }
    let field = Field::prime(params.p)?;
    let rows = par::map_range(trials, |t| match lemma {
        Lemma::Lemma1 => lemma1_trial(&field, params, t, seed),
        Lemma::Lemma2 => lemma2_trial(&field, params, t, seed),
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    Ok(CampaignReport { lemma, seed, rows })
}
