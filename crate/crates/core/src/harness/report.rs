//! Bound reports: joint sums against `L^(n/(n-1))`, as CSV or markdown.

use serde::Serialize;

use crate::geometry::LineSet;
use crate::joints::{self, JointSummary};

pub const CSV_HEADER: &str = "config,p,q,n,L,J,S_N,S_r,rhs,ratio_N,ratio_r,hypothesis";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub config: String,
    pub p: u64,
    pub q: u32,
    pub n: usize,
    pub lines: usize,
    pub joints: usize,
    pub s_n: f64,
    pub s_r: f64,
    /// `L^(n/(n-1))`
    pub rhs: f64,
    pub ratio_n: f64,
    pub ratio_r: f64,
    pub hypothesis: bool,
    /// Exact radical forms of the sums when `n = 3`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_s_n: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_s_r: Option<String>,
}

impl BoundReport {
    pub fn from_summary(config: impl Into<String>, ls: &LineSet, s: &JointSummary) -> BoundReport {
        let n = ls.n();
        let rhs = (s.line_count as f64).powf(n as f64 / (n as f64 - 1.0));
        let ratio = |v: f64| if rhs > 0.0 { v / rhs } else { 0.0 };
        BoundReport {
            config: config.into(),
            p: ls.field().p(),
            q: ls.field().q(),
            n,
            lines: s.line_count,
            joints: s.joint_count(),
            s_n: s.s_n,
            s_r: s.s_r,
            rhs,
            ratio_n: ratio(s.s_n),
            ratio_r: ratio(s.s_r),
            hypothesis: s.hypothesis_holds,
            exact_s_n: s.exact.as_ref().map(|e| e.s_n.to_string()),
            exact_s_r: s.exact.as_ref().map(|e| e.s_r.to_string()),
        }
    }

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.config,
            self.p,
            self.q,
            self.n,
            self.lines,
            self.joints,
            fmt_g12(self.s_n),
            fmt_g12(self.s_r),
            fmt_g12(self.rhs),
            fmt_g12(self.ratio_n),
            fmt_g12(self.ratio_r),
            self.hypothesis
        )
    }
}

/// joints -> sums -> report.
pub fn run_bound_report(config: impl Into<String>, ls: &LineSet) -> BoundReport {
    let s = joints::summarize(ls);
    BoundReport::from_summary(config, ls, &s)
}

/// Header plus one row per report, newline terminated.
pub fn to_csv(reports: &[BoundReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        out.push_str(&r.csv_row());
        out.push('\n');
    }
    out
}

pub fn to_markdown(reports: &[BoundReport]) -> String {
    let mut out = String::from("| config | field | n | L | J | S_N | S_r | L^(n/(n-1)) | S_N ratio | S_r ratio | full-joint |\n");
    out.push_str("|---|---|---|---|---|---|---|---|---|---|---|\n");
    for r in reports {
        let field = if r.q == 1 {
            format!("GF({})", r.p)
        } else {
            format!("GF({}^{})", r.p, r.q)
        };
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |\n",
            r.config,
            field,
            r.n,
            r.lines,
            r.joints,
            fmt_g12(r.s_n),
            fmt_g12(r.s_r),
            fmt_g12(r.rhs),
            fmt_g12(r.ratio_n),
            fmt_g12(r.ratio_r),
            if r.hypothesis { "yes" } else { "no" }
        ));
    }
    out
}

/// Twelve significant digits, `%.12g` style.
pub fn fmt_g12(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    if !(-4..DIGITS).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_zeros(mantissa), exp.abs())
    } else {
        trim_zeros(&format!("{:.*}", (DIGITS - 1 - exp) as usize, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Least-squares slope of `log y` against `log x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let k = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / k;
    let my = ly.iter().sum::<f64>() / k;
    let num: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let den: f64 = lx.iter().map(|a| (a - mx) * (a - mx)).sum();
    num / den
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Field;
    use crate::constructions::{grid_lines, plane_counterexample};

    #[test]
    fn g12_formatting() {
        assert_eq!(fmt_g12(64.0), "64");
        assert_eq!(fmt_g12(332.553755129), "332.553755129");
        assert_eq!(fmt_g12(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_g12(1e-7), "1e-07");
        assert_eq!(fmt_g12(1.5e15), "1.5e+15");
        assert_eq!(fmt_g12(-2.5), "-2.5");
    }

    #[test]
    fn grid_report() {
        let f = Field::prime(7).unwrap();
        let r = run_bound_report("grid", &grid_lines(&f, 4, 3).unwrap());
        assert_eq!((r.lines, r.joints), (48, 64));
        assert_eq!(r.s_n, 64.0);
        assert!((r.rhs - 48f64.powf(1.5)).abs() < 1e-9);
        assert!((r.ratio_n - 0.19245).abs() < 1e-4);
        assert!(r.hypothesis);
        assert!(r.csv_row().starts_with("grid,7,1,3,48,64,64,"));
    }

    #[test]
    fn empty_joint_set_has_zero_ratios() {
        let f = Field::prime(5).unwrap();
        let ls = LineSet::new(f, 3, Vec::new()).unwrap();
        let r = run_bound_report("empty", &ls);
        assert_eq!((r.ratio_n, r.ratio_r), (0.0, 0.0));
    }

    #[test]
    fn plane_ratio_increases() {
        let a = run_bound_report("plane", &plane_counterexample(3).unwrap());
        let b = run_bound_report("plane", &plane_counterexample(5).unwrap());
        assert!(b.ratio_r > a.ratio_r);
        assert!(!a.hypothesis);
    }

    #[test]
    fn slope_of_power_law() {
        let xs = [1.0, 2.0, 4.0, 8.0];
        let ys: Vec<f64> = xs.iter().map(|x: &f64| 3.0 * x.powf(0.5)).collect();
        assert!((loglog_slope(&xs, &ys) - 0.5).abs() < 1e-12);
    }
}
