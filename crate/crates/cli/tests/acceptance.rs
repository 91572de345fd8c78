//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails. Every check is recomputed here with
//! independent brute-force oracles.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use jointslab_core::algebra::{Elem, Field};
use jointslab_core::constructions::{
    attach_transversals, grid_lines, heisenberg_field, heisenberg_lines, heisenberg_poly,
    plane_counterexample, surface_points, TransversalMode,
};
use jointslab_core::geometry::{Line, LineSet, Point};
use jointslab_core::harness::io;
use jointslab_core::harness::run_bound_report;
use jointslab_core::interp::{vanish_at_points, vanish_on_lines, MultiplicitySpec};
use jointslab_core::joints::{find_joints, summarize, JointRecord};
use jointslab_core::poly::MultiPoly;
use jointslab_core::prune::{partition_identity_check, refine, Incidence, IndexSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Relative tolerance for floating-point comparisons.
const REL_TOL: f64 = 1e-9;
const SLOPE_RANGE: (f64, f64) = (0.35, 0.65);
const HEISENBERG_FACTOR: u64 = 4;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
    /// Time spent in the library under test.
    elapsed: Duration,
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1.0)
}

// ---------------------------------------------------------------- oracles

fn all_points(f: &Field, n: usize) -> Vec<Point> {
    let q = f.order();
    (0..q.pow(n as u32))
        .map(|mut c| {
            let mut v = vec![Elem::ZERO; n];
            for slot in v.iter_mut().rev() {
                *slot = f.elem(c % q).unwrap();
                c /= q;
            }
            Point(v)
        })
        .collect()
}

/// Points of a line by explicit parametrization.
fn line_points(f: &Field, base: &[Elem], dir: &[Elem]) -> Vec<Point> {
    f.elements()
        .map(|t| {
            Point(
                base.iter()
                    .zip(dir)
                    .map(|(&b, &d)| f.add(b, f.mul(t, d)))
                    .collect(),
            )
        })
        .collect()
}

fn det3(f: &Field, a: &[Elem], b: &[Elem], c: &[Elem]) -> Elem {
    let m = |x, y| f.mul(x, y);
    let t0 = m(a[0], f.sub(m(b[1], c[2]), m(b[2], c[1])));
    let t1 = m(a[1], f.sub(m(b[0], c[2]), m(b[2], c[0])));
    let t2 = m(a[2], f.sub(m(b[0], c[1]), m(b[1], c[0])));
    f.add(f.sub(t0, t1), t2)
}

/// Joints of a 3-dimensional configuration: every point with its incident
/// lines and the number of triples with nonzero determinant.
fn oracle_joints(ls: &LineSet) -> BTreeMap<Point, (Vec<usize>, u64)> {
    let f = ls.field();
    let mut through: BTreeMap<Point, Vec<usize>> = BTreeMap::new();
    for (i, l) in ls.lines().iter().enumerate() {
        for x in line_points(f, l.base().coords(), l.dir()) {
            through.entry(x).or_default().push(i);
        }
    }
    let mut out = BTreeMap::new();
    for (x, inc) in through {
        let d = |k: usize| ls.lines()[inc[k]].dir();
        let mut n = 0;
        for a in 0..inc.len() {
            for b in a + 1..inc.len() {
                for c in b + 1..inc.len() {
                    if !det3(f, d(a), d(b), d(c)).is_zero() {
                        n += 1;
                    }
                }
            }
        }
        if n > 0 {
            out.insert(x, (inc, n));
        }
    }
    out
}

fn binom_exact(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k as u128 {
        r = r * (n as u128 - i) / (i + 1);
    }
    r
}

/// `H^alpha f (x)` from the defining formula.
fn hasse_oracle(f: &Field, poly: &MultiPoly, alpha: &[u32], x: &Point) -> Elem {
    let mut acc = f.zero();
    for (e, c) in poly.terms() {
        if e.iter().zip(alpha).any(|(a, b)| a < b) {
            continue;
        }
        let mut term = c;
        for i in 0..e.len() {
            let b = (binom_exact(e[i] as u64, alpha[i] as u64) % f.p() as u128) as u64;
            term = f.mul(term, f.from_u64(b));
            term = f.mul(term, f.pow(x.0[i], (e[i] - alpha[i]) as u64));
        }
        acc = f.add(acc, term);
    }
    acc
}

fn multi_indices(n: usize, max_total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for v in &out {
            let used: u32 = v.iter().sum();
            for k in 0..=max_total - used {
                let mut w = v.clone();
                w.push(k);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Coefficients of `f(base + t dir)` by expanding each monomial.
fn restriction_oracle(f: &Field, poly: &MultiPoly, base: &[Elem], dir: &[Elem]) -> Vec<Elem> {
    let mul = |a: &[Elem], b: &[Elem]| {
        let mut out = vec![f.zero(); a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        out
    };
    let mut total = vec![f.zero()];
    for (e, c) in poly.terms() {
        let mut m = vec![c];
        for i in 0..e.len() {
            for _ in 0..e[i] {
                m = mul(&m, &[base[i], dir[i]]);
            }
        }
        if m.len() > total.len() {
            total.resize(m.len(), f.zero());
        }
        for (k, v) in m.into_iter().enumerate() {
            total[k] = f.add(total[k], v);
        }
    }
    total
}

fn random_poly(
    f: &Field,
    rng: &mut impl Rng,
    n: usize,
    max_terms: usize,
    max_exp: u32,
) -> MultiPoly {
    let k = rng.gen_range(1..=max_terms);
    let terms: Vec<(Vec<u32>, Elem)> = (0..k)
        .map(|_| {
            let e = (0..n).map(|_| rng.gen_range(0..=max_exp)).collect();
            (e, f.elem(rng.gen_range(1..f.order())).unwrap())
        })
        .collect();
    MultiPoly::from_terms(f, n, terms).unwrap()
}

fn random_line(f: &Field, rng: &mut impl Rng, n: usize) -> Line {
    loop {
        let base: Vec<Elem> = (0..n)
            .map(|_| f.elem(rng.gen_range(0..f.order())).unwrap())
            .collect();
        let dir: Vec<Elem> = (0..n)
            .map(|_| f.elem(rng.gen_range(0..f.order())).unwrap())
            .collect();
        if dir.iter().any(|c| !c.is_zero()) {
            return Line::new(f, Point(base), dir).unwrap();
        }
    }
}

fn random_lineset(f: &Field, rng: &mut impl Rng, max: usize) -> LineSet {
    let want = rng.gen_range(1..=max);
    let mut lines = Vec::new();
    let mut seen = HashSet::new();
    while lines.len() < want {
        let l = random_line(f, rng, 3);
        if seen.insert(l.clone()) {
            lines.push(l);
        }
    }
    LineSet::new(f.clone(), 3, lines).unwrap()
}

// ---------------------------------------------------------------- criteria

fn grid_exactness() -> Outcome {
    let f = Field::prime(7).unwrap();
    let t = Instant::now();
    let ls = grid_lines(&f, 4, 3).unwrap();
    let s = summarize(&ls);
    let elapsed = t.elapsed();
    let exact_s_n = s.exact.as_ref().and_then(|e| e.s_n.as_integer());
    let oracle = oracle_joints(&ls);
    let lib: BTreeMap<Point, (Vec<usize>, u64)> = s
        .joints
        .iter()
        .map(|j| (j.point.clone(), (j.incident.clone(), j.multiplicity)))
        .collect();
    let pass = ls.len() == 48
        && s.joint_count() == 64
        && s.joints.iter().all(|j| j.r == 3 && j.multiplicity == 1)
        && exact_s_n == Some(64)
        && lib == oracle
        && elapsed < Duration::from_secs(1);
    Outcome {
        pass,
        detail: format!(
            "L={} J={} S_N={:?} oracle J={} (limit 1s)",
            ls.len(),
            s.joint_count(),
            exact_s_n,
            oracle.len()
        ),
        elapsed,
    }
}

fn joint_oracle_equivalence() -> Outcome {
    let mut elapsed = Duration::ZERO;
    let mut checked = 0;
    let mut mismatches = 0;
    for p in [2u64, 3] {
        let f = Field::prime(p).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p * 1000 + 2);
        for _ in 0..30 {
            let ls = random_lineset(&f, &mut rng, 8);
            let t = Instant::now();
            let joints = find_joints(&ls);
            elapsed += t.elapsed();
            let lib: BTreeMap<Point, (Vec<usize>, u64)> = joints
                .into_iter()
                .map(|j| {
                    if j.r != j.incident.len() {
                        mismatches += 1;
                    }
                    (j.point, (j.incident, j.multiplicity))
                })
                .collect();
            // exhaustive: every point of k^3, lines through it by membership
            let mut exhaustive = BTreeMap::new();
            for x in all_points(&f, 3) {
                let inc: Vec<usize> = (0..ls.len())
                    .filter(|&i| {
                        let l = &ls.lines()[i];
                        line_points(&f, l.base().coords(), l.dir()).contains(&x)
                    })
                    .collect();
                let mut n = 0;
                for a in 0..inc.len() {
                    for b in a + 1..inc.len() {
                        for c in b + 1..inc.len() {
                            let d = |k: usize| ls.lines()[inc[k]].dir();
                            if !det3(&f, d(a), d(b), d(c)).is_zero() {
                                n += 1;
                            }
                        }
                    }
                }
                if n > 0 {
                    exhaustive.insert(x, (inc, n));
                }
            }
            if lib != exhaustive {
                mismatches += 1;
            }
            checked += 1;
        }
    }
    Outcome {
        pass: mismatches == 0 && elapsed < Duration::from_secs(30),
        detail: format!(
            "{checked} random sets over GF(2), GF(3); {mismatches} mismatches (limit 30s)"
        ),
        elapsed,
    }
}

fn lemma1_campaign() -> Outcome {
    let f = Field::prime(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let mut elapsed = Duration::ZERO;
    let mut failures = Vec::new();
    let mut max_degree = 0;
    for trial in 0..50 {
        let k = rng.gen_range(1..=12);
        let mut seen = BTreeSet::new();
        let mut points = Vec::new();
        while points.len() < k {
            let x = Point(
                (0..3)
                    .map(|_| f.elem(rng.gen_range(0..101)).unwrap())
                    .collect(),
            );
            if seen.insert(x.clone()) {
                points.push((x, rng.gen_range(3u32..=5)));
            }
        }
        let spec = MultiplicitySpec::new(3, points.clone()).unwrap();
        let t = Instant::now();
        let res = vanish_at_points(&f, &spec);
        elapsed += t.elapsed();
        let Ok(res) = res else {
            failures.push(trial);
            continue;
        };
        let d = res.poly.degree();
        let cubes: u128 = points.iter().map(|(_, m)| (*m as u128).pow(3)).sum();
        // d <= 2 (sum m^3)^(1/3)  <=>  d^3 <= 8 sum m^3
        let within = d.is_some_and(|d| (d as u128).pow(3) <= 8 * cubes);
        let orders_ok = points.iter().all(|(x, m)| {
            multi_indices(3, m - 1)
                .iter()
                .all(|a| hasse_oracle(&f, &res.poly, a, x).is_zero())
        });
        max_degree = max_degree.max(d.unwrap_or(0));
        if !(within && orders_ok && d == Some(res.degree)) {
            failures.push(trial);
        }
    }
    Outcome {
        pass: failures.is_empty() && elapsed < Duration::from_secs(120),
        detail: format!("50 instances over GF(101), max degree {max_degree}, failing trials {failures:?} (limit 120s)"),
        elapsed,
    }
}

fn lemma2_campaign() -> Outcome {
    let f = Field::prime(101).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    let mut elapsed = Duration::ZERO;
    let mut failures = Vec::new();
    for trial in 0..30 {
        let ls = random_lineset(&f, &mut rng, 8);
        let t = Instant::now();
        let res = vanish_on_lines(&ls);
        elapsed += t.elapsed();
        let Ok(res) = res else {
            failures.push(trial);
            continue;
        };
        let bound = (0u32..).find(|&c| c * c >= 9 * ls.len() as u32).unwrap();
        let on_lines = ls.lines().iter().all(|l| {
            restriction_oracle(&f, &res.poly, l.base().coords(), l.dir())
                .iter()
                .all(|c| c.is_zero())
        });
        if res.poly.is_zero() || res.degree > bound || !on_lines {
            failures.push(trial);
        }
    }
    Outcome {
        pass: failures.is_empty() && elapsed < Duration::from_secs(60),
        detail: format!("30 instances over GF(101), failing trials {failures:?} (limit 60s)"),
        elapsed,
    }
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let k = xs.len() as f64;
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let (mx, my) = (lx.iter().sum::<f64>() / k, ly.iter().sum::<f64>() / k);
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

fn plane_growth() -> Outcome {
    let primes = [3u64, 5, 7, 11, 13];
    let mut elapsed = Duration::ZERO;
    let mut ratios = Vec::new();
    let mut agree = true;
    for &p in &primes {
        let t = Instant::now();
        let ls = plane_counterexample(p).unwrap();
        let report = run_bound_report("plane", &ls);
        elapsed += t.elapsed();
        let oracle = oracle_joints(&ls);
        let l = (2 * p * p + p) as f64;
        let s_r: f64 = oracle
            .values()
            .map(|(inc, _)| (inc.len() as f64).powf(1.5))
            .sum();
        let ratio = s_r / l.powf(1.5);
        agree &= ls.len() as u64 == 2 * p * p + p
            && close(report.s_r, s_r)
            && close(report.ratio_r, ratio);
        ratios.push(ratio);
    }
    let increasing = ratios.windows(2).all(|w| w[1] > w[0]);
    let xs: Vec<f64> = primes.iter().map(|&p| p as f64).collect();
    let k = slope(&xs, &ratios);
    let in_range = (SLOPE_RANGE.0..=SLOPE_RANGE.1).contains(&k);
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.4}")).collect();
    Outcome {
        pass: agree && increasing && in_range && elapsed < Duration::from_secs(60),
        detail: format!(
            "ratio_r=[{}] increasing={increasing} log-log slope={k:.4} required [{}, {}] oracle agreement={agree} (limit 60s)",
            shown.join(", "),
            SLOPE_RANGE.0,
            SLOPE_RANGE.1
        ),
        elapsed,
    }
}

fn heisenberg_desk_check() -> Outcome {
    let f = heisenberg_field(2).unwrap();
    let t = Instant::now();
    let ls = heisenberg_lines(2).unwrap();
    let h = heisenberg_poly(&f);
    let surface = surface_points(&f, &h).unwrap();
    let greedy = attach_transversals(&f, &surface, &h, TransversalMode::GreedyCover).unwrap();
    let elapsed = t.elapsed();

    let eval = |x: &[Elem]| {
        let a = f.sub(x[0], f.pow(x[0], 2));
        let b = f.sub(f.mul(f.pow(x[1], 2), x[2]), f.mul(x[1], f.pow(x[2], 2)));
        f.add(a, b)
    };
    let pts = all_points(&f, 3);
    let oracle_points: Vec<&Point> = pts.iter().filter(|x| eval(&x.0).is_zero()).collect();
    let mut oracle_lines = HashSet::new();
    for base in &pts {
        for dir in &pts[1..] {
            if line_points(&f, &base.0, &dir.0)
                .iter()
                .all(|x| eval(&x.0).is_zero())
            {
                oracle_lines.insert(Line::new(&f, base.clone(), dir.0.clone()).unwrap());
            }
        }
    }
    let lib_lines: HashSet<Line> = ls.lines().iter().cloned().collect();
    let covered: HashSet<Point> = greedy.iter().flat_map(|l| l.points(&f)).collect();
    let uncovered = surface.iter().filter(|x| !covered.contains(x)).count();
    let within = |count: u64, target: u64| {
        count * HEISENBERG_FACTOR >= target && count <= target * HEISENBERG_FACTOR
    };
    let pass = lib_lines == oracle_lines
        && surface.len() == oracle_points.len()
        && within(ls.len() as u64, 16)
        && within(surface.len() as u64, 32)
        && uncovered == 0
        && elapsed < Duration::from_secs(60);
    Outcome {
        pass,
        detail: format!(
            "lines={} (oracle {}, p^4=16) points={} (oracle {}, p^5=32) greedy lines={} uncovered={uncovered} (limit 60s)",
            ls.len(),
            oracle_lines.len(),
            surface.len(),
            oracle_points.len(),
            greedy.len()
        ),
        elapsed,
    }
}

fn hypothesis_checker() -> Outcome {
    let f = Field::prime(7).unwrap();
    let t = Instant::now();
    let grid = grid_lines(&f, 4, 3).unwrap();
    let plane = plane_counterexample(3).unwrap();
    let (g, pl) = (
        summarize(&grid).hypothesis_holds,
        summarize(&plane).hypothesis_holds,
    );
    let elapsed = t.elapsed();
    let full = |ls: &LineSet| {
        oracle_joints(ls)
            .values()
            .all(|(inc, n)| *n as u128 == binom_exact(inc.len() as u64, 3))
    };
    let (og, op) = (full(&grid), full(&plane));
    Outcome {
        pass: g && !pl && g == og && pl == op,
        detail: format!("grid={g} (oracle {og}) plane={pl} (oracle {op})"),
        elapsed,
    }
}

fn oracle_incidence(
    incidents: &[Vec<usize>],
    lines: &IndexSet,
    joints: &IndexSet,
    w: &[u32],
) -> i128 {
    let mut total = 0i128;
    for (x, inc) in incidents.iter().enumerate() {
        if joints.contains(&x) {
            total += inc.iter().filter(|l| lines.contains(l)).count() as i128 * w[x] as i128;
        }
    }
    total
}

fn partition_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = 0;
    let mut elapsed = Duration::ZERO;
    let mut nonempty = 0;
    for _ in 0..100 {
        let lines = rng.gen_range(2..12);
        let joints = rng.gen_range(0..15);
        let incidents: Vec<Vec<usize>> = (0..joints)
            .map(|_| {
                let mut s: Vec<usize> = (0..lines).filter(|_| rng.gen_bool(0.4)).collect();
                if s.is_empty() {
                    s.push(rng.gen_range(0..lines));
                }
                s
            })
            .collect();
        let w: Vec<u32> = (0..joints).map(|_| rng.gen_range(0..6)).collect();
        let (d, m) = (rng.gen_range(1..4u32), rng.gen_range(1..9u64));
        let records: Vec<JointRecord> = incidents
            .iter()
            .map(|inc| JointRecord {
                point: Point::origin(3),
                incident: inc.clone(),
                r: inc.len(),
                multiplicity: 1,
            })
            .collect();
        let t = Instant::now();
        let inc = Incidence::from_joints(lines, &records);
        let (all_l, all_j) = (inc.all_lines(), inc.all_joints());
        let r = refine(&inc, &all_l, &all_j, &w, d, m);
        let lib_ok = partition_identity_check(&inc, &all_l, &all_j, &r, &w);
        elapsed += t.elapsed();
        let diff = |a: &IndexSet, b: &IndexSet| a.difference(b).copied().collect::<IndexSet>();
        let i = |a: &IndexSet, b: &IndexSet| oracle_incidence(&incidents, a, b, &w);
        let lhs = i(&r.lines_i_prime, &r.joints_i_prime);
        let rhs = i(&all_l, &all_j)
            - i(&diff(&all_l, &r.lines_i), &all_j)
            - i(&r.lines_i, &diff(&all_j, &r.joints_i))
            - i(&diff(&r.lines_i, &r.lines_i_prime), &r.joints_i)
            - i(&r.lines_i_prime, &diff(&r.joints_i, &r.joints_i_prime));
        let terms_ok = r.terms.refined as i128 == lhs && r.terms.total as i128 == i(&all_l, &all_j);
        if lhs > 0 {
            nonempty += 1;
        }
        if !(lib_ok && lhs == rhs && terms_ok) {
            failures += 1;
        }
    }
    Outcome {
        pass: failures == 0,
        detail: format!(
            "100 random weight tables, {nonempty} with nonempty refinement, {failures} failures"
        ),
        elapsed,
    }
}

fn hasse_suite() -> Outcome {
    let mut failures = 0;
    let mut elapsed = Duration::ZERO;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for p in [2u64, 5] {
        let f = Field::prime(p).unwrap();
        for _ in 0..100 {
            let g = random_poly(&f, &mut rng, 3, 5, 4);
            let h = random_poly(&f, &mut rng, 3, 5, 4);
            let alpha: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            let beta: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
            let t = Instant::now();
            // Leibniz: H^a(gh) = sum_{b <= a} H^b g H^(a-b) h
            let lhs = g.mul(&f, &h).hasse_derivative(&f, &alpha);
            let mut rhs = MultiPoly::zero(3);
            for b in multi_indices(3, alpha.iter().sum()) {
                if b.iter().zip(&alpha).any(|(x, y)| x > y) {
                    continue;
                }
                let rest: Vec<u32> = alpha.iter().zip(&b).map(|(x, y)| x - y).collect();
                rhs = rhs.add(
                    &f,
                    &g.hasse_derivative(&f, &b)
                        .mul(&f, &h.hasse_derivative(&f, &rest)),
                );
            }
            // composition: H^a H^b g = prod C(a_i + b_i, a_i) H^(a+b) g
            let comp = g.hasse_derivative(&f, &beta).hasse_derivative(&f, &alpha);
            let sum: Vec<u32> = alpha.iter().zip(&beta).map(|(x, y)| x + y).collect();
            let c: u128 = (0..3)
                .map(|i| binom_exact(sum[i] as u64, alpha[i] as u64))
                .product();
            let expect = g
                .hasse_derivative(&f, &sum)
                .scale(&f, f.from_u64((c % p as u128) as u64));
            elapsed += t.elapsed();
            // pointwise check of the library derivative against the formula
            let x = Point(
                (0..3)
                    .map(|_| f.elem(rng.gen_range(0..p)).unwrap())
                    .collect(),
            );
            let pointwise =
                g.hasse_derivative(&f, &alpha).evaluate(&f, &x) == hasse_oracle(&f, &g, &alpha, &x);
            if lhs != rhs || comp != expect || !pointwise {
                failures += 1;
            }
        }
    }
    for p in [3u64, 5] {
        let f = Field::prime(p).unwrap();
        for _ in 0..50 {
            let g = random_poly(&f, &mut rng, 3, 4, 3);
            let t = Instant::now();
            let root = g.pow(&f, p as u32).pth_root(&f);
            elapsed += t.elapsed();
            if root.ok().as_ref() != Some(&g) {
                failures += 1;
            }
        }
    }
    Outcome {
        pass: failures == 0,
        detail: format!("Leibniz and composition on 200 pairs over GF(2), GF(5); p-th roots on 100 over GF(3), GF(5); {failures} failures"),
        elapsed,
    }
}

// ---------------------------------------------------------------- CLI determinism

fn write_inputs(dir: &Path) {
    let f101 = Field::prime(101).unwrap();
    let spec = MultiplicitySpec::new(
        3,
        vec![
            (Point::from_ints(&f101, &[1, 2, 3]), 3),
            (Point::from_ints(&f101, &[0, 5, 7]), 4),
            (Point::from_ints(&f101, &[9, 9, 1]), 3),
        ],
    )
    .unwrap();
    std::fs::write(
        dir.join("spec.json"),
        io::to_json(&io::mspec_to_wire(&f101, &spec)).unwrap(),
    )
    .unwrap();

    let f7 = Field::prime(7).unwrap();
    let coord = |var: usize, c: i64| {
        let mut coeffs = vec![f7.zero(); 3];
        coeffs[var] = f7.one();
        MultiPoly::linear_form(f7.from_i64(-c), &coeffs)
    };
    let factors: Vec<(MultiPoly, u32)> = (0..3)
        .flat_map(|v| (0..4).map(move |c| (v, c)))
        .map(|(v, c)| (coord(v, c), 1))
        .collect();
    std::fs::write(
        dir.join("factors.json"),
        io::to_json(&io::factors_to_wire(&f7, &factors)).unwrap(),
    )
    .unwrap();

    let product = |var: usize, values: &[i64]| {
        values
            .iter()
            .fold(MultiPoly::constant(3, f7.one()), |acc, &c| {
                acc.mul(&f7, &coord(var, c))
            })
    };
    let s1 = product(0, &[0, 1]);
    let s2 = product(1, &[0, 1, 2]);
    std::fs::write(
        dir.join("s1.json"),
        io::to_json(&io::poly_to_wire(&f7, &s1)).unwrap(),
    )
    .unwrap();
    std::fs::write(
        dir.join("s2.json"),
        io::to_json(&io::poly_to_wire(&f7, &s2)).unwrap(),
    )
    .unwrap();
    let mut lines = Vec::new();
    for a in 0..2 {
        for b in 0..3 {
            lines.push(Line::from_ints(&f7, &[a, b, 0], &[0, 0, 1]).unwrap());
        }
    }
    let kl = LineSet::new(f7, 3, lines).unwrap();
    std::fs::write(
        dir.join("kollar_lines.json"),
        io::to_json(&io::lineset_to_wire(&kl)).unwrap(),
    )
    .unwrap();
}

/// Runs every command with outputs in `out`; returns the failed invocations.
fn run_all(exe: &Path, inputs: &Path, out: &Path) -> Vec<String> {
    let i = |name: &str| inputs.join(name).to_string_lossy().into_owned();
    let o = |name: &str| out.join(name).to_string_lossy().into_owned();
    let runs: Vec<Vec<String>> = vec![
        vec![
            "gen".into(),
            "grid".into(),
            "--m".into(),
            "4".into(),
            "--p".into(),
            "7".into(),
            "-o".into(),
            o("grid.json"),
        ],
        vec![
            "gen".into(),
            "plane".into(),
            "--p".into(),
            "5".into(),
            "-o".into(),
            o("plane.json"),
        ],
        vec![
            "gen".into(),
            "heisenberg".into(),
            "--p".into(),
            "2".into(),
            "--transversals".into(),
            "greedy".into(),
            "-o".into(),
            o("heis.json"),
        ],
        vec![
            "gen".into(),
            "heisenberg".into(),
            "--p".into(),
            "2".into(),
            "--transversals".into(),
            "per-point".into(),
            "-o".into(),
            o("heis_pp.json"),
        ],
        vec![
            "gen".into(),
            "random".into(),
            "--count".into(),
            "12".into(),
            "--p".into(),
            "5".into(),
            "--seed".into(),
            "77".into(),
            "-o".into(),
            o("random.json"),
        ],
        vec![
            "joints".into(),
            o("grid.json"),
            "--report".into(),
            o("grid.csv"),
            "-o".into(),
            o("grid_joints.json"),
        ],
        vec![
            "joints".into(),
            o("plane.json"),
            "--report".into(),
            o("plane.md"),
            "--markdown".into(),
            "-o".into(),
            o("plane_joints.json"),
        ],
        vec![
            "joints".into(),
            o("heis.json"),
            "--report".into(),
            o("heis.csv"),
            "-o".into(),
            o("heis_joints.json"),
        ],
        vec![
            "interp".into(),
            "points".into(),
            i("spec.json"),
            "-o".into(),
            o("interp_points.json"),
        ],
        vec![
            "interp".into(),
            "lines".into(),
            o("random.json"),
            "-o".into(),
            o("interp_lines.json"),
        ],
        vec![
            "prune".into(),
            o("grid.json"),
            "--factors".into(),
            i("factors.json"),
            "--M".into(),
            "3".into(),
            "-o".into(),
            o("prune.json"),
        ],
        vec![
            "verify".into(),
            "lemma1".into(),
            "--trials".into(),
            "4".into(),
            "--seed".into(),
            "5".into(),
            "-o".into(),
            o("lemma1.csv"),
        ],
        vec![
            "verify".into(),
            "lemma2".into(),
            "--trials".into(),
            "10".into(),
            "--seed".into(),
            "5".into(),
            "-o".into(),
            o("lemma2.csv"),
        ],
        vec![
            "kollar".into(),
            "--surfaces".into(),
            i("s1.json"),
            i("s2.json"),
            "--lines".into(),
            i("kollar_lines.json"),
            "--M".into(),
            "0".into(),
            "-o".into(),
            o("kollar.json"),
        ],
    ];
    let mut failed = Vec::new();
    for args in runs {
        let status = Command::new(exe).args(&args).output().expect("spawn cli");
        if !status.status.success() {
            failed.push(format!("{} {}", args[0], args[1]));
        }
    }
    failed
}

fn dir_contents(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).unwrap(),
            )
        })
        .collect()
}

fn cli_determinism() -> Outcome {
    let exe = PathBuf::from(env!("CARGO_BIN_EXE_jointslab"));
    let tmp = tempfile::tempdir().unwrap();
    let inputs = tmp.path().join("inputs");
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for d in [&inputs, &a, &b] {
        std::fs::create_dir(d).unwrap();
    }
    write_inputs(&inputs);
    let t = Instant::now();
    let mut failed = run_all(&exe, &inputs, &a);
    failed.extend(run_all(&exe, &inputs, &b));
    let elapsed = t.elapsed();
    let (ca, cb) = (dir_contents(&a), dir_contents(&b));
    let differing: Vec<&String> = ca.keys().filter(|k| ca.get(*k) != cb.get(*k)).collect();
    Outcome {
        pass: failed.is_empty() && differing.is_empty() && ca.len() == cb.len() && ca.len() >= 19,
        detail: format!(
            "{} output files compared byte for byte, differing {differing:?}, failed runs {failed:?}",
            ca.len()
        ),
        elapsed,
    }
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("grid exactness", grid_exactness),
        (
            "joint detection oracle equivalence",
            joint_oracle_equivalence,
        ),
        ("point interpolation campaign", lemma1_campaign),
        ("line interpolation campaign", lemma2_campaign),
        ("plane counterexample growth", plane_growth),
        ("Heisenberg desk check", heisenberg_desk_check),
        ("full-joint hypothesis checker", hypothesis_checker),
        ("partition identity", partition_identity),
        ("Hasse property suite", hasse_suite),
        ("CLI determinism", cli_determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.into_iter().enumerate() {
        let out = run();
        if !out.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {} {name}: {} [{:.3}s]",
            k + 1,
            if out.pass { "PASS" } else { "FAIL" },
            out.detail,
            out.elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
