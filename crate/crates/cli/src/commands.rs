use std::collections::BTreeMap;
use std::path::Path;

use anyhow::anyhow;
use jointslab_core::algebra::Field;
use jointslab_core::constructions::{
    attach_transversals, grid_lines, heisenberg_lines, heisenberg_poly, plane_counterexample,
    random_lines, surface_points, TransversalMode,
};
use jointslab_core::geometry::LineSet;
use jointslab_core::harness::io::{self, Provenance};
use jointslab_core::harness::report::{self, BoundReport};
use jointslab_core::harness::{check_kollar, verify_lemma_campaign, CampaignParams, Lemma};
use jointslab_core::interp::{vanish_at_points, vanish_on_lines, InterpResult};
use jointslab_core::joints;
use jointslab_core::prune::{prune_step, AllocationPolicy, FactorData};
use jointslab_core::Error;
use serde_json::{json, Value};

use crate::{Campaign, Command, Generator, InterpKind, Transversals};

pub struct CliError {
    pub code: u8,
    pub error: anyhow::Error,
}

impl CliError {
    fn input(error: anyhow::Error) -> CliError {
        CliError { code: 2, error }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::NotContained { .. } | Error::Allocation { .. } | Error::Solver(_) => 1,
            _ => 2,
        };
        CliError {
            code,
            error: e.into(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::input(e.into())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> CliError {
        CliError::input(e.into())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn required<T>(v: Option<T>, flag: &str, kind: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::input(anyhow!("{kind} needs --{flag}")))
}

fn emit(output: Option<&Path>, text: &str) -> CliResult<()> {
    match output {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn json_text(v: &Value) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v)?;
    s.push('\n');
    Ok(s)
}

fn same_field(a: &Field, b: &Field, what: &str) -> CliResult<()> {
    if a.spec() != b.spec() {
        return Err(CliError::input(anyhow!(
            "{what} is over {b}, but the line set is over {a}"
        )));
    }
    Ok(())
}

fn label(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned())
}

pub fn run(command: Command) -> CliResult<bool> {
    match command {
        Command::Gen {
            kind,
            m,
            n,
            p,
            q,
            count,
            seed,
            transversals,
            output,
        } => gen(
            kind,
            m,
            n,
            p,
            q,
            count,
            seed,
            transversals,
            output.as_deref(),
        ),
        Command::Joints {
            file,
            report,
            markdown,
            output,
        } => joints_cmd(&file, report.as_deref(), markdown, output.as_deref()),
        Command::Interp { kind, file, output } => interp(kind, &file, output.as_deref()),
        Command::Prune {
            file,
            factors,
            big_m,
            allow_shortfall,
            output,
        } => prune(&file, &factors, big_m, allow_shortfall, output.as_deref()),
        Command::Verify {
            which,
            trials,
            seed,
            output,
        } => verify(which, trials, seed, output.as_deref()),
        Command::Kollar {
            surfaces,
            lines,
            big_m,
            output,
        } => kollar(&surfaces, &lines, big_m, output.as_deref()),
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    kind: Generator,
    m: Option<u64>,
    n: usize,
    p: Option<u64>,
    q: u32,
    count: Option<usize>,
    seed: u64,
    transversals: Transversals,
    output: Option<&Path>,
) -> CliResult<bool> {
    let mut params: BTreeMap<String, Value> = BTreeMap::new();
    let mut used_seed = None;
    let (name, ls): (&str, LineSet) = match kind {
        Generator::Grid => {
            let m = required(m, "m", "grid")?;
            let p = required(p, "p", "grid")?;
            params.insert("m".into(), json!(m));
            params.insert("n".into(), json!(n));
            params.insert("p".into(), json!(p));
            ("grid", grid_lines(&Field::prime(p)?, m, n)?)
        }
        Generator::Plane => {
            let p = required(p, "p", "plane")?;
            params.insert("p".into(), json!(p));
            ("plane", plane_counterexample(p)?)
        }
        Generator::Heisenberg => {
            let p = required(p, "p", "heisenberg")?;
            params.insert("p".into(), json!(p));
            let surface = heisenberg_lines(p)?;
            let mode = match transversals {
                Transversals::None => None,
                Transversals::PerPoint => Some(TransversalMode::PerPoint),
                Transversals::Greedy => Some(TransversalMode::GreedyCover),
            };
            params.insert(
                "transversals".into(),
                json!(match transversals {
                    Transversals::None => "none",
                    Transversals::PerPoint => "per-point",
                    Transversals::Greedy => "greedy",
                }),
            );
            let ls = match mode {
                None => surface,
                Some(mode) => {
                    let field = surface.field().clone();
                    let f = heisenberg_poly(&field);
                    let points = surface_points(&field, &f)?;
                    let extra = attach_transversals(&field, &points, &f, mode)?;
                    params.insert("surface_lines".into(), json!(surface.len()));
                    params.insert("surface_points".into(), json!(points.len()));
                    params.insert("added_lines".into(), json!(extra.len()));
                    surface.extended(extra).sorted()
                }
            };
            ("heisenberg", ls)
        }
        Generator::Random => {
            let count = required(count, "count", "random")?;
            let p = required(p, "p", "random")?;
            params.insert("count".into(), json!(count));
            params.insert("n".into(), json!(n));
            params.insert("p".into(), json!(p));
            params.insert("q".into(), json!(q));
            used_seed = Some(seed);
            ("random", random_lines(&Field::new(p, q)?, n, count, seed)?)
        }
    };
    emit(output, &io::to_json(&io::lineset_to_wire(&ls))?)?;
    if let Some(path) = output {
        let prov = Provenance {
            generator: name.into(),
            params,
            seed: used_seed,
            line_count: ls.len(),
        };
        std::fs::write(io::provenance_path(path), io::to_json(&prov)?)?;
        eprintln!("{name}: {} lines written to {}", ls.len(), path.display());
    }
    Ok(true)
}

fn joints_cmd(
    file: &Path,
    report_path: Option<&Path>,
    markdown: bool,
    output: Option<&Path>,
) -> CliResult<bool> {
    let ls = io::read_lineset(file)?;
    let field = ls.field();
    let summary = joints::summarize(&ls);
    let records: Vec<Value> = summary
        .joints
        .iter()
        .map(|j| {
            json!({
                "point": io::point_to_wire(field, &j.point),
                "incident": j.incident,
                "r": j.r,
                "N": j.multiplicity,
            })
        })
        .collect();
    let exact = summary
        .exact
        .as_ref()
        .map(|e| json!({"S_N": e.s_n.to_string(), "S_r": e.s_r.to_string()}));
    let doc = json!({
        "field": field.spec(),
        "n": ls.n(),
        "line_count": summary.line_count,
        "joint_count": summary.joint_count(),
        "S_N": summary.s_n,
        "S_r": summary.s_r,
        "exact": exact,
        "hypothesis_holds": summary.hypothesis_holds,
        "joints": records,
    });
    let bound = BoundReport::from_summary(label(file), &ls, &summary);
    let table = if markdown {
        report::to_markdown(std::slice::from_ref(&bound))
    } else {
        report::to_csv(std::slice::from_ref(&bound))
    };
    match (report_path, markdown, output) {
        (Some(path), _, _) => {
            std::fs::write(path, &table)?;
            emit(output, &json_text(&doc)?)?;
        }
        (None, true, None) => emit(None, &table)?,
        (None, _, _) => emit(output, &json_text(&doc)?)?,
    }
    Ok(true)
}

fn interp_doc(field: &Field, res: &InterpResult) -> Value {
    json!({
        "poly": io::poly_to_wire(field, &res.poly),
        "degree": res.degree,
        "bounds": res.bounds,
        "constraint_rows": res.constraint_rows,
        "monomial_cols": res.monomial_cols,
        "verified": res.verified,
        "pass": res.passes(),
    })
}

fn interp(kind: InterpKind, file: &Path, output: Option<&Path>) -> CliResult<bool> {
    let (field, res) = match kind {
        InterpKind::Points => {
            let (field, spec) = io::read_mspec(file)?;
            let res = vanish_at_points(&field, &spec)?;
            (field, res)
        }
        InterpKind::Lines => {
            let ls = io::read_lineset(file)?;
            let res = vanish_on_lines(&ls)?;
            (ls.field().clone(), res)
        }
    };
    emit(output, &json_text(&interp_doc(&field, &res))?)?;
    Ok(res.passes())
}

fn prune(
    file: &Path,
    factors: &Path,
    big_m: Option<u64>,
    allow_shortfall: bool,
    output: Option<&Path>,
) -> CliResult<bool> {
    let ls = io::read_lineset(file)?;
    let (ffield, list) = io::read_factors(factors)?;
    same_field(ls.field(), &ffield, "the factor list")?;
    if let Some((f, _)) = list.iter().find(|(f, _)| f.n() != ls.n()) {
        return Err(CliError::input(anyhow!(
            "factor has {} variables, the line set lives in dimension {}",
            f.n(),
            ls.n()
        )));
    }
    let field = ls.field();
    let n = ls.n();
    let m = big_m.unwrap_or(3 * n as u64);
    let joints = joints::find_joints(&ls);
    let data = FactorData::new(field, &list, &joints)?;
    let policy = if allow_shortfall {
        AllocationPolicy::Truncate
    } else {
        AllocationPolicy::Strict
    };
    let step = prune_step(field, ls.len(), &joints, &data, n, m, policy)?;
    let r = &step.refinement;
    let doc = json!({
        "M": m,
        "joint_count": joints.len(),
        "factor_count": data.factors.len(),
        "degrees": data.factors.iter().map(|f| f.degree).collect::<Vec<_>>(),
        "selected": step.selected,
        "factor_incidences": step.factor_incidences,
        "gradient": step.gradient,
        "sizes": {
            "L": ls.len(),
            "J": joints.len(),
            "L_i": r.lines_i.len(),
            "J_i": r.joints_i.len(),
            "L_i_prime": r.lines_i_prime.len(),
            "J_i_prime": r.joints_i_prime.len(),
        },
        "refinement": r,
        "weights": step.weights,
        "identity_holds": step.identity_holds,
    });
    emit(output, &json_text(&doc)?)?;
    Ok(step.identity_holds)
}

fn verify(
    which: Campaign,
    trials: Option<usize>,
    seed: u64,
    output: Option<&Path>,
) -> CliResult<bool> {
    let (lemma, default_trials) = match which {
        Campaign::Lemma1 => (Lemma::Lemma1, 50),
        Campaign::Lemma2 => (Lemma::Lemma2, 30),
    };
    let report = verify_lemma_campaign(
        lemma,
        trials.unwrap_or(default_trials),
        seed,
        &CampaignParams::default(),
    )?;
    emit(output, &report.to_csv())?;
    let failed = report.rows.iter().filter(|r| !r.passed()).count();
    eprintln!("{} trials, {failed} failed", report.rows.len());
    Ok(failed == 0)
}

fn kollar(
    surfaces: &[std::path::PathBuf],
    lines: &Path,
    big_m: Option<u64>,
    output: Option<&Path>,
) -> CliResult<bool> {
    let ls = io::read_lineset(lines)?;
    let mut polys = Vec::new();
    for path in surfaces {
        let (f, poly) = io::read_poly(path)?;
        same_field(ls.field(), &f, &format!("{}", path.display()))?;
        polys.push(poly);
    }
    let m = big_m.unwrap_or(3 * ls.n() as u64);
    let check = check_kollar(ls.field(), &polys, &ls, m)?;
    let counted: Vec<Value> = check
        .counted
        .iter()
        .map(|(x, r)| json!({"point": io::point_to_wire(ls.field(), x), "r": r}))
        .collect();
    let mut doc = serde_json::to_value(&check)?;
    doc["points"] = Value::Array(counted);
    emit(output, &json_text(&doc)?)?;
    Ok(check.points_verified)
}
