//! JSON wire formats. Field elements are coefficient arrays, low degree
//! first, of length `q`.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{Elem, Field, FieldSpec};
use crate::error::{Error, Result};
use crate::geometry::{Line, LineSet, Point};
use crate::interp::MultiplicitySpec;
use crate::poly::MultiPoly;

type ElemWire = Vec<u64>;

fn elem_out(field: &Field, a: Elem) -> ElemWire {
    field.coeffs(a)
}

fn elem_in(field: &Field, v: &[u64]) -> Result<Elem> {
    field.from_coeffs(v)
}

fn vec_in(field: &Field, v: &[ElemWire]) -> Result<Vec<Elem>> {
    v.iter().map(|c| elem_in(field, c)).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineWire {
    pub base: Vec<ElemWire>,
    pub dir: Vec<ElemWire>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LineSetWire {
    pub field: FieldSpec,
    pub n: usize,
    pub lines: Vec<LineWire>,
}

pub fn lineset_to_wire(ls: &LineSet) -> LineSetWire {
    let field = ls.field();
    LineSetWire {
        field: field.spec().clone(),
        n: ls.n(),
        lines: ls
            .lines()
            .iter()
            .map(|l| LineWire {
                base: l
                    .base()
                    .coords()
                    .iter()
                    .map(|&c| elem_out(field, c))
                    .collect(),
                dir: l.dir().iter().map(|&c| elem_out(field, c)).collect(),
            })
            .collect(),
    }
}

/// Canonicalizes every line and rejects duplicates, keeping file order.
pub fn lineset_from_wire(w: &LineSetWire) -> Result<LineSet> {
    let field = Field::from_spec(&w.field)?;
    let lines = w
        .lines
        .iter()
        .map(|l| {
            Line::new(
                &field,
                Point(vec_in(&field, &l.base)?),
                vec_in(&field, &l.dir)?,
            )
        })
        .collect::<Result<Vec<_>>>()?;
    LineSet::new(field, w.n, lines)
}

/// Either `[c0, c1]` or the nested `[[c0, c1]]` form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoefWire {
    Flat(ElemWire),
    Nested(Vec<ElemWire>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermWire {
    pub exp: Vec<u32>,
    pub coef: CoefWire,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolyWire {
    pub field: FieldSpec,
    pub n: usize,
    pub terms: Vec<TermWire>,
}

pub fn poly_to_wire(field: &Field, f: &MultiPoly) -> PolyWire {
    PolyWire {
        field: field.spec().clone(),
        n: f.n(),
        terms: f
            .terms()
            .map(|(e, c)| TermWire {
                exp: e.clone(),
                coef: CoefWire::Flat(elem_out(field, c)),
            })
            .collect(),
    }
}

pub fn poly_from_wire(w: &PolyWire) -> Result<(Field, MultiPoly)> {
    let field = Field::from_spec(&w.field)?;
    let terms = w
        .terms
        .iter()
        .map(|t| {
            if t.exp.len() != w.n {
                return Err(Error::DimensionMismatch {
                    expected: w.n,
                    got: t.exp.len(),
                });
            }
            let c = match &t.coef {
                CoefWire::Flat(v) => elem_in(&field, v)?,
                CoefWire::Nested(v) if v.len() == 1 => elem_in(&field, &v[0])?,
                CoefWire::Nested(v) => {
                    return Err(Error::InvalidParameter(format!(
                        "coefficient must be one element, got {} arrays",
                        v.len()
                    )))
                }
            };
            Ok((t.exp.clone(), c))
        })
        .collect::<Result<Vec<_>>>()?;
    let f = MultiPoly::from_terms(&field, w.n, terms)?;
    Ok((field, f))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorWire {
    pub poly: PolyWire,
    pub mult: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactorListWire {
    pub factors: Vec<FactorWire>,
}

/// All factors must share one field; returns it with `(factor, mult)` pairs.
pub fn factors_from_wire(w: &FactorListWire) -> Result<(Field, Vec<(MultiPoly, u32)>)> {
    let mut field: Option<Field> = None;
    let mut out = Vec::new();
    for (i, fw) in w.factors.iter().enumerate() {
        let (f, poly) = poly_from_wire(&fw.poly)?;
        if let Some(prev) = &field {
            if prev.spec() != f.spec() {
                return Err(Error::InvalidField(format!(
                    "factor {i} is over {f}, expected {prev}"
                )));
            }
        }
        if fw.mult == 0 {
            return Err(Error::InvalidParameter(format!(
                "factor {i} has multiplicity 0"
            )));
        }
        field.get_or_insert(f);
        out.push((poly, fw.mult));
    }
    let field = field.ok_or_else(|| Error::InvalidParameter("factor list is empty".into()))?;
    Ok((field, out))
}

pub fn factors_to_wire(field: &Field, factors: &[(MultiPoly, u32)]) -> FactorListWire {
    FactorListWire {
        factors: factors
            .iter()
            .map(|(f, m)| FactorWire {
                poly: poly_to_wire(field, f),
                mult: *m,
            })
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeightedPointWire {
    pub coords: Vec<ElemWire>,
    pub m: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MultiplicitySpecWire {
    pub field: FieldSpec,
    pub n: usize,
    pub points: Vec<WeightedPointWire>,
}

pub fn mspec_from_wire(w: &MultiplicitySpecWire) -> Result<(Field, MultiplicitySpec)> {
    let field = Field::from_spec(&w.field)?;
    let points = w
        .points
        .iter()
        .map(|p| Ok((Point(vec_in(&field, &p.coords)?), p.m)))
        .collect::<Result<Vec<_>>>()?;
    let spec = MultiplicitySpec::new(w.n, points)?;
    Ok((field, spec))
}

pub fn mspec_to_wire(field: &Field, spec: &MultiplicitySpec) -> MultiplicitySpecWire {
    MultiplicitySpecWire {
        field: field.spec().clone(),
        n: spec.n,
        points: spec
            .points
            .iter()
            .map(|(x, m)| WeightedPointWire {
                coords: x.coords().iter().map(|&c| elem_out(field, c)).collect(),
                m: *m,
            })
            .collect(),
    }
}

pub fn point_to_wire(field: &Field, x: &Point) -> Vec<ElemWire> {
    x.coords().iter().map(|&c| elem_out(field, c)).collect()
}

/// Generator name, parameters and seed stored next to generated files.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub generator: String,
    pub params: BTreeMap<String, Value>,
    pub seed: Option<u64>,
    pub line_count: usize,
}

/// `out.json` -> `out.json.provenance.json`
pub fn provenance_path(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".provenance.json");
    PathBuf::from(s)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

pub fn read_lineset(path: &Path) -> Result<LineSet> {
    lineset_from_wire(&read_json(path)?)
}

pub fn read_poly(path: &Path) -> Result<(Field, MultiPoly)> {
    poly_from_wire(&read_json(path)?)
}

pub fn read_factors(path: &Path) -> Result<(Field, Vec<(MultiPoly, u32)>)> {
    factors_from_wire(&read_json(path)?)
}

pub fn read_mspec(path: &Path) -> Result<(Field, MultiplicitySpec)> {
    mspec_from_wire(&read_json(path)?)
}
