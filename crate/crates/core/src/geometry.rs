//! Points and affine lines in k^n.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use crate::algebra::{Elem, Field, Matrix};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point(pub Vec<Elem>);

impl Point {
    pub fn origin(n: usize) -> Point {
        Point(vec![Elem::ZERO; n])
    }

    /// A point with prime-subfield coordinates.
    pub fn from_ints(field: &Field, coords: &[i64]) -> Point {
        Point(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Elem] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An affine line `{base + t * dir}` in canonical form: the first nonzero
/// coordinate of `dir` (the pivot) is 1 and `base` is 0 at the pivot. Two
/// lines are equal exactly when they are the same point set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    base: Point,
    dir: Vec<Elem>,
    pivot: usize,
}

impl Line {
    /// Canonicalizes an arbitrary (base, direction) pair.
    pub fn new(field: &Field, base: Point, dir: Vec<Elem>) -> Result<Line> {
        if base.dim() != dir.len() {
            return Err(Error::DimensionMismatch {
                expected: base.dim(),
                got: dir.len(),
            });
        }
        for &c in base.0.iter().chain(&dir) {
            if !field.contains(c) {
                return Err(Error::ForeignElement {
                    value: c.index(),
                    order: field.order(),
                });
            }
        }
        let pivot = dir
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::ZeroDirection)?;
        let inv = field.inv(dir[pivot]).unwrap();
        let dir: Vec<Elem> = dir.iter().map(|&c| field.mul(c, inv)).collect();
        let shift = base.0[pivot];
        let base = Point(
            base.0
                .iter()
                .zip(&dir)
                .map(|(&b, &d)| field.sub(b, field.mul(shift, d)))
                .collect(),
        );
        Ok(Line { base, dir, pivot })
    }

    /// Line with prime-subfield integer coordinates.
    pub fn from_ints(field: &Field, base: &[i64], dir: &[i64]) -> Result<Line> {
        Line::new(
            field,
            Point::from_ints(field, base),
            dir.iter().map(|&c| field.from_i64(c)).collect(),
        )
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn dir(&self) -> &[Elem] {
        &self.dir
    }

    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn dim(&self) -> usize {
        self.dir.len()
    }

    pub fn point_at(&self, field: &Field, t: Elem) -> Point {
        Point(
            self.base
                .0
                .iter()
                .zip(&self.dir)
                .map(|(&b, &d)| field.add(b, field.mul(t, d)))
                .collect(),
        )
    }

    pub fn contains(&self, field: &Field, x: &Point) -> bool {
        if x.dim() != self.dim() {
            return false;
        }
        // The only candidate parameter is read off the pivot coordinate.
        let t = x.0[self.pivot];
        self.point_at(field, t) == *x
    }

    pub fn is_parallel(&self, other: &Line) -> bool {
        self.dir == other.dir
    }

    /// The unique common point of two distinct lines, if any.
    pub fn intersect(&self, field: &Field, other: &Line) -> Result<Option<Point>> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        if self == other {
            return Err(Error::IdenticalLines);
        }
        if self.is_parallel(other) {
            return Ok(None);
        }
        // base1 + s dir1 = base2 + u dir2, solved for (s, u).
        let n = self.dim();
        let mut a = Matrix::zeros(n, 2);
        let mut rhs = Vec::with_capacity(n);
        for i in 0..n {
            a[(i, 0)] = self.dir[i];
            a[(i, 1)] = field.neg(other.dir[i]);
            rhs.push(field.sub(other.base.0[i], self.base.0[i]));
        }
        Ok(a.solve(field, &rhs).map(|st| self.point_at(field, st[0])))
    }

    /// All points of the line, in parameter order over the field's elements.
    pub fn points(&self, field: &Field) -> Vec<Point> {
        field.elements().map(|t| self.point_at(field, t)).collect()
    }
}

impl Ord for Line {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.pivot, &self.dir, &self.base).cmp(&(other.pivot, &other.dir, &other.base))
    }
}

impl PartialOrd for Line {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + t{}", self.base, Point(self.dir.clone()))
    }
}

/// Rank of the matrix whose rows are the direction vectors.
pub fn directions_rank(field: &Field, lines: &[&Line]) -> usize {
    if lines.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<Elem>> = lines.iter().map(|l| l.dir.clone()).collect();
    Matrix::from_rows(lines[0].dim(), &rows).rank(field)
}

/// A finite set of distinct lines in k^n over one field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineSet {
    field: Field,
    n: usize,
    lines: Vec<Line>,
}

impl LineSet {
    /// Rejects lines of the wrong dimension and duplicates; the error names
    /// the offending indices.
    pub fn new(field: Field, n: usize, lines: Vec<Line>) -> Result<LineSet> {
        let mut seen: HashMap<&Line, usize> = HashMap::with_capacity(lines.len());
        for (i, l) in lines.iter().enumerate() {
            if l.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: l.dim(),
                });
            }
            if let Some(&first) = seen.get(l) {
                return Err(Error::DuplicateLine { first, second: i });
            }
            seen.insert(l, i);
        }
        Ok(LineSet { field, n, lines })
    }

    /// Builds a set from lines that may repeat, keeping first occurrences.
    pub fn dedup_from(
        field: Field,
        n: usize,
        lines: impl IntoIterator<Item = Line>,
    ) -> Result<LineSet> {
        let mut seen = std::collections::HashSet::new();
        let lines: Vec<Line> = lines
            .into_iter()
            .filter(|l| seen.insert(l.clone()))
            .collect();
        LineSet::new(field, n, lines)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Sorts lines into canonical order.
    pub fn sorted(mut self) -> LineSet {
        self.lines.sort();
        self
    }

    /// A subset by index, in the given order.
    pub fn subset(&self, indices: &[usize]) -> LineSet {
        LineSet {
            field: self.field.clone(),
            n: self.n,
            lines: indices.iter().map(|&i| self.lines[i].clone()).collect(),
        }
    }

    /// Union with extra lines, skipping ones already present.
    pub fn extended(&self, extra: impl IntoIterator<Item = Line>) -> LineSet {
        LineSet::dedup_from(
            self.field.clone(),
            self.n,
            self.lines.iter().cloned().chain(extra),
        )
        .expect("dimensions already checked")
    }
}
