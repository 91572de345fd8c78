use std::ops::{Index, IndexMut};

use super::field::{Elem, Field};

/// Dense row-major matrix over a finite field. The field is passed to every
/// operation that needs arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix {
            rows,
            cols,
            data: vec![Elem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Elem::ONE;
        }
        m
    }

    /// Builds a matrix from row vectors, which must all have length `cols`.
    pub fn from_rows(cols: usize, rows: &[Vec<Elem>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend_from_slice(r);
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, field: &Field, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| field.sum(self.row(i).iter().zip(v).map(|(&a, &b)| field.mul(a, b))))
            .collect()
    }

    /// Reduces in place to reduced row echelon form and returns the pivot
    /// columns. Pivot choice is the first nonzero entry at or below the
    /// current row.
    pub fn rref(&mut self, field: &Field) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = field.inv(self[(r, c)]).expect("pivot is nonzero");
            for j in c..self.cols {
                self[(r, j)] = field.mul(self[(r, j)], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self[(i, c)];
                if factor.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let v = field.mul(factor, self[(r, j)]);
                    self[(i, j)] = field.sub(self[(i, j)], v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, field: &Field) -> usize {
        self.clone().rref(field).len()
    }

    /// A basis of the right kernel `{v : M v = 0}`, one vector per free
    /// column, with a 1 in that column.
    pub fn nullspace(&self, field: &Field) -> Vec<Vec<Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(field);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Elem::ZERO; self.cols];
                v[free] = Elem::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(m[(r, free)]);
                }
                v
            })
            .collect()
    }

    /// Some solution of `M x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, field: &Field, b: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)];
            }
            aug[(i, self.cols)] = b[i];
        }
        let pivots = aug.rref(field);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Elem::ZERO; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(r, self.cols)];
        }
        Some(x)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Elem;
    fn index(&self, (i, j): (usize, usize)) -> &Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Elem {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Incremental column echelon: feed columns one at a time and learn whether
/// each is dependent on the ones before it. When it is, the dependency is
/// returned as coefficients over all columns fed so far.
pub struct ColumnEchelon {
    len: usize,
    // Each basis vector is reduced; `pivot` is its leading nonzero row and
    // `combo` records it as a combination of input columns.
    basis: Vec<(usize, Vec<Elem>, Vec<Elem>)>,
    fed: usize,
}

impl ColumnEchelon {
    pub fn new(len: usize) -> ColumnEchelon {
        ColumnEchelon {
            len,
            basis: Vec::new(),
            fed: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Adds a column. Returns `Some(coeffs)` with `sum coeffs[j] col_j = 0`
    /// and `coeffs[last] = 1` when the column is dependent; the column is
    /// then not added to the basis.
    pub fn push(&mut self, field: &Field, column: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(column.len(), self.len);
        let idx = self.fed;
        self.fed += 1;
        let mut v = column.to_vec();
        let mut combo = vec![Elem::ZERO; self.fed];
        combo[idx] = Elem::ONE;
        for (pivot, bv, bc) in &self.basis {
            let c = v[*pivot];
            if c.is_zero() {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(bv) {
                *x = field.sub(*x, field.mul(c, y));
            }
            for (x, &y) in combo.iter_mut().zip(bc) {
                *x = field.sub(*x, field.mul(c, y));
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            None => Some(combo),
            Some(pivot) => {
                let inv = field.inv(v[pivot]).unwrap();
                for x in v.iter_mut() {
                    *x = field.mul(*x, inv);
                }
                for x in combo.iter_mut() {
                    *x = field.mul(*x, inv);
                }
                // keep earlier basis vectors reduced against the new pivot
                for (_, bv, bc) in self.basis.iter_mut() {
                    let c = bv[pivot];
                    if c.is_zero() {
                        continue;
                    }
                    for (x, &y) in bv.iter_mut().zip(&v) {
                        *x = field.sub(*x, field.mul(c, y));
                    }
                    bc.resize(combo.len(), Elem::ZERO);
                    for (x, &y) in bc.iter_mut().zip(&combo) {
                        *x = field.sub(*x, field.mul(c, y));
                    }
                }
                self.basis.push((pivot, v, combo));
                None
            }
        }
    }
}
