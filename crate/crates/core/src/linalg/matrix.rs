use std::fmt::Debug;

use crate::error::{Error, Result};
use crate::ring::{Field, Ring};

/// Dense matrix whose rows and columns carry labels in a declared order.
///
/// A prototype zero is kept so that empty matrices still know their ring.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledMatrix<L, E> {
    rows: Vec<L>,
    cols: Vec<L>,
    data: Vec<E>,
    zero: E,
}

impl<L: Clone + PartialEq + Debug, E: Ring> LabeledMatrix<L, E> {
    pub fn zeros(rows: Vec<L>, cols: Vec<L>, zero: E) -> Self {
        let data = vec![zero.clone(); rows.len() * cols.len()];
        LabeledMatrix { rows, cols, data, zero }
    }

    pub fn from_fn(rows: Vec<L>, cols: Vec<L>, zero: E, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols.len());
        for i in 0..rows.len() {
            for j in 0..cols.len() {
                data.push(f(i, j));
            }
        }
        LabeledMatrix { rows, cols, data, zero }
    }

    pub fn identity(labels: Vec<L>, zero: E) -> Self {
        let one = zero.one_like();
        Self::from_fn(labels.clone(), labels, zero.clone(), |i, j| {
            if i == j {
                one.clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn diagonal(labels: Vec<L>, entries: Vec<E>, zero: E) -> Self {
        assert_eq!(labels.len(), entries.len());
        let mut m = Self::zeros(labels.clone(), labels, zero);
        for (i, e) in entries.into_iter().enumerate() {
            m.set(i, i, e);
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn row_labels(&self) -> &[L] {
        &self.rows
    }

    pub fn col_labels(&self) -> &[L] {
        &self.cols
    }

    pub fn zero_elem(&self) -> &E {
        &self.zero
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols.len() + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        let n = self.cols.len();
        self.data[i * n + j] = v;
    }

    /// Adds `v` to entry (i, j).
    pub fn accumulate(&mut self, i: usize, j: usize, v: &E) {
        let n = self.cols.len();
        self.data[i * n + j] = self.data[i * n + j].add(v);
    }

    pub fn row_index(&self, label: &L) -> Result<usize> {
        self.rows
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(format!("{label:?}")))
    }

    pub fn col_index(&self, label: &L) -> Result<usize> {
        self.cols
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(format!("{label:?}")))
    }

    pub fn entry(&self, row: &L, col: &L) -> Result<&E> {
        Ok(self.get(self.row_index(row)?, self.col_index(col)?))
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols.len()
    }

    fn require_square(&self) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::NonSquare {
                rows: self.nrows(),
                cols: self.ncols(),
            })
        }
    }

    pub fn map<F: Ring>(&self, zero: F, f: impl Fn(&E) -> F) -> LabeledMatrix<L, F> {
        LabeledMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.iter().map(f).collect(),
            zero,
        }
    }

    pub fn relabel<K: Clone + PartialEq + Debug>(&self, rows: Vec<K>, cols: Vec<K>) -> LabeledMatrix<K, E> {
        assert_eq!((rows.len(), cols.len()), (self.nrows(), self.ncols()));
        LabeledMatrix {
            rows,
            cols,
            data: self.data.clone(),
            zero: self.zero.clone(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols.clone(), self.rows.clone(), self.zero.clone(), |i, j| {
            self.get(j, i).clone()
        })
    }

    fn same_shape(&self, rhs: &Self) -> Result<()> {
        if self.rows == rhs.rows && self.cols == rhs.cols {
            Ok(())
        } else {
            Err(Error::DimensionMismatch("matrix labels differ".into()))
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(LabeledMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.add(b)).collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_shape(rhs)?;
        Ok(LabeledMatrix {
            rows: self.rows.clone(),
            cols: self.cols.clone(),
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a.sub(b)).collect(),
            zero: self.zero.clone(),
        })
    }

    pub fn scale(&self, c: &E) -> Self {
        self.map(self.zero.clone(), |x| x.mul(c))
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch("inner labels differ".into()));
        }
        let k = self.ncols();
        Ok(Self::from_fn(self.rows.clone(), rhs.cols.clone(), self.zero.clone(), |i, j| {
            let mut acc = self.zero.clone();
            for l in 0..k {
                let (a, b) = (self.get(i, l), rhs.get(l, j));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.mul(b));
                }
            }
            acc
        }))
    }

    /// Deletes the listed rows and columns.
    pub fn minor(&self, rows_to_delete: &[L], cols_to_delete: &[L]) -> Result<Self> {
        let drop_r = rows_to_delete.iter().map(|l| self.row_index(l)).collect::<Result<Vec<_>>>()?;
        let drop_c = cols_to_delete.iter().map(|l| self.col_index(l)).collect::<Result<Vec<_>>>()?;
        let keep_r: Vec<usize> = (0..self.nrows()).filter(|i| !drop_r.contains(i)).collect();
        let keep_c: Vec<usize> = (0..self.ncols()).filter(|j| !drop_c.contains(j)).collect();
        Ok(Self::from_fn(
            keep_r.iter().map(|&i| self.rows[i].clone()).collect(),
            keep_c.iter().map(|&j| self.cols[j].clone()).collect(),
            self.zero.clone(),
            |i, j| self.get(keep_r[i], keep_c[j]).clone(),
        ))
    }

    /// Coefficients [1, c_1, …, c_n] of det(λI − A) = λ^n + c_1 λ^{n−1} + … + c_n.
    ///
    /// Berkowitz: grow the trailing principal submatrix one row/column at a
    /// time, each step a lower-triangular Toeplitz product. No divisions.
    pub fn char_poly(&self) -> Result<Vec<E>> {
        self.require_square()?;
        let n = self.nrows();
        let one = self.zero.one_like();
        let mut coeffs = vec![one.clone()];
        for r in 0..n {
            // Current block is rows/cols k.., with k = n − r − 1 split off.
            let k = n - r - 1;
            let a = self.get(k, k);
            let row: Vec<E> = (k + 1..n).map(|j| self.get(k, j).clone()).collect();
            let mut col: Vec<E> = (k + 1..n).map(|i| self.get(i, k).clone()).collect();
            let mut toeplitz = Vec::with_capacity(r + 2);
            toeplitz.push(one.clone());
            toeplitz.push(a.neg());
            for _ in 0..r {
                toeplitz.push(dot(&row, &col, &self.zero).neg());
                // col ← A_r · col
                col = (k + 1..n)
                    .map(|i| {
                        let lhs: Vec<E> = (k + 1..n).map(|j| self.get(i, j).clone()).collect();
                        dot(&lhs, &col, &self.zero)
                    })
                    .collect();
            }
            let mut next = vec![self.zero.clone(); r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, c) in coeffs.iter().enumerate().take(i + 1) {
                    let t = &toeplitz[i - j];
                    if !t.is_zero() && !c.is_zero() {
                        *slot = slot.add(&t.mul(c));
                    }
                }
            }
            coeffs = next;
        }
        Ok(coeffs)
    }

    /// Division-free determinant, valid over any commutative ring.
    pub fn det_berkowitz(&self) -> Result<E> {
        let cp = self.char_poly()?;
        let n = self.nrows();
        let c = cp[n].clone();
        Ok(if n.is_multiple_of(2) { c } else { c.neg() })
    }

    /// adj(A) = (−1)^{n−1} (A^{n−1} + c_1 A^{n−2} + … + c_{n−1} I), from Cayley–Hamilton.
    pub fn adjugate(&self) -> Result<Self> {
        let cp = self.char_poly()?;
        let n = self.nrows();
        let a = self.relabel(self.rows.clone(), self.rows.clone());
        let id = Self::identity(self.rows.clone(), self.zero.clone());
        // Horner: X = (…((A + c_1 I)A + c_2 I)…)A + c_{n−1} I
        let mut x = id.clone();
        for c in cp.iter().take(n).skip(1) {
            x = a.mul(&x)?.add(&id.scale(c))?;
        }
        if n.is_multiple_of(2) {
            x = x.scale(&self.zero.one_like().neg());
        }
        // adj(A) maps the column space back to the row space.
        Ok(x.relabel(self.cols.clone(), self.rows.clone()))
    }

    /// Kronecker product; the new labels are pairs in lexicographic order.
    pub fn kronecker<K: Clone + PartialEq + Debug>(&self, rhs: &LabeledMatrix<K, E>) -> LabeledMatrix<(L, K), E> {
        let pairs = |a: &[L], b: &[K]| {
            a.iter()
                .flat_map(|x| b.iter().map(move |y| (x.clone(), y.clone())))
                .collect::<Vec<_>>()
        };
        let (bn, bm) = (rhs.nrows(), rhs.ncols());
        LabeledMatrix::from_fn(
            pairs(&self.rows, &rhs.rows),
            pairs(&self.cols, &rhs.cols),
            self.zero.clone(),
            |i, j| {
                let a = self.get(i / bn, j / bm);
                if a.is_zero() {
                    self.zero.clone()
                } else {
                    a.mul(rhs.get(i % bn, j % bm))
                }
            },
        )
    }
}

impl<L: Clone + PartialEq + Debug, E: Field> LabeledMatrix<L, E> {
    /// Gaussian elimination, pivoting on the first nonzero entry in declared order.
    pub fn det_gauss(&self) -> Result<E> {
        self.require_square()?;
        let n = self.nrows();
        let mut a: Vec<Vec<E>> = (0..n).map(|i| (0..n).map(|j| self.get(i, j).clone()).collect()).collect();
        let mut det = self.zero.one_like();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(self.zero.clone());
            };
            if p != col {
                a.swap(p, col);
                det = det.neg();
            }
            det = det.mul(&a[col][col]);
            let inv = a[col][col].inv().expect("pivot is nonzero");
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].mul(&inv);
                for c in col + 1..n {
                    if !a[col][c].is_zero() {
                        a[r][c] = a[r][c].sub(&f.mul(&a[col][c]));
                    }
                }
                a[r][col] = self.zero.clone();
            }
        }
        Ok(det)
    }
}

fn dot<E: Ring>(a: &[E], b: &[E], zero: &E) -> E {
    let mut acc = zero.clone();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc.add(&x.mul(y));
        }
    }
    acc
}
