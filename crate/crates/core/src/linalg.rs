//! Dense and incremental-echelon linear algebra over Q(i).

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::GaussRat;
use crate::superop::{Op, Space};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<GaussRat>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![GaussRat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for k in 0..n {
            m.data[k * n + k] = GaussRat::one();
        }
        m
    }

    pub fn from_op(op: &Op) -> Self {
        let mut m = Self::zero(op.rows().dim(), op.cols().dim());
        for (r, c, v) in op.entries() {
            m.data[r * m.cols + c] = v.clone();
        }
        m
    }

    pub fn to_op(&self, rows: Arc<Space>, cols: Arc<Space>) -> Op {
        assert_eq!((rows.dim(), cols.dim()), (self.rows, self.cols));
        let mut entries = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = &self.data[r * self.cols + c];
                if !v.is_zero() {
                    entries.push((r, c, v.clone()));
                }
            }
        }
        Op::from_entries(rows, cols, entries)
    }

    pub fn at(&self, r: usize, c: usize) -> &GaussRat {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: GaussRat) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussRat] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zero(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.at(k, j);
                    if !b.is_zero() {
                        let idx = i * o.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|i| !self.at(*i, c).is_zero()) else { continue };
            if p != r {
                for j in 0..self.cols {
                    self.data.swap(p * self.cols + j, r * self.cols + j);
                }
            }
            let inv = self.at(r, c).recip();
            for j in 0..self.cols {
                let v = &self.data[r * self.cols + j] * &inv;
                self.data[r * self.cols + j] = v;
            }
            for i in 0..self.rows {
                if i == r || self.at(i, c).is_zero() {
                    continue;
                }
                let f = self.at(i, c).clone();
                for j in 0..self.cols {
                    let t = self.at(r, j);
                    if !t.is_zero() {
                        let v = &self.data[i * self.cols + j] - &(&f * t);
                        self.data[i * self.cols + j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Option<Mat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Mat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.at(i, j).clone());
            }
            aug.set(i, n + i, GaussRat::one());
        }
        let piv = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut out = Mat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.at(i, n + j).clone());
            }
        }
        Some(out)
    }

    /// Basis of the right kernel.
    pub fn kernel(&self) -> Vec<Vec<GaussRat>> {
        let mut m = self.clone();
        let piv = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !piv.contains(c)).collect();
        free.iter()
            .map(|f| {
                let mut v = vec![GaussRat::zero(); self.cols];
                v[*f] = GaussRat::one();
                for (r, p) in piv.iter().enumerate() {
                    v[*p] = -m.at(r, *f);
                }
                v
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j).clone());
            }
        }
        out
    }
}

/// Inverse of a square numeric operator.
pub fn invert_op(op: &Op) -> Option<Op> {
    Mat::from_op(op).inverse().map(|m| m.to_op(op.cols().clone(), op.rows().clone()))
}

/// Sparse vector keyed by coordinate.
pub type SparseVec = BTreeMap<usize, GaussRat>;

/// Which coordinate of a reduced vector becomes its pivot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    First,
    Last,
}

/// Incrementally maintained fully reduced echelon basis of a subspace.
#[derive(Clone, Debug)]
pub struct Echelon {
    rule: PivotRule,
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new(rule: PivotRule) -> Self {
        Echelon { rule, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn basis(&self) -> impl Iterator<Item = (&usize, &SparseVec)> {
        self.rows.iter()
    }

    /// Reduces `v` against the basis (pivot coordinates become zero).
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut v = v.clone();
        let keys: Vec<usize> = v.keys().copied().filter(|k| self.rows.contains_key(k)).collect();
        for p in keys {
            let Some(c) = v.get(&p).cloned() else { continue };
            for (k, a) in &self.rows[&p] {
                let t = &c * a;
                let e = v.entry(*k).or_insert_with(GaussRat::zero);
                *e = &*e - &t;
                if e.is_zero() {
                    v.remove(k);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        let p = match self.rule {
            PivotRule::First => r.keys().next().copied(),
            PivotRule::Last => r.keys().next_back().copied(),
        };
        let Some(p) = p else { return false };
        let inv = r[&p].recip();
        let r: SparseVec = r.into_iter().map(|(k, a)| (k, &a * &inv)).collect();
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(&p).cloned() {
                for (k, a) in &r {
                    let t = &c * a;
                    let e = row.entry(*k).or_insert_with(GaussRat::zero);
                    *e = &*e - &t;
                    if e.is_zero() {
                        row.remove(k);
                    }
                }
            }
        }
        self.rows.insert(p, r);
        true
    }
}

pub fn dense_to_sparse(v: &[GaussRat]) -> SparseVec {
    v.iter().enumerate().filter(|(_, a)| !a.is_zero()).map(|(k, a)| (k, a.clone())).collect()
}
