//! Sparse linear maps between graded tensor spaces.
//!
//! Entries are the matrix of the map in the standard tensor basis, so
//! composition is ordinary matrix multiplication. Koszul signs enter through
//! [`SuperOp::tensor`], [`SuperOp::embed`] and the conversion to
//! matrix-unit coefficients.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::space::{koszul_sign, Space};
use crate::scalar::{Coeff, GaussRat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuperError {
    #[error("index {0} outside ±1..±{1}")]
    BadIndex(i32, usize),
    #[error("declared parity {declared} but entry of parity {found}")]
    ParityViolation { declared: u8, found: u8 },
    #[error("space mismatch")]
    SpaceMismatch,
}

/// Sparse map `cols -> rows`, stored by column with rows sorted.
#[derive(Clone, Debug)]
pub struct SuperOp<S: Coeff> {
    rows: Arc<Space>,
    cols: Arc<Space>,
    data: Vec<Vec<(u32, S)>>,
    declared: Option<u8>,
}

fn same(a: &Arc<Space>, b: &Arc<Space>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Parity of the sign relating the matrix entry at `(r, c)` to the
/// coefficient of the decomposable unit `E_{r_1 c_1} ⊗ ... ⊗ E_{r_n c_n}`.
pub fn unit_sign(rows: &Space, cols: &Space, r: usize, c: usize) -> u8 {
    let n = rows.arity();
    let mut par = Vec::with_capacity(2 * n);
    for k in 0..n {
        par.push(rows.slot_parity(r, k) ^ cols.slot_parity(c, k));
    }
    for k in 0..n {
        par.push(cols.slot_parity(c, k));
    }
    let mut order = Vec::with_capacity(2 * n);
    for k in 0..n {
        order.push(k);
        order.push(n + k);
    }
    koszul_sign(&par, &order)
}

pub(crate) fn signed<S: Coeff>(x: S, s: u8) -> S {
    if s & 1 == 1 {
        x.neg_c()
    } else {
        x
    }
}

impl<S: Coeff> SuperOp<S> {
    pub fn zero(rows: Arc<Space>, cols: Arc<Space>) -> Self {
        let n = cols.dim();
        SuperOp { rows, cols, data: vec![Vec::new(); n], declared: None }
    }

    pub fn zero_op(space: Arc<Space>) -> Self {
        Self::zero(space.clone(), space)
    }

    pub fn identity(space: Arc<Space>, one: S) -> Self {
        let mut op = Self::zero_op(space);
        for (c, col) in op.data.iter_mut().enumerate() {
            col.push((c as u32, one.clone()));
        }
        op
    }

    /// Builds from `(row, col, value)` triples, summing repeats.
    pub fn from_entries(rows: Arc<Space>, cols: Arc<Space>, entries: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut op = Self::zero(rows, cols);
        for (r, c, v) in entries {
            op.add_entry(r, c, v);
        }
        op
    }

    /// Builds from coefficients of decomposable matrix units.
    pub fn from_units(space: Arc<Space>, units: impl IntoIterator<Item = (usize, usize, S)>) -> Self {
        let mut op = Self::zero_op(space.clone());
        for (r, c, v) in units {
            let s = unit_sign(&space, &space, r, c);
            op.add_entry(r, c, signed(v, s));
        }
        op
    }

    pub fn rows(&self) -> &Arc<Space> {
        &self.rows
    }

    pub fn cols(&self) -> &Arc<Space> {
        &self.cols
    }

    pub fn space(&self) -> &Arc<Space> {
        debug_assert!(same(&self.rows, &self.cols));
        &self.rows
    }

    pub fn is_square(&self) -> bool {
        same(&self.rows, &self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn column(&self, c: usize) -> &[(u32, S)] {
        &self.data[c]
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&S> {
        let col = &self.data[c];
        col.binary_search_by_key(&(r as u32), |e| e.0).ok().map(|k| &col[k].1)
    }

    pub fn add_entry(&mut self, r: usize, c: usize, v: S) {
        assert!(r < self.rows.dim() && c < self.cols.dim(), "entry out of range");
        if v.is_zero_c() {
            return;
        }
        let col = &mut self.data[c];
        match col.binary_search_by_key(&(r as u32), |e| e.0) {
            Ok(k) => {
                let s = col[k].1.add_c(&v);
                if s.is_zero_c() {
                    col.remove(k);
                } else {
                    col[k].1 = s;
                }
            }
            Err(k) => col.insert(k, (r as u32, v)),
        }
    }

    /// Entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &S)> {
        self.data.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (*r as usize, c, v)))
    }

    /// Coefficient of the decomposable unit at `(r, c)`.
    pub fn unit_coeff(&self, r: usize, c: usize) -> Option<S> {
        self.get(r, c).map(|v| signed(v.clone(), unit_sign(&self.rows, &self.cols, r, c)))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// `Some(p)` if every entry has parity `p` (the zero map reports 0).
    pub fn parity(&self) -> Option<u8> {
        let mut p = None;
        for (r, c, _) in self.entries() {
            let q = self.rows.parity(r) ^ self.cols.parity(c);
            match p {
                None => p = Some(q),
                Some(p0) if p0 != q => return None,
                _ => {}
            }
        }
        Some(p.unwrap_or(0))
    }

    pub fn declared_parity(&self) -> Option<u8> {
        self.declared
    }

    /// Records a parity after checking every entry against it.
    pub fn with_declared_parity(mut self, p: u8) -> Result<Self, SuperError> {
        for (r, c, _) in self.entries() {
            let q = self.rows.parity(r) ^ self.cols.parity(c);
            if q != p {
                return Err(SuperError::ParityViolation { declared: p, found: q });
            }
        }
        self.declared = Some(p);
        Ok(self)
    }

    pub fn map<T: Coeff>(&self, f: impl Fn(&S) -> T) -> SuperOp<T> {
        let data = self.data.iter().map(|col| col.iter().filter_map(|(r, v)| Some((*r, f(v))).filter(|e| !e.1.is_zero_c())).collect()).collect();
        SuperOp { rows: self.rows.clone(), cols: self.cols.clone(), data, declared: self.declared }
    }

    /// Fallible entrywise map, e.g. evaluation of rational entries.
    pub fn try_map<T: Coeff>(&self, f: impl Fn(&S) -> Option<T>) -> Option<SuperOp<T>> {
        let mut data = Vec::with_capacity(self.data.len());
        for col in &self.data {
            let mut out = Vec::with_capacity(col.len());
            for (r, v) in col {
                let t = f(v)?;
                if !t.is_zero_c() {
                    out.push((*r, t));
                }
            }
            data.push(out);
        }
        Some(SuperOp { rows: self.rows.clone(), cols: self.cols.clone(), data, declared: self.declared })
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        self.map(|v| v.scale_c(c))
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg_c())
    }

    fn merge(&self, o: &Self, negate: bool) -> Self {
        assert!(same(&self.rows, &o.rows) && same(&self.cols, &o.cols), "space mismatch in sum");
        let mut data = Vec::with_capacity(self.data.len());
        for (a, b) in self.data.iter().zip(&o.data) {
            let mut out = Vec::with_capacity(a.len() + b.len());
            let (mut i, mut j) = (0, 0);
            while i < a.len() || j < b.len() {
                let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
                let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
                if take_a {
                    out.push(a[i].clone());
                    i += 1;
                } else if take_b {
                    let v = if negate { b[j].1.neg_c() } else { b[j].1.clone() };
                    out.push((b[j].0, v));
                    j += 1;
                } else {
                    let v = if negate { a[i].1.sub_c(&b[j].1) } else { a[i].1.add_c(&b[j].1) };
                    if !v.is_zero_c() {
                        out.push((a[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            data.push(out);
        }
        SuperOp { rows: self.rows.clone(), cols: self.cols.clone(), data, declared: None }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.merge(o, false)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.merge(o, true)
    }

    /// Composition `self ∘ o`.
    pub fn mul(&self, o: &Self) -> Self {
        assert!(same(&self.cols, &o.rows), "space mismatch in product");
        let nr = self.rows.dim();
        let mut acc: Vec<Option<S>> = vec![None; nr];
        let mut touched: Vec<u32> = Vec::new();
        let mut data = Vec::with_capacity(o.data.len());
        for col in &o.data {
            for (k, b) in col {
                for (r, a) in &self.data[*k as usize] {
                    let t = a.mul_c(b);
                    match &mut acc[*r as usize] {
                        Some(x) => *x = x.add_c(&t),
                        slot @ None => {
                            *slot = Some(t);
                            touched.push(*r);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for r in touched.drain(..) {
                let v = acc[r as usize].take().unwrap();
                if !v.is_zero_c() {
                    out.push((r, v));
                }
            }
            data.push(out);
        }
        SuperOp { rows: self.rows.clone(), cols: o.cols.clone(), data, declared: None }
    }

    /// Product of a sequence, evaluated right to left.
    pub fn product<'a>(ops: impl DoubleEndedIterator<Item = &'a Self>) -> Option<Self>
    where
        S: 'a,
    {
        let mut it = ops.rev();
        let mut acc = it.next()?.clone();
        for op in it {
            acc = op.mul(&acc);
        }
        Some(acc)
    }

    /// Graded tensor product: `(A ⊗ B)(a ⊗ b) = (-1)^{|B||a|} Aa ⊗ Bb`.
    pub fn tensor(&self, o: &Self) -> Self {
        let rows = Space::tensor(&self.rows, &o.rows);
        let cols = Space::tensor(&self.cols, &o.cols);
        let (r2d, c2d) = (o.rows.dim(), o.cols.dim());
        let mut out = Self::zero(rows, cols);
        for (c1, col1) in self.data.iter().enumerate() {
            let pc1 = self.cols.parity(c1);
            for (c2, col2) in o.data.iter().enumerate() {
                let pc2 = o.cols.parity(c2);
                let c = c1 * c2d + c2;
                let mut v = Vec::with_capacity(col1.len() * col2.len());
                for (r1, a) in col1 {
                    for (r2, b) in col2 {
                        let pb = o.rows.parity(*r2 as usize) ^ pc2;
                        let s = koszul_sign(&[0, pb, pc1, 0], &[0, 2, 1, 3]);
                        v.push(((*r1 as usize * r2d + *r2 as usize) as u32, signed(a.mul_c(b), s)));
                    }
                }
                v.sort_unstable_by_key(|e| e.0);
                out.data[c] = v;
            }
        }
        out
    }

    /// Places `self`, an operator on the factors of `target` at `positions`
    /// (in that order), into `target`, acting as the identity elsewhere.
    /// Equivalent to conjugating `self ⊗ 1` by the graded slot permutation.
    pub fn embed(&self, positions: &[usize], target: &Arc<Space>) -> Self {
        assert!(self.is_square());
        assert_eq!(*self.rows, *target.sub(positions), "embedding into mismatched factors");
        let n = target.arity();
        let rest: Vec<usize> = (0..n).filter(|k| !positions.contains(k)).collect();
        let rest_space = target.sub(&rest);
        let mut order: Vec<usize> = positions.to_vec();
        order.extend(&rest);
        let kappa = |idx: usize| -> u8 {
            let par: Vec<u8> = (0..n).map(|k| target.slot_parity(idx, k)).collect();
            koszul_sign(&par, &order)
        };
        let assemble = |inner: usize, t: usize| -> usize {
            let mut d = vec![0usize; n];
            for (j, p) in positions.iter().enumerate() {
                d[*p] = self.rows.digit(inner, j);
            }
            for (j, p) in rest.iter().enumerate() {
                d[*p] = rest_space.digit(t, j);
            }
            target.pack(&d)
        };
        let kap: Vec<u8> = (0..target.dim()).map(kappa).collect();
        let mut out = Self::zero_op(target.clone());
        for t in 0..rest_space.dim() {
            for (r, c, v) in self.entries() {
                let (rr, cc) = (assemble(r, t), assemble(c, t));
                out.data[cc].push((rr as u32, signed(v.clone(), kap[rr] ^ kap[cc])));
            }
        }
        for col in &mut out.data {
            col.sort_unstable_by_key(|e| e.0);
        }
        out
    }

    /// Applies a map on matrix units of one slot: `E_{ij} -> s E_{i'j'}`
    /// where `f(i, j) = (i', j', s)`.
    pub fn map_slot_units(&self, slot: usize, f: impl Fn(usize, usize) -> (usize, usize, u8)) -> Self {
        assert!(self.is_square());
        let sp = self.rows.clone();
        let mut out = Self::zero_op(sp.clone());
        for (r, c, v) in self.entries() {
            let coeff = signed(v.clone(), unit_sign(&sp, &sp, r, c));
            let (i2, j2, s) = f(sp.digit(r, slot), sp.digit(c, slot));
            let (r2, c2) = (sp.with_digit(r, slot, i2), sp.with_digit(c, slot, j2));
            out.add_entry(r2, c2, signed(coeff, s ^ unit_sign(&sp, &sp, r2, c2)));
        }
        out
    }

    pub fn transpose_plain(&self) -> Self {
        let mut out = Self::zero(self.cols.clone(), self.rows.clone());
        for (r, c, v) in self.entries() {
            out.data[r].push((c as u32, v.clone()));
        }
        out
    }

    /// Matrix-vector product on a dense vector.
    pub fn apply(&self, x: &[S]) -> Vec<S>
    where
        S: Coeff,
    {
        assert_eq!(x.len(), self.cols.dim());
        let zero = x.first().map(|v| v.zero_like());
        let mut out: Vec<Option<S>> = vec![None; self.rows.dim()];
        for (c, col) in self.data.iter().enumerate() {
            if x[c].is_zero_c() {
                continue;
            }
            for (r, a) in col {
                let t = a.mul_c(&x[c]);
                let slot = &mut out[*r as usize];
                *slot = Some(match slot.take() {
                    Some(s) => s.add_c(&t),
                    None => t,
                });
            }
        }
        out.into_iter().map(|v| v.unwrap_or_else(|| zero.clone().expect("nonempty"))).collect()
    }
}

impl<S: Coeff> PartialEq for SuperOp<S> {
    fn eq(&self, o: &Self) -> bool {
        same(&self.rows, &o.rows) && same(&self.cols, &o.cols) && self.data == o.data
    }
}

impl<S: Coeff> Coeff for SuperOp<S> {
    fn zero_like(&self) -> Self {
        Self::zero(self.rows.clone(), self.cols.clone())
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_c(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_c(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn neg_c(&self) -> Self {
        self.neg()
    }
    fn try_inv(&self) -> Option<Self> {
        None
    }
    fn scale_c(&self, c: &GaussRat) -> Self {
        self.scale(c)
    }
}

impl SuperOp<GaussRat> {
    pub fn identity_g(space: Arc<Space>) -> Self {
        Self::identity(space, GaussRat::one())
    }

    /// First entry where `self` and `o` differ, as `(row, col, self, o)`.
    pub fn first_difference(&self, o: &Self) -> Option<(usize, usize, GaussRat, GaussRat)> {
        let d = self.sub(o);
        let first = d.entries().next().map(|(r, c, _)| (r, c));
        first.map(|(r, c)| {
            let a = self.get(r, c).cloned().unwrap_or_else(GaussRat::zero);
            let b = o.get(r, c).cloned().unwrap_or_else(GaussRat::zero);
            (r, c, a, b)
        })
    }

    /// Supercommutator `[A, B] = AB - (-1)^{|A||B|} BA` of homogeneous maps.
    pub fn supercommutator(&self, o: &Self) -> Self {
        let pa = self.parity().expect("homogeneous");
        let pb = o.parity().expect("homogeneous");
        let ab = self.mul(o);
        let ba = o.mul(self);
        if pa & pb == 1 {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }
}
