//! Super linear algebra on `(C^{N|N})^{⊗n}`: graded indices, sparse super
//! operators, embeddings and the standard involutions and constants.

mod op;
mod space;

use alloc::sync::Arc;
use alloc::vec::Vec;

pub use op::{unit_sign, SuperError, SuperOp};
pub use space::{cnn_parities, koszul_sign, Space};

use crate::scalar::GaussRat;

/// Numeric operator.
pub type Op = SuperOp<GaussRat>;

/// A basis index `i ∈ {±1, …, ±N}`; negative indices are odd.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct SIndex(i32);

impl SIndex {
    pub fn new(i: i32, n: usize) -> Result<Self, SuperError> {
        if i == 0 || i.unsigned_abs() as usize > n {
            return Err(SuperError::BadIndex(i, n));
        }
        Ok(SIndex(i))
    }

    pub fn value(self) -> i32 {
        self.0
    }

    /// `ī`: 0 for positive, 1 for negative.
    pub fn parity(self) -> u8 {
        (self.0 < 0) as u8
    }

    pub fn neg(self) -> SIndex {
        SIndex(-self.0)
    }

    /// Position in the basis `e_1 … e_N, e_{-1} … e_{-N}`.
    pub fn ord(self, n: usize) -> usize {
        if self.0 > 0 {
            self.0 as usize - 1
        } else {
            n + (-self.0) as usize - 1
        }
    }

    pub fn from_ord(o: usize, n: usize) -> SIndex {
        assert!(o < 2 * n);
        if o < n {
            SIndex(o as i32 + 1)
        } else {
            SIndex(-((o - n) as i32 + 1))
        }
    }

    /// All indices in basis order.
    pub fn all(n: usize) -> impl Iterator<Item = SIndex> + Clone {
        (0..2 * n).map(move |o| SIndex::from_ord(o, n))
    }

    pub fn positive(n: usize) -> impl Iterator<Item = SIndex> + Clone {
        (1..=n as i32).map(SIndex)
    }
}

/// `(-1)^k` for a parity exponent.
pub fn sgn(k: u32) -> GaussRat {
    GaussRat::sign(k)
}

pub fn cnn(n: usize, arity: usize) -> Arc<Space> {
    Space::cnn(n, arity)
}

/// `E_{ij}` on `C^{N|N}`.
pub fn matrix_unit(n: usize, i: SIndex, j: SIndex) -> Op {
    let sp = cnn(n, 1);
    Op::from_entries(sp.clone(), sp, [(i.ord(n), j.ord(n), GaussRat::one())])
}

/// Builds an operator on `(C^{N|N})^{⊗k}` from coefficients of
/// decomposable matrix units `E_{i_1 j_1} ⊗ … ⊗ E_{i_k j_k}`.
pub fn from_unit_terms(n: usize, arity: usize, terms: impl IntoIterator<Item = (Vec<SIndex>, Vec<SIndex>, GaussRat)>) -> Op {
    let sp = cnn(n, arity);
    let pack = |v: &[SIndex]| sp.pack(&v.iter().map(|i| i.ord(n)).collect::<Vec<_>>());
    let units: Vec<_> = terms.into_iter().map(|(r, c, v)| (pack(&r), pack(&c), v)).collect();
    Op::from_units(sp.clone(), units)
}

/// `P = Σ E_{ij} ⊗ E_{ji} (-1)^{j̄}`, the graded flip.
pub fn perm_p(n: usize) -> Op {
    let mut t = Vec::new();
    for i in SIndex::all(n) {
        for j in SIndex::all(n) {
            t.push((alloc::vec![i, j], alloc::vec![j, i], sgn(j.parity() as u32)));
        }
    }
    from_unit_terms(n, 2, t)
}

/// `J = Σ E_{i,-i} (-1)^{ī}`; odd with `J² = -1`.
pub fn j_op(n: usize) -> Op {
    let t = SIndex::all(n).map(|i| (alloc::vec![i], alloc::vec![i.neg()], sgn(i.parity() as u32)));
    from_unit_terms(n, 1, t)
}

/// `Q = Σ E_{ij} ⊗ E_{ij} (-1)^{ī j̄}`.
pub fn q_op(n: usize) -> Op {
    let mut t = Vec::new();
    for i in SIndex::all(n) {
        for j in SIndex::all(n) {
            t.push((alloc::vec![i, i], alloc::vec![j, j], sgn((i.parity() & j.parity()) as u32)));
        }
    }
    // E_ij ⊗ E_ij has rows (i, i) and columns (j, j)
    from_unit_terms(n, 2, t)
}

/// `E = Σ (E_{ii} + E_{-i,-i})`, the identity of `C^{N|N}`.
pub fn e_op(n: usize) -> Op {
    let t =
        SIndex::positive(n).flat_map(|i| [(alloc::vec![i], alloc::vec![i], GaussRat::one()), (alloc::vec![i.neg()], alloc::vec![i.neg()], GaussRat::one())]);
    from_unit_terms(n, 1, t)
}

/// `F_{ij} = E_{ij} + E_{-i,-j}`.
pub fn f_op(n: usize, i: SIndex, j: SIndex) -> Op {
    matrix_unit(n, i, j).add(&matrix_unit(n, i.neg(), j.neg()))
}

/// Graded product (operators compose as matrices).
pub fn koszul_mul(a: &Op, b: &Op) -> Op {
    a.mul(b)
}

/// Graded tensor product.
pub fn koszul_tensor(a: &Op, b: &Op) -> Op {
    a.tensor(b)
}

/// `X_{p_1 … p_m}` inside `(C^{N|N})^{⊗total}`; positions are 0-based.
pub fn embed<S: crate::scalar::Coeff>(x: &SuperOp<S>, positions: &[usize], n: usize, total: usize) -> SuperOp<S> {
    x.embed(positions, &cnn(n, total))
}

/// `η` on one slot: `E_{ij} -> E_{-i,-j}`.
pub fn eta<S: crate::scalar::Coeff>(x: &SuperOp<S>, slot: usize, n: usize) -> SuperOp<S> {
    let flip = |o: usize| (o + n) % (2 * n);
    x.map_slot_units(slot, |i, j| (flip(i), flip(j), 0))
}

/// `τ` on one slot: `E_{ij} -> E_{ji} (-1)^{ī(j̄+1)}`.
pub fn tau<S: crate::scalar::Coeff>(x: &SuperOp<S>, slot: usize, n: usize) -> SuperOp<S> {
    x.map_slot_units(slot, |i, j| {
        let (pi, pj) = (SIndex::from_ord(i, n).parity(), SIndex::from_ord(j, n).parity());
        (j, i, pi & (pj ^ 1))
    })
}

/// `θ(X ⊗ Y) = (-1)^{|X||Y|} Y ⊗ X` on two-fold operators.
pub fn theta<S: crate::scalar::Coeff>(x: &SuperOp<S>) -> SuperOp<S> {
    assert_eq!(x.rows().arity(), 2);
    x.embed(&[1, 0], &x.rows().clone())
}

#[cfg(test)]
mod tests;
