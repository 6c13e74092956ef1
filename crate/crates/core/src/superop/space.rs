//! Graded tensor spaces `V_1 ⊗ ... ⊗ V_n` with packed basis indices.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

/// Parity of the sign picked up when a sequence of homogeneous items with
/// the given parities is rearranged so that slot `k` holds item `order[k]`.
/// Every Koszul sign in the crate is computed here.
pub fn koszul_sign(parities: &[u8], order: &[usize]) -> u8 {
    let mut s = 0u8;
    for a in 0..order.len() {
        let pa = parities[order[a]];
        if pa == 0 {
            continue;
        }
        for b in a + 1..order.len() {
            if order[a] > order[b] {
                s ^= parities[order[b]];
            }
        }
    }
    s & 1
}

/// Basis parities of `C^{N|N}`: `N` even vectors followed by `N` odd ones.
pub fn cnn_parities(n: usize) -> Vec<u8> {
    let mut p = vec![0u8; n];
    p.extend(core::iter::repeat_n(1u8, n));
    p
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Space {
    factors: Vec<Vec<u8>>,
    strides: Vec<usize>,
    dim: usize,
    parity: Vec<u8>,
}

impl Space {
    /// Tensor product of the given factors; each factor is its list of
    /// basis parities. Slot 0 is the most significant digit.
    pub fn new(factors: Vec<Vec<u8>>) -> Arc<Space> {
        let n = factors.len();
        let mut strides = vec![1usize; n];
        for k in (0..n.saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * factors[k + 1].len();
        }
        let dim: usize = factors.iter().map(Vec::len).product();
        let mut parity = vec![0u8; dim];
        for (idx, p) in parity.iter_mut().enumerate() {
            let mut s = 0u8;
            for k in 0..n {
                s ^= factors[k][(idx / strides[k]) % factors[k].len()];
            }
            *p = s;
        }
        Arc::new(Space { factors, strides, dim, parity })
    }

    /// `(C^{N|N})^{⊗arity}`.
    pub fn cnn(n: usize, arity: usize) -> Arc<Space> {
        Space::new(vec![cnn_parities(n); arity])
    }

    pub fn tensor(a: &Space, b: &Space) -> Arc<Space> {
        let mut f = a.factors.clone();
        f.extend(b.factors.iter().cloned());
        Space::new(f)
    }

    /// The tensor product of the factors at `positions`, in that order.
    pub fn sub(&self, positions: &[usize]) -> Arc<Space> {
        Space::new(positions.iter().map(|p| self.factors[*p].clone()).collect())
    }

    pub fn factors(&self) -> &[Vec<u8>] {
        &self.factors
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factor_dim(&self, k: usize) -> usize {
        self.factors[k].len()
    }

    /// Total parity of a basis vector.
    pub fn parity(&self, idx: usize) -> u8 {
        self.parity[idx]
    }

    pub fn slot_parity(&self, idx: usize, k: usize) -> u8 {
        self.factors[k][self.digit(idx, k)]
    }

    pub fn digit(&self, idx: usize, k: usize) -> usize {
        (idx / self.strides[k]) % self.factors[k].len()
    }

    pub fn digits(&self, idx: usize) -> Vec<usize> {
        (0..self.arity()).map(|k| self.digit(idx, k)).collect()
    }

    pub fn pack(&self, digits: &[usize]) -> usize {
        assert_eq!(digits.len(), self.arity());
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    pub fn stride(&self, k: usize) -> usize {
        self.strides[k]
    }

    /// Replace digit `k` of `idx` by `d`.
    pub fn with_digit(&self, idx: usize, k: usize, d: usize) -> usize {
        idx - self.digit(idx, k) * self.strides[k] + d * self.strides[k]
    }

    /// Whether every factor is `C^{N|N}` for the given `N`.
    pub fn is_cnn(&self, n: usize) -> bool {
        let p = cnn_parities(n);
        self.factors.iter().all(|f| *f == p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn koszul_sign_counts_odd_inversions() {
        assert_eq!(koszul_sign(&[1, 1], &[1, 0]), 1);
        assert_eq!(koszul_sign(&[1, 0], &[1, 0]), 0);
        assert_eq!(koszul_sign(&[1, 1, 1], &[2, 1, 0]), 1);
        assert_eq!(koszul_sign(&[1, 1, 1, 1], &[3, 2, 1, 0]), 0);
    }

    #[test]
    fn packing_round_trip() {
        let s = Space::new(vec![cnn_parities(2), vec![0, 1, 1]]);
        assert_eq!(s.dim(), 12);
        for idx in 0..12 {
            assert_eq!(s.pack(&s.digits(idx)), idx);
        }
        assert_eq!(s.parity(s.pack(&[2, 1])), 0);
        assert_eq!(s.parity(s.pack(&[1, 2])), 1);
    }
}
