//! Truncated power series `sum_{k<=L} a_k t^k` with coefficients in any ring
//! implementing [`Coeff`]; in the Yangian code `t = u^{-1}`.

use alloc::vec::Vec;

use super::gauss::GaussRat;

/// Minimal ring interface for series coefficients. Zero is produced from an
/// existing value so that matrix coefficients can carry their shape.
pub trait Coeff: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn is_zero_c(&self) -> bool;
    fn add_c(&self, o: &Self) -> Self;
    fn sub_c(&self, o: &Self) -> Self;
    fn mul_c(&self, o: &Self) -> Self;
    fn neg_c(&self) -> Self;
    fn try_inv(&self) -> Option<Self>;
    fn scale_c(&self, c: &GaussRat) -> Self;
}

impl Coeff for GaussRat {
    fn zero_like(&self) -> Self {
        GaussRat::zero()
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_c(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn scale_c(&self, c: &GaussRat) -> Self {
        self * c
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("constant term is not invertible")]
    NotInvertible,
    #[error("series is empty")]
    Empty,
}

#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<C: Coeff> {
    coeffs: Vec<C>,
}

impl<C: Coeff> TruncSeries<C> {
    /// Coefficients `a_0 .. a_L`; the order is `L`.
    pub fn new(coeffs: Vec<C>) -> Self {
        assert!(!coeffs.is_empty(), "a series needs a constant term");
        TruncSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &C {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncSeries { coeffs: self.coeffs[..=order.min(self.order())].to_vec() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let l = self.order().min(o.order());
        TruncSeries { coeffs: (0..=l).map(|k| self.coeffs[k].add_c(&o.coeffs[k])).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let l = self.order().min(o.order());
        TruncSeries { coeffs: (0..=l).map(|k| self.coeffs[k].sub_c(&o.coeffs[k])).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let l = self.order().min(o.order());
        let mut out = Vec::with_capacity(l + 1);
        for k in 0..=l {
            let mut acc = self.coeffs[0].mul_c(&o.coeffs[k]);
            for j in 1..=k {
                if self.coeffs[j].is_zero_c() || o.coeffs[k - j].is_zero_c() {
                    continue;
                }
                acc = acc.add_c(&self.coeffs[j].mul_c(&o.coeffs[k - j]));
            }
            out.push(acc);
        }
        TruncSeries { coeffs: out }
    }

    pub fn map(&self, f: impl Fn(&C) -> C) -> Self {
        TruncSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Inverse to the same order; needs an invertible constant term.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        let b0 = self.coeffs[0].try_inv().ok_or(SeriesError::NotInvertible)?;
        Ok(self.invert_given(b0))
    }

    /// Inverse when the inverse `b0` of the constant term is already known.
    pub fn invert_given(&self, b0: C) -> Self {
        let mut out: Vec<C> = Vec::with_capacity(self.coeffs.len());
        out.push(b0.clone());
        for k in 1..=self.order() {
            let mut acc = self.coeffs[k].mul_c(&out[0]);
            for j in 1..k {
                if self.coeffs[k - j].is_zero_c() {
                    continue;
                }
                acc = acc.add_c(&self.coeffs[k - j].mul_c(&out[j]));
            }
            out.push(b0.mul_c(&acc).neg_c());
        }
        TruncSeries { coeffs: out }
    }

    /// For `t = u^{-1}`: the series of `d/du`, whose `t^m` coefficient is
    /// `-(m-1) a_{m-1}`. The order is kept.
    pub fn d_du(&self) -> Self {
        let z = self.coeffs[0].zero_like();
        let mut out = Vec::with_capacity(self.coeffs.len());
        out.push(z.clone());
        for m in 1..=self.order() {
            let k = (m - 1) as i64;
            let c = if k == 0 { z.clone() } else { scale_int(&self.coeffs[m - 1], -k) };
            out.push(c);
        }
        TruncSeries { coeffs: out }
    }
}

fn scale_int<C: Coeff>(c: &C, k: i64) -> C {
    c.scale_c(&GaussRat::from_int(k))
}

/// Inverse of a series with invertible constant term.
pub fn series_invert<C: Coeff>(s: &TruncSeries<C>) -> Result<TruncSeries<C>, SeriesError> {
    s.invert()
}
