//! Certification of identities between sums of products of operator-valued
//! rational functions.
//!
//! Every factor declares the denominators that clear it and the degrees of
//! the cleared numerator. Both sides are multiplied by the least common
//! multiple `D` of the denominator multisets; the resulting polynomial
//! identity is checked on a product grid whose size follows from the
//! declared degrees.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::scalar::series::Coeff;
use crate::scalar::{certify_on_grid_avoiding, univariate_zeros, CertifyError, GaussRat, GridCertificate, PointOutcome, Poly};
use crate::superop::Op;

/// `Σ a_k x_k + c`.
#[derive(Clone, Debug, PartialEq)]
pub struct Affine {
    pub coeffs: Vec<i64>,
    pub constant: GaussRat,
}

impl Affine {
    pub fn var(nvars: usize, k: usize) -> Self {
        let mut coeffs = vec![0; nvars];
        coeffs[k] = 1;
        Affine { coeffs, constant: GaussRat::zero() }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        Affine { coeffs: vec![0; nvars], constant: c }
    }

    pub fn neg(&self) -> Self {
        Affine { coeffs: self.coeffs.iter().map(|a| -a).collect(), constant: -&self.constant }
    }

    pub fn add(&self, o: &Self) -> Self {
        Affine { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect(), constant: &self.constant + &o.constant }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn eval(&self, pt: &[GaussRat]) -> GaussRat {
        let mut acc = self.constant.clone();
        for (a, x) in self.coeffs.iter().zip(pt) {
            if *a != 0 {
                acc = &acc + &(&GaussRat::from_int(*a) * x);
            }
        }
        acc
    }

    pub fn involves(&self, k: usize) -> bool {
        self.coeffs[k] != 0
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(|a| *a == 0)
    }

    pub fn to_poly(&self) -> Poly {
        let n = self.coeffs.len();
        let mut p = Poly::constant(n, self.constant.clone());
        for (k, a) in self.coeffs.iter().enumerate() {
            if *a != 0 {
                p = &p + &Poly::var(n, k).scale(&GaussRat::from_int(*a));
            }
        }
        p
    }
}

type EvalFn<'a> = Box<dyn Fn(&[GaussRat]) -> Option<Op> + 'a>;

/// An operator-valued rational function `M / Π dens`.
pub struct OpFactor<'a> {
    eval: EvalFn<'a>,
    num_deg: Vec<u32>,
    dens: Vec<Poly>,
}

impl<'a> OpFactor<'a> {
    /// `num_deg[k]` bounds the degree in `x_k` of the factor times the
    /// product of `dens`. Constant denominators are dropped.
    pub fn new(eval: impl Fn(&[GaussRat]) -> Option<Op> + 'a, num_deg: Vec<u32>, dens: Vec<Poly>) -> Self {
        let dens = dens
            .into_iter()
            .filter(|d| {
                assert!(!d.is_zero(), "zero denominator");
                d.total_degree() != Some(0)
            })
            .map(|d| d.monic())
            .collect();
        OpFactor { eval: Box::new(eval), num_deg, dens }
    }

    /// A factor without poles whose entries have the given degrees.
    pub fn polynomial(eval: impl Fn(&[GaussRat]) -> Option<Op> + 'a, num_deg: Vec<u32>) -> Self {
        Self::new(eval, num_deg, Vec::new())
    }
}

/// `coeff · F_1 F_2 … F_m`.
pub struct OpTerm<'a> {
    pub coeff: GaussRat,
    pub factors: Vec<OpFactor<'a>>,
}

impl<'a> OpTerm<'a> {
    pub fn product(factors: Vec<OpFactor<'a>>) -> Self {
        OpTerm { coeff: GaussRat::one(), factors }
    }

    pub fn scaled(coeff: GaussRat, factors: Vec<OpFactor<'a>>) -> Self {
        OpTerm { coeff, factors }
    }

    fn dens(&self) -> Vec<&Poly> {
        self.factors.iter().flat_map(|f| f.dens.iter()).collect()
    }

    fn eval(&self, pt: &[GaussRat]) -> Option<Op> {
        let ops: Option<Vec<Op>> = self.factors.iter().map(|f| (f.eval)(pt)).collect();
        let ops = ops?;
        let prod = Op::product(ops.iter())?;
        Some(if self.coeff.is_one() { prod } else { prod.scale(&self.coeff) })
    }
}

/// Least common multiple of denominator multisets (structural equality of
/// monic factors).
fn lcm_multiset<'p>(terms: &[Vec<&'p Poly>]) -> Vec<&'p Poly> {
    let mut out: Vec<(&Poly, usize)> = Vec::new();
    for t in terms {
        let mut counts: Vec<(&Poly, usize)> = Vec::new();
        for d in t {
            match counts.iter_mut().find(|(p, _)| p == d) {
                Some(e) => e.1 += 1,
                None => counts.push((d, 1)),
            }
        }
        for (p, c) in counts {
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some(e) => e.1 = e.1.max(c),
                None => out.push((p, c)),
            }
        }
    }
    out.into_iter().flat_map(|(p, c)| core::iter::repeat_n(p, c)).collect()
}

/// Per-variable degree bounds after clearing denominators.
pub fn degree_bounds(nvars: usize, lhs: &[OpTerm], rhs: &[OpTerm]) -> Vec<u32> {
    let all: Vec<&OpTerm> = lhs.iter().chain(rhs).collect();
    let dens: Vec<Vec<&Poly>> = all.iter().map(|t| t.dens()).collect();
    let d = lcm_multiset(&dens);
    (0..nvars)
        .map(|k| {
            let dk: u32 = d.iter().map(|p| p.degree_in(k)).sum();
            all.iter()
                .zip(&dens)
                .map(|(t, td)| {
                    let num: u32 = t.factors.iter().map(|f| f.num_deg[k]).sum();
                    let own: u32 = td.iter().map(|p| p.degree_in(k)).sum();
                    num + dk - own
                })
                .max()
                .unwrap_or(0)
        })
        .collect()
}

/// Certifies `Σ lhs = Σ rhs` as an identity of rational functions.
pub fn certify_sums(nvars: usize, lhs: &[OpTerm], rhs: &[OpTerm]) -> Result<GridCertificate, CertifyError> {
    let bounds = degree_bounds(nvars, lhs, rhs);
    let mut all_dens: Vec<&Poly> = Vec::new();
    for t in lhs.iter().chain(rhs) {
        for d in t.dens() {
            if !all_dens.contains(&d) {
                all_dens.push(d);
            }
        }
    }
    // Outer `None`: singular point. Inner `None`: empty sum.
    let side = |terms: &[OpTerm], pt: &[GaussRat]| -> Option<Option<Op>> {
        let mut acc: Option<Op> = None;
        for t in terms {
            let v = t.eval(pt)?;
            acc = Some(match acc {
                Some(a) => a.add(&v),
                None => v,
            });
        }
        Some(acc)
    };
    let avoid = univariate_zeros(nvars, &all_dens);
    let cert = certify_on_grid_avoiding(&bounds, &avoid, |pt| {
        if all_dens.iter().any(|d| d.eval(pt).is_zero()) {
            return PointOutcome::Singular;
        }
        let (Some(a), Some(b)) = (side(lhs, pt), side(rhs, pt)) else { return PointOutcome::Singular };
        let (a, b) = match (a, b) {
            (Some(a), Some(b)) => (a, b),
            (Some(a), None) => (a.clone(), a.zero_like()),
            (None, Some(b)) => (b.zero_like(), b),
            (None, None) => return PointOutcome::Agree,
        };
        match a.first_difference(&b) {
            None => PointOutcome::Agree,
            Some((r, c, x, y)) => PointOutcome::Disagree(format!("entry ({r}, {c}): {x} vs {y}")),
        }
    });
    cert
}

/// Certifies `F_1 ⋯ F_m = G_1 ⋯ G_k`.
pub fn certify_products<'a>(nvars: usize, lhs: Vec<OpFactor<'a>>, rhs: Vec<OpFactor<'a>>) -> Result<GridCertificate, CertifyError> {
    certify_sums(nvars, &[OpTerm::product(lhs)], &[OpTerm::product(rhs)])
}
