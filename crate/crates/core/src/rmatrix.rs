//! The rational R-matrix `R(u,v) = 1 - P/(u-v) + P J_1 J_2/(u+v)`, the
//! twisted classical r-matrix, and their Yang-Baxter and symmetry checks.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::CheckOutcome;
use crate::identity::{certify_products, certify_sums, Affine, OpFactor, OpTerm};
use crate::scalar::{GaussRat, Poly, RatFun};
use crate::superop::{cnn, embed, eta, from_unit_terms, j_op, perm_p, sgn, tau, theta, Op, SIndex, Space, SuperOp};

/// Operator-valued rational function in `(u, v)`.
pub type SymOp = SuperOp<RatFun>;

/// `P J_1 J_2` on `C^{N|N} ⊗ C^{N|N}`.
pub fn pjj(n: usize) -> Op {
    let j1 = embed(&j_op(n), &[0], n, 2);
    let j2 = embed(&j_op(n), &[1], n, 2);
    perm_p(n).mul(&j1).mul(&j2)
}

/// `Σ E_ij ⊗ E_{-j,-i} (-1)^{j̄}`, which is `(id ⊗ η)(P)`.
pub fn twisted_flip(n: usize) -> Op {
    let mut t = Vec::new();
    for i in SIndex::all(n) {
        for j in SIndex::all(n) {
            t.push((vec![i, j.neg()], vec![j, i.neg()], sgn(j.parity() as u32)));
        }
    }
    from_unit_terms(n, 2, t)
}

/// `C + M/(a-b) + P/(a+b)` with constant operators.
#[derive(Clone, Debug, PartialEq)]
pub struct Pencil {
    pub constant: Op,
    pub minus: Op,
    pub plus: Op,
}

impl Pencil {
    /// `R(a,b)`; `twist` multiplies the `1/(a+b)` term (1 for the true
    /// R-matrix, -1 or 0 for mutated controls).
    pub fn r_matrix(n: usize, twist: i64) -> Self {
        let sp = cnn(n, 2);
        Pencil { constant: Op::identity_g(sp), minus: perm_p(n).neg(), plus: pjj(n).scale(&GaussRat::from_int(twist)) }
    }

    /// `r(a,b) = P/(a-b) + (id⊗η)(P)/(a+b)`; `twist = 0` gives `P/(a-b)`.
    pub fn classical(n: usize, twist: i64) -> Self {
        let sp = cnn(n, 2);
        Pencil { constant: Op::zero_op(sp), minus: perm_p(n), plus: twisted_flip(n).scale(&GaussRat::from_int(twist)) }
    }

    pub fn map(&self, f: impl Fn(&Op) -> Op) -> Self {
        Pencil { constant: f(&self.constant), minus: f(&self.minus), plus: f(&self.plus) }
    }

    pub fn embed(&self, positions: &[usize], target: &Arc<Space>) -> Self {
        self.map(|x| x.embed(positions, target))
    }

    pub fn at(&self, a: &GaussRat, b: &GaussRat) -> Option<Op> {
        let mut out = self.constant.clone();
        for (op, d) in [(&self.minus, a - b), (&self.plus, a + b)] {
            if op.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            out = out.add(&op.scale(&d.recip()));
        }
        Some(out)
    }

    /// The pencil at `(a(x), b(x))` as a certifier factor.
    pub fn factor(&self, a: Affine, b: Affine) -> OpFactor<'_> {
        let nv = a.coeffs.len();
        let (dm, dp) = (a.sub(&b), a.add(&b));
        let live = |op: &Op, d: &Affine| {
            if op.is_zero() {
                return None;
            }
            assert!(!(d.is_constant() && d.constant.is_zero()), "pencil evaluated on its pole");
            (!d.is_constant()).then(|| d.clone())
        };
        let (lm, lp) = (live(&self.minus, &dm), live(&self.plus, &dp));
        let inv = |d: &Option<Affine>, k: usize| d.as_ref().map_or(0, |d| d.involves(k) as u32);
        let num_deg = (0..nv)
            .map(|k| {
                let mut deg = 0;
                if !self.constant.is_zero() {
                    deg = inv(&lm, k) + inv(&lp, k);
                }
                if !self.minus.is_zero() {
                    deg = deg.max(inv(&lp, k));
                }
                if !self.plus.is_zero() {
                    deg = deg.max(inv(&lm, k));
                }
                deg
            })
            .collect();
        let dens = [lm, lp].into_iter().flatten().map(|d| d.to_poly()).collect();
        OpFactor::new(move |pt: &[GaussRat]| self.at(&a.eval(pt), &b.eval(pt)), num_deg, dens)
    }

    /// The pencil as a rational function of `(u, v)`.
    pub fn symbolic(&self) -> SymOp {
        let inv = |c: &[i64]| RatFun::new(Poly::one(2), Poly::linear(c, 0));
        sym(&self.constant, &RatFun::one(2)).add(&sym(&self.minus, &inv(&[1, -1]))).add(&sym(&self.plus, &inv(&[1, 1])))
    }
}

/// `f · X` for a constant operator `X`.
pub fn sym(x: &Op, f: &RatFun) -> SymOp {
    x.map(|c| f.scale(c))
}

/// `R(u,v)` expanded from the two sums over matrix units.
pub fn r_matrix_sums(n: usize) -> SymOp {
    let mut first = Vec::new();
    let mut second = Vec::new();
    for i in SIndex::all(n) {
        for j in SIndex::all(n) {
            let s = sgn(j.parity() as u32);
            first.push((vec![i, j], vec![j, i], s.clone()));
            second.push((vec![i, j.neg()], vec![j, i.neg()], s));
        }
    }
    let f = |c: &[i64]| RatFun::new(Poly::constant(2, GaussRat::from_int(-1)), Poly::linear(c, 0));
    sym(&Op::identity_g(cnn(n, 2)), &RatFun::one(2))
        .add(&sym(&from_unit_terms(n, 2, first), &f(&[1, -1])))
        .add(&sym(&from_unit_terms(n, 2, second), &f(&[1, 1])))
}

/// `R(u,v) = 1 - P/(u-v) + P J_1 J_2/(u+v)`; both displayed forms are
/// built and compared.
pub fn build_r(n: usize) -> SymOp {
    let r = Pencil::r_matrix(n, 1).symbolic();
    assert!(r == r_matrix_sums(n), "the two forms of R disagree");
    r
}

/// Classical r-matrix `Σ_m (id ⊗ ω^m)(K) / (u - ζ^m v)`.
///
/// `omega` applies the automorphism to one tensor slot.
pub fn twisted_r(k: &Op, omega: impl Fn(&Op, usize) -> Op, order: u32, zeta: &GaussRat) -> Result<SymOp, RMatrixError> {
    if zeta.pow(order as i64) != GaussRat::one() || (1..order).any(|m| zeta.pow(m as i64).is_one()) {
        return Err(RMatrixError::NotPrimitiveRoot);
    }
    if omega(&omega(k, 0), 1) != k.scale(zeta) {
        return Err(RMatrixError::TwistHypothesis);
    }
    let mut out = SymOp::zero_op(k.space().clone());
    let mut km = k.clone();
    for m in 0..order {
        let mut den = Poly::var(2, 0);
        den = &den - &Poly::var(2, 1).scale(&zeta.pow(m as i64));
        out = out.add(&sym(&km, &RatFun::new(Poly::one(2), den)));
        km = omega(&km, 1);
    }
    Ok(out)
}

/// Classical r-matrix obtained from `K = P` twisted by `η`.
pub fn build_classical_r(n: usize) -> SymOp {
    Pencil::classical(n, 1).symbolic()
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RMatrixError {
    #[error("ζ is not a primitive root of unity of the given order")]
    NotPrimitiveRoot,
    #[error("ω⊗ω does not scale K by ζ")]
    TwistHypothesis,
}

fn var(nv: usize, k: usize) -> Affine {
    Affine::var(nv, k)
}

fn sym_check(name: &str, anchor: &'static str, lhs: &SymOp, rhs: &SymOp) -> CheckOutcome {
    if lhs == rhs {
        return CheckOutcome::pass(name, anchor, format!("exact comparison of {} entries", lhs.nnz().max(rhs.nnz())));
    }
    let d = lhs.sub(rhs);
    let (r, c, v) = d.entries().next().expect("nonzero difference");
    CheckOutcome::fail(name, anchor, format!("entry ({r}, {c}) differs by {v:?}"))
}

/// `R_12(u,v) R_13(u,w) R_23(v,w) = R_23(v,w) R_13(u,w) R_12(u,v)`.
pub fn check_qybe(n: usize, twist: i64) -> CheckOutcome {
    let sp = cnn(n, 3);
    let r = Pencil::r_matrix(n, twist);
    let (r12, r13, r23) = (r.embed(&[0, 1], &sp), r.embed(&[0, 2], &sp), r.embed(&[1, 2], &sp));
    let (u, v, w) = (var(3, 0), var(3, 1), var(3, 2));
    let cert = certify_products(
        3,
        vec![r12.factor(u.clone(), v.clone()), r13.factor(u.clone(), w.clone()), r23.factor(v.clone(), w.clone())],
        vec![r23.factor(v.clone(), w.clone()), r13.factor(u.clone(), w), r12.factor(u, v)],
    );
    let name = if twist == 1 { format!("qybe N={n}") } else { format!("qybe N={n} mutated twist={twist}") };
    let out = CheckOutcome::from_certificate(name, "quantum Yang-Baxter equation", &cert);
    if twist == 1 {
        out
    } else {
        out.as_control()
    }
}

/// `R(u,v) R(-u,-v) = (1 - 1/(u-v)^2 - 1/(u+v)^2) · 1`.
pub fn check_unitarity(n: usize) -> CheckOutcome {
    let r = Pencil::r_matrix(n, 1);
    let id = Op::identity_g(cnn(n, 2));
    let (u, v) = (var(2, 0), var(2, 1));
    let scalar = OpFactor::new(
        move |pt: &[GaussRat]| {
            let (m, p) = (&pt[0] - &pt[1], &pt[0] + &pt[1]);
            if m.is_zero() || p.is_zero() {
                return None;
            }
            let c = &(&GaussRat::one() - &(&m * &m).recip()) - &(&p * &p).recip();
            Some(id.scale(&c))
        },
        vec![4, 4],
        vec![Poly::linear(&[1, -1], 0), Poly::linear(&[1, -1], 0), Poly::linear(&[1, 1], 0), Poly::linear(&[1, 1], 0)],
    );
    let cert = certify_products(2, vec![r.factor(u.clone(), v.clone()), r.factor(u.neg(), v.neg())], vec![scalar]);
    CheckOutcome::from_certificate(format!("unitarity N={n}"), "R(u,v)R(-u,-v) identity", &cert)
}

/// `R̄(u,v) R̄(-u,-v) = 1` for `R̄ = (id ⊗ τ)(R)`.
pub fn check_rbar(n: usize) -> CheckOutcome {
    let rb = Pencil::r_matrix(n, 1).map(|x| tau(x, 1, n));
    let id = Op::identity_g(cnn(n, 2));
    let (u, v) = (var(2, 0), var(2, 1));
    let cert = certify_products(
        2,
        vec![rb.factor(u.clone(), v.clone()), rb.factor(u.neg(), v.neg())],
        vec![OpFactor::polynomial(move |_: &[GaussRat]| Some(id.clone()), vec![0, 0])],
    );
    CheckOutcome::from_certificate(format!("rbar unitarity N={n}"), "(id⊗τ)R unitarity", &cert)
}

/// `(η⊗id)R(u,v) = R(-u,v)`, `(id⊗η)R(u,v) = R(u,-v)` and their composite.
pub fn check_eta_covariance(n: usize) -> Vec<CheckOutcome> {
    let r = build_r(n);
    let anchor = "η-covariance of R";
    vec![
        sym_check(&format!("eta slot 1 N={n}"), anchor, &eta(&r, 0, n), &r.map(|f| f.negate_var(0))),
        sym_check(&format!("eta slot 2 N={n}"), anchor, &eta(&r, 1, n), &r.map(|f| f.negate_var(1))),
        sym_check(&format!("eta both slots N={n}"), anchor, &eta(&eta(&r, 0, n), 1, n), &r.map(|f| f.negate_var(0).negate_var(1))),
    ]
}

/// Agreement of the twisted construction with the explicit r-matrix,
/// antisymmetry, and `R = 1 - r`.
pub fn check_classical(n: usize) -> Vec<CheckOutcome> {
    let r = build_classical_r(n);
    let tw = twisted_r(&perm_p(n), |x, s| eta(x, s, n), 2, &GaussRat::from_int(-1)).expect("η twist hypothesis");
    let swapped = theta(&r).map(|f| f.permute_vars(&[1, 0]));
    let big = build_r(n);
    let one_minus = sym(&Op::identity_g(cnn(n, 2)), &RatFun::one(2)).sub(&r);
    vec![
        sym_check(&format!("twisted r construction N={n}"), "twisted classical r-matrix", &tw, &r),
        sym_check(&format!("antisymmetry N={n}"), "antisymmetry of r", &r.add(&swapped), &SymOp::zero_op(r.space().clone())),
        sym_check(&format!("R = 1 - r N={n}"), "R-matrix as 1 - r", &big, &one_minus),
    ]
}

/// `[r12, r13] + [r12, r23] + [r13, r23] = 0`; all r-matrices here are even
/// so the supercommutators are commutators.
pub fn check_cybe(n: usize, twist: i64) -> CheckOutcome {
    let sp = cnn(n, 3);
    let r = Pencil::classical(n, twist);
    let (r12, r13, r23) = (r.embed(&[0, 1], &sp), r.embed(&[0, 2], &sp), r.embed(&[1, 2], &sp));
    let (u, v, w) = (var(3, 0), var(3, 1), var(3, 2));
    let f12 = || r12.factor(u.clone(), v.clone());
    let f13 = || r13.factor(u.clone(), w.clone());
    let f23 = || r23.factor(v.clone(), w.clone());
    let lhs = [OpTerm::product(vec![f12(), f13()]), OpTerm::product(vec![f12(), f23()]), OpTerm::product(vec![f13(), f23()])];
    let rhs = [OpTerm::product(vec![f13(), f12()]), OpTerm::product(vec![f23(), f12()]), OpTerm::product(vec![f23(), f13()])];
    let cert = certify_sums(3, &lhs, &rhs);
    let name = if twist == 0 { format!("cybe untwisted N={n}") } else { format!("cybe N={n}") };
    CheckOutcome::from_certificate(name, "classical Yang-Baxter equation", &cert)
}

/// Which groups of R-matrix checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RMatrixCheck {
    Qybe,
    Unitarity,
    Eta,
    Classical,
    Cybe,
}

impl RMatrixCheck {
    pub const ALL: [RMatrixCheck; 5] = [RMatrixCheck::Qybe, RMatrixCheck::Unitarity, RMatrixCheck::Eta, RMatrixCheck::Classical, RMatrixCheck::Cybe];

    pub fn name(self) -> &'static str {
        match self {
            RMatrixCheck::Qybe => "qybe",
            RMatrixCheck::Unitarity => "unitarity",
            RMatrixCheck::Eta => "eta",
            RMatrixCheck::Classical => "classical",
            RMatrixCheck::Cybe => "cybe",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Every check of this module for one `N`, with optional negative controls.
pub fn run_all(n: usize, controls: bool) -> Vec<CheckOutcome> {
    run_checks(n, &RMatrixCheck::ALL, controls)
}

pub fn run_checks(n: usize, which: &[RMatrixCheck], controls: bool) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for c in which {
        match c {
            RMatrixCheck::Qybe => {
                out.push(check_qybe(n, 1));
                if controls {
                    out.push(check_qybe(n, -1));
                }
            }
            RMatrixCheck::Unitarity => {
                out.push(check_unitarity(n));
                out.push(check_rbar(n));
            }
            RMatrixCheck::Eta => out.extend(check_eta_covariance(n)),
            RMatrixCheck::Classical => out.extend(check_classical(n)),
            RMatrixCheck::Cybe => {
                out.push(check_cybe(n, 1));
                out.push(check_cybe(n, 0));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::check::Status;
    use crate::scalar::identity_certify;

    #[test]
    fn r_entry_e11_e11() {
        let r = build_r(1);
        let sp = cnn(1, 2);
        let k = sp.pack(&[0, 0]);
        let want = &RatFun::one(2) - &RatFun::new(Poly::one(2), Poly::linear(&[1, -1], 0));
        assert_eq!(r.get(k, k).unwrap(), &want);
    }

    #[test]
    fn pjj_matches_second_sum() {
        for n in 1..=2 {
            assert_eq!(pjj(n), twisted_flip(n).neg());
        }
    }

    #[test]
    fn twisted_flip_is_eta_of_p() {
        for n in 1..=2 {
            assert_eq!(eta(&perm_p(n), 1, n), twisted_flip(n));
        }
    }

    #[test]
    fn r_tends_to_identity() {
        let r = build_r(2);
        let id = sym(&Op::identity_g(cnn(2, 2)), &RatFun::one(2));
        for (_, _, f) in r.sub(&id).entries() {
            assert!(f.num().degree_in(0) < f.den().degree_in(0));
        }
    }

    #[test]
    fn unitarity_entrywise_by_expansion() {
        // oracle: symbolic product of the two matrices
        let r = build_r(1);
        let rm = r.map(|f| f.negate_var(0).negate_var(1));
        let prod = r.mul(&rm);
        let m = RatFun::new(Poly::one(2), &Poly::linear(&[1, -1], 0) * &Poly::linear(&[1, -1], 0));
        let p = RatFun::new(Poly::one(2), &Poly::linear(&[1, 1], 0) * &Poly::linear(&[1, 1], 0));
        let c = &(&RatFun::one(2) - &m) - &p;
        let zero = RatFun::zero(2);
        for r_ in 0..4 {
            for c_ in 0..4 {
                let want = if r_ == c_ { c.clone() } else { zero.clone() };
                let got = prod.get(r_, c_).cloned().unwrap_or_else(|| zero.clone());
                let bound =
                    (0..2).map(|k| (got.num().degree_in(k) + want.den().degree_in(k)).max(want.num().degree_in(k) + got.den().degree_in(k))).max().unwrap();
                assert!(identity_certify(&got, &want, bound).unwrap().holds);
            }
        }
    }

    #[test]
    fn qybe_holds_and_control_fails() {
        for n in 1..=2 {
            assert_eq!(check_qybe(n, 1).status, Status::Pass);
        }
        let c = check_qybe(1, -1);
        assert_eq!(c.status, Status::Fail);
        assert!(c.control && c.as_expected() && c.witness.is_some());
    }

    #[test]
    fn qybe_brute_force_n1() {
        // oracle: 8x8 symbolic rational-function matrices in (u, v, w)
        let r = build_r(1);
        let lift = |perm: [usize; 2]| -> SuperOp<RatFun> {
            r.map(|g| {
                let mut num = Poly::zero(3);
                let mut den = Poly::zero(3);
                for (m, c) in g.num().terms() {
                    let mut e = vec![0; 3];
                    e[perm[0]] = m.0[0];
                    e[perm[1]] = m.0[1];
                    num.add_term(crate::scalar::Monomial(e), c.clone());
                }
                for (m, c) in g.den().terms() {
                    let mut e = vec![0; 3];
                    e[perm[0]] = m.0[0];
                    e[perm[1]] = m.0[1];
                    den.add_term(crate::scalar::Monomial(e), c.clone());
                }
                RatFun::new(num, den)
            })
        };
        let sp = cnn(1, 3);
        let r12 = lift([0, 1]).embed(&[0, 1], &sp);
        let r13 = lift([0, 2]).embed(&[0, 2], &sp);
        let r23 = lift([1, 2]).embed(&[1, 2], &sp);
        assert!(r12.mul(&r13).mul(&r23) == r23.mul(&r13).mul(&r12));
    }

    #[test]
    fn symmetry_checks_pass() {
        for n in 1..=2 {
            assert_eq!(check_unitarity(n).status, Status::Pass);
            assert_eq!(check_rbar(n).status, Status::Pass);
            for c in check_eta_covariance(n).into_iter().chain(check_classical(n)) {
                assert_eq!(c.status, Status::Pass, "{}", c.name);
            }
        }
    }

    #[test]
    fn cybe_twisted_and_untwisted() {
        for n in 1..=2 {
            assert_eq!(check_cybe(n, 1).status, Status::Pass);
            assert_eq!(check_cybe(n, 0).status, Status::Pass);
        }
    }

    #[test]
    fn twisted_r_rejects_bad_hypothesis() {
        let e = twisted_r(&perm_p(1), |x, s| eta(x, s, 1), 2, &GaussRat::one());
        assert_eq!(e, Err(RMatrixError::NotPrimitiveRoot));
        let e = twisted_r(&perm_p(1), |x, _| x.clone(), 2, &GaussRat::from_int(-1));
        assert_eq!(e, Err(RMatrixError::TwistHypothesis));
    }

    #[test]
    fn check_selection() {
        assert_eq!(RMatrixCheck::parse("eta"), Some(RMatrixCheck::Eta));
        let out = run_checks(1, &[RMatrixCheck::Qybe], true);
        assert_eq!(out.len(), 2);
        assert!(out[0].passed() && out[1].control && out[1].as_expected());
    }
}
