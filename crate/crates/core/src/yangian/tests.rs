use super::*;
use crate::check::Status;

fn g(k: i64) -> GaussRat {
    GaussRat::from_int(k)
}

fn entry(n: usize, i: i32, j: i32) -> (SIndex, SIndex) {
    (SIndex::new(i, n).unwrap(), SIndex::new(j, n).unwrap())
}

#[test]
fn blocks_roundtrip() {
    let f = EvalForm::new(1, &[g(2), g(5)], 1);
    let m = f.at(&g(7)).unwrap();
    let c = f.carrier();
    assert_eq!(assemble(1, &c, &blocks(1, &c, &m)), m);
}

#[test]
fn eval_table_matches_expansion() {
    for n in [1, 2] {
        let z = GaussRat::frac(3, 2);
        let form = EvalForm::new(n, core::slice::from_ref(&z), 1);
        let t = eval_rep(n, &z, 4);
        assert!(check_tables_agree(&t, &form.table(4), "t", "a").passed());
        assert!(check_table(&t, "t").passed());
    }
}

#[test]
fn first_generator_is_minus_f() {
    // T_ij^(1) -> -F_ji (-1)^{j̄}, independent of z
    let n = 2;
    let t = eval_rep(n, &g(9), 1);
    for i in SIndex::all(n) {
        for j in SIndex::all(n) {
            assert_eq!(*t.get(i, j, 1), f_op(n, j, i).scale(&-&sgn(j.parity() as u32)));
        }
    }
}

#[test]
fn closed_form_values_and_derivative() {
    let f = EvalForm::new(1, &[g(3), g(-1)], 1);
    assert!(f.at(&g(3)).is_none());
    assert!(f.at(&g(1)).is_none());
    let u = GaussRat::frac(5, 7);
    // product rule against the single-point forms
    let d = f.deriv_at(&u).unwrap();
    let a = EvalForm::new(1, &[g(3)], 1);
    let b = EvalForm::new(1, &[g(-1)], 1);
    let sp = cnn(1, 3);
    let ta = a.at(&u).unwrap().embed(&[0, 1], &sp);
    let tb = b.at(&u).unwrap().embed(&[0, 2], &sp);
    let da = a.deriv_at(&u).unwrap().embed(&[0, 1], &sp);
    let db = b.deriv_at(&u).unwrap().embed(&[0, 2], &sp);
    assert_eq!(d, da.mul(&tb).add(&ta.mul(&db)));
    // single point: d/du (1 - P/(u-z) + PJJ/(u+z)) = P/(u-z)^2 - PJJ/(u+z)^2
    let one = EvalForm::new(1, &[g(3)], 1);
    let want = perm_p_scaled(&(&(&u - &g(3)) * &(&u - &g(3))).recip()).sub(&crate::rmatrix::pjj(1).scale(&(&(&u + &g(3)) * &(&u + &g(3))).recip()));
    assert_eq!(one.deriv_at(&u).unwrap(), want);
}

fn perm_p_scaled(c: &GaussRat) -> Op {
    crate::superop::perm_p(1).scale(c)
}

#[test]
fn rtt_single_point() {
    let f = EvalForm::new(1, &[g(3)], 1);
    assert_eq!(check_rtt(&f, "z=3").status, Status::Pass);
    assert_eq!(check_eta_symmetry(&f, "z=3").status, Status::Pass);
}

#[test]
fn rtt_two_points_and_control() {
    let pts = [g(1), g(2)];
    assert_eq!(check_rtt(&EvalForm::new(1, &pts, 1), "ok").status, Status::Pass);
    let bad = check_rtt(&EvalForm::new(1, &pts, -1), "bad").as_control();
    assert_eq!(bad.status, Status::Fail);
    assert!(bad.as_expected());
}

#[test]
fn comultiplication_matches_product_form() {
    let pts = [g(1), GaussRat::frac(-1, 2)];
    let f = EvalForm::new(2, &pts, 1);
    let o = check_tables_agree(&f.table(3), &multi_eval_rep(2, &pts, 3), "c", "a");
    assert!(o.passed(), "{o:?}");
}

#[test]
fn centre_in_eval_rep() {
    let f = EvalForm::new(1, &[g(2)], 1);
    for o in check_centre(&f, 6, "z=2") {
        assert!(o.as_expected(), "{o:?}");
    }
}

#[test]
fn centre_two_points_group_like() {
    let f = EvalForm::new(1, &[g(1), g(3)], 1);
    for o in check_centre(&f, 4, "two") {
        assert!(o.as_expected(), "{o:?}");
    }
    assert!(check_group_like(1, &g(1), &g(3), 4).passed());
}

#[test]
fn centre_images_in_defining_rep() {
    for n in [1, 2] {
        for o in check_centre_images(n) {
            assert!(o.as_expected(), "{o:?}");
            assert_eq!(o.discrepancy.is_some(), !o.passed());
        }
    }
}

#[test]
fn centre_image_formula_s0() {
    // s = 0: -Σ_k F_kk = -2E
    let f = centre_image_formula(2, 0, false);
    assert_eq!(f, Op::identity_g(cnn(2, 1)).scale(&g(-2)));
}

#[test]
fn centre_at_zero_is_geometric() {
    // T(u) = 1 - K/u with K^2 = 2, so T^{-1} = (1 + K/u)/(1 - 2/u^2) and
    // Z(u) = 1/(1 - 2/u^2)
    for n in [1, 2] {
        let z = centre_series(&EvalForm::new(n, &[GaussRat::zero()], 1), 8);
        for s in 0..=8 {
            let want = if s % 2 == 0 { g(1 << (s / 2)) } else { GaussRat::zero() };
            assert_eq!(z.scalar(s), Some(want));
        }
    }
}

#[test]
fn minus_sign_centre_formulas_disagree() {
    let f = EvalForm::new(1, &[GaussRat::zero()], 1);
    let d = CentreData::new(&f, 4);
    let z = d.centre();
    let minus = d.centre_from_derivative(-1);
    // the minus-sign form equals 2 - Z(u)
    assert_eq!(minus.scalar(2), Some(g(-2)));
    assert_eq!(minus.scalar(4), Some(g(-4)));
    assert_eq!(z.scalar(2), Some(g(2)));
    // the ungraded Z^(4) image vanishes in the defining representation
    assert!(centre_image_formula(1, 2, false).is_zero());
    for o in check_centre_images(1) {
        assert!(o.as_expected(), "{o:?}");
    }
}

#[test]
fn minus_sign_derivative_form_is_not_group_like() {
    let order = 4;
    let zs = |pts: &[GaussRat]| CentreData::new(&EvalForm::new(1, pts, 1), order).centre_from_derivative(-1);
    let (a, b, ab) = (zs(&[g(1)]), zs(&[g(3)]), zs(&[g(1), g(3)]));
    let mut prod = Op::zero_op(ab.coeff(2).rows().clone());
    for r in 0..=2 {
        prod = prod.add(&a.coeff(r).tensor(b.coeff(2 - r)));
    }
    assert_eq!(prod, *ab.coeff(2));
    let mut prod4 = Op::zero_op(ab.coeff(4).rows().clone());
    for r in 0..=4 {
        prod4 = prod4.add(&a.coeff(r).tensor(b.coeff(4 - r)));
    }
    assert_ne!(prod4, *ab.coeff(4));
}

#[test]
fn co_poisson_low_degrees() {
    let (a, b) = default_copoisson_grid(4);
    for n in [1, 2] {
        for o in co_poisson_check(n, 4, &a, &b) {
            assert!(o.passed(), "{o:?}");
        }
    }
}

#[test]
fn co_poisson_detects_wrong_r() {
    // dropping the twisted term of r breaks the identity at s = 2
    let (i, j) = entry(1, 1, 1);
    let sp = cnn(1, 2);
    let (z1, z2) = (g(1), g(4));
    let x = psi_ev(1, i, j, 2, &z1).embed(&[0], &sp).add(&psi_ev(1, i, j, 2, &z2).embed(&[1], &sp));
    let r = Pencil::classical(1, 0).at(&z1, &z2).unwrap();
    let c = x.mul(&r).sub(&r.mul(&x));
    assert_ne!(c, copoisson_from_coproduct(1, i, j, 2, &z1, &z2));
}

#[test]
fn trivial_rep_has_zero_table() {
    let t = multi_eval_rep(2, &[], 3);
    assert_eq!(t.carrier().dim(), 1);
    assert!(t.get(SIndex::from_ord(0, 2), SIndex::from_ord(0, 2), 2).is_zero());
}

#[test]
fn run_all_small() {
    let out = run_all(1, &[g(1), g(2)], 3, true);
    for o in &out {
        assert!(o.as_expected(), "{o:?}");
    }
}

#[test]
fn check_selection() {
    assert_eq!(YangianCheck::parse("centre"), Some(YangianCheck::Centre));
    assert_eq!(YangianCheck::parse("bogus"), None);
    let out = run_checks(1, &[g(1), g(2)], 2, &[YangianCheck::Comult], true);
    assert_eq!(out.len(), 1);
    assert!(out[0].passed());
}
