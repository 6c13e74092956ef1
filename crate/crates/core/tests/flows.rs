use yqn_core::check::Status;
use yqn_core::drinfeld::{functor_apply, principal_series};
use yqn_core::sergeev::{gamma, y_generators};
use yqn_core::yangian::{centre_series, check_rtt, check_tables_agree, eval_rep, multi_eval_rep, ClosedForm, EvalForm};
use yqn_core::GaussRat;

fn pts(v: &[&str]) -> Vec<GaussRat> {
    v.iter().map(|s| s.parse().unwrap()).collect()
}

#[test]
fn text_round_trip() {
    for s in ["0/1", "-3/7", "1/2+3/1*i", "-5/1-1/4*i"] {
        assert_eq!(s.parse::<GaussRat>().unwrap().to_string(), s);
    }
    assert!("1/0".parse::<GaussRat>().is_err());
}

#[test]
fn coproduct_of_evaluation_tables_is_the_product_form() {
    let z = pts(&["2", "-1/3"]);
    let form = EvalForm::new(1, &z, 1);
    let c = check_tables_agree(&form.table(3), &multi_eval_rep(1, &z, 3), "coproduct", "comultiplication");
    assert_eq!(c.status, Status::Pass, "{c:?}");
    assert_eq!(check_rtt(&form, "two points").status, Status::Pass);
    assert_eq!(check_rtt(&EvalForm::new(1, &z, -1), "mutated").status, Status::Fail);
}

#[test]
fn one_point_drinfeld_image_is_the_evaluation_module() {
    for n in 1..=2 {
        let z = pts(&["3/2"]);
        let m = functor_apply(n, &principal_series(&z), 3).unwrap();
        assert_eq!(m.dim(), 2 * n);
        let c = check_tables_agree(m.table(), &eval_rep(n, &z[0], 3), "image", "evaluation representation");
        assert_eq!(c.status, Status::Pass, "{c:?}");
    }
}

#[test]
fn centre_is_scalar_on_evaluation_modules() {
    let z = centre_series(&EvalForm::new(2, &pts(&["1", "4"]), 1), 4);
    for s in 1..=4 {
        assert!(z.scalar(s).is_some(), "Z^({s})");
    }
    assert!(z.scalar(1).unwrap().is_zero());
}

#[test]
fn y_elements_vanish_under_gamma_zero() {
    for y in y_generators(3) {
        assert!(gamma(0, &y).is_zero());
        assert!(!gamma(1, &y).is_zero());
    }
}
