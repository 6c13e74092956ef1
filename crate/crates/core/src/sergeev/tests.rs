use super::*;
use crate::linalg::Mat;

fn g(k: i64) -> GaussRat {
    GaussRat::from_int(k)
}

fn hc(n: usize, p: usize) -> HnElement {
    HnElement::c(n, p)
}

fn ac(n: usize, p: usize) -> AnElement {
    AnElement::c(n, p)
}

#[test]
fn clifford_squares_and_anticommutes() {
    assert_eq!(hc(2, 1).mul(&hc(2, 1)), HnElement::scalar(2, g(-1)));
    let c12 = hc(2, 1).mul(&hc(2, 2));
    assert_eq!(hc(2, 2).mul(&hc(2, 1)), c12.neg());
    assert_eq!(c12.len(), 1);
    // c1c2c1 = c2
    assert_eq!(c12.mul(&hc(2, 1)), hc(2, 2));
}

#[test]
fn transposition_moves_clifford_generator() {
    let w = HnElement::transposition(2, 1, 2);
    assert_eq!(w.mul(&hc(2, 1)), hc(2, 2).mul(&w));
    let rep = hn_matrix_rep(1, 2);
    assert_eq!(rep.s(1).mul(rep.c(1)), rep.c(2).mul(rep.s(1)));
}

#[test]
fn size_mismatch() {
    assert_eq!(hn_mul(&HnElement::one(2), &HnElement::one(3)), Err(SergeevError::SizeMismatch(2, 3)));
    assert!(an_mul(&AnElement::one(1), &AnElement::one(2)).is_err());
}

#[test]
fn permutation_helpers() {
    for n in 0..5 {
        let ps = all_perms(n);
        assert_eq!(ps.len(), factorial(n));
        let mut ranks: Vec<usize> = ps.iter().map(|w| perm_rank(w)).collect();
        ranks.sort();
        assert_eq!(ranks, (0..factorial(n)).collect::<Vec<_>>());
        for w in &ps {
            let word = reduced_word(w);
            let back = word.iter().fold(perm_id(n), |v, &q| perm_mul(&v, &swap_perm(n, q, q + 1)));
            assert_eq!(&back, w);
            let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| w[i] > w[j]).count();
            assert_eq!(word.len(), inversions);
            assert_eq!(perm_mul(w, &perm_inv(w)), perm_id(n));
        }
    }
}

/// The matrix representation for `N = 2` is faithful on `H_2` and `H_3`,
/// which makes it an independent oracle for the product.
#[test]
fn product_matches_matrices() {
    for n in [2, 3] {
        let rep = hn_matrix_rep(2, n);
        let basis: Vec<HnBasis> = pbw_monomials(n, 0).into_iter().map(|b| b.hn()).collect();
        let imgs: Vec<Op> = basis.iter().map(|b| rep.basis_image(b)).collect();
        let dim = rep.space().dim();
        let mut m = Mat::zero(basis.len(), dim * dim);
        for (r, op) in imgs.iter().enumerate() {
            for (i, j, v) in op.entries() {
                m.set(r, i * dim + j, v.clone());
            }
        }
        assert_eq!(m.rank(), basis.len(), "n={n}");
        let step = if n == 2 { 1 } else { 7 };
        for (a, ia) in basis.iter().zip(&imgs).step_by(step) {
            for (b, ib) in basis.iter().zip(&imgs).step_by(step) {
                let p = HnElement::basis(a.clone(), g(1)).mul(&HnElement::basis(b.clone(), g(1)));
                assert_eq!(rep.image(&p), ia.mul(ib), "{a:?} {b:?}");
            }
        }
    }
}

#[test]
fn x_past_transposition() {
    let n = 2;
    let lhs = AnElement::x(n, 1).mul(&AnElement::transposition(n, 1, 2));
    let s = AnElement::transposition(n, 1, 2);
    let rhs = s.mul(&AnElement::x(n, 2)).sub(&AnElement::one(n)).sub(&ac(n, 1).mul(&ac(n, 2)));
    assert_eq!(lhs, rhs);
    assert_eq!(lhs.terms().count(), 3);
    let x2s = AnElement::x(n, 2).mul(&s);
    let want = s.mul(&AnElement::x(n, 1)).add(&AnElement::one(n)).sub(&ac(n, 1).mul(&ac(n, 2)));
    assert_eq!(x2s, want);
}

#[test]
fn x_past_clifford() {
    let n = 1;
    assert_eq!(AnElement::x(n, 1).mul(&ac(n, 1)), ac(n, 1).mul(&AnElement::x(n, 1)).neg());
    let n = 2;
    assert_eq!(AnElement::x(n, 1).mul(&ac(n, 2)), ac(n, 2).mul(&AnElement::x(n, 1)));
}

#[test]
fn x_monomials_commute() {
    let n = 2;
    let (x1, x2) = (AnElement::x(n, 1), AnElement::x(n, 2));
    let a = x1.mul(&x2).mul(&x2.mul(&x1));
    let want = AnElement::basis(AnBasis { c: 0, w: perm_id(n), x: vec![2, 2] }, g(1));
    assert_eq!(a, want);
}

#[test]
fn normal_form_of_words() {
    let n = 2;
    let e = an_normal_form(n, &[AnGen::X(1), AnGen::S(1)]);
    assert_eq!(e, AnElement::x(n, 1).mul(&AnElement::transposition(n, 1, 2)));
    assert_eq!(an_normal_form(n, &[]), AnElement::one(n));
    let t = e.triples();
    assert!(t.contains(&(vec![1, 2], vec![1, 2], vec![0, 0], g(-1))));
    assert!(t.contains(&(vec![], vec![2, 1], vec![0, 1], g(1))));
}

#[test]
fn defining_relations_hold() {
    for n in 1..=4 {
        for c in check_an_relations(n) {
            assert!(c.passed(), "{c:?}");
        }
    }
}

#[test]
fn associativity_random() {
    for n in 1..=3 {
        let c = check_associativity(n, 2, 30, 11 + n as u64);
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn gamma_examples() {
    assert!(gamma(0, &AnElement::x(3, 1)).is_zero());
    // γ_1(x_1) = (1 + c_2 c_1) w_21 in H_2
    let t = 2;
    let want = HnElement::one(t).add(&hc(t, 2).mul(&hc(t, 1))).mul(&HnElement::transposition(t, 2, 1));
    assert_eq!(gamma(1, &AnElement::x(1, 1)), want);
    // γ_0(x_2) = (1 + c_2 c_1) w_21
    assert_eq!(gamma(0, &AnElement::x(2, 2)), want);
    let rep = hn_matrix_rep(1, 2);
    assert_eq!(rep.image(&gamma(0, &AnElement::x(2, 2))), rep.image(&want));
}

#[test]
fn gamma_is_homomorphism() {
    for n in 1..=3 {
        for c in check_gamma(n, 2, 16, 5) {
            assert!(c.passed(), "{c:?}");
        }
    }
    let c = gamma_control(2);
    assert!(!c.passed() && c.as_expected());
}

/// `γ_m` is injective on x-degree `≤ m`, so products computed by the
/// rewriting must agree with products of images.
#[test]
fn rewriting_agrees_with_gamma_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..20 {
        let n = 2;
        let (a, b) = (random_basis(&mut rng, n, 1), random_basis(&mut rng, n, 1));
        let ab = a.mul(&b);
        let m = ab.x_degree() as usize;
        let mut gm = Gamma::new(m, n);
        assert_eq!(gm.apply(&ab), gm.apply(&a).mul(&gm.apply(&b)));
    }
}

#[test]
fn y_generators_and_relations() {
    let ys = y_generators(2);
    assert_eq!(ys[0], AnElement::x(2, 1));
    let w = AnElement::transposition(2, 1, 2);
    assert_eq!(w.mul(&ys[0]).mul(&w), ys[1]);
    for n in 1..=4 {
        for c in check_y_relations(n) {
            assert!(c.passed(), "{c:?}");
        }
    }
}

#[test]
fn y_bracket_n2_explicit() {
    let n = 2;
    let ys = y_generators(n);
    let (y1, y2) = (&ys[0], &ys[1]);
    let w = AnElement::transposition(n, 1, 2);
    let lhs = w.mul(&y1.mul(y2).sub(&y2.mul(y1)));
    let rhs = y1.sub(y2).add(&ac(n, 1).mul(&ac(n, 2)).mul(&y1.add(y2)));
    assert_eq!(lhs, rhs);
}

#[test]
fn pbw_independence() {
    // n=1, degree 2: 2 · 3 monomials in H_3 of dimension 48
    let c = pbw_independence_check(1, 2);
    assert!(c.passed(), "{c:?}");
    assert!(c.detail.contains("6 monomials") && c.detail.contains("dim 48"), "{}", c.detail);
    assert!(pbw_independence_check(2, 1).passed());
    let c0 = pbw_independence_check(2, 0);
    assert!(c0.passed() && c0.detail.contains("8 monomials"));
}

#[test]
fn pbw_independence_n3() {
    let c = pbw_independence_check(3, 2);
    assert!(c.passed(), "{c:?}");
    assert!(c.detail.contains("480 monomials"));
}

#[test]
fn matrix_rep_relations() {
    for (big_n, n) in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)] {
        for c in check_hn_rep(big_n, n, 8, 3) {
            assert!(c.passed(), "{c:?}");
        }
    }
    let rep = hn_matrix_rep(2, 2);
    let id = Op::identity_g(rep.space().clone());
    assert_eq!(rep.c(1).mul(rep.c(1)), id.neg());
    assert_eq!(rep.s(1).mul(rep.c(1)).mul(rep.s(1)), *rep.c(2));
}

#[test]
fn suite_runs() {
    let cfg = SergeevConfig::new(2, 1, 1, 7);
    let out = run_checks(&cfg, &SergeevCheck::ALL, true);
    assert!(out.iter().all(|c| c.as_expected()));
    assert!(out.iter().any(|c| c.control));
    assert_eq!(SergeevCheck::parse("pbw"), Some(SergeevCheck::Pbw));
}
