use super::*;
use crate::check::Status;

fn g(k: i64) -> GaussRat {
    GaussRat::from_int(k)
}

fn ix(n: usize, i: i32) -> SIndex {
    SIndex::new(i, n).unwrap()
}

#[test]
fn dual_blocks_roundtrip() {
    let img = dual_eval_rep(1, &[g(1), g(3)], 2);
    let sp = Space::tensor(img.carrier(), &cnn(1, 1));
    let m = Pencil::r_matrix(1, 1).embed(&[0, 2], &sp).at(&g(5), &g(2)).unwrap();
    assert_eq!(dual_assemble(1, img.carrier(), &dual_blocks(1, img.carrier(), &m)), m);
}

#[test]
fn dual_table_matches_display() {
    for n in [1, 2] {
        let img = dual_eval_rep(n, &[g(1)], 3);
        for c in check_dual_table(&img, "t") {
            assert!(c.passed(), "{c:?}");
        }
    }
}

#[test]
fn first_dual_generator_at_z_one() {
    // display at s=1, z=1: -(E_ji z^-1 + E_{-j,-i} (-z)^-1)(-1)^ī = -(E_ji - E_{-j,-i})(-1)^ī
    let n = 1;
    let img = dual_eval_rep(n, &[g(1)], 1);
    for i in SIndex::all(n) {
        for j in SIndex::all(n) {
            let want = matrix_unit(n, j, i).sub(&matrix_unit(n, j.neg(), i.neg())).scale(&-&sgn(i.parity() as u32));
            assert_eq!(*img.get(i, j, 1).coeff(1), want);
            assert!(img.get(i, j, 1).coeff(0).is_zero());
        }
    }
}

#[test]
fn dual_closed_form_relations() {
    for n in [1, 2] {
        for c in check_dual_relations(n) {
            assert_eq!(c.status, Status::Pass, "{c:?}");
        }
    }
}

#[test]
fn dual_coproduct_matches_product_form() {
    for n in [1, 2] {
        let (a, b) = (GaussRat::frac(1, 2), g(3));
        let two = dual_eval_rep(n, &[a.clone(), b.clone()], 3);
        let via = dual_eval_rep(n, &[a], 3).coproduct(&dual_eval_rep(n, &[b], 3));
        assert_eq!(two, via);
    }
}

#[test]
fn unit_pairing() {
    let mut p = Pairing::new(1);
    assert!(p.value(&[], &[]).is_one());
    let t = Gen::new(ix(1, 1), ix(1, 1), 1);
    let ts = Gen::new(ix(1, 1), ix(1, 1), -1);
    assert!(p.value(&[t], &[]).is_zero());
    assert!(p.value(&[], &[ts]).is_zero());
}

#[test]
fn degree_one_values_from_r_matrix() {
    // u^{-1} v^0 coefficient of R_12(u,v):
    // -Σ E_ab⊗E_ba (-1)^b̄ - Σ E_ab⊗E_{-b,-a} (-1)^b̄
    let n = 1;
    let mut p = Pairing::new(n);
    let mut nonzero = 0;
    for a in SIndex::all(n) {
        for b in SIndex::all(n) {
            for c in SIndex::all(n) {
                for d in SIndex::all(n) {
                    let mut want = GaussRat::zero();
                    let sb = sgn(b.parity() as u32);
                    if c == b && d == a {
                        want = &want - &sb;
                    }
                    if c == b.neg() && d == a.neg() {
                        want = &want - &sb;
                    }
                    let got = p.value(&[Gen::new(a, b, 1)], &[Gen::new(c, d, -1)]);
                    assert_eq!(got, want, "a={a:?} b={b:?} c={c:?} d={d:?}");
                    nonzero += !want.is_zero() as usize;
                }
            }
        }
    }
    assert_eq!(nonzero, 8);
}

#[test]
fn degree_one_with_higher_dual_vanishes() {
    let n = 1;
    let mut p = Pairing::new(n);
    let t = Gen::new(ix(n, 1), ix(n, -1), 1);
    for w in [vec![Gen::new(ix(n, 1), ix(n, 1), -2)], vec![Gen::new(ix(n, -1), ix(n, 1), -1), Gen::new(ix(n, 1), ix(n, 1), -1)]] {
        assert!(p.value(&[t], &w).is_zero());
    }
}

#[test]
fn support_condition_to_degree_four() {
    let mut p = Pairing::new(1);
    let c = check_support(&mut p, 4);
    assert!(c.passed(), "{c:?}");
    let t = pairing_table(&mut p, 4);
    assert!(check_table_support(&t).passed());
    assert!(check_parity_support(&mut p, 2).passed());
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

/// Values vanish unless the dual monomial has at least as many factors; on
/// monomials of equal length the matrix is diagonal up to sign with entries
/// the products of factorials of multiplicities of repeated factors. The
/// matrix is therefore triangular after ordering by length.
fn assert_gram_structure(gram: &Gram) {
    let m = &gram.matrix;
    let mut longer = 0;
    for a in 0..m.rows {
        for b in 0..m.cols {
            let v = m.at(a, b);
            let (la, lb) = (gram.basis.y[a].len(), gram.basis.dual[b].len());
            if v.is_zero() {
                continue;
            }
            assert!(lb >= la, "({a},{b}) pairs a shorter dual monomial");
            if lb > la {
                longer += 1;
                continue;
            }
            assert_eq!(a, b, "off-diagonal ({a},{b}) among equal lengths in degree {}", gram.basis.degree);
        }
        let mono = &gram.basis.y[a];
        let mut want = 1;
        let mut k = 0;
        while k < mono.len() {
            let run = mono[k..].iter().take_while(|x| **x == mono[k]).count();
            want *= factorial(run);
            k += run;
        }
        let v = m.at(a, a);
        assert!(*v == g(want) || *v == g(-want), "diagonal {a}: {v} vs ±{want}");
    }
    if gram.basis.degree >= 2 {
        assert!(longer > 0, "expected values against longer dual monomials");
    }
}

#[test]
fn gram_small_degrees() {
    let mut p = Pairing::new(1);
    let g0 = gram_matrix(&mut p, 0).unwrap();
    assert_eq!((g0.matrix.rows, g0.rank), (1, 1));
    assert!(g0.matrix.at(0, 0).is_one());
    for s in 1..=3 {
        let gr = gram_matrix(&mut p, s).unwrap();
        assert_eq!(gr.rank, gr.matrix.rows, "degree {s}");
        assert_gram_structure(&gr);
    }
    // gr_1 has the dimension of q_1, gr_2 adds products of degree-one elements
    assert_eq!(graded_basis(1, 1).unwrap().y.len(), 2);
    assert_eq!(graded_basis(1, 2).unwrap().y.len(), 4);
}

#[test]
fn gram_n2() {
    let mut p = Pairing::new(2);
    for s in 1..=2 {
        let gr = gram_matrix(&mut p, s).unwrap();
        assert_eq!(gr.rank, gr.matrix.rows);
        assert_gram_structure(&gr);
    }
    assert_eq!(graded_basis(2, 1).unwrap().y.len(), 8);
}

#[test]
fn hopf_pairing_laws() {
    let mut p = Pairing::new(1);
    for c in check_hopf_pairing(&mut p, 3) {
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn hopf_example_triple() {
    let n = 1;
    let mut p = Pairing::new(n);
    let t = Gen::new(ix(n, 1), ix(n, 1), 1);
    let w = Gen::new(ix(n, 1), ix(n, 1), -2);
    let lhs = p.value(&[t, t], &[w]);
    let rhs = p.value_tensor(&vec![(GaussRat::one(), vec![t], vec![t])], &coproduct_gen(n, w));
    assert_eq!(lhs, rhs);
}

#[test]
fn counit_cases() {
    let n = 1;
    let mut p = Pairing::new(n);
    for x in generators(n, 2, false) {
        assert!(p.value(&[x], &[]).is_zero());
    }
    for w in generators(n, 2, true) {
        assert!(p.value(&[], &[w]).is_zero());
    }
}

#[test]
fn universal_r_degree_zero() {
    let mut p = Pairing::new(1);
    let r = truncated_universal_r(&mut p, 0).unwrap();
    assert_eq!(r.terms, vec![(GaussRat::one(), Vec::new(), Vec::new())]);
    assert!(check_universal_r_evaluation(&mut p, 0, &[g(2)]).passed());
}

#[test]
fn universal_r_evaluation() {
    let mut p = Pairing::new(1);
    let ws = [g(0), g(1), GaussRat::frac(5, 3)];
    for d in 1..=2 {
        let c = check_universal_r_evaluation(&mut p, d, &ws);
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn universal_r_coproducts() {
    let mut p = Pairing::new(1);
    let (a, b) = (g(1), GaussRat::frac(1, 2));
    let (w1, w2) = (g(2), GaussRat::frac(-1, 3));
    for c in check_universal_coproducts(&mut p, 2, (&a, &b), (&w1, &w2)) {
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn double_relation_and_control() {
    for n in [1, 2] {
        assert!(check_double_relation(n, 1).passed());
    }
    let c = check_double_relation(1, 0);
    assert_eq!(c.status, Status::Fail);
    assert!(c.as_expected());
}

#[test]
fn double_relation_two_factors() {
    assert!(check_double_relation_pair(1).passed());
}

#[test]
fn basis_guard() {
    assert!(matches!(graded_basis(3, 9), Err(PairingError::BasisOverflow { .. })));
}

#[test]
fn compositions_count() {
    // 2^d compositions of total ≤ d, counting the empty one
    assert_eq!(compositions(4).len(), 16);
}

#[test]
fn hopf_law_needs_koszul_sign() {
    let n = 1;
    let mut p = Pairing::new(n);
    let odd = Gen::new(ix(n, 1), ix(n, -1), 1);
    let mut broken = false;
    for w in generators(n, 2, true) {
        let lhs = p.value(&[odd, odd], &[w]);
        let t = vec![(GaussRat::one(), vec![odd], vec![odd])];
        let d = coproduct_gen(n, w);
        assert_eq!(lhs, p.value_tensor(&t, &d));
        broken |= lhs != p.value_tensor_with(&t, &d, false);
    }
    assert!(broken);
}
