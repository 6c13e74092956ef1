use super::*;

fn q(a: i64, b: i64) -> GaussRat {
    GaussRat::frac(a, b)
}

#[test]
fn principal_series_one_point() {
    let z = g(2);
    let u = principal_series(core::slice::from_ref(&z));
    assert_eq!(u.dim(), 2);
    // x·1 = z, x·c = -z c
    assert_eq!(u.x(1).get(0, 0), Some(&z));
    assert_eq!(u.x(1).get(1, 1), Some(&-&z));
    assert_eq!(u.x(1).nnz(), 2);
    assert_eq!(u.parities(), std::vec![0, 1]);
}

#[test]
fn principal_series_two_points() {
    let (z1, z2) = (g(3), q(-1, 2));
    let u = principal_series(&[z1, z2.clone()]);
    assert_eq!(u.dim(), 8);
    // x_1 w_12 = w_12 x_2 - 1 - c_1 c_2
    let w = HnBasis { c: 0, w: std::vec![1, 0] }.index();
    let one = HnBasis { c: 0, w: std::vec![0, 1] }.index();
    let cc = HnBasis { c: 0b11, w: std::vec![0, 1] }.index();
    let col: std::vec::Vec<(usize, GaussRat)> = u.x(1).column(w).iter().map(|(r, v)| (*r as usize, v.clone())).collect();
    let mut want = std::vec![(w, z2), (one, g(-1)), (cc, g(-1))];
    want.sort_by_key(|e| e.0);
    assert_eq!(col, want);
}

#[test]
fn module_constructor_rejects_bad_matrices() {
    let u = principal_series(&[g(1), g(2)]);
    let bad_x = std::vec![u.x(1).scale(&g(2)), u.x(2).clone()];
    let c = std::vec![u.c(1).clone(), u.c(2).clone()];
    let err = AnModule::new(2, u.parities(), std::vec![u.s(1).clone()], c.clone(), bad_x).unwrap_err();
    assert!(matches!(err, DrinfeldError::Relation(_)), "{err}");
    let odd_x = std::vec![u.c(1).clone(), u.x(2).clone()];
    assert!(matches!(AnModule::new(2, u.parities(), std::vec![u.s(1).clone()], c, odd_x), Err(DrinfeldError::Malformed(_))));
}

#[test]
fn act_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for u in [principal_series(&[g(2), q(1, 3)]), pullback_module(1, 2, 1), principal_series(&[g(1), g(-1), g(4)])] {
        let n = u.n();
        for _ in 0..12 {
            let a = crate::sergeev::random_basis(&mut rng, n, 2);
            let b = crate::sergeev::random_basis(&mut rng, n, 2);
            assert_eq!(u.act(&a.mul(&b)), u.act(&a).mul(&u.act(&b)), "{a} · {b}");
        }
    }
}

#[test]
fn pullback_modules_satisfy_relations() {
    for (m, n) in [(0, 2), (1, 1), (1, 2), (2, 1)] {
        let u = pullback_module(m, n, 1);
        assert_eq!(u.dim(), 1 << (m + n));
        assert_eq!(u.relation_defect(), None);
    }
    // γ_0(x_1) = 0
    assert!(pullback_module(0, 2, 1).x(1).is_zero());
}

#[test]
fn min_poly_examples() {
    let sp = Space::new(std::vec![std::vec![0, 0, 0]]);
    let diag = Op::from_entries(sp.clone(), sp.clone(), [(0, 0, g(2)), (1, 1, g(-2)), (2, 2, g(2))]);
    assert_eq!(min_poly(&diag), &(&Poly::var(1, 0) * &Poly::var(1, 0)) - &Poly::constant(1, g(4)));
    let jordan = Op::from_entries(sp.clone(), sp.clone(), [(0, 0, g(1)), (0, 1, g(1)), (1, 1, g(1)), (2, 2, g(1))]);
    let x1 = &Poly::var(1, 0) - &Poly::constant(1, g(1));
    assert_eq!(min_poly(&jordan), &x1 * &x1);
    // (u-1)^2 (u+1)^2 covers both resolvents
    let plus = &Poly::var(1, 0) + &Poly::constant(1, g(1));
    assert_eq!(pm_min_poly(&jordan), &(&x1 * &x1) * &(&plus * &plus));
}

#[test]
fn coinvariants_trivial_rank() {
    let u = AnModule::new(0, std::vec![0, 1, 0], std::vec![], std::vec![], std::vec![]).unwrap();
    for big_n in [1, 2] {
        let c = coinvariants(big_n, &u).unwrap();
        assert_eq!(c.dim(), 3);
        assert_eq!(c.relation_dim(), 0);
    }
}

#[test]
fn coinvariants_of_one_point() {
    for big_n in [1, 2] {
        let c = coinvariants(big_n, &principal_series(&[g(5)])).unwrap();
        assert_eq!(c.dim(), 2 * big_n);
        let id = Op::identity_g(c.ambient().clone());
        assert_eq!(c.alpha_z(1).mul(c.alpha_z(1)), id);
        // the section picks a ⊗ 1
        assert_eq!(c.basis(), (0..2 * big_n).map(|a| 2 * a).collect::<std::vec::Vec<_>>());
    }
}

#[test]
fn projection_and_section() {
    for (big_n, u) in [(1, principal_series(&[g(1), g(3)])), (2, principal_series(&[g(1), q(2, 3)])), (1, pullback_module(1, 2, 1))] {
        let c = coinvariants(big_n, &u).unwrap();
        let idv = Op::identity_g(c.carrier().clone());
        assert_eq!(c.projection().mul(c.section()), idv);
        let id = Op::identity_g(c.ambient().clone());
        for a in c.group_elements() {
            assert!(c.projection().mul(&a.sub(&id)).is_zero());
        }
        let lift = c.invariant_lift();
        assert_eq!(c.projection().mul(&lift), idv);
        for a in c.group_elements() {
            assert_eq!(a.mul(&lift), lift);
        }
        assert_eq!(c.projection().parity(), Some(0));
    }
}

/// The relations from generators alone span those of the whole group.
#[test]
fn generator_relations_span_group_relations() {
    for big_n in [1, 2] {
        for u in [principal_series(&[g(2), g(7)]), pullback_module(1, 2, 1)] {
            let c = check_generator_span(big_n, &u);
            assert!(c.passed(), "{c:?}");
        }
    }
}

#[test]
fn one_point_image_is_evaluation() {
    for big_n in [1, 2] {
        for z in [g(0), g(2), q(-3, 4)] {
            for c in check_principal_one_point(big_n, &z, 4) {
                assert!(c.passed(), "{c:?}");
            }
        }
    }
}

#[test]
fn table_symmetry_and_rtt() {
    for (big_n, u) in [(1, principal_series(&[g(2), q(1, 3)])), (2, principal_series(&[g(1)])), (1, pullback_module(1, 2, 1))] {
        let m = functor_apply(big_n, &u, 4).unwrap();
        for c in check_module(&m, "t", true) {
            assert!(c.passed(), "{c:?}");
        }
    }
}

#[test]
fn product_and_sum_agree() {
    for (big_n, u) in [
        (1, principal_series(&[g(2), q(1, 3)])),
        (2, principal_series(&[g(-1), g(4)])),
        (1, principal_series(&[g(1), g(2), g(3)])),
        (2, pullback_module(1, 2, 1)),
    ] {
        let m = functor_apply(big_n, &u, 2).unwrap();
        let c = check_forms_agree(&m, "t");
        assert!(c.passed(), "{c:?}");
        let c = check_commutation(&m, 3, "t");
        assert!(c.passed(), "{c:?}");
    }
}

/// On the section rather than on invariant lifts the product formula gives
/// a different operator, so the lift matters.
#[test]
fn product_needs_invariant_lift() {
    let m = functor_apply(1, &principal_series(&[g(2), q(1, 3)]), 2).unwrap();
    let prod = m.product_form();
    let c = m.coinvariants();
    let tens = cnn(1, 3);
    let u = g(7);
    let a = ambient_product(&m, &u, &tens);
    let aux = Op::identity_g(cnn(1, 1));
    let on_section = aux.tensor(c.projection()).mul(&a.mul(&aux.tensor(c.section())));
    assert_ne!(on_section, prod.at(&u).unwrap());
    let on_lift = aux.tensor(c.projection()).mul(&a.mul(&aux.tensor(&c.invariant_lift())));
    assert_eq!(on_lift, prod.at(&u).unwrap());
}

/// The product formula as a full operator on `C^{N|N} ⊗ W`.
fn ambient_product(m: &YqnModule, u: &GaussRat, tens: &Arc<Space>) -> Op {
    let n = m.module().n();
    let big_n = m.big_n();
    let j = j_op(big_n);
    let mut acc = Op::identity_g(Space::tensor(tens, m.module().space()));
    for p in 1..=n {
        let pp = perm_p(big_n).embed(&[0, p], tens);
        let pjj = pp.mul(&j.embed(&[0], tens)).mul(&j.embed(&[p], tens));
        let id = m.module().identity();
        let a = invert_op(&id.scale(u).sub(m.module().x(p))).unwrap();
        let b = invert_op(&id.scale(u).add(m.module().x(p))).unwrap();
        let f = Op::identity_g(acc.rows().clone()).sub(&pp.tensor(&a)).add(&pjj.tensor(&b));
        acc = acc.mul(&f);
    }
    acc
}

#[test]
fn derivatives_agree() {
    let m = functor_apply(1, &principal_series(&[g(2), g(5)]), 2).unwrap();
    let (p, s) = (m.product_form(), m.sum_form());
    for u in [g(1), q(7, 3), g(-4)] {
        assert_eq!(p.deriv_at(&u).unwrap(), s.deriv_at(&u).unwrap(), "u={u}");
    }
    assert!(p.at(&g(2)).is_none());
    for big_n in [1, 2] {
        let z = q(3, 2);
        let m = functor_apply(big_n, &principal_series(core::slice::from_ref(&z)), 1).unwrap();
        let e = crate::yangian::EvalForm::new(big_n, &[z], 1);
        let sp = aux_space(big_n, m.carrier());
        for u in [g(1), q(-5, 7)] {
            assert_eq!(m.product_form().at(&u).unwrap(), reframe(&e.at(&u).unwrap(), &sp, &sp));
            assert_eq!(m.product_form().deriv_at(&u).unwrap(), reframe(&e.deriv_at(&u).unwrap(), &sp, &sp));
        }
    }
}

#[test]
fn induction_product_dimensions() {
    let u = principal_series(&[g(1)]);
    let v = principal_series(&[g(4)]);
    let w = odot(&u, &v).unwrap();
    assert_eq!(w.dim(), 8);
    assert_eq!(w.relation_defect(), None);
    let p = pullback_module(1, 1, 1);
    let w2 = odot(&p, &principal_series(&[g(2), g(3)])).unwrap();
    // binomial(3, 1) · 4 · 8
    assert_eq!(w2.dim(), 96);
    assert_eq!(shuffles(2, 2).len(), 6);
    assert_eq!(shuffles(1, 2), std::vec![std::vec![0, 1, 2], std::vec![1, 0, 2], std::vec![2, 0, 1]]);
}

#[test]
fn induction_product_of_principal_series() {
    for zs in [std::vec![g(2), q(1, 3)], std::vec![g(1), g(-2), g(5)]] {
        let c = check_odot_principal(&zs);
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn induced_image_is_tensor_product() {
    for big_n in [1, 2] {
        let (u, v) = (principal_series(&[g(3)]), principal_series(&[q(-1, 2)]));
        let out = check_induction_tensor(big_n, &u, &v, 3, "t");
        assert_eq!(out.len(), 3);
        assert!(out[..2].iter().all(|c| c.passed()), "{out:?}");
        assert!(out[2].discrepancy.is_some() && !out[2].passed());
    }
    let (u, v) = (principal_series(&[g(1), g(2)]), principal_series(&[g(5)]));
    for c in check_induction_tensor(1, &u, &v, 2, "t") {
        assert!(c.as_expected(), "{c:?}");
    }
}

/// Dense solve of `a X = X b` over all entries, without grading.
fn dense_intertwiners(a: &[Op], b: &[Op]) -> std::vec::Vec<Mat> {
    let (da, db) = (a[0].rows().dim(), b[0].rows().dim());
    let nv = da * db;
    let mut rows = std::vec::Vec::new();
    for (x, y) in a.iter().zip(b) {
        let (mx, my) = (Mat::from_op(x), Mat::from_op(y));
        for r in 0..da {
            for c in 0..db {
                let mut row = std::vec![GaussRat::zero(); nv];
                for k in 0..da {
                    row[k * db + c] = &row[k * db + c] + mx.at(r, k);
                }
                for k in 0..db {
                    row[r * db + k] = &row[r * db + k] - my.at(k, c);
                }
                rows.push(row);
            }
        }
    }
    let mut m = Mat::zero(rows.len(), nv);
    for (r, row) in rows.into_iter().enumerate() {
        for (c, v) in row.into_iter().enumerate() {
            m.set(r, c, v);
        }
    }
    m.kernel()
        .into_iter()
        .map(|v| {
            let mut x = Mat::zero(da, db);
            for (k, a) in v.into_iter().enumerate() {
                x.set(k / db, k % db, a);
            }
            x
        })
        .collect()
}

fn ordered_generators(t: &GenImage) -> std::vec::Vec<Op> {
    let mut out = std::vec::Vec::new();
    for s in 1..=t.smax() {
        for i in SIndex::all(t.n()) {
            for j in SIndex::all(t.n()) {
                out.push(t.get(i, j, s).clone());
            }
        }
    }
    out
}

#[test]
fn even_intertwiners_match_dense_solve() {
    let (u, v) = (principal_series(&[g(3)]), principal_series(&[q(-1, 2)]));
    let uo = odot(&u, &v).unwrap();
    let (v1, v2, vo) = (functor_apply(1, &u, 3).unwrap(), functor_apply(1, &v, 3).unwrap(), functor_apply(1, &uo, 3).unwrap());
    for t in [v1.table().coproduct(v2.table()), v2.table().coproduct(v1.table())] {
        let dense = dense_intertwiners(&ordered_generators(vo.table()), &ordered_generators(&t));
        let even = even_intertwiners(vo.table(), &t);
        assert_eq!((dense.len(), even.len()), (1, 1));
        let (x, y) = (&dense[0], Mat::from_op(&even[0]));
        let (r, c) = (0..4).flat_map(|r| (0..4).map(move |c| (r, c))).find(|&(r, c)| !y.at(r, c).is_zero()).unwrap();
        let ratio = x.at(r, c) / y.at(r, c);
        for r in 0..4 {
            for c in 0..4 {
                assert_eq!(*x.at(r, c), &ratio * y.at(r, c));
            }
        }
    }
    let ends = even_intertwiners(vo.table(), vo.table());
    assert_eq!(ends.len(), 1);
    let e = Mat::from_op(&ends[0]);
    assert_eq!(ends[0], Op::identity_g(vo.carrier().clone()).scale(e.at(0, 0)));
}

#[test]
fn conjugate_modules_give_equivalent_images() {
    for (big_n, u) in [(1, principal_series(&[g(2), g(3)])), (2, principal_series(&[q(1, 2)])), (1, pullback_module(1, 2, 1))] {
        let c = check_functoriality(big_n, &u, 3, "t");
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn irreducible_one_point_image() {
    let cfg = IrreducibilityConfig::default();
    for z in [g(2), q(-5, 3)] {
        let m = functor_apply(1, &principal_series(&[z]), 3).unwrap();
        match irreducibility_test(&table_generators(m.table()), &cfg) {
            Irreducibility::Irreducible { kind, algebra_dim, .. } => {
                assert_eq!(kind, SchurType::Matrix);
                assert_eq!(algebra_dim, 4);
            }
            other => panic!("{other:?}"),
        }
        for c in check_irreducible(&m, &cfg, 4, "t") {
            assert!(c.passed(), "{c:?}");
        }
    }
}

/// At `z = 0` only `q_1` acts, and `C^{1|1}` is its queer-type irreducible.
#[test]
fn queer_type_at_zero() {
    let m = functor_apply(1, &principal_series(&[g(0)]), 3).unwrap();
    match irreducibility_test(&table_generators(m.table()), &IrreducibilityConfig::default()) {
        Irreducibility::Irreducible { kind, algebra_dim, .. } => {
            assert_eq!(kind, SchurType::Queer);
            assert_eq!(algebra_dim, 2);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn direct_sum_is_reducible() {
    let cfg = IrreducibilityConfig::default();
    for (big_n, zs) in [(1, std::vec![g(2)]), (2, std::vec![q(1, 3)]), (1, std::vec![g(2), g(7)])] {
        let m = functor_apply(big_n, &principal_series(&zs), 2).unwrap();
        let c = check_reducible_control(&m, &cfg, "t");
        assert!(c.passed(), "{c:?}");
    }
}

#[test]
fn certificate_verification_rejects_non_invariant() {
    let m = functor_apply(1, &principal_series(&[g(2)]), 2).unwrap();
    let gens = table_generators(m.table());
    let bogus = InvariantSubspace { ambient: 2, basis: std::vec![SparseVec::from([(0, g(1))])] };
    assert!(!verify_invariant_subspace(&gens, &bogus));
    let mixed = InvariantSubspace { ambient: 2, basis: std::vec![SparseVec::from([(0, g(1)), (1, g(1))])] };
    assert!(!verify_invariant_subspace(&gens, &mixed));
}

/// A reducible module whose invariant subspace is not spanned by standard
/// basis vectors: `V ⊕ V` conjugated by a mixing of the two copies.
#[test]
fn hidden_submodule_is_found() {
    let m = functor_apply(1, &principal_series(&[g(3)]), 2).unwrap();
    let sum = direct_sum_table(m.table(), m.table());
    let sp = sum.carrier().clone();
    let mix = Op::from_entries(sp.clone(), sp.clone(), [(0, 0, g(1)), (1, 1, g(1)), (2, 2, g(1)), (3, 3, g(1)), (0, 2, g(1)), (1, 3, g(2)), (2, 0, g(3))]);
    let inv = invert_op(&mix).unwrap();
    let gens: std::vec::Vec<Op> = table_generators(&sum).iter().map(|o| mix.mul(o).mul(&inv)).collect();
    match irreducibility_test(&gens, &IrreducibilityConfig::default()) {
        Irreducibility::Reducible(sub) => assert!(verify_invariant_subspace(&gens, &sub)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn two_point_image_irreducibility() {
    let m = functor_apply(1, &principal_series(&[g(2), q(1, 3)]), 3).unwrap();
    let r = irreducibility_test(&table_generators(m.table()), &IrreducibilityConfig::default());
    assert!(matches!(r, Irreducibility::Irreducible { .. }), "{r:?}");
}

#[test]
fn suite_runs() {
    let cfg = DrinfeldConfig::new(1, std::vec![ModuleSpec::Principal(std::vec![g(2)]), ModuleSpec::Principal(std::vec![g(2), g(5)])], 2, 3);
    let out = run_checks(&cfg, &DrinfeldCheck::ALL);
    for c in &out {
        assert!(c.as_expected(), "{c:?}");
    }
    assert!(out.iter().any(|c| c.discrepancy.is_some()));
    assert!(out.len() > 10);
    assert_eq!(DrinfeldCheck::parse("prop53"), Some(DrinfeldCheck::Induction));
}
