use super::*;
use alloc::vec;
use proptest::prelude::*;

fn g(k: i64) -> GaussRat {
    GaussRat::from_int(k)
}

fn idx(n: usize, v: i32) -> SIndex {
    SIndex::new(v, n).unwrap()
}

fn id(n: usize, arity: usize) -> Op {
    Op::identity_g(cnn(n, arity))
}

fn par(i: SIndex, j: SIndex) -> u32 {
    (i.parity() ^ j.parity()) as u32
}

#[test]
fn sindex_order_and_bounds() {
    let all: Vec<i32> = SIndex::all(2).map(SIndex::value).collect();
    assert_eq!(all, vec![1, 2, -1, -2]);
    assert!(SIndex::new(0, 2).is_err());
    assert!(SIndex::new(3, 2).is_err());
    assert_eq!(idx(2, -2).ord(2), 3);
}

#[test]
fn p_is_the_graded_flip() {
    for n in 1..=2 {
        let sp = cnn(n, 2);
        // oracle: e_a ⊗ e_b -> (-1)^{ab} e_b ⊗ e_a
        let mut flip = Op::zero_op(sp.clone());
        for a in 0..2 * n {
            for b in 0..2 * n {
                let s = sp.factors()[0][a] & sp.factors()[1][b];
                flip.add_entry(sp.pack(&[b, a]), sp.pack(&[a, b]), sgn(s as u32));
            }
        }
        assert_eq!(perm_p(n), flip);
        assert_eq!(perm_p(n).mul(&perm_p(n)), id(n, 2));
        assert_eq!(perm_p(n).parity(), Some(0));
    }
}

#[test]
fn j_squares_to_minus_one_and_is_odd() {
    for n in 1..=3 {
        let j = j_op(n);
        assert_eq!(j.mul(&j), id(n, 1).neg());
        assert_eq!(j.parity(), Some(1));
        assert_eq!(e_op(n), id(n, 1));
    }
}

#[test]
fn eta_and_tau_on_constants() {
    for n in 1..=2 {
        let p = perm_p(n);
        assert_eq!(eta(&eta(&p, 0, n), 1, n), p.neg());
        assert_eq!(tau(&p, 1, n), q_op(n));
    }
}

#[test]
fn tau_is_a_super_antiautomorphism() {
    let n = 2;
    for i in SIndex::all(n) {
        for j in SIndex::all(n) {
            for k in SIndex::all(n) {
                for l in SIndex::all(n) {
                    let (x, y) = (matrix_unit(n, i, j), matrix_unit(n, k, l));
                    let lhs = tau(&x.mul(&y), 0, n);
                    let rhs = tau(&y, 0, n).mul(&tau(&x, 0, n)).scale(&sgn(par(i, j) * par(k, l)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}

#[test]
fn documented_sign_example() {
    let n = 1;
    let (a, b) = (matrix_unit(n, idx(n, 1), idx(n, -1)), matrix_unit(n, idx(n, -1), idx(n, 1)));
    let lhs = koszul_mul(&koszul_tensor(&a, &b), &koszul_tensor(&b, &a));
    let rhs = koszul_tensor(&a.mul(&b), &b.mul(&a)).neg();
    assert_eq!(lhs, rhs);
}

#[test]
fn embedding_matches_products_of_single_slot_embeddings() {
    let n = 1;
    let units: Vec<Op> = SIndex::all(n).flat_map(|i| SIndex::all(n).map(move |j| matrix_unit(n, i, j))).collect();
    for x in &units {
        for y in &units {
            let xy = koszul_tensor(x, y);
            for (p, q) in [(0usize, 1usize), (1, 0), (2, 0), (0, 2), (1, 2)] {
                let direct = embed(&xy, &[p, q], n, 3);
                let prod = embed(x, &[p], n, 3).mul(&embed(y, &[q], n, 3));
                assert_eq!(direct, prod, "positions {p},{q}");
            }
        }
    }
}

#[test]
fn theta_swaps_with_sign_and_is_involutive() {
    let n = 1;
    for i in SIndex::all(n) {
        for j in SIndex::all(n) {
            for k in SIndex::all(n) {
                for l in SIndex::all(n) {
                    let (x, y) = (matrix_unit(n, i, j), matrix_unit(n, k, l));
                    let t = theta(&koszul_tensor(&x, &y));
                    assert_eq!(t, koszul_tensor(&y, &x).scale(&sgn(par(i, j) * par(k, l))));
                    assert_eq!(theta(&t), koszul_tensor(&x, &y));
                }
            }
        }
    }
}

#[test]
fn declared_parity_is_enforced() {
    let n = 1;
    let odd = matrix_unit(n, idx(n, 1), idx(n, -1));
    assert!(odd.clone().with_declared_parity(1).is_ok());
    assert_eq!(odd.clone().with_declared_parity(0).unwrap_err(), SuperError::ParityViolation { declared: 0, found: 1 });
    let mixed = odd.add(&matrix_unit(n, idx(n, 1), idx(n, 1)));
    assert_eq!(mixed.parity(), None);
}

#[test]
fn tensor_acts_on_vectors_with_koszul_sign() {
    let n = 1;
    let sp = cnn(n, 1);
    let a = matrix_unit(n, idx(n, -1), idx(n, 1));
    let b = matrix_unit(n, idx(n, 1), idx(n, -1));
    let ab = koszul_tensor(&a, &b);
    // (A ⊗ B)(e_{-1} ⊗ e_{-1}) is zero, (A ⊗ B)(e_1 ⊗ e_{-1}) = (-1)^{|B||e_1|} e_{-1} ⊗ e_1 = e_{-1} ⊗ e_1
    let sp2 = ab.rows().clone();
    let col = sp2.pack(&[0, 1]);
    assert_eq!(ab.get(sp2.pack(&[1, 0]), col), Some(&g(1)));
    // with an odd vector in the first slot the sign flips: use A = E_{-1,-1}
    let a2 = matrix_unit(n, idx(n, -1), idx(n, -1));
    let t = koszul_tensor(&a2, &b);
    assert_eq!(t.get(sp2.pack(&[1, 0]), sp2.pack(&[1, 1])), Some(&g(-1)));
    let _ = sp;
}

fn unit_strategy(n: usize) -> impl Strategy<Value = (SIndex, SIndex)> {
    let m = 2 * n;
    (0..m, 0..m).prop_map(move |(a, b)| (SIndex::from_ord(a, n), SIndex::from_ord(b, n)))
}

proptest! {
    #[test]
    fn tensor_exchange_law((i, j) in unit_strategy(2), (k, l) in unit_strategy(2)) {
        let n = 2;
        let (a, b) = (matrix_unit(n, i, j), matrix_unit(n, k, l));
        let one = id(n, 1);
        let lhs = koszul_tensor(&one, &b).mul(&koszul_tensor(&a, &one));
        let rhs = koszul_tensor(&a, &b).scale(&sgn(par(i, j) * par(k, l)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn tensor_product_is_multiplicative((i, j) in unit_strategy(1), (k, l) in unit_strategy(1),
                                        (i2, j2) in unit_strategy(1), (k2, l2) in unit_strategy(1)) {
        let n = 1;
        let (a, b) = (matrix_unit(n, i, j), matrix_unit(n, k, l));
        let (c, d) = (matrix_unit(n, i2, j2), matrix_unit(n, k2, l2));
        let lhs = koszul_tensor(&a, &b).mul(&koszul_tensor(&c, &d));
        let rhs = koszul_tensor(&a.mul(&c), &b.mul(&d)).scale(&sgn(par(k, l) * par(i2, j2)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn eta_is_an_automorphism((i, j) in unit_strategy(2), (k, l) in unit_strategy(2)) {
        let n = 2;
        let (a, b) = (matrix_unit(n, i, j), matrix_unit(n, k, l));
        let ab = koszul_tensor(&a, &b);
        let cd = koszul_tensor(&b, &a);
        prop_assert_eq!(eta(&ab.mul(&cd), 1, n), eta(&ab, 1, n).mul(&eta(&cd, 1, n)));
    }
}
