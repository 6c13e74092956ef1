//! The Drinfeld functor from finite-dimensional modules over the degenerate
//! affine Sergeev algebra `A_n` to modules over the Yangian, the induction
//! product `⊙`, principal series, and a graded irreducibility test.
//!
//! The module `U` acts on a single-factor graded space. `W = (C^{N|N})^{⊗n} ⊗ U`
//! carries the hyperoctahedral action `α`, and `V = W / span{(α(g) - 1)W}`.
//! The quotient basis is the set of coordinates left free by a reduced
//! echelon basis of the relations, with coordinates compared `U`-index first.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cell::RefCell;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::check::CheckOutcome;
use crate::identity::{certify_products, Affine};
use crate::linalg::{dense_to_sparse, invert_op, Echelon, Mat, PivotRule, SparseVec};
use crate::scalar::{GaussRat, Poly, TruncSeries};
use crate::sergeev::{all_perms, gamma, hn_matrix_rep, pbw_monomials, perm_id, perm_inv, reduced_word, y_generators, AnBasis, AnElement, HnBasis, Perm};
use crate::superop::{cnn, j_op, matrix_unit, perm_p, sgn, Op, SIndex, Space};
use crate::yangian::{aux_space, centre_series, check_rtt, check_table, check_tables_agree, closed_factor, eval_rep, ClosedForm, GenImage};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DrinfeldError {
    #[error("module matrices are malformed: {0}")]
    Malformed(String),
    #[error("relation fails in the module: {0}")]
    Relation(String),
    #[error("hyperoctahedral action fails: {0}")]
    NotAnAction(String),
    #[error("product and sum constructions disagree: {0}")]
    Disagree(String),
    #[error("rewriting left the induced module basis: {0}")]
    Escape(String),
}

fn g(k: i64) -> GaussRat {
    GaussRat::from_int(k)
}

/// `op` with its row and column spaces replaced by spaces of equal
/// dimension and parities.
fn reframe(op: &Op, rows: &Arc<Space>, cols: &Arc<Space>) -> Op {
    Op::from_entries(rows.clone(), cols.clone(), op.entries().map(|(r, c, v)| (r, c, v.clone())))
}

fn flat_space(sp: &Space) -> Arc<Space> {
    Space::new(vec![(0..sp.dim()).map(|k| sp.parity(k)).collect()])
}

fn apply_sparse(op: &Op, v: &SparseVec) -> SparseVec {
    let mut out = SparseVec::new();
    for (c, a) in v {
        for (r, b) in op.column(*c) {
            let e = out.entry(*r as usize).or_insert_with(GaussRat::zero);
            *e = &*e + &(b * a);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn op_key(op: &Op) -> SparseVec {
    let d = op.cols().dim();
    op.entries().map(|(r, c, v)| (r * d + c, v.clone())).collect()
}

/// Minimal polynomial of a square operator, from the first linear
/// dependence among its powers.
pub fn min_poly(op: &Op) -> Poly {
    let id = Op::identity_g(op.rows().clone());
    let mut ech = Echelon::new(PivotRule::First);
    let mut powers = vec![id.clone()];
    ech.insert(&op_key(&id));
    loop {
        let next = op.mul(powers.last().unwrap());
        let key = op_key(&next);
        let dependent = ech.contains(&key);
        powers.push(next);
        if dependent {
            break;
        }
        ech.insert(&key);
    }
    let k = powers.len();
    let keys: Vec<SparseVec> = powers.iter().map(op_key).collect();
    let coords: BTreeSet<usize> = keys.iter().flat_map(|v| v.keys().copied()).collect();
    let mut m = Mat::zero(coords.len(), k);
    for (row, coord) in coords.iter().enumerate() {
        for (col, v) in keys.iter().enumerate() {
            if let Some(a) = v.get(coord) {
                m.set(row, col, a.clone());
            }
        }
    }
    let ker = m.kernel();
    let v = ker.iter().find(|v| !v[k - 1].is_zero()).expect("dependence involves the top power");
    let mut p = Poly::zero(1);
    let mut mono = Poly::one(1);
    for a in v {
        p = &p + &mono.scale(a);
        mono = &mono * &Poly::var(1, 0);
    }
    p.monic()
}

fn poly_lcm(a: &Poly, b: &Poly) -> Poly {
    let gcd = Poly::gcd_univariate(a, b);
    (a * b).div_exact_univariate(&gcd).expect("gcd divides the product").monic()
}

/// `d(u)` with `d(u)(u ∓ X)^{-1}` polynomial for both signs.
fn pm_min_poly(op: &Op) -> Poly {
    let m = min_poly(op);
    poly_lcm(&m, &m.negate_var(0).monic())
}

/// A finite-dimensional graded module over `A_n` given by the images of
/// `w_{q,q+1}`, `c_p` and `x_p`.
#[derive(Clone, Debug, PartialEq)]
pub struct AnModule {
    n: usize,
    space: Arc<Space>,
    s: Vec<Op>,
    c: Vec<Op>,
    x: Vec<Op>,
}

impl AnModule {
    /// Validates shapes, parities and every defining relation of `A_n`.
    pub fn new(n: usize, parities: Vec<u8>, s: Vec<Op>, c: Vec<Op>, x: Vec<Op>) -> Result<Self, DrinfeldError> {
        if parities.iter().any(|&p| p > 1) {
            return Err(DrinfeldError::Malformed("parities must be 0 or 1".into()));
        }
        let space = Space::new(vec![parities]);
        if s.len() != n.saturating_sub(1) || c.len() != n || x.len() != n {
            return Err(DrinfeldError::Malformed(format!(
                "expected {} transpositions and {n} of c, x; got {}, {}, {}",
                n.saturating_sub(1),
                s.len(),
                c.len(),
                x.len()
            )));
        }
        let d = space.dim();
        let fix = |ops: Vec<Op>, parity: u8, what: &str| -> Result<Vec<Op>, DrinfeldError> {
            ops.into_iter()
                .enumerate()
                .map(|(k, op)| {
                    if op.rows().dim() != d || op.cols().dim() != d {
                        return Err(DrinfeldError::Malformed(format!("{what}{} is not {d}x{d}", k + 1)));
                    }
                    let op = reframe(&op, &space, &space);
                    if op.parity() != Some(parity) {
                        return Err(DrinfeldError::Malformed(format!("{what}{} is not of parity {parity}", k + 1)));
                    }
                    Ok(op)
                })
                .collect()
        };
        let s = fix(s, 0, "s")?;
        let c = fix(c, 1, "c")?;
        let x = fix(x, 0, "x")?;
        let m = AnModule { n, space, s, c, x };
        if let Some(e) = m.relation_defect() {
            return Err(DrinfeldError::Relation(e));
        }
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    pub fn parities(&self) -> Vec<u8> {
        (0..self.dim()).map(|k| self.space.parity(k)).collect()
    }

    /// `ξ(w_{q,q+1})`, 1-based.
    pub fn s(&self, q: usize) -> &Op {
        &self.s[q - 1]
    }

    /// `ξ(c_p)`, 1-based.
    pub fn c(&self, p: usize) -> &Op {
        &self.c[p - 1]
    }

    /// `ξ(x_p)`, 1-based.
    pub fn x(&self, p: usize) -> &Op {
        &self.x[p - 1]
    }

    pub fn identity(&self) -> Op {
        Op::identity_g(self.space.clone())
    }

    pub fn perm(&self, w: &[u8]) -> Op {
        reduced_word(w).into_iter().fold(self.identity(), |acc, q| acc.mul(&self.s[q]))
    }

    fn basis_act(&self, b: &AnBasis, cache: &mut BTreeMap<(usize, u32), Op>) -> Op {
        let mut out = self.identity();
        for p in 0..self.n {
            if b.c >> p & 1 == 1 {
                out = out.mul(&self.c[p]);
            }
        }
        out = out.mul(&self.perm(&b.w));
        for (p, &e) in b.x.iter().enumerate() {
            if e > 0 {
                let xp = cache.entry((p, e)).or_insert_with(|| (0..e).fold(self.identity(), |acc, _| acc.mul(&self.x[p])));
                out = out.mul(xp);
            }
        }
        out
    }

    /// `ξ(a)`.
    pub fn act(&self, a: &AnElement) -> Op {
        assert_eq!(a.n(), self.n, "element of the wrong rank");
        let mut cache = BTreeMap::new();
        let mut out = Op::zero_op(self.space.clone());
        for (b, coef) in a.terms() {
            out = out.add(&self.basis_act(b, &mut cache).scale(coef));
        }
        out
    }

    /// First defining relation violated by the generator matrices.
    pub fn relation_defect(&self) -> Option<String> {
        let n = self.n;
        let id = self.identity();
        let (s, c, x) = (&self.s, &self.c, &self.x);
        for p in 0..n {
            if c[p].mul(&c[p]) != id.neg() {
                return Some(format!("c{}^2 = -1", p + 1));
            }
            if x[p].mul(&c[p]) != c[p].mul(&x[p]).neg() {
                return Some(format!("x{0}c{0} = -c{0}x{0}", p + 1));
            }
            for q in 0..n {
                if q == p {
                    continue;
                }
                if c[p].mul(&c[q]) != c[q].mul(&c[p]).neg() {
                    return Some(format!("c{}c{} = -c{}c{}", p + 1, q + 1, q + 1, p + 1));
                }
                if x[p].mul(&c[q]) != c[q].mul(&x[p]) {
                    return Some(format!("x{}c{} = c{}x{}", p + 1, q + 1, q + 1, p + 1));
                }
                if x[p].mul(&x[q]) != x[q].mul(&x[p]) {
                    return Some(format!("x{}x{} = x{}x{}", p + 1, q + 1, q + 1, p + 1));
                }
            }
        }
        for q in 0..n.saturating_sub(1) {
            if s[q].mul(&s[q]) != id {
                return Some(format!("s{}^2 = 1", q + 1));
            }
            if q + 2 < n && s[q].mul(&s[q + 1]).mul(&s[q]) != s[q + 1].mul(&s[q]).mul(&s[q + 1]) {
                return Some(format!("braid s{}", q + 1));
            }
            for r in q + 2..n.saturating_sub(1) {
                if s[q].mul(&s[r]) != s[r].mul(&s[q]) {
                    return Some(format!("s{}s{} = s{}s{}", q + 1, r + 1, r + 1, q + 1));
                }
            }
            for p in 0..n {
                let t = if p == q {
                    q + 1
                } else if p == q + 1 {
                    q
                } else {
                    p
                };
                if s[q].mul(&c[p]).mul(&s[q]) != c[t] {
                    return Some(format!("s{}c{}s{} = c{}", q + 1, p + 1, q + 1, t + 1));
                }
                if p != q && p != q + 1 && x[p].mul(&s[q]) != s[q].mul(&x[p]) {
                    return Some(format!("x{}s{} = s{}x{}", p + 1, q + 1, q + 1, p + 1));
                }
            }
            let rhs = s[q].mul(&x[q + 1]).sub(&id).sub(&c[q].mul(&c[q + 1]));
            if x[q].mul(&s[q]) != rhs {
                return Some(format!("x{0}s{0} = s{0}x{1} - 1 - c{0}c{1}", q + 1, q + 2));
            }
        }
        None
    }

    /// `g ξ(·) g^{-1}` for an even invertible `g`.
    pub fn conjugate(&self, gm: &Op) -> Result<Self, DrinfeldError> {
        let gm = reframe(gm, &self.space, &self.space);
        if gm.parity() != Some(0) {
            return Err(DrinfeldError::Malformed("conjugating matrix is not even".into()));
        }
        let inv = invert_op(&gm).ok_or_else(|| DrinfeldError::Malformed("conjugating matrix is singular".into()))?;
        let conj = |ops: &[Op]| ops.iter().map(|o| gm.mul(o).mul(&inv)).collect::<Vec<_>>();
        AnModule::new(self.n, self.parities(), conj(&self.s), conj(&self.c), conj(&self.x))
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &AnModule) -> Result<Self, DrinfeldError> {
        let mut par = self.parities();
        par.extend(o.parities());
        let sp = Space::new(vec![par.clone()]);
        let d = self.dim();
        let sum = |a: &Op, b: &Op| {
            Op::from_entries(
                sp.clone(),
                sp.clone(),
                a.entries().map(|(r, c, v)| (r, c, v.clone())).chain(b.entries().map(|(r, c, v)| (r + d, c + d, v.clone()))),
            )
        };
        let zip = |a: &[Op], b: &[Op]| a.iter().zip(b).map(|(x, y)| sum(x, y)).collect::<Vec<_>>();
        AnModule::new(self.n, par, zip(&self.s, &o.s), zip(&self.c, &o.c), zip(&self.x, &o.x))
    }
}

/// Basis of `H_n` ordered by [`HnBasis::index`].
fn hn_basis(n: usize) -> Vec<HnBasis> {
    let mut b: Vec<HnBasis> = pbw_monomials(n, 0).into_iter().map(|m| m.hn()).collect();
    b.sort_by_key(HnBasis::index);
    b
}

/// Principal series `U_{z_1…z_n}`: `H_n` with `H_n` acting by left
/// multiplication and `x_p · Y = Σ Y' χ(x^s)`, `χ(x_k) = z_k`.
pub fn principal_series(zs: &[GaussRat]) -> AnModule {
    let n = zs.len();
    let basis = hn_basis(n);
    let par: Vec<u8> = basis.iter().map(HnBasis::parity).collect();
    let sp = Space::new(vec![par.clone()]);
    let image = |gen: &AnElement| {
        let mut e = Vec::new();
        for (col, b) in basis.iter().enumerate() {
            let y = AnElement::basis(AnBasis { c: b.c, w: b.w.clone(), x: vec![0; n] }, GaussRat::one());
            for (t, coef) in gen.mul(&y).terms() {
                let chi = t.x.iter().zip(zs).fold(coef.clone(), |acc, (&k, z)| &acc * &z.pow(k as i64));
                e.push((t.hn().index(), col, chi));
            }
        }
        Op::from_entries(sp.clone(), sp.clone(), e)
    };
    let s = (1..n).map(|q| image(&AnElement::transposition(n, q, q + 1))).collect();
    let c = (1..=n).map(|p| image(&AnElement::c(n, p))).collect();
    let x = (1..=n).map(|p| image(&AnElement::x(n, p))).collect();
    AnModule::new(n, par, s, c, x).expect("principal series satisfies the relations")
}

/// Pullback along `γ_m` of `H_{m+n}` acting on `(C^{M|M})^{⊗(m+n)}`.
pub fn pullback_module(m: usize, n: usize, big_m: usize) -> AnModule {
    let rep = hn_matrix_rep(big_m, m + n);
    let sp = flat_space(rep.space());
    let image = |a: &AnElement| reframe(&rep.image(&gamma(m, a)), &sp, &sp);
    let s = (1..n).map(|q| image(&AnElement::transposition(n, q, q + 1))).collect();
    let c = (1..=n).map(|p| image(&AnElement::c(n, p))).collect();
    let x = (1..=n).map(|p| image(&AnElement::x(n, p))).collect();
    AnModule::new(n, (0..sp.dim()).map(|k| sp.parity(k)).collect(), s, c, x).expect("pullback satisfies the relations")
}

/// Minimal-length representatives of `S_{n+n'} / (S_n × S_{n'})`: one-line
/// permutations increasing on `0..n` and on `n..n+n'`, in lexicographic
/// order.
pub fn shuffles(n: usize, n2: usize) -> Vec<Perm> {
    let mut out: Vec<Perm> =
        all_perms(n + n2).into_iter().filter(|w| w[..n].windows(2).all(|p| p[0] < p[1]) && w[n..].windows(2).all(|p| p[0] < p[1])).collect();
    out.sort();
    out
}

/// The shuffle representing the coset of `w`.
fn coset_rep(w: &[u8], n: usize) -> Perm {
    let mut a: Vec<u8> = w[..n].to_vec();
    let mut b: Vec<u8> = w[n..].to_vec();
    a.sort();
    b.sort();
    a.extend(b);
    a
}

/// `A_{n+n'} ⊗_{A_n ⊗ A_{n'}} (U ⊗ U')` with basis `w_σ ⊗ b ⊗ b'`.
pub fn odot(u: &AnModule, u2: &AnModule) -> Result<AnModule, DrinfeldError> {
    let (n1, n2) = (u.n, u2.n);
    let n = n1 + n2;
    let reps = shuffles(n1, n2);
    let rep_index: BTreeMap<Perm, usize> = reps.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
    let (d1, d2) = (u.dim(), u2.dim());
    let block = d1 * d2;
    let mut par = Vec::with_capacity(reps.len() * block);
    for _ in &reps {
        for b in 0..d1 {
            for b2 in 0..d2 {
                par.push(u.space.parity(b) ^ u2.space.parity(b2));
            }
        }
    }
    let sp = Space::new(vec![par.clone()]);
    let mut cache1 = BTreeMap::new();
    let mut cache2 = BTreeMap::new();
    let mut acts1: BTreeMap<AnBasis, Op> = BTreeMap::new();
    let mut acts2: BTreeMap<AnBasis, Op> = BTreeMap::new();
    let mut image = |gen: &AnElement| -> Result<Op, DrinfeldError> {
        let mut e = Vec::new();
        for (si, ws) in reps.iter().enumerate() {
            let prod = gen.mul(&AnElement::perm(ws.clone()));
            for (t, coef) in prod.terms() {
                let wt = coset_rep(&t.w, n1);
                let ti = *rep_index.get(&wt).ok_or_else(|| DrinfeldError::Escape(format!("{wt:?}")))?;
                let single = AnElement::basis(t.clone(), coef.clone());
                let rest = AnElement::perm(perm_inv(&wt)).mul(&single);
                for (r, rc) in rest.terms() {
                    if r.w[..n1].iter().any(|&p| p as usize >= n1) {
                        return Err(DrinfeldError::Escape(format!("{:?} does not preserve the blocks", r.w)));
                    }
                    let low = AnBasis { c: r.c & ((1 << n1) - 1), w: r.w[..n1].to_vec(), x: r.x[..n1].to_vec() };
                    let high = AnBasis { c: r.c >> n1, w: r.w[n1..].iter().map(|&p| p - n1 as u8).collect(), x: r.x[n1..].to_vec() };
                    let odd2 = high.c.count_ones() & 1;
                    let a1 = acts1.entry(low.clone()).or_insert_with(|| u.basis_act(&low, &mut cache1)).clone();
                    let a2 = acts2.entry(high.clone()).or_insert_with(|| u2.basis_act(&high, &mut cache2)).clone();
                    for b in 0..d1 {
                        let sign = if odd2 == 1 && u.space.parity(b) == 1 { -rc } else { rc.clone() };
                        for (r1, v1) in a1.column(b) {
                            let v1 = &sign * v1;
                            for b2 in 0..d2 {
                                for (r2, v2) in a2.column(b2) {
                                    e.push((ti * block + *r1 as usize * d2 + *r2 as usize, si * block + b * d2 + b2, &v1 * v2));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Op::from_entries(sp.clone(), sp.clone(), e))
    };
    let s = (1..n).map(|q| image(&AnElement::transposition(n, q, q + 1))).collect::<Result<Vec<_>, _>>()?;
    let c = (1..=n).map(|p| image(&AnElement::c(n, p))).collect::<Result<Vec<_>, _>>()?;
    let x = (1..=n).map(|p| image(&AnElement::x(n, p))).collect::<Result<Vec<_>, _>>()?;
    AnModule::new(n, par, s, c, x)
}

/// Coinvariants of the hyperoctahedral action on `(C^{N|N})^{⊗n} ⊗ U`.
#[derive(Clone, Debug)]
pub struct CoinvariantSpace {
    big_n: usize,
    n: usize,
    udim: usize,
    ambient: Arc<Space>,
    alpha_s: Vec<Op>,
    alpha_z: Vec<Op>,
    relations: Echelon,
    basis: Vec<usize>,
    carrier: Arc<Space>,
    projection: Op,
    section: Op,
}

impl CoinvariantSpace {
    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> &Arc<Space> {
        &self.ambient
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn carrier(&self) -> &Arc<Space> {
        &self.carrier
    }

    /// Ambient coordinates of the quotient basis.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Dimension of the span of the `(α(g) - 1)`-images.
    pub fn relation_dim(&self) -> usize {
        self.relations.dim()
    }

    /// `W → V`.
    pub fn projection(&self) -> &Op {
        &self.projection
    }

    /// `V → W`, `e_k ↦` the ambient basis vector `basis[k]`.
    pub fn section(&self) -> &Op {
        &self.section
    }

    /// `α(w_{q,q+1}) = P_{q,q+1} ⊗ ξ(w_{q,q+1})`, 1-based.
    pub fn alpha_s(&self, q: usize) -> &Op {
        &self.alpha_s[q - 1]
    }

    /// `α(z_p) = J_p ⊗ ξ(c_p) · √-1`, 1-based.
    pub fn alpha_z(&self, p: usize) -> &Op {
        &self.alpha_z[p - 1]
    }

    fn key(&self, k: usize) -> usize {
        (k % self.udim) * (self.ambient.dim() / self.udim) + k / self.udim
    }

    /// `α(g)` for every element `g = w ε` of the group.
    pub fn group_elements(&self) -> Vec<Op> {
        let id = Op::identity_g(self.ambient.clone());
        let mut eps = Vec::new();
        for mask in 0u32..(1 << self.n) {
            let mut op = id.clone();
            for p in 0..self.n {
                if mask >> p & 1 == 1 {
                    op = op.mul(&self.alpha_z[p]);
                }
            }
            eps.push(op);
        }
        let mut out = Vec::new();
        for w in all_perms(self.n) {
            let aw = reduced_word(&w).into_iter().fold(id.clone(), |acc, q| acc.mul(&self.alpha_s[q]));
            out.extend(eps.iter().map(|e| aw.mul(e)));
        }
        out
    }

    /// Dimension of the span of `(α(g) - 1)W` over the whole group.
    pub fn full_group_relation_dim(&self) -> usize {
        let mut ech = Echelon::new(PivotRule::Last);
        for a in self.group_elements() {
            insert_columns(&mut ech, &a, |k| self.key(k));
        }
        ech.dim()
    }

    /// `(1/|G|) Σ_g α(g) ∘ section`, a lift of `V` onto the invariants.
    pub fn invariant_lift(&self) -> Op {
        let mut eps = Vec::new();
        for mask in 0u32..(1 << self.n) {
            let mut op = self.section.clone();
            for p in (0..self.n).rev() {
                if mask >> p & 1 == 1 {
                    op = self.alpha_z[p].mul(&op);
                }
            }
            eps.push(op);
        }
        let mut acc = Op::zero(self.ambient.clone(), self.carrier.clone());
        let mut order = 0i64;
        for w in all_perms(self.n) {
            let word = reduced_word(&w);
            for e in &eps {
                acc = acc.add(&word.iter().rev().fold(e.clone(), |v, &q| self.alpha_s[q].mul(&v)));
                order += 1;
            }
        }
        acc.scale(&g(order).recip())
    }

    /// `π ∘ op ∘ σ` for an operator on the ambient space.
    pub fn induced(&self, op: &Op) -> Op {
        self.projection.mul(&op.mul(&self.section))
    }
}

fn insert_columns(ech: &mut Echelon, op: &Op, key: impl Fn(usize) -> usize) {
    for c in 0..op.cols().dim() {
        let mut v: SparseVec = op.column(c).iter().map(|(r, a)| (key(*r as usize), a.clone())).collect();
        let e = v.entry(key(c)).or_insert_with(GaussRat::zero);
        *e = &*e - &GaussRat::one();
        v.retain(|_, a| !a.is_zero());
        ech.insert(&v);
    }
}

/// Builds `α` and the quotient `V`. The relations are generated by the
/// adjacent transpositions and the `n` sign generators.
pub fn coinvariants(big_n: usize, u: &AnModule) -> Result<CoinvariantSpace, DrinfeldError> {
    let n = u.n;
    let tens = cnn(big_n, n);
    let ambient = Space::tensor(&tens, &u.space);
    let i = GaussRat::i();
    let alpha_s: Vec<Op> = (0..n.saturating_sub(1)).map(|q| perm_p(big_n).embed(&[q, q + 1], &tens).tensor(&u.s[q])).collect();
    let alpha_z: Vec<Op> = (0..n).map(|p| j_op(big_n).embed(&[p], &tens).tensor(&u.c[p]).scale(&i)).collect();
    let id = Op::identity_g(ambient.clone());
    for (p, a) in alpha_z.iter().enumerate() {
        if a.mul(a) != id {
            return Err(DrinfeldError::NotAnAction(format!("z{} squared", p + 1)));
        }
        for (q, b) in alpha_z.iter().enumerate().skip(p + 1) {
            if a.mul(b) != b.mul(a) {
                return Err(DrinfeldError::NotAnAction(format!("z{} z{} commute", p + 1, q + 1)));
            }
        }
    }
    for (q, a) in alpha_s.iter().enumerate() {
        if a.mul(a) != id {
            return Err(DrinfeldError::NotAnAction(format!("s{} squared", q + 1)));
        }
        if let Some(b) = alpha_s.get(q + 1) {
            if a.mul(b).mul(a) != b.mul(a).mul(b) {
                return Err(DrinfeldError::NotAnAction(format!("braid s{}", q + 1)));
            }
        }
        for (p, z) in alpha_z.iter().enumerate() {
            let t = if p == q {
                q + 1
            } else if p == q + 1 {
                q
            } else {
                p
            };
            if a.mul(z).mul(a) != alpha_z[t] {
                return Err(DrinfeldError::NotAnAction(format!("s{} z{} s{}", q + 1, p + 1, q + 1)));
            }
        }
    }
    let adim = ambient.dim();
    let udim = u.dim();
    let tdim = adim / udim;
    let key = |k: usize| (k % udim) * tdim + k / udim;
    let unkey = |k: usize| (k % tdim) * udim + k / tdim;
    let mut relations = Echelon::new(PivotRule::Last);
    for a in alpha_s.iter().chain(&alpha_z) {
        insert_columns(&mut relations, a, key);
    }
    let pivots: BTreeSet<usize> = relations.pivots().collect();
    let free_keys: Vec<usize> = (0..adim).filter(|k| !pivots.contains(k)).collect();
    let basis: Vec<usize> = free_keys.iter().map(|&k| unkey(k)).collect();
    let pos: BTreeMap<usize, usize> = free_keys.iter().enumerate().map(|(i, &k)| (k, i)).collect();
    let carrier = Space::new(vec![basis.iter().map(|&k| ambient.parity(k)).collect()]);
    let mut e = Vec::new();
    for k in 0..adim {
        let kk = key(k);
        if let Some(&i) = pos.get(&kk) {
            e.push((i, k, GaussRat::one()));
        } else {
            let (_, row) = relations.basis().find(|(p, _)| **p == kk).expect("pivot row");
            for (c, a) in row {
                if *c != kk {
                    e.push((pos[c], k, -a));
                }
            }
        }
    }
    let projection = Op::from_entries(carrier.clone(), ambient.clone(), e);
    let section = Op::from_entries(ambient.clone(), carrier.clone(), basis.iter().enumerate().map(|(i, &k)| (k, i, GaussRat::one())));
    Ok(CoinvariantSpace { big_n, n, udim, ambient, alpha_s, alpha_z, relations, basis, carrier, projection, section })
}

/// Which closed form: the ordered product over `x_p` or the sum over `y_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Product,
    Sum,
}

/// `ρ(T(u))` on `C^{N|N} ⊗ V`, induced from the product or the sum
/// formula on `C^{N|N} ⊗ W`. The product acts on invariant lifts, the sum
/// on the section.
pub struct DrinfeldForm {
    big_n: usize,
    kind: FormKind,
    carrier: Arc<Space>,
    mats: Vec<Op>,
    perms: Vec<Op>,
    twisted: Vec<Op>,
    left: Op,
    right: Op,
    den: Poly,
    cache: RefCell<Vec<(GaussRat, Option<Op>)>>,
}

impl DrinfeldForm {
    fn new(big_n: usize, kind: FormKind, coinv: &CoinvariantSpace, mats: Vec<Op>) -> Self {
        let n = mats.len();
        let sp = cnn(big_n, n + 1);
        let j = j_op(big_n);
        let perms: Vec<Op> = (1..=n).map(|p| perm_p(big_n).embed(&[0, p], &sp)).collect();
        let twisted = perms.iter().enumerate().map(|(k, pp)| pp.mul(&j.embed(&[0], &sp)).mul(&j.embed(&[k + 1], &sp))).collect();
        let aux_id = Op::identity_g(cnn(big_n, 1));
        let left = aux_id.tensor(coinv.projection());
        let right = match kind {
            FormKind::Product => aux_id.tensor(&coinv.invariant_lift()),
            FormKind::Sum => aux_id.tensor(coinv.section()),
        };
        let den = match kind {
            FormKind::Product => mats.iter().fold(Poly::one(1), |d, m| &d * &pm_min_poly(m)),
            FormKind::Sum => mats.iter().fold(Poly::one(1), |d, m| poly_lcm(&d, &pm_min_poly(m))),
        };
        DrinfeldForm { big_n, kind, carrier: coinv.carrier.clone(), mats, perms, twisted, left, right, den, cache: RefCell::new(Vec::new()) }
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }

    fn resolvents(&self, u: &GaussRat, power: u32) -> Option<Vec<(Op, Op)>> {
        self.mats
            .iter()
            .map(|m| {
                let id = Op::identity_g(m.rows().clone());
                let a = invert_op(&id.scale(u).sub(m))?;
                let b = invert_op(&id.scale(u).add(m))?;
                Some(if power == 2 { (a.mul(&a), b.mul(&b)) } else { (a, b) })
            })
            .collect()
    }

    /// `1 - P ⊗ a + PJJ ⊗ b` applied to `l`, or only the last two terms.
    fn factor(&self, p: usize, a: &Op, b: &Op, l: &Op, with_one: bool) -> Op {
        let t = self.twisted[p].tensor(b).mul(l).sub(&self.perms[p].tensor(a).mul(l));
        if with_one {
            l.add(&t)
        } else {
            t
        }
    }

    fn compute(&self, u: &GaussRat) -> Option<Op> {
        let rs = self.resolvents(u, 1)?;
        let mid = match self.kind {
            FormKind::Product => (0..self.mats.len()).rev().fold(self.right.clone(), |l, p| self.factor(p, &rs[p].0, &rs[p].1, &l, true)),
            FormKind::Sum => (0..self.mats.len()).fold(self.right.clone(), |acc, p| acc.add(&self.factor(p, &rs[p].0, &rs[p].1, &self.right, false))),
        };
        Some(self.left.mul(&mid))
    }
}

impl ClosedForm for DrinfeldForm {
    fn n(&self) -> usize {
        self.big_n
    }

    fn carrier(&self) -> Arc<Space> {
        self.carrier.clone()
    }

    fn at(&self, u: &GaussRat) -> Option<Op> {
        if let Some((_, v)) = self.cache.borrow().iter().find(|(x, _)| x == u) {
            return v.clone();
        }
        let v = self.compute(u);
        self.cache.borrow_mut().push((u.clone(), v.clone()));
        v
    }

    fn deriv_at(&self, u: &GaussRat) -> Option<Op> {
        let rs = self.resolvents(u, 1)?;
        let rs2 = self.resolvents(u, 2)?;
        let n = self.mats.len();
        // d/du (u ∓ X)^{-1} = -(u ∓ X)^{-2}
        let mid = match self.kind {
            FormKind::Product => {
                let mut total = Op::zero(self.right.rows().clone(), self.right.cols().clone());
                for k in 0..n {
                    let mut l = self.right.clone();
                    for p in (0..n).rev() {
                        l = if p == k { self.factor(p, &rs2[p].0.neg(), &rs2[p].1.neg(), &l, false) } else { self.factor(p, &rs[p].0, &rs[p].1, &l, true) };
                    }
                    total = total.add(&l);
                }
                total
            }
            FormKind::Sum => (0..n).fold(Op::zero(self.right.rows().clone(), self.right.cols().clone()), |acc, p| {
                acc.add(&self.factor(p, &rs2[p].0.neg(), &rs2[p].1.neg(), &self.right, false))
            }),
        };
        Some(self.left.mul(&mid))
    }

    fn den(&self) -> Poly {
        self.den.clone()
    }

    fn expansion(&self, order: usize) -> TruncSeries<Op> {
        let n = self.mats.len();
        // coefficient of u^{-(m+1)} in a factor: -P ⊗ X^m + PJJ ⊗ (-X)^m
        let coeffs: Vec<Vec<Op>> = (0..n)
            .map(|p| {
                let mut pw = Op::identity_g(self.mats[p].rows().clone());
                let mut out = Vec::new();
                for m in 0..order {
                    let alt = if m % 2 == 1 { pw.neg() } else { pw.clone() };
                    out.push(self.twisted[p].tensor(&alt).sub(&self.perms[p].tensor(&pw)));
                    pw = pw.mul(&self.mats[p]);
                }
                out
            })
            .collect();
        let zero = Op::zero(self.right.rows().clone(), self.right.cols().clone());
        let mut series: Vec<Op> = (0..=order).map(|k| if k == 0 { self.right.clone() } else { zero.clone() }).collect();
        match self.kind {
            FormKind::Product => {
                for p in (0..n).rev() {
                    let mut next = series.clone();
                    for k in 1..=order {
                        for m in 0..k {
                            let s = &series[k - 1 - m];
                            if !s.is_zero() {
                                next[k] = next[k].add(&coeffs[p][m].mul(s));
                            }
                        }
                    }
                    series = next;
                }
            }
            FormKind::Sum => {
                for k in 1..=order {
                    for c in &coeffs {
                        series[k] = series[k].add(&c[k - 1].mul(&self.right));
                    }
                }
            }
        }
        TruncSeries::new(series.iter().map(|s| self.left.mul(s)).collect())
    }
}

/// The `Y(q_N)`-module `F_N(U)`.
pub struct YqnModule {
    big_n: usize,
    module: AnModule,
    coinv: CoinvariantSpace,
    ys: Vec<Op>,
    table: GenImage,
}

impl YqnModule {
    pub fn big_n(&self) -> usize {
        self.big_n
    }

    pub fn module(&self) -> &AnModule {
        &self.module
    }

    pub fn coinvariants(&self) -> &CoinvariantSpace {
        &self.coinv
    }

    pub fn carrier(&self) -> &Arc<Space> {
        self.coinv.carrier()
    }

    pub fn dim(&self) -> usize {
        self.coinv.dim()
    }

    pub fn table(&self) -> &GenImage {
        &self.table
    }

    /// `ξ(y_p)`, 1-based.
    pub fn y(&self, p: usize) -> &Op {
        &self.ys[p - 1]
    }

    /// Closed form from the ordered product over `x_p`.
    pub fn product_form(&self) -> DrinfeldForm {
        let xs = (1..=self.module.n).map(|p| self.module.x(p).clone()).collect();
        DrinfeldForm::new(self.big_n, FormKind::Product, &self.coinv, xs)
    }

    /// Closed form from the sum over `y_p`.
    pub fn sum_form(&self) -> DrinfeldForm {
        DrinfeldForm::new(self.big_n, FormKind::Sum, &self.coinv, self.ys.clone())
    }

    /// The operator on `W` whose induced action is `T_ij^(s+1)`.
    pub fn ambient_generator(&self, i: SIndex, j: SIndex, s: usize) -> Op {
        ambient_generator(self.big_n, &self.coinv, &self.ys, i, j, s)
    }
}

fn ambient_generator(big_n: usize, coinv: &CoinvariantSpace, ys: &[Op], i: SIndex, j: SIndex, s: usize) -> Op {
    let tens = cnn(big_n, ys.len());
    let sign = if s % 2 == 1 { g(-1) } else { g(1) };
    let e = matrix_unit(big_n, j, i).add(&matrix_unit(big_n, j.neg(), i.neg()).scale(&sign));
    let mut out = Op::zero_op(coinv.ambient.clone());
    for (p, y) in ys.iter().enumerate() {
        let ys = (0..s).fold(Op::identity_g(y.rows().clone()), |acc, _| acc.mul(y));
        out = out.add(&e.embed(&[p], &tens).tensor(&ys));
    }
    out.scale(&-&sgn(j.parity() as u32))
}

/// `F_N(U)` with generator table through `smax`. The table is checked
/// against the expansion of the product formula.
pub fn functor_apply(big_n: usize, u: &AnModule, smax: usize) -> Result<YqnModule, DrinfeldError> {
    let coinv = coinvariants(big_n, u)?;
    let ys: Vec<Op> = y_generators(u.n).iter().map(|y| u.act(y)).collect();
    let table = GenImage::from_fn(big_n, coinv.carrier.clone(), smax, |i, j, s| coinv.induced(&ambient_generator(big_n, &coinv, &ys, i, j, s - 1)));
    let m = YqnModule { big_n, module: u.clone(), coinv, ys, table };
    let from_product = m.product_form().table(smax);
    if from_product != m.table {
        let c = check_tables_agree(&from_product, &m.table, "product formula vs table", "Drinfeld functor action");
        return Err(DrinfeldError::Disagree(c.witness.unwrap_or_default()));
    }
    Ok(m)
}

/// The product and the sum formulas induce the same `ρ(T(u))` on `V`, as a
/// rational identity in `u`.
pub fn check_forms_agree(m: &YqnModule, label: &str) -> CheckOutcome {
    let (prod, sum) = (m.product_form(), m.sum_form());
    let target = aux_space(m.big_n, m.carrier());
    let u = Affine::var(1, 0);
    let cert = certify_products(1, vec![closed_factor(&prod, u.clone(), vec![0, 1], target.clone())], vec![closed_factor(&sum, u, vec![0, 1], target)]);
    CheckOutcome::from_certificate(format!("product and sum formulas agree on coinvariants, {label}"), "Drinfeld functor product formula", &cert)
}

/// The ambient generators commute with `α(w_pq)` for all `p < q` and with
/// `α(z_p)`.
pub fn check_commutation(m: &YqnModule, smax: usize, label: &str) -> CheckOutcome {
    let n = m.module.n;
    let tens = cnn(m.big_n, n);
    let mut group = Vec::new();
    for p in 1..=n {
        for q in p + 1..=n {
            let mut w = perm_id(n);
            w.swap(p - 1, q - 1);
            let a = perm_p(m.big_n).embed(&[p - 1, q - 1], &tens).tensor(&m.module.perm(&w));
            group.push((format!("w{p}{q}"), a));
        }
        group.push((format!("z{p}"), m.coinv.alpha_z(p).clone()));
    }
    let mut count = 0;
    for s in 0..smax {
        for i in SIndex::all(m.big_n) {
            for j in SIndex::all(m.big_n) {
                let o = m.ambient_generator(i, j, s);
                for (name, a) in &group {
                    count += 1;
                    if o.mul(a) != a.mul(&o) {
                        return CheckOutcome::fail(
                            format!("generators commute with the group, {label}"),
                            "Drinfeld functor commutation",
                            format!("i={} j={} s={} with {name}", i.value(), j.value(), s + 1),
                        );
                    }
                }
            }
        }
    }
    CheckOutcome::pass(format!("generators commute with the group, {label}"), "Drinfeld functor commutation", format!("{count} commutators"))
}

/// Symmetry and parity of the table, RTT exactly through the product form.
pub fn check_module(m: &YqnModule, label: &str, rtt: bool) -> Vec<CheckOutcome> {
    let mut out = vec![check_table(&m.table, label)];
    if rtt {
        out.push(check_rtt(&m.product_form(), label));
    }
    out
}

/// `F_N(U_z)` equals the evaluation representation matrix for matrix.
pub fn check_principal_one_point(big_n: usize, z: &GaussRat, smax: usize) -> Vec<CheckOutcome> {
    let label = format!("N={big_n} z={z}");
    let m = match functor_apply(big_n, &principal_series(core::slice::from_ref(z)), smax) {
        Ok(m) => m,
        Err(e) => {
            return vec![CheckOutcome::fail(format!("principal series one point, {label}"), "Drinfeld functor on one-point principal series", e.to_string())]
        }
    };
    let dim = CheckOutcome::from_bool(
        format!("dim F(U_z) = 2N, {label}"),
        "Drinfeld functor on one-point principal series",
        m.dim() == 2 * big_n,
        format!("dim {}", m.dim()),
    );
    if m.dim() != 2 * big_n {
        return vec![dim];
    }
    let eval = eval_rep(big_n, z, smax);
    let eval = GenImage::from_fn(big_n, m.carrier().clone(), smax, |i, j, s| reframe(eval.get(i, j, s), m.carrier(), m.carrier()));
    let same = check_tables_agree(&m.table, &eval, &format!("F(U_z) vs evaluation representation, {label}"), "Drinfeld functor on one-point principal series");
    vec![dim, same]
}

/// Intertwiner `H_n → U_{z_1} ⊙ … ⊙ U_{z_n}`, `Y ↦ Y · (1 ⊗ … ⊗ 1)`.
pub fn check_odot_principal(zs: &[GaussRat]) -> CheckOutcome {
    let name = format!("principal series vs induction product, n={}", zs.len());
    let anchor = "induction product of principal series";
    let ps = principal_series(zs);
    let mut prod = principal_series(&zs[..1]);
    for z in &zs[1..] {
        prod = match odot(&prod, &principal_series(core::slice::from_ref(z))) {
            Ok(m) => m,
            Err(e) => return CheckOutcome::fail(name, anchor, e.to_string()),
        };
    }
    let n = zs.len();
    if prod.dim() != ps.dim() {
        return CheckOutcome::fail(name, anchor, format!("dimensions {} vs {}", prod.dim(), ps.dim()));
    }
    let mut e = Vec::new();
    for (col, b) in hn_basis(n).iter().enumerate() {
        let y = AnElement::basis(AnBasis { c: b.c, w: b.w.clone(), x: vec![0; n] }, GaussRat::one());
        for (r, v) in prod.act(&y).column(0) {
            e.push((*r as usize, col, v.clone()));
        }
    }
    let phi = Op::from_entries(prod.space.clone(), ps.space.clone(), e);
    if Mat::from_op(&phi).rank() != ps.dim() {
        return CheckOutcome::fail(name, anchor, "intertwiner is singular");
    }
    let gens =
        (0..n.saturating_sub(1)).map(|q| (&ps.s[q], &prod.s[q])).chain((0..n).map(|p| (&ps.c[p], &prod.c[p]))).chain((0..n).map(|p| (&ps.x[p], &prod.x[p])));
    for (k, (a, b)) in gens.enumerate() {
        if phi.mul(a) != b.mul(&phi) {
            return CheckOutcome::fail(name, anchor, format!("generator {k} not intertwined"));
        }
    }
    CheckOutcome::pass(name, anchor, format!("dim {}", ps.dim()))
}

/// `F_N(U ⊙ U') ≅ F_N(U) ⊗ F_N(U')` through
/// `a⊗b⊗a'⊗b' ↦ a⊗a'⊗b⊗b' · (-1)^{deg a' deg b}`.
pub fn check_induction_tensor(big_n: usize, u: &AnModule, u2: &AnModule, smax: usize, label: &str) -> Vec<CheckOutcome> {
    let name = format!("F(U⊙U') ≅ F(U)⊗F(U'), {label}");
    let anchor = "Drinfeld functor and induction product";
    let built = (|| -> Result<_, DrinfeldError> {
        let uo = odot(u, u2)?;
        Ok((functor_apply(big_n, u, smax)?, functor_apply(big_n, u2, smax)?, functor_apply(big_n, &uo, smax)?))
    })();
    let (v1, v2, vo) = match built {
        Ok(t) => t,
        Err(e) => return vec![CheckOutcome::fail(name, anchor, e.to_string())],
    };
    let dims = CheckOutcome::from_bool(
        format!("dim F(U⊙U') = dim F(U) dim F(U'), {label}"),
        anchor,
        vo.dim() == v1.dim() * v2.dim(),
        format!("{} = {} · {}", vo.dim(), v1.dim(), v2.dim()),
    );
    if vo.dim() != v1.dim() * v2.dim() {
        return vec![dims];
    }
    let tensor = v1.table.coproduct(&v2.table);
    let mut out = vec![dims];
    let space = even_intertwiners(&vo.table, &tensor);
    let mut combo: Option<Op> = None;
    for (k, x) in space.iter().enumerate() {
        let x = x.scale(&GaussRat::from_int(k as i64 + 1));
        combo = Some(match combo {
            None => x,
            Some(c) => c.add(&x),
        });
    }
    let invertible = combo.as_ref().is_some_and(|x| Mat::from_op(x).rank() == vo.dim());
    out.push(CheckOutcome::from_bool(
        name,
        anchor,
        invertible,
        format!("{} even intertwiners on generators with s ≤ {smax}, invertible {invertible}", space.len()),
    ));
    let phi = induction_map(big_n, u, u2, &v1, &v2, &vo);
    let literal = (1..=smax).all(|s| SIndex::all(big_n).all(|i| SIndex::all(big_n).all(|j| phi.mul(tensor.get(i, j, s)) == vo.table.get(i, j, s).mul(&phi))));
    out.push(
        CheckOutcome::from_bool(
            format!("identification a⊗b⊗a'⊗b' ↦ a⊗a'⊗1⊗b⊗b' intertwines, {label}"),
            anchor,
            literal,
            if literal { "commutes with all generators".to_string() } else { "does not commute with the generators".to_string() },
        )
        .as_discrepancy(IDENTIFICATION_NOTE),
    );
    out
}

const IDENTIFICATION_NOTE: &str = "the map from coset representatives is a bijection of coinvariants but the product form only acts correctly on fully invariant lifts, so it is not an intertwiner; an invertible intertwiner exists";

/// Even solutions `X` of `a_g X = X b_g` over all table generators.
pub fn even_intertwiners(a: &GenImage, b: &GenImage) -> Vec<Op> {
    let (ra, rb) = (a.carrier().clone(), b.carrier().clone());
    let (da, db) = (ra.dim(), rb.dim());
    let mut var = BTreeMap::new();
    for r in 0..da {
        for c in 0..db {
            if ra.parity(r) == rb.parity(c) {
                let k = var.len();
                var.insert((r, c), k);
            }
        }
    }
    let mut ech = Echelon::new(PivotRule::First);
    for s in 1..=a.smax().min(b.smax()) {
        for i in SIndex::all(a.n()) {
            for j in SIndex::all(a.n()) {
                let mut eqs: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
                for (r, k, v) in a.get(i, j, s).entries() {
                    for c in 0..db {
                        if let Some(&x) = var.get(&(k, c)) {
                            let e = eqs.entry((r, c)).or_default().entry(x).or_insert_with(GaussRat::zero);
                            *e = &*e + v;
                        }
                    }
                }
                for (k, c, v) in b.get(i, j, s).entries() {
                    for r in 0..da {
                        if let Some(&x) = var.get(&(r, k)) {
                            let e = eqs.entry((r, c)).or_default().entry(x).or_insert_with(GaussRat::zero);
                            *e = &*e - v;
                        }
                    }
                }
                for (_, mut eq) in eqs {
                    eq.retain(|_, v| !v.is_zero());
                    if !eq.is_empty() {
                        ech.insert(&eq);
                    }
                }
            }
        }
    }
    let mut m = Mat::zero(ech.dim(), var.len());
    for (row, (_, v)) in ech.basis().enumerate() {
        for (c, x) in v {
            m.set(row, *c, x.clone());
        }
    }
    let cells: Vec<(usize, usize)> = var.keys().copied().collect();
    m.kernel()
        .into_iter()
        .map(|v| {
            let e: Vec<_> = v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (cells[k].0, cells[k].1, x)).collect();
            Op::from_entries(ra.clone(), rb.clone(), e)
        })
        .collect()
}

fn induction_map(big_n: usize, u: &AnModule, u2: &AnModule, v1: &YqnModule, v2: &YqnModule, vo: &YqnModule) -> Op {
    let n2 = u2.n;
    let tdim2 = cnn(big_n, n2).dim();
    let (d1, d2) = (u.dim(), u2.dim());
    let t2 = cnn(big_n, n2);
    let mut e = Vec::new();
    for (k1, &c1) in v1.coinv.basis.iter().enumerate() {
        let (a1, b1) = (c1 / d1, c1 % d1);
        for (k2, &c2) in v2.coinv.basis.iter().enumerate() {
            let (a2, b2) = (c2 / d2, c2 % d2);
            let sign = t2.parity(a2) & u.space.parity(b1);
            let amb = (a1 * tdim2 + a2) * vo.module.dim() + b1 * d2 + b2;
            let col = k1 * v2.dim() + k2;
            for (r, v) in vo.coinv.projection.column(amb) {
                e.push((*r as usize, col, if sign == 1 { -v } else { v.clone() }));
            }
        }
    }
    Op::from_entries(vo.carrier().clone(), Space::tensor(v1.carrier(), v2.carrier()), e)
}

/// Conjugating `U` by an even invertible matrix gives a module whose image
/// is intertwined with `F_N(U)` by the induced map of `1 ⊗ g`.
pub fn check_functoriality(big_n: usize, u: &AnModule, smax: usize, label: &str) -> CheckOutcome {
    let name = format!("equivalent modules give equivalent images, {label}");
    let anchor = "functoriality of the Drinfeld functor";
    let d = u.dim();
    let par = u.parities();
    let mut e: Vec<(usize, usize, GaussRat)> = (0..d).map(|k| (k, k, GaussRat::one())).collect();
    for r in 0..d {
        for c in r + 1..d {
            if par[r] == par[c] && (r + 2 * c) % 3 == 0 {
                e.push((r, c, g(((r + c) % 3) as i64 + 1)));
            }
        }
    }
    let gm = Op::from_entries(u.space.clone(), u.space.clone(), e);
    let built = (|| -> Result<_, DrinfeldError> {
        let u2 = u.conjugate(&gm)?;
        Ok((functor_apply(big_n, u, smax)?, functor_apply(big_n, &u2, smax)?))
    })();
    let (v1, v2) = match built {
        Ok(t) => t,
        Err(e) => return CheckOutcome::fail(name, anchor, e.to_string()),
    };
    let lift = Op::identity_g(cnn(big_n, u.n)).tensor(&gm);
    let theta = v2.coinv.projection.mul(&lift.mul(&v1.coinv.section));
    if v1.dim() != v2.dim() || Mat::from_op(&theta).rank() != v1.dim() {
        return CheckOutcome::fail(name, anchor, "induced map is not invertible");
    }
    for s in 1..=smax {
        for i in SIndex::all(big_n) {
            for j in SIndex::all(big_n) {
                if theta.mul(v1.table.get(i, j, s)) != v2.table.get(i, j, s).mul(&theta) {
                    return CheckOutcome::fail(name, anchor, format!("i={} j={} s={s}", i.value(), j.value()));
                }
            }
        }
    }
    CheckOutcome::pass(name, anchor, format!("dim {}", v1.dim()))
}

/// Generators and relations span agree with the full group.
pub fn check_generator_span(big_n: usize, u: &AnModule) -> CheckOutcome {
    let name = format!("coinvariant relations from generators span the group relations, N={big_n} n={}", u.n);
    let anchor = "hyperoctahedral coinvariants";
    match coinvariants(big_n, u) {
        Ok(c) => {
            let full = c.full_group_relation_dim();
            CheckOutcome::from_bool(name, anchor, full == c.relation_dim(), format!("{} vs {full}", c.relation_dim()))
        }
        Err(e) => CheckOutcome::fail(name, anchor, e.to_string()),
    }
}

/// Type of a graded irreducible module by its supercommutant.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchurType {
    /// The acting algebra is all of `End(V)`.
    Matrix,
    /// The acting algebra is the supercommutant of an odd `J` with `J²`
    /// a nonzero scalar.
    Queer,
}

/// A proper nonzero graded invariant subspace given by homogeneous
/// vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantSubspace {
    pub ambient: usize,
    pub basis: Vec<SparseVec>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility {
    Irreducible { kind: SchurType, algebra_dim: usize, witness: String },
    Reducible(InvariantSubspace),
    Inconclusive(String),
}

#[derive(Clone, Copy, Debug)]
pub struct IrreducibilityConfig {
    pub seed: u64,
    pub iterations: usize,
    /// Carriers above this dimension are reported inconclusive.
    pub max_dim: usize,
}

impl Default for IrreducibilityConfig {
    fn default() -> Self {
        IrreducibilityConfig { seed: 1, iterations: 32, max_dim: 32 }
    }
}

/// All nonzero generator images of a table.
pub fn table_generators(t: &GenImage) -> Vec<Op> {
    let mut out = Vec::new();
    for s in 1..=t.smax() {
        for i in SIndex::all(t.n()) {
            for j in SIndex::all(t.n()) {
                let op = t.get(i, j, s);
                if !op.is_zero() && !out.contains(op) {
                    out.push(op.clone());
                }
            }
        }
    }
    out
}

/// Direct sum of two images of the same generators.
pub fn direct_sum_table(a: &GenImage, b: &GenImage) -> GenImage {
    let par: Vec<u8> = (0..a.carrier().dim()).map(|k| a.carrier().parity(k)).chain((0..b.carrier().dim()).map(|k| b.carrier().parity(k))).collect();
    let sp = Space::new(vec![par]);
    let d = a.carrier().dim();
    GenImage::from_fn(a.n(), sp.clone(), a.smax().min(b.smax()), |i, j, s| {
        let (x, y) = (a.get(i, j, s), b.get(i, j, s));
        Op::from_entries(sp.clone(), sp.clone(), x.entries().map(|(r, c, v)| (r, c, v.clone())).chain(y.entries().map(|(r, c, v)| (r + d, c + d, v.clone()))))
    })
}

fn spin(gens: &[Op], seeds: &[SparseVec]) -> Echelon {
    let mut ech = Echelon::new(PivotRule::First);
    let mut queue: VecDeque<SparseVec> = VecDeque::new();
    for s in seeds {
        if ech.insert(s) {
            queue.push_back(s.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        for op in gens {
            let w = apply_sparse(op, &v);
            if ech.insert(&w) {
                queue.push_back(w);
            }
        }
    }
    ech
}

fn homogeneous_parts(v: &SparseVec, sp: &Space) -> Vec<SparseVec> {
    (0..2u8).map(|p| v.iter().filter(|(k, _)| sp.parity(**k) == p).map(|(k, a)| (*k, a.clone())).collect::<SparseVec>()).filter(|v| !v.is_empty()).collect()
}

fn homogeneous_basis(ech: &Echelon, sp: &Space) -> Vec<SparseVec> {
    let mut out = Echelon::new(PivotRule::First);
    for (_, v) in ech.basis() {
        for part in homogeneous_parts(v, sp) {
            out.insert(&part);
        }
    }
    out.basis().map(|(_, v)| v.clone()).collect()
}

/// `true` if the vectors are homogeneous, span a proper nonzero subspace,
/// and every generator maps them into their span.
pub fn verify_invariant_subspace(gens: &[Op], sub: &InvariantSubspace) -> bool {
    let Some(sp) = gens.first().map(|o| o.rows().clone()) else { return false };
    let mut ech = Echelon::new(PivotRule::First);
    for v in &sub.basis {
        if homogeneous_parts(v, &sp).len() != 1 {
            return false;
        }
        ech.insert(v);
    }
    if ech.dim() == 0 || ech.dim() >= sub.ambient || sub.ambient != sp.dim() {
        return false;
    }
    sub.basis.iter().all(|v| gens.iter().all(|op| ech.contains(&apply_sparse(op, v))))
}

fn proper(ech: &Echelon, d: usize) -> bool {
    ech.dim() > 0 && ech.dim() < d
}

/// Kernel of the space spanned by `rows` under the standard pairing.
fn annihilator(rows: &[SparseVec], d: usize, sp: &Space) -> Vec<SparseVec> {
    let mut m = Mat::zero(rows.len(), d);
    for (r, v) in rows.iter().enumerate() {
        for (k, a) in v {
            m.set(r, *k, a.clone());
        }
    }
    let mut ech = Echelon::new(PivotRule::First);
    for v in m.kernel() {
        for part in homogeneous_parts(&dense_to_sparse(&v), sp) {
            ech.insert(&part);
        }
    }
    ech.basis().map(|(_, v)| v.clone()).collect()
}

fn random_word(rng: &mut ChaCha8Rng, gens: &[Op], max_len: u32) -> Op {
    let len = 1 + rng.next_u32() % max_len;
    let mut op = gens[rng.next_u32() as usize % gens.len()].clone();
    for _ in 1..len {
        op = gens[rng.next_u32() as usize % gens.len()].mul(&op);
    }
    op
}

/// Searches for an invariant subspace by spinning seeds: standard basis
/// vectors, homogeneous parts of random vectors, and homogeneous kernel
/// vectors of random homogeneous algebra elements.
fn search_submodule(gens: &[Op], rng: &mut ChaCha8Rng, iterations: usize) -> Option<Vec<SparseVec>> {
    let sp = gens[0].rows().clone();
    let d = sp.dim();
    for k in 0..d {
        let ech = spin(gens, &[SparseVec::from([(k, GaussRat::one())])]);
        if proper(&ech, d) {
            return Some(homogeneous_basis(&ech, &sp));
        }
    }
    for _ in 0..iterations {
        let v: SparseVec = (0..d).map(|k| (k, g((rng.next_u32() % 7) as i64 - 3))).filter(|(_, a)| !a.is_zero()).collect();
        for part in homogeneous_parts(&v, &sp) {
            let ech = spin(gens, &[part]);
            if proper(&ech, d) {
                return Some(homogeneous_basis(&ech, &sp));
            }
        }
        let a = random_word(rng, gens, 3);
        let b = random_word(rng, gens, 3);
        let elt = if a.parity() == b.parity() { a.add(&b.scale(&g((rng.next_u32() % 5) as i64 - 2))) } else { a };
        for kv in Mat::from_op(&elt).kernel() {
            for part in homogeneous_parts(&dense_to_sparse(&kv), &sp) {
                let ech = spin(gens, &[part]);
                if proper(&ech, d) {
                    return Some(homogeneous_basis(&ech, &sp));
                }
            }
        }
    }
    None
}

/// Spanning closure of the algebra generated by `gens` and the identity.
fn algebra_span(gens: &[Op], cap: usize) -> usize {
    let id = Op::identity_g(gens[0].rows().clone());
    let mut ech = Echelon::new(PivotRule::First);
    ech.insert(&op_key(&id));
    let mut queue = VecDeque::from([id]);
    while let Some(a) = queue.pop_front() {
        for gen in gens {
            let b = gen.mul(&a);
            if ech.insert(&op_key(&b)) {
                if ech.dim() >= cap {
                    return ech.dim();
                }
                queue.push_back(b);
            }
        }
    }
    ech.dim()
}

/// Homogeneous operators `X` of parity `parity` with
/// `g X = (-1)^{|g||X|} X g` for every generator.
fn supercommutant(gens: &[Op], parity: u8) -> Vec<Op> {
    let sp = gens[0].rows().clone();
    let d = sp.dim();
    let unknowns: Vec<(usize, usize)> = (0..d).flat_map(|r| (0..d).map(move |c| (r, c))).filter(|&(r, c)| sp.parity(r) ^ sp.parity(c) == parity).collect();
    let index: BTreeMap<(usize, usize), usize> = unknowns.iter().enumerate().map(|(k, rc)| (*rc, k)).collect();
    let mut eqs = Echelon::new(PivotRule::First);
    for gen in gens {
        let sign = if gen.parity() == Some(1) && parity == 1 { g(-1) } else { g(1) };
        // (g X)_{rc} = Σ_k g_{rk} X_{kc};  (X g)_{rc} = Σ_k X_{rk} g_{kc}
        let mut rows: BTreeMap<(usize, usize), SparseVec> = BTreeMap::new();
        for (r, k, a) in gen.entries() {
            for c in 0..d {
                if let Some(&u) = index.get(&(k, c)) {
                    let e = rows.entry((r, c)).or_default().entry(u).or_insert_with(GaussRat::zero);
                    *e = &*e + a;
                }
            }
        }
        for (k, c, a) in gen.entries() {
            for r in 0..d {
                if let Some(&u) = index.get(&(r, k)) {
                    let e = rows.entry((r, c)).or_default().entry(u).or_insert_with(GaussRat::zero);
                    *e = &*e - &(&sign * a);
                }
            }
        }
        for (_, mut v) in rows {
            v.retain(|_, a| !a.is_zero());
            eqs.insert(&v);
        }
    }
    let pivots: BTreeSet<usize> = eqs.pivots().collect();
    let mut out = Vec::new();
    for f in (0..unknowns.len()).filter(|k| !pivots.contains(k)) {
        let mut e = vec![(unknowns[f].0, unknowns[f].1, GaussRat::one())];
        for (p, row) in eqs.basis() {
            if let Some(a) = row.get(&f) {
                e.push((unknowns[*p].0, unknowns[*p].1, -a));
            }
        }
        out.push(Op::from_entries(sp.clone(), sp.clone(), e));
    }
    out
}

/// Decides graded irreducibility of the module generated by `gens`.
/// Irreducibility is only reported with a dimension witness; reducibility
/// only with a verified invariant subspace.
pub fn irreducibility_test(gens: &[Op], cfg: &IrreducibilityConfig) -> Irreducibility {
    let gens: Vec<Op> = gens.iter().filter(|o| !o.is_zero()).cloned().collect();
    let Some(first) = gens.first() else { return Irreducibility::Inconclusive("no nonzero generators".into()) };
    let sp = first.rows().clone();
    let d = sp.dim();
    if d > cfg.max_dim {
        return Irreducibility::Inconclusive(format!("dimension {d} exceeds {}", cfg.max_dim));
    }
    if gens.iter().any(|o| o.parity().is_none()) {
        return Irreducibility::Inconclusive("inhomogeneous generator".into());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    if let Some(basis) = search_submodule(&gens, &mut rng, cfg.iterations) {
        let sub = InvariantSubspace { ambient: d, basis };
        if verify_invariant_subspace(&gens, &sub) {
            return Irreducibility::Reducible(sub);
        }
    }
    let transposed: Vec<Op> = gens.iter().map(Op::transpose_plain).collect();
    if let Some(dual) = search_submodule(&transposed, &mut rng, cfg.iterations) {
        let sub = InvariantSubspace { ambient: d, basis: annihilator(&dual, d, &sp) };
        if verify_invariant_subspace(&gens, &sub) {
            return Irreducibility::Reducible(sub);
        }
    }
    let dim_a = algebra_span(&gens, d * d);
    if dim_a == d * d {
        return Irreducibility::Irreducible { kind: SchurType::Matrix, algebra_dim: dim_a, witness: format!("algebra span {dim_a} = {d}^2") };
    }
    if 2 * dim_a == d * d {
        let even = supercommutant(&gens, 0);
        let odd = supercommutant(&gens, 1);
        if even.len() == 1 && odd.len() == 1 {
            let j2 = odd[0].mul(&odd[0]);
            let id = Op::identity_g(sp.clone());
            let lambda = j2.get(0, 0).cloned().unwrap_or_else(GaussRat::zero);
            if !lambda.is_zero() && j2 == id.scale(&lambda) {
                return Irreducibility::Irreducible {
                    kind: SchurType::Queer,
                    algebra_dim: dim_a,
                    witness: format!("algebra span {dim_a} = {d}^2/2, supercommutant spanned by 1 and odd J with J^2 = {lambda}"),
                };
            }
        }
    }
    Irreducibility::Inconclusive(format!("algebra span {dim_a} of {} after {} iterations", d * d, cfg.iterations))
}

/// Runs the tester on a table and, when irreducible, checks that the
/// centre acts by scalars.
pub fn check_irreducible(m: &YqnModule, cfg: &IrreducibilityConfig, order: usize, label: &str) -> Vec<CheckOutcome> {
    let name = format!("F(U) is irreducible, {label}");
    let anchor = "irreducibility of the Drinfeld functor image";
    match irreducibility_test(&table_generators(&m.table), cfg) {
        Irreducibility::Irreducible { witness, .. } => {
            let z = centre_series(&m.product_form(), order);
            let scalars = (0..=order).all(|s| z.scalar(s).is_some());
            vec![
                CheckOutcome::pass(name, anchor, witness),
                CheckOutcome::from_bool(format!("centre acts by scalars, {label}"), "centre on irreducible modules", scalars, format!("orders ≤ {order}")),
            ]
        }
        Irreducibility::Reducible(sub) => vec![CheckOutcome::fail(name, anchor, format!("invariant subspace of dimension {}", sub.basis.len()))],
        Irreducibility::Inconclusive(why) => vec![CheckOutcome::new(name, anchor, crate::check::Status::Inconclusive, why)],
    }
}

/// `V ⊕ V` must come back reducible with a verified certificate.
pub fn check_reducible_control(m: &YqnModule, cfg: &IrreducibilityConfig, label: &str) -> CheckOutcome {
    let name = format!("V ⊕ V has an invariant subspace, {label}");
    let anchor = "irreducibility of the Drinfeld functor image";
    let sum = direct_sum_table(&m.table, &m.table);
    let gens = table_generators(&sum);
    match irreducibility_test(&gens, cfg) {
        Irreducibility::Reducible(sub) => {
            let ok = verify_invariant_subspace(&gens, &sub);
            CheckOutcome::from_bool(name, anchor, ok, format!("certificate of dimension {} in {}", sub.basis.len(), sub.ambient))
        }
        other => CheckOutcome::fail(name, anchor, format!("{other:?}")),
    }
}

/// Which input module to push through the functor.
#[derive(Clone, Debug, PartialEq)]
pub enum ModuleSpec {
    /// Principal series at the given points.
    Principal(Vec<GaussRat>),
    /// Pullback along `γ_m` of `(C^{M|M})^{⊗(m+n)}`.
    Pullback { m: usize, n: usize, big_m: usize },
}

impl ModuleSpec {
    pub fn build(&self) -> AnModule {
        match self {
            ModuleSpec::Principal(zs) => principal_series(zs),
            ModuleSpec::Pullback { m, n, big_m } => pullback_module(*m, *n, *big_m),
        }
    }

    pub fn label(&self) -> String {
        match self {
            ModuleSpec::Principal(zs) => format!("principal z=({})", zs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")),
            ModuleSpec::Pullback { m, n, big_m } => format!("pullback m={m} n={n} M={big_m}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DrinfeldCheck {
    Functor,
    FormsAgree,
    Induction,
    Irreducible,
}

impl DrinfeldCheck {
    pub const ALL: [DrinfeldCheck; 4] = [DrinfeldCheck::Functor, DrinfeldCheck::FormsAgree, DrinfeldCheck::Induction, DrinfeldCheck::Irreducible];

    pub fn name(self) -> &'static str {
        match self {
            DrinfeldCheck::Functor => "functor",
            DrinfeldCheck::FormsAgree => "prop52",
            DrinfeldCheck::Induction => "prop53",
            DrinfeldCheck::Irreducible => "irreducible",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Clone, Debug)]
pub struct DrinfeldConfig {
    pub big_n: usize,
    pub modules: Vec<ModuleSpec>,
    pub smax: usize,
    /// Whether to certify RTT exactly on each module.
    pub rtt: bool,
    pub irreducibility: IrreducibilityConfig,
}

impl DrinfeldConfig {
    pub fn new(big_n: usize, modules: Vec<ModuleSpec>, smax: usize, seed: u64) -> Self {
        DrinfeldConfig { big_n, modules, smax, rtt: true, irreducibility: IrreducibilityConfig { seed, ..Default::default() } }
    }
}

/// Runs the selected checks on every configured module.
pub fn run_checks(cfg: &DrinfeldConfig, which: &[DrinfeldCheck]) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let big_n = cfg.big_n;
    for spec in &cfg.modules {
        let u = spec.build();
        let label = format!("N={big_n} {}", spec.label());
        let m = match functor_apply(big_n, &u, cfg.smax) {
            Ok(m) => m,
            Err(e) => {
                out.push(CheckOutcome::fail(format!("build F(U), {label}"), "Drinfeld functor action", e.to_string()));
                continue;
            }
        };
        for c in which {
            match c {
                DrinfeldCheck::Functor => {
                    out.extend(check_module(&m, &label, cfg.rtt));
                    out.push(check_functoriality(big_n, &u, cfg.smax, &label));
                    if let ModuleSpec::Principal(zs) = spec {
                        if zs.len() == 1 {
                            out.extend(check_principal_one_point(big_n, &zs[0], cfg.smax));
                        }
                    }
                }
                DrinfeldCheck::FormsAgree => {
                    out.push(check_forms_agree(&m, &label));
                    out.push(check_commutation(&m, cfg.smax, &label));
                }
                DrinfeldCheck::Induction => {
                    if let ModuleSpec::Principal(zs) = spec {
                        if zs.len() >= 2 {
                            out.push(check_odot_principal(zs));
                            let (a, b) = (principal_series(&zs[..1]), principal_series(&zs[1..]));
                            out.extend(check_induction_tensor(big_n, &a, &b, cfg.smax, &label));
                        }
                    }
                }
                DrinfeldCheck::Irreducible => {
                    out.extend(check_irreducible(&m, &cfg.irreducibility, 4, &label));
                    out.push(check_reducible_control(&m, &cfg.irreducibility, &label));
                }
            }
        }
    }
    out
}
