//! The dual algebra `Y*` through its evaluation representation
//! `T*(v) -> R(z, v)`, the pairing with the Yangian, Gram matrices of the
//! graded pairing, the truncated universal R-matrix and the double relation.
//!
//! `ρ*(T*(v)) = Σ ρ*(T*_ij(v)) ⊗ E_ij` acts on `carrier ⊗ C^{N|N}`, where
//! `T*_ij(v) = δ_ij + T_ij^(-1) + Σ_{r≥2} T_ij^(-r) v^{r-1}`. Dual images are
//! polynomials in `t`, the k-th carrier factor sitting at `z_k = 1/(a_k t)`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::check::{CheckOutcome, Status};
use crate::identity::{certify_products, Affine, OpFactor};
use crate::linalg::Mat;
use crate::rmatrix::Pencil;
use crate::scalar::{GaussRat, TruncSeries};
use crate::superop::{cnn, eta, matrix_unit, sgn, Op, SIndex, Space};
use crate::yangian::{eval_rep, multi_eval_rep, GenImage};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PairingError {
    #[error("basis of degree {degree} exceeds {limit} monomials")]
    BasisOverflow { degree: u32, limit: usize },
    #[error("pairing matrix up to degree {0} is singular")]
    SingularGram(u32),
    #[error("table holds degrees up to {have}, degree {need} requested")]
    TableTooShort { have: usize, need: usize },
}

/// `T_ij^(s)`: a generator of `Y` for `s > 0`, of `Y*` for `s < 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub i: SIndex,
    pub j: SIndex,
    pub s: i32,
}

impl Gen {
    pub fn new(i: SIndex, j: SIndex, s: i32) -> Self {
        assert!(s != 0, "generators have nonzero degree");
        Gen { i, j, s }
    }

    pub fn parity(&self) -> u8 {
        self.i.parity() ^ self.j.parity()
    }

    pub fn degree(&self) -> u32 {
        self.s.unsigned_abs()
    }

    pub fn is_dual(&self) -> bool {
        self.s < 0
    }
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({})[{},{}]", self.s, self.i.value(), self.j.value())
    }
}

pub fn parity_of(m: &[Gen]) -> u8 {
    m.iter().fold(0, |p, g| p ^ g.parity())
}

pub fn degree_of(m: &[Gen]) -> u32 {
    m.iter().map(Gen::degree).sum()
}

pub fn mono_string(m: &[Gen]) -> String {
    if m.is_empty() {
        return String::from("1");
    }
    let parts: Vec<String> = m.iter().map(|g| format!("{g}")).collect();
    parts.join(" ")
}

/// `Σ_{a<b} p_a p_b`, the sign collected when a product of matrices
/// `T_1 … T_m` is split into matrix units and generator monomials.
fn pair_sign(m: &[Gen]) -> u32 {
    let mut acc = 0u32;
    let mut seen = 0u32;
    for g in m {
        let p = g.parity() as u32;
        acc += seen * p;
        seen += p;
    }
    acc & 1
}

fn pair_index(n: usize, i: SIndex, j: SIndex) -> usize {
    i.ord(n) * 2 * n + j.ord(n)
}

/// Splits an operator on `carrier ⊗ C^{N|N}` into the `ρ*(T*_ij)` pieces.
pub fn dual_blocks(n: usize, carrier: &Arc<Space>, m: &Op) -> Vec<Op> {
    let w = 2 * n;
    let mut out: Vec<Vec<(usize, usize, GaussRat)>> = vec![Vec::new(); w * w];
    for (r, c, v) in m.entries() {
        let (rr, i) = (r / w, r % w);
        let (cc, j) = (c / w, c % w);
        let p = SIndex::from_ord(i, n).parity() ^ SIndex::from_ord(j, n).parity();
        let s = p & carrier.parity(cc);
        out[i * w + j].push((rr, cc, if s == 1 { -v } else { v.clone() }));
    }
    out.into_iter().map(|e| Op::from_entries(carrier.clone(), carrier.clone(), e)).collect()
}

/// Inverse of [`dual_blocks`].
pub fn dual_assemble(n: usize, carrier: &Arc<Space>, parts: &[Op]) -> Op {
    let w = 2 * n;
    let sp = Space::tensor(carrier, &cnn(n, 1));
    let mut e = Vec::new();
    for (k, x) in parts.iter().enumerate() {
        let (i, j) = (k / w, k % w);
        let p = SIndex::from_ord(i, n).parity() ^ SIndex::from_ord(j, n).parity();
        for (rr, cc, v) in x.entries() {
            let s = p & carrier.parity(cc);
            e.push((rr * w + i, cc * w + j, if s == 1 { -v } else { v.clone() }));
        }
    }
    Op::from_entries(sp.clone(), sp, e)
}

fn zero_series(sp: &Arc<Space>, order: usize) -> TruncSeries<Op> {
    TruncSeries::new(vec![Op::zero_op(sp.clone()); order + 1])
}

fn unit_series(sp: &Arc<Space>, order: usize) -> TruncSeries<Op> {
    let mut c = vec![Op::zero_op(sp.clone()); order + 1];
    c[0] = Op::identity_g(sp.clone());
    TruncSeries::new(c)
}

/// Coefficientwise graded tensor product of two series in `t`.
pub fn series_tensor(x: &TruncSeries<Op>, y: &TruncSeries<Op>) -> TruncSeries<Op> {
    let order = x.order().min(y.order());
    let rows = Space::tensor(x.coeff(0).rows(), y.coeff(0).rows());
    let coeffs = (0..=order)
        .map(|d| {
            let mut acc = Op::zero_op(rows.clone());
            for e in 0..=d {
                let (a, b) = (x.coeff(e), y.coeff(d - e));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc.add(&a.tensor(b));
                }
            }
            acc
        })
        .collect();
    TruncSeries::new(coeffs)
}

/// Images `ρ*(T_ij^(-r))`, `1 ≤ r ≤ order`, as series in `t` to `t^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct DualGenImage {
    n: usize,
    carrier: Arc<Space>,
    scales: Vec<GaussRat>,
    order: usize,
    table: Vec<Vec<TruncSeries<Op>>>,
}

impl DualGenImage {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn carrier(&self) -> &Arc<Space> {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn scales(&self) -> &[GaussRat] {
        &self.scales
    }

    pub fn get(&self, i: SIndex, j: SIndex, r: usize) -> &TruncSeries<Op> {
        &self.table[r - 1][pair_index(self.n, i, j)]
    }

    /// The coefficient `c_p` of `v^p` in `ρ*(T*_ij(v))`.
    fn v_coeff(&self, i: SIndex, j: SIndex, p: usize) -> TruncSeries<Op> {
        let x = self.get(i, j, p + 1).clone();
        if p == 0 && i == j {
            x.add(&unit_series(&self.carrier, self.order))
        } else {
            x
        }
    }

    /// Image of an ordered monomial in the `T^(-r)`.
    pub fn monomial(&self, m: &[Gen]) -> Result<TruncSeries<Op>, PairingError> {
        let mut acc = unit_series(&self.carrier, self.order);
        for g in m {
            assert!(g.is_dual(), "not a generator of the dual algebra");
            let r = g.degree() as usize;
            if r > self.order {
                return Err(PairingError::TableTooShort { have: self.order, need: r });
            }
            acc = acc.mul(self.get(g.i, g.j, r));
        }
        Ok(acc)
    }

    /// Tensor product through `Δ(T*_ij(v)) = Σ_k T*_ik(v) ⊗ T*_kj(v) (-1)^{(ī+k̄)(j̄+k̄)}`.
    pub fn coproduct(&self, o: &DualGenImage) -> DualGenImage {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let order = self.order.min(o.order);
        let carrier = Space::tensor(&self.carrier, &o.carrier);
        let mut table = Vec::with_capacity(order);
        for r in 1..=order {
            let p = r - 1;
            let mut row = Vec::with_capacity(4 * n * n);
            for i in SIndex::all(n) {
                for j in SIndex::all(n) {
                    let mut acc = zero_series(&carrier, order);
                    for k in SIndex::all(n) {
                        let sign = sgn(((i.parity() ^ k.parity()) & (j.parity() ^ k.parity())) as u32);
                        for q in 0..=p {
                            let t = series_tensor(&self.v_coeff(i, k, q), &o.v_coeff(k, j, p - q));
                            acc = acc.add(&t.map(|x| x.scale(&sign)));
                        }
                    }
                    if p == 0 && i == j {
                        acc = acc.sub(&unit_series(&carrier, order));
                    }
                    row.push(acc.truncate(order));
                }
            }
            table.push(row);
        }
        let mut scales = self.scales.clone();
        scales.extend(o.scales.iter().cloned());
        DualGenImage { n, carrier, scales, order, table }
    }
}

/// `ρ*(T*(v)) = R_{1,m+1}(z_1, v) … R_{m,m+1}(z_m, v)` with `z_k = 1/(a_k t)`,
/// expanded in `v` and `t`; a single point with `a = 1` is `ρ*_z`, `t = z^{-1}`.
pub fn dual_eval_rep(n: usize, scales: &[GaussRat], order: usize) -> DualGenImage {
    let m = scales.len();
    let sp = cnn(n, m + 1);
    let carrier = cnn(n, m);
    let r = Pencil::r_matrix(n, 1);
    let mut acc: Vec<TruncSeries<Op>> = (0..order).map(|p| if p == 0 { unit_series(&sp, order) } else { zero_series(&sp, order) }).collect();
    for (k, a) in scales.iter().enumerate() {
        let pk = r.embed(&[k, m], &sp);
        let x: Vec<TruncSeries<Op>> = (0..order)
            .map(|p| {
                let mut c = vec![Op::zero_op(sp.clone()); order + 1];
                if p == 0 {
                    c[0] = pk.constant.clone();
                }
                if p < order {
                    c[p + 1] = pk.minus.add(&pk.plus.scale(&sgn(p as u32))).scale(&a.pow(p as i64 + 1));
                }
                TruncSeries::new(c)
            })
            .collect();
        acc = (0..order)
            .map(|p| {
                let mut s = zero_series(&sp, order);
                for q in 0..=p {
                    s = s.add(&acc[q].mul(&x[p - q]));
                }
                s
            })
            .collect();
    }
    let w = 4 * n * n;
    let mut table = Vec::with_capacity(order);
    for (p, series) in acc.iter().enumerate() {
        let mut per: Vec<Vec<Op>> = vec![Vec::with_capacity(order + 1); w];
        for d in 0..=order {
            for (k, b) in dual_blocks(n, &carrier, series.coeff(d)).into_iter().enumerate() {
                per[k].push(b);
            }
        }
        let mut row: Vec<TruncSeries<Op>> = per.into_iter().map(TruncSeries::new).collect();
        if p == 0 {
            for i in SIndex::all(n) {
                let k = pair_index(n, i, i);
                row[k] = row[k].sub(&unit_series(&carrier, order));
            }
        }
        table.push(row);
    }
    DualGenImage { n, carrier, scales: scales.to_vec(), order, table }
}

/// `T_ij^(-r) -> -(E_ji z^{-r} + E_{-j,-i} (-z)^{-r}) (-1)^ī`, as the `t^r`
/// coefficient at `z = 1/t`.
pub fn dual_explicit(n: usize, i: SIndex, j: SIndex, r: u32) -> Op {
    matrix_unit(n, j, i).add(&matrix_unit(n, j.neg(), i.neg()).scale(&sgn(r))).scale(&-&sgn(i.parity() as u32))
}

/// Single-point table against the explicit formula, the symmetry
/// `T*_ij(-v) = T*_{-i,-j}(v)` and parities.
pub fn check_dual_table(img: &DualGenImage, label: &str) -> Vec<CheckOutcome> {
    let n = img.n();
    let mut explicit = None;
    let mut symmetry = None;
    for r in 1..=img.order() {
        for i in SIndex::all(n) {
            for j in SIndex::all(n) {
                let x = img.get(i, j, r);
                if img.scales().len() == 1 && img.scales()[0].is_one() && explicit.is_none() {
                    for d in 0..=img.order() {
                        let want = if d == r { dual_explicit(n, i, j, r as u32) } else { Op::zero_op(img.carrier().clone()) };
                        if *x.coeff(d) != want {
                            explicit = Some(format!("T({})[{},{}] at t^{d}", -(r as i64), i.value(), j.value()));
                        }
                    }
                }
                let y = img.get(i.neg(), j.neg(), r).map(|o| o.scale(&sgn(r as u32 + 1)));
                if symmetry.is_none() && *x != y {
                    symmetry = Some(format!("T({})[{},{}]", -(r as i64), i.value(), j.value()));
                }
                if symmetry.is_none() && x.coeffs().iter().any(|c| !c.is_zero() && c.parity().is_some_and(|q| q != (i.parity() ^ j.parity()))) {
                    symmetry = Some(format!("parity of T({})[{},{}]", -(r as i64), i.value(), j.value()));
                }
            }
        }
    }
    let mut out = vec![CheckOutcome::from_bool(
        format!("dual table symmetry {label}"),
        "T*(-v) = (η-image) T*(v)",
        symmetry.is_none(),
        symmetry.unwrap_or_else(|| format!("{} generator degrees", img.order())),
    )];
    if img.scales().len() == 1 && img.scales()[0].is_one() {
        out.push(CheckOutcome::from_bool(
            format!("dual explicit images {label}"),
            "explicit dual evaluation images",
            explicit.is_none(),
            explicit.unwrap_or_else(|| String::from("all images agree")),
        ));
    }
    out
}

/// Dual RTT `T*_1(u) T*_2(v) R_12(u,v) = R_12(u,v) T*_2(v) T*_1(u)` and
/// `(id ⊗ η) T*(v) = T*(-v)` in the closed form `T*(v) = R(z, v)`.
pub fn check_dual_relations(n: usize) -> Vec<CheckOutcome> {
    let sp = cnn(n, 3);
    let r = Pencil::r_matrix(n, 1);
    let (r01, r02, r12) = (r.embed(&[0, 1], &sp), r.embed(&[0, 2], &sp), r.embed(&[1, 2], &sp));
    let (z, u, v) = (Affine::var(3, 0), Affine::var(3, 1), Affine::var(3, 2));
    let cert = certify_products(
        3,
        vec![r01.factor(z.clone(), u.clone()), r02.factor(z.clone(), v.clone()), r12.factor(u.clone(), v.clone())],
        vec![r12.factor(u.clone(), v.clone()), r02.factor(z.clone(), v.clone()), r01.factor(z, u)],
    );
    let rtt = CheckOutcome::from_certificate(format!("dual rtt N={n}"), "dual RTT relation", &cert);
    let (z, v) = (Affine::var(2, 0), Affine::var(2, 1));
    let lhs = OpFactor::new(|pt: &[GaussRat]| r.at(&pt[0], &pt[1]).map(|x| eta(&x, 1, n)), vec![2, 2], vec![z.sub(&v).to_poly(), z.add(&v).to_poly()]);
    let cert = certify_products(2, vec![lhs], vec![r.factor(z, v.neg())]);
    let sym = CheckOutcome::from_certificate(format!("dual eta symmetry N={n}"), "(id⊗η)T*(v) = T*(-v)", &cert);
    vec![rtt, sym]
}

/// Evaluates the pairing of generator monomials by reading coefficients of
/// `Π_l (Π_k R_{k,m+l}(u_k, v_l) - 1)`; the `-1` removes the `δ_ij` part of
/// the `v^0` coefficient `δ_ij + T_ij^(-1)`.
pub struct Pairing {
    n: usize,
    q: Vec<Op>,
    ops: BTreeMap<(Vec<u32>, Vec<u32>), Op>,
}

impl Pairing {
    pub fn new(n: usize) -> Self {
        Pairing { n, q: Vec::new(), ops: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coefficient of `v^{a-1} u^{-a}` in `R(u, v)`.
    fn q(&mut self, a: u32) -> Op {
        let r = Pencil::r_matrix(self.n, 1);
        while self.q.len() < a as usize {
            let k = self.q.len() as u32;
            self.q.push(r.minus.add(&r.plus.scale(&sgn(k))));
        }
        self.q[a as usize - 1].clone()
    }

    /// The operator whose matrix-unit coefficients are the signed values
    /// `⟨T^(s_1)…T^(s_m), T^(-r_1)…T^(-r_n)⟩`.
    pub fn coefficient_op(&mut self, s: &[u32], r: &[u32]) -> &Op {
        let key = (s.to_vec(), r.to_vec());
        if !self.ops.contains_key(&key) {
            let op = self.compute(s, r);
            self.ops.insert(key.clone(), op);
        }
        &self.ops[&key]
    }

    fn compute(&mut self, s: &[u32], r: &[u32]) -> Op {
        let (m, k) = (s.len(), r.len());
        let sp = cnn(self.n, m + k);
        if k == 0 {
            return if m == 0 { Op::identity_g(sp) } else { Op::zero_op(sp) };
        }
        let top = s.iter().copied().max().unwrap_or(0);
        for a in 1..=top {
            self.q(a);
        }
        let mut total = Op::zero_op(sp.clone());
        let mut rem = s.to_vec();
        self.columns(0, &mut rem, r, &sp, &Op::identity_g(sp.clone()), &mut total);
        total
    }

    fn columns(&self, l: usize, rem: &mut Vec<u32>, r: &[u32], sp: &Arc<Space>, acc: &Op, total: &mut Op) {
        let m = rem.len();
        if l == r.len() {
            if rem.iter().all(|x| *x == 0) {
                *total = total.add(acc);
            }
            return;
        }
        let mut col = vec![0u32; m];
        let mut choices = Vec::new();
        col_choices(0, rem, r[l] - 1, &mut col, &mut choices);
        for a in choices {
            let mut op = acc.clone();
            for (k, ak) in a.iter().enumerate() {
                if *ak > 0 {
                    op = op.mul(&self.q[*ak as usize - 1].embed(&[k, m + l], sp));
                }
            }
            if op.is_zero() {
                continue;
            }
            for (x, ak) in rem.iter_mut().zip(&a) {
                *x -= ak;
            }
            self.columns(l + 1, rem, r, sp, &op, total);
            for (x, ak) in rem.iter_mut().zip(&a) {
                *x += ak;
            }
        }
    }

    /// `⟨y, ystar⟩` for ordered monomials.
    pub fn value(&mut self, y: &[Gen], ystar: &[Gen]) -> GaussRat {
        assert!(y.iter().all(|g| !g.is_dual()) && ystar.iter().all(Gen::is_dual));
        let s: Vec<u32> = y.iter().map(Gen::degree).collect();
        let r: Vec<u32> = ystar.iter().map(Gen::degree).collect();
        let n = self.n;
        let op = self.coefficient_op(&s, &r);
        let sp = op.rows().clone();
        let row: Vec<usize> = y.iter().chain(ystar).map(|g| g.i.ord(n)).collect();
        let col: Vec<usize> = y.iter().chain(ystar).map(|g| g.j.ord(n)).collect();
        let v = op.unit_coeff(sp.pack(&row), sp.pack(&col)).unwrap_or_else(GaussRat::zero);
        &v * &sgn(pair_sign(y) + pair_sign(ystar))
    }

    /// Bilinear extension to linear combinations.
    pub fn value_lin(&mut self, y: &Element, ystar: &Element) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (a, x) in y {
            for (b, xs) in ystar {
                let v = self.value(x, xs);
                if !v.is_zero() {
                    acc = &acc + &(&(a * b) * &v);
                }
            }
        }
        acc
    }

    /// `⟨X ⊗ Y, X' ⊗ Y'⟩ = ⟨X, X'⟩ ⟨Y, Y'⟩ (-1)^{deg X' deg Y}`.
    pub fn value_tensor(&mut self, y: &Tensor2, ystar: &Tensor2) -> GaussRat {
        self.value_tensor_with(y, ystar, true)
    }

    fn value_tensor_with(&mut self, y: &Tensor2, ystar: &Tensor2, koszul: bool) -> GaussRat {
        let mut acc = GaussRat::zero();
        for (a, x1, x2) in y {
            for (b, w1, w2) in ystar {
                let v1 = self.value(x1, w1);
                if v1.is_zero() {
                    continue;
                }
                let v2 = self.value(x2, w2);
                if v2.is_zero() {
                    continue;
                }
                let sign = sgn((koszul as u8 & parity_of(w1) & parity_of(x2)) as u32);
                acc = &acc + &(&(&(a * b) * &(&v1 * &v2)) * &sign);
            }
        }
        acc
    }
}

fn col_choices(k: usize, rem: &[u32], excess: u32, col: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if k == rem.len() {
        if excess == 0 && col.iter().any(|a| *a > 0) {
            out.push(col.clone());
        }
        return;
    }
    col[k] = 0;
    col_choices(k + 1, rem, excess, col, out);
    for a in 1..=rem[k].min(excess + 1) {
        col[k] = a;
        col_choices(k + 1, rem, excess - (a - 1), col, out);
    }
    col[k] = 0;
}

/// Linear combination of monomials.
pub type Element = Vec<(GaussRat, Vec<Gen>)>;
/// Linear combination of tensors of monomials.
pub type Tensor2 = Vec<(GaussRat, Vec<Gen>, Vec<Gen>)>;

/// The `v^p` coefficient `δ_ij + T_ij^(-1)` (`p = 0`) or `T_ij^(-p-1)`.
fn dual_v_coeff(i: SIndex, j: SIndex, p: u32) -> Element {
    let mut e = vec![(GaussRat::one(), vec![Gen::new(i, j, -(p as i32) - 1)])];
    if p == 0 && i == j {
        e.push((GaussRat::one(), Vec::new()));
    }
    e
}

/// `T_ij^(s)` with `T_ij^(0) = δ_ij`.
fn y_coeff(i: SIndex, j: SIndex, s: u32) -> Element {
    if s > 0 {
        vec![(GaussRat::one(), vec![Gen::new(i, j, s as i32)])]
    } else if i == j {
        vec![(GaussRat::one(), Vec::new())]
    } else {
        Vec::new()
    }
}

/// `Δ` of a generator of either algebra.
pub fn coproduct_gen(n: usize, g: Gen) -> Tensor2 {
    let (i, j) = (g.i, g.j);
    let mut out = Tensor2::new();
    for k in SIndex::all(n) {
        let sign = sgn(((i.parity() ^ k.parity()) & (j.parity() ^ k.parity())) as u32);
        let parts: Vec<(Element, Element)> = if g.is_dual() {
            let p = g.degree() - 1;
            (0..=p).map(|q| (dual_v_coeff(i, k, q), dual_v_coeff(k, j, p - q))).collect()
        } else {
            let s = g.degree();
            (0..=s).map(|q| (y_coeff(i, k, q), y_coeff(k, j, s - q))).collect()
        };
        for (a, b) in parts {
            for (ca, ma) in &a {
                for (cb, mb) in &b {
                    out.push((&(ca * cb) * &sign, ma.clone(), mb.clone()));
                }
            }
        }
    }
    if g.is_dual() && g.degree() == 1 && i == j {
        out.push((GaussRat::from_int(-1), Vec::new(), Vec::new()));
    }
    out
}

/// All generators `T_ij^(±s)`, `1 ≤ s ≤ d`, with arbitrary indices.
pub fn generators(n: usize, d: u32, dual: bool) -> Vec<Gen> {
    let mut out = Vec::new();
    for s in 1..=d as i32 {
        for i in SIndex::all(n) {
            for j in SIndex::all(n) {
                out.push(Gen::new(i, j, if dual { -s } else { s }));
            }
        }
    }
    out
}

/// Compositions of every total `≤ d` into positive parts, the empty one included.
pub fn compositions(d: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    while let Some(c) = frontier.pop() {
        let tot: u32 = c.iter().sum();
        for a in 1..=d - tot {
            let mut e: Vec<u32> = c.clone();
            e.push(a);
            out.push(e.clone());
            frontier.push(e);
        }
    }
    out.sort();
    out
}

/// Support condition: every `⟨T^(s_1)…T^(s_m), T^(-r_1)…T^(-r_n)⟩` with
/// `Σs < Σr` and `Σs + Σr ≤ d` vanishes, checked on whole coefficient
/// operators so that every index choice is covered.
pub fn check_support(p: &mut Pairing, d: u32) -> CheckOutcome {
    let n = p.n();
    let comps = compositions(d);
    let mut values = 0u64;
    for s in &comps {
        for r in &comps {
            let (ss, rr): (u32, u32) = (s.iter().sum(), r.iter().sum());
            if ss >= rr || ss + rr > d {
                continue;
            }
            let op = p.coefficient_op(s, r);
            values += (4 * n * n).pow((s.len() + r.len()) as u32) as u64;
            if let Some((row, col, v)) = op.entries().next() {
                return CheckOutcome::fail(
                    format!("pairing support N={n} degree<={d}"),
                    "pairing support condition",
                    format!("s={s:?} r={r:?} entry ({row},{col}) = {v}"),
                );
            }
        }
    }
    CheckOutcome::pass(format!("pairing support N={n} degree<={d}"), "pairing support condition", format!("{values} index choices vanish"))
}

/// `⟨X, X'⟩ = 0` for homogeneous monomials of opposite parity, both of degree `≤ d`.
pub fn check_parity_support(p: &mut Pairing, d: u32) -> CheckOutcome {
    let n = p.n();
    let mut checked = 0u64;
    for s in compositions(d) {
        for r in compositions(d) {
            let op = p.coefficient_op(&s, &r).clone();
            let sp = op.rows().clone();
            for (row, col, _) in op.entries() {
                checked += 1;
                let par: u8 = (0..sp.arity()).map(|k| sp.slot_parity(row, k) ^ sp.slot_parity(col, k)).fold(0, |a, b| a ^ b);
                let ys: u8 = (0..s.len()).map(|k| sp.slot_parity(row, k) ^ sp.slot_parity(col, k)).fold(0, |a, b| a ^ b);
                if par != 0 {
                    return CheckOutcome::fail(
                        format!("pairing parity N={n} degree<={d}"),
                        "pairing of opposite parities",
                        format!("s={s:?} r={r:?} Y-parity {ys} entry ({row},{col})"),
                    );
                }
            }
        }
    }
    CheckOutcome::pass(format!("pairing parity N={n} degree<={d}"), "pairing of opposite parities", format!("{checked} nonzero values, all parity-matched"))
}

/// Monomial bases of `gr_s Y` and `gr_s Y*`: `T^(s_1)_{i_1 j_1} … T^(s_m)_{i_m j_m}`
/// with `i_k > 0`, degrees non-increasing and odd factors not repeated,
/// paired with `T^(-s_1)_{j_1 i_1} … T^(-s_m)_{j_m i_m}`.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedBasis {
    pub degree: u32,
    pub y: Vec<Vec<Gen>>,
    pub dual: Vec<Vec<Gen>>,
}

pub const BASIS_LIMIT: usize = 4096;

pub fn graded_basis(n: usize, s: u32) -> Result<GradedBasis, PairingError> {
    let mut triples = Vec::new();
    for d in (1..=s).rev() {
        for i in SIndex::positive(n) {
            for j in SIndex::all(n) {
                triples.push((d, i, j));
            }
        }
    }
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut cur = Vec::new();
    fn walk(t: &[(u32, SIndex, SIndex)], start: usize, left: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) -> bool {
        if left == 0 {
            out.push(cur.clone());
            return out.len() <= limit;
        }
        for k in start..t.len() {
            let (d, i, j) = t[k];
            if d > left {
                continue;
            }
            let odd = (i.parity() ^ j.parity()) == 1;
            cur.push(k);
            let ok = walk(t, if odd { k + 1 } else { k }, left - d, cur, out, limit);
            cur.pop();
            if !ok {
                return false;
            }
        }
        true
    }
    if !walk(&triples, 0, s, &mut cur, &mut found, BASIS_LIMIT) {
        return Err(PairingError::BasisOverflow { degree: s, limit: BASIS_LIMIT });
    }
    let y = found.iter().map(|m| m.iter().map(|k| Gen::new(triples[*k].1, triples[*k].2, triples[*k].0 as i32)).collect()).collect();
    let dual = found.iter().map(|m| m.iter().map(|k| Gen::new(triples[*k].2, triples[*k].1, -(triples[*k].0 as i32))).collect()).collect();
    Ok(GradedBasis { degree: s, y, dual })
}

/// Gram matrix of the graded pairing on `gr_s`.
#[derive(Clone, Debug, PartialEq)]
pub struct Gram {
    pub basis: GradedBasis,
    pub matrix: Mat,
    pub rank: usize,
}

pub fn gram_matrix(p: &mut Pairing, s: u32) -> Result<Gram, PairingError> {
    let basis = graded_basis(p.n(), s)?;
    let dim = basis.y.len();
    let mut matrix = Mat::zero(dim, dim);
    for (a, x) in basis.y.iter().enumerate() {
        for (b, w) in basis.dual.iter().enumerate() {
            matrix.set(a, b, p.value(x, w));
        }
    }
    let rank = matrix.rank();
    Ok(Gram { basis, matrix, rank })
}

pub fn check_gram(p: &mut Pairing, s: u32) -> CheckOutcome {
    let name = format!("gram N={} s={s}", p.n());
    match gram_matrix(p, s) {
        Ok(g) => CheckOutcome::from_bool(name, "graded pairing nondegenerate", g.rank == g.matrix.rows, format!("rank {} of {}", g.rank, g.matrix.rows)),
        Err(e) => CheckOutcome::new(name, "graded pairing nondegenerate", Status::Inconclusive, format!("{e}")),
    }
}

fn unit_elem(m: Vec<Gen>) -> Element {
    vec![(GaussRat::one(), m)]
}

/// `⟨XY, X'⟩ = ⟨X ⊗ Y, Δ(X')⟩` and `⟨X, X'Y'⟩ = ⟨Δ(X), X' ⊗ Y'⟩` for
/// generators and units with `deg X + deg Y ≤ d`, `deg X' ≤ d` (and dually).
pub fn check_hopf_pairing(p: &mut Pairing, d: u32) -> Vec<CheckOutcome> {
    let n = p.n();
    let with_unit = |gs: Vec<Gen>| -> Vec<Vec<Gen>> {
        let mut v = vec![Vec::new()];
        v.extend(gs.into_iter().map(|g| vec![g]));
        v
    };
    let ys = with_unit(generators(n, d, false));
    let duals = with_unit(generators(n, d, true));
    let deltas: BTreeMap<Vec<Gen>, Tensor2> = ys
        .iter()
        .chain(&duals)
        .map(|m| {
            let t = match m.first() {
                Some(g) => coproduct_gen(n, *g),
                None => vec![(GaussRat::one(), Vec::new(), Vec::new())],
            };
            (m.clone(), t)
        })
        .collect();
    let mut first = (0u64, None);
    for x in &ys {
        for y in &ys {
            if degree_of(x) + degree_of(y) > d {
                continue;
            }
            let xy: Vec<Gen> = x.iter().chain(y).copied().collect();
            for w in &duals {
                first.0 += 1;
                let lhs = p.value(&xy, w);
                let rhs = p.value_tensor(&vec![(GaussRat::one(), x.clone(), y.clone())], &deltas[w]);
                if lhs != rhs && first.1.is_none() {
                    first.1 = Some(format!("X={} Y={} X'={}: {lhs} vs {rhs}", mono_string(x), mono_string(y), mono_string(w)));
                }
            }
        }
    }
    let mut second = (0u64, None);
    for x in &ys {
        for w1 in &duals {
            for w2 in &duals {
                if degree_of(w1) + degree_of(w2) > d {
                    continue;
                }
                second.0 += 1;
                let ww: Vec<Gen> = w1.iter().chain(w2).copied().collect();
                let lhs = p.value_lin(&unit_elem(x.clone()), &unit_elem(ww));
                let rhs = p.value_tensor(&deltas[x], &vec![(GaussRat::one(), w1.clone(), w2.clone())]);
                if lhs != rhs && second.1.is_none() {
                    second.1 = Some(format!("X={} X'={} Y'={}: {lhs} vs {rhs}", mono_string(x), mono_string(w1), mono_string(w2)));
                }
            }
        }
    }
    let mk = |name: String, anchor: &'static str, r: (u64, Option<String>)| match r.1 {
        None => CheckOutcome::pass(name, anchor, format!("{} triples", r.0)),
        Some(w) => CheckOutcome::fail(name, anchor, w),
    };
    vec![
        mk(format!("hopf pairing product N={n} d={d}"), "<XY,X'> = <X⊗Y,Δ(X')>", first),
        mk(format!("hopf pairing coproduct N={n} d={d}"), "<X,X'Y'> = <Δ(X),X'⊗Y'>", second),
    ]
}

/// `R_D = Σ C[b,σ] Y*_b ⊗ Y_σ` over the monomial bases of degree `≤ D`,
/// `C` the inverse of the full (block-triangular) pairing matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct UniversalR {
    pub n: usize,
    pub degree: u32,
    pub terms: Vec<(GaussRat, Vec<Gen>, Vec<Gen>)>,
}

pub fn truncated_universal_r(p: &mut Pairing, d: u32) -> Result<UniversalR, PairingError> {
    let n = p.n();
    let mut ys = Vec::new();
    let mut duals = Vec::new();
    for s in 0..=d {
        let b = graded_basis(n, s)?;
        ys.extend(b.y);
        duals.extend(b.dual);
    }
    let dim = ys.len();
    let mut pm = Mat::zero(dim, dim);
    for (a, x) in ys.iter().enumerate() {
        for (b, w) in duals.iter().enumerate() {
            pm.set(a, b, p.value(x, w));
        }
    }
    let c = pm.inverse().ok_or(PairingError::SingularGram(d))?;
    let mut terms = Vec::new();
    for (b, w) in duals.iter().enumerate() {
        for (s, x) in ys.iter().enumerate() {
            let v = c.at(b, s);
            if !v.is_zero() {
                terms.push((v.clone(), w.clone(), x.clone()));
            }
        }
    }
    Ok(UniversalR { n, degree: d, terms })
}

impl UniversalR {
    /// `(ρ* ⊗ ρ)(R_D)` as a series in `t`.
    pub fn image(&self, dual: &DualGenImage, rep: &GenImage) -> Result<TruncSeries<Op>, PairingError> {
        let order = self.degree as usize;
        let sp = Space::tensor(dual.carrier(), rep.carrier());
        let mut acc = zero_series(&sp, order);
        for (c, w, x) in &self.terms {
            let left = dual.monomial(w)?.truncate(order);
            let mut right = Op::identity_g(rep.carrier().clone());
            for g in x {
                if g.degree() as usize > rep.smax() {
                    return Err(PairingError::TableTooShort { have: rep.smax(), need: g.degree() as usize });
                }
                right = right.mul(rep.get(g.i, g.j, g.degree() as usize));
            }
            let term = left.map(|l| l.tensor(&right).scale(c));
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

fn series_embed(x: &TruncSeries<Op>, positions: &[usize], target: &Arc<Space>) -> TruncSeries<Op> {
    x.map(|o| o.embed(positions, target))
}

fn first_series_difference(a: &TruncSeries<Op>, b: &TruncSeries<Op>) -> Option<String> {
    (0..=a.order().min(b.order())).find(|d| a.coeff(*d) != b.coeff(*d)).map(|d| format!("coefficient of t^{d}"))
}

/// `(ρ*_z ⊗ ρ_w)(R_D)` against `R(z, w) = 1 - Σ_d z^{-d} w^{d-1} P(1 + (-1)^d J J)`
/// through `z^{-D}`, for each `w`.
pub fn check_universal_r_evaluation(p: &mut Pairing, d: u32, ws: &[GaussRat]) -> CheckOutcome {
    let n = p.n();
    let name = format!("universal R evaluation N={n} D={d}");
    let anchor = "(ρ*_z⊗ρ_w)(R) = R(z,w)";
    let ur = match truncated_universal_r(p, d) {
        Ok(u) => u,
        Err(e) => return CheckOutcome::new(name, anchor, Status::Inconclusive, format!("{e}")),
    };
    let order = d as usize;
    let dual = dual_eval_rep(n, &[GaussRat::one()], order);
    let r = Pencil::r_matrix(n, 1);
    for w in ws {
        let rep = eval_rep(n, w, order.max(1));
        let got = match ur.image(&dual, &rep) {
            Ok(g) => g,
            Err(e) => return CheckOutcome::new(name, anchor, Status::Inconclusive, format!("{e}")),
        };
        let want = TruncSeries::new(
            (0..=order).map(|k| if k == 0 { r.constant.clone() } else { r.minus.add(&r.plus.scale(&sgn(k as u32 - 1))).scale(&w.pow(k as i64 - 1)) }).collect(),
        );
        if let Some(at) = first_series_difference(&got, &want) {
            return CheckOutcome::fail(name, anchor, format!("w={w}: {at}"));
        }
    }
    CheckOutcome::pass(name, anchor, format!("{} terms, {} values of w", ur.terms.len(), ws.len()))
}

/// `(Δ ⊗ id)(R) = R_13 R_23` and `(id ⊗ Δ)(R) = R_12 R_13` through degree
/// `D`, in `ρ*_{z_1} ⊗ ρ*_{z_2} ⊗ ρ_w` and `ρ*_z ⊗ ρ_{w_1} ⊗ ρ_{w_2}`.
pub fn check_universal_coproducts(p: &mut Pairing, d: u32, scales: (&GaussRat, &GaussRat), ws: (&GaussRat, &GaussRat)) -> Vec<CheckOutcome> {
    let n = p.n();
    let names = [format!("universal R (Δ⊗id) N={n} D={d}"), format!("universal R (id⊗Δ) N={n} D={d}")];
    let anchors = ["(Δ⊗id)R = R13 R23", "(id⊗Δ)R = R12 R13"];
    let ur = match truncated_universal_r(p, d) {
        Ok(u) => u,
        Err(e) => return names.into_iter().zip(anchors).map(|(nm, a)| CheckOutcome::new(nm, a, Status::Inconclusive, format!("{e}"))).collect(),
    };
    let order = d as usize;
    let smax = order.max(1);
    let sp = cnn(n, 3);
    let run = || -> Result<[Option<String>; 2], PairingError> {
        let (a1, a2) = (dual_eval_rep(n, core::slice::from_ref(scales.0), order), dual_eval_rep(n, core::slice::from_ref(scales.1), order));
        let a12 = dual_eval_rep(n, &[scales.0.clone(), scales.1.clone()], order);
        let rw = eval_rep(n, ws.0, smax);
        let lhs = ur.image(&a12, &rw)?;
        let r13 = series_embed(&ur.image(&a1, &rw)?, &[0, 2], &sp);
        let r23 = series_embed(&ur.image(&a2, &rw)?, &[1, 2], &sp);
        let first = first_series_difference(&lhs, &r13.mul(&r23));

        let one = dual_eval_rep(n, &[GaussRat::one()], order);
        let w12 = multi_eval_rep(n, &[ws.0.clone(), ws.1.clone()], smax);
        let lhs = ur.image(&one, &w12)?;
        let r12 = series_embed(&ur.image(&one, &rw)?, &[0, 1], &sp);
        let r13 = series_embed(&ur.image(&one, &eval_rep(n, ws.1, smax))?, &[0, 2], &sp);
        let second = first_series_difference(&lhs, &r12.mul(&r13));
        Ok([first, second])
    };
    match run() {
        Ok(res) => res
            .into_iter()
            .zip(names)
            .zip(anchors)
            .map(|((r, nm), a)| match r {
                None => CheckOutcome::pass(nm, a, format!("through t^{d}, {} terms", ur.terms.len())),
                Some(w) => CheckOutcome::fail(nm, a, w),
            })
            .collect(),
        Err(e) => names.into_iter().zip(anchors).map(|(nm, a)| CheckOutcome::new(nm, a, Status::Inconclusive, format!("{e}"))).collect(),
    }
}

/// `(T(u) ⊗ 1) R̂(u,v) (1 ⊗ T*(v)) = (1 ⊗ T*(v)) R̂(u,v) (T(u) ⊗ 1)` with
/// `T(u) -> R(u, z)` and `T*(v) -> R(z, v)` on `C^{N|N} ⊗ carrier ⊗ C^{N|N}`,
/// as an identity in `(u, v, z)`; `twist` scales the `1/(u+v)` term of `R̂`.
pub fn check_double_relation(n: usize, twist: i64) -> CheckOutcome {
    let sp = cnn(n, 3);
    let r = Pencil::r_matrix(n, 1);
    let rhat = Pencil::r_matrix(n, twist).embed(&[0, 2], &sp);
    let (t, ts) = (r.embed(&[0, 1], &sp), r.embed(&[1, 2], &sp));
    let (u, v, z) = (Affine::var(3, 0), Affine::var(3, 1), Affine::var(3, 2));
    let cert = certify_products(
        3,
        vec![t.factor(u.clone(), z.clone()), rhat.factor(u.clone(), v.clone()), ts.factor(z.clone(), v.clone())],
        vec![ts.factor(z.clone(), v.clone()), rhat.factor(u.clone(), v.clone()), t.factor(u, z)],
    );
    let name = if twist == 1 { format!("double relation N={n}") } else { format!("double relation N={n} R̂ twist={twist}") };
    let out = CheckOutcome::from_certificate(name, "double relation", &cert);
    if twist == 1 {
        out
    } else {
        out.as_control()
    }
}

/// The two-factor consequence `(T_1(u_1) T_2(u_2) ⊗ 1) R̂_13 R̂_23 (1 ⊗ T*(v)) = …`
/// on `C^{N|N} ⊗ C^{N|N} ⊗ carrier ⊗ C^{N|N}`, variables `(u_1, u_2, v, z)`.
pub fn check_double_relation_pair(n: usize) -> CheckOutcome {
    let sp = cnn(n, 4);
    let r = Pencil::r_matrix(n, 1);
    let (t1, t2) = (r.embed(&[0, 2], &sp), r.embed(&[1, 2], &sp));
    let (h1, h2) = (r.embed(&[0, 3], &sp), r.embed(&[1, 3], &sp));
    let ts = r.embed(&[2, 3], &sp);
    let (u1, u2, v, z) = (Affine::var(4, 0), Affine::var(4, 1), Affine::var(4, 2), Affine::var(4, 3));
    let cert = certify_products(
        4,
        vec![
            t1.factor(u1.clone(), z.clone()),
            t2.factor(u2.clone(), z.clone()),
            h1.factor(u1.clone(), v.clone()),
            h2.factor(u2.clone(), v.clone()),
            ts.factor(z.clone(), v.clone()),
        ],
        vec![ts.factor(z.clone(), v.clone()), h1.factor(u1.clone(), v.clone()), h2.factor(u2.clone(), v.clone()), t1.factor(u1, z.clone()), t2.factor(u2, z)],
    );
    CheckOutcome::from_certificate(format!("double relation two factors N={n}"), "double relation, two factors", &cert)
}

/// Nonzero pairing values of monomials with `Σs + Σr ≤ d`.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingTable {
    pub n: usize,
    pub degree: u32,
    pub rows: Vec<(Vec<Gen>, Vec<Gen>, GaussRat)>,
}

pub fn pairing_table(p: &mut Pairing, d: u32) -> PairingTable {
    let n = p.n();
    let mut rows = Vec::new();
    let comps = compositions(d);
    for s in &comps {
        for r in &comps {
            if s.iter().sum::<u32>() + r.iter().sum::<u32>() > d {
                continue;
            }
            let op = p.coefficient_op(s, r).clone();
            let sp = op.rows().clone();
            let m = s.len();
            for (row, col, _) in op.entries() {
                let idx = |x: usize, k: usize| SIndex::from_ord(sp.digit(x, k), n);
                let y: Vec<Gen> = (0..m).map(|k| Gen::new(idx(row, k), idx(col, k), s[k] as i32)).collect();
                let w: Vec<Gen> = (0..r.len()).map(|l| Gen::new(idx(row, m + l), idx(col, m + l), -(r[l] as i32))).collect();
                let v = p.value(&y, &w);
                rows.push((y, w, v));
            }
        }
    }
    PairingTable { n, degree: d, rows }
}

pub fn check_table_support(t: &PairingTable) -> CheckOutcome {
    let bad = t.rows.iter().find(|(y, w, v)| !v.is_zero() && degree_of(y) < degree_of(w));
    CheckOutcome::from_bool(
        format!("pairing table support N={} degree<={}", t.n, t.degree),
        "pairing support condition",
        bad.is_none(),
        match bad {
            None => format!("{} nonzero values", t.rows.len()),
            Some((y, w, v)) => format!("<{}, {}> = {v}", mono_string(y), mono_string(w)),
        },
    )
}

/// Degree bounds for the pairing suite.
#[derive(Clone, Debug, PartialEq)]
pub struct PairingConfig {
    pub n: usize,
    pub support_degree: u32,
    pub gram_degree: u32,
    pub hopf_degree: u32,
    pub universal_degree: u32,
    pub ws: Vec<GaussRat>,
}

impl PairingConfig {
    pub fn new(n: usize, max_degree: u32) -> Self {
        let ws = (0..=max_degree as i64 + 1).map(|k| GaussRat::frac(2 * k + 1, 3)).collect();
        PairingConfig { n, support_degree: max_degree + 1, gram_degree: max_degree, hopf_degree: max_degree, universal_degree: max_degree.min(2), ws }
    }
}

/// Which groups of pairing checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairingCheck {
    Dual,
    Support,
    Gram,
    Hopf,
    Universal,
    Double,
}

impl PairingCheck {
    pub const ALL: [PairingCheck; 6] =
        [PairingCheck::Dual, PairingCheck::Support, PairingCheck::Gram, PairingCheck::Hopf, PairingCheck::Universal, PairingCheck::Double];

    pub fn name(self) -> &'static str {
        match self {
            PairingCheck::Dual => "dual",
            PairingCheck::Support => "support",
            PairingCheck::Gram => "gram",
            PairingCheck::Hopf => "hopf",
            PairingCheck::Universal => "universal",
            PairingCheck::Double => "double",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

pub fn run_checks(cfg: &PairingConfig, which: &[PairingCheck], controls: bool) -> Vec<CheckOutcome> {
    let n = cfg.n;
    let mut p = Pairing::new(n);
    let mut out = Vec::new();
    for c in which {
        match c {
            PairingCheck::Dual => {
                out.extend(check_dual_relations(n));
                let order = cfg.hopf_degree.max(1) as usize;
                out.extend(check_dual_table(&dual_eval_rep(n, &[GaussRat::one()], order), &format!("N={n}")));
                let two = dual_eval_rep(n, &[GaussRat::one(), GaussRat::from_int(2)], order);
                let via = dual_eval_rep(n, &[GaussRat::one()], order).coproduct(&dual_eval_rep(n, &[GaussRat::from_int(2)], order));
                out.push(CheckOutcome::from_bool(
                    format!("dual coproduct N={n}"),
                    "dual coproduct matches product form",
                    two == via,
                    format!("two factors through t^{order}"),
                ));
            }
            PairingCheck::Support => {
                let one = p.value(&[], &[]);
                out.push(CheckOutcome::from_bool("pairing <1,1>", "<1,1> = 1", one.is_one(), format!("<1,1> = {one}")));
                out.push(check_support(&mut p, cfg.support_degree));
                out.push(check_parity_support(&mut p, 2));
            }
            PairingCheck::Gram => {
                for s in 0..=cfg.gram_degree {
                    out.push(check_gram(&mut p, s));
                }
            }
            PairingCheck::Hopf => out.extend(check_hopf_pairing(&mut p, cfg.hopf_degree)),
            PairingCheck::Universal => {
                for d in 0..=cfg.universal_degree {
                    out.push(check_universal_r_evaluation(&mut p, d, &cfg.ws));
                }
                let (a, b) = (GaussRat::one(), GaussRat::from_int(2));
                out.extend(check_universal_coproducts(&mut p, cfg.universal_degree, (&a, &b), (&cfg.ws[0], &cfg.ws[1])));
            }
            PairingCheck::Double => {
                out.push(check_double_relation(n, 1));
                out.push(check_double_relation_pair(n));
                if controls {
                    out.push(check_double_relation(n, 0));
                }
            }
        }
    }
    out
}
