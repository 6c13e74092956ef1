//! Representations of the Yangian given by generator tables and by closed
//! forms `ρ(T(u))`, with the RTT, coproduct, centre and co-Poisson checks.
//!
//! `ρ(T(u)) = Σ E_ij ⊗ ρ(T_ij(u))` acts on `C^{N|N} ⊗ carrier`; in matrix
//! form the `(i, j)` block of an entry of parity `p` carries `(-1)^{p j̄}`.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::check::CheckOutcome;
use crate::identity::{certify_products, Affine, OpFactor};
use crate::linalg::invert_op;
use crate::rmatrix::Pencil;
use crate::scalar::{GaussRat, Poly, TruncSeries};
use crate::superop::{cnn, f_op, matrix_unit, sgn, Op, SIndex, Space};

/// `C^{N|N} ⊗ carrier`.
pub fn aux_space(n: usize, carrier: &Arc<Space>) -> Arc<Space> {
    Space::tensor(&cnn(n, 1), carrier)
}

fn pair_index(n: usize, i: SIndex, j: SIndex) -> usize {
    i.ord(n) * 2 * n + j.ord(n)
}

/// Splits an operator on `C^{N|N} ⊗ carrier` into the `ρ(T_ij)` pieces.
pub fn blocks(n: usize, carrier: &Arc<Space>, m: &Op) -> Vec<Op> {
    let cd = carrier.dim();
    let mut out: Vec<Vec<(usize, usize, GaussRat)>> = vec![Vec::new(); 4 * n * n];
    for (r, c, v) in m.entries() {
        let (i, rr) = (r / cd, r % cd);
        let (j, cc) = (c / cd, c % cd);
        let jp = SIndex::from_ord(j, n).parity();
        let s = (carrier.parity(rr) ^ carrier.parity(cc)) & jp;
        out[i * 2 * n + j].push((rr, cc, if s == 1 { -v } else { v.clone() }));
    }
    out.into_iter().map(|e| Op::from_entries(carrier.clone(), carrier.clone(), e)).collect()
}

/// Inverse of [`blocks`].
pub fn assemble(n: usize, carrier: &Arc<Space>, parts: &[Op]) -> Op {
    let cd = carrier.dim();
    let sp = aux_space(n, carrier);
    let mut e = Vec::new();
    for (k, x) in parts.iter().enumerate() {
        let (i, j) = (k / (2 * n), k % (2 * n));
        let jp = SIndex::from_ord(j, n).parity();
        for (rr, cc, v) in x.entries() {
            let s = (carrier.parity(rr) ^ carrier.parity(cc)) & jp;
            e.push((i * cd + rr, j * cd + cc, if s == 1 { -v } else { v.clone() }));
        }
    }
    Op::from_entries(sp.clone(), sp, e)
}

/// Images `ρ(T_ij^(s))`, `1 ≤ s ≤ smax`, of the Yangian generators.
#[derive(Clone, Debug, PartialEq)]
pub struct GenImage {
    n: usize,
    carrier: Arc<Space>,
    table: Vec<Vec<Op>>,
}

impl GenImage {
    pub fn from_fn(n: usize, carrier: Arc<Space>, smax: usize, f: impl Fn(SIndex, SIndex, usize) -> Op) -> Self {
        let table = (1..=smax)
            .map(|s| {
                let mut row = Vec::with_capacity(4 * n * n);
                for i in SIndex::all(n) {
                    for j in SIndex::all(n) {
                        row.push(f(i, j, s));
                    }
                }
                row
            })
            .collect();
        GenImage { n, carrier, table }
    }

    /// Reads the table off the coefficients of `u^{-s}`.
    pub fn from_series(n: usize, carrier: Arc<Space>, series: &TruncSeries<Op>) -> Self {
        let table = (1..=series.order()).map(|s| blocks(n, &carrier, series.coeff(s))).collect();
        GenImage { n, carrier, table }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn carrier(&self) -> &Arc<Space> {
        &self.carrier
    }

    pub fn smax(&self) -> usize {
        self.table.len()
    }

    pub fn get(&self, i: SIndex, j: SIndex, s: usize) -> &Op {
        &self.table[s - 1][pair_index(self.n, i, j)]
    }

    /// `ρ(T_ij^(s))` with `T_ij^(0) = δ_ij`.
    pub fn get_or_unit(&self, i: SIndex, j: SIndex, s: usize) -> Op {
        if s == 0 {
            if i == j {
                Op::identity_g(self.carrier.clone())
            } else {
                Op::zero_op(self.carrier.clone())
            }
        } else {
            self.get(i, j, s).clone()
        }
    }

    /// The `u^{-s}` coefficient of `ρ(T(u))`.
    pub fn coefficient(&self, s: usize) -> Op {
        if s == 0 {
            return Op::identity_g(aux_space(self.n, &self.carrier));
        }
        assemble(self.n, &self.carrier, &self.table[s - 1])
    }

    pub fn series(&self) -> TruncSeries<Op> {
        TruncSeries::new((0..=self.smax()).map(|s| self.coefficient(s)).collect())
    }

    /// Representation of the tensor product through the coproduct
    /// `T_ij(u) -> Σ_k T_ik(u) ⊗ T_kj(u) (-1)^{(ī+k̄)(j̄+k̄)}`.
    pub fn coproduct(&self, o: &GenImage) -> GenImage {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let smax = self.smax().min(o.smax());
        let carrier = Space::tensor(&self.carrier, &o.carrier);
        GenImage::from_fn(n, carrier.clone(), smax, |i, j, s| {
            let mut acc = Op::zero_op(carrier.clone());
            for k in SIndex::all(n) {
                let sign = sgn(((i.parity() ^ k.parity()) & (j.parity() ^ k.parity())) as u32);
                for r in 0..=s {
                    let (a, b) = (self.get_or_unit(i, k, r), o.get_or_unit(k, j, s - r));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.tensor(&b).scale(&sign));
                }
            }
            acc
        })
    }

    pub fn truncated(&self, smax: usize) -> GenImage {
        GenImage { n: self.n, carrier: self.carrier.clone(), table: self.table[..smax.min(self.smax())].to_vec() }
    }
}

/// `ρ(T(u))` as an explicit rational function of `u`.
pub trait ClosedForm {
    fn n(&self) -> usize;
    fn carrier(&self) -> Arc<Space>;
    /// Value on `C^{N|N} ⊗ carrier`, `None` at a pole.
    fn at(&self, u: &GaussRat) -> Option<Op>;
    /// `d/du ρ(T(u))`.
    fn deriv_at(&self, u: &GaussRat) -> Option<Op>;
    /// Monic univariate `d(u)` with `d(u) ρ(T(u))` polynomial of degree at
    /// most `deg d`.
    fn den(&self) -> Poly;
    /// Coefficients of `u^0 … u^{-order}`.
    fn expansion(&self, order: usize) -> TruncSeries<Op>;

    fn table(&self, smax: usize) -> GenImage {
        GenImage::from_series(self.n(), self.carrier(), &self.expansion(smax))
    }
}

/// `R_{12}(u,z_1) … R_{1,m+1}(u,z_m)`; `twist` as in [`Pencil::r_matrix`].
#[derive(Clone, Debug)]
pub struct EvalForm {
    n: usize,
    points: Vec<GaussRat>,
    pencils: Vec<Pencil>,
    carrier: Arc<Space>,
}

impl EvalForm {
    pub fn new(n: usize, points: &[GaussRat], twist: i64) -> Self {
        let m = points.len();
        let sp = cnn(n, m + 1);
        let r = Pencil::r_matrix(n, twist);
        let pencils = (0..m).map(|k| r.embed(&[0, k + 1], &sp)).collect();
        EvalForm { n, points: points.to_vec(), pencils, carrier: cnn(n, m) }
    }

    pub fn points(&self) -> &[GaussRat] {
        &self.points
    }
}

fn pencil_deriv(p: &Pencil, a: &GaussRat, b: &GaussRat) -> Option<Op> {
    let mut out = Op::zero_op(p.constant.space().clone());
    for (op, d) in [(&p.minus, a - b), (&p.plus, a + b)] {
        if op.is_zero() {
            continue;
        }
        if d.is_zero() {
            return None;
        }
        out = out.sub(&op.scale(&(&d * &d).recip()));
    }
    Some(out)
}

impl ClosedForm for EvalForm {
    fn n(&self) -> usize {
        self.n
    }

    fn carrier(&self) -> Arc<Space> {
        self.carrier.clone()
    }

    fn at(&self, u: &GaussRat) -> Option<Op> {
        let mut acc = Op::identity_g(cnn(self.n, self.points.len() + 1));
        for (p, z) in self.pencils.iter().zip(&self.points) {
            acc = acc.mul(&p.at(u, z)?);
        }
        Some(acc)
    }

    fn deriv_at(&self, u: &GaussRat) -> Option<Op> {
        let vals: Option<Vec<Op>> = self.pencils.iter().zip(&self.points).map(|(p, z)| p.at(u, z)).collect();
        let vals = vals?;
        let mut out = Op::zero_op(cnn(self.n, self.points.len() + 1));
        for k in 0..vals.len() {
            let mut term = Op::identity_g(out.space().clone());
            for (m, v) in vals.iter().enumerate() {
                let f = if m == k { pencil_deriv(&self.pencils[m], u, &self.points[m])? } else { v.clone() };
                term = term.mul(&f);
            }
            out = out.add(&term);
        }
        Some(out)
    }

    fn den(&self) -> Poly {
        let mut d = Poly::one(1);
        for z in &self.points {
            let lin = |c: &GaussRat| &Poly::var(1, 0) + &Poly::constant(1, c.clone());
            d = &(&d * &lin(&-z)) * &lin(z);
        }
        d
    }

    fn expansion(&self, order: usize) -> TruncSeries<Op> {
        let sp = cnn(self.n, self.points.len() + 1);
        let mut acc = TruncSeries::new((0..=order).map(|k| if k == 0 { Op::identity_g(sp.clone()) } else { Op::zero_op(sp.clone()) }).collect());
        for (p, z) in self.pencils.iter().zip(&self.points) {
            let mz = -z;
            let coeffs = (0..=order)
                .map(|k| {
                    if k == 0 {
                        p.constant.clone()
                    } else {
                        let e = (k - 1) as i64;
                        p.minus.scale(&z.pow(e)).add(&p.plus.scale(&mz.pow(e)))
                    }
                })
                .collect();
            acc = acc.mul(&TruncSeries::new(coeffs));
        }
        acc
    }
}

/// The evaluation representation at `z`, table from the explicit formula
/// `T_ij^(s+1) -> -(E_ji z^s + E_{-j,-i} (-z)^s) (-1)^{j̄}`.
pub fn eval_rep(n: usize, z: &GaussRat, smax: usize) -> GenImage {
    let mz = -z;
    GenImage::from_fn(n, cnn(n, 1), smax, |i, j, s| {
        let e = (s - 1) as i64;
        matrix_unit(n, j, i).scale(&z.pow(e)).add(&matrix_unit(n, j.neg(), i.neg()).scale(&mz.pow(e))).scale(&-&sgn(j.parity() as u32))
    })
}

/// Tensor product of evaluation representations through the coproduct.
pub fn multi_eval_rep(n: usize, points: &[GaussRat], smax: usize) -> GenImage {
    let mut acc = GenImage::from_fn(n, Space::new(Vec::new()), smax, |_, _, _| Op::zero_op(Space::new(Vec::new())));
    for z in points {
        acc = acc.coproduct(&eval_rep(n, z, smax));
    }
    acc
}

/// `ρ(T(x_k))` placed on `positions` of `target` as a certifier factor.
pub fn closed_factor<'a>(form: &'a dyn ClosedForm, arg: Affine, positions: Vec<usize>, target: Arc<Space>) -> OpFactor<'a> {
    let nv = arg.coeffs.len();
    let d = form.den();
    let deg = d.total_degree().unwrap_or(0);
    let a = arg.to_poly();
    let mut h = Poly::zero(nv);
    for e in (0..=deg).rev() {
        let c = d.terms().find(|(m, _)| m.0[0] == e).map(|(_, c)| c.clone()).unwrap_or_else(GaussRat::zero);
        h = &(&h * &a) + &Poly::constant(nv, c);
    }
    let dens = if deg > 0 { vec![h] } else { Vec::new() };
    let num_deg = (0..nv).map(|k| if arg.involves(k) { deg } else { 0 }).collect();
    OpFactor::new(move |pt: &[GaussRat]| form.at(&arg.eval(pt)).map(|t| t.embed(&positions, &target)), num_deg, dens)
}

/// `R(u,v) T_1(u) T_2(v) = T_2(v) T_1(u) R(u,v)` on `C^{N|N}⊗C^{N|N}⊗carrier`.
pub fn check_rtt(form: &dyn ClosedForm, label: &str) -> CheckOutcome {
    let n = form.n();
    let carrier = form.carrier();
    let target = Space::tensor(&cnn(n, 2), &carrier);
    let k = carrier.arity();
    let rest: Vec<usize> = (2..2 + k).collect();
    let pos1: Vec<usize> = core::iter::once(0).chain(rest.iter().copied()).collect();
    let pos2: Vec<usize> = core::iter::once(1).chain(rest.iter().copied()).collect();
    let r = Pencil::r_matrix(n, 1).embed(&[0, 1], &target);
    let (u, v) = (Affine::var(2, 0), Affine::var(2, 1));
    let t1 = || closed_factor(form, u.clone(), pos1.clone(), target.clone());
    let t2 = || closed_factor(form, v.clone(), pos2.clone(), target.clone());
    let cert = certify_products(2, vec![r.factor(u.clone(), v.clone()), t1(), t2()], vec![t2(), t1(), r.factor(u.clone(), v.clone())]);
    CheckOutcome::from_certificate(format!("rtt {label}"), "RTT relation", &cert)
}

/// `(η ⊗ id) ρ(T(u)) = ρ(T(-u))`.
pub fn check_eta_symmetry(form: &dyn ClosedForm, label: &str) -> CheckOutcome {
    let n = form.n();
    let sp = aux_space(n, &form.carrier());
    let u = Affine::var(1, 0);
    let pos: Vec<usize> = (0..sp.arity()).collect();
    let lhs =
        OpFactor::new(|pt: &[GaussRat]| form.at(&pt[0]).map(|t| crate::superop::eta(&t, 0, n)), vec![form.den().total_degree().unwrap_or(0)], vec![form.den()]);
    let cert = certify_products(1, vec![lhs], vec![closed_factor(form, u.neg(), pos, sp.clone())]);
    CheckOutcome::from_certificate(format!("eta symmetry {label}"), "(η⊗id)T(u) = T(-u)", &cert)
}

/// `ρ(T_ij^(s)) (-1)^s = ρ(T_{-i,-j}^(s))` and `deg ρ(T_ij^(s)) = ī + j̄`.
pub fn check_table(img: &GenImage, label: &str) -> CheckOutcome {
    let n = img.n();
    for s in 1..=img.smax() {
        for i in SIndex::all(n) {
            for j in SIndex::all(n) {
                let x = img.get(i, j, s);
                if x.scale(&sgn(s as u32)) != *img.get(i.neg(), j.neg(), s) {
                    return CheckOutcome::fail(format!("table symmetry {label}"), "T_ij(-u) = T_{-i,-j}(u)", format!("T_({},{})^({s})", i.value(), j.value()));
                }
                if !x.is_zero() && x.parity() != Some(i.parity() ^ j.parity()) {
                    return CheckOutcome::fail(
                        format!("table symmetry {label}"),
                        "T_ij(-u) = T_{-i,-j}(u)",
                        format!("parity of T_({},{})^({s})", i.value(), j.value()),
                    );
                }
            }
        }
    }
    CheckOutcome::pass(format!("table symmetry {label}"), "T_ij(-u) = T_{-i,-j}(u)", format!("s ≤ {}", img.smax()))
}

/// Table read off the closed form equals the given table.
pub fn check_tables_agree(a: &GenImage, b: &GenImage, name: &str, anchor: &'static str) -> CheckOutcome {
    let n = a.n();
    for s in 1..=a.smax().min(b.smax()) {
        for i in SIndex::all(n) {
            for j in SIndex::all(n) {
                if let Some((r, c, x, y)) = a.get(i, j, s).first_difference(b.get(i, j, s)) {
                    return CheckOutcome::fail(name, anchor, format!("T_({},{})^({s}) entry ({r}, {c}): {x} vs {y}", i.value(), j.value()));
                }
            }
        }
    }
    CheckOutcome::pass(name, anchor, format!("all generators with s ≤ {}", a.smax().min(b.smax())))
}

fn block_series(n: usize, carrier: &Arc<Space>, s: &TruncSeries<Op>) -> Vec<TruncSeries<Op>> {
    let per: Vec<Vec<Op>> = s.coeffs().iter().map(|c| blocks(n, carrier, c)).collect();
    (0..4 * n * n).map(|k| TruncSeries::new(per.iter().map(|b| b[k].clone()).collect())).collect()
}

fn scalar_series(id: &Op, order: usize) -> TruncSeries<Op> {
    TruncSeries::new((0..=order).map(|k| if k == 0 { id.clone() } else { Op::zero(id.rows().clone(), id.cols().clone()) }).collect())
}

/// `Z(u)` on a carrier, as coefficients `Z^(0) = 1, Z^(1), …`.
#[derive(Clone, Debug, PartialEq)]
pub struct CentreSeries {
    pub coeffs: Vec<Op>,
}

impl CentreSeries {
    pub fn coeff(&self, s: usize) -> &Op {
        &self.coeffs[s]
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The scalar by which `Z^(s)` acts, if it is a multiple of the identity.
    pub fn scalar(&self, s: usize) -> Option<GaussRat> {
        let z = &self.coeffs[s];
        let c = z.get(0, 0).cloned().unwrap_or_else(GaussRat::zero);
        (*z == Op::identity_g(z.rows().clone()).scale(&c)).then_some(c)
    }
}

/// Series data of `T(u)` and `T(u)^{-1}` cut into blocks.
pub struct CentreData {
    n: usize,
    carrier: Arc<Space>,
    t: Vec<TruncSeries<Op>>,
    tt: Vec<TruncSeries<Op>>,
    order: usize,
}

impl CentreData {
    pub fn new(form: &dyn ClosedForm, order: usize) -> Self {
        let (n, carrier) = (form.n(), form.carrier());
        let s = form.expansion(order);
        let inv = s.invert_given(Op::identity_g(aux_space(n, &carrier)));
        CentreData { n, t: block_series(n, &carrier, &s), tt: block_series(n, &carrier, &inv), carrier, order }
    }

    fn t(&self, i: SIndex, j: SIndex) -> &TruncSeries<Op> {
        &self.t[pair_index(self.n, i, j)]
    }

    fn tt(&self, i: SIndex, j: SIndex) -> &TruncSeries<Op> {
        &self.tt[pair_index(self.n, i, j)]
    }

    fn zero(&self) -> TruncSeries<Op> {
        scalar_series(&Op::zero_op(self.carrier.clone()), self.order)
    }

    fn one(&self) -> TruncSeries<Op> {
        scalar_series(&Op::identity_g(self.carrier.clone()), self.order)
    }

    /// `Σ_i T_ij(u) T̃_ki(u)`.
    pub fn z_jk(&self, j: SIndex, k: SIndex) -> TruncSeries<Op> {
        let mut acc = self.zero();
        for i in SIndex::all(self.n) {
            acc = acc.add(&self.t(i, j).mul(self.tt(k, i)));
        }
        acc
    }

    /// `Z(u)` read from the `(1,1)` component of the defining identity.
    pub fn centre(&self) -> CentreSeries {
        let one = SIndex::from_ord(0, self.n);
        CentreSeries { coeffs: self.z_jk(one, one).coeffs().to_vec() }
    }

    /// `Σ_{i,k} T̃_ki(u) Ṫ_ik(u) (-1)^{ī}`.
    pub fn derivative_sum(&self) -> TruncSeries<Op> {
        let mut acc = self.zero();
        for i in SIndex::all(self.n) {
            for k in SIndex::all(self.n) {
                let term = self.tt(k, i).mul(&self.t(i, k).d_du());
                acc = if i.parity() == 1 { acc.sub(&term) } else { acc.add(&term) };
            }
        }
        acc
    }

    /// `1 + sign · Σ_{i,k} T̃_ki(u) Ṫ_ik(u) (-1)^{ī}`.
    pub fn centre_from_derivative(&self, sign: i64) -> CentreSeries {
        let d = self.derivative_sum();
        let d = if sign < 0 { d.map(|c| c.neg()) } else { d };
        CentreSeries { coeffs: self.one().add(&d).coeffs().to_vec() }
    }

    /// `Σ_i T_ki(u) T̃_ij(u) (-1)^{(ī+k̄)(ī+j̄)} - δ_jk`, first nonzero
    /// coefficient if any.
    pub fn antipode_defect(&self) -> Option<String> {
        let n = self.n;
        for j in SIndex::all(n) {
            for k in SIndex::all(n) {
                let mut acc = if j == k { self.one().map(|c| c.neg()) } else { self.zero() };
                for i in SIndex::all(n) {
                    let term = self.t(k, i).mul(self.tt(i, j));
                    let s = (i.parity() ^ k.parity()) & (i.parity() ^ j.parity());
                    acc = if s == 1 { acc.sub(&term) } else { acc.add(&term) };
                }
                if let Some(d) = acc.coeffs().iter().position(|c| !c.is_zero()) {
                    return Some(format!("j={}, k={}, u^-{d}", j.value(), k.value()));
                }
            }
        }
        None
    }
}

/// `Z(u)` of the representation computed from the series of `T(u)^{-1}`.
pub fn centre_series(form: &dyn ClosedForm, order: usize) -> CentreSeries {
    CentreData::new(form, order).centre()
}

/// `Z(u)` at a point: blocks of `ρ(T(u))^{-1}` by exact elimination.
pub fn centre_at(form: &dyn ClosedForm, u: &GaussRat) -> Option<Op> {
    let n = form.n();
    let carrier = form.carrier();
    let m = form.at(u)?;
    let inv = invert_op(&m)?;
    let (t, tt) = (blocks(n, &carrier, &m), blocks(n, &carrier, &inv));
    let one = SIndex::from_ord(0, n);
    let mut acc = Op::zero_op(carrier.clone());
    for i in SIndex::all(n) {
        acc = acc.add(&t[pair_index(n, i, one)].mul(&tt[pair_index(n, one, i)]));
    }
    Some(acc)
}

/// `1 + sign · Σ_{i,k} T̃_ki(u) Ṫ_ik(u) (-1)^{ī}` at a point.
pub fn centre_at_derivative(form: &dyn ClosedForm, u: &GaussRat, sign: i64) -> Option<Op> {
    let n = form.n();
    let carrier = form.carrier();
    let inv = invert_op(&form.at(u)?)?;
    let (d, tt) = (blocks(n, &carrier, &form.deriv_at(u)?), blocks(n, &carrier, &inv));
    let mut acc = Op::zero_op(carrier.clone());
    for i in SIndex::all(n) {
        for k in SIndex::all(n) {
            let term = tt[pair_index(n, k, i)].mul(&d[pair_index(n, i, k)]);
            acc = if i.parity() == 1 { acc.sub(&term) } else { acc.add(&term) };
        }
    }
    let acc = if sign < 0 { acc.neg() } else { acc };
    Some(Op::identity_g(carrier).add(&acc))
}

/// What the derivative formula for `Z` turns out to be.
pub const DERIVATIVE_NOTE: &str = "Z(v) = 1 + Σ T̃_ki Ṫ_ik (-1)^ī; the minus sign gives 2 - Z(v)";

/// Structure of the defining identity of `Z(u)`, the antipode identity,
/// evenness, centrality, the derivative formula (as series and at sample
/// points).
pub fn check_centre(form: &dyn ClosedForm, order: usize, label: &str) -> Vec<CheckOutcome> {
    let n = form.n();
    let data = CentreData::new(form, order);
    let z = data.centre();
    let mut out = Vec::new();

    let mut structure = None;
    'outer: for j in SIndex::all(n) {
        for k in SIndex::all(n) {
            let s = data.z_jk(j, k);
            let want: &[Op] = if j == k { &z.coeffs } else { &[] };
            for (d, c) in s.coeffs().iter().enumerate() {
                let ok = if j == k { *c == want[d] } else { c.is_zero() };
                if !ok {
                    structure = Some(format!("j={}, k={}, u^-{d}", j.value(), k.value()));
                    break 'outer;
                }
            }
        }
    }
    out.push(match structure {
        None => CheckOutcome::pass(format!("centre structure {label}"), "Σ_i T_ij T̃_ki = Z δ_jk", format!("order {order}")),
        Some(w) => CheckOutcome::fail(format!("centre structure {label}"), "Σ_i T_ij T̃_ki = Z δ_jk", w),
    });
    out.push(match data.antipode_defect() {
        None => CheckOutcome::pass(format!("antipode identity {label}"), "Σ_i T_ki S(T_ij) sign = δ_jk", format!("order {order}")),
        Some(w) => CheckOutcome::fail(format!("antipode identity {label}"), "Σ_i T_ki S(T_ij) sign = δ_jk", w),
    });
    let odd = (1..=order).step_by(2).find(|s| !z.coeff(*s).is_zero());
    out.push(match odd {
        None => CheckOutcome::pass(format!("Z even {label}"), "Z(-u) = Z(u)", format!("order {order}")),
        Some(s) => CheckOutcome::fail(format!("Z even {label}"), "Z(-u) = Z(u)", format!("Z^({s}) ≠ 0")),
    });
    let table = form.table(order);
    let mut central = None;
    'c: for s in 1..=order {
        for i in SIndex::all(n) {
            for j in SIndex::all(n) {
                for r in 1..=order {
                    let x = table.get(i, j, r);
                    if z.coeff(s).mul(x) != x.mul(z.coeff(s)) {
                        central = Some(format!("Z^({s}) vs T_({},{})^({r})", i.value(), j.value()));
                        break 'c;
                    }
                }
            }
        }
    }
    out.push(match central {
        None => CheckOutcome::pass(format!("Z central {label}"), "centrality of Z(u)", format!("coefficients and generators up to {order}")),
        Some(w) => CheckOutcome::fail(format!("Z central {label}"), "centrality of Z(u)", w),
    });
    let minus = data.centre_from_derivative(-1);
    out.push(
        CheckOutcome::from_bool(format!("derivative formula with minus sign {label}"), "Z(v) = 1 - Σ T̃_ki Ṫ_ik (-1)^ī", minus == z, format!("order {order}"))
            .as_discrepancy(DERIVATIVE_NOTE),
    );
    out.push(CheckOutcome::from_bool(
        format!("derivative formula series {label}"),
        "Z(v) = 1 + Σ T̃_ki Ṫ_ik (-1)^ī",
        data.centre_from_derivative(1) == z,
        format!("order {order}"),
    ));
    let samples: Vec<GaussRat> = [7, 11, 13, 17, 19].iter().map(|k| GaussRat::frac(*k, 3)).collect();
    let mut bad = None;
    for u in &samples {
        match (centre_at(form, u), centre_at_derivative(form, u, 1)) {
            (Some(a), Some(b)) if a == b => {}
            _ => {
                bad = Some(format!("u = {u}"));
                break;
            }
        }
    }
    out.push(match bad {
        None => CheckOutcome::pass(format!("derivative formula points {label}"), "Z(v) = 1 + Σ T̃_ki Ṫ_ik (-1)^ī", "5 sample points"),
        Some(w) => CheckOutcome::fail(format!("derivative formula points {label}"), "Z(v) = 1 + Σ T̃_ki Ṫ_ik (-1)^ī", w),
    });
    out
}

/// `Z` of a two-point representation equals the tensor product of the
/// single-point `Z`'s, coefficientwise.
pub fn check_group_like(n: usize, z1: &GaussRat, z2: &GaussRat, order: usize) -> CheckOutcome {
    let a = centre_series(&EvalForm::new(n, core::slice::from_ref(z1), 1), order);
    let b = centre_series(&EvalForm::new(n, core::slice::from_ref(z2), 1), order);
    let ab = centre_series(&EvalForm::new(n, &[z1.clone(), z2.clone()], 1), order);
    for s in 0..=order {
        let mut acc = Op::zero_op(ab.coeff(s).rows().clone());
        for r in 0..=s {
            acc = acc.add(&a.coeff(r).tensor(b.coeff(s - r)));
        }
        if acc != *ab.coeff(s) {
            return CheckOutcome::fail(format!("Z group-like N={n} ({z1},{z2})"), "Δ(Z(u)) = Z(u)⊗Z(u)", format!("u^-{s}"));
        }
    }
    CheckOutcome::pass(format!("Z group-like N={n} ({z1},{z2})"), "Δ(Z(u)) = Z(u)⊗Z(u)", format!("order {order}"))
}

/// `-Σ F_{k2 k1} … F_{k_{s+1} k_s} F_{k1 k_{s+1}} (-1)^{k̄1+…+k̄s}` in the
/// defining representation. With `graded`, the sign also carries
/// `Σ_{a<b} |F_a||F_b|` over the first `s` factors and the overall sign is
/// `+`, which is the form that `Z^(s+2)` takes at `z = 0`.
pub fn centre_image_formula(n: usize, s: usize, graded: bool) -> Op {
    let idx: Vec<SIndex> = SIndex::all(n).collect();
    let m = idx.len();
    let mut acc = Op::zero_op(cnn(n, 1));
    for code in 0..m.pow(s as u32 + 1) {
        let ks: Vec<SIndex> = (0..=s).map(|p| idx[(code / m.pow(p as u32)) % m]).collect();
        let mut prod = Op::identity_g(cnn(n, 1));
        for p in 0..s {
            prod = prod.mul(&f_op(n, ks[p + 1], ks[p]));
        }
        prod = prod.mul(&f_op(n, ks[0], ks[s]));
        let mut par: u32 = ks[..s].iter().map(|k| k.parity() as u32).sum();
        if graded {
            let pf: Vec<u32> = (0..s).map(|p| (ks[p + 1].parity() ^ ks[p].parity()) as u32).collect();
            for a in 0..s {
                for b in a + 1..s {
                    par += pf[a] * pf[b];
                }
            }
        }
        acc = acc.add(&prod.scale(&sgn(par)));
    }
    if graded {
        acc
    } else {
        acc.neg()
    }
}

/// What the images of the central elements turn out to be.
pub const IMAGE_NOTE: &str = "Z^(2) acts as +2 and Z^(s+2) = +Σ F…F with the Koszul sign of the matrix power";

/// `Z^(2)`, `Z^(4)`, `Z^(6)` at `z = 0` against the closed formulas, in
/// ungraded and graded form.
pub fn check_centre_images(n: usize) -> Vec<CheckOutcome> {
    let z = centre_series(&EvalForm::new(n, &[GaussRat::zero()], 1), 6);
    let mut out = Vec::new();
    let minus2 = Op::identity_g(cnn(n, 1)).scale(&GaussRat::from_int(-2));
    out.push(
        CheckOutcome::from_bool(
            format!("Z^(2) = -2 N={n}"),
            "π_N(Z^(2)) = -2E",
            *z.coeff(2) == minus2,
            z.scalar(2).map_or(String::from("Z^(2) is not a scalar"), |s| format!("Z^(2) acts as {s}")),
        )
        .as_discrepancy(IMAGE_NOTE),
    );
    for s in [0usize, 2, 4] {
        let cmp = |graded: bool| match z.coeff(s + 2).first_difference(&centre_image_formula(n, s, graded)) {
            None => (true, String::from("defining representation")),
            Some((r, c, a, b)) => (false, format!("entry ({r}, {c}): {a} vs {b}")),
        };
        if s > 0 {
            let (ok, w) = cmp(false);
            out.push(CheckOutcome::from_bool(format!("Z^({}) image ungraded N={n}", s + 2), "π_N(Z^(s+2)) formula", ok, w).as_discrepancy(IMAGE_NOTE));
        }
        let (ok, w) = cmp(true);
        out.push(CheckOutcome::from_bool(format!("Z^({}) image N={n}", s + 2), "π_N(Z^(s+2)) graded formula", ok, w));
    }
    out
}

/// `F_ij^(a) -> E_ij z^a + E_{-i,-j} (-z)^a`.
fn ev_f(n: usize, i: SIndex, j: SIndex, a: usize, z: &GaussRat) -> Op {
    let e = a as i64;
    matrix_unit(n, i, j).scale(&z.pow(e)).add(&matrix_unit(n, i.neg(), j.neg()).scale(&(-z).pow(e)))
}

/// `ψ(H_ab^(r)) = -F_ba^(r-1) (-1)^{b̄}` evaluated at `z`.
fn psi_ev(n: usize, a: SIndex, b: SIndex, r: usize, z: &GaussRat) -> Op {
    ev_f(n, b, a, r - 1, z).scale(&-&sgn(b.parity() as u32))
}

/// `(ψ⊗ψ)((Δ - Δ°)(H_ij^(s))/h)` at `(z1, z2)`.
fn copoisson_from_coproduct(n: usize, i: SIndex, j: SIndex, s: usize, z1: &GaussRat, z2: &GaussRat) -> Op {
    let mut acc = Op::zero_op(cnn(n, 2));
    for r in 1..s {
        for k in SIndex::all(n) {
            let sign = sgn(((i.parity() ^ k.parity()) & (j.parity() ^ k.parity())) as u32);
            let d = psi_ev(n, i, k, r, z1).tensor(&psi_ev(n, k, j, s - r, z2)).scale(&sign);
            let dop = psi_ev(n, k, j, r, z1).tensor(&psi_ev(n, i, k, s - r, z2));
            acc = acc.add(&d).sub(&dop);
        }
    }
    acc
}

/// The displayed expansion of `φ(ψ(H_ij^(s)))`.
fn copoisson_displayed(n: usize, i: SIndex, j: SIndex, s: usize, z1: &GaussRat, z2: &GaussRat) -> Op {
    let mut acc = Op::zero_op(cnn(n, 2));
    for r in 1..s {
        for k in SIndex::all(n) {
            let (ib, jb, kb) = (i.parity() as u32, j.parity() as u32, k.parity() as u32);
            let a = ev_f(n, k, i, r - 1, z1).tensor(&ev_f(n, j, k, s - r - 1, z2)).scale(&sgn((ib + kb + 1) * (jb + kb)));
            let b = ev_f(n, j, k, r - 1, z1).tensor(&ev_f(n, k, i, s - r - 1, z2)).scale(&sgn(jb + kb));
            acc = acc.add(&a).sub(&b);
        }
    }
    acc
}

/// `[X_1(z1) + X_2(z2), r(z1, z2)]` for `X = ψ(H_ij^(s))`.
fn copoisson_definition(n: usize, i: SIndex, j: SIndex, s: usize, z1: &GaussRat, z2: &GaussRat) -> Option<Op> {
    let sp = cnn(n, 2);
    let x1 = psi_ev(n, i, j, s, z1).embed(&[0], &sp);
    let x2 = psi_ev(n, i, j, s, z2).embed(&[1], &sp);
    let r = Pencil::classical(n, 1).at(z1, z2)?;
    let x = x1.add(&x2);
    Some(x.mul(&r).sub(&r.mul(&x)))
}

/// Co-Poisson compatibility on generators `H_ij^(s)`, `s ≤ smax`, on the
/// grid `z1s × z2s` of pairs of evaluation representations.
pub fn co_poisson_check(n: usize, smax: usize, z1s: &[GaussRat], z2s: &[GaussRat]) -> Vec<CheckOutcome> {
    let anchor = "co-Poisson compatibility";
    let mut out = Vec::new();
    for s in 1..=smax {
        let name = format!("co-Poisson N={n} s={s}");
        let mut fail = None;
        'g: for i in SIndex::all(n) {
            for j in SIndex::all(n) {
                for z1 in z1s {
                    for z2 in z2s {
                        let Some(c) = copoisson_definition(n, i, j, s, z1, z2) else {
                            fail = Some(format!("grid point ({z1}, {z2}) is a pole of r"));
                            break 'g;
                        };
                        let a = copoisson_from_coproduct(n, i, j, s, z1, z2);
                        let b = copoisson_displayed(n, i, j, s, z1, z2);
                        if a != c || b != c {
                            fail = Some(format!("H_({},{})^({s}) at ({z1}, {z2})", i.value(), j.value()));
                            break 'g;
                        }
                        // φ lands in g ⊗ g
                        let mz1 = -z1;
                        let mz2 = -z2;
                        let e1 = copoisson_definition(n, i, j, s, &mz1, z2);
                        let e2 = copoisson_definition(n, i, j, s, z1, &mz2);
                        if e1 != Some(crate::superop::eta(&c, 0, n)) || e2 != Some(crate::superop::eta(&c, 1, n)) {
                            fail = Some(format!("φ(H_({},{})^({s})) not in g⊗g at ({z1}, {z2})", i.value(), j.value()));
                            break 'g;
                        }
                    }
                }
            }
        }
        out.push(match fail {
            None => CheckOutcome::pass(name, anchor, format!("{} grid pairs", z1s.len() * z2s.len())),
            Some(w) => CheckOutcome::fail(name, anchor, w),
        });
    }
    out
}

/// Disjoint grids `{1, …, m}` and `{m+1, …, 2m}` with `m = smax + 2`.
pub fn default_copoisson_grid(smax: usize) -> (Vec<GaussRat>, Vec<GaussRat>) {
    let m = smax as i64 + 2;
    ((1..=m).map(GaussRat::from_int).collect(), (m + 1..=2 * m).map(GaussRat::from_int).collect())
}

/// Which groups of evaluation-representation checks to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum YangianCheck {
    Eval,
    Rtt,
    Comult,
    Centre,
    Copoisson,
}

impl YangianCheck {
    pub const ALL: [YangianCheck; 5] = [YangianCheck::Eval, YangianCheck::Rtt, YangianCheck::Comult, YangianCheck::Centre, YangianCheck::Copoisson];

    pub fn name(self) -> &'static str {
        match self {
            YangianCheck::Eval => "eval",
            YangianCheck::Rtt => "rtt",
            YangianCheck::Comult => "comult",
            YangianCheck::Centre => "centre",
            YangianCheck::Copoisson => "copoisson",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Every check of this module for one `N` and list of points.
pub fn run_all(n: usize, points: &[GaussRat], smax: usize, controls: bool) -> Vec<CheckOutcome> {
    run_checks(n, points, smax, &YangianCheck::ALL, controls)
}

pub fn run_checks(n: usize, points: &[GaussRat], smax: usize, which: &[YangianCheck], controls: bool) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let f = EvalForm::new(n, points, 1);
    let label = format!("N={n} points={}", join(points));
    for c in which {
        match c {
            YangianCheck::Eval => {
                for z in points {
                    let one = EvalForm::new(n, core::slice::from_ref(z), 1);
                    out.push(check_tables_agree(&eval_rep(n, z, smax), &one.table(smax), &format!("eval table N={n} z={z}"), "evaluation representation"));
                    out.push(check_table(&eval_rep(n, z, smax), &format!("N={n} z={z}")));
                }
            }
            YangianCheck::Rtt => {
                for z in points {
                    out.push(check_rtt(&EvalForm::new(n, core::slice::from_ref(z), 1), &format!("N={n} z={z}")));
                }
                if points.len() > 1 {
                    out.push(check_rtt(&f, &label));
                }
                out.push(check_eta_symmetry(&f, &label));
                if controls {
                    let bad = EvalForm::new(n, points, -1);
                    out.push(check_rtt(&bad, &format!("{label} mutated")).as_control());
                }
            }
            YangianCheck::Comult => {
                out.push(check_tables_agree(&f.table(smax), &multi_eval_rep(n, points, smax), &format!("coproduct {label}"), "comultiplication"));
            }
            YangianCheck::Centre => {
                out.extend(check_centre(&f, smax.max(4), &label));
                if points.len() >= 2 {
                    out.push(check_group_like(n, &points[0], &points[1], smax.max(4)));
                }
                out.extend(check_centre_images(n));
            }
            YangianCheck::Copoisson => {
                let (g1, g2) = default_copoisson_grid(smax);
                out.extend(co_poisson_check(n, smax, &g1, &g2));
            }
        }
    }
    out
}

fn join(points: &[GaussRat]) -> String {
    let v: Vec<String> = points.iter().map(|p| format!("{p}")).collect();
    v.join(",")
}

#[cfg(test)]
mod tests;
