//! The crossed product `H_n` of `S_n` with the Clifford algebra on
//! `c_1 … c_n`, and the degenerate affine Sergeev algebra `A_n` generated by
//! `H_n` and pairwise commuting `x_1 … x_n`.
//!
//! `H_n` has basis `c_S w` (`S` increasing) and `A_n` has basis
//! `c_S w x^s`. Permutations are stored in one-line notation, 0-based, and
//! compose as `(v·w)(p) = v(w(p))`, so `w c_p w^{-1} = c_{w(p)}`. Index
//! arguments of the public constructors are 1-based.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::check::CheckOutcome;
use crate::linalg::{Echelon, PivotRule, SparseVec};
use crate::scalar::GaussRat;
use crate::superop::{cnn, f_op, j_op, perm_p, Op, SIndex, Space};

#[cfg(test)]
mod tests;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SergeevError {
    #[error("cannot multiply elements of rank {0} and {1}")]
    SizeMismatch(usize, usize),
}

/// One-line notation, 0-based.
pub type Perm = Vec<u8>;

pub fn perm_id(n: usize) -> Perm {
    (0..n as u8).collect()
}

/// `v·w`, i.e. `p ↦ v(w(p))`.
pub fn perm_mul(v: &[u8], w: &[u8]) -> Perm {
    w.iter().map(|&p| v[p as usize]).collect()
}

pub fn perm_inv(w: &[u8]) -> Perm {
    let mut out = vec![0; w.len()];
    for (p, &q) in w.iter().enumerate() {
        out[q as usize] = p as u8;
    }
    out
}

/// The transposition of the 0-based points `a` and `b`.
fn swap_perm(n: usize, a: usize, b: usize) -> Perm {
    let mut w = perm_id(n);
    w.swap(a, b);
    w
}

/// Letters `q` (meaning `s_q` swapping `q, q+1`) of a reduced word, so that
/// `w = s_{q_1} ⋯ s_{q_l}`.
pub fn reduced_word(w: &[u8]) -> Vec<usize> {
    let mut v = w.to_vec();
    let mut word = Vec::new();
    while let Some(q) = (0..v.len().saturating_sub(1)).find(|&q| v[q] > v[q + 1]) {
        v.swap(q, q + 1);
        word.push(q);
    }
    word.reverse();
    word
}

pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut out = vec![Vec::new()];
    for k in 0..n as u8 {
        let mut next = Vec::new();
        for w in &out {
            for pos in 0..=w.len() {
                let mut v = w.clone();
                v.insert(pos, k);
                next.push(v);
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// Lehmer rank in `0 .. n!`.
fn perm_rank(w: &[u8]) -> usize {
    let n = w.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = w[i + 1..].iter().filter(|&&x| x < w[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// `c_A c_B = ± c_{A Δ B}`; returns the mask and the sign parity.
fn cliff_mul(a: u32, b: u32) -> (u32, u32) {
    let mut inv = 0;
    let mut rest = b;
    while rest != 0 {
        let t = rest.trailing_zeros();
        inv += (a >> (t + 1)).count_ones();
        rest &= rest - 1;
    }
    (a ^ b, inv + (a & b).count_ones())
}

/// `w c_T w^{-1}` as `± c_{w(T)}`.
fn cliff_conj(w: &[u8], mask: u32) -> (u32, u32) {
    let img: Vec<u8> = (0..w.len()).filter(|&t| mask >> t & 1 == 1).map(|t| w[t]).collect();
    let mut inv = 0;
    for i in 0..img.len() {
        for j in i + 1..img.len() {
            inv += (img[i] > img[j]) as u32;
        }
    }
    (img.iter().fold(0, |m, &p| m | 1 << p), inv)
}

fn signed(c: &GaussRat, parity: u32) -> GaussRat {
    if parity & 1 == 1 {
        -c
    } else {
        c.clone()
    }
}

fn accumulate<K: Ord>(terms: &mut BTreeMap<K, GaussRat>, k: K, c: GaussRat) {
    if c.is_zero() {
        return;
    }
    match terms.entry(k) {
        alloc::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c);
        }
        alloc::collections::btree_map::Entry::Occupied(mut e) => {
            let s = e.get() + &c;
            if s.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = s;
            }
        }
    }
}

fn mask_string(mask: u32) -> String {
    let mut s = String::new();
    for t in 0..32 {
        if mask >> t & 1 == 1 {
            s.push_str(&format!("c{}", t + 1));
        }
    }
    s
}

fn perm_string(w: &[u8]) -> String {
    let parts: Vec<String> = w.iter().map(|p| format!("{}", p + 1)).collect();
    format!("[{}]", parts.join(","))
}

/// `c_S w`: Clifford mask (bit `p` for `c_{p+1}`) and permutation.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HnBasis {
    pub c: u32,
    pub w: Perm,
}

impl HnBasis {
    fn mul(&self, o: &HnBasis) -> (HnBasis, u32) {
        let (t, s1) = cliff_conj(&self.w, o.c);
        let (c, s2) = cliff_mul(self.c, t);
        (HnBasis { c, w: perm_mul(&self.w, &o.w) }, s1 + s2)
    }

    pub fn parity(&self) -> u8 {
        (self.c.count_ones() & 1) as u8
    }

    /// Index in `0 .. 2^n n!`.
    pub fn index(&self) -> usize {
        self.c as usize * factorial(self.w.len()) + perm_rank(&self.w)
    }
}

/// An element of `H_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnElement {
    n: usize,
    terms: BTreeMap<HnBasis, GaussRat>,
}

impl HnElement {
    pub fn zero(n: usize) -> Self {
        HnElement { n, terms: BTreeMap::new() }
    }

    pub fn basis(b: HnBasis, coeff: GaussRat) -> Self {
        let mut e = Self::zero(b.w.len());
        accumulate(&mut e.terms, b, coeff);
        e
    }

    pub fn one(n: usize) -> Self {
        Self::basis(HnBasis { c: 0, w: perm_id(n) }, GaussRat::one())
    }

    pub fn perm(w: Perm) -> Self {
        Self::basis(HnBasis { c: 0, w }, GaussRat::one())
    }

    /// `c_p`.
    pub fn c(n: usize, p: usize) -> Self {
        assert!((1..=n).contains(&p));
        Self::basis(HnBasis { c: 1 << (p - 1), w: perm_id(n) }, GaussRat::one())
    }

    /// `w_{pq}`.
    pub fn transposition(n: usize, p: usize, q: usize) -> Self {
        assert!(p != q && (1..=n).contains(&p) && (1..=n).contains(&q));
        Self::perm(swap_perm(n, p - 1, q - 1))
    }

    pub fn scalar(n: usize, c: GaussRat) -> Self {
        Self::one(n).scale(&c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&HnBasis, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &HnBasis) -> GaussRat {
        self.terms.get(b).cloned().unwrap_or_else(GaussRat::zero)
    }

    /// Parity if homogeneous; `Some(0)` for zero.
    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(HnBasis::parity);
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = self.clone();
        for (k, c) in &o.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussRat::from_int(-1))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero(self.n);
        for (k, a) in &self.terms {
            accumulate(&mut out.terms, k.clone(), a * c);
        }
        out
    }

    /// Product; panics on a size mismatch (see [`hn_mul`]).
    pub fn mul(&self, o: &Self) -> Self {
        hn_mul(self, o).expect("H_n size mismatch")
    }

    /// Coordinates in the basis indexed by [`HnBasis::index`].
    pub fn to_sparse(&self) -> SparseVec {
        self.terms.iter().map(|(k, c)| (k.index(), c.clone())).collect()
    }
}

pub fn hn_mul(a: &HnElement, b: &HnElement) -> Result<HnElement, SergeevError> {
    if a.n != b.n {
        return Err(SergeevError::SizeMismatch(a.n, b.n));
    }
    let mut out = HnElement::zero(a.n);
    for (ka, ca) in &a.terms {
        for (kb, cb) in &b.terms {
            let (k, s) = ka.mul(kb);
            accumulate(&mut out.terms, k, signed(&(ca * cb), s));
        }
    }
    Ok(out)
}

impl fmt::Display for HnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){}{}", mask_string(k.c), perm_string(&k.w))?;
        }
        Ok(())
    }
}

/// `c_S w x^s` in PBW order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AnBasis {
    pub c: u32,
    pub w: Perm,
    pub x: Vec<u32>,
}

impl AnBasis {
    pub fn hn(&self) -> HnBasis {
        HnBasis { c: self.c, w: self.w.clone() }
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn parity(&self) -> u8 {
        (self.c.count_ones() & 1) as u8
    }
}

/// An element of `A_n`, always in normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnElement {
    n: usize,
    terms: BTreeMap<AnBasis, GaussRat>,
}

impl AnElement {
    pub fn zero(n: usize) -> Self {
        AnElement { n, terms: BTreeMap::new() }
    }

    pub fn basis(b: AnBasis, coeff: GaussRat) -> Self {
        let mut e = Self::zero(b.w.len());
        accumulate(&mut e.terms, b, coeff);
        e
    }

    pub fn one(n: usize) -> Self {
        Self::from_hn(&HnElement::one(n))
    }

    pub fn from_hn(h: &HnElement) -> Self {
        let mut out = Self::zero(h.n);
        for (k, c) in &h.terms {
            out.terms.insert(AnBasis { c: k.c, w: k.w.clone(), x: vec![0; h.n] }, c.clone());
        }
        out
    }

    /// `x_p`.
    pub fn x(n: usize, p: usize) -> Self {
        assert!((1..=n).contains(&p));
        let mut x = vec![0; n];
        x[p - 1] = 1;
        Self::basis(AnBasis { c: 0, w: perm_id(n), x }, GaussRat::one())
    }

    pub fn c(n: usize, p: usize) -> Self {
        Self::from_hn(&HnElement::c(n, p))
    }

    pub fn transposition(n: usize, p: usize, q: usize) -> Self {
        Self::from_hn(&HnElement::transposition(n, p, q))
    }

    pub fn perm(w: Perm) -> Self {
        Self::from_hn(&HnElement::perm(w))
    }

    pub fn scalar(n: usize, c: GaussRat) -> Self {
        Self::one(n).scale(&c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&AnBasis, &GaussRat)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &AnBasis) -> GaussRat {
        self.terms.get(b).cloned().unwrap_or_else(GaussRat::zero)
    }

    pub fn x_degree(&self) -> u32 {
        self.terms.keys().map(AnBasis::x_degree).max().unwrap_or(0)
    }

    pub fn parity(&self) -> Option<u8> {
        let mut ps = self.terms.keys().map(AnBasis::parity);
        let first = ps.next().unwrap_or(0);
        ps.all(|p| p == first).then_some(first)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let mut out = self.clone();
        for (k, c) in &o.terms {
            accumulate(&mut out.terms, k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.scale(&GaussRat::from_int(-1))
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        let mut out = Self::zero(self.n);
        for (k, a) in &self.terms {
            accumulate(&mut out.terms, k.clone(), a * c);
        }
        out
    }

    /// Product; panics on a size mismatch (see [`an_mul`]).
    pub fn mul(&self, o: &Self) -> Self {
        an_mul(self, o).expect("A_n size mismatch")
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.n), |acc, _| acc.mul(self))
    }

    /// `h · self` for `h ∈ H_n`.
    pub fn left_hn(&self, h: &HnElement) -> Self {
        let mut out = Self::zero(self.n);
        for (kh, ch) in &h.terms {
            for (k, c) in &self.terms {
                let (b, s) = kh.mul(&k.hn());
                accumulate(&mut out.terms, AnBasis { c: b.c, w: b.w, x: k.x.clone() }, signed(&(ch * c), s));
            }
        }
        out
    }

    /// `x_p · self` with 0-based `p`.
    fn left_x(&self, p: usize) -> Self {
        let n = self.n;
        let mut out = Self::zero(n);
        for (k, c) in &self.terms {
            let c = signed(c, k.c >> p & 1);
            let word = reduced_word(&k.w);
            let mut cur = p;
            let mut left = perm_id(n);
            for (i, &q) in word.iter().enumerate() {
                let corr = if cur == q {
                    Some(GaussRat::from_int(-1))
                } else if cur == q + 1 {
                    Some(GaussRat::one())
                } else {
                    None
                };
                if let Some(a) = corr {
                    // a - c_q c_{q+1}, between s_{q_1}…s_{q_{i-1}} and s_{q_{i+1}}…
                    let right = word[i + 1..].iter().fold(perm_id(n), |w, &r| perm_mul(&w, &swap_perm(n, r, r + 1)));
                    let mid = HnElement::scalar(n, a).sub(&HnElement::basis(HnBasis { c: 0b11 << q, w: perm_id(n) }, GaussRat::one()));
                    let h = HnElement::basis(HnBasis { c: k.c, w: left.clone() }, c.clone()).mul(&mid).mul(&HnElement::perm(right));
                    for (kh, ch) in h.terms {
                        accumulate(&mut out.terms, AnBasis { c: kh.c, w: kh.w, x: k.x.clone() }, ch);
                    }
                }
                left = perm_mul(&left, &swap_perm(n, q, q + 1));
                cur = if cur == q {
                    q + 1
                } else if cur == q + 1 {
                    q
                } else {
                    cur
                };
            }
            let mut x = k.x.clone();
            x[cur] += 1;
            accumulate(&mut out.terms, AnBasis { c: k.c, w: k.w.clone(), x }, c);
        }
        out
    }

    /// `(c-subset, permutation, exponents, coefficient)` with 1-based indices.
    pub fn triples(&self) -> Vec<(Vec<usize>, Vec<usize>, Vec<u32>, GaussRat)> {
        self.terms
            .iter()
            .map(|(k, c)| {
                let cs = (0..self.n).filter(|&t| k.c >> t & 1 == 1).map(|t| t + 1).collect();
                let w = k.w.iter().map(|&p| p as usize + 1).collect();
                (cs, w, k.x.clone(), c.clone())
            })
            .collect()
    }
}

/// Product in normal form. `x^s` is pushed into the right factor one `x_p`
/// at a time along a reduced word of its permutation.
pub fn an_mul(a: &AnElement, b: &AnElement) -> Result<AnElement, SergeevError> {
    if a.n != b.n {
        return Err(SergeevError::SizeMismatch(a.n, b.n));
    }
    let mut out = AnElement::zero(a.n);
    for (ka, ca) in &a.terms {
        let mut r = b.clone();
        for (p, &e) in ka.x.iter().enumerate() {
            for _ in 0..e {
                r = r.left_x(p);
            }
        }
        let r = r.left_hn(&HnElement::basis(ka.hn(), ca.clone()));
        out = out.add(&r);
    }
    Ok(out)
}

/// Normal form of a word in the generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnGen {
    X(usize),
    C(usize),
    /// `w_{q,q+1}`.
    S(usize),
}

pub fn an_normal_form(n: usize, word: &[AnGen]) -> AnElement {
    word.iter().fold(AnElement::one(n), |acc, g| {
        let e = match *g {
            AnGen::X(p) => AnElement::x(n, p),
            AnGen::C(p) => AnElement::c(n, p),
            AnGen::S(q) => AnElement::transposition(n, q, q + 1),
        };
        acc.mul(&e)
    })
}

impl fmt::Display for AnElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){}{}", mask_string(k.c), perm_string(&k.w))?;
            for (p, e) in k.x.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "x{}", p + 1)?,
                    _ => write!(f, "x{}^{e}", p + 1)?,
                }
            }
        }
        Ok(())
    }
}

/// `γ_m : A_n → H_{m+n}` with cached powers of the images of `x_p`.
pub struct Gamma {
    m: usize,
    n: usize,
    powers: Vec<Vec<HnElement>>,
}

impl Gamma {
    pub fn new(m: usize, n: usize) -> Self {
        let t = m + n;
        let powers = (1..=n)
            .map(|p| {
                let mut img = HnElement::zero(t);
                for r in 1..m + p {
                    let cc = HnElement::c(t, m + p).mul(&HnElement::c(t, r));
                    img = img.add(&HnElement::one(t).add(&cc).mul(&HnElement::transposition(t, m + p, r)));
                }
                vec![HnElement::one(t), img]
            })
            .collect();
        Gamma { m, n, powers }
    }

    pub fn x_image(&mut self, p: usize, e: u32) -> &HnElement {
        let v = &mut self.powers[p - 1];
        while v.len() <= e as usize {
            let next = v.last().unwrap().mul(&v[1]);
            v.push(next);
        }
        &v[e as usize]
    }

    pub fn basis_image(&mut self, k: &AnBasis) -> HnElement {
        let t = self.m + self.n;
        let mut w: Perm = perm_id(self.m);
        w.extend(k.w.iter().map(|&p| p + self.m as u8));
        let mut out = HnElement::basis(HnBasis { c: k.c << self.m, w }, GaussRat::one());
        for p in 1..=self.n {
            if k.x[p - 1] > 0 {
                out = out.mul(self.x_image(p, k.x[p - 1]));
            }
        }
        debug_assert_eq!(out.n, t);
        out
    }

    pub fn apply(&mut self, a: &AnElement) -> HnElement {
        assert_eq!(a.n, self.n);
        let mut out = HnElement::zero(self.m + self.n);
        for (k, c) in &a.terms {
            out = out.add(&self.basis_image(k).scale(c));
        }
        out
    }
}

pub fn gamma(m: usize, a: &AnElement) -> HnElement {
    Gamma::new(m, a.n).apply(a)
}

/// `y_p = x_p - Σ_{q<p} (1 + c_p c_q) w_pq`.
pub fn y_generators(n: usize) -> Vec<AnElement> {
    (1..=n)
        .map(|p| {
            let mut y = AnElement::x(n, p);
            for q in 1..p {
                let f = AnElement::one(n).add(&AnElement::c(n, p).mul(&AnElement::c(n, q)));
                y = y.sub(&f.mul(&AnElement::transposition(n, p, q)));
            }
            y
        })
        .collect()
}

fn first_failure<T>(items: impl IntoIterator<Item = (bool, T)>) -> (usize, Option<T>) {
    let mut count = 0;
    for (ok, w) in items {
        count += 1;
        if !ok {
            return (count, Some(w));
        }
    }
    (count, None)
}

fn outcome(name: String, anchor: &'static str, checked: (usize, Option<String>)) -> CheckOutcome {
    match checked {
        (k, None) => CheckOutcome::pass(name, anchor, format!("{k} cases")),
        (_, Some(w)) => CheckOutcome::fail(name, anchor, w),
    }
}

/// One side of a relation: a signed sum of words in the generators.
pub type RelationSide = Vec<(i64, Vec<AnGen>)>;

/// The defining relations of `A_n` as words in `x_p`, `c_p` and `w_{q,q+1}`.
pub fn relation_words(n: usize) -> Vec<(String, RelationSide, RelationSide)> {
    use AnGen::{C, S, X};
    let mut out = Vec::new();
    for p in 1..=n {
        out.push((format!("c{p}^2 = -1"), vec![(1, vec![C(p), C(p)])], vec![(-1, vec![])]));
        for q in 1..=n {
            if q != p {
                out.push((format!("c{p}c{q} = -c{q}c{p}"), vec![(1, vec![C(p), C(q)])], vec![(-1, vec![C(q), C(p)])]));
                out.push((format!("x{p}c{q} = c{q}x{p}"), vec![(1, vec![X(p), C(q)])], vec![(1, vec![C(q), X(p)])]));
                out.push((format!("x{p}x{q} = x{q}x{p}"), vec![(1, vec![X(p), X(q)])], vec![(1, vec![X(q), X(p)])]));
            }
        }
        out.push((format!("x{p}c{p} = -c{p}x{p}"), vec![(1, vec![X(p), C(p)])], vec![(-1, vec![C(p), X(p)])]));
    }
    for q in 1..n {
        out.push((format!("s{q}^2 = 1"), vec![(1, vec![S(q), S(q)])], vec![(1, vec![])]));
        if q + 1 < n {
            out.push((format!("braid s{q}"), vec![(1, vec![S(q), S(q + 1), S(q)])], vec![(1, vec![S(q + 1), S(q), S(q + 1)])]));
        }
        for r in q + 2..n {
            out.push((format!("s{q}s{r} = s{r}s{q}"), vec![(1, vec![S(q), S(r)])], vec![(1, vec![S(r), S(q)])]));
        }
        for p in 1..=n {
            let target = if p == q {
                q + 1
            } else if p == q + 1 {
                q
            } else {
                p
            };
            out.push((format!("s{q}c{p}s{q} = c{target}"), vec![(1, vec![S(q), C(p), S(q)])], vec![(1, vec![C(target)])]));
            if p != q && p != q + 1 {
                out.push((format!("x{p}s{q} = s{q}x{p}"), vec![(1, vec![X(p), S(q)])], vec![(1, vec![S(q), X(p)])]));
            }
        }
        out.push((
            format!("x{q}s{q} = s{q}x{} - 1 - c{q}c{}", q + 1, q + 1),
            vec![(1, vec![X(q), S(q)])],
            vec![(1, vec![S(q), X(q + 1)]), (-1, vec![]), (-1, vec![C(q), C(q + 1)])],
        ));
    }
    out
}

fn an_side(n: usize, side: &RelationSide) -> AnElement {
    side.iter().fold(AnElement::zero(n), |acc, (k, w)| acc.add(&an_normal_form(n, w).scale(&GaussRat::from_int(*k))))
}

/// The defining relations written as pairs `(lhs, rhs)` in `A_n`, each
/// labelled.
pub fn defining_relations(n: usize) -> Vec<(String, AnElement, AnElement)> {
    relation_words(n).into_iter().map(|(l, a, b)| (l, an_side(n, &a), an_side(n, &b))).collect()
}

/// The defining relations in normal form, conjugation of `c_p` by all of
/// `S_n`, and checks of the rewriting against the expected forms.
pub fn check_an_relations(n: usize) -> Vec<CheckOutcome> {
    let rel = defining_relations(n);
    let mut out = vec![outcome(
        format!("A_{n} defining relations"),
        "Sergeev algebra relations",
        first_failure(rel.iter().map(|(l, a, b)| (a == b, format!("{l}: {a} vs {b}")))),
    )];
    let conj = all_perms(n).into_iter().flat_map(|w| {
        (1..=n).map(move |p| {
            let e = AnElement::perm(w.clone());
            let lhs = e.mul(&AnElement::c(n, p)).mul(&AnElement::perm(perm_inv(&w)));
            let rhs = AnElement::c(n, w[p - 1] as usize + 1);
            (lhs == rhs, format!("w={} p={p}", perm_string(&w)))
        })
    });
    out.push(outcome(format!("H_{n} w c_p w^-1 = c_w(p)"), "Clifford conjugation by S_n", first_failure(conj)));
    out
}

/// Random normal-form basis element with x-degree at most `deg` per letter
/// and a small nonzero integer coefficient.
pub fn random_basis(rng: &mut ChaCha8Rng, n: usize, deg: u32) -> AnElement {
    let c = if n == 0 { 0 } else { rng.next_u32() & ((1u32 << n) - 1) };
    let perms = all_perms(n);
    let w = perms[rng.next_u32() as usize % perms.len()].clone();
    let x = (0..n).map(|_| rng.next_u32() % (deg + 1)).collect();
    let coeff = GaussRat::from_int((rng.next_u32() % 5) as i64 + 1);
    AnElement::basis(AnBasis { c, w, x }, coeff)
}

pub fn random_hn(rng: &mut ChaCha8Rng, n: usize) -> HnElement {
    let b = random_basis(rng, n, 0);
    let (k, c) = b.terms().next().unwrap();
    HnElement::basis(k.hn(), c.clone())
}

pub fn check_associativity(n: usize, deg: u32, samples: usize, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cases = (0..samples).map(|_| {
        let (a, b, c) = (random_basis(&mut rng, n, deg), random_basis(&mut rng, n, deg), random_basis(&mut rng, n, deg));
        let ok = a.mul(&b).mul(&c) == a.mul(&b.mul(&c));
        (ok, format!("a={a} b={b} c={c}"))
    });
    let cases: Vec<_> = cases.collect();
    outcome(format!("A_{n} associativity (x-degree {deg})"), "PBW rewriting is associative", first_failure(cases))
}

/// `y_1 = x_1`, conjugation `w y_p w^{-1} = y_{w(p)}`, the Clifford
/// relations of `y_p`, and `w_pq [y_p, y_q] = y_p - y_q + c_p c_q (y_p + y_q)`.
pub fn check_y_relations(n: usize) -> Vec<CheckOutcome> {
    let ys = y_generators(n);
    let mut out = Vec::new();
    if n >= 1 {
        out.push(CheckOutcome::from_bool(format!("y1 = x1 (n={n})"), "y_1 = x_1", ys[0] == AnElement::x(n, 1), format!("y1 = {}", ys[0])));
    }
    let mut conj = Vec::new();
    for w in all_perms(n) {
        let (e, ei) = (AnElement::perm(w.clone()), AnElement::perm(perm_inv(&w)));
        for p in 1..=n {
            let ok = e.mul(&ys[p - 1]).mul(&ei) == ys[w[p - 1] as usize];
            conj.push((ok, format!("w={} p={p}", perm_string(&w))));
        }
    }
    out.push(outcome(format!("w y_p w^-1 = y_w(p) (n={n})"), "w y_p w^-1 = y_w(p)", first_failure(conj)));
    let mut cl = Vec::new();
    for p in 1..=n {
        for q in 1..=n {
            let (y, c) = (&ys[p - 1], AnElement::c(n, q));
            let rhs = if p == q { c.mul(y).neg() } else { c.mul(y) };
            cl.push((y.mul(&c) == rhs, format!("p={p} q={q}")));
        }
    }
    out.push(outcome(format!("y_p c_q relations (n={n})"), "y_p c_q = ±c_q y_p", first_failure(cl)));
    let mut br = Vec::new();
    for p in 1..=n {
        for q in 1..=n {
            if p == q {
                continue;
            }
            let (yp, yq) = (&ys[p - 1], &ys[q - 1]);
            let lhs = AnElement::transposition(n, p, q).mul(&yp.mul(yq).sub(&yq.mul(yp)));
            let cc = AnElement::c(n, p).mul(&AnElement::c(n, q));
            let rhs = yp.sub(yq).add(&cc.mul(&yp.add(yq)));
            br.push((lhs == rhs, format!("p={p} q={q}: {lhs} vs {rhs}")));
        }
    }
    out.push(outcome(format!("w_pq[y_p,y_q] bracket (n={n})"), "y-generator commutation relation", first_failure(br)));
    out
}

/// `γ_m` on all defining relations for `m ≤ m_max`, `γ_0(x_1) = 0`,
/// `γ_0(y_p) = 0`, and `γ_m(ab) = γ_m(a)γ_m(b)` on random pairs.
pub fn check_gamma(n: usize, m_max: usize, samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    let rel = relation_words(n);
    for m in 0..=m_max {
        let mut g = Gamma::new(m, n);
        let t = m + n;
        let mut image = |w: &[AnGen]| w.iter().fold(HnElement::one(t), |acc, &x| acc.mul(&g.apply(&an_normal_form(n, &[x]))));
        let mut side = |s: &RelationSide| s.iter().fold(HnElement::zero(t), |acc, (k, w)| acc.add(&image(w).scale(&GaussRat::from_int(*k))));
        let cases: Vec<_> = rel
            .iter()
            .map(|(l, a, b)| {
                let (ga, gb) = (side(a), side(b));
                (ga == gb, format!("{l}: {ga} vs {gb}"))
            })
            .collect();
        out.push(outcome(format!("gamma_{m} on relations (n={n})"), "gamma_m is a homomorphism", first_failure(cases)));
    }
    if n >= 1 {
        let g = gamma(0, &AnElement::x(n, 1));
        out.push(CheckOutcome::from_bool(format!("gamma_0(x1) = 0 (n={n})"), "gamma_0(x_1) = 0", g.is_zero(), format!("{g}")));
    }
    let ys = y_generators(n);
    let mut g0 = Gamma::new(0, n);
    let cases: Vec<_> = ys.iter().enumerate().map(|(p, y)| (g0.apply(y).is_zero(), format!("p={}", p + 1))).collect();
    out.push(outcome(format!("gamma_0(y_p) = 0 (n={n})"), "y_p lie in the kernel of gamma_0", first_failure(cases)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..samples {
        let m = rng.next_u32() as usize % (m_max + 1);
        let (a, b) = (random_basis(&mut rng, n, 2), random_basis(&mut rng, n, 2));
        let mut g = Gamma::new(m, n);
        let ok = g.apply(&a.mul(&b)) == g.apply(&a).mul(&g.apply(&b));
        cases.push((ok, format!("m={m} a={a} b={b}")));
    }
    out.push(outcome(format!("gamma_m(ab) = gamma_m(a)gamma_m(b) (n={n})"), "gamma_m is a homomorphism", first_failure(cases)));
    out
}

/// A wrong-sign variant of `x_q s_q = s_q x_{q+1} - 1 - c_q c_{q+1}`,
/// which `γ_1` must refute.
pub fn gamma_control(n: usize) -> CheckOutcome {
    assert!(n >= 2);
    let mut g = Gamma::new(1, n);
    let (x1, x2, s) = (AnElement::x(n, 1), AnElement::x(n, 2), AnElement::transposition(n, 1, 2));
    let cc = AnElement::c(n, 1).mul(&AnElement::c(n, 2));
    let lhs = g.apply(&x1).mul(&g.apply(&s));
    let rhs = g.apply(&s).mul(&g.apply(&x2)).sub(&g.apply(&AnElement::one(n))).add(&g.apply(&cc));
    CheckOutcome::from_bool(format!("gamma_1 on mutated relation (n={n})"), "gamma_m is a homomorphism", lhs == rhs, "x1 s1 = s1 x2 - 1 + c1c2").as_control()
}

/// All normal-form monomials of x-degree at most `degree`.
pub fn pbw_monomials(n: usize, degree: u32) -> Vec<AnBasis> {
    let mut exps: Vec<Vec<u32>> = vec![Vec::new()];
    for _ in 0..n {
        exps = exps.into_iter().flat_map(|e| (0..=degree).map(move |k| [e.clone(), vec![k]].concat())).collect();
    }
    exps.retain(|e| e.iter().sum::<u32>() <= degree);
    let mut out = Vec::new();
    for c in 0..1u32 << n {
        for w in all_perms(n) {
            for x in &exps {
                out.push(AnBasis { c, w: w.clone(), x: x.clone() });
            }
        }
    }
    out
}

/// Rank of the `γ_m` images (`m = degree`) of all monomials of x-degree at
/// most `degree`.
pub fn pbw_independence_check(n: usize, degree: u32) -> CheckOutcome {
    let monos = pbw_monomials(n, degree);
    let mut g = Gamma::new(degree as usize, n);
    let mut ech = Echelon::new(PivotRule::First);
    let mut rank = 0;
    for k in &monos {
        rank += ech.insert(&g.basis_image(k).to_sparse()) as usize;
    }
    let t = degree as usize + n;
    let dim = (1usize << t) * factorial(t);
    let detail = format!("{} monomials, rank {rank} in H_{t} (dim {dim})", monos.len());
    if rank == monos.len() {
        CheckOutcome::pass(format!("PBW independence n={n} degree {degree}"), "PBW monomials form a basis", detail)
    } else {
        CheckOutcome::fail(format!("PBW independence n={n} degree {degree}"), "PBW monomials form a basis", detail)
    }
}

/// `H_n → End((C^{N|N})^{⊗n})`, `w_pq ↦ P_pq`, `c_p ↦ J_p`.
pub struct HnRep {
    big_n: usize,
    n: usize,
    space: Arc<Space>,
    cs: Vec<Op>,
    ss: Vec<Op>,
}

pub fn hn_matrix_rep(big_n: usize, n: usize) -> HnRep {
    let space = cnn(big_n, n);
    let cs = (0..n).map(|p| j_op(big_n).embed(&[p], &space)).collect();
    let ss = (0..n.saturating_sub(1)).map(|q| perm_p(big_n).embed(&[q, q + 1], &space)).collect();
    HnRep { big_n, n, space, cs, ss }
}

impl HnRep {
    pub fn space(&self) -> &Arc<Space> {
        &self.space
    }

    /// `J_p`, 1-based.
    pub fn c(&self, p: usize) -> &Op {
        &self.cs[p - 1]
    }

    /// `P_{q,q+1}`, 1-based.
    pub fn s(&self, q: usize) -> &Op {
        &self.ss[q - 1]
    }

    pub fn perm(&self, w: &[u8]) -> Op {
        let mut out = Op::identity_g(self.space.clone());
        for q in reduced_word(w) {
            out = out.mul(&self.ss[q]);
        }
        out
    }

    pub fn basis_image(&self, b: &HnBasis) -> Op {
        let mut out = Op::identity_g(self.space.clone());
        for p in 0..self.n {
            if b.c >> p & 1 == 1 {
                out = out.mul(&self.cs[p]);
            }
        }
        out.mul(&self.perm(&b.w))
    }

    pub fn image(&self, h: &HnElement) -> Op {
        assert_eq!(h.n, self.n);
        let mut out = Op::zero_op(self.space.clone());
        for (k, c) in &h.terms {
            out = out.add(&self.basis_image(k).scale(c));
        }
        out
    }

    /// `Σ_p ι_p(F_ij)`.
    pub fn tensor_power_f(&self, i: SIndex, j: SIndex) -> Op {
        let f = f_op(self.big_n, i, j);
        let mut out = Op::zero_op(self.space.clone());
        for p in 0..self.n {
            out = out.add(&f.embed(&[p], &self.space));
        }
        out
    }
}

/// Relations of the images of `c_p`, `w_{q,q+1}`, the homomorphism property
/// on random pairs, parity, and supercommutation with the `F_ij` action.
pub fn check_hn_rep(big_n: usize, n: usize, samples: usize, seed: u64) -> Vec<CheckOutcome> {
    let rep = hn_matrix_rep(big_n, n);
    let tag = format!("N={big_n} n={n}");
    let mut out = Vec::new();
    let mut cases = Vec::new();
    let id = Op::identity_g(rep.space.clone());
    for p in 1..=n {
        cases.push((rep.c(p).mul(rep.c(p)) == id.neg(), format!("J{p}^2")));
        for q in 1..=n {
            if p != q {
                cases.push((rep.c(p).mul(rep.c(q)) == rep.c(q).mul(rep.c(p)).neg(), format!("J{p}J{q}")));
            }
        }
        cases.push((rep.c(p).parity() == Some(1), format!("J{p} parity")));
    }
    for q in 1..n {
        cases.push((rep.s(q).mul(rep.s(q)) == id, format!("P{q}^2")));
        for p in 1..=n {
            let target = if p == q {
                q + 1
            } else if p == q + 1 {
                q
            } else {
                p
            };
            cases.push((rep.s(q).mul(rep.c(p)).mul(rep.s(q)) == *rep.c(target), format!("P{q} J{p} P{q}")));
        }
        if q + 1 < n {
            let l = rep.s(q).mul(rep.s(q + 1)).mul(rep.s(q));
            cases.push((l == rep.s(q + 1).mul(rep.s(q)).mul(rep.s(q + 1)), format!("braid {q}")));
        }
    }
    out.push(outcome(format!("H_n relations on matrices ({tag})"), "H_n acts by P_pq and J_p", first_failure(cases)));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for _ in 0..samples {
        let (ha, hb) = (random_hn(&mut rng, n), random_hn(&mut rng, n));
        let img = rep.image(&ha.mul(&hb));
        let ok = img == rep.image(&ha).mul(&rep.image(&hb)) && img.parity() == ha.mul(&hb).parity();
        cases.push((ok, format!("a={ha} b={hb}")));
    }
    out.push(outcome(format!("H_n matrix rep is multiplicative ({tag})"), "H_n acts by P_pq and J_p", first_failure(cases)));
    let mut cases = Vec::new();
    for i in SIndex::all(big_n) {
        for j in SIndex::all(big_n) {
            let f = rep.tensor_power_f(i, j);
            for p in 1..=n {
                cases.push((rep.c(p).supercommutator(&f).is_zero(), format!("J{p} vs F({},{})", i.value(), j.value())));
            }
            for q in 1..n {
                cases.push((rep.s(q).supercommutator(&f).is_zero(), format!("P{q} vs F({},{})", i.value(), j.value())));
            }
        }
    }
    out.push(outcome(format!("H_n image supercommutes with q_N ({tag})"), "H_n image supercommutes with the tensor power of q_N", first_failure(cases)));
    out
}

#[derive(Clone, Debug)]
pub struct SergeevConfig {
    pub n: usize,
    /// `N` for the matrix representation.
    pub big_n: usize,
    pub degree: u32,
    pub samples: usize,
    pub seed: u64,
}

impl SergeevConfig {
    pub fn new(n: usize, big_n: usize, degree: u32, seed: u64) -> Self {
        SergeevConfig { n, big_n, degree, samples: 24, seed }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SergeevCheck {
    Relations,
    Y,
    Gamma,
    Pbw,
    Rep,
}

impl SergeevCheck {
    pub const ALL: [SergeevCheck; 5] = [SergeevCheck::Relations, SergeevCheck::Y, SergeevCheck::Gamma, SergeevCheck::Pbw, SergeevCheck::Rep];

    pub fn name(self) -> &'static str {
        match self {
            SergeevCheck::Relations => "relations",
            SergeevCheck::Y => "y",
            SergeevCheck::Gamma => "gamma",
            SergeevCheck::Pbw => "pbw",
            SergeevCheck::Rep => "rep",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.name() == s)
    }
}

/// Runs the selected checks for every rank `1 ..= cfg.n`.
pub fn run_checks(cfg: &SergeevConfig, which: &[SergeevCheck], controls: bool) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for n in 1..=cfg.n {
        let seed = cfg.seed.wrapping_add(n as u64);
        for c in which {
            match c {
                SergeevCheck::Relations => {
                    out.extend(check_an_relations(n));
                    out.push(check_associativity(n, cfg.degree, cfg.samples, seed));
                }
                SergeevCheck::Y => out.extend(check_y_relations(n)),
                SergeevCheck::Gamma => {
                    out.extend(check_gamma(n, cfg.degree as usize, cfg.samples, seed));
                    if controls && n >= 2 {
                        out.push(gamma_control(n));
                    }
                }
                SergeevCheck::Pbw => out.push(pbw_independence_check(n, cfg.degree)),
                SergeevCheck::Rep => out.extend(check_hn_rep(cfg.big_n, n, cfg.samples, seed)),
            }
        }
    }
    out
}
