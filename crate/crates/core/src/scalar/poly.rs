//! Sparse multivariate polynomials over Q(i) in graded-lex order.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::gauss::GaussRat;

/// Exponent vector ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, k: usize) -> Self {
        let mut e = vec![0; nvars];
        e[k] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}
impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, GaussRat::one())
    }

    /// The coordinate function `x_k`.
    pub fn var(nvars: usize, k: usize) -> Self {
        assert!(k < nvars);
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::var(nvars, k), GaussRat::one());
        p
    }

    /// `sum_k a_k x_k + c`.
    pub fn linear(coeffs: &[i64], c: i64) -> Self {
        let n = coeffs.len();
        let mut p = Self::constant(n, GaussRat::from_int(c));
        for (k, a) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(n, k), GaussRat::from_int(*a));
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        assert_eq!(m.0.len(), self.nvars, "monomial arity");
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                *old = &*old + &c;
                if old.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Constant value if the polynomial has no variable terms.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Degree in variable `k`; zero polynomial reports 0.
    pub fn degree_in(&self, k: usize) -> u32 {
        self.terms.keys().map(|m| m.0[k]).max().unwrap_or(0)
    }

    pub fn degrees(&self) -> Vec<u32> {
        (0..self.nvars).map(|k| self.degree_in(k)).collect()
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn eval(&self, point: &[GaussRat]) -> GaussRat {
        assert_eq!(point.len(), self.nvars, "evaluation arity");
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, e) in point.iter().zip(&m.0) {
                if *e > 0 {
                    t = &t * &x.pow(*e as i64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Substitute `x_k -> -x_k`.
    pub fn negate_var(&self, k: usize) -> Self {
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), if m.0[k] % 2 == 1 { -c } else { c.clone() })).collect() }
    }

    /// Renames `x_k -> x_{perm[k]}`.
    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = vec![0; self.nvars];
            for (k, d) in m.0.iter().enumerate() {
                e[perm[k]] = *d;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Substitute `x_k -> value`, keeping the arity.
    pub fn substitute(&self, k: usize, value: &GaussRat) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            let e = m2.0[k];
            m2.0[k] = 0;
            out.add_term(m2, c * &value.pow(e as i64));
        }
        out
    }

    /// Exact quotient by a univariate-in-`k` monic divisor, if it divides.
    pub fn div_exact_univariate(&self, d: &Poly) -> Option<Poly> {
        assert!(self.nvars == 1 && d.nvars == 1);
        let (dm, dc) = d.leading()?;
        let dd = dm.0[0];
        let dinv = dc.recip();
        let mut rem = self.clone();
        let mut q = Poly::zero(1);
        while let Some((m, c)) = rem.leading() {
            if m.0[0] < dd {
                return None;
            }
            let t = Poly { nvars: 1, terms: [(Monomial(vec![m.0[0] - dd]), c * &dinv)].into_iter().collect() };
            rem = &rem - &(&t * d);
            q = &q + &t;
        }
        Some(q)
    }

    /// Univariate gcd, normalised monic; the zero polynomial has gcd equal to the other input.
    pub fn gcd_univariate(a: &Poly, b: &Poly) -> Poly {
        assert!(a.nvars == 1 && b.nvars == 1);
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.rem_univariate(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    fn rem_univariate(&self, d: &Poly) -> Poly {
        let (dm, dc) = d.leading().expect("nonzero divisor");
        let dd = dm.0[0];
        let dinv = dc.recip();
        let mut rem = self.clone();
        while let Some((m, c)) = rem.leading() {
            if m.0[0] < dd {
                break;
            }
            let t = Poly { nvars: 1, terms: [(Monomial(vec![m.0[0] - dd]), c * &dinv)].into_iter().collect() };
            rem = &rem - &(&t * d);
        }
        rem
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.recip()),
            None => self.clone(),
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-GaussRat::one())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        assert_eq!(self.nvars, o.nvars);
        let mut out = Poly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (k, e) in m.0.iter().enumerate() {
                if *e > 0 {
                    write!(f, "*x{}^{}", k, e)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(coeffs: &[(i64, u32, u32)]) -> Poly {
        let mut out = Poly::zero(2);
        for (c, a, b) in coeffs {
            out.add_term(Monomial(vec![*a, *b]), GaussRat::from_int(*c));
        }
        out
    }

    #[test]
    fn grlex_leading_term() {
        let f = p(&[(1, 2, 0), (3, 0, 3), (5, 1, 1)]);
        assert_eq!(f.leading().unwrap().0 .0, vec![0, 3]);
        assert_eq!(f.degrees(), vec![2, 3]);
    }

    #[test]
    fn univariate_gcd_and_division() {
        let x = Poly::var(1, 0);
        let one = Poly::one(1);
        let a = &(&x - &one) * &(&x + &one);
        let b = &(&x - &one) * &(&x - &Poly::constant(1, GaussRat::from_int(3)));
        assert_eq!(Poly::gcd_univariate(&a, &b), &x - &one);
        assert_eq!(a.div_exact_univariate(&(&x + &one)).unwrap(), &x - &one);
        assert!(a.div_exact_univariate(&(&x - &Poly::constant(1, GaussRat::from_int(2)))).is_none());
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(cs in proptest::collection::vec((-5i64..5, 0u32..3, 0u32..3), 0..5),
                                    ds in proptest::collection::vec((-5i64..5, 0u32..3, 0u32..3), 0..5),
                                    x in -6i64..6, y in -6i64..6) {
            let (f, g) = (p(&cs), p(&ds));
            let pt = [GaussRat::from_int(x), GaussRat::from_int(y)];
            prop_assert_eq!((&f * &g).eval(&pt), &f.eval(&pt) * &g.eval(&pt));
            prop_assert_eq!((&f + &g).eval(&pt), &f.eval(&pt) + &g.eval(&pt));
            prop_assert_eq!(f.negate_var(0).eval(&pt), f.eval(&[-pt[0].clone(), pt[1].clone()]));
        }
    }
}
