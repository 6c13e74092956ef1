//! Rational functions `num / den` over Q(i).

use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::gauss::GaussRat;
use super::poly::Poly;

/// Quotient of polynomials; the denominator is kept monic, and univariate
/// quotients are fully reduced.
#[derive(Clone)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        assert_eq!(num.nvars(), den.nvars());
        let mut r = RatFun { num, den };
        r.normalize();
        r
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFun { num: p, den: Poly::one(n) }
    }

    pub fn constant(nvars: usize, c: GaussRat) -> Self {
        Self::from_poly(Poly::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(Poly::zero(nvars))
    }

    pub fn one(nvars: usize) -> Self {
        Self::from_poly(Poly::one(nvars))
    }

    fn normalize(&mut self) {
        let n = self.num.nvars();
        if self.num.is_zero() {
            self.den = Poly::one(n);
            return;
        }
        if n == 1 {
            let g = Poly::gcd_univariate(&self.num, &self.den);
            if g.total_degree() != Some(0) {
                self.num = self.num.div_exact_univariate(&g).expect("gcd divides");
                self.den = self.den.div_exact_univariate(&g).expect("gcd divides");
            }
        }
        let lc = self.den.leading().map(|(_, c)| c.clone()).expect("nonzero denominator");
        if !lc.is_one() {
            let inv = lc.recip();
            self.num = self.num.scale(&inv);
            self.den = self.den.scale(&inv);
        }
        if self.num == self.den {
            self.num = Poly::one(n);
            self.den = Poly::one(n);
        }
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.total_degree() == Some(0)
    }

    /// Value at a point, `None` if the denominator vanishes there.
    pub fn eval(&self, point: &[GaussRat]) -> Option<GaussRat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(point) / &d)
    }

    pub fn negate_var(&self, k: usize) -> Self {
        RatFun::new(self.num.negate_var(k), self.den.negate_var(k))
    }

    pub fn permute_vars(&self, perm: &[usize]) -> Self {
        RatFun::new(self.num.permute_vars(perm), self.den.permute_vars(perm))
    }

    pub fn substitute(&self, k: usize, value: &GaussRat) -> Self {
        RatFun::new(self.num.substitute(k, value), self.den.substitute(k, value))
    }

    pub fn recip(&self) -> Self {
        RatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &GaussRat) -> Self {
        RatFun::new(self.num.scale(c), self.den.clone())
    }
}

impl PartialEq for RatFun {
    fn eq(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

impl<'a> Add<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.den == o.den {
            return RatFun::new(&self.num + &o.num, self.den.clone());
        }
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        RatFun::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }
}

impl<'a> Sub<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl<'a> Mul<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero(self.nvars());
        }
        if self.den == o.num && !self.den.is_zero() {
            return RatFun::new(self.num.clone(), o.den.clone());
        }
        if o.den == self.num {
            return RatFun::new(o.num.clone(), self.den.clone());
        }
        RatFun::new(&self.num * &o.num, &self.den * &o.den)
    }
}

impl<'a> Div<&'a RatFun> for &'a RatFun {
    type Output = RatFun;
    fn div(self, o: &RatFun) -> RatFun {
        assert!(!o.is_zero(), "division by zero");
        self * &o.recip()
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?}] / [{:?}]", self.num, self.den)
    }
}

impl crate::scalar::series::Coeff for RatFun {
    fn zero_like(&self) -> Self {
        RatFun::zero(self.nvars())
    }
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_c(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_c(&self) -> Self {
        -self
    }
    fn try_inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| self.recip())
    }
    fn scale_c(&self, c: &GaussRat) -> Self {
        self.scale(c)
    }
}
