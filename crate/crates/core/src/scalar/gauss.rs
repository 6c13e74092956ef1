//! Gaussian rationals `a + b i` with `a, b` in Q.

use alloc::string::String;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use super::rational::{owned_ops, ParseRationalError, Rational};

/// Exact element of Q(i).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRat {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRat { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::real(Rational::new(n, d))
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn i() -> Self {
        GaussRat { re: Rational::zero(), im: Rational::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -&self.im }
    }

    pub fn norm(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.is_real() {
            return Self::real(self.re.recip());
        }
        let n = self.norm().recip();
        GaussRat { re: &self.re * &n, im: -&(&self.im * &n) }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.recip() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// `(-1)^k` as a scalar.
    pub fn sign(k: u32) -> Self {
        if k.is_multiple_of(2) {
            Self::one()
        } else {
            -Self::one()
        }
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(&self.re + &rhs.re);
        }
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(&self.re - &rhs.re);
        }
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &GaussRat) -> GaussRat {
        match (self.im.is_zero(), rhs.im.is_zero()) {
            (true, true) => GaussRat::real(&self.re * &rhs.re),
            (true, false) => GaussRat { re: &self.re * &rhs.re, im: &self.re * &rhs.im },
            (false, true) => GaussRat { re: &self.re * &rhs.re, im: &self.im * &rhs.re },
            (false, false) => GaussRat { re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im), im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re) },
        }
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &GaussRat) -> GaussRat {
        self * &rhs.recip()
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -&self.re, im: -&self.im }
    }
}

owned_ops!(GaussRat);

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::from_int(n)
    }
}

impl From<Rational> for GaussRat {
    fn from(r: Rational) -> Self {
        GaussRat::real(r)
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `a/b` when real, otherwise `a/b+c/d*i` (or `a/b-c/d*i`).
impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.re)?;
        if !self.im.is_zero() {
            if self.im.is_negative() {
                write!(f, "-{}*i", self.im.abs())?;
            } else {
                write!(f, "+{}*i", self.im)?;
            }
        }
        Ok(())
    }
}

impl FromStr for GaussRat {
    type Err = ParseRationalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let err = || ParseRationalError(String::from(s));
        if let Some(body) = t.strip_suffix("*i") {
            // split at the last sign that is not the leading one
            let cut = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(k, _)| k).last();
            let (re, im) = match cut {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let re: Rational = re.parse().map_err(|_| err())?;
            let im: Rational = im.parse().map_err(|_| err())?;
            Ok(GaussRat::new(re, im))
        } else {
            if t.contains('i') {
                return Err(err());
            }
            Ok(GaussRat::real(t.parse().map_err(|_| err())?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use proptest::prelude::*;

    fn g(a: i64, b: i64, c: i64, d: i64) -> GaussRat {
        GaussRat::new(Rational::new(a, b), Rational::new(c, d))
    }

    #[test]
    fn i_squared() {
        assert_eq!(&GaussRat::i() * &GaussRat::i(), GaussRat::from_int(-1));
    }

    #[test]
    fn formatting() {
        assert_eq!(g(1, 2, 0, 1).to_string(), "1/2");
        assert_eq!(g(1, 2, -3, 4).to_string(), "1/2-3/4*i");
        assert_eq!(g(0, 1, 1, 1).to_string(), "0/1+1/1*i");
        for s in ["1/2", "1/2-3/4*i", "-5/3+7/2*i", "0/1+1/1*i"] {
            assert_eq!(s.parse::<GaussRat>().unwrap().to_string(), s);
        }
        assert!("1/0+1/1*i".parse::<GaussRat>().is_err());
        assert!("1/2+i".parse::<GaussRat>().is_err());
    }

    proptest! {
        #[test]
        fn field_axioms(a in -20i64..20, b in 1i64..9, c in -20i64..20, d in 1i64..9,
                        e in -20i64..20, f in 1i64..9) {
            let x = g(a, b, c, d);
            let y = g(c, d, e, f);
            let z = g(e, f, a, b);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            if !y.is_zero() {
                prop_assert_eq!(&(&x / &y) * &y, x.clone());
            }
            prop_assert_eq!(x.to_string().parse::<GaussRat>().unwrap(), x);
        }
    }
}
