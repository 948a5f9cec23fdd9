//! Exact arithmetic in the Gaussian rationals `Q(i)`.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element `re + im*i` of `Q(i)`.
///
/// Both parts are kept as reduced `BigRational`s, so equality and hashing are
/// structural. The derived ordering is lexicographic on `(re, im)`; it is only
/// used to put values into a canonical order, it is not a field ordering.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussRational {
    re: BigRational,
    im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    /// `num/den` with zero imaginary part. Panics if `den == 0`.
    pub fn from_fraction(num: i64, den: i64) -> Self {
        GaussRational::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn from_real(re: BigRational) -> Self {
        GaussRational::new(re, BigRational::zero())
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -&self.im)
    }

    /// `re^2 + im^2`.
    pub fn norm(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussRational::new(&self.re / &n, -&self.im / &n))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GaussRational::one();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// True when the printed form needs parentheses to be used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }

    /// True when the value prints with a leading minus sign.
    pub(crate) fn prints_negative(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative()
        }
    }
}

impl Zero for GaussRational {
    fn zero() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for GaussRational {
    fn one() -> Self {
        GaussRational::new(BigRational::one(), BigRational::zero())
    }
}

impl From<i64> for GaussRational {
    fn from(n: i64) -> Self {
        GaussRational::from_integer(n)
    }
}

impl From<BigRational> for GaussRational {
    fn from(r: BigRational) -> Self {
        GaussRational::from_real(r)
    }
}

fn fmt_imag(im: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else if (-im).is_one() {
        write!(f, "-i")
    } else {
        write!(f, "{}*i", im)
    }
}

/// Prints in the polynomial/CSV literal grammar: `3`, `-1/2`, `2*i`,
/// `1/2-3*i`.
impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return fmt_imag(&self.im, f);
        }
        write!(f, "{}", self.re)?;
        if !self.im.is_negative() {
            write!(f, "+")?;
        }
        fmt_imag(&self.im, f)
    }
}

impl fmt::Debug for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-&self.re, -&self.im)
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, other: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &other.re, &self.im + &other.im)
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, other: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &other.re, &self.im - &other.im)
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, other: &GaussRational) -> GaussRational {
        if self.im.is_zero() && other.im.is_zero() {
            return GaussRational::from_real(&self.re * &other.re);
        }
        GaussRational::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }
}

impl Div for &GaussRational {
    type Output = GaussRational;
    /// Panics on division by zero, like `BigRational`.
    fn div(self, other: &GaussRational) -> GaussRational {
        if other.im.is_zero() {
            return GaussRational::new(&self.re / &other.re, &self.im / &other.re);
        }
        let inv = other.inv().expect("division by zero in Q(i)");
        self * &inv
    }
}

macro_rules! forward_binop {
    ($imp:ident, $method:ident) => {
        impl $imp for GaussRational {
            type Output = GaussRational;
            fn $method(self, other: GaussRational) -> GaussRational {
                (&self).$method(&other)
            }
        }
        impl $imp<&GaussRational> for GaussRational {
            type Output = GaussRational;
            fn $method(self, other: &GaussRational) -> GaussRational {
                (&self).$method(other)
            }
        }
        impl $imp<GaussRational> for &GaussRational {
            type Output = GaussRational;
            fn $method(self, other: GaussRational) -> GaussRational {
                self.$method(&other)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, other: &GaussRational) {
        self.re += &other.re;
        self.im += &other.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, other: &GaussRational) {
        self.re -= &other.re;
        self.im -= &other.im;
    }
}

impl MulAssign<&GaussRational> for GaussRational {
    fn mul_assign(&mut self, other: &GaussRational) {
        *self = &*self * other;
    }
}

impl Sum for GaussRational {
    fn sum<I: Iterator<Item = GaussRational>>(iter: I) -> Self {
        iter.fold(GaussRational::zero(), |acc, x| acc + x)
    }
}

impl Product for GaussRational {
    fn product<I: Iterator<Item = GaussRational>>(iter: I) -> Self {
        iter.fold(GaussRational::one(), |acc, x| acc * x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> GaussRational {
        GaussRational::from_fraction(n, d)
    }

    #[test]
    fn parts_are_reduced() {
        let a = q(6, -4);
        assert_eq!(a.re().numer(), &BigInt::from(-3));
        assert_eq!(a.re().denom(), &BigInt::from(2));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussRational::i();
        assert_eq!(&i * &i, GaussRational::from_integer(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let z = q(1, 2) + q(3, 7) * GaussRational::i();
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert!(GaussRational::zero().inv().is_none());
    }

    #[test]
    fn display_forms() {
        let i = GaussRational::i();
        assert_eq!(q(3, 1).to_string(), "3");
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!(i.to_string(), "i");
        assert_eq!((-&i).to_string(), "-i");
        assert_eq!((q(2, 1) * &i).to_string(), "2*i");
        assert_eq!((q(1, 2) - q(3, 1) * &i).to_string(), "1/2-3*i");
        assert_eq!((q(1, 2) + q(3, 4) * &i).to_string(), "1/2+3/4*i");
    }

    #[test]
    fn pow_matches_repeated_product() {
        let z = q(1, 1) + GaussRational::i();
        let mut acc = GaussRational::one();
        for e in 0..7 {
            assert_eq!(z.pow(e), acc);
            acc = &acc * &z;
        }
    }
}
