//! Arithmetic in `F_p[i]` for `p = 2^61 - 1`. Since `p = 3 mod 4`, `i^2 = -1`
//! gives a field of `p^2` elements. Used only as a filter; every zero found
//! here is confirmed exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::algebra::GaussRational;

pub(crate) const P: u64 = (1 << 61) - 1;

#[inline]
fn reduce(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let mut r = lo + (hi & P) + ((x >> 122) as u64);
    while r >= P {
        r -= P;
    }
    r
}

#[inline]
fn add(a: u64, b: u64) -> u64 {
    let r = a + b;
    if r >= P {
        r - P
    } else {
        r
    }
}

#[inline]
fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
fn mul(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    acc
}

fn from_bigint(n: &BigInt) -> u64 {
    n.mod_floor(&BigInt::from(P)).to_u64().expect("residue fits in u64")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub(crate) struct GaussMod {
    re: u64,
    im: u64,
}

impl GaussMod {
    pub(crate) const ZERO: GaussMod = GaussMod { re: 0, im: 0 };
    pub(crate) const ONE: GaussMod = GaussMod { re: 1, im: 0 };

    /// `None` when a denominator vanishes mod `p`.
    pub(crate) fn from_exact(z: &GaussRational) -> Option<GaussMod> {
        let part = |q: &num_rational::BigRational| -> Option<u64> {
            let den = from_bigint(q.denom());
            if den == 0 {
                return None;
            }
            Some(mul(from_bigint(q.numer()), pow(den, P - 2)))
        };
        Some(GaussMod { re: part(z.re())?, im: part(z.im())? })
    }

    #[inline]
    pub(crate) fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    #[inline]
    pub(crate) fn add(self, o: GaussMod) -> GaussMod {
        GaussMod { re: add(self.re, o.re), im: add(self.im, o.im) }
    }

    #[inline]
    pub(crate) fn mul(self, o: GaussMod) -> GaussMod {
        GaussMod {
            re: sub(mul(self.re, o.re), mul(self.im, o.im)),
            im: add(mul(self.re, o.im), mul(self.im, o.re)),
        }
    }
}
