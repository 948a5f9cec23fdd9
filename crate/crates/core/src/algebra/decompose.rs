//! Expansion of a polynomial in the monomials of one coordinate plane, with
//! coefficients in the other.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::monomial::{Monomial, Var, VarSet};
use super::poly::Polynomial;

/// Which pair of variables the expansion is taken over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BasePair {
    /// `f = sum_ij c_ij(s, t) x^i y^j`
    XY,
    /// `f = sum_ij c_ij(x, y) s^i t^j`
    ST,
}

impl BasePair {
    pub fn vars(self) -> (Var, Var) {
        match self {
            BasePair::XY => (Var::X, Var::Y),
            BasePair::ST => (Var::S, Var::T),
        }
    }

    pub fn var_set(self) -> VarSet {
        match self {
            BasePair::XY => VarSet::FIRST,
            BasePair::ST => VarSet::SECOND,
        }
    }

    pub fn complement(self) -> BasePair {
        match self {
            BasePair::XY => BasePair::ST,
            BasePair::ST => BasePair::XY,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientDecomposition {
    pub base: BasePair,
    /// `(i, j)` -> coefficient polynomial in the complementary pair. No zero entries.
    pub coefficients: BTreeMap<(u32, u32), Polynomial>,
}

impl CoefficientDecomposition {
    pub fn coefficient(&self, i: u32, j: u32) -> Polynomial {
        self.coefficients.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn reassemble(&self) -> Polynomial {
        let (u, v) = self.base.vars();
        let mut out = Polynomial::zero();
        for ((i, j), c) in &self.coefficients {
            let shift = Monomial::var_pow(u, *i).mul(&Monomial::var_pow(v, *j));
            out = &out + &c.mul_monomial(&shift);
        }
        out
    }
}

pub fn coefficient_decompose(f: &Polynomial, base: BasePair) -> CoefficientDecomposition {
    let (u, v) = base.vars();
    let mut coefficients: BTreeMap<(u32, u32), Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (inside, outside) = m.split(base.var_set());
        let key = (inside.exponent(u), inside.exponent(v));
        coefficients.entry(key).or_default().add_term(outside, c);
    }
    coefficients.retain(|_, p| !p.is_zero());
    CoefficientDecomposition { base, coefficients }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gauss::GaussRational;
    use crate::algebra::poly::vars;

    #[test]
    fn example_polynomial_over_xy() {
        let (x, y, s, t) = vars();
        let f = &(&x * &s) + &(&y * &t);
        let d = coefficient_decompose(&f, BasePair::XY);
        assert_eq!(d.coefficient(1, 0), s);
        assert_eq!(d.coefficient(0, 1), t);
        assert_eq!(d.coefficients.len(), 2);
        assert_eq!(d.reassemble(), f);
    }

    #[test]
    fn remainder_of_szemeredi_trotter_division() {
        let (_, y, _, t) = vars();
        let r = &t - &y;
        let d = coefficient_decompose(&r, BasePair::XY);
        assert_eq!(d.coefficient(0, 1), Polynomial::integer(-1));
        assert_eq!(d.coefficient(0, 0), t);
        assert_eq!(d.reassemble(), r);
    }

    #[test]
    fn constant() {
        let five = Polynomial::constant(GaussRational::from_integer(5));
        for base in [BasePair::XY, BasePair::ST] {
            let d = coefficient_decompose(&five, base);
            assert_eq!(d.coefficient(0, 0), five);
            assert_eq!(d.coefficients.len(), 1);
        }
        assert!(coefficient_decompose(&Polynomial::zero(), BasePair::XY).coefficients.is_empty());
    }
}
