//! Seeded random polynomials for constructions and fuzzing.

use rand::Rng;

use super::gauss::GaussRational;
use super::monomial::{Monomial, Var, VarSet};
use super::poly::Polynomial;

/// Shape of a random polynomial.
#[derive(Debug, Clone, Copy)]
pub struct RandomPolySpec {
    pub vars: VarSet,
    pub max_degree: u32,
    /// Number of term draws; repeated monomials merge.
    pub terms: usize,
    /// Integer coefficients are drawn from `-coef_bound..=coef_bound`, zero excluded.
    pub coef_bound: i64,
}

impl RandomPolySpec {
    pub fn new(vars: VarSet, max_degree: u32, terms: usize) -> Self {
        RandomPolySpec {
            vars,
            max_degree,
            terms,
            coef_bound: 5,
        }
    }
}

pub fn random_monomial<R: Rng + ?Sized>(rng: &mut R, vars: VarSet, max_degree: u32) -> Monomial {
    let active: Vec<Var> = vars.iter().collect();
    let mut exps = [0u32; 4];
    if active.is_empty() {
        return Monomial::ONE;
    }
    let degree = rng.gen_range(0..=max_degree);
    for _ in 0..degree {
        let v = active[rng.gen_range(0..active.len())];
        exps[v.index()] += 1;
    }
    Monomial::new(exps)
}

pub fn random_coefficient<R: Rng + ?Sized>(rng: &mut R, bound: i64) -> GaussRational {
    loop {
        let c = rng.gen_range(-bound..=bound);
        if c != 0 {
            return GaussRational::from_integer(c);
        }
    }
}

/// A random polynomial, possibly zero if all draws cancel.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, spec: &RandomPolySpec) -> Polynomial {
    let mut p = Polynomial::zero();
    for _ in 0..spec.terms {
        let m = random_monomial(rng, spec.vars, spec.max_degree);
        p.add_term(m, &random_coefficient(rng, spec.coef_bound));
    }
    p
}

/// A random polynomial that is not constant (hence nonzero).
pub fn random_nonconstant<R: Rng + ?Sized>(rng: &mut R, spec: &RandomPolySpec) -> Polynomial {
    assert!(spec.max_degree >= 1 && !spec.vars.is_empty());
    loop {
        let p = random_polynomial(rng, spec);
        if !p.is_constant() {
            return p;
        }
    }
}

pub fn random_nonzero<R: Rng + ?Sized>(rng: &mut R, spec: &RandomPolySpec) -> Polynomial {
    loop {
        let p = random_polynomial(rng, spec);
        if !p.is_zero() {
            return p;
        }
    }
}
