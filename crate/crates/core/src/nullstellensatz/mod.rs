//! Constructive `(G, K)`-Cartesian machinery.
//!
//! A polynomial `F(x, y, s, t)` is `(G, K)`-Cartesian when
//! `F = G(x, y) H + K(s, t) L`. For squarefree `G`, `K` this holds exactly
//! when `F` vanishes on `Z(G) x Z(K)`, and the decision is made by one
//! division: divide `F` by `G`, expand the remainder `R = sum R_ij(s, t) x^i y^j`
//! and check that `K` divides every `R_ij`.

mod fit;
mod grid;

pub(crate) use fit::binomial;
pub use fit::{fit_exact, fit_vanishing_curve, subset_curves, CurveFit, SUBSET_LIMIT};
pub use grid::{grid_witness_to_cartesian, GridOutcome};

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    coefficient_decompose, div_exact, divide_single, gcd_all, squarefree_part, AlgebraError, BasePair,
    Monomial, MonomialOrder, Polynomial, Var, VarSet,
};
use crate::geometry::{Point, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NullstellensatzError {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("{0} must be nonconstant")]
    ConstantDivisor(&'static str),
    #[error("{0} is not squarefree")]
    NotSquarefree(&'static str),
    #[error("{name} must only use the variables {allowed}")]
    VariableMismatch { name: &'static str, allowed: &'static str },
    #[error("grid point pair (p#{p}, q#{q}) is not on Z(F)")]
    GridNotContained { p: usize, q: usize },
    #[error("grid sides need more than d^2 = {bound} points, got |I| = {i_len}, |J| = {j_len}")]
    GridTooSmall { bound: usize, i_len: usize, j_len: usize },
    #[error("{found} degenerate points exceed the bound d^2 = {bound} for a polynomial without a trivial factor")]
    DegenerateBoundViolated { found: usize, bound: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `F = G H + K L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartesianWitness {
    pub g: Polynomial,
    pub k: Polynomial,
    pub h: Polynomial,
    pub l: Polynomial,
}

impl CartesianWitness {
    pub fn assemble(&self) -> Polynomial {
        &(&self.g * &self.h) + &(&self.k * &self.l)
    }

    pub fn certifies(&self, f: &Polynomial) -> bool {
        self.assemble() == *f
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FailureTag {
    /// A coefficient of the division remainder is not a multiple of `K`.
    CoefficientNotDivisible,
}

/// Exhibits the remainder coefficient `R_ij` that `K` does not divide.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureCertificate {
    pub index: (u32, u32),
    pub residue: Polynomial,
    pub tag: FailureTag,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Witness(CartesianWitness),
    Failure(FailureCertificate),
}

impl Decomposition {
    pub fn witness(&self) -> Option<&CartesianWitness> {
        match self {
            Decomposition::Witness(w) => Some(w),
            Decomposition::Failure(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&FailureCertificate> {
        match self {
            Decomposition::Failure(c) => Some(c),
            Decomposition::Witness(_) => None,
        }
    }
}

/// Result of a Cartesian test, with the squarefree substitutions that were made.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TestOutcome {
    pub decomposition: Decomposition,
    pub reduced_g: bool,
    pub reduced_k: bool,
}

fn expand_over(f: &Polynomial, vars: VarSet) -> BTreeMap<Monomial, Polynomial> {
    let mut out: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in f.terms() {
        let (inside, outside) = m.split(vars);
        out.entry(inside).or_default().add_term(outside, c);
    }
    out
}

/// Divides by `g`, then requires `k` to divide every remainder coefficient
/// with respect to the monomials in `base` (the variables of `g`).
fn split_by_division(
    f: &Polynomial,
    g: &Polynomial,
    k: &Polynomial,
    base: (Var, Option<Var>),
    order: &MonomialOrder,
) -> Result<Decomposition, NullstellensatzError> {
    let (h, r) = divide_single(f, g, order)?;
    let base_set = match base.1 {
        Some(v) => VarSet::of(&[base.0, v]),
        None => VarSet::of(&[base.0]),
    };
    let mut coefficients: Vec<((u32, u32), Monomial, Polynomial)> = expand_over(&r, base_set)
        .into_iter()
        .map(|(m, c)| ((m.exponent(base.0), base.1.map_or(0, |v| m.exponent(v))), m, c))
        .collect();
    coefficients.sort_by_key(|a| a.0);
    let mut l = Polynomial::zero();
    for (index, shift, r_ij) in coefficients {
        match div_exact(&r_ij, k)? {
            Some(l_ij) => l = &l + &l_ij.mul_monomial(&shift),
            None => {
                return Ok(Decomposition::Failure(FailureCertificate {
                    index,
                    residue: r_ij,
                    tag: FailureTag::CoefficientNotDivisible,
                }))
            }
        }
    }
    let witness = CartesianWitness {
        g: g.clone(),
        k: k.clone(),
        h,
        l,
    };
    assert!(witness.certifies(f), "division identity must reassemble F");
    Ok(Decomposition::Witness(witness))
}

fn prepare_divisor(
    p: &Polynomial,
    name: &'static str,
    reduce: bool,
) -> Result<(Polynomial, bool), NullstellensatzError> {
    if p.is_constant() {
        return Err(NullstellensatzError::ConstantDivisor(name));
    }
    let (sf, was_squarefree) = squarefree_part(p)?;
    if was_squarefree {
        return Ok((p.clone(), false));
    }
    if !reduce {
        return Err(NullstellensatzError::NotSquarefree(name));
    }
    Ok((sf, true))
}

/// One-dimensional test: is `f(x, y) = g(x) h + k(y) l`?
///
/// `g` and `k` must be squarefree; with `reduce` set, non-squarefree inputs
/// are replaced by their squarefree parts instead of rejected.
pub fn alon_1d_test(
    f: &Polynomial,
    g: &Polynomial,
    k: &Polynomial,
    reduce: bool,
) -> Result<TestOutcome, NullstellensatzError> {
    if !f.uses_only(VarSet::FIRST) {
        return Err(NullstellensatzError::VariableMismatch { name: "f", allowed: "x, y" });
    }
    if !g.uses_only(VarSet::of(&[Var::X])) {
        return Err(NullstellensatzError::VariableMismatch { name: "g", allowed: "x" });
    }
    if !k.uses_only(VarSet::of(&[Var::Y])) {
        return Err(NullstellensatzError::VariableMismatch { name: "k", allowed: "y" });
    }
    let (g, reduced_g) = prepare_divisor(g, "g", reduce)?;
    let (k, reduced_k) = prepare_divisor(k, "k", reduce)?;
    let decomposition = split_by_division(f, &g, &k, (Var::X, None), &MonomialOrder::default())?;
    Ok(TestOutcome { decomposition, reduced_g, reduced_k })
}

/// Decides whether `F` is `(G, K)`-Cartesian and returns a verified witness
/// or a failure certificate.
///
/// Non-squarefree `G` or `K` are replaced by their squarefree parts (same
/// zero set) and the substitution is flagged in the outcome.
pub fn cartesian_test(
    f: &Polynomial,
    g: &Polynomial,
    k: &Polynomial,
) -> Result<TestOutcome, NullstellensatzError> {
    cartesian_test_with_order(f, g, k, &MonomialOrder::default())
}

/// [`cartesian_test`] dividing under `order`. The bounds
/// `deg H <= deg F - deg G` and `deg L <= deg F - deg K` need a
/// degree-respecting order.
pub fn cartesian_test_with_order(
    f: &Polynomial,
    g: &Polynomial,
    k: &Polynomial,
    order: &MonomialOrder,
) -> Result<TestOutcome, NullstellensatzError> {
    if f.is_zero() {
        return Err(NullstellensatzError::ZeroPolynomial);
    }
    if !g.uses_only(VarSet::FIRST) {
        return Err(NullstellensatzError::VariableMismatch { name: "G", allowed: "x, y" });
    }
    if !k.uses_only(VarSet::SECOND) {
        return Err(NullstellensatzError::VariableMismatch { name: "K", allowed: "s, t" });
    }
    let (g, reduced_g) = prepare_divisor(g, "G", true)?;
    let (k, reduced_k) = prepare_divisor(k, "K", true)?;
    let decomposition = split_by_division(f, &g, &k, (Var::X, Some(Var::Y)), order)?;
    Ok(TestOutcome { decomposition, reduced_g, reduced_k })
}

/// Looks for a factor of `F` living in one plane only: a nonconstant common
/// factor `K(s, t)` of all coefficients over `(x, y)` gives `F = K L` (with
/// `G = x`, `H = 0`), and symmetrically a factor `G(x, y)` gives `F = G H`
/// (with `K = s`, `L = 0`).
pub fn trivial_cartesian_probe(f: &Polynomial) -> Result<Option<CartesianWitness>, NullstellensatzError> {
    if f.is_zero() {
        return Err(NullstellensatzError::ZeroPolynomial);
    }
    let over_xy = coefficient_decompose(f, BasePair::XY);
    if let Some(k) = gcd_all(over_xy.coefficients.values()) {
        if !k.is_constant() {
            let l = div_exact(f, &k)?.expect("gcd of the coefficients divides F");
            return Ok(Some(CartesianWitness {
                g: Polynomial::var(Var::X),
                k,
                h: Polynomial::zero(),
                l,
            }));
        }
    }
    let over_st = coefficient_decompose(f, BasePair::ST);
    if let Some(g) = gcd_all(over_st.coefficients.values()) {
        if !g.is_constant() {
            let h = div_exact(f, &g)?.expect("gcd of the coefficients divides F");
            return Ok(Some(CartesianWitness {
                g,
                k: Polynomial::var(Var::S),
                h,
                l: Polynomial::zero(),
            }));
        }
    }
    Ok(None)
}

/// The candidates `q` for which `F(x, y, q)` vanishes identically.
///
/// When `F` has no single-plane factor, at most `d^2` such points exist; a
/// larger result is reported as [`NullstellensatzError::DegenerateBoundViolated`].
pub fn degenerate_points(f: &Polynomial, candidates: &PointSet) -> Result<PointSet, NullstellensatzError> {
    if f.is_zero() {
        return Err(NullstellensatzError::ZeroPolynomial);
    }
    let coefficients: Vec<Polynomial> = coefficient_decompose(f, BasePair::XY)
        .coefficients
        .into_values()
        .collect();
    let hits: Vec<usize> = candidates
        .iter()
        .enumerate()
        .filter(|(_, q)| coefficients.iter().all(|c| vanishes_at(c, q, BasePair::ST)))
        .map(|(idx, _)| idx)
        .collect();
    let d = f.total_degree().unwrap_or(0) as usize;
    if hits.len() > d * d && trivial_cartesian_probe(f)?.is_none() {
        return Err(NullstellensatzError::DegenerateBoundViolated { found: hits.len(), bound: d * d });
    }
    Ok(candidates.subset(format!("degenerate({})", candidates.label()), &hits))
}

/// Evaluates a polynomial in the variables of `plane` at a planar point.
pub(crate) fn eval_planar(p: &Polynomial, point: &Point, plane: BasePair) -> crate::algebra::GaussRational {
    let (a, b) = plane.vars();
    p.substitute(&[(a, point.u.clone()), (b, point.v.clone())]).constant_term()
}

pub(crate) fn vanishes_at(p: &Polynomial, point: &Point, plane: BasePair) -> bool {
    use num_traits::Zero;
    eval_planar(p, point, plane).is_zero()
}
