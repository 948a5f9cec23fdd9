//! Exact polynomial arithmetic over the Gaussian rationals.

mod decompose;
mod division;
mod gauss;
mod gcd;
mod monomial;
mod poly;
pub mod random;

pub use decompose::{coefficient_decompose, BasePair, CoefficientDecomposition};
pub use division::{div_exact, divide_single, divides};
pub use gauss::GaussRational;
pub use gcd::{gcd, gcd_all, is_squarefree, squarefree_part};
pub use monomial::{Monomial, MonomialOrder, OrderKind, Var, VarSet};
pub use poly::{poly_arith, vars, ArithOp, Operand, Polynomial};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("assignment does not cover variable `{0}`")]
    MissingVariable(Var),
    #[error("division by the zero polynomial")]
    ZeroDivisor,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("squarefree part of a constant is undefined")]
    ConstantInput,
}
