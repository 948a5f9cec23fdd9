//! Sparse multivariate polynomials over `Q(i)` in the variables `x, y, s, t`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gauss::GaussRational;
use super::monomial::{Monomial, MonomialOrder, Var, VarSet};
use super::AlgebraError;

/// A polynomial as a map from monomial to nonzero coefficient.
///
/// Terms are keyed in the global order (grevlex, `x > y > s > t`). The zero
/// polynomial has no terms. The variable set is the support of the terms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, GaussRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn one() -> Self {
        Polynomial::constant(GaussRational::one())
    }

    pub fn constant(c: GaussRational) -> Self {
        Polynomial::term(c, Monomial::ONE)
    }

    pub fn integer(n: i64) -> Self {
        Polynomial::constant(GaussRational::from_integer(n))
    }

    pub fn var(v: Var) -> Self {
        Polynomial::term(GaussRational::one(), Monomial::var(v))
    }

    pub fn term(c: GaussRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    /// Builds a polynomial from possibly repeated, possibly zero terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussRational)>>(terms: I) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant or zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending global order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussRational::zero)
    }

    pub fn constant_term(&self) -> GaussRational {
        self.coefficient(&Monomial::ONE)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Variables occurring with positive exponent.
    pub fn support(&self) -> VarSet {
        self.terms
            .keys()
            .fold(VarSet::EMPTY, |acc, m| acc.union(m.support()))
    }

    pub fn uses_only(&self, vars: VarSet) -> bool {
        self.support().is_subset(vars)
    }

    /// Leading term in the global order.
    pub fn leading_term(&self) -> Option<(&Monomial, &GaussRational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_term_in(&self, order: &MonomialOrder) -> Option<(&Monomial, &GaussRational)> {
        if order.is_global() {
            return self.leading_term();
        }
        self.terms.iter().max_by(|a, b| order.cmp(a.0, b.0))
    }

    pub fn leading_coefficient(&self) -> Option<&GaussRational> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Scales so that the leading coefficient (global order) is 1. Zero stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => Polynomial::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => {
                let inv = lc.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &GaussRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * m * other`.
    pub(crate) fn add_scaled_shifted(&mut self, c: &GaussRational, m: &Monomial, other: &Polynomial) {
        if c.is_zero() {
            return;
        }
        for (om, oc) in &other.terms {
            self.add_term(om.mul(m), &(c * oc));
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, k)| (*m, k * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        let mut base = self.clone();
        let mut e = e;
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

    pub fn derivative(&self, v: Var) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents();
            exps[v.index()] -= 1;
            out.add_term(Monomial::new(exps), &(c * &GaussRational::from_integer(e as i64)));
        }
        out
    }

    /// Full evaluation. Every variable in the support must be assigned.
    pub fn evaluate(&self, assignment: &BTreeMap<Var, GaussRational>) -> Result<GaussRational, AlgebraError> {
        for v in self.support().iter() {
            if !assignment.contains_key(&v) {
                return Err(AlgebraError::MissingVariable(v));
            }
        }
        let mut values: [Option<&GaussRational>; 4] = [None; 4];
        for (v, val) in assignment {
            values[v.index()] = Some(val);
        }
        let zero = GaussRational::zero();
        let point: [&GaussRational; 4] = std::array::from_fn(|k| values[k].unwrap_or(&zero));
        Ok(self.eval_refs(point))
    }

    /// Evaluates at `(x, y, s, t)`.
    pub fn eval_at(&self, point: &[GaussRational; 4]) -> GaussRational {
        self.eval_refs([&point[0], &point[1], &point[2], &point[3]])
    }

    fn eval_refs(&self, point: [&GaussRational; 4]) -> GaussRational {
        let mut powers: [Vec<GaussRational>; 4] = Default::default();
        for v in Var::ALL {
            let k = v.index();
            let top = self.degree_in(v) as usize;
            let mut row = Vec::with_capacity(top + 1);
            row.push(GaussRational::one());
            for e in 1..=top {
                let next = &row[e - 1] * point[k];
                row.push(next);
            }
            powers[k] = row;
        }
        let mut acc = GaussRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in Var::ALL {
                let e = m.exponent(v) as usize;
                if e > 0 {
                    t *= &powers[v.index()][e];
                }
            }
            acc += &t;
        }
        acc
    }

    /// Substitutes values for some variables, leaving the rest symbolic.
    pub fn substitute(&self, values: &[(Var, GaussRational)]) -> Polynomial {
        let mut powers: Vec<(Var, Vec<GaussRational>)> = Vec::new();
        for (v, val) in values {
            let top = self.degree_in(*v) as usize;
            let mut row = vec![GaussRational::one()];
            for e in 1..=top {
                let next = &row[e - 1] * val;
                row.push(next);
            }
            powers.push((*v, row));
        }
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut exps = m.exponents();
            let mut coef = c.clone();
            for (v, row) in &powers {
                let e = exps[v.index()] as usize;
                if e > 0 {
                    coef *= &row[e];
                    exps[v.index()] = 0;
                }
            }
            out.add_term(Monomial::new(exps), &coef);
        }
        out
    }

    /// Renames variables: each `(from, to)` pair moves exponents of `from` onto `to`.
    pub fn rename(&self, mapping: &[(Var, Var)]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut exps = [0u32; 4];
            for v in Var::ALL {
                let target = mapping
                    .iter()
                    .find(|(from, _)| *from == v)
                    .map(|(_, to)| *to)
                    .unwrap_or(v);
                exps[target.index()] += m.exponent(v);
            }
            out.add_term(Monomial::new(exps), c);
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// Grammar text accepted by the expression parser, highest term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = !c.is_compound() && c.prints_negative();
            let magnitude = if negative { -c } else { c.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else if negative {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let coef_text = if magnitude.is_compound() {
                format!("({})", magnitude)
            } else {
                magnitude.to_string()
            };
            if m.is_one() {
                f.write_str(&coef_text)?;
            } else if magnitude.is_one() {
                write!(f, "{}", m)?;
            } else {
                write!(f, "{}*{}", coef_text, m)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            out.add_scaled_shifted(c, m, other);
        }
        out
    }
}

macro_rules! forward_poly_binop {
    ($imp:ident, $method:ident) => {
        impl $imp for Polynomial {
            type Output = Polynomial;
            fn $method(self, other: Polynomial) -> Polynomial {
                (&self).$method(&other)
            }
        }
        impl $imp<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, other: &Polynomial) -> Polynomial {
                (&self).$method(other)
            }
        }
        impl $imp<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, other: Polynomial) -> Polynomial {
                self.$method(&other)
            }
        }
    };
}

forward_poly_binop!(Add, add);
forward_poly_binop!(Sub, sub);
forward_poly_binop!(Mul, mul);

/// The four supported arithmetic operations, for callers that dispatch on a tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Right-hand operand of [`poly_arith`].
pub enum Operand<'a> {
    Poly(&'a Polynomial),
    Scalar(&'a GaussRational),
}

/// Tagged arithmetic; a scalar operand is treated as a constant polynomial,
/// so `Mul` with a scalar is scaling.
pub fn poly_arith(op: ArithOp, a: &Polynomial, b: Operand<'_>) -> Polynomial {
    let b = match b {
        Operand::Poly(p) => p.clone(),
        Operand::Scalar(c) => Polynomial::constant(c.clone()),
    };
    match op {
        ArithOp::Add => a + &b,
        ArithOp::Sub => a - &b,
        ArithOp::Mul => a * &b,
    }
}

/// Convenience for tests and constructions: `x`, `y`, `s`, `t`.
pub fn vars() -> (Polynomial, Polynomial, Polynomial, Polynomial) {
    (
        Polynomial::var(Var::X),
        Polynomial::var(Var::Y),
        Polynomial::var(Var::S),
        Polynomial::var(Var::T),
    )
}
