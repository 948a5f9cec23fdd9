//! Variables, monomials and monomial orders.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the four coordinates `x, y` (first plane) and `s, t` (second plane).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    X,
    Y,
    S,
    T,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::X, Var::Y, Var::S, Var::T];

    pub fn index(self) -> usize {
        match self {
            Var::X => 0,
            Var::Y => 1,
            Var::S => 2,
            Var::T => 3,
        }
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::S => "s",
            Var::T => "t",
        }
    }

    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "x" => Some(Var::X),
            "y" => Some(Var::Y),
            "s" => Some(Var::S),
            "t" => Some(Var::T),
            _ => None,
        }
    }

    pub fn bit(self) -> VarSet {
        VarSet(1 << self.index())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A subset of `{x, y, s, t}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct VarSet(u8);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);
    pub const FIRST: VarSet = VarSet(0b0011);
    pub const SECOND: VarSet = VarSet(0b1100);
    pub const ALL: VarSet = VarSet(0b1111);

    pub fn of(vars: &[Var]) -> VarSet {
        vars.iter().fold(VarSet::EMPTY, |acc, v| acc.union(v.bit()))
    }

    pub fn contains(self, v: Var) -> bool {
        self.0 & v.bit().0 != 0
    }

    pub fn union(self, other: VarSet) -> VarSet {
        VarSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Var> {
        Var::ALL.into_iter().filter(move |v| self.contains(*v))
    }
}

/// A monomial `x^a y^b s^c t^d`, stored as its exponent vector.
///
/// The fixed-width vector is canonical by construction (absent variables
/// have exponent zero). `Ord` is the global order: grevlex with
/// `x > y > s > t`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; 4]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 4]);

    pub fn new(exponents: [u32; 4]) -> Self {
        Monomial(exponents)
    }

    pub fn var(v: Var) -> Self {
        Monomial::var_pow(v, 1)
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        let mut exps = [0; 4];
        exps[v.index()] = e;
        Monomial(exps)
    }

    pub fn exponents(&self) -> [u32; 4] {
        self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn support(&self) -> VarSet {
        Var::ALL
            .into_iter()
            .filter(|v| self.exponent(*v) > 0)
            .fold(VarSet::EMPTY, |acc, v| acc.union(v.bit()))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0.iter()) {
            *a -= b;
        }
        Some(Monomial(e))
    }

    /// Splits into the part over `vars` and the part over the rest.
    pub fn split(&self, vars: VarSet) -> (Monomial, Monomial) {
        let mut inside = [0; 4];
        let mut outside = [0; 4];
        for v in Var::ALL {
            if vars.contains(v) {
                inside[v.index()] = self.exponent(v);
            } else {
                outside[v.index()] = self.exponent(v);
            }
        }
        (Monomial(inside), Monomial(outside))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        grevlex(&self.0, &other.0)
    }
}

fn lex(a: &[u32; 4], b: &[u32; 4]) -> Ordering {
    a.cmp(b)
}

fn grevlex(a: &[u32; 4], b: &[u32; 4]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        // smaller exponent in the last differing variable wins
        for k in (0..4).rev() {
            if a[k] != b[k] {
                return b[k].cmp(&a[k]);
            }
        }
        Ordering::Equal
    })
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{}", v)?;
            } else {
                write!(f, "{}^{}", v, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Grlex,
    Grevlex,
}

/// A monomial order: a kind plus a variable precedence (highest first).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialOrder {
    pub kind: OrderKind,
    pub precedence: [Var; 4],
}

impl Default for MonomialOrder {
    /// grevlex with `x > y > s > t`, the order `Monomial::cmp` implements.
    fn default() -> Self {
        MonomialOrder::new(OrderKind::Grevlex)
    }
}

impl MonomialOrder {
    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder {
            kind,
            precedence: Var::ALL,
        }
    }

    /// Panics unless `precedence` is a permutation of the four variables.
    pub fn with_precedence(kind: OrderKind, precedence: [Var; 4]) -> Self {
        let mut seen = [false; 4];
        for v in precedence {
            assert!(!seen[v.index()], "precedence must be a permutation");
            seen[v.index()] = true;
        }
        MonomialOrder { kind, precedence }
    }

    pub fn respects_degree(&self) -> bool {
        matches!(self.kind, OrderKind::Grlex | OrderKind::Grevlex)
    }

    fn permute(&self, m: &Monomial) -> [u32; 4] {
        let mut out = [0; 4];
        for (slot, v) in out.iter_mut().zip(self.precedence.iter()) {
            *slot = m.exponent(*v);
        }
        out
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (pa, pb) = (self.permute(a), self.permute(b));
        match self.kind {
            OrderKind::Lex => lex(&pa, &pb),
            OrderKind::Grlex => {
                let (da, db) = (a.total_degree(), b.total_degree());
                da.cmp(&db).then_with(|| lex(&pa, &pb))
            }
            OrderKind::Grevlex => grevlex(&pa, &pb),
        }
    }

    pub(crate) fn is_global(&self) -> bool {
        self.kind == OrderKind::Grevlex && self.precedence == Var::ALL
    }
}
