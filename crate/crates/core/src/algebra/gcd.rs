//! Multivariate gcd over `Q(i)` by content / primitive-part recursion and a
//! primitive polynomial remainder sequence in one main variable.

use std::cmp::Reverse;

use num_traits::One;

use super::division::div_exact;
use super::gauss::GaussRational;
use super::monomial::{Monomial, Var};
use super::poly::Polynomial;
use super::AlgebraError;

/// Monic gcd of `a` and `b` (leading coefficient 1 in the global order).
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial, AlgebraError> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => Err(AlgebraError::BothZero),
        (true, false) => Ok(b.monic()),
        (false, true) => Ok(a.monic()),
        (false, false) => Ok(gcd_nonzero(a, b)),
    }
}

/// Gcd of a whole family; zero members are skipped. `None` if all are zero.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Polynomial>>(polys: I) -> Option<Polynomial> {
    let mut acc: Option<Polynomial> = None;
    for p in polys {
        if p.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => p.monic(),
            Some(g) if g.is_one() => return Some(g),
            Some(g) => gcd_nonzero(&g, p),
        });
    }
    acc
}

/// Squarefree part `f / gcd(f, df/dx, df/dy, ...)`, monic, and whether `f`
/// was already squarefree.
pub fn squarefree_part(f: &Polynomial) -> Result<(Polynomial, bool), AlgebraError> {
    if f.is_constant() {
        return Err(AlgebraError::ConstantInput);
    }
    let mut g = f.monic();
    for v in f.support().iter() {
        if g.is_one() {
            break;
        }
        g = gcd_nonzero(&g, &f.derivative(v));
    }
    let sf = div_exact(f, &g)?.expect("gcd divides its argument");
    Ok((sf.monic(), g.is_constant()))
}

pub fn is_squarefree(f: &Polynomial) -> Result<bool, AlgebraError> {
    squarefree_part(f).map(|(_, flag)| flag)
}

fn gcd_nonzero(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_constant() || b.is_constant() {
        return Polynomial::one();
    }
    let (sa, sb) = (a.support(), b.support());
    let shared: Vec<Var> = sa.iter().filter(|v| sb.contains(*v)).collect();
    let main = if shared.is_empty() {
        sa.union(sb).iter().next().expect("nonconstant input has a variable")
    } else {
        // smallest degree in the main variable keeps the remainder sequence short
        *shared
            .iter()
            .min_by_key(|v| (a.degree_in(**v).max(b.degree_in(**v)), Reverse(v.index())))
            .unwrap()
    };
    let ua = to_univariate(a, main);
    let ub = to_univariate(b, main);
    let ca = content(&ua);
    let cb = content(&ub);
    let c = gcd_nonzero(&ca, &cb);
    let pa = divide_coefficients(&ua, &ca);
    let pb = divide_coefficients(&ub, &cb);
    let g = primitive_prs(pa, pb);
    (&c * &from_univariate(&g, main)).monic()
}

/// Coefficients of `f` as a polynomial in `v`: entry `k` multiplies `v^k`.
fn to_univariate(f: &Polynomial, v: Var) -> Vec<Polynomial> {
    let mut out = vec![Polynomial::zero(); f.degree_in(v) as usize + 1];
    for (m, c) in f.terms() {
        let k = m.exponent(v) as usize;
        let mut e = m.exponents();
        e[v.index()] = 0;
        out[k].add_term(Monomial::new(e), c);
    }
    out
}

fn from_univariate(u: &[Polynomial], v: Var) -> Polynomial {
    let mut out = Polynomial::zero();
    for (k, c) in u.iter().enumerate() {
        for (m, coef) in c.terms() {
            out.add_term(m.mul(&Monomial::var_pow(v, k as u32)), coef);
        }
    }
    out
}

fn content(u: &[Polynomial]) -> Polynomial {
    gcd_all(u.iter()).unwrap_or_else(Polynomial::one)
}

fn divide_coefficients(u: &[Polynomial], c: &Polynomial) -> Vec<Polynomial> {
    if c.is_one() {
        return u.to_vec();
    }
    u.iter()
        .map(|p| div_exact(p, c).unwrap().expect("content divides every coefficient"))
        .collect()
}

fn trim(u: &mut Vec<Polynomial>) {
    while u.len() > 1 && u.last().is_some_and(Polynomial::is_zero) {
        u.pop();
    }
}

fn is_zero_univariate(u: &[Polynomial]) -> bool {
    u.iter().all(Polynomial::is_zero)
}

/// Primitive part, scaled so the top coefficient is monic.
fn primitive(u: &[Polynomial]) -> Vec<Polynomial> {
    let c = content(u);
    let mut p = divide_coefficients(u, &c);
    trim(&mut p);
    let lc: GaussRational = p
        .last()
        .and_then(|top| top.leading_coefficient().cloned())
        .unwrap_or_else(GaussRational::one);
    if lc.is_one() {
        return p;
    }
    let inv = lc.inv().expect("nonzero leading coefficient");
    p.iter().map(|q| q.scale(&inv)).collect()
}

/// Sparse pseudo-remainder of `a` by `b` in the main variable.
fn pseudo_remainder(a: &[Polynomial], b: &[Polynomial]) -> Vec<Polynomial> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    trim(&mut r);
    while !is_zero_univariate(&r) && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for coef in r.iter_mut() {
            *coef = &*coef * lb;
        }
        for (k, bk) in b.iter().enumerate() {
            let idx = k + dr - db;
            r[idx] = &r[idx] - &(&lr * bk);
        }
        debug_assert!(r[dr].is_zero());
        r.pop();
        trim(&mut r);
        if r.is_empty() {
            r.push(Polynomial::zero());
        }
    }
    r
}

fn primitive_prs(a: Vec<Polynomial>, b: Vec<Polynomial>) -> Vec<Polynomial> {
    let (mut a, mut b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    loop {
        if b.len() <= 1 {
            return vec![Polynomial::one()];
        }
        let r = pseudo_remainder(&a, &b);
        if is_zero_univariate(&r) {
            return primitive(&b);
        }
        a = b;
        b = primitive(&r);
    }
}
