//! Multivariate division by a single polynomial.

use super::monomial::MonomialOrder;
use super::poly::Polynomial;
use super::AlgebraError;

/// Divides `f` by `g` under `order`, returning `(quotient, remainder)` with
/// `f = g * quotient + remainder` and no remainder monomial divisible by the
/// leading monomial of `g`.
pub fn divide_single(
    f: &Polynomial,
    g: &Polynomial,
    order: &MonomialOrder,
) -> Result<(Polynomial, Polynomial), AlgebraError> {
    let (lm_g, lc_g) = match g.leading_term_in(order) {
        Some((m, c)) => (*m, c.clone()),
        None => return Err(AlgebraError::ZeroDivisor),
    };
    let lc_inv = lc_g.inv().expect("leading coefficient is nonzero");
    let mut quotient = Polynomial::zero();
    let mut remainder = Polynomial::zero();
    let mut rest = f.clone();
    while let Some((lm, lc)) = rest.leading_term_in(order).map(|(m, c)| (*m, c.clone())) {
        match lm_g.quotient_of(&lm) {
            Some(shift) => {
                let c = &lc * &lc_inv;
                quotient.add_term(shift, &c);
                rest.add_scaled_shifted(&-&c, &shift, g);
            }
            None => {
                remainder.add_term(lm, &lc);
                rest.add_term(lm, &-&lc);
            }
        }
    }
    Ok((quotient, remainder))
}

/// `f / g` when `g` divides `f` exactly.
///
/// A single polynomial is a Groebner basis of the ideal it generates, so a zero
/// division remainder is equivalent to divisibility.
pub fn div_exact(f: &Polynomial, g: &Polynomial) -> Result<Option<Polynomial>, AlgebraError> {
    let (q, r) = divide_single(f, g, &MonomialOrder::default())?;
    Ok(if r.is_zero() { Some(q) } else { None })
}

pub fn divides(g: &Polynomial, f: &Polynomial) -> Result<bool, AlgebraError> {
    Ok(div_exact(f, g)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::monomial::{Monomial, OrderKind, Var};
    use crate::algebra::poly::vars;

    #[test]
    fn divides_example_polynomial_by_x() {
        let (x, y, s, t) = vars();
        let f = &(&x * &s) + &(&y * &t);
        let (q, r) = divide_single(&f, &x, &MonomialOrder::default()).unwrap();
        assert_eq!(q, s);
        assert_eq!(r, &y * &t);
        assert_eq!(&(&x * &q) + &r, f);
    }

    #[test]
    fn divides_szemeredi_trotter_polynomial_by_x() {
        let (x, y, s, t) = vars();
        let f = &(&(&x * &s) - &y) + &t;
        let (q, r) = divide_single(&f, &x, &MonomialOrder::default()).unwrap();
        assert_eq!(q, s);
        assert_eq!(r, &t - &y);
        assert_eq!(&(&x * &q) + &r, f);
    }

    #[test]
    fn self_division() {
        let (x, y, s, _) = vars();
        let g = &(&x.pow(2) * &s) - &y;
        for kind in [OrderKind::Lex, OrderKind::Grlex, OrderKind::Grevlex] {
            let (q, r) = divide_single(&g, &g, &MonomialOrder::new(kind)).unwrap();
            assert!(q.is_one());
            assert!(r.is_zero());
        }
    }

    #[test]
    fn zero_divisor_is_rejected() {
        let (x, _, _, _) = vars();
        assert_eq!(
            divide_single(&x, &Polynomial::zero(), &MonomialOrder::default()),
            Err(AlgebraError::ZeroDivisor)
        );
    }

    #[test]
    fn remainder_avoids_leading_monomial_in_every_order() {
        let (x, y, s, t) = vars();
        let f = &(&(&x.pow(3) * &t) + &(&y.pow(2) * &s)) - &(&x * &y);
        let g = &(&x * &y) + &s;
        for kind in [OrderKind::Lex, OrderKind::Grlex, OrderKind::Grevlex] {
            let order = MonomialOrder::with_precedence(kind, [Var::T, Var::X, Var::S, Var::Y]);
            let (q, r) = divide_single(&f, &g, &order).unwrap();
            assert_eq!(&(&g * &q) + &r, f);
            let lm: Monomial = *g.leading_term_in(&order).unwrap().0;
            assert!(r.terms().all(|(m, _)| !lm.divides(m)));
        }
    }

    #[test]
    fn exact_division() {
        let (x, y, _, _) = vars();
        let a = &x - &y;
        let b = &x + &y;
        assert_eq!(div_exact(&(&a * &b), &a).unwrap(), Some(b.clone()));
        assert_eq!(div_exact(&(&a * &b + Polynomial::one()), &a).unwrap(), None);
    }
}
