//! Exact counting of `|Z(F) ∩ (P x Q)|` and of common zeros of two-polynomial systems.

use std::collections::HashMap;

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::algebra::{coefficient_decompose, gcd, BasePair, GaussRational, Monomial, Polynomial, Var};

use super::envelope::{Envelope, EnvelopeKind};
use super::modular::GaussMod;
use super::points::{Point, PointSet};
use super::GeometryError;

/// Which pair of coordinates a point is substituted for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// `q` fixes `(s, t)`; the result is `C_q` in `(x, y)`.
    Second,
    /// `p` fixes `(x, y)`; the result is the dual curve `C_p*` in `(s, t)`.
    First,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializedCurve {
    pub source: Point,
    pub side: Side,
    pub curve: Polynomial,
    /// The specialization is identically zero, so the "curve" is the whole plane.
    pub degenerate: bool,
}

impl SpecializedCurve {
    pub fn contains(&self, point: &Point) -> bool {
        let (a, b) = match self.side {
            Side::Second => (Var::X, Var::Y),
            Side::First => (Var::S, Var::T),
        };
        self.curve
            .substitute(&[(a, point.u.clone()), (b, point.v.clone())])
            .constant_term()
            .is_zero()
    }
}

pub fn specialize(f: &Polynomial, point: &Point, side: Side) -> Result<SpecializedCurve, GeometryError> {
    if f.is_zero() {
        return Err(GeometryError::ZeroPolynomial);
    }
    let (a, b) = match side {
        Side::Second => (Var::S, Var::T),
        Side::First => (Var::X, Var::Y),
    };
    let curve = f.substitute(&[(a, point.u.clone()), (b, point.v.clone())]);
    Ok(SpecializedCurve { source: point.clone(), side, degenerate: curve.is_zero(), curve })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountOptions {
    pub parallel: bool,
    pub emit_pairs: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions { parallel: true, emit_pairs: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceReport {
    pub count: u64,
    pub p_len: usize,
    pub q_len: usize,
    pub envelopes: Vec<Envelope>,
    /// Indices of `q ∈ Q` where every system polynomial specializes to zero.
    pub degenerate: Vec<usize>,
    /// Incident `(p, q)` index pairs, sorted by `q` then `p`, when requested.
    pub pairs: Option<Vec<(usize, usize)>>,
    /// For two-polynomial systems: whether the two are coprime.
    pub coprime: Option<bool>,
}

impl IncidenceReport {
    pub fn envelope(&self, kind: EnvelopeKind) -> Option<&Envelope> {
        self.envelopes.iter().find(|e| e.kind == kind)
    }
}

/// Incident `P`-indices for every `q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Incidences {
    pub per_q: Vec<Vec<u32>>,
    pub degenerate: Vec<usize>,
    /// `specializations[q]` is the `q`-th specialization of each system polynomial.
    pub specializations: Vec<Vec<Polynomial>>,
}

impl Incidences {
    pub fn count(&self) -> u64 {
        self.per_q.iter().map(|v| v.len() as u64).sum()
    }
}

type Spec = Vec<((u32, u32), GaussRational)>;

struct PointPowers {
    u: Vec<GaussRational>,
    v: Vec<GaussRational>,
    modular: Option<(Vec<GaussMod>, Vec<GaussMod>)>,
}

fn powers(z: &GaussRational, d: u32) -> Vec<GaussRational> {
    let mut out = vec![GaussRational::one()];
    for k in 1..=d as usize {
        let next = &out[k - 1] * z;
        out.push(next);
    }
    out
}

fn mod_powers(z: &GaussRational, d: u32) -> Option<Vec<GaussMod>> {
    let base = GaussMod::from_exact(z)?;
    let mut out = vec![GaussMod::ONE];
    for k in 1..=d as usize {
        out.push(out[k - 1].mul(base));
    }
    Some(out)
}

impl PointPowers {
    fn new(p: &Point, d: u32) -> PointPowers {
        let modular = match (mod_powers(&p.u, d), mod_powers(&p.v, d)) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        };
        PointPowers { u: powers(&p.u, d), v: powers(&p.v, d), modular }
    }

    fn exact_zero(&self, spec: &Spec) -> bool {
        let mut acc = GaussRational::zero();
        for ((i, j), c) in spec {
            acc += &(c * &(&self.u[*i as usize] * &self.v[*j as usize]));
        }
        acc.is_zero()
    }
}

fn mod_zero(spec: &[((u32, u32), GaussMod)], u: &[GaussMod], v: &[GaussMod]) -> bool {
    let mut acc = GaussMod::ZERO;
    for ((i, j), c) in spec {
        acc = acc.add(c.mul(u[*i as usize].mul(v[*j as usize])));
    }
    acc.is_zero()
}

fn validate(system: &[Polynomial]) -> Result<(), GeometryError> {
    if system.is_empty() || system.len() > 2 {
        return Err(GeometryError::SystemSize(system.len()));
    }
    if system.iter().any(Polynomial::is_zero) {
        return Err(GeometryError::ZeroPolynomial);
    }
    Ok(())
}

/// Exact incidences, computed once per distinct specialization.
///
/// Each `F(., ., q)` is evaluated at `p` in `F_p[i]` first and only modular
/// zeros are confirmed exactly; points whose denominators vanish mod `p` are
/// evaluated exactly throughout.
pub(crate) fn count_pairs(
    system: &[Polynomial],
    p_set: &PointSet,
    q_set: &PointSet,
    parallel: bool,
) -> Result<Incidences, GeometryError> {
    validate(system)?;
    let decomps: Vec<_> = system.iter().map(|f| coefficient_decompose(f, BasePair::XY)).collect();
    let d = system.iter().filter_map(|f| f.total_degree()).max().unwrap_or(0);

    let spec_of = |q: &Point| -> Vec<Spec> {
        decomps
            .iter()
            .map(|dec| {
                dec.coefficients
                    .iter()
                    .filter_map(|(&ij, c)| {
                        let val = c
                            .substitute(&[(Var::S, q.u.clone()), (Var::T, q.v.clone())])
                            .constant_term();
                        (!val.is_zero()).then_some((ij, val))
                    })
                    .collect()
            })
            .collect()
    };
    let specs: Vec<Vec<Spec>> = if parallel {
        q_set.points().par_iter().map(spec_of).collect()
    } else {
        q_set.iter().map(spec_of).collect()
    };

    let mut unique: Vec<&Vec<Spec>> = Vec::new();
    let mut slot: Vec<usize> = Vec::with_capacity(specs.len());
    let mut seen: HashMap<&Vec<Spec>, usize> = HashMap::new();
    for s in &specs {
        let idx = *seen.entry(s).or_insert_with(|| {
            unique.push(s);
            unique.len() - 1
        });
        slot.push(idx);
    }

    let pows: Vec<PointPowers> = if parallel {
        p_set.points().par_iter().map(|p| PointPowers::new(p, d)).collect()
    } else {
        p_set.iter().map(|p| PointPowers::new(p, d)).collect()
    };
    let all_p: Vec<u32> = (0..p_set.len() as u32).collect();

    let solve = |spec: &&Vec<Spec>| -> Vec<u32> {
        if spec.iter().all(|s| s.is_empty()) {
            return all_p.clone();
        }
        if spec.iter().any(|s| s.len() == 1 && s[0].0 == (0, 0)) {
            return Vec::new();
        }
        let modular: Option<Vec<Vec<((u32, u32), GaussMod)>>> = spec
            .iter()
            .map(|s| s.iter().map(|(ij, c)| GaussMod::from_exact(c).map(|m| (*ij, m))).collect())
            .collect();
        let mut hits = Vec::new();
        for (pi, pw) in pows.iter().enumerate() {
            let candidate = match (&modular, &pw.modular) {
                (Some(ms), Some((mu, mv))) => ms.iter().all(|m| mod_zero(m, mu, mv)),
                _ => true,
            };
            if candidate && spec.iter().all(|s| pw.exact_zero(s)) {
                hits.push(pi as u32);
            }
        }
        hits
    };
    let unique_hits: Vec<Vec<u32>> = if parallel {
        unique.par_iter().map(solve).collect()
    } else {
        unique.iter().map(solve).collect()
    };

    let degenerate = specs
        .iter()
        .enumerate()
        .filter(|(_, s)| s.iter().all(|x| x.is_empty()))
        .map(|(i, _)| i)
        .collect();
    let specializations = specs
        .iter()
        .map(|s| {
            s.iter()
                .map(|terms| {
                    Polynomial::from_terms(terms.iter().map(|((i, j), c)| {
                        (Monomial::var_pow(Var::X, *i).mul(&Monomial::var_pow(Var::Y, *j)), c.clone())
                    }))
                })
                .collect()
        })
        .collect();
    Ok(Incidences {
        per_q: slot.iter().map(|&k| unique_hits[k].clone()).collect(),
        degenerate,
        specializations,
    })
}

/// `|{(p, q) ∈ P x Q : every polynomial of the system vanishes at (p, q)}|`.
pub fn count_intersections(
    system: &[Polynomial],
    p_set: &PointSet,
    q_set: &PointSet,
    options: &CountOptions,
) -> Result<IncidenceReport, GeometryError> {
    let inc = count_pairs(system, p_set, q_set, options.parallel)?;
    let count = inc.count();
    let coprime = if system.len() == 2 {
        Some(gcd(&system[0], &system[1])?.is_constant())
    } else {
        None
    };
    let pairs = options.emit_pairs.then(|| {
        inc.per_q
            .iter()
            .enumerate()
            .flat_map(|(q, ps)| ps.iter().map(move |&p| (p as usize, q)))
            .collect()
    });
    let envelopes = [EnvelopeKind::Dim3, EnvelopeKind::Dim2, EnvelopeKind::Main]
        .into_iter()
        .map(|k| Envelope::new(k, p_set.len(), q_set.len(), count))
        .collect();
    Ok(IncidenceReport {
        count,
        p_len: p_set.len(),
        q_len: q_set.len(),
        envelopes,
        degenerate: inc.degenerate,
        pairs,
        coprime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vars;

    fn naive(system: &[Polynomial], p_set: &PointSet, q_set: &PointSet) -> u64 {
        let mut n = 0;
        for p in p_set {
            for q in q_set {
                let at = [p.u.clone(), p.v.clone(), q.u.clone(), q.v.clone()];
                if system.iter().all(|f| f.eval_at(&at).is_zero()) {
                    n += 1;
                }
            }
        }
        n
    }

    fn grid(w: i64, h: i64) -> Vec<(i64, i64)> {
        (1..=w).flat_map(|i| (1..=h).map(move |j| (i, j))).collect()
    }

    #[test]
    fn specialize_examples() {
        let (x, y, s, t) = vars();
        let f = &(&(&x * &s) - &y) + &t;
        let c = specialize(&f, &Point::integer(2, 1), Side::Second).unwrap();
        assert_eq!(c.curve, &(&(&x * &Polynomial::integer(2)) - &y) + &Polynomial::one());
        let f2 = &(&x * &s) + &(&y * &t);
        assert!(specialize(&f2, &Point::integer(0, 0), Side::Second).unwrap().degenerate);
        let circle = &(&(&x - &s).pow(2) + &(&y - &t).pow(2)) - &Polynomial::one();
        let dual = specialize(&circle, &Point::integer(0, 0), Side::First).unwrap();
        assert_eq!(dual.curve, &(&s.pow(2) + &t.pow(2)) - &Polynomial::one());
        assert!(dual.contains(&Point::integer(0, 1)));
        assert_eq!(specialize(&Polynomial::zero(), &Point::integer(0, 0), Side::First), Err(GeometryError::ZeroPolynomial));
    }

    #[test]
    fn elekes_three() {
        let (x, y, s, t) = vars();
        let f = &(&(&x * &s) - &y) + &t;
        let p = PointSet::from_integers("P", &grid(3, 9)).unwrap();
        let q = PointSet::from_integers("Q", &grid(3, 9)).unwrap();
        for parallel in [false, true] {
            let r = count_intersections(std::slice::from_ref(&f), &p, &q, &CountOptions { parallel, emit_pairs: true }).unwrap();
            assert_eq!(r.count, 45);
            assert_eq!(r.pairs.as_ref().unwrap().len(), 45);
        }
        assert_eq!(naive(&[f], &p, &q), 45);
    }

    #[test]
    fn cartesian_and_diagonal() {
        let (x, y, s, t) = vars();
        let f = &(&x * &s) + &(&y * &t);
        let p = PointSet::from_integers("P", &[(0, 1), (0, 2)]).unwrap();
        let q = PointSet::from_integers("Q", &[(1, 0), (2, 0)]).unwrap();
        assert_eq!(count_intersections(&[f], &p, &q, &CountOptions::default()).unwrap().count, 4);

        let sys = [&x - &s, &y - &t];
        let pts = PointSet::from_integers("P", &grid(4, 3)).unwrap();
        let r = count_intersections(&sys, &pts, &pts, &CountOptions::default()).unwrap();
        assert_eq!(r.count, 12);
        assert_eq!(r.coprime, Some(true));
    }

    #[test]
    fn degenerate_and_bad_denominators() {
        let (x, y, s, t) = vars();
        let f = &(&x * &s) + &(&y * &t);
        let p = PointSet::from_integers("P", &[(0, 1), (1, 1), (2, 5)]).unwrap();
        let q = PointSet::from_integers("Q", &[(0, 0), (1, -1)]).unwrap();
        let r = count_intersections(std::slice::from_ref(&f), &p, &q, &CountOptions::default()).unwrap();
        assert_eq!(r.degenerate, vec![0]);
        assert_eq!(r.count, 3 + 1);

        let modulus = num_bigint::BigInt::from(super::super::modular::P);
        let third = GaussRational::from_real(num_rational::BigRational::new(1.into(), modulus));
        let p = PointSet::new("P", vec![Point::new(third.clone(), third.clone()), Point::integer(3, 3)]).unwrap();
        let q = PointSet::new("Q", vec![Point::new(third.clone(), -third), Point::integer(1, -1)]).unwrap();
        let r = count_intersections(std::slice::from_ref(&f), &p, &q, &CountOptions::default()).unwrap();
        assert_eq!(r.count, naive(&[f], &p, &q));
        assert_eq!(r.count, 4);
    }

    #[test]
    fn rejects_bad_systems() {
        let p = PointSet::from_integers("P", &[(0, 1)]).unwrap();
        let opts = CountOptions::default();
        assert_eq!(count_intersections(&[], &p, &p, &opts), Err(GeometryError::SystemSize(0)));
        assert_eq!(count_intersections(&[Polynomial::zero()], &p, &p, &opts), Err(GeometryError::ZeroPolynomial));
    }
}
