//! Values of `F` on `P x P`, and fibres of two-polynomial maps.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::algebra::{gcd, GaussRational, Polynomial, Var};

use super::count::{count_intersections, specialize, CountOptions, IncidenceReport, Side};
use super::envelope::{Envelope, EnvelopeKind};
use super::points::{Point, PointSet};
use super::GeometryError;

fn eval_pair(f: &Polynomial, p: &Point, q: &Point) -> GaussRational {
    f.eval_at(&[p.u.clone(), p.v.clone(), q.u.clone(), q.v.clone()])
}

/// `|{(p, q) ∈ P x P : F(p, q) = a}|`, with the `|P|^{4/3}` envelope.
pub fn repeated_values(f: &Polynomial, p_set: &PointSet, a: &GaussRational, options: &CountOptions) -> Result<IncidenceReport, GeometryError> {
    let shifted = f - &Polynomial::constant(a.clone());
    if shifted.is_zero() {
        return Err(GeometryError::ZeroPolynomial);
    }
    let mut report = count_intersections(std::slice::from_ref(&shifted), p_set, p_set, options)?;
    report.envelopes = vec![Envelope::new(EnvelopeKind::Repeated, p_set.len(), p_set.len(), report.count)];
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinctValues {
    pub count: usize,
    /// Sorted.
    pub values: Vec<GaussRational>,
    /// `max_p |F(p x P)|` and the first `p` attaining it.
    pub best_row: Option<(usize, usize)>,
    pub envelope: Envelope,
}

/// `|F(P x P)|` by evaluating every ordered pair.
pub fn distinct_values(f: &Polynomial, p_set: &PointSet) -> DistinctValues {
    let rows: Vec<HashSet<GaussRational>> = p_set
        .points()
        .par_iter()
        .map(|p| {
            let slice = f.substitute(&[(Var::X, p.u.clone()), (Var::Y, p.v.clone())]);
            p_set
                .iter()
                .map(|q| slice.substitute(&[(Var::S, q.u.clone()), (Var::T, q.v.clone())]).constant_term())
                .collect()
        })
        .collect();
    let best_row = rows
        .iter()
        .enumerate()
        .map(|(i, r)| (r.len(), i))
        .fold(None, |best: Option<(usize, usize)>, (n, i)| match best {
            Some((bn, _)) if bn >= n => best,
            _ => Some((n, i)),
        })
        .map(|(n, i)| (i, n));
    let mut all: HashSet<GaussRational> = HashSet::new();
    for r in rows {
        all.extend(r);
    }
    let mut values: Vec<GaussRational> = all.into_iter().collect();
    values.sort();
    DistinctValues {
        count: values.len(),
        envelope: Envelope::new(EnvelopeKind::Distinct, p_set.len(), 0, values.len() as u64),
        values,
        best_row,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapMode {
    /// Pairs with `(F1, F2)(p, q) = (a, b)`.
    Fiber(GaussRational, GaussRational),
    /// `|(F1, F2)(P x P)|`.
    Distinct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapValues {
    Fiber(IncidenceReport),
    Distinct { count: usize, values: Vec<(GaussRational, GaussRational)>, envelope: Envelope },
}

pub fn map_values(f1: &Polynomial, f2: &Polynomial, p_set: &PointSet, mode: &MapMode, options: &CountOptions) -> Result<MapValues, GeometryError> {
    match mode {
        MapMode::Fiber(a, b) => {
            let g1 = f1 - &Polynomial::constant(a.clone());
            let g2 = f2 - &Polynomial::constant(b.clone());
            Ok(MapValues::Fiber(count_intersections(&[g1, g2], p_set, p_set, options)?))
        }
        MapMode::Distinct => {
            let mut seen: HashSet<(GaussRational, GaussRational)> = HashSet::new();
            for p in p_set {
                for q in p_set {
                    seen.insert((eval_pair(f1, p, q), eval_pair(f2, p, q)));
                }
            }
            let mut values: Vec<_> = seen.into_iter().collect();
            values.sort();
            let envelope = Envelope::new(EnvelopeKind::Linear, p_set.len(), 0, values.len() as u64);
            Ok(MapValues::Distinct { count: values.len(), values, envelope })
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberOutcome {
    Empty,
    /// At most this many points (Bézout bound of the specializations).
    FiniteWithBound(u64),
    /// The fibre contains the curve `g = 0`; the zero polynomial marks the whole plane.
    ContainsCurve(Polynomial),
}

/// Fibre over `(s, t) = q` of the system `F1 = F2 = 0`.
pub fn fiber_probe(f1: &Polynomial, f2: &Polynomial, q: &Point) -> Result<FiberOutcome, GeometryError> {
    let c1 = specialize(f1, q, Side::Second)?.curve;
    let c2 = specialize(f2, q, Side::Second)?.curve;
    if (!c1.is_zero() && c1.is_constant()) || (!c2.is_zero() && c2.is_constant()) {
        return Ok(FiberOutcome::Empty);
    }
    if c1.is_zero() && c2.is_zero() {
        return Ok(FiberOutcome::ContainsCurve(Polynomial::zero()));
    }
    let g = gcd(&c1, &c2)?;
    if !g.is_constant() {
        return Ok(FiberOutcome::ContainsCurve(g));
    }
    let d1 = c1.total_degree().unwrap_or(0) as u64;
    let d2 = c2.total_degree().unwrap_or(0) as u64;
    Ok(FiberOutcome::FiniteWithBound(d1 * d2))
}
