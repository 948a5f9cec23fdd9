//! Low-degree curves through finite planar point sets.

use num_traits::{One, Zero};

use crate::algebra::{BasePair, GaussRational, Monomial, Polynomial};
use crate::geometry::{Point, PointSet};

/// Largest number of subsets the fallback search will enumerate.
pub const SUBSET_LIMIT: u128 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CurveFit {
    /// A curve through every point.
    Exact(Polynomial),
    /// A curve through the points at `subset` (indices into the input, ascending).
    Subset { curve: Polynomial, subset: Vec<usize> },
    NotFound,
    /// The subset search would need `combinations` fits, above [`SUBSET_LIMIT`].
    NotAttempted { combinations: u128 },
}

impl CurveFit {
    pub fn curve(&self) -> Option<&Polynomial> {
        match self {
            CurveFit::Exact(c) | CurveFit::Subset { curve: c, .. } => Some(c),
            _ => None,
        }
    }
}

/// Monomials of degree `<= d` in the two variables of `plane`, ascending
/// under the global order.
fn columns(d: u32, plane: BasePair) -> Vec<Monomial> {
    let (a, b) = plane.vars();
    let mut out = Vec::new();
    for e in 0..=d {
        for i in 0..=e {
            out.push(Monomial::var_pow(a, i).mul(&Monomial::var_pow(b, e - i)));
        }
    }
    out.sort();
    out
}

fn powers(z: &GaussRational, d: u32) -> Vec<GaussRational> {
    let mut out = Vec::with_capacity(d as usize + 1);
    out.push(GaussRational::one());
    for k in 1..=d as usize {
        let next = &out[k - 1] * z;
        out.push(next);
    }
    out
}

/// Nonzero polynomial of degree `<= d` through all of `points`, with minimal
/// total degree, then least leading monomial, then monic. `None` when the
/// evaluation matrix has full column rank.
pub fn fit_exact<'a, I>(points: I, d: u32, plane: BasePair) -> Option<Polynomial>
where
    I: IntoIterator<Item = &'a Point>,
{
    let cols = columns(d, plane);
    let (a, b) = plane.vars();
    let n = cols.len();
    let mut rows: Vec<Vec<GaussRational>> = points
        .into_iter()
        .map(|p| {
            let pu = powers(&p.u, d);
            let pv = powers(&p.v, d);
            cols.iter()
                .map(|m| &pu[m.exponent(a) as usize] * &pv[m.exponent(b) as usize])
                .collect()
        })
        .collect();

    // Row reduce column by column; the first column that gets no pivot is the
    // least monomial that is a combination of smaller ones on the points.
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut next_row = 0;
    for col in 0..n {
        let found = (next_row..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(r) = found else {
            if col == 0 {
                // No points at all; a constant is not a curve.
                continue;
            }
            let mut coeffs = vec![GaussRational::zero(); n];
            coeffs[col] = GaussRational::one();
            for &(pr, pc) in &pivots {
                coeffs[pc] = -rows[pr][col].clone();
            }
            let terms = cols.iter().cloned().zip(coeffs).filter(|(_, c)| !c.is_zero());
            return Some(Polynomial::from_terms(terms).monic());
        };
        rows.swap(next_row, r);
        let inv = rows[next_row][col].inv().expect("pivot is nonzero");
        for c in col..n {
            rows[next_row][c] = &rows[next_row][c] * &inv;
        }
        for other in 0..rows.len() {
            if other == next_row || rows[other][col].is_zero() {
                continue;
            }
            let factor = rows[other][col].clone();
            for c in col..n {
                let delta = &factor * &rows[next_row][c];
                rows[other][c] -= &delta;
            }
        }
        pivots.push((next_row, col));
        next_row += 1;
    }
    None
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Visits every way of dropping `k` of `n` indices, in lexicographic order of
/// the dropped set, until `visit` returns `false`.
fn for_each_drop(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut dropped: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&dropped) {
            return;
        }
        let Some(pos) = (0..k).rev().find(|&pos| dropped[pos] < n - k + pos) else {
            return;
        };
        dropped[pos] += 1;
        for j in pos + 1..k {
            dropped[j] = dropped[j - 1] + 1;
        }
    }
}

fn kept(n: usize, dropped: &[usize]) -> Vec<usize> {
    (0..n).filter(|i| !dropped.contains(i)).collect()
}

/// Curve of degree `<= d` through `points`, falling back to subsets of size
/// `|I| - (d-1)^2` when no curve passes through all of them.
pub fn fit_vanishing_curve(points: &PointSet, d: u32, plane: BasePair) -> CurveFit {
    assert!(d >= 1, "fit degree must be at least 1");
    if let Some(c) = fit_exact(points, d, plane) {
        return CurveFit::Exact(c);
    }
    let k = ((d - 1) * (d - 1)) as usize;
    let n = points.len();
    if k == 0 || k > n {
        return CurveFit::NotFound;
    }
    let combinations = binomial(n, k);
    if combinations > SUBSET_LIMIT {
        return CurveFit::NotAttempted { combinations };
    }
    let mut result = CurveFit::NotFound;
    for_each_drop(n, k, |dropped| {
        let subset = kept(n, dropped);
        match fit_exact(subset.iter().map(|&i| points.get(i)), d, plane) {
            Some(curve) => {
                result = CurveFit::Subset { curve, subset };
                false
            }
            None => true,
        }
    });
    result
}

/// Distinct curves found through subsets of size `|I| - (d-1)^2`, in
/// enumeration order, at most `limit` of them.
pub fn subset_curves(points: &PointSet, d: u32, plane: BasePair, limit: usize) -> Vec<Polynomial> {
    let k = ((d.max(1) - 1) * (d.max(1) - 1)) as usize;
    let n = points.len();
    let mut out: Vec<Polynomial> = Vec::new();
    if k > n || binomial(n, k) > SUBSET_LIMIT {
        return out;
    }
    for_each_drop(n, k, |dropped| {
        let subset = kept(n, dropped);
        if let Some(c) = fit_exact(subset.iter().map(|&i| points.get(i)), d, plane) {
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out.len() < limit
    });
    out
}
