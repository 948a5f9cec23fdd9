//! Recovering `(G, K)` from a finite grid `I x J` inside `Z(F)`.

use num_traits::Zero;

use crate::algebra::{BasePair, GaussRational, Polynomial, Var};
use crate::geometry::PointSet;

use super::fit::{fit_vanishing_curve, subset_curves, CurveFit};
use super::{cartesian_test, vanishes_at, CartesianWitness, NullstellensatzError};

/// Candidate curves per side tried by the subset fallback.
const CANDIDATES_PER_SIDE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridOutcome {
    Recovered {
        witness: CartesianWitness,
        /// `(|I ∩ Z(G)|, |J ∩ Z(K)|)`
        coverage: (usize, usize),
        /// Whether the curves came from the subset fallback.
        via_subset: bool,
    },
    /// No candidate pair passed the Cartesian test.
    Inconclusive { pairs_tried: usize, note: String },
}

fn coverage(curve: &Polynomial, points: &PointSet, plane: BasePair) -> usize {
    points.iter().filter(|p| vanishes_at(curve, p, plane)).count()
}

fn try_pair(f: &Polynomial, g: &Polynomial, k: &Polynomial) -> Result<Option<CartesianWitness>, NullstellensatzError> {
    let out = cartesian_test(f, g, k)?;
    Ok(out.decomposition.witness().cloned())
}

/// Fits `G` through `I` and `K` through `J` with degree `<= deg F` and runs
/// the Cartesian test; on failure, retries with curves through subsets of
/// size `|I| - (d-1)^2` and `|J| - (d-1)^2`.
pub fn grid_witness_to_cartesian(
    f: &Polynomial,
    i_set: &PointSet,
    j_set: &PointSet,
) -> Result<GridOutcome, NullstellensatzError> {
    let d = f.total_degree().ok_or(NullstellensatzError::ZeroPolynomial)?;
    let bound = (d * d) as usize;
    if i_set.len() <= bound || j_set.len() <= bound {
        return Err(NullstellensatzError::GridTooSmall { bound, i_len: i_set.len(), j_len: j_set.len() });
    }
    for (pi, p) in i_set.iter().enumerate() {
        let slice = f.substitute(&[(Var::X, p.u.clone()), (Var::Y, p.v.clone())]);
        for (qi, q) in j_set.iter().enumerate() {
            let value: GaussRational = slice
                .substitute(&[(Var::S, q.u.clone()), (Var::T, q.v.clone())])
                .constant_term();
            if !value.is_zero() {
                return Err(NullstellensatzError::GridNotContained { p: pi, q: qi });
            }
        }
    }
    // d >= 1 here: a nonzero constant cannot vanish on a nonempty grid.
    let g_fit = fit_vanishing_curve(i_set, d, BasePair::XY);
    let k_fit = fit_vanishing_curve(j_set, d, BasePair::ST);
    if let (Some(g), Some(k)) = (g_fit.curve(), k_fit.curve()) {
        if let Some(witness) = try_pair(f, g, k)? {
            let via_subset = !matches!(g_fit, CurveFit::Exact(_)) || !matches!(k_fit, CurveFit::Exact(_));
            return Ok(recovered(witness, i_set, j_set, via_subset));
        }
    }

    let mut g_cands: Vec<Polynomial> = g_fit.curve().cloned().into_iter().collect();
    for c in subset_curves(i_set, d, BasePair::XY, CANDIDATES_PER_SIDE) {
        if !g_cands.contains(&c) {
            g_cands.push(c);
        }
    }
    let mut k_cands: Vec<Polynomial> = k_fit.curve().cloned().into_iter().collect();
    for c in subset_curves(j_set, d, BasePair::ST, CANDIDATES_PER_SIDE) {
        if !k_cands.contains(&c) {
            k_cands.push(c);
        }
    }
    let mut tried = 0usize;
    for g in &g_cands {
        for k in &k_cands {
            tried += 1;
            if let Some(witness) = try_pair(f, g, k)? {
                return Ok(recovered(witness, i_set, j_set, true));
            }
        }
    }
    Ok(GridOutcome::Inconclusive {
        pairs_tried: tried,
        note: format!(
            "{} x {} candidate curve pairs failed the Cartesian test",
            g_cands.len(),
            k_cands.len()
        ),
    })
}

fn recovered(witness: CartesianWitness, i_set: &PointSet, j_set: &PointSet, via_subset: bool) -> GridOutcome {
    let coverage = (
        coverage(&witness.g, i_set, BasePair::XY),
        coverage(&witness.k, j_set, BasePair::ST),
    );
    GridOutcome::Recovered { witness, coverage, via_subset }
}
