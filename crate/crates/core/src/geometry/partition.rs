//! Splitting `P` and `Q` so that every piece pair avoids `K_{2,τ}` and `K_{τ,2}`
//! for `τ = 2dM`.

use crate::algebra::Polynomial;

use super::incidence::{incidence_graph, BitSet};
use super::kst::{kst_free_check, DEFAULT_BUDGET};
use super::points::PointSet;
use super::GeometryError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RichPartition {
    /// `2dM`
    pub tau: usize,
    pub p_parts: Vec<Vec<usize>>,
    pub q_parts: Vec<Vec<usize>>,
    /// `q` whose curve holds fewer than `τ` points of `P`.
    pub poor: Vec<usize>,
    /// `M > d^2`, the regime in which the colour bound is guaranteed.
    pub m_above_d_squared: bool,
    /// Both colourings used at most `dM + 1` colours.
    pub within_colour_bound: bool,
    /// Every `(P_i, Q_j)` passed the `K_{2,τ}` and `K_{τ,2}` checks.
    pub verified: bool,
}

/// Greedy colouring in index order; vertices `a`, `b` are adjacent when
/// their neighbourhoods share at least `tau` elements.
fn colour(sets: &[&BitSet], vertices: &[usize], tau: usize) -> Vec<Vec<usize>> {
    let mut colour_of: Vec<usize> = Vec::with_capacity(vertices.len());
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for (k, &v) in vertices.iter().enumerate() {
        let mut used = vec![false; parts.len() + 1];
        for (j, &w) in vertices[..k].iter().enumerate() {
            if sets[v].intersection_count(sets[w]) >= tau {
                used[colour_of[j]] = true;
            }
        }
        let c = used.iter().position(|u| !u).expect("one colour is always free");
        if c == parts.len() {
            parts.push(Vec::new());
        }
        parts[c].push(v);
        colour_of.push(c);
    }
    parts
}

pub fn partition_rich(f: &Polynomial, p_set: &PointSet, q_set: &PointSet, m: usize) -> Result<RichPartition, GeometryError> {
    let d = f.total_degree().ok_or(GeometryError::ZeroPolynomial)? as usize;
    if m == 0 {
        return Err(GeometryError::InvalidParameter("M must be positive".into()));
    }
    let tau = (2 * d * m).max(1);
    let graph = incidence_graph(f, p_set, q_set, true)?;
    let rows: Vec<&BitSet> = (0..graph.p_len()).map(|p| graph.row(p)).collect();
    let cols: Vec<&BitSet> = (0..graph.q_len()).map(|q| graph.col(q)).collect();

    let all_p: Vec<usize> = (0..graph.p_len()).collect();
    let p_parts = colour(&rows, &all_p, tau);
    let (poor, rich): (Vec<usize>, Vec<usize>) = (0..graph.q_len()).partition(|&q| graph.degree_q(q) < tau);
    let q_parts = colour(&cols, &rich, tau);

    let mut verified = true;
    for pi in &p_parts {
        for qj in &q_parts {
            let sub = graph.subgraph(pi, qj);
            if kst_free_check(&sub, 2, tau, DEFAULT_BUDGET)?.is_some() || kst_free_check(&sub, tau, 2, DEFAULT_BUDGET)?.is_some() {
                verified = false;
            }
        }
    }
    let bound = d * m + 1;
    Ok(RichPartition {
        tau,
        within_colour_bound: p_parts.len() <= bound && q_parts.len() <= bound,
        m_above_d_squared: m > d * d,
        p_parts,
        q_parts,
        poor,
        verified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::vars;

    #[test]
    fn elekes_single_part() {
        let (x, y, s, t) = vars();
        let f = &(&(&x * &s) - &y) + &t;
        let pts: Vec<(i64, i64)> = (1..=2).flat_map(|i| (1..=4).map(move |j| (i, j))).collect();
        let p = PointSet::from_integers("P", &pts).unwrap();
        let r = partition_rich(&f, &p, &p, 5).unwrap();
        assert_eq!(r.tau, 20);
        assert_eq!(r.p_parts, vec![(0..8).collect::<Vec<_>>()]);
        assert_eq!(r.poor.len(), 8);
        assert!(r.q_parts.is_empty());
        assert!(r.verified && r.m_above_d_squared);
    }

    #[test]
    fn cartesian_grid_splits() {
        let (x, y, s, t) = vars();
        let f = &(&x * &s) + &(&y * &t);
        let p = PointSet::from_integers("P", &(1..=6).map(|k| (0, k)).collect::<Vec<_>>()).unwrap();
        let q = PointSet::from_integers("Q", &(1..=6).map(|k| (k, 0)).collect::<Vec<_>>()).unwrap();
        let r = partition_rich(&f, &p, &q, 1).unwrap();
        assert_eq!(r.tau, 4);
        assert_eq!(r.p_parts.len(), 6);
        assert_eq!(r.q_parts.len(), 6);
        assert!(r.poor.is_empty());
        assert!(r.verified);
        assert!(!r.within_colour_bound);
    }
}
