//! Exhaustive search for complete bipartite subgraphs `K_{s,t}`.

use super::incidence::{BitSet, IncidenceGraph};
use super::GeometryError;
use crate::nullstellensatz::binomial;

/// Default cap on the number of subsets visited.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// `s` vertices of `P` and `t` vertices of `Q`, all pairwise adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KstWitness {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Depth-first search over `size`-subsets of `cands` (rows of one side),
/// intersecting their neighbourhoods and pruning once fewer than `need`
/// common neighbours remain.
fn search(rows: &[&BitSet], cands: &[usize], size: usize, need: usize, full: BitSet) -> Option<(Vec<usize>, Vec<usize>)> {
    fn go(
        rows: &[&BitSet],
        cands: &[usize],
        start: usize,
        size: usize,
        need: usize,
        chosen: &mut Vec<usize>,
        common: &BitSet,
    ) -> Option<Vec<usize>> {
        if chosen.len() == size {
            return Some(common.iter().take(need).collect());
        }
        let remaining = size - chosen.len();
        for k in start..cands.len() {
            if cands.len() - k < remaining {
                break;
            }
            let v = cands[k];
            let mut next = common.clone();
            next.intersect_with(rows[v]);
            if next.count() < need {
                continue;
            }
            chosen.push(v);
            if let Some(found) = go(rows, cands, k + 1, size, need, chosen, &next) {
                return Some(found);
            }
            chosen.pop();
        }
        None
    }
    let mut chosen = Vec::with_capacity(size);
    go(rows, cands, 0, size, need, &mut chosen, &full).map(|other| (chosen, other))
}

/// Looks for `K_{s,t}` with `s` vertices in `P` and `t` in `Q`. The search
/// enumerates subsets on whichever side has fewer candidate subsets.
pub fn kst_free_check(graph: &IncidenceGraph, s: usize, t: usize, budget: u128) -> Result<Option<KstWitness>, GeometryError> {
    if s == 0 || t == 0 {
        return Err(GeometryError::InvalidParameter(format!("K_{{s,t}} needs s, t >= 1, got ({s}, {t})")));
    }
    let left: Vec<usize> = (0..graph.p_len()).filter(|&p| graph.degree_p(p) >= t).collect();
    let right: Vec<usize> = (0..graph.q_len()).filter(|&q| graph.degree_q(q) >= s).collect();
    if left.len() < s || right.len() < t {
        return Ok(None);
    }
    let via_left = binomial(left.len(), s);
    let via_right = binomial(right.len(), t);
    let estimate = via_left.min(via_right);
    if estimate > budget {
        return Err(GeometryError::ComplexityGuard { estimate, budget });
    }
    if via_left <= via_right {
        let rows: Vec<&BitSet> = (0..graph.p_len()).map(|p| graph.row(p)).collect();
        Ok(search(&rows, &left, s, t, BitSet::full(graph.q_len())).map(|(l, r)| KstWitness { left: l, right: r }))
    } else {
        let cols: Vec<&BitSet> = (0..graph.q_len()).map(|q| graph.col(q)).collect();
        Ok(search(&cols, &right, t, s, BitSet::full(graph.p_len())).map(|(r, l)| KstWitness { left: l, right: r }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_complete(g: &IncidenceGraph, w: &KstWitness) -> bool {
        w.left.iter().all(|&p| w.right.iter().all(|&q| g.has_edge(p, q)))
    }

    #[test]
    fn single_edge() {
        let g = IncidenceGraph::from_rows(2, 2, &[vec![1], vec![]]);
        let w = kst_free_check(&g, 1, 1, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(w, KstWitness { left: vec![0], right: vec![1] });
        assert!(kst_free_check(&g, 1, 2, DEFAULT_BUDGET).unwrap().is_none());
        assert!(kst_free_check(&g, 0, 2, DEFAULT_BUDGET).is_err());
    }

    #[test]
    fn asymmetric_shapes() {
        // p0, p1 share q0..q2; q3 only on p2.
        let g = IncidenceGraph::from_rows(3, 4, &[vec![0, 1, 2], vec![0, 1, 2, 3], vec![3]]);
        let w = kst_free_check(&g, 2, 3, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(w.left, vec![0, 1]);
        assert_eq!(w.right, vec![0, 1, 2]);
        assert!(is_complete(&g, &w));
        assert!(kst_free_check(&g, 3, 1, DEFAULT_BUDGET).unwrap().is_none());
        let w = kst_free_check(&g, 1, 4, DEFAULT_BUDGET).unwrap().unwrap();
        assert_eq!(w.left, vec![1]);
        let w = kst_free_check(&g, 2, 1, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(is_complete(&g, &w));
    }

    #[test]
    fn budget_guard() {
        let rows: Vec<Vec<usize>> = (0..40).map(|_| (0..40).collect()).collect();
        let g = IncidenceGraph::from_rows(40, 40, &rows);
        assert!(matches!(
            kst_free_check(&g, 20, 20, 1000),
            Err(GeometryError::ComplexityGuard { budget: 1000, .. })
        ));
        assert!(kst_free_check(&g, 3, 3, 10_000).unwrap().is_some());
    }
}
