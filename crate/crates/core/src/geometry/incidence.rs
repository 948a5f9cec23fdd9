//! Bipartite incidence graphs between `P` and the curves `C_q`.

use std::collections::HashMap;

use crate::algebra::{squarefree_part, Polynomial};

use super::count::count_pairs;
use super::points::PointSet;
use super::GeometryError;

/// Fixed-size bitset over `0..len`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
    len: usize,
}

impl BitSet {
    pub fn new(len: usize) -> BitSet {
        BitSet { words: vec![0; len.div_ceil(64)], len }
    }

    pub fn full(len: usize) -> BitSet {
        let mut b = BitSet::new(len);
        for i in 0..len {
            b.insert(i);
        }
        b
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.len && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn intersection_count(&self, other: &BitSet) -> usize {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceGraph {
    /// `rows[p]` = indices `q` with `p ∈ C_q`.
    rows: Vec<BitSet>,
    /// `cols[q]` = indices `p` on `C_q`.
    cols: Vec<BitSet>,
    /// Classes (size >= 2) of `q` giving the same curve; ascending.
    pub duplicate_classes: Vec<Vec<usize>>,
    /// `q` with `C_q` the whole plane.
    pub degenerate: Vec<usize>,
    /// `q` with `C_q` empty (a nonzero constant).
    pub empty_curves: Vec<usize>,
}

impl IncidenceGraph {
    /// Graph on `p_len x q_len` from the neighbour lists of the left vertices.
    pub fn from_rows(p_len: usize, q_len: usize, rows: &[Vec<usize>]) -> IncidenceGraph {
        assert_eq!(rows.len(), p_len);
        let mut r = vec![BitSet::new(q_len); p_len];
        let mut c = vec![BitSet::new(p_len); q_len];
        for (p, qs) in rows.iter().enumerate() {
            for &q in qs {
                r[p].insert(q);
                c[q].insert(p);
            }
        }
        IncidenceGraph {
            rows: r,
            cols: c,
            duplicate_classes: Vec::new(),
            degenerate: Vec::new(),
            empty_curves: Vec::new(),
        }
    }

    pub fn p_len(&self) -> usize {
        self.rows.len()
    }

    pub fn q_len(&self) -> usize {
        self.cols.len()
    }

    pub fn has_edge(&self, p: usize, q: usize) -> bool {
        self.rows[p].contains(q)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(BitSet::count).sum()
    }

    pub fn row(&self, p: usize) -> &BitSet {
        &self.rows[p]
    }

    pub fn col(&self, q: usize) -> &BitSet {
        &self.cols[q]
    }

    pub fn degree_p(&self, p: usize) -> usize {
        self.rows[p].count()
    }

    pub fn degree_q(&self, q: usize) -> usize {
        self.cols[q].count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(p, r)| r.iter().map(move |q| (p, q)))
            .collect()
    }

    /// The same incidences seen from `Q`: edge `(q, p)` for every edge `(p, q)`.
    pub fn transpose(&self) -> IncidenceGraph {
        IncidenceGraph {
            rows: self.cols.clone(),
            cols: self.rows.clone(),
            duplicate_classes: Vec::new(),
            degenerate: Vec::new(),
            empty_curves: Vec::new(),
        }
    }

    /// Induced subgraph on the given left and right vertices, reindexed in order.
    pub fn subgraph(&self, ps: &[usize], qs: &[usize]) -> IncidenceGraph {
        let rows: Vec<Vec<usize>> = ps
            .iter()
            .map(|&p| qs.iter().enumerate().filter(|(_, &q)| self.has_edge(p, q)).map(|(k, _)| k).collect())
            .collect();
        IncidenceGraph::from_rows(ps.len(), qs.len(), &rows)
    }
}

/// Incidence graph of `P` and the multiset `{C_q : q ∈ Q}`.
///
/// Two `q` share a duplicate class when their specializations have the same
/// monic squarefree part; degenerate and empty specializations are listed
/// separately.
pub fn incidence_graph(f: &Polynomial, p_set: &PointSet, q_set: &PointSet, parallel: bool) -> Result<IncidenceGraph, GeometryError> {
    let inc = count_pairs(std::slice::from_ref(f), p_set, q_set, parallel)?;
    let mut rows = vec![Vec::new(); p_set.len()];
    for (q, ps) in inc.per_q.iter().enumerate() {
        for &p in ps {
            rows[p as usize].push(q);
        }
    }
    let mut g = IncidenceGraph::from_rows(p_set.len(), q_set.len(), &rows);
    let mut classes: HashMap<Polynomial, Vec<usize>> = HashMap::new();
    let mut order: Vec<Polynomial> = Vec::new();
    for (q, spec) in inc.specializations.iter().enumerate() {
        let curve = &spec[0];
        if curve.is_zero() {
            g.degenerate.push(q);
        } else if curve.is_constant() {
            g.empty_curves.push(q);
        } else {
            let (sf, _) = squarefree_part(curve)?;
            let entry = classes.entry(sf.clone()).or_default();
            if entry.is_empty() {
                order.push(sf);
            }
            entry.push(q);
        }
    }
    g.duplicate_classes = order
        .iter()
        .filter_map(|k| classes.remove(k).filter(|c| c.len() > 1))
        .collect();
    Ok(g)
}
