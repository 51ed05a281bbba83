//! Isomorphism search for the small labeled graphs and posets this crate
//! produces, via iterated color refinement and backtracking. Desk-scale only.

use std::collections::BTreeMap;

use crate::order::GradedRelation;
use crate::wmcheck::FiniteGraph;

/// A graph with labeled directed arcs and vertex colors; undirected edges are
/// stored as arc pairs.
pub struct LabeledGraph {
    pub n: usize,
    pub adj: Vec<Vec<(usize, u64)>>,
    pub color: Vec<u64>,
}

impl LabeledGraph {
    pub fn from_finite(g: &FiniteGraph, anchors: &[usize]) -> Self {
        let n = g.order();
        let mut adj = vec![Vec::new(); n];
        for v in 0..n {
            for &w in g.neighbors(v) {
                adj[v].push((w, 0));
            }
        }
        let mut color = vec![0u64; n];
        for (i, &a) in anchors.iter().enumerate() {
            color[a] = i as u64 + 1;
        }
        LabeledGraph { n, adj, color }
    }

    /// Comparability digraph of a graded relation; arc labels encode direction
    /// and length.
    pub fn from_relation(r: &GradedRelation, anchors: &[usize]) -> Self {
        let n = r.len();
        let mut adj = vec![Vec::new(); n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    if let Some(len) = r.length_ids(a, b) {
                        adj[a].push((b, 2 * len));
                        adj[b].push((a, 2 * len + 1));
                    }
                }
            }
        }
        let mut color = vec![0u64; n];
        for (i, &a) in anchors.iter().enumerate() {
            color[a] = i as u64 + 1;
        }
        LabeledGraph { n, adj, color }
    }

    fn refine(a: &mut LabeledGraph, b: &mut LabeledGraph) {
        for _round in 0..a.n.max(2) {
            let mut dict: BTreeMap<(u64, Vec<(u64, u64)>), u64> = BTreeMap::new();
            let mut next = |sig: (u64, Vec<(u64, u64)>)| {
                let fresh = dict.len() as u64;
                *dict.entry(sig).or_insert(fresh)
            };
            let recolor = |g: &LabeledGraph, next: &mut dyn FnMut((u64, Vec<(u64, u64)>)) -> u64| {
                (0..g.n)
                    .map(|v| {
                        let mut sig: Vec<(u64, u64)> =
                            g.adj[v].iter().map(|&(w, l)| (l, g.color[w])).collect();
                        sig.sort_unstable();
                        next((g.color[v], sig))
                    })
                    .collect::<Vec<u64>>()
            };
            let ca = recolor(a, &mut next);
            let cb = recolor(b, &mut next);
            let stable = ca == a.color && cb == b.color;
            a.color = ca;
            b.color = cb;
            if stable {
                break;
            }
        }
    }
}

/// Searches for a color- and label-preserving isomorphism, returning the image
/// of each vertex of `a`.
pub fn isomorphism(mut a: LabeledGraph, mut b: LabeledGraph) -> Option<Vec<usize>> {
    if a.n != b.n {
        return None;
    }
    LabeledGraph::refine(&mut a, &mut b);
    let mut counts_a: BTreeMap<u64, usize> = BTreeMap::new();
    let mut counts_b: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &a.color {
        *counts_a.entry(c).or_default() += 1;
    }
    for &c in &b.color {
        *counts_b.entry(c).or_default() += 1;
    }
    if counts_a != counts_b {
        return None;
    }

    // match rarest color classes first
    let mut order: Vec<usize> = (0..a.n).collect();
    order.sort_by_key(|&v| (counts_a[&a.color[v]], a.color[v], v));

    // arc lookup for b
    let mut b_arcs: Vec<BTreeMap<usize, Vec<u64>>> = vec![BTreeMap::new(); b.n];
    for v in 0..b.n {
        for &(w, l) in &b.adj[v] {
            b_arcs[v].entry(w).or_default().push(l);
        }
        for labels in b_arcs[v].values_mut() {
            labels.sort_unstable();
        }
    }
    let mut a_arcs: Vec<BTreeMap<usize, Vec<u64>>> = vec![BTreeMap::new(); a.n];
    for v in 0..a.n {
        for &(w, l) in &a.adj[v] {
            a_arcs[v].entry(w).or_default().push(l);
        }
        for labels in a_arcs[v].values_mut() {
            labels.sort_unstable();
        }
    }

    let mut map = vec![usize::MAX; a.n];
    let mut used = vec![false; b.n];
    fn backtrack(
        pos: usize,
        order: &[usize],
        a: &LabeledGraph,
        b: &LabeledGraph,
        a_arcs: &[BTreeMap<usize, Vec<u64>>],
        b_arcs: &[BTreeMap<usize, Vec<u64>>],
        map: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if pos == order.len() {
            return true;
        }
        let v = order[pos];
        'cands: for w in 0..b.n {
            if used[w] || b.color[w] != a.color[v] {
                continue;
            }
            // arcs between v and already-mapped vertices must match exactly
            for (&u, labels) in &a_arcs[v] {
                if map[u] != usize::MAX && b_arcs[w].get(&map[u]) != Some(labels) {
                    continue 'cands;
                }
            }
            for &u in &order[..pos] {
                if a_arcs[v].get(&u).is_none() && b_arcs[w].get(&map[u]).is_some() {
                    continue 'cands;
                }
            }
            map[v] = w;
            used[w] = true;
            if backtrack(pos + 1, order, a, b, a_arcs, b_arcs, map, used) {
                return true;
            }
            map[v] = usize::MAX;
            used[w] = false;
        }
        false
    }

    if backtrack(0, &order, &a, &b, &a_arcs, &b_arcs, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

/// Unlabeled graph isomorphism with optional anchored vertices (each anchor
/// pair must map to each other).
pub fn graphs_isomorphic(
    g: &FiniteGraph,
    h: &FiniteGraph,
    anchors: &[(usize, usize)],
) -> Option<Vec<usize>> {
    let a = LabeledGraph::from_finite(g, &anchors.iter().map(|p| p.0).collect::<Vec<_>>());
    let b = LabeledGraph::from_finite(h, &anchors.iter().map(|p| p.1).collect::<Vec<_>>());
    isomorphism(a, b)
}

/// Order- and grade-preserving poset isomorphism.
pub fn posets_isomorphic(r: &GradedRelation, s: &GradedRelation) -> Option<Vec<usize>> {
    let a = LabeledGraph::from_relation(r, &[]);
    let b = LabeledGraph::from_relation(s, &[]);
    isomorphism(a, b)
}

/// Verifies an explicit vertex map as a graph isomorphism.
pub fn verify_graph_iso(g: &FiniteGraph, h: &FiniteGraph, map: &[usize]) -> bool {
    if g.order() != h.order() || map.len() != g.order() {
        return false;
    }
    let mut seen = vec![false; h.order()];
    for &w in map {
        if w >= h.order() || seen[w] {
            return false;
        }
        seen[w] = true;
    }
    for u in 0..g.order() {
        for v in u + 1..g.order() {
            if g.adjacent(u, v) != h.adjacent(map[u], map[v]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize, prefix: &str) -> FiniteGraph {
        let names = (0..n).map(|i| format!("{prefix}{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        FiniteGraph::from_edges(names, &edges, None).unwrap()
    }

    #[test]
    fn paths_isomorphic() {
        let p = path(5, "p");
        let q = path(5, "q");
        let map = graphs_isomorphic(&p, &q, &[]).unwrap();
        assert!(verify_graph_iso(&p, &q, &map));
    }

    #[test]
    fn path_not_isomorphic_to_cycle() {
        let p = path(5, "p");
        let names = (0..5).map(|i| i.to_string()).collect();
        let edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        let c = FiniteGraph::from_edges(names, &edges, None).unwrap();
        assert!(graphs_isomorphic(&p, &c, &[]).is_none());
    }

    #[test]
    fn anchors_respected() {
        let p = path(3, "p");
        let q = path(3, "q");
        // ends can map to each other, middle cannot map to an end
        assert!(graphs_isomorphic(&p, &q, &[(0, 2)]).is_some());
        assert!(graphs_isomorphic(&p, &q, &[(1, 0)]).is_none());
    }
}
