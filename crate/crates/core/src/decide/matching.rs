//! Maximum bipartite matching by augmenting paths.

/// Bipartite graph with `left` and `right` node counts; `adj[u]` lists the
/// right neighbours of left node `u` in ascending order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        Self {
            left,
            right,
            adj: vec![Vec::new(); left],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.left && v < self.right);
        self.adj[u].push(v);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(&v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// Partner of each left node.
    pub pairs: Vec<Option<usize>>,
}

impl Matching {
    pub fn size(&self) -> usize {
        self.pairs.iter().flatten().count()
    }

    /// Every left node is matched, i.e. a system of distinct representatives.
    pub fn saturates_left(&self) -> bool {
        self.pairs.iter().all(Option::is_some)
    }
}

/// Maximum-cardinality matching. Left nodes are processed in index order
/// and neighbours tried in adjacency order, so the result is deterministic.
pub fn max_matching(g: &BipartiteGraph) -> Matching {
    fn augment(
        g: &BipartiteGraph,
        u: usize,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &v in &g.adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(g, w, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }

    let mut owner = vec![None; g.right];
    for u in 0..g.left {
        let mut seen = vec![false; g.right];
        augment(g, u, &mut seen, &mut owner);
    }
    let mut pairs = vec![None; g.left];
    for (v, u) in owner.iter().enumerate() {
        if let Some(u) = u {
            pairs[*u] = Some(v);
        }
    }
    Matching { pairs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn complete_two_by_two() {
        let mut g = BipartiteGraph::new(2, 2);
        for u in 0..2 {
            for v in 0..2 {
                g.add_edge(u, v);
            }
        }
        let m = max_matching(&g);
        assert_eq!(m.size(), 2);
        assert!(m.saturates_left());
    }

    #[test]
    fn shared_right_node() {
        let mut g = BipartiteGraph::new(2, 2);
        g.add_edge(0, 1);
        g.add_edge(1, 1);
        let m = max_matching(&g);
        assert_eq!(m.size(), 1);
        assert!(!m.saturates_left());
    }

    #[test]
    fn empty_graph() {
        let m = max_matching(&BipartiteGraph::new(0, 0));
        assert_eq!(m.size(), 0);
        assert!(m.saturates_left());
        let m = max_matching(&BipartiteGraph::new(3, 2));
        assert_eq!(m.size(), 0);
    }

    #[test]
    fn needs_augmenting_path() {
        // Greedy would match 0-0 and strand 1.
        let mut g = BipartiteGraph::new(2, 2);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        let m = max_matching(&g);
        assert_eq!(m.pairs, vec![Some(1), Some(0)]);
    }

    fn brute_max(g: &BipartiteGraph) -> usize {
        fn go(g: &BipartiteGraph, u: usize, used: &mut Vec<bool>) -> usize {
            if u == g.left {
                return 0;
            }
            let mut best = go(g, u + 1, used);
            for &v in &g.adj[u] {
                if !used[v] {
                    used[v] = true;
                    best = best.max(1 + go(g, u + 1, used));
                    used[v] = false;
                }
            }
            best
        }
        go(g, 0, &mut vec![false; g.right])
    }

    proptest! {
        #[test]
        fn matches_brute_force(left in 0usize..6, right in 0usize..6, bits in any::<u64>()) {
            let mut g = BipartiteGraph::new(left, right);
            for u in 0..left {
                for v in 0..right {
                    if bits >> (u * 6 + v) & 1 == 1 {
                        g.add_edge(u, v);
                    }
                }
            }
            let m = max_matching(&g);
            prop_assert_eq!(m.size(), brute_max(&g));
            let mut used = vec![false; right];
            for (u, v) in m.pairs.iter().enumerate() {
                if let Some(v) = *v {
                    prop_assert!(g.has_edge(u, v));
                    prop_assert!(!used[v]);
                    used[v] = true;
                }
            }
        }
    }
}
