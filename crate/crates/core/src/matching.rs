//! Maximum-cardinality bipartite matching (Hopcroft–Karp).

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

const NONE: usize = usize::MAX;

/// Bipartite graph with `left` and `right` vertex sets and adjacency lists on the left.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    right: usize,
    adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize) -> Self {
        BipartiteGraph { right, adj: vec![Vec::new(); left] }
    }

    pub fn add_edge(&mut self, l: usize, r: usize) {
        debug_assert!(r < self.right);
        self.adj[l].push(r);
    }

    /// Size of a maximum matching.
    pub fn max_matching(&self) -> usize {
        let left = self.adj.len();
        let mut match_l = vec![NONE; left];
        let mut match_r = vec![NONE; self.right];
        let mut dist = vec![0usize; left];
        let mut size = 0;
        while self.bfs(&match_l, &match_r, &mut dist) {
            let mut next = vec![0usize; left];
            for l in 0..left {
                if match_l[l] == NONE && self.dfs(l, &mut match_l, &mut match_r, &mut dist, &mut next) {
                    size += 1;
                }
            }
        }
        size
    }

    fn bfs(&self, match_l: &[usize], match_r: &[usize], dist: &mut [usize]) -> bool {
        let mut queue = VecDeque::new();
        for (l, d) in dist.iter_mut().enumerate() {
            if match_l[l] == NONE {
                *d = 0;
                queue.push_back(l);
            } else {
                *d = NONE;
            }
        }
        let mut found = false;
        while let Some(l) = queue.pop_front() {
            for &r in &self.adj[l] {
                let m = match_r[r];
                if m == NONE {
                    found = true;
                } else if dist[m] == NONE {
                    dist[m] = dist[l] + 1;
                    queue.push_back(m);
                }
            }
        }
        found
    }

    // Iterative DFS along the BFS layering; `next` is the per-vertex edge cursor.
    fn dfs(
        &self,
        root: usize,
        match_l: &mut [usize],
        match_r: &mut [usize],
        dist: &mut [usize],
        next: &mut [usize],
    ) -> bool {
        let mut stack = vec![root];
        while let Some(&l) = stack.last() {
            if next[l] == self.adj[l].len() {
                dist[l] = NONE;
                stack.pop();
                continue;
            }
            let r = self.adj[l][next[l]];
            let m = match_r[r];
            if m == NONE {
                // Augment along the stack.
                for &sl in stack.iter().rev() {
                    let r = self.adj[sl][next[sl]];
                    match_l[sl] = r;
                    match_r[r] = sl;
                }
                return true;
            }
            if dist[m] == dist[l] + 1 {
                stack.push(m);
            } else {
                next[l] += 1;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_and_deficient() {
        let mut g = BipartiteGraph::new(3, 3);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        g.add_edge(2, 2);
        assert_eq!(g.max_matching(), 3);

        let mut g = BipartiteGraph::new(3, 3);
        g.add_edge(0, 0);
        g.add_edge(1, 0);
        g.add_edge(2, 0);
        assert_eq!(g.max_matching(), 1);
    }

    #[test]
    fn needs_augmenting_path() {
        // Greedy 0-0 must be rerouted.
        let mut g = BipartiteGraph::new(2, 2);
        g.add_edge(0, 0);
        g.add_edge(0, 1);
        g.add_edge(1, 0);
        assert_eq!(g.max_matching(), 2);
    }

    #[test]
    fn agrees_with_subset_enumeration() {
        let mut state = 7u64;
        for _ in 0..300 {
            let n = 5;
            let mut g = BipartiteGraph::new(n, n);
            let mut adj = [0u8; 5];
            for (l, row) in adj.iter_mut().enumerate() {
                for r in 0..n {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    if state >> 62 == 0 {
                        g.add_edge(l, r);
                        *row |= 1 << r;
                    }
                }
            }
            // Largest matching by exhaustive search over column choices.
            fn best(l: usize, used: u8, adj: &[u8; 5]) -> usize {
                if l == 5 {
                    return 0;
                }
                let mut b = best(l + 1, used, adj);
                for r in 0..5 {
                    if adj[l] >> r & 1 == 1 && used >> r & 1 == 0 {
                        b = b.max(1 + best(l + 1, used | 1 << r, adj));
                    }
                }
                b
            }
            assert_eq!(g.max_matching(), best(0, 0, &adj));
        }
    }
}
