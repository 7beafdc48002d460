//! Strongly connected components with Kosaraju's two-pass algorithm.

/// Component assignment of a directed graph.
///
/// Component ids follow a topological order of the condensation: an edge
/// between different components always goes from a smaller id to a larger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SccPartition {
    component: Vec<usize>,
    sizes: Vec<usize>,
    nontrivial: Vec<bool>,
}

impl SccPartition {
    /// Decomposes the graph given by successor lists.
    pub fn of_graph(adj: &[Vec<usize>]) -> Self {
        let n = adj.len();
        let finish = finish_order(adj);

        let mut radj = vec![Vec::new(); n];
        for (p, succs) in adj.iter().enumerate() {
            for &q in succs {
                radj[q].push(p);
            }
        }

        let mut component = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for &root in finish.iter().rev() {
            if component[root] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            let mut size = 0;
            component[root] = id;
            stack.push(root);
            while let Some(p) = stack.pop() {
                size += 1;
                for &q in &radj[p] {
                    if component[q] == usize::MAX {
                        component[q] = id;
                        stack.push(q);
                    }
                }
            }
            sizes.push(size);
        }

        let mut nontrivial: Vec<bool> = sizes.iter().map(|&s| s >= 2).collect();
        for (p, succs) in adj.iter().enumerate() {
            if succs.contains(&p) {
                nontrivial[component[p]] = true;
            }
        }
        SccPartition {
            component,
            sizes,
            nontrivial,
        }
    }

    pub fn component(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn num_components(&self) -> usize {
        self.sizes.len()
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    /// Size at least two, or a single vertex with a self-loop.
    pub fn is_nontrivial(&self, c: usize) -> bool {
        self.nontrivial[c]
    }

    pub fn members(&self, c: usize) -> impl Iterator<Item = usize> + '_ {
        self.component
            .iter()
            .enumerate()
            .filter(move |&(_, &k)| k == c)
            .map(|(v, _)| v)
    }
}

// Iterative DFS; vertices in order of completion.
fn finish_order(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        visited[root] = true;
        stack.push((root, 0));
        while let Some(top) = stack.last_mut() {
            let (v, next) = *top;
            if next < adj[v].len() {
                top.1 += 1;
                let w = adj[v][next];
                if !visited[w] {
                    visited[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cycle_is_one_component() {
        let p = SccPartition::of_graph(&[vec![1], vec![0]]);
        assert_eq!(p.num_components(), 1);
        assert_eq!(p.size(0), 2);
        assert!(p.is_nontrivial(0));
    }

    #[test]
    fn chain_is_split() {
        let p = SccPartition::of_graph(&[vec![1], vec![]]);
        assert_eq!(p.num_components(), 2);
        assert_ne!(p.component(0), p.component(1));
        assert!(p.component(0) < p.component(1));
        assert!(!p.is_nontrivial(p.component(0)));
    }

    #[test]
    fn self_loop_is_nontrivial() {
        let p = SccPartition::of_graph(&[vec![0, 1], vec![]]);
        assert!(p.is_nontrivial(p.component(0)));
        assert!(!p.is_nontrivial(p.component(1)));
    }
}
