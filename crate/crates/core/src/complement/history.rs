//! History trees for the Safra–Piterman determinization.
//!
//! A tree is stored as a list of nodes indexed by age: index 0 is the root
//! and a node's index is its rank among the living nodes ordered by creation
//! time. Parents are always older than their children, so parent indices are
//! smaller than child indices, and the children of a node appear in index
//! order from oldest to youngest.

use crate::automata::{Letter, Nba, State};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct Node {
    parent: Option<usize>,
    label: Vec<State>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct HistoryTree {
    nodes: Vec<Node>,
}

/// Outcome of one transition of the tree.
pub(crate) struct Step {
    pub tree: HistoryTree,
    pub priority: u32,
}

impl HistoryTree {
    pub fn initial(a: &Nba) -> Self {
        HistoryTree {
            nodes: vec![Node {
                parent: None,
                label: vec![a.start()],
            }],
        }
    }

    /// Priority used for a step in which no node dies or turns green. It
    /// is odd and exceeds every priority a step can emit, since a tree over
    /// `n` states never has more than `n` nodes.
    pub fn neutral_priority(a: &Nba) -> u32 {
        2 * a.num_states() as u32 + 1
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Label of the root: the subset of NBA states reachable so far.
    #[cfg(test)]
    pub fn root_label(&self) -> &[State] {
        self.nodes.first().map_or(&[], |n| &n.label)
    }

    pub fn step(&self, a: &Nba, letter: Letter) -> Step {
        let neutral = Self::neutral_priority(a);
        let old = self.nodes.len();
        if old == 0 {
            return Step {
                tree: self.clone(),
                priority: neutral,
            };
        }

        let mut nodes = self.nodes.clone();
        // sprout a youngest child holding the final states of every node
        for i in 0..old {
            let fin: Vec<State> = nodes[i]
                .label
                .iter()
                .copied()
                .filter(|&q| a.is_final(q))
                .collect();
            if !fin.is_empty() {
                nodes.push(Node {
                    parent: Some(i),
                    label: fin,
                });
            }
        }

        let mut mark = vec![false; a.num_states()];
        for node in &mut nodes {
            node.label = post(a, &node.label, letter, &mut mark);
        }

        let mut children = vec![Vec::new(); nodes.len()];
        for (i, node) in nodes.iter().enumerate() {
            if let Some(p) = node.parent {
                children[p].push(i);
            }
        }

        // a state stays only in the oldest branch that holds it
        let mut claimed = vec![false; a.num_states()];
        steal(0, &mut nodes, &children, &mut claimed);

        let mut alive: Vec<bool> = nodes.iter().map(|n| !n.label.is_empty()).collect();
        let mut green = vec![false; nodes.len()];
        for i in 0..nodes.len() {
            if !alive[i] {
                continue;
            }
            let covered: usize = children[i]
                .iter()
                .filter(|&&c| alive[c])
                .map(|&c| nodes[c].label.len())
                .sum();
            if covered == nodes[i].label.len() {
                green[i] = true;
                let mut stack = children[i].clone();
                while let Some(c) = stack.pop() {
                    alive[c] = false;
                    stack.extend_from_slice(&children[c]);
                }
            }
        }

        let mut priority = neutral;
        for i in 0..old {
            if !alive[i] {
                priority = priority.min(2 * i as u32 + 1);
            } else if green[i] {
                priority = priority.min(2 * i as u32 + 2);
            }
        }

        let mut new_index = vec![usize::MAX; nodes.len()];
        let mut kept = Vec::new();
        for (i, node) in nodes.into_iter().enumerate() {
            if alive[i] {
                new_index[i] = kept.len();
                kept.push(Node {
                    parent: node.parent.map(|p| new_index[p]),
                    label: node.label,
                });
            }
        }
        Step {
            tree: HistoryTree { nodes: kept },
            priority,
        }
    }

    /// Structural invariants: nonempty labels, pairwise disjoint sibling
    /// labels, and every label strictly larger than the union of its
    /// children's labels.
    #[cfg(test)]
    pub fn check_invariants(&self) -> Result<(), String> {
        for (i, node) in self.nodes.iter().enumerate() {
            if node.label.is_empty() {
                return Err(format!("node {i} has an empty label"));
            }
            if let Some(p) = node.parent {
                if p >= i {
                    return Err(format!("node {i} is older than its parent"));
                }
                if !node.label.iter().all(|q| self.nodes[p].label.contains(q)) {
                    return Err(format!("node {i} is not contained in its parent"));
                }
            } else if i != 0 {
                return Err(format!("node {i} has no parent"));
            }
            let kids: Vec<&Node> = self.nodes.iter().filter(|c| c.parent == Some(i)).collect();
            let mut union: Vec<State> = kids.iter().flat_map(|c| c.label.clone()).collect();
            let total = union.len();
            union.sort_unstable();
            union.dedup();
            if union.len() != total {
                return Err(format!("children of node {i} overlap"));
            }
            if total >= node.label.len() {
                return Err(format!("children of node {i} cover its label"));
            }
        }
        Ok(())
    }
}

fn post(a: &Nba, set: &[State], letter: Letter, mark: &mut [bool]) -> Vec<State> {
    let mut out = Vec::new();
    for &q in set {
        for &t in a.successors(q, letter) {
            if !mark[t] {
                mark[t] = true;
                out.push(t);
            }
        }
    }
    for &t in &out {
        mark[t] = false;
    }
    out.sort_unstable();
    out
}

fn steal(v: usize, nodes: &mut [Node], children: &[Vec<usize>], claimed: &mut [bool]) {
    nodes[v].label.retain(|&q| !claimed[q]);
    for &c in &children[v] {
        steal(c, nodes, children, claimed);
    }
    for &q in &nodes[v].label {
        claimed[q] = true;
    }
}
