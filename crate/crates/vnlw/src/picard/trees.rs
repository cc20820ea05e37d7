use std::fmt;

use super::grid::TimeGrid;
use super::integrator::duhamel_on_grid;
use crate::spectral_core::{apply_linear_flow, FieldPair, ProductEngine, SpectralField};
use crate::{Error, Result};

/// Largest tree list `enumerate_trees` will build.
pub const MAX_TREES: u128 = 1_000_000;

/// Ordered k-ary tree: every node is terminal or has exactly k ordered children.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf,
    Node(Vec<Tree>),
}

impl Tree {
    /// Number of non-terminal nodes j.
    pub fn internal(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(c) => 1 + c.iter().map(Tree::internal).sum::<usize>(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(c) => 1 + c.iter().map(Tree::node_count).sum::<usize>(),
        }
    }

    /// True when every non-terminal node has exactly k children.
    pub fn is_k_ary(&self, k: usize) -> bool {
        match self {
            Tree::Leaf => true,
            Tree::Node(c) => c.len() == k && c.iter().all(|t| t.is_k_ary(k)),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => write!(f, "."),
            Tree::Node(c) => {
                write!(f, "(")?;
                for t in c {
                    write!(f, "{t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// (1/(kj+1))·binom(kj+1, j), or None on overflow.
pub fn fuss_catalan(j: usize, k: usize) -> Option<u128> {
    let n = (k * j + 1) as u128;
    // binom(n, j) incrementally; each partial product is an integer
    let mut b: u128 = 1;
    for i in 0..j as u128 {
        b = b.checked_mul(n - i)? / (i + 1);
    }
    Some(b / n)
}

/// All ordered k-ary trees with j non-terminal nodes.
pub fn enumerate_trees(j: usize, k: usize) -> Result<Vec<Tree>> {
    if k < 2 {
        return Err(Error::Domain(format!("trees need k ≥ 2, got {k}")));
    }
    match fuss_catalan(j, k) {
        Some(c) if c <= MAX_TREES => {}
        _ => return Err(Error::Config(format!("T({j}) for k = {k} exceeds {MAX_TREES} trees"))),
    }
    let mut memo: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]];
    for size in 1..=j {
        let mut out = Vec::new();
        for parts in compositions(size - 1, k) {
            let mut acc: Vec<Vec<Tree>> = vec![Vec::new()];
            for &p in &parts {
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        memo[p].iter().map(move |t| {
                            let mut v = prefix.clone();
                            v.push(t.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(acc.into_iter().map(Tree::Node));
        }
        memo.push(out);
    }
    Ok(memo.swap_remove(j))
}

/// Ordered k-tuples of non-negative integers summing to `total`, lexicographic.
pub fn compositions(total: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=rest {
            cur.push(first);
            rec(rest - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k > 0 {
        rec(total, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Ψ(𝒯)(pair) at every node of `grid`: leaves are V(t)·pair, internal nodes
/// the Duhamel integral of the product of their children.
pub fn eval_tree_on_grid(tree: &Tree, pair: &FieldPair, grid: &TimeGrid) -> Result<Vec<SpectralField>> {
    match tree {
        Tree::Leaf => grid.times().iter().map(|&t| apply_linear_flow(t, pair)).collect(),
        Tree::Node(children) => {
            let values = children.iter().map(|c| eval_tree_on_grid(c, pair, grid)).collect::<Result<Vec<_>>>()?;
            let engine = ProductEngine::new(*pair.lattice(), children.len())?;
            let forcing = (0..grid.len())
                .map(|q| {
                    let refs: Vec<&SpectralField> = values.iter().map(|v| &v[q]).collect();
                    engine.product(&refs)
                })
                .collect::<Result<Vec<_>>>()?;
            duhamel_on_grid(grid, &forcing)
        }
    }
}

/// Ψ(𝒯)(pair)(t); `t` must be a grid node.
pub fn eval_tree(tree: &Tree, pair: &FieldPair, t: f64, grid: &TimeGrid) -> Result<SpectralField> {
    let q = grid.node_at(t).ok_or_else(|| Error::Domain(format!("time {t} is not a grid node")))?;
    Ok(eval_tree_on_grid(tree, pair, grid)?.swap_remove(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_trees(0, 3).unwrap(), vec![Tree::Leaf]);
        assert_eq!(enumerate_trees(2, 2).unwrap().len(), 2);
        assert_eq!(enumerate_trees(3, 2).unwrap().len(), 5);
        assert_eq!(enumerate_trees(2, 3).unwrap().len(), 3);
        let cat: Vec<u128> = (0..6).map(|j| fuss_catalan(j, 2).unwrap()).collect();
        assert_eq!(cat, [1, 1, 2, 5, 14, 42]);
    }

    #[test]
    fn trees_are_distinct_and_well_formed() {
        for k in 2..=4 {
            for j in 0..=4 {
                let trees = enumerate_trees(j, k).unwrap();
                let set: std::collections::HashSet<_> = trees.iter().collect();
                assert_eq!(set.len(), trees.len());
                for t in &trees {
                    assert!(t.is_k_ary(k));
                    assert_eq!(t.internal(), j);
                    assert_eq!(t.node_count(), k * j + 1);
                }
            }
        }
    }

    #[test]
    fn overflow_guard() {
        assert!(enumerate_trees(30, 5).is_err());
        assert!(fuss_catalan(200, 5).is_none());
    }

    #[test]
    fn composition_listing() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }
}
