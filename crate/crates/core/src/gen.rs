//! Deterministic generators for trees, forests, and canonical families.
//!
//! All randomness comes from ChaCha8 keyed directly by the caller's 64-bit
//! seed, so a (family, n, seed) triple reproduces the identical graph on any
//! platform. Random trees are decoded from uniform random Prüfer sequences,
//! which also gives an exact enumerator of all labeled trees for small n.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::Graph;
use crate::{Error, Result};

/// Largest n for which complete labeled-tree enumeration is allowed
/// (n^(n-2) grows past desk scale right after this).
pub const ENUMERATION_CAP: usize = 9;

/// Graph families the generator knows how to build.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Family {
    RandomTree,
    RandomForest,
    Path,
    Star,
    Caterpillar,
    CompleteEnumeration,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::RandomTree => "random-tree",
            Family::RandomForest => "random-forest",
            Family::Path => "path",
            Family::Star => "star",
            Family::Caterpillar => "caterpillar",
            Family::CompleteEnumeration => "complete-enumeration",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "random-tree" => Ok(Family::RandomTree),
            "random-forest" => Ok(Family::RandomForest),
            "path" => Ok(Family::Path),
            "star" => Ok(Family::Star),
            "caterpillar" => Ok(Family::Caterpillar),
            "complete-enumeration" => Ok(Family::CompleteEnumeration),
            other => Err(Error::InvalidInput(format!(
                "unknown family `{other}` (expected random-tree, random-forest, path, star, caterpillar, or complete-enumeration)"
            ))),
        }
    }
}

/// A fully pinned-down generation request; equal specs always produce
/// byte-identical edge lists.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct GenSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn build(&self) -> Result<Graph> {
        match self.family {
            Family::RandomTree => random_tree(self.n, self.seed),
            Family::RandomForest => random_forest(self.n, self.seed),
            Family::Path => path(self.n),
            Family::Star => star(self.n),
            Family::Caterpillar => caterpillar(self.n),
            Family::CompleteEnumeration => Err(Error::InvalidInput(
                "complete-enumeration produces a stream; use enumerate_trees".into(),
            )),
        }
    }
}

fn require_positive(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput(
            "vertex count must be at least 1".into(),
        ))
    } else {
        Ok(())
    }
}

/// A uniformly random labeled tree on `n` vertices.
pub fn random_tree(n: usize, seed: u64) -> Result<Graph> {
    require_positive(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = random_tree_edges(n, &mut rng);
    Graph::from_indexed_edges(n, &edges)
}

fn random_tree_edges(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    match n {
        1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            prufer_decode(n, &seq)
        }
    }
}

/// A random forest on `n` vertices: component sizes are carved off uniformly
/// from what remains, then each component is a uniform random tree.
pub fn random_forest(n: usize, seed: u64) -> Result<Graph> {
    require_positive(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    let mut offset = 0;
    while offset < n {
        let size = rng.gen_range(1..=n - offset);
        for (a, b) in random_tree_edges(size, &mut rng) {
            edges.push((offset + a, offset + b));
        }
        offset += size;
    }
    Graph::from_indexed_edges(n, &edges)
}

/// The path 0-1-...-(n-1).
pub fn path(n: usize) -> Result<Graph> {
    require_positive(n)?;
    let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    Graph::from_indexed_edges(n, &edges)
}

/// Vertex 0 joined to the n-1 others.
pub fn star(n: usize) -> Result<Graph> {
    require_positive(n)?;
    let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
    Graph::from_indexed_edges(n, &edges)
}

/// A caterpillar: a spine path on ceil(n/2) vertices 0..s-1, with leaf
/// s+j hanging off spine vertex j for each of the remaining n-s vertices.
/// For n = 6 that is a spine of three, one leaf each.
pub fn caterpillar(n: usize) -> Result<Graph> {
    require_positive(n)?;
    let spine = n.div_ceil(2);
    let mut edges: Vec<_> = (0..spine - 1).map(|i| (i, i + 1)).collect();
    for j in 0..n - spine {
        edges.push((j, spine + j));
    }
    Graph::from_indexed_edges(n, &edges)
}

/// Number of labeled trees on `n` vertices: n^(n-2), with the two trivial
/// cases counting one tree each. Capped at [`ENUMERATION_CAP`].
pub fn labeled_tree_count(n: usize) -> Result<u64> {
    require_positive(n)?;
    if n > ENUMERATION_CAP {
        return Err(Error::InvalidInput(format!(
            "complete enumeration is capped at n = {ENUMERATION_CAP} (requested {n})"
        )));
    }
    Ok(match n {
        1 | 2 => 1,
        _ => (n as u64).pow(n as u32 - 2),
    })
}

/// The `index`-th labeled tree on `n` vertices, indexing the Prüfer
/// sequences in base-n counter order. Every labeled tree appears exactly
/// once across `0..labeled_tree_count(n)`.
pub fn labeled_tree(n: usize, index: u64) -> Graph {
    let edges = match n {
        0 => panic!("labeled_tree requires n >= 1"),
        1 => Vec::new(),
        2 => vec![(0, 1)],
        _ => {
            let mut seq = vec![0usize; n - 2];
            let mut rest = index;
            for slot in seq.iter_mut() {
                *slot = (rest % n as u64) as usize;
                rest /= n as u64;
            }
            prufer_decode(n, &seq)
        }
    };
    Graph::from_indexed_edges(n, &edges).expect("decoded trees are simple")
}

/// Streams every labeled tree on `n` vertices exactly once.
pub fn enumerate_trees(n: usize) -> Result<impl Iterator<Item = Graph>> {
    let count = labeled_tree_count(n)?;
    Ok((0..count).map(move |i| labeled_tree(n, i)))
}

/// Classic linear Prüfer decode; requires n >= 3 and a sequence of length
/// n-2 over 0..n.
fn prufer_decode(n: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    debug_assert_eq!(seq.len(), n - 2);
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    edges
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::VertexId;
    use crate::tree::RootedTree;
    use std::collections::BTreeSet;

    #[test]
    fn tiny_trees() {
        let g = random_tree(1, 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (1, 0));
        let g = random_tree(2, 0).unwrap();
        assert_eq!((g.vertex_count(), g.edge_count()), (2, 1));
    }

    #[test]
    fn random_trees_validate() {
        for seed in 0..50 {
            let g = random_tree(8, seed).unwrap();
            assert_eq!(g.edge_count(), 7, "seed {seed}");
            RootedTree::new(g, VertexId(0)).expect("generated graph is a tree");
        }
    }

    #[test]
    fn zero_vertices_is_an_input_error() {
        assert!(random_tree(0, 1).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn generation_is_deterministic() {
        for family in [Family::RandomTree, Family::RandomForest] {
            let spec = GenSpec {
                family,
                n: 12,
                seed: 99,
            };
            let a = spec.build().unwrap().to_edge_list();
            let b = spec.build().unwrap().to_edge_list();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn forests_are_acyclic_and_cover_all_vertices() {
        for seed in 0..30 {
            let g = random_forest(10, seed).unwrap();
            assert_eq!(g.vertex_count(), 10);
            assert!(g.is_acyclic(), "seed {seed}");
        }
    }

    #[test]
    fn enumeration_counts_and_distinctness() {
        for (n, expect) in [(1, 1u64), (2, 1), (3, 3), (4, 16), (5, 125)] {
            assert_eq!(labeled_tree_count(n).unwrap(), expect);
            let seen: BTreeSet<String> = enumerate_trees(n)
                .unwrap()
                .map(|g| g.to_edge_list())
                .collect();
            assert_eq!(seen.len() as u64, expect, "n = {n} trees must be distinct");
        }
    }

    #[test]
    fn enumeration_cap_is_enforced() {
        assert!(labeled_tree_count(ENUMERATION_CAP).is_ok());
        assert!(labeled_tree_count(ENUMERATION_CAP + 1).is_err());
    }

    #[test]
    fn family_shapes() {
        let p = path(3).unwrap();
        assert_eq!(p.to_edge_list(), "0 1\n1 2\n");

        let s = star(5).unwrap();
        assert_eq!(s.degree(VertexId(0)), 4);
        assert!((1..5).all(|i| s.degree(VertexId(i)) == 1));

        let c = caterpillar(6).unwrap();
        assert_eq!(c.to_edge_list(), "0 1\n0 3\n1 2\n1 4\n2 5\n");

        assert!(RootedTree::new(caterpillar(1).unwrap(), VertexId(0)).is_ok());
        assert!(RootedTree::new(caterpillar(2).unwrap(), VertexId(0)).is_ok());
        assert!(RootedTree::new(caterpillar(7).unwrap(), VertexId(0)).is_ok());
    }

    #[test]
    fn family_parsing() {
        assert_eq!("path".parse::<Family>().unwrap(), Family::Path);
        assert!("triangle-mesh".parse::<Family>().is_err());
    }
}
