//! Minimum failure-set selection on rooted trees, plus the forest extension.
//!
//! The selection walks the tree in postorder. After a vertex's children are
//! done, the component orders of its subtree are recomputed against the
//! current failure set; the vertex is failed when a survivor of order at
//! least `k` sits at distance exactly `ell` below it (or, at the root, lies
//! anywhere within distance `ell`). The returned set has minimum cardinality
//! over all failure sets of the tree. Each visit does O(n) work, so a run is
//! O(n^2) overall.

use std::collections::VecDeque;

use crate::graph::{FailureSet, Graph, Instance, VertexId};
use crate::tree::RootedTree;
use crate::{Error, Result};

/// Outcome of a solver run: the selected set, the final component orders it
/// induces (all below `k`), and the root the traversal used.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub failure_set: FailureSet,
    pub comp_orders: Vec<usize>,
    pub root: VertexId,
}

impl SolveResult {
    pub fn lambda(&self) -> usize {
        self.failure_set.len()
    }
}

/// Solves `inst` on the tree rooted at `root`.
pub fn solve(inst: &Instance, root: VertexId) -> Result<SolveResult> {
    let tree = RootedTree::new(inst.graph().clone(), root)?;
    solve_on_tree(&tree, inst.k(), inst.ell())
}

/// Minimum failure-set cardinality of `inst` rooted at `root`. The number is
/// the same for every root choice; the set itself may differ.
pub fn lambda(inst: &Instance, root: VertexId) -> Result<usize> {
    Ok(solve(inst, root)?.failure_set.len())
}

/// Solves directly on a prebuilt tree, which lets callers sweep `k` and
/// `ell` without re-validating. Requires `k >= 1`; thresholds above the tree
/// order are allowed and simply select nothing.
pub fn solve_on_tree(tree: &RootedTree, k: usize, ell: usize) -> Result<SolveResult> {
    if k < 1 {
        return Err(Error::InvalidThreshold {
            k,
            n: tree.vertex_count(),
        });
    }
    let graph = tree.graph();
    let root = tree.root();
    let n = tree.vertex_count();

    let mut failed_list: Vec<VertexId> = Vec::new();
    let mut ball = vec![false; n];
    let mut comp = vec![0usize; n];
    let mut queue = VecDeque::new();

    for &v in tree.postorder() {
        // Component orders for v's subtree against the current selection.
        ball.fill(false);
        graph.fill_ball_mask(failed_list.iter().copied(), ell, &mut ball, &mut queue);
        tree.comp_orders_in_subtree(v, &ball, &mut comp);

        let fail_v = if v == root && root_sees_large_component(tree, &comp, k, ell) {
            true
        } else {
            has_large_ell_generation_descendant(tree, &comp, k, ell, v)
        };
        if fail_v {
            failed_list.push(v);
        }

        if cfg!(debug_assertions) {
            // Invariant: once a subtree is processed, any survivor of order
            // at least k inside it sits strictly closer than ell to the
            // subtree root. When v was just selected the coverage state is
            // stale, so refresh it first.
            if fail_v {
                ball.fill(false);
                graph.fill_ball_mask(failed_list.iter().copied(), ell, &mut ball, &mut queue);
                tree.comp_orders_in_subtree(v, &ball, &mut comp);
            }
            for &u in tree.subtree(v) {
                if comp[u.0] >= k {
                    let dist = tree.depth(u) - tree.depth(v);
                    assert!(
                        dist < ell,
                        "survivor {u} of order {} sits {dist} below processed vertex {v} (k={k}, ell={ell})",
                        comp[u.0]
                    );
                }
            }
        }
    }

    ball.fill(false);
    graph.fill_ball_mask(failed_list.iter().copied(), ell, &mut ball, &mut queue);
    tree.comp_orders_in_subtree(root, &ball, &mut comp);

    Ok(SolveResult {
        failure_set: failed_list.into_iter().collect(),
        comp_orders: comp,
        root,
    })
}

/// Root rule: anything within distance `ell` of the root (equivalently,
/// depth at most `ell`) with component order at least `k`. Scans ascending
/// ids and stops at the first witness.
fn root_sees_large_component(tree: &RootedTree, comp: &[usize], k: usize, ell: usize) -> bool {
    (0..tree.vertex_count()).any(|u| tree.depth(VertexId(u)) <= ell && comp[u] >= k)
}

/// Non-root rule: a descendant at depth exactly `ell` below `v` with
/// component order at least `k`. For `ell = 0` the only candidate is `v`
/// itself.
fn has_large_ell_generation_descendant(
    tree: &RootedTree,
    comp: &[usize],
    k: usize,
    ell: usize,
    v: VertexId,
) -> bool {
    let target = tree.depth(v) + ell;
    tree.subtree(v)
        .iter()
        .any(|&u| tree.depth(u) == target && comp[u.0] >= k)
}

/// Solves a forest by solving each component on its own, rooted at the
/// component's lowest-id vertex, and taking the union. The union's size is
/// the sum of the per-component minima. `k` is validated against the total
/// vertex count; components smaller than `k` contribute nothing.
pub fn solve_forest(graph: &Graph, k: usize, ell: usize) -> Result<FailureSet> {
    let n = graph.vertex_count();
    if k < 1 || k > n {
        return Err(Error::InvalidThreshold { k, n });
    }
    if !graph.is_acyclic() {
        return Err(Error::NotAForest);
    }
    let mut out = FailureSet::new();
    for component in graph.connected_components() {
        let (sub, map) = graph.induced_subgraph(&component);
        let tree = RootedTree::new(sub, VertexId(0))?;
        let result = solve_on_tree(&tree, k, ell)?;
        for v in result.failure_set.iter() {
            out.insert(map[v.0]);
        }
    }
    Ok(out)
}
