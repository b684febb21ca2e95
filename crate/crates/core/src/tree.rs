//! Rooted trees: parent/children/depth structure, a postorder in which every
//! subtree is a contiguous slice, and subtree component orders.

use std::collections::VecDeque;

use crate::graph::{FailureSet, Graph, VertexId};
use crate::{Error, Result};

/// A validated tree (connected, acyclic) rooted at a chosen vertex.
///
/// Children are stored in ascending id order, which pins down the traversal
/// and makes solver output reproducible. The postorder lists every child
/// before its parent, and the vertices of any subtree occupy a contiguous
/// block of it ending at the subtree's root.
#[derive(Clone, Debug)]
pub struct RootedTree {
    graph: Graph,
    root: VertexId,
    parent: Vec<Option<VertexId>>,
    children: Vec<Vec<VertexId>>,
    depth: Vec<usize>,
    postorder: Vec<VertexId>,
    post_index: Vec<usize>,
    subtree_size: Vec<usize>,
}

impl RootedTree {
    /// Validates that `graph` is a tree and roots it at `root`.
    pub fn new(graph: Graph, root: VertexId) -> Result<Self> {
        Self::build(graph, root, false)
    }

    /// As [`RootedTree::new`] but with children in descending id order.
    /// Only used to check that solver output does not depend on the child
    /// iteration order.
    #[cfg(test)]
    pub(crate) fn new_with_reversed_children(graph: Graph, root: VertexId) -> Result<Self> {
        Self::build(graph, root, true)
    }

    fn build(graph: Graph, root: VertexId, reverse_children: bool) -> Result<Self> {
        let n = graph.vertex_count();
        if root.0 >= n {
            return Err(Error::UnknownVertex(root.0));
        }
        let components = graph.connected_components().len();
        if graph.edge_count() + components != n {
            return Err(Error::NotATree);
        }
        if components > 1 {
            return Err(Error::ForestInput);
        }

        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0usize; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        seen[root.0] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            for &w in graph.neighbors(u) {
                if !seen[w.0] {
                    seen[w.0] = true;
                    parent[w.0] = Some(u);
                    depth[w.0] = depth[u.0] + 1;
                    children[u.0].push(w);
                    queue.push_back(w);
                }
            }
        }
        if reverse_children {
            for list in &mut children {
                list.reverse();
            }
        }

        // Iterative postorder; subtrees come out as contiguous slices.
        let mut postorder = Vec::with_capacity(n);
        let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
        while let Some(top) = stack.last_mut() {
            let (v, i) = *top;
            if i < children[v.0].len() {
                top.1 += 1;
                stack.push((children[v.0][i], 0));
            } else {
                postorder.push(v);
                stack.pop();
            }
        }

        let mut post_index = vec![0usize; n];
        for (i, &v) in postorder.iter().enumerate() {
            post_index[v.0] = i;
        }
        let mut subtree_size = vec![1usize; n];
        for &v in &postorder {
            for &c in &children[v.0] {
                subtree_size[v.0] += subtree_size[c.0];
            }
        }

        Ok(RootedTree {
            graph,
            root,
            parent,
            children,
            depth,
            postorder,
            post_index,
            subtree_size,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    /// `None` exactly for the root.
    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent[v.0]
    }

    pub fn children(&self, v: VertexId) -> &[VertexId] {
        &self.children[v.0]
    }

    pub fn depth(&self, v: VertexId) -> usize {
        self.depth[v.0]
    }

    pub fn postorder(&self) -> &[VertexId] {
        &self.postorder
    }

    /// Vertices of the subtree rooted at `v`, as the contiguous postorder
    /// slice that ends with `v` itself.
    pub fn subtree(&self, v: VertexId) -> &[VertexId] {
        let end = self.post_index[v.0] + 1;
        &self.postorder[end - self.subtree_size[v.0]..end]
    }

    pub fn subtree_size(&self, v: VertexId) -> usize {
        self.subtree_size[v.0]
    }

    /// Descendants of `v` at distance exactly `ell` below it. Distance zero
    /// means `v` itself. Ascending id order.
    pub fn ell_generation_descendants(&self, v: VertexId, ell: usize) -> Vec<VertexId> {
        let target = self.depth[v.0] + ell;
        let mut out: Vec<VertexId> = self
            .subtree(v)
            .iter()
            .copied()
            .filter(|&u| self.depth[u.0] == target)
            .collect();
        out.sort_unstable();
        out
    }

    /// Component order of `v` under failure set `f`: zero when `v` lies in
    /// the closed `ell`-neighborhood of `f`, otherwise one plus the sum over
    /// `v`'s children. At the top vertex of a surviving component this equals
    /// the component's order.
    pub fn comp_order(&self, f: &FailureSet, ell: usize, v: VertexId) -> usize {
        let mut ball = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        self.graph
            .fill_ball_mask(f.iter(), ell, &mut ball, &mut queue);
        let mut comp = vec![0usize; self.vertex_count()];
        self.comp_orders_in_subtree(v, &ball, &mut comp);
        comp[v.0]
    }

    /// Component orders for every vertex, computed over the whole tree.
    pub fn comp_orders(&self, f: &FailureSet, ell: usize) -> Vec<usize> {
        let mut ball = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        self.graph
            .fill_ball_mask(f.iter(), ell, &mut ball, &mut queue);
        let mut comp = vec![0usize; self.vertex_count()];
        self.comp_orders_in_subtree(self.root, &ball, &mut comp);
        comp
    }

    /// Recomputes component orders for the subtree of `v` against the given
    /// coverage mask. Entries outside the subtree are left untouched. Runs
    /// iteratively over the stored postorder, so deep trees cannot overflow
    /// the stack.
    pub(crate) fn comp_orders_in_subtree(&self, v: VertexId, in_ball: &[bool], comp: &mut [usize]) {
        for &u in self.subtree(v) {
            comp[u.0] = if in_ball[u.0] {
                0
            } else {
                1 + self.children(u).iter().map(|&c| comp[c.0]).sum::<usize>()
            };
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "\
a a²
a ab
a ac
a² a³
a² a²b
ab aba
aba aba²
";

    fn demo_tree() -> RootedTree {
        let g = Graph::from_edge_list(DEMO).unwrap();
        let root = g.vertex("a").unwrap();
        RootedTree::new(g, root).unwrap()
    }

    fn ids(t: &RootedTree, labels: &[&str]) -> Vec<VertexId> {
        labels
            .iter()
            .map(|l| t.graph().vertex(l).unwrap())
            .collect()
    }

    #[test]
    fn rejects_cycles() {
        let g = Graph::from_edge_list("a b\nb c\nc a\n").unwrap();
        assert!(matches!(
            RootedTree::new(g, VertexId(0)),
            Err(Error::NotATree)
        ));
    }

    #[test]
    fn rejects_disconnected_input() {
        let g = Graph::from_edge_list("a b\nc d\n").unwrap();
        assert!(matches!(
            RootedTree::new(g, VertexId(0)),
            Err(Error::ForestInput)
        ));
    }

    #[test]
    fn path_parents_follow_the_root() {
        let g = Graph::from_edge_list("a b\nb c\n").unwrap();
        let t = RootedTree::new(g, VertexId(0)).unwrap();
        assert_eq!(t.parent(VertexId(0)), None);
        assert_eq!(t.parent(VertexId(1)), Some(VertexId(0)));
        assert_eq!(t.parent(VertexId(2)), Some(VertexId(1)));
        assert_eq!(t.depth(VertexId(2)), 2);
    }

    #[test]
    fn demo_children_come_out_sorted() {
        let t = demo_tree();
        assert_eq!(
            t.children(t.root()),
            ids(&t, &["a²", "ab", "ac"]).as_slice()
        );
        let a2 = t.graph().vertex("a²").unwrap();
        assert_eq!(t.children(a2), ids(&t, &["a³", "a²b"]).as_slice());
    }

    #[test]
    fn postorder_lists_children_before_parents() {
        let t = demo_tree();
        let pos: Vec<usize> = t
            .graph()
            .vertices()
            .map(|v| t.postorder().iter().position(|&u| u == v).unwrap())
            .collect();
        for v in t.graph().vertices() {
            for &c in t.children(v) {
                assert!(pos[c.0] < pos[v.0], "child {c} must precede parent {v}");
            }
        }
        assert_eq!(*t.postorder().last().unwrap(), t.root());
    }

    #[test]
    fn subtree_slices_are_consistent() {
        let t = demo_tree();
        let ab = t.graph().vertex("ab").unwrap();
        let mut sub: Vec<&str> = t.subtree(ab).iter().map(|&v| t.graph().label(v)).collect();
        sub.sort_unstable();
        assert_eq!(sub, vec!["ab", "aba", "aba²"]);
        assert_eq!(t.subtree(t.root()).len(), 8);
    }

    #[test]
    fn ell_generation_descendants_by_depth() {
        let t = demo_tree();
        let a2 = t.graph().vertex("a²").unwrap();
        assert_eq!(t.ell_generation_descendants(a2, 0), vec![a2]);
        assert_eq!(t.ell_generation_descendants(a2, 1), ids(&t, &["a³", "a²b"]));
        assert_eq!(
            t.ell_generation_descendants(t.root(), 3),
            ids(&t, &["aba²"])
        );
        assert!(t.ell_generation_descendants(a2, 2).is_empty());
    }

    #[test]
    fn comp_order_matches_the_recursion() {
        let t = demo_tree();
        let empty = FailureSet::new();
        let a2 = t.graph().vertex("a²").unwrap();
        // Leaf outside any coverage counts itself.
        let a3 = t.graph().vertex("a³").unwrap();
        assert_eq!(t.comp_order(&empty, 1, a3), 1);
        // One plus the children's orders.
        assert_eq!(t.comp_order(&empty, 1, a2), 3);
        assert_eq!(t.comp_order(&empty, 1, t.root()), 8);
        // Covered vertices are zero.
        let f: FailureSet = [a2].into_iter().collect();
        assert_eq!(t.comp_order(&f, 1, a2), 0);
        assert_eq!(t.comp_order(&f, 0, a3), 1);
    }
}
