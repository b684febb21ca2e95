//! Undirected simple graphs with string-labeled vertices, plus the distance
//! and coverage primitives shared by the solver and the verifiers.
//!
//! Labels are arbitrary non-empty strings mapped to dense integer ids at
//! construction time; every set operation works on ids. Adjacency lists are
//! kept sorted ascending so neighbor iteration is deterministic.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::{Error, Result};

/// Dense vertex index into a [`Graph`].
#[derive(Copy, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct VertexId(pub usize);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An undirected simple graph: no self-loops, no duplicate edges, symmetric
/// sorted adjacency.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
}

/// Incremental [`Graph`] construction. Vertices get ids in the order they
/// are first mentioned.
#[derive(Default)]
pub struct GraphBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `label`, inserting a new vertex if needed.
    pub fn vertex(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return VertexId(id);
        }
        let id = self.labels.len();
        self.labels.push(label.to_string());
        self.index.insert(label.to_string(), id);
        VertexId(id)
    }

    /// Adds the undirected edge `u v`. Self-loops and repeated edges are
    /// rejected so the result stays simple.
    pub fn edge(&mut self, u: &str, v: &str) -> Result<()> {
        if u == v {
            return Err(Error::InvalidEdge(format!("self-loop at `{u}`")));
        }
        let a = self.vertex(u).0;
        let b = self.vertex(v).0;
        let key = (a.min(b), a.max(b));
        if !self.edges.insert(key) {
            return Err(Error::InvalidEdge(format!("duplicate edge `{u} {v}`")));
        }
        Ok(())
    }

    pub fn finish(self) -> Graph {
        let n = self.labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(VertexId(b));
            adj[b].push(VertexId(a));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            labels: self.labels,
            index: self.index,
            adj,
            edge_count: self.edges.len(),
        }
    }
}

impl Graph {
    /// Parses the edge-list text format: one `u v` edge per line, a single
    /// label declares an isolated vertex, `#` starts a comment, blank lines
    /// are skipped. Ids are assigned in first-appearance order.
    pub fn from_edge_list(text: &str) -> Result<Graph> {
        let mut builder = GraphBuilder::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut tokens = line.split_whitespace();
            let first = tokens.next();
            let second = tokens.next();
            match (first, second, tokens.next()) {
                (Some(u), None, _) => {
                    builder.vertex(u);
                }
                (Some(u), Some(v), None) => {
                    builder.edge(u, v).map_err(|e| Error::Parse {
                        line: i + 1,
                        msg: e.to_string(),
                    })?;
                }
                _ => {
                    return Err(Error::Parse {
                        line: i + 1,
                        msg: format!("expected one or two labels, got `{line}`"),
                    });
                }
            }
        }
        Ok(builder.finish())
    }

    /// Builds a graph on `n` vertices labeled `"0"`..`"n-1"` from an index
    /// edge list. Convenient for generated graphs.
    pub fn from_indexed_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut builder = GraphBuilder::new();
        for i in 0..n {
            builder.vertex(&i.to_string());
        }
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::UnknownVertex(a.max(b)));
            }
            builder.edge(&a.to_string(), &b.to_string())?;
        }
        Ok(builder.finish())
    }

    /// Serializes back to the edge-list format, vertices in id order.
    /// Isolated vertices become single-label lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for u in 0..self.vertex_count() {
            if self.adj[u].is_empty() {
                out.push_str(&self.labels[u]);
                out.push('\n');
            } else {
                for &v in &self.adj[u] {
                    if v.0 > u {
                        out.push_str(&self.labels[u]);
                        out.push(' ');
                        out.push_str(&self.labels[v.0]);
                        out.push('\n');
                    }
                }
            }
        }
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_count()).map(VertexId)
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v.0]
    }

    pub fn vertex(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied().map(VertexId)
    }

    pub fn require_vertex(&self, label: &str) -> Result<VertexId> {
        self.vertex(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v.0]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v.0].len()
    }

    pub fn contains_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u.0].binary_search(&v).is_ok()
    }

    /// Hop distances from `source`; `None` for vertices in other components.
    pub fn bfs_distances(&self, source: VertexId) -> Result<Vec<Option<usize>>> {
        if source.0 >= self.vertex_count() {
            return Err(Error::UnknownVertex(source.0));
        }
        let mut dist = vec![None; self.vertex_count()];
        let mut queue = VecDeque::new();
        dist[source.0] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let d = dist[u.0].unwrap();
            for &w in self.neighbors(u) {
                if dist[w.0].is_none() {
                    dist[w.0] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        Ok(dist)
    }

    /// Marks every vertex within hop distance `ell` of some source.
    /// `mask` must be all-false on entry; `queue` must be empty.
    pub(crate) fn fill_ball_mask<I>(
        &self,
        sources: I,
        ell: usize,
        mask: &mut [bool],
        queue: &mut VecDeque<(VertexId, usize)>,
    ) where
        I: IntoIterator<Item = VertexId>,
    {
        for s in sources {
            if !mask[s.0] {
                mask[s.0] = true;
                queue.push_back((s, 0));
            }
        }
        while let Some((u, d)) = queue.pop_front() {
            if d == ell {
                continue;
            }
            for &w in self.neighbors(u) {
                if !mask[w.0] {
                    mask[w.0] = true;
                    queue.push_back((w, d + 1));
                }
            }
        }
    }

    /// The closed `ell`-neighborhood of a vertex set: everything within hop
    /// distance `ell` of some member. With `ell = 0` this is the set itself.
    pub fn closed_neighborhood(&self, seeds: &FailureSet, ell: usize) -> Result<FailureSet> {
        seeds.validate_for(self)?;
        let mut mask = vec![false; self.vertex_count()];
        let mut queue = VecDeque::new();
        self.fill_ball_mask(seeds.iter(), ell, &mut mask, &mut queue);
        Ok(mask
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| VertexId(i))
            .collect())
    }

    /// Connected components of the subgraph induced on the vertices NOT in
    /// the closed `ell`-neighborhood of `f`. Each component is sorted
    /// ascending; components are ordered by their smallest vertex. Empty when
    /// the neighborhood covers everything.
    pub fn surviving_components(&self, f: &FailureSet, ell: usize) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        assert!(
            f.iter().all(|v| v.0 < n),
            "failure set contains out-of-range vertex ids"
        );
        let mut covered = vec![false; n];
        let mut queue = VecDeque::new();
        self.fill_ball_mask(f.iter(), ell, &mut covered, &mut queue);
        self.components_avoiding(&covered)
    }

    /// Connected components restricted to vertices where `excluded` is false.
    fn components_avoiding(&self, excluded: &[bool]) -> Vec<Vec<VertexId>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if excluded[start] || seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            seen[start] = true;
            queue.push_back(VertexId(start));
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in self.neighbors(u) {
                    if !excluded[w.0] && !seen[w.0] {
                        seen[w.0] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components of the whole graph, smallest vertex first.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        self.components_avoiding(&vec![false; self.vertex_count()])
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() > 0 && self.connected_components().len() == 1
    }

    /// A graph is acyclic exactly when every component is a tree, i.e.
    /// m = n - (number of components).
    pub fn is_acyclic(&self) -> bool {
        let c = self.connected_components().len();
        self.edge_count() + c == self.vertex_count()
    }

    /// Maximum hop distance over all vertex pairs. Errors on empty or
    /// disconnected graphs.
    pub fn diameter(&self) -> Result<usize> {
        if self.vertex_count() == 0 {
            return Err(Error::Disconnected);
        }
        let mut best = 0;
        for v in self.vertices() {
            for d in self.bfs_distances(v)? {
                match d {
                    Some(d) => best = best.max(d),
                    None => return Err(Error::Disconnected),
                }
            }
        }
        Ok(best)
    }

    /// Subgraph induced on `vertices` together with the original id of each
    /// new vertex (new id `i` was `map[i]`). Labels carry over.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> (Graph, Vec<VertexId>) {
        let mut map: Vec<VertexId> = vertices.to_vec();
        map.sort_unstable();
        map.dedup();
        let mut builder = GraphBuilder::new();
        for &v in &map {
            builder.vertex(self.label(v));
        }
        for &v in &map {
            for &w in self.neighbors(v) {
                if v < w && map.binary_search(&w).is_ok() {
                    builder
                        .edge(self.label(v), self.label(w))
                        .expect("induced edges are simple");
                }
            }
        }
        (builder.finish(), map)
    }
}

/// A set of vertices proposed (or proven) to fail a graph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FailureSet {
    members: BTreeSet<VertexId>,
}

impl FailureSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every vertex of the graph.
    pub fn all_vertices(g: &Graph) -> Self {
        g.vertices().collect()
    }

    pub fn from_labels<'a, I>(g: &Graph, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a str>,
    {
        labels
            .into_iter()
            .map(|l| g.require_vertex(l))
            .collect::<Result<_>>()
    }

    pub fn insert(&mut self, v: VertexId) -> bool {
        self.members.insert(v)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().copied()
    }

    pub fn union(&self, other: &FailureSet) -> FailureSet {
        self.members.union(&other.members).copied().collect()
    }

    pub fn is_subset_of(&self, other: &FailureSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// Member labels sorted by label string.
    pub fn labels<'g>(&self, g: &'g Graph) -> Vec<&'g str> {
        let mut out: Vec<&str> = self.iter().map(|v| g.label(v)).collect();
        out.sort_unstable();
        out
    }

    pub fn validate_for(&self, g: &Graph) -> Result<()> {
        match self.members.iter().next_back() {
            Some(&v) if v.0 >= g.vertex_count() => Err(Error::UnknownVertex(v.0)),
            _ => Ok(()),
        }
    }
}

impl FromIterator<VertexId> for FailureSet {
    fn from_iter<T: IntoIterator<Item = VertexId>>(iter: T) -> Self {
        FailureSet {
            members: iter.into_iter().collect(),
        }
    }
}

/// A problem instance: a graph, a component-order threshold `k`, and a
/// coverage distance `ell`. `k` must satisfy `1 <= k <= n`.
#[derive(Clone, Debug)]
pub struct Instance {
    graph: Graph,
    k: usize,
    ell: usize,
}

impl Instance {
    pub fn new(graph: Graph, k: usize, ell: usize) -> Result<Self> {
        let n = graph.vertex_count();
        if k < 1 || k > n {
            return Err(Error::InvalidThreshold { k, n });
        }
        Ok(Instance { graph, k, ell })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// True iff every connected component that survives outside the closed
    /// `ell`-neighborhood of `f` has order below `k`. Works on any simple
    /// graph, not only trees.
    pub fn is_failure_set(&self, f: &FailureSet) -> bool {
        self.graph
            .surviving_components(f, self.ell)
            .iter()
            .all(|c| c.len() < self.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const DEMO: &str = "\
# branchy 8-vertex tree used across the test suite
a a²
a ab
a ac
a² a³
a² a²b
ab aba
aba aba²
";

    fn demo() -> Graph {
        Graph::from_edge_list(DEMO).unwrap()
    }

    fn set(g: &Graph, labels: &[&str]) -> FailureSet {
        FailureSet::from_labels(g, labels.iter().copied()).unwrap()
    }

    #[test]
    fn parse_assigns_ids_in_first_appearance_order() {
        let g = demo();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(g.edge_count(), 7);
        let expected = ["a", "a²", "ab", "ac", "a³", "a²b", "aba", "aba²"];
        for (i, label) in expected.iter().enumerate() {
            assert_eq!(g.label(VertexId(i)), *label);
            assert_eq!(g.vertex(label), Some(VertexId(i)));
        }
    }

    #[test]
    fn parse_handles_comments_blanks_and_isolated_vertices() {
        let g = Graph::from_edge_list("# header\n\n x \n a b # trailing\n").unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.degree(g.vertex("x").unwrap()), 0);
    }

    #[test]
    fn parse_rejects_bad_lines() {
        match Graph::from_edge_list("a b\na b\n") {
            Err(Error::Parse { line: 2, .. }) => {}
            other => panic!("expected duplicate-edge parse error, got {other:?}"),
        }
        match Graph::from_edge_list("a a\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected self-loop parse error, got {other:?}"),
        }
        match Graph::from_edge_list("a b c\n") {
            Err(Error::Parse { line: 1, .. }) => {}
            other => panic!("expected token-count parse error, got {other:?}"),
        }
    }

    #[test]
    fn bfs_distances_on_a_path() {
        let g = Graph::from_edge_list("a b\nb c\n").unwrap();
        let d = g.bfs_distances(g.vertex("b").unwrap()).unwrap();
        assert_eq!(d, vec![Some(1), Some(0), Some(1)]);
    }

    #[test]
    fn bfs_distance_to_self_is_zero() {
        let g = demo();
        for v in g.vertices() {
            assert_eq!(g.bfs_distances(v).unwrap()[v.0], Some(0));
        }
    }

    #[test]
    fn bfs_reaches_depth_three_leaf() {
        let g = demo();
        let d = g.bfs_distances(g.vertex("a").unwrap()).unwrap();
        assert_eq!(d[g.vertex("aba²").unwrap().0], Some(3));
    }

    #[test]
    fn bfs_rejects_unknown_source() {
        let g = demo();
        assert!(matches!(
            g.bfs_distances(VertexId(99)),
            Err(Error::UnknownVertex(99))
        ));
    }

    #[test]
    fn neighborhood_at_distance_zero_is_the_set_itself() {
        let g = demo();
        let s = set(&g, &["a²", "aba²"]);
        assert_eq!(g.closed_neighborhood(&s, 0).unwrap(), s);
    }

    #[test]
    fn neighborhood_of_inner_vertex() {
        let g = demo();
        let s = set(&g, &["a²"]);
        let expect = set(&g, &["a", "a²", "a³", "a²b"]);
        assert_eq!(g.closed_neighborhood(&s, 1).unwrap(), expect);
    }

    #[test]
    fn neighborhood_covers_short_path() {
        let g = Graph::from_edge_list("a b\nb c\nc d\nd e\n").unwrap();
        let s = set(&g, &["c"]);
        assert_eq!(
            g.closed_neighborhood(&s, 2).unwrap(),
            FailureSet::all_vertices(&g)
        );
    }

    #[test]
    fn surviving_components_empty_when_everything_fails() {
        let g = demo();
        let f = FailureSet::all_vertices(&g);
        assert!(g.surviving_components(&f, 0).is_empty());
        let f = set(&g, &["a", "a²", "aba"]);
        assert!(g.surviving_components(&f, 1).is_empty());
    }

    #[test]
    fn surviving_components_split_by_coverage() {
        let g = demo();
        let f = set(&g, &["a²"]);
        let comps = g.surviving_components(&f, 1);
        let labeled: Vec<Vec<&str>> = comps
            .iter()
            .map(|c| c.iter().map(|&v| g.label(v)).collect())
            .collect();
        assert_eq!(labeled, vec![vec!["ab", "aba", "aba²"], vec!["ac"]]);
    }

    #[test]
    fn failure_set_predicate_on_the_demo_tree() {
        let inst = Instance::new(demo(), 1, 1).unwrap();
        assert!(inst.is_failure_set(&FailureSet::all_vertices(inst.graph())));
        assert!(inst.is_failure_set(&set(inst.graph(), &["a", "a²", "aba"])));
        assert!(!inst.is_failure_set(&set(inst.graph(), &["a²"])));
    }

    #[test]
    fn failure_set_predicate_works_on_cycles() {
        let c6 = Graph::from_edge_list("0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
        let f = set(&c6, &["0"]);
        let survivors = c6.surviving_components(&f, 1);
        assert_eq!(survivors.len(), 1);
        assert_eq!(survivors[0].len(), 3);
        assert!(!Instance::new(c6.clone(), 1, 1).unwrap().is_failure_set(&f));
        assert!(Instance::new(c6, 4, 1).unwrap().is_failure_set(&f));
    }

    #[test]
    fn instance_validates_threshold_range() {
        assert!(matches!(
            Instance::new(demo(), 0, 1),
            Err(Error::InvalidThreshold { k: 0, n: 8 })
        ));
        assert!(matches!(
            Instance::new(demo(), 9, 1),
            Err(Error::InvalidThreshold { k: 9, n: 8 })
        ));
        assert!(Instance::new(demo(), 8, 0).is_ok());
    }

    #[test]
    fn diameter_of_named_graphs() {
        let single = Graph::from_edge_list("x\n").unwrap();
        assert_eq!(single.diameter().unwrap(), 0);

        let path5 = Graph::from_edge_list("a b\nb c\nc d\nd e\n").unwrap();
        assert_eq!(path5.diameter().unwrap(), 4);

        // Longest path in the demo tree runs leaf-to-leaf through the root:
        // a³ a² a ab aba aba².
        assert_eq!(demo().diameter().unwrap(), 5);
    }

    #[test]
    fn diameter_rejects_disconnected_input() {
        let g = Graph::from_edge_list("a b\nc d\n").unwrap();
        assert!(matches!(g.diameter(), Err(Error::Disconnected)));
        let empty = Graph::from_edge_list("").unwrap();
        assert!(matches!(empty.diameter(), Err(Error::Disconnected)));
    }

    #[test]
    fn induced_subgraph_keeps_labels_and_edges() {
        let g = demo();
        let comp: Vec<VertexId> = ["ab", "aba", "aba²"]
            .iter()
            .map(|l| g.vertex(l).unwrap())
            .collect();
        let (sub, map) = g.induced_subgraph(&comp);
        assert_eq!(sub.vertex_count(), 3);
        assert_eq!(sub.edge_count(), 2);
        assert_eq!(sub.label(VertexId(0)), "ab");
        assert_eq!(map[0], g.vertex("ab").unwrap());
    }

    #[test]
    fn edge_list_round_trips_by_labels() {
        let g = demo();
        let again = Graph::from_edge_list(&g.to_edge_list()).unwrap();
        assert_eq!(again.vertex_count(), g.vertex_count());
        assert_eq!(again.edge_count(), g.edge_count());
        for v in g.vertices() {
            let w = again.vertex(g.label(v)).unwrap();
            let mut a: Vec<&str> = g.neighbors(v).iter().map(|&x| g.label(x)).collect();
            let mut b: Vec<&str> = again.neighbors(w).iter().map(|&x| again.label(x)).collect();
            a.sort_unstable();
            b.sort_unstable();
            assert_eq!(a, b);
        }
    }
}
