//! Brute-force minimality oracle for desk-scale instances, an independent
//! coverage-number brute force, and the fail-relocation mapping used to
//! cross-check the tree solver's minimality.
//!
//! The oracle keeps its own u64-bitset neighborhood spread and component
//! flood fill, so it shares no code path with the solver it judges.

use std::collections::{BTreeMap, VecDeque};

use crate::graph::{FailureSet, Graph, Instance, VertexId};
use crate::tree::RootedTree;
use crate::{Error, Result};

/// Soft vertex cap for subset enumeration; callers can raise it explicitly.
pub const DEFAULT_ORACLE_CAP: usize = 20;
/// Hard limit imposed by the single-word bitset representation.
pub const ORACLE_HARD_LIMIT: usize = 63;

/// What the exhaustive search found.
#[derive(Clone, Debug)]
pub struct OracleResult {
    /// Minimum failure-set cardinality.
    pub minimum: usize,
    /// The first witness found: the smallest bitmask within the winning
    /// cardinality class.
    pub witness: FailureSet,
    /// How many candidate subsets were tested before stopping.
    pub subsets_examined: u64,
}

/// Bitset form of a graph for exhaustive subset checks, n <= 63.
pub struct SubsetOracle {
    n: usize,
    adj: Vec<u64>,
}

impl SubsetOracle {
    pub fn new(g: &Graph) -> Result<Self> {
        let n = g.vertex_count();
        if n > ORACLE_HARD_LIMIT {
            return Err(Error::OracleHardLimit {
                n,
                limit: ORACLE_HARD_LIMIT,
            });
        }
        let mut adj = vec![0u64; n];
        for v in g.vertices() {
            for &w in g.neighbors(v) {
                adj[v.0] |= 1 << w.0;
            }
        }
        Ok(SubsetOracle { n, adj })
    }

    fn full(&self) -> u64 {
        if self.n == 0 {
            0
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Everything within `ell` hops of a set bit, by repeated one-step
    /// spreading (stops early at a fixpoint).
    fn ball(&self, mask: u64, ell: usize) -> u64 {
        let mut cur = mask;
        for _ in 0..ell {
            let mut next = cur;
            let mut bits = cur;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.adj[v];
            }
            if next == cur {
                break;
            }
            cur = next;
        }
        cur
    }

    /// True iff every component left outside the `ell`-ball of `mask` has
    /// fewer than `k` vertices.
    pub fn is_failure_mask(&self, mask: u64, k: usize, ell: usize) -> bool {
        let mut rest = self.full() & !self.ball(mask, ell);
        while rest != 0 {
            let seed = 1u64 << rest.trailing_zeros();
            let mut comp = seed;
            loop {
                let mut grown = comp;
                let mut bits = comp;
                while bits != 0 {
                    let v = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    grown |= self.adj[v] & rest;
                }
                if grown == comp {
                    break;
                }
                comp = grown;
            }
            if comp.count_ones() as usize >= k {
                return false;
            }
            rest &= !comp;
        }
        true
    }

    /// Enumerates subsets by cardinality, smallest class first and smallest
    /// bitmask first within a class, and stops at the first hit. The full
    /// vertex set always passes, so the search terminates.
    pub fn minimum(&self, k: usize, ell: usize) -> OracleResult {
        let mut examined = 0u64;
        for size in 0..=self.n {
            let mut mask = if size == 0 { 0 } else { (1u64 << size) - 1 };
            loop {
                examined += 1;
                if self.is_failure_mask(mask, k, ell) {
                    return OracleResult {
                        minimum: size,
                        witness: mask_to_set(mask),
                        subsets_examined: examined,
                    };
                }
                if size == 0 {
                    break;
                }
                // Gosper's hack: next mask with the same popcount.
                let low = mask & mask.wrapping_neg();
                let ripple = mask + low;
                mask = ripple | (((mask ^ ripple) >> 2) / low);
                if mask > self.full() {
                    break;
                }
            }
        }
        unreachable!("the full vertex set is always a failure set");
    }

    /// Smallest set whose `ell`-ball covers every vertex. This checks plain
    /// coverage, with no component logic, so it is an independent route to
    /// the `k = 1` case.
    pub fn coverage_minimum(&self, ell: usize) -> usize {
        let full = self.full();
        for size in 0..=self.n {
            let mut mask = if size == 0 { 0 } else { (1u64 << size) - 1 };
            loop {
                if self.ball(mask, ell) == full {
                    return size;
                }
                if size == 0 {
                    break;
                }
                let low = mask & mask.wrapping_neg();
                let ripple = mask + low;
                mask = ripple | (((mask ^ ripple) >> 2) / low);
                if mask > full {
                    break;
                }
            }
        }
        self.n
    }
}

fn mask_to_set(mask: u64) -> FailureSet {
    let mut out = FailureSet::new();
    let mut bits = mask;
    while bits != 0 {
        out.insert(VertexId(bits.trailing_zeros() as usize));
        bits &= bits - 1;
    }
    out
}

/// Exhaustive minimum for `inst` under the default cap. Works on any simple
/// graph, cyclic or not.
pub fn brute_force_minimum(inst: &Instance) -> Result<OracleResult> {
    brute_force_minimum_with_cap(inst, DEFAULT_ORACLE_CAP)
}

/// Exhaustive minimum with an explicit vertex cap.
pub fn brute_force_minimum_with_cap(inst: &Instance, cap: usize) -> Result<OracleResult> {
    let n = inst.graph().vertex_count();
    if n > cap {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    Ok(SubsetOracle::new(inst.graph())?.minimum(inst.k(), inst.ell()))
}

/// Smallest set whose closed `ell`-neighborhood covers the whole graph.
pub fn distance_domination_number(g: &Graph, ell: usize) -> Result<usize> {
    Ok(SubsetOracle::new(g)?.coverage_minimum(ell))
}

/// One relocation step: every candidate mapped to `vertex` was re-aimed at
/// its parent.
#[derive(Clone, Debug)]
pub struct MoveUp {
    pub vertex: VertexId,
    pub parent: VertexId,
    pub moved: Vec<VertexId>,
}

/// A total map from a candidate set `W` into the vertex set, built by
/// postorder fail relocation. Starts as the identity on `W`; a vertex's
/// fails move to its parent whenever none of its `ell`-generation
/// descendants would be left in a large component.
#[derive(Clone, Debug)]
pub struct FailMapping {
    entries: BTreeMap<VertexId, VertexId>,
    moves: Vec<MoveUp>,
}

impl FailMapping {
    pub fn get(&self, w: VertexId) -> Option<VertexId> {
        self.entries.get(&w).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.entries.iter().map(|(&a, &b)| (a, b))
    }

    pub fn domain(&self) -> FailureSet {
        self.entries.keys().copied().collect()
    }

    pub fn image(&self) -> FailureSet {
        self.entries.values().copied().collect()
    }

    /// Relocations in the order they happened.
    pub fn moves(&self) -> &[MoveUp] {
        &self.moves
    }
}

/// Runs the relocation construction for candidate set `w` on the tree rooted
/// at `root`. `w` may be any subset of the vertices; the mapping guarantees
/// only hold when `w` is a failure set.
pub fn build_mapping(inst: &Instance, root: VertexId, w: &FailureSet) -> Result<FailMapping> {
    let tree = RootedTree::new(inst.graph().clone(), root)?;
    build_mapping_on_tree(&tree, inst.k(), inst.ell(), w)
}

/// As [`build_mapping`], on a prebuilt tree.
pub fn build_mapping_on_tree(
    tree: &RootedTree,
    k: usize,
    ell: usize,
    w: &FailureSet,
) -> Result<FailMapping> {
    w.validate_for(tree.graph())?;
    let n = tree.vertex_count();
    let root = tree.root();

    // target[w'] is where w' currently maps; preimages[v] lists the w' that
    // map to v; in_image marks the current image.
    let mut target: BTreeMap<VertexId, VertexId> = w.iter().map(|v| (v, v)).collect();
    let mut preimages: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    let mut in_image = vec![false; n];
    for v in w.iter() {
        preimages[v.0].push(v);
        in_image[v.0] = true;
    }
    let mut moves = Vec::new();

    let mut ball = vec![false; n];
    let mut comp = vec![0usize; n];
    let mut queue = VecDeque::new();

    for &v in tree.postorder() {
        if v == root {
            continue; // the root's fail never moves
        }
        // Component orders for v's subtree against the image restricted to
        // the subtree, excluding v itself.
        ball.fill(false);
        let sources = tree
            .subtree(v)
            .iter()
            .copied()
            .filter(|&u| u != v && in_image[u.0]);
        tree.graph()
            .fill_ball_mask(sources, ell, &mut ball, &mut queue);
        tree.comp_orders_in_subtree(v, &ball, &mut comp);

        let target_depth = tree.depth(v) + ell;
        let all_small = tree
            .subtree(v)
            .iter()
            .all(|&u| tree.depth(u) != target_depth || comp[u.0] < k);
        if !all_small {
            continue;
        }

        let moved = std::mem::take(&mut preimages[v.0]);
        if moved.is_empty() {
            continue;
        }
        let parent = tree.parent(v).expect("non-root vertex has a parent");
        for &w_member in &moved {
            target.insert(w_member, parent);
        }
        in_image[v.0] = false;
        in_image[parent.0] = true;
        moves.push(MoveUp {
            vertex: v,
            parent,
            moved: moved.clone(),
        });
        preimages[parent.0].extend(moved);
    }

    Ok(FailMapping {
        entries: target,
        moves,
    })
}

/// Checks a mapping run against a solver result: the image must still be a
/// failure set and must sit between the solver's set and that set plus the
/// root, which forces `|solver set| <= |w|`.
#[derive(Clone, Debug)]
pub struct MappingReport {
    pub mapping: FailMapping,
    pub image_is_failure_set: bool,
    /// solver set ⊆ image
    pub lower_bound_holds: bool,
    /// image ⊆ solver set ∪ {root}
    pub upper_bound_holds: bool,
    /// |solver set| <= |w|
    pub cardinality_holds: bool,
    /// The root showed up in the image without being selected by the solver.
    /// Recorded as an observation, never a failure.
    pub root_surplus: bool,
    pub violations: Vec<String>,
}

impl MappingReport {
    pub fn all_hold(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Builds the mapping for failure set `w` and verifies it against
/// `solver_set`, the selection produced for the same root. Errors when `w`
/// is not actually a failure set.
pub fn check_mapping_lemmas(
    inst: &Instance,
    root: VertexId,
    w: &FailureSet,
    solver_set: &FailureSet,
) -> Result<MappingReport> {
    if !inst.is_failure_set(w) {
        let labels = w.labels(inst.graph()).join(" ");
        return Err(Error::NotAFailureSet(format!("{{{labels}}}")));
    }
    let mapping = build_mapping(inst, root, w)?;
    let image = mapping.image();
    let g = inst.graph();
    let mut violations = Vec::new();

    let image_is_failure_set = inst.is_failure_set(&image);
    if !image_is_failure_set {
        let surviving = g.surviving_components(&image, inst.ell());
        let big = surviving.iter().find(|c| c.len() >= inst.k());
        violations.push(format!(
            "image {{{}}} is not a failure set; surviving component {:?}",
            image.labels(g).join(" "),
            big.map(|c| c.iter().map(|&v| g.label(v)).collect::<Vec<_>>())
        ));
    }

    let lower_bound_holds = solver_set.is_subset_of(&image);
    if !lower_bound_holds {
        violations.push(format!(
            "solver set {{{}}} not contained in image {{{}}}",
            solver_set.labels(g).join(" "),
            image.labels(g).join(" ")
        ));
    }

    let mut allowed = solver_set.clone();
    allowed.insert(root);
    let upper_bound_holds = image.is_subset_of(&allowed);
    if !upper_bound_holds {
        violations.push(format!(
            "image {{{}}} escapes solver set plus root {{{}}}",
            image.labels(g).join(" "),
            allowed.labels(g).join(" ")
        ));
    }

    let cardinality_holds = solver_set.len() <= w.len();
    if !cardinality_holds {
        violations.push(format!(
            "solver set has {} vertices but candidate only {}",
            solver_set.len(),
            w.len()
        ));
    }

    let root_surplus = image.contains(root) && !solver_set.contains(root);

    Ok(MappingReport {
        mapping,
        image_is_failure_set,
        lower_bound_holds,
        upper_bound_holds,
        cardinality_holds,
        root_surplus,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen;
    use crate::solver::solve;

    const DEMO: &str = "\
a a²
a ab
a ac
a² a³
a² a²b
ab aba
aba aba²
";

    fn demo_instance(k: usize, ell: usize) -> Instance {
        Instance::new(Graph::from_edge_list(DEMO).unwrap(), k, ell).unwrap()
    }

    #[test]
    fn oracle_matches_the_demo_tree() {
        let inst = demo_instance(1, 1);
        let result = brute_force_minimum(&inst).unwrap();
        assert_eq!(result.minimum, 3);
        assert!(inst.is_failure_set(&result.witness));
        assert_eq!(result.witness.len(), 3);
    }

    #[test]
    fn oracle_handles_cycles() {
        let c6 = Graph::from_edge_list("0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
        let inst = Instance::new(c6, 1, 1).unwrap();
        assert_eq!(brute_force_minimum(&inst).unwrap().minimum, 2);
    }

    #[test]
    fn oracle_minimum_is_positive_on_connected_graphs() {
        let g = gen::random_tree(8, 3).unwrap();
        let n = g.vertex_count();
        let inst = Instance::new(g, n, 1).unwrap();
        assert!(brute_force_minimum(&inst).unwrap().minimum >= 1);
    }

    #[test]
    fn oracle_refuses_above_cap() {
        let g = gen::path(22).unwrap();
        let inst = Instance::new(g, 1, 2).unwrap();
        match brute_force_minimum(&inst) {
            Err(Error::OracleCapExceeded { n: 22, cap }) => {
                assert_eq!(cap, DEFAULT_ORACLE_CAP)
            }
            other => panic!("expected cap refusal, got {other:?}"),
        }
        // ceil(22 / 5) vertices 2-cover a 22-path.
        assert_eq!(brute_force_minimum_with_cap(&inst, 22).unwrap().minimum, 5);
    }

    #[test]
    fn oracle_witness_is_smallest_bitmask() {
        let g = gen::star(5).unwrap();
        let inst = Instance::new(g, 1, 1).unwrap();
        let result = brute_force_minimum(&inst).unwrap();
        // The center is vertex 0, the numerically smallest singleton.
        assert_eq!(result.minimum, 1);
        assert!(result.witness.contains(VertexId(0)));
    }

    #[test]
    fn single_vertex_minimum_is_one() {
        let g = Graph::from_edge_list("v\n").unwrap();
        let inst = Instance::new(g, 1, 5).unwrap();
        assert_eq!(brute_force_minimum(&inst).unwrap().minimum, 1);
    }

    #[test]
    fn coverage_minimum_matches_path_formula() {
        // Distance-ell coverage of a path needs ceil(n / (2*ell + 1)).
        for n in 1..=12 {
            let g = gen::path(n).unwrap();
            let oracle = SubsetOracle::new(&g).unwrap();
            for ell in 0..=3usize {
                let expect = n.div_ceil(2 * ell + 1);
                assert_eq!(oracle.coverage_minimum(ell), expect, "n={n} ell={ell}");
            }
        }
    }

    #[test]
    fn passing_sets_stay_passing_under_supersets() {
        for seed in 0..20 {
            let g = gen::random_tree(9, 400 + seed).unwrap();
            let inst = Instance::new(g, 2, 1).unwrap();
            let witness = brute_force_minimum(&inst).unwrap().witness;
            assert!(inst.is_failure_set(&witness));
            for extra in inst.graph().vertices() {
                let mut bigger = witness.clone();
                bigger.insert(extra);
                assert!(inst.is_failure_set(&bigger), "seed {seed} extra {extra}");
            }
        }
    }

    #[test]
    fn empty_candidate_maps_to_nothing() {
        let inst = demo_instance(1, 1);
        let root = inst.graph().vertex("a").unwrap();
        let mapping = build_mapping(&inst, root, &FailureSet::new()).unwrap();
        assert!(mapping.image().is_empty());
        assert!(mapping.moves().is_empty());
    }

    #[test]
    fn full_candidate_lands_on_the_solver_set() {
        let inst = demo_instance(1, 1);
        let root = inst.graph().vertex("a").unwrap();
        let everything = FailureSet::all_vertices(inst.graph());
        let mapping = build_mapping(&inst, root, &everything).unwrap();
        let solver_set = solve(&inst, root).unwrap().failure_set;
        assert!(solver_set.is_subset_of(&mapping.image()));
        assert_eq!(mapping.image().labels(inst.graph()), ["a", "aba", "a²"]);
    }

    #[test]
    fn root_fail_never_moves() {
        let g = gen::star(5).unwrap();
        let inst = Instance::new(g, 1, 1).unwrap();
        let center = VertexId(0);
        let w: FailureSet = [center].into_iter().collect();
        let mapping = build_mapping(&inst, center, &w).unwrap();
        assert_eq!(mapping.get(center), Some(center));
    }

    #[test]
    fn lemma_checks_hold_for_full_candidate() {
        let inst = demo_instance(1, 1);
        let root = inst.graph().vertex("a").unwrap();
        let solver_set = solve(&inst, root).unwrap().failure_set;
        let w = FailureSet::all_vertices(inst.graph());
        let report = check_mapping_lemmas(&inst, root, &w, &solver_set).unwrap();
        assert!(report.all_hold(), "violations: {:?}", report.violations);
        assert_eq!(solver_set.len(), 3);
        assert!(w.len() >= solver_set.len());
    }

    #[test]
    fn lemma_checks_hold_for_oracle_witness() {
        let inst = demo_instance(1, 1);
        let root = inst.graph().vertex("a").unwrap();
        let solver_set = solve(&inst, root).unwrap().failure_set;
        let witness = brute_force_minimum(&inst).unwrap().witness;
        let report = check_mapping_lemmas(&inst, root, &witness, &solver_set).unwrap();
        assert!(report.all_hold(), "violations: {:?}", report.violations);
        assert_eq!(witness.len(), solver_set.len());
    }

    #[test]
    fn lemma_check_rejects_non_failure_candidates() {
        let inst = demo_instance(1, 1);
        let root = inst.graph().vertex("a").unwrap();
        let solver_set = solve(&inst, root).unwrap().failure_set;
        let w: FailureSet = [inst.graph().vertex("a²").unwrap()].into_iter().collect();
        assert!(matches!(
            check_mapping_lemmas(&inst, root, &w, &solver_set),
            Err(Error::NotAFailureSet(_))
        ));
    }
}
