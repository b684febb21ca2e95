//! The `props` subcommand: checks the structural laws of the connectivity
//! number over generated instances and reports pass/fail counts.
//!
//! Laws covered: the minimum never grows when the component threshold or
//! the coverage distance is relaxed; the unit-threshold case equals plain
//! distance coverage; one failure suffices when the distance reaches the
//! diameter; and a forest's minimum is the componentwise sum, agreeing with
//! the whole-forest brute force.

use clap::Args;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use failset::gen::{self, Family, GenSpec};
use failset::graph::{Graph, VertexId};
use failset::solver::{solve_forest, solve_on_tree};
use failset::tree::RootedTree;
use failset::verify::SubsetOracle;

use crate::{fail, Format};

#[derive(Args)]
pub struct PropsArgs {
    #[arg(long, default_value_t = 0x7072_6f70)]
    seed: u64,
    /// Number of random trees in the default sampling mode
    #[arg(long, default_value_t = 120)]
    count: usize,
    /// Check every labeled tree up to --n-max instead of sampling
    #[arg(long)]
    exhaustive: bool,
    /// Largest tree size for --exhaustive (capped at 9; 8 and 9 take a
    /// while on one core)
    #[arg(long, default_value_t = 6)]
    n_max: usize,
    /// Check one named family across sizes instead of sampling
    #[arg(long)]
    family: Option<String>,
    /// Size or inclusive size range for --family, e.g. `12` or `1..15`
    #[arg(long)]
    n: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

const MAX_ELL: usize = 3;

struct Tally {
    name: &'static str,
    checks: u64,
    violations: u64,
    first_violation: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            checks: 0,
            violations: 0,
            first_violation: None,
        }
    }

    fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations += 1;
            if self.first_violation.is_none() {
                self.first_violation = Some(detail());
            }
        }
    }
}

struct Suite {
    threshold: Tally,
    distance: Tally,
    coverage: Tally,
    diameter: Tally,
    forest: Tally,
}

impl Suite {
    fn new() -> Self {
        Suite {
            threshold: Tally::new("threshold-monotonicity"),
            distance: Tally::new("distance-monotonicity"),
            coverage: Tally::new("coverage-at-unit-threshold"),
            diameter: Tally::new("diameter-rule"),
            forest: Tally::new("forest-sum"),
        }
    }

    fn tallies(&self) -> [&Tally; 5] {
        [
            &self.threshold,
            &self.distance,
            &self.coverage,
            &self.diameter,
            &self.forest,
        ]
    }

    /// Runs every single-tree law against one graph.
    fn check_tree(&mut self, g: &Graph) {
        let n = g.vertex_count();
        let tree = RootedTree::new(g.clone(), VertexId(0)).expect("generated trees are valid");
        let lambda = |k: usize, ell: usize| {
            solve_on_tree(&tree, k, ell)
                .expect("solver accepts validated trees")
                .failure_set
                .len()
        };

        for ell in 0..=MAX_ELL {
            let sizes: Vec<usize> = (1..=n).map(|k| lambda(k, ell)).collect();
            self.threshold
                .record(sizes.windows(2).all(|w| w[1] <= w[0]), || {
                    format!("sizes by k at ell={ell}: {sizes:?}\n{}", g.to_edge_list())
                });
        }

        for k in [1, n.div_ceil(2), n] {
            let sizes: Vec<usize> = (0..=MAX_ELL + 1).map(|ell| lambda(k, ell)).collect();
            self.distance
                .record(sizes.windows(2).all(|w| w[1] <= w[0]), || {
                    format!("sizes by ell at k={k}: {sizes:?}\n{}", g.to_edge_list())
                });
        }

        if n <= 16 {
            let oracle = SubsetOracle::new(g).expect("small graphs fit the oracle");
            for ell in 0..=MAX_ELL {
                let mine = lambda(1, ell);
                let coverage = oracle.coverage_minimum(ell);
                self.coverage.record(mine == coverage, || {
                    format!(
                        "k=1 ell={ell}: solver {mine} vs coverage {coverage}\n{}",
                        g.to_edge_list()
                    )
                });
            }
        }

        let diam = g.diameter().expect("trees are connected");
        if diam > 0 && diam <= MAX_ELL {
            for ell in diam..=MAX_ELL {
                for k in [1, n] {
                    let size = lambda(k, ell);
                    self.diameter.record(size == 1, || {
                        format!(
                            "diam={diam} ell={ell} k={k}: got {size}, expected 1\n{}",
                            g.to_edge_list()
                        )
                    });
                }
            }
        }
    }

    fn check_forest(&mut self, g: &Graph, k: usize, ell: usize) {
        let whole = solve_forest(g, k, ell)
            .expect("generated forests are valid")
            .len();
        let mut componentwise = 0;
        for comp in g.connected_components() {
            let (sub, _) = g.induced_subgraph(&comp);
            let tree = RootedTree::new(sub, VertexId(0)).expect("components are trees");
            componentwise += solve_on_tree(&tree, k, ell)
                .expect("solver accepts components")
                .failure_set
                .len();
        }
        // The whole-forest brute force is only affordable at desk scale.
        let oracle = if g.vertex_count() <= 16 {
            SubsetOracle::new(g)
                .expect("small forests fit the oracle")
                .minimum(k, ell)
                .minimum
        } else {
            componentwise
        };
        self.forest
            .record(whole == componentwise && whole == oracle, || {
                format!(
                    "k={k} ell={ell}: forest {whole}, componentwise {componentwise}, oracle {oracle}\n{}",
                    g.to_edge_list()
                )
            });
    }
}

fn parse_sizes(spec: &str) -> Result<(usize, usize), failset::Error> {
    let bad = || failset::Error::InvalidInput(format!("invalid size range `{spec}`"));
    if let Some((a, b)) = spec.split_once("..") {
        let lo: usize = a.trim().parse().map_err(|_| bad())?;
        let hi: usize = b.trim().parse().map_err(|_| bad())?;
        if lo == 0 || hi < lo {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let n: usize = spec.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(bad());
        }
        Ok((n, n))
    }
}

pub fn run(args: &PropsArgs) -> u8 {
    let mut suite = Suite::new();
    let mut corpus_note;

    if let Some(family_name) = &args.family {
        let family: Family = match family_name.parse() {
            Ok(f) => f,
            Err(e) => return fail(&e),
        };
        let (lo, hi) = match parse_sizes(args.n.as_deref().unwrap_or("2..12")) {
            Ok(r) => r,
            Err(e) => return fail(&e),
        };
        corpus_note = format!("family {} sizes {lo}..{hi}", family.name());
        for n in lo..=hi {
            let spec = GenSpec {
                family,
                n,
                seed: args.seed,
            };
            match spec.build() {
                Ok(g) if g.is_connected() => suite.check_tree(&g),
                Ok(g) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(args.seed ^ n as u64);
                    let k = rng.gen_range(1..=n);
                    let ell = rng.gen_range(0..=MAX_ELL);
                    suite.check_forest(&g, k, ell);
                }
                Err(e) => return fail(&e),
            }
        }
    } else if args.exhaustive {
        let cap = args.n_max;
        corpus_note = format!("all labeled trees, n 1..{cap}");
        for n in 1..=cap {
            let count = match gen::labeled_tree_count(n) {
                Ok(c) => c,
                Err(e) => return fail(&e),
            };
            for index in 0..count {
                suite.check_tree(&gen::labeled_tree(n, index));
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
        corpus_note = format!("{} random trees", args.count);
        for _ in 0..args.count {
            let n = rng.gen_range(2..=12);
            let g = gen::random_tree(n, rng.gen()).expect("n >= 1");
            suite.check_tree(&g);
        }
        let forests = (args.count / 3).max(1);
        corpus_note.push_str(&format!(" + {forests} random forests"));
        for _ in 0..forests {
            let n = rng.gen_range(4..=13);
            let g = gen::random_forest(n, rng.gen()).expect("n >= 1");
            let k = rng.gen_range(1..=n);
            let ell = rng.gen_range(0..=MAX_ELL);
            suite.check_forest(&g, k, ell);
        }
    }

    let checks: u64 = suite.tallies().iter().map(|t| t.checks).sum();
    let violations: u64 = suite.tallies().iter().map(|t| t.violations).sum();

    match args.format {
        Format::Text => {
            for tally in suite.tallies() {
                println!(
                    "{:<28} {:>7} checks {:>4} violations",
                    tally.name, tally.checks, tally.violations
                );
            }
            if violations == 0 {
                println!("props PASS ({checks} checks over {corpus_note})");
            } else {
                println!("props FAIL ({violations} of {checks} checks)");
            }
        }
        Format::Json => {
            let rows: Vec<_> = suite
                .tallies()
                .iter()
                .map(|t| json!({"name": t.name, "checks": t.checks, "violations": t.violations}))
                .collect();
            println!(
                "{}",
                json!({
                    "pass": violations == 0,
                    "checks": checks,
                    "violations": violations,
                    "corpus": corpus_note,
                    "tallies": rows,
                })
            );
        }
    }

    if violations > 0 {
        for tally in suite.tallies() {
            if let Some(first) = &tally.first_violation {
                eprintln!("first {} violation:\n{first}", tally.name);
            }
        }
        return 1;
    }
    0
}
