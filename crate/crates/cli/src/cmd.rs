//! The solve/verify/oracle/map/gen subcommands.

use serde_json::json;

use failset::gen::{Family, GenSpec};
use failset::graph::{FailureSet, Graph, Instance, VertexId};
use failset::verify::DEFAULT_ORACLE_CAP;

use crate::{fail, parse_candidate_labels, read_input, Format};
use crate::{GenArgs, MapArgs, OracleArgs, SolveArgs, VerifyArgs};

fn load_graph(path: &str) -> Result<Graph, u8> {
    let text = read_input(path)?;
    Graph::from_edge_list(&text).map_err(|e| fail(&e))
}

fn load_candidates(g: &Graph, path: &str) -> Result<FailureSet, u8> {
    let text = read_input(path)?;
    let labels = parse_candidate_labels(&text).map_err(|e| fail(&e))?;
    FailureSet::from_labels(g, labels.iter().map(String::as_str)).map_err(|e| fail(&e))
}

fn resolve_root(g: &Graph, requested: &Option<String>) -> Result<VertexId, u8> {
    match requested {
        Some(label) => g.require_vertex(label).map_err(|e| fail(&e)),
        None => Ok(VertexId(0)),
    }
}

pub fn solve(args: &SolveArgs) -> u8 {
    let graph = match load_graph(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };

    // Connected input is solved as a rooted tree; anything else goes
    // through the forest path, where a root makes no sense.
    let (set, root) = if graph.is_connected() {
        let root = match resolve_root(&graph, &args.root) {
            Ok(r) => r,
            Err(code) => return code,
        };
        let inst = match Instance::new(graph.clone(), args.k, args.ell) {
            Ok(i) => i,
            Err(e) => return fail(&e),
        };
        match failset::solve(&inst, root) {
            Ok(result) => (result.failure_set, Some(root)),
            Err(e) => return fail(&e),
        }
    } else {
        if args.root.is_some() {
            eprintln!("error: --root needs connected input, and this graph is not connected");
            return 2;
        }
        match failset::solve_forest(&graph, args.k, args.ell) {
            Ok(set) => (set, None),
            Err(e) => return fail(&e),
        }
    };

    let labels = set.labels(&graph);
    let root_label = root.map(|r| graph.label(r).to_string());
    match args.format {
        Format::Text => {
            println!("lambda {}", labels.len());
            println!("root {}", root_label.as_deref().unwrap_or("-"));
            println!("failure_set {}", labels.join(" "));
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "lambda": labels.len(),
                    "failure_set": labels,
                    "root": root_label,
                    "k": args.k,
                    "ell": args.ell,
                })
            );
        }
    }

    if let Some(path) = &args.dot {
        match render_dot(&graph, &set, args.k, args.ell) {
            Ok(dot) => {
                if let Err(e) = std::fs::write(path, dot) {
                    eprintln!("error: cannot write `{}`: {e}", path.display());
                    return 2;
                }
            }
            Err(code) => return code,
        }
    }
    0
}

/// DOT rendering with the selection, its neighborhood, and the surviving
/// components annotated, for external tools to draw.
fn render_dot(graph: &Graph, set: &FailureSet, k: usize, ell: usize) -> Result<String, u8> {
    let covered = graph.closed_neighborhood(set, ell).map_err(|e| fail(&e))?;
    let components = graph.surviving_components(set, ell);
    let mut component_of = vec![None; graph.vertex_count()];
    for (i, comp) in components.iter().enumerate() {
        for &v in comp {
            component_of[v.0] = Some((i, comp.len()));
        }
    }

    let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
    let mut out = String::new();
    out.push_str("graph failure_set {\n");
    out.push_str(&format!(
        "  // k={k} ell={ell} lambda={} survivors={}\n",
        set.len(),
        components.iter().map(Vec::len).sum::<usize>()
    ));
    for v in graph.vertices() {
        let name = quote(graph.label(v));
        if set.contains(v) {
            out.push_str(&format!(
                "  {name} [class=\"failed\" style=\"filled\" fillcolor=\"gray25\" fontcolor=\"white\"];\n"
            ));
        } else if covered.contains(v) {
            out.push_str(&format!(
                "  {name} [class=\"covered\" style=\"filled\" fillcolor=\"gray85\"];\n"
            ));
        } else {
            let (i, order) = component_of[v.0].expect("survivor belongs to a component");
            out.push_str(&format!(
                "  {name} [class=\"surviving\" color=\"crimson\" tooltip=\"component {i}, order {order}\"];\n"
            ));
        }
    }
    for v in graph.vertices() {
        for &w in graph.neighbors(v) {
            if v < w {
                out.push_str(&format!(
                    "  {} -- {};\n",
                    quote(graph.label(v)),
                    quote(graph.label(w))
                ));
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

pub fn verify(args: &VerifyArgs) -> u8 {
    let graph = match load_graph(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let candidate = match load_candidates(&graph, &args.candidates) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let inst = match Instance::new(graph, args.k, args.ell) {
        Ok(i) => i,
        Err(e) => return fail(&e),
    };

    let surviving = inst.graph().surviving_components(&candidate, args.ell);
    let offender = surviving.iter().find(|c| c.len() >= args.k);
    match (args.format, offender) {
        (Format::Text, None) => {
            println!("VALID");
            0
        }
        (Format::Text, Some(comp)) => {
            let labels: Vec<&str> = comp.iter().map(|&v| inst.graph().label(v)).collect();
            println!(
                "INVALID: surviving component of order {} >= k={}: {}",
                comp.len(),
                args.k,
                labels.join(" ")
            );
            1
        }
        (Format::Json, offender) => {
            let component = offender.map(|comp| {
                let mut labels: Vec<&str> = comp.iter().map(|&v| inst.graph().label(v)).collect();
                labels.sort_unstable();
                labels
            });
            println!(
                "{}",
                json!({
                    "valid": offender.is_none(),
                    "component": component,
                    "order": offender.map(Vec::len),
                    "k": args.k,
                    "ell": args.ell,
                })
            );
            u8::from(offender.is_some())
        }
    }
}

pub fn oracle(args: &OracleArgs) -> u8 {
    let graph = match load_graph(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let n = graph.vertex_count();
    let inst = match Instance::new(graph, args.k, args.ell) {
        Ok(i) => i,
        Err(e) => return fail(&e),
    };

    let result = if args.force {
        if n > DEFAULT_ORACLE_CAP {
            eprintln!(
                "warning: {n} vertices exceeds the soft cap of {DEFAULT_ORACLE_CAP}; enumerating anyway"
            );
        }
        failset::brute_force_minimum_with_cap(&inst, n.max(DEFAULT_ORACLE_CAP))
    } else {
        failset::brute_force_minimum(&inst)
    };
    let result = match result {
        Ok(r) => r,
        Err(e) => return fail(&e),
    };

    let witness = result.witness.labels(inst.graph());
    match args.format {
        Format::Text => {
            println!("minimum {}", result.minimum);
            println!("witness {}", witness.join(" "));
            println!("subsets_examined {}", result.subsets_examined);
        }
        Format::Json => {
            println!(
                "{}",
                json!({
                    "minimum": result.minimum,
                    "witness": witness,
                    "subsets_examined": result.subsets_examined,
                    "k": args.k,
                    "ell": args.ell,
                })
            );
        }
    }
    0
}

pub fn map(args: &MapArgs) -> u8 {
    let graph = match load_graph(&args.input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let candidate = match load_candidates(&graph, &args.candidates) {
        Ok(c) => c,
        Err(code) => return code,
    };
    let root = match resolve_root(&graph, &args.root) {
        Ok(r) => r,
        Err(code) => return code,
    };
    let inst = match Instance::new(graph, args.k, args.ell) {
        Ok(i) => i,
        Err(e) => return fail(&e),
    };

    let solver_set = match failset::solve(&inst, root) {
        Ok(r) => r.failure_set,
        Err(e) => return fail(&e),
    };
    let is_failure = inst.is_failure_set(&candidate);

    // The relocation runs for any candidate; the guarantees are only
    // meaningful when the candidate actually fails the graph.
    let (mapping, report) = if is_failure {
        match failset::check_mapping_lemmas(&inst, root, &candidate, &solver_set) {
            Ok(report) => (report.mapping.clone(), Some(report)),
            Err(e) => return fail(&e),
        }
    } else {
        match failset::build_mapping(&inst, root, &candidate) {
            Ok(m) => (m, None),
            Err(e) => return fail(&e),
        }
    };

    let g = inst.graph();
    let mut rows: Vec<(String, String)> = mapping
        .entries()
        .map(|(w, t)| (g.label(w).to_string(), g.label(t).to_string()))
        .collect();
    rows.sort();

    match args.format {
        Format::Text => {
            println!("root {}", g.label(root));
            println!("candidate {}", candidate.labels(g).join(" "));
            println!("solver_set {}", solver_set.labels(g).join(" "));
            for (w, t) in &rows {
                println!("m {w} -> {t}");
            }
            println!("image {}", mapping.image().labels(g).join(" "));
            match &report {
                Some(r) => {
                    println!("image_is_failure_set {}", r.image_is_failure_set);
                    println!("solver_set_within_image {}", r.lower_bound_holds);
                    println!("image_within_solver_set_plus_root {}", r.upper_bound_holds);
                    println!(
                        "solver_set_no_larger_than_candidate {}",
                        r.cardinality_holds
                    );
                    if r.root_surplus {
                        println!("note root appears in the image without being selected");
                    }
                }
                None => println!("note candidate is not a failure set; guarantees not checked"),
            }
        }
        Format::Json => {
            let checks = report.as_ref().map(|r| {
                json!({
                    "image_is_failure_set": r.image_is_failure_set,
                    "solver_set_within_image": r.lower_bound_holds,
                    "image_within_solver_set_plus_root": r.upper_bound_holds,
                    "solver_set_no_larger_than_candidate": r.cardinality_holds,
                    "root_surplus": r.root_surplus,
                })
            });
            println!(
                "{}",
                json!({
                    "root": g.label(root),
                    "candidate": candidate.labels(g),
                    "solver_set": solver_set.labels(g),
                    "m": rows.iter().map(|(w, t)| json!([w, t])).collect::<Vec<_>>(),
                    "image": mapping.image().labels(g),
                    "checks": checks,
                })
            );
        }
    }

    match report {
        Some(r) if !r.all_hold() => 1,
        _ => 0,
    }
}

pub fn gen(args: &GenArgs) -> u8 {
    let family: Family = match args.family.parse() {
        Ok(f) => f,
        Err(e) => return fail(&e),
    };
    if family == Family::CompleteEnumeration {
        let trees = match failset::gen::enumerate_trees(args.n) {
            Ok(t) => t,
            Err(e) => return fail(&e),
        };
        for (i, tree) in trees.enumerate() {
            println!("# tree {i}");
            print!("{}", tree.to_edge_list());
            println!();
        }
        return 0;
    }
    let spec = GenSpec {
        family,
        n: args.n,
        seed: args.seed,
    };
    match spec.build() {
        Ok(g) => {
            print!("{}", g.to_edge_list());
            0
        }
        Err(e) => fail(&e),
    }
}
