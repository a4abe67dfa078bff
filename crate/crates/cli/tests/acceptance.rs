//! Acceptance suite. Each criterion runs on its own thread; results print in
//! order, one line each, and any failure makes the target exit non-zero.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use incidence_cli::{run, EXIT_FAILURE, EXIT_OK};
use incidence_core::acyclicity::{is_alpha_acyclic, is_alpha_acyclic_brute, linear_forest_test};
use incidence_core::bounds::{eval_w, poly_bound, poly_bound_collected, zeta_sum_audit};
use incidence_core::coloring::{
    clique_lower_bound, exact_chromatic, greedy_color, verify_incidence, ExactOptions, GreedyOrder, IncidenceColoring,
    StrongEdgeColoring,
};
use incidence_core::completion::{check_completion, complete, projected_incidences, DEFAULT_COMPLETION_CAP};
use incidence_core::generators::{
    gen_acyclic_linear, gen_acyclic_linear_uniform, gen_arbitrary, gen_biregular_k2t1_free, gen_linear,
    gen_quasi_linear, gen_quasi_linear_with, random_tree, rng, QuasiLinearParams,
};
use incidence_core::levi::{conflict_graph, d2_table};
use incidence_core::tree_color::{color_acyclic_linear, is_nested, nest_permute, RootedTree};
use incidence_core::{BipartiteGraph, Hypergraph, SimpleGraph};
use rand::seq::SliceRandom;
use rand::Rng;

/// What a criterion found: a summary, or the first problem.
type Verdict = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    body: fn() -> Verdict,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "incidence coloring equals strong edge coloring of the Levi graph",
            limit: secs(300),
            body: c1_equivalence,
        },
        Criterion {
            id: 2,
            name: "uniform acyclic linear instances are tight at Δ+k−1",
            limit: secs(600),
            body: c2_sharpness,
        },
        Criterion {
            id: 3,
            name: "tree method stays within Δ+r−1",
            limit: secs(120),
            body: c3_tree_bound,
        },
        Criterion {
            id: 4,
            name: "greedy within 2rΔ, conflict degree within 2rΔ−r−Δ",
            limit: secs(120),
            body: c4_greedy,
        },
        Criterion {
            id: 5,
            name: "ζ-sum audit on biregular K_{2,t+1}-free graphs",
            limit: secs(600),
            body: c5_zeta,
        },
        Criterion {
            id: 6,
            name: "uniform regular completion checks",
            limit: secs(300),
            body: c6_completion,
        },
        Criterion {
            id: 7,
            name: "GYO against the acyclicity oracles",
            limit: secs(600),
            body: c7_gyo,
        },
        Criterion {
            id: 8,
            name: "nesting permutation on colored trees",
            limit: secs(60),
            body: c8_nesting,
        },
        Criterion {
            id: 9,
            name: "bound formula fidelity",
            limit: secs(1),
            body: c9_formulas,
        },
        Criterion {
            id: 10,
            name: "verify accepts every color method and catches tampering",
            limit: secs(60),
            body: c10_end_to_end,
        },
    ];
    let results: Vec<(Verdict, Duration)> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|c| {
                let body = c.body;
                s.spawn(move || {
                    let start = Instant::now();
                    let verdict = std::panic::catch_unwind(body).unwrap_or_else(|_| Err("panicked".to_string()));
                    (verdict, start.elapsed())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut failed = 0;
    for (c, (verdict, elapsed)) in criteria.iter().zip(results) {
        let verdict = verdict.and_then(|msg| {
            if elapsed > c.limit {
                Err(format!("{msg}; took {elapsed:.1?}, limit {:?}", c.limit))
            } else {
                Ok(msg)
            }
        });
        match verdict {
            Ok(msg) => println!("PASS criterion {:>2}: {} [{msg}] ({elapsed:.2?})", c.id, c.name),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {} [{msg}] ({elapsed:.2?})", c.id, c.name);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn exact_chi(h: &Hypergraph) -> Result<usize, String> {
    exact_chromatic(h, ExactOptions::default())
        .map_err(|e| e.to_string())?
        .chi()
        .ok_or_else(|| "exact solver ran out of budget".to_string())
}

fn c1_equivalence() -> Verdict {
    let check = |h: &Hypergraph| -> Result<(), String> {
        let brute = common::brute_incidence_chi(h);
        let square = common::levi_square_adjacency(h);
        let strong = common::brute_chromatic(square.len(), &square);
        let exact = if h.edge_count() == 0 { 0 } else { exact_chi(h)? };
        ensure!(
            brute == exact && exact == strong,
            "{h:?}: brute {brute}, exact {exact}, strong {strong}"
        );
        Ok(())
    };
    let families = common::nonisomorphic_families(4, 3);
    for masks in &families {
        check(&common::from_masks(4, masks))?;
    }
    let mut random = 0;
    let mut seed = 0;
    while random < 200 {
        seed += 1;
        let mut r = rng(seed);
        let n = r.gen_range(2..=6);
        let m = r.gen_range(1..=4);
        let Ok(h) = gen_arbitrary(n, m, 4, seed) else { continue };
        if h.incidence_count() > 12 {
            continue;
        }
        check(&h)?;
        random += 1;
    }
    Ok(format!("{} classes, {random} random", families.len()))
}

fn c2_sharpness() -> Verdict {
    let mut count = 0;
    let mut seed = 0;
    while count < 100 {
        seed += 1;
        let k = [2, 3, 4][count % 3];
        let delta_cap = 2 + count % 4;
        let mut r = rng(seed);
        let m = r.gen_range(1..=40 / k);
        let h = gen_acyclic_linear_uniform(m, k, delta_cap, seed).map_err(|e| e.to_string())?;
        let d = h.max_degree();
        if !(2..=5).contains(&d) || h.incidence_count() > 40 {
            continue;
        }
        let tree = color_acyclic_linear(&h).map_err(|e| e.to_string())?;
        let target = d + k - 1;
        ensure!(
            tree.coloring.palette() <= target,
            "seed {seed}: tree palette {} > {target}",
            tree.coloring.palette()
        );
        let clique = clique_lower_bound(&h).map_err(|e| e.to_string())?.bound;
        let exact = exact_chi(&h)?;
        ensure!(
            exact == target && clique == target,
            "seed {seed}: exact {exact}, clique {clique}, Δ+k−1 {target}"
        );
        count += 1;
    }
    Ok(format!("{count} instances"))
}

fn c3_tree_bound() -> Verdict {
    for seed in 0..500u64 {
        let mut r = rng(seed);
        let m = r.gen_range(1..=30);
        let max_r = r.gen_range(2..=5);
        let max_d = r.gen_range(2..=5);
        let h = gen_acyclic_linear(m, max_r, max_d, seed).map_err(|e| e.to_string())?;
        let tree = color_acyclic_linear(&h).map_err(|e| e.to_string())?;
        let bound = h.max_degree() + h.rank() - 1;
        ensure!(
            tree.coloring.palette() <= bound,
            "seed {seed}: palette {} > {bound}",
            tree.coloring.palette()
        );
        let v = verify_incidence(&h, &tree.coloring).map_err(|e| e.to_string())?;
        ensure!(v.is_empty(), "seed {seed}: {} violations", v.len());
    }
    Ok("500 instances".into())
}

fn c4_greedy() -> Verdict {
    let mut count = 0;
    let mut seed = 0u64;
    while count < 500 {
        seed += 1;
        let made = match seed % 4 {
            0 => gen_arbitrary(10, 8, 5, seed),
            1 => gen_linear(12, 8, 3, seed),
            2 => gen_quasi_linear(10, 8, 4, 2, seed),
            _ => gen_acyclic_linear(10, 4, 4, seed),
        };
        let Ok(h) = made else { continue };
        let (r, d) = (h.rank(), h.max_degree());
        for order in [GreedyOrder::Canonical, GreedyOrder::LeviBfs] {
            let c = greedy_color(&h, &order).map_err(|e| e.to_string())?;
            ensure!(
                c.palette() <= 2 * r * d,
                "seed {seed}: greedy {} > 2rΔ {}",
                c.palette(),
                2 * r * d
            );
            ensure!(
                verify_incidence(&h, &c).map_err(|e| e.to_string())?.is_empty(),
                "seed {seed}: improper"
            );
        }
        let cd = conflict_graph(&h).graph.max_degree();
        ensure!(cd <= 2 * r * d - r - d, "seed {seed}: conflict degree {cd}");
        count += 1;
    }
    Ok(format!("{count} instances"))
}

fn c5_zeta() -> Verdict {
    let c6 = BipartiteGraph::parse("parts: u0 u1 u2\nu0 v0\nu0 v1\nu1 v1\nu1 v2\nu2 v2\nu2 v0\n")
        .map_err(|e| e.to_string())?;
    let audit = zeta_sum_audit(&c6, 1).map_err(|e| e.to_string())?;
    ensure!(audit.per_edge.iter().all(|e| e.slack == 0), "C6 slack not zero");
    ensure!(audit.identity_holds(), "C6 identity");
    // (a, b, n_u, t)
    let params = [
        (2, 2, 6, 1),
        (2, 3, 9, 1),
        (3, 2, 6, 1),
        (3, 3, 9, 1),
        (3, 3, 12, 1),
        (3, 3, 8, 2),
        (4, 4, 13, 1),
        (4, 4, 10, 2),
        (4, 2, 6, 1),
        (5, 5, 12, 2),
        (6, 6, 14, 2),
        (6, 3, 8, 2),
    ];
    let mut audited = 0;
    let mut failures = 0;
    let mut seed = 0u64;
    while audited < 240 && seed < 5_000 {
        let (a, b, n_u, t) = params[seed as usize % params.len()];
        seed += 1;
        let sample = match gen_biregular_k2t1_free(a, b, n_u, t, seed, 20_000) {
            Ok(s) => s,
            Err(e) if e.is_resource_limit() => {
                failures += 1;
                continue;
            }
            Err(e) => return Err(e.to_string()),
        };
        let audit = zeta_sum_audit(&sample.graph, t).map_err(|e| e.to_string())?;
        ensure!(audit.all_within_bound(), "({a},{b},{t}) seed {seed}: bound exceeded");
        ensure!(audit.identity_holds(), "({a},{b},{t}) seed {seed}: identity fails");
        let bound = poly_bound(a as i64, b as i64, t as i64).map_err(|e| e.to_string())?;
        ensure!(
            audit.per_edge.iter().all(|e| (e.zeta_sum as i128) <= bound),
            "recomputed bound"
        );
        audited += 1;
    }
    ensure!(
        audited >= 200,
        "only {audited} instances generated ({failures} generator failures)"
    );
    Ok(format!("C6 + {audited} instances, {failures} generator failures"))
}

fn c6_completion() -> Verdict {
    let mut count = 0;
    let mut skipped = 0;
    let mut seed = 0u64;
    while count < 100 {
        seed += 1;
        let mut r = rng(seed);
        let t = r.gen_range(1..=2);
        let p = QuasiLinearParams {
            n_vertices: r.gen_range(4..=9),
            n_edges: r.gen_range(2..=6),
            min_size: 2,
            max_size: r.gen_range(2..=4),
            t,
            max_degree: Some(4),
            restarts: 500,
        };
        let Ok(h) = gen_quasi_linear_with(&p, seed) else {
            continue;
        };
        let under_cap = projected_incidences(&h)
            .map(|n| n <= DEFAULT_COMPLETION_CAP)
            .unwrap_or(false);
        if !under_cap {
            skipped += 1;
            continue;
        }
        let (star, emb) = complete(&h, DEFAULT_COMPLETION_CAP).map_err(|e| format!("seed {seed}: {e}"))?;
        let report = check_completion(&h, &star, &emb);
        ensure!(report.all_passed(), "seed {seed}:\n{report}");
        count += 1;
    }
    Ok(format!("{count} instances, {skipped} over cap"))
}

fn c7_gyo() -> Verdict {
    let mut exhaustive = 0;
    for n in 1..=5 {
        for masks in common::all_families(n, 4) {
            let h = common::from_masks(n, &masks);
            let gyo = is_alpha_acyclic(&h);
            let brute = is_alpha_acyclic_brute(&h, 12).map_err(|e| e.to_string())?;
            ensure!(gyo == brute, "{masks:?} on {n}: gyo {gyo}, brute {brute}");
            ensure!(
                gyo == common::join_tree_acyclic(&h),
                "{masks:?} on {n}: join tree disagrees"
            );
            exhaustive += 1;
        }
    }
    for seed in 0..500u64 {
        let mut r = rng(seed);
        let n = r.gen_range(2..=8);
        let m = r.gen_range(1..=7).min((1 << n) - 1);
        let h = gen_arbitrary(n, m, n.min(5), seed).map_err(|e| e.to_string())?;
        let gyo = is_alpha_acyclic(&h);
        ensure!(
            gyo == is_alpha_acyclic_brute(&h, 12).map_err(|e| e.to_string())?,
            "random seed {seed}"
        );
        ensure!(gyo == common::join_tree_acyclic(&h), "random seed {seed}: join tree");
    }
    let mut linear = 0;
    let mut seed = 0u64;
    while linear < 500 {
        seed += 1;
        let h = if seed.is_multiple_of(2) {
            gen_linear(8, 1 + (seed % 7) as usize, 2 + (seed % 2) as usize, seed)
        } else {
            gen_acyclic_linear(1 + (seed % 9) as usize, 3, 3, seed)
        };
        let Ok(h) = h else { continue };
        let forest = linear_forest_test(&h).map_err(|e| e.to_string())?;
        ensure!(forest == is_alpha_acyclic(&h), "linear seed {seed}");
        ensure!(forest == common::join_tree_acyclic(&h), "linear seed {seed}: join tree");
        linear += 1;
    }
    for seed in 0..1000u64 {
        let mut r = rng(seed);
        let h = gen_acyclic_linear(r.gen_range(1..=12), 4, 4, seed).map_err(|e| e.to_string())?;
        let sub = if r.gen_bool(0.5) {
            h.delete_edge(r.gen_range(0..h.edge_count()))
        } else {
            h.delete_vertex(r.gen_range(0..h.vertex_count()))
        }
        .map_err(|e| e.to_string())?;
        ensure!(sub.linearity_t() <= 1 && is_alpha_acyclic(&sub), "deletion seed {seed}");
    }
    Ok(format!(
        "{exhaustive} exhaustive, 500 random, {linear} linear, 1000 deletions"
    ))
}

fn random_strong_coloring(g: &SimpleGraph, r: &mut impl Rng) -> StrongEdgeColoring {
    let near = d2_table(g);
    let cap = near.iter().map(Vec::len).max().unwrap_or(0) + 1 + r.gen_range(0..3);
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.shuffle(r);
    let mut colors = vec![0; g.edge_count()];
    for e in order {
        let free: Vec<usize> = (1..=cap).filter(|c| near[e].iter().all(|&f| colors[f] != *c)).collect();
        colors[e] = *free.choose(r).unwrap();
    }
    StrongEdgeColoring::new(g, colors, Some(cap)).unwrap()
}

fn c8_nesting() -> Verdict {
    let mut swaps = 0;
    for seed in 0..200u64 {
        let mut r = rng(seed);
        let n = r.gen_range(2..=31);
        let tree = SimpleGraph::new(n, random_tree(n, &mut r)).map_err(|e| e.to_string())?;
        let c = random_strong_coloring(&tree, &mut r);
        let root = r.gen_range(0..n);
        let t = RootedTree::new(tree, root).map_err(|e| e.to_string())?;
        let out = nest_permute(&t, &c).map_err(|e| e.to_string())?;
        let g = t.graph();
        ensure!(
            incidence_core::coloring::verify_strong_edge(g, &out.coloring)
                .map_err(|e| e.to_string())?
                .is_empty(),
            "seed {seed}: improper output"
        );
        ensure!(out.coloring.palette() == c.palette(), "seed {seed}: palette changed");
        ensure!(
            out.coloring.colors().iter().all(|&x| x >= 1 && x <= c.palette()),
            "seed {seed}: color out of range"
        );
        ensure!(
            is_nested(g, out.coloring.colors(), root, t.children(root)),
            "seed {seed}: not nested at root"
        );
        swaps += out.swaps.len();
    }
    Ok(format!("200 trees, {swaps} swaps"))
}

fn c9_formulas() -> Verdict {
    let reference = |k: f64, t: f64| {
        let x = (4.0 * k - 3.0) * t / (2.0 * k - 1.0).powi(2);
        (1.0 + x) + (1.0 - x).powf(1.5) / 3.0
    };
    let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b.abs().max(1.0);
    let w31 = eval_w(3, 1).map_err(|e| e.to_string())?;
    ensure!((1.5306..=1.5310).contains(&w31), "W(3,1) = {w31}");
    ensure!(
        close(w31, reference(3.0, 1.0)),
        "W(3,1) = {w31} vs {}",
        reference(3.0, 1.0)
    );
    let mut prev = f64::INFINITY;
    for k in 3..=100u64 {
        let w = eval_w(k, 1).map_err(|e| e.to_string())?;
        ensure!(close(w, reference(k as f64, 1.0)), "W({k},1) = {w}");
        ensure!(w < prev, "W not decreasing at k = {k}");
        prev = w;
    }
    let big = eval_w(1_000_000, 1).map_err(|e| e.to_string())?;
    ensure!((big - 4.0 / 3.0).abs() <= 2e-3, "W(10^6,1) = {big}");
    for a in 1..=20 {
        for b in 1..=20 {
            for t in 1..=20 {
                let four = poly_bound(a, b, t).map_err(|e| e.to_string())?;
                ensure!(four == poly_bound_collected(a, b, t), "polynomial at ({a},{b},{t})");
            }
        }
    }
    let mut note = String::new();
    let _ = write!(note, "W(3,1) = {w31:.6}, W(10^6,1) = {big:.6}");
    Ok(note)
}

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "hg"))
        .collect();
    files.sort();
    files
}

fn cli(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("incidence").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, String::from_utf8(out).unwrap())
}

fn c10_end_to_end() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut colored = 0;
    let mut tampered = 0;
    for file in fixtures() {
        let path = file.to_str().unwrap();
        let h = Hypergraph::parse(&std::fs::read_to_string(&file).unwrap()).map_err(|e| e.to_string())?;
        let tree_applies = h.linearity_t() <= 1 && is_alpha_acyclic(&h);
        let neighbors = conflict_graph(&h).graph;
        for method in ["greedy", "exact", "tree"] {
            let col = dir.path().join("c.col");
            let col_path = col.to_str().unwrap();
            let (code, _) = cli(&["color", path, "--method", method, "--out", col_path]);
            if method == "tree" && !tree_applies {
                ensure!(code == EXIT_FAILURE, "{path}: tree accepted a non-acyclic input");
                continue;
            }
            ensure!(code == EXIT_OK, "{path} {method}: exit {code}");
            let (code, out) = cli(&["verify", path, col_path]);
            ensure!(code == EXIT_OK, "{path} {method}: verify rejected its output: {out}");
            colored += 1;
            let text = std::fs::read_to_string(&col).unwrap();
            let c = IncidenceColoring::parse(&h, &text).map_err(|e| e.to_string())?;
            for i in 0..h.incidence_count() {
                let Some(&j) = neighbors.neighbors(i).first() else {
                    continue;
                };
                let mut colors = c.colors().to_vec();
                colors[i] = colors[j];
                let bad = IncidenceColoring::from_colors(&h, colors, Some(c.palette())).map_err(|e| e.to_string())?;
                std::fs::write(&col, bad.render(&h)).unwrap();
                let (code, _) = cli(&["verify", path, col_path]);
                ensure!(code == EXIT_FAILURE, "{path} {method}: tampered incidence {i} accepted");
                tampered += 1;
            }
        }
    }
    Ok(format!("{colored} colorings, {tampered} tamperings caught"))
}
