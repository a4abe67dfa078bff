//! Seeded random instance generators. All randomness comes from
//! `ChaCha8Rng::seed_from_u64(seed)`, so equal arguments give equal output.

use std::collections::{BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::acyclicity::is_alpha_acyclic;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::levi::{biregular_profile, is_k2t1_free, BipartiteGraph};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

const TREE_TRIES: u64 = 200;

/// Uniform random labeled tree on `n` nodes, decoded from a random Prüfer
/// sequence.
pub fn random_tree(n: usize, rng: &mut impl Rng) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    prufer_decode(n, &code)
}

pub fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = leaves.pop_first().expect("a tree always has a leaf");
        edges.push((leaf, c));
        degree[c] -= 1;
        if degree[c] == 1 {
            leaves.insert(c);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    edges
}

/// Random alpha-acyclic linear hypergraph with `n_edge_nodes` edges, rank at
/// most `max_r` and maximum degree at most `max_delta`. It is connected.
/// Edges have at least two vertices when `max_r >= 2`.
pub fn gen_acyclic_linear(n_edge_nodes: usize, max_r: usize, max_delta: usize, seed: u64) -> Result<Hypergraph> {
    acyclic_linear(n_edge_nodes, max_r.min(2), max_r, max_delta, seed)
}

/// Like [`gen_acyclic_linear`] with every edge of size exactly `k`.
pub fn gen_acyclic_linear_uniform(n_edge_nodes: usize, k: usize, max_delta: usize, seed: u64) -> Result<Hypergraph> {
    acyclic_linear(n_edge_nodes, k, k, max_delta, seed)
}

fn acyclic_linear(n: usize, min_r: usize, max_r: usize, max_delta: usize, seed: u64) -> Result<Hypergraph> {
    if n == 0 || max_r == 0 || max_delta == 0 || min_r > max_r {
        return Err(Error::Infeasible(format!(
            "need n_edge_nodes, max_r, max_delta >= 1 (got {n}, {max_r}, {max_delta})"
        )));
    }
    if n > 1 && (max_r < 2 || max_delta < 2) {
        return Err(Error::Infeasible(
            "several edges need max_r >= 2 and max_delta >= 2 to be connected".into(),
        ));
    }
    let mut rng = rng(seed);
    for _ in 0..TREE_TRIES {
        let tree = random_tree(n, &mut rng);
        if let Some(h) = try_acyclic_linear(n, &tree, min_r, max_r, max_delta, &mut rng) {
            debug_assert!(h.is_linear() && is_alpha_acyclic(&h));
            return Ok(h);
        }
    }
    // tight caps almost never admit a uniform tree; grow one inside them
    let tree = capped_tree(n, max_r, max_delta, &mut rng);
    try_acyclic_linear(n, &tree, min_r, max_r, max_delta, &mut rng).ok_or_else(|| Error::GenerationFailed {
        tries: TREE_TRIES + 1,
        details: "every skeleton tree broke a degree cap".into(),
    })
}

/// Random tree rooted at 0 where every node keeps fewer children than the
/// caps can group: `(max_r - 1) * (max_delta - 1)`, one more slot at the root.
fn capped_tree(n: usize, max_r: usize, max_delta: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let room = |x: usize| (max_r - usize::from(x != 0)) * (max_delta - 1);
    let mut kids = vec![0usize; n];
    let mut open = vec![0usize];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for x in 1..n {
        let i = rng.gen_range(0..open.len());
        let p = open[i];
        edges.push((p, x));
        kids[p] += 1;
        if kids[p] == room(p) {
            open.swap_remove(i);
        }
        if room(x) > 0 {
            open.push(x);
        }
    }
    edges
}

fn try_acyclic_linear(
    n: usize,
    tree: &[(usize, usize)],
    min_r: usize,
    max_r: usize,
    max_delta: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Hypergraph> {
    // skeleton tree on edge-nodes, rooted at 0
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in tree {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut children = vec![Vec::new(); n];
    let mut order = vec![0];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        let x = order[i];
        i += 1;
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                children[x].push(y);
                order.push(y);
            }
        }
    }
    let per_vertex = max_delta - 1;
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut vertex_count = 0;
    // `order` is breadth-first, so each node's link vertex exists before
    // its own children are grouped
    for &x in &order {
        let link = usize::from(x != 0);
        let c = children[x].len();
        let lo_groups = c.div_ceil(per_vertex.max(1));
        let hi_groups = c.min(max_r - link);
        if lo_groups > hi_groups {
            return None;
        }
        let groups = if c == 0 {
            0
        } else {
            rng.gen_range(lo_groups..=hi_groups)
        };
        let mut kids = children[x].clone();
        kids.shuffle(rng);
        let mut sizes = vec![1usize; groups];
        for _ in groups..c {
            let open: Vec<usize> = (0..groups).filter(|&g| sizes[g] < per_vertex).collect();
            sizes[*open.choose(rng)?] += 1;
        }
        let mut next = kids.into_iter();
        for size in sizes {
            let v = vertex_count;
            vertex_count += 1;
            members[x].push(v);
            for child in next.by_ref().take(size) {
                members[child].push(v);
            }
        }
        let have = members[x].len();
        let target = rng.gen_range(min_r.max(have).max(1)..=max_r);
        for _ in have..target {
            members[x].push(vertex_count);
            vertex_count += 1;
        }
    }
    Some(relabel(vertex_count, members, rng))
}

/// Shuffles edge order, vertex labels and the order inside each edge.
fn relabel(vertex_count: usize, mut edges: Vec<Vec<usize>>, rng: &mut ChaCha8Rng) -> Hypergraph {
    let mut perm: Vec<usize> = (0..vertex_count).collect();
    perm.shuffle(rng);
    edges.shuffle(rng);
    for e in &mut edges {
        for v in e.iter_mut() {
            *v = perm[*v];
        }
        e.shuffle(rng);
    }
    let names = (0..vertex_count).map(|v| format!("v{v}")).collect();
    Hypergraph::from_indices(names, edges).expect("generated edges are distinct")
}

/// A sampled biregular graph and the number of configuration-model draws
/// it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiregularSample {
    pub graph: BipartiteGraph,
    pub tries: u64,
}

pub const DEFAULT_BIREGULAR_TRIES: u64 = 100_000;

/// `K_{2,t+1}`-free `(a, b)`-biregular bipartite graph with `n_u` part-U
/// nodes of degree `a` and `a * n_u / b` part-V nodes of degree `b`, by
/// stub matching with rejection.
pub fn gen_biregular_k2t1_free(
    a: usize,
    b: usize,
    n_u: usize,
    t: usize,
    seed: u64,
    max_tries: u64,
) -> Result<BiregularSample> {
    if a == 0 || b == 0 || n_u == 0 || t == 0 {
        return Err(Error::Infeasible("a, b, n_u and t must be positive".into()));
    }
    if !(a * n_u).is_multiple_of(b) {
        return Err(Error::Infeasible(format!(
            "a * n_u = {} is not divisible by b = {b}",
            a * n_u
        )));
    }
    let n_v = a * n_u / b;
    if a > n_v || b > n_u {
        return Err(Error::Infeasible(format!(
            "degrees ({a}, {b}) do not fit parts of size ({n_u}, {n_v})"
        )));
    }
    let mut rng = rng(seed);
    let u_stubs: Vec<usize> = (0..n_u).flat_map(|u| std::iter::repeat_n(u, a)).collect();
    let mut v_stubs: Vec<usize> = (0..n_v).flat_map(|v| std::iter::repeat_n(v, b)).collect();
    let (mut parallel, mut dense) = (0u64, 0u64);
    for tries in 1..=max_tries {
        v_stubs.shuffle(&mut rng);
        let mut seen = HashSet::with_capacity(u_stubs.len());
        let pairs: Vec<(usize, usize)> = u_stubs.iter().copied().zip(v_stubs.iter().copied()).collect();
        if !pairs.iter().all(|p| seen.insert(*p)) {
            parallel += 1;
            continue;
        }
        let graph = BipartiteGraph::new(
            (0..n_u).map(|i| format!("u{i}")).collect(),
            (0..n_v).map(|i| format!("v{i}")).collect(),
            &pairs,
        )?;
        if !is_k2t1_free(&graph, t) {
            dense += 1;
            continue;
        }
        debug_assert_eq!(biregular_profile(&graph), Some((a, b)));
        return Ok(BiregularSample { graph, tries });
    }
    Err(Error::GenerationFailed {
        tries: max_tries,
        details: format!(
            "{parallel} draws had parallel edges, {dense} contained K_{{2,{}}}",
            t + 1
        ),
    })
}

/// Parameters for random quasi-linear hypergraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiLinearParams {
    pub n_vertices: usize,
    pub n_edges: usize,
    pub min_size: usize,
    pub max_size: usize,
    pub t: usize,
    pub max_degree: Option<usize>,
    /// Full restarts before giving up.
    pub restarts: u64,
}

impl QuasiLinearParams {
    pub fn uniform(n_vertices: usize, n_edges: usize, k: usize, t: usize) -> Self {
        QuasiLinearParams {
            n_vertices,
            n_edges,
            min_size: k,
            max_size: k,
            t,
            max_degree: None,
            restarts: 20_000,
        }
    }
}

/// Random `k`-uniform hypergraph in which any two edges share at most one
/// vertex.
pub fn gen_linear(n_vertices: usize, n_edges: usize, k: usize, seed: u64) -> Result<Hypergraph> {
    let pairs = |x: usize| x * x.saturating_sub(1) / 2;
    if pairs(n_vertices) < n_edges * pairs(k) {
        return Err(Error::Infeasible(format!(
            "{n_edges} edges of size {k} need {} vertex pairs, only {} exist",
            n_edges * pairs(k),
            pairs(n_vertices)
        )));
    }
    gen_quasi_linear_with(&QuasiLinearParams::uniform(n_vertices, n_edges, k, 1), seed)
}

/// Random `k`-uniform `t`-quasi-linear hypergraph.
pub fn gen_quasi_linear(n_vertices: usize, n_edges: usize, k: usize, t: usize, seed: u64) -> Result<Hypergraph> {
    gen_quasi_linear_with(&QuasiLinearParams::uniform(n_vertices, n_edges, k, t), seed)
}

pub fn gen_quasi_linear_with(p: &QuasiLinearParams, seed: u64) -> Result<Hypergraph> {
    let pairs = |x: usize| x * x.saturating_sub(1) / 2;
    if p.t == 0 || p.min_size == 0 || p.min_size > p.max_size || p.max_size > p.n_vertices {
        return Err(Error::Infeasible(format!(
            "bad sizes {}..={} on {} vertices with t = {}",
            p.min_size, p.max_size, p.n_vertices, p.t
        )));
    }
    if pairs(p.n_vertices) * p.t < p.n_edges * pairs(p.min_size) {
        return Err(Error::Infeasible("not enough vertex pairs for the edges".into()));
    }
    if p.min_size == 1 && p.max_size == 1 && p.n_edges > p.n_vertices {
        return Err(Error::Infeasible("more singleton edges than vertices".into()));
    }
    let mut rng = rng(seed);
    for _ in 0..p.restarts.max(1) {
        if let Some(edges) = try_quasi_linear(p, &mut rng) {
            let names = (0..p.n_vertices).map(|v| format!("v{v}")).collect();
            let h = Hypergraph::from_indices(names, edges)?;
            debug_assert!(h.linearity_t() <= p.t);
            return Ok(h);
        }
    }
    Err(Error::GenerationFailed {
        tries: p.restarts.max(1),
        details: format!("could not place {} edges", p.n_edges),
    })
}

fn try_quasi_linear(p: &QuasiLinearParams, rng: &mut ChaCha8Rng) -> Option<Vec<Vec<usize>>> {
    const EDGE_TRIES: usize = 50;
    let n = p.n_vertices;
    let mut codegree = vec![vec![0usize; n]; n];
    let mut degree = vec![0usize; n];
    let mut member: Vec<Vec<bool>> = Vec::new();
    let mut edges: Vec<Vec<usize>> = Vec::new();
    let mut keys: HashSet<Vec<usize>> = HashSet::new();
    let mut order: Vec<usize> = (0..n).collect();
    while edges.len() < p.n_edges {
        let mut placed = false;
        for _ in 0..EDGE_TRIES {
            let size = rng.gen_range(p.min_size..=p.max_size);
            order.shuffle(rng);
            let mut edge: Vec<usize> = Vec::with_capacity(size);
            let mut overlap = vec![0usize; edges.len()];
            for &v in &order {
                if edge.len() == size {
                    break;
                }
                if p.max_degree.is_some_and(|d| degree[v] >= d) {
                    continue;
                }
                if edge.iter().any(|&u| codegree[u][v] >= p.t) {
                    continue;
                }
                if (0..edges.len()).any(|f| member[f][v] && overlap[f] >= p.t) {
                    continue;
                }
                for (f, m) in member.iter().enumerate() {
                    if m[v] {
                        overlap[f] += 1;
                    }
                }
                edge.push(v);
            }
            if edge.len() < size {
                continue;
            }
            let mut key = edge.clone();
            key.sort_unstable();
            if !keys.insert(key) {
                continue;
            }
            for (i, &u) in edge.iter().enumerate() {
                degree[u] += 1;
                for &w in &edge[i + 1..] {
                    codegree[u][w] += 1;
                    codegree[w][u] += 1;
                }
            }
            let mut m = vec![false; n];
            for &v in &edge {
                m[v] = true;
            }
            member.push(m);
            edges.push(edge);
            placed = true;
            break;
        }
        if !placed {
            return None;
        }
    }
    Some(edges)
}

/// Random hypergraph with distinct edges of sizes `1..=max_size`, no other
/// structure imposed.
pub fn gen_arbitrary(n_vertices: usize, n_edges: usize, max_size: usize, seed: u64) -> Result<Hypergraph> {
    let max_size = max_size.min(n_vertices);
    if n_vertices == 0 || max_size == 0 {
        return Err(Error::Infeasible("need at least one vertex and a positive size".into()));
    }
    let available: u128 = (1..=max_size).map(|s| binomial(n_vertices as u128, s as u128)).sum();
    if (n_edges as u128) > available {
        return Err(Error::Infeasible(format!("only {available} distinct edges exist")));
    }
    let mut rng = rng(seed);
    let mut keys = HashSet::new();
    let mut edges = Vec::with_capacity(n_edges);
    let mut order: Vec<usize> = (0..n_vertices).collect();
    let mut tries = 0u64;
    while edges.len() < n_edges {
        tries += 1;
        if tries > 1_000_000 {
            return Err(Error::GenerationFailed {
                tries,
                details: "too many duplicate edges".into(),
            });
        }
        let size = rng.gen_range(1..=max_size);
        order.shuffle(&mut rng);
        let edge: Vec<usize> = order[..size].to_vec();
        let mut key = edge.clone();
        key.sort_unstable();
        if keys.insert(key) {
            edges.push(edge);
        }
    }
    let names = (0..n_vertices).map(|v| format!("v{v}")).collect();
    Hypergraph::from_indices(names, edges)
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::levi::{levi_graph, max_codegree};

    #[test]
    fn prufer_examples() {
        assert_eq!(prufer_decode(2, &[]), vec![(0, 1)]);
        // star centered at 3
        assert_eq!(prufer_decode(4, &[3, 3]), vec![(0, 3), (1, 3), (2, 3)]);
        assert_eq!(prufer_decode(4, &[1, 2]), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn acyclic_linear_outputs_are_valid() {
        for seed in 0..200 {
            let h = gen_acyclic_linear(1 + (seed as usize % 9), 4, 3, seed).unwrap();
            assert!(h.is_linear(), "seed {seed}");
            assert!(is_alpha_acyclic(&h), "seed {seed}");
            assert!(levi_graph(&h).graph().is_forest());
            assert!(h.rank() <= 4 && h.max_degree() <= 3);
            assert_eq!(h.components().len(), 1);
        }
        assert_eq!(gen_acyclic_linear(1, 3, 2, 7).unwrap().edge_count(), 1);
        assert!(matches!(gen_acyclic_linear(3, 1, 3, 0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn uniform_variant() {
        for seed in 0..50 {
            let h = gen_acyclic_linear_uniform(6, 3, 4, seed).unwrap();
            assert!(h.edges().iter().all(|e| e.len() == 3));
            assert!(is_alpha_acyclic(&h) && h.is_linear());
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = gen_acyclic_linear(8, 4, 3, 42).unwrap().to_hg_string();
        let b = gen_acyclic_linear(8, 4, 3, 42).unwrap().to_hg_string();
        assert_eq!(a, b);
        let a = gen_linear(12, 8, 3, 5).unwrap().to_hg_string();
        assert_eq!(a, gen_linear(12, 8, 3, 5).unwrap().to_hg_string());
        let a = gen_biregular_k2t1_free(2, 2, 4, 1, 3, 1000).unwrap();
        assert_eq!(a, gen_biregular_k2t1_free(2, 2, 4, 1, 3, 1000).unwrap());
    }

    #[test]
    fn biregular_examples() {
        // on three plus three nodes, (2,2) without C4 is a six-cycle
        let s = gen_biregular_k2t1_free(2, 2, 3, 1, 0, 10_000).unwrap();
        assert_eq!(biregular_profile(&s.graph), Some((2, 2)));
        assert_eq!(max_codegree(&s.graph), 1);
        assert_eq!(s.graph.graph().edge_count(), 6);

        let s = gen_biregular_k2t1_free(3, 3, 9, 1, 1, DEFAULT_BIREGULAR_TRIES).unwrap();
        assert!(is_k2t1_free(&s.graph, 1));
        assert!(matches!(
            gen_biregular_k2t1_free(2, 3, 4, 1, 0, 10),
            Err(Error::Infeasible(_))
        ));
        // K_{2,2} is the only (2,2) graph on two plus two nodes
        assert!(matches!(
            gen_biregular_k2t1_free(2, 2, 2, 1, 0, 50),
            Err(Error::GenerationFailed { tries: 50, .. })
        ));
    }

    #[test]
    fn linear_examples() {
        let fano = gen_linear(7, 7, 3, 0).unwrap();
        assert_eq!(fano.edge_count(), 7);
        assert_eq!(fano.linearity_t(), 1);
        assert!((0..7).all(|v| fano.degree(v) == 3));
        let g = gen_linear(10, 12, 2, 1).unwrap();
        assert!(g.edges().iter().all(|e| e.len() == 2));
        assert!(matches!(gen_linear(7, 8, 3, 0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn quasi_linear_examples() {
        let h = gen_quasi_linear(8, 6, 4, 2, 0).unwrap();
        let report = h.structure_report().unwrap();
        assert!(report.linearity_t <= 2);
        assert_eq!(report.uniform_k, Some(4));
        for seed in 0..20 {
            let p = QuasiLinearParams {
                n_vertices: 9,
                n_edges: 6,
                min_size: 2,
                max_size: 4,
                t: 2,
                max_degree: Some(3),
                restarts: 1000,
            };
            let h = gen_quasi_linear_with(&p, seed).unwrap();
            assert!(h.linearity_t() <= 2 && h.max_degree() <= 3);
        }
    }

    #[test]
    fn arbitrary_examples() {
        let h = gen_arbitrary(4, 10, 3, 9).unwrap();
        assert_eq!(h.edge_count(), 10);
        assert!(h.rank() <= 3);
        assert!(gen_arbitrary(2, 4, 2, 0).is_err());
    }
}
