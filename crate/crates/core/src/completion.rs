//! Embedding a quasi-linear hypergraph into a uniform regular one with the
//! same rank, maximum degree and quasi-linearity parameter.

use std::collections::HashSet;
use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::levi::{biregular_profile, is_k2t1_free, levi_graph};

/// Where each vertex and edge of the source landed in the target. An edge
/// maps to a target edge containing the images of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

impl Embedding {
    pub fn identity(h: &Hypergraph) -> Self {
        Embedding {
            vertex_map: (0..h.vertex_count()).collect(),
            edge_map: (0..h.edge_count()).collect(),
        }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Embedding {
        Embedding {
            vertex_map: self.vertex_map.iter().map(|&v| next.vertex_map[v]).collect(),
            edge_map: self.edge_map.iter().map(|&e| next.edge_map[e]).collect(),
        }
    }

    /// Embedding file text: `vertex -> vertex` lines by name, then
    /// `edge -> edge` lines by index.
    pub fn render(&self, from: &Hypergraph, to: &Hypergraph) -> String {
        let mut out = String::new();
        for (v, &w) in self.vertex_map.iter().enumerate() {
            let _ = writeln!(out, "{} -> {}", from.name(v), to.name(w));
        }
        for (e, &f) in self.edge_map.iter().enumerate() {
            let _ = writeln!(out, "{e} -> {f}");
        }
        out
    }
}

fn fresh_name(taken: &HashSet<String>, base: String) -> String {
    let mut name = base;
    while taken.contains(&name) {
        name.insert(0, '_');
    }
    name
}

/// Grows every edge shorter than the rank with fresh degree-one vertices.
pub fn pad_uniform(h: &Hypergraph) -> Result<(Hypergraph, Embedding)> {
    let k = h.rank();
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if k < 2 {
        return Err(Error::Precondition("rank 1 hypergraphs are not completed".into()));
    }
    let mut names: Vec<String> = h.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut edges = Vec::with_capacity(h.edge_count());
    for (e, edge) in h.edges().iter().enumerate() {
        let mut grown = edge.clone();
        for j in 1..=k - edge.len() {
            let name = fresh_name(&taken, format!("_pad{e}_{j}"));
            taken.insert(name.clone());
            grown.push(names.len());
            names.push(name);
        }
        edges.push(grown);
    }
    let out = Hypergraph::from_indices(names, edges)?;
    Ok((out, Embedding::identity(h)))
}

fn require_uniform(h: &Hypergraph) -> Result<usize> {
    let k = h.rank();
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    if h.edges().iter().any(|e| e.len() != k) {
        return Err(Error::Precondition("hypergraph is not uniform".into()));
    }
    if k < 2 {
        return Err(Error::Precondition("rank 1 hypergraphs are not completed".into()));
    }
    Ok(k)
}

/// `k` disjoint copies of a `k`-uniform `h`, plus one edge across the copies
/// of each vertex below maximum degree. Copy `i` of vertex `x` is named
/// `x#i`; glue edges follow all copy edges. The embedding targets copy 1.
pub fn regularize_step(h: &Hypergraph) -> Result<(Hypergraph, Embedding)> {
    let k = require_uniform(h)?;
    let max = h.max_degree();
    let deficient: Vec<usize> = (0..h.vertex_count()).filter(|&v| h.degree(v) < max).collect();
    if deficient.is_empty() {
        return Err(Error::Precondition("hypergraph is already regular".into()));
    }
    let n = h.vertex_count();
    let mut names = Vec::with_capacity(n * k);
    for i in 1..=k {
        names.extend(h.names().iter().map(|x| format!("{x}#{i}")));
    }
    let mut edges = Vec::with_capacity(h.edge_count() * k + deficient.len());
    for i in 0..k {
        edges.extend(
            h.edges()
                .iter()
                .map(|e| e.iter().map(|&v| v + i * n).collect::<Vec<_>>()),
        );
    }
    for &x in &deficient {
        edges.push((0..k).map(|i| x + i * n).collect());
    }
    let out = Hypergraph::from_indices(names, edges)?;
    Ok((out, Embedding::identity(h)))
}

/// Incidence count of the completion of `h`, computed from the degree
/// histogram without building anything.
pub fn projected_incidences(h: &Hypergraph) -> Result<u128> {
    let k = h.rank();
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let max = h.max_degree();
    let mut hist = vec![0u128; max + 1];
    for v in 0..h.vertex_count() {
        hist[h.degree(v)] += 1;
    }
    // padding adds degree-one vertices
    let pads: usize = h.edges().iter().map(|e| k - e.len()).sum();
    hist[1] += pads as u128;
    let mut total = (k * h.edge_count()) as u128;
    let k = k as u128;
    while (0..max).any(|d| hist[d] > 0) {
        let deficient: u128 = hist[..max].iter().sum();
        total = total
            .checked_mul(k)
            .and_then(|t| t.checked_add(deficient * k))
            .unwrap_or(u128::MAX);
        let mut next = vec![0u128; max + 1];
        for d in 0..max {
            next[d + 1] = next[d + 1].saturating_add(hist[d].saturating_mul(k));
        }
        next[max] = next[max].saturating_add(hist[max].saturating_mul(k));
        hist = next;
        if total == u128::MAX {
            break;
        }
    }
    Ok(total)
}

pub const DEFAULT_COMPLETION_CAP: u128 = 1_000_000;

/// Pads to uniform, then regularizes until every degree is maximal.
pub fn complete(h: &Hypergraph, cap: u128) -> Result<(Hypergraph, Embedding)> {
    if h.edge_count() > 0 && h.rank() < 2 {
        return Err(Error::Precondition("rank 1 hypergraphs are not completed".into()));
    }
    let projected = projected_incidences(h)?;
    if projected > cap {
        return Err(Error::CapExceeded {
            what: "projected completion incidences",
            value: projected,
            cap,
        });
    }
    let (mut cur, mut emb) = pad_uniform(h)?;
    while cur.min_degree() < cur.max_degree() {
        let (next, step) = regularize_step(&cur)?;
        emb = emb.then(&step);
        cur = next;
    }
    Ok((cur, emb))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`check_completion`]; failures are listed, never thrown.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletionReport {
    pub checks: Vec<Check>,
}

impl CompletionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for CompletionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            writeln!(f, "{:<10} {:<4} {}", c.name, mark, c.detail)?;
        }
        Ok(())
    }
}

pub fn check_completion(h: &Hypergraph, star: &Hypergraph, embedding: &Embedding) -> CompletionReport {
    let k = h.rank();
    let delta = h.max_degree();
    let t = h.linearity_t();
    let mut checks = Vec::new();
    let mut push = |name, passed, detail: String| checks.push(Check { name, passed, detail });

    let bad_edges = star.edges().iter().filter(|e| e.len() != k).count();
    push(
        "uniform",
        bad_edges == 0,
        format!("{bad_edges} edges of size other than {k}"),
    );

    let bad_vertices = (0..star.vertex_count()).filter(|&v| star.degree(v) != delta).count();
    push(
        "regular",
        bad_vertices == 0,
        format!("{bad_vertices} vertices of degree other than {delta}"),
    );

    let t_star = star.linearity_t();
    push("linearity", t_star <= t, format!("t = {t_star}, source t = {t}"));

    let emb = embedding_problems(h, star, embedding);
    push(
        "embedding",
        emb.is_empty(),
        if emb.is_empty() { "valid".into() } else { emb.join("; ") },
    );

    let levi = levi_graph(star);
    let profile = biregular_profile(&levi);
    let free = is_k2t1_free(&levi, t);
    push(
        "levi",
        profile == Some((delta, k)) && free,
        format!(
            "profile {}, K_{{2,{}}}-free: {free}",
            profile.map_or("irregular".to_string(), |(a, b)| format!("({a},{b})")),
            t + 1
        ),
    );
    CompletionReport { checks }
}

fn embedding_problems(h: &Hypergraph, star: &Hypergraph, emb: &Embedding) -> Vec<String> {
    let mut out = Vec::new();
    if emb.vertex_map.len() != h.vertex_count() || emb.edge_map.len() != h.edge_count() {
        out.push("map sizes do not match the source".to_string());
        return out;
    }
    if let Some(&v) = emb.vertex_map.iter().find(|&&v| v >= star.vertex_count()) {
        out.push(format!("vertex image {v} out of range"));
    }
    if let Some(&e) = emb.edge_map.iter().find(|&&e| e >= star.edge_count()) {
        out.push(format!("edge image {e} out of range"));
    }
    if !out.is_empty() {
        return out;
    }
    if emb.vertex_map.iter().collect::<HashSet<_>>().len() != emb.vertex_map.len() {
        out.push("vertex map is not injective".into());
    }
    if emb.edge_map.iter().collect::<HashSet<_>>().len() != emb.edge_map.len() {
        out.push("edge map is not injective".into());
    }
    for (e, edge) in h.edges().iter().enumerate() {
        let image = emb.edge_map[e];
        if !edge.iter().all(|&v| star.contains(image, emb.vertex_map[v])) {
            out.push(format!("edge {e} is not contained in edge {image}"));
        }
    }
    out
}
