//! Levi graphs, line-graph squares, the incidence conflict graph and the
//! distance-2 edge neighborhoods used by the counting audit.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Incidence};

/// Undirected simple graph on nodes `0..n` with indexed edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
    edge_ids: HashMap<(usize, usize), usize>,
}

impl SimpleGraph {
    pub fn new(nodes: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); nodes];
        let mut incident = vec![Vec::new(); nodes];
        let mut edge_ids = HashMap::with_capacity(edges.len());
        for (id, &(u, v)) in edges.iter().enumerate() {
            if u >= nodes || v >= nodes {
                return Err(Error::VertexOutOfRange(u.max(v)));
            }
            if u == v {
                return Err(Error::Precondition(format!("loop at node {u}")));
            }
            if edge_ids.insert((u.min(v), u.max(v)), id).is_some() {
                return Err(Error::Precondition(format!("parallel edge {u}-{v}")));
            }
            adj[u].push(v);
            adj[v].push(u);
            incident[u].push(id);
            incident[v].push(id);
        }
        for a in &mut adj {
            a.sort_unstable();
        }
        Ok(SimpleGraph {
            adj,
            incident,
            edges,
            edge_ids,
        })
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Sorted neighbor list.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    /// Ids of the edges at `v`, in insertion order.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// The endpoint of edge `e` that is not `v`.
    pub fn opposite(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_ids.contains_key(&(u.min(v), u.max(v)))
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_ids.get(&(u.min(v), u.max(v))).copied()
    }

    /// True when the graph has no cycle.
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.node_count()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// Number of edges among the neighbors of `v`.
    pub fn neighborhood_edge_count(&self, v: usize) -> usize {
        let nbrs = &self.adj[v];
        let mut count = 0;
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if self.has_edge(a, b) {
                    count += 1;
                }
            }
        }
        count
    }
}

impl AsRef<SimpleGraph> for SimpleGraph {
    fn as_ref(&self) -> &SimpleGraph {
        self
    }
}

/// Two-part simple graph. Part U occupies nodes `0..|U|` of the underlying
/// graph, part V the nodes after it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    u_names: Vec<String>,
    v_names: Vec<String>,
    graph: SimpleGraph,
}

impl BipartiteGraph {
    /// `edges` are `(u, v)` pairs of part-local indices.
    pub fn new(u_names: Vec<String>, v_names: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let nu = u_names.len();
        let mut seen = HashSet::new();
        for name in u_names.iter().chain(&v_names) {
            if name.is_empty() || name.contains(':') || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidVertexName(name.clone()));
            }
            if !seen.insert(name.as_str()) {
                return Err(Error::InvalidVertexName(name.clone()));
            }
        }
        let mut global = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= nu {
                return Err(Error::VertexOutOfRange(u));
            }
            if v >= v_names.len() {
                return Err(Error::VertexOutOfRange(v));
            }
            global.push((u, nu + v));
        }
        let graph = SimpleGraph::new(nu + v_names.len(), global)?;
        Ok(BipartiteGraph {
            u_names,
            v_names,
            graph,
        })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn u_len(&self) -> usize {
        self.u_names.len()
    }

    pub fn v_len(&self) -> usize {
        self.v_names.len()
    }

    pub fn u_names(&self) -> &[String] {
        &self.u_names
    }

    pub fn v_names(&self) -> &[String] {
        &self.v_names
    }

    /// Global node index of part-V member `v`.
    pub fn v_node(&self, v: usize) -> usize {
        self.u_names.len() + v
    }

    pub fn node_name(&self, node: usize) -> &str {
        if node < self.u_names.len() {
            &self.u_names[node]
        } else {
            &self.v_names[node - self.u_names.len()]
        }
    }

    pub fn node(&self, name: &str) -> Option<usize> {
        if let Some(i) = self.u_names.iter().position(|n| n == name) {
            return Some(i);
        }
        self.v_names
            .iter()
            .position(|n| n == name)
            .map(|i| i + self.u_names.len())
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    /// Edge `e` as part-local `(u, v)`.
    pub fn edge(&self, e: usize) -> (usize, usize) {
        let (u, v) = self.graph.endpoints(e);
        (u, v - self.u_names.len())
    }

    pub fn u_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.u_len()).map(|u| self.graph.degree(u))
    }

    pub fn v_degrees(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.v_len()).map(|v| self.graph.degree(self.v_node(v)))
    }

    /// Parses the edge-list format: a `parts:` header naming part U, then
    /// one `u v` pair per line. Part V is every other token, first-seen.
    pub fn parse(text: &str) -> Result<Self> {
        let mut u_names: Option<Vec<String>> = None;
        let mut v_names: Vec<String> = Vec::new();
        let mut v_index: HashMap<String, usize> = HashMap::new();
        let mut edges = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            let err = |message: String| Error::Parse { line: lineno, message };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("parts:") {
                if u_names.is_some() {
                    return Err(err("duplicate `parts:` header".into()));
                }
                u_names = Some(rest.split_whitespace().map(String::from).collect());
                continue;
            }
            let u_list = u_names
                .as_ref()
                .ok_or_else(|| err("missing `parts:` header before edges".into()))?;
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens.len() != 2 {
                return Err(err(format!("expected two tokens, found {}", tokens.len())));
            }
            let pos = |t: &str| u_list.iter().position(|n| n == t);
            let (u, other) = match (pos(tokens[0]), pos(tokens[1])) {
                (Some(u), None) => (u, tokens[1]),
                (None, Some(u)) => (u, tokens[0]),
                (Some(_), Some(_)) => return Err(err("edge inside part U".into())),
                (None, None) => return Err(err("edge inside part V".into())),
            };
            let v = *v_index.entry(other.to_string()).or_insert_with(|| {
                v_names.push(other.to_string());
                v_names.len() - 1
            });
            edges.push((lineno, (u, v)));
        }
        let u_names = u_names.ok_or(Error::Parse {
            line: 0,
            message: "missing `parts:` header".into(),
        })?;
        let mut seen = HashSet::new();
        for &(line, e) in &edges {
            if !seen.insert(e) {
                return Err(Error::Parse {
                    line,
                    message: "duplicate edge".into(),
                });
            }
        }
        let pairs: Vec<(usize, usize)> = edges.iter().map(|&(_, e)| e).collect();
        BipartiteGraph::new(u_names, v_names, &pairs).map_err(|e| Error::Parse {
            line: 0,
            message: e.to_string(),
        })
    }
}

impl AsRef<SimpleGraph> for BipartiteGraph {
    fn as_ref(&self) -> &SimpleGraph {
        &self.graph
    }
}

impl fmt::Display for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parts: {}", self.u_names.join(" "))?;
        for e in 0..self.edge_count() {
            let (u, v) = self.edge(e);
            writeln!(f, "{} {}", self.u_names[u], self.v_names[v])?;
        }
        Ok(())
    }
}

/// Levi graph: hypergraph vertices in part U, edges in part V named `e<i>`.
/// Levi edge `i` corresponds to incidence `i` in canonical order.
pub fn levi_graph(h: &Hypergraph) -> BipartiteGraph {
    let v_names = (0..h.edge_count()).map(|e| format!("e{e}")).collect();
    let pairs: Vec<(usize, usize)> = h.incidences().iter().map(|i| (i.vertex, i.edge)).collect();
    // edge-node names may clash with vertex names like "e0"; disambiguate.
    let mut v_names: Vec<String> = v_names;
    let taken: HashSet<&str> = h.names().iter().map(String::as_str).collect();
    for n in &mut v_names {
        while taken.contains(n.as_str()) {
            n.insert(0, '_');
        }
    }
    BipartiteGraph::new(h.names().to_vec(), v_names, &pairs).expect("Levi graph of a valid hypergraph")
}

/// The line graph: one node per edge of `g`, adjacent when the edges share
/// an endpoint.
pub fn line_graph(g: &SimpleGraph) -> SimpleGraph {
    let mut edges = Vec::new();
    for v in 0..g.node_count() {
        let inc = g.incident_edges(v);
        for (i, &a) in inc.iter().enumerate() {
            for &b in &inc[i + 1..] {
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    // two edges of a simple graph share at most one endpoint
    SimpleGraph::new(g.edge_count(), edges).expect("line graph is simple")
}

/// `g²`: nodes at distance 1 or 2 become adjacent.
pub fn square(g: &SimpleGraph) -> SimpleGraph {
    let n = g.node_count();
    let mut edges = Vec::new();
    let mut mark = vec![usize::MAX; n];
    for x in 0..n {
        mark[x] = x;
        for &y in g.neighbors(x) {
            for &z in std::iter::once(&y).chain(g.neighbors(y)) {
                if mark[z] != x {
                    mark[z] = x;
                    if z > x {
                        edges.push((x, z));
                    }
                }
            }
        }
    }
    SimpleGraph::new(n, edges).expect("square is simple")
}

/// `L(g)²`, built by materializing the line graph and squaring it.
pub fn line_graph_square(g: impl AsRef<SimpleGraph>) -> SimpleGraph {
    square(&line_graph(g.as_ref()))
}

/// Edges at line-graph distance 1 or 2 from edge `e`, ascending.
///
/// Distance 1 means a shared endpoint; distance 2 means some edge meets
/// both.
pub fn d2_neighborhood(g: impl AsRef<SimpleGraph>, e: usize) -> Result<Vec<usize>> {
    let g = g.as_ref();
    if e >= g.edge_count() {
        return Err(Error::EdgeOutOfRange(e));
    }
    Ok(d2_unchecked(g, e))
}

pub(crate) fn d2_unchecked(g: &SimpleGraph, e: usize) -> Vec<usize> {
    let (a, b) = g.endpoints(e);
    let mut out = HashSet::new();
    for end in [a, b] {
        for &f in g.incident_edges(end) {
            let (c, d) = g.endpoints(f);
            for far in [c, d] {
                out.extend(g.incident_edges(far).iter().copied());
            }
        }
    }
    out.remove(&e);
    let mut out: Vec<usize> = out.into_iter().collect();
    out.sort_unstable();
    out
}

/// All distance-2 neighborhoods, indexed by edge.
pub fn d2_table(g: impl AsRef<SimpleGraph>) -> Vec<Vec<usize>> {
    let g = g.as_ref();
    (0..g.edge_count()).map(|e| d2_unchecked(g, e)).collect()
}

/// `|D2(other) ∩ D2(e)|`, defined when `other ∈ D2(e)`.
pub fn zeta(g: impl AsRef<SimpleGraph>, other: usize, e: usize) -> Result<usize> {
    let g = g.as_ref();
    let de = d2_neighborhood(g, e)?;
    let dother = d2_neighborhood(g, other)?;
    if de.binary_search(&other).is_err() {
        return Err(Error::Precondition(format!(
            "edge {other} is not within distance 2 of edge {e}"
        )));
    }
    Ok(sorted_intersection_len(&de, &dother))
}

pub(crate) fn sorted_intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

/// True when no two nodes on the same side have more than `t` common
/// neighbors.
pub fn is_k2t1_free(g: &BipartiteGraph, t: usize) -> bool {
    max_codegree(g) <= t
}

/// Largest number of common neighbors over same-side node pairs.
pub fn max_codegree(g: &BipartiteGraph) -> usize {
    let graph = g.graph();
    let n = graph.node_count();
    let mut count = vec![0usize; n];
    let mut best = 0;
    for a in 0..n {
        let mut touched = Vec::new();
        for &mid in graph.neighbors(a) {
            for &b in graph.neighbors(mid) {
                if b > a {
                    if count[b] == 0 {
                        touched.push(b);
                    }
                    count[b] += 1;
                    best = best.max(count[b]);
                }
            }
        }
        for b in touched {
            count[b] = 0;
        }
    }
    best
}

/// `(a, b)` when every part-U node has degree `a` and every part-V node
/// degree `b`.
pub fn biregular_profile(g: &BipartiteGraph) -> Option<(usize, usize)> {
    fn common(mut it: impl Iterator<Item = usize>) -> Option<usize> {
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
    Some((common(g.u_degrees())?, common(g.v_degrees())?))
}

/// Simple graph whose nodes are the incidences of a hypergraph, adjacent
/// exactly when the incidences are.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConflictGraph {
    pub incidences: Vec<Incidence>,
    pub graph: SimpleGraph,
}

pub fn conflict_graph(h: &Hypergraph) -> ConflictGraph {
    let incidences = h.incidences();
    let mut edges = Vec::new();
    for (i, &a) in incidences.iter().enumerate() {
        // candidates: incidences at a vertex of a's edge, or on an edge
        // through a's vertex; the adjacency rule decides.
        let mut cand: HashSet<usize> = HashSet::new();
        for &y in h.edge(a.edge) {
            for &f in h.incident_edges(y) {
                cand.insert(h.incidence_index(Incidence::new(y, f)).unwrap());
            }
        }
        for &f in h.incident_edges(a.vertex) {
            for &y in h.edge(f) {
                cand.insert(h.incidence_index(Incidence::new(y, f)).unwrap());
            }
        }
        let mut cand: Vec<usize> = cand.into_iter().filter(|&j| j > i).collect();
        cand.sort_unstable();
        for j in cand {
            if h.adjacent_unchecked(a, incidences[j]) {
                edges.push((i, j));
            }
        }
    }
    let graph = SimpleGraph::new(incidences.len(), edges).expect("conflict graph is simple");
    ConflictGraph { incidences, graph }
}

/// Breadth-first edge order over a graph: nodes are visited from the lowest
/// unvisited node, and each visited node appends its not-yet-listed edges.
pub fn bfs_edge_order(g: &SimpleGraph) -> Vec<usize> {
    let mut seen_node = vec![false; g.node_count()];
    let mut seen_edge = vec![false; g.edge_count()];
    let mut order = Vec::with_capacity(g.edge_count());
    for start in 0..g.node_count() {
        if seen_node[start] {
            continue;
        }
        seen_node[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            let mut inc: Vec<usize> = g.incident_edges(x).to_vec();
            inc.sort_unstable();
            for e in inc {
                if !seen_edge[e] {
                    seen_edge[e] = true;
                    order.push(e);
                }
                let (a, b) = g.endpoints(e);
                let y = if a == x { b } else { a };
                if !seen_node[y] {
                    seen_node[y] = true;
                    queue.push_back(y);
                }
            }
        }
    }
    order
}
