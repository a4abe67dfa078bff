//! Finite hypergraphs with named vertices and an ordered family of distinct
//! non-empty edges.
//!
//! Vertices are opaque string tokens mapped to dense indices in first-seen
//! order; edges are stored as index lists in the order they were given. All
//! derived orders (incidences, components, serialization) follow these two
//! orders, so every operation is deterministic.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Error, Result};

/// A `(vertex, edge)` membership pair, the unit that gets colored.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Incidence {
    pub vertex: usize,
    pub edge: usize,
}

impl Incidence {
    pub fn new(vertex: usize, edge: usize) -> Self {
        Incidence { vertex, edge }
    }
}

/// How an induced subhypergraph treats edges that leave the chosen set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Semantics {
    /// Keep every edge meeting the set, whole. The vertex set grows by the
    /// members of kept edges so that edges stay inside it.
    Literal,
    /// Replace each meeting edge by its intersection with the set.
    Trace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureReport {
    pub max_degree: usize,
    pub min_degree: usize,
    pub rank: usize,
    pub rho: usize,
    pub uniform_k: Option<usize>,
    pub regular_d: Option<usize>,
    pub linearity_t: usize,
    pub connected: bool,
}

/// Vertex and edge indices of one connected component of a hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentParts {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
    offsets: Vec<usize>,
}

fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.starts_with('#') || name.contains(':') || name.chars().any(char::is_whitespace) {
        return Err(Error::InvalidVertexName(name.to_string()));
    }
    Ok(())
}

impl Hypergraph {
    /// Builds a hypergraph from vertex names and index-based edges.
    pub fn from_indices(names: Vec<String>, edges: Vec<Vec<usize>>) -> Result<Self> {
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            check_name(name)?;
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidVertexName(name.clone()));
            }
        }
        let mut incident = vec![Vec::new(); names.len()];
        let mut seen: HashMap<Vec<usize>, usize> = HashMap::with_capacity(edges.len());
        let mut offsets = Vec::with_capacity(edges.len() + 1);
        let mut total = 0;
        for (e, edge) in edges.iter().enumerate() {
            if edge.is_empty() {
                return Err(Error::EmptyEdge(e));
            }
            let mut key = edge.clone();
            key.sort_unstable();
            if let Some(&v) = key.iter().find(|&&v| v >= names.len()) {
                return Err(Error::VertexOutOfRange(v));
            }
            if let Some(w) = key.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::RepeatedVertex {
                    vertex: names[w[0]].clone(),
                    edge: e,
                });
            }
            if let Some(&first) = seen.get(&key) {
                return Err(Error::DuplicateEdge { first, second: e });
            }
            seen.insert(key, e);
            for &v in edge {
                incident[v].push(e);
            }
            offsets.push(total);
            total += edge.len();
        }
        offsets.push(total);
        Ok(Hypergraph {
            names,
            index,
            edges,
            incident,
            offsets,
        })
    }

    /// Builds a hypergraph from named edges; vertices are numbered in
    /// first-seen order.
    pub fn from_edges<E, I, S>(edges: E) -> Result<Self>
    where
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self::with_vertices(std::iter::empty::<&str>(), edges)
    }

    /// Like [`Hypergraph::from_edges`], with `vertices` listed first. Use it
    /// for isolated vertices or to fix the vertex order.
    pub fn with_vertices<V, VS, E, I, S>(vertices: V, edges: E) -> Result<Self>
    where
        V: IntoIterator<Item = VS>,
        VS: AsRef<str>,
        E: IntoIterator<Item = I>,
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        let mut intern = |name: &str, names: &mut Vec<String>| -> Result<usize> {
            check_name(name)?;
            Ok(*index.entry(name.to_string()).or_insert_with(|| {
                names.push(name.to_string());
                names.len() - 1
            }))
        };
        for v in vertices {
            intern(v.as_ref(), &mut names)?;
        }
        let mut idx_edges = Vec::new();
        for edge in edges {
            let mut e = Vec::new();
            for v in edge {
                e.push(intern(v.as_ref(), &mut names)?);
            }
            idx_edges.push(e);
        }
        Self::from_indices(names, idx_edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &[usize] {
        &self.edges[e]
    }

    /// Edges containing `v`, ascending.
    pub fn incident_edges(&self, v: usize) -> &[usize] {
        &self.incident[v]
    }

    pub fn contains(&self, e: usize, v: usize) -> bool {
        self.edges[e].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident[v].len()
    }

    pub fn degree_of(&self, name: &str) -> Result<usize> {
        self.vertex(name)
            .map(|v| self.degree(v))
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn max_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.incident.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.edges.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn incidence_count(&self) -> usize {
        self.offsets[self.edges.len()]
    }

    /// All incidences ordered by edge index, then position inside the edge.
    pub fn incidences(&self) -> Vec<Incidence> {
        let mut out = Vec::with_capacity(self.incidence_count());
        for (e, edge) in self.edges.iter().enumerate() {
            out.extend(edge.iter().map(|&v| Incidence::new(v, e)));
        }
        out
    }

    /// Position of `inc` in [`Hypergraph::incidences`].
    pub fn incidence_index(&self, inc: Incidence) -> Option<usize> {
        let edge = self.edges.get(inc.edge)?;
        let pos = edge.iter().position(|&v| v == inc.vertex)?;
        Some(self.offsets[inc.edge] + pos)
    }

    fn check_incidence(&self, inc: Incidence) -> Result<()> {
        match self.incidence_index(inc) {
            Some(_) => Ok(()),
            None => Err(Error::InvalidIncidence {
                vertex: self
                    .names
                    .get(inc.vertex)
                    .cloned()
                    .unwrap_or_else(|| inc.vertex.to_string()),
                edge: inc.edge,
            }),
        }
    }

    /// Adjacency of two incidences: same vertex, or both vertices inside one
    /// of the two edges.
    pub fn incidences_adjacent(&self, a: Incidence, b: Incidence) -> Result<bool> {
        self.check_incidence(a)?;
        self.check_incidence(b)?;
        Ok(self.adjacent_unchecked(a, b))
    }

    pub(crate) fn adjacent_unchecked(&self, a: Incidence, b: Incidence) -> bool {
        a.vertex == b.vertex || self.contains(a.edge, b.vertex) || self.contains(b.edge, a.vertex)
    }

    /// Smallest `t` such that the hypergraph is `t`-quasi-linear.
    pub fn linearity_t(&self) -> usize {
        let mut best = 1;
        let mut codegree: HashMap<(usize, usize), usize> = HashMap::new();
        for edge in &self.edges {
            for (i, &x) in edge.iter().enumerate() {
                for &y in &edge[i + 1..] {
                    let c = codegree.entry((x.min(y), x.max(y))).or_insert(0);
                    *c += 1;
                    best = best.max(*c);
                }
            }
        }
        let mut meet: HashMap<(usize, usize), usize> = HashMap::new();
        for inc in &self.incident {
            for (i, &e) in inc.iter().enumerate() {
                for &f in &inc[i + 1..] {
                    let c = meet.entry((e, f)).or_insert(0);
                    *c += 1;
                    best = best.max(*c);
                }
            }
        }
        best
    }

    pub fn is_linear(&self) -> bool {
        self.linearity_t() == 1
    }

    pub fn structure_report(&self) -> Result<StructureReport> {
        if self.edges.is_empty() {
            return Err(Error::NoEdges);
        }
        let max_degree = self.max_degree();
        let min_degree = self.min_degree();
        let rank = self.rank();
        let uniform_k = self.edges.iter().all(|e| e.len() == rank).then_some(rank);
        let regular_d = (min_degree == max_degree).then_some(max_degree);
        Ok(StructureReport {
            max_degree,
            min_degree,
            rank,
            rho: rank.max(max_degree),
            uniform_k,
            regular_d,
            linearity_t: self.linearity_t(),
            connected: self.component_parts().len() == 1,
        })
    }

    /// Subhypergraph induced by the vertex set `subset`.
    pub fn induced_sub(&self, subset: &[usize], semantics: Semantics) -> Result<Hypergraph> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        let mut keep = vec![false; self.names.len()];
        for &v in subset {
            *keep.get_mut(v).ok_or(Error::VertexOutOfRange(v))? = true;
        }
        let mut edges = Vec::new();
        match semantics {
            Semantics::Literal => {
                let chosen = keep.clone();
                for edge in &self.edges {
                    if edge.iter().any(|&v| chosen[v]) {
                        for &v in edge {
                            keep[v] = true;
                        }
                        edges.push(edge.clone());
                    }
                }
            }
            Semantics::Trace => {
                let mut seen = HashSet::new();
                for edge in &self.edges {
                    let traced: Vec<usize> = edge.iter().copied().filter(|&v| keep[v]).collect();
                    if traced.is_empty() {
                        continue;
                    }
                    let mut key = traced.clone();
                    key.sort_unstable();
                    if seen.insert(key) {
                        edges.push(traced);
                    }
                }
            }
        }
        Ok(self.restrict(&keep, edges))
    }

    /// Rebuilds on the kept vertices (original order) with the given edges,
    /// which must only use kept vertices.
    fn restrict(&self, keep: &[bool], edges: Vec<Vec<usize>>) -> Hypergraph {
        let mut remap = vec![usize::MAX; self.names.len()];
        let mut names = Vec::new();
        for (v, &k) in keep.iter().enumerate() {
            if k {
                remap[v] = names.len();
                names.push(self.names[v].clone());
            }
        }
        let edges = edges
            .into_iter()
            .map(|e| e.into_iter().map(|v| remap[v]).collect())
            .collect();
        Hypergraph::from_indices(names, edges).expect("restriction of a valid hypergraph")
    }

    /// Drops every edge strictly contained in another edge.
    pub fn minimization(&self) -> Hypergraph {
        let sets: Vec<HashSet<usize>> = self.edges.iter().map(|e| e.iter().copied().collect()).collect();
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter(|&(i, e)| {
                !sets
                    .iter()
                    .enumerate()
                    .any(|(j, f)| i != j && f.len() > e.len() && e.iter().all(|v| f.contains(v)))
            })
            .map(|(_, e)| e.clone())
            .collect();
        Hypergraph::from_indices(self.names.clone(), edges).expect("subfamily of a valid hypergraph")
    }

    /// Connected components, ordered by their smallest vertex. Isolated
    /// vertices form edgeless components.
    pub fn component_parts(&self) -> Vec<ComponentParts> {
        let n = self.names.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for edge in &self.edges {
            for &v in &edge[1..] {
                let r0 = find(&mut parent, edge[0]);
                let r = find(&mut parent, v);
                if r != r0 {
                    let (lo, hi) = (r.min(r0), r.max(r0));
                    parent[hi] = lo;
                }
            }
        }
        let mut slot: HashMap<usize, usize> = HashMap::new();
        let mut parts: Vec<ComponentParts> = Vec::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            let i = *slot.entry(r).or_insert_with(|| {
                parts.push(ComponentParts {
                    vertices: Vec::new(),
                    edges: Vec::new(),
                });
                parts.len() - 1
            });
            parts[i].vertices.push(v);
        }
        for (e, edge) in self.edges.iter().enumerate() {
            let r = find(&mut parent, edge[0]);
            parts[slot[&r]].edges.push(e);
        }
        parts
    }

    pub fn components(&self) -> Vec<Hypergraph> {
        self.component_parts()
            .into_iter()
            .map(|p| self.sub_hypergraph(&p.vertices, &p.edges))
            .collect()
    }

    /// The subhypergraph on `vertices` with the listed edges, which must lie
    /// inside `vertices`.
    pub fn sub_hypergraph(&self, vertices: &[usize], edges: &[usize]) -> Hypergraph {
        let mut keep = vec![false; self.names.len()];
        for &v in vertices {
            keep[v] = true;
        }
        self.restrict(&keep, edges.iter().map(|&e| self.edges[e].clone()).collect())
    }

    /// Removes one edge, keeping all vertices.
    pub fn delete_edge(&self, e: usize) -> Result<Hypergraph> {
        if e >= self.edges.len() {
            return Err(Error::EdgeOutOfRange(e));
        }
        let mut edges = self.edges.clone();
        edges.remove(e);
        Hypergraph::from_indices(self.names.clone(), edges)
    }

    /// Removes one vertex, tracing the edges on the remaining vertices.
    pub fn delete_vertex(&self, v: usize) -> Result<Hypergraph> {
        if v >= self.names.len() {
            return Err(Error::VertexOutOfRange(v));
        }
        let rest: Vec<usize> = (0..self.names.len()).filter(|&u| u != v).collect();
        if rest.is_empty() {
            return Hypergraph::from_indices(Vec::new(), Vec::new());
        }
        self.induced_sub(&rest, Semantics::Trace)
    }

    /// Disjoint union; clashing names from `other` get a `'` suffix.
    pub fn disjoint_union(&self, other: &Hypergraph) -> Hypergraph {
        let mut names = self.names.clone();
        let mut taken: HashSet<String> = names.iter().cloned().collect();
        for name in &other.names {
            let mut fresh = name.clone();
            while taken.contains(&fresh) || other.index.contains_key(&fresh) && fresh != *name {
                fresh.push('\'');
            }
            taken.insert(fresh.clone());
            names.push(fresh);
        }
        let shift = self.names.len();
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| e.iter().map(|&v| v + shift).collect()));
        Hypergraph::from_indices(names, edges).expect("disjoint union of valid hypergraphs")
    }

    /// Parses the line-oriented `.hg` text format.
    pub fn parse(text: &str) -> Result<Hypergraph> {
        let mut header: Vec<&str> = Vec::new();
        let mut header_seen = false;
        let mut edges: Vec<(usize, Vec<&str>)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                if header_seen || !edges.is_empty() {
                    return Err(Error::Parse {
                        line: i + 1,
                        message: "`vertices:` header must come once, before the edges".into(),
                    });
                }
                header_seen = true;
                header.extend(rest.split_whitespace());
                continue;
            }
            edges.push((i + 1, line.split_whitespace().collect()));
        }
        let lines: Vec<usize> = edges.iter().map(|(l, _)| *l).collect();
        Hypergraph::with_vertices(header, edges.into_iter().map(|(_, e)| e)).map_err(|err| {
            let line = match &err {
                Error::EmptyEdge(e) | Error::DuplicateEdge { second: e, .. } => lines[*e],
                Error::RepeatedVertex { edge, .. } => lines[*edge],
                _ => 0,
            };
            Error::Parse {
                line,
                message: err.to_string(),
            }
        })
    }

    /// The `.hg` serialization. A `vertices:` header is emitted only when the
    /// vertex order cannot be recovered from the edges alone.
    pub fn to_hg_string(&self) -> String {
        self.to_string()
    }

    fn order_from(&self, header: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.names.len()];
        let mut order = Vec::with_capacity(self.names.len());
        for &v in header.iter().chain(self.edges.iter().flatten()) {
            if !seen[v] {
                seen[v] = true;
                order.push(v);
            }
        }
        order
    }
}

impl fmt::Display for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let isolated: Vec<usize> = (0..self.names.len()).filter(|&v| self.incident[v].is_empty()).collect();
        let natural: Vec<usize> = (0..self.names.len()).collect();
        let header = if self.order_from(&isolated) == natural {
            isolated
        } else {
            natural
        };
        if !header.is_empty() {
            write!(f, "vertices:")?;
            for v in header {
                write!(f, " {}", self.names[v])?;
            }
            writeln!(f)?;
        }
        for edge in &self.edges {
            let mut first = true;
            for &v in edge {
                if !first {
                    write!(f, " ")?;
                }
                first = false;
                write!(f, "{}", self.names[v])?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
