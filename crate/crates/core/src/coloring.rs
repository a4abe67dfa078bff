//! Incidence colorings: verification, the strong-edge-coloring translation
//! through the Levi graph, greedy coloring, a branch-and-bound exact solver
//! and the clique lower bound.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::hypergraph::{Hypergraph, Incidence};
use crate::levi::{bfs_edge_order, conflict_graph, d2_table, levi_graph, SimpleGraph};

/// Colors `1..=palette` assigned to the incidences of one hypergraph, stored
/// in canonical incidence order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceColoring {
    colors: Vec<usize>,
    palette: usize,
}

impl IncidenceColoring {
    /// `colors[i]` colors incidence `i` of [`Hypergraph::incidences`]. The
    /// palette defaults to the largest color used.
    pub fn from_colors(h: &Hypergraph, colors: Vec<usize>, palette: Option<usize>) -> Result<Self> {
        if colors.len() != h.incidence_count() {
            return Err(Error::ColoringSize {
                expected: h.incidence_count(),
                got: colors.len(),
            });
        }
        let palette = palette.unwrap_or_else(|| colors.iter().copied().max().unwrap_or(0));
        if let Some(&color) = colors.iter().find(|&&c| c == 0 || c > palette) {
            return Err(Error::ColorOutOfRange { color, palette });
        }
        Ok(IncidenceColoring { colors, palette })
    }

    /// Builds a coloring from explicit pairs; every incidence must appear.
    pub fn from_assignment<I>(h: &Hypergraph, pairs: I, palette: Option<usize>) -> Result<Self>
    where
        I: IntoIterator<Item = (Incidence, usize)>,
    {
        let mut colors = vec![0; h.incidence_count()];
        for (inc, color) in pairs {
            let i = h.incidence_index(inc).ok_or_else(|| Error::InvalidIncidence {
                vertex: h.names().get(inc.vertex).cloned().unwrap_or_default(),
                edge: inc.edge,
            })?;
            if color == 0 {
                return Err(Error::ColorOutOfRange {
                    color,
                    palette: palette.unwrap_or(0),
                });
            }
            colors[i] = color;
        }
        let incs = h.incidences();
        let missing: Vec<Incidence> = colors
            .iter()
            .zip(&incs)
            .filter(|(&c, _)| c == 0)
            .map(|(_, &inc)| inc)
            .collect();
        if !missing.is_empty() {
            return Err(Error::PartialColoring(missing));
        }
        Self::from_colors(h, colors, palette)
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub fn color_of(&self, h: &Hypergraph, inc: Incidence) -> Option<usize> {
        h.incidence_index(inc).map(|i| self.colors[i])
    }

    /// Number of distinct colors actually used.
    pub fn colors_used(&self) -> usize {
        let mut seen = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    /// Coloring file text: a `palette:` header, then `vertex edge color`
    /// per incidence.
    pub fn render(&self, h: &Hypergraph) -> String {
        let mut out = format!("palette: {}\n", self.palette);
        for (inc, c) in h.incidences().iter().zip(&self.colors) {
            let _ = writeln!(out, "{} {} {}", h.name(inc.vertex), inc.edge, c);
        }
        out
    }

    /// Parses a coloring file against `h`. Other `key: value` header lines
    /// and `#` comments are skipped.
    pub fn parse(h: &Hypergraph, text: &str) -> Result<Self> {
        let mut palette = None;
        let mut pairs = Vec::new();
        let mut seen: HashMap<Incidence, usize> = HashMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = i + 1;
            let err = |message: String| Error::Parse { line: lineno, message };
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("palette:") {
                palette = Some(
                    rest.trim()
                        .parse::<usize>()
                        .map_err(|e| err(format!("bad palette: {e}")))?,
                );
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0].ends_with(':') {
                continue;
            }
            if tokens.len() != 3 {
                return Err(err(format!(
                    "expected `vertex edge color`, found {} tokens",
                    tokens.len()
                )));
            }
            let vertex = h
                .vertex(tokens[0])
                .ok_or_else(|| err(format!("unknown vertex `{}`", tokens[0])))?;
            let edge: usize = tokens[1].parse().map_err(|e| err(format!("bad edge index: {e}")))?;
            let color: usize = tokens[2].parse().map_err(|e| err(format!("bad color: {e}")))?;
            let inc = Incidence::new(vertex, edge);
            if h.incidence_index(inc).is_none() {
                return Err(err(format!("({}, {edge}) is not an incidence", tokens[0])));
            }
            if seen.insert(inc, lineno).is_some() {
                return Err(err("incidence assigned twice".into()));
            }
            pairs.push((inc, color));
        }
        Self::from_assignment(h, pairs, palette)
    }
}

/// A pair of adjacent incidences sharing a color.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub first: Incidence,
    pub second: Incidence,
    pub color: usize,
}

/// Every adjacent pair of incidences with equal colors; empty iff proper.
pub fn verify_incidence(h: &Hypergraph, c: &IncidenceColoring) -> Result<Vec<Violation>> {
    if c.colors.len() != h.incidence_count() {
        return Err(Error::ColoringSize {
            expected: h.incidence_count(),
            got: c.colors.len(),
        });
    }
    let cg = conflict_graph(h);
    Ok(cg
        .graph
        .edges()
        .iter()
        .filter(|&&(a, b)| c.colors[a] == c.colors[b])
        .map(|&(a, b)| Violation {
            first: cg.incidences[a],
            second: cg.incidences[b],
            color: c.colors[a],
        })
        .collect())
}

/// Colors on the edges of a graph, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrongEdgeColoring {
    colors: Vec<usize>,
    palette: usize,
}

impl StrongEdgeColoring {
    pub fn new(g: impl AsRef<SimpleGraph>, colors: Vec<usize>, palette: Option<usize>) -> Result<Self> {
        let m = g.as_ref().edge_count();
        if colors.len() != m {
            return Err(Error::ColoringSize {
                expected: m,
                got: colors.len(),
            });
        }
        let palette = palette.unwrap_or_else(|| colors.iter().copied().max().unwrap_or(0));
        if let Some(&color) = colors.iter().find(|&&c| c == 0 || c > palette) {
            return Err(Error::ColorOutOfRange { color, palette });
        }
        Ok(StrongEdgeColoring { colors, palette })
    }

    pub(crate) fn from_raw(colors: Vec<usize>, palette: usize) -> Self {
        StrongEdgeColoring { colors, palette }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, e: usize) -> usize {
        self.colors[e]
    }

    pub fn palette(&self) -> usize {
        self.palette
    }

    pub(crate) fn colors_mut(&mut self) -> &mut Vec<usize> {
        &mut self.colors
    }
}

/// Edge pairs `(e, f)`, `e < f`, at line-graph distance at most 2 that
/// share a color.
pub fn verify_strong_edge(g: impl AsRef<SimpleGraph>, c: &StrongEdgeColoring) -> Result<Vec<(usize, usize)>> {
    let g = g.as_ref();
    if c.colors.len() != g.edge_count() {
        return Err(Error::ColoringSize {
            expected: g.edge_count(),
            got: c.colors.len(),
        });
    }
    let mut out = Vec::new();
    for (e, near) in d2_table(g).iter().enumerate() {
        for &f in near {
            if f > e && c.colors[e] == c.colors[f] {
                out.push((e, f));
            }
        }
    }
    Ok(out)
}

/// Carries an incidence coloring to the Levi graph: incidence `(x, s)` and
/// Levi edge `xs` get the same color.
pub fn to_strong_edge(h: &Hypergraph, c: &IncidenceColoring) -> StrongEdgeColoring {
    debug_assert_eq!(levi_graph(h).edge_count(), c.colors.len());
    StrongEdgeColoring {
        colors: c.colors.clone(),
        palette: c.palette,
    }
}

/// Inverse of [`to_strong_edge`].
pub fn from_strong_edge(h: &Hypergraph, c: &StrongEdgeColoring) -> Result<IncidenceColoring> {
    IncidenceColoring::from_colors(h, c.colors.clone(), Some(c.palette))
}

/// Vertex order for greedy coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOrder {
    Canonical,
    /// Breadth-first over the Levi graph.
    LeviBfs,
    Custom(Vec<Incidence>),
}

/// First-fit coloring of `g` along `order`; colors start at 1.
pub fn greedy_vertex_coloring(g: &SimpleGraph, order: &[usize]) -> Vec<usize> {
    let mut colors = vec![0usize; g.node_count()];
    let mut taken = vec![usize::MAX; g.max_degree() + 2];
    for &v in order {
        for &w in g.neighbors(v) {
            let c = colors[w];
            if c != 0 && c < taken.len() {
                taken[c] = v;
            }
        }
        colors[v] = (1..).find(|&c| c >= taken.len() || taken[c] != v).unwrap();
    }
    colors
}

pub fn greedy_color(h: &Hypergraph, order: &GreedyOrder) -> Result<IncidenceColoring> {
    let cg = conflict_graph(h);
    let n = cg.incidences.len();
    let order: Vec<usize> = match order {
        GreedyOrder::Canonical => (0..n).collect(),
        GreedyOrder::LeviBfs => bfs_edge_order(levi_graph(h).graph()),
        GreedyOrder::Custom(list) => {
            let mut seen = vec![false; n];
            let mut out = Vec::with_capacity(n);
            for &inc in list {
                let i = h.incidence_index(inc).ok_or_else(|| {
                    Error::InvalidOrder(format!("({}, {}) is not an incidence", inc.vertex, inc.edge))
                })?;
                if std::mem::replace(&mut seen[i], true) {
                    return Err(Error::InvalidOrder(format!("incidence {i} listed twice")));
                }
                out.push(i);
            }
            if out.len() != n {
                return Err(Error::InvalidOrder(format!("{} of {n} incidences listed", out.len())));
            }
            out
        }
    };
    let colors = greedy_vertex_coloring(&cg.graph, &order);
    IncidenceColoring::from_colors(h, colors, None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactOptions {
    /// Search-node expansions before giving up.
    pub budget: u64,
    /// Largest incidence count accepted.
    pub max_incidences: usize,
}

impl Default for ExactOptions {
    fn default() -> Self {
        ExactOptions {
            budget: 10_000_000,
            max_incidences: 40,
        }
    }
}

/// Result of the branch-and-bound vertex coloring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexColoringSearch {
    pub lower: usize,
    pub upper: usize,
    /// Best coloring found, with `upper` colors.
    pub colors: Vec<usize>,
    pub expansions: u64,
}

impl VertexColoringSearch {
    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }
}

/// DSATUR branch and bound: branch on the uncolored vertex with the most
/// distinct neighbor colors (ties to the lowest index), starting from a
/// first-fit upper bound and the given lower bound.
pub fn exact_vertex_coloring(g: &SimpleGraph, lower: usize, budget: u64) -> VertexColoringSearch {
    let n = g.node_count();
    let order: Vec<usize> = (0..n).collect();
    let initial = greedy_vertex_coloring(g, &order);
    let upper = initial.iter().copied().max().unwrap_or(0);
    let lower = if n == 0 { 0 } else { lower.clamp(1, upper) };
    let mut search = Dsatur {
        g,
        colors: vec![0; n],
        counts: vec![vec![0; upper + 2]; n],
        saturation: vec![0; n],
        best: initial,
        upper,
        lower,
        expansions: 0,
        budget,
        aborted: false,
    };
    if lower < upper {
        search.descend(0, 0);
    }
    let lower = if search.aborted { search.lower } else { search.upper };
    VertexColoringSearch {
        lower,
        upper: search.upper,
        colors: search.best,
        expansions: search.expansions,
    }
}

struct Dsatur<'a> {
    g: &'a SimpleGraph,
    colors: Vec<usize>,
    counts: Vec<Vec<u32>>,
    saturation: Vec<usize>,
    best: Vec<usize>,
    upper: usize,
    lower: usize,
    expansions: u64,
    budget: u64,
    aborted: bool,
}

impl Dsatur<'_> {
    fn assign(&mut self, v: usize, c: usize) {
        self.colors[v] = c;
        for &w in self.g.neighbors(v) {
            if self.counts[w][c] == 0 {
                self.saturation[w] += 1;
            }
            self.counts[w][c] += 1;
        }
    }

    fn unassign(&mut self, v: usize) {
        let c = std::mem::replace(&mut self.colors[v], 0);
        for &w in self.g.neighbors(v) {
            self.counts[w][c] -= 1;
            if self.counts[w][c] == 0 {
                self.saturation[w] -= 1;
            }
        }
    }

    fn descend(&mut self, colored: usize, used: usize) {
        self.expansions += 1;
        if self.expansions > self.budget {
            self.aborted = true;
            return;
        }
        let n = self.colors.len();
        if colored == n {
            if used < self.upper {
                self.upper = used;
                self.best = self.colors.clone();
            }
            return;
        }
        let mut pick = usize::MAX;
        for v in 0..n {
            if self.colors[v] == 0 && (pick == usize::MAX || self.saturation[v] > self.saturation[pick]) {
                pick = v;
            }
        }
        let limit = (used + 1).min(self.upper - 1);
        for c in 1..=limit {
            if self.counts[pick][c] != 0 {
                continue;
            }
            self.assign(pick, c);
            self.descend(colored + 1, used.max(c));
            self.unassign(pick);
            if self.aborted || self.upper <= self.lower || c + 1 >= self.upper {
                return;
            }
        }
    }
}

/// Outcome of [`exact_chromatic`]; an exhausted budget is reported with the
/// bounds reached, never as a guess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExactOutcome {
    Exact {
        chi: usize,
        witness: IncidenceColoring,
        expansions: u64,
    },
    Unknown {
        lower: usize,
        upper: usize,
        best: IncidenceColoring,
        expansions: u64,
    },
}

impl ExactOutcome {
    pub fn chi(&self) -> Option<usize> {
        match self {
            ExactOutcome::Exact { chi, .. } => Some(*chi),
            ExactOutcome::Unknown { .. } => None,
        }
    }
}

/// Incidence chromatic number by branch and bound on the conflict graph,
/// seeded with the clique lower bound.
pub fn exact_chromatic(h: &Hypergraph, options: ExactOptions) -> Result<ExactOutcome> {
    let n = h.incidence_count();
    if n > options.max_incidences {
        return Err(Error::CapExceeded {
            what: "incidence count",
            value: n as u128,
            cap: options.max_incidences as u128,
        });
    }
    let lower = if h.edge_count() == 0 {
        0
    } else {
        clique_lower_bound(h)?.bound
    };
    let cg = conflict_graph(h);
    let search = exact_vertex_coloring(&cg.graph, lower, options.budget);
    let coloring = IncidenceColoring::from_colors(h, search.colors.clone(), Some(search.upper))?;
    Ok(if search.is_exact() {
        ExactOutcome::Exact {
            chi: search.upper,
            witness: coloring,
            expansions: search.expansions,
        }
    } else {
        ExactOutcome::Unknown {
            lower: search.lower,
            upper: search.upper,
            best: coloring,
            expansions: search.expansions,
        }
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueBound {
    pub bound: usize,
    /// Pairwise adjacent incidences, `bound` of them.
    pub witness: Vec<Incidence>,
}

/// `max_x (deg(x) + max_{s ∋ x} |s| - 1)`: the incidences at `x` together
/// with the other incidences of its largest edge are pairwise adjacent.
pub fn clique_lower_bound(h: &Hypergraph) -> Result<CliqueBound> {
    if h.edge_count() == 0 {
        return Err(Error::NoEdges);
    }
    let mut best: Option<(usize, usize, usize)> = None;
    for x in 0..h.vertex_count() {
        let Some(&big) = h
            .incident_edges(x)
            .iter()
            .max_by_key(|&&e| (h.edge(e).len(), std::cmp::Reverse(e)))
        else {
            continue;
        };
        let bound = h.degree(x) + h.edge(big).len() - 1;
        if best.is_none_or(|(b, _, _)| bound > b) {
            best = Some((bound, x, big));
        }
    }
    let (bound, x, big) = best.expect("some vertex lies in an edge");
    let mut witness: Vec<Incidence> = h.incident_edges(x).iter().map(|&e| Incidence::new(x, e)).collect();
    witness.extend(h.edge(big).iter().filter(|&&y| y != x).map(|&y| Incidence::new(y, big)));
    Ok(CliqueBound { bound, witness })
}
