//! Optimal incidence coloring of alpha-acyclic linear hypergraphs through
//! strong edge colorings of their Levi trees.

use std::collections::BTreeSet;

use crate::acyclicity::is_alpha_acyclic;
use crate::coloring::{verify_strong_edge, IncidenceColoring, StrongEdgeColoring};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::levi::{bfs_edge_order, d2_table, levi_graph, BipartiteGraph, SimpleGraph};

/// A tree with a chosen root. Children are stored by descending degree,
/// ties broken by node index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    graph: SimpleGraph,
    root: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
}

impl RootedTree {
    /// `graph` must be connected and acyclic.
    pub fn new(graph: SimpleGraph, root: usize) -> Result<Self> {
        let n = graph.node_count();
        if root >= n {
            return Err(Error::VertexOutOfRange(root));
        }
        if !graph.is_forest() {
            return Err(Error::Cyclic);
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut stack = vec![root];
        let mut reached = 1;
        while let Some(x) = stack.pop() {
            for &y in graph.neighbors(x) {
                if !seen[y] {
                    seen[y] = true;
                    reached += 1;
                    parent[y] = Some(x);
                    children[x].push(y);
                    stack.push(y);
                }
            }
        }
        if reached != n {
            return Err(Error::Precondition("tree is not connected".into()));
        }
        for list in &mut children {
            list.sort_by_key(|&c| (std::cmp::Reverse(graph.degree(c)), c));
        }
        Ok(RootedTree {
            graph,
            root,
            parent,
            children,
        })
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }
}

impl AsRef<SimpleGraph> for RootedTree {
    fn as_ref(&self) -> &SimpleGraph {
        &self.graph
    }
}

/// One color exchange `alpha <-> beta` below child `child` of the root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Swap {
    pub child: usize,
    pub alpha: usize,
    pub beta: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestOutcome {
    pub coloring: StrongEdgeColoring,
    pub swaps: Vec<Swap>,
}

/// Relabels colors inside child subtrees so that, for the root's children
/// `u_1, ..., u_s`, the colors around `u_i` other than its root edge
/// contain those around `u_{i+1}`.
pub fn nest_permute(t: &RootedTree, c: &StrongEdgeColoring) -> Result<NestOutcome> {
    let bad = verify_strong_edge(t, c)?;
    if !bad.is_empty() {
        return Err(Error::ImproperColoring(bad.len()));
    }
    let mut coloring = c.clone();
    let mut swaps = Vec::new();
    nest_at(&t.graph, coloring.colors_mut(), t.root, t.children(t.root), &mut swaps);
    Ok(NestOutcome { coloring, swaps })
}

/// Colors on colored edges at `u`, leaving out edge `skip`.
fn color_set(g: &SimpleGraph, colors: &[usize], u: usize, skip: Option<usize>) -> BTreeSet<usize> {
    g.incident_edges(u)
        .iter()
        .filter(|&&e| Some(e) != skip && colors[e] != 0)
        .map(|&e| colors[e])
        .collect()
}

/// Whether `children` of `z` are nested: each child's color set minus its
/// edge to `z` contains the next one's.
pub fn is_nested(g: &SimpleGraph, colors: &[usize], z: usize, children: &[usize]) -> bool {
    let sets: Vec<BTreeSet<usize>> = children
        .iter()
        .map(|&u| color_set(g, colors, u, g.edge_id(z, u)))
        .collect();
    sets.windows(2).all(|w| w[0].is_superset(&w[1]))
}

/// Works on the colored part of `g` (color 0 means absent). `children` must
/// be the neighbors of `z` over colored edges, by descending colored degree.
fn nest_at(g: &SimpleGraph, colors: &mut [usize], z: usize, children: &[usize], swaps: &mut Vec<Swap>) {
    for j in 1..children.len() {
        let (prev, next) = (children[j - 1], children[j]);
        let prev_edge = g.edge_id(z, prev);
        let next_edge = g.edge_id(z, next);
        loop {
            let a = color_set(g, colors, prev, prev_edge);
            let b = color_set(g, colors, next, next_edge);
            let Some(&alpha) = b.difference(&a).next() else {
                break;
            };
            let beta = *a
                .difference(&b)
                .next()
                .expect("the earlier child has at least as many colors");
            for e in subtree_edges(g, colors, next, z) {
                if colors[e] == alpha {
                    colors[e] = beta;
                } else if colors[e] == beta {
                    colors[e] = alpha;
                }
            }
            swaps.push(Swap {
                child: next,
                alpha,
                beta,
            });
        }
    }
}

/// Colored edges reachable from `u` without passing through `away`.
fn subtree_edges(g: &SimpleGraph, colors: &[usize], u: usize, away: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![(u, away)];
    while let Some((x, from)) = stack.pop() {
        for &e in g.incident_edges(x) {
            let y = g.opposite(e, x);
            if y != from && colors[e] != 0 {
                out.push(e);
                stack.push((y, x));
            }
        }
    }
    out
}

/// Strong edge coloring of a forest by peeling leaves: the smallest leaf is
/// detached until one edge remains per component, then edges are restored
/// in reverse, nesting the colors at the leaf's neighbor before coloring
/// the restored edge.
pub fn peel_color_forest(g: &SimpleGraph) -> Result<StrongEdgeColoring> {
    if !g.is_forest() {
        return Err(Error::Cyclic);
    }
    let n = g.node_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut alive = vec![true; g.edge_count()];
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let (component, mut remaining) = edge_counts_by_component(g);
    let mut peeled = Vec::new();
    let mut bases = Vec::new();
    while let Some(r) = leaves.pop_first() {
        let e = g
            .incident_edges(r)
            .iter()
            .copied()
            .find(|&e| alive[e])
            .expect("a leaf keeps one edge");
        let z = g.opposite(e, r);
        alive[e] = false;
        let remaining = &mut remaining[component[r]];
        if *remaining == 1 {
            bases.push(e);
            leaves.remove(&z);
            continue;
        }
        *remaining -= 1;
        degree[r] = 0;
        degree[z] -= 1;
        if degree[z] == 1 {
            leaves.insert(z);
        }
        peeled.push((r, z, e));
    }
    let mut colors = vec![0usize; g.edge_count()];
    for e in bases {
        colors[e] = 1;
    }
    let mut scratch = Vec::new();
    for &(_, z, e) in peeled.iter().rev() {
        let mut children: Vec<usize> = g
            .incident_edges(z)
            .iter()
            .filter(|&&f| colors[f] != 0)
            .map(|&f| g.opposite(f, z))
            .collect();
        let colored_degree = |u: usize| g.incident_edges(u).iter().filter(|&&f| colors[f] != 0).count();
        children.sort_by_key(|&u| (std::cmp::Reverse(colored_degree(u)), u));
        nest_at(g, &mut colors, z, &children, &mut scratch);
        let mut used = color_set(g, &colors, z, None);
        if let Some(&u1) = children.first() {
            used.extend(color_set(g, &colors, u1, None));
        }
        colors[e] = (1..).find(|c| !used.contains(c)).unwrap();
    }
    let palette = colors.iter().copied().max().unwrap_or(0);
    Ok(StrongEdgeColoring::from_raw(colors, palette))
}

/// Component id per node and edge count per component.
fn edge_counts_by_component(g: &SimpleGraph) -> (Vec<usize>, Vec<usize>) {
    let n = g.node_count();
    let mut comp = vec![usize::MAX; n];
    let mut counts = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = counts.len();
        counts.push(0);
        comp[s] = id;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in g.neighbors(x) {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    stack.push(y);
                }
            }
        }
    }
    for &(a, _) in g.edges() {
        counts[comp[a]] += 1;
    }
    (comp, counts)
}

/// Coloring of an alpha-acyclic linear hypergraph with at most
/// `Δ + r - 1` colors, together with that bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeColoring {
    pub coloring: IncidenceColoring,
    pub bound: usize,
}

pub fn color_acyclic_linear(h: &Hypergraph) -> Result<TreeColoring> {
    let t = h.linearity_t();
    if t > 1 {
        return Err(Error::NotLinear(t));
    }
    if !is_alpha_acyclic(h) {
        return Err(Error::NotAlphaAcyclic);
    }
    let levi = levi_graph(h);
    let strong = peel_color_forest(levi.graph())?;
    let coloring = IncidenceColoring::from_colors(h, strong.colors().to_vec(), None)?;
    let bound = if h.edge_count() == 0 {
        0
    } else {
        h.max_degree() + h.rank() - 1
    };
    Ok(TreeColoring { coloring, bound })
}

/// First-fit strong edge coloring of a bipartite forest in breadth-first
/// edge order.
pub fn greedy_tree_strong(t: &BipartiteGraph, delta_bound: usize, k_bound: usize) -> Result<StrongEdgeColoring> {
    let g = t.graph();
    if !g.is_forest() {
        return Err(Error::Cyclic);
    }
    let du = t.u_degrees().max().unwrap_or(0);
    let dv = t.v_degrees().max().unwrap_or(0);
    if !((du <= delta_bound && dv <= k_bound) || (du <= k_bound && dv <= delta_bound)) {
        return Err(Error::Precondition(format!(
            "part degrees {du}/{dv} exceed bounds {delta_bound}/{k_bound}"
        )));
    }
    let near = d2_table(g);
    let mut colors = vec![0usize; g.edge_count()];
    for e in bfs_edge_order(g) {
        let used: BTreeSet<usize> = near[e].iter().map(|&f| colors[f]).collect();
        colors[e] = (1..).find(|c| !used.contains(c)).unwrap();
    }
    let palette = colors.iter().copied().max().unwrap_or(0);
    Ok(StrongEdgeColoring::from_raw(colors, palette))
}
