//! Alpha-acyclicity: GYO reduction, an exhaustive subset characterization
//! used as an oracle, and the Levi-forest test for linear hypergraphs.

use std::fmt;

use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::levi::levi_graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GyoRule {
    /// Remove a vertex lying in exactly one edge.
    EarVertex,
    /// Remove an edge contained in another edge.
    ContainedEdge,
    /// Remove an edge with no vertices left.
    EmptyEdge,
}

impl fmt::Display for GyoRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GyoRule::EarVertex => "ear-vertex",
            GyoRule::ContainedEdge => "contained-edge",
            GyoRule::EmptyEdge => "empty-edge",
        })
    }
}

/// One rule application; `item` is a vertex index for
/// [`GyoRule::EarVertex`] and an edge index otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GyoStep {
    pub rule: GyoRule,
    pub item: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GyoTrace {
    pub steps: Vec<GyoStep>,
    /// What is left at the fixpoint, on the vertices still covered by an
    /// edge.
    pub residual: Hypergraph,
}

impl GyoTrace {
    pub fn is_empty_residual(&self) -> bool {
        self.residual.edge_count() == 0
    }

    /// Line-oriented rendering: `rule item` per step, then the residual
    /// status.
    pub fn render(&self, h: &Hypergraph) -> String {
        let mut out = String::new();
        for step in &self.steps {
            let item = match step.rule {
                GyoRule::EarVertex => h.name(step.item).to_string(),
                _ => step.item.to_string(),
            };
            out.push_str(&format!("{} {}\n", step.rule, item));
        }
        let status = if self.is_empty_residual() { "empty" } else { "nonempty" };
        out.push_str(&format!("residual: {status}\n"));
        out
    }
}

struct GyoState {
    edges: Vec<Option<Vec<usize>>>,
    count: Vec<usize>,
}

impl GyoState {
    fn new(h: &Hypergraph) -> Self {
        let mut count = vec![0; h.vertex_count()];
        for e in h.edges() {
            for &v in e {
                count[v] += 1;
            }
        }
        let edges = h
            .edges()
            .iter()
            .map(|e| {
                let mut s = e.clone();
                s.sort_unstable();
                Some(s)
            })
            .collect();
        GyoState { edges, count }
    }

    fn contained_in_other(&self, e: usize) -> bool {
        let Some(small) = &self.edges[e] else {
            return false;
        };
        self.edges.iter().enumerate().any(|(f, big)| {
            f != e
                && big
                    .as_ref()
                    .is_some_and(|big| big.len() >= small.len() && small.iter().all(|v| big.binary_search(v).is_ok()))
        })
    }

    fn is_applicable(&self, step: GyoStep) -> bool {
        match step.rule {
            GyoRule::EarVertex => self.count.get(step.item) == Some(&1),
            GyoRule::ContainedEdge => step.item < self.edges.len() && self.contained_in_other(step.item),
            GyoRule::EmptyEdge => matches!(self.edges.get(step.item), Some(Some(e)) if e.is_empty()),
        }
    }

    /// First applicable step by rule, then item.
    fn first(&self) -> Option<GyoStep> {
        if let Some(v) = self.count.iter().position(|&c| c == 1) {
            return Some(GyoStep {
                rule: GyoRule::EarVertex,
                item: v,
            });
        }
        if let Some(e) = (0..self.edges.len()).find(|&e| self.contained_in_other(e)) {
            return Some(GyoStep {
                rule: GyoRule::ContainedEdge,
                item: e,
            });
        }
        self.edges
            .iter()
            .position(|e| e.as_ref().is_some_and(Vec::is_empty))
            .map(|e| GyoStep {
                rule: GyoRule::EmptyEdge,
                item: e,
            })
    }

    fn all(&self) -> Vec<GyoStep> {
        let mut out: Vec<GyoStep> = (0..self.count.len())
            .filter(|&v| self.count[v] == 1)
            .map(|v| GyoStep {
                rule: GyoRule::EarVertex,
                item: v,
            })
            .collect();
        out.extend(
            (0..self.edges.len())
                .filter(|&e| self.contained_in_other(e))
                .map(|e| GyoStep {
                    rule: GyoRule::ContainedEdge,
                    item: e,
                }),
        );
        out.extend(
            (0..self.edges.len())
                .filter(|&e| self.edges[e].as_ref().is_some_and(Vec::is_empty))
                .map(|e| GyoStep {
                    rule: GyoRule::EmptyEdge,
                    item: e,
                }),
        );
        out
    }

    fn apply(&mut self, step: GyoStep) {
        match step.rule {
            GyoRule::EarVertex => {
                let v = step.item;
                for e in self.edges.iter_mut().flatten() {
                    if let Ok(pos) = e.binary_search(&v) {
                        e.remove(pos);
                    }
                }
                self.count[v] = 0;
            }
            GyoRule::ContainedEdge | GyoRule::EmptyEdge => {
                if let Some(e) = self.edges[step.item].take() {
                    for v in e {
                        self.count[v] -= 1;
                    }
                }
            }
        }
    }

    fn residual(&self, h: &Hypergraph) -> Result<Hypergraph> {
        let mut keep = Vec::new();
        let mut remap = vec![usize::MAX; h.vertex_count()];
        for (v, slot) in remap.iter_mut().enumerate() {
            if self.count[v] > 0 {
                *slot = keep.len();
                keep.push(h.name(v).to_string());
            }
        }
        let edges = self
            .edges
            .iter()
            .enumerate()
            .filter_map(|(i, e)| {
                e.as_ref()?;
                // keep the caller's vertex order inside each edge
                Some(
                    h.edge(i)
                        .iter()
                        .filter(|&&v| self.count[v] > 0 && self.edges[i].as_ref().unwrap().binary_search(&v).is_ok())
                        .map(|&v| remap[v])
                        .collect(),
                )
            })
            .collect();
        Hypergraph::from_indices(keep, edges)
    }
}

/// Runs GYO reduction to its fixpoint, always applying the lowest-index rule
/// that applies, on its lowest-index item.
pub fn gyo_reduce(h: &Hypergraph) -> GyoTrace {
    let mut state = GyoState::new(h);
    let mut steps = Vec::new();
    while let Some(step) = state.first() {
        state.apply(step);
        steps.push(step);
    }
    GyoTrace {
        residual: state.residual(h).expect("GYO fixpoint has distinct non-empty edges"),
        steps,
    }
}

/// GYO reduction where `choose` picks the next step among all applicable
/// ones (it receives them sorted by rule, then item).
pub fn gyo_reduce_with<F>(h: &Hypergraph, mut choose: F) -> GyoTrace
where
    F: FnMut(&[GyoStep]) -> usize,
{
    let mut state = GyoState::new(h);
    let mut steps = Vec::new();
    loop {
        let options = state.all();
        if options.is_empty() {
            break;
        }
        let step = options[choose(&options) % options.len()];
        state.apply(step);
        steps.push(step);
    }
    GyoTrace {
        residual: state.residual(h).expect("GYO fixpoint has distinct non-empty edges"),
        steps,
    }
}

/// Re-applies `steps` to `h`, failing on the first step that does not
/// apply, and returns the result. Intermediate states holding duplicate or
/// empty edges are not hypergraphs and are reported as errors.
pub fn replay(h: &Hypergraph, steps: &[GyoStep]) -> Result<Hypergraph> {
    let mut state = GyoState::new(h);
    for (i, &step) in steps.iter().enumerate() {
        if !state.is_applicable(step) {
            return Err(Error::Precondition(format!(
                "step {i} ({} {}) does not apply",
                step.rule, step.item
            )));
        }
        state.apply(step);
    }
    state.residual(h)
}

pub fn is_alpha_acyclic(h: &Hypergraph) -> bool {
    gyo_reduce(h).is_empty_residual()
}

pub const DEFAULT_BRUTE_CAP: usize = 12;

/// Exhaustive check over all vertex subsets `X'`: the hypergraph is
/// alpha-acyclic iff no minimized trace on `X'` is a graph cycle (connected,
/// 2-regular, 2-uniform) or equals `{X' - x : x in X'}` with `|X'| >= 3`.
pub fn is_alpha_acyclic_brute(h: &Hypergraph, cap: usize) -> Result<bool> {
    let n = h.vertex_count();
    if n > cap || n > 30 {
        return Err(Error::CapExceeded {
            what: "vertex count",
            value: n as u128,
            cap: cap.min(30) as u128,
        });
    }
    let masks: Vec<u32> = h
        .edges()
        .iter()
        .map(|e| e.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    let mut traced: Vec<u32> = Vec::with_capacity(masks.len());
    for subset in 1u32..(1u32 << n) {
        traced.clear();
        for &m in &masks {
            let t = m & subset;
            if t != 0 && !traced.contains(&t) {
                traced.push(t);
            }
        }
        let minimal: Vec<u32> = traced
            .iter()
            .copied()
            .filter(|&e| !traced.iter().any(|&f| f != e && f & e == e))
            .collect();
        if is_graph_cycle(subset, &minimal) || is_co_singleton_family(subset, &minimal) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_graph_cycle(subset: u32, edges: &[u32]) -> bool {
    if edges.len() < 3 || edges.iter().any(|e| e.count_ones() != 2) {
        return false;
    }
    let mut bits = subset;
    while bits != 0 {
        let v = bits & bits.wrapping_neg();
        if edges.iter().filter(|&&e| e & v != 0).count() != 2 {
            return false;
        }
        bits &= bits - 1;
    }
    // connectivity
    let mut reached = subset & subset.wrapping_neg();
    loop {
        let grown = edges.iter().filter(|&&e| e & reached != 0).fold(reached, |r, &e| r | e);
        if grown == reached {
            break;
        }
        reached = grown;
    }
    reached == subset
}

fn is_co_singleton_family(subset: u32, edges: &[u32]) -> bool {
    let size = subset.count_ones() as usize;
    size >= 3
        && edges.len() == size
        && edges
            .iter()
            .all(|&e| e & !subset == 0 && (subset & !e).count_ones() == 1)
}

/// For linear hypergraphs: alpha-acyclic iff the Levi graph is a forest.
pub fn linear_forest_test(h: &Hypergraph) -> Result<bool> {
    let t = h.linearity_t();
    if t != 1 {
        return Err(Error::NotLinear(t));
    }
    Ok(levi_graph(h).graph().is_forest())
}
