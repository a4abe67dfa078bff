//! The distance-2 counting audit for biregular bipartite graphs, empirical
//! sparsity of line-graph squares, and evaluation of the upper bounds on
//! the incidence chromatic number.

use std::fmt;

use num_rational::Ratio;

use crate::acyclicity::is_alpha_acyclic;
use crate::coloring::{clique_lower_bound, exact_chromatic, ExactOptions, ExactOutcome};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::levi::{
    biregular_profile, d2_table, is_k2t1_free, line_graph_square, max_codegree, sorted_intersection_len, BipartiteGraph,
};

/// Upper bound on the per-edge zeta sum in a `K_{2,t+1}`-free
/// `(a, b)`-biregular graph, as the sum of its four contributions.
pub fn poly_bound(a: i64, b: i64, t: i64) -> Result<i128> {
    if a < 1 || b < 1 || t < 1 {
        return Err(Error::Precondition(format!(
            "a, b, t must be positive, got ({a}, {b}, {t})"
        )));
    }
    let (a, b, t) = (a as i128, b as i128, t as i128);
    let near_v = (b - 1) * ((a + t - 1) * b - 2 * t);
    let near_u = (a - 1) * ((b + t - 1) * a - 2 * t);
    let far_v = (a - 1) * (b - 1) * ((3 * t - 1) * (a - 2) + b * t);
    let far_u = (a - 1) * (b - 1) * ((3 * t - 1) * (b - 2) + a * t);
    Ok(near_v + near_u + far_v + far_u)
}

/// The same polynomial collected by powers of `b`.
pub fn poly_bound_collected(a: i64, b: i64, t: i64) -> i128 {
    let (a, b, t) = (a as i128, b as i128, t as i128);
    (4 * a - 3) * t * b * b + (4 * t * a * a - (20 * t - 4) * a + 13 * t - 4) * b
        - (3 * t * a * a - (13 * t - 4) * a + 8 * t - 4)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaEdge {
    pub edge: usize,
    pub zeta_sum: u64,
    /// Edges among the neighbors of `edge` in the line-graph square.
    pub neighborhood_edges: u64,
    pub poly_bound: i128,
    pub slack: i128,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZetaAudit {
    pub a: usize,
    pub b: usize,
    pub t: usize,
    pub per_edge: Vec<ZetaEdge>,
    /// Largest `zeta_sum / poly_bound` (0 when every bound is 0).
    pub max_ratio: Ratio<i128>,
}

impl ZetaAudit {
    pub fn all_within_bound(&self) -> bool {
        self.per_edge.iter().all(|e| e.slack >= 0)
    }

    /// `zeta_sum = 2 * neighborhood_edges` on every edge.
    pub fn identity_holds(&self) -> bool {
        self.per_edge.iter().all(|e| e.zeta_sum == 2 * e.neighborhood_edges)
    }
}

impl fmt::Display for ZetaAudit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(a, b, t) = ({}, {}, {})", self.a, self.b, self.t)?;
        writeln!(
            f,
            "{:>6} {:>10} {:>10} {:>10} {:>8}",
            "edge", "zeta_sum", "nbr_edges", "bound", "slack"
        )?;
        for e in &self.per_edge {
            writeln!(
                f,
                "{:>6} {:>10} {:>10} {:>10} {:>8}",
                e.edge, e.zeta_sum, e.neighborhood_edges, e.poly_bound, e.slack
            )?;
        }
        writeln!(f, "max ratio: {}", self.max_ratio)
    }
}

fn require_profile(g: &BipartiteGraph, t: usize) -> Result<(usize, usize)> {
    let profile = biregular_profile(g).ok_or(Error::NotBiregular)?;
    if t == 0 {
        return Err(Error::Precondition("t must be positive".into()));
    }
    if !is_k2t1_free(g, t) {
        return Err(Error::NotK2tFree(t));
    }
    Ok(profile)
}

/// Exact zeta sums for every edge of a biregular `K_{2,t+1}`-free graph,
/// next to the polynomial bound.
pub fn zeta_sum_audit(g: &BipartiteGraph, t: usize) -> Result<ZetaAudit> {
    let (a, b) = require_profile(g, t)?;
    debug_assert!(max_codegree(g) <= t);
    let bound = poly_bound(a as i64, b as i64, t as i64)?;
    let near = d2_table(g);
    let square = line_graph_square(g);
    let mut per_edge = Vec::with_capacity(near.len());
    let mut max_ratio = Ratio::from_integer(0);
    for (e, ne) in near.iter().enumerate() {
        let zeta_sum: u64 = ne.iter().map(|&f| sorted_intersection_len(ne, &near[f]) as u64).sum();
        let zs = zeta_sum as i128;
        if bound > 0 {
            max_ratio = max_ratio.max(Ratio::new(zs, bound));
        }
        per_edge.push(ZetaEdge {
            edge: e,
            zeta_sum,
            neighborhood_edges: square.neighborhood_edge_count(e) as u64,
            poly_bound: bound,
            slack: bound - zs,
        });
    }
    Ok(ZetaAudit {
        a,
        b,
        t,
        per_edge,
        max_ratio,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparsityReport {
    /// `1 - max_neighborhood_edges / C(Δ(L²), 2)`.
    pub sigma: Ratio<i128>,
    pub max_degree: usize,
    pub max_neighborhood_edges: usize,
    /// Neighborhood edge count per graph edge.
    pub per_edge: Vec<usize>,
    /// `1 - (4a-3)t/(2a-1)²` with `a` the part-U degree; only for `t < a`.
    pub target: Option<Ratio<i128>>,
}

impl fmt::Display for SparsityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "max degree of L(G)^2: {}", self.max_degree)?;
        writeln!(f, "max neighborhood edges: {}", self.max_neighborhood_edges)?;
        writeln!(f, "sigma: {} ({:.6})", self.sigma, ratio_f64(self.sigma))?;
        match self.target {
            Some(t) => writeln!(f, "asymptotic target: {} ({:.6})", t, ratio_f64(t)),
            None => writeln!(f, "asymptotic target: n/a"),
        }
    }
}

pub fn ratio_f64(r: Ratio<i128>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Empirical sparsity of the line-graph square of a biregular graph.
pub fn sparsity_empirical(g: &BipartiteGraph, t: usize) -> Result<SparsityReport> {
    let (a, _) = biregular_profile(g).ok_or(Error::NotBiregular)?;
    let square = line_graph_square(g);
    let per_edge: Vec<usize> = (0..square.node_count())
        .map(|e| square.neighborhood_edge_count(e))
        .collect();
    let max_degree = square.max_degree();
    let max_neighborhood_edges = per_edge.iter().copied().max().unwrap_or(0);
    let sigma = if max_degree <= 1 {
        Ratio::from_integer(1)
    } else {
        let pairs = (max_degree * (max_degree - 1) / 2) as i128;
        Ratio::from_integer(1) - Ratio::new(max_neighborhood_edges as i128, pairs)
    };
    let target = (t >= 1 && t < a).then(|| {
        let (a, t) = (a as i128, t as i128);
        Ratio::from_integer(1) - Ratio::new((4 * a - 3) * t, (2 * a - 1) * (2 * a - 1))
    });
    Ok(SparsityReport {
        sigma,
        max_degree,
        max_neighborhood_edges,
        per_edge,
        target,
    })
}

fn require_t_below(a: u64, t: u64) -> Result<()> {
    if t == 0 || t >= a {
        return Err(Error::Precondition(format!(
            "need 1 <= t < a, got a = {a}, t = {t}; for t >= a the K_{{2,t+1}}-free condition is vacuous"
        )));
    }
    Ok(())
}

/// `(4a-3)t / (2a-1)²`.
fn density(a: u64, t: u64) -> f64 {
    let a = a as f64;
    (4.0 * a - 3.0) * t as f64 / ((2.0 * a - 1.0) * (2.0 * a - 1.0))
}

/// `Z(a, t) = (1 + x)/2 + (1 - x)^{3/2}/6` with `x = (4a-3)t/(2a-1)²`.
pub fn eval_z(a: u64, t: u64) -> Result<f64> {
    require_t_below(a, t)?;
    let x = density(a, t);
    Ok(0.5 * (1.0 + x) + (1.0 - x).max(0.0).powf(1.5) / 6.0)
}

/// `W(k, t) = 2 Z(k, t)`.
pub fn eval_w(k: u64, t: u64) -> Result<f64> {
    require_t_below(k, t)?;
    let x = density(k, t);
    Ok((1.0 + x) + (1.0 - x).max(0.0).powf(1.5) / 3.0)
}

/// `f(r) = W(r, 1) r`.
pub fn eval_f(r: u64) -> Result<f64> {
    Ok(eval_w(r, 1)? * r as f64)
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Int(u64),
    Real(f64),
    /// Exact search ran out of budget.
    Range(u64, u64),
    None,
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Int(v) => write!(f, "{v}"),
            BoundValue::Real(v) => write!(f, "{v:.4}"),
            BoundValue::Range(lo, hi) => write!(f, "[{lo}, {hi}]"),
            BoundValue::None => write!(f, "-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundRow {
    pub name: &'static str,
    pub value: BoundValue,
    pub applicable: bool,
    /// Valid only for large parameters; never compared with exact values.
    pub asymptotic: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundTable {
    pub rows: Vec<BoundRow>,
}

impl BoundTable {
    pub fn get(&self, name: &str) -> Option<&BoundRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// `name=value` lines; inapplicable rows get `n/a`.
    pub fn to_key_values(&self) -> String {
        let mut out = String::new();
        for r in &self.rows {
            let v = if r.applicable {
                r.value.to_string()
            } else {
                "n/a".into()
            };
            out.push_str(&format!("{}={}\n", r.name, v));
        }
        out
    }

    /// Known exact value, if any.
    pub fn exact(&self) -> Option<u64> {
        match self.get("exact")?.value {
            BoundValue::Int(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for BoundTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<16} {:>12} {:<12} kind", "bound", "value", "applicable")?;
        for r in &self.rows {
            let kind = if r.asymptotic { "asymptotic" } else { "exact" };
            writeln!(
                f,
                "{:<16} {:>12} {:<12} {}",
                r.name,
                r.value.to_string(),
                if r.applicable { "yes" } else { "no" },
                kind
            )?;
        }
        Ok(())
    }
}

/// Every bound on the incidence chromatic number of `h`, with the exact
/// value when requested and the solver can handle the instance.
pub fn bound_table(h: &Hypergraph, with_exact: bool, options: ExactOptions) -> BoundTable {
    let r = h.rank() as u64;
    let delta = h.max_degree() as u64;
    let rho = r.max(delta);
    let t = h.linearity_t() as u64;
    let linear = t <= 1;
    let nonempty = h.edge_count() > 0;
    let mut rows = Vec::new();
    let mut row = |name, value, applicable, asymptotic| {
        rows.push(BoundRow {
            name,
            value,
            applicable,
            asymptotic,
        })
    };
    row("greedy_2rΔ", BoundValue::Int(2 * r * delta), true, false);
    row("global_1772", BoundValue::Real(1.772 * (rho * rho) as f64), true, true);
    match eval_w(r, t) {
        Ok(w) => row("W_bound", BoundValue::Real(w * (r * delta) as f64), true, true),
        Err(_) => row("W_bound", BoundValue::None, false, true),
    }
    let l1531 = linear && r >= 3;
    row(
        "linear_1531",
        if l1531 {
            BoundValue::Real(1.531 * (r * delta) as f64)
        } else {
            BoundValue::None
        },
        l1531,
        true,
    );
    let mahdian = linear && rho >= 3;
    row(
        "mahdian",
        if mahdian {
            BoundValue::Real(2.0 * (rho * rho) as f64 / (rho as f64).ln())
        } else {
            BoundValue::None
        },
        mahdian,
        true,
    );
    let acyclic = nonempty && linear && is_alpha_acyclic(h);
    row(
        "acyclic_linear",
        if acyclic {
            BoundValue::Int(delta + r - 1)
        } else {
            BoundValue::None
        },
        acyclic,
        false,
    );
    match clique_lower_bound(h) {
        Ok(c) => row("clique_lower", BoundValue::Int(c.bound as u64), true, false),
        Err(_) => row("clique_lower", BoundValue::None, false, false),
    }
    if with_exact {
        match exact_chromatic(h, options) {
            Ok(ExactOutcome::Exact { chi, .. }) => row("exact", BoundValue::Int(chi as u64), true, false),
            Ok(ExactOutcome::Unknown { lower, upper, .. }) => {
                row("exact", BoundValue::Range(lower as u64, upper as u64), true, false)
            }
            Err(_) => row("exact", BoundValue::None, false, false),
        }
    }
    BoundTable { rows }
}
