//! Reference implementations written straight from the definitions, used to
//! cross-check the library. They favour obviousness over speed.
#![allow(dead_code)]

use incidence_core::Hypergraph;

/// Incidences as `(vertex, edge)` in edge order, then position in the edge.
pub fn incidences(h: &Hypergraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (e, edge) in h.edges().iter().enumerate() {
        for &v in edge {
            out.push((v, e));
        }
    }
    out
}

/// Adjacency of two distinct incidences: same vertex, or both vertices in
/// one of the two edges.
pub fn adjacent(h: &Hypergraph, a: (usize, usize), b: (usize, usize)) -> bool {
    if a == b {
        return false;
    }
    let (x, s) = a;
    let (y, t) = b;
    let in_edge = |v: usize, e: usize| h.edges()[e].contains(&v);
    x == y || (in_edge(x, s) && in_edge(y, s)) || (in_edge(x, t) && in_edge(y, t))
}

/// Smallest `k` admitting a proper `k`-coloring of the graph on `n` nodes
/// given by `adj`, by plain backtracking.
pub fn brute_chromatic(n: usize, adj: &[Vec<bool>]) -> usize {
    fn fill(adj: &[Vec<bool>], colors: &mut Vec<usize>, k: usize) -> bool {
        let i = colors.len();
        if i == adj.len() {
            return true;
        }
        // symmetry: node i may open at most one new color
        let open = colors.iter().copied().max().map_or(1, |m| m + 1).min(k);
        for c in 1..=open {
            if (0..i).all(|j| !adj[i][j] || colors[j] != c) {
                colors.push(c);
                if fill(adj, colors, k) {
                    return true;
                }
                colors.pop();
            }
        }
        false
    }
    (0..=n).find(|&k| fill(adj, &mut Vec::new(), k)).unwrap()
}

/// Minimum palette of a proper incidence coloring, by enumeration.
pub fn brute_incidence_chi(h: &Hypergraph) -> usize {
    let inc = incidences(h);
    let adj: Vec<Vec<bool>> = inc
        .iter()
        .map(|&a| inc.iter().map(|&b| adjacent(h, a, b)).collect())
        .collect();
    brute_chromatic(inc.len(), &adj)
}

/// Levi edges (incidences) with the "within distance two in the line graph"
/// relation, computed from the line graph's adjacency matrix.
pub fn levi_square_adjacency(h: &Hypergraph) -> Vec<Vec<bool>> {
    let inc = incidences(h);
    let m = inc.len();
    // Levi edges share an endpoint iff same vertex or same edge
    let line: Vec<Vec<bool>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| i != j && (inc[i].0 == inc[j].0 || inc[i].1 == inc[j].1))
                .collect()
        })
        .collect();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| i != j && (line[i][j] || (0..m).any(|k| line[i][k] && line[k][j])))
                .collect()
        })
        .collect()
}

/// Alpha-acyclicity through join trees: a maximum-weight spanning tree of
/// the edge-intersection graph must keep, for every vertex, the edges
/// containing it connected.
pub fn join_tree_acyclic(h: &Hypergraph) -> bool {
    let edges = h.edges();
    let m = edges.len();
    if m <= 1 {
        return true;
    }
    let weight = |i: usize, j: usize| edges[i].iter().filter(|v| edges[j].contains(v)).count();
    // Prim on the complete graph
    let mut in_tree = vec![false; m];
    let mut best = vec![(0usize, usize::MAX); m];
    let mut tree_adj = vec![Vec::new(); m];
    in_tree[0] = true;
    for (j, slot) in best.iter_mut().enumerate().skip(1) {
        *slot = (weight(0, j), 0);
    }
    for _ in 1..m {
        let next = (0..m)
            .filter(|&j| !in_tree[j])
            .max_by_key(|&j| (best[j].0, std::cmp::Reverse(j)))
            .unwrap();
        in_tree[next] = true;
        let p = best[next].1;
        tree_adj[p].push(next);
        tree_adj[next].push(p);
        for j in 0..m {
            if !in_tree[j] && weight(next, j) > best[j].0 {
                best[j] = (weight(next, j), next);
            }
        }
    }
    for v in 0..h.vertex_count() {
        let holding: Vec<usize> = (0..m).filter(|&e| edges[e].contains(&v)).collect();
        if holding.len() <= 1 {
            continue;
        }
        let mut seen = vec![false; m];
        let mut stack = vec![holding[0]];
        seen[holding[0]] = true;
        while let Some(x) = stack.pop() {
            for &y in &tree_adj[x] {
                if !seen[y] && edges[y].contains(&v) {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        if holding.iter().any(|&e| !seen[e]) {
            return false;
        }
    }
    true
}

/// Hypergraph on vertices `v0..v{n-1}` whose edges are the bitmasks.
pub fn from_masks(n: usize, masks: &[u32]) -> Hypergraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = masks
        .iter()
        .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).collect())
        .collect();
    Hypergraph::from_indices(names, edges).unwrap()
}

/// Every family of at most `max_edges` distinct non-empty subsets of an
/// `n`-set, as sorted mask lists.
pub fn all_families(n: usize, max_edges: usize) -> Vec<Vec<u32>> {
    let subsets: Vec<u32> = (1..1u32 << n).collect();
    let mut out = vec![Vec::new()];
    fn extend(subsets: &[u32], start: usize, cur: &mut Vec<u32>, left: usize, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            return;
        }
        for i in start..subsets.len() {
            cur.push(subsets[i]);
            out.push(cur.clone());
            extend(subsets, i + 1, cur, left - 1, out);
            cur.pop();
        }
    }
    extend(&subsets, 0, &mut Vec::new(), max_edges, &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically least sorted mask list over all vertex relabelings.
pub fn canonical_form(n: usize, masks: &[u32]) -> Vec<u32> {
    permutations(n)
        .into_iter()
        .map(|p| {
            let mut mapped: Vec<u32> = masks
                .iter()
                .map(|&m| (0..n).filter(|&i| m >> i & 1 == 1).fold(0u32, |acc, i| acc | 1 << p[i]))
                .collect();
            mapped.sort_unstable();
            mapped
        })
        .min()
        .unwrap()
}

/// One representative per isomorphism class of families from
/// [`all_families`].
pub fn nonisomorphic_families(n: usize, max_edges: usize) -> Vec<Vec<u32>> {
    let mut seen = std::collections::BTreeSet::new();
    all_families(n, max_edges)
        .into_iter()
        .filter(|f| seen.insert(canonical_form(n, f)))
        .collect()
}
