//! Test-only oracles. Nothing here calls into the code paths it checks:
//! cycle detection is a colored DFS, maximum acyclic sets come from a
//! descending-size subset scan built on that DFS, and residual degrees are
//! recounted from scratch.

#![allow(dead_code)]

use mingreedy::{gen, Digraph, GreedyResult, Rational, Vertex};

/// Colored DFS over the vertices with `mask` set. True iff a cycle exists.
pub fn dfs_has_cycle(d: &Digraph, mask: &[bool]) -> bool {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Gray,
        Black,
    }
    fn visit(d: &Digraph, mask: &[bool], color: &mut [Color], u: usize) -> bool {
        color[u] = Color::Gray;
        for &w in d.out_neighbors(u as Vertex) {
            let w = w as usize;
            if !mask[w] {
                continue;
            }
            let c = color[w];
            if c == Color::Gray || (c == Color::White && visit(d, mask, color, w)) {
                return true;
            }
        }
        color[u] = Color::Black;
        false
    }
    let n = d.order();
    let mut color = vec![Color::White; n];
    (0..n).any(|v| mask[v] && color[v] == Color::White && visit(d, mask, &mut color, v))
}

pub fn dfs_is_acyclic(d: &Digraph) -> bool {
    !dfs_has_cycle(d, &vec![true; d.order()])
}

/// Largest acyclic set size by scanning subsets from largest to smallest.
pub fn max_acyclic_by_descending_scan(d: &Digraph) -> usize {
    let n = d.order();
    assert!(n <= 16);
    let mut by_size: Vec<u32> = (0..1u32 << n).collect();
    by_size.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    for s in by_size {
        let mask: Vec<bool> = (0..n).map(|v| s >> v & 1 == 1).collect();
        if !dfs_has_cycle(d, &mask) {
            return s.count_ones() as usize;
        }
    }
    unreachable!("the empty set is acyclic")
}

/// Replays a greedy trace and checks, at every step, that the chosen vertex
/// has minimum out-degree among survivors and that the recorded
/// out-neighborhood is exactly its surviving out-neighborhood. Returns a
/// description of the first discrepancy.
pub fn replay_min_degree_trace(d: &Digraph, result: &GreedyResult, require_min: bool) -> Result<(), String> {
    let n = d.order();
    let mut alive = vec![true; n];
    for (i, step) in result.steps().enumerate() {
        let v = step.vertex as usize;
        if !alive[v] {
            return Err(format!("step {i}: vertex {v} already deleted"));
        }
        let residual = |u: usize| {
            d.out_neighbors(u as Vertex)
                .iter()
                .filter(|&&w| alive[w as usize])
                .count()
        };
        let expected: Vec<Vertex> = d
            .out_neighbors(v as Vertex)
            .iter()
            .copied()
            .filter(|&w| alive[w as usize])
            .collect();
        if step.out_neighbors != expected.as_slice() {
            return Err(format!(
                "step {i}: recorded neighborhood {:?} != {:?}",
                step.out_neighbors, expected
            ));
        }
        if require_min {
            let min = (0..n).filter(|&u| alive[u]).map(residual).min().unwrap();
            if residual(v) != min {
                return Err(format!("step {i}: degree {} but minimum is {min}", residual(v)));
            }
        }
        alive[v] = false;
        for &w in step.out_neighbors {
            alive[w as usize] = false;
        }
    }
    if alive.iter().any(|&a| a) {
        return Err("vertices survive the last step".into());
    }
    Ok(())
}

/// Adds the reverse of every arc.
pub fn symmetric_closure(d: &Digraph) -> Digraph {
    let arcs: Vec<_> = d.arcs().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
    Digraph::from_arcs_dedup(d.order(), arcs).unwrap()
}

/// Classical undirected sum Σ 1/(d(v)+1), from `degree()`.
pub fn undirected_caro_wei(d: &Digraph) -> Rational {
    d.vertices()
        .map(|v| Rational::unit_fraction(d.degree(v).unwrap() as u64 + 1))
        .sum()
}

/// The probability grid 0.05, 0.15, …, 0.95.
pub fn probability_grid() -> Vec<f64> {
    (0..10).map(|i| 0.05 + 0.1 * i as f64).collect()
}

/// The seeded random ensemble: n ∈ 1..=12, p over the grid, `seeds` seeds
/// per cell.
pub fn ensemble(seeds: u64) -> Vec<(String, Digraph)> {
    let mut out = Vec::new();
    for n in 1..=12usize {
        for (pi, &p) in probability_grid().iter().enumerate() {
            for s in 0..seeds {
                let seed = (n as u64) << 32 | (pi as u64) << 16 | s;
                let d = gen::random_digraph(n, p, seed).unwrap();
                out.push((format!("random-n{n}-p{p:.2}-s{seed}"), d));
            }
        }
    }
    out
}
