//! Min-Greedy: repeatedly pick a vertex of minimum out-degree in the
//! residual digraph, keep it, and delete it together with its residual
//! out-neighborhood. The kept vertices form an acyclic set whose size is
//! at least `Σ 1/(d⁺(v)+1)`.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_xoshiro::Xoshiro256StarStar;
use thiserror::Error;

use crate::digraph::{Digraph, GraphError, Vertex, VertexSet};
use crate::rational::Rational;

/// How Min-Greedy chooses among vertices that share the minimum residual
/// out-degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TieRule {
    LowestId,
    HighestId,
    /// Uniformly random among the tied vertices, derived from the seed only.
    Random(u64),
}

impl TieRule {
    pub fn name(&self) -> &'static str {
        match self {
            TieRule::LowestId => "lowest",
            TieRule::HighestId => "highest",
            TieRule::Random(_) => "random",
        }
    }

    /// Parses `lowest`, `highest` or `random`; the seed is used by `random` only.
    pub fn parse_with_seed(s: &str, seed: u64) -> Result<Self, ParseTieRuleError> {
        match s {
            "lowest" => Ok(TieRule::LowestId),
            "highest" => Ok(TieRule::HighestId),
            "random" => Ok(TieRule::Random(seed)),
            _ => Err(ParseTieRuleError(s.to_string())),
        }
    }

    /// Selection priority of every vertex: among tied vertices the one with
    /// the smallest priority wins. Returned as `(priority_of, vertex_of)`.
    fn priorities(&self, n: usize) -> (Vec<u32>, Vec<Vertex>) {
        let identity: Vec<Vertex> = (0..n as Vertex).collect();
        let vertex_of = match *self {
            TieRule::LowestId => identity,
            TieRule::HighestId => identity.into_iter().rev().collect(),
            TieRule::Random(seed) => {
                // A uniform random permutation makes the minimum-priority
                // member of any tie set uniform over that set.
                let mut perm = identity;
                perm.shuffle(&mut Xoshiro256StarStar::seed_from_u64(seed));
                perm
            }
        };
        let mut priority_of = vec![0u32; n];
        for (p, &v) in vertex_of.iter().enumerate() {
            priority_of[v as usize] = p as u32;
        }
        (priority_of, vertex_of)
    }
}

impl fmt::Display for TieRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TieRule::Random(seed) => write!(f, "random({seed})"),
            other => f.write_str(other.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown tie rule {0:?} (expected lowest, highest or random)")]
pub struct ParseTieRuleError(String);

impl FromStr for TieRule {
    type Err = ParseTieRuleError;

    /// Accepts `lowest`, `highest`, `random` (seed 0) or `random(<seed>)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(inner) = s.strip_prefix("random(").and_then(|r| r.strip_suffix(')')) {
            return inner
                .parse()
                .map(TieRule::Random)
                .map_err(|_| ParseTieRuleError(s.to_string()));
        }
        TieRule::parse_with_seed(s, 0)
    }
}

/// One elimination step: the kept vertex and the residual out-neighbors
/// deleted with it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreedyStep<'a> {
    pub vertex: Vertex,
    pub out_neighbors: &'a [Vertex],
}

impl GreedyStep<'_> {
    /// Out-degree of the kept vertex in the residual digraph at selection time.
    pub fn out_degree(&self) -> usize {
        self.out_neighbors.len()
    }

    /// `{vertex} ∪ out_neighbors`, the vertices this step removes.
    pub fn block(&self) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(self.vertex).chain(self.out_neighbors.iter().copied())
    }
}

/// Selected vertices in selection order together with the full elimination
/// trace. The trace is stored flat: step `i` deleted
/// `eliminated[offsets[i]..offsets[i + 1]]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyResult {
    order: usize,
    selected: Vec<Vertex>,
    offsets: Vec<usize>,
    eliminated: Vec<Vertex>,
}

impl GreedyResult {
    fn with_order(order: usize) -> Self {
        GreedyResult {
            order,
            selected: Vec::new(),
            offsets: vec![0],
            eliminated: Vec::new(),
        }
    }

    fn push_step(&mut self, vertex: Vertex, out_neighbors: impl IntoIterator<Item = Vertex>) {
        self.selected.push(vertex);
        self.eliminated.extend(out_neighbors);
        self.offsets.push(self.eliminated.len());
    }

    /// Order of the input digraph.
    pub fn order(&self) -> usize {
        self.order
    }

    /// `v₁, …, v_r` in selection order.
    pub fn selected(&self) -> &[Vertex] {
        &self.selected
    }

    pub fn len(&self) -> usize {
        self.selected.len()
    }

    pub fn is_empty(&self) -> bool {
        self.selected.is_empty()
    }

    pub fn selected_set(&self) -> VertexSet {
        VertexSet::new(self.order, self.selected.iter().copied()).expect("selected ids are in range")
    }

    /// The complementary feedback vertex set `V ∖ S`.
    pub fn feedback_set(&self) -> VertexSet {
        self.selected_set().complement()
    }

    pub fn step(&self, i: usize) -> GreedyStep<'_> {
        GreedyStep {
            vertex: self.selected[i],
            out_neighbors: &self.eliminated[self.offsets[i]..self.offsets[i + 1]],
        }
    }

    pub fn steps(&self) -> impl ExactSizeIterator<Item = GreedyStep<'_>> + '_ {
        (0..self.selected.len()).map(move |i| self.step(i))
    }

    /// The step blocks `{v_i} ∪ N⁺_{D_i}(v_i)` are pairwise disjoint and
    /// cover every vertex exactly once.
    pub fn is_partition(&self) -> bool {
        let mut seen = vec![false; self.order];
        let mut covered = 0usize;
        for step in self.steps() {
            for v in step.block() {
                let Some(slot) = seen.get_mut(v as usize) else {
                    return false;
                };
                if *slot {
                    return false;
                }
                *slot = true;
                covered += 1;
            }
        }
        covered == self.order
    }
}

/// Runs Min-Greedy.
///
/// Residual out-degrees live in a bucket queue indexed by degree. Deleting a
/// vertex decrements the key of each surviving in-neighbor, so keys only
/// decrease and the minimum pointer moves up at most `n + m` times overall.
/// Each bucket is a lazy min-heap over tie priorities; stale entries (dead
/// vertices, or vertices whose degree has since dropped) are skipped on pop.
pub fn min_greedy(digraph: &Digraph, tie: TieRule) -> GreedyResult {
    let n = digraph.order();
    let mut result = GreedyResult::with_order(n);
    if n == 0 {
        return result;
    }
    let (priority_of, vertex_of) = tie.priorities(n);

    let mut degree: Vec<u32> = digraph
        .vertices()
        .map(|v| digraph.out_neighbors(v).len() as u32)
        .collect();
    let mut alive = vec![true; n];
    let mut buckets: Vec<BinaryHeap<Reverse<u32>>> = vec![BinaryHeap::new(); n];
    for &v in &vertex_of {
        buckets[degree[v as usize] as usize].push(Reverse(priority_of[v as usize]));
    }

    let mut min = 0usize;
    let mut remaining = n;
    let mut block: Vec<Vertex> = Vec::new();
    while remaining > 0 {
        let chosen = loop {
            let Some(&Reverse(p)) = buckets[min].peek() else {
                min += 1;
                continue;
            };
            buckets[min].pop();
            let v = vertex_of[p as usize];
            if alive[v as usize] && degree[v as usize] as usize == min {
                break v;
            }
        };

        block.clear();
        block.extend(
            digraph
                .out_neighbors(chosen)
                .iter()
                .copied()
                .filter(|&w| alive[w as usize]),
        );
        debug_assert_eq!(block.len(), min);
        alive[chosen as usize] = false;
        for &w in &block {
            alive[w as usize] = false;
        }
        remaining -= block.len() + 1;

        for r in std::iter::once(chosen).chain(block.iter().copied()) {
            for &x in digraph.in_neighbors(r) {
                let xi = x as usize;
                if alive[xi] {
                    degree[xi] -= 1;
                    let d = degree[xi] as usize;
                    buckets[d].push(Reverse(priority_of[xi]));
                    min = min.min(d);
                }
            }
        }
        result.push_step(chosen, block.iter().copied());
    }
    result
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GreedyError {
    #[error("order is not a permutation of 0..{0}")]
    InvalidPermutation(usize),
}

/// The same elimination scheme, but `v_i` is the earliest surviving vertex
/// of `order` instead of a minimum-out-degree one. The result is still an
/// acyclic set; the degree-sum bound is not guaranteed.
pub fn any_order_greedy(digraph: &Digraph, order: &[Vertex]) -> Result<GreedyResult, GreedyError> {
    let n = digraph.order();
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(GreedyError::InvalidPermutation(n));
    }
    for &v in order {
        match seen.get_mut(v as usize) {
            Some(slot) if !*slot => *slot = true,
            _ => return Err(GreedyError::InvalidPermutation(n)),
        }
    }

    let mut result = GreedyResult::with_order(n);
    let mut alive = vec![true; n];
    for &v in order {
        if !alive[v as usize] {
            continue;
        }
        alive[v as usize] = false;
        for &w in digraph.out_neighbors(v) {
            if alive[w as usize] {
                alive[w as usize] = false;
                result.eliminated.push(w);
            }
        }
        result.selected.push(v);
        result.offsets.push(result.eliminated.len());
    }
    Ok(result)
}

/// `Σ_v 1/(d⁺(v)+1)`, exactly. Zero for the empty digraph.
pub fn caro_wei_bound(digraph: &Digraph) -> Rational {
    // Group by out-degree: far fewer big-integer additions than vertices.
    let mut histogram: Vec<u64> = Vec::new();
    for v in digraph.vertices() {
        let d = digraph.out_neighbors(v).len();
        if histogram.len() <= d {
            histogram.resize(d + 1, 0);
        }
        histogram[d] += 1;
    }
    histogram
        .iter()
        .enumerate()
        .filter(|(_, &count)| count > 0)
        .map(|(d, &count)| Rational::new(count as i64, d as i64 + 1))
        .sum()
}

/// The average-degree bounds: an acyclic set of size at least
/// `n / (m/n + 1)` exists, so `τ₀ ≤ n − n / (m/n + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuranBound {
    pub acyclic_lower: Rational,
    pub fvs_upper: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("average out-degree is undefined on the empty digraph")]
    EmptyGraph,
}

pub fn turan_bound(digraph: &Digraph) -> Result<TuranBound, BoundError> {
    let n = digraph.order() as i64;
    if n == 0 {
        return Err(BoundError::EmptyGraph);
    }
    let m = digraph.arc_count() as i64;
    // n / (m/n + 1) = n² / (m + n)
    let acyclic_lower = Rational::new(n * n, m + n);
    let fvs_upper = Rational::from_integer(n) - acyclic_lower.clone();
    Ok(TuranBound {
        acyclic_lower,
        fvs_upper,
    })
}

/// Whether `set` induces an acyclic subdigraph.
pub fn verify_acyclic_selection(digraph: &Digraph, set: &VertexSet) -> Result<bool, GraphError> {
    let n = digraph.order();
    let mut mask = vec![false; n];
    for v in set.iter() {
        *mask
            .get_mut(v as usize)
            .ok_or(GraphError::OutOfRange { vertex: v as u64, n })? = true;
    }
    Ok(digraph.is_acyclic_on(&mask))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Digraph {
        Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn digon() -> Digraph {
        Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap()
    }

    fn two_k3() -> Digraph {
        let mut arcs = Vec::new();
        for b in [0, 3] {
            for u in b..b + 3 {
                for v in b..b + 3 {
                    if u != v {
                        arcs.push((u, v));
                    }
                }
            }
        }
        Digraph::from_arcs(6, arcs).unwrap()
    }

    #[test]
    fn triangle_trace() {
        let r = min_greedy(&triangle(), TieRule::LowestId);
        assert_eq!(r.selected(), &[0, 2]);
        let steps: Vec<_> = r
            .steps()
            .map(|s| (s.vertex, s.out_neighbors.to_vec(), s.out_degree()))
            .collect();
        assert_eq!(steps, vec![(0, vec![1], 1), (2, vec![], 0)]);
        assert!(r.is_partition());
        assert_eq!(r.feedback_set().members(), &[1]);
    }

    #[test]
    fn highest_id_on_triangle() {
        // All degrees 1: pick 2, which deletes 0; then 1 remains.
        let r = min_greedy(&triangle(), TieRule::HighestId);
        assert_eq!(r.selected(), &[2, 1]);
    }

    #[test]
    fn digon_trace() {
        let r = min_greedy(&digon(), TieRule::LowestId);
        assert_eq!(r.selected(), &[0]);
        assert_eq!(r.step(0).block().collect::<Vec<_>>(), vec![0, 1]);
        assert_eq!(caro_wei_bound(&digon()), Rational::from(1));
    }

    #[test]
    fn clique_union_picks_one_per_clique() {
        for tie in [TieRule::LowestId, TieRule::HighestId, TieRule::Random(3)] {
            assert_eq!(min_greedy(&two_k3(), tie).len(), 2);
        }
    }

    #[test]
    fn empty_digraph() {
        let e = Digraph::edgeless(0);
        let r = min_greedy(&e, TieRule::LowestId);
        assert!(r.is_empty());
        assert!(r.is_partition());
        assert_eq!(caro_wei_bound(&e), Rational::zero());
        assert_eq!(turan_bound(&e), Err(BoundError::EmptyGraph));
    }

    #[test]
    fn bounds() {
        assert_eq!(caro_wei_bound(&Digraph::edgeless(4)), Rational::from(4));
        assert_eq!(caro_wei_bound(&triangle()), Rational::new(3, 2));
        assert_eq!(caro_wei_bound(&two_k3()), Rational::from(2));

        let t = turan_bound(&triangle()).unwrap();
        assert_eq!(t.acyclic_lower, Rational::new(3, 2));
        assert_eq!(t.fvs_upper, Rational::new(3, 2));
        let t = turan_bound(&two_k3()).unwrap();
        assert_eq!(t.acyclic_lower, Rational::from(2));
        assert_eq!(t.fvs_upper, Rational::from(4));
        let t = turan_bound(&Digraph::edgeless(5)).unwrap();
        assert_eq!(t.acyclic_lower, Rational::from(5));
        assert_eq!(t.fvs_upper, Rational::zero());
    }

    #[test]
    fn verification() {
        let t = triangle();
        assert_eq!(
            verify_acyclic_selection(&t, &VertexSet::new(3, [0, 2]).unwrap()),
            Ok(true)
        );
        assert_eq!(verify_acyclic_selection(&t, &VertexSet::full(3)), Ok(false));
        assert_eq!(verify_acyclic_selection(&t, &VertexSet::empty(3)), Ok(true));
        assert!(verify_acyclic_selection(&t, &VertexSet::new(4, [3]).unwrap()).is_err());
    }

    #[test]
    fn any_order() {
        let r = any_order_greedy(&triangle(), &[1, 0, 2]).unwrap();
        assert_eq!(r.selected()[0], 1);
        // 1 deletes 2; 0 survives.
        assert_eq!(r.selected(), &[1, 0]);
        assert!(verify_acyclic_selection(&triangle(), &r.selected_set()).unwrap());

        assert_eq!(any_order_greedy(&digon(), &[1, 0]).unwrap().len(), 1);
        assert_eq!(any_order_greedy(&Digraph::edgeless(3), &[2, 0, 1]).unwrap().len(), 3);

        assert!(any_order_greedy(&triangle(), &[0, 0, 1]).is_err());
        assert!(any_order_greedy(&triangle(), &[0, 1]).is_err());
        assert!(any_order_greedy(&triangle(), &[0, 1, 3]).is_err());
    }

    #[test]
    fn tie_rule_parsing() {
        assert_eq!("lowest".parse(), Ok(TieRule::LowestId));
        assert_eq!("highest".parse(), Ok(TieRule::HighestId));
        assert_eq!("random(17)".parse(), Ok(TieRule::Random(17)));
        assert_eq!(TieRule::parse_with_seed("random", 9), Ok(TieRule::Random(9)));
        assert!("median".parse::<TieRule>().is_err());
        assert_eq!(TieRule::Random(4).to_string(), "random(4)");
    }

    #[test]
    fn random_ties_are_seeded() {
        let d = Digraph::edgeless(50);
        let a = min_greedy(&d, TieRule::Random(11));
        let b = min_greedy(&d, TieRule::Random(11));
        let c = min_greedy(&d, TieRule::Random(12));
        assert_eq!(a, b);
        assert_ne!(a.selected(), c.selected());
    }
}
