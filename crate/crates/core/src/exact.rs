//! Brute-force minimum feedback vertex sets for small digraphs.
//!
//! Candidate sets are tried by increasing size, each size in lexicographic
//! order, so the first hit is the lexicographically smallest minimum
//! feedback vertex set. Meant to be obviously correct, not fast.

use itertools::Itertools;
use thiserror::Error;

use crate::digraph::{Digraph, Vertex, VertexSet};

pub const DEFAULT_SIZE_LIMIT: usize = 22;

/// Hard cap from the 64-bit subset masks.
const MASK_BITS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("order {n} exceeds the exact-solver limit {limit}")]
    TooLarge { n: usize, limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactResult {
    /// The feedback vertex number.
    pub tau0: usize,
    pub optimal_fvs: VertexSet,
    pub max_acyclic: VertexSet,
}

/// Bitmask view of a small digraph: bit `u` of `preds[v]` is set iff `(u, v)` is an arc.
struct MaskGraph {
    preds: Vec<u64>,
}

impl MaskGraph {
    fn new(digraph: &Digraph) -> Self {
        let preds = digraph
            .vertices()
            .map(|v| digraph.in_neighbors(v).iter().fold(0u64, |acc, &u| acc | (1 << u)))
            .collect();
        MaskGraph { preds }
    }

    /// Peels all sources of the induced subdigraph round by round.
    fn is_acyclic(&self, mut set: u64) -> bool {
        while set != 0 {
            let mut sources = 0u64;
            let mut rest = set;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.preds[v] & set == 0 {
                    sources |= 1 << v;
                }
            }
            if sources == 0 {
                return false;
            }
            set &= !sources;
        }
        true
    }
}

pub fn exact_fvs(digraph: &Digraph, size_limit: usize) -> Result<ExactResult, ExactError> {
    let n = digraph.order();
    let limit = size_limit.min(MASK_BITS);
    if n > limit {
        return Err(ExactError::TooLarge { n, limit: size_limit });
    }
    let graph = MaskGraph::new(digraph);
    let full: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };

    for k in 0..=n {
        for fvs in (0..n as Vertex).combinations(k) {
            let removed = fvs.iter().fold(0u64, |acc, &v| acc | (1 << v));
            if graph.is_acyclic(full & !removed) {
                let optimal_fvs = VertexSet::new(n, fvs).expect("ids below n");
                let max_acyclic = optimal_fvs.complement();
                return Ok(ExactResult {
                    tau0: k,
                    optimal_fvs,
                    max_acyclic,
                });
            }
        }
    }
    unreachable!("removing every vertex leaves an acyclic digraph")
}
