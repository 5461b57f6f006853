//! Deterministic instance generators.
//!
//! All randomness comes from xoshiro256** seeded through SplitMix64
//! (`Xoshiro256StarStar::seed_from_u64`), so an instance is a pure function
//! of its parameters and seed.
//!
//! `random_digraph` visits the ordered pairs `(u, v)`, `u ≠ v`, in
//! lexicographic order and includes each independently with probability
//! `p`. Rather than drawing once per pair it jumps straight to the next
//! included pair: with `x` the next 64-bit output and
//! `r = ((x >> 11) + 1) · 2⁻⁵³ ∈ (0, 1]`, the gap is
//! `⌊ln r / ln(1 − p)⌋` skipped pairs. This costs `O(n + m)` instead of
//! `O(n²)`.
//!
//! `random_tournament` visits unordered pairs `u < v` lexicographically and
//! draws one output per pair: top bit clear orients `u → v`, set orients
//! `v → u`.

use std::fmt;

use rand::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256StarStar;
use thiserror::Error;

use crate::digraph::{Digraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

fn invalid(msg: impl Into<String>) -> GenError {
    GenError::InvalidParam(msg.into())
}

fn rng(seed: u64) -> Xoshiro256StarStar {
    Xoshiro256StarStar::seed_from_u64(seed)
}

fn check_order(n: usize) -> Result<(), GenError> {
    if n > Vertex::MAX as usize {
        return Err(invalid(format!("order {n} too large")));
    }
    Ok(())
}

/// `m` vertex-disjoint symmetric `k`-cliques; block `b` holds vertices
/// `b·k .. (b+1)·k`.
pub fn clique_union(k: usize, m: usize) -> Result<Digraph, GenError> {
    if k < 1 || m < 1 {
        return Err(invalid(format!(
            "clique union needs k >= 1 and m >= 1, got k={k}, m={m}"
        )));
    }
    let n = k.checked_mul(m).ok_or_else(|| invalid("k*m overflows"))?;
    check_order(n)?;
    let mut arcs = Vec::with_capacity(n * (k - 1));
    for block in 0..m {
        let base = block * k;
        for u in base..base + k {
            for v in base..base + k {
                if u != v {
                    arcs.push((u as Vertex, v as Vertex));
                }
            }
        }
    }
    Ok(Digraph::from_arcs(n, arcs).expect("clique arcs are valid"))
}

/// Each ordered pair becomes an arc independently with probability `p`.
pub fn random_digraph(n: usize, p: f64, seed: u64) -> Result<Digraph, GenError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(invalid(format!("probability {p} outside [0, 1]")));
    }
    check_order(n)?;
    let pairs = (n as u64) * (n.saturating_sub(1) as u64);
    let pair = |i: u64| {
        let row = n as u64 - 1;
        let u = i / row;
        let r = i % row;
        let v = if r >= u { r + 1 } else { r };
        (u as Vertex, v as Vertex)
    };

    let mut arcs = Vec::new();
    if p == 1.0 {
        arcs.extend((0..pairs).map(pair));
    } else if p > 0.0 {
        let mut rng = rng(seed);
        let log_q = (-p).ln_1p();
        arcs.reserve((pairs as f64 * p * 1.05) as usize + 16);
        let mut next: u64 = 0;
        loop {
            let r = ((rng.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64);
            let skip = (r.ln() / log_q).floor();
            if skip >= (pairs - next) as f64 {
                break;
            }
            next += skip as u64;
            arcs.push(pair(next));
            next += 1;
            if next >= pairs {
                break;
            }
        }
    }
    Ok(Digraph::from_arcs(n, arcs).expect("sampled pairs are distinct and loop-free"))
}

/// `0 → 1 → … → n−1 → 0`.
pub fn directed_cycle(n: usize) -> Result<Digraph, GenError> {
    if n < 2 {
        return Err(invalid(format!("cycle needs n >= 2, got {n}")));
    }
    check_order(n)?;
    let arcs = (0..n).map(|u| (u as Vertex, ((u + 1) % n) as Vertex));
    Ok(Digraph::from_arcs(n, arcs).expect("cycle arcs are valid"))
}

/// `0 → 1 → … → n−1`.
pub fn directed_path(n: usize) -> Result<Digraph, GenError> {
    if n < 1 {
        return Err(invalid("path needs n >= 1"));
    }
    check_order(n)?;
    let arcs = (1..n).map(|v| ((v - 1) as Vertex, v as Vertex));
    Ok(Digraph::from_arcs(n, arcs).expect("path arcs are valid"))
}

/// Exactly one arc per unordered pair, orientation drawn from the seed.
pub fn random_tournament(n: usize, seed: u64) -> Result<Digraph, GenError> {
    if n < 1 {
        return Err(invalid("tournament needs n >= 1"));
    }
    check_order(n)?;
    let mut rng = rng(seed);
    let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n as Vertex {
        for v in u + 1..n as Vertex {
            if rng.next_u64() >> 63 == 0 {
                arcs.push((u, v));
            } else {
                arcs.push((v, u));
            }
        }
    }
    Ok(Digraph::from_arcs(n, arcs).expect("one arc per pair"))
}

/// A generator family with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    CliqueUnion { k: usize, m: usize },
    Random { n: usize, p: f64, seed: u64 },
    Cycle { n: usize },
    Path { n: usize },
    Tournament { n: usize, seed: u64 },
    Edgeless { n: usize },
}

impl GenSpec {
    pub fn family(&self) -> &'static str {
        match self {
            GenSpec::CliqueUnion { .. } => "clique-union",
            GenSpec::Random { .. } => "random",
            GenSpec::Cycle { .. } => "cycle",
            GenSpec::Path { .. } => "path",
            GenSpec::Tournament { .. } => "tournament",
            GenSpec::Edgeless { .. } => "edgeless",
        }
    }

    pub fn generate(&self) -> Result<Digraph, GenError> {
        match *self {
            GenSpec::CliqueUnion { k, m } => clique_union(k, m),
            GenSpec::Random { n, p, seed } => random_digraph(n, p, seed),
            GenSpec::Cycle { n } => directed_cycle(n),
            GenSpec::Path { n } => directed_path(n),
            GenSpec::Tournament { n, seed } => random_tournament(n, seed),
            GenSpec::Edgeless { n } => {
                check_order(n)?;
                Ok(Digraph::edgeless(n))
            }
        }
    }
}

/// Instance key, e.g. `clique-union-k3-m2` or `random-n12-p0.25-s7`.
impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let family = self.family();
        match self {
            GenSpec::CliqueUnion { k, m } => write!(f, "{family}-k{k}-m{m}"),
            GenSpec::Random { n, p, seed } => write!(f, "{family}-n{n}-p{p}-s{seed}"),
            GenSpec::Tournament { n, seed } => write!(f, "{family}-n{n}-s{seed}"),
            GenSpec::Cycle { n } | GenSpec::Path { n } | GenSpec::Edgeless { n } => {
                write!(f, "{family}-n{n}")
            }
        }
    }
}
