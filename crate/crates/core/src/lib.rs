//! Large acyclic sets and small directed feedback vertex sets via Min-Greedy.
//!
//! Min-Greedy repeatedly keeps a vertex of minimum out-degree and deletes
//! it together with its out-neighborhood. The kept vertices induce an
//! acyclic subdigraph of size at least `Σ_v 1/(d⁺(v)+1)`, which in turn is
//! at least `n / (m/n + 1)`. Both bounds are tight on disjoint unions of
//! symmetric cliques.
//!
//! ```
//! use mingreedy::{caro_wei_bound, gen, min_greedy, Rational, TieRule};
//!
//! let d = gen::directed_cycle(3).unwrap();
//! let result = min_greedy(&d, TieRule::LowestId);
//! assert_eq!(result.selected(), &[0, 2]);
//! assert_eq!(caro_wei_bound(&d), Rational::new(3, 2));
//! ```

pub mod bench;
pub mod digraph;
pub mod exact;
pub mod format;
pub mod gen;
pub mod greedy;
pub mod rational;
pub mod report;

pub use digraph::{Digraph, GraphError, Vertex, VertexSet};
pub use exact::{exact_fvs, ExactError, ExactResult, DEFAULT_SIZE_LIMIT};
pub use format::{parse_digraph, serialize_digraph, FormatError, LoadedInstance, ParseOptions};
pub use greedy::{
    any_order_greedy, caro_wei_bound, min_greedy, turan_bound, verify_acyclic_selection, BoundError, GreedyError,
    GreedyResult, GreedyStep, TieRule, TuranBound,
};
pub use rational::Rational;
pub use report::{evaluate, EvalOptions, Evaluation, InstanceReport};
