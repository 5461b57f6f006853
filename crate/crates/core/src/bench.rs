//! Suite runner: expands a declarative config into generated instances,
//! evaluates each one and aggregates greedy-versus-bound-versus-optimum
//! statistics.
//!
//! ```toml
//! tie = ["lowest", "random"]   # default ["lowest"]
//! tie_seed = 0                 # seed for the random tie rule
//! size_limit = 16              # exact-oracle cap, default 22
//!
//! [[family]]
//! kind = "random"              # clique-union | random | cycle | path | tournament | edgeless
//! n = [6, 8, 10]
//! p = [0.1, 0.3]
//! seeds = [1, 2, 3]            # or: seed_count = 10  (seeds 0..10)
//! exact = true
//! ```
//!
//! Rows come back in expansion order (families in file order, then the
//! parameter grid, then tie rules) regardless of how evaluation was scheduled.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactError, DEFAULT_SIZE_LIMIT};
use crate::gen::{GenError, GenSpec};
use crate::greedy::TieRule;
use crate::report::{evaluate, EvalOptions, InstanceReport};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("config: {0}")]
    Config(String),
    #[error("{instance}: {source}")]
    Gen { instance: String, source: GenError },
    #[error("{instance}: {source}")]
    Exact { instance: String, source: ExactError },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchConfig {
    #[serde(default = "default_tie")]
    pub tie: Vec<String>,
    #[serde(default)]
    pub tie_seed: u64,
    #[serde(default = "default_limit")]
    pub size_limit: usize,
    #[serde(default)]
    pub family: Vec<FamilyGrid>,
}

fn default_tie() -> Vec<String> {
    vec!["lowest".to_string()]
}

fn default_limit() -> usize {
    DEFAULT_SIZE_LIMIT
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyGrid {
    pub kind: String,
    #[serde(default)]
    pub n: Vec<usize>,
    #[serde(default)]
    pub k: Vec<usize>,
    #[serde(default)]
    pub m: Vec<usize>,
    #[serde(default)]
    pub p: Vec<f64>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    pub seed_count: Option<u64>,
    #[serde(default)]
    pub exact: bool,
}

/// One expanded instance of a suite.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchCase {
    pub spec: GenSpec,
    pub tie: TieRule,
    pub exact: Option<usize>,
}

impl BenchCase {
    pub fn key(&self) -> String {
        format!("{}/{}", self.spec, self.tie)
    }
}

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))
    }

    pub fn expand(&self) -> Result<Vec<BenchCase>, BenchError> {
        let ties = self
            .tie
            .iter()
            .map(|t| TieRule::parse_with_seed(t, self.tie_seed))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| BenchError::Config(e.to_string()))?;
        let mut cases = Vec::new();
        for grid in &self.family {
            let exact = grid.exact.then_some(self.size_limit);
            for spec in grid.specs()? {
                for &tie in &ties {
                    cases.push(BenchCase {
                        spec: spec.clone(),
                        tie,
                        exact,
                    });
                }
            }
        }
        Ok(cases)
    }
}

impl FamilyGrid {
    fn require<'a, T>(&self, values: &'a [T], name: &str) -> Result<&'a [T], BenchError> {
        if values.is_empty() {
            return Err(BenchError::Config(format!(
                "family {:?} needs a non-empty `{name}` list",
                self.kind
            )));
        }
        Ok(values)
    }

    fn seed_list(&self) -> Result<Vec<u64>, BenchError> {
        match (self.seeds.is_empty(), self.seed_count) {
            (false, None) => Ok(self.seeds.clone()),
            (true, Some(count)) => Ok((0..count).collect()),
            (true, None) => Err(BenchError::Config(format!(
                "family {:?} needs `seeds` or `seed_count`",
                self.kind
            ))),
            (false, Some(_)) => Err(BenchError::Config(
                "give either `seeds` or `seed_count`, not both".into(),
            )),
        }
    }

    fn specs(&self) -> Result<Vec<GenSpec>, BenchError> {
        let mut out = Vec::new();
        match self.kind.as_str() {
            "clique-union" => {
                for &k in self.require(&self.k, "k")? {
                    for &m in self.require(&self.m, "m")? {
                        out.push(GenSpec::CliqueUnion { k, m });
                    }
                }
            }
            "random" => {
                let seeds = self.seed_list()?;
                for &n in self.require(&self.n, "n")? {
                    for &p in self.require(&self.p, "p")? {
                        for &seed in &seeds {
                            out.push(GenSpec::Random { n, p, seed });
                        }
                    }
                }
            }
            "tournament" => {
                let seeds = self.seed_list()?;
                for &n in self.require(&self.n, "n")? {
                    for &seed in &seeds {
                        out.push(GenSpec::Tournament { n, seed });
                    }
                }
            }
            "cycle" | "path" | "edgeless" => {
                for &n in self.require(&self.n, "n")? {
                    out.push(match self.kind.as_str() {
                        "cycle" => GenSpec::Cycle { n },
                        "path" => GenSpec::Path { n },
                        _ => GenSpec::Edgeless { n },
                    });
                }
            }
            other => return Err(BenchError::Config(format!("unknown family {other:?}"))),
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchSummary {
    pub instances: usize,
    pub verification_failures: usize,
    /// Instances where the greedy size equals `⌈Σ 1/(d⁺+1)⌉`.
    pub greedy_at_bound: usize,
    pub with_exact: usize,
    /// Among instances with an exact optimum, those where greedy is optimal.
    pub greedy_optimal: usize,
    /// Mean of greedy size divided by the degree-sum bound, over instances
    /// with a positive bound.
    pub mean_greedy_over_caro_wei: f64,
    pub total_greedy_ms: f64,
}

#[derive(Debug, Clone)]
pub struct BenchRun {
    pub rows: Vec<InstanceReport>,
    pub failures: Vec<(String, Vec<String>)>,
    pub summary: BenchSummary,
}

fn run_case(case: &BenchCase) -> Result<(InstanceReport, Vec<String>), BenchError> {
    let instance = case.key();
    let digraph = case.spec.generate().map_err(|source| BenchError::Gen {
        instance: instance.clone(),
        source,
    })?;
    let eval = evaluate(
        &instance,
        &digraph,
        0,
        EvalOptions {
            greedy: Some(case.tie),
            exact: case.exact,
        },
    )
    .map_err(|source| BenchError::Exact {
        instance: instance.clone(),
        source,
    })?;
    Ok((eval.report, eval.failures))
}

pub fn run(config: &BenchConfig) -> Result<BenchRun, BenchError> {
    let cases = config.expand()?;
    #[cfg(feature = "parallel")]
    let results: Vec<_> = {
        use rayon::prelude::*;
        cases.par_iter().map(run_case).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let results: Vec<_> = cases.iter().map(run_case).collect();

    let mut rows = Vec::with_capacity(results.len());
    let mut failures = Vec::new();
    for result in results {
        let (row, problems) = result?;
        if !problems.is_empty() {
            failures.push((row.instance.clone(), problems));
        }
        rows.push(row);
    }
    let summary = summarize(&rows, failures.len());
    Ok(BenchRun {
        rows,
        failures,
        summary,
    })
}

fn summarize(rows: &[InstanceReport], verification_failures: usize) -> BenchSummary {
    let mut ratios = Vec::new();
    let mut summary = BenchSummary {
        instances: rows.len(),
        verification_failures,
        greedy_at_bound: 0,
        with_exact: 0,
        greedy_optimal: 0,
        mean_greedy_over_caro_wei: 0.0,
        total_greedy_ms: 0.0,
    };
    for row in rows {
        let Some(size) = row.greedy_size else { continue };
        if size as u64 == row.caro_wei_ceiling {
            summary.greedy_at_bound += 1;
        }
        if let Some(tau0) = row.exact_tau0 {
            summary.with_exact += 1;
            if size == row.n - tau0 {
                summary.greedy_optimal += 1;
            }
        }
        let bound = row.caro_wei.to_f64();
        if bound > 0.0 {
            ratios.push(size as f64 / bound);
        }
        summary.total_greedy_ms += row.wall_time_ms.get("greedy").copied().unwrap_or(0.0);
    }
    if !ratios.is_empty() {
        summary.mean_greedy_over_caro_wei = ratios.iter().sum::<f64>() / ratios.len() as f64;
    }
    summary
}
