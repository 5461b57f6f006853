//! Per-instance reports: heuristic value, both bounds, optional exact
//! optimum and stage timings, with JSON and TSV emission.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::exact::{exact_fvs, ExactError, ExactResult};
use crate::greedy::{caro_wei_bound, min_greedy, turan_bound, verify_acyclic_selection, GreedyResult, TieRule};
use crate::rational::Rational;

const DECIMALS: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    /// Self-loop vertices removed before solving.
    pub forced_fvs: usize,
    pub greedy_size: Option<usize>,
    pub greedy_tie_rule: Option<String>,
    pub caro_wei: Rational,
    pub caro_wei_decimal: String,
    pub caro_wei_ceiling: u64,
    pub turan_acyclic_lower: Option<Rational>,
    pub turan_acyclic_lower_decimal: Option<String>,
    pub turan_fvs_upper: Option<Rational>,
    pub exact_tau0: Option<usize>,
    pub max_acyclic_exact: Option<usize>,
    pub wall_time_ms: BTreeMap<String, f64>,
}

/// Which stages [`evaluate`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvalOptions {
    pub greedy: Option<TieRule>,
    /// Run the exact oracle with this size limit.
    pub exact: Option<usize>,
}

/// A report together with the runs it summarizes and every
/// verification failure found along the way.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub report: InstanceReport,
    pub greedy: Option<GreedyResult>,
    pub exact: Option<ExactResult>,
    pub failures: Vec<String>,
}

impl Evaluation {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn millis(start: Instant) -> f64 {
    (start.elapsed().as_secs_f64() * 1e6).round() / 1e3
}

/// Computes the requested stages and re-checks the greedy output
/// independently: the selection must induce an acyclic subdigraph and the
/// step blocks must partition the vertex set.
pub fn evaluate(
    instance: &str,
    digraph: &Digraph,
    forced_fvs: usize,
    options: EvalOptions,
) -> Result<Evaluation, ExactError> {
    let mut wall_time_ms = BTreeMap::new();
    let mut failures = Vec::new();

    let start = Instant::now();
    let caro_wei = caro_wei_bound(digraph);
    let turan = turan_bound(digraph).ok();
    wall_time_ms.insert("bounds".to_string(), millis(start));

    let greedy = options.greedy.map(|tie| {
        let start = Instant::now();
        let result = min_greedy(digraph, tie);
        wall_time_ms.insert("greedy".to_string(), millis(start));
        result
    });
    if let Some(result) = &greedy {
        let start = Instant::now();
        if !verify_acyclic_selection(digraph, &result.selected_set()).unwrap_or(false) {
            failures.push("greedy selection is not acyclic".to_string());
        }
        if !result.is_partition() {
            failures.push("greedy step blocks do not partition the vertex set".to_string());
        }
        wall_time_ms.insert("verify".to_string(), millis(start));
    }

    let exact = match options.exact {
        Some(limit) => {
            let start = Instant::now();
            let result = exact_fvs(digraph, limit)?;
            wall_time_ms.insert("exact".to_string(), millis(start));
            Some(result)
        }
        None => None,
    };

    let n = digraph.order();
    let report = InstanceReport {
        instance: instance.to_string(),
        n,
        m: digraph.arc_count(),
        forced_fvs,
        greedy_size: greedy.as_ref().map(GreedyResult::len),
        greedy_tie_rule: options.greedy.map(|t| t.to_string()),
        caro_wei_decimal: caro_wei.to_decimal(DECIMALS),
        caro_wei_ceiling: caro_wei.ceil_u64(),
        caro_wei,
        turan_acyclic_lower_decimal: turan.as_ref().map(|t| t.acyclic_lower.to_decimal(DECIMALS)),
        turan_acyclic_lower: turan.as_ref().map(|t| t.acyclic_lower.clone()),
        turan_fvs_upper: turan.map(|t| t.fvs_upper),
        exact_tau0: exact.as_ref().map(|e| e.tau0),
        max_acyclic_exact: exact.as_ref().map(|e| e.max_acyclic.len()),
        wall_time_ms,
    };
    failures.extend(report.violations());
    Ok(Evaluation {
        report,
        greedy,
        exact,
        failures,
    })
}

/// Column order of the TSV rendering. Scalar columns share their names with
/// the JSON keys; timings appear as `wall_time_ms.<stage>`.
pub const TSV_COLUMNS: &[&str] = &[
    "instance",
    "n",
    "m",
    "forced_fvs",
    "greedy_size",
    "greedy_tie_rule",
    "caro_wei",
    "caro_wei_decimal",
    "caro_wei_ceiling",
    "turan_acyclic_lower",
    "turan_acyclic_lower_decimal",
    "turan_fvs_upper",
    "exact_tau0",
    "max_acyclic_exact",
    "wall_time_ms.bounds",
    "wall_time_ms.greedy",
    "wall_time_ms.verify",
    "wall_time_ms.exact",
];

/// Placeholder for absent optional fields in TSV.
pub const TSV_MISSING: &str = "NA";

fn opt<T: ToString>(value: &Option<T>) -> String {
    value.as_ref().map_or_else(|| TSV_MISSING.to_string(), T::to_string)
}

impl InstanceReport {
    /// Field-level invariants. Empty when the report is consistent.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if self.caro_wei.ceil_u64() != self.caro_wei_ceiling {
            out.push("caro_wei_ceiling is not the ceiling of caro_wei".to_string());
        }
        if let Some(size) = self.greedy_size {
            if (size as u64) < self.caro_wei_ceiling {
                out.push(format!("greedy size {size} below degree-sum bound {}", self.caro_wei));
            }
            if let Some(tau0) = self.exact_tau0 {
                if size > self.n - tau0 {
                    out.push(format!("greedy size {size} exceeds optimum {}", self.n - tau0));
                }
            }
        }
        if let Some(lower) = &self.turan_acyclic_lower {
            if &self.caro_wei < lower {
                out.push(format!("caro_wei {} below average-degree bound {lower}", self.caro_wei));
            }
        }
        if let Some(tau0) = self.exact_tau0 {
            if tau0 > self.n {
                out.push("tau0 exceeds n".to_string());
            } else {
                if self.max_acyclic_exact != Some(self.n - tau0) {
                    out.push("max_acyclic_exact differs from n - tau0".to_string());
                }
                if self.caro_wei_ceiling > (self.n - tau0) as u64 {
                    out.push("optimum below degree-sum bound".to_string());
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    pub fn tsv_header() -> String {
        TSV_COLUMNS.join("\t")
    }

    pub fn to_tsv_row(&self) -> String {
        let time = |stage: &str| {
            self.wall_time_ms
                .get(stage)
                .map_or_else(|| TSV_MISSING.to_string(), |t| format!("{t:.3}"))
        };
        [
            self.instance.clone(),
            self.n.to_string(),
            self.m.to_string(),
            self.forced_fvs.to_string(),
            opt(&self.greedy_size),
            opt(&self.greedy_tie_rule),
            self.caro_wei.to_string(),
            self.caro_wei_decimal.clone(),
            self.caro_wei_ceiling.to_string(),
            opt(&self.turan_acyclic_lower),
            opt(&self.turan_acyclic_lower_decimal),
            opt(&self.turan_fvs_upper),
            opt(&self.exact_tau0),
            opt(&self.max_acyclic_exact),
            time("bounds"),
            time("greedy"),
            time("verify"),
            time("exact"),
        ]
        .join("\t")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{clique_union, directed_cycle};

    #[test]
    fn cycle_report() {
        let eval = evaluate(
            "c3",
            &directed_cycle(3).unwrap(),
            0,
            EvalOptions {
                greedy: Some(TieRule::LowestId),
                exact: Some(12),
            },
        )
        .unwrap();
        assert!(eval.passed(), "{:?}", eval.failures);
        let r = &eval.report;
        assert_eq!(r.greedy_size, Some(2));
        assert_eq!(r.caro_wei.to_string(), "3/2");
        assert_eq!(r.caro_wei_decimal, "1.500000");
        assert_eq!(r.caro_wei_ceiling, 2);
        assert_eq!(r.exact_tau0, Some(1));
        assert_eq!(r.max_acyclic_exact, Some(2));
        assert_eq!(r.greedy_tie_rule.as_deref(), Some("lowest"));
    }

    #[test]
    fn bounds_only_report() {
        let eval = evaluate(
            "k3x2",
            &clique_union(3, 2).unwrap(),
            0,
            EvalOptions {
                greedy: None,
                exact: None,
            },
        )
        .unwrap();
        let r = &eval.report;
        assert_eq!(r.caro_wei.to_string(), "2/1");
        assert_eq!(r.turan_acyclic_lower.as_ref().unwrap().to_string(), "2/1");
        assert_eq!(r.turan_fvs_upper.as_ref().unwrap().to_string(), "4/1");
        assert!(r.greedy_size.is_none());
        assert!(!r.wall_time_ms.contains_key("greedy"));
        assert!(r.to_tsv_row().split('\t').nth(4) == Some(TSV_MISSING));
    }

    #[test]
    fn violations_are_reported() {
        let mut r = evaluate(
            "c3",
            &directed_cycle(3).unwrap(),
            0,
            EvalOptions {
                greedy: Some(TieRule::LowestId),
                exact: Some(12),
            },
        )
        .unwrap()
        .report;
        r.greedy_size = Some(1);
        assert_eq!(r.violations().len(), 1);
        r.greedy_size = Some(3);
        assert_eq!(r.violations().len(), 1);
    }

    #[test]
    fn exact_limit_is_an_error() {
        let big = directed_cycle(30).unwrap();
        assert!(evaluate(
            "c30",
            &big,
            0,
            EvalOptions {
                greedy: None,
                exact: Some(22)
            }
        )
        .is_err());
    }

    #[test]
    fn json_round_trip() {
        let r = evaluate(
            "c5",
            &directed_cycle(5).unwrap(),
            0,
            EvalOptions {
                greedy: Some(TieRule::Random(3)),
                exact: None,
            },
        )
        .unwrap()
        .report;
        let back: InstanceReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(
            InstanceReport::tsv_header().split('\t').count(),
            r.to_tsv_row().split('\t').count()
        );
    }
}
