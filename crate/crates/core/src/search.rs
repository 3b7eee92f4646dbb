//! Search for facet orders that fail to shell.
//!
//! For each (matroid, building set, ground order) the NL order is checked for
//! the shelling property, and the NC and NL orders are compared for weak
//! local equivalence. Only failures are recorded. Each record carries enough
//! data to rebuild the instance and rerun the check.

use std::io::Write;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::building::BuildingSet;
use crate::corpus::{permutations, permute_building, CorpusInstance};
use crate::error::{Error, Result};
use crate::geometry::default_cubical;
use crate::io::{nested_labels, MatroidJson};
use crate::orders::{nc_order, nl_order, Provenance};
use crate::shelling::{check_order, local_equivalence_witness};

/// Ground sets up to this size get every ground order.
pub const ALL_ORDERS_MAX_N: usize = 4;
/// Number of random ground orders for larger ground sets.
pub const RANDOM_ORDERS: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    /// The NL order is a shelling order.
    NlShelling,
    /// The NC and NL orders have the same first facet on every codimension-one star.
    NcNlWeakLocalEquivalence,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRecord {
    pub name: String,
    /// The matroid in its original ground order.
    pub matroid: MatroidJson,
    pub building: Vec<Vec<String>>,
    /// Labels in the order used for atom comparisons.
    pub ground_order: Vec<String>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub instance: InstanceRecord,
    pub check: Check,
    pub order_provenance: Provenance,
    pub verdict: bool,
    pub violation: serde_json::Value,
}

#[derive(Clone, Debug)]
pub struct SearchTask {
    pub name: String,
    pub building: BuildingSet,
    /// `order[new] = old` indices into the original ground set.
    pub order: Vec<usize>,
}

/// Ground orders for a ground set of size `n`: all of them when `n` is small,
/// otherwise `RANDOM_ORDERS` seeded shuffles.
pub fn ground_orders(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    if n <= ALL_ORDERS_MAX_N {
        return permutations(n);
    }
    (0..RANDOM_ORDERS)
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect()
}

/// Every task of a sweep, in a fixed order determined by `seed`.
pub fn plan(instances: &[CorpusInstance], seed: u64) -> Vec<SearchTask> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for inst in instances {
        for order in ground_orders(inst.building.matroid().len(), &mut rng) {
            out.push(SearchTask { name: inst.name.clone(), building: inst.building.clone(), order });
        }
    }
    out
}

fn record(task: &SearchTask, seed: u64) -> InstanceRecord {
    let m = task.building.matroid();
    InstanceRecord {
        name: task.name.clone(),
        matroid: MatroidJson::from_matroid(m),
        building: nested_labels(m, task.building.members()),
        ground_order: task.order.iter().map(|&i| m.labels()[i].clone()).collect(),
        seed,
    }
}

/// Runs one check on an already permuted building set; `None` means it passed.
fn run_check(b: &BuildingSet, check: Check, seed: u64) -> Result<Option<serde_json::Value>> {
    let m = b.matroid();
    let nl = nl_order(b);
    match check {
        Check::NlShelling => {
            let report = check_order(b, &nl)?;
            Ok(report.first_violation.map(|v| {
                serde_json::json!({
                    "j": v.j,
                    "i": v.i,
                    "facet_j": nested_labels(m, nl.facets[v.j].flats()),
                    "facet_i": nested_labels(m, nl.facets[v.i].flats()),
                })
            }))
        }
        Check::NcNlWeakLocalEquivalence => {
            let c = default_cubical(b, seed)?;
            let nc = nc_order(b, &c)?;
            let witness = local_equivalence_witness(&nc, &nl, b, true)?;
            Ok(witness.map(|face| serde_json::json!({ "face": nested_labels(m, &face) })))
        }
    }
}

fn run_task(task: &SearchTask, seed: u64) -> Result<Vec<Finding>> {
    let b = permute_building(&task.building, &task.order)?;
    let mut out = Vec::new();
    for (check, provenance) in
        [(Check::NlShelling, Provenance::Nl), (Check::NcNlWeakLocalEquivalence, Provenance::Nc)]
    {
        if let Some(violation) = run_check(&b, check, seed)? {
            out.push(Finding {
                instance: record(task, seed),
                check,
                order_provenance: provenance,
                verdict: false,
                violation,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
pub struct SearchOutcome {
    pub findings: Vec<Finding>,
    pub tasks_planned: usize,
    pub tasks_run: usize,
    /// The budget ran out before every task was run.
    pub budget_exhausted: bool,
}

/// Runs up to `budget` tasks in parallel; findings come back in task order.
pub fn search_nl_shelling(instances: &[CorpusInstance], seed: u64, budget: usize) -> Result<SearchOutcome> {
    let tasks = plan(instances, seed);
    let run = tasks.len().min(budget);
    let per_task: Vec<Result<Vec<Finding>>> =
        tasks[..run].par_iter().map(|t| run_task(t, seed)).collect();
    let mut findings = Vec::new();
    for r in per_task {
        findings.extend(r?);
    }
    Ok(SearchOutcome {
        findings,
        tasks_planned: tasks.len(),
        tasks_run: run,
        budget_exhausted: run < tasks.len(),
    })
}

/// Writes findings as JSON lines.
pub fn write_findings<W: Write>(mut w: W, findings: &[Finding]) -> std::io::Result<()> {
    for f in findings {
        serde_json::to_writer(&mut w, f)?;
        w.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_findings(text: &str) -> Result<Vec<Finding>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(Error::from))
        .collect()
}

/// Rebuilds the instance of a finding and reruns its check. Returns true when
/// the recorded violation is reproduced exactly.
pub fn replay_finding(f: &Finding) -> Result<bool> {
    let m = Arc::new(f.instance.matroid.to_matroid()?);
    let members = f
        .instance
        .building
        .iter()
        .map(|x| m.flat_from_labels(x))
        .collect::<Result<Vec<_>>>()?;
    let b = BuildingSet::new(m.clone(), members)?;
    let order = f
        .instance
        .ground_order
        .iter()
        .map(|l| m.label_index(l))
        .collect::<Result<Vec<_>>>()?;
    let pb = permute_building(&b, &order)?;
    Ok(run_check(&pb, f.check, f.instance.seed)?.as_ref() == Some(&f.violation))
}
