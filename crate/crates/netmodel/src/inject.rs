//! Fault injection for the detection experiment.
//!
//! A fixed catalog of sixteen mutations, embedded at build time, encodes the
//! configuration errors used to evaluate the checker: each entry carries the
//! edit operations to apply, the rule ids expected to fire, the model
//! locations a correct report must blame, and the set of devices any culprit
//! may belong to. [`run_experiment`] injects each mutation into a clean model,
//! verifies the result, and classifies the outcome.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{ModelError, ModelGraph, NodeRecord};
use crate::report::{verify, CheckConfig, Report};
use crate::violation::Culprit;

const CATALOG_JSON: &str = include_str!("../catalog/mutations.json");

#[derive(Debug, Error)]
pub enum InjectError {
    #[error("mutation target {node:?} is missing from the model")]
    TargetMissing { node: String },
    #[error("no mutation with id {id} (catalog has 1..={max})")]
    UnknownMutation { id: usize, max: usize },
    #[error("base model is not clean ({count} finding(s)); the experiment needs a correct fixture")]
    FixtureNotClean { count: usize },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// One declarative edit. Mutations are expressed in terms of the model file
/// format so a catalog entry reads like a diff against the JSON document.
#[derive(Debug, Clone, Deserialize, Serialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum EditOp {
    /// Write an item value, adding the item if absent.
    Set {
        node: String,
        item: String,
        value: String,
    },
    /// Remove an item value, keeping the node.
    Unset { node: String, item: String },
    /// Remove a node together with every edge touching it.
    Delete { node: String },
}

impl EditOp {
    pub fn node(&self) -> &str {
        match self {
            EditOp::Set { node, .. } | EditOp::Unset { node, .. } | EditOp::Delete { node } => node,
        }
    }
}

/// A model location a correct report must blame. Without `item` any culprit
/// on the node counts.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct Site {
    pub node: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub item: Option<String>,
}

#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct Mutation {
    pub id: usize,
    pub name: String,
    pub description: String,
    pub ops: Vec<EditOp>,
    /// Rule ids that must appear in the report.
    pub expect: Vec<String>,
    /// Locations an attributing culprit may point at.
    pub sites: Vec<Site>,
    /// Devices every culprit of every fired violation must belong to.
    pub zone: Vec<String>,
}

#[derive(Deserialize)]
struct Catalog {
    mutations: Vec<Mutation>,
}

/// The embedded mutation catalog, in id order.
pub fn catalog() -> &'static [Mutation] {
    static CACHE: OnceLock<Vec<Mutation>> = OnceLock::new();
    CACHE
        .get_or_init(|| {
            let parsed: Catalog =
                serde_json::from_str(CATALOG_JSON).expect("embedded mutation catalog is valid");
            parsed.mutations
        })
        .as_slice()
}

/// Look up a catalog entry by id.
pub fn find(id: usize) -> Result<&'static Mutation, InjectError> {
    catalog()
        .iter()
        .find(|m| m.id == id)
        .ok_or(InjectError::UnknownMutation {
            id,
            max: catalog().len(),
        })
}

/// Look up a catalog entry by name.
pub fn find_by_name(name: &str) -> Option<&'static Mutation> {
    catalog().iter().find(|m| m.name == name)
}

/// Apply a mutation, returning a new graph. The input is untouched; the
/// output differs from it only at the nodes named by the mutation's ops.
pub fn inject(graph: &ModelGraph, mutation: &Mutation) -> Result<ModelGraph, InjectError> {
    let (mut nodes, mut edges) = graph.to_parts();
    for op in &mutation.ops {
        apply(&mut nodes, &mut edges, op)?;
    }
    Ok(ModelGraph::from_parts(nodes, edges)?)
}

fn apply(
    nodes: &mut Vec<NodeRecord>,
    edges: &mut Vec<(String, String)>,
    op: &EditOp,
) -> Result<(), InjectError> {
    let missing = || InjectError::TargetMissing {
        node: op.node().to_string(),
    };
    match op {
        EditOp::Set { node, item, value } => {
            let rec = nodes.iter_mut().find(|n| n.name == *node).ok_or_else(missing)?;
            rec.fields.insert(item.clone(), value.clone());
        }
        EditOp::Unset { node, item } => {
            let rec = nodes.iter_mut().find(|n| n.name == *node).ok_or_else(missing)?;
            rec.fields.remove(item);
        }
        EditOp::Delete { node } => {
            let before = nodes.len();
            nodes.retain(|n| n.name != *node);
            if nodes.len() == before {
                return Err(missing());
            }
            edges.retain(|(a, b)| a != node && b != node);
        }
    }
    Ok(())
}

/// How one injected fault was classified.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// An expected rule fired and blamed a declared site.
    Attributed,
    /// Something fired, but nothing blamed a declared site.
    Unattributed,
    /// No violation at all.
    Missed,
}

impl Outcome {
    /// Table mark: circle detected-and-attributed, triangle detected only,
    /// cross missed.
    pub fn mark(self) -> &'static str {
        match self {
            Outcome::Attributed => "o",
            Outcome::Unattributed => "^",
            Outcome::Missed => "x",
        }
    }
}

/// One mutation's verification result.
#[derive(Debug, Clone, Serialize)]
pub struct MutationRun {
    pub id: usize,
    pub name: String,
    pub outcome: Outcome,
    /// Distinct rule ids that fired, sorted.
    pub fired: Vec<String>,
    /// Every rule in `expect` fired.
    pub expected_fired: bool,
    /// Every culprit of every fired violation belongs to a zone device.
    pub zone_ok: bool,
    pub violations: usize,
}

/// The whole experiment: one run per catalog entry plus the two headline
/// counts (faults detected at all, faults traced to a declared site).
#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub runs: Vec<MutationRun>,
    pub detected: usize,
    pub attributed: usize,
}

impl ExperimentReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for run in &self.runs {
            out.push_str(&format!(
                "{:>2}  {}  {:<28} {}\n",
                run.id,
                run.mark_with_flags(),
                run.name,
                if run.fired.is_empty() {
                    "-".to_string()
                } else {
                    run.fired.join(", ")
                }
            ));
        }
        out.push_str(&format!(
            "{} of {} detected, {} of {} cause identified\n",
            self.detected,
            self.runs.len(),
            self.attributed,
            self.runs.len()
        ));
        out
    }
}

impl MutationRun {
    fn mark_with_flags(&self) -> String {
        let mut mark = self.outcome.mark().to_string();
        if !self.zone_ok {
            mark.push('!');
        }
        mark
    }
}

/// Inject every catalog mutation into `graph` and verify each result with
/// `check`. Fails fast when the base model itself does not verify clean.
pub fn run_experiment(
    graph: &ModelGraph,
    check: &CheckConfig,
) -> Result<ExperimentReport, InjectError> {
    let base = verify(graph, check);
    if !base.is_clean() {
        return Err(InjectError::FixtureNotClean { count: base.total() });
    }
    let mut runs = Vec::new();
    for mutation in catalog() {
        let mutated = inject(graph, mutation)?;
        let report = verify(&mutated, check);
        runs.push(classify(mutation, &mutated, &report));
    }
    let detected = runs.iter().filter(|r| r.outcome != Outcome::Missed).count();
    let attributed = runs
        .iter()
        .filter(|r| r.outcome == Outcome::Attributed)
        .count();
    Ok(ExperimentReport {
        runs,
        detected,
        attributed,
    })
}

fn site_matches(mutation: &Mutation, culprit: &Culprit) -> bool {
    mutation.sites.iter().any(|site| {
        site.node == culprit.node
            && (site.item.is_none() || site.item.as_deref() == culprit.item.as_deref())
    })
}

fn classify(mutation: &Mutation, graph: &ModelGraph, report: &Report) -> MutationRun {
    let fired: BTreeSet<&str> = report.violations().map(|v| v.rule.as_str()).collect();
    let attributed = report.violations().any(|v| {
        mutation.expect.iter().any(|r| r == &v.rule)
            && v.culprits.iter().any(|c| site_matches(mutation, c))
    });
    let outcome = if attributed {
        Outcome::Attributed
    } else if !fired.is_empty() {
        Outcome::Unattributed
    } else {
        Outcome::Missed
    };
    let zone_ok = report.violations().all(|v| {
        v.culprits.iter().all(|c| {
            graph
                .hostname_of(&c.node)
                .is_some_and(|host| mutation.zone.contains(&host))
        })
    });
    let expected_fired = mutation.expect.iter().all(|r| fired.contains(r.as_str()));
    MutationRun {
        id: mutation.id,
        name: mutation.name.clone(),
        outcome,
        fired: fired.into_iter().map(str::to_string).collect(),
        expected_fired,
        zone_ok,
        violations: report.total(),
    }
}
