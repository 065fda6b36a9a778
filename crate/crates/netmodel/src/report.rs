//! Runs the verification layers in order and assembles the results into a
//! report that can be printed for people or serialized for tooling.
//!
//! The layer order is fixed: single-node checks run first, and the two
//! network-wide layers (multi-node and OSPF) run only when the single-node
//! pass produced no errors. A report therefore always contains three layer
//! sections, but the later two may be marked `skipped`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::model::ModelGraph;
use crate::ospf;
use crate::rules;
use crate::topology;
use crate::violation::{sort_violations, Culprit, Severity, Violation};

/// Options for a verification run.
#[derive(Debug, Clone, Default)]
pub struct CheckConfig {
    /// Rule ids to suppress. Disabling `OSPF.12` also reverts the
    /// missing-backbone check to per-area reports without culprits.
    pub disabled: BTreeSet<String>,
    /// Run the multi-node and OSPF layers even when single-node errors
    /// exist. Off by default; partial values make the later layers noisy.
    pub force_all_layers: bool,
}

/// One layer's findings.
#[derive(Debug, Clone, Serialize)]
pub struct LayerReport {
    pub name: &'static str,
    /// True when single-node errors blocked this layer.
    pub skipped: bool,
    pub violations: Vec<Violation>,
}

/// Result of verifying one model through all layers.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub gate_passed: bool,
    pub layers: Vec<LayerReport>,
}

/// Serializable wrapper adding run metadata to a [`Report`].
#[derive(Debug, Serialize)]
pub struct ReportDocument<'a> {
    pub model: &'a str,
    pub exit: &'static str,
    pub errors: usize,
    pub warnings: usize,
    pub gate_passed: bool,
    pub layers: &'a [LayerReport],
}

/// Verify `graph` through every layer, honoring `config`.
pub fn verify(graph: &ModelGraph, config: &CheckConfig) -> Report {
    let mut single = rules::check_all_single(graph);
    single.retain(|v| !config.disabled.contains(&v.rule));
    sort_violations(&mut single);
    let gate_passed = rules::gate_passes(&single);
    let run_later = gate_passed || config.force_all_layers;

    let mut layers = vec![LayerReport {
        name: "single-node",
        skipped: false,
        violations: single,
    }];
    if run_later {
        let mut multi = topology::check_topology(graph);
        multi.retain(|v| !config.disabled.contains(&v.rule));
        sort_violations(&mut multi);
        layers.push(LayerReport {
            name: "multi-node",
            skipped: false,
            violations: multi,
        });
        layers.push(LayerReport {
            name: "ospf",
            skipped: false,
            violations: ospf::check_ospf(graph, &config.disabled),
        });
    } else {
        for name in ["multi-node", "ospf"] {
            layers.push(LayerReport {
                name,
                skipped: true,
                violations: Vec::new(),
            });
        }
    }
    Report {
        gate_passed,
        layers,
    }
}

impl Report {
    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.layers.iter().flat_map(|l| l.violations.iter())
    }

    pub fn total(&self) -> usize {
        self.layers.iter().map(|l| l.violations.len()).sum()
    }

    pub fn errors(&self) -> usize {
        self.violations()
            .filter(|v| v.severity == Severity::Error)
            .count()
    }

    pub fn warnings(&self) -> usize {
        self.violations()
            .filter(|v| v.severity == Severity::Warning)
            .count()
    }

    pub fn is_clean(&self) -> bool {
        self.total() == 0
    }

    /// Process exit status for this report: 0 clean, 1 findings.
    pub fn exit_code(&self) -> i32 {
        if self.is_clean() {
            0
        } else {
            1
        }
    }

    pub fn document<'a>(&'a self, model: &'a str) -> ReportDocument<'a> {
        ReportDocument {
            model,
            exit: if self.is_clean() { "clean" } else { "violations" },
            errors: self.errors(),
            warnings: self.warnings(),
            gate_passed: self.gate_passed,
            layers: &self.layers,
        }
    }

    /// Human-readable report. Violations are grouped by the device owning
    /// the first blamed node; groups, rules, and nodes print in a stable
    /// order. Findings whose culprits belong to no device (orphans, or
    /// reports without culprits) land in a trailing `unattributed` group.
    pub fn to_text(&self, graph: &ModelGraph) -> String {
        let mut out = String::new();
        for layer in &self.layers {
            if layer.skipped {
                let _ = writeln!(out, "{}: skipped until single-node errors are fixed", layer.name);
            } else if layer.violations.is_empty() {
                let _ = writeln!(out, "{}: clean", layer.name);
            } else {
                let _ = writeln!(out, "{}: {}", layer.name, count(layer.violations.len(), "finding"));
            }
        }
        if self.is_clean() {
            let _ = writeln!(out, "\nno violations");
            return out;
        }

        let mut groups: BTreeMap<String, Vec<&Violation>> = BTreeMap::new();
        let mut loose: Vec<&Violation> = Vec::new();
        for v in self.violations() {
            match v.culprits.first().and_then(|c| graph.hostname_of(&c.node)) {
                Some(host) => groups.entry(host).or_default().push(v),
                None => loose.push(v),
            }
        }
        if !loose.is_empty() {
            groups.insert("unattributed".to_string(), loose);
        }
        for (device, mut list) in groups {
            list.sort_by_key(|v| {
                (
                    Violation::rule_sort_key(&v.rule),
                    v.culprits.first().map(|c| c.node.clone()).unwrap_or_default(),
                    v.message.clone(),
                )
            });
            let _ = writeln!(out, "\n{device}");
            for v in list {
                let sev = match v.severity {
                    Severity::Error => "error",
                    Severity::Warning => "warning",
                };
                let _ = writeln!(out, "  {sev} {}: {}", v.rule, v.message);
                for c in &v.culprits {
                    let _ = writeln!(out, "      at {}", culprit_label(c));
                }
            }
        }
        let _ = writeln!(
            out,
            "\n{} ({}, {})",
            count(self.total(), "violation"),
            count(self.errors(), "error"),
            count(self.warnings(), "warning")
        );
        out
    }
}

fn culprit_label(c: &Culprit) -> String {
    match (&c.item, &c.value) {
        (Some(item), Some(value)) => format!("{}.{item} = {value:?}", c.node),
        (Some(item), None) => format!("{}.{item}", c.node),
        (None, _) => c.node.clone(),
    }
}

fn count(n: usize, noun: &str) -> String {
    if n == 1 {
        format!("1 {noun}")
    } else {
        format!("{n} {noun}s")
    }
}
