//! Single-node verification: the five lexical/syntactic categories applied
//! per the rule matrix, the six intra-node consistency cases, and the
//! structural ownership check. A clean pass here opens the gate to the
//! multi-node and protocol layers.

use thiserror::Error;

use crate::catalog::RuleMatrix;
use crate::metamodel::NodeKind;
use crate::model::{ModelError, ModelGraph, NodeRecord};
use crate::violation::{rule, sort_violations, Culprit, Severity, Violation};

#[derive(Debug, Error)]
#[error("{kind} has no specification item named {item:?}")]
pub struct UnknownItem {
    pub kind: NodeKind,
    pub item: String,
}

/// Evaluate every applicable rule category against one raw value. Items
/// without rules (Config.description, Client.name, Link.name) always pass.
pub fn check_value(
    node_name: &str,
    kind: NodeKind,
    item: &str,
    value: &str,
) -> Result<Vec<Violation>, UnknownItem> {
    let matrix = RuleMatrix::shared();
    if matrix.is_unruled(kind, item) {
        return Ok(Vec::new());
    }
    let rules = matrix.rules_for(kind, item).ok_or_else(|| UnknownItem {
        kind,
        item: item.to_string(),
    })?;
    Ok(rules
        .iter()
        .filter(|r| !r.regex.is_match(value))
        .map(|r| {
            Violation::error(
                r.category.rule_id(),
                format!("{}.{}: {}", kind, item, r.message),
                vec![Culprit::value(node_name, item, value)],
            )
        })
        .collect())
}

/// All single-node findings for one node: lexical rules over every present
/// field, the intra-node cases for its kind, and the ownership check.
pub fn check_node(graph: &ModelGraph, name: &str) -> Result<Vec<Violation>, ModelError> {
    let node = graph.require(name)?;
    let mut out = Vec::new();

    for (item, value) in &node.fields {
        match check_value(&node.name, node.kind, item, value) {
            Ok(vs) => out.extend(vs),
            // unreachable after a successful load; defensive for direct callers
            Err(e) => {
                return Err(ModelError::UnknownItem {
                    node: node.name.clone(),
                    kind: e.kind,
                    item: e.item,
                })
            }
        }
    }

    match node.kind {
        NodeKind::EthernetSetting => {
            check_es_address_pair(node, &mut out);
            check_es_mode(node, &mut out);
            if node.get("port").is_none() {
                out.push(Violation::error(
                    rule::INTRA_C,
                    format!("EthernetSetting {}: port is not configured", node.name),
                    vec![Culprit::item(&node.name, "port")],
                ));
            }
        }
        NodeKind::OspfInterfaceSetting => {
            let missing: Vec<&str> = ["ipAddress", "wildcardMask", "areaId"]
                .into_iter()
                .filter(|item| node.get(item).is_none())
                .collect();
            if !missing.is_empty() {
                out.push(Violation::error(
                    rule::INTRA_D,
                    format!(
                        "OspfInterfaceSetting {}: missing {}",
                        node.name,
                        missing.join(" and ")
                    ),
                    missing
                        .iter()
                        .map(|item| Culprit::item(&node.name, *item))
                        .collect(),
                ));
            }
        }
        NodeKind::VlanSetting => {
            if node.get("vlanNum").is_none() {
                out.push(Violation::error(
                    rule::INTRA_E,
                    format!("VlanSetting {}: vlanNum is not configured", node.name),
                    vec![Culprit::item(&node.name, "vlanNum")],
                ));
            }
        }
        NodeKind::Vlan => {
            if node.get("num").is_none() {
                out.push(Violation::error(
                    rule::INTRA_F,
                    format!("Vlan {}: num is not configured", node.name),
                    vec![Culprit::item(&node.name, "num")],
                ));
            }
        }
        _ => {}
    }

    if node.kind != NodeKind::Config && node.kind != NodeKind::Link && graph.config_of(name).is_err()
    {
        out.push(Violation::error(
            rule::STRUCT_ORPHAN,
            format!("{} {} is not owned by any Config", node.kind, node.name),
            vec![Culprit::node(&node.name)],
        ));
    }

    Ok(out)
}

/// Case (a): an interface address is an ip/mask pair; one without the other
/// is inconsistent. Both item slots are blamed.
fn check_es_address_pair(node: &NodeRecord, out: &mut Vec<Violation>) {
    let ip = node.get("ipAddress");
    let mask = node.get("subnetMask");
    if ip.is_some() != mask.is_some() {
        let culprit = |item: &str| match node.get(item) {
            Some(v) => Culprit::value(&node.name, item, v),
            None => Culprit::item(&node.name, item),
        };
        out.push(Violation::error(
            rule::INTRA_A,
            format!(
                "EthernetSetting {}: ipAddress and subnetMask must be configured together",
                node.name
            ),
            vec![culprit("ipAddress"), culprit("subnetMask")],
        ));
    }
}

/// Case (b): switchport mode against the VLAN items it governs. Only runs
/// when mode holds one of its two legal keywords; a bad keyword is already
/// a Key violation.
fn check_es_mode(node: &NodeRecord, out: &mut Vec<Violation>) {
    let mode = match node.get("mode") {
        Some(m) => m,
        None => return,
    };
    let mode_culprit = Culprit::value(&node.name, "mode", mode);
    let mut offense = |message: String, extra: Culprit| {
        out.push(Violation::error(
            rule::INTRA_B,
            message,
            vec![mode_culprit.clone(), extra],
        ));
    };
    match mode {
        "access" => {
            if node.get("accessVlan").is_none() {
                offense(
                    format!("EthernetSetting {}: access mode requires accessVlan", node.name),
                    Culprit::item(&node.name, "accessVlan"),
                );
            }
            for item in ["nativeVlan", "allowedVlan"] {
                if let Some(v) = node.get(item) {
                    offense(
                        format!(
                            "EthernetSetting {}: {item} does not apply to access mode",
                            node.name
                        ),
                        Culprit::value(&node.name, item, v),
                    );
                }
            }
        }
        "trunk" => {
            if let Some(v) = node.get("accessVlan") {
                offense(
                    format!(
                        "EthernetSetting {}: accessVlan does not apply to trunk mode",
                        node.name
                    ),
                    Culprit::value(&node.name, "accessVlan", v),
                );
            }
        }
        _ => {}
    }
}

/// The whole single-node layer over every node, in deterministic order.
pub fn check_all_single(graph: &ModelGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for node in graph.nodes() {
        // require() cannot fail for an enumerated node
        out.extend(check_node(graph, &node.name).unwrap());
    }
    sort_violations(&mut out);
    out
}

/// Later layers run only when this layer reports no errors.
pub fn gate_passes(single: &[Violation]) -> bool {
    single.iter().all(|v| v.severity != Severity::Error)
}
