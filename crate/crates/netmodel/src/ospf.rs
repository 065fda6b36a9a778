//! OSPF verification: which interfaces each process activates, whether the
//! two ends of every link can form an adjacency, router id uniqueness, and
//! area reachability over the backbone.

use std::collections::{BTreeMap, BTreeSet};

use crate::addr;
use crate::metamodel::NodeKind;
use crate::model::{ModelGraph, NodeRecord};
use crate::topology::{link_endpoints, svi_of, trunk_allowed};
use crate::violation::{rule, sort_violations, Culprit, Violation};

pub(crate) const DEFAULT_HELLO: &str = "10";
pub(crate) const DEFAULT_DEAD: &str = "40";
pub(crate) const DEFAULT_MTU: &str = "1500";
pub(crate) const DEFAULT_PRIORITY: &str = "1";

/// Which network statement activates each interface, per the usual
/// longest-match rule: most specific wildcard wins, name order breaks ties.
pub(crate) struct OspfView<'g> {
    /// interface node name to the network statement that covers it
    pub bindings: BTreeMap<String, &'g NodeRecord>,
    /// Config name to its OspfSettings, for OSPF-running devices only
    pub processes: BTreeMap<String, Vec<&'g NodeRecord>>,
}

/// All EthernetSettings and VlanSettings of one Config, name sorted.
pub(crate) fn interfaces_of<'g>(graph: &'g ModelGraph, config: &str) -> Vec<&'g NodeRecord> {
    let mut out: Vec<&NodeRecord> = graph
        .neighbors(config, NodeKind::EthernetSetting)
        .unwrap_or_default();
    out.extend(graph.neighbors(config, NodeKind::VlanSetting).unwrap_or_default());
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

pub(crate) fn statements_of<'g>(
    graph: &'g ModelGraph,
    ospf_settings: &[&'g NodeRecord],
) -> Vec<&'g NodeRecord> {
    let mut out = Vec::new();
    for os in ospf_settings {
        out.extend(
            graph
                .neighbors(&os.name, NodeKind::OspfInterfaceSetting)
                .unwrap_or_default(),
        );
    }
    out
}

fn statement_matches(stmt: &NodeRecord, if_ip: u32) -> Option<u32> {
    let stmt_ip = addr::parse_ipv4(stmt.get("ipAddress")?)?;
    let wildcard = addr::parse_ipv4(stmt.get("wildcardMask")?)?;
    addr::wildcard_match(if_ip, stmt_ip, wildcard)
        .then(|| addr::wildcard_specificity(wildcard))
}

pub(crate) fn build_view(graph: &ModelGraph) -> OspfView<'_> {
    let mut view = OspfView {
        bindings: BTreeMap::new(),
        processes: BTreeMap::new(),
    };
    for config in graph.nodes_of_kind(NodeKind::Config) {
        let settings = graph
            .neighbors(&config.name, NodeKind::OspfSetting)
            .unwrap_or_default();
        if settings.is_empty() {
            continue;
        }
        let statements = statements_of(graph, &settings);
        for iface in interfaces_of(graph, &config.name) {
            let if_ip = match iface.get("ipAddress").and_then(addr::parse_ipv4) {
                Some(ip) => ip,
                None => continue,
            };
            let best = statements
                .iter()
                .filter_map(|s| statement_matches(s, if_ip).map(|spec| (spec, *s)))
                .max_by(|(spec_a, a), (spec_b, b)| {
                    spec_a.cmp(spec_b).then(b.name.cmp(&a.name))
                });
            if let Some((_, stmt)) = best {
                view.bindings.insert(iface.name.clone(), stmt);
            }
        }
        view.processes.insert(config.name.clone(), settings);
    }
    view
}

fn hostname(graph: &ModelGraph, node: &str) -> String {
    graph.hostname_of(node).unwrap_or_else(|| node.to_string())
}

/// OSPF.1, OSPF.7, and the enablement half of OSPF.9: every addressed
/// interface of an OSPF router must be covered by a network statement, and
/// every statement must cover some interface.
fn check_enablement(graph: &ModelGraph, view: &OspfView) -> Vec<Violation> {
    let mut out = Vec::new();
    for (config, settings) in &view.processes {
        let host = hostname(graph, config);
        let interfaces = interfaces_of(graph, config);
        for iface in &interfaces {
            let ip = match iface.get("ipAddress") {
                Some(ip) => ip,
                None => continue,
            };
            if !view.bindings.contains_key(&iface.name) {
                let culprit = Culprit::value(&iface.name, "ipAddress", ip);
                out.push(Violation::error(
                    rule::OSPF_1,
                    format!("OSPF is not enabled for interface {} ({ip}) on {host}", iface.name),
                    vec![culprit.clone()],
                ));
                out.push(Violation::error(
                    rule::OSPF_9,
                    format!(
                        "Interface {} on {host} cannot establish an OSPF neighbor relationship",
                        iface.name
                    ),
                    vec![culprit],
                ));
            }
        }
        for stmt in statements_of(graph, settings) {
            let covers_any = interfaces.iter().any(|iface| {
                iface
                    .get("ipAddress")
                    .and_then(addr::parse_ipv4)
                    .and_then(|ip| statement_matches(stmt, ip))
                    .is_some()
            });
            if !covers_any {
                out.push(Violation::error(
                    rule::OSPF_7,
                    format!(
                        "Network statement {} ({} {}) matches no interface on {host}",
                        stmt.name,
                        stmt.get("ipAddress").unwrap_or("?"),
                        stmt.get("wildcardMask").unwrap_or("?"),
                    ),
                    vec![match stmt.get("ipAddress") {
                        Some(ip) => Culprit::value(&stmt.name, "ipAddress", ip),
                        None => Culprit::item(&stmt.name, "ipAddress"),
                    }],
                ));
            }
        }
    }
    out
}

/// The routed interface each link endpoint speaks OSPF through: the port
/// itself when addressed, the SVI of its access VLAN otherwise. Trunk links
/// pair SVIs per VLAN allowed on both ends.
pub(crate) fn l3_endpoint_pairs<'g>(
    graph: &'g ModelGraph,
    link: &'g NodeRecord,
) -> Vec<(&'g NodeRecord, &'g NodeRecord)> {
    let (e1, e2) = link_endpoints(graph, link);
    let (c1, c2) = match (graph.config_of(&e1.name), graph.config_of(&e2.name)) {
        (Ok(a), Ok(b)) => (a.name.clone(), b.name.clone()),
        _ => return Vec::new(),
    };
    fn resolve<'g>(
        graph: &'g ModelGraph,
        es: &'g NodeRecord,
        config: &str,
    ) -> Option<&'g NodeRecord> {
        if es.get("ipAddress").is_some() {
            return Some(es);
        }
        if es.get("mode") == Some("access") {
            return es.get("accessVlan").and_then(|v| svi_of(graph, config, v));
        }
        None
    }
    if e1.get("mode") == Some("trunk") && e2.get("mode") == Some("trunk") {
        let common: Vec<String> = trunk_allowed(e1)
            .intersection(&trunk_allowed(e2))
            .cloned()
            .collect();
        common
            .iter()
            .filter_map(|v| {
                match (svi_of(graph, &c1, v), svi_of(graph, &c2, v)) {
                    (Some(a), Some(b)) => Some((a, b)),
                    _ => None,
                }
            })
            .collect()
    } else {
        match (resolve(graph, e1, &c1), resolve(graph, e2, &c2)) {
            (Some(a), Some(b)) => vec![(a, b)],
            _ => Vec::new(),
        }
    }
}

fn net_of(iface: &NodeRecord) -> Option<(u32, u32)> {
    let ip = addr::parse_ipv4(iface.get("ipAddress")?)?;
    let mask = addr::parse_ipv4(iface.get("subnetMask")?)?;
    Some((addr::network(ip, mask), mask))
}

/// Per-link adjacency checks: OSPF.3 areas, OSPF.4 subnets, OSPF.5/6
/// timers, OSPF.10 MTU, and the half-activated case of OSPF.9.
fn check_adjacencies(graph: &ModelGraph, view: &OspfView) -> Vec<Violation> {
    let mut out = Vec::new();
    for link in graph.nodes_of_kind(NodeKind::Link) {
        let (e1, e2) = link_endpoints(graph, link);
        let (c1, c2) = match (graph.config_of(&e1.name), graph.config_of(&e2.name)) {
            (Ok(a), Ok(b)) => (a.name.clone(), b.name.clone()),
            _ => continue,
        };
        if !view.processes.contains_key(&c1) || !view.processes.contains_key(&c2) {
            continue;
        }
        let mut any_pair_bound = false;
        for (i1, i2) in l3_endpoint_pairs(graph, link) {
            let (b1, b2) = (view.bindings.get(&i1.name), view.bindings.get(&i2.name));
            match (b1, b2) {
                (Some(b1), Some(b2)) => {
                    any_pair_bound = true;
                    if let (Some(a1), Some(a2)) = (b1.get("areaId"), b2.get("areaId")) {
                        if a1 != a2 {
                            out.push(Violation::error(
                                rule::OSPF_3,
                                format!("Area IDs of {} and {} do not match", b1.name, b2.name),
                                vec![
                                    Culprit::value(&b1.name, "areaId", a1),
                                    Culprit::value(&b2.name, "areaId", a2),
                                ],
                            ));
                        }
                    }
                    if let (Some(n1), Some(n2)) = (net_of(i1), net_of(i2)) {
                        if n1 != n2 {
                            out.push(Violation::error(
                                rule::OSPF_4,
                                format!(
                                    "Subnets of {} and {} do not match ({} vs {})",
                                    i1.name,
                                    i2.name,
                                    addr::format_net(n1.0, n1.1),
                                    addr::format_net(n2.0, n2.1)
                                ),
                                vec![
                                    Culprit::value(&i1.name, "ipAddress", i1.get("ipAddress").unwrap_or("?")),
                                    Culprit::value(&i1.name, "subnetMask", i1.get("subnetMask").unwrap_or("?")),
                                    Culprit::value(&i2.name, "ipAddress", i2.get("ipAddress").unwrap_or("?")),
                                    Culprit::value(&i2.name, "subnetMask", i2.get("subnetMask").unwrap_or("?")),
                                ],
                            ));
                        }
                    }
                    for (item, default, rule_id, label) in [
                        ("helloInterval", DEFAULT_HELLO, rule::OSPF_5, "Hello intervals"),
                        ("deadInterval", DEFAULT_DEAD, rule::OSPF_6, "Dead intervals"),
                    ] {
                        let v1 = b1.get(item).unwrap_or(default);
                        let v2 = b2.get(item).unwrap_or(default);
                        if v1 != v2 {
                            let culprit = |b: &NodeRecord| match b.get(item) {
                                Some(v) => Culprit::value(&b.name, item, v),
                                None => Culprit::item(&b.name, item),
                            };
                            out.push(Violation::error(
                                rule_id,
                                format!(
                                    "{label} of {} and {} do not match ({v1} vs {v2})",
                                    b1.name, b2.name
                                ),
                                vec![culprit(b1), culprit(b2)],
                            ));
                        }
                    }
                }
                (Some(_), None) => out.push(half_bound(graph, i2)),
                (None, Some(_)) => out.push(half_bound(graph, i1)),
                (None, None) => {}
            }
        }
        if any_pair_bound {
            let m1 = e1.get("mtu").unwrap_or(DEFAULT_MTU);
            let m2 = e2.get("mtu").unwrap_or(DEFAULT_MTU);
            if m1 != m2 {
                let culprit = |es: &NodeRecord| match es.get("mtu") {
                    Some(v) => Culprit::value(&es.name, "mtu", v),
                    None => Culprit::item(&es.name, "mtu"),
                };
                out.push(Violation::error(
                    rule::OSPF_10,
                    format!(
                        "MTU values of {} and {} do not match ({m1} vs {m2})",
                        e1.name, e2.name
                    ),
                    vec![culprit(e1), culprit(e2)],
                ));
            }
        }
    }
    out
}

fn half_bound(graph: &ModelGraph, iface: &NodeRecord) -> Violation {
    Violation::error(
        rule::OSPF_9,
        format!(
            "Interface {} on {} cannot establish an OSPF neighbor relationship",
            iface.name,
            hostname(graph, &iface.name)
        ),
        vec![Culprit::node(&iface.name)],
    )
}

/// OSPF.2: router ids must be unique across the model.
fn check_router_ids(graph: &ModelGraph) -> Vec<Violation> {
    let mut by_rid: BTreeMap<&str, Vec<&NodeRecord>> = BTreeMap::new();
    for os in graph.nodes_of_kind(NodeKind::OspfSetting) {
        if let Some(rid) = os.get("routerId") {
            by_rid.entry(rid).or_default().push(os);
        }
    }
    let mut out = Vec::new();
    for (rid, owners) in by_rid {
        if owners.len() >= 2 {
            let names: Vec<&str> = owners.iter().map(|o| o.name.as_str()).collect();
            out.push(Violation::error(
                rule::OSPF_2,
                format!("Router ID {rid} is duplicated on {}", names.join(", ")),
                owners
                    .iter()
                    .map(|o| Culprit::value(&o.name, "routerId", rid))
                    .collect(),
            ));
        }
    }
    out
}

/// Area reachability. With a backbone, every other area needs a router in
/// both that area and area 0, or a virtual link through it. Without a
/// backbone the whole area layout is broken: one OSPF.12 report names every
/// area statement, rather than one vague report per area.
fn check_backbone(graph: &ModelGraph, ospf12_enabled: bool) -> Vec<Violation> {
    let mut areas: BTreeMap<String, Vec<&NodeRecord>> = BTreeMap::new();
    let mut config_areas: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for stmt in graph.nodes_of_kind(NodeKind::OspfInterfaceSetting) {
        if let Some(area) = stmt.get("areaId") {
            areas.entry(area.to_string()).or_default().push(stmt);
            if let Ok(config) = graph.config_of(&stmt.name) {
                config_areas
                    .entry(config.name.clone())
                    .or_default()
                    .insert(area.to_string());
            }
        }
    }
    if areas.is_empty() {
        return Vec::new();
    }

    if !areas.contains_key("0") {
        if ospf12_enabled {
            let culprits = areas
                .values()
                .flatten()
                .map(|stmt| {
                    Culprit::value(&stmt.name, "areaId", stmt.get("areaId").unwrap_or("?"))
                })
                .collect();
            return vec![Violation::error(
                rule::OSPF_12,
                "No backbone area (Area 0) is defined; every area must connect to Area 0",
                culprits,
            )];
        }
        return areas
            .keys()
            .map(|area| {
                Violation::error(
                    rule::OSPF_8,
                    format!("Area {area} is not connected to Area 0"),
                    Vec::new(),
                )
            })
            .collect();
    }

    let vl_transits: BTreeSet<&str> = graph
        .nodes_of_kind(NodeKind::OspfVirtualLink)
        .into_iter()
        .filter_map(|vl| vl.get("areaId"))
        .collect();
    let mut out = Vec::new();
    for (area, members) in &areas {
        if area == "0" {
            continue;
        }
        let connected = config_areas
            .values()
            .any(|set| set.contains(area.as_str()) && set.contains("0"))
            || vl_transits.contains(area.as_str());
        if !connected {
            out.push(Violation::error(
                rule::OSPF_8,
                format!("Area {area} is not connected to Area 0"),
                members
                    .iter()
                    .map(|stmt| Culprit::value(&stmt.name, "areaId", area))
                    .collect(),
            ));
        }
    }
    out
}

/// OSPF.11: a virtual link works only when the named neighbor configures
/// the mirror image (same transit area, router ids swapped).
fn check_virtual_links(graph: &ModelGraph) -> Vec<Violation> {
    let vls = graph.nodes_of_kind(NodeKind::OspfVirtualLink);
    let rid_of = |vl: &NodeRecord| -> Option<String> {
        graph
            .neighbor_one(&vl.name, NodeKind::OspfSetting)
            .and_then(|os| os.get("routerId"))
            .map(str::to_string)
    };
    let mut out = Vec::new();
    for vl in &vls {
        let my_rid = rid_of(vl);
        let transit = vl.get("areaId");
        let partner = vl.get("routerId");
        let paired = my_rid.is_some()
            && transit.is_some()
            && partner.is_some()
            && vls.iter().any(|other| {
                other.name != vl.name
                    && rid_of(other).as_deref() == partner
                    && other.get("areaId") == transit
                    && other.get("routerId") == my_rid.as_deref()
            });
        if !paired {
            out.push(Violation::error(
                rule::OSPF_11,
                format!(
                    "Virtual link {} (transit area {}, neighbor {}) has no matching virtual link on the neighbor",
                    vl.name,
                    transit.unwrap_or("?"),
                    partner.unwrap_or("?")
                ),
                vec![Culprit::node(&vl.name)],
            ));
        }
    }
    out
}

/// The whole OSPF layer. `disabled` drops individual rules; disabling
/// OSPF.12 also reverts missing-backbone handling to per-area OSPF.8
/// reports without culprits.
pub fn check_ospf(graph: &ModelGraph, disabled: &BTreeSet<String>) -> Vec<Violation> {
    let view = build_view(graph);
    let mut out = Vec::new();
    out.extend(check_enablement(graph, &view));
    out.extend(check_adjacencies(graph, &view));
    out.extend(check_router_ids(graph));
    out.extend(check_backbone(graph, !disabled.contains(rule::OSPF_12)));
    out.extend(check_virtual_links(graph));
    out.retain(|v| !disabled.contains(&v.rule));

    // the enablement and adjacency passes can blame the same interface
    let mut seen = BTreeSet::new();
    out.retain(|v| {
        v.rule != rule::OSPF_9
            || v.culprits
                .first()
                .map(|c| seen.insert(c.node.clone()))
                .unwrap_or(true)
    });
    sort_violations(&mut out);
    out
}
