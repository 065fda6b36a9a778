//! Multi-node verification across the physical and VLAN layers: L2 segment
//! discovery by graph traversal, then the twelve cross-device items
//! (duplicate addresses, trunk and port mismatches, loops, subnet overlap,
//! released interfaces).

use std::collections::{BTreeMap, BTreeSet};

use crate::addr;
use crate::metamodel::NodeKind;
use crate::model::{ModelGraph, NodeRecord};
use crate::violation::{rule, sort_violations, Culprit, Violation};

/// Identity of the broadcast domain an address lives in. Two addresses are
/// "in the same segment" exactly when their keys are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum SegmentKey {
    /// A VLAN flood-fill component, identified by its smallest member Config.
    Vlan { vlan: String, root: String },
    /// The two routed interfaces joined by one Link.
    RoutedLink { link: String },
    /// An addressed node with no broadcast domain of its own.
    Lone { node: String },
}

/// One VLAN broadcast domain: the Configs mutually reachable through Links
/// that carry the VLAN on both ends.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct L2Segment {
    pub vlan: String,
    pub configs: BTreeSet<String>,
}

impl L2Segment {
    pub fn key(&self) -> SegmentKey {
        SegmentKey::Vlan {
            vlan: self.vlan.clone(),
            root: self.configs.iter().next().cloned().unwrap_or_default(),
        }
    }
}

pub(crate) fn trunk_allowed(es: &NodeRecord) -> BTreeSet<String> {
    es.get("allowedVlan")
        .map(|v| v.split(',').map(str::to_string).collect())
        .unwrap_or_default()
}

/// Whether a switchport carries a VLAN: access ports their accessVlan,
/// trunk ports every allowed VLAN.
pub(crate) fn carries(es: &NodeRecord, vlan: &str) -> bool {
    match es.get("mode") {
        Some("access") => es.get("accessVlan") == Some(vlan),
        Some("trunk") => trunk_allowed(es).contains(vlan),
        _ => false,
    }
}

/// VLAN numbers present on one Config, from Vlan nodes, SVIs, and ports.
fn config_vlans(graph: &ModelGraph, config: &str) -> BTreeSet<String> {
    let mut vlans = BTreeSet::new();
    for vlan in graph.neighbors(config, NodeKind::Vlan).unwrap_or_default() {
        if let Some(num) = vlan.get("num") {
            vlans.insert(num.to_string());
        }
    }
    for vs in graph.neighbors(config, NodeKind::VlanSetting).unwrap_or_default() {
        if let Some(num) = vs.get("vlanNum") {
            vlans.insert(num.to_string());
        }
    }
    for es in graph.neighbors(config, NodeKind::EthernetSetting).unwrap_or_default() {
        match es.get("mode") {
            Some("access") => {
                if let Some(v) = es.get("accessVlan") {
                    vlans.insert(v.to_string());
                }
            }
            Some("trunk") => vlans.extend(trunk_allowed(es)),
            _ => {}
        }
    }
    vlans
}

/// The two EthernetSettings of a Link, in name order.
pub(crate) fn link_endpoints<'g>(
    graph: &'g ModelGraph,
    link: &NodeRecord,
) -> (&'g NodeRecord, &'g NodeRecord) {
    let ends = graph
        .neighbors(&link.name, NodeKind::EthernetSetting)
        .expect("link exists");
    // degree 2 is a load invariant; neighbors are already name-sorted
    (ends[0], ends[1])
}

/// The SVI (VlanSetting) for one VLAN on one Config, if any.
pub(crate) fn svi_of<'g>(
    graph: &'g ModelGraph,
    config: &str,
    vlan: &str,
) -> Option<&'g NodeRecord> {
    graph
        .neighbors(config, NodeKind::VlanSetting)
        .unwrap_or_default()
        .into_iter()
        .find(|vs| vs.get("vlanNum") == Some(vlan))
}

/// Flood-fill per VLAN: Configs are joined when some Link carries the VLAN
/// on both of its endpoints.
pub fn discover_segments(graph: &ModelGraph) -> Vec<L2Segment> {
    let mut universe: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    let configs = graph.nodes_of_kind(NodeKind::Config);
    for config in &configs {
        for vlan in config_vlans(graph, &config.name) {
            universe.entry(vlan).or_default().insert(config.name.clone());
        }
    }

    // per-VLAN adjacency from Links carrying the VLAN end to end
    let mut adjacency: BTreeMap<(String, String), BTreeSet<String>> = BTreeMap::new();
    for link in graph.nodes_of_kind(NodeKind::Link) {
        let (e1, e2) = link_endpoints(graph, link);
        let (c1, c2) = match (graph.config_of(&e1.name), graph.config_of(&e2.name)) {
            (Ok(a), Ok(b)) => (a.name.clone(), b.name.clone()),
            _ => continue,
        };
        for (vlan, members) in &universe {
            if carries(e1, vlan) && carries(e2, vlan) && members.contains(&c1) && members.contains(&c2)
            {
                adjacency
                    .entry((vlan.clone(), c1.clone()))
                    .or_default()
                    .insert(c2.clone());
                adjacency
                    .entry((vlan.clone(), c2.clone()))
                    .or_default()
                    .insert(c1.clone());
            }
        }
    }

    let mut segments = Vec::new();
    for (vlan, members) in &universe {
        let mut unvisited: BTreeSet<String> = members.clone();
        while let Some(start) = unvisited.iter().next().cloned() {
            let mut component = BTreeSet::new();
            let mut queue = vec![start];
            while let Some(cur) = queue.pop() {
                if !unvisited.remove(&cur) {
                    continue;
                }
                component.insert(cur.clone());
                if let Some(next) = adjacency.get(&(vlan.clone(), cur)) {
                    queue.extend(next.iter().cloned());
                }
            }
            segments.push(L2Segment {
                vlan: vlan.clone(),
                configs: component,
            });
        }
    }
    segments
}

fn segment_index(segments: &[L2Segment]) -> BTreeMap<(String, String), SegmentKey> {
    let mut index = BTreeMap::new();
    for seg in segments {
        let key = seg.key();
        for config in &seg.configs {
            index.insert((seg.vlan.clone(), config.clone()), key.clone());
        }
    }
    index
}

/// One address participating in duplicate/network analysis.
#[derive(Debug, Clone)]
pub(crate) struct AddressEntry {
    pub node: String,
    pub config: String,
    pub ip_item: &'static str,
    pub ip_raw: String,
    pub mask_item: &'static str,
    pub mask_raw: Option<String>,
    /// (network, mask) when both halves parse
    pub net: Option<(u32, u32)>,
    pub key: SegmentKey,
}

impl AddressEntry {
    fn culprit_ip(&self) -> Culprit {
        Culprit::value(&self.node, self.ip_item, &self.ip_raw)
    }
}

fn es_key(graph: &ModelGraph, es: &NodeRecord) -> SegmentKey {
    match graph.neighbor_one(&es.name, NodeKind::Link) {
        Some(link) => SegmentKey::RoutedLink {
            link: link.name.clone(),
        },
        None => SegmentKey::Lone {
            node: es.name.clone(),
        },
    }
}

fn net_of(ip: &str, mask: u32) -> Option<(u32, u32)> {
    addr::parse_ipv4(ip).map(|v| (addr::network(v, mask), mask))
}

/// Gather every address the duplicate and subnet checks look at:
/// EthernetSetting, VlanSetting, Client, and host-precise (wildcard 0.0.0.0)
/// OspfInterfaceSetting entries.
pub(crate) fn collect_addresses(
    graph: &ModelGraph,
    index: &BTreeMap<(String, String), SegmentKey>,
) -> Vec<AddressEntry> {
    let mut out = Vec::new();

    for node in graph.nodes() {
        let config = match graph.config_of(&node.name) {
            Ok(c) => c.name.clone(),
            Err(_) => continue,
        };
        match node.kind {
            NodeKind::EthernetSetting => {
                let (ip, mask) = match (node.get("ipAddress"), node.get("subnetMask")) {
                    (Some(ip), Some(mask)) => (ip, mask),
                    _ => continue,
                };
                out.push(AddressEntry {
                    node: node.name.clone(),
                    config,
                    ip_item: "ipAddress",
                    ip_raw: ip.to_string(),
                    mask_item: "subnetMask",
                    mask_raw: Some(mask.to_string()),
                    net: addr::parse_ipv4(mask).and_then(|m| net_of(ip, m)),
                    key: es_key(graph, node),
                });
            }
            NodeKind::VlanSetting => {
                let (ip, mask) = match (node.get("ipAddress"), node.get("subnetMask")) {
                    (Some(ip), Some(mask)) => (ip, mask),
                    _ => continue,
                };
                let key = node
                    .get("vlanNum")
                    .and_then(|v| index.get(&(v.to_string(), config.clone())).cloned())
                    .unwrap_or(SegmentKey::Lone {
                        node: node.name.clone(),
                    });
                out.push(AddressEntry {
                    node: node.name.clone(),
                    config,
                    ip_item: "ipAddress",
                    ip_raw: ip.to_string(),
                    mask_item: "subnetMask",
                    mask_raw: Some(mask.to_string()),
                    net: addr::parse_ipv4(mask).and_then(|m| net_of(ip, m)),
                    key,
                });
            }
            NodeKind::Client => {
                let ip = match node.get("IpAddress") {
                    Some(ip) => ip,
                    None => continue,
                };
                let parent = graph.neighbor_one(&node.name, NodeKind::EthernetSetting);
                let key = match parent {
                    Some(es) => match es.get("mode") {
                        Some("access") => es
                            .get("accessVlan")
                            .and_then(|v| index.get(&(v.to_string(), config.clone())).cloned())
                            .unwrap_or_else(|| es_key(graph, es)),
                        _ => es_key(graph, es),
                    },
                    None => SegmentKey::Lone {
                        node: node.name.clone(),
                    },
                };
                let mask = node
                    .get("subnetMask")
                    .and_then(|p| p.parse::<u32>().ok())
                    .filter(|p| *p <= 32)
                    .map(|p| if p == 0 { 0 } else { u32::MAX << (32 - p) });
                out.push(AddressEntry {
                    node: node.name.clone(),
                    config,
                    ip_item: "IpAddress",
                    ip_raw: ip.to_string(),
                    mask_item: "subnetMask",
                    mask_raw: node.get("subnetMask").map(str::to_string),
                    net: mask.and_then(|m| net_of(ip, m)),
                    key,
                });
            }
            NodeKind::OspfInterfaceSetting => {
                // network statements pin a host address only with a zero
                // wildcard; wider statements name networks, not addresses
                if node.get("wildcardMask") != Some("0.0.0.0") {
                    continue;
                }
                let ip = match node.get("ipAddress") {
                    Some(ip) => ip,
                    None => continue,
                };
                let bound = graph
                    .neighbors(&config, NodeKind::VlanSetting)
                    .unwrap_or_default()
                    .into_iter()
                    .chain(
                        graph
                            .neighbors(&config, NodeKind::EthernetSetting)
                            .unwrap_or_default(),
                    )
                    .find(|i| i.get("ipAddress") == Some(ip));
                let key = match bound {
                    Some(vs) if vs.kind == NodeKind::VlanSetting => vs
                        .get("vlanNum")
                        .and_then(|v| index.get(&(v.to_string(), config.clone())).cloned())
                        .unwrap_or(SegmentKey::Lone {
                            node: node.name.clone(),
                        }),
                    Some(es) => es_key(graph, es),
                    None => SegmentKey::Lone {
                        node: node.name.clone(),
                    },
                };
                out.push(AddressEntry {
                    node: node.name.clone(),
                    config,
                    ip_item: "ipAddress",
                    ip_raw: ip.to_string(),
                    mask_item: "wildcardMask",
                    mask_raw: None,
                    net: None,
                    key,
                });
            }
            _ => {}
        }
    }
    out
}

/// Items (1) and (2): duplicate addresses on one device, within one segment,
/// and across segments. An address spanning segments blames every owner.
pub fn check_duplicate_ip(graph: &ModelGraph) -> Vec<Violation> {
    let segments = discover_segments(graph);
    let index = segment_index(&segments);
    let entries = collect_addresses(graph, &index);
    let mut out = Vec::new();

    let mut by_ip: BTreeMap<&str, Vec<&AddressEntry>> = BTreeMap::new();
    for e in &entries {
        by_ip.entry(e.ip_raw.as_str()).or_default().push(e);
    }

    for (ip, owners) in by_ip {
        if owners.len() < 2 {
            continue;
        }

        let mut by_config: BTreeMap<&str, Vec<&AddressEntry>> = BTreeMap::new();
        for e in &owners {
            by_config.entry(e.config.as_str()).or_default().push(e);
        }
        for (config, same_device) in &by_config {
            if same_device.len() >= 2 {
                out.push(Violation::error(
                    rule::MULTI_1,
                    format!("IP address {ip} is configured more than once on {config}"),
                    same_device.iter().map(|e| e.culprit_ip()).collect(),
                ));
            }
        }

        let mut by_key: BTreeMap<&SegmentKey, Vec<&AddressEntry>> = BTreeMap::new();
        for e in &owners {
            by_key.entry(&e.key).or_default().push(e);
        }
        for group in by_key.values() {
            let distinct_configs: BTreeSet<&str> =
                group.iter().map(|e| e.config.as_str()).collect();
            if distinct_configs.len() >= 2 {
                out.push(Violation::error(
                    rule::MULTI_2,
                    format!("IP address {ip} is duplicated within the same segment"),
                    group.iter().map(|e| e.culprit_ip()).collect(),
                ));
            }
        }
        if by_key.len() >= 2 {
            out.push(Violation::error(
                rule::MULTI_2,
                format!("IP address {ip} is duplicated across different segments"),
                owners.iter().map(|e| e.culprit_ip()).collect(),
            ));
        }
    }
    sort_violations(&mut out);
    out
}

/// Item (4): on a trunk link, the carried set is allowedVlan restricted to
/// the VLANs each device defines; the two effective sets must agree. VLANs
/// allowed but undefined get a companion report per side.
pub fn check_allowed_vlan(graph: &ModelGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for link in graph.nodes_of_kind(NodeKind::Link) {
        let (e1, e2) = link_endpoints(graph, link);
        if e1.get("mode") != Some("trunk") || e2.get("mode") != Some("trunk") {
            continue;
        }
        let sides: Vec<(&NodeRecord, BTreeSet<String>, BTreeSet<String>)> = [e1, e2]
            .into_iter()
            .map(|es| {
                let allowed = trunk_allowed(es);
                let defined: BTreeSet<String> = graph
                    .config_of(&es.name)
                    .ok()
                    .map(|c| {
                        graph
                            .neighbors(&c.name, NodeKind::Vlan)
                            .unwrap_or_default()
                            .iter()
                            .filter_map(|v| v.get("num"))
                            .map(str::to_string)
                            .collect()
                    })
                    .unwrap_or_default();
                let effective: BTreeSet<String> =
                    allowed.intersection(&defined).cloned().collect();
                (es, allowed, effective)
            })
            .collect();

        for (es, allowed, effective) in &sides {
            let undefined: Vec<&String> = allowed
                .iter()
                .filter(|v| !effective.contains(*v))
                .collect();
            if !undefined.is_empty() {
                let host = graph.hostname_of(&es.name).unwrap_or_default();
                out.push(Violation::error(
                    rule::MULTI_4,
                    format!(
                        "allowedVlan of {} lists VLANs not defined on {}: {}",
                        es.name,
                        host,
                        join(&undefined)
                    ),
                    vec![Culprit::value(
                        &es.name,
                        "allowedVlan",
                        es.get("allowedVlan").unwrap_or_default(),
                    )],
                ));
            }
        }

        let (es1, _, eff1) = &sides[0];
        let (es2, _, eff2) = &sides[1];
        if eff1 != eff2 {
            out.push(Violation::error(
                rule::MULTI_4,
                format!(
                    "Trunk link {} carries different VLAN sets: {} carries {{{}}}, {} carries {{{}}}",
                    link.name,
                    es1.name,
                    join_set(eff1),
                    es2.name,
                    join_set(eff2)
                ),
                vec![
                    Culprit::value(&es1.name, "allowedVlan", es1.get("allowedVlan").unwrap_or_default()),
                    Culprit::value(&es2.name, "allowedVlan", es2.get("allowedVlan").unwrap_or_default()),
                ],
            ));
        }
    }
    sort_violations(&mut out);
    out
}

fn join(values: &[&String]) -> String {
    values
        .iter()
        .map(|s| s.as_str())
        .collect::<Vec<_>>()
        .join(",")
}

fn join_set(values: &BTreeSet<String>) -> String {
    values.iter().map(String::as_str).collect::<Vec<_>>().join(",")
}

/// Items (5)-(8): per-link symmetry of access VLANs, switchport modes,
/// native VLANs, duplex, and speed.
pub fn check_pairwise_link(graph: &ModelGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    for link in graph.nodes_of_kind(NodeKind::Link) {
        let (e1, e2) = link_endpoints(graph, link);

        match (e1.get("mode"), e2.get("mode")) {
            (Some("access"), Some("access")) => {
                if let (Some(v1), Some(v2)) = (e1.get("accessVlan"), e2.get("accessVlan")) {
                    if v1 != v2 {
                        out.push(Violation::error(
                            rule::MULTI_5,
                            format!(
                                "Access VLANs differ on link {}: {} is in VLAN {}, {} is in VLAN {}",
                                link.name, e1.name, v1, e2.name, v2
                            ),
                            vec![
                                Culprit::value(&e1.name, "accessVlan", v1),
                                Culprit::value(&e2.name, "accessVlan", v2),
                            ],
                        ));
                    }
                }
            }
            (Some("access"), Some("trunk")) | (Some("trunk"), Some("access")) => {
                out.push(Violation::error(
                    rule::MULTI_5,
                    format!(
                        "Switchport modes differ on link {}: {} is {}, {} is {}",
                        link.name,
                        e1.name,
                        e1.get("mode").unwrap_or_default(),
                        e2.name,
                        e2.get("mode").unwrap_or_default()
                    ),
                    vec![
                        Culprit::value(&e1.name, "mode", e1.get("mode").unwrap_or_default()),
                        Culprit::value(&e2.name, "mode", e2.get("mode").unwrap_or_default()),
                    ],
                ));
            }
            _ => {}
        }

        if e1.get("mode") == Some("trunk") && e2.get("mode") == Some("trunk") {
            let n1 = e1.get("nativeVlan").unwrap_or("1");
            let n2 = e2.get("nativeVlan").unwrap_or("1");
            if n1 != n2 {
                let culprit = |es: &NodeRecord| match es.get("nativeVlan") {
                    Some(v) => Culprit::value(&es.name, "nativeVlan", v),
                    None => Culprit::item(&es.name, "nativeVlan"),
                };
                out.push(Violation::error(
                    rule::MULTI_6,
                    format!(
                        "Native VLANs differ on link {}: {} uses {}, {} uses {}",
                        link.name, e1.name, n1, e2.name, n2
                    ),
                    vec![culprit(e1), culprit(e2)],
                ));
            }
        }

        for (item, rule_id, label) in [
            ("duplex", rule::MULTI_7, "Duplex settings"),
            ("speed", rule::MULTI_8, "Speed settings"),
        ] {
            if let (Some(v1), Some(v2)) = (e1.get(item), e2.get(item)) {
                if v1 != v2 {
                    out.push(Violation::error(
                        rule_id,
                        format!(
                            "{label} differ on link {}: {} is {}, {} is {}",
                            link.name, e1.name, v1, e2.name, v2
                        ),
                        vec![
                            Culprit::value(&e1.name, item, v1),
                            Culprit::value(&e2.name, item, v2),
                        ],
                    ));
                }
            }
        }
    }
    sort_violations(&mut out);
    out
}

/// Items (3) and (9)-(12): duplicate VLAN definitions, per-VLAN loops,
/// subnet overlap across segments, inconsistent networks within a segment,
/// and enabled-but-uncabled ports.
pub fn check_l3_structure(graph: &ModelGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    let segments = discover_segments(graph);
    let index = segment_index(&segments);
    let entries = collect_addresses(graph, &index);

    // (3) duplicate Vlan definitions on one device
    for config in graph.nodes_of_kind(NodeKind::Config) {
        let mut by_num: BTreeMap<&str, Vec<&NodeRecord>> = BTreeMap::new();
        for vlan in graph.neighbors(&config.name, NodeKind::Vlan).unwrap_or_default() {
            if let Some(num) = vlan.get("num") {
                by_num.entry(num).or_default().push(vlan);
            }
        }
        for (num, vlans) in by_num {
            if vlans.len() >= 2 {
                out.push(Violation::error(
                    rule::MULTI_3,
                    format!("VLAN {num} is defined more than once on {}", config.name),
                    vlans
                        .iter()
                        .map(|v| Culprit::value(&v.name, "num", num))
                        .collect(),
                ));
            }
        }
    }

    // (9) cycles in the per-VLAN adjacency: a component with as many
    // carrying links as members contains a loop
    let mut vlans_seen: BTreeSet<String> = BTreeSet::new();
    for seg in &segments {
        vlans_seen.insert(seg.vlan.clone());
    }
    for vlan in &vlans_seen {
        let mut crossing: Vec<(&NodeRecord, &NodeRecord, String, String)> = Vec::new();
        for link in graph.nodes_of_kind(NodeKind::Link) {
            let (e1, e2) = link_endpoints(graph, link);
            if carries(e1, vlan) && carries(e2, vlan) {
                if let (Ok(c1), Ok(c2)) = (graph.config_of(&e1.name), graph.config_of(&e2.name)) {
                    crossing.push((e1, e2, c1.name.clone(), c2.name.clone()));
                }
            }
        }
        for seg in segments.iter().filter(|s| &s.vlan == vlan) {
            let in_seg: Vec<_> = crossing
                .iter()
                .filter(|(_, _, c1, _)| seg.configs.contains(c1))
                .collect();
            if in_seg.len() >= seg.configs.len() && !in_seg.is_empty() {
                let mut culprits = Vec::new();
                for (e1, e2, _, _) in &in_seg {
                    culprits.push(Culprit::node(&e1.name));
                    culprits.push(Culprit::node(&e2.name));
                }
                out.push(Violation::warning(
                    rule::MULTI_9,
                    format!(
                        "VLAN {vlan} forms a loop through {}; a broadcast storm may increase network load",
                        join_set(&seg.configs)
                    ),
                    culprits,
                ));
            }
        }
    }

    // group addresses by segment for (10) and (11)
    let mut by_key: BTreeMap<&SegmentKey, Vec<&AddressEntry>> = BTreeMap::new();
    for e in &entries {
        if e.net.is_some() {
            by_key.entry(&e.key).or_default().push(e);
        }
    }

    // (11) members of one segment must agree on the network
    let mut inconsistent: BTreeSet<&SegmentKey> = BTreeSet::new();
    for (key, group) in &by_key {
        let nets: BTreeSet<(u32, u32)> = group.iter().filter_map(|e| e.net).collect();
        if nets.len() >= 2 {
            inconsistent.insert(key);
            let mut culprits = Vec::new();
            for e in group {
                culprits.push(e.culprit_ip());
                if let Some(mask) = &e.mask_raw {
                    culprits.push(Culprit::value(&e.node, e.mask_item, mask));
                }
            }
            out.push(Violation::error(
                rule::MULTI_11,
                format!(
                    "Interfaces in the same segment are configured with different networks: {}",
                    nets.iter()
                        .map(|(net, mask)| addr::format_net(*net, *mask))
                        .collect::<Vec<_>>()
                        .join(" and ")
                ),
                culprits,
            ));
        }
    }

    // (10) distinct segments must not overlap; segments already flagged by
    // (11) are excluded so one wrong mask does not cascade network-wide
    let consistent: Vec<(&SegmentKey, (u32, u32), &Vec<&AddressEntry>)> = by_key
        .iter()
        .filter(|(key, _)| !inconsistent.contains(*key))
        .map(|(key, group)| (*key, group[0].net.unwrap(), group))
        .collect();
    for i in 0..consistent.len() {
        for j in i + 1..consistent.len() {
            let (_, (net_a, mask_a), group_a) = consistent[i];
            let (_, (net_b, mask_b), group_b) = consistent[j];
            if addr::prefix_overlap(net_a, mask_a, net_b, mask_b) {
                let mut culprits: Vec<Culprit> =
                    group_a.iter().map(|e| e.culprit_ip()).collect();
                culprits.extend(group_b.iter().map(|e| e.culprit_ip()));
                out.push(Violation::error(
                    rule::MULTI_10,
                    format!(
                        "Subnet {} overlaps subnet {} across different segments",
                        addr::format_net(net_a, mask_a),
                        addr::format_net(net_b, mask_b)
                    ),
                    culprits,
                ));
            }
        }
    }

    // (12) an uncabled port that is not shut down
    for es in graph.nodes_of_kind(NodeKind::EthernetSetting) {
        let cabled = graph.neighbor_one(&es.name, NodeKind::Link).is_some()
            || graph.neighbor_one(&es.name, NodeKind::Client).is_some();
        if !cabled && es.get("shutdown") != Some("true") {
            let culprit = match es.get("shutdown") {
                Some(v) => Culprit::value(&es.name, "shutdown", v),
                None => Culprit::item(&es.name, "shutdown"),
            };
            out.push(Violation::warning(
                rule::MULTI_12,
                format!(
                    "Interface {} is enabled but nothing is connected to it",
                    es.name
                ),
                vec![culprit],
            ));
        }
    }

    sort_violations(&mut out);
    out
}

/// The whole multi-node layer.
pub fn check_topology(graph: &ModelGraph) -> Vec<Violation> {
    let mut out = Vec::new();
    out.extend(check_duplicate_ip(graph));
    out.extend(check_allowed_vlan(graph));
    out.extend(check_pairwise_link(graph));
    out.extend(check_l3_structure(graph));
    sort_violations(&mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::ModelGraph;

    /// Two switches joined by one access link in VLAN 30, with SVIs.
    fn two_switch(v1: &str, v2: &str, ip1: &str, ip2: &str, mask2: &str) -> ModelGraph {
        let mut nodes = Vec::new();
        let mut edges: Vec<(String, String)> = Vec::new();
        for (host, vlan, ip, mask) in [
            ("r1", v1, ip1, "255.255.255.0"),
            ("r2", v2, ip2, mask2),
        ] {
            nodes.push(NodeRecord::new(NodeKind::Config, host));
            nodes.push(NodeRecord::new(NodeKind::HostName, format!("{host}_HN")).with("name", host));
            nodes.push(
                NodeRecord::new(NodeKind::Vlan, format!("{host}_V{vlan}"))
                    .with("num", vlan)
                    .with("name", format!("v{vlan}")),
            );
            nodes.push(
                NodeRecord::new(NodeKind::VlanSetting, format!("{host}_VS{vlan}"))
                    .with("vlanNum", vlan)
                    .with("ipAddress", ip)
                    .with("subnetMask", mask),
            );
            nodes.push(
                NodeRecord::new(NodeKind::EthernetSetting, format!("{host}_ES2"))
                    .with("port", "2")
                    .with("mode", "access")
                    .with("accessVlan", vlan),
            );
            for suffix in ["HN", &format!("V{vlan}"), &format!("VS{vlan}"), "ES2"] {
                edges.push((host.to_string(), format!("{host}_{suffix}")));
            }
        }
        nodes.push(NodeRecord::new(NodeKind::Link, "link1"));
        edges.push(("link1".into(), "r1_ES2".into()));
        edges.push(("link1".into(), "r2_ES2".into()));
        ModelGraph::from_parts(nodes, edges).unwrap()
    }

    #[test]
    fn same_vlan_link_merges_the_segment() {
        let g = two_switch("30", "30", "10.0.3.1", "10.0.3.2", "255.255.255.0");
        let segs = discover_segments(&g);
        let seg30: Vec<_> = segs.iter().filter(|s| s.vlan == "30").collect();
        assert_eq!(seg30.len(), 1);
        assert_eq!(seg30[0].configs.len(), 2);
        assert!(check_topology(&g).is_empty());
    }

    #[test]
    fn differing_access_vlans_split_the_segment_and_fire_item_5() {
        let g = two_switch("30", "40", "10.0.3.1", "10.0.3.2", "255.255.255.0");
        let segs = discover_segments(&g);
        assert!(segs.iter().all(|s| s.configs.len() == 1));
        let vs = check_pairwise_link(&g);
        assert!(vs.iter().any(|v| v.rule == rule::MULTI_5));
    }

    #[test]
    fn duplicate_ip_in_one_segment() {
        let g = two_switch("30", "30", "10.0.3.1", "10.0.3.1", "255.255.255.0");
        let vs = check_duplicate_ip(&g);
        assert_eq!(vs.len(), 1);
        assert!(vs[0].message.contains("within the same segment"));
        assert_eq!(vs[0].culprits.len(), 2);
    }

    #[test]
    fn duplicate_ip_across_segments() {
        let g = two_switch("30", "40", "10.0.3.1", "10.0.3.1", "255.255.255.0");
        let vs = check_duplicate_ip(&g);
        assert_eq!(vs.len(), 1);
        assert!(vs[0].message.contains("across different segments"));
    }

    #[test]
    fn mask_mismatch_within_a_segment_is_item_11() {
        let g = two_switch("30", "30", "10.0.3.1", "10.0.3.2", "255.255.0.0");
        let vs = check_l3_structure(&g);
        assert!(vs.iter().any(|v| v.rule == rule::MULTI_11));
        // the inconsistent segment is excluded from overlap comparison
        assert!(vs.iter().all(|v| v.rule != rule::MULTI_10));
    }

    #[test]
    fn uncabled_enabled_port_is_item_12() {
        let mut g = two_switch("30", "30", "10.0.3.1", "10.0.3.2", "255.255.255.0");
        let (mut nodes, mut edges) = g.to_parts();
        nodes.push(
            NodeRecord::new(NodeKind::EthernetSetting, "r1_ES4")
                .with("port", "4")
                .with("shutdown", "false"),
        );
        edges.push(("r1".into(), "r1_ES4".into()));
        g = ModelGraph::from_parts(nodes, edges).unwrap();
        let vs = check_l3_structure(&g);
        let hits: Vec<_> = vs.iter().filter(|v| v.rule == rule::MULTI_12).collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].culprits[0].node, "r1_ES4");
    }

    #[test]
    fn parallel_links_in_one_vlan_form_a_loop() {
        let g = two_switch("30", "30", "10.0.3.1", "10.0.3.2", "255.255.255.0");
        let (mut nodes, mut edges) = g.to_parts();
        for host in ["r1", "r2"] {
            nodes.push(
                NodeRecord::new(NodeKind::EthernetSetting, format!("{host}_ES3"))
                    .with("port", "3")
                    .with("mode", "access")
                    .with("accessVlan", "30"),
            );
            edges.push((host.to_string(), format!("{host}_ES3")));
        }
        nodes.push(NodeRecord::new(NodeKind::Link, "link2"));
        edges.push(("link2".into(), "r1_ES3".into()));
        edges.push(("link2".into(), "r2_ES3".into()));
        let g = ModelGraph::from_parts(nodes, edges).unwrap();
        let vs = check_l3_structure(&g);
        assert!(vs
            .iter()
            .any(|v| v.rule == rule::MULTI_9 && v.severity == crate::violation::Severity::Warning));
    }
}
