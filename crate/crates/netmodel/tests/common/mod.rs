//! Shared random-model generators and independent oracles used by both the
//! property suite and the acceptance suite.
//!
//! The oracles deliberately work from the generation parameters (`L2Spec`,
//! `OspfSpec`), not from the built graph, so they cannot inherit a bug from
//! the code under test.

// each test binary compiles this module separately and uses a different subset
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use proptest::prelude::*;

use netmodel::metamodel::NodeKind;
use netmodel::model::{ModelGraph, NodeRecord};
use netmodel::violation::Violation;

pub struct Builder {
    nodes: Vec<NodeRecord>,
    edges: Vec<(String, String)>,
}

impl Builder {
    pub fn new() -> Self {
        Builder {
            nodes: Vec::new(),
            edges: Vec::new(),
        }
    }

    pub fn node(&mut self, kind: NodeKind, name: &str, fields: &[(&str, &str)]) {
        self.nodes.push(NodeRecord {
            kind,
            name: name.to_string(),
            fields: fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect(),
        });
    }

    pub fn edge(&mut self, a: &str, b: &str) {
        self.edges.push((a.to_string(), b.to_string()));
    }

    pub fn build(self) -> ModelGraph {
        ModelGraph::from_parts(self.nodes, self.edges).expect("generated model is legal")
    }
}

/// Canonical form for violation-set comparison: rule, message, sorted
/// culprit node names.
pub fn violation_set(violations: &[Violation]) -> BTreeSet<(String, String, Vec<String>)> {
    violations
        .iter()
        .map(|v| {
            let mut nodes: Vec<String> = v.culprits.iter().map(|c| c.node.clone()).collect();
            nodes.sort();
            (v.rule.clone(), v.message.clone(), nodes)
        })
        .collect()
}

// ---------------------------------------------------------------- L2 models

/// A small access-port network: devices carry SVIs (one per VLAN at most)
/// and links join two devices on one VLAN (access mode both ends).
#[derive(Debug, Clone)]
pub struct L2Spec {
    pub devices: usize,
    /// (device, vlan, ip); unique per (device, vlan), mask always /24
    pub svis: Vec<(usize, u16, String)>,
    /// (a, b, vlan) with a != b
    pub links: Vec<(usize, usize, u16)>,
}

pub fn dev(i: usize) -> String {
    format!("d{}", i + 1)
}

pub fn svi_node(i: usize, vlan: u16) -> String {
    format!("{}_VS{vlan}", dev(i))
}

impl L2Spec {
    /// VLANs a device participates in (ports or SVIs).
    fn device_vlans(&self, i: usize) -> BTreeSet<u16> {
        let mut vlans = BTreeSet::new();
        for (d, v, _) in &self.svis {
            if *d == i {
                vlans.insert(*v);
            }
        }
        for (a, b, v) in &self.links {
            if *a == i || *b == i {
                vlans.insert(*v);
            }
        }
        vlans
    }

    pub fn build(&self) -> ModelGraph {
        let mut b = Builder::new();
        let mut port = vec![1u32; self.devices];
        for i in 0..self.devices {
            let d = dev(i);
            b.node(NodeKind::Config, &d, &[]);
            b.node(NodeKind::HostName, &format!("{d}_HN"), &[("name", &d)]);
            b.edge(&d, &format!("{d}_HN"));
            for vlan in self.device_vlans(i) {
                let name = format!("{d}_V{vlan}");
                b.node(NodeKind::Vlan, &name, &[("num", &vlan.to_string())]);
                b.edge(&d, &name);
            }
        }
        for (d, vlan, ip) in &self.svis {
            let name = svi_node(*d, *vlan);
            b.node(
                NodeKind::VlanSetting,
                &name,
                &[
                    ("vlanNum", &vlan.to_string()),
                    ("ipAddress", ip),
                    ("subnetMask", "255.255.255.0"),
                ],
            );
            b.edge(&dev(*d), &name);
        }
        for (k, (x, y, vlan)) in self.links.iter().enumerate() {
            let mut ends = Vec::new();
            for i in [*x, *y] {
                let number = port[i];
                port[i] += 1;
                let es = format!("{}_ES{number}", dev(i));
                b.node(
                    NodeKind::EthernetSetting,
                    &es,
                    &[
                        ("stack", "1"),
                        ("slot", "0"),
                        ("port", &number.to_string()),
                        ("mode", "access"),
                        ("accessVlan", &vlan.to_string()),
                    ],
                );
                b.edge(&dev(i), &es);
                ends.push(es);
            }
            let link = format!("link{}", k + 1);
            b.node(NodeKind::Link, &link, &[]);
            b.edge(&link, &ends[0]);
            b.edge(&link, &ends[1]);
        }
        b.build()
    }
}

/// Union-find flood fill over the spec: component id per (vlan, device).
fn l2_components(spec: &L2Spec) -> BTreeMap<(u16, usize), usize> {
    let mut parent: Vec<usize> = (0..spec.devices).collect();
    fn root(parent: &mut Vec<usize>, mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut out = BTreeMap::new();
    let vlans: BTreeSet<u16> = (0..spec.devices)
        .flat_map(|i| spec.device_vlans(i))
        .collect();
    for vlan in vlans {
        for i in 0..spec.devices {
            parent[i] = i;
        }
        for (a, b, v) in &spec.links {
            if *v == vlan {
                let (ra, rb) = (root(&mut parent, *a), root(&mut parent, *b));
                parent[ra] = rb;
            }
        }
        for i in 0..spec.devices {
            if spec.device_vlans(i).contains(&vlan) {
                let r = root(&mut parent, i);
                out.insert((vlan, i), r);
            }
        }
    }
    out
}

/// Independent duplicate-IP oracle: flood fill per VLAN, then pairwise
/// grouping per address. Classifies duplicates the same three ways the
/// checker must: same-device, within one segment (two devices or more),
/// and across segments.
pub fn dup_ip_oracle(spec: &L2Spec) -> BTreeSet<(String, String, Vec<String>)> {
    let comp = l2_components(spec);
    let mut expected = BTreeSet::new();

    let mut by_ip: BTreeMap<&str, Vec<&(usize, u16, String)>> = BTreeMap::new();
    for entry in &spec.svis {
        by_ip.entry(entry.2.as_str()).or_default().push(entry);
    }
    for (ip, owners) in by_ip {
        if owners.len() < 2 {
            continue;
        }

        let mut by_device: BTreeMap<usize, Vec<&(usize, u16, String)>> = BTreeMap::new();
        for e in &owners {
            by_device.entry(e.0).or_default().push(e);
        }
        for (device, on_device) in &by_device {
            if on_device.len() >= 2 {
                let mut nodes: Vec<String> =
                    on_device.iter().map(|e| svi_node(e.0, e.1)).collect();
                nodes.sort();
                expected.insert((
                    "MULTI.1".to_string(),
                    format!("IP address {ip} is configured more than once on {}", dev(*device)),
                    nodes,
                ));
            }
        }

        let mut by_segment: BTreeMap<(u16, usize), Vec<&(usize, u16, String)>> = BTreeMap::new();
        for e in &owners {
            by_segment
                .entry((e.1, comp[&(e.1, e.0)]))
                .or_default()
                .push(e);
        }
        for group in by_segment.values() {
            let devices: BTreeSet<usize> = group.iter().map(|e| e.0).collect();
            if devices.len() >= 2 {
                let mut nodes: Vec<String> = group.iter().map(|e| svi_node(e.0, e.1)).collect();
                nodes.sort();
                expected.insert((
                    "MULTI.2".to_string(),
                    format!("IP address {ip} is duplicated within the same segment"),
                    nodes,
                ));
            }
        }
        if by_segment.len() >= 2 {
            let mut nodes: Vec<String> = owners.iter().map(|e| svi_node(e.0, e.1)).collect();
            nodes.sort();
            expected.insert((
                "MULTI.2".to_string(),
                format!("IP address {ip} is duplicated across different segments"),
                nodes,
            ));
        }
    }
    expected
}

pub fn l2_spec_strategy() -> impl Strategy<Value = L2Spec> {
    (1usize..=6).prop_flat_map(|devices| {
        let vlan = prop::sample::select(vec![10u16, 20, 30]);
        let ip = (1u8..=2, 1u8..=4).prop_map(|(a, b)| format!("10.0.{a}.{b}"));
        let svis = prop::collection::vec((0..devices, vlan.clone(), ip), 0..=8);
        let links = prop::collection::vec((0..devices, 0..devices, vlan), 0..=7);
        (Just(devices), svis, links).prop_map(|(devices, raw_svis, raw_links)| {
            let mut seen = BTreeSet::new();
            let mut svis = Vec::new();
            for (d, v, ip) in raw_svis {
                if seen.insert((d, v)) {
                    svis.push((d, v, ip));
                }
            }
            let links = raw_links
                .into_iter()
                .filter(|(a, b, _)| a != b)
                .collect();
            L2Spec {
                devices,
                svis,
                links,
            }
        })
    })
}

// -------------------------------------------------------------- OSPF models

/// Per device: the set of areas it has network statements in, and the set
/// of virtual-link transit areas it configures.
#[derive(Debug, Clone)]
pub struct OspfSpec {
    pub devices: Vec<(BTreeSet<u8>, BTreeSet<u8>)>,
}

impl OspfSpec {
    pub fn build(&self) -> ModelGraph {
        let mut b = Builder::new();
        for (i, (areas, transits)) in self.devices.iter().enumerate() {
            let d = dev(i);
            b.node(NodeKind::Config, &d, &[]);
            b.node(NodeKind::HostName, &format!("{d}_HN"), &[("name", &d)]);
            b.edge(&d, &format!("{d}_HN"));
            if areas.is_empty() && transits.is_empty() {
                continue;
            }
            let process = format!("{d}_OSPF");
            b.node(
                NodeKind::OspfSetting,
                &process,
                &[("processId", "1"), ("routerId", &format!("10.0.0.{}", i + 1))],
            );
            b.edge(&d, &process);
            for area in areas {
                let stmt = format!("{d}_OS{area}");
                b.node(
                    NodeKind::OspfInterfaceSetting,
                    &stmt,
                    &[
                        ("ipAddress", &format!("10.{area}.0.0")),
                        ("wildcardMask", "0.0.255.255"),
                        ("areaId", &area.to_string()),
                    ],
                );
                b.edge(&process, &stmt);
            }
            for transit in transits {
                let vl = format!("{d}_VL{transit}");
                b.node(
                    NodeKind::OspfVirtualLink,
                    &vl,
                    &[
                        ("areaId", &transit.to_string()),
                        ("routerId", "10.0.0.99"),
                    ],
                );
                b.edge(&process, &vl);
            }
        }
        b.build()
    }
}

/// Independent Area-0 reachability oracle: build the area graph the checker
/// is supposed to induce (a star on the backbone: co-residence with area 0
/// on one router, or any virtual link through the area) and BFS from "0".
pub fn backbone_oracle(spec: &OspfSpec) -> BTreeSet<(String, String)> {
    let all_areas: BTreeSet<u8> = spec.devices.iter().flat_map(|(a, _)| a.clone()).collect();
    let mut expected = BTreeSet::new();
    if all_areas.is_empty() {
        return expected;
    }
    if !all_areas.contains(&0) {
        expected.insert((
            "OSPF.12".to_string(),
            "No backbone area (Area 0) is defined; every area must connect to Area 0".to_string(),
        ));
        return expected;
    }

    let mut adjacency: BTreeMap<u8, BTreeSet<u8>> = BTreeMap::new();
    for (areas, transits) in &spec.devices {
        if areas.contains(&0) {
            for k in areas {
                adjacency.entry(0).or_default().insert(*k);
                adjacency.entry(*k).or_default().insert(0);
            }
        }
        for t in transits {
            adjacency.entry(0).or_default().insert(*t);
            adjacency.entry(*t).or_default().insert(0);
        }
    }
    let mut reachable = BTreeSet::new();
    let mut queue = VecDeque::from([0u8]);
    while let Some(area) = queue.pop_front() {
        if !reachable.insert(area) {
            continue;
        }
        if let Some(next) = adjacency.get(&area) {
            queue.extend(next.iter().copied());
        }
    }
    for area in &all_areas {
        if *area != 0 && !reachable.contains(area) {
            expected.insert((
                "OSPF.8".to_string(),
                format!("Area {area} is not connected to Area 0"),
            ));
        }
    }
    expected
}

pub fn ospf_spec_strategy() -> impl Strategy<Value = OspfSpec> {
    let device = (
        prop::collection::btree_set(0u8..=3, 0..=3),
        prop::collection::btree_set(1u8..=3, 0..=1),
    );
    prop::collection::vec(device, 1..=6).prop_map(|devices| OspfSpec { devices })
}

// --------------------------------------------------- hardware transcript

/// Compare a rendered OSPF-interface block against a transcript captured
/// from real hardware. The renderer deliberately omits timing and
/// state-machine detail, and hardware may elect roles in the opposite
/// order, so the comparison is structural:
///
/// - temporal fragments are deleted from the hardware lines
/// - the State token may name either role
/// - the DR and BDR lines are compared as an unordered set of
///   (router id, interface address) payloads
/// - everything else must match after comma and whitespace removal
pub fn assert_confined_to_hardware(rendered: &str, hardware: &str) {
    let temporal = [
        " is up, line protocol is up",
        ", Cost: 1",
        "Transmit Delay is 1 sec, ",
        ", Wait 40, Retransmit 5 Retransmit 5",
    ];
    let normalize = |line: &str| -> String {
        let mut s = line.to_string();
        for t in temporal {
            s = s.replace(t, "");
        }
        s.replace(',', "").replace(' ', "")
    };
    let mask_role = |s: &str| -> String {
        // BDR first so "StateBDR" does not partially match as "StateDR"
        s.replace("StateBDR", "State#").replace("StateDR", "State#")
    };
    let role_payload = |s: &str| -> Option<String> {
        for prefix in ["BackupDesignatedrouter", "DesignatedRouter"] {
            if let Some(rest) = s.strip_prefix(prefix) {
                return Some(rest.to_string());
            }
        }
        None
    };

    let model: Vec<String> = rendered.lines().map(normalize).collect();
    let device: Vec<String> = hardware.lines().map(normalize).collect();
    assert_eq!(model.len(), device.len(), "line counts differ");

    let mut model_roles = BTreeSet::new();
    let mut device_roles = BTreeSet::new();
    for (m, h) in model.iter().zip(&device) {
        match (role_payload(m), role_payload(h)) {
            (Some(mp), Some(hp)) => {
                model_roles.insert(mp);
                device_roles.insert(hp);
            }
            (None, None) => assert_eq!(mask_role(m), mask_role(h)),
            _ => panic!("role lines out of step: {m} vs {h}"),
        }
    }
    assert_eq!(model_roles, device_roles);
    assert_eq!(model_roles.len(), 2);
}

// ------------------------------------------------------- discrepancy checks

/// Duplicate-IP discrepancies between checker and oracle for one spec.
pub fn dup_ip_discrepancy(spec: &L2Spec) -> Option<String> {
    let graph = spec.build();
    let actual = violation_set(&netmodel::topology::check_duplicate_ip(&graph));
    let expected = dup_ip_oracle(spec);
    if actual != expected {
        return Some(format!(
            "spec {spec:?}\n  checker: {actual:?}\n  oracle:  {expected:?}"
        ));
    }
    None
}

/// Backbone-connectivity discrepancies between checker and oracle.
pub fn backbone_discrepancy(spec: &OspfSpec) -> Option<String> {
    let graph = spec.build();
    let actual: BTreeSet<(String, String)> =
        netmodel::ospf::check_ospf(&graph, &BTreeSet::new())
            .into_iter()
            .filter(|v| v.rule == "OSPF.8" || v.rule == "OSPF.12")
            .map(|v| (v.rule, v.message))
            .collect();
    let expected = backbone_oracle(spec);
    if actual != expected {
        return Some(format!(
            "spec {spec:?}\n  checker: {actual:?}\n  oracle:  {expected:?}"
        ));
    }
    None
}
