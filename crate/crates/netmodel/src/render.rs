//! Emulated device status output. Nine `show` commands are rendered
//! straight from the model, including a deterministic OSPF DR/BDR election
//! per L2 segment. Output is plain line-oriented text, byte-stable so it
//! can be pinned by golden files.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::addr;
use crate::metamodel::NodeKind;
use crate::model::{abbreviate_interface, ModelGraph, NodeRecord};
use crate::ospf::{
    build_view, interfaces_of, l3_endpoint_pairs, OspfView, DEFAULT_DEAD, DEFAULT_HELLO,
    DEFAULT_PRIORITY,
};
use crate::topology::{discover_segments, svi_of, L2Segment, SegmentKey};

const OSPF_INTERFACE_TEMPLATE: &str = include_str!("../templates/ospf_interface.txt");
const DEFAULT_NETWORK_TYPE: &str = "BROADCAST";

#[derive(Debug, Error)]
pub enum RenderError {
    #[error("unknown show command: show {0}")]
    UnknownCommand(String),
    #[error("no device named {0} in the model")]
    UnknownConfig(String),
    #[error("no interface named {name} on {config}")]
    UnknownInterface { config: String, name: String },
    #[error("OSPF is not enabled on interface {0}")]
    OspfNotEnabled(String),
}

/// Entry point for everything after the word `show`.
pub fn render_show(graph: &ModelGraph, args: &[&str]) -> Result<String, RenderError> {
    match args {
        ["vlan", "brief", "all"] => Ok(vlan_brief_all(graph)),
        ["vlan", "brief", config] => {
            let config = require_config(graph, config)?;
            Ok(vlan_brief(graph, config))
        }
        ["vlan", id] => Ok(vlan_detail(graph, id)),
        ["running", "config", config] => {
            let config = require_config(graph, config)?;
            Ok(running_config(graph, config))
        }
        ["spanning-tree", config] => {
            let config = require_config(graph, config)?;
            Ok(spanning_tree(graph, config))
        }
        ["ip", "protocols", config] => {
            let config = require_config(graph, config)?;
            Ok(ip_protocols(graph, config))
        }
        ["ip", "ospf", "neighbor", config] => {
            let config = require_config(graph, config)?;
            Ok(ospf_neighbor(graph, config))
        }
        ["ip", "ospf", "interface", config, iface] => {
            let config = require_config(graph, config)?;
            ospf_interface(graph, config, iface)
        }
        _ => Err(RenderError::UnknownCommand(args.join(" "))),
    }
}

fn require_config<'g>(graph: &'g ModelGraph, name: &str) -> Result<&'g NodeRecord, RenderError> {
    graph
        .node(name)
        .filter(|n| n.kind == NodeKind::Config)
        .ok_or_else(|| RenderError::UnknownConfig(name.to_string()))
}

fn hostname(graph: &ModelGraph, config: &NodeRecord) -> String {
    graph
        .hostname_of(&config.name)
        .unwrap_or_else(|| config.name.clone())
}

fn numeric(s: &str) -> u32 {
    s.parse().unwrap_or(u32::MAX)
}

fn display_name(graph: &ModelGraph, iface: &NodeRecord) -> String {
    match iface.kind {
        NodeKind::VlanSetting => match iface.get("vlanNum") {
            Some(v) => format!("Vlan{v}"),
            None => iface.name.clone(),
        },
        NodeKind::EthernetSetting => graph.interface_display_name(iface),
        _ => iface.name.clone(),
    }
}

// ---- DR/BDR election ----------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Dr,
    Bdr,
    DrOther,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Dr => "DR",
            Role::Bdr => "BDR",
            Role::DrOther => "DROTHER",
        }
    }
}

/// One OSPF speaker in a segment: an addressed, OSPF-activated interface.
#[derive(Debug, Clone)]
pub struct Speaker {
    pub interface: String,
    pub display: String,
    pub config: String,
    pub ip: String,
    pub router_id: Option<String>,
    pub priority: u32,
}

#[derive(Debug)]
pub struct Election {
    pub speakers: Vec<Speaker>,
    dr: Option<usize>,
    bdr: Option<usize>,
}

impl Election {
    pub fn dr(&self) -> Option<&Speaker> {
        self.dr.map(|i| &self.speakers[i])
    }
    pub fn bdr(&self) -> Option<&Speaker> {
        self.bdr.map(|i| &self.speakers[i])
    }
    pub fn role_of(&self, interface: &str) -> Role {
        if self.dr().map(|s| s.interface.as_str()) == Some(interface) {
            Role::Dr
        } else if self.bdr().map(|s| s.interface.as_str()) == Some(interface) {
            Role::Bdr
        } else {
            Role::DrOther
        }
    }
}

/// Highest priority wins, higher router id breaks ties, priority 0 never
/// takes a role. Pure in the (priority, routerId) multiset: enumeration
/// order cannot change the outcome.
pub fn elect(speakers: Vec<Speaker>) -> Election {
    let mut order: Vec<usize> = (0..speakers.len())
        .filter(|&i| {
            speakers[i].priority > 0
                && speakers[i]
                    .router_id
                    .as_deref()
                    .and_then(addr::router_id_value)
                    .is_some()
        })
        .collect();
    order.sort_by(|&a, &b| {
        let rid = |i: usize| {
            addr::router_id_value(speakers[i].router_id.as_deref().unwrap()).unwrap()
        };
        speakers[b]
            .priority
            .cmp(&speakers[a].priority)
            .then(rid(b).cmp(&rid(a)))
            .then(speakers[a].interface.cmp(&speakers[b].interface))
    });
    Election {
        dr: order.first().copied(),
        bdr: order.get(1).copied(),
        speakers,
    }
}

fn router_id_of_config(graph: &ModelGraph, config: &str) -> Option<String> {
    graph
        .neighbors(config, NodeKind::OspfSetting)
        .unwrap_or_default()
        .first()
        .and_then(|os| os.get("routerId"))
        .map(str::to_string)
}

fn speaker_from(graph: &ModelGraph, view: &OspfView, iface: &NodeRecord) -> Option<Speaker> {
    let binding = view.bindings.get(&iface.name)?;
    let config = graph.config_of(&iface.name).ok()?.name.clone();
    Some(Speaker {
        interface: iface.name.clone(),
        display: display_name(graph, iface),
        ip: iface.get("ipAddress")?.to_string(),
        router_id: router_id_of_config(graph, &config),
        priority: binding
            .get("priority")
            .unwrap_or(DEFAULT_PRIORITY)
            .parse()
            .unwrap_or(1),
        config,
    })
}

/// Everyone speaking OSPF in one broadcast domain.
fn speakers_for(
    graph: &ModelGraph,
    view: &OspfView,
    segments: &[L2Segment],
    key: &SegmentKey,
) -> Vec<Speaker> {
    let mut out = Vec::new();
    match key {
        SegmentKey::Vlan { vlan, .. } => {
            if let Some(seg) = segments.iter().find(|s| s.key() == *key) {
                for config in &seg.configs {
                    if let Some(vs) = svi_of(graph, config, vlan) {
                        out.extend(speaker_from(graph, view, vs));
                    }
                }
            }
        }
        SegmentKey::RoutedLink { link } => {
            if let Ok(ends) = graph.neighbors(link, NodeKind::EthernetSetting) {
                for es in ends {
                    out.extend(speaker_from(graph, view, es));
                }
            }
        }
        SegmentKey::Lone { node } => {
            if let Some(iface) = graph.node(node) {
                out.extend(speaker_from(graph, view, iface));
            }
        }
    }
    out
}

fn segment_key_of(
    graph: &ModelGraph,
    segments: &[L2Segment],
    iface: &NodeRecord,
) -> Option<SegmentKey> {
    match iface.kind {
        NodeKind::VlanSetting => {
            let vlan = iface.get("vlanNum")?;
            let config = graph.config_of(&iface.name).ok()?.name.clone();
            segments
                .iter()
                .find(|s| s.vlan == vlan && s.configs.contains(&config))
                .map(L2Segment::key)
        }
        NodeKind::EthernetSetting => Some(match graph.neighbor_one(&iface.name, NodeKind::Link) {
            Some(link) => SegmentKey::RoutedLink {
                link: link.name.clone(),
            },
            None => SegmentKey::Lone {
                node: iface.name.clone(),
            },
        }),
        _ => None,
    }
}

// ---- show vlan ----------------------------------------------------------

fn vlan_table(graph: &ModelGraph, config: &NodeRecord) -> String {
    let mut rows: Vec<(&str, &str)> = graph
        .neighbors(&config.name, NodeKind::Vlan)
        .unwrap_or_default()
        .into_iter()
        .filter_map(|v| v.get("num").map(|num| (num, v.get("name").unwrap_or(""))))
        .collect();
    rows.sort_by_key(|(num, _)| (numeric(num), num.to_string()));

    let mut out = String::from(
        "VLAN Name                             Status    Ports\n\
         ---- -------------------------------- --------- -------------------------------\n",
    );
    for (num, name) in rows {
        let mut ports: Vec<String> = graph
            .neighbors(&config.name, NodeKind::EthernetSetting)
            .unwrap_or_default()
            .into_iter()
            .filter(|es| es.get("mode") == Some("access") && es.get("accessVlan") == Some(num))
            .map(|es| abbreviate_interface(&display_name(graph, es)))
            .collect();
        ports.sort();
        out.push_str(&format!(
            "{:<5}{:<33}{:<10}{}\n",
            num,
            name,
            "active",
            ports.join(", ")
        ));
    }
    out
}

fn vlan_brief(graph: &ModelGraph, config: &NodeRecord) -> String {
    vlan_table(graph, config)
}

fn vlan_brief_all(graph: &ModelGraph) -> String {
    let sections: Vec<String> = graph
        .nodes_of_kind(NodeKind::Config)
        .into_iter()
        .map(|config| format!("{}\n{}", hostname(graph, config), vlan_table(graph, config)))
        .collect();
    sections.join("\n")
}

fn vlan_detail(graph: &ModelGraph, id: &str) -> String {
    let mut name = None;
    let mut lines = Vec::new();
    for config in graph.nodes_of_kind(NodeKind::Config) {
        let mut ifaces = Vec::new();
        for es in graph
            .neighbors(&config.name, NodeKind::EthernetSetting)
            .unwrap_or_default()
        {
            if crate::topology::carries(es, id) {
                ifaces.push(display_name(graph, es));
            }
        }
        if svi_of(graph, &config.name, id).is_some() {
            ifaces.push(format!("Vlan{id}"));
        }
        for vlan in graph.neighbors(&config.name, NodeKind::Vlan).unwrap_or_default() {
            if vlan.get("num") == Some(id) && name.is_none() {
                name = vlan.get("name").map(str::to_string);
            }
        }
        if !ifaces.is_empty() {
            ifaces.sort();
            lines.push(format!(
                "  {}: {}",
                hostname(graph, config),
                ifaces.join(", ")
            ));
        }
    }
    if lines.is_empty() {
        return format!("VLAN {id} is not configured on any device\n");
    }
    let header = match name {
        Some(n) => format!("VLAN {id} ({n})"),
        None => format!("VLAN {id}"),
    };
    let mut out = header;
    out.push('\n');
    for line in lines {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

// ---- show running config ------------------------------------------------

fn push_block(out: &mut Vec<String>, block: Vec<String>) {
    if !block.is_empty() {
        out.extend(block);
        out.push("!".to_string());
    }
}

fn access_group_line(node: &NodeRecord) -> Option<String> {
    let list = node.get("accessListNumber").or_else(|| node.get("accessListName"))?;
    let direction = node.get("accessListInOrOut")?;
    Some(format!(" ip access-group {list} {direction}"))
}

fn running_config(graph: &ModelGraph, config: &NodeRecord) -> String {
    let mut out: Vec<String> = Vec::new();
    out.push(format!("hostname {}", hostname(graph, config)));
    out.push("!".to_string());

    for stp in graph
        .neighbors(&config.name, NodeKind::StpSetting)
        .unwrap_or_default()
    {
        let mut block = Vec::new();
        if let Some(mode) = stp.get("Mode") {
            block.push(format!("spanning-tree mode {mode}"));
        }
        if let (Some(vlan), Some(prio)) = (stp.get("Vlan"), stp.get("bridgePriority")) {
            block.push(format!("spanning-tree vlan {vlan} priority {prio}"));
        }
        push_block(&mut out, block);
    }

    let mut vlans = graph
        .neighbors(&config.name, NodeKind::Vlan)
        .unwrap_or_default();
    vlans.sort_by_key(|v| (numeric(v.get("num").unwrap_or("")), v.name.clone()));
    for vlan in vlans {
        let mut block = Vec::new();
        if let Some(num) = vlan.get("num") {
            block.push(format!("vlan {num}"));
            if let Some(name) = vlan.get("name") {
                block.push(format!(" name {name}"));
            }
        }
        push_block(&mut out, block);
    }

    let mut svis = graph
        .neighbors(&config.name, NodeKind::VlanSetting)
        .unwrap_or_default();
    svis.sort_by_key(|v| (numeric(v.get("vlanNum").unwrap_or("")), v.name.clone()));
    for vs in svis {
        let mut block = vec![format!("interface {}", display_name(graph, vs))];
        if let (Some(ip), Some(mask)) = (vs.get("ipAddress"), vs.get("subnetMask")) {
            block.push(format!(" ip address {ip} {mask}"));
        }
        if vs.get("ipNatInside") == Some("true") {
            block.push(" ip nat inside".to_string());
        }
        if let Some(mss) = vs.get("ipTcpAdjustMss") {
            block.push(format!(" ip tcp adjust-mss {mss}"));
        }
        block.extend(access_group_line(vs));
        if vs.get("ipVirtualReassembly") == Some("true") {
            block.push(" ip virtual-reassembly".to_string());
        }
        if vs.get("shutdown") == Some("true") {
            block.push(" shutdown".to_string());
        }
        push_block(&mut out, block);
    }

    let mut ports = graph
        .neighbors(&config.name, NodeKind::EthernetSetting)
        .unwrap_or_default();
    ports.sort_by_key(|es| {
        (
            numeric(es.get("stack").unwrap_or("0")),
            numeric(es.get("slot").unwrap_or("0")),
            numeric(es.get("port").unwrap_or("")),
            es.name.clone(),
        )
    });
    for es in ports {
        let mut block = vec![format!("interface {}", display_name(graph, es))];
        if let Some(mode) = es.get("mode") {
            block.push(format!(" switchport mode {mode}"));
        }
        if let Some(vlan) = es.get("accessVlan") {
            block.push(format!(" switchport access vlan {vlan}"));
        }
        if es.get("switchportTrunkEncapsulation") == Some("true") {
            block.push(" switchport trunk encapsulation dot1q".to_string());
        }
        if let Some(list) = es.get("allowedVlan") {
            block.push(format!(" switchport trunk allowed vlan {list}"));
        }
        if let Some(native) = es.get("nativeVlan") {
            block.push(format!(" switchport trunk native vlan {native}"));
        }
        if let (Some(ip), Some(mask)) = (es.get("ipAddress"), es.get("subnetMask")) {
            block.push(format!(" ip address {ip} {mask}"));
        }
        block.extend(access_group_line(es));
        if es.get("ipVirtualReassembly") == Some("true") {
            block.push(" ip virtual-reassembly".to_string());
        }
        if let Some(speed) = es.get("speed") {
            block.push(format!(" speed {speed}"));
        }
        if let Some(duplex) = es.get("duplex") {
            block.push(format!(" duplex {duplex}"));
        }
        if let Some(mtu) = es.get("mtu") {
            block.push(format!(" mtu {mtu}"));
        }
        if es.get("shutdown") == Some("true") {
            block.push(" shutdown".to_string());
        }
        push_block(&mut out, block);
    }

    for os in graph
        .neighbors(&config.name, NodeKind::OspfSetting)
        .unwrap_or_default()
    {
        let mut block = Vec::new();
        if let Some(pid) = os.get("processId") {
            block.push(format!("router ospf {pid}"));
        } else {
            block.push("router ospf".to_string());
        }
        if let Some(rid) = os.get("routerId") {
            block.push(format!(" router-id {rid}"));
        }
        for stmt in graph
            .neighbors(&os.name, NodeKind::OspfInterfaceSetting)
            .unwrap_or_default()
        {
            if let (Some(ip), Some(wild), Some(area)) = (
                stmt.get("ipAddress"),
                stmt.get("wildcardMask"),
                stmt.get("areaId"),
            ) {
                block.push(format!(" network {ip} {wild} area {area}"));
            }
        }
        for vl in graph
            .neighbors(&os.name, NodeKind::OspfVirtualLink)
            .unwrap_or_default()
        {
            if let (Some(area), Some(rid)) = (vl.get("areaId"), vl.get("routerId")) {
                block.push(format!(" area {area} virtual-link {rid}"));
            }
        }
        push_block(&mut out, block);
    }

    for route in graph
        .neighbors(&config.name, NodeKind::IpRoute)
        .unwrap_or_default()
    {
        if let (Some(net), Some(prefix), Some(next)) = (
            route.get("Network"),
            route.get("addressPrefix"),
            route.get("nextHopAddress"),
        ) {
            out.push(format!("ip route {net} {prefix} {next}"));
            out.push("!".to_string());
        }
    }

    let mut acls = graph
        .neighbors(&config.name, NodeKind::AccessList)
        .unwrap_or_default();
    acls.sort_by_key(|a| {
        (
            numeric(a.get("accessListNumber").unwrap_or("")),
            a.name.clone(),
        )
    });
    for acl in acls {
        let mut line = String::from("access-list");
        for part in [
            acl.get("accessListNumber"),
            acl.get("permitOrDeny"),
            acl.get("protocol"),
            acl.get("sourceIpAddress"),
            acl.get("sourceWildcardMask"),
            acl.get("sourceOperator"),
            acl.get("sourcePort"),
            acl.get("destIpAddress"),
            acl.get("destWildcardMask"),
            acl.get("destOperator"),
            acl.get("destPort"),
        ]
        .into_iter()
        .flatten()
        {
            line.push(' ');
            line.push_str(part);
        }
        out.push(line);
        out.push("!".to_string());
    }

    out.push("end".to_string());
    out.join("\n") + "\n"
}

// ---- show spanning-tree -------------------------------------------------

fn spanning_tree(graph: &ModelGraph, config: &NodeRecord) -> String {
    let settings = graph
        .neighbors(&config.name, NodeKind::StpSetting)
        .unwrap_or_default();
    if settings.is_empty() {
        return format!(
            "No spanning tree instances configured on {}\n",
            hostname(graph, config)
        );
    }
    let mut out = String::new();
    for stp in settings {
        if let Some(mode) = stp.get("Mode") {
            out.push_str(&format!("Spanning tree enabled protocol {mode}\n"));
        }
        if let Some(vlan) = stp.get("Vlan") {
            out.push_str(&format!("  VLAN {vlan}\n"));
        }
        if let Some(prio) = stp.get("bridgePriority") {
            out.push_str(&format!("  Bridge Priority {prio}\n"));
        }
        if let Some(mac) = stp.get("macAddress") {
            out.push_str(&format!("  MAC Address {mac}\n"));
        }
    }
    out
}

// ---- show ip protocols --------------------------------------------------

fn ip_protocols(graph: &ModelGraph, config: &NodeRecord) -> String {
    let settings = graph
        .neighbors(&config.name, NodeKind::OspfSetting)
        .unwrap_or_default();
    if settings.is_empty() {
        return format!(
            "No routing protocol is configured on {}\n",
            hostname(graph, config)
        );
    }
    let mut out = String::new();
    for os in settings {
        out.push_str(&format!(
            "Routing Protocol is \"ospf {}\"\n",
            os.get("processId").unwrap_or("")
        ));
        if let Some(rid) = os.get("routerId") {
            out.push_str(&format!("  Router ID {rid}\n"));
        }
        let statements = graph
            .neighbors(&os.name, NodeKind::OspfInterfaceSetting)
            .unwrap_or_default();
        let areas: BTreeSet<&str> = statements.iter().filter_map(|s| s.get("areaId")).collect();
        out.push_str(&format!(
            "  Number of areas in this router is {}\n",
            areas.len()
        ));
        out.push_str("  Routing for Networks:\n");
        for stmt in statements {
            if let (Some(ip), Some(wild), Some(area)) = (
                stmt.get("ipAddress"),
                stmt.get("wildcardMask"),
                stmt.get("areaId"),
            ) {
                out.push_str(&format!("    {ip} {wild} area {area}\n"));
            }
        }
    }
    out
}

// ---- show ip ospf neighbor ----------------------------------------------

fn neighbor_row(id: &str, pri: &str, state: &str, dead: &str, addr: &str, iface: &str) -> String {
    format!("{id:<16}{pri:>3}   {state:<16}{dead:<12}{addr:<16}{iface}\n")
}

fn ospf_neighbor(graph: &ModelGraph, config: &NodeRecord) -> String {
    let view = build_view(graph);
    let segments = discover_segments(graph);
    let mut rows: Vec<(String, u32, String)> = Vec::new();

    for link in graph.nodes_of_kind(NodeKind::Link) {
        for (i1, i2) in l3_endpoint_pairs(graph, link) {
            let c1 = graph.config_of(&i1.name).map(|c| c.name.clone());
            let c2 = graph.config_of(&i2.name).map(|c| c.name.clone());
            let (subject, neighbor) = match (c1.as_deref(), c2.as_deref()) {
                (Ok(a), _) if a == config.name => (i1, i2),
                (_, Ok(b)) if b == config.name => (i2, i1),
                _ => continue,
            };
            if !view.bindings.contains_key(&subject.name) {
                continue;
            }
            let neighbor_binding = match view.bindings.get(&neighbor.name) {
                Some(b) => b,
                None => continue,
            };
            let neighbor_config = match graph.config_of(&neighbor.name) {
                Ok(c) => c.name.clone(),
                Err(_) => continue,
            };
            let neighbor_id = match router_id_of_config(graph, &neighbor_config) {
                Some(rid) => rid,
                None => continue,
            };
            let election = segment_key_of(graph, &segments, subject)
                .map(|key| elect(speakers_for(graph, &view, &segments, &key)));
            let role = election
                .as_ref()
                .map(|e| e.role_of(&neighbor.name))
                .unwrap_or(Role::DrOther);
            let row = neighbor_row(
                &neighbor_id,
                neighbor_binding.get("priority").unwrap_or(DEFAULT_PRIORITY),
                &format!("FULL/{}", role.as_str()),
                neighbor_binding.get("deadInterval").unwrap_or(DEFAULT_DEAD),
                neighbor.get("ipAddress").unwrap_or(""),
                &display_name(graph, subject),
            );
            rows.push((
                display_name(graph, subject),
                addr::router_id_value(&neighbor_id).unwrap_or(0),
                row,
            ));
        }
    }

    rows.sort();
    let mut out = neighbor_row("Neighbor ID", "Pri", "State", "Dead Time", "Address", "Interface");
    for (_, _, row) in rows {
        out.push_str(&row);
    }
    out
}

// ---- show ip ospf interface ---------------------------------------------

fn find_interface<'g>(
    graph: &'g ModelGraph,
    config: &NodeRecord,
    name: &str,
) -> Result<&'g NodeRecord, RenderError> {
    interfaces_of(graph, &config.name)
        .into_iter()
        .find(|iface| iface.name == name || display_name(graph, iface) == name)
        .ok_or_else(|| RenderError::UnknownInterface {
            config: config.name.clone(),
            name: name.to_string(),
        })
}

fn ospf_interface(
    graph: &ModelGraph,
    config: &NodeRecord,
    iface_name: &str,
) -> Result<String, RenderError> {
    let iface = find_interface(graph, config, iface_name)?;
    let view = build_view(graph);
    let binding = view
        .bindings
        .get(&iface.name)
        .ok_or_else(|| RenderError::OspfNotEnabled(display_name(graph, iface)))?;

    let ip = iface.get("ipAddress").unwrap_or("");
    let prefix = iface
        .get("subnetMask")
        .and_then(addr::parse_ipv4)
        .and_then(addr::mask_prefix_len)
        .map(|len| len.to_string())
        .unwrap_or_else(|| iface.get("subnetMask").unwrap_or("").to_string());
    let process = graph
        .neighbor_one(&binding.name, NodeKind::OspfSetting)
        .and_then(|os| os.get("processId"))
        .unwrap_or("");
    let router_id = graph
        .neighbor_one(&binding.name, NodeKind::OspfSetting)
        .and_then(|os| os.get("routerId"))
        .unwrap_or("");

    let segments = discover_segments(graph);
    let election = segment_key_of(graph, &segments, iface)
        .map(|key| elect(speakers_for(graph, &view, &segments, &key)))
        .unwrap_or_else(|| elect(Vec::new()));
    let state = election.role_of(&iface.name).as_str();

    let mut out = String::new();
    for line in OSPF_INTERFACE_TEMPLATE.lines() {
        if line.contains("<dr-id>") {
            match election.dr() {
                Some(dr) => {
                    let rid = dr.router_id.clone().unwrap_or_default();
                    out.push_str(
                        &line.replace("<dr-id>", &rid).replace("<dr-address>", &dr.ip),
                    );
                    out.push('\n');
                }
                None => continue,
            }
            continue;
        }
        if line.contains("<bdr-id>") {
            match election.bdr() {
                Some(bdr) => {
                    let rid = bdr.router_id.clone().unwrap_or_default();
                    out.push_str(
                        &line
                            .replace("<bdr-id>", &rid)
                            .replace("<bdr-address>", &bdr.ip),
                    );
                    out.push('\n');
                }
                None => continue,
            }
            continue;
        }
        let filled = line
            .replace("<interface>", &display_name(graph, iface))
            .replace("<ip>", ip)
            .replace("<prefix>", &prefix)
            .replace("<area>", binding.get("areaId").unwrap_or(""))
            .replace("<process>", process)
            .replace("<router-id>", router_id)
            .replace(
                "<network-type>",
                binding.get("ospdNetworkMode").unwrap_or(DEFAULT_NETWORK_TYPE),
            )
            .replace("<state>", state)
            .replace(
                "<priority>",
                binding.get("priority").unwrap_or(DEFAULT_PRIORITY),
            )
            .replace("<hello>", binding.get("helloInterval").unwrap_or(DEFAULT_HELLO))
            .replace("<dead>", binding.get("deadInterval").unwrap_or(DEFAULT_DEAD));
        out.push_str(&filled);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixture::campus_network;

    fn speaker(iface: &str, rid: &str, priority: u32) -> Speaker {
        Speaker {
            interface: iface.to_string(),
            display: iface.to_string(),
            config: iface.to_string(),
            ip: "10.0.0.1".to_string(),
            router_id: Some(rid.to_string()),
            priority,
        }
    }

    #[test]
    fn election_prefers_priority_then_router_id() {
        let e = elect(vec![
            speaker("a", "9.9.9.9", 1),
            speaker("b", "1.1.1.1", 5),
        ]);
        assert_eq!(e.dr().unwrap().interface, "b");
        assert_eq!(e.bdr().unwrap().interface, "a");

        let e = elect(vec![
            speaker("a", "2.2.2.2", 1),
            speaker("b", "3.3.3.3", 1),
        ]);
        assert_eq!(e.dr().unwrap().router_id.as_deref(), Some("3.3.3.3"));
        assert_eq!(e.role_of("a"), Role::Bdr);
    }

    #[test]
    fn election_is_order_free_and_skips_priority_zero() {
        let forward = elect(vec![
            speaker("a", "2.2.2.2", 0),
            speaker("b", "3.3.3.3", 1),
            speaker("c", "4.4.4.4", 1),
        ]);
        let backward = elect(vec![
            speaker("c", "4.4.4.4", 1),
            speaker("b", "3.3.3.3", 1),
            speaker("a", "2.2.2.2", 0),
        ]);
        assert_eq!(forward.dr().unwrap().interface, "c");
        assert_eq!(backward.dr().unwrap().interface, "c");
        assert_eq!(forward.role_of("a"), Role::DrOther);

        let silent = elect(vec![speaker("a", "2.2.2.2", 0)]);
        assert!(silent.dr().is_none());
        assert!(silent.bdr().is_none());
    }

    #[test]
    fn singleton_segment_elects_itself_dr() {
        let e = elect(vec![speaker("a", "2.2.2.2", 1)]);
        assert_eq!(e.dr().unwrap().interface, "a");
        assert!(e.bdr().is_none());
    }

    #[test]
    fn interface_argument_accepts_node_and_display_names() {
        let g = campus_network();
        let by_node = render_show(&g, &["ip", "ospf", "interface", "campus1", "campus1_VS20"]);
        let by_display = render_show(&g, &["ip", "ospf", "interface", "campus1", "Vlan20"]);
        assert_eq!(by_node.unwrap(), by_display.unwrap());
    }

    #[test]
    fn unknown_command_and_config_are_reported() {
        let g = campus_network();
        assert!(matches!(
            render_show(&g, &["ip", "route", "top"]),
            Err(RenderError::UnknownCommand(_))
        ));
        assert!(matches!(
            render_show(&g, &["vlan", "brief", "nosuch"]),
            Err(RenderError::UnknownConfig(_))
        ));
        assert!(matches!(
            render_show(&g, &["ip", "ospf", "interface", "top", "Vlan99"]),
            Err(RenderError::UnknownInterface { .. })
        ));
    }

    #[test]
    fn every_rendered_ospf_value_exists_in_the_model() {
        let g = campus_network();
        let text = render_show(&g, &["ip", "ospf", "interface", "campus1", "Vlan20"]).unwrap();
        for value in ["10.0.2.2", "3.3.3.3", "2.2.2.2", "10.0.2.1", "1", "10", "40"] {
            assert!(text.contains(value), "missing {value} in {text}");
        }
    }
}
