//! Golden-file tests for the show renderer.
//!
//! `ospf_interface_model.txt` is pinned byte for byte. The remaining files
//! under tests/data/golden/ are documented interpretations of standard
//! device output; regenerate them with UPDATE_GOLDENS=1 after a deliberate
//! format change and review the diff.

mod common;

use std::path::PathBuf;

use netmodel::fixture::campus_network;
use netmodel::metamodel::NodeKind;
use netmodel::model::{ModelGraph, NodeRecord};
use netmodel::render::render_show;

const MODEL_TRANSCRIPT: &str = include_str!("data/ospf_interface_model.txt");
const HARDWARE_TRANSCRIPT: &str = include_str!("data/ospf_interface_hw.txt");

#[test]
fn ospf_interface_for_vlan20_is_byte_exact() {
    let g = campus_network();
    let got = render_show(&g, &["ip", "ospf", "interface", "campus1", "Vlan20"]).unwrap();
    assert_eq!(got, MODEL_TRANSCRIPT);
}

/// The rendered output may differ from the hardware capture only in the
/// documented ways (timing fragments, DR/BDR election order).
#[test]
fn ospf_interface_is_confined_to_the_hardware_transcript() {
    let g = campus_network();
    let rendered = render_show(&g, &["ip", "ospf", "interface", "campus1", "Vlan20"]).unwrap();
    common::assert_confined_to_hardware(&rendered, HARDWARE_TRANSCRIPT);
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data/golden")
        .join(name)
}

fn check_golden(name: &str, got: &str) {
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDENS").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("missing golden {}: {e}", path.display()));
    assert_eq!(got, want, "output drifted from {}", path.display());
}

#[test]
fn fixture_show_commands_match_goldens() {
    let g = campus_network();
    let cases: &[(&str, &[&str])] = &[
        ("vlan_brief_campus1.txt", &["vlan", "brief", "campus1"]),
        ("vlan_brief_all.txt", &["vlan", "brief", "all"]),
        ("vlan_20.txt", &["vlan", "20"]),
        ("running_config_campus1.txt", &["running", "config", "campus1"]),
        ("spanning_tree_campus1.txt", &["spanning-tree", "campus1"]),
        ("ip_protocols_campus1.txt", &["ip", "protocols", "campus1"]),
        ("ospf_neighbor_campus1.txt", &["ip", "ospf", "neighbor", "campus1"]),
    ];
    for (file, args) in cases {
        let got = render_show(&g, args).unwrap_or_else(|e| panic!("show {}: {e}", args.join(" ")));
        check_golden(file, &got);
    }
}

/// Two routers on a routed point-to-point link: the OSPF interface command
/// applied to a physical port rather than an SVI.
fn routed_pair() -> ModelGraph {
    let mut nodes = Vec::new();
    let mut edges: Vec<(String, String)> = Vec::new();
    for (host, ip, rid) in [
        ("r1", "192.168.12.1", "11.11.11.11"),
        ("r2", "192.168.12.2", "22.22.22.22"),
    ] {
        nodes.push(NodeRecord::new(NodeKind::Config, host));
        nodes.push(NodeRecord::new(NodeKind::HostName, format!("{host}_HN")).with("name", host));
        nodes.push(
            NodeRecord::new(NodeKind::EthernetSetting, format!("{host}_ES2"))
                .with("port", "2")
                .with("ipAddress", ip)
                .with("subnetMask", "255.255.255.252"),
        );
        nodes.push(
            NodeRecord::new(NodeKind::EthernetType, format!("{host}_ET2"))
                .with("fastEthernet", "true"),
        );
        nodes.push(
            NodeRecord::new(NodeKind::OspfSetting, format!("{host}_OSPF"))
                .with("processId", "10")
                .with("routerId", rid),
        );
        nodes.push(
            NodeRecord::new(NodeKind::OspfInterfaceSetting, format!("{host}_OS0"))
                .with("ipAddress", "192.168.12.0")
                .with("wildcardMask", "0.0.0.3")
                .with("areaId", "0"),
        );
        edges.push((host.into(), format!("{host}_HN")));
        edges.push((host.into(), format!("{host}_ES2")));
        edges.push((format!("{host}_ES2"), format!("{host}_ET2")));
        edges.push((host.into(), format!("{host}_OSPF")));
        edges.push((format!("{host}_OSPF"), format!("{host}_OS0")));
    }
    nodes.push(NodeRecord::new(NodeKind::Link, "wan1"));
    edges.push(("wan1".into(), "r1_ES2".into()));
    edges.push(("wan1".into(), "r2_ES2".into()));
    ModelGraph::from_parts(nodes, edges).unwrap()
}

#[test]
fn ospf_interface_on_a_routed_port_matches_golden() {
    let g = routed_pair();
    let got = render_show(&g, &["ip", "ospf", "interface", "r1", "FastEthernet2"]).unwrap();
    assert!(got.starts_with("FastEthernet2\n"));
    assert!(got.contains("192.168.12.1/30"));
    assert!(got.contains("State BDR"));
    assert!(got.contains("Designated Router (ID) 22.22.22.22"));
    check_golden("ospf_interface_routed_r1.txt", &got);
}
