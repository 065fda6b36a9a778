//! The built-in nine-device campus model: a ring of layer-3 switches
//! (top, dc, campus1 through campus7) joined by access links, one trunk,
//! and a daisy chain of OSPF areas stitched to the backbone with virtual
//! links. It verifies clean and is the baseline every fault-injection
//! scenario starts from.

use crate::metamodel::NodeKind;
use crate::model::{ModelGraph, NodeRecord};

struct Device {
    host: &'static str,
    description: &'static str,
    router_id: &'static str,
    /// Vlan definitions
    vlans: &'static [&'static str],
    /// SVIs as (vlanNum, ipAddress), mask 255.255.255.0 throughout
    svis: &'static [(&'static str, &'static str)],
    /// switchports as (port, accessVlan)
    access_ports: &'static [(&'static str, &'static str)],
    /// trunk ports carrying VLANs 1 and 40
    trunk_ports: &'static [&'static str],
    /// ports with nothing attached, shut down
    unused_ports: &'static [&'static str],
    /// network statements as (network, areaId); wildcard 0.0.0.255
    statements: &'static [(&'static str, &'static str)],
    /// virtual links as (transit areaId, neighbor routerId)
    virtual_links: &'static [(&'static str, &'static str)],
}

const DEVICES: &[Device] = &[
    Device {
        host: "top",
        description: "core switch uplinking the campus ring",
        router_id: "2.2.2.2",
        vlans: &["10", "20"],
        svis: &[("10", "10.0.1.1"), ("20", "10.0.2.1")],
        access_ports: &[("2", "10"), ("3", "20")],
        trunk_ports: &[],
        unused_ports: &[],
        statements: &[("10.0.1.0", "0"), ("10.0.2.0", "1")],
        virtual_links: &[("1", "3.3.3.3")],
    },
    Device {
        host: "dc",
        description: "data center switch on the backbone",
        router_id: "1.1.1.1",
        vlans: &["10", "90"],
        svis: &[("10", "10.0.1.2"), ("90", "10.0.9.2")],
        access_ports: &[("2", "10"), ("4", "90")],
        trunk_ports: &[],
        unused_ports: &[],
        statements: &[("10.0.1.0", "0"), ("10.0.9.0", "8")],
        virtual_links: &[("8", "9.9.9.9")],
    },
    Device {
        host: "campus1",
        description: "distribution switch for campus 1",
        router_id: "3.3.3.3",
        vlans: &["20", "30"],
        svis: &[("20", "10.0.2.2"), ("30", "10.0.3.1")],
        access_ports: &[("2", "20"), ("3", "30")],
        trunk_ports: &[],
        unused_ports: &[],
        statements: &[("10.0.2.0", "1"), ("10.0.3.0", "2")],
        virtual_links: &[("1", "2.2.2.2"), ("2", "4.4.4.4")],
    },
    Device {
        host: "campus2",
        description: "distribution switch for campus 2",
        router_id: "4.4.4.4",
        vlans: &["1", "30", "40"],
        svis: &[("30", "10.0.3.2"), ("40", "10.0.4.1")],
        access_ports: &[("3", "30")],
        trunk_ports: &["2"],
        unused_ports: &[],
        statements: &[("10.0.3.0", "2"), ("10.0.4.0", "3")],
        virtual_links: &[("2", "3.3.3.3"), ("3", "5.5.5.5")],
    },
    Device {
        host: "campus3",
        description: "distribution switch for campus 3",
        router_id: "5.5.5.5",
        vlans: &["1", "40", "50"],
        svis: &[("40", "10.0.4.2"), ("50", "10.0.5.1")],
        access_ports: &[("3", "50")],
        trunk_ports: &["2"],
        unused_ports: &["4"],
        statements: &[("10.0.4.0", "3"), ("10.0.5.0", "4")],
        virtual_links: &[("3", "4.4.4.4"), ("4", "6.6.6.6")],
    },
    Device {
        host: "campus4",
        description: "distribution switch for campus 4",
        router_id: "6.6.6.6",
        vlans: &["50", "60"],
        svis: &[("50", "10.0.5.2"), ("60", "10.0.6.1")],
        access_ports: &[("2", "60"), ("3", "50")],
        trunk_ports: &[],
        unused_ports: &[],
        statements: &[("10.0.5.0", "4"), ("10.0.6.0", "5")],
        virtual_links: &[("4", "5.5.5.5"), ("5", "7.7.7.7")],
    },
    Device {
        host: "campus5",
        description: "distribution switch for campus 5",
        router_id: "7.7.7.7",
        vlans: &["60", "70"],
        svis: &[("60", "10.0.6.2"), ("70", "10.0.7.2")],
        access_ports: &[("2", "60"), ("3", "70")],
        trunk_ports: &[],
        unused_ports: &[],
        statements: &[("10.0.6.0", "5"), ("10.0.7.0", "6")],
        virtual_links: &[("5", "6.6.6.6"), ("6", "8.8.8.8")],
    },
    Device {
        host: "campus6",
        description: "distribution switch for campus 6",
        router_id: "8.8.8.8",
        vlans: &["70", "80"],
        svis: &[("70", "10.0.7.1"), ("80", "10.0.8.1")],
        access_ports: &[("2", "80"), ("3", "70")],
        trunk_ports: &[],
        unused_ports: &[],
        statements: &[("10.0.7.0", "6"), ("10.0.8.0", "7")],
        virtual_links: &[("6", "7.7.7.7"), ("7", "9.9.9.9")],
    },
    Device {
        host: "campus7",
        description: "distribution switch for campus 7",
        router_id: "9.9.9.9",
        vlans: &["80", "90"],
        svis: &[("80", "10.0.8.2"), ("90", "10.0.9.1")],
        access_ports: &[("2", "80"), ("4", "90")],
        trunk_ports: &[],
        unused_ports: &[],
        statements: &[("10.0.8.0", "7"), ("10.0.9.0", "8")],
        virtual_links: &[("7", "8.8.8.8"), ("8", "1.1.1.1")],
    },
];

/// physical cabling: (link, endpoint, endpoint)
const LINKS: &[(&str, &str, &str)] = &[
    ("link1", "top_ES2", "dc_ES2"),
    ("link2", "dc_ES4", "campus7_ES4"),
    ("link3", "campus7_ES2", "campus6_ES2"),
    ("link4", "campus6_ES3", "campus5_ES3"),
    ("link5", "campus5_ES2", "campus4_ES2"),
    ("link6", "campus4_ES3", "campus3_ES3"),
    ("link7", "campus3_ES2", "campus2_ES2"),
    ("link8", "campus2_ES3", "campus1_ES3"),
    ("link9", "campus1_ES2", "top_ES3"),
];

struct Builder {
    nodes: Vec<NodeRecord>,
    edges: Vec<(String, String)>,
}

impl Builder {
    fn owned(&mut self, parent: &str, node: NodeRecord) {
        self.edges.push((parent.to_string(), node.name.clone()));
        self.nodes.push(node);
    }

    /// a switchport plus its FastEthernet type marker
    fn ethernet(&mut self, host: &str, port: &str, record: NodeRecord) {
        let es = record.name.clone();
        self.owned(host, record);
        self.owned(
            &es,
            NodeRecord::new(NodeKind::EthernetType, format!("{host}_ET{port}"))
                .with("fastEthernet", "true"),
        );
    }
}

pub fn campus_network() -> ModelGraph {
    let mut b = Builder {
        nodes: Vec::new(),
        edges: Vec::new(),
    };

    for dev in DEVICES {
        let host = dev.host;
        b.nodes
            .push(NodeRecord::new(NodeKind::Config, host).with("description", dev.description));
        b.owned(
            host,
            NodeRecord::new(NodeKind::HostName, format!("{host}_HN")).with("name", host),
        );

        for vlan in dev.vlans {
            b.owned(
                host,
                NodeRecord::new(NodeKind::Vlan, format!("{host}_V{vlan}"))
                    .with("num", *vlan)
                    .with("name", format!("v{vlan}")),
            );
        }
        for (vlan, ip) in dev.svis {
            b.owned(
                host,
                NodeRecord::new(NodeKind::VlanSetting, format!("{host}_VS{vlan}"))
                    .with("vlanNum", *vlan)
                    .with("ipAddress", *ip)
                    .with("subnetMask", "255.255.255.0"),
            );
        }

        for (port, vlan) in dev.access_ports {
            b.ethernet(
                host,
                port,
                NodeRecord::new(NodeKind::EthernetSetting, format!("{host}_ES{port}"))
                    .with("port", *port)
                    .with("mode", "access")
                    .with("accessVlan", *vlan),
            );
        }
        for port in dev.trunk_ports {
            b.ethernet(
                host,
                port,
                NodeRecord::new(NodeKind::EthernetSetting, format!("{host}_ES{port}"))
                    .with("port", *port)
                    .with("mode", "trunk")
                    .with("allowedVlan", "1,40")
                    .with("nativeVlan", "1"),
            );
        }
        for port in dev.unused_ports {
            b.ethernet(
                host,
                port,
                NodeRecord::new(NodeKind::EthernetSetting, format!("{host}_ES{port}"))
                    .with("port", *port)
                    .with("shutdown", "true"),
            );
        }

        let ospf = format!("{host}_OSPF");
        b.owned(
            host,
            NodeRecord::new(NodeKind::OspfSetting, ospf.clone())
                .with("processId", "1")
                .with("routerId", dev.router_id),
        );
        for (network, area) in dev.statements {
            b.owned(
                &ospf,
                NodeRecord::new(NodeKind::OspfInterfaceSetting, format!("{host}_OS{area}"))
                    .with("ipAddress", *network)
                    .with("wildcardMask", "0.0.0.255")
                    .with("areaId", *area)
                    .with("helloInterval", "10")
                    .with("deadInterval", "40")
                    .with("priority", "1")
                    .with("ospdNetworkMode", "BROADCAST"),
            );
        }
        for (transit, neighbor) in dev.virtual_links {
            b.owned(
                &ospf,
                NodeRecord::new(NodeKind::OspfVirtualLink, format!("{host}_VL{transit}"))
                    .with("areaId", *transit)
                    .with("routerId", *neighbor),
            );
        }
    }

    for (link, end1, end2) in LINKS {
        b.nodes.push(NodeRecord::new(NodeKind::Link, *link));
        b.edges.push((link.to_string(), end1.to_string()));
        b.edges.push((link.to_string(), end2.to_string()));
    }

    ModelGraph::from_parts(b.nodes, b.edges).expect("reference model is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    use crate::ospf::check_ospf;
    use crate::rules::{check_all_single, gate_passes};
    use crate::topology::{check_topology, discover_segments};

    #[test]
    fn reference_model_verifies_clean() {
        let g = campus_network();
        let single = check_all_single(&g);
        assert_eq!(single, Vec::new());
        assert!(gate_passes(&single));
        assert_eq!(check_topology(&g), Vec::new());
        assert_eq!(check_ospf(&g, &BTreeSet::new()), Vec::new());
    }

    #[test]
    fn ring_has_nine_devices_and_nine_links() {
        let g = campus_network();
        assert_eq!(g.nodes_of_kind(crate::metamodel::NodeKind::Config).len(), 9);
        assert_eq!(g.nodes_of_kind(crate::metamodel::NodeKind::Link).len(), 9);
    }

    #[test]
    fn each_user_vlan_forms_one_two_device_segment() {
        let g = campus_network();
        let segs = discover_segments(&g);
        for vlan in ["10", "20", "30", "40", "50", "60", "70", "80", "90"] {
            let of_vlan: Vec<_> = segs.iter().filter(|s| s.vlan == vlan).collect();
            assert_eq!(of_vlan.len(), 1, "vlan {vlan}");
            assert_eq!(of_vlan[0].configs.len(), 2, "vlan {vlan}");
        }
    }

    #[test]
    fn round_trips_through_json() {
        let g = campus_network();
        let text = g.to_json_string();
        let back = ModelGraph::from_json_str(&text).unwrap();
        assert_eq!(g, back);
    }
}
