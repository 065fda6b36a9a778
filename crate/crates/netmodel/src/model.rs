//! The typed configuration graph: loading, saving, structural validation,
//! and the navigation queries every checker builds on.
//!
//! Structure is validated at load time (kinds, items, edge legality,
//! multiplicities). Field CONTENT is never validated here; a model whose
//! accessVlan is "banana" loads fine and is judged by the rule engine.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::metamodel::{edge_allowed, NodeKind};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("cannot read model file: {0}")]
    File(#[from] std::io::Error),
    #[error("model file is not valid JSON: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("node {node:?} has unknown kind {kind:?}")]
    UnknownKind { node: String, kind: String },
    #[error("duplicate node name {name:?}")]
    DuplicateNode { name: String },
    #[error("node {node:?} ({kind}) has no item named {item:?}")]
    UnknownItem {
        node: String,
        kind: NodeKind,
        item: String,
    },
    #[error("edge references unknown node {name:?}")]
    UnknownEdgeNode { name: String },
    #[error("edge {a:?} - {b:?} joins {kind_a} and {kind_b}, which the metamodel does not relate")]
    IllegalEdge {
        a: String,
        b: String,
        kind_a: NodeKind,
        kind_b: NodeKind,
    },
    #[error("edge joins node {name:?} to itself")]
    SelfEdge { name: String },
    #[error("Link {link:?} joins {degree} EthernetSettings, expected exactly 2")]
    LinkDegree { link: String, degree: usize },
    #[error("Config {config:?} has {count} HostName nodes, expected exactly 1")]
    HostNameCount { config: String, count: usize },
    #[error("EthernetSetting {interface:?} joins {count} Link nodes, expected at most 1")]
    MultipleLinks { interface: String, count: usize },
    #[error("EthernetSetting {interface:?} joins {count} EthernetType nodes, expected at most 1")]
    MultipleTypes { interface: String, count: usize },
    #[error("unknown node {name:?}")]
    UnknownNode { name: String },
    #[error("node {node:?} has no owning Config")]
    Orphan { node: String },
}

/// One node: a kind, a unique name, and raw string-valued items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub kind: NodeKind,
    pub name: String,
    pub fields: BTreeMap<String, String>,
}

impl NodeRecord {
    pub fn new(kind: NodeKind, name: impl Into<String>) -> Self {
        NodeRecord {
            kind,
            name: name.into(),
            fields: BTreeMap::new(),
        }
    }

    pub fn with(mut self, item: &str, value: impl Into<String>) -> Self {
        self.fields.insert(item.to_string(), value.into());
        self
    }

    pub fn get(&self, item: &str) -> Option<&str> {
        self.fields.get(item).map(String::as_str)
    }
}

/// Immutable after construction; all checkers are pure functions over it.
#[derive(Debug, Clone)]
pub struct ModelGraph {
    nodes: BTreeMap<String, NodeRecord>,
    adjacency: BTreeMap<String, BTreeSet<String>>,
    edges: Vec<(String, String)>,
}

impl PartialEq for ModelGraph {
    fn eq(&self, other: &Self) -> bool {
        self.nodes == other.nodes && self.edges == other.edges
    }
}

impl Eq for ModelGraph {}

#[derive(Serialize, Deserialize)]
struct FileDoc {
    nodes: Vec<FileNode>,
    #[serde(default)]
    edges: Vec<[String; 2]>,
}

#[derive(Serialize, Deserialize)]
struct FileNode {
    kind: String,
    name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    fields: BTreeMap<String, String>,
}

impl ModelGraph {
    pub fn empty() -> Self {
        ModelGraph {
            nodes: BTreeMap::new(),
            adjacency: BTreeMap::new(),
            edges: Vec::new(),
        }
    }

    /// Build and validate a graph from parts. All structural invariants are
    /// enforced here; every load path funnels through this.
    pub fn from_parts(
        nodes: Vec<NodeRecord>,
        edges: Vec<(String, String)>,
    ) -> Result<Self, ModelError> {
        let mut node_map: BTreeMap<String, NodeRecord> = BTreeMap::new();
        for node in nodes {
            for item in node.fields.keys() {
                if !node.kind.has_item(item) {
                    return Err(ModelError::UnknownItem {
                        node: node.name.clone(),
                        kind: node.kind,
                        item: item.clone(),
                    });
                }
            }
            if node_map.contains_key(&node.name) {
                return Err(ModelError::DuplicateNode { name: node.name });
            }
            node_map.insert(node.name.clone(), node);
        }

        let mut edge_set: BTreeSet<(String, String)> = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(ModelError::SelfEdge { name: a });
            }
            let ka = node_map
                .get(&a)
                .ok_or(ModelError::UnknownEdgeNode { name: a.clone() })?
                .kind;
            let kb = node_map
                .get(&b)
                .ok_or(ModelError::UnknownEdgeNode { name: b.clone() })?
                .kind;
            if !edge_allowed(ka, kb) {
                return Err(ModelError::IllegalEdge {
                    a,
                    b,
                    kind_a: ka,
                    kind_b: kb,
                });
            }
            let pair = if a < b { (a, b) } else { (b, a) };
            edge_set.insert(pair);
        }

        let mut adjacency: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
        for name in node_map.keys() {
            adjacency.insert(name.clone(), BTreeSet::new());
        }
        for (a, b) in &edge_set {
            adjacency.get_mut(a).unwrap().insert(b.clone());
            adjacency.get_mut(b).unwrap().insert(a.clone());
        }

        let graph = ModelGraph {
            nodes: node_map,
            adjacency,
            edges: edge_set.into_iter().collect(),
        };
        graph.check_multiplicities()?;
        Ok(graph)
    }

    fn check_multiplicities(&self) -> Result<(), ModelError> {
        for node in self.nodes.values() {
            match node.kind {
                NodeKind::Link => {
                    let degree = self.adjacent_of_kind(&node.name, NodeKind::EthernetSetting).len();
                    if degree != 2 {
                        return Err(ModelError::LinkDegree {
                            link: node.name.clone(),
                            degree,
                        });
                    }
                }
                NodeKind::Config => {
                    let count = self.adjacent_of_kind(&node.name, NodeKind::HostName).len();
                    if count != 1 {
                        return Err(ModelError::HostNameCount {
                            config: node.name.clone(),
                            count,
                        });
                    }
                }
                NodeKind::EthernetSetting => {
                    let links = self.adjacent_of_kind(&node.name, NodeKind::Link).len();
                    if links > 1 {
                        return Err(ModelError::MultipleLinks {
                            interface: node.name.clone(),
                            count: links,
                        });
                    }
                    let types = self.adjacent_of_kind(&node.name, NodeKind::EthernetType).len();
                    if types > 1 {
                        return Err(ModelError::MultipleTypes {
                            interface: node.name.clone(),
                            count: types,
                        });
                    }
                }
                _ => {}
            }
        }
        Ok(())
    }

    pub fn from_json_str(json: &str) -> Result<Self, ModelError> {
        let doc: FileDoc = serde_json::from_str(json)?;
        let mut nodes = Vec::new();
        for n in doc.nodes {
            let kind: NodeKind = n.kind.parse().map_err(|_| ModelError::UnknownKind {
                node: n.name.clone(),
                kind: n.kind.clone(),
            })?;
            nodes.push(NodeRecord {
                kind,
                name: n.name,
                fields: n.fields,
            });
        }
        let edges = doc.edges.into_iter().map(|[a, b]| (a, b)).collect();
        ModelGraph::from_parts(nodes, edges)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, ModelError> {
        let text = std::fs::read_to_string(path)?;
        ModelGraph::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        let doc = FileDoc {
            nodes: self
                .nodes
                .values()
                .map(|n| FileNode {
                    kind: n.kind.as_str().to_string(),
                    name: n.name.clone(),
                    fields: n.fields.clone(),
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(a, b)| [a.clone(), b.clone()])
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("model serialization cannot fail")
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ModelError> {
        std::fs::write(path, self.to_json_string() + "\n")?;
        Ok(())
    }

    /// Clone the graph into editable parts; revalidate with `from_parts`.
    pub fn to_parts(&self) -> (Vec<NodeRecord>, Vec<(String, String)>) {
        (
            self.nodes.values().cloned().collect(),
            self.edges.clone(),
        )
    }

    pub fn node(&self, name: &str) -> Option<&NodeRecord> {
        self.nodes.get(name)
    }

    pub fn require(&self, name: &str) -> Result<&NodeRecord, ModelError> {
        self.node(name).ok_or_else(|| ModelError::UnknownNode {
            name: name.to_string(),
        })
    }

    /// All nodes in name order.
    pub fn nodes(&self) -> impl Iterator<Item = &NodeRecord> {
        self.nodes.values()
    }

    pub fn nodes_of_kind(&self, kind: NodeKind) -> Vec<&NodeRecord> {
        self.nodes.values().filter(|n| n.kind == kind).collect()
    }

    pub fn edge_list(&self) -> &[(String, String)] {
        &self.edges
    }

    fn adjacent_of_kind(&self, name: &str, kind: NodeKind) -> Vec<&NodeRecord> {
        self.adjacency
            .get(name)
            .map(|set| {
                set.iter()
                    .filter_map(|n| self.nodes.get(n))
                    .filter(|n| n.kind == kind)
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Nodes of the given kind one association edge away, in name order.
    pub fn neighbors(&self, name: &str, kind: NodeKind) -> Result<Vec<&NodeRecord>, ModelError> {
        self.require(name)?;
        Ok(self.adjacent_of_kind(name, kind))
    }

    pub fn neighbor_one(&self, name: &str, kind: NodeKind) -> Option<&NodeRecord> {
        self.adjacent_of_kind(name, kind).into_iter().next()
    }

    /// The Config owning a node, following the metamodel's containment
    /// hierarchy (OspfSetting for OSPF children, EthernetSetting for
    /// EthernetType and Client). Identity for Config nodes.
    pub fn config_of(&self, name: &str) -> Result<&NodeRecord, ModelError> {
        let node = self.require(name)?;
        let orphan = || ModelError::Orphan {
            node: name.to_string(),
        };
        match node.kind {
            NodeKind::Config => Ok(node),
            NodeKind::OspfInterfaceSetting | NodeKind::OspfVirtualLink => {
                let parent = self
                    .neighbor_one(name, NodeKind::OspfSetting)
                    .ok_or_else(orphan)?;
                self.neighbor_one(&parent.name, NodeKind::Config)
                    .ok_or_else(orphan)
            }
            NodeKind::EthernetType | NodeKind::Client => {
                let parent = self
                    .neighbor_one(name, NodeKind::EthernetSetting)
                    .ok_or_else(orphan)?;
                self.neighbor_one(&parent.name, NodeKind::Config)
                    .ok_or_else(orphan)
            }
            NodeKind::Link => Err(orphan()),
            _ => self.neighbor_one(name, NodeKind::Config).ok_or_else(orphan),
        }
    }

    /// Hostname of the Config owning a node, when resolvable.
    pub fn hostname_of(&self, name: &str) -> Option<String> {
        let config = self.config_of(name).ok()?;
        self.neighbor_one(&config.name, NodeKind::HostName)
            .and_then(|hn| hn.get("name"))
            .map(str::to_string)
    }

    /// Device-style interface name for an EthernetSetting, e.g.
    /// "FastEthernet2" or "GigabitEthernet1/0/24".
    pub fn interface_display_name(&self, es: &NodeRecord) -> String {
        let type_name = self
            .neighbor_one(&es.name, NodeKind::EthernetType)
            .map(ethernet_type_name)
            .unwrap_or("Ethernet");
        let port = match es.get("port") {
            Some(p) => p,
            None => return es.name.clone(),
        };
        match (es.get("stack"), es.get("slot")) {
            (Some(stack), Some(slot)) => format!("{type_name}{stack}/{slot}/{port}"),
            _ => format!("{type_name}{port}"),
        }
    }

    /// Physical-connectivity summary: one entry per Link node.
    pub fn export_topology(&self) -> Result<TopologyDoc, ModelError> {
        let mut entries = Vec::new();
        for link in self.nodes_of_kind(NodeKind::Link) {
            let ends = self.adjacent_of_kind(&link.name, NodeKind::EthernetSetting);
            // degree 2 guaranteed at load
            let mut endpoints = Vec::new();
            for es in &ends {
                let host = self.hostname_of(&es.name).ok_or(ModelError::Orphan {
                    node: es.name.clone(),
                })?;
                endpoints.push(TopologyEndpoint {
                    host_name: host,
                    interface_name: self.interface_display_name(es),
                });
            }
            // stable side order within one link entry
            endpoints.sort();
            let node2 = endpoints.pop().unwrap();
            let node1 = endpoints.pop().unwrap();
            entries.push(TopologyEdge { node1, node2, link: link.name.clone() });
        }
        entries.sort_by(|a, b| a.link.cmp(&b.link));
        Ok(TopologyDoc {
            edges: entries,
        })
    }
}

fn ethernet_type_name(et: &NodeRecord) -> &'static str {
    let truthy = |item: &str| et.get(item) == Some("true");
    if truthy("fastEthernet") {
        "FastEthernet"
    } else if truthy("gigabitEthernet") {
        "GigabitEthernet"
    } else if truthy("10gigabitEthernet") {
        "TenGigabitEthernet"
    } else {
        "Ethernet"
    }
}

/// Short interface prefix used by tabular show output, e.g. "Fa2".
pub fn abbreviate_interface(full: &str) -> String {
    for (long, short) in [
        ("TenGigabitEthernet", "Te"),
        ("GigabitEthernet", "Gi"),
        ("FastEthernet", "Fa"),
        ("Ethernet", "Et"),
        ("Vlan", "Vl"),
    ] {
        if let Some(rest) = full.strip_prefix(long) {
            return format!("{short}{rest}");
        }
    }
    full.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TopologyEndpoint {
    pub host_name: String,
    pub interface_name: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TopologyEdge {
    pub node1: TopologyEndpoint,
    pub node2: TopologyEndpoint,
    #[serde(skip)]
    pub link: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TopologyDoc {
    pub edges: Vec<TopologyEdge>,
}

impl TopologyDoc {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("topology serialization cannot fail")
    }
}
