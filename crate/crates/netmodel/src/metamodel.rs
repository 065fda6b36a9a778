//! Node kinds, their legal specification items, and the legal association
//! edge pairs. This is the structural half of the metamodel; value-level
//! rules live in the rule catalog.

use std::fmt;
use std::str::FromStr;

/// The fourteen node kinds of the configuration metamodel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeKind {
    Config,
    HostName,
    EthernetSetting,
    Vlan,
    VlanSetting,
    StpSetting,
    IpRoute,
    OspfSetting,
    OspfInterfaceSetting,
    OspfVirtualLink,
    Client,
    EthernetType,
    AccessList,
    Link,
}

pub const ALL_KINDS: [NodeKind; 14] = [
    NodeKind::Config,
    NodeKind::HostName,
    NodeKind::EthernetSetting,
    NodeKind::Vlan,
    NodeKind::VlanSetting,
    NodeKind::StpSetting,
    NodeKind::IpRoute,
    NodeKind::OspfSetting,
    NodeKind::OspfInterfaceSetting,
    NodeKind::OspfVirtualLink,
    NodeKind::Client,
    NodeKind::EthernetType,
    NodeKind::AccessList,
    NodeKind::Link,
];

impl NodeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeKind::Config => "Config",
            NodeKind::HostName => "HostName",
            NodeKind::EthernetSetting => "EthernetSetting",
            NodeKind::Vlan => "Vlan",
            NodeKind::VlanSetting => "VlanSetting",
            NodeKind::StpSetting => "StpSetting",
            NodeKind::IpRoute => "IpRoute",
            NodeKind::OspfSetting => "OspfSetting",
            NodeKind::OspfInterfaceSetting => "OspfInterfaceSetting",
            NodeKind::OspfVirtualLink => "OspfVirtualLink",
            NodeKind::Client => "Client",
            NodeKind::EthernetType => "EthernetType",
            NodeKind::AccessList => "AccessList",
            NodeKind::Link => "Link",
        }
    }

    /// Legal specification items for this kind, ruled and unruled alike.
    pub fn items(self) -> &'static [&'static str] {
        match self {
            NodeKind::Config => &["description"],
            NodeKind::HostName => &["name"],
            NodeKind::EthernetSetting => &[
                "stack",
                "slot",
                "port",
                "ipAddress",
                "subnetMask",
                "accessVlan",
                "nativeVlan",
                "allowedVlan",
                "mode",
                "accessListNumber",
                "accessListName",
                "accessListInOrOut",
                "speed",
                "duplex",
                "ipVirtualReassembly",
                "switchportTrunkEncapsulation",
                "shutdown",
                "mtu",
            ],
            NodeKind::Vlan => &["num", "name"],
            NodeKind::VlanSetting => &[
                "vlanNum",
                "ipAddress",
                "subnetMask",
                "accessListNumber",
                "accessListName",
                "accessListInOrOut",
                "ipNatInside",
                "ipTcpAdjustMss",
                "ipVirtualReassembly",
                "shutdown",
            ],
            NodeKind::StpSetting => &["bridgePriority", "Vlan", "Mode", "macAddress"],
            NodeKind::IpRoute => &["Network", "addressPrefix", "nextHopAddress"],
            NodeKind::OspfSetting => &["processId", "routerId"],
            NodeKind::OspfInterfaceSetting => &[
                "ipAddress",
                "wildcardMask",
                "areaId",
                "helloInterval",
                "deadInterval",
                "ospdNetworkMode",
                "stub",
                "priority",
            ],
            NodeKind::OspfVirtualLink => &["areaId", "routerId"],
            NodeKind::Client => &["name", "IpAddress", "subnetMask", "defaultGateway"],
            NodeKind::EthernetType => &[
                "fastEthernet",
                "Ethernet",
                "gigabitEthernet",
                "10gigabitEthernet",
            ],
            NodeKind::AccessList => &[
                "accessListNumber",
                "permitOrDeny",
                "protocol",
                "sourceIpAddress",
                "sourceWildcardMask",
                "sourceOperator",
                "sourcePort",
                "destIpAddress",
                "destWildcardMask",
                "destPort",
                "destOperator",
            ],
            NodeKind::Link => &["name"],
        }
    }

    pub fn has_item(self, item: &str) -> bool {
        self.items().contains(&item)
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for NodeKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ALL_KINDS
            .iter()
            .copied()
            .find(|k| k.as_str() == s)
            .ok_or(())
    }
}

/// Association pairs permitted by the metamodel, unordered.
const LEGAL_PAIRS: [(NodeKind, NodeKind); 13] = [
    (NodeKind::Config, NodeKind::HostName),
    (NodeKind::Config, NodeKind::EthernetSetting),
    (NodeKind::Config, NodeKind::Vlan),
    (NodeKind::Config, NodeKind::VlanSetting),
    (NodeKind::Config, NodeKind::StpSetting),
    (NodeKind::Config, NodeKind::IpRoute),
    (NodeKind::Config, NodeKind::OspfSetting),
    (NodeKind::Config, NodeKind::AccessList),
    (NodeKind::OspfSetting, NodeKind::OspfInterfaceSetting),
    (NodeKind::OspfSetting, NodeKind::OspfVirtualLink),
    (NodeKind::EthernetSetting, NodeKind::Link),
    (NodeKind::EthernetSetting, NodeKind::EthernetType),
    (NodeKind::EthernetSetting, NodeKind::Client),
];

/// Whether an association edge may join nodes of the two kinds.
pub fn edge_allowed(a: NodeKind, b: NodeKind) -> bool {
    LEGAL_PAIRS
        .iter()
        .any(|&(x, y)| (x == a && y == b) || (x == b && y == a))
}
