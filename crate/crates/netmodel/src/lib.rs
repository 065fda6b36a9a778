//! Static verification and rendering for device-level network configuration
//! models.
//!
//! A model is a typed graph: Config nodes own per-device settings
//! (interfaces, VLANs, routing), Link nodes join interfaces across devices.
//! Field values are plain strings; nothing about their content is enforced
//! at load time. Verification happens in explicit layers instead:
//!
//! 1. single node: lexical rules per item plus intra-node completeness
//!    ([`rules`])
//! 2. multi node: L2 segment discovery and cross-device consistency
//!    ([`topology`])
//! 3. OSPF: process activation, adjacency parameters, areas and virtual
//!    links ([`ospf`])
//!
//! Later layers only run once the single-node layer reports no errors, so
//! traversals never trip over values that do not parse. On top of the
//! checks sit Cisco-style `show` command rendering ([`render`]), a fault
//! injector that replays known misconfiguration scenarios ([`inject`]), and
//! report assembly ([`report`]).

pub mod addr;
pub mod catalog;
pub mod fixture;
pub mod inject;
pub mod metamodel;
pub mod model;
pub mod ospf;
pub mod render;
pub mod report;
pub mod rules;
pub mod topology;
pub mod violation;
