//! Small IPv4 helpers shared by the topology and OSPF layers. All functions
//! operate on host-order u32 values; parsing goes through `std::net`.

use std::net::Ipv4Addr;

pub fn parse_ipv4(s: &str) -> Option<u32> {
    s.parse::<Ipv4Addr>().ok().map(u32::from)
}

pub fn format_ipv4(v: u32) -> String {
    Ipv4Addr::from(v).to_string()
}

/// Prefix length of a contiguous subnet mask, None when the mask has holes.
pub fn mask_prefix_len(mask: u32) -> Option<u32> {
    let n = mask.leading_ones();
    let contiguous = if n == 0 { 0 } else { u32::MAX << (32 - n) };
    (mask == contiguous).then_some(n)
}

pub fn network(ip: u32, mask: u32) -> u32 {
    ip & mask
}

/// OSPF network-statement matching: the interface address is covered when it
/// agrees with the statement address on every non-wildcarded bit.
pub fn wildcard_match(if_ip: u32, stmt_ip: u32, wildcard: u32) -> bool {
    if_ip & !wildcard == stmt_ip & !wildcard
}

/// Number of fixed (non-wildcarded) bits; larger means a more specific match.
pub fn wildcard_specificity(wildcard: u32) -> u32 {
    (!wildcard).count_ones()
}

/// Whether two prefixes intersect. With contiguous masks this is exactly
/// "one contains the other", which includes equal prefixes.
pub fn prefix_overlap(net_a: u32, mask_a: u32, net_b: u32, mask_b: u32) -> bool {
    let common = mask_a & mask_b;
    net_a & common == net_b & common
}

/// Router ids are compared as 32-bit integers; higher wins DR election ties.
pub fn router_id_value(s: &str) -> Option<u32> {
    parse_ipv4(s)
}

/// "10.0.2.0/24", falling back to an explicit mask when it is not contiguous.
pub fn format_net(net: u32, mask: u32) -> String {
    match mask_prefix_len(mask) {
        Some(len) => format!("{}/{len}", format_ipv4(net)),
        None => format!("{} mask {}", format_ipv4(net), format_ipv4(mask)),
    }
}
