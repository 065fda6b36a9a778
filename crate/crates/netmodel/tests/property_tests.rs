//! Property-based checks against independent oracles: duplicate-IP
//! classification vs a spec-level flood fill, backbone connectivity vs a
//! BFS over the area star, DR/BDR election vs a brute-force sort, and
//! model file round-tripping.

mod common;

use proptest::prelude::*;

use common::{
    backbone_discrepancy, dup_ip_discrepancy, l2_spec_strategy, ospf_spec_strategy,
};
use netmodel::model::ModelGraph;
use netmodel::render::{elect, Speaker};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn duplicate_ip_matches_the_flood_fill_oracle(spec in l2_spec_strategy()) {
        if let Some(diff) = dup_ip_discrepancy(&spec) {
            prop_assert!(false, "{diff}");
        }
    }

    #[test]
    fn backbone_reachability_matches_the_bfs_oracle(spec in ospf_spec_strategy()) {
        if let Some(diff) = backbone_discrepancy(&spec) {
            prop_assert!(false, "{diff}");
        }
    }

    #[test]
    fn models_round_trip_through_the_file_format(spec in l2_spec_strategy()) {
        let graph = spec.build();
        let text = graph.to_json_string();
        let reloaded = ModelGraph::from_json_str(&text).expect("own output reloads");
        prop_assert_eq!(text, reloaded.to_json_string());
    }

    #[test]
    fn election_matches_a_brute_force_sort(
        entries in prop::collection::vec(
            (0u32..=3, prop::option::of((1u8..=9, 1u8..=9))),
            0..=8,
        )
    ) {
        let speakers: Vec<Speaker> = entries
            .iter()
            .enumerate()
            .map(|(i, (priority, rid))| Speaker {
                interface: format!("eth{i}"),
                display: format!("Ethernet{i}"),
                config: "d1".to_string(),
                ip: format!("10.0.0.{}", i + 1),
                router_id: rid.map(|(a, b)| format!("{a}.0.0.{b}")),
                priority: *priority,
            })
            .collect();

        // oracle: eligible speakers ranked by priority desc, rid desc,
        // interface name asc
        let mut ranked: Vec<(u32, u32, String)> = entries
            .iter()
            .enumerate()
            .filter_map(|(i, (priority, rid))| {
                let (a, b) = (*rid)?;
                if *priority == 0 {
                    return None;
                }
                let rid_value = u32::from_be_bytes([a, 0, 0, b]);
                Some((*priority, rid_value, format!("eth{i}")))
            })
            .collect();
        ranked.sort_by(|x, y| {
            y.0.cmp(&x.0)
                .then(y.1.cmp(&x.1))
                .then(x.2.cmp(&y.2))
        });

        let election = elect(speakers);
        prop_assert_eq!(
            election.dr().map(|s| s.interface.as_str()),
            ranked.first().map(|r| r.2.as_str())
        );
        prop_assert_eq!(
            election.bdr().map(|s| s.interface.as_str()),
            ranked.get(1).map(|r| r.2.as_str())
        );
    }
}
