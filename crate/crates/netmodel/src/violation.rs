//! Shared violation report types used by every verification layer.

use serde::{Deserialize, Serialize};

pub mod rule {
    //! Stable rule identifiers.
    //!
    //! `LEX.*` are the five lexical/syntactic categories, `INTRA.*` the six
    //! intra-node consistency cases, `STRUCT.ORPHAN` the ownership check,
    //! `MULTI.1`..`MULTI.12` the cross-device items, and `OSPF.1`..`OSPF.12`
    //! the protocol items.

    pub const LEX_NON_EMPTY: &str = "LEX.NON_EMPTY";
    pub const LEX_NON_FULL_WIDTH: &str = "LEX.NON_FULL_WIDTH";
    pub const LEX_TYPE: &str = "LEX.TYPE";
    pub const LEX_KEY: &str = "LEX.KEY";
    pub const LEX_FORMAT: &str = "LEX.FORMAT";

    pub const INTRA_A: &str = "INTRA.a";
    pub const INTRA_B: &str = "INTRA.b";
    pub const INTRA_C: &str = "INTRA.c";
    pub const INTRA_D: &str = "INTRA.d";
    pub const INTRA_E: &str = "INTRA.e";
    pub const INTRA_F: &str = "INTRA.f";

    pub const STRUCT_ORPHAN: &str = "STRUCT.ORPHAN";

    pub const MULTI_1: &str = "MULTI.1";
    pub const MULTI_2: &str = "MULTI.2";
    pub const MULTI_3: &str = "MULTI.3";
    pub const MULTI_4: &str = "MULTI.4";
    pub const MULTI_5: &str = "MULTI.5";
    pub const MULTI_6: &str = "MULTI.6";
    pub const MULTI_7: &str = "MULTI.7";
    pub const MULTI_8: &str = "MULTI.8";
    pub const MULTI_9: &str = "MULTI.9";
    pub const MULTI_10: &str = "MULTI.10";
    pub const MULTI_11: &str = "MULTI.11";
    pub const MULTI_12: &str = "MULTI.12";

    pub const OSPF_1: &str = "OSPF.1";
    pub const OSPF_2: &str = "OSPF.2";
    pub const OSPF_3: &str = "OSPF.3";
    pub const OSPF_4: &str = "OSPF.4";
    pub const OSPF_5: &str = "OSPF.5";
    pub const OSPF_6: &str = "OSPF.6";
    pub const OSPF_7: &str = "OSPF.7";
    pub const OSPF_8: &str = "OSPF.8";
    pub const OSPF_9: &str = "OSPF.9";
    pub const OSPF_10: &str = "OSPF.10";
    pub const OSPF_11: &str = "OSPF.11";
    pub const OSPF_12: &str = "OSPF.12";
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

/// One configuration value blamed by a violation. `item` and `value` are
/// absent when the whole node is at fault (missing items, unpaired nodes).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Culprit {
    pub node: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub item: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
}

impl Culprit {
    pub fn node(node: impl Into<String>) -> Self {
        Culprit {
            node: node.into(),
            item: None,
            value: None,
        }
    }

    pub fn value(node: impl Into<String>, item: impl Into<String>, value: impl Into<String>) -> Self {
        Culprit {
            node: node.into(),
            item: Some(item.into()),
            value: Some(value.into()),
        }
    }

    pub fn item(node: impl Into<String>, item: impl Into<String>) -> Self {
        Culprit {
            node: node.into(),
            item: Some(item.into()),
            value: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub severity: Severity,
    pub message: String,
    pub culprits: Vec<Culprit>,
}

impl Violation {
    pub fn new(rule: &str, severity: Severity, message: impl Into<String>, culprits: Vec<Culprit>) -> Self {
        Violation {
            rule: rule.to_string(),
            severity,
            message: message.into(),
            culprits,
        }
    }

    pub fn error(rule: &str, message: impl Into<String>, culprits: Vec<Culprit>) -> Self {
        Violation::new(rule, Severity::Error, message, culprits)
    }

    pub fn warning(rule: &str, message: impl Into<String>, culprits: Vec<Culprit>) -> Self {
        Violation::new(rule, Severity::Warning, message, culprits)
    }

    /// Sort key ordering rule families alphabetically and members numerically,
    /// so MULTI.2 precedes MULTI.10.
    pub fn rule_sort_key(rule: &str) -> (String, u32, String) {
        match rule.rsplit_once('.') {
            Some((family, tail)) => match tail.parse::<u32>() {
                Ok(n) => (family.to_string(), n, String::new()),
                Err(_) => (family.to_string(), u32::MAX, tail.to_string()),
            },
            None => (rule.to_string(), u32::MAX, String::new()),
        }
    }
}

/// Deterministic report order: rule family, rule number, then first culprit.
pub fn sort_violations(violations: &mut [Violation]) {
    violations.sort_by(|a, b| {
        let ka = Violation::rule_sort_key(&a.rule);
        let kb = Violation::rule_sort_key(&b.rule);
        ka.cmp(&kb)
            .then_with(|| a.culprits.cmp_key().cmp(&b.culprits.cmp_key()))
            .then_with(|| a.message.cmp(&b.message))
    });
}

trait CulpritsExt {
    fn cmp_key(&self) -> (String, String);
}

impl CulpritsExt for Vec<Culprit> {
    fn cmp_key(&self) -> (String, String) {
        match self.first() {
            Some(c) => (c.node.clone(), c.item.clone().unwrap_or_default()),
            None => (String::new(), String::new()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_ordering_is_numeric_within_a_family() {
        let mut vs = vec![
            Violation::error(rule::MULTI_10, "b", vec![]),
            Violation::error(rule::MULTI_2, "a", vec![]),
            Violation::error(rule::INTRA_A, "c", vec![]),
        ];
        sort_violations(&mut vs);
        let order: Vec<&str> = vs.iter().map(|v| v.rule.as_str()).collect();
        assert_eq!(order, vec!["INTRA.a", "MULTI.2", "MULTI.10"]);
    }

    #[test]
    fn culprit_constructors() {
        let c = Culprit::value("campus1_VS20", "ipAddress", "10.0.2.2");
        assert_eq!(c.item.as_deref(), Some("ipAddress"));
        let c = Culprit::node("campus2_VL2");
        assert!(c.item.is_none() && c.value.is_none());
    }
}
