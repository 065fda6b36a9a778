//! Rule catalog: the per-item lexical and syntactic rule matrix, loaded from
//! an embedded data file so the full matrix can be audited without reading
//! code. 68 of the 71 specification items carry rules; the remaining three
//! are free-form labels.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use regex::Regex;
use serde::Deserialize;

use crate::metamodel::NodeKind;
use crate::violation::rule;

const CATALOG_JSON: &str = include_str!("../catalog/rules.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RuleCategory {
    NonEmpty,
    NonFullWidth,
    Type,
    Key,
    Format,
}

impl RuleCategory {
    pub fn rule_id(self) -> &'static str {
        match self {
            RuleCategory::NonEmpty => rule::LEX_NON_EMPTY,
            RuleCategory::NonFullWidth => rule::LEX_NON_FULL_WIDTH,
            RuleCategory::Type => rule::LEX_TYPE,
            RuleCategory::Key => rule::LEX_KEY,
            RuleCategory::Format => rule::LEX_FORMAT,
        }
    }
}

/// One compiled rule cell: a pattern the raw value must match and the
/// message reported when it does not.
#[derive(Debug, Clone)]
pub struct CompiledRule {
    pub category: RuleCategory,
    pub regex: Regex,
    pub message: String,
}

#[derive(Debug)]
pub struct RuleMatrix {
    rules: BTreeMap<(NodeKind, String), Vec<CompiledRule>>,
    unruled: BTreeSet<(NodeKind, String)>,
}

#[derive(Deserialize)]
struct RawCatalog {
    #[allow(dead_code)]
    comment: String,
    categories: BTreeMap<String, RawCategory>,
    patterns: BTreeMap<String, String>,
    items: Vec<RawItem>,
    unruled_items: Vec<RawUnruled>,
}

#[derive(Deserialize)]
struct RawCategory {
    pattern: String,
    message: String,
}

#[derive(Deserialize)]
struct RawItem {
    kind: String,
    item: String,
    rules: Vec<RawRule>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawRule {
    Shared(String),
    Custom {
        category: String,
        #[serde(default)]
        pattern: Option<String>,
        #[serde(default)]
        pattern_ref: Option<String>,
        message: String,
    },
}

#[derive(Deserialize)]
struct RawUnruled {
    kind: String,
    item: String,
}

fn parse_kind(s: &str) -> NodeKind {
    s.parse()
        .unwrap_or_else(|_| panic!("rule catalog names unknown kind {s:?}"))
}

fn shared_category(name: &str) -> RuleCategory {
    match name {
        "non_empty" => RuleCategory::NonEmpty,
        "non_full_width" => RuleCategory::NonFullWidth,
        "int" | "boolean" => RuleCategory::Type,
        other => panic!("rule catalog references unknown shared category {other:?}"),
    }
}

fn custom_category(name: &str) -> RuleCategory {
    match name {
        "key" => RuleCategory::Key,
        "format" => RuleCategory::Format,
        other => panic!("rule catalog uses {other:?} where key or format was expected"),
    }
}

fn compile(pattern: &str) -> Regex {
    Regex::new(pattern).unwrap_or_else(|e| panic!("bad pattern {pattern:?} in rule catalog: {e}"))
}

impl RuleMatrix {
    /// The embedded catalog, compiled once.
    pub fn shared() -> &'static RuleMatrix {
        static MATRIX: OnceLock<RuleMatrix> = OnceLock::new();
        MATRIX.get_or_init(|| RuleMatrix::from_json(CATALOG_JSON))
    }

    pub fn from_json(json: &str) -> RuleMatrix {
        let raw: RawCatalog = serde_json::from_str(json).expect("rule catalog is not valid JSON");
        let mut rules: BTreeMap<(NodeKind, String), Vec<CompiledRule>> = BTreeMap::new();

        for entry in &raw.items {
            let kind = parse_kind(&entry.kind);
            assert!(
                kind.has_item(&entry.item),
                "rule catalog row {}.{} is not a metamodel item",
                entry.kind,
                entry.item
            );
            let mut compiled = Vec::new();
            for r in &entry.rules {
                compiled.push(match r {
                    RawRule::Shared(name) => {
                        let cat = raw
                            .categories
                            .get(name)
                            .unwrap_or_else(|| panic!("unknown shared category {name:?}"));
                        CompiledRule {
                            category: shared_category(name),
                            regex: compile(&cat.pattern),
                            message: cat.message.clone(),
                        }
                    }
                    RawRule::Custom {
                        category,
                        pattern,
                        pattern_ref,
                        message,
                    } => {
                        let pat = match (pattern, pattern_ref) {
                            (Some(p), None) => p.clone(),
                            (None, Some(name)) => raw
                                .patterns
                                .get(name)
                                .unwrap_or_else(|| panic!("unknown pattern_ref {name:?}"))
                                .clone(),
                            _ => panic!(
                                "rule for {}.{} needs exactly one of pattern/pattern_ref",
                                entry.kind, entry.item
                            ),
                        };
                        CompiledRule {
                            category: custom_category(category),
                            regex: compile(&pat),
                            message: message.clone(),
                        }
                    }
                });
            }
            let prev = rules.insert((kind, entry.item.clone()), compiled);
            assert!(
                prev.is_none(),
                "duplicate rule catalog row {}.{}",
                entry.kind,
                entry.item
            );
        }

        let mut unruled = BTreeSet::new();
        for entry in &raw.unruled_items {
            let kind = parse_kind(&entry.kind);
            assert!(kind.has_item(&entry.item));
            assert!(
                !rules.contains_key(&(kind, entry.item.clone())),
                "{}.{} is listed both ruled and unruled",
                entry.kind,
                entry.item
            );
            unruled.insert((kind, entry.item.clone()));
        }

        let matrix = RuleMatrix { rules, unruled };
        matrix.assert_covers_metamodel();
        matrix
    }

    /// Every metamodel item must appear exactly once, ruled or unruled.
    fn assert_covers_metamodel(&self) {
        for kind in crate::metamodel::ALL_KINDS {
            for item in kind.items() {
                let key = (kind, item.to_string());
                let ruled = self.rules.contains_key(&key);
                let unruled = self.unruled.contains(&key);
                assert!(
                    ruled ^ unruled,
                    "catalog coverage broken for {kind}.{item}: ruled={ruled} unruled={unruled}"
                );
            }
        }
        assert_eq!(self.rules.len(), 68, "expected 68 ruled items");
        assert_eq!(self.unruled.len(), 3, "expected 3 unruled items");
    }

    /// Rules for one item; None when the item carries no rules.
    pub fn rules_for(&self, kind: NodeKind, item: &str) -> Option<&[CompiledRule]> {
        self.rules.get(&(kind, item.to_string())).map(|v| v.as_slice())
    }

    pub fn is_unruled(&self, kind: NodeKind, item: &str) -> bool {
        self.unruled.contains(&(kind, item.to_string()))
    }

    pub fn ruled_items(&self) -> impl Iterator<Item = (&(NodeKind, String), &Vec<CompiledRule>)> {
        self.rules.iter()
    }

    pub fn categories_for(&self, kind: NodeKind, item: &str) -> Vec<RuleCategory> {
        self.rules_for(kind, item)
            .map(|rs| rs.iter().map(|r| r.category).collect())
            .unwrap_or_default()
    }
}
