//! Session files: a fixed base group plus named groups, crossed modules,
//! morphisms and relations, all as index arrays in JSON.
//!
//! ```json
//! {
//!   "base": { "name": "C2", "order": 2, "table": [[0, 1], [1, 0]] },
//!   "groups": [{ "name": "C4", "order": 4, "table": [[0,1,2,3],[1,2,3,0],[2,3,0,1],[3,0,1,2]] }],
//!   "crossed_modules": [{ "name": "A", "group": "C4", "boundary": [0,1,0,1], "action": [[0,1,2,3],[0,1,2,3]] }],
//!   "morphisms": [{ "name": "f", "source": "A", "target": "A", "map": [0,1,2,3] }],
//!   "relations": [{ "name": "E", "carrier": "A", "pairs": [[0,0],[1,1],[2,2],[3,3]] }],
//!   "options": { "catalogue_order": 4, "budget": 10000000 }
//! }
//! ```
//!
//! A crossed module's `group` may name the base itself. A group record whose
//! `table` is omitted is looked up among the built-in groups by name.

use std::sync::Arc;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalogue::DEFAULT_CATALOGUE_ORDER;
use crate::group::{named, Group};
use crate::limits::EquivalenceRelation;
use crate::xmod::{CrossedModule, XModMorphism, DEFAULT_BUDGET};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SessionError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{object}: {message}")]
    Validation { object: String, message: String },
    #[error("{object}: unknown name `{name}`")]
    Unresolved { object: String, name: String },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupRecord {
    name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    table: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct XModRecord {
    name: String,
    group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    base: Option<String>,
    boundary: Vec<usize>,
    action: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismRecord {
    name: String,
    source: String,
    target: String,
    map: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationRecord {
    name: String,
    carrier: String,
    pairs: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SessionOptions {
    #[serde(default = "default_catalogue_order")]
    pub catalogue_order: usize,
    #[serde(default = "default_budget")]
    pub budget: u64,
}

fn default_catalogue_order() -> usize {
    DEFAULT_CATALOGUE_ORDER
}

fn default_budget() -> u64 {
    DEFAULT_BUDGET as u64
}

impl Default for SessionOptions {
    fn default() -> Self {
        SessionOptions { catalogue_order: DEFAULT_CATALOGUE_ORDER, budget: DEFAULT_BUDGET as u64 }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SessionFile {
    base: GroupRecord,
    #[serde(default)]
    groups: Vec<GroupRecord>,
    #[serde(default)]
    crossed_modules: Vec<XModRecord>,
    #[serde(default)]
    morphisms: Vec<MorphismRecord>,
    #[serde(default)]
    relations: Vec<RelationRecord>,
    #[serde(default)]
    options: SessionOptions,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedXMod {
    pub group: String,
    pub object: Arc<CrossedModule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMorphism {
    pub source: String,
    pub target: String,
    pub morphism: XModMorphism,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedRelation {
    pub carrier: String,
    pub relation: EquivalenceRelation,
}

/// A fully validated session. All crossed modules share one base `Arc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Session {
    pub base_name: String,
    pub base: Arc<Group>,
    pub groups: IndexMap<String, Arc<Group>>,
    pub crossed_modules: IndexMap<String, NamedXMod>,
    pub morphisms: IndexMap<String, NamedMorphism>,
    pub relations: IndexMap<String, NamedRelation>,
    pub options: SessionOptions,
}

fn invalid(object: impl Into<String>, message: impl ToString) -> SessionError {
    SessionError::Validation { object: object.into(), message: message.to_string() }
}

fn load_group(record: &GroupRecord) -> Result<Group, SessionError> {
    let object = format!("group {}", record.name);
    let group = match &record.table {
        Some(table) => Group::from_table(table).map_err(|e| invalid(&object, e))?,
        None => named(&record.name).ok_or_else(|| invalid(&object, "no table and not a built-in group"))?,
    };
    if let Some(order) = record.order {
        if order != group.order() {
            return Err(invalid(&object, format!("declared order {order} but the table has order {}", group.order())));
        }
    }
    Ok(group)
}

pub fn parse_session(text: &str) -> Result<Session, SessionError> {
    let file: SessionFile = serde_json::from_str(text)
        .map_err(|e| SessionError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
    let base = Arc::new(load_group(&file.base)?);
    let base_name = file.base.name.clone();

    let mut groups = IndexMap::new();
    for record in &file.groups {
        if record.name == base_name || groups.contains_key(&record.name) {
            return Err(invalid(format!("group {}", record.name), "duplicate name"));
        }
        groups.insert(record.name.clone(), Arc::new(load_group(record)?));
    }

    let mut crossed_modules = IndexMap::new();
    for record in &file.crossed_modules {
        let object = format!("crossed module {}", record.name);
        if crossed_modules.contains_key(&record.name) {
            return Err(invalid(&object, "duplicate name"));
        }
        if let Some(b) = &record.base {
            if *b != base_name {
                return Err(invalid(&object, format!("base `{b}` is not the session base `{base_name}`")));
            }
        }
        let group = if record.group == base_name {
            base.clone()
        } else {
            groups
                .get(&record.group)
                .cloned()
                .ok_or_else(|| SessionError::Unresolved { object: object.clone(), name: record.group.clone() })?
        };
        let xm = CrossedModule::from_rows(group, base.clone(), record.boundary.clone(), &record.action)
            .map_err(|e| invalid(&object, e))?;
        crossed_modules.insert(record.name.clone(), NamedXMod { group: record.group.clone(), object: Arc::new(xm) });
    }

    let lookup = |object: &str, name: &str| {
        crossed_modules
            .get(name)
            .map(|x: &NamedXMod| x.object.clone())
            .ok_or_else(|| SessionError::Unresolved { object: object.to_string(), name: name.to_string() })
    };

    let mut morphisms = IndexMap::new();
    for record in &file.morphisms {
        let object = format!("morphism {}", record.name);
        if morphisms.contains_key(&record.name) {
            return Err(invalid(&object, "duplicate name"));
        }
        let (s, t) = (lookup(&object, &record.source)?, lookup(&object, &record.target)?);
        let f = XModMorphism::new(s, t, record.map.clone()).map_err(|e| invalid(&object, e))?;
        morphisms.insert(
            record.name.clone(),
            NamedMorphism { source: record.source.clone(), target: record.target.clone(), morphism: f },
        );
    }

    let mut relations = IndexMap::new();
    for record in &file.relations {
        let object = format!("relation {}", record.name);
        if relations.contains_key(&record.name) {
            return Err(invalid(&object, "duplicate name"));
        }
        let carrier = lookup(&object, &record.carrier)?;
        let rel = EquivalenceRelation::new(carrier, record.pairs.iter().copied()).map_err(|e| invalid(&object, e))?;
        relations.insert(record.name.clone(), NamedRelation { carrier: record.carrier.clone(), relation: rel });
    }

    Ok(Session { base_name, base, groups, crossed_modules, morphisms, relations, options: file.options })
}

fn group_record(name: &str, g: &Group) -> GroupRecord {
    GroupRecord { name: name.to_string(), order: Some(g.order()), table: Some(g.rows()) }
}

impl Session {
    /// A session with only the base group.
    pub fn empty(base_name: impl Into<String>, base: Arc<Group>) -> Self {
        Session {
            base_name: base_name.into(),
            base,
            groups: IndexMap::new(),
            crossed_modules: IndexMap::new(),
            morphisms: IndexMap::new(),
            relations: IndexMap::new(),
            options: SessionOptions::default(),
        }
    }

    pub fn crossed_module(&self, name: &str) -> Option<&Arc<CrossedModule>> {
        self.crossed_modules.get(name).map(|x| &x.object)
    }

    pub fn morphism(&self, name: &str) -> Option<&XModMorphism> {
        self.morphisms.get(name).map(|x| &x.morphism)
    }

    pub fn relation(&self, name: &str) -> Option<&EquivalenceRelation> {
        self.relations.get(name).map(|x| &x.relation)
    }

    pub fn to_json(&self) -> String {
        let file = SessionFile {
            base: group_record(&self.base_name, &self.base),
            groups: self.groups.iter().map(|(n, g)| group_record(n, g)).collect(),
            crossed_modules: self
                .crossed_modules
                .iter()
                .map(|(n, x)| XModRecord {
                    name: n.clone(),
                    group: x.group.clone(),
                    base: None,
                    boundary: x.object.boundary().to_vec(),
                    action: x.object.action_rows(),
                })
                .collect(),
            morphisms: self
                .morphisms
                .iter()
                .map(|(n, f)| MorphismRecord {
                    name: n.clone(),
                    source: f.source.clone(),
                    target: f.target.clone(),
                    map: f.morphism.map().to_vec(),
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|(n, r)| RelationRecord {
                    name: n.clone(),
                    carrier: r.carrier.clone(),
                    pairs: r.relation.pairs().iter().copied().collect(),
                })
                .collect(),
            options: self.options,
        };
        serde_json::to_string_pretty(&file).expect("session serializes")
    }
}
