use std::fmt;

use crate::rdf::{Iri, PrefixMap};
use crate::vocab::{core, ns};

const HEADER: [&str; 6] = ["directive", "group", "source", "target", "datatype", "extra"];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub struct DescriptorError {
    /// 1-based CSV line, absent for whole-file problems.
    pub line: Option<u64>,
    pub message: String,
}

impl fmt::Display for DescriptorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Event,
    Trace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventTypeRule {
    /// Every `(key, value)` must equal the event attribute's raw value.
    pub matches: Vec<(String, String)>,
    pub class: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttributeRule {
    pub source: String,
    pub property: Iri,
    pub datatype: Iri,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectGroup {
    pub id: String,
    pub class: Iri,
    /// The class as written, used verbatim in canonical identities.
    pub class_curie: String,
    pub link: Option<Iri>,
    pub identity_keys: Vec<String>,
    pub attributes: Vec<AttributeRule>,
    pub scope: Scope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObjectRelationRule {
    pub from_group: String,
    pub to_group: String,
    pub property: Iri,
}

/// How XES keys map onto an extension's classes and properties.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descriptor {
    pub resource_namespace: Iri,
    pub event_type_rules: Vec<EventTypeRule>,
    pub timestamp_key: Option<String>,
    pub event_attribute_rules: Vec<AttributeRule>,
    /// In declaration order; ids are unique.
    pub object_groups: Vec<ObjectGroup>,
    pub object_relations: Vec<ObjectRelationRule>,
}

impl Descriptor {
    pub fn group(&self, id: &str) -> Option<&ObjectGroup> {
        self.object_groups.iter().find(|g| g.id == id)
    }
}

/// Parses a descriptor. CURIEs resolve against `prefixes`, normally the
/// union of the OCEDO and extension prefixes.
pub fn parse_descriptor(text: &str, prefixes: &PrefixMap) -> Result<Descriptor, DescriptorError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(false)
        .from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| csv_error(&e))?.clone();
    if header.iter().ne(HEADER.iter().copied()) {
        return Err(DescriptorError {
            line: Some(1),
            message: format!("header must be exactly `{}`", HEADER.join(",")),
        });
    }

    let mut d = Descriptor {
        resource_namespace: Iri::new(ns::RES).expect("static namespace"),
        event_type_rules: Vec::new(),
        timestamp_key: None,
        event_attribute_rules: Vec::new(),
        object_groups: Vec::new(),
        object_relations: Vec::new(),
    };
    let mut namespace_seen = false;

    for record in reader.records() {
        let record = record.map_err(|e| csv_error(&e))?;
        let line = record.position().map(|p| p.line());
        let err = |message: String| DescriptorError { line, message };
        let field = |i: usize| record.get(i).unwrap_or("").trim();
        let (directive, group, source, target, datatype, extra) =
            (field(0), field(1), field(2), field(3), field(4), record.get(5).unwrap_or(""));
        let resolve = |what: &str, text: &str| -> Result<Iri, DescriptorError> {
            if text.is_empty() {
                return Err(err(format!("{directive}: missing {what}")));
            }
            resolve_curie(text, prefixes).map_err(|m| err(format!("{directive}: {what} {m}")))
        };
        let datatype_or_string = |text: &str| -> Result<Iri, DescriptorError> {
            if text.is_empty() {
                Ok(core().xsd_string.clone())
            } else {
                resolve("datatype", text)
            }
        };

        match directive {
            "namespace" => {
                if namespace_seen {
                    return Err(err("namespace declared twice".into()));
                }
                namespace_seen = true;
                d.resource_namespace =
                    Iri::new(target).map_err(|e| err(format!("namespace: {e}")))?;
            }
            "timestamp" => {
                if d.timestamp_key.is_some() {
                    return Err(err("timestamp declared twice".into()));
                }
                if source.is_empty() {
                    return Err(err("timestamp: missing source key".into()));
                }
                d.timestamp_key = Some(source.to_owned());
            }
            "event_type" => {
                let class = resolve("target", target)?;
                let matches = parse_match(extra).map_err(err)?;
                d.event_type_rules.push(EventTypeRule { matches, class });
            }
            "event_attr" => {
                if source.is_empty() {
                    return Err(err("event_attr: missing source key".into()));
                }
                d.event_attribute_rules.push(AttributeRule {
                    source: source.to_owned(),
                    property: resolve("target", target)?,
                    datatype: datatype_or_string(datatype)?,
                });
            }
            "object" => {
                if group.is_empty() {
                    return Err(err("object: missing group".into()));
                }
                if d.group(group).is_some() {
                    return Err(err(format!("object group {group:?} declared twice")));
                }
                let class = resolve("target", target)?;
                let link = if source.is_empty() { None } else { Some(resolve("source", source)?) };
                d.object_groups.push(ObjectGroup {
                    id: group.to_owned(),
                    class,
                    class_curie: target.to_owned(),
                    link,
                    identity_keys: Vec::new(),
                    attributes: Vec::new(),
                    scope: parse_scope(extra).map_err(err)?,
                });
            }
            "identity" | "object_attr" => {
                let Some(g) = d.object_groups.iter_mut().find(|g| g.id == group) else {
                    return Err(err(format!("{directive} for undeclared group {group:?}")));
                };
                if source.is_empty() {
                    return Err(err(format!("{directive}: missing source key")));
                }
                if directive == "identity" {
                    if g.identity_keys.iter().any(|k| k == source) {
                        return Err(err(format!("identity key {source:?} repeated")));
                    }
                    g.identity_keys.push(source.to_owned());
                } else {
                    g.attributes.push(AttributeRule {
                        source: source.to_owned(),
                        property: resolve("target", target)?,
                        datatype: datatype_or_string(datatype)?,
                    });
                }
            }
            "object_rel" => {
                for id in [group, source] {
                    if d.group(id).is_none() {
                        return Err(err(format!("object_rel refers to undeclared group {id:?}")));
                    }
                }
                d.object_relations.push(ObjectRelationRule {
                    from_group: group.to_owned(),
                    to_group: source.to_owned(),
                    property: resolve("target", target)?,
                });
            }
            other => return Err(err(format!("unknown directive {other:?}"))),
        }
    }

    if let Some(g) = d.object_groups.iter().find(|g| g.identity_keys.is_empty()) {
        return Err(DescriptorError {
            line: None,
            message: format!("object group {:?} has no identity keys", g.id),
        });
    }
    if d.event_type_rules.is_empty() && d.timestamp_key.is_none() {
        return Err(DescriptorError {
            line: None,
            message: "descriptor has no event_type rule and no timestamp".into(),
        });
    }
    Ok(d)
}

fn csv_error(e: &csv::Error) -> DescriptorError {
    DescriptorError {
        line: e.position().map(|p| p.line()),
        message: format!("malformed CSV: {e}"),
    }
}

fn resolve_curie(text: &str, prefixes: &PrefixMap) -> Result<Iri, String> {
    if let Some(inner) = text.strip_prefix('<').and_then(|t| t.strip_suffix('>')) {
        return Iri::new(inner).map_err(|e| e.to_string());
    }
    prefixes.expand(text).map_err(|e| format!("{text:?}: {e}"))
}

fn parse_match(extra: &str) -> Result<Vec<(String, String)>, String> {
    if extra.trim().is_empty() {
        return Ok(Vec::new());
    }
    extra
        .split('|')
        .map(|pair| match pair.split_once('=') {
            Some((k, v)) if !k.trim().is_empty() => Ok((k.trim().to_owned(), v.to_owned())),
            _ => Err(format!("event_type: bad match entry {pair:?}, expected key=value")),
        })
        .collect()
}

fn parse_scope(extra: &str) -> Result<Scope, String> {
    match extra.trim() {
        "" | "scope=event" => Ok(Scope::Event),
        "scope=trace" => Ok(Scope::Trace),
        other => Err(format!("object: bad extra {other:?}, expected scope=event or scope=trace")),
    }
}
