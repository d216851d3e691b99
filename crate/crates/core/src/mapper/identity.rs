use std::fmt;

use sha1::{Digest, Sha1};

use super::Descriptor;
use crate::rdf::{Iri, Term};

/// Separator between the parts of a canonical identity string.
pub const UNIT_SEPARATOR: char = '\u{1F}';

/// A minted `event-e_` or `object-o_` IRI.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResourceId(Iri);

impl ResourceId {
    pub fn iri(&self) -> &Iri {
        &self.0
    }

    pub fn into_iri(self) -> Iri {
        self.0
    }

    /// The trailing 40 hex characters.
    pub fn digest_hex(&self) -> &str {
        let s = self.0.as_str();
        &s[s.len() - 40..]
    }
}

impl fmt::Display for ResourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0.as_str())
    }
}

impl From<ResourceId> for Term {
    fn from(id: ResourceId) -> Term {
        Term::Iri(id.0)
    }
}

pub(crate) fn sha1_hex(data: &str) -> String {
    format!("{:x}", Sha1::digest(data.as_bytes()))
}

/// `class␟k1=v1␟k2=v2…` with keys in the given order. `None` when `pairs`
/// is empty.
pub fn canonical_identity<K: AsRef<str>, V: AsRef<str>>(object_class: &str, pairs: &[(K, V)]) -> Option<String> {
    if pairs.is_empty() {
        return None;
    }
    let mut out = String::from(object_class);
    for (k, v) in pairs {
        out.push(UNIT_SEPARATOR);
        out.push_str(k.as_ref());
        out.push('=');
        out.push_str(v.as_ref());
    }
    Some(out)
}

fn mint(namespace: &Iri, kind: &str, canonical: &str) -> ResourceId {
    let iri = Iri::new(format!("{}{kind}{}", namespace.as_str(), sha1_hex(canonical)))
        .expect("namespace plus hex is a valid IRI");
    ResourceId(iri)
}

pub(crate) fn mint_object_iri_in<K: AsRef<str>, V: AsRef<str>>(
    namespace: &Iri,
    object_class: &str,
    pairs: &[(K, V)],
) -> Option<ResourceId> {
    canonical_identity(object_class, pairs).map(|c| mint(namespace, "object-o_", &c))
}

/// Object IRI from the SHA-1 of its canonical identity.
pub fn mint_object_iri<K: AsRef<str>, V: AsRef<str>>(
    d: &Descriptor,
    object_class: &str,
    pairs: &[(K, V)],
) -> Option<ResourceId> {
    mint_object_iri_in(&d.resource_namespace, object_class, pairs)
}

pub(crate) fn mint_event_iri_in(namespace: &Iri, source_name: &str, trace_index: usize, event_index: usize) -> ResourceId {
    let us = UNIT_SEPARATOR;
    mint(namespace, "event-e_", &format!("{source_name}{us}{trace_index}{us}{event_index}"))
}

/// Event IRI from its position, not its content.
pub fn mint_event_iri(d: &Descriptor, source_name: &str, trace_index: usize, event_index: usize) -> ResourceId {
    mint_event_iri_in(&d.resource_namespace, source_name, trace_index, event_index)
}
