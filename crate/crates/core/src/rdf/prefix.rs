use super::term::Iri;
use super::RdfError;

/// Ordered prefix → namespace bindings.
///
/// Registration order is preserved and drives the order of `@prefix`
/// directives on output. Re-registering a prefix rebinds it in place.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PrefixMap {
    entries: Vec<(String, Iri)>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, prefix: impl Into<String>, namespace: Iri) -> Result<(), RdfError> {
        let prefix = prefix.into();
        if !is_prefix_name(&prefix) {
            return Err(RdfError::InvalidPrefix(prefix));
        }
        match self.entries.iter_mut().find(|(p, _)| *p == prefix) {
            Some(entry) => entry.1 = namespace,
            None => self.entries.push((prefix, namespace)),
        }
        Ok(())
    }

    /// Adds every binding of `other` whose prefix is not yet registered.
    pub fn merge(&mut self, other: &PrefixMap) {
        for (p, ns) in &other.entries {
            if self.get(p).is_none() {
                self.entries.push((p.clone(), ns.clone()));
            }
        }
    }

    pub fn get(&self, prefix: &str) -> Option<&Iri> {
        self.entries.iter().find(|(p, _)| p == prefix).map(|(_, ns)| ns)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Iri)> {
        self.entries.iter().map(|(p, ns)| (p.as_str(), ns))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Expands `prefix:local` to a full IRI.
    pub fn expand(&self, curie: &str) -> Result<Iri, RdfError> {
        let (prefix, local) = curie
            .split_once(':')
            .ok_or_else(|| RdfError::NotACurie(curie.to_owned()))?;
        let ns = self
            .get(prefix)
            .ok_or_else(|| RdfError::UnknownPrefix(prefix.to_owned()))?;
        Iri::new(format!("{}{}", ns.as_str(), local))
    }

    /// Shortest CURIE for `iri`, if some namespace covers it with a local
    /// part that is a plain Turtle local name. Longest namespace wins; ties
    /// go to the earliest registration.
    pub fn compress(&self, iri: &Iri) -> Option<String> {
        let mut best: Option<(&str, &str)> = None;
        for (prefix, ns) in &self.entries {
            if let Some(local) = iri.as_str().strip_prefix(ns.as_str()) {
                if is_plain_local(local) && best.is_none_or(|(_, l)| local.len() < l.len()) {
                    best = Some((prefix, local));
                }
            }
        }
        best.map(|(p, l)| format!("{p}:{l}"))
    }
}

pub(crate) fn is_prefix_name(p: &str) -> bool {
    let mut chars = p.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphabetic() => {
            p.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')) && !p.ends_with('.')
        }
        _ => false,
    }
}

/// Local names emitted without escapes: `[A-Za-z0-9_]` first, then
/// `[A-Za-z0-9_.-]`, not ending in `.`.
pub(crate) fn is_plain_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.')) && !local.ends_with('.')
        }
        _ => false,
    }
}
