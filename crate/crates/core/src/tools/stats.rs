use std::collections::BTreeSet;
use std::fmt;

use crate::rdf::{Graph, Iri, Term};
use crate::vocab::{builtin_ocedo, core, rdfs_closure, ExtensionModel};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct GraphStats {
    pub triples: usize,
    pub events: usize,
    pub objects: usize,
    /// Distinct asserted classes, other than oced:Event, on event nodes.
    pub event_classes: usize,
    /// Distinct asserted classes, other than oced:Object, on object nodes.
    pub object_classes: usize,
    pub object_relations: usize,
    pub event_attributes: usize,
}

impl fmt::Display for GraphStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "triples\t{}", self.triples)?;
        writeln!(f, "events\t{}", self.events)?;
        writeln!(f, "objects\t{}", self.objects)?;
        writeln!(f, "event_classes\t{}", self.event_classes)?;
        writeln!(f, "object_classes\t{}", self.object_classes)?;
        writeln!(f, "object_relations\t{}", self.object_relations)?;
        write!(f, "event_attributes\t{}", self.event_attributes)
    }
}

/// Counts over `g`. Typing is read from the RDFS closure of `g` with OCEDO
/// and, when given, the extension. Without an extension, object relations
/// are counted structurally: any non-type triple between two object nodes.
pub fn stats(g: &Graph, ext: Option<&ExtensionModel>) -> GraphStats {
    let v = core();
    let mut all = g.clone();
    all.extend_from(&builtin_ocedo().0);
    if let Some(ext) = ext {
        all.extend_from(ext.graph());
    }
    let closed = rdfs_closure(&all);

    let event: Term = v.event.clone().into();
    let object: Term = v.object.clone().into();
    let is_a = |x: &Term, c: &Term| closed.contains(x, &v.rdf_type, c);
    let below = |c: &Iri, root: &Term| closed.contains(&c.clone().into(), &v.sub_class_of, root);

    let events = closed.subjects(&v.rdf_type, &event).count();
    let objects = closed.subjects(&v.rdf_type, &object).count();

    let mut event_classes = BTreeSet::new();
    let mut object_classes = BTreeSet::new();
    for (x, c) in g.pairs(&v.rdf_type) {
        let Term::Iri(c) = c else { continue };
        if is_a(x, &event) && *c != v.event && below(c, &event) {
            event_classes.insert(c.clone());
        }
        if is_a(x, &object) && *c != v.object && below(c, &object) {
            object_classes.insert(c.clone());
        }
    }

    let event_attribute: Term = v.event_attribute.clone().into();
    let mut object_relations = 0;
    let mut event_attributes = 0;
    for t in g.iter() {
        let p = t.predicate();
        if *p == v.rdf_type {
            continue;
        }
        let pt: Term = p.clone().into();
        if *p == v.event_attribute || closed.contains(&pt, &v.sub_property_of, &event_attribute) {
            event_attributes += 1;
        }
        let relation = match ext {
            Some(ext) => ext.object_properties.get(p).is_some_and(|decl| {
                let anchored = |c: &Option<Iri>| c.as_ref().is_some_and(|c| *c == v.object || below(c, &object));
                anchored(&decl.domain) && anchored(&decl.range)
            }),
            None => is_a(t.subject(), &object) && is_a(t.object(), &object),
        };
        if relation {
            object_relations += 1;
        }
    }

    GraphStats {
        triples: g.len(),
        events,
        objects,
        event_classes: event_classes.len(),
        object_classes: object_classes.len(),
        object_relations,
        event_attributes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_graph() {
        assert_eq!(stats(&Graph::new(), None), GraphStats::default());
    }

    #[test]
    fn ontology_has_no_instances() {
        let (ocedo, _) = builtin_ocedo();
        let s = stats(&ocedo, None);
        assert_eq!((s.events, s.objects), (0, 0));
        assert_eq!(s.triples, ocedo.len());
    }
}
