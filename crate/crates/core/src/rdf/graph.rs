use std::collections::{HashMap, HashSet};

use super::term::{Iri, Term, Triple};
use super::RdfError;

type Nested<A, B, C> = HashMap<A, HashMap<B, HashSet<C>>>;

/// In-memory triple set with subject-, predicate- and object-first indexes.
///
/// Built by a single writer; once shared it is only read, so `&Graph` can
/// be handed to any number of threads.
#[derive(Clone, Default)]
pub struct Graph {
    spo: Nested<Term, Iri, Term>,
    pos: Nested<Iri, Term, Term>,
    osp: Nested<Term, Term, Iri>,
    len: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Inserts a triple, returning `false` when it was already present.
    pub fn insert(&mut self, triple: Triple) -> bool {
        let (s, p, o) = triple.into_parts();
        let fresh = self
            .spo
            .entry(s.clone())
            .or_default()
            .entry(p.clone())
            .or_default()
            .insert(o.clone());
        if !fresh {
            return false;
        }
        self.pos
            .entry(p.clone())
            .or_default()
            .entry(o.clone())
            .or_default()
            .insert(s.clone());
        self.osp.entry(o).or_default().entry(s).or_default().insert(p);
        self.len += 1;
        true
    }

    /// Validating insert from loose parts.
    pub fn add(&mut self, s: impl Into<Term>, p: Iri, o: impl Into<Term>) -> Result<bool, RdfError> {
        Ok(self.insert(Triple::new(s, p, o)?))
    }

    pub fn contains(&self, s: &Term, p: &Iri, o: &Term) -> bool {
        self.spo
            .get(s)
            .and_then(|m| m.get(p))
            .is_some_and(|objs| objs.contains(o))
    }

    pub fn contains_triple(&self, t: &Triple) -> bool {
        self.contains(t.subject(), t.predicate(), t.object())
    }

    pub fn extend_from(&mut self, other: &Graph) {
        for t in other.iter() {
            self.insert(t);
        }
    }

    /// All triples in unspecified order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.spo.iter().flat_map(|(s, preds)| {
            preds.iter().flat_map(move |(p, objs)| {
                objs.iter()
                    .map(move |o| Triple::new(s.clone(), p.clone(), o.clone()).expect("indexed subject"))
            })
        })
    }

    /// All triples ordered by their N-Triples rendering.
    pub fn triples_sorted(&self) -> Vec<Triple> {
        let mut all: Vec<Triple> = self.iter().collect();
        all.sort_by_cached_key(Triple::to_ntriples);
        all
    }

    /// Triples matching every bound slot, ordered by N-Triples rendering.
    pub fn matching(&self, s: Option<&Term>, p: Option<&Iri>, o: Option<&Term>) -> Vec<Triple> {
        let mut out = self.matching_unordered(s, p, o);
        out.sort_by_cached_key(Triple::to_ntriples);
        out
    }

    /// Same as [`Graph::matching`] without the sort.
    pub fn matching_unordered(&self, s: Option<&Term>, p: Option<&Iri>, o: Option<&Term>) -> Vec<Triple> {
        let mut out = Vec::new();
        let mk = |s: &Term, p: &Iri, o: &Term| Triple::new(s.clone(), p.clone(), o.clone()).expect("indexed subject");
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                if self.contains(s, p, o) {
                    out.push(mk(s, p, o));
                }
            }
            (Some(s), Some(p), None) => {
                if let Some(objs) = self.spo.get(s).and_then(|m| m.get(p)) {
                    out.extend(objs.iter().map(|o| mk(s, p, o)));
                }
            }
            (Some(s), None, Some(o)) => {
                if let Some(preds) = self.osp.get(o).and_then(|m| m.get(s)) {
                    out.extend(preds.iter().map(|p| mk(s, p, o)));
                }
            }
            (Some(s), None, None) => {
                if let Some(preds) = self.spo.get(s) {
                    for (p, objs) in preds {
                        out.extend(objs.iter().map(|o| mk(s, p, o)));
                    }
                }
            }
            (None, Some(p), Some(o)) => {
                if let Some(subs) = self.pos.get(p).and_then(|m| m.get(o)) {
                    out.extend(subs.iter().map(|s| mk(s, p, o)));
                }
            }
            (None, Some(p), None) => {
                if let Some(objs) = self.pos.get(p) {
                    for (o, subs) in objs {
                        out.extend(subs.iter().map(|s| mk(s, p, o)));
                    }
                }
            }
            (None, None, Some(o)) => {
                if let Some(subs) = self.osp.get(o) {
                    for (s, preds) in subs {
                        out.extend(preds.iter().map(|p| mk(s, p, o)));
                    }
                }
            }
            (None, None, None) => out.extend(self.iter()),
        }
        out
    }

    /// Objects of `(s, p, ?)`.
    pub fn objects<'a>(&'a self, s: &Term, p: &Iri) -> impl Iterator<Item = &'a Term> + 'a {
        self.spo
            .get(s)
            .and_then(|m| m.get(p))
            .into_iter()
            .flat_map(|set| set.iter())
    }

    /// Subjects of `(?, p, o)`.
    pub fn subjects<'a>(&'a self, p: &Iri, o: &Term) -> impl Iterator<Item = &'a Term> + 'a {
        self.pos
            .get(p)
            .and_then(|m| m.get(o))
            .into_iter()
            .flat_map(|set| set.iter())
    }

    /// `(subject, object)` pairs for one predicate.
    pub fn pairs<'a>(&'a self, p: &Iri) -> impl Iterator<Item = (&'a Term, &'a Term)> + 'a {
        self.pos
            .get(p)
            .into_iter()
            .flat_map(|m| m.iter().flat_map(|(o, subs)| subs.iter().map(move |s| (s, o))))
    }

    pub fn distinct_subjects(&self) -> impl Iterator<Item = &Term> + '_ {
        self.spo.keys()
    }

    pub fn distinct_predicates(&self) -> impl Iterator<Item = &Iri> + '_ {
        self.pos.keys()
    }

    /// Number of triples with predicate `p`.
    pub fn count_predicate(&self, p: &Iri) -> usize {
        self.pos
            .get(p)
            .map(|m| m.values().map(HashSet::len).sum())
            .unwrap_or(0)
    }

    /// Checks that all three indexes describe the same triple set.
    #[doc(hidden)]
    pub fn indexes_consistent(&self) -> bool {
        let from_spo: HashSet<(Term, Iri, Term)> = self
            .spo
            .iter()
            .flat_map(|(s, m)| m.iter().flat_map(move |(p, os)| os.iter().map(move |o| (s.clone(), p.clone(), o.clone()))))
            .collect();
        let from_pos: HashSet<(Term, Iri, Term)> = self
            .pos
            .iter()
            .flat_map(|(p, m)| m.iter().flat_map(move |(o, ss)| ss.iter().map(move |s| (s.clone(), p.clone(), o.clone()))))
            .collect();
        let from_osp: HashSet<(Term, Iri, Term)> = self
            .osp
            .iter()
            .flat_map(|(o, m)| m.iter().flat_map(move |(s, ps)| ps.iter().map(move |p| (s.clone(), p.clone(), o.clone()))))
            .collect();
        from_spo.len() == self.len && from_spo == from_pos && from_pos == from_osp
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.len == other.len && self.iter().all(|t| other.contains_triple(&t))
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.triples_sorted()).finish()
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut g = Graph::new();
        for t in iter {
            g.insert(t);
        }
        g
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        for t in iter {
            self.insert(t);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::term::{Literal, XSD_DATE_TIME};
    use proptest::prelude::*;

    fn iri(s: &str) -> Iri {
        Iri::new(format!("http://ex.org/{s}")).unwrap()
    }

    #[test]
    fn set_semantics() {
        let mut g = Graph::new();
        let ts = Literal::typed("2012-05-11T01:26:15+02:00", Iri::new(XSD_DATE_TIME).unwrap()).unwrap();
        let observed_at = Iri::new("https://w3id.org/ocedo/core#observed_at").unwrap();
        assert!(g.add(iri("ev1"), observed_at.clone(), ts.clone()).unwrap());
        assert_eq!(g.len(), 1);
        assert!(!g.add(iri("ev1"), observed_at.clone(), ts).unwrap());
        assert_eq!(g.len(), 1);
        assert_eq!(g.matching(Some(&iri("ev1").into()), Some(&observed_at), None).len(), 1);
    }

    #[test]
    fn literal_subject_is_an_error() {
        let mut g = Graph::new();
        assert!(g.add(Literal::string("x"), iri("p"), iri("o")).is_err());
        assert!(g.is_empty());
    }

    #[test]
    fn empty_match() {
        assert!(Graph::new().matching(None, None, None).is_empty());
    }

    #[test]
    fn match_is_sorted() {
        let mut g = Graph::new();
        for s in ["c", "a", "b"] {
            g.add(iri(s), iri("p"), Literal::string(s)).unwrap();
        }
        let got: Vec<String> = g.matching(None, None, None).iter().map(Triple::to_ntriples).collect();
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(got, sorted);
    }

    fn arb_triple() -> impl Strategy<Value = Triple> {
        (0u8..12, 0u8..4, 0u8..14, any::<bool>()).prop_map(|(s, p, o, lit)| {
            let obj: Term = if lit {
                Literal::string(format!("v{o}")).into()
            } else {
                iri(&format!("n{o}")).into()
            };
            Triple::new(iri(&format!("n{s}")), iri(&format!("p{p}")), obj).unwrap()
        })
    }

    proptest! {
        #[test]
        fn match_agrees_with_linear_scan(
            triples in prop::collection::vec(arb_triple(), 0..500),
            s in prop::option::of(0u8..12),
            p in prop::option::of(0u8..4),
            o in prop::option::of(0u8..14),
        ) {
            let g: Graph = triples.iter().cloned().collect();
            prop_assert!(g.indexes_consistent());
            let s = s.map(|i| Term::from(iri(&format!("n{i}"))));
            let p = p.map(|i| iri(&format!("p{i}")));
            let o = o.map(|i| Term::from(iri(&format!("n{i}"))));
            let got = g.matching(s.as_ref(), p.as_ref(), o.as_ref());
            let mut want: Vec<Triple> = triples
                .iter()
                .filter(|t| s.as_ref().is_none_or(|s| t.subject() == s)
                    && p.as_ref().is_none_or(|p| t.predicate() == p)
                    && o.as_ref().is_none_or(|o| t.object() == o))
                .cloned()
                .collect::<std::collections::HashSet<_>>()
                .into_iter()
                .collect();
            want.sort_by_cached_key(Triple::to_ntriples);
            prop_assert_eq!(got, want);
        }
    }
}
