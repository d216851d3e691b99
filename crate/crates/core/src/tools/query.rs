use std::collections::HashMap;
use std::fmt::Write as _;

use crate::rdf::turtle::{parse_pattern_line, term_to_turtle, PatternSlot, TurtleError};
use crate::rdf::{Graph, Iri, PrefixMap, Term};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    Var(String),
    Term(Term),
}

impl PatternTerm {
    pub fn var(name: &str) -> Self {
        PatternTerm::Var(name.trim_start_matches('?').to_owned())
    }
}

impl<T: Into<Term>> From<T> for PatternTerm {
    fn from(t: T) -> Self {
        PatternTerm::Term(t.into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(s: impl Into<PatternTerm>, p: impl Into<PatternTerm>, o: impl Into<PatternTerm>) -> Self {
        TriplePattern { subject: s.into(), predicate: p.into(), object: o.into() }
    }

    fn slots(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }
}

/// Query results. `rows[i][j]` binds `variables[j]`; variables are listed in
/// order of first appearance, rows sorted by their N-Triples rendering.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BindingSet {
    pub variables: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl BindingSet {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn get(&self, row: usize, var: &str) -> Option<&Term> {
        let col = self.variables.iter().position(|v| v == var)?;
        self.rows.get(row).map(|r| &r[col])
    }

    /// Tab-separated values with a `?var` header line.
    pub fn to_tsv(&self, prefixes: &PrefixMap) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.variables.iter().map(|v| format!("?{v}")).collect();
        out.push_str(&header.join("\t"));
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|t| term_to_turtle(t, prefixes)).collect();
            let _ = writeln!(out, "{}", cells.join("\t"));
        }
        out
    }
}

/// Parses one pattern per line. Blank lines and `#` comments are skipped.
pub fn parse_query(text: &str, prefixes: &PrefixMap) -> Result<Vec<TriplePattern>, TurtleError> {
    let mut patterns = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let slots = parse_pattern_line(line, prefixes).map_err(|mut e| {
            e.line = i + 1;
            e
        })?;
        let [s, p, o] = slots.map(|s| match s {
            PatternSlot::Var(v) => PatternTerm::Var(v),
            PatternSlot::Term(t) => PatternTerm::Term(t),
        });
        patterns.push(TriplePattern::new(s, p, o));
    }
    Ok(patterns)
}

type Partial = HashMap<String, Term>;

fn resolve<'a>(slot: &'a PatternTerm, bound: &'a Partial) -> Option<&'a Term> {
    match slot {
        PatternTerm::Term(t) => Some(t),
        PatternTerm::Var(v) => bound.get(v),
    }
}

/// Extends `bound` with `value` for `slot`; false on a clash.
fn unify(slot: &PatternTerm, value: &Term, bound: &mut Partial) -> bool {
    match slot {
        PatternTerm::Term(t) => t == value,
        PatternTerm::Var(v) => match bound.get(v) {
            Some(existing) => existing == value,
            None => {
                bound.insert(v.clone(), value.clone());
                true
            }
        },
    }
}

fn extend(g: &Graph, pattern: &TriplePattern, bound: &Partial, out: &mut Vec<Partial>) {
    let s = resolve(&pattern.subject, bound);
    let o = resolve(&pattern.object, bound);
    let p: Option<Iri> = match resolve(&pattern.predicate, bound) {
        Some(Term::Iri(i)) => Some(i.clone()),
        Some(_) => return,
        None => None,
    };
    if matches!(s, Some(Term::Literal(_))) {
        return;
    }
    for t in g.matching_unordered(s, p.as_ref(), o) {
        let mut next = bound.clone();
        if unify(&pattern.subject, t.subject(), &mut next)
            && unify(&pattern.predicate, &Term::Iri(t.predicate().clone()), &mut next)
            && unify(&pattern.object, t.object(), &mut next)
        {
            out.push(next);
        }
    }
}

/// Joins the patterns over `g`. Evaluation order is chosen greedily, most
/// constrained first; the result does not depend on it. An empty pattern
/// list yields the single empty solution.
pub fn bgp_query(g: &Graph, patterns: &[TriplePattern]) -> BindingSet {
    let mut variables: Vec<String> = Vec::new();
    for p in patterns {
        for slot in p.slots() {
            if let PatternTerm::Var(v) = slot {
                if !variables.contains(v) {
                    variables.push(v.clone());
                }
            }
        }
    }

    let mut remaining: Vec<&TriplePattern> = patterns.iter().collect();
    let mut solutions: Vec<Partial> = vec![Partial::new()];
    let mut known: Vec<&str> = Vec::new();
    while !remaining.is_empty() && !solutions.is_empty() {
        let score = |p: &TriplePattern| {
            p.slots()
                .iter()
                .filter(|s| match s {
                    PatternTerm::Term(_) => true,
                    PatternTerm::Var(v) => known.contains(&v.as_str()),
                })
                .count()
        };
        let (idx, _) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(i, p)| (score(p), std::cmp::Reverse(*i)))
            .expect("nonempty");
        let pattern = remaining.remove(idx);
        for slot in pattern.slots() {
            if let PatternTerm::Var(v) = slot {
                known.push(v);
            }
        }
        let mut next = Vec::new();
        for partial in &solutions {
            extend(g, pattern, partial, &mut next);
        }
        solutions = next;
    }

    let mut keyed: Vec<(Vec<String>, Vec<Term>)> = solutions
        .into_iter()
        .map(|mut s| {
            let row: Vec<Term> = variables.iter().map(|v| s.remove(v).expect("bound")).collect();
            (row.iter().map(Term::to_ntriples).collect(), row)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    keyed.dedup_by(|a, b| a.0 == b.0);
    BindingSet { variables, rows: keyed.into_iter().map(|(_, r)| r).collect() }
}
