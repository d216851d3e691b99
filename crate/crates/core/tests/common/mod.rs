#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};
use std::fmt::Write as _;

use oced_forge::mapper::{parse_descriptor, Descriptor};
use oced_forge::rdf::{BlankNode, Graph, Iri, Literal, PrefixMap, Term, Triple};
use oced_forge::tools::{PatternTerm, TriplePattern};
use oced_forge::vocab::{
    load_ocedd, standard_prefixes, ExtensionModel, BPIC2013_DESCRIPTOR_CSV, BPIC2013_OCEDD_TTL,
};
use rand::seq::IndexedRandom;
use rand::Rng;

pub const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
pub const RDFS: &str = "http://www.w3.org/2000/01/rdf-schema#";
pub const XSD: &str = "http://www.w3.org/2001/XMLSchema#";
pub const EXT: &str = "https://w3id.org/ocedo/ext/bpic2013#";

pub fn iri(s: &str) -> Iri {
    Iri::new(s).unwrap()
}

pub fn bpic2013() -> (ExtensionModel, Descriptor) {
    let ext = load_ocedd(BPIC2013_OCEDD_TTL).unwrap();
    let mut pm = standard_prefixes();
    pm.merge(&ext.prefixes);
    let d = parse_descriptor(BPIC2013_DESCRIPTOR_CSV, &pm).unwrap();
    (ext, d)
}

// ---------------------------------------------------------------- graphs

pub fn roundtrip_prefixes() -> PrefixMap {
    let mut pm = PrefixMap::new();
    for (p, n) in [
        ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
        ("xsd", XSD),
        ("ex", "http://ex.org/"),
        ("o", "http://other.example/ns#"),
        ("", "http://default.example/"),
    ] {
        pm.insert(p, iri(n)).unwrap();
    }
    pm
}

const LOCALS: &[&str] = &[
    "a", "b", "Thing", "x1", "1starts_with_digit", "has.dot", "ends.", "dash-ed", "under_score", "_lead",
    "pct%20", "caf\u{e9}", "", "a.b.c", "q'x", "semi;colon", "hash#tag", "slash/ed", "\u{4e2d}\u{6587}",
];

const NAMESPACES: &[&str] = &[
    "http://ex.org/",
    "http://other.example/ns#",
    "http://default.example/",
    "urn:uuid:",
    "https://unbound.example/path/",
    "http://ex.org/nested/",
];

fn random_iri(rng: &mut impl Rng) -> Iri {
    let ns = NAMESPACES.choose(rng).unwrap();
    let local = LOCALS.choose(rng).unwrap();
    if local.is_empty() && rng.random_bool(0.5) {
        return iri(ns);
    }
    iri(&format!("{ns}{local}"))
}

fn random_text(rng: &mut impl Rng) -> String {
    const PIECES: &[&str] = &[
        "plain", " ", "\"", "'", "\\", "\n", "\r", "\t", "\u{1}", "\u{7f}", "\u{e9}", "\u{1F600}", "\"\"\"", "#",
        "@en", "^^", "<x>", "", "_:b", ".", ";", ",",
    ];
    let n = rng.random_range(0..6);
    (0..n).map(|_| *PIECES.choose(rng).unwrap()).collect()
}

fn random_literal(rng: &mut impl Rng) -> Literal {
    let xsd = |local: &str| iri(&format!("{XSD}{local}"));
    match rng.random_range(0..9) {
        0 | 1 => Literal::string(random_text(rng)),
        2 => {
            let tag = ["en", "en-US", "de-CH-1996", "fr", "x-private"].choose(rng).unwrap();
            Literal::lang(random_text(rng), tag).unwrap()
        }
        3 => {
            let lex = ["0", "-7", "+5", "007", "123456789012345678901234567890"].choose(rng).unwrap();
            Literal::typed(lex, xsd("integer")).unwrap()
        }
        4 => Literal::typed(["1.50", "-0.0", ".5", "3."].choose(rng).unwrap(), xsd("decimal")).unwrap(),
        5 => Literal::typed(["1e10", "-2.5E-3", "INF", "NaN"].choose(rng).unwrap(), xsd("double")).unwrap(),
        6 => Literal::typed(["true", "false", "1"].choose(rng).unwrap(), xsd("boolean")).unwrap(),
        7 => {
            let lex = ["2012-05-11T01:26:15+02:00", "1999-12-31T23:59:59.123Z", "2020-02-29T00:00:00-05:30"]
                .choose(rng)
                .unwrap();
            Literal::typed(lex, xsd("dateTime")).unwrap()
        }
        _ => Literal::typed(random_text(rng), random_iri(rng)).unwrap(),
    }
}

fn random_blank(rng: &mut impl Rng) -> BlankNode {
    BlankNode::new(format!("b{}", rng.random_range(0..8))).unwrap()
}

fn random_subject(rng: &mut impl Rng) -> Term {
    if rng.random_bool(0.2) {
        Term::Blank(random_blank(rng))
    } else {
        Term::Iri(random_iri(rng))
    }
}

fn random_object(rng: &mut impl Rng) -> Term {
    match rng.random_range(0..10) {
        0..=3 => Term::Iri(random_iri(rng)),
        4 => Term::Blank(random_blank(rng)),
        _ => Term::Literal(random_literal(rng)),
    }
}

/// A graph of up to `max` triples mixing every term form the serializer
/// handles.
pub fn random_graph(rng: &mut impl Rng, max: usize) -> Graph {
    let n = rng.random_range(0..=max);
    let mut g = Graph::new();
    for _ in 0..n {
        let p = if rng.random_bool(0.15) { iri(RDF_TYPE) } else { random_iri(rng) };
        g.insert(Triple::new(random_subject(rng), p, random_object(rng)).unwrap());
    }
    g
}

// ---------------------------------------------------------------- reasoner

/// 20 vocabulary terms plus the schema predicates, with random axioms.
pub fn random_schema_graph(rng: &mut impl Rng, max: usize) -> Graph {
    let vocab: Vec<Iri> = (0..20).map(|i| iri(&format!("http://v.example/t{i}"))).collect();
    let schema: Vec<Iri> = ["subClassOf", "subPropertyOf", "domain", "range"]
        .iter()
        .map(|l| iri(&format!("{RDFS}{l}")))
        .chain([iri(RDF_TYPE)])
        .collect();
    let n = rng.random_range(0..=max);
    let mut g = Graph::new();
    for _ in 0..n {
        let s = vocab.choose(rng).unwrap().clone();
        let p = if rng.random_bool(0.5) { schema.choose(rng).unwrap() } else { vocab.choose(rng).unwrap() }.clone();
        let o: Term = if rng.random_bool(0.1) {
            Literal::string(format!("l{}", rng.random_range(0..3))).into()
        } else if rng.random_bool(0.05) {
            BlankNode::new(format!("n{}", rng.random_range(0..3))).unwrap().into()
        } else {
            vocab.choose(rng).unwrap().clone().into()
        };
        g.insert(Triple::new(s, p, o).unwrap());
    }
    g
}

/// Applies every rule to every combination of triples until nothing new
/// appears. Deliberately naive: no indexes, no work queue.
pub fn naive_closure(g: &Graph) -> HashSet<Triple> {
    let sc = iri(&format!("{RDFS}subClassOf"));
    let sp = iri(&format!("{RDFS}subPropertyOf"));
    let dom = iri(&format!("{RDFS}domain"));
    let rng = iri(&format!("{RDFS}range"));
    let ty = iri(RDF_TYPE);
    let mut set: HashSet<Triple> = g.iter().collect();
    loop {
        let all: Vec<Triple> = set.iter().cloned().collect();
        let mut new = Vec::new();
        for a in &all {
            for b in &all {
                let (s1, p1, o1) = (a.subject(), a.predicate(), a.object());
                let (s2, p2, o2) = (b.subject(), b.predicate(), b.object());
                if *p1 == sc && *p2 == sc && o1 == s2 {
                    new.push(Triple::new(s1.clone(), sc.clone(), o2.clone()));
                }
                if *p1 == ty && *p2 == sc && o1 == s2 {
                    new.push(Triple::new(s1.clone(), ty.clone(), o2.clone()));
                }
                if *p1 == sp && *p2 == sp && o1 == s2 {
                    new.push(Triple::new(s1.clone(), sp.clone(), o2.clone()));
                }
                if *p2 == sp && s2 == &Term::Iri(p1.clone()) {
                    if let Term::Iri(q) = o2 {
                        new.push(Triple::new(s1.clone(), q.clone(), o1.clone()));
                    }
                }
                if *p1 == dom && s1 == &Term::Iri(p2.clone()) {
                    new.push(Triple::new(s2.clone(), ty.clone(), o1.clone()));
                }
                if *p1 == rng && s1 == &Term::Iri(p2.clone()) && !o2.is_literal() {
                    new.push(Triple::new(o2.clone(), ty.clone(), o1.clone()));
                }
            }
        }
        let before = set.len();
        set.extend(new.into_iter().filter_map(Result::ok));
        if set.len() == before {
            return set;
        }
    }
}

// ---------------------------------------------------------------- queries

pub fn random_query_graph(rng: &mut impl Rng, max: usize) -> Graph {
    let nodes: Vec<Term> = (0..8).map(|i| Term::Iri(iri(&format!("http://q.example/n{i}")))).collect();
    let preds: Vec<Iri> = (0..3).map(|i| iri(&format!("http://q.example/p{i}"))).collect();
    let n = rng.random_range(0..=max);
    let mut g = Graph::new();
    for _ in 0..n {
        let o = if rng.random_bool(0.15) {
            Literal::string(format!("v{}", rng.random_range(0..3))).into()
        } else {
            nodes.choose(rng).unwrap().clone()
        };
        g.insert(Triple::new(nodes.choose(rng).unwrap().clone(), preds.choose(rng).unwrap().clone(), o).unwrap());
    }
    g
}

pub fn random_bgp(rng: &mut impl Rng, max_patterns: usize) -> Vec<TriplePattern> {
    fn slot(rng: &mut impl Rng, position: usize) -> PatternTerm {
        if rng.random_bool(0.6) {
            PatternTerm::var(["a", "b", "c"].choose(rng).unwrap())
        } else if position == 1 {
            iri(&format!("http://q.example/p{}", rng.random_range(0..3))).into()
        } else if position == 2 && rng.random_bool(0.2) {
            Literal::string(format!("v{}", rng.random_range(0..3))).into()
        } else {
            iri(&format!("http://q.example/n{}", rng.random_range(0..8))).into()
        }
    }
    let n = rng.random_range(1..=max_patterns);
    (0..n)
        .map(|_| {
            let s = slot(rng, 0);
            let p = slot(rng, 1);
            let o = slot(rng, 2);
            TriplePattern { subject: s, predicate: p, object: o }
        })
        .collect()
}

/// Reference join: match each pattern independently against a full scan,
/// then nested loops over the per-pattern results. Rows are returned as
/// N-Triples strings in the order of `vars`.
pub fn nested_loop_join(g: &Graph, patterns: &[TriplePattern], vars: &[String]) -> BTreeSet<Vec<String>> {
    type Binding = Vec<(String, Term)>;
    let bind = |slot: &PatternTerm, value: &Term, b: &mut Binding| -> bool {
        match slot {
            PatternTerm::Term(t) => t == value,
            PatternTerm::Var(v) => match b.iter().find(|(n, _)| n == v) {
                Some((_, existing)) => existing == value,
                None => {
                    b.push((v.clone(), value.clone()));
                    true
                }
            },
        }
    };
    let per_pattern: Vec<Vec<Binding>> = patterns
        .iter()
        .map(|p| {
            g.matching(None, None, None)
                .into_iter()
                .filter_map(|t| {
                    let mut b = Binding::new();
                    let ok = bind(&p.subject, t.subject(), &mut b)
                        && bind(&p.predicate, &Term::Iri(t.predicate().clone()), &mut b)
                        && bind(&p.object, t.object(), &mut b);
                    ok.then_some(b)
                })
                .collect()
        })
        .collect();

    let mut out = BTreeSet::new();
    let mut stack: Vec<(usize, Binding)> = vec![(0, Binding::new())];
    while let Some((depth, acc)) = stack.pop() {
        if depth == per_pattern.len() {
            let row = vars
                .iter()
                .map(|v| acc.iter().find(|(n, _)| n == v).unwrap().1.to_ntriples())
                .collect();
            out.insert(row);
            continue;
        }
        for candidate in &per_pattern[depth] {
            let mut merged = acc.clone();
            if candidate.iter().all(|(n, t)| bind(&PatternTerm::Var(n.clone()), t, &mut merged)) {
                stack.push((depth + 1, merged));
            }
        }
    }
    out
}

// ---------------------------------------------------------------- logs

const ACTIVITIES: &[(&str, &str)] = &[
    ("Accepted", "In Progress"),
    ("Queued", "Awaiting Assignment"),
    ("Completed", "Resolved"),
    ("Completed", "Closed"),
];

/// One `<trace>` element of a synthetic BPIC-2013-shaped log.
///
/// Team members are `TM{(trace*events + e) % members}`, each working in team
/// `member % teams`; the trace's product is `trace % products`.
pub fn synthetic_trace(
    trace: usize,
    name: &str,
    events: usize,
    members: usize,
    teams: usize,
    products: usize,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "  <trace>\n    <string key=\"concept:name\" value=\"{name}\"/>");
    for e in 0..events {
        let (activity, transition) = ACTIVITIES[(trace + e) % ACTIVITIES.len()];
        let member = (trace * events + e) % members;
        let minute = (trace * events + e) % (24 * 60);
        let _ = write!(
            out,
            "    <event>\n      <string key=\"concept:name\" value=\"{activity}\"/>\n      \
             <string key=\"lifecycle:transition\" value=\"{transition}\"/>\n      \
             <string key=\"org:resource\" value=\"TM{member}\"/>\n      \
             <string key=\"org:group\" value=\"Team{}\"/>\n      \
             <string key=\"product\" value=\"PROD{}\"/>\n      \
             <string key=\"impact\" value=\"Medium\"/>\n      \
             <date key=\"time:timestamp\" value=\"2012-{:02}-{:02}T{:02}:{:02}:00+02:00\"/>\n    </event>\n",
            member % teams,
            trace % products,
            1 + trace % 12,
            1 + e % 28,
            minute / 60,
            minute % 60,
        );
    }
    out.push_str("  </trace>\n");
    out
}

pub fn wrap_log(traces: &[String]) -> String {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<log xes.version=\"1849-2016\">\n");
    for t in traces {
        out.push_str(t);
    }
    out.push_str("</log>\n");
    out
}
