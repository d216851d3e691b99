//! RDFS-lite forward chaining.
//!
//! | rule | premises                              | conclusion            |
//! |------|---------------------------------------|-----------------------|
//! | R1   | `A sc B`, `B sc C`                    | `A sc C`              |
//! | R2   | `x type A`, `A sc B`                  | `x type B`            |
//! | R3   | `p sp q`, `q sp r`                    | `p sp r`              |
//! | R4   | `x p y`, `p sp q`                     | `x q y`               |
//! | R5   | `p domain C`, `x p y`                 | `x type C`            |
//! | R6   | `p range C`, `x p y`, `y` not literal | `y type C`            |
//!
//! Evaluation is semi-naive: every triple enters a work queue exactly once
//! and is joined against everything derived so far, in each premise role it
//! can play. Since the output vocabulary is that of the input, the queue
//! drains after finitely many steps.

use std::collections::VecDeque;

use super::core;
use crate::rdf::{Graph, Iri, Term, Triple};

/// Least fixpoint of R1–R6 over `input`. Input triples are kept.
pub fn rdfs_closure(input: &Graph) -> Graph {
    let v = core();
    let mut graph = input.clone();
    let mut queue: VecDeque<Triple> = input.iter().collect();
    let mut derived: Vec<(Term, Iri, Term)> = Vec::new();

    while let Some(t) = queue.pop_front() {
        derived.clear();
        let (s, p, o) = (t.subject(), t.predicate(), t.object());
        let p_term = Term::Iri(p.clone());

        if *p == v.sub_class_of {
            // R1, t as either premise.
            for x in graph.subjects(&v.sub_class_of, s) {
                derived.push((x.clone(), v.sub_class_of.clone(), o.clone()));
            }
            for z in graph.objects(o, &v.sub_class_of) {
                derived.push((s.clone(), v.sub_class_of.clone(), z.clone()));
            }
            // R2, t as the subclass axiom.
            for x in graph.subjects(&v.rdf_type, s) {
                derived.push((x.clone(), v.rdf_type.clone(), o.clone()));
            }
        }
        if *p == v.rdf_type {
            // R2, t as the typing.
            for b in graph.objects(o, &v.sub_class_of) {
                derived.push((s.clone(), v.rdf_type.clone(), b.clone()));
            }
        }
        if *p == v.sub_property_of {
            // R3, t as either premise.
            for x in graph.subjects(&v.sub_property_of, s) {
                derived.push((x.clone(), v.sub_property_of.clone(), o.clone()));
            }
            for z in graph.objects(o, &v.sub_property_of) {
                derived.push((s.clone(), v.sub_property_of.clone(), z.clone()));
            }
            // R4, t as the subproperty axiom.
            if let (Term::Iri(sub), Term::Iri(sup)) = (s, o) {
                for (x, y) in graph.pairs(sub) {
                    derived.push((x.clone(), sup.clone(), y.clone()));
                }
            }
        }
        if *p == v.domain {
            // R5, t as the domain axiom.
            if let Term::Iri(prop) = s {
                for (x, _) in graph.pairs(prop) {
                    derived.push((x.clone(), v.rdf_type.clone(), o.clone()));
                }
            }
        }
        if *p == v.range {
            // R6, t as the range axiom.
            if let Term::Iri(prop) = s {
                for (_, y) in graph.pairs(prop) {
                    if !y.is_literal() {
                        derived.push((y.clone(), v.rdf_type.clone(), o.clone()));
                    }
                }
            }
        }
        // R4, R5, R6 with t as the instance triple.
        for q in graph.objects(&p_term, &v.sub_property_of) {
            if let Term::Iri(q) = q {
                derived.push((s.clone(), q.clone(), o.clone()));
            }
        }
        for c in graph.objects(&p_term, &v.domain) {
            derived.push((s.clone(), v.rdf_type.clone(), c.clone()));
        }
        if !o.is_literal() {
            for c in graph.objects(&p_term, &v.range) {
                derived.push((o.clone(), v.rdf_type.clone(), c.clone()));
            }
        }

        for (s, p, o) in derived.drain(..) {
            let t = Triple::new(s, p, o).expect("derived subjects are never literals");
            if graph.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    graph
}
