//! Parses a small Turtle document, edits the graph and writes it back.

use oced_forge::rdf::{parse_turtle, serialize_turtle, Iri, Literal};

const DOC: &str = r#"@prefix ex: <http://example.org/> .
@prefix xsd: <http://www.w3.org/2001/XMLSchema#> .

ex:ticket42 a ex:Incident ;
    ex:title "Printer on fire"@en, "Drucker brennt"@de ;
    ex:priority 1 ;
    ex:opened "2012-05-11T01:26:15+02:00"^^xsd:dateTime ;
    ex:reporter _:r .

_:r ex:name "Ada \"the admin\"" .
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (mut g, prefixes) = parse_turtle(DOC)?;
    println!("parsed {} triples", g.len());

    let ex = |local: &str| Iri::new(format!("http://example.org/{local}"));
    g.add(ex("ticket42")?, ex("status")?, Literal::string("open"))?;

    let text = serialize_turtle(&g, &prefixes);
    print!("{text}");
    let (again, _) = parse_turtle(&text)?;
    assert_eq!(again, g);
    println!("# round trip preserved all {} triples", again.len());
    Ok(())
}
