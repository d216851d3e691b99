//! Checks domain extensions against OCEDO and prints the findings.

use oced_forge::vocab::{builtin_ocedo, check_conformance, load_ocedd, BPIC2013_OCEDD_TTL};

const BROKEN: &str = r#"@prefix oced: <https://w3id.org/ocedo/core#> .
@prefix rdfs: <http://www.w3.org/2000/01/rdf-schema#> .
@prefix owl: <http://www.w3.org/2002/07/owl#> .
@prefix ext: <https://example.org/shop#> .

ext:Order a owl:Class ; rdfs:subClassOf oced:Object ; rdfs:label "Order" .
ext:Draft a owl:Class ; rdfs:subClassOf ext:Quote ; rdfs:label "Draft" .
ext:Quote a owl:Class ; rdfs:subClassOf ext:Draft ; rdfs:label "Quote" .
ext:ships_to a owl:ObjectProperty ; rdfs:domain ext:Order ; rdfs:range ext:Address ; rdfs:label "ships to" .
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (ocedo, _) = builtin_ocedo();
    for (name, text) in [("bpic2013", BPIC2013_OCEDD_TTL), ("broken shop", BROKEN)] {
        let ext = load_ocedd(text)?;
        let report = check_conformance(&ext, &ocedo);
        println!("{name}: {}", if report.is_conformant() { "conformant" } else { "NOT conformant" });
        for f in &report.findings {
            println!("  {f}");
        }
    }
    Ok(())
}
