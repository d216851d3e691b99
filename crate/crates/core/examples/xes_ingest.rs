//! Streams traces out of an XES document and reports reader warnings.

use std::io::Cursor;

use oced_forge::xes::XesReader;

const LOG: &str = r#"<?xml version="1.0" encoding="UTF-8"?>
<log xes.version="1849-2016">
  <extension name="Concept" prefix="concept" uri="http://www.xes-standard.org/concept.xesext"/>
  <global scope="event"><string key="concept:name" value="__INVALID__"/></global>
  <trace>
    <string key="concept:name" value="case-1"/>
    <event>
      <string key="concept:name" value="Accepted"/>
      <date key="time:timestamp" value="2012-05-11T01:26:15+02:00"/>
      <int key="priority" value="3"/>
    </event>
    <event>
      <string key="concept:name" value="Completed"/>
      <int key="priority" value="high"/>
    </event>
  </trace>
  <trace>
    <string key="concept:name" value="case-2"/>
    <event><string key="concept:name" value="Queued"/></event>
  </trace>
</log>
"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut reader = XesReader::new(Cursor::new(LOG), "inline");
    while let Some(trace) = reader.next_trace()? {
        let name = trace.get("concept:name").map(|a| a.raw.as_str()).unwrap_or("?");
        println!("trace {name}: {} event(s)", trace.events.len());
        for e in &trace.events {
            let attrs: Vec<String> = e.attributes.iter().map(|a| format!("{}={:?}", a.key, a.value)).collect();
            println!("  {}", attrs.join(", "));
        }
    }
    let header = reader.into_header();
    println!("{} extension(s), {} global block(s)", header.extensions.len(), header.globals.len());
    for w in &header.warnings {
        println!("warning at {}:{}: {}", w.line, w.column, w.message);
    }
    Ok(())
}
