use std::fmt::Write as _;

use chrono::{DateTime, FixedOffset};
use quick_xml::escape::escape;

/// Typed value of an XES attribute, chosen by its element name.
#[derive(Debug, Clone, PartialEq)]
pub enum XesValue {
    String(String),
    /// Offset preserved exactly as written.
    Date(DateTime<FixedOffset>),
    Int(i64),
    Float(f64),
    Boolean(bool),
    Id(String),
}

impl XesValue {
    pub fn element_name(&self) -> &'static str {
        match self {
            XesValue::String(_) => "string",
            XesValue::Date(_) => "date",
            XesValue::Int(_) => "int",
            XesValue::Float(_) => "float",
            XesValue::Boolean(_) => "boolean",
            XesValue::Id(_) => "id",
        }
    }

    /// Parses `raw` as the type named by `element`. `None` for an unknown
    /// element name, `Some(Err)` for a malformed value.
    pub fn parse(element: &str, raw: &str) -> Option<Result<XesValue, String>> {
        let parsed = match element {
            "string" => Ok(XesValue::String(raw.to_owned())),
            "id" => Ok(XesValue::Id(raw.to_owned())),
            "date" => DateTime::parse_from_rfc3339(raw)
                .map(XesValue::Date)
                .map_err(|e| format!("bad date {raw:?}: {e}")),
            "int" => raw
                .trim()
                .parse::<i64>()
                .map(XesValue::Int)
                .map_err(|e| format!("bad int {raw:?}: {e}")),
            "float" => raw
                .trim()
                .parse::<f64>()
                .map(XesValue::Float)
                .map_err(|e| format!("bad float {raw:?}: {e}")),
            "boolean" => match raw.trim() {
                "true" | "1" => Ok(XesValue::Boolean(true)),
                "false" | "0" => Ok(XesValue::Boolean(false)),
                _ => Err(format!("bad boolean {raw:?}")),
            },
            _ => return None,
        };
        Some(parsed)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct XesAttribute {
    pub key: String,
    /// The `value` attribute exactly as it appeared in the document.
    pub raw: String,
    pub value: XesValue,
    pub children: Vec<XesAttribute>,
}

impl XesAttribute {
    pub fn new(key: impl Into<String>, value: XesValue, raw: impl Into<String>) -> Self {
        XesAttribute {
            key: key.into(),
            raw: raw.into(),
            value,
            children: Vec::new(),
        }
    }

    pub fn string(key: impl Into<String>, value: impl Into<String>) -> Self {
        let value = value.into();
        XesAttribute::new(key, XesValue::String(value.clone()), value)
    }
}

/// Looks up an attribute by key.
pub fn attribute<'a>(attributes: &'a [XesAttribute], key: &str) -> Option<&'a XesAttribute> {
    attributes.iter().find(|a| a.key == key)
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct XesEvent {
    pub attributes: Vec<XesAttribute>,
}

impl XesEvent {
    pub fn get(&self, key: &str) -> Option<&XesAttribute> {
        attribute(&self.attributes, key)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct XesTrace {
    pub attributes: Vec<XesAttribute>,
    pub events: Vec<XesEvent>,
}

impl XesTrace {
    pub fn get(&self, key: &str) -> Option<&XesAttribute> {
        attribute(&self.attributes, key)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XesExtension {
    pub name: String,
    pub prefix: String,
    pub uri: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct XesGlobal {
    pub scope: String,
    pub attributes: Vec<XesAttribute>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XesClassifier {
    pub name: String,
    pub keys: String,
    pub scope: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct XesWarning {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for XesWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

/// An event log held in memory. Extensions, globals and classifiers are
/// carried through untouched.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct XesLog {
    pub source_name: String,
    pub extensions: Vec<XesExtension>,
    pub globals: Vec<XesGlobal>,
    pub classifiers: Vec<XesClassifier>,
    pub attributes: Vec<XesAttribute>,
    pub traces: Vec<XesTrace>,
    pub warnings: Vec<XesWarning>,
}

impl XesLog {
    pub fn event_count(&self) -> usize {
        self.traces.iter().map(|t| t.events.len()).sum()
    }

    /// Structural equality ignoring warnings and the source name.
    pub fn same_content(&self, other: &XesLog) -> bool {
        self.extensions == other.extensions
            && self.globals == other.globals
            && self.classifiers == other.classifiers
            && self.attributes == other.attributes
            && self.traces == other.traces
    }

    /// Renders the model back to XES. Debugging aid only: it is enough to
    /// reparse into an equal model, not a conformant writer.
    pub fn to_xes_debug(&self) -> String {
        let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<log xes.version=\"1849-2016\">\n");
        for e in &self.extensions {
            let _ = writeln!(
                out,
                "  <extension name=\"{}\" prefix=\"{}\" uri=\"{}\"/>",
                escape(e.name.as_str()),
                escape(e.prefix.as_str()),
                escape(e.uri.as_str())
            );
        }
        for g in &self.globals {
            let _ = writeln!(out, "  <global scope=\"{}\">", escape(g.scope.as_str()));
            write_attributes(&g.attributes, 2, &mut out);
            out.push_str("  </global>\n");
        }
        for c in &self.classifiers {
            let _ = write!(out, "  <classifier name=\"{}\" keys=\"{}\"", escape(c.name.as_str()), escape(c.keys.as_str()));
            if let Some(scope) = &c.scope {
                let _ = write!(out, " scope=\"{}\"", escape(scope.as_str()));
            }
            out.push_str("/>\n");
        }
        write_attributes(&self.attributes, 1, &mut out);
        for t in &self.traces {
            out.push_str("  <trace>\n");
            write_attributes(&t.attributes, 2, &mut out);
            for e in &t.events {
                out.push_str("    <event>\n");
                write_attributes(&e.attributes, 3, &mut out);
                out.push_str("    </event>\n");
            }
            out.push_str("  </trace>\n");
        }
        out.push_str("</log>\n");
        out
    }
}

fn write_attributes(attrs: &[XesAttribute], depth: usize, out: &mut String) {
    for a in attrs {
        let indent = "  ".repeat(depth);
        let _ = write!(
            out,
            "{indent}<{} key=\"{}\" value=\"{}\"",
            a.value.element_name(),
            escape(a.key.as_str()),
            escape(a.raw.as_str())
        );
        if a.children.is_empty() {
            out.push_str("/>\n");
        } else {
            out.push_str(">\n");
            write_attributes(&a.children, depth + 1, out);
            let _ = writeln!(out, "{indent}</{}>", a.value.element_name());
        }
    }
}
