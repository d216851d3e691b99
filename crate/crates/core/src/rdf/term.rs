use std::fmt;
use std::sync::Arc;

use super::RdfError;

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_DATE_TIME: &str = "http://www.w3.org/2001/XMLSchema#dateTime";
pub const RDF_LANG_STRING: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

/// An absolute IRI.
///
/// Only a light syntactic check is applied: the value must be non-empty,
/// carry a scheme separator and contain none of `space < > "`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, RdfError> {
        let value = value.as_ref();
        if value.is_empty() {
            return Err(RdfError::InvalidIri {
                iri: value.to_owned(),
                reason: "empty",
            });
        }
        if !value.contains(':') {
            return Err(RdfError::InvalidIri {
                iri: value.to_owned(),
                reason: "no scheme",
            });
        }
        if value
            .chars()
            .any(|c| matches!(c, ' ' | '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\') || c.is_control())
        {
            return Err(RdfError::InvalidIri {
                iri: value.to_owned(),
                reason: "forbidden character",
            });
        }
        Ok(Iri(Arc::from(value)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl AsRef<str> for Iri {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlankNode(Arc<str>);

impl BlankNode {
    pub fn new(label: impl AsRef<str>) -> Result<Self, RdfError> {
        let label = label.as_ref();
        if label.is_empty() || !label.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(RdfError::InvalidBlankNode(label.to_owned()));
        }
        Ok(BlankNode(Arc::from(label)))
    }

    pub fn label(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for BlankNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "_:{}", self.0)
    }
}

/// A literal compared structurally on (lexical form, datatype, language tag).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: Arc<str>,
    datatype: Iri,
    language: Option<Arc<str>>,
}

impl Literal {
    /// Plain `xsd:string` literal.
    pub fn string(lexical: impl AsRef<str>) -> Self {
        Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: Iri(Arc::from(XSD_STRING)),
            language: None,
        }
    }

    /// Typed literal. `xsd:dateTime` values must carry an explicit offset.
    pub fn typed(lexical: impl AsRef<str>, datatype: Iri) -> Result<Self, RdfError> {
        let lexical = lexical.as_ref();
        if datatype.as_str() == RDF_LANG_STRING {
            return Err(RdfError::InvalidLiteral {
                lexical: lexical.to_owned(),
                reason: "rdf:langString requires a language tag".into(),
            });
        }
        if datatype.as_str() == XSD_DATE_TIME {
            chrono::DateTime::parse_from_rfc3339(lexical).map_err(|e| {
                RdfError::InvalidLiteral {
                    lexical: lexical.to_owned(),
                    reason: format!("not an xsd:dateTime with offset: {e}"),
                }
            })?;
        }
        Ok(Literal {
            lexical: Arc::from(lexical),
            datatype,
            language: None,
        })
    }

    pub fn lang(lexical: impl AsRef<str>, tag: impl AsRef<str>) -> Result<Self, RdfError> {
        let tag = tag.as_ref();
        if !is_language_tag(tag) {
            return Err(RdfError::InvalidLiteral {
                lexical: lexical.as_ref().to_owned(),
                reason: format!("bad language tag {tag:?}"),
            });
        }
        Ok(Literal {
            lexical: Arc::from(lexical.as_ref()),
            datatype: Iri(Arc::from(RDF_LANG_STRING)),
            language: Some(Arc::from(tag)),
        })
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn datatype(&self) -> &Iri {
        &self.datatype
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }
}

impl fmt::Debug for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&Term::Literal(self.clone()).to_ntriples())
    }
}

pub(crate) fn is_language_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = parts.next().unwrap_or("");
    !first.is_empty()
        && first.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Blank(BlankNode),
    Literal(Literal),
}

impl Term {
    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(iri) => Some(iri),
            _ => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(lit) => Some(lit),
            _ => None,
        }
    }

    /// N-Triples rendering, used for deterministic ordering.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        self.write_ntriples(&mut out);
        out
    }

    pub(crate) fn write_ntriples(&self, out: &mut String) {
        match self {
            Term::Iri(iri) => {
                out.push('<');
                out.push_str(iri.as_str());
                out.push('>');
            }
            Term::Blank(b) => {
                out.push_str("_:");
                out.push_str(b.label());
            }
            Term::Literal(lit) => {
                out.push('"');
                escape_string_into(lit.lexical(), out);
                out.push('"');
                if let Some(lang) = lit.language() {
                    out.push('@');
                    out.push_str(lang);
                } else if lit.datatype().as_str() != XSD_STRING {
                    out.push_str("^^<");
                    out.push_str(lit.datatype().as_str());
                    out.push('>');
                }
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

impl From<Iri> for Term {
    fn from(iri: Iri) -> Self {
        Term::Iri(iri)
    }
}

impl From<BlankNode> for Term {
    fn from(b: BlankNode) -> Self {
        Term::Blank(b)
    }
}

impl From<Literal> for Term {
    fn from(lit: Literal) -> Self {
        Term::Literal(lit)
    }
}

/// Escapes a lexical form for a single-quoted `"..."` string.
pub(crate) fn escape_string_into(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 || c == '\u{7f}' => {
                out.push_str(&format!("\\u{:04X}", c as u32));
            }
            c => out.push(c),
        }
    }
}

/// An RDF statement. The subject is never a literal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triple {
    subject: Term,
    predicate: Iri,
    object: Term,
}

impl Triple {
    pub fn new(subject: impl Into<Term>, predicate: Iri, object: impl Into<Term>) -> Result<Self, RdfError> {
        let subject = subject.into();
        if subject.is_literal() {
            return Err(RdfError::LiteralSubject(subject.to_ntriples()));
        }
        Ok(Triple {
            subject,
            predicate,
            object: object.into(),
        })
    }

    pub fn subject(&self) -> &Term {
        &self.subject
    }

    pub fn predicate(&self) -> &Iri {
        &self.predicate
    }

    pub fn object(&self) -> &Term {
        &self.object
    }

    pub fn into_parts(self) -> (Term, Iri, Term) {
        (self.subject, self.predicate, self.object)
    }

    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        self.subject.write_ntriples(&mut out);
        out.push(' ');
        out.push('<');
        out.push_str(self.predicate.as_str());
        out.push_str("> ");
        self.object.write_ntriples(&mut out);
        out.push_str(" .");
        out
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}
