use std::fmt;

use crate::rdf::prefix::is_prefix_name;
use crate::rdf::term::{BlankNode, Iri, Literal, Term, Triple};
use crate::rdf::{Graph, PrefixMap, RdfError};

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
const XSD: &str = "http://www.w3.org/2001/XMLSchema#";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TurtleErrorKind {
    Syntax(String),
    UnknownPrefix(String),
    /// Valid Turtle outside the accepted subset.
    Unsupported(&'static str),
    InvalidTerm(RdfError),
}

/// A parse diagnostic with a 1-based line/column.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{line}:{column}: {kind}")]
pub struct TurtleError {
    pub line: usize,
    pub column: usize,
    pub kind: TurtleErrorKind,
}

impl fmt::Display for TurtleErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TurtleErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            TurtleErrorKind::UnknownPrefix(p) => write!(f, "unknown prefix '{p}:'"),
            TurtleErrorKind::Unsupported(what) => write!(f, "unsupported construct: {what}"),
            TurtleErrorKind::InvalidTerm(e) => write!(f, "invalid term: {e}"),
        }
    }
}

/// Parses a Turtle document in the accepted subset.
pub fn parse_turtle(text: &str) -> Result<(Graph, PrefixMap), TurtleError> {
    let mut parser = Parser::new(text, PrefixMap::new());
    let mut graph = Graph::new();
    parser.document(&mut graph)?;
    Ok((graph, parser.prefixes))
}

/// One slot of a query pattern line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum PatternSlot {
    Var(String),
    Term(Term),
}

/// Reads `subject predicate object [.]` where any slot may be `?name`.
pub(crate) fn parse_pattern_line(line: &str, prefixes: &PrefixMap) -> Result<[PatternSlot; 3], TurtleError> {
    let mut parser = Parser::new(line, prefixes.clone());
    let mut slots = Vec::with_capacity(3);
    for position in 0..3 {
        parser.skip_ws();
        let slot = if parser.peek() == Some('?') {
            parser.bump();
            let name = parser.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
            if name.is_empty() || name.starts_with(|c: char| c.is_ascii_digit()) {
                return Err(parser.err(TurtleErrorKind::Syntax("bad variable name".into())));
            }
            PatternSlot::Var(name)
        } else if position == 1 {
            PatternSlot::Term(Term::Iri(parser.verb()?))
        } else {
            PatternSlot::Term(parser.object()?)
        };
        slots.push(slot);
    }
    parser.skip_ws();
    if parser.peek() == Some('.') {
        parser.bump();
        parser.skip_ws();
    }
    if !parser.at_eof() {
        return Err(parser.err(TurtleErrorKind::Syntax("trailing input after pattern".into())));
    }
    Ok(slots.try_into().expect("three slots"))
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    column: usize,
    prefixes: PrefixMap,
}

impl Parser {
    fn new(text: &str, prefixes: PrefixMap) -> Self {
        Parser {
            chars: text.chars().collect(),
            pos: 0,
            line: 1,
            column: 1,
            prefixes,
        }
    }

    fn err(&self, kind: TurtleErrorKind) -> TurtleError {
        TurtleError {
            line: self.line,
            column: self.column,
            kind,
        }
    }

    fn err_at(&self, (line, column): (usize, usize), kind: TurtleErrorKind) -> TurtleError {
        TurtleError { line, column, kind }
    }

    fn syntax(&self, msg: impl Into<String>) -> TurtleError {
        self.err(TurtleErrorKind::Syntax(msg.into()))
    }

    fn mark(&self) -> (usize, usize) {
        (self.line, self.column)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<char> {
        self.chars.get(self.pos + offset).copied()
    }

    /// True when a bare keyword of length `offset` ends here rather than
    /// continuing as a prefixed name.
    fn keyword_boundary(&self, offset: usize) -> bool {
        match self.peek_at(offset) {
            None => true,
            Some('.') => self.peek_at(offset + 1).is_none_or(|c| !is_local_char(c)),
            Some(c) => !is_local_char(c),
        }
    }

    fn at_eof(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn expect(&mut self, want: char) -> Result<(), TurtleError> {
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.syntax(format!("expected '{want}', found '{c}'"))),
            None => Err(self.syntax(format!("expected '{want}', found end of input"))),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.bump();
        }
        out
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
            } else if c == '#' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn starts_with_keyword(&self, kw: &str) -> bool {
        let n = kw.chars().count();
        let matches = kw
            .chars()
            .enumerate()
            .all(|(i, k)| self.peek_at(i).is_some_and(|c| c.eq_ignore_ascii_case(&k)));
        matches && self.peek_at(n).is_none_or(|c| c.is_whitespace())
    }

    fn document(&mut self, graph: &mut Graph) -> Result<(), TurtleError> {
        loop {
            self.skip_ws();
            if self.at_eof() {
                return Ok(());
            }
            self.statement(graph)?;
        }
    }

    fn statement(&mut self, graph: &mut Graph) -> Result<(), TurtleError> {
        if self.peek() == Some('@') {
            let at = self.mark();
            self.bump();
            let word = self.take_while(|c| c.is_ascii_alphabetic());
            return match word.as_str() {
                "prefix" => self.prefix_decl(true),
                "base" => Err(self.err_at(at, TurtleErrorKind::Unsupported("@base directive"))),
                _ => Err(self.err_at(at, TurtleErrorKind::Syntax(format!("unknown directive @{word}")))),
            };
        }
        if self.starts_with_keyword("PREFIX") {
            for _ in 0..6 {
                self.bump();
            }
            return self.prefix_decl(false);
        }
        if self.starts_with_keyword("BASE") {
            return Err(self.err(TurtleErrorKind::Unsupported("BASE directive")));
        }
        let subject = self.subject()?;
        self.skip_ws();
        self.predicate_object_list(&subject, graph)?;
        self.skip_ws();
        self.expect('.')
    }

    fn prefix_decl(&mut self, terminated: bool) -> Result<(), TurtleError> {
        self.skip_ws();
        let at = self.mark();
        let prefix = self.take_while(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
        if !is_prefix_name(&prefix) {
            return Err(self.err_at(at, TurtleErrorKind::Syntax(format!("bad prefix name '{prefix}'"))));
        }
        self.expect(':')?;
        self.skip_ws();
        let ns = self.iriref()?;
        self.prefixes
            .insert(prefix, ns)
            .map_err(|e| self.err_at(at, TurtleErrorKind::InvalidTerm(e)))?;
        if terminated {
            self.skip_ws();
            self.expect('.')?;
        }
        Ok(())
    }

    fn unsupported_opener(&self) -> Option<TurtleError> {
        match self.peek() {
            Some('[') => Some(self.err(TurtleErrorKind::Unsupported("anonymous blank node / property list '[ ]'"))),
            Some('(') => Some(self.err(TurtleErrorKind::Unsupported("collection '( )'"))),
            _ => None,
        }
    }

    fn subject(&mut self) -> Result<Term, TurtleError> {
        if let Some(e) = self.unsupported_opener() {
            return Err(e);
        }
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Term::Blank(self.blank_node()?)),
            Some('"') | Some('\'') => Err(self.syntax("literal in subject position")),
            Some(_) => Ok(Term::Iri(self.prefixed_name()?)),
            None => Err(self.syntax("expected subject, found end of input")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term, graph: &mut Graph) -> Result<(), TurtleError> {
        loop {
            let predicate = self.verb()?;
            self.object_list(subject, &predicate, graph)?;
            self.skip_ws();
            if self.peek() != Some(';') {
                return Ok(());
            }
            while self.peek() == Some(';') {
                self.bump();
                self.skip_ws();
            }
            if matches!(self.peek(), Some('.') | None) {
                return Ok(());
            }
        }
    }

    fn verb(&mut self) -> Result<Iri, TurtleError> {
        self.skip_ws();
        if self.peek() == Some('a') && self.keyword_boundary(1) {
            self.bump();
            return Ok(Iri::new(RDF_TYPE).expect("static IRI"));
        }
        match self.peek() {
            Some('<') => self.iriref(),
            Some('_') if self.peek_at(1) == Some(':') => Err(self.syntax("blank node in predicate position")),
            Some('"') | Some('\'') => Err(self.syntax("literal in predicate position")),
            Some('[') | Some('(') => Err(self.syntax("predicate must be an IRI")),
            Some(_) => self.prefixed_name(),
            None => Err(self.syntax("expected predicate, found end of input")),
        }
    }

    fn object_list(&mut self, subject: &Term, predicate: &Iri, graph: &mut Graph) -> Result<(), TurtleError> {
        loop {
            self.skip_ws();
            let at = self.mark();
            let object = self.object()?;
            let triple = Triple::new(subject.clone(), predicate.clone(), object)
                .map_err(|e| self.err_at(at, TurtleErrorKind::InvalidTerm(e)))?;
            graph.insert(triple);
            self.skip_ws();
            if self.peek() == Some(',') {
                self.bump();
            } else {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> Result<Term, TurtleError> {
        if let Some(e) = self.unsupported_opener() {
            return Err(e);
        }
        match self.peek() {
            Some('<') => Ok(Term::Iri(self.iriref()?)),
            Some('_') if self.peek_at(1) == Some(':') => Ok(Term::Blank(self.blank_node()?)),
            Some('"') | Some('\'') => self.literal(),
            Some(c) if c.is_ascii_digit() || matches!(c, '+' | '-') => self.numeric(),
            Some('.') if self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) => self.numeric(),
            Some(_) => {
                for (word, value) in [("true", "true"), ("false", "false")] {
                    let n = word.len();
                    if word.chars().enumerate().all(|(i, w)| self.peek_at(i) == Some(w))
                        && self.keyword_boundary(n)
                    {
                        for _ in 0..n {
                            self.bump();
                        }
                        return Ok(Term::Literal(
                            Literal::typed(value, xsd("boolean")).expect("boolean literal"),
                        ));
                    }
                }
                Ok(Term::Iri(self.prefixed_name()?))
            }
            None => Err(self.syntax("expected object, found end of input")),
        }
    }

    fn iriref(&mut self) -> Result<Iri, TurtleError> {
        let at = self.mark();
        self.expect('<')?;
        let mut value = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some('\\') => {
                    let c = self.unicode_escape()?;
                    value.push(c);
                }
                Some(c) if c.is_whitespace() => {
                    return Err(self.err_at(at, TurtleErrorKind::Syntax("whitespace inside IRI".into())));
                }
                Some(c) => value.push(c),
                None => return Err(self.err_at(at, TurtleErrorKind::Syntax("unterminated IRI".into()))),
            }
        }
        if !value.contains(':') {
            return Err(self.err_at(at, TurtleErrorKind::Unsupported("relative IRI reference")));
        }
        Iri::new(value).map_err(|e| self.err_at(at, TurtleErrorKind::InvalidTerm(e)))
    }

    /// After a backslash: `uXXXX` or `UXXXXXXXX`.
    fn unicode_escape(&mut self) -> Result<char, TurtleError> {
        let width = match self.bump() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.syntax("bad escape sequence")),
        };
        let mut code = 0u32;
        for _ in 0..width {
            let d = self
                .bump()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.syntax("bad hex digit in \\u escape"))?;
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| self.syntax(format!("invalid code point U+{code:X}")))
    }

    fn blank_node(&mut self) -> Result<BlankNode, TurtleError> {
        let at = self.mark();
        self.bump();
        self.bump();
        let label = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
        if label.is_empty() || matches!(self.peek(), Some('-')) || self.peek().is_some_and(|c| !c.is_ascii() && !c.is_whitespace()) {
            return Err(self.err_at(at, TurtleErrorKind::Syntax("blank node labels must match [A-Za-z0-9_]+".into())));
        }
        BlankNode::new(label).map_err(|e| self.err_at(at, TurtleErrorKind::InvalidTerm(e)))
    }

    fn prefixed_name(&mut self) -> Result<Iri, TurtleError> {
        let at = self.mark();
        let prefix = self.take_while(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'));
        if self.peek() != Some(':') {
            let found = self.peek().map(|c| format!("'{c}'")).unwrap_or_else(|| "end of input".into());
            return Err(self.err_at(at, TurtleErrorKind::Syntax(format!("expected a term, found {}", if prefix.is_empty() { found } else { format!("'{prefix}'") }))));
        }
        if !is_prefix_name(&prefix) {
            return Err(self.err_at(at, TurtleErrorKind::Syntax(format!("bad prefix name '{prefix}'"))));
        }
        self.bump();
        let mut local = String::new();
        loop {
            match self.peek() {
                Some('\\') => {
                    self.bump();
                    match self.bump() {
                        Some(c) if "_~.-!$&'()*+,;=/?#@%".contains(c) => local.push(c),
                        _ => return Err(self.syntax("bad local name escape")),
                    }
                }
                Some('%') => {
                    self.bump();
                    local.push('%');
                    for _ in 0..2 {
                        match self.bump() {
                            Some(c) if c.is_ascii_hexdigit() => local.push(c),
                            _ => return Err(self.syntax("bad percent escape in local name")),
                        }
                    }
                }
                Some('.') => {
                    let mut k = 0;
                    while self.peek_at(k) == Some('.') {
                        k += 1;
                    }
                    if self.peek_at(k).is_some_and(|c| is_local_char(c) || c == '\\' || c == '%') {
                        for _ in 0..k {
                            self.bump();
                            local.push('.');
                        }
                    } else {
                        break;
                    }
                }
                Some(c) if is_local_char(c) => {
                    self.bump();
                    local.push(c);
                }
                _ => break,
            }
        }
        let ns = self
            .prefixes
            .get(&prefix)
            .ok_or_else(|| self.err_at(at, TurtleErrorKind::UnknownPrefix(prefix.clone())))?;
        Iri::new(format!("{}{}", ns.as_str(), local)).map_err(|e| self.err_at(at, TurtleErrorKind::InvalidTerm(e)))
    }

    fn literal(&mut self) -> Result<Term, TurtleError> {
        let at = self.mark();
        let quote = self.bump().expect("quote");
        let long = self.peek() == Some(quote) && self.peek_at(1) == Some(quote);
        if long {
            self.bump();
            self.bump();
        }
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err_at(at, TurtleErrorKind::Syntax("unterminated string".into()))),
                Some(c) if c == quote => {
                    if !long {
                        break;
                    }
                    if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                        // A closing run longer than three keeps its leading quotes.
                        while self.peek_at(2) == Some(quote) {
                            self.bump();
                            lexical.push(quote);
                        }
                        self.bump();
                        self.bump();
                        break;
                    }
                    lexical.push(c);
                }
                Some('\\') => lexical.push(self.string_escape()?),
                Some('\n' | '\r') if !long => {
                    return Err(self.err_at(at, TurtleErrorKind::Syntax("newline in short string".into())));
                }
                Some(c) => lexical.push(c),
            }
        }
        match self.peek() {
            Some('@') => {
                self.bump();
                let tag = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                Literal::lang(&lexical, &tag)
                    .map(Term::Literal)
                    .map_err(|e| self.err_at(at, TurtleErrorKind::InvalidTerm(e)))
            }
            Some('^') => {
                self.bump();
                self.expect('^')?;
                let datatype = if self.peek() == Some('<') {
                    self.iriref()?
                } else {
                    self.prefixed_name()?
                };
                Literal::typed(&lexical, datatype)
                    .map(Term::Literal)
                    .map_err(|e| self.err_at(at, TurtleErrorKind::InvalidTerm(e)))
            }
            _ => Ok(Term::Literal(Literal::string(lexical))),
        }
    }

    fn string_escape(&mut self) -> Result<char, TurtleError> {
        Ok(match self.peek() {
            Some('t') => '\t',
            Some('b') => '\u{8}',
            Some('n') => '\n',
            Some('r') => '\r',
            Some('f') => '\u{c}',
            Some('"') => '"',
            Some('\'') => '\'',
            Some('\\') => '\\',
            Some('u') | Some('U') => return self.unicode_escape(),
            _ => return Err(self.syntax("bad string escape")),
        })
        .inspect(|_| {
            self.bump();
        })
    }

    fn numeric(&mut self) -> Result<Term, TurtleError> {
        let at = self.mark();
        let mut text = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            text.push(c);
            self.bump();
        }
        text.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let mut kind = "integer";
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            text.push('.');
            text.push_str(&self.take_while(|c| c.is_ascii_digit()));
            kind = "decimal";
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            let sign = matches!(self.peek_at(1), Some('+' | '-'));
            let digit_at = if sign { 2 } else { 1 };
            if self.peek_at(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                for _ in 0..digit_at {
                    text.push(self.bump().expect("exponent"));
                }
                text.push_str(&self.take_while(|c| c.is_ascii_digit()));
                kind = "double";
            }
        }
        if !text.chars().any(|c| c.is_ascii_digit()) {
            return Err(self.err_at(at, TurtleErrorKind::Syntax("malformed number".into())));
        }
        Ok(Term::Literal(Literal::typed(text, xsd(kind)).expect("numeric literal")))
    }
}

fn xsd(local: &str) -> Iri {
    Iri::new(format!("{XSD}{local}")).expect("xsd IRI")
}

fn is_local_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | ':') || (!c.is_ascii() && c.is_alphanumeric())
}
