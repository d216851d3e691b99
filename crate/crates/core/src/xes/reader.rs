use std::collections::VecDeque;
use std::io::{self, BufRead, Read};

use quick_xml::events::{BytesStart, Event};
use quick_xml::Reader;
use thiserror::Error;

use super::model::*;

#[derive(Debug, Error)]
pub enum XesError {
    #[error("{line}:{column}: malformed XML: {message}")]
    Xml { line: usize, column: usize, message: String },
    #[error("{line}:{column}: expected <log> root element, found <{found}>")]
    WrongRoot { line: usize, column: usize, found: String },
    #[error("document has no <log> root element")]
    MissingLogRoot,
    #[error("{line}:{column}: document ended inside <{element}>")]
    Truncated { line: usize, column: usize, element: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Wraps a `BufRead` and remembers where each newline was consumed, so byte
/// offsets reported by the XML reader can be turned into line/column.
struct LineTracker<R> {
    inner: R,
    consumed: u64,
    newlines: Vec<u64>,
}

impl<R: BufRead> LineTracker<R> {
    fn new(inner: R) -> Self {
        LineTracker { inner, consumed: 0, newlines: Vec::new() }
    }

    fn position(&self, offset: u64) -> (usize, usize) {
        let before = self.newlines.partition_point(|&n| n < offset);
        let line_start = if before == 0 { 0 } else { self.newlines[before - 1] + 1 };
        (before + 1, (offset - line_start) as usize + 1)
    }
}

impl<R: BufRead> Read for LineTracker<R> {
    fn read(&mut self, buf: &mut [u8]) -> io::Result<usize> {
        let available = self.fill_buf()?;
        let n = available.len().min(buf.len());
        buf[..n].copy_from_slice(&available[..n]);
        self.consume(n);
        Ok(n)
    }
}

impl<R: BufRead> BufRead for LineTracker<R> {
    fn fill_buf(&mut self) -> io::Result<&[u8]> {
        self.inner.fill_buf()
    }

    fn consume(&mut self, amt: usize) {
        if amt > 0 {
            if let Ok(buf) = self.inner.fill_buf() {
                for (i, &b) in buf[..amt.min(buf.len())].iter().enumerate() {
                    if b == b'\n' {
                        self.newlines.push(self.consumed + i as u64);
                    }
                }
            }
        }
        self.consumed += amt as u64;
        self.inner.consume(amt);
    }
}

enum Frame {
    Log,
    Trace(XesTrace),
    Event(XesEvent),
    Attr(XesAttribute),
    Values,
    Global(XesGlobal),
    Skip,
}

impl Frame {
    fn name(&self) -> &'static str {
        match self {
            Frame::Log => "log",
            Frame::Trace(_) => "trace",
            Frame::Event(_) => "event",
            Frame::Attr(_) => "attribute",
            Frame::Values => "values",
            Frame::Global(_) => "global",
            Frame::Skip => "unknown element",
        }
    }
}

/// Streaming XES reader. Traces are produced one at a time; log-level
/// metadata accumulates in [`XesReader::header`] as it is encountered.
pub struct XesReader<R: BufRead> {
    xml: Reader<LineTracker<R>>,
    buf: Vec<u8>,
    stack: Vec<Frame>,
    header: XesLog,
    ready: VecDeque<XesTrace>,
    seen_root: bool,
    done: bool,
}

impl<R: BufRead> XesReader<R> {
    pub fn new(reader: R, source_name: impl Into<String>) -> Self {
        let mut xml = Reader::from_reader(LineTracker::new(reader));
        xml.config_mut().trim_text(true);
        XesReader {
            xml,
            buf: Vec::new(),
            stack: Vec::new(),
            header: XesLog { source_name: source_name.into(), ..XesLog::default() },
            ready: VecDeque::new(),
            seen_root: false,
            done: false,
        }
    }

    /// Everything read so far except traces.
    pub fn header(&self) -> &XesLog {
        &self.header
    }

    pub fn into_header(self) -> XesLog {
        self.header
    }

    pub fn next_trace(&mut self) -> Result<Option<XesTrace>, XesError> {
        while self.ready.is_empty() && !self.done {
            self.step()?;
        }
        Ok(self.ready.pop_front())
    }

    fn here(&self) -> (usize, usize) {
        self.xml.get_ref().position(self.xml.buffer_position())
    }

    fn warn(&mut self, message: String) {
        let (line, column) = self.here();
        self.header.warnings.push(XesWarning { line, column, message });
    }

    fn step(&mut self) -> Result<(), XesError> {
        self.buf.clear();
        let event = match self.xml.read_event_into(&mut self.buf) {
            Ok(e) => e.into_owned(),
            Err(e) => {
                let (line, column) = self.xml.get_ref().position(self.xml.error_position());
                return Err(XesError::Xml { line, column, message: e.to_string() });
            }
        };
        match event {
            Event::Start(e) => self.open(&e, false)?,
            Event::Empty(e) => self.open(&e, true)?,
            Event::End(_) => self.close(),
            Event::Eof => {
                self.done = true;
                if !self.seen_root {
                    return Err(XesError::MissingLogRoot);
                }
                if let Some(frame) = self.stack.last() {
                    let (line, column) = self.here();
                    return Err(XesError::Truncated { line, column, element: frame.name().into() });
                }
            }
            Event::Text(t) if !matches!(self.stack.last(), Some(Frame::Skip)) => {
                let text = String::from_utf8_lossy(&t).trim().to_owned();
                if !text.is_empty() {
                    self.warn(format!("ignored character data {text:?}"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    fn open(&mut self, e: &BytesStart<'_>, empty: bool) -> Result<(), XesError> {
        let name = String::from_utf8_lossy(e.local_name().as_ref()).into_owned();
        let attrs = self.attributes_of(e);
        let get = |k: &str| attrs.iter().find(|(n, _)| n == k).map(|(_, v)| v.clone());

        let frame = match self.stack.last() {
            None => {
                if self.seen_root {
                    self.warn(format!("ignored element <{name}> after the log"));
                    Frame::Skip
                } else if name == "log" {
                    self.seen_root = true;
                    Frame::Log
                } else {
                    let (line, column) = self.here();
                    return Err(XesError::WrongRoot { line, column, found: name });
                }
            }
            Some(Frame::Skip) => Frame::Skip,
            Some(parent) => {
                let parent_is_attr = matches!(parent, Frame::Attr(_));
                match (parent, name.as_str()) {
                    (Frame::Log, "trace") => Frame::Trace(XesTrace::default()),
                    (Frame::Log, "extension") => {
                        self.header.extensions.push(XesExtension {
                            name: get("name").unwrap_or_default(),
                            prefix: get("prefix").unwrap_or_default(),
                            uri: get("uri").unwrap_or_default(),
                        });
                        Frame::Skip
                    }
                    (Frame::Log, "classifier") => {
                        self.header.classifiers.push(XesClassifier {
                            name: get("name").unwrap_or_default(),
                            keys: get("keys").unwrap_or_default(),
                            scope: get("scope"),
                        });
                        Frame::Skip
                    }
                    (Frame::Log, "global") => Frame::Global(XesGlobal {
                        scope: get("scope").unwrap_or_else(|| "event".into()),
                        attributes: Vec::new(),
                    }),
                    (Frame::Trace(_), "event") => Frame::Event(XesEvent::default()),
                    (_, "values") if parent_is_attr => Frame::Values,
                    _ if is_attribute_element(&name) => {
                        match self.attribute(&name, get("key"), get("value")) {
                            Some(a) => Frame::Attr(a),
                            None => Frame::Skip,
                        }
                    }
                    _ => {
                        self.warn(format!("skipped unsupported element <{name}>"));
                        Frame::Skip
                    }
                }
            }
        };
        self.stack.push(frame);
        if empty {
            self.close();
        }
        Ok(())
    }

    fn attributes_of(&mut self, e: &BytesStart<'_>) -> Vec<(String, String)> {
        let mut out = Vec::new();
        let mut bad = Vec::new();
        for a in e.attributes() {
            match a {
                Ok(a) => {
                    let key = String::from_utf8_lossy(a.key.local_name().as_ref()).into_owned();
                    match a.decode_and_unescape_value(self.xml.decoder()) {
                        Ok(v) => out.push((key, v.into_owned())),
                        Err(err) => bad.push(format!("attribute {key}: {err}")),
                    }
                }
                Err(err) => bad.push(err.to_string()),
            }
        }
        for m in bad {
            self.warn(format!("malformed XML attribute: {m}"));
        }
        out
    }

    fn attribute(&mut self, element: &str, key: Option<String>, raw: Option<String>) -> Option<XesAttribute> {
        let Some(key) = key else {
            self.warn(format!("<{element}> without key skipped"));
            return None;
        };
        let Some(raw) = raw else {
            self.warn(format!("<{element} key={key:?}> without value skipped"));
            return None;
        };
        match XesValue::parse(element, &raw)? {
            Ok(value) => Some(XesAttribute::new(key, value, raw)),
            Err(msg) => {
                self.warn(format!("attribute {key:?} skipped: {msg}"));
                None
            }
        }
    }

    fn close(&mut self) {
        let Some(frame) = self.stack.pop() else { return };
        match frame {
            Frame::Attr(a) => {
                let target = self.stack.iter_mut().rev().find(|f| !matches!(f, Frame::Values));
                let dup = match target {
                    Some(Frame::Attr(p)) => put(&mut p.children, a),
                    Some(Frame::Event(e)) => put(&mut e.attributes, a),
                    Some(Frame::Trace(t)) => put(&mut t.attributes, a),
                    Some(Frame::Global(g)) => put(&mut g.attributes, a),
                    Some(Frame::Log) => put(&mut self.header.attributes, a),
                    _ => None,
                };
                if let Some(key) = dup {
                    self.warn(format!("duplicate attribute key {key:?}; last value kept"));
                }
            }
            Frame::Event(e) => {
                if let Some(Frame::Trace(t)) = self.stack.last_mut() {
                    t.events.push(e);
                }
            }
            Frame::Trace(t) => self.ready.push_back(t),
            Frame::Global(g) => self.header.globals.push(g),
            Frame::Log | Frame::Values | Frame::Skip => {}
        }
    }
}

/// Appends `a`, replacing an earlier attribute with the same key. Returns the
/// key on replacement.
fn put(list: &mut Vec<XesAttribute>, a: XesAttribute) -> Option<String> {
    let dup = list.iter().position(|x| x.key == a.key).map(|i| list.remove(i).key);
    list.push(a);
    dup
}

fn is_attribute_element(name: &str) -> bool {
    matches!(name, "string" | "date" | "int" | "float" | "boolean" | "id")
}

/// Reads a whole log into memory.
pub fn parse_xes<R: BufRead>(reader: R, source_name: &str) -> Result<XesLog, XesError> {
    let mut r = XesReader::new(reader, source_name);
    let mut traces = Vec::new();
    while let Some(t) = r.next_trace()? {
        traces.push(t);
    }
    let mut log = r.into_header();
    log.traces = traces;
    Ok(log)
}

pub fn parse_xes_str(text: &str, source_name: &str) -> Result<XesLog, XesError> {
    parse_xes(text.as_bytes(), source_name)
}
