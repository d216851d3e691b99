//! Streaming reader for XES event logs.
//!
//! Only what the mapper needs is modelled: typed attributes (with nested
//! children), traces, events, and the log header. Unknown elements, `list`
//! included, are skipped with a warning rather than rejected.

mod model;
mod reader;

pub use model::{
    attribute, XesAttribute, XesClassifier, XesEvent, XesExtension, XesGlobal, XesLog, XesTrace, XesValue,
    XesWarning,
};
pub use reader::{parse_xes, parse_xes_str, XesError, XesReader};
