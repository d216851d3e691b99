//! Turtle reading and writing for the subset the toolchain relies on.
//!
//! Accepted: `@prefix`/`PREFIX`, `<IRI>`s, prefixed names, `a`, `;` and `,`
//! lists, quoted literals (short and long forms) with `@lang` or `^^type`,
//! numeric and boolean shorthand, `_:label` blank nodes and `#` comments.
//! Collections, `[ ]` property lists and base/relative IRIs are rejected
//! with a diagnostic naming the construct.

mod parser;
mod writer;

pub(crate) use parser::{parse_pattern_line, PatternSlot};
pub use parser::{parse_turtle, TurtleError, TurtleErrorKind};
pub use writer::{serialize_turtle, term_to_turtle};
