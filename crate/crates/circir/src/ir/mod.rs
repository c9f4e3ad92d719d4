//! Abstract syntax and value model of the IR.
//!
//! Everything here is immutable after construction and freely shareable
//! between threads; the operations are pure functions.

mod ast;
mod protocol;
mod span;
mod value;

pub use ast::*;
pub use protocol::*;
pub use span::Span;
pub use value::*;
