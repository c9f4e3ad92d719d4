//! circir — a compiler toolchain and deterministic multi-host runtime for an
//! array-based cryptographic IR.
//!
//! Programs in the IR separate *circuit functions* (straight-line,
//! size-parameterized array computations bound to a single computation
//! protocol) from *non-circuit functions* (control flow, input/output, and
//! calls). Values move between hosts through explicit storage formats —
//! local cleartext, replicated copies, additive secret shares, and
//! commitments — with every transfer surfaced as an import or export event
//! in the run trace.
//!
//! The crate is organized as a conventional pass pipeline:
//!
//! - [`ir`] — abstract syntax, values, operators, and protocol formats
//! - [`parse`] — lexer, recursive-descent parser, and pretty-printer
//! - [`check`] — scoping, shape, and protocol-structure checking
//! - [`runtime`] — deterministic multi-host interpreter with simulated
//!   protocol backends and a trace log
//! - [`split`] — transforms surface programs (computation mixed into
//!   control flow) into strict IR by grouping statements into maximal
//!   circuit functions
//! - [`testgen`] — seeded random program/script generation used by the
//!   test suites

pub mod check;
pub mod ir;
pub mod parse;
pub mod runtime;
pub mod split;
pub mod testgen;
