//! Netlist language for qlight circuits: parser, canonical emitter,
//! runner, and the structured-text result schema.

pub mod document;
pub mod emit;
pub mod parse;
pub mod result;
pub mod run;

pub use document::{Directive, NetlistDocument, SegmentKind, Statement, VERSION};
pub use emit::{directive_line, emit_netlist, synthesis_lines};
pub use parse::{parse_netlist, parse_netlist_file, parse_netlist_with_base, ParseError};
pub use result::{emit_result, parse_result, Histogram, RunResult};
pub use run::{build_circuit, run_netlist};

#[derive(Debug, thiserror::Error)]
pub enum NetlistError {
    #[error("{}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("\n"))]
    Parse(Vec<ParseError>),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Validation(String),
    #[error("malformed result document: {0}")]
    Result(String),
    #[error(transparent)]
    Core(#[from] qlight::Error),
}
