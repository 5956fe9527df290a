//! Command-line surface for the operational calculus: an expression language
//! over `s`, `l`, `h` and the operators `T`, `tau`, `sigma`, `dds`, `D`, `Dp`,
//! lowered onto the exact classes of `opcalc`.

pub mod commands;
pub mod error;
pub mod expr;
pub mod lower;
pub mod parse;

pub use error::CliError;
pub use expr::{BinOp, Expr, OpKind};
pub use lower::{lower, Value};
pub use parse::{parse, ParseError};
