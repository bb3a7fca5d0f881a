//! Checking, evaluation and translation of schematic sequent-calculus proofs.

pub mod frontend;
pub mod kernel;
pub mod rewrite;
pub mod schema;
pub mod silk;
pub mod syntax;
pub mod translate;

#[cfg(test)]
mod fixtures;
