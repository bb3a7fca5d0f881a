//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use std::path::PathBuf;

use schemata::frontend::{Document, Workspace};
use schemata::rewrite::Theory;

pub mod mutations;
pub mod properties;

pub fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

pub fn text(name: &str) -> String {
    std::fs::read_to_string(corpus(name)).unwrap()
}

pub fn load(name: &str) -> Workspace {
    Workspace::load(&corpus(name), None, None, false).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn theory(name: &str) -> Theory {
    let ws = load(name);
    assert!(matches!(ws.document, Document::Theory), "{name} is not a theory");
    ws.theory
}

/// Unrolled proofs recurse deeply; run on a large stack.
pub fn big<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> T {
    std::thread::Builder::new().stack_size(256 << 20).spawn(f).unwrap().join().unwrap()
}
