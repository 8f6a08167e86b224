#![allow(dead_code)]

//! Shared test helpers: brute-force oracles independent of the library's
//! search paths, and random corpus generators.

pub mod gen;
pub mod oracle;
