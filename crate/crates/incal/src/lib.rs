//! A workbench for the interaction calculus.
//!
//! The crate models interaction systems (agent signatures plus interaction
//! rules) and configurations (an interface of observable terms plus a
//! multiset of equations), and provides:
//!
//! - forward reduction: interaction and indirection steps, normalization
//!   with traces ([`reduce`]);
//! - backward expansion: enumeration of all one-step predecessors of a
//!   configuration, up to congruence ([`expand`]);
//! - static reversibility analysis: clash detection between rules,
//!   rule connectedness, and reversibility verdicts ([`analysis`]);
//! - executable confluence experiments: constructive common predecessors,
//!   upward diamond checks, failure witnesses, and randomized
//!   counterexample search ([`lab`]);
//! - a small text format for systems and configurations ([`parse`],
//!   [`mod@print`]) and machine-readable reports ([`report`]).
//!
//! Run `cargo run --example tour` for a guided walk through the API, or
//! use the `incal` binary for the command-line interface.

pub mod analysis;
pub mod canon;
pub mod cli;
pub mod config;
pub mod expand;
pub mod lab;
pub mod name;
pub mod parse;
pub mod print;
pub mod reduce;
pub mod report;
pub mod rng;
pub mod system;
pub mod systems;
pub mod term;

pub use config::{Configuration, Equation};
pub use name::{Name, NameGen, Symbol};
pub use system::{Rule, System};
pub use term::Term;
