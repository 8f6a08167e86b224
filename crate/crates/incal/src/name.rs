//! Names and agent symbols.
//!
//! Names come in two disjoint namespaces: user names written in source
//! (`[a-zA-Z][a-zA-Z0-9_]*`) and machine names generated by the engine,
//! spelled `%0`, `%1`, ... The parser rejects the `%` spelling, so a
//! machine name can never collide with anything a user wrote.

use std::fmt;

/// A wire name. Occurring once in a configuration it is free; occurring
/// twice it is bound wiring.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Name {
    /// A user-written identifier.
    User(String),
    /// A machine-generated name, printed `%n`.
    Gen(u64),
}

impl Name {
    pub fn user(s: impl Into<String>) -> Self {
        Name::User(s.into())
    }

    pub fn is_machine(&self) -> bool {
        matches!(self, Name::Gen(_))
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Name::User(s) => f.write_str(s),
            Name::Gen(n) => write!(f, "%{n}"),
        }
    }
}

/// An agent symbol, e.g. `gamma` in `gamma(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub String);

impl Symbol {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol(s.to_string())
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Counter state for drawing fresh machine names. Deterministic: a given
/// counter value always yields the same name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameGen {
    next: u64,
}

impl NameGen {
    pub fn new() -> Self {
        NameGen { next: 0 }
    }

    pub fn starting_at(next: u64) -> Self {
        NameGen { next }
    }

    /// Returns a machine name never returned before by this counter.
    pub fn fresh(&mut self) -> Name {
        let n = self.next;
        self.next += 1;
        Name::Gen(n)
    }

    pub fn peek(&self) -> u64 {
        self.next
    }
}
