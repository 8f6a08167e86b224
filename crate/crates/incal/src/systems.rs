//! Builtin interaction systems, addressable by name.

use crate::parse::parse_system;
use crate::system::System;

/// Names accepted anywhere a system can be referenced.
pub const BUILTIN_NAMES: [&str; 5] = [
    "combinators",
    "linlam",
    "trivial-eps",
    "rev-demo",
    "rev-commutation",
];

/// The interaction combinators: gamma/2, delta/2, eps/0 with all six
/// rules (two annihilations, duplication, two erasures, eps-eps).
pub fn combinators() -> System {
    parse_system(
        "agents { gamma/2, delta/2, eps/0 }\n\
         rule gamma[x, y] >< gamma[y, x];\n\
         rule delta[x, y] >< delta[x, y];\n\
         rule eps[] >< eps[];\n\
         rule gamma[delta(x1, x2), delta(y1, y2)] >< delta[gamma(x1, y1), gamma(x2, y2)];\n\
         rule gamma[eps(), eps()] >< eps[];\n\
         rule delta[eps(), eps()] >< eps[];",
    )
    .expect("builtin parses")
    .system
}

/// The linear lambda calculus: one rule, app[x, y] >< lam[x, y].
pub fn linlam() -> System {
    parse_system("agents { app/2, lam/2 } rule app[x, y] >< lam[x, y];")
        .expect("builtin parses")
        .system
}

/// A single nullary agent with its self-rule.
pub fn trivial_eps() -> System {
    parse_system("agents { eps/0 } rule eps[] >< eps[];")
        .expect("builtin parses")
        .system
}

/// A small reversible system: alpha[x, y] >< beta[gamma(x, y)].
pub fn rev_demo() -> System {
    parse_system(
        "agents { alpha/2, beta/1, gamma/2 }\n\
         rule alpha[x, y] >< beta[gamma(x, y)];",
    )
    .expect("builtin parses")
    .system
}

/// The duplication rule alone: reversible, used for commutation
/// experiments.
pub fn rev_commutation() -> System {
    parse_system(
        "agents { gamma/2, delta/2 }\n\
         rule gamma[delta(x1, x2), delta(y1, y2)] >< delta[gamma(x1, y1), gamma(x2, y2)];",
    )
    .expect("builtin parses")
    .system
}

/// Resolves a builtin system by name.
pub fn builtin(name: &str) -> Option<System> {
    match name {
        "combinators" => Some(combinators()),
        "linlam" => Some(linlam()),
        "trivial-eps" => Some(trivial_eps()),
        "rev-demo" => Some(rev_demo()),
        "rev-commutation" => Some(rev_commutation()),
        _ => None,
    }
}
