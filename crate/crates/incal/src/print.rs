//! Printers: canonical configuration output and source-file output.

use std::collections::BTreeSet;

use crate::canon::canonicalize;
use crate::config::Configuration;
use crate::name::Name;
use crate::parse::SourceFile;
use crate::system::System;
use crate::term::Term;

/// Prints a configuration in canonical order with bound names renamed to
/// parser-friendly spellings (`x0`, `x1`, ... skipping collisions with
/// free names and agent symbols). `parse(print(c))` is congruent to `c`
/// whenever the free names of `c` are user names.
pub fn print_config(sys: &System, c: &Configuration) -> String {
    let canon = canonicalize(c);
    let occ = canon.occurrences();

    let mut avoid: BTreeSet<String> = occ
        .iter()
        .filter(|(_, &k)| k != 2)
        .map(|(n, _)| n.to_string())
        .collect();
    for sym in sys.signature.keys() {
        avoid.insert(sym.as_str().to_string());
    }

    // Bound names in the canonical form are %0, %1, ... in first-visit
    // order; rename them in that order.
    let mut bound: Vec<&Name> = occ
        .iter()
        .filter(|(_, &k)| k == 2)
        .map(|(n, _)| n)
        .collect();
    bound.sort();
    let mut rename: std::collections::BTreeMap<Name, Name> = Default::default();
    let mut i = 0usize;
    for n in bound {
        let spelling = loop {
            let cand = format!("x{i}");
            i += 1;
            if !avoid.contains(&cand) {
                break cand;
            }
        };
        rename.insert(n.clone(), Name::User(spelling));
    }

    fn ren(t: &Term, map: &std::collections::BTreeMap<Name, Name>) -> Term {
        match t {
            Term::Name(n) => Term::Name(map.get(n).cloned().unwrap_or_else(|| n.clone())),
            Term::Agent(sym, args) => {
                Term::Agent(sym.clone(), args.iter().map(|a| ren(a, map)).collect())
            }
        }
    }

    let out = Configuration::new(
        canon.interface.iter().map(|t| ren(t, &rename)).collect(),
        canon
            .body
            .iter()
            .map(|e| crate::config::Equation(ren(&e.0, &rename), ren(&e.1, &rename)))
            .collect(),
    );
    out.to_string()
}

/// Prints a whole source file. Reparsing the output yields the same
/// system and configurations.
pub fn print_source(file: &SourceFile) -> String {
    let mut out = String::new();
    if !file.system.signature.is_empty() {
        let decls: Vec<String> = file
            .system
            .signature
            .iter()
            .map(|(sym, ar)| format!("{sym}/{ar}"))
            .collect();
        out.push_str(&format!("agents {{ {} }}\n", decls.join(", ")));
    }
    for rule in &file.system.rules {
        out.push_str(&format!("rule {rule};\n"));
    }
    for (name, c) in &file.configs {
        out.push_str(&format!("config {name} = {c};\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::congruent;
    use crate::config::Equation;
    use crate::parse::{parse_config, parse_system};

    #[test]
    fn prints_trivial_interfaces() {
        let sys = System::default();
        let c = Configuration::new(vec![Term::name("a")], vec![]);
        assert_eq!(print_config(&sys, &c), "< a | >");
        assert_eq!(print_config(&sys, &Configuration::empty()), "< | >");
    }

    #[test]
    fn printed_config_reparses_congruently() {
        let file = parse_system("agents { gamma/2 }").unwrap();
        let c = Configuration::new(
            vec![Term::name("a")],
            vec![
                Equation(Term::name("w"), Term::name("a")),
                Equation(
                    Term::name("w"),
                    Term::agent("gamma", vec![Term::name("b"), Term::name("b")]),
                ),
            ],
        );
        let printed = print_config(&file.system, &c);
        let reparsed = parse_config(&file.system, &printed).unwrap();
        assert!(congruent(&c, &reparsed));
    }

    #[test]
    fn bound_spellings_avoid_free_names_and_agents() {
        // Free name x0 and agent x1 are both taken.
        let file = parse_system("agents { x1/0 }").unwrap();
        let c = Configuration::new(
            vec![Term::name("x0"), Term::name("w"), Term::name("w")],
            vec![],
        );
        let printed = print_config(&file.system, &c);
        assert_eq!(printed, "< x0, x2, x2 | >");
        let reparsed = parse_config(&file.system, &printed).unwrap();
        assert!(congruent(&c, &reparsed));
    }

    #[test]
    fn source_round_trip_is_identity() {
        let src = "agents { app/2, lam/2, eps/0 }\n\
                   rule app[x, y] >< lam[x, y];\n\
                   config id = < r | app(a, r) = lam(b, b), a = eps() >;\n";
        let file = parse_system(src).unwrap();
        let printed = print_source(&file);
        let file2 = parse_system(&printed).unwrap();
        assert_eq!(file, file2);
    }
}
