//! Interaction rules and systems, with validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::config::Configuration;
use crate::name::{Name, Symbol};
use crate::term::Term;

/// An interaction rule `alpha[v...] >< beta[w...]`.
///
/// The names in the patterns are the rule's bound wiring: each must occur
/// exactly twice across both pattern vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub left: Symbol,
    pub right: Symbol,
    pub left_patterns: Vec<Term>,
    pub right_patterns: Vec<Term>,
}

impl Rule {
    pub fn new(
        left: impl Into<String>,
        left_patterns: Vec<Term>,
        right: impl Into<String>,
        right_patterns: Vec<Term>,
    ) -> Self {
        Rule {
            left: Symbol(left.into()),
            right: Symbol(right.into()),
            left_patterns,
            right_patterns,
        }
    }

    /// Rule arity: ar(left) + ar(right).
    pub fn arity(&self) -> usize {
        self.left_patterns.len() + self.right_patterns.len()
    }

    /// Pattern sides in slot order: left slots first, then right slots.
    pub fn patterns(&self) -> impl Iterator<Item = &Term> {
        self.left_patterns.iter().chain(self.right_patterns.iter())
    }

    /// The rule's bound names in first-occurrence order over the patterns.
    pub fn bound_names(&self) -> Vec<Name> {
        let mut seen = Vec::new();
        for p in self.patterns() {
            p.visit_names(&mut |n| {
                if !seen.contains(n) {
                    seen.push(n.clone());
                }
            });
        }
        seen
    }

    /// The same rule with its two sides exchanged.
    pub fn flipped(&self) -> Rule {
        Rule {
            left: self.right.clone(),
            right: self.left.clone(),
            left_patterns: self.right_patterns.clone(),
            right_patterns: self.left_patterns.clone(),
        }
    }

    /// True if this rule is for the unordered symbol pair `(a, b)`.
    pub fn is_for(&self, a: &Symbol, b: &Symbol) -> bool {
        (&self.left == a && &self.right == b) || (&self.left == b && &self.right == a)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |pats: &[Term]| {
            pats.iter()
                .map(Term::to_string)
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "{}[{}] >< {}[{}]",
            self.left,
            join(&self.left_patterns),
            self.right,
            join(&self.right_patterns)
        )
    }
}

/// A signature (agent symbols with arities) plus a rule set, at most one
/// rule per unordered pair of symbols.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct System {
    pub signature: BTreeMap<Symbol, usize>,
    pub rules: Vec<Rule>,
}

impl System {
    pub fn new(signature: BTreeMap<Symbol, usize>, rules: Vec<Rule>) -> Self {
        System { signature, rules }
    }

    pub fn arity(&self, sym: &Symbol) -> Option<usize> {
        self.signature.get(sym).copied()
    }

    /// Finds the rule for the unordered pair `(a, b)`. The flag is true
    /// when the rule is stored with `a` on its right side.
    pub fn rule_for(&self, a: &Symbol, b: &Symbol) -> Option<(usize, bool)> {
        for (i, r) in self.rules.iter().enumerate() {
            if &r.left == a && &r.right == b {
                return Some((i, false));
            }
            if &r.left == b && &r.right == a {
                return Some((i, true));
            }
        }
        None
    }
}

/// A single validation finding, with enough context to locate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    UndeclaredAgent {
        symbol: Symbol,
        context: String,
    },
    ArityMismatch {
        symbol: Symbol,
        declared: usize,
        found: usize,
        context: String,
    },
    /// A name occurs more than twice in a configuration.
    LinearityViolation {
        name: Name,
        count: usize,
    },
    /// A rule pattern name does not occur exactly twice.
    RuleNameCount {
        name: Name,
        count: usize,
        rule: String,
    },
    DuplicateRulePair {
        left: Symbol,
        right: Symbol,
    },
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Problem::UndeclaredAgent { symbol, context } => {
                write!(f, "undeclared agent {symbol} in {context}")
            }
            Problem::ArityMismatch {
                symbol,
                declared,
                found,
                context,
            } => write!(
                f,
                "agent {symbol} declared with arity {declared} but used with {found} arguments in {context}"
            ),
            Problem::LinearityViolation { name, count } => {
                write!(f, "name {name} occurs {count} times (at most 2 allowed)")
            }
            Problem::RuleNameCount { name, count, rule } => write!(
                f,
                "name {name} occurs {count} times in rule {rule} (bound wiring names must occur exactly twice)"
            ),
            Problem::DuplicateRulePair { left, right } => {
                write!(f, "more than one rule for the agent pair ({left}, {right})")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Warning {
    /// `x = t` with `x` occurring inside `t`: valid but inert, no
    /// reduction rule consumes it.
    CyclicEquation { name: Name, equation: String },
    /// A rule between equal symbols whose contractum is not invariant
    /// under swapping the two sides of the active pair.
    NonCoherentSelfRule { rule: String },
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Warning::CyclicEquation { name, equation } => {
                write!(f, "cyclic equation {equation}: {name} occurs inside its own definition")
            }
            Warning::NonCoherentSelfRule { rule } => write!(
                f,
                "rule {rule} relates an agent to itself but its contractum is not symmetric; \
                 interaction picks a fixed orientation"
            ),
        }
    }
}

/// Outcome of validation: `ok()` iff there are no errors. Warnings do not
/// make a value invalid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<Problem>,
    pub warnings: Vec<Warning>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.errors.is_empty()
    }
}

fn check_term_agents(sys: &System, t: &Term, context: &str, errors: &mut Vec<Problem>) {
    match t {
        Term::Name(_) => {}
        Term::Agent(sym, args) => {
            match sys.arity(sym) {
                None => errors.push(Problem::UndeclaredAgent {
                    symbol: sym.clone(),
                    context: context.to_string(),
                }),
                Some(declared) if declared != args.len() => errors.push(Problem::ArityMismatch {
                    symbol: sym.clone(),
                    declared,
                    found: args.len(),
                    context: context.to_string(),
                }),
                Some(_) => {}
            }
            for a in args {
                check_term_agents(sys, a, context, errors);
            }
        }
    }
}

/// Checks linearity and agent arities of a configuration; flags cyclic
/// equations as warnings. Never aborts: all findings are collected.
pub fn validate_config(sys: &System, c: &Configuration) -> ValidationReport {
    let mut report = ValidationReport::default();
    for (name, count) in c.occurrences() {
        if count > 2 {
            report.errors.push(Problem::LinearityViolation { name, count });
        }
    }
    for (i, t) in c.interface.iter().enumerate() {
        check_term_agents(sys, t, &format!("interface entry {i}"), &mut report.errors);
    }
    for e in &c.body {
        let ctx = format!("equation {e}");
        check_term_agents(sys, &e.0, &ctx, &mut report.errors);
        check_term_agents(sys, &e.1, &ctx, &mut report.errors);
        for (name_side, term_side) in [(&e.0, &e.1), (&e.1, &e.0)] {
            if let Term::Name(x) = name_side {
                if term_side.count_name(x) > 0 {
                    report.warnings.push(Warning::CyclicEquation {
                        name: x.clone(),
                        equation: e.to_string(),
                    });
                    break;
                }
            }
        }
    }
    report
}

/// Checks that every rule is well formed: declared symbols, matching
/// arities, bound names occurring exactly twice, one rule per unordered
/// pair. Rules between equal symbols get a coherence warning when their
/// contractum is not swap-invariant.
pub fn validate_system(sys: &System) -> ValidationReport {
    let mut report = ValidationReport::default();
    let mut pairs_seen: BTreeSet<(Symbol, Symbol)> = BTreeSet::new();
    for rule in &sys.rules {
        let rule_str = rule.to_string();
        for (sym, pats) in [
            (&rule.left, &rule.left_patterns),
            (&rule.right, &rule.right_patterns),
        ] {
            match sys.arity(sym) {
                None => report.errors.push(Problem::UndeclaredAgent {
                    symbol: sym.clone(),
                    context: format!("rule {rule_str}"),
                }),
                Some(declared) if declared != pats.len() => {
                    report.errors.push(Problem::ArityMismatch {
                        symbol: sym.clone(),
                        declared,
                        found: pats.len(),
                        context: format!("rule {rule_str}"),
                    })
                }
                Some(_) => {}
            }
            for p in pats {
                check_term_agents(sys, p, &format!("rule {rule_str}"), &mut report.errors);
            }
        }

        let mut counts: BTreeMap<Name, usize> = BTreeMap::new();
        for p in rule.patterns() {
            p.visit_names(&mut |n| {
                *counts.entry(n.clone()).or_insert(0) += 1;
            });
        }
        for (name, count) in counts {
            if count != 2 {
                report.errors.push(Problem::RuleNameCount {
                    name,
                    count,
                    rule: rule_str.clone(),
                });
            }
        }

        let key = if rule.left <= rule.right {
            (rule.left.clone(), rule.right.clone())
        } else {
            (rule.right.clone(), rule.left.clone())
        };
        if !pairs_seen.insert(key) {
            report.errors.push(Problem::DuplicateRulePair {
                left: rule.left.clone(),
                right: rule.right.clone(),
            });
        }

        if rule.left == rule.right
            && report.errors.is_empty()
            && !self_rule_coherent(rule)
        {
            report
                .warnings
                .push(Warning::NonCoherentSelfRule { rule: rule_str });
        }
    }
    report
}

/// For a rule `alpha >< alpha`, checks that firing the active pair with
/// either side bound to the left patterns yields congruent contracta.
fn self_rule_coherent(rule: &Rule) -> bool {
    use crate::canon::congruent;
    use crate::config::Equation;

    let n = rule.left_patterns.len();
    let mut max_gen = 0u64;
    for p in rule.patterns() {
        p.visit_names(&mut |nm| {
            if let Name::Gen(k) = nm {
                max_gen = max_gen.max(k + 1);
            }
        });
    }
    let slot = |i: usize| Term::Name(Name::Gen(max_gen + i as u64));
    let interface: Vec<Term> = (0..2 * n).map(slot).collect();
    let body = |first_to_left: bool| -> Vec<Equation> {
        let (t_base, u_base) = if first_to_left { (0, n) } else { (n, 0) };
        let mut eqs = Vec::new();
        for (i, v) in rule.left_patterns.iter().enumerate() {
            eqs.push(Equation(slot(t_base + i), v.clone()));
        }
        for (j, w) in rule.right_patterns.iter().enumerate() {
            eqs.push(Equation(slot(u_base + j), w.clone()));
        }
        eqs
    };
    let c1 = Configuration::new(interface.clone(), body(true));
    let c2 = Configuration::new(interface, body(false));
    congruent(&c1, &c2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(entries: &[(&str, usize)]) -> BTreeMap<Symbol, usize> {
        entries
            .iter()
            .map(|(s, a)| (Symbol::from(*s), *a))
            .collect()
    }

    fn name(s: &str) -> Term {
        Term::name(s)
    }

    #[test]
    fn linear_lambda_system_validates() {
        let sys = System::new(
            sig(&[("app", 2), ("lam", 2)]),
            vec![Rule::new(
                "app",
                vec![name("x"), name("y")],
                "lam",
                vec![name("x"), name("y")],
            )],
        );
        assert!(validate_system(&sys).ok());
    }

    #[test]
    fn rule_wiring_name_must_occur_twice() {
        // alpha[x, x] >< beta[y] with y occurring once
        let sys = System::new(
            sig(&[("alpha", 2), ("beta", 1)]),
            vec![Rule::new(
                "alpha",
                vec![name("x"), name("x")],
                "beta",
                vec![name("y")],
            )],
        );
        let report = validate_system(&sys);
        assert!(report.errors.iter().any(|p| matches!(
            p,
            Problem::RuleNameCount { name: Name::User(n), count: 1, .. } if n == "y"
        )));
    }

    #[test]
    fn two_rules_for_one_pair_rejected() {
        let rule = Rule::new(
            "gamma",
            vec![name("x"), name("y")],
            "gamma",
            vec![name("y"), name("x")],
        );
        let sys = System::new(sig(&[("gamma", 2)]), vec![rule.clone(), rule]);
        let report = validate_system(&sys);
        assert!(report
            .errors
            .iter()
            .any(|p| matches!(p, Problem::DuplicateRulePair { .. })));
    }

    #[test]
    fn chain_configuration_is_linear() {
        // < a | a = b, b = c, c = d > : every name occurs at most twice
        let sys = System::new(sig(&[]), vec![]);
        let c = Configuration::new(
            vec![name("a")],
            vec![
                crate::config::Equation(name("a"), name("b")),
                crate::config::Equation(name("b"), name("c")),
                crate::config::Equation(name("c"), name("d")),
            ],
        );
        assert!(validate_config(&sys, &c).ok());
    }

    #[test]
    fn three_occurrences_violate_linearity() {
        // < a | a = b, b = gamma(b, c) > : b occurs 3 times
        let sys = System::new(sig(&[("gamma", 2)]), vec![]);
        let c = Configuration::new(
            vec![name("a")],
            vec![
                crate::config::Equation(name("a"), name("b")),
                crate::config::Equation(name("b"), Term::agent("gamma", vec![name("b"), name("c")])),
            ],
        );
        let report = validate_config(&sys, &c);
        assert!(report.errors.iter().any(|p| matches!(
            p,
            Problem::LinearityViolation { name: Name::User(n), count: 3 } if n == "b"
        )));
    }

    #[test]
    fn cyclic_equation_is_a_warning_not_an_error() {
        // < | x = gamma(x, y), y = a > : ok, free name a, cyclic warning on x
        let sys = System::new(sig(&[("gamma", 2)]), vec![]);
        let c = Configuration::new(
            vec![],
            vec![
                crate::config::Equation(
                    name("x"),
                    Term::agent("gamma", vec![name("x"), name("y")]),
                ),
                crate::config::Equation(name("y"), name("a")),
            ],
        );
        let report = validate_config(&sys, &c);
        assert!(report.ok());
        assert_eq!(c.free_names(), vec![Name::user("a")]);
        assert!(report
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::CyclicEquation { .. })));
    }

    #[test]
    fn gamma_annihilation_is_coherent_but_skewed_self_rule_warns() {
        let sys = System::new(
            sig(&[("gamma", 2)]),
            vec![Rule::new(
                "gamma",
                vec![name("x"), name("y")],
                "gamma",
                vec![name("y"), name("x")],
            )],
        );
        let report = validate_system(&sys);
        assert!(report.ok() && report.warnings.is_empty());

        let skewed = System::new(
            sig(&[("alpha", 1), ("one", 0), ("two", 0)]),
            vec![Rule::new(
                "alpha",
                vec![Term::agent("one", vec![])],
                "alpha",
                vec![Term::agent("two", vec![])],
            )],
        );
        let report = validate_system(&skewed);
        assert!(report.ok());
        assert!(report
            .warnings
            .iter()
            .any(|w| matches!(w, Warning::NonCoherentSelfRule { .. })));
    }
}
