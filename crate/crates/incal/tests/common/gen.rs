//! Random corpus generators for rules and systems: signatures with
//! arities up to 2, patterns of depth up to 1, every rule valid by
//! construction.

use std::collections::BTreeMap;

use incal::name::{Name, Symbol};
use incal::rng::SplitMix64;
use incal::system::{Rule, System};
use incal::term::Term;

pub fn random_signature(rng: &mut SplitMix64) -> BTreeMap<Symbol, usize> {
    let n = 2 + rng.below(2); // 2..=3 symbols
    (0..n)
        .map(|i| (Symbol(format!("s{i}")), rng.below(3)))
        .collect()
}

/// A pattern of depth at most 1: either a hole (future wiring name) or an
/// agent whose arguments are holes. Returns the pattern with holes as
/// placeholder machine names.
fn random_pattern(
    rng: &mut SplitMix64,
    sig: &BTreeMap<Symbol, usize>,
    holes: &mut u64,
) -> Term {
    let hole = |holes: &mut u64| {
        let h = *holes;
        *holes += 1;
        Term::Name(Name::Gen(h))
    };
    if rng.chance(60, 100) {
        hole(holes)
    } else {
        let syms: Vec<(&Symbol, &usize)> = sig.iter().collect();
        let (sym, arity) = syms[rng.below(syms.len())];
        Term::Agent(sym.clone(), (0..*arity).map(|_| hole(holes)).collect())
    }
}

/// A valid rule for `(a, b)`: patterns drawn until the number of holes is
/// even, then holes wired pairwise with fresh names.
pub fn random_rule(
    rng: &mut SplitMix64,
    sig: &BTreeMap<Symbol, usize>,
    a: &Symbol,
    b: &Symbol,
) -> Rule {
    loop {
        let mut holes = 0u64;
        let left_patterns: Vec<Term> = (0..sig[a])
            .map(|_| random_pattern(rng, sig, &mut holes))
            .collect();
        let right_patterns: Vec<Term> = (0..sig[b])
            .map(|_| random_pattern(rng, sig, &mut holes))
            .collect();
        if !holes.is_multiple_of(2) {
            continue;
        }
        let mut ids: Vec<u64> = (0..holes).collect();
        rng.shuffle(&mut ids);
        let mut map: BTreeMap<Name, Name> = BTreeMap::new();
        for (w, pair) in ids.chunks(2).enumerate() {
            let n = Name::User(format!("p{w}"));
            map.insert(Name::Gen(pair[0]), n.clone());
            map.insert(Name::Gen(pair[1]), n);
        }
        fn fill(t: &Term, map: &BTreeMap<Name, Name>) -> Term {
            match t {
                Term::Name(n) => Term::Name(map[n].clone()),
                Term::Agent(s, args) => {
                    Term::Agent(s.clone(), args.iter().map(|x| fill(x, map)).collect())
                }
            }
        }
        return Rule {
            left: a.clone(),
            right: b.clone(),
            left_patterns: left_patterns.iter().map(|p| fill(p, &map)).collect(),
            right_patterns: right_patterns.iter().map(|p| fill(p, &map)).collect(),
        };
    }
}

/// A valid system: a random signature plus rules for a random subset of
/// the unordered symbol pairs.
pub fn random_system(rng: &mut SplitMix64) -> System {
    let sig = random_signature(rng);
    let symbols: Vec<Symbol> = sig.keys().cloned().collect();
    let mut rules = Vec::new();
    for i in 0..symbols.len() {
        for j in i..symbols.len() {
            if rng.chance(60, 100) {
                rules.push(random_rule(rng, &sig, &symbols[i], &symbols[j]));
            }
        }
    }
    System::new(sig, rules)
}

/// Rule pairs over shared signatures: same-symbol pairs, cross pairs,
/// and literal self-pairs all occur.
pub fn rule_pair_corpus(count: usize, seed: u64) -> Vec<(Rule, Rule)> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let sig = random_signature(&mut rng);
        let symbols: Vec<Symbol> = sig.keys().cloned().collect();
        let pick = |rng: &mut SplitMix64| {
            let i = rng.below(symbols.len());
            let j = rng.below(symbols.len());
            (symbols[i].clone(), symbols[j].clone())
        };
        let (a1, b1) = pick(&mut rng);
        let r1 = random_rule(&mut rng, &sig, &a1, &b1);
        let r2 = match rng.below(3) {
            0 => r1.clone(),
            1 => random_rule(&mut rng, &sig, &a1, &b1),
            _ => {
                let (a2, b2) = pick(&mut rng);
                random_rule(&mut rng, &sig, &a2, &b2)
            }
        };
        out.push((r1, r2));
    }
    out
}

/// Systems assembled from the same kind of corpus.
pub fn system_corpus(count: usize, seed: u64) -> Vec<System> {
    let mut rng = SplitMix64::new(seed);
    (0..count).map(|_| random_system(&mut rng)).collect()
}
