//! Brute-force oracles, kept independent of the implementation paths
//! they check.

use std::collections::BTreeMap;

use incal::canon::congruent;
use incal::config::{Configuration, Equation};
use incal::name::Name;
use incal::system::Rule;
use incal::term::Term;

use itertools::Itertools;

// ---------------------------------------------------------------------
// congruence by exhaustive search
// ---------------------------------------------------------------------

fn rename_term(t: &Term, map: &BTreeMap<Name, Name>) -> Term {
    match t {
        Term::Name(n) => Term::Name(map.get(n).cloned().unwrap_or_else(|| n.clone())),
        Term::Agent(s, args) => Term::Agent(
            s.clone(),
            args.iter().map(|a| rename_term(a, map)).collect(),
        ),
    }
}

fn bound_names(c: &Configuration) -> Vec<Name> {
    c.occurrences()
        .into_iter()
        .filter(|(_, k)| *k == 2)
        .map(|(n, _)| n)
        .collect()
}

/// Congruence decided by enumerating every bound-name bijection; the
/// body comparison is orientation- and order-insensitive by definition
/// of the configuration equality.
pub fn brute_congruent(c1: &Configuration, c2: &Configuration) -> bool {
    let b1 = bound_names(c1);
    let b2 = bound_names(c2);
    if b1.len() != b2.len() {
        return false;
    }
    b2.iter()
        .cloned()
        .permutations(b2.len())
        .any(|perm| {
            let map: BTreeMap<Name, Name> = b1.iter().cloned().zip(perm).collect();
            let renamed = Configuration::new(
                c1.interface.iter().map(|t| rename_term(t, &map)).collect(),
                c1.body
                    .iter()
                    .map(|e| Equation(rename_term(&e.0, &map), rename_term(&e.1, &map)))
                    .collect(),
            );
            renamed == *c2
        })
}

// ---------------------------------------------------------------------
// clash decision by generic unification over the two templates
// ---------------------------------------------------------------------

/// Terms over the two instances' variables: argument slots are
/// term-valued, bound-name variables are name-valued. For a self-pair
/// both instances share pool 0.
#[derive(Clone, Debug, PartialEq, Eq)]
enum UTerm {
    Slot(u8, usize),
    NVar(u8, usize),
    Agent(String, Vec<UTerm>),
}

type Subst = BTreeMap<(u8, u8, usize), UTerm>; // (kind: 0 slot | 1 nvar, inst, idx)

fn walk(t: &UTerm, s: &Subst) -> UTerm {
    match t {
        UTerm::Slot(i, k) => match s.get(&(0, *i, *k)) {
            Some(b) => walk(b, s),
            None => t.clone(),
        },
        UTerm::NVar(i, k) => match s.get(&(1, *i, *k)) {
            Some(b) => walk(b, s),
            None => t.clone(),
        },
        UTerm::Agent(..) => t.clone(),
    }
}

fn occurs(key: (u8, u8, usize), t: &UTerm, s: &Subst) -> bool {
    match walk(t, s) {
        UTerm::Slot(i, k) => key == (0, i, k),
        UTerm::NVar(i, k) => key == (1, i, k),
        UTerm::Agent(_, args) => args.iter().any(|a| occurs(key, a, s)),
    }
}

fn unify(a: &UTerm, b: &UTerm, s: &mut Subst) -> bool {
    let (a, b) = (walk(a, s), walk(b, s));
    match (&a, &b) {
        (UTerm::Slot(i, k), _) => {
            if a == b {
                return true;
            }
            if occurs((0, *i, *k), &b, s) {
                return false;
            }
            s.insert((0, *i, *k), b.clone());
            true
        }
        (_, UTerm::Slot(..)) => unify(&b, &a, s),
        (UTerm::NVar(i, k), UTerm::NVar(..)) => {
            if a == b {
                return true;
            }
            s.insert((1, *i, *k), b.clone());
            true
        }
        (UTerm::NVar(..), UTerm::Agent(..)) | (UTerm::Agent(..), UTerm::NVar(..)) => false,
        (UTerm::Agent(s1, a1), UTerm::Agent(s2, a2)) => {
            s1 == s2
                && a1.len() == a2.len()
                && a1
                    .iter()
                    .zip(a2.iter())
                    .all(|(x, y)| unify(&x.clone(), &y.clone(), s))
        }
    }
}

fn pattern_to_uterm(p: &Term, inst: u8, bounds: &[Name]) -> UTerm {
    match p {
        Term::Name(n) => UTerm::NVar(inst, bounds.iter().position(|b| b == n).expect("bound")),
        Term::Agent(sym, args) => UTerm::Agent(
            sym.to_string(),
            args.iter()
                .map(|a| pattern_to_uterm(a, inst, bounds))
                .collect(),
        ),
    }
}

/// Names appearing in the walked value of a term, per pool.
fn pools_in_value(t: &UTerm, s: &Subst, out: &mut Vec<(u8, usize)>) {
    match walk(t, s) {
        UTerm::Slot(..) => {}
        UTerm::NVar(i, k) => out.push((i, k)),
        UTerm::Agent(_, args) => {
            for a in &args {
                pools_in_value(a, s, out);
            }
        }
    }
}

fn value_to_term(t: &UTerm, s: &Subst, fresh: &mut BTreeMap<(u8, u8, usize), Name>) -> Term {
    match walk(t, s) {
        UTerm::Slot(i, k) => {
            let n = fresh.len();
            Term::Name(
                fresh
                    .entry((0, i, k))
                    .or_insert_with(|| Name::User(format!("o{n}")))
                    .clone(),
            )
        }
        UTerm::NVar(i, k) => {
            let n = fresh.len();
            Term::Name(
                fresh
                    .entry((1, i, k))
                    .or_insert_with(|| Name::User(format!("o{n}")))
                    .clone(),
            )
        }
        UTerm::Agent(sym, args) => Term::Agent(
            incal::name::Symbol(sym),
            args.iter().map(|a| value_to_term(a, s, fresh)).collect(),
        ),
    }
}

/// Decides the clash relation by enumerating every pairing of the two
/// contractum templates with every per-equation orientation and solving
/// the resulting first-order constraints with a generic unifier.
/// Semantics mirror the library's contract: per-pool injectivity,
/// arguments avoid their own instance's pool, instances of the same rule
/// share one pool, and the two induced peaks must differ up to
/// congruence.
pub fn clash_oracle(r1: &Rule, r2: &Rule) -> bool {
    let k = r1.arity();
    if k != r2.arity() || k == 0 {
        return false;
    }
    let self_pair = incal::analysis::alpha_equivalent(r1, r2);
    let r2r = if self_pair { r1 } else { r2 };
    let b1 = r1.bound_names();
    let b2 = r2r.bound_names();
    let pool2: u8 = if self_pair { 0 } else { 1 };

    let pats1: Vec<UTerm> = r1
        .patterns()
        .map(|p| pattern_to_uterm(p, 0, &b1))
        .collect();
    let pats2: Vec<UTerm> = r2r
        .patterns()
        .map(|p| pattern_to_uterm(p, pool2, &b2))
        .collect();

    for pi in (0..k).permutations(k) {
        'mask: for mask in 0..(1u32 << k) {
            let mut s = Subst::new();
            let mut ok = true;
            for (j, &i) in pi.iter().enumerate() {
                let (l1, r1u) = (UTerm::Slot(0, i), pats1[i].clone());
                let (l2, r2u) = (UTerm::Slot(1, j), pats2[j].clone());
                let success = if mask & (1 << j) == 0 {
                    unify(&l1, &l2, &mut s) && unify(&r1u, &r2u, &mut s)
                } else {
                    unify(&l1, &r2u, &mut s) && unify(&r1u, &l2, &mut s)
                };
                if !success {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }

            // per-pool injectivity: two distinct name variables of one
            // pool may not be identified
            for (pool, len) in [(0u8, b1.len()), (pool2, b2.len())] {
                for x in 0..len {
                    for y in (x + 1)..len {
                        if walk(&UTerm::NVar(pool, x), &s) == walk(&UTerm::NVar(pool, y), &s) {
                            continue 'mask;
                        }
                    }
                }
            }

            // arguments avoid their own instance's pool
            for (inst, len, own_pool) in [(0u8, k, 0u8), (1u8, k, pool2)] {
                for idx in 0..len {
                    let mut pools = Vec::new();
                    pools_in_value(&UTerm::Slot(inst, idx), &s, &mut pools);
                    if pools.iter().any(|(p, _)| *p == own_pool) {
                        continue 'mask;
                    }
                }
            }

            // build the two peaks and require them to be different
            let mut fresh = BTreeMap::new();
            let m1 = r1.left_patterns.len();
            let args1: Vec<Term> = (0..k)
                .map(|i| value_to_term(&UTerm::Slot(0, i), &s, &mut fresh))
                .collect();
            let m2 = r2r.left_patterns.len();
            let args2: Vec<Term> = (0..k)
                .map(|j| value_to_term(&UTerm::Slot(1, j), &s, &mut fresh))
                .collect();
            let pair1 = Equation(
                Term::Agent(r1.left.clone(), args1[..m1].to_vec()),
                Term::Agent(r1.right.clone(), args1[m1..].to_vec()),
            );
            let pair2 = Equation(
                Term::Agent(r2r.left.clone(), args2[..m2].to_vec()),
                Term::Agent(r2r.right.clone(), args2[m2..].to_vec()),
            );
            let peak1 = Configuration::new(Vec::new(), vec![pair1]);
            let peak2 = Configuration::new(Vec::new(), vec![pair2]);
            if !congruent(&peak1, &peak2) {
                return true;
            }
        }
    }
    false
}

/// The small-universe instance enumeration: arguments drawn from `k`
/// distinct fresh names plus one synthetic nullary agent. Sound but not
/// complete (pattern-shaped arguments are out of reach), so it is used
/// as a one-directional check.
pub fn small_universe_clash(r1: &Rule, r2: &Rule) -> bool {
    let k = r1.arity();
    if k != r2.arity() || k == 0 {
        return false;
    }
    let self_pair = incal::analysis::alpha_equivalent(r1, r2);
    let r2r = if self_pair { r1 } else { r2 };

    let universe: Vec<Term> = (0..k)
        .map(|i| Term::name(format!("u{i}")))
        .chain(std::iter::once(Term::agent("qq_oracle", vec![])))
        .collect();

    let instantiate = |rule: &Rule, args: &[Term], pool_tag: &str| -> Vec<Equation> {
        let bounds = rule.bound_names();
        let map: BTreeMap<Name, Name> = bounds
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), Name::User(format!("{pool_tag}{i}"))))
            .collect();
        fn inst(t: &Term, map: &BTreeMap<Name, Name>) -> Term {
            match t {
                Term::Name(n) => Term::Name(map.get(n).cloned().unwrap_or_else(|| n.clone())),
                Term::Agent(s, a) => {
                    Term::Agent(s.clone(), a.iter().map(|x| inst(x, map)).collect())
                }
            }
        }
        args.iter()
            .zip(rule.patterns())
            .map(|(a, p)| Equation(a.clone(), inst(p, &map)))
            .collect()
    };

    let tuples = |k: usize| -> Vec<Vec<Term>> {
        let mut out: Vec<Vec<Term>> = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    universe.iter().map(move |t| {
                        let mut v = prefix.clone();
                        v.push(t.clone());
                        v
                    })
                })
                .collect();
        }
        out
    };

    let multiset =
        |eqs: &[Equation]| -> Vec<(Term, Term)> {
            let mut v: Vec<(Term, Term)> = eqs
                .iter()
                .map(|e| {
                    let (a, b) = e.normalized();
                    (a.clone(), b.clone())
                })
                .collect();
            v.sort();
            v
        };

    let b2_pool: Vec<usize> = (0..r2r.bound_names().len()).collect();
    for args1 in tuples(k) {
        let div1 = instantiate(r1, &args1, "p");
        let key1 = multiset(&div1);
        for args2 in tuples(k) {
            // instances of the same rule share one pool; different rules
            // try every identification of the second pool with the first
            let pools: Vec<Vec<usize>> = if self_pair {
                vec![b2_pool.clone()]
            } else {
                b2_pool.iter().copied().permutations(b2_pool.len()).collect()
            };
            for perm in pools {
                let bounds2 = r2r.bound_names();
                let map: BTreeMap<Name, Name> = bounds2
                    .iter()
                    .enumerate()
                    .map(|(i, b)| (b.clone(), Name::User(format!("p{}", perm[i]))))
                    .collect();
                fn inst(t: &Term, map: &BTreeMap<Name, Name>) -> Term {
                    match t {
                        Term::Name(n) => {
                            Term::Name(map.get(n).cloned().unwrap_or_else(|| n.clone()))
                        }
                        Term::Agent(s, a) => {
                            Term::Agent(s.clone(), a.iter().map(|x| inst(x, map)).collect())
                        }
                    }
                }
                let div2: Vec<Equation> = args2
                    .iter()
                    .zip(r2r.patterns())
                    .map(|(a, p)| Equation(a.clone(), inst(p, &map)))
                    .collect();
                if multiset(&div2) != key1 {
                    continue;
                }
                let m1 = r1.left_patterns.len();
                let pair1 = Equation(
                    Term::Agent(r1.left.clone(), args1[..m1].to_vec()),
                    Term::Agent(r1.right.clone(), args1[m1..].to_vec()),
                );
                let m2 = r2r.left_patterns.len();
                let pair2 = Equation(
                    Term::Agent(r2r.left.clone(), args2[..m2].to_vec()),
                    Term::Agent(r2r.right.clone(), args2[m2..].to_vec()),
                );
                let peak1 = Configuration::new(Vec::new(), vec![pair1]);
                let peak2 = Configuration::new(Vec::new(), vec![pair2]);
                if !congruent(&peak1, &peak2) {
                    return true;
                }
            }
        }
    }
    false
}
