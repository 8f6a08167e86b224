//! Canonical forms for configurations.
//!
//! Two configurations are congruent when they are equal up to renaming of
//! bound names (names occurring twice), orientation of each equation, and
//! reordering of the body multiset. The interface order and the free
//! names are significant and never touched.
//!
//! `canonicalize` computes a canonical representative of the congruence
//! class by searching for the lexicographically least rendering of the
//! body over all orders and orientations, assigning bound-name indices in
//! first-visit order. Ties branch (iterative refinement with
//! backtracking); configurations are small, so the worst case is
//! acceptable.

use std::collections::BTreeMap;

use crate::config::{Configuration, Equation};
use crate::name::{Name, Symbol};
use crate::term::Term;

/// Rendering of a term where bound names are replaced by their canonical
/// index. Free names stay rigid.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum KeyTerm {
    Bound(u32),
    Free(Name),
    Agent(Symbol, Vec<KeyTerm>),
}

type EqKey = (KeyTerm, KeyTerm);

/// Small persistent map from bound names to canonical indices. Linear
/// scan; configurations hold a handful of names.
#[derive(Clone, Debug, Default)]
struct Assign {
    map: Vec<(Name, u32)>,
}

impl Assign {
    fn get(&self, n: &Name) -> Option<u32> {
        self.map.iter().find(|(m, _)| m == n).map(|(_, i)| *i)
    }

    fn insert(&mut self, n: Name) -> u32 {
        let i = self.map.len() as u32;
        self.map.push((n, i));
        i
    }
}

struct Searcher<'a> {
    body: &'a [Equation],
    occ: &'a BTreeMap<Name, usize>,
    best: Option<Best>,
}

#[derive(Clone)]
struct Best {
    keys: Vec<EqKey>,
    order: Vec<(usize, bool)>,
    assign: Assign,
}

fn is_bound(occ: &BTreeMap<Name, usize>, n: &Name) -> bool {
    occ.get(n).copied() == Some(2)
}

fn render(t: &Term, occ: &BTreeMap<Name, usize>, assign: &mut Assign) -> KeyTerm {
    match t {
        Term::Name(n) => {
            if is_bound(occ, n) {
                let idx = match assign.get(n) {
                    Some(i) => i,
                    None => assign.insert(n.clone()),
                };
                KeyTerm::Bound(idx)
            } else {
                KeyTerm::Free(n.clone())
            }
        }
        Term::Agent(sym, args) => KeyTerm::Agent(
            sym.clone(),
            args.iter().map(|a| render(a, occ, assign)).collect(),
        ),
    }
}

impl<'a> Searcher<'a> {
    fn oriented_key(&self, idx: usize, flip: bool, assign: &Assign) -> (EqKey, Assign) {
        let eq = &self.body[idx];
        let (first, second) = if flip { (&eq.1, &eq.0) } else { (&eq.0, &eq.1) };
        let mut a = assign.clone();
        let key = (
            render(first, self.occ, &mut a),
            render(second, self.occ, &mut a),
        );
        (key, a)
    }

    fn search(
        &mut self,
        assign: Assign,
        used: &mut Vec<bool>,
        seq: &mut Vec<EqKey>,
        order: &mut Vec<(usize, bool)>,
        tied_with_best: bool,
    ) {
        let pos = seq.len();
        if pos == self.body.len() {
            let better = match &self.best {
                None => true,
                Some(b) => seq.as_slice() < b.keys.as_slice(),
            };
            if better {
                self.best = Some(Best {
                    keys: seq.clone(),
                    order: order.clone(),
                    assign,
                });
            }
            return;
        }

        // Candidates range over (equation, orientation): two orientations
        // can render equal keys while extending the assignment
        // differently, and both continuations must be explored.
        let mut candidates: Vec<(EqKey, usize, bool, Assign)> = Vec::new();
        for (i, &u) in used.iter().enumerate() {
            if u {
                continue;
            }
            for flip in [false, true] {
                let (key, next_assign) = self.oriented_key(i, flip, &assign);
                candidates.push((key, i, flip, next_assign));
            }
        }
        let min_key = candidates.iter().map(|(k, ..)| k.clone()).min().unwrap();

        // The minimal full sequence must pick a minimal key here; branch
        // over every candidate achieving it.
        let mut still_tied = tied_with_best;
        if let Some(best) = &self.best {
            if tied_with_best {
                match min_key.cmp(&best.keys[pos]) {
                    std::cmp::Ordering::Greater => return,
                    std::cmp::Ordering::Less => still_tied = false,
                    std::cmp::Ordering::Equal => {}
                }
            }
        } else {
            still_tied = false;
        }

        let mut taken: Vec<(usize, &Assign)> = Vec::new();
        for (key, i, flip, next_assign) in &candidates {
            if *key != min_key {
                continue;
            }
            // Equal key and equal assignment extension means an identical
            // continuation; skip the duplicate branch.
            if taken
                .iter()
                .any(|(j, a)| j == i && a.map == next_assign.map)
            {
                continue;
            }
            taken.push((*i, next_assign));
            used[*i] = true;
            seq.push(key.clone());
            order.push((*i, *flip));
            self.search(next_assign.clone(), used, seq, order, still_tied);
            order.pop();
            seq.pop();
            used[*i] = false;
        }
    }
}

fn rename_term(t: &Term, rename: &BTreeMap<Name, Name>) -> Term {
    match t {
        Term::Name(n) => Term::Name(rename.get(n).cloned().unwrap_or_else(|| n.clone())),
        Term::Agent(sym, args) => Term::Agent(
            sym.clone(),
            args.iter().map(|a| rename_term(a, rename)).collect(),
        ),
    }
}

/// Canonical representative of the congruence class of `c`.
///
/// Deterministic renaming of bound names to machine names `%0, %1, ...`
/// (skipping machine indices that occur free in `c`), deterministic
/// orientation of each equation, deterministic ordering of the body.
/// Idempotent, and two configurations have equal canonical forms iff they
/// are congruent.
pub fn canonicalize(c: &Configuration) -> Configuration {
    let occ = c.occurrences();

    // Interface first: its order is fixed, so bound names seen there get
    // their indices without any search.
    let mut assign = Assign::default();
    for t in &c.interface {
        render(t, &occ, &mut assign);
    }

    let mut searcher = Searcher {
        body: &c.body,
        occ: &occ,
        best: None,
    };
    let mut used = vec![false; c.body.len()];
    searcher.search(assign.clone(), &mut used, &mut Vec::new(), &mut Vec::new(), true);
    let best = searcher.best.unwrap_or(Best {
        keys: Vec::new(),
        order: Vec::new(),
        assign,
    });

    // Canonical indices map to %0, %1, ... skipping machine names that
    // are rigid in c (free machine names keep their spelling, so the
    // canonical bound names must avoid them).
    let mut taken: Vec<u64> = occ
        .iter()
        .filter(|(n, &k)| k != 2 && n.is_machine())
        .map(|(n, _)| match n {
            Name::Gen(g) => *g,
            Name::User(_) => unreachable!(),
        })
        .collect();
    taken.sort_unstable();
    let mut rename: BTreeMap<Name, Name> = BTreeMap::new();
    let mut next: u64 = 0;
    let mut sorted_by_index = best.assign.map.clone();
    sorted_by_index.sort_by_key(|(_, i)| *i);
    for (name, _) in sorted_by_index {
        while taken.binary_search(&next).is_ok() {
            next += 1;
        }
        rename.insert(name, Name::Gen(next));
        next += 1;
    }

    let interface = c.interface.iter().map(|t| rename_term(t, &rename)).collect();
    let body = best
        .order
        .iter()
        .map(|&(i, orient)| {
            let eq = &c.body[i];
            let (l, r) = if orient { (&eq.1, &eq.0) } else { (&eq.0, &eq.1) };
            Equation(rename_term(l, &rename), rename_term(r, &rename))
        })
        .collect();
    Configuration { interface, body }
}

/// True iff the configurations are equal up to bound-name renaming,
/// equation orientation, and body reordering.
pub fn congruent(c1: &Configuration, c2: &Configuration) -> bool {
    if c1.interface.len() != c2.interface.len() || c1.body.len() != c2.body.len() {
        return false;
    }
    canonicalize(c1) == canonicalize(c2)
}

/// A stable textual key for the congruence class of `c`. Suitable for
/// dedup sets and deterministic ordering.
pub fn canonical_key(c: &Configuration) -> String {
    canonicalize(c).to_string()
}
