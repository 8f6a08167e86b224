//! Backward step enumeration: all one-step predecessors of a
//! configuration under indirection and interaction, up to congruence.

use std::collections::{BTreeMap, BTreeSet};

use crate::canon::canonical_key;
use crate::config::{Configuration, Equation, Position, Side};
use crate::name::Name;
use crate::reduce::{indirect, interact};
use crate::system::System;
use crate::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionKind {
    Indirection,
    Interaction,
}

/// A one-step predecessor of a base configuration, together with the
/// inverse-step data on the base configuration's coordinates.
#[derive(Clone, Debug)]
pub struct Expansion {
    pub kind: ExpansionKind,
    pub config: Configuration,
    /// Canonical key of `config`; predecessors are deduplicated and
    /// ordered by it.
    pub key: String,
    pub meta: ExpansionMeta,
}

#[derive(Clone, Debug)]
pub enum ExpansionMeta {
    Indirection(IndirectionMeta),
    Interaction(InteractionMeta),
}

impl Expansion {
    pub fn indirection_meta(&self) -> Option<&IndirectionMeta> {
        match &self.meta {
            ExpansionMeta::Indirection(m) => Some(m),
            ExpansionMeta::Interaction(_) => None,
        }
    }

    pub fn interaction_meta(&self) -> Option<&InteractionMeta> {
        match &self.meta {
            ExpansionMeta::Interaction(m) => Some(m),
            ExpansionMeta::Indirection(_) => None,
        }
    }
}

/// The predecessor abstracted the subterm at `position` of the base
/// configuration into a fresh name plus one equation.
#[derive(Clone, Debug)]
pub struct IndirectionMeta {
    pub position: Position,
    pub abstracted: Term,
    pub fresh: Name,
    /// Index of the added equation `fresh = abstracted` in the
    /// predecessor's body (always the last one).
    pub added_eq: usize,
}

/// How one slot of the recovered active pair matched the base body.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SlotMatch {
    /// Body index (in the base configuration) of the contractum equation
    /// for this slot.
    pub body_index: usize,
    /// The side of that equation holding the captured argument term; the
    /// other side is the instantiated rule pattern.
    pub arg_side: Side,
}

/// A match of a rule's contractum pattern against a sub-multiset of the
/// base body: the selected equations, instantiated through `bound_map`,
/// equal the contractum instance exactly.
#[derive(Clone, Debug)]
pub struct InteractionMeta {
    pub rule_index: usize,
    /// Per rule slot, left slots first then right slots.
    pub slots: Vec<SlotMatch>,
    /// Rule bound name -> configuration name. Every mapped configuration
    /// name occurs exactly twice, both inside the selection.
    pub bound_map: BTreeMap<Name, Name>,
    pub left_args: Vec<Term>,
    pub right_args: Vec<Term>,
    /// Index of the recovered active pair in the predecessor's body
    /// (always the last one).
    pub pair_index: usize,
}

impl InteractionMeta {
    /// The selected body indices, ascending.
    pub fn selection(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.slots.iter().map(|s| s.body_index).collect();
        v.sort_unstable();
        v
    }
}

/// Abstracts the subterm at `position`: replaces it with a fresh name and
/// appends the equation `fresh = subterm`. The result reduces back to `c`
/// by one indirection at the returned body index.
pub fn abstract_at(c: &Configuration, position: &Position) -> Option<(Configuration, usize)> {
    let mut gen = c.gen_above();
    let fresh = gen.fresh();
    let mut pred = c.clone();
    let abstracted = pred.replace_at(position, Term::Name(fresh.clone()))?;
    pred.body.push(Equation(Term::Name(fresh), abstracted));
    let added_eq = pred.body.len() - 1;
    Some((pred, added_eq))
}

/// Every configuration that reduces to `c` by exactly one indirection:
/// for each subterm occurrence, the configuration with that occurrence
/// replaced by a fresh name and one added equation. Deduplicated by
/// congruence, ordered by canonical key.
pub fn indirection_expansions(c: &Configuration) -> Vec<Expansion> {
    let mut out: Vec<Expansion> = Vec::new();
    let mut seen: BTreeSet<String> = BTreeSet::new();
    for position in c.positions() {
        let (pred, added_eq) = abstract_at(c, &position).expect("position enumerated from c");
        let key = canonical_key(&pred);
        if seen.insert(key.clone()) {
            let abstracted = pred.body[added_eq].1.clone();
            let fresh = pred.body[added_eq]
                .0
                .as_name()
                .expect("abstraction adds a name equation")
                .clone();
            debug_assert!(indirect(&pred, added_eq, Some(Side::Left))
                .map(|r| canonical_key(&r) == canonical_key(c))
                .unwrap_or(false));
            out.push(Expansion {
                kind: ExpansionKind::Indirection,
                config: pred,
                key,
                meta: ExpansionMeta::Indirection(IndirectionMeta {
                    position,
                    abstracted,
                    fresh,
                    added_eq,
                }),
            });
        }
    }
    out.sort_by(|a, b| a.key.cmp(&b.key));
    out
}

/// Matches `pattern` (over rule bound names) against `target` (a
/// configuration term). Bound names are rigid but renamable through the
/// mapping; argument capture happens one level up, not here.
fn match_pattern(
    pattern: &Term,
    target: &Term,
    bound: &mut BTreeMap<Name, Name>,
    taken: &mut BTreeSet<Name>,
) -> bool {
    match (pattern, target) {
        (Term::Name(b), Term::Name(z)) => match bound.get(b) {
            Some(mapped) => mapped == z,
            None => {
                if taken.contains(z) {
                    return false;
                }
                bound.insert(b.clone(), z.clone());
                taken.insert(z.clone());
                true
            }
        },
        (Term::Name(_), Term::Agent(..)) => false,
        (Term::Agent(..), Term::Name(_)) => false,
        (Term::Agent(ps, pargs), Term::Agent(ts, targs)) => {
            ps == ts
                && pargs.len() == targs.len()
                && pargs
                    .iter()
                    .zip(targs)
                    .all(|(p, t)| match_pattern(p, t, bound, taken))
        }
    }
}

/// One slot of the contractum template: the pattern side plus where the
/// captured argument goes.
#[derive(Clone, Copy)]
struct TemplateSlot<'a> {
    pattern: &'a Term,
    is_left: bool,
    slot: usize,
}

struct Matcher<'a> {
    sys: &'a System,
    base: &'a Configuration,
    base_key: &'a str,
    rule_index: usize,
    /// template slots ordered deepest-pattern-first for early pruning
    order: Vec<TemplateSlot<'a>>,
    results: Vec<Expansion>,
    seen: BTreeSet<String>,
}

impl<'a> Matcher<'a> {
    fn run(&mut self) {
        let mut used = vec![false; self.base.body.len()];
        let mut slots: Vec<Option<SlotMatch>> =
            vec![None; self.order.len()];
        let mut args_l: Vec<Option<Term>> =
            vec![None; self.sys.rules[self.rule_index].left_patterns.len()];
        let mut args_r: Vec<Option<Term>> =
            vec![None; self.sys.rules[self.rule_index].right_patterns.len()];
        self.step(
            0,
            &mut used,
            BTreeMap::new(),
            BTreeSet::new(),
            &mut slots,
            &mut args_l,
            &mut args_r,
        );
    }

    #[allow(clippy::too_many_arguments)]
    fn step(
        &mut self,
        i: usize,
        used: &mut Vec<bool>,
        bound: BTreeMap<Name, Name>,
        taken: BTreeSet<Name>,
        slots: &mut Vec<Option<SlotMatch>>,
        args_l: &mut Vec<Option<Term>>,
        args_r: &mut Vec<Option<Term>>,
    ) {
        if i == self.order.len() {
            self.finish(&bound, slots, args_l, args_r);
            return;
        }
        let tpl = self.order[i];
        for body_index in 0..self.base.body.len() {
            if used[body_index] {
                continue;
            }
            for arg_side in [Side::Left, Side::Right] {
                let eq = &self.base.body[body_index];
                let mut bound2 = bound.clone();
                let mut taken2 = taken.clone();
                if !match_pattern(
                    tpl.pattern,
                    eq.side(arg_side.flip()),
                    &mut bound2,
                    &mut taken2,
                ) {
                    continue;
                }
                let arg = eq.side(arg_side).clone();
                let store = if tpl.is_left {
                    &mut args_l[tpl.slot]
                } else {
                    &mut args_r[tpl.slot]
                };
                *store = Some(arg);
                slots[self.template_index(tpl)] = Some(SlotMatch {
                    body_index,
                    arg_side,
                });
                used[body_index] = true;
                self.step(i + 1, used, bound2, taken2, slots, args_l, args_r);
                used[body_index] = false;
            }
        }
    }

    fn template_index(&self, tpl: TemplateSlot) -> usize {
        let rule = &self.sys.rules[self.rule_index];
        if tpl.is_left {
            tpl.slot
        } else {
            rule.left_patterns.len() + tpl.slot
        }
    }

    fn finish(
        &mut self,
        bound: &BTreeMap<Name, Name>,
        slots: &[Option<SlotMatch>],
        args_l: &[Option<Term>],
        args_r: &[Option<Term>],
    ) {
        // Every mapped configuration name must occur exactly twice in the
        // whole configuration (hence both occurrences inside the selected
        // pattern positions) and never in the interface.
        for z in bound.values() {
            if self.base.count_name(z) != 2 {
                return;
            }
            let mut in_interface = false;
            for t in &self.base.interface {
                if t.count_name(z) > 0 {
                    in_interface = true;
                }
            }
            if in_interface {
                return;
            }
        }

        let rule = &self.sys.rules[self.rule_index];
        let slots: Vec<SlotMatch> = slots.iter().map(|s| s.expect("all slots matched")).collect();
        let left_args: Vec<Term> = args_l.iter().map(|a| a.clone().expect("slot")).collect();
        let right_args: Vec<Term> = args_r.iter().map(|a| a.clone().expect("slot")).collect();

        let selected: BTreeSet<usize> = slots.iter().map(|s| s.body_index).collect();
        let mut pred = Configuration::new(self.base.interface.clone(), Vec::new());
        for (i, eq) in self.base.body.iter().enumerate() {
            if !selected.contains(&i) {
                pred.body.push(eq.clone());
            }
        }
        pred.body.push(Equation(
            Term::Agent(rule.left.clone(), left_args.clone()),
            Term::Agent(rule.right.clone(), right_args.clone()),
        ));
        let pair_index = pred.body.len() - 1;

        // A candidate is kept only if firing the recovered pair actually
        // reduces back to the base configuration. This guards the
        // orientation convention for rules between equal symbols.
        let mut gen = pred.gen_above();
        match interact(self.sys, &pred, pair_index, &mut gen) {
            Ok(reduct) if canonical_key(&reduct) == self.base_key => {}
            _ => return,
        }

        let key = canonical_key(&pred);
        if self.seen.insert(key.clone()) {
            self.results.push(Expansion {
                kind: ExpansionKind::Interaction,
                config: pred,
                key,
                meta: ExpansionMeta::Interaction(InteractionMeta {
                    rule_index: self.rule_index,
                    slots,
                    bound_map: bound.clone(),
                    left_args,
                    right_args,
                    pair_index,
                }),
            });
        }
    }
}

/// Every configuration that reduces to `c` by exactly one interaction:
/// for every rule, every sub-multiset of the body that instantiates the
/// rule's contractum is replaced by the recovered active pair.
/// Deduplicated by congruence, ordered by canonical key.
pub fn interaction_expansions(sys: &System, c: &Configuration) -> Vec<Expansion> {
    let base_key = canonical_key(c);
    let mut out: Vec<Expansion> = Vec::new();
    for (rule_index, rule) in sys.rules.iter().enumerate() {
        let mut order: Vec<TemplateSlot> = rule
            .left_patterns
            .iter()
            .enumerate()
            .map(|(slot, pattern)| TemplateSlot {
                pattern,
                is_left: true,
                slot,
            })
            .chain(
                rule.right_patterns
                    .iter()
                    .enumerate()
                    .map(|(slot, pattern)| TemplateSlot {
                        pattern,
                        is_left: false,
                        slot,
                    }),
            )
            .collect();
        // Deeper patterns first: they are the most constraining.
        order.sort_by_key(|t| std::cmp::Reverse(t.pattern.depth()));
        if rule.arity() > c.body.len() {
            continue;
        }
        let mut matcher = Matcher {
            sys,
            base: c,
            base_key: &base_key,
            rule_index,
            order,
            results: std::mem::take(&mut out),
            seen: BTreeSet::new(),
        };
        // `seen` guards within this rule; cross-rule duplicates are
        // impossible to construct congruently only when pairs differ, so
        // the final union dedups again.
        matcher.run();
        out = matcher.results;
    }
    let mut seen = BTreeSet::new();
    out.retain(|e| seen.insert(e.key.clone()));
    out.sort_by(|a, b| a.key.cmp(&b.key));
    out
}

/// Union of both expansion kinds, deduplicated by congruence and ordered
/// by canonical key. Every element reduces to `c` in exactly one step.
pub fn expansions(sys: &System, c: &Configuration) -> Vec<Expansion> {
    let mut out = indirection_expansions(c);
    out.extend(interaction_expansions(sys, c));
    let mut seen = BTreeSet::new();
    out.retain(|e| seen.insert(e.key.clone()));
    out.sort_by(|a, b| a.key.cmp(&b.key));
    out
}
