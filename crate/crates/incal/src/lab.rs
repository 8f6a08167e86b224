//! Executable confluence experiments: constructive common predecessors,
//! failure witnesses, upward diamond checks, wire-rule joins, random
//! configurations, and counterexample search.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::analysis::{divide_pattern, reversibility_report, Verdict};
use crate::canon::{canonical_key, congruent};
use crate::config::{Configuration, Equation, Position, Side};
use crate::expand::{
    abstract_at, expansions, Expansion, ExpansionMeta, IndirectionMeta, InteractionMeta,
};
use crate::name::Name;
use crate::reduce::{indirect, interact, one_step_reducts, Status, Step, Trace};
use crate::rng::SplitMix64;
use crate::system::{Rule, System};
use crate::term::Term;

/// A verified join: the common predecessor together with engine traces
/// down to (configurations congruent to) the two peaks.
#[derive(Clone, Debug)]
pub struct Join {
    pub predecessor: Configuration,
    pub to_first: Trace,
    pub to_second: Trace,
}

#[derive(Clone, Debug)]
pub enum JoinResult {
    Joined(Box<Join>),
    /// No join found. For one-step searches the result is exhaustive and
    /// `definite` is true; bounded multi-step searches are inconclusive.
    NoJoin { bound: usize, definite: bool },
}

impl JoinResult {
    pub fn joined(&self) -> bool {
        matches!(self, JoinResult::Joined(_))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum JoinError {
    #[error("the {0} configuration does not reduce to the target in one step")]
    NotAPredecessor(&'static str),
    #[error("the two steps consume disjoint redexes; use the generic search")]
    DisjointRedexes,
    #[error("a step is not an interaction")]
    NotInteraction,
    #[error("the overlap does not match a wire-rule template")]
    NoTemplate,
}

// ---------------------------------------------------------------------
// trace building
// ---------------------------------------------------------------------

fn exec_interaction(sys: &System, c: &Configuration, pos: usize) -> Option<Step> {
    let mut gen = c.gen_above();
    let result = interact(sys, c, pos, &mut gen).ok()?;
    let equation = c.body[pos].clone();
    let (Term::Agent(a, _), Term::Agent(b, _)) = (&equation.0, &equation.1) else {
        return None;
    };
    Some(Step {
        kind: crate::reduce::StepKind::Interaction {
            rule: (a.clone(), b.clone()),
        },
        position: pos,
        equation,
        result,
    })
}

/// Searches for one step from `from` into the congruence class
/// `target_key`.
fn step_into(sys: &System, from: &Configuration, target_key: &str) -> Option<Step> {
    one_step_reducts(sys, from)
        .into_iter()
        .map(|(s, _)| s)
        .find(|s| canonical_key(&s.result) == target_key)
}

/// Breadth-first search over indirection steps from `from` to the class
/// of `target`, returning the step sequence. The depth bound is exact:
/// every indirection removes exactly one name, so the tail length is the
/// name-count difference.
fn indirection_path(
    sys: &System,
    from: &Configuration,
    target: &Configuration,
    target_key: &str,
) -> Option<Vec<Step>> {
    let start_names = from.occurrences().len();
    let target_names = target.occurrences().len();
    if start_names < target_names {
        return None;
    }
    let depth = start_names - target_names;
    let mut frontier: Vec<(Configuration, Vec<Step>)> = vec![(from.clone(), Vec::new())];
    let mut seen: BTreeSet<String> = BTreeSet::new();
    seen.insert(canonical_key(from));
    if canonical_key(from) == target_key {
        return Some(Vec::new());
    }
    for _ in 0..depth {
        let mut next = Vec::new();
        for (cfg, steps) in &frontier {
            for (step, _) in one_step_reducts(sys, cfg) {
                if !matches!(step.kind, crate::reduce::StepKind::Indirection { .. }) {
                    continue;
                }
                let key = canonical_key(&step.result);
                if key == target_key {
                    let mut out = steps.clone();
                    out.push(step);
                    return Some(out);
                }
                if seen.insert(key) {
                    let mut out = steps.clone();
                    out.push(step.clone());
                    next.push((step.result, out));
                }
            }
        }
        if next.is_empty() {
            return None;
        }
        frontier = next;
    }
    None
}

/// One interaction at `pair_pos` followed by indirections into the class
/// of `target`.
fn plus_trace_into(
    sys: &System,
    from: &Configuration,
    pair_pos: usize,
    target: &Configuration,
    target_key: &str,
) -> Option<Trace> {
    let first = exec_interaction(sys, from, pair_pos)?;
    let tail = indirection_path(sys, &first.result, target, target_key)?;
    let mut steps = vec![first];
    steps.extend(tail);
    Some(Trace {
        initial: from.clone(),
        steps,
        status: Status::Normal,
    })
}

fn one_step_trace(sys: &System, from: &Configuration, target_key: &str) -> Option<Trace> {
    let step = step_into(sys, from, target_key)?;
    Some(Trace {
        initial: from.clone(),
        steps: vec![step],
        status: Status::Normal,
    })
}

/// Re-runs a trace against the engine: every recorded result must be
/// congruent to a one-step reduct of its predecessor.
pub fn verify_trace(sys: &System, trace: &Trace) -> bool {
    let mut cur = trace.initial.clone();
    for step in &trace.steps {
        let ok = one_step_reducts(sys, &cur)
            .into_iter()
            .any(|(s, _)| congruent(&s.result, &step.result));
        if !ok {
            return false;
        }
        cur = step.result.clone();
    }
    true
}

// ---------------------------------------------------------------------
// one-step joins (upward diamond)
// ---------------------------------------------------------------------

fn position_root(p: &Position) -> (bool, usize, Option<Side>) {
    match p {
        Position::Interface { index, .. } => (true, *index, None),
        Position::Body { eq, side, .. } => (false, *eq, Some(*side)),
    }
}

fn position_path(p: &Position) -> &[usize] {
    match p {
        Position::Interface { path, .. } => path,
        Position::Body { path, .. } => path,
    }
}

/// Both steps are indirections: replay the second abstraction on the
/// first predecessor at the translated position. The three positional
/// cases of the construction collapse into the translation.
fn join_ind_ind(
    e1: &Configuration,
    m1: &IndirectionMeta,
    m2: &IndirectionMeta,
) -> Option<Configuration> {
    let (root1, idx1, side1) = position_root(&m1.position);
    let (root2, idx2, side2) = position_root(&m2.position);
    let path1 = position_path(&m1.position);
    let path2 = position_path(&m2.position);
    let same_root = root1 == root2 && idx1 == idx2 && side1 == side2;
    let translated = if same_root && path2.starts_with(path1) {
        // the second position moved into the added equation of e1
        Position::Body {
            eq: m1.added_eq,
            side: Side::Right,
            path: path2[path1.len()..].to_vec(),
        }
    } else {
        // disjoint, or the first abstraction happened strictly inside the
        // second's subterm: the coordinates survive in e1 either way
        m2.position.clone()
    };
    abstract_at(e1, &translated).map(|(p, _)| p)
}

/// Mixed pair: the indirection predecessor's abstraction is replayed on
/// the interaction predecessor when its position survives there (outside
/// the selection, or inside a captured argument slot).
fn join_int_ind(
    c: &Configuration,
    e_int: &Configuration,
    m_int: &InteractionMeta,
    m_ind: &IndirectionMeta,
) -> Option<Configuration> {
    let selected = m_int.selection();
    let translated = match &m_ind.position {
        Position::Interface { .. } => m_ind.position.clone(),
        Position::Body { eq, side, path } => {
            if !selected.contains(eq) {
                Position::Body {
                    eq: remap_index(&selected, *eq),
                    side: *side,
                    path: path.clone(),
                }
            } else {
                // inside a selected equation: survives only in the
                // captured argument slot
                let slot_pos = m_int
                    .slots
                    .iter()
                    .position(|s| s.body_index == *eq && s.arg_side == *side)?;
                let m = m_int.left_args.len();
                let (pair_side, arg_idx) = if slot_pos < m {
                    (Side::Left, slot_pos)
                } else {
                    (Side::Right, slot_pos - m)
                };
                let mut new_path = vec![arg_idx];
                new_path.extend_from_slice(path);
                Position::Body {
                    eq: m_int.pair_index,
                    side: pair_side,
                    path: new_path,
                }
            }
        }
    };
    let _ = c;
    abstract_at(e_int, &translated).map(|(p, _)| p)
}

/// New index of a non-selected equation after the selected ones are
/// removed.
fn remap_index(selected: &[usize], old: usize) -> usize {
    old - selected.iter().filter(|&&s| s < old).count()
}

fn pair_of(e: &Configuration, m: &InteractionMeta) -> Option<Equation> {
    e.body.get(m.pair_index).cloned()
}

/// Both steps are interactions with disjoint selections: the predecessor
/// holds both active pairs.
fn join_int_int_disjoint(
    c: &Configuration,
    e1: &Configuration,
    m1: &InteractionMeta,
    e2: &Configuration,
    m2: &InteractionMeta,
) -> Option<Configuration> {
    let s1: BTreeSet<usize> = m1.selection().into_iter().collect();
    let s2: BTreeSet<usize> = m2.selection().into_iter().collect();
    if !s1.is_disjoint(&s2) {
        return None;
    }
    let pair1 = pair_of(e1, m1)?;
    let pair2 = pair_of(e2, m2)?;
    let mut body: Vec<Equation> = c
        .body
        .iter()
        .enumerate()
        .filter(|(i, _)| !s1.contains(i) && !s2.contains(i))
        .map(|(_, e)| e.clone())
        .collect();
    body.push(pair1);
    body.push(pair2);
    Some(Configuration::new(c.interface.clone(), body))
}

/// A rule whose pattern sides are all bare names wires each left slot to
/// one right slot; returns that permutation (left slot `i` shares its
/// bound name with right slot `sigma[i]`).
fn wire_rule_sigma(rule: &Rule) -> Option<Vec<usize>> {
    let left: Option<Vec<&Name>> = rule.left_patterns.iter().map(Term::as_name).collect();
    let right: Option<Vec<&Name>> = rule.right_patterns.iter().map(Term::as_name).collect();
    let (left, right) = (left?, right?);
    let mut sigma = Vec::with_capacity(left.len());
    for l in &left {
        sigma.push(right.iter().position(|r| r == l)?);
    }
    Some(sigma)
}

/// Overlapping interactions of a wire rule: bridge the shared material
/// with fresh names so that firing either bridged pair and indirecting
/// restores the other peak.
///
/// A wire of the first match relates to the second match in one of two
/// ways. Either both matches wire the same name (the whole chain is
/// shared, captured on the same sides): the first pair then gives up its
/// right-end copy and the second pair its left-end copy, connected by one
/// fresh bridge. Or a single shared equation is captured on opposite
/// sides (two different wire names tile one longer chain): both pairs
/// give up their capture of that equation, connected by one fresh
/// bridge.
fn join_wire_overlap(
    sys: &System,
    c: &Configuration,
    e1: &Configuration,
    m1: &InteractionMeta,
    e2: &Configuration,
    m2: &InteractionMeta,
    shared: &BTreeSet<usize>,
) -> Option<Configuration> {
    if m1.rule_index != m2.rule_index {
        return None;
    }
    let rule = &sys.rules[m1.rule_index];
    let sigma = wire_rule_sigma(rule)?;
    let m = rule.left_patterns.len();
    let k = rule.arity();
    let pair1 = pair_of(e1, m1)?;
    let pair2 = pair_of(e2, m2)?;
    let mut gen = c.gen_above();

    let cap1: Vec<(usize, Side)> = m1.slots.iter().map(|s| (s.body_index, s.arg_side)).collect();
    let cap2: Vec<(usize, Side)> = m2.slots.iter().map(|s| (s.body_index, s.arg_side)).collect();
    let find2 = |cap: (usize, Side)| cap2.iter().position(|&x| x == cap);

    let mut args1: Vec<Term> = match &pair1 {
        Equation(Term::Agent(_, l), Term::Agent(_, r)) => l.iter().chain(r).cloned().collect(),
        _ => return None,
    };
    let mut args2: Vec<Term> = match &pair2 {
        Equation(Term::Agent(_, l), Term::Agent(_, r)) => l.iter().chain(r).cloned().collect(),
        _ => return None,
    };

    let mut bridged = vec![false; k];
    let mut any = false;

    // whole-chain sharing: both matches wire the same name
    for i in 0..m {
        let j = m + sigma[i];
        let (ca, cb) = (cap1[i], cap1[j]);
        if shared.contains(&ca.0)
            && shared.contains(&cb.0)
            && find2(ca).is_some()
            && find2(cb).is_some()
        {
            let fresh = Term::Name(gen.fresh());
            args1[j] = fresh.clone();
            args2[find2(ca)?] = fresh;
            bridged[i] = true;
            bridged[j] = true;
            any = true;
        }
    }

    // interleaved sharing: one equation, opposite capture sides
    for s in 0..k {
        if bridged[s] {
            continue;
        }
        let (e, side) = cap1[s];
        if !shared.contains(&e) {
            continue;
        }
        // a shared equation without an opposite-side capture is a shape
        // the construction cannot account for
        let t = find2((e, side.flip()))?;
        let fresh = Term::Name(gen.fresh());
        args1[s] = fresh.clone();
        args2[t] = fresh;
        any = true;
    }
    if !any {
        return None;
    }

    let rebuild = |pair: &Equation, args: &[Term]| -> Option<Equation> {
        let (Term::Agent(ls, _), Term::Agent(rs, _)) = (&pair.0, &pair.1) else {
            return None;
        };
        Some(Equation(
            Term::Agent(ls.clone(), args[..m].to_vec()),
            Term::Agent(rs.clone(), args[m..].to_vec()),
        ))
    };
    let pair1_new = rebuild(&pair1, &args1)?;
    let pair2_new = rebuild(&pair2, &args2)?;

    let s1: BTreeSet<usize> = m1.selection().into_iter().collect();
    let s2: BTreeSet<usize> = m2.selection().into_iter().collect();
    let mut body: Vec<Equation> = c
        .body
        .iter()
        .enumerate()
        .filter(|(i, _)| !s1.contains(i) && !s2.contains(i))
        .map(|(_, e)| e.clone())
        .collect();
    body.push(pair1_new);
    body.push(pair2_new);
    Some(Configuration::new(c.interface.clone(), body))
}

/// One step a candidate predecessor is expected to take to reach a peak.
#[derive(Clone, Copy, Debug)]
enum StepDesc {
    /// Indirection at this body index, eliminating the left (fresh name)
    /// side.
    Ind(usize),
    /// Interaction at this body index.
    Int(usize),
}

fn run_step(sys: &System, c: &Configuration, desc: StepDesc) -> Option<Configuration> {
    match desc {
        StepDesc::Ind(i) => indirect(c, i, Some(Side::Left)).ok(),
        StepDesc::Int(i) => {
            let mut gen = c.gen_above();
            interact(sys, c, i, &mut gen).ok()
        }
    }
}

/// Tries to join one unordered pair of predecessors of `c` with one step
/// on each side, templates first, then the exhaustive intersection of
/// the peaks' expansion sets. Every candidate is verified by the engine
/// before being accepted: the described step must land in the peak's
/// congruence class.
fn join_one_step(
    sys: &System,
    c: &Configuration,
    e1: &Expansion,
    e2: &Expansion,
    exp_cache: &mut BTreeMap<String, BTreeMap<String, Configuration>>,
) -> Option<Configuration> {
    let verify_steps =
        |cand: Configuration, to_first: StepDesc, to_second: StepDesc| -> Option<Configuration> {
            let d1 = run_step(sys, &cand, to_first)?;
            if canonical_key(&d1) != e1.key {
                return None;
            }
            let d2 = run_step(sys, &cand, to_second)?;
            if canonical_key(&d2) != e2.key {
                return None;
            }
            Some(cand)
        };

    // equal peaks: split the step's equation into a chain
    if e1.key == e2.key {
        let split_at = match &e1.meta {
            ExpansionMeta::Indirection(m) => m.added_eq,
            ExpansionMeta::Interaction(m) => m.pair_index,
        };
        let (cand, added) = abstract_at(
            &e1.config,
            &Position::Body {
                eq: split_at,
                side: Side::Right,
                path: Vec::new(),
            },
        )?;
        return verify_steps(cand, StepDesc::Ind(added), StepDesc::Ind(added));
    }

    let template: Option<(Configuration, StepDesc, StepDesc)> = match (&e1.meta, &e2.meta) {
        (ExpansionMeta::Indirection(m1), ExpansionMeta::Indirection(m2)) => {
            join_ind_ind(&e1.config, m1, m2).map(|cand| {
                let last = cand.body.len() - 1;
                (cand, StepDesc::Ind(last), StepDesc::Ind(m1.added_eq))
            })
        }
        (ExpansionMeta::Interaction(m1), ExpansionMeta::Indirection(m2)) => {
            // undoing the abstraction reaches the interaction peak;
            // firing the pair reaches the indirection peak
            join_int_ind(c, &e1.config, m1, m2).map(|cand| {
                let last = cand.body.len() - 1;
                (cand, StepDesc::Ind(last), StepDesc::Int(m1.pair_index))
            })
        }
        (ExpansionMeta::Indirection(m1), ExpansionMeta::Interaction(m2)) => {
            join_int_ind(c, &e2.config, m2, m1).map(|cand| {
                let last = cand.body.len() - 1;
                (cand, StepDesc::Int(m2.pair_index), StepDesc::Ind(last))
            })
        }
        (ExpansionMeta::Interaction(m1), ExpansionMeta::Interaction(m2)) => {
            // overlapping interactions never join in one step; the plus
            // search owns them
            join_int_int_disjoint(c, &e1.config, m1, &e2.config, m2).map(|cand| {
                let last = cand.body.len() - 1;
                (cand, StepDesc::Int(last), StepDesc::Int(last - 1))
            })
        }
    };
    if let Some((cand, s1, s2)) = template {
        if let Some(found) = verify_steps(cand, s1, s2) {
            return Some(found);
        }
    }

    // generic: intersect the one-step predecessor sets of the two peaks
    for e in [e1, e2] {
        if !exp_cache.contains_key(e.key.as_str()) {
            let set = expansions(sys, &e.config)
                .into_iter()
                .map(|x| (x.key, x.config))
                .collect();
            exp_cache.insert(e.key.clone(), set);
        }
    }
    let set2 = &exp_cache[&e2.key];
    let mut hits: Vec<(&String, &Configuration)> = exp_cache[&e1.key]
        .iter()
        .filter(|(k, _)| set2.contains_key(*k))
        .collect();
    hits.sort_by_key(|(k, _)| (*k).clone());
    for (_, cfg) in hits {
        // both memberships hold by construction of the intersection; the
        // expansion sets are engine-verified when built
        let mut hit1 = false;
        let mut hit2 = false;
        for (s, _) in one_step_reducts(sys, cfg) {
            let k = canonical_key(&s.result);
            hit1 |= k == e1.key;
            hit2 |= k == e2.key;
            if hit1 && hit2 {
                return Some(cfg.clone());
            }
        }
    }
    None
}

/// Constructive common predecessor for two verified one-step
/// predecessors of `c`, one step back on each side. Dispatch: both
/// indirections restore both abstractions; mixed pairs commute; disjoint
/// interactions keep both pairs; overlapping interactions use wire-rule
/// bridges or fall back to intersecting the peaks' expansion sets.
pub fn common_predecessor(
    sys: &System,
    c1: &Configuration,
    c2: &Configuration,
    c: &Configuration,
) -> Result<JoinResult, JoinError> {
    let exps = expansions(sys, c);
    let k1 = canonical_key(c1);
    let k2 = canonical_key(c2);
    let e1 = exps
        .iter()
        .find(|e| e.key == k1)
        .ok_or(JoinError::NotAPredecessor("first"))?;
    let e2 = exps
        .iter()
        .find(|e| e.key == k2)
        .ok_or(JoinError::NotAPredecessor("second"))?;
    let mut cache = BTreeMap::new();
    match join_one_step(sys, c, e1, e2, &mut cache) {
        Some(pred) => {
            let to_first =
                one_step_trace(sys, &pred, &k1).ok_or(JoinError::NotAPredecessor("first"))?;
            let to_second =
                one_step_trace(sys, &pred, &k2).ok_or(JoinError::NotAPredecessor("second"))?;
            debug_assert!(verify_trace(sys, &to_first) && verify_trace(sys, &to_second));
            Ok(JoinResult::Joined(Box::new(Join {
                predecessor: pred,
                to_first,
                to_second,
            })))
        }
        None => Ok(JoinResult::NoJoin {
            bound: 1,
            definite: true,
        }),
    }
}

// ---------------------------------------------------------------------
// diamond check
// ---------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiamondMode {
    /// One step on each side; the search is exhaustive.
    OneStep,
    /// One interaction followed by indirections on each side; the
    /// indirection tail is bounded (`None` bounds by the peak's name
    /// count).
    PlusStep { depth: Option<usize> },
}

#[derive(Clone, Debug)]
pub struct DiamondFailure {
    pub c1: Configuration,
    pub c2: Configuration,
    /// True when the search was bounded, so finding no join is not a
    /// disproof.
    pub inconclusive: bool,
}

#[derive(Clone, Debug)]
pub struct DiamondReport {
    pub mode: DiamondMode,
    pub predecessors: usize,
    pub pairs: usize,
    pub joined: usize,
    pub failures: Vec<DiamondFailure>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiamondVerdict {
    AllJoined,
    FailureFound,
    Inconclusive,
}

impl DiamondReport {
    pub fn verdict(&self) -> DiamondVerdict {
        if self.failures.is_empty() {
            DiamondVerdict::AllJoined
        } else if self.failures.iter().any(|f| !f.inconclusive) {
            DiamondVerdict::FailureFound
        } else {
            DiamondVerdict::Inconclusive
        }
    }
}

/// Enumerates all unordered pairs of one-step predecessors of `c` and
/// searches a common predecessor for each. Reports every pair with no
/// join found within bounds.
pub fn diamond_check(sys: &System, c: &Configuration, mode: DiamondMode) -> DiamondReport {
    let exps = expansions(sys, c);
    let mut report = DiamondReport {
        mode,
        predecessors: exps.len(),
        pairs: 0,
        joined: 0,
        failures: Vec::new(),
    };
    let mut cache = BTreeMap::new();
    let mut plus_cache: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for i in 0..exps.len() {
        for j in i..exps.len() {
            report.pairs += 1;
            let (e1, e2) = (&exps[i], &exps[j]);
            let one = join_one_step(sys, c, e1, e2, &mut cache).is_some();
            let joined = match mode {
                DiamondMode::OneStep => one,
                DiamondMode::PlusStep { depth } => {
                    one || plus_join(sys, c, e1, e2, depth, &mut plus_cache)
                }
            };
            if joined {
                report.joined += 1;
            } else {
                report.failures.push(DiamondFailure {
                    c1: e1.config.clone(),
                    c2: e2.config.clone(),
                    inconclusive: matches!(mode, DiamondMode::PlusStep { .. }),
                });
            }
        }
    }
    report
}

/// Fires the pair at `pair_pos` of `cand` and checks that indirections
/// reach the class of `target`.
fn plus_verifies(
    sys: &System,
    cand: &Configuration,
    pair_pos: usize,
    target: &Configuration,
    target_key: &str,
) -> bool {
    let mut gen = cand.gen_above();
    match interact(sys, cand, pair_pos, &mut gen) {
        Ok(d) => indirection_path(sys, &d, target, target_key).is_some(),
        Err(_) => false,
    }
}

/// Searches a configuration reaching both peaks by one interaction
/// followed by indirections: the wire-rule bridge template for
/// overlapping interactions first, then a bounded upward search
/// (interaction expansions of everything reachable by at most `depth`
/// indirection expansions).
fn plus_join(
    sys: &System,
    c: &Configuration,
    e1: &Expansion,
    e2: &Expansion,
    depth: Option<usize>,
    cache: &mut BTreeMap<String, BTreeSet<String>>,
) -> bool {
    const LEVEL_CAP: usize = 600;
    if let (ExpansionMeta::Interaction(m1), ExpansionMeta::Interaction(m2)) = (&e1.meta, &e2.meta)
    {
        let s1: BTreeSet<usize> = m1.selection().into_iter().collect();
        let s2: BTreeSet<usize> = m2.selection().into_iter().collect();
        let shared: BTreeSet<usize> = s1.intersection(&s2).copied().collect();
        if !shared.is_empty() {
            if let Some(cand) = join_wire_overlap(sys, c, &e1.config, m1, &e2.config, m2, &shared)
            {
                let p1 = cand.body.len() - 2;
                let p2 = cand.body.len() - 1;
                if plus_verifies(sys, &cand, p2, &e1.config, &e1.key)
                    && plus_verifies(sys, &cand, p1, &e2.config, &e2.key)
                {
                    return true;
                }
            }
        }
    }
    for e in [e1, e2] {
        if cache.contains_key(&e.key) {
            continue;
        }
        let depth = depth.unwrap_or_else(|| e.config.occurrences().len());
        let mut candidates: BTreeSet<String> = BTreeSet::new();
        let mut level: Vec<Configuration> = vec![e.config.clone()];
        let mut seen: BTreeSet<String> = BTreeSet::new();
        seen.insert(e.key.clone());
        for t in 0..=depth {
            for cfg in &level {
                for up in crate::expand::interaction_expansions(sys, cfg) {
                    candidates.insert(up.key);
                }
            }
            if t == depth {
                break;
            }
            let mut next = Vec::new();
            'grow: for cfg in &level {
                for up in crate::expand::indirection_expansions(cfg) {
                    if seen.insert(up.key.clone()) {
                        next.push(up.config);
                        if seen.len() > LEVEL_CAP {
                            break 'grow;
                        }
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
        cache.insert(e.key.clone(), candidates);
    }
    !cache[&e1.key].is_disjoint(&cache[&e2.key])
}

// ---------------------------------------------------------------------
// strong failure witness
// ---------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Clash,
    DisconnectedRule,
}

/// A triple `(c1, c2, c)` with both peaks interacting to `c`, the peaks
/// different, and their one-step predecessor sets disjoint.
#[derive(Clone, Debug)]
pub struct FailureWitness {
    pub kind: WitnessKind,
    /// Indices of the rules involved (two for a clash, one for a
    /// disconnected rule).
    pub rules: Vec<usize>,
    pub c1: Configuration,
    pub c2: Configuration,
    pub c: Configuration,
    /// Exhaustively checked via the expansion engine.
    pub predecessors_disjoint: bool,
}

/// Builds a strong-upward-confluence failure for an irreversible system:
/// from a clash when one exists, otherwise from a disconnected rule.
/// Returns `None` for reversible systems.
pub fn strong_failure_witness(sys: &System) -> Option<FailureWitness> {
    let report = reversibility_report(sys);
    if report.verdict == Verdict::Reversible {
        return None;
    }
    let clash = report.all_clashes().first().map(|(i, j, w)| {
        let mut interface: Vec<Name> =
            Configuration::new(Vec::new(), vec![w.pair1.clone()]).free_names();
        interface.sort();
        let iface_terms: Vec<Term> = interface.into_iter().map(Term::Name).collect();
        let c1 = Configuration::new(iface_terms.clone(), vec![w.pair1.clone()]);
        let c2 = Configuration::new(iface_terms.clone(), vec![w.pair2.clone()]);
        let c = Configuration::new(iface_terms, w.contractum.clone());
        (vec![*i, *j], c1, c2, c)
    });
    let (kind, rules, c1, c2, c) = match clash {
        Some((rules, c1, c2, c)) => (WitnessKind::Clash, rules, c1, c2, c),
        None => {
            let rr = report.rules.iter().find(|r| !r.connected)?;
            let (c1, c2, c) = disconnected_witness(&sys.rules[rr.rule_index]);
            (
                WitnessKind::DisconnectedRule,
                vec![rr.rule_index],
                c1,
                c2,
                c,
            )
        }
    };

    let key = canonical_key(&c);
    debug_assert!(step_into(sys, &c1, &key).is_some());
    debug_assert!(step_into(sys, &c2, &key).is_some());
    debug_assert!(!congruent(&c1, &c2));

    let preds1: BTreeSet<String> = expansions(sys, &c1).into_iter().map(|e| e.key).collect();
    let preds2: BTreeSet<String> = expansions(sys, &c2).into_iter().map(|e| e.key).collect();
    Some(FailureWitness {
        kind,
        rules,
        c1,
        c2,
        c,
        predecessors_disjoint: preds1.is_disjoint(&preds2),
    })
}

/// The construction for a disconnected rule: split the contractum into
/// name-disjoint non-empty multisets, rename the second part's interface
/// names to fresh copies in one peak, and duplicate that part in the
/// shared reduct.
fn disconnected_witness(rule: &Rule) -> (Configuration, Configuration, Configuration) {
    let k = rule.arity();
    let arg = |i: usize| Name::User(format!("a{i}"));
    let copy = |i: usize| Name::User(format!("b{i}"));
    let pool = |i: usize| Name::User(format!("w{i}"));

    let bounds = rule.bound_names();
    let pool_map: BTreeMap<Name, Name> = bounds
        .iter()
        .enumerate()
        .map(|(i, b)| (b.clone(), pool(i)))
        .collect();
    fn inst(t: &Term, map: &BTreeMap<Name, Name>) -> Term {
        match t {
            Term::Name(n) => Term::Name(map.get(n).cloned().unwrap_or_else(|| n.clone())),
            Term::Agent(s, args) => {
                Term::Agent(s.clone(), args.iter().map(|a| inst(a, map)).collect())
            }
        }
    }
    let contractum: Vec<Equation> = rule
        .patterns()
        .enumerate()
        .map(|(i, p)| Equation(Term::Name(arg(i)), inst(p, &pool_map)))
        .collect();

    // split into connected components; Gamma = the component of slot 0
    let pat = divide_pattern(rule);
    let n = pat.equations.len();
    let mut comp = vec![false; n];
    let mut by_name: BTreeMap<Name, Vec<usize>> = BTreeMap::new();
    for (i, eq) in pat.equations.iter().enumerate() {
        eq.visit_names(&mut |nm| by_name.entry(nm.clone()).or_default().push(i));
    }
    let mut stack = vec![0usize];
    comp[0] = true;
    while let Some(i) = stack.pop() {
        let mut names = Vec::new();
        pat.equations[i].visit_names(&mut |nm| names.push(nm.clone()));
        for nm in names {
            for &j in &by_name[&nm] {
                if !comp[j] {
                    comp[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    let gamma_slots: Vec<usize> = (0..n).filter(|&i| comp[i]).collect();
    let delta_slots: Vec<usize> = (0..n).filter(|&i| !comp[i]).collect();
    debug_assert!(!gamma_slots.is_empty() && !delta_slots.is_empty());

    let gamma: Vec<Equation> = gamma_slots.iter().map(|&i| contractum[i].clone()).collect();
    let delta: Vec<Equation> = delta_slots.iter().map(|&i| contractum[i].clone()).collect();
    // The copy renames the interface names of Delta to fresh copies and
    // alpha-renames its internal wiring (a duplicated multiset must not
    // reuse the original's bound names).
    let mut delta_rename: BTreeMap<Name, Name> =
        delta_slots.iter().map(|&i| (arg(i), copy(i))).collect();
    for (i, _) in bounds.iter().enumerate() {
        let in_delta = delta.iter().any(|e| {
            let mut found = false;
            e.visit_names(&mut |n| found |= *n == pool(i));
            found
        });
        if in_delta {
            delta_rename.insert(pool(i), Name::User(format!("v{i}")));
        }
    }
    let delta_copy: Vec<Equation> = delta
        .iter()
        .map(|e| Equation(inst(&e.0, &delta_rename), inst(&e.1, &delta_rename)))
        .collect();

    // interface: Gamma args, Delta args, Delta copies
    let mut interface: Vec<Term> = gamma_slots.iter().map(|&i| Term::Name(arg(i))).collect();
    interface.extend(delta_slots.iter().map(|&i| Term::Name(arg(i))));
    interface.extend(delta_slots.iter().map(|&i| Term::Name(copy(i))));

    let m = rule.left_patterns.len();
    let pair = |renamed: bool| -> Equation {
        let mk = |i: usize| -> Term {
            if renamed && delta_rename.contains_key(&arg(i)) {
                Term::Name(copy(i))
            } else {
                Term::Name(arg(i))
            }
        };
        Equation(
            Term::Agent(rule.left.clone(), (0..m).map(mk).collect()),
            Term::Agent(rule.right.clone(), (m..k).map(mk).collect()),
        )
    };

    let mut body1 = vec![pair(true)];
    body1.extend(delta.iter().cloned());
    let c1 = Configuration::new(interface.clone(), body1);

    let mut body2 = vec![pair(false)];
    body2.extend(delta_copy.iter().cloned());
    let c2 = Configuration::new(interface.clone(), body2);

    let mut body = gamma;
    body.extend(delta);
    body.extend(delta_copy);
    let c = Configuration::new(interface, body);
    (c1, c2, c)
}

// ---------------------------------------------------------------------
// linear-lambda joins
// ---------------------------------------------------------------------

/// Constructive join for two overlapping interactions in the linear
/// lambda system: classifies the overlap (chain overlap, full overlap,
/// and their symmetric variants) and emits the bridged predecessor, with
/// traces verified by the engine. Disjoint redexes are rejected; use
/// [`common_predecessor`] there.
pub fn linlam_join(
    c1: &Configuration,
    c2: &Configuration,
    c: &Configuration,
) -> Result<JoinResult, JoinError> {
    let sys = crate::systems::linlam();
    let exps = crate::expand::interaction_expansions(&sys, c);
    let k1 = canonical_key(c1);
    let k2 = canonical_key(c2);
    let e1 = exps
        .iter()
        .find(|e| e.key == k1)
        .ok_or(JoinError::NotAPredecessor("first"))?;
    let e2 = exps
        .iter()
        .find(|e| e.key == k2)
        .ok_or(JoinError::NotAPredecessor("second"))?;
    if e1.key == e2.key {
        return Err(JoinError::NotAPredecessor("second"));
    }
    let (ExpansionMeta::Interaction(m1), ExpansionMeta::Interaction(m2)) = (&e1.meta, &e2.meta)
    else {
        return Err(JoinError::NotInteraction);
    };
    let s1: BTreeSet<usize> = m1.selection().into_iter().collect();
    let s2: BTreeSet<usize> = m2.selection().into_iter().collect();
    let shared: BTreeSet<usize> = s1.intersection(&s2).copied().collect();
    if shared.is_empty() {
        return Err(JoinError::DisjointRedexes);
    }
    let pred = join_wire_overlap(&sys, c, &e1.config, m1, &e2.config, m2, &shared)
        .ok_or(JoinError::NoTemplate)?;
    let pair1_pos = pred.body.len() - 2;
    let pair2_pos = pred.body.len() - 1;
    let to_first =
        plus_trace_into(&sys, &pred, pair2_pos, &e1.config, &k1).ok_or(JoinError::NoTemplate)?;
    let to_second =
        plus_trace_into(&sys, &pred, pair1_pos, &e2.config, &k2).ok_or(JoinError::NoTemplate)?;
    debug_assert!(verify_trace(&sys, &to_first) && verify_trace(&sys, &to_second));
    Ok(JoinResult::Joined(Box::new(Join {
        predecessor: pred,
        to_first,
        to_second,
    })))
}

// ---------------------------------------------------------------------
// random configurations and counterexample search
// ---------------------------------------------------------------------

/// A valid random configuration over the system's signature: random
/// agent terms and names wired while maintaining linearity.
/// Deterministic per seed.
pub fn random_config(sys: &System, size: usize, seed: u64) -> Configuration {
    let mut rng = SplitMix64::new(seed);
    let symbols: Vec<(crate::name::Symbol, usize)> = sys
        .signature
        .iter()
        .map(|(s, a)| (s.clone(), *a))
        .collect();

    let n_eqs = if size == 0 { 0 } else { rng.below(size + 1) };
    let n_iface = rng.below(3);

    // Terms carry numbered holes first; the holes are wired afterwards.
    fn gen_term(
        rng: &mut SplitMix64,
        symbols: &[(crate::name::Symbol, usize)],
        depth: usize,
        holes: &mut u64,
    ) -> Term {
        let make_hole = symbols.is_empty() || depth == 0 || rng.chance(55, 100);
        if make_hole {
            let h = *holes;
            *holes += 1;
            Term::Name(Name::Gen(u64::MAX - h))
        } else {
            let (sym, arity) = symbols[rng.below(symbols.len())].clone();
            let args = (0..arity)
                .map(|_| gen_term(rng, symbols, depth - 1, holes))
                .collect();
            Term::Agent(sym, args)
        }
    }

    let mut holes = 0u64;
    let interface: Vec<Term> = (0..n_iface)
        .map(|_| gen_term(&mut rng, &symbols, 1, &mut holes))
        .collect();
    let body: Vec<Equation> = (0..n_eqs)
        .map(|_| {
            Equation(
                gen_term(&mut rng, &symbols, 2, &mut holes),
                gen_term(&mut rng, &symbols, 2, &mut holes),
            )
        })
        .collect();

    let mut ids: Vec<u64> = (0..holes).collect();
    rng.shuffle(&mut ids);
    let mut assign: BTreeMap<u64, Name> = BTreeMap::new();
    let mut bound_i = 0usize;
    let mut free_i = 0usize;
    let mut at = 0;
    while at < ids.len() {
        if at + 1 < ids.len() && rng.chance(70, 100) {
            let n = Name::User(format!("n{bound_i}"));
            bound_i += 1;
            assign.insert(u64::MAX - ids[at], n.clone());
            assign.insert(u64::MAX - ids[at + 1], n);
            at += 2;
        } else {
            let n = Name::User(format!("f{free_i}"));
            free_i += 1;
            assign.insert(u64::MAX - ids[at], n);
            at += 1;
        }
    }

    fn fill(t: &Term, assign: &BTreeMap<u64, Name>) -> Term {
        match t {
            Term::Name(Name::Gen(g)) => Term::Name(assign[g].clone()),
            Term::Name(n) => Term::Name(n.clone()),
            Term::Agent(s, args) => {
                Term::Agent(s.clone(), args.iter().map(|a| fill(a, assign)).collect())
            }
        }
    }
    Configuration::new(
        interface.iter().map(|t| fill(t, &assign)).collect(),
        body.iter()
            .map(|e| Equation(fill(&e.0, &assign), fill(&e.1, &assign)))
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct SearchFailure {
    pub config: Configuration,
    pub c1: Configuration,
    pub c2: Configuration,
}

/// Aggregated result of sampling configurations and running the diamond
/// check in both modes.
#[derive(Clone, Debug)]
pub struct SearchReport {
    pub samples: usize,
    pub size: usize,
    pub depth: usize,
    pub seed: u64,
    pub one_step_pairs: usize,
    /// Definite failures: peaks with no one-step join.
    pub one_step_failures: Vec<SearchFailure>,
    pub plus_step_pairs: usize,
    /// Pairs with no plus-step join within the bound; inconclusive.
    pub plus_inconclusive: Vec<SearchFailure>,
}

impl SearchReport {
    pub fn verdict(&self) -> DiamondVerdict {
        if !self.one_step_failures.is_empty() {
            DiamondVerdict::FailureFound
        } else if !self.plus_inconclusive.is_empty() {
            DiamondVerdict::Inconclusive
        } else {
            DiamondVerdict::AllJoined
        }
    }
}

/// Samples configurations, runs the diamond check in both modes, and
/// aggregates failing pairs.
pub fn counterexample_search(
    sys: &System,
    size: usize,
    samples: usize,
    depth: usize,
    seed: u64,
) -> SearchReport {
    let mut report = SearchReport {
        samples,
        size,
        depth,
        seed,
        one_step_pairs: 0,
        one_step_failures: Vec::new(),
        plus_step_pairs: 0,
        plus_inconclusive: Vec::new(),
    };
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let sample_seed = rng.next_u64();
        let cfg = random_config(sys, size, sample_seed);
        let one = diamond_check(sys, &cfg, DiamondMode::OneStep);
        report.one_step_pairs += one.pairs;
        for f in one.failures {
            report.one_step_failures.push(SearchFailure {
                config: cfg.clone(),
                c1: f.c1,
                c2: f.c2,
            });
        }
        let plus = diamond_check(sys, &cfg, DiamondMode::PlusStep { depth: Some(depth) });
        report.plus_step_pairs += plus.pairs;
        for f in plus.failures {
            report.plus_inconclusive.push(SearchFailure {
                config: cfg.clone(),
                c1: f.c1,
                c2: f.c2,
            });
        }
    }
    report
}

/// Bounded bidirectional upward reachability: true when the two
/// configurations have a common ancestor within `steps` expansion steps
/// on each side (any step kinds).
pub fn mutual_ancestor_within(
    sys: &System,
    c1: &Configuration,
    c2: &Configuration,
    steps: usize,
    cap: usize,
) -> bool {
    let ancestors = |c: &Configuration| -> BTreeSet<String> {
        let mut all: BTreeSet<String> = BTreeSet::new();
        all.insert(canonical_key(c));
        let mut level = vec![c.clone()];
        for _ in 0..steps {
            let mut next = Vec::new();
            for cfg in &level {
                for e in expansions(sys, cfg) {
                    if all.insert(e.key.clone()) {
                        next.push(e.config);
                    }
                    if all.len() >= cap {
                        return all;
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            level = next;
        }
        all
    };
    !ancestors(c1).is_disjoint(&ancestors(c2))
}
