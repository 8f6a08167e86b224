//! Forward reduction: interaction steps, indirection steps, and
//! normalization with traces.

use std::fmt;

use thiserror::Error;

use crate::config::{substitute, Configuration, Equation, Side};
use crate::name::{Name, NameGen, Symbol};
use crate::system::{Rule, System};
use crate::term::Term;

/// The two step kinds of the calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    /// An active pair replaced by the rule's contractum.
    Interaction { rule: (Symbol, Symbol) },
    /// An equation `x = t` eliminated by substituting `t` for the other
    /// occurrence of `x`.
    Indirection { name: Name },
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepKind::Interaction { rule } => write!(f, "interaction[{} >< {}]", rule.0, rule.1),
            StepKind::Indirection { name } => write!(f, "indirection[{name}]"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Step {
    pub kind: StepKind,
    /// Body index of the equation the step consumed, in the configuration
    /// the step was applied to.
    pub position: usize,
    pub equation: Equation,
    pub result: Configuration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    /// No step applies.
    Normal,
    /// No step applies and some agent-agent equation has no rule.
    Stuck,
    FuelExhausted,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Normal => "normal",
            Status::Stuck => "stuck",
            Status::FuelExhausted => "fuel-exhausted",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Trace {
    pub initial: Configuration,
    pub steps: Vec<Step>,
    pub status: Status,
}

impl Trace {
    pub fn final_config(&self) -> &Configuration {
        self.steps
            .last()
            .map(|s| &s.result)
            .unwrap_or(&self.initial)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    InteractionFirst,
    IndirectionFirst,
    Leftmost,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum StepError {
    #[error("body position {0} is out of range")]
    BadPosition(usize),
    #[error("equation at position {0} is not an active pair")]
    NotActive(usize),
    #[error("equation at position {0} admits no indirection (agents on both sides, or the name's second occurrence is inside the same equation)")]
    NotIndirectable(usize),
    #[error("the {1:?} side of the equation at position {0} admits no indirection")]
    SideNotApplicable(usize, Side),
    #[error("argument count does not match rule {rule}: got {left} and {right}")]
    DivideArity {
        rule: String,
        left: usize,
        right: usize,
    },
}

/// The contractum multiset for firing `left_sym(t...) >< right_sym(u...)`:
/// `{t_i = v_i', u_j = w_j'}` where the rule's bound names are renamed to
/// fresh machine names, in first-occurrence order.
pub fn divide(
    rule: &Rule,
    left_args: &[Term],
    right_args: &[Term],
    gen: &mut NameGen,
) -> Result<Vec<Equation>, StepError> {
    if left_args.len() != rule.left_patterns.len() || right_args.len() != rule.right_patterns.len()
    {
        return Err(StepError::DivideArity {
            rule: rule.to_string(),
            left: left_args.len(),
            right: right_args.len(),
        });
    }
    let mut rename: std::collections::BTreeMap<Name, Name> = Default::default();
    for b in rule.bound_names() {
        rename.insert(b, gen.fresh());
    }
    fn instantiate(t: &Term, rename: &std::collections::BTreeMap<Name, Name>) -> Term {
        match t {
            Term::Name(n) => Term::Name(rename.get(n).cloned().unwrap_or_else(|| n.clone())),
            Term::Agent(sym, args) => Term::Agent(
                sym.clone(),
                args.iter().map(|a| instantiate(a, rename)).collect(),
            ),
        }
    }
    let mut out = Vec::with_capacity(rule.arity());
    for (t, v) in left_args.iter().zip(&rule.left_patterns) {
        out.push(Equation(t.clone(), instantiate(v, &rename)));
    }
    for (u, w) in right_args.iter().zip(&rule.right_patterns) {
        out.push(Equation(u.clone(), instantiate(w, &rename)));
    }
    Ok(out)
}

/// Body positions whose equations are active pairs: agent terms on both
/// sides with a rule for the symbol pair, in either orientation.
pub fn active_pairs(sys: &System, c: &Configuration) -> Vec<usize> {
    c.body
        .iter()
        .enumerate()
        .filter(|(_, e)| match (&e.0, &e.1) {
            (Term::Agent(a, _), Term::Agent(b, _)) => sys.rule_for(a, b).is_some(),
            _ => false,
        })
        .map(|(i, _)| i)
        .collect()
}

/// Agent-agent equations with no rule: not active, not reducible.
pub fn stuck_pairs(sys: &System, c: &Configuration) -> Vec<usize> {
    c.body
        .iter()
        .enumerate()
        .filter(|(_, e)| match (&e.0, &e.1) {
            (Term::Agent(a, _), Term::Agent(b, _)) => sys.rule_for(a, b).is_none(),
            _ => false,
        })
        .map(|(i, _)| i)
        .collect()
}

/// Fires the active pair at `position`, replacing it in place by the
/// rule's contractum with fresh bound names.
///
/// For a rule between equal symbols the equation is oriented by the
/// structural term order (smaller side to the left patterns), which makes
/// the step deterministic.
pub fn interact(
    sys: &System,
    c: &Configuration,
    position: usize,
    gen: &mut NameGen,
) -> Result<Configuration, StepError> {
    let eq = c.body.get(position).ok_or(StepError::BadPosition(position))?;
    let (Term::Agent(ls, largs), Term::Agent(rs, rargs)) = (&eq.0, &eq.1) else {
        return Err(StepError::NotActive(position));
    };
    let (ri, flipped) = sys
        .rule_for(ls, rs)
        .ok_or(StepError::NotActive(position))?;
    let rule = &sys.rules[ri];
    let (left_args, right_args) = if rule.left == rule.right {
        if eq.0 <= eq.1 {
            (largs, rargs)
        } else {
            (rargs, largs)
        }
    } else if flipped {
        (rargs, largs)
    } else {
        (largs, rargs)
    };
    let contractum = divide(rule, left_args, right_args, gen)?;
    let mut out = c.clone();
    out.body.splice(position..=position, contractum);
    Ok(out)
}

/// The side of the equation at `position` that the default indirection
/// policy would eliminate, if any: the side must be a name whose second
/// occurrence lies outside the equation; when both qualify the smaller
/// name wins.
pub fn indirectable_side(c: &Configuration, position: usize) -> Option<Side> {
    let eq = c.body.get(position)?;
    let qualifies = |side: Side| -> Option<&Name> {
        let x = eq.side(side).as_name()?;
        if c.count_name(x) != 2 {
            return None;
        }
        let within = eq.0.count_name(x) + eq.1.count_name(x);
        if within == 1 {
            Some(x)
        } else {
            None
        }
    };
    match (qualifies(Side::Left), qualifies(Side::Right)) {
        (Some(_), None) => Some(Side::Left),
        (None, Some(_)) => Some(Side::Right),
        (Some(l), Some(r)) => Some(if l <= r { Side::Left } else { Side::Right }),
        (None, None) => None,
    }
}

/// Eliminates the equation at `position` by indirection, substituting the
/// other side for the chosen name's second occurrence. With `side` unset
/// the default policy picks the side.
pub fn indirect(
    c: &Configuration,
    position: usize,
    side: Option<Side>,
) -> Result<Configuration, StepError> {
    if position >= c.body.len() {
        return Err(StepError::BadPosition(position));
    }
    let chosen = match side {
        Some(s) => s,
        None => indirectable_side(c, position).ok_or(StepError::NotIndirectable(position))?,
    };
    let eq = &c.body[position];
    let Some(x) = eq.side(chosen).as_name() else {
        return Err(StepError::SideNotApplicable(position, chosen));
    };
    if c.count_name(x) != 2 || eq.0.count_name(x) + eq.1.count_name(x) != 1 {
        return Err(StepError::SideNotApplicable(position, chosen));
    }
    let x = x.clone();
    let t = eq.side(chosen.flip()).clone();
    let mut rest = c.clone();
    rest.body.remove(position);
    substitute(&rest, &x, &t).map_err(|_| StepError::SideNotApplicable(position, chosen))
}

/// All single steps available from `c`, with the step data needed to
/// replay them: every active pair fired, every indirectable equation
/// eliminated on every side that qualifies.
pub fn one_step_reducts(sys: &System, c: &Configuration) -> Vec<(Step, Option<Side>)> {
    let mut out = Vec::new();
    for pos in active_pairs(sys, c) {
        let mut gen = c.gen_above();
        let result = interact(sys, c, pos, &mut gen).expect("active pair fires");
        let equation = c.body[pos].clone();
        let (Term::Agent(a, _), Term::Agent(b, _)) = (&equation.0, &equation.1) else {
            unreachable!("active pair has agents on both sides");
        };
        out.push((
            Step {
                kind: StepKind::Interaction {
                    rule: (a.clone(), b.clone()),
                },
                position: pos,
                equation,
                result,
            },
            None,
        ));
    }
    for pos in 0..c.body.len() {
        for side in [Side::Left, Side::Right] {
            if let Ok(result) = indirect(c, pos, Some(side)) {
                let equation = c.body[pos].clone();
                let name = equation.side(side).as_name().expect("name side").clone();
                out.push((
                    Step {
                        kind: StepKind::Indirection { name },
                        position: pos,
                        equation,
                        result,
                    },
                    Some(side),
                ));
            }
        }
    }
    out
}

fn pick_step(
    sys: &System,
    c: &Configuration,
    strategy: Strategy,
) -> Option<(usize, bool /* interaction */)> {
    let actives = active_pairs(sys, c);
    let indirections: Vec<usize> = (0..c.body.len())
        .filter(|&i| indirectable_side(c, i).is_some())
        .collect();
    match strategy {
        Strategy::Leftmost => {
            let a = actives.first().copied();
            let i = indirections.first().copied();
            match (a, i) {
                (Some(a), Some(i)) if a < i => Some((a, true)),
                (Some(_), Some(i)) => Some((i, false)),
                (Some(a), None) => Some((a, true)),
                (None, Some(i)) => Some((i, false)),
                (None, None) => None,
            }
        }
        Strategy::InteractionFirst => actives
            .first()
            .map(|&a| (a, true))
            .or_else(|| indirections.first().map(|&i| (i, false))),
        Strategy::IndirectionFirst => indirections
            .first()
            .map(|&i| (i, false))
            .or_else(|| actives.first().map(|&a| (a, true))),
    }
}

/// Applies steps until none applies or `fuel` steps were taken, recording
/// every step.
pub fn normalize(
    sys: &System,
    c: &Configuration,
    strategy: Strategy,
    fuel: usize,
    gen: &mut NameGen,
) -> Trace {
    let mut trace = Trace {
        initial: c.clone(),
        steps: Vec::new(),
        status: Status::Normal,
    };
    let mut current = c.clone();
    loop {
        let Some((pos, is_interaction)) = pick_step(sys, &current, strategy) else {
            trace.status = if stuck_pairs(sys, &current).is_empty() {
                Status::Normal
            } else {
                Status::Stuck
            };
            return trace;
        };
        if trace.steps.len() >= fuel {
            trace.status = Status::FuelExhausted;
            return trace;
        }
        let equation = current.body[pos].clone();
        let (kind, next) = if is_interaction {
            let (Term::Agent(a, _), Term::Agent(b, _)) = (&equation.0, &equation.1) else {
                unreachable!("active pair has agents on both sides");
            };
            let kind = StepKind::Interaction {
                rule: (a.clone(), b.clone()),
            };
            let next = interact(sys, &current, pos, gen).expect("picked step applies");
            (kind, next)
        } else {
            let side = indirectable_side(&current, pos).expect("picked step applies");
            let name = current.body[pos]
                .side(side)
                .as_name()
                .expect("indirection side is a name")
                .clone();
            let next = indirect(&current, pos, Some(side)).expect("picked step applies");
            (StepKind::Indirection { name }, next)
        };
        trace.steps.push(Step {
            kind,
            position: pos,
            equation,
            result: next.clone(),
        });
        current = next;
    }
}
