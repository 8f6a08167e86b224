//! Equations and configurations.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::name::{Name, NameGen};
use crate::term::{Path, Term};

/// An unordered pair of terms. `t = u` and `u = t` are the same equation.
#[derive(Clone, Debug)]
pub struct Equation(pub Term, pub Term);

impl Equation {
    pub fn new(l: Term, r: Term) -> Self {
        Equation(l, r)
    }

    /// The two sides ordered by the structural term order. Used to compare
    /// equations and multisets of equations without caring about
    /// orientation.
    pub fn normalized(&self) -> (&Term, &Term) {
        if self.0 <= self.1 {
            (&self.0, &self.1)
        } else {
            (&self.1, &self.0)
        }
    }

    pub fn side(&self, side: Side) -> &Term {
        match side {
            Side::Left => &self.0,
            Side::Right => &self.1,
        }
    }

    pub fn side_mut(&mut self, side: Side) -> &mut Term {
        match side {
            Side::Left => &mut self.0,
            Side::Right => &mut self.1,
        }
    }

    pub fn visit_names<'a>(&'a self, f: &mut impl FnMut(&'a Name)) {
        self.0.visit_names(f);
        self.1.visit_names(f);
    }
}

impl PartialEq for Equation {
    fn eq(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }
}

impl Eq for Equation {}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.0, self.1)
    }
}

/// One side of an equation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A position of a term occurrence in a configuration: an interface entry
/// or a side of a body equation, plus a path into that term.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Position {
    Interface { index: usize, path: Path },
    Body { eq: usize, side: Side, path: Path },
}

/// A configuration `< f1, ..., fk | e1, ..., en >`: an interface sequence
/// of observable terms plus a multiset of equations.
///
/// Linearity invariant: every name occurs at most twice in the whole
/// configuration; names occurring once are free, names occurring twice are
/// bound wiring. Construction does not enforce this; see
/// [`crate::system::validate_config`].
#[derive(Clone, Debug, Default)]
pub struct Configuration {
    pub interface: Vec<Term>,
    pub body: Vec<Equation>,
}

impl Configuration {
    pub fn new(interface: Vec<Term>, body: Vec<Equation>) -> Self {
        Configuration { interface, body }
    }

    pub fn empty() -> Self {
        Configuration::default()
    }

    pub fn visit_names<'a>(&'a self, f: &mut impl FnMut(&'a Name)) {
        for t in &self.interface {
            t.visit_names(f);
        }
        for e in &self.body {
            e.visit_names(f);
        }
    }

    /// Occurrence count of every name in interface and body together.
    pub fn occurrences(&self) -> BTreeMap<Name, usize> {
        let mut occ = BTreeMap::new();
        self.visit_names(&mut |n| {
            *occ.entry(n.clone()).or_insert(0) += 1;
        });
        occ
    }

    pub fn count_name(&self, x: &Name) -> usize {
        let mut n = 0;
        self.visit_names(&mut |m| {
            if m == x {
                n += 1;
            }
        });
        n
    }

    /// Names occurring exactly once: the free names.
    pub fn free_names(&self) -> Vec<Name> {
        self.occurrences()
            .into_iter()
            .filter(|(_, k)| *k == 1)
            .map(|(n, _)| n)
            .collect()
    }

    /// A fresh-name counter starting above every machine name in `self`.
    pub fn gen_above(&self) -> NameGen {
        let mut max = 0u64;
        self.visit_names(&mut |n| {
            if let Name::Gen(k) = n {
                max = max.max(k + 1);
            }
        });
        NameGen::starting_at(max)
    }

    pub fn term_at(&self, pos: &Position) -> Option<&Term> {
        match pos {
            Position::Interface { index, path } => self.interface.get(*index)?.at_path(path),
            Position::Body { eq, side, path } => self.body.get(*eq)?.side(*side).at_path(path),
        }
    }

    /// Replaces the term occurrence at `pos`, returning the old subterm.
    pub fn replace_at(&mut self, pos: &Position, new: Term) -> Option<Term> {
        match pos {
            Position::Interface { index, path } => {
                self.interface.get_mut(*index)?.replace_at_path(path, new)
            }
            Position::Body { eq, side, path } => self
                .body
                .get_mut(*eq)?
                .side_mut(*side)
                .replace_at_path(path, new),
        }
    }

    /// All term occurrence positions (every subterm of every interface
    /// entry and of both sides of every equation).
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        for (i, t) in self.interface.iter().enumerate() {
            for path in t.paths() {
                out.push(Position::Interface { index: i, path });
            }
        }
        for (i, e) in self.body.iter().enumerate() {
            for side in [Side::Left, Side::Right] {
                for path in e.side(side).paths() {
                    out.push(Position::Body { eq: i, side, path });
                }
            }
        }
        out
    }

    /// Multiset view of the body: normalized equations, sorted.
    fn body_multiset(&self) -> Vec<(&Term, &Term)> {
        let mut v: Vec<_> = self.body.iter().map(Equation::normalized).collect();
        v.sort();
        v
    }
}

/// Configurations compare with the interface as an ordered sequence and
/// the body as a multiset of unordered equations. Bound names are *not*
/// renamed here; see [`crate::canon::congruent`] for that.
impl PartialEq for Configuration {
    fn eq(&self, other: &Self) -> bool {
        self.interface == other.interface && self.body_multiset() == other.body_multiset()
    }
}

impl Eq for Configuration {}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, t) in self.interface.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {t}")?;
        }
        write!(f, " |")?;
        for (i, e) in self.body.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, " {e}")?;
        }
        write!(f, " >")
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SubstituteError {
    #[error("name {0} does not occur in the configuration")]
    Absent(Name),
    #[error("name {0} occurs {1} times, expected exactly one occurrence")]
    NotUnique(Name, usize),
}

/// Replaces the unique occurrence of `x` in `c` by `t`.
///
/// `x` must occur exactly once (interface and body counted together);
/// anything else is a precondition violation.
pub fn substitute(
    c: &Configuration,
    x: &Name,
    t: &Term,
) -> Result<Configuration, SubstituteError> {
    match c.count_name(x) {
        0 => return Err(SubstituteError::Absent(x.clone())),
        1 => {}
        k => return Err(SubstituteError::NotUnique(x.clone(), k)),
    }
    let mut out = c.clone();
    let mut replaced = 0;
    for term in out.interface.iter_mut() {
        replaced += term.substitute_name(x, t);
    }
    if replaced == 0 {
        for eq in out.body.iter_mut() {
            replaced += eq.0.substitute_name(x, t);
            if replaced > 0 {
                break;
            }
            replaced += eq.1.substitute_name(x, t);
            if replaced > 0 {
                break;
            }
        }
    }
    debug_assert_eq!(replaced, 1);
    Ok(out)
}
