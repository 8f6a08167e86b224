//! Terms: a term is a name or an agent applied to argument terms.

use std::fmt;

use crate::name::{Name, Symbol};

/// A path into a term: the sequence of argument indices from the root.
/// The empty path addresses the term itself.
pub type Path = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Name(Name),
    Agent(Symbol, Vec<Term>),
}

impl Term {
    pub fn name(n: impl Into<String>) -> Self {
        Term::Name(Name::user(n))
    }

    pub fn agent(sym: impl Into<String>, args: Vec<Term>) -> Self {
        Term::Agent(Symbol(sym.into()), args)
    }

    pub fn is_name(&self) -> bool {
        matches!(self, Term::Name(_))
    }

    pub fn as_name(&self) -> Option<&Name> {
        match self {
            Term::Name(n) => Some(n),
            Term::Agent(..) => None,
        }
    }

    /// Depth of the term: a name has depth 0, an agent 1 + max over args.
    pub fn depth(&self) -> usize {
        match self {
            Term::Name(_) => 0,
            Term::Agent(_, args) => 1 + args.iter().map(Term::depth).max().unwrap_or(0),
        }
    }

    /// Visits every name occurrence in the term.
    pub fn visit_names<'a>(&'a self, f: &mut impl FnMut(&'a Name)) {
        match self {
            Term::Name(n) => f(n),
            Term::Agent(_, args) => {
                for a in args {
                    a.visit_names(f);
                }
            }
        }
    }

    /// Counts occurrences of `x` within the term.
    pub fn count_name(&self, x: &Name) -> usize {
        let mut n = 0;
        self.visit_names(&mut |m| {
            if m == x {
                n += 1;
            }
        });
        n
    }

    /// Enumerates all subterm paths, root first, in preorder.
    pub fn paths(&self) -> Vec<Path> {
        let mut out = Vec::new();
        let mut stack = vec![(self, Vec::new())];
        while let Some((t, p)) = stack.pop() {
            out.push(p.clone());
            if let Term::Agent(_, args) = t {
                for (i, a) in args.iter().enumerate().rev() {
                    let mut q = p.clone();
                    q.push(i);
                    stack.push((a, q));
                }
            }
        }
        out
    }

    pub fn at_path(&self, path: &[usize]) -> Option<&Term> {
        let mut t = self;
        for &i in path {
            match t {
                Term::Agent(_, args) => t = args.get(i)?,
                Term::Name(_) => return None,
            }
        }
        Some(t)
    }

    /// Replaces the subterm at `path` with `new`, returning the old subterm.
    pub fn replace_at_path(&mut self, path: &[usize], new: Term) -> Option<Term> {
        let mut t = self;
        for &i in path {
            match t {
                Term::Agent(_, args) => t = args.get_mut(i)?,
                Term::Name(_) => return None,
            }
        }
        Some(std::mem::replace(t, new))
    }

    /// Replaces every occurrence of name `x` by `new`; returns the number
    /// of occurrences replaced.
    pub fn substitute_name(&mut self, x: &Name, new: &Term) -> usize {
        match self {
            Term::Name(n) if n == x => {
                *self = new.clone();
                1
            }
            Term::Name(_) => 0,
            Term::Agent(_, args) => args.iter_mut().map(|a| a.substitute_name(x, new)).sum(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Name(n) => write!(f, "{n}"),
            Term::Agent(sym, args) => {
                write!(f, "{sym}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}
