//! Parser for the `.ins` text format.
//!
//! ```text
//! file   := item*            item := agents | rule | config
//! agents := "agents" "{" IDENT "/" NAT ("," IDENT "/" NAT)* "}"
//! rule   := "rule" IDENT "[" terms? "]" "><" IDENT "[" terms? "]" ";"
//! config := "config" IDENT "=" "<" terms? "|" eqs? ">" ";"
//! eqs    := term "=" term ("," term "=" term)*
//! term   := IDENT | IDENT "(" terms? ")"
//! terms  := term ("," term)*
//! ```
//!
//! `#` starts a comment running to the end of the line. A declared agent
//! identifier must always carry parentheses (a zero-arity agent is
//! written `eps()`); any other identifier is a name. Machine-namespace
//! names (`%0`, `%1`, ...) are rejected in user input.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::config::{Configuration, Equation};
use crate::name::Symbol;
use crate::system::{Rule, System};
use crate::term::Term;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl ParseError {
    fn new(pos: Pos, message: impl Into<String>) -> Self {
        ParseError {
            line: pos.0,
            col: pos.1,
            message: message.into(),
        }
    }
}

type Pos = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(usize),
    LBrace,
    RBrace,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Lt,
    Gt,
    Bowtie,
    Pipe,
    Equals,
    Comma,
    Semi,
    Slash,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "identifier '{s}'"),
            Tok::Nat(n) => return write!(f, "number {n}"),
            Tok::LBrace => "'{'",
            Tok::RBrace => "'}'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::LBracket => "'['",
            Tok::RBracket => "']'",
            Tok::Lt => "'<'",
            Tok::Gt => "'>'",
            Tok::Bowtie => "'><'",
            Tok::Pipe => "'|'",
            Tok::Equals => "'='",
            Tok::Comma => "','",
            Tok::Semi => "';'",
            Tok::Slash => "'/'",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    macro_rules! bump {
        () => {{
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else if c.is_some() {
                col += 1;
            }
            c
        }};
    }
    loop {
        let pos = (line, col);
        let Some(&c) = chars.peek() else {
            out.push((Tok::Eof, pos));
            return Ok(out);
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    bump!();
                }
            }
            '%' => {
                return Err(ParseError::new(
                    pos,
                    "'%' starts a machine-reserved name and cannot appear in user input",
                ))
            }
            '{' => {
                bump!();
                out.push((Tok::LBrace, pos));
            }
            '}' => {
                bump!();
                out.push((Tok::RBrace, pos));
            }
            '(' => {
                bump!();
                out.push((Tok::LParen, pos));
            }
            ')' => {
                bump!();
                out.push((Tok::RParen, pos));
            }
            '[' => {
                bump!();
                out.push((Tok::LBracket, pos));
            }
            ']' => {
                bump!();
                out.push((Tok::RBracket, pos));
            }
            '<' => {
                bump!();
                out.push((Tok::Lt, pos));
            }
            '>' => {
                bump!();
                if chars.peek() == Some(&'<') {
                    bump!();
                    out.push((Tok::Bowtie, pos));
                } else {
                    out.push((Tok::Gt, pos));
                }
            }
            '|' => {
                bump!();
                out.push((Tok::Pipe, pos));
            }
            '=' => {
                bump!();
                out.push((Tok::Equals, pos));
            }
            ',' => {
                bump!();
                out.push((Tok::Comma, pos));
            }
            ';' => {
                bump!();
                out.push((Tok::Semi, pos));
            }
            '/' => {
                bump!();
                out.push((Tok::Slash, pos));
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Ident(s), pos));
            }
            c if c.is_ascii_digit() => {
                let mut n: usize = 0;
                while let Some(&c) = chars.peek() {
                    if let Some(d) = c.to_digit(10) {
                        n = n
                            .checked_mul(10)
                            .and_then(|n| n.checked_add(d as usize))
                            .ok_or_else(|| ParseError::new(pos, "number too large"))?;
                        bump!();
                    } else {
                        break;
                    }
                }
                out.push((Tok::Nat(n), pos));
            }
            c => {
                return Err(ParseError::new(pos, format!("unexpected character '{c}'")));
            }
        }
    }
}

/// A term as parsed, before agent/name classification.
#[derive(Clone, Debug)]
struct RawTerm {
    ident: String,
    pos: Pos,
    args: Option<Vec<RawTerm>>,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &(Tok, Pos) {
        &self.toks[self.at]
    }

    fn next(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<Pos, ParseError> {
        let (tok, pos) = self.next();
        if tok == want {
            Ok(pos)
        } else {
            Err(ParseError::new(pos, format!("expected {want}, found {tok}")))
        }
    }

    fn expect_ident(&mut self) -> Result<(String, Pos), ParseError> {
        let (tok, pos) = self.next();
        match tok {
            Tok::Ident(s) => Ok((s, pos)),
            other => Err(ParseError::new(
                pos,
                format!("expected identifier, found {other}"),
            )),
        }
    }

    fn term(&mut self) -> Result<RawTerm, ParseError> {
        let (ident, pos) = self.expect_ident()?;
        let args = if self.peek().0 == Tok::LParen {
            self.next();
            let mut args = Vec::new();
            if self.peek().0 != Tok::RParen {
                loop {
                    args.push(self.term()?);
                    if self.peek().0 == Tok::Comma {
                        self.next();
                    } else {
                        break;
                    }
                }
            }
            self.expect(Tok::RParen)?;
            Some(args)
        } else {
            None
        };
        Ok(RawTerm { ident, pos, args })
    }

    /// `terms?` up to (not consuming) the closing token.
    fn term_list(&mut self, closing: &Tok) -> Result<Vec<RawTerm>, ParseError> {
        let mut out = Vec::new();
        if &self.peek().0 == closing {
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            if self.peek().0 == Tok::Comma {
                self.next();
            } else {
                break;
            }
        }
        Ok(out)
    }

    fn eq_list(&mut self) -> Result<Vec<(RawTerm, RawTerm)>, ParseError> {
        let mut out = Vec::new();
        if self.peek().0 == Tok::Gt {
            return Ok(out);
        }
        loop {
            let l = self.term()?;
            self.expect(Tok::Equals)?;
            let r = self.term()?;
            out.push((l, r));
            if self.peek().0 == Tok::Comma {
                self.next();
            } else {
                break;
            }
        }
        Ok(out)
    }

    /// `"<" terms? "|" eqs? ">"`, the opening `<` already consumed.
    fn config_body(&mut self) -> Result<ConfigBody, ParseError> {
        let interface = self.term_list(&Tok::Pipe)?;
        self.expect(Tok::Pipe)?;
        let eqs = self.eq_list()?;
        self.expect(Tok::Gt)?;
        Ok((interface, eqs))
    }
}

type ConfigBody = (Vec<RawTerm>, Vec<(RawTerm, RawTerm)>);
type RawRule = (String, Pos, Vec<RawTerm>, String, Pos, Vec<RawTerm>);
type RawConfig = (String, Pos, Vec<RawTerm>, Vec<(RawTerm, RawTerm)>);

#[derive(Clone, Debug)]
struct RawFile {
    agents: Vec<(String, usize, Pos)>,
    rules: Vec<RawRule>,
    configs: Vec<RawConfig>,
}

fn parse_raw(text: &str) -> Result<RawFile, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    let mut raw = RawFile {
        agents: Vec::new(),
        rules: Vec::new(),
        configs: Vec::new(),
    };
    loop {
        let (tok, pos) = p.next();
        match tok {
            Tok::Eof => return Ok(raw),
            Tok::Ident(kw) if kw == "agents" => {
                p.expect(Tok::LBrace)?;
                loop {
                    let (name, npos) = p.expect_ident()?;
                    p.expect(Tok::Slash)?;
                    let (tok, apos) = p.next();
                    let arity = match tok {
                        Tok::Nat(n) => n,
                        other => {
                            return Err(ParseError::new(
                                apos,
                                format!("expected arity, found {other}"),
                            ))
                        }
                    };
                    raw.agents.push((name, arity, npos));
                    match p.next() {
                        (Tok::Comma, _) => continue,
                        (Tok::RBrace, _) => break,
                        (other, pos) => {
                            return Err(ParseError::new(
                                pos,
                                format!("expected ',' or '}}', found {other}"),
                            ))
                        }
                    }
                }
            }
            Tok::Ident(kw) if kw == "rule" => {
                let (ls, lpos) = p.expect_ident()?;
                p.expect(Tok::LBracket)?;
                let lpats = p.term_list(&Tok::RBracket)?;
                p.expect(Tok::RBracket)?;
                p.expect(Tok::Bowtie)?;
                let (rs, rpos) = p.expect_ident()?;
                p.expect(Tok::LBracket)?;
                let rpats = p.term_list(&Tok::RBracket)?;
                p.expect(Tok::RBracket)?;
                p.expect(Tok::Semi)?;
                raw.rules.push((ls, lpos, lpats, rs, rpos, rpats));
            }
            Tok::Ident(kw) if kw == "config" => {
                let (name, npos) = p.expect_ident()?;
                p.expect(Tok::Equals)?;
                p.expect(Tok::Lt)?;
                let (interface, eqs) = p.config_body()?;
                p.expect(Tok::Semi)?;
                raw.configs.push((name, npos, interface, eqs));
            }
            other => {
                return Err(ParseError::new(
                    pos,
                    format!("expected 'agents', 'rule', or 'config', found {other}"),
                ));
            }
        }
    }
}

fn classify(raw: &RawTerm, sig: &BTreeMap<Symbol, usize>) -> Result<Term, ParseError> {
    match &raw.args {
        Some(args) => {
            let args = args
                .iter()
                .map(|a| classify(a, sig))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Term::Agent(Symbol(raw.ident.clone()), args))
        }
        None => {
            if sig.contains_key(&Symbol(raw.ident.clone())) {
                Err(ParseError::new(
                    raw.pos,
                    format!(
                        "'{}' is a declared agent and must carry parentheses; write '{}()' \
                         or rename the wire",
                        raw.ident, raw.ident
                    ),
                ))
            } else {
                Ok(Term::name(raw.ident.clone()))
            }
        }
    }
}

/// The contents of one source file: a system plus its named
/// configurations, in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SourceFile {
    pub system: System,
    pub configs: Vec<(String, Configuration)>,
}

impl SourceFile {
    pub fn config(&self, name: &str) -> Option<&Configuration> {
        self.configs
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, c)| c)
    }
}

/// Parses a source file. Syntax and scoping errors (including the
/// bare-agent rule) are reported with positions; deeper semantic checks
/// are left to [`crate::system::validate_system`] and
/// [`crate::system::validate_config`].
pub fn parse_system(text: &str) -> Result<SourceFile, ParseError> {
    let raw = parse_raw(text)?;
    let mut signature: BTreeMap<Symbol, usize> = BTreeMap::new();
    for (name, arity, pos) in &raw.agents {
        if signature.insert(Symbol(name.clone()), *arity).is_some() {
            return Err(ParseError::new(
                *pos,
                format!("agent '{name}' declared more than once"),
            ));
        }
    }
    let mut rules = Vec::new();
    for (ls, _, lpats, rs, _, rpats) in &raw.rules {
        let left_patterns = lpats
            .iter()
            .map(|t| classify(t, &signature))
            .collect::<Result<Vec<_>, _>>()?;
        let right_patterns = rpats
            .iter()
            .map(|t| classify(t, &signature))
            .collect::<Result<Vec<_>, _>>()?;
        rules.push(Rule {
            left: Symbol(ls.clone()),
            right: Symbol(rs.clone()),
            left_patterns,
            right_patterns,
        });
    }
    let mut configs: Vec<(String, Configuration)> = Vec::new();
    for (name, pos, interface, eqs) in &raw.configs {
        if configs.iter().any(|(n, _)| n == name) {
            return Err(ParseError::new(
                *pos,
                format!("configuration '{name}' declared more than once"),
            ));
        }
        let interface = interface
            .iter()
            .map(|t| classify(t, &signature))
            .collect::<Result<Vec<_>, _>>()?;
        let body = eqs
            .iter()
            .map(|(l, r)| {
                Ok(Equation(
                    classify(l, &signature)?,
                    classify(r, &signature)?,
                ))
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        configs.push((name.clone(), Configuration::new(interface, body)));
    }
    Ok(SourceFile {
        system: System::new(signature, rules),
        configs,
    })
}

/// Parses a standalone configuration `< terms? | eqs? >` against an
/// existing system's signature. Used for inline configurations.
pub fn parse_config(sys: &System, text: &str) -> Result<Configuration, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, at: 0 };
    p.expect(Tok::Lt)?;
    let (interface, eqs) = p.config_body()?;
    if p.peek().0 == Tok::Semi {
        p.next();
    }
    let (tok, pos) = p.next();
    if tok != Tok::Eof {
        return Err(ParseError::new(
            pos,
            format!("unexpected {tok} after configuration"),
        ));
    }
    let interface = interface
        .iter()
        .map(|t| classify(t, &sys.signature))
        .collect::<Result<Vec<_>, _>>()?;
    let body = eqs
        .iter()
        .map(|(l, r)| {
            Ok(Equation(
                classify(l, &sys.signature)?,
                classify(r, &sys.signature)?,
            ))
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    Ok(Configuration::new(interface, body))
}
