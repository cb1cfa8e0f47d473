//! Boolean query language.
//!
//! ```text
//! expr  := or
//! or    := and ('|' and)*
//! and   := unary ('&' unary)*
//! unary := '!' unary | '(' expr ')' | TERM
//! TERM  := [a-z0-9]+   (input is lowercased first)
//! ```

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Upper bound on the number of DNF clauses before [`to_dnf`] gives up.
pub const MAX_DNF_CLAUSES: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("syntax error at byte {offset}: {kind}")]
    Syntax {
        offset: usize,
        kind: SyntaxErrorKind,
    },
    #[error("DNF expansion exceeds {MAX_DNF_CLAUSES} clauses")]
    ClauseExplosion,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SyntaxErrorKind {
    EmptyInput,
    IllegalCharacter(char),
    UnbalancedParenthesis,
    DanglingOperator,
    ExpectedTerm,
    TrailingInput,
}

impl fmt::Display for SyntaxErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SyntaxErrorKind::EmptyInput => f.write_str("empty query"),
            SyntaxErrorKind::IllegalCharacter(c) => write!(f, "illegal character {c:?}"),
            SyntaxErrorKind::UnbalancedParenthesis => f.write_str("unbalanced parenthesis"),
            SyntaxErrorKind::DanglingOperator => f.write_str("operator without operand"),
            SyntaxErrorKind::ExpectedTerm => f.write_str("expected a term, '!' or '('"),
            SyntaxErrorKind::TrailingInput => f.write_str("unexpected input after expression"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum QueryAst {
    Term(String),
    Not(Box<QueryAst>),
    /// At least two children, none of them an `And`.
    And(Vec<QueryAst>),
    /// At least two children, none of them an `Or`.
    Or(Vec<QueryAst>),
}

impl QueryAst {
    pub fn term(name: impl Into<String>) -> Self {
        QueryAst::Term(name.into().to_lowercase())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(child: QueryAst) -> Self {
        QueryAst::Not(Box::new(child))
    }

    /// Conjunction, flattening nested `And`s. A single child is returned as is.
    pub fn and(children: impl IntoIterator<Item = QueryAst>) -> Self {
        Self::nary(children, true)
    }

    /// Disjunction, flattening nested `Or`s. A single child is returned as is.
    pub fn or(children: impl IntoIterator<Item = QueryAst>) -> Self {
        Self::nary(children, false)
    }

    fn nary(children: impl IntoIterator<Item = QueryAst>, conj: bool) -> Self {
        let mut flat = Vec::new();
        for c in children {
            match (c, conj) {
                (QueryAst::And(cs), true) | (QueryAst::Or(cs), false) => flat.extend(cs),
                (c, _) => flat.push(c),
            }
        }
        assert!(!flat.is_empty(), "n-ary node needs at least one child");
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else if conj {
            QueryAst::And(flat)
        } else {
            QueryAst::Or(flat)
        }
    }

    /// Distinct term names, sorted.
    pub fn terms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_terms(&mut out);
        out
    }

    fn collect_terms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            QueryAst::Term(t) => {
                out.insert(t);
            }
            QueryAst::Not(c) => c.collect_terms(out),
            QueryAst::And(cs) | QueryAst::Or(cs) => cs.iter().for_each(|c| c.collect_terms(out)),
        }
    }
}

/// Canonical printer; its output parses back to the same tree.
impl fmt::Display for QueryAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QueryAst::Term(t) => f.write_str(t),
            QueryAst::Not(c) => match **c {
                QueryAst::Term(_) | QueryAst::Not(_) => write!(f, "!{c}"),
                _ => write!(f, "!({c})"),
            },
            // nested same-kind nodes only occur in hand-built trees
            QueryAst::And(cs) => write_joined(f, cs, " & ", |c| {
                matches!(c, QueryAst::And(_) | QueryAst::Or(_))
            }),
            QueryAst::Or(cs) => write_joined(f, cs, " | ", |c| matches!(c, QueryAst::Or(_))),
        }
    }
}

fn write_joined(
    f: &mut fmt::Formatter<'_>,
    children: &[QueryAst],
    sep: &str,
    needs_parens: impl Fn(&QueryAst) -> bool,
) -> fmt::Result {
    for (i, c) in children.iter().enumerate() {
        if i > 0 {
            f.write_str(sep)?;
        }
        if needs_parens(c) {
            write!(f, "({c})")?;
        } else {
            write!(f, "{c}")?;
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok<'a> {
    Term(&'a str),
    And,
    Or,
    Not,
    Open,
    Close,
}

fn lex(input: &str) -> Result<Vec<(usize, Tok<'_>)>, QueryError> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let tok = match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'!' => Tok::Not,
            b'(' => Tok::Open,
            b')' => Tok::Close,
            _ if b.is_ascii_alphanumeric() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push((start, Tok::Term(&input[start..i])));
                continue;
            }
            _ => {
                let c = input[i..].chars().next().unwrap_or('\u{fffd}');
                return Err(syntax(i, SyntaxErrorKind::IllegalCharacter(c)));
            }
        };
        toks.push((i, tok));
        i += 1;
    }
    Ok(toks)
}

fn syntax(offset: usize, kind: SyntaxErrorKind) -> QueryError {
    QueryError::Syntax { offset, kind }
}

struct Parser<'a> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok<'a>> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn or(&mut self) -> Result<QueryAst, QueryError> {
        let mut parts = vec![self.and()?];
        while self.peek() == Some(Tok::Or) {
            self.pos += 1;
            parts.push(self.and()?);
        }
        Ok(QueryAst::or(parts))
    }

    fn and(&mut self) -> Result<QueryAst, QueryError> {
        let mut parts = vec![self.unary()?];
        while self.peek() == Some(Tok::And) {
            self.pos += 1;
            parts.push(self.unary()?);
        }
        Ok(QueryAst::and(parts))
    }

    fn unary(&mut self) -> Result<QueryAst, QueryError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(QueryAst::not(self.unary()?))
            }
            Some(Tok::Open) => {
                self.pos += 1;
                self.depth += 1;
                let inner = self.or()?;
                if self.peek() != Some(Tok::Close) {
                    return Err(syntax(at, SyntaxErrorKind::UnbalancedParenthesis));
                }
                self.pos += 1;
                self.depth -= 1;
                Ok(inner)
            }
            Some(Tok::Term(t)) => {
                self.pos += 1;
                Ok(QueryAst::Term(t.to_ascii_lowercase()))
            }
            Some(Tok::Close) if self.depth == 0 => {
                Err(syntax(at, SyntaxErrorKind::UnbalancedParenthesis))
            }
            None if self.pos > 0 => Err(syntax(at, SyntaxErrorKind::DanglingOperator)),
            Some(Tok::And) | Some(Tok::Or) => Err(syntax(at, SyntaxErrorKind::DanglingOperator)),
            _ => Err(syntax(at, SyntaxErrorKind::ExpectedTerm)),
        }
    }
}

pub fn parse(input: &str) -> Result<QueryAst, QueryError> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(syntax(0, SyntaxErrorKind::EmptyInput));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: input.len(),
        depth: 0,
    };
    let ast = p.or()?;
    match p.peek() {
        None => Ok(ast),
        Some(Tok::Close) => Err(syntax(p.offset(), SyntaxErrorKind::UnbalancedParenthesis)),
        Some(_) => Err(syntax(p.offset(), SyntaxErrorKind::TrailingInput)),
    }
}

/// Boolean value of `ast` given term presence.
pub fn eval_boolean(ast: &QueryAst, present: &impl Fn(&str) -> bool) -> bool {
    match ast {
        QueryAst::Term(t) => present(t),
        QueryAst::Not(c) => !eval_boolean(c, present),
        QueryAst::And(cs) => cs.iter().all(|c| eval_boolean(c, present)),
        QueryAst::Or(cs) => cs.iter().any(|c| eval_boolean(c, present)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub term: String,
    pub negated: bool,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!{}", self.term)
        } else {
            f.write_str(&self.term)
        }
    }
}

/// Disjunction of conjunctive clauses. An empty clause list is unsatisfiable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DnfQuery {
    pub clauses: Vec<Vec<Literal>>,
}

impl DnfQuery {
    pub fn is_unsatisfiable(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn eval(&self, present: &impl Fn(&str) -> bool) -> bool {
        self.clauses
            .iter()
            .any(|c| c.iter().all(|l| present(&l.term) != l.negated))
    }

    /// The DNF as a tree, `None` when unsatisfiable.
    pub fn to_ast(&self) -> Option<QueryAst> {
        if self.clauses.is_empty() {
            return None;
        }
        Some(QueryAst::or(self.clauses.iter().map(|c| {
            QueryAst::and(c.iter().map(|l| {
                let t = QueryAst::Term(l.term.clone());
                if l.negated {
                    QueryAst::not(t)
                } else {
                    t
                }
            }))
        })))
    }
}

impl fmt::Display for DnfQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return f.write_str("<unsatisfiable>");
        }
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let lits: Vec<String> = c.iter().map(Literal::to_string).collect();
            if c.len() > 1 && self.clauses.len() > 1 {
                write!(f, "({})", lits.join(" & "))?;
            } else {
                f.write_str(&lits.join(" & "))?;
            }
        }
        Ok(())
    }
}

type Clause = BTreeSet<Literal>;

/// Pushes negations to the leaves and distributes `&` over `|`.
///
/// Clauses holding a literal and its negation are dropped; literals inside a
/// clause and the clauses themselves come out sorted and deduplicated.
pub fn to_dnf(ast: &QueryAst) -> Result<DnfQuery, QueryError> {
    let clauses = dnf(ast, false)?;
    let mut out: Vec<Vec<Literal>> = clauses
        .into_iter()
        .filter(|c| !is_contradiction(c))
        .map(|c| c.into_iter().collect())
        .collect();
    out.sort();
    out.dedup();
    Ok(DnfQuery { clauses: out })
}

fn is_contradiction(clause: &Clause) -> bool {
    clause.iter().any(|l| {
        l.negated
            && clause.contains(&Literal {
                term: l.term.clone(),
                negated: false,
            })
    })
}

fn dnf(ast: &QueryAst, negate: bool) -> Result<Vec<Clause>, QueryError> {
    match ast {
        QueryAst::Term(t) => Ok(vec![Clause::from([Literal {
            term: t.clone(),
            negated: negate,
        }])]),
        QueryAst::Not(c) => dnf(c, !negate),
        QueryAst::And(cs) | QueryAst::Or(cs) => {
            // De Morgan: a negated conjunction is a disjunction and vice versa
            let conj = matches!(ast, QueryAst::And(_)) != negate;
            if conj {
                let mut acc: Vec<Clause> = vec![Clause::new()];
                for c in cs {
                    let rhs = dnf(c, negate)?;
                    if acc.len().saturating_mul(rhs.len()) > MAX_DNF_CLAUSES {
                        return Err(QueryError::ClauseExplosion);
                    }
                    let mut next = Vec::with_capacity(acc.len() * rhs.len());
                    for l in &acc {
                        for r in &rhs {
                            next.push(l.union(r).cloned().collect());
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            } else {
                let mut acc = Vec::new();
                for c in cs {
                    acc.extend(dnf(c, negate)?);
                    if acc.len() > MAX_DNF_CLAUSES {
                        return Err(QueryError::ClauseExplosion);
                    }
                }
                Ok(acc)
            }
        }
    }
}
