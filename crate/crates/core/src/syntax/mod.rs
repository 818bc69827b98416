//! Surface syntax: programs, queries and proximity declarations.

mod lexer;
mod parser;
mod render;

use crate::degree::Degree;
use crate::term::{Sequence, Symbol, Term, VarName};

pub use lexer::{Token, TokenKind};
pub use parser::{
    parse_literal, parse_program, parse_proximity_decls, parse_query, parse_sequence, parse_term,
    ParseError,
};
pub use render::{render_answer, render_bindings, render_sequence};

/// `st :: lhs ==> rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RhoAtom {
    pub strategy: Term,
    pub lhs: Sequence,
    pub rhs: Sequence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Literal {
    RhoPos(RhoAtom),
    /// `st :: lhs =\=> rhs`
    RhoNeg(RhoAtom),
    /// A predicate call. The term's head names the predicate.
    Pred(Term),
    /// `not(L)`
    NegPred(Box<Literal>),
}

impl Literal {
    pub fn vars(&self) -> Vec<VarName> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<VarName>) {
        match self {
            Literal::RhoPos(a) | Literal::RhoNeg(a) => {
                a.strategy.collect_vars(out);
                for t in a.lhs.iter().chain(a.rhs.iter()) {
                    t.collect_vars(out);
                }
            }
            Literal::Pred(t) => t.collect_vars(out),
            Literal::NegPred(inner) => inner.collect_vars(out),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Clause {
    /// `st :: lhs ==> rhs :- body.`
    Rho { head: RhoAtom, body: Vec<Literal> },
    /// `p(args) :- body.`
    Pred { head: Term, body: Vec<Literal> },
    /// `L := R.`, shorthand for `L :: s_X ==> s_Y :- R :: s_X ==> s_Y.`
    Abbrev { strategy: Term, expansion: Term },
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SourceProgram {
    pub clauses: Vec<Clause>,
}

/// `?(Goal, Result).` or `?(Goal, λ, Degree, Result).`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub goal: Vec<Literal>,
    /// Present for the four-argument form, which evaluates in proximity mode.
    pub threshold: Option<Degree>,
    pub degree_name: Option<String>,
    pub result_name: String,
}

impl Query {
    /// Query variables in first-occurrence order.
    pub fn vars(&self) -> Vec<VarName> {
        let mut out = Vec::new();
        for l in &self.goal {
            l.collect_vars(&mut out);
        }
        out
    }
}

/// One line of a proximity file: `prox(a, b, 0.6).`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProximityDecl {
    pub left: Symbol,
    pub right: Symbol,
    pub degree: Degree,
}
