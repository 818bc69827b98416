//! Recursive-descent parser. The grammar is documented in `docs/grammar.md`.

use thiserror::Error;

use super::lexer::{tokenize, Token, TokenKind};
use super::{Clause, Literal, ProximityDecl, Query, RhoAtom, SourceProgram};
use crate::degree::{Degree, DegreeError};
use crate::term::{Head, Sequence, Symbol, Term, VarKind, VarName, EPS, HOLE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{line}:{col}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        line: usize,
        col: usize,
        found: String,
        expected: Vec<String>,
    },
    #[error("{line}:{col}: {message}")]
    Invalid {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("{line}:{col}: `{feature}` is not supported")]
    UnsupportedFeature {
        line: usize,
        col: usize,
        feature: String,
    },
    #[error("{line}:{col}: threshold {value} is outside [0, 1]")]
    ThresholdRange {
        line: usize,
        col: usize,
        value: String,
    },
    #[error("{line}:{col}: proximity degree {value} is outside (0, 1]")]
    DegreeRange {
        line: usize,
        col: usize,
        value: String,
    },
}

impl ParseError {
    pub fn position(&self) -> (usize, usize) {
        match self {
            ParseError::Syntax { line, col, .. }
            | ParseError::Invalid { line, col, .. }
            | ParseError::UnsupportedFeature { line, col, .. }
            | ParseError::ThresholdRange { line, col, .. }
            | ParseError::DegreeRange { line, col, .. } => (*line, *col),
        }
    }
}

type PResult<T> = Result<T, ParseError>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> PResult<Self> {
        Ok(Parser {
            toks: tokenize(src)?,
            pos: 0,
        })
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek_at(&self, n: usize) -> &TokenKind {
        &self.toks[(self.pos + n).min(self.toks.len() - 1)].kind
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn at(&self, k: &TokenKind) -> bool {
        &self.peek().kind == k
    }

    fn eat(&mut self, k: &TokenKind) -> bool {
        if self.at(k) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn at_ident(&self, word: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == word)
    }

    fn error<T>(&self, expected: &[&str]) -> PResult<T> {
        let t = self.peek();
        Err(ParseError::Syntax {
            line: t.line,
            col: t.col,
            found: t.kind.to_string(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn invalid<T>(&self, tok: &Token, message: impl Into<String>) -> PResult<T> {
        Err(ParseError::Invalid {
            line: tok.line,
            col: tok.col,
            message: message.into(),
        })
    }

    fn expect(&mut self, k: TokenKind) -> PResult<Token> {
        if self.at(&k) {
            Ok(self.bump())
        } else {
            self.error(&[&k.to_string()])
        }
    }

    fn expect_eof(&mut self) -> PResult<()> {
        if self.at(&TokenKind::Eof) {
            Ok(())
        } else {
            self.error(&["end of input"])
        }
    }

    fn symbol(&self, tok: &Token, name: &str) -> PResult<Symbol> {
        Symbol::new(name).or_else(|e| self.invalid(tok, e.to_string()))
    }

    fn variable(&self, tok: &Token, name: &str) -> PResult<VarName> {
        VarName::parse(name).or_else(|e| self.invalid(tok, e.to_string()))
    }

    // term := hole | i_X | c_X '(' term ')' | (f_X | symbol | op) ['(' args ')']
    fn term(&mut self) -> PResult<Term> {
        let tok = self.peek().clone();
        let name = match &tok.kind {
            TokenKind::Ident(s) => s.clone(),
            TokenKind::Op(s) => {
                let s = s.clone();
                self.bump();
                let sym = self.symbol(&tok, &s)?;
                let args = self.opt_args()?;
                return Ok(Term::app(sym, args));
            }
            _ => return self.error(&["a term"]),
        };
        if name == HOLE {
            self.bump();
            return Ok(Term::Hole);
        }
        if name == EPS {
            return self.invalid(&tok, "`eps` is a sequence, not a term");
        }
        match VarKind::from_prefix(&name) {
            Some(VarKind::Individual) => {
                self.bump();
                Ok(Term::Var(self.variable(&tok, &name)?))
            }
            Some(VarKind::Sequence) => {
                self.invalid(&tok, format!("sequence variable `{name}` in term position"))
            }
            Some(VarKind::Function) => {
                self.bump();
                let v = self.variable(&tok, &name)?;
                let args = self.opt_args()?;
                Ok(Term::App(Head::Var(v), args))
            }
            Some(VarKind::Context) => {
                self.bump();
                let v = self.variable(&tok, &name)?;
                self.expect(TokenKind::LParen)?;
                let arg = self.term()?;
                self.expect(TokenKind::RParen)?;
                Ok(Term::CtxApp(v, std::sync::Arc::new(arg)))
            }
            None => {
                self.bump();
                let sym = self.symbol(&tok, &name)?;
                let args = self.opt_args()?;
                Ok(Term::app(sym, args))
            }
        }
    }

    fn opt_args(&mut self) -> PResult<Sequence> {
        if self.eat(&TokenKind::LParen) {
            self.items_until_rparen()
        } else {
            Ok(Sequence::empty())
        }
    }

    // Called after `(`; consumes through `)`.
    fn items_until_rparen(&mut self) -> PResult<Sequence> {
        let mut items = Vec::new();
        if self.eat(&TokenKind::RParen) {
            return Ok(Sequence::from(items));
        }
        loop {
            self.item(&mut items)?;
            if self.eat(&TokenKind::Comma) {
                continue;
            }
            if self.eat(&TokenKind::RParen) {
                return Ok(Sequence::from(items));
            }
            return self.error(&["`,`", "`)`"]);
        }
    }

    // item := eps | s_X | term
    fn item(&mut self, out: &mut Vec<Term>) -> PResult<()> {
        let tok = self.peek().clone();
        if let TokenKind::Ident(name) = &tok.kind {
            if name == EPS {
                self.bump();
                return Ok(());
            }
            if VarKind::from_prefix(name) == Some(VarKind::Sequence) {
                self.bump();
                out.push(Term::SeqVar(self.variable(&tok, name)?));
                return Ok(());
            }
        }
        out.push(self.term()?);
        Ok(())
    }

    // seq := '(' items ')' | item
    fn sequence(&mut self) -> PResult<Sequence> {
        if self.eat(&TokenKind::LParen) {
            return self.items_until_rparen();
        }
        let mut items = Vec::new();
        self.item(&mut items)?;
        Ok(Sequence::from(items))
    }

    fn reject_where(&self) -> PResult<()> {
        if self.at_ident("where") {
            let t = self.peek();
            return Err(ParseError::UnsupportedFeature {
                line: t.line,
                col: t.col,
                feature: "where (regular constraints)".into(),
            });
        }
        Ok(())
    }

    fn rho_rest(&mut self, strategy: Term) -> PResult<(RhoAtom, bool)> {
        let lhs = self.sequence()?;
        let negated = match self.peek().kind {
            TokenKind::Arrow => false,
            TokenKind::NegArrow => true,
            _ => return self.error(&["`==>`", "`=\\=>`"]),
        };
        self.bump();
        let rhs = self.sequence()?;
        self.reject_where()?;
        Ok((RhoAtom { strategy, lhs, rhs }, negated))
    }

    fn literal(&mut self) -> PResult<Literal> {
        if self.at_ident("not") && self.peek_at(1) == &TokenKind::LParen {
            self.bump();
            self.bump();
            let inner = self.literal()?;
            self.expect(TokenKind::RParen)?;
            return Ok(Literal::NegPred(Box::new(inner)));
        }
        let start = self.peek().clone();
        let first = self.term()?;
        if self.eat(&TokenKind::ColonColon) {
            let (atom, negated) = self.rho_rest(first)?;
            return Ok(if negated {
                Literal::RhoNeg(atom)
            } else {
                Literal::RhoPos(atom)
            });
        }
        if let TokenKind::Op(op) = &self.peek().kind {
            let op = op.clone();
            let tok = self.bump();
            let right = self.term()?;
            let sym = self.symbol(&tok, &op)?;
            return Ok(Literal::Pred(Term::app(sym, vec![first, right])));
        }
        match first {
            Term::App(..) | Term::Var(_) => Ok(Literal::Pred(first)),
            _ => self.invalid(&start, "expected a literal"),
        }
    }

    fn body(&mut self) -> PResult<Vec<Literal>> {
        let mut lits = vec![self.literal()?];
        while self.eat(&TokenKind::Comma) {
            lits.push(self.literal()?);
        }
        Ok(lits)
    }

    fn opt_body(&mut self) -> PResult<Vec<Literal>> {
        if self.eat(&TokenKind::Neck) {
            self.body()
        } else {
            Ok(Vec::new())
        }
    }

    fn clause(&mut self) -> PResult<Clause> {
        let start = self.peek().clone();
        let head = self.term()?;
        let clause = if self.eat(&TokenKind::ColonColon) {
            let (atom, negated) = self.rho_rest(head)?;
            if negated {
                return self.invalid(&start, "a clause head cannot be negated");
            }
            Clause::Rho {
                head: atom,
                body: self.opt_body()?,
            }
        } else if self.eat(&TokenKind::Define) {
            Clause::Abbrev {
                strategy: head,
                expansion: self.term()?,
            }
        } else {
            if !matches!(head, Term::App(..)) {
                return self.invalid(&start, "a predicate clause head must be a compound term");
            }
            Clause::Pred {
                head,
                body: self.opt_body()?,
            }
        };
        self.expect(TokenKind::Dot)?;
        Ok(clause)
    }

    fn program(&mut self) -> PResult<SourceProgram> {
        let mut clauses = Vec::new();
        while !self.at(&TokenKind::Eof) {
            clauses.push(self.clause()?);
        }
        Ok(SourceProgram { clauses })
    }

    fn query(&mut self) -> PResult<Query> {
        self.expect(TokenKind::Question)?;
        self.expect(TokenKind::LParen)?;
        let mut items = Vec::new();
        loop {
            let tok = self.peek().clone();
            items.push((tok, self.literal()?));
            if self.eat(&TokenKind::Comma) {
                continue;
            }
            self.expect(TokenKind::RParen)?;
            break;
        }
        self.eat(&TokenKind::Dot);
        self.expect_eof()?;

        let answer_name = |l: &Literal| match l {
            Literal::Pred(Term::App(Head::Sym(s), args))
                if args.is_empty() && s.name().starts_with(|c: char| c.is_ascii_uppercase()) =>
            {
                Some(s.name().to_string())
            }
            _ => None,
        };
        let numeric = |l: &Literal| match l {
            Literal::Pred(Term::App(Head::Sym(s), args))
                if args.is_empty() && s.numeric_value().is_some() =>
            {
                Some(s.name().to_string())
            }
            _ => None,
        };

        let n = items.len();
        let Some(result_name) = answer_name(&items[n - 1].1) else {
            let t = &items[n - 1].0;
            return Err(ParseError::Syntax {
                line: t.line,
                col: t.col,
                found: "a goal".into(),
                expected: vec!["a capitalised result name such as `Result`".into()],
            });
        };
        let four =
            n >= 4 && answer_name(&items[n - 2].1).is_some() && numeric(&items[n - 3].1).is_some();
        let (goal_len, threshold, degree_name) = if four {
            let (tok, lit) = &items[n - 3];
            let text = numeric(lit).unwrap();
            let threshold = parse_degree(&text).map_err(|e| match e {
                RangeOrOther::Range => ParseError::ThresholdRange {
                    line: tok.line,
                    col: tok.col,
                    value: text.clone(),
                },
                RangeOrOther::Other(message) => ParseError::Invalid {
                    line: tok.line,
                    col: tok.col,
                    message,
                },
            })?;
            (n - 3, Some(threshold), answer_name(&items[n - 2].1))
        } else {
            (n - 1, None, None)
        };
        if goal_len == 0 {
            let t = &items[0].0;
            return self.invalid(t, "query has no goal");
        }
        let goal = items.into_iter().take(goal_len).map(|(_, l)| l).collect();
        Ok(Query {
            goal,
            threshold,
            degree_name,
            result_name,
        })
    }

    fn proximity_decls(&mut self) -> PResult<Vec<ProximityDecl>> {
        let mut out = Vec::new();
        while !self.at(&TokenKind::Eof) {
            if !self.at_ident("prox") {
                return self.error(&["`prox`"]);
            }
            self.bump();
            self.expect(TokenKind::LParen)?;
            let left = self.decl_symbol()?;
            self.expect(TokenKind::Comma)?;
            let right = self.decl_symbol()?;
            self.expect(TokenKind::Comma)?;
            let tok = self.peek().clone();
            let TokenKind::Ident(text) = &tok.kind else {
                return self.error(&["a degree"]);
            };
            let text = text.clone();
            self.bump();
            let out_of_range = || ParseError::DegreeRange {
                line: tok.line,
                col: tok.col,
                value: text.clone(),
            };
            let degree = parse_degree(&text).map_err(|e| match e {
                RangeOrOther::Range => out_of_range(),
                RangeOrOther::Other(message) => ParseError::Invalid {
                    line: tok.line,
                    col: tok.col,
                    message,
                },
            })?;
            // Degree 0 means "distinct" and degree 1 means "equal"; neither may
            // be declared between two different symbols.
            if degree == Degree::ZERO || (degree == Degree::ONE && left != right) {
                return Err(out_of_range());
            }
            self.expect(TokenKind::RParen)?;
            self.expect(TokenKind::Dot)?;
            out.push(ProximityDecl {
                left,
                right,
                degree,
            });
        }
        Ok(out)
    }

    fn decl_symbol(&mut self) -> PResult<Symbol> {
        let tok = self.peek().clone();
        match &tok.kind {
            TokenKind::Ident(s) | TokenKind::Op(s) => {
                let s = s.clone();
                self.bump();
                self.symbol(&tok, &s)
            }
            _ => self.error(&["a symbol"]),
        }
    }
}

enum RangeOrOther {
    Range,
    Other(String),
}

fn parse_degree(text: &str) -> Result<Degree, RangeOrOther> {
    match text.parse::<Degree>() {
        Ok(d) => Ok(d),
        Err(DegreeError::OutOfRange(_)) => Err(RangeOrOther::Range),
        Err(_) if text.starts_with('-') => Err(RangeOrOther::Range),
        Err(e) => Err(RangeOrOther::Other(e.to_string())),
    }
}

pub fn parse_program(src: &str) -> Result<SourceProgram, ParseError> {
    Parser::new(src)?.program()
}

pub fn parse_query(src: &str) -> Result<Query, ParseError> {
    Parser::new(src)?.query()
}

pub fn parse_proximity_decls(src: &str) -> Result<Vec<ProximityDecl>, ParseError> {
    Parser::new(src)?.proximity_decls()
}

pub fn parse_term(src: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term()?;
    p.expect_eof()?;
    Ok(t)
}

/// Parses a sequence: `eps`, a single item, or a parenthesised list.
pub fn parse_sequence(src: &str) -> Result<Sequence, ParseError> {
    let mut p = Parser::new(src)?;
    let s = p.sequence()?;
    p.expect_eof()?;
    Ok(s)
}

pub fn parse_literal(src: &str) -> Result<Literal, ParseError> {
    let mut p = Parser::new(src)?;
    let l = p.literal()?;
    p.expect_eof()?;
    Ok(l)
}
