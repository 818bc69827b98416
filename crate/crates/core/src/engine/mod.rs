//! Goal resolution: depth-first, leftmost literal first, clauses in source
//! order, matchers in the matcher's canonical order.
//!
//! Every ρ-literal is evaluated by computing the outputs of its (ground)
//! strategy on its (ground) left-hand side and then matching the right-hand
//! side against each output: exactly in exact mode, with the query threshold
//! in proximity mode. Answers are produced lazily, so `first_one` and the
//! REPL only pay for the answers they consume.

mod builtins;
mod db;

use std::sync::Arc;

use thiserror::Error;

use crate::degree::Degree;
use crate::error::ModelError;
use crate::matching::{match_hedge_with, match_term, MatchError};
use crate::proximity::{Proximal, ProximityRelation};
use crate::subst::{Binding, Substitution};
use crate::syntax::{Literal, Query, RhoAtom};
use crate::term::{Sequence, Term, VarName};

pub use db::{
    load_program, ClauseDb, LoadError, PredRule, RhoRule, BUILTIN_PREDICATES, BUILTIN_STRATEGIES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("literal is not sufficiently instantiated: {0}")]
    NonGroundRedex(String),
    #[error("unknown strategy {name}/{arity}")]
    UnknownStrategy { name: String, arity: usize },
    #[error("unknown predicate {name}/{arity}")]
    UnknownPredicate { name: String, arity: usize },
    #[error("{name} expects {expected} argument(s), got {arity}")]
    ArityError {
        name: String,
        arity: usize,
        expected: &'static str,
    },
    #[error("map({strategy}) produced the non-term result {output}")]
    NonTermResult { strategy: String, output: String },
    #[error("comparison on non-numeric arguments: {0}")]
    NonNumeric(String),
    #[error("nf exceeded the step limit of {0}")]
    StepLimit(usize),
    #[error("invalid proximity threshold {0}, expected a number in [0, 1]")]
    InvalidThreshold(String),
    #[error(transparent)]
    Match(#[from] MatchError),
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum number of rewrite steps along one `nf` derivation.
    pub nf_step_limit: Option<usize>,
    /// Print every selected literal and tried clause to stderr.
    pub trace: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Proximity(Degree),
}

impl Mode {
    fn threshold(self) -> Degree {
        match self {
            Mode::Exact => Degree::ONE,
            Mode::Proximity(l) => l,
        }
    }
}

/// Bindings of the query variables, in order of first occurrence, and the
/// approximation degree of the derivation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Answer {
    pub bindings: Vec<(VarName, Binding)>,
    pub degree: Degree,
}

impl Answer {
    pub fn substitution(&self) -> Substitution {
        let mut s = Substitution::new();
        for (v, b) in &self.bindings {
            s.bind_unchecked(v.clone(), b.clone());
        }
        s
    }
}

pub(crate) type Stream<'a, T> = Box<dyn Iterator<Item = Result<T, EngineError>> + 'a>;
type Solutions<'a> = Stream<'a, (Substitution, Degree)>;

pub(crate) fn one<'a, T: 'a>(x: T) -> Stream<'a, T> {
    Box::new(std::iter::once(Ok(x)))
}

pub(crate) fn none<'a, T: 'a>() -> Stream<'a, T> {
    Box::new(std::iter::empty())
}

pub(crate) fn fail<'a, T: 'a>(e: impl Into<EngineError>) -> Stream<'a, T> {
    Box::new(std::iter::once(Err(e.into())))
}

pub(crate) fn bind<'a, T: 'a, U: 'a>(
    s: Stream<'a, T>,
    mut f: impl FnMut(T) -> Stream<'a, U> + 'a,
) -> Stream<'a, U> {
    Box::new(s.flat_map(move |r| match r {
        Ok(t) => f(t),
        Err(e) => fail(e),
    }))
}

/// Builds the stream on first demand.
pub(crate) fn lazy<'a, T: 'a>(f: impl FnOnce() -> Stream<'a, T> + 'a) -> Stream<'a, T> {
    Box::new(std::iter::once_with(f).flatten())
}

/// Query evaluator over a loaded program and a proximity relation.
#[derive(Clone, Copy)]
pub struct Engine<'a> {
    db: &'a ClauseDb,
    rel: &'a ProximityRelation,
    config: EngineConfig,
}

impl<'a> Engine<'a> {
    pub fn new(db: &'a ClauseDb, rel: &'a ProximityRelation, config: EngineConfig) -> Self {
        Engine { db, rel, config }
    }

    pub fn db(&self) -> &'a ClauseDb {
        self.db
    }

    /// Lazily enumerates the answers of a query. Exact mode unless the query
    /// carries a threshold.
    pub fn solve(self, query: &Query) -> Answers<'a> {
        let mode = match query.threshold {
            Some(l) => Mode::Proximity(l),
            None => Mode::Exact,
        };
        self.solve_goal(&query.goal, mode, query.vars())
    }

    /// Like [`Engine::solve`] for a bare conjunction.
    pub fn solve_goal(self, goal: &[Literal], mode: Mode, vars: Vec<VarName>) -> Answers<'a> {
        let lits: Arc<[Literal]> = goal.into();
        Answers {
            inner: self.solve_conj(lits, 0, Substitution::new(), Degree::ONE, mode),
            vars,
            done: false,
        }
    }

    /// Every output of the ground strategy `st` on the ground input, with
    /// its degree. This is the relation the strategy denotes.
    pub fn outputs(
        self,
        st: &Term,
        input: &Sequence,
        mode: Mode,
    ) -> impl Iterator<Item = Result<(Sequence, Degree), EngineError>> + 'a {
        self.strategy_outputs(st.clone(), input.clone(), mode)
    }

    fn trace(&self, msg: impl FnOnce() -> String) {
        if self.config.trace {
            eprintln!("[trace] {}", msg());
        }
    }

    fn solve_conj(
        self,
        lits: Arc<[Literal]>,
        i: usize,
        sigma: Substitution,
        d: Degree,
        mode: Mode,
    ) -> Solutions<'a> {
        if i == lits.len() {
            return one((sigma, d));
        }
        let lit = lits[i].clone();
        bind(self.solve_lit(lit, sigma, d, mode), move |(s, d)| {
            self.solve_conj(lits.clone(), i + 1, s, d, mode)
        })
    }

    fn solve_lit(self, lit: Literal, sigma: Substitution, d: Degree, mode: Mode) -> Solutions<'a> {
        match lit {
            Literal::RhoPos(a) => self.solve_rho(a, sigma, d, mode),
            Literal::RhoNeg(a) => {
                let positive = Literal::RhoPos(a);
                self.negate(positive, sigma, d, mode)
            }
            Literal::NegPred(inner) => self.negate(*inner, sigma, d, mode),
            Literal::Pred(t) => self.solve_pred(t, sigma, d, mode),
        }
    }

    /// Negation as failure: succeeds once, without new bindings, iff the
    /// literal has no solution.
    fn negate(self, lit: Literal, sigma: Substitution, d: Degree, mode: Mode) -> Solutions<'a> {
        lazy(
            move || match self.solve_lit(lit, sigma.clone(), Degree::ONE, mode).next() {
                None => one((sigma, d)),
                Some(Ok(_)) => none(),
                Some(Err(e)) => fail(e),
            },
        )
    }

    fn solve_rho(self, a: RhoAtom, sigma: Substitution, d: Degree, mode: Mode) -> Solutions<'a> {
        let st = match sigma.apply_term(&a.strategy) {
            Ok(t) => t,
            Err(e) => return fail(e),
        };
        let lhs = sigma.apply_seq(&a.lhs);
        let rhs = sigma.apply_seq(&a.rhs);
        let inst = RhoAtom {
            strategy: st,
            lhs,
            rhs,
        };
        if !inst.strategy.is_ground() || !inst.lhs.is_ground() {
            return fail(EngineError::NonGroundRedex(inst.to_string()));
        }
        self.trace(|| format!("call {inst}"));
        let RhoAtom {
            strategy: st,
            lhs,
            rhs,
        } = inst;
        let name = st
            .head_symbol()
            .map(|s| s.name().to_owned())
            .unwrap_or_default();
        let args = st.args().cloned().unwrap_or_default();
        match (name.as_str(), args.len()) {
            ("id", 0) => self.continue_match(sigma, d, rhs, lhs, Degree::ONE, mode),
            ("prox", 0 | 1) => {
                let threshold = match args.items().first() {
                    Some(t) => match builtins::threshold_arg(t) {
                        Ok(l) => l,
                        Err(e) => return fail(e),
                    },
                    None => mode.threshold(),
                };
                self.continue_match(sigma, d, rhs, lhs, threshold, mode)
            }
            _ => {
                let cont = mode.threshold();
                bind(self.strategy_outputs(st, lhs, mode), move |(out, d1)| {
                    self.continue_match(sigma.clone(), d.min(d1), rhs.clone(), out, cont, mode)
                })
            }
        }
    }

    /// Matches the instantiated right-hand side against an output. Symbols
    /// are compared up to `threshold`; threshold 1 is syntactic equality.
    fn continue_match(
        self,
        sigma: Substitution,
        d: Degree,
        pattern: Sequence,
        subject: Sequence,
        threshold: Degree,
        mode: Mode,
    ) -> Solutions<'a> {
        let cmp = Proximal {
            relation: self.rel,
            threshold,
        };
        let matches = match match_hedge_with(&pattern, &subject, Substitution::new(), cmp) {
            Ok(m) => m,
            Err(e) => return fail(e),
        };
        let floor = mode.threshold();
        Box::new(matches.filter_map(move |m| {
            let degree = d.min(m.degree);
            if mode != Mode::Exact && degree < floor {
                return None;
            }
            let mut s = sigma.clone();
            for (v, b) in m.subst.iter() {
                s.bind_unchecked(v.clone(), b.clone());
            }
            Some(Ok((s, degree)))
        }))
    }

    fn solve_pred(self, t: Term, sigma: Substitution, d: Degree, mode: Mode) -> Solutions<'a> {
        let t = match sigma.apply_term(&t) {
            Ok(t) => t,
            Err(e) => return fail(e),
        };
        if !t.is_ground() {
            return fail(EngineError::NonGroundRedex(t.to_string()));
        }
        self.trace(|| format!("call {t}"));
        let Some(sym) = t.head_symbol().cloned() else {
            return fail(EngineError::NonGroundRedex(t.to_string()));
        };
        let args = t.args().cloned().unwrap_or_default();
        if BUILTIN_PREDICATES.contains(&sym.name()) && sym.name() != "not" {
            return match builtins::compare(&sym, &args) {
                Ok(true) => one((sigma, d)),
                Ok(false) => none(),
                Err(e) => fail(e),
            };
        }
        if !self.db.defines_predicate(&sym) {
            return fail(EngineError::UnknownPredicate {
                name: sym.to_string(),
                arity: args.len(),
            });
        }
        let rules = self.db.pred_rules();
        Box::new(
            rules
                .iter()
                .filter(move |r| db::head_admits(&r.head, &sym))
                .flat_map(move |rule| {
                    self.trace(|| format!("try clause {}: {}", rule.source_index + 1, rule.head));
                    let heads = match match_term(&rule.head, &t) {
                        Ok(m) => m,
                        Err(e) => return fail(e),
                    };
                    let sigma = sigma.clone();
                    bind(Box::new(heads.map(Ok)), move |theta| {
                        let sigma = sigma.clone();
                        Box::new(
                            self.solve_conj(rule.body.clone(), 0, theta, Degree::ONE, mode)
                                .map(move |r| r.map(|(_, d2)| (sigma.clone(), d.min(d2)))),
                        )
                    })
                }),
        )
    }

    /// Outputs of a user-defined strategy: every clause whose head matches
    /// (strategy, input) exactly, with its body solved and its right-hand
    /// side instantiated.
    fn rule_outputs(self, st: Term, input: Sequence, mode: Mode) -> Stream<'a, (Sequence, Degree)> {
        let Some(sym) = st.head_symbol().cloned() else {
            return fail(EngineError::NonGroundRedex(st.to_string()));
        };
        if !self.db.defines_strategy(&sym) {
            let arity = st.args().map_or(0, Sequence::len);
            return fail(EngineError::UnknownStrategy {
                name: sym.to_string(),
                arity,
            });
        }
        let rules = self.db.rho_rules();
        Box::new(
            rules
                .iter()
                .filter(move |r| db::head_admits(&r.head.strategy, &sym))
                .flat_map(move |rule| {
                    let heads = match match_term(&rule.head.strategy, &st) {
                        Ok(m) => m,
                        Err(e) => return fail(e),
                    };
                    self.trace(|| format!("try clause {}: {}", rule.source_index + 1, rule.head));
                    let input = input.clone();
                    bind(Box::new(heads.map(Ok)), move |sigma| {
                        let lhs = match match_hedge_with(
                            &rule.head.lhs,
                            &input,
                            sigma,
                            crate::matching::Exact,
                        ) {
                            Ok(m) => m,
                            Err(e) => return fail(e),
                        };
                        bind(Box::new(lhs.map(|m| Ok(m.subst))), move |theta| {
                            bind(
                                self.solve_conj(rule.body.clone(), 0, theta, Degree::ONE, mode),
                                move |(theta, d)| {
                                    let out = theta.apply_seq(&rule.head.rhs);
                                    if !out.is_ground() {
                                        return fail(EngineError::NonGroundRedex(format!(
                                            "{} (right-hand side of clause {})",
                                            out,
                                            rule.source_index + 1
                                        )));
                                    }
                                    one((out, d))
                                },
                            )
                        })
                    })
                }),
        )
    }
}

/// Answer stream of a query. Stops after the first error.
pub struct Answers<'a> {
    inner: Solutions<'a>,
    vars: Vec<VarName>,
    done: bool,
}

impl Iterator for Answers<'_> {
    type Item = Result<Answer, EngineError>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.done {
            return None;
        }
        match self.inner.next() {
            Some(Ok((sigma, degree))) => {
                let bindings = self
                    .vars
                    .iter()
                    .filter_map(|v| sigma.get(v).map(|b| (v.clone(), b.clone())))
                    .collect();
                Some(Ok(Answer { bindings, degree }))
            }
            Some(Err(e)) => {
                self.done = true;
                Some(Err(e))
            }
            None => {
                self.done = true;
                None
            }
        }
    }
}
