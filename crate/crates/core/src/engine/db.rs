use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::syntax::{Clause, Literal, RhoAtom, SourceProgram};
use crate::term::{Head, Sequence, Symbol, Term, VarKind, VarName};

/// Strategy names handled by the engine itself.
pub const BUILTIN_STRATEGIES: &[&str] = &[
    "id",
    "prox",
    "compose",
    "choice",
    "first_one",
    "first_all",
    "map",
    "nf",
];
/// Predicate names handled by the engine itself.
pub const BUILTIN_PREDICATES: &[&str] = &["not", "=<", "<", ">", ">="];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("clause {index}: `{name}` is a built-in and cannot be redefined")]
    DuplicateBuiltinName { index: usize, name: String },
    #[error("clause {index}: the head strategy must be a compound term")]
    InvalidHead { index: usize },
}

#[derive(Debug, Clone)]
pub struct RhoRule {
    pub head: RhoAtom,
    pub body: Arc<[Literal]>,
    /// Position of the originating clause in the source program.
    pub source_index: usize,
}

#[derive(Debug, Clone)]
pub struct PredRule {
    pub head: Term,
    pub body: Arc<[Literal]>,
    pub source_index: usize,
}

impl fmt::Display for RhoRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = Clause::Rho {
            head: self.head.clone(),
            body: self.body.to_vec(),
        };
        write!(f, "{c}")
    }
}

/// Loaded program: ρ-rules and predicate rules in source order, with
/// strategy abbreviations already expanded.
#[derive(Debug, Clone, Default)]
pub struct ClauseDb {
    rho: Vec<RhoRule>,
    preds: Vec<PredRule>,
    warnings: Vec<String>,
}

fn head_symbol(t: &Term) -> Option<&Symbol> {
    match t {
        Term::App(Head::Sym(s), _) => Some(s),
        _ => None,
    }
}

/// Whether a clause head could match a call headed by `sym`. Heads that
/// start with a variable are tried for every call.
pub(crate) fn head_admits(head: &Term, sym: &Symbol) -> bool {
    head_symbol(head).is_none_or(|s| s == sym)
}

impl ClauseDb {
    pub fn rho_rules(&self) -> &[RhoRule] {
        &self.rho
    }

    pub fn pred_rules(&self) -> &[PredRule] {
        &self.preds
    }

    /// Mode lint findings collected at load time.
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn defines_strategy(&self, sym: &Symbol) -> bool {
        self.rho.iter().any(|r| head_admits(&r.head.strategy, sym))
    }

    pub fn defines_predicate(&self, sym: &Symbol) -> bool {
        self.preds.iter().any(|r| head_admits(&r.head, sym))
    }

    /// Appends the clauses of another program.
    pub fn extend(&mut self, src: &SourceProgram) -> Result<(), LoadError> {
        let offset = self.rho.len() + self.preds.len();
        let more = load_program(src)?;
        self.rho.extend(more.rho.into_iter().map(|mut r| {
            r.source_index += offset;
            r
        }));
        self.preds.extend(more.preds.into_iter().map(|mut r| {
            r.source_index += offset;
            r
        }));
        self.warnings.extend(more.warnings);
        Ok(())
    }
}

/// Builds a clause database, expanding `L := R.` into
/// `L :: s_In ==> s_Out :- R :: s_In ==> s_Out.` with fresh variables.
pub fn load_program(src: &SourceProgram) -> Result<ClauseDb, LoadError> {
    let mut db = ClauseDb::default();
    for (index, clause) in src.clauses.iter().enumerate() {
        match clause {
            Clause::Rho { head, body } => {
                check_strategy_head(index, &head.strategy)?;
                db.rho.push(RhoRule {
                    head: head.clone(),
                    body: body.clone().into(),
                    source_index: index,
                });
            }
            Clause::Abbrev {
                strategy,
                expansion,
            } => {
                check_strategy_head(index, strategy)?;
                let input =
                    Sequence::unit(Term::SeqVar(VarName::fresh(VarKind::Sequence, "In", 1)));
                let output =
                    Sequence::unit(Term::SeqVar(VarName::fresh(VarKind::Sequence, "Out", 1)));
                let head = RhoAtom {
                    strategy: strategy.clone(),
                    lhs: input.clone(),
                    rhs: output.clone(),
                };
                let call = RhoAtom {
                    strategy: expansion.clone(),
                    lhs: input,
                    rhs: output,
                };
                db.rho.push(RhoRule {
                    head,
                    body: vec![Literal::RhoPos(call)].into(),
                    source_index: index,
                });
            }
            Clause::Pred { head, body } => {
                if let Some(s) = head_symbol(head) {
                    if BUILTIN_PREDICATES.contains(&s.name()) {
                        return Err(LoadError::DuplicateBuiltinName {
                            index,
                            name: s.to_string(),
                        });
                    }
                }
                db.preds.push(PredRule {
                    head: head.clone(),
                    body: body.clone().into(),
                    source_index: index,
                });
            }
        }
    }
    for r in &db.rho {
        lint_rho_rule(r, &mut db.warnings);
    }
    Ok(db)
}

fn check_strategy_head(index: usize, strategy: &Term) -> Result<(), LoadError> {
    match strategy {
        Term::App(Head::Sym(s), _) if BUILTIN_STRATEGIES.contains(&s.name()) => {
            Err(LoadError::DuplicateBuiltinName {
                index,
                name: s.to_string(),
            })
        }
        Term::App(..) | Term::Var(_) => Ok(()),
        _ => Err(LoadError::InvalidHead { index }),
    }
}

/// Approximates well-modedness: walks the body left to right and reports
/// variables that are used before anything could have bound them.
fn lint_rho_rule(rule: &RhoRule, warnings: &mut Vec<String>) {
    let mut bound: BTreeSet<VarName> = rule.head.strategy.free_vars();
    bound.extend(rule.head.lhs.free_vars());
    let mut report = |what: &str, vars: Vec<VarName>| {
        if !vars.is_empty() {
            let names: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
            warnings.push(format!(
                "clause {}: {what} uses {} before it is bound",
                rule.source_index + 1,
                names.join(", ")
            ));
        }
    };
    for lit in rule.body.iter() {
        match lit {
            Literal::RhoPos(a) | Literal::RhoNeg(a) => {
                let mut needed = a.strategy.vars();
                needed.extend(a.lhs.vars());
                needed.retain(|v| !bound.contains(v));
                report(&format!("`{lit}`"), needed);
                if matches!(lit, Literal::RhoPos(_)) {
                    bound.extend(a.rhs.vars());
                }
            }
            Literal::Pred(_) | Literal::NegPred(_) => {
                let mut needed = lit.vars();
                needed.retain(|v| !bound.contains(v));
                report(&format!("`{lit}`"), needed);
            }
        }
    }
    let mut rhs = rule.head.rhs.vars();
    rhs.retain(|v| !bound.contains(v));
    report("the right-hand side", rhs);
}
