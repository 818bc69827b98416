//! Symbol proximity relations and proximity-based matching.
//!
//! A relation is reflexive and symmetric but not necessarily transitive.
//! Term proximity is the minimum over corresponding symbol positions, and
//! proximity matching reuses the exact matcher with a thresholded symbol
//! comparison: variables still bind verbatim subject material.

use std::collections::HashMap;

use thiserror::Error;

use crate::degree::Degree;
use crate::matching::{match_hedge_with, MatchError, Matches, SymbolCompare};
use crate::subst::Substitution;
use crate::syntax::ProximityDecl;
use crate::term::{Head, Sequence, Symbol, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProximityError {
    #[error("conflicting degrees {first} and {second} declared for {left} ~ {right}")]
    Conflict {
        left: String,
        right: String,
        first: Degree,
        second: Degree,
    },
    #[error("degree of {left} ~ {right} must lie in (0, 1), got {degree}")]
    DegreeRange {
        left: String,
        right: String,
        degree: Degree,
    },
}

#[derive(Clone, Debug, Default)]
pub struct ProximityRelation {
    pairs: HashMap<(Symbol, Symbol), Degree>,
}

impl ProximityRelation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_decls(decls: &[ProximityDecl]) -> Result<Self, ProximityError> {
        let mut rel = ProximityRelation::new();
        for d in decls {
            rel.insert(d.left.clone(), d.right.clone(), d.degree)?;
        }
        Ok(rel)
    }

    /// Declares `a ~ b` (and so `b ~ a`) with the given degree. Re-declaring
    /// a pair with the same degree is allowed.
    pub fn insert(&mut self, a: Symbol, b: Symbol, degree: Degree) -> Result<(), ProximityError> {
        if a == b {
            if degree.is_one() {
                return Ok(());
            }
            return Err(ProximityError::DegreeRange {
                left: a.to_string(),
                right: b.to_string(),
                degree,
            });
        }
        if degree == Degree::ZERO || degree.is_one() {
            return Err(ProximityError::DegreeRange {
                left: a.to_string(),
                right: b.to_string(),
                degree,
            });
        }
        let key = ordered(a, b);
        if let Some(&old) = self.pairs.get(&key) {
            if old != degree {
                return Err(ProximityError::Conflict {
                    left: key.0.to_string(),
                    right: key.1.to_string(),
                    first: old,
                    second: degree,
                });
            }
        }
        self.pairs.insert(key, degree);
        Ok(())
    }

    /// 1 for identical symbols, the declared degree for related ones, 0 otherwise.
    pub fn degree(&self, a: &Symbol, b: &Symbol) -> Degree {
        if a == b {
            return Degree::ONE;
        }
        self.pairs
            .get(&ordered(a.clone(), b.clone()))
            .copied()
            .unwrap_or(Degree::ZERO)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn ordered(a: Symbol, b: Symbol) -> (Symbol, Symbol) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Proximity of two ground terms: the minimum symbol degree over
/// corresponding positions, or 0 when their shapes differ.
pub fn term_proximity(rel: &ProximityRelation, t1: &Term, t2: &Term) -> Degree {
    match (t1, t2) {
        (Term::App(Head::Sym(f), a1), Term::App(Head::Sym(g), a2)) if a1.len() == a2.len() => a1
            .iter()
            .zip(a2.iter())
            .fold(rel.degree(f, g), |d, (x, y)| {
                if d == Degree::ZERO {
                    d
                } else {
                    d.min(term_proximity(rel, x, y))
                }
            }),
        _ => Degree::ZERO,
    }
}

/// Symbol comparison that accepts proximal symbols with degree at least λ.
#[derive(Clone, Copy, Debug)]
pub struct Proximal<'a> {
    pub relation: &'a ProximityRelation,
    pub threshold: Degree,
}

impl SymbolCompare for Proximal<'_> {
    fn compare(&self, pattern: &Symbol, subject: &Symbol) -> Option<Degree> {
        let d = self.relation.degree(pattern, subject);
        (d > Degree::ZERO && d >= self.threshold).then_some(d)
    }
}

/// Matchers σ such that σ(pattern) is proximal to `subject` with degree ≥ λ.
pub fn prox_match_hedge<'a>(
    rel: &'a ProximityRelation,
    pattern: &Sequence,
    subject: &Sequence,
    threshold: Degree,
) -> Result<Matches<Proximal<'a>>, MatchError> {
    prox_match_hedge_from(rel, pattern, subject, threshold, Substitution::new())
}

pub fn prox_match_hedge_from<'a>(
    rel: &'a ProximityRelation,
    pattern: &Sequence,
    subject: &Sequence,
    threshold: Degree,
    initial: Substitution,
) -> Result<Matches<Proximal<'a>>, MatchError> {
    match_hedge_with(
        pattern,
        subject,
        initial,
        Proximal {
            relation: rel,
            threshold,
        },
    )
}
