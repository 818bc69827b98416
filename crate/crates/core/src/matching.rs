//! Finitary matching of patterns with individual, sequence, function and
//! context variables against ground subjects.
//!
//! The search is a depth-first walk over explicit choice points, so matchers
//! are produced lazily and in a fixed order:
//!
//! * items at either end of a pattern sequence that are not unbound sequence
//!   variables are matched first, left to right;
//! * when both ends are unbound sequence variables one of them is split off,
//!   shortest binding first. Splits alternate between the two ends, starting
//!   at the left, so the outermost sequence variables are chosen before the
//!   ones between them;
//! * context variables try positions in leftmost-outermost (preorder) order.
//!
//! Repeated variables are checked for consistency against their first
//! binding, always by exact equality.

use thiserror::Error;

use crate::degree::Degree;
use crate::subst::{Binding, Substitution};
use crate::term::{enumerate_contexts, Head, Sequence, Symbol, Term, VarName};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("pattern contains `hole` outside a context: {0}")]
    HoleInPattern(String),
    #[error("subject is not ground and hole-free: {0}")]
    InvalidSubject(String),
    #[error("sequence variable {0} appears in term position")]
    MisplacedSequenceVariable(String),
}

/// How a pattern symbol is compared with a subject symbol.
pub trait SymbolCompare {
    /// The degree to which `pattern` stands for `subject`, or `None` when
    /// they do not match.
    fn compare(&self, pattern: &Symbol, subject: &Symbol) -> Option<Degree>;
}

/// Syntactic equality.
#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl SymbolCompare for Exact {
    fn compare(&self, pattern: &Symbol, subject: &Symbol) -> Option<Degree> {
        (pattern == subject).then_some(Degree::ONE)
    }
}

impl<C: SymbolCompare + ?Sized> SymbolCompare for &C {
    fn compare(&self, pattern: &Symbol, subject: &Symbol) -> Option<Degree> {
        (**self).compare(pattern, subject)
    }
}

/// A matcher together with the minimum degree of the symbol comparisons it
/// relied on. Exact matches have degree 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreedMatcher {
    pub subst: Substitution,
    pub degree: Degree,
}

#[derive(Clone)]
enum Task {
    Hedge {
        pattern: Sequence,
        p: (usize, usize),
        subject: Sequence,
        s: (usize, usize),
        from_left: bool,
    },
    Term {
        pattern: Term,
        subject: Term,
    },
}

#[derive(Clone)]
struct State {
    // Stack: the next task is at the end.
    tasks: Vec<Task>,
    subst: Substitution,
    degree: Degree,
}

/// Lazy stream of matchers.
pub struct Matches<C> {
    stack: Vec<State>,
    cmp: C,
}

impl<C: SymbolCompare> Iterator for Matches<C> {
    type Item = DegreedMatcher;

    fn next(&mut self) -> Option<DegreedMatcher> {
        while let Some(state) = self.stack.pop() {
            if let Some(found) = self.run(state) {
                return Some(found);
            }
        }
        None
    }
}

/// Exact matchers, without degrees.
pub struct MatcherStream(Matches<Exact>);

impl Iterator for MatcherStream {
    type Item = Substitution;

    fn next(&mut self) -> Option<Substitution> {
        self.0.next().map(|m| m.subst)
    }
}

fn check_pattern_term(t: &Term, in_term_position: bool) -> Result<(), MatchError> {
    match t {
        Term::Hole => Err(MatchError::HoleInPattern(t.to_string())),
        Term::SeqVar(v) if in_term_position => {
            Err(MatchError::MisplacedSequenceVariable(v.to_string()))
        }
        Term::Var(_) | Term::SeqVar(_) => Ok(()),
        Term::App(_, args) => args.iter().try_for_each(|a| check_pattern_term(a, false)),
        Term::CtxApp(_, arg) => check_pattern_term(arg, true),
    }
}

fn check_subject(s: &Sequence) -> Result<(), MatchError> {
    if !s.is_ground() || s.hole_count() != 0 {
        return Err(MatchError::InvalidSubject(s.to_string()));
    }
    Ok(())
}

/// Matchers of `pattern` against the ground `subject`, extending `initial`
/// and comparing symbols with `cmp`.
pub fn match_hedge_with<C: SymbolCompare>(
    pattern: &Sequence,
    subject: &Sequence,
    initial: Substitution,
    cmp: C,
) -> Result<Matches<C>, MatchError> {
    pattern
        .iter()
        .try_for_each(|t| check_pattern_term(t, false))?;
    check_subject(subject)?;
    let task = Task::Hedge {
        pattern: pattern.clone(),
        p: (0, pattern.len()),
        subject: subject.clone(),
        s: (0, subject.len()),
        from_left: true,
    };
    Ok(Matches {
        stack: vec![State {
            tasks: vec![task],
            subst: initial,
            degree: Degree::ONE,
        }],
        cmp,
    })
}

/// Term-level variant of [`match_hedge_with`].
pub fn match_term_with<C: SymbolCompare>(
    pattern: &Term,
    subject: &Term,
    initial: Substitution,
    cmp: C,
) -> Result<Matches<C>, MatchError> {
    check_pattern_term(pattern, true)?;
    check_subject(&Sequence::unit(subject.clone()))?;
    let task = Task::Term {
        pattern: pattern.clone(),
        subject: subject.clone(),
    };
    Ok(Matches {
        stack: vec![State {
            tasks: vec![task],
            subst: initial,
            degree: Degree::ONE,
        }],
        cmp,
    })
}

/// All matchers σ with σ(pattern) = subject, in canonical order.
pub fn match_hedge(pattern: &Sequence, subject: &Sequence) -> Result<MatcherStream, MatchError> {
    match_hedge_with(pattern, subject, Substitution::new(), Exact).map(MatcherStream)
}

pub fn match_term(pattern: &Term, subject: &Term) -> Result<MatcherStream, MatchError> {
    match_term_with(pattern, subject, Substitution::new(), Exact).map(MatcherStream)
}

fn bind_term(subst: &mut Substitution, v: &VarName, t: &Term) -> bool {
    match subst.get(v) {
        Some(Binding::Term(b)) => b == t,
        Some(_) => false,
        None => {
            subst.bind_unchecked(v.clone(), Binding::Term(t.clone()));
            true
        }
    }
}

fn bind_head(subst: &mut Substitution, v: &VarName, sym: &Symbol) -> bool {
    match subst.get(v) {
        Some(Binding::Head(Head::Sym(b))) => b == sym,
        Some(_) => false,
        None => {
            subst.bind_unchecked(v.clone(), Binding::Head(Head::Sym(sym.clone())));
            true
        }
    }
}

impl<C: SymbolCompare> Matches<C> {
    /// Runs deterministic steps of `st`. Returns a matcher when every task is
    /// discharged; returns `None` on failure or after pushing alternatives.
    fn run(&mut self, mut st: State) -> Option<DegreedMatcher> {
        loop {
            let Some(task) = st.tasks.pop() else {
                return Some(DegreedMatcher {
                    subst: st.subst,
                    degree: st.degree,
                });
            };
            match task {
                Task::Term { pattern, subject } => {
                    if !self.term_step(&mut st, pattern, subject) {
                        return None;
                    }
                }
                Task::Hedge {
                    pattern,
                    p,
                    subject,
                    s,
                    from_left,
                } => {
                    if !self.hedge_step(&mut st, pattern, p, subject, s, from_left) {
                        return None;
                    }
                }
            }
        }
    }

    fn term_step(&mut self, st: &mut State, pattern: Term, subject: Term) -> bool {
        match pattern {
            Term::Var(v) => bind_term(&mut st.subst, &v, &subject),
            Term::App(head, pargs) => {
                let Term::App(Head::Sym(ssym), sargs) = &subject else {
                    return false;
                };
                if pargs.len() != sargs.len() && !pargs.iter().any(Term::is_seq_var) {
                    return false;
                }
                match &head {
                    Head::Sym(psym) => match self.cmp.compare(psym, ssym) {
                        Some(d) => st.degree = st.degree.min(d),
                        None => return false,
                    },
                    Head::Var(f) => {
                        if !bind_head(&mut st.subst, f, ssym) {
                            return false;
                        }
                    }
                }
                st.tasks.push(Task::Hedge {
                    p: (0, pargs.len()),
                    pattern: pargs,
                    s: (0, sargs.len()),
                    subject: sargs.clone(),
                    from_left: true,
                });
                true
            }
            Term::CtxApp(c, inner) => {
                if let Some(bound) = st.subst.get(&c) {
                    let Binding::Ctx(ctx) = bound else {
                        return false;
                    };
                    let Some(plugged) = ctx.unplug(&subject) else {
                        return false;
                    };
                    st.tasks.push(Task::Term {
                        pattern: (*inner).clone(),
                        subject: plugged,
                    });
                    return true;
                }
                let alternatives = enumerate_contexts(&subject);
                for (ctx, sub) in alternatives.into_iter().rev() {
                    let mut alt = st.clone();
                    alt.subst.bind_unchecked(c.clone(), Binding::Ctx(ctx));
                    alt.tasks.push(Task::Term {
                        pattern: (*inner).clone(),
                        subject: sub,
                    });
                    self.stack.push(alt);
                }
                false
            }
            // Rejected when the search starts.
            Term::Hole | Term::SeqVar(_) => false,
        }
    }

    fn hedge_step(
        &mut self,
        st: &mut State,
        pattern: Sequence,
        (mut plo, mut phi): (usize, usize),
        subject: Sequence,
        (mut slo, mut shi): (usize, usize),
        from_left: bool,
    ) -> bool {
        let pitems = pattern.items();
        let sitems = subject.items();
        let mut stripped: Vec<(usize, Task)> = Vec::new();

        // Peel everything that is not an unbound sequence variable off both ends.
        while plo < phi {
            match &pitems[plo] {
                Term::SeqVar(v) => match st.subst.get(v) {
                    Some(Binding::Seq(b)) => {
                        if shi - slo < b.len() || sitems[slo..slo + b.len()] != *b.items() {
                            return false;
                        }
                        slo += b.len();
                    }
                    Some(_) => return false,
                    None => break,
                },
                t => {
                    if slo == shi {
                        return false;
                    }
                    stripped.push((
                        plo,
                        Task::Term {
                            pattern: t.clone(),
                            subject: sitems[slo].clone(),
                        },
                    ));
                    slo += 1;
                }
            }
            plo += 1;
        }
        while plo < phi {
            match &pitems[phi - 1] {
                Term::SeqVar(v) => match st.subst.get(v) {
                    Some(Binding::Seq(b)) => {
                        if shi - slo < b.len() || sitems[shi - b.len()..shi] != *b.items() {
                            return false;
                        }
                        shi -= b.len();
                    }
                    Some(_) => return false,
                    None => break,
                },
                t => {
                    if slo == shi {
                        return false;
                    }
                    stripped.push((
                        phi - 1,
                        Task::Term {
                            pattern: t.clone(),
                            subject: sitems[shi - 1].clone(),
                        },
                    ));
                    shi -= 1;
                }
            }
            phi -= 1;
        }

        if !stripped.is_empty() {
            // Match the peeled items (in pattern order) before splitting.
            st.tasks.push(Task::Hedge {
                pattern,
                p: (plo, phi),
                subject,
                s: (slo, shi),
                from_left,
            });
            stripped.sort_by_key(|(pos, _)| std::cmp::Reverse(*pos));
            st.tasks.extend(stripped.into_iter().map(|(_, t)| t));
            return true;
        }

        match phi - plo {
            0 => slo == shi,
            1 => {
                let Term::SeqVar(v) = &pitems[plo] else {
                    unreachable!("only unbound sequence variables remain")
                };
                let seg = Sequence::from(sitems[slo..shi].to_vec());
                st.subst.bind_unchecked(v.clone(), Binding::Seq(seg));
                true
            }
            _ => {
                let n = shi - slo;
                let split_at = if from_left { plo } else { phi - 1 };
                let Term::SeqVar(v) = &pitems[split_at] else {
                    unreachable!("both ends are sequence variables")
                };
                // Material the rest of the pattern needs at minimum.
                let reserved: usize = pitems[plo..phi]
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| plo + i != split_at)
                    .map(|(_, t)| match t {
                        Term::SeqVar(w) => match st.subst.get(w) {
                            Some(Binding::Seq(b)) => b.len(),
                            _ => 0,
                        },
                        _ => 1,
                    })
                    .sum();
                if reserved > n {
                    return false;
                }
                for k in (0..=n - reserved).rev() {
                    let mut alt = st.clone();
                    let (seg, p, s) = if from_left {
                        (
                            sitems[slo..slo + k].to_vec(),
                            (plo + 1, phi),
                            (slo + k, shi),
                        )
                    } else {
                        (
                            sitems[shi - k..shi].to_vec(),
                            (plo, phi - 1),
                            (slo, shi - k),
                        )
                    };
                    alt.subst
                        .bind_unchecked(v.clone(), Binding::Seq(Sequence::from(seg)));
                    alt.tasks.push(Task::Hedge {
                        pattern: pattern.clone(),
                        p,
                        subject: subject.clone(),
                        s,
                        from_left: !from_left,
                    });
                    self.stack.push(alt);
                }
                false
            }
        }
    }
}
