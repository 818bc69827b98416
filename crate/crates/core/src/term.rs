//! Unranked terms, flattened sequences and contexts.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::ModelError;

/// Reserved spelling of the context hole.
pub const HOLE: &str = "hole";
/// Reserved spelling of the empty sequence.
pub const EPS: &str = "eps";

/// A function symbol. Symbols are unranked: the same symbol may head terms
/// with any number of arguments.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Result<Self, ModelError> {
        if name.is_empty() {
            return Err(ModelError::InvalidSymbol(name.to_string()));
        }
        if name == HOLE || name == EPS || VarKind::from_prefix(name).is_some() {
            return Err(ModelError::InvalidSymbol(name.to_string()));
        }
        Ok(Symbol(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    /// Decimal value of a numeric symbol such as `3` or `0.25`.
    pub fn numeric_value(&self) -> Option<f64> {
        let s = self.name();
        let digits = s.strip_prefix('-').unwrap_or(s);
        let mut parts = digits.splitn(2, '.');
        let int = parts.next()?;
        let frac = parts.next();
        let all_digits = |p: &str| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit());
        if !all_digits(int) || frac.is_some_and(|f| !all_digits(f)) {
            return None;
        }
        s.parse().ok()
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum VarKind {
    Individual,
    Sequence,
    Function,
    Context,
}

impl VarKind {
    pub fn prefix(self) -> &'static str {
        match self {
            VarKind::Individual => "i_",
            VarKind::Sequence => "s_",
            VarKind::Function => "f_",
            VarKind::Context => "c_",
        }
    }

    /// Kind announced by an identifier's prefix, if any.
    pub fn from_prefix(ident: &str) -> Option<VarKind> {
        [
            VarKind::Individual,
            VarKind::Sequence,
            VarKind::Function,
            VarKind::Context,
        ]
        .into_iter()
        .find(|k| ident.starts_with(k.prefix()))
    }
}

/// A variable: its kind plus the identifier after the kind prefix.
///
/// `fresh` is zero for variables written in source text. Variables invented
/// by the interpreter carry a nonzero tag so they never collide with user
/// variables of the same base name.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarName {
    kind: VarKind,
    base: Arc<str>,
    fresh: u32,
}

impl VarName {
    pub fn new(kind: VarKind, base: &str) -> Result<Self, ModelError> {
        let valid = !base.is_empty() && base.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(ModelError::InvalidVariable(format!(
                "{}{}",
                kind.prefix(),
                base
            )));
        }
        Ok(VarName {
            kind,
            base: Arc::from(base),
            fresh: 0,
        })
    }

    /// Parses a full identifier such as `s_X`.
    pub fn parse(ident: &str) -> Result<Self, ModelError> {
        let kind = VarKind::from_prefix(ident)
            .ok_or_else(|| ModelError::InvalidVariable(ident.to_string()))?;
        VarName::new(kind, &ident[2..])
    }

    pub(crate) fn fresh(kind: VarKind, base: &str, tag: u32) -> Self {
        VarName {
            kind,
            base: Arc::from(base),
            fresh: tag,
        }
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn is_fresh(&self) -> bool {
        self.fresh != 0
    }
}

impl fmt::Debug for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VarName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind.prefix(), self.base)?;
        if self.fresh != 0 {
            write!(f, "#{}", self.fresh)?;
        }
        Ok(())
    }
}

/// Head of a compound term.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Head {
    Sym(Symbol),
    Var(VarName),
}

/// A term, or a sequence-variable marker when it sits inside a [`Sequence`].
///
/// `SeqVar` is only meaningful as a sequence item; the constructors never
/// place one in term position (a context argument).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Term {
    Hole,
    Var(VarName),
    SeqVar(VarName),
    App(Head, Sequence),
    CtxApp(VarName, Arc<Term>),
}

impl Term {
    pub fn constant(name: &str) -> Result<Term, ModelError> {
        Ok(Term::App(Head::Sym(Symbol::new(name)?), Sequence::empty()))
    }

    pub fn app(sym: Symbol, args: impl Into<Sequence>) -> Term {
        Term::App(Head::Sym(sym), args.into())
    }

    pub fn var(v: VarName) -> Result<Term, ModelError> {
        match v.kind() {
            VarKind::Individual => Ok(Term::Var(v)),
            VarKind::Sequence => Ok(Term::SeqVar(v)),
            VarKind::Function => Ok(Term::App(Head::Var(v), Sequence::empty())),
            VarKind::Context => Err(ModelError::KindMismatch {
                var: v.to_string(),
                expected: "a context application c_X(t)",
            }),
        }
    }

    pub fn fun_var_app(v: VarName, args: impl Into<Sequence>) -> Result<Term, ModelError> {
        if v.kind() != VarKind::Function {
            return Err(ModelError::KindMismatch {
                var: v.to_string(),
                expected: "a function variable",
            });
        }
        Ok(Term::App(Head::Var(v), args.into()))
    }

    pub fn ctx_app(v: VarName, arg: Term) -> Result<Term, ModelError> {
        if v.kind() != VarKind::Context {
            return Err(ModelError::KindMismatch {
                var: v.to_string(),
                expected: "a context variable",
            });
        }
        if matches!(arg, Term::SeqVar(_)) {
            return Err(ModelError::SequenceInTermPosition(arg.to_string()));
        }
        Ok(Term::CtxApp(v, Arc::new(arg)))
    }

    pub fn is_seq_var(&self) -> bool {
        matches!(self, Term::SeqVar(_))
    }

    /// Number of `hole` occurrences.
    pub fn hole_count(&self) -> usize {
        match self {
            Term::Hole => 1,
            Term::Var(_) | Term::SeqVar(_) => 0,
            Term::App(_, args) => args.hole_count(),
            Term::CtxApp(_, arg) => arg.hole_count(),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Hole => true,
            Term::Var(_) | Term::SeqVar(_) | Term::CtxApp(..) => false,
            Term::App(Head::Var(_), _) => false,
            Term::App(Head::Sym(_), args) => args.is_ground(),
        }
    }

    pub fn head_symbol(&self) -> Option<&Symbol> {
        match self {
            Term::App(Head::Sym(s), _) => Some(s),
            _ => None,
        }
    }

    pub fn args(&self) -> Option<&Sequence> {
        match self {
            Term::App(_, args) => Some(args),
            _ => None,
        }
    }

    pub(crate) fn collect_vars(&self, out: &mut Vec<VarName>) {
        let mut push = |v: &VarName| {
            if !out.contains(v) {
                out.push(v.clone());
            }
        };
        match self {
            Term::Hole => {}
            Term::Var(v) | Term::SeqVar(v) => push(v),
            Term::App(head, args) => {
                if let Head::Var(v) = head {
                    push(v);
                }
                for t in args.iter() {
                    t.collect_vars(out);
                }
            }
            Term::CtxApp(v, arg) => {
                push(v);
                arg.collect_vars(out);
            }
        }
    }

    /// Variables in first-occurrence order.
    pub fn vars(&self) -> Vec<VarName> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    pub fn free_vars(&self) -> BTreeSet<VarName> {
        self.vars().into_iter().collect()
    }

    /// Number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::Hole | Term::Var(_) | Term::SeqVar(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            Term::CtxApp(_, arg) => 1 + arg.size(),
        }
    }
}

/// A flattened, ordered list of terms. The empty sequence is `eps`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Sequence(Arc<[Term]>);

impl Sequence {
    pub fn empty() -> Self {
        Sequence(Arc::from(Vec::new()))
    }

    pub fn unit(t: Term) -> Self {
        Sequence(Arc::from(vec![t]))
    }

    pub fn items(&self) -> &[Term] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Term> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Concatenation; `eps` is its unit.
    pub fn concat(&self, other: &Sequence) -> Sequence {
        let mut v = self.0.to_vec();
        v.extend(other.iter().cloned());
        Sequence::from(v)
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Sequence {
        Sequence::from(self.0[range].to_vec())
    }

    /// The single term of a unit sequence that is not a sequence variable.
    pub fn as_term(&self) -> Option<&Term> {
        match &*self.0 {
            [t] if !t.is_seq_var() => Some(t),
            _ => None,
        }
    }

    pub fn is_ground(&self) -> bool {
        self.iter().all(Term::is_ground)
    }

    pub fn hole_count(&self) -> usize {
        self.iter().map(Term::hole_count).sum()
    }

    pub fn vars(&self) -> Vec<VarName> {
        let mut out = Vec::new();
        for t in self.iter() {
            t.collect_vars(&mut out);
        }
        out
    }

    pub fn free_vars(&self) -> BTreeSet<VarName> {
        self.vars().into_iter().collect()
    }

    pub fn size(&self) -> usize {
        self.iter().map(Term::size).sum()
    }
}

impl From<Vec<Term>> for Sequence {
    fn from(v: Vec<Term>) -> Self {
        Sequence(Arc::from(v))
    }
}

impl FromIterator<Term> for Sequence {
    fn from_iter<I: IntoIterator<Item = Term>>(iter: I) -> Self {
        Sequence::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl<'a> IntoIterator for &'a Sequence {
    type Item = &'a Term;
    type IntoIter = std::slice::Iter<'a, Term>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// A term with exactly one hole.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Context(Term);

impl Context {
    pub fn new(t: Term) -> Result<Self, ModelError> {
        if t.hole_count() != 1 {
            return Err(ModelError::NotAContext(t.to_string()));
        }
        Ok(Context(t))
    }

    /// The bare hole, i.e. the identity context.
    pub fn hole() -> Self {
        Context(Term::Hole)
    }

    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }

    /// Replaces the hole with `t`.
    pub fn apply(&self, t: &Term) -> Term {
        plug(&self.0, t)
    }

    /// Removes a subterm matching this context's shape from `subject`,
    /// returning what sat at the hole position.
    pub fn unplug(&self, subject: &Term) -> Option<Term> {
        unplug(&self.0, subject)
    }
}

fn plug(c: &Term, t: &Term) -> Term {
    match c {
        Term::Hole => t.clone(),
        Term::App(head, args) if args.hole_count() > 0 => {
            Term::App(head.clone(), args.iter().map(|a| plug(a, t)).collect())
        }
        Term::CtxApp(v, arg) if arg.hole_count() > 0 => {
            Term::CtxApp(v.clone(), Arc::new(plug(arg, t)))
        }
        _ => c.clone(),
    }
}

fn unplug(c: &Term, s: &Term) -> Option<Term> {
    match (c, s) {
        (Term::Hole, _) => Some(s.clone()),
        (Term::App(h1, a1), Term::App(h2, a2)) if h1 == h2 && a1.len() == a2.len() => {
            let mut found = None;
            for (x, y) in a1.iter().zip(a2.iter()) {
                if x.hole_count() == 1 {
                    found = Some(unplug(x, y)?);
                } else if x != y {
                    return None;
                }
            }
            found
        }
        _ => None,
    }
}

/// Applies `c` (a context) to `t`. Convenience wrapper over [`Context::apply`].
pub fn apply_context(c: &Context, t: &Term) -> Term {
    c.apply(t)
}

/// Every decomposition of a ground subject into a context and the subterm at
/// its hole, in leftmost-outermost (preorder) order.
pub fn enumerate_contexts(subject: &Term) -> Vec<(Context, Term)> {
    let mut out = Vec::new();
    walk_positions(subject, &mut |ctx, sub| {
        out.push((Context(ctx), sub.clone()))
    });
    out
}

fn walk_positions(t: &Term, emit: &mut dyn FnMut(Term, &Term)) {
    emit(Term::Hole, t);
    if let Term::App(head, args) = t {
        for i in 0..args.len() {
            walk_positions(&args.items()[i], &mut |inner, sub| {
                let mut items = args.items().to_vec();
                items[i] = inner;
                emit(Term::App(head.clone(), Sequence::from(items)), sub)
            });
        }
    }
}
