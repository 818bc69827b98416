//! Kind-respecting substitutions and their application.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::ModelError;
use crate::term::{Context, Head, Sequence, Term, VarKind, VarName};

/// What a variable is mapped to. The variant always agrees with the
/// variable's kind.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Binding {
    Term(Term),
    Seq(Sequence),
    Head(Head),
    Ctx(Context),
}

impl Binding {
    fn admits(&self, kind: VarKind) -> bool {
        matches!(
            (self, kind),
            (Binding::Term(_), VarKind::Individual)
                | (Binding::Seq(_), VarKind::Sequence)
                | (Binding::Head(_), VarKind::Function)
                | (Binding::Ctx(_), VarKind::Context)
        )
    }

    /// The binding as the sequence it stands for when spliced in place.
    pub fn as_sequence(&self) -> Sequence {
        match self {
            Binding::Term(t) => Sequence::unit(t.clone()),
            Binding::Seq(s) => s.clone(),
            Binding::Head(h) => Sequence::unit(Term::App(h.clone(), Sequence::empty())),
            Binding::Ctx(c) => Sequence::unit(c.term().clone()),
        }
    }

    fn is_identity_for(&self, v: &VarName) -> bool {
        match self {
            Binding::Term(Term::Var(w)) => w == v,
            Binding::Seq(s) => matches!(s.items(), [Term::SeqVar(w)] if w == v),
            Binding::Head(Head::Var(w)) => w == v,
            Binding::Ctx(c) => match c.term() {
                Term::CtxApp(w, arg) => w == v && **arg == Term::Hole,
                _ => false,
            },
            _ => false,
        }
    }
}

/// A finite map from variables to bindings. Unmapped variables stand for
/// themselves.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Substitution {
    map: BTreeMap<VarName, Binding>,
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, v: &VarName) -> Option<&Binding> {
        self.map.get(v)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VarName, &Binding)> {
        self.map.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &VarName> {
        self.map.keys()
    }

    /// Adds or replaces a binding after checking kind agreement and holes.
    pub fn insert(&mut self, v: VarName, b: Binding) -> Result<(), ModelError> {
        if !b.admits(v.kind()) {
            return Err(ModelError::KindMismatch {
                var: v.to_string(),
                expected: match v.kind() {
                    VarKind::Individual => "a term",
                    VarKind::Sequence => "a sequence",
                    VarKind::Function => "a function symbol or variable",
                    VarKind::Context => "a context",
                },
            });
        }
        let holes = match &b {
            Binding::Term(t) => t.hole_count(),
            Binding::Seq(s) => s.hole_count(),
            _ => 0,
        };
        if holes != 0 {
            return Err(ModelError::HoleInBinding(v.to_string()));
        }
        if let Binding::Term(Term::SeqVar(_)) = b {
            return Err(ModelError::SequenceInTermPosition(v.to_string()));
        }
        self.map.insert(v, b);
        Ok(())
    }

    /// Inserts without validation. Callers guarantee kind agreement.
    pub(crate) fn bind_unchecked(&mut self, v: VarName, b: Binding) {
        debug_assert!(b.admits(v.kind()));
        self.map.insert(v, b);
    }

    pub fn with(mut self, v: VarName, b: Binding) -> Result<Self, ModelError> {
        self.insert(v, b)?;
        Ok(self)
    }

    /// Keeps only the given variables.
    pub fn restrict<'a>(&self, vars: impl IntoIterator<Item = &'a VarName>) -> Substitution {
        let mut out = Substitution::new();
        for v in vars {
            if let Some(b) = self.map.get(v) {
                out.map.insert(v.clone(), b.clone());
            }
        }
        out
    }

    pub fn apply_seq(&self, s: &Sequence) -> Sequence {
        if self.is_empty() {
            return s.clone();
        }
        let mut out = Vec::with_capacity(s.len());
        for item in s.iter() {
            match item {
                Term::SeqVar(v) => match self.map.get(v) {
                    Some(b) => out.extend(b.as_sequence().iter().cloned()),
                    None => out.push(item.clone()),
                },
                t => out.push(self.apply_term_inner(t)),
            }
        }
        Sequence::from(out)
    }

    /// Applies the substitution to a term. A sequence variable in term
    /// position is only accepted when it is bound to a single term.
    pub fn apply_term(&self, t: &Term) -> Result<Term, ModelError> {
        match t {
            Term::SeqVar(v) => match self.map.get(v) {
                None => Ok(t.clone()),
                Some(b) => b
                    .as_sequence()
                    .as_term()
                    .cloned()
                    .ok_or_else(|| ModelError::SequenceInTermPosition(v.to_string())),
            },
            _ => Ok(self.apply_term_inner(t)),
        }
    }

    fn apply_term_inner(&self, t: &Term) -> Term {
        match t {
            Term::Hole => Term::Hole,
            Term::Var(v) => match self.map.get(v) {
                Some(Binding::Term(b)) => b.clone(),
                _ => t.clone(),
            },
            Term::SeqVar(_) => t.clone(),
            Term::App(head, args) => {
                let head = match head {
                    Head::Var(v) => match self.map.get(v) {
                        Some(Binding::Head(h)) => h.clone(),
                        _ => head.clone(),
                    },
                    Head::Sym(_) => head.clone(),
                };
                Term::App(head, self.apply_seq(args))
            }
            Term::CtxApp(v, arg) => {
                let arg = self.apply_term_inner(arg);
                match self.map.get(v) {
                    Some(Binding::Ctx(c)) => c.apply(&arg),
                    _ => Term::CtxApp(v.clone(), Arc::new(arg)),
                }
            }
        }
    }

    fn apply_binding(&self, b: &Binding) -> Binding {
        match b {
            Binding::Term(t) => Binding::Term(self.apply_term_inner(t)),
            Binding::Seq(s) => Binding::Seq(self.apply_seq(s)),
            Binding::Head(Head::Var(v)) => match self.map.get(v) {
                Some(Binding::Head(h)) => Binding::Head(h.clone()),
                _ => b.clone(),
            },
            Binding::Head(h) => Binding::Head(h.clone()),
            // Contexts map to contexts: bindings hold hole-free terms and
            // contexts, so the single hole survives.
            Binding::Ctx(c) => Binding::Ctx(
                Context::new(self.apply_term_inner(c.term()))
                    .expect("substitution preserves the hole"),
            ),
        }
    }

    /// Composition `θ ∘ σ` such that `apply(compose(σ, θ), e) = apply(θ, apply(σ, e))`.
    pub fn compose(&self, theta: &Substitution) -> Substitution {
        let mut out = Substitution::new();
        for (v, b) in &self.map {
            let b = theta.apply_binding(b);
            if !b.is_identity_for(v) {
                out.map.insert(v.clone(), b);
            }
        }
        for (v, b) in &theta.map {
            if !self.map.contains_key(v) {
                out.map.insert(v.clone(), b.clone());
            }
        }
        out
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, b)) in self.map.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v} -> {b}")?;
        }
        f.write_str("}")
    }
}

/// Free-function form of [`Substitution::compose`].
pub fn compose_subst(sigma: &Substitution, theta: &Substitution) -> Substitution {
    sigma.compose(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_sequence, parse_term};
    use proptest::prelude::*;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }
    fn sq(s: &str) -> Sequence {
        parse_sequence(s).unwrap()
    }
    fn v(s: &str) -> VarName {
        VarName::parse(s).unwrap()
    }
    fn ctx(s: &str) -> Binding {
        Binding::Ctx(Context::new(t(s)).unwrap())
    }

    fn sample_sigma() -> Substitution {
        Substitution::new()
            .with(v("c_Ctx"), ctx("f(hole)"))
            .unwrap()
            .with(v("i_Term"), Binding::Term(t("g(s_X)")))
            .unwrap()
            .with(
                v("f_Funct"),
                Binding::Head(Head::Sym(crate::term::Symbol::new("g").unwrap())),
            )
            .unwrap()
            .with(v("s_Seq1"), Binding::Seq(Sequence::empty()))
            .unwrap()
            .with(v("s_Seq2"), Binding::Seq(sq("(b,c)")))
            .unwrap()
    }

    #[test]
    fn applies_to_context_application() {
        let s = sample_sigma();
        assert_eq!(s.apply_term(&t("c_Ctx(i_Term)")).unwrap(), t("f(g(s_X))"));
    }

    #[test]
    fn applies_to_sequence_with_splicing() {
        let s = sample_sigma();
        let got = s.apply_seq(&sq("(c_Ctx(i_Term), f_Funct(s_Seq1,a,s_Seq2))"));
        assert_eq!(got, sq("(f(g(s_X)), g(a,b,c))"));
    }

    #[test]
    fn function_variable_heads() {
        let s = Substitution::new()
            .with(
                v("f_F"),
                Binding::Head(Head::Sym(crate::term::Symbol::new("g").unwrap())),
            )
            .unwrap();
        assert_eq!(s.apply_term(&t("f_F(a,b)")).unwrap(), t("g(a,b)"));
    }

    #[test]
    fn empty_and_repeated_splices() {
        let s = Substitution::new()
            .with(v("s_X"), Binding::Seq(Sequence::empty()))
            .unwrap();
        assert_eq!(s.apply_seq(&sq("(a, s_X, b)")), sq("(a,b)"));
        let s = Substitution::new()
            .with(v("s_X"), Binding::Seq(sq("(a,b)")))
            .unwrap();
        assert_eq!(s.apply_seq(&sq("(s_X, s_X)")), sq("(a,b,a,b)"));
    }

    #[test]
    fn unbound_variables_stay_in_place() {
        let s = Substitution::new()
            .with(v("i_X"), Binding::Term(t("a")))
            .unwrap();
        assert_eq!(
            s.apply_seq(&sq("(i_X, i_Y, s_Z, c_C(f_F))")),
            sq("(a, i_Y, s_Z, c_C(f_F))")
        );
    }

    #[test]
    fn seq_var_in_term_position() {
        let s = Substitution::new()
            .with(v("s_X"), Binding::Seq(sq("(a,b)")))
            .unwrap();
        assert!(s.apply_term(&Term::SeqVar(v("s_X"))).is_err());
        let s = Substitution::new()
            .with(v("s_X"), Binding::Seq(sq("a")))
            .unwrap();
        assert_eq!(s.apply_term(&Term::SeqVar(v("s_X"))).unwrap(), t("a"));
    }

    #[test]
    fn insert_checks_kinds_and_holes() {
        let mut s = Substitution::new();
        assert!(s.insert(v("i_X"), Binding::Seq(sq("a"))).is_err());
        assert!(s.insert(v("s_X"), Binding::Term(t("a"))).is_err());
        assert!(s.insert(v("i_X"), Binding::Term(t("f(hole)"))).is_err());
        assert!(s.insert(v("c_X"), Binding::Term(t("f(hole)"))).is_err());
        assert!(s.insert(v("c_X"), ctx("hole")).is_ok());
    }

    #[test]
    fn compose_identity_and_disjoint() {
        let theta = Substitution::new()
            .with(v("i_Y"), Binding::Term(t("b")))
            .unwrap();
        assert_eq!(Substitution::new().compose(&theta), theta);
        let sigma = Substitution::new()
            .with(v("i_X"), Binding::Term(t("a")))
            .unwrap();
        let both = sigma.clone().with(v("i_Y"), Binding::Term(t("b"))).unwrap();
        assert_eq!(sigma.compose(&theta), both);
    }

    #[test]
    fn compose_chains_through_bindings() {
        let sigma = Substitution::new()
            .with(v("i_X"), Binding::Term(t("i_Y")))
            .unwrap();
        let theta = Substitution::new()
            .with(v("i_Y"), Binding::Term(t("c")))
            .unwrap();
        let composed = sigma.compose(&theta);
        let want = Substitution::new()
            .with(v("i_X"), Binding::Term(t("c")))
            .unwrap()
            .with(v("i_Y"), Binding::Term(t("c")))
            .unwrap();
        assert_eq!(composed, want);
        for probe in ["f(i_X, i_Y, i_Z)", "(i_X, s_Q, i_Y)"] {
            let p = sq(probe);
            assert_eq!(
                composed.apply_seq(&p),
                theta.apply_seq(&sigma.apply_seq(&p))
            );
        }
    }

    // Generators for the property tests: small patterns over a fixed set of
    // variables, and substitutions that may map into further variables.
    fn arb_term(depth: u32) -> BoxedStrategy<Term> {
        let leaf = prop_oneof![
            Just(t("a")),
            Just(t("b")),
            Just(t("i_X")),
            Just(t("i_Y")),
            Just(t("f_F")),
        ];
        if depth == 0 {
            return leaf.boxed();
        }
        let inner = arb_seq(depth - 1);
        prop_oneof![
            leaf,
            (prop_oneof![Just("f"), Just("g")], inner.clone())
                .prop_map(|(h, args)| Term::app(crate::term::Symbol::new(h).unwrap(), args)),
            inner
                .clone()
                .prop_map(|args| Term::fun_var_app(v("f_F"), args).unwrap()),
            arb_term(depth - 1).prop_map(|a| Term::ctx_app(v("c_C"), a).unwrap()),
        ]
        .boxed()
    }

    fn arb_seq(depth: u32) -> BoxedStrategy<Sequence> {
        prop::collection::vec(
            prop_oneof![3 => arb_term(depth), 1 => Just(Term::SeqVar(v("s_S")))],
            0..4,
        )
        .prop_map(Sequence::from)
        .boxed()
    }

    fn arb_subst() -> impl Strategy<Value = Substitution> {
        (
            prop::option::of(arb_term(1)),
            prop::option::of(arb_seq(1)),
            prop::option::of(prop_oneof![Just("g"), Just("h")]),
            prop::option::of(prop_oneof![
                Just("f(hole)"),
                Just("g(a,hole,i_X)"),
                Just("hole")
            ]),
        )
            .prop_map(|(x, s, f, c)| {
                let mut out = Substitution::new();
                if let Some(x) = x {
                    out.insert(v("i_X"), Binding::Term(x)).unwrap();
                }
                if let Some(s) = s {
                    out.insert(v("s_S"), Binding::Seq(s)).unwrap();
                }
                if let Some(f) = f {
                    out.insert(
                        v("f_F"),
                        Binding::Head(Head::Sym(crate::term::Symbol::new(f).unwrap())),
                    )
                    .unwrap();
                }
                if let Some(c) = c {
                    out.insert(v("c_C"), ctx(c)).unwrap();
                }
                out
            })
    }

    proptest! {
        #[test]
        fn empty_substitution_is_identity(s in arb_seq(2)) {
            prop_assert_eq!(Substitution::new().apply_seq(&s), s);
        }

        #[test]
        fn composition_satisfies_its_defining_equation(
            sigma in arb_subst(), theta in arb_subst(), probe in arb_seq(2)
        ) {
            let lhs = sigma.compose(&theta).apply_seq(&probe);
            let rhs = theta.apply_seq(&sigma.apply_seq(&probe));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn context_application_preserves_hole_count(arg in arb_term(2)) {
            let c = Context::new(t("f(a,g(hole,b))")).unwrap();
            prop_assert_eq!(c.apply(&arg).hole_count(), arg.hole_count());
        }
    }
}
