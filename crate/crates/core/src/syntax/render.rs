use std::fmt::{self, Display, Write as _};

use super::{Clause, Literal, ProximityDecl, Query, RhoAtom, SourceProgram};
use crate::engine::Answer;
use crate::subst::Binding;
use crate::term::{Head, Sequence, Term, VarName, EPS, HOLE};

impl Display for Head {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Head::Sym(s) => write!(f, "{s}"),
            Head::Var(v) => write!(f, "{v}"),
        }
    }
}

impl Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Hole => f.write_str(HOLE),
            Term::Var(v) | Term::SeqVar(v) => write!(f, "{v}"),
            Term::App(head, args) if args.is_empty() => write!(f, "{head}"),
            Term::App(head, args) => {
                write!(f, "{head}(")?;
                write_items(f, args)?;
                f.write_char(')')
            }
            Term::CtxApp(v, arg) => write!(f, "{v}({arg})"),
        }
    }
}

fn write_items(f: &mut fmt::Formatter<'_>, s: &Sequence) -> fmt::Result {
    for (i, t) in s.iter().enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

/// `eps` for the empty sequence, the bare item for a unit sequence, and a
/// parenthesised list otherwise.
impl Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.len() {
            0 => f.write_str(EPS),
            1 => write!(f, "{}", self.items()[0]),
            _ => {
                f.write_char('(')?;
                write_items(f, self)?;
                f.write_char(')')
            }
        }
    }
}

impl Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Binding::Term(t) => write!(f, "{t}"),
            Binding::Seq(s) => write!(f, "{s}"),
            Binding::Head(h) => write!(f, "{h}"),
            Binding::Ctx(c) => write!(f, "{}", c.term()),
        }
    }
}

impl Display for RhoAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} :: {} ==> {}", self.strategy, self.lhs, self.rhs)
    }
}

impl Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::RhoPos(a) => write!(f, "{a}"),
            Literal::RhoNeg(a) => write!(f, "{} :: {} =\\=> {}", a.strategy, a.lhs, a.rhs),
            Literal::Pred(t) => write!(f, "{t}"),
            Literal::NegPred(inner) => write!(f, "not({inner})"),
        }
    }
}

fn write_body(f: &mut fmt::Formatter<'_>, body: &[Literal]) -> fmt::Result {
    if body.is_empty() {
        return Ok(());
    }
    f.write_str(" :-\n    ")?;
    for (i, l) in body.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

impl Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::Rho { head, body } => {
                write!(f, "{head}")?;
                write_body(f, body)?;
            }
            Clause::Pred { head, body } => {
                write!(f, "{head}")?;
                write_body(f, body)?;
            }
            Clause::Abbrev {
                strategy,
                expansion,
            } => write!(f, "{strategy} := {expansion}")?,
        }
        f.write_char('.')
    }
}

impl Display for SourceProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

impl Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("?(")?;
        for (i, l) in self.goal.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{l}")?;
        }
        if let Some(t) = self.threshold {
            write!(
                f,
                ", {t}, {}",
                self.degree_name.as_deref().unwrap_or("Degree")
            )?;
        }
        write!(f, ", {}).", self.result_name)
    }
}

impl Display for ProximityDecl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "prox({}, {}, {}).", self.left, self.right, self.degree)
    }
}

pub fn render_sequence(s: &Sequence) -> String {
    s.to_string()
}

/// `[v ---> value, ...]`
pub fn render_bindings(bindings: &[(VarName, Binding)]) -> String {
    let mut out = String::from("[");
    for (i, (v, b)) in bindings.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let _ = write!(out, "{v} ---> {b}");
    }
    out.push(']');
    out
}

/// Renders an answer the way the REPL prints it, e.g.
///
/// ```text
/// Degree = 0.6,
/// Result = [s_Ans ---> (d,c)]
/// ```
///
/// The degree line only appears for proximity queries.
pub fn render_answer(answer: &Answer, query: &Query) -> String {
    let mut out = String::new();
    if let Some(name) = &query.degree_name {
        let _ = writeln!(out, "{name} = {},", answer.degree);
    }
    let _ = write!(
        out,
        "{} = {}",
        query.result_name,
        render_bindings(&answer.bindings)
    );
    out
}

#[cfg(test)]
mod tests {
    use super::super::{parse_program, parse_sequence, parse_term};
    use super::*;
    use crate::degree::Degree;

    fn v(s: &str) -> VarName {
        VarName::parse(s).unwrap()
    }

    #[test]
    fn sequences() {
        assert_eq!(
            render_sequence(&parse_sequence("(1, 2,3)").unwrap()),
            "(1,2,3)"
        );
        assert_eq!(render_sequence(&parse_sequence("(a)").unwrap()), "a");
        assert_eq!(render_sequence(&Sequence::empty()), "eps");
        assert_eq!(
            render_sequence(&parse_sequence("(f(a, g()), s_X)").unwrap()),
            "(f(a,g),s_X)"
        );
    }

    #[test]
    fn bindings() {
        let b = vec![(
            v("s_X"),
            Binding::Seq(parse_sequence("(1,2,3,3,4)").unwrap()),
        )];
        assert_eq!(render_bindings(&b), "[s_X ---> (1,2,3,3,4)]");
        let b = vec![(v("i_X"), Binding::Term(parse_term("a").unwrap()))];
        assert_eq!(render_bindings(&b), "[i_X ---> a]");
        assert_eq!(render_bindings(&[]), "[]");
    }

    #[test]
    fn answers() {
        let q = super::super::parse_query("?(m :: (a,b) ==> s_Ans, 0.5, Degree, Result).").unwrap();
        let a = Answer {
            bindings: vec![(v("s_Ans"), Binding::Seq(parse_sequence("(d,c)").unwrap()))],
            degree: "0.6".parse::<Degree>().unwrap(),
        };
        assert_eq!(
            render_answer(&a, &q),
            "Degree = 0.6,\nResult = [s_Ans ---> (d,c)]"
        );
    }

    #[test]
    fn programs_round_trip() {
        let src = "
            swap(f_O) :: (s_X, i_I, i_J, s_Y) ==> (s_X, i_J, i_I, s_Y) :- not(f_O(i_I, i_J)).
            b(f_O) := first_one(nf(swap(f_O))).
            p(a). q(i_X) :- p(i_X), 1 < 2, r :: i_X =\\=> eps.
            rw(i_S) :: c_C(i_X) ==> c_C(i_Y) :- i_S :: i_X ==> i_Y.
        ";
        let p = parse_program(src).unwrap();
        assert_eq!(parse_program(&p.to_string()).unwrap(), p);
    }
}
