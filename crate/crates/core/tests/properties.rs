use proptest::prelude::*;
use rholog_core::syntax::{parse_program, parse_sequence, parse_term, render_sequence};
use rholog_core::{
    load_program, match_hedge, Binding, ClauseDb, Context, Degree, Engine, EngineConfig, Head,
    Mode, ProximityRelation, Sequence, Substitution, Symbol, Term, VarName,
};

fn sym(s: &str) -> Symbol {
    Symbol::new(s).unwrap()
}

fn v(s: &str) -> VarName {
    VarName::parse(s).unwrap()
}

fn ground_term() -> impl Strategy<Value = Term> {
    let leaf = prop::sample::select(vec!["a", "b", "c"])
        .prop_map(|s| Term::app(sym(s), Vec::<Term>::new()));
    leaf.prop_recursive(3, 12, 3, |inner| {
        (
            prop::sample::select(vec!["f", "g"]),
            prop::collection::vec(inner, 0..3),
        )
            .prop_map(|(f, args)| Term::app(sym(f), args))
    })
}

fn ground_seq() -> impl Strategy<Value = Sequence> {
    prop::collection::vec(ground_term(), 0..4).prop_map(Sequence::from)
}

/// A context with the hole somewhere inside a small ground term.
fn context() -> impl Strategy<Value = Context> {
    (ground_seq(), ground_seq(), prop::bool::ANY).prop_map(|(l, r, wrap)| {
        let mut items: Vec<Term> = l.items().to_vec();
        items.push(Term::Hole);
        items.extend(r.iter().cloned());
        let t = if wrap {
            Term::app(sym("h"), vec![Term::app(sym("f"), items)])
        } else {
            Term::app(sym("f"), items)
        };
        Context::new(t).unwrap()
    })
}

fn pattern_item() -> impl Strategy<Value = Term> {
    prop_oneof![
        ground_term(),
        Just(Term::Var(v("i_X"))),
        Just(Term::SeqVar(v("s_X"))),
        Just(Term::SeqVar(v("s_Y"))),
        Just(Term::App(
            Head::Var(v("f_F")),
            Sequence::from(vec![Term::SeqVar(v("s_Y"))])
        )),
        Just(Term::CtxApp(v("c_C"), Term::Var(v("i_X")).into())),
        Just(Term::app(
            sym("g"),
            vec![Term::SeqVar(v("s_X")), Term::Var(v("i_X"))]
        )),
    ]
}

fn grounding() -> impl Strategy<Value = Substitution> {
    (
        ground_term(),
        ground_seq(),
        ground_seq(),
        prop::sample::select(vec!["f", "g", "k"]),
        context(),
    )
        .prop_map(|(x, sx, sy, f, c)| {
            Substitution::new()
                .with(v("i_X"), Binding::Term(x))
                .unwrap()
                .with(v("s_X"), Binding::Seq(sx))
                .unwrap()
                .with(v("s_Y"), Binding::Seq(sy))
                .unwrap()
                .with(v("f_F"), Binding::Head(Head::Sym(sym(f))))
                .unwrap()
                .with(v("c_C"), Binding::Ctx(c))
                .unwrap()
        })
}

const RULES: &str = "
drop :: (s_X, i_Y, s_Z) ==> (s_X, s_Z).
dup :: (s_X, i_Y, s_Z) ==> (s_X, i_Y, i_Y, s_Z).
";

fn rules() -> ClauseDb {
    load_program(&parse_program(RULES).unwrap()).unwrap()
}

fn outputs(db: &ClauseDb, st: &str, input: &Sequence) -> Vec<Sequence> {
    let rel = ProximityRelation::new();
    let engine = Engine::new(db, &rel, EngineConfig::default());
    engine
        .outputs(&parse_term(st).unwrap(), input, Mode::Exact)
        .map(|r| {
            let (s, d) = r.unwrap();
            assert_eq!(d, Degree::ONE);
            s
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn matchers_reproduce_the_subject_and_include_the_generator(
        pattern in prop::collection::vec(pattern_item(), 0..4).prop_map(Sequence::from),
        sigma in grounding(),
    ) {
        let subject = sigma.apply_seq(&pattern);
        let found: Vec<Substitution> = match_hedge(&pattern, &subject).unwrap().collect();
        for m in &found {
            prop_assert_eq!(&m.apply_seq(&pattern), &subject);
        }
        let expected = sigma.restrict(&pattern.free_vars());
        prop_assert!(found.contains(&expected), "{} not among {} matchers", render_sequence(&pattern), found.len());
    }

    #[test]
    fn ground_sequences_print_and_parse_back(s in ground_seq()) {
        prop_assert_eq!(parse_sequence(&render_sequence(&s)).unwrap(), s);
    }

    #[test]
    fn choice_concatenates_its_branches(input in ground_seq()) {
        let db = rules();
        let mut both = outputs(&db, "drop", &input);
        both.extend(outputs(&db, "dup", &input));
        prop_assert_eq!(outputs(&db, "choice(drop, dup)", &input), both);
    }

    #[test]
    fn compose_chains_every_output(input in ground_seq()) {
        let db = rules();
        let chained: Vec<Sequence> = outputs(&db, "dup", &input).iter().flat_map(|mid| outputs(&db, "drop", mid)).collect();
        prop_assert_eq!(outputs(&db, "compose(dup, drop)", &input), chained);
    }

    #[test]
    fn first_one_keeps_the_first_output(input in ground_seq()) {
        let db = rules();
        let all = outputs(&db, "drop", &input);
        prop_assert_eq!(outputs(&db, "first_one(drop)", &input), all.into_iter().take(1).collect::<Vec<_>>());
    }

    #[test]
    fn nf_of_drop_is_empty(input in ground_seq()) {
        let db = rules();
        let nfs = outputs(&db, "first_one(nf(drop))", &input);
        prop_assert_eq!(nfs, vec![Sequence::empty()]);
    }
}
