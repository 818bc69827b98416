//! Built-in strategies and comparison predicates.

use super::{bind, fail, lazy, none, one, Engine, EngineError, Mode, Stream};
use crate::degree::Degree;
use crate::term::{Sequence, Symbol, Term};

type Outputs<'a> = Stream<'a, (Sequence, Degree)>;

fn with_degree<'a>(s: Outputs<'a>, d: Degree) -> Outputs<'a> {
    Box::new(s.map(move |r| r.map(|(o, d1)| (o, d.min(d1)))))
}

/// The λ of `prox(λ)`.
pub(super) fn threshold_arg(t: &Term) -> Result<Degree, EngineError> {
    let bad = || EngineError::InvalidThreshold(t.to_string());
    match t {
        Term::App(_, args) if args.is_empty() => {
            t.head_symbol().unwrap().name().parse().map_err(|_| bad())
        }
        _ => Err(bad()),
    }
}

/// `=<`, `<`, `>`, `>=` on numeric constants.
pub(super) fn compare(op: &Symbol, args: &Sequence) -> Result<bool, EngineError> {
    if args.len() != 2 {
        return Err(EngineError::ArityError {
            name: op.to_string(),
            arity: args.len(),
            expected: "2",
        });
    }
    let num = |t: &Term| match t {
        Term::App(_, a) if a.is_empty() => t.head_symbol().and_then(Symbol::numeric_value),
        _ => None,
    };
    let (Some(x), Some(y)) = (num(&args.items()[0]), num(&args.items()[1])) else {
        let lit = Term::app(op.clone(), args.clone());
        return Err(EngineError::NonNumeric(lit.to_string()));
    };
    Ok(match op.name() {
        "=<" => x <= y,
        "<" => x < y,
        ">" => x > y,
        ">=" => x >= y,
        other => unreachable!("not a comparison: {other}"),
    })
}

impl<'a> Engine<'a> {
    pub(super) fn strategy_outputs(self, st: Term, input: Sequence, mode: Mode) -> Outputs<'a> {
        let name = st
            .head_symbol()
            .map(|s| s.name().to_owned())
            .unwrap_or_default();
        let args = st.args().cloned().unwrap_or_default();
        let arity = |expected: &'static str| EngineError::ArityError {
            name: name.clone(),
            arity: args.len(),
            expected,
        };
        match name.as_str() {
            "id" if args.is_empty() => one((input, Degree::ONE)),
            "id" => fail(arity("0")),
            "prox" if args.len() <= 1 => {
                if let Some(t) = args.items().first() {
                    if let Err(e) = threshold_arg(t) {
                        return fail(e);
                    }
                }
                one((input, Degree::ONE))
            }
            "prox" => fail(arity("0 or 1")),
            "compose" if args.len() >= 2 => {
                let mut stream = self.strategy_outputs(args.items()[0].clone(), input, mode);
                for st in args.iter().skip(1) {
                    let st = st.clone();
                    stream = bind(stream, move |(o, d)| {
                        with_degree(self.strategy_outputs(st.clone(), o, mode), d)
                    });
                }
                stream
            }
            "compose" => fail(arity("at least 2")),
            "choice" if !args.is_empty() => Box::new(
                args.items()
                    .to_vec()
                    .into_iter()
                    .flat_map(move |st| self.strategy_outputs(st, input.clone(), mode)),
            ),
            "first_one" | "first_all" if !args.is_empty() => {
                let all = name == "first_all";
                lazy(move || {
                    for st in args.iter() {
                        let mut s = self.strategy_outputs(st.clone(), input.clone(), mode);
                        if let Some(first) = s.next() {
                            let keep_going = all && first.is_ok();
                            let head = std::iter::once(first);
                            return if keep_going {
                                Box::new(head.chain(s))
                            } else {
                                Box::new(head)
                            };
                        }
                    }
                    none()
                })
            }
            "choice" | "first_one" | "first_all" => fail(arity("at least 1")),
            "map" if args.len() == 1 => {
                let st = args.items()[0].clone();
                self.map_from(st, input, 0, Vec::new(), Degree::ONE, mode)
            }
            "nf" if args.len() == 1 => self.normal_forms(args.items()[0].clone(), input, 0, mode),
            "map" | "nf" => fail(arity("1")),
            _ => self.rule_outputs(st, input, mode),
        }
    }

    fn map_from(
        self,
        st: Term,
        input: Sequence,
        i: usize,
        acc: Vec<Term>,
        d: Degree,
        mode: Mode,
    ) -> Outputs<'a> {
        if i == input.len() {
            return one((Sequence::from(acc), d));
        }
        let item = Sequence::unit(input.items()[i].clone());
        bind(
            self.strategy_outputs(st.clone(), item, mode),
            move |(o, d1)| {
                let Some(t) = o.as_term() else {
                    return fail(EngineError::NonTermResult {
                        strategy: st.to_string(),
                        output: o.to_string(),
                    });
                };
                let mut acc = acc.clone();
                acc.push(t.clone());
                self.map_from(st.clone(), input.clone(), i + 1, acc, d.min(d1), mode)
            },
        )
    }

    /// Depth-first search for normal forms. `steps` counts the rewrite
    /// steps taken so far on the current derivation.
    fn normal_forms(self, st: Term, input: Sequence, steps: usize, mode: Mode) -> Outputs<'a> {
        lazy(move || {
            let mut outs = self
                .strategy_outputs(st.clone(), input.clone(), mode)
                .peekable();
            match outs.peek() {
                None => one((input, Degree::ONE)),
                Some(Err(_)) => Box::new(outs.take(1)),
                Some(Ok(_)) => {
                    if let Some(limit) = self.config.nf_step_limit {
                        if steps >= limit {
                            return fail(EngineError::StepLimit(limit));
                        }
                    }
                    bind(Box::new(outs), move |(o, d)| {
                        with_degree(self.normal_forms(st.clone(), o, steps + 1, mode), d)
                    })
                }
            }
        })
    }
}
