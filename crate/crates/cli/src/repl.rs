use std::io::{self, BufRead, Write};

use rholog_core::syntax::{parse_query, render_answer, Query};

use crate::Session;

pub const EXIT_OK: i32 = 0;
pub const EXIT_LOAD_ERROR: i32 = 1;
pub const EXIT_QUERY_ERROR: i32 = 2;

const PROMPT: &str = "rholog> ";

/// Runs each query to exhaustion (or the answer limit) and prints the
/// answers in REPL format. Returns the process exit code.
pub fn run_batch(
    session: &Session,
    queries: &[String],
    out: &mut impl Write,
    err: &mut impl Write,
) -> io::Result<i32> {
    let mut status = EXIT_OK;
    for (i, src) in queries.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        writeln!(out, "{}", src.trim())?;
        let query = match parse_query(src) {
            Ok(q) => q,
            Err(e) => {
                writeln!(err, "error: query {}: {e}", i + 1)?;
                status = EXIT_QUERY_ERROR;
                continue;
            }
        };
        let mut printed = 0;
        let mut failed = false;
        for answer in session.engine().solve(&query) {
            match answer {
                Ok(a) => {
                    printed += 1;
                    let text = render_answer(&a, &query);
                    if session.answer_limit == Some(printed) {
                        writeln!(out, "{text}.")?;
                        break;
                    }
                    writeln!(out, "{text} ;")?;
                }
                Err(e) => {
                    writeln!(err, "error: query {}: {e}", i + 1)?;
                    status = EXIT_QUERY_ERROR;
                    failed = true;
                    break;
                }
            }
        }
        if session.answer_limit != Some(printed) && !failed {
            writeln!(out, "false.")?;
        }
    }
    Ok(status)
}

/// Reads a query terminated by `.` that may span several lines. `None` at
/// end of input.
fn read_query(input: &mut impl BufRead, out: &mut impl Write) -> io::Result<Option<String>> {
    let mut buf = String::new();
    loop {
        write!(out, "{}", if buf.is_empty() { PROMPT } else { "|    " })?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            return Ok((!buf.trim().is_empty()).then_some(buf));
        }
        buf.push_str(&line);
        let trimmed = buf.trim();
        if trimmed.is_empty() {
            buf.clear();
        } else if trimmed.ends_with('.') {
            return Ok(Some(buf));
        }
    }
}

/// Interactive loop. After each answer a line containing `;` asks for the
/// next one; anything else stops the query. `halt.` or end of input ends
/// the session.
pub fn run_repl(session: &Session, mut input: impl BufRead, mut out: impl Write) -> io::Result<()> {
    while let Some(src) = read_query(&mut input, &mut out)? {
        if src.trim() == "halt." {
            break;
        }
        match parse_query(&src) {
            Ok(query) => answer_interactively(session, &query, &mut input, &mut out)?,
            Err(e) => writeln!(out, "error: {e}")?,
        }
    }
    Ok(())
}

fn answer_interactively(
    session: &Session,
    query: &Query,
    input: &mut impl BufRead,
    out: &mut impl Write,
) -> io::Result<()> {
    let mut printed = 0;
    for answer in session.engine().solve(query) {
        let a = match answer {
            Ok(a) => a,
            Err(e) => return writeln!(out, "error: {e}"),
        };
        printed += 1;
        write!(out, "{}", render_answer(&a, query))?;
        if session.answer_limit == Some(printed) {
            return writeln!(out, ".");
        }
        write!(out, " ")?;
        out.flush()?;
        let mut reply = String::new();
        input.read_line(&mut reply)?;
        if reply.trim() != ";" {
            return writeln!(out, ".");
        }
    }
    writeln!(out, "false.")
}
