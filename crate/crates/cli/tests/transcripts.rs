use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn program(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../programs")
        .join(name)
}

fn rholog(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rholog"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("rholog-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn bubble_sort_batch() {
    let sorting = program("sorting.rho");
    let q = "?(bubble_sort(=<) :: (1,3,4,3,2) ==> s_X, Result).";
    let o = rholog(&["--load", sorting.to_str().unwrap(), "--query", q], "");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        format!("{q}\nResult = [s_X ---> (1,2,3,3,4)] ;\nfalse.\n")
    );
}

#[test]
fn proximity_transcripts_batch() {
    let rho = program("proximity.rho");
    let prox = program("proximity.prox");
    let queries = [
        ("(a,b,d,b,c)", "0.5", "0.6", "(d,c)"),
        ("(a,b,d,b,c)", "0.7", "0.8", "(a,d,c)"),
        ("(b,d,b,c,a)", "0.5", "0.6", "(d,c,a)"),
        ("(b,d,b,c,a)", "0.7", "0.8", "(d,c,a)"),
    ];
    let mut args = vec![
        "--load".to_string(),
        rho.display().to_string(),
        "--prox".into(),
        prox.display().to_string(),
    ];
    let mut expected = Vec::new();
    for (input, lambda, degree, out) in queries {
        let q = format!("?(merge_all_proximals :: {input} ==> s_Ans, {lambda}, Degree, Result).");
        expected.push(format!(
            "{q}\nDegree = {degree},\nResult = [s_Ans ---> {out}] ;\nfalse.\n"
        ));
        args.push("--query".into());
        args.push(q);
    }
    let args: Vec<&str> = args.iter().map(String::as_str).collect();
    let first = rholog(&args, "");
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(stdout(&first), expected.join("\n"));
    // Byte-stable across runs.
    assert_eq!(stdout(&rholog(&args, "")), stdout(&first));
}

#[test]
fn rewriting_interactive_session() {
    let rho = program("rewriting.rho");
    let input = "?(rewrite_step(st) :: f(f(g(a),a),a) ==> i_X, Result).\n;\n;\n;\nhalt.\n";
    let o = rholog(&["--load", rho.to_str().unwrap()], input);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "rholog> Result = [i_X ---> f(f(g(b),a),a)] Result = [i_X ---> f(f(g(a),b),a)] \
         Result = [i_X ---> f(f(g(a),a),b)] false.\nrholog> "
    );
}

#[test]
fn interactive_proximity_session() {
    let rho = program("proximity.rho");
    let prox = program("proximity.prox");
    let input = "?(merge_all_proximals :: (a,b,d,b,c) ==> s_Ans, 0.7, Degree, Result).\n;\n";
    let o = rholog(
        &[
            "--load",
            rho.to_str().unwrap(),
            "--prox",
            prox.to_str().unwrap(),
        ],
        input,
    );
    assert_eq!(
        stdout(&o),
        "rholog> Degree = 0.8,\nResult = [s_Ans ---> (a,d,c)] false.\nrholog> "
    );
}

#[test]
fn unknown_strategy_keeps_the_prompt() {
    let o = rholog(&[], "?(foo :: a ==> i_X, R).\n?(id :: a ==> a, R).\n");
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "rholog> error: unknown strategy foo/0\nrholog> R = [] .\nrholog> "
    );
}

#[test]
fn load_errors_exit_with_one() {
    let o = rholog(
        &[
            "--load",
            "/nonexistent/file.rho",
            "--query",
            "?(id :: a ==> a, R).",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(1));
    let dir = scratch_dir("bad");
    let bad = dir.join("bad.rho");
    std::fs::write(&bad, "st :: f(a ==> b.").unwrap();
    let o = rholog(
        &[
            "--load",
            bad.to_str().unwrap(),
            "--query",
            "?(id :: a ==> a, R).",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.rho:1:"), "{err}");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn query_errors_exit_with_two() {
    let o = rholog(&["--query", "?(id :: a ==> "], "");
    assert_eq!(o.status.code(), Some(2));
    let o = rholog(&["--query", "?(nothing :: a ==> i_X, R)."], "");
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("unknown strategy nothing/0"));
}

#[test]
fn nf_limit_and_answer_limit_flags() {
    let dir = scratch_dir("grow");
    let grow = dir.join("grow.rho");
    std::fs::write(&grow, "grow :: s_X ==> (s_X, a).").unwrap();
    let o = rholog(
        &[
            "--load",
            grow.to_str().unwrap(),
            "--nf-limit",
            "5",
            "--query",
            "?(nf(grow) :: a ==> s_X, R).",
        ],
        "",
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr)
        .unwrap()
        .contains("step limit of 5"));
    let o = rholog(
        &[
            "--answers",
            "2",
            "--query",
            "?(id :: (a,b,c) ==> (s_X, s_Y), R).",
        ],
        "",
    );
    assert_eq!(
        stdout(&o),
        "?(id :: (a,b,c) ==> (s_X, s_Y), R).\nR = [s_X ---> eps, s_Y ---> (a,b,c)] ;\nR = [s_X ---> a, s_Y ---> (b,c)].\n"
    );
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn trace_goes_to_stderr() {
    let sorting = program("sorting.rho");
    let o = rholog(
        &[
            "--load",
            sorting.to_str().unwrap(),
            "--trace",
            "--query",
            "?(swap(=<) :: (2,1) ==> s_X, R).",
        ],
        "",
    );
    let err = String::from_utf8(o.stderr.clone()).unwrap();
    assert!(
        err.contains("[trace] call swap(=<) :: (2,1) ==> s_X"),
        "{err}"
    );
    assert!(err.contains("[trace] try clause 1"), "{err}");
    assert_eq!(
        stdout(&o),
        "?(swap(=<) :: (2,1) ==> s_X, R).\nR = [s_X ---> (1,2)] ;\nfalse.\n"
    );
}
