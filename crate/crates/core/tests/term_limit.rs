use cckit::cli::{run, EXIT_INPUT, TERM_LIMIT_ENV};

// Own test binary: the limit is process-wide.
#[test]
fn oversized_expressions_abort_with_an_input_error() {
    std::env::set_var(TERM_LIMIT_ENV, "2");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(["cckit", "suite", "-e", "acc3", "--trials", "1"], &mut out, &mut err);
    assert_eq!(code, EXIT_INPUT);
    let msg = String::from_utf8(err).unwrap();
    assert!(msg.contains(TERM_LIMIT_ENV), "{msg}");

    std::env::set_var(TERM_LIMIT_ENV, "lots");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["cckit", "classify", "-e", "acc3"], &mut out, &mut err), EXIT_INPUT);

    std::env::set_var(TERM_LIMIT_ENV, "0");
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(["cckit", "suite", "-e", "acc3", "--trials", "1"], &mut out, &mut err), 0);
}
