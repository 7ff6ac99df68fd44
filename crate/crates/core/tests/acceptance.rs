//! Acceptance suite: runs every shipped criterion and prints one line per
//! result.

use torus_classify::acceptance::run_all;

#[test]
fn acceptance_criteria() {
    let results = run_all();
    let mut failed = 0;
    for r in &results {
        println!("{}", r.line());
        if !r.passed() {
            failed += 1;
        }
    }
    assert_eq!(failed, 0, "{} acceptance criteria failed", failed);
}
