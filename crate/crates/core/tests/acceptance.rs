//! One line per acceptance criterion. Every comparison is exact rational or
//! integer equality; there is no floating-point tolerance anywhere.

use superw_core::verify::{run_suite, Level};

#[test]
fn acceptance() {
    let level = match std::env::var("SUPERW_VERIFY_LEVEL").as_deref() {
        Ok("quick") => Level::Quick,
        _ => Level::Full,
    };
    let results = run_suite(level);
    println!("acceptance ({level:?}, tolerance: exact equality)");
    for r in &results {
        println!("{r}");
    }
    let failed: Vec<u8> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
