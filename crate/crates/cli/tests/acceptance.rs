//! Runs acceptance criteria 1 to 8 and prints one line per criterion.
//!
//! Three criteria fail on the data as given. Their failing cases are pinned
//! below, so this target stays green only while the failures are exactly the
//! recorded ones; a new failure or an unexpected pass both break it.

use std::time::Instant;

use foldkit_cli::suites::{run_suite, SUITES};

/// Criterion number and the failing case names it is known to produce.
const KNOWN_FAILURES: &[(u8, &[&str])] = &[
    (
        2,
        &[
            "I2(3)^2 alternating product",
            "I2(4)^2 alternating product",
            "I2(5)^2 alternating product",
            "A4 ⊃ B2",
        ],
    ),
    (3, &["a4b2"]),
    (5, &["B2 into A3, I(t) = {s1, s3}", "B2 into A4, I(t) = {s1, s4}"]),
];

fn main() {
    let mut surprises = Vec::new();
    for (i, name) in SUITES.iter().enumerate() {
        let start = Instant::now();
        let result = run_suite(name).expect("suite exists");
        let elapsed = start.elapsed().as_secs_f64();
        assert_eq!(result.criterion as usize, i + 1);

        let failed: Vec<&str> = result.failures().map(|c| c.name.as_str()).collect();
        let verdict = if result.passed() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {} {name}: {verdict} ({} cases, {elapsed:.2}s)",
            result.criterion,
            result.cases.len()
        );
        if !failed.is_empty() {
            line.push_str(&format!("; failing: {}", failed.join("; ")));
        }
        println!("{line}");

        let expected: &[&str] = KNOWN_FAILURES
            .iter()
            .find(|(c, _)| *c == result.criterion)
            .map(|(_, f)| *f)
            .unwrap_or(&[]);
        if failed != expected {
            surprises.push(format!("criterion {}: failing {failed:?}, recorded {expected:?}", result.criterion));
        }
    }
    if !surprises.is_empty() {
        eprintln!("{}", surprises.join("\n"));
        std::process::exit(1);
    }
}
