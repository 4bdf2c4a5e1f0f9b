//! Running a JSON job through the same path as the `noether` binary.

use noether::cli::{parse_job, run_job};

fn main() -> noether::Result<()> {
    let job = parse_job(
        r#"{
            "command": "ideal",
            "payload": {"op": "member", "ring": {"vars": ["x", "y"]},
                        "ideal": ["x^2 - y"], "element": "x^3 - x*y"},
            "budgets": {"max_pairs": 10000}
        }"#,
    )?;
    let report = run_job(&job).without_timings();
    print!("{}", report.to_text());
    println!("exit code {}", report.exit_code());
    Ok(())
}
