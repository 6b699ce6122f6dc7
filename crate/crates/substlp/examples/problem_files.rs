//! The file surfaces: parse a problem from JSON (rationals as "p/q"
//! strings), solve it, print the outcome report, and stream the step trace
//! as JSON-Lines.

use substlp::io::{outcome_report, parse_problem, write_trace_jsonl};
use substlp::rat::Rat;
use substlp::lpp_solve;

fn main() {
    let text = r#"{
        "name": "two-vars",
        "objective": ["5/2", "-1"],
        "A": [["1", "0"], ["-1", "2"], ["3", "1"]],
        "b": ["3", "4", "21/2"]
    }"#;

    let problem = parse_problem(text).expect("valid problem file");
    println!(
        "parsed {:?}: {} rows, {} columns",
        problem.name,
        problem.rows(),
        problem.cols()
    );

    let outcome = lpp_solve(&problem.matrix(), &problem.b, &problem.objective)
        .expect("consistent dimensions");

    let report = outcome_report(&outcome, &Rat::one());
    println!("{}", serde_json::to_string_pretty(&report).unwrap());

    let mut trace = Vec::new();
    write_trace_jsonl(&outcome, &mut trace).unwrap();
    println!("--- trace ({} lines) ---", trace.iter().filter(|&&b| b == b'\n').count());
    print!("{}", String::from_utf8(trace).unwrap());
}
