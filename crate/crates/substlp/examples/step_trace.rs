//! Resume the solver from a saved mid-run tableau and watch every step: the
//! partition, the candidate pairs, the two-stage selection, and the exact
//! tableau each substitution produces.

use substlp::pmrp::{resume, PmrpStatus};
use substlp::rat::Rat;
use substlp::{EqualityLedger, Tableau};

fn parse_grid(text: &str) -> Vec<Vec<Rat>> {
    text.split(';')
        .map(|row| row.split_whitespace().map(|t| t.parse().unwrap()).collect())
        .collect()
}

fn main() {
    // One variable is already substituted (its column is zero); x2, x3, x4
    // remain and the cost is -x2 + 3500 h.
    let grid = parse_grid(
        "1 0 1 0 0 -3500;
         0 0 1 0 0 -3500;
         0 0 1/10 -1 -1/10 -1/5;
         0 0 -10 -30 2 13;
         0 0 0 -6 -3 4",
    );
    let tableau = Tableau::from_grid(grid, [2, 3, 4].into_iter().collect(), 1)
        .expect("valid saved state");

    let outcome = resume(tableau, EqualityLedger::new());

    for step in &outcome.trace {
        println!("step k={} (case {}):", step.k, step.case);
        println!(
            "  partition: +{:?} 0{:?} -{:?}",
            step.partition.xplus, step.partition.xzero, step.partition.xminus
        );
        if !step.candidates.is_empty() {
            println!(
                "  candidates [{}]: {:?}",
                step.candidate_kind.unwrap_or("-"),
                step.candidates
            );
        }
        if let Some(sel) = &step.selection {
            print!(
                "  chose {:?} in class ({}, {}) with image {}",
                sel.chosen, sel.class_pair.0, sel.class_pair.1, sel.primary
            );
            match &sel.secondary {
                Some(s) => println!(", tie broken at {s}"),
                None => println!(),
            }
        }
        for row in &step.tableau.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            println!("    [{}]", cells.join("  "));
        }
        println!(
            "  cells read: sweeps={} candidates={} selection={} update={}",
            step.counters.sweeps,
            step.counters.candidates,
            step.counters.selection,
            step.counters.update
        );
    }

    if let PmrpStatus::MaxFound { zcoef, assignment } = &outcome.status {
        println!("maximum z = {zcoef} * h, attained at");
        for (var, coef) in assignment {
            println!("  x{var} = {coef} * h");
        }
    }
}
