//! An instance whose maximum is negative: the first search collapses the
//! homogenization variable to zero, so the companion problem is solved
//! instead and its maximum is negated.

use substlp::pmrp::PmrpStatus;
use substlp::rat::{Rat, RatMatrix};
use substlp::{lpp_solve, LppKind};

fn main() {
    let a = RatMatrix::from_ints(&[
        &[-2, 3, 0],
        &[4, 1, 0],
        &[-1, -3, 7],
        &[-1, -1, -2],
        &[1, -2, -3],
    ]);
    let b: Vec<Rat> = [-1, 7, 29, -6, -4].iter().map(|&v| Rat::from_int(v)).collect();
    let c: Vec<Rat> = [-1, 1, -3].iter().map(|&v| Rat::from_int(v)).collect();

    let outcome = lpp_solve(&a, &b, &c).expect("well-formed input");

    println!("primal run:");
    for step in &outcome.primal.trace {
        println!(
            "  k={} case {} forced={:?}",
            step.k,
            step.case,
            step.forced_zero
        );
    }
    assert_eq!(outcome.primal.status, PmrpStatus::HZero);

    let dual = outcome.dual.as_ref().expect("companion run happened");
    println!("companion run:");
    for step in &dual.trace {
        match &step.selection {
            Some(sel) => println!("  k={} case {} substituted y{} via row {}",
                step.k, step.case, sel.chosen.1, sel.chosen.0),
            None => println!("  k={} case {}", step.k, step.case),
        }
    }

    match &outcome.kind {
        LppKind::NegativeMax { z, y } => {
            println!("negative maximum z = {z}");
            for (j, yj) in y.iter().enumerate() {
                println!("  y{} = {yj}", j + 1);
            }
        }
        other => println!("unexpected outcome: {other:?}"),
    }
}
