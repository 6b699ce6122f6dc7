//! Build a small problem in code and solve it: maximize 3x1 + 2x2 subject to
//! x1 + x2 <= 4, x1 + 3x2 <= 6, x >= 0. Everything is exact.

use substlp::rat::RatMatrix;
use substlp::{lpp_solve, rat, LppKind};

fn main() {
    let a = RatMatrix::from_ints(&[&[1, 1], &[1, 3]]);
    let b = vec![rat!(4), rat!(6)];
    let c = vec![rat!(3), rat!(2)];

    let outcome = lpp_solve(&a, &b, &c).expect("well-formed input");
    match &outcome.kind {
        LppKind::PositiveMax { z, x } => {
            println!("maximum z = {z}");
            for (j, xj) in x.iter().enumerate() {
                println!("  x{} = {xj}", j + 1);
            }
        }
        other => println!("unexpected outcome: {other:?}"),
    }
    println!(
        "solved in {} substitution steps",
        outcome.primal.substitutions()
    );
}
