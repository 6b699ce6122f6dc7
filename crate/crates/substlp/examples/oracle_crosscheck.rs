//! Run the substitution solver and the independent simplex oracle on the same
//! instance, verify the certificate, and classify the agreement.

use substlp::fuzz::{classify, Classification};
use substlp::rat::RatMatrix;
use substlp::{lpp_solve, rat, simplex_solve, verify_solution, LppKind, OracleStatus};

fn main() {
    let a = RatMatrix::from_ints(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
    let b = vec![rat!(10), rat!(15), rat!(12)];
    let c = vec![rat!(1), rat!(2), rat!(3)];

    let method = lpp_solve(&a, &b, &c).expect("well-formed input");
    let oracle = simplex_solve(&a, &b, &c);

    match &method.kind {
        LppKind::PositiveMax { z, x } => {
            println!("substitution method: z = {z}, x = {:?}", rats(x));
            println!(
                "certificate check: {}",
                verify_solution(&a, &b, &c, x, z)
            );
        }
        other => println!("substitution method: {other:?}"),
    }
    match &oracle.status {
        OracleStatus::Optimal { z, x } => {
            println!(
                "simplex oracle:      z = {z}, x = {:?} ({} pivots)",
                rats(x),
                oracle.pivots
            );
        }
        other => println!("simplex oracle: {other:?}"),
    }

    let class = classify(&method, &oracle);
    println!("classification: {}", class.as_str());
    assert_eq!(class, Classification::Agree);
}

fn rats(v: &[substlp::Rat]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}
