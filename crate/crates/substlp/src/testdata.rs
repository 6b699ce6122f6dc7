//! Shared unit-test fixtures: the two worked instances and their
//! intermediate tableaux, all exact.

use crate::cone::Tableau;
use crate::rat::{Rat, RatMatrix};

/// Parse a grid: rows separated by `;`, entries by whitespace.
pub fn grid(text: &str) -> Vec<Vec<Rat>> {
    text.split(';')
        .map(|row| {
            row.split_whitespace()
                .map(|tok| tok.parse().expect("bad rational in fixture"))
                .collect()
        })
        .collect()
}

/// Mid-run state of the positive-maximum instance after its first
/// substitution: variables x2, x3, x4 remain, cost is -x2 + 3500 h.
pub const POSMAX_STEP1: &str = "1 0 1 0 0 -3500;
     0 0 1 0 0 -3500;
     0 0 1/10 -1 -1/10 -1/5;
     0 0 -10 -30 2 13;
     0 0 0 -6 -3 4";

pub const POSMAX_STEP2: &str = "1 0 1 0 0 -3500;
     0 0 1 0 0 -3500;
     0 0 -2/5 -5/2 0 9/20;
     0 0 -5 -15 0 13/2;
     0 0 -15 -51 0 47/2";

pub const POSMAX_STEP3: &str = "1 0 1 0 0 -3500;
     0 0 1 0 0 -3500;
     0 0 57/170 0 0 -179/255;
     0 0 -10/17 0 0 -7/17;
     0 0 15/51 0 0 -47/102";

pub fn posmax_state1() -> Tableau {
    Tableau::from_grid(grid(POSMAX_STEP1), [2usize, 3, 4].into_iter().collect(), 1).unwrap()
}

/// The negative-maximum instance: maximize -x1 + x2 - 3x3 over five rows.
pub fn instance_negmax() -> (RatMatrix, Vec<Rat>, Vec<Rat>) {
    let a = RatMatrix::from_ints(&[
        &[-2, 3, 0],
        &[4, 1, 0],
        &[-1, -3, 7],
        &[-1, -1, -2],
        &[1, -2, -3],
    ]);
    let b = [-1, 7, 29, -6, -4].iter().map(|&x| Rat::from_int(x)).collect();
    let c = [-1, 1, -3].iter().map(|&x| Rat::from_int(x)).collect();
    (a, b, c)
}

pub const NEGMAX_STEP0: &str = "1 1 -1 3 0;
     0 1 -1 3 0;
     0 -2 3 0 1;
     0 4 1 0 -7;
     0 -1 -3 7 -29;
     0 -1 -1 -2 6;
     0 1 -2 -3 4";

pub const NEGMAX_STEP1: &str = "1 0 1/2 3 1/2;
     0 0 1/2 3 1/2;
     0 0 -3/2 0 -1/2;
     0 0 7 0 -5;
     0 0 -9/2 7 -59/2;
     0 0 -5/2 -2 11/2;
     0 0 -1/2 -3 9/2";

pub const NEGMAX_DUAL_STEP0: &str = "1 -1 7 29 -6 -4 0;
     0 -1 7 29 -6 -4 0;
     0 2 -4 1 1 -1 -1;
     0 -3 -1 3 1 2 1;
     0 0 0 -7 2 3 -3";

pub const NEGMAX_DUAL_STEP1: &str = "1 -1 7 8 0 5 -9;
     0 -1 7 8 0 5 -9;
     0 2 -4 9/2 0 -5/2 1/2;
     0 -3 -1 13/2 0 1/2 5/2;
     0 0 0 -7/2 0 3/2 -3/2";

pub const NEGMAX_DUAL_STEP2: &str = "1 0 5 41/4 0 15/4 -35/4;
     0 0 5 41/4 0 15/4 -35/4;
     0 0 -2 9/4 0 -5/4 1/4;
     0 0 -7 53/4 0 -13/4 13/4;
     0 0 0 -7/2 0 3/2 -3/2";

pub const NEGMAX_DUAL_STEP3: &str = "1 0 0 138/7 0 10/7 -45/7;
     0 0 0 138/7 0 10/7 -45/7;
     0 0 0 -43/28 0 -9/28 -19/28;
     0 0 0 -53/28 0 13/28 -13/28;
     0 0 0 -7/2 0 3/2 -3/2";
