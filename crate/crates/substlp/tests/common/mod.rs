//! Shared fixtures and the brute-force reference used only by tests: vertex
//! enumeration over exact rationals, independent of both solver paths.

#![allow(dead_code)]

use substlp::rat::{dot, Rat, RatMatrix};

pub fn r(s: &str) -> Rat {
    s.parse().unwrap()
}

pub fn grid(text: &str) -> Vec<Vec<Rat>> {
    text.split(';')
        .map(|row| row.split_whitespace().map(r).collect())
        .collect()
}

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

pub const NEGMAX_STEP1: &str = "1 0 1/2 3 1/2;
     0 0 1/2 3 1/2;
     0 0 -3/2 0 -1/2;
     0 0 7 0 -5;
     0 0 -9/2 7 -59/2;
     0 0 -5/2 -2 11/2;
     0 0 -1/2 -3 9/2";

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

pub fn posmax_state1() -> substlp::Tableau {
    substlp::Tableau::from_grid(grid(POSMAX_STEP1), [2usize, 3, 4].into_iter().collect(), 1)
        .unwrap()
}

#[derive(Clone, Debug, PartialEq)]
pub enum BruteOutcome {
    Optimal(Rat),
    Unbounded,
    Infeasible,
}

/// Exact Gaussian solve of a square system; `None` when singular.
fn solve_square(rows: &[(&[Rat], &Rat)]) -> Option<Vec<Rat>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .map(|(row, rhs)| {
            let mut v: Vec<Rat> = row.to_vec();
            v.push((*rhs).clone());
            v
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !aug[i][col].is_zero())?;
        aug.swap(col, piv);
        let inv = aug[col][col].recip();
        for j in col..=n {
            aug[col][j] = &aug[col][j] * &inv;
        }
        for i in 0..n {
            if i == col || aug[i][col].is_zero() {
                continue;
            }
            let f = aug[i][col].clone();
            for j in col..=n {
                let delta = &f * &aug[col][j];
                aug[i][j] = &aug[i][j] - &delta;
            }
        }
    }
    Some((0..n).map(|i| aug[i][n].clone()).collect())
}

fn combinations(pool: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > pool {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k as isize - 1;
        while i >= 0 && idx[i as usize] == pool - k + i as usize {
            i -= 1;
        }
        if i < 0 {
            return out;
        }
        let i = i as usize;
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All basic feasible points of `rows` (each `lhs . x <= rhs`): solutions of
/// n-subsets taken as equalities that satisfy every inequality.
fn enumerate_vertices(rows: &[(Vec<Rat>, Rat)], n: usize) -> Vec<Vec<Rat>> {
    let mut verts = Vec::new();
    for subset in combinations(rows.len(), n) {
        let system: Vec<(&[Rat], &Rat)> = subset
            .iter()
            .map(|&i| (rows[i].0.as_slice(), &rows[i].1))
            .collect();
        let Some(x) = solve_square(&system) else {
            continue;
        };
        if rows.iter().all(|(lhs, rhs)| &dot(lhs, &x) <= rhs) {
            verts.push(x);
        }
    }
    verts
}

/// Second, simpler oracle: enumerate vertices of `{Ax <= b, x >= 0}`; decide
/// unboundedness by enumerating the boxed recession cone `{Ad <= 0,
/// 0 <= d <= 1}` and looking for a direction of positive cost.
pub fn brute_solve(a: &RatMatrix, b: &[Rat], c: &[Rat]) -> BruteOutcome {
    let m = a.rows();
    let n = a.cols();
    let mut rows: Vec<(Vec<Rat>, Rat)> = (0..m)
        .map(|i| (a.row(i).to_vec(), b[i].clone()))
        .collect();
    for j in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[j] = -Rat::one();
        rows.push((e, Rat::zero()));
    }
    let verts = enumerate_vertices(&rows, n);
    if verts.is_empty() {
        return BruteOutcome::Infeasible;
    }

    let mut rec_rows: Vec<(Vec<Rat>, Rat)> = (0..m)
        .map(|i| (a.row(i).to_vec(), Rat::zero()))
        .collect();
    for j in 0..n {
        let mut lo = vec![Rat::zero(); n];
        lo[j] = -Rat::one();
        rec_rows.push((lo, Rat::zero()));
        let mut hi = vec![Rat::zero(); n];
        hi[j] = Rat::one();
        rec_rows.push((hi, Rat::one()));
    }
    let dirs = enumerate_vertices(&rec_rows, n);
    if dirs.iter().any(|d| dot(c, d).is_positive()) {
        return BruteOutcome::Unbounded;
    }

    let best = verts
        .iter()
        .map(|v| dot(c, v))
        .max()
        .expect("nonempty vertex set");
    BruteOutcome::Optimal(best)
}
