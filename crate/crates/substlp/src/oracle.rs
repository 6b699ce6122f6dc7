//! Independent reference solver: a dense two-phase simplex over exact
//! rationals with Bland's anti-cycling rule, plus the exact certificate
//! checker. Nothing here shares code with the substitution path; agreement
//! between the two is evidence, not construction.

use crate::rat::{dot, Rat, RatMatrix};

#[derive(Clone, Debug, PartialEq)]
pub enum OracleStatus {
    Optimal { x: Vec<Rat>, z: Rat },
    Unbounded { ray: Vec<Rat> },
    Infeasible,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleOutcome {
    pub status: OracleStatus,
    pub pivots: usize,
}

/// `Ax <= b`, `x >= 0`, `c.x == z`, all exactly.
pub fn verify_solution(a: &RatMatrix, b: &[Rat], c: &[Rat], x: &[Rat], z: &Rat) -> bool {
    if x.len() != a.cols() || b.len() != a.rows() || c.len() != a.cols() {
        return false;
    }
    if x.iter().any(Rat::is_negative) {
        return false;
    }
    for (i, bi) in b.iter().enumerate() {
        if &dot(a.row(i), x) > bi {
            return false;
        }
    }
    dot(c, x) == *z
}

struct SimplexTableau {
    /// m rows over columns [structural | slack | artificial].
    rows: Vec<Vec<Rat>>,
    rhs: Vec<Rat>,
    basis: Vec<usize>,
    /// Reduced-cost row and current objective value for the active phase.
    rc: Vec<Rat>,
    obj: Rat,
    pivots: usize,
}

impl SimplexTableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.rows[row][col].clone();
        debug_assert!(!piv.is_zero());
        let inv = piv.recip();
        for v in self.rows[row].iter_mut() {
            *v = &*v * &inv;
        }
        self.rhs[row] = &self.rhs[row] * &inv;
        for i in 0..self.rows.len() {
            if i == row {
                continue;
            }
            let factor = self.rows[i][col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..self.rows[i].len() {
                let delta = &factor * &self.rows[row][j];
                self.rows[i][j] = &self.rows[i][j] - &delta;
            }
            self.rhs[i] = &self.rhs[i] - &(&factor * &self.rhs[row]);
        }
        let factor = self.rc[col].clone();
        if !factor.is_zero() {
            for j in 0..self.rc.len() {
                let delta = &factor * &self.rows[row][j];
                self.rc[j] = &self.rc[j] - &delta;
            }
            self.obj = &self.obj + &(&factor * &self.rhs[row]);
        }
        self.basis[row] = col;
        self.pivots += 1;
    }

    /// Bland: entering is the lowest-index improving column, leaving is the
    /// minimum-ratio row with the smallest basic index on ties. Returns the
    /// entering column when no ratio blocks (unbounded direction).
    fn run(&mut self, allowed_cols: usize) -> Option<usize> {
        loop {
            let enter = (0..allowed_cols).find(|&j| self.rc[j].is_positive())?;
            let mut leave: Option<usize> = None;
            let mut best: Option<Rat> = None;
            for i in 0..self.rows.len() {
                if !self.rows[i][enter].is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / &self.rows[i][enter];
                let better = match &best {
                    None => true,
                    Some(b) => {
                        ratio < *b
                            || (ratio == *b
                                && self.basis[i] < self.basis[leave.expect("set with best")])
                    }
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
            match leave {
                Some(row) => self.pivot(row, enter),
                None => return Some(enter),
            }
        }
    }
}

/// Exact optimum of `max c.x s.t. Ax <= b, x >= 0`: phase 1 drives out
/// artificials for rows with negative right sides, phase 2 optimizes with
/// the same Bland rule. Termination is guaranteed.
pub fn simplex_solve(a: &RatMatrix, b: &[Rat], c: &[Rat]) -> OracleOutcome {
    let m = a.rows();
    let n = a.cols();
    assert_eq!(b.len(), m, "b length");
    assert_eq!(c.len(), n, "c length");

    let num_art = b.iter().filter(|v| v.is_negative()).count();
    let total = n + m + num_art;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rat> = Vec::with_capacity(m);
    let mut basis: Vec<usize> = Vec::with_capacity(m);
    let mut next_art = n + m;
    for i in 0..m {
        let mut row = vec![Rat::zero(); total];
        let negate = b[i].is_negative();
        for (j, slot) in row.iter_mut().enumerate().take(n) {
            let v = a.get(i, j).clone();
            *slot = if negate { -v } else { v };
        }
        row[n + i] = if negate { -Rat::one() } else { Rat::one() };
        if negate {
            row[next_art] = Rat::one();
            basis.push(next_art);
            next_art += 1;
            rhs.push(-&b[i]);
        } else {
            basis.push(n + i);
            rhs.push(b[i].clone());
        }
        rows.push(row);
    }

    let mut tab = SimplexTableau {
        rows,
        rhs,
        basis,
        rc: vec![Rat::zero(); total],
        obj: Rat::zero(),
        pivots: 0,
    };

    if num_art > 0 {
        // Phase 1: maximize -(sum of artificials). Reduced costs start as the
        // sum of the artificial-basic rows; objective as minus their rhs sum.
        for i in 0..m {
            if tab.basis[i] >= n + m {
                for j in 0..total {
                    tab.rc[j] = &tab.rc[j] + &tab.rows[i][j];
                }
                tab.obj = &tab.obj - &tab.rhs[i];
            }
        }
        for j in n + m..total {
            tab.rc[j] = &tab.rc[j] - &Rat::one();
        }
        let unbounded = tab.run(total);
        debug_assert!(unbounded.is_none(), "phase 1 is bounded by zero");
        if tab.obj.is_negative() {
            return OracleOutcome {
                status: OracleStatus::Infeasible,
                pivots: tab.pivots,
            };
        }
        // Drive any leftover artificial out of the basis; an all-zero row is
        // redundant and dropped.
        let mut i = 0;
        while i < tab.rows.len() {
            if tab.basis[i] >= n + m {
                match (0..n + m).find(|&j| !tab.rows[i][j].is_zero()) {
                    Some(j) => tab.pivot(i, j),
                    None => {
                        tab.rows.remove(i);
                        tab.rhs.remove(i);
                        tab.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        for row in tab.rows.iter_mut() {
            row.truncate(n + m);
        }
    }

    // Phase 2 objective.
    tab.rc = vec![Rat::zero(); n + m];
    tab.obj = Rat::zero();
    tab.rc[..n].clone_from_slice(c);
    for i in 0..tab.rows.len() {
        let bvar = tab.basis[i];
        let cb = if bvar < n { c[bvar].clone() } else { Rat::zero() };
        if cb.is_zero() {
            continue;
        }
        for j in 0..n + m {
            tab.rc[j] = &tab.rc[j] - &(&cb * &tab.rows[i][j]);
        }
        tab.obj = &tab.obj + &(&cb * &tab.rhs[i]);
    }

    if let Some(enter) = tab.run(n + m) {
        // Unbounded: the ray raises the entering variable by one and adjusts
        // the basic variables along its column.
        let mut ray = vec![Rat::zero(); n];
        if enter < n {
            ray[enter] = Rat::one();
        }
        for i in 0..tab.rows.len() {
            if tab.basis[i] < n {
                ray[tab.basis[i]] = -&tab.rows[i][enter];
            }
        }
        return OracleOutcome {
            status: OracleStatus::Unbounded { ray },
            pivots: tab.pivots,
        };
    }

    let mut x = vec![Rat::zero(); n];
    for i in 0..tab.rows.len() {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.rhs[i].clone();
        }
    }
    let z = dot(c, &x);
    OracleOutcome {
        status: OracleStatus::Optimal { x, z },
        pivots: tab.pivots,
    }
}
