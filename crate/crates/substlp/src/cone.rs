//! The homogenized tableau: rows labelled -1..m, columns z, x1..xn, h.
//! Row -1 encodes z <= cost, row 0 encodes cost >= 0, rows 1..m encode
//! Ax - bh <= 0. Substituted variables leave an all-zero column and stay in
//! place so row/column indices are stable across steps.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::bounds::BoundFunction;
use crate::rat::{Rat, RatMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConeError {
    DimMismatch(String),
    InactiveColumn(usize),
    /// The supplied function was not generated from the tableau cell it
    /// claims as its source.
    SourceMismatch { row: usize, col: usize },
    BadShape(String),
}

impl fmt::Display for ConeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeError::DimMismatch(s) => write!(f, "dimension mismatch: {s}"),
            ConeError::InactiveColumn(j) => write!(f, "variable x{j} is not active"),
            ConeError::SourceMismatch { row, col } => {
                write!(f, "bound function does not match tableau entry ({row}, {col})")
            }
            ConeError::BadShape(s) => write!(f, "bad tableau shape: {s}"),
        }
    }
}

impl std::error::Error for ConeError {}

/// One recorded equality, consumed later by backward substitution.
#[derive(Clone, Debug, PartialEq)]
pub enum LedgerEntry {
    /// `x_var = f(x, h)`.
    Substitution { var: usize, f: BoundFunction },
    /// `x_var = 0`.
    ForcedZero { var: usize },
    /// `z = ch * h`, closing the system.
    CostClose { ch: Rat },
}

/// Ordered, triangular record of substitution equalities and forced zeros.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct EqualityLedger {
    entries: Vec<LedgerEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LedgerError {
    DuplicateVariable(usize),
    /// An equality references a variable that no later entry resolves.
    NotTriangular(usize),
}

impl fmt::Display for LedgerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerError::DuplicateVariable(v) => write!(f, "variable x{v} ledgered twice"),
            LedgerError::NotTriangular(v) => {
                write!(f, "ledger is not triangular: x{v} unresolved")
            }
        }
    }
}

impl std::error::Error for LedgerError {}

impl EqualityLedger {
    pub fn new() -> Self {
        EqualityLedger::default()
    }

    pub fn entries(&self) -> &[LedgerEntry] {
        &self.entries
    }

    pub fn push(&mut self, entry: LedgerEntry) -> Result<(), LedgerError> {
        if let Some(v) = entry_var(&entry) {
            if self.entries.iter().filter_map(entry_var).any(|w| w == v) {
                return Err(LedgerError::DuplicateVariable(v));
            }
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn entry_var(e: &LedgerEntry) -> Option<usize> {
    match e {
        LedgerEntry::Substitution { var, .. } | LedgerEntry::ForcedZero { var } => Some(*var),
        LedgerEntry::CostClose { .. } => None,
    }
}

/// The homogenized cone matrix together with the remaining-variable set.
pub struct Tableau {
    mat: RatMatrix,
    m: usize,
    n: usize,
    active: BTreeSet<usize>,
    step: usize,
    var_prefix: char,
    reads: AtomicU64,
}

impl Clone for Tableau {
    fn clone(&self) -> Self {
        Tableau {
            mat: self.mat.clone(),
            m: self.m,
            n: self.n,
            active: self.active.clone(),
            step: self.step,
            var_prefix: self.var_prefix,
            reads: AtomicU64::new(self.reads()),
        }
    }
}

impl Tableau {
    /// Build the cone for `max cᵀx s.t. Ax <= b, x >= 0`: rows -1 and 0 carry
    /// the negated cost with the h-cost starting at zero, rows 1..m carry
    /// `Ax - bh <= 0`.
    pub fn homogenize(a: &RatMatrix, b: &[Rat], c: &[Rat]) -> Result<Tableau, ConeError> {
        let m = a.rows();
        let n = a.cols();
        if b.len() != m {
            return Err(ConeError::DimMismatch(format!(
                "b has {} entries for {} rows",
                b.len(),
                m
            )));
        }
        if c.len() != n {
            return Err(ConeError::DimMismatch(format!(
                "c has {} entries for {} columns",
                c.len(),
                n
            )));
        }
        let mut mat = RatMatrix::zeros(m + 2, n + 2);
        mat.set(0, 0, Rat::one());
        for (j, cj) in c.iter().enumerate() {
            mat.set(0, j + 1, -cj);
            mat.set(1, j + 1, -cj);
        }
        // h-cost starts at zero, so the h entries of rows -1 and 0 are zero.
        for (i, bi) in b.iter().enumerate() {
            for j in 0..n {
                mat.set(i + 2, j + 1, a.get(i, j).clone());
            }
            mat.set(i + 2, n + 1, -bi);
        }
        Ok(Tableau {
            mat,
            m,
            n,
            active: (1..=n).collect(),
            step: 0,
            var_prefix: 'x',
            reads: AtomicU64::new(0),
        })
    }

    /// Rebuild a tableau from a raw grid (rows -1..m), e.g. to resume a
    /// partially substituted state.
    pub fn from_grid(
        rows: Vec<Vec<Rat>>,
        active: BTreeSet<usize>,
        step: usize,
    ) -> Result<Tableau, ConeError> {
        if rows.len() < 2 {
            return Err(ConeError::BadShape("need at least rows -1 and 0".into()));
        }
        let cols = rows[0].len();
        if cols < 2 {
            return Err(ConeError::BadShape("need at least z and h columns".into()));
        }
        if rows.iter().any(|r| r.len() != cols) {
            return Err(ConeError::BadShape("ragged rows".into()));
        }
        let m = rows.len() - 2;
        let n = cols - 2;
        if rows[0][0] != Rat::one() || rows.iter().skip(1).any(|r| !r[0].is_zero()) {
            return Err(ConeError::BadShape("z column must be (1, 0, ..., 0)".into()));
        }
        if active.iter().any(|&j| j == 0 || j > n) {
            return Err(ConeError::BadShape("active set outside 1..=n".into()));
        }
        for j in 1..=n {
            if !active.contains(&j) && rows.iter().any(|r| !r[j].is_zero()) {
                return Err(ConeError::BadShape(format!(
                    "inactive variable x{j} has a nonzero column"
                )));
            }
        }
        Ok(Tableau {
            mat: RatMatrix::from_rows(rows),
            m,
            n,
            active,
            step,
            var_prefix: 'x',
            reads: AtomicU64::new(0),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn step(&self) -> usize {
        self.step
    }

    pub fn active(&self) -> &BTreeSet<usize> {
        &self.active
    }

    pub fn is_active(&self, j: usize) -> bool {
        self.active.contains(&j)
    }

    pub fn h_col(&self) -> usize {
        self.n + 1
    }

    pub fn set_var_prefix(&mut self, p: char) {
        self.var_prefix = p;
    }

    pub fn var_prefix(&self) -> char {
        self.var_prefix
    }

    /// Instrumented cell access; `i` ranges over -1..=m.
    pub fn entry(&self, i: i64, j: usize) -> &Rat {
        self.reads.fetch_add(1, AtomicOrdering::Relaxed);
        self.raw_entry(i, j)
    }

    /// Uncounted access for serialization, assertions and tests.
    pub fn raw_entry(&self, i: i64, j: usize) -> &Rat {
        debug_assert!(i >= -1 && i <= self.m as i64);
        self.mat.get((i + 1) as usize, j)
    }

    fn set_entry(&mut self, i: i64, j: usize, v: Rat) {
        let r = (i + 1) as usize;
        self.mat.set(r, j, v);
    }

    /// Current cost coefficient of `x_j` (row -1 stores the negation).
    pub fn cost_coeff(&self, j: usize) -> Rat {
        -self.entry(-1, j)
    }

    /// Current h-cost (row -1 stores `-c_h` in the h column).
    pub fn cost_h(&self) -> Rat {
        -self.entry(-1, self.h_col())
    }

    pub fn reads(&self) -> u64 {
        self.reads.load(AtomicOrdering::Relaxed)
    }

    fn charge_reads(&self, k: u64) {
        self.reads.fetch_add(k, AtomicOrdering::Relaxed);
    }

    /// Zero every row in 0..=m whose entries are all <= 0. Row -1 is never
    /// touched. Returns whether anything changed.
    pub fn set_row_to_zero(&mut self) -> bool {
        let cols = self.n + 2;
        let mut changed = false;
        for i in 0..=self.m as i64 {
            let mut all_nonpos = true;
            let mut all_zero = true;
            for j in 0..cols {
                let v = self.entry(i, j);
                if v.is_positive() {
                    all_nonpos = false;
                    break;
                }
                if !v.is_zero() {
                    all_zero = false;
                }
            }
            if all_nonpos && !all_zero {
                for j in 0..cols {
                    self.set_entry(i, j, Rat::zero());
                }
                changed = true;
            }
        }
        changed
    }

    /// Columns forced to zero: for every row in 0..=m that is entirely >= 0,
    /// each column holding a strictly positive entry. The h column may be
    /// among them.
    pub fn check_nul_var(&self) -> Vec<usize> {
        let cols = self.n + 2;
        let mut forced = BTreeSet::new();
        for i in 0..=self.m as i64 {
            let mut nonneg = true;
            for j in 0..cols {
                if self.entry(i, j).is_negative() {
                    nonneg = false;
                    break;
                }
            }
            if !nonneg {
                continue;
            }
            for j in 0..cols {
                if self.entry(i, j).is_positive() {
                    forced.insert(j);
                }
            }
        }
        forced.into_iter().collect()
    }

    /// Zero out a variable column and drop it from the remaining set.
    pub fn clear_column(&mut self, j: usize) {
        debug_assert!(j >= 1 && j <= self.n, "only variable columns are cleared");
        for i in -1..=self.m as i64 {
            self.set_entry(i, j, Rat::zero());
        }
        self.active.remove(&j);
    }

    /// Substitute the variable at `f.source = (i*, j*)`: build the transition
    /// matrix (identity with row j* replaced by the function) and the
    /// correction carrying `x_{j*} >= 0` in row i*, then take the matrix
    /// product and add the correction. The result is returned raw; sweeps run
    /// separately. The solve loop only ever passes bounds sourced in rows
    /// 1..=m: row 0 holds the negated cost, so its sign pattern keeps it out
    /// of every candidate pool.
    pub fn apply_substitution(&mut self, f: &BoundFunction) -> Result<(), ConeError> {
        let (i_star, j_star) = f.source();
        if !self.is_active(j_star) {
            return Err(ConeError::InactiveColumn(j_star));
        }
        // The function must actually come from cell (i*, j*) of this tableau:
        // a_ij * v_j' = -a_ij' for every other column, and a_ij * r = -a_ih.
        let a = self.raw_entry(i_star as i64, j_star).clone();
        if a.is_zero() || !f.v()[j_star - 1].is_zero() {
            return Err(ConeError::SourceMismatch {
                row: i_star,
                col: j_star,
            });
        }
        for j in 1..=self.n {
            if j == j_star {
                continue;
            }
            if &a * &f.v()[j - 1] != -self.raw_entry(i_star as i64, j) {
                return Err(ConeError::SourceMismatch {
                    row: i_star,
                    col: j_star,
                });
            }
        }
        if &a * f.r() != -self.raw_entry(i_star as i64, self.h_col()) {
            return Err(ConeError::SourceMismatch {
                row: i_star,
                col: j_star,
            });
        }

        let dim = self.n + 2;
        let mut trans = RatMatrix::identity(dim);
        trans.set(j_star, j_star, Rat::zero());
        for j in 1..=self.n {
            trans.set(j_star, j, f.v()[j - 1].clone());
        }
        trans.set(j_star, self.n + 1, f.r().clone());

        let prod = self
            .mat
            .mul(&trans)
            .map_err(|e| ConeError::DimMismatch(e.to_string()))?;
        // The product reads every tableau cell n+2 times.
        self.charge_reads(((self.m + 2) * dim * dim) as u64);

        let mut correction = RatMatrix::zeros(self.m + 2, dim);
        for j in 1..=self.n {
            correction.set(i_star + 1, j, -&f.v()[j - 1]);
        }
        correction.set(i_star + 1, self.n + 1, -f.r());

        self.mat = prod
            .add(&correction)
            .map_err(|e| ConeError::DimMismatch(e.to_string()))?;
        self.active.remove(&j_star);
        self.step += 1;
        Ok(())
    }

    pub fn snapshot(&self) -> TableauSnapshot {
        let mut row_labels = Vec::with_capacity(self.m + 2);
        for i in -1..=(self.m as i64) {
            row_labels.push(i.to_string());
        }
        let mut col_labels = Vec::with_capacity(self.n + 2);
        col_labels.push("z".to_string());
        for j in 1..=self.n {
            col_labels.push(format!("{}{}", self.var_prefix, j));
        }
        col_labels.push("h".to_string());
        TableauSnapshot {
            step: self.step,
            rows: self.mat.to_rows(),
            row_labels,
            col_labels,
            active: self.active.iter().copied().collect(),
        }
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Tableau step {} active {:?}",
            self.step,
            self.active.iter().collect::<Vec<_>>()
        )?;
        write!(f, "{:?}", self.mat)
    }
}

/// Frozen copy of a tableau for step traces; rationals serialize as
/// `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TableauSnapshot {
    pub step: usize,
    pub rows: Vec<Vec<Rat>>,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub active: Vec<usize>,
}

/// Data of the companion problem: `(-Aᵀ, -c, -b)`.
pub fn dualize(a: &RatMatrix, b: &[Rat], c: &[Rat]) -> (RatMatrix, Vec<Rat>, Vec<Rat>) {
    let at = a.transpose().neg();
    let b2: Vec<Rat> = c.iter().map(|x| -x).collect();
    let c2: Vec<Rat> = b.iter().map(|x| -x).collect();
    (at, b2, c2)
}
