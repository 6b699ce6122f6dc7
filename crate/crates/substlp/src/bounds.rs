//! Bound functions read off tableau rows: solving row i for an active
//! variable x_j gives an upper bound when the entry is positive and a lower
//! bound when it is negative. The h-coefficient is taken from the tableau's
//! h column, which after step 0 is the only live carrier of the homogenized
//! right side.

use std::collections::BTreeSet;

use crate::cone::{ConeError, Tableau};
use crate::interval::{linear_image, DomainFlavor, HClass, IntervalMag};
use crate::rat::Rat;

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum BoundKind {
    Upper,
    Lower,
    /// Lower bound with all coefficients >= 0 and h-coefficient > 0; pins
    /// its variable strictly away from zero for h > 0.
    StrictlyPositiveLower,
}

impl BoundKind {
    pub fn is_lower(self) -> bool {
        !matches!(self, BoundKind::Upper)
    }
}

/// An (x,h)-linear bound on one variable, sourced at a tableau cell.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct BoundFunction {
    source: (usize, usize),
    v: Vec<Rat>,
    r: Rat,
    kind: BoundKind,
    hclass: HClass,
}

impl BoundFunction {
    pub fn source(&self) -> (usize, usize) {
        self.source
    }

    pub fn var(&self) -> usize {
        self.source.1
    }

    /// Coefficients over x1..xn; the entry at the bound's own variable is 0.
    pub fn v(&self) -> &[Rat] {
        &self.v
    }

    pub fn r(&self) -> &Rat {
        &self.r
    }

    pub fn kind(&self) -> BoundKind {
        self.kind
    }

    pub fn hclass(&self) -> HClass {
        self.hclass
    }

    pub fn eval(&self, x: &[Rat], h: &Rat) -> Rat {
        let mut acc = &self.r * h;
        for (idx, coeff) in self.v.iter().enumerate() {
            if !coeff.is_zero() {
                acc = acc + coeff * &x[idx];
            }
        }
        acc
    }

    pub fn image(&self, flavor: DomainFlavor) -> IntervalMag {
        linear_image(&self.v, &self.r, flavor)
    }

    /// Same function claimed against a different cell; for negative tests.
    pub fn with_source(&self, i: usize, j: usize) -> BoundFunction {
        BoundFunction {
            source: (i, j),
            ..self.clone()
        }
    }
}

/// A plain (x,h)-linear form; the current cost and its substituted images.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct LinForm {
    pub x: Vec<Rat>,
    pub h: Rat,
}

impl LinForm {
    pub fn eval(&self, x: &[Rat], h: &Rat) -> Rat {
        let mut acc = &self.h * h;
        for (idx, coeff) in self.x.iter().enumerate() {
            if !coeff.is_zero() {
                acc = acc + coeff * &x[idx];
            }
        }
        acc
    }

    pub fn hclass(&self) -> HClass {
        hclass_of(&self.x, &self.h)
    }

    pub fn image(&self, flavor: DomainFlavor) -> IntervalMag {
        linear_image(&self.x, &self.h, flavor)
    }
}

/// h-bounded iff every x coefficient is <= 0 and the h coefficient is > 0.
pub fn hclass_of(x: &[Rat], h: &Rat) -> HClass {
    if x.iter().all(|c| !c.is_positive()) && h.is_positive() {
        HClass::Bounded
    } else {
        HClass::Unbounded
    }
}

/// Solve row `i` for active variable `j`. Returns `None` when the entry is
/// zero (no bound exists there).
pub fn make_bound(t: &Tableau, i: usize, j: usize) -> Result<Option<BoundFunction>, ConeError> {
    if !t.is_active(j) {
        return Err(ConeError::InactiveColumn(j));
    }
    debug_assert!(i <= t.m());
    let a = t.entry(i as i64, j).clone();
    if a.is_zero() {
        return Ok(None);
    }
    let neg_inv = -a.recip();
    let mut v = vec![Rat::zero(); t.n()];
    for jp in 1..=t.n() {
        if jp == j {
            continue;
        }
        let entry = t.entry(i as i64, jp);
        if !entry.is_zero() {
            v[jp - 1] = &neg_inv * entry;
        }
    }
    let r = &neg_inv * t.entry(i as i64, t.h_col());
    let kind = if a.is_positive() {
        BoundKind::Upper
    } else if v.iter().all(|c| !c.is_negative()) && r.is_positive() {
        BoundKind::StrictlyPositiveLower
    } else {
        BoundKind::Lower
    };
    let hclass = hclass_of(&v, &r);
    Ok(Some(BoundFunction {
        source: (i, j),
        v,
        r,
        kind,
        hclass,
    }))
}

/// Which bounds to collect.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum KindFilter {
    Upper,
    /// Any lower bound, strict or not.
    LowerAll,
    LowerStrict,
}

/// All bounds of the requested kind over rows 0..=m and the given variables,
/// in (row, column) order. An empty result certifies the matching emptiness
/// criterion (e.g. no upper bound on x_j iff its column over rows 0..=m
/// is <= 0).
pub fn enumerate_bounds(t: &Tableau, vars: &[usize], filter: KindFilter) -> Vec<BoundFunction> {
    let mut out = Vec::new();
    for i in 0..=t.m() {
        for &j in vars {
            if !t.is_active(j) {
                continue;
            }
            let Some(f) = make_bound(t, i, j).expect("active column") else {
                continue;
            };
            let keep = match filter {
                KindFilter::Upper => f.kind() == BoundKind::Upper,
                KindFilter::LowerAll => f.kind().is_lower(),
                KindFilter::LowerStrict => f.kind() == BoundKind::StrictlyPositiveLower,
            };
            if keep {
                out.push(f);
            }
        }
    }
    out
}

/// The current cost as a linear form (row -1 negated).
pub fn cost_form(t: &Tableau) -> LinForm {
    let mut x = vec![Rat::zero(); t.n()];
    for &j in t.active() {
        x[j - 1] = t.cost_coeff(j);
    }
    LinForm { x, h: t.cost_h() }
}

/// The cost with `f`'s variable replaced by `f`; reads the cost from the
/// tableau.
pub fn substitute_cost(t: &Tableau, f: &BoundFunction) -> LinForm {
    substitute_cost_in(&cost_form(t), f)
}

/// Same substitution against an already materialized cost form.
pub fn substitute_cost_in(cost: &LinForm, f: &BoundFunction) -> LinForm {
    let j = f.var();
    let cj = &cost.x[j - 1];
    let mut x = cost.x.clone();
    x[j - 1] = Rat::zero();
    if !cj.is_zero() {
        for (idx, coeff) in f.v().iter().enumerate() {
            if !coeff.is_zero() {
                x[idx] = &x[idx] + &(cj * coeff);
            }
        }
    }
    let h = &cost.h + &(cj * f.r());
    LinForm { x, h }
}

/// The remaining variables split by the sign of their current cost
/// coefficient.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CostPartition {
    pub xplus: Vec<usize>,
    pub xzero: Vec<usize>,
    pub xminus: Vec<usize>,
}

pub fn partition_vars(t: &Tableau) -> CostPartition {
    let mut part = CostPartition {
        xplus: Vec::new(),
        xzero: Vec::new(),
        xminus: Vec::new(),
    };
    for &j in t.active() {
        let c = t.cost_coeff(j);
        if c.is_positive() {
            part.xplus.push(j);
        } else if c.is_negative() {
            part.xminus.push(j);
        } else {
            part.xzero.push(j);
        }
    }
    part
}

/// One cheap pass over rows 0..=m: where upper and lower bounds exist, and
/// which lower bounds are strictly positive. Signs suffice: for a negative
/// pivot entry the bound's coefficients are nonnegative exactly when every
/// other active entry of the row is, and its h-coefficient is positive
/// exactly when the row's h entry is.
#[derive(Clone, Debug, Default)]
pub struct BoundScan {
    pub upper: Vec<(usize, usize)>,
    pub lower: Vec<(usize, usize)>,
    pub strict: Vec<(usize, usize)>,
}

pub fn scan_bounds(t: &Tableau) -> BoundScan {
    let mut scan = BoundScan::default();
    let actives: Vec<usize> = t.active().iter().copied().collect();
    for i in 0..=t.m() {
        let mut negatives = Vec::new();
        for &j in &actives {
            let e = t.entry(i as i64, j);
            if e.is_positive() {
                scan.upper.push((i, j));
            } else if e.is_negative() {
                scan.lower.push((i, j));
                negatives.push(j);
            }
        }
        if negatives.len() == 1 && t.entry(i as i64, t.h_col()).is_positive() {
            scan.strict.push((i, negatives[0]));
        }
    }
    scan
}

/// Variables holding both an upper bound and a strictly positive lower
/// bound; these are substituted with priority.
pub fn dominating_set(t: &Tableau) -> BTreeSet<usize> {
    let scan = scan_bounds(t);
    dominating_from_scan(&scan)
}

pub(crate) fn dominating_from_scan(scan: &BoundScan) -> BTreeSet<usize> {
    let with_upper: BTreeSet<usize> = scan.upper.iter().map(|&(_, j)| j).collect();
    scan.strict
        .iter()
        .map(|&(_, j)| j)
        .filter(|j| with_upper.contains(j))
        .collect()
}
