//! The decision layer: when to stop, when the problem is unbounded, which
//! (row, variable) pairs are candidates, and which pair to substitute.
//! Selection compares symmetric-interval images of the substituted cost and
//! of the bound itself, with priority to the cost.

use std::collections::BTreeSet;

use crate::bounds::{
    self, dominating_from_scan, make_bound, scan_bounds, substitute_cost_in, BoundFunction,
    CostPartition, LinForm,
};
use crate::cone::Tableau;
use crate::interval::{max_mags, min_mags, HClass, IntervalMag};
use crate::rat::Rat;

/// A substitution candidate: the bound and the cost it would induce.
#[derive(Clone, Debug, PartialEq)]
pub struct Candidate {
    pub fb: BoundFunction,
    pub fz: LinForm,
}

impl Candidate {
    pub fn pair(&self) -> (usize, usize) {
        self.fb.source()
    }

    pub fn class_pair(&self) -> (HClass, HClass) {
        (self.fz.hclass(), self.fb.hclass())
    }
}

/// Which route produced the candidates.
#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum CandidateKind {
    Upper,
    LowerStrict,
    LowerRelaxed,
}

impl CandidateKind {
    pub fn is_lower(self) -> bool {
        !matches!(self, CandidateKind::Upper)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CandidateKind::Upper => "upper",
            CandidateKind::LowerStrict => "lower-strict",
            CandidateKind::LowerRelaxed => "lower-relaxed",
        }
    }
}

/// Cheap pair discovery, no bound materialization.
#[derive(Clone, Debug)]
pub struct PairSelection {
    pub kind: CandidateKind,
    pub pairs: Vec<(usize, usize)>,
    pub via_dominating: bool,
    /// The dominating-variable route produced nothing and the full-partition
    /// route was used instead.
    pub fell_through: bool,
}

/// True iff no remaining variable has a positive cost coefficient and the h
/// column over rows 0..=m is nonpositive; the maximum `c_h * h` is then
/// attained at x = 0.
pub fn check_stop(t: &Tableau) -> bool {
    let xplus_empty = t
        .active()
        .iter()
        .all(|&j| !t.cost_coeff(j).is_positive());
    if !xplus_empty {
        return false;
    }
    let h = t.h_col();
    (0..=t.m() as i64).all(|i| !t.entry(i, h).is_positive())
}

/// True iff some variable with nonzero cost has no upper bound at all (its
/// column over rows 0..=m is nonpositive).
pub fn check_unbounded(t: &Tableau) -> bool {
    for &j in t.active() {
        if t.cost_coeff(j).is_zero() {
            continue;
        }
        if (0..=t.m() as i64).all(|i| !t.entry(i, j).is_positive()) {
            return true;
        }
    }
    false
}

/// Candidate pairs, trying the dominating variables first: upper bounds over
/// the nonnegative-cost part, then strictly positive lower bounds over the
/// nonpositive-cost part, relaxing to plain lower bounds only when no strict
/// one exists anywhere.
pub fn candidate_pairs(t: &Tableau, part: &CostPartition) -> PairSelection {
    let scan = scan_bounds(t);
    let dom = dominating_from_scan(&scan);
    let upper_pool: BTreeSet<usize> = part.xplus.iter().chain(&part.xzero).copied().collect();
    let lower_pool: BTreeSet<usize> = part.xzero.iter().chain(&part.xminus).copied().collect();

    let restrict = |pairs: &[(usize, usize)], pool: &BTreeSet<usize>, with_dom: bool| {
        pairs
            .iter()
            .copied()
            .filter(|(_, j)| pool.contains(j) && (!with_dom || dom.contains(j)))
            .collect::<Vec<_>>()
    };

    if !dom.is_empty() {
        let ups = restrict(&scan.upper, &upper_pool, true);
        if !ups.is_empty() {
            return PairSelection {
                kind: CandidateKind::Upper,
                pairs: ups,
                via_dominating: true,
                fell_through: false,
            };
        }
        let stricts = restrict(&scan.strict, &lower_pool, true);
        if !stricts.is_empty() {
            return PairSelection {
                kind: CandidateKind::LowerStrict,
                pairs: stricts,
                via_dominating: true,
                fell_through: false,
            };
        }
    }
    let fell_through = !dom.is_empty();
    let ups = restrict(&scan.upper, &upper_pool, false);
    if !ups.is_empty() {
        return PairSelection {
            kind: CandidateKind::Upper,
            pairs: ups,
            via_dominating: false,
            fell_through,
        };
    }
    let stricts = restrict(&scan.strict, &lower_pool, false);
    if !stricts.is_empty() {
        return PairSelection {
            kind: CandidateKind::LowerStrict,
            pairs: stricts,
            via_dominating: false,
            fell_through,
        };
    }
    PairSelection {
        kind: CandidateKind::LowerRelaxed,
        pairs: restrict(&scan.lower, &lower_pool, false),
        via_dominating: false,
        fell_through,
    }
}

/// Materialize bounds and substituted costs for a discovered pair set.
pub fn materialize(t: &Tableau, sel: &PairSelection) -> Vec<Candidate> {
    let cost = bounds::cost_form(t);
    sel.pairs
        .iter()
        .map(|&(i, j)| {
            let fb = make_bound(t, i, j)
                .expect("active column")
                .expect("scanned entry is nonzero");
            let fz = substitute_cost_in(&cost, &fb);
            Candidate { fb, fz }
        })
        .collect()
}

/// Pair discovery plus materialization in one call.
pub fn candidate_sets(t: &Tableau) -> (PairSelection, Vec<Candidate>) {
    let part = bounds::partition_vars(t);
    let sel = candidate_pairs(t, &part);
    let cands = materialize(t, &sel);
    (sel, cands)
}

/// Keep candidates whose substituted cost stays below `c_h * h` everywhere on
/// the nonnegative orthant: every x coefficient <= 0 and h coefficient
/// <= c_h. Losing all candidates here means the search for a positive
/// maximum fails.
pub fn b_filter(cands: Vec<Candidate>, ch: &Rat) -> Vec<Candidate> {
    cands
        .into_iter()
        .filter(|c| c.fz.x.iter().all(|v| !v.is_positive()) && &c.fz.h <= ch)
        .collect()
}

/// Outcome of the two-stage selection.
#[derive(Clone, Debug, PartialEq)]
pub struct SelectionResult {
    pub chosen: (usize, usize),
    pub class_pair: (HClass, HClass),
    /// Image magnitude of the substituted cost over the class domain.
    pub primary: IntervalMag,
    /// Arg-set of the first stage; a tie here triggers the second stage.
    pub tied_after_primary: Vec<(usize, usize)>,
    /// Image magnitude of the bound itself, when the tie stage ran.
    pub secondary: Option<IntervalMag>,
    pub fb: BoundFunction,
    pub fz: LinForm,
}

/// Pick the pair to substitute. Classes are tried in the order (B,B), (B,U),
/// (U,B), (U,U) over (cost class, bound class); within the class the
/// substituted-cost image is minimized; ties go to the second stage over the
/// bound images (minimized for upper bounds, maximized for lower bounds);
/// residual ties break lexicographically.
pub fn select_pair(cands: &[Candidate]) -> Option<SelectionResult> {
    if cands.is_empty() {
        return None;
    }
    let is_lower = cands[0].fb.kind().is_lower();
    debug_assert!(cands.iter().all(|c| c.fb.kind().is_lower() == is_lower));

    const ORDER: [(HClass, HClass); 4] = [
        (HClass::Bounded, HClass::Bounded),
        (HClass::Bounded, HClass::Unbounded),
        (HClass::Unbounded, HClass::Bounded),
        (HClass::Unbounded, HClass::Unbounded),
    ];
    let class = *ORDER
        .iter()
        .find(|cp| cands.iter().any(|c| c.class_pair() == **cp))
        .expect("every candidate has some class pair");
    let in_class: Vec<&Candidate> = cands.iter().filter(|c| c.class_pair() == class).collect();

    let fam: Vec<((usize, usize), IntervalMag)> = in_class
        .iter()
        .map(|c| (c.pair(), c.fz.image(class.0.flavor())))
        .collect();
    let (primary, tied) = min_mags(&fam).expect("nonempty class");

    let mut pool: Vec<&Candidate> = in_class
        .iter()
        .filter(|c| tied.contains(&c.pair()))
        .copied()
        .collect();
    let mut secondary = None;
    if pool.len() > 1 {
        let fam2: Vec<((usize, usize), IntervalMag)> = pool
            .iter()
            .map(|c| (c.pair(), c.fb.image(class.1.flavor())))
            .collect();
        let (sec, args2) = if is_lower {
            max_mags(&fam2).expect("nonempty pool")
        } else {
            min_mags(&fam2).expect("nonempty pool")
        };
        secondary = Some(sec);
        pool.retain(|c| args2.contains(&c.pair()));
    }
    let chosen = pool
        .iter()
        .min_by_key(|c| c.pair())
        .expect("pool nonempty");
    Some(SelectionResult {
        chosen: chosen.pair(),
        class_pair: class,
        primary,
        tied_after_primary: tied,
        secondary,
        fb: chosen.fb.clone(),
        fz: chosen.fz.clone(),
    })
}
