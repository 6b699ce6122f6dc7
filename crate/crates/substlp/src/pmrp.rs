//! The positive-maximum search loop. Each pass sweeps the tableau, checks
//! the terminal conditions, picks a candidate pair and substitutes it,
//! recording one step per pass. The accumulated ledger is triangular, so a
//! backward pass recovers every substituted variable as a multiple of h.

use std::collections::BTreeMap;
use std::fmt;

use crate::bounds::{partition_vars, CostPartition};
use crate::cone::{ConeError, EqualityLedger, LedgerEntry, LedgerError, Tableau, TableauSnapshot};
use crate::interval::HClass;
use crate::rat::{Rat, RatMatrix};
use crate::selector::{
    b_filter, candidate_pairs, check_stop, check_unbounded, materialize, select_pair,
    SelectionResult,
};

/// Case labels of the per-step dispatch.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CaseLabel {
    Zero,
    UpperWithPositiveCost,    // 1.1
    LowerWithPositiveCost,    // 1.2
    Stop,                     // 2.1
    UpperNoPositiveCost,      // 2.2.1
    LowerNoPositiveCost,      // 2.2.2
    Fallthrough,
}

impl CaseLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseLabel::Zero => "0",
            CaseLabel::UpperWithPositiveCost => "1.1",
            CaseLabel::LowerWithPositiveCost => "1.2",
            CaseLabel::Stop => "2.1",
            CaseLabel::UpperNoPositiveCost => "2.2.1",
            CaseLabel::LowerNoPositiveCost => "2.2.2",
            CaseLabel::Fallthrough => "fallthrough",
        }
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl serde::Serialize for CaseLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// Tableau cells read in each phase of one step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct StepCounters {
    pub sweeps: u64,
    pub candidates: u64,
    pub selection: u64,
    pub update: u64,
}

/// Serializable digest of a selection.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct SelectionRecord {
    pub chosen: (usize, usize),
    pub class_pair: (HClass, HClass),
    pub primary: Rat,
    pub tied_after_primary: Vec<(usize, usize)>,
    pub secondary: Option<Rat>,
}

impl SelectionRecord {
    fn from_result(s: &SelectionResult) -> Self {
        let fin = |m: &crate::interval::IntervalMag| {
            m.magnitude()
                .as_finite()
                .expect("selection images are finite")
                .clone()
        };
        SelectionRecord {
            chosen: s.chosen,
            class_pair: s.class_pair,
            primary: fin(&s.primary),
            tied_after_primary: s.tied_after_primary.clone(),
            secondary: s.secondary.as_ref().map(fin),
        }
    }
}

/// One loop pass: the case taken, what was seen and chosen, and the tableau
/// as this step left it (substitution steps snapshot before the next sweep).
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct StepRecord {
    pub k: usize,
    pub case: CaseLabel,
    pub partition: CostPartition,
    pub candidate_kind: Option<&'static str>,
    pub candidates: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtered: Option<Vec<(usize, usize)>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub selection: Option<SelectionRecord>,
    pub forced_zero: Vec<String>,
    pub notes: Vec<String>,
    pub tableau: TableauSnapshot,
    pub counters: StepCounters,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PmrpStatus {
    /// A maximum exists on the h > 0 branch: z = zcoef * h, and each variable
    /// is assignment[var] * h.
    MaxFound {
        zcoef: Rat,
        assignment: BTreeMap<usize, Rat>,
    },
    /// h was forced to zero (or the search failed); no positive maximum.
    HZero,
    Unbounded,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PmrpOutcome {
    pub status: PmrpStatus,
    pub trace: Vec<StepRecord>,
    pub ledger: EqualityLedger,
    /// Set if the loop was cut by the substitution cap; a method anomaly.
    pub cap_overrun: bool,
}

impl PmrpOutcome {
    pub fn substitutions(&self) -> usize {
        self.trace.iter().filter(|s| s.selection.is_some()).count()
    }

    pub fn selections(&self) -> Vec<(usize, usize)> {
        self.trace
            .iter()
            .filter_map(|s| s.selection.as_ref().map(|sel| sel.chosen))
            .collect()
    }
}

pub fn solve(a: &RatMatrix, b: &[Rat], c: &[Rat]) -> Result<PmrpOutcome, ConeError> {
    solve_prefixed(a, b, c, 'x')
}

pub fn solve_prefixed(
    a: &RatMatrix,
    b: &[Rat],
    c: &[Rat],
    prefix: char,
) -> Result<PmrpOutcome, ConeError> {
    let mut t = Tableau::homogenize(a, b, c)?;
    t.set_var_prefix(prefix);
    Ok(resume(t, EqualityLedger::new()))
}

/// Run the loop from an arbitrary tableau state and ledger, e.g. to replay a
/// saved mid-run state.
pub fn resume(mut t: Tableau, mut ledger: EqualityLedger) -> PmrpOutcome {
    let mut trace: Vec<StepRecord> = Vec::new();
    let n = t.n();
    let mut substitutions = 0usize;
    let cap = n;

    loop {
        let k = t.step();
        let mut notes: Vec<String> = Vec::new();
        let mut forced_labels: Vec<String> = Vec::new();
        let mut counters = StepCounters::default();

        // Sweep to a fixpoint: zero nonpositive rows, then clear any columns
        // a nonnegative row forces to zero; cleared columns can enable both
        // sweeps again.
        let sweep_start = t.reads();
        let mut h_forced = false;
        loop {
            t.set_row_to_zero();
            let forced = t.check_nul_var();
            if forced.is_empty() {
                break;
            }
            for col in forced {
                if col == t.h_col() {
                    h_forced = true;
                    forced_labels.push("h".to_string());
                } else if (1..=n).contains(&col) && t.is_active(col) {
                    forced_labels.push(format!("{}{}", t.var_prefix(), col));
                    ledger
                        .push(LedgerEntry::ForcedZero { var: col })
                        .expect("forced variable is still active");
                    t.clear_column(col);
                }
            }
            if h_forced {
                break;
            }
        }
        counters.sweeps = t.reads() - sweep_start;

        let search_start = t.reads();
        let part = partition_vars(&t);

        if h_forced {
            notes.push("h forced to zero; no positive maximum".to_string());
            counters.candidates = t.reads() - search_start;
            trace.push(terminal_record(
                k,
                CaseLabel::Zero,
                part,
                forced_labels,
                notes,
                &t,
                counters,
            ));
            return PmrpOutcome {
                status: PmrpStatus::HZero,
                trace,
                ledger,
                cap_overrun: false,
            };
        }

        if check_unbounded(&t) {
            notes.push("a costed variable has no upper bound".to_string());
            counters.candidates = t.reads() - search_start;
            trace.push(terminal_record(
                k,
                CaseLabel::Zero,
                part,
                forced_labels,
                notes,
                &t,
                counters,
            ));
            return PmrpOutcome {
                status: PmrpStatus::Unbounded,
                trace,
                ledger,
                cap_overrun: false,
            };
        }

        if part.xplus.is_empty() && check_stop(&t) {
            let ch = t.cost_h();
            counters.candidates = t.reads() - search_start;
            if ch.is_negative() {
                // Only reachable when the cost-sign row was swept away
                // earlier; a nonpositive peak is no positive maximum.
                notes.push("stop reached with negative h-cost".to_string());
                trace.push(terminal_record(
                    k,
                    CaseLabel::Stop,
                    part,
                    forced_labels,
                    notes,
                    &t,
                    counters,
                ));
                return PmrpOutcome {
                    status: PmrpStatus::HZero,
                    trace,
                    ledger,
                    cap_overrun: false,
                };
            }
            for &j in &t.active().clone() {
                forced_labels.push(format!("{}{}", t.var_prefix(), j));
                ledger
                    .push(LedgerEntry::ForcedZero { var: j })
                    .expect("remaining variable not yet ledgered");
            }
            ledger
                .push(LedgerEntry::CostClose { ch: ch.clone() })
                .expect("cost closes once");
            let (assignment, z) = backward_substitute(&ledger, &Rat::one())
                .expect("ledger built in substitution order");
            debug_assert_eq!(z.as_ref(), Some(&ch));
            trace.push(terminal_record(
                k,
                CaseLabel::Stop,
                part,
                forced_labels,
                notes,
                &t,
                counters,
            ));
            return PmrpOutcome {
                status: PmrpStatus::MaxFound {
                    zcoef: ch,
                    assignment,
                },
                trace,
                ledger,
                cap_overrun: false,
            };
        }

        if t.active().is_empty() {
            notes.push("no variables remain but h is still blocked".to_string());
            counters.candidates = t.reads() - search_start;
            trace.push(terminal_record(
                k,
                CaseLabel::Fallthrough,
                part,
                forced_labels,
                notes,
                &t,
                counters,
            ));
            return PmrpOutcome {
                status: PmrpStatus::HZero,
                trace,
                ledger,
                cap_overrun: false,
            };
        }

        if substitutions >= cap {
            notes.push(format!("substitution cap {cap} reached"));
            counters.candidates = t.reads() - search_start;
            trace.push(terminal_record(
                k,
                CaseLabel::Fallthrough,
                part,
                forced_labels,
                notes,
                &t,
                counters,
            ));
            return PmrpOutcome {
                status: PmrpStatus::HZero,
                trace,
                ledger,
                cap_overrun: true,
            };
        }

        let pairs = candidate_pairs(&t, &part);
        counters.candidates = t.reads() - search_start;
        if pairs.fell_through {
            notes.push("dominating-variable sets were empty; fell through".to_string());
        }

        let select_start = t.reads();
        let mut cands = materialize(&t, &pairs);
        let case = match (part.xplus.is_empty(), pairs.kind.is_lower()) {
            (false, false) => CaseLabel::UpperWithPositiveCost,
            (false, true) => CaseLabel::LowerWithPositiveCost,
            (true, false) => CaseLabel::UpperNoPositiveCost,
            (true, true) => CaseLabel::LowerNoPositiveCost,
        };
        let mut filtered = None;
        if case == CaseLabel::LowerNoPositiveCost {
            let ch = t.cost_h();
            cands = b_filter(cands, &ch);
            filtered = Some(cands.iter().map(|c| c.pair()).collect::<Vec<_>>());
            if cands.is_empty() {
                notes.push("no candidate keeps the cost h-bounded; h set to zero".to_string());
                counters.selection = t.reads() - select_start;
                trace.push(StepRecord {
                    k,
                    case,
                    partition: part,
                    candidate_kind: Some(pairs.kind.as_str()),
                    candidates: pairs.pairs.clone(),
                    filtered,
                    selection: None,
                    forced_zero: forced_labels,
                    notes,
                    tableau: t.snapshot(),
                    counters,
                });
                return PmrpOutcome {
                    status: PmrpStatus::HZero,
                    trace,
                    ledger,
                    cap_overrun: false,
                };
            }
        }
        if cands.is_empty() {
            notes.push("no candidate pair exists".to_string());
            counters.selection = t.reads() - select_start;
            trace.push(terminal_record(
                k,
                CaseLabel::Fallthrough,
                part,
                forced_labels,
                notes,
                &t,
                counters,
            ));
            return PmrpOutcome {
                status: PmrpStatus::HZero,
                trace,
                ledger,
                cap_overrun: false,
            };
        }

        let sel = select_pair(&cands).expect("candidates are nonempty");
        counters.selection = t.reads() - select_start;

        ledger
            .push(LedgerEntry::Substitution {
                var: sel.chosen.1,
                f: sel.fb.clone(),
            })
            .expect("substituted variable not yet ledgered");

        let update_start = t.reads();
        t.apply_substitution(&sel.fb)
            .expect("selected bound comes from this tableau");
        counters.update = t.reads() - update_start;
        substitutions += 1;

        trace.push(StepRecord {
            k,
            case,
            partition: part,
            candidate_kind: Some(pairs.kind.as_str()),
            candidates: pairs.pairs,
            filtered,
            selection: Some(SelectionRecord::from_result(&sel)),
            forced_zero: forced_labels,
            notes,
            tableau: t.snapshot(),
            counters,
        });
    }
}

fn terminal_record(
    k: usize,
    case: CaseLabel,
    partition: CostPartition,
    forced_zero: Vec<String>,
    notes: Vec<String>,
    t: &Tableau,
    counters: StepCounters,
) -> StepRecord {
    StepRecord {
        k,
        case,
        partition,
        candidate_kind: None,
        candidates: Vec::new(),
        filtered: None,
        selection: None,
        forced_zero,
        notes,
        tableau: t.snapshot(),
        counters,
    }
}

/// Resolve the triangular ledger last-to-first at the given h, returning
/// exact values for every ledgered variable and the closing z if present.
pub fn backward_substitute(
    ledger: &EqualityLedger,
    h_value: &Rat,
) -> Result<(BTreeMap<usize, Rat>, Option<Rat>), LedgerError> {
    let mut values: BTreeMap<usize, Rat> = BTreeMap::new();
    let mut z = None;
    for entry in ledger.entries().iter().rev() {
        match entry {
            LedgerEntry::ForcedZero { var } => {
                values.insert(*var, Rat::zero());
            }
            LedgerEntry::CostClose { ch } => {
                z = Some(ch * h_value);
            }
            LedgerEntry::Substitution { var, f } => {
                let mut acc = f.r() * h_value;
                for (idx, coeff) in f.v().iter().enumerate() {
                    if coeff.is_zero() {
                        continue;
                    }
                    match values.get(&(idx + 1)) {
                        Some(v) => acc = acc + coeff * v,
                        None => return Err(LedgerError::NotTriangular(idx + 1)),
                    }
                }
                values.insert(*var, acc);
            }
        }
    }
    Ok((values, z))
}
