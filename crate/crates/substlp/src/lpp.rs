//! Top-level orchestration: search the primal cone for a positive maximum;
//! if h collapses to zero, search the companion cone, whose maximum (negated)
//! is the original problem's negative maximum. Certificates are re-verified
//! exactly before any maximum is reported.

use crate::cone::{dualize, ConeError};
use crate::oracle::verify_solution;
use crate::pmrp::{self, PmrpOutcome, PmrpStatus};
use crate::rat::{Rat, RatMatrix};

#[derive(Clone, Debug, PartialEq)]
pub enum LppKind {
    PositiveMax { z: Rat, x: Vec<Rat> },
    NegativeMax { z: Rat, y: Vec<Rat> },
    NoMaximum,
    Unbounded,
    /// The search produced an answer that failed exact re-verification.
    MethodFail { reason: String },
}

#[derive(Clone, Debug, PartialEq)]
pub struct LppOutcome {
    pub kind: LppKind,
    pub primal: PmrpOutcome,
    pub dual: Option<PmrpOutcome>,
    pub notes: Vec<String>,
}

impl LppOutcome {
    pub fn cap_overrun(&self) -> bool {
        self.primal.cap_overrun || self.dual.as_ref().is_some_and(|d| d.cap_overrun)
    }
}

fn assignment_to_vec(
    assignment: &std::collections::BTreeMap<usize, Rat>,
    n: usize,
) -> Option<Vec<Rat>> {
    let mut out = Vec::with_capacity(n);
    for j in 1..=n {
        out.push(assignment.get(&j)?.clone());
    }
    Some(out)
}

pub fn lpp_solve(a: &RatMatrix, b: &[Rat], c: &[Rat]) -> Result<LppOutcome, ConeError> {
    let primal = pmrp::solve(a, b, c)?;
    let mut notes = Vec::new();
    match &primal.status {
        PmrpStatus::Unbounded => Ok(LppOutcome {
            kind: LppKind::Unbounded,
            primal,
            dual: None,
            notes,
        }),
        PmrpStatus::MaxFound { zcoef, assignment } => {
            let kind = match assignment_to_vec(assignment, a.cols()) {
                None => LppKind::MethodFail {
                    reason: "assignment does not cover every variable".into(),
                },
                Some(x) => {
                    if zcoef.is_negative() {
                        LppKind::MethodFail {
                            reason: "reported maximum is negative".into(),
                        }
                    } else if !verify_solution(a, b, c, &x, zcoef) {
                        LppKind::MethodFail {
                            reason: "positive-maximum certificate failed verification".into(),
                        }
                    } else {
                        LppKind::PositiveMax {
                            z: zcoef.clone(),
                            x,
                        }
                    }
                }
            };
            Ok(LppOutcome {
                kind,
                primal,
                dual: None,
                notes,
            })
        }
        PmrpStatus::HZero => {
            let (da, db, dc) = dualize(a, b, c);
            let dual = pmrp::solve_prefixed(&da, &db, &dc, 'y')?;
            let kind = match &dual.status {
                PmrpStatus::MaxFound { zcoef, assignment } => {
                    match assignment_to_vec(assignment, da.cols()) {
                        None => LppKind::MethodFail {
                            reason: "dual assignment does not cover every variable".into(),
                        },
                        Some(y) => {
                            if zcoef.is_negative() {
                                LppKind::MethodFail {
                                    reason: "reported dual maximum is negative".into(),
                                }
                            } else if !verify_solution(&da, &db, &dc, &y, zcoef) {
                                LppKind::MethodFail {
                                    reason: "negative-maximum certificate failed verification"
                                        .into(),
                                }
                            } else {
                                LppKind::NegativeMax {
                                    z: -zcoef,
                                    y,
                                }
                            }
                        }
                    }
                }
                PmrpStatus::HZero => LppKind::NoMaximum,
                PmrpStatus::Unbounded => {
                    notes.push(
                        "companion problem unbounded; no maximum exists \
                         (infeasible or degenerate instance)"
                            .to_string(),
                    );
                    LppKind::NoMaximum
                }
            };
            Ok(LppOutcome {
                kind,
                primal,
                dual: Some(dual),
                notes,
            })
        }
    }
}
