//! Problem-file parsing and the JSON surfaces: outcome reports, step-trace
//! lines, and replayable counterexample records. Rationals travel as "p/q"
//! strings everywhere; floats are rejected at parse time.

use std::fmt;
use std::io::Write;

use crate::lpp::{LppKind, LppOutcome};
use crate::oracle::{OracleOutcome, OracleStatus};
use crate::pmrp::StepRecord;
use crate::rat::{Rat, RatMatrix};

/// `max objective . x  s.t.  A x <= b, x >= 0`.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub objective: Vec<Rat>,
    #[serde(rename = "A")]
    pub a: Vec<Vec<Rat>>,
    pub b: Vec<Rat>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ProblemError {
    Json {
        msg: String,
        line: usize,
        column: usize,
    },
    Shape(String),
}

impl fmt::Display for ProblemError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProblemError::Json { msg, line, column } => {
                write!(f, "json error at line {line}, column {column}: {msg}")
            }
            ProblemError::Shape(s) => write!(f, "malformed problem: {s}"),
        }
    }
}

impl std::error::Error for ProblemError {}

impl ProblemFile {
    pub fn new(objective: Vec<Rat>, a: Vec<Vec<Rat>>, b: Vec<Rat>) -> Self {
        ProblemFile {
            name: None,
            objective,
            a,
            b,
        }
    }

    pub fn rows(&self) -> usize {
        self.a.len()
    }

    pub fn cols(&self) -> usize {
        self.a.first().map_or(0, Vec::len)
    }

    pub fn matrix(&self) -> RatMatrix {
        RatMatrix::from_rows(self.a.clone())
    }

    pub fn validate(&self) -> Result<(), ProblemError> {
        if self.a.is_empty() {
            return Err(ProblemError::Shape("A has no rows".into()));
        }
        let cols = self.cols();
        if cols == 0 {
            return Err(ProblemError::Shape("A has no columns".into()));
        }
        for (i, row) in self.a.iter().enumerate() {
            if row.len() != cols {
                return Err(ProblemError::Shape(format!(
                    "A row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
        }
        if self.objective.len() != cols {
            return Err(ProblemError::Shape(format!(
                "objective has {} entries for {cols} columns",
                self.objective.len()
            )));
        }
        if self.b.len() != self.a.len() {
            return Err(ProblemError::Shape(format!(
                "b has {} entries for {} rows",
                self.b.len(),
                self.a.len()
            )));
        }
        Ok(())
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let pf: ProblemFile = serde_json::from_str(text).map_err(|e| ProblemError::Json {
        msg: e.to_string(),
        line: e.line(),
        column: e.column(),
    })?;
    pf.validate()?;
    Ok(pf)
}

pub fn problem_to_json(pf: &ProblemFile) -> String {
    serde_json::to_string_pretty(pf).expect("problem serializes")
}

/// Trace summary attached to outcome reports; full step records stream
/// separately as JSON-Lines.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct TraceSummary {
    pub primal_steps: usize,
    pub dual_steps: usize,
    pub cap_overrun: bool,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct OutcomeReport {
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Vec<Rat>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Vec<Rat>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub notes: Vec<String>,
    pub traces: TraceSummary,
}

/// Report the outcome at the given h > 0 (cone scaling; 1 gives the vertex
/// itself).
pub fn outcome_report(o: &LppOutcome, h: &Rat) -> OutcomeReport {
    assert!(h.is_positive(), "h must be positive");
    let scale = |v: &Rat| v * h;
    let (status, z, x, y, reason) = match &o.kind {
        LppKind::PositiveMax { z, x } => (
            "positive-max",
            Some(scale(z)),
            Some(x.iter().map(scale).collect::<Vec<_>>()),
            None,
            None,
        ),
        LppKind::NegativeMax { z, y } => (
            "negative-max",
            Some(scale(z)),
            None,
            Some(y.iter().map(scale).collect::<Vec<_>>()),
            None,
        ),
        LppKind::NoMaximum => ("no-maximum", None, None, None, None),
        LppKind::Unbounded => ("unbounded", None, None, None, None),
        LppKind::MethodFail { reason } => {
            ("method-fail", None, None, None, Some(reason.clone()))
        }
    };
    OutcomeReport {
        status: status.to_string(),
        z,
        x,
        y,
        reason,
        notes: o.notes.clone(),
        traces: TraceSummary {
            primal_steps: o.primal.trace.len(),
            dual_steps: o.dual.as_ref().map_or(0, |d| d.trace.len()),
            cap_overrun: o.cap_overrun(),
        },
    }
}

#[derive(serde::Serialize)]
struct TraceLine<'a> {
    phase: &'a str,
    #[serde(flatten)]
    record: &'a StepRecord,
}

/// One step record per line, primal then dual.
pub fn write_trace_jsonl<W: Write>(o: &LppOutcome, mut w: W) -> std::io::Result<()> {
    for rec in &o.primal.trace {
        let line = serde_json::to_string(&TraceLine {
            phase: "primal",
            record: rec,
        })?;
        writeln!(w, "{line}")?;
    }
    if let Some(dual) = &o.dual {
        for rec in &dual.trace {
            let line = serde_json::to_string(&TraceLine {
                phase: "dual",
                record: rec,
            })?;
            writeln!(w, "{line}")?;
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct MethodSummary {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Rat>,
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct OracleSummary {
    pub status: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Rat>,
}

pub fn method_summary(o: &LppOutcome) -> MethodSummary {
    let (status, z) = match &o.kind {
        LppKind::PositiveMax { z, .. } => ("positive-max", Some(z.clone())),
        LppKind::NegativeMax { z, .. } => ("negative-max", Some(z.clone())),
        LppKind::NoMaximum => ("no-maximum", None),
        LppKind::Unbounded => ("unbounded", None),
        LppKind::MethodFail { .. } => ("method-fail", None),
    };
    MethodSummary {
        status: status.to_string(),
        z,
    }
}

pub fn oracle_summary(o: &OracleOutcome) -> OracleSummary {
    let (status, z) = match &o.status {
        OracleStatus::Optimal { z, .. } => ("optimal", Some(z.clone())),
        OracleStatus::Unbounded { .. } => ("unbounded", None),
        OracleStatus::Infeasible => ("infeasible", None),
    };
    OracleSummary {
        status: status.to_string(),
        z,
    }
}

/// A reproducible divergence between the method and the oracle.
#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct CounterexampleRecord {
    pub seed: u64,
    pub index: usize,
    pub divergence: String,
    pub problem: ProblemFile,
    pub method: MethodSummary,
    pub oracle: OracleSummary,
}
