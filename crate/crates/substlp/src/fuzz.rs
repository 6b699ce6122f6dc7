//! Random-instance campaign: generate small integer problems, run the
//! substitution method and the simplex oracle on each, classify the
//! agreement, and capture every divergence as a replayable record. The whole
//! pipeline is a pure function of the seed.

use crate::io::{
    method_summary, oracle_summary, CounterexampleRecord, MethodSummary, OracleSummary,
    ProblemFile,
};
use crate::lpp::{lpp_solve, LppKind, LppOutcome};
use crate::oracle::{simplex_solve, OracleOutcome, OracleStatus};
use crate::rat::Rat;

/// Small deterministic PRNG (splitmix64); stable across platforms and
/// releases, which keeps campaign reports reproducible forever.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        debug_assert!(lo <= hi);
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FuzzParams {
    pub m_max: usize,
    pub n_max: usize,
    pub count: usize,
    pub seed: u64,
    pub entry_range: i64,
}

impl Default for FuzzParams {
    fn default() -> Self {
        FuzzParams {
            m_max: 5,
            n_max: 5,
            count: 500,
            seed: 1,
            entry_range: 5,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    Agree,
    ValueMismatch,
    StatusMismatch,
    MethodFail,
    CapOverrun,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Agree => "agree",
            Classification::ValueMismatch => "value",
            Classification::StatusMismatch => "status",
            Classification::MethodFail => "method-fail",
            Classification::CapOverrun => "cap-overrun",
        }
    }
}

/// Compare the method's claim against the oracle's. "No maximum" agrees with
/// both infeasible and unbounded oracles (no maximum exists either way); a
/// definite value must match exactly.
pub fn classify(lpp: &LppOutcome, oracle: &OracleOutcome) -> Classification {
    if lpp.cap_overrun() {
        return Classification::CapOverrun;
    }
    match &lpp.kind {
        LppKind::MethodFail { .. } => Classification::MethodFail,
        LppKind::PositiveMax { z, .. } | LppKind::NegativeMax { z, .. } => match &oracle.status {
            OracleStatus::Optimal { z: zo, .. } => {
                if z == zo {
                    Classification::Agree
                } else {
                    Classification::ValueMismatch
                }
            }
            _ => Classification::StatusMismatch,
        },
        LppKind::Unbounded => match oracle.status {
            OracleStatus::Unbounded { .. } => Classification::Agree,
            _ => Classification::StatusMismatch,
        },
        LppKind::NoMaximum => match oracle.status {
            OracleStatus::Optimal { .. } => Classification::StatusMismatch,
            _ => Classification::Agree,
        },
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct FuzzTally {
    pub agree: usize,
    pub value_mismatch: usize,
    pub status_mismatch: usize,
    pub method_fail: usize,
    pub cap_overrun: usize,
}

impl FuzzTally {
    pub fn total(&self) -> usize {
        self.agree + self.value_mismatch + self.status_mismatch + self.method_fail
            + self.cap_overrun
    }

    fn bump(&mut self, c: Classification) {
        match c {
            Classification::Agree => self.agree += 1,
            Classification::ValueMismatch => self.value_mismatch += 1,
            Classification::StatusMismatch => self.status_mismatch += 1,
            Classification::MethodFail => self.method_fail += 1,
            Classification::CapOverrun => self.cap_overrun += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct FuzzReport {
    pub params: FuzzParams,
    pub tally: FuzzTally,
    pub records: Vec<CounterexampleRecord>,
}

pub fn generate_instance(rng: &mut SplitMix64, params: &FuzzParams, index: usize) -> ProblemFile {
    let m = 1 + rng.below(params.m_max as u64) as usize;
    let n = 1 + rng.below(params.n_max as u64) as usize;
    let r = params.entry_range;
    let mut a = Vec::with_capacity(m);
    for _ in 0..m {
        a.push((0..n).map(|_| Rat::from_int(rng.int_in(-r, r))).collect());
    }
    let b = (0..m).map(|_| Rat::from_int(rng.int_in(-r, r))).collect();
    let objective = (0..n).map(|_| Rat::from_int(rng.int_in(-r, r))).collect();
    ProblemFile {
        name: Some(format!("fuzz-{}-{}", params.seed, index)),
        objective,
        a,
        b,
    }
}

/// Run one instance through both solvers.
pub fn run_instance(pf: &ProblemFile) -> (LppOutcome, OracleOutcome) {
    let a = pf.matrix();
    let lpp = lpp_solve(&a, &pf.b, &pf.objective).expect("validated instance");
    let oracle = simplex_solve(&a, &pf.b, &pf.objective);
    (lpp, oracle)
}

/// The campaign: `count` instances from the seed, every one classified, every
/// divergence recorded. Identical parameters give an identical report.
pub fn fuzz_run(params: &FuzzParams) -> FuzzReport {
    let mut rng = SplitMix64::new(params.seed);
    let mut tally = FuzzTally::default();
    let mut records = Vec::new();
    for index in 0..params.count {
        let pf = generate_instance(&mut rng, params, index);
        let (lpp, oracle) = run_instance(&pf);
        let class = classify(&lpp, &oracle);
        tally.bump(class);
        if class != Classification::Agree {
            records.push(CounterexampleRecord {
                seed: params.seed,
                index,
                divergence: class.as_str().to_string(),
                problem: pf,
                method: method_summary(&lpp),
                oracle: oracle_summary(&oracle),
            });
        }
    }
    FuzzReport {
        params: params.clone(),
        tally,
        records,
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplayResult {
    pub reproduced: bool,
    pub divergence: String,
    pub method: MethodSummary,
    pub oracle: OracleSummary,
}

/// Re-run a recorded divergence and check it reproduces bit-exactly: same
/// classification and same summaries on both sides.
pub fn replay_record(rec: &CounterexampleRecord) -> Result<ReplayResult, crate::io::ProblemError> {
    rec.problem.validate()?;
    let (lpp, oracle) = run_instance(&rec.problem);
    let class = classify(&lpp, &oracle);
    let method = method_summary(&lpp);
    let oracle_sum = oracle_summary(&oracle);
    let reproduced = class.as_str() == rec.divergence
        && method == rec.method
        && oracle_sum == rec.oracle;
    Ok(ReplayResult {
        reproduced,
        divergence: class.as_str().to_string(),
        method,
        oracle: oracle_sum,
    })
}
