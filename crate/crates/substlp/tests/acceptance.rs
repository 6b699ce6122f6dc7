//! Acceptance suite: one test per criterion, each printing a single
//! `acceptance <name>: PASS/FAIL` line (run with `--nocapture` to see the
//! lines for passing tests). All comparisons are exact rational equality;
//! there are no tolerances anywhere.

mod common;

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::{brute_solve, grid, instance_negmax, posmax_state1, r, BruteOutcome};
use substlp::bounds::make_bound;
use substlp::fuzz::{self, FuzzParams, SplitMix64};
use substlp::interval::{general_add, general_scale, linear_form_range, linear_image, DomainFlavor};
use substlp::io::ProblemFile;
use substlp::lpp::{lpp_solve, LppKind, LppOutcome};
use substlp::oracle::{simplex_solve, verify_solution, OracleOutcome, OracleStatus};
use substlp::pmrp::{self, PmrpStatus, StepRecord};
use substlp::rat::{ExtRat, Rat};
use substlp::{EqualityLedger, Tableau};

const FUZZ_SEED: u64 = 2026;

fn criterion(name: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => println!("acceptance {name}: PASS ({detail})"),
        Err(msg) => {
            println!("acceptance {name}: FAIL ({msg})");
            panic!("acceptance criterion {name} failed: {msg}");
        }
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

struct Corpus {
    instances: Vec<(ProblemFile, LppOutcome, OracleOutcome)>,
    report: fuzz::FuzzReport,
    report_elapsed: Duration,
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let params = FuzzParams {
            m_max: 5,
            n_max: 5,
            count: 500,
            seed: FUZZ_SEED,
            entry_range: 5,
        };
        let started = Instant::now();
        let report = fuzz::fuzz_run(&params);
        let report_elapsed = started.elapsed();
        let mut rng = SplitMix64::new(params.seed);
        let mut instances = Vec::with_capacity(params.count);
        for index in 0..params.count {
            let pf = fuzz::generate_instance(&mut rng, &params, index);
            let (lpp, oracle) = fuzz::run_instance(&pf);
            instances.push((pf, lpp, oracle));
        }
        Corpus {
            instances,
            report,
            report_elapsed,
        }
    })
}

#[test]
fn criterion_resumed_state_replay() {
    criterion("resumed-state-replay", || {
        let t = posmax_state1();
        let started = Instant::now();
        let out = pmrp::resume(t, EqualityLedger::new());
        let elapsed = started.elapsed();

        ensure(
            out.selections() == vec![(2, 4), (3, 3)],
            format!("selections were {:?}", out.selections()),
        )?;
        ensure(
            out.trace[0].tableau.rows == grid(common::POSMAX_STEP2),
            "first intermediate tableau differs",
        )?;
        ensure(
            out.trace[1].tableau.rows == grid(common::POSMAX_STEP3),
            "second intermediate tableau differs",
        )?;
        let PmrpStatus::MaxFound { zcoef, assignment } = &out.status else {
            return Err(format!("status was {:?}", out.status));
        };
        ensure(zcoef == &r("3500"), format!("z = {zcoef}"))?;
        ensure(assignment[&2] == r("0"), "x2 != 0")?;
        ensure(assignment[&3] == r("47/102"), "x3 != 47/102")?;
        ensure(assignment[&4] == r("7/17"), "x4 != 7/17")?;
        ensure(
            elapsed < Duration::from_millis(100),
            format!("took {elapsed:?}"),
        )?;
        Ok(format!(
            "two exact tableaux, selections (2,4),(3,3), z=3500 in {elapsed:?}"
        ))
    });
}

#[test]
fn criterion_negative_max_end_to_end() {
    criterion("negative-max-end-to-end", || {
        let (a, b, c) = instance_negmax();
        let started = Instant::now();
        let out = lpp_solve(&a, &b, &c).map_err(|e| e.to_string())?;
        let elapsed = started.elapsed();

        ensure(
            out.primal.selections() == vec![(1, 1)],
            format!("primal selections were {:?}", out.primal.selections()),
        )?;
        ensure(
            out.primal.trace[0].tableau.rows == grid(common::NEGMAX_STEP1),
            "primal post-substitution tableau differs",
        )?;
        let last = out.primal.trace.last().unwrap();
        ensure(
            last.forced_zero.contains(&"h".to_string()),
            "primal run did not force h to zero",
        )?;
        ensure(
            out.primal.status == PmrpStatus::HZero,
            "primal run should end with h = 0",
        )?;

        let dual = out.dual.as_ref().ok_or("no dual run")?;
        ensure(
            dual.selections() == vec![(3, 4), (1, 1), (2, 2)],
            format!("dual selections were {:?}", dual.selections()),
        )?;
        ensure(
            dual.trace[0].tableau.rows == grid(common::NEGMAX_DUAL_STEP1),
            "first dual tableau differs",
        )?;
        ensure(
            dual.trace[1].tableau.rows == grid(common::NEGMAX_DUAL_STEP2),
            "second dual tableau differs",
        )?;
        ensure(
            dual.trace[2].tableau.rows == grid(common::NEGMAX_DUAL_STEP3),
            "third dual tableau differs",
        )?;
        let PmrpStatus::MaxFound { zcoef, assignment } = &dual.status else {
            return Err(format!("dual status was {:?}", dual.status));
        };
        ensure(zcoef == &r("45/7"), format!("dual z = {zcoef}"))?;
        let want = ["19/28", "13/28", "0", "3/2", "0"];
        for (j, w) in want.iter().enumerate() {
            ensure(
                assignment[&(j + 1)] == r(w),
                format!("y{} != {w}", j + 1),
            )?;
        }
        let LppKind::NegativeMax { z, y } = &out.kind else {
            return Err(format!("kind was {:?}", out.kind));
        };
        ensure(z == &r("-45/7"), format!("reported z = {z}"))?;
        ensure(
            y == &want.iter().map(|w| r(w)).collect::<Vec<_>>(),
            "reported y differs",
        )?;
        ensure(
            elapsed < Duration::from_millis(100),
            format!("took {elapsed:?}"),
        )?;
        Ok(format!(
            "h=0 after (1,1), three exact dual tableaux, z=-45/7 in {elapsed:?}"
        ))
    });
}

#[test]
fn criterion_positive_max_certificates() {
    criterion("positive-max-certificates", || {
        let corpus = corpus();
        let mut positives = 0usize;
        let mut negatives = 0usize;
        for (pf, lpp, _) in &corpus.instances {
            let a = pf.matrix();
            match &lpp.kind {
                LppKind::PositiveMax { z, x } => {
                    positives += 1;
                    ensure(
                        verify_solution(&a, &pf.b, &pf.objective, x, z),
                        format!("certificate failed on {:?}", pf.name),
                    )?;
                }
                LppKind::NegativeMax { z, y } => {
                    negatives += 1;
                    let (da, db, dc) = substlp::dualize(&a, &pf.b, &pf.objective);
                    ensure(
                        verify_solution(&da, &db, &dc, y, &-z),
                        format!("companion certificate failed on {:?}", pf.name),
                    )?;
                }
                _ => {}
            }
        }
        Ok(format!(
            "{positives} positive-max and {negatives} negative-max certificates verified exactly"
        ))
    });
}

#[test]
fn criterion_oracle_cross_check_harness() {
    criterion("oracle-cross-check-harness", || {
        let corpus = corpus();
        let report = &corpus.report;
        ensure(
            corpus.report_elapsed < Duration::from_secs(60),
            format!("campaign took {:?}", corpus.report_elapsed),
        )?;
        ensure(
            report.tally.total() == 500,
            format!("classified {} of 500", report.tally.total()),
        )?;
        let divergences = report.tally.total() - report.tally.agree;
        ensure(
            report.records.len() == divergences,
            format!(
                "recorded {} of {} divergences",
                report.records.len(),
                divergences
            ),
        )?;
        for rec in &report.records {
            let replay = fuzz::replay_record(rec).map_err(|e| e.to_string())?;
            ensure(
                replay.reproduced,
                format!("record {} did not replay", rec.index),
            )?;
        }
        // The statistics must match an independent pass over the same
        // instances.
        let mut agree = 0usize;
        for (_, lpp, oracle) in &corpus.instances {
            if fuzz::classify(lpp, oracle) == fuzz::Classification::Agree {
                agree += 1;
            }
        }
        ensure(
            agree == report.tally.agree,
            "tally differs from recomputation",
        )?;
        let t = &report.tally;
        Ok(format!(
            "500 instances in {:?}: agree={} value={} status={} method-fail={} cap-overrun={}, all divergences replayable",
            corpus.report_elapsed, t.agree, t.value_mismatch, t.status_mismatch, t.method_fail,
            t.cap_overrun
        ))
    });
}

#[test]
fn criterion_oracle_validation() {
    criterion("oracle-validation", || {
        let (a, b, c) = instance_negmax();
        match simplex_solve(&a, &b, &c).status {
            OracleStatus::Optimal { z, .. } => {
                ensure(z == r("-45/7"), format!("oracle z = {z}"))?;
            }
            other => return Err(format!("oracle status {other:?}")),
        }

        let mut rng = SplitMix64::new(FUZZ_SEED ^ 0xFACE);
        let params = FuzzParams {
            m_max: 4,
            n_max: 4,
            count: 200,
            seed: 0,
            entry_range: 5,
        };
        let mut optimal = 0usize;
        let mut unbounded = 0usize;
        let mut infeasible = 0usize;
        for index in 0..params.count {
            let pf = fuzz::generate_instance(&mut rng, &params, index);
            let a = pf.matrix();
            let simplex = simplex_solve(&a, &pf.b, &pf.objective);
            ensure(
                simplex.pivots <= 10_000,
                format!("instance {index}: {} pivots", simplex.pivots),
            )?;
            let brute = brute_solve(&a, &pf.b, &pf.objective);
            match (&simplex.status, &brute) {
                (OracleStatus::Optimal { z, x }, BruteOutcome::Optimal(zb)) => {
                    optimal += 1;
                    ensure(z == zb, format!("instance {index}: {z} vs {zb}"))?;
                    ensure(
                        verify_solution(&a, &pf.b, &pf.objective, x, z),
                        format!("instance {index}: invalid simplex certificate"),
                    )?;
                }
                (OracleStatus::Unbounded { .. }, BruteOutcome::Unbounded) => unbounded += 1,
                (OracleStatus::Infeasible, BruteOutcome::Infeasible) => infeasible += 1,
                (s, b) => {
                    return Err(format!("instance {index}: simplex {s:?} vs brute {b:?}"));
                }
            }
        }
        Ok(format!(
            "200 instances vs vertex enumeration ({optimal} optimal, {unbounded} unbounded, {infeasible} infeasible), plus z=-45/7 confirmed"
        ))
    });
}

#[test]
fn criterion_interval_and_identity_suites() {
    criterion("interval-and-identity-suites", || {
        let mut rng = SplitMix64::new(FUZZ_SEED ^ 0xBEEF);
        let mut rat = |lo: i64, hi: i64| Rat::new(rng.int_in(lo, hi), rng.int_in(1, 12));

        // scaling, addition and linear images against corner enumeration
        for case in 0..1000 {
            let k = 1 + (case % 4);
            let alphas: Vec<Rat> = (0..k).map(|_| rat(-20, 20)).collect();
            let boxes: Vec<(Rat, Rat)> = (0..k)
                .map(|_| {
                    let a = rat(-20, 20);
                    let b = rat(-20, 20);
                    if a <= b { (a, b) } else { (b, a) }
                })
                .collect();

            // single-term scaling
            let scaled = general_scale(
                (
                    &ExtRat::Finite(boxes[0].0.clone()),
                    &ExtRat::Finite(boxes[0].1.clone()),
                ),
                &alphas[0],
            )
            .map_err(|e| e.to_string())?;
            let (p, q) = (&alphas[0] * &boxes[0].0, &alphas[0] * &boxes[0].1);
            let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
            ensure(
                scaled == (ExtRat::Finite(lo), ExtRat::Finite(hi)),
                format!("case {case}: scaling"),
            )?;

            // pairwise addition
            if k >= 2 {
                let sum = general_add(
                    (
                        &ExtRat::Finite(boxes[0].0.clone()),
                        &ExtRat::Finite(boxes[0].1.clone()),
                    ),
                    (
                        &ExtRat::Finite(boxes[1].0.clone()),
                        &ExtRat::Finite(boxes[1].1.clone()),
                    ),
                )
                .map_err(|e| e.to_string())?;
                ensure(
                    sum == (
                        ExtRat::Finite(&boxes[0].0 + &boxes[1].0),
                        ExtRat::Finite(&boxes[0].1 + &boxes[1].1),
                    ),
                    format!("case {case}: addition"),
                )?;
            }

            // full linear form vs all corners
            let terms: Vec<(Rat, (ExtRat, ExtRat))> = alphas
                .iter()
                .zip(&boxes)
                .map(|(a, (lo, hi))| {
                    (
                        a.clone(),
                        (ExtRat::Finite(lo.clone()), ExtRat::Finite(hi.clone())),
                    )
                })
                .collect();
            let (lo, hi) = linear_form_range(&terms).map_err(|e| e.to_string())?;
            let mut values = Vec::new();
            for mask in 0..(1u32 << k) {
                let mut acc = Rat::zero();
                for t in 0..k {
                    let pick = if mask & (1 << t) == 0 { &boxes[t].0 } else { &boxes[t].1 };
                    acc = acc + &alphas[t] * pick;
                }
                values.push(acc);
            }
            let vmin = values.iter().min().unwrap().clone();
            let vmax = values.iter().max().unwrap().clone();
            ensure(
                lo == ExtRat::Finite(vmin) && hi == ExtRat::Finite(vmax),
                format!("case {case}: linear form range"),
            )?;

            // symmetric image with lambda = 1: corners of the flavored box
            let h_coeff = rat(-20, 20);
            for flavor in [DomainFlavor::Pinned, DomainFlavor::Full] {
                let mag = linear_image(&alphas, &h_coeff, flavor);
                let mut extreme = Rat::zero();
                let var_corners: u32 = match flavor {
                    DomainFlavor::Pinned => 1,
                    DomainFlavor::Full => 1 << k,
                };
                for mask in 0..var_corners {
                    for h in [Rat::one(), -Rat::one()] {
                        let mut acc = &h_coeff * &h;
                        if flavor == DomainFlavor::Full {
                            for t in 0..k {
                                let x = if mask & (1 << t) == 0 {
                                    -Rat::one()
                                } else {
                                    Rat::one()
                                };
                                acc = acc + &alphas[t] * &x;
                            }
                        }
                        if acc.abs() > extreme {
                            extreme = acc.abs();
                        }
                    }
                }
                ensure(
                    mag.magnitude() == &ExtRat::Finite(extreme.clone()),
                    format!("case {case}: image magnitude {flavor:?}"),
                )?;
            }
        }

        // exchange identities on random single-row tableaux
        for case in 0..1000 {
            let n = 3 + (case % 3); // 3..=5 variables
            let mut row = vec![Rat::zero(); n + 2];
            for entry in row.iter_mut().take(n + 2).skip(1) {
                *entry = rat(-12, 12);
            }
            // two distinct nonzero pivot columns
            let j = 1 + (case % n);
            let mut jp = 1 + ((case / 2) % n);
            if jp == j {
                jp = 1 + (jp % n);
            }
            if row[j].is_zero() {
                row[j] = Rat::one();
            }
            if row[jp].is_zero() {
                row[jp] = -Rat::one();
            }
            let mut rows = vec![vec![Rat::zero(); n + 2]; 2];
            rows[0][0] = Rat::one();
            rows.push(row);
            let t = Tableau::from_grid(rows, (1..=n).collect(), 0)
                .map_err(|e| e.to_string())?;
            let fj = make_bound(&t, 1, j).map_err(|e| e.to_string())?.unwrap();
            let fjp = make_bound(&t, 1, jp).map_err(|e| e.to_string())?.unwrap();
            let v_j_jp = &fj.v()[jp - 1];
            ensure(!v_j_jp.is_zero(), "pivot coefficient must be nonzero")?;
            let scale = -v_j_jp.recip();
            for jpp in 1..=n {
                if jpp == j || jpp == jp {
                    continue;
                }
                ensure(
                    &scale * &fj.v()[jpp - 1] == fjp.v()[jpp - 1],
                    format!("case {case}: coefficient exchange at {jpp}"),
                )?;
            }
            ensure(
                &scale * fj.r() == *fjp.r(),
                format!("case {case}: h-coefficient exchange"),
            )?;
        }
        Ok("1000 interval cases vs corner enumeration and 1000 exchange identities, all exact"
            .to_string())
    });
}

#[test]
fn criterion_complexity_instrumentation() {
    criterion("complexity-instrumentation", || {
        let mut checked_steps = 0usize;
        let mut check_trace = |trace: &[StepRecord], n_vars: usize| -> Result<(), String> {
            let substitutions = trace.iter().filter(|s| s.selection.is_some()).count();
            ensure(
                substitutions <= n_vars,
                format!("{substitutions} substitutions for {n_vars} variables"),
            )?;
            for step in trace {
                let m = step.tableau.rows.len() as u64 - 2;
                let n = step.tableau.rows[0].len() as u64 - 2;
                let linear = (m + 2) * (n + 2);
                let product = linear * (n + 2);
                ensure(
                    step.counters.candidates <= 10 * linear,
                    format!(
                        "step {}: candidate phase read {} cells, budget {}",
                        step.k,
                        step.counters.candidates,
                        10 * linear
                    ),
                )?;
                ensure(
                    step.counters.update <= 2 * product,
                    format!(
                        "step {}: update read {} cells, budget {}",
                        step.k,
                        step.counters.update,
                        2 * product
                    ),
                )?;
                ensure(
                    step.counters.selection <= 2 * product,
                    format!("step {}: selection over budget", step.k),
                )?;
                ensure(
                    step.counters.sweeps <= 2 * product,
                    format!("step {}: sweeps over budget", step.k),
                )?;
                checked_steps += 1;
            }
            Ok(())
        };

        for (pf, lpp, _) in &corpus().instances {
            check_trace(&lpp.primal.trace, pf.cols())?;
            if let Some(dual) = &lpp.dual {
                check_trace(&dual.trace, pf.rows())?;
            }
            ensure(!lpp.cap_overrun(), "substitution cap overrun")?;
        }
        let resumed = pmrp::resume(posmax_state1(), EqualityLedger::new());
        check_trace(&resumed.trace, 4)?;
        let (a, b, c) = instance_negmax();
        let fixture = lpp_solve(&a, &b, &c).map_err(|e| e.to_string())?;
        check_trace(&fixture.primal.trace, 3)?;
        check_trace(&fixture.dual.as_ref().unwrap().trace, 5)?;

        Ok(format!(
            "{checked_steps} steps within 10(m+2)(n+2) search and 2(m+2)(n+2)^2 update budgets, all runs within n substitutions"
        ))
    });
}
