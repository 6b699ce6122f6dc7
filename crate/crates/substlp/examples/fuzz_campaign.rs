//! A small in-process cross-check campaign: random integer instances, both
//! solvers, a tally, and a replay of the first captured divergence.

use substlp::fuzz::{fuzz_run, replay_record, FuzzParams};

fn main() {
    let params = FuzzParams {
        m_max: 4,
        n_max: 4,
        count: 200,
        seed: 7,
        entry_range: 5,
    };
    let report = fuzz_run(&params);
    let t = &report.tally;
    println!(
        "{} instances: agree={} value-mismatch={} status-mismatch={} method-fail={} cap-overrun={}",
        t.total(),
        t.agree,
        t.value_mismatch,
        t.status_mismatch,
        t.method_fail,
        t.cap_overrun
    );

    if let Some(rec) = report.records.first() {
        println!(
            "first divergence at instance {}: {} (method {} vs oracle {})",
            rec.index, rec.divergence, rec.method.status, rec.oracle.status
        );
        let replay = replay_record(rec).expect("record is well-formed");
        println!("replay reproduces it: {}", replay.reproduced);
    } else {
        println!("no divergences in this campaign");
    }
}
