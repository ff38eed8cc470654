//! One pass/fail line per acceptance criterion. Run with
//! `cargo test -p biquat-verify --test acceptance -- --nocapture` to see the lines.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use biquat::lorentz::{l32_action, LorentzElement};
use biquat::{Biquaternion, Frame};
use biquat_verify::coverage::{required_anchors, TABLE};
use biquat_verify::suites::rs::ORACLE_SOLUTION_DIM;
use biquat_verify::{run_with, RunConfig, Status, SuiteResult};
use serde_json::Value;

const FULL_RUN_BUDGET: Duration = Duration::from_secs(60);
const TWO_BOOST_MARGIN: f64 = 1e-3;
const FIXTURE_TOL: f64 = 1e-12;
const FIT_TOL: f64 = 1e-6;

const NAMES: [&str; 14] = [
    "algebra exactness and Hamilton signs",
    "Peirce decomposition",
    "spin matrices, Casimir and eigenstates",
    "exponentials and periodicity",
    "scalar products",
    "Dirac-Lanczos equation and doublet",
    "Lorentz actions",
    "index identities and commutator",
    "coupled contraction chain",
    "constraint counting",
    "bilinear covariants",
    "two-boost closure",
    "massive vector potential",
    "harness",
];

struct Line {
    ok: bool,
    detail: String,
}

fn group(results: &[SuiteResult], criterion: &BTreeMap<String, u8>, n: u8) -> Line {
    let mine: Vec<&SuiteResult> = results.iter().filter(|r| criterion[&r.suite_id] == n).collect();
    let failed: Vec<&str> = mine.iter().filter(|r| r.status == Status::Fail).map(|r| r.suite_id.as_str()).collect();
    let witnesses = mine.iter().filter(|r| r.status == Status::Witness).count();
    let max = mine.iter().filter(|r| r.status == Status::Pass).map(|r| r.max_residual).fold(0.0, f64::max);
    let ok = !mine.is_empty() && failed.is_empty();
    let detail = if mine.is_empty() {
        "no suites registered".into()
    } else if ok {
        format!("{} suites, {} witnesses, max residual {:e}", mine.len(), witnesses, max)
    } else {
        format!("failed: {}", failed.join(", "))
    };
    Line { ok, detail }
}

fn fixture_counts() -> Result<String, String> {
    let f = Frame::standard();
    for p in common::momenta() {
        let (after, sol) = common::dense_counts(&p, &f);
        if after != 16 || sol != ORACLE_SOLUTION_DIM {
            return Err(format!("dense counts {after}/{sol} at {p:?}"));
        }
    }
    Ok(format!("dense oracle 16 -> {ORACLE_SOLUTION_DIM}"))
}

fn bq(v: &Value) -> Biquaternion<f64> {
    let xs: Vec<f64> = v.as_array().expect("array").iter().map(|x| x.as_f64().expect("number")).collect();
    Biquaternion::from_real8(&core::array::from_fn(|i| xs[i]))
}

fn committed_witness(results: &[SuiteResult]) -> Result<String, String> {
    let fixture: Value = serde_json::from_str(include_str!("fixtures/two_boost_witness.json")).map_err(|e| e.to_string())?;
    let l1 = LorentzElement::from_parts(bq(&fixture["l1"]), Biquaternion::one());
    let l2 = LorentzElement::from_parts(bq(&fixture["l2"]), Biquaternion::one());
    let natural = l32_action(&l1.compose(&l2)).max_abs_diff(&l32_action(&l1).compose(&l32_action(&l2)));
    let stored = fixture["natural_max_defect"].as_f64().unwrap_or(f64::NAN);
    if (natural - stored).abs() > FIXTURE_TOL || natural <= TWO_BOOST_MARGIN {
        return Err(format!("recomputed defect {natural:e}, committed {stored:e}"));
    }
    let run = results.iter().find(|r| r.suite_id == fixture["suite_id"]).ok_or("witness suite not run")?;
    let payload = run.witness_payload.as_ref().ok_or("no payload")?;
    for key in ["l1", "l2"] {
        if (&bq(&payload[key]) - &bq(&fixture[key])).max_abs() > FIXTURE_TOL {
            return Err(format!("payload field {key} differs from the committed witness"));
        }
    }
    // the best fit comes from a local optimizer
    for (key, tol) in [("natural_max_defect", FIXTURE_TOL), ("best_fit_frobenius", FIT_TOL)] {
        let (a, b) = (payload[key].as_f64().unwrap_or(f64::NAN), fixture[key].as_f64().unwrap_or(f64::NAN));
        if !((a - b).abs() <= tol) {
            return Err(format!("payload field {key} is {a:e}, committed {b:e}"));
        }
    }
    Ok(format!("committed witness reproduced, defect {natural:e}"))
}

fn harness(first: &[SuiteResult], second: &[SuiteResult], elapsed: Duration) -> Line {
    let ids: Vec<String> = biquat_verify::suites::all().into_iter().map(|s| s.id).collect();
    let mut problems = Vec::new();
    if first != second {
        problems.push("two runs with the same seed differ".to_string());
    }
    if elapsed > FULL_RUN_BUDGET {
        problems.push(format!("full run took {elapsed:?}"));
    }
    for r in first.iter().step_by(7) {
        let alone = run_with(&biquat_verify::suites::all(), &RunConfig { filter: glob::Pattern::escape(&r.suite_id), ..RunConfig::default() });
        if alone.as_deref() != Ok(std::slice::from_ref(r)) {
            problems.push(format!("{} differs when run alone", r.suite_id));
        }
    }
    for r in first {
        let listed = TABLE.iter().any(|e| e.anchor == r.paper_anchor && e.suites.iter().any(|p| glob::Pattern::new(p).unwrap().matches(&r.suite_id)));
        if r.paper_anchor.is_empty() || !listed {
            problems.push(format!("{} has no coverage entry under {}", r.suite_id, r.paper_anchor));
        }
    }
    for a in required_anchors() {
        if !TABLE.iter().any(|e| e.anchor == a) {
            problems.push(format!("{a} missing from coverage"));
        }
    }
    for e in TABLE {
        for p in e.suites {
            let pat = glob::Pattern::new(p).unwrap();
            if !ids.iter().any(|id| pat.matches(id)) {
                problems.push(format!("coverage pattern {p} matches no suite"));
            }
        }
    }
    let ok = problems.is_empty();
    let detail = if ok { format!("deterministic and order independent, {} suites anchored, full run {:.1} s", first.len(), elapsed.as_secs_f64()) } else { problems.join("; ") };
    Line { ok, detail }
}

#[test]
fn acceptance() {
    let suites = biquat_verify::suites::all();
    let criterion: BTreeMap<String, u8> = suites.iter().map(|s| (s.id.clone(), s.criterion)).collect();
    let cfg = RunConfig::default();
    let start = Instant::now();
    let first = run_with(&suites, &cfg).expect("valid config");
    let elapsed = start.elapsed();
    let second = run_with(&suites, &cfg).expect("valid config");

    let mut lines: Vec<Line> = (1..=13).map(|n| group(&first, &criterion, n)).collect();
    let extend = |line: &mut Line, extra: Result<String, String>| match extra {
        Ok(s) => line.detail.push_str(&format!("; {s}")),
        Err(s) => {
            line.ok = false;
            line.detail.push_str(&format!("; {s}"));
        }
    };
    extend(&mut lines[9], fixture_counts());
    extend(&mut lines[11], committed_witness(&first));
    lines.push(harness(&first, &second, elapsed));

    for (i, l) in lines.iter().enumerate() {
        println!("[{}] criterion {:>2} {}: {}", if l.ok { "PASS" } else { "FAIL" }, i + 1, NAMES[i], l.detail);
    }
    let failed: Vec<usize> = lines.iter().enumerate().filter(|(_, l)| !l.ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
