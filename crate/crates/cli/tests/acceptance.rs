//! Acceptance criteria, one PASS/FAIL line each. Tolerances and limits are
//! fixed here and nowhere else.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::process::Command;
use std::time::{Duration, Instant};

use conelab::facelat::enumerate_faces;
use conelab::fdc::classify_exposure;
use conelab::paperbench::{quotient_deviation, sandwich_report};
use conelab::tangents::tangential_depth;
use conelab::{Cone, Vector};
use serde_json::Value;

const SAMPLES: usize = 2001;
const CUBIC_TOL: f64 = 1e-10;
const CIRCLES_TOL: f64 = 1e-9;
const ROSHCHINA_TOL: f64 = 1e-9;
const QUOTIENT_STEP: f64 = 1e-4;
const QUOTIENT_TOL: f64 = 1e-7;
const MIN_REGION_NORMALS: usize = 20;
const CHECKS_PER_NORMAL: usize = 5;
const SUITE_LIMIT: Duration = Duration::from_secs(10);
const PROPERTY_CONES: u64 = 200;
const PROPERTY_LIMIT: Duration = Duration::from_secs(60);
const SANDWICH_SIZES: [usize; 3] = [5, 50, 500];

struct Outcome {
    id: &'static str,
    ok: bool,
    detail: String,
}

fn outcome(id: &'static str, checks: &[(bool, String)]) -> Outcome {
    let failed: Vec<&str> = checks.iter().filter(|c| !c.0).map(|c| c.1.as_str()).collect();
    let detail = if failed.is_empty() {
        checks.iter().map(|c| c.1.as_str()).collect::<Vec<_>>().join("; ")
    } else {
        format!("failed: {}", failed.join("; "))
    };
    Outcome { id, ok: failed.is_empty(), detail }
}

fn verify(example: &str, tol: f64) -> (Value, Duration, Option<i32>) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_conelab"))
        .args(["verify", example, "--samples", &SAMPLES.to_string(), "--tol", &tol.to_string()])
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (report, elapsed, out.status.code())
}

fn cert<'a>(report: &'a Value, name: &str) -> Option<&'a Value> {
    report["certificates"].as_array()?.iter().find(|c| c["name"] == name)
}

fn cert_passes(report: &Value, name: &str) -> (bool, String) {
    let ok = cert(report, name).is_some_and(|c| c["status"] == "PASS");
    (ok, format!("{name} {}", if ok { "passes" } else { "missing or failing" }))
}

fn suite_checks(report: &Value, elapsed: Duration, code: Option<i32>) -> Vec<(bool, String)> {
    vec![
        (code == Some(0) && report["status"] == "PASS", format!("report {} (exit {code:?})", report["status"])),
        (elapsed <= SUITE_LIMIT, format!("{:.2}s <= {}s", elapsed.as_secs_f64(), SUITE_LIMIT.as_secs())),
    ]
}

fn cubic() -> Outcome {
    let (r, t, code) = verify("cubic", CUBIC_TOL);
    let mut checks = suite_checks(&r, t, code);
    for name in [
        "f1_exact_zeros",
        "f1_normal_gamma1",
        "f1_normal_gamma2",
        "f2_normal",
        "f11_normal",
        "f12_stationary",
        "f12_support",
        "fdc_q_gamma1",
        "fdc_q_gamma2",
        "fdc_r_perp",
        "fdc_p_limit",
        "fdc_pbar_outside",
        "pbar_at_one",
    ] {
        checks.push(cert_passes(&r, name));
    }
    outcome("1 cubic certificate suite", &checks)
}

fn circles() -> Outcome {
    let (r, t, code) = verify("circles", CIRCLES_TOL);
    let mut checks = suite_checks(&r, t, code);
    for region in ["a", "b", "c", "d", "e", "f", "g", "h"] {
        let name = format!("region_{region}");
        let n = cert(&r, &name).and_then(|c| c["samples"].as_u64()).unwrap_or(0) as usize;
        checks.push(cert_passes(&r, &name));
        checks.push((n >= MIN_REGION_NORMALS * CHECKS_PER_NORMAL, format!("{name}: {n} checks")));
    }
    for name in [
        "polar_generators",
        "tangent_system_inner",
        "tangent_system_outer",
        "unexposed_subface",
        "top_face_witness",
        "bottom_face_witness",
    ] {
        checks.push(cert_passes(&r, name));
    }
    outcome("2 circles certificate suite", &checks)
}

fn roshchina() -> Outcome {
    let (r, t, code) = verify("roshchina", ROSHCHINA_TOL);
    let mut checks = suite_checks(&r, t, code);
    checks.push(cert_passes(&r, "difference_quotient_limit"));
    let dev = quotient_deviation(QUOTIENT_STEP);
    checks.push((
        dev <= QUOTIENT_TOL,
        format!("|gamma1(s)/s - g| = {dev:.3e} at s = {QUOTIENT_STEP:e}, required <= {QUOTIENT_TOL:e}"),
    ));
    outcome("3 roshchina suite", &checks)
}

fn properties() -> Outcome {
    let start = Instant::now();
    let result = support::run_suite(PROPERTY_CONES);
    let elapsed = start.elapsed();
    outcome(
        "4 polyhedral property suite",
        &[
            (result.is_ok(), format!("{PROPERTY_CONES} cones: {}", result.err().unwrap_or_else(|| "all hold".into()))),
            (elapsed <= PROPERTY_LIMIT, format!("{:.1}s <= {}s", elapsed.as_secs_f64(), PROPERTY_LIMIT.as_secs())),
        ],
    )
}

fn golden() -> Outcome {
    let v = |x: &[i64]| Vector::from_ints(x);
    let orthant = Cone::orthant(3);
    let diamond =
        Cone::from_generators(vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])], vec![], 3).unwrap();
    let halfspace = Cone::from_halfspaces(vec![v(&[0, 1])], vec![], 2).unwrap();
    let c = classify_exposure(&orthant).unwrap();
    let all_true = c.facially_exposed
        && c.tangentially_exposed
        && c.lex_tangents_facially_exposed
        && c.strongly_tangentially_exposed
        && c.fdc;
    let facets = [v(&[-1, -1, 1]), v(&[-1, 1, 1]), v(&[1, -1, 1]), v(&[1, 1, 1])];
    outcome(
        "5 named-cone golden values",
        &[
            (enumerate_faces(&orthant).len() == 8, "orthant: 8 faces".into()),
            (tangential_depth(&orthant).unwrap() == 1, "orthant: depth 1".into()),
            (all_true, "orthant: classify all true".into()),
            (enumerate_faces(&diamond).len() == 10, "diamond: 10 faces".into()),
            (diamond.facets() == facets && diamond.equations().is_empty(), "diamond: four facet normals".into()),
            (tangential_depth(&halfspace).unwrap() == 1, "halfspace: depth 1".into()),
        ],
    )
}

fn sandwich() -> Outcome {
    let r = sandwich_report(&SANDWICH_SIZES).unwrap();
    let checks: Vec<(bool, String)> =
        r.certificates.iter().map(|c| (c.passed(), format!("{} ({} products)", c.name, c.samples))).collect();
    outcome("6 sampled-cone sandwich", &checks)
}

fn main() {
    let outcomes = [cubic(), circles(), roshchina(), properties(), golden(), sandwich()];
    for o in &outcomes {
        println!("{} criterion {}: {}", if o.ok { "PASS" } else { "FAIL" }, o.id, o.detail);
    }
    let failed = outcomes.iter().filter(|o| !o.ok).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
