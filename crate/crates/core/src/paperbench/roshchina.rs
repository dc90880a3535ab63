//! Convex hull of four circular arcs through the origin, `t in [0, pi/4]`.
//!
//! The direction `g = (0, -1, 0)` is tangent to the hull at the origin but
//! is strictly separated from the face spanned by the last two arcs.

use std::f64::consts::FRAC_PI_4;

use num_traits::Zero;

use super::{require_samples, run_jobs, uniform_grid, Job, ParamCurve, Tally, ZERO_BAND};
use crate::error::Result;
use crate::exactla::{Rational, Scalar, Vector};
use crate::report::CheckReport;

const G: [f64; 3] = [0.0, -1.0, 0.0];

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

/// `cos t - 1` without cancellation.
fn cosm1(t: f64) -> f64 {
    let h = (t / 2.0).sin();
    -2.0 * h * h
}

fn gamma1(t: f64) -> [f64; 3] {
    [0.0, -t.sin(), cosm1(t)]
}

fn gamma2(t: f64) -> [f64; 3] {
    [0.0, cosm1(t), -t.sin()]
}

fn gamma3(t: f64) -> [f64; 3] {
    [-t.sin(), -cosm1(t), 0.0]
}

fn gamma4(t: f64) -> [f64; 3] {
    [cosm1(t), t.sin(), 0.0]
}

fn exact_trig(m: &Scalar) -> (Scalar, Scalar) {
    super::circle_point(m)
}

/// The four arcs. Exact sampling uses `m = tan(t/2)` in `[0, 2/5]`, which
/// stops just short of `t = pi/4`.
pub fn roshchina_curves() -> Vec<ParamCurve> {
    let iv = || (Rational::zero(), Rational::new(2.into(), 5.into()));
    vec![
        ParamCurve::new("gamma1", (0.0, FRAC_PI_4), gamma1).with_exact(iv(), |m| {
            let (c, s) = exact_trig(m);
            Vector::new(vec![Scalar::zero(), -s, c - Scalar::one()])
        }),
        ParamCurve::new("gamma2", (0.0, FRAC_PI_4), gamma2).with_exact(iv(), |m| {
            let (c, s) = exact_trig(m);
            Vector::new(vec![Scalar::zero(), c - Scalar::one(), -s])
        }),
        ParamCurve::new("gamma3", (0.0, FRAC_PI_4), gamma3).with_exact(iv(), |m| {
            let (c, s) = exact_trig(m);
            Vector::new(vec![-s, Scalar::one() - c, Scalar::zero()])
        }),
        ParamCurve::new("gamma4", (0.0, FRAC_PI_4), gamma4).with_exact(iv(), |m| {
            let (c, s) = exact_trig(m);
            Vector::new(vec![c - Scalar::one(), s, Scalar::zero()])
        }),
    ]
}

/// Distance of the difference quotient `gamma1(s)/s` from `g`.
pub fn quotient_deviation(s: f64) -> f64 {
    let p = gamma1(s);
    let q = [p[0] / s, p[1] / s, p[2] / s];
    ((q[0] - G[0]).powi(2) + (q[1] - G[1]).powi(2) + (q[2] - G[2]).powi(2)).sqrt()
}

/// Taylor bound `s/2 + s^2/6` on [`quotient_deviation`].
pub fn quotient_bound(s: f64) -> f64 {
    s / 2.0 + s * s / 6.0
}

pub fn verify_roshchina(samples: usize, tol: f64) -> Result<CheckReport> {
    require_samples(samples)?;
    let grid = uniform_grid(0.0, FRAC_PI_4, samples);
    let mut jobs: Vec<Job> = Vec::new();

    jobs.push(Box::new(|| {
        let mut t = Tally::new("difference_quotient_limit");
        let mut prev = f64::INFINITY;
        let mut last = f64::INFINITY;
        for k in 1..=12 {
            let s = 10f64.powi(-k);
            let p = gamma1(s);
            if k <= 4 {
                // cos s - 1 cancels badly below this; the half-angle form does not.
                t.agree(&((s.cos() - 1.0) / s), &(p[2] / s), tol);
            }
            let dev = quotient_deviation(s);
            t.check(dev <= quotient_bound(s) + 1e-15, (dev - quotient_bound(s)).max(0.0));
            t.check(dev < prev, 0.0);
            prev = dev;
            last = dev;
        }
        t.check(last <= tol, last);
        t.finish()
    }));

    let g3 = grid.clone();
    jobs.push(Box::new(move || {
        let mut t = Tally::new("separation_gamma3");
        for &x in &g3 {
            let direct = dot3(&G, &gamma3(x));
            let factored = x.cos() - 1.0;
            t.agree(&factored, &direct, tol);
            t.negative(&direct, tol, x.abs() < ZERO_BAND);
        }
        t.zero(&dot3(&G, &gamma3(0.0)), 0.0);
        t.finish()
    }));

    let g4 = grid.clone();
    jobs.push(Box::new(move || {
        let mut t = Tally::new("separation_gamma4");
        for &x in &g4 {
            let direct = dot3(&G, &gamma4(x));
            t.agree(&-x.sin(), &direct, tol);
            t.negative(&direct, tol, x.abs() < ZERO_BAND);
        }
        t.zero(&dot3(&G, &gamma4(0.0)), 0.0);
        t.finish()
    }));

    jobs.push(Box::new(move || {
        // g lies in the plane of the face but <g, g> > 0 while <g, x> <= 0 on it.
        let mut t = Tally::new("g_outside_face_tangent");
        t.zero(&G[2], 0.0);
        for &x in &grid {
            t.zero(&gamma3(x)[2], 0.0);
            t.zero(&gamma4(x)[2], 0.0);
        }
        t.positive(&dot3(&G, &G), tol, false);
        t.finish()
    }));

    let mut report = CheckReport::new("roshchina");
    report.tolerance = Some(tol);
    report.samples = Some(samples);
    for c in run_jobs(jobs) {
        report.push(c);
    }
    report.finish("TANGENTIAL_EXPOSURE_FAILS", "certificate failed");
    Ok(report)
}
