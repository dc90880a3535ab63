//! Convex hull of the arcs `(cos t, sin t, 1)`, `t in [0, pi/2]`, and
//! `(cos t, sin t, -1)`, `t in [0, pi]`.
//!
//! The hull and its homogenization are facially exposed and FDC, but the
//! tangent cone at `(0, 1, 1)` has an unexposed face.

use std::f64::consts::{FRAC_PI_2, PI};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{circle_point, require_samples, run_jobs, uniform_grid, Job, ParamCurve, Tally};
use crate::cone::Cone;
use crate::error::Result;
use crate::exactla::{Rational, Scalar, Vector};
use crate::report::{CertificateResult, CheckReport};

const POLAR: &str = "polar: <g, (x, 1)> <= 0";
const XBAR: [f64; 3] = [0.0, 1.0, 1.0];
/// Normals sampled per region.
const PER_REGION: usize = 24;

fn gamma1(t: f64) -> [f64; 3] {
    [t.cos(), t.sin(), 1.0]
}

fn gamma2(t: f64) -> [f64; 3] {
    [t.cos(), t.sin(), -1.0]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn dot4(a: &[f64; 4], b: &[f64; 4]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3]
}

fn lift(p: [f64; 3]) -> [f64; 4] {
    [p[0], p[1], p[2], 1.0]
}

/// The two arcs; exact sampling uses rational points of the circle.
pub fn circles_curves() -> Vec<ParamCurve> {
    vec![
        ParamCurve::new("gamma1", (0.0, FRAC_PI_2), gamma1).with_exact((Rational::zero(), Rational::one()), |m| {
            let (c, s) = circle_point(m);
            Vector::new(vec![c, s, Scalar::one()])
        }),
        ParamCurve::new("gamma2", (0.0, PI), gamma2).with_exact(
            (-Rational::one(), Rational::one()),
            |m| {
                // Angle pi/2 + 2 atan(m).
                let (c, s) = circle_point(m);
                Vector::new(vec![-s, c, Scalar::from_int(-1)])
            },
        ),
    ]
}

/// Families of normals `v` split by the sign pattern of `(v1, v2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Region {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    H,
}

impl Region {
    pub const ALL: [Region; 8] =
        [Region::A, Region::B, Region::C, Region::D, Region::E, Region::F, Region::G, Region::H];

    pub fn of(v: [f64; 3]) -> Region {
        let (v1, v2) = (v[0], v[1]);
        if v1 > 0.0 {
            if v2 > 0.0 {
                Region::A
            } else {
                Region::G
            }
        } else if v2 > 0.0 {
            Region::B
        } else if v1 == 0.0 {
            if v2 == 0.0 {
                Region::H
            } else {
                Region::F
            }
        } else if v2 > v1 {
            Region::C
        } else if v2 == v1 {
            Region::D
        } else {
            Region::E
        }
    }

    fn cert_name(self) -> &'static str {
        match self {
            Region::A => "region_a",
            Region::B => "region_b",
            Region::C => "region_c",
            Region::D => "region_d",
            Region::E => "region_e",
            Region::F => "region_f",
            Region::G => "region_g",
            Region::H => "region_h",
        }
    }

    /// Seeded normals inside the region.
    fn sample(self, rng: &mut ChaCha8Rng, k: usize) -> [f64; 3] {
        let v3 = rng.gen_range(-2.0..2.0);
        let pos = |rng: &mut ChaCha8Rng| rng.gen_range(0.05..2.0);
        match self {
            Region::A => [pos(rng), pos(rng), v3],
            Region::B => [if k == 0 { 0.0 } else { -pos(rng) }, pos(rng), v3],
            Region::C => {
                let v1 = -pos(rng);
                let v2 = if k == 0 { 0.0 } else { v1 * rng.gen_range(0.02..0.98) };
                [v1, v2, v3]
            }
            Region::D => {
                let v1 = -pos(rng);
                [v1, v1, v3]
            }
            Region::E => {
                let v1 = -pos(rng);
                [v1, v1 - pos(rng), v3]
            }
            Region::F => [0.0, -pos(rng), v3],
            Region::G => [pos(rng), if k == 0 { 0.0 } else { -pos(rng) }, v3],
            Region::H => {
                if k == 0 {
                    [0.0, 0.0, 1.0]
                } else {
                    let m = pos(rng);
                    [0.0, 0.0, if k % 2 == 0 { m } else { -m }]
                }
            }
        }
    }
}

/// A maximizer of `<v, x>` over the two arcs.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Argmax {
    Point { curve: usize, t: f64 },
    Whole { curve: usize },
}

/// Closed-form support value and maximizer set.
#[derive(Clone, Debug, Serialize)]
pub struct Support {
    pub region: Region,
    pub value: f64,
    pub argmax: Vec<Argmax>,
    /// Best value on each arc.
    pub per_curve: [f64; 2],
}

/// Support function of the hull at `v`, region by region.
pub fn closed_form_support(v: [f64; 3]) -> Support {
    use Argmax::{Point, Whole};
    let [v1, v2, v3] = v;
    let s = v1.hypot(v2);
    let region = Region::of(v);
    let top = |t| Point { curve: 0, t };
    let bot = |t| Point { curve: 1, t };
    let ((m1, a1), (m2, a2)): ((f64, Vec<Argmax>), (f64, Vec<Argmax>)) = match region {
        Region::A => ((s + v3, vec![top(v2.atan2(v1))]), (s - v3, vec![bot(v2.atan2(v1))])),
        Region::B => ((v2 + v3, vec![top(FRAC_PI_2)]), (s - v3, vec![bot(v2.atan2(v1))])),
        Region::C => ((v2 + v3, vec![top(FRAC_PI_2)]), (-v1 - v3, vec![bot(PI)])),
        Region::D => ((v1 + v3, vec![top(0.0), top(FRAC_PI_2)]), (-v1 - v3, vec![bot(PI)])),
        Region::E => ((v1 + v3, vec![top(0.0)]), (-v1 - v3, vec![bot(PI)])),
        Region::F => ((v3, vec![top(0.0)]), (-v3, vec![bot(0.0), bot(PI)])),
        Region::G => ((v1 + v3, vec![top(0.0)]), (v1 - v3, vec![bot(0.0)])),
        Region::H => ((v3, vec![Whole { curve: 0 }]), (-v3, vec![Whole { curve: 1 }])),
    };
    let value = m1.max(m2);
    let mut argmax = Vec::new();
    if m1 == value {
        argmax.extend(a1);
    }
    if m2 == value {
        argmax.extend(a2);
    }
    Support { region, value, argmax, per_curve: [m1, m2] }
}

fn curve_point(curve: usize, t: f64) -> [f64; 3] {
    if curve == 0 {
        gamma1(t)
    } else {
        gamma2(t)
    }
}

fn region_job<'a>(region: Region, samples: usize, tol: f64) -> Job<'a> {
    Box::new(move || {
        let mut t = Tally::new(region.cert_name());
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + region as u64);
        let grids = [uniform_grid(0.0, FRAC_PI_2, samples), uniform_grid(0.0, PI, samples)];
        let steps = [FRAC_PI_2 / (samples - 1) as f64, PI / (samples - 1) as f64];
        let mut skipped = 0;
        for k in 0..PER_REGION {
            let v = region.sample(&mut rng, k);
            t.check(Region::of(v) == region, 0.0);
            let sup = closed_form_support(v);
            let amp = v[0].hypot(v[1]);
            let bound = amp * steps[1] * steps[1] / 8.0 + tol;

            for a in &sup.argmax {
                match *a {
                    Argmax::Point { curve, t: p } => {
                        let direct = dot3(&v, &curve_point(curve, p));
                        t.agree(&sup.value, &direct, tol);
                    }
                    Argmax::Whole { curve } => {
                        for &x in &grids[curve] {
                            t.agree(&sup.value, &dot3(&v, &curve_point(curve, x)), tol);
                        }
                    }
                }
            }

            let mut best = (f64::NEG_INFINITY, 0usize, 0.0f64);
            for (c, g) in grids.iter().enumerate() {
                for &x in g {
                    let val = dot3(&v, &curve_point(c, x));
                    if val > best.0 {
                        best = (val, c, x);
                    }
                }
            }
            t.check(best.0 <= sup.value + tol, (best.0 - sup.value).max(0.0));
            t.check(sup.value - best.0 <= bound, (sup.value - best.0 - bound).max(0.0));

            let gap = (sup.per_curve[0] - sup.per_curve[1]).abs();
            if gap != 0.0 && gap <= 2.0 * bound {
                skipped += 1;
                continue;
            }
            let near = sup.argmax.iter().any(|a| match *a {
                Argmax::Point { curve, t: p } => curve == best.1 && (p - best.2).abs() <= steps[curve] + 1e-12,
                Argmax::Whole { curve } => curve == best.1,
            });
            t.check(near, if near { 0.0 } else { (sup.value - best.0).abs().max(f64::MIN_POSITIVE) });
        }
        if skipped > 0 {
            t.note(format!("{skipped} near-tied normals skipped in the location check"));
        }
        t.finish()
    })
}

fn s1(t: f64) -> [f64; 4] {
    [t.cos(), t.sin(), 0.0, -1.0]
}

fn s2(tau: f64) -> [f64; 4] {
    let (c, s) = (tau.cos(), tau.sin());
    [c, s, (1.0 - s) / 2.0, (-1.0 - s) / 2.0]
}

const S3: [[f64; 4]; 5] =
    [[0.0, 0.0, 1.0, -1.0], [0.0, 0.0, -1.0, -1.0], [-1.0, -1.0, 1.0, 0.0], [0.0, -1.0, 0.0, 0.0], [0.0, 0.0, 0.0, -1.0]];

fn polar_jobs<'a>(samples: usize, tol: f64) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();
    jobs.push(Box::new(move || {
        let mut t = Tally::new("polar_generators").convention(POLAR);
        let g1 = uniform_grid(0.0, FRAC_PI_2, samples);
        let g2 = uniform_grid(0.0, PI, samples);
        let taus = uniform_grid(FRAC_PI_2, PI, samples);
        for &a in &g1 {
            let g = s1(a);
            for &x in &g1 {
                let direct = dot4(&g, &lift(gamma1(x)));
                t.agree(&((a - x).cos() - 1.0), &direct, tol);
                t.nonpos(&direct, tol);
            }
            for &x in &g2 {
                let direct = dot4(&g, &lift(gamma2(x)));
                t.agree(&((a - x).cos() - 1.0), &direct, tol);
                t.nonpos(&direct, tol);
            }
        }
        for &tau in &taus {
            let g = s2(tau);
            for &x in &g1 {
                let direct = dot4(&g, &lift(gamma1(x)));
                t.agree(&((tau - x).cos() - tau.sin()), &direct, tol);
                t.nonpos(&direct, tol);
            }
            for &x in &g2 {
                let direct = dot4(&g, &lift(gamma2(x)));
                t.agree(&((tau - x).cos() - 1.0), &direct, tol);
                t.nonpos(&direct, tol);
            }
        }
        for g in &S3 {
            for &x in &g1 {
                t.nonpos(&dot4(g, &lift(gamma1(x))), tol);
            }
            for &x in &g2 {
                t.nonpos(&dot4(g, &lift(gamma2(x))), tol);
            }
        }
        t.finish()
    }));
    jobs.push(Box::new(move || {
        // 0 is not in the convex hull of the generators: all are negative on
        // the interior point (0, 1, 0, 2).
        let mut t = Tally::new("polar_generators_pointed").convention(POLAR);
        let p = [0.0, 1.0, 0.0, 2.0];
        for &a in &uniform_grid(0.0, FRAC_PI_2, samples) {
            t.negative(&dot4(&s1(a), &p), tol, false);
        }
        for &tau in &uniform_grid(FRAC_PI_2, PI, samples) {
            t.negative(&dot4(&s2(tau), &p), tol, false);
        }
        for g in &S3 {
            t.negative(&dot4(g, &p), tol, false);
        }
        t.finish()
    }));
    jobs
}

/// Exact generators of the polar from `n` rational points per arc.
pub fn circles_polar_generators(n: usize) -> Vec<Vector> {
    let mut out = Vec::new();
    for i in 0..n {
        let m = Scalar::ratio(i as i64, (n - 1) as i64);
        let (c, s) = circle_point(&m);
        out.push(Vector::new(vec![c.clone(), s.clone(), Scalar::zero(), Scalar::from_int(-1)]));
        // tau = pi/2 + 2 atan(m): cos tau = -s, sin tau = c.
        let half = Scalar::ratio(1, 2);
        out.push(Vector::new(vec![
            -s,
            c.clone(),
            (Scalar::one() - &c) * &half,
            (Scalar::from_int(-1) - &c) * &half,
        ]));
    }
    for g in S3 {
        out.push(g.iter().map(|&x| Scalar::from_int(x as i64)).collect());
    }
    out
}

fn sys1_slack(d: [f64; 3]) -> f64 {
    let [x, y, z] = d;
    let root = (z * z - 4.0 * x * x).max(0.0).sqrt();
    [-z, x + y - z, root - (2.0 * y - z), 2.0 * x - z, -x].into_iter().fold(f64::INFINITY, f64::min)
}

fn sys2_slack(d: [f64; 3]) -> f64 {
    let [x, y, z] = d;
    [-z, x + y - z, -y, x, 2.0 * x - z].into_iter().fold(f64::INFINITY, f64::min)
}

/// Largest slack of the two systems describing the tangent cone at (0, 1, 1).
pub fn tangent_system_slack(d: [f64; 3]) -> f64 {
    sys1_slack(d).max(sys2_slack(d))
}

/// Listed normals of the tangent cone at (0, 1, 1), curved family sampled
/// at `u = -tan(theta)`.
fn tangent_normals(samples: usize) -> Vec<([f64; 3], Option<f64>)> {
    let mut out: Vec<([f64; 3], Option<f64>)> = uniform_grid(0.0, FRAC_PI_2, samples + 1)
        .into_iter()
        .take(samples)
        .map(|th| {
            let u = -th.tan();
            ([2.0 * u, 2.0, (u * u + 1.0).sqrt() - 1.0], Some(u))
        })
        .collect();
    out.extend([([0.0, 0.0, 1.0], None), ([-1.0, 0.0, 0.5], None), ([-1.0, -1.0, 1.0], None)]);
    out
}

fn random_direction(rng: &mut ChaCha8Rng) -> [i64; 3] {
    [rng.gen_range(-16..=16), rng.gen_range(-16..=16), rng.gen_range(-16..=16)]
}

fn inner_tangent_cone(per_curve: usize) -> Result<Cone> {
    let mut rays = vec![Vector::from_ints(&[-1, 0, 0])];
    for c in circles_curves() {
        for p in c.exact_samples(per_curve).expect("exact arcs") {
            let d: Vector = (0..3).map(|k| &p[k] - &Scalar::from_int(XBAR[k] as i64)).collect();
            if !d.is_zero() {
                rays.push(d);
            }
        }
    }
    Cone::from_generators(rays, Vec::new(), 3)
}

fn tangent_jobs<'a>(samples: usize, tol: f64) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();

    jobs.push(Box::new(move || {
        let mut t = Tally::new("tangent_normals");
        let g1 = uniform_grid(0.0, FRAC_PI_2, samples);
        let g2 = uniform_grid(0.0, PI, samples);
        for (n, u) in tangent_normals(samples) {
            for &x in &g1 {
                let p = gamma1(x);
                t.nonpos(&dot3(&n, &[p[0] - XBAR[0], p[1] - XBAR[1], p[2] - XBAR[2]]), tol);
            }
            for &x in &g2 {
                let p = gamma2(x);
                let direct = dot3(&n, &[p[0] - XBAR[0], p[1] - XBAR[1], p[2] - XBAR[2]]);
                if let Some(u) = u {
                    let factored = 2.0 * (u * x.cos() + x.sin() - (u * u + 1.0).sqrt());
                    t.agree(&factored, &direct, tol * (1.0 + u.abs()));
                }
                t.nonpos(&direct, tol * (1.0 + n[0].abs()));
            }
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        // Directions satisfying either system are feasible: they lie in a
        // cone generated by exact chords from (0, 1, 1).
        let mut t = Tally::new("tangent_system_inner");
        let inner = match inner_tangent_cone(48) {
            Ok(c) => c,
            Err(e) => {
                t.note(e.to_string());
                t.check(false, f64::INFINITY);
                return t.finish();
            }
        };
        let mut rng = ChaCha8Rng::seed_from_u64(0x7a_0001);
        let mut found = 0;
        while found < 30 {
            let d = random_direction(&mut rng);
            let df = d.map(|x| x as f64 / 16.0);
            let norm = df.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if norm == 0.0 || tangent_system_slack(df) < 0.1 * norm {
                continue;
            }
            found += 1;
            let dv = Vector::from_ints(&d);
            let inside = inner.contains(&dv).unwrap_or(false);
            t.check(inside, if inside { 0.0 } else { norm });
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        // The systems are the polar of the listed normals.
        let mut t = Tally::new("tangent_system_outer");
        let normals = tangent_normals(samples.min(4001));
        let mut rng = ChaCha8Rng::seed_from_u64(0x7a_0002);
        let (mut inside, mut outside) = (0, 0);
        while inside < 30 || outside < 30 {
            let df = random_direction(&mut rng).map(|x| x as f64 / 16.0);
            let norm = df.iter().fold(0.0f64, |m, x| m.max(x.abs()));
            if norm == 0.0 {
                continue;
            }
            let slack = tangent_system_slack(df);
            let worst = normals.iter().map(|(n, _)| dot3(n, &df)).fold(f64::NEG_INFINITY, f64::max);
            if slack >= 0.1 * norm && inside < 30 {
                inside += 1;
                t.nonpos(&worst, tol);
                t.nonpos(&df[1], tol);
            } else if slack <= -0.1 * norm && outside < 30 {
                outside += 1;
                t.positive(&worst, tol, false);
            }
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        // d(t) = (-sqrt(t(t+1)), y(t), -1) on the boundary of the first
        // system. Any p = (u, v, 0) with u < 0 has <p, d(t)> > 0 for small t,
        // so p does not support the tangent cone.
        let mut t = Tally::new("unexposed_subface");
        let mut rng = ChaCha8Rng::seed_from_u64(0x7a_0003);
        let ps: Vec<(f64, f64)> = (0..20).map(|_| (-rng.gen_range(0.1..2.0), rng.gen_range(-2.0..2.0))).collect();
        let mut prev = vec![f64::INFINITY; ps.len()];
        for k in 1..=10 {
            let tt = 10f64.powi(-2 * k);
            let r = (tt * (tt + 1.0)).sqrt();
            let y = -2.0 * tt * (tt + 1.0) / (1.0 + (1.0 - 4.0 * tt * (tt + 1.0)).sqrt());
            let d = [-r, y, -1.0];
            t.nonneg(&sys1_slack(d), tol);
            for (j, &(u, v)) in ps.iter().enumerate() {
                let ip = u * d[0] + v * d[1];
                let ratio = ip / r;
                t.agree(&-u, &ratio, v.abs() * y.abs() / r + tol);
                // The ratio converges to -u like sqrt(t).
                let dev = (ratio + u).abs();
                t.check(dev < prev[j], 0.0);
                prev[j] = dev;
                if k >= 5 {
                    t.positive(&ip, tol, false);
                }
            }
            // The limit (0, 0, -1) is in the subface x = y = 0.
            t.check(r.max(y.abs()) <= 2.0 * tt.sqrt(), 0.0);
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        // (-sqrt(t(t+1)), -t, -1) misses the first system by O(t^2), so it
        // is only asymptotically tangent.
        let mut t = Tally::new("printed_family_asymptotic");
        for k in 1..=6 {
            let tt = 10f64.powi(-k);
            let d = [-(tt * (tt + 1.0)).sqrt(), -tt, -1.0];
            let miss = (-sys1_slack(d)).max(0.0);
            t.check(miss <= 8.0 * tt * tt + tol, (miss - 8.0 * tt * tt).max(0.0));
        }
        t.note("the printed family violates 2y - z <= sqrt(z^2 - 4x^2) by about 4t^2");
        t.finish()
    }));

    jobs
}

fn sqrt2() -> Scalar {
    Scalar::sqrt(2).expect("2 is square-free")
}

/// Projection of `x` onto the basis `p`.
fn project(p: &[Vector; 3], x: &Vector) -> Vector {
    p.iter().map(|b| b.dot(x)).collect()
}

fn exact_generators(n: usize) -> (Vec<Vector>, Vec<Vector>, Vec<Vector>) {
    let all = circles_polar_generators(n);
    let (curves, fixed) = all.split_at(2 * n);
    let s1 = curves.iter().step_by(2).cloned().collect();
    let s2 = curves.iter().skip(1).step_by(2).cloned().collect();
    (s1, s2, fixed.to_vec())
}

struct Witness {
    name: &'static str,
    basis: [Vector; 3],
    perp: Vector,
    span: [Vector; 3],
    w: Vector,
    listed_fixed: Vec<Vector>,
    listed_values: Vec<Scalar>,
    listed_s1: fn(&Scalar, &Scalar) -> Vector,
    listed_s2: fn(&Scalar, &Scalar) -> Vector,
    float_s1: Box<dyn Fn(f64) -> f64 + Send>,
    float_s2: Box<dyn Fn(f64) -> f64 + Send>,
}

fn top_witness() -> Witness {
    let r = sqrt2();
    let h = Scalar::one() / &r;
    let z = Scalar::ratio(5, 2);
    let zf = 2.5f64;
    let v = |x: [Scalar; 3]| Vector::new(x.to_vec());
    let zero = Scalar::zero;
    let one = Scalar::one;
    Witness {
        name: "top_face_witness",
        basis: [
            Vector::from_ints(&[1, 0, 0, 0]),
            Vector::from_ints(&[0, 1, 0, 0]),
            Vector::new(vec![zero(), zero(), h.clone(), h.clone()]),
        ],
        perp: Vector::from_ints(&[0, 0, 1, -1]),
        span: [Vector::from_ints(&[1, 0, 1, 1]), Vector::from_ints(&[0, 1, 1, 1]), Vector::from_ints(&[0, 0, 1, 1])],
        w: v([one(), one(), z.clone()]),
        listed_fixed: vec![
            v([zero(), zero(), zero()]),
            v([zero(), zero(), -r.clone()]),
            v([-one(), -one(), h.clone()]),
            v([zero(), -one(), zero()]),
            v([zero(), zero(), -h.clone()]),
        ],
        listed_values: vec![-(&z * &r), Scalar::from_int(-2) + &z / &r, Scalar::from_int(-1), -(&z / &r)],
        listed_s1: |c, s| Vector::new(vec![c.clone(), s.clone(), -(Scalar::one() / sqrt2())]),
        listed_s2: |c, s| Vector::new(vec![c.clone(), s.clone(), -(s / &sqrt2())]),
        float_s1: Box::new(move |t| t.cos() + t.sin() - zf / 2f64.sqrt()),
        float_s2: Box::new(move |t| t.cos() + t.sin() - zf / 2f64.sqrt() * t.sin()),
    }
}

fn bottom_witness() -> Witness {
    let r = sqrt2();
    let h = Scalar::one() / &r;
    let y = Scalar::ratio(1, 2);
    let yf = 0.5f64;
    let v = |x: [Scalar; 3]| Vector::new(x.to_vec());
    let zero = Scalar::zero;
    let one = Scalar::one;
    Witness {
        name: "bottom_face_witness",
        basis: [
            Vector::from_ints(&[1, 0, 0, 0]),
            Vector::from_ints(&[0, 1, 0, 0]),
            Vector::new(vec![zero(), zero(), h.clone(), -h.clone()]),
        ],
        perp: Vector::from_ints(&[0, 0, 1, 1]),
        span: [
            Vector::from_ints(&[1, 0, 1, -1]),
            Vector::from_ints(&[0, 1, 1, -1]),
            Vector::from_ints(&[0, 0, 1, -1]),
        ],
        w: v([zero(), y.clone(), -one()]),
        listed_fixed: vec![
            v([zero(), zero(), r.clone()]),
            v([zero(), zero(), zero()]),
            v([-one(), -one(), h.clone()]),
            v([zero(), -one(), zero()]),
            v([zero(), zero(), h.clone()]),
        ],
        listed_values: vec![-r.clone(), -&y - &h, -y.clone(), -h.clone()],
        listed_s1: |c, s| Vector::new(vec![c.clone(), s.clone(), Scalar::one() / sqrt2()]),
        listed_s2: |c, s| Vector::new(vec![c.clone(), s.clone(), Scalar::one() / sqrt2()]),
        float_s1: Box::new(move |t| yf * t.sin() - 1.0 / 2f64.sqrt()),
        float_s2: Box::new(move |t| yf * t.sin() - 1.0 / 2f64.sqrt()),
    }
}

/// `<w, x> < 0` on every nonzero projected generator: the projection of the
/// polar onto the span of the face is closed.
fn witness_check(wt: Witness, samples: usize) -> CertificateResult {
    let mut t = Tally::new(wt.name).convention(POLAR);
    for b in &wt.span {
        t.zero(&b.dot(&wt.perp), 0.0);
    }
    for b in &wt.basis {
        t.zero(&b.dot(&wt.perp), 0.0);
    }
    let n = 65;
    let (s1, s2, fixed) = exact_generators(n);
    let mut values = Vec::new();
    for (g, listed) in fixed.iter().zip(&wt.listed_fixed) {
        let proj = project(&wt.basis, g);
        t.check(&proj == listed, 0.0);
        if !proj.is_zero() {
            let val = wt.w.dot(&proj);
            t.negative(&val, 0.0, false);
            values.push(val);
        }
    }
    t.check(values.len() == wt.listed_values.len(), 0.0);
    for (a, b) in values.iter().zip(&wt.listed_values) {
        t.agree(b, a, 0.0);
    }
    for i in 0..n {
        let m = Scalar::ratio(i as i64, (n - 1) as i64);
        let (c, s) = circle_point(&m);
        let p1 = project(&wt.basis, &s1[i]);
        t.check(p1 == (wt.listed_s1)(&c, &s), 0.0);
        t.negative(&wt.w.dot(&p1), 0.0, false);
        // S2 at tau = pi/2 + 2 atan(m): (cos tau, sin tau) = (-s, c).
        let p2 = project(&wt.basis, &s2[i]);
        t.check(p2 == (wt.listed_s2)(&-s.clone(), &c), 0.0);
        t.negative(&wt.w.dot(&p2), 0.0, false);
    }
    for &x in &uniform_grid(0.0, FRAC_PI_2, samples) {
        t.negative(&(wt.float_s1)(x), 0.0, false);
    }
    for &x in &uniform_grid(FRAC_PI_2, PI, samples) {
        t.negative(&(wt.float_s2)(x), 0.0, false);
    }
    t.finish()
}

pub fn verify_circles(samples: usize, tol: f64) -> Result<CheckReport> {
    require_samples(samples)?;
    let mut jobs: Vec<Job> = Region::ALL.iter().map(|&r| region_job(r, samples, tol)).collect();
    jobs.extend(polar_jobs(samples, tol));
    jobs.extend(tangent_jobs(samples, tol));
    jobs.push(Box::new(move || witness_check(top_witness(), samples)));
    jobs.push(Box::new(move || witness_check(bottom_witness(), samples)));
    let mut report = CheckReport::new("circles");
    report.tolerance = Some(tol);
    report.samples = Some(samples);
    for c in run_jobs(jobs) {
        report.push(c);
    }
    report.finish("tangent cone not facially exposed; K is FDC", "certificate failed");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn region_h_up_is_whole_top_arc() {
        let s = closed_form_support([0.0, 0.0, 1.0]);
        assert_eq!(s.region, Region::H);
        assert_eq!(s.argmax, vec![Argmax::Whole { curve: 0 }]);
        assert_eq!(s.value, 1.0);
    }

    #[test]
    fn regions_partition() {
        assert_eq!(Region::of([1.0, 1.0, 0.0]), Region::A);
        assert_eq!(Region::of([0.0, 1.0, 0.0]), Region::B);
        assert_eq!(Region::of([-2.0, -1.0, 0.0]), Region::C);
        assert_eq!(Region::of([-1.0, -1.0, 0.0]), Region::D);
        assert_eq!(Region::of([-1.0, -2.0, 0.0]), Region::E);
        assert_eq!(Region::of([0.0, -1.0, 0.0]), Region::F);
        assert_eq!(Region::of([1.0, 0.0, 0.0]), Region::G);
    }

    #[test]
    fn top_witness_values() {
        let z = 2.5f64;
        let r = 2f64.sqrt();
        let expected = [-z * r, -2.0 + z / r, -1.0, -z / r];
        let w = top_witness();
        for (a, b) in w.listed_values.iter().zip(expected) {
            assert!((a.to_f64() - b).abs() < 1e-12);
            assert!(b < 0.0);
        }
    }

    #[test]
    fn quick_run_passes() {
        let r = verify_circles(201, 1e-9).unwrap();
        let failed: Vec<_> = r.failed_certificates().collect();
        assert!(failed.is_empty(), "{failed:?}");
        assert_eq!(r.verdict, "tangent cone not facially exposed; K is FDC");
    }
}
