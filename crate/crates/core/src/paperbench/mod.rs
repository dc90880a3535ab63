//! Certificate verifiers for three non-polyhedral cones built by
//! homogenizing convex hulls of space curves.
//!
//! Every checker evaluates a closed form twice, once as written in factored
//! form and once as a direct inner product, and asserts agreement before it
//! asserts a sign. Polynomial identities can be evaluated exactly in
//! `Q(sqrt(7))`; trigonometric ones run in `f64`.

mod circles;
mod cubic;
mod roshchina;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rayon::prelude::*;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactla::{Rational, Scalar, Vector};
use crate::report::{CertificateResult, CheckReport};

pub use circles::{circles_curves, circles_polar_generators, closed_form_support, verify_circles, Region, Support};
pub use cubic::{cubic_curves, cubic_polar_certificates, verify_cubic, verify_cubic_with};
pub use roshchina::{quotient_bound, quotient_deviation, roshchina_curves, verify_roshchina};

/// Default number of parameter samples per curve.
pub const DEFAULT_SAMPLES: usize = 2001;
/// Default tolerance for floating-point certificates.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Parameters closer than this to a known zero locus get `|value| <= tol`
/// instead of a strict sign check.
pub const ZERO_BAND: f64 = 1e-6;

/// Scalars the certificates can be evaluated in.
pub trait CertNum:
    Clone
    + Send
    + Sync
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const EXACT: bool;
    fn int(n: i64) -> Self;
    fn ratio(p: i64, q: i64) -> Self;
    fn sqrt(d: u32) -> Self;
    fn to_f64(&self) -> f64;
    fn sign(&self) -> Ordering;
}

impl CertNum for f64 {
    const EXACT: bool = false;

    fn int(n: i64) -> f64 {
        n as f64
    }

    fn ratio(p: i64, q: i64) -> f64 {
        p as f64 / q as f64
    }

    fn sqrt(d: u32) -> f64 {
        (d as f64).sqrt()
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sign(&self) -> Ordering {
        // NaN compares as positive so it never passes a sign check.
        self.partial_cmp(&0.0).unwrap_or(Ordering::Greater)
    }
}

impl CertNum for Scalar {
    const EXACT: bool = true;

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    fn ratio(p: i64, q: i64) -> Scalar {
        Scalar::ratio(p, q)
    }

    fn sqrt(d: u32) -> Scalar {
        Scalar::sqrt(d).expect("square-free radicand")
    }

    fn to_f64(&self) -> f64 {
        Scalar::to_f64(self)
    }

    fn sign(&self) -> Ordering {
        self.signum()
    }
}

/// Inner product of two equal-length slices.
pub(crate) fn dot<T: CertNum>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::int(0), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Running state of one named certificate.
pub(crate) struct Tally {
    name: &'static str,
    ok: bool,
    worst: f64,
    samples: usize,
    convention: Option<&'static str>,
    note: Option<String>,
}

impl Tally {
    pub(crate) fn new(name: &'static str) -> Tally {
        Tally { name, ok: true, worst: 0.0, samples: 0, convention: None, note: None }
    }

    pub(crate) fn convention(mut self, c: &'static str) -> Tally {
        self.convention = Some(c);
        self
    }

    pub(crate) fn note(&mut self, n: impl Into<String>) {
        self.note = Some(n.into());
    }

    pub(crate) fn check(&mut self, ok: bool, violation: f64) {
        self.samples += 1;
        self.ok &= ok;
        let v = if violation.is_nan() { f64::INFINITY } else { violation };
        if v > self.worst {
            self.worst = v;
        }
    }

    /// Factored form against direct evaluation.
    pub(crate) fn agree<T: CertNum>(&mut self, factored: &T, direct: &T, tol: f64) {
        let diff = factored.clone() - direct.clone();
        let dev = diff.to_f64().abs();
        let ok = if T::EXACT { diff.sign() == Ordering::Equal } else { dev <= tol };
        self.check(ok, if ok { dev } else { dev.max(f64::MIN_POSITIVE) });
    }

    pub(crate) fn nonpos<T: CertNum>(&mut self, v: &T, tol: f64) {
        let x = v.to_f64();
        let ok = if T::EXACT { v.sign() != Ordering::Greater } else { x <= tol };
        self.check(ok, x.max(0.0));
    }

    pub(crate) fn nonneg<T: CertNum>(&mut self, v: &T, tol: f64) {
        self.nonpos(&-v.clone(), tol);
    }

    pub(crate) fn zero<T: CertNum>(&mut self, v: &T, tol: f64) {
        let x = v.to_f64().abs();
        let ok = if T::EXACT { v.sign() == Ordering::Equal } else { x <= tol };
        self.check(ok, if ok { x } else { x.max(f64::MIN_POSITIVE) });
    }

    /// Strictly negative, or `|v| <= tol` on a zero locus.
    pub(crate) fn negative<T: CertNum>(&mut self, v: &T, tol: f64, on_locus: bool) {
        if on_locus {
            self.zero(v, tol);
        } else {
            let ok = v.sign() == Ordering::Less;
            self.check(ok, if ok { 0.0 } else { v.to_f64().max(f64::MIN_POSITIVE) });
        }
    }

    pub(crate) fn positive<T: CertNum>(&mut self, v: &T, tol: f64, on_locus: bool) {
        self.negative(&-v.clone(), tol, on_locus);
    }

    pub(crate) fn finish(self) -> CertificateResult {
        let mut c = CertificateResult::new(self.name, self.ok && self.samples > 0, self.worst, self.samples);
        if let Some(conv) = self.convention {
            c = c.convention(conv);
        }
        if let Some(n) = self.note {
            c = c.note(n);
        }
        c
    }
}

pub(crate) type Job<'a> = Box<dyn FnOnce() -> CertificateResult + Send + 'a>;

/// Run independent certificates concurrently and order the results by name.
pub(crate) fn run_jobs(jobs: Vec<Job<'_>>) -> Vec<CertificateResult> {
    let mut out: Vec<CertificateResult> = jobs.into_par_iter().map(|j| j()).collect();
    out.sort_by(|a, b| a.name.cmp(&b.name));
    out
}

/// `n` evenly spaced points of `[a, b]`, endpoints included.
pub fn uniform_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2, "a grid needs at least two points");
    (0..n).map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / (n - 1) as f64 }).collect()
}

/// `i/(n-1)` in the scalar type.
pub(crate) fn unit_grid<T: CertNum>(i: usize, n: usize) -> T {
    T::ratio(i as i64, (n - 1) as i64)
}

/// Rational point `((1-m^2)/(1+m^2), 2m/(1+m^2))` of the unit circle,
/// at angle `2*atan(m)`.
pub fn circle_point<T: CertNum>(m: &T) -> (T, T) {
    let m2 = m.clone() * m.clone();
    let den = T::int(1) + m2.clone();
    ((T::int(1) - m2) / den.clone(), T::int(2) * m.clone() / den)
}

pub(crate) fn require_samples(samples: usize) -> Result<()> {
    if samples < 2 {
        return Err(Error::InvalidArgument(format!("samples must be at least 2, got {samples}")));
    }
    Ok(())
}

/// A rational reparametrization of a curve, for exact sampling.
#[derive(Clone)]
pub struct ExactParam {
    pub interval: (Rational, Rational),
    pub eval: fn(&Scalar) -> Vector,
}

/// A space curve `t -> R^3` on a closed interval.
#[derive(Clone)]
pub struct ParamCurve {
    pub name: &'static str,
    pub interval: (f64, f64),
    eval: fn(f64) -> [f64; 3],
    exact: Option<ExactParam>,
}

impl fmt::Debug for ParamCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ParamCurve")
            .field("name", &self.name)
            .field("interval", &self.interval)
            .field("exact", &self.exact.is_some())
            .finish()
    }
}

impl ParamCurve {
    pub fn new(name: &'static str, interval: (f64, f64), eval: fn(f64) -> [f64; 3]) -> ParamCurve {
        ParamCurve { name, interval, eval, exact: None }
    }

    pub fn with_exact(mut self, interval: (Rational, Rational), eval: fn(&Scalar) -> Vector) -> ParamCurve {
        self.exact = Some(ExactParam { interval, eval });
        self
    }

    pub fn is_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn exact_param(&self) -> Option<&ExactParam> {
        self.exact.as_ref()
    }

    pub fn eval(&self, t: f64) -> [f64; 3] {
        (self.eval)(t)
    }

    /// `(gamma(t), 1)`.
    pub fn homogenized(&self, t: f64) -> [f64; 4] {
        let p = self.eval(t);
        [p[0], p[1], p[2], 1.0]
    }

    pub fn grid(&self, n: usize) -> Vec<f64> {
        uniform_grid(self.interval.0, self.interval.1, n)
    }

    /// Homogenized exact points at `n` evenly spaced rational parameters.
    pub fn exact_samples(&self, n: usize) -> Option<Vec<Vector>> {
        let ex = self.exact.as_ref()?;
        let (a, b) = &ex.interval;
        Some(
            (0..n)
                .map(|i| {
                    let t = a + (b - a) * Rational::new((i as i64).into(), ((n - 1) as i64).into());
                    let p = (ex.eval)(&Scalar::from_rational(t));
                    p.iter().cloned().chain(std::iter::once(Scalar::one())).collect()
                })
                .collect(),
        )
    }
}

/// Polyhedral inner approximation `cone{(gamma(t_i), 1)}` of the
/// homogenized convex hull, from `n` rational parameters per curve.
pub fn homogenize_and_sample(curves: &[ParamCurve], n: usize) -> Result<Cone> {
    require_samples(n)?;
    let mut rays = Vec::new();
    for c in curves {
        let pts = c
            .exact_samples(n)
            .ok_or_else(|| Error::InvalidArgument(format!("curve {} has no exact parametrization", c.name)))?;
        rays.extend(pts);
    }
    rays.sort();
    rays.dedup();
    Cone::from_generators(rays, Vec::new(), 4)
}

/// Whether `c` lies in the polar of the cone generated by `rays`.
pub fn in_polar_of(rays: &[Vector], c: &Vector) -> Result<bool> {
    for r in rays {
        if r.checked_dot(c)?.is_positive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every exact polar certificate of the true cone must lie in the polar of
/// each inner approximation.
pub fn sandwich_report(sizes: &[usize]) -> Result<CheckReport> {
    let mut report = CheckReport::new("sandwich");
    let cubic_certs = cubic_polar_certificates(9)?;
    let circle_certs = circles_polar_generators(9);
    let cases: [(&'static str, Vec<ParamCurve>, &Vec<Vector>); 2] =
        [("cubic", cubic_curves(), &cubic_certs), ("circles", circles_curves(), &circle_certs)];
    for (label, curves, certs) in cases {
        for &n in sizes {
            let sampled = homogenize_and_sample(&curves, n)?;
            let rays = sampled.known_generators().map(|g| g.rays).unwrap_or_default();
            let mut ok = true;
            let mut bad = None;
            for c in certs.iter() {
                if !in_polar_of(&rays, c)? {
                    ok = false;
                    bad.get_or_insert_with(|| c.to_string());
                }
            }
            let mut cert = CertificateResult::exact(format!("{label}_n{n}"), ok, certs.len() * rays.len())
                .convention("polar: <c, x> <= 0");
            if let Some(b) = bad {
                cert = cert.note(format!("certificate {b} leaves the polar of the sampled cone"));
            }
            report.push(cert);
        }
    }
    report.samples = sizes.iter().copied().max();
    report.finish("every exact certificate lies in every sampled polar", "sandwich violated");
    Ok(report)
}

/// Turn a failing report into an error naming the first failed certificate.
pub fn ensure_passed(report: CheckReport) -> Result<CheckReport> {
    if let Some(c) = report.failed_certificates().next() {
        return Err(Error::ToleranceExceeded { certificate: c.name.clone(), violation: c.max_violation });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = uniform_grid(0.0, std::f64::consts::PI, 5);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[4], std::f64::consts::PI);
    }

    #[test]
    fn rational_circle_points() {
        let (c, s) = circle_point(&Scalar::ratio(1, 2));
        assert_eq!(&c * &c + &s * &s, Scalar::one());
        assert_eq!(c, Scalar::ratio(3, 5));
    }

    #[test]
    fn tally_locus_band() {
        let mut t = Tally::new("x");
        t.negative(&0.0f64, 1e-9, true);
        t.negative(&-1e-30f64, 1e-9, false);
        assert!(t.finish().passed());
        let mut t = Tally::new("y");
        t.negative(&0.0f64, 1e-9, false);
        assert!(!t.finish().passed());
    }

    #[test]
    fn exact_agreement_is_exact() {
        let mut t = Tally::new("z");
        let a = Scalar::sqrt(7).unwrap();
        t.agree(&(&a * &a), &Scalar::from_int(7), 0.0);
        assert!(t.finish().passed());
    }
}
