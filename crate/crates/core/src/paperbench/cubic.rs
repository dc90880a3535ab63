//! Convex hull of `(-s, -s^2, -s^3)`, `s in [0, 1]`, and `(-t, t^2, 0)`,
//! `t in [0, phi(1)]`, with `phi(s) = (2 + sqrt7) s / 3`.
//!
//! Normals are in the polar convention: `<n, (x, 1)> <= 0` on the set.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::{
    circle_point, dot, require_samples, run_jobs, unit_grid, CertNum, Job, ParamCurve, Tally, ZERO_BAND,
};
use crate::error::Result;
use crate::exactla::{Rational, Scalar, Vector};
use crate::report::CheckReport;

const POLAR: &str = "polar: <n, (x, 1)> <= 0";

fn r7<T: CertNum>() -> T {
    T::sqrt(7)
}

fn phi<T: CertNum>(s: &T) -> T {
    (T::int(2) + r7()) * s.clone() / T::int(3)
}

fn gamma1<T: CertNum>(s: &T) -> Vec<T> {
    let s2 = s.clone() * s.clone();
    vec![-s.clone(), -s2.clone(), -(s2 * s.clone()), T::int(1)]
}

fn gamma2<T: CertNum>(t: &T) -> Vec<T> {
    vec![-t.clone(), t.clone() * t.clone(), T::int(0), T::int(1)]
}

fn gamma1_prime<T: CertNum>(u: &T) -> Vec<T> {
    vec![T::int(-1), T::int(-2) * u.clone(), T::int(-3) * u.clone() * u.clone()]
}

/// Exposing normal of the triangle through 0, gamma1(1) and gamma2(phi(1)).
fn w_f1<T: CertNum>() -> Vec<T> {
    vec![
        T::int(11) + T::int(4) * r7(),
        T::int(3) * (T::int(2) + r7()),
        T::int(-17) - T::int(7) * r7(),
        T::int(0),
    ]
}

fn w_f11<T: CertNum>(s: &T) -> Vec<T> {
    vec![s.clone() * s.clone(), T::int(-2) * s.clone(), T::int(1), T::int(0)]
}

fn w_f12<T: CertNum>(s: &T) -> Vec<T> {
    let s2 = s.clone() * s.clone();
    vec![
        T::int(-2) * (r7::<T>() + T::int(1)) * s2.clone(),
        (r7::<T>() - T::int(5)) * s.clone(),
        T::int(4),
        -(T::int(3) + r7()) * s2 * s.clone(),
    ]
}

fn p_of<T: CertNum>(s: &T) -> Vec<T> {
    vec![
        T::int(-2) * (r7::<T>() + T::int(1)) * s.clone(),
        r7::<T>() - T::int(5),
        T::int(0),
        -(r7::<T>() + T::int(3)) * s.clone() * s.clone(),
    ]
}

fn r_of<T: CertNum>(s: &T) -> Vec<T> {
    vec![T::int(0), T::int(0), T::int(-4) / s.clone(), T::int(0)]
}

fn q_of<T: CertNum>(s: &T) -> Vec<T> {
    let mut q = p_of(s);
    q[2] = T::int(4) / s.clone();
    q
}

fn pbar<T: CertNum>() -> Vec<T> {
    vec![T::int(0), r7::<T>() - T::int(5), T::int(0), T::int(0)]
}

fn near(a: f64, b: f64) -> bool {
    (a - b).abs() < ZERO_BAND
}

/// The two curves, with exact parametrizations over `s in [0, 1]`.
pub fn cubic_curves() -> Vec<ParamCurve> {
    let phi1 = (2.0 + 7f64.sqrt()) / 3.0;
    vec![
        ParamCurve::new("gamma1", (0.0, 1.0), |s| [-s, -s * s, -s * s * s])
            .with_exact((Rational::zero(), Rational::one()), |s| gamma1(s).into_iter().take(3).collect()),
        ParamCurve::new("gamma2", (0.0, phi1), |t| [-t, t * t, 0.0])
            .with_exact((Rational::zero(), Rational::one()), |s| gamma2(&phi(s)).into_iter().take(3).collect()),
    ]
}

/// Exact polar certificates: the face normals and `q(s)` on a rational grid.
pub fn cubic_polar_certificates(n: usize) -> Result<Vec<Vector>> {
    require_samples(n)?;
    let v = |x: Vec<Scalar>| -> Vector { x.into_iter().collect() };
    let mut out = vec![v(w_f1()), Vector::from_ints(&[0, 0, 1, 0])];
    for i in 1..n {
        let s: Scalar = unit_grid(i, n);
        out.push(v(w_f11(&s)));
        out.push(v(w_f12(&s)));
        out.push(v(q_of(&s)));
    }
    Ok(out)
}

/// `(value, float)` at grid index `i` of `n` on `[0, 1]`.
fn at<T: CertNum>(i: usize, n: usize) -> (T, f64) {
    (unit_grid(i, n), i as f64 / (n - 1) as f64)
}

fn grid_jobs<'a, T: CertNum + 'a>(n: usize, n2: usize, tol: f64) -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();

    jobs.push(Box::new(move || {
        let mut t = Tally::new("f1_normal_gamma1").convention(POLAR);
        let w = w_f1::<T>();
        for i in 0..n {
            let (s, sf) = at::<T>(i, n);
            let direct = dot(&w, &gamma1(&s));
            let factored = s.clone()
                * (s.clone() - T::int(1))
                * (T::int(11) + T::int(4) * r7() + T::int(17) * s.clone() + T::int(7) * r7() * s.clone());
            t.agree(&factored, &direct, tol);
            t.negative(&factored, tol, near(sf, 0.0) || near(sf, 1.0));
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        let mut t = Tally::new("f1_normal_gamma2").convention(POLAR);
        let w = w_f1::<T>();
        for i in 0..n {
            let (s, sf) = at::<T>(i, n);
            let direct = dot(&w, &gamma2(&phi(&s)));
            let factored = s.clone() * (s.clone() - T::int(1)) * (T::int(2) + r7()) * (T::int(11) + T::int(4) * r7())
                / T::int(3);
            t.agree(&factored, &direct, tol);
            t.negative(&factored, tol, near(sf, 0.0) || near(sf, 1.0));
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        let mut t = Tally::new("f2_normal").convention(POLAR);
        let e3 = vec![T::int(0), T::int(0), T::int(1), T::int(0)];
        for i in 0..n {
            let (s, sf) = at::<T>(i, n);
            let direct = dot(&e3, &gamma1(&s));
            let factored = -(s.clone() * s.clone() * s.clone());
            t.agree(&factored, &direct, tol);
            t.negative(&factored, tol, near(sf, 0.0));
            t.zero(&dot(&e3, &gamma2(&phi(&s))), tol);
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        let mut t = Tally::new("f11_normal").convention(POLAR);
        for i in 0..n2 {
            let (s, sf) = at::<T>(i, n2);
            let w = w_f11(&s);
            for j in 0..n2 {
                let (u, uf) = at::<T>(j, n2);
                let d = u.clone() - s.clone();
                let direct = dot(&w, &gamma1(&u));
                let factored = -(u.clone() * d.clone() * d);
                t.agree(&factored, &direct, tol);
                t.negative(&factored, tol, near(uf, 0.0) || near(uf, sf));
                let tt = phi(&u);
                let direct2 = dot(&w, &gamma2(&tt));
                let factored2 = -(s.clone() * tt.clone() * (s.clone() + T::int(2) * tt));
                t.agree(&factored2, &direct2, tol);
                t.negative(&factored2, tol, near(uf, 0.0) || near(sf, 0.0));
            }
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        let mut t = Tally::new("f12_stationary");
        for i in 1..n2 {
            let (s, _) = at::<T>(i, n2);
            let w = w_f12(&s);
            for j in 0..n2 {
                let (u, uf) = at::<T>(j, n2);
                let direct = dot(&gamma1_prime(&u), &w[..3]);
                let expanded = T::int(2) * (r7::<T>() + T::int(1)) * s.clone() * s.clone()
                    - T::int(2) * (r7::<T>() - T::int(5)) * s.clone() * u.clone()
                    - T::int(12) * u.clone() * u.clone();
                let factored = T::int(-12)
                    * (u.clone() - s.clone())
                    * (u.clone() + (T::int(1) + r7()) * s.clone() / T::int(6));
                t.agree(&expanded, &direct, tol);
                t.agree(&factored, &direct, tol);
                // f' > 0 below the stationary point u = s and < 0 above it.
                t.positive(&((s.clone() - u.clone()) * factored), tol, near(uf, i as f64 / (n2 - 1) as f64));
            }
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        let mut t = Tally::new("f12_support").convention(POLAR);
        for i in 0..n2 {
            let (s, sf) = at::<T>(i, n2);
            let w = w_f12(&s);
            for j in 0..n2 {
                let (u, uf) = at::<T>(j, n2);
                let d = u.clone() - s.clone();
                let direct = dot(&w, &gamma1(&u));
                let factored = -(d.clone() * d.clone() * (T::int(4) * u.clone() + (T::int(3) + r7()) * s.clone()));
                t.agree(&factored, &direct, tol);
                t.negative(&factored, tol, near(uf, sf));
                let direct2 = dot(&w, &gamma2(&phi(&u)));
                let factored2 = -((T::int(3) + r7()) * s.clone() * d.clone() * d);
                t.agree(&factored2, &direct2, tol);
                t.negative(&factored2, tol, near(uf, sf) || near(sf, 0.0));
            }
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        let mut t = Tally::new("fdc_q_gamma1").convention(POLAR);
        for i in 1..n2 {
            let (s, sf) = at::<T>(i, n2);
            let q = q_of(&s);
            for j in 0..n2 {
                let (u, uf) = at::<T>(j, n2);
                let d = u.clone() - s.clone();
                let direct = dot(&q, &gamma1(&u));
                let factored = -((r7::<T>() + T::int(3) + T::int(4) * u.clone() / s.clone()) * d.clone() * d);
                t.agree(&factored, &direct, tol);
                t.negative(&factored, tol, near(uf, sf));
            }
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        let mut t = Tally::new("fdc_q_gamma2").convention(POLAR);
        for i in 1..n2 {
            let (s, sf) = at::<T>(i, n2);
            let q = q_of(&s);
            for j in 0..n2 {
                let (u, uf) = at::<T>(j, n2);
                let d = u.clone() - s.clone();
                let direct = dot(&q, &gamma2(&phi(&u)));
                let factored = -((T::int(3) + r7()) * d.clone() * d);
                t.agree(&factored, &direct, tol);
                t.negative(&factored, tol, near(uf, sf));
            }
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        // F is the face over gamma2; its span is {x3 = 0}.
        let mut t = Tally::new("fdc_r_perp");
        for i in 1..n {
            let (s, _) = at::<T>(i, n);
            let r = r_of(&s);
            for k in [0, 1, 3] {
                t.zero(&r[k], tol);
            }
            t.zero(&dot(&r, &gamma2(&phi(&s))), tol);
            let (p, q) = (p_of(&s), q_of(&s));
            for k in 0..4 {
                t.zero(&(p[k].clone() - q[k].clone() - r[k].clone()), tol);
            }
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        let mut t = Tally::new("fdc_p_limit");
        let pb = pbar::<T>();
        for i in 0..n {
            let (s, _) = at::<T>(i, n);
            let p = p_of(&s);
            let bound = T::int(2) * (r7::<T>() + T::int(1)) * s.clone();
            for k in 0..4 {
                let d = p[k].clone() - pb[k].clone();
                t.nonpos(&(d.clone() * d - bound.clone() * bound.clone()), tol);
            }
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        let mut t = Tally::new("fdc_pbar_outside").convention(POLAR);
        t.note("the inner product is quadratic in s; the linear form (5 - sqrt7) s agrees with it only at s = 1");
        let pb = pbar::<T>();
        for i in 0..n {
            let (s, sf) = at::<T>(i, n);
            let direct = dot(&pb, &gamma1(&s));
            let factored = (T::int(5) - r7()) * s.clone() * s;
            t.agree(&factored, &direct, tol);
            t.positive(&factored, tol, near(sf, 0.0));
        }
        t.finish()
    }));

    jobs.push(Box::new(move || {
        // No element of the line pbar + F^perp is back in the polar.
        let mut t = Tally::new("fdc_pbar_perp_shift").convention(POLAR);
        let c = T::int(5) - r7();
        for i in 0..n {
            let lambda = T::int(-10) + T::int(20) * unit_grid::<T>(i, n);
            let s = if lambda.sign() == Ordering::Greater {
                let cand = c.clone() / (T::int(2) * lambda.clone());
                if (cand.clone() - T::int(1)).sign() == Ordering::Less {
                    cand
                } else {
                    T::int(1)
                }
            } else {
                T::int(1)
            };
            let mut shifted = pbar::<T>();
            shifted[2] = lambda.clone();
            let direct = dot(&shifted, &gamma1(&s));
            let factored = s.clone() * s.clone() * (c.clone() - lambda * s);
            t.agree(&factored, &direct, tol);
            t.positive(&factored, tol, false);
        }
        t.finish()
    }));

    jobs
}

/// Exact checks run in every mode.
fn exact_jobs<'a>() -> Vec<Job<'a>> {
    let mut jobs: Vec<Job<'a>> = Vec::new();

    jobs.push(Box::new(|| {
        let mut t = Tally::new("f1_exact_zeros").convention(POLAR);
        let w = w_f1::<Scalar>();
        let one = Scalar::one();
        t.zero(&dot(&w, &gamma1(&one)), 0.0);
        t.zero(&dot(&w, &gamma2(&phi(&one))), 0.0);
        t.zero(&dot(&w, &gamma1(&Scalar::zero())), 0.0);
        t.finish()
    }));

    jobs.push(Box::new(|| {
        // Every certificate with a (u - s)^2 factor vanishes on the diagonal.
        let mut t = Tally::new("diagonal_zeros");
        let m = 11;
        for i in 1..m {
            let s: Scalar = unit_grid(i, m);
            t.zero(&dot(&w_f11(&s), &gamma1(&s)), 0.0);
            t.zero(&dot(&w_f12(&s), &gamma1(&s)), 0.0);
            t.zero(&dot(&w_f12(&s), &gamma2(&phi(&s))), 0.0);
            t.zero(&dot(&q_of(&s), &gamma1(&s)), 0.0);
            t.zero(&dot(&q_of(&s), &gamma2(&phi(&s))), 0.0);
        }
        t.finish()
    }));

    jobs.push(Box::new(|| {
        let mut t = Tally::new("pbar_at_one").convention(POLAR);
        let v = dot(&pbar::<Scalar>(), &gamma1(&Scalar::one()));
        t.agree(&(Scalar::from_int(5) - Scalar::sqrt(7).expect("7 is square-free")), &v, 0.0);
        t.positive(&v, 0.0, false);
        t.agree(&(5.0 - 7f64.sqrt()), &v.to_f64(), 1e-12);
        t.finish()
    }));

    jobs.push(Box::new(second_order_slice));
    jobs
}

/// The slice `conv{(-s, -s^2)} u {(t, 0)}` has `{(0, 0)}` as a face that no
/// normal exposes: for each sampled unit normal a nonzero point of the slice
/// attains the support value 0 or more.
fn second_order_slice() -> crate::report::CertificateResult {
    let mut t = Tally::new("second_order_slice");
    let phi1 = (2.0 + 7f64.sqrt()) / 3.0;
    let mut normals: Vec<(Scalar, Scalar)> =
        (-64..=64).map(|k| circle_point(&Scalar::ratio(k, 8))).collect();
    normals.push((Scalar::from_int(-1), Scalar::zero()));
    for (n1, n2) in normals {
        let (p, on_curve) = if !n1.is_negative() {
            ((Scalar::one(), Scalar::zero()), 1.0 <= phi1)
        } else if !n2.is_positive() {
            ((Scalar::from_int(-1), Scalar::from_int(-1)), true)
        } else {
            let ratio = -(&n1 / &n2);
            let s = if ratio < Scalar::one() { ratio } else { Scalar::one() };
            ((-&s, -(&s * &s)), s.is_positive())
        };
        let value = &n1 * &p.0 + &n2 * &p.1;
        let nonzero = !(p.0.is_zero() && p.1.is_zero());
        t.check(on_curve && nonzero && !value.is_negative(), (-value.to_f64()).max(0.0));
    }
    t.finish()
}

/// Float grids with `samples` points per parameter, plus the exact checks.
pub fn verify_cubic(samples: usize, tol: f64) -> Result<CheckReport> {
    verify_cubic_with(samples, tol, false)
}

/// With `exact`, grid certificates are evaluated in `Q(sqrt 7)`; two
/// parameter grids are capped at 41 points per axis in that mode.
pub fn verify_cubic_with(samples: usize, tol: f64, exact: bool) -> Result<CheckReport> {
    require_samples(samples)?;
    let mut jobs = if exact { grid_jobs::<Scalar>(samples, samples.min(41), 0.0) } else { grid_jobs::<f64>(samples, samples, tol) };
    jobs.extend(exact_jobs());
    let mut report = CheckReport::new("cubic");
    report.tolerance = Some(if exact { 0.0 } else { tol });
    report.samples = Some(samples);
    for c in run_jobs(jobs) {
        report.push(c);
    }
    report.finish(
        "tangentially exposed at the listed faces; K is not FDC; second-order tangent not facially exposed",
        "certificate failed",
    );
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_float_run_passes() {
        let r = verify_cubic(101, 1e-10).unwrap();
        let failed: Vec<_> = r.failed_certificates().map(|c| c.name.clone()).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn exact_run_passes() {
        let r = verify_cubic_with(21, 0.0, true).unwrap();
        let failed: Vec<_> = r.failed_certificates().map(|c| c.name.clone()).collect();
        assert!(failed.is_empty(), "{failed:?}");
    }

    #[test]
    fn pbar_value_at_one() {
        let v = dot(&pbar::<Scalar>(), &gamma1(&Scalar::one()));
        assert!((v.to_f64() - 2.354_248_688_935_409).abs() < 1e-12);
    }

    #[test]
    fn q_half_in_sampled_polar() {
        let k = super::super::homogenize_and_sample(&cubic_curves(), 5).unwrap();
        assert!(k.is_pointed());
        assert_eq!(k.dim(), 4);
        let q: Vector = q_of(&Scalar::ratio(1, 2)).into_iter().collect();
        assert!(k.polar().contains(&q).unwrap());
        let pb: Vector = pbar::<Scalar>().into_iter().collect();
        assert!(!k.polar().contains(&pb).unwrap());
    }

    #[test]
    fn two_samples_give_a_simplicial_cone() {
        let k = super::super::homogenize_and_sample(&cubic_curves(), 2).unwrap();
        assert_eq!(k.rays().len(), 3);
        assert_eq!(k.dim(), 3);
    }

    #[test]
    fn wrong_factored_form_is_caught() {
        // The expanded form -s^2 t - 2 s t for F11 on gamma2 is not the inner product.
        let mut t = Tally::new("x");
        let (s, u) = (0.5f64, 0.25f64);
        let w = w_f11(&s);
        let tt = phi(&u);
        t.agree(&(-s * s * tt - 2.0 * s * tt), &dot(&w, &gamma2(&tt)), 1e-10);
        assert!(!t.finish().passed());
    }
}
