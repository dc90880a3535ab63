//! Random polyhedral cones and the structural checks run on them.
//!
//! Shared by the property tests and the acceptance target.

#![allow(dead_code)]

use conelab::facelat::{enumerate_faces, relative_interior_point};
use conelab::fdc::{classify_exposure, is_fdc};
use conelab::tangents::{normal_cone, tangent_cone, tangential_depth};
use conelab::{Cone, Scalar, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Integer rays with entries in `-3..=3`. Sometimes one of them is a line.
pub fn random_cone(rng: &mut impl Rng, n: usize, m: usize) -> Cone {
    let mut rays: Vec<Vector> = (0..m).map(|_| random_vector(rng, n)).collect();
    let lineality = if n > 2 && rng.gen_bool(0.15) { vec![rays.pop().expect("m >= 1")] } else { Vec::new() };
    Cone::from_generators(rays, lineality, n).expect("well-formed")
}

pub fn random_vector(rng: &mut impl Rng, n: usize) -> Vector {
    Vector::from_ints(&(0..n).map(|_| rng.gen_range(-3i64..=3)).collect::<Vec<_>>())
}

pub fn seeded_cone(seed: u64) -> Cone {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(2..=6);
    let m = rng.gen_range(1..=12);
    random_cone(&mut rng, n, m)
}

fn pow2_inv(k: u32) -> Scalar {
    Scalar::ratio(1, 1i64 << k)
}

/// `d` is a feasible direction at `x` if `x + eps d` stays in `K` for some
/// `eps` in `1, 1/2, ..., 2^-20`. With `x` in `K` the set of good steps is
/// an interval starting at 0, so the smallest step decides.
pub fn feasible(k: &Cone, x: &Vector, d: &Vector) -> bool {
    k.contains(&x.axpy(&pow2_inv(20), d)).expect("same dimension")
}

pub fn check_dual_involution(k: &Cone) -> Result<(), String> {
    if k.dual().dual().equals(k) {
        Ok(())
    } else {
        Err("dual(dual(K)) != K".into())
    }
}

/// `(K1 ∩ K2)* = K1* + K2*`.
pub fn check_dual_of_intersection(k1: &Cone, k2: &Cone) -> Result<(), String> {
    let lhs = k1.intersect(k2).map_err(|e| e.to_string())?.dual();
    let rhs = k1.dual().minkowski_sum(&k2.dual()).map_err(|e| e.to_string())?;
    if lhs.set_eq(&rhs).map_err(|e| e.to_string())? {
        Ok(())
    } else {
        Err("dual of intersection differs from sum of duals".into())
    }
}

/// At a relative interior point of every face, sampled directions are in
/// the tangent cone exactly when they are feasible.
pub fn check_tangent_vs_feasible(k: &Cone, rng: &mut impl Rng, per_face: usize) -> Result<(), String> {
    let k = k.dd_convert();
    let n = k.ambient_dim();
    for f in enumerate_faces(&k) {
        let t = tangent_cone(&k, &f).map_err(|e| e.to_string())?;
        let x = relative_interior_point(&f).map_err(|e| e.to_string())?;
        let mut probes: Vec<Vector> = (0..per_face).map(|_| random_vector(rng, n)).collect();
        probes.extend(k.rays().iter().map(|r| r.neg()));
        for d in probes {
            let in_t = t.contains(&d).map_err(|e| e.to_string())?;
            if in_t != feasible(&k, &x, &d) {
                return Err(format!("face {:?}: direction {d:?} tangent={in_t}", f.active_set()));
            }
        }
    }
    Ok(())
}

/// `N(F; K) = K° ∩ F^⊥`, computed without going through the tangent cone.
pub fn check_normal_is_polar_of_tangent(k: &Cone) -> Result<(), String> {
    let k = k.dd_convert();
    let n = k.ambient_dim();
    let polar = k.polar();
    for f in enumerate_faces(&k) {
        let normal = normal_cone(&k, &f).map_err(|e| e.to_string())?;
        let tangent_polar = tangent_cone(&k, &f).map_err(|e| e.to_string())?.polar();
        let perp = Cone::subspace(f.perp().into_rows(), n).map_err(|e| e.to_string())?;
        let oracle = polar.intersect(&perp).map_err(|e| e.to_string())?;
        if !normal.set_eq(&oracle).map_err(|e| e.to_string())? || !tangent_polar.set_eq(&oracle).map_err(|e| e.to_string())? {
            return Err(format!("face {:?}: normal cone differs from K° ∩ F^⊥", f.active_set()));
        }
    }
    Ok(())
}

pub fn check_depth_bound(k: &Cone) -> Result<(), String> {
    let depth = tangential_depth(k).map_err(|e| e.to_string())?;
    if depth <= k.dim() {
        Ok(())
    } else {
        Err(format!("depth {depth} exceeds dim {}", k.dim()))
    }
}

pub fn check_fdc(k: &Cone) -> Result<(), String> {
    if is_fdc(k).map_err(|e| e.to_string())?.verdict {
        Ok(())
    } else {
        Err("polyhedral cone reported not FDC".into())
    }
}

/// strong ⇒ FDC ⇒ tangential. A violation surfaces as an error.
pub fn check_implications(k: &Cone) -> Result<(), String> {
    let c = classify_exposure(k).map_err(|e| e.to_string())?;
    if c.strongly_tangentially_exposed && !c.fdc {
        return Err("strong without FDC".into());
    }
    if c.fdc && !c.tangentially_exposed {
        return Err("FDC without tangential exposure".into());
    }
    Ok(())
}

/// Every check on one cone, plus the intersection law against a partner.
/// Depth, FDC and the implications come from one classification.
pub fn check_all(k: &Cone, partner: &Cone, rng: &mut impl Rng) -> Result<(), String> {
    check_dual_involution(k)?;
    check_dual_of_intersection(k, partner)?;
    check_tangent_vs_feasible(k, rng, 4)?;
    check_normal_is_polar_of_tangent(k)?;
    let c = classify_exposure(k).map_err(|e| e.to_string())?;
    if c.depth > k.dim() {
        return Err(format!("depth {} exceeds dim {}", c.depth, k.dim()));
    }
    if !c.fdc {
        return Err("polyhedral cone reported not FDC".into());
    }
    if c.strongly_tangentially_exposed && !c.fdc {
        return Err("strong without FDC".into());
    }
    if c.fdc && !c.tangentially_exposed {
        return Err("FDC without tangential exposure".into());
    }
    Ok(())
}

/// The property suite over `count` seeded cones. Returns the first failure.
pub fn run_suite(count: u64) -> Result<(), String> {
    use rayon::prelude::*;
    (0..count).into_par_iter().try_for_each(|i| {
        let k = seeded_cone(i);
        let mut rng = ChaCha8Rng::seed_from_u64(i ^ 0x5eed);
        let m = rng.gen_range(1..=12);
        let partner = random_cone(&mut rng, k.ambient_dim(), m);
        check_all(&k, &partner, &mut rng).map_err(|e| format!("seed {i}: {e}"))
    })
}
