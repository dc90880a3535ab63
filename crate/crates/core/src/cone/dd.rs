//! Double description conversion.

use fixedbitset::FixedBitSet;

use crate::exactla::{reaches_rank, row_reduce, Matrix, Scalar, Vector};

/// Generators of `{x : <a, x> >= 0 for a in ineqs, <e, x> = 0 for e in eqs}`
/// as `(lineality basis, extreme rays)`. The rays are extreme and pairwise
/// distinct modulo the lineality space.
pub(crate) fn v_from_h(ineqs: &[Vector], eqs: &[Vector], n: usize) -> (Vec<Vector>, Vec<Vector>) {
    let basis: Vec<Vector> = if eqs.is_empty() {
        Matrix::identity(n).into_rows()
    } else {
        let m = Matrix::new(eqs.to_vec(), n).expect("rectangular equations");
        row_reduce(&m).nullspace.into_rows()
    };
    let d = basis.len();
    let local: Vec<Vector> = ineqs
        .iter()
        .map(|a| basis.iter().map(|b| a.dot(b)).collect::<Vector>())
        .collect();
    let (lin, rays) = dd_core(&local, d);
    let lift = |y: &Vector| {
        let mut x = Vector::zeros(n);
        for (c, b) in y.iter().zip(&basis) {
            x = x.axpy(c, b);
        }
        x
    };
    (
        lin.iter().map(lift).collect(),
        rays.iter().map(|y| lift(y).normalized_ray()).collect(),
    )
}

/// Halfspace side of `cone(rays) + span(lineality)` as
/// `(equations, facet normals)`, computed on the dual.
pub(crate) fn h_from_v(rays: &[Vector], lineality: &[Vector], n: usize) -> (Vec<Vector>, Vec<Vector>) {
    v_from_h(rays, lineality, n)
}

struct Ray {
    v: Vector,
    zeros: FixedBitSet,
}

/// Extreme rays and lineality of `{y in R^d : <a, y> >= 0}`.
fn dd_core(ineqs: &[Vector], d: usize) -> (Vec<Vector>, Vec<Vector>) {
    let mut order: Vec<Vector> = ineqs.iter().filter(|a| !a.is_zero()).map(Vector::normalized_ray).collect();
    order.sort();
    order.dedup();
    let m = order.len();

    let mut lin: Vec<Vector> = Matrix::identity(d).into_rows();
    let mut rays: Vec<Ray> = Vec::new();

    for (k, a) in order.iter().enumerate() {
        if let Some(pi) = lin.iter().position(|l| !a.dot(l).is_zero()) {
            let mut piv = lin.remove(pi);
            let mut al = a.dot(&piv);
            if al.is_negative() {
                piv = piv.neg();
                al = -al;
            }
            let inv = al.checked_recip().expect("nonzero");
            for l in lin.iter_mut() {
                let c = a.dot(l) * &inv;
                if !c.is_zero() {
                    *l = l.axpy(&-c, &piv);
                }
            }
            for r in rays.iter_mut() {
                let c = a.dot(&r.v) * &inv;
                if !c.is_zero() {
                    r.v = r.v.axpy(&-c, &piv).normalized_ray();
                }
                r.zeros.insert(k);
            }
            let mut zeros = FixedBitSet::with_capacity(m);
            zeros.insert_range(0..k);
            rays.push(Ray { v: piv.normalized_ray(), zeros });
            continue;
        }

        let vals: Vec<Scalar> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if minus.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(k);
                }
            }
            continue;
        }

        // a face spanned by two adjacent rays has dimension lin + 2
        let need = d.saturating_sub(lin.len() + 2);
        let mut fresh = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let mut z = rays[p].zeros.clone();
                z.intersect_with(&rays[q].zeros);
                if z.count_ones(..) < need {
                    continue;
                }
                let dominated = rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != q && z.is_subset(&r.zeros));
                if dominated {
                    continue;
                }
                let tight: Vec<Vector> = z.ones().map(|i| order[i].clone()).collect();
                if !reaches_rank(&tight, d, need) {
                    continue;
                }
                let v = rays[q].v.scale(&vals[p]).axpy(&-&vals[q], &rays[p].v).normalized_ray();
                let mut zeros = z;
                zeros.insert(k);
                fresh.push(Ray { v, zeros });
            }
        }

        let old = std::mem::take(&mut rays);
        for (mut r, v) in old.into_iter().zip(&vals) {
            if v.is_negative() {
                continue;
            }
            if v.is_zero() {
                r.zeros.insert(k);
            }
            rays.push(r);
        }
        rays.extend(fresh);
    }

    (lin, rays.into_iter().map(|r| r.v).collect())
}
