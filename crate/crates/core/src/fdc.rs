//! Facial dual completeness via restricted and projected duals, exposing
//! lifts, and the exposure classification.
//!
//! Restricted and projected duals live in the chart of `span F`: a vector
//! `x in span F` has coordinates `x[p]` at the pivot columns `p` of the
//! reduced row echelon basis `b_1..b_k`, and a functional `s` has chart
//! coordinates `<s, b_i>`. The two duals are compared in that chart.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::exactla::Vector;
use crate::facelat::{enumerate_faces, is_exposed, is_facially_exposed, Face};
use crate::report::{CertificateResult, CheckReport};
use crate::tangents::{lex_tangent_family, tangential_pairs, TangentFamily};

fn chart_coords(f: &Face, x: &Vector) -> Vector {
    x.select(f.span_pivots())
}

/// `F|_L^*` for `L = span F`, in chart coordinates.
pub fn restricted_dual(f: &Face) -> Result<Cone> {
    if f.is_empty() {
        return Err(Error::EmptyFace);
    }
    let g = f.generators();
    let k = f.span_pivots().len();
    let rays = g.rays.iter().map(|r| chart_coords(f, r)).collect();
    let lin = g.lineality.iter().map(|l| chart_coords(f, l)).collect();
    Ok(Cone::from_generators(rays, lin, k)?.dual())
}

/// Projection of `K*` onto the dual of `span F`, in chart coordinates.
pub fn projected_dual(k: &Cone, f: &Face) -> Result<Cone> {
    if f.is_empty() {
        return Err(Error::EmptyFace);
    }
    let p = f.span_basis().clone();
    k.dual().linear_image(&p)
}

/// `K* + F^⊥`.
pub fn sum_with_perp(k: &Cone, f: &Face) -> Result<Cone> {
    let perp = Cone::subspace(f.perp().into_rows(), k.ambient_dim())?;
    k.dual().minkowski_sum(&perp)
}

#[derive(Clone, Debug)]
pub struct FdcFace {
    pub face: Face,
    pub restricted_dual: Cone,
    pub projected_dual: Cone,
    /// Restricted dual equals projected dual.
    pub equal: bool,
    /// `K* + F^⊥ = F*`.
    pub perp_sum_equal: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug)]
pub struct FdcReport {
    pub verdict: bool,
    pub faces: Vec<FdcFace>,
}

impl FdcReport {
    pub fn to_json(&self) -> Value {
        json!({
            "verdict": self.verdict,
            "faces": self.faces.iter().map(|r| json!({
                "active_set": r.face.active_set(),
                "member_rays": r.face.member_rays(),
                "equal": r.equal,
                "perp_sum_equal": r.perp_sum_equal,
                "witness": r.witness,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn to_check_report(&self) -> CheckReport {
        let mut report = CheckReport::new("fdc");
        let n = self.faces.len();
        report.push(CertificateResult::exact(
            "restricted_dual_equals_projected_dual",
            self.faces.iter().all(|r| r.equal),
            n,
        ));
        report.push(CertificateResult::exact(
            "dual_sum_with_perp_equals_face_dual",
            self.faces.iter().all(|r| r.perp_sum_equal),
            n,
        ));
        for r in self.faces.iter().filter(|r| !r.equal || !r.perp_sum_equal) {
            report.witness(json!({"face": r.face.to_json(), "witness": r.witness}));
        }
        report.finish("facially dual complete", "not facially dual complete");
        report
    }
}

fn difference_witness(a: &Cone, b: &Cone, a_name: &str, b_name: &str) -> Option<String> {
    let ga = a.dd_convert();
    let gb = b.dd_convert();
    for r in ga.rays().iter().chain(ga.lineality()) {
        if !gb.contains(r).unwrap_or(false) {
            return Some(format!("{r} lies in {a_name} but not in {b_name}"));
        }
    }
    for r in gb.rays().iter().chain(gb.lineality()) {
        if !ga.contains(r).unwrap_or(false) {
            return Some(format!("{r} lies in {b_name} but not in {a_name}"));
        }
    }
    None
}

fn check_face(k: &Cone, f: &Face) -> Result<FdcFace> {
    let restricted = restricted_dual(f)?;
    let projected = projected_dual(k, f)?;
    let equal = restricted.equals(&projected);
    let face_dual = f.to_cone()?.dd_convert().dual();
    let perp_sum = sum_with_perp(k, f)?;
    let perp_sum_equal = perp_sum.set_eq(&face_dual)?;
    let mut witness = None;
    if !equal {
        witness = difference_witness(&restricted, &projected, "restricted dual", "projected dual");
    } else if !perp_sum_equal {
        witness = difference_witness(&perp_sum, &face_dual, "K* + F^⊥", "F*");
    }
    Ok(FdcFace { face: f.clone(), restricted_dual: restricted, projected_dual: projected, equal, perp_sum_equal, witness })
}

/// Compares restricted and projected duals on every nonempty proper face.
pub fn is_fdc(k: &Cone) -> Result<FdcReport> {
    let k = k.dd_convert();
    let faces: Vec<Face> = enumerate_faces(&k).into_iter().filter(|f| !f.is_whole()).collect();
    let records: Vec<FdcFace> = faces.par_iter().map(|f| check_face(&k, f)).collect::<Result<_>>()?;
    let verdict = records.iter().all(|r| r.equal && r.perp_sum_equal);
    Ok(FdcReport { verdict, faces: records })
}

/// An element `g = u + alpha s` of `K*` projecting to `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct Lift {
    pub g: Vector,
    pub alpha: crate::exactla::Scalar,
    pub normal: Vector,
}

/// Lift a chart functional `u` in the restricted dual of `F` to `K*`, using
/// the exposing normal of `F`.
pub fn find_exposing_lift(k: &Cone, f: &Face, u: &Vector) -> Result<Lift> {
    let s = is_exposed(f)
        .normal()
        .cloned()
        .ok_or_else(|| Error::NoLift("face is not exposed".into()))?;
    find_exposing_lift_with(k, f, u, &s)
}

pub fn find_exposing_lift_with(k: &Cone, f: &Face, u: &Vector, s: &Vector) -> Result<Lift> {
    use crate::exactla::Scalar;
    let n = k.ambient_dim();
    let piv = f.span_pivots();
    if u.len() != piv.len() {
        return Err(Error::DimensionMismatch { expected: piv.len(), found: u.len() });
    }
    if s.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: s.len() });
    }
    k.field().join(u.field()?)?.join(s.field()?)?;
    // lift supported on the pivot columns: <lift, b_i> = u_i
    let mut lift = Vector::zeros(n).into_entries();
    for (i, &p) in piv.iter().enumerate() {
        lift[p] = u[i].clone();
    }
    let lift = Vector::new(lift);
    let g = f.generators();
    for l in &g.lineality {
        if !lift.dot(l).is_zero() {
            return Err(Error::NoLift("u is not in the restricted dual of F".into()));
        }
    }
    for r in &g.rays {
        if lift.dot(r).is_negative() {
            return Err(Error::NoLift("u is not in the restricted dual of F".into()));
        }
        if !s.dot(r).is_zero() {
            return Err(Error::NoLift("s is not orthogonal to F".into()));
        }
    }
    if k.lineality().iter().any(|l| !s.dot(l).is_zero()) {
        return Err(Error::NoLift("s is not in K*".into()));
    }
    let mut alpha = Scalar::zero();
    for (i, r) in k.rays().iter().enumerate() {
        if f.member_rays().binary_search(&i).is_ok() {
            continue;
        }
        let sr = s.dot(r);
        if !sr.is_positive() {
            return Err(Error::NoLift("s does not expose F".into()));
        }
        let need = (-lift.dot(r)).checked_div(&sr)?;
        if need > alpha {
            alpha = need;
        }
    }
    let gv = lift.axpy(&alpha, s);
    debug_assert!(k.dual().contains(&gv).unwrap_or(false));
    Ok(Lift { g: gv, alpha, normal: s.clone() })
}

/// Projection of a functional to chart coordinates of `span F`.
pub fn chart_projection(f: &Face, g: &Vector) -> Vector {
    f.span_basis().mul_vec(g)
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub facially_exposed: bool,
    pub tangentially_exposed: bool,
    pub lex_tangents_facially_exposed: bool,
    pub strongly_tangentially_exposed: bool,
    pub fdc: bool,
    /// Tangential exposure restricted to faces of pointed dimension at most 2.
    pub low_dim_tangential: bool,
    pub depth: usize,
}

/// The exposure taxonomy of a polyhedral cone, with the implications
/// strong ⇒ FDC ⇒ tangential and facially exposed ⇒ tangential on faces
/// of pointed dimension ≤ 2 asserted.
pub fn classify_exposure(k: &Cone) -> Result<Classification> {
    let k = k.dd_convert();
    let family: TangentFamily = lex_tangent_family(&k)?;
    let facially_exposed = is_facially_exposed(&k).passed();
    let (faces, pairs) = tangential_pairs(&k)?;
    let tangentially_exposed = pairs.iter().all(|p| p.equal);
    let lin = k.lineality_dim();
    let low_dim_tangential = pairs
        .iter()
        .filter(|p| faces[p.face].dim().is_some_and(|d| d <= lin + 2))
        .all(|p| p.equal);
    let member_results: Vec<(bool, bool)> = family
        .members
        .par_iter()
        .map(|c| -> Result<(bool, bool)> {
            let (_, pairs) = tangential_pairs(c)?;
            Ok((is_facially_exposed(c).passed(), pairs.iter().all(|p| p.equal)))
        })
        .collect::<Result<_>>()?;
    let lex_tangents_facially_exposed = member_results.iter().all(|r| r.0);
    let strongly_tangentially_exposed = member_results.iter().all(|r| r.1);
    let fdc = is_fdc(&k)?.verdict;

    let c = Classification {
        facially_exposed,
        tangentially_exposed,
        lex_tangents_facially_exposed,
        strongly_tangentially_exposed,
        fdc,
        low_dim_tangential,
        depth: family.depth,
    };
    if c.strongly_tangentially_exposed && !c.fdc {
        return Err(Error::ConsistencyViolation("strongly tangentially exposed but not FDC".into()));
    }
    if c.fdc && !c.tangentially_exposed {
        return Err(Error::ConsistencyViolation("FDC but not tangentially exposed".into()));
    }
    if c.facially_exposed && !c.low_dim_tangential {
        return Err(Error::ConsistencyViolation(
            "facially exposed but a low-dimensional face is not tangentially exposed".into(),
        ));
    }
    Ok(c)
}

pub fn classification_report(c: &Classification) -> CheckReport {
    let mut r = CheckReport::new("classify");
    r.push(CertificateResult::exact("facially_exposed", c.facially_exposed, 1));
    r.push(CertificateResult::exact("tangentially_exposed", c.tangentially_exposed, 1));
    r.push(CertificateResult::exact("lex_tangents_facially_exposed", c.lex_tangents_facially_exposed, 1));
    r.push(CertificateResult::exact("strongly_tangentially_exposed", c.strongly_tangentially_exposed, 1));
    r.push(CertificateResult::exact("fdc", c.fdc, 1));
    r.witness(serde_json::to_value(c).expect("serializable"));
    r.finish("all exposure properties hold", "some exposure property fails");
    r
}
