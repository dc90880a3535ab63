//! Tangent and normal cones at faces, tangential exposure and
//! lexicographic tangent families.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cone::{CanonicalForm, Cone, Generators, Halfspaces};
use crate::error::{Error, Result};
use crate::facelat::{enumerate_faces, minimal_face, relative_interior_point, Face};
use crate::report::{CertificateResult, CheckReport};

/// `T(F; K)`: the tangent cone of `K` at any relative interior point of `F`.
///
/// Halfspace side: the facets active on `F` plus the equations of `K`.
/// Generator side: `K + span F`.
pub fn tangent_cone(k: &Cone, f: &Face) -> Result<Cone> {
    if f.is_empty() {
        return Err(Error::EmptyFace);
    }
    if !f.parent().equals(k) {
        return Err(Error::InvalidArgument("face does not belong to this cone".into()));
    }
    let facets = k.facets();
    let mut lineality = k.lineality().to_vec();
    lineality.extend(f.member_rays().iter().map(|&i| k.rays()[i].clone()));
    let rays = (0..k.rays().len())
        .filter(|i| f.member_rays().binary_search(i).is_err())
        .map(|i| k.rays()[i].clone())
        .collect();
    Ok(Cone::from_both_trusted(
        Generators { rays, lineality },
        Halfspaces {
            inequalities: f.active_set().iter().map(|&j| facets[j].clone()).collect(),
            equations: k.equations().to_vec(),
        },
        k.ambient_dim(),
    ))
}

/// `N(F; K) = T(F; K)°`.
pub fn normal_cone(k: &Cone, f: &Face) -> Result<Cone> {
    Ok(tangent_cone(k, f)?.polar())
}

/// `T(G'; T(F; K))` for a face `G'` of the tangent cone.
pub fn second_order_tangent(k: &Cone, f: &Face, g_prime: &Face) -> Result<Cone> {
    let t = tangent_cone(k, f)?;
    if !g_prime.parent().equals(&t) {
        return Err(Error::InvalidArgument("G' is not a face of T(F; K)".into()));
    }
    tangent_cone(g_prime.parent(), g_prime)
}

/// Outcome of the tangential exposure test on one pair `G ⊴ F`.
#[derive(Clone, Debug)]
pub struct PairCheck {
    pub face: usize,
    pub subface: usize,
    /// `T(G; F) ⊆ T(G; K) ∩ span F`, which always holds.
    pub inclusion: bool,
    pub equal: bool,
}

/// Runs the tangential exposure test on every pair `G ⊴ F` with `F` a
/// proper face. Returns the faces and the pair results.
pub fn tangential_pairs(k: &Cone) -> Result<(Vec<Face>, Vec<PairCheck>)> {
    let faces = enumerate_faces(k);
    let tangents: Vec<Cone> = faces.par_iter().map(|g| tangent_cone(k, g)).collect::<Result<_>>()?;
    let checks: Vec<Vec<PairCheck>> = faces
        .par_iter()
        .enumerate()
        .filter(|(_, f)| !f.is_whole())
        .map(|(fi, f)| -> Result<Vec<PairCheck>> {
            let f_cone = f.to_cone()?.dd_convert();
            let span = f.span_cone();
            let mut out = Vec::new();
            for (gi, g) in faces.iter().enumerate() {
                if !g.is_subface_of(f) {
                    continue;
                }
                let lhs = tangents[gi].intersect(&span)?;
                let g_in_f = minimal_face(&[relative_interior_point(g)?], &f_cone)?;
                let rhs = tangent_cone(&f_cone, &g_in_f)?;
                let inclusion = lhs.contains_cone(&rhs)?;
                let equal = inclusion && rhs.contains_cone(&lhs)?;
                out.push(PairCheck { face: fi, subface: gi, inclusion, equal });
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    Ok((faces, checks.into_iter().flatten().collect()))
}

/// `T(G; K) ∩ span F = T(G; F)` for every proper face `F` and every `G ⊴ F`,
/// checked at one relative interior point per face.
pub fn is_tangentially_exposed(k: &Cone) -> Result<CheckReport> {
    let (faces, pairs) = tangential_pairs(k)?;
    Ok(tangential_report(&faces, &pairs))
}

fn tangential_report(faces: &[Face], pairs: &[PairCheck]) -> CheckReport {
    let mut report = CheckReport::new("tangential_exposure");
    let incl = pairs.iter().all(|p| p.inclusion);
    let eq = pairs.iter().all(|p| p.equal);
    report.push(CertificateResult::exact("one_sided_inclusion", incl, pairs.len()));
    report.push(CertificateResult::exact("tangent_span_equality", eq, pairs.len()));
    if let Some(p) = pairs.iter().find(|p| !p.equal) {
        report.witness(json!({"face": faces[p.face].to_json(), "subface": faces[p.subface].to_json()}));
    }
    report.finish("tangentially exposed", "tangential exposure fails");
    report
}

/// The lexicographic tangent family `𝒯^0 ⊆ 𝒯^1 ⊆ ...` up to its fixed point.
#[derive(Clone, Debug)]
pub struct TangentFamily {
    pub levels: Vec<Vec<CanonicalForm>>,
    /// Members of the last level, in canonical order.
    pub members: Vec<Cone>,
    pub depth: usize,
    pub stabilized: bool,
}

impl TangentFamily {
    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "stabilized": self.stabilized,
            "level_sizes": self.levels.iter().map(Vec::len).collect::<Vec<_>>(),
            "levels": self.levels,
        })
    }
}

fn all_tangents(c: &Cone) -> Result<Vec<Cone>> {
    enumerate_faces(c).iter().map(|f| tangent_cone(c, f)).collect()
}

pub fn lex_tangent_family(k: &Cone) -> Result<TangentFamily> {
    let k = k.dd_convert();
    let bound = k.dim();
    let mut current: BTreeMap<CanonicalForm, Cone> = BTreeMap::new();
    current.insert(k.canonical().clone(), k.clone());
    let mut levels = vec![current.keys().cloned().collect::<Vec<_>>()];
    // cones whose tangents have already been added
    let mut expanded: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
    loop {
        let todo: Vec<Cone> = current
            .iter()
            .filter(|(key, _)| !expanded.contains_key(*key))
            .map(|(_, c)| c.clone())
            .collect();
        let produced: Vec<Vec<Cone>> = todo.par_iter().map(all_tangents).collect::<Result<_>>()?;
        for c in &todo {
            expanded.insert(c.canonical().clone(), ());
        }
        let mut next = current.clone();
        for t in produced.into_iter().flatten() {
            next.entry(t.canonical().clone()).or_insert(t);
        }
        let k_level = levels.len() - 1;
        if next.len() == current.len() {
            return Ok(TangentFamily {
                levels,
                members: current.into_values().collect(),
                depth: k_level,
                stabilized: true,
            });
        }
        if k_level + 1 > bound {
            return Err(Error::DepthBoundViolated { depth: k_level + 1, dim: bound });
        }
        levels.push(next.keys().cloned().collect());
        current = next;
    }
}

pub fn tangential_depth(k: &Cone) -> Result<usize> {
    Ok(lex_tangent_family(k)?.depth)
}

/// Tangential exposure of `K` and of every lexicographic tangent cone.
pub fn is_strongly_tangentially_exposed(k: &Cone) -> Result<CheckReport> {
    let family = lex_tangent_family(k)?;
    strong_report(&family)
}

pub(crate) fn strong_report(family: &TangentFamily) -> Result<CheckReport> {
    let reports: Vec<CheckReport> = family.members.par_iter().map(is_tangentially_exposed).collect::<Result<_>>()?;
    let mut report = CheckReport::new("strong_tangential_exposure");
    let failing: Vec<usize> = (0..reports.len()).filter(|&i| !reports[i].passed()).collect();
    report.push(
        CertificateResult::exact("family_tangentially_exposed", failing.is_empty(), reports.len())
            .note(format!("tangential depth {}", family.depth)),
    );
    for &i in failing.iter().take(1) {
        report.witness(json!({
            "member": family.members[i].canonical(),
            "report": reports[i].to_json(),
        }));
    }
    report.finish("strongly tangentially exposed", "a lexicographic tangent cone is not tangentially exposed");
    Ok(report)
}
