//! Face lattices of polyhedral cones.
//!
//! A face is identified by its active set: the indices (into
//! `Cone::facets`) of the facet inequalities that are tight on it.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde_json::{json, Value};

use crate::cone::{Cone, Generators, Halfspaces};
use crate::error::{Error, Result};
use crate::exactla::{orthogonal_complement, rref, Matrix, Vector};
use crate::report::{CertificateResult, CheckReport};

/// A face of a polyhedral cone.
#[derive(Clone)]
pub struct Face {
    parent: Cone,
    active_set: Vec<usize>,
    member_rays: Vec<usize>,
    span_basis: Matrix,
    span_pivots: Vec<usize>,
    empty: bool,
}

/// Ray/facet incidence of a converted cone.
struct Incidence {
    /// For each ray, the facets tight on it.
    ray_zeros: Vec<FixedBitSet>,
    /// For each facet, the rays it is tight on.
    facet_zeros: Vec<FixedBitSet>,
}

impl Incidence {
    fn of(k: &Cone) -> Incidence {
        let rays = k.rays();
        let facets = k.facets();
        let mut ray_zeros = vec![FixedBitSet::with_capacity(facets.len()); rays.len()];
        let mut facet_zeros = vec![FixedBitSet::with_capacity(rays.len()); facets.len()];
        for (i, r) in rays.iter().enumerate() {
            for (j, a) in facets.iter().enumerate() {
                if a.dot(r).is_zero() {
                    ray_zeros[i].insert(j);
                    facet_zeros[j].insert(i);
                }
            }
        }
        Incidence { ray_zeros, facet_zeros }
    }

    /// Active set of the smallest face whose members include `members`.
    fn closure(&self, members: &FixedBitSet, n_facets: usize) -> FixedBitSet {
        let mut act = FixedBitSet::with_capacity(n_facets);
        act.insert_range(..);
        for i in members.ones() {
            act.intersect_with(&self.ray_zeros[i]);
        }
        act
    }

    fn members_of(&self, active: &FixedBitSet, n_rays: usize) -> FixedBitSet {
        let mut m = FixedBitSet::with_capacity(n_rays);
        m.insert_range(..);
        for j in active.ones() {
            m.intersect_with(&self.facet_zeros[j]);
        }
        m
    }
}

impl Face {
    fn new(parent: &Cone, active_set: Vec<usize>, member_rays: Vec<usize>) -> Face {
        let n = parent.ambient_dim();
        let mut gens: Vec<Vector> = parent.lineality().to_vec();
        gens.extend(member_rays.iter().map(|&i| parent.rays()[i].clone()));
        let (rows, pivots) = rref(&gens, n);
        Face {
            parent: parent.clone(),
            active_set,
            member_rays,
            span_basis: Matrix::new(rows, n).expect("same field"),
            span_pivots: pivots,
            empty: false,
        }
    }

    fn empty_face(parent: &Cone) -> Face {
        Face {
            parent: parent.clone(),
            active_set: (0..parent.facets().len()).collect(),
            member_rays: Vec::new(),
            span_basis: Matrix::empty(parent.ambient_dim()),
            span_pivots: Vec::new(),
            empty: true,
        }
    }

    /// The face of `parent` with the given (closed) active set.
    pub fn from_active_set(parent: &Cone, active: &[usize]) -> Result<Face> {
        let nf = parent.facets().len();
        if let Some(&bad) = active.iter().find(|&&j| j >= nf) {
            return Err(Error::InvalidArgument(format!("facet index {bad} out of range ({nf} facets)")));
        }
        let inc = Incidence::of(parent);
        let mut act = FixedBitSet::with_capacity(nf);
        for &j in active {
            act.insert(j);
        }
        let members = inc.members_of(&act, parent.rays().len());
        let closed = inc.closure(&members, nf);
        Ok(Face::new(parent, closed.ones().collect(), members.ones().collect()))
    }

    /// The whole cone as a face of itself.
    pub fn whole(parent: &Cone) -> Face {
        Face::from_active_set(parent, &[]).expect("valid")
    }

    pub fn parent(&self) -> &Cone {
        &self.parent
    }

    pub fn active_set(&self) -> &[usize] {
        &self.active_set
    }

    pub fn member_rays(&self) -> &[usize] {
        &self.member_rays
    }

    /// Reduced row echelon basis of `span F`.
    pub fn span_basis(&self) -> &Matrix {
        &self.span_basis
    }

    /// Pivot columns of `span_basis`; chart coordinates of `x in span F`
    /// are the entries of `x` at these columns.
    pub fn span_pivots(&self) -> &[usize] {
        &self.span_pivots
    }

    /// `None` for the empty face.
    pub fn dim(&self) -> Option<usize> {
        (!self.empty).then(|| self.span_basis.row_count())
    }

    pub fn is_empty(&self) -> bool {
        self.empty
    }

    /// The face is the whole parent cone.
    pub fn is_whole(&self) -> bool {
        !self.empty && self.active_set.is_empty()
    }

    /// `G ⊴ F` for two faces of the same cone.
    pub fn is_subface_of(&self, other: &Face) -> bool {
        if self.empty {
            return true;
        }
        !other.empty && other.active_set.iter().all(|j| self.active_set.binary_search(j).is_ok())
    }

    pub fn generators(&self) -> Generators {
        Generators {
            rays: self.member_rays.iter().map(|&i| self.parent.rays()[i].clone()).collect(),
            lineality: self.parent.lineality().to_vec(),
        }
    }

    /// Basis of `F^⊥`.
    pub fn perp(&self) -> Matrix {
        orthogonal_complement(self.span_basis.rows(), self.parent.ambient_dim())
    }

    /// The face as a cone in the ambient space, with both sides known.
    pub fn to_cone(&self) -> Result<Cone> {
        if self.empty {
            return Err(Error::EmptyFace);
        }
        let p = &self.parent;
        let facets = p.facets();
        let mut equations: Vec<Vector> = p.equations().to_vec();
        equations.extend(self.active_set.iter().map(|&j| facets[j].clone()));
        let inequalities = (0..facets.len())
            .filter(|j| self.active_set.binary_search(j).is_err())
            .map(|j| facets[j].clone())
            .collect();
        Ok(Cone::from_both_trusted(
            self.generators(),
            Halfspaces { inequalities, equations },
            p.ambient_dim(),
        ))
    }

    /// The subspace `span F` as a cone, with both sides known.
    pub fn span_cone(&self) -> Cone {
        let n = self.parent.ambient_dim();
        Cone::from_both_trusted(
            Generators { rays: vec![], lineality: self.span_basis.rows().to_vec() },
            Halfspaces { inequalities: vec![], equations: self.perp().into_rows() },
            n,
        )
    }

    pub fn to_json(&self) -> Value {
        json!({
            "active_set": self.active_set,
            "member_rays": self.member_rays,
            "dim": self.dim(),
        })
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Face")
            .field("active_set", &self.active_set)
            .field("member_rays", &self.member_rays)
            .field("dim", &self.dim())
            .finish()
    }
}

impl PartialEq for Face {
    fn eq(&self, other: &Face) -> bool {
        self.empty == other.empty && self.active_set == other.active_set && self.parent.equals(&other.parent)
    }
}

/// All nonempty faces of `k`, sorted by `(dim, active_set)`.
pub fn enumerate_faces(k: &Cone) -> Vec<Face> {
    enumerate_faces_with(k, false)
}

/// All faces, optionally including the empty face (listed first).
pub fn enumerate_faces_with(k: &Cone, include_empty: bool) -> Vec<Face> {
    let nf = k.facets().len();
    let nr = k.rays().len();
    let inc = Incidence::of(k);

    let mut all = FixedBitSet::with_capacity(nr);
    all.insert_range(..);
    let top = inc.closure(&all, nf);
    let mut seen: HashSet<FixedBitSet> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut found: Vec<(FixedBitSet, FixedBitSet)> = Vec::new();
    seen.insert(top.clone());
    queue.push_back((top, all));
    while let Some((act, members)) = queue.pop_front() {
        for j in 0..nf {
            if act.contains(j) {
                continue;
            }
            let mut m = members.clone();
            m.intersect_with(&inc.facet_zeros[j]);
            let a = inc.closure(&m, nf);
            if seen.insert(a.clone()) {
                queue.push_back((a, m));
            }
        }
        found.push((act, members));
    }

    let mut faces: Vec<Face> = found
        .into_iter()
        .map(|(a, m)| Face::new(k, a.ones().collect(), m.ones().collect()))
        .collect();
    faces.sort_by(|x, y| (x.dim(), &x.active_set).cmp(&(y.dim(), &y.active_set)));
    if include_empty {
        faces.insert(0, Face::empty_face(k));
    }
    faces
}

/// Smallest face of `k` containing every point of `s`.
pub fn minimal_face(s: &[Vector], k: &Cone) -> Result<Face> {
    let n = k.ambient_dim();
    let mut x = Vector::zeros(n);
    for p in s {
        if !k.contains(p)? {
            return Err(Error::NotMember(p.to_string()));
        }
        x = x.add(p);
    }
    let active: Vec<usize> = k
        .facets()
        .iter()
        .enumerate()
        .filter(|(_, a)| a.dot(&x).is_zero())
        .map(|(j, _)| j)
        .collect();
    Face::from_active_set(k, &active)
}

/// Sum of the member rays; lies in the relative interior of the face.
pub fn relative_interior_point(f: &Face) -> Result<Vector> {
    if f.is_empty() {
        return Err(Error::EmptyFace);
    }
    let mut x = Vector::zeros(f.parent.ambient_dim());
    for &i in &f.member_rays {
        x = x.add(&f.parent.rays()[i]);
    }
    Ok(x)
}

#[derive(Clone, Debug, PartialEq)]
pub enum ExposureCertificate {
    /// `normal` lies in the dual cone and `K ∩ normal^⊥ = F`. The whole cone
    /// is exposed by the zero normal, flagged improper.
    Exposed { normal: Vector, improper: bool },
    Unexposed { witness: String },
}

impl ExposureCertificate {
    pub fn is_exposed(&self) -> bool {
        matches!(self, ExposureCertificate::Exposed { .. })
    }

    pub fn normal(&self) -> Option<&Vector> {
        match self {
            ExposureCertificate::Exposed { normal, .. } => Some(normal),
            ExposureCertificate::Unexposed { .. } => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            ExposureCertificate::Exposed { normal, improper } => json!({
                "status": "EXPOSED",
                "normal": normal.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
                "improper": improper,
            }),
            ExposureCertificate::Unexposed { witness } => json!({"status": "UNEXPOSED", "witness": witness}),
        }
    }
}

/// `u` lies in the dual of `k` and the rays of `k` orthogonal to `u` are
/// exactly the members of `f`.
fn exposes(k: &Cone, u: &Vector, f: &Face) -> bool {
    if k.lineality().iter().any(|l| !u.dot(l).is_zero()) {
        return false;
    }
    let mut tight = Vec::new();
    for (i, r) in k.rays().iter().enumerate() {
        let v = u.dot(r);
        if v.is_negative() {
            return false;
        }
        if v.is_zero() {
            tight.push(i);
        }
    }
    tight == f.member_rays
}

pub fn is_exposed(f: &Face) -> ExposureCertificate {
    if f.empty {
        return ExposureCertificate::Unexposed {
            witness: "the empty face: every supporting hyperplane of a cone contains 0".into(),
        };
    }
    let k = &f.parent;
    let n = k.ambient_dim();
    let mut u = Vector::zeros(n);
    for &j in &f.active_set {
        u = u.add(&k.facets()[j]);
    }
    if exposes(k, &u, f) {
        return ExposureCertificate::Exposed { normal: u, improper: f.active_set.is_empty() };
    }
    // relative interior point of the conjugate face K* ∩ F^⊥
    let perp = match Cone::subspace(f.perp().into_rows(), n) {
        Ok(c) => c,
        Err(e) => return ExposureCertificate::Unexposed { witness: e.to_string() },
    };
    let conj = k.dual().intersect(&perp).expect("same dimension");
    let mut u = Vector::zeros(n);
    for r in conj.rays() {
        u = u.add(r);
    }
    if exposes(k, &u, f) {
        return ExposureCertificate::Exposed { normal: u, improper: f.active_set.is_empty() };
    }
    let exposed_hull = minimal_face_of_normal(k, &u);
    ExposureCertificate::Unexposed {
        witness: format!(
            "every normal in K* ∩ F^⊥ is tight on the strictly larger face with member rays {:?}",
            exposed_hull
        ),
    }
}

fn minimal_face_of_normal(k: &Cone, u: &Vector) -> Vec<usize> {
    k.rays()
        .iter()
        .enumerate()
        .filter(|(_, r)| u.dot(r).is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// `F ∩ G` for two faces of one cone, exposed by `p_F + p_G`.
pub fn exposed_intersection(f: &Face, g: &Face) -> Result<(Face, ExposureCertificate)> {
    if !f.parent.equals(&g.parent) {
        return Err(Error::InvalidArgument("faces of different cones".into()));
    }
    let k = &f.parent;
    let active: BTreeSet<usize> = f.active_set.iter().chain(&g.active_set).copied().collect();
    let e = Face::from_active_set(k, &active.into_iter().collect::<Vec<_>>())?;
    let (Some(pf), Some(pg)) = (is_exposed(f).normal().cloned(), is_exposed(g).normal().cloned()) else {
        return Ok((e, ExposureCertificate::Unexposed { witness: "an input face is not exposed".into() }));
    };
    let u = pf.add(&pg);
    let cert = if exposes(k, &u, &e) {
        ExposureCertificate::Exposed { improper: u.is_zero(), normal: u }
    } else {
        ExposureCertificate::Unexposed { witness: "p_F + p_G does not cut out F ∩ G".into() }
    };
    Ok((e, cert))
}

pub fn is_facially_exposed(k: &Cone) -> CheckReport {
    let faces = enumerate_faces(k);
    let mut report = CheckReport::new("facial_exposure");
    let mut bad = 0;
    for f in &faces {
        let cert = is_exposed(f);
        if !cert.is_exposed() {
            bad += 1;
            report.witness(json!({"face": f.to_json(), "certificate": cert.to_json()}));
        }
    }
    report.push(
        CertificateResult::exact("every_face_exposed", bad == 0, faces.len())
            .note("exposing normal = sum of active facet normals, checked exactly"),
    );
    report.finish("facially exposed", "has an unexposed face");
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: &[i64]) -> Vector {
        Vector::from_ints(x)
    }

    fn diamond() -> Cone {
        Cone::from_generators(vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])], vec![], 3).unwrap()
    }

    #[test]
    fn orthant_has_eight_faces() {
        let k = Cone::orthant(3);
        let faces = enumerate_faces(&k);
        assert_eq!(faces.len(), 8);
        let dims: Vec<usize> = faces.iter().map(|f| f.dim().unwrap()).collect();
        assert_eq!(dims, vec![0, 1, 1, 1, 2, 2, 2, 3]);
        // brute force: faces of the orthant are the coordinate subsets
        let mut subsets: Vec<Vec<usize>> = faces.iter().map(|f| f.member_rays().to_vec()).collect();
        subsets.sort();
        let mut expect: Vec<Vec<usize>> =
            (0..8u32).map(|m| (0..3).filter(|i| m & (1 << i) != 0).collect()).collect();
        expect.sort();
        assert_eq!(subsets, expect);
    }

    #[test]
    fn diamond_has_ten_faces() {
        assert_eq!(enumerate_faces(&diamond()).len(), 10);
        assert_eq!(enumerate_faces_with(&diamond(), true).len(), 11);
    }

    #[test]
    fn trivial_cone_has_one_face() {
        assert_eq!(enumerate_faces(&Cone::zero(2)).len(), 1);
        assert_eq!(enumerate_faces(&Cone::full(2)).len(), 1);
    }

    #[test]
    fn minimal_faces() {
        let k = Cone::orthant(3);
        let f = minimal_face(&[v(&[1, 1, 0])], &k).unwrap();
        assert_eq!(f.active_set().len(), 1);
        assert_eq!(k.facets()[f.active_set()[0]], v(&[0, 0, 1]));
        assert!(minimal_face(&[v(&[1, 2, 3])], &k).unwrap().is_whole());
        assert_eq!(minimal_face(&[v(&[0, 0, 0])], &k).unwrap().dim(), Some(0));
        assert!(matches!(minimal_face(&[v(&[-1, 0, 0])], &k), Err(Error::NotMember(_))));
    }

    #[test]
    fn relative_interior_points() {
        let k = Cone::orthant(3);
        let f = minimal_face(&[v(&[1, 1, 0])], &k).unwrap();
        let x = relative_interior_point(&f).unwrap();
        assert_eq!(x, v(&[1, 1, 0]));
        for (j, a) in k.facets().iter().enumerate() {
            if !f.active_set().contains(&j) {
                assert!(a.dot(&x).is_positive());
            }
        }
        let apex = minimal_face(&[v(&[0, 0, 0])], &k).unwrap();
        assert!(relative_interior_point(&apex).unwrap().is_zero());
        assert_eq!(relative_interior_point(&Face::whole(&k)).unwrap(), v(&[1, 1, 1]));
    }

    #[test]
    fn exposure() {
        let k = Cone::orthant(3);
        for f in enumerate_faces(&k) {
            let c = is_exposed(&f);
            assert!(c.is_exposed());
            if f.is_whole() {
                assert_eq!(c, ExposureCertificate::Exposed { normal: v(&[0, 0, 0]), improper: true });
            }
        }
        assert!(is_facially_exposed(&diamond()).passed());
    }

    #[test]
    fn intersection_of_exposed_faces() {
        let k = diamond();
        let faces = enumerate_faces(&k);
        for f in &faces {
            for g in &faces {
                let (e, cert) = exposed_intersection(f, g).unwrap();
                let pf = is_exposed(f).normal().unwrap().clone();
                let pg = is_exposed(g).normal().unwrap().clone();
                assert_eq!(cert.normal(), Some(&pf.add(&pg)));
                assert!(e.is_subface_of(f) && e.is_subface_of(g));
            }
        }
    }

    #[test]
    fn face_cone_sides_agree() {
        for f in enumerate_faces(&diamond()) {
            let c = f.to_cone().unwrap();
            let g = f.generators();
            let direct = Cone::from_generators(g.rays, g.lineality, 3).unwrap();
            assert!(c.equals(&direct));
        }
    }
}
