//! Closed convex polyhedral cones.
//!
//! A cone keeps whichever sides it was built from (generators and/or
//! halfspaces) and computes a minimal description of both sides on first
//! use. Halfspaces follow the `<a, x> >= 0` convention.

mod dd;
mod json;

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{reaches_rank, reduce_modulo, row_reduce, rref, Field, Matrix, Vector};

pub use json::{cone_to_json, parse_cone_json, ConeFile};

/// Generator side: `cone(rays) + span(lineality)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Generators {
    pub rays: Vec<Vector>,
    pub lineality: Vec<Vector>,
}

/// Halfspace side: `{x : <a, x> >= 0, <e, x> = 0}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Halfspaces {
    pub inequalities: Vec<Vector>,
    pub equations: Vec<Vector>,
}

/// Canonical description: two cones are equal as sets iff their canonical
/// forms are identical.
///
/// Lineality and equations are reduced row echelon bases. Rays are reduced
/// modulo the lineality basis, facets modulo the equation basis; both are
/// then scaled to primitive integers where possible and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalForm {
    pub ambient_dim: usize,
    pub lineality: Vec<Vector>,
    pub rays: Vec<Vector>,
    pub equations: Vec<Vector>,
    pub facets: Vec<Vector>,
}

#[derive(Debug)]
struct Minimal {
    form: CanonicalForm,
    lin_pivots: Vec<usize>,
    eq_pivots: Vec<usize>,
}

struct Inner {
    n: usize,
    field: Field,
    gens: Option<Generators>,
    halfs: Option<Halfspaces>,
    min: OnceLock<Minimal>,
}

/// A closed convex polyhedral cone in `R^n`. Cheap to clone; immutable.
#[derive(Clone)]
pub struct Cone(Arc<Inner>);

fn check_rows(rows: &[Vector], n: usize) -> Result<Field> {
    let mut f = Field::Rational;
    for r in rows {
        if r.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: r.len() });
        }
        f = f.join(r.field()?)?;
    }
    Ok(f)
}

impl Cone {
    fn build(n: usize, field: Field, gens: Option<Generators>, halfs: Option<Halfspaces>) -> Cone {
        Cone(Arc::new(Inner { n, field, gens, halfs, min: OnceLock::new() }))
    }

    /// `cone(rays) + span(lineality)`. No rays and no lineality gives `{0}`.
    pub fn from_generators(rays: Vec<Vector>, lineality: Vec<Vector>, n: usize) -> Result<Cone> {
        let field = check_rows(&rays, n)?.join(check_rows(&lineality, n)?)?;
        let rays = rays.into_iter().filter(|r| !r.is_zero()).collect();
        let lineality = lineality.into_iter().filter(|r| !r.is_zero()).collect();
        Ok(Cone::build(n, field, Some(Generators { rays, lineality }), None))
    }

    /// `{x : <a, x> >= 0, <e, x> = 0}`. No constraints gives `R^n`.
    pub fn from_halfspaces(inequalities: Vec<Vector>, equations: Vec<Vector>, n: usize) -> Result<Cone> {
        let field = check_rows(&inequalities, n)?.join(check_rows(&equations, n)?)?;
        Ok(Cone::build(n, field, None, Some(Halfspaces { inequalities, equations })))
    }

    /// Both sides supplied by the caller. They are checked to describe the
    /// same set.
    pub fn from_both(gens: Generators, halfs: Halfspaces, n: usize) -> Result<Cone> {
        let from_gens = Cone::from_generators(gens.rays.clone(), gens.lineality.clone(), n)?;
        let from_halfs = Cone::from_halfspaces(halfs.inequalities.clone(), halfs.equations.clone(), n)?;
        from_gens.field().join(from_halfs.field())?;
        let (eqs, facets) = dd::h_from_v(&gens.rays, &gens.lineality, n);
        let dd_h = Halfspaces { inequalities: facets, equations: eqs };
        let mine = canonical_from(n, &gens, &halfs, false, false).form;
        let theirs = canonical_from(n, &gens, &dd_h, false, true).form;
        if mine != theirs {
            return Err(Error::InvalidArgument(
                "generator and halfspace descriptions do not describe the same cone".into(),
            ));
        }
        let field = from_gens.field().join(from_halfs.field())?;
        Ok(Cone::build(n, field, Some(gens), Some(halfs)))
    }

    /// Both sides known to describe the same set by construction.
    pub(crate) fn from_both_trusted(gens: Generators, halfs: Halfspaces, n: usize) -> Cone {
        let field = check_rows(&gens.rays, n)
            .and_then(|f| f.join(check_rows(&gens.lineality, n)?))
            .and_then(|f| f.join(check_rows(&halfs.inequalities, n)?))
            .and_then(|f| f.join(check_rows(&halfs.equations, n)?))
            .expect("consistent sides");
        Cone::build(n, field, Some(gens), Some(halfs))
    }

    fn from_minimal(n: usize, field: Field, min: Minimal) -> Cone {
        let f = &min.form;
        let gens = Generators { rays: f.rays.clone(), lineality: f.lineality.clone() };
        let halfs = Halfspaces { inequalities: f.facets.clone(), equations: f.equations.clone() };
        let cell = OnceLock::new();
        let _ = cell.set(min);
        Cone(Arc::new(Inner { n, field, gens: Some(gens), halfs: Some(halfs), min: cell }))
    }

    pub fn zero(n: usize) -> Cone {
        Cone::from_generators(vec![], vec![], n).expect("valid")
    }

    pub fn full(n: usize) -> Cone {
        Cone::from_halfspaces(vec![], vec![], n).expect("valid")
    }

    pub fn orthant(n: usize) -> Cone {
        Cone::from_generators((0..n).map(|i| Vector::unit(n, i)).collect(), vec![], n).expect("valid")
    }

    /// The linear subspace spanned by `basis`.
    pub fn subspace(basis: Vec<Vector>, n: usize) -> Result<Cone> {
        Cone::from_generators(vec![], basis, n)
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.n
    }

    pub fn field(&self) -> Field {
        self.0.field
    }

    /// Generator side as supplied or as computed, whichever is available
    /// without further work.
    pub fn known_generators(&self) -> Option<Generators> {
        if let Some(m) = self.0.min.get() {
            return Some(Generators { rays: m.form.rays.clone(), lineality: m.form.lineality.clone() });
        }
        self.0.gens.clone()
    }

    pub fn known_halfspaces(&self) -> Option<Halfspaces> {
        if let Some(m) = self.0.min.get() {
            return Some(Halfspaces { inequalities: m.form.facets.clone(), equations: m.form.equations.clone() });
        }
        self.0.halfs.clone()
    }

    pub fn is_converted(&self) -> bool {
        self.0.min.get().is_some()
    }

    fn minimal(&self) -> &Minimal {
        self.0.min.get_or_init(|| {
            let n = self.0.n;
            match (&self.0.gens, &self.0.halfs) {
                (Some(g), Some(h)) => canonical_from(n, g, h, false, false),
                (Some(g), None) => {
                    let (eqs, facets) = dd::h_from_v(&g.rays, &g.lineality, n);
                    canonical_from(n, g, &Halfspaces { inequalities: facets, equations: eqs }, false, true)
                }
                (None, Some(h)) => {
                    let (lin, rays) = dd::v_from_h(&h.inequalities, &h.equations, n);
                    canonical_from(n, &Generators { rays, lineality: lin }, h, true, false)
                }
                (None, None) => unreachable!("a cone always has one side"),
            }
        })
    }

    /// Both sides populated with minimal descriptions.
    pub fn dd_convert(&self) -> Cone {
        self.minimal();
        self.clone()
    }

    pub fn canonical(&self) -> &CanonicalForm {
        &self.minimal().form
    }

    /// Extreme rays, reduced modulo the lineality space.
    pub fn rays(&self) -> &[Vector] {
        &self.minimal().form.rays
    }

    /// Reduced row echelon basis of the lineality space.
    pub fn lineality(&self) -> &[Vector] {
        &self.minimal().form.lineality
    }

    /// Irredundant facet normals.
    pub fn facets(&self) -> &[Vector] {
        &self.minimal().form.facets
    }

    /// Reduced row echelon basis of the orthogonal complement of the span.
    pub fn equations(&self) -> &[Vector] {
        &self.minimal().form.equations
    }

    pub fn lineality_pivots(&self) -> &[usize] {
        &self.minimal().lin_pivots
    }

    pub fn equation_pivots(&self) -> &[usize] {
        &self.minimal().eq_pivots
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.0.n - self.equations().len()
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality().len()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality().is_empty()
    }

    pub fn is_subspace(&self) -> bool {
        self.rays().is_empty()
    }

    /// Exact membership.
    pub fn contains(&self, x: &Vector) -> Result<bool> {
        if x.len() != self.0.n {
            return Err(Error::DimensionMismatch { expected: self.0.n, found: x.len() });
        }
        self.0.field.join(x.field()?)?;
        if let Some(h) = self.known_halfspaces() {
            return Ok(satisfies(&h, x));
        }
        if let Some(g) = &self.0.gens {
            if generated_by(g, x, self.0.n) {
                return Ok(true);
            }
        }
        Ok(satisfies(&self.known_halfspaces_forced(), x))
    }

    fn known_halfspaces_forced(&self) -> Halfspaces {
        self.minimal();
        self.known_halfspaces().expect("converted")
    }

    fn known_generators_forced(&self) -> Generators {
        self.minimal();
        self.known_generators().expect("converted")
    }

    /// `other ⊆ self`, decided from whichever sides are at hand, converting
    /// only when a cheap certificate is not available.
    pub fn contains_cone(&self, other: &Cone) -> Result<bool> {
        if self.0.n != other.0.n {
            return Err(Error::DimensionMismatch { expected: self.0.n, found: other.0.n });
        }
        self.0.field.join(other.0.field)?;
        if let (Some(g), Some(h)) = (other.known_generators(), self.known_halfspaces()) {
            return Ok(gens_satisfy(&g, &h));
        }
        if let (Some(hs), Some(ho)) = (self.known_halfspaces(), other.known_halfspaces()) {
            if halfspaces_implied(&hs, &ho, self.0.n) {
                return Ok(true);
            }
        }
        if let (Some(gs), Some(go)) = (self.known_generators(), other.known_generators()) {
            if go.rays.iter().chain(&go.lineality).all(|x| generated_by(&gs, x, self.0.n)) {
                // lineality needs both signs
                if go.lineality.iter().all(|l| generated_by(&gs, &l.neg(), self.0.n)) {
                    return Ok(true);
                }
            }
        }
        let h = self.known_halfspaces().unwrap_or_else(|| self.known_halfspaces_forced());
        Ok(gens_satisfy(&other.some_generators(), &h))
    }

    /// A generator side, not necessarily minimal. Converts without caching
    /// when only halfspaces are known.
    fn some_generators(&self) -> Generators {
        if let Some(g) = self.known_generators() {
            return g;
        }
        let h = self.0.halfs.as_ref().expect("a cone always has one side");
        let (lineality, rays) = dd::v_from_h(&h.inequalities, &h.equations, self.0.n);
        Generators { rays, lineality }
    }

    /// Set equality by mutual containment.
    pub fn set_eq(&self, other: &Cone) -> Result<bool> {
        Ok(self.contains_cone(other)? && other.contains_cone(self)?)
    }

    /// Set equality through canonical forms.
    pub fn equals(&self, other: &Cone) -> bool {
        self.canonical() == other.canonical()
    }

    /// `{s : <s, x> >= 0 for all x in K}`.
    pub fn dual(&self) -> Cone {
        let m = self.minimal();
        let form = CanonicalForm {
            ambient_dim: self.0.n,
            lineality: m.form.equations.clone(),
            rays: m.form.facets.clone(),
            equations: m.form.lineality.clone(),
            facets: m.form.rays.clone(),
        };
        let min = Minimal { form, lin_pivots: m.eq_pivots.clone(), eq_pivots: m.lin_pivots.clone() };
        Cone::from_minimal(self.0.n, self.0.field, min)
    }

    /// `{s : <s, x> <= 0 for all x in K}`, that is `-dual(K)`.
    pub fn polar(&self) -> Cone {
        self.dual().negate()
    }

    /// `-K`.
    pub fn negate(&self) -> Cone {
        let m = self.minimal();
        let neg = |v: &[Vector]| {
            let mut out: Vec<Vector> = v.iter().map(Vector::neg).collect();
            out.sort();
            out
        };
        let form = CanonicalForm {
            ambient_dim: self.0.n,
            lineality: m.form.lineality.clone(),
            rays: neg(&m.form.rays),
            equations: m.form.equations.clone(),
            facets: neg(&m.form.facets),
        };
        let min = Minimal { form, lin_pivots: m.lin_pivots.clone(), eq_pivots: m.eq_pivots.clone() };
        Cone::from_minimal(self.0.n, self.0.field, min)
    }

    pub fn intersect(&self, other: &Cone) -> Result<Cone> {
        if self.0.n != other.0.n {
            return Err(Error::DimensionMismatch { expected: self.0.n, found: other.0.n });
        }
        let a = self.known_halfspaces().unwrap_or_else(|| self.known_halfspaces_forced());
        let b = other.known_halfspaces().unwrap_or_else(|| other.known_halfspaces_forced());
        let mut ineqs = a.inequalities;
        ineqs.extend(b.inequalities);
        let mut eqs = a.equations;
        eqs.extend(b.equations);
        Cone::from_halfspaces(ineqs, eqs, self.0.n)
    }

    /// `K1 + K2`; polyhedral sums are closed.
    pub fn minkowski_sum(&self, other: &Cone) -> Result<Cone> {
        if self.0.n != other.0.n {
            return Err(Error::DimensionMismatch { expected: self.0.n, found: other.0.n });
        }
        let a = self.known_generators().unwrap_or_else(|| self.known_generators_forced());
        let b = other.known_generators().unwrap_or_else(|| other.known_generators_forced());
        let mut rays = a.rays;
        rays.extend(b.rays);
        let mut lin = a.lineality;
        lin.extend(b.lineality);
        Cone::from_generators(rays, lin, self.0.n)
    }

    /// `{A x : x in K}` for a matrix with `n` columns.
    pub fn linear_image(&self, a: &Matrix) -> Result<Cone> {
        if a.col_count() != self.0.n {
            return Err(Error::DimensionMismatch { expected: self.0.n, found: a.col_count() });
        }
        let g = self.known_generators().unwrap_or_else(|| self.known_generators_forced());
        let rays = g.rays.iter().map(|r| a.mul_vec(r)).collect();
        let lin = g.lineality.iter().map(|l| a.mul_vec(l)).collect();
        Cone::from_generators(rays, lin, a.row_count())
    }

    /// `{x : A x in K}` for a matrix with `n` rows.
    pub fn preimage(&self, a: &Matrix) -> Result<Cone> {
        if a.row_count() != self.0.n {
            return Err(Error::DimensionMismatch { expected: self.0.n, found: a.row_count() });
        }
        let h = self.known_halfspaces().unwrap_or_else(|| self.known_halfspaces_forced());
        let at = a.transpose();
        let pull = |v: &Vector| at.mul_vec(v);
        Cone::from_halfspaces(
            h.inequalities.iter().map(pull).collect(),
            h.equations.iter().map(pull).collect(),
            a.col_count(),
        )
    }

    /// `K = C + L` with `L` the lineality space and `C` pointed,
    /// `C ∩ L = {0}`.
    pub fn decompose_pointed(&self) -> PointedDecomposition {
        let n = self.0.n;
        let lineality = self.lineality().to_vec();
        let pointed = Cone::from_generators(self.rays().to_vec(), vec![], n).expect("same field");
        let lin_cone = Cone::subspace(lineality.clone(), n).expect("same field");
        let trivial = pointed.intersect(&lin_cone).expect("same dim");
        let certificate = trivial.rays().is_empty() && trivial.lineality().is_empty();
        PointedDecomposition { lineality, pointed, certificate }
    }
}

/// Result of splitting off the lineality space.
#[derive(Clone, Debug)]
pub struct PointedDecomposition {
    pub lineality: Vec<Vector>,
    pub pointed: Cone,
    /// `pointed ∩ span(lineality) = {0}`, verified exactly.
    pub certificate: bool,
}

fn satisfies(h: &Halfspaces, x: &Vector) -> bool {
    h.inequalities.iter().all(|a| !a.dot(x).is_negative()) && h.equations.iter().all(|e| e.dot(x).is_zero())
}

fn gens_satisfy(g: &Generators, h: &Halfspaces) -> bool {
    g.rays.iter().all(|r| satisfies(h, r))
        && g.lineality.iter().all(|l| {
            h.inequalities.iter().all(|a| a.dot(l).is_zero()) && h.equations.iter().all(|e| e.dot(l).is_zero())
        })
}

/// Sufficient test for `x in cone(rays) + span(lineality)`: `x` lies in the
/// lineality span, or is a positive multiple of one ray modulo it.
fn generated_by(g: &Generators, x: &Vector, n: usize) -> bool {
    let (lin, piv) = rref(&g.lineality, n);
    let xr = reduce_modulo(x, &lin, &piv);
    if xr.is_zero() {
        return true;
    }
    let key = xr.normalized_ray();
    g.rays.iter().any(|r| reduce_modulo(r, &lin, &piv).normalized_ray() == key)
}

/// Sufficient test for `{x : ho} ⊆ {x : hs}`: every constraint of `hs`
/// appears in `ho` up to positive scaling modulo the equations of `ho`.
fn halfspaces_implied(hs: &Halfspaces, ho: &Halfspaces, n: usize) -> bool {
    let (eq, piv) = rref(&ho.equations, n);
    let keys: Vec<Vector> = ho
        .inequalities
        .iter()
        .map(|a| reduce_modulo(a, &eq, &piv).normalized_ray())
        .collect();
    let implied = |a: &Vector| {
        let r = reduce_modulo(a, &eq, &piv);
        r.is_zero() || keys.contains(&r.normalized_ray())
    };
    hs.inequalities.iter().all(implied) && hs.equations.iter().all(|e| reduce_modulo(e, &eq, &piv).is_zero())
}

/// Minimal canonical description from two consistent raw sides. A side
/// flagged as irredundant (fresh from double description) skips the rank
/// tests.
fn canonical_from(n: usize, g: &Generators, h: &Halfspaces, gens_minimal: bool, halfs_minimal: bool) -> Minimal {
    let mut all_h: Vec<Vector> = h.inequalities.clone();
    all_h.extend(h.equations.iter().cloned());
    let lin_basis = if all_h.is_empty() {
        Matrix::identity(n).into_rows()
    } else {
        row_reduce(&Matrix::new(all_h, n).expect("rectangular")).nullspace.into_rows()
    };
    let (lineality, lin_pivots) = rref(&lin_basis, n);
    let l = lineality.len();

    let mut all_g: Vec<Vector> = g.rays.clone();
    all_g.extend(g.lineality.iter().cloned());
    let eq_basis = if all_g.is_empty() {
        Matrix::identity(n).into_rows()
    } else {
        row_reduce(&Matrix::new(all_g.clone(), n).expect("rectangular")).nullspace.into_rows()
    };
    let (equations, eq_pivots) = rref(&eq_basis, n);
    let dim = n - equations.len();

    let mut rays: Vec<Vector> = g
        .rays
        .iter()
        .filter_map(|r| {
            let red = reduce_modulo(r, &lineality, &lin_pivots);
            if red.is_zero() {
                return None;
            }
            if !gens_minimal {
                let mut tight: Vec<Vector> =
                    h.inequalities.iter().filter(|a| a.dot(r).is_zero()).cloned().collect();
                tight.extend(h.equations.iter().cloned());
                if !reaches_rank(&tight, n, n - l - 1) {
                    return None;
                }
            }
            Some(red.normalized_ray())
        })
        .collect();
    rays.sort();
    rays.dedup();

    let mut facets: Vec<Vector> = h
        .inequalities
        .iter()
        .filter_map(|a| {
            let red = reduce_modulo(a, &equations, &eq_pivots);
            if red.is_zero() {
                return None;
            }
            if !halfs_minimal {
                let mut tight: Vec<Vector> = g.rays.iter().filter(|r| a.dot(r).is_zero()).cloned().collect();
                tight.extend(g.lineality.iter().cloned());
                if dim == 0 || !reaches_rank(&tight, n, dim - 1) {
                    return None;
                }
            }
            Some(red.normalized_ray())
        })
        .collect();
    facets.sort();
    facets.dedup();

    Minimal {
        form: CanonicalForm { ambient_dim: n, lineality, rays, equations, facets },
        lin_pivots,
        eq_pivots,
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("Cone");
        d.field("ambient_dim", &self.0.n).field("field", &self.0.field.label());
        if let Some(g) = self.known_generators() {
            d.field("rays", &g.rays.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            d.field("lineality", &g.lineality.iter().map(|v| v.to_string()).collect::<Vec<_>>());
        }
        if let Some(h) = self.known_halfspaces() {
            d.field("inequalities", &h.inequalities.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            d.field("equations", &h.equations.iter().map(|v| v.to_string()).collect::<Vec<_>>());
        }
        d.finish()
    }
}

impl PartialEq for Cone {
    fn eq(&self, other: &Cone) -> bool {
        self.equals(other)
    }
}

impl Eq for Cone {}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{rank, Scalar};

    fn v(x: &[i64]) -> Vector {
        Vector::from_ints(x)
    }

    fn diamond() -> Cone {
        Cone::from_generators(vec![v(&[1, 0, 1]), v(&[0, 1, 1]), v(&[-1, 0, 1]), v(&[0, -1, 1])], vec![], 3).unwrap()
    }

    /// Brute-force facet oracle: a candidate normal is a facet when it is
    /// nonnegative on every ray and tight on `dim - 1` independent rays.
    fn is_facet_by_brute_force(a: &Vector, rays: &[Vector], dim: usize) -> bool {
        if rays.iter().any(|r| a.dot(r).is_negative()) {
            return false;
        }
        let tight: Vec<Vector> = rays.iter().filter(|r| a.dot(r).is_zero()).cloned().collect();
        rank(&tight, a.len()) + 1 == dim
    }

    #[test]
    fn quadrant_from_rays() {
        let k = Cone::from_generators(vec![v(&[1, 0]), v(&[0, 1])], vec![], 2).unwrap();
        assert_eq!(k.facets(), &[v(&[0, 1]), v(&[1, 0])]);
        assert!(k.equations().is_empty());
    }

    #[test]
    fn empty_inputs() {
        let full = Cone::full(3);
        assert_eq!(full.lineality_dim(), 3);
        assert!(full.facets().is_empty());
        let zero = Cone::zero(3);
        assert_eq!(zero.dim(), 0);
        assert_eq!(zero.equations().len(), 3);
    }

    #[test]
    fn diamond_facets_match_brute_force() {
        let k = diamond();
        let expect = [v(&[-1, -1, 1]), v(&[-1, 1, 1]), v(&[1, -1, 1]), v(&[1, 1, 1])];
        assert_eq!(k.facets(), &expect);
        for a in &expect {
            assert!(is_facet_by_brute_force(a, k.rays(), 3));
        }
    }

    #[test]
    fn line_has_lineality_and_equation() {
        let k = Cone::from_generators(vec![v(&[1, 1]), v(&[-1, -1])], vec![], 2).unwrap();
        assert_eq!(k.lineality(), &[v(&[1, 1])]);
        assert!(k.rays().is_empty());
        assert_eq!(k.equations(), &[v(&[1, -1])]);
    }

    #[test]
    fn dual_examples() {
        let q = Cone::orthant(2);
        assert!(q.dual().equals(&q));
        let k = Cone::from_generators(vec![v(&[1, 0]), v(&[1, 1])], vec![], 2).unwrap();
        let d = k.dual();
        assert_eq!(d.rays(), &[v(&[0, 1]), v(&[1, -1])]);
        for s in d.rays() {
            for r in k.rays() {
                assert!(!s.dot(r).is_negative());
            }
        }
        assert!(Cone::full(3).dual().equals(&Cone::zero(3)));
        assert!(diamond().dual().dual().equals(&diamond()));
    }

    #[test]
    fn dual_computed_from_halfspaces_agrees() {
        let k = Cone::from_halfspaces(vec![v(&[1, 0]), v(&[-1, 1])], vec![], 2).unwrap();
        let d = Cone::from_generators(vec![v(&[1, 0]), v(&[-1, 1])], vec![], 2).unwrap();
        assert!(k.dual().equals(&d));
    }

    #[test]
    fn polar_examples() {
        let q = Cone::orthant(2);
        let p = q.polar();
        assert_eq!(p.rays(), &[v(&[-1, 0]), v(&[0, -1])]);
        assert!(Cone::zero(2).polar().equals(&Cone::full(2)));
        let h = Cone::from_halfspaces(vec![v(&[1, 0])], vec![], 2).unwrap();
        assert_eq!(h.polar().rays(), &[v(&[-1, 0])]);
        assert!(h.polar().lineality().is_empty());
    }

    #[test]
    fn intersection_and_sum() {
        let q = Cone::orthant(2);
        let h = Cone::from_halfspaces(vec![v(&[-1, 1])], vec![], 2).unwrap();
        let i = q.intersect(&h).unwrap();
        assert_eq!(i.rays(), &[v(&[0, 1]), v(&[1, 1])]);

        let a = Cone::from_generators(vec![v(&[1, 0])], vec![], 2).unwrap();
        let b = Cone::from_generators(vec![v(&[0, 1])], vec![], 2).unwrap();
        assert!(a.minkowski_sum(&b).unwrap().equals(&q));

        let s = Cone::orthant(3).minkowski_sum(&Cone::subspace(vec![v(&[0, 1, 0]), v(&[0, 0, 1])], 3).unwrap()).unwrap();
        assert_eq!(s.facets(), &[v(&[1, 0, 0])]);
        assert_eq!(s.lineality(), &[v(&[0, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn images() {
        let k = diamond();
        let proj = Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0]]);
        assert!(k.linear_image(&proj).unwrap().equals(&Cone::full(2)));
        assert!(k.linear_image(&Matrix::identity(3)).unwrap().equals(&k));
        assert!(k.linear_image(&Matrix::zeros(3, 3)).unwrap().equals(&Cone::zero(3)));
        let pre = k.preimage(&Matrix::identity(3)).unwrap();
        assert!(pre.equals(&k));
    }

    #[test]
    fn decomposition() {
        let h = Cone::from_halfspaces(vec![v(&[0, 1])], vec![], 2).unwrap();
        let d = h.decompose_pointed();
        assert_eq!(d.lineality, vec![v(&[1, 0])]);
        assert_eq!(d.pointed.rays(), &[v(&[0, 1])]);
        assert!(d.certificate);
        let d = diamond().decompose_pointed();
        assert!(d.lineality.is_empty() && d.pointed.equals(&diamond()));
        let d = Cone::full(3).decompose_pointed();
        assert_eq!(d.lineality.len(), 3);
        assert!(d.pointed.equals(&Cone::zero(3)));
    }

    #[test]
    fn membership_and_dimension() {
        assert!(Cone::orthant(2).contains(&v(&[1, 1])).unwrap());
        assert!(!Cone::orthant(2).contains(&v(&[1, -1])).unwrap());
        assert_eq!(Cone::zero(4).dim(), 0);
        assert!(matches!(Cone::orthant(2).contains(&v(&[1])), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn both_sides_must_agree() {
        let g = Generators { rays: vec![v(&[1, 0]), v(&[0, 1])], lineality: vec![] };
        let ok = Halfspaces { inequalities: vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])], equations: vec![] };
        let k = Cone::from_both(g.clone(), ok, 2).unwrap();
        assert_eq!(k.facets().len(), 2);
        let bad = Halfspaces { inequalities: vec![v(&[1, 0])], equations: vec![] };
        assert!(Cone::from_both(g, bad, 2).is_err());
    }

    #[test]
    fn redundant_generators_are_pruned() {
        let k = Cone::from_generators(vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1]), v(&[2, 0])], vec![], 2).unwrap();
        assert_eq!(k.rays(), &[v(&[0, 1]), v(&[1, 0])]);
    }

    #[test]
    fn quadratic_field_cone() {
        let r2 = Scalar::sqrt(2).unwrap();
        let ray = Vector::new(vec![Scalar::one(), r2.clone()]);
        let k = Cone::from_generators(vec![ray.clone(), v(&[1, 0])], vec![], 2).unwrap();
        assert_eq!(k.field(), Field::Quadratic(2));
        assert!(k.dual().dual().equals(&k));
        assert!(k.contains(&ray.add(&v(&[3, 0]))).unwrap());
        let r7 = Scalar::sqrt(7).unwrap();
        assert!(matches!(
            k.contains(&Vector::new(vec![r7, Scalar::zero()])),
            Err(Error::FieldOverflow { .. })
        ));
    }
}
