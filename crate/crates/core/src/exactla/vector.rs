use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::scalar::{Field, Rational, Scalar};
use crate::error::{Error, Result};

/// A column vector with exact entries.
///
/// The derived order is lexicographic on numeric entry values; it is the
/// fixed total order used for canonical forms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Vector(Vec<Scalar>);

impl Vector {
    pub fn new(entries: Vec<Scalar>) -> Vector {
        Vector(entries)
    }

    pub fn from_ints(entries: &[i64]) -> Vector {
        Vector(entries.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn zeros(n: usize) -> Vector {
        Vector(vec![Scalar::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Vector {
        let mut v = Vector::zeros(n);
        v.0[i] = Scalar::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Scalar> {
        self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    /// Smallest field holding every entry.
    pub fn field(&self) -> Result<Field> {
        self.0.iter().try_fold(Field::Rational, |f, x| f.join(x.field()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        debug_assert_eq!(self.len(), other.len());
        let mut acc = Scalar::zero();
        for (x, y) in self.0.iter().zip(&other.0) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            acc = acc + x * y;
        }
        acc
    }

    pub fn checked_dot(&self, other: &Vector) -> Result<Scalar> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), found: other.len() });
        }
        self.field()?.join(other.field()?)?;
        Ok(self.dot(other))
    }

    pub fn add(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(x, y)| x - y).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|x| x * c).collect())
    }

    /// `self + c * other`
    pub fn axpy(&self, c: &Scalar, other: &Vector) -> Vector {
        if c.is_zero() {
            return self.clone();
        }
        Vector(self.0.iter().zip(&other.0).map(|(x, y)| x + &(c * y)).collect())
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|x| -x).collect())
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|x| !x.is_zero())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Scalar::to_f64).collect()
    }

    pub fn select(&self, idx: &[usize]) -> Vector {
        Vector(idx.iter().map(|&i| self.0[i].clone()).collect())
    }

    /// Positive rescaling to a canonical representative of the ray through
    /// `self`: rational vectors become primitive integer vectors; vectors with
    /// surd entries are divided by the absolute value of their first nonzero
    /// entry first. Direction is preserved.
    pub fn normalized_ray(&self) -> Vector {
        let Some(first) = self.first_nonzero() else {
            return self.clone();
        };
        let v = if self.0.iter().all(|x| x.as_rational().is_some()) {
            self.clone()
        } else {
            let scale = self.0[first].abs().checked_recip().expect("nonzero");
            self.scale(&scale)
        };
        if v.0.iter().all(|x| x.as_rational().is_some()) {
            primitive_integer(&v)
        } else {
            v
        }
    }

    /// Canonical representative of the line through `self`: normalized ray
    /// with a positive first nonzero entry.
    pub fn normalized_line(&self) -> Vector {
        match self.first_nonzero() {
            Some(i) if self.0[i].is_negative() => self.neg().normalized_ray(),
            _ => self.normalized_ray(),
        }
    }
}

fn primitive_integer(v: &Vector) -> Vector {
    let rats: Vec<&Rational> = v.0.iter().map(|x| x.as_rational().expect("rational")).collect();
    let mut lcm = BigInt::one();
    for r in &rats {
        lcm = lcm.lcm(r.denom());
    }
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return v.clone();
    }
    let g = g.abs();
    Vector(
        ints.into_iter()
            .map(|x| Scalar::from_rational(Rational::from_integer(x / &g)))
            .collect(),
    )
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ray_normalization_keeps_direction() {
        let v = Vector::new(vec![Scalar::ratio(-2, 3), Scalar::ratio(4, 9), Scalar::zero()]);
        assert_eq!(v.normalized_ray(), Vector::from_ints(&[-3, 2, 0]));
        assert_eq!(v.normalized_line(), Vector::from_ints(&[3, -2, 0]));
    }

    #[test]
    fn surd_rays_normalize_consistently() {
        let r7 = Scalar::sqrt(7).unwrap();
        let v = Vector::from_ints(&[2, -6, 4]);
        let w = v.scale(&r7);
        assert_eq!(w.normalized_ray(), Vector::from_ints(&[1, -3, 2]));
        let mixed = Vector::new(vec![r7.clone(), Scalar::from_int(2)]);
        let scaled = mixed.scale(&Scalar::from_int(5));
        assert_eq!(mixed.normalized_ray(), scaled.normalized_ray());
    }
}
