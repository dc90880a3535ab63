use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Rational = BigRational;

fn small(x: &Rational) -> Option<(i64, i64)> {
    Some((x.numer().to_i64()?, x.denom().to_i64()?))
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `n / d` in lowest terms for `d > 0`.
fn from_wide(n: i128, d: i128) -> Rational {
    let g = gcd_u128(n.unsigned_abs(), d.unsigned_abs()).max(1) as i128;
    Rational::new_raw(BigInt::from(n / g), BigInt::from(d / g))
}

/// Sum of two rationals with word-sized parts, without big-integer gcds.
fn add_small(x: &Rational, y: &Rational) -> Option<Rational> {
    let ((a, b), (c, d)) = (small(x)?, small(y)?);
    let n = a as i128 * d as i128 + c as i128 * b as i128;
    Some(from_wide(n, b as i128 * d as i128))
}

fn mul_small(x: &Rational, y: &Rational) -> Option<Rational> {
    let ((a, b), (c, d)) = (small(x)?, small(y)?);
    Some(from_wide(a as i128 * c as i128, b as i128 * d as i128))
}

/// The field a scalar, vector or cone lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    /// `Q(sqrt d)` for a square-free `d > 1`.
    Quadratic(u32),
}

impl Field {
    /// Smallest field containing both, or `FieldOverflow` when two different
    /// roots would be mixed.
    pub fn join(self, other: Field) -> Result<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (Field::Quadratic(a), Field::Quadratic(b)) if a == b => Ok(self),
            (Field::Quadratic(a), Field::Quadratic(b)) => Err(Error::FieldOverflow { left: a, right: b }),
        }
    }

    pub fn quadratic(d: u32) -> Result<Field> {
        if !is_square_free(d) || d < 2 {
            return Err(Error::InvalidArgument(format!(
                "quadratic field root must be a square-free integer > 1, got {d}"
            )));
        }
        Ok(Field::Quadratic(d))
    }

    pub fn label(self) -> String {
        match self {
            Field::Rational => "Q".to_string(),
            Field::Quadratic(d) => format!("Q(sqrt({d}))"),
        }
    }

    pub fn parse_label(s: &str) -> Option<Field> {
        let s = s.trim();
        if s == "Q" || s.eq_ignore_ascii_case("rational") {
            return Some(Field::Rational);
        }
        let inner = s.strip_prefix("Q(sqrt(")?.strip_suffix("))")?;
        let d: u32 = inner.trim().parse().ok()?;
        Field::quadratic(d).ok()
    }
}

fn is_square_free(d: u32) -> bool {
    let mut p = 2u32;
    while (p as u64) * (p as u64) <= d as u64 {
        if d % (p * p) == 0 {
            return false;
        }
        p += 1;
    }
    true
}

/// An exact number `a + b*sqrt(d)`.
///
/// Values with `b = 0` are always stored in the `Rational` variant, so
/// structural equality is numeric equality. Mixing two different roots in
/// one operation is a field overflow: the `checked_*` methods report it,
/// the operator impls panic on it (vectors and cones validate their field
/// up front so the operators never see mixed roots).
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(Rational),
    Quadratic { a: Rational, b: Rational, d: u32 },
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::Rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(p: i64, q: i64) -> Scalar {
        assert!(q != 0, "zero denominator");
        Scalar::Rational(Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn from_rational(r: Rational) -> Scalar {
        Scalar::Rational(r)
    }

    /// `a + b*sqrt(d)`; collapses to a rational when `b = 0`.
    pub fn quadratic(a: Rational, b: Rational, d: u32) -> Result<Scalar> {
        Field::quadratic(d)?;
        Ok(Self::quad_unchecked(a, b, d))
    }

    fn quad_unchecked(a: Rational, b: Rational, d: u32) -> Scalar {
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quadratic { a, b, d }
        }
    }

    /// `sqrt(d)` for square-free `d > 1`.
    pub fn sqrt(d: u32) -> Result<Scalar> {
        Scalar::quadratic(Rational::zero(), Rational::one(), d)
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Quadratic { d, .. } => Field::Quadratic(*d),
        }
    }

    pub fn rational_part(&self) -> &Rational {
        match self {
            Scalar::Rational(a) | Scalar::Quadratic { a, .. } => a,
        }
    }

    pub fn surd_part(&self) -> Rational {
        match self {
            Scalar::Rational(_) => Rational::zero(),
            Scalar::Quadratic { b, .. } => b.clone(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(a) => Some(a),
            Scalar::Quadratic { .. } => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(a) if a.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(a) if a.is_one())
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Rational(a) => a.cmp(&Rational::zero()),
            Scalar::Quadratic { a, b, d } => {
                let sa = a.cmp(&Rational::zero());
                let sb = b.cmp(&Rational::zero());
                if sa == sb || sa == Ordering::Equal {
                    return sb;
                }
                if sb == Ordering::Equal {
                    return sa;
                }
                // opposite signs: compare a^2 with d b^2
                let lhs = a * a;
                let rhs = b * b * Rational::from_integer(BigInt::from(*d));
                match lhs.cmp(&rhs) {
                    Ordering::Greater => sa,
                    Ordering::Less => sb,
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        match self {
            Scalar::Rational(a) => f(a),
            Scalar::Quadratic { a, b, d } => f(a) + f(b) * (*d as f64).sqrt(),
        }
    }

    fn root(&self, other: &Scalar) -> Result<Option<u32>> {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => Ok(None),
            (Scalar::Quadratic { d, .. }, Scalar::Rational(_))
            | (Scalar::Rational(_), Scalar::Quadratic { d, .. }) => Ok(Some(*d)),
            (Scalar::Quadratic { d: d1, .. }, Scalar::Quadratic { d: d2, .. }) => {
                if d1 == d2 {
                    Ok(Some(*d1))
                } else {
                    Err(Error::FieldOverflow { left: *d1, right: *d2 })
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, other) {
            if x.is_integer() && y.is_integer() {
                return Ok(Scalar::Rational(Rational::from_integer(x.numer() + y.numer())));
            }
            return Ok(Scalar::Rational(add_small(x, y).unwrap_or_else(|| x + y)));
        }
        let d = self.root(other)?.expect("quadratic operand");
        Ok(Self::quad_unchecked(
            self.rational_part() + other.rational_part(),
            self.surd_part() + other.surd_part(),
            d,
        ))
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, other) {
            if x.is_integer() && y.is_integer() {
                return Ok(Scalar::Rational(Rational::from_integer(x.numer() * y.numer())));
            }
            return Ok(Scalar::Rational(mul_small(x, y).unwrap_or_else(|| x * y)));
        }
        let d = self.root(other)?.expect("quadratic operand");
        let (a1, b1) = (self.rational_part(), self.surd_part());
        let (a2, b2) = (other.rational_part(), other.surd_part());
        let dd = Rational::from_integer(BigInt::from(d));
        Ok(Self::quad_unchecked(
            a1 * a2 + &b1 * &b2 * dd,
            a1 * &b2 + &b1 * a2,
            d,
        ))
    }

    pub fn checked_recip(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(a) => {
                if a.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rational(a.recip()))
                }
            }
            Scalar::Quadratic { a, b, d } => {
                // (a - b r) / (a^2 - d b^2); the norm is nonzero because d is not a square
                let norm = a * a - b * b * Rational::from_integer(BigInt::from(*d));
                Ok(Self::quad_unchecked(a / &norm, -(b / &norm), *d))
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.root(other)?;
        self.checked_mul(&other.checked_recip()?)
    }

    /// Canonical text for rationals: `p/q` in lowest terms with the sign on
    /// `p`, or just `p` for integers.
    pub fn rational_to_string(r: &Rational) -> String {
        if r.denom().is_one() {
            r.numer().to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }

    pub fn parse_rational(s: &str) -> Option<Rational> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s, "1"),
        };
        let p: BigInt = p.parse().ok()?;
        let q: BigInt = q.parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(Rational::new(p, q))
    }

    /// JSON form: `"p/q"` for rationals, `{"a":"p/q","b":"p/q","d":7}` otherwise.
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(a) => serde_json::Value::String(Self::rational_to_string(a)),
            Scalar::Quadratic { a, b, d } => serde_json::json!({
                "a": Self::rational_to_string(a),
                "b": Self::rational_to_string(b),
                "d": d,
            }),
        }
    }

    /// Inverse of [`Scalar::to_json`]. Plain JSON integers are accepted as
    /// rationals. The error string says what was expected.
    pub fn from_json(v: &serde_json::Value) -> std::result::Result<Scalar, String> {
        use serde_json::Value;
        match v {
            Value::String(s) => Self::parse_rational(s)
                .map(Scalar::Rational)
                .ok_or_else(|| format!("expected rational \"p/q\", got {s:?}")),
            Value::Number(n) => n
                .as_i64()
                .map(Scalar::from_int)
                .ok_or_else(|| format!("expected integer or rational string, got {n}")),
            Value::Object(map) => {
                let part = |key: &str| -> std::result::Result<Rational, String> {
                    match map.get(key) {
                        Some(Value::String(s)) => Self::parse_rational(s)
                            .ok_or_else(|| format!("field {key:?}: expected rational \"p/q\", got {s:?}")),
                        Some(Value::Number(n)) => n
                            .as_i64()
                            .map(|i| Rational::from_integer(BigInt::from(i)))
                            .ok_or_else(|| format!("field {key:?}: expected integer")),
                        Some(other) => Err(format!("field {key:?}: expected rational, got {other}")),
                        None => Err(format!("missing field {key:?}")),
                    }
                };
                let a = part("a")?;
                let b = part("b")?;
                let d = map
                    .get("d")
                    .and_then(Value::as_u64)
                    .and_then(|d| u32::try_from(d).ok())
                    .ok_or_else(|| "field \"d\": expected positive integer".to_string())?;
                Scalar::quadratic(a, b, d).map_err(|e| e.to_string())
            }
            other => Err(format!("expected scalar, got {other}")),
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x == y,
            (Scalar::Quadratic { a: a1, b: b1, d: d1 }, Scalar::Quadratic { a: a2, b: b2, d: d2 }) => {
                d1 == d2 && a1 == a2 && b1 == b2
            }
            _ => false,
        }
    }
}

impl Eq for Scalar {}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Rational(a) => {
                0u8.hash(state);
                a.hash(state);
            }
            Scalar::Quadratic { a, b, d } => {
                1u8.hash(state);
                a.hash(state);
                b.hash(state);
                d.hash(state);
            }
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order. Panics when the operands live in different quadratic fields.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, other) {
            return x.cmp(y);
        }
        (self - other).signum()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(a) => write!(f, "{}", Scalar::rational_to_string(a)),
            Scalar::Quadratic { a, b, d } => write!(
                f,
                "{} + {}*sqrt({d})",
                Scalar::rational_to_string(a),
                Scalar::rational_to_string(b)
            ),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Scalar::from_json(&v).map_err(D::Error::custom)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::Rational(r)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Quadratic { a, b, d } => Scalar::Quadratic { a: -a, b: -b, d: *d },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_sized_fast_paths_match_big_arithmetic() {
        let vals = [(3, 4), (-5, 6), (7, 1), (0, 1), (i64::MAX, 3), (-1, i64::MAX), (i64::MIN + 1, 2)];
        for &(a, b) in &vals {
            for &(c, d) in &vals {
                let x = Rational::new(BigInt::from(a), BigInt::from(b));
                let y = Rational::new(BigInt::from(c), BigInt::from(d));
                assert_eq!(add_small(&x, &y).unwrap(), &x + &y);
                assert_eq!(mul_small(&x, &y).unwrap(), &x * &y);
            }
        }
    }

    fn q7(a: (i64, i64), b: (i64, i64)) -> Scalar {
        Scalar::quadratic(
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
            7,
        )
        .unwrap()
    }

    #[test]
    fn rationals_are_normalized() {
        let x = Scalar::ratio(6, -4);
        assert_eq!(x.to_json(), serde_json::json!("-3/2"));
        assert_eq!(Scalar::ratio(0, -5), Scalar::zero());
        assert_eq!(Scalar::ratio(4, 2).to_json(), serde_json::json!("2"));
    }

    #[test]
    fn quadratic_arithmetic_is_exact() {
        let r7 = Scalar::sqrt(7).unwrap();
        assert_eq!(&r7 * &r7, Scalar::from_int(7));
        // (2 + sqrt7)(2 - sqrt7) = -3
        let p = q7((2, 1), (1, 1));
        let m = q7((2, 1), (-1, 1));
        assert_eq!(&p * &m, Scalar::from_int(-3));
        let inv = p.checked_recip().unwrap();
        assert_eq!(&inv * &p, Scalar::one());
        assert_eq!((&p - &p).field(), Field::Rational);
    }

    #[test]
    fn quadratic_sign() {
        // 5 - sqrt7 > 0, 2 - sqrt7 < 0, -3 + 2 sqrt2 < 0 (since 8 < 9)
        assert!(q7((5, 1), (-1, 1)).is_positive());
        assert!(q7((2, 1), (-1, 1)).is_negative());
        let x = Scalar::quadratic(Rational::from_integer((-3).into()), Rational::from_integer(2.into()), 2).unwrap();
        assert!(x.is_negative());
        assert!((5.0 - 7f64.sqrt() - q7((5, 1), (-1, 1)).to_f64()).abs() < 1e-15);
    }

    #[test]
    fn mixed_roots_overflow() {
        let a = Scalar::sqrt(7).unwrap();
        let b = Scalar::sqrt(2).unwrap();
        assert!(matches!(a.checked_add(&b), Err(Error::FieldOverflow { .. })));
        assert!(matches!(a.checked_mul(&b), Err(Error::FieldOverflow { .. })));
        assert!(Field::Quadratic(7).join(Field::Quadratic(2)).is_err());
    }

    #[test]
    fn rejects_non_square_free_roots() {
        assert!(Scalar::sqrt(8).is_err());
        assert!(Scalar::sqrt(1).is_err());
        assert!(Scalar::sqrt(4).is_err());
    }

    #[test]
    fn json_round_trip() {
        let x = q7((-1, 3), (2, 5));
        let v = x.to_json();
        assert_eq!(v, serde_json::json!({"a": "-1/3", "b": "2/5", "d": 7}));
        assert_eq!(Scalar::from_json(&v).unwrap(), x);
        assert_eq!(Scalar::from_json(&serde_json::json!(3)).unwrap(), Scalar::from_int(3));
        assert!(Scalar::from_json(&serde_json::json!("1/0")).is_err());
    }

    #[test]
    fn field_labels() {
        assert_eq!(Field::parse_label("Q(sqrt(7))"), Some(Field::Quadratic(7)));
        assert_eq!(Field::parse_label(&Field::Rational.label()), Some(Field::Rational));
        assert_eq!(Field::parse_label("Q(sqrt(9))"), None);
    }
}
