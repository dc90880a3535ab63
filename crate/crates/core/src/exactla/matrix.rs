use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::scalar::{Field, Rational, Scalar};
use super::vector::Vector;
use crate::error::{Error, Result};

/// Dense row-major matrix with exact entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: Vec<Vector>,
    cols: usize,
}

impl Matrix {
    pub fn new(rows: Vec<Vector>, cols: usize) -> Result<Matrix> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
        }
        let m = Matrix { rows, cols };
        m.field()?;
        Ok(m)
    }

    pub fn empty(cols: usize) -> Matrix {
        Matrix { rows: Vec::new(), cols }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix { rows: (0..n).map(|i| Vector::unit(n, i)).collect(), cols: n }
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows: vec![Vector::zeros(cols); rows], cols }
    }

    pub fn from_ints(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::new(rows.iter().map(|r| Vector::from_ints(r)).collect(), cols).expect("rectangular")
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn col_count(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.rows
    }

    pub fn row(&self, i: usize) -> &Vector {
        &self.rows[i]
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn field(&self) -> Result<Field> {
        self.rows.iter().try_fold(Field::Rational, |f, r| f.join(r.field()?))
    }

    pub fn mul_vec(&self, x: &Vector) -> Vector {
        self.rows.iter().map(|r| r.dot(x)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let rows = (0..self.cols)
            .map(|j| self.rows.iter().map(|r| r[j].clone()).collect())
            .collect();
        Matrix { rows, cols: self.rows.len() }
    }
}

/// Result of exact Gauss–Jordan elimination.
#[derive(Clone, Debug)]
pub struct RowReduction {
    pub rank: usize,
    /// Nonzero rows of the reduced row echelon form.
    pub rowspace: Matrix,
    /// One basis vector per free column; each is a primitive integer vector
    /// (after clearing denominators) with a positive leading entry.
    pub nullspace: Matrix,
    pub pivots: Vec<usize>,
}

/// Clears denominators and divides out the content. `None` for surd entries.
fn integer_row(r: &Vector) -> Option<Vec<BigInt>> {
    let mut lcm = BigInt::one();
    for x in r.iter() {
        lcm = lcm.lcm(x.as_rational()?.denom());
    }
    let mut row: Vec<BigInt> = r
        .iter()
        .map(|x| {
            let q = x.as_rational().expect("checked above");
            q.numer() * (&lcm / q.denom())
        })
        .collect();
    make_primitive(&mut row);
    Some(row)
}

fn make_primitive(row: &mut [BigInt]) {
    if let Some(small) = row.iter().map(|x| x.to_i64()).collect::<Option<Vec<i64>>>() {
        let g = small.iter().fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()));
        if g > i64::MAX as u64 {
            row.iter_mut().for_each(|x| *x = x.signum());
        } else if g > 1 {
            for (x, s) in row.iter_mut().zip(small) {
                *x = BigInt::from(s / g as i64);
            }
        }
        return;
    }
    let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Fraction-free Gauss-Jordan on integer rows, normalized at the end.
fn rref_integer(mut m: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r);
        let (pivot_row, tail) = tail.split_first_mut().expect("row r exists");
        for row in head.iter_mut().chain(tail.iter_mut()) {
            if row[c].is_zero() {
                continue;
            }
            let g = row[c].gcd(&pivot_row[c]);
            let a = &pivot_row[c] / &g;
            let b = &row[c] / &g;
            for j in 0..cols {
                row[j] = &row[j] * &a - &pivot_row[j] * &b;
            }
            make_primitive(row);
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    let rows = m
        .into_iter()
        .zip(&pivots)
        .map(|(row, &c)| {
            let p = row[c].clone();
            row.into_iter().map(|x| Scalar::from_rational(Rational::new(x, p.clone()))).collect()
        })
        .collect();
    (rows, pivots)
}

/// Reduced row echelon form of the given rows (all of length `cols`).
pub fn rref(rows: &[Vector], cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let ints: Option<Vec<Vec<BigInt>>> = rows.iter().filter(|r| !r.is_zero()).map(integer_row).collect();
    if let Some(m) = ints {
        return rref_integer(m, cols);
    }
    rref_field(rows, cols)
}

fn rref_field(rows: &[Vector], cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut m: Vec<Vector> = rows.iter().filter(|r| !r.is_zero()).cloned().collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].checked_recip().expect("nonzero pivot");
        m[r] = m[r].scale(&inv);
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = -&m[i][c];
                m[i] = m[i].axpy(&f, &m[r]);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn row_reduce(m: &Matrix) -> RowReduction {
    let cols = m.col_count();
    let (reduced, pivots) = rref(m.rows(), cols);
    let rank = pivots.len();
    let mut null = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = Vector::unit(cols, free).into_entries();
        for (row, &p) in reduced.iter().zip(&pivots) {
            v[p] = -&row[free];
        }
        null.push(Vector::new(v).normalized_line());
    }
    RowReduction {
        rank,
        rowspace: Matrix { rows: reduced, cols },
        nullspace: Matrix { rows: null, cols },
        pivots,
    }
}

pub fn rank(rows: &[Vector], cols: usize) -> usize {
    rref(rows, cols).1.len()
}

const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    r
}

fn int_mod(x: &BigInt) -> u64 {
    if let Some(v) = x.to_i64() {
        return v.rem_euclid(P as i64) as u64;
    }
    let m = BigInt::from(P);
    let r = ((x % &m) + &m) % &m;
    r.to_u64().expect("reduced below P")
}

/// Rank over `Z/P`; `None` if an entry is irrational or has a denominator
/// divisible by `P`.
fn rank_mod_p(rows: &[Vector], cols: usize) -> Option<usize> {
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    let q = x.as_rational()?;
                    let den = int_mod(q.denom());
                    (den != 0).then(|| mul_mod(int_mod(q.numer()), pow_mod(den, P - 2)))
                })
                .collect::<Option<Vec<u64>>>()
        })
        .collect::<Option<_>>()?;
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        let inv = pow_mod(m[r][c], P - 2);
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let f = mul_mod(m[i][c], inv);
                for j in c..cols {
                    let t = mul_mod(f, m[r][j]);
                    m[i][j] = (m[i][j] + P - t) % P;
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    Some(r)
}

/// `rank(rows) == target` for rows already known to have rank at most
/// `target`. Rank modulo a prime never exceeds the rank over `Q`, so it
/// settles the question whenever it reaches the target.
pub fn reaches_rank(rows: &[Vector], cols: usize, target: usize) -> bool {
    if rows.len() < target {
        return false;
    }
    if rank_mod_p(rows, cols) == Some(target) {
        return true;
    }
    rank(rows, cols) == target
}

/// Basis of `span(vectors)` in reduced row echelon form (canonical for the
/// subspace). All vectors must have length `n`.
pub fn span_basis(vectors: &[Vector], n: usize) -> Result<Matrix> {
    for v in vectors {
        if v.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: v.len() });
        }
    }
    let (rows, _) = rref(vectors, n);
    Matrix::new(rows, n)
}

/// Basis of the orthogonal complement of `span(vectors)`.
pub fn orthogonal_complement(vectors: &[Vector], n: usize) -> Matrix {
    if vectors.is_empty() {
        return Matrix::identity(n);
    }
    let m = Matrix { rows: vectors.to_vec(), cols: n };
    row_reduce(&m).nullspace
}

/// Orthogonal projection of `x` onto the span of the rows of `basis`
/// (assumed independent), via the exact Gram system.
pub fn project_onto_span(x: &Vector, basis: &Matrix) -> Result<Vector> {
    let n = x.len();
    if basis.col_count() != n {
        return Err(Error::DimensionMismatch { expected: basis.col_count(), found: n });
    }
    x.field()?.join(basis.field()?)?;
    let k = basis.row_count();
    if k == 0 {
        return Ok(Vector::zeros(n));
    }
    // augmented Gram system [G | Bx]
    let aug: Vec<Vector> = (0..k)
        .map(|i| {
            let mut row: Vec<Scalar> = (0..k).map(|j| basis.row(i).dot(basis.row(j))).collect();
            row.push(basis.row(i).dot(x));
            Vector::new(row)
        })
        .collect();
    let (red, pivots) = rref(&aug, k + 1);
    if pivots.len() != k || pivots.contains(&k) {
        return Err(Error::InvalidArgument("projection basis is not linearly independent".into()));
    }
    let mut out = Vector::zeros(n);
    for (i, row) in red.iter().enumerate() {
        out = out.axpy(&row[k], basis.row(i));
    }
    Ok(out)
}

/// Coordinates of `x` with respect to an RREF basis (`rows`, `pivots`):
/// `x = sum c_i rows_i` forces `c_i = x[pivot_i]`. Returns `None` when `x`
/// is not in the span.
pub fn rref_coordinates(x: &Vector, rows: &[Vector], pivots: &[usize]) -> Option<Vector> {
    let coords: Vector = pivots.iter().map(|&p| x[p].clone()).collect();
    let mut back = Vector::zeros(x.len());
    for (c, r) in coords.iter().zip(rows) {
        back = back.axpy(c, r);
    }
    (back == *x).then_some(coords)
}

/// Reduce `x` modulo the span of an RREF basis: zero out every pivot
/// coordinate. The result is the same for every element of `x + span`.
pub fn reduce_modulo(x: &Vector, rows: &[Vector], pivots: &[usize]) -> Vector {
    let mut out = x.clone();
    for (r, &p) in rows.iter().zip(pivots) {
        if !out[p].is_zero() {
            let f = -&out[p];
            out = out.axpy(&f, r);
        }
    }
    out
}
