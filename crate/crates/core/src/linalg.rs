//! Dense exact linear algebra.
//!
//! [`Matrix`] is generic over a [`Scalar`]; the two instances used in the
//! crate are [`RingMatrix`] (entries in the Laurent ring) and [`QMatrix`]
//! (entries in `Q`). Field-level algorithms (rank, kernels, subspaces,
//! intertwiners) only exist for `QMatrix`.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::ring::{BigRational, LaurentPoly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("subspace is not invariant under the operator")]
    NotInvariant,
    #[error("matrix is singular")]
    Singular,
    #[error("characteristic polynomial coefficient is not divisible by {0}")]
    InexactDivision(i64),
}

fn mismatch(what: impl Into<String>) -> LinalgError {
    LinalgError::DimensionMismatch(what.into())
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type RingMatrix = Matrix<LaurentPoly>;
pub type QMatrix = Matrix<BigRational>;

impl<T: Scalar> Matrix<T> {
    pub fn new(rows: usize, cols: usize, data: Vec<T>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(mismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(mismatch("ragged rows"));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Result<Self, LinalgError> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(mismatch("column length"));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| {
            columns[c][r].clone()
        }))
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, value: T) {
        self.data[r * self.cols + c] = value;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<T> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn map<U: Scalar>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Scalar, E>(&self, f: impl FnMut(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, LinalgError> {
        if self.cols != rhs.rows {
            return Err(mismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = out.data[idx].add_ref(&a.mul_ref(b));
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self, LinalgError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(mismatch("entrywise operation on different shapes"));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.zip_with(rhs, T::add_ref)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, LinalgError> {
        self.zip_with(rhs, T::sub_ref)
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| x.mul_ref(k))
    }

    /// `self + k·I`.
    pub fn add_scalar(&self, k: &T) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = out.get(i, i).add_ref(k);
            out.set(i, i, v);
        }
        out
    }

    pub fn trace(&self) -> T {
        (0..self.rows.min(self.cols)).fold(T::zero(), |acc, i| acc.add_ref(self.get(i, i)))
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(T::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    /// Characteristic polynomial `det(xI − A)` by Faddeev–LeVerrier,
    /// coefficients constant-term first, together with the adjugate-like
    /// matrix `M_d` satisfying `A·M_d = −c_0·I`.
    pub fn charpoly_with_adjugate(&self) -> Result<(Vec<T>, Matrix<T>), LinalgError> {
        if !self.is_square() {
            return Err(mismatch("characteristic polynomial of a non-square matrix"));
        }
        let d = self.rows;
        let mut coeffs = vec![T::zero(); d + 1];
        coeffs[d] = T::one();
        // M_1 = I, c_{d-1} = -tr(A); M_k = A M_{k-1} + c_{d-k+1} I.
        let mut m = Self::identity(d);
        for k in 1..=d {
            let am = self.try_mul(&m)?;
            let ck = (-am.trace())
                .div_exact_int(k as i64)
                .ok_or(LinalgError::InexactDivision(k as i64))?;
            coeffs[d - k] = ck.clone();
            if k < d {
                m = am.add_scalar(&ck);
            }
        }
        Ok((coeffs, m))
    }

    pub fn charpoly(&self) -> Result<Vec<T>, LinalgError> {
        Ok(self.charpoly_with_adjugate()?.0)
    }

    pub fn det(&self) -> Result<T, LinalgError> {
        let coeffs = self.charpoly()?;
        let c0 = coeffs[0].clone();
        Ok(if self.rows.is_multiple_of(2) { c0 } else { -c0 })
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl RingMatrix {
    /// Inverse over the Laurent ring, defined when the determinant is a unit.
    pub fn inverse_over_ring(&self) -> Result<Self, LinalgError> {
        let (coeffs, m) = self.charpoly_with_adjugate()?;
        let c0 = &coeffs[0];
        if !c0.is_unit() {
            return Err(LinalgError::Singular);
        }
        let minus_c0 = -c0;
        Ok(m.map(|x| x.div_exact(&minus_c0).expect("unit divides everything")))
    }

    pub fn eval(
        &self,
        s0: &BigRational,
        t0: &BigRational,
    ) -> Result<QMatrix, crate::ring::RingError> {
        self.try_map(|x| x.eval(s0, t0))
    }
}

impl<'a, T: Scalar> Mul<&'a Matrix<T>> for &'a Matrix<T> {
    type Output = Matrix<T>;

    /// Panics on shape mismatch; use [`Matrix::try_mul`] to get an error.
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        self.try_mul(rhs).expect("matrix shapes")
    }
}

impl<T: Scalar> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(ToString::to_string).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(0);
        for r in 0..self.rows {
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{:>width$}", cells[r * self.cols + c])?;
            }
            f.write_str("]\n")?;
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{}\n{}", self.rows, self.cols, self)
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    rows: usize,
    cols: usize,
    entries: Vec<String>,
}

/// JSON form `{"rows":r,"cols":c,"entries":[...]}` with entries as strings.
impl<T: Scalar> Serialize for Matrix<T> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        MatrixJson {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de, T> Deserialize<'de> for Matrix<T>
where
    T: Scalar + std::str::FromStr,
    T::Err: fmt::Display,
{
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        let data = raw
            .entries
            .iter()
            .map(|e| e.parse::<T>().map_err(D::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Matrix::new(raw.rows, raw.cols, data).map_err(D::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Field-level algebra over Q.

fn lcm_of_denominators(row: &[BigRational]) -> BigInt {
    row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Integer row echelon form produced by fraction-free (Bareiss) elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    /// Product of the row scalings applied to clear denominators.
    scale: BigRational,
    swaps: usize,
}

fn bareiss(a: &QMatrix) -> Echelon {
    let mut scale = BigRational::one();
    let mut rows: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|r| {
            let row = a.row(r);
            let l = lcm_of_denominators(row);
            scale *= BigRational::from_integer(l.clone());
            row.iter()
                .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len())
            .filter(|&i| !rows[i][c].is_zero())
            .min_by_key(|&i| rows[i][c].bits())
        else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c..pivot_row.len() {
                let v = &row[j] * &pivot - &factor * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = v / &prev;
            }
            // Columns left of c are already zero in rows below the pivot.
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    Echelon {
        rows,
        pivots,
        scale,
        swaps,
    }
}

/// Reduced row echelon form over Q: `(rows, pivot columns)`; only the
/// nonzero rows are returned.
fn rref(a: &QMatrix) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let ech = bareiss(a);
    let k = ech.pivots.len();
    let mut rows: Vec<Vec<BigRational>> = ech.rows[..k]
        .iter()
        .zip(&ech.pivots)
        .map(|(row, &p)| {
            let lead = BigRational::from_integer(row[p].clone());
            row.iter()
                .map(|x| BigRational::from_integer(x.clone()) / &lead)
                .collect()
        })
        .collect();
    for i in (0..k).rev() {
        let p = ech.pivots[i];
        let (above, rest) = rows.split_at_mut(i);
        let pivot_row = &rest[0];
        for row in above.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    (rows, ech.pivots)
}

pub fn q_rank(a: &QMatrix) -> usize {
    bareiss(a).pivots.len()
}

pub fn q_det(a: &QMatrix) -> Result<BigRational, LinalgError> {
    if !a.is_square() {
        return Err(mismatch("determinant of a non-square matrix"));
    }
    let d = a.rows();
    if d == 0 {
        return Ok(BigRational::one());
    }
    let ech = bareiss(a);
    if ech.pivots.len() < d {
        return Ok(BigRational::zero());
    }
    let mut det = BigRational::from_integer(ech.rows[d - 1][d - 1].clone()) / ech.scale;
    if ech.swaps % 2 == 1 {
        det = -det;
    }
    Ok(det)
}

pub fn q_kernel(a: &QMatrix) -> Subspace {
    let (rows, pivots) = rref(a);
    let free: Vec<usize> = (0..a.cols()).filter(|c| !pivots.contains(c)).collect();
    let vectors: Vec<Vec<BigRational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); a.cols()];
            v[f] = BigRational::one();
            for (row, &p) in rows.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect();
    Subspace::span(a.cols(), vectors)
}

pub fn q_column_space(a: &QMatrix) -> Subspace {
    let (rows, pivots) = rref(&a.transpose());
    Subspace {
        ambient: a.rows(),
        basis: rows,
        pivots,
    }
}

pub fn q_inverse(a: &QMatrix) -> Result<QMatrix, LinalgError> {
    if !a.is_square() {
        return Err(mismatch("inverse of a non-square matrix"));
    }
    let d = a.rows();
    let aug = QMatrix::from_fn(d, 2 * d, |r, c| {
        if c < d {
            a.get(r, c).clone()
        } else if c - d == r {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    let (rows, pivots) = rref(&aug);
    if pivots.len() < d || pivots[d - 1] >= d {
        return Err(LinalgError::Singular);
    }
    Ok(QMatrix::from_fn(d, d, |r, c| rows[r][d + c].clone()))
}

/// A linear subspace of `Q^ambient`, stored as its reduced row echelon
/// basis so that equal subspaces compare equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, (0..ambient).map(|i| unit_vector(ambient, i)))
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<BigRational>>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<BigRational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical representative of `v` modulo the subspace: every pivot
    /// coordinate is cleared.
    pub fn reduce(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let mut v = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let f = v[p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Adds `v` to the span, keeping the basis in reduced echelon form.
    /// Returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<BigRational>) -> bool {
        let mut v = self.reduce(&v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let lead = v[p].clone();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x /= &lead;
            }
        }
        for row in self.basis.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(&v) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        true
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut out = self.clone();
        for v in &other.basis {
            out.insert(v.clone());
        }
        out
    }

    pub fn is_invariant_under(&self, op: &QMatrix) -> bool {
        self.basis.iter().all(|v| self.contains(&op.apply(v)))
    }

    /// Non-pivot coordinates; their unit vectors span a complement.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| self.pivots.binary_search(c).is_err())
            .collect()
    }
}

pub fn unit_vector(dim: usize, i: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); dim];
    v[i] = BigRational::one();
    v
}

fn check_square_ops(ambient: usize, ops: &[QMatrix]) -> Result<(), LinalgError> {
    match ops
        .iter()
        .find(|op| op.rows() != ambient || op.cols() != ambient)
    {
        Some(op) => Err(mismatch(format!(
            "{}x{} operator on a {ambient}-dimensional space",
            op.rows(),
            op.cols()
        ))),
        None => Ok(()),
    }
}

/// Smallest subspace containing `seed` and mapped into itself by every
/// operator. Saturates a worklist of spanning vectors.
pub fn invariant_closure(seed: &Subspace, ops: &[QMatrix]) -> Result<Subspace, LinalgError> {
    check_square_ops(seed.ambient(), ops)?;
    let mut w = seed.clone();
    let mut pending: Vec<Vec<BigRational>> = seed.basis().to_vec();
    while let Some(v) = pending.pop() {
        for op in ops {
            let image = op.apply(&v);
            if w.insert(image.clone()) {
                pending.push(image);
            }
        }
    }
    Ok(w)
}

/// Matrix of the operator induced on `ambient / w`, in the basis given by
/// the images of the unit vectors at [`Subspace::complement_coordinates`].
pub fn quotient_action(op: &QMatrix, w: &Subspace) -> Result<QMatrix, LinalgError> {
    check_square_ops(w.ambient(), std::slice::from_ref(op))?;
    if !w.is_invariant_under(op) {
        return Err(LinalgError::NotInvariant);
    }
    let free = w.complement_coordinates();
    let mut out = QMatrix::zeros(free.len(), free.len());
    for (c, &f) in free.iter().enumerate() {
        let image = w.reduce(&op.column(f));
        for (r, &g) in free.iter().enumerate() {
            out.set(r, c, image[g].clone());
        }
    }
    Ok(out)
}

/// Writes vectors in terms of a fixed linearly independent family.
#[derive(Debug, Clone)]
pub struct SpanSolver {
    family: QMatrix,
    rows: Vec<usize>,
    inverse: QMatrix,
}

impl SpanSolver {
    /// Fails with [`LinalgError::Singular`] if the family is dependent.
    pub fn new(ambient: usize, family: &[Vec<BigRational>]) -> Result<Self, LinalgError> {
        let family = QMatrix::from_columns(ambient, family)?;
        // Pivot columns of the transpose are independent rows of the family.
        let (_, rows) = rref(&family.transpose());
        if rows.len() < family.cols() {
            return Err(LinalgError::Singular);
        }
        let square = QMatrix::from_fn(rows.len(), rows.len(), |r, c| {
            family.get(rows[r], c).clone()
        });
        let inverse = q_inverse(&square)?;
        Ok(Self {
            family,
            rows,
            inverse,
        })
    }

    pub fn len(&self) -> usize {
        self.family.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.family.cols() == 0
    }

    /// Coordinates `c` with `Σ c_k family_k = v`, or `None` if `v` is not
    /// in the span.
    pub fn coordinates(&self, v: &[BigRational]) -> Option<Vec<BigRational>> {
        let picked: Vec<BigRational> = self.rows.iter().map(|&r| v[r].clone()).collect();
        let coords = self.inverse.apply(&picked);
        (self.family.apply(&coords) == v).then_some(coords)
    }
}

/// Maximum number of random solution-space combinations tried before
/// reporting that no invertible intertwiner exists.
pub const INTERTWINER_ATTEMPTS: u64 = 20;

/// Searches for an invertible `T` with `T·A_k = B_k·T` for every `k`.
pub fn solve_intertwiner(
    gens_a: &[QMatrix],
    gens_b: &[QMatrix],
) -> Result<Option<QMatrix>, LinalgError> {
    if gens_a.len() != gens_b.len() {
        return Err(mismatch("generator lists of different lengths"));
    }
    let Some(first) = gens_a.first().or(gens_b.first()) else {
        return Err(mismatch("no generators"));
    };
    let d = first.rows();
    check_square_ops(d, gens_a)?;
    check_square_ops(d, gens_b)?;
    // Unknown T[r][m] sits in column r*d + m.
    let mut equations = Vec::with_capacity(gens_a.len() * d * d);
    for (a, b) in gens_a.iter().zip(gens_b) {
        for r in 0..d {
            for c in 0..d {
                let mut eq = vec![BigRational::zero(); d * d];
                for m in 0..d {
                    eq[r * d + m] += a.get(m, c);
                    eq[m * d + c] -= b.get(r, m);
                }
                equations.push(eq);
            }
        }
    }
    let system = QMatrix::from_rows(equations)?;
    let solutions = q_kernel(&system);
    if solutions.dim() == 0 {
        return Ok(None);
    }
    for seed in 0..INTERTWINER_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut flat = vec![BigRational::zero(); d * d];
        for v in solutions.basis() {
            let k = BigRational::from_integer(BigInt::from(rng.gen_range(-9i64..=9)));
            if k.is_zero() {
                continue;
            }
            for (x, y) in flat.iter_mut().zip(v) {
                *x += &k * y;
            }
        }
        let t = QMatrix::new(d, d, flat)?;
        if q_rank(&t) == d {
            return Ok(Some(t));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational;
    use proptest::prelude::*;

    fn qm(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational(x, 1)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn diag(xs: &[i64]) -> QMatrix {
        QMatrix::from_fn(xs.len(), xs.len(), |r, c| {
            if r == c {
                rational(xs[r], 1)
            } else {
                rational(0, 1)
            }
        })
    }

    #[test]
    fn identity_and_mismatch() {
        let m = qm(&[
            &[1, 2, 3],
            &[4, 5, 6],
            &[7, 8, 10],
            &[0, 1, 0],
            &[2, 2, 2],
            &[1, 1, 1],
        ]);
        assert_eq!(&QMatrix::identity(6) * &m, m);
        assert!(matches!(
            m.try_mul(&m),
            Err(LinalgError::DimensionMismatch(_))
        ));
        assert!(QMatrix::new(2, 2, vec![rational(1, 1)]).is_err());
    }

    #[test]
    fn ranks_and_kernels() {
        assert_eq!(q_rank(&QMatrix::identity(5)), 5);
        assert_eq!(q_kernel(&QMatrix::zeros(3, 3)), Subspace::full(3));
        assert_eq!(q_rank(&qm(&[&[1, 2, 3], &[2, 4, 6]])), 1);
        let k = q_kernel(&qm(&[&[1, 2, 3], &[2, 4, 6]]));
        assert_eq!(k.dim(), 2);
        assert_eq!(q_column_space(&qm(&[&[1, 2], &[2, 4]])).dim(), 1);
    }

    #[test]
    fn inverse_and_det() {
        let a = qm(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let inv = q_inverse(&a).unwrap();
        assert!((&a * &inv).is_identity());
        assert_eq!(q_det(&a).unwrap(), rational(18, 1));
        assert_eq!(a.det().unwrap(), rational(18, 1));
        assert_eq!(
            q_inverse(&qm(&[&[1, 2], &[2, 4]])),
            Err(LinalgError::Singular)
        );
        let half = a.scale(&rational(1, 2));
        assert_eq!(q_det(&half).unwrap(), rational(18, 8));
        let swapped = qm(&[&[0, 1], &[1, 0]]);
        assert_eq!(q_det(&swapped).unwrap(), rational(-1, 1));
    }

    #[test]
    fn ring_inverse() {
        let q = LaurentPoly::q();
        let t = LaurentPoly::t();
        let m = RingMatrix::from_rows(vec![
            vec![q.clone(), LaurentPoly::constant(1) - q.clone()],
            vec![LaurentPoly::zero(), t.clone()],
        ])
        .unwrap();
        let inv = m.inverse_over_ring().unwrap();
        assert!((&m * &inv).is_identity());
        let singular = RingMatrix::from_rows(vec![vec![LaurentPoly::constant(2)]]).unwrap();
        assert_eq!(singular.inverse_over_ring(), Err(LinalgError::Singular));
    }

    #[test]
    fn closure_examples() {
        let shift = qm(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let zero = Subspace::zero(3);
        assert_eq!(
            invariant_closure(&zero, std::slice::from_ref(&shift)).unwrap(),
            zero
        );
        let full = Subspace::full(3);
        assert_eq!(
            invariant_closure(&full, std::slice::from_ref(&shift)).unwrap(),
            full
        );
        // e1 -> e2 -> e3 under the cyclic shift.
        let e1 = Subspace::span(3, [unit_vector(3, 0)]);
        assert_eq!(
            invariant_closure(&e1, std::slice::from_ref(&shift)).unwrap(),
            full
        );
        // span(e1 + e2 + e3) is fixed by the shift.
        let ones = Subspace::span(3, [vec![rational(1, 1); 3]]);
        assert_eq!(invariant_closure(&ones, &[shift]).unwrap(), ones);
        assert!(invariant_closure(&ones, &[QMatrix::identity(2)]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let e1 = Subspace::span(2, [unit_vector(2, 0)]);
        assert_eq!(quotient_action(&diag(&[2, 3]), &e1).unwrap(), diag(&[3]));
        assert_eq!(
            quotient_action(&QMatrix::identity(2), &e1).unwrap(),
            QMatrix::identity(1)
        );
        let op = qm(&[&[1, 2], &[3, 4]]);
        assert_eq!(quotient_action(&op, &Subspace::zero(2)).unwrap(), op);
        assert_eq!(quotient_action(&op, &e1), Err(LinalgError::NotInvariant));
    }

    #[test]
    fn intertwiner_examples() {
        let t = solve_intertwiner(&[QMatrix::identity(3)], &[QMatrix::identity(3)])
            .unwrap()
            .unwrap();
        assert_eq!(q_rank(&t), 3);

        let a = diag(&[1, 2]);
        let b = diag(&[2, 1]);
        let t = solve_intertwiner(std::slice::from_ref(&a), std::slice::from_ref(&b))
            .unwrap()
            .unwrap();
        assert_eq!(&t * &a, &b * &t);
        assert!(t.get(0, 0).is_zero() && t.get(1, 1).is_zero());
        assert_eq!(q_rank(&t), 2);

        assert_eq!(solve_intertwiner(&[a], &[diag(&[1, 3])]).unwrap(), None);
        assert!(solve_intertwiner(&[diag(&[1])], &[diag(&[1, 2])]).is_err());
    }

    #[test]
    fn span_solver() {
        let fam = vec![
            vec![rational(1, 1), rational(1, 1), rational(0, 1)],
            vec![rational(0, 1), rational(1, 1), rational(2, 1)],
        ];
        let solver = SpanSolver::new(3, &fam).unwrap();
        let v = vec![rational(2, 1), rational(5, 1), rational(6, 1)];
        assert_eq!(
            solver.coordinates(&v),
            Some(vec![rational(2, 1), rational(3, 1)])
        );
        assert_eq!(
            solver.coordinates(&[rational(1, 1), rational(0, 1), rational(0, 1)]),
            None
        );
        let dependent = vec![fam[0].clone(), fam[0].clone()];
        assert!(SpanSolver::new(3, &dependent).is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = qm(&[&[1, -2], &[0, 7]]).scale(&rational(1, 3));
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"rows":2,"cols":2,"entries":["1/3","-2/3","0","7/3"]}"#
        );
        assert_eq!(serde_json::from_str::<QMatrix>(&json).unwrap(), m);
    }

    fn arb_qmatrix(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
        prop::collection::vec((-5i64..=5, 1i64..=3), rows * cols).prop_map(move |xs| {
            QMatrix::new(
                rows,
                cols,
                xs.into_iter().map(|(n, d)| rational(n, d)).collect(),
            )
            .unwrap()
        })
    }

    /// Matrices with a planted rank deficiency.
    fn arb_low_rank(rows: usize, cols: usize) -> impl Strategy<Value = QMatrix> {
        (arb_qmatrix(rows, 2), arb_qmatrix(2, cols)).prop_map(|(a, b)| &a * &b)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn associativity(a in arb_qmatrix(4, 4), b in arb_qmatrix(4, 4), c in arb_qmatrix(4, 4)) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        }

        #[test]
        fn rank_nullity(a in arb_qmatrix(3, 5), b in arb_low_rank(4, 5)) {
            for m in [a, b] {
                let k = q_kernel(&m);
                prop_assert_eq!(q_rank(&m) + k.dim(), m.cols());
                for v in k.basis() {
                    prop_assert!(m.apply(v).iter().all(Zero::is_zero));
                }
            }
        }

        #[test]
        fn det_routes_agree(a in arb_qmatrix(4, 4)) {
            prop_assert_eq!(q_det(&a).unwrap(), a.det().unwrap());
        }

        #[test]
        fn closure_is_invariant(v in arb_qmatrix(4, 1), a in arb_low_rank(4, 4), b in arb_qmatrix(4, 4)) {
            let seed = Subspace::span(4, [v.column(0)]);
            let w = invariant_closure(&seed, &[a.clone(), b.clone()]).unwrap();
            prop_assert!(w.contains_subspace(&seed));
            prop_assert!(w.is_invariant_under(&a) && w.is_invariant_under(&b));
        }

        #[test]
        fn quotient_action_is_multiplicative(v in arb_qmatrix(4, 1), a in arb_low_rank(4, 4), b in arb_qmatrix(4, 4)) {
            let w = invariant_closure(&Subspace::span(4, [v.column(0)]), &[a.clone(), b.clone()]).unwrap();
            let qa = quotient_action(&a, &w).unwrap();
            let qb = quotient_action(&b, &w).unwrap();
            prop_assert_eq!(quotient_action(&(&a * &b), &w).unwrap(), &qa * &qb);
        }

        #[test]
        fn intertwiner_recovers_conjugacy(a in arb_qmatrix(3, 3), b in arb_qmatrix(3, 3), p in arb_qmatrix(3, 3)) {
            prop_assume!(q_rank(&p) == 3);
            let pinv = q_inverse(&p).unwrap();
            let conj = |m: &QMatrix| &(&p * m) * &pinv;
            let t = solve_intertwiner(&[a.clone(), b.clone()], &[conj(&a), conj(&b)]).unwrap();
            let t = t.expect("conjugate families are isomorphic");
            prop_assert_eq!(q_rank(&t), 3);
            prop_assert_eq!(&t * &a, &conj(&a) * &t);
            prop_assert_eq!(&t * &b, &conj(&b) * &t);
        }
    }
}
