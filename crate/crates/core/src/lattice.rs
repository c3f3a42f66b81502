//! Integral symmetric bilinear forms and the vectors they act on.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{self, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("gram matrix is empty")]
    EmptyForm,
    #[error("gram row {row} has length {len}, expected {rank}")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("reflection root must have self-intersection -2, found {self_intersection}")]
    NotARoot { self_intersection: BigInt },
    #[error("input vectors are linearly dependent")]
    DependentVectors,
    #[error("zero vector has no primitivity")]
    ZeroVector,
}

/// Symmetric integer Gram matrix on a fixed basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntersectionForm {
    gram: Vec<Vec<BigInt>>,
}

impl IntersectionForm {
    pub fn new(gram: Vec<Vec<BigInt>>) -> Result<Self, LatticeError> {
        let rank = gram.len();
        if rank == 0 {
            return Err(LatticeError::EmptyForm);
        }
        for (row, r) in gram.iter().enumerate() {
            if r.len() != rank {
                return Err(LatticeError::NotSquare {
                    row,
                    len: r.len(),
                    rank,
                });
            }
        }
        for row in 0..rank {
            for col in row + 1..rank {
                if gram[row][col] != gram[col][row] {
                    return Err(LatticeError::NotSymmetric { row, col });
                }
            }
        }
        Ok(Self { gram })
    }

    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self, LatticeError> {
        Self::new(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let n = entries.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            BigInt::from(entries[i])
                        } else {
                            BigInt::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Self::new(gram).expect("diagonal form is symmetric")
    }

    /// The hyperbolic plane `U`.
    pub fn hyperbolic_plane() -> Self {
        Self::from_rows(&[[0, 1], [1, 0]]).unwrap()
    }

    /// `E8(-1)`: the negated Cartan matrix of E8 (Bourbaki labelling,
    /// branch node 4 attached to node 2).
    pub fn e8_negative() -> Self {
        let edges = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];
        let mut gram = vec![vec![BigInt::zero(); 8]; 8];
        for (i, row) in gram.iter_mut().enumerate() {
            row[i] = BigInt::from(-2);
        }
        for (i, j) in edges {
            gram[i][j] = BigInt::one();
            gram[j][i] = BigInt::one();
        }
        Self::new(gram).unwrap()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (n, m) = (self.rank(), other.rank());
        let mut gram = vec![vec![BigInt::zero(); n + m]; n + m];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = self.gram[i][j].clone();
            }
        }
        for i in 0..m {
            for j in 0..m {
                gram[n + i][n + j] = other.gram[i][j].clone();
            }
        }
        Self { gram }
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<BigInt>] {
        &self.gram
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.gram[i][j]
    }

    pub fn determinant(&self) -> BigInt {
        linalg::determinant(&self.gram)
    }

    /// `gram · v`, the linear functional `w ↦ pair(v, w)` in coordinates.
    pub fn apply(&self, v: &LatticeVector) -> Result<Vec<BigInt>, LatticeError> {
        self.check_len(v.len())?;
        Ok(self
            .gram
            .iter()
            .map(|row| dot_int(row, v.coords()))
            .collect())
    }

    pub fn pair(&self, v: &RationalVector, w: &RationalVector) -> Result<Rational, LatticeError> {
        self.check_len(v.len())?;
        self.check_len(w.len())?;
        let mut acc = Rational::zero();
        for (i, vi) in v.0.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let mut row = Rational::zero();
            for (j, wj) in w.0.iter().enumerate() {
                if !wj.is_zero() && !self.gram[i][j].is_zero() {
                    row += wj * Rational::from_integer(self.gram[i][j].clone());
                }
            }
            acc += vi * row;
        }
        Ok(acc)
    }

    pub fn pair_int(&self, v: &LatticeVector, w: &LatticeVector) -> Result<BigInt, LatticeError> {
        self.check_len(w.len())?;
        Ok(dot_int(&self.apply(v)?, w.coords()))
    }

    pub fn square(&self, v: &LatticeVector) -> Result<BigInt, LatticeError> {
        self.pair_int(v, v)
    }

    /// Principal submatrix on `subset` (in the given order).
    pub fn principal_submatrix(&self, subset: &[usize]) -> Vec<Vec<BigInt>> {
        subset
            .iter()
            .map(|&i| subset.iter().map(|&j| self.gram[i][j].clone()).collect())
            .collect()
    }

    /// Gram matrix of a list of vectors, as a new form.
    pub fn restrict(&self, basis: &[LatticeVector]) -> Result<Self, LatticeError> {
        if basis.is_empty() {
            return Err(LatticeError::EmptyForm);
        }
        let images = basis
            .iter()
            .map(|b| self.apply(b))
            .collect::<Result<Vec<_>, _>>()?;
        let gram = images
            .iter()
            .map(|img| basis.iter().map(|b| dot_int(img, b.coords())).collect())
            .collect();
        Self::new(gram)
    }

    fn check_len(&self, len: usize) -> Result<(), LatticeError> {
        if len != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: len,
            });
        }
        Ok(())
    }
}

pub(crate) fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .map(|(x, y)| x * y)
        .fold(BigInt::zero(), |acc, t| acc + t)
}

/// Integral class in lattice coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeVector(Vec<BigInt>);

impl Serialize for LatticeVector {
    /// Safe-range integers as numbers, larger ones as decimal strings.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(crate::model_io::encode_integer))
    }
}

impl LatticeVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Self(coords.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![BigInt::zero(); len])
    }

    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[i] = BigInt::one();
        v
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    pub fn to_rational(&self) -> RationalVector {
        RationalVector(self.0.iter().cloned().map(Rational::from_integer).collect())
    }

    /// gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }
}

impl Add for &LatticeVector {
    type Output = LatticeVector;
    fn add(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &LatticeVector {
    type Output = LatticeVector;
    fn sub(self, rhs: &LatticeVector) -> LatticeVector {
        assert_eq!(self.len(), rhs.len());
        LatticeVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &LatticeVector {
    type Output = LatticeVector;
    fn neg(self) -> LatticeVector {
        LatticeVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for LatticeVector {
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

/// Exact rational class (an ℝ-divisor restricted to ℚ coefficients).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        LatticeVector::from_i64(coords).to_rational()
    }

    pub fn zero(len: usize) -> Self {
        Self(vec![Rational::zero(); len])
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self(self.0.iter().map(|x| x * k).collect())
    }

    /// `self + k · v` for an integral `v`.
    pub fn add_scaled_int(&self, k: &Rational, v: &LatticeVector) -> Self {
        assert_eq!(self.len(), v.len());
        Self(
            self.0
                .iter()
                .zip(v.coords())
                .map(|(a, b)| a + k * Rational::from_integer(b.clone()))
                .collect(),
        )
    }

    /// Dot product with an integer row (e.g. a row of `gram · C`).
    pub fn dot_int(&self, row: &[BigInt]) -> Rational {
        assert_eq!(self.len(), row.len());
        let mut acc = Rational::zero();
        for (a, b) in self.0.iter().zip(row) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * Rational::from_integer(b.clone());
            }
        }
        acc
    }

    /// Least common denominator of the coordinates.
    pub fn common_denominator(&self) -> BigInt {
        self.0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
    }

    /// Returns the integral vector when every coordinate is an integer.
    pub fn to_integral(&self) -> Option<LatticeVector> {
        self.0
            .iter()
            .map(|q| q.is_integer().then(|| q.to_integer()))
            .collect::<Option<Vec<_>>>()
            .map(LatticeVector)
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;
    fn add(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.len(), rhs.len());
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;
    fn sub(self, rhs: &RationalVector) -> RationalVector {
        assert_eq!(self.len(), rhs.len());
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;
    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Serialize for RationalVector {
    /// Coordinates as `"p/q"` strings.
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|q| q.to_string()))
    }
}

impl From<&LatticeVector> for RationalVector {
    fn from(v: &LatticeVector) -> Self {
        v.to_rational()
    }
}

impl fmt::Display for RationalVector {
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

/// `vᵀ · gram · w`, exact.
pub fn pair(
    v: &RationalVector,
    w: &RationalVector,
    form: &IntersectionForm,
) -> Result<Rational, LatticeError> {
    form.pair(v, w)
}

/// Sylvester test on the principal submatrix indexed by `subset`.
///
/// Strict: a singular (semidefinite) submatrix is not negative definite.
pub fn is_negative_definite(form: &IntersectionForm, subset: &[usize]) -> bool {
    if let Some(&bad) = subset.iter().find(|&&i| i >= form.rank()) {
        panic!("subset index {bad} out of range for rank {}", form.rank());
    }
    matrix_is_negative_definite(&form.principal_submatrix(subset))
}

/// Same as [`is_negative_definite`] on a bare symmetric integer matrix.
pub fn matrix_is_negative_definite(m: &[Vec<BigInt>]) -> bool {
    let minors = linalg::leading_principal_minors(m);
    if minors.len() < m.len() {
        return false;
    }
    // Δ_k must have sign (-1)^k
    minors.iter().enumerate().all(|(k, d)| {
        if k % 2 == 0 {
            d.is_negative()
        } else {
            d.is_positive()
        }
    })
}

/// Inertia `(n₊, n₋, n₀)` of a symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn new(positive: usize, negative: usize, zero: usize) -> Self {
        Self {
            positive,
            negative,
            zero,
        }
    }

    pub fn rank(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

/// Exact inertia by symmetric (congruence) elimination over ℚ.
pub fn signature(form: &IntersectionForm) -> Signature {
    let mut a: Vec<Vec<Rational>> = form
        .gram()
        .iter()
        .map(|r| r.iter().cloned().map(Rational::from_integer).collect())
        .collect();
    let n = a.len();
    let mut sig = Signature::new(0, 0, 0);
    let mut k = 0;
    while k < n {
        if a[k][k].is_zero() {
            if let Some(p) = (k + 1..n).find(|&p| !a[p][p].is_zero()) {
                a.swap(k, p);
                for row in a.iter_mut() {
                    row.swap(k, p);
                }
            } else if let Some(p) = (k + 1..n).find(|&p| !a[k][p].is_zero()) {
                // row_k += row_p, col_k += col_p: new diagonal 2·a[k][p]
                for j in 0..n {
                    let v = &a[k][j] + &a[p][j];
                    a[k][j] = v;
                }
                for row in a.iter_mut() {
                    let v = &row[k] + &row[p];
                    row[k] = v;
                }
            } else {
                // row k is entirely zero in the remaining block
                sig.zero += 1;
                k += 1;
                continue;
            }
        }
        let pivot = a[k][k].clone();
        if pivot.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let v = &a[i][j] - &factor * &a[k][j];
                a[i][j] = v;
            }
        }
        for row in a.iter_mut().skip(k + 1) {
            row[k] = Rational::zero();
        }
        for j in k + 1..n {
            a[k][j] = Rational::zero();
        }
        k += 1;
    }
    sig
}

/// Saturated basis of `{w : pair(w, v) = 0 for all v in vectors}`.
pub fn orthogonal_complement(
    vectors: &[LatticeVector],
    form: &IntersectionForm,
) -> Result<Vec<LatticeVector>, LatticeError> {
    let rows = vectors
        .iter()
        .map(|v| form.apply(v))
        .collect::<Result<Vec<_>, _>>()?;
    let coords: Vec<Vec<BigInt>> = vectors.iter().map(|v| v.coords().to_vec()).collect();
    if linalg::rank(&coords) < vectors.len() {
        return Err(LatticeError::DependentVectors);
    }
    if rows.is_empty() {
        return Ok((0..form.rank())
            .map(|i| LatticeVector::basis(form.rank(), i))
            .collect());
    }
    Ok(linalg::integer_kernel(&rows, form.rank())
        .into_iter()
        .map(LatticeVector::new)
        .collect())
}

/// Picard–Lefschetz reflection `d ↦ d + (d·root)·root` in a (−2)-class.
pub fn reflection(
    d: &LatticeVector,
    root: &LatticeVector,
    form: &IntersectionForm,
) -> Result<LatticeVector, LatticeError> {
    let sq = form.square(root)?;
    if sq != BigInt::from(-2) {
        return Err(LatticeError::NotARoot {
            self_intersection: sq,
        });
    }
    let k = form.pair_int(d, root)?;
    Ok(d + &root.scaled(&k))
}

pub fn is_primitive(v: &LatticeVector) -> Result<bool, LatticeError> {
    if v.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(v.content().is_one())
}

/// Default box radius for [`find_isotropic_primitive`].
pub const DEFAULT_ISOTROPIC_BOUND: u32 = 4;

/// First nonzero primitive `v` with `v² = 0` and `max|vᵢ| ≤ bound`.
///
/// Scan order: by max-norm shell `1, 2, …, bound`; inside a shell,
/// colexicographic with coordinate values ordered `0, 1, −1, 2, −2, …`.
/// `None` only says the box is empty of such vectors.
pub fn find_isotropic_primitive(form: &IntersectionForm, bound: u32) -> Option<LatticeVector> {
    let n = form.rank();
    // machine-integer fast path when the box cannot overflow i128
    let small: Option<Vec<Vec<i128>>> = form
        .gram()
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i128().filter(|v| v.abs() < 1 << 40))
                .collect()
        })
        .collect();
    let bound = bound as i64;
    let values: Vec<i64> = std::iter::once(0)
        .chain((1..=bound).flat_map(|k| [k, -k]))
        .collect();
    for shell in 1..=bound {
        let width = (2 * shell + 1) as usize;
        let mut idx = vec![0usize; n];
        loop {
            let v: Vec<i64> = idx.iter().map(|&i| values[i]).collect();
            if v.iter().any(|x| x.abs() == shell) {
                let isotropic = match &small {
                    Some(g) => quad_i128(g, &v) == 0,
                    None => {
                        let lv = LatticeVector::from_i64(&v);
                        form.square(&lv).unwrap().is_zero()
                    }
                };
                if isotropic {
                    let lv = LatticeVector::from_i64(&v);
                    if lv.content().is_one() {
                        return Some(lv);
                    }
                }
            }
            // colex increment: first coordinate varies fastest
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                idx[pos] += 1;
                if idx[pos] < width {
                    break;
                }
                idx[pos] = 0;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    None
}

fn quad_i128(g: &[Vec<i128>], v: &[i64]) -> i128 {
    let mut acc = 0i128;
    for (i, &vi) in v.iter().enumerate() {
        if vi == 0 {
            continue;
        }
        let mut row = 0i128;
        for (j, &vj) in v.iter().enumerate() {
            if vj != 0 {
                row += g[i][j] * vj as i128;
            }
        }
        acc += vi as i128 * row;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn y4() -> IntersectionForm {
        IntersectionForm::from_rows(&[[4, 1, 1], [1, -2, 1], [1, 1, -2]]).unwrap()
    }

    fn enriques() -> IntersectionForm {
        IntersectionForm::e8_negative().direct_sum(&IntersectionForm::hyperbolic_plane())
    }

    #[test]
    fn pair_examples() {
        let u = IntersectionForm::hyperbolic_plane();
        let e = RationalVector::from_i64(&[1, 0]);
        let f = RationalVector::from_i64(&[0, 1]);
        assert_eq!(pair(&e, &f, &u).unwrap(), q(1, 1));

        let h = RationalVector::from_i64(&[1, 0, 0]);
        assert_eq!(pair(&h, &h, &y4()).unwrap(), q(4, 1));
        let v = RationalVector::from_i64(&[1, 1, 0]);
        let w = RationalVector::from_i64(&[0, 1, 0]);
        assert_eq!(pair(&v, &w, &y4()).unwrap(), q(-1, 1));
    }

    #[test]
    fn pair_rejects_wrong_length() {
        let e = RationalVector::from_i64(&[1, 0, 0]);
        let f = RationalVector::from_i64(&[1, 0]);
        assert_eq!(
            pair(&e, &f, &IntersectionForm::hyperbolic_plane()),
            Err(LatticeError::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn form_constructor_rejects_bad_gram() {
        assert_eq!(
            IntersectionForm::from_rows(&[[1, 2], [3, 1]]),
            Err(LatticeError::NotSymmetric { row: 0, col: 1 })
        );
        assert_eq!(
            IntersectionForm::from_rows::<[i64; 0]>(&[]),
            Err(LatticeError::EmptyForm)
        );
        assert!(matches!(
            IntersectionForm::new(vec![vec![BigInt::one(), BigInt::zero()]]),
            Err(LatticeError::NotSquare { .. })
        ));
    }

    #[test]
    fn negative_definite_examples() {
        let f = IntersectionForm::from_rows(&[[-2, 1], [1, -2]]).unwrap();
        assert!(is_negative_definite(&f, &[0, 1]));
        let f = IntersectionForm::from_rows(&[[-2, 3], [3, -2]]).unwrap();
        assert!(!is_negative_definite(&f, &[0, 1]));
        let f = IntersectionForm::from_rows(&[[-1, 1], [1, -1]]).unwrap();
        assert!(!is_negative_definite(&f, &[0, 1]));
        assert!(is_negative_definite(&f, &[]));
        assert!(is_negative_definite(&f, &[1]));
    }

    #[test]
    fn signature_examples() {
        assert_eq!(
            signature(&IntersectionForm::hyperbolic_plane()),
            Signature::new(1, 1, 0)
        );
        assert_eq!(signature(&enriques()), Signature::new(1, 9, 0));
        assert_eq!(signature(&y4()), Signature::new(1, 2, 0));
        assert_eq!(
            signature(&IntersectionForm::diagonal(&[0, 3, -1])),
            Signature::new(1, 1, 1)
        );
        let degenerate = IntersectionForm::from_rows(&[[0, 0, 1], [0, 0, 0], [1, 0, 0]]).unwrap();
        assert_eq!(signature(&degenerate), Signature::new(1, 1, 1));
    }

    #[test]
    fn enriques_lattice_is_unimodular() {
        assert_eq!(enriques().determinant(), BigInt::from(-1));
        assert_eq!(IntersectionForm::e8_negative().determinant(), BigInt::one());
    }

    #[test]
    fn complement_examples() {
        let u = IntersectionForm::hyperbolic_plane();
        let c = orthogonal_complement(&[LatticeVector::from_i64(&[1, 0])], &u).unwrap();
        assert_eq!(c.len(), 1);
        assert!(
            c[0] == LatticeVector::from_i64(&[1, 0]) || c[0] == LatticeVector::from_i64(&[-1, 0])
        );

        let full: Vec<_> = (0..3).map(|i| LatticeVector::basis(3, i)).collect();
        assert!(orthogonal_complement(&full, &y4()).unwrap().is_empty());

        let dependent = [
            LatticeVector::from_i64(&[1, 2]),
            LatticeVector::from_i64(&[2, 4]),
        ];
        assert_eq!(
            orthogonal_complement(&dependent, &u),
            Err(LatticeError::DependentVectors)
        );
    }

    #[test]
    fn complement_of_meeting_roots_in_enriques_lattice() {
        let form = enriques();
        let c1 = LatticeVector::basis(10, 0);
        let c2 = LatticeVector::basis(10, 2);
        assert_eq!(form.pair_int(&c1, &c2).unwrap(), BigInt::one());
        let m = orthogonal_complement(&[c1.clone(), c2.clone()], &form).unwrap();
        assert_eq!(m.len(), 8);
        for b in &m {
            assert!(form.pair_int(b, &c1).unwrap().is_zero());
            assert!(form.pair_int(b, &c2).unwrap().is_zero());
        }
        let restricted = form.restrict(&m).unwrap();
        assert_eq!(signature(&restricted), Signature::new(1, 7, 0));
        let rows: Vec<Vec<BigInt>> = m.iter().map(|b| b.coords().to_vec()).collect();
        assert!(linalg::smith_invariants(&rows).iter().all(|d| d.is_one()));
    }

    #[test]
    fn reflection_examples() {
        let form = IntersectionForm::diagonal(&[-2, -2]);
        let root = LatticeVector::from_i64(&[0, 1]);
        assert_eq!(reflection(&root, &root, &form).unwrap(), -&root);
        let d = LatticeVector::from_i64(&[1, 0]);
        assert_eq!(reflection(&d, &root, &form).unwrap(), d);
        let bad = LatticeVector::from_i64(&[1, 1]);
        assert_eq!(
            reflection(&d, &bad, &form),
            Err(LatticeError::NotARoot {
                self_intersection: BigInt::from(-4)
            })
        );
    }

    #[test]
    fn isotropic_examples() {
        let u = IntersectionForm::hyperbolic_plane();
        assert_eq!(
            find_isotropic_primitive(&u, 1),
            Some(LatticeVector::from_i64(&[1, 0]))
        );
        let def = IntersectionForm::diagonal(&[-2]);
        assert_eq!(find_isotropic_primitive(&def, 5), None);
        // x² - 4y² has (2, 1) but (2, 0)-style multiples are skipped
        let f = IntersectionForm::diagonal(&[1, -4]);
        assert_eq!(
            find_isotropic_primitive(&f, 2),
            Some(LatticeVector::from_i64(&[2, 1]))
        );
        assert_eq!(find_isotropic_primitive(&f, 1), None);
    }

    #[test]
    fn primitivity() {
        assert!(!is_primitive(&LatticeVector::from_i64(&[2, 4])).unwrap());
        assert!(is_primitive(&LatticeVector::from_i64(&[1, 0, 0])).unwrap());
        assert!(is_primitive(&LatticeVector::from_i64(&[3, 5])).unwrap());
        assert_eq!(
            is_primitive(&LatticeVector::zero(2)),
            Err(LatticeError::ZeroVector)
        );
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| q(n, d))
    }

    fn rvec(n: usize) -> impl Strategy<Value = RationalVector> {
        proptest::collection::vec(small_rational(), n).prop_map(RationalVector::new)
    }

    fn ivec(n: usize) -> impl Strategy<Value = LatticeVector> {
        proptest::collection::vec(-4i64..=4, n).prop_map(|v| LatticeVector::from_i64(&v))
    }

    /// Random unimodular matrix as a product of elementary operations.
    fn unimodular(n: usize) -> impl Strategy<Value = Vec<Vec<BigInt>>> {
        proptest::collection::vec((0..n, 0..n, -2i64..=2, any::<bool>()), 0..12).prop_map(
            move |ops| {
                let mut m: Vec<Vec<BigInt>> = (0..n)
                    .map(|i| (0..n).map(|j| BigInt::from((i == j) as i64)).collect())
                    .collect();
                for (i, j, k, swap) in ops {
                    if swap {
                        m.swap(i, j);
                    } else if i != j {
                        for c in 0..n {
                            let v = &m[i][c] + &m[j][c] * k;
                            m[i][c] = v;
                        }
                    }
                }
                m
            },
        )
    }

    proptest! {
        #[test]
        fn pair_is_symmetric_and_bilinear(v in rvec(3), w in rvec(3), x in rvec(3), k in small_rational()) {
            let f = y4();
            prop_assert_eq!(pair(&v, &w, &f).unwrap(), pair(&w, &v, &f).unwrap());
            let lhs = pair(&(&v.scaled(&k) + &x), &w, &f).unwrap();
            let rhs = k * pair(&v, &w, &f).unwrap() + pair(&x, &w, &f).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn negative_definite_is_hereditary(entries in proptest::collection::vec(-3i64..=3, 21), diag in proptest::collection::vec(-4i64..=-1, 6), mask in 0u32..64) {
            let mut g = vec![vec![0i64; 6]; 6];
            let mut it = entries.iter();
            for i in 0..6 {
                g[i][i] = diag[i];
                for j in i + 1..6 {
                    let v = *it.next().unwrap();
                    g[i][j] = v;
                    g[j][i] = v;
                }
            }
            let f = IntersectionForm::from_rows(&g).unwrap();
            let set: Vec<usize> = (0..6).filter(|i| mask & (1 << i) != 0).collect();
            if is_negative_definite(&f, &set) {
                for sub in 0u32..(1 << set.len()) {
                    let s: Vec<usize> = set.iter().enumerate().filter(|(k, _)| sub & (1 << k) != 0).map(|(_, &i)| i).collect();
                    prop_assert!(is_negative_definite(&f, &s));
                }
            }
        }

        #[test]
        fn signature_is_a_basis_invariant(u in unimodular(10)) {
            let f = enriques();
            let basis: Vec<LatticeVector> = u.into_iter().map(LatticeVector::new).collect();
            let g = f.restrict(&basis).unwrap();
            let s = signature(&g);
            prop_assert_eq!(s.rank(), 10);
            prop_assert_eq!(s, Signature::new(1, 9, 0));
        }

        #[test]
        fn signature_is_invariant_on_degenerate_forms(u in unimodular(4)) {
            let f = IntersectionForm::diagonal(&[2, 0, -1, -3]);
            let basis: Vec<LatticeVector> = u.into_iter().map(LatticeVector::new).collect();
            prop_assert_eq!(signature(&f.restrict(&basis).unwrap()), Signature::new(1, 2, 1));
        }

        #[test]
        fn reflection_is_an_isometric_involution(v in ivec(10), w in ivec(10), k in 0usize..8) {
            let f = enriques();
            let root = LatticeVector::basis(10, k);
            let sv = reflection(&v, &root, &f).unwrap();
            let sw = reflection(&w, &root, &f).unwrap();
            prop_assert_eq!(f.pair_int(&sv, &sw).unwrap(), f.pair_int(&v, &w).unwrap());
            prop_assert_eq!(reflection(&sv, &root, &f).unwrap(), v);
            prop_assert_eq!(reflection(&root, &root, &f).unwrap(), -&root);
        }

        #[test]
        fn complement_is_orthogonal_and_saturated(a in ivec(10), b in ivec(10)) {
            let f = enriques();
            let input = [a.clone(), b.clone()];
            match orthogonal_complement(&input, &f) {
                Err(LatticeError::DependentVectors) => {
                    let rows: Vec<Vec<BigInt>> = input.iter().map(|v| v.coords().to_vec()).collect();
                    prop_assert!(linalg::rank(&rows) < 2);
                }
                Err(e) => prop_assert!(false, "unexpected {e}"),
                Ok(m) => {
                    prop_assert_eq!(m.len(), 8);
                    for v in &m {
                        prop_assert!(f.pair_int(v, &a).unwrap().is_zero());
                        prop_assert!(f.pair_int(v, &b).unwrap().is_zero());
                    }
                    let rows: Vec<Vec<BigInt>> = m.iter().map(|v| v.coords().to_vec()).collect();
                    prop_assert!(linalg::smith_invariants(&rows).iter().all(|d| d.is_one()));
                }
            }
        }

        #[test]
        fn isotropic_output_is_primitive_and_isotropic(d0 in 1i64..=3, d1 in 1i64..=3, d2 in 1i64..=3) {
            let f = IntersectionForm::diagonal(&[d0, -d1, -d2]);
            if let Some(v) = find_isotropic_primitive(&f, 3) {
                prop_assert!(f.square(&v).unwrap().is_zero());
                prop_assert!(is_primitive(&v).unwrap());
            }
        }
    }
}
