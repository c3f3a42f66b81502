//! Zariski decomposition `D = P + N` relative to a [`SurfaceModel`].
//!
//! `P` is nef against every declared curve with `P² ≥ 0` and `P·H ≥ 0`,
//! `N = Σ αᵢ Cᵢ` has positive coefficients on a negative-definite support,
//! and `P·Cᵢ = 0` on that support. Two independent routes are provided:
//! the support-growing fixpoint [`zariski_decompose`] and the subset scan
//! [`BruteForceOracle`].

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::lattice::{matrix_is_negative_definite, LatticeError, RationalVector};
use crate::linalg::{self, Rational};
use crate::surface::SurfaceModel;

/// Why a class was rejected as not pseudo-effective.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Obstruction {
    /// The accumulated support stopped being negative definite.
    SupportNotNegativeDefinite,
    /// Solving the orthogonality system produced a negative coefficient.
    NegativeCoefficient,
    /// The final positive part has `P² < 0` or `P·H < 0`.
    PositivePartNotNef,
    /// No subset of curves yields a valid split (oracle route).
    NoValidSupport,
}

impl fmt::Display for Obstruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Obstruction::SupportNotNegativeDefinite => "support is not negative definite",
            Obstruction::NegativeCoefficient => "negative coefficient in the negative part",
            Obstruction::PositivePartNotNef => "positive part is not nef",
            Obstruction::NoValidSupport => "no curve subset gives a valid split",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ZariskiError {
    #[error(transparent)]
    Dimension(#[from] LatticeError),
    #[error("not pseudo-effective: {reason} (curves {subset:?})")]
    NotPseudoEffective {
        reason: Obstruction,
        subset: Vec<String>,
    },
    #[error("oracle would enumerate more than {limit} negative-definite subsets")]
    TooManySubsets { limit: usize },
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NegativeTerm {
    /// Index into the model's curve list.
    pub curve: usize,
    pub name: String,
    #[serde(serialize_with = "crate::serialize_rational")]
    pub coefficient: Rational,
}

/// `D = P + Σ αᵢ Cᵢ`; terms are kept in the model's curve order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZariskiSplit {
    positive: RationalVector,
    negative: Vec<NegativeTerm>,
}

impl ZariskiSplit {
    /// Assembles a split from raw parts (no checks; see [`verify_split`]).
    pub fn from_parts(positive: RationalVector, mut negative: Vec<NegativeTerm>) -> Self {
        negative.sort_by_key(|t| t.curve);
        Self { positive, negative }
    }

    pub fn positive(&self) -> &RationalVector {
        &self.positive
    }

    pub fn negative_terms(&self) -> &[NegativeTerm] {
        &self.negative
    }

    pub fn support(&self) -> Vec<&str> {
        self.negative.iter().map(|t| t.name.as_str()).collect()
    }

    pub fn support_indices(&self) -> Vec<usize> {
        self.negative.iter().map(|t| t.curve).collect()
    }

    pub fn coefficient(&self, name: &str) -> Option<&Rational> {
        self.negative
            .iter()
            .find(|t| t.name == name)
            .map(|t| &t.coefficient)
    }

    pub fn negative_part(&self, model: &SurfaceModel) -> RationalVector {
        self.negative
            .iter()
            .fold(RationalVector::zero(model.rank()), |acc, t| {
                acc.add_scaled_int(&t.coefficient, model.curves()[t.curve].coords())
            })
    }

    pub fn scaled(&self, k: &Rational) -> Self {
        Self {
            positive: self.positive.scaled(k),
            negative: self
                .negative
                .iter()
                .map(|t| NegativeTerm {
                    coefficient: &t.coefficient * k,
                    ..t.clone()
                })
                .collect(),
        }
    }
}

/// `D·Cᵢ` for every declared curve.
pub fn curve_products(model: &SurfaceModel, d: &RationalVector) -> Vec<Rational> {
    (0..model.curves().len())
        .map(|i| d.dot_int(model.curve_image(i)))
        .collect()
}

fn check_len(model: &SurfaceModel, d: &RationalVector) -> Result<(), ZariskiError> {
    if d.len() != model.rank() {
        return Err(LatticeError::DimensionMismatch {
            expected: model.rank(),
            found: d.len(),
        }
        .into());
    }
    Ok(())
}

fn names(model: &SurfaceModel, idx: &[usize]) -> Vec<String> {
    idx.iter()
        .map(|&i| model.curves()[i].name().to_string())
        .collect()
}

/// Support sets visited by the fixpoint iteration, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionTrace {
    pub supports: Vec<Vec<usize>>,
}

/// Zariski decomposition by the support-growing fixpoint.
pub fn zariski_decompose(
    model: &SurfaceModel,
    d: &RationalVector,
) -> Result<ZariskiSplit, ZariskiError> {
    zariski_decompose_traced(model, d).map(|(s, _)| s)
}

pub fn zariski_decompose_traced(
    model: &SurfaceModel,
    d: &RationalVector,
) -> Result<(ZariskiSplit, DecompositionTrace), ZariskiError> {
    check_len(model, d)?;
    let n = model.curves().len();
    let dc = curve_products(model, d);
    let mut support: Vec<usize> = (0..n).filter(|&i| dc[i].is_negative()).collect();
    let mut alpha: Vec<Rational> = Vec::new();
    let mut trace = DecompositionTrace {
        supports: Vec::new(),
    };

    while !support.is_empty() {
        trace.supports.push(support.clone());
        let gram = model.curve_submatrix(&support);
        if !matrix_is_negative_definite(&gram) {
            return Err(ZariskiError::NotPseudoEffective {
                reason: Obstruction::SupportNotNegativeDefinite,
                subset: names(model, &support),
            });
        }
        let rhs: Vec<Rational> = support.iter().map(|&i| dc[i].clone()).collect();
        alpha = linalg::solve(&gram, &rhs).ok_or_else(|| {
            ZariskiError::InternalInvariantViolation("definite gram is singular".into())
        })?;
        if alpha.iter().any(Signed::is_negative) {
            return Err(ZariskiError::NotPseudoEffective {
                reason: Obstruction::NegativeCoefficient,
                subset: names(model, &support),
            });
        }
        let mut grown = false;
        for m in 0..n {
            if support.contains(&m) {
                continue;
            }
            let mut pc = dc[m].clone();
            for (a, &s) in alpha.iter().zip(&support) {
                let g = model.curve_product(s, m);
                if !g.is_zero() {
                    pc -= a * Rational::from_integer(g.clone());
                }
            }
            if pc.is_negative() {
                support.push(m);
                grown = true;
            }
        }
        if !grown {
            break;
        }
        support.sort_unstable();
        // alpha is re-solved on the enlarged support
    }

    let mut positive = d.clone();
    let mut terms = Vec::new();
    for (a, &s) in alpha.iter().zip(&support) {
        positive = positive.add_scaled_int(&-a, model.curves()[s].coords());
        if !a.is_zero() {
            terms.push(NegativeTerm {
                curve: s,
                name: model.curves()[s].name().to_string(),
                coefficient: a.clone(),
            });
        }
    }
    let p2 = model.form().pair(&positive, &positive)?;
    let ph = positive.dot_int(model.ample_image());
    if p2.is_negative() || ph.is_negative() {
        return Err(ZariskiError::NotPseudoEffective {
            reason: Obstruction::PositivePartNotNef,
            subset: names(model, &support),
        });
    }
    Ok((ZariskiSplit::from_parts(positive, terms), trace))
}

/// Decomposes a batch of classes, sequentially or in parallel.
pub fn decompose_batch(
    model: &SurfaceModel,
    classes: &[RationalVector],
    exec: Execution,
) -> Vec<Result<ZariskiSplit, ZariskiError>> {
    exec::map_slice(exec, classes, |d| zariski_decompose(model, d))
}

/// Big ⇔ decomposable with `P² > 0` and `P·H > 0`.
pub fn is_big(model: &SurfaceModel, d: &RationalVector) -> bool {
    match zariski_decompose(model, d) {
        Ok(split) => split_is_big(model, &split),
        Err(_) => false,
    }
}

pub(crate) fn split_is_big(model: &SurfaceModel, split: &ZariskiSplit) -> bool {
    let p = split.positive();
    let p2 = model
        .form()
        .pair(p, p)
        .expect("positive part has model rank");
    p2.is_positive() && p.dot_int(model.ample_image()).is_positive()
}

/// `vol(D) = P²`.
pub fn volume(model: &SurfaceModel, d: &RationalVector) -> Result<Rational, ZariskiError> {
    let split = zariski_decompose(model, d)?;
    Ok(model.form().pair(split.positive(), split.positive())?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum SplitFailure {
    Dimension,
    UnknownCurve {
        name: String,
    },
    DuplicateCurve {
        name: String,
    },
    /// `P + N ≠ D`.
    Reconstruction,
    NonPositiveCoefficient {
        name: String,
    },
    /// (Z1): `P·C < 0` for a declared curve.
    NotNefOnCurve {
        name: String,
    },
    /// (Z1): `P² < 0`.
    NegativeSquare,
    /// (Z1): `P·H < 0`.
    NegativeOnAmple,
    /// (Z2)
    SupportNotNegativeDefinite,
    /// (Z3): `P·Cᵢ ≠ 0` on the support.
    NotOrthogonal {
        name: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SplitReport {
    pub failures: Vec<SplitFailure>,
}

impl SplitReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Re-checks a split from scratch using only the form (not the model's
/// cached curve images).
pub fn verify_split(model: &SurfaceModel, d: &RationalVector, split: &ZariskiSplit) -> SplitReport {
    let mut failures = Vec::new();
    let form = model.form();
    let rank = model.rank();
    if d.len() != rank || split.positive().len() != rank {
        return SplitReport {
            failures: vec![SplitFailure::Dimension],
        };
    }
    let mut support = Vec::new();
    let mut n = RationalVector::zero(rank);
    for t in split.negative_terms() {
        let Some(i) = model.curves().iter().position(|c| c.name() == t.name) else {
            failures.push(SplitFailure::UnknownCurve {
                name: t.name.clone(),
            });
            continue;
        };
        if support.contains(&i) {
            failures.push(SplitFailure::DuplicateCurve {
                name: t.name.clone(),
            });
            continue;
        }
        support.push(i);
        if !t.coefficient.is_positive() {
            failures.push(SplitFailure::NonPositiveCoefficient {
                name: t.name.clone(),
            });
        }
        n = n.add_scaled_int(&t.coefficient, model.curves()[i].coords());
    }
    let p = split.positive();
    if &(p + &n) != d {
        failures.push(SplitFailure::Reconstruction);
    }
    for c in model.curves() {
        let pc = form
            .pair(p, &c.coords().to_rational())
            .expect("rank checked");
        if pc.is_negative() {
            failures.push(SplitFailure::NotNefOnCurve {
                name: c.name().to_string(),
            });
        }
    }
    if form.pair(p, p).expect("rank checked").is_negative() {
        failures.push(SplitFailure::NegativeSquare);
    }
    if form
        .pair(p, &model.ample().to_rational())
        .expect("rank checked")
        .is_negative()
    {
        failures.push(SplitFailure::NegativeOnAmple);
    }
    let coords: Vec<_> = support
        .iter()
        .map(|&i| model.curves()[i].coords().clone())
        .collect();
    if !coords.is_empty() {
        let gram = form.restrict(&coords).expect("rank checked");
        if !matrix_is_negative_definite(gram.gram()) {
            failures.push(SplitFailure::SupportNotNegativeDefinite);
        }
    }
    for &i in &support {
        let c = &model.curves()[i];
        if !form
            .pair(p, &c.coords().to_rational())
            .expect("rank checked")
            .is_zero()
        {
            failures.push(SplitFailure::NotOrthogonal {
                name: c.name().to_string(),
            });
        }
    }
    SplitReport { failures }
}

/// Cap on the number of negative-definite subsets the oracle will hold.
pub const ORACLE_SUBSET_LIMIT: usize = 1 << 20;

#[derive(Debug, Clone)]
struct OracleSubset {
    members: Vec<usize>,
    det: BigInt,
    adjugate: Vec<Vec<BigInt>>,
}

/// Exhaustive oracle: every negative-definite subset `S` of the curves is
/// tried; `α = G_S⁻¹ (D·C)_S` is obtained by Cramer's rule with cofactors
/// from a subset-expansion determinant, and the split is accepted when
/// `α ≥ 0` and the positive part is nef.
///
/// Subsets are enumerated by depth-first extension, which visits every
/// negative-definite subset because definiteness is inherited by subsets.
#[derive(Debug, Clone)]
pub struct BruteForceOracle<'a> {
    model: &'a SurfaceModel,
    subsets: Vec<OracleSubset>,
}

impl<'a> BruteForceOracle<'a> {
    pub fn new(model: &'a SurfaceModel) -> Result<Self, ZariskiError> {
        Self::with_limit(model, ORACLE_SUBSET_LIMIT)
    }

    pub fn with_limit(model: &'a SurfaceModel, limit: usize) -> Result<Self, ZariskiError> {
        let n = model.curves().len();
        let mut subsets = vec![OracleSubset {
            members: vec![],
            det: BigInt::one(),
            adjugate: vec![],
        }];
        let mut stack: Vec<Vec<usize>> = vec![vec![]];
        while let Some(s) = stack.pop() {
            let start = s.last().map_or(0, |&l| l + 1);
            for next in start..n {
                let mut t = s.clone();
                t.push(next);
                let gram = model.curve_submatrix(&t);
                let det = expansion_determinant(&gram);
                // parent is negative definite, so only the top minor is new
                let expected_negative = t.len() % 2 == 1;
                if det.is_zero() || det.is_negative() != expected_negative {
                    continue;
                }
                if subsets.len() >= limit {
                    return Err(ZariskiError::TooManySubsets { limit });
                }
                subsets.push(OracleSubset {
                    adjugate: adjugate(&gram),
                    det,
                    members: t.clone(),
                });
                stack.push(t);
            }
        }
        subsets.sort_by(|a, b| {
            a.members
                .len()
                .cmp(&b.members.len())
                .then(a.members.cmp(&b.members))
        });
        Ok(Self { model, subsets })
    }

    /// Number of negative-definite subsets (including the empty one).
    pub fn subset_count(&self) -> usize {
        self.subsets.len()
    }

    pub fn decompose(&self, d: &RationalVector) -> Result<ZariskiSplit, ZariskiError> {
        check_len(self.model, d)?;
        let model = self.model;
        let n = model.curves().len();
        let scale = d.common_denominator();
        let dint: Vec<BigInt> = d
            .coords()
            .iter()
            .map(|q| q.numer() * (&scale / q.denom()))
            .collect();
        let dot = |a: &[BigInt], b: &[BigInt]| crate::lattice::dot_int(a, b);
        // (L·D)·Cₘ and (L·D)·H, integers
        let dc: Vec<BigInt> = (0..n).map(|m| dot(&dint, model.curve_image(m))).collect();
        let gram = model.form();

        let mut accepted: Option<ZariskiSplit> = None;
        'subsets: for s in &self.subsets {
            let k = s.members.len();
            let det_sign_negative = s.det.is_negative();
            // β = adj · (L·D·C)_S, so that α = β / (det·L)
            let mut beta = Vec::with_capacity(k);
            for row in &s.adjugate {
                let mut b = BigInt::zero();
                for (a, &j) in row.iter().zip(&s.members) {
                    if !a.is_zero() && !dc[j].is_zero() {
                        b += a * &dc[j];
                    }
                }
                // α ≥ 0 ⇔ β·det ≥ 0
                if !b.is_zero() && b.is_negative() != det_sign_negative {
                    continue 'subsets;
                }
                beta.push(b);
            }
            // (det·L)·(P·Cₘ) = det·(L·D·Cₘ) − Σ βᵢ (Cᵢ·Cₘ)
            for m in 0..n {
                let mut v = &s.det * &dc[m];
                for (b, &i) in beta.iter().zip(&s.members) {
                    let g = model.curve_product(i, m);
                    if !g.is_zero() && !b.is_zero() {
                        v -= b * g;
                    }
                }
                if s.members.contains(&m) && !v.is_zero() {
                    return Err(ZariskiError::InternalInvariantViolation(format!(
                        "oracle split not orthogonal to curve {m}"
                    )));
                }
                if !v.is_zero() && v.is_negative() != det_sign_negative {
                    continue 'subsets;
                }
            }
            // (det·L)·P as an integer vector
            let mut pvec: Vec<BigInt> = dint.iter().map(|x| x * &s.det).collect();
            for (b, &i) in beta.iter().zip(&s.members) {
                for (p, c) in pvec.iter_mut().zip(model.curves()[i].coords().coords()) {
                    *p -= b * c;
                }
            }
            let p2 = dot(
                &gram.apply(&crate::lattice::LatticeVector::new(pvec.clone()))?,
                &pvec,
            );
            if p2.is_negative() {
                continue;
            }
            let ph = dot(&pvec, model.ample_image());
            if !ph.is_zero() && ph.is_negative() != det_sign_negative {
                continue;
            }

            let denom = Rational::from_integer(&s.det * &scale);
            let positive = RationalVector::new(
                pvec.into_iter()
                    .map(|x| Rational::from_integer(x) / &denom)
                    .collect(),
            );
            let terms = beta
                .iter()
                .zip(&s.members)
                .filter(|(b, _)| !b.is_zero())
                .map(|(b, &i)| NegativeTerm {
                    curve: i,
                    name: model.curves()[i].name().to_string(),
                    coefficient: Rational::from_integer(b.clone()) / &denom,
                })
                .collect();
            let split = ZariskiSplit::from_parts(positive, terms);
            match &accepted {
                None => accepted = Some(split),
                Some(prev) if *prev == split => {}
                Some(prev) => {
                    return Err(ZariskiError::InternalInvariantViolation(format!(
                        "two distinct splits accepted: supports {:?} and {:?}",
                        prev.support(),
                        split.support()
                    )))
                }
            }
        }
        accepted.ok_or(ZariskiError::NotPseudoEffective {
            reason: Obstruction::NoValidSupport,
            subset: Vec::new(),
        })
    }

    pub fn decompose_batch(
        &self,
        classes: &[RationalVector],
        exec: Execution,
    ) -> Vec<Result<ZariskiSplit, ZariskiError>> {
        exec::map_slice(exec, classes, |d| self.decompose(d))
    }
}

/// One-shot oracle decomposition (rebuilds the subset table).
pub fn brute_force_decompose(
    model: &SurfaceModel,
    d: &RationalVector,
) -> Result<ZariskiSplit, ZariskiError> {
    BruteForceOracle::new(model)?.decompose(d)
}

/// Determinant by Laplace expansion along rows, memoised over column subsets.
fn expansion_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    // minors[mask] = det of rows (n - |mask|).. on columns in mask
    let full = 1usize << n;
    let mut minors = vec![BigInt::zero(); full];
    minors[0] = BigInt::one();
    for mask in 1..full {
        let size = mask.count_ones() as usize;
        let row = n - size;
        let mut acc = BigInt::zero();
        let mut sign_positive = true;
        for col in 0..n {
            if mask & (1 << col) == 0 {
                continue;
            }
            let rest = mask & !(1 << col);
            if !m[row][col].is_zero() && !minors[rest].is_zero() {
                let term = &m[row][col] * &minors[rest];
                if sign_positive {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            sign_positive = !sign_positive;
        }
        minors[mask] = acc;
    }
    minors[full - 1].clone()
}

fn adjugate(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![BigInt::one()]];
    }
    let mut adj = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<BigInt>> = (0..n)
                .filter(|&r| r != j)
                .map(|r| {
                    (0..n)
                        .filter(|&c| c != i)
                        .map(|c| m[r][c].clone())
                        .collect()
                })
                .collect();
            let c = expansion_determinant(&minor);
            adj[i][j] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{cubic_surface, quartic_y4};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn rv(c: &[(i64, i64)]) -> RationalVector {
        RationalVector::new(c.iter().map(|&(n, d)| q(n, d)).collect())
    }

    #[test]
    fn expansion_determinant_matches_bareiss() {
        let m: Vec<Vec<BigInt>> = [[2, -1, 0, 3], [1, 4, -2, 0], [0, 5, 1, -1], [7, 0, 2, 2]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(expansion_determinant(&m), linalg::determinant(&m));
        let adj = adjugate(&m);
        // m · adj = det · I
        let det = expansion_determinant(&m);
        for i in 0..4 {
            for j in 0..4 {
                let s: BigInt = (0..4).map(|k| &m[i][k] * &adj[k][j]).sum();
                assert_eq!(s, if i == j { det.clone() } else { BigInt::zero() });
            }
        }
    }

    #[test]
    fn ample_is_its_own_positive_part() {
        let m = quartic_y4();
        let h = RationalVector::from_i64(&[1, 0, 0]);
        let s = zariski_decompose(&m, &h).unwrap();
        assert_eq!(s.positive(), &h);
        assert!(s.support().is_empty());
    }

    #[test]
    fn h_plus_line() {
        let m = quartic_y4();
        let d = RationalVector::from_i64(&[1, 1, 0]);
        let s = zariski_decompose(&m, &d).unwrap();
        assert_eq!(s.positive(), &rv(&[(1, 1), (1, 2), (0, 1)]));
        assert_eq!(s.support(), vec!["l1"]);
        assert_eq!(s.coefficient("l1"), Some(&q(1, 2)));
        let p = s.positive();
        let f = m.form();
        assert_eq!(
            f.pair(p, &RationalVector::from_i64(&[0, 1, 0])).unwrap(),
            q(0, 1)
        );
        assert_eq!(
            f.pair(p, &RationalVector::from_i64(&[0, 0, 1])).unwrap(),
            q(3, 2)
        );
        assert_eq!(
            f.pair(p, &RationalVector::from_i64(&[1, -1, -1])).unwrap(),
            q(3, 1)
        );
        assert_eq!(brute_force_decompose(&m, &d).unwrap(), s);
    }

    #[test]
    fn counterexample_divisor_support() {
        let m = quartic_y4();
        let d1 = RationalVector::from_i64(&[3, 6, 6]);
        let s = zariski_decompose(&m, &d1).unwrap();
        assert_eq!(s.support(), vec!["l1", "l2"]);
        assert_eq!(s.positive(), &RationalVector::from_i64(&[3, 3, 3]));
        assert_eq!(s.coefficient("l1"), Some(&q(3, 1)));
        assert_eq!(brute_force_decompose(&m, &d1).unwrap(), s);
        assert!(verify_split(&m, &d1, &s).passed());
    }

    #[test]
    fn bigness_and_volume() {
        let m = quartic_y4();
        assert!(is_big(&m, &RationalVector::from_i64(&[1, 0, 0])));
        assert!(!is_big(&m, &RationalVector::from_i64(&[0, 1, 0])));
        assert!(!is_big(&m, &RationalVector::from_i64(&[-1, 0, 0])));
        let line = zariski_decompose(&m, &RationalVector::from_i64(&[0, 1, 0])).unwrap();
        assert!(line.positive().is_zero());
        assert_eq!(
            volume(&m, &RationalVector::from_i64(&[1, 0, 0])).unwrap(),
            q(4, 1)
        );
        assert_eq!(
            volume(&m, &RationalVector::from_i64(&[1, 1, 0])).unwrap(),
            q(9, 2)
        );
        assert_eq!(
            volume(&m, &RationalVector::from_i64(&[2, 2, 0])).unwrap(),
            q(18, 1)
        );
    }

    #[test]
    fn negative_ample_is_rejected_by_both_routes() {
        let m = quartic_y4();
        let d = RationalVector::from_i64(&[-1, 0, 0]);
        assert!(matches!(
            zariski_decompose(&m, &d),
            Err(ZariskiError::NotPseudoEffective { .. })
        ));
        assert!(matches!(
            brute_force_decompose(&m, &d),
            Err(ZariskiError::NotPseudoEffective { .. })
        ));
        assert!(matches!(
            volume(&m, &d),
            Err(ZariskiError::NotPseudoEffective { .. })
        ));
    }

    #[test]
    fn wrong_length_is_a_dimension_error() {
        let m = quartic_y4();
        assert!(matches!(
            zariski_decompose(&m, &RationalVector::from_i64(&[1, 0])),
            Err(ZariskiError::Dimension(_))
        ));
    }

    #[test]
    fn verify_flags_tampering() {
        let m = quartic_y4();
        let d = RationalVector::from_i64(&[1, 1, 0]);
        let s = zariski_decompose(&m, &d).unwrap();
        assert!(verify_split(&m, &d, &s).passed());

        let mut terms = s.negative_terms().to_vec();
        terms[0].coefficient += q(1, 1);
        let tampered = ZariskiSplit::from_parts(s.positive().clone(), terms);
        assert!(verify_split(&m, &d, &tampered)
            .failures
            .contains(&SplitFailure::Reconstruction));

        // swap: P' = N = ½ l1, N' = P = h + ½ l1 = C + (3/2) l1 + l2
        let swapped = ZariskiSplit::from_parts(
            rv(&[(0, 1), (1, 2), (0, 1)]),
            vec![
                NegativeTerm {
                    curve: 0,
                    name: "l1".into(),
                    coefficient: q(3, 2),
                },
                NegativeTerm {
                    curve: 1,
                    name: "l2".into(),
                    coefficient: q(1, 1),
                },
                NegativeTerm {
                    curve: 2,
                    name: "C".into(),
                    coefficient: q(1, 1),
                },
            ],
        );
        let report = verify_split(&m, &d, &swapped);
        assert!(!report.failures.contains(&SplitFailure::Reconstruction));
        assert!(report
            .failures
            .contains(&SplitFailure::NotNefOnCurve { name: "l1".into() }));
        assert!(report
            .failures
            .contains(&SplitFailure::SupportNotNegativeDefinite));
    }

    #[test]
    fn support_only_grows() {
        // D·C₁ < 0 only after subtracting the first negative part
        let m = cubic_surface();
        let e1 = m.curve_index("E1").unwrap();
        let f12 = m.curve_index("F12").unwrap();
        let mut d = RationalVector::from_i64(&[3, -1, -1, -1, -1, -1, -1]);
        d = d.add_scaled_int(&q(3, 1), m.curves()[e1].coords());
        d = d.add_scaled_int(&q(1, 2), m.curves()[f12].coords());
        let (split, trace) = zariski_decompose_traced(&m, &d).unwrap();
        for w in trace.supports.windows(2) {
            assert!(w[0].iter().all(|i| w[1].contains(i)));
        }
        assert!(trace.supports.len() <= m.curves().len());
        assert_eq!(brute_force_decompose(&m, &d).unwrap(), split);
    }

    #[test]
    fn cubic_oracle_enumerates_skew_line_sets() {
        // sets of pairwise skew lines: 1 + 27 + 216 + 720 + 1080 + 648 + 72
        let m = cubic_surface();
        let oracle = BruteForceOracle::new(&m).unwrap();
        assert_eq!(oracle.subset_count(), 2764);
        assert!(matches!(
            BruteForceOracle::with_limit(&m, 100),
            Err(ZariskiError::TooManySubsets { limit: 100 })
        ));
    }
}
