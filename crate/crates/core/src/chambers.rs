//! Chamber bookkeeping on the big cone.
//!
//! A simple Weyl chamber is a connected component of the big cone minus the
//! hyperplanes `C^⊥`. Fixing a strict sign for every `D·C` cuts out an
//! intersection of open half-spaces with a convex cone, which is convex and
//! hence connected, so strict sign vectors label Weyl chambers exactly.
//! Zariski chambers are labelled by the support of the negative part.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::exec::{self, Execution};
use crate::lattice::{matrix_is_negative_definite, LatticeVector, RationalVector};
use crate::linalg::Rational;
use crate::surface::{ModelError, SurfaceModel};
use crate::zariski::{self, ZariskiError, ZariskiSplit};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChamberError {
    #[error("class is not big")]
    NotBig,
    #[error("class lies on the wall of curve `{curve}`")]
    OnWall { curve: String },
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Zariski(#[from] ZariskiError),
    #[error("curves `{c1}` and `{c2}` do not span a negative-definite lattice")]
    PairNotNegativeDefinite { c1: String, c2: String },
    #[error("curves `{c1}` and `{c2}` are disjoint")]
    PairDisjoint { c1: String, c2: String },
    #[error("census size must be at least 1")]
    EmptyCensus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_char(self.symbol())
    }
}

/// Strict sign of `D·C` for every declared curve, in curve order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylSignature {
    entries: Vec<(String, Sign)>,
}

impl WeylSignature {
    pub fn entries(&self) -> &[(String, Sign)] {
        &self.entries
    }

    pub fn sign(&self, curve: &str) -> Option<Sign> {
        self.entries
            .iter()
            .find(|(n, _)| n == curve)
            .map(|&(_, s)| s)
    }

    /// Compact form such as `"--+"`.
    pub fn sign_string(&self) -> String {
        self.entries.iter().map(|(_, s)| s.symbol()).collect()
    }

    pub fn negative_curves(&self) -> Vec<&str> {
        self.entries
            .iter()
            .filter(|(_, s)| *s == Sign::Negative)
            .map(|(n, _)| n.as_str())
            .collect()
    }
}

impl fmt::Display for WeylSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (n, s)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{n}:{}", s.symbol())?;
        }
        Ok(())
    }
}

/// Zariski chamber label of a big class.
///
/// `boundary_null` lists curves outside the support with `P·C = 0`; it is
/// reported as computed and not interpreted as an interior test.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChamberLabel {
    pub support: Vec<String>,
    pub boundary_null: Vec<String>,
}

fn signature_from_products(
    model: &SurfaceModel,
    dc: &[Rational],
) -> Result<WeylSignature, ChamberError> {
    let mut entries = Vec::with_capacity(dc.len());
    for (c, v) in model.curves().iter().zip(dc) {
        if v.is_zero() {
            return Err(ChamberError::OnWall {
                curve: c.name().to_string(),
            });
        }
        let s = if v.is_negative() {
            Sign::Negative
        } else {
            Sign::Positive
        };
        entries.push((c.name().to_string(), s));
    }
    Ok(WeylSignature { entries })
}

fn label_from_split(model: &SurfaceModel, split: &ZariskiSplit) -> ChamberLabel {
    let support_idx = split.support_indices();
    let boundary_null = (0..model.curves().len())
        .filter(|i| !support_idx.contains(i))
        .filter(|&i| split.positive().dot_int(model.curve_image(i)).is_zero())
        .map(|i| model.curves()[i].name().to_string())
        .collect();
    ChamberLabel {
        support: split.support().into_iter().map(String::from).collect(),
        boundary_null,
    }
}

fn big_split(model: &SurfaceModel, d: &RationalVector) -> Result<ZariskiSplit, ChamberError> {
    match zariski::zariski_decompose(model, d) {
        Ok(split) if zariski::split_is_big(model, &split) => Ok(split),
        Ok(_) | Err(ZariskiError::NotPseudoEffective { .. }) => Err(ChamberError::NotBig),
        Err(e) => Err(e.into()),
    }
}

pub fn weyl_signature(
    model: &SurfaceModel,
    d: &RationalVector,
) -> Result<WeylSignature, ChamberError> {
    big_split(model, d)?;
    signature_from_products(model, &zariski::curve_products(model, d))
}

pub fn chamber_label(
    model: &SurfaceModel,
    d: &RationalVector,
) -> Result<ChamberLabel, ChamberError> {
    Ok(label_from_split(model, &big_split(model, d)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionVerdict {
    pub determined: bool,
    /// Meeting pairs with `(C1·C2)² < C1²·C2²`.
    pub witnesses: Vec<(String, String)>,
    /// Copied from the model; when false the verdict only concerns the
    /// declared curves.
    pub curve_list_complete: bool,
}

/// Decides whether Zariski chambers are numerically determined: every pair
/// of meeting negative curves must satisfy `(C1·C2)² ≥ C1²·C2²`.
pub fn numerically_determined(model: &SurfaceModel) -> CriterionVerdict {
    let n = model.curves().len();
    let mut witnesses = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let c = model.curve_product(i, j);
            if !c.is_positive() {
                continue;
            }
            let lhs = c * c;
            let rhs = model.curve_product(i, i) * model.curve_product(j, j);
            if lhs < rhs {
                witnesses.push((
                    model.curves()[i].name().to_string(),
                    model.curves()[j].name().to_string(),
                ));
            }
        }
    }
    CriterionVerdict {
        determined: witnesses.is_empty(),
        witnesses,
        curve_list_complete: model.metadata().curve_list_complete,
    }
}

/// True iff every negative-definite pair of declared curves is disjoint.
pub fn pairwise_disjoint_support_property(model: &SurfaceModel) -> bool {
    let n = model.curves().len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            !matrix_is_negative_definite(&model.curve_submatrix(&[i, j]))
                || model.curve_product(i, j).is_zero()
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub t1_c1: BigInt,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub t1_c2: BigInt,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub d1_c1: BigInt,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub d1_c2: BigInt,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub d2_c1: BigInt,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub d2_c2: BigInt,
    pub d1_label: ChamberLabel,
    pub d2_label: ChamberLabel,
    /// Full Weyl signatures; `None` when the class lies on some other wall.
    pub d1_signature: Option<WeylSignature>,
    pub d2_signature: Option<WeylSignature>,
    pub checks: Vec<Check>,
}

impl CounterexampleReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Two big classes in the same Zariski chamber but different Weyl chambers,
/// built from a meeting pair `C1, C2` with negative-definite Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub c1: String,
    pub c2: String,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub b: BigInt,
    #[serde(serialize_with = "crate::serialize_bigint")]
    pub c: BigInt,
    pub t1: LatticeVector,
    pub d1: LatticeVector,
    pub d2: LatticeVector,
    pub report: CounterexampleReport,
}

/// `T_k = (ab − c²)H + k[(b·H.C1 + c·H.C2)C1 + (a·H.C2 + c·H.C1)C2]`
/// with `a = −C1²`, `b = −C2²`, `c = C1·C2`.
pub fn t_k(model: &SurfaceModel, i: usize, j: usize, k: i64) -> LatticeVector {
    let (a, b, c) = pair_constants(model, i, j);
    let (hc1, hc2) = (model.ample_product(i), model.ample_product(j));
    let k = BigInt::from(k);
    let lead = &a * &b - &c * &c;
    let coef1 = &k * (&b * &hc1 + &c * &hc2);
    let coef2 = &k * (&a * &hc2 + &c * &hc1);
    combine(model, &lead, i, &coef1, j, &coef2)
}

fn pair_constants(model: &SurfaceModel, i: usize, j: usize) -> (BigInt, BigInt, BigInt) {
    (
        -model.curve_product(i, i).clone(),
        -model.curve_product(j, j).clone(),
        model.curve_product(i, j).clone(),
    )
}

fn combine(
    model: &SurfaceModel,
    lead: &BigInt,
    i: usize,
    ci: &BigInt,
    j: usize,
    cj: &BigInt,
) -> LatticeVector {
    let h = model.ample().scaled(lead);
    let v1 = model.curves()[i].coords().scaled(ci);
    let v2 = model.curves()[j].coords().scaled(cj);
    &(&h + &v1) + &v2
}

pub fn construct_counterexample(
    model: &SurfaceModel,
    c1: &str,
    c2: &str,
) -> Result<Counterexample, ChamberError> {
    let i = model.curve_index(c1)?;
    let j = model.curve_index(c2)?;
    let (a, b, c) = pair_constants(model, i, j);
    let names = || (c1.to_string(), c2.to_string());
    if c.is_zero() {
        let (c1, c2) = names();
        return Err(ChamberError::PairDisjoint { c1, c2 });
    }
    if i == j || !matrix_is_negative_definite(&model.curve_submatrix(&[i, j])) {
        let (c1, c2) = names();
        return Err(ChamberError::PairNotNegativeDefinite { c1, c2 });
    }

    let t1 = t_k(model, i, j, 1);
    let d1 = t_k(model, i, j, 2);
    let (hc1, hc2) = (model.ample_product(i), model.ample_product(j));
    let lead = &a * &b - &c * &c;
    let d2 = combine(
        model,
        &lead,
        i,
        &(&b * &hc1 + &c * &hc2 + &c),
        j,
        &(&a * &hc2 + &c * &hc1 + BigInt::from(2) * &a),
    );

    let form = model.form();
    let ci = model.curves()[i].coords();
    let cj = model.curves()[j].coords();
    let pair = |v: &LatticeVector, w: &LatticeVector| form.pair_int(v, w).expect("model rank");
    let (t1_c1, t1_c2) = (pair(&t1, ci), pair(&t1, cj));
    let (d1_c1, d1_c2) = (pair(&d1, ci), pair(&d1, cj));
    let (d2_c1, d2_c2) = (pair(&d2, ci), pair(&d2, cj));

    let d1_label = chamber_label(model, &d1.to_rational())?;
    let d2_label = chamber_label(model, &d2.to_rational())?;
    let d1_signature = weyl_signature(model, &d1.to_rational()).ok();
    let d2_signature = weyl_signature(model, &d2.to_rational()).ok();
    let pair_names = vec![c1.to_string(), c2.to_string()];
    let mut expected_support = pair_names.clone();
    if j < i {
        expected_support.reverse();
    }
    // the pair signs alone already separate the Weyl chambers
    let signs_differ =
        (d1_c1.is_negative(), d1_c2.is_negative()) != (d2_c1.is_negative(), d2_c2.is_negative());

    let check = |name: &str, passed: bool| Check {
        name: name.to_string(),
        passed,
    };
    let checks = vec![
        check("T1.C1 = 0", t1_c1.is_zero()),
        check("T1.C2 = 0", t1_c2.is_zero()),
        check("D1.C1 < 0", d1_c1.is_negative()),
        check("D1.C2 < 0", d1_c2.is_negative()),
        check("D2.C1 = ac > 0", d2_c1 == &a * &c && d2_c1.is_positive()),
        check(
            "D2.C2 = c^2 - 2ab < 0",
            d2_c2 == &c * &c - BigInt::from(2) * &a * &b && d2_c2.is_negative(),
        ),
        check(
            "supp N(D1) = {C1, C2}",
            d1_label.support == expected_support,
        ),
        check(
            "supp N(D2) = {C1, C2}",
            d2_label.support == expected_support,
        ),
        check("Weyl signatures differ", signs_differ),
    ];

    Ok(Counterexample {
        c1: c1.to_string(),
        c2: c2.to_string(),
        a,
        b,
        c,
        t1,
        d1,
        d2,
        report: CounterexampleReport {
            t1_c1,
            t1_c2,
            d1_c1,
            d1_c2,
            d2_c1,
            d2_c2,
            d1_label,
            d2_label,
            d1_signature,
            d2_signature,
            checks,
        },
    })
}

/// Random rational class `H + Σ r_C·C` around the ample class: each curve
/// joins with probability ½ and coefficient `k/q`, `q ∈ 1..=4`,
/// `k ∈ −q..=2q`.
pub fn sample_near_ample<R: Rng>(model: &SurfaceModel, rng: &mut R) -> RationalVector {
    let q: i64 = rng.gen_range(1..=4);
    let mut d = model.ample().to_rational();
    for c in model.curves() {
        if rng.gen_bool(0.5) {
            let k: i64 = rng.gen_range(-q..=2 * q);
            if k != 0 {
                d = d.add_scaled_int(&Rational::new(k.into(), q.into()), c.coords());
            }
        }
    }
    d
}

/// Deterministic per-index generator: stream `index` of the seeded ChaCha8.
pub fn indexed_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusSample {
    pub divisor: RationalVector,
    pub signature: WeylSignature,
    pub label: ChamberLabel,
    pub injected: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignatureCount {
    pub signs: String,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportSummary {
    pub support: Vec<String>,
    pub signatures: Vec<SignatureCount>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Census {
    pub model: String,
    pub seed: u64,
    pub requested: usize,
    /// Curve order used by the sign strings in `summary`.
    pub curves: Vec<String>,
    pub attempts: usize,
    pub skipped_not_big: usize,
    pub skipped_on_wall: usize,
    pub samples: Vec<CensusSample>,
    pub summary: Vec<SupportSummary>,
}

impl Census {
    /// Supports that occur with more than one Weyl signature.
    pub fn split_supports(&self) -> Vec<&SupportSummary> {
        self.summary
            .iter()
            .filter(|s| s.signatures.len() > 1)
            .collect()
    }
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub n: usize,
    pub seed: u64,
    /// Classes evaluated before the random draws (e.g. counterexample
    /// divisors); accepted ones count toward `n`.
    pub fixtures: Vec<RationalVector>,
    /// Draw budget is `max_attempts_factor · n`.
    pub max_attempts_factor: usize,
    pub execution: Execution,
}

impl CensusConfig {
    pub fn new(n: usize, seed: u64) -> Self {
        Self {
            n,
            seed,
            fixtures: Vec::new(),
            max_attempts_factor: 50,
            execution: Execution::default(),
        }
    }
}

enum Outcome {
    Accepted(CensusSample),
    NotBig,
    OnWall,
}

fn classify(model: &SurfaceModel, d: RationalVector, injected: bool) -> Outcome {
    let split = match big_split(model, &d) {
        Ok(s) => s,
        Err(_) => return Outcome::NotBig,
    };
    match signature_from_products(model, &zariski::curve_products(model, &d)) {
        Ok(signature) => Outcome::Accepted(CensusSample {
            label: label_from_split(model, &split),
            divisor: d,
            signature,
            injected,
        }),
        Err(_) => Outcome::OnWall,
    }
}

pub fn sample_chamber_census(
    model: &SurfaceModel,
    n: usize,
    seed: u64,
) -> Result<Census, ChamberError> {
    census_with(model, &CensusConfig::new(n, seed))
}

/// Seeded census of `n` big off-wall classes, fixtures first.
///
/// Candidate `i` is drawn from [`indexed_rng`]`(seed, i)` and candidates are
/// consumed in index order, so the result is identical in sequential and
/// parallel mode.
pub fn census_with(model: &SurfaceModel, config: &CensusConfig) -> Result<Census, ChamberError> {
    if config.n == 0 {
        return Err(ChamberError::EmptyCensus);
    }
    let mut census = Census {
        model: model.name().to_string(),
        seed: config.seed,
        requested: config.n,
        curves: model
            .curves()
            .iter()
            .map(|c| c.name().to_string())
            .collect(),
        attempts: 0,
        skipped_not_big: 0,
        skipped_on_wall: 0,
        samples: Vec::new(),
        summary: Vec::new(),
    };
    let record = |census: &mut Census, outcome: Outcome| match outcome {
        Outcome::Accepted(s) => census.samples.push(s),
        Outcome::NotBig => census.skipped_not_big += 1,
        Outcome::OnWall => census.skipped_on_wall += 1,
    };
    for outcome in exec::map_slice(config.execution, &config.fixtures, |d| {
        classify(model, d.clone(), true)
    }) {
        record(&mut census, outcome);
    }

    let budget = config.n.saturating_mul(config.max_attempts_factor.max(1));
    let chunk = config.n.clamp(64, 4096);
    // accepted fixtures count toward n
    let mut accepted = census.samples.len();
    let mut next = 0;
    'draw: while accepted < config.n && next < budget {
        let end = (next + chunk).min(budget);
        let outcomes = exec::map_range(config.execution, next, end, |i| {
            let mut rng = indexed_rng(config.seed, i as u64);
            classify(model, sample_near_ample(model, &mut rng), false)
        });
        for outcome in outcomes {
            census.attempts += 1;
            let ok = matches!(outcome, Outcome::Accepted(_));
            record(&mut census, outcome);
            if ok {
                accepted += 1;
                if accepted == config.n {
                    break 'draw;
                }
            }
        }
        next = end;
    }

    let mut table: BTreeMap<Vec<String>, BTreeMap<String, usize>> = BTreeMap::new();
    for s in &census.samples {
        *table
            .entry(s.label.support.clone())
            .or_default()
            .entry(s.signature.sign_string())
            .or_default() += 1;
    }
    census.summary = table
        .into_iter()
        .map(|(support, sigs)| SupportSummary {
            support,
            signatures: sigs
                .into_iter()
                .map(|(signs, count)| SignatureCount { signs, count })
                .collect(),
        })
        .collect();
    Ok(census)
}
