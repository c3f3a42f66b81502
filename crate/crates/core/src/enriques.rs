//! Fibration arithmetic and the Num lattice of an Enriques surface.
//!
//! Fibrations are declared data: a multiset of Kodaira types plus the two
//! half-pencils. Nothing here derives fibrations from a lattice.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chambers::indexed_rng;
use crate::exec::{self, Execution};
use crate::lattice::{
    find_isotropic_primitive, orthogonal_complement, reflection, signature, IntersectionForm,
    LatticeError, LatticeVector, Signature, DEFAULT_ISOTROPIC_BOUND,
};
use crate::surface::enriques_lattice;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnriquesError {
    #[error("unknown Kodaira type `{0}`")]
    InvalidKodaira(String),
    #[error("unknown half-pencil `{0}` (expected `irr` or `I_k` with k >= 1)")]
    InvalidHalfPencil(String),
    #[error("expected exactly 2 half-pencils, found {0}")]
    HalfPencilCount(usize),
    #[error("inconsistent fibration: {0}")]
    InconsistentFibration(String),
    #[error("curve {index} has self-intersection {self_intersection}, expected -2")]
    NotMinusTwo {
        index: usize,
        self_intersection: BigInt,
    },
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("no primitive isotropic class with coordinates bounded by {bound}")]
    IsotropicNotFoundInBound { bound: u32 },
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Kodaira type of a singular fiber. `I(n)` needs `n >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum KodairaType {
    I(u32),
    II,
    III,
    IV,
    IStar(u32),
    IIStar,
    IIIStar,
    IVStar,
}

impl KodairaType {
    pub fn component_count(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::II => 1,
            KodairaType::III => 2,
            KodairaType::IV => 3,
            KodairaType::IStar(n) => 5 + n,
            KodairaType::IVStar => 7,
            KodairaType::IIIStar => 8,
            KodairaType::IIStar => 9,
        }
    }

    pub fn euler_number(self) -> u32 {
        match self {
            KodairaType::I(n) => n,
            KodairaType::II => 2,
            KodairaType::III => 3,
            KodairaType::IV => 4,
            KodairaType::IStar(n) => n + 6,
            KodairaType::IVStar => 8,
            KodairaType::IIIStar => 9,
            KodairaType::IIStar => 10,
        }
    }

    pub fn is_reducible(self) -> bool {
        self.component_count() > 1
    }

    /// The reducible types used by the exhaustive checks:
    /// `I2..=I9, III, IV, I*0, IV*, III*, II*`.
    pub fn reducible_palette() -> Vec<KodairaType> {
        let mut v: Vec<_> = (2..=9).map(KodairaType::I).collect();
        v.extend([
            KodairaType::III,
            KodairaType::IV,
            KodairaType::IStar(0),
            KodairaType::IVStar,
            KodairaType::IIIStar,
            KodairaType::IIStar,
        ]);
        v
    }
}

pub fn component_count(t: KodairaType) -> u32 {
    t.component_count()
}

impl fmt::Display for KodairaType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KodairaType::I(n) => write!(f, "I{n}"),
            KodairaType::II => write!(f, "II"),
            KodairaType::III => write!(f, "III"),
            KodairaType::IV => write!(f, "IV"),
            KodairaType::IStar(n) => write!(f, "I*{n}"),
            KodairaType::IIStar => write!(f, "II*"),
            KodairaType::IIIStar => write!(f, "III*"),
            KodairaType::IVStar => write!(f, "IV*"),
        }
    }
}

/// Accepts `I3`, `I_3`, `I*0`, `I0*`, `I_0^*`, `II*`, `IV` and so on.
impl FromStr for KodairaType {
    type Err = EnriquesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EnriquesError::InvalidKodaira(s.to_string());
        let t: String = s
            .chars()
            .filter(|c| !matches!(c, '_' | '^' | ' '))
            .collect::<String>()
            .to_ascii_uppercase();
        let star = t.contains('*');
        let core = t.replace('*', "");
        if star && t.matches('*').count() > 1 {
            return Err(bad());
        }
        let fixed = match (core.as_str(), star) {
            ("II", false) => Some(KodairaType::II),
            ("III", false) => Some(KodairaType::III),
            ("IV", false) => Some(KodairaType::IV),
            ("II", true) => Some(KodairaType::IIStar),
            ("III", true) => Some(KodairaType::IIIStar),
            ("IV", true) => Some(KodairaType::IVStar),
            _ => None,
        };
        if let Some(k) = fixed {
            return Ok(k);
        }
        let digits = core.strip_prefix('I').ok_or_else(bad)?;
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: u32 = digits.parse().map_err(|_| bad())?;
        match star {
            true => Ok(KodairaType::IStar(n)),
            false if n >= 1 => Ok(KodairaType::I(n)),
            false => Err(bad()),
        }
    }
}

impl TryFrom<String> for KodairaType {
    type Error = EnriquesError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<KodairaType> for String {
    fn from(k: KodairaType) -> String {
        k.to_string()
    }
}

/// A half-pencil: smooth (`irr`) or a reducible cycle of type `I_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum HalfPencil {
    Irreducible,
    Reducible(u32),
}

impl HalfPencil {
    pub fn component_count(self) -> u32 {
        match self {
            HalfPencil::Irreducible => 1,
            HalfPencil::Reducible(k) => k,
        }
    }

    pub fn euler_number(self) -> u32 {
        match self {
            HalfPencil::Irreducible => 0,
            HalfPencil::Reducible(k) => k,
        }
    }
}

impl fmt::Display for HalfPencil {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfPencil::Irreducible => write!(f, "irr"),
            HalfPencil::Reducible(k) => write!(f, "I_{k}"),
        }
    }
}

impl FromStr for HalfPencil {
    type Err = EnriquesError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("irr") || t.eq_ignore_ascii_case("irreducible") {
            return Ok(HalfPencil::Irreducible);
        }
        match t.parse::<KodairaType>() {
            Ok(KodairaType::I(k)) => Ok(HalfPencil::Reducible(k)),
            _ => Err(EnriquesError::InvalidHalfPencil(s.to_string())),
        }
    }
}

impl TryFrom<String> for HalfPencil {
    type Error = EnriquesError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<HalfPencil> for String {
    fn from(h: HalfPencil) -> String {
        h.to_string()
    }
}

#[derive(Deserialize)]
struct RawFibration {
    fibers: Vec<KodairaType>,
    #[serde(default = "default_half_pencils")]
    half_pencils: Vec<HalfPencil>,
}

fn default_half_pencils() -> Vec<HalfPencil> {
    vec![HalfPencil::Irreducible; 2]
}

/// Singular fibers of one elliptic fibration plus its two half-pencils.
///
/// JSON: `{"fibers": ["I3", "II"], "half_pencils": ["irr", "I_2"]}`;
/// `half_pencils` defaults to two smooth ones.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawFibration")]
pub struct FibrationData {
    fibers: Vec<KodairaType>,
    half_pencils: [HalfPencil; 2],
}

impl TryFrom<RawFibration> for FibrationData {
    type Error = EnriquesError;
    fn try_from(raw: RawFibration) -> Result<Self, Self::Error> {
        let n = raw.half_pencils.len();
        let half_pencils: [HalfPencil; 2] = raw
            .half_pencils
            .try_into()
            .map_err(|_| EnriquesError::HalfPencilCount(n))?;
        if half_pencils.contains(&HalfPencil::Reducible(0)) {
            return Err(EnriquesError::InvalidHalfPencil("I_0".into()));
        }
        Ok(FibrationData {
            fibers: raw.fibers,
            half_pencils,
        })
    }
}

impl FibrationData {
    pub fn new(
        fibers: Vec<KodairaType>,
        half_pencils: [HalfPencil; 2],
    ) -> Result<Self, EnriquesError> {
        Self::try_from(RawFibration {
            fibers,
            half_pencils: half_pencils.to_vec(),
        })
    }

    /// Fibers with both half-pencils smooth.
    pub fn with_fibers(fibers: Vec<KodairaType>) -> Self {
        FibrationData {
            fibers,
            half_pencils: [HalfPencil::Irreducible; 2],
        }
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn fibers(&self) -> &[KodairaType] {
        &self.fibers
    }

    pub fn half_pencils(&self) -> &[HalfPencil; 2] {
        &self.half_pencils
    }

    pub fn has_reducible_half_pencil(&self) -> bool {
        self.half_pencils
            .iter()
            .any(|h| matches!(h, HalfPencil::Reducible(_)))
    }

    /// Sum of Euler numbers over fibers and half-pencils.
    pub fn euler_sum(&self) -> u32 {
        self.fibers.iter().map(|f| f.euler_number()).sum::<u32>()
            + self
                .half_pencils
                .iter()
                .map(|h| h.euler_number())
                .sum::<u32>()
    }

    /// With `strict`, requires the Euler sum of a rational elliptic surface.
    pub fn check(&self, strict: bool) -> Result<(), EnriquesError> {
        let e = self.euler_sum();
        if strict && e != 12 {
            return Err(EnriquesError::InconsistentFibration(format!(
                "Euler numbers sum to {e}, expected 12"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FibrationData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fibers: Vec<String> = self.fibers.iter().map(|k| k.to_string()).collect();
        write!(
            f,
            "{{{}}} / {}, {}",
            fibers.join(", "),
            self.half_pencils[0],
            self.half_pencils[1]
        )
    }
}

pub fn max_fiber_components(f: &FibrationData) -> u32 {
    f.fibers
        .iter()
        .map(|k| k.component_count())
        .chain(f.half_pencils.iter().map(|h| h.component_count()))
        .max()
        .unwrap_or(1)
}

/// `t`: rank of the trivial lattice minus 2.
pub fn trivial_lattice_excess(f: &FibrationData) -> u32 {
    f.fibers
        .iter()
        .map(|k| k.component_count() - 1)
        .chain(f.half_pencils.iter().map(|h| h.component_count() - 1))
        .sum()
}

/// `8 − t` on the rational Jacobian surface.
pub fn mordell_weil_rank_rational(f: &FibrationData) -> Result<u32, EnriquesError> {
    let t = trivial_lattice_excess(f);
    8u32.checked_sub(t)
        .ok_or_else(|| EnriquesError::InconsistentFibration(format!("t = {t} exceeds 8")))
}

/// Singular fibers on the K3 double cover.
pub fn k3_cover_fibers(f: &FibrationData) -> Vec<KodairaType> {
    let mut out: Vec<KodairaType> = f.fibers.iter().flat_map(|&k| [k, k]).collect();
    out.extend(f.half_pencils.iter().filter_map(|h| match h {
        HalfPencil::Reducible(k) => Some(KodairaType::I(2 * k)),
        HalfPencil::Irreducible => None,
    }));
    out
}

/// Pieces of the Picard bound for the K3 cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PicardBound {
    pub t: u32,
    pub mordell_weil_rank: u32,
    /// Rank of the trivial lattice on the cover.
    pub cover_trivial_rank: u32,
    pub bound: u32,
}

pub fn picard_bound_chain(f: &FibrationData) -> Result<PicardBound, EnriquesError> {
    let t = trivial_lattice_excess(f);
    let mordell_weil_rank = mordell_weil_rank_rational(f)?;
    let cover_trivial_rank = 2 + k3_cover_fibers(f)
        .iter()
        .map(|k| k.component_count() - 1)
        .sum::<u32>();
    let bound = 10 + t;
    let chained = cover_trivial_rank + mordell_weil_rank;
    let ok = if f.has_reducible_half_pencil() {
        chained >= bound
    } else {
        cover_trivial_rank == 2 + 2 * t && chained == bound
    };
    if !ok {
        return Err(EnriquesError::InternalInvariant(format!(
            "cover chain {cover_trivial_rank} + {mordell_weil_rank} disagrees with 10 + {t}"
        )));
    }
    Ok(PicardBound {
        t,
        mordell_weil_rank,
        cover_trivial_rank,
        bound,
    })
}

/// Lower bound `10 + t` for the Picard number of the Jacobian of the cover.
pub fn picard_lower_bound_cover(f: &FibrationData) -> Result<u32, EnriquesError> {
    picard_bound_chain(f).map(|b| b.bound)
}

/// First `(i, j)`, `i < j` in lexicographic order, with `cᵢ·cⱼ = 1`.
pub fn meeting_minus2_pair(
    curves: &[LatticeVector],
    form: &IntersectionForm,
) -> Result<Option<(usize, usize)>, EnriquesError> {
    for (index, c) in curves.iter().enumerate() {
        let sq = form.square(c)?;
        if sq != BigInt::from(-2) {
            return Err(EnriquesError::NotMinusTwo {
                index,
                self_intersection: sq,
            });
        }
    }
    for i in 0..curves.len() {
        for j in i + 1..curves.len() {
            if form.pair_int(&curves[i], &curves[j])?.is_one() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineOutput {
    /// Saturated basis of the complement, in ambient coordinates.
    pub complement_basis: Vec<LatticeVector>,
    pub signature: Signature,
    /// Ambient coordinates of the isotropic class.
    pub isotropic: Option<LatticeVector>,
    /// Same class in the complement basis.
    pub isotropic_coords: Option<LatticeVector>,
    pub bound: u32,
}

impl PipelineOutput {
    pub fn require_isotropic(&self) -> Result<&LatticeVector, EnriquesError> {
        self.isotropic
            .as_ref()
            .ok_or(EnriquesError::IsotropicNotFoundInBound { bound: self.bound })
    }
}

pub fn complement_isotropic_pipeline(
    c1: &LatticeVector,
    c2: &LatticeVector,
) -> Result<PipelineOutput, EnriquesError> {
    complement_isotropic_with_bound(c1, c2, DEFAULT_ISOTROPIC_BOUND)
}

/// Complement of `span(c1, c2)` in `E8(−1) ⊕ U` and an isotropic class in it.
pub fn complement_isotropic_with_bound(
    c1: &LatticeVector,
    c2: &LatticeVector,
    bound: u32,
) -> Result<PipelineOutput, EnriquesError> {
    let form = enriques_lattice();
    for c in [c1, c2] {
        if c.len() != form.rank() {
            return Err(EnriquesError::PreconditionViolation(format!(
                "expected {} coordinates, found {}",
                form.rank(),
                c.len()
            )));
        }
    }
    let (s1, s2, p) = (form.square(c1)?, form.square(c2)?, form.pair_int(c1, c2)?);
    if s1 != BigInt::from(-2) || s2 != BigInt::from(-2) || !p.is_one() {
        return Err(EnriquesError::PreconditionViolation(format!(
            "need c1² = c2² = -2 and c1.c2 = 1, found {s1}, {s2}, {p}"
        )));
    }

    let basis = orthogonal_complement(&[c1.clone(), c2.clone()], &form)?;
    let restricted = form.restrict(&basis)?;
    let sig = signature(&restricted);
    if sig != Signature::new(1, 7, 0) {
        return Err(EnriquesError::InternalInvariant(format!(
            "complement has signature {sig}"
        )));
    }
    for b in &basis {
        if !form.pair_int(b, c1)?.is_zero() || !form.pair_int(b, c2)?.is_zero() {
            return Err(EnriquesError::InternalInvariant(
                "complement vector not orthogonal".into(),
            ));
        }
    }

    let isotropic_coords = find_isotropic_primitive(&restricted, bound);
    let isotropic = isotropic_coords.as_ref().map(|w| {
        let mut acc = LatticeVector::zero(form.rank());
        for (k, b) in w.coords().iter().zip(&basis) {
            if !k.is_zero() {
                acc = &acc + &b.scaled(k);
            }
        }
        acc
    });
    if let Some(v) = &isotropic {
        // the complement is saturated, so primitivity carries over
        if !form.square(v)?.is_zero() || !v.content().is_one() {
            return Err(EnriquesError::InternalInvariant(
                "isotropic recheck failed".into(),
            ));
        }
    }
    Ok(PipelineOutput {
        complement_basis: basis,
        signature: sig,
        isotropic,
        isotropic_coords,
        bound,
    })
}

pub fn pipeline_batch(
    pairs: &[(LatticeVector, LatticeVector)],
    bound: u32,
    exec: Execution,
) -> Vec<Result<PipelineOutput, EnriquesError>> {
    exec::map_slice(exec, pairs, |(a, b)| {
        complement_isotropic_with_bound(a, b, bound)
    })
}

/// The eight simple roots of `E8(−1)` padded into `E8(−1) ⊕ U`.
pub fn e8_simple_roots() -> Vec<LatticeVector> {
    (0..8).map(|i| LatticeVector::basis(10, i)).collect()
}

/// Adjacent pairs of the E8 Dynkin diagram, as basis indices.
pub const E8_EDGES: [(usize, usize); 7] = [(0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3)];

fn reflection_roots() -> Vec<LatticeVector> {
    let mut roots = e8_simple_roots();
    // f − g and α₀ + f, with f, g the hyperbolic basis
    let mut fg = vec![0i64; 10];
    fg[8] = 1;
    fg[9] = -1;
    roots.push(LatticeVector::from_i64(&fg));
    let mut af = vec![0i64; 10];
    af[0] = 1;
    af[8] = 1;
    roots.push(LatticeVector::from_i64(&af));
    roots
}

/// Seeded pairs of roots with product 1: an adjacent simple-root pair
/// moved by a random word of reflections. Pair `i` only depends on
/// `(seed, i)`.
pub fn sample_meeting_root_pairs(
    n: usize,
    seed: u64,
    max_word: usize,
) -> Vec<(LatticeVector, LatticeVector)> {
    let form = enriques_lattice();
    let roots = reflection_roots();
    let simple = e8_simple_roots();
    (0..n)
        .map(|i| {
            let mut rng = indexed_rng(seed, i as u64);
            let &(a, b) = E8_EDGES.choose(&mut rng).expect("nonempty");
            let (mut c1, mut c2) = (simple[a].clone(), simple[b].clone());
            for _ in 0..rng.gen_range(0..=max_word) {
                let r = roots.choose(&mut rng).expect("nonempty");
                c1 = reflection(&c1, r, &form).expect("root");
                c2 = reflection(&c2, r, &form).expect("root");
            }
            (c1, c2)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use KodairaType::*;

    #[test]
    fn component_table() {
        assert_eq!(component_count(I(2)), 2);
        assert_eq!(component_count(III), 2);
        assert_eq!(component_count(IIStar), 9);
        assert_eq!(component_count(IStar(0)), 5);
        assert_eq!(component_count(IStar(3)), 8);
        assert_eq!(component_count(IVStar), 7);
        assert_eq!(component_count(IIIStar), 8);
        assert_eq!(component_count(II), 1);
        assert_eq!(component_count(IV), 3);
    }

    #[test]
    fn parsing_and_display() {
        for (s, k) in [
            ("I3", I(3)),
            ("I_3", I(3)),
            ("i12", I(12)),
            ("I*0", IStar(0)),
            ("I0*", IStar(0)),
            ("I_0^*", IStar(0)),
            ("I*2", IStar(2)),
            ("II", II),
            ("III", III),
            ("IV", IV),
            ("II*", IIStar),
            ("III*", IIIStar),
            ("IV*", IVStar),
        ] {
            assert_eq!(s.parse::<KodairaType>().unwrap(), k, "{s}");
            assert_eq!(k.to_string().parse::<KodairaType>().unwrap(), k);
        }
        for bad in ["I0", "I", "V", "I**", "I-1", "", "IIII", "Ix"] {
            assert!(bad.parse::<KodairaType>().is_err(), "{bad}");
        }
        assert_eq!(
            "irr".parse::<HalfPencil>().unwrap(),
            HalfPencil::Irreducible
        );
        assert_eq!(
            "I_2".parse::<HalfPencil>().unwrap(),
            HalfPencil::Reducible(2)
        );
        assert!("III".parse::<HalfPencil>().is_err());
        assert!("I_0".parse::<HalfPencil>().is_err());
    }

    #[test]
    fn json_format() {
        let f =
            FibrationData::from_json(r#"{"fibers": ["I3", "II"], "half_pencils": ["irr", "I_2"]}"#)
                .unwrap();
        assert_eq!(f.fibers(), &[I(3), II]);
        assert_eq!(
            f.half_pencils(),
            &[HalfPencil::Irreducible, HalfPencil::Reducible(2)]
        );
        let back = serde_json::to_string(&f).unwrap();
        assert_eq!(
            back,
            r#"{"fibers":["I3","II"],"half_pencils":["irr","I_2"]}"#
        );
        assert_eq!(FibrationData::from_json(&back).unwrap(), f);
        assert!(FibrationData::from_json(r#"{"fibers": [], "half_pencils": ["irr"]}"#).is_err());
        assert!(FibrationData::from_json(r#"{"fibers": ["I0"]}"#).is_err());
        let d = FibrationData::from_json(r#"{"fibers": ["I2"]}"#).unwrap();
        assert_eq!(d.half_pencils(), &[HalfPencil::Irreducible; 2]);
    }

    #[test]
    fn max_components_and_excess() {
        let f = FibrationData::with_fibers(vec![I(2), I(1), II]);
        assert_eq!(max_fiber_components(&f), 2);
        assert_eq!(trivial_lattice_excess(&f), 1);
        let f = FibrationData::with_fibers(vec![I(3)]);
        assert_eq!(max_fiber_components(&f), 3);
        assert_eq!(trivial_lattice_excess(&f), 2);
        assert_eq!(
            trivial_lattice_excess(&FibrationData::with_fibers(vec![I(2), I(2)])),
            2
        );
        assert_eq!(
            trivial_lattice_excess(&FibrationData::with_fibers(vec![I(1), II])),
            0
        );
        let h = FibrationData::new(vec![], [HalfPencil::Reducible(2), HalfPencil::Irreducible])
            .unwrap();
        assert!(max_fiber_components(&h) >= 2);
        assert_eq!(max_fiber_components(&FibrationData::with_fibers(vec![])), 1);
    }

    #[test]
    fn mordell_weil() {
        assert_eq!(
            mordell_weil_rank_rational(&FibrationData::with_fibers(vec![I(3)])),
            Ok(6)
        );
        assert_eq!(
            mordell_weil_rank_rational(&FibrationData::with_fibers(vec![])),
            Ok(8)
        );
        let t9 = FibrationData::with_fibers(vec![IIStar, I(2), I(2)]);
        assert_eq!(trivial_lattice_excess(&t9), 10);
        assert!(matches!(
            mordell_weil_rank_rational(&t9),
            Err(EnriquesError::InconsistentFibration(_))
        ));
        let t9 = FibrationData::with_fibers(vec![I(10)]);
        assert!(mordell_weil_rank_rational(&t9).is_err());
    }

    #[test]
    fn cover_fibers() {
        assert_eq!(
            k3_cover_fibers(&FibrationData::with_fibers(vec![I(3)])),
            vec![I(3), I(3)]
        );
        let h = FibrationData::new(vec![], [HalfPencil::Reducible(2), HalfPencil::Irreducible])
            .unwrap();
        assert_eq!(k3_cover_fibers(&h), vec![I(4)]);
        assert!(k3_cover_fibers(&FibrationData::with_fibers(vec![])).is_empty());
    }

    #[test]
    fn picard_bounds() {
        assert_eq!(
            picard_lower_bound_cover(&FibrationData::with_fibers(vec![I(3)])),
            Ok(12)
        );
        assert_eq!(
            picard_lower_bound_cover(&FibrationData::with_fibers(vec![I(2)])),
            Ok(11)
        );
        assert_eq!(
            picard_lower_bound_cover(&FibrationData::with_fibers(vec![I(1), II])),
            Ok(10)
        );
        let h = FibrationData::new(
            vec![I(3)],
            [HalfPencil::Reducible(2), HalfPencil::Irreducible],
        )
        .unwrap();
        let chain = picard_bound_chain(&h).unwrap();
        assert_eq!(chain.t, 3);
        assert_eq!(chain.bound, 13);
        // I3 twice and I4: 2 + 2 + 2 + 3
        assert_eq!(chain.cover_trivial_rank, 9);
        assert!(picard_lower_bound_cover(&FibrationData::with_fibers(vec![IIStar; 2])).is_err());
    }

    #[test]
    fn euler_strict_flag() {
        let f = FibrationData::with_fibers(vec![I(1); 12]);
        assert_eq!(f.euler_sum(), 12);
        assert!(f.check(true).is_ok());
        let g = FibrationData::with_fibers(vec![I(3)]);
        assert!(g.check(false).is_ok());
        assert!(matches!(
            g.check(true),
            Err(EnriquesError::InconsistentFibration(_))
        ));
        let h = FibrationData::new(
            vec![IIStar],
            [HalfPencil::Reducible(1), HalfPencil::Irreducible],
        )
        .unwrap();
        assert_eq!(h.euler_sum(), 11);
        assert_eq!(IStar(2).euler_number(), 8);
    }

    #[test]
    fn meeting_pairs() {
        let form = enriques_lattice();
        let roots = e8_simple_roots();
        assert_eq!(meeting_minus2_pair(&roots, &form), Ok(Some((0, 2))));
        let orth = vec![roots[0].clone(), roots[1].clone(), roots[4].clone()];
        assert_eq!(meeting_minus2_pair(&orth, &form), Ok(None));
        assert_eq!(meeting_minus2_pair(&[], &form), Ok(None));
        let f = LatticeVector::basis(10, 8);
        assert!(matches!(
            meeting_minus2_pair(&[roots[0].clone(), f], &form),
            Err(EnriquesError::NotMinusTwo { index: 1, .. })
        ));
    }

    #[test]
    fn pipeline_on_adjacent_roots() {
        let roots = e8_simple_roots();
        for &(a, b) in &E8_EDGES {
            let out = complement_isotropic_pipeline(&roots[a], &roots[b]).unwrap();
            assert_eq!(out.signature, Signature::new(1, 7, 0));
            assert_eq!(out.complement_basis.len(), 8);
            let v = out.require_isotropic().unwrap();
            let form = enriques_lattice();
            assert!(form.square(v).unwrap().is_zero());
            assert!(v.content().is_one());
        }
    }

    #[test]
    fn pipeline_preconditions() {
        let roots = e8_simple_roots();
        assert!(matches!(
            complement_isotropic_pipeline(&roots[0], &roots[1]),
            Err(EnriquesError::PreconditionViolation(_))
        ));
        assert!(matches!(
            complement_isotropic_pipeline(&LatticeVector::from_i64(&[1, 0]), &roots[1]),
            Err(EnriquesError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn sampled_pairs_meet_once() {
        let form = enriques_lattice();
        let pairs = sample_meeting_root_pairs(20, 3, 8);
        for (a, b) in &pairs {
            assert_eq!(form.square(a).unwrap(), BigInt::from(-2));
            assert_eq!(form.square(b).unwrap(), BigInt::from(-2));
            assert!(form.pair_int(a, b).unwrap().is_one());
        }
        assert_eq!(pairs, sample_meeting_root_pairs(20, 3, 8));
    }

    #[test]
    fn isotropic_bound_zero_reports_not_found() {
        let roots = e8_simple_roots();
        let out = complement_isotropic_with_bound(&roots[0], &roots[2], 0).unwrap();
        assert_eq!(
            out.require_isotropic(),
            Err(EnriquesError::IsotropicNotFoundInBound { bound: 0 })
        );
    }
}
