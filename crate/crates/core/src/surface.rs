//! Numerical surface models: a Néron–Severi lattice, a finite list of
//! negative curves and an ample class.
//!
//! The declared curve list is treated as the complete set of negative
//! curves for every downstream computation; `metadata.curve_list_complete`
//! records whether that is actually known for the surface being modelled.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{signature, IntersectionForm, LatticeError, LatticeVector, Signature};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("curve `{name}`: {source}")]
    CurveDimension { name: String, source: LatticeError },
    #[error("ample class: {0}")]
    AmpleDimension(LatticeError),
    #[error("surface_with_meeting_lines needs d >= 3, got {0}")]
    DegreeTooSmall(i64),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("unknown builtin model `{0}`")]
    UnknownModel(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveClass {
    name: String,
    coords: LatticeVector,
}

impl CurveClass {
    pub fn new(name: impl Into<String>, coords: LatticeVector) -> Self {
        Self {
            name: name.into(),
            coords,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn coords(&self) -> &LatticeVector {
        &self.coords
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelMetadata {
    pub curve_list_complete: bool,
    #[serde(default)]
    pub notes: String,
}

/// A surface as seen through its intersection lattice.
///
/// Immutable after construction. `gram · C` for each curve and for the
/// ample class are cached so that pairing a rational class against every
/// curve is a plain dot product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    name: String,
    form: IntersectionForm,
    curves: Vec<CurveClass>,
    ample: LatticeVector,
    metadata: ModelMetadata,
    curve_images: Vec<Vec<BigInt>>,
    ample_image: Vec<BigInt>,
    curve_gram: Vec<Vec<BigInt>>,
}

impl SurfaceModel {
    /// Builds a model; only dimensions are checked here, see [`validate`]
    /// for the geometric invariants.
    pub fn new(
        name: impl Into<String>,
        form: IntersectionForm,
        curves: Vec<CurveClass>,
        ample: LatticeVector,
        metadata: ModelMetadata,
    ) -> Result<Self, ModelError> {
        let curve_images = curves
            .iter()
            .map(|c| {
                form.apply(&c.coords)
                    .map_err(|source| ModelError::CurveDimension {
                        name: c.name.clone(),
                        source,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ample_image = form.apply(&ample).map_err(ModelError::AmpleDimension)?;
        let curve_gram = curve_images
            .iter()
            .map(|img| {
                curves
                    .iter()
                    .map(|c| crate::lattice::dot_int(img, c.coords.coords()))
                    .collect()
            })
            .collect();
        Ok(Self {
            name: name.into(),
            form,
            curves,
            ample,
            metadata,
            curve_images,
            ample_image,
            curve_gram,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn form(&self) -> &IntersectionForm {
        &self.form
    }

    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    pub fn curves(&self) -> &[CurveClass] {
        &self.curves
    }

    pub fn ample(&self) -> &LatticeVector {
        &self.ample
    }

    pub fn metadata(&self) -> &ModelMetadata {
        &self.metadata
    }

    pub fn curve_index(&self, name: &str) -> Result<usize, ModelError> {
        self.curves
            .iter()
            .position(|c| c.name == name)
            .ok_or_else(|| ModelError::UnknownCurve(name.to_string()))
    }

    pub fn curve(&self, name: &str) -> Result<&CurveClass, ModelError> {
        self.curve_index(name).map(|i| &self.curves[i])
    }

    /// Row `gram · C_i`.
    pub fn curve_image(&self, i: usize) -> &[BigInt] {
        &self.curve_images[i]
    }

    /// Row `gram · H`.
    pub fn ample_image(&self) -> &[BigInt] {
        &self.ample_image
    }

    /// `C_i · C_j`.
    pub fn curve_product(&self, i: usize, j: usize) -> &BigInt {
        &self.curve_gram[i][j]
    }

    /// Intersection matrix of the declared curves.
    pub fn curve_gram(&self) -> &[Vec<BigInt>] {
        &self.curve_gram
    }

    /// Intersection matrix of a subset of the declared curves.
    pub fn curve_submatrix(&self, subset: &[usize]) -> Vec<Vec<BigInt>> {
        subset
            .iter()
            .map(|&i| {
                subset
                    .iter()
                    .map(|&j| self.curve_gram[i][j].clone())
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Hodge index: the form must have signature `(1, rank-1, 0)`.
    NotHyperbolic {
        signature: Signature,
    },
    AmpleNotPositive {
        #[serde(serialize_with = "crate::serialize_bigint")]
        self_intersection: BigInt,
    },
    AmpleNotPositiveOnCurve {
        curve: usize,
        #[serde(serialize_with = "crate::serialize_bigint")]
        product: BigInt,
    },
    CurveNotNegative {
        curve: usize,
        #[serde(serialize_with = "crate::serialize_bigint")]
        self_intersection: BigInt,
    },
    CurvesMeetNegatively {
        first: usize,
        second: usize,
        #[serde(serialize_with = "crate::serialize_bigint")]
        product: BigInt,
    },
    DuplicateCurveClass {
        first: usize,
        second: usize,
    },
    DuplicateCurveName {
        first: usize,
        second: usize,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotHyperbolic { signature } => {
                write!(f, "signature {signature} violates the Hodge index theorem")
            }
            Violation::AmpleNotPositive { self_intersection } => {
                write!(
                    f,
                    "ample class has self-intersection {self_intersection} <= 0"
                )
            }
            Violation::AmpleNotPositiveOnCurve { curve, product } => {
                write!(f, "ample class meets curve #{curve} with {product} <= 0")
            }
            Violation::CurveNotNegative {
                curve,
                self_intersection,
            } => {
                write!(
                    f,
                    "curve #{curve} has self-intersection {self_intersection} >= 0"
                )
            }
            Violation::CurvesMeetNegatively {
                first,
                second,
                product,
            } => {
                write!(f, "curves #{first} and #{second} meet with {product} < 0")
            }
            Violation::DuplicateCurveClass { first, second } => {
                write!(f, "curves #{first} and #{second} have the same class")
            }
            Violation::DuplicateCurveName { first, second } => {
                write!(f, "curves #{first} and #{second} have the same name")
            }
        }
    }
}

/// Every violated model invariant, in a fixed order.
pub fn validate(model: &SurfaceModel) -> Vec<Violation> {
    let mut out = Vec::new();
    let sig = signature(model.form());
    if sig != Signature::new(1, model.rank() - 1, 0) {
        out.push(Violation::NotHyperbolic { signature: sig });
    }
    let h2 = crate::lattice::dot_int(model.ample_image(), model.ample().coords());
    if !h2.is_positive() {
        out.push(Violation::AmpleNotPositive {
            self_intersection: h2,
        });
    }
    let n = model.curves().len();
    for i in 0..n {
        let self_int = model.curve_product(i, i);
        if !self_int.is_negative() {
            out.push(Violation::CurveNotNegative {
                curve: i,
                self_intersection: self_int.clone(),
            });
        }
        let hc = crate::lattice::dot_int(model.ample_image(), model.curves()[i].coords().coords());
        if !hc.is_positive() {
            out.push(Violation::AmpleNotPositiveOnCurve {
                curve: i,
                product: hc,
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let p = model.curve_product(i, j);
            if p.is_negative() {
                out.push(Violation::CurvesMeetNegatively {
                    first: i,
                    second: j,
                    product: p.clone(),
                });
            }
            if model.curves()[i].coords() == model.curves()[j].coords() {
                out.push(Violation::DuplicateCurveClass {
                    first: i,
                    second: j,
                });
            }
            if model.curves()[i].name() == model.curves()[j].name() {
                out.push(Violation::DuplicateCurveName {
                    first: i,
                    second: j,
                });
            }
        }
    }
    out
}

/// Blow-up of ℙ² in six general points: the 27 lines on a smooth cubic.
///
/// Basis `e0, e1, …, e6` with `e0² = 1`, `eᵢ² = −1`. Lines are named
/// `E<i>` (exceptional curves), `F<ij>` (`e0 − eᵢ − eⱼ`) and `G<i>`
/// (`2e0 − Σ_{j≠i} eⱼ`). Ample class `−K = 3e0 − Σ eᵢ`.
pub fn cubic_surface() -> SurfaceModel {
    let form = IntersectionForm::diagonal(&[1, -1, -1, -1, -1, -1, -1]);
    let mut curves = Vec::with_capacity(27);
    for i in 1..=6 {
        curves.push(CurveClass::new(format!("E{i}"), LatticeVector::basis(7, i)));
    }
    for i in 1..=6 {
        for j in i + 1..=6 {
            let mut v = [0i64; 7];
            v[0] = 1;
            v[i] = -1;
            v[j] = -1;
            curves.push(CurveClass::new(
                format!("F{i}{j}"),
                LatticeVector::from_i64(&v),
            ));
        }
    }
    for i in 1..=6 {
        let mut v = [-1i64; 7];
        v[0] = 2;
        v[i] = 0;
        curves.push(CurveClass::new(
            format!("G{i}"),
            LatticeVector::from_i64(&v),
        ));
    }
    SurfaceModel::new(
        "cubic_surface",
        form,
        curves,
        LatticeVector::from_i64(&[3, -1, -1, -1, -1, -1, -1]),
        ModelMetadata {
            curve_list_complete: true,
            notes: "smooth cubic surface as the plane blown up in six points; the 27 lines are \
                    all of its negative curves"
                .into(),
        },
    )
    .expect("cubic model dimensions")
}

/// Minimal numerical model of a degree-`d` surface with two meeting lines.
///
/// Basis `(h, L1, L2)`: `h² = d`, `h·Lᵢ = 1`, `Lᵢ² = 2 − d`, `L1·L2 = 1`.
pub fn surface_with_meeting_lines(d: i64) -> Result<SurfaceModel, ModelError> {
    if d < 3 {
        return Err(ModelError::DegreeTooSmall(d));
    }
    let form =
        IntersectionForm::from_rows(&[[d, 1, 1], [1, 2 - d, 1], [1, 1, 2 - d]]).expect("symmetric");
    SurfaceModel::new(
        format!("surface_with_meeting_lines:{d}"),
        form,
        vec![
            CurveClass::new("L1", LatticeVector::from_i64(&[0, 1, 0])),
            CurveClass::new("L2", LatticeVector::from_i64(&[0, 0, 1])),
        ],
        LatticeVector::from_i64(&[1, 0, 0]),
        ModelMetadata {
            curve_list_complete: false,
            notes: format!(
                "degree-{d} hypersurface containing two meeting lines; only the two lines are \
                 declared, the surface may carry further negative curves"
            ),
        },
    )
}

/// Quartic K3 surface cut by a plane in a conic and two lines.
///
/// Basis `(h, l1, l2)`; the conic is `C = h − l1 − l2`.
pub fn quartic_y4() -> SurfaceModel {
    let form =
        IntersectionForm::from_rows(&[[4, 1, 1], [1, -2, 1], [1, 1, -2]]).expect("symmetric");
    SurfaceModel::new(
        "quartic_Y4",
        form,
        vec![
            CurveClass::new("l1", LatticeVector::from_i64(&[0, 1, 0])),
            CurveClass::new("l2", LatticeVector::from_i64(&[0, 0, 1])),
            CurveClass::new("C", LatticeVector::from_i64(&[1, -1, -1])),
        ],
        LatticeVector::from_i64(&[1, 0, 0]),
        ModelMetadata {
            curve_list_complete: true,
            notes: "smooth quartic with Picard group generated by a conic C and lines l1, l2 \
                    from one plane section; C, l1, l2 are its only (-2)-curves"
                .into(),
        },
    )
    .expect("Y4 model dimensions")
}

/// `E8(−1) ⊕ U`, the numerical lattice of an Enriques surface.
///
/// E8 is taken negative definite so that the total signature is `(1, 9)`.
pub fn enriques_lattice() -> IntersectionForm {
    IntersectionForm::e8_negative().direct_sum(&IntersectionForm::hyperbolic_plane())
}

/// Names accepted by [`builtin`], in catalog order.
pub fn builtin_names() -> Vec<String> {
    let mut names = vec!["cubic_surface".to_string(), "quartic_Y4".to_string()];
    names.extend((3..=6).map(|d| format!("surface_with_meeting_lines:{d}")));
    names
}

/// Looks up a catalog model by name (`surface_with_meeting_lines:<d>` takes any `d >= 3`).
pub fn builtin(name: &str) -> Result<SurfaceModel, ModelError> {
    match name {
        "cubic_surface" => Ok(cubic_surface()),
        "quartic_Y4" => Ok(quartic_y4()),
        _ => {
            let d = name
                .strip_prefix("surface_with_meeting_lines:")
                .and_then(|d| d.parse::<i64>().ok())
                .ok_or_else(|| ModelError::UnknownModel(name.to_string()))?;
            surface_with_meeting_lines(d)
        }
    }
}

/// Catalog models shipped with the crate.
pub fn catalog() -> Vec<SurfaceModel> {
    builtin_names()
        .iter()
        .map(|n| builtin(n).expect("catalog entry"))
        .collect()
}

impl SurfaceModel {
    /// `H · C_i`.
    pub fn ample_product(&self, i: usize) -> BigInt {
        crate::lattice::dot_int(&self.ample_image, self.curves[i].coords().coords())
    }

    /// Whether every declared curve has self-intersection exactly `k`.
    pub fn all_curves_have_square(&self, k: i64) -> bool {
        (0..self.curves.len()).all(|i| *self.curve_product(i, i) == BigInt::from(k))
    }

    /// Same model with a different curve list (used by random model generators).
    pub fn with_curves(&self, curves: Vec<CurveClass>) -> Result<Self, ModelError> {
        Self::new(
            self.name.clone(),
            self.form.clone(),
            curves,
            self.ample.clone(),
            self.metadata.clone(),
        )
    }
}
