//! Exact Zariski decompositions and chamber structure of the big cone on
//! numerical surface models, plus the lattice and fibration arithmetic
//! used for Enriques and K3 surfaces.
//!
//! A surface is modelled by its intersection lattice, a finite list of
//! negative curves and an ample class ([`surface::SurfaceModel`]). All
//! arithmetic is exact (`BigInt` / `BigRational`).

#![allow(clippy::needless_range_loop)]

pub mod chambers;
pub mod enriques;
pub mod exec;
pub mod lattice;
pub mod linalg;
pub mod model_io;
pub mod surface;
pub mod zariski;

pub use exec::Execution;
pub use lattice::{IntersectionForm, LatticeVector, RationalVector, Signature};
pub use linalg::Rational;
pub use surface::{CurveClass, ModelMetadata, SurfaceModel};
pub use zariski::{ZariskiError, ZariskiSplit};

/// Serializes an exact rational as `"p/q"` (or `"p"` when integral).
pub fn serialize_rational<S: serde::Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Serializes a `BigInt` as a JSON number inside the 53-bit safe range and
/// as a decimal string outside it.
pub fn serialize_bigint<S: serde::Serializer>(
    x: &num_bigint::BigInt,
    s: S,
) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&model_io::encode_integer(x), s)
}

/// Parses `"p/q"` or `"p"`; decimal points and exponents are rejected.
pub fn parse_rational(text: &str) -> Option<Rational> {
    let t = text.trim();
    if t.is_empty() || t.contains(['.', 'e', 'E']) {
        return None;
    }
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: num_bigint::BigInt = num.parse().ok()?;
    let den: num_bigint::BigInt = den.parse().ok()?;
    if num_traits::Zero::is_zero(&den) {
        return None;
    }
    Some(Rational::new(num, den))
}
