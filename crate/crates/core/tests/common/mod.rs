#![allow(dead_code)]

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use zariski_core::chambers::{indexed_rng, sample_near_ample};
use zariski_core::lattice::{IntersectionForm, LatticeVector, RationalVector};
use zariski_core::surface::{validate, CurveClass, ModelMetadata, SurfaceModel};
use zariski_core::Rational;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Class for oracle comparisons: half near the ample class, half with
/// arbitrary small rational coordinates (mostly not pseudo-effective).
pub fn sample_class(model: &SurfaceModel, rng: &mut ChaCha8Rng) -> RationalVector {
    if rng.gen_bool(0.5) {
        return sample_near_ample(model, rng);
    }
    let den: i64 = rng.gen_range(1..=3);
    RationalVector::new(
        (0..model.rank())
            .map(|_| q(rng.gen_range(-4 * den..=4 * den), den))
            .collect(),
    )
}

pub fn sample_classes(model: &SurfaceModel, n: usize, seed: u64) -> Vec<RationalVector> {
    (0..n)
        .map(|i| sample_class(model, &mut indexed_rng(seed, i as u64)))
        .collect()
}

/// Random valid model of rank 2..=4 on `diag(d, −1, …, −1)` with ample
/// `(1, 0, …)` and up to four negative curves meeting non-negatively.
pub fn random_model(seed: u64) -> SurfaceModel {
    let mut rng = indexed_rng(seed, 0);
    let rank = rng.gen_range(2..=4usize);
    let d: i64 = rng.gen_range(1..=3);
    let mut diag = vec![d];
    diag.extend(std::iter::repeat_n(-1, rank - 1));
    let form = IntersectionForm::diagonal(&diag);
    let ample = LatticeVector::basis(rank, 0);
    let mut curves: Vec<LatticeVector> = Vec::new();
    for _ in 0..40 {
        if curves.len() == 4 {
            break;
        }
        let mut c = vec![rng.gen_range(1..=2i64)];
        c.extend((1..rank).map(|_| rng.gen_range(-3..=3i64)));
        let v = LatticeVector::from_i64(&c);
        let sq = form.square(&v).unwrap();
        let hc = form.pair_int(&ample, &v).unwrap();
        if sq >= BigInt::from(0) || hc <= BigInt::from(0) {
            continue;
        }
        if curves.contains(&v) {
            continue;
        }
        if curves
            .iter()
            .any(|w| form.pair_int(w, &v).unwrap() < BigInt::from(0))
        {
            continue;
        }
        curves.push(v);
    }
    let curves = curves
        .into_iter()
        .enumerate()
        .map(|(i, v)| CurveClass::new(format!("C{i}"), v))
        .collect();
    let m = SurfaceModel::new(
        format!("random-{seed}"),
        form,
        curves,
        ample,
        ModelMetadata::default(),
    )
    .unwrap();
    assert!(validate(&m).is_empty(), "{:?}", validate(&m));
    m
}
