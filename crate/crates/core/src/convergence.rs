//! Finite sweeps of `f^m / f^1` along a family and the ε-threshold search.

use std::ops::RangeInclusive;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::exact::{
    distance_to_uniform, modular_reduce, total_faces, ExactRational, FVector, ModularVector,
};
use crate::families::{family_fvector, FamilySpec};
use crate::{Error, Result};

/// One family member evaluated at modulus `m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepPoint {
    pub k: usize,
    pub fvector: FVector,
    pub modular: ModularVector,
    pub total: BigInt,
    pub ratios: Vec<ExactRational>,
    pub distance: ExactRational,
}

impl SweepPoint {
    pub fn dim(&self) -> usize {
        self.fvector.dim()
    }
}

pub fn evaluate(spec: &FamilySpec, m: usize, k: usize) -> Result<SweepPoint> {
    let fvector = family_fvector(spec, k)?;
    let modular = modular_reduce(&fvector, m)?;
    let ratios = modular.ratios()?;
    let distance = distance_to_uniform(&modular)?;
    Ok(SweepPoint {
        k,
        total: total_faces(&fvector),
        fvector,
        modular,
        ratios,
        distance,
    })
}

/// Evaluates every `k` in the range. Members are computed in parallel; the
/// result is ordered by `k` and the first error (smallest `k`) wins.
pub fn sweep(spec: &FamilySpec, m: usize, ks: RangeInclusive<usize>) -> Result<Vec<SweepPoint>> {
    if m < 1 {
        return Err(Error::InvalidModulus(m));
    }
    if ks.is_empty() {
        return Err(Error::InvalidParams("empty k range".into()));
    }
    ks.into_par_iter().map(|k| evaluate(spec, m, k)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    /// Every scanned `k' >= K` has distance `< ε`.
    Reached(usize),
    /// The last scanned member is still at distance `>= ε`.
    NotReached,
}

/// Smallest `K` in the range after which the distance stays below `eps` for
/// the rest of the scan.
pub fn threshold(
    spec: &FamilySpec,
    m: usize,
    eps: &ExactRational,
    ks: RangeInclusive<usize>,
) -> Result<Threshold> {
    if *eps <= ExactRational::from_integer(0.into()) {
        return Err(Error::InvalidParams("epsilon must be positive".into()));
    }
    let points = sweep(spec, m, ks)?;
    Ok(threshold_of(&points, eps))
}

pub fn threshold_of(points: &[SweepPoint], eps: &ExactRational) -> Threshold {
    match points.iter().rposition(|p| p.distance >= *eps) {
        None => Threshold::Reached(points[0].k),
        Some(last) if last + 1 < points.len() => Threshold::Reached(points[last + 1].k),
        Some(_) => Threshold::NotReached,
    }
}
