//! Face vectors of the three polytope families: towers of prisms, pyramids
//! or bipyramids over a seed, stacked polytopes `S(v, d)` and cyclic
//! polytopes `C(v, d)`.
//!
//! Stacked and cyclic members are indexed by dimension `k >= 2` with a fixed
//! excess `n`, so member `k` has `v = k + 1 + n` vertices.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{binomial, FVector, PascalTable};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TowerKind {
    Prism,
    Pyramid,
    Bipyramid,
}

impl TowerKind {
    pub const ALL: [TowerKind; 3] = [TowerKind::Prism, TowerKind::Pyramid, TowerKind::Bipyramid];

    pub fn name(self) -> &'static str {
        match self {
            TowerKind::Prism => "prism",
            TowerKind::Pyramid => "pyramid",
            TowerKind::Bipyramid => "bipyramid",
        }
    }
}

impl fmt::Display for TowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A polytope sequence whose members are addressed by an index `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// `P_0 = seed`, `P_{k+1}` built over `P_k`.
    Tower { kind: TowerKind, seed: FVector },
    /// `S_k = S(k + 1 + n, k)`.
    Stacked { n: usize },
    /// `C_k = C(k + 1 + n, k)`.
    Cyclic { n: usize },
}

impl FamilySpec {
    /// Smallest valid member index.
    pub fn first_index(&self) -> usize {
        match self {
            FamilySpec::Tower { .. } => 0,
            FamilySpec::Stacked { .. } | FamilySpec::Cyclic { .. } => 2,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Tower { kind, seed } => write!(f, "tower({kind}, seed={seed})"),
            FamilySpec::Stacked { n } => write!(f, "stacked(n={n})"),
            FamilySpec::Cyclic { n } => write!(f, "cyclic(n={n})"),
        }
    }
}

/// Integer sequence indexed by dimension `-1..=d` with no polytope
/// invariants attached. Holds the modified and reversed face vectors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedVector {
    values: Vec<BigInt>,
}

impl ExtendedVector {
    pub fn new(values: Vec<BigInt>) -> Self {
        ExtendedVector { values }
    }

    /// Top index `d` (the sequence has `d + 2` entries).
    pub fn dim(&self) -> usize {
        self.values.len() - 2
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Entry at index `i`, zero outside `-1..=d`.
    pub fn get(&self, i: i64) -> BigInt {
        if i < -1 || i > self.dim() as i64 {
            BigInt::zero()
        } else {
            self.values[(i + 1) as usize].clone()
        }
    }
}

impl fmt::Display for ExtendedVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn prism_step(f: &FVector) -> FVector {
    let d = f.dim() as i64;
    let mut out = Vec::with_capacity(f.counts().len() + 1);
    out.push(BigInt::one());
    // The empty face of the base contributes nothing in the vertical direction.
    out.push(f.get(0) * 2u32);
    for i in 1..=d + 1 {
        out.push(f.get(i) * 2u32 + f.get(i - 1));
    }
    FVector::from_trusted(out)
}

pub fn pyramid_step(f: &FVector) -> FVector {
    let d = f.dim() as i64;
    let out = (-1..=d + 1).map(|i| f.get(i) + f.get(i - 1)).collect();
    FVector::from_trusted(out)
}

pub fn bipyramid_step(f: &FVector) -> Result<FVector> {
    let d = f.dim() as i64;
    if d < 1 {
        return Err(Error::DegenerateBase);
    }
    let mut out: Vec<BigInt> = (-1..d).map(|i| f.get(i) + f.get(i - 1) * 2u32).collect();
    // The base itself is not a face; the whole polytope is counted once.
    out.push(f.get(d - 1) * 2u32);
    out.push(BigInt::one());
    Ok(FVector::from_trusted(out))
}

pub fn tower(seed: &FVector, kind: TowerKind, steps: usize) -> Result<FVector> {
    let mut f = seed.clone();
    for _ in 0..steps {
        f = match kind {
            TowerKind::Prism => prism_step(&f),
            TowerKind::Pyramid => pyramid_step(&f),
            TowerKind::Bipyramid => bipyramid_step(&f)?,
        };
    }
    Ok(f)
}

fn check_simplicial_params(v: usize, d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParams(format!("dimension {d} < 2")));
    }
    if v < d + 1 {
        return Err(Error::InvalidParams(format!(
            "{v} vertices cannot span dimension {d}"
        )));
    }
    Ok(())
}

/// Face vector of any stacked `d`-polytope with `v` vertices.
pub fn stacked_fvector(v: usize, d: usize) -> Result<FVector> {
    check_simplicial_params(v, d)?;
    let (vi, di) = (BigInt::from(v), d as i64);
    let mut out = Vec::with_capacity(d + 2);
    out.push(BigInt::one());
    out.push(vi.clone());
    for i in 1..=di - 2 {
        out.push(binomial(di, i) * &vi - binomial(di + 1, i + 1) * i);
    }
    out.push(BigInt::from(di - 1) * &vi - BigInt::from((di + 1) * (di - 2)));
    out.push(BigInt::one());
    Ok(FVector::from_trusted(out))
}

/// `l_i = C(d, i) v - C(d+1, i+1) i` for `i = -1..=d`.
///
/// Agrees with the stacked face vector except `l_{d-1} = f_{d-1} + n` and
/// `l_d = f_d + n`, where `n = v - d - 1`. In this indexing the members
/// satisfy Pascal's rule `l_i(S_k) = l_{i-1}(S_{k-1}) + l_i(S_{k-1})`.
pub fn modified_stacked_vector(v: usize, d: usize) -> Result<ExtendedVector> {
    check_simplicial_params(v, d)?;
    let (vi, di) = (BigInt::from(v), d as i64);
    let values = (-1..=di)
        .map(|i| binomial(di, i) * &vi - binomial(di + 1, i + 1) * i)
        .collect();
    Ok(ExtendedVector::new(values))
}

/// `h_0, ..., h_d` of the cyclic polytope `C(v, d)`.
pub fn cyclic_hvector(v: usize, d: usize) -> Result<Vec<BigInt>> {
    check_simplicial_params(v, d)?;
    let n = (v - d - 1) as i64;
    let half = d / 2;
    let lower: Vec<BigInt> = (0..=half as i64).map(|j| binomial(n + j, j)).collect();
    // Dehn-Sommerville: h_j = h_{d-j}.
    Ok((0..=d).map(|j| lower[j.min(d - j)].clone()).collect())
}

/// `f_{i-1} = sum_{j=0}^{i} C(d-j, d-i) h_j` for `1 <= i <= d`.
pub fn cyclic_fvector(v: usize, d: usize) -> Result<FVector> {
    let h = cyclic_hvector(v, d)?;
    let table = PascalTable::new(d);
    let di = d as i64;
    let mut out = Vec::with_capacity(d + 2);
    out.push(BigInt::one());
    for i in 1..=di {
        let mut acc = BigInt::zero();
        for (j, hj) in h.iter().enumerate().take(i as usize + 1) {
            acc += table.get(di - j as i64, di - i) * hj;
        }
        out.push(acc);
    }
    out.push(BigInt::one());
    Ok(FVector::from_trusted(out))
}

/// `l_j = f_{d-1-j}` for `j = -1..=d`.
pub fn reversed_vector(f: &FVector) -> ExtendedVector {
    let mut values = f.counts().to_vec();
    values.reverse();
    ExtendedVector::new(values)
}

/// Member `k` of a family.
pub fn family_fvector(spec: &FamilySpec, k: usize) -> Result<FVector> {
    let min = spec.first_index();
    if k < min {
        return Err(Error::IndexOutOfRange { k, min });
    }
    match spec {
        FamilySpec::Tower { kind, seed } => tower(seed, *kind, k),
        FamilySpec::Stacked { n } => stacked_fvector(k + 1 + n, k),
        FamilySpec::Cyclic { n } => cyclic_fvector(k + 1 + n, k),
    }
}
