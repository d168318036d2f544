//! Drives the formula-versus-oracle comparison over a parameter grid.
//!
//! The formulas are passed in as function pointers so a deliberately broken
//! variant can be substituted to confirm that the grid catches it.

use std::fmt;
use std::ops::RangeInclusive;

use num_bigint::BigInt;

use crate::exact::FVector;
use crate::families::{cyclic_fvector, stacked_fvector, tower, TowerKind};
use crate::oracle::{
    count_faces, faces_from_facets, gale_facets, point_family, stacked_complex, FaceFamily,
    FacetSelector,
};
use crate::Result;

pub type TowerFormula = fn(&FVector, TowerKind, usize) -> Result<FVector>;
pub type SimplicialFormula = fn(usize, usize) -> Result<FVector>;

#[derive(Clone, Copy)]
pub struct Formulas {
    pub tower: TowerFormula,
    pub stacked: SimplicialFormula,
    pub cyclic: SimplicialFormula,
}

impl Default for Formulas {
    fn default() -> Self {
        Formulas {
            tower,
            stacked: stacked_fvector,
            cyclic: cyclic_fvector,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeedShape {
    Point,
    Segment,
    Square,
}

impl SeedShape {
    pub const ALL: [SeedShape; 3] = [SeedShape::Point, SeedShape::Segment, SeedShape::Square];

    pub fn name(self) -> &'static str {
        match self {
            SeedShape::Point => "point",
            SeedShape::Segment => "segment",
            SeedShape::Square => "square",
        }
    }

    pub fn family(self) -> FaceFamily {
        let point = point_family();
        match self {
            SeedShape::Point => point,
            SeedShape::Segment => point.prism_of().expect("tiny"),
            SeedShape::Square => point.prism_of().and_then(|s| s.prism_of()).expect("tiny"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grid {
    pub tower_seeds: Vec<SeedShape>,
    pub tower_kinds: Vec<TowerKind>,
    pub tower_k_max: usize,
    pub stacked_dims: RangeInclusive<usize>,
    pub stacked_n_max: usize,
    pub selectors: Vec<FacetSelector>,
    pub cyclic_dims: RangeInclusive<usize>,
    /// Cyclic polytopes are checked for `v` in `d+1..=d+1+cyclic_n_max`.
    pub cyclic_n_max: usize,
}

impl Default for Grid {
    fn default() -> Self {
        Grid {
            tower_seeds: SeedShape::ALL.to_vec(),
            tower_kinds: TowerKind::ALL.to_vec(),
            tower_k_max: 8,
            stacked_dims: 3..=6,
            stacked_n_max: 4,
            selectors: FacetSelector::ALL.to_vec(),
            cyclic_dims: 2..=7,
            cyclic_n_max: 4,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub family: String,
    pub params: String,
    pub dim: i64,
    pub formula: BigInt,
    pub oracle: BigInt,
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] f_{}: formula={} oracle={}",
            self.family, self.params, self.dim, self.formula, self.oracle
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VerifyReport {
    pub checked: usize,
    pub mismatch: Option<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }

    fn record(&mut self, family: &str, params: String, formula: &FVector, oracle: &FVector) {
        self.checked += 1;
        if self.mismatch.is_some() {
            return;
        }
        let top = formula.dim().max(oracle.dim()) as i64;
        if let Some(dim) = (-1..=top).find(|&i| formula.get(i) != oracle.get(i)) {
            self.mismatch = Some(Mismatch {
                family: family.to_string(),
                params,
                dim,
                formula: formula.get(dim),
                oracle: oracle.get(dim),
            });
        }
    }

    fn merge(&mut self, other: VerifyReport) {
        self.checked += other.checked;
        if self.mismatch.is_none() {
            self.mismatch = other.mismatch;
        }
    }
}

pub fn verify_towers(grid: &Grid, formulas: &Formulas) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for &shape in &grid.tower_seeds {
        let seed_family = shape.family();
        let seed = count_faces(&seed_family)?;
        for &kind in &grid.tower_kinds {
            if kind == TowerKind::Bipyramid && seed.dim() < 1 {
                continue;
            }
            let mut family = seed_family.clone();
            for k in 0..=grid.tower_k_max {
                if k > 0 {
                    family = match kind {
                        TowerKind::Prism => family.prism_of()?,
                        TowerKind::Pyramid => family.pyramid_of()?,
                        TowerKind::Bipyramid => family.bipyramid_of()?,
                    };
                }
                let oracle = count_faces(&family)?;
                let formula = (formulas.tower)(&seed, kind, k)?;
                report.record(
                    &format!("tower-{kind}"),
                    format!("seed={} k={k}", shape.name()),
                    &formula,
                    &oracle,
                );
            }
        }
    }
    Ok(report)
}

pub fn verify_stacked(grid: &Grid, formulas: &Formulas) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for d in grid.stacked_dims.clone() {
        for n in 0..=grid.stacked_n_max {
            let formula = (formulas.stacked)(d + 1 + n, d)?;
            for &selector in &grid.selectors {
                let oracle = faces_from_facets(&stacked_complex(d, n, selector)?)?;
                report.record(
                    "stacked",
                    format!("d={d} n={n} selector={selector:?}"),
                    &formula,
                    &oracle,
                );
            }
        }
    }
    Ok(report)
}

pub fn verify_cyclic(grid: &Grid, formulas: &Formulas) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    for d in grid.cyclic_dims.clone() {
        for v in d + 1..=d + 1 + grid.cyclic_n_max {
            let formula = (formulas.cyclic)(v, d)?;
            let oracle = faces_from_facets(&gale_facets(v, d)?)?;
            report.record("cyclic", format!("v={v} d={d}"), &formula, &oracle);
        }
    }
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    All,
    Towers,
    Stacked,
    Cyclic,
}

pub fn verify(grid: &Grid, formulas: &Formulas, target: Target) -> Result<VerifyReport> {
    let mut report = VerifyReport::default();
    if matches!(target, Target::All | Target::Towers) {
        report.merge(verify_towers(grid, formulas)?);
    }
    if matches!(target, Target::All | Target::Stacked) {
        report.merge(verify_stacked(grid, formulas)?);
    }
    if matches!(target, Target::All | Target::Cyclic) {
        report.merge(verify_cyclic(grid, formulas)?);
    }
    Ok(report)
}

/// Stacked formula with `C(d+1, i)` in place of `C(d+1, i+1)`.
pub fn faulty_stacked_fvector(v: usize, d: usize) -> Result<FVector> {
    use crate::exact::binomial;
    let correct = stacked_fvector(v, d)?;
    let mut counts = correct.into_counts();
    let (vi, di) = (BigInt::from(v), d as i64);
    for i in 1..=di - 2 {
        counts[(i + 1) as usize] = binomial(di, i) * &vi - binomial(di + 1, i) * i;
    }
    // Not a valid face vector any more; skip validation on purpose.
    Ok(FVector::from_trusted_unchecked(counts))
}
