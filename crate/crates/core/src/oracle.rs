//! Brute-force face enumeration, independent of the closed formulas.
//!
//! Tower polytopes are built as explicit face families (faces are sorted
//! vertex-label sets with a structural dimension tag). Simplicial polytopes
//! are described by their facets; every subset of a facet is a face.
//! Cyclic polytopes come from Gale's evenness condition rather than
//! coordinates on the moment curve.

use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;

use crate::exact::FVector;
use crate::{Error, Result};

/// Upper bound on the number of faces any enumeration may materialize.
pub const FACE_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<u32>,
    pub dim: i64,
}

/// All faces of one polytope, keyed by vertex set. Vertex labels are
/// `0..num_vertices`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceFamily {
    dim: usize,
    num_vertices: u32,
    faces: BTreeMap<Vec<u32>, i64>,
}

impl FaceFamily {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_vertices(&self) -> u32 {
        self.num_vertices
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Faces in canonical (lexicographic vertex-set) order.
    pub fn faces(&self) -> impl Iterator<Item = Face> + '_ {
        self.faces.iter().map(|(v, &dim)| Face {
            vertices: v.clone(),
            dim,
        })
    }

    fn proper_faces(&self) -> impl Iterator<Item = (&Vec<u32>, i64)> + '_ {
        let top = self.dim as i64;
        self.faces
            .iter()
            .filter(move |(_, &d)| d < top)
            .map(|(v, &d)| (v, d))
    }

    fn builder(dim: usize, num_vertices: u32, expected: usize) -> Result<Builder> {
        if expected > FACE_CAP {
            return Err(Error::ResourceCap { cap: FACE_CAP });
        }
        Ok(Builder {
            family: FaceFamily {
                dim,
                num_vertices,
                faces: BTreeMap::new(),
            },
        })
    }

    /// Convex hull with a new apex.
    pub fn pyramid_of(&self) -> Result<FaceFamily> {
        let apex = self.num_vertices;
        let mut b = Self::builder(self.dim + 1, apex + 1, 2 * self.len())?;
        for (verts, &d) in &self.faces {
            b.insert(verts.clone(), d)?;
            let mut joined = verts.clone();
            joined.push(apex);
            b.insert(joined, d + 1)?;
        }
        Ok(b.finish())
    }

    /// Product with a segment. Vertex `x` becomes `x` (bottom) and
    /// `x + V` (top).
    pub fn prism_of(&self) -> Result<FaceFamily> {
        let nv = self.num_vertices;
        let mut b = Self::builder(self.dim + 1, 2 * nv, 3 * self.len())?;
        b.insert(Vec::new(), -1)?;
        for (verts, &d) in &self.faces {
            if verts.is_empty() {
                continue;
            }
            let top: Vec<u32> = verts.iter().map(|x| x + nv).collect();
            let mut side = verts.clone();
            side.extend(&top);
            b.insert(verts.clone(), d)?;
            b.insert(top, d)?;
            b.insert(side, d + 1)?;
        }
        Ok(b.finish())
    }

    /// Convex hull with two apexes on opposite sides of the base; the base
    /// itself stops being a face.
    pub fn bipyramid_of(&self) -> Result<FaceFamily> {
        if self.dim < 1 {
            return Err(Error::DegenerateBase);
        }
        let (a, z) = (self.num_vertices, self.num_vertices + 1);
        let mut b = Self::builder(self.dim + 1, self.num_vertices + 2, 3 * self.len())?;
        let proper: Vec<(&Vec<u32>, i64)> = self.proper_faces().collect();
        for (verts, d) in proper {
            b.insert(verts.clone(), d)?;
            for apex in [a, z] {
                let mut joined = verts.clone();
                joined.push(apex);
                b.insert(joined, d + 1)?;
            }
        }
        b.insert((0..self.num_vertices + 2).collect(), self.dim as i64 + 1)?;
        Ok(b.finish())
    }
}

struct Builder {
    family: FaceFamily,
}

impl Builder {
    fn insert(&mut self, mut verts: Vec<u32>, dim: i64) -> Result<()> {
        verts.sort_unstable();
        match self.family.faces.insert(verts, dim) {
            Some(prev) if prev != dim => Err(Error::InconsistentFamily(format!(
                "vertex set tagged with dimensions {prev} and {dim}"
            ))),
            _ => Ok(()),
        }
    }

    fn finish(self) -> FaceFamily {
        self.family
    }
}

pub fn point_family() -> FaceFamily {
    let mut faces = BTreeMap::new();
    faces.insert(Vec::new(), -1);
    faces.insert(vec![0], 0);
    FaceFamily {
        dim: 0,
        num_vertices: 1,
        faces,
    }
}

/// Every subset of `d + 1` vertices.
pub fn simplex_family(d: usize) -> Result<FaceFamily> {
    if d >= 32 || (1usize << (d + 1)) > FACE_CAP {
        return Err(Error::ResourceCap { cap: FACE_CAP });
    }
    let nv = d as u32 + 1;
    let faces = (0u64..1 << nv)
        .map(|mask| {
            let verts: Vec<u32> = (0..nv).filter(|x| mask >> x & 1 == 1).collect();
            let dim = verts.len() as i64 - 1;
            (verts, dim)
        })
        .collect();
    Ok(FaceFamily {
        dim: d,
        num_vertices: nv,
        faces,
    })
}

/// Counts faces by dimension tag and validates the result as a face vector.
pub fn count_faces(ff: &FaceFamily) -> Result<FVector> {
    let mut counts = vec![0u64; ff.dim + 2];
    for &d in ff.faces.values() {
        if d < -1 || d > ff.dim as i64 {
            return Err(Error::InconsistentFamily(format!(
                "face dimension {d} outside -1..={}",
                ff.dim
            )));
        }
        counts[(d + 1) as usize] += 1;
    }
    FVector::from_counts(counts.iter().map(|&c| BigInt::from(c)))
        .map_err(|e| Error::InconsistentFamily(e.to_string()))
}

/// Facets of a simplicial `d`-polytope, each a sorted set of `d` labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetList {
    pub num_vertices: usize,
    pub dim: usize,
    pub facets: Vec<Vec<u32>>,
}

impl FacetList {
    /// Facets in sorted order, for set comparisons.
    pub fn canonical(&self) -> Vec<Vec<u32>> {
        let mut facets = self.facets.clone();
        facets.sort();
        facets
    }

    /// Every label appears in some facet and no facet repeats.
    pub fn is_valid(&self, labels: impl IntoIterator<Item = u32>) -> bool {
        let mut seen = HashSet::new();
        if !self.facets.iter().all(|f| seen.insert(f.clone())) {
            return false;
        }
        let used: HashSet<u32> = self.facets.iter().flatten().copied().collect();
        labels.into_iter().all(|x| used.contains(&x))
    }
}

/// Which facet the next stacking step builds a pyramid over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FacetSelector {
    /// Lexicographically smallest facet.
    First,
    /// Lexicographically largest facet.
    Last,
    /// One of the facets created by the previous step.
    Newest,
}

impl FacetSelector {
    pub const ALL: [FacetSelector; 3] = [
        FacetSelector::First,
        FacetSelector::Last,
        FacetSelector::Newest,
    ];

    fn pick(self, facets: &[Vec<u32>]) -> usize {
        let by_key = facets.iter().enumerate();
        match self {
            FacetSelector::First => by_key.min_by(|a, b| a.1.cmp(b.1)).map(|p| p.0),
            FacetSelector::Last => by_key.max_by(|a, b| a.1.cmp(b.1)).map(|p| p.0),
            FacetSelector::Newest => Some(facets.len() - 1),
        }
        .expect("a simplicial complex always has facets")
    }
}

/// A stacked `d`-polytope on `d + 1 + n` vertices, as a facet list.
///
/// Starts from the simplex on `0..=d`; each step removes the selected facet
/// `F`, adds vertex `u`, and adds `(F \ {w}) ∪ {u}` for each `w ∈ F`.
pub fn stacked_complex(d: usize, n: usize, selector: FacetSelector) -> Result<FacetList> {
    if d < 2 {
        return Err(Error::InvalidParams(format!("stacked dimension {d} < 2")));
    }
    let d32 = d as u32;
    let mut facets: Vec<Vec<u32>> = (0..=d32)
        .rev()
        .map(|skip| (0..=d32).filter(|&x| x != skip).collect())
        .collect();
    for step in 0..n as u32 {
        let u = d32 + 1 + step;
        let chosen = facets.swap_remove(selector.pick(&facets));
        for w in &chosen {
            let mut facet: Vec<u32> = chosen.iter().copied().filter(|x| x != w).collect();
            facet.push(u);
            facets.push(facet);
        }
    }
    Ok(FacetList {
        num_vertices: d + 1 + n,
        dim: d,
        facets,
    })
}

/// Gale's evenness condition on the `d`-subsets of `1..=v`.
fn is_gale_facet(subset: &[u32], v: u32) -> bool {
    let mut inside = vec![false; v as usize + 2];
    for &x in subset {
        inside[x as usize] = true;
    }
    let outside: Vec<u32> = (1..=v).filter(|&x| !inside[x as usize]).collect();
    outside.windows(2).all(|w| {
        // Pairs of consecutive outsiders suffice: counts between farther
        // outsiders are sums of these.
        let between = (w[0] + 1..w[1]).filter(|&x| inside[x as usize]).count();
        between % 2 == 0
    })
}

fn for_each_subset(v: u32, size: usize, mut visit: impl FnMut(&[u32])) {
    let mut current = Vec::with_capacity(size);
    fn rec(start: u32, v: u32, size: usize, cur: &mut Vec<u32>, visit: &mut dyn FnMut(&[u32])) {
        if cur.len() == size {
            visit(cur);
            return;
        }
        let needed = (size - cur.len()) as u32;
        for x in start..=v + 1 - needed {
            cur.push(x);
            rec(x + 1, v, size, cur, visit);
            cur.pop();
        }
    }
    rec(1, v, size, &mut current, &mut visit);
}

/// Facets of the cyclic polytope `C(v, d)`, labels `1..=v`.
pub fn gale_facets(v: usize, d: usize) -> Result<FacetList> {
    if d < 2 || v < d + 1 {
        return Err(Error::InvalidParams(format!(
            "gale_facets needs v >= d + 1 >= 3, got v={v} d={d}"
        )));
    }
    if v > 127 {
        return Err(Error::ResourceCap { cap: FACE_CAP });
    }
    let mut facets = Vec::new();
    for_each_subset(v as u32, d, |s| {
        if is_gale_facet(s, v as u32) {
            facets.push(s.to_vec());
        }
    });
    Ok(FacetList {
        num_vertices: v,
        dim: d,
        facets,
    })
}

/// Face vector of the simplicial polytope with the given facets: `f_j`
/// counts distinct `(j+1)`-subsets lying in some facet.
pub fn faces_from_facets(fl: &FacetList) -> Result<FVector> {
    let d = fl.dim;
    if fl.facets.iter().flatten().any(|&x| x >= 128) {
        return Err(Error::InvalidParams(
            "vertex labels must be below 128".into(),
        ));
    }
    if d >= 32 || fl.facets.len().saturating_mul(1 << d) > FACE_CAP {
        return Err(Error::ResourceCap { cap: FACE_CAP });
    }
    let mut seen: HashSet<u128> = HashSet::new();
    for facet in &fl.facets {
        if facet.len() != d {
            return Err(Error::InconsistentFamily(format!(
                "facet {facet:?} has {} vertices, expected {d}",
                facet.len()
            )));
        }
        for sub in 1u32..(1 << d) {
            let mask = facet
                .iter()
                .enumerate()
                .filter(|(t, _)| sub >> t & 1 == 1)
                .fold(0u128, |acc, (_, &x)| acc | 1 << x);
            seen.insert(mask);
        }
    }
    let mut counts = vec![0u64; d + 2];
    counts[0] = 1;
    counts[d + 1] = 1;
    for mask in seen {
        counts[mask.count_ones() as usize] += 1;
    }
    FVector::from_counts(counts.iter().map(|&c| BigInt::from(c)))
        .map_err(|e| Error::InconsistentFamily(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::modular_reduce;

    fn fv(counts: &[i64]) -> FVector {
        FVector::from_counts(counts.iter().copied()).unwrap()
    }

    fn square_family() -> FaceFamily {
        point_family().prism_of().unwrap().prism_of().unwrap()
    }

    #[test]
    fn base_families() {
        assert_eq!(count_faces(&point_family()).unwrap(), fv(&[1, 1]));
        assert_eq!(
            count_faces(&simplex_family(3).unwrap()).unwrap(),
            fv(&[1, 4, 6, 4, 1])
        );
        assert_eq!(simplex_family(10).unwrap().len(), 1 << 11);
        let s5 = count_faces(&simplex_family(5).unwrap()).unwrap();
        assert_eq!(s5, fv(&[1, 6, 15, 20, 15, 6, 1]));
        assert_eq!(
            modular_reduce(&s5, 3).unwrap().counts(),
            [22, 21, 21].map(BigInt::from)
        );
    }

    #[test]
    fn tower_constructions() {
        assert_eq!(count_faces(&square_family()).unwrap(), fv(&[1, 4, 4, 1]));
        let cube = square_family().prism_of().unwrap();
        assert_eq!(count_faces(&cube).unwrap(), fv(&[1, 8, 12, 6, 1]));
        assert_eq!(
            count_faces(&point_family().pyramid_of().unwrap()).unwrap(),
            fv(&[1, 2, 1])
        );
        assert_eq!(
            count_faces(&square_family().pyramid_of().unwrap()).unwrap(),
            fv(&[1, 5, 8, 5, 1])
        );
        assert_eq!(
            count_faces(&square_family().bipyramid_of().unwrap()).unwrap(),
            fv(&[1, 6, 12, 8, 1])
        );
        assert_eq!(point_family().bipyramid_of(), Err(Error::DegenerateBase));
    }

    #[test]
    fn cube_square_faces_have_four_vertices() {
        let cube = square_family().prism_of().unwrap();
        for face in cube.faces().filter(|f| f.dim == 2) {
            assert_eq!(face.vertices.len(), 4);
        }
        assert_eq!(cube.num_vertices(), 8);
    }

    #[test]
    fn stacked_examples() {
        let tet = stacked_complex(3, 0, FacetSelector::First).unwrap();
        assert_eq!(tet.facets.len(), 4);
        let s = stacked_complex(3, 2, FacetSelector::First).unwrap();
        assert_eq!(s.facets.len(), 8);
        assert!(s.is_valid(0..6));
        assert_eq!(faces_from_facets(&s).unwrap(), fv(&[1, 6, 12, 8, 1]));
        let first = faces_from_facets(&stacked_complex(4, 2, FacetSelector::First).unwrap());
        let last = faces_from_facets(&stacked_complex(4, 2, FacetSelector::Last).unwrap());
        assert_eq!(first.unwrap(), fv(&[1, 7, 18, 22, 11, 1]));
        assert_eq!(last.unwrap(), fv(&[1, 7, 18, 22, 11, 1]));
        assert!(stacked_complex(1, 0, FacetSelector::First).is_err());
    }

    #[test]
    fn selectors_build_different_complexes() {
        let a = stacked_complex(3, 3, FacetSelector::First).unwrap();
        let b = stacked_complex(3, 3, FacetSelector::Newest).unwrap();
        assert_ne!(a.canonical(), b.canonical());
        assert_eq!(
            faces_from_facets(&a).unwrap(),
            faces_from_facets(&b).unwrap()
        );
    }

    #[test]
    fn gale_examples() {
        assert_eq!(gale_facets(4, 3).unwrap().facets.len(), 4);
        assert_eq!(gale_facets(6, 3).unwrap().facets.len(), 8);
        let c84 = gale_facets(8, 4).unwrap();
        assert_eq!(c84.facets.len(), 20);
        assert!(c84.is_valid(1..=8));
        assert_eq!(faces_from_facets(&c84).unwrap(), fv(&[1, 8, 28, 40, 20, 1]));
        assert_eq!(
            faces_from_facets(&gale_facets(6, 3).unwrap()).unwrap(),
            fv(&[1, 6, 12, 8, 1])
        );
        assert!(gale_facets(3, 3).is_err());
        assert!(gale_facets(5, 1).is_err());
    }

    #[test]
    fn gale_facets_of_polygon_are_edges() {
        let hexagon = gale_facets(6, 2).unwrap().canonical();
        let expected: Vec<Vec<u32>> = vec![
            vec![1, 2],
            vec![1, 6],
            vec![2, 3],
            vec![3, 4],
            vec![4, 5],
            vec![5, 6],
        ];
        assert_eq!(hexagon, expected);
    }

    #[test]
    fn gale_reflection_symmetry() {
        for d in 2..=7 {
            for v in d + 1..=d + 5 {
                let fl = gale_facets(v, d).unwrap();
                let mut reflected: Vec<Vec<u32>> = fl
                    .facets
                    .iter()
                    .map(|f| {
                        let mut g: Vec<u32> = f.iter().map(|&x| v as u32 + 1 - x).collect();
                        g.sort_unstable();
                        g
                    })
                    .collect();
                reflected.sort();
                assert_eq!(reflected, fl.canonical(), "v={v} d={d}");
            }
        }
    }

    #[test]
    fn tetrahedron_facets() {
        let tet = FacetList {
            num_vertices: 4,
            dim: 3,
            facets: vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
        };
        assert_eq!(faces_from_facets(&tet).unwrap(), fv(&[1, 4, 6, 4, 1]));
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            simplex_family(40),
            Err(Error::ResourceCap { cap: FACE_CAP })
        );
    }
}
