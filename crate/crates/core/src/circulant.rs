//! Exact equal-sum matrix algebra over the residue classes modulo `m`.
//!
//! Row vectors multiply on the left, `x · M`. Index `s` of a row vector is
//! the residue slot holding representative `s - 1`; `e₁` is slot 0. The
//! shift `Q` moves slot `s` to slot `s + 1 (mod m)`, so the family
//! recursions become
//!
//! * prism: `f^m(P_k) - e₁ = (f^m(P_{k-1}) - e₁)(2I + Q)`
//! * pyramid: `f^m(P_k) = f^m(P_{k-1})(I + Q)`
//! * bipyramid: `f^m(P_k) = f^m(P_{k-1})(I + 2Q) - c_k`
//! * stacked: `l^m(S_k) = l^m(S_{k-1})(I + Q)`
//! * cyclic: `l^m(C_k) = e₁(I + Q · Σ_j h_j A^j)` with `A = I + Q`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact::{modular_reduce, reduce_residues, ExactRational, FVector};
use crate::families::{
    bipyramid_step, cyclic_fvector, cyclic_hvector, modified_stacked_vector, prism_step,
    pyramid_step, reversed_vector,
};
use crate::{Error, Result};

/// Dense square matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SquareMatrix {
    order: usize,
    entries: Vec<BigRational>,
}

impl SquareMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { order, entries }
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let order = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::DimensionMismatch {
                left: order,
                right: bad.len(),
            });
        }
        Ok(Self::from_fn(order, |i, j| {
            BigRational::from_integer(rows[i][j].into())
        }))
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// `Σ_r coeffs[r] · Q^r`: entry `(i, j)` is the sum of the coefficients
    /// with `r ≡ j - i (mod m)`.
    pub fn circulant(order: usize, coeffs: &[BigRational]) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidOrder(order));
        }
        let mut row = vec![BigRational::zero(); order];
        for (r, c) in coeffs.iter().enumerate() {
            row[r % order] += c;
        }
        Ok(Self::from_fn(order, |i, j| {
            row[(j + order - i) % order].clone()
        }))
    }

    /// `J`, every entry `1/m`.
    pub fn uniform(order: usize) -> Result<Self> {
        if order < 1 {
            return Err(Error::InvalidOrder(order));
        }
        let value = BigRational::new(BigInt::one(), BigInt::from(order));
        Ok(Self::from_fn(order, |_, _| value.clone()))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.entries
    }

    pub fn add(&self, other: &SquareMatrix) -> Result<SquareMatrix> {
        self.conform(other)?;
        Ok(SquareMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, factor: &BigRational) -> SquareMatrix {
        SquareMatrix {
            order: self.order,
            entries: self.entries.iter().map(|a| a * factor).collect(),
        }
    }

    fn conform(&self, other: &SquareMatrix) -> Result<()> {
        if self.order != other.order {
            return Err(Error::DimensionMismatch {
                left: self.order,
                right: other.order,
            });
        }
        Ok(())
    }
}

impl fmt::Display for SquareMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.order {
            if i > 0 {
                f.write_str(",")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "[{}]", row.join(","))?;
        }
        f.write_str("]")
    }
}

/// The cyclic shift `Q` of order `m`: `a_{i,i+1} = 1` with wraparound
/// `a_{m,1} = 1`.
pub fn shift_matrix(m: usize) -> Result<SquareMatrix> {
    SquareMatrix::circulant(m, &[BigRational::zero(), BigRational::one()])
}

/// `a·I + b·Q` for small integer coefficients.
pub fn shift_polynomial(m: usize, a: i64, b: i64) -> Result<SquareMatrix> {
    SquareMatrix::circulant(
        m,
        &[
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        ],
    )
}

/// The common row and column sum.
pub fn sigma(mat: &SquareMatrix) -> Result<ExactRational> {
    let m = mat.order;
    if m == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let row_sum = |i: usize| -> BigRational { mat.row(i).iter().sum() };
    let col_sum = |j: usize| -> BigRational { (0..m).map(|i| mat.get(i, j)).sum() };
    let s = row_sum(0);
    for t in 0..m {
        if row_sum(t) != s || col_sum(t) != s {
            return Err(Error::NotEqualSum);
        }
    }
    Ok(s)
}

/// Reduced spread `(max entry - min entry) / σ`.
pub fn delta(mat: &SquareMatrix) -> Result<ExactRational> {
    let s = sigma(mat)?;
    if !s.is_positive() {
        return Err(Error::ZeroSigma);
    }
    let (max, min) = extremes(mat);
    Ok((mat.entries[max].clone() - &mat.entries[min]) / s)
}

/// Row-major positions of the first maximal and first minimal entries.
fn extremes(mat: &SquareMatrix) -> (usize, usize) {
    let mut max = 0;
    let mut min = 0;
    for (p, e) in mat.entries.iter().enumerate() {
        if *e > mat.entries[max] {
            max = p;
        }
        if *e < mat.entries[min] {
            min = p;
        }
    }
    (max, min)
}

pub fn mat_mul(a: &SquareMatrix, b: &SquareMatrix) -> Result<SquareMatrix> {
    a.conform(b)?;
    let m = a.order;
    let mut entries = vec![BigRational::zero(); m * m];
    for i in 0..m {
        for t in 0..m {
            let lhs = a.get(i, t);
            if lhs.is_zero() {
                continue;
            }
            for j in 0..m {
                let rhs = b.get(t, j);
                if !rhs.is_zero() {
                    entries[i * m + j] += lhs * rhs;
                }
            }
        }
    }
    Ok(SquareMatrix { order: m, entries })
}

pub fn mat_pow(mat: &SquareMatrix, mut exponent: u64) -> SquareMatrix {
    let mut result = SquareMatrix::identity(mat.order);
    let mut base = mat.clone();
    while exponent > 0 {
        if exponent & 1 == 1 {
            result = mat_mul(&result, &base).expect("same order");
        }
        exponent >>= 1;
        if exponent > 0 {
            base = mat_mul(&base, &base).expect("same order");
        }
    }
    result
}

/// `x · M` for a row vector `x`.
pub fn row_apply(x: &[BigRational], mat: &SquareMatrix) -> Result<Vec<BigRational>> {
    if x.len() != mat.order {
        return Err(Error::DimensionMismatch {
            left: x.len(),
            right: mat.order,
        });
    }
    let m = mat.order;
    let mut out = vec![BigRational::zero(); m];
    for (t, xt) in x.iter().enumerate() {
        if xt.is_zero() {
            continue;
        }
        for (j, o) in out.iter_mut().enumerate() {
            let e = mat.get(t, j);
            if !e.is_zero() {
                *o += xt * e;
            }
        }
    }
    Ok(out)
}

/// `Σ_t coeffs[t] · base^t`, evaluated by Horner's rule.
pub fn power_combination(base: &SquareMatrix, coeffs: &[BigRational]) -> SquareMatrix {
    let m = base.order;
    let mut acc = SquareMatrix::from_fn(m, |_, _| BigRational::zero());
    for c in coeffs.iter().rev() {
        acc = mat_mul(&acc, base).expect("same order");
        for i in 0..m {
            acc.entries[i * m + i] += c;
        }
    }
    acc
}

/// Where an exact identity first failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityFailure {
    pub k: usize,
    /// Residue representative in `-1..=m-2`.
    pub residue: i64,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl fmt::Display for IdentityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "k={} residue={}: lhs={} rhs={}",
            self.k, self.residue, self.lhs, self.rhs
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub holds: bool,
    pub first_failure: Option<IdentityFailure>,
    /// Number of indices `k` that were compared.
    pub checked: usize,
}

/// Accumulates comparisons in increasing `k`, keeping only the first
/// mismatch.
struct Checker {
    failure: Option<IdentityFailure>,
    checked: usize,
}

impl Checker {
    fn new() -> Self {
        Checker {
            failure: None,
            checked: 0,
        }
    }

    fn compare(&mut self, k: usize, lhs: &[BigRational], rhs: &[BigRational]) {
        if self.failure.is_some() {
            return;
        }
        if let Some(s) = (0..lhs.len()).find(|&s| lhs[s] != rhs[s]) {
            self.failure = Some(IdentityFailure {
                k,
                residue: s as i64 - 1,
                lhs: lhs[s].clone(),
                rhs: rhs[s].clone(),
            });
        }
    }

    fn finish_index(&mut self) {
        self.checked += 1;
    }

    fn report(self) -> IdentityReport {
        IdentityReport {
            holds: self.failure.is_none(),
            first_failure: self.failure,
            checked: self.checked,
        }
    }
}

fn to_rationals(values: &[BigInt]) -> Vec<BigRational> {
    values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect()
}

fn modular_row(f: &FVector, m: usize) -> Result<Vec<BigRational>> {
    Ok(to_rationals(modular_reduce(f, m)?.counts()))
}

fn minus_e1(mut x: Vec<BigRational>) -> Vec<BigRational> {
    x[0] -= BigRational::one();
    x
}

fn check_identity_params(m: usize, k_max: usize, k_min: usize) -> Result<()> {
    if m < 1 {
        return Err(Error::InvalidModulus(m));
    }
    if k_max < k_min {
        return Err(Error::InvalidParams(format!(
            "k_max must be at least {k_min}, got {k_max}"
        )));
    }
    Ok(())
}

/// Checks both the one-step form `f^m(P_k) - e₁ = (f^m(P_{k-1}) - e₁)(2I+Q)`
/// and the closed form `(f^m(P_0) - e₁)(2I+Q)^k` for `k = 1..=k_max`.
pub fn prism_identity_holds(seed: &FVector, m: usize, k_max: usize) -> Result<IdentityReport> {
    check_identity_params(m, k_max, 1)?;
    let step = shift_polynomial(m, 2, 1)?;
    let base = minus_e1(modular_row(seed, m)?);
    let mut closed = base.clone();
    let mut prev_f = seed.clone();
    let mut prev = base;
    let mut checker = Checker::new();
    for k in 1..=k_max {
        let f = prism_step(&prev_f);
        let lhs = minus_e1(modular_row(&f, m)?);
        checker.compare(k, &lhs, &row_apply(&prev, &step)?);
        closed = row_apply(&closed, &step)?;
        checker.compare(k, &lhs, &closed);
        checker.finish_index();
        prev = lhs;
        prev_f = f;
    }
    Ok(checker.report())
}

/// `f^m(P_k) = f^m(P_{k-1})(I+Q)`, one-step and closed form.
pub fn pyramid_identity_holds(seed: &FVector, m: usize, k_max: usize) -> Result<IdentityReport> {
    check_identity_params(m, k_max, 1)?;
    let step = shift_polynomial(m, 1, 1)?;
    let mut closed = modular_row(seed, m)?;
    let mut prev_f = seed.clone();
    let mut prev = closed.clone();
    let mut checker = Checker::new();
    for k in 1..=k_max {
        let f = pyramid_step(&prev_f);
        let lhs = modular_row(&f, m)?;
        checker.compare(k, &lhs, &row_apply(&prev, &step)?);
        closed = row_apply(&closed, &step)?;
        checker.compare(k, &lhs, &closed);
        checker.finish_index();
        prev = lhs;
        prev_f = f;
    }
    Ok(checker.report())
}

/// `f^m(P_k) = f^m(P_{k-1})(I+2Q) - c_k`, where `c_k` puts one unit in the
/// residue slot of `d_k - 1` and one in the slot of `d_k` (`d_k` the new
/// dimension); the units add up when the two slots coincide.
pub fn bipyramid_identity_holds(seed: &FVector, m: usize, k_max: usize) -> Result<IdentityReport> {
    check_identity_params(m, k_max, 1)?;
    if seed.dim() < 1 {
        return Err(Error::DegenerateBase);
    }
    let step = shift_polynomial(m, 1, 2)?;
    let mut prev_f = seed.clone();
    let mut prev = modular_row(seed, m)?;
    let mut checker = Checker::new();
    for k in 1..=k_max {
        let f = bipyramid_step(&prev_f)?;
        let lhs = modular_row(&f, m)?;
        let mut rhs = row_apply(&prev, &step)?;
        let new_dim = f.dim();
        // Dimension i sits in slot (i + 1) mod m.
        rhs[new_dim % m] -= BigRational::one();
        rhs[(new_dim + 1) % m] -= BigRational::one();
        checker.compare(k, &lhs, &rhs);
        checker.finish_index();
        prev = lhs;
        prev_f = f;
    }
    Ok(checker.report())
}

fn stacked_modular(n: usize, k: usize, m: usize) -> Result<Vec<BigRational>> {
    let l = modified_stacked_vector(k + 1 + n, k)?;
    Ok(to_rationals(&reduce_residues(l.values(), m)?))
}

/// `l^m(S_k) = l^m(S_{k-1})(I+Q)` and `l^m(S_k) = l^m(S_2)(I+Q)^{k-2}` for
/// `k = 2..=k_max`.
pub fn stacked_identity_holds(n: usize, m: usize, k_max: usize) -> Result<IdentityReport> {
    check_identity_params(m, k_max, 2)?;
    let step = shift_polynomial(m, 1, 1)?;
    let start = stacked_modular(n, 2, m)?;
    let mut closed = start.clone();
    let mut prev = start;
    let mut checker = Checker::new();
    checker.finish_index();
    for k in 3..=k_max {
        let lhs = stacked_modular(n, k, m)?;
        checker.compare(k, &lhs, &row_apply(&prev, &step)?);
        closed = row_apply(&closed, &step)?;
        checker.compare(k, &lhs, &closed);
        checker.finish_index();
        prev = lhs;
    }
    Ok(checker.report())
}

/// `l^m(C_k)` for the reversed cyclic face vector, `l_j = f_{k-1-j}`.
pub fn cyclic_modified_modular(n: usize, k: usize, m: usize) -> Result<Vec<BigInt>> {
    let l = reversed_vector(&cyclic_fvector(k + 1 + n, k)?);
    reduce_residues(l.values(), m)
}

/// Checks `l^m(C_k) = e₁ Σ_j (h_j - h_{j-1}) A^{k-j+1}` and
/// `l^m(C_k) = e₁(I + Q · Σ_j h_j A^j)` for `k = 2..=k_max`.
pub fn cyclic_identity_holds(n: usize, m: usize, k_max: usize) -> Result<IdentityReport> {
    check_identity_params(m, k_max, 2)?;
    let a = shift_polynomial(m, 1, 1)?;
    let q = shift_matrix(m)?;
    let identity = SquareMatrix::identity(m);
    let mut checker = Checker::new();
    for k in 2..=k_max {
        let lhs = to_rationals(&cyclic_modified_modular(n, k, m)?);
        let h = to_rationals(&cyclic_hvector(k + 1 + n, k)?);

        let h_sum = power_combination(&a, &h);
        let full = identity.add(&mat_mul(&q, &h_sum)?)?;
        checker.compare(k, &lhs, full.row(0));

        // Differences h_j - h_{j-1} (h_{-1} = 0) weight A^{k-j+1}.
        let mut diffs = vec![BigRational::zero(); k + 2];
        for j in 0..=k {
            let below = if j == 0 {
                BigRational::zero()
            } else {
                h[j - 1].clone()
            };
            diffs[k - j + 1] = &h[j] - below;
        }
        let telescoped = power_combination(&a, &diffs);
        checker.compare(k, &lhs, telescoped.row(0));
        checker.finish_index();
    }
    Ok(checker.report())
}

/// `b_{i,j} = h_{2mj+i}` for `i = 0..2m`: the coefficients of `B^j` in the
/// `A^i` block when `Σ h_j A^j` is regrouped with `B = A^{2m}`.
pub fn coefficient_groups(h: &[BigInt], m: usize) -> Vec<Vec<BigInt>> {
    let period = 2 * m;
    (0..period)
        .map(|i| h.iter().skip(i).step_by(period).cloned().collect())
        .collect()
}

/// `B = (I+Q)^{2m}`.
pub fn spread_base(m: usize) -> Result<SquareMatrix> {
    Ok(mat_pow(&shift_polynomial(m, 1, 1)?, 2 * m as u64))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpreadRow {
    pub j: usize,
    pub delta: ExactRational,
    pub argmax: (usize, usize),
    pub argmin: (usize, usize),
}

/// `δ(B^j)` and the first (row-major) maximal and minimal cells of `B^j`
/// for `j = 1..=j_max`.
pub fn spread_profile(m: usize, j_max: usize) -> Result<Vec<SpreadRow>> {
    if m < 2 || j_max < 1 {
        return Err(Error::InvalidParams(format!(
            "spread profile needs m >= 2 and j_max >= 1, got m={m} j_max={j_max}"
        )));
    }
    let b = spread_base(m)?;
    let mut power = b.clone();
    let mut rows = Vec::with_capacity(j_max);
    for j in 1..=j_max {
        let (max, min) = extremes(&power);
        rows.push(SpreadRow {
            j,
            delta: delta(&power)?,
            argmax: (max / m, max % m),
            argmin: (min / m, min % m),
        });
        if j < j_max {
            power = mat_mul(&power, &b)?;
        }
    }
    Ok(rows)
}

/// Nondecreasing up to some index, nonincreasing after it.
pub fn unimodal<T: Ord>(seq: &[T]) -> bool {
    let mut t = 0;
    while t + 1 < seq.len() && seq[t] <= seq[t + 1] {
        t += 1;
    }
    while t + 1 < seq.len() && seq[t] >= seq[t + 1] {
        t += 1;
    }
    t + 1 >= seq.len()
}

/// For positive `a, b, c, d` with `a/c <= b/d`, the mediant `(a+b)/(c+d)`
/// lies between the two fractions. Returns `true` when the premise fails.
pub fn mediant_bound_holds(a: &BigInt, b: &BigInt, c: &BigInt, d: &BigInt) -> bool {
    let left = BigRational::new(a.clone(), c.clone());
    let right = BigRational::new(b.clone(), d.clone());
    if left > right {
        return true;
    }
    let mid = BigRational::new(a + b, c + d);
    left <= mid && mid <= right
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::make_fvector;
    use crate::families::{tower, TowerKind};
    use proptest::prelude::*;

    fn r(x: i64) -> BigRational {
        BigRational::from_integer(x.into())
    }

    fn rq(p: i64, q: i64) -> BigRational {
        BigRational::new(p.into(), q.into())
    }

    fn rs(xs: &[i64]) -> Vec<BigRational> {
        xs.iter().map(|&x| r(x)).collect()
    }

    fn square() -> FVector {
        make_fvector([4, 4]).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(
            shift_matrix(2).unwrap(),
            SquareMatrix::from_integers(&[vec![0, 1], vec![1, 0]]).unwrap()
        );
        assert_eq!(
            shift_matrix(1).unwrap(),
            SquareMatrix::from_integers(&[vec![1]]).unwrap()
        );
        let q3 = shift_matrix(3).unwrap();
        assert_eq!(row_apply(&rs(&[5, 7, 11]), &q3).unwrap(), rs(&[11, 5, 7]));
        assert_eq!(shift_matrix(0), Err(Error::InvalidOrder(0)));
        for m in 1..=8 {
            let q = shift_matrix(m).unwrap();
            assert_eq!(mat_pow(&q, m as u64), SquareMatrix::identity(m));
            assert_eq!(sigma(&q).unwrap(), r(1));
        }
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&shift_polynomial(3, 2, 1).unwrap()).unwrap(), r(3));
        assert_eq!(sigma(&SquareMatrix::uniform(4).unwrap()).unwrap(), r(1));
        let lopsided = SquareMatrix::from_integers(&[vec![1, 2], vec![3, 0]]).unwrap();
        assert_eq!(sigma(&lopsided), Err(Error::NotEqualSum));
        // Rows and columns each sum to 3 but rows only: [[1,2],[2,1]] is fine.
        let ok = SquareMatrix::from_integers(&[vec![1, 2], vec![2, 1]]).unwrap();
        assert_eq!(sigma(&ok).unwrap(), r(3));
    }

    #[test]
    fn sigma_of_h_sum_is_weighted_power_of_two() {
        let (n, m, k) = (3, 3, 10);
        let h = cyclic_hvector(k + 1 + n, k).unwrap();
        let a = shift_polynomial(m, 1, 1).unwrap();
        let s = power_combination(&a, &to_rationals(&h));
        // σ(A^j) = 2^j and σ is linear.
        let expected: BigInt = h.iter().enumerate().map(|(j, hj)| hj << j).sum();
        assert_eq!(sigma(&s).unwrap(), BigRational::from_integer(expected));
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&SquareMatrix::uniform(5).unwrap()).unwrap(), r(0));
        for m in 2..6 {
            assert_eq!(delta(&SquareMatrix::identity(m)).unwrap(), r(1));
        }
        assert_eq!(
            delta(&shift_polynomial(3, 2, 1).unwrap()).unwrap(),
            rq(2, 3)
        );
        let zero = SquareMatrix::from_integers(&[vec![0, 0], vec![0, 0]]).unwrap();
        assert_eq!(delta(&zero), Err(Error::ZeroSigma));
    }

    #[test]
    fn mat_ops_examples() {
        let step = shift_polynomial(2, 2, 1).unwrap();
        assert_eq!(row_apply(&rs(&[0, 1]), &step).unwrap(), rs(&[1, 2]));
        assert_eq!(
            row_apply(&rs(&[0, 1]), &mat_pow(&step, 3)).unwrap(),
            rs(&[13, 14])
        );
        assert_eq!(mat_pow(&step, 0), SquareMatrix::identity(2));
        assert!(matches!(
            mat_mul(&step, &SquareMatrix::identity(3)),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(row_apply(&rs(&[1, 2, 3]), &step).is_err());
    }

    #[test]
    fn shift_polynomials_commute_with_q() {
        for m in 1..=6 {
            let q = shift_matrix(m).unwrap();
            for (a, b) in [(1, 1), (2, 1), (1, 2)] {
                let p = shift_polynomial(m, a, b).unwrap();
                assert_eq!(mat_mul(&p, &q).unwrap(), mat_mul(&q, &p).unwrap());
                for e in 0..6u64 {
                    let pe = mat_pow(&p, e);
                    assert_eq!(sigma(&pe).unwrap(), r(a + b).pow(e as i32));
                }
            }
        }
    }

    #[test]
    fn prism_identity_examples() {
        let point = FVector::point();
        let cube = tower(&point, TowerKind::Prism, 3).unwrap();
        let lhs = minus_e1(modular_row(&cube, 2).unwrap());
        assert_eq!(lhs, rs(&[13, 14]));
        assert!(prism_identity_holds(&point, 2, 3).unwrap().holds);
        assert!(prism_identity_holds(&point, 3, 20).unwrap().holds);
        let rep = prism_identity_holds(&square(), 5, 30).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.checked, 30);
    }

    #[test]
    fn pyramid_and_bipyramid_identity_examples() {
        assert!(
            pyramid_identity_holds(&FVector::point(), 3, 20)
                .unwrap()
                .holds
        );
        let octa = bipyramid_step(&square()).unwrap();
        let octa3 = modular_row(&octa, 3).unwrap();
        assert_eq!(octa3, rs(&[9, 7, 12]));
        // (2,4,4)(I+2Q) = (10,8,12); c = (1,1,0).
        let raw = row_apply(
            &modular_row(&square(), 3).unwrap(),
            &shift_polynomial(3, 1, 2).unwrap(),
        )
        .unwrap();
        assert_eq!(raw, rs(&[10, 8, 12]));
        assert!(bipyramid_identity_holds(&square(), 3, 1).unwrap().holds);
        let segment = make_fvector([2]).unwrap();
        assert!(bipyramid_identity_holds(&segment, 4, 10).unwrap().holds);
        assert_eq!(
            bipyramid_identity_holds(&FVector::point(), 3, 5),
            Err(Error::DegenerateBase)
        );
    }

    #[test]
    fn bipyramid_correction_coincides_at_m1() {
        // Both units fall into the single slot when m = 1.
        let segment = make_fvector([2]).unwrap();
        assert!(bipyramid_identity_holds(&segment, 1, 12).unwrap().holds);
    }

    #[test]
    fn identity_checker_locates_first_failure() {
        let mut checker = Checker::new();
        checker.compare(3, &rs(&[1, 2, 3]), &rs(&[1, 2, 3]));
        checker.finish_index();
        checker.compare(4, &rs(&[1, 2, 3]), &rs(&[1, 5, 3]));
        checker.compare(5, &rs(&[0, 0, 0]), &rs(&[1, 1, 1]));
        let rep = checker.report();
        assert!(!rep.holds);
        let fail = rep.first_failure.unwrap();
        assert_eq!((fail.k, fail.residue), (4, 0));
        assert_eq!((fail.lhs, fail.rhs), (r(2), r(5)));
    }

    #[test]
    fn stacked_identity_examples() {
        assert!(stacked_identity_holds(0, 3, 30).unwrap().holds);
        assert!(stacked_identity_holds(2, 3, 40).unwrap().holds);
        assert!(stacked_identity_holds(5, 7, 40).unwrap().holds);
        assert!(stacked_identity_holds(1, 3, 1).is_err());
    }

    #[test]
    fn cyclic_identity_examples() {
        // Quadrilateral: h = (1,2,1), e₁(I + 4Q + 4Q² + Q³) = (1,4,4,1).
        assert_eq!(
            cyclic_modified_modular(1, 2, 4).unwrap(),
            [1, 4, 4, 1].map(BigInt::from)
        );
        assert!(cyclic_identity_holds(1, 4, 2).unwrap().holds);
        assert!(cyclic_identity_holds(0, 3, 30).unwrap().holds);
        assert!(cyclic_identity_holds(3, 5, 40).unwrap().holds);
    }

    #[test]
    fn grouped_h_sum_matches_direct_sum() {
        for m in 2..=4 {
            for k in [5usize, 9, 17] {
                let h = cyclic_hvector(k + 3, k).unwrap();
                let a = shift_polynomial(m, 1, 1).unwrap();
                let direct = power_combination(&a, &to_rationals(&h));
                let b = mat_pow(&a, 2 * m as u64);
                let mut regrouped = SquareMatrix::from_fn(m, |_, _| BigRational::zero());
                for (i, group) in coefficient_groups(&h, m).iter().enumerate() {
                    let inner = power_combination(&b, &to_rationals(group));
                    let block = mat_mul(&mat_pow(&a, i as u64), &inner).unwrap();
                    regrouped = regrouped.add(&block).unwrap();
                }
                assert_eq!(direct, regrouped, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn spread_examples() {
        let two = spread_profile(2, 5).unwrap();
        assert_eq!(
            spread_base(2).unwrap(),
            SquareMatrix::from_integers(&[vec![8, 8], vec![8, 8]]).unwrap()
        );
        assert!(two.iter().all(|row| row.delta.is_zero()));
        let three = spread_profile(3, 12).unwrap();
        // Residue-class sums of C(6, t): 22, 21, 21 over 2^6.
        assert_eq!(three[0].delta, rq(1, 64));
        assert!(three.windows(2).all(|w| w[0].delta >= w[1].delta));
        assert!(spread_profile(1, 3).is_err());
    }

    #[test]
    fn unimodal_examples() {
        assert!(unimodal(&[1, 3, 3, 1]));
        assert!(!unimodal(&[1, 2, 1, 2]));
        assert!(unimodal(&[5]));
        assert!(unimodal(&[3, 2, 1]));
        assert!(unimodal(&[1, 2, 2, 2]));
    }

    #[test]
    fn unimodal_h_subsequences() {
        for k in 2..=60 {
            for n in 0..=5 {
                let h = cyclic_hvector(k + 1 + n, k).unwrap();
                for m in 1..=6 {
                    for group in coefficient_groups(&h, m) {
                        assert!(unimodal(&group), "k={k} n={n} m={m}");
                    }
                }
            }
        }
    }

    fn delta_of(base: &SquareMatrix, coeffs: &[i64]) -> BigRational {
        delta(&power_combination(base, &rs(coeffs))).unwrap()
    }

    #[test]
    fn flat_sum_beats_binomial_sum_at_m2() {
        // B = 8J at m = 2, so only the identity term carries spread:
        // δ(I+B+B²) = 1/273 while δ((I+B)²) = 1/289.
        let b = spread_base(2).unwrap();
        assert_eq!(delta_of(&b, &[1, 1, 1]), rq(1, 273));
        assert_eq!(delta_of(&b, &[1, 2, 1]), rq(1, 289));
    }

    proptest! {
        #[test]
        fn mediant_between(a in 1i64..1_000_000, b in 1i64..1_000_000, c in 1i64..1_000_000, d in 1i64..1_000_000) {
            prop_assert!(mediant_bound_holds(&a.into(), &b.into(), &c.into(), &d.into()));
        }

        #[test]
        fn sigma_multiplicative(
            m in 1usize..6,
            x in proptest::collection::vec(0i64..20, 1..6),
            y in proptest::collection::vec(0i64..20, 1..6),
        ) {
            let mx = SquareMatrix::circulant(m, &rs(&x)).unwrap();
            let my = SquareMatrix::circulant(m, &rs(&y)).unwrap();
            let prod = mat_mul(&mx, &my).unwrap();
            prop_assert_eq!(sigma(&prod).unwrap(), sigma(&mx).unwrap() * sigma(&my).unwrap());
            if let Ok(dl) = delta(&prod) {
                prop_assert!(dl >= r(0) && dl <= r(1));
            }
        }

        #[test]
        fn nondecreasing_coefficients_spread_below_binomial(
            m in 3usize..=4,
            steps in proptest::collection::vec(0i64..50, 1..=7),
            start in 1i64..20,
        ) {
            let coeffs: Vec<i64> = steps.iter().scan(start, |acc, s| { *acc += s; Some(*acc) }).collect();
            let rdeg = coeffs.len() - 1;
            let b = spread_base(m).unwrap();
            let constant = vec![*coeffs.last().unwrap(); coeffs.len()];
            let binom: Vec<i64> = (0..=rdeg as i64)
                .map(|t| crate::exact::binomial(rdeg as i64, t).try_into().unwrap())
                .collect();
            let lhs = delta_of(&b, &coeffs);
            let mid = delta_of(&b, &constant);
            let rhs = delta_of(&b, &binom);
            prop_assert!(lhs <= mid);
            prop_assert!(mid <= rhs);
        }
    }
}
