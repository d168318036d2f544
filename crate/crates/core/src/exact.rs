//! Exact integer and rational building blocks: binomials, face vectors,
//! modular reduction and distance to the uniform distribution.
//!
//! Face dimensions run from `-1` (the empty face) to `d` (the polytope
//! itself). Every sequence indexed by dimension is stored with offset `+1`,
//! so storage index `j` holds dimension `j - 1`. Residue representatives
//! modulo `m` are `-1, 0, ..., m - 2`, stored the same way; dimension `i`
//! therefore lands in slot `(i + 1) mod m`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Exact rational in canonical form (denominator positive, gcd 1).
pub type ExactRational = BigRational;

/// `C(n, k)`, zero whenever `k < 0`, `n < 0` or `k > n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        // acc = C(n, t) here; C(n, t+1) = C(n, t) * (n - t) / (t + 1) is exact.
        acc *= n - t;
        acc /= t + 1;
    }
    acc
}

/// Rows `0..=n_max` of Pascal's triangle, for callers that need many
/// binomials with small arguments.
#[derive(Debug, Clone)]
pub struct PascalTable {
    rows: Vec<Vec<BigInt>>,
}

impl PascalTable {
    pub fn new(n_max: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n_max + 1);
        rows.push(vec![BigInt::one()]);
        for n in 1..=n_max {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigInt::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        PascalTable { rows }
    }

    /// Same conventions as [`binomial`]. Panics if `n` exceeds the table.
    pub fn get(&self, n: i64, k: i64) -> BigInt {
        if n < 0 || k < 0 || k > n {
            return BigInt::zero();
        }
        self.rows[n as usize][k as usize].clone()
    }
}

/// Face counts `f_{-1}, f_0, ..., f_d` of a `d`-polytope.
///
/// Always satisfies `f_{-1} = f_d = 1`, positive entries and Euler's relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FVector {
    counts: Vec<BigInt>,
}

impl FVector {
    /// The 0-polytope: one empty face, one vertex.
    pub fn point() -> Self {
        FVector {
            counts: vec![BigInt::one(), BigInt::one()],
        }
    }

    /// The `d`-simplex, `f_i = C(d+1, i+1)`.
    pub fn simplex(d: usize) -> Self {
        let d = d as i64;
        FVector {
            counts: (-1..=d).map(|i| binomial(d + 1, i + 1)).collect(),
        }
    }

    /// Validates a full sequence indexed `-1..=d`.
    pub fn from_counts<I, T>(counts: I) -> Result<Self>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let counts: Vec<BigInt> = counts.into_iter().map(Into::into).collect();
        if counts.len() < 2 {
            return Err(Error::EmptyInput);
        }
        let last = counts.len() - 1;
        if !counts[0].is_one() {
            return Err(Error::InvalidParams("f_{-1} must equal 1".into()));
        }
        if !counts[last].is_one() {
            return Err(Error::InvalidParams("f_d must equal 1".into()));
        }
        if let Some(j) = counts.iter().position(|c| !c.is_positive()) {
            return Err(Error::NonPositiveCount { dim: j as i64 - 1 });
        }
        let sum = alternating_sum(&counts);
        if !sum.is_zero() {
            return Err(Error::EulerViolation {
                sum: sum.to_string(),
            });
        }
        Ok(FVector { counts })
    }

    /// Builds from values the caller has already established to be a valid
    /// face vector.
    pub(crate) fn from_trusted(counts: Vec<BigInt>) -> Self {
        debug_assert!(counts.len() >= 2 && alternating_sum(&counts).is_zero());
        FVector { counts }
    }

    /// No validation at all; used to model broken formulas in tests.
    pub(crate) fn from_trusted_unchecked(counts: Vec<BigInt>) -> Self {
        FVector { counts }
    }

    pub fn dim(&self) -> usize {
        self.counts.len() - 2
    }

    /// Counts indexed by storage offset (`counts()[0]` is `f_{-1}`).
    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// `f_i`, zero for `i < -1` or `i > d`.
    pub fn get(&self, i: i64) -> BigInt {
        if i < -1 || i > self.dim() as i64 {
            BigInt::zero()
        } else {
            self.counts[(i + 1) as usize].clone()
        }
    }

    pub fn into_counts(self) -> Vec<BigInt> {
        self.counts
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.counts)
    }
}

fn write_tuple(f: &mut fmt::Formatter<'_>, values: &[BigInt]) -> fmt::Result {
    f.write_str("(")?;
    for (j, v) in values.iter().enumerate() {
        if j > 0 {
            f.write_str(",")?;
        }
        write!(f, "{v}")?;
    }
    f.write_str(")")
}

fn alternating_sum(counts: &[BigInt]) -> BigInt {
    // Storage index j is dimension j-1, so even j carries sign -1.
    counts.iter().enumerate().fold(
        BigInt::zero(),
        |acc, (j, c)| {
            if j % 2 == 0 {
                acc - c
            } else {
                acc + c
            }
        },
    )
}

/// `f` given its proper counts `f_0, ..., f_{d-1}`; the improper faces are
/// added and Euler's relation is checked.
pub fn make_fvector<I, T>(proper_counts: I) -> Result<FVector>
where
    I: IntoIterator<Item = T>,
    T: Into<BigInt>,
{
    let proper: Vec<BigInt> = proper_counts.into_iter().map(Into::into).collect();
    if proper.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut counts = Vec::with_capacity(proper.len() + 2);
    counts.push(BigInt::one());
    counts.extend(proper);
    counts.push(BigInt::one());
    FVector::from_counts(counts)
}

pub fn total_faces(f: &FVector) -> BigInt {
    f.counts.iter().sum()
}

/// Residue sums of an offset-indexed sequence: slot `s` accumulates every
/// storage index `j` with `j ≡ s (mod m)`.
pub fn reduce_residues(values: &[BigInt], m: usize) -> Result<Vec<BigInt>> {
    if m < 1 {
        return Err(Error::InvalidModulus(m));
    }
    let mut out = vec![BigInt::zero(); m];
    for (j, v) in values.iter().enumerate() {
        out[j % m] += v;
    }
    Ok(out)
}

/// Face counts grouped by dimension residue modulo `m`.
///
/// Slot `s` holds the representative `s - 1`; the components sum to the
/// total face count of the source.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModularVector {
    counts: Vec<BigInt>,
}

impl ModularVector {
    pub fn new(counts: Vec<BigInt>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidModulus(0));
        }
        if counts.iter().any(|c| c.is_negative()) {
            return Err(Error::InvalidParams(
                "modular vector components must be nonnegative".into(),
            ));
        }
        Ok(ModularVector { counts })
    }

    pub fn modulus(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// Component for representative `r` in `-1..=m-2`.
    pub fn get(&self, r: i64) -> &BigInt {
        &self.counts[(r + 1) as usize]
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// `counts / total` as exact rationals.
    pub fn ratios(&self) -> Result<Vec<ExactRational>> {
        let total = self.total();
        if total.is_zero() {
            return Err(Error::ZeroTotal);
        }
        Ok(self
            .counts
            .iter()
            .map(|c| BigRational::new(c.clone(), total.clone()))
            .collect())
    }
}

impl fmt::Display for ModularVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_tuple(f, &self.counts)
    }
}

/// The m-modular f-vector `f^m`.
pub fn modular_reduce(f: &FVector, m: usize) -> Result<ModularVector> {
    Ok(ModularVector {
        counts: reduce_residues(&f.counts, m)?,
    })
}

/// Euler's relation in the form `f^2_{-1} = f^2_0`. Works on raw sequences
/// indexed from dimension `-1`, valid or not.
pub fn euler_holds(counts: &[BigInt]) -> bool {
    match reduce_residues(counts, 2) {
        Ok(halves) => halves[0] == halves[1],
        Err(_) => false,
    }
}

/// Sup-norm distance `max_r |mv[r] / total - 1/m|`.
pub fn distance_to_uniform(mv: &ModularVector) -> Result<ExactRational> {
    let m = BigInt::from(mv.modulus());
    let uniform = BigRational::new(BigInt::one(), m);
    let ratios = mv.ratios()?;
    Ok(ratios
        .into_iter()
        .map(|r| (r - &uniform).abs())
        .max()
        .unwrap_or_else(BigRational::zero))
}

/// Fixed-point decimal with `digits` fractional digits, rounded half to even.
pub fn format_rational(q: &ExactRational, digits: usize) -> String {
    let negative = q.is_negative();
    let q = q.abs();
    let scale = num_traits::pow(BigInt::from(10u32), digits);
    let scaled_num = q.numer() * &scale;
    let (mut quot, rem) = scaled_num.div_rem(q.denom());
    let twice = &rem * 2u32;
    let round_up = match twice.cmp(q.denom()) {
        std::cmp::Ordering::Greater => true,
        std::cmp::Ordering::Equal => quot.is_odd(),
        std::cmp::Ordering::Less => false,
    };
    if round_up {
        quot += 1u32;
    }
    let (int_part, frac_part) = quot.div_rem(&scale);
    let sign = if negative && !quot.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(digits - frac.len()))
}

/// Parses `p/q`, a plain decimal (`0.001`) or scientific notation (`1e-3`).
pub fn parse_rational(text: &str) -> Result<ExactRational> {
    let err = || Error::ParseRational(text.to_string());
    let s = text.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = s[pos + 1..].parse().map_err(|_| err())?;
            (&s[..pos], e)
        }
        None => (s, 0),
    };
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_digits, frac_digits) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_digits.is_empty() && frac_digits.is_empty() {
        return Err(err());
    }
    if !int_digits
        .chars()
        .chain(frac_digits.chars())
        .all(|c| c.is_ascii_digit())
    {
        return Err(err());
    }
    let digits: BigInt = format!("{int_digits}{frac_digits}0")
        .parse()
        .map_err(|_| err())?;
    // The trailing 0 above keeps parse happy on inputs like ".5"; undo it.
    let mut value = BigRational::new(digits, BigInt::from(10));
    let shift = exponent - frac_digits.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let factor = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= factor;
    } else {
        value /= factor;
    }
    Ok(if negative { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat(p: i64, q: i64) -> ExactRational {
        BigRational::new(p.into(), q.into())
    }

    fn cube() -> FVector {
        make_fvector([8, 12, 6]).unwrap()
    }

    #[test]
    fn binomial_small_values_and_conventions() {
        assert_eq!(binomial(4, 2), BigInt::from(6));
        assert_eq!(binomial(3, -1), BigInt::zero());
        assert_eq!(binomial(3, 4), BigInt::zero());
        assert_eq!(binomial(-2, 1), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
        assert_eq!(binomial(7, 0), BigInt::one());
    }

    #[test]
    fn binomial_matches_pascal_rows() {
        // Independent route: grow a single Pascal row by in-place addition.
        let mut row = vec![BigInt::one()];
        for _ in 0..201 {
            let mut next = vec![BigInt::one(); row.len() + 1];
            for k in 1..row.len() {
                next[k] = &row[k - 1] + &row[k];
            }
            row = next;
        }
        assert_eq!(binomial(201, 100), row[100]);
        assert_eq!(row[100].to_string().len(), 60);
        let table = PascalTable::new(201);
        assert_eq!(table.get(201, 100), row[100]);
    }

    #[test]
    fn binomial_pascal_rule_exhaustive() {
        for n in 1..=64i64 {
            for k in -2..=n + 2 {
                assert_eq!(
                    binomial(n, k),
                    binomial(n - 1, k - 1) + binomial(n - 1, k),
                    "n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn make_fvector_examples() {
        assert_eq!(cube().counts(), &[1, 8, 12, 6, 1].map(BigInt::from));
        assert_eq!(cube().dim(), 3);
        let square = make_fvector([4, 4]).unwrap();
        assert_eq!(square.to_string(), "(1,4,4,1)");
        assert!(matches!(
            make_fvector([8, 12, 5]),
            Err(Error::EulerViolation { .. })
        ));
        assert_eq!(make_fvector(Vec::<i64>::new()), Err(Error::EmptyInput));
        assert!(matches!(
            make_fvector([0, 0]),
            Err(Error::NonPositiveCount { dim: 0 })
        ));
    }

    #[test]
    fn total_faces_examples() {
        assert_eq!(total_faces(&cube()), BigInt::from(28));
        assert_eq!(total_faces(&FVector::point()), BigInt::from(2));
        for d in 0..=20 {
            // Faces of a simplex are exactly the subsets of its d+1 vertices.
            assert_eq!(total_faces(&FVector::simplex(d)), BigInt::one() << (d + 1));
        }
    }

    #[test]
    fn modular_reduce_examples() {
        let c3 = modular_reduce(&cube(), 3).unwrap();
        assert_eq!(c3.counts(), &[7, 9, 12].map(BigInt::from));
        assert_eq!(c3.get(-1), &BigInt::from(7));
        let s5 = modular_reduce(&FVector::simplex(5), 3).unwrap();
        assert_eq!(s5.counts(), &[22, 21, 21].map(BigInt::from));
        let f = cube();
        assert_eq!(
            modular_reduce(&f, f.dim() + 2).unwrap().counts(),
            f.counts()
        );
        assert_eq!(modular_reduce(&f, 1).unwrap().counts(), &[BigInt::from(28)]);
        let wide = modular_reduce(&f, 8).unwrap();
        assert_eq!(wide.counts()[5..], [0, 0, 0].map(BigInt::from));
        assert_eq!(modular_reduce(&f, 0), Err(Error::InvalidModulus(0)));
    }

    #[test]
    fn euler_examples() {
        assert!(euler_holds(cube().counts()));
        assert!(!euler_holds(&[1, 8, 12, 5, 1].map(BigInt::from)));
    }

    #[test]
    fn distance_examples() {
        let c3 = modular_reduce(&cube(), 3).unwrap();
        // 12/28 - 1/3 = 36/84 - 28/84 = 8/84
        assert_eq!(distance_to_uniform(&c3).unwrap(), rat(2, 21));
        assert!(distance_to_uniform(&modular_reduce(&cube(), 2).unwrap())
            .unwrap()
            .is_zero());
        let flat = ModularVector::new(vec![5.into(), 5.into(), 5.into()]).unwrap();
        assert!(distance_to_uniform(&flat).unwrap().is_zero());
        let empty = ModularVector::new(vec![0.into(), 0.into()]).unwrap();
        assert_eq!(distance_to_uniform(&empty), Err(Error::ZeroTotal));
    }

    #[test]
    fn format_examples() {
        assert_eq!(format_rational(&rat(2, 21), 6), "0.095238");
        assert_eq!(format_rational(&rat(0, 1), 3), "0.000");
        assert_eq!(format_rational(&rat(1, 3), 4), "0.3333");
        assert_eq!(format_rational(&rat(1, 8), 2), "0.12");
        assert_eq!(format_rational(&rat(3, 8), 2), "0.38");
        assert_eq!(format_rational(&rat(-5, 2), 0), "-2");
        assert_eq!(format_rational(&rat(-1, 1000), 2), "0.00");
        assert_eq!(format_rational(&rat(123, 10), 1), "12.3");
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_rational("1/12").unwrap(), rat(1, 12));
        assert_eq!(parse_rational("0.001").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("1e-3").unwrap(), rat(1, 1000));
        assert_eq!(parse_rational("2.5E1").unwrap(), rat(25, 1));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), rat(-3, 1));
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("").is_err());
    }

    fn arb_fvector() -> impl Strategy<Value = FVector> {
        // Products of simplices and prisms give a spread of valid vectors.
        (0usize..8, 0usize..5).prop_map(|(d, prisms)| {
            let mut f = FVector::simplex(d);
            for _ in 0..prisms {
                f = crate::families::prism_step(&f);
            }
            f
        })
    }

    proptest! {
        #[test]
        fn modular_components_sum_to_total(f in arb_fvector()) {
            for m in 1..=f.dim() + 4 {
                let mv = modular_reduce(&f, m).unwrap();
                prop_assert_eq!(mv.total(), total_faces(&f));
            }
            prop_assert!(distance_to_uniform(&modular_reduce(&f, 2).unwrap()).unwrap().is_zero());
        }

        #[test]
        fn format_round_trips(p in -10_000i64..10_000, q in 1i64..5_000, digits in 1usize..12) {
            let value = rat(p, q);
            let text = format_rational(&value, digits);
            let back = parse_rational(&text).unwrap();
            let ulp = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits));
            prop_assert!((back - value).abs() < ulp);
        }
    }
}
