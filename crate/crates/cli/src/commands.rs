use modfvec::circulant::{
    bipyramid_identity_holds, cyclic_identity_holds, prism_identity_holds, pyramid_identity_holds,
    spread_profile, stacked_identity_holds, IdentityReport,
};
use modfvec::convergence::{sweep, threshold_of, Threshold};
use modfvec::exact::{format_rational, modular_reduce, parse_rational, ExactRational};
use modfvec::families::family_fvector;
use modfvec::verify::{self, Formulas, Grid, Target};
use modfvec::{FVector, FamilySpec};
use num_traits::Signed;
use serde::Serialize;

use crate::output::{csv_line, json_int_array, outln, print_json};
use crate::{seeds, Failure, Fault, Format, IdentityFamily, VerifyTarget};

type TowerCheck = fn(&FVector, usize, usize) -> modfvec::Result<IdentityReport>;

pub fn fvector(spec: &FamilySpec, k: usize, format: Format) -> Result<(), Failure> {
    let f = family_fvector(spec, k)?;
    match format {
        Format::Json => outln!("{}", json_int_array(f.counts())),
        Format::Csv => outln!("{}", csv_line(&strings(f.counts()))),
    }
    Ok(())
}

pub fn modular(f: &FVector, m: usize, format: Format) -> Result<(), Failure> {
    let mv = modular_reduce(f, m)?;
    match format {
        Format::Json => outln!("{}", json_int_array(mv.counts())),
        Format::Csv => outln!("{}", csv_line(&strings(mv.counts()))),
    }
    Ok(())
}

fn strings<T: ToString>(values: &[T]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn exact_string(q: &ExactRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Serialize)]
struct SweepRow {
    k: usize,
    dim: usize,
    total: String,
    /// m-modular counts, exact.
    counts: Vec<String>,
    ratios: Vec<String>,
    distance: String,
    distance_exact: String,
}

#[derive(Serialize)]
struct SweepTable {
    family: String,
    m: usize,
    digits: usize,
    rows: Vec<SweepRow>,
    /// Distance at the last k is strictly below the distance at the first.
    distance_decreased: bool,
}

fn k_range(kmin: usize, kmax: usize) -> Result<std::ops::RangeInclusive<usize>, Failure> {
    if kmin > kmax {
        return Err(Failure::Usage(format!("empty k range {kmin}..={kmax}")));
    }
    Ok(kmin..=kmax)
}

pub fn converge(
    spec: &FamilySpec,
    m: usize,
    kmin: usize,
    kmax: usize,
    digits: usize,
    format: Format,
) -> Result<(), Failure> {
    if digits < 1 {
        return Err(Failure::Usage("--digits must be at least 1".into()));
    }
    let points = sweep(spec, m, k_range(kmin, kmax)?)?;
    let decreased = points.last().unwrap().distance < points[0].distance;
    let rows: Vec<SweepRow> = points
        .iter()
        .map(|p| SweepRow {
            k: p.k,
            dim: p.dim(),
            total: p.total.to_string(),
            counts: strings(p.modular.counts()),
            ratios: p
                .ratios
                .iter()
                .map(|r| format_rational(r, digits))
                .collect(),
            distance: format_rational(&p.distance, digits),
            distance_exact: exact_string(&p.distance),
        })
        .collect();
    match format {
        Format::Json => print_json(&SweepTable {
            family: spec.to_string(),
            m,
            digits,
            rows,
            distance_decreased: decreased,
        }),
        Format::Csv => {
            let mut header = vec!["k".to_string(), "dim".into(), "total".into()];
            header.extend((0..m).map(|r| format!("ratio_{r}")));
            header.push("distance".into());
            outln!("{}", csv_line(&header));
            for row in rows {
                let mut fields = vec![row.k.to_string(), row.dim.to_string(), row.total];
                fields.extend(row.ratios);
                fields.push(row.distance);
                outln!("{}", csv_line(&fields));
            }
            eprintln!("distance_decreased={decreased}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct ThresholdOutput {
    family: String,
    m: usize,
    eps: String,
    kmin: usize,
    kmax: usize,
    threshold: Option<usize>,
}

pub fn threshold(
    spec: &FamilySpec,
    m: usize,
    eps: &str,
    kmin: usize,
    kmax: usize,
) -> Result<(), Failure> {
    let eps_value = parse_rational(eps)?;
    if !eps_value.is_positive() {
        return Err(Failure::Usage("--eps must be positive".into()));
    }
    let points = sweep(spec, m, k_range(kmin, kmax)?)?;
    let found = match threshold_of(&points, &eps_value) {
        Threshold::Reached(k) => Some(k),
        Threshold::NotReached => None,
    };
    print_json(&ThresholdOutput {
        family: spec.to_string(),
        m,
        eps: exact_string(&eps_value),
        kmin,
        kmax,
        threshold: found,
    });
    match found {
        Some(_) => Ok(()),
        None => Err(Failure::Cap(format!(
            "distance not below {eps} for all k up to the scan cap {kmax}"
        ))),
    }
}

#[derive(Serialize)]
struct MismatchOutput {
    family: String,
    params: String,
    dim: i64,
    formula: String,
    oracle: String,
}

#[derive(Serialize)]
struct VerifyOutput {
    target: &'static str,
    checked: usize,
    passed: bool,
    mismatch: Option<MismatchOutput>,
}

pub fn verify(
    target: VerifyTarget,
    dmax: Option<usize>,
    kmax: Option<usize>,
    fault: Option<Fault>,
) -> Result<(), Failure> {
    let mut grid = Grid::default();
    if let Some(d) = dmax {
        grid.stacked_dims = *grid.stacked_dims.start()..=d;
        grid.cyclic_dims = *grid.cyclic_dims.start()..=d;
    }
    if let Some(k) = kmax {
        grid.tower_k_max = k;
    }
    let mut formulas = Formulas::default();
    if fault == Some(Fault::StackedBinomial) {
        formulas.stacked = verify::faulty_stacked_fvector;
    }
    let (core_target, name) = match target {
        VerifyTarget::All => (Target::All, "all"),
        VerifyTarget::Tower => (Target::Towers, "tower"),
        VerifyTarget::Stacked => (Target::Stacked, "stacked"),
        VerifyTarget::Cyclic => (Target::Cyclic, "cyclic"),
    };
    let report = verify::verify(&grid, &formulas, core_target)?;
    print_json(&VerifyOutput {
        target: name,
        checked: report.checked,
        passed: report.passed(),
        mismatch: report.mismatch.as_ref().map(|m| MismatchOutput {
            family: m.family.clone(),
            params: m.params.clone(),
            dim: m.dim,
            formula: m.formula.to_string(),
            oracle: m.oracle.to_string(),
        }),
    });
    match report.mismatch {
        None => Ok(()),
        Some(m) => Err(Failure::Check(format!("mismatch: {m}"))),
    }
}

#[derive(Serialize)]
struct FailureOutput {
    k: usize,
    residue: i64,
    lhs: String,
    rhs: String,
}

#[derive(Serialize)]
struct IdentityRow {
    identity: &'static str,
    params: String,
    holds: bool,
    checked: usize,
    first_failure: Option<FailureOutput>,
}

fn identity_row(identity: &'static str, params: String, report: IdentityReport) -> IdentityRow {
    IdentityRow {
        identity,
        params,
        holds: report.holds,
        checked: report.checked,
        first_failure: report.first_failure.map(|f| FailureOutput {
            k: f.k,
            residue: f.residue,
            lhs: f.lhs.to_string(),
            rhs: f.rhs.to_string(),
        }),
    }
}

pub fn identities(
    families: &[IdentityFamily],
    m: usize,
    kmax: usize,
    n: Option<usize>,
    seed: Option<&str>,
    format: Format,
) -> Result<(), Failure> {
    let ns: Vec<usize> = match n {
        Some(n) => vec![n],
        None => (0..=5).collect(),
    };
    let seeds_for = |default: &[&'static str]| -> Vec<String> {
        match seed {
            Some(s) => vec![s.to_string()],
            None => default.iter().map(|s| s.to_string()).collect(),
        }
    };
    let mut rows = Vec::new();
    for &family in families {
        match family {
            IdentityFamily::Prism | IdentityFamily::Pyramid | IdentityFamily::Bipyramid => {
                let (name, defaults, check): (_, &[&str], TowerCheck) = match family {
                    IdentityFamily::Prism => ("prism", &["point", "square"], prism_identity_holds),
                    IdentityFamily::Pyramid => {
                        ("pyramid", &["point", "square"], pyramid_identity_holds)
                    }
                    _ => (
                        "bipyramid",
                        &["segment", "square"],
                        bipyramid_identity_holds,
                    ),
                };
                for s in seeds_for(defaults) {
                    let f = seeds::parse_seed(&s)?;
                    let report = check(&f, m, kmax)?;
                    rows.push(identity_row(name, format!("seed={s}"), report));
                }
            }
            IdentityFamily::Stacked => {
                for &n in &ns {
                    rows.push(identity_row(
                        "stacked",
                        format!("n={n}"),
                        stacked_identity_holds(n, m, kmax)?,
                    ));
                }
            }
            IdentityFamily::Cyclic => {
                for &n in &ns {
                    rows.push(identity_row(
                        "cyclic",
                        format!("n={n}"),
                        cyclic_identity_holds(n, m, kmax)?,
                    ));
                }
            }
        }
    }
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.holds)
        .map(|r| format!("{} {}", r.identity, r.params))
        .collect();
    match format {
        Format::Json => print_json(&rows),
        Format::Csv => {
            outln!("identity,params,m,kmax,holds,checked,first_failure_k");
            for r in &rows {
                let k = r
                    .first_failure
                    .as_ref()
                    .map(|f| f.k.to_string())
                    .unwrap_or_default();
                outln!(
                    "{}",
                    csv_line(&[
                        r.identity.to_string(),
                        r.params.clone(),
                        m.to_string(),
                        kmax.to_string(),
                        r.holds.to_string(),
                        r.checked.to_string(),
                        k,
                    ])
                );
            }
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!(
            "identity failed: {}",
            failed.join("; ")
        )))
    }
}

#[derive(Serialize)]
struct SpreadOutputRow {
    j: usize,
    delta: String,
    delta_exact: String,
    argmax: [usize; 2],
    argmin: [usize; 2],
}

pub fn spread(m: usize, jmax: usize, digits: usize, format: Format) -> Result<(), Failure> {
    let rows: Vec<SpreadOutputRow> = spread_profile(m, jmax)?
        .into_iter()
        .map(|r| SpreadOutputRow {
            j: r.j,
            delta: format_rational(&r.delta, digits),
            delta_exact: exact_string(&r.delta),
            argmax: [r.argmax.0, r.argmax.1],
            argmin: [r.argmin.0, r.argmin.1],
        })
        .collect();
    match format {
        Format::Json => print_json(&rows),
        Format::Csv => {
            outln!("j,delta,delta_exact,argmax_row,argmax_col,argmin_row,argmin_col");
            for r in rows {
                outln!(
                    "{}",
                    csv_line(&[
                        r.j.to_string(),
                        r.delta,
                        r.delta_exact,
                        r.argmax[0].to_string(),
                        r.argmax[1].to_string(),
                        r.argmin[0].to_string(),
                        r.argmin[1].to_string(),
                    ])
                );
            }
        }
    }
    Ok(())
}
