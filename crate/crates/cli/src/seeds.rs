use modfvec::families::{tower, TowerKind};
use modfvec::FVector;

use crate::Failure;

/// Named seed polytopes: `point`, `segment`, `square`, `cube` (3-cube),
/// `cube:d`, `simplex:d`, `crosspolytope:d`.
pub fn parse_seed(name: &str) -> Result<FVector, Failure> {
    let (base, arg) = match name.split_once(':') {
        Some((b, a)) => {
            let d: usize = a
                .parse()
                .map_err(|_| Failure::Usage(format!("bad seed dimension in {name:?}")))?;
            (b, Some(d))
        }
        None => (name, None),
    };
    let point = FVector::point();
    let f = match (base, arg) {
        ("point", None) => point,
        ("segment", None) => FVector::simplex(1),
        ("square", None) => tower(&point, TowerKind::Prism, 2)?,
        ("cube", None) => tower(&point, TowerKind::Prism, 3)?,
        ("cube", Some(d)) => tower(&point, TowerKind::Prism, d)?,
        ("simplex", Some(d)) => FVector::simplex(d),
        ("crosspolytope", Some(0)) => point,
        ("crosspolytope", Some(d)) => tower(&FVector::simplex(1), TowerKind::Bipyramid, d - 1)?,
        _ => return Err(Failure::Usage(format!("unknown seed {name:?}"))),
    };
    Ok(f)
}
