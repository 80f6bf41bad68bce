use serde::Serialize;

use super::geodesic::OrientedGeodesic;
use super::point::ExtendedReal;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TorusKind {
    Split,
    Nonsplit,
}

/// The ℚ-torus fixing the two endpoints of a geodesic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorusDescriptor {
    pub kind: TorusKind,
    /// Fundamental discriminant of the splitting field when nonsplit.
    pub field_discriminant: Option<i64>,
}

impl TorusDescriptor {
    pub fn split() -> Self {
        TorusDescriptor {
            kind: TorusKind::Split,
            field_discriminant: None,
        }
    }

    pub fn nonsplit(field_discriminant: i64) -> Self {
        TorusDescriptor {
            kind: TorusKind::Nonsplit,
            field_discriminant: Some(field_discriminant),
        }
    }
}

/// The Mumford–Tate torus of a geodesic with exact endpoints.
///
/// Rational endpoints give the split torus; conjugate quadratic endpoints
/// give `Res_{E/ℚ} 𝔾_m` for `E = ℚ(√d)`. Any other configuration is not
/// contained in a proper ℚ-torus and is reported as unsupported, as are
/// endpoints of degree greater than 2.
pub fn bmt(g: &OrientedGeodesic) -> Result<TorusDescriptor> {
    let (r, t) = (g.repelling(), g.attracting());
    if r.degree() > 2 || t.degree() > 2 {
        return Err(Error::Unsupported("endpoint of degree > 2 over ℚ".into()));
    }
    match (r, t) {
        (ExtendedReal::Quadratic(a), ExtendedReal::Quadratic(b)) if &a.conj() == b => {
            let d = a.radicand();
            Ok(TorusDescriptor::nonsplit(if d % 4 == 1 { d } else { 4 * d }))
        }
        _ if r.is_rational() && t.is_rational() => Ok(TorusDescriptor::split()),
        _ => Err(Error::Unsupported(format!(
            "endpoints {r} and {t} are neither both rational nor conjugate; the fixing group is not a torus"
        ))),
    }
}

/// Special means the Mumford–Tate torus is nonsplit.
pub fn is_special(g: &OrientedGeodesic) -> bool {
    matches!(bmt(g), Ok(TorusDescriptor { kind: TorusKind::Nonsplit, .. }))
}
