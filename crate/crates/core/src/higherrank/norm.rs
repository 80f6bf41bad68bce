use super::datum::ShoreDatum;
use crate::corearith::GroupHom;
use crate::rayclass::{LevelStructure, Torsor};
use crate::{Error, Result};

/// `π₀(NR(μ_h))` on ray classes in the rank-one shore case `T = Res_{E/ℚ}𝔾_m`,
/// `F = E`, where `μ_h` picks out one embedding factor: the reflex norm sends
/// an ideal `J` to `∏_{σ ∈ Φ} σ(J)` with `Φ = {id}`.
///
/// The map is computed on the ideal labels of the torsor rather than assumed.
pub fn reciprocity_norm_rank1(d: i64, level: LevelStructure) -> Result<GroupHom> {
    let torsor = Torsor::new(crate::rayclass::RayClassGroup::new(d, level)?)?;
    let g = torsor.group.group();
    let mut images = Vec::with_capacity(g.rank());
    for i in 0..g.rank() {
        let mut e = g.identity();
        e[i] = 1;
        let class = torsor.group.element(e);
        let p = torsor.point_of_class(&class)?;
        let (ideal, scale) = torsor.labels[p.index];
        // Φ = {id}: the type norm is the ideal itself.
        let reflex_norm = [ideal];
        let mut acc = torsor.group.identity();
        for j in reflex_norm {
            let c = torsor.group.class_of_scaled(&j, scale)?;
            acc = torsor.group.add(&acc, &c)?;
        }
        images.push(acc.coords);
    }
    GroupHom::from_images(g, g, images)
}

/// Reflex norm for a shore datum; only the rank-one type `(0, 1)` over a real
/// quadratic field is available.
pub fn reciprocity_norm(datum: &ShoreDatum, d: i64, level: LevelStructure) -> Result<GroupHom> {
    if datum.n != 1 || datum.k1 != 1 {
        return Err(Error::Unsupported(format!(
            "reflex norms are only implemented in rank one with type (0,1), not ({},{})",
            datum.k0, datum.k1
        )));
    }
    reciprocity_norm_rank1(d, level)
}
