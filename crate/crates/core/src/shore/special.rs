use std::collections::HashMap;

use serde::Serialize;

use super::geodesic::{geodesic_of_form, OrientedGeodesic, PLUS_PLUS};
use crate::corearith::group::GroupElement;
use crate::quadforms::{BinaryQuadraticForm, Ideal};
use crate::rayclass::{LevelStructure, RayClass, TorsorPoint, TorsorRegistry};
use crate::{Error, Result};

/// A special point of discriminant `D` at a level, with its geometry.
#[derive(Clone, Debug, Serialize)]
pub struct SpecialPoint {
    pub point: TorsorPoint,
    pub class: RayClass,
    /// Label `scale · ideal`, an integral ideal prime to `N` in the class.
    pub ideal: Ideal,
    pub scale: i64,
    /// Reduced form of the ideal's narrow class and its cycle.
    pub form: BinaryQuadraticForm,
    pub cycle: Vec<BinaryQuadraticForm>,
    pub geodesic: OrientedGeodesic,
}

/// The special points at `level`, registered as a torsor under the ray class
/// group. At `N = 1` with both signs there is one point per narrow class.
pub fn special_set(registry: &mut TorsorRegistry, d: i64, level: LevelStructure) -> Result<Vec<SpecialPoint>> {
    let torsor = registry.register(d, level)?;
    torsor
        .points()
        .into_iter()
        .map(|p| {
            let (ideal, scale) = torsor.labels[p.index];
            let form = ideal.form().reduce();
            let cycle = form.reduction_cycle();
            let geodesic = geodesic_of_form(&form, PLUS_PLUS)?;
            Ok(SpecialPoint {
                point: p,
                class: torsor.class_of_point(&p)?,
                ideal,
                scale,
                form,
                cycle,
                geodesic,
            })
        })
        .collect()
}

/// A pair of points joined by no group element or by several.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub from: usize,
    pub to: usize,
    pub connecting: Vec<GroupElement>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsorReport {
    pub d: i64,
    pub level: LevelStructure,
    pub invariant_factors: Vec<i64>,
    pub group_order: u64,
    pub point_count: usize,
    pub free: bool,
    pub transitive: bool,
    /// `table[g][x]` is the index of `g · x`, for groups of order ≤ 64.
    pub table: Option<Vec<Vec<usize>>>,
    pub elements: Option<Vec<GroupElement>>,
    pub counterexample: Option<Counterexample>,
}

impl TorsorReport {
    pub fn passed(&self) -> bool {
        self.free && self.transitive
    }
}

pub const TABLE_LIMIT: u64 = 64;

/// Checks that the reciprocity action on a registered special set is free and
/// transitive.
pub fn torsor_check(registry: &TorsorRegistry, d: i64, level: LevelStructure) -> Result<TorsorReport> {
    let torsor = registry
        .get(d, level)
        .ok_or_else(|| Error::validation(format!("special set for D={d} at {level} has not been computed")))?;
    let elems = torsor.group.elements();
    let points = torsor.points();
    let mut table = Vec::with_capacity(elems.len());
    for g in &elems {
        let row: Result<Vec<usize>> = points
            .iter()
            .map(|x| registry.rec_action(g, x).map(|y| y.index))
            .collect();
        table.push(row?);
    }
    let mut connecting: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (gi, row) in table.iter().enumerate() {
        for (x, &y) in row.iter().enumerate() {
            connecting.entry((x, y)).or_default().push(gi);
        }
    }
    let mut counterexample = None;
    let (mut free, mut transitive) = (true, true);
    'outer: for x in 0..points.len() {
        for y in 0..points.len() {
            let c = connecting.get(&(x, y)).map(Vec::as_slice).unwrap_or(&[]);
            if c.len() != 1 {
                if c.is_empty() {
                    transitive = false;
                } else {
                    free = false;
                }
                counterexample = Some(Counterexample {
                    from: x,
                    to: y,
                    connecting: c.iter().map(|&i| elems[i].coords.clone()).collect(),
                });
                break 'outer;
            }
        }
    }
    let small = torsor.group.order() <= TABLE_LIMIT;
    Ok(TorsorReport {
        d,
        level,
        invariant_factors: torsor.group.group().invariant_factors().to_vec(),
        group_order: torsor.group.order(),
        point_count: points.len(),
        free,
        transitive,
        table: small.then_some(table),
        elements: small.then(|| elems.iter().map(|g| g.coords.clone()).collect()),
        counterexample,
    })
}
