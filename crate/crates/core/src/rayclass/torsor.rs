use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use super::group::{LevelStructure, RayClass, RayClassGroup};
use crate::corearith::group::GroupElement;
use crate::quadforms::Ideal;
use crate::{Error, Result};

/// An opaque point of a torsor registered under `(D, level)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TorsorPoint {
    pub d: i64,
    pub level: LevelStructure,
    pub index: usize,
}

/// Points of the torsor, each labelled by an integral ideal `k·I` prime to
/// `N` whose ray classes exhaust the group exactly once.
#[derive(Clone, Debug)]
pub struct Torsor {
    pub group: RayClassGroup,
    /// `(I, k)` for each point.
    pub labels: Vec<(Ideal, i64)>,
    classes: Vec<GroupElement>,
    by_class: HashMap<GroupElement, usize>,
}

const NORM_SEARCH_LIMIT: i64 = 1 << 22;

impl Torsor {
    pub fn new(group: RayClassGroup) -> Result<Self> {
        let size = group.order() as usize;
        let n = group.level().n;
        let d = crate::quadforms::Discriminant::fundamental(group.discriminant())?;
        let mut labels = Vec::new();
        let mut classes = Vec::new();
        let mut by_class = HashMap::new();
        let mut m = 1i64;
        while by_class.len() < size {
            if m.unsigned_abs().gcd(&n) == 1 {
                let ks = (1..).take_while(|k: &i64| k * k <= m).filter(|k| m % (k * k) == 0);
                for k in ks.collect::<Vec<_>>() {
                    for i in Ideal::all_of_norm(d, m / (k * k)) {
                        let c = group.class_of_scaled(&i, k)?.coords;
                        if !by_class.contains_key(&c) {
                            by_class.insert(c.clone(), labels.len());
                            labels.push((i, k));
                            classes.push(c);
                        }
                    }
                }
            }
            m += 1;
            if m > NORM_SEARCH_LIMIT {
                return Err(Error::ResourceLimit("ray class representatives not found below the norm bound".into()));
            }
        }
        Ok(Torsor {
            group,
            labels,
            classes,
            by_class,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn points(&self) -> Vec<TorsorPoint> {
        (0..self.len()).map(|index| self.point(index)).collect()
    }

    fn point(&self, index: usize) -> TorsorPoint {
        TorsorPoint {
            d: self.group.discriminant(),
            level: self.group.level(),
            index,
        }
    }

    fn check_point(&self, x: &TorsorPoint) -> Result<()> {
        if x.d != self.group.discriminant() || x.level != self.group.level() || x.index >= self.len() {
            return Err(Error::validation("point does not belong to this torsor"));
        }
        Ok(())
    }

    /// The class labelling a point.
    pub fn class_of_point(&self, x: &TorsorPoint) -> Result<RayClass> {
        self.check_point(x)?;
        Ok(self.group.element(self.classes[x.index].clone()))
    }

    /// The point labelled by a given class.
    pub fn point_of_class(&self, g: &RayClass) -> Result<TorsorPoint> {
        self.group.check(g)?;
        Ok(self.point(self.by_class[&g.coords]))
    }

    /// `g · x`: multiply the label ideal of `x` by the label of `g` and
    /// classify the product.
    pub fn act(&self, g: &RayClass, x: &TorsorPoint) -> Result<TorsorPoint> {
        self.group.check(g)?;
        self.check_point(x)?;
        let (ix, kx) = self.labels[x.index];
        let (ig, kg) = self.labels[self.by_class[&g.coords]];
        let (e, j) = ix.mul(&ig);
        let c = self.group.class_of_scaled(&j, e * kx * kg)?;
        self.point_of_class(&c)
    }
}

/// Registered torsors keyed by `(D, level)`; the only mutable state in the
/// arithmetic layer.
#[derive(Debug, Default)]
pub struct TorsorRegistry {
    torsors: HashMap<(i64, LevelStructure), Torsor>,
}

impl TorsorRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds (once) and returns the torsor under `Cl(D, level)`.
    pub fn register(&mut self, d: i64, level: LevelStructure) -> Result<&Torsor> {
        let key = (d, level);
        if !self.torsors.contains_key(&key) {
            let t = Torsor::new(RayClassGroup::new(d, level)?)?;
            self.torsors.insert(key, t);
        }
        Ok(&self.torsors[&key])
    }

    pub fn get(&self, d: i64, level: LevelStructure) -> Option<&Torsor> {
        self.torsors.get(&(d, level))
    }

    /// The reciprocity action of a ray class on a registered point.
    pub fn rec_action(&self, g: &RayClass, x: &TorsorPoint) -> Result<TorsorPoint> {
        let t = self
            .get(x.d, x.level)
            .ok_or_else(|| Error::validation(format!("no torsor registered for D={} at {}", x.d, x.level)))?;
        t.act(g, x)
    }
}
