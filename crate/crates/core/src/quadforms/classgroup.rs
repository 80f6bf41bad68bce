use std::collections::{HashMap, HashSet, VecDeque};

use num_integer::Integer;

use super::form::{is_reduced_pair, BinaryQuadraticForm, Discriminant};
use crate::corearith::group::{enumerate_abelian_group, EnumeratedGroup, FiniteAbelianGroup, GroupElement};
use crate::corearith::intmath::{is_prime, kronecker};
use crate::Result;

/// All primitive reduced forms of discriminant `D`, sorted.
pub fn reduced_forms(d: Discriminant) -> Vec<BinaryQuadraticForm> {
    let dv = d.value();
    let s = d.isqrt();
    let mut out = Vec::new();
    let mut b = if d.parity() == 1 { 1 } else { 2 };
    while b <= s {
        let n = (dv - b * b) / 4;
        for a in 1..=n {
            if n % a != 0 || !is_reduced_pair(a, b, dv) {
                continue;
            }
            let c = n / a;
            for (x, z) in [(a, -c), (-a, c)] {
                if x.gcd(&b).gcd(&z) == 1 {
                    out.push(BinaryQuadraticForm::from_parts(x, b, z, d));
                }
            }
        }
        b += 2;
    }
    out.sort();
    out
}

/// The reduced forms of one discriminant split into `ρ`-cycles.
#[derive(Clone, Debug)]
pub struct CyclePartition {
    pub d: Discriminant,
    /// Each cycle starts at its least form; cycles are sorted by that form.
    pub cycles: Vec<Vec<BinaryQuadraticForm>>,
    index: HashMap<BinaryQuadraticForm, usize>,
}

impl CyclePartition {
    pub fn new(d: Discriminant) -> Self {
        let forms = reduced_forms(d);
        let mut index = HashMap::new();
        let mut cycles = Vec::new();
        for f in forms {
            if index.contains_key(&f) {
                continue;
            }
            // `f` is the least unvisited form, hence the least of its cycle.
            let cycle = f.reduction_cycle();
            for g in &cycle {
                index.insert(*g, cycles.len());
            }
            cycles.push(cycle);
        }
        CyclePartition { d, cycles, index }
    }

    pub fn class_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn form_count(&self) -> usize {
        self.index.len()
    }

    /// Index of the cycle containing the reduction of `f`.
    pub fn class_of(&self, f: &BinaryQuadraticForm) -> usize {
        self.index[&f.reduce()]
    }

    pub fn representative(&self, class: usize) -> BinaryQuadraticForm {
        self.cycles[class][0]
    }
}

/// `Cl⁺(D)`: proper equivalence classes of primitive forms under composition.
#[derive(Clone, Debug)]
pub struct NarrowClassGroup {
    pub partition: CyclePartition,
    pub enumeration: EnumeratedGroup<usize>,
}

impl NarrowClassGroup {
    pub fn discriminant(&self) -> Discriminant {
        self.partition.d
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.enumeration.group
    }

    pub fn order(&self) -> usize {
        self.enumeration.order()
    }

    /// One reduced representative per class, indexed by class id.
    pub fn representatives(&self) -> Vec<BinaryQuadraticForm> {
        (0..self.partition.class_count()).map(|i| self.partition.representative(i)).collect()
    }

    pub fn coordinates(&self, f: &BinaryQuadraticForm) -> GroupElement {
        self.enumeration
            .coordinates(&self.partition.class_of(f))
            .expect("every class is enumerated")
    }

    /// Class id with the given invariant coordinates.
    pub fn class_with_coordinates(&self, x: &[i64]) -> usize {
        let x = self.group().normalize(x);
        (0..self.partition.class_count())
            .find(|c| self.enumeration.coordinates(c).as_deref() == Some(&x[..]))
            .expect("coordinates name a class")
    }

    pub fn compose_classes(&self, i: usize, j: usize) -> usize {
        let f = self.partition.representative(i);
        let g = self.partition.representative(j);
        self.partition
            .class_of(&f.compose(&g).expect("same discriminant"))
    }
}

/// Prime forms `(p, b, c)` for primes `p ≤ bound` not inert in the order.
pub fn prime_forms(d: Discriminant, bound: i64) -> Vec<BinaryQuadraticForm> {
    let dv = d.value();
    let mut out = Vec::new();
    for p in 2..=bound {
        if !is_prime(p as u64) || kronecker(dv, p as u64) == -1 {
            continue;
        }
        let b = (0..2 * p).find(|&b| (b - d.parity()) % 2 == 0 && (b * b - dv).rem_euclid(4 * p) == 0);
        if let Some(b) = b {
            let c = (b * b - dv) / (4 * p);
            if p.gcd(&b).gcd(&c) == 1 {
                out.push(BinaryQuadraticForm::from_parts(p, b, c, d));
            }
        }
    }
    out
}

/// Narrow class group of `D` with an invariant-factor presentation.
///
/// Generators are searched among the negative principal form and the prime
/// forms first, so the presentation is labelled by small primes.
pub fn narrow_class_group(d: i64) -> Result<NarrowClassGroup> {
    let d = Discriminant::new(d)?;
    let partition = CyclePartition::new(d);
    let mut candidates = vec![partition.class_of(&d.negative_principal_form())];
    candidates.extend(prime_forms(d, d.isqrt()).iter().map(|f| partition.class_of(f)));
    candidates.extend(0..partition.class_count());
    let identity = partition.class_of(&d.principal_form());
    let enumeration = {
        let p = &partition;
        enumerate_abelian_group(
            candidates,
            identity,
            |&i, &j| {
                p.class_of(
                    &p.representative(i)
                        .compose(&p.representative(j))
                        .expect("same discriminant"),
                )
            },
            |&i| p.representative(i).to_string(),
        )
    };
    Ok(NarrowClassGroup {
        partition,
        enumeration,
    })
}

/// Order of the subgroup of `Cl⁺(D)` generated by the negative principal
/// form and the prime forms of norm at most `√D`, found by breadth-first
/// composition with classes compared by their cycle keys.
///
/// This never consults the enumeration of reduced forms.
pub fn composition_closure_order(d: i64) -> Result<usize> {
    let d = Discriminant::new(d)?;
    let mut gens = vec![d.negative_principal_form()];
    gens.extend(prime_forms(d, d.isqrt()));
    let start = d.principal_form().cycle_key();
    let mut seen: HashSet<BinaryQuadraticForm> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for g in &gens {
            let h = f.compose(g)?.cycle_key();
            if seen.insert(h) {
                queue.push_back(h);
            }
        }
    }
    Ok(seen.len())
}

/// Wide class number: orbits of narrow classes under `f ↦ (−a, b, −c)`,
/// i.e. equivalence under `f ↦ det(g)·(f ∘ g)` for `g ∈ GL₂(ℤ)`.
pub fn wide_class_number(d: i64) -> Result<usize> {
    let d = Discriminant::new(d)?;
    let partition = CyclePartition::new(d);
    let mut seen = vec![false; partition.class_count()];
    let mut orbits = 0;
    for i in 0..partition.class_count() {
        if seen[i] {
            continue;
        }
        orbits += 1;
        seen[i] = true;
        let j = partition.class_of(&partition.representative(i).negated());
        seen[j] = true;
    }
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h_plus(d: i64) -> usize {
        narrow_class_group(d).unwrap().order()
    }

    #[test]
    fn small_narrow_class_numbers() {
        assert_eq!(h_plus(8), 1);
        assert_eq!(h_plus(12), 2);
        assert_eq!(h_plus(5), 1);
        assert_eq!(h_plus(40), 2);
        assert!(narrow_class_group(8).unwrap().group().is_trivial());
        assert_eq!(narrow_class_group(12).unwrap().group().invariant_factors(), &[2]);
    }

    #[test]
    fn enumeration_oracle_d8_d12_d40() {
        // D = 8: b = 2 forces ac = −1, so only (±1, 2, ∓1).
        let f8 = reduced_forms(Discriminant::new(8).unwrap());
        assert_eq!(f8.len(), 2);
        let p12 = CyclePartition::new(Discriminant::new(12).unwrap());
        assert_eq!(p12.class_count(), 2);
        assert_eq!(p12.form_count(), 4);
        let p40 = CyclePartition::new(Discriminant::new(40).unwrap());
        assert_eq!(p40.class_count(), 2);
    }

    #[test]
    fn known_class_numbers() {
        // Q(√79): h = 3, ε norm +1, so h⁺ = 6; Q(√82): h = 4, norm −1.
        assert_eq!(h_plus(316), 6);
        assert_eq!(wide_class_number(316).unwrap(), 3);
        assert_eq!(narrow_class_group(316).unwrap().group().invariant_factors(), &[6]);
        assert_eq!(h_plus(328), 4);
        assert_eq!(wide_class_number(328).unwrap(), 4);
        // Q(√(3·5·7)) has 2-rank 2 in the narrow group.
        assert_eq!(narrow_class_group(105).unwrap().group().invariant_factors(), &[2, 2]);
    }

    #[test]
    fn closure_matches_cycles() {
        for d in [5, 8, 12, 40, 60, 105, 316, 328, 1596] {
            let g = narrow_class_group(d).unwrap();
            assert_eq!(composition_closure_order(d).unwrap(), g.partition.class_count());
        }
    }

    #[test]
    fn cycles_have_even_length() {
        for d in [5, 8, 12, 13, 21, 28, 40, 60, 61, 97, 229] {
            let p = CyclePartition::new(Discriminant::new(d).unwrap());
            assert!(p.cycles.iter().all(|c| c.len() % 2 == 0));
            assert_eq!(p.cycles.iter().map(Vec::len).sum::<usize>(), p.form_count());
        }
    }
}
