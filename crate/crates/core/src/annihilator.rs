//! Annihilators as bitsets over element indices.
//!
//! Per-element annihilators are deduplicated into a [`SetIndex`]: rings of a
//! few thousand elements have millions of principal computations but only a
//! handful of distinct sets.

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::par;
use crate::ring::{Elem, Limits, StarRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AnnihilatorKind {
    RightOfSet,
    LeftOfSet,
    RightOfRightIdeal,
    LeftOfLeftIdeal,
    RightOfIdeal,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AnnihilatorSet {
    pub bits: FixedBitSet,
    pub kind: AnnihilatorKind,
}

impl AnnihilatorSet {
    pub fn contains(&self, x: Elem) -> bool {
        self.bits.contains(x)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.bits.ones().collect()
    }
}

/// `r(S) = {a : sa = 0 for all s ∈ S}`, straight from the definition.
pub fn right_annihilator(r: &StarRing, s: &[Elem]) -> AnnihilatorSet {
    let mut bits = FixedBitSet::with_capacity(r.order());
    for a in r.elements() {
        if s.iter().all(|&x| r.mul(x, a) == 0) {
            bits.insert(a);
        }
    }
    AnnihilatorSet {
        bits,
        kind: AnnihilatorKind::RightOfSet,
    }
}

/// `l(S) = {a : as = 0 for all s ∈ S}`.
pub fn left_annihilator(r: &StarRing, s: &[Elem]) -> AnnihilatorSet {
    let mut bits = FixedBitSet::with_capacity(r.order());
    for a in r.elements() {
        if s.iter().all(|&x| r.mul(a, x) == 0) {
            bits.insert(a);
        }
    }
    AnnihilatorSet {
        bits,
        kind: AnnihilatorKind::LeftOfSet,
    }
}

/// One set per element, stored as ids into a list of distinct sets.
/// Ids are assigned in order of the lowest element producing each set.
#[derive(Debug, Clone)]
pub struct SetIndex {
    ids: Vec<u32>,
    sets: Vec<FixedBitSet>,
    first: Vec<Elem>,
}

impl SetIndex {
    fn from_sets(per_element: Vec<FixedBitSet>) -> Self {
        let mut lookup: HashMap<FixedBitSet, u32> = HashMap::new();
        let mut sets = Vec::new();
        let mut first = Vec::new();
        let mut ids = Vec::with_capacity(per_element.len());
        for (x, set) in per_element.into_iter().enumerate() {
            let id = *lookup.entry(set).or_insert_with_key(|set| {
                sets.push(set.clone());
                first.push(x);
                (sets.len() - 1) as u32
            });
            ids.push(id);
        }
        SetIndex { ids, sets, first }
    }

    pub fn id(&self, x: Elem) -> usize {
        self.ids[x] as usize
    }

    pub fn set_of(&self, x: Elem) -> &FixedBitSet {
        &self.sets[self.ids[x] as usize]
    }

    pub fn distinct(&self) -> &[FixedBitSet] {
        &self.sets
    }

    /// Lowest element whose set has id `id`.
    pub fn first_with(&self, id: usize) -> Elem {
        self.first[id]
    }
}

fn intersect_ids<'a>(n: usize, sets: impl Iterator<Item = &'a FixedBitSet>) -> FixedBitSet {
    let mut acc = FixedBitSet::with_capacity(n);
    acc.insert_range(..);
    for s in sets {
        acc.intersect_with(s);
    }
    acc
}

/// Per-element annihilator tables for one ring, filled on first use.
pub struct AnnihilatorTables<'r> {
    ring: &'r StarRing,
    right: OnceLock<SetIndex>,
    left: OnceLock<SetIndex>,
    right_ideal: OnceLock<SetIndex>,
    left_ideal: OnceLock<SetIndex>,
    two_sided: OnceLock<SetIndex>,
}

impl<'r> AnnihilatorTables<'r> {
    pub fn new(ring: &'r StarRing) -> Self {
        AnnihilatorTables {
            ring,
            right: OnceLock::new(),
            left: OnceLock::new(),
            right_ideal: OnceLock::new(),
            left_ideal: OnceLock::new(),
            two_sided: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &'r StarRing {
        self.ring
    }

    /// `r({x})` for every `x`.
    pub fn right(&self) -> &SetIndex {
        self.right.get_or_init(|| {
            let r = self.ring;
            let n = r.order();
            SetIndex::from_sets(par::map(n, |x| {
                let mut b = FixedBitSet::with_capacity(n);
                b.extend((0..n).filter(|&y| r.mul(x, y) == 0));
                b
            }))
        })
    }

    /// `l({x})` for every `x`.
    pub fn left(&self) -> &SetIndex {
        self.left.get_or_init(|| {
            let r = self.ring;
            let n = r.order();
            SetIndex::from_sets(par::map(n, |x| {
                let mut b = FixedBitSet::with_capacity(n);
                b.extend((0..n).filter(|&y| r.mul(y, x) == 0));
                b
            }))
        })
    }

    /// `r(xR) = {y : xry = 0 for all r}` for every `x`.
    pub fn right_of_right_ideal(&self) -> &SetIndex {
        self.right_ideal.get_or_init(|| {
            let r = self.ring;
            let n = r.order();
            let right = self.right();
            let ids = right.distinct().len();
            SetIndex::from_sets(par::map(n, |x| {
                let mut seen = FixedBitSet::with_capacity(ids);
                seen.extend((0..n).map(|s| right.id(r.mul(x, s))));
                intersect_ids(n, seen.ones().map(|id| &right.distinct()[id]))
            }))
        })
    }

    /// `l(Rx) = {y : yrx = 0 for all r}` for every `x`.
    pub fn left_of_left_ideal(&self) -> &SetIndex {
        self.left_ideal.get_or_init(|| {
            let r = self.ring;
            let n = r.order();
            let left = self.left();
            let ids = left.distinct().len();
            SetIndex::from_sets(par::map(n, |x| {
                let mut seen = FixedBitSet::with_capacity(ids);
                seen.extend((0..n).map(|s| left.id(r.mul(s, x))));
                intersect_ids(n, seen.ones().map(|id| &left.distinct()[id]))
            }))
        })
    }

    /// `r((x))` where `(x)` is the two-sided ideal generated by `x`: the
    /// additive closure of `{x} ∪ xR ∪ Rx ∪ RxR ∪ ℤx`. Its annihilator is
    /// `r({x}) ∩ r(xR) ∩ ⋂ₛ (r({sx}) ∩ r(sxR))`.
    pub fn right_of_ideal(&self) -> &SetIndex {
        self.two_sided.get_or_init(|| {
            let r = self.ring;
            let n = r.order();
            let right = self.right();
            let ideal = self.right_of_right_ideal();
            let (pn, qn) = (right.distinct().len(), ideal.distinct().len());
            SetIndex::from_sets(par::map(n, |x| {
                let mut p = FixedBitSet::with_capacity(pn);
                let mut q = FixedBitSet::with_capacity(qn);
                p.insert(right.id(x));
                q.insert(ideal.id(x));
                for s in 0..n {
                    let sx = r.mul(s, x);
                    p.insert(right.id(sx));
                    q.insert(ideal.id(sx));
                }
                intersect_ids(
                    n,
                    p.ones()
                        .map(|id| &right.distinct()[id])
                        .chain(q.ones().map(|id| &ideal.distinct()[id])),
                )
            }))
        })
    }

    /// Intersection closure of the principal annihilators of the given mode.
    pub fn family(&self, mode: FamilyMode, limits: &Limits) -> Result<Vec<FamilyMember>> {
        let (index, kind) = match mode {
            FamilyMode::Subset => (self.right(), AnnihilatorKind::RightOfSet),
            FamilyMode::RightIdeal => (self.right_of_right_ideal(), AnnihilatorKind::RightOfRightIdeal),
            FamilyMode::TwoSidedIdeal => (self.right_of_ideal(), AnnihilatorKind::RightOfIdeal),
        };
        let seeds = index
            .distinct()
            .iter()
            .enumerate()
            .map(|(id, set)| (set.clone(), vec![index.first_with(id)]))
            .collect();
        let closed = intersection_closure(seeds, limits.family_cap)?;
        Ok(closed
            .into_iter()
            .map(|(bits, generators)| FamilyMember {
                set: AnnihilatorSet { bits, kind },
                generators,
            })
            .collect())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyMode {
    /// `r(S)` for nonempty subsets `S`.
    Subset,
    /// `r(aR)` for principal right ideals, closed under intersection.
    RightIdeal,
    /// `r(I)` for two-sided ideals `I`.
    TwoSidedIdeal,
}

/// A member of an annihilator family together with elements whose
/// (principal) annihilators intersect to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub set: AnnihilatorSet,
    pub generators: Vec<Elem>,
}

/// Closes a list of sets under pairwise intersection. Each new set records
/// the union of its parents' generators.
pub fn intersection_closure(
    seeds: Vec<(FixedBitSet, Vec<Elem>)>,
    cap: usize,
) -> Result<Vec<(FixedBitSet, Vec<Elem>)>> {
    let mut family: Vec<(FixedBitSet, Vec<Elem>)> = Vec::new();
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    for (set, gens) in seeds {
        if !seen.contains_key(&set) {
            seen.insert(set.clone(), family.len());
            family.push((set, gens));
        }
    }
    if family.len() > cap {
        return Err(Error::FamilyCapExceeded { cap });
    }
    let mut i = 0;
    while i < family.len() {
        for j in 0..i {
            let mut meet = family[i].0.clone();
            meet.intersect_with(&family[j].0);
            if seen.contains_key(&meet) {
                continue;
            }
            let mut gens = family[i].1.clone();
            gens.extend_from_slice(&family[j].1);
            gens.sort_unstable();
            gens.dedup();
            seen.insert(meet.clone(), family.len());
            family.push((meet, gens));
            if family.len() > cap {
                return Err(Error::FamilyCapExceeded { cap });
            }
        }
        i += 1;
    }
    Ok(family)
}

/// Intersection closure of the principal annihilators of `r` in `mode`.
pub fn annihilator_family(r: &StarRing, mode: FamilyMode, limits: &Limits) -> Result<Vec<FamilyMember>> {
    AnnihilatorTables::new(r).family(mode, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::parse_ring_expr;
    use crate::ring::build_ring;

    fn ring(text: &str) -> StarRing {
        build_ring(&parse_ring_expr(text).unwrap(), &Limits::default()).unwrap()
    }

    fn sorted_family(r: &StarRing, mode: FamilyMode) -> Vec<Vec<Elem>> {
        let mut v: Vec<_> = annihilator_family(r, mode, &Limits::default())
            .unwrap()
            .into_iter()
            .map(|m| m.set.elements())
            .collect();
        v.sort();
        v
    }

    #[test]
    fn z6_right_annihilators() {
        let r = ring("Z(6)");
        assert_eq!(right_annihilator(&r, &[2]).elements(), vec![0, 3]);
        assert_eq!(right_annihilator(&r, &[0]).len(), 6);
        assert_eq!(left_annihilator(&r, &[3]).elements(), vec![0, 2, 4]);
    }

    #[test]
    fn z6_subset_family() {
        // r(1) = {0}, r(2) = {0,3}, r(3) = {0,2,4}, r(0) = R; closure adds nothing new
        let fam = sorted_family(&ring("Z(6)"), FamilyMode::Subset);
        assert_eq!(fam, vec![vec![0], vec![0, 1, 2, 3, 4, 5], vec![0, 2, 4], vec![0, 3]]);
    }

    #[test]
    fn zero_multiplication_family_is_whole_ring() {
        let r = ring("sub(Z(9); 3)");
        assert_eq!(sorted_family(&r, FamilyMode::Subset), vec![vec![0, 1, 2]]);
        assert_eq!(left_annihilator(&r, &[0, 1, 2]).len(), 3);
    }

    #[test]
    fn two_sided_ideal_in_z4() {
        let r = ring("Z(4)");
        let t = AnnihilatorTables::new(&r);
        let ideal = t.right_of_ideal();
        let got: Vec<Elem> = ideal.set_of(2).ones().collect();
        assert_eq!(got, vec![0, 2]);
    }

    #[test]
    fn right_ideal_annihilator_matches_definition() {
        let r = ring("M(2, Z(2))");
        let t = AnnihilatorTables::new(&r);
        for x in r.elements() {
            let xr: Vec<Elem> = r.elements().map(|s| r.mul(x, s)).collect();
            let direct = right_annihilator(&r, &xr);
            assert_eq!(t.right_of_right_ideal().set_of(x), &direct.bits, "x = {x}");
            let rx: Vec<Elem> = r.elements().map(|s| r.mul(s, x)).collect();
            assert_eq!(t.left_of_left_ideal().set_of(x), &left_annihilator(&r, &rx).bits);
        }
    }

    #[test]
    fn closure_respects_cap() {
        let seeds: Vec<(FixedBitSet, Vec<Elem>)> = (0..6)
            .map(|i| {
                let mut b = FixedBitSet::with_capacity(6);
                b.insert_range(..);
                b.set(i, false);
                (b, vec![i])
            })
            .collect();
        // all 64 subsets of a 6-set appear as intersections
        assert_eq!(intersection_closure(seeds.clone(), 100).unwrap().len(), 63);
        assert!(matches!(
            intersection_closure(seeds, 20),
            Err(Error::FamilyCapExceeded { cap: 20 })
        ));
    }
}
