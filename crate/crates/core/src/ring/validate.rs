use super::{Elem, StarRing};
use crate::par;
use crate::report::{Outcome, PropertyReport};

/// Ring and involution axioms, in the order they are audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    AdditiveIdentity,
    AdditiveInverse,
    AdditiveCommutativity,
    AdditiveAssociativity,
    Associativity,
    LeftDistributivity,
    RightDistributivity,
    StarAdditive,
    StarAntiMultiplicative,
    StarInvolutive,
    Unity,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::AdditiveIdentity => "additive identity",
            Axiom::AdditiveInverse => "additive inverse",
            Axiom::AdditiveCommutativity => "additive commutativity",
            Axiom::AdditiveAssociativity => "additive associativity",
            Axiom::Associativity => "associativity",
            Axiom::LeftDistributivity => "left distributivity",
            Axiom::RightDistributivity => "right distributivity",
            Axiom::StarAdditive => "star additive",
            Axiom::StarAntiMultiplicative => "star anti-multiplicative",
            Axiom::StarInvolutive => "star involutive",
            Axiom::Unity => "unity",
        }
    }
}

fn first_violation(r: &StarRing) -> Option<(Axiom, Vec<Elem>)> {
    let n = r.order();
    let single = |axiom, pred: &(dyn Fn(Elem) -> bool + Sync)| {
        par::find_first(n, pred).map(|x| (axiom, vec![x]))
    };
    let pair = |axiom, pred: &(dyn Fn(Elem, Elem) -> bool + Sync)| {
        par::find_first_pair(n, pred).map(|(x, y)| (axiom, vec![x, y]))
    };
    let triple = |axiom, pred: &(dyn Fn(Elem, Elem, Elem) -> bool + Sync)| {
        par::find_first_triple(n, pred).map(|(x, y, z)| (axiom, vec![x, y, z]))
    };
    single(Axiom::AdditiveIdentity, &|x| r.add(0, x) != x || r.add(x, 0) != x)
        .or_else(|| single(Axiom::AdditiveInverse, &|x| r.add(x, r.neg(x)) != 0))
        .or_else(|| pair(Axiom::AdditiveCommutativity, &|x, y| r.add(x, y) != r.add(y, x)))
        .or_else(|| {
            triple(Axiom::AdditiveAssociativity, &|x, y, z| {
                r.add(r.add(x, y), z) != r.add(x, r.add(y, z))
            })
        })
        .or_else(|| {
            triple(Axiom::Associativity, &|x, y, z| r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z)))
        })
        .or_else(|| {
            triple(Axiom::LeftDistributivity, &|x, y, z| {
                r.mul(x, r.add(y, z)) != r.add(r.mul(x, y), r.mul(x, z))
            })
        })
        .or_else(|| {
            triple(Axiom::RightDistributivity, &|x, y, z| {
                r.mul(r.add(x, y), z) != r.add(r.mul(x, z), r.mul(y, z))
            })
        })
        .or_else(|| pair(Axiom::StarAdditive, &|x, y| r.star(r.add(x, y)) != r.add(r.star(x), r.star(y))))
        .or_else(|| {
            pair(Axiom::StarAntiMultiplicative, &|x, y| {
                r.star(r.mul(x, y)) != r.mul(r.star(y), r.star(x))
            })
        })
        .or_else(|| single(Axiom::StarInvolutive, &|x| r.star(r.star(x)) != x))
        .or_else(|| {
            let u = r.unity()?;
            single(Axiom::Unity, &|x| r.mul(u, x) != x || r.mul(x, u) != x).map(|(a, w)| (a, vec![u, w[0]]))
        })
}

/// Exhaustive audit of the group, ring and involution axioms. Cubic in the
/// order; a failure names the axiom and carries the witness tuple.
pub fn validate_star_ring(r: &StarRing) -> PropertyReport {
    crate::ring::Limits::default().warn_superquadratic(r, "axiom audit");
    PropertyReport::timed(r, "star-ring", || match first_violation(r) {
        None => Outcome::pass(),
        Some((axiom, witness)) => Outcome::fail(witness).with_detail(axiom.name()),
    })
}

/// Least `k ≥ 1` with `k·x = 0` for every `x`. Always divides the order.
pub fn characteristic(r: &StarRing) -> u64 {
    let n = r.order() as u64;
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| par::all(r.order(), |x| r.times(d, x) == 0))
        .unwrap_or(n)
}
