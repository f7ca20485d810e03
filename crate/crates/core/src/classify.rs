//! Membership tests for the Rickart / Baer / p.q.-Baer family of *-rings.
//!
//! Every false verdict carries the lowest-index counterexample. Set
//! equalities of the form `S = eR` compare `S` with `{er : r ∈ R}`; since
//! `e = e·e`, such an `e` always lies in `S`, which is the membership the
//! non-unital definitions ask for.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::annihilator::FamilyMode;
use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::par;
use crate::projection::{render_error, Analysis};
use crate::report::{Outcome, PropertyReport};
use crate::ring::{build_ring, validate_star_ring, Elem, Limits, StarRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Property {
    StarRing,
    Proper,
    SemiProper,
    Reduced,
    Abelian,
    Unity,
    RickartStar,
    WeaklyRickartStar,
    BaerStar,
    QuasiBaerStar,
    PqBaerStar,
    WeaklyPqBaerStar,
    RpNotCover,
}

impl Property {
    pub const ALL: [Property; 13] = [
        Property::StarRing,
        Property::Proper,
        Property::SemiProper,
        Property::Reduced,
        Property::Abelian,
        Property::Unity,
        Property::RickartStar,
        Property::WeaklyRickartStar,
        Property::BaerStar,
        Property::QuasiBaerStar,
        Property::PqBaerStar,
        Property::WeaklyPqBaerStar,
        Property::RpNotCover,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::StarRing => "star-ring",
            Property::Proper => "proper",
            Property::SemiProper => "semi-proper",
            Property::Reduced => "reduced",
            Property::Abelian => "abelian",
            Property::Unity => "unity",
            Property::RickartStar => "rickart-star",
            Property::WeaklyRickartStar => "weakly-rickart-star",
            Property::BaerStar => "baer-star",
            Property::QuasiBaerStar => "quasi-baer-star",
            Property::PqBaerStar => "pq-baer-star",
            Property::WeaklyPqBaerStar => "weakly-pq-baer-star",
            Property::RpNotCover => "rp-not-cover",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidDescriptor(format!("unknown property {s:?}")))
    }
}

/// Runs classifiers against one ring, sharing cached scans between them.
pub struct Classifier<'r> {
    an: Analysis<'r>,
    limits: Limits,
    // eR -> e and Rf -> f for every projection
    right_principal: OnceLock<HashMap<FixedBitSet, Elem>>,
    left_principal: OnceLock<HashMap<FixedBitSet, Elem>>,
}

impl<'r> Classifier<'r> {
    pub fn new(ring: &'r StarRing, limits: Limits) -> Self {
        Classifier {
            an: Analysis::new(ring),
            limits,
            right_principal: OnceLock::new(),
            left_principal: OnceLock::new(),
        }
    }

    pub fn analysis(&self) -> &Analysis<'r> {
        &self.an
    }

    pub fn ring(&self) -> &'r StarRing {
        self.an.ring()
    }

    pub fn report(&self, property: Property) -> Result<PropertyReport> {
        let start = std::time::Instant::now();
        let outcome = self.outcome(property)?;
        let micros = start.elapsed().as_micros() as u64;
        Ok(PropertyReport::from_outcome(self.ring(), property.name(), outcome, micros))
    }

    pub fn outcome(&self, property: Property) -> Result<Outcome> {
        let r = self.ring();
        Ok(match property {
            Property::StarRing => {
                let rep = validate_star_ring(r);
                Outcome {
                    verdict: rep.verdict,
                    witness: rep.elements,
                    detail: rep.detail,
                }
            }
            Property::Proper => self.proper(),
            Property::SemiProper => self.semi_proper(),
            Property::Reduced => self.reduced(),
            Property::Abelian => self.abelian(),
            Property::Unity => self.unity(),
            Property::RickartStar => self.rickart(),
            Property::WeaklyRickartStar => self.weakly_rickart(),
            Property::BaerStar => self.family_generated(FamilyMode::Subset)?,
            Property::QuasiBaerStar => self.family_generated(FamilyMode::TwoSidedIdeal)?,
            Property::PqBaerStar => self.pq_baer(),
            Property::WeaklyPqBaerStar => self.weakly_pq_baer()?,
            Property::RpNotCover => match self.rp_not_cover()? {
                Some(x) => Outcome::certified(vec![x]),
                None => Outcome::fail(Vec::new()).with_detail("every right projection is a central cover"),
            },
        })
    }

    pub fn holds(&self, property: Property) -> Result<bool> {
        Ok(self.outcome(property)?.verdict)
    }

    fn right_principal(&self) -> &HashMap<FixedBitSet, Elem> {
        self.right_principal.get_or_init(|| {
            let r = self.ring();
            let n = r.order();
            let sets = par::map_slice(self.an.poset().elems(), |&e| {
                let mut b = FixedBitSet::with_capacity(n);
                b.extend(r.elements().map(|s| r.mul(e, s)));
                (b, e)
            });
            sets.into_iter().collect()
        })
    }

    fn left_principal(&self) -> &HashMap<FixedBitSet, Elem> {
        self.left_principal.get_or_init(|| {
            let r = self.ring();
            let n = r.order();
            let sets = par::map_slice(self.an.poset().elems(), |&f| {
                let mut b = FixedBitSet::with_capacity(n);
                b.extend(r.elements().map(|s| r.mul(s, f)));
                (b, f)
            });
            sets.into_iter().collect()
        })
    }

    /// The projection `e` with `set = eR`, if any.
    pub fn generator_of(&self, set: &FixedBitSet) -> Option<Elem> {
        self.right_principal().get(set).copied()
    }

    fn proper(&self) -> Outcome {
        let r = self.ring();
        match par::find_first(r.order(), |x| x != 0 && r.mul(r.star(x), x) == 0) {
            Some(x) => Outcome::fail(vec![x]),
            None => Outcome::pass(),
        }
    }

    fn semi_proper(&self) -> Outcome {
        let r = self.ring();
        self.limits.warn_superquadratic(r, "semi-proper scan");
        let found = par::find_first(r.order(), |a| {
            let a_star = r.star(a);
            a != 0 && r.elements().all(|s| r.mul(r.mul(a, s), a_star) == 0)
        });
        match found {
            Some(a) => Outcome::fail(vec![a]),
            None => Outcome::pass(),
        }
    }

    fn reduced(&self) -> Outcome {
        let r = self.ring();
        let nilpotent = |x: Elem| {
            let mut p = x;
            for _ in 0..r.order() {
                if p == 0 {
                    return true;
                }
                p = r.mul(p, x);
            }
            p == 0
        };
        match par::find_first(r.order(), |x| x != 0 && nilpotent(x)) {
            Some(x) => Outcome::fail(vec![x]),
            None => Outcome::pass(),
        }
    }

    fn abelian(&self) -> Outcome {
        let r = self.ring();
        match par::find_first(r.order(), |e| r.mul(e, e) == e && !r.is_central(e)) {
            Some(e) => Outcome::fail(vec![e]),
            None => Outcome::pass(),
        }
    }

    fn unity(&self) -> Outcome {
        let r = self.ring();
        match r.unity().or_else(|| r.find_unity()) {
            Some(u) => Outcome::certified(vec![u]),
            None => {
                // witness[e] is an element that e fails to fix on one side
                let refutations = par::map(r.order(), |e| {
                    r.elements()
                        .find(|&y| r.mul(e, y) != y || r.mul(y, e) != y)
                        .expect("no unity")
                });
                Outcome::fail(refutations).with_detail("witness entry i is not fixed by element i")
            }
        }
    }

    fn rickart(&self) -> Outcome {
        let right = self.an.tables().right();
        let principal = self.right_principal();
        let failing = right
            .distinct()
            .iter()
            .enumerate()
            .filter(|(_, set)| !principal.contains_key(*set))
            .map(|(id, _)| right.first_with(id))
            .min();
        match failing {
            Some(x) => Outcome::fail(vec![x]),
            None => Outcome::pass(),
        }
    }

    fn weakly_rickart(&self) -> Outcome {
        match self.an.first_without_rp() {
            Some(x) => {
                let err = self.an.rp(x).expect_err("rp fails");
                Outcome::fail(vec![x]).with_detail(render_error(self.ring(), &err))
            }
            None => Outcome::pass(),
        }
    }

    fn family_generated(&self, mode: FamilyMode) -> Result<Outcome> {
        let r = self.ring();
        self.limits.warn_superquadratic(r, "annihilator family");
        let family = self.an.tables().family(mode, &self.limits)?;
        let principal = self.right_principal();
        Ok(match family.iter().find(|m| !principal.contains_key(&m.set.bits)) {
            Some(m) => Outcome::fail(m.generators.clone()).with_detail(format!(
                "annihilator of order {} is not generated by a projection",
                m.set.len()
            )),
            None => Outcome::pass(),
        })
    }

    fn pq_baer(&self) -> Outcome {
        let tables = self.an.tables();
        let (right, left) = (tables.right_of_right_ideal(), tables.left_of_left_ideal());
        let (rp, lp) = (self.right_principal(), self.left_principal());
        let right_bad = |a: Elem| !rp.contains_key(right.set_of(a));
        let left_bad = |a: Elem| !lp.contains_key(left.set_of(a));
        match par::find_first(self.ring().order(), |a| right_bad(a) || left_bad(a)) {
            Some(a) => {
                let clause = match (right_bad(a), left_bad(a)) {
                    (true, true) => "r(aR) and l(Ra) are not generated by projections",
                    (true, false) => "r(aR) is not generated by a projection",
                    _ => "l(Ra) is not generated by a projection",
                };
                Outcome::fail(vec![a]).with_detail(clause)
            }
            None => Outcome::pass(),
        }
    }

    fn weakly_pq_baer(&self) -> Result<Outcome> {
        let r = self.ring();
        let n = r.order();
        self.limits.warn_superquadratic(r, "weakly p.q.-Baer scan");
        let tables = self.an.tables();
        let (ideal, right) = (tables.right_of_right_ideal(), tables.right());
        let bad = par::find_map_first(n, |x| match self.an.central_cover(x) {
            Err(e) => Some((x, None, render_error(r, &e))),
            Ok(c) => {
                let (lhs, rhs) = (ideal.set_of(x), right.set_of(c.elem));
                (lhs != rhs).then(|| {
                    let y = lhs.symmetric_difference(rhs).next().expect("sets differ");
                    (x, Some(y), "xRy = 0 and C(x)y = 0 disagree".to_string())
                })
            }
        });
        if let Some((x, y, detail)) = bad {
            let mut witness = vec![x];
            witness.extend(y);
            return Ok(Outcome::fail(witness).with_detail(detail));
        }
        // In a weakly p.q.-Baer ring xRy = 0 exactly when yRx = 0.
        if let Some((x, y)) = par::find_first_pair(n, |x, y| ideal.set_of(x).contains(y) != ideal.set_of(y).contains(x)) {
            return Err(Error::VerificationFailed {
                claim: "xRy = 0 if and only if yRx = 0".into(),
                witness: format!("({}, {})", r.render(x), r.render(y)),
            });
        }
        Ok(Outcome::pass())
    }

    /// An element whose right projection is not the central cover of any
    /// element. Requires every element to have both.
    pub fn rp_not_cover(&self) -> Result<Option<Elem>> {
        let r = self.ring();
        if let Some(x) = self.an.first_without_rp() {
            return Err(Error::HypothesisNotMet(format!("{} has no right projection", r.render(x))));
        }
        let mut covers = FixedBitSet::with_capacity(r.order());
        for x in r.elements() {
            let c = self
                .an
                .central_cover(x)
                .map_err(|e| Error::HypothesisNotMet(render_error(r, &e)))?;
            covers.insert(c.elem);
        }
        Ok(par::find_first(r.order(), |x| {
            !covers.contains(self.an.rp(x).expect("checked above").elem)
        }))
    }

    pub fn verdicts(&self) -> Result<Verdicts> {
        Ok(Verdicts {
            proper: self.holds(Property::Proper)?,
            semi_proper: self.holds(Property::SemiProper)?,
            reduced: self.holds(Property::Reduced)?,
            abelian: self.holds(Property::Abelian)?,
            unity: self.holds(Property::Unity)?,
            rickart: self.holds(Property::RickartStar)?,
            weakly_rickart: self.holds(Property::WeaklyRickartStar)?,
            baer: self.holds(Property::BaerStar)?,
            quasi_baer: self.holds(Property::QuasiBaerStar)?,
            pq_baer: self.holds(Property::PqBaerStar)?,
            weakly_pq_baer: self.holds(Property::WeaklyPqBaerStar)?,
        })
    }
}

/// Verdicts of every class test on one ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    pub proper: bool,
    pub semi_proper: bool,
    pub reduced: bool,
    pub abelian: bool,
    pub unity: bool,
    pub rickart: bool,
    pub weakly_rickart: bool,
    pub baer: bool,
    pub quasi_baer: bool,
    pub pq_baer: bool,
    pub weakly_pq_baer: bool,
}

impl Verdicts {
    /// Implications between the classes, labelled; each entry is
    /// `(label, holds)`.
    pub fn implications(&self) -> [(&'static str, bool); 7] {
        let v = self;
        [
            ("(a) rickart* iff weakly rickart* with unity", v.rickart == (v.weakly_rickart && v.unity)),
            ("(b) p.q.-baer* iff weakly p.q.-baer* with unity", v.pq_baer == (v.weakly_pq_baer && v.unity)),
            ("(c) rickart* implies unity and proper", !v.rickart || (v.unity && v.proper)),
            ("(d) p.q.-baer* implies unity and semi-proper", !v.pq_baer || (v.unity && v.semi_proper)),
            ("(e) abelian rickart* implies p.q.-baer*", !(v.abelian && v.rickart) || v.pq_baer),
            ("(f) reduced p.q.-baer* implies rickart*", !(v.reduced && v.pq_baer) || v.rickart),
            ("(g) rickart* iff baer* for finite rings", v.rickart == v.baer),
        ]
    }
}

fn classifier_report(r: &StarRing, property: Property) -> Result<PropertyReport> {
    Classifier::new(r, Limits::default()).report(property)
}

pub fn is_proper_involution(r: &StarRing) -> PropertyReport {
    classifier_report(r, Property::Proper).expect("scan cannot fail")
}

pub fn is_semi_proper(r: &StarRing) -> PropertyReport {
    classifier_report(r, Property::SemiProper).expect("scan cannot fail")
}

pub fn is_reduced(r: &StarRing) -> PropertyReport {
    classifier_report(r, Property::Reduced).expect("scan cannot fail")
}

pub fn is_abelian(r: &StarRing) -> PropertyReport {
    classifier_report(r, Property::Abelian).expect("scan cannot fail")
}

pub fn has_unity(r: &StarRing) -> PropertyReport {
    classifier_report(r, Property::Unity).expect("scan cannot fail")
}

pub fn is_rickart_star(r: &StarRing) -> PropertyReport {
    classifier_report(r, Property::RickartStar).expect("scan cannot fail")
}

pub fn is_weakly_rickart_star(r: &StarRing) -> PropertyReport {
    classifier_report(r, Property::WeaklyRickartStar).expect("scan cannot fail")
}

pub fn is_baer_star(r: &StarRing) -> Result<PropertyReport> {
    classifier_report(r, Property::BaerStar)
}

pub fn is_quasi_baer_star(r: &StarRing) -> Result<PropertyReport> {
    classifier_report(r, Property::QuasiBaerStar)
}

pub fn is_pq_baer_star(r: &StarRing) -> PropertyReport {
    classifier_report(r, Property::PqBaerStar).expect("scan cannot fail")
}

pub fn is_weakly_pq_baer_star(r: &StarRing) -> Result<PropertyReport> {
    classifier_report(r, Property::WeaklyPqBaerStar)
}

pub fn find_rp_not_central_cover(r: &StarRing) -> Result<Option<Elem>> {
    Classifier::new(r, Limits::default()).rp_not_cover()
}

fn prime_factors(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut k = 0;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            out.push((p, k));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Arithmetic Baer* criterion for `M_n(ℤ_m)` with the transpose involution.
pub fn classify_matrix_ring(n: usize, m: u64) -> bool {
    let factors = prime_factors(m);
    let square_free = factors.iter().all(|&(_, k)| k == 1);
    match n {
        1 => square_free,
        2 => square_free && factors.iter().all(|&(p, _)| p % 4 == 3),
        _ => false,
    }
}

/// Checks the class implications on every ring. One report per ring;
/// `detail` names any violated implication.
pub fn implication_suite(corpus: &[RingDescriptor], limits: &Limits) -> Result<Vec<PropertyReport>> {
    corpus
        .iter()
        .map(|d| {
            let r = build_ring(d, limits)?;
            let start = std::time::Instant::now();
            let verdicts = Classifier::new(&r, *limits).verdicts()?;
            let violated: Vec<&str> = verdicts
                .implications()
                .into_iter()
                .filter_map(|(label, ok)| (!ok).then_some(label))
                .collect();
            let outcome = if violated.is_empty() {
                Outcome::pass()
            } else {
                Outcome::fail(Vec::new()).with_detail(violated.join("; "))
            };
            let micros = start.elapsed().as_micros() as u64;
            Ok(PropertyReport::from_outcome(&r, "implications", outcome, micros))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_literal, parse_ring_expr};

    fn ring(text: &str) -> StarRing {
        build_ring(&parse_ring_expr(text).unwrap(), &Limits::default()).unwrap()
    }

    fn el(r: &StarRing, text: &str) -> Elem {
        r.element(&parse_literal(text).unwrap()).unwrap()
    }

    fn holds(r: &StarRing, p: Property) -> bool {
        Classifier::new(r, Limits::default()).holds(p).unwrap()
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("baer".parse::<Property>().is_err());
    }

    #[test]
    fn m2z3_examples() {
        let m = ring("M(2, Z(3))");
        assert!(is_proper_involution(&m).verdict);
        assert!(is_semi_proper(&m).verdict);
        let red = is_reduced(&m);
        assert_eq!(red.elements, vec![el(&m, "[[0,1],[0,0]]")]);
        let ab = is_abelian(&m);
        assert_eq!(ab.elements, vec![el(&m, "[[1,0],[0,0]]")]);
        assert!(has_unity(&m).verdict);
        for p in [
            Property::RickartStar,
            Property::WeaklyRickartStar,
            Property::BaerStar,
            Property::QuasiBaerStar,
            Property::PqBaerStar,
            Property::WeaklyPqBaerStar,
        ] {
            assert!(holds(&m, p), "{p}");
        }
        assert_eq!(find_rp_not_central_cover(&m).unwrap(), Some(el(&m, "[[1,0],[0,0]]")));
    }

    #[test]
    fn zero_multiplication_examples() {
        let z = ring("sub(Z(9); 3)");
        assert_eq!(is_proper_involution(&z).witness, Some(vec!["3".to_string()]));
        assert_eq!(is_semi_proper(&z).witness, Some(vec!["3".to_string()]));
        assert!(!is_reduced(&z).verdict);
        assert!(is_abelian(&z).verdict);
        assert!(!has_unity(&z).verdict);
        assert_eq!(is_weakly_rickart_star(&z).witness, Some(vec!["3".to_string()]));
        for p in [
            Property::RickartStar,
            Property::QuasiBaerStar,
            Property::PqBaerStar,
            Property::WeaklyPqBaerStar,
            Property::BaerStar,
        ] {
            assert!(!holds(&z, p), "{p}");
        }
        assert!(find_rp_not_central_cover(&z).is_err());
    }

    #[test]
    fn cyclic_examples() {
        let z6 = ring("Z(6)");
        for p in [
            Property::Reduced,
            Property::Abelian,
            Property::Unity,
            Property::SemiProper,
            Property::WeaklyRickartStar,
            Property::BaerStar,
            Property::PqBaerStar,
            Property::WeaklyPqBaerStar,
        ] {
            assert!(holds(&z6, p), "{p}");
        }
        assert_eq!(find_rp_not_central_cover(&z6).unwrap(), None);
        assert_eq!(find_rp_not_central_cover(&ring("Z(2)")).unwrap(), None);
        assert!(is_proper_involution(&ring("Z(2)")).verdict);
        let z4 = ring("Z(4)");
        assert!(!is_rickart_star(&z4).verdict);
        assert!(!holds(&z4, Property::QuasiBaerStar));
        assert!(!is_baer_star(&z4).unwrap().verdict);
    }

    #[test]
    fn matrix_baer_examples() {
        assert!(!is_baer_star(&ring("M(2, Z(2))")).unwrap().verdict);
        assert!(!is_weakly_rickart_star(&ring("M(2, Z(5))")).verdict);
    }

    #[test]
    fn product_matches_cyclic() {
        let (p, z) = (ring("prod(Z(2), Z(3))"), ring("Z(6)"));
        let cp = Classifier::new(&p, Limits::default());
        let cz = Classifier::new(&z, Limits::default());
        assert_eq!(cp.verdicts().unwrap(), cz.verdicts().unwrap());
    }

    #[test]
    fn arithmetic_criterion() {
        assert!(classify_matrix_ring(2, 3));
        assert!(!classify_matrix_ring(2, 5));
        assert!(!classify_matrix_ring(1, 12));
        assert!(classify_matrix_ring(2, 21));
        assert!(!classify_matrix_ring(3, 3));
        let n1: Vec<u64> = (2..=12).filter(|&m| classify_matrix_ring(1, m)).collect();
        assert_eq!(n1, vec![2, 3, 5, 6, 7, 10, 11]);
    }

    #[test]
    fn implications_hold_on_small_rings() {
        let corpus: Vec<RingDescriptor> = ["Z(4)", "Z(6)", "Z(8)", "M(2, Z(2))", "sub(Z(9); 3)", "prod(Z(2), Z(4))"]
            .iter()
            .map(|t| parse_ring_expr(t).unwrap())
            .collect();
        for rep in implication_suite(&corpus, &Limits::default()).unwrap() {
            assert!(rep.verdict, "{rep}");
        }
    }

    #[test]
    fn pq_baer_reports_clause() {
        let z4 = ring("Z(4)");
        let rep = Classifier::new(&z4, Limits::default()).report(Property::PqBaerStar).unwrap();
        assert!(!rep.verdict);
        assert_eq!(rep.elements, vec![2]);
        assert!(rep.detail.unwrap().contains("r(aR) and l(Ra)"));
    }
}
