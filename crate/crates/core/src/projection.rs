//! Projections, their order, right/left projections and central covers.
//!
//! [`Analysis`] caches everything computed about one ring (annihilator
//! tables, the projection poset, per-element RP/LP/cover) so that
//! classifiers and verifiers can share it. Each cache fills once; reads after
//! that are lock-free.

use std::sync::OnceLock;

use crate::algebra::ScalarAlgebra;
use crate::annihilator::AnnihilatorTables;
use crate::error::{Error, Result};
use crate::par;
use crate::ring::{Elem, StarRing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Projection {
    pub elem: Elem,
    pub central: bool,
}

/// All projections of a ring, ascending by index, with `e ≤ f ⟺ ef = e`.
#[derive(Debug, Clone)]
pub struct ProjectionPoset {
    elems: Vec<Elem>,
    central: Vec<bool>,
    // le[i * k + j]: elems[i] ≤ elems[j]
    le: Vec<bool>,
}

impl ProjectionPoset {
    pub fn compute(r: &StarRing) -> Self {
        let elems: Vec<Elem> = r.elements().filter(|&x| r.is_projection(x)).collect();
        let central = par::map_slice(&elems, |&e| r.is_central(e));
        let k = elems.len();
        let le = (0..k * k).map(|i| r.mul(elems[i / k], elems[i % k]) == elems[i / k]).collect();
        ProjectionPoset { elems, central, le }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn projections(&self) -> Vec<Projection> {
        self.elems
            .iter()
            .zip(&self.central)
            .map(|(&elem, &central)| Projection { elem, central })
            .collect()
    }

    pub fn central_elems(&self) -> Vec<Elem> {
        self.elems
            .iter()
            .zip(&self.central)
            .filter_map(|(&e, &c)| c.then_some(e))
            .collect()
    }

    pub fn position(&self, e: Elem) -> Option<usize> {
        self.elems.binary_search(&e).ok()
    }

    pub fn is_central(&self, e: Elem) -> bool {
        self.position(e).is_some_and(|i| self.central[i])
    }

    /// `e ≤ f` for two projections of the ring.
    pub fn le(&self, e: Elem, f: Elem) -> bool {
        let (i, j) = (self.position(e).expect("projection"), self.position(f).expect("projection"));
        self.le[i * self.elems.len() + j]
    }

    pub fn projection(&self, e: Elem) -> Projection {
        Projection {
            elem: e,
            central: self.is_central(e),
        }
    }

    /// The member lying below every other member, if any.
    pub fn least(&self, candidates: &[Elem]) -> Option<Elem> {
        candidates.iter().copied().find(|&l| candidates.iter().all(|&c| self.le(l, c)))
    }

    /// The member lying above every other member, if any.
    pub fn greatest(&self, candidates: &[Elem]) -> Option<Elem> {
        candidates.iter().copied().find(|&g| candidates.iter().all(|&c| self.le(c, g)))
    }
}

/// Cached per-ring analysis.
pub struct Analysis<'r> {
    ring: &'r StarRing,
    tables: AnnihilatorTables<'r>,
    poset: OnceLock<ProjectionPoset>,
    rp: OnceLock<Vec<Result<Elem>>>,
    lp: OnceLock<Vec<Result<Elem>>>,
    cover: OnceLock<Vec<Result<Elem>>>,
}

impl<'r> Analysis<'r> {
    pub fn new(ring: &'r StarRing) -> Self {
        Analysis {
            ring,
            tables: AnnihilatorTables::new(ring),
            poset: OnceLock::new(),
            rp: OnceLock::new(),
            lp: OnceLock::new(),
            cover: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &'r StarRing {
        self.ring
    }

    pub fn tables(&self) -> &AnnihilatorTables<'r> {
        &self.tables
    }

    pub fn poset(&self) -> &ProjectionPoset {
        self.poset.get_or_init(|| ProjectionPoset::compute(self.ring))
    }

    fn rp_uncached(&self, x: Elem) -> Result<Elem> {
        let r = self.ring;
        let right = self.tables.right();
        let ann = right.set_of(x);
        let candidates: Vec<Elem> = self
            .poset()
            .elems()
            .iter()
            .copied()
            .filter(|&e| r.mul(x, e) == x && ann.is_subset(right.set_of(e)))
            .collect();
        match candidates.as_slice() {
            [] => Err(Error::NoRightProjection(x)),
            [e] => Ok(*e),
            _ => Err(Error::AmbiguousRightProjection { x, candidates }),
        }
    }

    fn lp_uncached(&self, x: Elem) -> Result<Elem> {
        let r = self.ring;
        let left = self.tables.left();
        let ann = left.set_of(x);
        let candidates: Vec<Elem> = self
            .poset()
            .elems()
            .iter()
            .copied()
            .filter(|&e| r.mul(e, x) == x && ann.is_subset(left.set_of(e)))
            .collect();
        match candidates.as_slice() {
            [] => Err(Error::NoLeftProjection(x)),
            [e] => Ok(*e),
            _ => Err(Error::AmbiguousLeftProjection { x, candidates }),
        }
    }

    fn cover_uncached(&self, x: Elem) -> Result<Elem> {
        let r = self.ring;
        let poset = self.poset();
        let fixing: Vec<Elem> = poset
            .central_elems()
            .into_iter()
            .filter(|&h| r.mul(h, x) == x)
            .collect();
        poset.least(&fixing).ok_or(Error::NoCentralCover(x))
    }

    fn all_rp(&self) -> &[Result<Elem>] {
        self.rp.get_or_init(|| {
            self.tables.right();
            self.poset();
            par::map(self.ring.order(), |x| self.rp_uncached(x))
        })
    }

    fn all_lp(&self) -> &[Result<Elem>] {
        self.lp.get_or_init(|| {
            self.tables.left();
            self.poset();
            par::map(self.ring.order(), |x| self.lp_uncached(x))
        })
    }

    fn all_covers(&self) -> &[Result<Elem>] {
        self.cover.get_or_init(|| {
            self.poset();
            par::map(self.ring.order(), |x| self.cover_uncached(x))
        })
    }

    /// The projection `e` with `xe = x` and `xy = 0 ⟹ ey = 0`.
    pub fn rp(&self, x: Elem) -> Result<Projection> {
        self.all_rp()[x].clone().map(|e| self.poset().projection(e))
    }

    /// The projection `e` with `ex = x` and `yx = 0 ⟹ ye = 0`.
    pub fn lp(&self, x: Elem) -> Result<Projection> {
        self.all_lp()[x].clone().map(|e| self.poset().projection(e))
    }

    /// `rp(x*x)`; equals `rp(x)` when the involution is proper.
    pub fn rp_via_star(&self, x: Elem) -> Result<Projection> {
        let r = self.ring;
        self.rp(r.mul(r.star(x), x))
    }

    /// Smallest central projection `h` with `hx = x`.
    pub fn central_cover(&self, x: Elem) -> Result<Projection> {
        self.all_covers()[x].clone().map(|e| self.poset().projection(e))
    }

    /// Lowest element without a right projection.
    pub fn first_without_rp(&self) -> Option<Elem> {
        self.all_rp().iter().position(|r| r.is_err())
    }

    /// Greatest projection `g` (central if `central_only`) with `a·g = λ·g`.
    pub fn largest_eigen_projection(
        &self,
        alg: &ScalarAlgebra,
        a: Elem,
        lambda: Elem,
        central_only: bool,
    ) -> Result<Projection> {
        if lambda == 0 {
            return Err(Error::InvalidElement("the scalar must be nonzero".into()));
        }
        let r = self.ring;
        let poset = self.poset();
        let candidates: Vec<Elem> = poset
            .elems()
            .iter()
            .copied()
            .filter(|&g| (!central_only || poset.is_central(g)) && r.mul(a, g) == alg.act(lambda, g))
            .collect();
        poset
            .greatest(&candidates)
            .map(|g| poset.projection(g))
            .ok_or(Error::NoGreatestElement { candidates })
    }

    fn bound_witnesses(
        &self,
        alg: &ScalarAlgebra,
        image: impl Fn(Elem) -> Result<Projection>,
    ) -> Result<BoundOutcome> {
        let poset = self.poset();
        let mut entries = Vec::new();
        for lambda in 1..alg.k().order() {
            let mut upper: Vec<Elem> = poset.elems().to_vec();
            for x in self.ring.elements().filter(|&x| alg.act(lambda, x) == 0) {
                let p = image(x)?.elem;
                upper.retain(|&e| poset.le(p, e));
                if upper.is_empty() {
                    return Ok(BoundOutcome::Fails { lambda, x });
                }
            }
            let (bound, least) = match poset.least(&upper) {
                Some(l) => (l, true),
                None => (upper[0], false),
            };
            entries.push(BoundEntry { lambda, bound, least });
        }
        Ok(BoundOutcome::Holds(entries))
    }

    /// For each nonzero `λ`, a projection `e_λ` with `LP(x) ≤ e_λ` whenever
    /// `λx = 0`. `alg.r()` must be the analysed ring.
    pub fn condition3_witnesses(&self, alg: &ScalarAlgebra) -> Result<BoundOutcome> {
        self.bound_witnesses(alg, |x| self.lp(x))
    }

    /// As [`Self::condition3_witnesses`] with central covers in place of LP.
    pub fn condition_beta_witnesses(&self, alg: &ScalarAlgebra) -> Result<BoundOutcome> {
        self.bound_witnesses(alg, |x| self.central_cover(x))
    }
}

/// `e_λ` for one scalar. `least` is false when the upper bounds had no least
/// member and the lowest-index one was taken instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundEntry {
    pub lambda: Elem,
    pub bound: Elem,
    pub least: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BoundOutcome {
    Holds(Vec<BoundEntry>),
    /// No projection dominates the images of every `x` with `λx = 0`; `x` is
    /// the element at which the candidate set became empty.
    Fails { lambda: Elem, x: Elem },
}

impl BoundOutcome {
    pub fn holds(&self) -> bool {
        matches!(self, BoundOutcome::Holds(_))
    }

    pub fn bound_for(&self, lambda: Elem) -> Option<Elem> {
        match self {
            BoundOutcome::Holds(v) => v.iter().find(|e| e.lambda == lambda).map(|e| e.bound),
            BoundOutcome::Fails { .. } => None,
        }
    }
}

/// Error text with element indices rendered in `r`.
pub fn render_error(r: &StarRing, err: &Error) -> String {
    let list = |xs: &[Elem]| xs.iter().map(|&x| r.render(x)).collect::<Vec<_>>().join(", ");
    match err {
        Error::NoRightProjection(x) => format!("{} has no right projection", r.render(*x)),
        Error::NoLeftProjection(x) => format!("{} has no left projection", r.render(*x)),
        Error::NoCentralCover(x) => format!("{} has no central cover", r.render(*x)),
        Error::AmbiguousRightProjection { x, candidates } => format!(
            "{} has several right projection candidates: {}",
            r.render(*x),
            list(candidates)
        ),
        Error::AmbiguousLeftProjection { x, candidates } => format!(
            "{} has several left projection candidates: {}",
            r.render(*x),
            list(candidates)
        ),
        Error::NoGreatestElement { candidates } => {
            format!("no greatest projection among {{{}}}", list(candidates))
        }
        other => other.to_string(),
    }
}

pub fn projections(r: &StarRing) -> ProjectionPoset {
    ProjectionPoset::compute(r)
}

pub fn rp(r: &StarRing, x: Elem) -> Result<Projection> {
    Analysis::new(r).rp(x)
}

pub fn lp(r: &StarRing, x: Elem) -> Result<Projection> {
    Analysis::new(r).lp(x)
}

pub fn rp_via_star(r: &StarRing, x: Elem) -> Result<Projection> {
    Analysis::new(r).rp_via_star(x)
}

pub fn central_cover(r: &StarRing, x: Elem) -> Result<Projection> {
    Analysis::new(r).central_cover(x)
}

pub fn largest_eigen_projection(
    alg: &ScalarAlgebra,
    a: Elem,
    lambda: Elem,
    central_only: bool,
) -> Result<Projection> {
    Analysis::new(alg.r()).largest_eigen_projection(alg, a, lambda, central_only)
}

pub fn condition3_witnesses(alg: &ScalarAlgebra) -> Result<BoundOutcome> {
    Analysis::new(alg.r()).condition3_witnesses(alg)
}

pub fn condition_beta_witnesses(alg: &ScalarAlgebra) -> Result<BoundOutcome> {
    Analysis::new(alg.r()).condition_beta_witnesses(alg)
}
