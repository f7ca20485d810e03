//! Unitification of a `*`-algebra: `R₁ = R ⊕ K`, the kernel `N` of its left
//! regular representation on `R`, and the quotient `R̂₁ = R₁ / N`.
//!
//! Pairs `(a, λ)` are indexed `a·|K| + λ`, so index order is the
//! lexicographic order on `(a, λ)`. A coset is represented by its lowest
//! index, and cosets are numbered in increasing order of representative; the
//! zero coset is therefore index 0.

use std::sync::Arc;

use fixedbitset::FixedBitSet;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::ScalarAlgebra;
use crate::classify::{Classifier, Property};
use crate::error::{Error, Result};
use crate::par;
use crate::projection::{render_error, Analysis, BoundOutcome};
use crate::report::{Outcome, PropertyReport};
use crate::ring::{Elem, Kind, Limits, StarRing};

/// Quotients up to this order have every pair of cosets validated.
const FULL_VALIDATION: usize = 512;
const SAMPLE_PAIRS: usize = 4096;
const SAMPLE_SEED: u64 = 0x5eed_0001;

/// `R₁ = R ⊕ K` with `(a, λ)(b, μ) = (ab + μa + λb, λμ)` and unity `(0, 1)`.
pub fn build_r1(alg: &Arc<ScalarAlgebra>, limits: &Limits) -> Result<Arc<StarRing>> {
    let kn = alg.k().order();
    let order = limits.check_order(alg.r().order() as u128 * kn as u128)?;
    Ok(Arc::new(StarRing::assemble(
        format!("{} + {}", alg.r().name(), alg.k().name()),
        None,
        order,
        Kind::Unitized {
            algebra: Arc::clone(alg),
        },
        Some(alg.k_unity()),
        limits,
    )))
}

/// Index of the pair `(a, λ)`.
pub fn pair(alg: &ScalarAlgebra, a: Elem, lambda: Elem) -> Elem {
    a * alg.k().order() + lambda
}

/// Splits a pair index into `(a, λ)`.
pub fn split(alg: &ScalarAlgebra, p: Elem) -> (Elem, Elem) {
    let kn = alg.k().order();
    (p / kn, p % kn)
}

/// Checks, for a domain `K` acting without torsion, that `R₁` inherits a
/// proper involution from `R` and that `RP((x, 0)) = (RP(x), 0)`.
pub fn check_r1_lemmas(alg: &Arc<ScalarAlgebra>, limits: &Limits) -> Result<PropertyReport> {
    if !alg.k_is_domain() {
        return Err(Error::HypothesisNotMet(format!("{} is not an integral domain", alg.k().name())));
    }
    if let Some((lam, a)) = alg.torsion_witness() {
        return Err(Error::HypothesisNotMet(format!(
            "the action has torsion: {}·{} = 0",
            alg.k().render(lam),
            alg.r().render(a)
        )));
    }
    let r1 = build_r1(alg, limits)?;
    let r = alg.r();
    let start = std::time::Instant::now();
    let outcome = (|| {
        let r_proper = Classifier::new(r, *limits).holds(Property::Proper)?;
        if r_proper {
            if let Some(x) = par::find_first(r1.order(), |x| x != 0 && r1.mul(r1.star(x), x) == 0) {
                return Ok(Outcome::fail(vec![x]).with_detail("involution of R1 is not proper"));
            }
        }
        let (ra, r1a) = (Analysis::new(r), Analysis::new(&r1));
        for x in r.elements() {
            let lifted = r1a.rp(pair(alg, x, 0)).map(|p| p.elem);
            let ok = match (ra.rp(x), lifted) {
                (Ok(e), Ok(f)) => f == pair(alg, e.elem, 0),
                (Err(_), Err(_)) => true,
                (Ok(_), Err(_)) => false,
                (Err(_), Ok(f)) => split(alg, f).1 != 0,
            };
            if !ok {
                return Ok(Outcome::fail(vec![pair(alg, x, 0)]).with_detail("RP((x, 0)) differs from (RP(x), 0)"));
            }
        }
        Ok::<_, Error>(Outcome::pass())
    })()?;
    let micros = start.elapsed().as_micros() as u64;
    Ok(PropertyReport::from_outcome(&r1, "r1-lemmas", outcome, micros))
}

/// `N = {(a, λ) : ax + λx = 0 for all x ∈ R}` as a bitset over `R₁`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelN {
    bits: FixedBitSet,
}

impl KernelN {
    pub fn contains(&self, p: Elem) -> bool {
        self.bits.contains(p)
    }

    pub fn order(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.bits.ones().collect()
    }
}

/// Computes `N` and checks that it is an ideal of `R₁`.
pub fn compute_kernel_n(alg: &ScalarAlgebra, r1: &StarRing) -> Result<KernelN> {
    let r = alg.r();
    let member = par::map(r1.order(), |p| {
        let (a, lam) = split(alg, p);
        r.elements().all(|x| r.add(r.mul(a, x), alg.act(lam, x)) == 0)
    });
    let mut bits = FixedBitSet::with_capacity(r1.order());
    bits.extend(member.iter().enumerate().filter_map(|(p, &m)| m.then_some(p)));
    let kernel = KernelN { bits };
    let members = kernel.elements();
    let bad = par::find_map_first(members.len(), |i| {
        let n = members[i];
        if !kernel.contains(r1.neg(n)) {
            return Some(n);
        }
        r1.elements()
            .any(|x| {
                !kernel.contains(r1.mul(x, n)) || !kernel.contains(r1.mul(n, x)) || {
                    kernel.contains(x) && !kernel.contains(r1.add(x, n))
                }
            })
            .then_some(n)
    });
    if let Some(n) = bad {
        return Err(Error::VerificationFailed {
            claim: "N is an ideal of R1".into(),
            witness: r1.render(n),
        });
    }
    Ok(kernel)
}

/// Why the induced involution on `R̂₁` was accepted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvolutionGate {
    /// `R`'s involution is proper.
    Proper,
    /// `R`'s involution is semi-proper.
    SemiProper,
    /// Neither holds; `N* = N` was checked directly.
    Direct,
}

impl std::fmt::Display for InvolutionGate {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            InvolutionGate::Proper => "proper",
            InvolutionGate::SemiProper => "semi-proper",
            InvolutionGate::Direct => "direct",
        })
    }
}

/// `R̂₁` together with the data it was built from.
pub struct Unitization {
    alg: Arc<ScalarAlgebra>,
    r1: Arc<StarRing>,
    kernel: KernelN,
    quotient: StarRing,
    gate: InvolutionGate,
}

/// Builds `R₁`, `N` and `R̂₁ = R₁ / N`, and validates the quotient
/// operations against full cosets.
pub fn build_quotient(alg: &Arc<ScalarAlgebra>, limits: &Limits) -> Result<Unitization> {
    let r1 = build_r1(alg, limits)?;
    let kernel = compute_kernel_n(alg, &r1)?;
    let members = kernel.elements();

    let classifier = Classifier::new(alg.r(), *limits);
    let gate = if classifier.holds(Property::Proper)? {
        InvolutionGate::Proper
    } else if classifier.holds(Property::SemiProper)? {
        InvolutionGate::SemiProper
    } else {
        InvolutionGate::Direct
    };
    if let Some(&n) = members.iter().find(|&&n| !kernel.contains(r1.star(n))) {
        return Err(Error::InvolutionNotWellDefined(format!(
            "{} lies in N but its adjoint does not",
            r1.render(n)
        )));
    }

    let mut coset_of = vec![u32::MAX; r1.order()];
    let mut reps = Vec::new();
    for p in r1.elements() {
        if coset_of[p] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(p);
        for &n in &members {
            coset_of[r1.add(p, n)] = id;
        }
    }
    let order = reps.len();
    debug_assert_eq!(order * members.len(), r1.order());
    let unity = coset_of[alg.k_unity()] as Elem;
    let reps_for_validation = reps.clone();
    let coset_of_for_validation = coset_of.clone();
    let quotient = StarRing::assemble(
        format!("({} + {}) / N", alg.r().name(), alg.k().name()),
        None,
        order,
        Kind::Quotient {
            cover: Arc::clone(&r1),
            reps,
            coset_of,
        },
        Some(unity),
        limits,
    );
    validate_cosets(&r1, &quotient, &members, &reps_for_validation, &coset_of_for_validation)?;
    Ok(Unitization {
        alg: Arc::clone(alg),
        r1,
        kernel,
        quotient,
        gate,
    })
}

/// Recomputes `+`, `·` and `*` with every member of one coset in place of
/// its representative, on all coset pairs for small quotients and on a fixed
/// pseudo-random sample otherwise.
fn validate_cosets(
    r1: &StarRing,
    q: &StarRing,
    members: &[Elem],
    reps: &[Elem],
    coset_of: &[u32],
) -> Result<()> {
    let n = q.order();
    let pairs: Vec<(Elem, Elem)> = if n <= FULL_VALIDATION {
        (0..n * n).map(|k| (k / n, k % n)).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        (0..SAMPLE_PAIRS)
            .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
            .collect()
    };
    let class = |p: Elem| coset_of[p] as Elem;
    let bad = par::find_map_first(pairs.len(), |k| {
        let (x, y) = pairs[k];
        let (sum, prod) = (q.add(x, y), q.mul(x, y));
        members.iter().find_map(|&m| {
            let (xm, ym) = (r1.add(reps[x], m), r1.add(reps[y], m));
            let ok = class(r1.add(xm, reps[y])) == sum
                && class(r1.add(reps[x], ym)) == sum
                && class(r1.mul(xm, reps[y])) == prod
                && class(r1.mul(reps[x], ym)) == prod
                && class(r1.star(xm)) == q.star(x);
            (!ok).then(|| format!("cosets {}, {}", q.render(x), q.render(y)))
        })
    });
    match bad {
        Some(witness) => Err(Error::VerificationFailed {
            claim: "quotient operations are well defined".into(),
            witness,
        }),
        None => Ok(()),
    }
}

impl Unitization {
    pub fn algebra(&self) -> &Arc<ScalarAlgebra> {
        &self.alg
    }

    pub fn r1(&self) -> &StarRing {
        &self.r1
    }

    pub fn kernel(&self) -> &KernelN {
        &self.kernel
    }

    pub fn quotient(&self) -> &StarRing {
        &self.quotient
    }

    pub fn gate(&self) -> InvolutionGate {
        self.gate
    }

    /// The coset containing the pair `p`.
    pub fn coset(&self, p: Elem) -> Elem {
        match self.quotient.kind() {
            Kind::Quotient { coset_of, .. } => coset_of[p] as Elem,
            _ => unreachable!("quotient kind"),
        }
    }

    /// Lowest pair in coset `x`.
    pub fn representative(&self, x: Elem) -> Elem {
        match self.quotient.kind() {
            Kind::Quotient { reps, .. } => reps[x],
            _ => unreachable!("quotient kind"),
        }
    }

    /// `[a, λ]`.
    pub fn class_of(&self, a: Elem, lambda: Elem) -> Elem {
        self.coset(pair(&self.alg, a, lambda))
    }

    /// `a ↦ [a, 0]`.
    pub fn embed(&self, a: Elem) -> Elem {
        self.class_of(a, 0)
    }

    /// Lowest nonzero `a` with `[a, 0] = 0`, if the embedding is not
    /// injective.
    pub fn injectivity_witness(&self) -> Option<Elem> {
        par::find_first(self.alg.r().order(), |a| a != 0 && self.embed(a) == 0)
    }

    /// Lowest nonzero `a` with `aR = 0`.
    pub fn total_left_annihilator_witness(&self) -> Option<Elem> {
        let r = self.alg.r();
        par::find_first(r.order(), |a| a != 0 && r.elements().all(|x| r.mul(a, x) == 0))
    }

    /// Checks that `embed` preserves `+`, `·` and `*`.
    pub fn check_homomorphism(&self) -> Result<()> {
        let (r, q) = (self.alg.r(), &self.quotient);
        let n = r.order();
        let bad = par::find_first_pair(n, |a, b| {
            let (ea, eb) = (self.embed(a), self.embed(b));
            q.add(ea, eb) != self.embed(r.add(a, b))
                || q.mul(ea, eb) != self.embed(r.mul(a, b))
                || (b == 0 && q.star(ea) != self.embed(r.star(a)))
        });
        match bad {
            Some((a, b)) => Err(Error::VerificationFailed {
                claim: "a -> [a, 0] is a *-homomorphism".into(),
                witness: format!("({}, {})", r.render(a), r.render(b)),
            }),
            None => Ok(()),
        }
    }

    /// Whether `embed` is a bijection onto `R̂₁` (it is always a
    /// `*`-homomorphism once [`Self::check_homomorphism`] passes).
    pub fn embed_is_bijective(&self) -> bool {
        let (r, q) = (self.alg.r(), &self.quotient);
        if r.order() != q.order() {
            return false;
        }
        let mut hit = FixedBitSet::with_capacity(q.order());
        hit.extend(r.elements().map(|a| self.embed(a)));
        hit.count_ones(..) == q.order()
    }

    /// Analyses of `R` and `R̂₁` for repeated formula evaluation.
    pub fn analyses(&self) -> QuotientAnalysis<'_> {
        QuotientAnalysis {
            u: self,
            r: Analysis::new(self.alg.r()),
            q: Analysis::new(&self.quotient),
            q_proper: std::sync::OnceLock::new(),
        }
    }
}

/// Cached analyses of `R` and `R̂₁` for one unitization.
pub struct QuotientAnalysis<'u> {
    u: &'u Unitization,
    r: Analysis<'u>,
    q: Analysis<'u>,
    q_proper: std::sync::OnceLock<bool>,
}

impl<'u> QuotientAnalysis<'u> {
    pub fn r(&self) -> &Analysis<'u> {
        &self.r
    }

    pub fn q(&self) -> &Analysis<'u> {
        &self.q
    }

    fn q_is_proper(&self) -> bool {
        *self.q_proper.get_or_init(|| {
            let q = &self.u.quotient;
            par::find_first(q.order(), |x| x != 0 && q.mul(q.star(x), x) == 0).is_none()
        })
    }

    /// `[−g, 1]` where `g` is the greatest (central, if asked) projection of
    /// `R` with `ag = −λg`; `[e, 0]` with `e = RP(a)` or `C(a)` when `λ = 0`.
    fn formula_at(&self, p: Elem, central: bool) -> Result<Elem> {
        let alg = &self.u.alg;
        let (a, lam) = split(alg, p);
        if lam == 0 {
            let e = if central {
                self.r.central_cover(a)?
            } else {
                self.r.rp(a)?
            };
            return Ok(self.u.embed(e.elem));
        }
        let g = self.r.largest_eigen_projection(alg, a, alg.k().neg(lam), central)?;
        Ok(self.u.class_of(alg.r().neg(g.elem), alg.k_unity()))
    }

    /// Right projection of a coset by the closed formula. Self-adjoint cosets
    /// are evaluated at their lowest self-adjoint pair; other cosets go
    /// through `x*x` when `R̂₁`'s involution is proper.
    pub fn rp_formula(&self, x: Elem) -> Result<Elem> {
        let (q, r1) = (&self.u.quotient, &self.u.r1);
        if q.star(x) != x {
            if !self.q_is_proper() {
                return Err(Error::HypothesisNotMet(format!(
                    "{} is not self-adjoint and the quotient involution is not proper",
                    q.render(x)
                )));
            }
            return self.rp_formula(q.mul(q.star(x), x));
        }
        let rep = self.u.representative(x);
        let self_adjoint = self
            .u
            .kernel
            .bits
            .ones()
            .map(|n| r1.add(rep, n))
            .filter(|&p| r1.is_self_adjoint(p))
            .min();
        match self_adjoint {
            Some(p) => self.formula_at(p, false),
            None => Err(Error::HypothesisNotMet(format!(
                "{} has no self-adjoint representative",
                q.render(x)
            ))),
        }
    }

    /// `rp_formula` checked against the definition-level right projection
    /// in `R̂₁`.
    pub fn rp_in_quotient(&self, x: Elem) -> Result<Elem> {
        let formula = self.rp_formula(x)?;
        self.agree(x, formula, self.q.rp(x).map(|p| p.elem))
    }

    /// Central cover of a coset by the closed formula, checked against the
    /// definition in `R̂₁` including `xR̂₁y = 0 ⟺ ey = 0`.
    pub fn cover_in_quotient(&self, x: Elem) -> Result<Elem> {
        let formula = self.formula_at(self.u.representative(x), true)?;
        let e = self.agree(x, formula, self.q.central_cover(x).map(|p| p.elem))?;
        let tables = self.q.tables();
        if tables.right_of_right_ideal().set_of(x) != tables.right().set_of(e) {
            return Err(Error::VerificationFailed {
                claim: "xRy = 0 if and only if C(x)y = 0".into(),
                witness: self.u.quotient.render(x),
            });
        }
        Ok(e)
    }

    fn agree(&self, x: Elem, formula: Elem, brute: Result<Elem>) -> Result<Elem> {
        let q = &self.u.quotient;
        match brute {
            Ok(b) if b == formula => Ok(b),
            other => Err(Error::FormulaMismatch {
                coset: q.render(x),
                formula: q.render(formula),
                brute: match other {
                    Ok(b) => q.render(b),
                    Err(e) => render_error(q, &e),
                },
            }),
        }
    }

    /// Evaluates the right-projection formula at every self-adjoint pair of
    /// `R₁` and at every coset, comparing each with the definition. Returns
    /// the number of comparisons.
    pub fn check_rp_formula(&self) -> Result<usize> {
        let (r1, q) = (&self.u.r1, &self.u.quotient);
        let pairs: Vec<Elem> = r1.elements().filter(|&p| r1.is_self_adjoint(p)).collect();
        for &p in &pairs {
            let x = self.u.coset(p);
            self.agree(x, self.formula_at(p, false)?, self.q.rp(x).map(|e| e.elem))?;
        }
        for x in q.elements() {
            self.rp_in_quotient(x)?;
        }
        Ok(pairs.len() + q.order())
    }

    /// Evaluates the central-cover formula at every pair of `R₁`.
    pub fn check_cover_formula(&self) -> Result<usize> {
        let (r1, q) = (&self.u.r1, &self.u.quotient);
        for p in r1.elements() {
            let x = self.u.coset(p);
            self.agree(x, self.formula_at(p, true)?, self.q.central_cover(x).map(|e| e.elem))?;
        }
        for x in q.elements() {
            self.cover_in_quotient(x)?;
        }
        Ok(r1.order() + q.order())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VerifyMode {
    Rickart,
    Pqbaer,
}

impl std::str::FromStr for VerifyMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rickart" => Ok(VerifyMode::Rickart),
            "pqbaer" => Ok(VerifyMode::Pqbaer),
            _ => Err(Error::InvalidDescriptor(format!("unknown verification mode {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub weakly_rickart: Option<bool>,
    pub condition3: Option<bool>,
    pub weakly_pq_baer: Option<bool>,
    pub condition_beta: Option<bool>,
    #[serde(rename = "K_domain")]
    pub k_domain: bool,
    pub torsion_free: bool,
    pub proper: bool,
    pub semi_proper: bool,
    pub unital: bool,
}

/// One element's image under the projection map in `R` and in `R̂₁`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreservationRow {
    pub a: String,
    #[serde(rename = "rp_R", default, skip_serializing_if = "Option::is_none")]
    pub rp_r: Option<String>,
    #[serde(rename = "rp_Q", default, skip_serializing_if = "Option::is_none")]
    pub rp_q: Option<String>,
    #[serde(rename = "cover_R", default, skip_serializing_if = "Option::is_none")]
    pub cover_r: Option<String>,
    #[serde(rename = "cover_Q", default, skip_serializing_if = "Option::is_none")]
    pub cover_q: Option<String>,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingReport {
    pub algebra: String,
    pub mode: Option<VerifyMode>,
    pub hypotheses: Hypotheses,
    pub kernel_order: usize,
    pub quotient_order: usize,
    pub involution_gate: InvolutionGate,
    pub injective: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub injectivity_witness: Option<String>,
    /// Set when `K` is not a domain or the action has torsion.
    pub flags: Vec<String>,
    /// `R̂₁` is Rickart* (mode rickart) or p.q.-Baer* (mode pqbaer).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_class: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient_proper: Option<bool>,
    pub formula_checks: usize,
    pub preservation: Vec<PreservationRow>,
    pub verdict: bool,
    pub micros: u64,
}

impl EmbeddingReport {
    pub fn preserved(&self) -> usize {
        self.preservation.iter().filter(|r| r.ok).count()
    }

    pub fn stable(mut self) -> Self {
        self.micros = 0;
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

impl std::fmt::Display for EmbeddingReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for flag in &self.flags {
            writeln!(f, "note: {flag}")?;
        }
        writeln!(f, "algebra: {}", self.algebra)?;
        writeln!(f, "kernel order: {}", self.kernel_order)?;
        writeln!(f, "quotient order: {}", self.quotient_order)?;
        write!(f, "injective: {}", self.injective)?;
        if let Some(w) = &self.injectivity_witness {
            write!(f, " (witness {w})")?;
        }
        writeln!(f)?;
        writeln!(f, "involution gate: {}", self.involution_gate)?;
        if let Some(mode) = self.mode {
            let what = match mode {
                VerifyMode::Rickart => "right projections",
                VerifyMode::Pqbaer => "central covers",
            };
            writeln!(f, "{what} preserved: {}/{}", self.preserved(), self.preservation.len())?;
            writeln!(f, "formula checks: {}", self.formula_checks)?;
        }
        write!(f, "verdict: {}", if self.verdict { "pass" } else { "fail" })
    }
}

fn hypothesis_flags(alg: &ScalarAlgebra) -> Vec<String> {
    let mut flags = Vec::new();
    if !alg.k_is_domain() {
        flags.push("K is not an integral domain".to_string());
    }
    if let Some((lam, a)) = alg.torsion_witness() {
        flags.push(format!(
            "torsion present ({}·{} = 0)",
            alg.k().render(lam),
            alg.r().render(a)
        ));
    }
    flags
}

fn bound_failure(alg: &ScalarAlgebra, what: &str, outcome: &BoundOutcome) -> Option<Error> {
    match outcome {
        BoundOutcome::Holds(_) => None,
        BoundOutcome::Fails { lambda, x } => Some(Error::HypothesisNotMet(format!(
            "{what} fails at λ = {}, x = {}",
            alg.k().render(*lambda),
            alg.r().render(*x)
        ))),
    }
}

/// Builds `R̂₁` and, for a mode, checks the hypotheses and every claim of the
/// corresponding embedding theorem exhaustively.
pub fn verify_unitification(
    alg: &Arc<ScalarAlgebra>,
    mode: Option<VerifyMode>,
    limits: &Limits,
) -> Result<EmbeddingReport> {
    let start = std::time::Instant::now();
    let r = alg.r();
    let classifier = Classifier::new(r, *limits);
    let an = classifier.analysis();
    let mut hyp = Hypotheses {
        weakly_rickart: None,
        condition3: None,
        weakly_pq_baer: None,
        condition_beta: None,
        k_domain: alg.k_is_domain(),
        torsion_free: alg.is_torsion_free(),
        proper: classifier.holds(Property::Proper)?,
        semi_proper: classifier.holds(Property::SemiProper)?,
        unital: r.unity().is_some(),
    };
    match mode {
        Some(VerifyMode::Rickart) => {
            let wr = classifier.outcome(Property::WeaklyRickartStar)?;
            hyp.weakly_rickart = Some(wr.verdict);
            if !wr.verdict {
                return Err(Error::HypothesisNotMet(format!(
                    "R is not weakly Rickart: {} has no right projection",
                    r.render(wr.witness[0])
                )));
            }
            let c3 = an.condition3_witnesses(alg)?;
            hyp.condition3 = Some(c3.holds());
            if let Some(e) = bound_failure(alg, "condition (3)", &c3) {
                return Err(e);
            }
        }
        Some(VerifyMode::Pqbaer) => {
            let wp = classifier.outcome(Property::WeaklyPqBaerStar)?;
            hyp.weakly_pq_baer = Some(wp.verdict);
            if !wp.verdict {
                return Err(Error::HypothesisNotMet(format!(
                    "R is not weakly p.q.-Baer at {}",
                    r.render(wp.witness[0])
                )));
            }
            let cb = an.condition_beta_witnesses(alg)?;
            hyp.condition_beta = Some(cb.holds());
            if let Some(e) = bound_failure(alg, "condition (beta)", &cb) {
                return Err(e);
            }
        }
        None => {}
    }

    let u = build_quotient(alg, limits)?;
    let q = u.quotient();
    let injectivity = u.injectivity_witness();
    if injectivity != u.total_left_annihilator_witness() {
        return Err(Error::VerificationFailed {
            claim: "a -> [a, 0] is injective exactly when L(R) = 0".into(),
            witness: injectivity.map(|a| r.render(a)).unwrap_or_default(),
        });
    }
    u.check_homomorphism()?;

    let mut report = EmbeddingReport {
        algebra: alg.name(),
        mode,
        hypotheses: hyp,
        kernel_order: u.kernel().order(),
        quotient_order: q.order(),
        involution_gate: u.gate(),
        injective: injectivity.is_none(),
        injectivity_witness: injectivity.map(|a| r.render(a)),
        flags: hypothesis_flags(alg),
        quotient_class: None,
        quotient_proper: None,
        formula_checks: 0,
        preservation: Vec::new(),
        verdict: true,
        micros: 0,
    };
    let Some(mode) = mode else {
        report.micros = start.elapsed().as_micros() as u64;
        return Ok(report);
    };

    let qa = u.analyses();
    let qc = Classifier::new(q, *limits);
    if report.hypotheses.proper {
        let proper = qc.holds(Property::Proper)?;
        report.quotient_proper = Some(proper);
        if !proper {
            return Err(Error::VerificationFailed {
                claim: "the quotient involution is proper".into(),
                witness: q.render(qc.outcome(Property::Proper)?.witness[0]),
            });
        }
    }
    let (class, claim) = match mode {
        VerifyMode::Rickart => (Property::RickartStar, "the quotient is a Rickart *-ring"),
        VerifyMode::Pqbaer => (Property::PqBaerStar, "the quotient is a p.q.-Baer *-ring"),
    };
    let class_outcome = qc.outcome(class)?;
    report.quotient_class = Some(class_outcome.verdict);
    if !class_outcome.verdict {
        return Err(Error::VerificationFailed {
            claim: claim.into(),
            witness: class_outcome
                .witness
                .iter()
                .map(|&x| q.render(x))
                .collect::<Vec<_>>()
                .join(", "),
        });
    }

    report.preservation = par::map(r.order(), |a| {
        let x = u.embed(a);
        let (in_r, in_q) = match mode {
            VerifyMode::Rickart => (an.rp(a), qa.q().rp(x)),
            VerifyMode::Pqbaer => (an.central_cover(a), qa.q().central_cover(x)),
        };
        let ok = matches!((&in_r, &in_q), (Ok(e), Ok(f)) if u.embed(e.elem) == f.elem);
        let shown_r = in_r.map(|e| r.render(e.elem)).unwrap_or_else(|e| render_error(r, &e));
        let shown_q = in_q.map(|f| q.render(f.elem)).unwrap_or_else(|e| render_error(q, &e));
        let mut row = PreservationRow {
            a: r.render(a),
            rp_r: None,
            rp_q: None,
            cover_r: None,
            cover_q: None,
            ok,
        };
        match mode {
            VerifyMode::Rickart => (row.rp_r, row.rp_q) = (Some(shown_r), Some(shown_q)),
            VerifyMode::Pqbaer => (row.cover_r, row.cover_q) = (Some(shown_r), Some(shown_q)),
        }
        row
    });
    if let Some(row) = report.preservation.iter().find(|row| !row.ok) {
        return Err(Error::VerificationFailed {
            claim: match mode {
                VerifyMode::Rickart => "RP([a, 0]) = [RP(a), 0]".into(),
                VerifyMode::Pqbaer => "C([a, 0]) = [C(a), 0]".into(),
            },
            witness: row.a.clone(),
        });
    }
    report.formula_checks = match mode {
        VerifyMode::Rickart => qa.check_rp_formula()?,
        VerifyMode::Pqbaer => qa.check_cover_formula()?,
    };
    report.micros = start.elapsed().as_micros() as u64;
    Ok(report)
}
