//! `*`-algebras over a commutative unital `*`-ring of scalars.

use std::sync::Arc;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::par;
use crate::ring::{characteristic, Elem, StarRing};

/// How scalars act on the ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionSpec {
    /// `K = Z(m)` acting by repeated addition; needs `char(R) | m`.
    Natural,
    /// Explicit table, `table[λ·|R| + a] = λ·a`.
    Table(Vec<Elem>),
}

/// A ring `R` together with a validated action `K × R → R`.
pub struct ScalarAlgebra {
    r: Arc<StarRing>,
    k: Arc<StarRing>,
    action: Vec<u32>,
    k_unity: Elem,
    k_domain: bool,
    torsion: Option<(Elem, Elem)>,
    characteristic: u64,
}

impl std::fmt::Debug for ScalarAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScalarAlgebra")
            .field("r", &self.r.name())
            .field("k", &self.k.name())
            .field("k_domain", &self.k_domain)
            .field("torsion", &self.torsion)
            .finish()
    }
}

impl ScalarAlgebra {
    pub fn r(&self) -> &StarRing {
        &self.r
    }

    pub fn k(&self) -> &StarRing {
        &self.k
    }

    pub fn r_arc(&self) -> Arc<StarRing> {
        Arc::clone(&self.r)
    }

    /// `λ·a`.
    #[inline]
    pub fn act(&self, lambda: Elem, a: Elem) -> Elem {
        self.action[lambda * self.r.order() + a] as Elem
    }

    pub fn k_unity(&self) -> Elem {
        self.k_unity
    }

    /// `K` has no zero divisors and `1 ≠ 0`.
    pub fn k_is_domain(&self) -> bool {
        self.k_domain
    }

    /// `λa = 0` forces `λ = 0` or `a = 0`.
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_none()
    }

    /// Lowest `(λ, a)` with both nonzero and `λa = 0`.
    pub fn torsion_witness(&self) -> Option<(Elem, Elem)> {
        self.torsion
    }

    pub fn characteristic_r(&self) -> u64 {
        self.characteristic
    }

    pub fn name(&self) -> String {
        format!("{} over {}", self.r.name(), self.k.name())
    }
}

/// Validates `K`, builds the action and checks every algebra axiom
/// exhaustively.
pub fn build_scalar_algebra(
    r: Arc<StarRing>,
    k: Arc<StarRing>,
    spec: ActionSpec,
) -> Result<Arc<ScalarAlgebra>> {
    let Some(k_unity) = k.unity() else {
        return Err(Error::InvalidScalarRing(format!("{} has no unity", k.name())));
    };
    if !k.is_commutative() {
        return Err(Error::InvalidScalarRing(format!("{} is not commutative", k.name())));
    }
    let (rn, kn) = (r.order(), k.order());
    let characteristic = characteristic(&r);
    let action: Vec<u32> = match spec {
        ActionSpec::Natural => {
            let Some(RingDescriptor::Cyclic { m }) = k.descriptor() else {
                return Err(Error::InvalidScalarRing(format!(
                    "the natural action needs K = Z(m), got {}",
                    k.name()
                )));
            };
            if m % characteristic != 0 {
                return Err(Error::CharacteristicMismatch {
                    characteristic,
                    modulus: *m,
                });
            }
            let rows = par::map(kn, |lam| {
                // repeated addition, so λ·a = (λ mod char)·a by construction
                let mut out = Vec::with_capacity(rn);
                for a in 0..rn {
                    let mut acc = 0;
                    for _ in 0..lam {
                        acc = r.add(acc, a);
                    }
                    out.push(acc as u32);
                }
                out
            });
            rows.concat()
        }
        ActionSpec::Table(table) => {
            if table.len() != kn * rn || table.iter().any(|&v| v >= rn) {
                return Err(Error::ActionAxiomViolation {
                    axiom: "table shape".into(),
                    witness: format!("expected {} entries below {rn}", kn * rn),
                });
            }
            table.into_iter().map(|v| v as u32).collect()
        }
    };
    let mut alg = ScalarAlgebra {
        r,
        k,
        action,
        k_unity,
        k_domain: false,
        torsion: None,
        characteristic,
    };
    check_axioms(&alg)?;
    let k = &alg.k;
    alg.k_domain = kn > 1 && par::find_first_pair(kn, |l, m| l != 0 && m != 0 && k.mul(l, m) == 0).is_none();
    alg.torsion = par::find_first(kn * rn, |i| {
        let (l, a) = (i / rn, i % rn);
        l != 0 && a != 0 && alg.act(l, a) == 0
    })
    .map(|i| (i / rn, i % rn));
    Ok(Arc::new(alg))
}

fn check_axioms(alg: &ScalarAlgebra) -> Result<()> {
    let (r, k) = (&*alg.r, &*alg.k);
    let (rn, kn) = (r.order(), k.order());
    let fail = |axiom: &str, parts: &[(&str, String)]| {
        let witness = parts
            .iter()
            .map(|(name, v)| format!("{name}={v}"))
            .collect::<Vec<_>>()
            .join(", ");
        Err(Error::ActionAxiomViolation {
            axiom: axiom.to_string(),
            witness,
        })
    };
    if let Some(a) = (0..rn).find(|&a| alg.act(alg.k_unity, a) != a) {
        return fail("1a = a", &[("a", r.render(a))]);
    }
    if let Some(a) = (0..rn).find(|&a| alg.act(0, a) != 0) {
        return fail("0a = 0", &[("a", r.render(a))]);
    }
    // over (λ, μ, a)
    if let Some(i) = par::find_first(kn * kn, |i| {
        let (l, m) = (i / kn, i % kn);
        (0..rn).any(|a| {
            alg.act(k.add(l, m), a) != r.add(alg.act(l, a), alg.act(m, a))
                || alg.act(k.mul(l, m), a) != alg.act(l, alg.act(m, a))
        })
    }) {
        let (l, m) = (i / kn, i % kn);
        return fail(
            "(λ+μ)a = λa+μa and (λμ)a = λ(μa)",
            &[("λ", k.render(l)), ("μ", k.render(m))],
        );
    }
    // over (λ, a, b)
    if let Some(i) = par::find_first(kn * rn, |i| {
        let (l, a) = (i / rn, i % rn);
        let la = alg.act(l, a);
        if r.star(la) != alg.act(k.star(l), r.star(a)) {
            return true;
        }
        (0..rn).any(|b| {
            let lab = alg.act(l, r.mul(a, b));
            alg.act(l, r.add(a, b)) != r.add(la, alg.act(l, b))
                || lab != r.mul(la, b)
                || lab != r.mul(a, alg.act(l, b))
        })
    }) {
        let (l, a) = (i / rn, i % rn);
        return fail(
            "λ(a+b) = λa+λb, λ(ab) = (λa)b = a(λb), (λa)* = λ*a*",
            &[("λ", k.render(l)), ("a", r.render(a))],
        );
    }
    Ok(())
}
