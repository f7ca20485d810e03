//! Finite rings with involution on an indexed carrier.
//!
//! Elements are indices `0..order` with index 0 the additive zero. Each
//! constructor computes its operations structurally; when `order²` is at most
//! [`Limits::table_threshold`] the addition and multiplication tables are
//! materialized once at construction. A built ring is immutable.

mod build;
mod validate;

use std::sync::Arc;

use crate::algebra::ScalarAlgebra;
use crate::descriptor::{Literal, RingDescriptor};
use crate::error::{Error, Result};
use crate::par;

pub use build::{build_ring, subring_closure};
pub use validate::{characteristic, validate_star_ring, Axiom};

/// Index of an element in its ring's carrier.
pub type Elem = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ring order any constructor will build.
    pub max_order: usize,
    /// Materialize `+`/`·` tables when `order²` is at most this.
    pub table_threshold: usize,
    /// Largest annihilator family the intersection closure may produce.
    pub family_cap: usize,
    /// Superquadratic scans log a warning above this order.
    pub warn_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: 10_000,
            table_threshold: 6_250_000,
            family_cap: 4096,
            warn_order: 2500,
        }
    }
}

impl Limits {
    pub fn with_max_order(self, max_order: usize) -> Self {
        Limits { max_order, ..self }
    }

    pub(crate) fn check_order(&self, order: u128) -> Result<usize> {
        if order > self.max_order as u128 {
            return Err(Error::OrderCapExceeded {
                order,
                cap: self.max_order,
            });
        }
        Ok(order as usize)
    }

    pub(crate) fn warn_superquadratic(&self, ring: &StarRing, what: &str) {
        if ring.order() > self.warn_order {
            log::warn!(
                "{what} on {} scans a ring of order {} (above {})",
                ring.name(),
                ring.order(),
                self.warn_order
            );
        }
    }
}

pub(crate) enum Kind {
    Cyclic {
        m: u64,
    },
    Matrix {
        n: usize,
        m: u64,
        /// Row-major entries of every element, `n²` per element.
        digits: Vec<u32>,
        /// `m^k` for each row-major position `k`.
        place: Vec<usize>,
    },
    Product {
        left: Arc<StarRing>,
        right: Arc<StarRing>,
    },
    Sub {
        parent: Arc<StarRing>,
        carrier: Vec<Elem>,
        /// Parent index to local index, `u32::MAX` outside the carrier.
        local: Vec<u32>,
    },
    Unitized {
        algebra: Arc<ScalarAlgebra>,
    },
    Quotient {
        cover: Arc<StarRing>,
        reps: Vec<Elem>,
        coset_of: Vec<u32>,
    },
    #[cfg(test)]
    Tabulated,
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
}

pub struct StarRing {
    name: String,
    descriptor: Option<RingDescriptor>,
    order: usize,
    kind: Kind,
    tables: Option<Tables>,
    neg: Vec<u32>,
    star: Vec<u32>,
    unity: Option<Elem>,
}

impl std::fmt::Debug for StarRing {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("StarRing")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("unity", &self.unity)
            .field("tabulated", &self.tables.is_some())
            .finish()
    }
}

impl Kind {
    fn add(&self, i: Elem, j: Elem) -> Elem {
        match self {
            Kind::Cyclic { m } => ((i as u64 + j as u64) % m) as Elem,
            Kind::Matrix { n, m, digits, place } => {
                let n2 = n * n;
                let (a, b) = (&digits[i * n2..(i + 1) * n2], &digits[j * n2..(j + 1) * n2]);
                (0..n2)
                    .map(|k| ((a[k] as u64 + b[k] as u64) % m) as usize * place[k])
                    .sum()
            }
            Kind::Product { left, right } => {
                let rn = right.order();
                left.add(i / rn, j / rn) * rn + right.add(i % rn, j % rn)
            }
            Kind::Sub {
                parent,
                carrier,
                local,
            } => local[parent.add(carrier[i], carrier[j])] as Elem,
            Kind::Unitized { algebra } => {
                let (r, k) = (algebra.r(), algebra.k());
                let kn = k.order();
                r.add(i / kn, j / kn) * kn + k.add(i % kn, j % kn)
            }
            Kind::Quotient {
                cover,
                reps,
                coset_of,
            } => coset_of[cover.add(reps[i], reps[j])] as Elem,
            #[cfg(test)]
            Kind::Tabulated => unreachable!("tabulated rings always carry tables"),
        }
    }

    fn mul(&self, i: Elem, j: Elem) -> Elem {
        match self {
            Kind::Cyclic { m } => ((i as u64 * j as u64) % m) as Elem,
            Kind::Matrix { n, m, digits, place } => {
                let n = *n;
                let n2 = n * n;
                let (a, b) = (&digits[i * n2..(i + 1) * n2], &digits[j * n2..(j + 1) * n2]);
                let mut out = 0;
                for r in 0..n {
                    for c in 0..n {
                        let s: u64 = (0..n).map(|t| a[r * n + t] as u64 * b[t * n + c] as u64).sum();
                        out += (s % m) as usize * place[r * n + c];
                    }
                }
                out
            }
            Kind::Product { left, right } => {
                let rn = right.order();
                left.mul(i / rn, j / rn) * rn + right.mul(i % rn, j % rn)
            }
            Kind::Sub {
                parent,
                carrier,
                local,
            } => local[parent.mul(carrier[i], carrier[j])] as Elem,
            Kind::Unitized { algebra } => {
                // (a, λ)(b, μ) = (ab + μa + λb, λμ)
                let (r, k) = (algebra.r(), algebra.k());
                let kn = k.order();
                let (a, lam) = (i / kn, i % kn);
                let (b, mu) = (j / kn, j % kn);
                let first = r.add(r.add(r.mul(a, b), algebra.act(mu, a)), algebra.act(lam, b));
                first * kn + k.mul(lam, mu)
            }
            Kind::Quotient {
                cover,
                reps,
                coset_of,
            } => coset_of[cover.mul(reps[i], reps[j])] as Elem,
            #[cfg(test)]
            Kind::Tabulated => unreachable!("tabulated rings always carry tables"),
        }
    }

    fn neg(&self, i: Elem) -> Elem {
        match self {
            Kind::Cyclic { m } => ((m - i as u64) % m) as Elem,
            Kind::Matrix { n, m, digits, place } => {
                let n2 = n * n;
                let a = &digits[i * n2..(i + 1) * n2];
                (0..n2).map(|k| ((m - a[k] as u64) % m) as usize * place[k]).sum()
            }
            Kind::Product { left, right } => {
                let rn = right.order();
                left.neg(i / rn) * rn + right.neg(i % rn)
            }
            Kind::Sub {
                parent,
                carrier,
                local,
            } => local[parent.neg(carrier[i])] as Elem,
            Kind::Unitized { algebra } => {
                let kn = algebra.k().order();
                algebra.r().neg(i / kn) * kn + algebra.k().neg(i % kn)
            }
            Kind::Quotient {
                cover,
                reps,
                coset_of,
            } => coset_of[cover.neg(reps[i])] as Elem,
            #[cfg(test)]
            Kind::Tabulated => unreachable!(),
        }
    }

    fn star(&self, i: Elem) -> Elem {
        match self {
            Kind::Cyclic { .. } => i,
            Kind::Matrix { n, digits, place, .. } => {
                let n = *n;
                let n2 = n * n;
                let a = &digits[i * n2..(i + 1) * n2];
                let mut out = 0;
                for r in 0..n {
                    for c in 0..n {
                        out += a[c * n + r] as usize * place[r * n + c];
                    }
                }
                out
            }
            Kind::Product { left, right } => {
                let rn = right.order();
                left.star(i / rn) * rn + right.star(i % rn)
            }
            Kind::Sub {
                parent,
                carrier,
                local,
            } => local[parent.star(carrier[i])] as Elem,
            Kind::Unitized { algebra } => {
                let kn = algebra.k().order();
                algebra.r().star(i / kn) * kn + algebra.k().star(i % kn)
            }
            Kind::Quotient {
                cover,
                reps,
                coset_of,
            } => coset_of[cover.star(reps[i])] as Elem,
            #[cfg(test)]
            Kind::Tabulated => unreachable!(),
        }
    }
}

impl StarRing {
    pub(crate) fn assemble(
        name: String,
        descriptor: Option<RingDescriptor>,
        order: usize,
        kind: Kind,
        unity: Option<Elem>,
        limits: &Limits,
    ) -> Self {
        let neg = par::map(order, |i| kind.neg(i) as u32);
        let star = par::map(order, |i| kind.star(i) as u32);
        let tables = if order.saturating_mul(order) <= limits.table_threshold {
            let rows = par::map(order, |i| {
                let add: Vec<u32> = (0..order).map(|j| kind.add(i, j) as u32).collect();
                let mul: Vec<u32> = (0..order).map(|j| kind.mul(i, j) as u32).collect();
                (add, mul)
            });
            let mut add = Vec::with_capacity(order * order);
            let mut mul = Vec::with_capacity(order * order);
            for (a, m) in rows {
                add.extend(a);
                mul.extend(m);
            }
            Some(Tables { add, mul })
        } else {
            None
        };
        StarRing {
            name,
            descriptor,
            order,
            kind,
            tables,
            neg,
            star,
            unity,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// DSL text for descriptor-built rings, a structural label otherwise.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn descriptor(&self) -> Option<&RingDescriptor> {
        self.descriptor.as_ref()
    }

    pub fn is_tabulated(&self) -> bool {
        self.tables.is_some()
    }

    pub fn zero(&self) -> Elem {
        0
    }

    pub fn unity(&self) -> Option<Elem> {
        self.unity
    }

    #[inline]
    pub fn add(&self, i: Elem, j: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.add[i * self.order + j] as Elem,
            None => self.kind.add(i, j),
        }
    }

    #[inline]
    pub fn mul(&self, i: Elem, j: Elem) -> Elem {
        match &self.tables {
            Some(t) => t.mul[i * self.order + j] as Elem,
            None => self.kind.mul(i, j),
        }
    }

    #[inline]
    pub fn neg(&self, i: Elem) -> Elem {
        self.neg[i] as Elem
    }

    #[inline]
    pub fn sub(&self, i: Elem, j: Elem) -> Elem {
        self.add(i, self.neg(j))
    }

    #[inline]
    pub fn star(&self, i: Elem) -> Elem {
        self.star[i] as Elem
    }

    /// `k·x`, the `k`-fold sum of `x`.
    pub fn times(&self, mut k: u64, x: Elem) -> Elem {
        let mut acc = 0;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    pub fn is_self_adjoint(&self, x: Elem) -> bool {
        self.star(x) == x
    }

    pub fn is_projection(&self, x: Elem) -> bool {
        self.star(x) == x && self.mul(x, x) == x
    }

    pub fn is_central(&self, x: Elem) -> bool {
        self.elements().all(|y| self.mul(x, y) == self.mul(y, x))
    }

    pub fn is_commutative(&self) -> bool {
        par::find_first_pair(self.order, |i, j| j > i && self.mul(i, j) != self.mul(j, i)).is_none()
    }

    /// Structural literal of `x`, for descriptor-built rings.
    pub fn literal(&self, x: Elem) -> Option<Literal> {
        match &self.kind {
            Kind::Cyclic { .. } => Some(Literal::Int(x as u64)),
            Kind::Matrix { n, digits, .. } => {
                let n = *n;
                let a = &digits[x * n * n..(x + 1) * n * n];
                Some(Literal::Matrix(
                    (0..n).map(|r| (0..n).map(|c| a[r * n + c] as u64).collect()).collect(),
                ))
            }
            Kind::Product { left, right } => {
                let rn = right.order();
                Some(Literal::pair(left.literal(x / rn)?, right.literal(x % rn)?))
            }
            Kind::Sub { parent, carrier, .. } => parent.literal(carrier[x]),
            _ => None,
        }
    }

    /// Human-readable element: the literal, `(a, λ)` for unitization pairs, or
    /// `[a, λ]` for quotient cosets (canonical representative).
    pub fn render(&self, x: Elem) -> String {
        if let Some(lit) = self.literal(x) {
            return lit.to_string();
        }
        match &self.kind {
            Kind::Unitized { algebra } => {
                let kn = algebra.k().order();
                format!("({}, {})", algebra.r().render(x / kn), algebra.k().render(x % kn))
            }
            Kind::Quotient { cover, reps, .. } => {
                let inner = cover.render(reps[x]);
                let trimmed = inner.strip_prefix('(').and_then(|s| s.strip_suffix(')'));
                format!("[{}]", trimmed.unwrap_or(&inner))
            }
            _ => format!("#{x}"),
        }
    }

    /// Index of a literal in this ring.
    pub fn element(&self, lit: &Literal) -> Result<Elem> {
        let bad = || Error::InvalidElement(format!("{lit} is not an element of {}", self.name));
        match (&self.kind, lit) {
            (Kind::Cyclic { m }, Literal::Int(v)) if *v < *m => Ok(*v as Elem),
            (Kind::Matrix { n, m, place, .. }, Literal::Matrix(rows)) => {
                let n = *n;
                if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                    return Err(bad());
                }
                let mut idx = 0;
                for (r, row) in rows.iter().enumerate() {
                    for (c, v) in row.iter().enumerate() {
                        if v >= m {
                            return Err(bad());
                        }
                        idx += *v as usize * place[r * n + c];
                    }
                }
                Ok(idx)
            }
            (Kind::Product { left, right }, Literal::Pair { pair }) => {
                let l = left.element(&pair.0)?;
                let r = right.element(&pair.1)?;
                Ok(l * right.order() + r)
            }
            (Kind::Sub { parent, local, .. }, _) => {
                let p = parent.element(lit)?;
                match local[p] {
                    u32::MAX => Err(bad()),
                    i => Ok(i as Elem),
                }
            }
            _ => Err(bad()),
        }
    }

    /// Finds a two-sided identity by scanning; lowest index wins.
    pub fn find_unity(&self) -> Option<Elem> {
        let n = self.order;
        par::find_first(n, |e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub(crate) fn kind(&self) -> &Kind {
        &self.kind
    }

    #[cfg(test)]
    pub(crate) fn tabulated_copy(&self, edit: impl FnOnce(&mut Vec<u32>, &mut Vec<u32>)) -> StarRing {
        let n = self.order;
        let mut add: Vec<u32> = (0..n * n).map(|k| self.add(k / n, k % n) as u32).collect();
        let mut mul: Vec<u32> = (0..n * n).map(|k| self.mul(k / n, k % n) as u32).collect();
        edit(&mut add, &mut mul);
        StarRing {
            name: format!("tabulated({})", self.name),
            descriptor: None,
            order: n,
            kind: Kind::Tabulated,
            tables: Some(Tables { add, mul }),
            neg: self.neg.clone(),
            star: self.star.clone(),
            unity: self.unity,
        }
    }
}
