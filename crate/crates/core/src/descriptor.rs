//! Constructor trees for rings and element literals.
//!
//! A descriptor prints to the ring DSL (see [`crate::dsl`]) and serializes to
//! JSON; both forms round-trip exactly. Persisted rings store descriptors
//! only, never tables.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingDescriptor {
    /// `Z(m)` with the identity involution.
    Cyclic { m: u64 },
    /// `M(n, Z(m))` with the transpose involution.
    Matrix { n: u64, base: Box<RingDescriptor> },
    /// `prod(A, B)` with the componentwise involution.
    Product {
        left: Box<RingDescriptor>,
        right: Box<RingDescriptor>,
    },
    /// `sub(A; g, ...)`: the smallest `*`-subring of `A` containing the generators.
    Subring {
        parent: Box<RingDescriptor>,
        generators: Vec<Literal>,
    },
}

/// An element written in the structural notation of its ring: an integer for
/// `Z(m)`, a row-major matrix for `M(n, Z(m))`, a pair for products.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Literal {
    Int(u64),
    Matrix(Vec<Vec<u64>>),
    Pair { pair: Box<(Literal, Literal)> },
}

impl Literal {
    pub fn pair(left: Literal, right: Literal) -> Self {
        Literal::Pair {
            pair: Box::new((left, right)),
        }
    }
}

impl RingDescriptor {
    pub fn cyclic(m: u64) -> Self {
        RingDescriptor::Cyclic { m }
    }

    pub fn matrix(n: u64, m: u64) -> Self {
        RingDescriptor::Matrix {
            n,
            base: Box::new(RingDescriptor::cyclic(m)),
        }
    }

    pub fn product(left: RingDescriptor, right: RingDescriptor) -> Self {
        RingDescriptor::Product {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn subring(parent: RingDescriptor, generators: Vec<Literal>) -> Self {
        RingDescriptor::Subring {
            parent: Box::new(parent),
            generators,
        }
    }

    /// Checks the structural constraints that do not need the ring itself.
    pub fn check(&self) -> Result<()> {
        match self {
            RingDescriptor::Cyclic { m } => {
                if *m == 0 {
                    return Err(Error::InvalidDescriptor("Z(m) needs m >= 1".into()));
                }
                if *m > u32::MAX as u64 {
                    return Err(Error::InvalidDescriptor(format!("modulus {m} is too large")));
                }
            }
            RingDescriptor::Matrix { n, base } => {
                if *n == 0 {
                    return Err(Error::InvalidDescriptor("M(n, _) needs n >= 1".into()));
                }
                match base.as_ref() {
                    RingDescriptor::Cyclic { .. } => base.check()?,
                    other => {
                        return Err(Error::InvalidDescriptor(format!(
                            "matrix base must be Z(m), got {other}"
                        )))
                    }
                }
            }
            RingDescriptor::Product { left, right } => {
                left.check()?;
                right.check()?;
            }
            RingDescriptor::Subring { parent, generators } => {
                parent.check()?;
                if generators.is_empty() {
                    return Err(Error::InvalidDescriptor("sub(_; ...) needs a generator".into()));
                }
            }
        }
        Ok(())
    }

    /// Order of the ring, or an upper bound for subrings. `None` on overflow.
    pub fn order_bound(&self) -> Option<u128> {
        match self {
            RingDescriptor::Cyclic { m } => Some(*m as u128),
            RingDescriptor::Matrix { n, base } => {
                let m = base.order_bound()?;
                let exp = u32::try_from(n.checked_mul(*n)?).ok()?;
                m.checked_pow(exp)
            }
            RingDescriptor::Product { left, right } => {
                left.order_bound()?.checked_mul(right.order_bound()?)
            }
            RingDescriptor::Subring { parent, .. } => parent.order_bound(),
        }
    }

    /// Hex SHA-256 of the canonical DSL text.
    pub fn hash_hex(&self) -> String {
        let digest = Sha256::digest(self.to_string().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: RingDescriptor =
            serde_json::from_str(text).map_err(|e| Error::InvalidDescriptor(e.to_string()))?;
        d.check()?;
        Ok(d)
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingDescriptor::Cyclic { m } => write!(f, "Z({m})"),
            RingDescriptor::Matrix { n, base } => write!(f, "M({n}, {base})"),
            RingDescriptor::Product { left, right } => write!(f, "prod({left}, {right})"),
            RingDescriptor::Subring { parent, generators } => {
                write!(f, "sub({parent}; ")?;
                for (i, g) in generators.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{g}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Literal::Int(v) => write!(f, "{v}"),
            Literal::Matrix(rows) => {
                f.write_str("[")?;
                for (i, row) in rows.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str("[")?;
                    for (j, v) in row.iter().enumerate() {
                        if j > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "{v}")?;
                    }
                    f.write_str("]")?;
                }
                f.write_str("]")
            }
            Literal::Pair { pair } => write!(f, "({}, {})", pair.0, pair.1),
        }
    }
}
