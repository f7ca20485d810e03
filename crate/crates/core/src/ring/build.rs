use std::sync::Arc;

use super::{Elem, Kind, Limits, StarRing};
use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};

/// Builds the ring a descriptor names.
///
/// Index order is fixed per constructor: residues `0..m` for `Z(m)`;
/// little-endian base-`m` digits over the row-major entries for `M(n, Z(m))`
/// (entry `(0,0)` is the least significant digit); `l·|B| + r` for
/// `prod(A, B)`; ascending parent indices for `sub`.
pub fn build_ring(d: &RingDescriptor, limits: &Limits) -> Result<StarRing> {
    d.check()?;
    let order = limits.check_order(d.order_bound().unwrap_or(u128::MAX))?;
    let name = d.to_string();
    let ring = match d {
        RingDescriptor::Cyclic { m } => {
            let unity = Some(if *m == 1 { 0 } else { 1 });
            StarRing::assemble(name, Some(d.clone()), order, Kind::Cyclic { m: *m }, unity, limits)
        }
        RingDescriptor::Matrix { n, base } => {
            let RingDescriptor::Cyclic { m } = base.as_ref() else {
                unreachable!("checked above");
            };
            let (n, m) = (*n as usize, *m);
            let n2 = n * n;
            let place: Vec<usize> = (0..n2).map(|k| (m as usize).pow(k as u32)).collect();
            let mut digits = Vec::with_capacity(order * n2);
            for i in 0..order {
                let mut rest = i;
                for _ in 0..n2 {
                    digits.push((rest % m as usize) as u32);
                    rest /= m as usize;
                }
            }
            let unity = if m == 1 {
                0
            } else {
                (0..n).map(|k| place[k * n + k]).sum()
            };
            let kind = Kind::Matrix { n, m, digits, place };
            StarRing::assemble(name, Some(d.clone()), order, kind, Some(unity), limits)
        }
        RingDescriptor::Product { left, right } => {
            let left = Arc::new(build_ring(left, limits)?);
            let right = Arc::new(build_ring(right, limits)?);
            let unity = match (left.unity(), right.unity()) {
                (Some(l), Some(r)) => Some(l * right.order() + r),
                _ => None,
            };
            let order = left.order() * right.order();
            StarRing::assemble(name, Some(d.clone()), order, Kind::Product { left, right }, unity, limits)
        }
        RingDescriptor::Subring { parent, generators } => {
            let parent = Arc::new(build_ring(parent, limits)?);
            let gens = generators
                .iter()
                .map(|g| parent.element(g))
                .collect::<Result<Vec<_>>>()?;
            let carrier = subring_closure(&parent, &gens);
            let mut local = vec![u32::MAX; parent.order()];
            for (i, &p) in carrier.iter().enumerate() {
                local[p] = i as u32;
            }
            let order = carrier.len();
            let kind = Kind::Sub {
                parent,
                carrier,
                local,
            };
            let mut ring = StarRing::assemble(name, Some(d.clone()), order, kind, None, limits);
            ring.unity = ring.find_unity();
            ring
        }
    };
    audit_cheap(&ring)?;
    Ok(ring)
}

/// Smallest subset of `parent` containing `0` and `gens`, closed under
/// `+`, `−`, `·` and `*`. Returned sorted ascending.
pub fn subring_closure(parent: &StarRing, gens: &[Elem]) -> Vec<Elem> {
    let mut member = vec![false; parent.order()];
    let mut list = Vec::new();
    let push = |x: Elem, member: &mut Vec<bool>, list: &mut Vec<Elem>| {
        if !member[x] {
            member[x] = true;
            list.push(x);
        }
    };
    push(0, &mut member, &mut list);
    for &g in gens {
        push(g, &mut member, &mut list);
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        push(parent.neg(x), &mut member, &mut list);
        push(parent.star(x), &mut member, &mut list);
        for j in 0..=i {
            let y = list[j];
            push(parent.add(x, y), &mut member, &mut list);
            push(parent.mul(x, y), &mut member, &mut list);
            push(parent.mul(y, x), &mut member, &mut list);
        }
        i += 1;
    }
    list.sort_unstable();
    list
}

/// Linear-time guard run on every build: zero at index 0, `*` an involution,
/// `−` an additive inverse, and the recorded unity acting as one on itself.
fn audit_cheap(r: &StarRing) -> Result<()> {
    let violation = |axiom: &str, witness: Vec<Elem>| Error::AxiomViolation {
        axiom: axiom.to_string(),
        witness,
    };
    if let Some(x) = r.elements().find(|&x| r.add(0, x) != x) {
        return Err(violation("additive identity", vec![x]));
    }
    if let Some(x) = r.elements().find(|&x| r.star(r.star(x)) != x) {
        return Err(violation("star involutive", vec![x]));
    }
    if let Some(x) = r.elements().find(|&x| r.add(x, r.neg(x)) != 0) {
        return Err(violation("additive inverse", vec![x]));
    }
    if let Some(u) = r.unity() {
        if let Some(x) = r.elements().find(|&x| r.mul(u, x) != x || r.mul(x, u) != x) {
            return Err(violation("unity", vec![u, x]));
        }
    }
    Ok(())
}
