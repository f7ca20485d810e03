//! Brute-force reference implementation, independent of the library's
//! element indexing and table machinery. Elements are explicit `n × n`
//! entry vectors over `Z(m)` (`n = 1` for cyclic rings), enumerated in
//! big-endian order, and every class is decided straight from its
//! definition.

#![allow(dead_code)]

use std::collections::BTreeSet;

use starlab_core::{Literal, StarRing};

pub type Val = Vec<u64>;

pub struct Naive {
    pub n: usize,
    pub m: u64,
    pub elems: Vec<Val>,
}

impl Naive {
    /// All of `M_n(Z(m))`.
    pub fn full(n: usize, m: u64) -> Self {
        let size = n * n;
        let mut elems = vec![Vec::new()];
        for _ in 0..size {
            elems = elems
                .into_iter()
                .flat_map(|v: Val| {
                    (0..m).map(move |d| {
                        let mut w = v.clone();
                        w.push(d);
                        w
                    })
                })
                .collect();
        }
        Naive { n, m, elems }
    }

    /// The subset of `M_n(Z(m))` satisfying `keep`.
    pub fn filtered(n: usize, m: u64, keep: impl Fn(&Val) -> bool) -> Self {
        let mut r = Naive::full(n, m);
        r.elems.retain(|v| keep(v));
        r
    }

    pub fn zero(&self) -> Val {
        vec![0; self.n * self.n]
    }

    pub fn add(&self, a: &Val, b: &Val) -> Val {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.m).collect()
    }

    pub fn mul(&self, a: &Val, b: &Val) -> Val {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = (0..n).map(|k| a[i * n + k] * b[k * n + j]).sum::<u64>() % self.m;
            }
        }
        out
    }

    pub fn star(&self, a: &Val) -> Val {
        let n = self.n;
        let mut out = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = a[j * n + i];
            }
        }
        out
    }

    pub fn is_zero(&self, a: &Val) -> bool {
        a.iter().all(|&x| x == 0)
    }

    pub fn projections(&self) -> Vec<Val> {
        self.elems
            .iter()
            .filter(|e| &self.star(e) == *e && &self.mul(e, e) == *e)
            .cloned()
            .collect()
    }

    pub fn is_central(&self, e: &Val) -> bool {
        self.elems.iter().all(|x| self.mul(e, x) == self.mul(x, e))
    }

    pub fn right_ann(&self, s: &[Val]) -> BTreeSet<Val> {
        self.elems
            .iter()
            .filter(|y| s.iter().all(|x| self.is_zero(&self.mul(x, y))))
            .cloned()
            .collect()
    }

    pub fn left_ann(&self, s: &[Val]) -> BTreeSet<Val> {
        self.elems
            .iter()
            .filter(|y| s.iter().all(|x| self.is_zero(&self.mul(y, x))))
            .cloned()
            .collect()
    }

    pub fn e_r(&self, e: &Val) -> BTreeSet<Val> {
        self.elems.iter().map(|r| self.mul(e, r)).collect()
    }

    pub fn r_f(&self, f: &Val) -> BTreeSet<Val> {
        self.elems.iter().map(|r| self.mul(r, f)).collect()
    }

    fn generated_by_projection(&self, set: &BTreeSet<Val>) -> bool {
        self.projections().iter().any(|e| &self.e_r(e) == set)
    }

    pub fn proper(&self) -> bool {
        self.elems
            .iter()
            .all(|x| self.is_zero(x) || !self.is_zero(&self.mul(&self.star(x), x)))
    }

    pub fn semi_proper(&self) -> bool {
        self.elems.iter().all(|a| {
            self.is_zero(a) || self.elems.iter().any(|r| !self.is_zero(&self.mul(&self.mul(a, r), &self.star(a))))
        })
    }

    pub fn reduced(&self) -> bool {
        self.elems.iter().all(|x| {
            let mut p = x.clone();
            for _ in 0..self.elems.len() {
                if self.is_zero(&p) {
                    return self.is_zero(x);
                }
                p = self.mul(&p, x);
            }
            true
        })
    }

    pub fn abelian(&self) -> bool {
        self.elems
            .iter()
            .filter(|e| &self.mul(e, e) == *e)
            .all(|e| self.is_central(e))
    }

    pub fn unity(&self) -> Option<Val> {
        self.elems
            .iter()
            .find(|u| self.elems.iter().all(|x| &self.mul(u, x) == x && &self.mul(x, u) == x))
            .cloned()
    }

    /// Every projection satisfying the right-projection conditions for `x`.
    pub fn rp_candidates(&self, x: &Val) -> Vec<Val> {
        let killed = self.right_ann(std::slice::from_ref(x));
        self.projections()
            .into_iter()
            .filter(|e| &self.mul(x, e) == x && killed.iter().all(|y| self.is_zero(&self.mul(e, y))))
            .collect()
    }

    pub fn lp_candidates(&self, x: &Val) -> Vec<Val> {
        let killed = self.left_ann(std::slice::from_ref(x));
        self.projections()
            .into_iter()
            .filter(|e| &self.mul(e, x) == x && killed.iter().all(|y| self.is_zero(&self.mul(y, e))))
            .collect()
    }

    pub fn central_cover(&self, x: &Val) -> Option<Val> {
        let fixing: Vec<Val> = self
            .projections()
            .into_iter()
            .filter(|h| self.is_central(h) && &self.mul(h, x) == x)
            .collect();
        fixing
            .iter()
            .find(|h| fixing.iter().all(|k| &self.mul(h, k) == *h))
            .cloned()
    }

    pub fn weakly_rickart(&self) -> bool {
        self.elems.iter().all(|x| self.rp_candidates(x).len() == 1)
    }

    pub fn rickart(&self) -> bool {
        self.elems
            .iter()
            .all(|x| self.generated_by_projection(&self.right_ann(std::slice::from_ref(x))))
    }

    /// Every nonempty subset; only feasible for tiny rings.
    pub fn baer_by_subsets(&self) -> bool {
        let k = self.elems.len();
        assert!(k <= 16, "subset enumeration is exponential");
        (1u32..(1 << k)).all(|mask| {
            let s: Vec<Val> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| self.elems[i].clone()).collect();
            self.generated_by_projection(&self.right_ann(&s))
        })
    }

    /// Additive closure of `{a} ∪ Ra ∪ aR ∪ RaR`.
    pub fn ideal(&self, a: &Val) -> BTreeSet<Val> {
        let mut gens: BTreeSet<Val> = BTreeSet::new();
        gens.insert(a.clone());
        for r in &self.elems {
            gens.insert(self.mul(r, a));
            gens.insert(self.mul(a, r));
            for s in &self.elems {
                gens.insert(self.mul(&self.mul(r, a), s));
            }
        }
        let mut closed: BTreeSet<Val> = BTreeSet::new();
        closed.insert(self.zero());
        loop {
            let next: BTreeSet<Val> = closed
                .iter()
                .flat_map(|c| gens.iter().map(move |g| (c, g)))
                .map(|(c, g)| self.add(c, g))
                .chain(closed.iter().cloned())
                .collect();
            if next == closed {
                return closed;
            }
            closed = next;
        }
    }

    pub fn quasi_baer(&self) -> bool {
        let principal: BTreeSet<BTreeSet<Val>> = self
            .elems
            .iter()
            .map(|a| {
                let i: Vec<Val> = self.ideal(a).into_iter().collect();
                self.right_ann(&i)
            })
            .collect();
        let mut family = principal.clone();
        loop {
            let mut next = family.clone();
            for a in &family {
                for b in &principal {
                    next.insert(a.intersection(b).cloned().collect());
                }
            }
            if next == family {
                break;
            }
            family = next;
        }
        family.iter().all(|s| self.generated_by_projection(s))
    }

    pub fn pq_baer(&self) -> bool {
        self.elems.iter().all(|a| {
            let a_r: Vec<Val> = self.e_r(a).into_iter().collect();
            let r_a: Vec<Val> = self.r_f(a).into_iter().collect();
            let right = self.right_ann(&a_r);
            let left = self.left_ann(&r_a);
            self.generated_by_projection(&right) && self.projections().iter().any(|f| self.r_f(f) == left)
        })
    }

    pub fn weakly_pq_baer(&self) -> bool {
        self.elems.iter().all(|x| {
            let Some(c) = self.central_cover(x) else {
                return false;
            };
            self.elems.iter().all(|y| {
                let xry = self.elems.iter().all(|r| self.is_zero(&self.mul(&self.mul(x, r), y)));
                xry == self.is_zero(&self.mul(&c, y))
            })
        })
    }

    /// `|N|` for the natural action of `Z(k)`: pairs `(a, λ)` with
    /// `ax + λx = 0` for every `x`.
    pub fn kernel_order(&self, k: u64) -> usize {
        let times = |lam: u64, x: &Val| -> Val { x.iter().map(|v| v * lam % self.m).collect() };
        let mut count = 0;
        for a in &self.elems {
            for lam in 0..k {
                if self.elems.iter().all(|x| self.is_zero(&self.add(&self.mul(a, x), &times(lam, x)))) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Converts a library literal into an oracle value.
pub fn value_of(lit: &Literal) -> Val {
    match lit {
        Literal::Int(v) => vec![*v],
        Literal::Matrix(rows) => rows.iter().flatten().copied().collect(),
        Literal::Pair { .. } => panic!("the oracle has no product rings"),
    }
}

/// The oracle value of library element `x`.
pub fn val(r: &StarRing, x: usize) -> Val {
    value_of(&r.literal(x).expect("descriptor-built ring"))
}

/// The library index of oracle value `v`.
pub fn index(r: &StarRing, v: &Val) -> usize {
    (0..r.order()).find(|&x| &val(r, x) == v).expect("value in ring")
}
