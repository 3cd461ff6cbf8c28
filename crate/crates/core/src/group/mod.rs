//! Finitely generated permutation groups.
//!
//! A [`PermGroup`] is a generator list plus a lazily built, cached
//! [`StabilizerChain`]. Subgroups produced here (stabilizers, intersections,
//! normalizers) are independent groups with their own generator lists.

mod chain;
mod coset;
pub mod orbit;

use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::One;

pub use chain::StabilizerChain;
pub use coset::CosetSpace;
pub use orbit::{orbit_points, OrbitTransversal};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    name: Option<String>,
    /// Proven upper bound on the order, used to stop chain construction early.
    order_bound: Option<BigUint>,
    chain: OnceLock<Arc<StabilizerChain>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            name: self.name.clone(),
            order_bound: self.order_bound.clone(),
            chain: self.chain.clone(),
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    /// Group generated by `generators`, which must be nonempty and share a degree.
    pub fn new(generators: Vec<Permutation>) -> Result<PermGroup> {
        let first = generators.first().ok_or(Error::NoGenerators)?;
        let degree = first.degree();
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                left: degree,
                right: g.degree(),
            });
        }
        Ok(PermGroup {
            degree,
            generators,
            name: None,
            order_bound: None,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(vec![Permutation::identity(degree)]).expect("identity generator")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> PermGroup {
        self.name = Some(name.into());
        self
    }

    /// Attaches a proven upper bound on the order.
    pub(crate) fn with_order_bound(mut self, bound: BigUint) -> PermGroup {
        self.order_bound = Some(bound);
        self
    }

    /// Wraps an already complete chain.
    pub(crate) fn from_chain(chain: StabilizerChain) -> PermGroup {
        let mut gens = chain.level_generators(0);
        if gens.is_empty() {
            gens.push(Permutation::identity(chain.degree()));
        }
        let group = PermGroup::new(gens).expect("chain generators share a degree");
        let _ = group.chain.set(Arc::new(chain));
        group
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// The cached chain, built on first use with base points chosen as
    /// least moved points.
    pub fn chain(&self) -> &StabilizerChain {
        self.chain.get_or_init(|| {
            Arc::new(StabilizerChain::build(
                self.degree,
                &self.generators,
                &[],
                self.order_bound.as_ref(),
            ))
        })
    }

    /// A fresh chain whose base begins with `base`.
    pub fn chain_with_base(&self, base: &[usize]) -> Result<StabilizerChain> {
        self.check_points(base)?;
        let order = self.order();
        Ok(StabilizerChain::build(
            self.degree,
            &self.generators,
            base,
            Some(&order),
        ))
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    fn check_point(&self, x: usize) -> Result<()> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        Ok(())
    }

    fn check_points(&self, xs: &[usize]) -> Result<()> {
        xs.iter().try_for_each(|&x| self.check_point(x))
    }

    fn check_degree(&self, x: &Permutation) -> Result<()> {
        if x.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: x.degree(),
            });
        }
        Ok(())
    }

    /// Membership test: `x` sifts to the identity.
    pub fn contains(&self, x: &Permutation) -> Result<bool> {
        self.check_degree(x)?;
        Ok(self.chain().contains(x))
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        for g in &self.generators {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Errors with the index of the first generator outside `other`.
    pub fn require_subgroup_of(&self, other: &PermGroup) -> Result<()> {
        for (index, g) in self.generators.iter().enumerate() {
            if !other.contains(g)? {
                return Err(Error::NotSubgroup { index });
            }
        }
        Ok(())
    }

    /// The orbit of `x`, sorted.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        self.check_point(x)?;
        let mut pts = orbit_points(&self.generators, x, |&p, g| g.apply(p));
        pts.sort_unstable();
        Ok(pts)
    }

    /// All orbits, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        orbit_points(&self.generators, 0usize, |&p, g| g.apply(p)).len() == self.degree
    }

    /// `G_x`, with `|G| = |G_x| * |x^G|`.
    pub fn point_stabilizer(&self, x: usize) -> Result<PermGroup> {
        self.tuple_stabilizer(&[x])
    }

    /// Pointwise stabilizer of `xs`.
    pub fn tuple_stabilizer(&self, xs: &[usize]) -> Result<PermGroup> {
        let chain = self.chain_with_base(xs)?;
        let mut distinct = xs.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        Ok(PermGroup::from_chain(chain.tail(distinct.len())))
    }

    /// Orbits of `G_alpha` on the domain; `[alpha]` comes first and the rest
    /// are ordered by least element.
    pub fn suborbits(&self, alpha: usize) -> Result<Vec<Vec<usize>>> {
        self.check_point(alpha)?;
        if !self.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let stab = self.point_stabilizer(alpha)?;
        let mut orbits = stab.orbits();
        let pos = orbits
            .iter()
            .position(|o| o == &vec![alpha])
            .expect("alpha is fixed by its stabilizer");
        let trivial = orbits.remove(pos);
        orbits.insert(0, trivial);
        Ok(orbits)
    }

    /// Whether the orbital of `(alpha, beta)` also contains `(beta, alpha)`.
    pub fn is_self_paired(&self, alpha: usize, beta: usize) -> Result<bool> {
        self.check_point(alpha)?;
        self.check_point(beta)?;
        if alpha == beta {
            return Err(Error::InvalidArgument(
                "a self-paired test needs two distinct points".into(),
            ));
        }
        let orbital = orbit_points(&self.generators, (alpha, beta), |&(a, b), g| {
            (g.apply(a), g.apply(b))
        });
        Ok(orbital.contains(&(beta, alpha)))
    }

    /// Largest `k <= k_max` for which the group is `k`-transitive; 0 when
    /// intransitive.
    pub fn transitivity_grade(&self, k_max: usize) -> usize {
        let n = self.degree;
        if !self.is_transitive() {
            return 0;
        }
        let k_max = k_max.min(n);
        let base: Vec<usize> = (0..k_max).collect();
        let chain = self.chain_with_base(&base).expect("points in range");
        let lens = chain.basic_orbit_lengths();
        let mut grade = 0;
        for i in 0..k_max {
            if lens.get(i).copied().unwrap_or(1) == n - i {
                grade = i + 1;
            } else {
                break;
            }
        }
        grade
    }

    /// All point stabilizers trivial; checked on one point per orbit.
    pub fn is_semiregular(&self) -> bool {
        let order = self.order();
        if order > BigUint::from(self.degree) {
            return false;
        }
        self.orbits()
            .iter()
            .all(|o| BigUint::from(o.len()) == order)
    }

    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.is_semiregular()
    }

    /// 2-transitive of order exactly `n(n-1)`.
    pub fn is_sharply_2transitive(&self) -> bool {
        let n = self.degree;
        n >= 2 && self.transitivity_grade(2) >= 2 && self.order() == BigUint::from(n * (n - 1))
    }

    /// Whether `x^-1 k x` lies in this group for every generator `k`.
    pub fn is_normalized_by(&self, x: &Permutation) -> Result<bool> {
        self.check_degree(x)?;
        for k in &self.generators {
            if !self.chain().contains(&k.conjugate_by(x)) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `<generators ∪ extra>`.
    pub fn join(&self, extra: &[Permutation]) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        PermGroup::new(gens)
    }

    /// Like [`join`](Self::join), for a join known to lie inside `ambient`.
    pub fn join_within(&self, extra: &[Permutation], ambient: &PermGroup) -> Result<PermGroup> {
        let joined = self.join(extra)?;
        joined.require_subgroup_of(ambient)?;
        Ok(joined.with_order_bound(ambient.order()))
    }

    /// Visits every element. Errors when the order exceeds `cap`.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, cap: u64, f: F) -> Result<()> {
        let order = self.order();
        if order > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "group order".into(),
                size: order.to_string(),
                cap,
            });
        }
        self.chain().for_each_element(f);
        Ok(())
    }

    /// `Nor_self(k)` by enumerating this group and keeping the elements
    /// that normalize `k`.
    pub fn normalizer_bruteforce(&self, k: &PermGroup, cap: u64) -> Result<PermGroup> {
        self.check_degree(&k.generators[0])?;
        let mut found: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(self.degree);
        let mut failure = None;
        self.for_each_element(cap, |x| {
            if failure.is_some() || current.chain().contains(x) {
                return;
            }
            match k.is_normalized_by(x) {
                Ok(true) => {
                    found.push(x.clone());
                    current = PermGroup::new(found.clone()).expect("nonempty");
                }
                Ok(false) => {}
                Err(e) => failure = Some(e),
            }
        })?;
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(current)
    }

    /// `self ∩ Alt(domain)`.
    pub fn even_subgroup(&self) -> PermGroup {
        let Some(odd) = self.generators.iter().find(|g| !g.is_even()) else {
            return self.clone();
        };
        // Schreier generators for the transversal {1, odd} of the sign kernel.
        let odd_inv = odd.inverse();
        let mut gens = Vec::new();
        for s in &self.generators {
            for t_odd in [false, true] {
                let mut y = if t_odd {
                    odd.mul_unchecked(s)
                } else {
                    s.clone()
                };
                if !y.is_even() {
                    y = y.mul_unchecked(&odd_inv);
                }
                if !y.is_identity() && !gens.contains(&y) {
                    gens.push(y);
                }
            }
        }
        if gens.is_empty() {
            return PermGroup::trivial(self.degree);
        }
        let half = self.order() / 2u32;
        PermGroup::new(gens)
            .expect("nonempty")
            .with_order_bound(half)
    }

    /// Group generated by the Schreier generators of the stabilizer of
    /// `start` under an arbitrary action, with its exact order attached.
    pub fn stabilizer_in_action<P, F>(&self, start: P, act: F) -> (PermGroup, usize)
    where
        P: Clone + Eq + std::hash::Hash,
        F: Fn(&P, &Permutation) -> P,
    {
        let orbit = OrbitTransversal::compute(self.degree, &self.generators, start, &act);
        let gens = orbit.schreier_generators(&self.generators, &act);
        let order = self.order() / BigUint::from(orbit.len());
        let group = if gens.is_empty() {
            PermGroup::trivial(self.degree)
        } else {
            PermGroup::new(gens).expect("nonempty").with_order_bound(order)
        };
        (group, orbit.len())
    }
}

/// Whether `x` normalizes `k`.
pub fn normalizes(x: &Permutation, k: &PermGroup) -> Result<bool> {
    k.is_normalized_by(x)
}

pub(crate) fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let mut orbit = orbit_points(gens, start, |&p, g| g.apply(p));
        for &p in &orbit {
            seen[p] = true;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// `n!`
pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `n (n-1) ... (n-k+1)`
pub fn falling_factorial(n: usize, k: usize) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i))
}
