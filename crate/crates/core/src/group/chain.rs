//! Stabilizer chains (bases and strong generating sets).
//!
//! A chain for `G` is a base `b_1, …, b_k` together with strong generators
//! such that level `i` holds the generators fixing `b_1, …, b_{i-1}`, the
//! basic orbit `b_i^{G^(i)}` and one transversal element per orbit point.
//! `|G|` is the product of the basic orbit lengths.
//!
//! Construction is Schreier–Sims with a pseudo-random prefill: a product
//! replacement generator driven by a fixed-seed ChaCha stream proposes
//! elements, whose sift residues become strong generators. The prefill is
//! only a heuristic. The chain is declared complete either because its order
//! reached a proven upper bound (a lower bound meeting an upper bound), or
//! because every Schreier generator at every level sifts to the identity.
//! Both routes are deterministic, so identical inputs give identical chains.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::perm::Permutation;

const NONE: u32 = u32::MAX;
const PREFILL_SEED: u64 = 0x5eed_c4a1_2b0f_7e11;
/// Consecutive trivial sifts after which the prefill stops.
const PREFILL_PATIENCE: usize = 12;

#[derive(Clone, Debug)]
pub(crate) struct Level {
    base_point: usize,
    gens: Vec<usize>,
    orbit: Vec<u32>,
    position: Vec<u32>,
    /// `inv_reps[k]` maps `orbit[k]` back to the base point.
    inv_reps: Vec<Permutation>,
    checked: (usize, usize),
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Level {
        let mut position = vec![NONE; degree];
        position[base_point] = 0;
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point as u32],
            position,
            inv_reps: vec![Permutation::identity(degree)],
            checked: (0, 0),
        }
    }
}

/// A complete base and strong generating set.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    strong: Vec<Permutation>,
    strong_inv: Vec<Permutation>,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Builds a chain for `<gens>`.
    ///
    /// The base starts with `preferred_base` (duplicates dropped) and is
    /// extended by the least point moved by each new strong generator.
    /// `order_bound`, when given, must be a proven upper bound on the group
    /// order; reaching it ends construction early.
    pub fn build(
        degree: usize,
        gens: &[Permutation],
        preferred_base: &[usize],
        order_bound: Option<&BigUint>,
    ) -> StabilizerChain {
        let mut chain = StabilizerChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
        };
        for &b in preferred_base {
            if !chain.levels.iter().any(|l| l.base_point == b) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        let mut input: Vec<&Permutation> = Vec::new();
        for g in gens {
            debug_assert_eq!(g.degree(), degree);
            if !g.is_identity() && !input.contains(&g) {
                input.push(g);
            }
        }
        if input.is_empty() {
            return chain;
        }

        let bound = effective_bound(degree, &input, order_bound);
        for g in &input {
            let (residue, _) = chain.sift_from(g, 0);
            if !residue.is_identity() {
                chain.add_strong(residue);
            }
        }
        if chain.order() >= bound {
            return chain;
        }

        let owned: Vec<Permutation> = input.iter().map(|g| (*g).clone()).collect();
        let mut source = ProductReplacement::new(&owned);
        let mut quiet = 0;
        while quiet < PREFILL_PATIENCE {
            let r = source.next_element();
            let (residue, _) = chain.sift_from(&r, 0);
            if residue.is_identity() {
                quiet += 1;
            } else {
                quiet = 0;
                chain.add_strong(residue);
                if chain.order() >= bound {
                    return chain;
                }
            }
        }

        chain.complete(&bound);
        chain
    }

    /// Deterministic Schreier–Sims pass: checks every Schreier generator,
    /// adding nontrivial residues, until all levels are closed.
    fn complete(&mut self, bound: &BigUint) {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let lvl = i as usize;
            let (co, cg) = self.levels[lvl].checked;
            let olen = self.levels[lvl].orbit.len();
            let glen = self.levels[lvl].gens.len();
            for k in 0..olen {
                for gi in 0..glen {
                    if k < co && gi < cg {
                        continue;
                    }
                    let y = self.schreier_generator(lvl, k, gi);
                    if y.is_identity() {
                        continue;
                    }
                    let (residue, _) = self.sift_from(&y, lvl + 1);
                    if !residue.is_identity() {
                        let j = self.add_strong(residue);
                        if &self.order() >= bound {
                            return;
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            self.levels[lvl].checked = (olen, glen);
            i -= 1;
        }
    }

    /// `u_beta * s * u_{beta^s}^-1` for `beta = orbit[k]`, `s = gens[gi]`.
    fn schreier_generator(&self, lvl: usize, k: usize, gi: usize) -> Permutation {
        let level = &self.levels[lvl];
        let s = &self.strong[level.gens[gi]];
        let beta = level.orbit[k] as usize;
        let gamma = s.apply(beta);
        let inv_beta = level.inv_reps[k].images();
        let inv_gamma = level.inv_reps[level.position[gamma] as usize].images();
        let simgs = s.images();
        let mut out = vec![0u32; self.degree];
        // u_beta maps inv_beta[q] to q.
        for q in 0..self.degree {
            out[inv_beta[q] as usize] = inv_gamma[simgs[q] as usize];
        }
        Permutation::from_raw(out)
    }

    /// Adds a strong generator that moves some point; returns the index of
    /// the deepest level it joined.
    fn add_strong(&mut self, g: Permutation) -> usize {
        let j = match self
            .levels
            .iter()
            .position(|l| g.apply(l.base_point) != l.base_point)
        {
            Some(j) => j,
            None => {
                let b = g.first_moved().expect("strong generator must move a point");
                self.levels.push(Level::new(self.degree, b));
                self.levels.len() - 1
            }
        };
        let id = self.strong.len();
        self.strong_inv.push(g.inverse());
        self.strong.push(g);
        for lvl in 0..=j {
            self.extend_level(lvl, id);
        }
        j
    }

    fn extend_level(&mut self, lvl: usize, gen_id: usize) {
        let max_orbit = self.degree - lvl;
        let level = &mut self.levels[lvl];
        level.gens.push(gen_id);
        if level.orbit.len() >= max_orbit {
            return;
        }
        let old = level.orbit.len();
        for k in 0..old {
            try_extend(level, &self.strong, &self.strong_inv, k, gen_id);
        }
        let mut k = old;
        while k < level.orbit.len() {
            for gi in 0..level.gens.len() {
                let gid = level.gens[gi];
                try_extend(level, &self.strong, &self.strong_inv, k, gid);
            }
            k += 1;
        }
    }

    /// Sifts `x` through levels `start..`; returns the residue and the index
    /// of the level where sifting stopped (`levels.len()` if it passed all).
    pub(crate) fn sift_from(&self, x: &Permutation, start: usize) -> (Permutation, usize) {
        let mut y: Vec<u32> = x.images().to_vec();
        for (i, level) in self.levels.iter().enumerate().skip(start) {
            let beta = y[level.base_point];
            let k = level.position[beta as usize];
            if k == NONE {
                return (Permutation::from_raw(y), i);
            }
            if k != 0 {
                let inv = level.inv_reps[k as usize].images();
                for v in y.iter_mut() {
                    *v = inv[*v as usize];
                }
            }
        }
        (Permutation::from_raw(y), self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn basic_orbit(&self, level: usize) -> Vec<usize> {
        self.levels[level].orbit.iter().map(|&x| x as usize).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Strong generators fixing the first `level` base points.
    pub fn level_generators(&self, level: usize) -> Vec<Permutation> {
        match self.levels.get(level) {
            Some(l) => l.gens.iter().map(|&g| self.strong[g].clone()).collect(),
            None => Vec::new(),
        }
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Order of the pointwise stabilizer of the first `k` base points.
    pub fn order_from(&self, k: usize) -> BigUint {
        self.levels
            .iter()
            .skip(k)
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Sift residue of `x` through the whole chain.
    pub fn sift(&self, x: &Permutation) -> Permutation {
        self.sift_from(x, 0).0
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        x.degree() == self.degree && self.sift(x).is_identity()
    }

    /// Transversal element of `level` mapping the base point to `point`.
    pub fn transversal_element(&self, level: usize, point: usize) -> Option<Permutation> {
        let l = &self.levels[level];
        match l.position[point] {
            NONE => None,
            k => Some(l.inv_reps[k as usize].inverse()),
        }
    }

    /// The chain of the pointwise stabilizer of the first `k` base points.
    pub fn tail(&self, k: usize) -> StabilizerChain {
        let Some(first) = self.levels.get(k) else {
            return StabilizerChain {
                degree: self.degree,
                strong: Vec::new(),
                strong_inv: Vec::new(),
                levels: Vec::new(),
            };
        };
        let kept: Vec<usize> = first.gens.clone();
        let mut remap = vec![usize::MAX; self.strong.len()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let levels = self.levels[k..]
            .iter()
            .map(|l| {
                let mut l = l.clone();
                l.gens = l.gens.iter().map(|&g| remap[g]).collect();
                l.checked = (l.orbit.len(), l.gens.len());
                l
            })
            .collect();
        StabilizerChain {
            degree: self.degree,
            strong: kept.iter().map(|&g| self.strong[g].clone()).collect(),
            strong_inv: kept.iter().map(|&g| self.strong_inv[g].clone()).collect(),
            levels,
        }
    }

    /// Canonical representative of the right coset `K x`, where `K` is the
    /// group of this chain: the element of `K x` whose sequence of base
    /// images is lexicographically least, found by greedy descent.
    pub fn canonical_coset_rep(&self, x: &Permutation) -> Permutation {
        let mut y: Vec<u32> = x.images().to_vec();
        let mut next = vec![0u32; self.degree];
        for level in &self.levels {
            let mut best = 0usize;
            let mut best_img = u32::MAX;
            for (k, &beta) in level.orbit.iter().enumerate() {
                let img = y[beta as usize];
                if img < best_img {
                    best_img = img;
                    best = k;
                }
            }
            if best != 0 {
                // y <- u_beta * y, with u_beta mapping inv[q] to q.
                let inv = level.inv_reps[best].images();
                for q in 0..self.degree {
                    next[inv[q] as usize] = y[q];
                }
                std::mem::swap(&mut y, &mut next);
            }
        }
        Permutation::from_raw(y)
    }

    /// Calls `f` on every group element exactly once, in a fixed order.
    pub fn for_each_element<F: FnMut(&Permutation)>(&self, mut f: F) {
        // Elements are enumerated as products of inverse transversal
        // elements, one per level, which covers the group bijectively.
        let depth = self.levels.len();
        let mut stack: Vec<Permutation> = vec![Permutation::identity(self.degree)];
        let mut idx = vec![0usize; depth];
        if depth == 0 {
            f(&stack[0]);
            return;
        }
        loop {
            while stack.len() <= depth {
                let lvl = stack.len() - 1;
                let next = stack[lvl].mul_unchecked(&self.levels[lvl].inv_reps[idx[lvl]]);
                stack.push(next);
            }
            f(&stack[depth]);
            // advance the mixed-radix counter from the deepest level
            let mut lvl = depth;
            loop {
                if lvl == 0 {
                    return;
                }
                lvl -= 1;
                stack.pop();
                idx[lvl] += 1;
                if idx[lvl] < self.levels[lvl].orbit.len() {
                    break;
                }
                idx[lvl] = 0;
            }
        }
    }
}

fn try_extend(
    level: &mut Level,
    strong: &[Permutation],
    strong_inv: &[Permutation],
    k: usize,
    gen_id: usize,
) {
    let beta = level.orbit[k] as usize;
    let gamma = strong[gen_id].apply(beta);
    if level.position[gamma] != NONE {
        return;
    }
    // inverse rep for gamma: s^-1 followed by inv_rep(beta)
    let rep = strong_inv[gen_id].mul_unchecked(&level.inv_reps[k]);
    level.position[gamma] = level.orbit.len() as u32;
    level.orbit.push(gamma as u32);
    level.inv_reps.push(rep);
}

/// `min(supplied, m!)` where `m` is the number of moved points, halved when
/// every generator is even.
fn effective_bound(degree: usize, gens: &[&Permutation], supplied: Option<&BigUint>) -> BigUint {
    let moved = (0..degree)
        .filter(|&p| gens.iter().any(|g| !g.fixes(p)))
        .count();
    let mut bound = (2..=moved).fold(BigUint::one(), |acc, k| acc * BigUint::from(k));
    if moved >= 2 && gens.iter().all(|g| g.is_even()) {
        bound /= 2u32;
    }
    match supplied {
        Some(s) if s < &bound => s.clone(),
        _ => bound,
    }
}

/// Product replacement ("rattle") source of pseudo-random group elements.
struct ProductReplacement {
    slots: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    fn new(gens: &[Permutation]) -> ProductReplacement {
        let n = gens.len().max(10);
        let slots = (0..n).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = ProductReplacement {
            slots,
            acc: Permutation::identity(gens[0].degree()),
            rng: ChaCha8Rng::seed_from_u64(PREFILL_SEED),
        };
        for _ in 0..50 {
            pr.next_element();
        }
        pr
    }

    fn next_element(&mut self) -> Permutation {
        let n = self.slots.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen_bool(0.5) {
            self.slots[j].clone()
        } else {
            self.slots[j].inverse()
        };
        self.slots[i] = if self.rng.gen_bool(0.5) {
            self.slots[i].mul_unchecked(&other)
        } else {
            other.mul_unchecked(&self.slots[i])
        };
        self.acc = self.acc.mul_unchecked(&self.slots[i]);
        self.acc.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let c: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    #[test]
    fn symmetric_group_order() {
        let gens = [cyc(4, &[&[0, 1, 2, 3]]), cyc(4, &[&[0, 1]])];
        let chain = StabilizerChain::build(4, &gens, &[], None);
        assert_eq!(chain.order(), BigUint::from(24u32));
        assert!(chain.contains(&cyc(4, &[&[1, 3]])));
    }

    #[test]
    fn preferred_base_is_a_prefix() {
        let gens = [cyc(5, &[&[0, 1, 2, 3, 4]]), cyc(5, &[&[0, 1]])];
        let chain = StabilizerChain::build(5, &gens, &[3, 1, 3], None);
        assert_eq!(&chain.base()[..2], &[3, 1]);
        assert_eq!(chain.order(), BigUint::from(120u32));
        assert_eq!(chain.order_from(2), BigUint::from(6u32));
    }

    #[test]
    fn fixed_preferred_points_give_trivial_levels() {
        let gens = [cyc(4, &[&[0, 1]])];
        let chain = StabilizerChain::build(4, &gens, &[3], None);
        assert_eq!(chain.base()[0], 3);
        assert_eq!(chain.basic_orbit_lengths()[0], 1);
        assert_eq!(chain.order(), BigUint::from(2u32));
    }

    #[test]
    fn trivial_group() {
        let chain = StabilizerChain::build(3, &[Permutation::identity(3)], &[], None);
        assert_eq!(chain.order(), BigUint::one());
        assert_eq!(chain.depth(), 0);
        let mut seen = 0;
        chain.for_each_element(|g| {
            assert!(g.is_identity());
            seen += 1;
        });
        assert_eq!(seen, 1);
    }

    #[test]
    fn element_enumeration_is_exhaustive_and_distinct() {
        let gens = [cyc(5, &[&[0, 1, 2]]), cyc(5, &[&[2, 3, 4]])];
        let chain = StabilizerChain::build(5, &gens, &[], None);
        assert_eq!(chain.order(), BigUint::from(60u32));
        let mut all = std::collections::HashSet::new();
        chain.for_each_element(|g| {
            assert!(g.is_even());
            all.insert(g.clone());
        });
        assert_eq!(all.len(), 60);
    }

    #[test]
    fn canonical_coset_rep_is_class_invariant() {
        // K = S_3 on {0,1,2} inside S_4: cosets are determined by the preimage of 3
        let k = StabilizerChain::build(
            4,
            &[cyc(4, &[&[0, 1, 2]]), cyc(4, &[&[0, 1]])],
            &[],
            None,
        );
        let x = cyc(4, &[&[0, 3], &[1, 2]]);
        let y = &cyc(4, &[&[1, 2]]) * &x;
        assert_eq!(k.canonical_coset_rep(&x), k.canonical_coset_rep(&y));
        let z = cyc(4, &[&[1, 3]]);
        assert_ne!(k.canonical_coset_rep(&x), k.canonical_coset_rep(&z));
        // the canonical element stays in the coset
        let c = k.canonical_coset_rep(&x);
        assert!(k.contains(&(&c * &x.inverse())));
    }

    #[test]
    fn tail_is_stabilizer_chain() {
        let gens = [cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[0, 1]])];
        let chain = StabilizerChain::build(6, &gens, &[0, 1], None);
        let tail = chain.tail(2);
        assert_eq!(tail.order(), BigUint::from(24u32));
        for g in tail.strong_generators() {
            assert!(g.fixes(0) && g.fixes(1));
        }
        assert!(tail.contains(&cyc(6, &[&[2, 3]])));
        assert!(!tail.contains(&cyc(6, &[&[0, 2]])));
    }
}
