use std::collections::HashMap;

use num_bigint::BigUint;

use super::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// The right cosets `[G:K]` with `G` acting by right multiplication.
///
/// Each coset is stored by its canonical representative (see
/// [`StabilizerChain::canonical_coset_rep`](super::StabilizerChain::canonical_coset_rep)).
/// Coset 0 is `K` itself; the rest are numbered in breadth-first order
/// over the generators of `G`.
#[derive(Clone, Debug)]
pub struct CosetSpace {
    ambient: PermGroup,
    subgroup: PermGroup,
    reps: Vec<Permutation>,
    index_of: HashMap<Vec<u32>, usize>,
    generator_images: Vec<Permutation>,
}

impl CosetSpace {
    pub fn new(ambient: &PermGroup, subgroup: &PermGroup, cap: u64) -> Result<CosetSpace> {
        if ambient.degree() != subgroup.degree() {
            return Err(Error::DegreeMismatch {
                left: ambient.degree(),
                right: subgroup.degree(),
            });
        }
        subgroup.require_subgroup_of(ambient)?;
        let index = ambient.order() / subgroup.order();
        if index > BigUint::from(cap) {
            return Err(Error::CapExceeded {
                what: "coset index".into(),
                size: index.to_string(),
                cap,
            });
        }
        let chain = subgroup.chain();
        let id = Permutation::identity(ambient.degree());
        let first = chain.canonical_coset_rep(&id);
        let mut index_of = HashMap::new();
        index_of.insert(first.images().to_vec(), 0usize);
        let mut reps = vec![first];
        let gens = ambient.generators();
        let mut images: Vec<Vec<u32>> = vec![Vec::new(); gens.len()];
        let mut k = 0;
        while k < reps.len() {
            for (j, g) in gens.iter().enumerate() {
                let c = chain.canonical_coset_rep(&reps[k].mul_unchecked(g));
                let key = c.images().to_vec();
                let target = match index_of.get(&key) {
                    Some(&t) => t,
                    None => {
                        let t = reps.len();
                        index_of.insert(key, t);
                        reps.push(c);
                        t
                    }
                };
                images[j].push(target as u32);
            }
            k += 1;
        }
        let generator_images = images.into_iter().map(Permutation::from_raw).collect();
        Ok(CosetSpace {
            ambient: ambient.clone(),
            subgroup: subgroup.clone(),
            reps,
            index_of,
            generator_images,
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn ambient(&self) -> &PermGroup {
        &self.ambient
    }

    pub fn subgroup(&self) -> &PermGroup {
        &self.subgroup
    }

    /// Canonical representatives, indexed by coset number.
    pub fn reps(&self) -> &[Permutation] {
        &self.reps
    }

    /// The permutations of coset indices induced by the generators of `G`.
    pub fn generator_images(&self) -> &[Permutation] {
        &self.generator_images
    }

    /// Index of the coset `K x`, if `x` lies in the ambient group.
    pub fn index_of_element(&self, x: &Permutation) -> Option<usize> {
        let c = self.subgroup.chain().canonical_coset_rep(x);
        self.index_of.get(c.images()).copied()
    }

    /// Index of `K rep_i x`.
    pub fn act(&self, i: usize, x: &Permutation) -> usize {
        self.index_of_element(&self.reps[i].mul_unchecked(x))
            .expect("element of the ambient group")
    }

    /// Permutation of coset indices induced by `x`.
    pub fn induced_permutation(&self, x: &Permutation) -> Result<Permutation> {
        if x.degree() != self.ambient.degree() {
            return Err(Error::DegreeMismatch {
                left: self.ambient.degree(),
                right: x.degree(),
            });
        }
        if !self.ambient.contains(x)? {
            return Err(Error::InvalidArgument(
                "element does not lie in the ambient group".into(),
            ));
        }
        let images = (0..self.len()).map(|i| self.act(i, x) as u32).collect();
        Ok(Permutation::from_raw(images))
    }

    /// Action of `G` on the cosets, as a group of degree `|G:K|`.
    pub fn induced_action(&self) -> PermGroup {
        let mut group = PermGroup::new(self.generator_images.clone())
            .expect("ambient group has generators")
            .with_order_bound(self.ambient.order());
        if let Some(name) = self.ambient.name() {
            group = group.with_name(format!("{name} on cosets"));
        }
        group
    }

    /// Action of a subgroup `h <= G` on the cosets.
    pub fn induced_group(&self, h: &PermGroup) -> Result<PermGroup> {
        let gens = h
            .generators()
            .iter()
            .map(|x| self.induced_permutation(x))
            .collect::<Result<Vec<_>>>()?;
        let mut group = PermGroup::new(gens)?.with_order_bound(h.order());
        if let Some(name) = h.name() {
            group = group.with_name(format!("{name} on cosets"));
        }
        Ok(group)
    }
}
