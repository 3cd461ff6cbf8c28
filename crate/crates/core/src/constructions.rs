//! Builders for concrete groups and graphs.
//!
//! Field-based groups act on `{0, …, p^d - 1}` through the element
//! encoding of [`FiniteField`]. The projective line over `F_p` is
//! `{0, …, p - 1}` with `∞ = p`.

use std::collections::HashMap;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{prime_power, smallest_primitive_root, FieldDescriptor, FieldElement, FiniteField};
use crate::graph::{Graph, GroupAction};
use crate::group::{factorial, CosetSpace, OrbitTransversal, PermGroup};
use crate::perm::Permutation;
use crate::util::big_string;

/// `Sym(n)` generated by an `n`-cycle and `(0 1)`.
pub fn build_sym(n: usize) -> PermGroup {
    let name = format!("Sym({n})");
    if n < 2 {
        return PermGroup::trivial(n.max(1)).with_name(name);
    }
    let cycle = Permutation::from_fn(n, |i| (i + 1) % n).expect("rotation");
    let swap = Permutation::from_cycles(n, &[vec![0, 1]]).expect("transposition");
    let gens = if n == 2 { vec![swap] } else { vec![cycle, swap] };
    PermGroup::new(gens).expect("nonempty").with_name(name)
}

/// `Alt(n)` generated by the 3-cycles `(i i+1 i+2)`.
pub fn build_alt(n: usize) -> PermGroup {
    let name = format!("Alt({n})");
    if n < 3 {
        return PermGroup::trivial(n.max(1)).with_name(name);
    }
    let gens = (0..n - 2)
        .map(|i| Permutation::from_cycles(n, &[vec![i, i + 1, i + 2]]).expect("3-cycle"))
        .collect();
    PermGroup::new(gens).expect("nonempty").with_name(name)
}

/// The permutation of field elements induced by `f`.
pub fn field_permutation<F>(field: &FiniteField, f: F) -> Permutation
where
    F: Fn(&FieldElement) -> FieldElement,
{
    let images = field.elements().map(|v| field.index(&f(&v)) as usize);
    Permutation::from_images(images).expect("field map must be a bijection")
}

/// `v ↦ v + 1`.
pub fn translation(field: &FiniteField) -> Permutation {
    let one = field.one();
    field_permutation(field, |v| field.add(v, &one))
}

/// `v ↦ a v` for nonzero `a`.
pub fn scaling(field: &FiniteField, a: &FieldElement) -> Permutation {
    field_permutation(field, |v| field.mul(a, v))
}

/// `v ↦ v^(p^e)`.
pub fn frobenius(field: &FiniteField, e: u32) -> Permutation {
    field_permutation(field, |v| field.frobenius_power(v, e))
}

/// `0 ↦ 0`, `v ↦ v^-1`.
pub fn inversion(field: &FiniteField) -> Permutation {
    field_permutation(field, |v| field.inv(v).unwrap_or_else(|_| field.zero()))
}

/// `AGL_1(F)`, generated by `v ↦ v + 1` and `v ↦ ωv` with `ω` primitive.
pub fn build_agl1(field: &FiniteField) -> PermGroup {
    let omega = field.primitive_element();
    let mut gens = vec![translation(field)];
    let s = scaling(field, &omega);
    if !s.is_identity() {
        gens.push(s);
    }
    PermGroup::new(gens)
        .expect("nonempty")
        .with_name(format!("AGL1({})", field.size()))
}

/// `PGL_2(p)` on the projective line, generated by `z ↦ z + 1`,
/// `z ↦ cz` with `c` the smallest primitive root, and `z ↦ 1/z`.
pub fn build_pgl2(p: u64) -> Result<PermGroup> {
    let c = smallest_primitive_root(p)?;
    let n = p as usize + 1;
    let inf = p as usize;
    let shift = Permutation::from_fn(n, |z| if z == inf { z } else { (z + 1) % inf })?;
    let scale = Permutation::from_fn(n, |z| {
        if z == inf {
            z
        } else {
            (z as u64 * c % p) as usize
        }
    })?;
    let gens: Vec<Permutation> = [shift, scale, projective_inversion(p)]
        .into_iter()
        .filter(|g| !g.is_identity())
        .collect();
    Ok(PermGroup::new(gens)?.with_name(format!("PGL2({p})")))
}

/// `z ↦ 1/z` on the projective line over `F_p`, swapping `0` and `∞ = p`.
pub fn projective_inversion(p: u64) -> Permutation {
    let inf = p as usize;
    Permutation::from_fn(inf + 1, |z| match z {
        0 => inf,
        z if z == inf => 0,
        z => crate::field::pow_mod(z as u64, p - 2, p) as usize,
    })
    .expect("inversion is a bijection")
}

/// The triple `(K, g, Sym(F_{q^2}))` for `q ≡ 3 (mod 4)`: `K` is generated
/// by translations, a primitive scaling `ω` and the field automorphism
/// `τ: v ↦ v^q`; `g` fixes 0 and inverts every nonzero element.
#[derive(Clone, Debug)]
pub struct ConstructionTriple {
    pub q: u64,
    pub p: u64,
    pub f: u32,
    pub field: FiniteField,
    pub k: PermGroup,
    pub g: Permutation,
    pub omega: Permutation,
    pub tau: Permutation,
    pub translation: Permutation,
}

/// JSON form of a [`ConstructionTriple`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstructionJson {
    pub q: u64,
    pub degree: usize,
    pub ambient: String,
    pub field: FieldDescriptor,
    #[serde(with = "big_string")]
    pub k_order: BigUint,
    pub k_generators: Vec<Permutation>,
    pub g: Permutation,
    pub omega: Permutation,
    pub tau: Permutation,
    pub translation: Permutation,
}

impl ConstructionTriple {
    pub fn degree(&self) -> usize {
        self.g.degree()
    }

    pub fn ambient_name(&self) -> String {
        format!("Sym({})", self.degree())
    }

    /// The full symmetric group on the field.
    pub fn ambient(&self) -> PermGroup {
        build_sym(self.degree())
    }

    /// `2 q^2 (q^2 - 1)`.
    pub fn expected_k_order(&self) -> BigUint {
        let n = BigUint::from(self.degree());
        BigUint::from(2u32) * &n * (&n - 1u32)
    }

    pub fn to_json(&self) -> ConstructionJson {
        ConstructionJson {
            q: self.q,
            degree: self.degree(),
            ambient: self.ambient_name(),
            field: self.field.descriptor(),
            k_order: self.k.order(),
            k_generators: self.k.generators().to_vec(),
            g: self.g.clone(),
            omega: self.omega.clone(),
            tau: self.tau.clone(),
            translation: self.translation.clone(),
        }
    }
}

pub fn build_construction(q: u64) -> Result<ConstructionTriple> {
    if q % 4 != 3 {
        return Err(Error::Hypothesis(format!("q ≡ 3 (mod 4) required, got q = {q}")));
    }
    let (p, f) = prime_power(q)
        .ok_or_else(|| Error::Hypothesis(format!("q must be a prime power, got q = {q}")))?;
    let field = FiniteField::new(p, 2 * f)?;
    let omega_elt = field.primitive_element();
    let translation = translation(&field);
    let omega = scaling(&field, &omega_elt);
    let tau = frobenius(&field, f);
    let g = inversion(&field);
    let k = PermGroup::new(vec![translation.clone(), omega.clone(), tau.clone()])?
        .with_name(format!("AGL1({}):<tau>", q * q));
    Ok(ConstructionTriple {
        q,
        p,
        f,
        field,
        k,
        g,
        omega,
        tau,
        translation,
    })
}

/// `K ∩ K^g`, found as the stabilizer in `K` of the coset `Kg` under right
/// multiplication, together with a right transversal: `transversal[i]`
/// carries `Kg` to the `i`-th coset of its `K`-orbit.
#[derive(Clone, Debug)]
pub struct ConjugateIntersection {
    pub group: PermGroup,
    pub transversal: Vec<Permutation>,
}

impl ConjugateIntersection {
    /// `|K : K ∩ K^g|`, the valency of the coset graph.
    pub fn index(&self) -> usize {
        self.transversal.len()
    }
}

pub fn conjugate_intersection(k: &PermGroup, g: &Permutation) -> Result<ConjugateIntersection> {
    if g.degree() != k.degree() {
        return Err(Error::DegreeMismatch {
            left: k.degree(),
            right: g.degree(),
        });
    }
    let chain = k.chain();
    let act = |c: &Permutation, x: &Permutation| chain.canonical_coset_rep(&c.mul_unchecked(x));
    let start = chain.canonical_coset_rep(g);
    let orbit = OrbitTransversal::compute(k.degree(), k.generators(), start, act);
    let gens = orbit.schreier_generators(k.generators(), act);
    let order = k.order() / BigUint::from(orbit.len());
    let group = if gens.is_empty() {
        PermGroup::trivial(k.degree())
    } else {
        PermGroup::new(gens)?.with_order_bound(order)
    };
    Ok(ConjugateIntersection {
        group,
        transversal: orbit.transversal,
    })
}

/// The coset graph `Cos(G, K, g)`: cosets `Kx`, `Ky` adjacent when
/// `y x^-1 ∈ KgK`. Returned with the action of `G` on the cosets.
pub fn coset_graph(
    g_group: &PermGroup,
    k: &PermGroup,
    g: &Permutation,
    cap: u64,
) -> Result<(GroupAction, CosetSpace)> {
    if g.degree() != g_group.degree() {
        return Err(Error::DegreeMismatch {
            left: g_group.degree(),
            right: g.degree(),
        });
    }
    if !g_group.contains(g)? {
        return Err(Error::InvalidArgument("g does not lie in G".into()));
    }
    if k.contains(g)? {
        return Err(Error::Hypothesis("g lies in K".into()));
    }
    if !k.contains(&g.mul_unchecked(g))? {
        return Err(Error::Hypothesis("g^2 does not lie in K, so KgK is not inverse-closed".into()));
    }
    let space = CosetSpace::new(g_group, k, cap)?;
    let meet = conjugate_intersection(k, g)?;
    let steps: Vec<Permutation> = meet.transversal.iter().map(|t| g.mul_unchecked(t)).collect();
    let adjacency: Vec<Vec<u32>> = space
        .reps()
        .iter()
        .map(|x| {
            steps
                .iter()
                .map(|s| {
                    space
                        .index_of_element(&s.mul_unchecked(x))
                        .expect("coset of G") as u32
                })
                .collect()
        })
        .collect();
    let graph = Graph::from_adjacency(adjacency);
    let action = GroupAction::new(space.induced_action(), graph)?;
    Ok((action, space))
}

/// Elements of `H` in chain enumeration order; vertex `i` of a Cayley
/// graph on `H` is `elements[i]`.
pub fn enumerate_elements(h: &PermGroup, cap: u64) -> Result<Vec<Permutation>> {
    let mut out = Vec::new();
    h.for_each_element(cap, |x| out.push(x.clone()))?;
    Ok(out)
}

/// `Cay(H, S)`: `x ~ y` iff `y x^-1 ∈ S`, with `H` acting by right
/// multiplication.
pub fn cayley_graph(h: &PermGroup, s: &[Permutation], cap: u64) -> Result<GroupAction> {
    if s.is_empty() {
        return Err(Error::InvalidArgument("connection set is empty".into()));
    }
    for x in s {
        if x.is_identity() {
            return Err(Error::InvalidArgument("connection set contains the identity".into()));
        }
        if !h.contains(x)? {
            return Err(Error::InvalidArgument(format!("{x} does not lie in H")));
        }
        if !s.contains(&x.inverse()) {
            return Err(Error::InvalidArgument(format!(
                "connection set is not inverse-closed: {x} has no inverse in it"
            )));
        }
    }
    let elements = enumerate_elements(h, cap)?;
    let index: HashMap<&Permutation, usize> =
        elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let adjacency = elements
        .iter()
        .map(|x| s.iter().map(|t| index[&t.mul_unchecked(x)] as u32).collect())
        .collect();
    let gens = h
        .generators()
        .iter()
        .map(|a| {
            Permutation::from_raw(
                elements
                    .iter()
                    .map(|x| index[&x.mul_unchecked(a)] as u32)
                    .collect(),
            )
        })
        .collect();
    let group = PermGroup::new(gens)?.with_order_bound(h.order());
    GroupAction::new(group, Graph::from_adjacency(adjacency))
}

/// The orbital graph with edge set `{α, β}^G`.
pub fn orbital_graph(g: &PermGroup, alpha: usize, beta: usize) -> Result<GroupAction> {
    if !g.is_self_paired(alpha, beta)? {
        return Err(Error::Hypothesis(format!(
            "orbital of ({alpha}, {beta}) is not self-paired: ({beta}, {alpha}) lies in another orbital"
        )));
    }
    let arcs = crate::group::orbit_points(g.generators(), (alpha, beta), |&(a, b), x| {
        (x.apply(a), x.apply(b))
    });
    let graph = Graph::from_edges(g.degree(), &arcs)?;
    GroupAction::new(g.clone(), graph)
}

/// A group acting on an explicit list of derived points.
#[derive(Clone, Debug)]
pub struct InducedAction<P> {
    pub group: PermGroup,
    pub points: Vec<P>,
}

fn induced_on<P, F>(g: &PermGroup, points: Vec<P>, act: F, label: &str) -> InducedAction<P>
where
    P: Clone + Eq + std::hash::Hash,
    F: Fn(&P, &Permutation) -> P,
{
    let index: HashMap<P, usize> = points.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let gens = g
        .generators()
        .iter()
        .map(|x| Permutation::from_raw(points.iter().map(|p| index[&act(p, x)] as u32).collect()))
        .collect();
    let mut group = PermGroup::new(gens)
        .expect("nonempty")
        .with_order_bound(g.order());
    if let Some(name) = g.name() {
        group = group.with_name(format!("{name} on {label}"));
    }
    InducedAction { group, points }
}

/// Action on ordered pairs of distinct points, pairs numbered lexicographically.
pub fn ordered_pairs_action(g: &PermGroup) -> InducedAction<(usize, usize)> {
    let n = g.degree();
    let points = (0..n)
        .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
        .collect();
    induced_on(g, points, |&(a, b), x| (x.apply(a), x.apply(b)), "ordered pairs")
}

/// Action on 2-subsets `{a, b}` (stored with `a < b`), numbered lexicographically.
pub fn two_subsets_action(g: &PermGroup) -> InducedAction<(usize, usize)> {
    let n = g.degree();
    let points = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    induced_on(
        g,
        points,
        |&(a, b), x| {
            let (u, v) = (x.apply(a), x.apply(b));
            (u.min(v), u.max(v))
        },
        "2-subsets",
    )
}

/// `(q^2)! / |K|`, the number of vertices of the construction graph.
pub fn construction_index(triple: &ConstructionTriple) -> BigUint {
    factorial(triple.degree()) / triple.k.order()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let c: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    #[test]
    fn named_group_orders() {
        assert_eq!(build_sym(4).order(), BigUint::from(24u32));
        assert_eq!(build_alt(9).order(), BigUint::from(181440u32));
        assert_eq!(build_alt(3).order(), BigUint::from(3u32));
        assert_eq!(build_sym(1).order(), BigUint::from(1u32));
        assert_eq!(build_sym(2).order(), BigUint::from(2u32));
    }

    #[test]
    fn agl1_orders() {
        let f9 = FiniteField::new(3, 2).unwrap();
        let g = build_agl1(&f9);
        assert_eq!(g.order(), BigUint::from(72u32));
        assert!(g.is_sharply_2transitive());
        assert_eq!(build_agl1(&FiniteField::new(3, 1).unwrap()).order(), BigUint::from(6u32));
        assert_eq!(build_agl1(&FiniteField::new(11, 1).unwrap()).order(), BigUint::from(110u32));
    }

    #[test]
    fn pgl2_orders() {
        let g = build_pgl2(5).unwrap();
        assert_eq!(g.order(), BigUint::from(120u32));
        assert_eq!(g.transitivity_grade(3), 3);
        assert_eq!(build_pgl2(11).unwrap().order(), BigUint::from(1320u32));
        assert!(matches!(build_pgl2(9), Err(Error::NotPrime(9))));
    }

    #[test]
    fn pgl2_inversion_mod_11() {
        let inv = projective_inversion(11);
        assert_eq!(inv.to_string(), "(0 11)(2 6)(3 4)(5 9)(7 8)");
    }

    #[test]
    fn construction_at_three() {
        let t = build_construction(3).unwrap();
        assert_eq!(t.degree(), 9);
        assert_eq!(t.k.order(), BigUint::from(144u32));
        assert_eq!(t.g.fixed_points(), vec![0, 1, 2]);
        assert!(t.g.mul_unchecked(&t.g).is_identity());
        assert_eq!(t.g.mul_unchecked(&t.tau), t.tau.mul_unchecked(&t.g));
        assert_eq!(t.omega.conjugate_by(&t.g), t.omega.inverse());
        assert!(matches!(build_construction(5), Err(Error::Hypothesis(_))));
        assert!(matches!(build_construction(15), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn small_coset_graphs() {
        let s3 = build_sym(3);
        let k = PermGroup::new(vec![cyc(3, &[&[0, 1]])]).unwrap();
        let (a, _) = coset_graph(&s3, &k, &cyc(3, &[&[1, 2]]), 100).unwrap();
        assert_eq!(a.graph(), &Graph::complete(3));
        assert!(matches!(
            coset_graph(&s3, &k, &cyc(3, &[&[0, 1]]), 100),
            Err(Error::Hypothesis(_))
        ));
        assert!(matches!(
            coset_graph(&s3, &k, &cyc(3, &[&[0, 1, 2]]), 100),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn pgl2_coset_graph_is_complete() {
        let g = build_pgl2(11).unwrap();
        let k = g.point_stabilizer(11).unwrap();
        let (a, _) = coset_graph(&g, &k, &projective_inversion(11), 100).unwrap();
        assert!(a.graph().is_complete());
        assert_eq!(a.graph().vertex_count(), 12);
    }

    #[test]
    fn cayley_graphs_of_c4() {
        let r = cyc(4, &[&[0, 1, 2, 3]]);
        let c4 = PermGroup::new(vec![r.clone()]).unwrap();
        let (r2, r3) = (r.pow(2), r.pow(3));
        let a = cayley_graph(&c4, &[r.clone(), r3.clone()], 100).unwrap();
        assert_eq!(a.graph().valency(), Some(2));
        assert!(a.graph().is_connected());
        assert_eq!(a.graph().edge_count(), 4);
        let a = cayley_graph(&c4, &[r.clone(), r2.clone(), r3.clone()], 100).unwrap();
        assert!(a.graph().is_complete());
        assert!(cayley_graph(&c4, &[r.clone()], 100).is_err());
        assert!(cayley_graph(&c4, &[r2.clone()], 100).is_ok());
    }

    #[test]
    fn orbital_graphs() {
        let s4 = build_sym(4);
        assert!(orbital_graph(&s4, 0, 1).unwrap().graph().is_complete());
        let c4 = PermGroup::new(vec![cyc(4, &[&[0, 1, 2, 3]])]).unwrap();
        let m = orbital_graph(&c4, 0, 2).unwrap();
        assert_eq!(m.graph().edges(), vec![(0, 2), (1, 3)]);
        assert!(matches!(orbital_graph(&c4, 0, 1), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn pair_actions() {
        let a5 = build_alt(5);
        let op = ordered_pairs_action(&a5);
        assert_eq!(op.group.degree(), 20);
        assert_eq!(op.group.order(), BigUint::from(60u32));
        let ts = two_subsets_action(&a5);
        assert_eq!(ts.group.degree(), 10);
        assert!(ts.group.is_transitive());
    }
}
