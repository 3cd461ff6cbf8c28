//! Certificate-producing checks.
//!
//! Every check yields [`CheckRecord`]s: an identifier, the mathematical
//! statement being tested, the inputs, the witness values (orders travel
//! as decimal strings) and a verdict. Records are emitted in a fixed order,
//! so reports are byte-for-byte reproducible.

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::constructions::{
    build_alt, build_construction, construction_index, conjugate_intersection, coset_graph,
    orbital_graph,
};
use crate::error::{Error, Result};
use crate::field::FieldDescriptor;
use crate::group::{factorial, PermGroup};
use crate::perm::Permutation;
use crate::util::{big_string, opt_big_string};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skipped,
    /// The hypotheses of the statement do not apply to the input.
    HypothesesUnmet,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check_id: String,
    pub claim: String,
    pub inputs: Value,
    pub witnesses: Value,
    pub verdict: Verdict,
    /// Diagnostic records never affect the overall outcome.
    pub mandatory: bool,
}

impl CheckRecord {
    fn new(id: &str, claim: &str, inputs: Value, witnesses: Value, ok: bool) -> CheckRecord {
        CheckRecord {
            check_id: id.into(),
            claim: claim.into(),
            inputs,
            witnesses,
            verdict: if ok { Verdict::Pass } else { Verdict::Fail },
            mandatory: true,
        }
    }

    pub fn passed(&self) -> bool {
        !self.mandatory || self.verdict == Verdict::Pass
    }
}

/// True when every mandatory record passes.
pub fn all_pass(records: &[CheckRecord]) -> bool {
    records.iter().all(CheckRecord::passed)
}

fn s(x: &BigUint) -> String {
    x.to_string()
}

/// Evaluation of the four coset-graph conditions for `(G, K, g)`:
/// `g ∉ K`, `g` normalizes `K ∩ K^g`, `g^2 ∈ K`, `<K, g> = G`, plus the
/// valency `d = |K : K ∩ K^g|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SabidussiCertificate {
    pub g_outside_k: bool,
    pub normalizes_ok: bool,
    pub square_in_k: bool,
    pub generates_g: bool,
    #[serde(with = "big_string")]
    pub valency: BigUint,
    #[serde(with = "big_string")]
    pub k_order: BigUint,
    #[serde(with = "big_string")]
    pub intersection_order: BigUint,
    #[serde(with = "big_string")]
    pub join_order: BigUint,
    #[serde(with = "big_string")]
    pub g_order: BigUint,
}

impl SabidussiCertificate {
    pub fn passed(&self) -> bool {
        self.g_outside_k && self.normalizes_ok && self.square_in_k && self.generates_g
    }

    pub fn to_record(&self, inputs: Value) -> CheckRecord {
        CheckRecord::new(
            "sabidussi",
            "g lies outside K, normalizes K ∩ K^g, squares into K, and together with K generates G; the coset graph then has valency |K : K ∩ K^g|",
            inputs,
            serde_json::to_value(self).expect("serializable"),
            self.passed(),
        )
    }
}

pub fn check_sabidussi(g_group: &PermGroup, k: &PermGroup, g: &Permutation) -> Result<SabidussiCertificate> {
    if g.degree() != g_group.degree() {
        return Err(Error::DegreeMismatch {
            left: g_group.degree(),
            right: g.degree(),
        });
    }
    k.require_subgroup_of(g_group)?;
    if !g_group.contains(g)? {
        return Err(Error::InvalidArgument("g does not lie in G".into()));
    }
    let meet = conjugate_intersection(k, g)?;
    let join = k.join_within(std::slice::from_ref(g), g_group)?;
    let k_order = k.order();
    let intersection_order = meet.group.order();
    let join_order = join.order();
    let g_order = g_group.order();
    Ok(SabidussiCertificate {
        g_outside_k: !k.contains(g)?,
        normalizes_ok: meet.group.is_normalized_by(g)?,
        square_in_k: k.contains(&g.mul_unchecked(g))?,
        generates_g: join_order == g_order,
        valency: &k_order / &intersection_order,
        k_order,
        intersection_order,
        join_order,
        g_order,
    })
}

/// Candidates passing [`check_sabidussi`], in input order.
pub fn sabidussi_search(
    g_group: &PermGroup,
    k: &PermGroup,
    candidates: &[Permutation],
    cap: u64,
) -> Result<Vec<(Permutation, SabidussiCertificate)>> {
    if candidates.len() as u64 > cap {
        return Err(Error::CapExceeded {
            what: "candidate list".into(),
            size: candidates.len().to_string(),
            cap,
        });
    }
    let mut out = Vec::new();
    for g in candidates {
        let cert = check_sabidussi(g_group, k, g)?;
        if cert.passed() {
            out.push((g.clone(), cert));
        }
    }
    Ok(out)
}

/// Properties of the explicit construction graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphWitness {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    pub valency: Option<usize>,
    #[serde(with = "big_string")]
    pub two_arcs: BigUint,
    pub sample_two_arc: Vec<usize>,
    #[serde(with = "big_string")]
    pub two_arc_orbit: BigUint,
    #[serde(with = "big_string")]
    pub even_group_order: BigUint,
    #[serde(with = "big_string")]
    pub regular_subgroup_order: BigUint,
    pub regular_subgroup_regular: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub q: u64,
    pub field: FieldDescriptor,
    pub checks: Vec<CheckRecord>,
    pub graph: Option<GraphWitness>,
    pub graph_skipped: Option<String>,
}

impl ConstructionCertificate {
    pub fn passed(&self) -> bool {
        all_pass(&self.checks)
    }

    pub fn verdict(&self, check_id: &str) -> Option<Verdict> {
        self.checks
            .iter()
            .find(|c| c.check_id == check_id)
            .map(|c| c.verdict)
    }
}

/// Runs every check on the `q ≡ 3 (mod 4)` construction. The explicit
/// graph is built only when its vertex count is at most `graph_cap`.
pub fn verify_construction(q: u64, graph_cap: u64) -> Result<ConstructionCertificate> {
    let t = build_construction(q)?;
    let n = t.degree();
    let inputs = json!({ "q": q, "degree": n });
    let mut checks = Vec::new();
    let k = &t.k;
    let k_order = k.order();

    // (1) |K| and K ∩ K^g = K_0
    let expected = t.expected_k_order();
    checks.push(CheckRecord::new(
        "k_order",
        "K = <translations, ω, τ> has order 2 q^2 (q^2 - 1)",
        inputs.clone(),
        json!({ "order": s(&k_order), "expected": s(&expected) }),
        k_order == expected,
    ));
    let k0 = k.point_stabilizer(0)?;
    let meet = conjugate_intersection(k, &t.g)?;
    let k0_in_meet = k0.is_subgroup_of(&meet.group)?;
    let meet_in_k0 = meet.group.is_subgroup_of(&k0)?;
    let k0_order = k0.order();
    let meet_order = meet.group.order();
    checks.push(CheckRecord::new(
        "k0_equals_kcapkg",
        "K ∩ K^g equals the stabilizer K_0 of the zero element",
        inputs.clone(),
        json!({
            "k0_order": s(&k0_order),
            "intersection_order": s(&meet_order),
            "k0_in_intersection": k0_in_meet,
            "intersection_in_k0": meet_in_k0,
        }),
        k0_in_meet && meet_in_k0 && k0_order == meet_order,
    ));

    // (2) valency
    let d = &k_order / &meet_order;
    checks.push(CheckRecord::new(
        "valency_q2",
        "the coset graph has valency |K : K ∩ K^g| = q^2",
        inputs.clone(),
        json!({ "valency": s(&d) }),
        d == BigUint::from(n),
    ));

    // (3) parities
    let half = (q * q - q) / 2;
    checks.push(CheckRecord::new(
        "tau_odd",
        "τ is an odd permutation, having (q^2 - q)/2 transpositions with that count odd",
        inputs.clone(),
        json!({
            "cycle_type": t.tau.cycle_type(),
            "transpositions": half,
            "transpositions_odd": half % 2 == 1,
        }),
        !t.tau.is_even() && half % 2 == 1 && t.tau.cycle_type().iter().filter(|&&l| l == 2).count() as u64 == half,
    ));
    checks.push(CheckRecord::new(
        "omega_odd",
        "the primitive scaling ω is odd, so ω lies outside Alt",
        inputs.clone(),
        json!({ "cycle_type": t.omega.cycle_type() }),
        !t.omega.is_even(),
    ));

    // (4) K ∩ Alt
    let even_k = k.even_subgroup();
    let even_order = even_k.order();
    let even_expected = BigUint::from(n * (n - 1));
    checks.push(CheckRecord::new(
        "even_k_order",
        "K ∩ Alt has order q^2 (q^2 - 1)",
        inputs.clone(),
        json!({ "order": s(&even_order), "expected": s(&even_expected) }),
        even_order == even_expected,
    ));
    let grade = even_k.transitivity_grade(2);
    checks.push(CheckRecord::new(
        "even_k_2transitive",
        "K ∩ Alt is 2-transitive on the field",
        inputs.clone(),
        json!({ "transitivity": grade }),
        grade >= 2,
    ));
    let omega_sq = t.omega.mul_unchecked(&t.omega);
    let omega_tau = t.omega.mul_unchecked(&t.tau);
    let witness = PermGroup::new(vec![t.translation.clone(), omega_sq, omega_tau])?;
    let witness_in_even = witness.is_subgroup_of(&even_k)?;
    let witness_order = witness.order();
    checks.push(CheckRecord::new(
        "even_k_generators",
        "K ∩ Alt = <v ↦ v + 1, ω^2, ωτ>",
        inputs.clone(),
        json!({ "order": s(&witness_order), "contained": witness_in_even }),
        witness_in_even && witness_order == even_order,
    ));

    // (5) <K, g> = Sym
    let sym = t.ambient();
    let join = k.join_within(std::slice::from_ref(&t.g), &sym)?;
    let join_order = join.order();
    let sym_order = factorial(n);
    checks.push(CheckRecord::new(
        "generates_sym",
        "<K, g> is the full symmetric group on the field",
        inputs.clone(),
        json!({ "order": s(&join_order), "expected": s(&sym_order) }),
        join_order == sym_order,
    ));

    // (6) K_{0,1} = <τ> and the complement
    let k01 = k.tuple_stabilizer(&[0, 1])?;
    let k01_order = k01.order();
    let tau_in = k01.contains(&t.tau)?;
    checks.push(CheckRecord::new(
        "k01_order2",
        "the two-point stabilizer K_{0,1} is <τ> of order 2",
        inputs.clone(),
        json!({ "order": s(&k01_order), "contains_tau": tau_in }),
        k01_order == BigUint::from(2u32) && tau_in,
    ));
    let k01_even = k01.even_subgroup().order();
    let alt01_order = factorial(n - 2) / 2u32;
    let product = &k_order * &alt01_order;
    checks.push(CheckRecord::new(
        "cayley_complement",
        "K ∩ Alt_{0,1} is trivial and |K| |Alt_{0,1}| = |G|, so Alt_{0,1} is regular on the cosets of K",
        inputs.clone(),
        json!({
            "k01_even_order": s(&k01_even),
            "alt01_order": s(&alt01_order),
            "product": s(&product),
            "g_order": s(&sym_order),
        }),
        k01_even.is_one() && product == sym_order,
    ));

    // relations between g, τ, ω and K_0
    let commutes = t.g.mul_unchecked(&t.tau) == t.tau.mul_unchecked(&t.g);
    checks.push(CheckRecord::new(
        "g_commutes_tau",
        "gτ = τg",
        inputs.clone(),
        json!({}),
        commutes,
    ));
    let inverted = t.omega.conjugate_by(&t.g) == t.omega.inverse();
    checks.push(CheckRecord::new(
        "omega_inverted",
        "ω^g = ω^-1",
        inputs.clone(),
        json!({}),
        inverted,
    ));
    let normalizes = k0.is_normalized_by(&t.g)?;
    checks.push(CheckRecord::new(
        "g_normalizes_k0",
        "g normalizes K_0",
        inputs.clone(),
        json!({}),
        normalizes,
    ));
    let involution = t.g.mul_unchecked(&t.g).is_identity();
    checks.push(CheckRecord::new(
        "g_involution",
        "g fixes 0, inverts every nonzero element and squares to the identity",
        inputs.clone(),
        json!({ "fixed_points": t.g.fixed_points() }),
        involution && t.g.fixes(0),
    ));

    // (7) the explicit graph
    let index = construction_index(&t);
    let (graph, graph_skipped) = if index > BigUint::from(graph_cap) {
        let reason = format!("index {index} exceeds vertex cap {graph_cap}");
        checks.push(CheckRecord {
            check_id: "graph".into(),
            claim: "the coset graph is connected, of valency q^2, (Alt,2)-arc-transitive, and Cayley on Alt_{0,1}".into(),
            inputs: inputs.clone(),
            witnesses: json!({ "index": s(&index), "reason": reason }),
            verdict: Verdict::Skipped,
            mandatory: false,
        });
        (None, Some(reason))
    } else {
        let w = construction_graph_witness(&t, &sym, graph_cap)?;
        let ok = w.connected
            && w.valency == Some(n)
            && w.two_arc_orbit == w.two_arcs
            && w.regular_subgroup_regular
            && BigUint::from(w.vertices) == index;
        checks.push(CheckRecord::new(
            "graph",
            "the coset graph is connected, of valency q^2, (Alt,2)-arc-transitive, and Cayley on Alt_{0,1}",
            inputs.clone(),
            serde_json::to_value(&w).expect("serializable"),
            ok,
        ));
        (Some(w), None)
    };

    Ok(ConstructionCertificate {
        q,
        field: t.field.descriptor(),
        checks,
        graph,
        graph_skipped,
    })
}

fn construction_graph_witness(
    t: &crate::constructions::ConstructionTriple,
    sym: &PermGroup,
    cap: u64,
) -> Result<GraphWitness> {
    let n = t.degree();
    let (action, space) = coset_graph(sym, &t.k, &t.g, cap)?;
    let graph = action.graph();
    let alt = build_alt(n);
    let alt_on_cosets = space.induced_group(&alt)?;
    let alt_action = crate::graph::GroupAction::new(alt_on_cosets, graph.clone())?;
    let report = alt_action.is_s_arc_transitive(2)?;
    let alt01 = alt.tuple_stabilizer(&[0, 1])?;
    let alt01_on_cosets = space.induced_group(&alt01)?;
    Ok(GraphWitness {
        vertices: graph.vertex_count(),
        edges: graph.edge_count(),
        connected: graph.is_connected(),
        valency: graph.valency(),
        two_arcs: report.total_arcs,
        sample_two_arc: report.sample_arc,
        two_arc_orbit: report.orbit_size,
        even_group_order: alt_action.group().order(),
        regular_subgroup_order: alt01_on_cosets.order(),
        regular_subgroup_regular: alt01_on_cosets.is_regular(),
    })
}

/// One nontrivial suborbit of a transitive group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitalRecord {
    pub representative: usize,
    pub suborbit_length: usize,
    pub self_paired: bool,
    /// The remaining fields are present only for self-paired suborbits.
    pub connected: Option<bool>,
    pub valency: Option<usize>,
    /// Also absent when the orbital graph has no s-arcs at all.
    pub s_arc_transitive: Option<bool>,
}

impl OrbitalRecord {
    /// Connected and s-arc-transitive at once.
    pub fn is_hit(&self) -> bool {
        self.connected == Some(true) && self.s_arc_transitive == Some(true)
    }
}

/// For each nontrivial suborbit at `alpha`, builds the orbital graph when
/// self-paired and tests connectivity and `(G, s)`-arc-transitivity.
pub fn scan_orbital_graphs(g: &PermGroup, alpha: usize, s: usize, cap: u64) -> Result<Vec<OrbitalRecord>> {
    if g.degree() as u64 > cap {
        return Err(Error::CapExceeded {
            what: "domain size".into(),
            size: g.degree().to_string(),
            cap,
        });
    }
    let suborbits = g.suborbits(alpha)?;
    let mut out = Vec::new();
    for orbit in suborbits.iter().skip(1) {
        let beta = orbit[0];
        let self_paired = g.is_self_paired(alpha, beta)?;
        let mut record = OrbitalRecord {
            representative: beta,
            suborbit_length: orbit.len(),
            self_paired,
            connected: None,
            valency: None,
            s_arc_transitive: None,
        };
        if self_paired {
            let action = orbital_graph(g, alpha, beta)?;
            record.connected = Some(action.graph().is_connected());
            record.valency = action.graph().valency();
            if action.graph().least_s_arc(s).is_some() {
                record.s_arc_transitive = Some(action.is_s_arc_transitive(s)?.transitive);
            }
        }
        out.push(record);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerVerdict {
    pub verdict: Verdict,
    #[serde(with = "opt_big_string")]
    pub stabilizer_order: Option<BigUint>,
    #[serde(with = "opt_big_string")]
    pub normalizer_order: Option<BigUint>,
    /// Whether some element of the normalizer moves `alpha`.
    pub moves_alpha: Option<bool>,
}

/// Brute-force check that the normalizer in `G` of `H_alpha` fixes
/// `alpha`, for `H ≤ G` 2-transitive.
pub fn check_normalizer_lemma(g: &PermGroup, h: &PermGroup, alpha: usize, cap: u64) -> Result<NormalizerVerdict> {
    h.require_subgroup_of(g)?;
    if h.transitivity_grade(2) < 2 {
        return Ok(NormalizerVerdict {
            verdict: Verdict::HypothesesUnmet,
            stabilizer_order: None,
            normalizer_order: None,
            moves_alpha: None,
        });
    }
    let h_alpha = h.point_stabilizer(alpha)?;
    let normalizer = g.normalizer_bruteforce(&h_alpha, cap)?;
    let moves = normalizer.generators().iter().any(|x| !x.fixes(alpha));
    Ok(NormalizerVerdict {
        verdict: if moves { Verdict::Fail } else { Verdict::Pass },
        stabilizer_order: Some(h_alpha.order()),
        normalizer_order: Some(normalizer.order()),
        moves_alpha: Some(moves),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderBoundReport {
    pub degree: usize,
    #[serde(with = "big_string")]
    pub order: BigUint,
    #[serde(with = "big_string")]
    pub bound: BigUint,
    pub hypotheses_met: bool,
    /// Whether `|G| < n (n-1) 2^(n-4)`; reported, never enforced.
    pub holds: bool,
}

/// Compares `|G|` with `n (n-1) 2^(n-4)` for a 2-transitive group of degree
/// `n ≥ 11` not containing `Alt(n)`. Diagnostic only.
pub fn check_order_bound(g: &PermGroup) -> OrderBoundReport {
    let n = g.degree();
    let order = g.order();
    let bound = if n >= 4 {
        BigUint::from(n * (n - 1)) << (n - 4)
    } else {
        BigUint::zero()
    };
    let alt_order = factorial(n) / 2u32;
    let contains_alt = (&order % &alt_order).is_zero();
    let hypotheses_met = n >= 11 && g.transitivity_grade(2) >= 2 && !contains_alt;
    OrderBoundReport {
        degree: n,
        holds: order < bound,
        order,
        bound,
        hypotheses_met,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_pgl2, build_sym, projective_inversion};

    fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
        let c: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
        Permutation::from_cycles(n, &c).unwrap()
    }

    #[test]
    fn sabidussi_on_s3() {
        let s3 = build_sym(3);
        let k = PermGroup::new(vec![cyc(3, &[&[0, 1]])]).unwrap();
        let c = check_sabidussi(&s3, &k, &cyc(3, &[&[1, 2]])).unwrap();
        assert!(c.passed());
        assert_eq!(c.valency, BigUint::from(2u32));
        let inside = check_sabidussi(&s3, &k, &cyc(3, &[&[0, 1]])).unwrap();
        assert!(!inside.passed() && !inside.g_outside_k);
    }

    #[test]
    fn sabidussi_search_on_s4() {
        let s4 = build_sym(4);
        let k = s4.point_stabilizer(3).unwrap();
        let mut transpositions = Vec::new();
        for a in 0..4 {
            for b in a + 1..4 {
                transpositions.push(cyc(4, &[&[a, b]]));
            }
        }
        let passing = sabidussi_search(&s4, &k, &transpositions, 100).unwrap();
        assert_eq!(passing.len(), 3);
        for (g, cert) in &passing {
            assert!(!g.fixes(3));
            assert_eq!(cert.valency, BigUint::from(3u32));
        }
        assert!(sabidussi_search(&s4, &k, &[], 100).unwrap().is_empty());
    }

    #[test]
    fn sabidussi_pgl2() {
        let g = build_pgl2(11).unwrap();
        let k = g.point_stabilizer(11).unwrap();
        let c = check_sabidussi(&g, &k, &projective_inversion(11)).unwrap();
        assert!(c.passed());
        assert_eq!(c.valency, BigUint::from(11u32));
    }

    #[test]
    fn construction_three_without_graph() {
        let c = verify_construction(3, 10).unwrap();
        assert!(c.passed(), "{:#?}", c.checks);
        assert_eq!(c.verdict("graph"), Some(Verdict::Skipped));
        assert!(c.graph_skipped.unwrap().contains("2520"));
        assert!(matches!(verify_construction(4, 10), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn normalizer_lemma_small() {
        let s5 = build_sym(5);
        let a5 = build_alt(5);
        let v = check_normalizer_lemma(&s5, &a5, 0, 1000).unwrap();
        assert_eq!(v.verdict, Verdict::Pass);
        let c6 = PermGroup::new(vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        let v = check_normalizer_lemma(&build_sym(6), &c6, 0, 1000).unwrap();
        assert_eq!(v.verdict, Verdict::HypothesesUnmet);
    }

    #[test]
    fn order_bound_examples() {
        let r = check_order_bound(&build_pgl2(11).unwrap());
        assert!(r.hypotheses_met && r.holds);
        assert_eq!(r.bound, BigUint::from(33792u32));
        let small = check_order_bound(&build_sym(5));
        assert!(!small.hypotheses_met);
    }

    #[test]
    fn orbital_scan_pgl2() {
        let recs = scan_orbital_graphs(&build_pgl2(11).unwrap(), 0, 2, 1000).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].suborbit_length, 11);
        assert!(recs[0].is_hit());
    }
}
