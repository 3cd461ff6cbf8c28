//! Randomized self-tests. Every draw comes from one seeded generator, so a
//! fixed seed reproduces the report byte for byte.

use std::collections::HashSet;

use arcgraph::constructions::{build_sym, coset_graph};
use arcgraph::field::FiniteField;
use arcgraph::graph::Graph;
use arcgraph::verify::{check_sabidussi, CheckRecord, Verdict};
use arcgraph::{PermGroup, Permutation};
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(v).expect("a shuffle is a permutation")
}

fn random_group(rng: &mut ChaCha8Rng, max_degree: usize) -> PermGroup {
    let n = rng.gen_range(2..=max_degree);
    let k = rng.gen_range(1..=3);
    PermGroup::new((0..k).map(|_| random_perm(rng, n)).collect()).expect("nonempty")
}

fn closure(gens: &[Permutation]) -> HashSet<Permutation> {
    let id = Permutation::identity(gens[0].degree());
    let mut seen = HashSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn record(id: &str, claim: &str, seed: u64, cases: usize, failures: Vec<String>) -> CheckRecord {
    CheckRecord {
        check_id: id.into(),
        claim: claim.into(),
        inputs: json!({ "seed": seed, "cases": cases }),
        verdict: if failures.is_empty() { Verdict::Pass } else { Verdict::Fail },
        witnesses: json!({ "failures": failures }),
        mandatory: true,
    }
}

fn engine_oracle(rng: &mut ChaCha8Rng, seed: u64, cap: u64) -> Vec<CheckRecord> {
    let cases = 200;
    let mut order_fail = Vec::new();
    let mut member_fail = Vec::new();
    let mut orbit_fail = Vec::new();
    for case in 0..cases {
        let g = random_group(rng, 7);
        let elements = closure(g.generators());
        if elements.len() as u64 > cap {
            continue;
        }
        if g.order() != BigUint::from(elements.len()) {
            order_fail.push(format!("case {case}: {} vs {}", g.order(), elements.len()));
        }
        for _ in 0..20 {
            let x = random_perm(rng, g.degree());
            if g.contains(&x).expect("same degree") != elements.contains(&x) {
                member_fail.push(format!("case {case}: {x}"));
            }
        }
        for p in 0..g.degree() {
            let orbit = g.orbit(p).expect("in range").len();
            let stab = g.point_stabilizer(p).expect("in range").order();
            if BigUint::from(orbit) * stab != g.order() {
                orbit_fail.push(format!("case {case}: point {p}"));
            }
        }
    }
    vec![
        record("chain_order", "stabilizer-chain order equals the closure size", seed, cases, order_fail),
        record("membership", "chain membership agrees with the closure", seed, cases, member_fail),
        record("orbit_stabilizer", "|orbit| |stabilizer| = |G| at every point", seed, cases, orbit_fail),
    ]
}

fn field_axioms(rng: &mut ChaCha8Rng, seed: u64) -> Vec<CheckRecord> {
    let fields = [(2u64, 1u32), (2, 4), (2, 10), (3, 2), (3, 6), (5, 2), (7, 3), (11, 2), (1021, 1)];
    let mut axiom_fail = Vec::new();
    let mut frob_fail = Vec::new();
    let per_field = 300;
    for (p, d) in fields {
        let f = FiniteField::new(p, d).expect("prime characteristic");
        for _ in 0..per_field {
            let [a, b, c] = [0; 3].map(|_| f.element(rng.gen_range(0..f.size())));
            let ok = f.add(&f.add(&a, &b), &c) == f.add(&a, &f.add(&b, &c))
                && f.mul(&f.mul(&a, &b), &c) == f.mul(&a, &f.mul(&b, &c))
                && f.mul(&a, &f.add(&b, &c)) == f.add(&f.mul(&a, &b), &f.mul(&a, &c))
                && f.mul(&a, &b) == f.mul(&b, &a)
                && (a.is_zero() || f.mul(&a, &f.inv(&a).expect("nonzero")) == f.one());
            if !ok {
                axiom_fail.push(format!("F_{}^{}: {} {} {}", p, d, f.index(&a), f.index(&b), f.index(&c)));
            }
            let phi = |v: &_| f.frobenius_power(v, 1);
            if phi(&f.add(&a, &b)) != f.add(&phi(&a), &phi(&b)) || phi(&f.mul(&a, &b)) != f.mul(&phi(&a), &phi(&b)) {
                frob_fail.push(format!("F_{}^{}: {} {}", p, d, f.index(&a), f.index(&b)));
            }
        }
    }
    let cases = fields.len() * per_field;
    vec![
        record("field_axioms", "field operations satisfy the field axioms", seed, cases, axiom_fail),
        record("frobenius", "v ↦ v^p is a ring automorphism", seed, cases, frob_fail),
    ]
}

fn arc_counts(rng: &mut ChaCha8Rng, seed: u64) -> CheckRecord {
    fn brute(g: &Graph, walk: &mut Vec<usize>, s: usize) -> usize {
        if walk.len() == s + 1 {
            return 1;
        }
        let last = walk[walk.len() - 1];
        let prev = (walk.len() >= 2).then(|| walk[walk.len() - 2]);
        let mut total = 0;
        for u in g.neighbors(last).collect::<Vec<_>>() {
            if Some(u) != prev {
                walk.push(u);
                total += brute(g, walk, s);
                walk.pop();
            }
        }
        total
    }
    let cases = 100;
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = rng.gen_range(2..=10);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        let g = Graph::from_edges(n, &edges).expect("simple");
        for s in 0..=4 {
            let direct: usize = (0..n).map(|v| brute(&g, &mut vec![v], s)).sum();
            if g.count_s_arcs(s) != BigUint::from(direct) {
                failures.push(format!("case {case}, s = {s}"));
            }
        }
    }
    record("arc_counts", "s-arc counts agree with walk enumeration", seed, cases, failures)
}

fn coset_cross_validation(rng: &mut ChaCha8Rng, seed: u64) -> CheckRecord {
    let cases = 150;
    let mut failures = Vec::new();
    for case in 0..cases {
        let n = rng.gen_range(3..=5);
        let sym = build_sym(n);
        let k = PermGroup::new((0..rng.gen_range(1..=2)).map(|_| random_perm(rng, n)).collect())
            .expect("nonempty");
        let g = random_perm(rng, n);
        let cert = check_sabidussi(&sym, &k, &g).expect("valid inputs");
        if !(cert.g_outside_k && cert.square_in_k) {
            continue;
        }
        let (action, _) = coset_graph(&sym, &k, &g, 1000).expect("valid coset graph");
        let graph = action.graph();
        let valency_ok = graph.valency().map(BigUint::from) == Some(cert.valency.clone());
        let arc_ok = action.is_s_arc_transitive(1).map(|r| r.transitive).unwrap_or(false);
        if !valency_ok || !arc_ok || (cert.passed() && !graph.is_connected()) {
            failures.push(format!("case {case}: K = {:?}, g = {g}", k.generators()));
        }
    }
    record(
        "coset_graphs",
        "coset graphs have valency |K : K ∩ K^g|, are arc-transitive, and are connected when the certificate passes",
        seed,
        cases,
        failures,
    )
}

pub fn run(seed: u64, bruteforce_cap: u64) -> Vec<CheckRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = engine_oracle(&mut rng, seed, bruteforce_cap);
    out.extend(field_axioms(&mut rng, seed));
    out.push(arc_counts(&mut rng, seed));
    out.push(coset_cross_validation(&mut rng, seed));
    out
}
