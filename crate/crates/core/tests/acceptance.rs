//! Acceptance criteria, one line per criterion.
//!
//! Run with `cargo test -p arcgraph --test acceptance`. All comparisons are
//! exact equalities of integers or booleans.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use arcgraph::constructions::{
    build_agl1, build_alt, build_construction, build_pgl2, build_sym, coset_graph,
    ordered_pairs_action, projective_inversion, two_subsets_action,
};
use arcgraph::field::FiniteField;
use arcgraph::graph::{Graph, GroupAction};
use arcgraph::group::{factorial, PermGroup};
use arcgraph::verify::{
    check_normalizer_lemma, check_sabidussi, scan_orbital_graphs, verify_construction, Verdict,
};
use arcgraph::Permutation;
use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn cyc(n: usize, cycles: &[&[usize]]) -> Permutation {
    let c: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Permutation::from_cycles(n, &c).unwrap()
}

fn construction_graph_q3() -> Outcome {
    let cert = verify_construction(3, 100_000).map_err(|e| e.to_string())?;
    let w = cert.graph.as_ref().ok_or("graph was not built")?;
    ensure(w.vertices == 2520, || format!("{} vertices", w.vertices))?;
    ensure(w.connected, || "not connected".into())?;
    ensure(w.valency == Some(9), || format!("valency {:?}", w.valency))?;
    ensure(w.two_arcs == big(181_440), || format!("{} 2-arcs", w.two_arcs))?;
    ensure(w.even_group_order == big(181_440), || format!("|Alt| = {}", w.even_group_order))?;
    ensure(w.two_arc_orbit == big(181_440), || format!("2-arc orbit {}", w.two_arc_orbit))?;
    ensure(w.regular_subgroup_order == big(2520), || {
        format!("|Alt_01| = {}", w.regular_subgroup_order)
    })?;
    ensure(w.regular_subgroup_regular, || "Alt_01 not regular".into())?;
    ensure(cert.passed(), || "some check failed".into())?;
    Ok("2520 vertices, connected, 9-regular, 2-arc orbit 181440 = all 2-arcs, Alt_{0,1} regular".into())
}

fn sabidussi_certificates() -> Outcome {
    let mut parts = Vec::new();
    for q in [3u64, 7, 11, 19] {
        let start = Instant::now();
        let t = build_construction(q).map_err(|e| e.to_string())?;
        let n = t.degree();
        let cert = check_sabidussi(&t.ambient(), &t.k, &t.g).map_err(|e| e.to_string())?;
        ensure(cert.passed(), || format!("q={q}: {cert:?}"))?;
        ensure(cert.join_order == factorial(n), || format!("q={q}: <K,g> order {}", cert.join_order))?;
        ensure(cert.valency == big(n as u64), || format!("q={q}: valency {}", cert.valency))?;
        let secs = start.elapsed().as_secs_f64();
        ensure(secs < 60.0, || format!("q={q}: {secs:.1}s"))?;
        parts.push(format!("q={q} d={} ({secs:.1}s)", cert.valency));
    }
    Ok(parts.join(", "))
}

fn construction_subclaims() -> Outcome {
    let ids = [
        "k_order",
        "k0_equals_kcapkg",
        "valency_q2",
        "tau_odd",
        "omega_odd",
        "even_k_order",
        "even_k_2transitive",
        "even_k_generators",
        "generates_sym",
        "k01_order2",
        "cayley_complement",
        "g_commutes_tau",
        "omega_inverted",
        "g_normalizes_k0",
    ];
    for q in [3u64, 7, 11] {
        let cert = verify_construction(q, 0).map_err(|e| e.to_string())?;
        for id in ids {
            ensure(cert.verdict(id) == Some(Verdict::Pass), || format!("q={q}: {id} is {:?}", cert.verdict(id)))?;
        }
        ensure(cert.verdict("graph") == Some(Verdict::Skipped), || format!("q={q}: graph not skipped"))?;
    }
    Ok(format!("{} checks each for q = 3, 7, 11", ids.len()))
}

fn pgl2_complete_graphs() -> Outcome {
    for p in [11u64, 19, 29, 59] {
        let n = p as usize + 1;
        let g = build_pgl2(p).map_err(|e| e.to_string())?;
        let order = big((p + 1) * p * (p - 1));
        ensure(g.order() == order, || format!("p={p}: |PGL2| = {}", g.order()))?;
        let k = g.point_stabilizer(p as usize).map_err(|e| e.to_string())?;
        let agl = build_agl1(&FiniteField::new(p, 1).map_err(|e| e.to_string())?);
        // AGL1(p) on the affine line, extended by fixing ∞
        let extended: Vec<Permutation> = agl
            .generators()
            .iter()
            .map(|x| Permutation::from_fn(n, |z| if z == p as usize { z } else { x.apply(z) }).unwrap())
            .collect();
        let agl = PermGroup::new(extended).unwrap();
        ensure(agl.is_subgroup_of(&k).unwrap() && agl.order() == k.order(), || {
            format!("p={p}: stabilizer of ∞ is not AGL1(p)")
        })?;
        let (action, _) = coset_graph(&g, &k, &projective_inversion(p), 1000).map_err(|e| e.to_string())?;
        ensure(action.graph().is_complete() && action.graph().vertex_count() == n, || {
            format!("p={p}: coset graph is not K_{n}")
        })?;
        let report = action.is_s_arc_transitive(2).map_err(|e| e.to_string())?;
        ensure(report.total_arcs == order && report.orbit_size == order, || {
            format!("p={p}: 2-arcs {} vs orbit {}", report.total_arcs, report.orbit_size)
        })?;
    }
    Ok("K_{p+1}, 2-arc-transitive for p = 11, 19, 29, 59".into())
}

fn orbital_nonexistence() -> Outcome {
    let mut records = 0;
    let mut hits = Vec::new();
    for n in [5usize, 6, 7] {
        let alt = build_alt(n);
        for (label, action) in [
            ("ordered pairs", ordered_pairs_action(&alt).group),
            ("2-subsets", two_subsets_action(&alt).group),
        ] {
            let scan = scan_orbital_graphs(&action, 0, 2, 10_000).map_err(|e| e.to_string())?;
            records += scan.len();
            for hit in scan.iter().filter(|r| r.is_hit()) {
                hits.push(format!(
                    "A{n} on {label}: suborbit of length {} gives a connected {}-valent (A{n},2)-arc-transitive orbital graph on {} vertices",
                    hit.suborbit_length,
                    hit.valency.unwrap_or(0),
                    action.degree()
                ));
            }
        }
    }
    if hits.is_empty() {
        Ok(format!("{records} nontrivial suborbits scanned, none connected and 2-arc-transitive"))
    } else {
        Err(hits.join("; "))
    }
}

fn normalizer_lemma() -> Outcome {
    let cases: Vec<(&str, PermGroup, PermGroup)> = vec![
        ("S5 ⊇ A5", build_sym(5), build_alt(5)),
        ("S6 ⊇ PGL2(5)", build_sym(6), build_pgl2(5).unwrap()),
        ("S7 ⊇ AGL1(7)", build_sym(7), build_agl1(&FiniteField::new(7, 1).unwrap())),
        ("S8 ⊇ AGL1(8)", build_sym(8), build_agl1(&FiniteField::new(2, 3).unwrap())),
        ("S9 ⊇ AGL1(9)", build_sym(9), build_agl1(&FiniteField::new(3, 2).unwrap())),
    ];
    for (label, g, h) in &cases {
        let v = check_normalizer_lemma(g, h, 0, 1_000_000).map_err(|e| e.to_string())?;
        ensure(v.verdict == Verdict::Pass, || format!("{label}: {v:?}"))?;
    }
    Ok(format!("{} cases, normalizer of H_0 fixes 0 in each", cases.len()))
}

/// Closure of the generators under right multiplication, as a set of image vectors.
fn closure(gens: &[Permutation]) -> HashSet<Vec<usize>> {
    let id = Permutation::identity(gens[0].degree());
    let mut seen = HashSet::from([id.to_vec()]);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = x.compose(g).unwrap();
            if seen.insert(y.to_vec()) {
                frontier.push(y);
            }
        }
    }
    seen
}

fn oracle_corpus() -> Vec<(String, PermGroup)> {
    let mut out: Vec<(String, PermGroup)> = Vec::new();
    for n in [3usize, 5, 8, 12] {
        let r = Permutation::from_fn(n, |i| (i + 1) % n).unwrap();
        out.push((format!("C{n}"), PermGroup::new(vec![r]).unwrap()));
    }
    for n in [4usize, 5, 6, 10] {
        let r = Permutation::from_fn(n, |i| (i + 1) % n).unwrap();
        let s = Permutation::from_fn(n, |i| (n - i) % n).unwrap();
        out.push((format!("D{n}"), PermGroup::new(vec![r, s]).unwrap()));
    }
    for n in 3..=7 {
        out.push((format!("S{n}"), build_sym(n)));
    }
    for n in 4..=7 {
        out.push((format!("A{n}"), build_alt(n)));
    }
    for (p, d) in [(5u64, 1u32), (7, 1), (2, 3), (3, 2), (2, 4)] {
        let f = FiniteField::new(p, d).unwrap();
        out.push((format!("AGL1({})", f.size()), build_agl1(&f)));
    }
    out.push(("PGL2(5)".into(), build_pgl2(5).unwrap()));
    out.push(("PGL2(7)".into(), build_pgl2(7).unwrap()));
    out.push((
        "C2 x S3 intransitive".into(),
        PermGroup::new(vec![cyc(5, &[&[0, 1]]), cyc(5, &[&[2, 3, 4]]), cyc(5, &[&[2, 3]])]).unwrap(),
    ));
    out
}

fn engine_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20_261_016);
    let corpus = oracle_corpus();
    for (name, g) in &corpus {
        let elements = closure(g.generators());
        ensure(elements.len() <= 10_000, || format!("{name}: order {} exceeds 10^4", elements.len()))?;
        ensure(g.order() == big(elements.len() as u64), || {
            format!("{name}: chain order {} vs closure {}", g.order(), elements.len())
        })?;
        let n = g.degree();
        let listed: Vec<&Vec<usize>> = elements.iter().collect();
        for i in 0..100 {
            // half drawn from the group, half uniformly from Sym(n)
            let x = if i % 2 == 0 {
                listed[rng.gen_range(0..listed.len())].clone()
            } else {
                let mut v: Vec<usize> = (0..n).collect();
                v.shuffle(&mut rng);
                v
            };
            let member = g.contains(&Permutation::from_images(x.clone()).unwrap()).unwrap();
            ensure(member == elements.contains(&x), || format!("{name}: membership of {x:?}"))?;
        }
        for point in 0..n {
            let orbit = g.orbit(point).unwrap().len();
            let stab = g.point_stabilizer(point).unwrap().order();
            ensure(big(orbit as u64) * stab == g.order(), || format!("{name}: orbit-stabilizer at {point}"))?;
        }
    }
    Ok(format!("{} groups agree with closure, membership and orbit-stabilizer", corpus.len()))
}

fn cube() -> (PermGroup, Graph) {
    // vertices are 3-bit strings, adjacent when they differ in one bit
    let mut edges = Vec::new();
    for v in 0..8usize {
        for b in 0..3 {
            let u = v ^ (1 << b);
            if v < u {
                edges.push((v, u));
            }
        }
    }
    let graph = Graph::from_edges(8, &edges).unwrap();
    let flip = Permutation::from_fn(8, |v| v ^ 1).unwrap();
    let swap01 = Permutation::from_fn(8, |v| (v & 4) | ((v & 1) << 1) | ((v & 2) >> 1)).unwrap();
    let rotate = Permutation::from_fn(8, |v| ((v << 1) & 7) | (v >> 2)).unwrap();
    (PermGroup::new(vec![flip, swap01, rotate]).unwrap(), graph)
}

fn quotient_corpus() -> Outcome {
    let mut cases: Vec<(String, GroupAction, PermGroup, bool)> = Vec::new();

    let d6 = PermGroup::new(vec![cyc(6, &[&[0, 1, 2, 3, 4, 5]]), cyc(6, &[&[1, 5], &[2, 4]])]).unwrap();
    let hexagon = GroupAction::new(d6, Graph::cycle(6)).unwrap();
    let antipodal6 = PermGroup::new(vec![cyc(6, &[&[0, 3], &[1, 4], &[2, 5]])]).unwrap();
    cases.push(("C6 / antipodal".into(), hexagon, antipodal6, true));

    let (aut, graph) = cube();
    let cube = GroupAction::new(aut, graph).unwrap();
    let antipodal8 = PermGroup::new(vec![Permutation::from_fn(8, |v| v ^ 7).unwrap()]).unwrap();
    cases.push(("cube / antipodal".into(), cube, antipodal8, true));

    let t = build_construction(3).unwrap();
    let (full, _) = coset_graph(&t.ambient(), &t.k, &t.g, 100_000).unwrap();
    let trivial = PermGroup::trivial(full.graph().vertex_count());
    cases.push(("q=3 graph / trivial".into(), full, trivial, true));

    let s4 = build_sym(4);
    let k4 = GroupAction::new(s4, Graph::complete(4)).unwrap();
    let three_cycle = PermGroup::new(vec![cyc(4, &[&[1, 2, 3]])]).unwrap();
    cases.push(("K4 / non-normal <(1 2 3)>".into(), k4, three_cycle, false));

    for (label, action, m, expect_hypotheses) in &cases {
        let r = action.semiregular_quotient_check(m).map_err(|e| e.to_string())?;
        ensure(r.hypotheses_met == *expect_hypotheses, || format!("{label}: hypotheses {}", r.hypotheses_met))?;
        ensure(r.consistent, || format!("{label}: conclusion fails under the hypotheses: {r:?}"))?;
        if r.hypotheses_met {
            ensure(r.semiregular && r.normal_cover, || format!("{label}: {r:?}"))?;
        }
    }
    Ok(format!("{} cases, conclusions hold wherever hypotheses hold", cases.len()))
}

/// Criteria that fail on mathematically correct computations. They are
/// reported red but do not fail the run; the exact scan outcome is pinned
/// in `tests/orbital_scan.rs`.
const KNOWN_RED: &[(&str, &str)] = &[(
    "5",
    "the Petersen graph (A5 on 2-subsets, disjoint pairs) is a counterexample at n = 5",
)];

fn main() -> ExitCode {
    let criteria: [(&str, &str, f64, fn() -> Outcome); 8] = [
        ("1", "construction graph at q=3", 120.0, construction_graph_q3),
        ("2", "coset-graph conditions for q in {3,7,11,19}", 240.0, sabidussi_certificates),
        ("3", "construction sub-claims for q in {3,7,11}", 600.0, construction_subclaims),
        ("4", "PGL2(p) gives 2-arc-transitive K_{p+1}", 60.0, pgl2_complete_graphs),
        ("5", "no 2-arc-transitive orbital graphs for A_n, n in {5,6,7}", 60.0, orbital_nonexistence),
        ("6", "normalizer of a 2-transitive point stabilizer", 600.0, normalizer_lemma),
        ("7", "engine oracle corpus", 180.0, engine_oracles),
        ("8", "normal quotients and covers", 600.0, quotient_corpus),
    ];
    let mut failed = 0;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let secs = start.elapsed().as_secs_f64();
        if outcome.is_ok() && secs > budget {
            outcome = Err(format!("took {secs:.1}s, budget {budget}s"));
        }
        match outcome {
            Ok(detail) => println!("PASS criterion {id} {name}: {detail} [{secs:.1}s]"),
            Err(reason) => {
                let known = KNOWN_RED.iter().find(|(k, _)| *k == id);
                println!("FAIL criterion {id} {name}: {reason} [{secs:.1}s]");
                match known {
                    Some((_, why)) => println!("     known red: {why}"),
                    None => failed += 1,
                }
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}
