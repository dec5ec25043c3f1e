//! The eight acceptance criteria. Each test prints one PASS/FAIL line with
//! its measured time against the pinned limit, then asserts.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use hwcb::canonical::{specialize_matrix, transition_matrix, CanonicalBasis, CbId};
use hwcb::cartan::{DimVector, HighestWeight, QuiverDatum, Vertex};
use hwcb::crystal::{build_left_graph, monomial_basis, path_cmp, replay, sbar, LeftGraph};
use hwcb::hwmodule::{HighestWeightModule, ModuleVector};
use hwcb::report::{basis_json, dims_json, dims_rows, graph_json, render};
use hwcb::uminus::{rbar_left, rbar_right, FlagMonomial, UMinusElement};
use hwcb::verify::Verifier;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{a2, kronecker, leibniz_left, leibniz_right, random_slots};

const LIMIT_RANK_ONE: Duration = Duration::from_secs(1);
const LIMIT_A2_FUNDAMENTAL: Duration = Duration::from_secs(1);
const LIMIT_A2_ADJOINT: Duration = Duration::from_secs(30);
const LIMIT_RELATIONS: Duration = Duration::from_secs(300);

const RANDOM_MONOMIALS: usize = 50;
const RANDOM_SEED: u64 = 0x5eed_cb01;

/// Prints the criterion line and fails the test on any problem or overrun.
fn conclude(n: u32, what: &str, started: Instant, limit: Option<Duration>, problems: Vec<String>) {
    let took = started.elapsed();
    let late = limit.is_some_and(|l| took > l);
    let ok = problems.is_empty() && !late;
    let budget = limit.map_or(String::new(), |l| format!(" (limit {:.0?})", l));
    println!("{} criterion {n}: {what} [{took:.2?}{budget}]", if ok { "PASS" } else { "FAIL" });
    for p in problems.iter().take(10) {
        println!("    {p}");
    }
    assert!(!late, "criterion {n} took {took:?}, limit {limit:?}");
    assert!(problems.is_empty(), "criterion {n}: {} problems", problems.len());
}

fn module(q: QuiverDatum, lam: Vec<u32>) -> Arc<HighestWeightModule> {
    Arc::new(HighestWeightModule::new(q, HighestWeight(lam)))
}

fn crystal(m: &Arc<HighestWeightModule>, h: u32) -> (CanonicalBasis, LeftGraph) {
    let cb = CanonicalBasis::compute(m.clone(), h).expect("canonical basis");
    let g = build_left_graph(&cb).expect("left graph");
    (cb, g)
}

fn word(m: &HighestWeightModule, slots: &[(Vertex, u32)]) -> ModuleVector {
    m.monomial_vector(FlagMonomial::from_normalized(slots.to_vec()).unwrap())
}

#[test]
fn criterion_1_rank_one_string() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let m = module(QuiverDatum::type_a(1), vec![3]);
    let ranks: Vec<usize> = (0..=4).map(|k| m.weight_space(&DimVector(vec![k])).unwrap().rank).collect();
    if ranks != [1, 1, 1, 1, 0] {
        problems.push(format!("ranks {ranks:?}"));
    }
    let cb = CanonicalBasis::compute(m.clone(), 4).unwrap();
    for k in 0..=3u32 {
        let elems = cb.elements(&DimVector(vec![k]));
        if elems.len() != 1 {
            problems.push(format!("{} elements at step {k}", elems.len()));
            continue;
        }
        let b = &elems[0];
        let fk = if k == 0 { m.highest_vector() } else { word(&m, &[(0, k)]) };
        if !m.equal(&b.vector, &fk).unwrap() {
            problems.push(format!("element at step {k} is not F^({k}) v"));
        }
        if !b.self_pairing.is_one_mod_negative() {
            problems.push(format!("self-pairing {} at step {k}", b.self_pairing));
        }
    }
    if !cb.elements(&DimVector(vec![4])).is_empty() {
        problems.push("elements at step 4".into());
    }
    let f4 = word(&m, &[(0, 4)]);
    if !m.is_zero(&f4).unwrap() || !m.coordinates(&f4).unwrap().is_empty() {
        problems.push("F^(4) v is nonzero".into());
    }
    conclude(1, "rank-one string A1, d = 3", t, Some(LIMIT_RANK_ONE), problems);
}

#[test]
fn criterion_2_a2_fundamental() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let m = module(a2(), vec![1, 0]);
    let (cb, g) = crystal(&m, 6);
    if cb.len() != 3 {
        problems.push(format!("{} elements", cb.len()));
    }
    let expected = [m.highest_vector(), word(&m, &[(0, 1)]), word(&m, &[(1, 1), (0, 1)])];
    for u in &expected {
        let hit = cb.elements(u.content()).iter().any(|b| m.equal(&b.vector, u).unwrap());
        if !hit {
            problems.push(format!("missing element of content {}", u.content()));
        }
    }
    if g.vertices.len() != 3 {
        problems.push(format!("{} graph vertices", g.vertices.len()));
    }
    let colors: BTreeSet<(Vertex, u32)> = g.arrows.iter().map(|a| (a.vertex, a.r)).collect();
    if g.arrows.len() != 2 || colors != BTreeSet::from([(0, 1), (1, 1)]) {
        problems.push(format!("arrows {:?}", g.arrows));
    }
    conclude(2, "A2 fundamental: 3 elements, arrows (1,1) and (2,1)", t, Some(LIMIT_A2_FUNDAMENTAL), problems);
}

#[test]
fn criterion_3_a2_adjoint() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let m = module(a2(), vec![1, 1]);
    let (cb, g) = crystal(&m, 4);
    if cb.len() != 8 {
        problems.push(format!("{} elements, expected 8", cb.len()));
    }
    // Weights of the adjoint representation: the six roots once and zero twice.
    let roots: BTreeMap<Vec<u32>, usize> = [
        (vec![0, 0], 1),
        (vec![1, 0], 1),
        (vec![0, 1], 1),
        (vec![1, 1], 2),
        (vec![2, 1], 1),
        (vec![1, 2], 1),
        (vec![2, 2], 1),
    ]
    .into();
    for ws in m.weight_spaces_up_to(4).unwrap() {
        let want = roots.get(&ws.content.0).copied().unwrap_or(0);
        let f = m.freudenthal(&ws.content);
        let n = cb.elements(&ws.content).len();
        if ws.rank != want || f != want as i64 || n != want {
            problems.push(format!("{}: rank {}, Freudenthal {f}, elements {n}, expected {want}", ws.content, ws.rank));
        }
    }
    let order: Vec<Vertex> = vec![0, 1];
    for nu in cb.contents_by_height() {
        let entries = monomial_basis(&cb, &g, &nu, &order).unwrap();
        if entries.is_empty() {
            continue;
        }
        for w in entries.windows(2) {
            if path_cmp(&w[0].path, &w[1].path, &order).is_le() {
                problems.push(format!("monomials at {nu} are not strictly decreasing"));
            }
        }
        let cols: Vec<ModuleVector> = entries.iter().map(|e| e.vector.clone()).collect();
        let full = transition_matrix(&cb, &nu, &cols).unwrap();
        // Rows are the elements in the same order as their monomials.
        let rows: Vec<_> = entries.iter().map(|e| full[e.element.index].clone()).collect();
        let at_one = specialize_matrix(&rows).unwrap();
        for r in 0..rows.len() {
            for c in 0..rows.len() {
                let (x, y) = (&rows[r][c], &at_one[r][c]);
                let ok = match r.cmp(&c) {
                    std::cmp::Ordering::Equal => x.is_one() && y.is_one(),
                    std::cmp::Ordering::Greater => x.is_zero() && y.is_zero(),
                    std::cmp::Ordering::Less => true,
                };
                if !ok {
                    problems.push(format!("entry ({r},{c}) at {nu}: {x} (at v = 1: {y})"));
                }
            }
        }
    }
    conclude(3, "A2 adjoint: 8 elements, zero weight 2, unitriangular transition", t, Some(LIMIT_A2_ADJOINT), problems);
}

fn suite_problems(m: Arc<HighestWeightModule>, h: u32, suites: &[&str], label: &str) -> (Vec<String>, usize) {
    let n = m.quiver().num_vertices();
    let reports = Verifier::new(m, h, (0..n).collect()).run(suites).unwrap();
    let mut problems = Vec::new();
    let mut checks = 0;
    for r in reports {
        checks += r.checks;
        if r.checks == 0 {
            problems.push(format!("{label}: {} ran no checks", r.name));
        }
        problems.extend(r.examples.iter().map(|e| format!("{label} {}: {e}", r.name)));
        if r.failures > r.examples.len() {
            problems.push(format!("{label} {}: {} failures in total", r.name, r.failures));
        }
    }
    (problems, checks)
}

#[test]
fn criterion_4_operator_relations() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let mut checks = 0;
    for (q, lam, h, label) in [
        (a2(), vec![1, 1], 6, "A2 (1,1)"),
        (a2(), vec![2, 1], 6, "A2 (2,1)"),
        (kronecker(), vec![1, 0], 4, "Kronecker (1,0)"),
        (kronecker(), vec![1, 1], 4, "Kronecker (1,1)"),
    ] {
        let (p, c) = suite_problems(module(q, lam), h, &["relations", "serre"], label);
        problems.extend(p);
        checks += c;
    }
    let what = format!("[E,F], K-commutation and Serre relations ({checks} checks)");
    conclude(4, &what, t, Some(LIMIT_RELATIONS), problems);
}

#[test]
fn criterion_5_derivation_identity() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let mut checks = 0;
    for (q, lam, label) in [
        (a2(), vec![1, 1], "A2 (1,1)"),
        (a2(), vec![1, 0], "A2 (1,0)"),
        (kronecker(), vec![1, 0], "Kronecker (1,0)"),
        (kronecker(), vec![1, 1], "Kronecker (1,1)"),
    ] {
        let (p, c) = suite_problems(module(q, lam), 4, &["derivation"], label);
        problems.extend(p);
        checks += c;
    }
    conclude(5, &format!("derivation identity up to height 4 ({checks} checks)"), t, None, problems);
}

#[test]
fn criterion_6_coproduct_consistency() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for (q, label) in [(a2(), "A2"), (kronecker(), "Kronecker"), (QuiverDatum::type_a(3), "A3")] {
        let n = q.num_vertices();
        for _ in 0..RANDOM_MONOMIALS {
            let raw = random_slots(&mut rng, n, 5);
            let (x, k) = FlagMonomial::normalize(&raw);
            let elem = UMinusElement::from_monomial(x.clone(), k);
            for i in q.vertices() {
                if rbar_right(&q, &elem, i) != leibniz_right(&q, &raw, i) {
                    problems.push(format!("{label}: r_{i} of {}", x.display(&q)));
                }
                if rbar_left(&q, &elem, i) != leibniz_left(&q, &raw, i) {
                    problems.push(format!("{label}: _{i}r of {}", x.display(&q)));
                }
            }
        }
    }
    let mut checks = 0;
    for (q, label) in [(a2(), "A2"), (kronecker(), "Kronecker")] {
        let (p, c) = suite_problems(module(q, vec![1, 0]), 4, &["coproduct"], label);
        problems.extend(p);
        checks += c;
    }
    let what = format!("Leibniz oracle on {RANDOM_MONOMIALS} random words per quiver, coassociativity ({checks} checks)");
    conclude(6, &what, t, None, problems);
}

#[test]
fn criterion_7_crystal_layer() {
    let t = Instant::now();
    let mut problems = Vec::new();
    for lam in [vec![1, 1], vec![2, 1], vec![2, 2]] {
        let m = module(a2(), lam.clone());
        let (cb, g) = crystal(&m, 6);
        let label = format!("A2 {lam:?}");
        // Recount every (content, i, t): each t_i = t element has exactly one
        // arrow of that color, onto distinct t_i = 0 elements one string below.
        let mut seen_checks = BTreeSet::new();
        for c in &g.checks {
            seen_checks.insert((c.content.clone(), c.vertex, c.t));
        }
        for nu in cb.contents_by_height() {
            for i in 0..2 {
                for tt in 1..=nu.get(i) {
                    let sources: Vec<&CbId> =
                        cb.elements(&nu).iter().filter(|b| b.t(i) == tt).map(|b| &b.id).collect();
                    let lower = nu.minus(i, tt).unwrap();
                    let pool = cb.elements(&lower).iter().filter(|b| b.t(i) == 0).count();
                    let mut targets = BTreeSet::new();
                    for s in &sources {
                        match g.outgoing(s, i) {
                            Some(a) if a.r == tt && a.target.content == lower && cb.get(&a.target).unwrap().t(i) == 0 => {
                                targets.insert(a.target.clone());
                            }
                            other => problems.push(format!("{label}: {s} has arrow {other:?}")),
                        }
                    }
                    if targets.len() != sources.len() || targets.len() > pool {
                        problems.push(format!("{label}: pi_({i},{tt}) into {nu} is not injective"));
                    }
                    if !sources.is_empty() && !seen_checks.contains(&(nu.clone(), i, tt)) {
                        problems.push(format!("{label}: no bijection check at ({nu}, {i}, {tt})"));
                    }
                }
            }
        }
        for c in &g.checks {
            let want = cb.elements(&c.content).iter().filter(|b| b.t(c.vertex) == c.t).count();
            if c.pairs != want {
                problems.push(format!("{label}: {} pairs against {want} at {}", c.pairs, c.content));
            }
        }
        for order in [vec![0, 1], vec![1, 0]] {
            for nu in cb.contents_by_height() {
                let mut paths = BTreeSet::new();
                for b in cb.elements(&nu) {
                    let p = sbar(&cb, &g, &b.id, &order).unwrap();
                    if replay(&cb, &p).unwrap().as_ref() != Some(&b.id) {
                        problems.push(format!("{label}: replay of {} fails", b.id));
                    }
                    if !paths.insert(p) {
                        problems.push(format!("{label}: repeated path at {nu}"));
                    }
                }
            }
        }
        let (p, _) = suite_problems(m.clone(), 6, &["crystal"], &label);
        problems.extend(p);
        let swapped = QuiverDatum::new(&["2", "1"], &[("1", "2")]).unwrap();
        let m2 = module(swapped, vec![lam[1], lam[0]]);
        let (cb2, g2) = crystal(&m2, 6);
        if cb2.len() != cb.len() || g2.arrows.len() != g.arrows.len() {
            problems.push(format!("{label}: graph size changes when the vertices are declared in reverse"));
        }
    }
    conclude(7, "left graph bijections, path injectivity, order invariance, replay", t, None, problems);
}

fn quiver_file(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../quivers").join(name)
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hwcb")).args(args).output().expect("run hwcb");
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn criterion_8_determinism_and_cache() {
    let t = Instant::now();
    let mut problems = Vec::new();
    let cache = tempfile::tempdir().unwrap();
    let cache_dir = cache.path().to_str().unwrap().to_string();
    let configs = [
        ("a1_d3.json", "4"),
        ("a2_fundamental.json", "6"),
        ("a2_adjoint.json", "4"),
        ("a2_adjoint.json", "6"),
        ("kronecker.json", "4"),
    ];
    let commands: [&[&str]; 6] = [
        &["dims"],
        &["dims", "--format", "json"],
        &["basis"],
        &["graph"],
        &["graph", "--format", "dot"],
        &["verify"],
    ];
    let mut runs = 0;
    for (file, h) in configs {
        let path = quiver_file(file);
        let path = path.to_str().unwrap();
        for cmd in commands {
            let mut base: Vec<&str> = cmd.to_vec();
            base.extend(["--quiver", path, "--max-height", h]);
            let with = |extra: &[&str]| {
                let mut a = base.clone();
                a.extend_from_slice(extra);
                cli(&a)
            };
            let reference = with(&["--threads", "1"]);
            let variants = [
                with(&["--threads", "1"]),
                with(&["--threads", "4"]),
                with(&["--cache", &cache_dir]),
                with(&["--cache", &cache_dir, "--threads", "3"]),
            ];
            runs += 5;
            if reference.0 != 0 {
                problems.push(format!("{file} {cmd:?}: exit {}", reference.0));
            }
            for (k, v) in variants.iter().enumerate() {
                if v != &reference {
                    problems.push(format!("{file} {cmd:?}: variant {k} differs"));
                }
            }
        }
    }
    // In-process: equal renders across repeated runs and rayon pools.
    let m = module(a2(), vec![1, 1]);
    let render_all = || {
        let (cb, g) = crystal(&m, 6);
        let rows = dims_rows(&m, 6).unwrap();
        [
            render(&dims_json(&m, 6, &rows)),
            render(&basis_json(&cb, &g, &[0, 1]).unwrap()),
            render(&graph_json(&cb, &g, &[1, 0]).unwrap()),
        ]
    };
    let first = render_all();
    for threads in [1, 2, 8] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        if pool.install(render_all) != first {
            problems.push(format!("render differs with {threads} threads"));
        }
    }
    conclude(8, &format!("byte-identical output over {runs} CLI runs, thread counts and cache hits"), t, None, problems);
}
