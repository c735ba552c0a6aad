//! Acceptance gate: one line per criterion, nonzero exit on any failure.

mod common;

use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use graphlaw::hyperfinite::{path_cut, verify_cut};
use graphlaw::law::{ball_pushforward, convex_witness, dirac, integrate, law, mixture, oracle_pushforward, tv_distance};
use graphlaw::metric::{oracle_bi_infinite_path, oracle_finite, oracle_tree3, oracle_tree3_ball, rho, rho_value, RhoValue};
use graphlaw::pathspace::{from_point, path_graph, path_law, rho_tilde, strip_mass, to_point, PathPoint};
use graphlaw::trees::{spine_vertex, tree_ball, tree_law_closed};
use graphlaw::unimodular::{characterize, is_unimodular};
use graphlaw::{
    is_rooted_isomorphic, max_ball_size, orbit_size, BallOracle, ExtNat, FiniteSupportMeasure, Graph,
    ProximityResult, Rational, RootedGraph, Scalar,
};
use num_traits::{One, Signed, Zero};
use rand::Rng;

type Q = Rational;
type Outcome = Result<(), String>;

fn q(n: u64, d: u64) -> Q {
    <Q as Scalar>::ratio(n, d)
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn deg(g: &RootedGraph) -> Q {
    Q::from_usize_lossless(g.degree_at_root())
}

fn two_components() -> Graph {
    // a spider on 7 vertices and a triangle
    Graph::new(10, [(5, 4), (6, 4), (4, 3), (3, 1), (3, 0), (3, 2), (7, 9), (9, 8), (8, 7)]).unwrap()
}

fn c01_two_component_law() -> Outcome {
    let g = two_components();
    let mu = law::<Q>(&g).unwrap();
    check(mu.len() == 5, || format!("{} atoms", mu.len()))?;
    let component = |v| g.connected_component(v).unwrap();
    for (label, expected) in [(1, q(3, 10)), (4, q(1, 10)), (5, q(1, 10)), (6, q(2, 10)), (8, q(3, 10))] {
        let got = mu.mass_at(&component(label - 1));
        check(got == expected, || format!("vertex {label}: {got} != {expected}"))?;
    }
    check(is_rooted_isomorphic(&component(5), &component(6)), || "the two leaves at index 5 and 6 differ".into())?;
    check(orbit_size(&g, 5).unwrap() == 2 && orbit_size(&g, 7).unwrap() == 3, || "orbit sizes".into())
}

fn c02_triangle_distance() -> Outcome {
    let g = RootedGraph::new(Graph::complete(3), 0).unwrap();
    let h = RootedGraph::new(Graph::new(4, [(0, 1), (1, 2), (0, 2), (1, 3)]).unwrap(), 0).unwrap();
    let v = rho_value::<Q>(rho(&oracle_finite(g), &oracle_finite(h), 0));
    check(v == RhoValue::Exact(q(1, 2)), || format!("{v:?}"))
}

fn c03_path_laws() -> Outcome {
    for n in 1..=300 {
        let closed = path_law::<Q>(n).unwrap();
        let computed = law::<Q>(&path_graph(n).unwrap()).unwrap();
        check(closed == computed, || format!("n = {n}"))?;
    }
    Ok(())
}

fn c04_laws_unimodular() -> Outcome {
    let mut corpus = all_graphs(6);
    check(corpus.len() == 208, || format!("{} graphs on ≤ 6 vertices", corpus.len()))?;
    let mut r = rng(4);
    for _ in 0..200 {
        let n = r.gen_range(1..=12);
        let p = r.gen_range(0.05..0.6);
        corpus.push(random_graph(&mut r, n, p));
    }
    for g in &corpus {
        let verdict = is_unimodular(&law::<Q>(g).unwrap());
        check(verdict.is_unimodular(), || format!("{g:?}: {verdict:?}"))?;
    }
    Ok(())
}

fn c05_dirac_characterization() -> Outcome {
    let mut corpus = connected_corpus(5, 500, 8);
    check(corpus.len() >= 500, || "corpus too small".into())?;
    corpus.extend(circulants(8));
    corpus.push(Graph::new(6, (0..3).flat_map(|u| (3..6).map(move |v| (u, v)))).unwrap());
    corpus.push(Graph::new(8, (0..8).flat_map(|u| [0, 1, 2].map(|b| (u, u ^ (1 << b)))).filter(|(u, v)| u < v)).unwrap());
    let mut transitive = 0;
    for g in &corpus {
        let vt = brute_vertex_transitive(g);
        transitive += usize::from(vt);
        for o in 0..g.vertex_count() {
            let uni = is_unimodular(&dirac::<Q>(RootedGraph::new(g.clone(), o).unwrap())).is_unimodular();
            check(uni == vt, || format!("{g:?} root {o}: unimodular {uni}, transitive {vt}"))?;
        }
    }
    check(transitive >= 30, || format!("only {transitive} transitive graphs in the corpus"))
}

/// Connected circulant graphs on 3..=max_n vertices, one per connection set.
fn circulants(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 3..=max_n {
        for mask in 1u32..1 << (n / 2) {
            let jumps: Vec<usize> = (1..=n / 2).filter(|j| mask >> (j - 1) & 1 == 1).collect();
            let edges = (0..n).flat_map(|u| jumps.iter().map(move |j| (u, (u + j) % n)));
            let mut edges: Vec<_> = edges.map(|(u, v)| (u.min(v), u.max(v))).collect();
            edges.sort_unstable();
            edges.dedup();
            let g = Graph::new(n, edges).unwrap();
            if g.is_connected() {
                out.push(g);
            }
        }
    }
    out
}

/// A measure on the classes of `own`: `own` itself, one atom reweighted, or random weights.
fn random_sustained(r: &mut impl Rng, own: &FiniteSupportMeasure<Q>, trial: usize) -> FiniteSupportMeasure<Q> {
    if trial == 0 {
        return own.clone();
    }
    let atoms = own.atoms();
    let weights: Vec<Q> = match trial % 3 {
        // law with one atom nudged
        1 if atoms.len() > 1 => {
            let i = r.gen_range(0..atoms.len());
            atoms
                .iter()
                .enumerate()
                .map(|(j, a)| if i == j { a.mass.clone() * q(r.gen_range(2..5), 1) } else { a.mass.clone() })
                .collect()
        }
        // random subset, random weights
        _ => atoms
            .iter()
            .map(|_| if r.gen_bool(0.8) { q(r.gen_range(1..10), 1) } else { Q::zero() })
            .collect(),
    };
    let mut weights = weights;
    if weights.iter().all(Zero::is_zero) {
        weights[0] = Q::one();
    }
    let total = weights.iter().fold(Q::zero(), |s, w| s + w);
    let pairs = atoms
        .iter()
        .zip(weights)
        .filter(|(_, w)| !w.is_zero())
        .map(|(a, w)| (a.representative.clone(), w / total.clone()));
    FiniteSupportMeasure::from_atoms(pairs.collect::<Vec<_>>()).unwrap()
}

fn c06_law_characterization() -> Outcome {
    let mut r = rng(6);
    let (mut both_true, mut both_false) = (0, 0);
    for _ in 0..100 {
        let n = r.gen_range(1..=8);
        let p = r.gen_range(0.0..0.6);
        let g = random_connected(&mut r, n, p);
        let own = law::<Q>(&g).unwrap();
        for trial in 0..100 {
            let mu = random_sustained(&mut r, &own, trial);
            let c = characterize(&mu, &g).unwrap();
            check(c.is_unimodular == c.equals_law, || format!("{g:?}: {c:?}"))?;
            if c.equals_law {
                both_true += 1;
            } else {
                both_false += 1;
            }
        }
    }
    check(both_true >= 100 && both_false > 1000, || format!("{both_true} laws, {both_false} non-laws"))
}

fn c07_tree_closed_forms() -> Outcome {
    for k in 1..=10u32 {
        let computed = law::<Q>(tree_ball(k).graph()).unwrap();
        check(tree_law_closed::<Q>(k).unwrap() == computed, || format!("law of T_{k}"))?;
        let size = 3 * (1u64 << k) - 2;
        let expected = q(2, 1) - q(2, size);
        let got = integrate(&computed, deg);
        check(got == expected, || format!("mean degree of T_{k} is {got}"))?;
    }
    let k = 16;
    let t = tree_ball(k);
    let mu = law::<Q>(t.graph()).unwrap();
    let size = 3 * (1u64 << k) - 2;
    let bound = q(1, 1 << 16);
    for i in 1..=8u32 {
        let class = RootedGraph::new(t.graph().clone(), spine_vertex(k, i).unwrap()).unwrap();
        let gap = (mu.mass_at(&class) - q(1, 1 << i)).abs();
        check(gap < bound, || format!("i = {i}: gap {gap}"))?;
        check(gap == q(1, 1 << i) * q(2, size), || format!("i = {i}: gap {gap} off the exact value"))?;
    }
    Ok(())
}

fn c08_counterexample() -> Outcome {
    let center_degree = oracle_tree3().ball_at(1).degree_at_root();
    check(center_degree == 3, || format!("degree {center_degree}"))?;
    let mut last = Q::zero();
    for k in 0..=16u32 {
        let mean = integrate(&law::<Q>(tree_ball(k).graph()).unwrap(), deg);
        check(mean <= q(2, 1) && mean < q(3, 1), || format!("k = {k}: ∫deg = {mean}"))?;
        check(mean >= last, || format!("k = {k}: ∫deg decreased"))?;
        last = mean;
        let p = rho(&oracle_tree3_ball(k), &oracle_tree3(), k as usize + 2);
        check(p == ProximityResult::AgreeUpTo(k as usize), || format!("k = {k}: {p:?}"))?;
    }
    Ok(())
}

fn random_coordinate(r: &mut impl Rng) -> ExtNat {
    if r.gen_bool(0.2) {
        ExtNat::Infinite
    } else {
        ExtNat::Finite(r.gen_range(0..=50))
    }
}

fn random_point(r: &mut impl Rng) -> PathPoint {
    let (a, b) = (random_coordinate(r), random_coordinate(r));
    PathPoint::new(a.min(b), a.max(b)).unwrap()
}

fn c09_path_isometry() -> Outcome {
    let mut r = rng(9);
    let mut undecided = 0;
    for i in 0..500 {
        let p = random_point(&mut r);
        // bias some pairs towards shared coordinates
        let q_ = if i % 4 == 0 { PathPoint::new(p.x(), random_coordinate(&mut r).max(p.x())).unwrap() } else { random_point(&mut r) };
        let expected = rho_tilde::<Q>(p, q_);
        match rho_value::<Q>(rho(&from_point(p), &from_point(q_), 200)) {
            RhoValue::Exact(v) => check(v == expected, || format!("{p} vs {q_}: {v} != {expected}"))?,
            RhoValue::AtMost(_) => {
                undecided += 1;
                check(p == q_ && !p.y().is_finite(), || format!("{p} vs {q_} undecided"))?;
            }
        }
    }
    let _ = undecided;
    Ok(())
}

fn c10_ultrametric() -> Outcome {
    let mut r = rng(10);
    let dist = |a: &RootedGraph, b: &RootedGraph| {
        rho_value::<Q>(rho(&oracle_finite(a.clone()), &oracle_finite(b.clone()), 0)).exact().unwrap()
    };
    for _ in 0..1000 {
        let (a, b, c) = (random_rooted(&mut r, 10), random_rooted(&mut r, 10), random_rooted(&mut r, 10));
        check(dist(&a, &a).is_zero(), || "identity".into())?;
        let ab = dist(&a, &b);
        check(ab == dist(&b, &a), || "symmetry".into())?;
        check(ab.is_zero() == is_rooted_isomorphic(&a, &b), || "zero distance iff isomorphic".into())?;
        let (ac, cb) = (dist(&a, &c), dist(&c, &b));
        check(ab <= ac.clone().max(cb.clone()), || format!("{ab} > max({ac}, {cb})"))?;
    }
    Ok(())
}

fn c11_mixtures() -> Outcome {
    let mut r = rng(11);
    let pick = |r: &mut rand_chacha::ChaCha8Rng| {
        let n = r.gen_range(1..=6);
        let p = r.gen_range(0.0..0.8);
        random_graph(r, n, p)
    };
    for _ in 0..100 {
        let (g, h) = (pick(&mut r), pick(&mut r));
        let (m, n) = loop {
            let pair = (r.gen_range(0..=4usize), r.gen_range(0..=4usize));
            if pair != (0, 0) {
                break pair;
            }
        };
        let lhs = law::<Q>(&g.replicate(m).disjoint_union(&h.replicate(n))).unwrap();
        let (mg, nh) = ((m * g.vertex_count()) as u64, (n * h.vertex_count()) as u64);
        let rhs = mixture(&law(&g).unwrap(), &law(&h).unwrap(), &q(mg, mg + nh)).unwrap();
        check(lhs == rhs, || format!("m = {m}, n = {n}"))?;

        let den = r.gen_range(1..=12u64);
        let t = q(r.gen_range(0..=den), den);
        let witness = convex_witness(&g, &h, &t).unwrap();
        let mixed = mixture(&law(&g).unwrap(), &law(&h).unwrap(), &t).unwrap();
        check(law::<Q>(&witness).unwrap() == mixed, || format!("t = {t}"))?;
    }
    Ok(())
}

fn c12_strip_masses() -> Outcome {
    for n in 1..=50usize {
        let mu = path_law::<Q>(n).unwrap();
        for m in 1..=n + 1 {
            let brute = mu.atoms().iter().fold(Q::zero(), |s, a| {
                let x = to_point(&a.representative).unwrap().x();
                if x >= ExtNat::from(m) {
                    s + a.mass.clone()
                } else {
                    s
                }
            });
            let closed = strip_mass::<Q>(n, m).unwrap();
            check(closed == brute, || format!("n = {n}, m = {m}: {closed} != {brute}"))?;
        }
    }
    Ok(())
}

fn c13_cycle_marginals() -> Outcome {
    for r in 0..=6usize {
        let line = oracle_pushforward::<Q, _>(&oracle_bi_infinite_path(), r);
        for n in 2 * r + 2..=2 * r + 14 {
            let n = n.max(3);
            let cyc = ball_pushforward(&law::<Q>(&Graph::cycle(n).unwrap()).unwrap(), r);
            let d = tv_distance(&cyc, &line).unwrap();
            check(d.is_zero(), || format!("r = {r}, n = {n}: {d}"))?;
        }
    }
    Ok(())
}

fn c14_hyperfinite() -> Outcome {
    let mut sizes: Vec<usize> = (1..=300).collect();
    let mut r = rng(14);
    sizes.extend((0..40).map(|_| r.gen_range(301..100_000)));
    sizes.extend([1_000, 10_000, 65_536, 99_999, 100_000]);
    for eps in [q(1, 2), q(1, 10), q(1, 100)] {
        for &n in &sizes {
            let w = path_cut(n, &eps).unwrap();
            check(w.removed_edges.len() == n / w.k, || format!("n = {n}, ε = {eps}: |S| = {}", w.removed_edges.len()))?;
            check(verify_cut(&path_graph(n + 1).unwrap(), &w).unwrap(), || format!("n = {n}, ε = {eps}: invalid"))?;
        }
    }
    Ok(())
}

fn c15_ball_bound() -> Outcome {
    for r in 1..=12u32 {
        let size = tree_ball(r).vertex_count() as u128;
        let bound = max_ball_size(3, r).unwrap();
        check(size == bound && bound <= 4u128.pow(r), || format!("r = {r}: {size} vs {bound}"))?;
    }
    Ok(())
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria: [Criterion; 15] = [
        ("law of the ten-vertex example graph", c01_two_component_law, secs(1)),
        ("distance between the triangle pair is 1/2", c02_triangle_distance, secs(1)),
        ("closed-form path laws, n ≤ 300", c03_path_laws, secs(10)),
        ("laws are unimodular", c04_laws_unimodular, secs(60)),
        ("Dirac unimodular iff vertex-transitive", c05_dirac_characterization, None),
        ("unimodular sustained measures are the law", c06_law_characterization, None),
        ("tree laws and limit masses", c07_tree_closed_forms, None),
        ("tree balls converge, their laws do not", c08_counterexample, None),
        ("path space isometry", c09_path_isometry, None),
        ("ultrametric axioms", c10_ultrametric, None),
        ("mixtures and convex witnesses", c11_mixtures, None),
        ("strip masses", c12_strip_masses, None),
        ("cycle marginals match the line", c13_cycle_marginals, None),
        ("hyperfinite path cuts", c14_hyperfinite, secs(5)),
        ("ball-size bound attained by the 3-regular tree", c15_ball_bound, None),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(()), Some(b)) if elapsed > *b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(()) => println!("criterion {:2} PASS {:>9.2?}  {name}", i + 1, elapsed),
            Err(why) => {
                failed += 1;
                println!("criterion {:2} FAIL {:>9.2?}  {name}: {why}", i + 1, elapsed);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
