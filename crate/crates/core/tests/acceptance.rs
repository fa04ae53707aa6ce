//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero when any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use talpha::balsep::{balanced_separator_central_bag, extend_separator, weighted_separator_oracle};
use talpha::cover::{binomial2, chi_bar, clique_cover_c4free};
use talpha::cutsets::{atom_decomposition, find_clique_cutset, trisimplicial_vertex};
use talpha::gen::{corpus, families, gen_random_class_c, CorpusEntry};
use talpha::hubdiv::hub_division;
use talpha::mwis::{mwis_bruteforce, mwis_td, STATE_GUARD};
use talpha::separations::{balanced_vertices, leq_a_minimal};
use talpha::structures::{
    enumerate_holes, find_3pc_or_wheel, find_structure, find_wheel, Budget, Search, StructureKind,
    WheelFilter,
};
use talpha::treedec::{build_td, g_bound, ta_pipeline, td_stats, validate_td, TreeDecomposition};
use talpha::weights::Rational;
use talpha::{Graph, VertexSet, WeightFunction};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

// Independent oracles.

fn alpha_brute(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 20);
    let adj: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |m, u| m | 1 << u))
        .collect();
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|v| s >> v & 1 == 0 || adj[v] & s == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

fn colorable(g: &Graph, k: usize) -> bool {
    fn go(g: &Graph, v: usize, k: usize, col: &mut Vec<usize>) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v).iter().all(|u| u >= v || col[u] != c) {
                col[v] = c;
                if go(g, v + 1, k, col) {
                    return true;
                }
            }
        }
        false
    }
    go(g, 0, k, &mut vec![usize::MAX; g.n()])
}

fn class_c(n_lo: usize, n_hi: usize, count: usize, seed: u64) -> Vec<CorpusEntry> {
    corpus(count, n_lo, n_hi, seed)
}

/// Atoms of corpus graphs without a clique cutset.
fn atoms(entries: &[CorpusEntry]) -> Vec<Graph> {
    let mut out = Vec::new();
    for e in entries {
        for a in &atom_decomposition(&e.graph).atoms {
            let (h, _) = e.graph.induced(a);
            if find_clique_cutset(&h).is_none() {
                out.push(h);
            }
        }
    }
    out
}

/// Atoms that are neither cliques nor holes.
fn nc_atoms(entries: &[CorpusEntry]) -> Vec<Graph> {
    atoms(entries)
        .into_iter()
        .filter(|h| !h.is_complete() && !h.is_hole_graph())
        .collect()
}

fn weight_family(h: &Graph, rng: &mut ChaCha8Rng) -> Vec<WeightFunction> {
    let mut ws = vec![WeightFunction::uniform(h.n())];
    for _ in 0..3 {
        let m: Vec<u64> = (0..h.n()).map(|_| rng.gen_range(0..10)).collect();
        if m.iter().sum::<u64>() > 0 {
            ws.push(WeightFunction::from_u64_masses(&m).unwrap());
        }
    }
    ws.extend((0..h.n()).map(|v| WeightFunction::point(h.n(), v)));
    ws
}

fn c1_td_validity() -> Outcome {
    let start = Instant::now();
    let entries = class_c(12, 28, 200, 1000);
    let results: Vec<Result<bool, String>> = entries
        .par_iter()
        .map(|e| match ta_pipeline(&e.graph) {
            Ok(r) => Ok(validate_td(&e.graph, &r.td).0),
            Err(err) => Err(err.to_string()),
        })
        .collect();
    let elapsed = start.elapsed();
    let bad = results.iter().filter(|r| !matches!(r, Ok(true))).count();
    let in_c = entries.iter().filter(|e| e.verdict.is_in()).count();
    outcome(
        bad == 0 && in_c == entries.len() && elapsed <= Duration::from_secs(600),
        format!(
            "{} instances in C, {bad} invalid or failed, {:.1}s",
            in_c,
            elapsed.as_secs_f64()
        ),
    )
}

fn c2_wheel_free_cover() -> Outcome {
    let mut graphs = Vec::new();
    let mut seed = 0;
    while graphs.len() < 120 && seed < 20_000 {
        let n = 8 + (seed as usize % 13);
        if let Some(g) = gen_random_class_c(n, [0.15, 0.25][seed as usize % 2], 50_000 + seed) {
            if matches!(find_3pc_or_wheel(&g, Budget::UNLIMITED), Search::Absent) {
                graphs.push(g);
            }
        }
        seed += 1;
    }
    let covers: Vec<Option<(usize, bool)>> = graphs
        .par_iter()
        .map(|g| {
            let r = ta_pipeline(g).ok()?;
            if !validate_td(g, &r.td).0 {
                return None;
            }
            let s = td_stats(g, &r.td);
            Some((s.cover, s.cover_exact))
        })
        .collect();
    let bad = covers
        .iter()
        .filter(|c| !matches!(c, Some((k, true)) if *k <= 2))
        .count();
    let max = covers.iter().flatten().map(|c| c.0).max().unwrap_or(0);
    outcome(
        graphs.len() >= 100 && bad == 0,
        format!(
            "{} wheel-free instances, max exact bag cover {max}, {bad} violations",
            graphs.len()
        ),
    )
}

struct CentralRuns {
    runs: usize,
    cover_violations: usize,
    max_cover: usize,
    hd_errors: usize,
    sep_errors: usize,
    ext_runs: usize,
    ext_violations: Vec<String>,
}

fn central_bag_runs() -> CentralRuns {
    let atoms = nc_atoms(&class_c(12, 28, 200, 7));
    let per: Vec<CentralRuns> = atoms
        .par_iter()
        .enumerate()
        .map(|(i, h)| {
            let mut r = CentralRuns {
                runs: 0,
                cover_violations: 0,
                max_cover: 0,
                hd_errors: 0,
                sep_errors: 0,
                ext_runs: 0,
                ext_violations: Vec::new(),
            };
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            for w in weight_family(h, &mut rng) {
                let Ok(hd) = hub_division(h, &w) else {
                    r.hd_errors += 1;
                    continue;
                };
                r.runs += 1;
                let x = match balanced_separator_central_bag(h, &hd) {
                    Ok(x) => x,
                    Err(_) => {
                        r.sep_errors += 1;
                        continue;
                    }
                };
                r.max_cover = r.max_cover.max(x.cover.len());
                if x.cover.len() > 9 || x.cover.iter().any(|k| !h.is_clique(k)) {
                    r.cover_violations += 1;
                }
                r.ext_runs += 1;
                match extend_separator(h, &w, &hd, &x) {
                    Err(e) => r.ext_violations.push(e.to_string()),
                    Ok(ext) => r
                        .ext_violations
                        .extend(extension_claims(&ext, x.cover.len())),
                }
            }
            r
        })
        .collect();
    per.into_iter().fold(
        CentralRuns {
            runs: 0,
            cover_violations: 0,
            max_cover: 0,
            hd_errors: 0,
            sep_errors: 0,
            ext_runs: 0,
            ext_violations: Vec::new(),
        },
        |mut a, b| {
            a.runs += b.runs;
            a.cover_violations += b.cover_violations;
            a.max_cover = a.max_cover.max(b.max_cover);
            a.hd_errors += b.hd_errors;
            a.sep_errors += b.sep_errors;
            a.ext_runs += b.ext_runs;
            a.ext_violations.extend(b.ext_violations);
            a
        },
    )
}

/// Recomputes the auxiliary-graph claims of an extension from its parts.
fn extension_claims(ext: &talpha::balsep::Extension, t: usize) -> Vec<String> {
    let mut out = Vec::new();
    let Some(aux) = &ext.aux else {
        return out;
    };
    let h = &aux.h;
    let r = aux.r();
    let (core_g, _) = h.induced(&aux.core);
    for hole in enumerate_holes(&core_g, 1_000_000).holes {
        if hole.len() > 5 * t {
            out.push(format!("core hole of length {}", hole.len()));
        }
    }
    for v in 0..h.n() {
        let inside = aux.core.contains(v);
        let deg = if inside {
            h.neighbors(v).intersection_len(&aux.core)
        } else {
            h.degree(v)
        };
        if (inside && deg > 5) || (!inside && deg > 1) {
            out.push(format!("degree {deg} at node {v}"));
        }
    }
    for j in r..h.n() {
        let attach = h.neighbors(j).iter().filter(|&i| i < r).count();
        if attach > 3 * t {
            out.push(format!("{attach} attachments at b-node {}", j - r));
        }
    }
    if ext.k != ext.z.len().saturating_sub(1) {
        out.push("k does not match |Z|".into());
    }
    if ext.z_prime.len() > 5 * (ext.k + 1) {
        out.push(format!("|Z'| = {} exceeds 5(k+1)", ext.z_prime.len()));
    }
    out
}

fn c3_central_bag(runs: &CentralRuns) -> Outcome {
    outcome(
        runs.runs > 0 && runs.cover_violations == 0 && runs.sep_errors == 0,
        format!(
            "{} central bag runs, max cover {}, {} violations, {} errors, {} weightings without a division",
            runs.runs, runs.max_cover, runs.cover_violations, runs.sep_errors, runs.hd_errors
        ),
    )
}

fn c7_extension(runs: &CentralRuns) -> Outcome {
    let first = runs.ext_violations.first().cloned().unwrap_or_default();
    outcome(
        runs.ext_runs > 0 && runs.ext_violations.is_empty(),
        format!(
            "{} extension runs, {} violations {first}",
            runs.ext_runs,
            runs.ext_violations.len()
        ),
    )
}

fn c4_trisimplicial() -> Outcome {
    let entries = class_c(6, 20, 520, 2000);
    let bad = entries
        .par_iter()
        .filter(|e| match trisimplicial_vertex(&e.graph) {
            Ok(t) => {
                let mut cov = e.graph.empty_set();
                t.cliques.iter().for_each(|k| cov.union_with(k));
                !(t.cliques.len() <= 3
                    && t.cliques.iter().all(|k| e.graph.is_clique(k))
                    && &cov == e.graph.neighbors(t.v))
            }
            Err(_) => true,
        })
        .count();
    outcome(
        bad == 0 && entries.len() >= 500,
        format!("{} instances, {bad} failures", entries.len()),
    )
}

fn random_c4_free(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
                let g = Graph::from_edges(n, &edges).unwrap();
                if !matches!(
                    find_structure(&g, StructureKind::C4, Budget::UNLIMITED),
                    Search::Absent
                ) {
                    edges.pop();
                }
            }
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn c5_wagon() -> Outcome {
    let bad: Vec<String> = (0..1000u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(i);
            let n = 4 + (i as usize % 13);
            let g = random_c4_free(n, [0.2, 0.4, 0.6][i as usize % 3], &mut rng);
            let a = alpha_brute(&g);
            match clique_cover_c4free(&g) {
                Ok(c) if c.len() <= binomial2(a + 1) && c.verify(&g, &g.all()) => None,
                Ok(c) => Some(format!("seed {i}: {} cliques, alpha {a}", c.len())),
                Err(e) => Some(format!("seed {i}: {e}")),
            }
        })
        .collect();
    outcome(
        bad.is_empty(),
        format!(
            "1000 instances, {} violations {}",
            bad.len(),
            bad.first().cloned().unwrap_or_default()
        ),
    )
}

fn c6_build_td() -> Outcome {
    let k = 9;
    let bound = g_bound(k);
    let atoms = nc_atoms(&class_c(12, 28, 60, 3000));
    let oracle = |g: &Graph, w: &WeightFunction| weighted_separator_oracle(g, w);
    let results: Vec<Result<usize, String>> = atoms
        .par_iter()
        .map(|h| {
            let td = build_td(h, &oracle, k).map_err(|e| e.to_string())?;
            if !validate_td(h, &td).0 {
                return Err("invalid decomposition".into());
            }
            Ok(td_stats(h, &td).cover)
        })
        .collect();
    let errors = results.iter().filter(|r| r.is_err()).count();
    let max = results.iter().flatten().copied().max().unwrap_or(0);
    outcome(
        !atoms.is_empty() && errors == 0 && max <= bound,
        format!(
            "{} atoms, k = {k}, bound {bound}, max bag cover {max}, {errors} errors",
            atoms.len()
        ),
    )
}

fn c8_poset() -> Outcome {
    let graphs = atoms(&class_c(6, 20, 300, 4000));
    let (checked, bad): (usize, Vec<String>) = graphs
        .par_iter()
        .enumerate()
        .map(|(i, g)| {
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let mut bad = Vec::new();
            let mut checked = 0;
            for w in weight_family(g, &mut rng).into_iter().take(4) {
                let u = balanced_vertices(g, &w).1;
                let lq = match leq_a_minimal(g, &w, &u) {
                    Ok(l) => l,
                    Err(err) => {
                        bad.push(err.to_string());
                        continue;
                    }
                };
                checked += 1;
                let us = u.to_vec();
                for &x in &us {
                    for &y in &us {
                        if x != y && lq.leq(x, y) && lq.leq(y, x) {
                            bad.push(format!("antisymmetry {x} {y}"));
                        }
                        for &z in &us {
                            if lq.leq(x, y) && lq.leq(y, z) && !lq.leq(x, z) {
                                bad.push(format!("transitivity {x} {y} {z}"));
                            }
                        }
                    }
                }
            }
            (checked, bad)
        })
        .reduce(
            || (0, Vec::new()),
            |mut a, b| {
                a.0 += b.0;
                a.1.extend(b.1);
                a
            },
        );
    outcome(
        bad.is_empty(),
        format!("{checked} weighted instances, {} violations", bad.len()),
    )
}

fn c9_mwis() -> Outcome {
    let start = Instant::now();
    let entries = class_c(6, 20, 1000, 5000);
    let bad: Vec<String> = entries
        .par_iter()
        .enumerate()
        .filter_map(|(i, e)| {
            let g = &e.graph;
            let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
            let w: Vec<Rational> = (0..g.n())
                .map(|_| {
                    Rational::new(
                        rng.gen_range(0..20i64).into(),
                        rng.gen_range(1..7i64).into(),
                    )
                })
                .collect();
            let td = match ta_pipeline(g) {
                Ok(r) => r.td,
                Err(err) => return Some(format!("instance {i}: {err}")),
            };
            let a = mwis_td(g, &w, &td, STATE_GUARD).map_err(|e| e.to_string());
            let b = mwis_bruteforce(g, &w).map_err(|e| e.to_string());
            match (a, b) {
                (Ok(a), Ok(b)) if a.value == b.value && g.is_stable(&a.set) => None,
                (a, b) => Some(format!("instance {i}: {a:?} vs {b:?}")),
            }
        })
        .collect();
    let elapsed = start.elapsed();
    outcome(
        bad.is_empty() && elapsed <= Duration::from_secs(300),
        format!(
            "{} instances, {} mismatches, {:.1}s",
            entries.len(),
            bad.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn c10_gap() -> Outcome {
    let g = families::ta_tc_gap(4).unwrap();
    let half_n = g.n() / 2;
    let td = TreeDecomposition::single(g.all());
    let valid = validate_td(&g, &td).0;
    // A stable set of a complete join lies on one side.
    let joined = (0..half_n).all(|u| (half_n..g.n()).all(|v| g.adjacent(u, v)));
    let sides = [0..half_n, half_n..g.n()].map(|r| g.induced(&VertexSet::from_iter(g.n(), r)).0);
    let ind = if joined {
        sides.iter().map(alpha_brute).max().unwrap()
    } else {
        usize::MAX
    };
    let grotzsch = families::mycielski(4).unwrap();
    let chi_oracle = (1..=grotzsch.n())
        .find(|&k| colorable(&grotzsch, k))
        .unwrap();
    let half = VertexSet::from_iter(g.n(), 0..half_n);
    let cb = chi_bar(&g, &half);
    outcome(
        valid && ind <= 2 && cb == 4 && chi_oracle == 4,
        format!("single-bag decomposition independence {ind}, half clique cover {cb}, Grötzsch chromatic number {chi_oracle}"),
    )
}

/// Adjacent v1, v2 off a hole, each with two nonadjacent neighbors on it,
/// share a neighbor on the hole.
fn common_neighbor_violations(g: &Graph) -> usize {
    let mut bad = 0;
    for hole in enumerate_holes(g, 1_000_000).holes {
        let h = VertexSet::from_iter(g.n(), hole.iter().copied());
        let qualifies = |v: usize| {
            let nb = g.neighbors(v).intersection(&h).to_vec();
            nb.iter()
                .any(|&a| nb.iter().any(|&b| a != b && !g.adjacent(a, b)))
        };
        let outside: Vec<usize> = (0..g.n())
            .filter(|&v| !h.contains(v) && qualifies(v))
            .collect();
        for (i, &v1) in outside.iter().enumerate() {
            for &v2 in &outside[i + 1..] {
                if g.adjacent(v1, v2)
                    && !g.neighbors(v1).intersection(g.neighbors(v2)).intersects(&h)
                {
                    bad += 1;
                }
            }
        }
    }
    bad
}

fn c11_common_neighbor() -> Outcome {
    let entries = class_c(8, 24, 200, 6000);
    let (used, bad) = entries
        .par_iter()
        .filter(|e| {
            matches!(
                find_structure(&e.graph, StructureKind::Theta, Budget::UNLIMITED),
                Search::Absent
            ) && matches!(
                find_wheel(&e.graph, WheelFilter::Even, Budget::UNLIMITED),
                Search::Absent
            )
        })
        .map(|e| (1usize, common_neighbor_violations(&e.graph)))
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    outcome(
        used > 0 && bad == 0,
        format!("{used} instances, {bad} violations"),
    )
}

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

fn main() -> ExitCode {
    let runs = central_bag_runs();
    let criteria: Vec<(&str, Criterion)> = vec![
        ("tree decomposition validity", Box::new(c1_td_validity)),
        (
            "wheel-free bag cover at most 2",
            Box::new(c2_wheel_free_cover),
        ),
        (
            "central bag separator cover at most 9",
            Box::new(|| c3_central_bag(&runs)),
        ),
        (
            "trisimplicial vertex certificates",
            Box::new(c4_trisimplicial),
        ),
        ("C4-free clique cover bound", Box::new(c5_wagon)),
        ("recursive decomposition bag bound", Box::new(c6_build_td)),
        ("extension claims", Box::new(|| c7_extension(&runs))),
        ("partial order axioms", Box::new(c8_poset)),
        ("MWIS agreement with brute force", Box::new(c9_mwis)),
        ("independence versus clique cover gap", Box::new(c10_gap)),
        (
            "common neighbor property on holes",
            Box::new(c11_common_neighbor),
        ),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!(
            "{} criterion {:>2} {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
