//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report is always
//! printed. Exits non-zero if a criterion fails that is not listed in
//! `KNOWN_UNATTAINABLE`, or if a listed one fails in an unexpected way.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use recolor_core::enumerate::{all_graphs, proper_colorings};
use recolor_core::fpt::{recolor, recurse_call_bound, FptOptions, SubsetBound};
use recolor_core::gadgets::{
    bk_sequence, build_bk, build_forbidding_path, colorguard_check, gadget_abstraction_check,
    list_to_plain, np_reduce, np_witness, shift_path, w1_reduce, w1_witness,
};
use recolor_core::oracle::{distinct_colors, oracle_distance, separator_holds, OracleOptions};
use recolor_core::xp::{generated_bound, solve_xp, XpOptions};
use recolor_core::{
    used_color_lists, verify_sequence, Color, ColorLists, ColorSet, Graph, Instance,
    RecolorSequence,
};

/// Criteria that cannot be met as stated; see the README.
const KNOWN_UNATTAINABLE: &[usize] = &[4];

/// Exhaustive-suite limits.
const MAX_N: usize = 4;
const PALETTES: [u32; 2] = [2, 3];
const MAX_ELL: usize = 5;

/// Random instances for the list-to-plain check.
const LIST_INSTANCES: usize = 40;
const B3_BUDGET: Duration = Duration::from_secs(60);

struct Outcome {
    pass: bool,
    detail: String,
    /// For criteria in `KNOWN_UNATTAINABLE`: whether the failure has exactly
    /// the documented shape.
    expected_shape: bool,
}

impl Outcome {
    fn pass(detail: impl Into<String>) -> Self {
        Outcome {
            pass: true,
            detail: detail.into(),
            expected_shape: false,
        }
    }

    fn fail(detail: impl Into<String>) -> Self {
        Outcome {
            pass: false,
            detail: detail.into(),
            expected_shape: false,
        }
    }

    fn check(pass: bool, detail: impl Into<String>) -> Self {
        if pass {
            Self::pass(detail)
        } else {
            Self::fail(detail)
        }
    }
}

fn weight_ok(alpha: &[Color], seq: &RecolorSequence) -> bool {
    used_color_lists(alpha, seq).weight() <= seq.len()
}

#[derive(Default)]
struct FptCounters {
    runs: u64,
    max_calls: u64,
    worst_ratio: f64,
    over_bound: u64,
    base_calls: u64,
    slack_violations: u64,
}

/// Criteria 1 and 9 share one pass over the exhaustive suite.
fn exhaustive() -> (Outcome, Outcome) {
    let mut instances = 0u64;
    let mut yes = 0u64;
    let mut problems: Vec<String> = Vec::new();
    let mut counters = FptCounters::default();
    for n in 0..=MAX_N {
        for g in all_graphs(n) {
            for k in PALETTES {
                let lists = ColorLists::full(n, k).unwrap();
                let colorings = proper_colorings(&g, &lists);
                for a in &colorings {
                    for b in &colorings {
                        let mut note = |msg: String| {
                            if problems.len() < 10 {
                                problems.push(format!(
                                    "n={n} edges={:?} k={k} a={a:?} b={b:?}: {msg}",
                                    g.edges()
                                ));
                            }
                        };
                        let oracle =
                            oracle_distance(&g, &lists, a, b, &OracleOptions::default()).unwrap();
                        if let (Some(d), Some(w)) = (oracle.distance, &oracle.witness) {
                            if !verify_sequence(&g, &lists, a, b, d, w).unwrap().is_valid()
                                || w.len() != d
                            {
                                note("oracle witness invalid".into());
                            }
                            if !weight_ok(a, w) {
                                note("oracle witness breaks the weight bound".into());
                            }
                        }
                        for ell in 0..=MAX_ELL {
                            instances += 1;
                            let expect = oracle.distance.is_some_and(|d| d <= ell);
                            yes += u64::from(expect);

                            let xp =
                                solve_xp(&g, &lists, a, b, ell, &XpOptions::default()).unwrap();
                            if xp.witness.is_some() != expect {
                                note(format!("xp disagrees at ell={ell}"));
                            }
                            for (d, &count) in xp.rounds.iter().enumerate() {
                                if count > generated_bound(n, k, d) {
                                    note(format!("xp round {d} generated {count}"));
                                }
                            }
                            let fpt = recolor(&g, k, ell, a, b, &FptOptions::default()).unwrap();
                            if fpt.witness.is_some() != expect {
                                note(format!("fpt disagrees at ell={ell}"));
                            }
                            for w in xp.witness.iter().chain(fpt.witness.iter()) {
                                if !verify_sequence(&g, &lists, a, b, ell, w)
                                    .unwrap()
                                    .is_valid()
                                {
                                    note(format!("invalid witness at ell={ell}"));
                                }
                                if !weight_ok(a, w) {
                                    note(format!("witness breaks the weight bound at ell={ell}"));
                                }
                            }

                            let s = fpt.stats;
                            let bound = recurse_call_bound(k, ell);
                            counters.runs += 1;
                            counters.max_calls = counters.max_calls.max(s.recurse_calls);
                            counters.worst_ratio = counters
                                .worst_ratio
                                .max(s.recurse_calls as f64 / bound as f64);
                            counters.over_bound += u64::from(s.recurse_calls > bound);
                            counters.base_calls += s.list_recolor_calls;
                            counters.slack_violations += u64::from(s.max_base_slack > ell);
                        }
                    }
                }
            }
        }
    }
    let c1 = Outcome::check(
        problems.is_empty(),
        if problems.is_empty() {
            format!("{instances} instances ({yes} YES), oracle = xp = fpt, all witnesses valid")
        } else {
            format!(
                "{instances} instances; first problems: {}",
                problems.join(" | ")
            )
        },
    );
    let c9 = Outcome::check(
        counters.over_bound == 0 && counters.slack_violations == 0,
        format!(
            "{} fpt runs: max {} recursive calls, worst calls/2^(k(ell+1)) = {:.4}, {} over bound; {} list searches, {} entered with slack > ell",
            counters.runs,
            counters.max_calls,
            counters.worst_ratio,
            counters.over_bound,
            counters.base_calls,
            counters.slack_violations
        ),
    );
    (c1, c9)
}

fn criterion_2() -> Outcome {
    let mut lengths = Vec::new();
    for k in 1..=6usize {
        let bk = build_bk(k).unwrap();
        let q = 2 * k as u32 - 1;
        let base: Vec<Color> = (1..=k as Color).collect();
        let spare: Vec<Color> = (k as Color + 1..=q).collect();
        let seq = bk_sequence(k, &base, &spare).unwrap();
        let lists = ColorLists::full(k * k, q).unwrap();
        let ell = 2 * k * k;
        if !verify_sequence(&bk.graph, &lists, &bk.alpha, &bk.beta, ell, &seq)
            .unwrap()
            .is_valid()
        {
            return Outcome::fail(format!("k={k}: sequence invalid"));
        }
        if !weight_ok(&bk.alpha, &seq) {
            return Outcome::fail(format!("k={k}: weight bound broken"));
        }
        let trace = seq.trace(&bk.alpha).unwrap();
        let widest = trace.iter().map(|c| distinct_colors(c)).max().unwrap();
        if widest > q as usize {
            return Outcome::fail(format!("k={k}: a coloring uses {widest} colors"));
        }
        if k >= 2 && widest != q as usize {
            return Outcome::fail(format!("k={k}: no coloring uses {q} colors"));
        }
        lengths.push(format!("k={k}:{}<={ell}", seq.len()));
    }
    Outcome::pass(format!("valid, lengths {}", lengths.join(" ")))
}

fn criterion_3() -> Outcome {
    let bk = build_bk(2).unwrap();
    let held = separator_holds(
        &bk.graph,
        3,
        &bk.alpha,
        &bk.beta,
        |g| distinct_colors(g) >= 3,
        &OracleOptions::default(),
    )
    .unwrap();
    let lists = ColorLists::full(4, 3).unwrap();
    let d = oracle_distance(
        &bk.graph,
        &lists,
        &bk.alpha,
        &bk.beta,
        &OracleOptions::default(),
    )
    .unwrap()
    .distance;
    if !held || d != Some(3) {
        return Outcome::fail(format!("B_2: separator {held}, distance {d:?}"));
    }
    let b3 = build_bk(3).unwrap();
    let opts = OracleOptions {
        deadline: Some(Instant::now() + B3_BUDGET),
        ..Default::default()
    };
    let started = Instant::now();
    let optional = match separator_holds(
        &b3.graph,
        5,
        &b3.alpha,
        &b3.beta,
        |g| distinct_colors(g) >= 5,
        &opts,
    ) {
        Ok(true) => {
            let lists = ColorLists::full(9, 5).unwrap();
            let free =
                oracle_distance(&b3.graph, &lists, &b3.alpha, &b3.beta, &opts).map(|r| r.distance);
            format!(
                "B_3 (q=5) separator holds, unrestricted distance {free:?} ({:.1}s)",
                started.elapsed().as_secs_f64()
            )
        }
        Ok(false) => return Outcome::fail("B_3 (q=5): separator fails"),
        Err(e) => format!("B_3 (q=5) skipped: {e}"),
    };
    Outcome::pass(format!("B_2 separator holds, distance 3; {optional}"))
}

/// Independent check of one path against the definition, using
/// `shift_path` for the obligations.
fn path_obligations_ok(lu: ColorSet, lv: ColorSet, a: Color, b: Color) -> Result<(), String> {
    let fp = build_forbidding_path(lu, lv, a, b).map_err(|e| e.to_string())?;
    let colorings = proper_colorings(&fp.graph, &fp.lists);
    let realized: BTreeSet<(Color, Color)> = colorings.iter().map(|c| (c[0], c[6])).collect();
    let expected: BTreeSet<(Color, Color)> = lu
        .iter()
        .flat_map(|x| lv.iter().map(move |y| (x, y)))
        .filter(|&p| p != (a, b))
        .collect();
    if realized != expected {
        return Err(format!("admissible pairs {realized:?}"));
    }
    for cur in &colorings {
        for &(x, y) in &expected {
            if x != cur[0] && y != cur[6] {
                continue;
            }
            let seq = shift_path(&fp, cur, (x, y))
                .map_err(|e| format!("from {cur:?} to ({x},{y}): {e}"))?;
            let end = seq.apply_all(cur).map_err(|e| e.to_string())?;
            if (end[0], end[6]) != (x, y) {
                return Err(format!("from {cur:?}: ends at ({}, {})", end[0], end[6]));
            }
            if !verify_sequence(&fp.graph, &fp.lists, cur, &end, 7, &seq)
                .unwrap()
                .is_valid()
            {
                return Err(format!("from {cur:?} to ({x},{y}): invalid sequence"));
            }
            let steps = seq.steps();
            let mut moved = BTreeSet::new();
            for (i, s) in steps.iter().enumerate() {
                let endpoint = s.vertex == 0 || s.vertex == 6;
                if (endpoint && i + 1 != steps.len()) || (!endpoint && !moved.insert(s.vertex)) {
                    return Err(format!("from {cur:?} to ({x},{y}): step order {steps:?}"));
                }
            }
        }
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let proper: Vec<ColorSet> = (1u128..15).map(ColorSet::from_bits).collect();
    let mut total = 0;
    let mut failed: Vec<(ColorSet, ColorSet, Color, Color, String)> = Vec::new();
    for &lu in &proper {
        for &lv in &proper {
            for a in lu {
                for b in lv {
                    total += 1;
                    if let Err(e) = path_obligations_ok(lu, lv, a, b) {
                        failed.push((lu, lv, a, b, e));
                    }
                }
            }
        }
    }
    if failed.is_empty() {
        return Outcome::pass(format!("all {total} quadruples"));
    }
    let all_equal_pairs = failed
        .iter()
        .all(|(_, _, a, b, e)| a == b && e.starts_with("no six-vertex"));
    let sample: Vec<String> = failed
        .iter()
        .take(3)
        .map(|(lu, lv, a, b, e)| format!("{lu:?} {lv:?} ({a},{b}): {e}"))
        .collect();
    Outcome {
        pass: false,
        detail: format!(
            "{} of {total} quadruples pass; {} fail{}; e.g. {}",
            total - failed.len(),
            failed.len(),
            if all_equal_pairs {
                ", all with a = b and no valid choice of c,d,e,f"
            } else {
                ""
            },
            sample.join(" | ")
        ),
        expected_shape: all_equal_pairs,
    }
}

fn random_list_instance(rng: &mut ChaCha8Rng) -> Option<Instance> {
    let n = rng.gen_range(1..=4);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let g = Graph::new(n, pairs.into_iter().filter(|_| rng.gen_bool(0.5))).unwrap();
    let lists: Vec<ColorSet> = (0..n)
        .map(|_| ColorSet::from_bits(rng.gen_range(1u128..16)))
        .collect();
    let lists = ColorLists::new(4, lists).unwrap();
    let colorings = proper_colorings(&g, &lists);
    if colorings.is_empty() {
        return None;
    }
    let a = colorings[rng.gen_range(0..colorings.len())].clone();
    let b = colorings[rng.gen_range(0..colorings.len())].clone();
    Instance::new(g, 4, Some(lists), 8, a, b).ok()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut checked, mut unreachable) = (0, 0);
    while checked < LIST_INSTANCES {
        let Some(inst) = random_list_instance(&mut rng) else {
            continue;
        };
        let dist = |i: &Instance| {
            oracle_distance(
                i.graph(),
                &i.lists(),
                i.alpha(),
                i.beta(),
                &OracleOptions::default(),
            )
            .unwrap()
            .distance
        };
        let before = dist(&inst);
        let after = dist(&list_to_plain(&inst, 4).unwrap());
        if before != after {
            return Outcome::fail(format!(
                "distance {before:?} became {after:?} on {:?}",
                inst.graph().edges()
            ));
        }
        checked += 1;
        unreachable += usize::from(before.is_none());
    }
    Outcome::pass(format!(
        "{checked} instances, {unreachable} unreachable, distances identical"
    ))
}

fn criterion_6() -> Outcome {
    let np = np_reduce(&Graph::new(2, [(0, 1)]).unwrap()).unwrap();
    let lists = np.instance.lists();
    let g = &np.gadgets[0];
    let domains: Vec<Vec<Color>> = [g.u, g.v, g.x, g.y, g.z]
        .iter()
        .map(|&v| lists.get(v).iter().collect())
        .collect();
    let mut count = 0;
    let mut open_pairs = BTreeSet::new();
    for &cu in &domains[0] {
        for &cv in &domains[1] {
            for &cx in &domains[2] {
                for &cy in &domains[3] {
                    for &cz in &domains[4] {
                        count += 1;
                        let ok = gadget_abstraction_check(&np, 0, [cu, cv, cx, cy, cz]).unwrap();
                        if ok && cu == cv && cz != 4 {
                            return Outcome::fail(format!(
                                "({cu},{cv},{cx},{cy},{cz}) extends with z != 4"
                            ));
                        }
                        if ok && cz != 4 {
                            open_pairs.insert((cu, cv));
                        }
                    }
                }
            }
        }
    }
    let missing: Vec<(Color, Color)> = (1..=3)
        .flat_map(|u| (1..=3).map(move |v| (u, v)))
        .filter(|&(u, v)| u != v && !open_pairs.contains(&(u, v)))
        .collect();
    Outcome::check(
        count == 162 && missing.is_empty(),
        format!("{count} quintuples; equal ends force z=4; unequal pairs without an open z: {missing:?}"),
    )
}

fn criterion_7() -> Outcome {
    let sources = [
        ("K3", Graph::complete(3)),
        ("edge", Graph::new(2, [(0, 1)]).unwrap()),
        ("P3", Graph::path(3)),
    ];
    let mut details = Vec::new();
    for (name, src) in sources {
        let np = np_reduce(&src).unwrap();
        let limit = 4 * np.instance.graph().n();
        let palette = ColorLists::full(src.n(), 3).unwrap();
        let colorings = proper_colorings(&src, &palette);
        let mut longest = 0;
        for c3 in &colorings {
            let w = match np_witness(&np, c3) {
                Ok(w) => w,
                Err(e) => return Outcome::fail(format!("{name} with {c3:?}: {e}")),
            };
            if !np.instance.verify(&w).is_valid()
                || w.len() > limit
                || !weight_ok(np.instance.alpha(), &w)
            {
                return Outcome::fail(format!("{name} with {c3:?}: witness rejected"));
            }
            longest = longest.max(w.len());
        }
        details.push(format!(
            "{name}: {} colorings, longest {longest} <= {limit}",
            colorings.len()
        ));
    }
    Outcome::pass(details.join("; "))
}

fn criterion_8() -> Outcome {
    let w1 = w1_reduce(&Graph::new(2, [(0, 1)]).unwrap(), 2).unwrap();
    let w = w1_witness(&w1, &[0]).unwrap();
    let valid = w1.instance.verify(&w).is_valid();
    let guarded = colorguard_check(&w1, &w).unwrap();
    Outcome::check(
        valid
            && guarded
            && w.len() <= 10
            && w1.instance.ell() == 12
            && weight_ok(w1.instance.alpha(), &w),
        format!(
            "length {} <= 10 <= ell {}, valid {valid}, guards {guarded}",
            w.len(),
            w1.instance.ell()
        ),
    )
}

fn criterion_10() -> Outcome {
    let g = Graph::empty(1);
    let corrected = recolor(&g, 2, 1, &[1], &[2], &FptOptions::default())
        .unwrap()
        .witness
        .is_some();
    let literal = FptOptions {
        subset_bound: SubsetBound::Literal,
        ..Default::default()
    };
    let literal = recolor(&g, 2, 1, &[1], &[2], &literal)
        .unwrap()
        .witness
        .is_some();
    let oracle = oracle_distance(
        &g,
        &ColorLists::full(1, 2).unwrap(),
        &[1],
        &[2],
        &OracleOptions::default(),
    )
    .unwrap()
    .distance;
    Outcome::check(
        corrected && !literal && oracle == Some(1),
        format!("oracle distance {oracle:?}; |U| <= ell+1 answers {corrected}, |U| <= ell answers {literal}"),
    )
}

fn main() -> ExitCode {
    let mut results: Vec<(usize, Outcome, f64)> = Vec::new();
    let mut timed = |n: usize, f: &dyn Fn() -> Outcome| {
        let t = Instant::now();
        let o = f();
        results.push((n, o, t.elapsed().as_secs_f64()));
    };
    let t = Instant::now();
    let (c1, c9) = exhaustive();
    let shared = t.elapsed().as_secs_f64();
    timed(2, &criterion_2);
    timed(3, &criterion_3);
    timed(4, &criterion_4);
    timed(5, &criterion_5);
    timed(6, &criterion_6);
    timed(7, &criterion_7);
    timed(8, &criterion_8);
    timed(10, &criterion_10);
    results.push((1, c1, shared));
    results.push((9, c9, 0.0));
    results.sort_by_key(|r| r.0);

    let mut unexpected = false;
    for (n, o, secs) in &results {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {n:>2} {status} [{secs:.1}s] {}", o.detail);
        let known = KNOWN_UNATTAINABLE.contains(n);
        if !o.pass && !(known && o.expected_shape) {
            unexpected = true;
        }
        if o.pass && known {
            println!("criterion {n:>2} passes but is listed as unattainable; update the list");
            unexpected = true;
        }
    }
    let passed = results.iter().filter(|r| r.1.pass).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if unexpected {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
