//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use slspec::instance::parse_corpus;
use slspec::lattice::{enumerate_submodules, DEFAULT_MAX_ELEMENTS};
use slspec::maps::{phi_map, psi_map};
use slspec::module::{build_module, is_comultiplication_over, FiniteModule};
use slspec::report::{AnalyzeReport, Report};
use slspec::ring::FiniteRing;
use slspec::spectrum::ModuleAnalysis;
use slspec::topology::Point;
use slspec::variety::{build_space, is_secondary_cotop, SpaceKind};
use slspec_cli::{cmd_analyze, cmd_corpus, render, Flags};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn analyze(text: &str) -> Result<AnalyzeReport, String> {
    match cmd_analyze(text, &Flags::default()).map_err(|e| e.to_string())? {
        Report::Analyze(a) => Ok(*a),
        _ => Err("analyze returned another report kind".into()),
    }
}

fn module(moduli: &[u64], factors: &[&[u64]]) -> FiniteModule {
    let ring = FiniteRing::new(moduli.to_vec()).unwrap();
    let ideals: Vec<_> = factors.iter().map(|g| ring.ideal(g).unwrap()).collect();
    build_module(&ring, &ideals).unwrap()
}

fn repo(path: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..").join(path)
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

fn z8_example() -> Outcome {
    let t = Instant::now();
    let a = analyze("Z8 | (0)")?;
    let points = a.spec_l.as_ref().ok_or("Spec^L not listed")?;
    let k = points.iter().find(|p| p.submodule == "{0,2,4,6}").ok_or("{0,2,4,6} not in Spec^L")?;
    let in_spec_s = a.spec_s.as_ref().ok_or("Spec^s not listed")?.iter().any(|s| s == "{0,2,4,6}");
    ensure(!in_spec_s && !k.second, || "{0,2,4,6} reported second".into())?;
    let w = k.non_second.as_ref().ok_or("no non-second witness")?;
    ensure(w.scalar == "2" && w.image == "{0,4}", || format!("witness {}·K = {}", w.scalar, w.image))?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("{{0,2,4,6}} ∈ Spec^L, ∉ Spec^s, 2·K = {{0,4}} ({:.2?})", t.elapsed()))
}

fn z6_example() -> Outcome {
    let t = Instant::now();
    let a = analyze("Z6 | (0)")?;
    let names: BTreeSet<&str> = a.spec_l.as_ref().ok_or("Spec^L not listed")?.iter().map(|p| p.submodule.as_str()).collect();
    ensure(names == BTreeSet::from(["{0,2,4}", "{0,3}"]), || format!("Spec^L = {names:?}"))?;
    let rows = a.varieties.as_ref().ok_or("no variety table")?;
    let nu = |n: &str| rows.iter().find(|r| r.submodule == n).map(|r| r.nu_s.clone()).ok_or(format!("no row for {n}"));
    let (two, three) = (nu("{0,2,4}")?, nu("{0,3}")?);
    let mut union: Vec<usize> = two.iter().chain(&three).copied().collect();
    union.sort_unstable();
    ensure(two.len() == 1 && three.len() == 1 && union == vec![0, 1], || format!("nu_s(2Z6) = {two:?}, nu_s(3Z6) = {three:?}"))?;
    ensure(!a.sl_topology.irreducible, || "Spec^L reported irreducible".into())?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("Spec^L = {{0,2,4}}, {{0,3}}; complementary singleton varieties; reducible ({:.2?})", t.elapsed()))
}

fn free_rank4_over_z8() -> Outcome {
    let t = Instant::now();
    let a = analyze("Z8 | (0),(0),(0),(0)")?;
    ensure(a.sl_topology.trivial, || "topology not trivial".into())?;
    let field = FiniteRing::new(vec![8]).unwrap().is_field();
    ensure(!field, || "Z8 reported a field".into())?;
    within(t.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{} points, trivial topology, Z8 not a field ({:.2?})", a.spec_l_count, t.elapsed()))
}

fn vector_spaces() -> Outcome {
    let t = Instant::now();
    for p in [2u64, 3] {
        for dim in 1..=3usize {
            let factors: Vec<&[u64]> = vec![&[0]; dim];
            let a = analyze(&module(&[p], &factors).to_string())?;
            let label = format!("F{p}^{dim}");
            ensure(a.spec_l_count == a.submodules - 1, || format!("{label}: Spec^L has {} of {} nonzero subspaces", a.spec_l_count, a.submodules - 1))?;
            ensure(a.sl_topology.trivial, || format!("{label}: topology not trivial"))?;
            ensure(a.sl_topology.properties.t0 == (dim <= 1), || format!("{label}: T0 = {}", a.sl_topology.properties.t0))?;
        }
    }
    within(t.elapsed(), Duration::from_secs(5))?;
    Ok(format!("F2, F3 in dimensions 1 to 3 ({:.2?})", t.elapsed()))
}

fn union_counterexample() -> Outcome {
    let t = Instant::now();
    let m = module(&[2], &[&[0], &[0]]);
    let analysis = ModuleAnalysis::new(&m).map_err(|e| e.to_string())?;
    let lat = analysis.lattice();
    let line = |digits: &[u64]| {
        let g = m.index(digits).unwrap();
        let sub = slspec::module::Submodule::generated(&m, &[g]).unwrap();
        lat.id_of_submodule(&sub).unwrap()
    };
    let (n, l) = (line(&[0, 1]), line(&[1, 0]));
    let sum = lat.sum(n, l);
    let whole = analysis.spec_l_position(lat.whole()).ok_or("M not in Spec^L")?;
    ensure(sum == lat.whole(), || "N + L is not M".into())?;
    ensure(analysis.nu_s_star(sum).contains(whole), || "M ∉ nu_s*(N+L)".into())?;
    ensure(!analysis.nu_s_star(n).contains(whole) && !analysis.nu_s_star(l).contains(whole), || "M ∈ nu_s*(N) ∪ nu_s*(L)".into())?;
    let check = is_secondary_cotop(&analysis);
    let (a, b) = check.witness.ok_or("no witness pair")?;
    let mut u = analysis.nu_s_star(a);
    u.union_with(&analysis.nu_s_star(b));
    ensure(!check.holds && lat.ids().all(|t| analysis.nu_s_star(t) != u), || "witness pair union is a variety".into())?;
    let report = analyze("Z2 | (0),(0)")?;
    ensure(!report.flags.secondary_cotop && report.flags.secondary_cotop_witness.is_some(), || "report says secondary cotop".into())?;
    within(t.elapsed(), Duration::from_secs(1))?;
    Ok(format!("M ∈ nu_s*(N+L) \\ (nu_s*(N) ∪ nu_s*(L)); witness {}, {} ({:.2?})", analysis.text(a), analysis.text(b), t.elapsed()))
}

/// Runs the default corpus file once; criteria 6, 8 and 9 share it.
struct CorpusRun {
    json: String,
    elapsed: Duration,
    report: slspec::theorems::corpus::CorpusReport,
}

fn corpus_run() -> Result<CorpusRun, String> {
    let flags = Flags { json: true, ..Flags::default() };
    let t = Instant::now();
    let report = cmd_corpus(Some(&repo("corpus/default.txt")), None, &flags).map_err(|e| e.to_string())?;
    let elapsed = t.elapsed();
    let inner = match &report {
        Report::Corpus(c) => c.report.clone(),
        _ => return Err("corpus returned another report kind".into()),
    };
    let (json, _) = render(report, &flags);
    Ok(CorpusRun { json, elapsed, report: inner })
}

fn corpus_modules() -> Vec<FiniteModule> {
    let text = std::fs::read_to_string(repo("corpus/default.txt")).unwrap();
    parse_corpus(&text, false).unwrap().into_iter().map(|i| i.module).collect()
}

/// Expected skip counts per (result, hypothesis), computed from definitions.
fn expected_skips(modules: &[FiniteModule]) -> BTreeMap<(String, String), usize> {
    let mut out: BTreeMap<(String, String), usize> = BTreeMap::new();
    let mut bump = |id: &str, h: &str| *out.entry((id.to_string(), h.to_string())).or_default() += 1;
    for m in modules {
        let analysis = ModuleAnalysis::new(m).unwrap();
        let subs = analysis.lattice().submodules();
        if !is_comultiplication_over(m, &subs) {
            bump("T2.2", "comultiplication");
        }
        if !is_secondary_cotop(&analysis).holds {
            bump("C2.5", "secondary-cotop");
        }
        if !m.ring().is_field() {
            bump("C3.3", "R-field");
        }
        let all_one = slspec::ring::ring_spec(m.ring()).iter().all(|p| analysis.fiber(p).map(|f| f.len() == 1).unwrap_or(false));
        if !all_one {
            bump("C2.7", "fibers-exactly-one");
        }
    }
    out
}

fn theorem_suite(run: &CorpusRun, modules: &[FiniteModule]) -> Outcome {
    let r = &run.report;
    ensure(r.instances == modules.len(), || format!("{} instances, expected {}", r.instances, modules.len()))?;
    ensure(r.results.len() == 36, || format!("{} results run", r.results.len()))?;
    ensure(r.totals.fail == 0, || format!("{} FAIL, first: {:?}", r.totals.fail, r.failures.first().map(|f| (&f.result_id, &f.instance))))?;
    let mut observed: BTreeMap<(String, String), usize> = BTreeMap::new();
    for (id, s) in &r.by_result {
        let named: usize = s.skipped_by.values().sum();
        ensure(named == s.counts.skipped, || format!("{id}: {} skips, {named} named", s.counts.skipped))?;
        for (h, n) in &s.skipped_by {
            observed.insert((id.clone(), h.clone()), *n);
        }
    }
    let expected = expected_skips(modules);
    ensure(observed == expected, || format!("skips {observed:?}, expected from definitions {expected:?}"))?;
    within(run.elapsed, Duration::from_secs(600))?;
    Ok(format!(
        "{} instances × 36 results: PASS {}, PASS-BOUNDED {}, SKIPPED {} (all confirmed), FAIL 0 ({:.1?})",
        r.instances, r.totals.pass, r.totals.pass_bounded, r.totals.skipped, run.elapsed
    ))
}

/// Subset filter over u32 masks: sets containing 0 closed under + and scalars.
fn subset_oracle(m: &FiniteModule) -> BTreeSet<u32> {
    let n = m.order();
    let actions = m.actions();
    let mut out = BTreeSet::new();
    'mask: for rest in 0u32..(1 << (n - 1)) {
        let set = (rest << 1) | 1;
        for x in (0..n).filter(|&x| set >> x & 1 == 1) {
            for y in (x..n).filter(|&y| set >> y & 1 == 1) {
                if set >> m.add(x, y) & 1 == 0 {
                    continue 'mask;
                }
            }
            for s in 0..actions.len() {
                if set >> actions.act(s, x) & 1 == 0 {
                    continue 'mask;
                }
            }
        }
        out.insert(set);
    }
    out
}

fn oracle_equivalence(modules: &[FiniteModule]) -> Outcome {
    let t = Instant::now();
    let (mut lattices, mut spaces, mut subsets) = (0, 0, 0usize);
    for m in modules {
        if m.order() <= 16 {
            let l = enumerate_submodules(m, DEFAULT_MAX_ELEMENTS).map_err(|e| e.to_string())?;
            let got: BTreeSet<u32> = l.sets().iter().map(|s| s.ones().fold(0u32, |acc, x| acc | 1 << x)).collect();
            ensure(got.len() == l.len() && got == subset_oracle(m), || format!("{m}: lattice differs from subset filter"))?;
            lattices += 1;
        }
        let analysis = ModuleAnalysis::new(m).unwrap();
        let n = analysis.spec_l().len();
        if n > 12 {
            continue;
        }
        let sl = build_space(&analysis, SpaceKind::Sl).unwrap();
        for mask in 0u32..(1 << n) {
            let mut y = fixedbitset::FixedBitSet::with_capacity(n);
            y.extend((0..n).filter(|&k| mask >> k & 1 == 1));
            let formula = analysis.nu_s(analysis.socle_sum(&y));
            ensure(sl.closure(&y) == formula, || format!("{m}: Cl(Y) ≠ nu_s(H(Y)) for Y = {:?}", analysis.spec_l_text(&y)))?;
        }
        spaces += 1;
        subsets += 1 << n;
    }
    Ok(format!("{lattices} lattices match the subset filter; {subsets} closures over {spaces} spaces match ({:.1?})", t.elapsed()))
}

fn map_consistency(run: &CorpusRun, modules: &[FiniteModule]) -> Outcome {
    let t = Instant::now();
    let mut checked = 0usize;
    for m in modules {
        let analysis = ModuleAnalysis::new(m).unwrap();
        let phi = phi_map(&analysis).map_err(|e| e.to_string())?;
        let psi = psi_map(&analysis).map_err(|e| e.to_string())?;
        ensure(phi.target.points() == psi.target.points(), || format!("{m}: phi and psi land in different spaces"))?;
        let q = m.quotient();
        for (j, &id) in analysis.spec_s().iter().enumerate() {
            let k = analysis.spec_l_position(id).ok_or(format!("{m}: second point outside Spec^L"))?;
            ensure(analysis.rad_ann(id) == analysis.ann(id), || format!("{m}: √Ann ≠ Ann on a second submodule"))?;
            ensure(phi.assignment[k] == psi.assignment[j], || format!("{m}: phi ≠ psi at {}", analysis.text(id)))?;
            let Point::Prime(p) = &phi.target.points()[phi.assignment[k]] else {
                return Err(format!("{m}: phi target is not a prime"));
            };
            ensure(&q.lift_ideal(p).map_err(|e| e.to_string())? == analysis.ann(id), || format!("{m}: phi(S) is not Ann(S)"))?;
            checked += 1;
        }
    }
    for id in ["P2.9", "P2.10", "P3.2"] {
        let s = run.report.by_result.get(id).ok_or(format!("{id} not run"))?;
        ensure(s.counts.fail == 0 && s.counts.skipped == 0, || format!("{id}: {:?}", s.counts))?;
    }
    Ok(format!("{checked} second points agree under phi and psi; P2.9, P2.10, P3.2 hold on every instance ({:.1?})", t.elapsed()))
}

fn determinism(first: &CorpusRun) -> Outcome {
    let second = corpus_run()?;
    ensure(first.json == second.json, || "corpus JSON differs between runs".into())?;
    Ok(format!("two default-corpus runs, {} bytes each, identical", first.json.len()))
}

fn main() {
    // `cargo test -- <filter>` passes arguments; the suite always runs whole
    let mut lines = Vec::new();
    let mut record = |n: usize, name: &str, outcome: Outcome| {
        let line = match &outcome {
            Ok(detail) => format!("[PASS] {n}. {name}: {detail}"),
            Err(why) => format!("[FAIL] {n}. {name}: {why}"),
        };
        println!("{line}");
        lines.push(outcome.is_ok());
    };
    record(1, "Z8 example", z8_example());
    record(2, "Z6 example", z6_example());
    record(3, "free rank 4 over Z8", free_rank4_over_z8());
    record(4, "vector-space dichotomy", vector_spaces());
    record(5, "union counterexample", union_counterexample());
    let modules = corpus_modules();
    let run = corpus_run();
    match &run {
        Ok(run) => record(6, "theorem suite on the default corpus", theorem_suite(run, &modules)),
        Err(e) => record(6, "theorem suite on the default corpus", Err(e.clone())),
    }
    record(7, "oracle equivalence", oracle_equivalence(&modules));
    match &run {
        Ok(run) => {
            record(8, "map consistency", map_consistency(run, &modules));
            record(9, "determinism", determinism(run));
        }
        Err(e) => {
            record(8, "map consistency", Err(e.clone()));
            record(9, "determinism", Err(e.clone()));
        }
    }
    let passed = lines.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", lines.len());
    if passed != lines.len() {
        std::process::exit(1);
    }
}
