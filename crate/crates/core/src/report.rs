//! Report documents for the command layer, in JSON and text form.
//!
//! JSON goes through `serde_json::Value`, whose maps are ordered, so keys come
//! out sorted. Point lists follow spectrum order, which is submodule order.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::Result;
use crate::instance::Instance;
use crate::maps::{map_report, phi_map, psi_map, MapReport};
use crate::spectrum::ModuleAnalysis;
use crate::theorems::corpus::{CorpusReport, Counts};
use crate::theorems::{run_entry, Entry, Status, VerificationResult, VerifyConfig, VerifyContext, REGISTRY};
use crate::topology::{FiniteTopology, TopoProperties};
use crate::variety::{build_space, e_base, is_cotop, is_secondary_cotop, SpaceKind};

pub const REPORT_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Above this many submodules the per-submodule variety table is left out.
pub const VARIETY_TABLE_LIMIT: usize = 128;

/// Above this many points a spectrum is reported by count only.
pub const LISTING_LIMIT: usize = 512;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Report {
    Analyze(Box<AnalyzeReport>),
    Verify(VerifyReport),
    Corpus(CorpusDocument),
    SpecDump(SpecDump),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NonSecond {
    pub scalar: String,
    pub image: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecLPoint {
    pub submodule: String,
    pub second: bool,
    pub socle: String,
    pub radical: String,
    /// r with rK ∉ {0, K}, for points outside Spec^s(M).
    pub non_second: Option<NonSecond>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Fiber {
    pub prime: String,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BaseRow {
    pub label: String,
    pub points: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Component {
    pub points: Vec<usize>,
    pub generic_points: Vec<usize>,
}

/// Point sets are positions in Spec^L(M).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TopologyReport {
    pub closed_sets: Vec<Vec<usize>>,
    pub base: Vec<BaseRow>,
    pub properties: TopoProperties,
    pub trivial: bool,
    pub discrete: bool,
    pub irreducible: bool,
    pub components: Vec<Component>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModuleFlags {
    pub comultiplication: bool,
    pub cotop: bool,
    pub secondary_cotop: bool,
    /// N, L whose V^{s*} union is not a V^{s*}.
    pub cotop_witness: Option<[String; 2]>,
    /// N, L whose ν^{s*} union is not a ν^{s*}.
    pub secondary_cotop_witness: Option<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VarietyRow {
    pub submodule: String,
    pub nu_s: Vec<usize>,
    pub nu_s_star: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Maps {
    pub phi: MapReport,
    pub psi: MapReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    pub version: String,
    pub instance: String,
    pub reduction: Option<String>,
    pub ring: String,
    pub module_order: usize,
    pub submodules: usize,
    pub annihilator: String,
    pub quotient_ring: String,
    pub spec_s_count: usize,
    pub spec_l_count: usize,
    /// Omitted above `LISTING_LIMIT` points.
    pub spec_s: Option<Vec<String>>,
    pub spec_l: Option<Vec<SpecLPoint>>,
    /// Positions in Spec^L(M) of the Spec^s(M) points.
    pub spec_s_in_spec_l: Vec<usize>,
    pub fibers: Vec<Fiber>,
    pub sl_topology: TopologyReport,
    pub second_topology: TopoProperties,
    pub maps: Maps,
    pub flags: ModuleFlags,
    pub varieties: Option<Vec<VarietyRow>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub version: String,
    pub instance: String,
    pub reduction: Option<String>,
    pub config: VerifyConfig,
    pub totals: Counts,
    pub results: Vec<VerificationResult>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusDocument {
    pub version: String,
    pub config: VerifyConfig,
    #[serde(flatten)]
    pub report: CorpusReport,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegistryEntry {
    pub id: String,
    pub title: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecDump {
    pub version: String,
    pub results: Vec<RegistryEntry>,
    pub defaults: VerifyConfig,
    pub max_elements: usize,
}

fn positions(set: &fixedbitset::FixedBitSet) -> Vec<usize> {
    set.ones().collect()
}

fn topology_report(analysis: &ModuleAnalysis, sl: &FiniteTopology) -> Result<TopologyReport> {
    let components = sl
        .irreducible_components()
        .iter()
        .map(|c| Ok(Component { points: positions(c), generic_points: sl.generic_points(c)? }))
        .collect::<Result<Vec<_>>>()?;
    let full = crate::topology::full_set(sl.len());
    Ok(TopologyReport {
        closed_sets: sl.closed_sets().iter().map(positions).collect(),
        base: e_base(analysis).into_iter().map(|b| BaseRow { points: positions(&b.set), label: b.label }).collect(),
        properties: sl.properties(),
        trivial: sl.is_trivial(),
        discrete: sl.is_discrete(),
        irreducible: sl.is_irreducible(&full),
        components,
    })
}

fn pair(analysis: &ModuleAnalysis, w: Option<(usize, usize)>) -> Option<[String; 2]> {
    w.map(|(a, b)| [analysis.text(a), analysis.text(b)])
}

pub fn analyze(instance: &Instance, max_elements: usize) -> Result<AnalyzeReport> {
    let module = &instance.module;
    let analysis = ModuleAnalysis::with_limit(module, max_elements)?;
    let sl = build_space(&analysis, SpaceKind::Sl)?;
    let second = build_space(&analysis, SpaceKind::SecondZariski)?;
    let listed = analysis.spec_l().len() <= LISTING_LIMIT;
    let spec_l = listed.then(|| {
        analysis
        .spec_l()
        .iter()
        .map(|&id| SpecLPoint {
            submodule: analysis.text(id),
            second: analysis.is_second(id),
            socle: analysis.text(analysis.socle(id)),
            radical: analysis.rad_ann(id).to_string(),
            non_second: analysis.non_second_witness(id).map(|(r, image)| NonSecond { scalar: r.to_string(), image: analysis.text(image) }),
        })
        .collect()
    });
    let fibers = analysis
        .primes()
        .into_iter()
        .map(|p| {
            let points = analysis.fiber(&p)?.into_iter().map(|id| analysis.spec_l_position(id).expect("fiber points lie in Spec^L")).collect();
            Ok(Fiber { points, prime: p.to_string() })
        })
        .collect::<Result<Vec<_>>>()?;
    let cotop = is_cotop(&analysis);
    let secondary_cotop = is_secondary_cotop(&analysis);
    let lattice = analysis.lattice();
    let varieties = (lattice.len() <= VARIETY_TABLE_LIMIT).then(|| {
        lattice
            .ids()
            .map(|id| VarietyRow {
                submodule: analysis.text(id),
                nu_s: positions(&analysis.nu_s(id)),
                nu_s_star: positions(&analysis.nu_s_star(id)),
            })
            .collect()
    });
    Ok(AnalyzeReport {
        version: REPORT_VERSION.to_string(),
        instance: module.to_string(),
        reduction: instance.reduction.clone(),
        ring: module.ring().to_string(),
        module_order: module.order(),
        submodules: lattice.len(),
        annihilator: module.annihilator().to_string(),
        quotient_ring: module.quotient().ring().to_string(),
        spec_s_count: analysis.spec_s().len(),
        spec_l_count: analysis.spec_l().len(),
        spec_s: listed.then(|| analysis.spec_s().iter().map(|&id| analysis.text(id)).collect()),
        spec_l,
        spec_s_in_spec_l: analysis.spec_s().iter().map(|&id| analysis.spec_l_position(id).expect("Spec^s lies in Spec^L")).collect(),
        fibers,
        sl_topology: topology_report(&analysis, &sl)?,
        second_topology: second.properties(),
        maps: Maps { phi: map_report(&phi_map(&analysis)?), psi: map_report(&psi_map(&analysis)?) },
        flags: ModuleFlags {
            comultiplication: analysis.is_comultiplication(),
            cotop: cotop.holds,
            secondary_cotop: secondary_cotop.holds,
            cotop_witness: pair(&analysis, cotop.witness),
            secondary_cotop_witness: pair(&analysis, secondary_cotop.witness),
        },
        varieties,
    })
}

pub fn tally<'a>(results: impl IntoIterator<Item = &'a VerificationResult>) -> Counts {
    let mut c = Counts::default();
    for r in results {
        match r.status {
            Status::Pass => c.pass += 1,
            Status::PassBounded => c.pass_bounded += 1,
            Status::Fail => c.fail += 1,
            Status::SkippedHypothesis => c.skipped += 1,
        }
    }
    c
}

pub fn verify(instance: &Instance, entries: &[&Entry], config: &VerifyConfig, max_elements: usize) -> Result<VerifyReport> {
    let analysis = ModuleAnalysis::with_limit(&instance.module, max_elements)?;
    let ctx = VerifyContext::new(std::sync::Arc::new(analysis), *config)?;
    let results = entries.iter().map(|e| run_entry(&ctx, e)).collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        version: REPORT_VERSION.to_string(),
        instance: instance.module.to_string(),
        reduction: instance.reduction.clone(),
        config: *config,
        totals: tally(&results),
        results,
    })
}

pub fn spec_dump(max_elements: usize) -> SpecDump {
    SpecDump {
        version: REPORT_VERSION.to_string(),
        results: REGISTRY.iter().map(|e| RegistryEntry { id: e.id.to_string(), title: e.title.to_string() }).collect(),
        defaults: VerifyConfig::default(),
        max_elements,
    }
}

impl Report {
    /// Drops witness payloads, keeping the recheck status.
    pub fn strip_witnesses(&mut self) {
        let results: Box<dyn Iterator<Item = &mut VerificationResult>> = match self {
            Report::Verify(v) => Box::new(v.results.iter_mut()),
            Report::Corpus(c) => Box::new(c.report.failures.iter_mut()),
            _ => return,
        };
        for r in results {
            r.witness = None;
        }
    }

    pub fn failed(&self) -> bool {
        match self {
            Report::Verify(v) => v.totals.fail > 0,
            Report::Corpus(c) => c.report.failed(),
            _ => false,
        }
    }

    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut s = serde_json::to_string_pretty(&value).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match self {
            Report::Analyze(a) => analyze_text(&mut out, a),
            Report::Verify(v) => verify_text(&mut out, v),
            Report::Corpus(c) => corpus_text(&mut out, c),
            Report::SpecDump(d) => {
                for e in &d.results {
                    let _ = writeln!(out, "{:<6} {}", e.id, e.title);
                }
            }
        }
        out
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn list(items: &[String]) -> String {
    if items.is_empty() {
        "∅".to_string()
    } else {
        items.join(" ")
    }
}

fn map_line(out: &mut String, name: &str, m: &MapReport) {
    let _ = writeln!(
        out,
        "{name}: injective={} surjective={} continuous={} open={} closed={} homeomorphism={}",
        yes(m.injective),
        yes(m.surjective),
        yes(m.continuous),
        yes(m.open_map),
        yes(m.closed_map),
        yes(m.homeomorphism)
    );
}

fn props_line(p: &TopoProperties) -> String {
    format!(
        "connected={} T0={} T1={} sober={} spectral={}",
        yes(p.connected),
        yes(p.t0),
        yes(p.t1),
        yes(p.sober),
        yes(p.spectral)
    )
}

fn analyze_text(out: &mut String, a: &AnalyzeReport) {
    // points by name when the spectrum is listed, by position otherwise
    let name = |k: usize| match &a.spec_l {
        Some(points) => points[k].submodule.clone(),
        None => format!("#{k}"),
    };
    let set = |ks: &[usize]| list(&ks.iter().map(|&k| name(k)).collect::<Vec<_>>());
    let _ = writeln!(out, "instance: {}", a.instance);
    if let Some(r) = &a.reduction {
        let _ = writeln!(out, "reduction: {r}");
    }
    let _ = writeln!(out, "|M| = {}, {} submodules", a.module_order, a.submodules);
    let _ = writeln!(out, "Ann(M) = {}, R/Ann(M) = {}", a.annihilator, a.quotient_ring);
    let _ = writeln!(out, "Spec^s ({}): {}", a.spec_s_count, set(&a.spec_s_in_spec_l));
    let _ = writeln!(out, "Spec^L ({}):", a.spec_l_count);
    for p in a.spec_l.iter().flatten() {
        let _ = write!(out, "  {}  rad={} soc={}", p.submodule, p.radical, p.socle);
        match &p.non_second {
            Some(w) => {
                let _ = writeln!(out, "  not second: {}·K = {}", w.scalar, w.image);
            }
            None => out.push_str("  second\n"),
        }
    }
    for f in &a.fibers {
        let _ = writeln!(out, "fiber {}: {}", f.prime, set(&f.points));
    }
    let t = &a.sl_topology;
    let _ = writeln!(
        out,
        "SL-topology: {} closed sets, trivial={} discrete={} irreducible={}",
        t.closed_sets.len(),
        yes(t.trivial),
        yes(t.discrete),
        yes(t.irreducible)
    );
    for c in &t.closed_sets {
        let _ = writeln!(out, "  closed: {}", set(c));
    }
    for b in &t.base {
        let _ = writeln!(out, "  {} = {}", b.label, set(&b.points));
    }
    let _ = writeln!(out, "  {}", props_line(&t.properties));
    for c in &t.components {
        let _ = writeln!(out, "  component: {} generic: {}", set(&c.points), set(&c.generic_points));
    }
    let _ = writeln!(out, "second Zariski topology: {}", props_line(&a.second_topology));
    map_line(out, "phi", &a.maps.phi);
    map_line(out, "psi", &a.maps.psi);
    let f = &a.flags;
    let _ = writeln!(out, "comultiplication={} cotop={} secondary-cotop={}", yes(f.comultiplication), yes(f.cotop), yes(f.secondary_cotop));
    if let Some([n, l]) = &f.secondary_cotop_witness {
        let _ = writeln!(out, "  nu_s*({n}) ∪ nu_s*({l}) is not a nu_s*-variety");
    }
    if let Some([n, l]) = &f.cotop_witness {
        let _ = writeln!(out, "  V_s*({n}) ∪ V_s*({l}) is not a V_s*-variety");
    }
    if let Some(rows) = &a.varieties {
        out.push_str("varieties:\n");
        for r in rows {
            let _ = writeln!(out, "  {}  nu_s: {}  nu_s*: {}", r.submodule, set(&r.nu_s), set(&r.nu_s_star));
        }
    }
}

fn counts_line(c: &Counts) -> String {
    format!("PASS {}  PASS-BOUNDED {}  FAIL {}  SKIPPED-HYPOTHESIS {}", c.pass, c.pass_bounded, c.fail, c.skipped)
}

fn result_text(out: &mut String, r: &VerificationResult) {
    let _ = write!(out, "{:<6} {}", r.result_id, r.status.as_str());
    if let Some(h) = &r.skipped {
        let _ = write!(out, " ({h})");
    }
    out.push('\n');
    for b in &r.bounds {
        let _ = writeln!(out, "       bound: {b}");
    }
    for n in &r.notes {
        let _ = writeln!(out, "       note: {n}");
    }
    if let Some(w) = &r.witness {
        let _ = writeln!(out, "       witness: {}", w.claim);
        for f in &w.facts {
            let _ = writeln!(out, "         {}", serde_json::to_string(f).expect("facts serialize"));
        }
    }
    if let Some(c) = &r.recheck {
        let _ = writeln!(out, "       recheck: {}", serde_json::to_value(c).expect("serialize").as_str().unwrap_or_default());
    }
}

fn verify_text(out: &mut String, v: &VerifyReport) {
    let _ = writeln!(out, "instance: {}", v.instance);
    if let Some(r) = &v.reduction {
        let _ = writeln!(out, "reduction: {r}");
    }
    for r in &v.results {
        result_text(out, r);
    }
    let _ = writeln!(out, "{}", counts_line(&v.totals));
}

fn corpus_text(out: &mut String, c: &CorpusDocument) {
    let r = &c.report;
    let _ = writeln!(out, "corpus: {} instances, {} results, seed {}", r.instances, r.results.len(), r.seed);
    for (id, s) in &r.by_result {
        let _ = write!(out, "{id:<6} {}", counts_line(&s.counts));
        for (h, n) in &s.skipped_by {
            let _ = write!(out, "  [{h}: {n}]");
        }
        out.push('\n');
    }
    for f in &r.failures {
        let _ = writeln!(out, "FAIL {} on {}", f.result_id, f.instance);
        result_text(out, f);
    }
    let _ = writeln!(out, "{}", counts_line(&r.totals));
}
