//! Corpus expansion and the sweep over it.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_chacha::rand_core::Rng;
use serde::Serialize;

use crate::arith::is_prime_power;
use crate::error::Result;
use crate::module::{build_module, FiniteModule};
use crate::ring::FiniteRing;
use crate::spectrum::ModuleAnalysis;

use super::context::{fnv1a, VerifyConfig, VerifyContext};
use super::{run_entry, select, Entry, Status, VerificationResult};

/// Every module ⊕ R/I_j over one ring with at most `max_factors` nonzero
/// cyclic factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    pub moduli: Vec<u64>,
    pub max_factors: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusSpec {
    pub families: Vec<Family>,
    /// Explicit instances, appended after the families.
    pub instances: Vec<FiniteModule>,
    /// Largest |M| kept from the families.
    pub size_cap: usize,
    /// `None` runs the whole registry.
    pub results: Option<Vec<String>>,
    /// Same-ring corpus modules handed to each instance for the
    /// monomorphism statements.
    pub partners: usize,
    pub config: VerifyConfig,
}

impl CorpusSpec {
    pub fn from_instances(instances: Vec<FiniteModule>) -> Self {
        CorpusSpec {
            families: Vec::new(),
            instances,
            size_cap: 64,
            results: None,
            partners: 4,
            config: VerifyConfig::default(),
        }
    }

    /// Cyclic modules over Z_n for n ≤ 60, modules with up to three factors
    /// over Z_{p^k} ≤ 64, and over Z_a × Z_b with ab ≤ 36; |M| ≤ 64.
    pub fn default_corpus() -> Self {
        let mut families: Vec<Family> = (2..=60).map(|n| Family { moduli: vec![n], max_factors: 1 }).collect();
        for q in (2..=64).filter(|&q| is_prime_power(q)) {
            families.push(Family { moduli: vec![q], max_factors: 3 });
        }
        for a in 2..=18u64 {
            for b in a..=36 / a {
                families.push(Family { moduli: vec![a, b], max_factors: 3 });
            }
        }
        CorpusSpec { families, ..CorpusSpec::from_instances(Vec::new()) }
    }

    /// The instance list, in corpus order and without repeats.
    pub fn expand(&self) -> Result<Vec<FiniteModule>> {
        let mut out = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        let mut push = |m: FiniteModule| {
            if seen.insert(m.to_string()) {
                out.push(m);
            }
        };
        for family in &self.families {
            let ring = FiniteRing::new(family.moduli.clone())?;
            for m in family_modules(&ring, family.max_factors, self.size_cap)? {
                push(m);
            }
        }
        for m in &self.instances {
            push(m.clone());
        }
        Ok(out)
    }
}

fn family_modules(ring: &FiniteRing, max_factors: usize, size_cap: usize) -> Result<Vec<FiniteModule>> {
    // proper ideals, largest quotient last so small modules come first
    let mut ideals: Vec<_> = ring.ideals().into_iter().filter(|i| !i.is_whole()).collect();
    ideals.sort_by_key(|i| (i.generators().iter().product::<u64>(), i.generators().to_vec()));
    let orders: Vec<u64> = ideals.iter().map(|i| i.generators().iter().product()).collect();
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn walk(
        start: usize,
        size: u64,
        stack: &mut Vec<usize>,
        ctx: (&FiniteRing, &[crate::ring::Ideal], &[u64], usize, u64),
        out: &mut Vec<Result<FiniteModule>>,
    ) {
        let (ring, ideals, orders, max_factors, cap) = ctx;
        if !stack.is_empty() {
            let factors: Vec<_> = stack.iter().map(|&j| ideals[j].clone()).collect();
            out.push(build_module(ring, &factors));
        }
        if stack.len() == max_factors {
            return;
        }
        for (j, &order) in orders.iter().enumerate().skip(start) {
            if size * order > cap {
                break;
            }
            stack.push(j);
            walk(j, size * order, stack, ctx, out);
            stack.pop();
        }
    }
    walk(0, 1, &mut stack, (ring, &ideals, &orders, max_factors, size_cap as u64), &mut out);
    let mut modules = out.into_iter().collect::<Result<Vec<_>>>()?;
    modules.sort_by_key(|m| m.order());
    Ok(modules)
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub pass: usize,
    pub pass_bounded: usize,
    pub fail: usize,
    pub skipped: usize,
}

impl Counts {
    fn add(&mut self, status: Status) {
        match status {
            Status::Pass => self.pass += 1,
            Status::PassBounded => self.pass_bounded += 1,
            Status::Fail => self.fail += 1,
            Status::SkippedHypothesis => self.skipped += 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ResultSummary {
    pub counts: Counts,
    /// Unmet hypothesis name to number of skipped instances.
    pub skipped_by: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub seed: u64,
    pub instances: usize,
    pub results: Vec<String>,
    pub totals: Counts,
    pub by_result: BTreeMap<String, ResultSummary>,
    pub failures: Vec<VerificationResult>,
}

impl CorpusReport {
    pub fn failed(&self) -> bool {
        self.totals.fail > 0
    }
}

/// Same-ring partners for instance `i`: up to `limit` others, chosen by a
/// seeded shuffle so the choice does not depend on corpus position alone.
fn partners_for(i: usize, modules: &[FiniteModule], analyses: &[Arc<ModuleAnalysis>], limit: usize, seed: u64) -> Vec<Arc<ModuleAnalysis>> {
    let ring = modules[i].ring();
    let mut candidates: Vec<usize> = (0..modules.len()).filter(|&j| j != i && modules[j].ring() == ring).collect();
    if candidates.len() > limit {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a(&format!("{}#partners", modules[i])));
        for k in 0..limit {
            let pick = k + (rng.next_u64() % (candidates.len() - k) as u64) as usize;
            candidates.swap(k, pick);
        }
        candidates.truncate(limit);
        candidates.sort_unstable();
    }
    candidates.into_iter().map(|j| analyses[j].clone()).collect()
}

#[cfg(feature = "parallel")]
fn map_indexed<T: Send, F: Fn(usize) -> T + Sync + Send>(n: usize, f: F) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_indexed<T, F: Fn(usize) -> T>(n: usize, f: F) -> Vec<T> {
    (0..n).map(f).collect()
}

/// Runs the selected results on every instance. Evaluation may be parallel;
/// the report is folded in corpus order.
pub fn run_corpus(spec: &CorpusSpec) -> Result<CorpusReport> {
    let modules = spec.expand()?;
    let entries: Vec<&Entry> = match &spec.results {
        None => select(&[])?,
        Some(ids) if ids.is_empty() => Vec::new(),
        Some(ids) => select(ids)?,
    };
    run_modules(&modules, &entries, spec.partners, &spec.config)
}

pub fn run_modules(modules: &[FiniteModule], entries: &[&Entry], partners: usize, config: &VerifyConfig) -> Result<CorpusReport> {
    let mut report = CorpusReport {
        seed: config.seed,
        instances: modules.len(),
        results: entries.iter().map(|e| e.id.to_string()).collect(),
        totals: Counts::default(),
        by_result: entries.iter().map(|e| (e.id.to_string(), ResultSummary::default())).collect(),
        failures: Vec::new(),
    };
    if entries.is_empty() {
        return Ok(report);
    }
    let analyses = map_indexed(modules.len(), |i| ModuleAnalysis::new(&modules[i]).map(Arc::new))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let rows = map_indexed(modules.len(), |i| -> Result<Vec<VerificationResult>> {
        let partner_list = partners_for(i, modules, &analyses, partners, config.seed);
        let ctx = VerifyContext::with_partners(analyses[i].clone(), *config, modules[i].to_string(), partner_list)?;
        entries.iter().map(|e| run_entry(&ctx, e)).collect()
    });
    for row in rows {
        for result in row? {
            report.totals.add(result.status);
            let summary = report.by_result.get_mut(&result.result_id).expect("selected id");
            summary.counts.add(result.status);
            if let Some(h) = &result.skipped {
                *summary.skipped_by.entry(h.clone()).or_default() += 1;
            }
            if result.status == Status::Fail {
                report.failures.push(result);
            }
        }
    }
    Ok(report)
}
