//! Browser bindings. Each export takes instance text and returns a text
//! report; errors come back as JS exceptions.

use fixedbitset::FixedBitSet;
use slspec::instance::parse_instance;
use slspec::lattice::DEFAULT_MAX_ELEMENTS;
use slspec::report::{self, Report};
use slspec::spectrum::ModuleAnalysis;
use slspec::theorems::{select, VerifyConfig};
use slspec::variety::{build_space, SpaceKind};
use wasm_bindgen::prelude::*;

/// Kept small so the page stays responsive.
pub const WEB_MAX_ELEMENTS: usize = 256;

fn limit() -> usize {
    WEB_MAX_ELEMENTS.min(DEFAULT_MAX_ELEMENTS)
}

pub fn analyze_text(instance: &str, over_z: bool) -> Result<String, String> {
    let inst = parse_instance(instance, over_z).map_err(|e| e.to_string())?;
    let a = report::analyze(&inst, limit()).map_err(|e| e.to_string())?;
    Ok(Report::Analyze(Box::new(a)).to_text())
}

/// `ids` is a comma- or space-separated list; empty means all.
pub fn verify_text(instance: &str, ids: &str, over_z: bool) -> Result<String, String> {
    let inst = parse_instance(instance, over_z).map_err(|e| e.to_string())?;
    let ids: Vec<String> = ids.split([',', ' ']).filter(|s| !s.is_empty()).map(str::to_string).collect();
    let entries = select(&ids).map_err(|e| e.to_string())?;
    let r = report::verify(&inst, &entries, &VerifyConfig::default(), limit()).map_err(|e| e.to_string())?;
    Ok(Report::Verify(r).to_text())
}

/// Cl(Y) for Y given as Spec^L positions, next to ν^s(H(Y)).
pub fn closure_text(instance: &str, points: &str, over_z: bool) -> Result<String, String> {
    let inst = parse_instance(instance, over_z).map_err(|e| e.to_string())?;
    let analysis = ModuleAnalysis::with_limit(&inst.module, limit()).map_err(|e| e.to_string())?;
    let sl = build_space(&analysis, SpaceKind::Sl).map_err(|e| e.to_string())?;
    let n = sl.len();
    let mut y = FixedBitSet::with_capacity(n);
    for tok in points.split([',', ' ']).filter(|s| !s.is_empty()) {
        let k: usize = tok.parse().map_err(|_| format!("bad point position {tok:?}"))?;
        if k >= n {
            return Err(format!("position {k} out of range; Spec^L has {n} points"));
        }
        y.insert(k);
    }
    let h = analysis.socle_sum(&y);
    let closure = sl.closure(&y);
    let formula = analysis.nu_s(h);
    let mut out = String::new();
    for (k, &id) in analysis.spec_l().iter().enumerate() {
        out.push_str(&format!("#{k} {}\n", analysis.text(id)));
    }
    let names = |s: &FixedBitSet| analysis.spec_l_text(s).join(" ");
    out.push_str(&format!("Y = {}\n", names(&y)));
    out.push_str(&format!("H(Y) = {}\n", analysis.text(h)));
    out.push_str(&format!("Cl(Y) = {}\n", names(&closure)));
    out.push_str(&format!("nu_s(H(Y)) = {}\n", names(&formula)));
    out.push_str(if closure == formula { "equal\n" } else { "DIFFERENT\n" });
    Ok(out)
}

#[wasm_bindgen]
pub fn analyze(instance: &str, over_z: bool) -> Result<String, JsError> {
    analyze_text(instance, over_z).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(instance: &str, ids: &str, over_z: bool) -> Result<String, JsError> {
    verify_text(instance, ids, over_z).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn closure(instance: &str, points: &str, over_z: bool) -> Result<String, JsError> {
    closure_text(instance, points, over_z).map_err(|e| JsError::new(&e))
}
