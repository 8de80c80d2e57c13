//! Browser front end: verify a family instance, draw its S-matrix as a
//! heatmap, and show its fusion table. Every export takes a family spec
//! string such as `taft:d=4` and returns JSON.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use modkit::datum::{verify_raw, CheckResult, Status, VerifyOptions, VerifyOutcome};
use modkit::families::FamilySpec;
use modkit::{CycMatrix, CycNum};

#[derive(Serialize)]
pub struct ReportView {
    pub spec: String,
    pub classification: String,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub checks: Vec<CheckResult>,
}

#[derive(Serialize)]
pub struct Cell {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub text: String,
}

#[derive(Serialize)]
pub struct HeatmapView {
    pub labels: Vec<String>,
    /// `"normalized"` for `S~`, `"raw"` when no normalizer was found.
    pub scale: String,
    pub cells: Vec<Vec<Cell>>,
}

#[derive(Serialize)]
pub struct FusionView {
    pub labels: Vec<String>,
    /// `products[i][j]` lists `(k, N_{i,j}^k)` for the non-zero constants.
    pub products: Vec<Vec<Vec<(usize, i64)>>>,
    pub signed: bool,
}

fn outcome(spec: &str) -> Result<(FamilySpec, VerifyOutcome), String> {
    let family: FamilySpec = spec.trim().parse().map_err(|e| format!("{e}"))?;
    let raw = family.generate().map_err(|e| e.to_string())?;
    let out = verify_raw(&raw, &VerifyOptions::default());
    Ok((family, out))
}

pub fn report_view(spec: &str) -> Result<ReportView, String> {
    let (family, out) = outcome(spec)?;
    let count = |s: Status| out.report.checks.iter().filter(|c| c.status == s).count();
    Ok(ReportView {
        spec: family.to_string(),
        classification: out.classification.as_str().to_string(),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        checks: out.report.checks.clone(),
    })
}

fn cell(x: &CycNum) -> Cell {
    let (re, im) = x.embed_complex(64).midpoint();
    Cell { re, im, abs: re.hypot(im), text: x.to_string() }
}

fn cells(m: &CycMatrix) -> Vec<Vec<Cell>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(cell).collect()).collect()
}

pub fn heatmap_view(spec: &str) -> Result<HeatmapView, String> {
    let (_, out) = outcome(spec)?;
    if let Some(m) = &out.normalized {
        return Ok(HeatmapView { labels: m.labels.clone(), scale: "normalized".into(), cells: cells(&m.s) });
    }
    let data = out.data.as_ref().ok_or_else(|| "the datum did not reach the normalization step".to_string())?;
    Ok(HeatmapView { labels: data.labels.clone(), scale: "raw".into(), cells: cells(&data.s) })
}

pub fn fusion_view(spec: &str) -> Result<FusionView, String> {
    let (_, out) = outcome(spec)?;
    let t = out.fusion.as_ref().ok_or_else(|| format!("no integral fusion rules ({})", out.classification.as_str()))?;
    let n = t.len();
    let products = (0..n).map(|i| (0..n).map(|j| t.product(i, j)).collect()).collect();
    Ok(FusionView { labels: t.labels.clone(), products, signed: t.has_negative() })
}

fn to_js<T: Serialize>(r: Result<T, String>) -> Result<String, JsValue> {
    r.map(|v| serde_json::to_string(&v).expect("views serialize")).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn verify_family(spec: &str) -> Result<String, JsValue> {
    to_js(report_view(spec))
}

#[wasm_bindgen]
pub fn s_heatmap(spec: &str) -> Result<String, JsValue> {
    to_js(heatmap_view(spec))
}

#[wasm_bindgen]
pub fn fusion_table(spec: &str) -> Result<String, JsValue> {
    to_js(fusion_view(spec))
}
