//! Browser bindings for `qdel`. Every export returns a JSON string; the
//! page in `www/` draws from it.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use qdel::criteria::analyze as analyze_rho;
use qdel::states::deletion_output;
use qdel::teleport::{verify_fidelity, FidelityVerification};
use qdel::{CriteriaReport, DeletionParams, CLASSICAL_FIDELITY};

pub const MAX_CURVE_POINTS: usize = 2001;
pub const MAX_SAMPLES: usize = 1_000_000;

#[derive(Serialize)]
struct Analysis {
    alpha: f64,
    m1: f64,
    boundary: bool,
    #[serde(flatten)]
    report: CriteriaReport,
}

#[derive(Serialize)]
struct Curve {
    m1: f64,
    classical: f64,
    alpha: Vec<f64>,
    f_max: Vec<f64>,
    big_m: Vec<f64>,
    ppt_min: Vec<f64>,
}

#[derive(Serialize)]
struct Teleport {
    alpha: f64,
    m1: f64,
    #[serde(flatten)]
    verification: FidelityVerification,
}

fn report(alpha: f64, m1: f64) -> Result<(DeletionParams, CriteriaReport), String> {
    let p = DeletionParams::new(alpha, m1).map_err(|e| e.to_string())?;
    let r = analyze_rho(&deletion_output(&p)).map_err(|e| e.to_string())?;
    Ok((p, r))
}

pub fn analyze_json(alpha: f64, m1: f64) -> Result<String, String> {
    let (p, report) = report(alpha, m1)?;
    let out = Analysis {
        alpha,
        m1,
        boundary: p.is_boundary(),
        report,
    };
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

/// `F_max`, `M` and the smallest PPT eigenvalue on `points` evenly spaced
/// values of `alpha` in `[0, 1]`.
pub fn fidelity_curve_json(m1: f64, points: usize) -> Result<String, String> {
    if !(2..=MAX_CURVE_POINTS).contains(&points) {
        return Err(format!(
            "points must be in 2..={MAX_CURVE_POINTS}, got {points}"
        ));
    }
    let mut curve = Curve {
        m1,
        classical: CLASSICAL_FIDELITY,
        alpha: Vec::with_capacity(points),
        f_max: Vec::with_capacity(points),
        big_m: Vec::with_capacity(points),
        ppt_min: Vec::with_capacity(points),
    };
    for k in 0..points {
        let alpha = k as f64 / (points - 1) as f64;
        let (_, r) = report(alpha, m1)?;
        curve.alpha.push(alpha);
        curve.f_max.push(r.f_max);
        curve.big_m.push(r.big_m);
        curve.ppt_min.push(r.ppt_min());
    }
    serde_json::to_string(&curve).map_err(|e| e.to_string())
}

pub fn teleport_json(alpha: f64, m1: f64, samples: usize, seed: u64) -> Result<String, String> {
    if samples > MAX_SAMPLES {
        return Err(format!("at most {MAX_SAMPLES} samples in the browser"));
    }
    let p = DeletionParams::new(alpha, m1).map_err(|e| e.to_string())?;
    let verification =
        verify_fidelity(&deletion_output(&p), samples, seed).map_err(|e| e.to_string())?;
    serde_json::to_string(&Teleport {
        alpha,
        m1,
        verification,
    })
    .map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn analyze(alpha: f64, m1: f64) -> Result<String, JsValue> {
    analyze_json(alpha, m1).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn fidelity_curve(m1: f64, points: u32) -> Result<String, JsValue> {
    fidelity_curve_json(m1, points as usize).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn teleport(alpha: f64, m1: f64, samples: u32, seed: u32) -> Result<String, JsValue> {
    teleport_json(alpha, m1, samples as usize, seed as u64).map_err(|e| JsValue::from_str(&e))
}
