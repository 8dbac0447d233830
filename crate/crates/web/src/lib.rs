//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Each export is a thin wrapper over a plain function so the same code runs in native tests.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use qfsep::boundary::limit_set_sample;
use qfsep::certificates::{find_separation_certificate, ratio_lower_bound, MIN_RATIO};
use qfsep::representations::{bend, cayley, compute_spectrum, fuchsian_octagon};
use qfsep::{ProjPoint, Representation};

/// Word length caps keeping each call interactive.
pub const MAX_LIMIT_LEN: usize = 7;
pub const MAX_CERT_LEN: usize = 7;
pub const MAX_SPECTRUM_LEN: usize = 5;

fn bent(angle: f64) -> Result<Representation, String> {
    bend(&fuchsian_octagon(), angle).map_err(|e| e.to_string())
}

/// Limit points of `bend(angle)` in the disk model, flattened as `x, y, reference angle` triples.
pub fn limit_points(angle: f64, maxlen: usize) -> Result<Vec<f64>, String> {
    let rep = bent(angle)?;
    let sample = limit_set_sample(&rep, maxlen.clamp(1, MAX_LIMIT_LEN)).map_err(|e| e.to_string())?;
    let to_disk = cayley().inverse();
    let mut out = Vec::with_capacity(3 * sample.entries.len());
    for e in &sample.entries {
        let p = e.image.map_or(ProjPoint::infinity(), ProjPoint::finite);
        if let Some(w) = to_disk.apply_proj(p).to_complex() {
            out.extend([w.re, w.im, e.angle_ref]);
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct CertificateView {
    found: bool,
    a: Option<String>,
    b: Option<String>,
    ratio: Option<f64>,
    alpha: Option<f64>,
    message: String,
}

/// Certificate search for `bend(angle)` as a JSON summary.
pub fn certificate_summary(angle: f64, maxlen: usize) -> Result<String, String> {
    let rep = bent(angle)?;
    let view = match find_separation_certificate(&rep, maxlen.clamp(2, MAX_CERT_LEN), MIN_RATIO) {
        Ok(c) => CertificateView {
            found: true,
            message: format!("({}, {}) ratio {:.10}", c.a, c.b, c.ratio),
            a: Some(c.a.to_string()),
            b: Some(c.b.to_string()),
            ratio: Some(c.ratio),
            alpha: Some(c.alpha),
        },
        Err(e) => CertificateView { found: false, a: None, b: None, ratio: None, alpha: None, message: e.to_string() },
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

/// Ratio-of-ratios lower bound between the spectra of `bend(angle)` and the reference.
pub fn ratio_bound(angle: f64, maxlen: usize) -> Result<f64, String> {
    let maxlen = maxlen.clamp(1, MAX_SPECTRUM_LEN);
    let q = compute_spectrum(&bent(angle)?, maxlen);
    let g = compute_spectrum(&fuchsian_octagon(), maxlen);
    ratio_lower_bound(&q, &g, maxlen).map(|b| b.value).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = limitPoints)]
pub fn limit_points_js(angle: f64, maxlen: usize) -> Result<Vec<f64>, JsError> {
    limit_points(angle, maxlen).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = certificateSummary)]
pub fn certificate_summary_js(angle: f64, maxlen: usize) -> Result<String, JsError> {
    certificate_summary(angle, maxlen).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = ratioBound)]
pub fn ratio_bound_js(angle: f64, maxlen: usize) -> Result<f64, JsError> {
    ratio_bound(angle, maxlen).map_err(|e| JsError::new(&e))
}
