//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Three operations: render a square-grid picture of `F_n`, analyze one function,
//! and maximize its Bell violation. The plain functions return `Result<_, String>`
//! so they can be tested natively; the exported wrappers turn errors into `JsError`.

use boolbell::bell::{max_violation, violation_objective, PhaseVector};
use boolbell::boolfn::{degree, mobius, TruthTable, MAX_TABLE_ARITY};
use boolbell::spectral::{nonlinearity_of_spectrum, uncertainty_parts, wht_fast};
use boolbell::viz::{legend_csv, render, ColorMap, Metric, SquareGrid};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// A rendered grid with its colors.
#[wasm_bindgen]
pub struct Picture {
    grid: SquareGrid,
    colors: ColorMap,
}

#[wasm_bindgen]
impl Picture {
    /// Cells per side.
    pub fn side(&self) -> usize {
        self.grid.side()
    }

    /// Row-major RGBA bytes, one pixel per cell, ready for `ImageData`.
    pub fn rgba(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.grid.cells().len() * 4);
        for v in self.grid.cells() {
            let [r, g, b] = self.colors.color(v).expect("palette built from the grid");
            out.extend_from_slice(&[r, g, b, 255]);
        }
        out
    }

    /// `value,r,g,b` rows.
    pub fn legend(&self) -> String {
        legend_csv(&self.colors)
    }

    /// Function index and metric value shown in 1-based cell `(i, j)`.
    pub fn describe(&self, i: usize, j: usize) -> String {
        let side = self.grid.side();
        if i == 0 || j == 0 || i > side || j > side {
            return String::new();
        }
        let b = (i - 1) * side + (j - 1);
        format!("B = {b}, value = {}", self.grid.cells()[b])
    }
}

pub fn picture(n: usize, metric: &str) -> Result<Picture, String> {
    let metric: Metric = metric.parse().map_err(|e: boolbell::Error| e.to_string())?;
    let grid = render(n, metric).map_err(|e| e.to_string())?;
    let colors = ColorMap::for_grid(&grid);
    Ok(Picture { grid, colors })
}

/// Decimal index for `n <= 6`, or `0b` and `2^n` bits with `f(2^n - 1)` first.
pub fn parse_function(n: usize, text: &str) -> Result<TruthTable, String> {
    let text = text.trim();
    if let Some(bits) = text.strip_prefix("0b") {
        if n > MAX_TABLE_ARITY || bits.len() != 1 << n {
            return Err(format!("expected {} bits for n = {n}", 1u64 << n.min(63)));
        }
        let values = bits
            .chars()
            .rev()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(format!("invalid bit '{other}'")),
            })
            .collect::<Result<Vec<bool>, String>>()?;
        return TruthTable::from_values(&values).map_err(|e| e.to_string());
    }
    let index: u64 = text
        .parse()
        .map_err(|_| format!("invalid index '{text}'"))?;
    TruthTable::from_index(n, index).map_err(|e| e.to_string())
}

pub fn analysis_json(n: usize, index: &str) -> Result<String, String> {
    let t = parse_function(n, index)?;
    let w = wht_fast(&t);
    let u = uncertainty_parts(&t);
    Ok(json!({
        "n": n,
        "spectrum": w.coeffs(),
        "anf": mobius(&t).monomials(),
        "degree": degree(&t),
        "weight": t.weight(),
        "nonlinearity": nonlinearity_of_spectrum(&w),
        "NW": u.nw,
        "NDelta": u.ndelta,
        "uncertainty": format!("{}/{}", u.value.numer(), u.value.denom()),
    })
    .to_string())
}

pub fn violation_json(n: usize, index: &str) -> Result<String, String> {
    let t = parse_function(n, index)?;
    let r = max_violation(&t).map_err(|e| e.to_string())?;
    Ok(json!({ "n": n, "v": r.value, "phases": r.phases.phases() }).to_string())
}

pub fn objective_at(n: usize, index: &str, phases: Vec<f64>) -> Result<f64, String> {
    let t = parse_function(n, index)?;
    violation_objective(&t, &PhaseVector::new(phases)).map_err(|e| e.to_string())
}

#[wasm_bindgen(js_name = renderGrid)]
pub fn render_grid(n: usize, metric: &str) -> Result<Picture, JsError> {
    picture(n, metric).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = analyzeFunction)]
pub fn analyze_function(n: usize, index: &str) -> Result<String, JsError> {
    analysis_json(n, index).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = maxViolation)]
pub fn max_violation_js(n: usize, index: &str) -> Result<String, JsError> {
    violation_json(n, index).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = violationAt)]
pub fn violation_at(n: usize, index: &str, phases: Vec<f64>) -> Result<f64, JsError> {
    objective_at(n, index, phases).map_err(|e| JsError::new(&e))
}
