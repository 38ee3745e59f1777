//! wasm-bindgen exports for the static page in `www/`.
//!
//! Every function returns a flat `Float64Array`; rows are laid out back to back.

use std::str::FromStr;

use wasm_bindgen::prelude::*;

use proflow::closed_forms::FlowKind;
use proflow::plots::{self, Grid};
use proflow::special::{cm, cp, hyper_w, sm, sp};
use proflow::CNum;

fn kind(name: &str) -> Result<FlowKind, String> {
    FlowKind::from_str(name).map_err(|e| e.to_string())
}

fn grid(lo: f64, hi: f64, n: usize) -> Result<Grid, String> {
    Grid::new(lo, hi, n).map_err(|e| e.to_string())
}

/// Rows `[x, y, sign]`; `sign` is NaN where the flow is undefined or not real.
#[wasm_bindgen]
pub fn sign_grid(flow: &str, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, String> {
    let cells = plots::sign_grid(kind(flow)?, &grid(lo, hi, n)?);
    Ok(cells.iter().flat_map(|c| [c.x, c.y, c.sign.map_or(f64::NAN, f64::from)]).collect())
}

/// Rows `[x, y, u, v]` with `(u, v)` the unit direction of the field.
#[wasm_bindgen]
pub fn vector_field(flow: &str, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, String> {
    let arrows = plots::vector_field_grid(kind(flow)?, &grid(lo, hi, n)?);
    Ok(arrows.iter().flat_map(|a| [a.x, a.y, a.u, a.v]).collect())
}

/// Rows `[t, x, y]` along the orbit through `(x, y)`.
#[wasm_bindgen]
pub fn orbit(flow: &str, x: f64, y: f64, t_lo: f64, t_hi: f64, steps: usize) -> Result<Vec<f64>, String> {
    let pts = plots::orbit_trace(kind(flow)?, x, y, t_lo, t_hi, steps).map_err(|e| e.to_string())?;
    Ok(pts.iter().flat_map(|p| [p.t, p.x, p.y]).collect())
}

/// Rows `[x, y]` of the two overlay curves: `which` is `"c0"` or `"pi"`.
#[wasm_bindgen]
pub fn overlay(which: &str, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>, String> {
    let pts = match which {
        "c0" => plots::c0_curve(-60.0, 0.999, n).map_err(|e| e.to_string())?,
        "pi" => plots::pi_level_curve(lo, hi, n),
        _ => return Err(format!("unknown overlay `{which}`")),
    };
    Ok(pts.iter().flat_map(|&(x, y)| [x, y]).collect())
}

/// `[re, im, error bound]` of `sm`, `cm`, `sp`, `cp` or `W` at `re + i·im`; infinities come back as `inf`.
#[wasm_bindgen]
pub fn special(func: &str, re: f64, im: f64) -> Result<Vec<f64>, String> {
    let u = CNum::new(re, im);
    let v = match func {
        "sm" => sm(u),
        "cm" => cm(u),
        "sp" => sp(u),
        "cp" => cp(u),
        "W" | "w" => hyper_w(u).map_err(|e| e.to_string())?,
        _ => return Err(format!("unknown function `{func}`")),
    };
    if v.is_finite() {
        Ok(vec![v.re, v.im, v.err])
    } else {
        Ok(vec![f64::INFINITY, f64::INFINITY, f64::INFINITY])
    }
}
