//! wasm-bindgen entry points for the static page in `www/`.
//!
//! Every function takes and returns plain strings so the page needs no glue
//! beyond the generated bindings. Errors come back as `{"error": ...}`.

use plconvex::complex::io::{emit_off, parse_surface, sniff};
use plconvex::fan::{c_check, Fan3};
use plconvex::generator::{generate, Family, GenSpec, Generated};
use plconvex::scalar::parse_rational;
use plconvex::verifier::{check_convexity, Mode};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn error(msg: impl std::fmt::Display) -> String {
    json!({ "error": msg.to_string() }).to_string()
}

fn mode_of(mode: &str, eps: f64) -> Result<Mode, String> {
    match mode {
        "exact" => Ok(Mode::exact(0)),
        "float" => Ok(Mode::float(eps, 0)),
        other => Err(format!("unknown mode {other:?}")),
    }
}

/// Verify a surface given as OFF or PLPOSET text. Returns the report JSON.
#[wasm_bindgen]
pub fn check_surface(text: &str, mode: &str, eps: f64) -> String {
    let mode = match mode_of(mode, eps) {
        Ok(m) => m,
        Err(e) => return error(e),
    };
    match parse_surface(text, sniff(text)) {
        Ok(s) => check_convexity(&s, mode).to_json().to_string(),
        Err(e) => error(e),
    }
}

/// Run the fan check on rays given one per line as three rationals.
#[wasm_bindgen]
pub fn check_fan(text: &str) -> String {
    let mut rays = Vec::new();
    for (i, line) in text.lines().map(str::trim).enumerate() {
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 3 {
            return error(format!("line {}: expected 3 coordinates", i + 1));
        }
        let mut ray = Vec::with_capacity(3);
        for p in parts {
            match parse_rational(p) {
                Ok(q) => ray.push(q),
                Err(e) => return error(format!("line {}: {e}", i + 1)),
            }
        }
        rays.push([ray[0].clone(), ray[1].clone(), ray[2].clone()]);
    }
    if rays.len() < 3 {
        return error("a fan needs at least 3 rays");
    }
    let v = c_check(&Fan3::new(rays), 0);
    json!({
        "status": format!("{:?}", v.status),
        "reason": format!("{:?}", v.reason),
        "witness_index": v.witness_index,
    })
    .to_string()
}

fn family_of(name: &str) -> Option<Family> {
    Some(match name {
        "random-hull" => Family::RandomHull,
        "cube" => Family::Cube,
        "simplex" => Family::Simplex,
        "cross-polytope" => Family::CrossPolytope,
        "dodecahedron" => Family::Dodecahedron,
        "torus" => Family::Torus,
        _ => return None,
    })
}

/// Generate a 3-dimensional instance as OFF text. A non-empty `depth`
/// dents one vertex of it. Returns `{"off": ..., "dented_vertex": ...}`.
#[wasm_bindgen]
pub fn generate_off(family: &str, points: usize, seed: u64, depth: &str) -> String {
    let Some(family) = family_of(family) else { return error(format!("unknown family {family:?}")) };
    let mut spec = GenSpec::new(3, family, points, seed);
    if !depth.trim().is_empty() {
        match parse_rational(depth.trim()) {
            Ok(d) => spec = GenSpec::dented(spec, d),
            Err(e) => return error(e),
        }
    }
    match generate(&spec) {
        Ok(Generated::Surface { surface, dented_vertex }) => match emit_off(&surface) {
            Ok(off) => json!({ "off": off, "dented_vertex": dented_vertex }).to_string(),
            Err(e) => error(e),
        },
        Ok(Generated::Fan(_)) => error("family produced a fan"),
        Err(e) => error(e),
    }
}
