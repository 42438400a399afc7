//! OFF (n = 3) and PLPOSET (JSON, any n) surface formats.

use std::collections::HashMap;

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::poset::{FacePoset, FaceSpec, PosetError, Rank};
use super::surface::{FacetEquation, PlSurface, Realization};
use crate::scalar::{format_rational, parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Off,
    PlPoset,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceIoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("ambient dimension {0} is below 3")]
    Dimension(usize),
    #[error("missing link: {0}")]
    MissingLink(String),
    #[error("format error: {0}")]
    Format(String),
}

impl From<PosetError> for SurfaceIoError {
    fn from(e: PosetError) -> Self {
        match e {
            PosetError::Dimension(n) => SurfaceIoError::Dimension(n),
            other => SurfaceIoError::MissingLink(other.to_string()),
        }
    }
}

fn parse_err(msg: impl Into<String>) -> SurfaceIoError {
    SurfaceIoError::Parse(msg.into())
}

/// Guesses the format from content: `{` means PLPOSET, otherwise OFF.
pub fn sniff(text: &str) -> Format {
    if text.trim_start().starts_with('{') {
        Format::PlPoset
    } else {
        Format::Off
    }
}

pub fn parse_surface(text: &str, format: Format) -> Result<PlSurface, SurfaceIoError> {
    match format {
        Format::Off => parse_off(text),
        Format::PlPoset => parse_plposet(text),
    }
}

pub fn emit_surface(surface: &PlSurface, format: Format) -> Result<String, SurfaceIoError> {
    match format {
        Format::Off => emit_off(surface),
        Format::PlPoset => Ok(emit_plposet(surface)),
    }
}

pub fn parse_off(text: &str) -> Result<PlSurface, SurfaceIoError> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| parse_err("empty input"))?;
    let mut header_tokens = header.split_whitespace();
    if header_tokens.next() != Some("OFF") {
        return Err(parse_err("missing OFF header"));
    }
    let rest: Vec<&str> = header_tokens.collect();
    let counts_line = if rest.is_empty() { lines.next().ok_or_else(|| parse_err("missing counts line"))?.to_string() } else { rest.join(" ") };
    let counts: Vec<usize> = counts_line
        .split_whitespace()
        .map(|t| t.parse().map_err(|_| parse_err(format!("bad count {t:?}"))))
        .collect::<Result<_, _>>()?;
    if counts.len() < 2 {
        return Err(parse_err("counts line needs V F E"));
    }
    let (nv, nf) = (counts[0], counts[1]);
    let mut coords = Vec::with_capacity(nv);
    for i in 0..nv {
        let line = lines.next().ok_or_else(|| parse_err(format!("truncated at vertex {i}")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() < 3 {
            return Err(parse_err(format!("vertex {i} needs 3 coordinates")));
        }
        let p = toks[..3]
            .iter()
            .map(|t| parse_rational(t).map_err(|e| parse_err(format!("vertex {i}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        coords.push(p);
    }
    let mut polygons = Vec::with_capacity(nf);
    for i in 0..nf {
        let line = lines.next().ok_or_else(|| parse_err(format!("truncated at face {i}")))?;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let k: usize = toks.first().and_then(|t| t.parse().ok()).ok_or_else(|| parse_err(format!("face {i}: bad size")))?;
        if k < 3 || toks.len() < k + 1 {
            return Err(parse_err(format!("face {i}: expected {k} indices")));
        }
        let poly = toks[1..=k]
            .iter()
            .map(|t| t.parse::<u32>().map_err(|_| parse_err(format!("face {i}: bad index {t:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(&v) = poly.iter().find(|&&v| v as usize >= nv) {
            return Err(SurfaceIoError::MissingLink(format!("face {i} references unknown vertex {v}")));
        }
        polygons.push(poly);
    }
    Ok(PlSurface::from_polygons(coords, &polygons)?)
}

pub fn emit_off(surface: &PlSurface) -> Result<String, SurfaceIoError> {
    if surface.ambient_dim() != 3 {
        return Err(SurfaceIoError::Format(format!("OFF needs n = 3, got {}", surface.ambient_dim())));
    }
    let coords = surface.coords().ok_or_else(|| SurfaceIoError::Format("OFF needs vertex coordinates".into()))?;
    let p = &surface.poset;
    let mut out = String::new();
    out.push_str("OFF\n");
    out.push_str(&format!("{} {} {}\n", coords.len(), p.count(Rank::Facet), p.count(Rank::Ridge)));
    for c in coords {
        let parts: Vec<String> = c.iter().map(format_rational).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    for f in 0..p.count(Rank::Facet) {
        let poly = surface.polygon(f);
        out.push_str(&poly.len().to_string());
        for v in poly {
            out.push(' ');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    Ok(out)
}

fn rational_of(v: &Value, what: &str) -> Result<Rational, SurfaceIoError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| parse_err(format!("{what}: {e}"))),
        Value::Number(n) => parse_rational(&n.to_string()).map_err(|e| parse_err(format!("{what}: {e}"))),
        _ => Err(parse_err(format!("{what}: expected a rational string"))),
    }
}

fn int_list(v: Option<&Value>, what: &str) -> Result<Vec<u64>, SurfaceIoError> {
    let Some(v) = v else { return Ok(Vec::new()) };
    v.as_array()
        .ok_or_else(|| parse_err(format!("{what}: expected an array")))?
        .iter()
        .map(|x| x.as_u64().ok_or_else(|| parse_err(format!("{what}: expected non-negative integers"))))
        .collect()
}

struct RawFace {
    id: u64,
    vertices: Vec<u64>,
    contains: Vec<u64>,
}

fn faces_at(faces: &Map<String, Value>, n: usize, dim: usize) -> Result<Option<Vec<RawFace>>, SurfaceIoError> {
    let symbolic = match n - dim {
        3 => "n-3",
        2 => "n-2",
        1 => "n-1",
        _ => "",
    };
    let entry = faces.get(&dim.to_string()).or_else(|| faces.get(symbolic));
    let Some(entry) = entry else { return Ok(None) };
    let list = entry.as_array().ok_or_else(|| parse_err(format!("faces[{dim}]: expected an array")))?;
    list.iter()
        .enumerate()
        .map(|(i, rec)| {
            let what = format!("faces[{dim}][{i}]");
            let id = rec.get("id").and_then(Value::as_u64).ok_or_else(|| parse_err(format!("{what}: missing id")))?;
            Ok(RawFace {
                id,
                vertices: int_list(rec.get("vertices"), &what)?,
                contains: int_list(rec.get("contains"), &what)?,
            })
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn id_map(faces: &[RawFace], what: &str) -> Result<HashMap<u64, u32>, SurfaceIoError> {
    let mut map = HashMap::with_capacity(faces.len());
    for (i, f) in faces.iter().enumerate() {
        if map.insert(f.id, i as u32).is_some() {
            return Err(parse_err(format!("duplicate {what} id {}", f.id)));
        }
    }
    Ok(map)
}

fn resolve(ids: &[u64], map: &HashMap<u64, u32>, owner: &str, target: &str) -> Result<Vec<u32>, SurfaceIoError> {
    ids.iter()
        .map(|i| map.get(i).copied().ok_or_else(|| SurfaceIoError::MissingLink(format!("{owner} references unknown {target} {i}"))))
        .collect()
}

pub fn parse_plposet(text: &str) -> Result<PlSurface, SurfaceIoError> {
    let root: Value = serde_json::from_str(text).map_err(|e| parse_err(e.to_string()))?;
    let n = root.get("dimension").and_then(Value::as_u64).ok_or_else(|| parse_err("missing \"dimension\""))? as usize;
    if n < 3 {
        return Err(SurfaceIoError::Dimension(n));
    }
    let coords: Option<Vec<Vec<Rational>>> = match root.get("vertices") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let rows = v.as_array().ok_or_else(|| parse_err("\"vertices\": expected an array"))?;
            let parsed = rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    let row = row.as_array().ok_or_else(|| parse_err(format!("vertex {i}: expected an array")))?;
                    if row.len() != n {
                        return Err(parse_err(format!("vertex {i}: expected {n} coordinates")));
                    }
                    row.iter().map(|x| rational_of(x, &format!("vertex {i}"))).collect()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Some(parsed)
        }
    };
    let faces = root.get("faces").and_then(Value::as_object).ok_or_else(|| parse_err("missing \"faces\" object"))?;
    let vertex_faces = faces_at(faces, n, 0)?;
    let num_vertices = match (&vertex_faces, &coords) {
        (Some(v), _) => v.len(),
        (None, Some(c)) => c.len(),
        (None, None) => return Err(parse_err("need \"vertices\" or faces of dimension 0")),
    };
    if let (Some(c), Some(v)) = (&coords, &vertex_faces) {
        if c.len() != v.len() {
            return Err(parse_err("vertex records and coordinates disagree in count"));
        }
    }
    // Vertex ids: record ids when dimension-0 records are given, else positions.
    let vmap: HashMap<u64, u32> = match &vertex_faces {
        Some(v) => id_map(v, "vertex")?,
        None => (0..num_vertices as u64).map(|i| (i, i as u32)).collect(),
    };
    let load = |dim: usize| -> Result<Vec<RawFace>, SurfaceIoError> {
        faces_at(faces, n, dim)?.ok_or_else(|| parse_err(format!("missing faces of dimension {dim}")))
    };
    let ridges_raw = load(n - 2)?;
    let facets_raw = load(n - 1)?;
    let (subs_raw, sub_map) = if n == 3 {
        (Vec::new(), vmap.clone())
    } else {
        let s = load(n - 3)?;
        let m = id_map(&s, "sub-face")?;
        (s, m)
    };
    let ridge_map = id_map(&ridges_raw, "ridge")?;
    let facet_map = id_map(&facets_raw, "facet")?;
    let spec = |raw: &[RawFace], lower: &HashMap<u64, u32>, what: &str, target: &str| -> Result<Vec<FaceSpec>, SurfaceIoError> {
        raw.iter()
            .map(|f| {
                let owner = format!("{what} {}", f.id);
                Ok(FaceSpec {
                    vertices: resolve(&f.vertices, &vmap, &owner, "vertex")?,
                    contains: resolve(&f.contains, lower, &owner, target)?,
                })
            })
            .collect()
    };
    let subs = spec(&subs_raw, &HashMap::new(), "sub-face", "face")?;
    let ridges = spec(&ridges_raw, &sub_map, "ridge", "sub-face")?;
    let facets = spec(&facets_raw, &ridge_map, "facet", "ridge")?;
    let poset = FacePoset::new(n, num_vertices, subs, ridges, facets)?;

    let equations = match root.get("facet_equations") {
        None | Some(Value::Null) => None,
        Some(v) => {
            let list = v.as_array().ok_or_else(|| parse_err("\"facet_equations\": expected an array"))?;
            let mut eqs: Vec<Option<FacetEquation>> = vec![None; facets_raw.len()];
            for (i, rec) in list.iter().enumerate() {
                let what = format!("facet_equations[{i}]");
                let id = rec.get("id").and_then(Value::as_u64).ok_or_else(|| parse_err(format!("{what}: missing id")))?;
                let idx = *facet_map
                    .get(&id)
                    .ok_or_else(|| SurfaceIoError::MissingLink(format!("{what} references unknown facet {id}")))?;
                let normal = rec
                    .get("normal")
                    .and_then(Value::as_array)
                    .ok_or_else(|| parse_err(format!("{what}: missing normal")))?
                    .iter()
                    .map(|x| rational_of(x, &what))
                    .collect::<Result<Vec<_>, _>>()?;
                if normal.len() != n {
                    return Err(parse_err(format!("{what}: normal needs {n} entries")));
                }
                let offset = rational_of(rec.get("offset").unwrap_or(&Value::Null), &what)?;
                eqs[idx as usize] = Some(FacetEquation { normal, offset });
            }
            let eqs = eqs
                .into_iter()
                .enumerate()
                .map(|(i, e)| e.ok_or_else(|| SurfaceIoError::MissingLink(format!("facet {} has no equation", facets_raw[i].id))))
                .collect::<Result<Vec<_>, _>>()?;
            Some(eqs)
        }
    };
    let realization = match (equations, coords) {
        (Some(equations), coords) => Realization::FacetEquations { equations, coords },
        (None, Some(c)) => Realization::VertexCoords(c),
        (None, None) => return Err(parse_err("need vertex coordinates or facet equations")),
    };
    Ok(PlSurface::new(poset, realization))
}

pub fn emit_plposet(surface: &PlSurface) -> String {
    let p = &surface.poset;
    let n = p.ambient_dim();
    let records = |rank: Rank| -> Vec<Value> {
        (0..p.count(rank))
            .map(|i| {
                let mut rec = Map::new();
                rec.insert("id".into(), json!(i));
                rec.insert("vertices".into(), json!(p.vertices(rank, i)));
                if matches!(rank, Rank::Ridge | Rank::Facet) {
                    rec.insert("contains".into(), json!(p.contains(rank, i)));
                }
                Value::Object(rec)
            })
            .collect()
    };
    let mut faces = Map::new();
    faces.insert("0".into(), Value::Array((0..p.num_vertices()).map(|i| json!({"id": i, "vertices": [i]})).collect()));
    if n > 3 {
        faces.insert((n - 3).to_string(), Value::Array(records(Rank::Sub)));
    }
    faces.insert((n - 2).to_string(), Value::Array(records(Rank::Ridge)));
    faces.insert((n - 1).to_string(), Value::Array(records(Rank::Facet)));
    let rational_row = |row: &[Rational]| Value::Array(row.iter().map(|x| Value::String(format_rational(x))).collect());
    let mut root = Map::new();
    root.insert("dimension".into(), json!(n));
    if let Some(c) = surface.coords() {
        root.insert("vertices".into(), Value::Array(c.iter().map(|r| rational_row(r)).collect()));
    }
    root.insert("faces".into(), Value::Object(faces));
    if let Some(eqs) = surface.equations() {
        let list = eqs
            .iter()
            .enumerate()
            .map(|(i, e)| json!({"id": i, "normal": rational_row(&e.normal), "offset": format_rational(&e.offset)}))
            .collect();
        root.insert("facet_equations".into(), Value::Array(list));
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("json values serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::surface::tests_support::cube;
    use crate::complex::validate::validate;

    const CUBE_OFF: &str = "OFF\n# unit cube\n8 6 12\n0 0 0\n1 0 0\n0 1 0\n1 1 0\n0 0 1\n1 0 1\n0 1 1\n1 1 1\n\
4 0 2 3 1\n4 4 5 7 6\n4 0 1 5 4\n4 2 6 7 3\n4 0 4 6 2\n4 1 3 7 5\n";

    #[test]
    fn parses_cube_off() {
        let s = parse_off(CUBE_OFF).unwrap();
        assert_eq!(s.ambient_dim(), 3);
        assert_eq!(s.poset.count(Rank::Vertex), 8);
        assert_eq!(s.poset.count(Rank::Ridge), 12);
        assert_eq!(s.poset.count(Rank::Facet), 6);
        assert!(validate(&s).is_valid());
    }

    #[test]
    fn truncated_off_is_a_parse_error() {
        let cut = &CUBE_OFF[..CUBE_OFF.len() - 20];
        assert!(matches!(parse_off(cut), Err(SurfaceIoError::Parse(_))));
        assert!(matches!(parse_off(""), Err(SurfaceIoError::Parse(_))));
        assert!(matches!(parse_plposet("{\"dimension\": 3, \"faces\""), Err(SurfaceIoError::Parse(_))));
    }

    #[test]
    fn bad_index_and_dimension_errors() {
        let bad = CUBE_OFF.replace("4 1 3 7 5", "4 1 3 7 9");
        assert!(matches!(parse_off(&bad), Err(SurfaceIoError::MissingLink(_))));
        let low = r#"{"dimension": 2, "vertices": [], "faces": {}}"#;
        assert_eq!(parse_plposet(low).unwrap_err(), SurfaceIoError::Dimension(2));
        let dangling = r#"{"dimension": 3, "vertices": [["0","0","0"],["1","0","0"],["0","1","0"]],
            "faces": {"1": [{"id": 0, "vertices": [0, 1], "contains": [0, 1]}],
                      "2": [{"id": 0, "vertices": [0, 1, 2], "contains": [0, 7]}]}}"#;
        assert!(matches!(parse_plposet(dangling), Err(SurfaceIoError::MissingLink(_))));
    }

    #[test]
    fn off_round_trip_is_byte_stable() {
        let s = parse_off(CUBE_OFF).unwrap();
        let text = emit_off(&s).unwrap();
        assert!(text.lines().nth(1) == Some("8 6 12"));
        let again = parse_off(&text).unwrap();
        assert_eq!(emit_off(&again).unwrap(), text);
        assert_eq!(again.coords(), s.coords());
    }

    #[test]
    fn plposet_round_trip_and_symbolic_keys() {
        let s = cube();
        let text = emit_plposet(&s);
        let back = parse_plposet(&text).unwrap();
        assert_eq!(back, s);
        let symbolic = text.replace("\"1\":", "\"n-2\":").replace("\"2\":", "\"n-1\":");
        assert_eq!(parse_plposet(&symbolic).unwrap(), s);
        assert_eq!(sniff(&text), Format::PlPoset);
        assert_eq!(sniff(CUBE_OFF), Format::Off);
    }

    #[test]
    fn decimal_and_fraction_coordinates_are_exact() {
        let off = CUBE_OFF.replacen("1 1 1", "1.0 2/2 1e0", 1);
        let s = parse_off(&off).unwrap();
        assert_eq!(s.coords().unwrap()[7], vec![Rational::from_integer(1.into()); 3]);
    }
}
