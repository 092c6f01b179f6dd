//! Text and JSON formats: edge lists, permutation files, factor dumps,
//! placements, minor-model JSON, and report serialization. All text inputs
//! treat `#` as a comment-to-end-of-line marker.

use std::str::FromStr;

use num::rational::Ratio;
use num::BigRational;
use serde_json::{json, Map, Value};

use crate::cube::CubeVertex;
use crate::embed::{EdgePath, EmbedParams, MinorModel};
use crate::error::{Error, Result};
use crate::expander::{BoundReport, CertificateReport, CubicGraph, ExpansionReport, TheoremReport};
use crate::graph::GuestGraph;
use crate::grid::{GridPerm, GridShape, OneDimPerm};
use crate::verify::VerifyReport;

/// Non-comment content lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    })
}

fn parse_two<T: FromStr>(line: usize, body: &str) -> Result<(T, T)> {
    let mut items = body.split_whitespace();
    let err = |msg: &str| Error::Parse {
        line,
        msg: msg.to_string(),
    };
    let a = items
        .next()
        .ok_or_else(|| err("expected two fields"))?
        .parse::<T>()
        .map_err(|_| err("first field is not valid"))?;
    let b = items
        .next()
        .ok_or_else(|| err("expected two fields"))?
        .parse::<T>()
        .map_err(|_| err("second field is not valid"))?;
    if items.next().is_some() {
        return Err(err("trailing fields"));
    }
    Ok((a, b))
}

/// Parses an edge list: one `u v` pair per line, 0-indexed.
pub fn parse_guest_graph(text: &str) -> Result<GuestGraph> {
    let mut edges = Vec::new();
    for (line, body) in content_lines(text) {
        edges.push(parse_two::<usize>(line, body)?);
    }
    GuestGraph::new(edges)
}

pub fn guest_graph_to_text(g: &GuestGraph) -> String {
    let mut out = String::new();
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn cubic_graph_to_text(g: &CubicGraph, header: &str) -> String {
    let mut out = format!("# {header}\n");
    out.push_str(&guest_graph_to_text(&g.to_guest()));
    out
}

/// Comma-separated grid extents, e.g. `2,2,3`.
pub fn parse_shape(text: &str) -> Result<GridShape> {
    let dims = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::InvalidParameter(format!("bad extent {part:?} in shape")))
        })
        .collect::<Result<Vec<_>>>()?;
    GridShape::new(dims)
}

/// Permutation file: content line `k` (0-based) holds the rank of the image
/// of the point with rank `k`.
pub fn parse_grid_perm(text: &str, shape: &GridShape) -> Result<GridPerm> {
    let mut image = Vec::with_capacity(shape.total());
    for (line, body) in content_lines(text) {
        let value = body.parse::<usize>().map_err(|_| Error::Parse {
            line,
            msg: format!("expected a rank, got {body:?}"),
        })?;
        image.push(value);
    }
    GridPerm::new(shape.clone(), image)
}

pub fn grid_perm_to_text(perm: &GridPerm) -> String {
    let mut out = String::new();
    for rank in 0..perm.shape().total() {
        out.push_str(&format!("{}\n", perm.apply_rank(rank)));
    }
    out
}

/// Factor dump: a `factor i direction j` line followed by the factor's full
/// image, one rank per content line.
pub fn factors_to_text(factors: &[OneDimPerm]) -> String {
    let mut out = String::new();
    if let Some(first) = factors.first() {
        let dims: Vec<String> = first.shape().dims().iter().map(|n| n.to_string()).collect();
        out.push_str(&format!(
            "# {} one-dimensional factors over shape {}\n",
            factors.len(),
            dims.join(",")
        ));
    }
    for (i, f) in factors.iter().enumerate() {
        out.push_str(&format!("factor {} direction {}\n", i + 1, f.direction()));
        for rank in 0..f.shape().total() {
            out.push_str(&format!("{}\n", f.apply_rank(rank)));
        }
    }
    out
}

/// Placement file: one `vertex-id vertex-string` line per guest vertex.
pub fn parse_placement(text: &str, g: &GuestGraph, d: usize) -> Result<Vec<CubeVertex>> {
    let mut slots: Vec<Option<CubeVertex>> = vec![None; g.n_vertices()];
    for (line, body) in content_lines(text) {
        let mut items = body.split_whitespace();
        let id = items
            .next()
            .and_then(|t| t.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                line,
                msg: "expected a vertex id".into(),
            })?;
        let vertex = items
            .next()
            .ok_or_else(|| Error::Parse {
                line,
                msg: "expected a vertex string".into(),
            })?
            .parse::<CubeVertex>()?;
        if items.next().is_some() {
            return Err(Error::Parse {
                line,
                msg: "trailing fields".into(),
            });
        }
        if vertex.width() != d {
            return Err(Error::Parse {
                line,
                msg: format!("vertex {vertex} has width {}, expected {d}", vertex.width()),
            });
        }
        if id >= slots.len() {
            return Err(Error::Parse {
                line,
                msg: format!("vertex id {id} out of range (guest has {})", slots.len()),
            });
        }
        if slots[id].replace(vertex).is_some() {
            return Err(Error::Parse {
                line,
                msg: format!("vertex {id} placed twice"),
            });
        }
    }
    slots
        .into_iter()
        .enumerate()
        .map(|(id, slot)| {
            slot.ok_or_else(|| Error::Format(format!("vertex {id} has no placement")))
        })
        .collect()
}

/// Exact rational in `p/q` form; plain integers are read as `p/1`.
pub fn parse_ratio(text: &str) -> Result<Ratio<i64>> {
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text.trim(), "1"),
    };
    let num = num
        .parse::<i64>()
        .map_err(|_| Error::InvalidParameter(format!("bad rational numerator {num:?}")))?;
    let den = den
        .parse::<i64>()
        .map_err(|_| Error::InvalidParameter(format!("bad rational denominator {den:?}")))?;
    if den <= 0 {
        return Err(Error::InvalidParameter(
            "rational denominator must be positive".into(),
        ));
    }
    Ok(Ratio::new(num, den))
}

pub fn ratio_string(r: &Ratio<i64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn big_ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn model_to_json(model: &MinorModel) -> Value {
    let branch_sets: Map<String, Value> = model
        .branch_sets
        .iter()
        .map(|(v, set)| {
            (
                v.to_string(),
                Value::Array(set.iter().map(|x| Value::String(x.text())).collect()),
            )
        })
        .collect();
    let paths: Vec<Value> = model
        .paths
        .iter()
        .map(|p| {
            json!({
                "edge": [p.edge.0, p.edge.1],
                "vertices": p.vertices.iter().map(|x| x.text()).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "d": model.d, "branch_sets": branch_sets, "paths": paths })
}

pub fn model_to_text(model: &MinorModel) -> String {
    let mut out = serde_json::to_string_pretty(&model_to_json(model)).expect("JSON serializes");
    out.push('\n');
    out
}

fn field<'v>(value: &'v Value, key: &str) -> Result<&'v Value> {
    value
        .get(key)
        .ok_or_else(|| Error::Format(format!("missing field {key:?}")))
}

fn as_usize(value: &Value, what: &str) -> Result<usize> {
    value
        .as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::Format(format!("{what} must be a nonnegative integer")))
}

fn as_vertex_array(value: &Value, what: &str) -> Result<Vec<CubeVertex>> {
    value
        .as_array()
        .ok_or_else(|| Error::Format(format!("{what} must be an array")))?
        .iter()
        .map(|item| {
            item.as_str()
                .ok_or_else(|| Error::Format(format!("{what} entries must be strings")))?
                .parse::<CubeVertex>()
        })
        .collect()
}

pub fn model_from_json(value: &Value) -> Result<MinorModel> {
    let d = as_usize(field(value, "d")?, "d")?;
    let mut branch_sets = std::collections::BTreeMap::new();
    let sets = field(value, "branch_sets")?
        .as_object()
        .ok_or_else(|| Error::Format("branch_sets must be an object".into()))?;
    for (key, set) in sets {
        let id = key
            .parse::<usize>()
            .map_err(|_| Error::Format(format!("branch set key {key:?} is not a vertex id")))?;
        branch_sets.insert(id, as_vertex_array(set, "branch set")?);
    }
    let mut paths = Vec::new();
    for entry in field(value, "paths")?
        .as_array()
        .ok_or_else(|| Error::Format("paths must be an array".into()))?
    {
        let edge = field(entry, "edge")?
            .as_array()
            .ok_or_else(|| Error::Format("edge must be an array".into()))?;
        if edge.len() != 2 {
            return Err(Error::Format("edge must have two endpoints".into()));
        }
        let u = as_usize(&edge[0], "edge endpoint")?;
        let v = as_usize(&edge[1], "edge endpoint")?;
        paths.push(EdgePath {
            edge: (u, v),
            vertices: as_vertex_array(field(entry, "vertices")?, "path")?,
        });
    }
    Ok(MinorModel {
        d,
        branch_sets,
        paths,
    })
}

pub fn parse_model(text: &str) -> Result<MinorModel> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("bad JSON: {e}")))?;
    model_from_json(&value)
}

pub fn params_json(params: &EmbedParams) -> Value {
    json!({
        "a": params.grid_dim(),
        "L": params.cycle_len(),
        "k_t": params.temporal_dim(),
        "d": params.host_dim(),
    })
}

pub fn verify_report_json(report: &VerifyReport) -> Value {
    json!({
        "valid": report.valid(),
        "violations": report
            .violations()
            .iter()
            .map(|v| json!({ "code": v.code.to_string(), "detail": v.detail }))
            .collect::<Vec<_>>(),
    })
}

pub fn expansion_report_json(report: &ExpansionReport) -> Value {
    json!({
        "passes": report.passes,
        "beta": ratio_string(&report.beta),
        "worst_ratio": ratio_string(&report.worst_ratio),
        "worst_set": report.worst_set,
    })
}

pub fn bound_report_json(report: &BoundReport) -> Value {
    json!({
        "hamming_sum": report.hamming_sum,
        "lower_bound": report.lower_bound,
        "cut_sizes": report.cut_sizes,
        "side_sizes": report.side_sizes,
        "host_capacity": report.host_capacity,
    })
}

pub fn certificate_json(report: &CertificateReport) -> Value {
    json!({
        "certified": report.certified,
        "min_lower_bound": report.min_lower_bound,
        "host_capacity": report.host_capacity,
        "placements": report.placements,
    })
}

pub fn theorem_json(report: &TheoremReport) -> Value {
    json!({
        "d": report.d,
        "lhs": big_ratio_string(&report.lhs),
        "rhs": report.rhs.to_string(),
        "holds": report.holds,
        "tail": report.tail.to_string(),
        "tail_ok": report.tail_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embed::embed;
    use crate::verify::verify;

    #[test]
    fn guest_graph_round_trip_with_comments() {
        let text = "# triangle\n0 1\n1 2 # inline note\n\n0 2\n";
        let g = parse_guest_graph(text).unwrap();
        assert_eq!(g.n_vertices(), 3);
        assert_eq!(g.num_edges(), 3);
        let again = parse_guest_graph(&guest_graph_to_text(&g)).unwrap();
        assert_eq!(again.edges(), g.edges());
    }

    #[test]
    fn guest_graph_parse_errors() {
        assert!(parse_guest_graph("0\n").is_err());
        assert!(parse_guest_graph("0 x\n").is_err());
        assert!(parse_guest_graph("0 1 2\n").is_err());
        assert!(parse_guest_graph("0 0\n").is_err());
    }

    #[test]
    fn perm_file_round_trip() {
        let shape = parse_shape("2,2").unwrap();
        let perm = parse_grid_perm("# image\n1\n3\n0\n2\n", &shape).unwrap();
        assert_eq!(perm.image(), &[1, 3, 0, 2]);
        let text = grid_perm_to_text(&perm);
        let again = parse_grid_perm(&text, &shape).unwrap();
        assert_eq!(again.image(), perm.image());
        assert!(parse_grid_perm("0\n1\n", &shape).is_err());
    }

    #[test]
    fn shape_parsing() {
        assert_eq!(parse_shape("2, 3 ,4").unwrap().dims(), &[2, 3, 4]);
        assert!(parse_shape("2,,3").is_err());
        assert!(parse_shape("2,0").is_err());
    }

    #[test]
    fn placement_parsing() {
        let g = GuestGraph::new(vec![(0, 1)]).unwrap();
        let placed = parse_placement("0 00\n1 11\n", &g, 2).unwrap();
        assert_eq!(placed[0].text(), "00");
        assert!(parse_placement("0 00\n", &g, 2).is_err());
        assert!(parse_placement("0 00\n0 11\n", &g, 2).is_err());
        assert!(parse_placement("0 000\n1 111\n", &g, 2).is_err());
        assert!(parse_placement("5 00\n1 11\n", &g, 2).is_err());
    }

    #[test]
    fn ratio_parsing() {
        assert_eq!(parse_ratio("9/50").unwrap(), Ratio::new(9, 50));
        assert_eq!(parse_ratio("2").unwrap(), Ratio::new(2, 1));
        assert_eq!(ratio_string(&Ratio::new(0i64, 5)), "0/1");
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x/2").is_err());
    }

    #[test]
    fn model_json_round_trip() {
        let g = GuestGraph::new(vec![(0, 1), (1, 2)]).unwrap();
        let model = embed(&g, None).unwrap();
        let text = model_to_text(&model);
        let parsed = parse_model(&text).unwrap();
        assert_eq!(parsed, model);
        assert!(verify(&g, &parsed).valid());
    }

    #[test]
    fn model_json_shape_errors() {
        assert!(parse_model("{").is_err());
        assert!(parse_model("{\"d\": 1}").is_err());
        assert!(parse_model("{\"d\": 1, \"branch_sets\": {\"x\": []}, \"paths\": []}").is_err());
    }

    #[test]
    fn factor_dump_contains_all_factors() {
        let shape = parse_shape("2,2").unwrap();
        let perm = GridPerm::new(shape, vec![1, 3, 0, 2]).unwrap();
        let factors = perm.decompose();
        let text = factors_to_text(&factors);
        assert_eq!(text.matches("factor ").count(), 3);
        assert!(text.contains("direction 2"));
        assert!(text.contains("direction 1"));
    }
}
