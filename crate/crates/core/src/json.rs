//! JSON wire formats. Objects are `serde_json::Value` maps, so keys come out
//! sorted and equal values serialize to equal bytes.
//!
//! Schema violations are reported as [`Error::Malformed`]; inputs that parse
//! but describe an invalid object (a disconnected graph, a length outside the
//! monoid) keep their domain error.

use crate::error::{Error, Result};
use crate::graph::{Cut, TropicalGraph};
use crate::monoid::SharpMonoid;
use crate::polyhedra::{Fan, RationalCone};
use crate::subdivision::{CutOrder, MonomialIdeal, SmoothnessReport};
use crate::tropical::{BasicModel, RealFamily, TropicalCurve};
use serde_json::{json, Map, Value};

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

pub fn parse(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| malformed(e.to_string()))
}

/// Two-space indented rendering with a trailing newline.
pub fn render(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("values always serialize");
    s.push('\n');
    s
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(format!("missing field `{key}`")))
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| malformed(format!("`{what}` must be an array")))
}

fn string(v: &Value, what: &str) -> Result<String> {
    v.as_str().map(str::to_owned).ok_or_else(|| malformed(format!("`{what}` must be a string")))
}

fn usize_of(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| malformed(format!("`{what}` must be a nonnegative integer")))
}

fn int_vec(v: &Value, what: &str) -> Result<Vec<i64>> {
    array(v, what)?
        .iter()
        .map(|x| x.as_i64().ok_or_else(|| malformed(format!("`{what}` must hold integers"))))
        .collect()
}

fn int_matrix(v: &Value, what: &str) -> Result<Vec<Vec<i64>>> {
    array(v, what)?.iter().map(|row| int_vec(row, what)).collect()
}

fn edge_ids(g: &TropicalGraph, edges: &[usize]) -> Value {
    Value::Array(edges.iter().map(|&e| Value::from(g.edges()[e].id.clone())).collect())
}

pub fn graph_to_json(g: &TropicalGraph) -> Value {
    let mut obj = Map::new();
    obj.insert("vertices".into(), json!(g.vertices()));
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| json!({"id": e.id, "ends": [g.vertices()[e.ends.0], g.vertices()[e.ends.1]]}))
        .collect();
    obj.insert("edges".into(), Value::Array(edges));
    Value::Object(obj)
}

pub fn graph_from_json(v: &Value) -> Result<TropicalGraph> {
    let vertices =
        array(field(v, "vertices")?, "vertices")?.iter().map(|x| string(x, "vertices")).collect::<Result<Vec<_>>>()?;
    let mut edges = Vec::new();
    for e in array(field(v, "edges")?, "edges")? {
        let id = string(field(e, "id")?, "id")?;
        let ends = array(field(e, "ends")?, "ends")?;
        if ends.len() != 2 {
            return Err(malformed(format!("edge `{id}` must have exactly two ends")));
        }
        edges.push((id, string(&ends[0], "ends")?, string(&ends[1], "ends")?));
    }
    TropicalGraph::new(vertices, edges)
}

pub fn monoid_to_json(m: &SharpMonoid) -> Value {
    json!({"rank": m.rank(), "rays": m.rays()})
}

pub fn monoid_from_json(v: &Value) -> Result<SharpMonoid> {
    let rank = usize_of(field(v, "rank")?, "rank")?;
    SharpMonoid::new(rank, int_matrix(field(v, "rays")?, "rays")?)
}

pub fn curve_to_json(c: &TropicalCurve) -> Value {
    let mut v = graph_to_json(c.graph());
    let lengths: Map<String, Value> =
        c.graph().edges().iter().zip(c.lengths()).map(|(e, l)| (e.id.clone(), json!(l))).collect();
    v["monoid"] = monoid_to_json(c.monoid());
    v["lengths"] = Value::Object(lengths);
    v
}

pub fn curve_from_json(v: &Value) -> Result<TropicalCurve> {
    let graph = graph_from_json(v)?;
    let monoid = monoid_from_json(field(v, "monoid")?)?;
    let table = field(v, "lengths")?.as_object().ok_or_else(|| malformed("`lengths` must be an object"))?;
    if let Some(unknown) = table.keys().find(|k| graph.edge_index(k).is_none()) {
        return Err(Error::UnknownEdge(unknown.clone()));
    }
    let lengths = graph
        .edges()
        .iter()
        .map(|e| {
            let l = table.get(&e.id).ok_or_else(|| malformed(format!("no length for edge `{}`", e.id)))?;
            int_vec(l, "lengths")
        })
        .collect::<Result<Vec<_>>>()?;
    TropicalCurve::new(graph, monoid, lengths)
}

pub fn family_to_json(f: &RealFamily) -> Value {
    let mut v = graph_to_json(f.graph());
    v["rank"] = json!(f.sigma().rank());
    v["sigma_rays"] = json!(f.sigma().rays());
    if !f.sigma().lineality().is_empty() {
        v["sigma_lineality"] = json!(f.sigma().lineality());
    }
    v["length_map"] = json!(f.length_map());
    v
}

/// Reads a family; `rank` may be omitted when some ray or row fixes it.
pub fn family_from_json(v: &Value) -> Result<RealFamily> {
    let graph = graph_from_json(v)?;
    let rays = int_matrix(field(v, "sigma_rays")?, "sigma_rays")?;
    let lineality = match v.get("sigma_lineality") {
        Some(l) => int_matrix(l, "sigma_lineality")?,
        None => Vec::new(),
    };
    let length_map = int_matrix(field(v, "length_map")?, "length_map")?;
    let rank = match v.get("rank") {
        Some(r) => usize_of(r, "rank")?,
        None => rays
            .iter()
            .chain(&lineality)
            .chain(&length_map)
            .map(Vec::len)
            .next()
            .ok_or_else(|| malformed("cannot infer the parameter rank, give `rank`"))?,
    };
    let sigma = RationalCone::from_generators(rank, rays, lineality)?;
    RealFamily::new(graph, sigma, length_map)
}

pub fn fan_to_json(f: &Fan) -> Value {
    let cones: Vec<Value> = f.cones().iter().map(|c| json!({"rays": c.rays()})).collect();
    json!({"rank": f.rank(), "cones": cones})
}

/// Reads a fan; the cones are canonicalized but not validated, see
/// [`Fan::validate`].
pub fn fan_from_json(v: &Value) -> Result<Fan> {
    let rank = usize_of(field(v, "rank")?, "rank")?;
    let cones = array(field(v, "cones")?, "cones")?
        .iter()
        .map(|c| RationalCone::from_rays(rank, int_matrix(field(c, "rays")?, "rays")?))
        .collect::<Result<Vec<_>>>()?;
    Fan::new(rank, cones)
}

pub fn ideal_to_json(i: &MonomialIdeal) -> Value {
    json!({"rank": i.rank(), "generators": i.generators()})
}

pub fn ideal_from_json(v: &Value) -> Result<MonomialIdeal> {
    let rank = usize_of(field(v, "rank")?, "rank")?;
    let gens = int_matrix(field(v, "generators")?, "generators")?
        .into_iter()
        .map(|g| {
            g.into_iter().map(|x| u32::try_from(x).map_err(|_| malformed("exponents must be in 0..2^32"))).collect()
        })
        .collect::<Result<Vec<Vec<u32>>>>()?;
    MonomialIdeal::new(rank, gens)
}

pub fn cuts_to_json(g: &TropicalGraph, cuts: &[Cut]) -> Value {
    Value::Array(cuts.iter().map(|c| edge_ids(g, c.edges())).collect())
}

pub fn components_to_json(g: &TropicalGraph, components: &[Vec<usize>]) -> Value {
    Value::Array(components.iter().map(|c| edge_ids(g, c)).collect())
}

pub fn cut_order_to_json(g: &TropicalGraph, order: &CutOrder) -> Value {
    let pred: Map<String, Value> = order
        .pred
        .iter()
        .enumerate()
        .filter_map(|(e, p)| p.map(|p| (g.edges()[e].id.clone(), Value::from(g.edges()[p].id.clone()))))
        .collect();
    json!({"minima": edge_ids(g, &order.minima), "pred": pred})
}

pub fn basic_model_to_json(g: &TropicalGraph, m: &BasicModel) -> Value {
    let multipliers: Map<String, Value> =
        g.edges().iter().zip(&m.multipliers).map(|(e, &k)| (e.id.clone(), json!(k))).collect();
    json!({
        "components": components_to_json(g, &m.components),
        "multipliers": multipliers,
        "roots": m.roots,
        "is_basic": m.is_basic,
        "model": curve_to_json(&m.model),
    })
}

pub fn smoothness_to_json(fan: &Fan, report: &SmoothnessReport) -> Value {
    let cones: Vec<Value> =
        fan.cones().iter().zip(&report.unimodular).map(|(c, &u)| json!({"rays": c.rays(), "unimodular": u})).collect();
    json!({"smooth": report.smooth, "cones": cones})
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_round_trip() {
        let g = TropicalGraph::theta(3);
        let v = graph_to_json(&g);
        assert_eq!(graph_from_json(&v).unwrap(), g);
        assert_eq!(parse(&render(&v)).unwrap(), v);
    }

    #[test]
    fn keys_are_sorted() {
        let text = render(&graph_to_json(&TropicalGraph::cycle(2)));
        assert!(text.find("\"edges\"").unwrap() < text.find("\"vertices\"").unwrap());
        assert!(text.find("\"ends\"").unwrap() < text.find("\"id\"").unwrap());
    }

    #[test]
    fn curve_round_trip() {
        let g = TropicalGraph::cycle(3);
        let c = TropicalCurve::new(g, SharpMonoid::free(3), vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]).unwrap();
        assert_eq!(curve_from_json(&curve_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn family_rank_inference() {
        let text = r#"{"vertices":["a","b"],"edges":[{"id":"x","ends":["a","b"]},{"id":"y","ends":["a","b"]}],
            "sigma_rays":[[1,0],[0,1]],"length_map":[[1,0],[0,1]]}"#;
        let f = family_from_json(&parse(text).unwrap()).unwrap();
        assert_eq!(f.sigma().rank(), 2);
        assert_eq!(family_from_json(&family_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn schema_and_domain_errors_differ() {
        let missing = parse(r#"{"vertices":["a"]}"#).unwrap();
        assert!(matches!(graph_from_json(&missing), Err(Error::Malformed(_))));
        let disconnected = parse(r#"{"vertices":["a","b"],"edges":[]}"#).unwrap();
        assert_eq!(graph_from_json(&disconnected), Err(Error::DisconnectedGraph));
        assert!(matches!(parse("{"), Err(Error::Malformed(_))));
    }

    #[test]
    fn ideal_and_fan_round_trip() {
        let i = MonomialIdeal::new(2, vec![vec![1, 0], vec![0, 2]]).unwrap();
        assert_eq!(ideal_from_json(&ideal_to_json(&i)).unwrap(), i);
        let f = i.newton_subdivision();
        assert_eq!(fan_from_json(&fan_to_json(&f)).unwrap(), f);
    }
}
