//! Cross sections of rank 3 fans with the triangle `x1 + x2 + x3 = 1`.

use richfan::lattice;
use richfan::{Error, Fan, Result};
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt::Write;

const CORNERS: [(f64, f64); 3] = [(20.0, 340.0), (380.0, 340.0), (200.0, 28.231)];
const PALETTE: [&str; 6] = ["#d8e2f3", "#f3e0d8", "#dcefd9", "#efe9cc", "#e6dbef", "#d9eeee"];

/// The polygonal subdivision of the triangle cut out by a fan. Vertices are
/// the primitive rays of the fan; each region lists the rays of one maximal
/// cone in cyclic order, all with the same orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossSection {
    pub vertices: Vec<Vec<i64>>,
    pub regions: Vec<Vec<usize>>,
}

impl CrossSection {
    pub fn new(fan: &Fan) -> Result<Self> {
        if fan.rank() != 3 {
            return Err(Error::RankNotThree(fan.rank()));
        }
        let vertices: Vec<Vec<i64>> =
            fan.cones().iter().flat_map(|c| c.rays().iter().cloned()).collect::<BTreeSet<_>>().into_iter().collect();
        let index = |r: &Vec<i64>| vertices.binary_search(r).expect("collected above");
        let mut regions = Vec::with_capacity(fan.len());
        for (i, cone) in fan.cones().iter().enumerate() {
            if !cone.is_full_dimensional() || !cone.is_pointed() {
                return Err(Error::MalformedFan(format!("cone {i} is not a full dimensional pointed cone")));
            }
            let rays = cone.rays();
            let mut cycle = vec![0usize];
            while cycle.len() < rays.len() {
                let last = &rays[*cycle.last().expect("nonempty")];
                let next = (0..rays.len()).find(|&j| {
                    !cycle.contains(&j)
                        && cone.facets().iter().any(|f| lattice::dot(f, last) == 0 && lattice::dot(f, &rays[j]) == 0)
                });
                match next {
                    Some(j) => cycle.push(j),
                    None => return Err(Error::MalformedFan(format!("cone {i} has no cyclic ray order"))),
                }
            }
            let det = lattice::determinant(&[rays[cycle[0]].clone(), rays[cycle[1]].clone(), rays[cycle[2]].clone()]);
            if det < 0 {
                cycle[1..].reverse();
            }
            regions.push(cycle.iter().map(|&j| index(&rays[j])).collect());
        }
        Ok(CrossSection { vertices, regions })
    }

    /// Pairs of regions sharing an edge of the drawing.
    pub fn adjacent_regions(&self) -> BTreeSet<(usize, usize)> {
        let edges: Vec<BTreeSet<(usize, usize)>> = self
            .regions
            .iter()
            .map(|cycle| {
                (0..cycle.len())
                    .map(|k| {
                        let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                        (a.min(b), a.max(b))
                    })
                    .collect()
            })
            .collect();
        let mut out = BTreeSet::new();
        for i in 0..edges.len() {
            for j in i + 1..edges.len() {
                if !edges[i].is_disjoint(&edges[j]) {
                    out.insert((i, j));
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({"vertices": self.vertices, "regions": self.regions})
    }

    fn position(v: &[i64]) -> (f64, f64) {
        let total: i64 = v.iter().sum();
        let weight = |i: usize| v[i] as f64 / total as f64;
        let x = (0..3).map(|i| weight(i) * CORNERS[i].0).sum();
        let y = (0..3).map(|i| weight(i) * CORNERS[i].1).sum();
        (x, y)
    }

    pub fn to_svg(&self) -> String {
        let mut s = String::new();
        s.push_str("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"400\" height=\"370\" viewBox=\"0 0 400 370\">\n");
        for (i, region) in self.regions.iter().enumerate() {
            let points: Vec<String> = region
                .iter()
                .map(|&v| {
                    let (x, y) = Self::position(&self.vertices[v]);
                    format!("{x:.3},{y:.3}")
                })
                .collect();
            let _ = writeln!(
                s,
                "  <polygon data-cone=\"{i}\" points=\"{}\" fill=\"{}\" stroke=\"#222\" stroke-width=\"1.5\"/>",
                points.join(" "),
                PALETTE[i % PALETTE.len()]
            );
        }
        for v in &self.vertices {
            let (x, y) = Self::position(v);
            let label: Vec<String> = v.iter().map(i64::to_string).collect();
            let _ = writeln!(
                s,
                "  <circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"3\"><title>({})</title></circle>",
                label.join(",")
            );
        }
        s.push_str("</svg>\n");
        s
    }
}
