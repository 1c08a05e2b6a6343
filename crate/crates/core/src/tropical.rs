//! Tropical curves with edge lengths in a sharp monoid, real families over
//! parameter cones, and the richness predicates on both.

use crate::error::{check_dim, Error, Result};
use crate::graph::{Cut, TropicalGraph};
use crate::lattice;
use crate::monoid::{all_tuples, divisors, Level, SharpMonoid};
use crate::polyhedra::{unit_vector, RationalCone};

/// A graph with a nonzero length in `monoid` on every edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TropicalCurve {
    graph: TropicalGraph,
    monoid: SharpMonoid,
    lengths: Vec<Vec<i64>>,
}

/// A graph with edge lengths `e -> <length_map[e], x>` for `x` in a rational
/// parameter cone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealFamily {
    graph: TropicalGraph,
    sigma: RationalCone,
    length_map: Vec<Vec<i64>>,
}

/// A piecewise linear function on a curve: a value in `Z^n` per vertex and an
/// integer slope per edge.
///
/// Slopes are stored in the canonical orientation of each edge, from the
/// endpoint with the smaller position to the larger one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlFunction {
    pub values: Vec<Vec<i64>>,
    pub slopes: Vec<i64>,
}

impl PlFunction {
    /// Slope of edge `e` read leaving vertex `from`.
    pub fn slope_from(&self, graph: &TropicalGraph, e: usize, from: usize) -> i64 {
        let (a, b) = canonical_ends(graph, e);
        if from == a || a == b {
            self.slopes[e]
        } else {
            debug_assert_eq!(from, b);
            -self.slopes[e]
        }
    }
}

fn canonical_ends(graph: &TropicalGraph, e: usize) -> (usize, usize) {
    let (a, b) = graph.edges()[e].ends;
    (a.min(b), a.max(b))
}

/// The factorization of an `r`-rich curve through its circuit components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicModel {
    /// Circuit components, as sorted edge positions.
    pub components: Vec<Vec<usize>>,
    /// `lengths[e] = multipliers[e] * roots[t]` for `e` in component `t`.
    pub multipliers: Vec<u64>,
    pub roots: Vec<Vec<i64>>,
    /// Whether `N^T -> M` is an isomorphism.
    pub is_basic: bool,
    /// The same graph over `N^T`, with `e -> multipliers[e] * t`.
    pub model: TropicalCurve,
}

fn scale(v: &[i64], k: u64) -> Vec<i64> {
    v.iter().map(|&x| lattice::narrow(i128::from(x) * i128::from(k))).collect()
}

fn finite_level(r: u64) -> Result<u64> {
    Level::new(r).map(|_| r)
}

impl TropicalCurve {
    /// `lengths[e]` is the length of the edge at position `e`.
    pub fn new(graph: TropicalGraph, monoid: SharpMonoid, lengths: Vec<Vec<i64>>) -> Result<Self> {
        if lengths.len() != graph.num_edges() {
            return Err(Error::ShapeMismatch(format!("{} lengths for {} edges", lengths.len(), graph.num_edges())));
        }
        for (e, l) in lengths.iter().enumerate() {
            if !monoid.contains(l)? {
                return Err(Error::NotAMember(l.clone()));
            }
            if lattice::is_zero(l) {
                return Err(Error::InvalidCurve(format!("edge `{}` has length zero", graph.edges()[e].id)));
            }
        }
        Ok(TropicalCurve { graph, monoid, lengths })
    }

    pub fn graph(&self) -> &TropicalGraph {
        &self.graph
    }

    pub fn monoid(&self) -> &SharpMonoid {
        &self.monoid
    }

    pub fn lengths(&self) -> &[Vec<i64>] {
        &self.lengths
    }

    pub fn lengths_of(&self, edges: &[usize]) -> Vec<Vec<i64>> {
        edges.iter().map(|&e| self.lengths[e].clone()).collect()
    }

    /// Every cut has `r`-close lengths.
    pub fn is_r_rich(&self, r: Level) -> Result<bool> {
        for cut in self.graph.enumerate_cuts() {
            if !self.monoid.is_r_close(&self.lengths_of(cut.edges()), r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every circuit component has `r`-close lengths. Agrees with
    /// [`is_r_rich`](Self::is_r_rich).
    pub fn is_r_rich_by_components(&self, r: Level) -> Result<bool> {
        for comp in self.graph.circuit_components() {
            if !self.monoid.is_r_close(&self.lengths_of(&comp), r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every cut has weakly `r`-close lengths.
    pub fn is_weakly_r_rich(&self, r: u64) -> Result<bool> {
        finite_level(r)?;
        for cut in self.graph.enumerate_cuts() {
            if !self.monoid.is_weakly_r_close(&self.lengths_of(cut.edges()), r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_cut(&self, cut: &Cut) -> Result<()> {
        if self.graph.is_cut(cut.edges()) {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!("{:?} is not a cut of the graph", cut.edges())))
        }
    }

    /// A PL function certifying that the lengths of `cut` are `r`-close:
    /// zero on the side of the first vertex, `r * root` on the other side,
    /// slope `r / lambda_e` across each cut edge and zero elsewhere.
    pub fn pl_witness(&self, cut: &Cut, r: u64) -> Result<PlFunction> {
        let level = Level::new(r)?;
        self.check_cut(cut)?;
        let root = self.monoid.root_with_multipliers(&self.lengths_of(cut.edges()), level)?;
        let far = self.graph.far_side(cut);
        let top = scale(&root.root, r);
        let zero = vec![0; self.monoid.rank()];
        let values = far.iter().map(|&b| if b { top.clone() } else { zero.clone() }).collect();
        let mut slopes = vec![0i64; self.graph.num_edges()];
        for (&e, &lambda) in cut.edges().iter().zip(&root.multipliers) {
            let (lo, _) = canonical_ends(&self.graph, e);
            let magnitude = (r / lambda) as i64;
            slopes[e] = if far[lo] { -magnitude } else { magnitude };
        }
        Ok(PlFunction { values, slopes })
    }

    /// Whether `f` is compatible with the lengths, has slope zero off the
    /// cut, and has nonzero slopes dividing `r` on the cut.
    pub fn check_pl(&self, f: &PlFunction, cut: &Cut, r: u64) -> Result<bool> {
        finite_level(r)?;
        if f.values.len() != self.graph.num_vertices() || f.slopes.len() != self.graph.num_edges() {
            return Err(Error::ShapeMismatch("function does not match the graph".into()));
        }
        if let Some(v) = f.values.iter().find(|v| v.len() != self.monoid.rank()) {
            return Err(Error::ShapeMismatch(format!("vertex value of length {}", v.len())));
        }
        self.check_cut(cut)?;
        for (e, l) in self.lengths.iter().enumerate() {
            let (lo, hi) = canonical_ends(&self.graph, e);
            let s = f.slopes[e];
            let compatible = (0..l.len())
                .all(|i| i128::from(f.values[hi][i]) - i128::from(f.values[lo][i]) == i128::from(s) * i128::from(l[i]));
            if !compatible {
                return Ok(false);
            }
            let ok = if cut.contains(e) { s != 0 && r.is_multiple_of(s.unsigned_abs()) } else { s == 0 };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The family over `Hom(M, R_{>=0})` obtained by evaluating lengths.
    pub fn to_real_family(&self) -> RealFamily {
        RealFamily { graph: self.graph.clone(), sigma: self.monoid.cone().dual(), length_map: self.lengths.clone() }
    }

    /// Specialization to the face spanned by `face_rays`: lengths are pushed
    /// to `Z^n / span(F)` and edges whose length dies are contracted.
    pub fn specialize(&self, face_rays: &[Vec<i64>]) -> Result<TropicalCurve> {
        let n = self.monoid.rank();
        for r in face_rays {
            check_dim(n, r.len())?;
            if lattice::is_zero(r) || !self.monoid.rays().contains(&lattice::primitive(r)) {
                return Err(Error::NotAFace);
            }
        }
        let face = RationalCone::from_rays(n, face_rays.to_vec())?;
        if !face.is_face_of(self.monoid.cone()) {
            return Err(Error::NotAFace);
        }
        let p = lattice::integer_kernel(face_rays, n);
        let project = |v: &[i64]| -> Vec<i64> { p.iter().map(|row| lattice::narrow(lattice::dot(row, v))).collect() };
        let rank = p.len();
        let images: Vec<Vec<i64>> = self.monoid.rays().iter().map(|r| project(r)).collect();
        let monoid = SharpMonoid::new(rank, images)?;
        let projected: Vec<Vec<i64>> = self.lengths.iter().map(|l| project(l)).collect();
        let dead: Vec<usize> = (0..projected.len()).filter(|&e| lattice::is_zero(&projected[e])).collect();
        let graph = self.graph.contract(&dead)?;
        let lengths = projected.into_iter().filter(|l| !lattice::is_zero(l)).collect();
        TropicalCurve::new(graph, monoid, lengths)
    }

    /// The root-map factorization through the circuit components.
    pub fn basic_model(&self, r: Level) -> Result<BasicModel> {
        if !self.is_r_rich(r)? {
            return Err(Error::NotRRich);
        }
        let components = self.graph.circuit_components();
        let t = components.len();
        let mut multipliers = vec![0u64; self.graph.num_edges()];
        let mut roots = Vec::with_capacity(t);
        let mut model_lengths = vec![Vec::new(); self.graph.num_edges()];
        for (i, comp) in components.iter().enumerate() {
            let root = self.monoid.root_with_multipliers(&self.lengths_of(comp), r)?;
            for (&e, &lambda) in comp.iter().zip(&root.multipliers) {
                multipliers[e] = lambda;
                model_lengths[e] = scale(&unit_vector(t, i), lambda);
            }
            roots.push(root.root);
        }
        let mut sorted_roots = roots.clone();
        sorted_roots.sort();
        let hilbert = self.monoid.hilbert_basis();
        let is_basic = sorted_roots == hilbert && hilbert.len() == self.monoid.dim();
        let model = TropicalCurve::new(self.graph.clone(), SharpMonoid::free(t), model_lengths)?;
        Ok(BasicModel { components, multipliers, roots, is_basic, model })
    }

    /// `|E| - |T|`: the dimension of the torus of `r`-rich structures over an
    /// algebraically closed point.
    pub fn enriched_parameter_dimension(&self, r: Level) -> Result<usize> {
        if !self.is_r_rich(r)? {
            return Err(Error::NotRRich);
        }
        Ok(self.graph.num_edges() - self.graph.circuit_components().len())
    }
}

impl RealFamily {
    /// `length_map[e]` is the functional giving the length of edge `e`; it
    /// must be nonnegative on `sigma`.
    pub fn new(graph: TropicalGraph, sigma: RationalCone, length_map: Vec<Vec<i64>>) -> Result<Self> {
        if length_map.len() != graph.num_edges() {
            return Err(Error::ShapeMismatch(format!(
                "{} length functionals for {} edges",
                length_map.len(),
                graph.num_edges()
            )));
        }
        let family = RealFamily { graph, sigma, length_map };
        for (e, row) in family.length_map.iter().enumerate() {
            check_dim(family.sigma.rank(), row.len())?;
            if !family.in_dual(row) {
                return Err(Error::InvalidFamily(format!(
                    "length of edge `{}` is negative somewhere on the parameter cone",
                    family.graph.edges()[e].id
                )));
            }
        }
        Ok(family)
    }

    pub fn graph(&self) -> &TropicalGraph {
        &self.graph
    }

    pub fn sigma(&self) -> &RationalCone {
        &self.sigma
    }

    pub fn length_map(&self) -> &[Vec<i64>] {
        &self.length_map
    }

    /// Membership of a functional in the dual of the parameter cone.
    pub(crate) fn in_dual(&self, y: &[i64]) -> bool {
        self.sigma.rays().iter().all(|r| lattice::dot(y, r) >= 0)
            && self.sigma.lineality().iter().all(|l| lattice::dot(y, l) == 0)
    }

    /// For every cut and every tuple of divisors of `r` some rescaled edge
    /// length is smaller than all others on the whole parameter cone.
    pub fn is_weakly_r_rich(&self, r: u64) -> Result<bool> {
        finite_level(r)?;
        let divs = divisors(r);
        let m = self.sigma.rank();
        for cut in self.graph.enumerate_cuts() {
            let rows = cut.edges().iter().map(|&e| &self.length_map[e]).collect::<Vec<_>>();
            let ok = all_tuples(&divs, rows.len(), |lambda| {
                let scaled: Vec<Vec<i64>> = rows.iter().zip(lambda).map(|(row, &l)| scale(row, l)).collect();
                scaled.iter().any(|low| {
                    scaled.iter().all(|other| {
                        let diff: Vec<i64> = (0..m).map(|i| other[i] - low[i]).collect();
                        self.in_dual(&diff)
                    })
                })
            });
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
