use super::staircase::Staircase;
use crate::error::{check_dim, Error, Result};
use crate::graph::TropicalGraph;
use crate::monoid::{all_tuples, divisors, Level};
use crate::polyhedra::{dd, Fan, RationalCone};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// A monomial ideal in `k[x_1, ..., x_n]`, stored by its minimal generators
/// (exponent vectors) in lexicographic order. The unit ideal is `{0}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonomialIdeal {
    rank: usize,
    generators: Vec<Vec<u32>>,
}

/// Prefix tree over exponent vectors answering "is some stored vector
/// componentwise below this one".
struct DominanceIndex {
    nodes: Vec<Vec<(u32, usize)>>,
    depth: usize,
}

impl DominanceIndex {
    fn new(points: &[Vec<u32>], depth: usize) -> Self {
        let mut index = DominanceIndex { nodes: vec![Vec::new()], depth };
        for p in points {
            let mut node = 0;
            for &x in p {
                node = match index.nodes[node].binary_search_by_key(&x, |&(v, _)| v) {
                    Ok(i) => index.nodes[node][i].1,
                    Err(i) => {
                        let child = index.nodes.len();
                        index.nodes.push(Vec::new());
                        index.nodes[node].insert(i, (x, child));
                        child
                    }
                };
            }
        }
        index
    }

    /// Whether a stored vector is `<= p` and differs from it.
    fn strictly_below(&self, p: &[u32]) -> bool {
        self.search(0, 0, p, false)
    }

    fn search(&self, node: usize, level: usize, p: &[u32], below: bool) -> bool {
        if level == self.depth {
            return below;
        }
        for &(v, child) in &self.nodes[node] {
            if v > p[level] {
                break;
            }
            if self.search(child, level + 1, p, below || v < p[level]) {
                return true;
            }
        }
        false
    }
}

/// Removes duplicates and non-minimal vectors; returns them sorted.
fn minimalize(rank: usize, points: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let bounds: Vec<u32> = (0..rank).map(|i| points.iter().map(|p| p[i]).max().unwrap_or(0)).collect();
    if let Some(mut s) = Staircase::empty(&bounds) {
        for p in &points {
            s.insert(p);
        }
        s.close_upward();
        return s.minimal_points();
    }
    minimalize_by_dominance(rank, points)
}

fn minimalize_by_dominance(rank: usize, mut points: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    points.sort_unstable();
    points.dedup();
    let index = DominanceIndex::new(&points, rank);
    let keep: Vec<bool> = points.par_iter().map(|p| !index.strictly_below(p)).collect();
    points.into_iter().zip(keep).filter_map(|(p, k)| k.then_some(p)).collect()
}

impl MonomialIdeal {
    pub fn new(rank: usize, generators: Vec<Vec<u32>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptySet);
        }
        for g in &generators {
            check_dim(rank, g.len())?;
        }
        Ok(MonomialIdeal { rank, generators: minimalize(rank, generators) })
    }

    /// The whole ring.
    pub fn unit(rank: usize) -> Self {
        MonomialIdeal { rank, generators: vec![vec![0; rank]] }
    }

    /// `(x_{i_1}^{p_1}, ..., x_{i_k}^{p_k})` for `(i, p)` in `powers`.
    pub fn from_powers(rank: usize, powers: &[(usize, u32)]) -> Result<Self> {
        let mut gens = Vec::with_capacity(powers.len());
        for &(i, p) in powers {
            if i >= rank {
                return Err(Error::UnknownCoordinate(i));
            }
            let mut g = vec![0; rank];
            g[i] = p;
            gens.push(g);
        }
        Self::new(rank, gens)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn is_unit(&self) -> bool {
        self.generators.iter().any(|g| g.iter().all(|&x| x == 0))
    }

    pub fn contains(&self, monomial: &[u32]) -> bool {
        monomial.len() == self.rank && self.generators.iter().any(|g| g.iter().zip(monomial).all(|(a, b)| a <= b))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_dim(self.rank, other.rank)?;
        let sums: Vec<Vec<u32>> = self
            .generators
            .iter()
            .flat_map(|a| other.generators.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
            .collect();
        Ok(MonomialIdeal { rank: self.rank, generators: minimalize(self.rank, sums) })
    }

    /// Sets the variables in `coords` to 1 and drops them.
    pub fn pullback_to_contraction(&self, coords: &[usize]) -> Result<MonomialIdeal> {
        if let Some(&bad) = coords.iter().find(|&&i| i >= self.rank) {
            return Err(Error::UnknownCoordinate(bad));
        }
        let dropped: BTreeSet<usize> = coords.iter().copied().collect();
        let keep: Vec<usize> = (0..self.rank).filter(|i| !dropped.contains(i)).collect();
        let gens = self.generators.iter().map(|g| keep.iter().map(|&i| g[i]).collect()).collect();
        Ok(MonomialIdeal { rank: keep.len(), generators: minimalize(keep.len(), gens) })
    }

    /// The fan of linearity domains of `x -> min_m <m, x>` on the orthant:
    /// one maximal cone `{x >= 0 : <m' - m, x> >= 0 for all m'}` per vertex
    /// `m` of the Newton polyhedron. Generators that are not vertices give
    /// lower dimensional cones and are dropped.
    pub fn newton_subdivision(&self) -> Fan {
        let n = self.rank;
        let units: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let cones: Vec<RationalCone> = self
            .generators
            .par_iter()
            .filter_map(|m| {
                let mut diffs: Vec<Vec<i64>> = self
                    .generators
                    .iter()
                    .filter(|g| *g != m)
                    .map(|g| g.iter().zip(m).map(|(&a, &b)| i64::from(a) - i64::from(b)).collect())
                    .collect();
                diffs.sort_by_key(|d: &Vec<i64>| d.iter().map(|x| x.unsigned_abs()).sum::<u64>());
                let mut ineqs = units.clone();
                ineqs.extend(diffs);
                dd::generators_if_full_dim(n, &ineqs).map(|g| RationalCone::from_primal(n, g))
            })
            .collect();
        Fan::new(n, cones).expect("cones have the ideal's rank")
    }
}

/// The richness ideal on the minimal chart: the product over all cuts `c`
/// and all tuples `(l_e)` of divisors of `r` of the ideals `(x_e^{l_e} : e in c)`.
pub fn richness_ideal(g: &TropicalGraph, r: u64) -> Result<MonomialIdeal> {
    Level::new(r)?;
    let n = g.num_edges();
    let divs = divisors(r);
    let mut factors: BTreeSet<Vec<(usize, u32)>> = BTreeSet::new();
    for cut in g.enumerate_cuts() {
        all_tuples(&divs, cut.len(), |lambda| {
            factors.insert(cut.edges().iter().zip(lambda).map(|(&e, &l)| (e, l as u32)).collect());
            true
        });
    }
    let mut bounds = vec![0u32; n];
    for &(e, p) in factors.iter().flatten() {
        bounds[e] += p;
    }
    if let Some(mut s) = Staircase::full(&bounds) {
        for f in &factors {
            s = s.times_powers(f);
        }
        return Ok(MonomialIdeal { rank: n, generators: s.minimal_points() });
    }
    let mut ideal = MonomialIdeal::unit(n);
    for f in &factors {
        ideal = ideal.product(&MonomialIdeal::from_powers(n, f)?)?;
    }
    Ok(ideal)
}
