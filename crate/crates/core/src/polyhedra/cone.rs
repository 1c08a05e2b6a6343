use super::dd;
use crate::error::{check_dim, Error, Result};
use crate::lattice::{self, dot};

/// A rational polyhedral cone in `Q^n`, kept in both descriptions.
///
/// Canonical form: the lineality space is stored as its reduced echelon basis
/// (rows scaled to primitive integers), extreme rays are primitive integer
/// vectors reduced modulo the lineality space and sorted lexicographically.
/// Facet normals and equations are canonicalized the same way, so two cones
/// are equal exactly when their stored descriptions are equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalCone {
    rank: usize,
    rays: Vec<Vec<i64>>,
    lineality: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
    equations: Vec<Vec<i64>>,
}

fn canonical(rays: Vec<Vec<i64>>, lineality: Vec<Vec<i64>>) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let (basis, pivots) = lattice::span_basis(&lineality);
    let mut out: Vec<Vec<i64>> =
        rays.iter().map(|r| lattice::reduce_modulo(r, &basis, &pivots)).filter(|r| !lattice::is_zero(r)).collect();
    out.sort();
    out.dedup();
    (out, basis)
}

impl RationalCone {
    fn check_vectors(rank: usize, vs: &[Vec<i64>]) -> Result<()> {
        vs.iter().try_for_each(|v| check_dim(rank, v.len()))
    }

    /// The cone generated by `rays` (redundant and zero generators allowed).
    pub fn from_rays(rank: usize, rays: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_generators(rank, rays, Vec::new())
    }

    /// The cone `cone(rays) + span(lineality)`.
    pub fn from_generators(rank: usize, rays: Vec<Vec<i64>>, lineality: Vec<Vec<i64>>) -> Result<Self> {
        Self::check_vectors(rank, &rays)?;
        Self::check_vectors(rank, &lineality)?;
        let dual = dd::generators(rank, &rays, &lineality);
        Ok(Self::from_dual_generators(rank, dual))
    }

    /// The cone `{x : a.x >= 0 for a in inequalities, b.x = 0 for b in equations}`.
    pub fn from_inequalities(rank: usize, inequalities: Vec<Vec<i64>>, equations: Vec<Vec<i64>>) -> Result<Self> {
        Self::check_vectors(rank, &inequalities)?;
        Self::check_vectors(rank, &equations)?;
        let primal = dd::generators(rank, &inequalities, &equations);
        let dual = dd::generators(rank, &primal.rays, &primal.lineality);
        Ok(Self::assemble(rank, primal, dual))
    }

    fn from_dual_generators(rank: usize, dual: dd::Generators) -> Self {
        let primal = dd::generators(rank, &dual.rays, &dual.lineality);
        Self::assemble(rank, primal, dual)
    }

    /// Builds from already verified generators, e.g. the output of a full
    /// dimensional double description run.
    pub(crate) fn from_primal(rank: usize, primal: dd::Generators) -> Self {
        let dual = dd::generators(rank, &primal.rays, &primal.lineality);
        Self::assemble(rank, primal, dual)
    }

    fn assemble(rank: usize, primal: dd::Generators, dual: dd::Generators) -> Self {
        let (rays, lineality) = canonical(primal.rays, primal.lineality);
        let (facets, equations) = canonical(dual.rays, dual.lineality);
        RationalCone { rank, rays, lineality, facets, equations }
    }

    /// The nonnegative orthant of `Q^rank`.
    pub fn orthant(rank: usize) -> Self {
        let unit: Vec<Vec<i64>> = (0..rank).rev().map(|i| unit_vector(rank, i)).collect();
        RationalCone { rank, rays: unit.clone(), lineality: Vec::new(), facets: unit, equations: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<i64>] {
        &self.lineality
    }

    /// Inward facet normals.
    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    /// A basis of the orthogonal complement of the linear span.
    pub fn equations(&self) -> &[Vec<i64>] {
        &self.equations
    }

    pub fn dim(&self) -> usize {
        self.rank - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    /// Strongly convex: contains no line.
    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        x.len() == self.rank
            && self.facets.iter().all(|f| dot(f, x) >= 0)
            && self.equations.iter().all(|e| dot(e, x) == 0)
    }

    pub fn contains_cone(&self, other: &RationalCone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| self.contains(l) && self.contains(&negated(l)))
    }

    /// Whether `self` lies in the nonnegative orthant.
    pub fn is_in_orthant(&self) -> bool {
        self.lineality.is_empty() && self.rays.iter().all(|r| r.iter().all(|&x| x >= 0))
    }

    /// `{y : <y, x> >= 0 for all x in self}`.
    pub fn dual(&self) -> RationalCone {
        RationalCone {
            rank: self.rank,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn intersection(&self, other: &RationalCone) -> Result<RationalCone> {
        check_dim(self.rank, other.rank)?;
        let mut ineqs = self.facets.clone();
        ineqs.extend(other.facets.iter().cloned());
        let mut eqs = self.equations.clone();
        eqs.extend(other.equations.iter().cloned());
        Self::from_inequalities(self.rank, ineqs, eqs)
    }

    /// Pointed and generated by linearly independent rays.
    pub fn is_simplicial(&self) -> bool {
        self.is_pointed() && lattice::rank(&self.rays) == self.rays.len()
    }

    /// Full dimensional, simplicial, and its primitive rays form a basis of `Z^n`.
    pub fn is_unimodular(&self) -> bool {
        self.is_pointed() && self.rays.len() == self.rank && lattice::determinant(&self.rays).abs() == 1
    }

    /// Face of `self` cut out by the facets that vanish on all of `rays`.
    pub fn smallest_face_containing(&self, points: &[Vec<i64>]) -> Result<RationalCone> {
        Self::check_vectors(self.rank, points)?;
        let mut eqs = self.equations.clone();
        eqs.extend(self.facets.iter().filter(|f| points.iter().all(|p| dot(f, p) == 0)).cloned());
        Self::from_inequalities(self.rank, self.facets.clone(), eqs)
    }

    /// Whether `self` is a face of `other`.
    pub fn is_face_of(&self, other: &RationalCone) -> bool {
        if self.rank != other.rank || !other.contains_cone(self) {
            return false;
        }
        let mut gens = self.rays.clone();
        gens.extend(self.lineality.iter().cloned());
        gens.extend(self.lineality.iter().map(|l| negated(l)));
        match other.smallest_face_containing(&gens) {
            Ok(face) => face == *self,
            Err(_) => false,
        }
    }

    /// Rays of `self` on which the facet normal `facet` vanishes.
    pub fn rays_on(&self, facet: &[i64]) -> Vec<Vec<i64>> {
        self.rays.iter().filter(|r| dot(facet, r) == 0).cloned().collect()
    }
}

pub(crate) fn unit_vector(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|j| i64::from(i == j)).collect()
}

pub(crate) fn negated(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

/// Error helper for public constructors that must receive a strongly convex cone.
pub(crate) fn require_pointed(cone: &RationalCone) -> Result<()> {
    if cone.is_pointed() {
        Ok(())
    } else {
        Err(Error::InvalidCone("cone is not strongly convex".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orthant_is_self_dual() {
        let o = RationalCone::orthant(2);
        assert_eq!(o.dual(), o);
        assert_eq!(RationalCone::from_rays(2, vec![vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap(), o);
    }

    #[test]
    fn dual_of_wedge() {
        let c = RationalCone::from_rays(2, vec![vec![1, 0], vec![1, 1]]).unwrap();
        let d = c.dual();
        assert_eq!(d.rays(), &[vec![0, 1], vec![1, -1]]);
        assert_eq!(d.dual(), c);
        assert_eq!(d, RationalCone::from_rays(2, vec![vec![0, 1], vec![1, -1]]).unwrap());
    }

    #[test]
    fn dual_of_half_line_is_half_plane() {
        let c = RationalCone::from_rays(2, vec![vec![1, 0]]).unwrap();
        let d = c.dual();
        assert_eq!(d.rays(), &[vec![1, 0]]);
        assert_eq!(d.lineality(), &[vec![0, 1]]);
        assert_eq!(d.dim(), 2);
        assert!(!d.is_pointed());
        assert_eq!(d.dual(), c);
    }

    #[test]
    fn unimodularity() {
        let chain = RationalCone::from_rays(3, vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]).unwrap();
        assert!(chain.is_unimodular());
        let wide = RationalCone::from_rays(2, vec![vec![1, 0], vec![1, 2]]).unwrap();
        assert!(wide.is_simplicial());
        assert!(!wide.is_unimodular());
        let square =
            RationalCone::from_rays(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 0, 1], vec![0, 1, 1]]).unwrap();
        assert_eq!(square.rays().len(), 4);
        assert!(!square.is_simplicial());
        assert!(!square.is_unimodular());
    }

    #[test]
    fn faces() {
        let o = RationalCone::orthant(3);
        let f = RationalCone::from_rays(3, vec![vec![1, 0, 0], vec![0, 1, 0]]).unwrap();
        assert!(f.is_face_of(&o));
        let diag = RationalCone::from_rays(3, vec![vec![1, 1, 0]]).unwrap();
        assert!(!diag.is_face_of(&o));
        assert!(RationalCone::from_rays(3, vec![]).unwrap().is_face_of(&o));
    }

    #[test]
    fn intersection_of_wedges() {
        let a = RationalCone::from_inequalities(2, vec![vec![1, -1], vec![0, 1]], vec![]).unwrap();
        let b = RationalCone::from_inequalities(2, vec![vec![-1, 1], vec![1, 0]], vec![]).unwrap();
        let i = a.intersection(&b).unwrap();
        assert_eq!(i.rays(), &[vec![1, 1]]);
        assert_eq!(i.dim(), 1);
    }
}
