use super::cone::{unit_vector, RationalCone};
use super::dd;
use crate::error::{check_dim, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeSet;

const SAMPLE_POINTS: usize = 1000;
const SAMPLE_SEED: u64 = 0x5eed_fa11;

/// A fan supported in the nonnegative orthant, given by its maximal cones in
/// canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fan {
    rank: usize,
    cones: Vec<RationalCone>,
}

impl Fan {
    pub fn new(rank: usize, cones: Vec<RationalCone>) -> Result<Self> {
        for c in &cones {
            check_dim(rank, c.rank())?;
        }
        let cones: BTreeSet<RationalCone> = cones.into_iter().collect();
        Ok(Fan { rank, cones: cones.into_iter().collect() })
    }

    pub fn orthant(rank: usize) -> Self {
        Fan { rank, cones: vec![RationalCone::orthant(rank)] }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cones(&self) -> &[RationalCone] {
        &self.cones
    }

    pub fn len(&self) -> usize {
        self.cones.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Indices of the maximal cones containing `x`.
    pub fn cones_containing(&self, x: &[i64]) -> Vec<usize> {
        (0..self.cones.len()).filter(|&i| self.cones[i].contains(x)).collect()
    }

    /// Checks the fan axioms: every cone is full dimensional and inside the
    /// orthant, and any two cones meet in a common face.
    pub fn validate(&self) -> Result<()> {
        for (i, c) in self.cones.iter().enumerate() {
            if !c.is_full_dimensional() {
                return Err(Error::MalformedFan(format!("cone {i} is not full dimensional")));
            }
            if !c.is_in_orthant() {
                return Err(Error::MalformedFan(format!("cone {i} leaves the orthant")));
            }
        }
        let pairs: Vec<(usize, usize)> =
            (0..self.cones.len()).flat_map(|i| (i + 1..self.cones.len()).map(move |j| (i, j))).collect();
        let bad = pairs.par_iter().find_first(|&&(i, j)| {
            let (a, b) = (&self.cones[i], &self.cones[j]);
            match a.intersection(b) {
                Ok(m) => !(m.is_face_of(a) && m.is_face_of(b)),
                Err(_) => true,
            }
        });
        match bad {
            Some((i, j)) => Err(Error::MalformedFan(format!("cones {i} and {j} do not meet in a common face"))),
            None => Ok(()),
        }
    }

    /// Whether the cones cover the orthant.
    ///
    /// Decided by facet pairing: a facet either lies in a coordinate
    /// hyperplane or is a facet of exactly one other cone, with opposite
    /// normal. A seeded sample of interior lattice points is checked as well.
    pub fn is_complete_on_orthant(&self) -> Result<bool> {
        self.validate()?;
        if self.cones.is_empty() {
            return Ok(false);
        }
        if self.rank == 0 {
            return Ok(true);
        }
        Ok(self.facets_pair_up() && self.sample_covered())
    }

    fn facets_pair_up(&self) -> bool {
        let units: Vec<Vec<i64>> = (0..self.rank).map(|i| unit_vector(self.rank, i)).collect();
        self.cones.par_iter().enumerate().all(|(i, c)| {
            c.facets().iter().all(|f| {
                if units.contains(f) {
                    return true;
                }
                let opposite: Vec<i64> = f.iter().map(|x| -x).collect();
                let shared = c.rays_on(f);
                let partners = self
                    .cones
                    .iter()
                    .enumerate()
                    .filter(|&(j, d)| j != i && d.facets().contains(&opposite) && d.rays_on(&opposite) == shared)
                    .count();
                partners == 1
            })
        })
    }

    fn sample_covered(&self) -> bool {
        let mut rng = ChaCha8Rng::seed_from_u64(SAMPLE_SEED);
        (0..SAMPLE_POINTS).all(|_| {
            let x: Vec<i64> = (0..self.rank).map(|_| rng.gen_range(1..=1000)).collect();
            self.cones.iter().any(|c| c.contains(&x))
        })
    }

    /// Full dimensional pairwise intersections of the maximal cones.
    pub fn common_refinement(&self, other: &Fan) -> Result<Fan> {
        check_dim(self.rank, other.rank)?;
        let pairs: Vec<(&RationalCone, &RationalCone)> =
            self.cones.iter().flat_map(|a| other.cones.iter().map(move |b| (a, b))).collect();
        let cones: Vec<RationalCone> = pairs
            .par_iter()
            .filter_map(|(a, b)| {
                let mut ineqs = a.facets().to_vec();
                ineqs.extend(b.facets().iter().cloned());
                dd::generators_if_full_dim(self.rank, &ineqs).map(|g| RationalCone::from_primal(self.rank, g))
            })
            .collect();
        Fan::new(self.rank, cones)
    }

    /// Intersects with the coordinate face `{x_i = 0 : i in coords}` and drops
    /// those coordinates. Cones that do not stay full dimensional are removed.
    pub fn restrict_to_coordinate_face(&self, coords: &[usize]) -> Result<Fan> {
        if let Some(&bad) = coords.iter().find(|&&i| i >= self.rank) {
            return Err(Error::UnknownCoordinate(bad));
        }
        let dropped: BTreeSet<usize> = coords.iter().copied().collect();
        let keep: Vec<usize> = (0..self.rank).filter(|i| !dropped.contains(i)).collect();
        let rank = keep.len();
        let mut cones = Vec::new();
        for c in &self.cones {
            let rays: Vec<Vec<i64>> = c
                .rays()
                .iter()
                .filter(|r| dropped.iter().all(|&i| r[i] == 0))
                .map(|r| keep.iter().map(|&i| r[i]).collect())
                .collect();
            let face = RationalCone::from_rays(rank, rays)?;
            if face.is_full_dimensional() {
                cones.push(face);
            }
        }
        Fan::new(rank, cones)
    }
}
