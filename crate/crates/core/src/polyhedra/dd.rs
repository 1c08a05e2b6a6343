//! Double description conversion: generators of `{y : a.y >= 0, b.y = 0}`.
//!
//! Constraints are inserted one at a time. While the current cone still has
//! a lineality space that the new constraint does not vanish on, the
//! lineality space is cut down directly; afterwards the usual ray splitting
//! step runs, with adjacency decided combinatorially from the sets of tight
//! constraints.

use crate::lattice::{dot_wide, make_primitive, narrow_vec};
use std::collections::HashSet;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Generators {
    pub rays: Vec<Vec<i64>>,
    pub lineality: Vec<Vec<i64>>,
}

#[derive(Clone)]
struct Ray {
    v: Vec<i128>,
    tight: Bitset,
}

#[derive(Clone, PartialEq, Eq)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn with_capacity(bits: usize) -> Self {
        Bitset(vec![0; bits.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn and(&self, o: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn subset_of(&self, o: &Bitset) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & !b == 0)
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

struct State {
    n: usize,
    rays: Vec<Ray>,
    lineality: Vec<Vec<i128>>,
    processed: usize,
    bits: usize,
}

enum Step {
    Kept,
    /// No ray lies strictly on the positive side: the cone dropped into the
    /// constraint hyperplane.
    Flattened,
}

impl State {
    fn new(n: usize, bits: usize) -> Self {
        let lineality = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
        State { n, rays: Vec::new(), lineality, processed: 0, bits }
    }

    fn insert(&mut self, a: &[i64]) -> Step {
        let k = self.processed;
        self.processed += 1;
        if let Some(pos) = self.lineality.iter().position(|l| dot_wide(a, l) != 0) {
            let mut l = self.lineality.swap_remove(pos);
            if dot_wide(a, &l) < 0 {
                l.iter_mut().for_each(|x| *x = -*x);
            }
            let al = dot_wide(a, &l);
            for other in self.lineality.iter_mut() {
                let ao = dot_wide(a, other);
                for (x, &y) in other.iter_mut().zip(&l) {
                    *x = al * *x - ao * y;
                }
                make_primitive(other);
            }
            for ray in self.rays.iter_mut() {
                let ar = dot_wide(a, &ray.v);
                for (x, &y) in ray.v.iter_mut().zip(&l) {
                    *x = al * *x - ar * y;
                }
                make_primitive(&mut ray.v);
                ray.tight.set(k);
            }
            let mut tight = Bitset::with_capacity(self.bits);
            for i in 0..k {
                tight.set(i);
            }
            self.rays.push(Ray { v: l, tight });
            return Step::Kept;
        }

        let values: Vec<i128> = self.rays.iter().map(|r| dot_wide(a, &r.v)).collect();
        let positive: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i] > 0).collect();
        let negative: Vec<usize> = (0..self.rays.len()).filter(|&i| values[i] < 0).collect();
        let flattened = positive.is_empty();
        for (ray, &v) in self.rays.iter_mut().zip(&values) {
            if v == 0 {
                ray.tight.set(k);
            }
        }
        if negative.is_empty() {
            return if flattened && !self.rays.is_empty() { Step::Flattened } else { Step::Kept };
        }

        let lin_dim = self.lineality.len();
        let threshold = self.n.saturating_sub(lin_dim + 2);
        let mut created = Vec::new();
        for &p in &positive {
            for &q in &negative {
                let common = self.rays[p].tight.and(&self.rays[q].tight);
                if common.count() < threshold {
                    continue;
                }
                let adjacent =
                    self.rays.iter().enumerate().all(|(w, r)| w == p || w == q || !common.subset_of(&r.tight));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (values[p], -values[q]);
                let mut v: Vec<i128> =
                    self.rays[p].v.iter().zip(&self.rays[q].v).map(|(&x, &y)| vq * x + vp * y).collect();
                make_primitive(&mut v);
                let mut tight = common;
                tight.set(k);
                created.push(Ray { v, tight });
            }
        }
        let mut kept: Vec<Ray> =
            (0..self.rays.len()).filter(|&i| values[i] >= 0).map(|i| self.rays[i].clone()).collect();
        let mut seen: HashSet<Vec<i128>> = kept.iter().map(|r| r.v.clone()).collect();
        for r in created {
            if seen.insert(r.v.clone()) {
                kept.push(r);
            }
        }
        self.rays = kept;
        if flattened {
            Step::Flattened
        } else {
            Step::Kept
        }
    }

    fn finish(self) -> Generators {
        Generators {
            rays: self.rays.iter().map(|r| narrow_vec(&r.v)).collect(),
            lineality: self.lineality.iter().map(|l| narrow_vec(l)).collect(),
        }
    }
}

/// Generators of `{y in R^n : a.y >= 0 for a in ineqs, b.y = 0 for b in eqs}`.
/// Rays are primitive extreme rays modulo the returned lineality basis; the
/// output is not canonicalized.
pub(crate) fn generators(n: usize, ineqs: &[Vec<i64>], eqs: &[Vec<i64>]) -> Generators {
    let mut state = State::new(n, ineqs.len() + 2 * eqs.len());
    for b in eqs {
        state.insert(b);
        let neg: Vec<i64> = b.iter().map(|x| -x).collect();
        state.insert(&neg);
    }
    for a in ineqs {
        state.insert(a);
    }
    state.finish()
}

/// Like [`generators`] without equations, but gives up (returning `None`) as
/// soon as the cone is seen to be lower dimensional.
pub(crate) fn generators_if_full_dim(n: usize, ineqs: &[Vec<i64>]) -> Option<Generators> {
    let mut state = State::new(n, ineqs.len());
    for a in ineqs {
        if crate::lattice::is_zero(a) {
            continue;
        }
        if let Step::Flattened = state.insert(a) {
            return None;
        }
    }
    Some(state.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut v: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
        v.sort();
        v
    }

    #[test]
    fn orthant_rays() {
        let g = generators(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn half_plane_keeps_lineality() {
        let g = generators(2, &[vec![1, 0]], &[]);
        assert_eq!(g.rays, vec![vec![1, 0]]);
        assert_eq!(g.lineality.len(), 1);
        assert_eq!(g.lineality[0][0], 0);
    }

    #[test]
    fn chain_cone() {
        // x1 >= x2 >= x3 >= 0
        let g = generators(3, &[vec![1, -1, 0], vec![0, 1, -1], vec![0, 0, 1]], &[]);
        assert!(g.lineality.is_empty());
        assert_eq!(sorted(g.rays), vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]);
    }

    #[test]
    fn square_pyramid() {
        // cone over the square [-1,1]^2 at height 1
        let ineqs = vec![vec![1, 0, 1], vec![-1, 0, 1], vec![0, 1, 1], vec![0, -1, 1]];
        let g = generators(3, &ineqs, &[]);
        assert_eq!(sorted(g.rays), vec![vec![-1, -1, 1], vec![-1, 1, 1], vec![1, -1, 1], vec![1, 1, 1]]);
    }

    #[test]
    fn equations_cut_dimension() {
        let g = generators(3, &[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &[vec![1, -1, 0]]);
        assert_eq!(sorted(g.rays), vec![vec![0, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn full_dim_detection() {
        let orth = vec![vec![1, 0], vec![0, 1]];
        let mut ineqs = orth.clone();
        ineqs.push(vec![1, -1]);
        assert!(generators_if_full_dim(2, &ineqs).is_some());
        ineqs.push(vec![-1, 1]);
        assert!(generators_if_full_dim(2, &ineqs).is_none());
        let mut flat = orth;
        flat.push(vec![-1, 0]);
        assert!(generators_if_full_dim(2, &flat).is_none());
    }
}
