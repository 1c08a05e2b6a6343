//! Sharp fine saturated monoids, realized as `sigma ∩ Z^n` for a strongly
//! convex rational cone `sigma`.
//!
//! Such a monoid is fine and saturated by construction, so neither property
//! is checked at runtime.

use crate::error::{check_dim, Error, Result};
use crate::lattice::{self, gcd};
use crate::polyhedra::{require_pointed, RationalCone};
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

/// Upper bound on finite `r`, keeping divisor enumeration cheap.
pub const MAX_LEVEL: u64 = 1_000_000;

/// The parameter `r`: a positive integer or infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Finite(u64),
    Infinite,
}

impl Level {
    pub fn new(r: u64) -> Result<Level> {
        if (1..=MAX_LEVEL).contains(&r) {
            Ok(Level::Finite(r))
        } else {
            Err(Error::InvalidLevel(format!("{r} is outside 1..={MAX_LEVEL}")))
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Level::Finite(r) => Some(r),
            Level::Infinite => None,
        }
    }

    /// Whether `d` divides `r` (every positive `d` divides infinity).
    pub fn is_divisible_by(self, d: u64) -> bool {
        d > 0
            && match self {
                Level::Finite(r) => r % d == 0,
                Level::Infinite => true,
            }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(r) => write!(f, "{r}"),
            Level::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Level> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(Level::Infinite),
            t => t.parse::<u64>().map_err(|_| Error::InvalidLevel(t.to_string())).and_then(Level::new),
        }
    }
}

/// Positive divisors of `r` in increasing order.
pub fn divisors(r: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= r {
        if r.is_multiple_of(d) {
            small.push(d);
            if d * d != r {
                large.push(r / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Calls `f` on every tuple in `choices^len`, stopping early when it returns
/// false. Returns whether all calls returned true.
pub(crate) fn all_tuples<T: Copy>(choices: &[T], len: usize, mut f: impl FnMut(&[T]) -> bool) -> bool {
    if choices.is_empty() && len > 0 {
        return true;
    }
    let mut idx = vec![0usize; len];
    let mut tuple: Vec<T> = (0..len).map(|_| choices[0]).collect();
    loop {
        if !f(&tuple) {
            return false;
        }
        let mut i = len;
        loop {
            if i == 0 {
                return true;
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < choices.len() {
                tuple[i] = choices[idx[i]];
                break;
            }
            idx[i] = 0;
            tuple[i] = choices[0];
        }
    }
}

fn scaled(a: &[i64], k: u64) -> Vec<i64> {
    a.iter().map(|&x| lattice::narrow(i128::from(x) * i128::from(k))).collect()
}

/// A sharp fs monoid `sigma ∩ Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SharpMonoid {
    cone: RationalCone,
}

/// Result of a successful closeness test: `a_i = multipliers[i] * root`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    pub root: Vec<i64>,
    pub multipliers: Vec<u64>,
}

impl SharpMonoid {
    /// The monoid of lattice points of `cone(rays)`; the cone must be
    /// strongly convex.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>) -> Result<Self> {
        Self::from_cone(RationalCone::from_rays(rank, rays)?)
    }

    pub fn from_cone(cone: RationalCone) -> Result<Self> {
        require_pointed(&cone)?;
        Ok(SharpMonoid { cone })
    }

    /// `N^rank`.
    pub fn free(rank: usize) -> Self {
        SharpMonoid { cone: RationalCone::orthant(rank) }
    }

    pub fn rank(&self) -> usize {
        self.cone.rank()
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        self.cone.rays()
    }

    pub fn facets(&self) -> &[Vec<i64>] {
        self.cone.facets()
    }

    pub fn cone(&self) -> &RationalCone {
        &self.cone
    }

    pub fn dim(&self) -> usize {
        self.cone.dim()
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        check_dim(self.rank(), x.len())?;
        Ok(self.cone.contains(x))
    }

    fn member(&self, x: &[i64]) -> Result<()> {
        if self.contains(x)? {
            Ok(())
        } else {
            Err(Error::NotAMember(x.to_vec()))
        }
    }

    fn members(&self, s: &[Vec<i64>]) -> Result<()> {
        s.iter().try_for_each(|x| self.member(x))
    }

    /// Whether `b - a` lies in the monoid.
    pub fn divides(&self, a: &[i64], b: &[i64]) -> Result<bool> {
        self.member(a)?;
        self.member(b)?;
        Ok(self.divides_unchecked(a, b))
    }

    pub(crate) fn divides_unchecked(&self, a: &[i64], b: &[i64]) -> bool {
        let d: Vec<i64> = b.iter().zip(a).map(|(x, y)| x - y).collect();
        self.cone.contains(&d)
    }

    /// The element of `s` dividing all others, if there is one.
    pub fn smallest_element(&self, s: &[Vec<i64>]) -> Result<Option<Vec<i64>>> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        self.members(s)?;
        Ok(self.smallest_unchecked(s).map(|i| s[i].clone()))
    }

    fn smallest_unchecked(&self, s: &[Vec<i64>]) -> Option<usize> {
        (0..s.len()).find(|&i| s.iter().all(|y| self.divides_unchecked(&s[i], y)))
    }

    /// The maximal root of `s` together with its multipliers, or `None` when
    /// `s` is not `r`-close. Fails with `AllZero` when every element is zero.
    fn root_data(&self, s: &[Vec<i64>], r: Level) -> Result<Option<Root>> {
        let zeros = s.iter().filter(|a| lattice::is_zero(a)).count();
        if zeros == s.len() {
            return Err(Error::AllZero);
        }
        if zeros > 0 {
            return Ok(None);
        }
        let p = lattice::primitive(&s[0]);
        let mut m = Vec::with_capacity(s.len());
        for a in s {
            if lattice::primitive(a) != p {
                return Ok(None);
            }
            let g = a.iter().fold(0i128, |g, &x| gcd(g, i128::from(x)));
            m.push(g as u64);
        }
        let g = m.iter().fold(0u64, |g, &x| gcd(i128::from(g), i128::from(x)) as u64);
        let k = match r {
            Level::Infinite => g,
            Level::Finite(r) => {
                // Valid k are closed under lcm, so the largest is maximal.
                match divisors(g).into_iter().rev().find(|&k| m.iter().all(|&mi| r % (mi / k) == 0)) {
                    Some(k) => k,
                    None => return Ok(None),
                }
            }
        };
        Ok(Some(Root { root: scaled(&p, k), multipliers: m.iter().map(|&mi| mi / k).collect() }))
    }

    /// Whether there are `a` in the monoid and divisors `l_i` of `r` with
    /// `a_i = l_i a` for all `i`.
    pub fn is_r_close(&self, s: &[Vec<i64>], r: Level) -> Result<bool> {
        self.members(s)?;
        match self.root_data(s, r) {
            Ok(root) => Ok(root.is_some()),
            Err(Error::AllZero) => Ok(true),
            Err(e) => Err(e),
        }
    }

    /// The largest `a` witnessing `r`-closeness, with its multipliers.
    pub fn root_with_multipliers(&self, s: &[Vec<i64>], r: Level) -> Result<Root> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        self.members(s)?;
        self.root_data(s, r)?.ok_or(Error::NotRClose)
    }

    pub fn root(&self, s: &[Vec<i64>], r: Level) -> Result<Vec<i64>> {
        Ok(self.root_with_multipliers(s, r)?.root)
    }

    /// Whether every rescaling `{l_i a_i}` by divisors of `r` has a smallest
    /// element.
    pub fn is_weakly_r_close(&self, s: &[Vec<i64>], r: u64) -> Result<bool> {
        Level::new(r)?;
        self.members(s)?;
        let divs = divisors(r);
        Ok(all_tuples(&divs, s.len(), |lambda| {
            let rescaled: Vec<Vec<i64>> = s.iter().zip(lambda).map(|(a, &l)| scaled(a, l)).collect();
            self.smallest_unchecked(&rescaled).is_some()
        }))
    }

    /// The minimal generating set, sorted lexicographically.
    ///
    /// Works in a lattice basis of the span of the cone: a pulling
    /// triangulation is formed, lattice points of the fundamental
    /// parallelepipeds of its simplices are collected together with the
    /// rays, and reducible candidates are discarded. Meant for ranks up to
    /// about 8 with moderate determinants.
    pub fn hilbert_basis(&self) -> Vec<Vec<i64>> {
        let basis = lattice::integer_kernel(self.cone.equations(), self.rank());
        let d = basis.len();
        if d == 0 {
            return Vec::new();
        }
        let coords: Vec<Vec<i64>> = self
            .rays()
            .iter()
            .map(|r| lattice::hermite_coordinates(&basis, r).expect("rays lie in the span lattice"))
            .collect();
        let local = RationalCone::from_rays(d, coords.clone()).expect("coordinates have length d");
        let all: Vec<usize> = (0..coords.len()).collect();
        let simplices = pulling_triangulation(&local, &coords, &all, d);
        let mut candidates: BTreeSet<Vec<i64>> = coords.iter().cloned().collect();
        for simplex in &simplices {
            let w: Vec<Vec<i64>> = (0..d).map(|i| simplex.iter().map(|&j| coords[j][i]).collect()).collect();
            candidates.extend(parallelepiped_points(&w));
        }
        let candidates: Vec<Vec<i64>> = candidates.into_iter().collect();
        let reducible = |x: &Vec<i64>| {
            candidates.iter().any(|g| {
                g != x && {
                    let diff: Vec<i64> = x.iter().zip(g).map(|(a, b)| a - b).collect();
                    local.contains(&diff)
                }
            })
        };
        let mut out: Vec<Vec<i64>> = candidates
            .iter()
            .filter(|x| !reducible(x))
            .map(|x| {
                (0..self.rank())
                    .map(|j| {
                        let v: i128 = x.iter().zip(&basis).map(|(&c, b)| i128::from(c) * i128::from(b[j])).sum();
                        lattice::narrow(v)
                    })
                    .collect()
            })
            .collect();
        out.sort();
        out
    }

    /// Whether the monoid is isomorphic to `N^dim`.
    pub fn is_free(&self) -> bool {
        let hb = self.hilbert_basis();
        let d = self.dim();
        if hb.len() != d {
            return false;
        }
        if d == 0 {
            return true;
        }
        let basis = lattice::integer_kernel(self.cone.equations(), self.rank());
        let coords: Vec<Vec<i64>> = hb
            .iter()
            .map(|h| lattice::hermite_coordinates(&basis, h).expect("basis elements lie in the lattice"))
            .collect();
        lattice::determinant(&coords).abs() == 1
    }
}

/// Pulling triangulation of the face spanned by `face` (indices into `rays`)
/// of dimension `dim`, using the facet normals of `cone`. Simplices are
/// returned as sorted index lists.
fn pulling_triangulation(cone: &RationalCone, rays: &[Vec<i64>], face: &[usize], dim: usize) -> Vec<Vec<usize>> {
    if face.len() == dim {
        return vec![face.to_vec()];
    }
    let apex = face[0];
    let mut facets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for f in cone.facets() {
        let on: Vec<usize> = face.iter().copied().filter(|&i| lattice::dot(f, &rays[i]) == 0).collect();
        if on.contains(&apex) || on.len() == face.len() {
            continue;
        }
        let vectors: Vec<Vec<i64>> = on.iter().map(|&i| rays[i].clone()).collect();
        if lattice::rank(&vectors) == dim - 1 {
            facets.insert(on);
        }
    }
    let mut out = Vec::new();
    for facet in facets {
        for mut simplex in pulling_triangulation(cone, rays, &facet, dim - 1) {
            simplex.push(apex);
            simplex.sort_unstable();
            out.push(simplex);
        }
    }
    out
}

/// Nonzero lattice points `W t` with `0 <= t_i < 1`, where the columns of the
/// nonsingular matrix `w` (given by rows) generate the simplex.
fn parallelepiped_points(w: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = w.len();
    let det = lattice::determinant(w);
    let size = det.abs();
    if size == 1 {
        return Vec::new();
    }
    let diag = lattice::column_hermite_diagonal(w);
    let adj = lattice::adjugate(w);
    let sign = det.signum();
    let mut out = Vec::with_capacity(size as usize - 1);
    let mut x = vec![0i128; d];
    loop {
        // y = W^{-1} x scaled by |det|, reduced into [0, |det|)
        let y: Vec<i128> =
            (0..d).map(|i| (sign * (0..d).map(|j| adj[i][j] * x[j]).sum::<i128>()).rem_euclid(size)).collect();
        if y.iter().any(|&v| v != 0) {
            let p: Vec<i64> = (0..d)
                .map(|i| {
                    let v: i128 = (0..d).map(|j| i128::from(w[i][j]) * y[j]).sum();
                    debug_assert_eq!(v % size, 0);
                    lattice::narrow(v / size)
                })
                .collect();
            out.push(p);
        }
        let mut i = 0;
        loop {
            if i == d {
                return out;
            }
            x[i] += 1;
            if x[i] < diag[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}
