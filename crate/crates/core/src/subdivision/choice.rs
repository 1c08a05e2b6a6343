use crate::error::{check_dim, Error, Result};
use crate::graph::{Cut, TropicalGraph};
use crate::lattice;
use crate::monoid::{all_tuples, divisors, Level, SharpMonoid};
use crate::polyhedra::{dd, unit_vector, Fan, RationalCone};
use crate::tropical::RealFamily;

/// One decision of a choice function: for `cut` rescaled by `multipliers`
/// (aligned with the cut's edges), the edge `chosen` is the shortest.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChoiceEntry {
    pub cut: Cut,
    pub multipliers: Vec<u64>,
    pub chosen: usize,
}

/// A choice of shortest edge per cut (for `r = 1`), or per cut and divisor
/// tuple (for `r > 1`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChoiceFunction {
    pub entries: Vec<ChoiceEntry>,
}

impl ChoiceFunction {
    /// The `r = 1` choice function with `chosen[i]` picked in the `i`-th cut
    /// of `g` (in enumeration order).
    pub fn from_choices(g: &TropicalGraph, chosen: &[usize]) -> Result<Self> {
        let cuts = g.enumerate_cuts();
        if cuts.len() != chosen.len() {
            return Err(Error::InvalidChoice(format!("{} choices for {} cuts", chosen.len(), cuts.len())));
        }
        let entries = cuts
            .into_iter()
            .zip(chosen)
            .map(|(cut, &chosen)| ChoiceEntry { multipliers: vec![1; cut.len()], cut, chosen })
            .collect();
        Ok(ChoiceFunction { entries })
    }

    /// Every `r = 1` choice function of `g`.
    pub fn enumerate(g: &TropicalGraph) -> Vec<ChoiceFunction> {
        let cuts = g.enumerate_cuts();
        let mut out = Vec::new();
        let mut pick = vec![0usize; cuts.len()];
        loop {
            let entries = cuts
                .iter()
                .zip(&pick)
                .map(|(c, &i)| ChoiceEntry { cut: c.clone(), multipliers: vec![1; c.len()], chosen: c.edges()[i] })
                .collect();
            out.push(ChoiceFunction { entries });
            let mut i = 0;
            loop {
                if i == cuts.len() {
                    return out;
                }
                pick[i] += 1;
                if pick[i] < cuts[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }

    /// The chosen edge of `cut` (first matching entry).
    pub fn choice_for(&self, cut: &Cut) -> Option<usize> {
        self.entries.iter().find(|e| &e.cut == cut).map(|e| e.chosen)
    }

    /// Checks that the entries cover every cut and divisor tuple of `g`
    /// exactly once, with the chosen edge inside its cut.
    fn validate(&self, g: &TropicalGraph, r: u64) -> Result<()> {
        let divs = divisors(r);
        let mut expected = Vec::new();
        for cut in g.enumerate_cuts() {
            all_tuples(&divs, cut.len(), |lambda| {
                expected.push((cut.clone(), lambda.to_vec()));
                true
            });
        }
        let mut given: Vec<(Cut, Vec<u64>)> = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            if !e.cut.contains(e.chosen) {
                return Err(Error::InvalidChoice(format!("edge {} is not in cut {:?}", e.chosen, e.cut.edges())));
            }
            given.push((e.cut.clone(), e.multipliers.clone()));
        }
        expected.sort();
        given.sort();
        if given != expected {
            return Err(Error::InvalidChoice("entries do not match the cuts and divisor tuples of the graph".into()));
        }
        Ok(())
    }

    /// Inequalities `l_e x_e - l_f x_f >= 0` of the entries, without the orthant.
    fn inequalities(&self, n: usize) -> Vec<Vec<i64>> {
        self.entries.iter().flat_map(|e| entry_inequalities(n, e)).collect()
    }
}

fn entry_inequalities(n: usize, entry: &ChoiceEntry) -> Vec<Vec<i64>> {
    let pos = entry.cut.edges().iter().position(|&e| e == entry.chosen).expect("validated");
    let lf = entry.multipliers[pos] as i64;
    entry
        .cut
        .edges()
        .iter()
        .zip(&entry.multipliers)
        .filter(|&(&e, _)| e != entry.chosen)
        .map(|(&e, &l)| {
            let mut v = vec![0i64; n];
            v[e] += l as i64;
            v[entry.chosen] -= lf;
            v
        })
        .collect()
}

/// `{x >= 0 : l_f x_f <= l_e x_e}` over all entries, `f` the chosen edge.
pub fn choice_cone(g: &TropicalGraph, f: &ChoiceFunction, r: u64) -> Result<RationalCone> {
    Level::new(r)?;
    f.validate(g, r)?;
    let n = g.num_edges();
    let mut ineqs: Vec<Vec<i64>> = (0..n).map(|i| unit_vector(n, i)).collect();
    ineqs.extend(f.inequalities(n));
    RationalCone::from_inequalities(n, ineqs, Vec::new())
}

/// The full dimensional choice cones, found by backtracking over the entries
/// and pruning as soon as the partial cone is lower dimensional.
pub fn choice_fan(g: &TropicalGraph, r: u64) -> Result<Fan> {
    Level::new(r)?;
    let n = g.num_edges();
    let divs = divisors(r);
    let mut slots: Vec<(Cut, Vec<u64>)> = Vec::new();
    for cut in g.enumerate_cuts() {
        all_tuples(&divs, cut.len(), |lambda| {
            slots.push((cut.clone(), lambda.to_vec()));
            true
        });
    }
    let mut cones = Vec::new();
    let mut ineqs: Vec<Vec<i64>> = (0..n).map(|i| unit_vector(n, i)).collect();
    backtrack(n, &slots, 0, &mut ineqs, &mut cones);
    Fan::new(n, cones)
}

fn backtrack(
    n: usize,
    slots: &[(Cut, Vec<u64>)],
    depth: usize,
    ineqs: &mut Vec<Vec<i64>>,
    out: &mut Vec<RationalCone>,
) {
    let Some(gens) = dd::generators_if_full_dim(n, ineqs) else {
        return;
    };
    if depth == slots.len() {
        out.push(RationalCone::from_primal(n, gens));
        return;
    }
    let (cut, lambda) = &slots[depth];
    for &chosen in cut.edges() {
        let entry = ChoiceEntry { cut: cut.clone(), multipliers: lambda.clone(), chosen };
        let added = entry_inequalities(n, &entry);
        let k = added.len();
        ineqs.extend(added);
        backtrack(n, slots, depth + 1, ineqs, out);
        ineqs.truncate(ineqs.len() - k);
    }
}

/// The weakly rich subdivision: the Newton fan of the richness ideal.
pub fn weakly_rich_fan(g: &TropicalGraph, r: u64) -> Result<Fan> {
    Ok(super::richness_ideal(g, r)?.newton_subdivision())
}

/// Whether the image of the parameter cone under the length map lies in a
/// single maximal cone of `fan`.
pub fn factors_through(family: &RealFamily, fan: &Fan) -> Result<bool> {
    check_dim(family.graph().num_edges(), fan.rank())?;
    let map = family.length_map();
    let apply = |v: &[i64]| -> Vec<i64> { map.iter().map(|row| lattice::narrow(lattice::dot(row, v))).collect() };
    let rays: Vec<Vec<i64>> = family.sigma().rays().iter().map(|r| apply(r)).collect();
    let lines: Vec<Vec<i64>> = family.sigma().lineality().iter().map(|l| apply(l)).collect();
    Ok(fan.cones().iter().any(|c| {
        c.facets()
            .iter()
            .all(|f| rays.iter().all(|r| lattice::dot(f, r) >= 0) && lines.iter().all(|l| lattice::dot(f, l) == 0))
            && c.equations().iter().all(|q| rays.iter().chain(&lines).all(|v| lattice::dot(q, v) == 0))
    }))
}

/// The order on edges from a minimal choice: `minima` are the smallest
/// edges of the circuit components, `pred[e]` is the largest edge below `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutOrder {
    pub minima: Vec<usize>,
    pub pred: Vec<Option<usize>>,
}

impl CutOrder {
    /// The strict order generated by `pred[e] < e`, as `below[a][b] = a < b`.
    pub fn relation(&self) -> Vec<Vec<bool>> {
        let n = self.pred.len();
        let mut below = vec![vec![false; n]; n];
        for e in 0..n {
            let mut cur = self.pred[e];
            while let Some(p) = cur {
                below[p][e] = true;
                cur = self.pred[p];
            }
        }
        below
    }
}

fn transitive_closure(mut rel: Vec<Vec<bool>>) -> Vec<Vec<bool>> {
    let n = rel.len();
    for k in 0..n {
        for i in 0..n {
            if rel[i][k] {
                for j in 0..n {
                    if rel[k][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
    }
    rel
}

fn every_cut_has_minimum(rel: &[Vec<bool>], cuts: &[Cut]) -> bool {
    cuts.iter().all(|c| c.edges().iter().any(|&x| c.edges().iter().all(|&y| y == x || rel[x][y])))
}

/// The order generated by `f(c) <= e` for `e` in `c`, decomposed into
/// component minima and immediate predecessors.
///
/// Fails with `NotMinimalOrder` when the generated order is cyclic or when a
/// strictly weaker order would still give every cut a smallest element.
pub fn cut_order_from_choice(g: &TropicalGraph, f: &ChoiceFunction) -> Result<CutOrder> {
    f.validate(g, 1)?;
    let n = g.num_edges();
    let cuts = g.enumerate_cuts();
    let mut rel = vec![vec![false; n]; n];
    for entry in &f.entries {
        for &e in entry.cut.edges() {
            if e != entry.chosen {
                rel[entry.chosen][e] = true;
            }
        }
    }
    let order = transitive_closure(rel);
    if (0..n).any(|e| order[e][e]) {
        return Err(Error::NotMinimalOrder("the generated order has a cycle".into()));
    }
    let covers: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| order[a][b] && !(0..n).any(|c| order[a][c] && order[c][b]))
        .collect();
    for &(a, b) in &covers {
        let mut weaker = order.clone();
        weaker[a][b] = false;
        if every_cut_has_minimum(&weaker, &cuts) {
            let ids = (&g.edges()[a].id, &g.edges()[b].id);
            return Err(Error::NotMinimalOrder(format!("the relation {} < {} is not needed", ids.0, ids.1)));
        }
    }
    let mut minima = Vec::new();
    for comp in g.circuit_components() {
        let lows: Vec<usize> = comp.iter().copied().filter(|&e| !(0..n).any(|x| order[x][e])).collect();
        if lows.len() != 1 {
            return Err(Error::NotMinimalOrder("a circuit component has no unique minimum".into()));
        }
        minima.push(lows[0]);
    }
    minima.sort_unstable();
    let mut pred = vec![None; n];
    for e in 0..n {
        let below: Vec<usize> = (0..n).filter(|&x| order[x][e]).collect();
        if below.is_empty() {
            continue;
        }
        let top: Vec<usize> = below.iter().copied().filter(|&x| below.iter().all(|&y| y == x || order[y][x])).collect();
        if top.len() != 1 {
            return Err(Error::NotMinimalOrder(format!("edge {} has no largest smaller edge", g.edges()[e].id)));
        }
        pred[e] = Some(top[0]);
    }
    let result = CutOrder { minima, pred };
    if result.relation() != order {
        return Err(Error::NotMinimalOrder("the predecessor forest does not generate the order".into()));
    }
    Ok(result)
}

/// The monoid generated by the unit vectors and `e - f(c)` for `e` in `c`,
/// in cone form.
pub fn choice_monoid(g: &TropicalGraph, f: &ChoiceFunction) -> Result<SharpMonoid> {
    cut_order_from_choice(g, f)?;
    let n = g.num_edges();
    let mut gens: Vec<Vec<i64>> = (0..n).map(|i| unit_vector(n, i)).collect();
    for entry in &f.entries {
        for &e in entry.cut.edges() {
            if e != entry.chosen {
                let mut v = unit_vector(n, e);
                v[entry.chosen] -= 1;
                gens.push(v);
            }
        }
    }
    SharpMonoid::new(n, gens)
}

/// Per-cone unimodularity verdicts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub unimodular: Vec<bool>,
    pub smooth: bool,
}

pub fn smoothness_report(fan: &Fan) -> SmoothnessReport {
    let unimodular: Vec<bool> = fan.cones().iter().map(RationalCone::is_unimodular).collect();
    let smooth = unimodular.iter().all(|&u| u);
    SmoothnessReport { unimodular, smooth }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cone(rays: &[&[i64]]) -> RationalCone {
        RationalCone::from_rays(rays[0].len(), rays.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn two_gon_choice_cone() {
        let g = TropicalGraph::cycle(2);
        let f = ChoiceFunction::from_choices(&g, &[0]).unwrap();
        assert_eq!(choice_cone(&g, &f, 1).unwrap(), cone(&[&[0, 1], &[1, 1]]));
        let other = ChoiceFunction::from_choices(&g, &[1]).unwrap();
        assert_eq!(choice_cone(&g, &other, 1).unwrap(), cone(&[&[1, 0], &[1, 1]]));
        let order = cut_order_from_choice(&g, &f).unwrap();
        assert_eq!(order.minima, vec![0]);
        assert_eq!(order.pred, vec![None, Some(0)]);
        let m = choice_monoid(&g, &f).unwrap();
        assert_eq!(m.hilbert_basis(), vec![vec![-1, 1], vec![1, 0]]);
        assert!(m.is_free());
    }

    #[test]
    fn triangle_choices() {
        let g = TropicalGraph::cycle(3);
        // cuts {0,1}, {0,2}, {1,2}
        let chain = ChoiceFunction::from_choices(&g, &[0, 0, 1]).unwrap();
        assert_eq!(choice_cone(&g, &chain, 1).unwrap(), cone(&[&[0, 0, 1], &[0, 1, 1], &[1, 1, 1]]));
        let cyclic = ChoiceFunction::from_choices(&g, &[0, 2, 1]).unwrap();
        let c = choice_cone(&g, &cyclic, 1).unwrap();
        assert_eq!(c.rays(), &[vec![1, 1, 1]]);
        assert!(matches!(cut_order_from_choice(&g, &cyclic), Err(Error::NotMinimalOrder(_))));
        assert!(matches!(ChoiceFunction::from_choices(&g, &[0, 0]), Err(Error::InvalidChoice(_))));
        let outside = ChoiceFunction::from_choices(&g, &[2, 0, 1]).unwrap();
        assert!(matches!(choice_cone(&g, &outside, 1), Err(Error::InvalidChoice(_))));
    }

    #[test]
    fn forest_from_figure_graph() {
        // parallel a,b,c between v1,v2 and a triangle d,e,f at v2
        let g = TropicalGraph::from_edge_list(4, &[(0, 1), (0, 1), (0, 1), (1, 2), (2, 3), (3, 1)]).unwrap();
        let cuts = g.enumerate_cuts();
        // a <= b,c and d <= e <= f
        let chosen: Vec<usize> = cuts
            .iter()
            .map(|c| {
                if c.contains(0) {
                    0
                } else if c.contains(3) {
                    3
                } else {
                    4
                }
            })
            .collect();
        let f = ChoiceFunction::from_choices(&g, &chosen).unwrap();
        let order = cut_order_from_choice(&g, &f).unwrap();
        assert_eq!(order.minima, vec![0, 3]);
        assert_eq!(order.pred, vec![None, Some(0), Some(0), None, Some(3), Some(4)]);
        let m = choice_monoid(&g, &f).unwrap();
        assert!(m.is_free());
        let mut expected = vec![
            vec![1, 0, 0, 0, 0, 0],
            vec![0, 0, 0, 1, 0, 0],
            vec![-1, 1, 0, 0, 0, 0],
            vec![-1, 0, 1, 0, 0, 0],
            vec![0, 0, 0, -1, 1, 0],
            vec![0, 0, 0, 0, -1, 1],
        ];
        expected.sort();
        assert_eq!(m.hilbert_basis(), expected);
    }

    #[test]
    fn trees() {
        let g = TropicalGraph::path(3);
        let f = ChoiceFunction::from_choices(&g, &[0, 1, 2]).unwrap();
        let order = cut_order_from_choice(&g, &f).unwrap();
        assert_eq!(order.minima, vec![0, 1, 2]);
        assert_eq!(choice_monoid(&g, &f).unwrap(), SharpMonoid::free(3));
        assert_eq!(weakly_rich_fan(&g, 1).unwrap(), Fan::orthant(3));
        assert_eq!(weakly_rich_fan(&TropicalGraph::bouquet(2), 2).unwrap(), Fan::orthant(2));
    }

    #[test]
    fn fans_agree_on_small_cycles() {
        for n in 2..=4 {
            let g = TropicalGraph::cycle(n);
            let newton = weakly_rich_fan(&g, 1).unwrap();
            assert_eq!(choice_fan(&g, 1).unwrap(), newton);
            assert!(newton.is_complete_on_orthant().unwrap());
            assert!(smoothness_report(&newton).smooth);
        }
        let t = TropicalGraph::cycle(3);
        assert_eq!(choice_fan(&t, 2).unwrap(), weakly_rich_fan(&t, 2).unwrap());
    }

    #[test]
    fn factorization() {
        let t = TropicalGraph::cycle(3);
        let fan = weakly_rich_fan(&t, 1).unwrap();
        let identity =
            RealFamily::new(t.clone(), RationalCone::orthant(3), vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]])
                .unwrap();
        assert!(!factors_through(&identity, &fan).unwrap());
        let c1 =
            RealFamily::new(t, RationalCone::orthant(3), vec![vec![1, 0, 0], vec![1, 1, 0], vec![1, 1, 1]]).unwrap();
        assert!(factors_through(&c1, &fan).unwrap());
        let tree =
            RealFamily::new(TropicalGraph::path(2), RationalCone::orthant(2), vec![vec![1, 0], vec![0, 1]]).unwrap();
        assert!(factors_through(&tree, &Fan::orthant(2)).unwrap());
        assert!(factors_through(&tree, &fan).is_err());
    }
}
