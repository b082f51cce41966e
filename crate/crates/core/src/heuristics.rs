//! Deterministic ad-hoc procedures, one per problem.
//!
//! Every tie is broken towards the lower index, so outputs are reproducible
//! byte for byte.

use crate::instances::{
    cycle_length, Distances, Graph, KnapsackInstance, KnapsackSelection, ProblemInstance,
    Selection, SetCoverInstance, Solution, SubsetSelection, Tour, VertexSubset,
};

/// Improvements smaller than this are not accepted by 2-OPT. Integer
/// distances are unaffected; for raw real distances it keeps rounding noise
/// from cycling.
pub const TWO_OPT_EPS: f64 = 1e-9;

/// Density greedy: scan items by non-increasing value/weight and take each
/// one that still fits.
pub fn greedy_knapsack(inst: &KnapsackInstance) -> KnapsackSelection {
    let mut chosen = vec![false; inst.len()];
    let mut load = 0.0;
    for i in inst.density_order() {
        let w = inst.items()[i].weight;
        if load + w <= inst.capacity() {
            load += w;
            chosen[i] = true;
        }
    }
    Selection::from(chosen)
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Greedy edge construction: scan edges by non-decreasing length (ties by
/// endpoints) and accept one when both endpoints still have degree below two
/// and it does not close a cycle shorter than `n`.
pub fn greedy_edge_tour<D: Distances + ?Sized>(inst: &D) -> Tour {
    let n = inst.n();
    assert!(n >= 3, "greedy edge tour needs n >= 3");
    let mut edges: Vec<(usize, usize)> =
        (0..n).flat_map(|i| ((i + 1)..n).map(move |j| (i, j))).collect();
    edges.sort_by(|&(a, b), &(c, d)| {
        inst.dist(a, b).total_cmp(&inst.dist(c, d)).then((a, b).cmp(&(c, d)))
    });

    let mut degree = vec![0u8; n];
    let mut links: Vec<[usize; 2]> = vec![[usize::MAX; 2]; n];
    let mut sets = DisjointSets::new(n);
    let mut accepted = 0;
    for (u, v) in edges {
        if degree[u] >= 2 || degree[v] >= 2 {
            continue;
        }
        // Joining two path endpoints of the same fragment closes a cycle; only
        // the final, Hamiltonian one is allowed.
        if sets.find(u) == sets.find(v) && accepted != n - 1 {
            continue;
        }
        links[u][degree[u] as usize] = v;
        links[v][degree[v] as usize] = u;
        degree[u] += 1;
        degree[v] += 1;
        sets.union(u, v);
        accepted += 1;
        if accepted == n {
            break;
        }
    }
    debug_assert_eq!(accepted, n);

    // Walk the cycle from vertex 0 towards its smaller neighbour.
    let mut order = Vec::with_capacity(n);
    let mut prev = 0;
    let mut cur = links[0][0].min(links[0][1]);
    order.push(0);
    while cur != 0 {
        order.push(cur);
        let next = if links[cur][0] == prev { links[cur][1] } else { links[cur][0] };
        prev = cur;
        cur = next;
    }
    Tour::from_vec_unchecked(order)
}

/// Gain of replacing edges `(t[i], t[i+1])` and `(t[j], t[j+1])` by
/// `(t[i], t[j])` and `(t[i+1], t[j+1])`. Negative means shorter.
#[inline]
pub fn two_opt_delta<D: Distances + ?Sized>(inst: &D, order: &[usize], i: usize, j: usize) -> f64 {
    let n = order.len();
    let (a, b) = (order[i], order[i + 1]);
    let (c, d) = (order[j], order[(j + 1) % n]);
    inst.dist(a, c) + inst.dist(b, d) - inst.dist(a, b) - inst.dist(c, d)
}

/// Pairs of non-adjacent tour positions `(i, j)`, `i < j`, whose edges can be
/// exchanged.
#[inline]
pub fn two_opt_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n.saturating_sub(2)).flat_map(move |i| {
        let last = if i == 0 { n - 1 } else { n };
        ((i + 2)..last).map(move |j| (i, j))
    })
}

/// First-improvement 2-OPT. After every exchange the scan restarts from the
/// first pair; stops once a full scan finds no strictly shorter exchange.
pub fn two_opt<D: Distances + ?Sized>(inst: &D, tour: &Tour) -> Tour {
    let mut order = tour.order().to_vec();
    let n = order.len();
    'scan: loop {
        for (i, j) in two_opt_pairs(n) {
            if two_opt_delta(inst, &order, i, j) < -TWO_OPT_EPS {
                order[i + 1..=j].reverse();
                continue 'scan;
            }
        }
        break;
    }
    debug_assert!(cycle_length(inst, &order) <= cycle_length(inst, tour.order()) + TWO_OPT_EPS);
    Tour::from_vec_unchecked(order)
}

/// Greedy edge construction followed by 2-OPT.
pub fn adhoc_tsp<D: Distances + ?Sized>(inst: &D) -> Tour {
    two_opt(inst, &greedy_edge_tour(inst))
}

/// Repeatedly takes the vertex of maximum residual degree until every edge
/// is covered.
pub fn greedy_vertex_cover(g: &Graph) -> VertexSubset {
    let n = g.vertex_count();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut chosen = vec![false; n];
    loop {
        let (best, &deg) = degree
            .iter()
            .enumerate()
            .rev()
            .max_by_key(|&(_, d)| *d)
            .expect("graph has vertices");
        if deg == 0 {
            break;
        }
        chosen[best] = true;
        degree[best] = 0;
        for &w in g.neighbors(best) {
            let w = w as usize;
            if !chosen[w] {
                degree[w] -= 1;
            }
        }
    }
    Selection::from(chosen)
}

/// Repeatedly takes the subset covering the most still-uncovered elements.
pub fn greedy_set_cover(inst: &SetCoverInstance) -> SubsetSelection {
    let family = inst.family();
    let mut covered = vec![false; inst.universe_size()];
    let mut gain: Vec<usize> = family.iter().map(Vec::len).collect();
    let mut chosen = vec![false; family.len()];
    let mut remaining = inst.universe_size();
    while remaining > 0 {
        let (best, &g) = gain
            .iter()
            .enumerate()
            .rev()
            .max_by_key(|&(_, g)| *g)
            .expect("coverable instance has subsets");
        debug_assert!(g > 0);
        chosen[best] = true;
        for &e in &family[best] {
            let e = e as usize;
            if !covered[e] {
                covered[e] = true;
                remaining -= 1;
            }
        }
        // Recount gains; cheap compared with the instances we target.
        for (j, s) in family.iter().enumerate() {
            gain[j] = if chosen[j] { 0 } else { s.iter().filter(|&&e| !covered[e as usize]).count() };
        }
    }
    Selection::from(chosen)
}

/// Which degree the independent-set greedy minimises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DegreeRule {
    /// Degree in the input graph, fixed for the whole run.
    #[default]
    Original,
    /// Degree among the vertices still available.
    Residual,
}

/// The ad-hoc independent set: repeatedly takes the available vertex of
/// least original degree and removes it with its neighbours.
pub fn greedy_independent_set(g: &Graph) -> VertexSubset {
    greedy_independent_set_with(g, DegreeRule::Original)
}

/// Min-degree greedy independent set; ties go to the lower index.
pub fn greedy_independent_set_with(g: &Graph, rule: DegreeRule) -> VertexSubset {
    let n = g.vertex_count();
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut chosen = vec![false; n];
    let mut left = n;
    while left > 0 {
        let v = (0..n)
            .filter(|&v| alive[v])
            .min_by_key(|&v| degree[v])
            .expect("vertices remain");
        chosen[v] = true;
        let mut doomed = vec![v];
        doomed.extend(g.neighbors(v).iter().map(|&w| w as usize).filter(|&w| alive[w]));
        for &x in &doomed {
            alive[x] = false;
            left -= 1;
        }
        if rule == DegreeRule::Residual {
            for &x in &doomed {
                for &y in g.neighbors(x) {
                    let y = y as usize;
                    if alive[y] {
                        degree[y] -= 1;
                    }
                }
            }
        }
    }
    Selection::from(chosen)
}

/// The ad-hoc solution for any instance.
pub fn solve_adhoc(inst: &ProblemInstance) -> Solution {
    match inst {
        ProblemInstance::Knapsack(k) => Solution::Subset(greedy_knapsack(k)),
        ProblemInstance::EuclideanTsp(t) => Solution::Tour(adhoc_tsp(t)),
        ProblemInstance::MatrixTsp(m) => Solution::Tour(adhoc_tsp(m)),
        ProblemInstance::VertexCover(g) => Solution::Subset(greedy_vertex_cover(g)),
        ProblemInstance::SetCover(s) => Solution::Subset(greedy_set_cover(s)),
        ProblemInstance::IndependentSet(g) => Solution::Subset(greedy_independent_set(g)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{tour_length, EuclideanTspInstance, MatrixTspInstance};

    fn square() -> EuclideanTspInstance {
        EuclideanTspInstance::with_rounding(
            vec![(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)],
            crate::instances::Rounding::Exact,
        )
        .unwrap()
    }

    fn indices(s: &Selection) -> Vec<usize> {
        s.indices().collect()
    }

    #[test]
    fn knapsack_examples() {
        let k = KnapsackInstance::from_pairs(&[(6.0, 2.0), (5.0, 5.0), (4.0, 4.0)], 6.0).unwrap();
        let sel = greedy_knapsack(&k);
        assert_eq!(indices(&sel), vec![0, 2]);
        assert_eq!(k.evaluate(&sel).unwrap().value, 10.0);

        let k = KnapsackInstance::from_pairs(&[(3.0, 9.0)], 5.0).unwrap();
        assert_eq!(greedy_knapsack(&k).count(), 0);

        let k = KnapsackInstance::from_pairs(&[(1.0, 1.0), (2.0, 1.0), (0.0, 3.0)], 5.0).unwrap();
        assert_eq!(greedy_knapsack(&k).count(), 3);
    }

    #[test]
    fn greedy_edge_examples() {
        let sq = square();
        let t = greedy_edge_tour(&sq);
        assert_eq!(t.length(&sq).unwrap(), 4.0);

        let tri = MatrixTspInstance::new(vec![vec![0, 3, 4], vec![3, 0, 5], vec![4, 5, 0]]).unwrap();
        assert_eq!(greedy_edge_tour(&tri).order(), &[0, 1, 2]);

        let m = MatrixTspInstance::new(vec![
            vec![0, 1, 5, 5],
            vec![1, 0, 1, 5],
            vec![5, 1, 0, 1],
            vec![5, 5, 1, 0],
        ])
        .unwrap();
        let t = greedy_edge_tour(&m);
        assert_eq!(t.order(), &[0, 1, 2, 3]);
        assert_eq!(t.length(&m).unwrap(), 8.0);
    }

    #[test]
    fn two_opt_uncrosses_square() {
        let sq = square();
        let crossed = Tour::new(vec![0, 2, 1, 3]).unwrap();
        assert!((crossed.length(&sq).unwrap() - (2.0 + 2.0 * 2f64.sqrt())).abs() < 1e-12);
        let fixed = two_opt(&sq, &crossed);
        assert!((fixed.length(&sq).unwrap() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn two_opt_fixpoints() {
        let sq = square();
        let good = Tour::new(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(two_opt(&sq, &good), good);
        let tri = MatrixTspInstance::new(vec![vec![0, 3, 4], vec![3, 0, 5], vec![4, 5, 0]]).unwrap();
        let t = Tour::new(vec![2, 0, 1]).unwrap();
        assert_eq!(two_opt(&tri, &t), t);
        assert_eq!(two_opt_pairs(3).count(), 0);
    }

    #[test]
    fn two_opt_pair_enumeration() {
        // n(n-3)/2 exchangeable pairs in an n-cycle.
        for n in 3..12 {
            assert_eq!(two_opt_pairs(n).count(), n * (n - 3) / 2);
        }
    }

    #[test]
    fn adhoc_tsp_never_worse_than_construction() {
        let pts: Vec<(f64, f64)> =
            (0..10).map(|i| (((i * 37) % 101) as f64, ((i * 59) % 103) as f64)).collect();
        let inst = EuclideanTspInstance::new(pts).unwrap();
        let greedy = greedy_edge_tour(&inst);
        let improved = adhoc_tsp(&inst);
        assert!(
            tour_length(&inst, improved.order()).unwrap()
                <= tour_length(&inst, greedy.order()).unwrap()
        );
    }

    #[test]
    fn vertex_cover_examples() {
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(indices(&greedy_vertex_cover(&star)), vec![0]);
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(greedy_vertex_cover(&tri).count(), 2);
        let edgeless = Graph::new(3, []).unwrap();
        assert_eq!(greedy_vertex_cover(&edgeless).count(), 0);
    }

    #[test]
    fn vertex_cover_prefers_lower_index_on_ties() {
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(indices(&greedy_vertex_cover(&tri)), vec![0, 1]);
    }

    #[test]
    fn set_cover_examples() {
        let inst = SetCoverInstance::new(5, vec![vec![0, 1, 2], vec![2, 3], vec![3, 4]]).unwrap();
        assert_eq!(indices(&greedy_set_cover(&inst)), vec![0, 2]);

        let whole = SetCoverInstance::new(3, vec![vec![0], vec![0, 1, 2], vec![1]]).unwrap();
        assert_eq!(indices(&greedy_set_cover(&whole)), vec![1]);

        let pairs =
            SetCoverInstance::new(4, vec![vec![0, 1], vec![2, 3], vec![0, 2], vec![1, 3]]).unwrap();
        let sel = greedy_set_cover(&pairs);
        assert_eq!(sel.count(), 2);
        assert!(pairs.covers_universe(&sel).unwrap());
    }

    #[test]
    fn independent_set_examples() {
        let path = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(indices(&greedy_independent_set(&path)), vec![0, 2]);
        let star = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(indices(&greedy_independent_set(&star)), vec![1, 2, 3]);
        let tri = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(greedy_independent_set(&tri).count(), 1);
    }
}
