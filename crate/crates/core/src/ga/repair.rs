//! Deterministic repair of bitstring genomes into feasible phenotypes.

use super::{BitProblem, GaError, Genome};
use crate::instances::{Graph, KnapsackInstance, ProblemInstance, Sense, SetCoverInstance};

/// Drops included items in ascending density order (lower index first on
/// ties) until the knapsack fits.
pub(crate) struct KnapsackRepair<'a> {
    inst: &'a KnapsackInstance,
    drop_order: Vec<usize>,
}

impl<'a> KnapsackRepair<'a> {
    pub fn new(inst: &'a KnapsackInstance) -> Self {
        let mut drop_order: Vec<usize> = (0..inst.len()).collect();
        drop_order.sort_by(|&a, &b| inst.density(a).total_cmp(&inst.density(b)).then(a.cmp(&b)));
        KnapsackRepair { inst, drop_order }
    }

    fn weight(&self, bits: &[bool]) -> f64 {
        self.inst.items().iter().zip(bits).filter(|(_, &b)| b).map(|(it, _)| it.weight).sum()
    }
}

impl BitProblem for KnapsackRepair<'_> {
    fn len(&self) -> usize {
        self.inst.len()
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn repair_eval(&self, bits: &mut [bool]) -> f64 {
        let items = self.inst.items();
        let cap = self.inst.capacity();
        let mut weight = self.weight(bits);
        let mut next = self.drop_order.iter();
        while weight > cap {
            let Some(&i) = next.next() else { break };
            if bits[i] {
                bits[i] = false;
                weight -= items[i].weight;
                if weight <= cap {
                    // Re-sum to avoid drift from repeated subtraction.
                    weight = self.weight(bits);
                }
            }
        }
        items.iter().zip(bits.iter()).filter(|(_, &b)| b).map(|(it, _)| it.value).sum()
    }
}

/// Covers each uncovered edge (in edge order) with its endpoint of higher
/// original degree, then prunes redundant vertices in ascending index.
pub(crate) struct VertexCoverRepair<'a> {
    graph: &'a Graph,
}

impl<'a> VertexCoverRepair<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        VertexCoverRepair { graph }
    }
}

impl BitProblem for VertexCoverRepair<'_> {
    fn len(&self) -> usize {
        self.graph.vertex_count()
    }

    fn sense(&self) -> Sense {
        Sense::Minimize
    }

    fn repair_eval(&self, bits: &mut [bool]) -> f64 {
        let g = self.graph;
        // Visiting u ascending and its higher neighbours ascending walks the
        // edges in lexicographic order.
        for u in 0..g.vertex_count() {
            if bits[u] {
                continue;
            }
            for &v in g.neighbors(u) {
                let v = v as usize;
                if v < u || bits[v] {
                    continue;
                }
                if g.degree(u) >= g.degree(v) {
                    bits[u] = true;
                    break;
                }
                bits[v] = true;
            }
        }
        for v in 0..g.vertex_count() {
            if bits[v] && g.neighbors(v).iter().all(|&w| bits[w as usize]) {
                bits[v] = false;
            }
        }
        bits.iter().filter(|&&b| b).count() as f64
    }
}

/// For each conflicting edge (in edge order) deselects the endpoint of
/// higher original degree, the higher index on ties.
pub(crate) struct IndependentSetRepair<'a> {
    graph: &'a Graph,
}

impl<'a> IndependentSetRepair<'a> {
    pub fn new(graph: &'a Graph) -> Self {
        IndependentSetRepair { graph }
    }
}

impl BitProblem for IndependentSetRepair<'_> {
    fn len(&self) -> usize {
        self.graph.vertex_count()
    }

    fn sense(&self) -> Sense {
        Sense::Maximize
    }

    fn repair_eval(&self, bits: &mut [bool]) -> f64 {
        let g = self.graph;
        for u in 0..g.vertex_count() {
            if !bits[u] {
                continue;
            }
            for &v in g.neighbors(u) {
                let v = v as usize;
                if v < u || !bits[v] {
                    continue;
                }
                if g.degree(u) > g.degree(v) {
                    bits[u] = false;
                    break;
                }
                bits[v] = false;
            }
        }
        bits.iter().filter(|&&b| b).count() as f64
    }
}

/// Completes a partial cover greedily (most uncovered elements first, lower
/// index on ties), then prunes redundant subsets in ascending index.
/// Subsets are held as bitsets over the universe.
pub(crate) struct SetCoverRepair {
    words: usize,
    subsets: usize,
    sets: Vec<u64>,
    full: Vec<u64>,
}

impl SetCoverRepair {
    pub fn new(inst: &SetCoverInstance) -> Self {
        let words = inst.universe_size().div_ceil(64);
        let mut sets = vec![0u64; words * inst.subset_count()];
        for (j, s) in inst.family().iter().enumerate() {
            for &e in s {
                sets[j * words + e as usize / 64] |= 1 << (e % 64);
            }
        }
        let mut full = vec![u64::MAX; words];
        if !inst.universe_size().is_multiple_of(64) {
            full[words - 1] = (1u64 << (inst.universe_size() % 64)) - 1;
        }
        SetCoverRepair { words, subsets: inst.subset_count(), sets, full }
    }

    fn set(&self, j: usize) -> &[u64] {
        &self.sets[j * self.words..(j + 1) * self.words]
    }

    /// Elements covered by at least two chosen subsets.
    fn doubly_covered(&self, bits: &[bool], once: &mut [u64], twice: &mut [u64]) {
        once.fill(0);
        twice.fill(0);
        for j in (0..bits.len()).filter(|&j| bits[j]) {
            for ((o, t), &s) in once.iter_mut().zip(twice.iter_mut()).zip(self.set(j)) {
                *t |= *o & s;
                *o |= s;
            }
        }
    }
}

impl BitProblem for SetCoverRepair {
    fn len(&self) -> usize {
        self.subsets
    }

    fn sense(&self) -> Sense {
        Sense::Minimize
    }

    fn repair_eval(&self, bits: &mut [bool]) -> f64 {
        let w = self.words;
        if w == 0 {
            // Empty universe: the empty selection is the only minimal cover.
            bits.fill(false);
            return 0.0;
        }
        let mut covered = vec![0u64; w];
        for j in (0..bits.len()).filter(|&j| bits[j]) {
            for (c, &s) in covered.iter_mut().zip(self.set(j)) {
                *c |= s;
            }
        }
        while covered != self.full {
            let mut best = (0u32, usize::MAX);
            for (j, bit) in bits.iter().enumerate() {
                if *bit {
                    continue;
                }
                let gain: u32 = self.set(j).iter().zip(&covered).map(|(&s, &c)| (s & !c).count_ones()).sum();
                if gain > best.0 {
                    best = (gain, j);
                }
            }
            let j = best.1;
            debug_assert!(j != usize::MAX, "instance is coverable");
            bits[j] = true;
            for (c, &s) in covered.iter_mut().zip(self.set(j)) {
                *c |= s;
            }
        }

        let mut once = vec![0u64; w];
        let mut twice = vec![0u64; w];
        self.doubly_covered(bits, &mut once, &mut twice);
        for j in 0..bits.len() {
            if bits[j] && self.set(j).iter().zip(&twice).all(|(&s, &t)| s & !t == 0) {
                bits[j] = false;
                self.doubly_covered(bits, &mut once, &mut twice);
            }
        }
        bits.iter().filter(|&&b| b).count() as f64
    }
}

/// Repairs `genome` in place for `problem`. Tours need no repair.
pub fn repair(problem: &ProblemInstance, genome: &mut Genome) -> Result<(), GaError> {
    let expected = problem.dimension();
    if genome.len() != expected {
        return Err(GaError::Dimension { expected, found: genome.len() });
    }
    match (problem, genome) {
        (ProblemInstance::Knapsack(k), Genome::Bits(b)) => {
            KnapsackRepair::new(k).repair_eval(b);
        }
        (ProblemInstance::VertexCover(g), Genome::Bits(b)) => {
            VertexCoverRepair::new(g).repair_eval(b);
        }
        (ProblemInstance::IndependentSet(g), Genome::Bits(b)) => {
            IndependentSetRepair::new(g).repair_eval(b);
        }
        (ProblemInstance::SetCover(s), Genome::Bits(b)) => {
            SetCoverRepair::new(s).repair_eval(b);
        }
        (ProblemInstance::EuclideanTsp(_) | ProblemInstance::MatrixTsp(_), Genome::Perm(_)) => {}
        _ => return Err(GaError::Encoding),
    }
    Ok(())
}
