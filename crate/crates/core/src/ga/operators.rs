use rand::Rng;

use super::GaError;
use crate::instances::Sense;

/// Draws `k` indices uniformly with replacement and returns the best one;
/// ties go to the earliest draw.
pub fn tournament_select<R: Rng + ?Sized>(
    fitness: &[f64],
    k: usize,
    sense: Sense,
    rng: &mut R,
) -> Result<usize, GaError> {
    if fitness.is_empty() {
        return Err(GaError::EmptyPopulation);
    }
    if k == 0 {
        return Err(GaError::Config("tournament size must be at least 1".into()));
    }
    let mut winner = rng.random_range(0..fitness.len());
    for _ in 1..k {
        let challenger = rng.random_range(0..fitness.len());
        if sense.better(fitness[challenger], fitness[winner]) {
            winner = challenger;
        }
    }
    Ok(winner)
}

/// One-point crossover with the cut drawn uniformly in `1..L`.
pub fn one_point_crossover<R: Rng + ?Sized>(
    a: &[bool],
    b: &[bool],
    rng: &mut R,
) -> Result<(Vec<bool>, Vec<bool>), GaError> {
    if a.len() != b.len() {
        return Err(GaError::LengthMismatch(a.len(), b.len()));
    }
    if a.len() < 2 {
        return Ok((a.to_vec(), b.to_vec()));
    }
    let cut = rng.random_range(1..a.len());
    one_point_crossover_at(a, b, cut)
}

/// Children `a[..cut] + b[cut..]` and `b[..cut] + a[cut..]`.
pub fn one_point_crossover_at(a: &[bool], b: &[bool], cut: usize) -> Result<(Vec<bool>, Vec<bool>), GaError> {
    if a.len() != b.len() {
        return Err(GaError::LengthMismatch(a.len(), b.len()));
    }
    let cut = cut.min(a.len());
    let mut c1 = a[..cut].to_vec();
    c1.extend_from_slice(&b[cut..]);
    let mut c2 = b[..cut].to_vec();
    c2.extend_from_slice(&a[cut..]);
    Ok((c1, c2))
}

/// Flips every bit independently with probability `rate`.
pub fn bitflip_mutation<R: Rng + ?Sized>(genome: &mut [bool], rate: f64, rng: &mut R) {
    if rate <= 0.0 {
        return;
    }
    for bit in genome.iter_mut() {
        if rate >= 1.0 || rng.random::<f64>() < rate {
            *bit = !*bit;
        }
    }
}

/// OX1 with a random segment.
pub fn order_crossover<R: Rng + ?Sized>(a: &[usize], b: &[usize], rng: &mut R) -> Result<Vec<usize>, GaError> {
    if a.len() != b.len() {
        return Err(GaError::LengthMismatch(a.len(), b.len()));
    }
    if a.is_empty() {
        return Ok(Vec::new());
    }
    let i = rng.random_range(0..a.len());
    let j = rng.random_range(0..a.len());
    order_crossover_segment(a, b, i.min(j), i.max(j))
}

/// OX1: keeps `a[lo..=hi]` in place and fills the other positions from the
/// start with the remaining cities in `b` order.
pub fn order_crossover_segment(a: &[usize], b: &[usize], lo: usize, hi: usize) -> Result<Vec<usize>, GaError> {
    let n = a.len();
    if b.len() != n {
        return Err(GaError::LengthMismatch(n, b.len()));
    }
    if lo > hi || hi >= n {
        return Err(GaError::Config(format!("segment {lo}..={hi} outside 0..{n}")));
    }
    let mut taken = vec![false; n];
    for &city in &a[lo..=hi] {
        if city >= n {
            return Err(GaError::Encoding);
        }
        taken[city] = true;
    }
    let mut child = Vec::with_capacity(n);
    let mut fill = b.iter().copied().filter(|&c| c < n && !taken[c]);
    for pos in 0..n {
        if (lo..=hi).contains(&pos) {
            child.push(a[pos]);
        } else {
            child.push(fill.next().ok_or(GaError::Encoding)?);
        }
    }
    Ok(child)
}

/// With probability `rate`, exchanges two distinct uniformly chosen positions.
pub fn swap_mutation<R: Rng + ?Sized>(tour: &mut [usize], rate: f64, rng: &mut R) {
    if tour.len() < 2 || rate <= 0.0 {
        return;
    }
    if rate >= 1.0 || rng.random::<f64>() < rate {
        let i = rng.random_range(0..tour.len());
        let mut j = rng.random_range(0..tour.len() - 1);
        if j >= i {
            j += 1;
        }
        swap_positions(tour, i, j);
    }
}

pub fn swap_positions(tour: &mut [usize], i: usize, j: usize) {
    tour.swap(i, j);
}
