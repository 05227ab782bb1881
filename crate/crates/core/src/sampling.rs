//! Seeded random generators for values and events, used by the self-test
//! suites, the acceptance checks and the examples.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::events::{CoinEvent, CoinPoint, FiniteEvent, FiniteSpace, IntervalEvent, Toss};
use crate::nafield::{NaValue, Rational};

pub fn rational<R: Rng>(rng: &mut R, max_numer: i64, max_denom: i64) -> Rational {
    Rational::new(
        rng.gen_range(-max_numer..=max_numer).into(),
        rng.gen_range(1..=max_denom).into(),
    )
}

pub fn positive_rational<R: Rng>(rng: &mut R, max_numer: i64, max_denom: i64) -> Rational {
    Rational::new(
        rng.gen_range(1..=max_numer).into(),
        rng.gen_range(1..=max_denom).into(),
    )
}

/// Up to four terms with exponents in `{-3, -5/2, ..., 3}`.
pub fn na_value<R: Rng>(rng: &mut R) -> NaValue {
    let terms = rng.gen_range(0..=4);
    NaValue::from_terms((0..terms).map(|_| {
        let exponent = Rational::new(rng.gen_range(-6..=6).into(), 2.into());
        (exponent, rational(rng, 9, 6))
    }))
}

/// A finite value: exponents at most 0.
pub fn finite_na_value<R: Rng>(rng: &mut R) -> NaValue {
    let terms = rng.gen_range(0..=3);
    NaValue::from_terms((0..terms).map(|_| {
        let exponent = Rational::new(rng.gen_range(-6..=0).into(), 2.into());
        (exponent, rational(rng, 9, 6))
    }))
}

pub fn toss<R: Rng>(rng: &mut R) -> Toss {
    if rng.gen() {
        Toss::H
    } else {
        Toss::T
    }
}

pub fn coin_point<R: Rng>(rng: &mut R, max_prefix: usize) -> CoinPoint {
    let len = rng.gen_range(0..=max_prefix);
    CoinPoint::new((0..len).map(|_| toss(rng)).collect(), toss(rng))
}

#[derive(Debug, Clone, Copy)]
pub struct CoinShape {
    pub max_index: u32,
    pub max_codimension: usize,
    pub max_points: usize,
}

impl Default for CoinShape {
    fn default() -> Self {
        Self {
            max_index: 8,
            max_codimension: 5,
            max_points: 3,
        }
    }
}

pub fn index_set<R: Rng>(rng: &mut R, max_index: u32, size: usize) -> Vec<u32> {
    let mut all: Vec<u32> = (1..=max_index).collect();
    all.shuffle(rng);
    all.truncate(size);
    all.sort_unstable();
    all
}

/// A random canonical coin event: a random union of atoms over a random
/// index set, with exceptional points added and removed.
pub fn coin_event<R: Rng>(rng: &mut R, shape: CoinShape) -> CoinEvent {
    let size = rng.gen_range(0..=shape.max_codimension.min(shape.max_index as usize));
    let indices = index_set(rng, shape.max_index, size);
    let atoms: Vec<Vec<Toss>> = (0..1u64 << size)
        .filter(|_| rng.gen_bool(0.5))
        .map(|m| (0..size).map(|j| if m >> j & 1 == 1 { Toss::H } else { Toss::T }).collect())
        .collect();
    let base = CoinEvent::from_parts(indices.clone(), atoms.clone(), vec![], vec![])
        .expect("valid atoms");
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for _ in 0..rng.gen_range(0..=shape.max_points) {
        let p = coin_point(rng, shape.max_index as usize + 1);
        if base.base_contains(&p) {
            minus.push(p);
        } else {
            plus.push(p);
        }
    }
    CoinEvent::from_parts(indices, atoms, plus, minus).expect("classified points")
}

/// A random interval event with endpoints on the grid `k/4`, `|k| ≤ 40`.
pub fn interval_event<R: Rng>(rng: &mut R) -> IntervalEvent {
    let grid = |rng: &mut R| Rational::new(rng.gen_range(-40..=40).into(), 4.into());
    let mut intervals = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        let a = grid(rng);
        let len = Rational::new(rng.gen_range(1..=20).into(), 4.into());
        intervals.push((a.clone(), a + len));
    }
    let base = IntervalEvent::from_parts(intervals.clone(), vec![], vec![]).expect("valid intervals");
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for _ in 0..rng.gen_range(0..=3) {
        let x = Rational::new(rng.gen_range(-90..=90).into(), rng.gen_range(1..=8).into());
        if base.base_contains(&x) {
            minus.push(x);
        } else {
            plus.push(x);
        }
    }
    minus.sort();
    minus.dedup();
    plus.sort();
    plus.dedup();
    IntervalEvent::from_parts(intervals, plus, minus).expect("classified points")
}

pub fn finite_space(n: usize) -> Arc<FiniteSpace> {
    FiniteSpace::new((0..n).map(|k| format!("x{k}"))).expect("small universe")
}

pub fn finite_event<R: Rng>(rng: &mut R, space: &Arc<FiniteSpace>) -> FiniteEvent {
    FiniteEvent::from_mask(space, rng.gen::<u64>() & space.full_mask()).expect("in universe")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_events_are_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..300 {
            coin_event(&mut rng, CoinShape::default()).validate().unwrap();
            interval_event(&mut rng).validate().unwrap();
        }
    }
}
