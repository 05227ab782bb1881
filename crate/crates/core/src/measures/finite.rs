//! Finitely additive measures on a declared subalgebra of a finite space.
//!
//! The algebra is given by its cells (atoms): a partition of the universe.
//! Members are the unions of cells.

use std::sync::Arc;

use num::{One, Signed, Zero};

use super::MeasureError;
use crate::events::{FiniteEvent, FiniteSpace};
use crate::nafield::Rational;

/// Cover search enumerates every algebra member up to this many cells.
const COVER_SEARCH_MAX_CELLS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMeasure {
    space: Arc<FiniteSpace>,
    /// Sorted by lowest member.
    cells: Vec<u64>,
    weights: Vec<Rational>,
    /// Declared `(set, value)` pairs the weights were solved from.
    assignments: Vec<(u64, Rational)>,
}

impl FiniteMeasure {
    /// Measure given directly by its cells and their weights.
    pub fn from_cells(
        space: Arc<FiniteSpace>,
        cells: Vec<u64>,
        weights: Vec<Rational>,
    ) -> Result<Self, MeasureError> {
        if cells.len() != weights.len() {
            return Err(MeasureError::NotAPartition);
        }
        let mut seen = 0u64;
        for &c in &cells {
            if c == 0 || c & seen != 0 {
                return Err(MeasureError::NotAPartition);
            }
            seen |= c;
        }
        if seen != space.full_mask() {
            return Err(MeasureError::NotAPartition);
        }
        if let Some(w) = weights.iter().find(|w| w.is_negative()) {
            return Err(MeasureError::Negative(w.to_string()));
        }
        let mut pairs: Vec<(u64, Rational)> = cells.into_iter().zip(weights).collect();
        pairs.sort_by_key(|(c, _)| c.trailing_zeros());
        let assignments = pairs.clone();
        let (cells, weights) = pairs.into_iter().unzip();
        Ok(FiniteMeasure {
            space,
            cells,
            weights,
            assignments,
        })
    }

    /// Counting measure on the full power set.
    pub fn counting(space: Arc<FiniteSpace>) -> Self {
        let cells: Vec<u64> = (0..space.len()).map(|i| 1u64 << i).collect();
        let weights = vec![Rational::one(); cells.len()];
        FiniteMeasure::from_cells(space, cells, weights).expect("singletons partition the space")
    }

    /// Builds the algebra generated by `generators` and solves the cell
    /// weights from the declared `(set, value)` assignments. Every assigned
    /// set must be an algebra member and the assignments must pin down each
    /// cell's weight uniquely and non-negatively.
    pub fn from_generators(
        space: Arc<FiniteSpace>,
        generators: &[u64],
        assignments: Vec<(u64, Rational)>,
    ) -> Result<Self, MeasureError> {
        let cells = generated_cells(&space, generators);
        for (set, _) in &assignments {
            if !is_union_of(&cells, *set) {
                return Err(MeasureError::NotInAlgebra(label_set(&space, *set)));
            }
        }
        let weights = solve_weights(&space, &cells, &assignments)?;
        let mut m = FiniteMeasure::from_cells(space, cells, weights)?;
        m.assignments = assignments;
        Ok(m)
    }

    pub fn space(&self) -> &Arc<FiniteSpace> {
        &self.space
    }

    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn assignments(&self) -> &[(u64, Rational)] {
        &self.assignments
    }

    pub fn total(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, w| a + w)
    }

    pub(crate) fn check_space(&self, e: &FiniteEvent) -> Result<(), MeasureError> {
        if Arc::ptr_eq(&self.space, e.space()) || *self.space == **e.space() {
            Ok(())
        } else {
            Err(crate::events::EventError::ForeignSpace.into())
        }
    }

    /// `true` when `mask` is a union of cells.
    pub fn is_member(&self, mask: u64) -> bool {
        is_union_of(&self.cells, mask)
    }

    pub fn measure_mask(&self, mask: u64) -> Option<Rational> {
        self.is_member(mask).then(|| self.outer_structural(mask))
    }

    /// All algebra members, indexed by subsets of cells.
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        (0u64..1 << self.cells.len()).map(move |k| self.member(k))
    }

    /// The member formed by the cells selected in `k`.
    pub fn member(&self, k: u64) -> u64 {
        self.cells
            .iter()
            .enumerate()
            .filter(|(i, _)| k >> i & 1 == 1)
            .fold(0, |m, (_, c)| m | c)
    }

    /// Outer measure as the least measure of an algebra member covering
    /// `mask`. A countable cover's union is itself a member of no larger
    /// measure, so single covering members suffice.
    pub fn outer_by_cover_search(&self, mask: u64) -> Rational {
        if self.cells.len() > COVER_SEARCH_MAX_CELLS {
            return self.outer_structural(mask);
        }
        let mut best: Option<Rational> = None;
        for k in 0u64..1 << self.cells.len() {
            let member = self.member(k);
            if member & mask != mask {
                continue;
            }
            let value = self
                .weights
                .iter()
                .enumerate()
                .filter(|(i, _)| k >> i & 1 == 1)
                .fold(Rational::zero(), |a, (_, w)| a + w);
            if best.as_ref().is_none_or(|b| value < *b) {
                best = Some(value);
            }
        }
        best.expect("the whole space covers every set")
    }

    /// Sum of the weights of the cells meeting `mask`.
    pub fn outer_structural(&self, mask: u64) -> Rational {
        self.cells
            .iter()
            .zip(&self.weights)
            .filter(|(c, _)| *c & mask != 0)
            .fold(Rational::zero(), |a, (_, w)| a + w)
    }

    /// `true` when every cell has weight `|cell| / beta` for one positive
    /// `beta`, i.e. when counting measure rescaled agrees with the measure
    /// on the whole algebra.
    pub fn is_count_proportional(&self) -> bool {
        let density = |i: usize| &self.weights[i] / Rational::from_integer(self.cells[i].count_ones().into());
        let first = density(0);
        first.is_positive() && (1..self.cells.len()).all(|i| density(i) == first)
    }
}

pub(crate) fn label_set(space: &FiniteSpace, mask: u64) -> String {
    let labels: Vec<&str> = space
        .labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, l)| l.as_str())
        .collect();
    format!("{{{}}}", labels.join(", "))
}

fn is_union_of(cells: &[u64], mask: u64) -> bool {
    cells.iter().all(|&c| c & mask == 0 || c & mask == c)
}

/// Cells of the algebra generated by `generators`: points grouped by which
/// generators contain them.
fn generated_cells(space: &FiniteSpace, generators: &[u64]) -> Vec<u64> {
    let mut cells: Vec<(Vec<bool>, u64)> = Vec::new();
    for i in 0..space.len() {
        let signature: Vec<bool> = generators.iter().map(|g| g >> i & 1 == 1).collect();
        match cells.iter_mut().find(|(s, _)| *s == signature) {
            Some((_, m)) => *m |= 1 << i,
            None => cells.push((signature, 1 << i)),
        }
    }
    cells.into_iter().map(|(_, m)| m).collect()
}

/// Exact Gauss-Jordan elimination for the cell weights.
fn solve_weights(
    space: &FiniteSpace,
    cells: &[u64],
    assignments: &[(u64, Rational)],
) -> Result<Vec<Rational>, MeasureError> {
    let n = cells.len();
    let mut rows: Vec<Vec<Rational>> = assignments
        .iter()
        .map(|(set, value)| {
            let mut row: Vec<Rational> = cells
                .iter()
                .map(|&c| {
                    if c & set != 0 {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect();
            row.push(value.clone());
            row
        })
        .collect();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let lead = rows[r][col].clone();
        for v in rows[r].iter_mut() {
            *v /= &lead;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[n].is_zero()) {
        return Err(MeasureError::Inconsistent);
    }
    if pivots.len() < n {
        let free: Vec<String> = (0..n)
            .filter(|c| !pivots.contains(c))
            .map(|c| label_set(space, cells[c]))
            .collect();
        return Err(MeasureError::Underdetermined(free.join(" ")));
    }
    let mut weights = vec![Rational::zero(); n];
    for (row, &col) in rows.iter().zip(&pivots) {
        weights[col] = row[n].clone();
    }
    if let Some(w) = weights.iter().find(|w| w.is_negative()) {
        return Err(MeasureError::Negative(w.to_string()));
    }
    Ok(weights)
}
