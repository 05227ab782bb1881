//! Events on the real line: finite unions of rational half-open intervals
//! `[a, b)`, adjusted by finitely many rational points.

use std::collections::BTreeSet;

use num::Zero;

use super::EventError;
use crate::nafield::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntervalEvent {
    /// Sorted, pairwise disjoint and non-adjacent.
    intervals: Vec<(Rational, Rational)>,
    plus: BTreeSet<Rational>,
    minus: BTreeSet<Rational>,
}

impl IntervalEvent {
    pub fn empty() -> Self {
        IntervalEvent::default()
    }

    /// `[start, end)`; rejects `start >= end`.
    pub fn interval(start: Rational, end: Rational) -> Result<Self, EventError> {
        if start >= end {
            return Err(EventError::InvalidInterval {
                start: start.to_string(),
                end: end.to_string(),
            });
        }
        Ok(IntervalEvent {
            intervals: vec![(start, end)],
            ..IntervalEvent::default()
        })
    }

    pub fn points<I: IntoIterator<Item = Rational>>(points: I) -> Self {
        IntervalEvent {
            plus: points.into_iter().collect(),
            ..IntervalEvent::default()
        }
    }

    /// Validates and canonicalizes: overlapping or touching intervals are
    /// merged, `plus` must avoid the base and `minus` must lie inside it.
    pub fn from_parts(
        intervals: Vec<(Rational, Rational)>,
        plus: Vec<Rational>,
        minus: Vec<Rational>,
    ) -> Result<Self, EventError> {
        for (a, b) in &intervals {
            if a >= b {
                return Err(EventError::InvalidInterval {
                    start: a.to_string(),
                    end: b.to_string(),
                });
            }
        }
        let mut sorted = intervals;
        sorted.sort();
        let mut merged: Vec<(Rational, Rational)> = Vec::with_capacity(sorted.len());
        for (a, b) in sorted {
            match merged.last_mut() {
                Some((_, end)) if a <= *end => {
                    if b > *end {
                        *end = b;
                    }
                }
                _ => merged.push((a, b)),
            }
        }
        let mut event = IntervalEvent {
            intervals: merged,
            ..IntervalEvent::default()
        };
        for p in plus {
            if event.base_contains(&p) {
                return Err(EventError::PlusPointInBase(p.to_string()));
            }
            event.plus.insert(p);
        }
        for p in minus {
            if !event.base_contains(&p) {
                return Err(EventError::MinusPointOutsideBase(p.to_string()));
            }
            event.minus.insert(p);
        }
        Ok(event)
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn plus(&self) -> &BTreeSet<Rational> {
        &self.plus
    }

    pub fn minus(&self) -> &BTreeSet<Rational> {
        &self.minus
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.plus.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn is_pure_interval_set(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    /// Sum of the interval lengths.
    pub fn total_length(&self) -> Rational {
        self.intervals
            .iter()
            .fold(Rational::zero(), |acc, (a, b)| acc + (b - a))
    }

    pub fn base_contains(&self, x: &Rational) -> bool {
        // first interval whose end lies strictly beyond x
        let k = self.intervals.partition_point(|(_, b)| b <= x);
        self.intervals.get(k).is_some_and(|(a, _)| a <= x)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        if self.plus.contains(x) {
            return true;
        }
        self.base_contains(x) && !self.minus.contains(x)
    }

    /// Sweep over the merged breakpoints: on each gap between consecutive
    /// breakpoints both operands are constant, decided at the left end.
    fn combine<F>(&self, other: &IntervalEvent, op: F) -> IntervalEvent
    where
        F: Fn(bool, bool) -> bool,
    {
        let breakpoints: Vec<&Rational> = self
            .intervals
            .iter()
            .chain(&other.intervals)
            .flat_map(|(a, b)| [a, b])
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut intervals: Vec<(Rational, Rational)> = Vec::new();
        for w in breakpoints.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            if !op(self.base_contains(lo), other.base_contains(lo)) {
                continue;
            }
            match intervals.last_mut() {
                Some((_, end)) if end == lo => *end = hi.clone(),
                _ => intervals.push((lo.clone(), hi.clone())),
            }
        }
        let mut result = IntervalEvent {
            intervals,
            ..IntervalEvent::default()
        };
        let candidates: BTreeSet<&Rational> = self
            .plus
            .iter()
            .chain(&self.minus)
            .chain(&other.plus)
            .chain(&other.minus)
            .collect();
        for p in candidates {
            let inside = op(self.contains(p), other.contains(p));
            let in_base = result.base_contains(p);
            if inside && !in_base {
                result.plus.insert(p.clone());
            } else if !inside && in_base {
                result.minus.insert(p.clone());
            }
        }
        result
    }

    pub fn union(&self, other: &IntervalEvent) -> IntervalEvent {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersect(&self, other: &IntervalEvent) -> IntervalEvent {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &IntervalEvent) -> IntervalEvent {
        self.combine(other, |a, b| a && !b)
    }

    pub fn is_subset(&self, other: &IntervalEvent) -> bool {
        self.difference(other).is_empty()
    }

    pub fn validate(&self) -> Result<(), String> {
        for (a, b) in &self.intervals {
            if a >= b {
                return Err(format!("degenerate interval [{a}, {b})"));
            }
        }
        for w in self.intervals.windows(2) {
            if w[0].1 >= w[1].0 {
                return Err("intervals overlap or touch".into());
            }
        }
        if let Some(p) = self.plus.iter().find(|p| self.base_contains(p)) {
            return Err(format!("plus point {p} lies in the base"));
        }
        if let Some(p) = self.minus.iter().find(|p| !self.base_contains(p)) {
            return Err(format!("minus point {p} lies outside the base"));
        }
        Ok(())
    }
}
