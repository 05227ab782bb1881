//! Canonical events and their Boolean algebra in three ground models: coin
//! tosses, the rational real line, and explicit finite spaces.
//!
//! Canonical forms are unique per point set, so event equality is structural
//! `==`.

mod coin;
mod finite;
mod interval;

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

pub use coin::{CoinEvent, CoinPoint, Toss, MAX_ATOMS, MAX_INDICES};
pub use finite::{FiniteEvent, FiniteSpace, MAX_UNIVERSE};
pub use interval::IntervalEvent;

use crate::nafield::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Coin,
    Interval,
    Finite,
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Coin => "coin",
            ModelKind::Interval => "interval",
            ModelKind::Finite => "finite",
        })
    }
}

/// A ground model: the space events live in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroundModel {
    Coin,
    Interval,
    Finite(Arc<FiniteSpace>),
}

impl GroundModel {
    pub fn kind(&self) -> ModelKind {
        match self {
            GroundModel::Coin => ModelKind::Coin,
            GroundModel::Interval => ModelKind::Interval,
            GroundModel::Finite(_) => ModelKind::Finite,
        }
    }

    pub fn empty_event(&self) -> Event {
        match self {
            GroundModel::Coin => Event::Coin(CoinEvent::empty()),
            GroundModel::Interval => Event::Interval(IntervalEvent::empty()),
            GroundModel::Finite(s) => Event::Finite(FiniteEvent::empty(s)),
        }
    }

    /// The whole space; `None` for the real line.
    pub fn full_event(&self) -> Option<Event> {
        match self {
            GroundModel::Coin => Some(Event::Coin(CoinEvent::omega())),
            GroundModel::Interval => None,
            GroundModel::Finite(s) => Some(Event::Finite(FiniteEvent::full(s))),
        }
    }

    /// `true` when `e` is an event of this model (same finite space included).
    pub fn owns(&self, e: &Event) -> bool {
        match (self, e) {
            (GroundModel::Coin, Event::Coin(_)) | (GroundModel::Interval, Event::Interval(_)) => {
                true
            }
            (GroundModel::Finite(s), Event::Finite(f)) => {
                Arc::ptr_eq(s, f.space()) || **s == **f.space()
            }
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EventError {
    #[error("model mismatch: {left} event combined with {right} event")]
    ModelMismatch { left: ModelKind, right: ModelKind },
    #[error("events belong to different finite spaces")]
    ForeignSpace,
    #[error("invalid interval [{start}, {end}): start must be below end")]
    InvalidInterval { start: String, end: String },
    #[error("coin indices start at 1")]
    ZeroIndex,
    #[error("index {0} constrained to both H and T")]
    ConflictingIndex(u32),
    #[error("index {0} listed twice")]
    DuplicateIndex(u32),
    #[error("atom has {found} values, expected {expected}")]
    AtomArity { expected: usize, found: usize },
    #[error("added point {0} already lies in the base set")]
    PlusPointInBase(String),
    #[error("removed point {0} does not lie in the base set")]
    MinusPointOutsideBase(String),
    #[error("point {0} is both added and removed")]
    PointInBothAdjustments(String),
    #[error("malformed coin point {0:?}")]
    MalformedPoint(String),
    #[error("event depends on {0} indices, more than the supported {max}", max = MAX_INDICES)]
    TooManyIndices(usize),
    #[error("operation would materialize more than {max} atoms", max = MAX_ATOMS)]
    TooManyAtoms,
    #[error("absolute complement is not available in the interval model")]
    ComplementUnsupported,
    #[error("finite universe must not be empty")]
    EmptyUniverse,
    #[error("finite universe has {0} labels, more than the supported {max}", max = MAX_UNIVERSE)]
    UniverseTooLarge(usize),
    #[error("label {0:?} appears twice in the universe")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("mask {0:#x} has members outside the universe")]
    MaskOutsideUniverse(u64),
    #[error("{point} point cannot be tested against a {event} event")]
    PointMismatch { point: ModelKind, event: ModelKind },
}

/// An event of any ground model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Event {
    Coin(CoinEvent),
    Interval(IntervalEvent),
    Finite(FiniteEvent),
}

/// A sample point of any ground model.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Point {
    Coin(CoinPoint),
    Real(Rational),
    Label(String),
}

impl Point {
    pub fn kind(&self) -> ModelKind {
        match self {
            Point::Coin(_) => ModelKind::Coin,
            Point::Real(_) => ModelKind::Interval,
            Point::Label(_) => ModelKind::Finite,
        }
    }
}

impl Event {
    pub fn kind(&self) -> ModelKind {
        match self {
            Event::Coin(_) => ModelKind::Coin,
            Event::Interval(_) => ModelKind::Interval,
            Event::Finite(_) => ModelKind::Finite,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            Event::Coin(e) => e.is_empty(),
            Event::Interval(e) => e.is_empty(),
            Event::Finite(e) => e.is_empty(),
        }
    }

    pub fn as_coin(&self) -> Option<&CoinEvent> {
        match self {
            Event::Coin(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_interval(&self) -> Option<&IntervalEvent> {
        match self {
            Event::Interval(e) => Some(e),
            _ => None,
        }
    }

    pub fn as_finite(&self) -> Option<&FiniteEvent> {
        match self {
            Event::Finite(e) => Some(e),
            _ => None,
        }
    }

    fn mismatch(&self, other: &Event) -> EventError {
        EventError::ModelMismatch {
            left: self.kind(),
            right: other.kind(),
        }
    }

    pub fn union(&self, other: &Event) -> Result<Event, EventError> {
        match (self, other) {
            (Event::Coin(a), Event::Coin(b)) => a.union(b).map(Event::Coin),
            (Event::Interval(a), Event::Interval(b)) => Ok(Event::Interval(a.union(b))),
            (Event::Finite(a), Event::Finite(b)) => a.union(b).map(Event::Finite),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn intersect(&self, other: &Event) -> Result<Event, EventError> {
        match (self, other) {
            (Event::Coin(a), Event::Coin(b)) => a.intersect(b).map(Event::Coin),
            (Event::Interval(a), Event::Interval(b)) => Ok(Event::Interval(a.intersect(b))),
            (Event::Finite(a), Event::Finite(b)) => a.intersect(b).map(Event::Finite),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn difference(&self, other: &Event) -> Result<Event, EventError> {
        match (self, other) {
            (Event::Coin(a), Event::Coin(b)) => a.difference(b).map(Event::Coin),
            (Event::Interval(a), Event::Interval(b)) => Ok(Event::Interval(a.difference(b))),
            (Event::Finite(a), Event::Finite(b)) => a.difference(b).map(Event::Finite),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn complement(&self) -> Result<Event, EventError> {
        match self {
            Event::Coin(e) => e.complement().map(Event::Coin),
            Event::Interval(_) => Err(EventError::ComplementUnsupported),
            Event::Finite(e) => Ok(Event::Finite(e.complement())),
        }
    }

    pub fn is_subset(&self, other: &Event) -> Result<bool, EventError> {
        match (self, other) {
            (Event::Coin(a), Event::Coin(b)) => a.is_subset(b),
            (Event::Interval(a), Event::Interval(b)) => Ok(a.is_subset(b)),
            (Event::Finite(a), Event::Finite(b)) => a.is_subset(b),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn is_equal(&self, other: &Event) -> Result<bool, EventError> {
        if self.kind() != other.kind() {
            return Err(self.mismatch(other));
        }
        if let (Event::Finite(a), Event::Finite(b)) = (self, other) {
            a.is_subset(b)?;
        }
        Ok(self == other)
    }

    pub fn is_disjoint(&self, other: &Event) -> Result<bool, EventError> {
        Ok(self.intersect(other)?.is_empty())
    }

    pub fn contains(&self, p: &Point) -> Result<bool, EventError> {
        match (self, p) {
            (Event::Coin(e), Point::Coin(x)) => Ok(e.contains(x)),
            (Event::Interval(e), Point::Real(x)) => Ok(e.contains(x)),
            (Event::Finite(e), Point::Label(x)) => Ok(e.contains(x)),
            _ => Err(EventError::PointMismatch {
                point: p.kind(),
                event: self.kind(),
            }),
        }
    }

    /// Checks the canonical-form invariants of the underlying representation.
    pub fn validate(&self) -> Result<(), String> {
        match self {
            Event::Coin(e) => e.validate(),
            Event::Interval(e) => e.validate(),
            Event::Finite(e) => {
                if e.mask() & !e.space().full_mask() != 0 {
                    Err("members outside the universe".into())
                } else {
                    Ok(())
                }
            }
        }
    }
}

impl From<CoinEvent> for Event {
    fn from(e: CoinEvent) -> Self {
        Event::Coin(e)
    }
}

impl From<IntervalEvent> for Event {
    fn from(e: IntervalEvent) -> Self {
        Event::Interval(e)
    }
}

impl From<FiniteEvent> for Event {
    fn from(e: FiniteEvent) -> Self {
        Event::Finite(e)
    }
}
