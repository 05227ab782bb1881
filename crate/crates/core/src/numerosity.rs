//! Numerosities of represented events.
//!
//! Coin model: `n(Omega) = w`, so an atom over `k` indices has numerosity
//! `w / 2^k`. Interval model: `n([0,1)) = w`, so `[a, b)` has numerosity
//! `(b - a) * w`. Finite model: cardinality. Added points count `+1`, removed
//! points `-1`. These assignments are additive, give every singleton size 1,
//! and are strictly monotone on proper subsets within each represented
//! algebra.

use std::cmp::Ordering;
use std::sync::Arc;

use num::{BigInt, One};
use thiserror::Error;

use crate::events::{CoinEvent, Event, EventError, FiniteSpace, GroundModel, ModelKind};
use crate::nafield::{ExtendedReal, NaError, NaValue, Quotient, Rational, DEFAULT_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumerosityError {
    #[error("context is for the {expected} model, event is from the {found} model")]
    ModelMismatch { expected: ModelKind, found: ModelKind },
    #[error("event belongs to a different finite space than the context")]
    ForeignSpace,
    #[error("probabilities are defined on the coin model only")]
    NotCoinModel,
    #[error("conditioning event is empty")]
    EmptyCondition,
    #[error("measure unit beta must be positive, got {0}")]
    NonPositiveBeta(String),
    #[error("first event is not a subset of the second")]
    NotASubset,
    #[error(transparent)]
    Event(#[from] EventError),
    #[error(transparent)]
    Arithmetic(#[from] NaError),
}

/// A ground model with its numerosity unit and measure unit `beta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumerosityContext {
    model: GroundModel,
    unit: NaValue,
    beta: NaValue,
    order: usize,
}

/// Outcome of a strict-monotonicity self-test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityVerdict {
    pub proper: bool,
    pub smaller: NaValue,
    pub larger: NaValue,
    /// `Less` for proper subsets, `Equal` otherwise, when the law holds.
    pub order: Ordering,
    pub holds: bool,
}

impl NumerosityContext {
    /// Coin tosses with `n(Omega) = w` and `beta = w`.
    pub fn coin() -> Self {
        NumerosityContext {
            model: GroundModel::Coin,
            unit: NaValue::omega(),
            beta: NaValue::omega(),
            order: DEFAULT_ORDER,
        }
    }

    /// The real line with `n([0,1)) = beta = w`.
    pub fn interval() -> Self {
        NumerosityContext {
            model: GroundModel::Interval,
            unit: NaValue::omega(),
            beta: NaValue::omega(),
            order: DEFAULT_ORDER,
        }
    }

    /// A finite space; unit and default `beta` are the cardinality.
    pub fn finite(space: Arc<FiniteSpace>) -> Self {
        let unit = NaValue::from_integer(space.len() as i64);
        NumerosityContext {
            model: GroundModel::Finite(space),
            beta: unit.clone(),
            unit,
            order: DEFAULT_ORDER,
        }
    }

    pub fn for_model(model: &GroundModel) -> Self {
        match model {
            GroundModel::Coin => NumerosityContext::coin(),
            GroundModel::Interval => NumerosityContext::interval(),
            GroundModel::Finite(s) => NumerosityContext::finite(Arc::clone(s)),
        }
    }

    pub fn with_beta(mut self, beta: NaValue) -> Result<Self, NumerosityError> {
        check_beta(&beta)?;
        self.beta = beta;
        Ok(self)
    }

    /// Truncation order used by [`conditional`](Self::conditional).
    pub fn with_order(mut self, order: usize) -> Result<Self, NumerosityError> {
        if order == 0 {
            return Err(NaError::ZeroOrder.into());
        }
        self.order = order;
        Ok(self)
    }

    pub fn model(&self) -> &GroundModel {
        &self.model
    }

    /// `n(Omega)` for coin and finite models, `n([0,1))` for the line.
    pub fn unit(&self) -> &NaValue {
        &self.unit
    }

    pub fn beta(&self) -> &NaValue {
        &self.beta
    }

    pub fn order(&self) -> usize {
        self.order
    }

    fn check_model(&self, e: &Event) -> Result<(), NumerosityError> {
        if self.model.owns(e) {
            return Ok(());
        }
        if self.model.kind() == e.kind() {
            return Err(NumerosityError::ForeignSpace);
        }
        Err(NumerosityError::ModelMismatch {
            expected: self.model.kind(),
            found: e.kind(),
        })
    }

    pub fn numerosity(&self, e: &Event) -> Result<NaValue, NumerosityError> {
        self.check_model(e)?;
        let value = match e {
            Event::Coin(c) => coin_numerosity(c, &self.unit),
            Event::Interval(i) => {
                let points = i.plus().len() as i64 - i.minus().len() as i64;
                &self.unit.scale(&i.total_length()) + &NaValue::from_integer(points)
            }
            Event::Finite(f) => NaValue::from_integer(f.len() as i64),
        };
        Ok(value)
    }

    /// `P(E) = n(E) / n(Omega)`.
    pub fn probability(&self, e: &Event) -> Result<NaValue, NumerosityError> {
        if self.model.kind() != ModelKind::Coin {
            return Err(NumerosityError::NotCoinModel);
        }
        let n = self.numerosity(e)?;
        Ok(n.div(&self.unit, self.order)?.value)
    }

    /// `P(E | F) = n(E ∩ F) / n(F)`, exact whenever `n(F)` is a monomial (in
    /// particular whenever `F` is finite).
    pub fn conditional(&self, e: &Event, f: &Event) -> Result<Quotient, NumerosityError> {
        if self.model.kind() != ModelKind::Coin {
            return Err(NumerosityError::NotCoinModel);
        }
        self.check_model(e)?;
        self.check_model(f)?;
        if f.is_empty() {
            return Err(NumerosityError::EmptyCondition);
        }
        let joint = self.numerosity(&e.intersect(f)?)?;
        Ok(joint.div(&self.numerosity(f)?, self.order)?)
    }

    /// `st(n(E) / beta)`, computed exactly.
    pub fn nbeta(&self, e: &Event, beta: &NaValue) -> Result<ExtendedReal, NumerosityError> {
        check_beta(beta)?;
        let n = self.numerosity(e)?;
        Ok(n.standard_part_of_ratio(beta)?)
    }

    /// Confirms `n(smaller) < n(larger)` for a proper subset and equality
    /// otherwise. Errors when `smaller` is not a subset of `larger`.
    pub fn check_strict_monotonicity(
        &self,
        smaller: &Event,
        larger: &Event,
    ) -> Result<MonotonicityVerdict, NumerosityError> {
        if !smaller.is_subset(larger)? {
            return Err(NumerosityError::NotASubset);
        }
        let proper = smaller != larger;
        let a = self.numerosity(smaller)?;
        let b = self.numerosity(larger)?;
        let order = a.cmp(&b);
        let holds = if proper {
            order == Ordering::Less
        } else {
            order == Ordering::Equal
        };
        Ok(MonotonicityVerdict {
            proper,
            smaller: a,
            larger: b,
            order,
            holds,
        })
    }
}

fn check_beta(beta: &NaValue) -> Result<(), NumerosityError> {
    if !beta.is_positive() {
        return Err(NumerosityError::NonPositiveBeta(beta.to_string()));
    }
    Ok(())
}

fn coin_numerosity(e: &CoinEvent, unit: &NaValue) -> NaValue {
    let weight = Rational::new(
        BigInt::from(e.atom_count()),
        BigInt::one() << e.codimension(),
    );
    let points = e.plus().len() as i64 - e.minus().len() as i64;
    &unit.scale(&weight) + &NaValue::from_integer(points)
}
