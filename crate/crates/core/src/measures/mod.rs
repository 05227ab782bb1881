//! Real-valued measures on represented events: the Kolmogorov measure on coin
//! events, Lebesgue measure on interval events, finite measures on declared
//! subalgebras, and the outer and inner measures built on them.

mod finite;
mod oracle;
mod space_file;

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

pub use finite::FiniteMeasure;
pub use oracle::{finite_oracle, CheckOutcome, OracleCheck, OracleReport, DEFAULT_ORACLE_BOUND};
pub use space_file::parse_space_file;

use crate::events::{CoinEvent, Event, EventError, IntervalEvent, ModelKind};
use crate::nafield::{ExtendedReal, NaValue, Rational};
use crate::numerosity::{NumerosityContext, NumerosityError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeasureError {
    #[error("measure on the {expected} model cannot evaluate a {found} event")]
    ModelMismatch { expected: ModelKind, found: ModelKind },
    #[error("measure values must be non-negative, got {0}")]
    Negative(String),
    #[error("no set of positive finite measure; inner measure is undefined")]
    TrivialMeasure,
    #[error("finite space has {size} points, above the oracle bound {bound}")]
    SizeBoundExceeded { size: usize, bound: usize },
    #[error("generator cells do not partition the universe")]
    NotAPartition,
    #[error("set {0} is not a member of the declared algebra")]
    NotInAlgebra(String),
    #[error("measure assignments are inconsistent")]
    Inconsistent,
    #[error("measure assignments leave cells undetermined: {0}")]
    Underdetermined(String),
    #[error("line {line}: {message}")]
    SpaceFile { line: usize, message: String },
    #[error("measure values too large for the exhaustive oracle")]
    Overflow,
    #[error(transparent)]
    Event(#[from] EventError),
    #[error(transparent)]
    Numerosity(#[from] NumerosityError),
}

/// A non-negative rational or `+inf`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum MeasureValue {
    Finite(Rational),
    Infinite,
}

impl MeasureValue {
    pub fn zero() -> Self {
        MeasureValue::Finite(Rational::zero())
    }

    pub fn finite(r: Rational) -> Result<Self, MeasureError> {
        if r.is_negative() {
            return Err(MeasureError::Negative(r.to_string()));
        }
        Ok(MeasureValue::Finite(r))
    }

    pub fn as_finite(&self) -> Option<&Rational> {
        match self {
            MeasureValue::Finite(r) => Some(r),
            MeasureValue::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MeasureValue::Finite(r) if r.is_zero())
    }
}

impl TryFrom<ExtendedReal> for MeasureValue {
    type Error = MeasureError;

    fn try_from(x: ExtendedReal) -> Result<Self, Self::Error> {
        match x {
            ExtendedReal::Finite(r) => MeasureValue::finite(r),
            ExtendedReal::PosInfinity => Ok(MeasureValue::Infinite),
            ExtendedReal::NegInfinity => Err(MeasureError::Negative("-inf".into())),
        }
    }
}

/// `x + inf = inf + x = inf + inf = inf`.
impl Add for &MeasureValue {
    type Output = MeasureValue;

    fn add(self, rhs: &MeasureValue) -> MeasureValue {
        match (self, rhs) {
            (MeasureValue::Finite(a), MeasureValue::Finite(b)) => MeasureValue::Finite(a + b),
            _ => MeasureValue::Infinite,
        }
    }
}

impl Add for MeasureValue {
    type Output = MeasureValue;

    fn add(self, rhs: MeasureValue) -> MeasureValue {
        &self + &rhs
    }
}

impl PartialOrd for MeasureValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MeasureValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MeasureValue::Finite(a), MeasureValue::Finite(b)) => a.cmp(b),
            (MeasureValue::Finite(_), MeasureValue::Infinite) => Ordering::Less,
            (MeasureValue::Infinite, MeasureValue::Finite(_)) => Ordering::Greater,
            (MeasureValue::Infinite, MeasureValue::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for MeasureValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureValue::Finite(r) => write!(f, "{r}"),
            MeasureValue::Infinite => f.write_str("+inf"),
        }
    }
}

/// Kolmogorov measure: `|atoms| / 2^|I|`; finite adjustments are null.
pub fn kolmogorov_measure(e: &CoinEvent) -> MeasureValue {
    MeasureValue::Finite(Rational::new(
        BigInt::from(e.atom_count()),
        BigInt::one() << e.codimension(),
    ))
}

/// Lebesgue measure: total interval length; finite adjustments are null.
pub fn lebesgue_measure(e: &IntervalEvent) -> MeasureValue {
    MeasureValue::Finite(e.total_length())
}

/// A measure space whose algebra contains the represented events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeasureSpace {
    Kolmogorov,
    Lebesgue,
    Finite(FiniteMeasure),
}

impl MeasureSpace {
    pub fn kind(&self) -> ModelKind {
        match self {
            MeasureSpace::Kolmogorov => ModelKind::Coin,
            MeasureSpace::Lebesgue => ModelKind::Interval,
            MeasureSpace::Finite(_) => ModelKind::Finite,
        }
    }

    fn mismatch(&self, e: &Event) -> MeasureError {
        MeasureError::ModelMismatch {
            expected: self.kind(),
            found: e.kind(),
        }
    }

    /// `true` when `e` belongs to the algebra the measure is defined on.
    /// Every represented coin or interval event is measurable.
    pub fn is_measurable(&self, e: &Event) -> Result<bool, MeasureError> {
        match (self, e) {
            (MeasureSpace::Kolmogorov, Event::Coin(_))
            | (MeasureSpace::Lebesgue, Event::Interval(_)) => Ok(true),
            (MeasureSpace::Finite(m), Event::Finite(f)) => {
                m.check_space(f)?;
                Ok(m.is_member(f.mask()))
            }
            _ => Err(self.mismatch(e)),
        }
    }

    /// The measure of an algebra member; `None` for non-members.
    pub fn measure(&self, e: &Event) -> Result<Option<MeasureValue>, MeasureError> {
        match (self, e) {
            (MeasureSpace::Kolmogorov, Event::Coin(c)) => Ok(Some(kolmogorov_measure(c))),
            (MeasureSpace::Lebesgue, Event::Interval(i)) => Ok(Some(lebesgue_measure(i))),
            (MeasureSpace::Finite(m), Event::Finite(f)) => {
                m.check_space(f)?;
                Ok(m.measure_mask(f.mask()).map(MeasureValue::Finite))
            }
            _ => Err(self.mismatch(e)),
        }
    }

    /// Outer measure. Represented coin and interval events are measurable,
    /// so it equals their measure; finite spaces use cover search.
    pub fn outer_measure(&self, e: &Event) -> Result<MeasureValue, MeasureError> {
        match (self, e) {
            (MeasureSpace::Finite(m), Event::Finite(f)) => {
                m.check_space(f)?;
                Ok(MeasureValue::Finite(m.outer_by_cover_search(f.mask())))
            }
            _ => Ok(self
                .measure(e)?
                .expect("represented events are measurable")),
        }
    }

    /// The numerosity context whose `beta = n(Z) / mu(Z)` for a reference set
    /// `Z` of positive finite measure: `Omega` for coin tosses and finite
    /// spaces, `[0,1)` for the line.
    pub fn numerosity_context(&self) -> Result<NumerosityContext, MeasureError> {
        let ctx = match self {
            MeasureSpace::Kolmogorov => NumerosityContext::coin(),
            MeasureSpace::Lebesgue => NumerosityContext::interval(),
            MeasureSpace::Finite(m) => {
                let total = m.total();
                if total.is_zero() {
                    return Err(MeasureError::TrivialMeasure);
                }
                let base = NumerosityContext::finite(m.space().clone());
                let beta = base.unit().scale(&total.recip());
                base.with_beta(beta)?
            }
        };
        Ok(ctx)
    }

    /// Inner measure `n_beta(e)` with the context's `beta`.
    pub fn inner_measure(
        &self,
        ctx: &NumerosityContext,
        e: &Event,
    ) -> Result<MeasureValue, MeasureError> {
        if ctx.model().kind() != self.kind() {
            return Err(self.mismatch(e));
        }
        let st = ctx.nbeta(e, ctx.beta())?;
        MeasureValue::try_from(st)
    }
}

/// Outcome of a Caratheodory splitting check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingVerdict {
    pub holds: bool,
    /// Positions in the witness list where `M(Y) != M(Y ∩ X) + M(Y \ X)`.
    pub failures: Vec<usize>,
}

/// Checks `M(Y) = M(Y ∩ X) + M(Y \ X)` for every witness `Y`.
pub fn caratheodory_check<M>(
    measure: M,
    x: &Event,
    witnesses: &[Event],
) -> Result<SplittingVerdict, MeasureError>
where
    M: Fn(&Event) -> Result<MeasureValue, MeasureError>,
{
    let mut failures = Vec::new();
    for (k, y) in witnesses.iter().enumerate() {
        let whole = measure(y)?;
        let inside = measure(&y.intersect(x)?)?;
        let outside = measure(&y.difference(x)?)?;
        if whole != &inside + &outside {
            failures.push(k);
        }
    }
    Ok(SplittingVerdict {
        holds: failures.is_empty(),
        failures,
    })
}

/// The inner measure of `e` computed from its numerosity: `st(n(e)/beta)`.
pub fn inner_from_numerosity(n: &NaValue, beta: &NaValue) -> Result<MeasureValue, MeasureError> {
    let st = n
        .standard_part_of_ratio(beta)
        .map_err(NumerosityError::from)?;
    MeasureValue::try_from(st)
}
