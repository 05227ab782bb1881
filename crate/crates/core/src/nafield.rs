//! Exact arithmetic in the ordered field generated by the rationals and one
//! positive infinite unit `w`.
//!
//! A [`NaValue`] is a finite sum `c_1*w^e_1 + ... + c_k*w^e_k` with rational
//! coefficients and rational exponents. Every rational is a value with a
//! single exponent-0 term, `w` is larger than every rational, and `w^-1` is a
//! positive infinitesimal. The order is decided by the sign of the leading
//! (largest exponent) coefficient of a difference.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Exact arbitrary-precision rational used for coefficients and exponents.
pub type Rational = BigRational;

/// Default number of quotient terms produced by [`NaValue::div`].
pub const DEFAULT_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NaError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("truncation order must be at least 1")]
    ZeroOrder,
    #[error("cannot parse value {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// Element of the non-Archimedean field, kept in canonical form: the map goes
/// from exponent to coefficient and never stores a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct NaValue {
    terms: BTreeMap<Rational, Rational>,
}

/// Result of a (possibly truncated) division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub value: NaValue,
    /// `true` when `value * divisor == dividend` holds exactly.
    pub exact: bool,
}

/// Size class of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Magnitude {
    Zero,
    /// Nonzero and smaller in absolute value than every positive rational.
    Infinitesimal,
    /// Finite but not infinitesimal.
    Finite,
    Infinite,
}

impl fmt::Display for Magnitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Magnitude::Zero => "zero",
            Magnitude::Infinitesimal => "infinitesimal",
            Magnitude::Finite => "finite",
            Magnitude::Infinite => "infinite",
        })
    }
}

/// A rational, or one of the two infinities. Codomain of the standard part.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedReal {
    NegInfinity,
    Finite(Rational),
    PosInfinity,
}

impl ExtendedReal {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedReal::Finite(r) => Some(r),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    /// Sum with the convention `x + inf = inf`; `None` for `inf + -inf`.
    pub fn checked_add(&self, other: &ExtendedReal) -> Option<ExtendedReal> {
        use ExtendedReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
            (PosInfinity, NegInfinity) | (NegInfinity, PosInfinity) => None,
            (PosInfinity, _) | (_, PosInfinity) => Some(PosInfinity),
            (NegInfinity, _) | (_, NegInfinity) => Some(NegInfinity),
        }
    }
}

impl From<Rational> for ExtendedReal {
    fn from(r: Rational) -> Self {
        ExtendedReal::Finite(r)
    }
}

impl PartialOrd for ExtendedReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtendedReal {
    fn cmp(&self, other: &Self) -> Ordering {
        use ExtendedReal::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (NegInfinity, NegInfinity) | (PosInfinity, PosInfinity) => Ordering::Equal,
            (NegInfinity, _) | (_, PosInfinity) => Ordering::Less,
            (PosInfinity, _) | (_, NegInfinity) => Ordering::Greater,
        }
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::NegInfinity => f.write_str("-inf"),
            ExtendedReal::Finite(r) => write!(f, "{r}"),
            ExtendedReal::PosInfinity => f.write_str("+inf"),
        }
    }
}

/// `numer / denom` as a [`Rational`]. Panics when `denom` is zero.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl NaValue {
    pub fn zero() -> Self {
        NaValue::default()
    }

    pub fn one() -> Self {
        NaValue::from_rational(Rational::one())
    }

    /// The infinite unit `w`.
    pub fn omega() -> Self {
        NaValue::monomial(Rational::one(), Rational::one())
    }

    /// `w^exponent`.
    pub fn omega_pow(exponent: Rational) -> Self {
        NaValue::monomial(Rational::one(), exponent)
    }

    /// `coefficient * w^exponent`.
    pub fn monomial(coefficient: Rational, exponent: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coefficient.is_zero() {
            terms.insert(exponent, coefficient);
        }
        NaValue { terms }
    }

    pub fn from_rational(r: Rational) -> Self {
        NaValue::monomial(r, Rational::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        NaValue::from_rational(int(n))
    }

    /// Builds a value from `(exponent, coefficient)` pairs, collecting like
    /// exponents.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut value = NaValue::zero();
        for (exponent, coefficient) in terms {
            value.add_term(exponent, coefficient);
        }
        value
    }

    fn add_term(&mut self, exponent: Rational, coefficient: Rational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.get_mut(&exponent) {
            Some(c) => {
                *c += coefficient;
                if c.is_zero() {
                    self.terms.remove(&exponent);
                }
            }
            None => {
                self.terms.insert(exponent, coefficient);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(exponent, coefficient)` in strictly descending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.terms.iter().rev()
    }

    /// The term with the largest exponent.
    pub fn leading(&self) -> Option<(&Rational, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn leading_exponent(&self) -> Option<&Rational> {
        self.leading().map(|(e, _)| e)
    }

    /// Coefficient at `exponent` (zero when absent).
    pub fn coefficient(&self, exponent: &Rational) -> Rational {
        self.terms.get(exponent).cloned().unwrap_or_else(Rational::zero)
    }

    /// `Some(r)` when the value is the rational `r`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.leading().unwrap();
                e.is_zero().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn signum(&self) -> Ordering {
        match self.leading() {
            None => Ordering::Equal,
            Some((_, c)) if c.is_positive() => Ordering::Greater,
            Some(_) => Ordering::Less,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn abs(&self) -> NaValue {
        if self.signum() == Ordering::Less {
            -self
        } else {
            self.clone()
        }
    }

    pub fn scale(&self, factor: &Rational) -> NaValue {
        if factor.is_zero() {
            return NaValue::zero();
        }
        NaValue {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), c * factor))
                .collect(),
        }
    }

    /// Multiplies by `coefficient * w^exponent`.
    fn shift(&self, coefficient: &Rational, exponent: &Rational) -> NaValue {
        if coefficient.is_zero() {
            return NaValue::zero();
        }
        NaValue {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + exponent, c * coefficient))
                .collect(),
        }
    }

    pub fn classify(&self) -> Magnitude {
        match self.leading_exponent() {
            None => Magnitude::Zero,
            Some(e) if e.is_positive() => Magnitude::Infinite,
            Some(e) if e.is_negative() => Magnitude::Infinitesimal,
            Some(_) => Magnitude::Finite,
        }
    }

    /// `true` when the difference is zero or infinitesimal.
    pub fn is_infinitely_close(&self, other: &NaValue) -> bool {
        matches!(
            (self - other).classify(),
            Magnitude::Zero | Magnitude::Infinitesimal
        )
    }

    /// The rational infinitely close to a finite value; `+inf` or `-inf` by
    /// sign for infinite values.
    pub fn standard_part(&self) -> ExtendedReal {
        match self.leading() {
            Some((e, c)) if e.is_positive() => {
                if c.is_positive() {
                    ExtendedReal::PosInfinity
                } else {
                    ExtendedReal::NegInfinity
                }
            }
            _ => ExtendedReal::Finite(self.coefficient(&Rational::zero())),
        }
    }

    /// Divides by `divisor`.
    ///
    /// A monomial divisor gives the exact quotient. Otherwise the quotient is
    /// expanded by descending long division: each step cancels the leading
    /// term of the remainder with one monomial multiple of the divisor, which
    /// is the same expansion as factoring out the divisor's leading monomial
    /// and inverting `1 + d` (`d` infinitesimal) as a geometric series. At
    /// most `order` quotient terms are produced; the result is flagged exact
    /// when the remainder vanishes within that budget.
    pub fn div(&self, divisor: &NaValue, order: usize) -> Result<Quotient, NaError> {
        if order == 0 {
            return Err(NaError::ZeroOrder);
        }
        let (lead_exp, lead_coeff) = divisor.leading().ok_or(NaError::DivisionByZero)?;
        if divisor.is_monomial() {
            return Ok(Quotient {
                value: self.shift(&lead_coeff.recip(), &-lead_exp),
                exact: true,
            });
        }
        let (value, remainder) = self.long_division(divisor, |_, produced| produced < order);
        Ok(Quotient {
            value,
            exact: remainder.is_zero(),
        })
    }

    /// Division remainder `self - divisor * div(self, divisor, order)`.
    pub fn div_residual(&self, divisor: &NaValue, order: usize) -> Result<NaValue, NaError> {
        let q = self.div(divisor, order)?;
        Ok(self - &(&q.value * divisor))
    }

    /// `1 / self` truncated to `order` terms.
    pub fn recip(&self, order: usize) -> Result<Quotient, NaError> {
        NaValue::one().div(self, order)
    }

    /// Long division driven by `keep_going(next_exponent, terms_so_far)`.
    /// Returns the quotient and the remainder. Requires a nonzero divisor.
    fn long_division<F>(&self, divisor: &NaValue, mut keep_going: F) -> (NaValue, NaValue)
    where
        F: FnMut(&Rational, usize) -> bool,
    {
        let (lead_exp, lead_coeff) = divisor.leading().expect("nonzero divisor");
        let mut quotient = NaValue::zero();
        let mut remainder = self.clone();
        let mut produced = 0usize;
        while let Some((re, rc)) = remainder.leading() {
            let exponent = re - lead_exp;
            if !keep_going(&exponent, produced) {
                break;
            }
            let coefficient = rc / lead_coeff;
            remainder = &remainder - &divisor.shift(&coefficient, &exponent);
            quotient.add_term(exponent, coefficient);
            produced += 1;
        }
        (quotient, remainder)
    }

    /// Standard part of `self / divisor`, computed exactly: the expansion is
    /// carried down to the exponent-0 term whatever the divisor's shape.
    pub fn standard_part_of_ratio(&self, divisor: &NaValue) -> Result<ExtendedReal, NaError> {
        let (lead_exp, lead_coeff) = divisor.leading().ok_or(NaError::DivisionByZero)?;
        match self.leading() {
            None => return Ok(ExtendedReal::Finite(Rational::zero())),
            Some((e, c)) if (e - lead_exp).is_positive() => {
                return Ok(if (c / lead_coeff).is_positive() {
                    ExtendedReal::PosInfinity
                } else {
                    ExtendedReal::NegInfinity
                });
            }
            Some(_) => {}
        }
        // Remainder exponents live on a discrete lattice, so this terminates.
        let (quotient, _) = self.long_division(divisor, |e, _| !e.is_negative());
        Ok(ExtendedReal::Finite(quotient.coefficient(&Rational::zero())))
    }
}

impl PartialOrd for NaValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for NaValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl From<Rational> for NaValue {
    fn from(r: Rational) -> Self {
        NaValue::from_rational(r)
    }
}

impl From<i64> for NaValue {
    fn from(n: i64) -> Self {
        NaValue::from_integer(n)
    }
}

impl<'a> Add<&'a NaValue> for &'a NaValue {
    type Output = NaValue;

    fn add(self, rhs: &'a NaValue) -> NaValue {
        let (mut acc, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (e, c) in &other.terms {
            acc.add_term(e.clone(), c.clone());
        }
        acc
    }
}

impl<'a> Sub<&'a NaValue> for &'a NaValue {
    type Output = NaValue;

    fn sub(self, rhs: &'a NaValue) -> NaValue {
        let mut acc = self.clone();
        for (e, c) in &rhs.terms {
            acc.add_term(e.clone(), -c);
        }
        acc
    }
}

impl<'a> Mul<&'a NaValue> for &'a NaValue {
    type Output = NaValue;

    fn mul(self, rhs: &'a NaValue) -> NaValue {
        let mut acc = NaValue::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                acc.add_term(e1 + e2, c1 * c2);
            }
        }
        acc
    }
}

impl Neg for &NaValue {
    type Output = NaValue;

    fn neg(self) -> NaValue {
        NaValue {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for NaValue {
    type Output = NaValue;

    fn neg(self) -> NaValue {
        -&self
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<NaValue> for NaValue {
            type Output = NaValue;
            fn $method(self, rhs: NaValue) -> NaValue {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a NaValue> for NaValue {
            type Output = NaValue;
            fn $method(self, rhs: &'a NaValue) -> NaValue {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<NaValue> for &'a NaValue {
            type Output = NaValue;
            fn $method(self, rhs: NaValue) -> NaValue {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&NaValue> for NaValue {
    fn add_assign(&mut self, rhs: &NaValue) {
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl std::iter::Sum for NaValue {
    fn sum<I: Iterator<Item = NaValue>>(iter: I) -> Self {
        iter.fold(NaValue::zero(), |mut acc, v| {
            acc += &v;
            acc
        })
    }
}

/// Renders `"1/2*w + -3 + 2*w^-1"`: terms by descending exponent, joined by
/// `" + "`, zero as `"0"`.
impl fmt::Display for NaValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if c.is_one() {
                f.write_str("w")?;
            } else if (-c).is_one() {
                f.write_str("-w")?;
            } else {
                write!(f, "{c}*w")?;
            }
            if !e.is_one() {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (numer, denom) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = numer.parse().ok()?;
    match denom {
        None => Some(Rational::from_integer(numer)),
        Some(d) => {
            let d: BigInt = d.parse().ok()?;
            if !d.is_positive() {
                return None;
            }
            Some(Rational::new(numer, d))
        }
    }
}

/// Parses the rendering produced by `Display`. Terms may come in any order
/// and repeat; the result is canonical.
impl FromStr for NaValue {
    type Err = NaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| NaError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        if trimmed.is_empty() {
            return Err(err("empty input"));
        }
        let mut value = NaValue::zero();
        for term in trimmed.split(" + ") {
            let term = term.trim();
            let expanded;
            let term = if term.starts_with('w') {
                expanded = format!("1*{term}");
                expanded.as_str()
            } else if let Some(rest) = term.strip_prefix("-w") {
                expanded = format!("-1*w{rest}");
                expanded.as_str()
            } else {
                term
            };
            let (coefficient, exponent) = match term.split_once("*w") {
                None => (term, Rational::zero()),
                Some((c, "")) => (c, Rational::one()),
                Some((c, rest)) => {
                    let e = rest
                        .strip_prefix('^')
                        .and_then(parse_rational)
                        .ok_or_else(|| err("bad exponent"))?;
                    (c, e)
                }
            };
            let coefficient = parse_rational(coefficient).ok_or_else(|| err("bad coefficient"))?;
            value.add_term(exponent, coefficient);
        }
        Ok(value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> NaValue {
        s.parse().unwrap()
    }

    fn w() -> NaValue {
        NaValue::omega()
    }

    #[test]
    fn addition_examples() {
        assert_eq!(v("1*w + 1") + v("-1"), w());
        let half_inv = NaValue::monomial(rat(1, 2), int(-1));
        assert_eq!(&half_inv + &half_inv, v("1*w^-1"));
        assert_eq!(v("2*w^2 + 3") + v("-2*w^2 + 1/3"), v("10/3"));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(v("1*w + 1") * v("1*w + -1"), v("1*w^2 + -1"));
        let root = NaValue::omega_pow(rat(1, 2));
        assert_eq!(&root * &root, w());
        assert_eq!(v("2 + 1*w^-1") * v("3"), v("6 + 3*w^-1"));
    }

    #[test]
    fn division_examples() {
        let q = v("1/2*w").div(&w(), 16).unwrap();
        assert_eq!(q.value, v("1/2"));
        assert!(q.exact);

        let q = v("1*w + -1").div(&w(), 16).unwrap();
        assert_eq!(q.value, v("1 + -1*w^-1"));
        assert!(q.exact);

        let q = NaValue::one().div(&v("1 + -1*w^-1"), 3).unwrap();
        assert_eq!(q.value, v("1 + 1*w^-1 + 1*w^-2"));
        assert!(!q.exact);
        // (1 - w^-1)(1 + w^-1 + w^-2) = 1 - w^-3
        assert_eq!(&q.value * &v("1 + -1*w^-1"), v("1 + -1*w^-3"));
    }

    #[test]
    fn division_terminates_on_exact_polynomial_quotient() {
        let q = v("1*w^2 + -1").div(&v("1*w + -1"), 16).unwrap();
        assert_eq!(q.value, v("1*w + 1"));
        assert!(q.exact);
    }

    #[test]
    fn division_errors() {
        assert_eq!(NaValue::one().div(&NaValue::zero(), 4), Err(NaError::DivisionByZero));
        assert_eq!(NaValue::one().div(&w(), 0), Err(NaError::ZeroOrder));
    }

    #[test]
    fn ordering_examples() {
        assert_eq!(v("1*w^-1").cmp(&NaValue::zero()), Ordering::Greater);
        assert_eq!(w().cmp(&NaValue::from_integer(1_000_000_000)), Ordering::Greater);
        assert_eq!(v("1/2*w").cmp(&v("1/3*w")), Ordering::Greater);
        assert_eq!(v("1*w + -1").cmp(&w()), Ordering::Less);
    }

    #[test]
    fn standard_part_examples() {
        assert_eq!(v("3 + 5*w^-1").standard_part(), ExtendedReal::Finite(int(3)));
        assert_eq!(w().standard_part(), ExtendedReal::PosInfinity);
        assert_eq!(
            v("-2*w^1/2 + 100").standard_part(),
            ExtendedReal::NegInfinity
        );
        assert_eq!(v("1*w^-2").standard_part(), ExtendedReal::Finite(int(0)));
    }

    #[test]
    fn classify_examples() {
        assert_eq!(v("1*w^-1").classify(), Magnitude::Infinitesimal);
        assert_eq!(v("7/3").classify(), Magnitude::Finite);
        let inv = NaValue::one().div(&v("1*w^-1"), 16).unwrap();
        assert_eq!(inv.value.classify(), Magnitude::Infinite);
        assert_eq!(NaValue::zero().classify(), Magnitude::Zero);
    }

    #[test]
    fn rendering() {
        let x = NaValue::from_terms([
            (int(1), rat(1, 2)),
            (int(0), int(-3)),
            (int(-1), int(2)),
        ]);
        assert_eq!(x.to_string(), "1/2*w + -3 + 2*w^-1");
        assert_eq!(NaValue::zero().to_string(), "0");
        assert_eq!(NaValue::omega_pow(rat(-3, 2)).to_string(), "w^-3/2");
        assert_eq!(v("-1*w^2 + 1*w").to_string(), "-w^2 + w");
        assert_eq!(v("-w^2 + w + -1"), v("-1*w^2 + 1*w + -1"));
        assert_eq!(x.to_string().parse::<NaValue>().unwrap(), x);
    }

    #[test]
    fn standard_part_of_ratio_with_binomial_divisor() {
        // (w - 1) / (w/2 - 1) = 2 + 2 w^-1 + ...
        let st = v("1*w + -1").standard_part_of_ratio(&v("1/2*w + -1")).unwrap();
        assert_eq!(st, ExtendedReal::Finite(int(2)));
        let st = v("3").standard_part_of_ratio(&v("1*w + 1")).unwrap();
        assert_eq!(st, ExtendedReal::Finite(int(0)));
        let st = v("-1*w^2").standard_part_of_ratio(&v("1*w + 5")).unwrap();
        assert_eq!(st, ExtendedReal::NegInfinity);
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!("".parse::<NaValue>().is_err());
        assert!("1*w^".parse::<NaValue>().is_err());
        assert!("x".parse::<NaValue>().is_err());
        assert!("1/0".parse::<NaValue>().is_err());
    }
}
