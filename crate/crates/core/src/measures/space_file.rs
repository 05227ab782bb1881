//! Text format describing a finite measure space:
//!
//! ```text
//! # four points, algebra generated by {a, b}
//! universe: a b c d
//! gen: a b
//! mu: a b = 1/2
//! mu: c d = 1/2
//! ```
//!
//! `universe:` comes first and exactly once. Each `gen:` line adds a
//! generator of the algebra; each `mu:` line assigns a value to an algebra
//! member. `#` starts a comment.

use super::{FiniteMeasure, MeasureError};
use crate::events::FiniteSpace;
use crate::nafield::{parse_rational, Rational};

pub fn parse_space_file(src: &str) -> Result<FiniteMeasure, MeasureError> {
    let mut space = None;
    let mut generators = Vec::new();
    let mut assignments: Vec<(u64, Rational)> = Vec::new();
    for (k, raw) in src.lines().enumerate() {
        let line_no = k + 1;
        let fail = |message: String| MeasureError::SpaceFile {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| fail("expected `key: value`".into()))?;
        match key.trim() {
            "universe" => {
                if space.is_some() {
                    return Err(fail("universe declared twice".into()));
                }
                let labels: Vec<&str> = rest.split_whitespace().collect();
                space = Some(FiniteSpace::new(labels).map_err(|e| fail(e.to_string()))?);
            }
            "gen" => {
                let s = space
                    .as_ref()
                    .ok_or_else(|| fail("gen before universe".into()))?;
                let mask = s
                    .mask_of(rest.split_whitespace())
                    .map_err(|e| fail(e.to_string()))?;
                generators.push(mask);
            }
            "mu" => {
                let s = space
                    .as_ref()
                    .ok_or_else(|| fail("mu before universe".into()))?;
                let (labels, value) = rest
                    .split_once('=')
                    .ok_or_else(|| fail("expected `mu: labels = value`".into()))?;
                let mask = s
                    .mask_of(labels.split_whitespace())
                    .map_err(|e| fail(e.to_string()))?;
                let value = parse_rational(value)
                    .ok_or_else(|| fail(format!("bad rational {:?}", value.trim())))?;
                assignments.push((mask, value));
            }
            other => return Err(fail(format!("unknown key {other:?}"))),
        }
    }
    let space = space.ok_or(MeasureError::SpaceFile {
        line: 0,
        message: "missing universe line".into(),
    })?;
    FiniteMeasure::from_generators(space, &generators, assignments)
}
