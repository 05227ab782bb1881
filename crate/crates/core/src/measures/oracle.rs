//! Exhaustive validation of a finite measure space.
//!
//! Every subset of the universe is enumerated. Values are rescaled to a
//! common integer denominator so the quadratic loops stay in machine
//! integers; the rescaling is exact.

use std::fmt;

use num::{BigInt, Integer, One, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::finite::label_set;
use super::{FiniteMeasure, MeasureError};

pub const DEFAULT_ORACLE_BOUND: usize = 12;

/// Hard ceiling on the universe size regardless of the requested bound.
const HARD_LIMIT: usize = 16;

const FAMILY_SAMPLES: usize = 2000;
const MAX_FAMILY: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCheck {
    pub name: &'static str,
    pub outcome: CheckOutcome,
}

impl fmt::Display for OracleCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.outcome {
            CheckOutcome::Pass => write!(f, "{}: pass", self.name),
            CheckOutcome::Fail(why) => write!(f, "{}: fail: {why}", self.name),
            CheckOutcome::Skipped(why) => write!(f, "{}: skipped: {why}", self.name),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub universe: usize,
    pub cells: usize,
    pub algebra_size: usize,
    /// Members of the Caratheodory family of the outer measure, sorted.
    pub caratheodory: Vec<u64>,
    /// Number of subsets where inner and outer measure agree, when the
    /// inner measure is defined.
    pub agreement_size: Option<usize>,
    /// Number of subsets with inner measure strictly below outer measure.
    pub strict_gaps: Option<usize>,
    pub checks: Vec<OracleCheck>,
}

impl OracleReport {
    /// `true` when no check failed.
    pub fn passed(&self) -> bool {
        !self
            .checks
            .iter()
            .any(|c| matches!(c.outcome, CheckOutcome::Fail(_)))
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.outcome)
    }

    pub fn caratheodory_is_power_set(&self) -> bool {
        self.caratheodory.len() == 1 << self.universe
    }
}

/// Scaled integer tables for one measure.
struct Tables {
    n: usize,
    /// Member measure by cell-subset index.
    member_value: Vec<i128>,
    member_mask: Vec<u64>,
    /// Outer measure by definition (least covering member).
    outer: Vec<i128>,
    /// Outer measure as the sum over cells meeting the set.
    outer_structural: Vec<i128>,
    /// `|X| * total / n` times the scale, when the measure is nontrivial.
    inner: Option<Vec<i128>>,
    scale: BigInt,
}

fn to_i128(x: &BigInt) -> Result<i128, MeasureError> {
    // leave headroom for sums of a few table entries
    x.to_i128()
        .filter(|v| v.abs() < i128::MAX >> 8)
        .ok_or(MeasureError::Overflow)
}

impl Tables {
    fn build(m: &FiniteMeasure) -> Result<Self, MeasureError> {
        let n = m.space().len();
        let lcm = m
            .weights()
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let scale = &lcm * BigInt::from(n);
        let cell_weight = m
            .weights()
            .iter()
            .map(|w| to_i128(&(w.numer() * (&scale / w.denom()))))
            .collect::<Result<Vec<_>, _>>()?;
        let cells = m.cells().len();
        let member_mask: Vec<u64> = (0..1u64 << cells).map(|k| m.member(k)).collect();
        let member_value: Vec<i128> = (0..1u64 << cells)
            .map(|k| {
                (0..cells)
                    .filter(|i| k >> i & 1 == 1)
                    .map(|i| cell_weight[i])
                    .sum()
            })
            .collect();
        let subsets = 1usize << n;
        let outer: Vec<i128> = (0..subsets as u64)
            .into_par_iter()
            .map(|x| {
                member_mask
                    .iter()
                    .zip(&member_value)
                    .filter(|(mm, _)| *mm & x == x)
                    .map(|(_, v)| *v)
                    .min()
                    .expect("the whole space is a member")
            })
            .collect();
        let outer_structural: Vec<i128> = (0..subsets as u64)
            .map(|x| {
                m.cells()
                    .iter()
                    .zip(&cell_weight)
                    .filter(|(c, _)| *c & x != 0)
                    .map(|(_, w)| *w)
                    .sum()
            })
            .collect();
        let total: i128 = cell_weight.iter().sum();
        let inner = (total > 0).then(|| {
            // total * |X| / n is integral: the scale carries a factor n
            (0..subsets as u64)
                .map(|x| total / n as i128 * x.count_ones() as i128)
                .collect()
        });
        Ok(Tables {
            n,
            member_value,
            member_mask,
            outer,
            outer_structural,
            inner,
            scale,
        })
    }
}

/// Runs the exhaustive checks on `measure`. Fails with
/// [`MeasureError::SizeBoundExceeded`] when the universe is larger than
/// `bound` (or than the hard limit of 16).
pub fn finite_oracle(measure: &FiniteMeasure, bound: usize) -> Result<OracleReport, MeasureError> {
    let n = measure.space().len();
    let limit = bound.min(HARD_LIMIT);
    if n > limit {
        return Err(MeasureError::SizeBoundExceeded { size: n, bound: limit });
    }
    let t = Tables::build(measure)?;
    let space = measure.space();
    let show = |mask: u64| label_set(space, mask);
    let subsets = 1u64 << n;
    let cells = measure.cells().len();
    let members = 1u64 << cells;
    let mut checks = Vec::new();
    let mut push = |name: &'static str, outcome: CheckOutcome| checks.push(OracleCheck { name, outcome });

    // declared values are honored
    let scale = &t.scale;
    let bad_assignment = measure.assignments().iter().find(|(set, value)| {
        let expected = value.numer() * (scale / value.denom());
        let k = cell_index(&t.member_mask, *set);
        k.is_none_or(|k| BigInt::from(t.member_value[k]) != expected)
    });
    push(
        "assignments",
        match bad_assignment {
            None => CheckOutcome::Pass,
            Some((set, v)) => CheckOutcome::Fail(format!("mu({}) != {v}", show(*set))),
        },
    );

    // additivity on disjoint members
    let additivity = (0..members).find_map(|a| {
        (0..members)
            .filter(|b| a & b == 0)
            .find(|&b| t.member_value[(a | b) as usize] != t.member_value[a as usize] + t.member_value[b as usize])
            .map(|b| (a, b))
    });
    push(
        "additivity",
        match additivity {
            None => CheckOutcome::Pass,
            Some((a, b)) => CheckOutcome::Fail(format!(
                "mu({}) + mu({}) differs from the union",
                show(t.member_mask[a as usize]),
                show(t.member_mask[b as usize])
            )),
        },
    );

    // monotonicity on members: submask enumeration over cell indices
    let monotone = (0..members).find_map(|b| {
        submasks(b).find(|&a| t.member_value[a as usize] > t.member_value[b as usize]).map(|a| (a, b))
    });
    push(
        "monotonicity",
        match monotone {
            None => CheckOutcome::Pass,
            Some((a, b)) => CheckOutcome::Fail(format!(
                "mu({}) > mu({})",
                show(t.member_mask[a as usize]),
                show(t.member_mask[b as usize])
            )),
        },
    );

    // the outer measure extends mu
    let extends = (0..members as usize).find(|&k| t.outer[t.member_mask[k] as usize] != t.member_value[k]);
    push(
        "outer-extends-mu",
        match extends {
            None => CheckOutcome::Pass,
            Some(k) => CheckOutcome::Fail(format!("outer({}) differs from mu", show(t.member_mask[k]))),
        },
    );

    // cover search agrees with the cell-sum formula
    let agree = (0..subsets as usize).find(|&x| t.outer[x] != t.outer_structural[x]);
    push(
        "outer-cover-agreement",
        match agree {
            None => CheckOutcome::Pass,
            Some(x) => CheckOutcome::Fail(format!("routes disagree on {}", show(x as u64))),
        },
    );

    // monotone outer measure: all pairs Y ⊆ X
    let outer_mono = (0..subsets)
        .into_par_iter()
        .find_first(|&x| submasks(x).any(|y| t.outer[y as usize] > t.outer[x as usize]));
    push(
        "outer-monotone",
        match outer_mono {
            None => CheckOutcome::Pass,
            Some(x) => CheckOutcome::Fail(format!("a subset of {} has larger outer measure", show(x))),
        },
    );

    // subadditivity on all pairs
    let subadd = (0..subsets).into_par_iter().find_first(|&x| {
        (0..subsets).any(|y| t.outer[(x | y) as usize] > t.outer[x as usize] + t.outer[y as usize])
    });
    push(
        "outer-subadditive",
        match subadd {
            None => CheckOutcome::Pass,
            Some(x) => CheckOutcome::Fail(format!("pair with {} violates subadditivity", show(x))),
        },
    );

    // countable subadditivity, reflected on families of up to ten members
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64 ^ (cells as u64) << 8);
    let mut family_failure = None;
    for _ in 0..FAMILY_SAMPLES {
        let size = rng.gen_range(1..=MAX_FAMILY);
        let family: Vec<u64> = (0..size).map(|_| rng.gen_range(0..subsets)).collect();
        let union = family.iter().fold(0, |u, f| u | f);
        let sum: i128 = family.iter().map(|&f| t.outer[f as usize]).sum();
        if t.outer[union as usize] > sum {
            family_failure = Some(union);
            break;
        }
    }
    push(
        "outer-family-subadditive",
        match family_failure {
            None => CheckOutcome::Pass,
            Some(u) => CheckOutcome::Fail(format!("family with union {} violates subadditivity", show(u))),
        },
    );

    // Caratheodory family by definition
    let caratheodory: Vec<u64> = (0..subsets)
        .into_par_iter()
        .filter(|&x| {
            (0..subsets).all(|y| t.outer[y as usize] == t.outer[(y & x) as usize] + t.outer[(y & !x) as usize])
        })
        .collect();
    let mut in_family = vec![false; subsets as usize];
    for &x in &caratheodory {
        in_family[x as usize] = true;
    }
    let missing_member = t.member_mask.iter().find(|&&m| !in_family[m as usize]);
    push(
        "caratheodory-contains-algebra",
        match missing_member {
            None => CheckOutcome::Pass,
            Some(&m) => CheckOutcome::Fail(format!("member {} fails splitting", show(m))),
        },
    );
    let full = space.full_mask();
    let not_closed = caratheodory.par_iter().find_first(|&&a| {
        !in_family[(full & !a) as usize] || caratheodory.iter().any(|&b| !in_family[(a | b) as usize])
    });
    push(
        "caratheodory-closed",
        match not_closed {
            None => CheckOutcome::Pass,
            Some(&a) => CheckOutcome::Fail(format!("closure fails starting from {}", show(a))),
        },
    );

    // inner measure n_beta
    let mut agreement_size = None;
    let mut strict_gaps = None;
    match &t.inner {
        None => {
            let why = "no set of positive finite measure";
            for name in INNER_CHECKS {
                push(name, CheckOutcome::Skipped(why.into()));
            }
        }
        Some(inner) => {
            let singles: Vec<i128> = (0..t.n).map(|i| inner[1 << i]).collect();
            let additive = (0..subsets as usize).find(|&x| {
                let sum: i128 = (0..t.n).filter(|i| x >> i & 1 == 1).map(|i| singles[i]).sum();
                sum != inner[x]
            });
            push(
                "inner-finitely-additive",
                match additive {
                    None => CheckOutcome::Pass,
                    Some(x) => CheckOutcome::Fail(format!("inner({}) is not the sum over its points", show(x as u64))),
                },
            );
            agreement_size = Some((0..subsets as usize).filter(|&x| inner[x] == t.outer[x]).count());
            strict_gaps = Some((0..subsets as usize).filter(|&x| inner[x] < t.outer[x]).count());
            if measure.is_count_proportional() {
                let above = (0..subsets as usize).find(|&x| inner[x] > t.outer[x]);
                push(
                    "inner-le-outer",
                    match above {
                        None => CheckOutcome::Pass,
                        Some(x) => CheckOutcome::Fail(format!("inner exceeds outer on {}", show(x as u64))),
                    },
                );
                let off = caratheodory.iter().find(|&&x| inner[x as usize] != t.outer[x as usize]);
                push(
                    "inner-eq-outer-on-caratheodory",
                    match off {
                        None => CheckOutcome::Pass,
                        Some(&x) => CheckOutcome::Fail(format!("inner differs from outer on {}", show(x))),
                    },
                );
                let null = (0..subsets as usize).find(|&x| (inner[x] == 0) != (t.outer[x] == 0));
                push(
                    "null-sets-agree",
                    match null {
                        None => CheckOutcome::Pass,
                        Some(x) => CheckOutcome::Fail(format!("inner and outer disagree on nullness of {}", show(x as u64))),
                    },
                );
            } else {
                let why = "cell weights are not proportional to cell sizes";
                for name in &INNER_CHECKS[1..] {
                    push(name, CheckOutcome::Skipped(why.into()));
                }
            }
        }
    }
    Ok(OracleReport {
        universe: n,
        cells,
        algebra_size: members as usize,
        caratheodory,
        agreement_size,
        strict_gaps,
        checks,
    })
}

const INNER_CHECKS: [&str; 4] = [
    "inner-finitely-additive",
    "inner-le-outer",
    "inner-eq-outer-on-caratheodory",
    "null-sets-agree",
];

fn cell_index(member_mask: &[u64], set: u64) -> Option<usize> {
    member_mask.iter().position(|&m| m == set)
}

/// All submasks of `mask`, including `mask` and zero.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(mask);
    std::iter::from_fn(move || {
        let current = next?;
        next = (current != 0).then(|| (current - 1) & mask);
        Some(current)
    })
}
