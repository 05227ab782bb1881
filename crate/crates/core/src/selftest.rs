//! Seeded property suites over randomly generated values and events.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dsl::{parse_and_elaborate, render};
use crate::events::{Event, GroundModel, Toss};
use crate::measures::{kolmogorov_measure, MeasureSpace, MeasureValue};
use crate::nafield::{ExtendedReal, NaValue, Rational};
use crate::numerosity::NumerosityContext;
use crate::sampling::{self, CoinShape};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.first_failure {
            None => write!(f, "{}: pass ({} cases)", self.name, self.cases),
            Some(why) => write!(
                f,
                "{}: fail ({} of {} cases): {why}",
                self.name, self.failures, self.cases
            ),
        }
    }
}

struct Tally {
    name: &'static str,
    cases: usize,
    failures: usize,
    first_failure: Option<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failures: 0,
            first_failure: None,
        }
    }

    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(describe());
            }
        }
    }

    fn finish(self) -> SuiteResult {
        SuiteResult {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            first_failure: self.first_failure,
        }
    }
}

fn field_axioms(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut t = Tally::new("field-axioms");
    for _ in 0..cases {
        let (a, b, c) = (sampling::na_value(rng), sampling::na_value(rng), sampling::na_value(rng));
        let laws = [
            &a + &b == &b + &a,
            &a * &b == &b * &a,
            &(&a + &b) + &c == &a + &(&b + &c),
            &(&a * &b) * &c == &a * &(&b * &c),
            &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            &a + &(-&a) == NaValue::zero(),
            a.cmp(&b) == (&a + &c).cmp(&(&b + &c)),
            !c.is_positive() || a.cmp(&b) == (&a * &c).cmp(&(&b * &c)),
        ];
        t.check(laws.iter().all(|&x| x), || format!("a = {a}, b = {b}, c = {c}"));
    }
    t.finish()
}

fn standard_part(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut t = Tally::new("standard-part-homomorphism");
    for _ in 0..cases {
        let (a, b) = (sampling::finite_na_value(rng), sampling::finite_na_value(rng));
        let (sa, sb) = (a.standard_part(), b.standard_part());
        let (fa, fb) = (sa.finite().cloned().unwrap(), sb.finite().cloned().unwrap());
        let ok = (&a + &b).standard_part() == ExtendedReal::Finite(&fa + &fb)
            && (&a * &b).standard_part() == ExtendedReal::Finite(&fa * &fb);
        t.check(ok, || format!("a = {a}, b = {b}"));
    }
    t.finish()
}

fn random_event(rng: &mut ChaCha8Rng, model: &GroundModel) -> Event {
    match model {
        GroundModel::Coin => Event::Coin(sampling::coin_event(rng, CoinShape::default())),
        GroundModel::Interval => Event::Interval(sampling::interval_event(rng)),
        GroundModel::Finite(space) => Event::Finite(sampling::finite_event(rng, space)),
    }
}

fn additivity(rng: &mut ChaCha8Rng, model: &GroundModel, cases: usize) -> SuiteResult {
    let name = match model {
        GroundModel::Coin => "additivity-coin",
        GroundModel::Interval => "additivity-interval",
        GroundModel::Finite(_) => "additivity-finite",
    };
    let mut t = Tally::new(name);
    let ctx = NumerosityContext::for_model(model);
    for _ in 0..cases {
        let a = random_event(rng, model);
        let b = random_event(rng, model).difference(&a).expect("same model");
        let u = a.union(&b).expect("same model");
        let lhs = ctx.numerosity(&u).expect("same model");
        let rhs = ctx.numerosity(&a).expect("same model") + ctx.numerosity(&b).expect("same model");
        t.check(lhs == rhs, || format!("A = {}, B = {}", render(&a), render(&b)));
    }
    t.finish()
}

fn probability_matches_measure(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut t = Tally::new("standard-probability-is-measure");
    let ctx = NumerosityContext::coin();
    for _ in 0..cases {
        let e = sampling::coin_event(rng, CoinShape::default());
        let p = ctx.probability(&Event::Coin(e.clone())).expect("coin");
        let st = MeasureValue::try_from(p.standard_part()).ok();
        t.check(st == Some(kolmogorov_measure(&e)), || render(&Event::Coin(e.clone())));
    }
    t.finish()
}

fn cylinder_exactness(rng: &mut ChaCha8Rng, cases: usize) -> SuiteResult {
    let mut t = Tally::new("cylinder-exactness");
    let ctx = NumerosityContext::coin();
    for _ in 0..cases {
        let n = rng.gen_range(0..=10);
        let indices = sampling::index_set(rng, 20, n);
        let constraints: Vec<(u32, Toss)> = indices.iter().map(|&i| (i, sampling::toss(rng))).collect();
        let c = crate::events::CoinEvent::cylinder(&constraints).expect("distinct indices");
        let p = ctx.probability(&Event::Coin(c)).expect("coin");
        let expected = NaValue::from_rational(Rational::new(1.into(), num::BigInt::from(1u64 << n)));
        t.check(p == expected, || format!("{constraints:?} gave {p}"));
    }
    t.finish()
}

fn inner_le_outer(rng: &mut ChaCha8Rng, space: &MeasureSpace, model: &GroundModel, cases: usize) -> SuiteResult {
    let name = match model {
        GroundModel::Coin => "inner-le-outer-coin",
        GroundModel::Interval => "inner-le-outer-interval",
        GroundModel::Finite(_) => "inner-le-outer-finite",
    };
    let mut t = Tally::new(name);
    let ctx = space.numerosity_context().expect("nontrivial measure");
    for _ in 0..cases {
        let e = random_event(rng, model);
        let inner = space.inner_measure(&ctx, &e).expect("same model");
        let outer = space.outer_measure(&e).expect("same model");
        let member_ok = match space.measure(&e).expect("same model") {
            Some(m) => inner == m && outer == m,
            None => true,
        };
        t.check(inner <= outer && member_ok, || {
            format!("{}: inner {inner}, outer {outer}", render(&e))
        });
    }
    t.finish()
}

fn round_trip(rng: &mut ChaCha8Rng, model: &GroundModel, cases: usize) -> SuiteResult {
    let name = match model {
        GroundModel::Coin => "round-trip-coin",
        GroundModel::Interval => "round-trip-interval",
        GroundModel::Finite(_) => "round-trip-finite",
    };
    let mut t = Tally::new(name);
    for _ in 0..cases {
        let e = random_event(rng, model);
        let text = render(&e);
        let back = parse_and_elaborate(&text, model);
        t.check(back.as_ref() == Ok(&e), || format!("{text} -> {back:?}"));
    }
    t.finish()
}

/// Runs every suite with `cases` cases each. Results are determined by
/// `seed`.
pub fn run_suites(seed: u64, cases: usize) -> Vec<SuiteResult> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let finite = GroundModel::Finite(sampling::finite_space(6));
    let GroundModel::Finite(space) = &finite else { unreachable!() };
    let counting = MeasureSpace::Finite(crate::measures::FiniteMeasure::counting(space.clone()));
    vec![
        field_axioms(&mut rng, cases),
        standard_part(&mut rng, cases),
        cylinder_exactness(&mut rng, cases),
        additivity(&mut rng, &GroundModel::Coin, cases),
        additivity(&mut rng, &GroundModel::Interval, cases),
        additivity(&mut rng, &finite, cases),
        probability_matches_measure(&mut rng, cases),
        inner_le_outer(&mut rng, &MeasureSpace::Kolmogorov, &GroundModel::Coin, cases),
        inner_le_outer(&mut rng, &MeasureSpace::Lebesgue, &GroundModel::Interval, cases),
        inner_le_outer(&mut rng, &counting, &finite, cases),
        round_trip(&mut rng, &GroundModel::Coin, cases),
        round_trip(&mut rng, &GroundModel::Interval, cases),
        round_trip(&mut rng, &finite, cases),
    ]
}
