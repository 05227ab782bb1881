//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use elementary_numerosity::dsl::{parse_and_elaborate, render};
use elementary_numerosity::estimate::{estimate, EstimateConfig};
use elementary_numerosity::events::{
    CoinEvent, Event, FiniteEvent, GroundModel, IntervalEvent, Toss,
};
use elementary_numerosity::measures::{kolmogorov_measure, FiniteMeasure, MeasureSpace};
use elementary_numerosity::nafield::{rat, ExtendedReal, NaValue, Rational};
use elementary_numerosity::numerosity::NumerosityContext;
use elementary_numerosity::sampling::{self, CoinShape};
use num::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn ensure(ok: bool, why: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(why())
    }
}

fn pow2_inv(n: usize) -> Rational {
    Rational::new(BigInt::from(1), BigInt::from(1u64) << n)
}

fn cylinder_exactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let ctx = NumerosityContext::coin();
    let mut atoms = 0usize;
    for _ in 0..200 {
        let n = rng.gen_range(0..=10);
        let indices = sampling::index_set(&mut rng, 20, n);
        let expected = NaValue::from_rational(pow2_inv(n));
        for word in 0..1u64 << n {
            let constraints: Vec<(u32, Toss)> = indices
                .iter()
                .enumerate()
                .map(|(j, &i)| (i, if word >> j & 1 == 1 { Toss::H } else { Toss::T }))
                .collect();
            let c = CoinEvent::cylinder(&constraints).map_err(|e| e.to_string())?;
            let p = ctx.probability(&Event::Coin(c)).map_err(|e| e.to_string())?;
            ensure(p == expected, || format!("{constraints:?}: P = {p}"))?;
            atoms += 1;
        }
    }
    Ok(format!("200 index sets, {atoms} atoms"))
}

fn conditional_counting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ctx = NumerosityContext::coin();
    for _ in 0..1000 {
        let size = rng.gen_range(1..=8);
        let f = CoinEvent::points((0..size).map(|_| sampling::coin_point(&mut rng, 9)));
        let e = sampling::coin_event(&mut rng, CoinShape::default());
        let inside = f.plus().iter().filter(|p| e.contains(p)).count();
        let expected = NaValue::from_rational(Rational::new(inside.into(), f.plus().len().into()));
        let q = ctx
            .conditional(&Event::Coin(e.clone()), &Event::Coin(f.clone()))
            .map_err(|x| x.to_string())?;
        ensure(q.exact && q.value == expected, || {
            format!("E = {}, F = {}: got {}", render(&Event::Coin(e)), render(&Event::Coin(f)), q.value)
        })?;
    }
    Ok("1000 cases".into())
}

fn standard_probability_is_measure() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ctx = NumerosityContext::coin();
    let shape = CoinShape { max_index: 10, max_codimension: 7, max_points: 4 };
    for _ in 0..1000 {
        let e = sampling::coin_event(&mut rng, shape);
        let p = ctx.probability(&Event::Coin(e.clone())).map_err(|x| x.to_string())?;
        let hits = (0..1u64 << 10)
            .filter(|w| e.base_contains_assignment(|i| if w >> (i - 1) & 1 == 1 { Toss::H } else { Toss::T }))
            .count();
        let brute = Rational::new(hits.into(), 1024.into());
        let mu = kolmogorov_measure(&e);
        ensure(
            p.standard_part() == ExtendedReal::Finite(brute.clone()) && mu.as_finite() == Some(&brute),
            || format!("{}: st(P) = {}, mu = {mu}, count = {brute}", render(&Event::Coin(e.clone())), p.standard_part()),
        )?;
    }
    Ok("1000 events".into())
}

fn interval_translation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let ctx = NumerosityContext::interval();
    for _ in 0..500 {
        let a = sampling::positive_rational(&mut rng, 100, 100);
        let x = sampling::rational(&mut rng, 1000, 50);
        let y = sampling::rational(&mut rng, 1000, 50);
        let expected = ctx.beta().scale(&a);
        for s in [&x, &y] {
            let i = IntervalEvent::interval(s.clone(), s + &a).map_err(|e| e.to_string())?;
            let n = ctx.numerosity(&Event::Interval(i)).map_err(|e| e.to_string())?;
            ensure(n == expected, || format!("[{s}, {s} + {a}) has {n}"))?;
        }
        let k: i64 = rng.gen_range(2..=7);
        let mut pieces = NaValue::zero();
        for j in 0..k {
            let lo = &x + &(&a * rat(j, k));
            let hi = &x + &(&a * rat(j + 1, k));
            let i = IntervalEvent::interval(lo, hi).map_err(|e| e.to_string())?;
            pieces += &ctx.numerosity(&Event::Interval(i)).map_err(|e| e.to_string())?;
        }
        ensure(pieces == expected, || format!("[{x}, {x} + {a}) in {k} pieces sums to {pieces}"))?;
    }
    Ok("500 cases".into())
}

fn random_event(rng: &mut ChaCha8Rng, model: &GroundModel) -> Event {
    match model {
        GroundModel::Coin => Event::Coin(sampling::coin_event(rng, CoinShape::default())),
        GroundModel::Interval => Event::Interval(sampling::interval_event(rng)),
        GroundModel::Finite(space) => Event::Finite(sampling::finite_event(rng, space)),
    }
}

fn singleton(rng: &mut ChaCha8Rng, model: &GroundModel) -> Event {
    match model {
        GroundModel::Coin => Event::Coin(CoinEvent::points([sampling::coin_point(rng, 12)])),
        GroundModel::Interval => Event::Interval(IntervalEvent::points([sampling::rational(rng, 500, 40)])),
        GroundModel::Finite(space) => {
            let k = rng.gen_range(0..space.len());
            Event::Finite(FiniteEvent::from_mask(space, 1 << k).expect("in universe"))
        }
    }
}

fn numerosity_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let finite = GroundModel::Finite(sampling::finite_space(10));
    let err = |e: &dyn std::fmt::Display| e.to_string();
    for model in [GroundModel::Coin, GroundModel::Interval, finite] {
        let ctx = NumerosityContext::for_model(&model);
        let n = |e: &Event| ctx.numerosity(e).map_err(|x| err(&x));
        for _ in 0..2000 {
            let a = random_event(&mut rng, &model);
            let b = random_event(&mut rng, &model).difference(&a).map_err(|x| err(&x))?;
            let u = a.union(&b).map_err(|x| err(&x))?;
            ensure(n(&u)? == &n(&a)? + &n(&b)?, || format!("additivity: {} and {}", render(&a), render(&b)))?;
            for e in [&a, &b] {
                ensure((n(e)? == NaValue::zero()) == e.is_empty(), || format!("zero: {}", render(e)))?;
                ensure(n(e)? >= NaValue::zero(), || format!("sign: {}", render(e)))?;
            }
        }
        for _ in 0..500 {
            let s = singleton(&mut rng, &model);
            ensure(n(&s)? == NaValue::one(), || format!("singleton {}", render(&s)))?;
        }
        let mut proper = 0;
        while proper < 500 {
            let a = random_event(&mut rng, &model);
            let b = random_event(&mut rng, &model);
            // alternate between unions and single-point removals
            let (small, large) = if proper % 2 == 0 {
                (a.clone(), a.union(&b).map_err(|x| err(&x))?)
            } else {
                let s = singleton(&mut rng, &model);
                let large = a.union(&s).map_err(|x| err(&x))?;
                (large.difference(&s).map_err(|x| err(&x))?, large)
            };
            if small == large {
                continue;
            }
            let v = ctx.check_strict_monotonicity(&small, &large).map_err(|x| err(&x))?;
            ensure(v.holds, || format!("strict: {} < {}", render(&small), render(&large)))?;
            proper += 1;
        }
    }
    Ok("3 models: 2000 disjoint pairs, 500 singletons, 500 proper subsets each".into())
}

/// Cells of a random partition of `0..n`, measured proportionally to size.
fn proportional_measure(rng: &mut ChaCha8Rng, n: usize, cells: usize) -> FiniteMeasure {
    let space = sampling::finite_space(n);
    let mut masks = vec![0u64; cells];
    for k in 0..n {
        let c = if k < cells { k } else { rng.gen_range(0..cells) };
        masks[c] |= 1 << k;
    }
    let weights = masks
        .iter()
        .map(|m| Rational::new(m.count_ones().into(), n.into()))
        .collect();
    FiniteMeasure::from_cells(space, masks, weights).expect("partition")
}

fn inner_outer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let measure = proportional_measure(&mut rng, 12, 4);
    let finite = GroundModel::Finite(measure.space().clone());
    let spaces = [
        (GroundModel::Coin, MeasureSpace::Kolmogorov),
        (GroundModel::Interval, MeasureSpace::Lebesgue),
        (finite, MeasureSpace::Finite(measure)),
    ];
    let err = |e: &dyn std::fmt::Display| e.to_string();
    for (model, space) in &spaces {
        let ctx = space.numerosity_context().map_err(|x| err(&x))?;
        for _ in 0..500 {
            let e = random_event(&mut rng, model);
            let inner = space.inner_measure(&ctx, &e).map_err(|x| err(&x))?;
            let outer = space.outer_measure(&e).map_err(|x| err(&x))?;
            ensure(inner <= outer, || format!("{}: {inner} > {outer}", render(&e)))?;
            if let Some(m) = space.measure(&e).map_err(|x| err(&x))? {
                ensure(inner == m && outer == m, || format!("member {}: {inner}, {outer}, {m}", render(&e)))?;
            }
        }
    }
    let mut strict = 0;
    for trial in 0..5 {
        let m = proportional_measure(&mut rng, 12, 2 + trial);
        let space = MeasureSpace::Finite(m.clone());
        let ctx = space.numerosity_context().map_err(|x| err(&x))?;
        for mask in 0..1u64 << 12 {
            let e = Event::Finite(FiniteEvent::from_mask(m.space(), mask).map_err(|x| err(&x))?);
            let inner = space.inner_measure(&ctx, &e).map_err(|x| err(&x))?;
            let outer = space.outer_measure(&e).map_err(|x| err(&x))?;
            ensure(inner <= outer, || format!("subset {}: {inner} > {outer}", render(&e)))?;
            if m.is_member(mask) {
                ensure(inner == outer, || format!("member {}: {inner} != {outer}", render(&e)))?;
            }
            strict += (inner < outer) as usize;
        }
    }
    ensure(strict > 0, || "no subset with inner < outer".into())?;
    Ok(format!("500 events per model; 5 exhaustive 12-point spaces, {strict} strict gaps"))
}

fn field_correctness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..5000 {
        let (a, b, c) = (sampling::na_value(&mut rng), sampling::na_value(&mut rng), sampling::na_value(&mut rng));
        let laws = [
            &a + &b == &b + &a,
            &a * &b == &b * &a,
            &(&a + &b) + &c == &a + &(&b + &c),
            &(&a * &b) * &c == &a * &(&b * &c),
            &a * &(&b + &c) == &(&a * &b) + &(&a * &c),
            &a + &(-&a) == NaValue::zero(),
            a.cmp(&b) == (&a + &c).cmp(&(&b + &c)),
            !c.is_positive() || a.cmp(&b) == (&a * &c).cmp(&(&b * &c)),
            [a < b, a == b, a > b].iter().filter(|&&x| x).count() == 1,
        ];
        ensure(laws.iter().all(|&x| x), || format!("axioms at {a}; {b}; {c}"))?;
        if a.is_monomial() {
            let inv = a.recip(1).map_err(|e| e.to_string())?;
            ensure(inv.exact && &inv.value * &a == NaValue::one(), || format!("inverse of {a}"))?;
        }

        let (f, g) = (sampling::finite_na_value(&mut rng), sampling::finite_na_value(&mut rng));
        let (ExtendedReal::Finite(x), ExtendedReal::Finite(y)) = (f.standard_part(), g.standard_part()) else {
            return Err(format!("finite value with infinite standard part: {f}, {g}"));
        };
        ensure(
            (&f + &g).standard_part() == ExtendedReal::Finite(&x + &y)
                && (&f * &g).standard_part() == ExtendedReal::Finite(&x * &y),
            || format!("st homomorphism at {f}; {g}"),
        )?;

        let m = NaValue::monomial(
            sampling::rational(&mut rng, 9, 9).max(rat(1, 9)),
            Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=3).into()),
        );
        let q = (&a * &m).div(&m, 1).map_err(|e| e.to_string())?;
        ensure(q.exact && q.value == a, || format!("({a})*({m}) / ({m})"))?;

        // integer exponents: the residual of a K-term inverse is O(w^-K)
        let d = NaValue::from_terms(b.terms().map(|(e, c)| (e.floor(), c.clone())));
        if !d.is_zero() {
            let k = rng.gen_range(1..=20);
            let q = NaValue::one().div(&d, k).map_err(|e| e.to_string())?;
            let residual = &NaValue::one() - &(&q.value * &d);
            let bound = Rational::from_integer(BigInt::from(-(k as i64)));
            ensure(
                residual.is_zero() || residual.leading_exponent().is_some_and(|e| *e <= bound),
                || format!("1 / ({d}) to {k} terms leaves {residual}"),
            )?;
        }
    }
    Ok("5000 triples".into())
}

fn nbeta_scales() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let err = |e: &dyn std::fmt::Display| e.to_string();
    for model in [GroundModel::Coin, GroundModel::Interval] {
        let ctx = NumerosityContext::for_model(&model);
        let w = NaValue::omega();
        let five = NaValue::from_integer(5);
        for _ in 0..500 {
            let a = random_event(&mut rng, &model);
            let b = random_event(&mut rng, &model).difference(&a).map_err(|x| err(&x))?;
            let u = a.union(&b).map_err(|x| err(&x))?;
            let nb = |e: &Event| ctx.nbeta(e, &w).map_err(|x| err(&x));
            let sum = nb(&a)?.checked_add(&nb(&b)?).ok_or("opposite infinities")?;
            ensure(nb(&u)? == sum, || format!("additivity at {}, {}", render(&a), render(&b)))?;
            let s = singleton(&mut rng, &model);
            ensure(nb(&s)? == ExtendedReal::Finite(rat(0, 1)), || format!("w-singleton {}", render(&s)))?;
            let v = ctx.nbeta(&s, &five).map_err(|x| err(&x))?;
            ensure(v == ExtendedReal::Finite(rat(1, 5)), || format!("5-singleton {}: {v}", render(&s)))?;
        }
    }
    Ok("coin and interval, 500 pairs and singletons each".into())
}

fn monte_carlo() -> Outcome {
    let events = [
        ("C(1:H)", rat(1, 2)),
        ("C(10:T)", rat(1, 2)),
        ("C(1:H, 2:T)", rat(1, 4)),
        ("C(3:H, 40:H)", rat(1, 4)),
        ("C(1:H, 2:H, 3:H)", rat(1, 8)),
        ("C(5:T, 17:H, 63:T)", rat(1, 8)),
        ("C(1:H, 2:T) | C(1:T, 2:H, 3:H)", rat(3, 8)),
        ("C(1:H) \\ C(2:H, 3:H)", rat(3, 8)),
        ("C(1:H, 2:H) | {HT(H)}", rat(1, 4)),
        ("C(4:H) \\ {(H)}", rat(1, 2)),
    ];
    let config = EstimateConfig { seed: 20240601, samples: 100_000, horizon: 64 };
    let mut worst = 0.0f64;
    for (src, p) in events {
        let Event::Coin(c) = parse_and_elaborate(src, &GroundModel::Coin).map_err(|e| e.to_string())? else {
            return Err("coin model".into());
        };
        let est = estimate(&c, &config).map_err(|e| e.to_string())?;
        ensure(est.standard_part == p, || format!("{src}: st(P) = {}", est.standard_part))?;
        ensure(est.within_bound(), || {
            format!("{src}: |{} - {p}| = {:.5} > {:.5}", est.frequency, est.gap, est.half_width)
        })?;
        worst = worst.max(est.gap / est.half_width);
    }
    Ok(format!("10 events, N = 100000, largest gap {:.2} of the 3-sigma bound", worst))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("cylinder exactness", cylinder_exactness, Some(Duration::from_secs(1))),
        ("conditional counting", conditional_counting, Some(Duration::from_secs(5))),
        ("standard part of probability is the measure", standard_probability_is_measure, None),
        ("interval translation and subdivision", interval_translation, None),
        ("numerosity axioms", numerosity_axioms, None),
        ("inner measure below outer measure", inner_outer, None),
        ("field correctness", field_correctness, None),
        ("nbeta at beta = w and beta = 5", nbeta_scales, None),
        ("Monte Carlo coherence", monte_carlo, Some(Duration::from_secs(10))),
    ];
    let mut failed = 0;
    for (k, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("{detail}, but took longer than {limit:?}"));
            }
        }
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}; {secs:.2} s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}; {secs:.2} s)", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
