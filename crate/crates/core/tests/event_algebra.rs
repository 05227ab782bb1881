use elementary_numerosity::events::{CoinEvent, CoinPoint, Event, FiniteEvent, IntervalEvent, Point, Toss};
use elementary_numerosity::measures::kolmogorov_measure;
use elementary_numerosity::nafield::{rat, Rational};
use elementary_numerosity::sampling::{self, CoinShape};
use num::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn coin_probes(rng: &mut ChaCha8Rng, events: &[&CoinEvent]) -> Vec<CoinPoint> {
    let mut probes: Vec<CoinPoint> = (0..60).map(|_| sampling::coin_point(rng, 10)).collect();
    for e in events {
        probes.extend(e.plus().iter().cloned());
        probes.extend(e.minus().iter().cloned());
    }
    probes
}

#[test]
fn coin_operations_agree_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..300 {
        let a = sampling::coin_event(&mut rng, CoinShape::default());
        let b = sampling::coin_event(&mut rng, CoinShape::default());
        let (u, i, d, c) = (
            a.union(&b).unwrap(),
            a.intersect(&b).unwrap(),
            a.difference(&b).unwrap(),
            a.complement().unwrap(),
        );
        for e in [&u, &i, &d, &c] {
            e.validate().unwrap();
        }
        for p in coin_probes(&mut rng, &[&a, &b]) {
            let (x, y) = (a.contains(&p), b.contains(&p));
            assert_eq!(u.contains(&p), x || y, "union at {p}");
            assert_eq!(i.contains(&p), x && y, "intersection at {p}");
            assert_eq!(d.contains(&p), x && !y, "difference at {p}");
            assert_eq!(c.contains(&p), !x, "complement at {p}");
        }
    }
}

#[test]
fn coin_boolean_laws_hold_structurally() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let omega = CoinEvent::omega();
    for _ in 0..200 {
        let a = sampling::coin_event(&mut rng, CoinShape::default());
        let b = sampling::coin_event(&mut rng, CoinShape::default());
        let c = sampling::coin_event(&mut rng, CoinShape::default());
        let not = |e: &CoinEvent| e.complement().unwrap();
        assert_eq!(a.union(&b).unwrap(), b.union(&a).unwrap());
        assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        assert_eq!(
            a.intersect(&b.union(&c).unwrap()).unwrap(),
            a.intersect(&b).unwrap().union(&a.intersect(&c).unwrap()).unwrap()
        );
        assert_eq!(not(&a.union(&b).unwrap()), not(&a).intersect(&not(&b)).unwrap());
        assert_eq!(not(&not(&a)), a);
        assert_eq!(a.union(&not(&a)).unwrap(), omega);
        assert!(a.intersect(&not(&a)).unwrap().is_empty());
        assert_eq!(a.difference(&b).unwrap(), a.intersect(&not(&b)).unwrap());
        assert_eq!(a.union(&a.intersect(&b).unwrap()).unwrap(), a);
        assert!(a.intersect(&b).unwrap().is_subset(&a).unwrap());
    }
}

#[test]
fn refinement_preserves_the_base_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let e = sampling::coin_event(&mut rng, CoinShape::default());
        let mut target: Vec<u32> = e.indices().to_vec();
        target.extend(sampling::index_set(&mut rng, 12, 3));
        target.sort_unstable();
        target.dedup();
        let masks = e.refine_atoms(&target).unwrap();
        assert_eq!(masks.len(), e.atom_count() << (target.len() - e.codimension()));
        let atoms: Vec<Vec<Toss>> = masks
            .iter()
            .map(|m| (0..target.len()).map(|j| if m >> j & 1 == 1 { Toss::H } else { Toss::T }).collect())
            .collect();
        let rebuilt = CoinEvent::from_parts(
            target,
            atoms,
            e.plus().iter().cloned().collect(),
            e.minus().iter().cloned().collect(),
        )
        .unwrap();
        assert_eq!(rebuilt, e);
    }
}

#[test]
fn measure_matches_prefix_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let n = 10u32;
    let shape = CoinShape { max_index: n, max_codimension: 6, max_points: 2 };
    for _ in 0..200 {
        let e = sampling::coin_event(&mut rng, shape);
        let hits = (0..1u64 << n)
            .filter(|word| {
                e.base_contains_assignment(|i| if word >> (i - 1) & 1 == 1 { Toss::H } else { Toss::T })
            })
            .count();
        let expected = Rational::new(BigInt::from(hits), BigInt::from(1u64 << n));
        assert_eq!(kolmogorov_measure(&e).as_finite(), Some(&expected));
    }
}

#[test]
fn interval_operations_agree_pointwise() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..300 {
        let a = sampling::interval_event(&mut rng);
        let b = sampling::interval_event(&mut rng);
        let (u, i, d) = (a.union(&b), a.intersect(&b), a.difference(&b));
        for e in [&u, &i, &d] {
            e.validate().unwrap();
        }
        let mut probes: Vec<Rational> = (-100..=100).map(|k| rat(k, 8)).collect();
        probes.extend((0..20).map(|_| sampling::rational(&mut rng, 90, 9)));
        for e in [&a, &b] {
            probes.extend(e.plus().iter().cloned());
            probes.extend(e.minus().iter().cloned());
            for (s, t) in e.intervals() {
                probes.push(s.clone());
                probes.push(t.clone());
            }
        }
        for x in &probes {
            let (p, q) = (a.contains(x), b.contains(x));
            assert_eq!(u.contains(x), p || q, "union at {x}");
            assert_eq!(i.contains(x), p && q, "intersection at {x}");
            assert_eq!(d.contains(x), p && !q, "difference at {x}");
        }
        assert_eq!(u.total_length() + i.total_length(), a.total_length() + b.total_length());
    }
}

#[test]
fn interval_laws_hold_structurally() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..200 {
        let a = sampling::interval_event(&mut rng);
        let b = sampling::interval_event(&mut rng);
        let c = sampling::interval_event(&mut rng);
        assert_eq!(a.union(&b), b.union(&a));
        assert_eq!(a.intersect(&b.union(&c)), a.intersect(&b).union(&a.intersect(&c)));
        assert_eq!(a.difference(&b.union(&c)), a.difference(&b).intersect(&a.difference(&c)));
        assert_eq!(a.union(&a.intersect(&b)), a);
        assert!(a.difference(&a).is_empty());
    }
    let touching = IntervalEvent::interval(rat(0, 1), rat(1, 2))
        .unwrap()
        .union(&IntervalEvent::interval(rat(1, 2), rat(1, 1)).unwrap());
    assert_eq!(touching, IntervalEvent::interval(rat(0, 1), rat(1, 1)).unwrap());
}

#[test]
fn finite_events_and_wrapper_dispatch() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let space = sampling::finite_space(9);
    for _ in 0..200 {
        let a = sampling::finite_event(&mut rng, &space);
        let b = sampling::finite_event(&mut rng, &space);
        let u = Event::Finite(a.clone()).union(&Event::Finite(b.clone())).unwrap();
        for label in space.labels() {
            let p = Point::Label(label.clone());
            assert_eq!(u.contains(&p).unwrap(), a.contains(label) || b.contains(label));
        }
        assert_eq!(a.complement().complement(), a);
    }
    let other = sampling::finite_space(3);
    let foreign = FiniteEvent::full(&other);
    assert!(Event::Finite(FiniteEvent::full(&space))
        .union(&Event::Finite(foreign))
        .is_err());
    assert!(Event::Coin(CoinEvent::omega())
        .union(&Event::Interval(IntervalEvent::empty()))
        .is_err());
}
