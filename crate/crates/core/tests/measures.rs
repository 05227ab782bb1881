use elementary_numerosity::measures::{finite_oracle, FiniteMeasure};
use elementary_numerosity::nafield::Rational;
use elementary_numerosity::sampling;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_measure(rng: &mut ChaCha8Rng, proportional: bool) -> FiniteMeasure {
    let n = rng.gen_range(1..=8);
    let cells = rng.gen_range(1..=n);
    let space = sampling::finite_space(n);
    let mut masks = vec![0u64; cells];
    for k in 0..n {
        let c = if k < cells { k } else { rng.gen_range(0..cells) };
        masks[c] |= 1 << k;
    }
    let weights = masks
        .iter()
        .map(|m| {
            if proportional {
                Rational::new(m.count_ones().into(), 3.into())
            } else {
                Rational::new(rng.gen_range(0..5).into(), rng.gen_range(1..4).into())
            }
        })
        .collect();
    FiniteMeasure::from_cells(space, masks, weights).unwrap()
}

#[test]
fn oracle_passes_on_random_measures() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for k in 0..60 {
        let m = random_measure(&mut rng, k % 2 == 0);
        let report = finite_oracle(&m, 12).unwrap();
        assert!(report.passed(), "{:?}", report.checks);
    }
}

#[test]
fn caratheodory_family_matches_the_definition() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for k in 0..30 {
        let m = random_measure(&mut rng, k % 3 == 0);
        let n = m.space().len();
        let full = (1u64 << n) - 1;
        let table: Vec<Rational> = (0..=full).map(|x| m.outer_by_cover_search(x)).collect();
        let outer = |x: u64| &table[(x & full) as usize];
        let expected: Vec<u64> = (0..=full)
            .filter(|&x| (0..=full).all(|y| *outer(y) == outer(y & x) + outer(y & !x)))
            .collect();
        let report = finite_oracle(&m, 12).unwrap();
        assert_eq!(report.caratheodory, expected);
        for member in m.members() {
            assert!(expected.contains(&member));
        }
    }
}
