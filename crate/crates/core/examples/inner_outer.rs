//! A four-point space whose algebra only separates `{a, b}` from `{c, d}`:
//! inner measure from numerosity, outer measure from covers, and the
//! exhaustive oracle.

use elementary_numerosity::events::{Event, FiniteEvent};
use elementary_numerosity::measures::{finite_oracle, parse_space_file, MeasureSpace, DEFAULT_ORACLE_BOUND};

const SPACE: &str = "\
universe: a b c d
gen: a b
mu: a b = 1/2
mu: c d = 1/2
";

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let m = parse_space_file(SPACE)?;
    let space = m.space().clone();
    let ms = MeasureSpace::Finite(m.clone());
    let ctx = ms.numerosity_context()?;

    for labels in [vec!["a"], vec!["a", "b"], vec!["a", "c"], vec!["a", "b", "c"]] {
        let e = Event::Finite(FiniteEvent::from_labels(&space, labels.iter().copied())?);
        let inner = ms.inner_measure(&ctx, &e)?;
        let outer = ms.outer_measure(&e)?;
        println!("{labels:?}: inner {inner}, outer {outer}");
    }

    let report = finite_oracle(&m, DEFAULT_ORACLE_BOUND)?;
    for check in &report.checks {
        println!("{check}");
    }
    println!(
        "Caratheodory family has {} of {} subsets; {} strict gaps",
        report.caratheodory.len(),
        1 << report.universe,
        report.strict_gaps.unwrap_or(0)
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
