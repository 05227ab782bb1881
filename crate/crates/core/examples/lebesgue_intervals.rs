//! Half-open rational intervals: numerosity is length times `w` plus a
//! point count.

use elementary_numerosity::events::{Event, IntervalEvent};
use elementary_numerosity::measures::lebesgue_measure;
use elementary_numerosity::nafield::{int, rat};
use elementary_numerosity::numerosity::NumerosityContext;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = NumerosityContext::interval();

    for (x, a) in [(int(0), rat(3, 4)), (rat(-7, 3), rat(3, 4)), (int(100), rat(3, 4))] {
        let i = IntervalEvent::interval(x.clone(), &x + &a)?;
        println!("n([{x}, {})) = {}", &x + &a, ctx.numerosity(&Event::Interval(i))?);
    }

    let unit = IntervalEvent::interval(int(0), int(1))?;
    let holed = unit.difference(&IntervalEvent::points([rat(1, 2)]));
    let halves = IntervalEvent::interval(int(0), rat(1, 2))?
        .union(&IntervalEvent::interval(rat(1, 2), int(1))?);
    println!("n([0, 1) \\ {{1/2}}) = {}", ctx.numerosity(&Event::Interval(holed.clone()))?);
    println!("[0, 1/2) | [1/2, 1) = [0, 1): {}", halves == unit);
    println!("Lebesgue measure of [0, 1) \\ {{1/2}} = {}", lebesgue_measure(&holed));

    let five = ctx.clone().with_beta(elementary_numerosity::nafield::NaValue::from_integer(5))?;
    let point = Event::Interval(IntervalEvent::points([int(7)]));
    println!("n_5({{7}}) = {}", five.nbeta(&point, five.beta())?);
    println!("n_w({{7}}) = {}", ctx.nbeta(&point, ctx.beta())?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
