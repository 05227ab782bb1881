//! Cylinder sets of coin tosses: numerosities, probabilities and the
//! measure they converge to.

use elementary_numerosity::events::{CoinEvent, CoinPoint, Event, Toss};
use elementary_numerosity::measures::kolmogorov_measure;
use elementary_numerosity::numerosity::NumerosityContext;

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = NumerosityContext::coin();

    let c = CoinEvent::cylinder(&[(1, Toss::H), (2, Toss::T), (5, Toss::H)])?;
    let n = ctx.numerosity(&Event::Coin(c.clone()))?;
    let p = ctx.probability(&Event::Coin(c.clone()))?;
    println!("n(C(1:H, 2:T, 5:H)) = {n}, P = {p}, measure = {}", kolmogorov_measure(&c));

    // removing one sequence lowers the numerosity by one
    let hthhh = CoinPoint::new(vec![Toss::H, Toss::T], Toss::H);
    let holed = c.difference(&CoinEvent::points([hthhh]))?;
    let p = ctx.probability(&Event::Coin(holed.clone()))?;
    println!("without HT(H): P = {p}, st(P) = {}", p.standard_part());

    let first_heads = Event::Coin(CoinEvent::cylinder(&[(1, Toss::H)])?);
    let f = Event::Coin(CoinEvent::points([
        CoinPoint::new(vec![Toss::H, Toss::T], Toss::T),
        CoinPoint::new(vec![Toss::T, Toss::H], Toss::T),
        CoinPoint::new(vec![Toss::H], Toss::H),
    ]));
    let q = ctx.conditional(&first_heads, &f)?;
    println!("P(first toss H | three points) = {} (exact: {})", q.value, q.exact);

    let verdict = ctx.check_strict_monotonicity(&Event::Coin(holed), &Event::Coin(c))?;
    println!("proper subset has smaller numerosity: {}", verdict.holds);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
