//! Arithmetic with an infinite unit `w`: order, standard parts and division.

use elementary_numerosity::nafield::{rat, NaValue, DEFAULT_ORDER};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let w = NaValue::omega();
    let one = NaValue::one();

    let x: NaValue = "1/2*w + -3 + 2*w^-1".parse()?;
    println!("x = {x}");
    println!("x classified as {:?}", x.classify());
    println!("w + 1 > w: {}", &w + &one > w);
    println!("w^-1 is infinitesimal: {}", w.recip(DEFAULT_ORDER)?.value.is_infinitely_close(&NaValue::zero()));

    let finite: NaValue = "3/4 + 5*w^-2".parse()?;
    println!("st({finite}) = {}", finite.standard_part());
    println!("st({x}) = {}", x.standard_part());

    let q = (&w * &w - one.clone()).div(&(&w - &one), DEFAULT_ORDER)?;
    println!("(w^2 - 1) / (w - 1) = {} (exact: {})", q.value, q.exact);

    let q = one.div(&(&w + &one), 4)?;
    println!("1 / (w + 1) to 4 terms = {} (exact: {})", q.value, q.exact);
    let residual = one.div_residual(&(&w + &one), 4)?;
    println!("residual = {residual}");

    let ratio = (&w.scale(&rat(3, 8)) + &one).standard_part_of_ratio(&w)?;
    println!("st((3/8*w + 1) / w) = {ratio}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
