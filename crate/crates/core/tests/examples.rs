#[allow(dead_code)]
#[path = "../examples/field_arithmetic.rs"]
mod field_arithmetic;

#[allow(dead_code)]
#[path = "../examples/coin_tosses.rs"]
mod coin_tosses;

#[allow(dead_code)]
#[path = "../examples/lebesgue_intervals.rs"]
mod lebesgue_intervals;

#[allow(dead_code)]
#[path = "../examples/inner_outer.rs"]
mod inner_outer;

#[allow(dead_code)]
#[path = "../examples/event_language.rs"]
mod event_language;

#[allow(dead_code)]
#[path = "../examples/monte_carlo.rs"]
mod monte_carlo;


#[test]
fn field_arithmetic() {
    field_arithmetic::run().unwrap();
}

#[test]
fn coin_tosses() {
    coin_tosses::run().unwrap();
}

#[test]
fn lebesgue_intervals() {
    lebesgue_intervals::run().unwrap();
}

#[test]
fn inner_outer() {
    inner_outer::run().unwrap();
}

#[test]
fn event_language() {
    event_language::run().unwrap();
}

#[test]
fn monte_carlo() {
    monte_carlo::run().unwrap();
}
