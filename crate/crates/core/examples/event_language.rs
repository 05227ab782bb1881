//! Parsing, elaborating and rendering events written in the event language.

use elementary_numerosity::dsl::{parse_and_elaborate, parse_corpus, render};
use elementary_numerosity::events::{GroundModel, ModelKind};

const CORPUS: &str = "\
# coin events
C(1:H, 3:T)
C(1:H) | C(1:T)
~C(2:H) & C(1:T)
(C(1:H) | {T(H)}) \\ {HT(T)}
";

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    for (line, ast) in parse_corpus(CORPUS, ModelKind::Coin)? {
        let e = elementary_numerosity::dsl::elaborate(&ast, &GroundModel::Coin)?;
        println!("line {line}: {}", render(&e));
    }
    let e = parse_and_elaborate("[0, 3/4) ∖ {1/2} ∪ [2, 5/2)", &GroundModel::Interval)?;
    println!("interval: {}", render(&e));

    for bad in ["C(1:H) & ", "[1, 1)", "C(1:H, 1:T)"] {
        match parse_and_elaborate(bad, &GroundModel::Coin) {
            Ok(e) => println!("{bad:?} -> {}", render(&e)),
            Err(err) => println!("{bad:?} -> {err}"),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
