//! Sampled frequencies of coin events against the exact standard part of
//! their probability.

use elementary_numerosity::dsl::{parse_and_elaborate, render};
use elementary_numerosity::estimate::{estimate, EstimateConfig};
use elementary_numerosity::events::{Event, GroundModel};

pub fn run() -> Result<(), Box<dyn std::error::Error>> {
    let config = EstimateConfig {
        seed: 42,
        samples: 20_000,
        horizon: 16,
    };
    for src in ["C(1:H)", "C(1:H, 2:T)", "C(1:H) | C(2:H) & C(3:H)", "Omega \\ {(H)}", "{HT(H)}"] {
        let Event::Coin(c) = parse_and_elaborate(src, &GroundModel::Coin)? else {
            unreachable!()
        };
        let est = estimate(&c, &config)?;
        println!(
            "freq {:.4}  st(P) {:<4}  gap {:.4}  bound {:.4}  {}",
            est.frequency,
            est.standard_part.to_string(),
            est.gap,
            est.half_width,
            render(&Event::Coin(c)),
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run()
}
