//! Compare the matrix and bivaluation deciders on seeded random sequents.
//!
//!     cargo run --example equivalence_check -- 42

use ciu::consequence::cross_check;
use ciu::sample::Sampler;
use ciu::Limits;

fn main() {
    let seed: u64 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(0);
    let limits = Limits::default();
    let samples = Sampler::new(seed, &["p", "q"]).sequents(300, 5, 3);
    for n in 0..=3 {
        let mut held = 0;
        let mut split = 0;
        for s in &samples {
            let c = cross_check(n, s, &limits).unwrap();
            held += usize::from(c.matrix.holds);
            split += usize::from(!c.agree());
        }
        println!(
            "n = {n}: {} sequents, {held} hold, {split} disagreements",
            samples.len()
        );
    }
}
