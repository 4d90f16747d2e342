//! Sample the structural properties of consequence at each level.

use ciu::consequence::metatheory_sample;
use ciu::Limits;

fn main() {
    let limits = Limits::default();
    for n in 0..=3 {
        let report = metatheory_sample(n, 200, 11, &limits).unwrap();
        println!("{report}");
    }
}
