//! Explosion and double negation across the hierarchy.

use ciu::consequence::paraconsistency_report;
use ciu::Limits;

fn main() {
    let report = paraconsistency_report(6, &Limits::default()).unwrap();
    print!("{report}");
    println!("as expected: {}", report.as_expected());
}
