//! Build M_n for a few levels and print the table text and JSON forms.
//!
//!     cargo run --example build_matrices -- 3

use ciu::matrix::{build_matrix, materialize};
use ciu::Limits;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2);
    let limits = Limits::default();
    for level in 0..=n {
        let m = build_matrix(level, &limits).unwrap();
        println!(
            "M_{level}: {} values, {} designated",
            m.size(),
            m.designated().count()
        );
    }
    let table = materialize(&build_matrix(n, &limits).unwrap(), &limits).unwrap();
    println!();
    print!("{}", table.to_table_text());
    println!();
    println!("{}", table.to_json());
}
