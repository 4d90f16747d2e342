//! Parse formulas and sequents, then print them back with minimal parentheses.
//!
//!     cargo run --example parse_and_render -- "~~(p -> q) -> ~p"

use ciu::formula::{atoms_of, neg_decompose, parse, parse_sequent};

fn main() {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        vec![
            "((p) -> (q -> r))".to_string(),
            "¬¬(p ⊃ q) ⊃ ¬p".to_string(),
        ]
    } else {
        inputs
    };
    for text in &inputs {
        match parse(text) {
            Ok(f) => {
                let tower = neg_decompose(&f);
                println!("{text}");
                println!("  rendered: {f}");
                println!(
                    "  size {}, depth {}, atoms {:?}",
                    f.size(),
                    f.depth(),
                    atoms_of(&f)
                );
                println!("  leading negations: {}, core: {}", tower.k, tower.core);
            }
            Err(e) => println!("{text}\n  error: {e}"),
        }
    }

    let s = parse_sequent("p, ~p |- q").unwrap();
    println!("sequent {s} has {} premises", s.premises.len());
    if let Err(e) = parse_sequent("p |- q |- r") {
        println!("rejected: {e}");
    }
}
