//! The binary expansion words, their lengths, and the branch sequences that
//! enumerate each support.

use ciu::fibword::{branch_sequences, expansion, fib};
use ciu::Limits;

fn main() {
    let limits = Limits::default();
    for k in 1..=8 {
        let w = expansion(k, &limits).unwrap();
        println!(
            "W({k}) = {:<22} |W| = {} = fib({k}) = {}",
            w.to_string(),
            w.len(),
            fib(k.into()).unwrap()
        );
    }
    println!();
    for (i, b) in branch_sequences(2, &limits).unwrap().iter().enumerate() {
        let bits: Vec<String> = b.iter().map(u8::to_string).collect();
        println!("b{} = ({})", i + 1, bits.join(","));
    }
}
