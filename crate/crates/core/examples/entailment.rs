//! Decide sequents at several levels and show countermodels.
//!
//!     cargo run --example entailment -- "p, ~p |- q" 3

use ciu::consequence::entails_matrix;
use ciu::formula::parse_sequent;
use ciu::Limits;

fn main() {
    let mut args = std::env::args().skip(1);
    let text = args.next().unwrap_or_else(|| "p |- ~~p".to_string());
    let max_n: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let s = parse_sequent(&text).unwrap();
    let limits = Limits::default();
    for n in 0..=max_n {
        let v = entails_matrix(n, &s, &limits).unwrap();
        match &v.countermodel {
            None => println!("n = {n}: {s} holds ({} valuations)", v.examined),
            Some(cm) => {
                println!("n = {n}: {s} fails at valuation {}", v.examined);
                for line in cm.to_string().lines() {
                    println!("    {line}");
                }
            }
        }
    }
}
