//! Evaluate formulas under every bivaluation seed of one atom and audit the
//! closure conditions.

use std::collections::BTreeSet;

use ciu::bival::{audit_conditions, enumerate_seeds, eval_bival, to_matrix_valuation};
use ciu::formula::parse;
use ciu::Limits;

fn main() {
    let n = 2;
    let limits = Limits::default();
    let formulas: Vec<_> = ["p", "~p", "~~p", "~~~p", "p -> ~p", "~(p -> ~p)"]
        .iter()
        .map(|t| parse(t).unwrap())
        .collect();
    let closed: BTreeSet<_> = formulas.iter().flat_map(|f| f.subformulas()).collect();

    print!("{:<10}", "seed");
    for f in &formulas {
        print!("{:>12}", f.to_string());
    }
    println!("{:>12}", "violations");
    for seed in enumerate_seeds(n, &["p"], &limits).unwrap().iter() {
        let w = to_matrix_valuation(&seed);
        print!("{:<10}", w.get("p").unwrap().to_string());
        for f in &formulas {
            print!("{:>12}", u8::from(eval_bival(&seed, f).unwrap()));
        }
        println!("{:>12}", audit_conditions(&seed, &closed).unwrap().len());
    }
}
