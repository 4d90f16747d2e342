//! Relabel a matrix, recover the bijection, and check that consequence is
//! preserved.

use ciu::consequence::entails_generic;
use ciu::matrix::{build_matrix, find_isomorphism, materialize, TruthValue};
use ciu::sample::Sampler;
use ciu::Limits;

fn main() {
    let limits = Limits::default();
    let m = materialize(&build_matrix(2, &limits).unwrap(), &limits).unwrap();
    let perm = vec![3, 0, 4, 1, 2];
    let copy = m.relabel(&perm).unwrap();

    match find_isomorphism(&m, &copy).unwrap() {
        Some(f) => {
            println!("found bijection {f:?}");
            for (i, &j) in f.iter().enumerate() {
                let from = TruthValue::new(&m.values[i]).unwrap();
                let to = TruthValue::new(&copy.values[j]).unwrap();
                println!("  element {i} {from} -> element {j} {to}");
            }
        }
        None => println!("not isomorphic"),
    }

    let samples = Sampler::new(5, &["p", "q"]).sequents(50, 4, 2);
    let same = samples
        .iter()
        .filter(|s| {
            entails_generic(&m, s, &limits).unwrap() == entails_generic(&copy, s, &limits).unwrap()
        })
        .count();
    println!("{same} of {} sampled sequents decided alike", samples.len());

    let m1 = materialize(&build_matrix(1, &limits).unwrap(), &limits).unwrap();
    println!("M_1 vs M_2: {:?}", find_isomorphism(&m1, &m).unwrap());
}
