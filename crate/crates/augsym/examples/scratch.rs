use augsym::combinatorics::Multiset;
use augsym::estimators::*;
use augsym::monomial::{Exponents, Monomial};
use std::time::Instant;

fn bi(a: u32, b: u32) -> Multiset<Monomial> {
    Multiset::from_pairs(vec![
        (Monomial::unlabeled(Exponents::new(vec![1, 0])), a),
        (Monomial::unlabeled(Exponents::new(vec![0, 1])), b),
    ])
}

fn main() {
    let cfg = EstimatorConfig::default();
    // warm caches with a first run
    let t0 = Instant::now();
    let k = multivariate_k_statistic(&bi(9, 9), &cfg).unwrap();
    println!("cold k9,9 [{:?}]: {} sym terms", t0.elapsed(), k.sym_term_count());
    let t0 = Instant::now();
    let k = multivariate_k_statistic(&bi(9, 9), &cfg).unwrap();
    println!("warm k9,9 [{:?}]: {} sym terms", t0.elapsed(), k.sym_term_count());
}
