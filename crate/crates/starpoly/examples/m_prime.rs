//! The M'-polynomial of marked forests: order-dependent expressions that
//! all undot to the same D-polynomial, with only strict variables on
//! almost strictly marked trees.

use starpoly::graph::MarkedGraph;
use starpoly::invariants::d_poly;
use starpoly::mark::mk;
use starpoly::mprime::{m_prime, MarkOrder};
use starpoly::zpoly::undot;

fn main() {
    // The star with center (1,0) and leaves (4,0), (2,0).
    let star = MarkedGraph::from_parts(
        vec![(0, mk(1, 0)), (1, mk(4, 0)), (2, mk(2, 0))],
        vec![(0, 1), (0, 2)],
    )
    .unwrap();

    let lex = m_prime(&star, MarkOrder::Lex).unwrap();
    println!("M' with (4,0) largest: {lex}");

    // Find a seeded order that ranks (2,0) above (4,0).
    let flipped = (0..)
        .map(MarkOrder::Seeded)
        .find(|o| o.cmp(&mk(2, 0), &mk(4, 0)) == std::cmp::Ordering::Greater)
        .unwrap();
    let other = m_prime(&star, flipped).unwrap();
    println!("M' with (2,0) largest: {other}");
    assert_ne!(lex, other);

    // Different expressions, same undotting: both give D.
    let d = d_poly(&star);
    assert_eq!(undot(&lex), d);
    assert_eq!(undot(&other), d);
    println!("both undot to D = {d}");

    // Every variable in M' of a weighted tree is strict.
    for poly in [&lex, &other] {
        for (mono, _) in poly.terms() {
            for (mark, _) in mono.factors() {
                assert!(mark.is_strict());
            }
        }
    }
    println!("all M' variables are strict");
}
