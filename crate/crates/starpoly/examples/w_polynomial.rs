//! The W-polynomial of weighted graphs, obtained from the M-polynomial by
//! forgetting dots, and a pair of non-isomorphic weighted paths sharing it.

use starpoly::canon::{canonical_form, mark_isomorphic};
use starpoly::graph::MarkedGraph;
use starpoly::invariants::w_poly;

fn main() {
    let path = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
    println!("W of the path 4-1-2: {}", w_poly(&path).unwrap());

    // Two weighted paths with the same W-polynomial but different shapes.
    let p1 = MarkedGraph::weighted_path(&[2, 1, 2, 3, 1]).unwrap();
    let p2 = MarkedGraph::weighted_path(&[2, 3, 1, 2, 1]).unwrap();
    let w1 = w_poly(&p1).unwrap();
    let w2 = w_poly(&p2).unwrap();
    println!("W of 2-1-2-3-1: {w1}");
    println!("W of 2-3-1-2-1: {w2}");
    assert_eq!(w1, w2);
    assert!(!mark_isomorphic(&p1, &p2).unwrap());
    println!("equal W, different trees:");
    println!("  {}", canonical_form(&p1).unwrap());
    println!("  {}", canonical_form(&p2).unwrap());
}
