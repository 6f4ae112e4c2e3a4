//! The M-polynomial of a marked graph by its three routes: the defining
//! deletion-contraction recursion, the states model over edge subsets, and
//! the bond-lattice sum over connected vertex partitions.

use starpoly::graph::MarkedGraph;
use starpoly::invariants::{m_poly_bond, m_poly_dc, m_poly_states};
use starpoly::mark::mk;

fn main() {
    // Triangle with marks (4,1), (1,0), (2,0).
    let g = MarkedGraph::from_parts(
        vec![(0, mk(4, 1)), (1, mk(1, 0)), (2, mk(2, 0))],
        vec![(0, 1), (1, 2), (2, 0)],
    )
    .unwrap();

    let dc = m_poly_dc(&g);
    let states = m_poly_states(&g).unwrap();
    let bond = m_poly_bond(&g).unwrap();
    println!("M (deletion-contraction): {dc}");
    println!("M (states model):         {states}");
    println!("M (bond lattice):         {bond}");
    assert_eq!(dc, states);
    assert_eq!(states, bond);

    // The loop rule: a loop multiplies by y.
    let loopy = MarkedGraph::from_parts(vec![(0, mk(3, 1))], vec![(0, 0)]).unwrap();
    println!("M of a single loop on (3,1): {}", m_poly_dc(&loopy));

    // Multiplicativity over disjoint unions.
    let path = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
    let both = g.disjoint_union(&path);
    assert_eq!(m_poly_states(&both).unwrap(), dc.mul(&m_poly_states(&path).unwrap()));
    println!("M is multiplicative over components");
}
