//! Reconstructing weighted stars and 2-stars from their M- and
//! D-polynomials, including the total-weight-12 star and the
//! total-weight-28 2-star with equal centers.

use starpoly::canon::mark_isomorphic;
use starpoly::graph::MarkedGraph;
use starpoly::invariants::{d_poly, m_poly};
use starpoly::reconstruct::{
    alpha, star_from_d, star_from_m, stats_from_m, strict_pairs_from_d2, top_and_degree_one_from_d,
    twostar_from_d, twostar_from_m, d2_layer,
};

fn main() {
    // Stats readable straight off M: the path 4-1-2 is the star St_3.
    let path = MarkedGraph::weighted_path(&[4, 1, 2]).unwrap();
    let m = m_poly(&path);
    let stats = stats_from_m(&m).unwrap();
    println!(
        "path 4-1-2: n={} N={} weights={:?} leaves={:?} shape={:?}",
        stats.n, stats.total_weight, stats.weights, stats.leaf_weights, stats.shape
    );
    println!("alpha(4,1)={} alpha(4,2)={}", alpha(&m, 4, 1).unwrap(), alpha(&m, 4, 2).unwrap());
    assert!(mark_isomorphic(&star_from_m(&m).unwrap(), &path).unwrap());

    // Weight-12 star, reconstructed from D alone.
    let star = MarkedGraph::weighted(&[2, 3, 3, 4], vec![(0, 1), (0, 2), (0, 3)]).unwrap();
    let d = d_poly(&star);
    let (total, n, weights) = top_and_degree_one_from_d(&d).unwrap();
    println!("\nD-polynomial with N={total}, n={n}, weights {weights:?}");
    let pairs = strict_pairs_from_d2(&d2_layer(&d), total, n).unwrap();
    println!("peeled strict pairs: {pairs:?}");
    let rec = star_from_d(&d).unwrap();
    assert!(mark_isomorphic(&rec, &star).unwrap());
    println!("recovered the star with center 2 and leaves {{3,3,4}}");

    // Weight-28 2-star with equal centers: the correction-term path.
    let twostar = MarkedGraph::weighted(
        &[2, 2, 6, 5, 3, 2, 3, 4],
        vec![(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6), (1, 7)],
    )
    .unwrap();
    let d = d_poly(&twostar);
    let rec = twostar_from_d(&d).unwrap();
    assert!(mark_isomorphic(&rec, &twostar).unwrap());
    println!("\nrecovered the 2-star: centers 2/2, leaves {{6,5,3}} and {{2,3,4}} from D");
    let rec_m = twostar_from_m(&m_poly(&twostar)).unwrap();
    assert!(mark_isomorphic(&rec_m, &twostar).unwrap());
    println!("and the same tree from M");
}
