//! The V-polynomial over a commutative semigroup with exact rational edge
//! weights: states model vs recursion, the recipe theorem, and the
//! specialization that recovers M.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use starpoly::graph::MarkedGraph;
use starpoly::invariants::{
    check_semigroup_laws, eval_y_rational, m_poly, recipe_recursion, uniform_gamma, v_poly_dc,
    v_poly_states, vpoly_to_string, EdgeWeights, MarkDotSum, SGraph, WeightAdd,
};
use starpoly::mark::mk;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn main() {
    assert!(check_semigroup_laws(&WeightAdd, &[1, 2, 3, 9]));
    assert!(check_semigroup_laws(&MarkDotSum, &[mk(1, 0), mk(3, 1), mk(5, 4)]));

    let g = MarkedGraph::from_parts(
        vec![(0, mk(4, 1)), (1, mk(1, 0)), (2, mk(2, 0))],
        vec![(0, 1), (1, 2), (2, 0)],
    )
    .unwrap();
    let sg = SGraph::from_marked(&g, |m| m);

    // Two routes, one value.
    let gamma = uniform_gamma(&g, rat(-2, 3));
    let by_states = v_poly_states(&sg, &MarkDotSum, &gamma).unwrap();
    let by_rules = v_poly_dc(&sg, &MarkDotSum, &gamma).unwrap();
    assert_eq!(by_states, by_rules);
    println!(
        "V at gamma = -2/3: {}",
        vpoly_to_string(&by_states, &MarkDotSum)
    );

    // Recipe: f with edge constants (alpha, beta) equals (prod alpha) * V
    // at gamma = beta/alpha.
    let alpha: EdgeWeights = g.edges().iter().map(|e| (e.id, rat(2, 1))).collect();
    let beta: EdgeWeights = g.edges().iter().map(|e| (e.id, rat(3, 5))).collect();
    let f = recipe_recursion(&sg, &MarkDotSum, &alpha, &beta).unwrap();
    let v = v_poly_states(&sg, &MarkDotSum, &uniform_gamma(&g, rat(3, 10))).unwrap();
    let scale = rat(8, 1);
    for (key, c) in &v {
        assert_eq!(f[key], c * &scale);
    }
    println!("recipe identity holds at alpha = 2, beta = 3/5");

    // M(z, y) = (y-1)^(-|V|) V((y-1) z, gamma = y-1), checked at y = 4.
    let y = rat(4, 1);
    let ym1 = &y - BigRational::one();
    let v = v_poly_states(&sg, &MarkDotSum, &uniform_gamma(&g, ym1.clone())).unwrap();
    let m_at_y = eval_y_rational(&m_poly(&g), &y);
    for (key, c) in &v {
        let mut lhs = c.clone();
        for _ in 0..key.len() {
            lhs *= &ym1;
        }
        let mut rhs = m_at_y[key].clone();
        for _ in 0..g.n() {
            rhs *= &ym1;
        }
        assert_eq!(lhs, rhs);
    }
    println!("V specializes to M after the (y-1) scaling");
}
