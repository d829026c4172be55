//! res coefficients of Bridgeland's algebra against twisted Hall numbers, plus coassociativity.

use std::sync::Arc;

use hallq::complex::{complex_classes_up_to, C2Category, ComplexClass};
use hallq::gf::FiniteField;
use hallq::hall::{res_coassociativity, res_duality, BridgelandHall};
use hallq::quiver::{DynkinQuiver, RepCategory};

fn main() -> hallq::Result<()> {
    let q = Arc::new(DynkinQuiver::a_linear(2));
    let h = BridgelandHall::new(C2Category::new(RepCategory::new(q.clone(), FiniteField::prime(2)?)), 1 << 22);

    let (m, n) = (ComplexClass::k(&[0, 1]), ComplexClass::k_star(&[0, 1]));
    for l in [m.direct_sum(&n), ComplexClass::zero(2)] {
        println!("res^{l}_(K,K*) = {}", h.res_coefficient(&l, &m, &n)?);
    }

    let bound = (vec![1, 1], vec![1, 1]);
    let window = complex_classes_up_to(&q, &bound.0, &bound.1);
    let d = res_duality(&h, &window)?;
    println!("duality: {} triples, {} failures", d.checked, d.failures.len());
    let c = res_coassociativity(&h, &window, &bound)?;
    println!("coassociativity: {} triples, {} failures", c.checked, c.failures.len());
    Ok(())
}
