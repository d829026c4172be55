//! Leading coefficients of the map M ↦ C_M from representations to complexes.

use std::sync::Arc;

use hallq::complex::C2Category;
use hallq::generic::phi_embedding_check;
use hallq::gf::FiniteField;
use hallq::hall::{BridgelandHall, RingelHall};
use hallq::quiver::{classes_up_to, DynkinQuiver, RepCategory};

fn main() -> hallq::Result<()> {
    let q = Arc::new(DynkinQuiver::a_linear(2));
    let cat = || RepCategory::new(q.clone(), FiniteField::prime(3).unwrap());
    let ringel = RingelHall::new(cat(), 1 << 22);
    let bridge = BridgelandHall::new(C2Category::new(cat()), 1 << 22);
    for m in classes_up_to(&q, &[2, 2]).iter().filter(|m| m.num_summands() > 1) {
        let r = phi_embedding_check(&ringel, &bridge, m)?;
        println!("{:<16} parts {:?} rigid {}", r.class, r.parts, r.rigid);
        for c in &r.checks {
            println!("    {:<5} {}", if c.passed { "ok" } else { "FAIL" }, c.detail);
        }
    }
    Ok(())
}
