//! The quantum group relations in the reduced Drinfeld double, and the Serre relations of the
//! simple classes in the twisted Ringel-Hall algebra.

use std::sync::Arc;

use hallq::complex::C2Category;
use hallq::gf::FiniteField;
use hallq::hall::{verify_qgroup_relations, verify_ringel_serre, BridgelandHall, RingelHall};
use hallq::quiver::{DynkinQuiver, RepCategory};

fn main() -> hallq::Result<()> {
    let q = Arc::new(DynkinQuiver::a_linear(3));
    for p in [2, 3] {
        let cat = || RepCategory::new(q.clone(), FiniteField::prime(p).unwrap());
        let qg = verify_qgroup_relations(&BridgelandHall::new(C2Category::new(cat()), 1 << 22))?;
        let serre = verify_ringel_serre(&RingelHall::new(cat(), 1 << 22))?;
        println!("A3, q = {p}: {} relations, all hold: {}", qg.checks.len(), qg.all_passed());
        println!("           {} Serre relations, all hold: {}", serre.checks.len(), serre.all_passed());
        if p == 2 {
            for c in qg.checks.iter().take(6) {
                println!("    {:<40} {}", c.relation, if c.passed { "ok" } else { "FAILS" });
            }
        }
    }
    Ok(())
}
