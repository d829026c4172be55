//! The three orbits of complexes with ue = (P, P): orbit geometry against the stored transition
//! matrix and its dual.

use std::sync::Arc;

use hallq::generic::{three_orbit_check, three_orbit_golden};
use hallq::quiver::DynkinQuiver;

fn main() -> hallq::Result<()> {
    let g = three_orbit_golden()?;
    println!("orbits: {:?}", g.orbits);
    for row in &g.transition {
        println!("  {}", row.iter().map(|x| format!("{:>8}", x.to_string())).collect::<Vec<_>>().join(""));
    }
    let checks = three_orbit_check(&Arc::new(DynkinQuiver::a_linear(3)), &[2, 3, 5])?;
    for c in checks.iter().filter(|c| !c.name.ends_with("three orbits")) {
        println!("{:<5} {} {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail);
    }
    println!("{} of {} checks pass", checks.iter().filter(|c| c.passed).count(), checks.len());
    Ok(())
}
