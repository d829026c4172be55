//! Canonical basis of the positive part for A2 in degree (2,2), with its dual.

use std::sync::Arc;

use hallq::generic::{canonical_basis, GenericStructureTable, RepSide};
use hallq::quiver::DynkinQuiver;

fn main() -> hallq::Result<()> {
    let q = Arc::new(DynkinQuiver::a_linear(2));
    let table = GenericStructureTable::<RepSide>::build(q, vec![2, 2], &[2, 3, 5, 7, 11], 1 << 22)?;
    let cb = canonical_basis(&table.algebra(), &[2, 2])?;
    println!("classes in orbit order: {:?}", cb.classes.iter().map(|c| c.to_string()).collect::<Vec<_>>());
    let show = |name: &str, m: &Vec<Vec<hallq::coeff::LaurentPoly>>| {
        println!("{name}:");
        for row in m {
            println!("  {}", row.iter().map(|x| format!("{:>28}", x.to_string())).collect::<Vec<_>>().join(""));
        }
    };
    show("bar transition", &cb.bar);
    show("canonical basis", &cb.coeffs);
    show("dual canonical basis", &cb.dual());
    println!(
        "bar invariant: {}, unitriangular: {}, positive: {}",
        cb.is_bar_invariant(),
        cb.is_unitriangular(),
        cb.positive
    );
    Ok(())
}
