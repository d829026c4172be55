//! Two-periodic projective complexes over A2: realization, shift, cohomology, cones and orbit data.

use std::sync::Arc;

use hallq::complex::{complex_classes_with_ue, C2Category, ComplexClass};
use hallq::gf::FiniteField;
use hallq::quiver::{DynkinQuiver, RepCategory, RepIsoClass};

fn main() -> hallq::Result<()> {
    let q = Arc::new(DynkinQuiver::a_linear(2));
    let c2 = C2Category::new(RepCategory::new(q.clone(), FiniteField::prime(2)?));

    let s1 = RepIsoClass::from_root(&[1, 0]);
    let x = c2.realize(&ComplexClass::c(&s1))?;
    let (h0, h1) = c2.cohomology(&x)?;
    println!("C_S1: H0 = {h0}, H1 = {h1}, shift classifies as {}", c2.classify(&x.shift())?);

    let y = c2.realize(&ComplexClass::c(&RepIsoClass::from_root(&[0, 1])))?;
    let htp = c2.htp_data(&x, &y.shift());
    println!("Hom(C_S1, C_S2*): dim {}, homotopy classes of dimension {}", htp.hom_dim, htp.k2_dim());
    for f in htp.coset_reps(c2.field()) {
        let l = c2.cone(&x, &y, &f)?;
        println!("  extension middle term: {}", c2.classify(&l)?);
    }

    for c in complex_classes_with_ue(&q, &[0, 1], &[0, 1]) {
        println!("{:<24} |Aut| = {:<4} dim O = {}", c.to_string(), c2.aut_order(&c)?, c2.orbit_dim(&c)?);
    }
    Ok(())
}
