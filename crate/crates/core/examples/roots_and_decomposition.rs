//! Positive roots of a few Dynkin quivers, and Krull-Schmidt decomposition of a representation
//! given by explicit matrices over F_3.

use std::sync::Arc;

use hallq::gf::{FieldMatrix, FiniteField};
use hallq::quiver::{DynkinQuiver, RepCategory, RepIsoClass, Representation};

fn main() -> hallq::Result<()> {
    for q in [DynkinQuiver::a_linear(3), DynkinQuiver::d_standard(4), DynkinQuiver::e_standard(6)] {
        println!("{}: {} positive roots", q.kind(), q.positive_roots().len());
    }

    let q = Arc::new(DynkinQuiver::a_linear(3));
    let f = FiniteField::prime(3)?;
    let cat = RepCategory::new(q.clone(), f.clone());
    // 1 -> 2 -> 3 with dims (2, 2, 1)
    let a = FieldMatrix::from_rows(&f, &[vec![1, 0], vec![0, 0]]);
    let b = FieldMatrix::from_rows(&f, &[vec![1, 1]]);
    let x = Representation::new(&q, &f, vec![2, 2, 1], vec![a, b])?;
    let class = cat.decompose(&x)?;
    println!("decomposition: {class}");
    for (root, mult) in class.terms() {
        println!("  root {root:?} x{mult}");
    }
    let res = cat.min_proj_resolution(&class)?;
    println!("projective resolution: P = {:?}, Q = {:?}", res.p_mult(3), res.q_mult(3));
    println!("|Aut| over F_3 = {}", cat.aut_order(&class));

    let again = cat.decompose(&cat.realize(&class)?)?;
    assert_eq!(again, class);
    let p1 = RepIsoClass::from_root(&q.projective_dim(0));
    println!("P_1 = {p1}");
    Ok(())
}
