//! Products in the reduced Drinfeld double, written in the normal form b_α (a_r u_r).

use std::sync::Arc;

use hallq::coeff::CoeffRing;
use hallq::complex::{C2Category, ComplexClass};
use hallq::gf::FiniteField;
use hallq::hall::{BridgelandHall, HallStructure};
use hallq::io::serialize_dh;
use hallq::quiver::{DynkinQuiver, RepCategory, RepIsoClass};

fn main() -> hallq::Result<()> {
    let q = Arc::new(DynkinQuiver::a_linear(2));
    let h = BridgelandHall::new(C2Category::new(RepCategory::new(q, FiniteField::prime(3)?)), 1 << 22);
    let dh = h.dh();
    let r = *dh.ring();

    let (e1, f1) = (dh.e(0)?, dh.f(0)?);
    let comm = dh.multiply(&e1, &f1)?.sub(&dh.multiply(&f1, &e1)?)?;
    let vv = r.inv(&r.sub(&r.v_pow(1), &r.v_pow(-1))).unwrap();
    let rhs = dh.k(0, false)?.sub(&dh.k(0, true)?)?.scale(&vv);
    println!("[E1, F1] = (K1 - K1^-1)/(v - v^-1): {}", comm == rhs);

    let x = dh.multiply(&dh.e(1)?, &dh.e(0)?)?;
    println!("E2 E1 =");
    for ((alpha, cls), c) in x.terms() {
        println!("  b{alpha:?} {cls:<28} {c}");
    }

    let cp = ComplexClass::c(&RepIsoClass::from_root(&[1, 1]));
    let y = dh.multiply(&dh.b(&[1, -1]), &dh.term(&[0, 0], &cp)?)?;
    println!("{}", serde_json::to_string(&serialize_dh(&y)).unwrap());
    Ok(())
}
