//! Hall numbers on both sides at a fixed prime, cross-checked by brute-force enumeration.

use std::sync::Arc;

use hallq::complex::{C2Category, ComplexClass};
use hallq::gf::FiniteField;
use hallq::hall::{filtration_number_oracle, subcomplex_oracle, BridgelandHall, HallStructure, RingelHall};
use hallq::quiver::{DynkinQuiver, RepCategory, RepIsoClass};

fn main() -> hallq::Result<()> {
    let q = Arc::new(DynkinQuiver::a_linear(2));
    let cat = || RepCategory::new(q.clone(), FiniteField::prime(3).unwrap());
    let cap = 1 << 22;

    let ringel = RingelHall::new(cat(), cap);
    let (s1, s2) = (RepIsoClass::from_root(&[1, 0]), RepIsoClass::from_root(&[0, 1]));
    for (l, g) in ringel.hall_numbers(&s1, &s2)? {
        let oracle = filtration_number_oracle(ringel.category(), &l, &s1, &s2, cap)?;
        println!("g^{l}_(S1,S2) = {g}   (enumeration: {oracle})");
    }
    let prod = ringel.multiply(&ringel.simple(0), &ringel.simple(1))?;
    println!("u_S1 * u_S2 =");
    for (l, c) in prod.terms() {
        println!("  {c}  u_{l}");
    }

    let bridge = BridgelandHall::new(C2Category::new(cat()), cap);
    let c = ComplexClass::c(&s2);
    let l = ComplexClass::c(&s2.scale(2));
    let g = bridge.hall_number(&l, &c, &c)?;
    let oracle = subcomplex_oracle(bridge.category(), &l, &c, &c, cap)?;
    println!("g^(C_S2^2)_(C_S2,C_S2) at q=3: {g}   (enumeration: {oracle})");
    let (k, ks) = (ComplexClass::k(&[0, 1]), ComplexClass::k_star(&[0, 1]));
    println!("g^(K+K*)_(K,K*) at q=3: {}", bridge.hall_number(&k.direct_sum(&ks), &k, &ks)?);
    Ok(())
}
