//! Hall polynomials: counts at several primes, fitted in q and checked on a held-out prime.

use std::sync::Arc;

use hallq::complex::ComplexClass;
use hallq::generic::{interpolate_structure_poly, specialize, ComplexSide, GenericStructureTable, RepSide};
use hallq::hall::HallStructure;
use hallq::quiver::{DynkinQuiver, RepIsoClass};

fn main() -> hallq::Result<()> {
    let q = Arc::new(DynkinQuiver::a_linear(2));
    let primes = [2, 3, 5, 7, 11];

    let table = GenericStructureTable::<RepSide>::build(q.clone(), vec![2, 2], &primes, 1 << 22)?;
    println!("A side, window (2,2): {} nonzero triples", table.rows().len());
    for row in table.rows().iter().filter(|r| r.poly.len() > 1).take(5) {
        println!("  g^{}_({}, {}) coefficients {:?}, counts {:?}", row.l, row.m, row.n, row.poly, row.counts);
    }

    let g = table.algebra();
    let (s1, s2) = (RepIsoClass::from_root(&[1, 0]), RepIsoClass::from_root(&[0, 1]));
    let x = g.multiply(&g.u(&s2), &g.u(&s1))?;
    for (l, c) in x.terms() {
        println!("generic u_S2 * u_S1: coefficient {c} on u_{l}");
    }
    for (l, c) in specialize(&x, 4).terms() {
        println!("at q = 4: {c} on u_{l}");
    }

    let (k, ks) = (ComplexClass::k(&[0, 1]), ComplexClass::k_star(&[0, 1]));
    let poly = interpolate_structure_poly::<ComplexSide>(&q, &k.direct_sum(&ks), &k, &ks, &primes, 1 << 22)?;
    println!("g^(K+K*)_(K,K*) = {poly}");
    Ok(())
}
