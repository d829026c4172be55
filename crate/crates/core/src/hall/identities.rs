//! Exhaustive identity checks over bounded windows: the duality between res coefficients and
//! Hall numbers, coassociativity of res, and associativity of products.

use std::collections::BTreeMap;

use serde::Serialize;

use super::bridgeland::{ue_pairing, BridgelandHall};
use super::element::{HallElement, HallStructure};
use crate::coeff::{CoeffRing, QSqrt};
use crate::complex::{class_ue, ComplexClass};
use crate::error::Result;

/// How many instances were checked and which ones failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Total ue of the parts stays inside `bound`.
pub fn ue_fits(h: &BridgelandHall, bound: &(Vec<usize>, Vec<usize>), parts: &[&ComplexClass]) -> bool {
    let n = h.n();
    let (mut e1, mut e0) = (vec![0; n], vec![0; n]);
    for p in parts {
        let (a, b) = class_ue(h.quiver(), p);
        for i in 0..n {
            e1[i] += a[i];
            e0[i] += b[i];
        }
    }
    (0..n).all(|i| e1[i] <= bound.0[i] && e0[i] <= bound.1[i])
}

/// res^L_{MN} = v^{|ue_M,ue_N|} g^L_{MN} a_M a_N / a_L for every L, with M, N in `classes`.
pub fn res_duality(h: &BridgelandHall, classes: &[ComplexClass]) -> Result<Tally> {
    let r = *h.ring();
    let mut t = Tally::default();
    for m in classes {
        for n in classes {
            let am = h.aut(m)?;
            let an = h.aut(n)?;
            let tw = r.v_pow(ue_pairing(h.quiver(), m, n));
            let hall = h.hall_numbers(m, n)?;
            let ext = h.ext_counts(m, n)?;
            // the support of both sides is the set of extension classes
            let mut support: Vec<&ComplexClass> = hall.keys().chain(ext.counts.keys()).collect();
            support.sort();
            support.dedup();
            for l in support {
                let res = h.res_coefficient(l, m, n)?;
                let g = hall.get(l).cloned().unwrap_or_default();
                let al = r.from_bigint(&h.aut(l)?);
                let rhs = r.mul(&tw, &r.mul(&r.from_bigint(&(g * &am * &an)), &r.inv(&al).expect("nonzero")));
                t.record(res == rhs, || format!("L={l} M={m} N={n}: res {res} vs {rhs}"));
            }
        }
    }
    Ok(t)
}

fn res_row(h: &BridgelandHall, m: &ComplexClass, n: &ComplexClass) -> Result<BTreeMap<ComplexClass, QSqrt>> {
    let ext = h.ext_counts(m, n)?;
    ext.counts.keys().map(|l| Ok((l.clone(), h.res_coefficient(l, m, n)?))).collect()
}

/// Σ_X res^L_{XP} res^X_{MN} = Σ_Y res^L_{MY} res^Y_{NP} for all M, N, P with total ue in `bound`.
pub fn res_coassociativity(h: &BridgelandHall, classes: &[ComplexClass], bound: &(Vec<usize>, Vec<usize>)) -> Result<Tally> {
    let r = *h.ring();
    let mut t = Tally::default();
    for m in classes {
        for n in classes {
            if !ue_fits(h, bound, &[m, n]) {
                continue;
            }
            for p in classes {
                if !ue_fits(h, bound, &[m, n, p]) {
                    continue;
                }
                let mut lhs: BTreeMap<ComplexClass, QSqrt> = BTreeMap::new();
                for (x, c) in res_row(h, m, n)? {
                    for (l, d) in res_row(h, &x, p)? {
                        let e = lhs.entry(l).or_insert_with(|| r.zero());
                        *e = r.add(e, &r.mul(&c, &d));
                    }
                }
                let mut rhs: BTreeMap<ComplexClass, QSqrt> = BTreeMap::new();
                for (y, c) in res_row(h, n, p)? {
                    for (l, d) in res_row(h, m, &y)? {
                        let e = rhs.entry(l).or_insert_with(|| r.zero());
                        *e = r.add(e, &r.mul(&c, &d));
                    }
                }
                lhs.retain(|_, c| !r.is_zero(c));
                rhs.retain(|_, c| !r.is_zero(c));
                t.record(lhs == rhs, || format!("M={m} N={n} P={p}"));
            }
        }
    }
    Ok(t)
}

/// (x y) z = x (y z) on basis triples accepted by `fits`.
pub fn associativity<K, H>(h: &H, classes: &[K], fits: impl Fn(&K, &K, &K) -> bool) -> Result<Tally>
where
    K: Ord + Clone + std::fmt::Debug,
    H: HallStructure<K>,
{
    let r = h.ring();
    let mut t = Tally::default();
    for a in classes {
        for b in classes {
            for c in classes {
                if !fits(a, b, c) {
                    continue;
                }
                let (x, y, z) = (HallElement::basis(r, a.clone()), HallElement::basis(r, b.clone()), HallElement::basis(r, c.clone()));
                let lhs = h.multiply(&h.multiply(&x, &y)?, &z)?;
                let rhs = h.multiply(&x, &h.multiply(&y, &z)?)?;
                t.record(lhs == rhs, || format!("{a:?} {b:?} {c:?}"));
            }
        }
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complex_classes_up_to, C2Category};
    use crate::gf::FiniteField;
    use crate::quiver::{DynkinQuiver, RepCategory};
    use std::sync::Arc;

    fn hall(p: u32) -> BridgelandHall {
        BridgelandHall::new(C2Category::new(RepCategory::new(Arc::new(DynkinQuiver::a_linear(2)), FiniteField::prime(p).unwrap())), 1 << 22)
    }

    #[test]
    fn a2_small_window() {
        let h = hall(2);
        let b = (vec![1, 0], vec![0, 1]);
        let w = complex_classes_up_to(h.quiver(), &b.0, &b.1);
        assert!(res_duality(&h, &w).unwrap().passed());
        let c = res_coassociativity(&h, &w, &b).unwrap();
        assert!(c.passed() && c.checked > 0, "{c:?}");
        let a = associativity(&h, &w, |x, y, z| ue_fits(&h, &b, &[x, y, z])).unwrap();
        assert!(a.passed() && a.checked > 0);
    }
}
