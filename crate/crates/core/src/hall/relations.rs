//! Exact checks of the defining relations of the quantum group.

use serde::Serialize;

use super::bridgeland::{BridgelandHall, DHElement, DHKey};
use super::element::{HallElement, HallStructure};
use super::ringel::RingelHall;
use crate::coeff::CoeffRing;
use crate::error::Result;
use crate::quiver::RepIsoClass;

/// Outcome of one relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub passed: bool,
    /// Number of nonzero terms in lhs − rhs.
    pub residual_terms: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub q: u64,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn check<K: Ord + Clone, R: CoeffRing>(name: String, lhs: &HallElement<K, R>, rhs: &HallElement<K, R>) -> Result<RelationCheck> {
    let d = lhs.sub(rhs)?;
    Ok(RelationCheck { relation: name, passed: d.is_zero(), residual_terms: d.len() })
}

/// Σ_s (−1)^s [1−a; s] x_j^s x_i x_j^{1−a−s}.
pub fn serre_element<K, H>(h: &H, unit: &K, xi: &HallElement<K, H::Ring>, xj: &HallElement<K, H::Ring>, a: i64) -> Result<HallElement<K, H::Ring>>
where
    K: Ord + Clone,
    H: HallStructure<K>,
{
    let r = h.ring();
    let top = (1 - a) as u32;
    let mut out = HallElement::zero(r);
    for s in 0..=top {
        let left = h.power(unit.clone(), xj, s as usize)?;
        let right = h.power(unit.clone(), xj, (top - s) as usize)?;
        let term = h.multiply(&h.multiply(&left, xi)?, &right)?;
        let mut c = r.qbinomial(top, s);
        if s % 2 == 1 {
            c = r.neg(&c);
        }
        out = out.add(&term.scale(&c))?;
    }
    Ok(out)
}

/// The quantum Serre relations among the u_{S_i} in the twisted Ringel–Hall algebra.
pub fn verify_ringel_serre(hall: &RingelHall) -> Result<RelationReport> {
    let q = hall.category().quiver();
    let unit = RepIsoClass::zero(q.n());
    let mut checks = Vec::new();
    for i in 0..q.n() {
        for j in 0..q.n() {
            if i == j {
                continue;
            }
            let lhs = serre_element(hall, &unit, &hall.simple(i), &hall.simple(j), q.cartan(i, j))?;
            checks.push(check(format!("Serre(u) i={} j={}", i + 1, j + 1), &lhs, &HallElement::zero(lhs.ring()))?);
        }
    }
    Ok(RelationReport { q: hall.category().q(), checks })
}

/// Every defining relation under E_i ↦ E_{S_i}/(q−1), F_i ↦ −v F_{S_i}/(q−1), K_i^{±1} ↦ b_{±Ŝ_i}.
pub fn verify_qgroup_relations(hall: &BridgelandHall) -> Result<RelationReport> {
    let dh = hall.dh();
    let q = hall.quiver();
    let n = q.n();
    let r = dh.ring().clone();
    let one = dh.unit();
    let unit_key: DHKey = one.terms().next().map(|(k, _)| k.clone()).expect("unit has one term");
    let e: Vec<DHElement> = (0..n).map(|i| dh.e(i)).collect::<Result<_>>()?;
    let f: Vec<DHElement> = (0..n).map(|i| dh.f(i)).collect::<Result<_>>()?;
    let k: Vec<DHElement> = (0..n).map(|i| dh.k(i, false)).collect::<Result<_>>()?;
    let kinv: Vec<DHElement> = (0..n).map(|i| dh.k(i, true)).collect::<Result<_>>()?;
    let mul = |a: &DHElement, b: &DHElement| dh.multiply(a, b);
    let mut checks = Vec::new();
    for i in 0..n {
        let l = i + 1;
        checks.push(check(format!("K{l} K{l}^-1 = 1"), &mul(&k[i], &kinv[i])?, &one)?);
        checks.push(check(format!("K{l}^-1 K{l} = 1"), &mul(&kinv[i], &k[i])?, &one)?);
        for j in 0..n {
            let m = j + 1;
            let a = q.cartan(i, j);
            if i < j {
                checks.push(check(format!("[K{l},K{m}] = 0"), &mul(&k[i], &k[j])?, &mul(&k[j], &k[i])?)?);
            }
            checks.push(check(format!("K{l} E{m} = v^{a} E{m} K{l}"), &mul(&k[i], &e[j])?, &mul(&e[j], &k[i])?.scale(&r.v_pow(a)))?);
            checks.push(check(format!("K{l} F{m} = v^{} F{m} K{l}", -a), &mul(&k[i], &f[j])?, &mul(&f[j], &k[i])?.scale(&r.v_pow(-a)))?);
            let comm = mul(&e[i], &f[j])?.sub(&mul(&f[j], &e[i])?)?;
            if i == j {
                let vv = r.inv(&r.sub(&r.v_pow(1), &r.v_pow(-1))).expect("v − v⁻¹ is invertible");
                let rhs = k[i].sub(&kinv[i])?.scale(&vv);
                checks.push(check(format!("[E{l},F{l}] = (K{l} - K{l}^-1)/(v - v^-1)"), &comm, &rhs)?);
            } else {
                checks.push(check(format!("[E{l},F{m}] = 0"), &comm, &HallElement::zero(&r))?);
                let se = serre_element(&dh, &unit_key, &e[i], &e[j], a)?;
                checks.push(check(format!("Serre(E) i={l} j={m}"), &se, &HallElement::zero(&r))?);
                let sf = serre_element(&dh, &unit_key, &f[i], &f[j], a)?;
                checks.push(check(format!("Serre(F) i={l} j={m}"), &sf, &HallElement::zero(&r))?);
            }
        }
    }
    Ok(RelationReport { q: hall.category().q(), checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::C2Category;
    use crate::gf::FiniteField;
    use crate::quiver::{DynkinQuiver, RepCategory};
    use std::sync::Arc;

    fn bridgeland(q: DynkinQuiver, p: u32) -> BridgelandHall {
        BridgelandHall::new(C2Category::new(RepCategory::new(Arc::new(q), FiniteField::prime(p).unwrap())), 1 << 22)
    }

    #[test]
    fn a1_relations() {
        let rep = verify_qgroup_relations(&bridgeland(DynkinQuiver::a_linear(1), 2)).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(rep.checks.len(), 5);
    }

    #[test]
    fn a2_relations_q3() {
        let rep = verify_qgroup_relations(&bridgeland(DynkinQuiver::a_linear(2), 3)).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert!(rep.checks.iter().any(|c| c.relation.starts_with("Serre(F)")));
    }

    #[test]
    fn ringel_serre_a2() {
        let hall = RingelHall::new(RepCategory::new(Arc::new(DynkinQuiver::a_linear(2)), FiniteField::prime(2).unwrap()), 1 << 20);
        let rep = verify_ringel_serre(&hall).unwrap();
        assert!(rep.all_passed());
        assert_eq!(rep.checks.len(), 2);
    }
}
