//! The Ringel–Hall algebra of rep_{F_q}(Q): filtration numbers, twisted and extended products.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::element::{HallElement, HallStructure};
use crate::coeff::{CoeffRing, SqrtQ};
use crate::error::{Error, Result};
use crate::gf::{all_subspaces, enumerate_subspace, gaussian_binomial, Fe};
use crate::quiver::{aut_order, hom_dim, DimVector, ExtPresentation, RepCategory, RepIsoClass};

pub(crate) fn unit_basis(dims: &[usize]) -> Vec<Vec<Vec<Fe>>> {
    dims.iter().map(|&d| (0..d).map(|i| (0..d).map(|j| (i == j) as Fe).collect()).collect()).collect()
}

pub(crate) fn check_cap(what: &str, needed: &BigInt, cap: u64) -> Result<()> {
    if needed > &BigInt::from(cap) {
        return Err(Error::CapExceeded { what: what.into(), needed: needed.to_string(), cap });
    }
    Ok(())
}

fn sum_dims(a: &[i64], b: &[i64]) -> DimVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// g^L_{MN}: the number of subrepresentations L' ⊆ L with L' ≅ N and L/L' ≅ M, by exhaustive
/// enumeration of graded subspaces.
pub fn filtration_number_oracle(cat: &RepCategory, l: &RepIsoClass, m: &RepIsoClass, n: &RepIsoClass, cap: u64) -> Result<BigInt> {
    if l.dim() != &sum_dims(m.dim(), n.dim()) {
        return Ok(BigInt::zero());
    }
    let q = cat.quiver();
    let lrep = cat.realize(l)?;
    let ldims: Vec<usize> = lrep.dims().to_vec();
    let ndims: Vec<usize> = n.dim().iter().map(|&x| x as usize).collect();
    let total: BigInt = ldims.iter().zip(&ndims).map(|(&a, &b)| BigInt::from(gaussian_binomial(cat.q(), a, b))).product();
    check_cap("graded subspaces", &total, cap)?;
    let choices: Vec<Vec<Vec<Vec<Fe>>>> = ldims
        .iter()
        .zip(&ndims)
        .map(|(&a, &b)| all_subspaces(cat.field(), a, b).into_iter().map(|m| (0..m.rows()).map(|r| m.row(r).to_vec()).collect()).collect())
        .collect();
    let full = unit_basis(&ldims);
    let mut count = BigInt::zero();
    let mut idx = vec![0usize; ldims.len()];
    loop {
        let sub: Vec<Vec<Vec<Fe>>> = idx.iter().enumerate().map(|(k, &i)| choices[k][i].clone()).collect();
        if lrep.is_subrep(q, &sub)
            && &cat.decompose(&lrep.restrict(q, &sub))? == n
            && &cat.decompose(&lrep.subquotient(q, &full, &sub))? == m
        {
            count += 1;
        }
        // odometer over the vertexwise choices
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(count);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Counts of extension classes 0 → N → E → M → 0 by the iso-class of E: |Ext¹(M,N)_L| for every L.
pub fn extension_class_counts(cat: &RepCategory, m: &RepIsoClass, n: &RepIsoClass, cap: u64) -> Result<BTreeMap<RepIsoClass, BigInt>> {
    let q = cat.quiver();
    let (mrep, nrep) = (cat.realize(m)?, cat.realize(n)?);
    let ext = ExtPresentation::new(q, &mrep, &nrep);
    check_cap("extension classes", &BigInt::from(cat.q()).pow(ext.dim() as u32), cap)?;
    let mut out = BTreeMap::new();
    for phi in enumerate_subspace(cat.field(), ext.cocycle_len, &ext.complement) {
        let e = ext.middle_term(q, &mrep, &nrep, &phi);
        *out.entry(cat.decompose(&e)?).or_insert_with(BigInt::zero) += 1;
    }
    Ok(out)
}

/// Riedtmann–Peng: g^L_{MN} = |Ext¹(M,N)_L| / |Hom(M,N)| · a_L / (a_M a_N), for every L.
pub fn filtration_numbers_rp(cat: &RepCategory, m: &RepIsoClass, n: &RepIsoClass, cap: u64) -> Result<BTreeMap<RepIsoClass, BigInt>> {
    let q = cat.quiver();
    let qq = cat.q();
    let counts = extension_class_counts(cat, m, n, cap)?;
    let hom = BigInt::from(qq).pow(hom_dim(q, &cat.realize(m)?, &cat.realize(n)?) as u32);
    let den = &hom * aut_order(q, m, qq) * aut_order(q, n, qq);
    let mut out = BTreeMap::new();
    for (l, c) in counts {
        let num = c * aut_order(q, &l, qq);
        let (g, r) = num.div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NonIntegral(format!("Hall number for ({l}; {m}, {n}) at q={qq}")));
        }
        out.insert(l, g);
    }
    Ok(out)
}

pub fn filtration_number_rp(cat: &RepCategory, l: &RepIsoClass, m: &RepIsoClass, n: &RepIsoClass, cap: u64) -> Result<BigInt> {
    if l.dim() != &sum_dims(m.dim(), n.dim()) {
        return Ok(BigInt::zero());
    }
    Ok(filtration_numbers_rp(cat, m, n, cap)?.remove(l).unwrap_or_else(BigInt::zero))
}

/// The twisted Ringel–Hall algebra H_q(A) over Q(√q): u_M * u_N = v_q^{⟨M̂,N̂⟩} Σ_L g^L_{MN} u_L.
pub struct RingelHall {
    cat: RepCategory,
    ring: SqrtQ,
    cap: u64,
    table: Mutex<HashMap<(RepIsoClass, RepIsoClass), BTreeMap<RepIsoClass, BigInt>>>,
}

pub type HallElementA = HallElement<RepIsoClass, SqrtQ>;

impl RingelHall {
    pub fn new(cat: RepCategory, cap: u64) -> Self {
        let ring = SqrtQ::new(cat.q());
        RingelHall { cat, ring, cap, table: Mutex::new(HashMap::new()) }
    }

    pub fn category(&self) -> &RepCategory {
        &self.cat
    }

    /// All g^L_{MN} for fixed M, N (cached).
    pub fn hall_numbers(&self, m: &RepIsoClass, n: &RepIsoClass) -> Result<BTreeMap<RepIsoClass, BigInt>> {
        let key = (m.clone(), n.clone());
        if let Some(t) = self.table.lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let t = filtration_numbers_rp(&self.cat, m, n, self.cap)?;
        self.table.lock().unwrap().insert(key, t.clone());
        Ok(t)
    }

    pub fn unit(&self) -> HallElementA {
        HallElement::basis(&self.ring, RepIsoClass::zero(self.cat.quiver().n()))
    }

    pub fn u(&self, c: &RepIsoClass) -> HallElementA {
        HallElement::basis(&self.ring, c.clone())
    }

    pub fn simple(&self, i: usize) -> HallElementA {
        self.u(&RepIsoClass::from_root(&self.cat.quiver().unit(i)))
    }
}

impl HallStructure<RepIsoClass> for RingelHall {
    type Ring = SqrtQ;

    fn ring(&self) -> &SqrtQ {
        &self.ring
    }

    fn basis_product(&self, a: &RepIsoClass, b: &RepIsoClass) -> Result<Vec<(RepIsoClass, crate::coeff::QSqrt)>> {
        let tw = self.ring.v_pow(self.cat.quiver().euler_form(a.dim(), b.dim()));
        Ok(self
            .hall_numbers(a, b)?
            .into_iter()
            .map(|(l, g)| (l, self.ring.mul(&tw, &self.ring.from_bigint(&g))))
            .collect())
    }
}

/// Key of the extended algebra: K_α · u_M.
pub type ExtendedKey = (DimVector, RepIsoClass);

/// The extended algebra H_q(A) ⊗ Q[K(A)] with K_α u_M = v_q^{(α, M̂)} u_M K_α, in normal form K_α · u_M.
pub struct ExtendedRingel<'a> {
    pub hall: &'a RingelHall,
}

impl<'a> ExtendedRingel<'a> {
    pub fn k(&self, alpha: &[i64]) -> HallElement<ExtendedKey, SqrtQ> {
        HallElement::basis(&self.hall.ring, (alpha.to_vec(), RepIsoClass::zero(alpha.len())))
    }
    pub fn u(&self, c: &RepIsoClass) -> HallElement<ExtendedKey, SqrtQ> {
        HallElement::basis(&self.hall.ring, (vec![0; c.dim().len()], c.clone()))
    }
}

impl<'a> HallStructure<ExtendedKey> for ExtendedRingel<'a> {
    type Ring = SqrtQ;

    fn ring(&self) -> &SqrtQ {
        &self.hall.ring
    }

    fn basis_product(&self, a: &ExtendedKey, b: &ExtendedKey) -> Result<Vec<(ExtendedKey, crate::coeff::QSqrt)>> {
        // K_α u_M K_β u_N = v^{−(β, M̂)} K_{α+β} u_M u_N
        let q = self.hall.cat.quiver();
        let shift = self.hall.ring.v_pow(-q.sym_euler_form(&b.0, a.1.dim()));
        let alpha: DimVector = sum_dims(&a.0, &b.0);
        Ok(self
            .hall
            .basis_product(&a.1, &b.1)?
            .into_iter()
            .map(|(l, c)| ((alpha.clone(), l), self.hall.ring.mul(&shift, &c)))
            .collect())
    }
}

/// Number of graded subspace candidates the oracle would enumerate.
pub fn oracle_size(cat: &RepCategory, l: &RepIsoClass, n: &RepIsoClass) -> u128 {
    l.dim().iter().zip(n.dim()).map(|(&a, &b)| gaussian_binomial(cat.q(), a as usize, b.max(0) as usize)).product()
}

/// Hall numbers as small integers, for tables.
pub fn to_u64(g: &BigInt) -> u64 {
    g.to_u64().expect("Hall number fits in u64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FiniteField;
    use crate::quiver::{classes_of_dim, classes_up_to, DynkinQuiver};
    use std::sync::Arc;

    fn a2(p: u32) -> RepCategory {
        RepCategory::new(Arc::new(DynkinQuiver::a_linear(2)), FiniteField::prime(p).unwrap())
    }
    fn cl(s: &str) -> RepIsoClass {
        RepIsoClass::parse(2, s).unwrap()
    }

    #[test]
    fn filtration_examples() {
        for p in [2, 3] {
            let c = a2(p);
            let (p1, s1, s2) = (cl("(1,1)"), cl("(1,0)"), cl("(0,1)"));
            assert_eq!(filtration_number_oracle(&c, &p1, &s1, &s2, 1 << 20).unwrap(), BigInt::from(1));
            assert_eq!(filtration_number_rp(&c, &p1, &s1, &s2, 1 << 20).unwrap(), BigInt::from(1));
            let split = cl("(1,0)+(0,1)");
            assert_eq!(filtration_number_oracle(&c, &split, &s2, &s1, 1 << 20).unwrap(), BigInt::from(1));
            assert_eq!(filtration_number_rp(&c, &split, &s1, &s2, 1 << 20).unwrap(), BigInt::from(1));
            assert_eq!(filtration_number_rp(&c, &p1, &s2, &s1, 1 << 20).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn oracle_cap_is_enforced() {
        let c = a2(2);
        let l = cl("2*(1,0)+2*(0,1)");
        let r = filtration_number_oracle(&c, &l, &cl("(1,0)+(0,1)"), &cl("(1,0)+(0,1)"), 3);
        assert!(matches!(r, Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn oracle_agrees_with_rp_in_a2() {
        let c = a2(2);
        let q = c.quiver();
        let window = classes_up_to(q, &[2, 2]);
        for m in &window {
            for n in &window {
                let d = sum_dims(m.dim(), n.dim());
                if d[0] > 2 || d[1] > 2 {
                    continue;
                }
                let rp = filtration_numbers_rp(&c, m, n, 1 << 20).unwrap();
                for l in classes_of_dim(q, &d) {
                    let o = filtration_number_oracle(&c, &l, m, n, 1 << 20).unwrap();
                    assert_eq!(rp.get(&l).cloned().unwrap_or_default(), o, "({l}; {m}, {n})");
                }
            }
        }
    }

    #[test]
    fn twisted_product_example() {
        let h = RingelHall::new(a2(2), 1 << 20);
        let r = *h.ring();
        let x = h.multiply(&h.simple(0), &h.simple(1)).unwrap();
        let expect = HallElement::from_terms(&r, [(cl("(1,0)+(0,1)"), r.v_pow(-1)), (cl("(1,1)"), r.v_pow(-1))]);
        assert_eq!(x, expect);
        let y = h.multiply(&h.simple(1), &h.simple(0)).unwrap();
        assert_eq!(y, h.u(&cl("(1,0)+(0,1)")));
        assert_eq!(h.multiply(&h.unit(), &x).unwrap(), x);
    }

    #[test]
    fn extended_commutation() {
        let h = RingelHall::new(a2(3), 1 << 20);
        let e = ExtendedRingel { hall: &h };
        let r = *h.ring();
        let ks1 = e.k(&[1, 0]);
        let us2 = e.u(&cl("(0,1)"));
        // u_{S_2} K_{S_1} = v^{−(Ŝ_1, Ŝ_2)} K_{S_1} u_{S_2} = v K_{S_1} u_{S_2}
        let lhs = e.multiply(&us2, &ks1).unwrap();
        assert_eq!(lhs, HallElement::monomial(&r, (vec![1, 0], cl("(0,1)")), r.v_pow(1)));
        let kk = e.multiply(&e.k(&[1, 0]), &e.k(&[-1, 2])).unwrap();
        assert_eq!(kk, e.k(&[0, 2]));
    }
}
