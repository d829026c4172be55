//! The Hall algebra of C_2(P) and its reduced localization in torus normal form.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::element::{HallElement, HallStructure};
use super::ringel::check_cap;
use crate::coeff::{CoeffRing, QSqrt, SqrtQ};
use crate::complex::{
    add_left_product, class_degree_dims, class_ue, C2Category, ComplexClass, ComplexObj,
};
use crate::error::{Error, Result};
use crate::gf::{enumerate_subspace, extend_to_span, Fe, FieldMatrix};
use crate::quiver::proj::{end_dim, pattern_positions, verts_from_mult};
use crate::quiver::{gl_order, DimVector, DynkinQuiver, RepIsoClass};

pub type HallElementC2 = HallElement<ComplexClass, SqrtQ>;

/// Key of the reduced algebra: b_α * (a_r u_r) with r radical.
pub type DHKey = (DimVector, ComplexClass);
pub type DHElement = HallElement<DHKey, SqrtQ>;

fn add_vec(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn add_dims(a: &[i64], b: &[i64]) -> DimVector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Extension classes of M by N in C_2(P), grouped by middle term.
#[derive(Clone, Debug)]
pub struct ExtCounts {
    /// |Ext¹(M,N)_L| for each middle term L.
    pub counts: BTreeMap<ComplexClass, BigInt>,
    pub hom_dim: usize,
    /// dim Htp(M, N*).
    pub htp_dim: usize,
}

/// Counts middle terms of cones over one representative per homotopy class in Hom(M, N*).
pub fn extension_counts_c2(c2: &C2Category, m: &ComplexClass, n: &ComplexClass, cap: u64) -> Result<ExtCounts> {
    let x = c2.realize(m)?;
    let y = c2.realize(n)?;
    let ys = y.shift();
    let htp = c2.htp_data(&x, &ys);
    check_cap("homotopy classes", &BigInt::from(c2.q()).pow(htp.k2_dim() as u32), cap)?;
    let mut counts = BTreeMap::new();
    for f in htp.coset_reps(c2.field()) {
        let l = c2.classify(&c2.cone(&x, &y, &f)?)?;
        *counts.entry(l).or_insert_with(BigInt::zero) += 1;
    }
    Ok(ExtCounts { counts, hom_dim: c2.hom_c2_dim(&x, &y), htp_dim: htp.htp_dim })
}

fn ue_additive(q: &DynkinQuiver, l: &ComplexClass, m: &ComplexClass, n: &ComplexClass) -> bool {
    let (l1, l0) = class_ue(q, l);
    let (m1, m0) = class_ue(q, m);
    let (n1, n0) = class_ue(q, n);
    l1 == add_vec(&m1, &n1) && l0 == add_vec(&m0, &n0)
}

/// Riedtmann–Peng in C_2(P): g^L_{MN} = |Ext¹(M,N)_L| / |Hom(M,N)| · a_L / (a_M a_N).
pub fn hall_numbers_from_counts(
    c2: &C2Category,
    m: &ComplexClass,
    n: &ComplexClass,
    ext: &ExtCounts,
    aut: &dyn Fn(&ComplexClass) -> Result<BigInt>,
) -> Result<BTreeMap<ComplexClass, BigInt>> {
    let den = BigInt::from(c2.q()).pow(ext.hom_dim as u32) * aut(m)? * aut(n)?;
    let mut out = BTreeMap::new();
    for (l, c) in &ext.counts {
        let (g, r) = (c * aut(l)?).div_rem(&den);
        if !r.is_zero() {
            return Err(Error::NonIntegral(format!("Hall number for ({l}; {m}, {n}) at q={}", c2.q())));
        }
        out.insert(l.clone(), g);
    }
    Ok(out)
}

pub fn hall_number_c2(c2: &C2Category, l: &ComplexClass, m: &ComplexClass, n: &ComplexClass, cap: u64) -> Result<BigInt> {
    if !ue_additive(c2.quiver(), l, m, n) {
        return Ok(BigInt::zero());
    }
    let ext = extension_counts_c2(c2, m, n, cap)?;
    let aut = |c: &ComplexClass| c2.aut_order(c);
    Ok(hall_numbers_from_counts(c2, m, n, &ext, &aut)?.remove(l).unwrap_or_else(BigInt::zero))
}

/// Order of Aut_A of the projective ⊕ P_i^{e_i}.
pub fn projective_aut_order(q: &DynkinQuiver, qq: u64, e: &[usize]) -> BigInt {
    let verts = verts_from_mult(e);
    let sq: usize = e.iter().map(|m| m * m).sum();
    let mut a = BigInt::from(qq).pow((end_dim(q, &verts) - sq) as u32);
    for &m in e {
        a *= gl_order(qq, m);
    }
    a
}

fn same_vertex(verts: &[usize], k: usize) -> Vec<usize> {
    (0..verts.len()).filter(|&r| verts[r] == k).collect()
}

fn is_split_mono(n: usize, rows: &[usize], cols: &[usize], m: &FieldMatrix) -> bool {
    (0..n).all(|k| {
        let c = same_vertex(cols, k);
        c.is_empty() || m.submatrix(&same_vertex(rows, k), &c).rank() == c.len()
    })
}

/// Extends a split mono ι: ⊕P(cols) → ⊕P(rows) to an isomorphism [ι | units]; returns it with the
/// vertices of the added copies.
fn complete_split_mono(n: usize, field: &crate::gf::FiniteField, rows: &[usize], cols: &[usize], m: &FieldMatrix) -> (FieldMatrix, Vec<usize>) {
    let mut extra_cols: Vec<Vec<Fe>> = Vec::new();
    let mut extra_verts = Vec::new();
    for k in 0..n {
        let rk = same_vertex(rows, k);
        let block: Vec<Vec<Fe>> = same_vertex(cols, k).iter().map(|&c| rk.iter().map(|&r| m.get(r, c)).collect()).collect();
        let units: Vec<Vec<Fe>> = (0..rk.len()).map(|i| (0..rk.len()).map(|j| (i == j) as Fe).collect()).collect();
        let base = extend_to_span(field, rk.len(), &[], &block);
        for u in extend_to_span(field, rk.len(), &base, &units) {
            let i = u.iter().position(|&x| x != 0).expect("unit vector");
            let mut col = vec![0; rows.len()];
            col[rk[i]] = 1;
            extra_cols.push(col);
            extra_verts.push(k);
        }
    }
    let ext = FieldMatrix::from_columns(field, rows.len(), &extra_cols);
    (m.hstack(&ext), extra_verts)
}

/// Exhaustive subobject count in a realization of L: for every pair of projective summands
/// (W¹, W⁰) with W¹ ≅ ⊕P(e¹), W⁰ ≅ ⊕P(e⁰) that is stable under both differentials, tallies the
/// classes of the subcomplex and of the quotient.
pub fn subcomplex_tally(
    c2: &C2Category,
    l: &ComplexClass,
    e1: &[usize],
    e0: &[usize],
    cap: u64,
) -> Result<BTreeMap<(ComplexClass, ComplexClass), BigInt>> {
    let q = c2.quiver();
    let f = c2.field();
    let n = q.n();
    let x = c2.realize(l)?;
    let (l1, l0) = (x.verts1(), x.verts0());
    let (nv1, nv0) = (verts_from_mult(e1), verts_from_mult(e0));
    let mut tally: BTreeMap<(ComplexClass, ComplexClass), BigInt> = BTreeMap::new();
    let (le1, le0) = x.ue(n);
    if (0..n).any(|i| e1[i] > le1[i] || e0[i] > le0[i]) {
        return Ok(tally);
    }
    let pos1 = pattern_positions(q, l1, &nv1);
    let pos0 = pattern_positions(q, l0, &nv0);
    let xpos = pattern_positions(q, &nv1, &nv0);
    check_cap("subcomplex frames", &BigInt::from(c2.q()).pow((pos1.len() + pos0.len()) as u32), cap)?;
    let unpack = |pos: &[(usize, usize)], rows: usize, cols: usize, v: &[Fe]| {
        let mut m = FieldMatrix::zeros(f, rows, cols);
        for (k, &(r, c)) in pos.iter().enumerate() {
            m.set(r, c, v[k]);
        }
        m
    };
    let units = |len: usize| -> Vec<Vec<Fe>> { (0..len).map(|i| (0..len).map(|j| (i == j) as Fe).collect()).collect() };
    let minus = f.neg(1);
    for v1 in enumerate_subspace(f, pos1.len(), &units(pos1.len())) {
        let i1 = unpack(&pos1, l1.len(), nv1.len(), &v1);
        if !is_split_mono(n, l1, &nv1, &i1) {
            continue;
        }
        // ι⁰ must admit X with d⁰ ι⁰ = ι¹ X
        let mut sys = FieldMatrix::zeros(f, l1.len() * nv0.len(), pos0.len() + xpos.len());
        add_left_product(f, &mut sys, 0, nv0.len(), x.d0(), &pos0, 0, 1);
        add_left_product(f, &mut sys, 0, nv0.len(), &i1, &xpos, pos0.len(), minus);
        let proj: Vec<Vec<Fe>> = sys.nullspace_basis().into_iter().map(|v| v[..pos0.len()].to_vec()).collect();
        let vbasis = extend_to_span(f, pos0.len(), &[], &proj);
        let (t1, extra1) = complete_split_mono(n, f, l1, &nv1, &i1);
        let t1inv = t1.inverse().ok_or_else(|| Error::Inconsistent("completion is not invertible".into()))?;
        for v0 in enumerate_subspace(f, pos0.len(), &vbasis) {
            let i0 = unpack(&pos0, l0.len(), nv0.len(), &v0);
            if !is_split_mono(n, l0, &nv0, &i0) {
                continue;
            }
            let (t0, extra0) = complete_split_mono(n, f, l0, &nv0, &i0);
            let t0inv = t0.inverse().ok_or_else(|| Error::Inconsistent("completion is not invertible".into()))?;
            let d1 = t0inv.mul(x.d1()).mul(&t1);
            let d0 = t1inv.mul(x.d0()).mul(&t0);
            let (a1, a0) = (nv1.len(), nv0.len());
            let (b1, b0) = (l1.len(), l0.len());
            let top1: Vec<usize> = (0..a1).collect();
            let top0: Vec<usize> = (0..a0).collect();
            let bot1: Vec<usize> = (a1..b1).collect();
            let bot0: Vec<usize> = (a0..b0).collect();
            if !d1.submatrix(&bot0, &top1).is_zero() || !d0.submatrix(&bot1, &top0).is_zero() {
                continue;
            }
            let sub = ComplexObj::new(q, nv1.clone(), nv0.clone(), d1.submatrix(&top0, &top1), d0.submatrix(&top1, &top0))?;
            let quo = ComplexObj::new(q, extra1.clone(), extra0, d1.submatrix(&bot0, &bot1), d0.submatrix(&bot1, &bot0))?;
            *tally.entry((c2.classify(&sub)?, c2.classify(&quo)?)).or_insert_with(BigInt::zero) += 1;
        }
    }
    let frames = projective_aut_order(q, c2.q(), e1) * projective_aut_order(q, c2.q(), e0);
    let mut out = BTreeMap::new();
    for (k, c) in tally {
        let (g, r) = c.div_rem(&frames);
        if !r.is_zero() {
            return Err(Error::Inconsistent(format!("frame count of ({}, {}) not divisible by {frames}", k.0, k.1)));
        }
        out.insert(k, g);
    }
    Ok(out)
}

/// Number of subcomplexes of L isomorphic to N with quotient isomorphic to M, by enumeration.
pub fn subcomplex_oracle(c2: &C2Category, l: &ComplexClass, m: &ComplexClass, n: &ComplexClass, cap: u64) -> Result<BigInt> {
    if !ue_additive(c2.quiver(), l, m, n) {
        return Ok(BigInt::zero());
    }
    let (e1, e0) = class_ue(c2.quiver(), n);
    let tally = subcomplex_tally(c2, l, &e1, &e0, cap)?;
    Ok(tally.get(&(n.clone(), m.clone())).cloned().unwrap_or_else(BigInt::zero))
}

/// |ue_M, ue_N| = ⟨M̂¹,N̂¹⟩ + ⟨M̂⁰,N̂⁰⟩.
pub fn ue_pairing(q: &DynkinQuiver, m: &ComplexClass, n: &ComplexClass) -> i64 {
    let (m1, m0) = class_degree_dims(q, m);
    let (n1, n0) = class_degree_dims(q, n);
    q.euler_form(&m1, &n1) + q.euler_form(&m0, &n0)
}

/// The twisted Hall algebra of C_2(P) over Q(√q), with the reduced localization as a view.
pub struct BridgelandHall {
    c2: C2Category,
    ring: SqrtQ,
    cap: u64,
    ext: Mutex<HashMap<(ComplexClass, ComplexClass), Arc<ExtCounts>>>,
    aut: Mutex<HashMap<ComplexClass, BigInt>>,
}

impl BridgelandHall {
    pub fn new(c2: C2Category, cap: u64) -> Self {
        let ring = SqrtQ::new(c2.q());
        BridgelandHall { c2, ring, cap, ext: Mutex::new(HashMap::new()), aut: Mutex::new(HashMap::new()) }
    }

    pub fn category(&self) -> &C2Category {
        &self.c2
    }
    pub fn quiver(&self) -> &DynkinQuiver {
        self.c2.quiver()
    }
    pub fn cap(&self) -> u64 {
        self.cap
    }
    pub fn n(&self) -> usize {
        self.quiver().n()
    }

    pub fn aut(&self, c: &ComplexClass) -> Result<BigInt> {
        if let Some(a) = self.aut.lock().unwrap().get(c) {
            return Ok(a.clone());
        }
        let a = self.c2.aut_order(c)?;
        self.aut.lock().unwrap().insert(c.clone(), a.clone());
        Ok(a)
    }

    pub fn ext_counts(&self, m: &ComplexClass, n: &ComplexClass) -> Result<Arc<ExtCounts>> {
        let key = (m.clone(), n.clone());
        if let Some(e) = self.ext.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let e = Arc::new(extension_counts_c2(&self.c2, m, n, self.cap)?);
        self.ext.lock().unwrap().insert(key, e.clone());
        Ok(e)
    }

    /// All g^L_{MN} for fixed M, N.
    pub fn hall_numbers(&self, m: &ComplexClass, n: &ComplexClass) -> Result<BTreeMap<ComplexClass, BigInt>> {
        let ext = self.ext_counts(m, n)?;
        hall_numbers_from_counts(&self.c2, m, n, &ext, &|c| self.aut(c))
    }

    pub fn hall_number(&self, l: &ComplexClass, m: &ComplexClass, n: &ComplexClass) -> Result<BigInt> {
        if !ue_additive(self.quiver(), l, m, n) {
            return Ok(BigInt::zero());
        }
        Ok(self.hall_numbers(m, n)?.remove(l).unwrap_or_else(BigInt::zero))
    }

    /// v^{|ue_M,ue_N|} |Ext¹(M,N)_L| / |Hom(M,N)|, evaluated as v^{−|ue_M,ue_N|} |Htp(M,N*)| |Ext¹(M,N)_L|.
    pub fn res_coefficient(&self, l: &ComplexClass, m: &ComplexClass, n: &ComplexClass) -> Result<QSqrt> {
        let r = &self.ring;
        if !ue_additive(self.quiver(), l, m, n) {
            return Ok(r.zero());
        }
        let ext = self.ext_counts(m, n)?;
        let count = ext.counts.get(l).cloned().unwrap_or_else(BigInt::zero);
        let htp = BigInt::from(self.c2.q()).pow(ext.htp_dim as u32);
        Ok(r.mul(&r.v_pow(-ue_pairing(self.quiver(), m, n)), &r.from_bigint(&(htp * count))))
    }

    pub fn unit(&self) -> HallElementC2 {
        HallElement::basis(&self.ring, ComplexClass::zero(self.n()))
    }

    pub fn u(&self, c: &ComplexClass) -> HallElementC2 {
        HallElement::basis(&self.ring, c.clone())
    }

    /// a_c u_c.
    pub fn au(&self, c: &ComplexClass) -> Result<HallElementC2> {
        Ok(HallElement::monomial(&self.ring, c.clone(), self.ring.from_bigint(&self.aut(c)?)))
    }

    /// b_{K_P} = a_{K_P} u_{K_P}.
    pub fn b_k(&self, p: &[usize]) -> Result<HallElementC2> {
        self.au(&ComplexClass::k(p))
    }

    /// b_{K_Q*} = a_{K_Q*} u_{K_Q*}.
    pub fn b_k_star(&self, p: &[usize]) -> Result<HallElementC2> {
        self.au(&ComplexClass::k_star(p))
    }

    /// Rewrites a_L u_L for L = K_P ⊕ K_Q* ⊕ r as v^{−⟨P̂−Q̂, r̂⁰−r̂¹⟩} b_{P̂−Q̂} * (a_r u_r).
    pub fn normalize_to_dh(&self, x: &HallElementC2) -> Result<DHElement> {
        let q = self.quiver();
        let r = &self.ring;
        let mut out = HallElement::zero(r);
        for (l, c) in x.terms() {
            let rad = l.radical_part();
            let alpha: DimVector =
                q.projective_sum_dim(&l.kp).iter().zip(q.projective_sum_dim(&l.kq)).map(|(a, b)| a - b).collect();
            let (r1, r0) = class_degree_dims(q, &rad);
            let diff: DimVector = r0.iter().zip(&r1).map(|(a, b)| a - b).collect();
            let ainv = r.inv(&r.from_bigint(&self.aut(l)?)).expect("automorphism group order is nonzero");
            let coef = r.mul(&r.mul(c, &ainv), &r.v_pow(-q.euler_form(&alpha, &diff)));
            out.add_term((alpha, rad), coef);
        }
        Ok(out)
    }

    /// The reduced algebra, whose elements are kept in torus normal form.
    pub fn dh(&self) -> ReducedDH<'_> {
        ReducedDH { hall: self }
    }
}

impl HallStructure<ComplexClass> for BridgelandHall {
    type Ring = SqrtQ;

    fn ring(&self) -> &SqrtQ {
        &self.ring
    }

    fn basis_product(&self, a: &ComplexClass, b: &ComplexClass) -> Result<Vec<(ComplexClass, QSqrt)>> {
        let tw = self.ring.v_pow(ue_pairing(self.quiver(), a, b));
        Ok(self
            .hall_numbers(a, b)?
            .into_iter()
            .map(|(l, g)| (l, self.ring.mul(&tw, &self.ring.from_bigint(&g))))
            .collect())
    }
}

/// Generators of the reduced algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Generator {
    E(RepIsoClass),
    F(RepIsoClass),
    /// K_i^{±1} = b_{±Ŝ_i}.
    K { vertex: usize, inverse: bool },
    B(DimVector),
}

/// DH^red in normal form: (α, r) ↦ b_α * (a_r u_r), multiplied by commuting torus factors to the left.
pub struct ReducedDH<'a> {
    hall: &'a BridgelandHall,
}

impl<'a> ReducedDH<'a> {
    pub fn hall(&self) -> &BridgelandHall {
        self.hall
    }

    pub fn unit(&self) -> DHElement {
        self.b(&vec![0; self.hall.n()])
    }

    pub fn b(&self, alpha: &[i64]) -> DHElement {
        HallElement::basis(&self.hall.ring, (alpha.to_vec(), ComplexClass::zero(self.hall.n())))
    }

    /// b_α * (a_r u_r) for a radical class r.
    pub fn term(&self, alpha: &[i64], r: &ComplexClass) -> Result<DHElement> {
        if !r.is_radical() {
            return Err(Error::InvalidClass(format!("{r} is not radical")));
        }
        Ok(HallElement::basis(&self.hall.ring, (alpha.to_vec(), r.clone())))
    }

    fn resolution_dim(&self, m: &RepIsoClass) -> DimVector {
        let q = self.hall.quiver();
        let (p, _) = crate::complex::resolution_mults(q, m);
        q.projective_sum_dim(&p)
    }

    pub fn generator_element(&self, g: &Generator) -> Result<DHElement> {
        let q = self.hall.quiver();
        let r = &self.hall.ring;
        Ok(match g {
            Generator::E(m) | Generator::F(m) => {
                let p = self.resolution_dim(m);
                let coef = r.v_pow(q.euler_form(&p, m.dim()));
                let (alpha, cls) = match g {
                    Generator::E(_) => (p.iter().map(|x| -x).collect(), ComplexClass::c(m)),
                    _ => (p, ComplexClass::c_star(m)),
                };
                HallElement::monomial(r, (alpha, cls), coef)
            }
            Generator::K { vertex, inverse } => {
                let s = if *inverse { -1 } else { 1 };
                self.b(&q.unit(*vertex).iter().map(|x| s * x).collect::<Vec<_>>())
            }
            Generator::B(alpha) => self.b(alpha),
        })
    }

    /// E_i = E_{S_i} / (q − 1).
    pub fn e(&self, i: usize) -> Result<DHElement> {
        let r = &self.hall.ring;
        let s = RepIsoClass::from_root(&self.hall.quiver().unit(i));
        let den = r.inv(&r.from_int(self.hall.c2.q() as i64 - 1)).expect("q > 1");
        Ok(self.generator_element(&Generator::E(s))?.scale(&den))
    }

    /// F_i = −v F_{S_i} / (q − 1).
    pub fn f(&self, i: usize) -> Result<DHElement> {
        let r = &self.hall.ring;
        let s = RepIsoClass::from_root(&self.hall.quiver().unit(i));
        let den = r.inv(&r.from_int(self.hall.c2.q() as i64 - 1)).expect("q > 1");
        let c = r.mul(&r.neg(&r.v_pow(1)), &den);
        Ok(self.generator_element(&Generator::F(s))?.scale(&c))
    }

    pub fn k(&self, i: usize, inverse: bool) -> Result<DHElement> {
        self.generator_element(&Generator::K { vertex: i, inverse })
    }
}

impl<'a> HallStructure<DHKey> for ReducedDH<'a> {
    type Ring = SqrtQ;

    fn ring(&self) -> &SqrtQ {
        &self.hall.ring
    }

    fn basis_product(&self, a: &DHKey, b: &DHKey) -> Result<Vec<(DHKey, QSqrt)>> {
        // b_α (a_r u_r) b_β (a_s u_s) = v^{−(β, r̂⁰−r̂¹)} b_{α+β} (a_r u_r)(a_s u_s)
        let h = self.hall;
        let q = h.quiver();
        let ring = &h.ring;
        let (alpha, rr) = a;
        let (beta, ss) = b;
        let (r1, r0) = class_degree_dims(q, rr);
        let diff: DimVector = r0.iter().zip(&r1).map(|(x, y)| x - y).collect();
        let shift = ring.v_pow(-q.sym_euler_form(beta, &diff));
        let scale = ring.mul(&shift, &ring.from_bigint(&(h.aut(rr)? * h.aut(ss)?)));
        let prod = h.multiply(&h.u(rr), &h.u(ss))?;
        let ab = add_dims(alpha, beta);
        let mut out = Vec::new();
        for ((gamma, rad), c) in h.normalize_to_dh(&prod)?.terms() {
            out.push(((add_dims(&ab, gamma), rad.clone()), ring.mul(&scale, c)));
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{complex_classes_up_to, complex_classes_with_ue};
    use crate::gf::FiniteField;
    use crate::quiver::RepCategory;

    const CAP: u64 = 1 << 22;

    fn c2(n: usize, p: u32) -> C2Category {
        C2Category::new(RepCategory::new(Arc::new(DynkinQuiver::a_linear(n)), FiniteField::prime(p).unwrap()))
    }
    fn cc(s: &str) -> ComplexClass {
        ComplexClass::parse(2, s).unwrap()
    }
    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn hall_number_examples() {
        let c = c2(2, 2);
        let s2 = cc("C[(0,1)]");
        assert_eq!(hall_number_c2(&c, &cc("C[2*(0,1)]"), &s2, &s2, CAP).unwrap(), big(3));
        let c3 = c2(2, 3);
        let (k, ks) = (cc("K[0,1]"), cc("K*[0,1]"));
        assert_eq!(hall_number_c2(&c3, &cc("K[0,1] + K*[0,1]"), &k, &ks, CAP).unwrap(), big(3));
        assert_eq!(hall_number_c2(&c3, &cc("K[1,0]"), &k, &ks, CAP).unwrap(), big(0));
    }

    #[test]
    fn oracle_examples() {
        let c = c2(2, 2);
        let (k, ks) = (cc("K[0,1]"), cc("K*[0,1]"));
        assert_eq!(subcomplex_oracle(&c, &cc("K[0,1] + K*[0,1]"), &k, &ks, CAP).unwrap(), big(2));
        let s2 = cc("C[(0,1)]");
        assert_eq!(subcomplex_oracle(&c, &cc("C[2*(0,1)]"), &s2, &s2, CAP).unwrap(), big(3));
        let (m, n) = (cc("C[(1,0)]"), cc("C*[(0,1)]"));
        assert_eq!(subcomplex_oracle(&c, &m.direct_sum(&n), &m, &n, CAP).unwrap(), big(1));
    }

    /// Both counts agree on every triple with ue ≤ ((1,1),(1,1)).
    #[test]
    fn oracle_equivalence_a2() {
        for p in [2, 3] {
            let c = c2(2, p);
            let window = complex_classes_up_to(c.quiver(), &[1, 1], &[1, 1]);
            for l in &window {
                let (l1, l0) = class_ue(c.quiver(), l);
                for n in &window {
                    let (n1, n0) = class_ue(c.quiver(), n);
                    if (0..2).any(|i| n1[i] > l1[i] || n0[i] > l0[i]) {
                        continue;
                    }
                    let tally = subcomplex_tally(&c, l, &n1, &n0, CAP).unwrap();
                    let m1: Vec<usize> = (0..2).map(|i| l1[i] - n1[i]).collect();
                    let m0: Vec<usize> = (0..2).map(|i| l0[i] - n0[i]).collect();
                    for m in complex_classes_with_ue(c.quiver(), &m1, &m0) {
                        let oracle = tally.get(&(n.clone(), m.clone())).cloned().unwrap_or_default();
                        assert_eq!(hall_number_c2(&c, l, &m, n, CAP).unwrap(), oracle, "q={p} ({l}; {m}, {n})");
                    }
                }
            }
        }
    }

    #[test]
    fn res_examples() {
        let h = BridgelandHall::new(c2(2, 2), CAP);
        let r = SqrtQ::new(2);
        let (k, ks) = (cc("K[0,1]"), cc("K*[0,1]"));
        assert_eq!(h.res_coefficient(&cc("K[0,1] + K*[0,1]"), &k, &ks).unwrap(), r.one());
        let (m, n) = (cc("K[1,0]"), cc("K[0,1]"));
        let split = h.res_coefficient(&m.direct_sum(&n), &m, &n).unwrap();
        assert_eq!(split, r.v_pow(ue_pairing(h.quiver(), &m, &n)));
        // v^{|ue|} |Ext_L| / |Hom| with Hom computed directly
        let (m, n) = (cc("C[(1,0)]"), cc("C*[(1,0)]"));
        let c = h.category();
        let hom = c.hom_c2_dim(&c.realize(&m).unwrap(), &c.realize(&n).unwrap());
        assert_eq!(hom, 1);
        let l = m.direct_sum(&n);
        let want = r.mul(&r.v_pow(ue_pairing(h.quiver(), &m, &n)), &r.inv(&r.from_int(2)).unwrap());
        assert_eq!(h.res_coefficient(&l, &m, &n).unwrap(), want);
    }

    #[test]
    fn twisted_product_examples() {
        let h = BridgelandHall::new(c2(2, 3), CAP);
        let r = h.ring().clone();
        let x = h.u(&cc("C[(1,0)] + K*[1,0]"));
        assert_eq!(h.multiply(&h.unit(), &x).unwrap(), x);
        assert_eq!(h.multiply(&x, &h.unit()).unwrap(), x);
        let b = h.b_k(&[0, 1]).unwrap();
        let bb = h.multiply(&b, &b).unwrap();
        let k2 = cc("K[0,2]");
        assert_eq!(bb.len(), 1);
        // v² g a_K² with g = a_{K²}/(q a_K²)
        assert_eq!(bb.coeff(&k2), r.mul(&r.v_pow(2), &r.from_bigint(&(h.aut(&k2).unwrap() / big(3)))));
    }

    /// b_{K_P} * (a_r u_r) = v^{(P̂, r̂⁰−r̂¹)} (a_r u_r) * b_{K_P}, and likewise for K_Q* with −Q̂.
    #[test]
    fn commutation_exponents() {
        let h = BridgelandHall::new(c2(2, 2), CAP);
        let q = h.quiver();
        let r = h.ring().clone();
        for rad in complex_classes_up_to(q, &[1, 1], &[1, 1]).into_iter().filter(|c| c.is_radical()) {
            let (r1, r0) = class_degree_dims(q, &rad);
            let diff: DimVector = r0.iter().zip(&r1).map(|(a, b)| a - b).collect();
            let ar = h.au(&rad).unwrap();
            for i in 0..2 {
                let mut e = vec![0; 2];
                e[i] = 1;
                let p = q.projective_sum_dim(&e);
                for (bk, sign) in [(h.b_k(&e).unwrap(), 1), (h.b_k_star(&e).unwrap(), -1)] {
                    let lhs = h.multiply(&bk, &ar).unwrap();
                    let rhs = h.multiply(&ar, &bk).unwrap().scale(&r.v_pow(sign * q.sym_euler_form(&p, &diff)));
                    assert_eq!(lhs, rhs, "{rad} vertex {i}");
                }
            }
        }
    }

    /// (b_{K_P} * b_{K_Q*}) * (a_r u_r) = v^{⟨P̂−Q̂, r̂⁰−r̂¹⟩} a_{K⊕r} u_{K⊕r}.
    #[test]
    fn maximal_orbit_product() {
        let h = BridgelandHall::new(c2(2, 3), CAP);
        let q = h.quiver();
        let r = h.ring().clone();
        let rads: Vec<_> = complex_classes_up_to(q, &[1, 1], &[1, 1]).into_iter().filter(|c| c.is_radical()).collect();
        for kp in [[0, 0], [1, 0], [0, 1]] {
            for kq in [[0, 0], [0, 1]] {
                let b = h.multiply(&h.b_k(&kp).unwrap(), &h.b_k_star(&kq).unwrap()).unwrap();
                let alpha: DimVector =
                    q.projective_sum_dim(&kp).iter().zip(q.projective_sum_dim(&kq)).map(|(a, b)| a - b).collect();
                for rad in &rads {
                    let (r1, r0) = class_degree_dims(q, rad);
                    let diff: DimVector = r0.iter().zip(&r1).map(|(a, b)| a - b).collect();
                    let full = rad.direct_sum(&ComplexClass::k(&kp)).direct_sum(&ComplexClass::k_star(&kq));
                    let lhs = h.multiply(&b, &h.au(rad).unwrap()).unwrap();
                    let rhs = h.au(&full).unwrap().scale(&r.v_pow(q.euler_form(&alpha, &diff)));
                    assert_eq!(lhs, rhs, "{full}");
                }
            }
        }
    }

    #[test]
    fn b_alpha_is_independent_of_splitting() {
        let h = BridgelandHall::new(c2(2, 2), CAP);
        let a = h.normalize_to_dh(&h.multiply(&h.b_k(&[1, 0]).unwrap(), &h.b_k_star(&[0, 1]).unwrap()).unwrap()).unwrap();
        let b = h.normalize_to_dh(&h.multiply(&h.b_k(&[1, 1]).unwrap(), &h.b_k_star(&[0, 2]).unwrap()).unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, h.dh().b(&[1, 0]));
    }

    #[test]
    fn normal_form_examples() {
        let h = BridgelandHall::new(c2(2, 3), CAP);
        let dh = h.dh();
        let r = h.ring().clone();
        let k = h.normalize_to_dh(&h.u(&cc("K[0,1]"))).unwrap();
        let a = h.aut(&cc("K[0,1]")).unwrap();
        assert_eq!(k, dh.b(&[0, 1]).scale(&r.inv(&r.from_bigint(&a)).unwrap()));
        let rad = cc("C[(1,0)]");
        let x = h.normalize_to_dh(&h.au(&rad).unwrap()).unwrap();
        assert_eq!(x, dh.term(&[0, 0], &rad).unwrap());
        let kk = h.normalize_to_dh(&h.au(&cc("K[0,1] + K*[0,1] + C[(1,0)]")).unwrap()).unwrap();
        assert_eq!(kk, x);
    }

    #[test]
    fn dh_product_examples() {
        let h = BridgelandHall::new(c2(2, 2), CAP);
        let dh = h.dh();
        assert_eq!(dh.multiply(&dh.b(&[1, 0]), &dh.b(&[-1, 2])).unwrap(), dh.b(&[0, 2]));
        let e = dh.e(0).unwrap();
        assert_eq!(dh.multiply(&dh.unit(), &e).unwrap(), e);
        assert_eq!(dh.multiply(&e, &dh.unit()).unwrap(), e);
    }

    #[test]
    fn generator_examples() {
        let h = BridgelandHall::new(c2(2, 3), CAP);
        let dh = h.dh();
        let r = h.ring().clone();
        let s2 = RepIsoClass::from_root(&[0, 1]);
        assert_eq!(dh.generator_element(&Generator::E(s2.clone())).unwrap(), dh.term(&[0, 0], &ComplexClass::c(&s2)).unwrap());
        let s1 = RepIsoClass::from_root(&[1, 0]);
        let p2 = vec![0, 1];
        let e = dh.generator_element(&Generator::E(s1.clone())).unwrap();
        let want = dh.term(&[0, -1], &ComplexClass::c(&s1)).unwrap().scale(&r.v_pow(h.quiver().euler_form(&p2, &[1, 0])));
        assert_eq!(e, want);
        assert_eq!(dh.generator_element(&Generator::B(vec![0, 0])).unwrap(), dh.unit());
    }

    #[test]
    fn a1_commutator() {
        let c = C2Category::new(RepCategory::new(Arc::new(DynkinQuiver::a_linear(1)), FiniteField::prime(2).unwrap()));
        let h = BridgelandHall::new(c, CAP);
        let dh = h.dh();
        let r = h.ring().clone();
        let s = RepIsoClass::from_root(&[1]);
        let es = dh.generator_element(&Generator::E(s.clone())).unwrap();
        let fs = dh.generator_element(&Generator::F(s)).unwrap();
        let comm = dh.multiply(&es, &fs).unwrap().sub(&dh.multiply(&fs, &es).unwrap()).unwrap();
        // (q−1)² (b_Ŝ − b_{−Ŝ}) / (v − v⁻¹) rescaled by the F normalization −v
        let kk = dh.b(&[1]).sub(&dh.b(&[-1])).unwrap();
        let vv = r.sub(&r.v_pow(1), &r.v_pow(-1));
        let qm1 = r.from_int(1);
        let c = r.mul(&r.mul(&qm1, &qm1), &r.inv(&vv).unwrap());
        let c = r.mul(&c, &r.inv(&r.neg(&r.v_pow(1))).unwrap());
        assert_eq!(comm, kk.scale(&c));
    }
}
