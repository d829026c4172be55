use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;

use super::object::{ChainMap, ComplexClass, ComplexObj};
use crate::error::{Error, Result};
use crate::gf::{enumerate_subspace, extend_to_span, Fe, FieldMatrix, FiniteField};
use crate::quiver::proj::{end_dim, pattern_positions, projective_rep, vertex_map};
use crate::quiver::{
    classes_up_to, ext_dim_classes, gl_order, hom_dim_classes, DimVector, DynkinQuiver, RepCategory, RepIsoClass,
    Resolution,
};

/// Multiplicities (p, q) of the minimal projective resolution 0 → P → Q → M → 0:
/// q_i = dim Hom(M, S_i) and p_i = dim Ext¹(M, S_i).
pub fn resolution_mults(quiver: &DynkinQuiver, m: &RepIsoClass) -> (Vec<usize>, Vec<usize>) {
    let mut p = Vec::with_capacity(quiver.n());
    let mut qv = Vec::with_capacity(quiver.n());
    for i in 0..quiver.n() {
        let s = RepIsoClass::from_root(&quiver.unit(i));
        p.push(ext_dim_classes(quiver, m, &s) as usize);
        qv.push(hom_dim_classes(quiver, m, &s) as usize);
    }
    (p, qv)
}

/// Projective multiplicity vectors (e¹, e⁰) of a class.
pub fn class_ue(quiver: &DynkinQuiver, c: &ComplexClass) -> (Vec<usize>, Vec<usize>) {
    let (pm, qm) = resolution_mults(quiver, &c.h0);
    let (pn, qn) = resolution_mults(quiver, &c.h1);
    let n = quiver.n();
    let e1 = (0..n).map(|i| pm[i] + qn[i] + c.kp[i] + c.kq[i]).collect();
    let e0 = (0..n).map(|i| qm[i] + pn[i] + c.kp[i] + c.kq[i]).collect();
    (e1, e0)
}

/// K(A)-classes (M̂¹, M̂⁰) of the two degrees of a class.
pub fn class_degree_dims(quiver: &DynkinQuiver, c: &ComplexClass) -> (DimVector, DimVector) {
    let (e1, e0) = class_ue(quiver, c);
    (quiver.projective_sum_dim(&e1), quiver.projective_sum_dim(&e0))
}

/// All classes with projective multiplicity vectors exactly (e1, e0), in canonical order.
pub fn complex_classes_with_ue(quiver: &DynkinQuiver, e1: &[usize], e0: &[usize]) -> Vec<ComplexClass> {
    let n = quiver.n();
    let b0: Vec<i64> = quiver.projective_sum_dim(e0);
    let b1: Vec<i64> = quiver.projective_sum_dim(e1);
    let h0s = classes_up_to(quiver, &b0);
    let h1s = classes_up_to(quiver, &b1);
    let res0: Vec<_> = h0s.iter().map(|m| resolution_mults(quiver, m)).collect();
    let res1: Vec<_> = h1s.iter().map(|m| resolution_mults(quiver, m)).collect();
    let mut out = Vec::new();
    for (m, (pm, qm)) in h0s.iter().zip(&res0) {
        for (nn, (pn, qn)) in h1s.iter().zip(&res1) {
            // e1 − (P_M + Q_N) = e0 − (Q_M + P_N) = kp + kq
            let mut rest = Vec::with_capacity(n);
            let mut ok = true;
            for i in 0..n {
                let a = e1[i] as i64 - (pm[i] + qn[i]) as i64;
                let b = e0[i] as i64 - (qm[i] + pn[i]) as i64;
                if a != b || a < 0 {
                    ok = false;
                    break;
                }
                rest.push(a as usize);
            }
            if !ok {
                continue;
            }
            // split rest = kp + kq in all ways
            let mut kp = vec![0usize; n];
            loop {
                let kq: Vec<usize> = rest.iter().zip(&kp).map(|(r, k)| r - k).collect();
                out.push(ComplexClass { kp: kp.clone(), kq, h0: m.clone(), h1: nn.clone() });
                let mut i = 0;
                loop {
                    if i == n {
                        break;
                    }
                    kp[i] += 1;
                    if kp[i] <= rest[i] {
                        break;
                    }
                    kp[i] = 0;
                    i += 1;
                }
                if i == n {
                    break;
                }
            }
        }
    }
    out.sort();
    out
}

fn mults_up_to(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out.into_iter().flat_map(|v: Vec<usize>| (0..=b).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// All classes with e¹ ≤ b1 and e⁰ ≤ b0 componentwise, in canonical order.
pub fn complex_classes_up_to(quiver: &DynkinQuiver, b1: &[usize], b0: &[usize]) -> Vec<ComplexClass> {
    let mut set = BTreeSet::new();
    for e1 in mults_up_to(b1) {
        for e0 in mults_up_to(b0) {
            set.extend(complex_classes_with_ue(quiver, &e1, &e0));
        }
    }
    set.into_iter().collect()
}

/// Homotopy data for chain maps x → y: dimensions of Hom_{C2}(x,y) and of the null-homotopic
/// subspace Htp(x,y), and a basis of a complement of Htp inside Hom.
pub struct HtpData {
    pub hom_dim: usize,
    pub htp_dim: usize,
    complement: Vec<Vec<Fe>>,
    layout: ChainLayout,
}

impl HtpData {
    /// One chain map per homotopy class, q^{hom_dim − htp_dim} of them.
    pub fn coset_reps<'a>(&'a self, field: &'a FiniteField) -> impl Iterator<Item = ChainMap> + 'a {
        enumerate_subspace(field, self.layout.len(), &self.complement).map(move |v| self.layout.unpack(field, &v))
    }

    pub fn k2_dim(&self) -> usize {
        self.hom_dim - self.htp_dim
    }
}

/// Coordinates of a pair of pattern matrices (f¹, f⁰).
#[derive(Clone)]
struct ChainLayout {
    shape1: (usize, usize),
    shape0: (usize, usize),
    pos1: Vec<(usize, usize)>,
    pos0: Vec<(usize, usize)>,
}

impl ChainLayout {
    fn new(q: &DynkinQuiver, rows1: &[usize], cols1: &[usize], rows0: &[usize], cols0: &[usize]) -> Self {
        ChainLayout {
            shape1: (rows1.len(), cols1.len()),
            shape0: (rows0.len(), cols0.len()),
            pos1: pattern_positions(q, rows1, cols1),
            pos0: pattern_positions(q, rows0, cols0),
        }
    }
    fn len(&self) -> usize {
        self.pos1.len() + self.pos0.len()
    }
    fn unpack(&self, field: &FiniteField, v: &[Fe]) -> ChainMap {
        let mut f1 = FieldMatrix::zeros(field, self.shape1.0, self.shape1.1);
        let mut f0 = FieldMatrix::zeros(field, self.shape0.0, self.shape0.1);
        for (k, &(r, c)) in self.pos1.iter().enumerate() {
            f1.set(r, c, v[k]);
        }
        for (k, &(r, c)) in self.pos0.iter().enumerate() {
            f0.set(r, c, v[self.pos1.len() + k]);
        }
        ChainMap { f1, f0 }
    }
    fn pack(&self, m: &ChainMap) -> Vec<Fe> {
        self.pos1.iter().map(|&(r, c)| m.f1.get(r, c)).chain(self.pos0.iter().map(|&(r, c)| m.f0.get(r, c))).collect()
    }
}

/// Adds the entries of `sign · left · X` to a linear system, X having unknowns at `pos`.
pub(crate) fn add_left_product(
    f: &FiniteField,
    sys: &mut FieldMatrix,
    row_base: usize,
    cols: usize,
    left: &FieldMatrix,
    pos: &[(usize, usize)],
    var_base: usize,
    sign: Fe,
) {
    // entries of left · X where X has unknown entries at `pos`
    for (k, &(r, c)) in pos.iter().enumerate() {
        for a in 0..left.rows() {
            let coef = left.get(a, r);
            if coef != 0 {
                let row = row_base + a * cols + c;
                let var = var_base + k;
                sys.set(row, var, f.add(sys.get(row, var), f.mul(sign, coef)));
            }
        }
    }
}

fn add_right_product(
    f: &FiniteField,
    sys: &mut FieldMatrix,
    row_base: usize,
    cols: usize,
    right: &FieldMatrix,
    pos: &[(usize, usize)],
    var_base: usize,
    sign: Fe,
) {
    // entries of X · right where X has unknown entries at `pos`
    for (k, &(r, c)) in pos.iter().enumerate() {
        for b in 0..right.cols() {
            let coef = right.get(c, b);
            if coef != 0 {
                let row = row_base + r * cols + b;
                let var = var_base + k;
                sys.set(row, var, f.add(sys.get(row, var), f.mul(sign, coef)));
            }
        }
    }
}

/// The category C_2(P) over a fixed field.
pub struct C2Category {
    rep: RepCategory,
    res: Mutex<HashMap<RepIsoClass, Resolution>>,
}

impl C2Category {
    pub fn new(rep: RepCategory) -> Self {
        C2Category { rep, res: Mutex::new(HashMap::new()) }
    }

    pub fn rep(&self) -> &RepCategory {
        &self.rep
    }
    pub fn quiver(&self) -> &DynkinQuiver {
        self.rep.quiver()
    }
    pub fn field(&self) -> &FiniteField {
        self.rep.field()
    }
    pub fn q(&self) -> u64 {
        self.rep.q()
    }

    pub fn resolution(&self, m: &RepIsoClass) -> Result<Resolution> {
        if let Some(r) = self.res.lock().unwrap().get(m) {
            return Ok(r.clone());
        }
        let r = self.rep.min_proj_resolution(m)?;
        self.res.lock().unwrap().insert(m.clone(), r.clone());
        Ok(r)
    }

    fn k_obj(&self, i: usize, star: bool) -> ComplexObj {
        let f = self.field();
        let (one, zero) = (FieldMatrix::identity(f, 1), FieldMatrix::zeros(f, 1, 1));
        if star {
            ComplexObj::new_unchecked(vec![i], vec![i], zero, one.neg())
        } else {
            ComplexObj::new_unchecked(vec![i], vec![i], one, zero)
        }
    }

    /// C_M = (P --f--> Q, 0) from the minimal projective resolution of M.
    pub fn c_obj(&self, m: &RepIsoClass) -> Result<ComplexObj> {
        let r = self.resolution(m)?;
        let zero = FieldMatrix::zeros(self.field(), r.p_verts.len(), r.q_verts.len());
        Ok(ComplexObj::new_unchecked(r.p_verts, r.q_verts, r.f, zero))
    }

    /// A complex in the class `c`: K_P ⊕ K_Q* ⊕ C_M ⊕ C_N*.
    pub fn realize(&self, c: &ComplexClass) -> Result<ComplexObj> {
        c.validate(self.quiver())?;
        let mut x = ComplexObj::zero(self.field());
        for (i, &m) in c.kp.iter().enumerate() {
            for _ in 0..m {
                x = x.direct_sum(&self.k_obj(i, false));
            }
        }
        for (i, &m) in c.kq.iter().enumerate() {
            for _ in 0..m {
                x = x.direct_sum(&self.k_obj(i, true));
            }
        }
        x = x.direct_sum(&self.c_obj(&c.h0)?);
        x = x.direct_sum(&self.c_obj(&c.h1)?.shift());
        Ok(x)
    }

    /// Vertexwise ranks of a pattern morphism.
    fn rank_vector(&self, rows: &[usize], cols: &[usize], m: &FieldMatrix) -> Vec<i64> {
        (0..self.quiver().n()).map(|k| vertex_map(self.quiver(), rows, cols, m, k).rank() as i64).collect()
    }

    fn subquotient_class(&self, verts: &[usize], kernel_of: (&[usize], &FieldMatrix), image_of: (&[usize], &FieldMatrix)) -> Result<RepIsoClass> {
        let q = self.quiver();
        let f = self.field();
        let rep = projective_rep(q, f, verts);
        let (krows, kmat) = kernel_of;
        let (icols, imat) = image_of;
        let ker: Vec<Vec<Vec<Fe>>> = (0..q.n()).map(|k| vertex_map(q, krows, verts, kmat, k).nullspace_basis()).collect();
        let im: Vec<Vec<Vec<Fe>>> = (0..q.n()).map(|k| vertex_map(q, verts, icols, imat, k).column_space_basis()).collect();
        self.rep.decompose(&rep.subquotient(q, &ker, &im))
    }

    /// (H⁰, H¹) with H⁰ = ker d⁰ / im d¹ and H¹ = ker d¹ / im d⁰.
    pub fn cohomology(&self, x: &ComplexObj) -> Result<(RepIsoClass, RepIsoClass)> {
        let h0 = self.subquotient_class(x.verts0(), (x.verts1(), x.d0()), (x.verts1(), x.d1()))?;
        let h1 = self.subquotient_class(x.verts1(), (x.verts0(), x.d1()), (x.verts0(), x.d0()))?;
        Ok((h0, h1))
    }

    /// Normal form of a complex from its cohomology and the vertexwise ranks of d¹, d⁰.
    pub fn classify(&self, x: &ComplexObj) -> Result<ComplexClass> {
        let q = self.quiver();
        let n = q.n();
        let (h0, h1) = self.cohomology(x)?;
        let (pm, _) = resolution_mults(q, &h0);
        let (pn, _) = resolution_mults(q, &h1);
        let r1 = self.rank_vector(x.verts0(), x.verts1(), x.d1());
        let r0 = self.rank_vector(x.verts1(), x.verts0(), x.d0());
        let bad = || Error::Inconsistent("rank bookkeeping of complex is inconsistent".into());
        let kdim: Vec<i64> = r1.iter().zip(q.projective_sum_dim(&pm)).map(|(a, b)| a - b).collect();
        let kp = q.projective_mult_from_dim(&kdim).ok_or_else(bad)?;
        let kqdim: Vec<i64> = r0.iter().zip(q.projective_sum_dim(&pn)).map(|(a, b)| a - b).collect();
        let kq = q.projective_mult_from_dim(&kqdim).ok_or_else(bad)?;
        let c = ComplexClass { kp, kq, h0, h1 };
        if class_ue(q, &c) != x.ue(n) {
            return Err(bad());
        }
        Ok(c)
    }

    /// Basis of Hom_{C2}(x, y): pairs (f¹, f⁰) with d¹_y f¹ = f⁰ d¹_x and d⁰_y f⁰ = f¹ d⁰_x.
    pub fn hom_c2_basis(&self, x: &ComplexObj, y: &ComplexObj) -> Vec<ChainMap> {
        let (layout, basis) = self.hom_c2_raw(x, y);
        basis.iter().map(|v| layout.unpack(self.field(), v)).collect()
    }

    pub fn hom_c2_dim(&self, x: &ComplexObj, y: &ComplexObj) -> usize {
        self.hom_c2_raw(x, y).1.len()
    }

    fn hom_c2_raw(&self, x: &ComplexObj, y: &ComplexObj) -> (ChainLayout, Vec<Vec<Fe>>) {
        let q = self.quiver();
        let f = self.field();
        let layout = ChainLayout::new(q, y.verts1(), x.verts1(), y.verts0(), x.verts0());
        let n1 = layout.pos1.len();
        // equations: d¹_y f¹ − f⁰ d¹_x (|y0| × |x1|), then d⁰_y f⁰ − f¹ d⁰_x (|y1| × |x0|)
        let rows_a = y.verts0().len() * x.verts1().len();
        let rows_b = y.verts1().len() * x.verts0().len();
        let mut sys = FieldMatrix::zeros(f, rows_a + rows_b, layout.len());
        let minus = f.neg(1);
        add_left_product(f, &mut sys, 0, x.verts1().len(), y.d1(), &layout.pos1, 0, 1);
        add_right_product(f, &mut sys, 0, x.verts1().len(), x.d1(), &layout.pos0, n1, minus);
        add_left_product(f, &mut sys, rows_a, x.verts0().len(), y.d0(), &layout.pos0, n1, 1);
        add_right_product(f, &mut sys, rows_a, x.verts0().len(), x.d0(), &layout.pos1, 0, minus);
        let basis = sys.nullspace_basis();
        (layout, basis)
    }

    /// Null-homotopic maps s ↦ (d⁰_y s¹ + s⁰ d¹_x, d¹_y s⁰ + s¹ d⁰_x) with s¹: x¹ → y⁰, s⁰: x⁰ → y¹.
    pub fn htp_data(&self, x: &ComplexObj, y: &ComplexObj) -> HtpData {
        let q = self.quiver();
        let f = self.field();
        let (layout, hom) = self.hom_c2_raw(x, y);
        let spos1 = pattern_positions(q, y.verts0(), x.verts1());
        let spos0 = pattern_positions(q, y.verts1(), x.verts0());
        let mut images = Vec::new();
        for (which, pos) in [(1, &spos1), (0, &spos0)] {
            for &(r, c) in pos.iter() {
                let (s1, s0) = if which == 1 {
                    let mut s = FieldMatrix::zeros(f, y.verts0().len(), x.verts1().len());
                    s.set(r, c, 1);
                    (s, FieldMatrix::zeros(f, y.verts1().len(), x.verts0().len()))
                } else {
                    let mut s = FieldMatrix::zeros(f, y.verts1().len(), x.verts0().len());
                    s.set(r, c, 1);
                    (FieldMatrix::zeros(f, y.verts0().len(), x.verts1().len()), s)
                };
                let f1 = y.d0().mul(&s1).add(&s0.mul(x.d1()));
                let f0 = y.d1().mul(&s0).add(&s1.mul(x.d0()));
                images.push(layout.pack(&ChainMap { f1, f0 }));
            }
        }
        let htp = extend_to_span(f, layout.len(), &[], &images);
        let complement = extend_to_span(f, layout.len(), &htp, &hom);
        HtpData { hom_dim: hom.len(), htp_dim: htp.len(), complement, layout }
    }

    /// The middle term of the extension 0 → y → L → x → 0 classified by a chain map f: x → y*.
    pub fn cone(&self, x: &ComplexObj, y: &ComplexObj, f: &ChainMap) -> Result<ComplexObj> {
        if !f.is_chain_map(x, &y.shift()) {
            return Err(Error::InvalidMorphism("not a chain map into the shifted target".into()));
        }
        let fl = self.field();
        let d1 = FieldMatrix::block2(x.d1(), &FieldMatrix::zeros(fl, x.verts0().len(), y.verts1().len()), &f.f1.neg(), y.d1());
        let d0 = FieldMatrix::block2(x.d0(), &FieldMatrix::zeros(fl, x.verts1().len(), y.verts0().len()), &f.f0.neg(), y.d0());
        ComplexObj::new(
            self.quiver(),
            [x.verts1(), y.verts1()].concat(),
            [x.verts0(), y.verts0()].concat(),
            d1,
            d0,
        )
    }

    /// dim End_{C2} of a class.
    pub fn end_dim(&self, c: &ComplexClass) -> Result<usize> {
        let x = self.realize(c)?;
        Ok(self.hom_c2_dim(&x, &x))
    }

    /// |Aut(c)| = q^{dim End − Σ m²} Π |GL_m(F_q)| over indecomposable summands.
    pub fn aut_order(&self, c: &ComplexClass) -> Result<BigInt> {
        let end = self.end_dim(c)? as u32;
        let mults: Vec<usize> = c
            .kp
            .iter()
            .chain(&c.kq)
            .copied()
            .chain(c.h0.terms().map(|(_, m)| m))
            .chain(c.h1.terms().map(|(_, m)| m))
            .filter(|&m| m > 0)
            .collect();
        let sq: u32 = mults.iter().map(|m| (m * m) as u32).sum();
        let mut a = BigInt::from(self.q()).pow(end - sq);
        for m in mults {
            a *= gl_order(self.q(), m);
        }
        Ok(a)
    }

    /// dim O = dim End(P¹) + dim End(P⁰) − dim End_{C2}.
    pub fn orbit_dim(&self, c: &ComplexClass) -> Result<i64> {
        let x = self.realize(c)?;
        Ok((end_dim(self.quiver(), x.verts1()) + end_dim(self.quiver(), x.verts0())) as i64
            - self.hom_c2_dim(&x, &x) as i64)
    }
}
