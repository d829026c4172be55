//! Direct sums of indecomposable projectives and the morphisms between them.
//!
//! A sum ⊕ P_{v(r)} is described by the list `verts` of the vertex of each copy. A morphism
//! ⊕ P_{v(c)} → ⊕ P_{v(r)} is a scalar matrix with rows indexed by target copies and columns by
//! source copies; entry (r, c) may be nonzero only when Hom(P_{v(c)}, P_{v(r)}) ≠ 0, i.e. when
//! there is a path v(r) → v(c). Composition is the matrix product.

use super::dynkin::DynkinQuiver;
use super::rep::Representation;
use crate::gf::{FieldMatrix, FiniteField};

/// Whether `m` is supported on the allowed pattern for a morphism `cols → rows`.
pub fn respects_pattern(q: &DynkinQuiver, rows: &[usize], cols: &[usize], m: &FieldMatrix) -> bool {
    m.rows() == rows.len()
        && m.cols() == cols.len()
        && (0..rows.len()).all(|r| (0..cols.len()).all(|c| m.get(r, c) == 0 || q.reaches(rows[r], cols[c])))
}

/// Positions (r, c) that may carry a nonzero entry.
pub fn pattern_positions(q: &DynkinQuiver, rows: &[usize], cols: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (r, &vr) in rows.iter().enumerate() {
        for (c, &vc) in cols.iter().enumerate() {
            if q.reaches(vr, vc) {
                out.push((r, c));
            }
        }
    }
    out
}

/// Copies whose projective is nonzero at vertex `k`.
pub fn copies_at(q: &DynkinQuiver, verts: &[usize], k: usize) -> Vec<usize> {
    (0..verts.len()).filter(|&r| q.reaches(verts[r], k)).collect()
}

/// The component at vertex `k` of the morphism given by the pattern matrix `m`.
pub fn vertex_map(q: &DynkinQuiver, rows: &[usize], cols: &[usize], m: &FieldMatrix, k: usize) -> FieldMatrix {
    m.submatrix(&copies_at(q, rows, k), &copies_at(q, cols, k))
}

/// The representation ⊕ P_{v(r)}; at vertex k its basis is the copies reaching k, in order.
pub fn projective_rep(q: &DynkinQuiver, field: &FiniteField, verts: &[usize]) -> Representation {
    let n = q.n();
    let at: Vec<Vec<usize>> = (0..n).map(|k| copies_at(q, verts, k)).collect();
    let dims: Vec<usize> = at.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            FieldMatrix::from_fn(field, dims[t], dims[s], |a, b| (at[t][a] == at[s][b]) as u32)
        })
        .collect();
    Representation::new(q, field, dims, maps).expect("projective representation shapes")
}

/// Vertexwise matrices of the representation morphism given by a pattern matrix.
pub fn to_rep_morphism(q: &DynkinQuiver, rows: &[usize], cols: &[usize], m: &FieldMatrix) -> Vec<FieldMatrix> {
    (0..q.n()).map(|k| vertex_map(q, rows, cols, m, k)).collect()
}

/// Copy vertices of m_i copies of each P_i, grouped by vertex.
pub fn verts_from_mult(mult: &[usize]) -> Vec<usize> {
    mult.iter().enumerate().flat_map(|(i, &m)| std::iter::repeat(i).take(m)).collect()
}

/// Multiplicity vector of a copy list.
pub fn mult_from_verts(n: usize, verts: &[usize]) -> Vec<usize> {
    let mut m = vec![0; n];
    for &v in verts {
        m[v] += 1;
    }
    m
}

/// dim End(⊕P) = Σ_{r,c} dim Hom(P_{v(c)}, P_{v(r)}).
pub fn end_dim(q: &DynkinQuiver, verts: &[usize]) -> usize {
    pattern_positions(q, verts, verts).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::rep::hom_dim;

    #[test]
    fn pattern_morphisms_are_rep_morphisms() {
        let q = DynkinQuiver::a_linear(3);
        let f = FiniteField::prime(3).unwrap();
        let src = vec![1, 2];
        let dst = vec![0, 1, 2];
        let x = projective_rep(&q, &f, &src);
        let y = projective_rep(&q, &f, &dst);
        let pos = pattern_positions(&q, &dst, &src);
        assert_eq!(pos.len(), hom_dim(&q, &x, &y));
        let mut m = FieldMatrix::zeros(&f, 3, 2);
        for (k, &(r, c)) in pos.iter().enumerate() {
            m.set(r, c, (k as u32 % 2) + 1);
        }
        assert!(respects_pattern(&q, &dst, &src, &m));
        assert!(Representation::is_morphism(&q, &x, &y, &to_rep_morphism(&q, &dst, &src, &m)));
    }

    #[test]
    fn projective_dims() {
        let q = DynkinQuiver::a_linear(2);
        let f = FiniteField::prime(2).unwrap();
        let p = projective_rep(&q, &f, &[0, 1, 1]);
        assert_eq!(p.dim_vector(), vec![1, 3]);
        assert_eq!(end_dim(&q, &[0, 1]), 3);
    }
}
