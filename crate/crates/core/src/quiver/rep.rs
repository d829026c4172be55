use super::dynkin::{DimVector, DynkinQuiver};
use crate::error::{Error, Result};
use crate::gf::{extend_to_span, Fe, FieldMatrix, FiniteField};

/// A representation of a quiver over F_q: a vector space per vertex and a matrix per arrow
/// (of shape dim at target × dim at source).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<FieldMatrix>,
    field: FiniteField,
}

/// A morphism of representations, one matrix per vertex.
pub type RepMorphism = Vec<FieldMatrix>;

impl Representation {
    pub fn new(q: &DynkinQuiver, field: &FiniteField, dims: Vec<usize>, maps: Vec<FieldMatrix>) -> Result<Self> {
        if dims.len() != q.n() || maps.len() != q.arrows().len() {
            return Err(Error::DimensionMismatch("representation does not match quiver".into()));
        }
        for (m, &(s, t)) in maps.iter().zip(q.arrows()) {
            if m.rows() != dims[t] || m.cols() != dims[s] || m.field() != field {
                return Err(Error::DimensionMismatch(format!(
                    "arrow map of shape {}x{} between spaces of dims {} -> {}",
                    m.rows(),
                    m.cols(),
                    dims[s],
                    dims[t]
                )));
            }
        }
        Ok(Representation { dims, maps, field: field.clone() })
    }

    pub fn zero(q: &DynkinQuiver, field: &FiniteField) -> Self {
        let maps = q.arrows().iter().map(|_| FieldMatrix::zeros(field, 0, 0)).collect();
        Representation { dims: vec![0; q.n()], maps, field: field.clone() }
    }

    pub fn simple(q: &DynkinQuiver, field: &FiniteField, i: usize) -> Self {
        let mut dims = vec![0; q.n()];
        dims[i] = 1;
        let maps = q.arrows().iter().map(|&(s, t)| FieldMatrix::zeros(field, dims[t], dims[s])).collect();
        Representation { dims, maps, field: field.clone() }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }
    pub fn dim_vector(&self) -> DimVector {
        self.dims.iter().map(|&d| d as i64).collect()
    }
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }
    pub fn maps(&self) -> &[FieldMatrix] {
        &self.maps
    }
    pub fn map(&self, h: usize) -> &FieldMatrix {
        &self.maps[h]
    }
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn direct_sum(&self, other: &Representation) -> Representation {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| FieldMatrix::block_diag(a, b)).collect();
        Representation { dims, maps, field: self.field.clone() }
    }

    /// Composite of the arrow maps along the unique path `i → j`.
    pub fn path_map(&self, q: &DynkinQuiver, i: usize, j: usize) -> Option<FieldMatrix> {
        let path = q.path(i, j)?;
        let mut m = FieldMatrix::identity(&self.field, self.dims[i]);
        for h in path {
            m = self.maps[h].mul(&m);
        }
        Some(m)
    }

    /// Checks the intertwiner equations for a vertexwise family of matrices `X → Y`.
    pub fn is_morphism(q: &DynkinQuiver, x: &Representation, y: &Representation, f: &[FieldMatrix]) -> bool {
        q.arrows().iter().enumerate().all(|(h, &(s, t))| f[t].mul(&x.maps[h]) == y.maps[h].mul(&f[s]))
    }

    /// Whether the graded subspace spanned vertexwise by `basis[k]` is stable under all arrows.
    pub fn is_subrep(&self, q: &DynkinQuiver, basis: &[Vec<Vec<Fe>>]) -> bool {
        q.arrows().iter().enumerate().all(|(h, &(s, t))| {
            basis[s].iter().all(|v| {
                let w = self.maps[h].mul_vec(v);
                let span = FieldMatrix::from_columns(&self.field, self.dims[t], &basis[t]);
                span.solve_right(&w).unwrap().is_some()
            })
        })
    }

    /// The subquotient W/U for nested subrepresentations U ⊆ W, given by vertexwise spanning sets.
    pub fn subquotient(&self, q: &DynkinQuiver, big: &[Vec<Vec<Fe>>], small: &[Vec<Vec<Fe>>]) -> Representation {
        let f = &self.field;
        let n = q.n();
        let mut small_basis = Vec::with_capacity(n);
        let mut comp = Vec::with_capacity(n);
        for k in 0..n {
            let u = extend_to_span(f, self.dims[k], &[], &small[k]);
            let c = extend_to_span(f, self.dims[k], &u, &big[k]);
            small_basis.push(u);
            comp.push(c);
        }
        let dims: Vec<usize> = comp.iter().map(|c| c.len()).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(h, &(s, t))| {
                let mut cols_t: Vec<Vec<Fe>> = small_basis[t].clone();
                cols_t.extend(comp[t].iter().cloned());
                let frame = FieldMatrix::from_columns(f, self.dims[t], &cols_t);
                let offset = small_basis[t].len();
                let cols: Vec<Vec<Fe>> = comp[s]
                    .iter()
                    .map(|v| {
                        let w = self.maps[h].mul_vec(v);
                        let x = frame.solve_right(&w).unwrap().expect("subquotient: W is not a subrepresentation");
                        x[offset..].to_vec()
                    })
                    .collect();
                FieldMatrix::from_columns(f, dims[t], &cols)
            })
            .collect();
        Representation { dims, maps, field: f.clone() }
    }

    /// Restriction to a subrepresentation given by vertexwise bases.
    pub fn restrict(&self, q: &DynkinQuiver, basis: &[Vec<Vec<Fe>>]) -> Representation {
        let zero: Vec<Vec<Vec<Fe>>> = basis.iter().map(|_| Vec::new()).collect();
        self.subquotient(q, basis, &zero)
    }
}

/// Variable layout for the vertexwise matrices of a morphism X → Y.
fn hom_offsets(x: &Representation, y: &Representation) -> Vec<usize> {
    let mut off = Vec::with_capacity(x.dims.len() + 1);
    let mut acc = 0;
    for (a, b) in x.dims.iter().zip(&y.dims) {
        off.push(acc);
        acc += a * b;
    }
    off.push(acc);
    off
}

/// Coefficient matrix of the intertwiner equations f_t x_h = y_h f_s.
fn hom_system(q: &DynkinQuiver, x: &Representation, y: &Representation) -> (FieldMatrix, Vec<usize>) {
    let f = &x.field;
    let off = hom_offsets(x, y);
    let nvars = *off.last().unwrap();
    let nrows: usize = q.arrows().iter().map(|&(s, t)| y.dims[t] * x.dims[s]).sum();
    let mut m = FieldMatrix::zeros(f, nrows, nvars);
    let mut row = 0;
    for (h, &(s, t)) in q.arrows().iter().enumerate() {
        let (xs, yt, xt, ys) = (x.dims[s], y.dims[t], x.dims[t], y.dims[s]);
        for a in 0..yt {
            for b in 0..xs {
                // Σ_c f_t[a][c] x_h[c][b]
                for c in 0..xt {
                    let coef = x.maps[h].get(c, b);
                    if coef != 0 {
                        let var = off[t] + a * xt + c;
                        m.set(row, var, f.add(m.get(row, var), coef));
                    }
                }
                // − Σ_c y_h[a][c] f_s[c][b]
                for c in 0..ys {
                    let coef = y.maps[h].get(a, c);
                    if coef != 0 {
                        let var = off[s] + c * xs + b;
                        m.set(row, var, f.sub(m.get(row, var), coef));
                    }
                }
                row += 1;
            }
        }
    }
    (m, off)
}

/// A basis of Hom(X, Y), each element given vertexwise.
pub fn hom_basis(q: &DynkinQuiver, x: &Representation, y: &Representation) -> Vec<RepMorphism> {
    let (m, off) = hom_system(q, x, y);
    m.nullspace_basis()
        .into_iter()
        .map(|v| {
            (0..q.n())
                .map(|k| FieldMatrix::from_fn(&x.field, y.dims[k], x.dims[k], |r, c| v[off[k] + r * x.dims[k] + c]))
                .collect()
        })
        .collect()
}

pub fn hom_dim(q: &DynkinQuiver, x: &Representation, y: &Representation) -> usize {
    let (m, off) = hom_system(q, x, y);
    off.last().unwrap() - m.rank()
}

/// dim Ext¹(X, Y) = dim Hom(X, Y) − ⟨dim X, dim Y⟩ (the path algebra is hereditary).
pub fn ext1_dim(q: &DynkinQuiver, x: &Representation, y: &Representation) -> usize {
    let e = hom_dim(q, x, y) as i64 - q.euler_form(&x.dim_vector(), &y.dim_vector());
    assert!(e >= 0, "negative Ext dimension: Hom computation is inconsistent");
    e as usize
}

/// Extensions of M by N presented through the standard projective resolution of M:
/// cocycles are families φ_h : M_{s(h)} → N_{t(h)}, coboundaries are the images of
/// (g_i : M_i → N_i) under g ↦ (N_h g_s − g_t M_h)_h.
pub struct ExtPresentation {
    offsets: Vec<usize>,
    /// Cocycle vectors whose span is a complement of the coboundaries; one class per combination.
    pub complement: Vec<Vec<Fe>>,
    pub cocycle_len: usize,
}

impl ExtPresentation {
    pub fn new(q: &DynkinQuiver, m: &Representation, n: &Representation) -> Self {
        let f = &m.field;
        let mut offsets = Vec::with_capacity(q.arrows().len() + 1);
        let mut acc = 0;
        for &(s, t) in q.arrows() {
            offsets.push(acc);
            acc += n.dims[t] * m.dims[s];
        }
        offsets.push(acc);
        let cocycle_len = acc;
        let goff = hom_offsets(m, n);
        let mut coboundaries = Vec::new();
        for k in 0..q.n() {
            for r in 0..n.dims[k] {
                for c in 0..m.dims[k] {
                    // g = unit matrix E_{rc} at vertex k
                    let mut v = vec![0; cocycle_len];
                    for (h, &(s, t)) in q.arrows().iter().enumerate() {
                        let cols = m.dims[s];
                        if s == k {
                            // N_h E_{rc}: column c gets N_h[:, r]
                            for a in 0..n.dims[t] {
                                let idx = offsets[h] + a * cols + c;
                                v[idx] = f.add(v[idx], n.maps[h].get(a, r));
                            }
                        }
                        if t == k {
                            // − E_{rc} M_h: row r gets −M_h[c, :]
                            for b in 0..cols {
                                let idx = offsets[h] + r * cols + b;
                                v[idx] = f.sub(v[idx], m.maps[h].get(c, b));
                            }
                        }
                    }
                    coboundaries.push(v);
                }
            }
        }
        debug_assert_eq!(coboundaries.len(), *goff.last().unwrap());
        let base = extend_to_span(f, cocycle_len, &[], &coboundaries);
        let units: Vec<Vec<Fe>> = (0..cocycle_len)
            .map(|i| {
                let mut u = vec![0; cocycle_len];
                u[i] = 1;
                u
            })
            .collect();
        let complement = extend_to_span(f, cocycle_len, &base, &units);
        ExtPresentation { offsets, complement, cocycle_len }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    /// The middle term E of 0 → N → E → M → 0 for the cocycle φ: E_h = [[N_h, φ_h], [0, M_h]].
    pub fn middle_term(&self, q: &DynkinQuiver, m: &Representation, n: &Representation, phi: &[Fe]) -> Representation {
        let f = &m.field;
        let dims: Vec<usize> = m.dims.iter().zip(&n.dims).map(|(a, b)| a + b).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(h, &(s, t))| {
                let cols = m.dims[s];
                let phi_h =
                    FieldMatrix::from_fn(f, n.dims[t], cols, |a, b| phi[self.offsets[h] + a * cols + b]);
                FieldMatrix::block2(&n.maps[h], &phi_h, &FieldMatrix::zeros(f, m.dims[t], n.dims[s]), &m.maps[h])
            })
            .collect();
        Representation { dims, maps, field: f.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> DynkinQuiver {
        DynkinQuiver::a_linear(2)
    }

    fn p1(f: &FiniteField) -> Representation {
        Representation::new(&a2(), f, vec![1, 1], vec![FieldMatrix::identity(f, 1)]).unwrap()
    }

    #[test]
    fn hom_examples_a2() {
        let q = a2();
        let f = FiniteField::prime(3).unwrap();
        let s1 = Representation::simple(&q, &f, 0);
        let s2 = Representation::simple(&q, &f, 1);
        assert_eq!(hom_dim(&q, &s1, &s2), 0);
        assert_eq!(hom_dim(&q, &p1(&f), &p1(&f)), 1);
        assert_eq!(hom_dim(&q, &s2, &p1(&f)), 1);
        for b in hom_basis(&q, &s2, &p1(&f)) {
            assert!(Representation::is_morphism(&q, &s2, &p1(&f), &b));
        }
        assert_eq!(ext1_dim(&q, &s1, &s2), 1);
        assert_eq!(ext1_dim(&q, &s2, &s1), 0);
        assert_eq!(ext1_dim(&q, &p1(&f), &s1), 0);
    }

    #[test]
    fn ext_presentation_matches_euler_form() {
        let q = a2();
        let f = FiniteField::prime(2).unwrap();
        let reps = [Representation::simple(&q, &f, 0), Representation::simple(&q, &f, 1), p1(&f)];
        for m in &reps {
            for n in &reps {
                assert_eq!(ExtPresentation::new(&q, m, n).dim(), ext1_dim(&q, m, n));
            }
        }
    }

    #[test]
    fn nonsplit_extension_of_simples_is_p1() {
        let q = a2();
        let f = FiniteField::prime(2).unwrap();
        let (s1, s2) = (Representation::simple(&q, &f, 0), Representation::simple(&q, &f, 1));
        let ext = ExtPresentation::new(&q, &s1, &s2);
        assert_eq!(ext.dim(), 1);
        let e = ext.middle_term(&q, &s1, &s2, &ext.complement[0]);
        assert_eq!(e.dims(), &[1, 1]);
        assert_eq!(hom_dim(&q, &e, &e), 1);
    }

    #[test]
    fn subquotient_of_p1() {
        let q = a2();
        let f = FiniteField::prime(5).unwrap();
        let p = p1(&f);
        let sub = vec![vec![], vec![vec![1]]];
        assert!(p.is_subrep(&q, &sub));
        let full = vec![vec![vec![1]], vec![vec![1]]];
        let quot = p.subquotient(&q, &full, &sub);
        assert_eq!(quot.dims(), &[1, 0]);
        let bad = vec![vec![vec![1]], vec![]];
        assert!(!p.is_subrep(&q, &bad));
    }
}
