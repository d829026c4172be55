use std::collections::BTreeMap;

use super::ratfunc::{solve_left, RatFunc};
use super::table::{GenericElement, GenericHall, RepSide};
use crate::coeff::{CoeffRing, Laurent, LaurentPoly};
use crate::error::{Error, Result};
use crate::hall::HallStructure;
use crate::quiver::{classes_of_dim, degenerates_to, hom_dim_classes, orbit_dim, DynkinQuiver, RepIsoClass};

/// Square matrix over Q[v, v⁻¹], indexed `[row][column]`.
pub type LaurentMatrix = Vec<Vec<LaurentPoly>>;

pub fn identity(n: usize) -> LaurentMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() }).collect()).collect()
}

pub fn mat_mul(a: &LaurentMatrix, b: &LaurentMatrix) -> LaurentMatrix {
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..m).map(|j| (0..k).fold(LaurentPoly::zero(), |acc, t| acc.add(&row[t].mul(&b[t][j])))).collect())
        .collect()
}

pub fn transpose(a: &LaurentMatrix) -> LaurentMatrix {
    let m = a.first().map_or(0, |r| r.len());
    (0..m).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_bar(a: &LaurentMatrix) -> LaurentMatrix {
    a.iter().map(|row| row.iter().map(|x| x.bar()).collect()).collect()
}

/// Inverse of an upper unitriangular matrix by back substitution.
pub fn unitriangular_inverse(a: &LaurentMatrix) -> Option<LaurentMatrix> {
    let n = a.len();
    for i in 0..n {
        if a[i][i] != LaurentPoly::one() || (0..i).any(|j| !a[i][j].is_zero()) {
            return None;
        }
    }
    let mut inv = identity(n);
    for j in 0..n {
        for i in (0..j).rev() {
            let mut s = LaurentPoly::zero();
            for t in i + 1..=j {
                s = s.add(&a[i][t].mul(&inv[t][j]));
            }
            inv[i][j] = s.neg();
        }
    }
    Some(inv)
}

/// û_M = v^{dim End(M) − Σ_i ν_i} u_M.
pub fn normalization_exponent(q: &DynkinQuiver, m: &RepIsoClass) -> i64 {
    hom_dim_classes(q, m, m) - m.dim().iter().sum::<i64>()
}

/// Classes of dimension ν by increasing orbit dimension; the degeneration order refines it.
pub fn ordered_classes(q: &DynkinQuiver, nu: &[i64]) -> Vec<RepIsoClass> {
    let mut cs = classes_of_dim(q, nu);
    cs.sort_by_key(|c| (orbit_dim(q, c), c.clone()));
    cs
}

fn nu_len(h: &GenericHall<'_, RepSide>) -> usize {
    h.table().quiver().n()
}

/// Π_k u_{S_{i_k}}^{n_k} / [n_k]! for a word of (vertex, divided power).
pub fn monomial_expand(h: &GenericHall<'_, RepSide>, word: &[(usize, u32)]) -> Result<GenericElement<RepIsoClass>> {
    let r = Laurent;
    let mut acc = h.unit();
    for &(i, n) in word {
        let pw = h.power(RepIsoClass::zero(nu_len(h)), &h.simple(i), n as usize)?;
        let fact = r.qfactorial(n);
        let mut div = GenericElement::zero(&r);
        for (k, c) in pw.terms() {
            let d = c
                .div_exact(&fact)
                .filter(|d| d.is_integral())
                .ok_or_else(|| Error::NonIntegral(format!("coefficient {c} of {k} in u_S{}^{n} over [{n}]!", i + 1)))?;
            div.add_term(k.clone(), d);
        }
        acc = h.multiply(&acc, &div)?;
    }
    Ok(acc)
}

/// Words of divided powers with total dimension ν and no two adjacent letters at the same vertex.
pub fn divided_power_words(nu: &[i64]) -> Vec<Vec<(usize, u32)>> {
    fn go(rest: &mut Vec<i64>, last: Option<usize>, cur: &mut Vec<(usize, u32)>, out: &mut Vec<Vec<(usize, u32)>>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            if Some(i) == last || rest[i] == 0 {
                continue;
            }
            for p in 1..=rest[i] {
                rest[i] -= p;
                cur.push((i, p as u32));
                go(rest, Some(i), cur, out);
                cur.pop();
                rest[i] += p;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut nu.to_vec(), None, &mut Vec::new(), &mut out);
    out
}

/// bar(û_M) = Σ_N R[N][M] û_N on the classes of one dimension vector.
#[derive(Clone, Debug, PartialEq)]
pub struct BarTransition {
    pub nu: Vec<i64>,
    pub classes: Vec<RepIsoClass>,
    pub matrix: LaurentMatrix,
}

fn fail(nu: &[i64], what: String) -> Error {
    Error::VerificationFailed(format!("bar transition at ν={nu:?}: {what}"))
}

/// Solves for the bar involution from the bar-invariant divided-power monomials, then checks that
/// the result is Laurent, unitriangular for the degeneration order and involutive.
pub fn bar_transition(h: &GenericHall<'_, RepSide>, nu: &[i64]) -> Result<BarTransition> {
    let q = h.table().quiver();
    let classes = ordered_classes(q, nu);
    let k = classes.len();
    let index: BTreeMap<&RepIsoClass, usize> = classes.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let shifts: Vec<i64> = classes.iter().map(|c| normalization_exponent(q, c)).collect();
    let mut a: Vec<Vec<LaurentPoly>> = Vec::new();
    for w in divided_power_words(nu) {
        let x = monomial_expand(h, &w)?;
        let mut row = vec![LaurentPoly::zero(); k];
        for (c, coef) in x.terms() {
            let j = *index.get(c).ok_or_else(|| fail(nu, format!("monomial lands on {c}")))?;
            row[j] = coef.shift(-shifts[j]);
        }
        a.push(row);
    }
    let lift = |m: &Vec<Vec<LaurentPoly>>| -> Vec<Vec<RatFunc>> {
        m.iter().map(|r| r.iter().map(RatFunc::from_laurent).collect()).collect()
    };
    let abar: Vec<Vec<LaurentPoly>> = a.iter().map(|r| r.iter().map(|x| x.bar()).collect()).collect();
    let rt = solve_left(&lift(&abar), &lift(&a)).ok_or_else(|| fail(nu, "monomial system is rank-deficient".into()))?;
    let mut rt_l = Vec::with_capacity(k);
    for row in &rt {
        let r: Option<Vec<LaurentPoly>> = row.iter().map(|x| x.to_laurent()).collect();
        rt_l.push(r.ok_or_else(|| fail(nu, "entry is not a Laurent polynomial".into()))?);
    }
    let matrix = transpose(&rt_l);
    for (i, n) in classes.iter().enumerate() {
        if matrix[i][i] != LaurentPoly::one() {
            return Err(fail(nu, format!("diagonal entry at {n} is {}", matrix[i][i])));
        }
        for (j, m) in classes.iter().enumerate() {
            if i != j && !matrix[i][j].is_zero() && !degenerates_to(q, m, n) {
                return Err(fail(nu, format!("entry ({n}, {m}) = {} outside the orbit closure", matrix[i][j])));
            }
        }
    }
    if mat_mul(&mat_bar(&matrix), &matrix) != identity(k) {
        return Err(fail(nu, "R̄·R is not the identity".into()));
    }
    Ok(BarTransition { nu: nu.to_vec(), classes, matrix })
}

/// b_M = Σ_N C[N][M] û_N: bar-invariant, C[M][M] = 1, C[N][M] ∈ v⁻¹Z[v⁻¹] for N ≠ M.
#[derive(Clone, Debug, PartialEq)]
pub struct CanonicalBasis {
    pub nu: Vec<i64>,
    pub classes: Vec<RepIsoClass>,
    pub bar: LaurentMatrix,
    pub coeffs: LaurentMatrix,
    /// Whether every coefficient has nonnegative integer coefficients.
    pub positive: bool,
}

impl CanonicalBasis {
    /// Bar-invariance by substitution: R·C̄ = C.
    pub fn is_bar_invariant(&self) -> bool {
        mat_mul(&self.bar, &mat_bar(&self.coeffs)) == self.coeffs
    }

    pub fn is_unitriangular(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len()).all(|i| {
            (0..c.len()).all(|j| match i.cmp(&j) {
                std::cmp::Ordering::Equal => c[i][j] == LaurentPoly::one(),
                std::cmp::Ordering::Greater => c[i][j].is_zero(),
                std::cmp::Ordering::Less => c[i][j].is_integral() && c[i][j].in_strictly_negative_part(),
            })
        })
    }

    /// The transition to the dual basis: (C⁻¹)ᵀ.
    pub fn dual(&self) -> LaurentMatrix {
        dual_canonical_basis(&self.coeffs).expect("canonical coefficients are unitriangular")
    }
}

/// The inverse transpose of an upper unitriangular transition matrix.
pub fn dual_canonical_basis(c: &LaurentMatrix) -> Result<LaurentMatrix> {
    unitriangular_inverse(c)
        .map(|m| transpose(&m))
        .ok_or_else(|| Error::VerificationFailed("transition matrix is not unitriangular".into()))
}

fn negative_part(p: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms(p.terms().filter(|(e, _)| **e < 0).map(|(e, c)| (*e, c.clone())))
}

/// Kazhdan–Lusztig recursion down the degeneration order.
pub fn canonical_basis(h: &GenericHall<'_, RepSide>, nu: &[i64]) -> Result<CanonicalBasis> {
    let bt = bar_transition(h, nu)?;
    let q = h.table().quiver();
    let k = bt.classes.len();
    let r = &bt.matrix;
    let mut c = identity(k);
    for m in 0..k {
        for kk in (0..m).rev() {
            let mut rhs = LaurentPoly::zero();
            for n in kk + 1..=m {
                rhs = rhs.add(&r[kk][n].mul(&c[n][m].bar()));
            }
            let neg = negative_part(&rhs);
            if neg.sub(&neg.bar()) != rhs {
                return Err(Error::VerificationFailed(format!(
                    "canonical recursion at ν={nu:?}: ({}, {}) has rhs {rhs} with a constant term",
                    bt.classes[kk], bt.classes[m]
                )));
            }
            if !neg.is_zero() && !degenerates_to(q, &bt.classes[m], &bt.classes[kk]) {
                return Err(Error::VerificationFailed(format!(
                    "canonical recursion at ν={nu:?}: {} is not in the closure of {}",
                    bt.classes[kk], bt.classes[m]
                )));
            }
            c[kk][m] = neg;
        }
    }
    let positive = c.iter().flatten().all(|x| x.is_integral() && x.has_nonnegative_coeffs());
    let cb = CanonicalBasis { nu: nu.to_vec(), classes: bt.classes, bar: bt.matrix, coeffs: c, positive };
    if !cb.is_bar_invariant() || !cb.is_unitriangular() {
        return Err(Error::VerificationFailed(format!("canonical basis at ν={nu:?} fails its defining properties")));
    }
    Ok(cb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;
    use crate::generic::table::GenericStructureTable;
    use std::sync::Arc;

    fn table(n: usize, bound: Vec<i64>) -> GenericStructureTable<RepSide> {
        GenericStructureTable::build(Arc::new(DynkinQuiver::a_linear(n)), bound, &[2, 3, 5, 7, 11], 1 << 22).unwrap()
    }

    #[test]
    fn divided_square() {
        let t = table(1, vec![2]);
        let h = t.algebra();
        let e2 = monomial_expand(&h, &[(0, 2)]).unwrap();
        assert_eq!(e2.len(), 1);
        assert_eq!(e2.coeff(&RepIsoClass::from_root(&[1]).scale(2)), LaurentPoly::v(2));
        assert_eq!(monomial_expand(&h, &[(0, 1)]).unwrap(), h.simple(0));
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(divided_power_words(&[1, 1]).len(), 2);
        // (2,1): 1²2, 2 1², 1 2 1, with 1² as one letter or two separated ones
        assert_eq!(divided_power_words(&[2, 1]), vec![vec![(0, 1), (1, 1), (0, 1)], vec![(0, 2), (1, 1)], vec![(1, 1), (0, 2)]]);
    }

    #[test]
    fn a2_rank_two() {
        let t = table(2, vec![1, 1]);
        let cb = canonical_basis(&t.algebra(), &[1, 1]).unwrap();
        assert_eq!(cb.classes.len(), 2);
        // split class first (smaller orbit)
        assert_eq!(cb.classes[1], RepIsoClass::from_root(&[1, 1]));
        let vm = LaurentPoly::v(-1);
        assert_eq!(cb.bar[0][1], vm.sub(&LaurentPoly::v(1)));
        assert_eq!(cb.coeffs[0][1], vm);
        assert!(cb.positive);
        let d = cb.dual();
        assert_eq!(mat_mul(&transpose(&d), &cb.coeffs), identity(2));
    }

    #[test]
    fn a2_window_properties() {
        let t = table(2, vec![2, 2]);
        let h = t.algebra();
        for nu in [[1, 1], [2, 1], [1, 2], [2, 2]] {
            let cb = canonical_basis(&h, &nu).unwrap();
            assert!(cb.is_bar_invariant() && cb.is_unitriangular(), "{nu:?}");
            assert_eq!(mat_mul(&mat_bar(&cb.bar), &cb.bar), identity(cb.classes.len()));
        }
        let single = canonical_basis(&h, &[1, 0]).unwrap();
        assert_eq!(single.coeffs, identity(1));
        assert_eq!(single.bar, identity(1));
    }

    #[test]
    fn inverse_of_unitriangular() {
        let a = vec![
            vec![LaurentPoly::one(), LaurentPoly::v(-1).scale(&rat(-1))],
            vec![LaurentPoly::zero(), LaurentPoly::one()],
        ];
        let inv = unitriangular_inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(2));
        assert!(unitriangular_inverse(&transpose(&a)).is_none());
    }
}
