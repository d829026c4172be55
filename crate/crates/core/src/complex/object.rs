use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{FieldMatrix, FiniteField};
use crate::quiver::proj::{mult_from_verts, respects_pattern};
use crate::quiver::{DynkinQuiver, RepIsoClass};

/// A two-periodic complex of projectives: P¹ --d¹--> P⁰ --d⁰--> P¹ with d⁰d¹ = 0 = d¹d⁰.
///
/// `verts1`/`verts0` list the vertex of each indecomposable projective copy; `d1` is a pattern
/// matrix of shape |verts0| × |verts1| and `d0` of shape |verts1| × |verts0|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexObj {
    verts1: Vec<usize>,
    verts0: Vec<usize>,
    d1: FieldMatrix,
    d0: FieldMatrix,
}

impl ComplexObj {
    pub fn new(q: &DynkinQuiver, verts1: Vec<usize>, verts0: Vec<usize>, d1: FieldMatrix, d0: FieldMatrix) -> Result<Self> {
        if !respects_pattern(q, &verts0, &verts1, &d1) || !respects_pattern(q, &verts1, &verts0, &d0) {
            return Err(Error::InvalidMorphism("differential is not a morphism of projectives".into()));
        }
        if !d0.mul(&d1).is_zero() || !d1.mul(&d0).is_zero() {
            return Err(Error::InvalidMorphism("differentials do not compose to zero".into()));
        }
        Ok(ComplexObj { verts1, verts0, d1, d0 })
    }

    pub(crate) fn new_unchecked(verts1: Vec<usize>, verts0: Vec<usize>, d1: FieldMatrix, d0: FieldMatrix) -> Self {
        ComplexObj { verts1, verts0, d1, d0 }
    }

    pub fn zero(field: &FiniteField) -> Self {
        ComplexObj {
            verts1: vec![],
            verts0: vec![],
            d1: FieldMatrix::zeros(field, 0, 0),
            d0: FieldMatrix::zeros(field, 0, 0),
        }
    }

    pub fn verts1(&self) -> &[usize] {
        &self.verts1
    }
    pub fn verts0(&self) -> &[usize] {
        &self.verts0
    }
    pub fn d1(&self) -> &FieldMatrix {
        &self.d1
    }
    pub fn d0(&self) -> &FieldMatrix {
        &self.d0
    }
    pub fn field(&self) -> &FiniteField {
        self.d1.field()
    }
    /// Projective multiplicity vectors (e¹, e⁰).
    pub fn ue(&self, n: usize) -> (Vec<usize>, Vec<usize>) {
        (mult_from_verts(n, &self.verts1), mult_from_verts(n, &self.verts0))
    }

    /// (M¹, M⁰, d¹, d⁰) ↦ (M⁰, M¹, −d⁰, −d¹).
    pub fn shift(&self) -> ComplexObj {
        ComplexObj { verts1: self.verts0.clone(), verts0: self.verts1.clone(), d1: self.d0.neg(), d0: self.d1.neg() }
    }

    pub fn direct_sum(&self, other: &ComplexObj) -> ComplexObj {
        ComplexObj {
            verts1: [self.verts1.clone(), other.verts1.clone()].concat(),
            verts0: [self.verts0.clone(), other.verts0.clone()].concat(),
            d1: FieldMatrix::block_diag(&self.d1, &other.d1),
            d0: FieldMatrix::block_diag(&self.d0, &other.d0),
        }
    }
}

/// A chain map (f¹, f⁰) between complexes, as pattern matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub f1: FieldMatrix,
    pub f0: FieldMatrix,
}

impl ChainMap {
    pub fn zero(x: &ComplexObj, y: &ComplexObj) -> ChainMap {
        let f = x.field();
        ChainMap {
            f1: FieldMatrix::zeros(f, y.verts1.len(), x.verts1.len()),
            f0: FieldMatrix::zeros(f, y.verts0.len(), x.verts0.len()),
        }
    }

    pub fn is_chain_map(&self, x: &ComplexObj, y: &ComplexObj) -> bool {
        y.d1.mul(&self.f1) == self.f0.mul(&x.d1) && y.d0.mul(&self.f0) == self.f1.mul(&x.d0)
    }
}

/// Normal form K_P ⊕ K_Q* ⊕ C_M ⊕ C_N* of an object of C_2(P): `kp`, `kq` are projective
/// multiplicity vectors, `h0 = M` and `h1 = N` the cohomology classes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexClass {
    pub kp: Vec<usize>,
    pub kq: Vec<usize>,
    pub h0: RepIsoClass,
    pub h1: RepIsoClass,
}

impl ComplexClass {
    pub fn zero(n: usize) -> Self {
        ComplexClass { kp: vec![0; n], kq: vec![0; n], h0: RepIsoClass::zero(n), h1: RepIsoClass::zero(n) }
    }

    /// C_M.
    pub fn c(m: &RepIsoClass) -> Self {
        ComplexClass { h0: m.clone(), ..Self::zero(m.dim().len()) }
    }

    /// C_N*.
    pub fn c_star(n: &RepIsoClass) -> Self {
        ComplexClass { h1: n.clone(), ..Self::zero(n.dim().len()) }
    }

    /// K_P for the projective with multiplicities `p`.
    pub fn k(p: &[usize]) -> Self {
        ComplexClass { kp: p.to_vec(), ..Self::zero(p.len()) }
    }

    /// K_Q*.
    pub fn k_star(p: &[usize]) -> Self {
        ComplexClass { kq: p.to_vec(), ..Self::zero(p.len()) }
    }

    pub fn n(&self) -> usize {
        self.kp.len()
    }

    pub fn direct_sum(&self, o: &ComplexClass) -> ComplexClass {
        ComplexClass {
            kp: self.kp.iter().zip(&o.kp).map(|(a, b)| a + b).collect(),
            kq: self.kq.iter().zip(&o.kq).map(|(a, b)| a + b).collect(),
            h0: self.h0.direct_sum(&o.h0),
            h1: self.h1.direct_sum(&o.h1),
        }
    }

    /// The class of the shifted complex.
    pub fn shift(&self) -> ComplexClass {
        ComplexClass { kp: self.kq.clone(), kq: self.kp.clone(), h0: self.h1.clone(), h1: self.h0.clone() }
    }

    pub fn is_zero(&self) -> bool {
        *self == Self::zero(self.n())
    }

    /// No contractible summand.
    pub fn is_radical(&self) -> bool {
        self.kp.iter().all(|&x| x == 0) && self.kq.iter().all(|&x| x == 0)
    }

    /// The radical part C_M ⊕ C_N*.
    pub fn radical_part(&self) -> ComplexClass {
        ComplexClass { h0: self.h0.clone(), h1: self.h1.clone(), ..Self::zero(self.n()) }
    }

    pub fn validate(&self, q: &DynkinQuiver) -> Result<()> {
        if self.kp.len() != q.n() || self.kq.len() != q.n() {
            return Err(Error::InvalidClass("projective multiplicity vector has wrong length".into()));
        }
        self.h0.validate(q)?;
        self.h1.validate(q)
    }

    fn key(&self) -> (&RepIsoClass, &RepIsoClass, &Vec<usize>, &Vec<usize>) {
        (&self.h0, &self.h1, &self.kp, &self.kq)
    }
}

impl PartialOrd for ComplexClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ComplexClass {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::fmt::Display for ComplexClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        let vec = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        if self.kp.iter().any(|&x| x > 0) {
            parts.push(format!("K[{}]", vec(&self.kp)));
        }
        if self.kq.iter().any(|&x| x > 0) {
            parts.push(format!("K*[{}]", vec(&self.kq)));
        }
        if !self.h0.is_zero() {
            parts.push(format!("C[{}]", self.h0));
        }
        if !self.h1.is_zero() {
            parts.push(format!("C*[{}]", self.h1));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl ComplexClass {
    /// Parses the text form produced by `Display`, e.g. `K[0,1] + C[(1,0)] + C*[(0,1)]` or `0`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let s = s.trim();
        let mut c = Self::zero(n);
        if s == "0" {
            return Ok(c);
        }
        let bad = || Error::Parse(format!("cannot parse complex class {s:?}"));
        for part in split_top_level(s) {
            let part = part.trim();
            let open = part.find('[').ok_or_else(bad)?;
            let inner = part[open + 1..].strip_suffix(']').ok_or_else(bad)?;
            let mults = || -> Result<Vec<usize>> {
                let v: Vec<usize> = inner.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?;
                if v.len() != n {
                    return Err(bad());
                }
                Ok(v)
            };
            let term = match &part[..open] {
                "K" => ComplexClass::k(&mults()?),
                "K*" => ComplexClass::k_star(&mults()?),
                "C" => ComplexClass::c(&RepIsoClass::parse(n, inner)?),
                "C*" => ComplexClass::c_star(&RepIsoClass::parse(n, inner)?),
                _ => return Err(bad()),
            };
            c = c.direct_sum(&term);
        }
        Ok(c)
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shift_is_an_involution() {
        let q = DynkinQuiver::a_linear(2);
        let f = FiniteField::prime(3).unwrap();
        let k = ComplexObj::new(&q, vec![1], vec![1], FieldMatrix::identity(&f, 1), FieldMatrix::zeros(&f, 1, 1)).unwrap();
        assert_eq!(k.shift().shift(), k);
        assert_eq!(k.shift().d0(), &FieldMatrix::identity(&f, 1).neg());
        assert_eq!(ComplexObj::zero(&f).shift(), ComplexObj::zero(&f));
    }

    #[test]
    fn invalid_differentials_are_rejected() {
        let q = DynkinQuiver::a_linear(2);
        let f = FiniteField::prime(2).unwrap();
        let id = FieldMatrix::identity(&f, 1);
        assert!(ComplexObj::new(&q, vec![1], vec![1], id.clone(), id.clone()).is_err());
        // P_1 → P_0 is not a morphism in the 1 → 2 orientation (there is no path 2 → 1)
        assert!(ComplexObj::new(&q, vec![0], vec![1], id, FieldMatrix::zeros(&f, 1, 1)).is_err());
    }

    #[test]
    fn class_text_round_trip() {
        let c = ComplexClass::parse(2, "K[0,1] + K*[1,0] + C[(1,0)+(0,1)] + C*[2*(1,1)]").unwrap();
        assert_eq!(ComplexClass::parse(2, &c.to_string()).unwrap(), c);
        assert_eq!(ComplexClass::parse(2, "0").unwrap(), ComplexClass::zero(2));
        assert_eq!(c.shift().shift(), c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<ComplexClass>(&json).unwrap(), c);
    }
}
