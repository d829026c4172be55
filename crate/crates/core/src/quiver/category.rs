use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::dynkin::{DimVector, DynkinQuiver};
use super::proj::{copies_at, projective_rep};
use super::rep::{hom_dim, ExtPresentation, Representation};
use crate::error::{Error, Result};
use crate::gf::{enumerate_subspace, extend_to_span, Fe, FieldMatrix, FiniteField};

/// Isomorphism class of a representation: a multiset of positive roots.
///
/// Ordering is lexicographic on (dimension vector, sorted root multiset).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "ClassRecord", try_from = "ClassRecord")]
pub struct RepIsoClass {
    dim: DimVector,
    mult: BTreeMap<DimVector, usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RootMult {
    pub root: DimVector,
    pub mult: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassRecord {
    pub dim: DimVector,
    pub summands: Vec<RootMult>,
}

impl From<RepIsoClass> for ClassRecord {
    fn from(c: RepIsoClass) -> Self {
        ClassRecord { dim: c.dim, summands: c.mult.into_iter().map(|(root, mult)| RootMult { root, mult }).collect() }
    }
}

impl TryFrom<ClassRecord> for RepIsoClass {
    type Error = String;
    fn try_from(r: ClassRecord) -> std::result::Result<Self, String> {
        let mut c = RepIsoClass::zero(r.dim.len());
        for s in r.summands {
            if s.root.len() != r.dim.len() || s.mult == 0 || s.root.iter().any(|&x| x < 0) {
                return Err("malformed root multiplicity record".into());
            }
            c = c.direct_sum(&RepIsoClass::from_root(&s.root).scale(s.mult));
        }
        if c.dim != r.dim {
            return Err("summands do not add up to the stated dimension vector".into());
        }
        Ok(c)
    }
}

impl RepIsoClass {
    /// The zero class on `n` vertices.
    pub fn zero(n: usize) -> Self {
        RepIsoClass { dim: vec![0; n], mult: BTreeMap::new() }
    }

    /// The indecomposable class of a root (not validated).
    pub fn from_root(root: &[i64]) -> Self {
        let mut mult = BTreeMap::new();
        mult.insert(root.to_vec(), 1);
        RepIsoClass { dim: root.to_vec(), mult }
    }

    /// Builds a class from (root, multiplicity) pairs, checking each key is a positive root.
    pub fn new(q: &DynkinQuiver, terms: &[(DimVector, usize)]) -> Result<Self> {
        let mut c = RepIsoClass::zero(q.n());
        for (root, m) in terms {
            if q.root_index(root).is_none() {
                return Err(Error::NotARoot(root.clone()));
            }
            c = c.direct_sum(&RepIsoClass::from_root(root).scale(*m));
        }
        Ok(c)
    }

    pub fn validate(&self, q: &DynkinQuiver) -> Result<()> {
        if self.dim.len() != q.n() {
            return Err(Error::InvalidClass(format!("class {self} has wrong number of vertices")));
        }
        for root in self.mult.keys() {
            if q.root_index(root).is_none() {
                return Err(Error::NotARoot(root.clone()));
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }
    pub fn terms(&self) -> impl Iterator<Item = (&DimVector, usize)> {
        self.mult.iter().map(|(r, &m)| (r, m))
    }
    pub fn multiplicity(&self, root: &[i64]) -> usize {
        self.mult.get(root).copied().unwrap_or(0)
    }
    pub fn is_zero(&self) -> bool {
        self.mult.is_empty()
    }
    pub fn num_summands(&self) -> usize {
        self.mult.values().sum()
    }
    pub fn is_isotypic(&self) -> bool {
        self.mult.len() == 1
    }
    pub fn total_dim(&self) -> i64 {
        self.dim.iter().sum()
    }

    pub fn direct_sum(&self, other: &RepIsoClass) -> RepIsoClass {
        if self.is_zero() && self.dim.len() != other.dim.len() {
            return other.clone();
        }
        if other.is_zero() && self.dim.len() != other.dim.len() {
            return self.clone();
        }
        let mut out = self.clone();
        for (i, x) in other.dim.iter().enumerate() {
            out.dim[i] += x;
        }
        for (r, m) in &other.mult {
            *out.mult.entry(r.clone()).or_insert(0) += m;
        }
        out
    }

    /// The k-fold direct sum.
    pub fn scale(&self, k: usize) -> RepIsoClass {
        if k == 0 {
            return RepIsoClass::zero(self.dim.len());
        }
        RepIsoClass {
            dim: self.dim.iter().map(|x| x * k as i64).collect(),
            mult: self.mult.iter().map(|(r, m)| (r.clone(), m * k)).collect(),
        }
    }
}

impl fmt::Display for RepIsoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (root, m)) in self.mult.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            if *m > 1 {
                write!(f, "{m}*")?;
            }
            let parts: Vec<String> = root.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for RepIsoClass {
    type Err = Error;
    /// Parses `0` or sums like `(1,1)+2*(1,0)`; the number of vertices is read off the first root.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse class {s:?}"));
        if s == "0" {
            return Err(Error::Parse("the zero class needs a vertex count; use RepIsoClass::zero".into()));
        }
        let mut c: Option<RepIsoClass> = None;
        for part in s.split('+') {
            let part = part.trim();
            let (m, root) = match part.split_once('*') {
                Some((m, r)) => (m.trim().parse::<usize>().map_err(|_| bad())?, r.trim()),
                None => (1, part),
            };
            let inner = root.strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
            let v: Vec<i64> =
                inner.split(',').map(|x| x.trim().parse::<i64>().map_err(|_| bad())).collect::<Result<_>>()?;
            if v.iter().any(|&x| x < 0) || m == 0 {
                return Err(bad());
            }
            let term = RepIsoClass::from_root(&v).scale(m);
            c = Some(match c {
                None => term,
                Some(prev) if prev.dim.len() == v.len() => prev.direct_sum(&term),
                Some(_) => return Err(bad()),
            });
        }
        c.ok_or_else(bad)
    }
}

impl RepIsoClass {
    /// Parses a class on `n` vertices, accepting `0` for the zero class.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(RepIsoClass::zero(n));
        }
        let c: RepIsoClass = s.parse()?;
        if c.dim.len() != n {
            return Err(Error::Parse(format!("class {s:?} does not have {n} vertices")));
        }
        Ok(c)
    }
}

fn root_indices(q: &DynkinQuiver, c: &RepIsoClass) -> Vec<(usize, i64)> {
    c.terms()
        .map(|(r, m)| (q.root_index(r).unwrap_or_else(|| panic!("{r:?} is not a root")), m as i64))
        .collect()
}

/// dim Hom(X, Y) for classes, from the root Hom table.
pub fn hom_dim_classes(q: &DynkinQuiver, x: &RepIsoClass, y: &RepIsoClass) -> i64 {
    let (a, b) = (root_indices(q, x), root_indices(q, y));
    a.iter().map(|&(i, m)| b.iter().map(|&(j, n)| m * n * q.hom_dim_roots(i, j)).sum::<i64>()).sum()
}

pub fn ext_dim_classes(q: &DynkinQuiver, x: &RepIsoClass, y: &RepIsoClass) -> i64 {
    hom_dim_classes(q, x, y) - q.euler_form(x.dim(), y.dim())
}

/// |GL_m(F_q)|.
pub fn gl_order(q: u64, m: usize) -> BigInt {
    let qm = BigInt::from(q).pow(m as u32);
    (0..m).map(|j| &qm - BigInt::from(q).pow(j as u32)).product()
}

/// a_X = |Aut(X)| = q^{dim End − Σ m_β²} Π_β |GL_{m_β}(F_q)|.
pub fn aut_order(quiver: &DynkinQuiver, c: &RepIsoClass, q: u64) -> BigInt {
    let end = hom_dim_classes(quiver, c, c);
    let sq: i64 = c.terms().map(|(_, m)| (m * m) as i64).sum();
    let mut a = BigInt::from(q).pow((end - sq) as u32);
    for (_, m) in c.terms() {
        a *= gl_order(q, m);
    }
    a
}

/// dim O_M = Σ ν_i² − dim End(M).
pub fn orbit_dim(q: &DynkinQuiver, c: &RepIsoClass) -> i64 {
    c.dim().iter().map(|x| x * x).sum::<i64>() - hom_dim_classes(q, c, c)
}

/// Isotypic parts M_1, …, M_n with Hom(M_t, M_s) = 0 = Ext¹(M_s, M_t) for s < t.
pub fn directed_decomposition(q: &DynkinQuiver, c: &RepIsoClass) -> Result<Vec<RepIsoClass>> {
    let mut parts: Vec<(usize, RepIsoClass)> =
        c.terms().map(|(r, m)| (q.root_index(r).unwrap(), RepIsoClass::from_root(r).scale(m))).collect();
    parts.sort_by_key(|p| p.0);
    for s in 0..parts.len() {
        for t in s + 1..parts.len() {
            let (a, b) = (parts[s].0, parts[t].0);
            if q.hom_dim_roots(b, a) != 0 || q.ext_dim_roots(a, b) != 0 {
                return Err(Error::Inconsistent(format!("root order violates directedness at {c}")));
            }
        }
    }
    Ok(parts.into_iter().map(|p| p.1).collect())
}

/// All classes of dimension vector exactly `nu`, in canonical order.
pub fn classes_of_dim(q: &DynkinQuiver, nu: &[i64]) -> Vec<RepIsoClass> {
    fn go(roots: &[DimVector], k: usize, rest: &mut Vec<i64>, cur: &mut Vec<(DimVector, usize)>, out: &mut Vec<RepIsoClass>) {
        if rest.iter().all(|&x| x == 0) {
            let mut c = RepIsoClass::zero(rest.len());
            for (r, m) in cur.iter() {
                c = c.direct_sum(&RepIsoClass::from_root(r).scale(*m));
            }
            out.push(c);
            return;
        }
        if k == roots.len() {
            return;
        }
        let r = &roots[k];
        let mut m = 0;
        loop {
            if m > 0 {
                cur.push((r.clone(), m));
            }
            go(roots, k + 1, rest, cur, out);
            if m > 0 {
                cur.pop();
            }
            if rest.iter().zip(r).any(|(x, y)| x < y) {
                break;
            }
            for (x, y) in rest.iter_mut().zip(r) {
                *x -= y;
            }
            m += 1;
        }
        for (x, y) in rest.iter_mut().zip(r) {
            *x += y * m as i64;
        }
    }
    let mut out = Vec::new();
    go(q.positive_roots(), 0, &mut nu.to_vec(), &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All dimension vectors componentwise between 0 and `bound`.
pub fn dims_up_to(bound: &[i64]) -> Vec<DimVector> {
    let mut out = vec![vec![]];
    for &b in bound {
        out = out.into_iter().flat_map(|v: Vec<i64>| (0..=b).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// All classes with dimension vector componentwise ≤ `bound` (including zero), in canonical order.
pub fn classes_up_to(q: &DynkinQuiver, bound: &[i64]) -> Vec<RepIsoClass> {
    let mut out: Vec<RepIsoClass> = dims_up_to(bound).iter().flat_map(|d| classes_of_dim(q, d)).collect();
    out.sort();
    out
}

/// (dim Hom(I_X, M))_X over all positive roots X.
pub fn hom_fingerprint(q: &DynkinQuiver, c: &RepIsoClass) -> Vec<i64> {
    q.positive_roots().iter().map(|x| hom_dim_classes(q, &RepIsoClass::from_root(x), c)).collect()
}

/// Whether the orbit of `m` degenerates to that of `n` (O_N ⊆ closure of O_M), via Hom dominance.
pub fn degenerates_to(q: &DynkinQuiver, m: &RepIsoClass, n: &RepIsoClass) -> bool {
    m.dim() == n.dim() && hom_fingerprint(q, n).iter().zip(hom_fingerprint(q, m)).all(|(a, b)| *a >= b)
}

/// A minimal projective resolution 0 → P → Q → M → 0, with `f` the pattern matrix of P → Q.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub p_verts: Vec<usize>,
    pub q_verts: Vec<usize>,
    pub f: FieldMatrix,
}

impl Resolution {
    pub fn p_mult(&self, n: usize) -> Vec<usize> {
        super::proj::mult_from_verts(n, &self.p_verts)
    }
    pub fn q_mult(&self, n: usize) -> Vec<usize> {
        super::proj::mult_from_verts(n, &self.q_verts)
    }
}

/// The category rep_{F_q}(Q): realizations of classes and field-dependent computations.
pub struct RepCategory {
    quiver: Arc<DynkinQuiver>,
    field: FiniteField,
    indec: Mutex<HashMap<DimVector, Representation>>,
}

impl RepCategory {
    pub fn new(quiver: Arc<DynkinQuiver>, field: FiniteField) -> Self {
        RepCategory { quiver, field, indec: Mutex::new(HashMap::new()) }
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        &self.quiver
    }
    pub fn quiver_arc(&self) -> &Arc<DynkinQuiver> {
        &self.quiver
    }
    pub fn field(&self) -> &FiniteField {
        &self.field
    }
    pub fn q(&self) -> u64 {
        self.field.q() as u64
    }

    /// An indecomposable representation with dimension vector `root`.
    pub fn indecomposable(&self, root: &[i64]) -> Result<Representation> {
        if self.quiver.root_index(root).is_none() {
            return Err(Error::NotARoot(root.to_vec()));
        }
        if let Some(x) = self.indec.lock().unwrap().get(root) {
            return Ok(x.clone());
        }
        let x = self.build_indecomposable(root)?;
        self.indec.lock().unwrap().insert(root.to_vec(), x.clone());
        Ok(x)
    }

    fn build_indecomposable(&self, root: &[i64]) -> Result<Representation> {
        let q = &*self.quiver;
        if root.iter().sum::<i64>() == 1 {
            let i = root.iter().position(|&x| x == 1).unwrap();
            return Ok(Representation::simple(q, &self.field, i));
        }
        // a non-split extension between indecomposables of smaller dimension, simples first
        let mut splits: Vec<(DimVector, DimVector)> = Vec::new();
        for a in q.positive_roots() {
            let b: DimVector = root.iter().zip(a).map(|(x, y)| x - y).collect();
            if a < &b && q.root_index(&b).is_some() {
                splits.push((a.clone(), b));
            }
        }
        splits.sort_by_key(|(a, b)| a.iter().sum::<i64>().min(b.iter().sum::<i64>()));
        for (a, b) in splits {
            let (x, y) = (self.indecomposable(&a)?, self.indecomposable(&b)?);
            for (m, n) in [(&x, &y), (&y, &x)] {
                let ext = ExtPresentation::new(q, m, n);
                for phi in enumerate_subspace(&self.field, ext.cocycle_len, &ext.complement).skip(1).take(64) {
                    let e = ext.middle_term(q, m, n, &phi);
                    if hom_dim(q, &e, &e) == 1 {
                        return Ok(e);
                    }
                }
            }
        }
        Err(Error::Inconsistent(format!("no indecomposable found for root {root:?}")))
    }

    /// A representation in the class `c`: the direct sum of its indecomposable summands.
    pub fn realize(&self, c: &RepIsoClass) -> Result<Representation> {
        c.validate(&self.quiver)?;
        let mut x = Representation::zero(&self.quiver, &self.field);
        for (root, m) in c.terms() {
            let ind = self.indecomposable(root)?;
            for _ in 0..m {
                x = x.direct_sum(&ind);
            }
        }
        Ok(x)
    }

    /// Krull–Schmidt decomposition by the Hom fingerprint against all indecomposables.
    pub fn decompose(&self, x: &Representation) -> Result<RepIsoClass> {
        let q = &*self.quiver;
        let dim = x.dim_vector();
        let roots = q.positive_roots();
        let mut mult = vec![0i64; roots.len()];
        let mut out = RepIsoClass::zero(q.n());
        for g in 0..roots.len() {
            if roots[g].iter().zip(&dim).any(|(a, b)| a > b) {
                continue;
            }
            let fp = hom_dim(q, x, &self.indecomposable(&roots[g])?) as i64;
            let lower: i64 = (0..g).map(|b| mult[b] * q.hom_dim_roots(b, g)).sum();
            let m = fp - lower;
            if m < 0 {
                return Err(Error::Inconsistent(format!("negative multiplicity for root {:?}", roots[g])));
            }
            mult[g] = m;
            if m > 0 {
                out = out.direct_sum(&RepIsoClass::from_root(&roots[g]).scale(m as usize));
            }
        }
        if out.dim() != &dim {
            return Err(Error::Inconsistent(format!("fingerprint solution {out} does not have dimension {dim:?}")));
        }
        Ok(out)
    }

    pub fn aut_order(&self, c: &RepIsoClass) -> BigInt {
        aut_order(&self.quiver, c, self.q())
    }

    pub fn min_proj_resolution(&self, c: &RepIsoClass) -> Result<Resolution> {
        Ok(self.resolve(&self.realize(c)?))
    }

    /// Minimal projective resolution of an explicit representation.
    pub fn resolve(&self, m: &Representation) -> Resolution {
        let q = &*self.quiver;
        let f = &self.field;
        let n = q.n();
        let units = |len: usize| -> Vec<Vec<Fe>> {
            (0..len)
                .map(|i| {
                    let mut u = vec![0; len];
                    u[i] = 1;
                    u
                })
                .collect()
        };
        // projective cover: generators of a complement of the radical at each vertex
        let mut q_verts = Vec::new();
        let mut gens: Vec<Vec<Fe>> = Vec::new();
        for i in 0..n {
            let mut rad = Vec::new();
            for (h, &(_, t)) in q.arrows().iter().enumerate() {
                if t == i {
                    rad.extend(m.map(h).column_space_basis());
                }
            }
            let base = extend_to_span(f, m.dims()[i], &[], &rad);
            for v in extend_to_span(f, m.dims()[i], &base, &units(m.dims()[i])) {
                q_verts.push(i);
                gens.push(v);
            }
        }
        let qrep = projective_rep(q, f, &q_verts);
        let kernel: Vec<Vec<Vec<Fe>>> = (0..n)
            .map(|k| {
                let at = copies_at(q, &q_verts, k);
                let cols: Vec<Vec<Fe>> =
                    at.iter().map(|&r| m.path_map(q, q_verts[r], k).unwrap().mul_vec(&gens[r])).collect();
                FieldMatrix::from_columns(f, m.dims()[k], &cols).nullspace_basis()
            })
            .collect();
        let mut p_verts = Vec::new();
        let mut columns = Vec::new();
        for j in 0..n {
            let len = qrep.dims()[j];
            let mut rad = Vec::new();
            for (h, &(s, t)) in q.arrows().iter().enumerate() {
                if t == j {
                    rad.extend(kernel[s].iter().map(|v| qrep.map(h).mul_vec(v)));
                }
            }
            let base = extend_to_span(f, len, &[], &rad);
            let at = copies_at(q, &q_verts, j);
            for w in extend_to_span(f, len, &base, &kernel[j]) {
                let mut col = vec![0; q_verts.len()];
                for (a, &r) in at.iter().enumerate() {
                    col[r] = w[a];
                }
                p_verts.push(j);
                columns.push(col);
            }
        }
        let fm = FieldMatrix::from_columns(f, q_verts.len(), &columns);
        Resolution { p_verts, q_verts, f: fm }
    }
}
