use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::poly::{interpolate_counts, QPoly};
use crate::coeff::{Laurent, LaurentPoly, SqrtQ};
use crate::complex::{class_ue, complex_classes_up_to, C2Category, ComplexClass};
use crate::error::{Error, Result};
use crate::gf::{is_prime, FiniteField};
use crate::hall::{ue_pairing, BridgelandHall, HallElement, HallStructure, RingelHall};
use crate::quiver::{classes_up_to, DimVector, DynkinQuiver, RepCategory, RepIsoClass};

pub const DEFAULT_PRIMES: [u64; 5] = [2, 3, 5, 7, 11];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    A,
    C2,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "a",
            Side::C2 => "c2",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a" | "rep" => Ok(Side::A),
            "c2" | "complex" => Ok(Side::C2),
            _ => Err(Error::Config(format!("unknown side `{s}` (expected a or c2)"))),
        }
    }
}

/// One of the two categories whose Hall numbers are interpolated in q.
pub trait HallSide: Send + Sync + 'static {
    type Key: Ord + Clone + fmt::Display + fmt::Debug + Send + Sync;
    /// Window bound on classes.
    type Bound: Clone + fmt::Debug + Send + Sync;
    /// Numeric algebra at one prime.
    type Numeric: HallStructure<Self::Key, Ring = SqrtQ> + Send + Sync;
    const SIDE: Side;

    fn numeric(quiver: &Arc<DynkinQuiver>, p: u64, cap: u64) -> Result<Self::Numeric>;
    fn hall_numbers(alg: &Self::Numeric, m: &Self::Key, n: &Self::Key) -> Result<BTreeMap<Self::Key, BigInt>>;
    fn classes(quiver: &DynkinQuiver, bound: &Self::Bound) -> Vec<Self::Key>;
    /// Whether a product of `m` and `n` stays inside the window.
    fn fits(quiver: &DynkinQuiver, bound: &Self::Bound, m: &Self::Key, n: &Self::Key) -> bool;
    /// Upper bound on the degree in q of g^L_{MN}.
    fn degree_bound(quiver: &DynkinQuiver, m: &Self::Key, n: &Self::Key) -> usize;
    /// Exponent of v in the twisted product.
    fn twist(quiver: &DynkinQuiver, m: &Self::Key, n: &Self::Key) -> i64;
    fn unit(n: usize) -> Self::Key;
}

/// Representations of the quiver.
pub struct RepSide;

/// Two-periodic projective complexes.
pub struct ComplexSide;

impl HallSide for RepSide {
    type Key = RepIsoClass;
    type Bound = DimVector;
    type Numeric = RingelHall;
    const SIDE: Side = Side::A;

    fn numeric(quiver: &Arc<DynkinQuiver>, p: u64, cap: u64) -> Result<RingelHall> {
        Ok(RingelHall::new(RepCategory::new(quiver.clone(), FiniteField::prime(p as u32)?), cap))
    }
    fn hall_numbers(alg: &RingelHall, m: &RepIsoClass, n: &RepIsoClass) -> Result<BTreeMap<RepIsoClass, BigInt>> {
        alg.hall_numbers(m, n)
    }
    fn classes(quiver: &DynkinQuiver, bound: &DimVector) -> Vec<RepIsoClass> {
        classes_up_to(quiver, bound)
    }
    fn fits(_: &DynkinQuiver, bound: &DimVector, m: &RepIsoClass, n: &RepIsoClass) -> bool {
        (0..bound.len()).all(|i| m.dim()[i] + n.dim()[i] <= bound[i])
    }
    fn degree_bound(_: &DynkinQuiver, m: &RepIsoClass, n: &RepIsoClass) -> usize {
        m.dim().iter().zip(n.dim()).map(|(a, b)| (a * b) as usize).sum()
    }
    fn twist(quiver: &DynkinQuiver, m: &RepIsoClass, n: &RepIsoClass) -> i64 {
        quiver.euler_form(m.dim(), n.dim())
    }
    fn unit(n: usize) -> RepIsoClass {
        RepIsoClass::zero(n)
    }
}

/// Window on complexes: projective multiplicities (e¹, e⁰) bounded componentwise.
pub type UeBound = (Vec<usize>, Vec<usize>);

impl HallSide for ComplexSide {
    type Key = ComplexClass;
    type Bound = UeBound;
    type Numeric = BridgelandHall;
    const SIDE: Side = Side::C2;

    fn numeric(quiver: &Arc<DynkinQuiver>, p: u64, cap: u64) -> Result<BridgelandHall> {
        let rep = RepCategory::new(quiver.clone(), FiniteField::prime(p as u32)?);
        Ok(BridgelandHall::new(C2Category::new(rep), cap))
    }
    fn hall_numbers(alg: &BridgelandHall, m: &ComplexClass, n: &ComplexClass) -> Result<BTreeMap<ComplexClass, BigInt>> {
        alg.hall_numbers(m, n)
    }
    fn classes(quiver: &DynkinQuiver, bound: &UeBound) -> Vec<ComplexClass> {
        complex_classes_up_to(quiver, &bound.0, &bound.1)
    }
    fn fits(quiver: &DynkinQuiver, bound: &UeBound, m: &ComplexClass, n: &ComplexClass) -> bool {
        let (m1, m0) = class_ue(quiver, m);
        let (n1, n0) = class_ue(quiver, n);
        (0..quiver.n()).all(|i| m1[i] + n1[i] <= bound.0[i] && m0[i] + n0[i] <= bound.1[i])
    }
    fn degree_bound(quiver: &DynkinQuiver, m: &ComplexClass, n: &ComplexClass) -> usize {
        ue_pairing(quiver, n, m).max(0) as usize
    }
    fn twist(quiver: &DynkinQuiver, m: &ComplexClass, n: &ComplexClass) -> i64 {
        ue_pairing(quiver, m, n)
    }
    fn unit(n: usize) -> ComplexClass {
        ComplexClass::zero(n)
    }
}

/// Interpolated g^L_{MN} together with the counts it was fitted to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableEntry {
    pub poly: QPoly,
    /// One count per prime of the table, in order.
    pub counts: Vec<BigInt>,
}

/// One exported row.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub side: Side,
    pub l: String,
    pub m: String,
    pub n: String,
    pub poly: Vec<String>,
    pub counts: Vec<String>,
}

pub fn check_primes(primes: &[u64]) -> Result<()> {
    let distinct: BTreeSet<_> = primes.iter().collect();
    if distinct.len() != primes.len() {
        return Err(Error::Config(format!("primes must be distinct: {primes:?}")));
    }
    if let Some(p) = primes.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::Config(format!("{p} is not a prime")));
    }
    Ok(())
}

fn label<S: HallSide>(l: &S::Key, m: &S::Key, n: &S::Key) -> String {
    format!("{} L={l} M={m} N={n}", S::SIDE)
}

fn fit_triple<S: HallSide>(quiver: &DynkinQuiver, primes: &[u64], l: &S::Key, m: &S::Key, n: &S::Key, counts: Vec<BigInt>) -> Result<TableEntry> {
    let samples: Vec<(u64, BigInt)> = primes.iter().copied().zip(counts.iter().cloned()).collect();
    let poly = interpolate_counts(&label::<S>(l, m, n), &samples, S::degree_bound(quiver, m, n))?;
    Ok(TableEntry { poly, counts })
}

/// Interpolates a single Hall number g^L_{MN} as a polynomial in q from counts at `primes`.
pub fn interpolate_structure_poly<S: HallSide>(
    quiver: &Arc<DynkinQuiver>,
    l: &S::Key,
    m: &S::Key,
    n: &S::Key,
    primes: &[u64],
    cap: u64,
) -> Result<QPoly> {
    check_primes(primes)?;
    let counts = primes
        .par_iter()
        .map(|&p| {
            let alg = S::numeric(quiver, p, cap)?;
            Ok(S::hall_numbers(&alg, m, n)?.remove(l).unwrap_or_else(BigInt::zero))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(fit_triple::<S>(quiver, primes, l, m, n, counts)?.poly)
}

/// Hall polynomials g^L_{MN}(q) for every pair (M, N) in a bounded window.
pub struct GenericStructureTable<S: HallSide> {
    quiver: Arc<DynkinQuiver>,
    primes: Vec<u64>,
    bound: S::Bound,
    classes: Vec<S::Key>,
    entries: BTreeMap<(S::Key, S::Key), BTreeMap<S::Key, TableEntry>>,
}

impl<S: HallSide> GenericStructureTable<S> {
    /// Counts every window product at each prime, then interpolates each triple with hold-outs.
    pub fn build(quiver: Arc<DynkinQuiver>, bound: S::Bound, primes: &[u64], cap: u64) -> Result<Self> {
        check_primes(primes)?;
        let classes = S::classes(&quiver, &bound);
        let pairs: Vec<(S::Key, S::Key)> = classes
            .iter()
            .flat_map(|m| classes.iter().map(move |n| (m.clone(), n.clone())))
            .filter(|(m, n)| S::fits(&quiver, &bound, m, n))
            .collect();
        let algs: Vec<S::Numeric> = primes.iter().map(|&p| S::numeric(&quiver, p, cap)).collect::<Result<_>>()?;
        let per_prime: Vec<Vec<BTreeMap<S::Key, BigInt>>> = algs
            .iter()
            .map(|alg| pairs.par_iter().map(|(m, n)| S::hall_numbers(alg, m, n)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let entries = pairs
            .par_iter()
            .enumerate()
            .map(|(k, (m, n))| {
                let ls: BTreeSet<S::Key> = per_prime.iter().flat_map(|t| t[k].keys().cloned()).collect();
                let mut row = BTreeMap::new();
                for l in ls {
                    let counts = per_prime.iter().map(|t| t[k].get(&l).cloned().unwrap_or_else(BigInt::zero)).collect();
                    let e = fit_triple::<S>(&quiver, primes, &l, m, n, counts)?;
                    if !e.poly.is_zero() {
                        row.insert(l, e);
                    }
                }
                Ok(((m.clone(), n.clone()), row))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .collect();
        Ok(GenericStructureTable { quiver, primes: primes.to_vec(), bound, classes, entries })
    }

    pub fn quiver(&self) -> &DynkinQuiver {
        &self.quiver
    }
    pub fn quiver_arc(&self) -> &Arc<DynkinQuiver> {
        &self.quiver
    }
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }
    pub fn bound(&self) -> &S::Bound {
        &self.bound
    }
    pub fn classes(&self) -> &[S::Key] {
        &self.classes
    }
    pub fn pair_count(&self) -> usize {
        self.entries.len()
    }

    /// The products of a pair, or `None` outside the window.
    pub fn products(&self, m: &S::Key, n: &S::Key) -> Option<&BTreeMap<S::Key, TableEntry>> {
        self.entries.get(&(m.clone(), n.clone()))
    }

    /// g^L_{MN}(q); zero for pairs in the window without L.
    pub fn poly(&self, l: &S::Key, m: &S::Key, n: &S::Key) -> Result<QPoly> {
        let row = self.products(m, n).ok_or_else(|| Error::WindowMiss(format!("{} M={m} N={n}", S::SIDE)))?;
        Ok(row.get(l).map(|e| e.poly.clone()).unwrap_or_default())
    }

    /// Every nonzero triple in canonical order.
    pub fn rows(&self) -> Vec<TableRow> {
        let mut out = Vec::new();
        for ((m, n), row) in &self.entries {
            for (l, e) in row {
                out.push(TableRow {
                    side: S::SIDE,
                    l: l.to_string(),
                    m: m.to_string(),
                    n: n.to_string(),
                    poly: e.poly.coeffs().iter().map(|c| c.to_string()).collect(),
                    counts: e.counts.iter().map(|c| c.to_string()).collect(),
                });
            }
        }
        out
    }

    /// The generic twisted algebra over Z[v, v⁻¹] defined by this table.
    pub fn algebra(&self) -> GenericHall<'_, S> {
        GenericHall { table: self, ring: Laurent }
    }
}

/// Twisted Hall algebra over Q[v, v⁻¹]: u_M * u_N = v^{twist} Σ_L g^L_{MN}(v²) u_L.
pub struct GenericHall<'a, S: HallSide> {
    table: &'a GenericStructureTable<S>,
    ring: Laurent,
}

pub type GenericElement<K> = HallElement<K, Laurent>;

impl<'a, S: HallSide> GenericHall<'a, S> {
    pub fn table(&self) -> &GenericStructureTable<S> {
        self.table
    }
    pub fn unit(&self) -> GenericElement<S::Key> {
        HallElement::basis(&self.ring, S::unit(self.table.quiver.n()))
    }
    pub fn u(&self, k: &S::Key) -> GenericElement<S::Key> {
        HallElement::basis(&self.ring, k.clone())
    }
}

impl<'a> GenericHall<'a, RepSide> {
    pub fn simple(&self, i: usize) -> GenericElement<RepIsoClass> {
        self.u(&RepIsoClass::from_root(&self.table.quiver.unit(i)))
    }
}

impl<'a, S: HallSide> HallStructure<S::Key> for GenericHall<'a, S> {
    type Ring = Laurent;

    fn ring(&self) -> &Laurent {
        &self.ring
    }

    fn basis_product(&self, a: &S::Key, b: &S::Key) -> Result<Vec<(S::Key, LaurentPoly)>> {
        let row = self
            .table
            .products(a, b)
            .ok_or_else(|| Error::WindowMiss(format!("{} M={a} N={b}", S::SIDE)))?;
        let tw = S::twist(&self.table.quiver, a, b);
        Ok(row.iter().map(|(l, e)| (l.clone(), e.poly.subst_v_power(2).shift(tw))).collect())
    }
}

/// Evaluates a generic element at v = −√q.
pub fn specialize<K: Ord + Clone>(x: &GenericElement<K>, q: u64) -> HallElement<K, SqrtQ> {
    let r = SqrtQ::new(q);
    x.map_ring(&r, |c| r.eval(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    fn a2() -> Arc<DynkinQuiver> {
        Arc::new(DynkinQuiver::a_linear(2))
    }

    fn s(q: &DynkinQuiver, i: usize) -> RepIsoClass {
        RepIsoClass::from_root(&q.unit(i))
    }

    #[test]
    fn single_triples() {
        let q = a2();
        let p1 = RepIsoClass::from_root(&[1, 1]);
        let g = interpolate_structure_poly::<RepSide>(&q, &p1, &s(&q, 0), &s(&q, 1), &[2, 3, 5], 1 << 20).unwrap();
        assert_eq!(g, QPoly::from_ints(&[1]));
        let c2 = ComplexClass::c(&s(&q, 1));
        let cc = ComplexClass::c(&s(&q, 1).scale(2));
        let g = interpolate_structure_poly::<ComplexSide>(&q, &cc, &c2, &c2, &[2, 3, 5, 7], 1 << 20).unwrap();
        assert_eq!(g, QPoly::from_ints(&[1, 1]));
        let k = ComplexClass::k(&[0, 1]);
        let ks = ComplexClass::k_star(&[0, 1]);
        let g = interpolate_structure_poly::<ComplexSide>(&q, &k.direct_sum(&ks), &k, &ks, &[2, 3, 5, 7], 1 << 20).unwrap();
        assert_eq!(g, QPoly::from_ints(&[0, 1]));
    }

    #[test]
    fn generic_product_of_simples() {
        let q = a2();
        let t = GenericStructureTable::<RepSide>::build(q.clone(), vec![1, 1], &[2, 3, 5], 1 << 20).unwrap();
        let h = t.algebra();
        let x = h.multiply(&h.simple(0), &h.simple(1)).unwrap();
        let vinv = LaurentPoly::v(-1);
        let expect = HallElement::from_terms(
            &Laurent,
            [(s(&q, 0).direct_sum(&s(&q, 1)), vinv.clone()), (RepIsoClass::from_root(&[1, 1]), vinv)],
        );
        assert_eq!(x, expect);
        assert_eq!(h.multiply(&h.unit(), &x).unwrap(), x);
        assert_eq!(h.multiply(&x, &h.unit()).unwrap(), x);
        let numeric = RepSide::numeric(&q, 3, 1 << 20).unwrap();
        assert_eq!(specialize(&x, 3), numeric.multiply(&numeric.simple(0), &numeric.simple(1)).unwrap());
        assert!(matches!(h.multiply(&x, &h.simple(0)), Err(Error::WindowMiss(_))));
    }

    #[test]
    fn a1_table_is_gaussian() {
        let q = Arc::new(DynkinQuiver::a_linear(1));
        let t = GenericStructureTable::<RepSide>::build(q, vec![3], &[2, 3, 5, 7, 11], 1 << 20).unwrap();
        let sm = |m: usize| RepIsoClass::from_root(&[1]).scale(m);
        // g^{S³}_{S, S²} = [3 choose 1]_q = q² + q + 1
        assert_eq!(t.poly(&sm(3), &sm(1), &sm(2)).unwrap(), QPoly::from_ints(&[1, 1, 1]));
        assert_eq!(t.poly(&sm(2), &sm(1), &sm(1)).unwrap().eval(&rat(4)), rat(5));
    }
}
