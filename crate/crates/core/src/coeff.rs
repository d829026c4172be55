//! Exact coefficient rings: Q(√q) with v = −√q, and Laurent polynomials in v.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_big(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

/// An exact commutative ring carrying a distinguished invertible element v.
pub trait CoeffRing: Clone + PartialEq + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_rational(&self, r: &BigRational) -> Self::Elem;
    fn v_pow(&self, e: i64) -> Self::Elem;
    /// Inverse when it exists in the ring.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&rat(n))
    }
    fn from_bigint(&self, n: &BigInt) -> Self::Elem {
        self.from_rational(&rat_big(n.clone()))
    }
    fn pow(&self, a: &Self::Elem, n: u32) -> Self::Elem {
        let mut r = self.one();
        for _ in 0..n {
            r = self.mul(&r, a);
        }
        r
    }
    /// The quantum integer [n] = (v^n − v^{−n})/(v − v^{−1}).
    fn qint(&self, n: i64) -> Self::Elem {
        let mut r = self.zero();
        let m = n.abs();
        for k in 0..m {
            r = self.add(&r, &self.v_pow(m - 1 - 2 * k));
        }
        if n < 0 {
            self.neg(&r)
        } else {
            r
        }
    }
    fn qfactorial(&self, n: u32) -> Self::Elem {
        let mut r = self.one();
        for k in 1..=n {
            r = self.mul(&r, &self.qint(k as i64));
        }
        r
    }
    /// Quantum binomial [n choose m].
    fn qbinomial(&self, n: u32, m: u32) -> Self::Elem {
        if m > n {
            return self.zero();
        }
        let num = self.qfactorial(n);
        let den = self.mul(&self.qfactorial(m), &self.qfactorial(n - m));
        self.div_exact(&num, &den).expect("quantum binomials are Laurent-integral")
    }
    /// `a / b` when the quotient exists in the ring.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }
}

/// Element a + b√q of Q(√q).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QSqrt {
    pub rat: BigRational,
    pub sqrt_part: BigRational,
}

impl fmt::Display for QSqrt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rat.is_zero(), self.sqrt_part.is_zero()) {
            (_, true) => write!(f, "{}", self.rat),
            (true, false) => write!(f, "{}*sqrt(q)", self.sqrt_part),
            (false, false) => write!(f, "{} + {}*sqrt(q)", self.rat, self.sqrt_part),
        }
    }
}

/// Numeric mode: Q(√q) with v = v_q = −√q. When q is a perfect square the √q part is folded into
/// the rational part so that representations stay unique.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct SqrtQ {
    q: u64,
    root: Option<u64>,
}

impl SqrtQ {
    pub fn new(q: u64) -> Self {
        let r = q.sqrt();
        SqrtQ { q, root: if r * r == q { Some(r) } else { None } }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn elem(&self, a: BigRational, b: BigRational) -> QSqrt {
        match self.root {
            Some(r) => QSqrt { rat: a + b * rat(r as i64), sqrt_part: BigRational::zero() },
            None => QSqrt { rat: a, sqrt_part: b },
        }
    }

    fn q_pow(&self, e: i64) -> BigRational {
        let base = rat(self.q as i64);
        if e >= 0 {
            num_traits::pow(base, e as usize)
        } else {
            num_traits::pow(base.recip(), (-e) as usize)
        }
    }

    /// Evaluates a Laurent polynomial at v = −√q.
    pub fn eval(&self, p: &LaurentPoly) -> QSqrt {
        let mut acc = self.zero();
        for (&e, c) in p.terms() {
            acc = self.add(&acc, &self.mul(&self.from_rational(c), &self.v_pow(e)));
        }
        acc
    }
}

impl CoeffRing for SqrtQ {
    type Elem = QSqrt;

    fn zero(&self) -> QSqrt {
        QSqrt { rat: BigRational::zero(), sqrt_part: BigRational::zero() }
    }
    fn one(&self) -> QSqrt {
        QSqrt { rat: BigRational::one(), sqrt_part: BigRational::zero() }
    }
    fn is_zero(&self, a: &QSqrt) -> bool {
        a.rat.is_zero() && a.sqrt_part.is_zero()
    }
    fn add(&self, a: &QSqrt, b: &QSqrt) -> QSqrt {
        QSqrt { rat: &a.rat + &b.rat, sqrt_part: &a.sqrt_part + &b.sqrt_part }
    }
    fn neg(&self, a: &QSqrt) -> QSqrt {
        QSqrt { rat: -&a.rat, sqrt_part: -&a.sqrt_part }
    }
    fn mul(&self, a: &QSqrt, b: &QSqrt) -> QSqrt {
        let qr = rat(self.q as i64);
        QSqrt {
            rat: &a.rat * &b.rat + &a.sqrt_part * &b.sqrt_part * qr,
            sqrt_part: &a.rat * &b.sqrt_part + &a.sqrt_part * &b.rat,
        }
    }
    fn from_rational(&self, r: &BigRational) -> QSqrt {
        QSqrt { rat: r.clone(), sqrt_part: BigRational::zero() }
    }
    fn v_pow(&self, e: i64) -> QSqrt {
        // (−√q)^e: q^{e/2} for even e, −q^{(e−1)/2}·√q for odd e
        if e.rem_euclid(2) == 0 {
            self.elem(self.q_pow(e / 2), BigRational::zero())
        } else {
            self.elem(BigRational::zero(), -self.q_pow((e - 1).div_euclid(2)))
        }
    }
    fn inv(&self, a: &QSqrt) -> Option<QSqrt> {
        let norm = &a.rat * &a.rat - &a.sqrt_part * &a.sqrt_part * rat(self.q as i64);
        if norm.is_zero() {
            return None;
        }
        Some(QSqrt { rat: &a.rat / &norm, sqrt_part: -&a.sqrt_part / &norm })
    }
}

/// Laurent polynomial in v with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !mag.is_one() || *e == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match *e {
                0 => {}
                1 => write!(f, "{}v", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}v^{}", if show_coeff { "*" } else { "" }, e)?,
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn one() -> Self {
        Self::monomial(0, rat(1))
    }
    pub fn monomial(e: i64, c: BigRational) -> Self {
        let mut p = Self::default();
        if !c.is_zero() {
            p.coeffs.insert(e, c);
        }
        p
    }
    pub fn v(e: i64) -> Self {
        Self::monomial(e, rat(1))
    }
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, BigRational)>) -> Self {
        let mut p = Self::default();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }
    pub fn terms(&self) -> impl Iterator<Item = (&i64, &BigRational)> {
        self.coeffs.iter()
    }
    pub fn coeff(&self, e: i64) -> BigRational {
        self.coeffs.get(&e).cloned().unwrap_or_else(BigRational::zero)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn add_term(&mut self, e: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&e);
        }
    }
    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }
    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (&e, c) in &o.coeffs {
            r.add_term(e, c.clone());
        }
        r
    }
    pub fn neg(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::default();
        for (&e1, c1) in &self.coeffs {
            for (&e2, c2) in &o.coeffs {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(&e, x)| (e, x * c)))
    }
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }
    /// The bar involution v ↦ v^{−1}.
    pub fn bar(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }
    /// True when every exponent is negative (an element of v^{−1}Q[v^{−1}]).
    pub fn in_strictly_negative_part(&self) -> bool {
        self.coeffs.keys().all(|&e| e < 0)
    }
    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }
    /// Exact division; `None` when `o` does not divide `self` in Q[v, v^{−1}].
    pub fn div_exact(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (olo, ohi) = (o.min_exp().unwrap(), o.max_exp().unwrap());
        let lead = o.coeff(ohi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while !rem.is_zero() {
            let rhi = rem.max_exp().unwrap();
            let rlo = rem.min_exp().unwrap();
            if rhi - rlo < ohi - olo {
                return None;
            }
            let c = rem.coeff(rhi) / &lead;
            let e = rhi - ohi;
            quot.add_term(e, c.clone());
            rem = rem.sub(&o.shift(e).scale(&c));
        }
        Some(quot)
    }
}

/// Generic mode: coefficients in Q[v, v^{−1}].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct Laurent;

impl CoeffRing for Laurent {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }
    fn one(&self) -> LaurentPoly {
        LaurentPoly::one()
    }
    fn is_zero(&self, a: &LaurentPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.add(b)
    }
    fn neg(&self, a: &LaurentPoly) -> LaurentPoly {
        a.neg()
    }
    fn mul(&self, a: &LaurentPoly, b: &LaurentPoly) -> LaurentPoly {
        a.mul(b)
    }
    fn from_rational(&self, r: &BigRational) -> LaurentPoly {
        LaurentPoly::monomial(0, r.clone())
    }
    fn v_pow(&self, e: i64) -> LaurentPoly {
        LaurentPoly::v(e)
    }
    fn inv(&self, a: &LaurentPoly) -> Option<LaurentPoly> {
        LaurentPoly::one().div_exact(a)
    }
    fn div_exact(&self, a: &LaurentPoly, b: &LaurentPoly) -> Option<LaurentPoly> {
        a.div_exact(b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_squared_is_q() {
        for q in [2u64, 3, 4, 5, 9] {
            let r = SqrtQ::new(q);
            let v = r.v_pow(1);
            assert_eq!(r.mul(&v, &v), r.from_int(q as i64));
            assert_eq!(r.mul(&r.v_pow(-3), &r.v_pow(3)), r.one());
            assert_eq!(r.mul(&v, &r.inv(&v).unwrap()), r.one());
        }
        let r = SqrtQ::new(2);
        assert_eq!(r.v_pow(1), QSqrt { rat: rat(0), sqrt_part: rat(-1) });
    }

    #[test]
    fn quantum_numbers() {
        let l = Laurent;
        assert_eq!(l.qint(2), LaurentPoly::from_terms([(1, rat(1)), (-1, rat(1))]));
        assert_eq!(l.qbinomial(2, 1), l.qint(2));
        assert_eq!(l.qbinomial(4, 2), LaurentPoly::from_terms([(4, rat(1)), (2, rat(1)), (0, rat(2)), (-2, rat(1)), (-4, rat(1))]));
        // [n] at v = −√q agrees with the Laurent value
        let n = SqrtQ::new(3);
        assert_eq!(n.qint(3), n.eval(&l.qint(3)));
    }

    #[test]
    fn laurent_division() {
        let a = LaurentPoly::from_terms([(3, rat(1)), (1, rat(1))]);
        let b = LaurentPoly::from_terms([(1, rat(1)), (-1, rat(1))]);
        assert_eq!(a.div_exact(&b), Some(LaurentPoly::v(2)));
        assert_eq!(LaurentPoly::one().div_exact(&b), None);
        assert_eq!(LaurentPoly::v(3).bar(), LaurentPoly::v(-3));
    }
}
