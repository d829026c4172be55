use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::coeff::{rat, rat_big, LaurentPoly};
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q; `coeffs[i]` multiplies x^i. Trailing zeros are trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let show = !mag.is_one() || e == 0;
            if show {
                write!(f, "{mag}")?;
            }
            let star = if show { "*" } else { "" };
            match e {
                0 => {}
                1 => write!(f, "{star}q")?,
                _ => write!(f, "{star}q^{e}")?,
            }
        }
        Ok(())
    }
}

impl QPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }
    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| rat(c)).collect())
    }
    /// c·x^e.
    pub fn monomial(e: usize, c: BigRational) -> Self {
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
    pub fn coeff(&self, e: usize) -> BigRational {
        self.coeffs.get(e).cloned().unwrap_or_else(BigRational::zero)
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }
    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
    pub fn neg(&self) -> Self {
        QPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(v)
    }
    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead = d.leading();
        let mut rem = self.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading() / &lead;
            quot[rd - dd] = c.clone();
            rem = rem.sub(&d.mul(&Self::monomial(rd - dd, c)));
        }
        (Self::new(quot), rem)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitutes x = v^k, giving a Laurent polynomial in v.
    pub fn subst_v_power(&self, k: i64) -> LaurentPoly {
        LaurentPoly::from_terms(self.coeffs.iter().enumerate().map(|(e, c)| (k * e as i64, c.clone())))
    }

    /// Reads a Laurent polynomial with nonnegative exponents as a polynomial in v.
    pub fn from_laurent(p: &LaurentPoly) -> Option<Self> {
        if p.is_zero() {
            return Some(Self::zero());
        }
        if p.min_exp()? < 0 {
            return None;
        }
        let mut v = vec![BigRational::zero(); p.max_exp()? as usize + 1];
        for (&e, c) in p.terms() {
            v[e as usize] = c.clone();
        }
        Some(Self::new(v))
    }

    /// The Lagrange interpolant through `(x_i, y_i)`.
    pub fn lagrange(points: &[(BigRational, BigRational)]) -> Self {
        let mut out = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut basis = Self::constant(BigRational::one());
            let mut denom = BigRational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    basis = basis.mul(&Self::new(vec![-xj.clone(), BigRational::one()]));
                    denom *= xi - xj;
                }
            }
            out = out.add(&basis.scale(&(yi / denom)));
        }
        out
    }
}

/// Fits a polynomial of degree at most `bound` to counts at the leading primes and checks it
/// exactly on the rest. The working degree is capped so that at least one prime is held out.
pub fn interpolate_counts(label: &str, samples: &[(u64, BigInt)], bound: usize) -> Result<QPoly> {
    if samples.len() < 2 {
        return Err(Error::Config(format!("interpolating {label} needs at least two primes")));
    }
    let d = bound.min(samples.len() - 2);
    let pts: Vec<(BigRational, BigRational)> =
        samples[..=d].iter().map(|(p, c)| (rat(*p as i64), rat_big(c.clone()))).collect();
    let poly = QPoly::lagrange(&pts);
    for (p, c) in &samples[d + 1..] {
        let predicted = poly.eval(&rat(*p as i64));
        if predicted != rat_big(c.clone()) {
            return Err(Error::HoldoutMismatch {
                triple: label.to_string(),
                prime: *p,
                predicted: predicted.to_string(),
                counted: c.to_string(),
            });
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lagrange_recovers_q_plus_one() {
        let s: Vec<(u64, BigInt)> = [2u64, 3, 5, 7].iter().map(|&p| (p, BigInt::from(p + 1))).collect();
        let p = interpolate_counts("t", &s, 3).unwrap();
        assert_eq!(p, QPoly::from_ints(&[1, 1]));
        assert_eq!(p.to_string(), "q + 1");
    }

    #[test]
    fn holdout_catches_low_bound() {
        let s: Vec<(u64, BigInt)> = [2u64, 3, 5, 7].iter().map(|&p| (p, BigInt::from(p * p))).collect();
        assert!(matches!(interpolate_counts("t", &s, 1), Err(Error::HoldoutMismatch { prime: 5, .. })));
        assert_eq!(interpolate_counts("t", &s, 2).unwrap(), QPoly::from_ints(&[0, 0, 1]));
    }

    #[test]
    fn gcd_and_division() {
        let a = QPoly::from_ints(&[-1, 0, 1]);
        let b = QPoly::from_ints(&[1, 1]);
        assert_eq!(QPoly::gcd(&a, &b), b);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq, QPoly::from_ints(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(QPoly::from_ints(&[1, 1]).subst_v_power(2), LaurentPoly::from_terms([(0, rat(1)), (2, rat(1))]));
    }
}
