use num_rational::BigRational;
use num_traits::One;

use super::poly::QPoly;
use crate::coeff::LaurentPoly;

/// Element of Q(v) as num/den with monic, coprime denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: QPoly,
    den: QPoly,
}

impl RatFunc {
    fn reduced(num: QPoly, den: QPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let g = QPoly::gcd(&num, &den);
        let (n, _) = num.div_rem(&g);
        let (d, _) = den.div_rem(&g);
        let lead = d.leading();
        RatFunc { num: n.scale(&lead.recip()), den: d.monic() }
    }

    pub fn zero() -> Self {
        RatFunc { num: QPoly::zero(), den: QPoly::constant(BigRational::one()) }
    }

    pub fn one() -> Self {
        RatFunc { num: QPoly::constant(BigRational::one()), den: QPoly::constant(BigRational::one()) }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn from_laurent(p: &LaurentPoly) -> Self {
        let lo = p.min_exp().unwrap_or(0).min(0);
        let num = QPoly::from_laurent(&p.shift(-lo)).expect("shifted to nonnegative exponents");
        Self::reduced(num, QPoly::monomial((-lo) as usize, BigRational::one()))
    }

    /// The Laurent polynomial equal to this function, if the denominator is a power of v.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        let d = self.den.degree()?;
        if self.den != QPoly::monomial(d, BigRational::one()) {
            return None;
        }
        Some(self.num.subst_v_power(1).shift(-(d as i64)))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::reduced(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
    pub fn neg(&self) -> Self {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn mul(&self, o: &Self) -> Self {
        Self::reduced(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    pub fn div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        Some(Self::reduced(self.num.mul(&o.den), self.den.mul(&o.num)))
    }
}

/// Gauss–Jordan on [B | C]: returns M (k×m) with B·M = C for B of size r×k, or `None` if B is
/// rank-deficient or the system is inconsistent.
pub fn solve_left(b: &[Vec<RatFunc>], c: &[Vec<RatFunc>]) -> Option<Vec<Vec<RatFunc>>> {
    let rows = b.len();
    let k = b.first().map_or(0, |r| r.len());
    let m = c.first().map_or(0, |r| r.len());
    let mut aug: Vec<Vec<RatFunc>> = b.iter().zip(c).map(|(x, y)| x.iter().chain(y).cloned().collect()).collect();
    let mut pivot_row = 0;
    for col in 0..k {
        let p = (pivot_row..rows).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(pivot_row, p);
        let inv = RatFunc::one().div(&aug[pivot_row][col])?;
        aug[pivot_row] = aug[pivot_row].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..rows {
            if r != pivot_row && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                let sub: Vec<RatFunc> = aug[pivot_row].iter().map(|x| x.mul(&f)).collect();
                aug[r] = aug[r].iter().zip(&sub).map(|(x, y)| x.sub(y)).collect();
            }
        }
        pivot_row += 1;
    }
    if aug[k..].iter().any(|row| row.iter().any(|x| !x.is_zero())) {
        return None;
    }
    Some(aug[..k].iter().map(|row| row[k..k + m].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::rat;

    #[test]
    fn laurent_round_trip_and_cancellation() {
        let p = LaurentPoly::from_terms([(-2, rat(3)), (1, rat(1))]);
        assert_eq!(RatFunc::from_laurent(&p).to_laurent(), Some(p.clone()));
        let q = LaurentPoly::from_terms([(1, rat(1)), (-1, rat(1))]);
        let x = RatFunc::from_laurent(&p.mul(&q)).div(&RatFunc::from_laurent(&q)).unwrap();
        assert_eq!(x.to_laurent(), Some(p));
        assert_eq!(RatFunc::from_laurent(&LaurentPoly::one()).div(&RatFunc::from_laurent(&q)).unwrap().to_laurent(), None);
    }

    #[test]
    fn solves_overdetermined_system() {
        let l = |e: i64| RatFunc::from_laurent(&LaurentPoly::v(e));
        let b = vec![vec![l(0), l(1)], vec![l(0), RatFunc::zero()], vec![l(2), l(1)]];
        // M = [[v], [1]]: B·M = [v + v, v, v³ + v]
        let c = vec![
            vec![RatFunc::from_laurent(&LaurentPoly::v(1).scale(&rat(2)))],
            vec![l(1)],
            vec![RatFunc::from_laurent(&LaurentPoly::v(3).add(&LaurentPoly::v(1)))],
        ];
        let m = solve_left(&b, &c).unwrap();
        assert_eq!(m[0][0].to_laurent(), Some(LaurentPoly::v(1)));
        assert_eq!(m[1][0].to_laurent(), Some(LaurentPoly::one()));
        let mut bad = c.clone();
        bad[1][0] = l(5);
        assert!(solve_left(&b, &bad).is_none());
    }
}
