use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A field element, stored as its canonical residue.
///
/// For GF(p^k) the residue encodes the coefficient vector `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
/// of the polynomial representative modulo the field's modulus.
pub type Fe = u32;

const MAX_PRIME: u32 = 1 << 15;
const MAX_EXTENSION_ORDER: u32 = 1024;

struct Inner {
    p: u32,
    k: u32,
    modulus: Vec<u32>,
    q: u32,
    add: Option<Vec<u16>>,
    mul: Option<Vec<u16>>,
    inv: Vec<u32>,
}

/// The finite field F_q with q = p^k.
#[derive(Clone)]
pub struct FiniteField(Arc<Inner>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.k == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}; {:?})", self.0.p, self.0.k, self.0.modulus)
        }
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.k == other.0.k && self.0.modulus == other.0.modulus)
    }
}
impl Eq for FiniteField {}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

// Polynomials over F_p as coefficient vectors, lowest degree first.
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = pow_mod(m[dm] as u64, (p - 2) as u64, p as u64) as u32;
    while r.len() > dm {
        let shift = r.len() - 1 - dm;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let idx = i + shift;
            r[idx] = ((r[idx] as u64 + (p - c) as u64 * mi as u64) % p as u64) as u32;
        }
        poly_trim(&mut r);
    }
    r
}

fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let k = modulus.len() - 1;
    // any factor of degree d <= k/2 is detected by trial division with monic polynomials
    for d in 1..=k / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut f = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                f.push((x % p as u64) as u32);
                x /= p as u64;
            }
            f.push(1);
            if poly_rem(modulus, &f, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p >= MAX_PRIME {
            return Err(Error::InvalidField(format!("prime {p} exceeds supported range")));
        }
        let mut inv = vec![0u32; p as usize];
        for a in 1..p {
            inv[a as usize] = pow_mod(a as u64, (p - 2) as u64, p as u64) as u32;
        }
        Ok(FiniteField(Arc::new(Inner { p, k: 1, modulus: vec![0, 1], q: p, add: None, mul: None, inv })))
    }

    /// GF(p^k) from a monic irreducible modulus of degree k (coefficients lowest degree first).
    pub fn extension(p: u32, modulus: Vec<u32>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if modulus.len() < 2 || *modulus.last().unwrap() != 1 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField("modulus coefficients must be residues mod p".into()));
        }
        let k = (modulus.len() - 1) as u32;
        if k == 1 {
            return Self::prime(p);
        }
        let q64 = (p as u64).pow(k);
        if q64 > MAX_EXTENSION_ORDER as u64 {
            return Err(Error::InvalidField(format!("extension field order {q64} exceeds {MAX_EXTENSION_ORDER}")));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidField(format!("modulus {modulus:?} is reducible over F_{p}")));
        }
        let q = q64 as u32;
        let digits = |x: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(k as usize);
            let mut x = x;
            for _ in 0..k {
                v.push(x % p);
                x /= p;
            }
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &c| acc * p + c) };
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = encode(&s) as u16;
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                let mut r = poly_rem(&prod, &modulus, p);
                r.resize(k as usize, 0);
                mul[(a * q + b) as usize] = encode(&r) as u16;
            }
        }
        let mut inv = vec![0u32; n];
        for a in 1..q {
            for b in 1..q {
                if mul[(a * q + b) as usize] == 1 {
                    inv[a as usize] = b;
                    break;
                }
            }
        }
        Ok(FiniteField(Arc::new(Inner { p, k, modulus, q, add: Some(add), mul: Some(mul), inv })))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }
    pub fn k(&self) -> u32 {
        self.0.k
    }
    pub fn q(&self) -> u32 {
        self.0.q
    }
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.0.q
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        match &self.0.add {
            None => {
                let s = a + b;
                if s >= self.0.p {
                    s - self.0.p
                } else {
                    s
                }
            }
            Some(t) => t[(a * self.0.q + b) as usize] as Fe,
        }
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        match &self.0.add {
            None => {
                if a == 0 {
                    0
                } else {
                    self.0.p - a
                }
            }
            Some(_) => {
                let (p, k) = (self.0.p, self.0.k);
                let mut x = a;
                let mut out = 0;
                let mut place = 1;
                for _ in 0..k {
                    let c = x % p;
                    out += ((p - c) % p) * place;
                    place *= p;
                    x /= p;
                }
                out
            }
        }
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        match &self.0.mul {
            None => ((a as u64 * b as u64) % self.0.p as u64) as Fe,
            Some(t) => t[(a * self.0.q + b) as usize] as Fe,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            None
        } else {
            Some(self.0.inv[a as usize])
        }
    }

    /// The image of an integer under Z → F_q.
    pub fn from_int(&self, n: i64) -> Fe {
        let p = self.0.p as i64;
        (((n % p) + p) % p) as Fe
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_axioms(f: &FiniteField) {
        let els: Vec<Fe> = f.elements().collect();
        for &a in &els {
            assert_eq!(f.add(a, 0), a);
            assert_eq!(f.mul(a, 1), a);
            assert_eq!(f.add(a, f.neg(a)), 0);
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            }
            for &b in &els {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &els {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn field_axioms_small_orders() {
        for p in [2, 3, 5, 7] {
            check_axioms(&FiniteField::prime(p).unwrap());
        }
        // x^2 + x + 1 over F_2, x^3 + x + 1 over F_2, x^2 + 1 over F_3
        check_axioms(&FiniteField::extension(2, vec![1, 1, 1]).unwrap());
        check_axioms(&FiniteField::extension(2, vec![1, 1, 0, 1]).unwrap());
        check_axioms(&FiniteField::extension(3, vec![1, 0, 1]).unwrap());
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(FiniteField::prime(4).is_err());
        // x^2 + 1 = (x+1)^2 over F_2
        assert!(FiniteField::extension(2, vec![1, 0, 1]).is_err());
        // x^4 + x^2 + 1 = (x^2+x+1)^2 over F_2: no root, reducible
        assert!(FiniteField::extension(2, vec![1, 0, 1, 0, 1]).is_err());
        assert!(FiniteField::extension(2, vec![1, 1, 0, 0, 1]).is_ok());
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_q_minus_1() {
        let f = FiniteField::extension(3, vec![2, 2, 1]).unwrap();
        let orders: Vec<u32> = (1..f.q())
            .map(|a| {
                let mut x = a;
                let mut n = 1;
                while x != 1 {
                    x = f.mul(x, a);
                    n += 1;
                }
                n
            })
            .collect();
        assert_eq!(*orders.iter().max().unwrap(), f.q() - 1);
    }
}
