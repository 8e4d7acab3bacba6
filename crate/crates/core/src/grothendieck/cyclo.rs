//! Exact elements of the cyclotomic fields `Q(zeta_n)`.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients of the `n`-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    assert!(n >= 1, "cyclotomic order must be positive");
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in (1..n).filter(|d| n % d == 0) {
        num = divide_exact(&num, &cyclotomic_polynomial(d));
    }
    let p = Arc::new(num);
    cache.lock().expect("cache poisoned").insert(n, Arc::clone(&p));
    p
}

/// Exact division by a monic integer polynomial.
fn divide_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= &c * d;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Euler's totient, the degree of `Q(zeta_n)` over `Q`.
pub fn totient(n: u32) -> usize {
    cyclotomic_polynomial(n).len() - 1
}

/// An element of `Q(zeta_n)`, stored as a polynomial in `zeta_n` of degree
/// below `phi(n)`. Values of different orders are compared and combined in
/// the field of the least common multiple.
#[derive(Clone)]
pub struct CycloScalar {
    order: u32,
    coords: Vec<BigRational>,
}

impl CycloScalar {
    pub fn zero(order: u32) -> Self {
        Self {
            order,
            coords: vec![BigRational::zero(); totient(order)],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::rational(order, BigRational::one())
    }

    pub fn rational(order: u32, q: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coords[0] = q;
        z
    }

    pub fn integer(order: u32, c: i64) -> Self {
        Self::rational(order, BigRational::from_integer(c.into()))
    }

    /// `zeta_order^k`
    pub fn zeta(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_poly(order, poly)
    }

    /// Reduces an arbitrary polynomial in `zeta_order`.
    pub fn from_poly(order: u32, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let d = phi.len() - 1;
        for i in (d..poly.len()).rev() {
            let c = std::mem::take(&mut poly[i]);
            if c.is_zero() {
                continue;
            }
            for (j, p) in phi.iter().enumerate().take(d) {
                let t = &c * BigRational::from_integer(p.clone());
                poly[i - d + j] -= t;
            }
        }
        poly.resize(d, BigRational::zero());
        Self { order, coords: poly }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coordinates in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.
    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    /// The value as an integer, if it lies in `Z`.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|q| q.is_integer()).map(|q| q.to_integer())
    }

    /// The same element viewed in `Q(zeta_order)`; `self.order()` must divide `order`.
    pub fn lift(&self, order: u32) -> Self {
        assert!(order % self.order == 0, "cannot lift from order {} to {order}", self.order);
        if order == self.order {
            return self.clone();
        }
        let step = (order / self.order) as usize;
        let mut poly = vec![BigRational::zero(); step * self.coords.len().max(1)];
        for (i, c) in self.coords.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::from_poly(order, poly)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let n = self.order.lcm(&other.order);
        (self.lift(n), other.lift(n))
    }
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coords == b.coords
    }
}

impl Eq for CycloScalar {}

impl From<i64> for CycloScalar {
    fn from(c: i64) -> Self {
        Self::integer(1, c)
    }
}

impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        let (mut a, b) = self.common(rhs);
        for (x, y) in a.coords.iter_mut().zip(b.coords) {
            *x += y;
        }
        a
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self + &(-rhs)
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        let (a, b) = self.common(rhs);
        let mut poly = vec![BigRational::zero(); (a.coords.len() + b.coords.len()).saturating_sub(1)];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                poly[i + j] += x * y;
            }
        }
        CycloScalar::from_poly(a.order, poly)
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, abs) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            match (first, sign) {
                (true, "-") => write!(f, "-")?,
                (true, _) => {}
                (false, s) => write!(f, " {s} ")?,
            }
            first = false;
            let mono = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{i}", self.order),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloScalar({})", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(p: &[BigInt]) -> Vec<i64> {
        p.iter().map(|c| c.try_into().unwrap()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(ints(&cyclotomic_polynomial(1)), vec![-1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(4)), vec![1, 0, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(6)), vec![1, -1, 1]);
        assert_eq!(ints(&cyclotomic_polynomial(12)), vec![1, 0, -1, 0, 1]);
        assert_eq!(totient(15), 8);
    }

    #[test]
    fn roots_of_unity() {
        for n in 1..=12 {
            let z = CycloScalar::zeta(n, 1);
            let mut p = CycloScalar::one(n);
            for k in 1..=n {
                p = &p * &z;
                assert_eq!(p.as_rational() == Some(BigRational::one()), k == n, "n={n} k={k}");
            }
        }
        // 1 + w + w^2 = 0 for a primitive cube root
        let w = CycloScalar::zeta(3, 1);
        let sum = &(&CycloScalar::one(3) + &w) + &(&w * &w);
        assert!(sum.is_zero());
        // zeta_6 lifted from zeta_3: zeta_3 = zeta_6^2
        assert_eq!(w.lift(6), CycloScalar::zeta(6, 2));
        assert_eq!(CycloScalar::zeta(2, 1), CycloScalar::from(-1));
        assert_eq!(CycloScalar::zeta(4, 1).to_string(), "z4");
    }
}
