//! Sparse Laurent polynomials in `v` with arbitrary-precision integer
//! coefficients.
//!
//! The text form is `a v^-2 + b + c v`, terms in ascending exponent order,
//! e.g. `v^-2 + 5 - 7v^3`. [`LaurentPoly::from_str`] parses exactly what
//! [`Display`](fmt::Display) writes; whitespace is allowed only around `+`
//! and `-`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// An element of `Z[v, v^-1]`. No zero coefficient is ever stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c v^e`
    pub fn monomial(c: impl Into<BigInt>, e: i32) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        Self { coeffs }
    }

    /// `v^e`
    pub fn v_pow(e: i32) -> Self {
        Self::monomial(1, e)
    }

    /// `v^k + v^-k` (which is `2` for `k = 0`).
    pub fn sym(k: i32) -> Self {
        Self::v_pow(k) + Self::v_pow(-k)
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (C, i32)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Coefficient of `v^e` (the `P^e` of a polynomial `P`).
    pub fn coeff(&self, e: i32) -> BigInt {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    /// Nonzero terms as `(exponent, coefficient)`, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    fn add_term(&mut self, e: i32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Adds `c * v^shift * other` in place.
    pub fn add_scaled(&mut self, other: &LaurentPoly, c: &BigInt, shift: i32) {
        for (e, oc) in &other.coeffs {
            self.add_term(e + shift, oc * c);
        }
    }

    /// Multiplies by `v^e`.
    pub fn shift(&self, e: i32) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(k, c)| (k + e, c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(k, x)| (*k, x * c)).collect(),
        }
    }

    /// Substitutes `v -> v^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0, "substitution v -> v^0 is not a ring endomorphism of Laurent polynomials");
        Self::from_terms(self.coeffs.iter().map(|(e, c)| (c.clone(), e * k)))
    }

    /// The bar involution `v -> v^-1`.
    pub fn bar(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Restriction to the exponents accepted by `keep`.
    pub fn degree_part(&self, keep: impl Fn(i32) -> bool) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .filter(|(e, _)| keep(**e))
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// The unique bar-invariant `q` with `self - q` supported in strictly
    /// positive degrees: `q = p^0 + sum_{k>0} p^{-k} (v^k + v^-k)`.
    pub fn bar_invariant_completion(&self) -> Self {
        let mut q = Self::zero();
        for (e, c) in &self.coeffs {
            match e.cmp(&0) {
                std::cmp::Ordering::Less => {
                    q.add_term(*e, c.clone());
                    q.add_term(-e, c.clone());
                }
                std::cmp::Ordering::Equal => q.add_term(0, c.clone()),
                std::cmp::Ordering::Greater => {}
            }
        }
        q
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| self.coeffs.get(&-e) == Some(c))
    }

    /// True iff every exponent is strictly positive (the zero polynomial
    /// qualifies).
    pub fn is_in_positive_part(&self) -> bool {
        self.coeffs.keys().all(|e| *e > 0)
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Writes a bar-invariant polynomial as `c_0 + sum_k c_k (v^k + v^-k)`,
    /// returning `[(0, c_0), (k, c_k), ...]` with nonzero `c`. `None` if the
    /// polynomial is not bar-invariant.
    pub fn symmetric_coordinates(&self) -> Option<Vec<(i32, BigInt)>> {
        let mut rest = self.clone();
        let mut out = Vec::new();
        while let Some(top) = rest.max_exponent() {
            let c = rest.coeff(top);
            if top < 0 {
                return None;
            }
            let basis = if top == 0 { Self::one() } else { Self::sym(top) };
            rest = &rest - &basis.scale(&c);
            out.push((top, c));
        }
        out.reverse();
        Some(out)
    }

    /// Writes a bar-invariant polynomial as a polynomial in `(v + v^-1)`,
    /// returning the coefficients `a_0, a_1, ...` with
    /// `p = sum_j a_j (v + v^-1)^j`. `None` if not bar-invariant.
    pub fn in_quantum_two(&self) -> Option<Vec<BigInt>> {
        if !self.is_bar_invariant() {
            return None;
        }
        let deg = self.max_exponent().unwrap_or(0).max(0) as usize;
        let q2 = Self::sym(1);
        let mut powers = vec![Self::one()];
        for j in 1..=deg {
            powers.push(&powers[j - 1] * &q2);
        }
        let mut rest = self.clone();
        let mut out = vec![BigInt::zero(); deg + 1];
        for j in (0..=deg).rev() {
            let c = rest.coeff(j as i32);
            if !c.is_zero() {
                rest = &rest - &powers[j].scale(&c);
                out[j] = c;
            }
        }
        rest.is_zero().then_some(out)
    }

    /// Value at `v = 1`.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.coeffs.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if *e == 1 {
                f.write_str("v")?;
            } else {
                write!(f, "v^{e}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        for pair in tokens.windows(2) {
            let joined = pair[0].ends_with(['+', '-']) || pair[1].starts_with(['+', '-']);
            if !joined {
                return Err(ParseError::new(format!("missing operator in polynomial `{s}`")));
            }
        }
        let compact: String = tokens.concat();
        if compact.is_empty() {
            return Err(ParseError::new("empty polynomial"));
        }
        let bad = |msg: &str| ParseError::new(format!("{msg} in polynomial `{s}`"));
        let bytes = compact.as_bytes();
        let mut p = LaurentPoly::zero();
        let mut i = 0;
        let mut first = true;
        while i < bytes.len() {
            let mut sign = BigInt::one();
            match bytes[i] {
                b'+' if !first => i += 1,
                b'-' => {
                    sign = -sign;
                    i += 1;
                }
                _ if first => {}
                _ => return Err(bad("expected `+` or `-`")),
            }
            first = false;
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let digits = &compact[start..i];
            let mag: Option<BigInt> = if digits.is_empty() {
                None
            } else {
                Some(digits.parse().map_err(|_| bad("bad coefficient"))?)
            };
            let mut exp = 0i32;
            if i < bytes.len() && bytes[i] == b'v' {
                i += 1;
                exp = 1;
                if i < bytes.len() && bytes[i] == b'^' {
                    i += 1;
                    let braced = i < bytes.len() && bytes[i] == b'{';
                    if braced {
                        i += 1;
                    }
                    let es = i;
                    if i < bytes.len() && bytes[i] == b'-' {
                        i += 1;
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    exp = compact[es..i].parse().map_err(|_| bad("bad exponent"))?;
                    if braced {
                        if i < bytes.len() && bytes[i] == b'}' {
                            i += 1;
                        } else {
                            return Err(bad("unclosed `{`"));
                        }
                    }
                }
            } else if mag.is_none() {
                return Err(bad("empty term"));
            }
            let c = mag.unwrap_or_else(BigInt::one) * sign;
            p.add_term(exp, c);
        }
        Ok(p)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            self.add_term(*e, -c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e, c) in &self.coeffs {
            out.add_scaled(rhs, c, *e);
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn bar_examples() {
        assert_eq!(p("v").bar(), p("v^-1"));
        assert_eq!(p("v^-1 + v").bar(), p("v^-1 + v"));
        assert_eq!(p("3v + v^2").bar(), p("v^-2 + 3v^-1"));
    }

    #[test]
    fn degree_part_examples() {
        assert_eq!(p("v^-1 + 2 + v").degree_part(|e| e > 0), p("v"));
        assert_eq!(p("v^3").degree_part(|e| e < 0), LaurentPoly::zero());
        assert_eq!(p("v^-2 + 3 + 2v").degree_part(|e| e == 0), p("3"));
    }

    #[test]
    fn completion_examples() {
        assert_eq!(p("v").bar_invariant_completion(), LaurentPoly::zero());
        assert_eq!(p("3").bar_invariant_completion(), p("3"));
        let src = p("v^-2 + 5 + 7v");
        let q = src.bar_invariant_completion();
        assert_eq!(q, p("v^-2 + 5 + v^2"));
        assert!(q.is_bar_invariant());
        assert!((&src - &q).is_in_positive_part());
    }

    #[test]
    fn predicates() {
        assert!(LaurentPoly::sym(3).is_bar_invariant());
        assert!(p("v").is_in_positive_part());
        assert!(!p("v^-1").is_bar_invariant());
        assert!(!p("v^-1").is_in_positive_part());
        assert!(LaurentPoly::zero().is_in_positive_part());
    }

    #[test]
    fn render_and_parse() {
        let q = p("v^-2 - 1 + 2v^3 - v");
        assert_eq!(q.to_string(), "v^-2 - 1 - v + 2v^3");
        assert_eq!(p("-v^-1").to_string(), "-v^-1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(p("0"), LaurentPoly::zero());
        assert_eq!(p("v^{-4} + 3 + v^{4}"), p("v^-4+3+v^4"));
        assert!("".parse::<LaurentPoly>().is_err());
        assert!("v^".parse::<LaurentPoly>().is_err());
        assert!("3 4".parse::<LaurentPoly>().is_err());
        assert!("x".parse::<LaurentPoly>().is_err());
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let x = LaurentPoly::constant(i64::MAX) + LaurentPoly::v_pow(1);
        let sq = &x * &x;
        assert_eq!(sq.coeff(0), BigInt::from(i64::MAX) * BigInt::from(i64::MAX));
        assert_eq!(sq.to_string().parse::<LaurentPoly>().unwrap(), sq);
    }

    #[test]
    fn quantum_two_coordinates() {
        // (v + v^-1)^2 = v^2 + 2 + v^-2
        assert_eq!(
            p("v^-2 + 2 + v^2").in_quantum_two().unwrap(),
            vec![BigInt::zero(), BigInt::zero(), BigInt::one()]
        );
        assert!(p("v").in_quantum_two().is_none());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        prop::collection::vec((-20i64..20, -6i32..6), 0..6).prop_map(LaurentPoly::from_terms)
    }

    proptest! {
        #[test]
        fn bar_is_involutive_ring_hom(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn completion_splits(a in arb_poly()) {
            let q = a.bar_invariant_completion();
            prop_assert!(q.is_bar_invariant());
            let rest = &a - &q;
            prop_assert!(rest.is_in_positive_part());
            prop_assert_eq!(&q + &rest, a);
        }

        #[test]
        fn bar_invariant_is_symmetric_combination(a in arb_poly()) {
            let s = &a + &a.bar();
            let coords = s.symmetric_coordinates().unwrap();
            let rebuilt = coords.iter().fold(LaurentPoly::zero(), |acc, (k, c)| {
                let basis = if *k == 0 { LaurentPoly::one() } else { LaurentPoly::sym(*k) };
                acc + basis.scale(c)
            });
            prop_assert_eq!(rebuilt, s.clone());
            prop_assert!(s.in_quantum_two().is_some());
        }

        #[test]
        fn display_round_trips(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
        }
    }
}
