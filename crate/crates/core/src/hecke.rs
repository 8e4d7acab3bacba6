//! The Hecke algebra of a finite Coxeter system with a positive weight
//! function, in the normalisation
//! `(H_s + v^L(s)) (H_s - v^-L(s)) = 0`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;

use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Elem};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Coordinates in the Kazhdan–Lusztig basis.
pub type KlCoords = BTreeMap<Elem, LaurentPoly>;

/// Positive integer weights on the generators, equal on generators joined
/// by an odd bond.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightFunction {
    values: Vec<i32>,
}

impl WeightFunction {
    pub fn new(matrix: &CoxeterMatrix, values: Vec<i32>) -> Result<Self> {
        if values.len() != matrix.rank() {
            return Err(Error::WeightMismatch(format!(
                "{} weights for {} generators",
                values.len(),
                matrix.rank()
            )));
        }
        for (s, &l) in values.iter().enumerate() {
            if l <= 0 {
                return Err(Error::WeightMismatch(format!(
                    "L({}) = {l} is not positive",
                    matrix.name(s)
                )));
            }
            for (t, &lt) in values.iter().enumerate() {
                if matrix.entry(s, t) % 2 == 1 && l != lt {
                    return Err(Error::WeightMismatch(format!(
                        "L({}) != L({}) across the odd bond m = {}",
                        matrix.name(s),
                        matrix.name(t),
                        matrix.entry(s, t)
                    )));
                }
            }
        }
        Ok(Self { values })
    }

    /// `L = length`.
    pub fn split(matrix: &CoxeterMatrix) -> Self {
        Self {
            values: vec![1; matrix.rank()],
        }
    }

    /// Weights given by generator name; every generator must be listed.
    pub fn from_named(matrix: &CoxeterMatrix, named: &[(&str, i32)]) -> Result<Self> {
        let mut values = vec![0; matrix.rank()];
        for &(name, l) in named {
            let s = matrix
                .index_of(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            values[s] = l;
        }
        if let Some(s) = values.iter().position(|&l| l == 0) {
            return Err(Error::WeightMismatch(format!("no weight for `{}`", matrix.name(s))));
        }
        Self::new(matrix, values)
    }

    pub fn get(&self, s: usize) -> i32 {
        self.values[s]
    }

    pub fn values(&self) -> &[i32] {
        &self.values
    }

    pub fn is_split(&self) -> bool {
        self.values.iter().all(|&l| l == 1)
    }

    /// Sum of weights along a word; on reduced words this is `L(w)`.
    pub fn of_word(&self, word: &[usize]) -> i32 {
        word.iter().map(|&s| self.values[s]).sum()
    }
}

/// An element of the Hecke algebra in standard-basis coordinates.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct HeckeElt {
    coords: BTreeMap<Elem, LaurentPoly>,
}

impl HeckeElt {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::basis(Elem::IDENTITY)
    }

    /// `H_x`
    pub fn basis(x: Elem) -> Self {
        Self::term(x, LaurentPoly::one())
    }

    /// `p H_x`
    pub fn term(x: Elem, p: LaurentPoly) -> Self {
        let mut h = Self::zero();
        h.add_term(x, &p);
        h
    }

    pub fn from_coords(coords: impl IntoIterator<Item = (Elem, LaurentPoly)>) -> Self {
        let mut h = Self::zero();
        for (x, p) in coords {
            h.add_term(x, &p);
        }
        h
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, x: Elem) -> LaurentPoly {
        self.coords.get(&x).cloned().unwrap_or_default()
    }

    pub fn get(&self, x: Elem) -> Option<&LaurentPoly> {
        self.coords.get(&x)
    }

    /// Nonzero coordinates in id order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Elem, &LaurentPoly)> + '_ {
        self.coords.iter().map(|(x, p)| (*x, p))
    }

    pub fn support(&self) -> impl Iterator<Item = Elem> + '_ {
        self.coords.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &BTreeMap<Elem, LaurentPoly> {
        &self.coords
    }

    pub fn into_coords(self) -> BTreeMap<Elem, LaurentPoly> {
        self.coords
    }

    /// Adds `p H_x`.
    pub fn add_term(&mut self, x: Elem, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        let slot = self.coords.entry(x).or_default();
        *slot += p;
        if slot.is_zero() {
            self.coords.remove(&x);
        }
    }

    /// Adds `p * other`.
    pub fn add_scaled(&mut self, other: &HeckeElt, p: &LaurentPoly) {
        if p.is_zero() {
            return;
        }
        for (x, q) in &other.coords {
            self.add_term(*x, &(q * p));
        }
    }

    /// Adds `v^e * other`.
    pub fn add_shifted(&mut self, other: &HeckeElt, e: i32) {
        for (x, q) in &other.coords {
            self.add_term(*x, &q.shift(e));
        }
    }

    pub fn scale(&self, p: &LaurentPoly) -> Self {
        let mut h = Self::zero();
        h.add_scaled(self, p);
        h
    }

    /// Applies `v -> v^-1` to the coordinates only.
    pub fn bar_coefficients(&self) -> Self {
        Self::from_coords(self.coords.iter().map(|(x, p)| (*x, p.bar())))
    }

    /// Renders as `p1 H[x1] + p2 H[x2] ...` using the system's names.
    pub fn display<'a>(&'a self, system: &'a CoxeterSystem) -> impl fmt::Display + 'a {
        DisplayElt { h: self, system }
    }
}

struct DisplayElt<'a> {
    h: &'a HeckeElt,
    system: &'a CoxeterSystem,
}

impl fmt::Display for DisplayElt<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.h.is_zero() {
            return f.write_str("0");
        }
        for (i, (x, p)) in self.h.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({p}) H[{}]", self.system.name(x))?;
        }
        Ok(())
    }
}

impl fmt::Debug for HeckeElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.coords.iter().map(|(x, p)| (x.0, p.to_string())))
            .finish()
    }
}

impl Add for &HeckeElt {
    type Output = HeckeElt;

    fn add(self, rhs: &HeckeElt) -> HeckeElt {
        let mut h = self.clone();
        h.add_scaled(rhs, &LaurentPoly::one());
        h
    }
}

impl Sub for &HeckeElt {
    type Output = HeckeElt;

    fn sub(self, rhs: &HeckeElt) -> HeckeElt {
        let mut h = self.clone();
        h.add_scaled(rhs, &LaurentPoly::constant(-1));
        h
    }
}

impl Neg for &HeckeElt {
    type Output = HeckeElt;

    fn neg(self) -> HeckeElt {
        self.scale(&LaurentPoly::constant(-1))
    }
}

/// `H(W, S, L)` with lazily filled, per-entry caches of KL basis elements,
/// bars of standard basis elements, and structure constants.
pub struct HeckeAlgebra {
    system: Arc<CoxeterSystem>,
    weights: WeightFunction,
    kl: Vec<OnceLock<HeckeElt>>,
    bar_basis: Vec<OnceLock<HeckeElt>>,
    structure: Mutex<HashMap<(Elem, Elem), Arc<KlCoords>>>,
}

impl HeckeAlgebra {
    pub fn new(system: Arc<CoxeterSystem>, weights: WeightFunction) -> Result<Self> {
        if weights.values().len() != system.rank() {
            return Err(Error::WeightMismatch(format!(
                "{} weights for {} generators",
                weights.values().len(),
                system.rank()
            )));
        }
        let n = system.order();
        Ok(Self {
            system,
            weights,
            kl: (0..n).map(|_| OnceLock::new()).collect(),
            bar_basis: (0..n).map(|_| OnceLock::new()).collect(),
            structure: Mutex::new(HashMap::new()),
        })
    }

    pub fn split(system: Arc<CoxeterSystem>) -> Self {
        let weights = WeightFunction::split(system.matrix());
        Self::new(system, weights).expect("split weights match")
    }

    pub fn system(&self) -> &CoxeterSystem {
        &self.system
    }

    pub fn system_arc(&self) -> &Arc<CoxeterSystem> {
        &self.system
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    /// `L(w)` for a group element.
    pub fn weight_of(&self, w: Elem) -> i32 {
        self.weights.of_word(&self.system.normal_form(w))
    }

    /// `h H_s`
    pub fn right_mul_gen(&self, h: &HeckeElt, s: usize) -> HeckeElt {
        let l = self.weights.get(s);
        let drop = LaurentPoly::v_pow(-l) - LaurentPoly::v_pow(l);
        let mut out = HeckeElt::zero();
        for (x, p) in h.terms() {
            let xs = self.system.right_mul_gen(x, s);
            out.add_term(xs, p);
            if self.system.is_right_descent(x, s) {
                out.add_term(x, &(p * &drop));
            }
        }
        out
    }

    /// `H_s h`
    pub fn left_mul_gen(&self, s: usize, h: &HeckeElt) -> HeckeElt {
        let l = self.weights.get(s);
        let drop = LaurentPoly::v_pow(-l) - LaurentPoly::v_pow(l);
        let mut out = HeckeElt::zero();
        for (x, p) in h.terms() {
            let sx = self.system.left_mul_gen(s, x);
            out.add_term(sx, p);
            if self.system.is_left_descent(x, s) {
                out.add_term(x, &(p * &drop));
            }
        }
        out
    }

    /// `h b_s` with `b_s = H_s + v^L(s)`.
    pub fn right_mul_kl_gen(&self, h: &HeckeElt, s: usize) -> HeckeElt {
        let mut out = self.right_mul_gen(h, s);
        out.add_shifted(h, self.weights.get(s));
        out
    }

    /// `b_s h`
    pub fn left_mul_kl_gen(&self, s: usize, h: &HeckeElt) -> HeckeElt {
        let mut out = self.left_mul_gen(s, h);
        out.add_shifted(h, self.weights.get(s));
        out
    }

    /// `h H_s^-1` with `H_s^-1 = H_s + v^L(s) - v^-L(s)`.
    fn right_mul_gen_inverse(&self, h: &HeckeElt, s: usize) -> HeckeElt {
        let l = self.weights.get(s);
        let mut out = self.right_mul_gen(h, s);
        out.add_shifted(h, l);
        out.add_shifted(&-h, -l);
        out
    }

    /// `h H_x`, walking the normal form of `x`.
    pub fn mul_basis(&self, h: &HeckeElt, x: Elem) -> HeckeElt {
        self.system
            .normal_form(x)
            .into_iter()
            .fold(h.clone(), |acc, s| self.right_mul_gen(&acc, s))
    }

    /// Product in the standard basis.
    pub fn mult_standard(&self, h: &HeckeElt, k: &HeckeElt) -> HeckeElt {
        // h H_y for every prefix of every normal form in the support of k.
        let mut memo: HashMap<Elem, HeckeElt> = HashMap::from([(Elem::IDENTITY, h.clone())]);
        let mut out = HeckeElt::zero();
        for (y, q) in k.terms() {
            let mut chain = Vec::new();
            let mut cur = y;
            while !memo.contains_key(&cur) {
                let (u, s) = self.system.split_last(cur).expect("identity is memoised");
                chain.push((cur, s));
                cur = u;
            }
            for (x, s) in chain.into_iter().rev() {
                let (u, _) = self.system.split_last(x).expect("nonidentity");
                let next = self.right_mul_gen(&memo[&u], s);
                memo.insert(x, next);
            }
            out.add_scaled(&memo[&y], q);
        }
        out
    }

    /// `bar(H_x) = H_{s_1}^-1 ... H_{s_k}^-1` along the normal form of `x`.
    pub fn bar_of_basis(&self, x: Elem) -> &HeckeElt {
        if let Some(h) = self.bar_basis[x.index()].get() {
            return h;
        }
        let h = match self.system.split_last(x) {
            None => HeckeElt::one(),
            Some((u, s)) => self.right_mul_gen_inverse(self.bar_of_basis(u), s),
        };
        let _ = self.bar_basis[x.index()].set(h);
        self.bar_basis[x.index()].get().expect("just set")
    }

    /// The bar involution.
    pub fn bar(&self, h: &HeckeElt) -> HeckeElt {
        let mut out = HeckeElt::zero();
        for (x, p) in h.terms() {
            out.add_scaled(self.bar_of_basis(x), &p.bar());
        }
        out
    }

    /// `b_s = H_s + v^L(s)`.
    pub fn kl_generator(&self, s: usize) -> HeckeElt {
        HeckeElt::from_coords([
            (self.system.generator(s), LaurentPoly::one()),
            (Elem::IDENTITY, LaurentPoly::v_pow(self.weights.get(s))),
        ])
    }

    /// The Kazhdan–Lusztig basis element `b_x`: self-dual and equal to `H_x`
    /// modulo strictly positive degrees.
    ///
    /// Built as `b_s b_{sx}` for the first letter `s` of the normal form,
    /// then corrected from the top down: each coordinate `y < x` that is
    /// not in positive degrees has its bar-invariant completion times `b_y`
    /// subtracted. Subtracting `b_y` only changes coordinates of smaller
    /// id, so one pass in decreasing id order suffices.
    pub fn kl_element(&self, x: Elem) -> &HeckeElt {
        if let Some(b) = self.kl[x.index()].get() {
            return b;
        }
        let b = self.compute_kl(x);
        let _ = self.kl[x.index()].set(b);
        self.kl[x.index()].get().expect("just set")
    }

    fn compute_kl(&self, x: Elem) -> HeckeElt {
        if x == Elem::IDENTITY {
            return HeckeElt::one();
        }
        let nf = self.system.normal_form(x);
        let s = nf[0];
        if nf.len() == 1 {
            return self.kl_generator(s);
        }
        let sx = self.system.left_mul_gen(s, x);
        let mut h = self.left_mul_kl_gen(s, self.kl_element(sx));
        let mut cursor = x;
        while let Some((&z, p)) = h.coords.range(..cursor).next_back() {
            cursor = z;
            if p.is_in_positive_part() {
                continue;
            }
            let c = -p.bar_invariant_completion();
            h.add_scaled(self.kl_element(z), &c);
        }
        h
    }

    /// Coordinates of `h` in the KL basis, found by repeatedly removing the
    /// term of largest id (hence of maximal length).
    pub fn kl_expand(&self, h: &HeckeElt) -> KlCoords {
        let mut rest = h.clone();
        let mut out = KlCoords::new();
        while let Some((&z, p)) = rest.coords.iter().next_back() {
            let c = p.clone();
            rest.add_scaled(self.kl_element(z), &-&c);
            out.insert(z, c);
        }
        out
    }

    /// Standard-basis element with the given KL coordinates.
    pub fn from_kl(&self, coords: &KlCoords) -> HeckeElt {
        let mut h = HeckeElt::zero();
        for (y, p) in coords {
            h.add_scaled(self.kl_element(*y), p);
        }
        h
    }

    /// `b_{s_1} ... b_{s_d}` in the standard basis.
    pub fn bott_samelson(&self, word: &[usize]) -> HeckeElt {
        word.iter()
            .fold(HeckeElt::one(), |h, &s| self.right_mul_kl_gen(&h, s))
    }

    /// KL coordinates of `b_{s_1} ... b_{s_d}`.
    pub fn kl_product(&self, word: &[usize]) -> KlCoords {
        self.kl_expand(&self.bott_samelson(word))
    }

    /// `b_x b_y = sum_z m^z_{x,y} b_z`, cached per pair.
    pub fn structure_constants(&self, x: Elem, y: Elem) -> Arc<KlCoords> {
        if let Some(c) = self.structure.lock().expect("cache poisoned").get(&(x, y)) {
            return Arc::clone(c);
        }
        let prod = self.mult_standard(self.kl_element(x), self.kl_element(y));
        let coords = Arc::new(self.kl_expand(&prod));
        self.structure
            .lock()
            .expect("cache poisoned")
            .entry((x, y))
            .or_insert(coords)
            .clone()
    }

    /// KL coordinates of `b_{x_1} ... b_{x_k}`, multiplied out through the
    /// structure constants.
    pub fn kl_product_general(&self, factors: &[Elem]) -> KlCoords {
        let mut cur = KlCoords::from([(Elem::IDENTITY, LaurentPoly::one())]);
        for &y in factors {
            let mut next = KlCoords::new();
            for (z, p) in &cur {
                for (w, m) in self.structure_constants(*z, y).iter() {
                    let slot = next.entry(*w).or_default();
                    *slot += &(p * m);
                }
            }
            next.retain(|_, p| !p.is_zero());
            cur = next;
        }
        cur
    }

    /// Standard-basis form of a product of KL elements, for cross-checks.
    pub fn kl_product_standard(&self, factors: &[Elem]) -> HeckeElt {
        factors.iter().fold(HeckeElt::one(), |h, &y| {
            self.mult_standard(&h, self.kl_element(y))
        })
    }

    /// The KL polynomial `P_{y,x}`, the coefficient of `H_y` in `b_x`.
    pub fn kl_polynomial(&self, y: Elem, x: Elem) -> LaurentPoly {
        self.kl_element(x).coeff(y)
    }
}

/// `sum_w v^(2 l(w) - l(w0))`
pub fn poincare_balanced(system: &CoxeterSystem) -> LaurentPoly {
    LaurentPoly::from_terms(
        system
            .balanced_poincare_terms()
            .into_iter()
            .map(|(e, c)| (BigInt::from(c), e)),
    )
}

/// The symmetric bilinear form with `(H_x, H_y) = delta_{x,y}`, defined for
/// split weights only.
pub fn pairing_split(algebra: &HeckeAlgebra, h: &HeckeElt, k: &HeckeElt) -> Result<LaurentPoly> {
    if !algebra.weights().is_split() {
        return Err(Error::UnsupportedWeights);
    }
    let mut out = LaurentPoly::zero();
    for (x, p) in h.terms() {
        if let Some(q) = k.get(x) {
            out += &(p * q);
        }
    }
    Ok(out)
}
