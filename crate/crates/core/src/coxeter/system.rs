use std::collections::VecDeque;
use std::fmt;
use std::sync::OnceLock;

use super::matrix::CoxeterMatrix;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: usize = 50_000;

const UNSET: u32 = u32::MAX;

/// Dense element id. Ids follow ShortLex order of normal forms, so the
/// identity is 0 and ids never decrease with length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A fully enumerated finite Coxeter group. Immutable after construction.
pub struct CoxeterSystem {
    matrix: CoxeterMatrix,
    rank: usize,
    lengths: Vec<u32>,
    /// Last letter of the normal form and the element obtained by removing it.
    last: Vec<(u8, u32)>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverse: Vec<u32>,
    right_desc: Vec<u64>,
    left_desc: Vec<u64>,
    layer_starts: Vec<usize>,
    /// Lower Bruhat ideal of each element as a bitset, filled on demand.
    ideals: Vec<OnceLock<Vec<u64>>>,
}

impl CoxeterSystem {
    pub fn new(matrix: CoxeterMatrix) -> Result<Self> {
        Self::with_cap(matrix, DEFAULT_CAP)
    }

    /// Enumerates the group by length, failing once more than `cap`
    /// elements have been produced.
    ///
    /// New elements are created as `w s` for `s` not a right descent of `w`.
    /// The right descents of `v = w s` are `s` together with every `t` for
    /// which `w` ends in the alternating `{s, t}` word of length `m_st - 1`
    /// starting (from the right) with `t`; the second parent `v t` is then
    /// reached from the stripped prefix, so every edge into the new layer is
    /// recorded before the layer is processed.
    pub fn with_cap(matrix: CoxeterMatrix, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::CapExceeded { cap });
        }
        let r = matrix.rank();
        let mut lengths = vec![0u32];
        let mut last = vec![(u8::MAX, UNSET)];
        let mut right = vec![UNSET; r];
        let mut right_desc = vec![0u64];
        let mut layer_starts = vec![0usize];
        let mut layer = 0..1usize;

        while !layer.is_empty() {
            let next_start = lengths.len();
            for w in layer.clone() {
                for s in 0..r {
                    if right_desc[w] >> s & 1 == 1 || right[w * r + s] != UNSET {
                        continue;
                    }
                    let v = lengths.len();
                    if v >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    lengths.push(lengths[w] + 1);
                    last.push((s as u8, w as u32));
                    right.extend(std::iter::repeat(UNSET).take(r));
                    right[w * r + s] = v as u32;
                    right[v * r + s] = w as u32;
                    let mut desc = 1u64 << s;
                    for t in (0..r).filter(|&t| t != s) {
                        let m = matrix.entry(s, t) as usize;
                        let (mut cur, mut j, mut letter) = (w, 0usize, t);
                        while j < m - 1 && right_desc[cur] >> letter & 1 == 1 {
                            cur = right[cur * r + letter] as usize;
                            j += 1;
                            letter = if letter == t { s } else { t };
                        }
                        if j != m - 1 {
                            continue;
                        }
                        desc |= 1 << t;
                        // Other parent: cur times the alternating word of
                        // length m - 1 ending in s.
                        let mut p = cur;
                        for i in 0..m - 1 {
                            let a = if (m - 2 - i) % 2 == 0 { s } else { t };
                            p = right[p * r + a] as usize;
                        }
                        right[p * r + t] = v as u32;
                        right[v * r + t] = p as u32;
                    }
                    right_desc.push(desc);
                }
            }
            layer = next_start..lengths.len();
            if !layer.is_empty() {
                layer_starts.push(next_start);
            }
        }
        layer_starts.push(lengths.len());

        let n = lengths.len();
        let mut inverse = vec![0u32; n];
        for w in 1..n {
            // inverse(u s) = s inverse(u), evaluated letter by letter.
            let mut x = 0usize;
            let mut cur = w;
            while cur != 0 {
                let (s, parent) = last[cur];
                x = right[x * r + s as usize] as usize;
                cur = parent as usize;
            }
            inverse[w] = x as u32;
        }
        let mut left = vec![0u32; n * r];
        let mut left_desc = vec![0u64; n];
        for w in 0..n {
            for s in 0..r {
                let ws = inverse[right[inverse[w] as usize * r + s] as usize];
                left[w * r + s] = ws;
                if lengths[ws as usize] < lengths[w] {
                    left_desc[w] |= 1 << s;
                }
            }
        }
        let ideals = (0..n).map(|_| OnceLock::new()).collect();
        Ok(Self {
            matrix,
            rank: r,
            lengths,
            last,
            right,
            left,
            inverse,
            right_desc,
            left_desc,
            layer_starts,
            ideals,
        })
    }

    pub fn matrix(&self) -> &CoxeterMatrix {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Elem> + ExactSizeIterator {
        (0..self.order() as u32).map(Elem)
    }

    /// Elements of length `k`, in id order.
    pub fn layer(&self, k: usize) -> impl Iterator<Item = Elem> {
        let (a, b) = if k + 1 < self.layer_starts.len() {
            (self.layer_starts[k], self.layer_starts[k + 1])
        } else {
            (0, 0)
        };
        (a as u32..b as u32).map(Elem)
    }

    /// Number of elements of each length.
    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layer_starts.windows(2).map(|w| w[1] - w[0]).collect()
    }

    pub fn length(&self, w: Elem) -> usize {
        self.lengths[w.index()] as usize
    }

    pub fn generator(&self, s: usize) -> Elem {
        Elem(self.right[s])
    }

    pub fn right_mul_gen(&self, w: Elem, s: usize) -> Elem {
        Elem(self.right[w.index() * self.rank + s])
    }

    pub fn left_mul_gen(&self, s: usize, w: Elem) -> Elem {
        Elem(self.left[w.index() * self.rank + s])
    }

    pub fn inverse(&self, w: Elem) -> Elem {
        Elem(self.inverse[w.index()])
    }

    /// ShortLex-least reduced word, as generator indices.
    pub fn normal_form(&self, w: Elem) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.length(w));
        let mut cur = w.index();
        while cur != 0 {
            let (s, parent) = self.last[cur];
            word.push(s as usize);
            cur = parent as usize;
        }
        word.reverse();
        word
    }

    /// `(u, s)` with `w = u s` and `s` the last letter of the normal form.
    pub fn split_last(&self, w: Elem) -> Option<(Elem, usize)> {
        let (s, parent) = self.last[w.index()];
        (w != Elem::IDENTITY).then_some((Elem(parent), s as usize))
    }

    /// Evaluates an arbitrary word of generator indices.
    pub fn eval(&self, word: &[usize]) -> Elem {
        word.iter()
            .fold(Elem::IDENTITY, |w, &s| self.right_mul_gen(w, s))
    }

    pub fn multiply(&self, a: Elem, b: Elem) -> Elem {
        self.normal_form(b)
            .into_iter()
            .fold(a, |w, s| self.right_mul_gen(w, s))
    }

    pub fn power(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(Elem::IDENTITY, |w, _| self.multiply(w, a))
    }

    pub fn descent_mask(&self, w: Elem, side: Side) -> u64 {
        match side {
            Side::Right => self.right_desc[w.index()],
            Side::Left => self.left_desc[w.index()],
        }
    }

    pub fn descents(&self, w: Elem, side: Side) -> Vec<usize> {
        let mask = self.descent_mask(w, side);
        (0..self.rank).filter(|&s| mask >> s & 1 == 1).collect()
    }

    pub fn is_right_descent(&self, w: Elem, s: usize) -> bool {
        self.right_desc[w.index()] >> s & 1 == 1
    }

    pub fn is_left_descent(&self, w: Elem, s: usize) -> bool {
        self.left_desc[w.index()] >> s & 1 == 1
    }

    /// Longest element of the parabolic subgroup on `subset`.
    pub fn longest_element(&self, subset: &[usize]) -> Elem {
        let mut w = Elem::IDENTITY;
        'up: loop {
            for &s in subset {
                if !self.is_right_descent(w, s) {
                    w = self.right_mul_gen(w, s);
                    continue 'up;
                }
            }
            return w;
        }
    }

    pub fn longest(&self) -> Elem {
        Elem(self.order() as u32 - 1)
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut w = a;
        while w != Elem::IDENTITY {
            w = self.multiply(w, a);
            k += 1;
        }
        k
    }

    /// Elements of the subgroup generated by `gens`, sorted by id.
    pub fn generated_subgroup(&self, gens: &[Elem]) -> Vec<Elem> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([Elem::IDENTITY]);
        while let Some(w) = queue.pop_front() {
            for &g in gens {
                let x = self.multiply(w, g);
                if !seen[x.index()] {
                    seen[x.index()] = true;
                    queue.push_back(x);
                }
            }
        }
        self.elements().filter(|w| seen[w.index()]).collect()
    }

    fn ideal(&self, w: Elem) -> &Vec<u64> {
        if let Some(set) = self.ideals[w.index()].get() {
            return set;
        }
        let words = self.normal_form(w);
        let mut prefixes = Vec::with_capacity(words.len() + 1);
        let mut cur = Elem::IDENTITY;
        prefixes.push(cur);
        for &s in &words {
            cur = self.right_mul_gen(cur, s);
            prefixes.push(cur);
        }
        let blocks = self.order().div_ceil(64);
        let start = (0..prefixes.len())
            .rev()
            .find(|&i| self.ideals[prefixes[i].index()].get().is_some())
            .unwrap_or(0);
        if start == 0 {
            let mut base = vec![0u64; blocks];
            base[0] = 1;
            let _ = self.ideals[0].set(base);
        }
        for i in start..words.len() {
            let prev = self.ideals[prefixes[i].index()].get().expect("filled in order");
            let s = words[i];
            let mut next = prev.clone();
            for (b, &bits) in prev.iter().enumerate() {
                let mut bits = bits;
                while bits != 0 {
                    let x = b * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let xs = self.right[x * self.rank + s] as usize;
                    next[xs / 64] |= 1 << (xs % 64);
                }
            }
            let _ = self.ideals[prefixes[i + 1].index()].set(next);
        }
        self.ideals[w.index()].get().expect("filled above")
    }

    /// Bruhat order via the subword property.
    pub fn bruhat_leq(&self, a: Elem, b: Elem) -> bool {
        if self.length(a) > self.length(b) {
            return false;
        }
        if a == b || a == Elem::IDENTITY {
            return true;
        }
        self.ideal(b)[a.index() / 64] >> (a.index() % 64) & 1 == 1
    }

    /// Elements below `b` in Bruhat order, sorted by id.
    pub fn bruhat_interval_below(&self, b: Elem) -> Vec<Elem> {
        let set = self.ideal(b);
        self.elements()
            .filter(|a| set[a.index() / 64] >> (a.index() % 64) & 1 == 1)
            .collect()
    }

    pub fn generator_index(&self, name: &str) -> Result<usize> {
        self.matrix
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    /// Parses a space-separated word; `e` or the empty string is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let text = text.trim();
        if text == "e" {
            return Ok(Vec::new());
        }
        text.split_whitespace().map(|n| self.generator_index(n)).collect()
    }

    pub fn parse_element(&self, text: &str) -> Result<Elem> {
        Ok(self.eval(&self.parse_word(text)?))
    }

    pub fn format_word(&self, word: &[usize]) -> String {
        if word.is_empty() {
            return "e".to_string();
        }
        word.iter()
            .map(|&s| self.matrix.name(s))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Normal form rendered as space-separated generator names.
    pub fn name(&self, w: Elem) -> String {
        self.format_word(&self.normal_form(w))
    }

    /// Poincaré polynomial coefficients, shifted to the balanced form
    /// `sum_w v^(2 l(w) - l(w0))`, as (exponent, count) pairs.
    pub fn balanced_poincare_terms(&self) -> Vec<(i32, usize)> {
        let top = self.length(self.longest()) as i32;
        self.layer_sizes()
            .into_iter()
            .enumerate()
            .map(|(k, c)| (2 * k as i32 - top, c))
            .collect()
    }
}

impl fmt::Debug for CoxeterSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterSystem")
            .field("generators", &self.matrix.names())
            .field("order", &self.order())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(m: CoxeterMatrix) -> CoxeterSystem {
        CoxeterSystem::new(m).unwrap()
    }

    #[test]
    fn orders_of_standard_types() {
        assert_eq!(sys(CoxeterMatrix::type_a(1)).order(), 2);
        assert_eq!(sys(CoxeterMatrix::type_a(3)).order(), 24);
        assert_eq!(sys(CoxeterMatrix::type_a(4)).order(), 120);
        assert_eq!(sys(CoxeterMatrix::type_b(3)).order(), 48);
        assert_eq!(sys(CoxeterMatrix::type_h3()).order(), 120);
        assert_eq!(sys(CoxeterMatrix::type_f4()).order(), 1152);
        for m in 2..=12 {
            assert_eq!(sys(CoxeterMatrix::dihedral(m)).order(), 2 * m as usize);
        }
        let d4 = sys(CoxeterMatrix::type_d(4));
        assert_eq!(d4.order(), 192);
        assert_eq!(d4.length(d4.longest()), 12);
    }

    #[test]
    fn longest_is_unique_and_involution() {
        for m in [CoxeterMatrix::type_a(3), CoxeterMatrix::type_b(3), CoxeterMatrix::type_h3()] {
            let w = sys(m);
            let sizes = w.layer_sizes();
            assert_eq!(*sizes.last().unwrap(), 1);
            let w0 = w.longest();
            assert_eq!(w.inverse(w0), w0);
            assert_eq!(w.descent_mask(w0, Side::Right).count_ones() as usize, w.rank());
        }
    }

    #[test]
    fn cap_exceeded() {
        assert!(matches!(
            CoxeterSystem::with_cap(CoxeterMatrix::type_a(3), 23),
            Err(Error::CapExceeded { cap: 23 })
        ));
        assert!(CoxeterSystem::with_cap(CoxeterMatrix::type_a(3), 24).is_ok());
    }

    #[test]
    fn empty_matrix_is_trivial_group() {
        let w = sys(CoxeterMatrix::new(vec![], vec![]).unwrap());
        assert_eq!(w.order(), 1);
        assert_eq!(w.name(Elem::IDENTITY), "e");
    }
}
