//! Word problem by braid moves alone.
//!
//! Exponential in general and only meant for small groups, where it serves
//! as an independent check on [`CoxeterSystem`](super::CoxeterSystem).

use std::collections::{BTreeSet, HashSet, VecDeque};

use super::matrix::CoxeterMatrix;
use crate::error::{Error, Result};

fn alternating(a: usize, b: usize, len: usize) -> Vec<usize> {
    (0..len).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

/// All words reachable from `word` by braid moves.
pub fn braid_closure(matrix: &CoxeterMatrix, word: &[usize]) -> HashSet<Vec<usize>> {
    let r = matrix.rank();
    let mut seen = HashSet::from([word.to_vec()]);
    let mut queue = VecDeque::from([word.to_vec()]);
    while let Some(w) = queue.pop_front() {
        for s in 0..r {
            for t in 0..r {
                if s == t {
                    continue;
                }
                let m = matrix.entry(s, t) as usize;
                if m > w.len() {
                    continue;
                }
                let from = alternating(s, t, m);
                let to = alternating(t, s, m);
                for i in 0..=w.len() - m {
                    if w[i..i + m] == from[..] {
                        let mut x = w.clone();
                        x[i..i + m].copy_from_slice(&to);
                        if seen.insert(x.clone()) {
                            queue.push_back(x);
                        }
                    }
                }
            }
        }
    }
    seen
}

/// A word is reduced iff no word in its braid closure has two equal
/// adjacent letters.
pub fn is_reduced(matrix: &CoxeterMatrix, word: &[usize]) -> bool {
    braid_closure(matrix, word)
        .iter()
        .all(|w| w.windows(2).all(|p| p[0] != p[1]))
}

/// ShortLex normal form: cancel adjacent pairs found anywhere in the braid
/// closure until the word is reduced, then take the least reduced word.
pub fn shortlex_normal_form(matrix: &CoxeterMatrix, word: &[usize]) -> Vec<usize> {
    let mut cur = word.to_vec();
    'outer: loop {
        let closure = braid_closure(matrix, &cur);
        for w in &closure {
            if let Some(i) = w.windows(2).position(|p| p[0] == p[1]) {
                let mut x = w.clone();
                x.drain(i..i + 2);
                cur = x;
                continue 'outer;
            }
        }
        return closure.into_iter().min().expect("closure contains the word");
    }
}

/// Breadth-first enumeration in which equality of candidate words is
/// decided by braid closure. Returns ShortLex normal forms in ShortLex order.
pub fn enumerate(matrix: &CoxeterMatrix, cap: usize) -> Result<Vec<Vec<usize>>> {
    let r = matrix.rank();
    let mut all = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    while !layer.is_empty() {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut covered: HashSet<Vec<usize>> = HashSet::new();
        for w in &layer {
            for s in 0..r {
                let mut cand = w.clone();
                cand.push(s);
                if covered.contains(&cand) {
                    continue;
                }
                let closure = braid_closure(matrix, &cand);
                if closure.iter().any(|x| x.windows(2).any(|p| p[0] == p[1])) {
                    continue;
                }
                let least = closure.iter().min().expect("nonempty").clone();
                covered.extend(closure);
                found.insert(least);
            }
        }
        if all.len() + found.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
        layer = found.into_iter().collect();
        all.extend(layer.iter().cloned());
    }
    Ok(all)
}
