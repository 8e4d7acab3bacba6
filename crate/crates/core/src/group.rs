//! Finite permutation groups given by named generators.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};

/// A finite group of permutations of `0..degree`, closed under its named
/// generators. Element 0 is the identity; elements are numbered in
/// breadth-first order of their generator words.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gen_names: Vec<String>,
    gens: Vec<usize>,
    perms: Vec<Vec<usize>>,
    words: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

/// `(p * q)(i) = p(q(i))`
fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidAction(msg));
        let mut names = BTreeSet::new();
        for (name, p) in &generators {
            if name.is_empty() || name == "e" || name.contains(char::is_whitespace) {
                return bad(format!("bad group generator name `{name}`"));
            }
            if !names.insert(name.as_str()) {
                return bad(format!("duplicate group generator `{name}`"));
            }
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&i| i >= degree || std::mem::replace(&mut seen[i], true)) {
                return bad(format!("`{name}` is not a permutation of {degree} points"));
            }
        }
        let ident: Vec<usize> = (0..degree).collect();
        let mut perms = vec![ident.clone()];
        let mut words = vec![Vec::new()];
        let mut index = HashMap::from([(ident, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for (k, (_, p)) in generators.iter().enumerate() {
                let h = compose(&perms[g], p);
                if !index.contains_key(&h) {
                    index.insert(h.clone(), perms.len());
                    let mut w = words[g].clone();
                    w.push(k);
                    queue.push_back(perms.len());
                    perms.push(h);
                    words.push(w);
                }
            }
        }
        let gens = generators.iter().map(|(_, p)| index[p]).collect();
        Ok(Self {
            degree,
            gen_names: generators.into_iter().map(|(n, _)| n).collect(),
            gens,
            perms,
            words,
            index,
        })
    }

    /// Builds generators from cycles over named points; unlisted points are fixed.
    pub fn from_cycles<S: AsRef<str>>(points: &[S], generators: &[(&str, Vec<Vec<&str>>)]) -> Result<Self> {
        let lookup = |name: &str| {
            points
                .iter()
                .position(|p| p.as_ref() == name)
                .ok_or_else(|| Error::InvalidAction(format!("unknown point `{name}`")))
        };
        let mut gens = Vec::new();
        for (name, cycles) in generators {
            let mut p: Vec<usize> = (0..points.len()).collect();
            let mut moved = BTreeSet::new();
            for cycle in cycles {
                let idx: Vec<usize> = cycle.iter().map(|c| lookup(c)).collect::<Result<_>>()?;
                for (i, &a) in idx.iter().enumerate() {
                    if !moved.insert(a) {
                        return Err(Error::InvalidAction(format!("cycles of `{name}` overlap")));
                    }
                    p[a] = idx[(i + 1) % idx.len()];
                }
            }
            gens.push((name.to_string(), p));
        }
        Self::new(points.len(), gens)
    }

    /// The trivial group on `degree` points.
    pub fn trivial(degree: usize) -> Self {
        Self::new(degree, Vec::new()).expect("no generators to validate")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.gens
    }

    pub fn generator_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn perm(&self, g: usize) -> &[usize] {
        &self.perms[g]
    }

    pub fn apply(&self, g: usize, point: usize) -> usize {
        self.perms[g][point]
    }

    pub fn element_of(&self, perm: &[usize]) -> Option<usize> {
        self.index.get(perm).copied()
    }

    /// `a * b`, acting as `b` first.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&compose(&self.perms[a], &self.perms[b])]
    }

    pub fn inverse(&self, g: usize) -> usize {
        let mut inv = vec![0; self.degree];
        for (i, &j) in self.perms[g].iter().enumerate() {
            inv[j] = i;
        }
        self.index[&inv]
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Parses a space-separated word in the generator names; `e` or the
    /// empty string is the identity.
    pub fn parse(&self, word: &str) -> Result<usize> {
        let word = word.trim();
        if word == "e" {
            return Ok(0);
        }
        word.split_whitespace().try_fold(0, |g, name| {
            let k = self
                .gen_names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::UnknownGroupElement(word.to_string()))?;
            Ok(self.mul(g, self.gens[k]))
        })
    }

    /// Shortest generator word (first found breadth-first), `e` for the identity.
    pub fn name(&self, g: usize) -> String {
        if self.words[g].is_empty() {
            return "e".to_string();
        }
        self.words[g]
            .iter()
            .map(|&k| self.gen_names[k].as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn sign(&self, g: usize) -> i32 {
        let p = &self.perms[g];
        let mut seen = vec![false; self.degree];
        let mut sign = 1;
        for i in 0..self.degree {
            if seen[i] {
                continue;
            }
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Cycle lengths of `g`, descending.
    pub fn cycle_type(&self, g: usize) -> Vec<usize> {
        let p = &self.perms[g];
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for i in 0..self.degree {
            let mut len = 0;
            let mut j = i;
            while !seen[j] {
                seen[j] = true;
                j = p[j];
                len += 1;
            }
            if len > 0 {
                out.push(len);
            }
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([0usize]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for &h in gens {
                let x = self.mul(g, h);
                if seen.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// Orbits on points of the subgroup generated by `gens`, each sorted,
    /// ordered by least member.
    pub fn orbits_of(&self, gens: &[usize]) -> Vec<Vec<usize>> {
        let mut block = vec![usize::MAX; self.degree];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..self.degree {
            if block[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![start];
            block[start] = id;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for &g in gens {
                    let y = self.perms[g][x];
                    if block[y] == usize::MAX {
                        block[y] = id;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbits(&self) -> Vec<Vec<usize>> {
        self.orbits_of(&self.gens)
    }

    /// Elements fixing `point`.
    pub fn stabilizer(&self, point: usize) -> Vec<usize> {
        self.elements().filter(|&g| self.perms[g][point] == point).collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order()];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for g in self.elements() {
            if class_of[g] != usize::MAX {
                continue;
            }
            let class: BTreeSet<usize> = self
                .elements()
                .map(|h| self.mul(self.mul(h, g), self.inverse(h)))
                .collect();
            for &x in &class {
                class_of[x] = out.len();
            }
            out.push(class.into_iter().collect());
        }
        out
    }

    pub fn are_conjugate(&self, a: usize, b: usize) -> bool {
        self.elements()
            .any(|h| self.mul(self.mul(h, a), self.inverse(h)) == b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> PermGroup {
        PermGroup::from_cycles(&["1", "2", "3"], &[("a", vec![vec!["1", "2"]]), ("b", vec![vec!["1", "2", "3"]])])
            .unwrap()
    }

    #[test]
    fn symmetric_group_basics() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.conjugacy_classes().len(), 3);
        let b = g.parse("b").unwrap();
        assert_eq!(g.element_order(b), 3);
        assert_eq!(g.sign(b), 1);
        assert_eq!(g.sign(g.parse("a").unwrap()), -1);
        assert_eq!(g.cycle_type(g.parse("a").unwrap()), vec![2, 1]);
        assert_eq!(g.mul(b, g.inverse(b)), 0);
        assert_eq!(g.orbits(), vec![vec![0, 1, 2]]);
        assert_eq!(g.orbits_of(&[g.parse("a").unwrap()]), vec![vec![0, 1], vec![2]]);
        assert_eq!(g.stabilizer(2).len(), 2);
        assert!(matches!(g.parse("c"), Err(Error::UnknownGroupElement(_))));
        assert_eq!(g.parse("e").unwrap(), 0);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(PermGroup::new(2, vec![("a".into(), vec![0, 0])]).is_err());
        assert!(PermGroup::new(2, vec![("e".into(), vec![1, 0])]).is_err());
        assert!(PermGroup::from_cycles(&["x"], &[("a", vec![vec!["y"]])]).is_err());
    }
}
