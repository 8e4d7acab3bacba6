use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Maximum number of generators; descent sets are stored as `u64` masks.
pub const MAX_RANK: usize = 64;

/// A Coxeter matrix over named generators. Only finite bonds are accepted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoxeterMatrix {
    names: Vec<String>,
    entries: Vec<Vec<u32>>,
}

impl CoxeterMatrix {
    pub fn new(names: Vec<String>, entries: Vec<Vec<u32>>) -> Result<Self> {
        let n = names.len();
        let bad = |msg: String| Err(Error::InvalidMatrix(msg));
        if n > MAX_RANK {
            return bad(format!("rank {n} exceeds {MAX_RANK}"));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',') {
                return bad(format!("generator name `{name}` must be nonempty without spaces or commas"));
            }
            if name == "e" {
                return bad("`e` is reserved for the identity".into());
            }
            if !seen.insert(name.as_str()) {
                return bad(format!("duplicate generator `{name}`"));
            }
        }
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return bad(format!("matrix must be {n}x{n}"));
        }
        for i in 0..n {
            if entries[i][i] != 1 {
                return bad(format!("diagonal entry for `{}` must be 1", names[i]));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if entries[i][j] != entries[j][i] {
                    return bad(format!("not symmetric at ({}, {})", names[i], names[j]));
                }
                if entries[i][j] < 2 {
                    return bad(format!(
                        "m({}, {}) = {} must be at least 2",
                        names[i], names[j], entries[i][j]
                    ));
                }
            }
        }
        Ok(Self { names, entries })
    }

    /// Builds a matrix from a list of bonds `(a, b, m)`; unlisted pairs commute.
    pub fn from_bonds(names: &[&str], bonds: &[(usize, usize, u32)]) -> Result<Self> {
        let n = names.len();
        let mut entries = vec![vec![2; n]; n];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(a, b, m) in bonds {
            if a >= n || b >= n || a == b {
                return Err(Error::InvalidMatrix(format!("bad bond ({a}, {b})")));
            }
            entries[a][b] = m;
            entries[b][a] = m;
        }
        Self::new(names.iter().map(|s| s.to_string()).collect(), entries)
    }

    fn numbered(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("s{i}")).collect()
    }

    fn path(n: usize, labels: &[u32]) -> Self {
        let names = Self::numbered(n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let bonds: Vec<_> = labels.iter().enumerate().map(|(i, &m)| (i, i + 1, m)).collect();
        Self::from_bonds(&refs, &bonds).expect("path diagrams are valid")
    }

    /// Type `A_n` on `s1 .. sn`.
    pub fn type_a(n: usize) -> Self {
        Self::path(n, &vec![3; n.saturating_sub(1)])
    }

    /// Type `B_n` on `s1 .. sn` with `m(s_{n-1}, s_n) = 4`.
    pub fn type_b(n: usize) -> Self {
        assert!(n >= 2, "B_n needs n >= 2");
        let mut labels = vec![3; n - 1];
        labels[n - 2] = 4;
        Self::path(n, &labels)
    }

    /// Type `D_n` on `s1 .. sn`; `s_{n-2}` is the branch node.
    pub fn type_d(n: usize) -> Self {
        assert!(n >= 4, "D_n needs n >= 4");
        let names = Self::numbered(n);
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let mut bonds: Vec<_> = (0..n - 2).map(|i| (i, i + 1, 3)).collect();
        bonds.push((n - 3, n - 1, 3));
        Self::from_bonds(&refs, &bonds).expect("valid")
    }

    /// `D_4` in star form: spokes `u1, u2, u3` around the hub `v`.
    pub fn d4_star() -> Self {
        Self::star(3)
    }

    /// Star-shaped diagram: spokes `u1 .. un` all joined to a hub `v` by
    /// bonds of label 3 (`n = 3` is `D_4`).
    pub fn star(spokes: usize) -> Self {
        let mut names: Vec<String> = (1..=spokes).map(|i| format!("u{i}")).collect();
        names.push("v".into());
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let bonds: Vec<_> = (0..spokes).map(|i| (i, spokes, 3)).collect();
        Self::from_bonds(&refs, &bonds).expect("valid")
    }

    pub fn type_f4() -> Self {
        Self::path(4, &[3, 4, 3])
    }

    /// `H_3` with `m(s1, s2) = 5`.
    pub fn type_h3() -> Self {
        Self::path(3, &[5, 3])
    }

    /// Dihedral `I_2(m)` on `s, t`.
    pub fn dihedral(m: u32) -> Self {
        Self::from_bonds(&["s", "t"], &[(0, 1, m)]).expect("m >= 2")
    }

    /// Disjoint union of diagrams. Generator names must not clash.
    pub fn product(factors: &[CoxeterMatrix]) -> Result<Self> {
        let n: usize = factors.iter().map(|f| f.rank()).sum();
        let mut names = Vec::with_capacity(n);
        let mut entries = vec![vec![2; n]; n];
        let mut offset = 0;
        for f in factors {
            for i in 0..f.rank() {
                names.push(f.names[i].clone());
                for j in 0..f.rank() {
                    entries[offset + i][offset + j] = f.entries[i][j];
                }
            }
            offset += f.rank();
        }
        Self::new(names, entries)
    }

    /// Same matrix, new generator names.
    pub fn renamed<S: AsRef<str>>(&self, names: &[S]) -> Result<Self> {
        if names.len() != self.rank() {
            return Err(Error::InvalidMatrix(format!(
                "expected {} names, got {}",
                self.rank(),
                names.len()
            )));
        }
        Self::new(
            names.iter().map(|s| s.as_ref().to_string()).collect(),
            self.entries.clone(),
        )
    }

    /// Appends `suffix` to every generator name.
    pub fn suffixed(&self, suffix: &str) -> Self {
        let names: Vec<String> = self.names.iter().map(|n| format!("{n}{suffix}")).collect();
        self.renamed(&names).expect("suffixing preserves validity")
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }
}

impl fmt::Debug for CoxeterMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterMatrix")
            .field("names", &self.names)
            .field("entries", &self.entries)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_malformed() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(CoxeterMatrix::new(names.clone(), vec![vec![1, 3], vec![2, 1]]).is_err());
        assert!(CoxeterMatrix::new(names.clone(), vec![vec![2, 3], vec![3, 1]]).is_err());
        assert!(CoxeterMatrix::new(names.clone(), vec![vec![1, 1], vec![1, 1]]).is_err());
        assert!(CoxeterMatrix::new(names, vec![vec![1, 3]]).is_err());
        let dup = vec!["a".to_string(), "a".to_string()];
        assert!(CoxeterMatrix::new(dup, vec![vec![1, 3], vec![3, 1]]).is_err());
        assert!(CoxeterMatrix::from_bonds(&["e"], &[]).is_err());
    }

    #[test]
    fn standard_types() {
        let d4 = CoxeterMatrix::type_d(4);
        assert_eq!(d4.entry(1, 3), 3);
        assert_eq!(d4.entry(0, 3), 2);
        let b3 = CoxeterMatrix::type_b(3);
        assert_eq!(b3.entry(1, 2), 4);
        let prod = CoxeterMatrix::product(&[
            CoxeterMatrix::type_a(1).suffixed("a"),
            CoxeterMatrix::type_a(1).suffixed("b"),
        ])
        .unwrap();
        assert_eq!(prod.names(), ["s1a", "s1b"]);
        assert_eq!(prod.entry(0, 1), 2);
        assert!(CoxeterMatrix::product(&[CoxeterMatrix::type_a(1), CoxeterMatrix::type_a(1)]).is_err());
    }
}
