//! The weighted quotient of a free module on (orbit, irreducible) pairs by
//! the character-twist relations `[x, xi V] = xi(g) [x, V]`.

use crate::error::{Error, Result};
use crate::group::PermGroup;

use super::character::ClassFunction;
use super::cyclo::CycloScalar;

/// One orbit of a `G`-set with the labels of the irreducibles of its
/// stabilizer, and how each linear character of `G` permutes them.
#[derive(Clone, Debug)]
pub struct GSetOrbit {
    pub label: String,
    pub orbit_size: usize,
    /// Element ids of the stabilizer of a chosen point.
    pub stabilizer: Vec<usize>,
    pub irreps: Vec<String>,
    /// `twist[i][j]` is the index of `xi_i (x) V_j`, for the `i`-th linear
    /// character passed to [`weighted_quotient`].
    pub twist: Vec<Vec<usize>>,
}

#[derive(Clone, Debug)]
pub struct GSetDatum {
    group_order: usize,
    orbits: Vec<GSetOrbit>,
}

impl GSetDatum {
    /// Checks `orbit_size * |stabilizer| = |G|` for every orbit.
    pub fn new(group: &PermGroup, orbits: Vec<GSetOrbit>) -> Result<Self> {
        for o in &orbits {
            if o.orbit_size * o.stabilizer.len() != group.order() {
                return Err(Error::InvalidFixture(format!(
                    "orbit `{}`: {} * {} != |G| = {}",
                    o.label,
                    o.orbit_size,
                    o.stabilizer.len(),
                    group.order()
                )));
            }
        }
        Ok(Self {
            group_order: group.order(),
            orbits,
        })
    }

    pub fn orbits(&self) -> &[GSetOrbit] {
        &self.orbits
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }
}

/// Orbits whose stabilizer contains `g`; for abelian `G` these index a basis
/// of the `g`-weighted quotient.
pub fn weighted_basis_abelian(gset: &GSetDatum, group: &PermGroup, g: usize) -> Result<Vec<String>> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    Ok(gset
        .orbits
        .iter()
        .filter(|o| o.stabilizer.contains(&g))
        .map(|o| o.label.clone())
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    pub rank: usize,
    /// Surviving `(orbit label, irreducible label)` generators.
    pub basis: Vec<(String, String)>,
}

/// Rank of the free module on `(orbit, irreducible)` pairs modulo
/// `[x, xi V] - xi(g) [x, V]`, for every linear character `xi` in
/// `characters` (class functions on all of `G`).
pub fn weighted_quotient(gset: &GSetDatum, characters: &[ClassFunction], g: usize) -> Result<QuotientBasis> {
    let mut columns = Vec::new();
    let mut offset = Vec::new();
    for o in &gset.orbits {
        offset.push(columns.len());
        if o.twist.len() != characters.len() {
            return Err(Error::InconsistentAction(format!(
                "orbit `{}` gives {} twists for {} characters",
                o.label,
                o.twist.len(),
                characters.len()
            )));
        }
        for perm in &o.twist {
            let mut seen = vec![false; o.irreps.len()];
            if perm.len() != o.irreps.len()
                || perm.iter().any(|&j| j >= seen.len() || std::mem::replace(&mut seen[j], true))
            {
                return Err(Error::InconsistentAction(format!(
                    "twist on orbit `{}` is not a permutation of its irreducibles",
                    o.label
                )));
            }
        }
        columns.extend(o.irreps.iter().map(|v| (o.label.clone(), v.clone())));
    }
    let scalars: Vec<CycloScalar> = characters
        .iter()
        .map(|xi| {
            xi.value(g)
                .cloned()
                .ok_or_else(|| Error::UnknownGroupElement(format!("element {g} is outside the character domain")))
        })
        .collect::<Result<_>>()?;

    let n = columns.len();
    let mut rows: Vec<Vec<CycloScalar>> = Vec::new();
    for (o, &base) in gset.orbits.iter().zip(&offset) {
        for (perm, xi_g) in o.twist.iter().zip(&scalars) {
            for (j, &tj) in perm.iter().enumerate() {
                let mut row = vec![CycloScalar::zero(1); n];
                row[base + tj] = &row[base + tj] + &CycloScalar::from(1);
                row[base + j] = &row[base + j] - xi_g;
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let pivots = eliminate(&mut rows, n);
    let basis: Vec<(String, String)> = (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|c| columns[c].clone())
        .collect();
    Ok(QuotientBasis {
        rank: basis.len(),
        basis,
    })
}

/// Fraction-free row reduction, pivoting on the lowest column first.
/// Returns the pivot columns.
fn eliminate(rows: &mut [Vec<CycloScalar>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let a = rows[i][c].clone();
            let (top, rest) = rows.split_at_mut(i);
            for (x, y) in rest[0].iter_mut().zip(&top[r]) {
                *x = &(&pivot * x) - &(&a * y);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Partitions of `n` in decreasing lexicographic order, parts descending.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn transpose(partition: &[usize]) -> Vec<usize> {
    let longest = partition.first().copied().unwrap_or(0);
    (1..=longest)
        .map(|i| partition.iter().filter(|&&p| p >= i).count())
        .collect()
}

/// Compact label like `21` or `(10,2)` when a part exceeds 9.
pub fn partition_label(partition: &[usize]) -> String {
    if partition.iter().all(|&p| p < 10) {
        partition.iter().map(|p| p.to_string()).collect()
    } else {
        format!(
            "({})",
            partition.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(",")
        )
    }
}
