//! Fixed-subset counts and `sl_2` tensor-power multiplicities.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Counts `c_i` of `sigma`-invariant `i`-subsets of an `l`-set, where
/// `sigma` has the given cycle type, and `sum c_i v^(2i - l)`.
///
/// An invariant subset is a union of cycles, so `sum c_i x^i` is the
/// product of `1 + x^c` over the cycle lengths `c`.
pub fn subset_fixed_counts(cycle_type: &[usize], l: usize) -> Result<(Vec<BigInt>, LaurentPoly)> {
    let total: usize = cycle_type.iter().sum();
    if total != l || cycle_type.contains(&0) {
        return Err(Error::PartitionMismatch {
            cycle_type: cycle_type.to_vec(),
            total: l,
        });
    }
    let mut counts = vec![BigInt::zero(); l + 1];
    counts[0] = BigInt::one();
    for &c in cycle_type {
        for i in (c..=l).rev() {
            let add = counts[i - c].clone();
            counts[i] += add;
        }
    }
    let poly = LaurentPoly::from_terms(
        counts
            .iter()
            .enumerate()
            .map(|(i, c)| (c.clone(), 2 * i as i32 - l as i32)),
    );
    Ok((counts, poly))
}

/// Multiplicities of the irreducibles `V_j` (highest weight `j`, dimension
/// `j + 1`) in `V_1^(x)n`, by `a(n, j) = a(n-1, j-1) + a(n-1, j+1)`.
pub fn sl2_tensor_decompose(n: usize) -> BTreeMap<usize, BigInt> {
    let mut a = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::zero(); a.len() + 1];
        for (j, c) in a.iter().enumerate() {
            next[j + 1] += c;
            if j > 0 {
                next[j - 1] += c;
            }
        }
        a = next;
    }
    a.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .collect()
}

/// `kappa_{k,m}` and `rho_{k,m}` for `1 <= k < m`, zero entries omitted.
///
/// `kappa_{k,m}` is the multiplicity of `V_{k-1}` in `V_1^(x)(m-1)`: the
/// coefficient of `b_{k_s}` in the product over the alternating word of
/// length `m` ending in `s`, for equal parameters. `rho` inverts the
/// unitriangular matrix `(kappa_{k,j})`, so that
/// `b_{w0} = prod_m + sum_k rho_{k,m} prod_k`.
pub fn dihedral_equal_coeffs(m: usize) -> (BTreeMap<usize, BigInt>, BTreeMap<usize, BigInt>) {
    assert!(m >= 1, "dihedral order must be positive");
    // kappa[j][k] for 1 <= k <= j <= m
    let kappa: Vec<BTreeMap<usize, BigInt>> = (0..=m)
        .map(|j| {
            if j == 0 {
                return BTreeMap::new();
            }
            sl2_tensor_decompose(j - 1)
                .into_iter()
                .map(|(hw, c)| (hw + 1, c))
                .collect()
        })
        .collect();
    // rho_inv[k] = coordinates of b_{k_s} in the products prod_j, j <= k.
    let mut inv: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); m + 1];
    for k in 1..=m {
        let mut row = BTreeMap::from([(k, BigInt::one())]);
        for (&j, c) in &kappa[k] {
            if j == k {
                continue;
            }
            for (&i, d) in &inv[j] {
                *row.entry(i).or_insert_with(BigInt::zero) -= c * d;
            }
        }
        row.retain(|_, c| !c.is_zero());
        inv[k] = row;
    }
    let strictly_lower = |map: &BTreeMap<usize, BigInt>| -> BTreeMap<usize, BigInt> {
        map.iter()
            .filter(|(&k, c)| k < m && !c.is_zero())
            .map(|(&k, c)| (k, c.clone()))
            .collect()
    };
    (strictly_lower(&kappa[m]), strictly_lower(&inv[m]))
}
