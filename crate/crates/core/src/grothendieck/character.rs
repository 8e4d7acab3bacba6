//! Class functions on subgroups of a permutation group.

use crate::error::{Error, Result};
use crate::group::PermGroup;

use super::cyclo::CycloScalar;

/// Named character constructors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterKind {
    Trivial,
    /// Sign of the permutation action on the underlying points.
    Sign,
    /// The 3-dimensional permutation representation of `S_3`, or its
    /// restriction to `Z/3`.
    Std3,
    Regular,
    /// Values on conjugacy class representatives, given as group words.
    Explicit(Vec<(String, CycloScalar)>),
}

impl CharacterKind {
    pub fn label(&self) -> &'static str {
        match self {
            CharacterKind::Trivial => "trivial",
            CharacterKind::Sign => "sign",
            CharacterKind::Std3 => "std3",
            CharacterKind::Regular => "regular",
            CharacterKind::Explicit(_) => "explicit",
        }
    }
}

/// A function on a subgroup `H` of `G`, constant on `H`-conjugacy classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    /// Sorted element ids of `H` in `G`.
    domain: Vec<usize>,
    values: Vec<CycloScalar>,
}

impl ClassFunction {
    pub fn domain(&self) -> &[usize] {
        &self.domain
    }

    pub fn value(&self, g: usize) -> Option<&CycloScalar> {
        self.domain.binary_search(&g).ok().map(|i| &self.values[i])
    }

    /// The value at the identity.
    pub fn degree(&self) -> &CycloScalar {
        &self.values[0]
    }
}

fn conjugate_within(group: &PermGroup, domain: &[usize], g: usize) -> Vec<usize> {
    let mut class: Vec<usize> = domain
        .iter()
        .map(|&h| group.mul(group.mul(h, g), group.inverse(h)))
        .collect();
    class.sort_unstable();
    class.dedup();
    class
}

/// Builds a named character on the subgroup `domain` of `group`. The
/// domain must be a subgroup containing the identity.
pub fn character(kind: &CharacterKind, group: &PermGroup, domain: &[usize]) -> Result<ClassFunction> {
    let mut domain = domain.to_vec();
    domain.sort_unstable();
    domain.dedup();
    if domain.first() != Some(&group.identity()) {
        return Err(Error::InvalidFixture("character domain must contain the identity".into()));
    }
    let order = domain.len() as i64;
    let values: Vec<CycloScalar> = match kind {
        CharacterKind::Trivial => domain.iter().map(|_| CycloScalar::from(1)).collect(),
        CharacterKind::Sign => domain.iter().map(|&g| CycloScalar::from(group.sign(g) as i64)).collect(),
        CharacterKind::Regular => domain
            .iter()
            .map(|&g| CycloScalar::from(if g == group.identity() { order } else { 0 }))
            .collect(),
        CharacterKind::Std3 => {
            let abelian = domain
                .iter()
                .all(|&a| domain.iter().all(|&b| group.mul(a, b) == group.mul(b, a)));
            let is_s3 = order == 6 && !abelian;
            if !(is_s3 || order == 3) {
                return Err(Error::KindUnavailable(format!(
                    "std3 needs S3 or Z/3, got a group of order {order}"
                )));
            }
            domain
                .iter()
                .map(|&g| {
                    CycloScalar::from(match group.element_order(g) {
                        1 => 3,
                        2 => 1,
                        _ => 0,
                    })
                })
                .collect()
        }
        CharacterKind::Explicit(reps) => {
            let mut values: Vec<Option<CycloScalar>> = vec![None; domain.len()];
            for (word, value) in reps {
                let g = group.parse(word)?;
                if domain.binary_search(&g).is_err() {
                    return Err(Error::InvalidFixture(format!("`{word}` is not in the stabilizer")));
                }
                for h in conjugate_within(group, &domain, g) {
                    let slot = &mut values[domain.binary_search(&h).expect("domain is a subgroup")];
                    match slot {
                        Some(old) if old != value => {
                            return Err(Error::InvalidFixture(format!(
                                "conflicting values on the class of `{word}`"
                            )))
                        }
                        _ => *slot = Some(value.clone()),
                    }
                }
            }
            values
                .into_iter()
                .zip(&domain)
                .map(|(v, &g)| {
                    v.ok_or_else(|| {
                        Error::InvalidFixture(format!("no value given for the class of `{}`", group.name(g)))
                    })
                })
                .collect::<Result<_>>()?
        }
    };
    Ok(ClassFunction { domain, values })
}
