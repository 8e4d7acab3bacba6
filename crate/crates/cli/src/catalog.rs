//! Builtin Coxeter systems, group actions and weightings.

use foldkit::CoxeterMatrix;

use crate::error::{CliError, CliResult};

/// Names accepted by [`builtin_system`], besides `I2(m)` for `m >= 2` and
/// `×`-products of any of them.
pub const IRREDUCIBLE: &[&str] = &["A1", "A2", "A3", "A4", "A5", "B2", "B3", "D4", "G2", "H3"];

fn irreducible(name: &str) -> CliResult<CoxeterMatrix> {
    let name = name.trim();
    if let Some(m) = name.strip_prefix("I2(").and_then(|r| r.strip_suffix(')')) {
        let m: u32 = m
            .trim()
            .parse()
            .map_err(|_| CliError::input(format!("bad dihedral order in `{name}`")))?;
        if m < 2 {
            return Err(CliError::input(format!("`{name}` needs m >= 2")));
        }
        return Ok(CoxeterMatrix::dihedral(m));
    }
    Ok(match name {
        "A1" => CoxeterMatrix::type_a(1),
        "A2" => CoxeterMatrix::type_a(2),
        "A3" => CoxeterMatrix::type_a(3),
        "A4" => CoxeterMatrix::type_a(4),
        "A5" => CoxeterMatrix::type_a(5),
        "B2" => CoxeterMatrix::type_b(2),
        "B3" => CoxeterMatrix::type_b(3),
        "D4" => CoxeterMatrix::d4_star(),
        "G2" => CoxeterMatrix::dihedral(6),
        "H3" => CoxeterMatrix::type_h3(),
        other => return Err(CliError::input(format!("unknown builtin system `{other}`"))),
    })
}

/// Splits `A3×A3` (or `A3xA3`) into its factor names.
pub fn factor_names(name: &str) -> Vec<&str> {
    name.split(['×', 'x']).map(str::trim).collect()
}

/// Resolves a builtin name. Factors of a product whose generator names
/// clash are renamed `<name>_<i>` for the `i`-th factor (1-based).
pub fn builtin_system(name: &str) -> CliResult<CoxeterMatrix> {
    let factors: Vec<CoxeterMatrix> = factor_names(name)
        .into_iter()
        .map(irreducible)
        .collect::<CliResult<_>>()?;
    if factors.len() == 1 {
        return Ok(factors.into_iter().next().expect("one factor"));
    }
    let mut all: Vec<&String> = factors.iter().flat_map(|f| f.names()).collect();
    all.sort();
    let clash = all.windows(2).any(|w| w[0] == w[1]);
    let factors: Vec<CoxeterMatrix> = if clash {
        factors
            .iter()
            .enumerate()
            .map(|(i, f)| f.suffixed(&format!("_{}", i + 1)))
            .collect()
    } else {
        factors
    };
    Ok(CoxeterMatrix::product(&factors)?)
}

/// A group action given by generator permutations on generator indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltinAction {
    /// `(name, cycles)` with cycles over generator indices.
    pub generators: Vec<(String, Vec<Vec<usize>>)>,
    pub sigma: String,
}

fn factor_ranks(system: &str) -> CliResult<Vec<(String, usize)>> {
    factor_names(system)
        .into_iter()
        .map(|f| Ok((f.to_string(), irreducible(f)?.rank())))
        .collect()
}

/// Builtin actions, by name, on a builtin system (the system may have been
/// renamed afterwards; the action acts on generator positions).
///
/// - `trivial`: no generators, `sigma = e`.
/// - `flip`: reverses the generator order of an irreducible path diagram
///   (`A_n`, `I2(m)`, `B2`, `G2`).
/// - `rotate`: cycles the spokes of `D4`; on a product of identical
///   factors, cycles the factors.
/// - `rotate:k1,k2,..`: cycles consecutive groups of `k1`, `k2`, .. identical factors.
/// - `s3`: the full symmetric group on the spokes of `D4`, `sigma` the rotation.
/// - `klein`: on `F×F` for a path diagram `F`, swap of the factors (`a`) and
///   the flip of both (`b`).
pub fn builtin_action(system: &str, action: &str) -> CliResult<BuiltinAction> {
    let factors = factor_ranks(system)?;
    let single = |cycles: Vec<Vec<usize>>| BuiltinAction {
        generators: vec![("g".into(), cycles)],
        sigma: "g".into(),
    };
    let unsupported = || CliError::input(format!("builtin action `{action}` is not defined on `{system}`"));
    let flip_cycles = |offset: usize, rank: usize| -> Vec<Vec<usize>> {
        (0..rank / 2).map(|i| vec![offset + i, offset + rank - 1 - i]).collect()
    };
    let rotate_groups = |sizes: &[usize]| -> CliResult<BuiltinAction> {
        if sizes.iter().sum::<usize>() != factors.len() || sizes.contains(&0) {
            return Err(CliError::input(format!(
                "rotation groups {sizes:?} do not cover the {} factors of `{system}`",
                factors.len()
            )));
        }
        let mut offsets = Vec::new();
        let mut acc = 0;
        for (_, r) in &factors {
            offsets.push(acc);
            acc += r;
        }
        let mut cycles = Vec::new();
        let mut first = 0;
        for &k in sizes {
            let group = &factors[first..first + k];
            if group.iter().any(|f| f.0 != group[0].0) {
                return Err(CliError::input(format!("factors {group:?} are not identical")));
            }
            if k > 1 {
                for j in 0..group[0].1 {
                    cycles.push((first..first + k).map(|f| offsets[f] + j).collect());
                }
            }
            first += k;
        }
        Ok(single(cycles))
    };
    match action {
        "trivial" => Ok(BuiltinAction {
            generators: vec![],
            sigma: "e".into(),
        }),
        "flip" => {
            let [(name, rank)] = factors.as_slice() else {
                return Err(unsupported());
            };
            let path = name.starts_with('A') || name.starts_with("I2(") || name == "B2" || name == "G2";
            if !path || *rank < 2 {
                return Err(unsupported());
            }
            Ok(single(flip_cycles(0, *rank)))
        }
        "rotate" if factors.len() == 1 => {
            if factors[0].0 == "D4" {
                Ok(single(vec![vec![0, 1, 2]]))
            } else {
                Err(unsupported())
            }
        }
        "rotate" => rotate_groups(&[factors.len()]),
        "s3" if factors.len() == 1 && factors[0].0 == "D4" => Ok(BuiltinAction {
            generators: vec![("r".into(), vec![vec![0, 1, 2]]), ("f".into(), vec![vec![1, 2]])],
            sigma: "r".into(),
        }),
        "klein" => {
            let [(a, ra), (b, _)] = factors.as_slice() else {
                return Err(unsupported());
            };
            if a != b || !(a.starts_with('A') || a.starts_with("I2(")) {
                return Err(unsupported());
            }
            let swap = (0..*ra).map(|i| vec![i, ra + i]).collect();
            let mut flip = flip_cycles(0, *ra);
            flip.extend(flip_cycles(*ra, *ra));
            Ok(BuiltinAction {
                generators: vec![("a".into(), swap), ("b".into(), flip)],
                sigma: "a".into(),
            })
        }
        other => {
            if let Some(list) = other.strip_prefix("rotate:") {
                let sizes: Vec<usize> = list
                    .split(',')
                    .map(|k| k.trim().parse())
                    .collect::<Result<_, _>>()
                    .map_err(|_| CliError::input(format!("bad rotation groups `{list}`")))?;
                return rotate_groups(&sizes);
            }
            Err(unsupported())
        }
    }
}

/// A shipped quasi-split example: builtin system and builtin action.
#[derive(Clone, Copy, Debug)]
pub struct ShippedExample {
    pub system: &'static str,
    pub action: &'static str,
}

/// Every quasi-split example exercised by the folding and quadratic suites.
pub fn shipped_examples() -> Vec<ShippedExample> {
    let ex = |system, action| ShippedExample { system, action };
    let mut out = vec![
        ex("A1×A1", "rotate"),
        ex("A1×A1×A1", "rotate"),
        ex("A1×A1×A1×A1", "rotate"),
        ex("A1×A1×A1×A1", "rotate:2,2"),
        ex("A1×A1×A1", "rotate:1,2"),
        ex("A1×A1", "rotate:1,1"),
        ex("A2", "flip"),
        ex("A3", "flip"),
        ex("A4", "flip"),
        ex("A5", "flip"),
        ex("B2", "trivial"),
        ex("D4", "rotate"),
        ex("D4", "s3"),
        ex("A3×A3", "klein"),
        ex("A3×A3", "rotate"),
        ex("A3", "trivial"),
    ];
    for m in [
        "I2(2)", "I2(3)", "I2(4)", "I2(5)", "I2(6)", "I2(7)", "I2(8)",
    ] {
        out.push(ex(m, "flip"));
    }
    for m in ["I2(3)×I2(3)", "I2(4)×I2(4)", "I2(5)×I2(5)"] {
        out.push(ex(m, "rotate"));
    }
    out
}

/// Systems of the KL property suite: every builtin of order at most 600
/// that the suite enumerates, with its shipped weightings (split first).
pub fn kl_catalog() -> Vec<(&'static str, Vec<Vec<i32>>)> {
    vec![
        ("A1", vec![vec![1], vec![2]]),
        ("A2", vec![vec![1, 1]]),
        ("A3", vec![vec![1, 1, 1]]),
        ("A4", vec![vec![1, 1, 1, 1]]),
        ("B2", vec![vec![1, 1], vec![1, 2], vec![2, 1], vec![2, 4], vec![3, 2]]),
        ("B3", vec![vec![1, 1, 1], vec![1, 1, 2], vec![2, 2, 1]]),
        ("D4", vec![vec![1, 1, 1, 1]]),
        ("G2", vec![vec![1, 1], vec![1, 3], vec![3, 1], vec![2, 6]]),
        ("H3", vec![vec![1, 1, 1]]),
        ("I2(2)", vec![vec![1, 1], vec![1, 2]]),
        ("I2(3)", vec![vec![1, 1], vec![2, 2]]),
        ("I2(4)", vec![vec![1, 1], vec![1, 2], vec![2, 1]]),
        ("I2(5)", vec![vec![1, 1]]),
        ("I2(6)", vec![vec![1, 1], vec![1, 3], vec![1, 2]]),
        ("I2(7)", vec![vec![1, 1]]),
        ("I2(8)", vec![vec![1, 1], vec![2, 4], vec![1, 2]]),
        ("A1×A1", vec![vec![1, 1], vec![1, 2]]),
        ("A1×A2", vec![vec![1, 1, 1], vec![2, 1, 1]]),
        ("A3×A3", vec![vec![1, 1, 1, 1, 1, 1], vec![1, 1, 1, 2, 2, 2]]),
        ("A2×B2", vec![vec![1, 1, 1, 1], vec![1, 1, 1, 2]]),
        ("I2(5)×I2(5)", vec![vec![1, 1, 1, 1]]),
    ]
}
