//! JSON input documents: systems, actions and decomposition fixtures.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use foldkit::folding::{fold, GroupAction, QuasiSplitEmbedding};
use foldkit::grothendieck::{CharacterKind, CycloScalar, EntrySpec, EquivDecomp};
use foldkit::hecke::WeightFunction;
use foldkit::{CoxeterMatrix, CoxeterSystem};
use serde::{Deserialize, Serialize};

use crate::catalog::{builtin_action, builtin_system};
use crate::error::{CliError, CliResult};

/// Default enumeration cap for systems given on the command line.
pub const DEFAULT_CAP: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SystemSpec {
    Builtin(String),
    Named {
        builtin: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        names: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<i32>>,
    },
    Inline {
        generators: Vec<String>,
        coxeter_matrix: Vec<Vec<u32>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        weights: Option<Vec<i32>>,
    },
}

/// A resolved system: its matrix, optional weights, and the builtin name
/// it came from (needed to resolve builtin actions).
#[derive(Clone, Debug)]
pub struct ResolvedSystem {
    pub matrix: CoxeterMatrix,
    pub weights: Option<Vec<i32>>,
    pub builtin: Option<String>,
}

impl ResolvedSystem {
    pub fn weight_function(&self) -> CliResult<WeightFunction> {
        Ok(match &self.weights {
            Some(w) => WeightFunction::new(&self.matrix, w.clone())?,
            None => WeightFunction::split(&self.matrix),
        })
    }

    pub fn enumerate(&self, cap: usize) -> CliResult<Arc<CoxeterSystem>> {
        Ok(Arc::new(CoxeterSystem::with_cap(self.matrix.clone(), cap)?))
    }
}

impl SystemSpec {
    pub fn resolve(&self) -> CliResult<ResolvedSystem> {
        Ok(match self {
            SystemSpec::Builtin(name) => ResolvedSystem {
                matrix: builtin_system(name)?,
                weights: None,
                builtin: Some(name.clone()),
            },
            SystemSpec::Named { builtin, names, weights } => {
                let mut matrix = builtin_system(builtin)?;
                if let Some(names) = names {
                    matrix = matrix.renamed(names)?;
                }
                ResolvedSystem {
                    matrix,
                    weights: weights.clone(),
                    builtin: Some(builtin.clone()),
                }
            }
            SystemSpec::Inline {
                generators,
                coxeter_matrix,
                weights,
            } => ResolvedSystem {
                matrix: CoxeterMatrix::new(generators.clone(), coxeter_matrix.clone())?,
                weights: weights.clone(),
                builtin: None,
            },
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermSpec {
    pub name: String,
    /// Cycles of generator names.
    pub cycles: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionSpec {
    Builtin(String),
    Explicit {
        generators: Vec<PermSpec>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        sigma: Option<String>,
    },
}

/// A resolved action with its distinguished element.
#[derive(Clone, Debug)]
pub struct ResolvedAction {
    pub action: GroupAction,
    pub sigma: String,
}

impl ActionSpec {
    pub fn resolve(&self, system: &ResolvedSystem) -> CliResult<ResolvedAction> {
        let matrix = &system.matrix;
        let (gens, sigma): (Vec<PermSpec>, String) = match self {
            ActionSpec::Builtin(name) => {
                let Some(builtin) = &system.builtin else {
                    return Err(CliError::input(format!(
                        "builtin action `{name}` needs a builtin system"
                    )));
                };
                let b = builtin_action(builtin, name)?;
                let gens = b
                    .generators
                    .into_iter()
                    .map(|(name, cycles)| PermSpec {
                        name,
                        cycles: cycles
                            .into_iter()
                            .map(|c| c.into_iter().map(|i| matrix.name(i).to_string()).collect())
                            .collect(),
                    })
                    .collect();
                (gens, b.sigma)
            }
            ActionSpec::Explicit { generators, sigma } => {
                let sigma = sigma
                    .clone()
                    .or_else(|| generators.first().map(|g| g.name.clone()))
                    .unwrap_or_else(|| "e".into());
                (generators.clone(), sigma)
            }
        };
        let refs: Vec<(&str, Vec<Vec<&str>>)> = gens
            .iter()
            .map(|g| {
                (
                    g.name.as_str(),
                    g.cycles.iter().map(|c| c.iter().map(String::as_str).collect()).collect(),
                )
            })
            .collect();
        let action = GroupAction::from_cycles(matrix, &refs)?;
        action.group().parse(&sigma)?;
        Ok(ResolvedAction { action, sigma })
    }
}

/// Builds the quasi-split folding defined by the orbits of an action.
pub fn fold_by_action(
    system: &ResolvedSystem,
    action: &ResolvedAction,
    cap: usize,
) -> CliResult<QuasiSplitEmbedding> {
    let ambient = system.enumerate(cap)?;
    let partition = action.action.orbits(&system.matrix);
    Ok(fold(ambient, partition, Some(action.action.clone()))?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CharacterSpec {
    Named(String),
    /// Integer values on conjugacy class representatives (group words).
    Explicit { explicit: BTreeMap<String, i64> },
}

impl CharacterSpec {
    pub fn kind(&self) -> CliResult<CharacterKind> {
        Ok(match self {
            CharacterSpec::Named(n) => match n.as_str() {
                "trivial" => CharacterKind::Trivial,
                "sign" => CharacterKind::Sign,
                "std3" => CharacterKind::Std3,
                "regular" => CharacterKind::Regular,
                other => return Err(CliError::input(format!("unknown character `{other}`"))),
            },
            CharacterSpec::Explicit { explicit } => CharacterKind::Explicit(
                explicit
                    .iter()
                    .map(|(g, v)| (g.clone(), CycloScalar::from(*v)))
                    .collect(),
            ),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryDoc {
    /// Orbit members as words in the ambient generators.
    pub orbit: Vec<String>,
    pub shift: i32,
    pub character: CharacterSpec,
}

/// A machine-readable equivariant decomposition of a product of KL basis
/// elements of the folded system.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureDoc {
    pub system: SystemSpec,
    pub action: ActionSpec,
    /// Word in the (renamed) folded generators.
    pub product_word: String,
    /// Renames folded generators, keyed by their default names (the least
    /// member of each orbit).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub folded_names: Option<BTreeMap<String, String>>,
    pub entries: Vec<EntryDoc>,
}

/// A fixture resolved against the core types.
pub struct Fixture {
    pub embedding: QuasiSplitEmbedding,
    pub decomposition: EquivDecomp,
    pub word: Vec<usize>,
    pub sigma: String,
}

impl FixtureDoc {
    pub fn resolve(&self, cap: usize) -> CliResult<Fixture> {
        let system = self.system.resolve()?;
        let action = self.action.resolve(&system)?;
        let ambient = system.enumerate(cap)?;
        let mut partition = action.action.orbits(&system.matrix);
        if let Some(map) = &self.folded_names {
            for key in map.keys() {
                if !partition.names().contains(key) {
                    return Err(CliError::input(format!("folded_names: `{key}` is not a folded generator")));
                }
            }
            let names: Vec<String> = partition
                .names()
                .iter()
                .map(|n| map.get(n).cloned().unwrap_or_else(|| n.clone()))
                .collect();
            partition = partition.with_names(&names)?;
        }
        let specs: Vec<EntrySpec> = self
            .entries
            .iter()
            .map(|e| {
                Ok(EntrySpec {
                    orbit: e.orbit.clone(),
                    shift: e.shift,
                    character: e.character.kind()?,
                })
            })
            .collect::<CliResult<_>>()?;
        let decomposition = EquivDecomp::new(Arc::clone(&ambient), action.action.clone(), &specs)?;
        let embedding = fold(ambient, partition, Some(action.action.clone()))?;
        let word = embedding.folded().parse_word(&self.product_word)?;
        Ok(Fixture {
            embedding,
            decomposition,
            word,
            sigma: action.sigma,
        })
    }
}

/// Fixtures shipped with the tool, addressable by name.
pub const SHIPPED_FIXTURES: &[(&str, &str)] = &[
    ("a1a1", include_str!("../fixtures/a1a1.json")),
    ("a3b2", include_str!("../fixtures/a3b2.json")),
    ("a4b2", include_str!("../fixtures/a4b2.json")),
    ("a4b2_completed", include_str!("../fixtures/a4b2_completed.json")),
    ("d4g2", include_str!("../fixtures/d4g2.json")),
];

pub fn parse_json<T: for<'de> Deserialize<'de>>(text: &str, origin: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|source| CliError::Json {
        path: origin.to_string(),
        source,
    })
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// A shipped fixture name, or a path to a fixture JSON file.
pub fn load_fixture(arg: &str) -> CliResult<FixtureDoc> {
    if let Some((_, text)) = SHIPPED_FIXTURES.iter().find(|(n, _)| *n == arg) {
        return parse_json(text, arg);
    }
    parse_json(&read(Path::new(arg))?, arg)
}

/// A builtin name, or a path to a `.json` system document.
pub fn load_system(arg: &str) -> CliResult<SystemSpec> {
    if arg.ends_with(".json") {
        parse_json(&read(Path::new(arg))?, arg)
    } else {
        Ok(SystemSpec::Builtin(arg.to_string()))
    }
}

/// A builtin action name, or a path to a `.json` action document.
pub fn load_action(arg: &str) -> CliResult<ActionSpec> {
    if arg.ends_with(".json") {
        parse_json(&read(Path::new(arg))?, arg)
    } else {
        Ok(ActionSpec::Builtin(arg.to_string()))
    }
}

/// Parses `--weights`: comma-separated integers in generator order, or
/// `name=value` pairs.
pub fn parse_weights(matrix: &CoxeterMatrix, text: &str) -> CliResult<Vec<i32>> {
    let parts: Vec<&str> = text.split(',').map(str::trim).filter(|p| !p.is_empty()).collect();
    if parts.iter().all(|p| p.contains('=')) && !parts.is_empty() {
        let mut values = vec![None; matrix.rank()];
        for p in parts {
            let (name, value) = p.split_once('=').expect("checked");
            let i = matrix
                .index_of(name.trim())
                .ok_or_else(|| CliError::input(format!("unknown generator `{}` in --weights", name.trim())))?;
            values[i] = Some(
                value
                    .trim()
                    .parse()
                    .map_err(|_| CliError::input(format!("bad weight `{value}`")))?,
            );
        }
        values
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| CliError::input(format!("no weight for `{}`", matrix.name(i)))))
            .collect()
    } else {
        parts
            .iter()
            .map(|p| p.parse().map_err(|_| CliError::input(format!("bad weight `{p}`"))))
            .collect()
    }
}
