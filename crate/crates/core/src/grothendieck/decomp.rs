//! Equivariant decomposition data and its specializations: the trace at a
//! group element, and the forgetful image in the invariant Hecke algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::coxeter::{CoxeterSystem, Elem};
use crate::error::{Error, Result};
use crate::folding::{sigma_transitive, GroupAction, QuasiSplitEmbedding};
use crate::hecke::{HeckeAlgebra, KlCoords};
use crate::laurent::LaurentPoly;

use super::character::{character, CharacterKind, ClassFunction};

/// One summand family: a `G`-orbit of elements of `W'`, a grading shift and
/// a character of the stabilizer of the first listed element.
#[derive(Clone, Debug)]
pub struct DecompEntry {
    pub orbit: Vec<Elem>,
    pub shift: i32,
    pub character: ClassFunction,
}

/// Input form of an entry: orbit members as words in the ambient generators.
#[derive(Clone, Debug)]
pub struct EntrySpec {
    pub orbit: Vec<String>,
    pub shift: i32,
    pub character: CharacterKind,
}

#[derive(Clone, Debug)]
pub struct EquivDecomp {
    ambient: Arc<CoxeterSystem>,
    action: GroupAction,
    entries: Vec<DecompEntry>,
}

/// Setwise stabilizer in `G` of an element of `W'`.
pub fn element_stabilizer(ambient: &CoxeterSystem, action: &GroupAction, w: Elem) -> Vec<usize> {
    action
        .group()
        .elements()
        .filter(|&g| action.apply(ambient, g, w) == w)
        .collect()
}

impl EquivDecomp {
    /// Validates each orbit (one `G`-orbit, common length) and builds the
    /// characters on the computed stabilizers.
    pub fn new(ambient: Arc<CoxeterSystem>, action: GroupAction, specs: &[EntrySpec]) -> Result<Self> {
        let group = action.group();
        let mut entries = Vec::with_capacity(specs.len());
        for (k, spec) in specs.iter().enumerate() {
            let bad = |msg: String| Error::InvalidFixture(format!("entry {k}: {msg}"));
            let orbit: Vec<Elem> = spec
                .orbit
                .iter()
                .map(|w| ambient.parse_element(w))
                .collect::<Result<_>>()?;
            let Some(&rep) = orbit.first() else {
                return Err(bad("empty orbit".into()));
            };
            let listed: BTreeSet<Elem> = orbit.iter().copied().collect();
            if listed.len() != orbit.len() {
                return Err(bad("repeated orbit member".into()));
            }
            let generated: BTreeSet<Elem> = group.elements().map(|g| action.apply(&ambient, g, rep)).collect();
            if generated != listed {
                return Err(bad(format!(
                    "listed elements are not the G-orbit of `{}`",
                    ambient.name(rep)
                )));
            }
            let len = ambient.length(rep);
            if orbit.iter().any(|&w| ambient.length(w) != len) {
                return Err(bad("orbit members have different lengths".into()));
            }
            let stab = element_stabilizer(&ambient, &action, rep);
            let chi = character(&spec.character, group, &stab).map_err(|e| match e {
                Error::InvalidFixture(m) => bad(m),
                other => other,
            })?;
            entries.push(DecompEntry {
                orbit,
                shift: spec.shift,
                character: chi,
            });
        }
        Ok(Self {
            ambient,
            action,
            entries,
        })
    }

    pub fn ambient(&self) -> &Arc<CoxeterSystem> {
        &self.ambient
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn entries(&self) -> &[DecompEntry] {
        &self.entries
    }
}

fn integer_value(entry: &DecompEntry, g: usize) -> Result<BigInt> {
    let value = entry.character.value(g).expect("g stabilizes the orbit");
    value
        .as_integer()
        .ok_or_else(|| Error::InvalidFixture(format!("character value {value} is not an integer")))
}

/// `sum Tr_g(chi) v^shift`, keyed by orbit representative, over entries
/// whose orbit `g` fixes pointwise. `g` is a word in the group generators.
pub fn trace_specialize(decomp: &EquivDecomp, g: &str) -> Result<BTreeMap<Elem, LaurentPoly>> {
    let g = decomp.action.group().parse(g)?;
    let mut out: BTreeMap<Elem, LaurentPoly> = BTreeMap::new();
    for entry in &decomp.entries {
        if entry
            .orbit
            .iter()
            .any(|&w| decomp.action.apply(&decomp.ambient, g, w) != w)
        {
            continue;
        }
        let tr = integer_value(entry, g)?;
        *out.entry(entry.orbit[0]).or_default() += &LaurentPoly::monomial(tr, entry.shift);
    }
    out.retain(|_, p| !p.is_zero());
    Ok(out)
}

/// Dimension counts `chi(e) v^shift` on every orbit member: the image of the
/// decomposition in the `G`-invariant part of the split Hecke algebra.
pub fn forget_specialize(decomp: &EquivDecomp) -> BTreeMap<Elem, LaurentPoly> {
    let mut out: BTreeMap<Elem, LaurentPoly> = BTreeMap::new();
    for entry in &decomp.entries {
        let dim = integer_value(entry, decomp.action.group().identity()).expect("degrees are integers");
        let term = LaurentPoly::monomial(dim, entry.shift);
        for &w in &entry.orbit {
            *out.entry(w).or_default() += &term;
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Both sides of both comparisons made by [`compare_folded_product`].
#[derive(Clone, Debug)]
pub struct CompareReport {
    /// Forgetful image, keyed in `W'`.
    pub forget: KlCoords,
    /// `prod b_{phi(s_i)}` in the split Hecke algebra of `W'`.
    pub ambient_product: KlCoords,
    /// Trace at sigma, re-keyed in `W` through `phi^-1`.
    pub trace: KlCoords,
    /// `prod c_{s_i}` in the Hecke algebra of `(W, L)`.
    pub folded_product: KlCoords,
    /// Trace keys outside the image of `W`.
    pub stray: Vec<Elem>,
}

impl CompareReport {
    pub fn identity_side_passed(&self) -> bool {
        self.forget == self.ambient_product
    }

    pub fn sigma_side_passed(&self) -> bool {
        self.stray.is_empty() && self.trace == self.folded_product
    }

    pub fn passed(&self) -> bool {
        self.identity_side_passed() && self.sigma_side_passed()
    }

    /// Line-by-line differences, empty when both comparisons pass.
    pub fn diff(&self, emb: &QuasiSplitEmbedding) -> String {
        let mut out = String::new();
        let amb = emb.ambient();
        let folded = emb.folded();
        diff_into(&mut out, "identity", &self.forget, &self.ambient_product, |w| amb.name(w));
        diff_into(&mut out, "sigma", &self.trace, &self.folded_product, |w| folded.name(w));
        for &w in &self.stray {
            let _ = writeln!(out, "sigma\t{}\tfixed element outside W", amb.name(w));
        }
        out
    }
}

fn diff_into(out: &mut String, side: &str, got: &KlCoords, want: &KlCoords, name: impl Fn(Elem) -> String) {
    let keys: BTreeSet<Elem> = got.keys().chain(want.keys()).copied().collect();
    for k in keys {
        let a = got.get(&k).cloned().unwrap_or_default();
        let b = want.get(&k).cloned().unwrap_or_default();
        if a != b {
            let _ = writeln!(out, "{side}\t{}\tdecomposition {a}\tproduct {b}", name(k));
        }
    }
}

/// Computes both sides without judging them.
pub fn compare_sides(emb: &QuasiSplitEmbedding, word: &[usize], decomp: &EquivDecomp, sigma: &str) -> Result<CompareReport> {
    let ambient = HeckeAlgebra::split(Arc::clone(emb.ambient()));
    let folded = HeckeAlgebra::new(Arc::clone(emb.folded()), emb.weights().clone())?;
    let images: Vec<Elem> = word.iter().map(|&s| emb.images()[s]).collect();
    let mut trace = KlCoords::new();
    let mut stray = Vec::new();
    for (w, p) in trace_specialize(decomp, sigma)? {
        match emb.phi_inverse(w) {
            Some(x) => {
                trace.insert(x, p);
            }
            None => stray.push(w),
        }
    }
    Ok(CompareReport {
        forget: forget_specialize(decomp),
        ambient_product: ambient.kl_product_general(&images),
        trace,
        folded_product: folded.kl_product(word),
        stray,
    })
}

/// Checks that the forgetful image equals the product in `H(W')` and that
/// the trace at `sigma` equals the product in `H(W, L)`.
pub fn compare_folded_product(
    emb: &QuasiSplitEmbedding,
    word: &[usize],
    decomp: &EquivDecomp,
    sigma: &str,
) -> Result<CompareReport> {
    let action = emb
        .action()
        .ok_or_else(|| Error::VerificationFailed("embedding has no group action".into()))?;
    if !sigma_transitive(action, sigma)? {
        return Err(Error::VerificationFailed(format!(
            "`{sigma}` does not act transitively on every orbit"
        )));
    }
    let report = compare_sides(emb, word, decomp, sigma)?;
    if report.passed() {
        Ok(report)
    } else {
        Err(Error::VerificationFailed(report.diff(emb)))
    }
}
