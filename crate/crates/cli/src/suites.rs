//! Verification suites. Each returns one [`Case`] per check; a suite passes
//! iff all of its cases pass.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use foldkit::folding::{
    classify_orbit_pair, fold, sigma_transitive, steinberg_check, FinitaryPartition, OrbitPairClass, PairCase,
    QuasiSplitEmbedding,
};
use foldkit::grothendieck::quotient::{partition_label, partitions, transpose};
use foldkit::grothendieck::{
    character, compare_folded_product, dihedral_equal_coeffs, forget_specialize, subset_fixed_counts,
    trace_specialize, weighted_quotient, CharacterKind, ClassFunction, CycloScalar, EntrySpec, EquivDecomp,
    GSetDatum, GSetOrbit,
};
use foldkit::group::PermGroup;
use foldkit::hecke::{poincare_balanced, HeckeAlgebra, HeckeElt, KlCoords, WeightFunction};
use foldkit::{CoxeterMatrix, CoxeterSystem, Elem, LaurentPoly};

use crate::catalog::{builtin_system, kl_catalog, shipped_examples};
use crate::error::CliResult;
use crate::input::{fold_by_action, load_fixture, ActionSpec, SystemSpec, DEFAULT_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub name: String,
    pub passed: bool,
    /// Mismatches, or a short summary when the case passes.
    pub detail: String,
}

impl Case {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: CliResult<Case>) -> Case {
        let name = name.into();
        r.unwrap_or_else(|e| Case::new(name, false, format!("error: {e}")))
    }
}

#[derive(Clone, Debug)]
pub struct SuiteResult {
    pub suite: &'static str,
    pub criterion: u8,
    pub title: &'static str,
    pub cases: Vec<Case>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.passed)
    }
}

/// Suite names in criterion order.
pub const SUITES: &[&str] = &["dihedral", "compare", "trace", "quadratic", "steinberg", "kl", "wgg", "sigma"];

pub fn run_suite(name: &str) -> Option<SuiteResult> {
    Some(match name {
        "dihedral" => dihedral(),
        "compare" => compare(),
        "trace" => trace(),
        "quadratic" => quadratic(),
        "steinberg" => steinberg(),
        "kl" => kl(),
        "wgg" => wgg(),
        "sigma" => sigma(),
        _ => return None,
    })
}

// ---------------------------------------------------------------- helpers

fn sym(k: i32) -> LaurentPoly {
    LaurentPoly::sym(k)
}

fn lp(text: &str) -> LaurentPoly {
    text.parse().expect("suite polynomial literal")
}

fn algebra(matrix: CoxeterMatrix, weights: Vec<i32>) -> HeckeAlgebra {
    let w = WeightFunction::new(&matrix, weights).expect("suite weights are valid");
    let sys = Arc::new(CoxeterSystem::new(matrix).expect("suite systems are finite"));
    HeckeAlgebra::new(sys, w).expect("weights match")
}

/// Alternating word of length `len` in generators `0, 1`, ending in `last`.
fn alternating(len: usize, last: usize) -> Vec<usize> {
    (0..len).map(|i| if (len - 1 - i) % 2 == 0 { last } else { 1 - last }).collect()
}

fn coords_diff(name: impl Fn(Elem) -> String, got: &KlCoords, want: &KlCoords) -> String {
    let keys: BTreeSet<Elem> = got.keys().chain(want.keys()).copied().collect();
    let mut out = String::new();
    for k in keys {
        let a = got.get(&k).cloned().unwrap_or_default();
        let b = want.get(&k).cloned().unwrap_or_default();
        if a != b {
            let _ = write!(out, "{}: got {a}, expected {b}; ", name(k));
        }
    }
    out
}

fn expect_coords(case: impl Into<String>, sys: &CoxeterSystem, got: &KlCoords, want: &KlCoords) -> Case {
    let diff = coords_diff(|w| sys.name(w), got, want);
    let summary = if diff.is_empty() {
        format!("{} terms", want.len())
    } else {
        diff
    };
    Case::new(case, got == want, summary)
}

fn expect_elt(case: impl Into<String>, sys: &CoxeterSystem, got: &HeckeElt, want: &HeckeElt) -> Case {
    expect_coords(case, sys, got.coords(), want.coords())
}

// ---------------------------------------------------------------- 1. dihedral

/// Two descriptions of `b_{w0}` in rank-two Hecke algebras.
pub fn dihedral() -> SuiteResult {
    let mut cases = Vec::new();
    for (k, l) in [(1, 1), (1, 2), (2, 3)] {
        let h = algebra(CoxeterMatrix::dihedral(2), vec![k, l]);
        let sys = h.system();
        let w0 = BTreeMap::from([(sys.longest(), LaurentPoly::one())]);
        cases.push(expect_coords(format!("m=2 L=({k},{l}) b_s b_t"), sys, &h.kl_product(&[0, 1]), &w0));
        cases.push(expect_coords(format!("m=2 L=({k},{l}) b_t b_s"), sys, &h.kl_product(&[1, 0]), &w0));
    }
    // (L(s), L(t)) and the parameter k of the identities.
    let rank_two = |m: u32, ls: i32, lt: i32, k: i32, cases: &mut Vec<Case>| {
        let h = algebra(CoxeterMatrix::dihedral(m), vec![ls, lt]);
        let sys = h.system();
        let w0 = h.kl_element(sys.longest()).clone();
        for first in [0usize, 1] {
            let order = if first == 0 { "st" } else { "ts" };
            let word = |len: usize| alternating(len, 1 - first);
            let el = |len: usize| sys.eval(&word(len));
            let label = format!("m={m} L=({ls},{lt}) {order}");
            let (lhs, alt) = match m {
                4 => {
                    let mut lhs = h.bott_samelson(&word(4));
                    lhs.add_scaled(&h.bott_samelson(&word(2)), &-sym(k));
                    let alt: KlCoords = [(el(4), LaurentPoly::one()), (el(2), sym(k))].into();
                    (lhs, alt)
                }
                6 => {
                    let two = &sym(2 * k) + &sym(2 * k);
                    let three = &sym(4 * k) + &LaurentPoly::one();
                    let mut lhs = h.bott_samelson(&word(6));
                    lhs.add_scaled(&h.bott_samelson(&word(4)), &-two.clone());
                    lhs.add_scaled(&h.bott_samelson(&word(2)), &three);
                    let alt_const = &sym(4 * k) + &LaurentPoly::constant(3);
                    let alt: KlCoords = [(el(6), LaurentPoly::one()), (el(4), two), (el(2), alt_const)].into();
                    (lhs, alt)
                }
                _ => unreachable!("only m = 4, 6 have unequal identities"),
            };
            cases.push(expect_elt(format!("{label} b_w0"), sys, &lhs, &w0));
            cases.push(expect_coords(format!("{label} alt"), sys, &h.kl_product(&word(m as usize)), &alt));
        }
    };
    for (ls, lt) in [(1, 2), (2, 4), (3, 2)] {
        let k = if lt == 2 * ls { ls } else { lt / 2 };
        rank_two(4, ls, lt, k, &mut cases);
    }
    for (ls, lt) in [(1, 3), (2, 6)] {
        rank_two(6, ls, lt, ls, &mut cases);
    }
    for m in 2..=6u32 {
        let (kappa, rho) = dihedral_equal_coeffs(m as usize);
        for l in [1, 2] {
            let h = algebra(CoxeterMatrix::dihedral(m), vec![l, l]);
            let sys = h.system();
            for last in [0usize, 1] {
                let label = format!("m={m} L={l} ending in {}", sys.matrix().name(last));
                let mut total = h.bott_samelson(&alternating(m as usize, last));
                for (&k, c) in &rho {
                    total.add_scaled(&h.bott_samelson(&alternating(k, last)), &LaurentPoly::constant(c.clone()));
                }
                cases.push(expect_elt(format!("{label} rho"), sys, &total, h.kl_element(sys.longest())));
                let mut want: KlCoords = kappa
                    .iter()
                    .map(|(&k, c)| (sys.eval(&alternating(k, last)), LaurentPoly::constant(c.clone())))
                    .collect();
                want.insert(sys.longest(), LaurentPoly::one());
                cases.push(expect_coords(
                    format!("{label} kappa"),
                    sys,
                    &h.kl_product(&alternating(m as usize, last)),
                    &want,
                ));
            }
        }
    }
    SuiteResult {
        suite: "dihedral",
        criterion: 1,
        title: "dihedral presentation identities",
        cases,
    }
}

// ---------------------------------------------------------------- 2. compare

fn product_of(sys: &CoxeterSystem, names: &[String]) -> CliResult<Elem> {
    Ok(sys.parse_element(&names.join(" "))?)
}

fn system_of(matrix: CoxeterMatrix) -> Arc<CoxeterSystem> {
    Arc::new(CoxeterSystem::new(matrix).expect("suite systems are finite"))
}

/// Expected expansion given as `(word, polynomial)` pairs.
fn expansion(sys: &CoxeterSystem, terms: &[(&str, &str)]) -> CliResult<KlCoords> {
    let mut out = KlCoords::new();
    for (w, p) in terms {
        *out.entry(sys.parse_element(w)?).or_default() += &lp(p);
    }
    Ok(out)
}

fn compare_case(
    name: String,
    sys: &Arc<CoxeterSystem>,
    factors: &[&str],
    terms: &[(&str, &str)],
) -> Case {
    Case::from_result(
        name.clone(),
        (|| {
            let h = HeckeAlgebra::split(Arc::clone(sys));
            let factors: Vec<Elem> = factors
                .iter()
                .map(|w| sys.parse_element(w))
                .collect::<Result<_, _>>()?;
            let want = expansion(sys, terms)?;
            Ok(expect_coords(name, sys, &h.kl_product_general(&factors), &want))
        })(),
    )
}

/// Products of KL basis elements of images of folded generators, against
/// stated expansions.
pub fn compare() -> SuiteResult {
    let mut cases = Vec::new();
    let a1 = CoxeterMatrix::type_a(1);
    let a1a1 = CoxeterMatrix::product(&[a1.renamed(&["t"]).unwrap(), a1.renamed(&["u"]).unwrap()]).unwrap();
    cases.push(compare_case(
        "A1×A1 b_s b_s".into(),
        &system_of(a1a1),
        &["t u", "t u"],
        &[("t u", "v^2 + 2 + v^-2")],
    ));

    let mut longest: Vec<(String, CoxeterMatrix)> = ["A2", "B2", "A3"]
        .iter()
        .map(|n| (n.to_string(), builtin_system(n).unwrap()))
        .collect();
    longest.extend((2..=8).map(|m| (format!("I2({m})"), CoxeterMatrix::dihedral(m))));
    for (name, m) in longest {
        let sys = system_of(m);
        let h = HeckeAlgebra::split(Arc::clone(&sys));
        let w0 = sys.longest();
        let want = BTreeMap::from([(w0, poincare_balanced(&sys))]);
        cases.push(expect_coords(
            format!("{name} b_w0 b_w0 = [W'] b_w0"),
            &sys,
            &h.kl_product_general(&[w0, w0]),
            &want,
        ));
    }

    for k in 1..=3 {
        for l in 1..=3 {
            let names: Vec<String> = (1..=k + l).map(|i| format!("a{i}")).collect();
            let factors: Vec<CoxeterMatrix> = names.iter().map(|n| a1.renamed(&[n]).unwrap()).collect();
            let sys = system_of(CoxeterMatrix::product(&factors).unwrap());
            let s = names[..k].join(" ");
            let t = names[k..].join(" ");
            let st = format!("{s} {t}");
            cases.push(compare_case(
                format!("A1^{k}×A1^{l} b_s b_t = b_st"),
                &sys,
                &[&s, &t],
                &[(&st, "1")],
            ));
        }
    }

    for m in 2..=5u32 {
        let (kappa, _) = dihedral_equal_coeffs(m as usize);
        for k in 1..=2usize {
            let parts: Vec<CoxeterMatrix> = (1..=k)
                .map(|i| CoxeterMatrix::dihedral(m).suffixed(&i.to_string()))
                .collect();
            let sys = system_of(CoxeterMatrix::product(&parts).unwrap());
            let gen = |g: &str| -> Vec<String> { (1..=k).map(|i| format!("{g}{i}")).collect() };
            let r: CliResult<Case> = (|| {
                let s = product_of(&sys, &gen("s"))?;
                let t = product_of(&sys, &gen("t"))?;
                let image = |len: usize| -> Vec<Elem> {
                    alternating(len, 0).into_iter().map(|g| if g == 0 { s } else { t }).collect()
                };
                let fold_elem = |len: usize| image(len).into_iter().fold(Elem::IDENTITY, |a, b| sys.multiply(a, b));
                let h = HeckeAlgebra::split(Arc::clone(&sys));
                let mut want: KlCoords = kappa
                    .iter()
                    .map(|(&j, c)| (fold_elem(j), LaurentPoly::constant(c.clone())))
                    .collect();
                want.insert(sys.longest(), LaurentPoly::one());
                Ok(expect_coords(
                    format!("I2({m})^{k} alternating product"),
                    &sys,
                    &h.kl_product_general(&image(m as usize)),
                    &want,
                ))
            })();
            cases.push(Case::from_result(format!("I2({m})^{k} alternating product"), r));
        }
    }

    let a3 = CoxeterMatrix::type_a(3).renamed(&["x", "y", "z"]).unwrap();
    cases.push(compare_case(
        "A3 ⊃ B2".into(),
        &system_of(a3),
        &["y", "x z", "y", "x z"],
        &[("y x z y x z", "1"), ("y x y z", "1"), ("y z y x", "1"), ("y x z", "v + v^-1")],
    ));

    let w234 = "s2 s3 s4 s2 s3 s2";
    let w123 = "s1 s2 s3 s1 s2 s1";
    let (a, b, c, d) = (
        format!("s2 s1 {w234}"),
        format!("s3 s4 {w123}"),
        format!("s1 {w234}"),
        format!("s4 {w123}"),
    );
    cases.push(compare_case(
        "A4 ⊃ B2".into(),
        &system_of(CoxeterMatrix::type_a(4)),
        &["s1 s4", "s2 s3 s2", "s1 s4", "s2 s3 s2"],
        &[
            ("s1 s4 s2 s3 s2 s1 s4 s2 s3 s2", "1"),
            (&a, "1"),
            (&b, "1"),
            (&c, "v + v^-1"),
            (&d, "v + v^-1"),
            ("s1 s4 s2 s3 s2", "v + v^-1"),
        ],
    ));

    let t = "u1 u2 u3";
    let st = format!("v {t}");
    let stst = format!("{st} {st}");
    let ststst = format!("{stst} {st}");
    let pair = |p: &str| format!("{p} {stst}");
    let vpair = |p: &str| format!("v {p} {st}");
    let terms: Vec<(String, &str)> = vec![
        (ststst.clone(), "1"),
        (pair("u1 u2"), "1"),
        (pair("u1 u3"), "1"),
        (pair("u2 u3"), "1"),
        (pair("u1"), "v + v^-1"),
        (pair("u2"), "v + v^-1"),
        (pair("u3"), "v + v^-1"),
        (stst.clone(), "2v^2 + 6 + 2v^-2"),
        (vpair("u1 u2"), "v + v^-1"),
        (vpair("u1 u3"), "v + v^-1"),
        (vpair("u2 u3"), "v + v^-1"),
        // the constant is written as 3 + 9
        (st.clone(), "v^4 + 6v^2 + 12 + 6v^-2 + v^-4"),
    ];
    let refs: Vec<(&str, &str)> = terms.iter().map(|(w, p)| (w.as_str(), *p)).collect();
    cases.push(compare_case(
        "D4 ⊃ G2".into(),
        &system_of(CoxeterMatrix::d4_star()),
        &["v", t, "v", t, "v", t],
        &refs,
    ));

    SuiteResult {
        suite: "compare",
        criterion: 2,
        title: "split products of folded generators",
        cases,
    }
}

// ---------------------------------------------------------------- 3. trace

pub const TRACE_FIXTURES: &[&str] = &["a1a1", "a3b2", "a4b2", "d4g2"];

pub fn check_fixture(name: &str) -> Case {
    let r: CliResult<Case> = (|| {
        let f = load_fixture(name)?.resolve(DEFAULT_CAP)?;
        Ok(match compare_folded_product(&f.embedding, &f.word, &f.decomposition, &f.sigma) {
            Ok(report) => Case::new(
                name,
                true,
                format!("{} identity terms, {} sigma terms", report.forget.len(), report.trace.len()),
            ),
            Err(e) => Case::new(name, false, e.to_string()),
        })
    })();
    Case::from_result(name, r)
}

/// Decomposition fixtures against both Hecke products.
pub fn trace() -> SuiteResult {
    SuiteResult {
        suite: "trace",
        criterion: 3,
        title: "trace specialization of decomposition fixtures",
        cases: TRACE_FIXTURES.iter().map(|n| check_fixture(n)).collect(),
    }
}

// ---------------------------------------------------------------- 4. quadratic

fn shipped_embedding(system: &str, action: &str) -> CliResult<QuasiSplitEmbedding> {
    let sys = SystemSpec::Builtin(system.into()).resolve()?;
    let act = ActionSpec::Builtin(action.into()).resolve(&sys)?;
    fold_by_action(&sys, &act, DEFAULT_CAP)
}

/// Fixed-subset counts and the quadratic relation in folded algebras.
pub fn quadratic() -> SuiteResult {
    let mut cases = Vec::new();
    let count = |cycle: &[usize], l: usize| subset_fixed_counts(cycle, l).map(|(_, p)| p);
    let transitive = (1..=8).all(|l| count(&[l], l).ok() == Some(sym(l as i32)));
    cases.push(Case::new("single cycle, L <= 8", transitive, "v^L + v^-L"));
    for (cycle, l, want) in [
        (vec![2, 1], 3, "v^3 + v + v^-1 + v^-3"),
        (vec![2, 2], 4, "v^4 + 2 + v^-4"),
    ] {
        let got = count(&cycle, l);
        let ok = got.as_ref().ok() == Some(&lp(want));
        let detail = match got {
            Ok(p) => p.to_string(),
            Err(e) => e.to_string(),
        };
        cases.push(Case::new(format!("cycle type {cycle:?}"), ok, detail));
    }
    for ex in shipped_examples() {
        let name = format!("{} / {}", ex.system, ex.action);
        let r: CliResult<Case> = (|| {
            let emb = shipped_embedding(ex.system, ex.action)?;
            let h = HeckeAlgebra::new(Arc::clone(emb.folded()), emb.weights().clone())?;
            let folded = emb.folded();
            let mut bad = String::new();
            for s in 0..folded.rank() {
                let want = BTreeMap::from([(folded.generator(s), sym(h.weights().get(s)))]);
                let got = h.kl_product(&[s, s]);
                if got != want {
                    let _ = write!(bad, "{}; ", coords_diff(|w| folded.name(w), &got, &want));
                }
            }
            Ok(Case::new(
                format!("c_s^2 in {name}"),
                bad.is_empty(),
                if bad.is_empty() { format!("L = {:?}", emb.weights().values()) } else { bad },
            ))
        })();
        cases.push(Case::from_result(format!("c_s^2 in {name}"), r));
    }
    SuiteResult {
        suite: "quadratic",
        criterion: 4,
        title: "quadratic relation",
        cases,
    }
}

// ---------------------------------------------------------------- 5. steinberg

/// `(m, {L(s), L(t)})` demanded by the classification row, `k` copies.
fn row_matches(class: &OrbitPairClass, emb: &QuasiSplitEmbedding, s: usize, t: usize) -> bool {
    let k = class.k as i32;
    let mut got = [class.l_s, class.l_t];
    got.sort_unstable();
    let row = |m: Option<u32>, a: i32, b: i32| {
        let mut want = [a, b];
        want.sort_unstable();
        m.is_none_or(|m| m == class.m) && got == want
    };
    let fits = match class.case {
        PairCase::EqualParameters => row(None, k, k),
        PairCase::A1Commuting { l } => row(Some(2), k, l as i32),
        PairCase::A3 => row(Some(4), k, 2 * k),
        PairCase::A4 => row(Some(4), 3 * k, 2 * k),
        PairCase::D4 => row(Some(6), k, 3 * k),
        PairCase::F4 => row(Some(8), 4 * k, 2 * k),
    };
    fits && class.m == emb.folded_matrix().entry(s, t)
        && class.l_s == emb.weights().get(s)
        && class.l_t == emb.weights().get(t)
}

fn partitioned(matrix: CoxeterMatrix, blocks: Vec<Vec<usize>>) -> CliResult<QuasiSplitEmbedding> {
    let sys = Arc::new(CoxeterSystem::new(matrix.clone())?);
    let p = FinitaryPartition::new(&matrix, blocks)?;
    Ok(fold(sys, p, None)?)
}

/// Steinberg fixed points and pair classification on quasi-split examples,
/// and the non-quasi-split examples.
pub fn steinberg() -> SuiteResult {
    let mut cases = Vec::new();
    for ex in shipped_examples() {
        let name = format!("{} / {}", ex.system, ex.action);
        let r: CliResult<Case> = (|| {
            let emb = shipped_embedding(ex.system, ex.action)?;
            let action = emb.action().expect("shipped examples have actions");
            let st = steinberg_check(emb.ambient(), action);
            let mut bad = String::new();
            if !st.passed() {
                let _ = write!(bad, "fixed {} vs generated {}; ", st.fixed.len(), st.generated.len());
            }
            let n = emb.folded().rank();
            for s in 0..n {
                for t in s + 1..n {
                    match classify_orbit_pair(&emb, s, t) {
                        Ok(class) if row_matches(&class, &emb, s, t) => {}
                        Ok(class) => {
                            let _ = write!(bad, "pair ({s},{t}) {class:?} does not fit its row; ");
                        }
                        Err(e) => {
                            let _ = write!(bad, "pair ({s},{t}): {e}; ");
                        }
                    }
                }
            }
            Ok(Case::new(
                name.clone(),
                bad.is_empty(),
                if bad.is_empty() {
                    format!("|W| = {}, L = {:?}", st.fixed.len(), emb.weights().values())
                } else {
                    bad
                },
            ))
        })();
        cases.push(Case::from_result(name, r));
    }

    let unclassified = |name: String, emb: CliResult<QuasiSplitEmbedding>| -> Case {
        match emb {
            Ok(emb) => match classify_orbit_pair(&emb, 0, 1) {
                Err(foldkit::Error::NoMatchingCase(why)) => Case::new(name, true, why),
                Ok(c) => Case::new(name, false, format!("classified as {c:?}")),
                Err(e) => Case::new(name, false, e.to_string()),
            },
            Err(e) => Case::new(name, false, format!("fold failed: {e}")),
        }
    };
    for n in 1..=4usize {
        let even: Vec<usize> = (0..n).filter(|i| i % 2 == 1).collect();
        let odd: Vec<usize> = (0..n).filter(|i| i % 2 == 0).collect();
        let blocks = if even.is_empty() { vec![odd] } else { vec![odd, even] };
        let name = format!("dihedral into A{n}");
        if blocks.len() < 2 {
            // A1 has a single block: there is no pair to classify.
            cases.push(Case::new(name, true, "rank one, no pair"));
            continue;
        }
        cases.push(unclassified(name, partitioned(CoxeterMatrix::type_a(n), blocks)));
    }
    cases.push(unclassified(
        "G2 into B3".into(),
        partitioned(CoxeterMatrix::type_b(3), vec![vec![0, 2], vec![1]]),
    ));
    for n in 3..=5usize {
        let name = format!("B2 into A{n}, I(t) = {{s1, s{n}}}");
        let emb = partitioned(CoxeterMatrix::type_a(n), vec![vec![0, n - 1], (1..n - 1).collect()]);
        cases.push(match emb {
            Ok(emb) => {
                let maps = emb.longest_maps_to_longest();
                Case::new(
                    name,
                    !maps,
                    format!(
                        "w0 {} w0, L = {:?}, lengths {}",
                        if maps { "maps to" } else { "does not map to" },
                        emb.weights().values(),
                        if emb.length_additive() { "additive" } else { "not additive" }
                    ),
                )
            }
            Err(e) => Case::new(name, false, format!("fold failed: {e}")),
        });
    }
    SuiteResult {
        suite: "steinberg",
        criterion: 5,
        title: "folding and classification",
        cases,
    }
}

// ---------------------------------------------------------------- 6. kl

fn kl_properties(h: &HeckeAlgebra) -> String {
    let sys = h.system();
    let split = h.weights().is_split();
    let mut bad = String::new();
    for x in sys.elements() {
        let b = h.kl_element(x);
        if h.bar(b) != *b {
            let _ = write!(bad, "b_{} not bar-invariant; ", sys.name(x));
        }
        for (y, p) in b.terms() {
            if y == x {
                if !p.is_one() {
                    let _ = write!(bad, "b_{} has leading coefficient {p}; ", sys.name(x));
                }
                continue;
            }
            if !sys.bruhat_leq(y, x) || !p.is_in_positive_part() {
                let _ = write!(bad, "b_{} term {} {p} breaks triangularity; ", sys.name(x), sys.name(y));
            }
            if split && !p.has_nonnegative_coeffs() {
                let _ = write!(bad, "b_{} term {} {p} is negative; ", sys.name(x), sys.name(y));
            }
        }
    }
    bad
}

/// First element or structure constant with a negative coefficient.
fn negative_witness(h: &HeckeAlgebra) -> Option<String> {
    let sys = h.system();
    for x in sys.elements() {
        if let Some((y, p)) = h.kl_element(x).terms().find(|(_, p)| !p.has_nonnegative_coeffs()) {
            return Some(format!("b_{} has {} {p}", sys.name(x), sys.name(y)));
        }
    }
    for x in sys.elements() {
        for y in sys.elements() {
            if let Some((z, p)) = h.structure_constants(x, y).iter().find(|(_, p)| !p.has_nonnegative_coeffs()) {
                return Some(format!("b_{} b_{} has {} {p}", sys.name(x), sys.name(y), sys.name(*z)));
            }
        }
    }
    None
}

/// KL basis properties over the catalog, and negativity for unequal parameters.
pub fn kl() -> SuiteResult {
    let mut cases = Vec::new();
    for (name, weightings) in kl_catalog() {
        let matrix = builtin_system(name).expect("catalog names resolve");
        let sys = system_of(matrix.clone());
        for w in weightings {
            let label = format!("{name} L={w:?}");
            let r: CliResult<Case> = (|| {
                let h = HeckeAlgebra::new(Arc::clone(&sys), WeightFunction::new(&matrix, w.clone())?)?;
                let bad = kl_properties(&h);
                Ok(Case::new(
                    label.clone(),
                    bad.is_empty(),
                    if bad.is_empty() { format!("{} elements", sys.order()) } else { bad },
                ))
            })();
            cases.push(Case::from_result(label, r));
        }
    }
    for (m, w) in [(4, vec![1, 2]), (6, vec![1, 3])] {
        let h = algebra(CoxeterMatrix::dihedral(m), w.clone());
        let found = negative_witness(&h);
        cases.push(Case::new(
            format!("negative coefficient in I2({m}) L={w:?}"),
            found.is_some(),
            found.unwrap_or_else(|| "none found".into()),
        ));
    }
    SuiteResult {
        suite: "kl",
        criterion: 6,
        title: "KL basis properties",
        cases,
    }
}

// ---------------------------------------------------------------- 7. wgg

/// Relation closure: propagate `e_{perm j} = c e_j` from each unvisited
/// label; a class survives iff the propagated multiples are consistent.
fn closure_rank(gset: &GSetDatum, scalars: &[CycloScalar]) -> usize {
    let one = CycloScalar::from(1);
    let mut rank = 0;
    for o in gset.orbits() {
        let n = o.irreps.len();
        let mut val: Vec<Option<CycloScalar>> = vec![None; n];
        for start in 0..n {
            if val[start].is_some() {
                continue;
            }
            val[start] = Some(one.clone());
            let mut consistent = true;
            let mut queue = VecDeque::from([start]);
            while let Some(j) = queue.pop_front() {
                let vj = val[j].clone().expect("visited");
                for (perm, c) in o.twist.iter().zip(scalars) {
                    let t = perm[j];
                    let forward = c * &vj;
                    match &val[t] {
                        None => {
                            val[t] = Some(forward);
                            queue.push_back(t);
                        }
                        Some(old) => consistent &= *old == forward,
                    }
                    // c e_back = e_j; the scalars are +-1 here
                    let back = perm.iter().position(|&x| x == j).expect("permutation");
                    let backward = c * &vj;
                    match &val[back] {
                        None => {
                            val[back] = Some(backward);
                            queue.push_back(back);
                        }
                        Some(old) => consistent &= (&(c * old) - &vj).is_zero(),
                    }
                }
            }
            if consistent {
                rank += 1;
            }
        }
    }
    rank
}

fn symmetric_group(n: usize) -> PermGroup {
    let points: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let cycle: Vec<&str> = points.iter().map(String::as_str).collect();
    PermGroup::from_cycles(&points, &[("a", vec![vec!["1", "2"]]), ("c", vec![cycle])]).expect("valid generators")
}

fn trivial_and_sign(g: &PermGroup) -> Vec<ClassFunction> {
    let all: Vec<usize> = g.elements().collect();
    vec![
        character(&CharacterKind::Trivial, g, &all).expect("trivial"),
        character(&CharacterKind::Sign, g, &all).expect("sign"),
    ]
}

/// `S_n` acting on `n` points, irreducibles of a point stabilizer `S_{n-1}`
/// labelled by partitions, the sign character acting by transpose.
pub fn sn_partition_example(n: usize) -> (PermGroup, GSetDatum, Vec<ClassFunction>) {
    let g = symmetric_group(n);
    let parts = partitions(n - 1);
    let tr: Vec<usize> = parts
        .iter()
        .map(|p| parts.iter().position(|q| *q == transpose(p)).expect("closed under transpose"))
        .collect();
    let orbit = GSetOrbit {
        label: format!("S{n}/S{}", n - 1),
        orbit_size: n,
        stabilizer: g.stabilizer(n - 1),
        irreps: parts.iter().map(|p| partition_label(p)).collect(),
        twist: vec![(0..parts.len()).collect(), tr],
    };
    let gset = GSetDatum::new(&g, vec![orbit]).expect("orbit-stabilizer");
    let chars = trivial_and_sign(&g);
    (g, gset, chars)
}

/// `S_3` acting on `S_3 / A_3`, irreducibles of `A_3 = Z/3`.
pub fn s3_a3_example() -> (PermGroup, GSetDatum, Vec<ClassFunction>) {
    let g = symmetric_group(3);
    let a3 = g.subgroup(&[g.parse("c").expect("generator")]);
    let orbit = GSetOrbit {
        label: "S3/A3".into(),
        orbit_size: 2,
        stabilizer: a3,
        irreps: vec!["1".into(), "w".into(), "w2".into()],
        twist: vec![vec![0, 1, 2], vec![0, 1, 2]],
    };
    let gset = GSetDatum::new(&g, vec![orbit]).expect("orbit-stabilizer");
    let chars = trivial_and_sign(&g);
    (g, gset, chars)
}

fn scalars_at(chars: &[ClassFunction], g: usize) -> Vec<CycloScalar> {
    chars.iter().map(|c| c.value(g).expect("full domain").clone()).collect()
}

/// Ranks of weighted quotients in the nonabelian examples.
pub fn wgg() -> SuiteResult {
    let mut cases = Vec::new();
    let rank = |gset: &GSetDatum, chars: &[ClassFunction], g: usize| {
        weighted_quotient(gset, chars, g).map(|q| q.rank).map_err(|e| e.to_string())
    };
    {
        let (g, gset, chars) = s3_a3_example();
        let inside = rank(&gset, &chars, g.parse("c").unwrap());
        let outside = rank(&gset, &chars, g.parse("a").unwrap());
        let ok = inside == Ok(3) && outside == Ok(0);
        cases.push(Case::new("S3/A3", ok, format!("ranks {inside:?}, {outside:?}; expected 3, 0")));
    }
    for n in [4usize, 5] {
        let (g, gset, chars) = sn_partition_example(n);
        let parts = partitions(n - 1);
        let self_dual = parts.iter().filter(|p| transpose(p) == **p).count();
        let pairs = (parts.len() - self_dual) / 2;
        let (want_even, want_odd) = (self_dual + pairs, pairs);
        let even = g.identity();
        let odd = g.parse("a").unwrap();
        let got = (rank(&gset, &chars, even), rank(&gset, &chars, odd));
        let brute = (
            closure_rank(&gset, &scalars_at(&chars, even)),
            closure_rank(&gset, &scalars_at(&chars, odd)),
        );
        let ok = got == (Ok(want_even), Ok(want_odd)) && brute == (want_even, want_odd);
        cases.push(Case::new(
            format!("S{n} partitions"),
            ok,
            format!(
                "ranks {:?}, {:?}; expected {want_even}, {want_odd}; brute force {}, {}",
                got.0, got.1, brute.0, brute.1
            ),
        ));
    }
    SuiteResult {
        suite: "wgg",
        criterion: 7,
        title: "weighted quotients",
        cases,
    }
}

// ---------------------------------------------------------------- 8. sigma

/// `A3 × A3` on `x1 y1 z1 x2 y2 z2` with the Klein four-group generated by
/// the swap of the copies (`a`) and the flip `x <-> z` of both (`b`).
pub fn a3_squared() -> CliResult<QuasiSplitEmbedding> {
    let system = SystemSpec::Named {
        builtin: "A3×A3".into(),
        names: Some(["x1", "y1", "z1", "x2", "y2", "z2"].map(String::from).to_vec()),
        weights: None,
    }
    .resolve()?;
    let action = ActionSpec::Builtin("klein".into()).resolve(&system)?;
    fold_by_action(&system, &action, DEFAULT_CAP)
}

/// The equivariant decomposition of `b_{y1 y2} b_{x1 z1 x2 z2} b_{y1 y2}
/// b_{x1 z1 x2 z2}`, computed as the external square of the single-copy
/// product. Each single-copy summand carries the trivial structure; the
/// group permutes summand pairs, and an element's multiplicity space
/// carries the permutation character of its stabilizer.
pub fn a3_squared_decomposition(emb: &QuasiSplitEmbedding) -> CliResult<EquivDecomp> {
    let a3 = system_of(CoxeterMatrix::type_a(3).renamed(&["x", "y", "z"]).unwrap());
    let h = HeckeAlgebra::split(Arc::clone(&a3));
    let factors: Vec<Elem> = ["y", "x z", "y", "x z"]
        .iter()
        .map(|w| a3.parse_element(w))
        .collect::<Result<_, _>>()?;
    // summands (element, shift), one per unit coefficient
    let mut summands: Vec<(Elem, i32)> = Vec::new();
    for (w, p) in h.kl_product_general(&factors) {
        for (e, c) in p.terms() {
            let c = usize::try_from(c.clone()).map_err(|_| crate::error::CliError::input("negative multiplicity"))?;
            summands.extend(std::iter::repeat_n((w, e), c));
        }
    }
    let flip = |w: Elem| -> Elem {
        let word: Vec<usize> = a3.normal_form(w).into_iter().map(|s| 2 - s).collect();
        a3.eval(&word)
    };
    // b on summands: k-th copy of (w, e) to k-th copy of (flip w, e)
    let flip_summand: Vec<usize> = (0..summands.len())
        .map(|i| {
            let (w, e) = summands[i];
            let rank = summands[..i].iter().filter(|&&x| x == (w, e)).count();
            summands
                .iter()
                .enumerate()
                .filter(|(_, &x)| x == (flip(w), e))
                .nth(rank)
                .map(|(j, _)| j)
                .expect("the product is flip-invariant")
        })
        .collect();

    let ambient = emb.ambient();
    let action = emb.action().expect("klein action");
    let group = action.group();
    let word_in = |w: Elem, copy: &str| -> String {
        a3.normal_form(w)
            .into_iter()
            .map(|s| format!("{}{copy}", a3.matrix().name(s)))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let pair_elem = |(i, j): (usize, usize)| -> CliResult<Elem> {
        let text = format!("{} {}", word_in(summands[i].0, "1"), word_in(summands[j].0, "2"));
        Ok(ambient.parse_element(text.trim())?)
    };
    // group elements acting on summand pairs, by their generator words
    let act_pair = |g: usize, p: (usize, usize)| -> (usize, usize) {
        let name = group.name(g);
        name.split_whitespace().filter(|l| *l != "e").fold(p, |(i, j), letter| match letter {
            "a" => (j, i),
            "b" => (flip_summand[i], flip_summand[j]),
            other => unreachable!("klein generator {other}"),
        })
    };
    let n = summands.len();
    let mut seen = BTreeSet::new();
    let mut specs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if seen.contains(&(i, j)) {
                continue;
            }
            let orbit: BTreeSet<(usize, usize)> = group.elements().map(|g| act_pair(g, (i, j))).collect();
            seen.extend(orbit.iter().copied());
            let rep = pair_elem((i, j))?;
            let mut elems: Vec<Elem> = Vec::new();
            for &p in &orbit {
                let w = pair_elem(p)?;
                if !elems.contains(&w) {
                    elems.push(w);
                }
            }
            elems.sort_by_key(|&w| (w != rep, w));
            let mut same_elem = Vec::new();
            for &p in &orbit {
                if pair_elem(p)? == rep {
                    same_elem.push(p);
                }
            }
            let values: Vec<(String, CycloScalar)> = group
                .elements()
                .filter(|&g| action.apply(ambient, g, rep) == rep)
                .map(|g| {
                    let fixed = same_elem.iter().filter(|&&p| act_pair(g, p) == p).count();
                    (group.name(g), CycloScalar::from(fixed as i64))
                })
                .collect();
            specs.push(EntrySpec {
                orbit: elems.iter().map(|&w| ambient.name(w)).collect(),
                shift: summands[i].1 + summands[j].1,
                character: CharacterKind::Explicit(values),
            });
        }
    }
    Ok(EquivDecomp::new(Arc::clone(ambient), action.clone(), &specs)?)
}

/// Non-transitivity of every element on the Klein-four example, and trace
/// support outside the image of `W`.
pub fn sigma() -> SuiteResult {
    let mut cases = Vec::new();
    let r: CliResult<Vec<Case>> = (|| {
        let emb = a3_squared()?;
        let action = emb.action().expect("klein action");
        let group = action.group();
        let mut out = Vec::new();
        for g in group.elements() {
            let name = group.name(g);
            let transitive = sigma_transitive(action, &name)?;
            out.push(Case::new(
                format!("`{name}` not transitive"),
                !transitive,
                format!("sigma_transitive = {transitive}"),
            ));
        }
        let decomp = a3_squared_decomposition(&emb)?;
        let ambient = emb.ambient();
        let h = HeckeAlgebra::split(Arc::clone(ambient));
        let word = emb.folded().parse_word("y1 x1 y1 x1")?;
        let images: Vec<Elem> = word.iter().map(|&s| emb.images()[s]).collect();
        let product = h.kl_product_general(&images);
        let forget = forget_specialize(&decomp);
        out.push(Case::new(
            "decomposition matches the split product",
            forget == product,
            coords_diff(|w| ambient.name(w), &forget, &product),
        ));
        for sigma in ["a", "a b"] {
            let trace = trace_specialize(&decomp, sigma)?;
            let outside: Vec<(Elem, &LaurentPoly)> = trace
                .iter()
                .filter(|(w, _)| emb.phi_inverse(**w).is_none())
                .map(|(w, p)| (*w, p))
                .collect();
            let detail = outside
                .first()
                .map(|(w, p)| format!("{} fixed elements outside W, e.g. {}: {p}", outside.len(), ambient.name(*w)))
                .unwrap_or_else(|| "trace supported on W".into());
            out.push(Case::new(format!("trace at `{sigma}` leaves W"), !outside.is_empty(), detail));
        }
        Ok(out)
    })();
    match r {
        Ok(c) => cases.extend(c),
        Err(e) => cases.push(Case::new("A3×A3 Klein four", false, format!("error: {e}"))),
    }
    SuiteResult {
        suite: "sigma",
        criterion: 8,
        title: "sigma-transitivity",
        cases,
    }
}
