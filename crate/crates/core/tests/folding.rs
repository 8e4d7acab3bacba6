use std::sync::Arc;

use foldkit::coxeter::tits;
use foldkit::folding::{
    classify_orbit_pair, classify_structure, fold, sigma_transitive, steinberg_check, FinitaryPartition, GroupAction,
    PairCase, QuasiSplitEmbedding,
};
use foldkit::{CoxeterMatrix, CoxeterSystem, Elem, Error};

fn system(m: &CoxeterMatrix) -> Arc<CoxeterSystem> {
    Arc::new(CoxeterSystem::new(m.clone()).unwrap())
}

fn quasi_split(m: &CoxeterMatrix, gens: &[(&str, Vec<Vec<&str>>)]) -> QuasiSplitEmbedding {
    let action = GroupAction::from_cycles(m, gens).unwrap();
    let partition = action.orbits(m);
    fold(system(m), partition, Some(action)).unwrap()
}

fn a3_swap() -> QuasiSplitEmbedding {
    let m = CoxeterMatrix::type_a(3).renamed(&["x", "y", "z"]).unwrap();
    quasi_split(&m, &[("g", vec![vec!["x", "z"]])])
}

fn d4_rotation() -> QuasiSplitEmbedding {
    quasi_split(&CoxeterMatrix::d4_star(), &[("r", vec![vec!["u1", "u2", "u3"]])])
}

/// `k` disjoint copies of `m`, names suffixed `1..=k`.
fn copies(m: &CoxeterMatrix, k: usize) -> CoxeterMatrix {
    let parts: Vec<CoxeterMatrix> = (1..=k).map(|i| m.suffixed(&i.to_string())).collect();
    CoxeterMatrix::product(&parts).unwrap()
}

/// Cycles permuting `k` suffixed copies of each generator cyclically.
fn copy_rotation(names: &[&str], k: usize) -> Vec<Vec<String>> {
    names
        .iter()
        .map(|n| (1..=k).map(|i| format!("{n}{i}")).collect())
        .collect()
}

fn as_refs(cycles: &[Vec<String>]) -> Vec<Vec<&str>> {
    cycles.iter().map(|c| c.iter().map(String::as_str).collect()).collect()
}

fn pair(emb: &QuasiSplitEmbedding) -> (u32, i32, i32) {
    (emb.folded_matrix().entry(0, 1), emb.weights().get(0), emb.weights().get(1))
}

#[test]
fn orbit_partitions() {
    let a3 = CoxeterMatrix::type_a(3).renamed(&["x", "y", "z"]).unwrap();
    let trivial = GroupAction::trivial(&a3).orbits(&a3);
    assert_eq!(trivial.blocks(), &[vec![0], vec![1], vec![2]]);
    let swap = GroupAction::from_cycles(&a3, &[("g", vec![vec!["x", "z"]])]).unwrap();
    let p = swap.orbits(&a3);
    assert_eq!(p.blocks(), &[vec![0, 2], vec![1]]);
    assert_eq!(p.names(), &["x", "y"]);

    let d4 = CoxeterMatrix::d4_star();
    let rot = GroupAction::from_cycles(&d4, &[("r", vec![vec!["u1", "u2", "u3"]])]).unwrap();
    let v = d4.index_of("v").unwrap();
    let blocks = rot.orbits(&d4);
    assert!(blocks.blocks().contains(&vec![v]));
    assert_eq!(blocks.len(), 2);
}

#[test]
fn invalid_actions_and_partitions() {
    let a3 = CoxeterMatrix::type_a(3);
    assert!(matches!(
        GroupAction::from_cycles(&a3, &[("g", vec![vec!["s1", "s2"]])]),
        Err(Error::InvalidAction(_))
    ));
    assert!(matches!(FinitaryPartition::new(&a3, vec![vec![0, 1]]), Err(Error::InvalidPartition(_))));
    assert!(matches!(
        FinitaryPartition::new(&a3, vec![vec![0, 1], vec![1, 2]]),
        Err(Error::InvalidPartition(_))
    ));
    assert!(matches!(FinitaryPartition::new(&a3, vec![vec![0, 1, 2], vec![]]), Err(Error::InvalidPartition(_))));
    assert!(matches!(
        FinitaryPartition::from_names(&a3, &[&["s1", "s9"]]),
        Err(Error::UnknownGenerator(_))
    ));
    // The partition must be the orbit partition when an action is given.
    let swap = GroupAction::from_cycles(&a3, &[("g", vec![vec!["s1", "s3"]])]).unwrap();
    let singles = FinitaryPartition::new(&a3, vec![vec![0], vec![1], vec![2]]).unwrap();
    assert!(matches!(fold(system(&a3), singles, Some(swap)), Err(Error::InvalidAction(_))));
}

#[test]
fn a3_swap_folds_to_b2() {
    let emb = a3_swap();
    // blocks are ordered by least member: {x, z} then {y}
    assert_eq!(pair(&emb), (4, 2, 1));
    assert!(emb.length_additive());
    assert!(emb.longest_maps_to_longest());
    let amb = emb.ambient();
    assert_eq!(emb.phi_word(&[]), Elem::IDENTITY);
    // "s t" with s = y, t = xz
    let st = emb.phi_word(&[1, 0]);
    assert_eq!(amb.length(st), 3);
    assert_eq!(st, amb.parse_element("y x z").unwrap());
    let class = classify_orbit_pair(&emb, 1, 0).unwrap();
    assert_eq!(class.case, PairCase::A3);
    assert_eq!((class.m, class.l_s, class.l_t, class.k), (4, 1, 2, 1));
}

#[test]
fn a4_flip_folds_to_b2() {
    let m = CoxeterMatrix::type_a(4);
    let emb = quasi_split(&m, &[("g", vec![vec!["s1", "s4"], vec!["s2", "s3"]])]);
    assert_eq!(emb.partition().blocks(), &[vec![0, 3], vec![1, 2]]);
    assert_eq!(pair(&emb), (4, 2, 3));
    assert!(emb.length_additive());
    let class = classify_orbit_pair(&emb, 0, 1).unwrap();
    assert_eq!(class.case, PairCase::A4);
    assert_eq!((class.l_s, class.l_t, class.k), (2, 3, 1));
}

#[test]
fn d4_rotation_folds_to_g2() {
    let emb = d4_rotation();
    let v = emb.partition().blocks().iter().position(|b| b.len() == 1).unwrap();
    let u = 1 - v;
    assert_eq!(emb.folded_matrix().entry(0, 1), 6);
    assert_eq!((emb.weights().get(v), emb.weights().get(u)), (1, 3));
    let w0 = emb.phi(emb.folded().longest());
    assert_eq!(w0, emb.ambient().longest());
    assert_eq!(emb.ambient().length(w0), 12);
    assert_eq!(emb.phi_word(&[v, u, v, u, v, u]), w0);
    let class = classify_orbit_pair(&emb, v, u).unwrap();
    assert_eq!(class.case, PairCase::D4);
    assert_eq!((class.m, class.l_s, class.l_t, class.k), (6, 1, 3, 1));
}

#[test]
fn phi_inverse_is_partial_inverse() {
    let emb = d4_rotation();
    for x in emb.folded().elements() {
        assert_eq!(emb.phi_inverse(emb.phi(x)), Some(x));
    }
    let hits = emb.ambient().elements().filter(|&w| emb.phi_inverse(w).is_some()).count();
    assert_eq!(hits, 12);
    assert!(matches!(emb.phi_str("s q"), Err(Error::UnknownGenerator(_))));
}

/// Diagram automorphism applied to an independent reduced word: the
/// reverse of the ShortLex normal form of the inverse.
fn apply_via_reverse_word(sys: &CoxeterSystem, perm: &[usize], w: Elem) -> Elem {
    let mut word = tits::shortlex_normal_form(sys.matrix(), &sys.normal_form(sys.inverse(w)));
    word.reverse();
    let image: Vec<usize> = word.iter().map(|&s| perm[s]).collect();
    sys.eval(&image)
}

#[test]
fn steinberg_fixed_subgroups() {
    // A3 as S4: the swap is conjugation by the reversal permutation.
    let emb = a3_swap();
    let report = steinberg_check(emb.ambient(), emb.action().unwrap());
    assert!(report.passed());
    assert_eq!(report.fixed.len(), 8);
    let mut perms = Vec::new();
    permutations(&mut vec![0, 1, 2, 3], 0, &mut perms);
    let rev = |i: usize| 3 - i;
    let fixed = perms
        .iter()
        .filter(|p| (0..4).all(|i| rev(p[rev(i)]) == p[i]))
        .count();
    assert_eq!(fixed, 8);

    let emb = d4_rotation();
    let action = emb.action().unwrap();
    let report = steinberg_check(emb.ambient(), action);
    assert!(report.passed());
    assert_eq!(report.fixed.len(), 12);
    let amb = emb.ambient();
    let g = action.group().generators()[0];
    let perm = action.group().perm(g);
    let oracle = amb.elements().filter(|&w| apply_via_reverse_word(amb, perm, w) == w).count();
    assert_eq!(oracle, 12);

    let a3 = CoxeterMatrix::type_a(3);
    let report = steinberg_check(&system(&a3), &GroupAction::trivial(&a3));
    assert!(report.passed());
    assert_eq!(report.fixed.len(), 24);
}

fn permutations(p: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == p.len() {
        out.push(p.clone());
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, out);
        p.swap(k, i);
    }
}

fn check_shipped(emb: &QuasiSplitEmbedding) {
    let report = steinberg_check(emb.ambient(), emb.action().unwrap());
    assert!(report.passed());
    assert_eq!(report.fixed.len(), emb.folded().order());
    assert!(emb.length_additive());
    for s in 0..emb.partition().len() {
        for t in 0..emb.partition().len() {
            if s != t {
                classify_orbit_pair(emb, s, t).unwrap();
            }
        }
    }
}

#[test]
fn shipped_quasi_split_examples() {
    let a1 = CoxeterMatrix::type_a(1);
    // A1^k -> A1 with L = k
    for k in 1..=4 {
        let m = copies(&a1, k);
        let cyc = copy_rotation(&["s1"], k);
        let emb = quasi_split(&m, &[("r", as_refs(&cyc))]);
        assert_eq!(emb.folded().order(), 2);
        assert_eq!(emb.weights().get(0), k as i32);
        check_shipped(&emb);
    }
    // I2(m) -> A1 with L = m
    for mm in 2..=8 {
        let m = CoxeterMatrix::dihedral(mm);
        let emb = quasi_split(&m, &[("g", vec![vec!["s", "t"]])]);
        assert_eq!(emb.weights().get(0), mm as i32);
        check_shipped(&emb);
    }
    // A1 x A1 (trivial action) and A1^2 x A1^2 diagonal
    let m = copies(&a1, 2);
    let emb = fold(system(&m), GroupAction::trivial(&m).orbits(&m), Some(GroupAction::trivial(&m))).unwrap();
    let class = classify_orbit_pair(&emb, 0, 1).unwrap();
    assert_eq!(class.case, PairCase::A1Commuting { l: 1 });
    assert_eq!((class.m, class.l_s, class.l_t), (2, 1, 1));
    check_shipped(&emb);
    let ab = CoxeterMatrix::product(&[a1.renamed(&["a"]).unwrap(), a1.renamed(&["b"]).unwrap()]).unwrap();
    let m = copies(&ab, 2);
    let emb = quasi_split(&m, &[("r", as_refs(&copy_rotation(&["a", "b"], 2)))]);
    let class = classify_orbit_pair(&emb, 0, 1).unwrap();
    assert_eq!(class.case, PairCase::A1Commuting { l: 2 });
    assert_eq!(pair(&emb), (2, 2, 2));
    check_shipped(&emb);
    // star-shaped with 1, 2, 3 spokes
    for (spokes, mm) in [(1, 3), (2, 4), (3, 6)] {
        let m = CoxeterMatrix::star(spokes);
        let names: Vec<String> = (1..=spokes).map(|i| format!("u{i}")).collect();
        let cyc = vec![names.clone()];
        let emb = quasi_split(&m, &[("r", as_refs(&cyc))]);
        let v = emb.partition().names().iter().position(|n| n == "v").unwrap();
        assert_eq!(emb.folded_matrix().entry(0, 1), mm);
        assert_eq!((emb.weights().get(v), emb.weights().get(1 - v)), (1, spokes as i32));
        check_shipped(&emb);
    }
    // I2(m)^k -> I2(m)
    for mm in 2..=5 {
        for k in 1..=2 {
            let m = copies(&CoxeterMatrix::dihedral(mm), k);
            let emb = quasi_split(&m, &[("r", as_refs(&copy_rotation(&["s", "t"], k)))]);
            assert_eq!(pair(&emb), (mm, k as i32, k as i32));
            let class = classify_orbit_pair(&emb, 0, 1).unwrap();
            if mm > 2 {
                assert_eq!(class.case, PairCase::EqualParameters);
                assert_eq!(class.k, k);
            }
            check_shipped(&emb);
        }
    }
    check_shipped(&a3_swap());
    check_shipped(&d4_rotation());
}

fn a3_squared() -> (CoxeterMatrix, Vec<(&'static str, Vec<Vec<&'static str>>)>) {
    let a3 = CoxeterMatrix::type_a(3).renamed(&["x", "y", "z"]).unwrap();
    let m = copies(&a3, 2);
    let gens = vec![
        ("a", vec![vec!["x1", "x2"], vec!["y1", "y2"], vec!["z1", "z2"]]),
        ("b", vec![vec!["x1", "z1"], vec!["x2", "z2"]]),
    ];
    (m, gens)
}

#[test]
fn a3_squared_klein_four() {
    let (m, gens) = a3_squared();
    let emb = quasi_split(&m, &gens);
    assert_eq!(emb.action().unwrap().group().order(), 4);
    let big = emb.partition().blocks().iter().position(|b| b.len() == 4).unwrap();
    let small = 1 - big;
    let class = classify_orbit_pair(&emb, small, big).unwrap();
    assert_eq!(class.case, PairCase::A3);
    assert_eq!((class.m, class.l_s, class.l_t, class.k), (4, 2, 4, 2));
    check_shipped(&emb);
    let action = emb.action().unwrap();
    for sigma in ["e", "a", "b", "a b"] {
        assert!(!sigma_transitive(action, sigma).unwrap(), "{sigma}");
    }
    assert!(matches!(sigma_transitive(action, "c"), Err(Error::UnknownGroupElement(_))));
}

#[test]
fn sigma_transitivity() {
    let emb = a3_swap();
    assert!(sigma_transitive(emb.action().unwrap(), "g").unwrap());
    assert!(!sigma_transitive(emb.action().unwrap(), "e").unwrap());
}

#[test]
fn dihedral_into_type_a() {
    for n in 2..=4 {
        let m = CoxeterMatrix::type_a(n);
        let even: Vec<usize> = (0..n).filter(|i| i % 2 == 1).collect();
        let odd: Vec<usize> = (0..n).filter(|i| i % 2 == 0).collect();
        let p = FinitaryPartition::new(&m, vec![odd.clone(), even.clone()]).unwrap();
        let emb = fold(system(&m), p, None).unwrap();
        assert_eq!(emb.folded_matrix().entry(0, 1), n as u32 + 1);
        assert_eq!(pair(&emb).1, odd.len() as i32);
        assert_eq!(pair(&emb).2, even.len() as i32);
        assert!(emb.length_additive());
        assert!(matches!(classify_orbit_pair(&emb, 0, 1), Err(Error::NoMatchingCase(_))));
    }
    // Rank 4 has no row at all, whatever the action.
    let m = CoxeterMatrix::type_a(4);
    let p = FinitaryPartition::new(&m, vec![vec![0, 2], vec![1, 3]]).unwrap();
    let emb = fold(system(&m), p, None).unwrap();
    assert!(matches!(classify_structure(&emb, 0, 1), Err(Error::NoMatchingCase(_))));
}

#[test]
fn g2_into_b3() {
    let m = CoxeterMatrix::type_b(3);
    let p = FinitaryPartition::from_names(&m, &[&["s1", "s3"], &["s2"]]).unwrap();
    let emb = fold(system(&m), p, None).unwrap();
    assert_eq!(pair(&emb), (6, 2, 1));
    assert_eq!(emb.folded().order(), 12);
    assert!(emb.length_additive());
    assert!(matches!(classify_orbit_pair(&emb, 0, 1), Err(Error::NoMatchingCase(_))));
    assert!(matches!(classify_structure(&emb, 0, 1), Err(Error::NoMatchingCase(_))));
}

fn b2_into_a(n: usize) -> QuasiSplitEmbedding {
    let m = CoxeterMatrix::type_a(n);
    let p = FinitaryPartition::new(&m, vec![vec![0, n - 1], (1..n - 1).collect()]).unwrap();
    fold(system(&m), p, None).unwrap()
}

#[test]
fn b2_into_a_outer_pair() {
    // Small ranks coincide with the quasi-split A3 and A4 foldings.
    for n in [3, 4] {
        let emb = b2_into_a(n);
        assert_eq!(emb.folded_matrix().entry(0, 1), 4);
        assert!(emb.longest_maps_to_longest());
        assert!(emb.length_additive());
    }
    for n in 5..=6 {
        let emb = b2_into_a(n);
        assert_eq!(emb.folded().order(), 8);
        assert!(!emb.longest_maps_to_longest());
        // The image lengths are not additive along reduced words here.
        assert!(!emb.length_additive());
    }
}

#[test]
fn non_embedding_detected() {
    // m-values (4, 6, 2) give an infinite triangle group, but the images lie in S5.
    let m = CoxeterMatrix::type_a(4);
    let p = FinitaryPartition::from_names(&m, &[&["s1", "s3"], &["s2"], &["s4"]]).unwrap();
    match fold(system(&m), p, None) {
        Err(Error::NotACoxeterEmbedding { generated, folded }) => {
            assert_eq!(generated, 120);
            assert!(folded > 120);
        }
        other => panic!("expected NotACoxeterEmbedding, got {other:?}"),
    }
    // A genuine embedding whose image lengths differ across an odd bond.
    let p = FinitaryPartition::from_names(&m, &[&["s1", "s2"], &["s3"], &["s4"]]).unwrap();
    assert!(matches!(fold(system(&m), p, None), Err(Error::WeightMismatch(_))));
}
