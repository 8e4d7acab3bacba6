//! Coxeter embeddings given by finitary partitions, quasi-split foldings
//! by diagram automorphisms, and the classification of folded dihedral
//! pairs.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Elem};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hecke::WeightFunction;

/// A permutation group on the generators of a Coxeter matrix that
/// preserves the matrix.
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: PermGroup,
}

impl GroupAction {
    pub fn new(matrix: &CoxeterMatrix, group: PermGroup) -> Result<Self> {
        if group.degree() != matrix.rank() {
            return Err(Error::InvalidAction(format!(
                "group acts on {} points, matrix has {} generators",
                group.degree(),
                matrix.rank()
            )));
        }
        for (k, &g) in group.generators().iter().enumerate() {
            let p = group.perm(g);
            for s in 0..matrix.rank() {
                for t in 0..matrix.rank() {
                    if matrix.entry(p[s], p[t]) != matrix.entry(s, t) {
                        return Err(Error::InvalidAction(format!(
                            "`{}` does not preserve m({}, {})",
                            group.generator_names()[k],
                            matrix.name(s),
                            matrix.name(t)
                        )));
                    }
                }
            }
        }
        Ok(Self { group })
    }

    /// Generators given as cycles of generator names.
    pub fn from_cycles(matrix: &CoxeterMatrix, generators: &[(&str, Vec<Vec<&str>>)]) -> Result<Self> {
        let group = PermGroup::from_cycles(matrix.names(), generators)?;
        Self::new(matrix, group)
    }

    pub fn trivial(matrix: &CoxeterMatrix) -> Self {
        Self {
            group: PermGroup::trivial(matrix.rank()),
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// Image of a Coxeter group element under `g`, applied letterwise to the
    /// normal form.
    pub fn apply(&self, system: &CoxeterSystem, g: usize, w: Elem) -> Elem {
        let p = self.group.perm(g);
        let word: Vec<usize> = system.normal_form(w).into_iter().map(|s| p[s]).collect();
        system.eval(&word)
    }

    /// The `G`-orbits on generators, as a finitary partition.
    pub fn orbits(&self, matrix: &CoxeterMatrix) -> FinitaryPartition {
        FinitaryPartition::from_blocks_unchecked(matrix, self.group.orbits())
    }
}

/// A partition of the generators into named blocks, ordered by least member.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitaryPartition {
    names: Vec<String>,
    blocks: Vec<Vec<usize>>,
}

impl FinitaryPartition {
    /// Blocks are sorted internally and ordered by least member; each block
    /// is named after its least member.
    pub fn new(matrix: &CoxeterMatrix, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; matrix.rank()];
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &s in block {
                if s >= matrix.rank() || std::mem::replace(&mut seen[s], true) {
                    return Err(Error::InvalidPartition(format!("generator index {s} repeated or out of range")));
                }
            }
        }
        if let Some(s) = seen.iter().position(|&x| !x) {
            return Err(Error::InvalidPartition(format!("`{}` is in no block", matrix.name(s))));
        }
        Ok(Self::from_blocks_unchecked(matrix, blocks))
    }

    /// Blocks given by generator names.
    pub fn from_names(matrix: &CoxeterMatrix, blocks: &[&[&str]]) -> Result<Self> {
        let idx = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|n| matrix.index_of(n).ok_or_else(|| Error::UnknownGenerator(n.to_string())))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(matrix, idx)
    }

    fn from_blocks_unchecked(matrix: &CoxeterMatrix, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        let names = blocks.iter().map(|b| matrix.name(b[0]).to_string()).collect();
        Self { names, blocks }
    }

    /// Renames the blocks (folded generators), in block order.
    pub fn with_names<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self> {
        if names.len() != self.blocks.len() {
            return Err(Error::InvalidPartition(format!(
                "{} names for {} blocks",
                names.len(),
                self.blocks.len()
            )));
        }
        self.names = names.iter().map(|n| n.as_ref().to_string()).collect();
        Ok(self)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// A folded system `(W, S, L)` inside `(W', S', l)` via `s -> w_{I(s)}`.
pub struct QuasiSplitEmbedding {
    ambient: Arc<CoxeterSystem>,
    partition: FinitaryPartition,
    images: Vec<Elem>,
    weights: WeightFunction,
    folded: Arc<CoxeterSystem>,
    action: Option<GroupAction>,
    /// `phi` on folded element ids, and its partial inverse on `W'`.
    phi: Vec<Elem>,
    phi_inv: Vec<Option<Elem>>,
}

/// Builds the embedding and verifies that it is one: the images must
/// generate a subgroup of `W'` of the same order as the abstract folded
/// group. With an action, the partition must be its orbit partition.
pub fn fold(ambient: Arc<CoxeterSystem>, partition: FinitaryPartition, action: Option<GroupAction>) -> Result<QuasiSplitEmbedding> {
    let amb = ambient.matrix();
    if let Some(a) = &action {
        let orbits = a.orbits(amb);
        if orbits.blocks() != partition.blocks() {
            return Err(Error::InvalidAction("partition is not the orbit partition of the action".into()));
        }
    }
    let images: Vec<Elem> = partition.blocks().iter().map(|b| ambient.longest_element(b)).collect();
    let n = images.len();
    let mut entries = vec![vec![1u32; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entries[i][j] = ambient.element_order(ambient.multiply(images[i], images[j])) as u32;
            }
        }
    }
    let folded_matrix = CoxeterMatrix::new(partition.names().to_vec(), entries)?;
    let lengths = images.iter().map(|&w| ambient.length(w) as i32).collect();
    let generated = ambient.generated_subgroup(&images).len();
    let folded = match CoxeterSystem::with_cap(folded_matrix, ambient.order()) {
        Ok(f) => f,
        Err(Error::CapExceeded { cap }) => {
            return Err(Error::NotACoxeterEmbedding {
                generated,
                folded: cap + 1,
            })
        }
        Err(e) => return Err(e),
    };
    if folded.order() != generated {
        return Err(Error::NotACoxeterEmbedding {
            generated,
            folded: folded.order(),
        });
    }
    // Checked after Coxeter-ness: images of conjugate generators may have
    // different lengths even in a genuine embedding.
    let weights = WeightFunction::new(folded.matrix(), lengths)?;
    let mut phi = Vec::with_capacity(folded.order());
    let mut phi_inv = vec![None; ambient.order()];
    for x in folded.elements() {
        let img = match folded.split_last(x) {
            None => Elem::IDENTITY,
            Some((u, s)) => ambient.multiply(phi[u.index()], images[s]),
        };
        phi_inv[img.index()] = Some(x);
        phi.push(img);
    }
    Ok(QuasiSplitEmbedding {
        ambient,
        partition,
        images,
        weights,
        folded: Arc::new(folded),
        action,
        phi,
        phi_inv,
    })
}

impl QuasiSplitEmbedding {
    pub fn ambient(&self) -> &Arc<CoxeterSystem> {
        &self.ambient
    }

    pub fn folded(&self) -> &Arc<CoxeterSystem> {
        &self.folded
    }

    pub fn folded_matrix(&self) -> &CoxeterMatrix {
        self.folded.matrix()
    }

    pub fn partition(&self) -> &FinitaryPartition {
        &self.partition
    }

    /// `w_{I(s)}` for each folded generator.
    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn weights(&self) -> &WeightFunction {
        &self.weights
    }

    pub fn action(&self) -> Option<&GroupAction> {
        self.action.as_ref()
    }

    pub fn is_quasi_split(&self) -> bool {
        self.action.is_some()
    }

    /// Evaluates a word over the folded generators through the images.
    pub fn phi_word(&self, word: &[usize]) -> Elem {
        word.iter()
            .fold(Elem::IDENTITY, |w, &s| self.ambient.multiply(w, self.images[s]))
    }

    /// Parses a space-separated word over the folded generators and maps it.
    pub fn phi_str(&self, word: &str) -> Result<Elem> {
        Ok(self.phi_word(&self.folded.parse_word(word)?))
    }

    pub fn phi(&self, x: Elem) -> Elem {
        self.phi[x.index()]
    }

    /// The folded element mapping to `w`, if `w` is in the image.
    pub fn phi_inverse(&self, w: Elem) -> Option<Elem> {
        self.phi_inv[w.index()]
    }

    /// `l'(phi(w)) = L(w)` for every folded element.
    pub fn length_additive(&self) -> bool {
        self.folded.elements().all(|x| {
            self.ambient.length(self.phi(x)) as i32 == self.weights.of_word(&self.folded.normal_form(x))
        })
    }

    pub fn longest_maps_to_longest(&self) -> bool {
        self.phi(self.folded.longest()) == self.ambient.longest()
    }
}

impl fmt::Debug for QuasiSplitEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("QuasiSplitEmbedding")
            .field("ambient", &self.ambient)
            .field("partition", &self.partition)
            .field("folded", &self.folded.matrix())
            .field("weights", &self.weights)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinbergReport {
    /// Elements of `W'` fixed by every element of `G`.
    pub fixed: Vec<Elem>,
    /// Subgroup generated by the longest elements of the orbits.
    pub generated: Vec<Elem>,
}

impl SteinbergReport {
    pub fn passed(&self) -> bool {
        self.fixed == self.generated
    }
}

/// Compares the `G`-fixed subgroup of `W'` with the subgroup generated by
/// the longest elements of the `G`-orbits on `S'`.
pub fn steinberg_check(ambient: &CoxeterSystem, action: &GroupAction) -> SteinbergReport {
    let gens = action.group().generators();
    let fixed = ambient
        .elements()
        .filter(|&w| gens.iter().all(|&g| action.apply(ambient, g, w) == w))
        .collect();
    let longest: Vec<Elem> = action
        .group()
        .orbits()
        .iter()
        .map(|b| ambient.longest_element(b))
        .collect();
    SteinbergReport {
        fixed,
        generated: ambient.generated_subgroup(&longest),
    }
}

/// True iff `<sigma>` has the same orbits on `S'` as the whole group.
/// `sigma` is a word in the group generators.
pub fn sigma_transitive(action: &GroupAction, sigma: &str) -> Result<bool> {
    let g = action.group();
    let sigma = g.parse(sigma)?;
    Ok(g.orbits_of(&[sigma]) == g.orbits())
}

/// Rows of the dihedral classification of `I(s) u I(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairCase {
    /// `k` copies of `I_2(m)`, one node from each orbit per copy.
    EqualParameters,
    /// `k + l` commuting copies of `A_1`.
    A1Commuting { l: usize },
    /// `k` copies of `A_3` with the middle nodes forming one orbit.
    A3,
    /// `k` copies of `A_4` with the middle pairs forming one orbit.
    A4,
    /// `k` copies of `D_4` with the branch nodes forming one orbit.
    D4,
    /// `k` copies of `F_4` with the doubly bonded pairs forming one orbit.
    F4,
}

impl PairCase {
    pub fn label(&self) -> &'static str {
        match self {
            PairCase::EqualParameters => "I2(m)^k",
            PairCase::A1Commuting { .. } => "A1-commuting",
            PairCase::A3 => "A3",
            PairCase::A4 => "A4",
            PairCase::D4 => "D4",
            PairCase::F4 => "F4",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrbitPairClass {
    pub case: PairCase,
    pub m: u32,
    pub l_s: i32,
    pub l_t: i32,
    /// Number of connected copies (for the commuting case, `|I(s)|`).
    pub k: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Component {
    Singleton,
    Dihedral(u32),
    /// Marked orbit is `true` for `I(s)`.
    A3(bool),
    A4(bool),
    D4(bool),
    F4(bool),
}

fn component_type(matrix: &CoxeterMatrix, comp: &[usize], in_s: &dyn Fn(usize) -> bool) -> Option<Component> {
    let bonds: Vec<(usize, usize, u32)> = comp
        .iter()
        .flat_map(|&a| comp.iter().map(move |&b| (a, b)))
        .filter(|&(a, b)| a < b && matrix.entry(a, b) >= 3)
        .map(|(a, b)| (a, b, matrix.entry(a, b)))
        .collect();
    let degree = |x: usize| bonds.iter().filter(|&&(a, b, _)| a == x || b == x).count();
    let ns = comp.iter().filter(|&&x| in_s(x)).count();
    let nt = comp.len() - ns;
    // Which orbit holds the marked nodes, checking they all lie in one orbit.
    let side = |marked: &[usize]| -> Option<bool> {
        let first = in_s(*marked.first()?);
        marked.iter().all(|&x| in_s(x) == first).then_some(first)
    };
    let is_path = bonds.len() + 1 == comp.len() && comp.iter().all(|&x| degree(x) <= 2);
    let labels: Vec<u32> = bonds.iter().map(|b| b.2).collect();
    match comp.len() {
        1 => Some(Component::Singleton),
        2 if ns == 1 && nt == 1 => Some(Component::Dihedral(labels[0])),
        3 if is_path && labels.iter().all(|&m| m == 3) => {
            let middle: Vec<usize> = comp.iter().copied().filter(|&x| degree(x) == 2).collect();
            let ends: Vec<usize> = comp.iter().copied().filter(|&x| degree(x) == 1).collect();
            let s = side(&middle)?;
            (side(&ends)? != s).then_some(Component::A3(s))
        }
        4 if is_path => {
            let middle: Vec<usize> = comp.iter().copied().filter(|&x| degree(x) == 2).collect();
            let ends: Vec<usize> = comp.iter().copied().filter(|&x| degree(x) == 1).collect();
            let s = side(&middle)?;
            if side(&ends)? == s {
                return None;
            }
            let inner = bonds
                .iter()
                .find(|&&(a, b, _)| degree(a) == 2 && degree(b) == 2)
                .map(|b| b.2)?;
            let outer_ok = bonds
                .iter()
                .filter(|&&(a, b, _)| degree(a) == 1 || degree(b) == 1)
                .all(|b| b.2 == 3);
            match (inner, outer_ok) {
                (3, true) => Some(Component::A4(s)),
                (4, true) => Some(Component::F4(s)),
                _ => None,
            }
        }
        4 if bonds.len() == 3 && labels.iter().all(|&m| m == 3) => {
            let center: Vec<usize> = comp.iter().copied().filter(|&x| degree(x) == 3).collect();
            let legs: Vec<usize> = comp.iter().copied().filter(|&x| degree(x) == 1).collect();
            if center.len() != 1 {
                return None;
            }
            let s = side(&center)?;
            (side(&legs)? != s).then_some(Component::D4(s))
        }
        _ => None,
    }
}

fn components(matrix: &CoxeterMatrix, nodes: &[usize]) -> Vec<Vec<usize>> {
    let mut left: BTreeSet<usize> = nodes.iter().copied().collect();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        left.remove(&start);
        let mut comp = vec![start];
        let mut i = 0;
        while i < comp.len() {
            let x = comp[i];
            let next: Vec<usize> = left.iter().copied().filter(|&y| matrix.entry(x, y) >= 3).collect();
            for y in next {
                left.remove(&y);
                comp.push(y);
            }
            i += 1;
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Classifies `I(s) u I(t)` by the shape of its Coxeter graph alone and
/// checks the predicted `(m, L(s), L(t))` against the embedding.
pub fn classify_structure(emb: &QuasiSplitEmbedding, s: usize, t: usize) -> Result<OrbitPairClass> {
    let no = |why: String| Err(Error::NoMatchingCase(why));
    if s == t || s >= emb.partition.len() || t >= emb.partition.len() {
        return no(format!("({s}, {t}) is not a pair of distinct folded generators"));
    }
    let matrix = emb.ambient.matrix();
    let is = &emb.partition.blocks()[s];
    let it = &emb.partition.blocks()[t];
    let in_s = |x: usize| is.contains(&x);
    let nodes: Vec<usize> = is.iter().chain(it.iter()).copied().collect();
    let comps = components(matrix, &nodes);
    let mut kinds = Vec::new();
    for c in &comps {
        match component_type(matrix, c, &in_s) {
            Some(k) => kinds.push(k),
            None => {
                let names: Vec<&str> = c.iter().map(|&x| matrix.name(x)).collect();
                return no(format!("component {{{}}} matches no row", names.join(", ")));
            }
        }
    }
    let k = comps.len();
    let first = kinds[0];
    let (case, m, l_s, l_t, k) = if kinds.iter().all(|c| *c == Component::Singleton) {
        let (a, b) = (is.len(), it.len());
        (PairCase::A1Commuting { l: b }, 2, a as i32, b as i32, a)
    } else if kinds.iter().any(|c| *c != first) {
        return no("components of different types".into());
    } else {
        let ki = k as i32;
        let pick = |marked_in_s: bool, marked: i32, other: i32| {
            if marked_in_s {
                (marked, other)
            } else {
                (other, marked)
            }
        };
        match first {
            Component::Singleton => unreachable!("handled above"),
            Component::Dihedral(m) => (PairCase::EqualParameters, m, ki, ki, k),
            Component::A3(x) => {
                let (a, b) = pick(x, ki, 2 * ki);
                (PairCase::A3, 4, a, b, k)
            }
            Component::A4(x) => {
                let (a, b) = pick(x, 3 * ki, 2 * ki);
                (PairCase::A4, 4, a, b, k)
            }
            Component::D4(x) => {
                let (a, b) = pick(x, ki, 3 * ki);
                (PairCase::D4, 6, a, b, k)
            }
            Component::F4(x) => {
                let (a, b) = pick(x, 4 * ki, 2 * ki);
                (PairCase::F4, 8, a, b, k)
            }
        }
    };
    let class = OrbitPairClass { case, m, l_s, l_t, k };
    let actual = (
        emb.folded_matrix().entry(s, t),
        emb.weights.get(s),
        emb.weights.get(t),
    );
    if actual != (m, l_s, l_t) {
        return no(format!(
            "row {} predicts (m, L(s), L(t)) = {:?}, embedding has {:?}",
            case.label(),
            (m, l_s, l_t),
            actual
        ));
    }
    Ok(class)
}

/// Classification of a folded pair for a quasi-split embedding. Embeddings
/// without an action never match.
pub fn classify_orbit_pair(emb: &QuasiSplitEmbedding, s: usize, t: usize) -> Result<OrbitPairClass> {
    if !emb.is_quasi_split() {
        return Err(Error::NoMatchingCase("embedding is not quasi-split (no group action)".into()));
    }
    classify_structure(emb, s, t)
}
