//! Right-strictly-increasing, left-strictly-increasing and binary-searching
//! labellings of trees, and their identification with paths in the graded
//! graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{down_image, up_edge_degree, Family, UpFamily};
use crate::tree::{Letter, Tree, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LabellingKind {
    /// `φ(w) ≤ φ(v)` on the left subtree of `w`, `<` on the right subtree.
    RightStrict,
    /// `φ(w) < φ(v)` on the left subtree of `w`, `≤` on the right subtree.
    LeftStrict,
    /// `ψ(w) ≥ ψ(v)` on the left subtree of `w`, `<` on the right subtree.
    BinarySearch,
}

impl LabellingKind {
    pub const ALL: [LabellingKind; 3] =
        [LabellingKind::RightStrict, LabellingKind::LeftStrict, LabellingKind::BinarySearch];

    /// The graph whose paths from `∅` these labellings encode.
    pub fn path_kind(self) -> Family {
        match self {
            LabellingKind::RightStrict => Family::Up(UpFamily::RightStrict),
            LabellingKind::LeftStrict => Family::Up(UpFamily::LeftStrict),
            LabellingKind::BinarySearch => Family::Down,
        }
    }

    pub fn for_path_kind(kind: Family) -> Self {
        match kind {
            Family::Up(UpFamily::RightStrict) => LabellingKind::RightStrict,
            Family::Up(UpFamily::LeftStrict) => LabellingKind::LeftStrict,
            Family::Down => LabellingKind::BinarySearch,
        }
    }

    /// Whether `ancestor ↦ a`, `descendant ↦ d` is allowed when the
    /// descendant lies on the `side` subtree of the ancestor.
    fn allows(self, side: Letter, a: u32, d: u32) -> bool {
        match (self, side) {
            (LabellingKind::RightStrict, Letter::Left) => a <= d,
            (LabellingKind::RightStrict, Letter::Right) => a < d,
            (LabellingKind::LeftStrict, Letter::Left) => a < d,
            (LabellingKind::LeftStrict, Letter::Right) => a <= d,
            (LabellingKind::BinarySearch, Letter::Left) => a >= d,
            (LabellingKind::BinarySearch, Letter::Right) => a < d,
        }
    }
}

impl fmt::Display for LabellingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LabellingKind::RightStrict => "right-strict",
            LabellingKind::LeftStrict => "left-strict",
            LabellingKind::BinarySearch => "binary-search",
        })
    }
}

impl FromStr for LabellingKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "right-strict" => Ok(LabellingKind::RightStrict),
            "left-strict" => Ok(LabellingKind::LeftStrict),
            "binary-search" => Ok(LabellingKind::BinarySearch),
            other => Err(Error::Parse(format!("unknown labelling kind {other:?}"))),
        }
    }
}

/// A total map from the nodes of a tree to `{1, …, bound}`.
///
/// Construction only checks totality and range; [`Labelling::is_valid`]
/// checks the monotonicity conditions of the kind.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Labelling {
    tree: Tree,
    kind: LabellingKind,
    values: BTreeMap<Word, u32>,
    bound: u32,
}

impl Labelling {
    pub fn new(tree: Tree, kind: LabellingKind, values: BTreeMap<Word, u32>, bound: u32) -> Result<Self> {
        if values.len() != tree.len() || !tree.nodes().all(|w| values.contains_key(w)) {
            return Err(Error::InvalidLabelling("labels must be given for exactly the nodes of the tree".into()));
        }
        if let Some((w, v)) = values.iter().find(|(_, &v)| v == 0 || v > bound) {
            return Err(Error::InvalidLabelling(format!("label {v} of node {w} is outside 1..={bound}")));
        }
        Ok(Labelling { tree, kind, values, bound })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn kind(&self) -> LabellingKind {
        self.kind
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn values(&self) -> &BTreeMap<Word, u32> {
        &self.values
    }

    pub fn get(&self, w: &Word) -> Option<u32> {
        self.values.get(w).copied()
    }

    /// Labels in shortlex node order.
    pub fn label_vector(&self) -> Vec<u32> {
        self.values.values().copied().collect()
    }

    /// Full check: every node against every node of its left and right
    /// subtrees.
    pub fn is_valid(&self) -> bool {
        self.values.iter().all(|(w, &a)| {
            [Letter::Left, Letter::Right].into_iter().all(|side| {
                self.tree
                    .subtree(&w.child(side))
                    .iter()
                    .all(|v| self.kind.allows(side, a, self.values[v]))
            })
        })
    }

    /// Parent–child check only. Equivalent to [`Labelling::is_valid`] for the
    /// two strict kinds, strictly weaker for binary-searching labellings.
    pub fn is_locally_valid(&self) -> bool {
        self.values.iter().all(|(w, &d)| match (w.parent(), w.last()) {
            (Some(p), Some(side)) => self.kind.allows(side, self.values[&p], d),
            _ => true,
        })
    }

    /// Exponent vector of `t^φ = Π t_{φ(w)}` over `n` variables.
    ///
    /// # Panics
    ///
    /// If some label exceeds `n`.
    pub fn weight(&self, n: usize) -> Vec<u32> {
        let mut exps = vec![0u32; n];
        for &v in self.values.values() {
            assert!(v as usize <= n, "label {v} exceeds the {n} available variables");
            exps[v as usize - 1] += 1;
        }
        exps
    }

    /// The path `(∅ = T⁰, …, T^m)` encoded by this labelling, `m = bound`.
    pub fn to_path(&self) -> Result<Path> {
        if !self.is_valid() {
            return Err(Error::InvalidLabelling(self.to_string()));
        }
        let m = self.bound as usize;
        let kind = self.kind.path_kind();
        let trees = match kind {
            Family::Up(_) => (0..=m)
                .map(|level| {
                    let nodes = self.values.iter().filter(|(_, &v)| v as usize <= level).map(|(w, _)| w.clone());
                    Tree::from_words(nodes)
                })
                .collect::<Result<Vec<_>>>()?,
            Family::Down => {
                // peel off the largest label, which sits on the top of the removal chain
                let mut trees = vec![self.tree.clone()];
                let mut tree = self.tree.clone();
                let mut labels = self.values.clone();
                for level in (1..=m as u32).rev() {
                    let count = labels.values().filter(|&&v| v == level).count();
                    let chain = tree.removal_chain();
                    let top_is_chain = chain.len() >= count
                        && chain[..count].iter().all(|w| labels[w] == level);
                    if !top_is_chain {
                        return Err(Error::InvalidLabelling(format!("level {level} is not a removal chain prefix")));
                    }
                    let smaller = tree.detach_chain(count)?;
                    labels = smaller
                        .nodes()
                        .map(|x| Ok((x.clone(), labels[&tree.include_chain(count, x)?])))
                        .collect::<Result<_>>()?;
                    tree = smaller;
                    trees.push(tree.clone());
                }
                trees.reverse();
                trees
            }
        };
        Path::new(kind, trees)
    }

    /// All valid labellings of `tree` by `{1, …, m}`, lexicographic in the
    /// label vector (nodes in shortlex order).
    pub fn enumerate(tree: &Tree, kind: LabellingKind, m: u32) -> Vec<Labelling> {
        let nodes: Vec<Word> = tree.nodes().cloned().collect();
        // ancestor constraints as (ancestor index, side) per node
        let constraints: Vec<Vec<(usize, Letter)>> = nodes
            .iter()
            .map(|w| {
                (0..w.len())
                    .map(|l| {
                        let anc = Word::from_letters(w.letters()[..l].iter().copied());
                        (nodes.binary_search(&anc).expect("prefix-closed"), w.letters()[l])
                    })
                    .collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut current = vec![0u32; nodes.len()];
        enumerate_rec(0, m, kind, &constraints, &mut current, &mut |labels| {
            let values = nodes.iter().cloned().zip(labels.iter().copied()).collect();
            out.push(Labelling { tree: tree.clone(), kind, values, bound: m });
        });
        out
    }
}

fn enumerate_rec(
    pos: usize,
    m: u32,
    kind: LabellingKind,
    constraints: &[Vec<(usize, Letter)>],
    current: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if pos == current.len() {
        emit(current);
        return;
    }
    for value in 1..=m {
        if constraints[pos].iter().all(|&(a, side)| kind.allows(side, current[a], value)) {
            current[pos] = value;
            enumerate_rec(pos + 1, m, kind, constraints, current, emit);
        }
    }
}

/// Shorthand for [`Labelling::enumerate`].
pub fn enumerate_labellings(tree: &Tree, kind: LabellingKind, m: u32) -> Vec<Labelling> {
    Labelling::enumerate(tree, kind, m)
}

impl fmt::Display for Labelling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}; {{", self.kind)?;
        for (idx, (w, v)) in self.values.iter().enumerate() {
            if idx > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}:{v}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for Labelling {
    type Err = Error;

    /// Parses `kind; {word:label, …}`. The bound is the largest label.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, body) = s.split_once(';').ok_or_else(|| Error::Parse(format!("missing ';' in {s:?}")))?;
        let kind: LabellingKind = kind.parse()?;
        let inner = body
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("labels must be written as {{...}}: {body:?}")))?;
        let mut values = BTreeMap::new();
        for item in inner.split(',').filter(|p| !p.trim().is_empty()) {
            let (w, v) = item.split_once(':').ok_or_else(|| Error::Parse(format!("expected word:label, got {item:?}")))?;
            let v: u32 = v.trim().parse().map_err(|_| Error::Parse(format!("bad label {v:?}")))?;
            values.insert(w.parse::<Word>()?, v);
        }
        let tree = Tree::from_words(values.keys().cloned())?;
        let bound = values.values().copied().max().unwrap_or(0);
        Labelling::new(tree, kind, values, bound)
    }
}

/// A path `(∅ = T⁰, T¹, …, T^m)` in one of the graded graphs; steps of
/// degree zero are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Path {
    #[serde(serialize_with = "serialize_display")]
    kind: Family,
    trees: Vec<Tree>,
}

fn serialize_display<S: serde::Serializer>(kind: &Family, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(kind)
}

impl Path {
    /// Validates that the path starts at `∅` and that each consecutive pair
    /// is an edge of the graph named by `kind`.
    pub fn new(kind: Family, trees: Vec<Tree>) -> Result<Self> {
        if trees.first().is_none_or(|t| !t.is_empty()) {
            return Err(Error::MalformedPath(0));
        }
        for (step, pair) in trees.windows(2).enumerate() {
            let (lo, hi) = (&pair[0], &pair[1]);
            let ok = match kind {
                Family::Up(fam) => up_edge_degree(fam, lo, hi).is_some(),
                Family::Down => {
                    hi.len() >= lo.len() && down_image(hi, hi.len() - lo.len()).as_ref() == Some(lo)
                }
            };
            if !ok {
                return Err(Error::MalformedPath(step + 1));
            }
        }
        Ok(Path { kind, trees })
    }

    pub fn kind(&self) -> Family {
        self.kind
    }

    pub fn trees(&self) -> &[Tree] {
        &self.trees
    }

    pub fn last(&self) -> &Tree {
        self.trees.last().expect("paths are nonempty")
    }

    /// Number of steps `m`.
    pub fn len(&self) -> usize {
        self.trees.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Node-count increments of each step.
    pub fn step_degrees(&self) -> Vec<usize> {
        self.trees.windows(2).map(|p| p[1].len() - p[0].len()).collect()
    }

    /// Inverse of [`Labelling::to_path`].
    pub fn to_labelling(&self) -> Result<Labelling> {
        let kind = LabellingKind::for_path_kind(self.kind);
        let bound = self.len() as u32;
        let mut values: BTreeMap<Word, u32> = BTreeMap::new();
        for (step, pair) in self.trees.windows(2).enumerate() {
            let level = step as u32 + 1;
            let (lo, hi) = (&pair[0], &pair[1]);
            match self.kind {
                Family::Up(_) => {
                    values.extend(hi.nodes().filter(|w| !lo.contains(w)).map(|w| (w.clone(), level)));
                }
                Family::Down => {
                    let d = hi.len() - lo.len();
                    let mut next = BTreeMap::new();
                    for x in lo.nodes() {
                        next.insert(hi.include_chain(d, x)?, values[x]);
                    }
                    next.extend(hi.removal_chain().into_iter().take(d).map(|w| (w, level)));
                    values = next;
                }
            }
        }
        Labelling::new(self.last().clone(), kind, values, bound)
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: ", self.kind)?;
        for (idx, t) in self.trees.iter().enumerate() {
            if idx > 0 {
                f.write_str(" -> ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}
