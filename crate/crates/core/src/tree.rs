//! Words over `{1, 2}`, rooted planar binary trees as prefix-closed word
//! sets, and the detachment calculus used by the down operators.
//!
//! A tree is stored as the set of its nodes. The root is the empty word
//! (written `0`), `v1` is the left child of `v` and `v2` its right child.
//!
//! The down operators remove nodes along the *removal chain* `r_T`: the
//! nodes without a right child met by walking from the root, stepping right
//! whenever possible and left otherwise. Removing a node `w` without a right
//! child promotes its left subtree into its place (`T ⊖ w`).

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    Left = 1,
    Right = 2,
}

impl Letter {
    pub fn digit(self) -> char {
        match self {
            Letter::Left => '1',
            Letter::Right => '2',
        }
    }
}

/// A finite word over `{1, 2}`, i.e. a position in the infinite binary tree.
///
/// Words are ordered shortlex (shorter first, then lexicographically), which
/// is the canonical order used for all text output.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn root() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        Word(letters.into_iter().collect())
    }

    /// `letter` repeated `n` times.
    pub fn repeat(letter: Letter, n: usize) -> Self {
        Word(vec![letter; n])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, letter: Letter) -> Word {
        let mut letters = self.0.clone();
        letters.push(letter);
        Word(letters)
    }

    pub fn left(&self) -> Word {
        self.child(Letter::Left)
    }

    pub fn right(&self) -> Word {
        self.child(Letter::Right)
    }

    pub fn parent(&self) -> Option<Word> {
        let (_, init) = self.0.split_last()?;
        Some(Word(init.to_vec()))
    }

    pub fn last(&self) -> Option<Letter> {
        self.0.last().copied()
    }

    /// Prefix order: `self ≤ other` iff `self` is an initial segment of `other`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn strip_prefix(&self, prefix: &Word) -> Option<Word> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Word(s.to_vec()))
    }

    pub fn concat(&self, suffix: &Word) -> Word {
        let mut letters = self.0.clone();
        letters.extend_from_slice(&suffix.0);
        Word(letters)
    }

    /// All prefixes from the root up to and including `self`.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.0.len()).map(move |l| Word(self.0[..l].to_vec()))
    }

    /// Insert a left step right after the prefix `at`, if `at ≤ self`.
    /// This is the single-node inclusion `wv ↦ w1v`.
    fn insert_left_after(&self, at: &Word) -> Option<Word> {
        let rest = self.strip_prefix(at)?;
        Some(at.left().concat(&rest))
    }

    /// Inverse of [`Word::insert_left_after`]: `w1v ↦ wv`.
    fn remove_left_after(&self, at: &Word) -> Option<Word> {
        let rest = self.strip_prefix(&at.left())?;
        Some(at.concat(&rest))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for l in &self.0 {
            write!(f, "{}", l.digit())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Word::root());
        }
        if s.is_empty() {
            return Err(Error::Parse("empty word (write the root as 0)".into()));
        }
        s.chars()
            .map(|c| match c {
                '1' => Ok(Letter::Left),
                '2' => Ok(Letter::Right),
                _ => Err(Error::Parse(format!("invalid letter {c:?} in word {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A rooted planar binary tree: a finite prefix-closed set of words.
///
/// Trees are ordered by node count first, then by their shortlex-sorted
/// node lists.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Tree {
    nodes: BTreeSet<Word>,
}

impl Ord for Tree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.nodes
            .len()
            .cmp(&other.nodes.len())
            .then_with(|| self.nodes.cmp(&other.nodes))
    }
}

impl PartialOrd for Tree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Tree {
    pub fn empty() -> Self {
        Tree::default()
    }

    /// The one-node tree `{0}`.
    pub fn single() -> Self {
        Tree { nodes: BTreeSet::from([Word::root()]) }
    }

    /// Validates that `words` is prefix-closed and builds the tree.
    pub fn from_words(words: impl IntoIterator<Item = Word>) -> Result<Self> {
        let nodes: BTreeSet<Word> = words.into_iter().collect();
        // shortlex order visits parents first, so the first failure is a
        // shortest offending word
        for w in &nodes {
            if let Some(p) = w.parent() {
                if !nodes.contains(&p) {
                    return Err(Error::NotPrefixClosed(w.clone()));
                }
            }
        }
        Ok(Tree { nodes })
    }

    pub(crate) fn from_set_unchecked(nodes: BTreeSet<Word>) -> Self {
        debug_assert!(nodes.iter().all(|w| w.parent().is_none_or(|p| nodes.contains(&p))));
        Tree { nodes }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.nodes.contains(w)
    }

    /// Nodes in shortlex order.
    pub fn nodes(&self) -> impl Iterator<Item = &Word> + '_ {
        self.nodes.iter()
    }

    pub fn node_set(&self) -> &BTreeSet<Word> {
        &self.nodes
    }

    pub fn is_subset(&self, other: &Tree) -> bool {
        self.nodes.is_subset(&other.nodes)
    }

    /// `T_v`: the nodes of `T` having `v` as a prefix (absolute words).
    pub fn subtree(&self, v: &Word) -> BTreeSet<Word> {
        self.nodes.iter().filter(|w| v.is_prefix_of(w)).cloned().collect()
    }

    /// Positions where a node can be attached: words outside the tree whose
    /// parent is a node. For the empty tree this is just the root.
    pub fn slots(&self) -> Vec<Word> {
        if self.is_empty() {
            return vec![Word::root()];
        }
        let mut out: Vec<Word> = self
            .nodes
            .iter()
            .flat_map(|v| [v.left(), v.right()])
            .filter(|c| !self.nodes.contains(c))
            .collect();
        out.sort();
        out
    }

    /// `R_T`: nodes without a right child.
    pub fn right_childless(&self) -> BTreeSet<Word> {
        self.nodes.iter().filter(|w| !self.nodes.contains(&w.right())).cloned().collect()
    }

    /// `E_T`: nodes `w` such that for every decomposition `w = v1w'` the word
    /// `v2` is not a node.
    pub fn spine_set(&self) -> BTreeSet<Word> {
        self.nodes
            .iter()
            .filter(|w| {
                w.letters().iter().enumerate().all(|(pos, &l)| {
                    l != Letter::Left
                        || !self.nodes.contains(&Word::from_letters(w.letters()[..pos].iter().copied()).right())
                })
            })
            .cloned()
            .collect()
    }

    /// `r_T = E_T ∩ R_T`, listed from the root downwards. The set is a chain
    /// under the prefix order, so sorting by length sorts it by prefix.
    pub fn removal_chain(&self) -> Vec<Word> {
        let spine = self.spine_set();
        let mut chain: Vec<Word> = self.right_childless().intersection(&spine).cloned().collect();
        chain.sort();
        chain
    }

    /// `T ⊖ w` for `w ∈ R_T`: drop `w` and move its left subtree up one level.
    pub fn detach_one(&self, w: &Word) -> Result<Tree> {
        if !self.nodes.contains(w) || self.nodes.contains(&w.right()) {
            return Err(Error::NotRightChildless(w.clone()));
        }
        let nodes = self
            .nodes
            .iter()
            .filter_map(|x| match x.strip_prefix(w) {
                None => Some(x.clone()),
                Some(_) => x.remove_left_after(w),
            })
            .collect();
        Ok(Tree::from_set_unchecked(nodes))
    }

    fn chain_prefix(&self, i: usize) -> Result<Vec<Word>> {
        let mut chain = self.removal_chain();
        if chain.len() < i {
            return Err(Error::ChainTooShort { needed: i, available: chain.len() });
        }
        chain.truncate(i);
        Ok(chain)
    }

    /// `T ⊖ r_{T,i}`: removes `w_{T,i}`, then `w_{T,i-1}`, down to `w_{T,1}`.
    ///
    /// Removing a deeper chain node leaves the shallower ones on the chain of
    /// the intermediate tree, so the words of `r_{T,i}` are used throughout.
    pub fn detach_chain(&self, i: usize) -> Result<Tree> {
        let chain = self.chain_prefix(i)?;
        let mut t = self.clone();
        for w in chain.iter().rev() {
            t = t.detach_one(w)?;
        }
        Ok(t)
    }

    /// `ν_{T,i}`: the natural inclusion of `T ⊖ r_{T,i}` into `T`, whose image
    /// is `T ∖ r_{T,i}`.
    pub fn include_chain(&self, i: usize, w: &Word) -> Result<Word> {
        let detached = self.detach_chain(i)?;
        if !detached.contains(w) {
            return Err(Error::NotInDetachedTree(w.clone()));
        }
        Ok(Self::step_include(&self.chain_prefix(i)?, w))
    }

    /// `ν̃_{T,i}`: extension of [`Tree::include_chain`] to all words.
    ///
    /// Built from the single-step maps `w_l v ↦ w_l 1 v` composed from the
    /// top of the chain down. It is injective, its image avoids `r_{T,i}`,
    /// and on words whose longest prefix in `T ⊖ r_{T,i}` is followed by a
    /// slot of `T` it equals `ν_{T,i}(v)v'`.
    pub fn extended_include(&self, i: usize, w: &Word) -> Result<Word> {
        Ok(Self::step_include(&self.chain_prefix(i)?, w))
    }

    /// Left inverse of [`Tree::extended_include`]; `None` outside its image.
    pub fn extended_include_inverse(&self, i: usize, w: &Word) -> Result<Option<Word>> {
        let chain = self.chain_prefix(i)?;
        let mut u = w.clone();
        for at in chain.iter().rev() {
            if at.is_prefix_of(&u) {
                match u.remove_left_after(at) {
                    Some(v) => u = v,
                    None => return Ok(None),
                }
            }
        }
        Ok(Some(u))
    }

    fn step_include(chain: &[Word], w: &Word) -> Word {
        chain.iter().fold(w.clone(), |u, at| u.insert_left_after(at).unwrap_or(u))
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (idx, w) in self.nodes.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(|| Error::Parse(format!("tree must be written as {{...}}: {s:?}")))?;
        if inner.trim().is_empty() {
            return Ok(Tree::empty());
        }
        let words = inner.split(',').map(str::parse).collect::<Result<Vec<Word>>>()?;
        Tree::from_words(words)
    }
}

impl Serialize for Tree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Tree {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All trees with exactly `n` nodes, in canonical order.
pub fn enumerate_trees(n: usize) -> Vec<Tree> {
    trees_of_size(n).to_vec()
}

/// Cached form of [`enumerate_trees`].
pub fn trees_of_size(n: usize) -> Arc<[Tree]> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<[Tree]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut trees: Vec<Tree> = if n == 0 {
        vec![Tree::empty()]
    } else {
        let mut out = Vec::new();
        for left_size in 0..n {
            let lefts = trees_of_size(left_size);
            let rights = trees_of_size(n - 1 - left_size);
            for l in lefts.iter() {
                for r in rights.iter() {
                    let mut nodes = BTreeSet::from([Word::root()]);
                    nodes.extend(l.nodes().map(|w| Word::root().left().concat(w)));
                    nodes.extend(r.nodes().map(|w| Word::root().right().concat(w)));
                    out.push(Tree::from_set_unchecked(nodes));
                }
            }
        }
        out
    };
    trees.sort();
    let trees: Arc<[Tree]> = trees.into();
    cache.lock().unwrap().insert(n, trees.clone());
    trees
}

/// All trees with at most `n` nodes, smallest first.
pub fn trees_up_to(n: usize) -> Vec<Tree> {
    (0..=n).flat_map(|k| trees_of_size(k).to_vec()).collect()
}
