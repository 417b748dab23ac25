//! The graded graphs `G_{U_i}`, `G_{U'_i}` and `G_{D_i}` on trees, the
//! two-step path sets `N`, `S` and `S̃`, and DOT / JSON-lines export.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::{trees_of_size, trees_up_to, Letter, Tree, Word};

/// Largest `max_nodes` accepted by [`export_dot`] and [`edges`].
pub const MAX_EXPORT_NODES: usize = 8;

/// Which up graph: `U` adds left-going chains into free slots
/// ("right-strictly"), `U'` adds right-going chains ("left-strictly").
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UpFamily {
    RightStrict,
    LeftStrict,
}

impl UpFamily {
    pub const ALL: [UpFamily; 2] = [UpFamily::RightStrict, UpFamily::LeftStrict];

    /// Direction in which added chains grow below their slot.
    pub fn chain_letter(self) -> Letter {
        match self {
            UpFamily::RightStrict => Letter::Left,
            UpFamily::LeftStrict => Letter::Right,
        }
    }

    fn off_letter(self) -> Letter {
        match self {
            UpFamily::RightStrict => Letter::Right,
            UpFamily::LeftStrict => Letter::Left,
        }
    }

    /// Largest `k` in the commutation sums: `min(i, j)` for `U`,
    /// `min(1, i, j)` for `U'`.
    pub fn max_k(self, i: usize, j: usize) -> usize {
        match self {
            UpFamily::RightStrict => i.min(j),
            UpFamily::LeftStrict => i.min(j).min(1),
        }
    }
}

impl fmt::Display for UpFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UpFamily::RightStrict => "U",
            UpFamily::LeftStrict => "U'",
        })
    }
}

impl FromStr for UpFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "U" => Ok(UpFamily::RightStrict),
            "U'" | "Up" => Ok(UpFamily::LeftStrict),
            other => Err(Error::Parse(format!("unknown up family {other:?} (expected U or U')"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Up(UpFamily),
    Down,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Up(u) => u.fmt(f),
            Family::Down => f.write_str("D"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "D" => Ok(Family::Down),
            other => other.parse().map(Family::Up),
        }
    }
}

/// Degree of the up edge `(from, to)` in the given family, or `None` when
/// `to` is not obtained from `from` by adding nodes of the required form.
///
/// This is the literal membership test: every added word must be `v·c^n`
/// or `v·o·c^n` for some node `v` of `from` (`c` the chain letter, `o` the
/// other letter), or `c^n` when `from` is empty.
pub fn up_edge_degree(family: UpFamily, from: &Tree, to: &Tree) -> Option<usize> {
    if !from.is_subset(to) {
        return None;
    }
    let chain = family.chain_letter();
    let off = family.off_letter();
    let all_chain = |w: &Word| w.letters().iter().all(|&l| l == chain);
    let well_formed = to.nodes().filter(|w| !from.contains(w)).all(|w| {
        if from.is_empty() {
            return all_chain(w);
        }
        from.nodes().any(|v| match w.strip_prefix(v) {
            None => false,
            Some(rest) => match rest.letters().split_first() {
                None => false,
                Some((&first, tail)) => {
                    (first == chain || first == off) && tail.iter().all(|&l| l == chain)
                }
            },
        })
    });
    well_formed.then(|| to.len() - from.len())
}

/// All `T'` with `(T, T') ∈ G_{U_i}` (or `G_{U'_i}`), in canonical order.
///
/// Constructive: an up edge places one chain (possibly empty) in each free
/// slot of `T`, so the successors correspond to weak compositions of `i`
/// over the slots.
pub fn up_successors(tree: &Tree, i: usize, family: UpFamily) -> Vec<Tree> {
    let slots = tree.slots();
    let letter = family.chain_letter();
    let mut out = Vec::new();
    let mut lengths = vec![0usize; slots.len()];
    fill_compositions(i, 0, &mut lengths, &mut |lengths| {
        let mut nodes = tree.node_set().clone();
        for (slot, &len) in slots.iter().zip(lengths) {
            nodes.extend((0..len).map(|m| slot.concat(&Word::repeat(letter, m))));
        }
        out.push(Tree::from_set_unchecked(nodes));
    });
    out.sort();
    out
}

fn fill_compositions(remaining: usize, pos: usize, parts: &mut [usize], emit: &mut impl FnMut(&[usize])) {
    if pos + 1 == parts.len() {
        parts[pos] = remaining;
        emit(parts);
        return;
    }
    for take in 0..=remaining {
        parts[pos] = take;
        fill_compositions(remaining - take, pos + 1, parts, emit);
    }
}

/// Reference form of [`up_successors`]: filter all trees of the right size.
pub fn up_successors_by_filter(tree: &Tree, i: usize, family: UpFamily) -> Vec<Tree> {
    trees_of_size(tree.len() + i)
        .iter()
        .filter(|t| up_edge_degree(family, tree, t) == Some(i))
        .cloned()
        .collect()
}

/// All `T''` with `(T'', T) ∈ G_{U_i}`: the support of `U_i^* T`.
pub fn up_predecessors(tree: &Tree, i: usize, family: UpFamily) -> Vec<Tree> {
    let Some(size) = tree.len().checked_sub(i) else {
        return Vec::new();
    };
    let index = cached_index(Index::Up(family), size, i, || {
        let mut map: HashMap<Tree, Vec<Tree>> = HashMap::new();
        for t in trees_of_size(size).iter() {
            for succ in up_successors(t, i, family) {
                map.entry(succ).or_default().push(t.clone());
            }
        }
        map
    });
    index.get(tree).cloned().unwrap_or_default()
}

/// Reference form of [`up_predecessors`].
pub fn up_predecessors_by_filter(tree: &Tree, i: usize, family: UpFamily) -> Vec<Tree> {
    let Some(size) = tree.len().checked_sub(i) else {
        return Vec::new();
    };
    trees_of_size(size)
        .iter()
        .filter(|t| up_edge_degree(family, t, tree) == Some(i))
        .cloned()
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Index {
    Up(UpFamily),
    Down,
}

type Preimages = Arc<HashMap<Tree, Vec<Tree>>>;
type IndexCache = Mutex<HashMap<(Index, usize, usize), Preimages>>;

/// Reverse-edge indices keyed by (graph, source size, degree); built once
/// per key by scanning all trees of the source size.
fn cached_index(kind: Index, size: usize, degree: usize, build: impl FnOnce() -> HashMap<Tree, Vec<Tree>>) -> Preimages {
    static CACHE: OnceLock<IndexCache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(kind, size, degree)) {
        return hit.clone();
    }
    let built = Arc::new(build());
    cache.lock().unwrap().entry((kind, size, degree)).or_insert(built).clone()
}

/// `D_i T`: the unique `T'` with `(T', T) ∈ G_{D_i}`, if `|r_T| ≥ i`.
pub fn down_image(tree: &Tree, i: usize) -> Option<Tree> {
    tree.detach_chain(i).ok()
}

/// All `T''` with `|T''| = |T| + i` and `D_i T'' = T`: the support of `D_i^* T`.
pub fn down_preimages(tree: &Tree, i: usize) -> Vec<Tree> {
    let size = tree.len() + i;
    let index = cached_index(Index::Down, size, i, || {
        let mut map: HashMap<Tree, Vec<Tree>> = HashMap::new();
        for t in trees_of_size(size).iter() {
            if let Some(img) = down_image(t, i) {
                map.entry(img).or_default().push(t.clone());
            }
        }
        map
    });
    index.get(tree).cloned().unwrap_or_default()
}

/// Reference form of [`down_preimages`].
pub fn down_preimages_by_filter(tree: &Tree, i: usize) -> Vec<Tree> {
    trees_of_size(tree.len() + i)
        .iter()
        .filter(|t| down_image(t, i).as_ref() == Some(tree))
        .cloned()
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PairVariant {
    /// Up then down: `(T, mid) ∈ G_{U_i}`, `(T', mid) ∈ G_{D_j}`.
    N,
    /// Down then up: `(mid, T) ∈ G_{D_j}`, `(mid, T') ∈ G_{U_i}`.
    S,
}

/// A two-step path from `source` to `target` through `mid`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PathPair {
    pub variant: PairVariant,
    pub source: Tree,
    pub mid: Tree,
    pub target: Tree,
    pub up_degree: usize,
    pub down_degree: usize,
}

impl PathPair {
    /// Checks both edges against the graph definitions.
    pub fn is_valid(&self, family: UpFamily) -> bool {
        match self.variant {
            PairVariant::N => {
                up_edge_degree(family, &self.source, &self.mid) == Some(self.up_degree)
                    && down_image(&self.mid, self.down_degree).as_ref() == Some(&self.target)
            }
            PairVariant::S => {
                down_image(&self.source, self.down_degree).as_ref() == Some(&self.mid)
                    && up_edge_degree(family, &self.mid, &self.target) == Some(self.up_degree)
            }
        }
    }
}

impl fmt::Display for PathPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (up, down) = (self.up_degree, self.down_degree);
        match self.variant {
            PairVariant::N => write!(f, "{} -U{up}-> {} <-D{down}- {}", self.source, self.mid, self.target),
            PairVariant::S => write!(f, "{} -D{down}-> {} -U{up}-> {}", self.source, self.mid, self.target),
        }
    }
}

/// `N_{i,j}(T, T')`: up by `i`, then down by `j`, landing on `T'`.
pub fn paths_n(source: &Tree, target: &Tree, i: usize, j: usize, family: UpFamily) -> Vec<PathPair> {
    if source.len() + i != target.len() + j {
        return Vec::new();
    }
    up_successors(source, i, family)
        .into_iter()
        .filter(|mid| down_image(mid, j).as_ref() == Some(target))
        .map(|mid| PathPair {
            variant: PairVariant::N,
            source: source.clone(),
            mid,
            target: target.clone(),
            up_degree: i,
            down_degree: j,
        })
        .collect()
}

/// `S_{j,i}(T, T')`: at most one element, since the down step from `T` is
/// determined by `j`.
pub fn paths_s(source: &Tree, target: &Tree, j: usize, i: usize, family: UpFamily) -> Option<PathPair> {
    let mid = down_image(source, j)?;
    (up_edge_degree(family, &mid, target) == Some(i)).then(|| PathPair {
        variant: PairVariant::S,
        source: source.clone(),
        mid,
        target: target.clone(),
        up_degree: i,
        down_degree: j,
    })
}

/// `S̃_{j,i}(T, T')`: the disjoint union over `k` of `S_{j-k,i-k}(T, T')`,
/// tagged by `k`.
pub fn paths_s_tilde(source: &Tree, target: &Tree, j: usize, i: usize, family: UpFamily) -> Vec<(usize, PathPair)> {
    (0..=family.max_k(i, j))
        .filter_map(|k| paths_s(source, target, j - k, i - k, family).map(|p| (k, p)))
        .collect()
}

/// One edge of an exported graph; D edges are listed as (smaller, larger).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: Tree,
    pub to: Tree,
    pub family: String,
    pub degree: usize,
}

/// Edges of `G_{X_degree}` among trees with at most `max_nodes` nodes.
pub fn edges(family: Family, degree: usize, max_nodes: usize) -> Result<Vec<Edge>> {
    check_export_limit(max_nodes)?;
    Ok(edges_unbounded(family, degree, max_nodes))
}

pub fn check_export_limit(max_nodes: usize) -> Result<()> {
    if max_nodes > MAX_EXPORT_NODES {
        return Err(Error::LimitExceeded(format!(
            "graph export is limited to {MAX_EXPORT_NODES} nodes, got {max_nodes}"
        )));
    }
    Ok(())
}

/// [`edges`] without the size limit.
pub fn edges_unbounded(family: Family, degree: usize, max_nodes: usize) -> Vec<Edge> {
    let mut out = Vec::new();
    for t in trees_up_to(max_nodes) {
        match family {
            Family::Up(up) if t.len() + degree <= max_nodes => {
                out.extend(up_successors(&t, degree, up).into_iter().map(|to| (t.clone(), to)));
            }
            Family::Up(_) => {}
            Family::Down => {
                if let Some(from) = down_image(&t, degree) {
                    out.push((from, t.clone()));
                }
            }
        }
    }
    out.sort();
    out.into_iter()
        .map(|(from, to)| Edge { from, to, family: family.to_string(), degree })
        .collect()
}

/// DOT digraph of [`edges`], with every tree of at most `max_nodes` nodes as
/// a vertex.
pub fn export_dot(family: Family, degree: usize, max_nodes: usize) -> Result<String> {
    check_export_limit(max_nodes)?;
    Ok(render_dot(family, degree, max_nodes, &edges_unbounded(family, degree, max_nodes)))
}

pub fn render_dot(family: Family, degree: usize, max_nodes: usize, edge_list: &[Edge]) -> String {
    let mut out = format!("digraph \"{family}_{degree}\" {{\n  node [shape=box];\n");
    for t in trees_up_to(max_nodes) {
        out.push_str(&format!("  \"{t}\";\n"));
    }
    for e in edge_list {
        out.push_str(&format!("  \"{}\" -> \"{}\" [label=\"{}\"];\n", e.from, e.to, e.degree));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::trees_up_to;

    const U: UpFamily = UpFamily::RightStrict;
    const UP: UpFamily = UpFamily::LeftStrict;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn names(v: &[Tree]) -> Vec<String> {
        v.iter().map(Tree::to_string).collect()
    }

    #[test]
    fn up_edge_examples() {
        assert_eq!(up_edge_degree(U, &Tree::single(), &t("{0,1,11,111}")), Some(3));
        let x = t("{0,1,12}");
        assert_eq!(up_edge_degree(U, &x, &x), Some(0));
        assert_eq!(up_edge_degree(U, &Tree::single(), &t("{0,2,22}")), None);
        assert_eq!(up_edge_degree(UP, &Tree::single(), &t("{0,2,22}")), Some(2));
        assert_eq!(up_edge_degree(U, &Tree::empty(), &t("{0,2}")), None);
        assert_eq!(up_edge_degree(U, &t("{0,2}"), &t("{0,1}")), None);
    }

    #[test]
    fn successor_examples() {
        assert_eq!(up_successors(&Tree::single(), 3, U).len(), 4);
        assert_eq!(names(&up_successors(&Tree::single(), 1, U)), ["{0,1}", "{0,2}"]);
        assert_eq!(names(&up_successors(&Tree::single(), 2, UP)), ["{0,1,2}", "{0,1,12}", "{0,2,22}"]);
        assert_eq!(names(&up_successors(&Tree::empty(), 2, U)), ["{0,1}"]);
        assert_eq!(names(&up_successors(&Tree::empty(), 2, UP)), ["{0,2}"]);
    }

    #[test]
    fn successors_match_filter() {
        for tree in trees_up_to(5) {
            for i in 0..=3 {
                for fam in UpFamily::ALL {
                    assert_eq!(up_successors(&tree, i, fam), up_successors_by_filter(&tree, i, fam));
                }
            }
        }
    }

    #[test]
    fn down_examples() {
        assert_eq!(down_image(&t("{0,1,12}"), 1), Some(t("{0,2}")));
        assert_eq!(down_image(&t("{0,1,12}"), 0), Some(t("{0,1,12}")));
        assert_eq!(down_image(&Tree::single(), 2), None);
        assert_eq!(names(&down_preimages(&Tree::single(), 1)), ["{0,1}", "{0,2}"]);
        assert_eq!(down_preimages(&t("{0,2}"), 0), vec![t("{0,2}")]);
        assert_eq!(down_preimages(&Tree::empty(), 1), vec![Tree::single()]);
    }

    #[test]
    fn indexed_preimages_match_filter() {
        for tree in trees_up_to(5) {
            for i in 0..=3 {
                assert_eq!(down_preimages(&tree, i), down_preimages_by_filter(&tree, i));
                for fam in UpFamily::ALL {
                    assert_eq!(up_predecessors(&tree, i, fam), up_predecessors_by_filter(&tree, i, fam));
                }
            }
        }
    }

    #[test]
    fn in_degree_of_down_graph() {
        for tree in trees_up_to(7) {
            let chain = tree.removal_chain().len();
            for i in 0..=chain + 1 {
                let in_degree = usize::from(down_image(&tree, i).is_some());
                assert_eq!(in_degree, usize::from(chain >= i), "{tree} {i}");
            }
        }
    }

    #[test]
    fn degree_one_up_graphs_coincide() {
        for tree in trees_up_to(6) {
            assert_eq!(up_successors(&tree, 1, U), up_successors(&tree, 1, UP));
        }
    }

    #[test]
    fn path_set_examples() {
        let one = Tree::single();
        let n = paths_n(&one, &one, 1, 1, U);
        assert_eq!(n.len(), 2);
        assert_eq!(n[0].mid, t("{0,1}"));
        assert_eq!(n[1].mid, t("{0,2}"));
        let x = t("{0,1,12}");
        assert_eq!(paths_n(&x, &x, 0, 0, U).len(), 1);
        let n = paths_n(&Tree::empty(), &Tree::empty(), 1, 1, U);
        assert_eq!(n.len(), 1);
        assert_eq!(n[0].mid, one);

        let s = paths_s_tilde(&one, &one, 1, 1, U);
        assert_eq!(s.len(), 2);
        assert_eq!((s[0].0, &s[0].1.mid), (0, &Tree::empty()));
        assert_eq!((s[1].0, &s[1].1.mid), (1, &one));
        let s0 = paths_s_tilde(&x, &x, 0, 0, U);
        assert_eq!(s0.len(), 1);
        assert_eq!(s0[0].1.mid, x);
        for a in trees_up_to(3) {
            for b in trees_up_to(3) {
                assert!(paths_s_tilde(&a, &b, 2, 2, UP).iter().all(|(k, _)| *k <= 1));
            }
        }
    }

    #[test]
    fn n_and_s_tilde_equinumerous() {
        let all = trees_up_to(5);
        for fam in UpFamily::ALL {
            for a in &all {
                for b in &all {
                    for i in 0..=3 {
                        for j in 0..=3 {
                            let n = paths_n(a, b, i, j, fam);
                            assert!(n.iter().all(|p| p.is_valid(fam)));
                            let s = paths_s_tilde(a, b, j, i, fam);
                            assert!(s.iter().all(|(_, p)| p.is_valid(fam)));
                            assert_eq!(n.len(), s.len(), "{fam} {a} {b} {i} {j}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dot_export() {
        let dot = export_dot(Family::Down, 1, 2).unwrap();
        assert_eq!(dot.matches(";\n").count() - 1, 4 + 3);
        assert!(dot.contains("\"{0}\" -> \"{0,1}\" [label=\"1\"];"));
        assert!(dot.contains("\"{0}\" -> \"{0,2}\" [label=\"1\"];"));
        assert!(dot.contains("\"{}\" -> \"{0}\" [label=\"1\"];"));

        let u = edges(Family::Up(U), 1, 1).unwrap();
        assert_eq!(u.len(), 1);
        assert_eq!((u[0].from.clone(), u[0].to.clone()), (Tree::empty(), Tree::single()));

        let lines = |f| -> Vec<String> {
            export_dot(f, 1, 3).unwrap().lines().filter(|l| l.contains("->")).map(String::from).collect()
        };
        assert_eq!(lines(Family::Up(U)), lines(Family::Up(UP)));
        assert!(matches!(export_dot(Family::Down, 1, 9), Err(Error::LimitExceeded(_))));
    }
}
