//! Explicit bijections `N_{i,j}(T, T') → S̃_{j,i}(T, T')`.
//!
//! [`forward`] sends an up-then-down path to a tagged down-then-up path.
//! [`inverse`] rebuilds the middle tree directly from the chain calculus;
//! [`inverse_search`] is the exhaustive reference it is checked against.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{down_image, paths_n, up_successors, PairVariant, PathPair, UpFamily};
use crate::operators::{LinComb, Operator};
use crate::report::{par_map, Report};
use crate::tree::{trees_of_size, trees_up_to, Tree, Word};

/// Maps an `N`-element `(T, T'', T')` to `(k, S-element)` with
/// `k = j - |r_{T'',j} ∩ r_T|` and middle tree `T ⊖ r_{T,j-k}`.
pub fn forward(family: UpFamily, n: &PathPair) -> Result<(usize, PathPair)> {
    if n.variant != PairVariant::N || !n.is_valid(family) {
        return Err(Error::InvalidPathPair(format!("{family} N-path: {n}")));
    }
    let (i, j) = (n.up_degree, n.down_degree);
    let source_chain: BTreeSet<Word> = n.source.removal_chain().into_iter().collect();
    let shared = n.mid.removal_chain().into_iter().take(j).filter(|w| source_chain.contains(w)).count();
    let k = j - shared;
    let up_degree = i.checked_sub(k).ok_or_else(|| Error::InvalidPathPair(format!("k={k} exceeds i={i} for {n}")))?;
    let s = PathPair {
        variant: PairVariant::S,
        source: n.source.clone(),
        mid: n.source.detach_chain(j - k)?,
        target: n.target.clone(),
        up_degree,
        down_degree: j - k,
    };
    Ok((k, s))
}

fn check_s_input(family: UpFamily, k: usize, s: &PathPair) -> Result<()> {
    let i = s.up_degree + k;
    let j = s.down_degree + k;
    if s.variant != PairVariant::S || !s.is_valid(family) || k > family.max_k(i, j) {
        return Err(Error::InvalidPathPair(format!("{family} S-path with k={k}: {s}")));
    }
    Ok(())
}

/// Reference inverse: the unique element of `N_{i,j}(T, T')` that
/// [`forward`] maps to `(k, s)`, found by exhaustive search.
pub fn inverse_search(family: UpFamily, k: usize, s: &PathPair) -> Result<PathPair> {
    check_s_input(family, k, s)?;
    let (i, j) = (s.up_degree + k, s.down_degree + k);
    let mut hits = paths_n(&s.source, &s.target, i, j, family)
        .into_iter()
        .filter(|n| forward(family, n).ok().as_ref() == Some(&(k, s.clone())));
    match (hits.next(), hits.next()) {
        (None, _) => Err(Error::NoPreimage(format!("k={k} {s}"))),
        (Some(n), None) => Ok(n),
        (Some(_), Some(_)) => Err(Error::AmbiguousPreimage(format!("k={k} {s}"))),
    }
}

/// Constructive inverse of [`forward`].
///
/// With `a = j - k`, the new tree is `ν̃_{T,a}(T') ∪ r_{T,a} ∪ R`, where `R`
/// is a chain of `n + k` nodes grown in the family's direction from
/// `ν̃_{T,a}(σ)` and `n = |T'_σ|`. The slot `σ` is the right child of the
/// preimage of `w_{T,a+1}` if that node exists, otherwise of the deepest
/// ancestor of `w_{T,a}` off the chain, otherwise the root.
pub fn inverse(family: UpFamily, k: usize, s: &PathPair) -> Result<PathPair> {
    check_s_input(family, k, s)?;
    let t = &s.source;
    let a = s.down_degree;
    let (i, j) = (s.up_degree + k, a + k);
    let chain = t.removal_chain();
    let preimage_slot = |omega: &Word| -> Result<Word> {
        match t.extended_include_inverse(a, omega)? {
            Some(w) if s.mid.contains(&w) => Ok(w.right()),
            _ => Err(Error::NoPreimage(format!("{omega} has no preimage in {}", s.mid))),
        }
    };
    let sigma = if chain.len() > a {
        preimage_slot(&chain[a])?
    } else if a >= 1 {
        let top = &chain[a - 1];
        match top.prefixes().filter(|p| p != top && !chain.contains(p)).last() {
            Some(omega) => preimage_slot(&omega)?,
            None => Word::root(),
        }
    } else {
        Word::root()
    };
    let tau = t.extended_include(a, &sigma)?;
    let n = s.target.nodes().filter(|x| sigma.is_prefix_of(x)).count();
    let letter = family.chain_letter();

    let mut nodes = BTreeSet::new();
    for x in s.target.nodes() {
        nodes.insert(t.extended_include(a, x)?);
    }
    nodes.extend(chain[..a].iter().cloned());
    nodes.extend((0..n + k).map(|m| tau.concat(&Word::repeat(letter, m))));
    let mid = Tree::from_words(nodes)?;

    let result = PathPair {
        variant: PairVariant::N,
        source: t.clone(),
        mid,
        target: s.target.clone(),
        up_degree: i,
        down_degree: j,
    };
    match forward(family, &result) {
        Ok(back) if back == (k, s.clone()) => Ok(result),
        _ => Err(Error::NoPreimage(format!("constructed {result} does not map back to k={k} {s}"))),
    }
}

/// All `(k, S-element)` pairs of `S̃_{j,i}(T, ·)` over every target.
fn s_tilde_from(family: UpFamily, t: &Tree, i: usize, j: usize) -> Vec<(usize, PathPair)> {
    let mut out = Vec::new();
    for k in 0..=family.max_k(i, j) {
        let Some(mid) = down_image(t, j - k) else { continue };
        for target in up_successors(&mid, i - k, family) {
            out.push((
                k,
                PathPair {
                    variant: PairVariant::S,
                    source: t.clone(),
                    mid: mid.clone(),
                    target,
                    up_degree: i - k,
                    down_degree: j - k,
                },
            ));
        }
    }
    out
}

/// All elements of `N_{i,j}(T, ·)` over every target.
fn n_from(family: UpFamily, t: &Tree, i: usize, j: usize) -> Vec<PathPair> {
    up_successors(t, i, family)
        .into_iter()
        .filter_map(|mid| {
            let target = down_image(&mid, j)?;
            Some(PathPair { variant: PairVariant::N, source: t.clone(), mid, target, up_degree: i, down_degree: j })
        })
        .collect()
}

fn check_cell(family: UpFamily, t: &Tree, i: usize, j: usize, max_nodes: usize) -> Vec<String> {
    let mut fails = Vec::new();
    let small = |p: &PathPair| p.target.len() <= max_nodes;
    let ns: Vec<PathPair> = n_from(family, t, i, j).into_iter().filter(small).collect();
    let ss: BTreeSet<(usize, String)> = s_tilde_from(family, t, i, j)
        .into_iter()
        .filter(|(_, p)| small(p))
        .map(|(k, p)| (k, p.to_string()))
        .collect();
    let tag = format!("{family} T={t} i={i} j={j}");

    let mut image = BTreeSet::new();
    for n in &ns {
        match forward(family, n) {
            Ok((k, s)) => {
                if !s.is_valid(family) || k > family.max_k(i, j) {
                    fails.push(format!("{tag}: forward({n}) = k={k} {s} is not in S~"));
                }
                if !image.insert((k, s.to_string())) {
                    fails.push(format!("{tag}: forward not injective at k={k} {s}"));
                }
                match inverse(family, k, &s) {
                    Ok(back) if &back == n => {}
                    Ok(back) => fails.push(format!("{tag}: inverse(forward({n})) = {back}")),
                    Err(e) => fails.push(format!("{tag}: inverse(forward({n})): {e}")),
                }
            }
            Err(e) => fails.push(format!("{tag}: forward({n}): {e}")),
        }
    }
    if image != ss {
        fails.push(format!("{tag}: |N| = {}, |S~| = {}, forward image differs from S~", ns.len(), ss.len()));
    }
    for (k, s) in s_tilde_from(family, t, i, j).into_iter().filter(|(_, p)| small(p)) {
        let fast = inverse(family, k, &s);
        let slow = inverse_search(family, k, &s);
        if fast != slow {
            fails.push(format!("{tag}: k={k} {s}: constructive {fast:?} vs search {slow:?}"));
        }
        if let Ok(n) = fast {
            if forward(family, &n).ok() != Some((k, s.clone())) {
                fails.push(format!("{tag}: forward(inverse(k={k} {s})) differs"));
            }
        }
    }
    fails
}

fn collect_cells(report: &mut Report, outcomes: Vec<Vec<String>>) {
    for fails in outcomes {
        report.checked += 1;
        for f in fails {
            report.fail(f);
        }
    }
}

fn cells(max_nodes: usize, max_deg: usize) -> Vec<(Tree, usize, usize)> {
    let mut out = Vec::new();
    for t in trees_up_to(max_nodes) {
        for i in 0..=max_deg {
            for j in 0..=max_deg {
                out.push((t.clone(), i, j));
            }
        }
    }
    out
}

/// Bijectivity of [`forward`], both round trips and agreement of the
/// constructive inverse with the search, for all `T, T'` with at most
/// `max_nodes` nodes and `i, j ≤ max_deg`.
pub fn check_bijection(family: UpFamily, max_nodes: usize, max_deg: usize) -> Report {
    let mut report = Report::new(
        format!("N_(i,j)(T,T') <-> S~_(j,i)(T,T') for {family}"),
        &[("max_nodes", max_nodes), ("max_deg", max_deg)],
    );
    let cells = cells(max_nodes, max_deg);
    let outcomes = par_map(&cells, |(t, i, j)| check_cell(family, t, *i, *j, max_nodes));
    collect_cells(&mut report, outcomes);
    report
}

/// `⟨D_j X_i T, T'⟩ = |N_{i,j}(T, T')|` and
/// `Σ_k ⟨X_{i-k} D_{j-k} T, T'⟩ = |S̃_{j,i}(T, T')|`.
pub fn check_path_counts(family: UpFamily, max_nodes: usize, max_deg: usize) -> Report {
    let mut report = Report::new(
        format!("<D_j {family}_i T, T'> = |N_(i,j)(T,T')|"),
        &[("max_nodes", max_nodes), ("max_deg", max_deg)],
    );
    let up = Operator::Up(family);
    let cells = cells(max_nodes, max_deg);
    let outcomes = par_map(&cells, |(t, i, j)| {
        let (i, j) = (*i, *j);
        let Some(size) = (t.len() + i).checked_sub(j).filter(|&s| s <= max_nodes) else { return Vec::new() };
        let v = LinComb::basis(t.clone());
        let lhs = Operator::Down.apply(j, &up.apply(i, &v));
        let rhs = (0..=family.max_k(i, j))
            .fold(LinComb::zero(), |acc, k| &acc + &up.apply(i - k, &Operator::Down.apply(j - k, &v)));
        let mut fails = Vec::new();
        for target in trees_of_size(size).iter() {
            let n = paths_n(t, target, i, j, family).len() as i64;
            let s = crate::graph::paths_s_tilde(t, target, j, i, family).len() as i64;
            if lhs.coeff(target) != n || rhs.coeff(target) != s {
                fails.push(format!(
                    "{family} T={t} T'={target} i={i} j={j}: pairing {} vs |N| {n}; pairing {} vs |S~| {s}",
                    lhs.coeff(target),
                    rhs.coeff(target)
                ));
            }
        }
        fails
    });
    collect_cells(&mut report, outcomes);
    report
}
