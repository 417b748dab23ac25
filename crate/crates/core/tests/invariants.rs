//! Exhaustive invariants on small trees, each checked against a direct
//! reimplementation from the definitions.

use std::collections::BTreeSet;

use pbt_schur::graph::{down_image, down_preimages, up_edge_degree, up_successors, edges};
use pbt_schur::operators::{check_adjointness, check_commutation, check_transposed_commutation};
use pbt_schur::tree::trees_up_to;
use pbt_schur::{Family, Letter, Tree, UpFamily, Word};

/// `ν_{T,w}`: `w v ↦ w 1 v`, identity elsewhere.
fn nu_single(w: &Word, x: &Word) -> Word {
    match x.strip_prefix(w) {
        Some(rest) => w.left().concat(&rest),
        None => x.clone(),
    }
}

fn all_words(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::root()];
    let mut layer = vec![Word::root()];
    for _ in 0..max_len {
        layer = layer.iter().flat_map(|w| [w.left(), w.right()]).collect();
        out.extend(layer.iter().cloned());
    }
    out
}

#[test]
fn detach_one_and_single_inclusion() {
    for t in trees_up_to(7) {
        for w in t.right_childless() {
            let d = t.detach_one(&w).unwrap();
            assert!(Tree::from_words(d.nodes().cloned()).is_ok());
            assert_eq!(d.len() + 1, t.len());
            let image: BTreeSet<Word> = d.nodes().map(|x| nu_single(&w, x)).collect();
            let mut expected = t.node_set().clone();
            expected.remove(&w);
            assert_eq!(image, expected, "T={t} w={w}");
            for a in d.nodes() {
                for b in d.nodes() {
                    assert_eq!(a.is_prefix_of(b), nu_single(&w, a).is_prefix_of(&nu_single(&w, b)), "T={t} w={w}");
                }
            }
        }
    }
}

#[test]
fn removal_chain_is_a_chain() {
    for t in trees_up_to(7) {
        let chain = t.removal_chain();
        for pair in chain.windows(2) {
            assert!(pair[0].is_prefix_of(&pair[1]) && pair[0] != pair[1], "T={t}");
        }
    }
}

#[test]
fn chain_inclusion_image() {
    for t in trees_up_to(7) {
        let chain = t.removal_chain();
        for i in 0..=chain.len() {
            let d = t.detach_chain(i).unwrap();
            assert_eq!(d.len() + i, t.len());
            let image: BTreeSet<Word> = d.nodes().map(|x| t.include_chain(i, x).unwrap()).collect();
            assert_eq!(image.len(), d.len());
            let removed: BTreeSet<Word> = chain[..i].iter().cloned().collect();
            let expected: BTreeSet<Word> = t.node_set().difference(&removed).cloned().collect();
            assert_eq!(image, expected, "T={t} i={i}");
        }
        assert!(t.detach_chain(chain.len() + 1).is_err());
    }
}

#[test]
fn extended_inclusion_is_injective_and_avoids_chain() {
    let words = all_words(6);
    for t in trees_up_to(5) {
        let chain = t.removal_chain();
        for i in 0..=chain.len() {
            let images: BTreeSet<Word> = words.iter().map(|w| t.extended_include(i, w).unwrap()).collect();
            assert_eq!(images.len(), words.len(), "T={t} i={i}");
            assert!(chain[..i].iter().all(|c| !images.contains(c)), "T={t} i={i}");
            let d = t.detach_chain(i).unwrap();
            for x in d.nodes() {
                assert_eq!(t.extended_include(i, x).unwrap(), t.include_chain(i, x).unwrap());
            }
        }
    }
}

#[test]
fn serialization_round_trip() {
    for t in trees_up_to(7) {
        let text = t.to_string();
        assert_eq!(text.parse::<Tree>().unwrap(), t);
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(serde_json::from_str::<Tree>(&json).unwrap(), t);
    }
}

#[test]
fn down_in_degree() {
    for t in trees_up_to(7) {
        let chain_len = t.removal_chain().len();
        for i in 0..=chain_len + 1 {
            let in_degree = usize::from(down_image(&t, i).is_some());
            assert_eq!(in_degree, usize::from(chain_len >= i), "T={t} i={i}");
        }
    }
}

#[test]
fn degree_one_up_graphs_agree_up_to_seven_nodes() {
    for t in trees_up_to(6) {
        assert_eq!(
            up_successors(&t, 1, UpFamily::RightStrict),
            up_successors(&t, 1, UpFamily::LeftStrict),
            "T={t}"
        );
    }
    let strip = |f| edges(f, 1, 7).unwrap().into_iter().map(|e| (e.from, e.to)).collect::<Vec<_>>();
    assert_eq!(strip(Family::Up(UpFamily::RightStrict)), strip(Family::Up(UpFamily::LeftStrict)));
}

/// Up-edge test written directly from the node-form condition.
fn up_edge_by_form(family: UpFamily, from: &Tree, to: &Tree) -> bool {
    let (a, b) = match family {
        UpFamily::RightStrict => (Letter::Left, Letter::Right),
        UpFamily::LeftStrict => (Letter::Right, Letter::Left),
    };
    from.is_subset(to)
        && to.nodes().filter(|w| !from.contains(w)).all(|w| {
            if from.is_empty() {
                return w.letters().iter().all(|&l| l == a);
            }
            from.nodes().any(|v| match w.strip_prefix(v) {
                Some(s) => {
                    let l = s.letters();
                    (!l.is_empty() && l.iter().all(|&x| x == a)) || (l.first() == Some(&b) && l[1..].iter().all(|&x| x == a))
                }
                None => false,
            })
        })
}

#[test]
fn up_edges_match_node_form() {
    let trees = trees_up_to(5);
    for family in UpFamily::ALL {
        for s in &trees {
            for t in &trees {
                let expected = up_edge_by_form(family, s, t).then(|| t.len() - s.len());
                assert_eq!(up_edge_degree(family, s, t), expected, "{family} {s} -> {t}");
            }
        }
    }
}

#[test]
fn down_preimages_invert_down_image() {
    for t in trees_up_to(5) {
        for i in 0..=3 {
            for p in down_preimages(&t, i) {
                assert_eq!(down_image(&p, i).as_ref(), Some(&t));
            }
        }
    }
}

#[test]
fn commutation_and_adjoint_relations() {
    let r = check_adjointness(6, 3);
    assert!(r.passed(), "{:?}", r.counterexamples);
    for family in UpFamily::ALL {
        let r = check_transposed_commutation(family, 5, 3, 3);
        assert!(r.passed(), "{:?}", r.counterexamples);
        assert!(check_commutation(family, 0, 0, 0).passed());
    }
}
