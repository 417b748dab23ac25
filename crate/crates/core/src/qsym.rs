//! Quasi-symmetric generating polynomials of trees.
//!
//! `S^D_{T/T'}(t_1..t_n) = ⟨D(t_1)⋯D(t_n) T, T'⟩` and
//! `S^U_{T/T'}(t_1..t_n) = ⟨U(t_n)⋯U(t_1) T', T⟩` (likewise for `U'`).

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::UpFamily;
use crate::labelling::{enumerate_labellings, LabellingKind};
use crate::operators::{Operator, PolyLinComb};
use crate::poly::Polynomial;
use crate::report::{par_map, Report};
use crate::tree::{trees_of_size, trees_up_to, Tree};

/// Which generating polynomial to compute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symbol {
    D,
    Up(UpFamily),
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::D, Symbol::Up(UpFamily::RightStrict), Symbol::Up(UpFamily::LeftStrict)];

    /// The labelling family whose weight enumerator equals `S^X_T`.
    pub fn labelling_kind(self) -> LabellingKind {
        match self {
            Symbol::D => LabellingKind::BinarySearch,
            Symbol::Up(UpFamily::RightStrict) => LabellingKind::RightStrict,
            Symbol::Up(UpFamily::LeftStrict) => LabellingKind::LeftStrict,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::D => f.write_str("D"),
            Symbol::Up(fam) => write!(f, "{fam}"),
        }
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "D" => Ok(Symbol::D),
            other => other
                .parse::<UpFamily>()
                .map(Symbol::Up)
                .map_err(|_| Error::Parse(format!("unknown symbol {other:?} (expected D, U, U')"))),
        }
    }
}

/// `X(t_{var+1}) v` restricted to trees with at most `max_len` nodes.
fn raise_within(v: &PolyLinComb, op: Operator, var: usize, max_len: usize) -> PolyLinComb {
    let mut out = PolyLinComb::zero(v.nvars());
    for (t, c) in v.terms() {
        for i in 0..=max_len.saturating_sub(t.len()) {
            let weight = c * &Polynomial::var_power(v.nvars(), var, i as u32);
            for img in op.apply_tree(i, t) {
                out.add_term(img, &weight);
            }
        }
    }
    out
}

/// `S^X_{T/T'}` in `n` variables; zero when no path joins `T'` to `T`.
pub fn schur_poly(symbol: Symbol, tree: &Tree, to: &Tree, n: usize) -> Polynomial {
    let Some(cap) = tree.len().checked_sub(to.len()) else { return Polynomial::zero(n) };
    match symbol {
        Symbol::D => {
            let mut v = PolyLinComb::basis(n, tree.clone());
            for var in (0..n).rev() {
                v = v.apply_gen(Operator::Down, var, cap);
            }
            v.coeff(to)
        }
        Symbol::Up(family) => {
            let mut v = PolyLinComb::basis(n, to.clone());
            for var in 0..n {
                v = raise_within(&v, Operator::Up(family), var, tree.len());
            }
            v.coeff(tree)
        }
    }
}

/// `Σ_φ t^φ` over the labellings of `tree` of the given kind with labels in
/// `1..=n`.
pub fn labelling_sum(tree: &Tree, kind: LabellingKind, n: usize) -> Polynomial {
    let mut out = Polynomial::zero(n);
    for lab in enumerate_labellings(tree, kind, n as u32) {
        out.add_term(lab.weight(n), 1);
    }
    out
}

/// Increasing index sequences of length `k` drawn from `0..n`.
fn placements(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if acc.len() == k {
            out.push(acc.clone());
            return;
        }
        for v in start..n {
            acc.push(v);
            go(v + 1, n, k, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Whether the coefficient of `t_{i_1}^{a_1}⋯t_{i_k}^{a_k}` depends only on
/// the composition `(a_1, …, a_k)` for all `i_1 < … < i_k`.
pub fn is_quasisymmetric(p: &Polynomial) -> bool {
    let n = p.nvars();
    p.terms().all(|(exps, c)| {
        let comp: Vec<u32> = exps.iter().copied().filter(|&a| a > 0).collect();
        placements(n, comp.len()).into_iter().all(|idx| {
            let mut e = vec![0; n];
            for (&v, &a) in idx.iter().zip(&comp) {
                e[v] = a;
            }
            p.coeff(&e) == c
        })
    })
}

/// Bidegree-`(degree, degree)` part of `Π_{i ≤ p, j ≤ q} a(x_i y_j)` in the
/// variables `x_1..x_p, y_1..y_q`, with `a(z) = 1/(1-z)` for `U` and
/// `a(z) = 1+z` for `U'`.
pub fn cauchy_kernel(family: UpFamily, p: usize, q: usize, degree: usize) -> Polynomial {
    let nvars = p + q;
    let mut acc = Polynomial::one(nvars);
    for i in 0..p {
        for j in 0..q {
            let top = match family {
                UpFamily::RightStrict => degree,
                UpFamily::LeftStrict => degree.min(1),
            };
            let mut factor = Polynomial::zero(nvars);
            for m in 0..=top as u32 {
                let mut e = vec![0; nvars];
                e[i] = m;
                e[p + j] = m;
                factor.add_term(e, 1);
            }
            acc = (&acc * &factor).filter_terms(|e| e[..p].iter().sum::<u32>() as usize <= degree);
        }
    }
    acc.filter_terms(|e| e[..p].iter().sum::<u32>() as usize == degree)
}

/// `Σ_{T ∈ 𝕋_n} S^X_T(x) S^D_T(y)` in the variables `x_1..x_p, y_1..y_q`.
pub fn cauchy_sum(family: UpFamily, p: usize, q: usize, degree: usize) -> Polynomial {
    let nvars = p + q;
    let trees = trees_of_size(degree);
    let parts = par_map(&trees, |t| {
        let x = schur_poly(Symbol::Up(family), t, &Tree::empty(), p).embed(nvars, 0);
        let y = schur_poly(Symbol::D, t, &Tree::empty(), q).embed(nvars, p);
        &x * &y
    });
    parts.iter().fold(Polynomial::zero(nvars), |acc, part| &acc + part)
}

/// The Cauchy identity degree by degree for `n ≤ max_degree`.
pub fn cauchy_check(family: UpFamily, p: usize, q: usize, max_degree: usize) -> Report {
    let kernel = match family {
        UpFamily::RightStrict => "1/(1 - x_i y_j)",
        UpFamily::LeftStrict => "(1 + x_i y_j)",
    };
    let mut report = Report::new(
        format!("sum_T S^{family}_T(x) S^D_T(y) = prod {kernel}"),
        &[("p", p), ("q", q), ("max_degree", max_degree)],
    );
    for n in 0..=max_degree {
        let lhs = cauchy_sum(family, p, q, n);
        let rhs = cauchy_kernel(family, p, q, n);
        report.record(lhs == rhs, || format!("degree {n}: lhs = {lhs}, rhs = {rhs}"));
    }
    report
}

/// `S^X_T = Σ_φ t^φ` for every symbol, `T` with at most `max_nodes` nodes and
/// `n ≤ max_vars` variables.
pub fn check_labelling_sums(max_nodes: usize, max_vars: usize) -> Report {
    let mut report = Report::new("S^X_T = sum over labellings", &[("max_nodes", max_nodes), ("max_vars", max_vars)]);
    let trees = trees_up_to(max_nodes);
    let outcomes = par_map(&trees, |t| {
        let mut out = Vec::new();
        for symbol in Symbol::ALL {
            for n in 0..=max_vars {
                let lhs = schur_poly(symbol, t, &Tree::empty(), n);
                let rhs = labelling_sum(t, symbol.labelling_kind(), n);
                out.push((lhs != rhs).then(|| format!("{symbol} T={t} n={n}: {lhs} vs {rhs}")));
            }
        }
        out
    });
    report.absorb(outcomes.into_iter().flatten());
    report
}

/// Quasi-symmetry of `S^X_T` for every symbol, `T` with at most `max_nodes`
/// nodes and `n ≤ max_vars`.
pub fn check_quasisymmetry(max_nodes: usize, max_vars: usize) -> Report {
    let mut report = Report::new("S^X_T is quasi-symmetric", &[("max_nodes", max_nodes), ("max_vars", max_vars)]);
    let trees = trees_up_to(max_nodes);
    let outcomes = par_map(&trees, |t| {
        let mut out = Vec::new();
        for symbol in Symbol::ALL {
            for n in 0..=max_vars {
                let p = schur_poly(symbol, t, &Tree::empty(), n);
                out.push((!is_quasisymmetric(&p)).then(|| format!("{symbol} T={t} n={n}: {p}")));
            }
        }
        out
    });
    report.absorb(outcomes.into_iter().flatten());
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn mono(e: &[u32]) -> Polynomial {
        Polynomial::monomial(e.to_vec(), 1)
    }

    fn h2() -> Polynomial {
        &(&mono(&[2, 0]) + &mono(&[1, 1])) + &mono(&[0, 2])
    }

    #[test]
    fn schur_examples() {
        let d = schur_poly(Symbol::D, &t("{0,1,12}"), &Tree::empty(), 2);
        assert_eq!(d, mono(&[1, 2]));
        assert_eq!(d.to_string(), "t1 t2^2");
        assert_eq!(d.swap_vars(0, 1).coeff(&[1, 2]), 0);
        assert!(is_quasisymmetric(&d));
        let d3 = schur_poly(Symbol::D, &t("{0,1,12}"), &Tree::empty(), 3);
        assert!(is_quasisymmetric(&d3));
        assert_eq!(d3.coeff(&[1, 0, 2]), 1);
        assert_eq!(d3.coeff(&[0, 1, 2]), 1);

        assert_eq!(schur_poly(Symbol::Up(UpFamily::RightStrict), &t("{0,1}"), &Tree::empty(), 2), h2());
        for symbol in Symbol::ALL {
            let tree = t("{0,1,12}");
            assert_eq!(schur_poly(symbol, &tree, &tree, 3), Polynomial::one(3));
            assert!(schur_poly(symbol, &t("{0}"), &tree, 3).is_zero());
        }
        assert_eq!(schur_poly(Symbol::D, &Tree::empty(), &Tree::empty(), 3).to_string(), "1");
    }

    #[test]
    fn skew_is_homogeneous() {
        for symbol in Symbol::ALL {
            for big in trees_up_to(4) {
                for small in trees_up_to(big.len()) {
                    let p = schur_poly(symbol, &big, &small, 3);
                    assert!(p.is_homogeneous_of((big.len() - small.len()) as u32), "{symbol} {big}/{small}");
                }
            }
        }
    }

    #[test]
    fn labelling_sum_examples() {
        assert_eq!(labelling_sum(&t("{0,1}"), LabellingKind::RightStrict, 2), h2());
        assert_eq!(labelling_sum(&t("{0,2}"), LabellingKind::LeftStrict, 2), h2());
        for kind in LabellingKind::ALL {
            assert_eq!(labelling_sum(&Tree::empty(), kind, 3), Polynomial::one(3));
        }
        assert!(check_labelling_sums(4, 3).passed());
    }

    #[test]
    fn quasisymmetry_predicate() {
        let e1 = &(&mono(&[1, 0, 0]) + &mono(&[0, 1, 0])) + &mono(&[0, 0, 1]);
        assert!(is_quasisymmetric(&e1));
        assert!(!is_quasisymmetric(&mono(&[2, 1, 0])));
        let m21 = &(&mono(&[2, 1, 0]) + &mono(&[2, 0, 1])) + &mono(&[0, 2, 1]);
        assert!(is_quasisymmetric(&m21));
        assert!(is_quasisymmetric(&Polynomial::zero(3)));
        assert!(check_quasisymmetry(4, 3).passed());
    }

    /// Number of `p × q` matrices with entries in `0..=max_entry` and total `n`.
    fn matrix_count(cells: usize, max_entry: usize, n: usize) -> i64 {
        if cells == 0 {
            return i64::from(n == 0);
        }
        (0..=max_entry.min(n)).map(|e| matrix_count(cells - 1, max_entry, n - e)).sum()
    }

    #[test]
    fn cauchy_mass_matches_matrix_counts() {
        for n in 0..=4 {
            assert_eq!(cauchy_kernel(UpFamily::RightStrict, 2, 2, n).coefficient_sum(), matrix_count(4, n, n));
            assert_eq!(cauchy_kernel(UpFamily::LeftStrict, 2, 2, n).coefficient_sum(), matrix_count(4, 1, n));
        }
        assert_eq!(cauchy_sum(UpFamily::RightStrict, 2, 2, 2).coefficient_sum(), 10);
        assert_eq!(cauchy_sum(UpFamily::LeftStrict, 2, 2, 2).coefficient_sum(), 6);
        assert!(cauchy_check(UpFamily::RightStrict, 2, 2, 3).passed());
        assert!(cauchy_check(UpFamily::LeftStrict, 2, 2, 3).passed());
    }
}
