//! Formal ℤ-linear combinations of trees and the operators acting on them.
//!
//! `U_i`, `U'_i` and `D_i` are the linear extensions of the graph edges;
//! the starred operators are their transposes for the pairing in which the
//! trees form an orthonormal basis. The `check_*` functions verify the
//! commutation relations and their corollaries exhaustively on graded
//! pieces.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::graph::{down_image, down_preimages, up_predecessors, up_successors, UpFamily};
use crate::poly::Polynomial;
use crate::report::{par_map, Report};
use crate::tree::{trees_up_to, Tree};

/// A finite ℤ-linear combination of trees. The empty tree is a basis
/// element like any other; the zero combination has no terms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LinComb {
    terms: BTreeMap<Tree, i64>,
}

impl LinComb {
    pub fn zero() -> Self {
        LinComb::default()
    }

    pub fn basis(tree: Tree) -> Self {
        LinComb { terms: BTreeMap::from([(tree, 1)]) }
    }

    pub fn add_term(&mut self, tree: Tree, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(tree.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&tree);
        }
    }

    pub fn coeff(&self, tree: &Tree) -> i64 {
        self.terms.get(tree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical tree order.
    pub fn terms(&self) -> impl Iterator<Item = (&Tree, i64)> + '_ {
        self.terms.iter().map(|(t, &c)| (t, c))
    }

    pub fn scale(&self, factor: i64) -> Self {
        let mut out = LinComb::zero();
        for (t, c) in self.terms() {
            out.add_term(t.clone(), c * factor);
        }
        out
    }

    /// `⟨a, b⟩ = Σ_T a_T b_T`.
    pub fn pairing(&self, other: &LinComb) -> i64 {
        self.terms().map(|(t, c)| c * other.coeff(t)).sum()
    }
}

impl FromIterator<(Tree, i64)> for LinComb {
    fn from_iter<I: IntoIterator<Item = (Tree, i64)>>(iter: I) -> Self {
        let mut out = LinComb::zero();
        for (t, c) in iter {
            out.add_term(t, c);
        }
        out
    }
}

impl Add for &LinComb {
    type Output = LinComb;

    fn add(self, rhs: &LinComb) -> LinComb {
        self.terms().chain(rhs.terms()).map(|(t, c)| (t.clone(), c)).collect()
    }
}

impl Neg for &LinComb {
    type Output = LinComb;

    fn neg(self) -> LinComb {
        self.scale(-1)
    }
}

impl Sub for &LinComb {
    type Output = LinComb;

    fn sub(self, rhs: &LinComb) -> LinComb {
        self + &(-rhs)
    }
}

impl Mul<&LinComb> for i64 {
    type Output = LinComb;

    fn mul(self, rhs: &LinComb) -> LinComb {
        rhs.scale(self)
    }
}

impl fmt::Display for LinComb {
    /// `{0,1} + 2 {0,2} - {0}`; the zero combination prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (t, c)) in self.terms().enumerate() {
            match (idx, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("- ")?,
                (_, false) => f.write_str(" + ")?,
                (_, true) => f.write_str(" - ")?,
            }
            match c.unsigned_abs() {
                1 => write!(f, "{t}")?,
                m => write!(f, "{m} {t}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Operator {
    Up(UpFamily),
    Down,
    UpAdjoint(UpFamily),
    DownAdjoint,
}

impl Operator {
    pub const U: Operator = Operator::Up(UpFamily::RightStrict);
    pub const U_PRIME: Operator = Operator::Up(UpFamily::LeftStrict);
    pub const D: Operator = Operator::Down;

    /// Whether the operator increases the node count.
    pub fn is_raising(self) -> bool {
        matches!(self, Operator::Up(_) | Operator::DownAdjoint)
    }

    pub fn adjoint(self) -> Operator {
        match self {
            Operator::Up(f) => Operator::UpAdjoint(f),
            Operator::Down => Operator::DownAdjoint,
            Operator::UpAdjoint(f) => Operator::Up(f),
            Operator::DownAdjoint => Operator::Down,
        }
    }

    /// Image of a single tree under the degree-`i` component.
    pub fn apply_tree(self, i: usize, tree: &Tree) -> Vec<Tree> {
        match self {
            Operator::Up(f) => up_successors(tree, i, f),
            Operator::Down => down_image(tree, i).into_iter().collect(),
            Operator::UpAdjoint(f) => up_predecessors(tree, i, f),
            Operator::DownAdjoint => down_preimages(tree, i),
        }
    }

    /// Linear extension of [`Operator::apply_tree`].
    pub fn apply(self, i: usize, v: &LinComb) -> LinComb {
        v.terms()
            .flat_map(|(t, c)| self.apply_tree(i, t).into_iter().map(move |img| (img, c)))
            .collect()
    }

    /// `Σ_i X_i v` over all degrees; only defined for lowering operators,
    /// where the sum is finite.
    ///
    /// # Panics
    ///
    /// If the operator raises degree.
    pub fn apply_total(self, v: &LinComb) -> LinComb {
        assert!(!self.is_raising(), "the full sum of a raising operator is an infinite series");
        let top = v.terms().map(|(t, _)| t.len()).max().unwrap_or(0);
        (0..=top).fold(LinComb::zero(), |acc, i| &acc + &self.apply(i, v))
    }
}

impl fmt::Display for Operator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operator::Up(fam) => write!(f, "{fam}"),
            Operator::Down => f.write_str("D"),
            Operator::UpAdjoint(fam) => write!(f, "{fam}*"),
            Operator::DownAdjoint => f.write_str("D*"),
        }
    }
}

impl FromStr for Operator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "U" => Ok(Operator::U),
            "U'" => Ok(Operator::U_PRIME),
            "D" => Ok(Operator::Down),
            "U*" => Ok(Operator::UpAdjoint(UpFamily::RightStrict)),
            "U'*" => Ok(Operator::UpAdjoint(UpFamily::LeftStrict)),
            "D*" => Ok(Operator::DownAdjoint),
            other => Err(Error::Parse(format!("unknown operator {other:?} (expected U, U', D, U*, U'*, D*)"))),
        }
    }
}

/// Shorthand for [`Operator::apply`].
pub fn apply(op: Operator, i: usize, v: &LinComb) -> LinComb {
    op.apply(i, v)
}

/// A combination of trees with polynomial coefficients in `t_1, …, t_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyLinComb {
    nvars: usize,
    terms: BTreeMap<Tree, Polynomial>,
}

impl PolyLinComb {
    pub fn zero(nvars: usize) -> Self {
        PolyLinComb { nvars, terms: BTreeMap::new() }
    }

    pub fn basis(nvars: usize, tree: Tree) -> Self {
        let mut out = PolyLinComb::zero(nvars);
        out.add_term(tree, &Polynomial::one(nvars));
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, tree: Tree, coeff: &Polynomial) {
        let slot = self.terms.entry(tree.clone()).or_insert_with(|| Polynomial::zero(self.nvars));
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&tree);
        }
    }

    pub fn coeff(&self, tree: &Tree) -> Polynomial {
        self.terms.get(tree).cloned().unwrap_or_else(|| Polynomial::zero(self.nvars))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tree, &Polynomial)> + '_ {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `X(t_{var+1}) v = Σ_i t_{var+1}^i X_i v`.
    ///
    /// Lowering operators (`D`, `U*`, `U'*`) are summed to their natural
    /// end; raising operators are truncated at degree `cap`.
    pub fn apply_gen(&self, op: Operator, var: usize, cap: usize) -> PolyLinComb {
        let mut out = PolyLinComb::zero(self.nvars);
        for (tree, coeff) in self.terms() {
            let top = if op.is_raising() { cap } else { tree.len() };
            for i in 0..=top {
                let weight = coeff * &Polynomial::var_power(self.nvars, var, i as u32);
                for img in op.apply_tree(i, tree) {
                    out.add_term(img, &weight);
                }
            }
        }
        out
    }
}

impl fmt::Display for PolyLinComb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (t, c)) in self.terms().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) {t}")?;
        }
        Ok(())
    }
}

/// `Σ_{k ≤ max_k(i,j)} X_{i-k} Y_{j-k} v`, the right-hand side shape shared by
/// the commutation relations and their transposes.
fn k_sum(outer: Operator, inner: Operator, family: UpFamily, i: usize, j: usize, v: &LinComb) -> LinComb {
    (0..=family.max_k(i, j)).fold(LinComb::zero(), |acc, k| &acc + &outer.apply(i - k, &inner.apply(j - k, v)))
}

fn grid(max_nodes: usize, max_i: usize, max_j: usize) -> Vec<(Tree, usize, usize)> {
    let mut cells = Vec::new();
    for t in trees_up_to(max_nodes) {
        for i in 0..=max_i {
            for j in 0..=max_j {
                cells.push((t.clone(), i, j));
            }
        }
    }
    cells
}

/// `D_j U_i T = Σ_{k ≤ min(i,j)} U_{i-k} D_{j-k} T` (family `U`), or the
/// same with `U'` and `k ≤ min(1, i, j)`, for every tree with at most
/// `max_nodes` nodes and `i ≤ max_i`, `j ≤ max_j`.
pub fn check_commutation(family: UpFamily, max_nodes: usize, max_i: usize, max_j: usize) -> Report {
    let up = Operator::Up(family);
    let mut report = Report::new(
        format!("D_j {family}_i = sum_k {family}_(i-k) D_(j-k)"),
        &[("max_nodes", max_nodes), ("max_i", max_i), ("max_j", max_j)],
    );
    let cells = grid(max_nodes, max_i, max_j);
    report.absorb(par_map(&cells, |(t, i, j)| {
        let v = LinComb::basis(t.clone());
        let lhs = Operator::Down.apply(*j, &up.apply(*i, &v));
        let rhs = k_sum(up, Operator::Down, family, *i, *j, &v);
        (lhs != rhs).then(|| format!("T={t} i={i} j={j}: lhs={lhs} rhs={rhs}"))
    }));
    report
}

/// Transposed relation `U_i^* D_j^* T = Σ_k D_{j-k}^* U_{i-k}^* T`.
pub fn check_transposed_commutation(family: UpFamily, max_nodes: usize, max_i: usize, max_j: usize) -> Report {
    let up_star = Operator::UpAdjoint(family);
    let mut report = Report::new(
        format!("{family}*_i D*_j = sum_k D*_(j-k) {family}*_(i-k)"),
        &[("max_nodes", max_nodes), ("max_i", max_i), ("max_j", max_j)],
    );
    let cells = grid(max_nodes, max_i, max_j);
    report.absorb(par_map(&cells, |(t, i, j)| {
        let v = LinComb::basis(t.clone());
        let lhs = up_star.apply(*i, &Operator::DownAdjoint.apply(*j, &v));
        let rhs = k_sum(Operator::DownAdjoint, up_star, family, *j, *i, &v);
        (lhs != rhs).then(|| format!("T={t} i={i} j={j}: lhs={lhs} rhs={rhs}"))
    }));
    report
}

/// `⟨X_i a, b⟩ = ⟨a, X_i^* b⟩` for all trees `a, b` with at most `max_nodes`
/// nodes, `i ≤ max_i` and `X ∈ {U, U', D}`.
pub fn check_adjointness(max_nodes: usize, max_i: usize) -> Report {
    let mut report = Report::new("<X_i a, b> = <a, X*_i b>", &[("max_nodes", max_nodes), ("max_i", max_i)]);
    let trees = trees_up_to(max_nodes);
    let ops = [Operator::U, Operator::U_PRIME, Operator::Down];
    let outcomes = par_map(&trees, |a| {
        let va = LinComb::basis(a.clone());
        let mut fails = Vec::new();
        for op in ops {
            for i in 0..=max_i {
                let xa = op.apply(i, &va);
                for b in &trees {
                    let vb = LinComb::basis(b.clone());
                    let lhs = xa.pairing(&vb);
                    let rhs = va.pairing(&op.adjoint().apply(i, &vb));
                    if lhs != rhs {
                        fails.push(format!("{op}_{i}: a={a} b={b}: {lhs} != {rhs}"));
                    }
                }
            }
        }
        fails
    });
    for fails in outcomes {
        report.checked += ops.len() * (max_i + 1) * trees.len();
        for f in fails {
            report.fail(f);
        }
    }
    report
}

/// `D_1 U_1 - U_1 D_1 = I` on trees with at most `max_nodes` nodes.
pub fn check_dual_graph(max_nodes: usize) -> Report {
    let mut report = Report::new("D_1 U_1 - U_1 D_1 = I", &[("max_nodes", max_nodes)]);
    let trees = trees_up_to(max_nodes);
    report.absorb(par_map(&trees, |t| {
        let v = LinComb::basis(t.clone());
        let lhs = &Operator::Down.apply(1, &Operator::U.apply(1, &v)) - &Operator::U.apply(1, &Operator::Down.apply(1, &v));
        (lhs != v).then(|| format!("T={t}: got {lhs}"))
    }));
    report
}

/// `D U_1 - U_1 D = D` with `D = Σ_j D_j` (including `D_0 = I`).
pub fn check_total_down(max_nodes: usize) -> Report {
    let mut report = Report::new("D U_1 - U_1 D = D", &[("max_nodes", max_nodes)]);
    let trees = trees_up_to(max_nodes);
    report.absorb(par_map(&trees, |t| {
        let v = LinComb::basis(t.clone());
        let d = Operator::Down;
        let lhs = &d.apply_total(&Operator::U.apply(1, &v)) - &Operator::U.apply(1, &d.apply_total(&v));
        let rhs = d.apply_total(&v);
        (lhs != rhs).then(|| format!("T={t}: lhs={lhs} rhs={rhs}"))
    }));
    report
}

/// `U* D_1* - D_1* U* = U*` with `U* = Σ_i U_i*`, checked entrywise:
/// `⟨(U* D_1* - D_1* U*) a, b⟩ = ⟨U* a, b⟩` for all trees `a, b` with at most
/// `max_nodes` nodes.
pub fn check_total_up_adjoint(max_nodes: usize) -> Report {
    let mut report = Report::new("U* D_1* - D_1* U* = U*", &[("max_nodes", max_nodes)]);
    let trees = trees_up_to(max_nodes);
    let u_star = Operator::UpAdjoint(UpFamily::RightStrict);
    let d1_star = |v: &LinComb| Operator::DownAdjoint.apply(1, v);
    let outcomes = par_map(&trees, |a| {
        let va = LinComb::basis(a.clone());
        let lhs = &u_star.apply_total(&d1_star(&va)) - &d1_star(&u_star.apply_total(&va));
        let rhs = u_star.apply_total(&va);
        trees
            .iter()
            .filter_map(|b| {
                let vb = LinComb::basis(b.clone());
                let (l, r) = (lhs.pairing(&vb), rhs.pairing(&vb));
                (l != r).then(|| format!("a={a} b={b}: {l} != {r}"))
            })
            .collect::<Vec<_>>()
    });
    for fails in outcomes {
        report.checked += trees.len();
        for f in fails {
            report.fail(f);
        }
    }
    report
}
