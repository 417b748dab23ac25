//! Growth-diagram RSK: matrices ↔ pairs of paths with a common end.
//!
//! The diagram holds trees `τ(i, j)` for `0 ≤ i ≤ p` columns and `0 ≤ j ≤ q`
//! rows, with `∅` along the bottom row and left column. Moving right is an up
//! edge, moving up is a down edge read downwards: `τ(i, j-1) = D_d τ(i, j)`.
//! Cell `(i, j)` is filled by the local bijection: the `S`-path
//! `τ(i-1, j) → τ(i-1, j-1) → τ(i, j-1)` tagged with `k = M(i, j)` is sent to
//! the `N`-path through `τ(i, j)`.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::correspondence::{forward, inverse};
use crate::error::{Error, Result};
use crate::graph::{Family, PairVariant, PathPair, UpFamily};
use crate::labelling::{enumerate_labellings, LabellingKind, Path};
use crate::report::{par_map, Report};
use crate::tree::{trees_of_size, Tree};

/// A `p × q` matrix of non-negative integers addressed as `(column, row)`,
/// both 1-based in the documentation and 0-based in the API.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    cols: usize,
    rows: usize,
    entries: Vec<u32>,
}

impl Matrix {
    pub fn zeros(cols: usize, rows: usize) -> Self {
        Matrix { cols, rows, entries: vec![0; cols * rows] }
    }

    /// Builds a matrix from its rows (row 1 first).
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|r| r.len() != cols) {
            return Err(Error::Parse(format!("row {} has {} entries, expected {cols}", bad + 1, rows[bad].len())));
        }
        let mut m = Matrix::zeros(cols, rows.len());
        for (j, row) in rows.iter().enumerate() {
            for (i, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn get(&self, col: usize, row: usize) -> u32 {
        self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, col: usize, row: usize, value: u32) {
        self.entries[row * self.cols + col] = value;
    }

    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols).map(|i| (0..self.rows).map(|j| self.get(i, j)).sum()).collect()
    }

    pub fn row_sums(&self) -> Vec<u32> {
        (0..self.rows).map(|j| (0..self.cols).map(|i| self.get(i, j)).sum()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|j| (0..self.cols).map(|i| self.get(i, j)).collect()).collect()
    }

    /// Rejects entries above 1, as required for `U'`.
    pub fn check_binary(&self) -> Result<()> {
        for j in 0..self.rows {
            for i in 0..self.cols {
                let value = self.get(i, j);
                if value > 1 {
                    return Err(Error::BinaryViolation { col: i + 1, row: j + 1, value });
                }
            }
        }
        Ok(())
    }

    /// Every `cols × rows` matrix with total at most `max_total` and entries at
    /// most `max_entry`, in lexicographic order of the entry vector.
    pub fn enumerate(cols: usize, rows: usize, max_total: u32, max_entry: u32) -> Vec<Matrix> {
        fn go(pos: usize, left: u32, max_entry: u32, cur: &mut Matrix, out: &mut Vec<Matrix>) {
            if pos == cur.entries.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..=left.min(max_entry) {
                cur.entries[pos] = v;
                go(pos + 1, left - v, max_entry, cur, out);
            }
            cur.entries[pos] = 0;
        }
        let mut out = Vec::new();
        go(0, max_total, max_entry, &mut Matrix::zeros(cols, rows), &mut out);
        out
    }
}

impl FromStr for Matrix {
    type Err = Error;

    /// Comma-separated rows, one per line; blank lines are ignored.
    fn from_str(s: &str) -> Result<Self> {
        let rows = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .enumerate()
            .map(|(n, line)| {
                line.split(',')
                    .map(|cell| {
                        cell.trim()
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("line {}: {:?} is not a non-negative integer", n + 1, cell.trim())))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(&rows)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_rows() {
            let cells: Vec<String> = row.iter().map(u32::to_string).collect();
            writeln!(f, "{}", cells.join(","))?;
        }
        Ok(())
    }
}

/// Order in which cells are filled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillOrder {
    ColumnMajor,
    RowMajor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GrowthDiagram {
    /// `trees[i][j] = τ(i, j)`.
    pub trees: Vec<Vec<Tree>>,
}

impl GrowthDiagram {
    pub fn cols(&self) -> usize {
        self.trees.len() - 1
    }

    pub fn rows(&self) -> usize {
        self.trees[0].len() - 1
    }

    pub fn at(&self, col: usize, row: usize) -> &Tree {
        &self.trees[col][row]
    }

    /// Top row `τ(0, q), …, τ(p, q)` as an up path.
    pub fn p_path(&self, family: UpFamily) -> Result<Path> {
        let q = self.rows();
        Path::new(Family::Up(family), self.trees.iter().map(|col| col[q].clone()).collect())
    }

    /// Right column `τ(p, 0), …, τ(p, q)` as a down path.
    pub fn q_path(&self) -> Result<Path> {
        Path::new(Family::Down, self.trees[self.cols()].clone())
    }

    /// Fills the diagram of `m` cell by cell in the given order.
    pub fn fill(m: &Matrix, family: UpFamily, order: FillOrder) -> Result<GrowthDiagram> {
        if family == UpFamily::LeftStrict {
            m.check_binary()?;
        }
        let (p, q) = (m.cols(), m.rows());
        let mut trees = vec![vec![Tree::empty(); q + 1]; p + 1];
        let cells: Vec<(usize, usize)> = match order {
            FillOrder::ColumnMajor => (1..=p).flat_map(|i| (1..=q).map(move |j| (i, j))).collect(),
            FillOrder::RowMajor => (1..=q).flat_map(|j| (1..=p).map(move |i| (i, j))).collect(),
        };
        for (i, j) in cells {
            let (corner, above, right) = (&trees[i - 1][j - 1], &trees[i - 1][j], &trees[i][j - 1]);
            let s = PathPair {
                variant: PairVariant::S,
                source: above.clone(),
                mid: corner.clone(),
                target: right.clone(),
                up_degree: right.len() - corner.len(),
                down_degree: above.len() - corner.len(),
            };
            let k = m.get(i - 1, j - 1) as usize;
            let n = inverse(family, k, &s).map_err(|_| Error::CellFailure { col: i, row: j })?;
            trees[i][j] = n.mid;
        }
        Ok(GrowthDiagram { trees })
    }
}

/// Output of [`rsk_forward`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RskPair {
    pub p: Path,
    pub q: Path,
    pub diagram: GrowthDiagram,
}

impl RskPair {
    pub fn shape(&self) -> &Tree {
        self.p.last()
    }
}

/// Matrix → (up path of length `p`, down path of length `q`).
pub fn rsk_forward(m: &Matrix, family: UpFamily) -> Result<RskPair> {
    let diagram = GrowthDiagram::fill(m, family, FillOrder::ColumnMajor)?;
    Ok(RskPair { p: diagram.p_path(family)?, q: diagram.q_path()?, diagram })
}

/// Inverse of [`rsk_forward`]: unfills the diagram from the top-right corner.
pub fn rsk_inverse(p_path: &Path, q_path: &Path, family: UpFamily) -> Result<Matrix> {
    if p_path.kind() != Family::Up(family) || q_path.kind() != Family::Down {
        return Err(Error::Parse(format!("expected a {family} path and a D path")));
    }
    if p_path.last() != q_path.last() {
        return Err(Error::ShapeMismatch(p_path.last().to_string(), q_path.last().to_string()));
    }
    let (p, q) = (p_path.len(), q_path.len());
    let mut trees = vec![vec![Tree::empty(); q + 1]; p + 1];
    for (i, t) in p_path.trees().iter().enumerate() {
        trees[i][q] = t.clone();
    }
    for (j, t) in q_path.trees().iter().enumerate() {
        trees[p][j] = t.clone();
    }
    let mut m = Matrix::zeros(p, q);
    for i in (1..=p).rev() {
        for j in (1..=q).rev() {
            let fail = || Error::CellFailure { col: i, row: j };
            let (top, above, right) = (&trees[i][j], &trees[i - 1][j], &trees[i][j - 1]);
            let (Some(up), Some(down)) = (top.len().checked_sub(above.len()), top.len().checked_sub(right.len())) else {
                return Err(fail());
            };
            let n = PathPair {
                variant: PairVariant::N,
                source: above.clone(),
                mid: top.clone(),
                target: right.clone(),
                up_degree: up,
                down_degree: down,
            };
            let (k, s) = forward(family, &n).map_err(|_| fail())?;
            let on_boundary = i == 1 || j == 1;
            if on_boundary && !s.mid.is_empty() {
                return Err(fail());
            }
            m.set(i - 1, j - 1, k as u32);
            trees[i - 1][j - 1] = s.mid;
        }
    }
    Ok(m)
}

/// Round trips, shape, content and counting over all `p × q` matrices with
/// total at most `max_total` (binary matrices for `U'`).
pub fn check_rsk(family: UpFamily, p: usize, q: usize, max_total: u32) -> Report {
    let mut report = Report::new(
        format!("RSK for {family}: matrices <-> ({family}-path, D-path)"),
        &[("p", p), ("q", q), ("max_total", max_total as usize)],
    );
    let max_entry = match family {
        UpFamily::RightStrict => max_total,
        UpFamily::LeftStrict => 1,
    };
    let matrices = Matrix::enumerate(p, q, max_total, max_entry);
    let outcomes = par_map(&matrices, |m| -> std::result::Result<(Vec<Tree>, Vec<Tree>), String> {
        let tag = format!("M={}", m.to_string().trim_end().replace('\n', ";"));
        let pair = rsk_forward(m, family).map_err(|e| format!("{tag}: forward failed: {e}"))?;
        let row_major = GrowthDiagram::fill(m, family, FillOrder::RowMajor).map_err(|e| format!("{tag}: {e}"))?;
        if row_major != pair.diagram {
            return Err(format!("{tag}: row-major fill differs"));
        }
        if pair.q.last() != pair.shape() || pair.shape().len() != m.total() as usize {
            return Err(format!("{tag}: shape {} has wrong size or paths disagree", pair.shape()));
        }
        let cols: Vec<u32> = pair.p.step_degrees().iter().map(|&d| d as u32).collect();
        let rows: Vec<u32> = pair.q.step_degrees().iter().map(|&d| d as u32).collect();
        if cols != m.col_sums() || rows != m.row_sums() {
            return Err(format!("{tag}: step degrees {cols:?}/{rows:?} differ from sums"));
        }
        match rsk_inverse(&pair.p, &pair.q, family) {
            Ok(back) if &back == m => {}
            Ok(back) => return Err(format!("{tag}: inverse gave {back}")),
            Err(e) => return Err(format!("{tag}: inverse failed: {e}")),
        }
        Ok((pair.p.trees().to_vec(), pair.q.trees().to_vec()))
    });

    let mut seen = std::collections::BTreeSet::new();
    let mut by_total = vec![0u64; max_total as usize + 1];
    for (m, outcome) in matrices.iter().zip(outcomes) {
        match outcome {
            Ok(key) => {
                let fresh = seen.insert(key);
                report.record(fresh, || format!("two matrices share the image of {m}"));
                by_total[m.total() as usize] += 1;
            }
            Err(msg) => {
                report.checked += 1;
                report.fail(msg);
            }
        }
    }
    let up_kind = match family {
        UpFamily::RightStrict => LabellingKind::RightStrict,
        UpFamily::LeftStrict => LabellingKind::LeftStrict,
    };
    for (n, &count) in by_total.iter().enumerate() {
        let pairs: u64 = trees_of_size(n)
            .iter()
            .map(|t| {
                let a = enumerate_labellings(t, up_kind, p as u32).len() as u64;
                let b = enumerate_labellings(t, LabellingKind::BinarySearch, q as u32).len() as u64;
                a * b
            })
            .sum();
        report.record(pairs == count, || format!("total {n}: {count} matrices vs {pairs} path pairs"));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    const U: UpFamily = UpFamily::RightStrict;
    const UP: UpFamily = UpFamily::LeftStrict;

    fn t(s: &str) -> Tree {
        s.parse().unwrap()
    }

    fn path(kind: Family, trees: &[&str]) -> Path {
        Path::new(kind, trees.iter().map(|s| t(s)).collect()).unwrap()
    }

    #[test]
    fn csv_round_trip() {
        let m: Matrix = "1,0\n2,3\n".parse().unwrap();
        assert_eq!((m.cols(), m.rows()), (2, 2));
        assert_eq!(m.get(0, 1), 2);
        assert_eq!(m.col_sums(), [3, 3]);
        assert_eq!(m.row_sums(), [1, 5]);
        assert_eq!(m.to_string(), "1,0\n2,3\n");
        assert!("1,2\n3".parse::<Matrix>().is_err());
        assert!("1,x".parse::<Matrix>().is_err());
        assert!(matches!("0,2".parse::<Matrix>().unwrap().check_binary(), Err(Error::BinaryViolation { col: 2, row: 1, value: 2 })));
    }

    #[test]
    fn single_cell_examples() {
        let one = rsk_forward(&"1".parse().unwrap(), U).unwrap();
        assert_eq!(one.p, path(Family::Up(U), &["{}", "{0}"]));
        assert_eq!(one.q, path(Family::Down, &["{}", "{0}"]));
        let two = rsk_forward(&"2".parse().unwrap(), U).unwrap();
        assert_eq!(two.shape(), &t("{0,1}"));
        assert_eq!(two.q, path(Family::Down, &["{}", "{0,1}"]));
        let zero = rsk_forward(&Matrix::zeros(2, 3), U).unwrap();
        assert!(zero.p.trees().iter().chain(zero.q.trees()).all(Tree::is_empty));
        assert!(matches!(rsk_forward(&"2".parse().unwrap(), UP), Err(Error::BinaryViolation { .. })));
    }

    #[test]
    fn inverse_examples() {
        let p = path(Family::Up(U), &["{}", "{0}"]);
        let q = path(Family::Down, &["{}", "{0}"]);
        assert_eq!(rsk_inverse(&p, &q, U).unwrap(), "1".parse().unwrap());
        let p = path(Family::Up(U), &["{}", "{0,1}"]);
        let q = path(Family::Down, &["{}", "{0,1}"]);
        assert_eq!(rsk_inverse(&p, &q, U).unwrap(), "2".parse().unwrap());
        let p = path(Family::Up(U), &["{}", "{}"]);
        let q = path(Family::Down, &["{}", "{}", "{}"]);
        assert_eq!(rsk_inverse(&p, &q, U).unwrap(), Matrix::zeros(1, 2));
        let q = path(Family::Down, &["{}", "{0}"]);
        assert!(matches!(rsk_inverse(&p, &q, U), Err(Error::ShapeMismatch(..))));
    }

    #[test]
    fn two_by_two_counts() {
        let u = Matrix::enumerate(2, 2, 2, 2).into_iter().filter(|m| m.total() == 2).count();
        let up = Matrix::enumerate(2, 2, 2, 1).into_iter().filter(|m| m.total() == 2).count();
        assert_eq!((u, up), (10, 6));
        let r = check_rsk(U, 2, 2, 3);
        assert!(r.passed(), "{:?}", r.counterexamples);
        let r = check_rsk(UP, 2, 2, 4);
        assert!(r.passed(), "{:?}", r.counterexamples);
    }
}
