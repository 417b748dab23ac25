use std::collections::BTreeMap;
use std::fmt::Write;

use pbt_schur::{GrowthDiagram, Matrix, Tree, Word};

const STEP_X: f64 = 18.0;
const STEP_Y: f64 = 22.0;
const RADIUS: f64 = 5.0;
const PAD: f64 = 10.0;

/// In-order position and depth of every node.
fn layout(tree: &Tree) -> BTreeMap<Word, (f64, f64)> {
    fn visit(tree: &Tree, w: Word, next: &mut usize, out: &mut BTreeMap<Word, (f64, f64)>) {
        if !tree.contains(&w) {
            return;
        }
        visit(tree, w.left(), next, out);
        let x = *next as f64;
        *next += 1;
        out.insert(w.clone(), (x, w.len() as f64));
        visit(tree, w.right(), next, out);
    }
    let mut out = BTreeMap::new();
    visit(tree, Word::root(), &mut 0, &mut out);
    out
}

fn body(tree: &Tree, base: &Tree) -> (String, f64, f64) {
    if tree.is_empty() {
        let s = format!("<text x=\"{PAD}\" y=\"{}\" font-size=\"14\">∅</text>", PAD + 8.0);
        return (s, 2.0 * PAD + 10.0, 2.0 * PAD + 10.0);
    }
    let pos = layout(tree);
    let at = |w: &Word| {
        let (x, y) = pos[w];
        (PAD + x * STEP_X, PAD + y * STEP_Y)
    };
    let mut s = String::new();
    for w in tree.nodes() {
        if let Some(parent) = w.parent() {
            let ((x1, y1), (x2, y2)) = (at(&parent), at(w));
            let _ = write!(s, "<line x1=\"{x1}\" y1=\"{y1}\" x2=\"{x2}\" y2=\"{y2}\" stroke=\"#555\"/>");
        }
    }
    for w in tree.nodes() {
        let (x, y) = at(w);
        let fill = if base.contains(w) { "#246" } else { "#fff" };
        let _ = write!(s, "<circle cx=\"{x}\" cy=\"{y}\" r=\"{RADIUS}\" fill=\"{fill}\" stroke=\"#246\"><title>{w}</title></circle>");
    }
    let width = pos.values().map(|p| p.0).fold(0.0, f64::max) * STEP_X + 2.0 * PAD;
    let height = pos.values().map(|p| p.1).fold(0.0, f64::max) * STEP_Y + 2.0 * PAD;
    (s, width, height)
}

/// Drawing of `tree`; nodes of `base` are filled.
pub fn tree(tree: &Tree, base: &Tree) -> String {
    let (inner, w, h) = body(tree, base);
    format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">{inner}</svg>")
}

/// The growth diagram as a grid: trees at the corners, matrix entries in
/// the cells, row 1 at the bottom.
pub fn growth(diagram: &GrowthDiagram, m: &Matrix) -> String {
    const CELL: f64 = 120.0;
    const BOX: f64 = 80.0;
    let (p, q) = (diagram.cols(), diagram.rows());
    let width = p as f64 * CELL + BOX + 20.0;
    let height = q as f64 * CELL + BOX + 20.0;
    let corner = |i: usize, j: usize| (10.0 + i as f64 * CELL, 10.0 + (q - j) as f64 * CELL);
    let mut s = format!("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">");
    for i in 0..=p {
        for j in 0..=q {
            let (x, y) = corner(i, j);
            let (cx, cy) = (x + BOX / 2.0, y + BOX / 2.0);
            if i < p {
                let _ = write!(s, "<line x1=\"{cx}\" y1=\"{cy}\" x2=\"{}\" y2=\"{cy}\" stroke=\"#bbb\"/>", cx + CELL);
            }
            if j < q {
                let _ = write!(s, "<line x1=\"{cx}\" y1=\"{cy}\" x2=\"{cx}\" y2=\"{}\" stroke=\"#bbb\"/>", cy - CELL);
            }
        }
    }
    for i in 1..=p {
        for j in 1..=q {
            let (x, y) = corner(i, j);
            let (cx, cy) = (x - CELL / 2.0 + BOX / 2.0, y + CELL / 2.0 + BOX / 2.0);
            let _ = write!(s, "<text x=\"{cx}\" y=\"{cy}\" font-size=\"18\" fill=\"#a22\" text-anchor=\"middle\">{}</text>", m.get(i - 1, j - 1));
        }
    }
    for i in 0..=p {
        for j in 0..=q {
            let t = diagram.at(i, j);
            let (inner, w, h) = body(t, t);
            let (x, y) = corner(i, j);
            let _ = write!(
                s,
                "<rect x=\"{x}\" y=\"{y}\" width=\"{BOX}\" height=\"{BOX}\" fill=\"#fafafa\" stroke=\"#ddd\"/>\
                 <svg x=\"{x}\" y=\"{y}\" width=\"{BOX}\" height=\"{BOX}\" viewBox=\"0 0 {w} {h}\"><title>{t}</title>{inner}</svg>"
            );
        }
    }
    s.push_str("</svg>");
    s
}
