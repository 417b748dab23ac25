//! Browser bindings: operator application, RSK growth diagrams and
//! generating polynomials, each returning JSON with inline SVG drawings.

mod svg;

use serde::Serialize;
use wasm_bindgen::prelude::*;

use pbt_schur::qsym::{schur_poly, Symbol};
use pbt_schur::rsk::rsk_forward;
use pbt_schur::{LinComb, Matrix, Operator, Polynomial, Tree, UpFamily};

/// Largest tree accepted from the page.
const MAX_INPUT_NODES: usize = 8;
const MAX_DEGREE: usize = 5;

fn parse_tree(text: &str) -> Result<Tree, String> {
    let text = if text.trim().is_empty() { "{}" } else { text };
    let tree: Tree = text.parse().map_err(|e: pbt_schur::Error| e.to_string())?;
    if tree.len() > MAX_INPUT_NODES {
        return Err(format!("trees are limited to {MAX_INPUT_NODES} nodes here"));
    }
    Ok(tree)
}

fn check_degree(what: &str, value: usize) -> Result<(), String> {
    if value > MAX_DEGREE {
        return Err(format!("{what} is limited to {MAX_DEGREE} here"));
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Term {
    tree: Tree,
    coeff: i64,
    svg: String,
}

#[derive(Serialize)]
struct Applied {
    text: String,
    input_svg: String,
    terms: Vec<Term>,
}

pub fn apply_operator_json(op: &str, degree: usize, tree: &str) -> Result<String, String> {
    let op: Operator = op.parse().map_err(|e: pbt_schur::Error| e.to_string())?;
    check_degree("degree", degree)?;
    let tree = parse_tree(tree)?;
    let result = op.apply(degree, &LinComb::basis(tree.clone()));
    let terms = result.terms().map(|(t, coeff)| Term { tree: t.clone(), coeff, svg: svg::tree(t, &tree) }).collect();
    to_json(&Applied { text: result.to_string(), input_svg: svg::tree(&tree, &tree), terms })
}

#[derive(Serialize)]
struct Growth {
    p: Vec<Tree>,
    q: Vec<Tree>,
    shape: Tree,
    svg: String,
}

pub fn rsk_growth_json(csv: &str, family: &str) -> Result<String, String> {
    let family: UpFamily = family.parse().map_err(|e: pbt_schur::Error| e.to_string())?;
    let m: Matrix = csv.parse().map_err(|e: pbt_schur::Error| e.to_string())?;
    check_degree("matrix dimension", m.cols().max(m.rows()))?;
    if m.total() as usize > MAX_INPUT_NODES {
        return Err(format!("matrix total is limited to {MAX_INPUT_NODES} here"));
    }
    let pair = rsk_forward(&m, family).map_err(|e| e.to_string())?;
    to_json(&Growth {
        p: pair.p.trees().to_vec(),
        q: pair.q.trees().to_vec(),
        shape: pair.shape().clone(),
        svg: svg::growth(&pair.diagram, &m),
    })
}

#[derive(Serialize)]
struct Poly {
    text: String,
    terms: Polynomial,
}

pub fn generating_polynomial_json(symbol: &str, tree: &str, to: &str, vars: usize) -> Result<String, String> {
    let symbol: Symbol = symbol.parse().map_err(|e: pbt_schur::Error| e.to_string())?;
    let (tree, to) = (parse_tree(tree)?, parse_tree(to)?);
    check_degree("variable count", vars)?;
    let p = schur_poly(symbol, &tree, &to, vars);
    to_json(&Poly { text: p.to_string(), terms: p })
}

/// `X_i T` for `X ∈ {U, U', D, U*, U'*, D*}`; nodes of `T` are drawn filled.
#[wasm_bindgen]
pub fn apply_operator(op: &str, degree: usize, tree: &str) -> Result<String, JsValue> {
    apply_operator_json(op, degree, tree).map_err(|e| JsValue::from_str(&e))
}

/// Growth diagram of a CSV matrix (one row per line).
#[wasm_bindgen]
pub fn rsk_growth(csv: &str, family: &str) -> Result<String, JsValue> {
    rsk_growth_json(csv, family).map_err(|e| JsValue::from_str(&e))
}

/// `S^X_{T/T'}` in `vars` variables.
#[wasm_bindgen]
pub fn generating_polynomial(symbol: &str, tree: &str, to: &str, vars: usize) -> Result<String, JsValue> {
    generating_polynomial_json(symbol, tree, to, vars).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> serde_json::Value {
        serde_json::from_str(s).unwrap()
    }

    #[test]
    fn apply() {
        let out = parse(&apply_operator_json("U", 1, "{0}").unwrap());
        assert_eq!(out["text"], "{0,1} + {0,2}");
        assert_eq!(out["terms"].as_array().unwrap().len(), 2);
        assert!(out["terms"][0]["svg"].as_str().unwrap().starts_with("<svg"));
        assert!(apply_operator_json("U", 9, "{0}").is_err());
        assert!(apply_operator_json("V", 1, "{0}").is_err());
        assert!(apply_operator_json("D", 1, "{0,11}").is_err());
    }

    #[test]
    fn growth() {
        let out = parse(&rsk_growth_json("1,0\n1,1", "U").unwrap());
        assert_eq!(out["shape"], "{0,1,12}");
        assert!(out["svg"].as_str().unwrap().contains("</svg>"));
        assert!(rsk_growth_json("2", "U'").is_err());
    }

    #[test]
    fn polynomial() {
        let out = parse(&generating_polynomial_json("D", "{0,1,12}", "", 2).unwrap());
        assert_eq!(out["text"], "t1 t2^2");
        assert_eq!(out["terms"][0]["exponents"], serde_json::json!([1, 2]));
    }
}
