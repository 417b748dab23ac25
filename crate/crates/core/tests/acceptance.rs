use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use pbt_schur::correspondence::{check_bijection, check_path_counts};
use pbt_schur::operators::{check_commutation, check_dual_graph, check_total_down, check_total_up_adjoint};
use pbt_schur::qsym::{
    cauchy_check, cauchy_kernel, cauchy_sum, check_labelling_sums, check_quasisymmetry, is_quasisymmetric, schur_poly,
    Symbol,
};
use pbt_schur::rsk::{check_rsk, rsk_forward};
use pbt_schur::{enumerate_trees, Matrix, Polynomial, Report, Tree, UpFamily};

const U: UpFamily = UpFamily::RightStrict;
const UP: UpFamily = UpFamily::LeftStrict;

type Check = Box<dyn Fn() -> Result<String, String>>;

fn catalan(n: usize) -> u64 {
    let mut c = vec![1u64];
    for m in 1..=n {
        c.push((0..m).map(|k| c[k] * c[m - 1 - k]).sum());
    }
    c[n]
}

fn reports(parts: &[Report]) -> Result<String, String> {
    let checked: usize = parts.iter().map(|r| r.checked).sum();
    match parts.iter().find(|r| !r.passed()) {
        None => Ok(format!("{checked} cases")),
        Some(r) => Err(format!("{}: {} failures, first: {:?}", r.identity, r.failures, r.counterexamples.first())),
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1() -> Result<String, String> {
    let expected = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796];
    for (n, &e) in expected.iter().enumerate() {
        let got = enumerate_trees(n).len() as u64;
        ensure(got == catalan(n) && got == e, || format!("n={n}: {got} trees, recurrence {}", catalan(n)))?;
    }
    Ok("n = 0..10".into())
}

fn c8() -> Result<String, String> {
    let tree: Tree = "{0,1,12}".parse().unwrap();
    let p = schur_poly(Symbol::D, &tree, &Tree::empty(), 2);
    ensure(p == Polynomial::monomial(vec![1, 2], 1), || format!("S^D = {p}"))?;
    ensure(p.coeff(&[2, 1]) == 0 && p.swap_vars(0, 1) != p, || "polynomial is symmetric".into())?;
    let p3 = schur_poly(Symbol::D, &tree, &Tree::empty(), 3);
    ensure(is_quasisymmetric(&p3), || format!("n=3: {p3} not quasi-symmetric"))?;
    Ok(format!("S^D = {p}; n=3: {p3}"))
}

fn matrices_with_total(cells: usize, max_entry: u32, total: u32) -> u64 {
    if cells == 0 {
        return u64::from(total == 0);
    }
    (0..=max_entry.min(total)).map(|e| matrices_with_total(cells - 1, max_entry, total - e)).sum()
}

fn c9() -> Result<String, String> {
    reports(&[cauchy_check(U, 2, 2, 5), cauchy_check(UP, 2, 2, 5)])?;
    let mass_u = cauchy_sum(U, 2, 2, 2).coefficient_sum();
    let mass_up = cauchy_sum(UP, 2, 2, 2).coefficient_sum();
    ensure(mass_u == 10 && matrices_with_total(4, 2, 2) == 10, || format!("U mass {mass_u}"))?;
    ensure(mass_up == 6 && matrices_with_total(4, 1, 2) == 6, || format!("U' mass {mass_up}"))?;
    Ok(format!("n <= 5, mass at n=2: {mass_u} / {mass_up}"))
}

fn c10() -> Result<String, String> {
    let summary = reports(&[check_rsk(U, 2, 2, 4), check_rsk(UP, 2, 2, 4)])?;
    for (family, max_entry) in [(U, 4), (UP, 1)] {
        let mut classes: BTreeMap<Vec<u32>, i64> = BTreeMap::new();
        for m in Matrix::enumerate(2, 2, 4, max_entry) {
            let pair = rsk_forward(&m, family).map_err(|e| e.to_string())?;
            let mut key: Vec<u32> = pair.p.step_degrees().iter().map(|&d| d as u32).collect();
            key.extend(pair.q.step_degrees().iter().map(|&d| d as u32));
            *classes.entry(key).or_default() += 1;
        }
        for n in 0..=4 {
            let kernel = cauchy_kernel(family, 2, 2, n);
            for (exps, coeff) in kernel.terms() {
                let got = classes.get(exps).copied().unwrap_or(0);
                ensure(got == coeff, || format!("{family} class {exps:?}: {got} images vs coefficient {coeff}"))?;
            }
            let images: i64 = classes.iter().filter(|(k, _)| k[..2].iter().sum::<u32>() == n as u32).map(|(_, c)| c).sum();
            ensure(images == kernel.coefficient_sum(), || format!("{family} n={n}: {images} images"))?;
        }
    }
    Ok(summary)
}

fn main() -> ExitCode {
    let criteria: Vec<(&str, Check)> = vec![
        ("tree counts follow the Catalan recurrence", Box::new(c1)),
        ("D_j U_i = sum_k U_(i-k) D_(j-k) on trees <= 6, i,j <= 4", Box::new(|| reports(&[check_commutation(U, 6, 4, 4)]))),
        ("D_j U'_i = sum_k U'_(i-k) D_(j-k) on trees <= 6, i,j <= 4", Box::new(|| reports(&[check_commutation(UP, 6, 4, 4)]))),
        (
            "dual graph corollaries",
            Box::new(|| reports(&[check_dual_graph(7), check_total_down(7), check_total_up_adjoint(6)])),
        ),
        (
            "path bijections on trees <= 5, i,j <= 3",
            Box::new(|| reports(&[check_bijection(U, 5, 3), check_bijection(UP, 5, 3)])),
        ),
        (
            "pairings count two-step paths",
            Box::new(|| reports(&[check_path_counts(U, 5, 3), check_path_counts(UP, 5, 3)])),
        ),
        ("generating polynomials equal labelling sums", Box::new(|| reports(&[check_labelling_sums(5, 4)]))),
        ("worked value S^D_{0,1,12} = t1 t2^2", Box::new(c8)),
        ("Cauchy identities", Box::new(c9)),
        ("growth-diagram RSK on 2x2 matrices", Box::new(c10)),
        ("generating polynomials are quasi-symmetric", Box::new(|| reports(&[check_quasisymmetry(5, 4)]))),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} ({detail}; {secs:.1}s)", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {detail}", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
