//! Sparse multivariate polynomials with integer coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::Serialize;

/// A polynomial in `t_1, …, t_n` stored as exponent vector → coefficient.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, i64>,
}

/// One term of the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub exponents: Vec<u32>,
    pub coeff: i64,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(vec![0; nvars], 1)
    }

    pub fn monomial(exponents: Vec<u32>, coeff: i64) -> Self {
        let mut p = Polynomial::zero(exponents.len());
        p.add_term(exponents, coeff);
        p
    }

    /// `t_{var+1}^power`.
    pub fn var_power(nvars: usize, var: usize, power: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[var] = power;
        Self::monomial(exps, 1)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exponents: Vec<u32>, coeff: i64) {
        assert_eq!(exponents.len(), self.nvars, "exponent vector length");
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(exponents);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn coeff(&self, exponents: &[u32]) -> i64 {
        self.terms.get(exponents).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, i64)> + '_ {
        self.terms.iter().map(|(e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common total degree of all terms; `None` for mixed degrees. The zero
    /// polynomial is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next().unwrap_or(0);
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == degree)
    }

    /// Value at `t_1 = … = t_n = 1`.
    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Keeps the terms whose total degree is at most `max`.
    pub fn truncate(&self, max: u32) -> Self {
        self.filter_terms(|e| e.iter().sum::<u32>() <= max)
    }

    pub fn filter_terms(&self, keep: impl Fn(&[u32]) -> bool) -> Self {
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().filter(|(e, _)| keep(e)).map(|(e, &c)| (e.clone(), c)).collect(),
        }
    }

    /// Exchanges variables `a` and `b` (0-based).
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in self.terms() {
            let mut e = e.clone();
            e.swap(a, b);
            out.add_term(e, c);
        }
        out
    }

    /// Places `self` in variables `offset..offset + self.nvars` of a ring
    /// with `nvars` variables.
    pub fn embed(&self, nvars: usize, offset: usize) -> Self {
        assert!(offset + self.nvars <= nvars);
        let mut out = Polynomial::zero(nvars);
        for (e, c) in self.terms() {
            let mut big = vec![0; nvars];
            big[offset..offset + e.len()].copy_from_slice(e);
            out.add_term(big, c);
        }
        out
    }

    pub fn scale(&self, factor: i64) -> Self {
        let mut out = Polynomial::zero(self.nvars);
        for (e, c) in self.terms() {
            out.add_term(e.clone(), c * factor);
        }
        out
    }

    /// Terms in graded-lex order, highest first.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, i64)> {
        let mut v: Vec<_> = self.terms().collect();
        v.sort_by(|(a, _), (b, _)| grlex(b, a));
        v
    }

    pub fn to_json_terms(&self) -> Vec<Term> {
        self.sorted_terms().into_iter().map(|(e, c)| Term { exponents: e.clone(), coeff: c }).collect()
    }

    fn assert_same_ring(&self, other: &Self) {
        assert_eq!(self.nvars, other.nvars, "polynomials over different variable counts");
    }
}

fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_terms().serialize(s)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.assert_same_ring(rhs);
        for (e, c) in rhs.terms() {
            self.add_term(e.clone(), c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(-1)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.assert_same_ring(rhs);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for Polynomial {
    /// `t1^2 + 2 t1 t2 - t2^2`, graded-lex with the highest term first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (e, c)) in self.sorted_terms().into_iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            match (idx, c < 0) {
                (0, false) => {}
                (0, true) => f.write_str("- ")?,
                _ => write!(f, " {sign} ")?,
            }
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(v, &a)| if a == 1 { format!("t{}", v + 1) } else { format!("t{}^{a}", v + 1) })
                .collect();
            let magnitude = c.unsigned_abs();
            match (factors.is_empty(), magnitude) {
                (true, m) => write!(f, "{m}")?,
                (false, 1) => write!(f, "{}", factors.join(" "))?,
                (false, m) => write!(f, "{m} {}", factors.join(" "))?,
            }
        }
        Ok(())
    }
}
