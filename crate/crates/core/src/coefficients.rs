//! Exact evaluation of the scalar coefficients in the cohomology class
//! computation of the tetragonal-side curve.
//!
//! Everything is done in arbitrary-precision integers and rationals.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::Error;

fn factorial_table() -> &'static Mutex<Vec<BigInt>> {
    static TABLE: OnceLock<Mutex<Vec<BigInt>>> = OnceLock::new();
    TABLE.get_or_init(|| Mutex::new(vec![BigInt::one()]))
}

/// `n!`, memoized.
pub fn factorial(n: u64) -> BigInt {
    let mut table = factorial_table().lock().unwrap_or_else(|e| e.into_inner());
    while table.len() as u64 <= n {
        let k = table.len();
        let next = &table[k - 1] * BigInt::from(k);
        table.push(next);
    }
    table[n as usize].clone()
}

/// `a(a−1)⋯(a−k+1)/k!` for any integer `a`.
pub fn gen_binomial(a: i64, k: u64) -> BigInt {
    let mut num = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(a) - BigInt::from(i);
    }
    num / factorial(k)
}

fn check_genus(g: u64) -> Result<(), Error> {
    if g < 3 {
        return Err(Error::Precondition(format!("genus must be at least 3, got {g}")));
    }
    Ok(())
}

/// `½g(g−1) + (2−g)g + ½(2−g)(1−g)`.
pub fn reduced_closed_form(g: u64) -> BigRational {
    let g = BigInt::from(g);
    let two = BigInt::from(2);
    let half = BigRational::new(BigInt::one(), two.clone());
    let a = &half * BigRational::from_integer(&g * (&g - 1));
    let b = BigRational::from_integer((&two - &g) * &g);
    let c = &half * BigRational::from_integer((&two - &g) * (BigInt::one() - &g));
    a + b + c
}

/// The terms `C(2−g,k)·C(g,2−k)` for `k = 0, 1, 2`.
pub fn reduced_terms(g: u64) -> [BigInt; 3] {
    let a = 2 - g as i64;
    [0u64, 1, 2].map(|k| gen_binomial(a, k) * gen_binomial(g as i64, 2 - k))
}

/// `Σ C(2−g,k)·C(g,2−k)`, checked against the closed form and against 1.
pub fn reduced_identity(g: u64) -> Result<BigInt, Error> {
    check_genus(g)?;
    let sum: BigInt = reduced_terms(g).iter().sum();
    let closed = reduced_closed_form(g);
    if BigRational::from_integer(sum.clone()) != closed {
        return Err(Error::Invariant(format!(
            "g={g}: term sum {sum} differs from closed form {closed}"
        )));
    }
    if !sum.is_one() {
        return Err(Error::Invariant(format!("g={g}: identity sum is {sum}, expected 1")));
    }
    Ok(sum)
}

/// Per-`k` contributions to `S(g)`, optionally with an extra `2^k` inside the sum.
fn chain_terms(g: u64, with_two_power: bool) -> [BigRational; 3] {
    let a = 2 - g as i64;
    let scale = factorial(g - 1) * factorial(g);
    [0u64, 1, 2].map(|k| {
        let top = 2 * g + k - 3;
        let mut num = gen_binomial(a, k) * gen_binomial(top as i64, g + k - 2) * &scale;
        if with_two_power {
            num <<= k as usize;
        }
        BigRational::new(num, factorial(2 - k) * factorial(top))
    })
}

/// Per-`k` contributions `(g−1)!·C(2−g,k)·C(2g+k−3,g+k−2)·g!/((2−k)!(2g+k−3)!)`.
pub fn coefficient_chain_terms(g: u64) -> Result<[BigRational; 3], Error> {
    check_genus(g)?;
    Ok(chain_terms(g, false))
}

/// `S(g)`, the sum of [`coefficient_chain_terms`]. It equals 1 exactly when the
/// chain's leading coefficient is `8/(g−1)!`.
pub fn coefficient_chain(g: u64) -> Result<BigRational, Error> {
    check_genus(g)?;
    let s: BigRational = chain_terms(g, false).iter().sum();
    if !s.is_one() {
        return Err(Error::Invariant(format!(
            "g={g}: chain sum is {s}, expected 1 (coefficient {} vs 8/(g-1)! = {})",
            leading_coefficient(g, &s),
            BigRational::new(BigInt::from(8), factorial(g - 1))
        )));
    }
    Ok(s)
}

/// The same sum with `2^k` attached to each term.
pub fn coefficient_chain_with_two_power(g: u64) -> Result<BigRational, Error> {
    check_genus(g)?;
    Ok(chain_terms(g, true).iter().sum())
}

/// `8·S/(g−1)!`, the coefficient the chain produces for a given `S`.
pub fn leading_coefficient(g: u64, s: &BigRational) -> BigRational {
    s * BigRational::new(BigInt::from(8), factorial(g - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientRow {
    pub g: u64,
    pub reduced_terms: [String; 3],
    pub reduced_identity: String,
    pub chain_terms: [String; 3],
    pub chain_sum: String,
    pub leading_coefficient: String,
    pub with_two_power_sum: String,
    pub with_two_power_matches: bool,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientReport {
    pub gmin: u64,
    pub gmax: u64,
    pub rows: Vec<CoefficientRow>,
    pub all_passed: bool,
    /// Genera where the `2^k` variant does not sum to 1.
    pub with_two_power_mismatches: Vec<u64>,
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn coefficient_row(g: u64) -> Result<CoefficientRow, Error> {
    check_genus(g)?;
    let rterms = reduced_terms(g);
    let reduced = reduced_identity(g);
    let cterms = chain_terms(g, false);
    let sum: BigRational = cterms.iter().sum();
    let variant: BigRational = chain_terms(g, true).iter().sum();
    Ok(CoefficientRow {
        g,
        reduced_terms: rterms.each_ref().map(ToString::to_string),
        reduced_identity: rterms.iter().sum::<BigInt>().to_string(),
        chain_terms: cterms.each_ref().map(rational_string),
        chain_sum: rational_string(&sum),
        leading_coefficient: rational_string(&leading_coefficient(g, &sum)),
        with_two_power_sum: rational_string(&variant),
        with_two_power_matches: variant.is_one(),
        passed: reduced.is_ok() && sum.is_one(),
    })
}

/// Sweeps `g = 3..=gmax`.
pub fn verify_range(gmax: u64) -> Result<CoefficientReport, Error> {
    if gmax < 3 {
        return Err(Error::Config(format!("gmax must be at least 3, got {gmax}")));
    }
    let rows = (3..=gmax).map(coefficient_row).collect::<Result<Vec<_>, _>>()?;
    let all_passed = rows.iter().all(|r| r.passed);
    let with_two_power_mismatches = rows
        .iter()
        .filter(|r| !r.with_two_power_matches)
        .map(|r| r.g)
        .collect();
    Ok(CoefficientReport {
        gmin: 3,
        gmax,
        rows,
        all_passed,
        with_two_power_mismatches,
    })
}
