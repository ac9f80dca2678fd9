use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

use super::fp_poly::FpPoly;
use crate::rational::is_prime;
use crate::{Error, Result};

/// Factorization shape of a global polynomial modulo one prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingReport {
    pub prime: u64,
    /// Degrees of the irreducible factors mod `prime`, with multiplicity, ascending.
    pub factor_degrees: Vec<u32>,
    /// Not squarefree mod `prime`. This over-reports ramification when the
    /// prime divides the index of `Z[x]/(f)`.
    pub ramified: bool,
    pub splits_completely: bool,
    pub equal_degrees: bool,
}

impl SplittingReport {
    fn suitable(&self) -> bool {
        !self.ramified && !self.splits_completely && self.equal_degrees
    }
}

/// Splitting data for `poly` (integer coefficients, constant first, monic) mod `p`.
pub fn splitting_at(poly: &[BigInt], p: u64) -> Result<SplittingReport> {
    if poly.len() < 2 || !poly.last().is_some_and(One::is_one) {
        return Err(Error::InvalidPolynomial(
            "expected a monic polynomial of degree ≥ 1".into(),
        ));
    }
    let pb = BigInt::from(p);
    let reduced: Vec<u64> = poly
        .iter()
        .map(|c| ((c % &pb + &pb) % &pb).to_u64().unwrap_or(0))
        .collect();
    let fp = FpPoly::new(p, reduced);
    let factor_degrees = fp.factor_degrees();
    let ramified = !fp.is_squarefree();
    let splits_completely = factor_degrees.iter().all(|&d| d == 1);
    let equal_degrees = factor_degrees.windows(2).all(|w| w[0] == w[1]);
    Ok(SplittingReport {
        prime: p,
        factor_degrees,
        ramified,
        splits_completely,
        equal_degrees,
    })
}

/// Smallest prime `p ≤ p_max` at which `poly` is squarefree, not totally
/// split, and has irreducible factors all of one degree.
pub fn find_nonsplit_prime(poly: &[BigInt], p_max: u64) -> Result<SplittingReport> {
    let mut table = Vec::new();
    for p in (2..=p_max).filter(|&n| is_prime(n)) {
        let report = splitting_at(poly, p)?;
        if report.suitable() {
            return Ok(report);
        }
        table.push(report);
    }
    Err(Error::NoSuitablePrimeFound { p_max, table })
}
