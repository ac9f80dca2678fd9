//! Sparse graded polynomials in the generators `v_1, …, v_N`.
//!
//! The generator `v_n` has weight `q^n − 1` (topological degree twice that).
//! Monomials are ordered lexicographically with `v_N > ⋯ > v_1`: the highest
//! generator index present is the most significant.

mod monomial;
mod poly;
mod residue_poly;

#[cfg(test)]
mod tests;

use alloc::vec;
use alloc::vec::Vec;

pub use monomial::{compare_monomials, Monomial};
pub use poly::{GradedPoly, PolyRing};
pub use residue_poly::{ResidueGradedPoly, ResidueRing};

/// All monomials in `v_1, …, v_n` of each weight `0..=bound`, where `v_i` has
/// weight `q^i − 1`. Entry `w` lists the weight-`w` monomials in ascending
/// monomial order.
pub fn graded_basis(q: u64, n: usize, bound: u64) -> Vec<Vec<Monomial>> {
    let mut weights = Vec::new();
    let mut qi: u64 = 1;
    for _ in 0..n {
        match qi.checked_mul(q) {
            Some(next) if next - 1 <= bound => {
                qi = next;
                weights.push(next - 1);
            }
            _ => break,
        }
    }
    let mut out = vec![Vec::new(); bound as usize + 1];
    let mut exps = vec![0u64; weights.len()];
    enumerate(&weights, weights.len(), bound, 0, &mut exps, &mut out);
    for piece in &mut out {
        piece.sort();
    }
    out
}

fn enumerate(
    weights: &[u64],
    k: usize,
    bound: u64,
    used: u64,
    exps: &mut Vec<u64>,
    out: &mut [Vec<Monomial>],
) {
    if k == 0 {
        out[used as usize].push(Monomial::from_dense(exps.clone()));
        return;
    }
    let w = weights[k - 1];
    let mut a = 0;
    while used + a * w <= bound {
        exps[k - 1] = a;
        enumerate(weights, k - 1, bound, used + a * w, exps, out);
        a += 1;
    }
    exps[k - 1] = 0;
}

/// Monomials of exactly weight `w`.
pub fn graded_piece(q: u64, n: usize, w: u64) -> Vec<Monomial> {
    graded_basis(q, n, w).pop().unwrap_or_default()
}
