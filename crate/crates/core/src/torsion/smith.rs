use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::rational;
use crate::{Error, Result};

type Matrix = Vec<Vec<BigInt>>;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal with
/// `d_1 | d_2 | ⋯`, all `d_i ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
}

impl SmithForm {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.len().min(self.d.first().map_or(0, Vec::len)))
            .map(|i| self.d[i][i].clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// `row_dst -= q · row_src`
fn row_axpy(m: &mut Matrix, dst: usize, src: usize, q: &BigInt) {
    let src_row = m[src].clone();
    for (a, b) in m[dst].iter_mut().zip(&src_row) {
        *a -= q * b;
    }
}

fn col_axpy(m: &mut Matrix, dst: usize, src: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let b = row[src].clone();
        row[dst] -= q * b;
    }
}

fn swap_cols(m: &mut Matrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// Smith normal form over the integers. Rows of `a` must have equal length.
pub fn smith_normal_form(a: &[Vec<BigInt>]) -> SmithForm {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut d: Matrix = a.to_vec();
    let mut u = identity(rows);
    let mut v = identity(cols);
    'outer: for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !d[i][j].is_zero())
                .min_by(|&(i, j), &(k, l)| d[i][j].abs().cmp(&d[k][l].abs()));
            let Some((i, j)) = pivot else { break 'outer };
            d.swap(t, i);
            u.swap(t, i);
            swap_cols(&mut d, t, j);
            swap_cols(&mut v, t, j);

            let mut clean = true;
            for i in t + 1..rows {
                let q = &d[i][t] / &d[t][t];
                if !q.is_zero() {
                    row_axpy(&mut d, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                }
                clean &= d[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = &d[t][j] / &d[t][t];
                if !q.is_zero() {
                    col_axpy(&mut d, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                }
                clean &= d[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !d[i][j].is_multiple_of(&d[t][t])));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    row_axpy(&mut d, t, i, &minus_one);
                    row_axpy(&mut u, t, i, &minus_one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut().chain(u[t].iter_mut()) {
                *x = -x.clone();
            }
        }
    }
    SmithForm { u, d, v }
}

/// Local cohomology at `(p)` of one graded piece `M_d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    pub degree: i64,
    /// `H^0 = Γ_{(p)}(M_d)`: the `p`-power elementary divisors.
    pub h0_invariants: Vec<BigInt>,
    /// `H^1 ≅ (Q/Z_(p))^{corank}`, the corank being the free rank of `M_d`.
    pub h1_corank: usize,
}

/// `H^n` for `n ≥ 2` vanishes for a principal ideal and is not stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalCohomologyReport {
    pub p: u64,
    pub degrees: Vec<DegreeCohomology>,
}

/// Each `M_d` is the cokernel of its matrix: one row per generator, one
/// column per relation.
pub fn local_cohomology_degreewise(
    p: u64,
    presentations: &[(i64, Vec<Vec<BigRational>>)],
) -> Result<LocalCohomologyReport> {
    if !rational::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut degrees = Vec::with_capacity(presentations.len());
    for (degree, matrix) in presentations {
        let cols = matrix.first().map_or(0, Vec::len);
        let mut ints: Matrix = Vec::with_capacity(matrix.len());
        for row in matrix {
            if row.len() != cols {
                return Err(Error::Precondition("ragged presentation matrix".into()));
            }
            ints.push(
                row.iter()
                    .map(|x| x.is_integer().then(|| x.to_integer()).ok_or(Error::NonIntegerMatrix))
                    .collect::<Result<_>>()?,
            );
        }
        let snf = smith_normal_form(&ints);
        let diag = snf.diagonal();
        let rank = diag.iter().filter(|x| !x.is_zero()).count();
        let h0_invariants = diag
            .iter()
            .filter_map(|x| rational::int_valuation(x, p))
            .filter(|&k| k > 0)
            .map(|k| rational::pow_big(p, k as u32))
            .collect();
        degrees.push(DegreeCohomology {
            degree: *degree,
            h0_invariants,
            h1_corank: matrix.len() - rank,
        });
    }
    Ok(LocalCohomologyReport { p, degrees })
}
