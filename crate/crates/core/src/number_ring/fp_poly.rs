//! Dense univariate polynomials over a prime field, enough for
//! squarefreeness tests and distinct-degree factorization.

use alloc::vec;
use alloc::vec::Vec;

use crate::rational::{inv_mod, mul_mod};

/// Coefficients constant-first, no trailing zeros; the zero polynomial is empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> Self {
        let mut poly = FpPoly {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    /// Reduce an integer polynomial (constant first) modulo `p`.
    pub fn from_i64(p: u64, coeffs: &[i64]) -> Self {
        let pi = p as i64;
        FpPoly::new(p, coeffs.iter().map(|c| c.rem_euclid(pi) as u64).collect())
    }

    pub fn x(p: u64) -> Self {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn one(p: u64) -> Self {
        FpPoly::new(p, vec![1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn lead(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPoly::new(self.p, Vec::new());
        }
        let mut c = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] = (c[i + j] + mul_mod(a, b, self.p)) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        let inv = inv_mod(divisor.lead(), p);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (FpPoly::new(p, Vec::new()), self.clone());
        }
        let mut quot = vec![0u64; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = mul_mod(rem[k], inv, p);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = (rem[idx] + p - mul_mod(c, dj, p)) % p;
            }
        }
        (FpPoly::new(p, quot), FpPoly::new(p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = inv_mod(self.lead(), self.p);
        FpPoly::new(
            self.p,
            self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect(),
        )
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mul_mod(c, i as u64 % self.p, self.p))
            .collect();
        FpPoly::new(self.p, c)
    }

    /// `self^exp mod modulus`.
    pub fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut acc = FpPoly::one(self.p).rem(modulus);
        let mut base = self.rem(modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    /// Degrees of the monic irreducible factors, with multiplicity, sorted.
    ///
    /// Distinct-degree factorization: after all factors of degree below `d`
    /// are removed, `gcd(x^{p^d} − x, f)` is the product of the distinct
    /// irreducible factors of degree exactly `d`.
    pub fn factor_degrees(&self) -> Vec<u32> {
        let mut degrees = Vec::new();
        let mut rest = self.monic();
        let x = FpPoly::x(self.p);
        let mut frob = x.clone();
        let mut d = 0u32;
        while rest.degree().unwrap_or(0) > 0 {
            d += 1;
            frob = frob.pow_mod(self.p, &rest);
            let g = frob.sub(&x).gcd(&rest);
            let gdeg = g.degree().unwrap_or(0);
            if gdeg == 0 {
                continue;
            }
            // strip every copy of each degree-d factor
            loop {
                let common = rest.gcd(&g);
                let cdeg = common.degree().unwrap_or(0);
                if cdeg == 0 {
                    break;
                }
                for _ in 0..cdeg / d as usize {
                    degrees.push(d);
                }
                rest = rest.div_rem(&common).0;
            }
            frob = frob.rem(&rest);
        }
        degrees.sort_unstable();
        degrees
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(n) => self.factor_degrees() == [n as u32],
        }
    }
}

/// Smallest monic irreducible polynomial of degree `f` over `F_p`, ordering
/// candidates by `Σ c_i p^i` over the non-leading coefficients.
pub fn first_irreducible(p: u64, f: usize) -> Vec<u64> {
    if f == 1 {
        return vec![0, 1];
    }
    let mut index = vec![0u64; f];
    loop {
        let mut coeffs = index.clone();
        coeffs.push(1);
        let poly = FpPoly::new(p, coeffs.clone());
        if poly.is_irreducible() {
            return coeffs;
        }
        // odometer increment
        let mut k = 0;
        loop {
            index[k] += 1;
            if index[k] < p {
                break;
            }
            index[k] = 0;
            k += 1;
            assert!(k < f, "irreducible polynomials of every degree exist");
        }
    }
}
