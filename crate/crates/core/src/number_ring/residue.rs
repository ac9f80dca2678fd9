use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::rational::{inv_mod, mul_mod};

/// The residue field `F_q = F_p[ω̄]/(ḡ)` of a tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueField {
    p: u64,
    /// Monic reduction of the unramified polynomial, constant first.
    modulus: Vec<u64>,
}

impl ResidueField {
    pub fn new(p: u64, modulus: Vec<u64>) -> Arc<Self> {
        debug_assert_eq!(modulus.last(), Some(&1));
        Arc::new(ResidueField { p, modulus })
    }

    /// The prime field `F_p`.
    pub fn prime(p: u64) -> Arc<Self> {
        ResidueField::new(p, vec![0, 1])
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Degree `f` over `F_p`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.degree() as u32)
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

/// An element of `F_q`, stored as `f` coordinates in the basis `1, ω̄, …`.
#[derive(Clone, PartialEq, Eq)]
pub struct ResidueElement {
    field: Arc<ResidueField>,
    coeffs: Vec<u64>,
}

impl ResidueElement {
    pub fn new(field: &Arc<ResidueField>, coeffs: Vec<u64>) -> Self {
        let p = field.p;
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        reduce_in_place(&mut coeffs, &field.modulus, p);
        coeffs.resize(field.degree(), 0);
        ResidueElement {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_u64(field: &Arc<ResidueField>, c: u64) -> Self {
        ResidueElement::new(field, vec![c])
    }

    pub fn zero(field: &Arc<ResidueField>) -> Self {
        ResidueElement::new(field, Vec::new())
    }

    pub fn one(field: &Arc<ResidueField>) -> Self {
        ResidueElement::from_u64(field, 1)
    }

    pub fn field(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.first() == Some(&1) && self.coeffs[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.field.p;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a + b) % p)
            .collect();
        ResidueElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn neg(&self) -> Self {
        let p = self.field.p;
        let coeffs = self.coeffs.iter().map(|&a| (p - a) % p).collect();
        ResidueElement {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let p = self.field.p;
        let mut prod = vec![0u64; 2 * self.coeffs.len()];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        reduce_in_place(&mut prod, &self.field.modulus, p);
        prod.resize(self.field.degree(), 0);
        ResidueElement {
            field: self.field.clone(),
            coeffs: prod,
        }
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = ResidueElement::one(&self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.field.degree() == 1 {
            let p = self.field.p;
            return Some(ResidueElement::from_u64(&self.field, inv_mod(self.coeffs[0], p)));
        }
        Some(self.pow(self.field.order() - 2))
    }
}

fn reduce_in_place(coeffs: &mut Vec<u64>, modulus: &[u64], p: u64) {
    let deg = modulus.len() - 1;
    while coeffs.len() > deg {
        let top = coeffs.pop().unwrap_or(0);
        if top == 0 {
            continue;
        }
        let base = coeffs.len() - deg;
        for (j, &m) in modulus[..deg].iter().enumerate() {
            coeffs[base + j] = (coeffs[base + j] + p - mul_mod(top, m, p)) % p;
        }
    }
}

impl fmt::Debug for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ResidueElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.len() == 1 {
            return write!(f, "{}", self.coeffs[0]);
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str("+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("w")?,
                (1, c) => write!(f, "{c}w")?,
                (i, 1) => write!(f, "w^{i}")?,
                (i, c) => write!(f, "{c}w^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
