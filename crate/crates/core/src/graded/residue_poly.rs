use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use core::fmt;

use super::monomial::Monomial;
use super::poly::write_term;
use crate::number_ring::{ResidueElement, ResidueField};
use crate::{Error, Result};

/// `F_q[v_1, …, v_N]` with the same weight convention as [`super::PolyRing`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueRing {
    field: Arc<ResidueField>,
    q: u64,
    n: usize,
}

impl ResidueRing {
    pub fn new(field: &Arc<ResidueField>, q: u64, n: usize) -> Arc<Self> {
        Arc::new(ResidueRing {
            field: field.clone(),
            q,
            n,
        })
    }

    /// `F_p[v_1, …, v_N]` with weights `p^n − 1`.
    pub fn prime(p: u64, n: usize) -> Arc<Self> {
        ResidueRing::new(&ResidueField::prime(p), p, n)
    }

    pub fn field(&self) -> &Arc<ResidueField> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, m: &Monomial) -> Result<u64> {
        m.weight(self.q).ok_or(Error::WeightOverflow)
    }

    fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Sparse polynomial over a residue field, ordered like [`super::GradedPoly`].
#[derive(Clone, PartialEq, Eq)]
pub struct ResidueGradedPoly {
    ring: Arc<ResidueRing>,
    terms: BTreeMap<Monomial, ResidueElement>,
}

impl ResidueGradedPoly {
    pub fn zero(ring: &Arc<ResidueRing>) -> Self {
        ResidueGradedPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<ResidueRing>) -> Self {
        ResidueGradedPoly::monomial(ring, Monomial::one())
    }

    /// A monomial with coefficient 1.
    pub fn monomial(ring: &Arc<ResidueRing>, m: Monomial) -> Self {
        ResidueGradedPoly::from_terms(ring, [(m, ResidueElement::one(&ring.field))])
    }

    pub fn var(ring: &Arc<ResidueRing>, n: usize) -> Self {
        ResidueGradedPoly::monomial(ring, Monomial::var(n))
    }

    pub fn from_terms<I>(ring: &Arc<ResidueRing>, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, ResidueElement)>,
    {
        let mut map: BTreeMap<Monomial, ResidueElement> = BTreeMap::new();
        for (m, c) in terms {
            match map.get_mut(&m) {
                Some(acc) => *acc = acc.add(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        ResidueGradedPoly {
            ring: ring.clone(),
            terms: map,
        }
    }

    /// Integer coefficients reduced into the prime field.
    pub fn from_int_terms(ring: &Arc<ResidueRing>, terms: &[(Monomial, i64)]) -> Self {
        let p = ring.field.p() as i64;
        ResidueGradedPoly::from_terms(
            ring,
            terms
                .iter()
                .map(|(m, c)| (m.clone(), ResidueElement::from_u64(&ring.field, c.rem_euclid(p) as u64))),
        )
    }

    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &ResidueElement)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&ResidueElement> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        self.terms.keys().next_back().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &ResidueElement)> {
        self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)
    }

    pub fn homogeneous_weight(&self) -> Option<u64> {
        let mut weights = self.terms.keys().map(|m| self.ring.weight(m).ok());
        let first = weights.next()??;
        weights.all(|w| w == Some(first)).then_some(first)
    }

    /// Largest weight among the terms (0 for the zero polynomial).
    pub fn max_weight(&self) -> Result<u64> {
        self.terms
            .keys()
            .map(|m| self.ring.weight(m))
            .try_fold(0, |acc, w| Ok(acc.max(w?)))
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if ResidueRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.axpy(&ResidueElement::one(&self.ring.field), &Monomial::one(), other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.axpy(&ResidueElement::one(&self.ring.field).neg(), &Monomial::one(), other);
        Ok(out)
    }

    /// `self += c · m · other`, in place.
    pub(crate) fn axpy(&mut self, c: &ResidueElement, m: &Monomial, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (k, x) in &other.terms {
            let key = k.mul(m);
            let delta = x.mul(c);
            match self.terms.get_mut(&key) {
                Some(acc) => {
                    *acc = acc.add(&delta);
                    if acc.is_zero() {
                        self.terms.remove(&key);
                    }
                }
                None => {
                    self.terms.insert(key, delta);
                }
            }
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = ResidueGradedPoly::zero(&self.ring);
        for (m, c) in &self.terms {
            out.axpy(c, m, other);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &ResidueElement) -> Self {
        let mut out = ResidueGradedPoly::zero(&self.ring);
        out.axpy(c, &Monomial::one(), self);
        out
    }

    /// Multiply by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        ResidueGradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc = ResidueGradedPoly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.checked_mul(&base).expect("same ring");
            }
            k >>= 1;
            if k > 0 {
                base = base.checked_mul(&base).expect("same ring");
            }
        }
        acc
    }

    /// Leading coefficient scaled to 1; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            Ok((_, c)) => self.scale(&c.inv().expect("nonzero element of a field")),
            Err(_) => self.clone(),
        }
    }

    /// `self / v_n` if every term is divisible by `v_n`.
    pub fn divide_by_var(&self, n: usize) -> Option<Self> {
        let v = Monomial::var(n);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(v.quotient_of(m)?, c.clone());
        }
        Some(ResidueGradedPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Drop every term that involves one of `v_1, …, v_{n−1}`.
    pub fn drop_below(&self, n: usize) -> Self {
        ResidueGradedPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| !m.involves_below(n))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub(crate) fn take_leading(&mut self) -> Option<(Monomial, ResidueElement)> {
        self.terms.pop_last()
    }

    pub(crate) fn insert_term(&mut self, m: Monomial, c: ResidueElement) {
        if !c.is_zero() {
            self.terms.insert(m, c);
        }
    }
}

impl fmt::Display for ResidueGradedPoly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            write_term(out, k == 0, &alloc::format!("{c}"), m)?;
        }
        Ok(())
    }
}

impl fmt::Debug for ResidueGradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
