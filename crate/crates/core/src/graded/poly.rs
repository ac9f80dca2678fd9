use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::residue_poly::{ResidueGradedPoly, ResidueRing};
use crate::number_ring::{same_tower, FieldElement, TowerDescriptor};
use crate::{Error, Result};

/// Ambient ring `K[v_1, …, v_N]` with weights `w(v_n) = q^n − 1`.
///
/// `q` is usually the residue order of the coefficient tower, but the
/// comparison map needs `V^A ⊗ B`, whose coefficients live in `B` while the
/// weights still use `q_A`.
#[derive(Clone, Debug)]
pub struct PolyRing {
    tower: Arc<TowerDescriptor>,
    q: u64,
    n: usize,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.n == other.n && same_tower(&self.tower, &other.tower)
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new(tower: &Arc<TowerDescriptor>, n: usize) -> Arc<Self> {
        PolyRing::with_weights(tower, tower.q(), n)
    }

    pub fn with_weights(tower: &Arc<TowerDescriptor>, q: u64, n: usize) -> Arc<Self> {
        Arc::new(PolyRing {
            tower: tower.clone(),
            q,
            n,
        })
    }

    pub fn tower(&self) -> &Arc<TowerDescriptor> {
        &self.tower
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Truncation index: the largest generator index.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weight(&self, m: &Monomial) -> Result<u64> {
        m.weight(self.q).ok_or(Error::WeightOverflow)
    }

    /// Weight of `v_n`.
    pub fn var_weight(&self, n: usize) -> Result<u64> {
        self.q
            .checked_pow(n as u32)
            .map(|qn| qn - 1)
            .ok_or(Error::WeightOverflow)
    }

    pub fn residue_ring(&self) -> Arc<ResidueRing> {
        ResidueRing::new(self.tower.residue_field(), self.q, self.n)
    }

    /// Monomials of every weight up to `bound`, see [`super::graded_basis`].
    pub fn graded_basis(&self, bound: u64) -> Vec<Vec<Monomial>> {
        super::graded_basis(self.q, self.n, bound)
    }

    fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Sparse polynomial over a tower's fraction field.
///
/// Terms are kept in a map ordered by the monomial order, so iteration in
/// reverse is descending and the leading term is the last entry.
#[derive(Clone)]
pub struct GradedPoly {
    ring: Arc<PolyRing>,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl GradedPoly {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        GradedPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        GradedPoly::constant(ring, FieldElement::one(ring.tower())).expect("same tower")
    }

    pub fn constant(ring: &Arc<PolyRing>, c: FieldElement) -> Result<Self> {
        GradedPoly::monomial(ring, Monomial::one(), c)
    }

    /// The generator `v_n`.
    pub fn var(ring: &Arc<PolyRing>, n: usize) -> Result<Self> {
        if n == 0 || n > ring.n {
            return Err(Error::TruncationExceeded { index: n, n: ring.n });
        }
        GradedPoly::monomial(ring, Monomial::var(n), FieldElement::one(ring.tower()))
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: FieldElement) -> Result<Self> {
        GradedPoly::from_terms(ring, [(m, c)])
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms<I>(ring: &Arc<PolyRing>, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, FieldElement)>,
    {
        let mut map: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (m, c) in terms {
            if !same_tower(c.tower(), ring.tower()) {
                return Err(Error::TowerMismatch);
            }
            if m.max_index() > ring.n {
                return Err(Error::TruncationExceeded {
                    index: m.max_index(),
                    n: ring.n,
                });
            }
            match map.get_mut(&m) {
                Some(acc) => acc.add_assign_unchecked(&c),
                None => {
                    map.insert(m, c);
                }
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(GradedPoly {
            ring: ring.clone(),
            terms: map,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &FieldElement)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&FieldElement> {
        self.terms.get(m)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        self.terms.keys().next_back().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_term(&self) -> Result<(&Monomial, &FieldElement)> {
        self.terms.iter().next_back().ok_or(Error::ZeroPolynomial)
    }

    /// The common weight of all terms; `None` for zero or non-homogeneous
    /// polynomials.
    pub fn homogeneous_weight(&self) -> Option<u64> {
        let mut weights = self.terms.keys().map(|m| self.ring.weight(m).ok());
        let first = weights.next()??;
        weights.all(|w| w == Some(first)).then_some(first)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(FieldElement::is_integral)
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if PolyRing::same(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_in_place(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        let mut out = self.clone();
        out.add_in_place(&-other);
        Ok(out)
    }

    fn add_in_place(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            match self.terms.get_mut(m) {
                Some(acc) => {
                    acc.add_assign_unchecked(c);
                    if acc.is_zero() {
                        self.terms.remove(m);
                    }
                }
                None => {
                    self.terms.insert(m.clone(), c.clone());
                }
            }
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.mul_filtered(other, |_| true))
    }

    /// Product keeping only the monomials accepted by `keep`.
    fn mul_filtered(&self, other: &Self, keep: impl Fn(&Monomial) -> bool) -> Self {
        let mut out: BTreeMap<Monomial, FieldElement> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if !keep(&m) {
                    continue;
                }
                let c = ca.mul_unchecked(cb);
                match out.get_mut(&m) {
                    Some(acc) => acc.add_assign_unchecked(&c),
                    None => {
                        out.insert(m, c);
                    }
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        GradedPoly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    /// Multiply every coefficient by a scalar of the coefficient tower.
    pub fn scale(&self, c: &FieldElement) -> Result<Self> {
        if !same_tower(c.tower(), self.ring.tower()) {
            return Err(Error::TowerMismatch);
        }
        if c.is_zero() {
            return Ok(GradedPoly::zero(&self.ring));
        }
        Ok(GradedPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.mul_unchecked(c)))
                .collect(),
        })
    }

    /// Multiply by a monomial.
    pub fn shift(&self, m: &Monomial) -> Self {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        if let Some((m, c)) = self.single_term() {
            return GradedPoly {
                ring: self.ring.clone(),
                terms: [(m.pow(k), c.pow(k))].into_iter().collect(),
            };
        }
        let mut acc = GradedPoly::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul_filtered(&base, |_| true);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_filtered(&base, |_| true);
            }
        }
        acc
    }

    fn single_term(&self) -> Option<(&Monomial, &FieldElement)> {
        (self.terms.len() == 1).then(|| self.terms.iter().next().expect("one term"))
    }

    /// Substitute `v_n ↦ images[n − 1]` and embed coefficients into the
    /// images' tower.
    pub fn apply_ring_map(&self, target: &Arc<PolyRing>, images: &[GradedPoly]) -> Result<GradedPoly> {
        for img in images {
            if !PolyRing::same(img.ring(), target) {
                return Err(Error::RingMismatch);
            }
        }
        let mut powers: BTreeMap<(usize, u64), GradedPoly> = BTreeMap::new();
        let mut out = GradedPoly::zero(target);
        for (m, c) in &self.terms {
            let c = c.embed(target.tower())?;
            let mut term = GradedPoly::constant(target, c)?;
            for (n, a) in m.pairs() {
                let img = images.get(n - 1).ok_or(Error::MissingImage(n))?;
                let power = powers.entry((n, a)).or_insert_with(|| img.pow(a));
                term = term.mul_filtered(power, |_| true);
            }
            out.add_in_place(&term);
        }
        Ok(out)
    }

    /// Image modulo `(π, v_1, …, v_{n−1})`: terms involving a dropped
    /// generator vanish, surviving coefficients go to the residue field.
    /// `n = 1` reduces modulo `π` only.
    pub fn reduce_mod_ideal(&self, n: usize) -> Result<ResidueGradedPoly> {
        let ring = self.ring.residue_ring();
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            if m.involves_below(n) {
                continue;
            }
            terms.push((m.clone(), c.residue()?));
        }
        Ok(ResidueGradedPoly::from_terms(&ring, terms))
    }

    /// Canonical representative modulo `p` with `v_1, …, v_{n−1}` dropped:
    /// coefficients are reduced coordinatewise into `0..p`.
    pub fn reduce_mod_p_dropping(&self, n: usize) -> Result<GradedPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.involves_below(n) {
                continue;
            }
            let r = c.reduce_mod_p()?;
            if !r.is_zero() {
                terms.insert(m.clone(), r);
            }
        }
        Ok(GradedPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// `self · other` reduced as in [`GradedPoly::reduce_mod_p_dropping`].
    pub fn mul_mod_p_dropping(&self, other: &Self, n: usize) -> Result<GradedPoly> {
        self.check_ring(other)?;
        self.mul_filtered(other, |m| !m.involves_below(n))
            .reduce_mod_p_dropping(n)
    }

    /// `self / v_n` if every term is divisible by `v_n`.
    pub fn divide_by_var(&self, n: usize) -> Option<GradedPoly> {
        let v = Monomial::var(n);
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(v.quotient_of(m)?, c.clone());
        }
        Some(GradedPoly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Same terms, reinterpreted over another ring with the same tower.
    pub fn with_ring(&self, ring: &Arc<PolyRing>) -> Result<GradedPoly> {
        GradedPoly::from_terms(ring, self.terms.iter().map(|(m, c)| (m.clone(), c.clone())))
    }

    /// Coefficients embedded into a larger tower.
    pub fn embed(&self, ring: &Arc<PolyRing>) -> Result<GradedPoly> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.embed(ring.tower())?)))
            .collect::<Result<Vec<_>>>()?;
        GradedPoly::from_terms(ring, terms)
    }
}

impl<'a> Add<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_add(rhs).expect("ring mismatch in addition")
    }
}

impl<'a> Sub<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_sub(rhs).expect("ring mismatch in subtraction")
    }
}

impl<'a> Mul<&'a GradedPoly> for &'a GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.checked_mul(rhs).expect("ring mismatch in multiplication")
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        GradedPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

pub(crate) fn write_term(out: &mut fmt::Formatter<'_>, first: bool, coeff: &str, m: &Monomial) -> fmt::Result {
    let (negative, body) = match coeff.strip_prefix('-') {
        Some(rest) if !rest.contains(' ') => (true, String::from(rest)),
        _ => (false, String::from(coeff)),
    };
    let body = if body.contains([' ', '+']) {
        alloc::format!("({body})")
    } else {
        body
    };
    if first {
        if negative {
            out.write_str("-")?;
        }
    } else {
        out.write_str(if negative { " - " } else { " + " })?;
    }
    match (m.is_one(), body.as_str()) {
        (true, _) => out.write_str(&body),
        (false, "1") => write!(out, "{m}"),
        (false, _) => write!(out, "{body}*{m}"),
    }
}

impl fmt::Display for GradedPoly {
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

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

