//! The comparison map `γ: V^A → V^B` for a structural extension `A ⊂ B`,
//! determined by sending `ℓ_i^A` to the coefficient of the same `X`-degree
//! term of the `B`-logarithm.

mod checks;


use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

pub use checks::{
    check_unramified_formula, eventual_division_witness, gamma_sharp_matrix, kappa_congruence,
    order_preservation_check, DivisionCase, DivisionWitness, EventualDivisionReport,
    GammaSharpMatrix, KappaReport, OrderReport, OrderSample, UnramifiedReport,
};

use crate::formal_module::{hazewinkel_log, LogCoefficients};
use crate::graded::{GradedPoly, Monomial, PolyRing};
use crate::number_ring::{FieldElement, TowerDescriptor};
use crate::{Error, Result};

/// Images `γ(v_1^A), …, γ(v_N^A)` in `V^B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaTable {
    source: Arc<TowerDescriptor>,
    target: Arc<TowerDescriptor>,
    ring: Arc<PolyRing>,
    images: Vec<GradedPoly>,
    f_rel: usize,
    integrality_verified: bool,
}

impl GammaTable {
    pub fn source(&self) -> &Arc<TowerDescriptor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<TowerDescriptor> {
        &self.target
    }

    /// `V^B` truncated at `N`.
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn images(&self) -> &[GradedPoly] {
        &self.images
    }

    /// `γ(v_n^A)`, `1 ≤ n ≤ N`.
    pub fn image(&self, n: usize) -> Option<&GradedPoly> {
        n.checked_sub(1).and_then(|i| self.images.get(i))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Relative residue degree `f_B / f_A`.
    pub fn f_rel(&self) -> usize {
        self.f_rel
    }

    /// Relative ramification degree `e_B / e_A`.
    pub fn e_rel(&self) -> usize {
        self.target.e() / self.source.e()
    }

    pub fn integrality_verified(&self) -> bool {
        self.integrality_verified
    }

    pub fn is_totally_ramified(&self) -> bool {
        self.f_rel == 1
    }

    /// `γ^♯(f)` for `f` with coefficients in `A` or `B`: substitute the
    /// images and embed coefficients into `B`.
    pub fn apply(&self, f: &GradedPoly) -> Result<GradedPoly> {
        f.apply_ring_map(&self.ring, &self.images)
    }

    /// `γ^♯` of a monomial, with a cache of image powers shared across calls.
    pub(crate) fn image_of_monomial(
        &self,
        m: &Monomial,
        cache: &mut BTreeMap<(usize, u64), GradedPoly>,
    ) -> Result<GradedPoly> {
        let mut acc = GradedPoly::one(&self.ring);
        for (n, a) in m.pairs() {
            let img = self.image(n).ok_or(Error::MissingImage(n))?;
            let power = cache.entry((n, a)).or_insert_with(|| img.pow(a));
            acc = acc.checked_mul(power)?;
        }
        Ok(acc)
    }
}

fn relative_residue_degree(source: &TowerDescriptor, target: &TowerDescriptor) -> Result<usize> {
    source.embedding_into(target)?;
    if !target.f().is_multiple_of(source.f()) || !target.e().is_multiple_of(source.e()) {
        return Err(Error::NotSubtower);
    }
    Ok(target.f() / source.f())
}

/// `c_i`: `ℓ^B_{i/f_rel}` when `f_rel | i`, else 0, read from precomputed
/// `B`-logarithms.
fn match_log_from(logs: &LogCoefficients, ring: &Arc<PolyRing>, f_rel: usize, i: usize) -> Result<GradedPoly> {
    if !i.is_multiple_of(f_rel) {
        return Ok(GradedPoly::zero(ring));
    }
    let l = logs.get(i / f_rel).ok_or(Error::TruncationExceeded {
        index: i / f_rel,
        n: logs.n(),
    })?;
    l.with_ring(ring)
}

/// The target of `γ(ℓ_i^A)`: `ℓ^B_{i/f_rel}` when `f_rel` divides `i`,
/// otherwise 0. The result lives in `V^B` truncated at `max(i, 1)`.
pub fn match_log(source: &Arc<TowerDescriptor>, target: &Arc<TowerDescriptor>, i: usize) -> Result<GradedPoly> {
    let f_rel = relative_residue_degree(source, target)?;
    let n = i.max(1);
    let ring = PolyRing::new(target, n);
    let logs = hazewinkel_log(target, i / f_rel)?;
    match_log_from(&logs, &ring, f_rel, i)
}

/// `γ(v_n^A) = π_A c_n − Σ_{i=1}^{n−1} c_i γ(v_{n−i}^A)^{q_A^i}` for
/// `n = 1, …, N`, followed by an integrality check of every image.
pub fn compute_gamma(source: &Arc<TowerDescriptor>, target: &Arc<TowerDescriptor>, n: usize) -> Result<GammaTable> {
    if n == 0 {
        return Err(Error::Precondition("truncation index must be at least 1".into()));
    }
    let f_rel = relative_residue_degree(source, target)?;
    let ring = PolyRing::new(target, n);
    let logs = hazewinkel_log(target, n / f_rel)?;
    let c: Vec<GradedPoly> = (0..=n)
        .map(|i| match_log_from(&logs, &ring, f_rel, i))
        .collect::<Result<_>>()?;
    let pi_a = FieldElement::uniformizer(source).embed(target)?;
    let q_a = source.q();

    let mut images: Vec<GradedPoly> = Vec::with_capacity(n);
    for k in 1..=n {
        let mut value = c[k].scale(&pi_a)?;
        let mut qi = q_a;
        for i in 1..k {
            if !c[i].is_zero() {
                let prev = &images[k - i - 1];
                if !prev.is_zero() {
                    value = &value - &(&c[i] * &prev.pow(qi));
                }
            }
            qi = qi.checked_mul(q_a).ok_or(Error::WeightOverflow)?;
        }
        images.push(value);
    }
    for (k, img) in images.iter().enumerate() {
        if !img.is_integral() {
            return Err(Error::IntegralityFailure { n: k + 1 });
        }
    }
    Ok(GammaTable {
        source: source.clone(),
        target: target.clone(),
        ring,
        images,
        f_rel,
        integrality_verified: true,
    })
}
