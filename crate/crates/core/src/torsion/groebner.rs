use alloc::collections::BTreeSet;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::graded::{Monomial, ResidueGradedPoly, ResidueRing};
use crate::{Error, Result};

/// A Gröbner basis over `F_q` for the monomial order of [`crate::graded`],
/// possibly truncated: S-pairs whose lcm has weight above `degree_bound`
/// are skipped and `truncated` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Arc<ResidueRing>,
    basis: Vec<ResidueGradedPoly>,
    degree_bound: u64,
    truncated: bool,
    homogeneous: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<ResidueRing> {
        &self.ring
    }

    /// Reduced basis, monic, sorted by leading monomial.
    pub fn basis(&self) -> &[ResidueGradedPoly] {
        &self.basis
    }

    pub fn degree_bound(&self) -> u64 {
        self.degree_bound
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    /// For homogeneous input a truncated basis is still complete in every
    /// weight up to the bound.
    pub fn complete_up_to(&self, weight: u64) -> bool {
        !self.truncated || (self.homogeneous && weight <= self.degree_bound)
    }

    /// Is `f` in the ideal? `None` when the answer is not proven.
    pub fn contains(&self, f: &ResidueGradedPoly) -> Result<Option<bool>> {
        match normal_form(f, self) {
            Ok(r) => Ok(Some(r.is_zero())),
            Err(Error::TruncationUnsound { .. }) => Ok(None),
            Err(e) => Err(e),
        }
    }
}

/// Leading monomial and the rest of a monic polynomial.
struct Reducer {
    lead: Monomial,
    tail: ResidueGradedPoly,
}

impl Reducer {
    fn new(g: &ResidueGradedPoly) -> Self {
        let mut tail = g.monic();
        let (lead, _) = tail.take_leading().expect("nonzero basis element");
        Reducer { lead, tail }
    }
}

/// Remainder without the truncation check.
pub(crate) fn reduce(f: &ResidueGradedPoly, basis: &GroebnerBasis) -> ResidueGradedPoly {
    let reducers: Vec<Reducer> = basis.basis.iter().map(Reducer::new).collect();
    reduce_fully(f, &reducers)
}

fn reduce_fully(f: &ResidueGradedPoly, reducers: &[Reducer]) -> ResidueGradedPoly {
    let mut work = f.clone();
    let mut rem = ResidueGradedPoly::zero(f.ring());
    while let Some((m, c)) = work.take_leading() {
        match reducers.iter().find(|r| r.lead.divides(&m)) {
            Some(r) => {
                let q = r.lead.quotient_of(&m).expect("divides");
                work.axpy(&c.neg(), &q, &r.tail);
            }
            None => rem.insert_term(m, c),
        }
    }
    rem
}

/// Buchberger completion with S-pairs processed by increasing lcm weight,
/// followed by inter-reduction.
pub fn groebner_basis(gens: &[ResidueGradedPoly], degree_bound: u64) -> Result<GroebnerBasis> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Err(Error::Precondition("no generators".into())),
    };
    let homogeneous = gens.iter().all(|g| g.is_zero() || g.homogeneous_weight().is_some());
    let mut basis: Vec<ResidueGradedPoly> = Vec::new();
    for g in gens {
        if g.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        if !g.is_zero() {
            basis.push(g.monic());
        }
    }
    let mut pairs: BTreeSet<(u64, usize, usize)> = BTreeSet::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.insert((lcm_weight(&ring, &basis[i], &basis[j])?, i, j));
        }
    }
    let mut truncated = false;
    while let Some((w, i, j)) = pairs.pop_first() {
        if w > degree_bound {
            truncated = true;
            continue;
        }
        let (li, lj) = (lead(&basis[i]), lead(&basis[j]));
        let l = li.lcm(&lj);
        if l == li.mul(&lj) {
            continue;
        }
        let mut s = basis[i].shift(&li.quotient_of(&l).expect("lcm"));
        let sj = basis[j].shift(&lj.quotient_of(&l).expect("lcm"));
        s = s.checked_sub(&sj)?;
        let reducers: Vec<Reducer> = basis.iter().map(Reducer::new).collect();
        let r = reduce_fully(&s, &reducers);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(r.monic());
            for i in 0..k {
                pairs.insert((lcm_weight(&ring, &basis[i], &basis[k])?, i, k));
            }
        }
    }
    Ok(GroebnerBasis {
        basis: interreduce(basis),
        ring,
        degree_bound,
        truncated,
        homogeneous,
    })
}

fn lead(g: &ResidueGradedPoly) -> Monomial {
    g.leading_monomial().expect("nonzero").clone()
}

fn lcm_weight(ring: &ResidueRing, a: &ResidueGradedPoly, b: &ResidueGradedPoly) -> Result<u64> {
    ring.weight(&lead(a).lcm(&lead(b)))
}

fn interreduce(mut basis: Vec<ResidueGradedPoly>) -> Vec<ResidueGradedPoly> {
    basis.sort_by_key(lead);
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<ResidueGradedPoly> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lg = lead(g);
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = lead(h);
            j != k && lh.divides(&lg) && (lh != lg || j < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Reducer> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, h)| Reducer::new(h))
            .collect();
        out.push(reduce_fully(&minimal[k], &others).monic());
    }
    out.sort_by_key(lead);
    out
}

/// Remainder of `f` on division by the basis; zero iff `f` lies in the ideal.
///
/// A nonzero remainder is only conclusive when the basis is complete in the
/// weights of `f`; otherwise [`Error::TruncationUnsound`] is returned.
pub fn normal_form(f: &ResidueGradedPoly, basis: &GroebnerBasis) -> Result<ResidueGradedPoly> {
    if f.ring() != &basis.ring {
        return Err(Error::RingMismatch);
    }
    let r = reduce(f, basis);
    if !r.is_zero() {
        let w = f.max_weight()?;
        if !basis.complete_up_to(w) {
            return Err(Error::TruncationUnsound { weight: basis.degree_bound });
        }
    }
    Ok(r)
}
