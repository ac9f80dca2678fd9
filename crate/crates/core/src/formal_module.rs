//! Logarithm coefficients `ℓ_n` of the universal `A`-typical formal
//! `A`-module, expressed in the Hazewinkel generators `v_n`.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::graded::{GradedPoly, Monomial, PolyRing};
use crate::number_ring::{FieldElement, TowerDescriptor};
use crate::Result;

/// `ℓ_0, …, ℓ_N` as polynomials over the tower's fraction field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogCoefficients {
    ring: Arc<PolyRing>,
    entries: Vec<GradedPoly>,
}

impl LogCoefficients {
    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn tower(&self) -> &Arc<TowerDescriptor> {
        self.ring.tower()
    }

    pub fn entries(&self) -> &[GradedPoly] {
        &self.entries
    }

    /// `ℓ_n`.
    pub fn get(&self, n: usize) -> Option<&GradedPoly> {
        self.entries.get(n)
    }

    /// Truncation index `N`.
    pub fn n(&self) -> usize {
        self.entries.len() - 1
    }
}

/// `ℓ_n` from the recursion `π ℓ_n = Σ_{i<n} ℓ_i v_{n−i}^{q^i}`, `ℓ_0 = 1`.
pub fn hazewinkel_log(tower: &Arc<TowerDescriptor>, n: usize) -> Result<LogCoefficients> {
    let ring = PolyRing::new(tower, n);
    let q = tower.q();
    let pi_inv = FieldElement::uniformizer(tower).inv()?;
    let mut entries = vec![GradedPoly::one(&ring)];
    for k in 1..=n {
        let mut sum = GradedPoly::zero(&ring);
        let mut qi: u64 = 1;
        for (i, li) in entries.iter().enumerate() {
            let v = Monomial::var(k - i).pow(qi);
            sum = &sum + &li.shift(&v);
            qi *= q;
        }
        entries.push(sum.scale(&pi_inv)?);
    }
    Ok(LogCoefficients { ring, entries })
}

/// Ordered compositions of every `h ≤ n`, indexed by `h`.
fn compositions_up_to(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut table: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    for h in 1..=n {
        let mut comps = Vec::new();
        for first in 1..=h {
            for rest in &table[h - first] {
                let mut c = Vec::with_capacity(rest.len() + 1);
                c.push(first);
                c.extend_from_slice(rest);
                comps.push(c);
            }
        }
        table.push(comps);
    }
    table
}

/// `ℓ_h = Σ π^{−r} v_{i_1} v_{i_2}^{q^{i_1}} ⋯ v_{i_r}^{q^{i_1+⋯+i_{r−1}}}`,
/// summed over ordered compositions `i_1 + ⋯ + i_r = h`.
pub fn log_closed_form(tower: &Arc<TowerDescriptor>, n: usize) -> Result<LogCoefficients> {
    let ring = PolyRing::new(tower, n);
    let q = tower.q();
    let pi_inv = FieldElement::uniformizer(tower).inv()?;
    let table = compositions_up_to(n);
    let mut entries = Vec::with_capacity(n + 1);
    for comps in &table {
        let mut terms = Vec::with_capacity(comps.len());
        for comp in comps {
            let mut mono = Monomial::one();
            let mut prefix = 0u32;
            for &i in comp {
                mono = mono.mul(&Monomial::var(i).pow(q.pow(prefix)));
                prefix += i as u32;
            }
            terms.push((mono, pi_inv.pow(comp.len() as u64)));
        }
        entries.push(GradedPoly::from_terms(&ring, terms)?);
    }
    Ok(LogCoefficients { ring, entries })
}

/// The `BP_*` case: `A = Z_(p)`, `q = π = p`.
pub fn bp_star(p: u64, n: usize) -> Result<LogCoefficients> {
    hazewinkel_log(&TowerDescriptor::base(p)?, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_ring::make_tower;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn m(pairs: &[(usize, u64)]) -> Monomial {
        Monomial::from_pairs(pairs)
    }

    fn towers() -> Vec<Arc<TowerDescriptor>> {
        let one = BigRational::from_integer(BigInt::from(1));
        let minus_two = BigRational::from_integer(BigInt::from(-2));
        vec![
            TowerDescriptor::base(2).unwrap(),
            TowerDescriptor::pure_eisenstein(2, 2).unwrap(),
            TowerDescriptor::pure_eisenstein(3, 3).unwrap(),
            TowerDescriptor::unramified(3, 2).unwrap(),
            make_tower(
                2,
                &[BigInt::from(1), BigInt::from(1), BigInt::from(1)],
                &[vec![minus_two], vec![], vec![one]],
                "",
            )
            .unwrap(),
        ]
    }

    #[test]
    fn low_entries() {
        for t in towers() {
            let logs = hazewinkel_log(&t, 2).unwrap();
            let r = logs.ring().clone();
            let pi_inv = FieldElement::uniformizer(&t).inv().unwrap();
            assert!(logs.get(0).unwrap().is_one());
            let l1 = GradedPoly::monomial(&r, m(&[(1, 1)]), pi_inv.clone()).unwrap();
            assert_eq!(logs.get(1).unwrap(), &l1);
            let q = t.q();
            let l2 = GradedPoly::from_terms(
                &r,
                [(m(&[(2, 1)]), pi_inv.clone()), (m(&[(1, q + 1)]), pi_inv.pow(2))],
            )
            .unwrap();
            assert_eq!(logs.get(2).unwrap(), &l2);
        }
    }

    #[test]
    fn bp_examples() {
        let t2 = TowerDescriptor::base(2).unwrap();
        assert_eq!(FieldElement::uniformizer(&t2), FieldElement::from_int(&t2, 2));
        let l = bp_star(2, 1).unwrap();
        let half = FieldElement::from_rational(&t2, BigRational::new(1.into(), 2.into()));
        assert_eq!(l.get(1).unwrap(), &GradedPoly::monomial(l.ring(), m(&[(1, 1)]), half).unwrap());

        let l = bp_star(3, 2).unwrap();
        let t3 = l.tower().clone();
        let third = |d: i64| FieldElement::from_rational(&t3, BigRational::new(1.into(), d.into()));
        let expected = GradedPoly::from_terms(
            l.ring(),
            [(m(&[(2, 1)]), third(3)), (m(&[(1, 4)]), third(9))],
        )
        .unwrap();
        assert_eq!(l.get(2).unwrap(), &expected);
    }

    #[test]
    fn closed_form_term_counts() {
        let t = TowerDescriptor::base(5).unwrap();
        let logs = log_closed_form(&t, 6).unwrap();
        for h in 1..=6 {
            assert_eq!(logs.get(h).unwrap().len(), 1 << (h - 1));
        }
    }

    #[test]
    fn recursion_matches_closed_form() {
        for t in towers() {
            assert_eq!(hazewinkel_log(&t, 6).unwrap(), log_closed_form(&t, 6).unwrap());
        }
    }

    #[test]
    fn homogeneous_with_bounded_denominators() {
        for t in towers() {
            let logs = hazewinkel_log(&t, 5).unwrap();
            let pi = FieldElement::uniformizer(&t);
            for (n, l) in logs.entries().iter().enumerate() {
                assert_eq!(l.homogeneous_weight(), Some(t.q().pow(n as u32) - 1));
                assert!(l.scale(&pi.pow(n as u64)).unwrap().is_integral());
            }
        }
    }
}
