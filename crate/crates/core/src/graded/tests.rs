use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use super::*;
use crate::number_ring::{FieldElement, TowerDescriptor};
use crate::Error;

fn m(pairs: &[(usize, u64)]) -> Monomial {
    Monomial::from_pairs(pairs)
}

fn ring(tower: &Arc<TowerDescriptor>, n: usize) -> Arc<PolyRing> {
    PolyRing::new(tower, n)
}

fn int(t: &Arc<TowerDescriptor>, c: i64) -> FieldElement {
    FieldElement::from_int(t, c)
}

#[test]
fn arithmetic_examples() {
    let t = TowerDescriptor::base(3).unwrap();
    let r = ring(&t, 4);
    let v1 = GradedPoly::var(&r, 1).unwrap();
    let v2 = GradedPoly::var(&r, 2).unwrap();
    let sq = &v1 * &v1;
    assert_eq!(sq.leading_monomial().unwrap(), &m(&[(1, 2)]));
    assert_eq!(sq.homogeneous_weight(), Some(2 * (3 - 1)));
    let lhs = &(&v1 + &v2) * &(&v1 - &v2);
    let rhs = &(&v1 * &v1) - &(&v2 * &v2);
    assert_eq!(lhs, rhs);
    assert_eq!(GradedPoly::var(&r, 5).unwrap_err(), Error::TruncationExceeded { index: 5, n: 4 });

    for (p, e) in [(2u64, 3usize), (3, 2), (5, 3)] {
        let t = TowerDescriptor::pure_eisenstein(p, e).unwrap();
        let r = ring(&t, 2);
        let p_over_pi = &int(&t, p as i64) * &FieldElement::theta(&t).inv().unwrap();
        let x = GradedPoly::var(&r, 1).unwrap().scale(&p_over_pi).unwrap();
        let expected = GradedPoly::monomial(&r, m(&[(1, e as u64)]), int(&t, (p as i64).pow(e as u32 - 1))).unwrap();
        assert_eq!(x.pow(e as u64), expected);
    }

    let other = ring(&TowerDescriptor::base(2).unwrap(), 4);
    assert_eq!(
        v1.checked_mul(&GradedPoly::var(&other, 1).unwrap()).unwrap_err(),
        Error::RingMismatch
    );
}

#[test]
fn compare_examples() {
    let big = m(&[(1, 100), (2, 100)]);
    assert_eq!(compare_monomials(&m(&[(3, 1)]), &big), Ordering::Greater);
    assert_eq!(compare_monomials(&m(&[(2, 2)]), &m(&[(1, 5), (2, 1)])), Ordering::Greater);
    assert_eq!(compare_monomials(&m(&[(1, 1)]), &m(&[(1, 1)])), Ordering::Equal);
    for k in 0..30 {
        assert!(m(&[(2, 2)]) > m(&[(1, k), (2, 1)]));
    }
}

#[test]
fn leading_monomial_examples() {
    let t = TowerDescriptor::base(2).unwrap();
    let r = ring(&t, 3);
    let v1 = GradedPoly::var(&r, 1).unwrap();
    let v2 = GradedPoly::var(&r, 2).unwrap();
    assert_eq!((&v1 + &v2).leading_monomial().unwrap(), &m(&[(2, 1)]));
    let f = &(&v2 * &v2) + &(&v1.pow(9) * &v2);
    assert_eq!(f.leading_monomial().unwrap(), &m(&[(2, 2)]));
    assert_eq!(v1.scale(&int(&t, 7)).unwrap().leading_monomial().unwrap(), &m(&[(1, 1)]));
    assert_eq!(GradedPoly::zero(&r).leading_monomial().unwrap_err(), Error::ZeroPolynomial);
}

#[test]
fn apply_ring_map_examples() {
    let a = TowerDescriptor::base(2).unwrap();
    let b = TowerDescriptor::pure_eisenstein(2, 2).unwrap();
    let ra = ring(&a, 2);
    let rb = ring(&b, 2);
    let image = GradedPoly::var(&rb, 1)
        .unwrap()
        .scale(&(&int(&b, 2) * &FieldElement::theta(&b).inv().unwrap()))
        .unwrap();
    let f = GradedPoly::var(&ra, 1).unwrap();
    let got = f.apply_ring_map(&rb, core::slice::from_ref(&image)).unwrap();
    assert_eq!(got, image);
    assert!(GradedPoly::one(&ra).apply_ring_map(&rb, &[]).unwrap().is_one());
    assert_eq!(
        GradedPoly::var(&ra, 2).unwrap().apply_ring_map(&rb, &[image]).unwrap_err(),
        Error::MissingImage(2)
    );
}

#[test]
fn reduce_mod_ideal_examples() {
    let t = TowerDescriptor::pure_eisenstein(3, 2).unwrap();
    let r = ring(&t, 3);
    let v1 = GradedPoly::var(&r, 1).unwrap();
    let v2 = GradedPoly::var(&r, 2).unwrap();
    let v3 = GradedPoly::var(&r, 3).unwrap();
    let f = &v3.scale(&int(&t, 3)).unwrap() + &(&v1 * &v2);
    assert!(f.reduce_mod_ideal(2).unwrap().is_zero());

    let pi = FieldElement::theta(&t);
    let unit = &int(&t, 3) * &pi.powi(-2).unwrap();
    let g = v2.pow(4).scale(&unit).unwrap();
    let red = g.reduce_mod_ideal(1).unwrap();
    assert_eq!(red.len(), 1);
    assert!(red.coeff(&m(&[(2, 4)])).unwrap().is_one());

    let h = &v2 + &v2.scale(&pi).unwrap();
    let red = h.reduce_mod_ideal(1).unwrap();
    assert_eq!(red, ResidueGradedPoly::var(&r.residue_ring(), 2));

    let bad = v2.scale(&pi.inv().unwrap()).unwrap();
    assert_eq!(bad.reduce_mod_ideal(1).unwrap_err(), Error::NotIntegral);
    // the offending term is dropped before the integrality check applies
    let dropped = v1.scale(&pi.inv().unwrap()).unwrap();
    assert!(dropped.reduce_mod_ideal(2).unwrap().is_zero());
}

#[test]
fn graded_basis_examples() {
    assert_eq!(graded_piece(2, 4, 1), vec![m(&[(1, 1)])]);
    assert_eq!(graded_piece(2, 4, 3), vec![m(&[(1, 3)]), m(&[(2, 1)])]);
    assert!(graded_piece(3, 4, 1).is_empty());
    assert_eq!(graded_piece(3, 4, 0), vec![Monomial::one()]);
}

#[test]
fn graded_basis_matches_brute_force() {
    for (q, n, bound) in [(2u64, 3usize, 20u64), (3, 3, 30), (4, 2, 40), (5, 2, 60)] {
        let basis = graded_basis(q, n, bound);
        let mut expected = vec![Vec::new(); bound as usize + 1];
        let box_size = bound / (q - 1) + 1;
        let mut exps = vec![0u64; n];
        loop {
            let mono = Monomial::from_dense(exps.clone());
            let w = mono.weight(q).unwrap();
            if w <= bound {
                expected[w as usize].push(mono);
            }
            let mut i = 0;
            while i < n {
                exps[i] += 1;
                if exps[i] < box_size {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        for piece in &mut expected {
            piece.sort();
        }
        assert_eq!(basis, expected, "q = {q}");
    }
}

#[test]
fn divide_by_var_examples() {
    let t = TowerDescriptor::base(2).unwrap();
    let r = ring(&t, 3);
    let v1 = GradedPoly::var(&r, 1).unwrap();
    let v2 = GradedPoly::var(&r, 2).unwrap();
    let f = &v1.pow(3) + &(&v1 * &v2);
    assert_eq!(f.divide_by_var(1).unwrap(), &v1.pow(2) + &v2);
    assert!((&v1 + &v2).divide_by_var(1).is_none());
    assert!(GradedPoly::zero(&r).divide_by_var(1).unwrap().is_zero());
    let rr = r.residue_ring();
    let g = ResidueGradedPoly::var(&rr, 1).pow(3);
    assert_eq!(g.divide_by_var(1).unwrap(), ResidueGradedPoly::var(&rr, 1).pow(2));
}

#[test]
fn display_is_readable() {
    let t = TowerDescriptor::pure_eisenstein(2, 2).unwrap();
    let r = ring(&t, 2);
    let theta = FieldElement::theta(&t);
    let one = FieldElement::one(&t);
    let f = GradedPoly::from_terms(
        &r,
        [(m(&[(2, 1)]), theta.clone()), (m(&[(1, 3)]), &one - &theta)],
    )
    .unwrap();
    assert_eq!(alloc::format!("{f}"), "t*v2 + (1 - t)*v1^3");
    let g = GradedPoly::from_terms(&r, [(m(&[(1, 1)]), -&one)]).unwrap();
    assert_eq!(alloc::format!("{g}"), "-v1");
}

/// Independent order: pad both exponent vectors to a common length and
/// compare them read from the top index down.
fn order_oracle(x: &Monomial, y: &Monomial) -> Ordering {
    let len = x.max_index().max(y.max_index());
    let pad = |z: &Monomial| (1..=len).rev().map(|i| z.exponent(i)).collect::<Vec<_>>();
    pad(x).cmp(&pad(y))
}

#[test]
fn order_is_total_on_small_weights() {
    for q in [2u64, 3] {
        let bound = 2 * (q.pow(3) - 1);
        let all: Vec<Monomial> = graded_basis(q, 3, bound).into_iter().flatten().collect();
        for x in &all {
            for y in &all {
                let c = compare_monomials(x, y);
                assert_eq!(c, order_oracle(x, y));
                assert_eq!(c.reverse(), compare_monomials(y, x));
                assert_eq!(c == Ordering::Equal, x == y);
            }
        }
        // transitivity on a sorted copy: sortedness must be consistent pairwise
        let mut sorted = all.clone();
        sorted.sort();
        for i in 0..sorted.len() {
            for j in i..sorted.len() {
                assert_ne!(compare_monomials(&sorted[i], &sorted[j]), Ordering::Greater);
            }
        }
    }
}

fn mono_strategy() -> impl Strategy<Value = Monomial> {
    proptest::collection::vec(0u64..5, 0..4).prop_map(Monomial::from_dense)
}

fn poly_strategy() -> impl Strategy<Value = Vec<(Monomial, i64, i64)>> {
    proptest::collection::vec((mono_strategy(), -9i64..9, -9i64..9), 0..5)
}

fn build(r: &Arc<PolyRing>, raw: &[(Monomial, i64, i64)]) -> GradedPoly {
    let t = r.tower();
    let theta = FieldElement::theta(t);
    GradedPoly::from_terms(
        r,
        raw.iter().map(|(mono, a, b)| {
            let c = &int(t, *a) + &theta.scale(&BigRational::from_integer(BigInt::from(*b)));
            (mono.clone(), c)
        }),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn order_respects_multiplication(x in mono_strategy(), y in mono_strategy(), z in mono_strategy()) {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        prop_assert!(lo.mul(&z) <= hi.mul(&z));
    }

    #[test]
    fn weight_is_additive(x in mono_strategy(), y in mono_strategy(), q in 2u64..6) {
        prop_assert_eq!(x.mul(&y).weight(q).unwrap(), x.weight(q).unwrap() + y.weight(q).unwrap());
    }

    #[test]
    fn reduction_is_a_ring_map(a in poly_strategy(), b in poly_strategy(), n in 1usize..3) {
        let t = TowerDescriptor::pure_eisenstein(3, 2).unwrap();
        let r = ring(&t, 4);
        let (x, y) = (build(&r, &a), build(&r, &b));
        let (rx, ry) = (x.reduce_mod_ideal(n).unwrap(), y.reduce_mod_ideal(n).unwrap());
        prop_assert_eq!((&x + &y).reduce_mod_ideal(n).unwrap(), rx.checked_add(&ry).unwrap());
        prop_assert_eq!((&x * &y).reduce_mod_ideal(n).unwrap(), rx.checked_mul(&ry).unwrap().drop_below(n));
    }

    #[test]
    fn ring_map_is_multiplicative(a in poly_strategy(), b in poly_strategy(), imgs in proptest::collection::vec(poly_strategy(), 4)) {
        let t = TowerDescriptor::pure_eisenstein(2, 2).unwrap();
        let r = ring(&t, 4);
        let (x, y) = (build(&r, &a), build(&r, &b));
        let images: Vec<GradedPoly> = imgs.iter().map(|raw| build(&r, &raw[..raw.len().min(2)])).collect();
        let fx = x.apply_ring_map(&r, &images).unwrap();
        let fy = y.apply_ring_map(&r, &images).unwrap();
        prop_assert_eq!((&x * &y).apply_ring_map(&r, &images).unwrap(), &fx * &fy);
        prop_assert_eq!((&x + &y).apply_ring_map(&r, &images).unwrap(), &fx + &fy);
    }

    #[test]
    fn mod_p_product_matches_full_product(a in poly_strategy(), b in poly_strategy(), n in 1usize..3) {
        let t = TowerDescriptor::pure_eisenstein(2, 3).unwrap();
        let r = ring(&t, 4);
        let (x, y) = (build(&r, &a), build(&r, &b));
        let full = (&x * &y).reduce_mod_p_dropping(n).unwrap();
        let xr = x.reduce_mod_p_dropping(n).unwrap();
        let yr = y.reduce_mod_p_dropping(n).unwrap();
        prop_assert_eq!(xr.mul_mod_p_dropping(&yr, n).unwrap(), full);
    }
}
