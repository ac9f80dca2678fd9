use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::gamma::DivisionCase;
use crate::graded::{graded_piece, GradedPoly, Monomial, PolyRing, ResidueGradedPoly, ResidueRing};
use crate::number_ring::{FieldElement, TowerDescriptor};
use crate::Error;

fn m(pairs: &[(usize, u64)]) -> Monomial {
    Monomial::from_pairs(pairs)
}

fn rpoly(ring: &Arc<ResidueRing>, terms: &[(&[(usize, u64)], i64)]) -> ResidueGradedPoly {
    let terms: Vec<(Monomial, i64)> = terms.iter().map(|(e, c)| (m(e), *c)).collect();
    ResidueGradedPoly::from_int_terms(ring, &terms)
}

fn poly_in(ring: &Arc<PolyRing>, terms: &[(&[(usize, u64)], i64)]) -> GradedPoly {
    GradedPoly::from_terms(
        ring,
        terms.iter().map(|(e, c)| (m(e), FieldElement::from_int(ring.tower(), *c))),
    )
    .unwrap()
}

fn bp_module(p: u64, n: usize, gens: &[&[(&[(usize, u64)], i64)]]) -> CyclicModulePresentation {
    let ring = PolyRing::new(&TowerDescriptor::base(p).unwrap(), n);
    CyclicModulePresentation::bp(p, n, gens.iter().map(|g| poly_in(&ring, g)).collect()).unwrap()
}

/// `BP_*/(p, v_2 − v_1^{p+1})`
fn flagship(p: u64, n: usize) -> CyclicModulePresentation {
    bp_module(p, n, &[&[(&[], p as i64)], &[(&[(2, 1)], 1), (&[(1, p + 1)], -1)]])
}

#[test]
fn groebner_examples() {
    let r = ResidueRing::prime(2, 3);
    let gb = groebner_basis(&[ResidueGradedPoly::var(&r, 1)], 100).unwrap();
    assert_eq!(gb.basis(), &[ResidueGradedPoly::var(&r, 1)]);
    assert!(!gb.truncated());

    let g = rpoly(&r, &[(&[(2, 1)], 1), (&[(1, 3)], -1)]);
    let gb = groebner_basis(&[g], 100).unwrap();
    assert_eq!(gb.basis(), &[rpoly(&r, &[(&[(2, 1)], 1), (&[(1, 3)], 1)])]);

    let f = rpoly(&r, &[(&[(1, 1), (2, 1)], 1), (&[(1, 4)], -1)]);
    assert!(normal_form(&f, &gb).unwrap().is_zero());
    assert_eq!(
        normal_form(&ResidueGradedPoly::var(&r, 2), &gb).unwrap(),
        rpoly(&r, &[(&[(1, 3)], 1)])
    );
    assert!(normal_form(&ResidueGradedPoly::zero(&r), &gb).unwrap().is_zero());
    for k in 1..=20 {
        let x = ResidueGradedPoly::monomial(&r, m(&[(1, k)]));
        assert_eq!(normal_form(&x, &gb).unwrap(), x);
    }
}

#[test]
fn groebner_completes_s_pairs() {
    let r = ResidueRing::prime(3, 2);
    let a = rpoly(&r, &[(&[(1, 4)], 1), (&[(2, 1)], 1)]);
    let b = rpoly(&r, &[(&[(1, 1), (2, 1)], 1)]);
    let gb = groebner_basis(&[a.clone(), b.clone()], 1000).unwrap();
    // v1 * a - b = v1^5, so v1^5 is in the ideal and must reduce to zero
    assert!(normal_form(&ResidueGradedPoly::monomial(&r, m(&[(1, 5)])), &gb)
        .unwrap()
        .is_zero());
    assert!(normal_form(&a, &gb).unwrap().is_zero());
    assert!(normal_form(&b, &gb).unwrap().is_zero());
    for g in gb.basis() {
        assert!(g.leading_term().unwrap().1.is_one());
    }
}

#[test]
fn truncation_is_reported() {
    let r = ResidueRing::prime(3, 2);
    let a = rpoly(&r, &[(&[(1, 4)], 1), (&[(2, 1)], 1)]);
    let b = rpoly(&r, &[(&[(1, 1), (2, 1)], 1)]);
    // the only S-pair, v1*a - b = v1^5, has weight 10
    let gb = groebner_basis(&[a, b], 9).unwrap();
    assert!(gb.truncated());
    let high = ResidueGradedPoly::monomial(&r, m(&[(1, 5)]));
    assert!(matches!(normal_form(&high, &gb), Err(Error::TruncationUnsound { .. })));
    assert_eq!(gb.contains(&high).unwrap(), None);
    // below the bound the truncated basis is still complete
    let low = ResidueGradedPoly::monomial(&r, m(&[(1, 3)]));
    assert_eq!(gb.contains(&low).unwrap(), Some(false));
}

/// Rank over `F_p` by elimination.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|x| x * rows[rank][c] % p == 1).unwrap();
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    rows[i][j] = (rows[i][j] + p * p - f * rows[rank][j] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn coeff_vector(f: &ResidueGradedPoly, basis: &[Monomial]) -> Vec<u64> {
    basis
        .iter()
        .map(|b| f.coeff(b).map_or(0, |c| c.coeffs().first().copied().unwrap_or(0)))
        .collect()
}

/// Membership of a homogeneous `f` in the span of `{mono · g}` of its weight.
fn oracle_member(f: &ResidueGradedPoly, gens: &[ResidueGradedPoly], p: u64, n: usize) -> bool {
    let w = f.homogeneous_weight().unwrap();
    let basis = graded_piece(p, n, w);
    let mut rows = Vec::new();
    for g in gens {
        let wg = g.homogeneous_weight().unwrap();
        if wg > w {
            continue;
        }
        for mono in graded_piece(p, n, w - wg) {
            rows.push(coeff_vector(&g.shift(&mono), &basis));
        }
    }
    let r0 = rank_mod_p(rows.clone(), p);
    rows.push(coeff_vector(f, &basis));
    rank_mod_p(rows, p) == r0
}

fn random_homogeneous(rng: &mut ChaCha8Rng, ring: &Arc<ResidueRing>, w: u64) -> ResidueGradedPoly {
    let p = ring.field().p();
    let piece = graded_piece(ring.q(), ring.n(), w);
    let terms: Vec<(Monomial, i64)> = piece
        .into_iter()
        .map(|mono| (mono, rng.gen_range(0..p) as i64))
        .collect();
    ResidueGradedPoly::from_int_terms(ring, &terms)
}

#[test]
fn membership_matches_linear_algebra() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (p, trial) in [(2u64, 0), (2, 1), (3, 2)] {
        let n = 3;
        let ring = ResidueRing::prime(p, n);
        let weights: Vec<u64> = (1..=8).filter(|&w| !graded_piece(p, n, w).is_empty()).collect();
        let mut gens: Vec<ResidueGradedPoly> = Vec::new();
        while gens.len() < 2 + trial % 2 {
            let w = weights[rng.gen_range(0..weights.len().min(4))];
            let g = random_homogeneous(&mut rng, &ring, w);
            if !g.is_zero() {
                gens.push(g);
            }
        }
        let gb = groebner_basis(&gens, 8).unwrap();
        for g in &gens {
            assert!(normal_form(g, &gb).unwrap().is_zero());
        }
        for &w in &weights {
            for mono in graded_piece(p, n, w) {
                let f = ResidueGradedPoly::monomial(&ring, mono);
                let nf = normal_form(&f, &gb).unwrap();
                assert_eq!(nf.is_zero(), oracle_member(&f, &gens, p, n), "{f} in {gens:?}");
                assert_eq!(normal_form(&nf, &gb).unwrap(), nf);
            }
            for _ in 0..5 {
                let f = random_homogeneous(&mut rng, &ring, w);
                if f.is_zero() {
                    continue;
                }
                let nf = normal_form(&f, &gb).unwrap();
                assert_eq!(nf.is_zero(), oracle_member(&f, &gens, p, n), "{f} in {gens:?}");
                assert_eq!(normal_form(&nf, &gb).unwrap(), nf);
            }
        }
    }
}

#[test]
fn torsion_examples() {
    let m1 = bp_module(2, 3, &[&[(&[], 2)], &[(&[(1, 1)], 1)]]);
    assert_eq!(is_vn_power_torsion(&m1, 1, 20).unwrap(), TorsionResult::Yes { k: 1 });
    assert_eq!(is_vn_power_torsion(&m1, 0, 20).unwrap(), TorsionResult::Yes { k: 1 });

    let f = flagship(2, 3);
    match is_vn_power_torsion(&f, 1, 20).unwrap() {
        TorsionResult::NoUpTo {
            k_max,
            normal_forms,
            proven,
        } => {
            assert_eq!(k_max, 20);
            assert!(proven);
            for (i, nf) in normal_forms.iter().enumerate() {
                assert_eq!(nf, &ResidueGradedPoly::monomial(&f.residue_ring(), m(&[(1, i as u64 + 1)])));
            }
            assert_eq!(normal_forms.len(), 20);
        }
        other => panic!("{other:?}"),
    }

    let free = bp_module(3, 3, &[&[(&[], 3)]]);
    assert!(matches!(
        is_vn_power_torsion(&free, 3, 20).unwrap(),
        TorsionResult::NoUpTo { proven: true, .. }
    ));

    let p_squared = bp_module(2, 2, &[&[(&[], 4)], &[(&[(1, 1)], 1)]]);
    assert_eq!(p_squared.contains_p(), Some(2));
    assert!(matches!(is_vn_power_torsion(&p_squared, 1, 5), Err(Error::OutsideScope(_))));
    let no_p = bp_module(2, 2, &[&[(&[(1, 1)], 1)]]);
    assert!(matches!(is_vn_power_torsion(&no_p, 1, 5), Err(Error::OutsideScope(_))));
}

#[test]
fn eventual_division_examples() {
    for p in [2u64, 3] {
        let f = flagship(p, 3);
        let w = eventual_division_module(&f, 2, 1, 32).unwrap().unwrap();
        assert_eq!((w.m, w.case), (1, DivisionCase::Division));
        assert_eq!(w.y, ResidueGradedPoly::monomial(&f.residue_ring(), m(&[(1, p)])));
    }
    let killed = bp_module(2, 3, &[&[(&[], 2)], &[(&[(2, 1)], 1)]]);
    let w = eventual_division_module(&killed, 2, 1, 32).unwrap().unwrap();
    assert_eq!((w.m, w.case), (1, DivisionCase::Zero));
    assert!(w.y.is_zero());

    let free = bp_module(2, 3, &[&[(&[], 2)]]);
    assert_eq!(eventual_division_module(&free, 2, 1, 32).unwrap(), None);
}

fn v1_torsion_exponent(module: &CyclicModulePresentation) -> Option<u64> {
    match is_vn_power_torsion(module, 1, 20).unwrap() {
        TorsionResult::Yes { k } => Some(k),
        TorsionResult::NoUpTo { .. } => None,
    }
}

#[test]
fn closure_laws_for_v1_torsion() {
    // quotient: BP/(p, v1^3) → BP/(p, v1^3, v2 + v1^3)
    let base = bp_module(2, 3, &[&[(&[], 2)], &[(&[(1, 3)], 1)]]);
    let quotient = bp_module(2, 3, &[&[(&[], 2)], &[(&[(1, 3)], 1)], &[(&[(2, 1)], 1), (&[(1, 3)], 1)]]);
    assert_eq!(v1_torsion_exponent(&base), Some(3));
    assert!(v1_torsion_exponent(&quotient).unwrap() <= 3);

    // direct sum of BP/(p, v1^2) and BP/(p, v1^3, v2): each generator is
    // killed, so the sum is killed by the larger exponent
    let a = bp_module(2, 3, &[&[(&[], 2)], &[(&[(1, 2)], 1)]]);
    let b = bp_module(2, 3, &[&[(&[], 2)], &[(&[(1, 3)], 1)], &[(&[(2, 1)], 1)]]);
    let (ka, kb) = (v1_torsion_exponent(&a).unwrap(), v1_torsion_exponent(&b).unwrap());
    assert_eq!(ka.max(kb), 3);

    // extension 0 → v1·M → M → M/v1 → 0 for M = BP/(p, v1^4): both ends are
    // v1-torsion, and so is the middle, with exponent at most the sum
    let middle = bp_module(2, 3, &[&[(&[], 2)], &[(&[(1, 4)], 1)]]);
    let sub = bp_module(2, 3, &[&[(&[], 2)], &[(&[(1, 3)], 1)]]);
    let top = bp_module(2, 3, &[&[(&[], 2)], &[(&[(1, 1)], 1)]]);
    let (ks, kt) = (v1_torsion_exponent(&sub).unwrap(), v1_torsion_exponent(&top).unwrap());
    assert!(v1_torsion_exponent(&middle).unwrap() <= ks + kt);

    // localization at v2 keeps v1-torsion: inverting v2 in BP/(p, v1^2 v2)
    // gives BP/(p, v1^2)[v2^-1], whose generator is killed by v1^2
    let loc = bp_module(2, 3, &[&[(&[], 2)], &[(&[(1, 2)], 1)]]);
    assert_eq!(v1_torsion_exponent(&loc), Some(2));
}

#[test]
fn flagship_certificate() {
    for p in [2u64, 3] {
        let module = flagship(p, 3);
        let cert = realizability_obstruction(&module, SearchBounds::default()).unwrap();
        assert_eq!(cert.verdict, Verdict::NotRealizable);
        assert_eq!(cert.rules_fired, vec![Rule::LocalizationEventualDivision]);
        let w = &cert.division_witnesses[0];
        assert_eq!((w.r, w.s, w.m), (2, 1, 1));
        assert_eq!(w.y, ResidueGradedPoly::monomial(&module.residue_ring(), m(&[(1, p)])));
        let v1: Vec<_> = cert.nonzero_normal_forms.iter().filter(|w| w.n == 1).collect();
        assert_eq!(v1.len(), 20);
        assert!(cert.membership_proven);
        assert!(cert.replay(&module).unwrap());
    }
}

#[test]
fn everything_killed_has_no_obstruction() {
    let module = bp_module(
        3,
        3,
        &[&[(&[], 3)], &[(&[(1, 1)], 1)], &[(&[(2, 1)], 1)], &[(&[(3, 1)], 1)]],
    );
    let cert = realizability_obstruction(&module, SearchBounds::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::NoObstructionFound);
    assert!(cert.torsion_exponents.values().all(|s| *s == TorsionStatus::Torsion(1)));
    assert!(cert.replay(&module).unwrap());
}

#[test]
fn tower_context_verdicts() {
    let tower = TowerDescriptor::unramified(2, 2).unwrap();
    let ctx = ModuleContext::Tower(tower.clone());
    let ring = PolyRing::new(&tower, 4);

    let va = CyclicModulePresentation::new(ctx.clone(), 2, 4, vec![], true).unwrap();
    let cert = realizability_obstruction(&va, SearchBounds::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::NotRealizable);
    assert_eq!(cert.rules_fired, vec![Rule::UnramifiedDissonance]);
    assert_eq!(cert.non_torsion[0].n, 0);
    assert!(cert.non_torsion[0].element.is_one());

    // v1 acts by zero, v2 by v1^A
    let mod_p = CyclicModulePresentation::new(ctx.clone(), 2, 4, vec![poly_in(&ring, &[(&[], 2)])], true).unwrap();
    assert_eq!(is_vn_power_torsion(&mod_p, 1, 5).unwrap(), TorsionResult::Yes { k: 1 });
    let cert = realizability_obstruction(&mod_p, SearchBounds::default()).unwrap();
    assert!(cert.rules_fired.contains(&Rule::UnramifiedDissonance));
    assert!(cert.replay(&mod_p).unwrap());

    let finite = CyclicModulePresentation::new(
        ctx,
        2,
        4,
        vec![
            poly_in(&ring, &[(&[], 2)]),
            poly_in(&ring, &[(&[(1, 1)], 1)]),
            poly_in(&ring, &[(&[(2, 1)], 1)]),
        ],
        true,
    )
    .unwrap();
    let cert = realizability_obstruction(&finite, SearchBounds::default()).unwrap();
    assert_eq!(cert.rules_fired, vec![Rule::FinitePresentation]);
}

#[test]
fn out_of_scope_and_zero_modules() {
    let module = bp_module(2, 2, &[&[(&[], 4)], &[(&[(2, 1)], 1), (&[(1, 3)], -1)]]);
    let cert = realizability_obstruction(&module, SearchBounds::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::OutsideScope);
    let zero = bp_module(2, 2, &[&[(&[], 1)]]);
    assert!(zero.is_zero());
    assert_eq!(
        realizability_obstruction(&zero, SearchBounds::default()).unwrap().verdict,
        Verdict::NoObstructionFound
    );
    let ring = PolyRing::new(&TowerDescriptor::base(2).unwrap(), 2);
    assert!(matches!(
        CyclicModulePresentation::bp(2, 2, vec![poly_in(&ring, &[(&[(1, 1)], 1), (&[], 2)])]),
        Err(Error::Precondition(_))
    ));
}

fn ints(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn rats(rows: &[&[i64]]) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect()
}

fn matmul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

fn det(m: &[Vec<BigInt>]) -> BigInt {
    // cofactor expansion, fine for tiny matrices
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    (0..n).fold(BigInt::zero(), |acc, j| {
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = &m[0][j] * det(&minor);
        if j % 2 == 0 {
            acc + term
        } else {
            acc - term
        }
    })
}

fn check_smith(a: &[Vec<BigInt>]) -> SmithForm {
    let s = smith_normal_form(a);
    if !a.is_empty() && !a[0].is_empty() {
        assert_eq!(matmul(&matmul(&s.u, a), &s.v), s.d);
    }
    assert_eq!(det(&s.u).abs(), BigInt::one());
    assert_eq!(det(&s.v).abs(), BigInt::one());
    for (i, row) in s.d.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            assert!(i == j || x.is_zero());
        }
    }
    let diag = s.diagonal();
    for w in diag.windows(2) {
        assert!(!w[0].is_negative());
        if w[0].is_zero() {
            assert!(w[1].is_zero());
        } else {
            assert!((&w[1] % &w[0]).is_zero());
        }
    }
    s
}

#[test]
fn smith_examples() {
    assert_eq!(check_smith(&ints(&[&[2, 0], &[0, 3]])).d, ints(&[&[1, 0], &[0, 6]]));
    assert_eq!(check_smith(&ints(&[&[1, 0], &[0, 1]])).d, ints(&[&[1, 0], &[0, 1]]));
    assert_eq!(check_smith(&ints(&[&[0]])).d, ints(&[&[0]]));
    assert_eq!(check_smith(&ints(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]])).diagonal(), vec![
        BigInt::from(2),
        BigInt::from(6),
        BigInt::from(12)
    ]);
}

/// gcd of all `k × k` minors
fn determinantal_divisor(a: &[Vec<BigInt>], k: usize) -> BigInt {
    use num_integer::Integer;
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        (0..n)
            .flat_map(|last| {
                subsets(last, k - 1).into_iter().map(move |mut s| {
                    s.push(last);
                    s
                })
            })
            .collect()
    }
    let mut g = BigInt::zero();
    for rs in subsets(a.len(), k) {
        for cs in subsets(a[0].len(), k) {
            let minor: Vec<Vec<BigInt>> = rs.iter().map(|&r| cs.iter().map(|&c| a[r][c].clone()).collect()).collect();
            g = g.gcd(&det(&minor));
        }
    }
    g
}

#[test]
fn local_cohomology_examples() {
    let p = 3i64;
    let r = local_cohomology_degreewise(3, &[
        (0, rats(&[&[p * p, 0], &[0, 1]])),
        (4, rats(&[&[0]])),
        (8, rats(&[&[p, 0], &[0, p * p], &[0, 0]])),
    ])
    .unwrap();
    assert_eq!(r.degrees[0].h0_invariants, vec![BigInt::from(9)]);
    assert_eq!(r.degrees[0].h1_corank, 0);
    assert!(r.degrees[1].h0_invariants.is_empty());
    assert_eq!(r.degrees[1].h1_corank, 1);
    assert_eq!(r.degrees[2].h0_invariants, vec![BigInt::from(3), BigInt::from(9)]);
    assert_eq!(r.degrees[2].h1_corank, 1);

    let half = vec![vec![BigRational::new(1.into(), 2.into())]];
    assert_eq!(local_cohomology_degreewise(3, &[(0, half)]).unwrap_err(), Error::NonIntegerMatrix);
}

fn matrix_strategy() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-50i64..=50, c), r))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn smith_matches_determinantal_divisors(a in matrix_strategy()) {
        let a: Vec<Vec<BigInt>> = a.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        let s = check_smith(&a);
        let diag = s.diagonal();
        let mut prod = BigInt::one();
        for (k, d) in diag.iter().enumerate() {
            prod *= d;
            prop_assert_eq!(&prod, &determinantal_divisor(&a, k + 1));
        }
    }

    #[test]
    fn local_cohomology_matches_smith(a in matrix_strategy(), p in prop::sample::select(vec![2u64, 3, 5])) {
        let rows = a.len();
        let r = local_cohomology_degreewise(p, &[(0, a.iter().map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect()).collect())]).unwrap();
        let ints: Vec<Vec<BigInt>> = a.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let s = smith_normal_form(&ints);
        prop_assert_eq!(r.degrees[0].h1_corank, rows - s.rank());
        let pb = BigInt::from(p);
        let torsion: Vec<BigInt> = s.diagonal().into_iter().filter(|d| !d.is_zero()).map(|mut d| {
            let mut part = BigInt::one();
            while (&d % &pb).is_zero() { d /= &pb; part *= &pb; }
            part
        }).filter(|x| !x.is_one()).collect();
        prop_assert_eq!(&r.degrees[0].h0_invariants, &torsion);
    }
}
