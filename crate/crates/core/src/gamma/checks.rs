use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::GammaTable;
use crate::graded::{graded_basis, graded_piece, GradedPoly, Monomial, ResidueGradedPoly};
use crate::number_ring::FieldElement;
use crate::{Error, Result};

fn require_totally_ramified(table: &GammaTable) -> Result<()> {
    if table.is_totally_ramified() {
        Ok(())
    } else {
        Err(Error::Precondition("table is not totally ramified".into()))
    }
}

/// Outcome of comparing an unramified table with `γ(v_{fi}) = v_i`,
/// `γ(v_j) = 0` for `f ∤ j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedReport {
    pub f: usize,
    pub n: usize,
    /// `(n, expected, computed)` for every mismatch.
    pub violations: Vec<(usize, GradedPoly, GradedPoly)>,
}

impl UnramifiedReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_unramified_formula(table: &GammaTable) -> Result<UnramifiedReport> {
    if table.e_rel() != 1 {
        return Err(Error::Precondition("extension is ramified".into()));
    }
    let f = table.f_rel();
    let ring = table.ring();
    let mut violations = Vec::new();
    for (k, img) in table.images().iter().enumerate() {
        let n = k + 1;
        let expected = if n % f == 0 {
            GradedPoly::var(ring, n / f)?
        } else {
            GradedPoly::zero(ring)
        };
        if *img != expected {
            violations.push((n, expected, img.clone()));
        }
    }
    Ok(UnramifiedReport {
        f,
        n: table.n(),
        violations,
    })
}

/// Matrix of `γ^♯` on one weight, in bases sorted descending.
///
/// `entries[r][c]` is the coefficient of `basis[r]` in `γ^♯(basis[c])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSharpMatrix {
    pub weight: u64,
    pub basis: Vec<Monomial>,
    pub entries: Vec<Vec<FieldElement>>,
    /// No entry above the diagonal: `γ^♯(x)` only involves monomials `≤ x`.
    pub triangular: bool,
    pub diagonal_valuations: Vec<Option<i64>>,
}

impl GammaSharpMatrix {
    pub fn diagonal(&self) -> impl Iterator<Item = &FieldElement> + '_ {
        self.entries.iter().enumerate().map(|(i, row)| &row[i])
    }

    pub fn diagonal_nonzero(&self) -> bool {
        self.diagonal_valuations.iter().all(Option::is_some)
    }

    /// Triangular with nonzero diagonal: injective on this weight and an
    /// isomorphism once `p` is inverted.
    pub fn rational_iso(&self) -> bool {
        self.triangular && self.diagonal_nonzero()
    }
}

pub fn gamma_sharp_matrix(table: &GammaTable, weight: u64) -> Result<GammaSharpMatrix> {
    require_totally_ramified(table)?;
    let n = table.n();
    let mut source = graded_piece(table.source().q(), n, weight);
    let mut target = graded_piece(table.target().q(), n, weight);
    if source.len() != target.len() {
        return Err(Error::WeightMismatch {
            source_len: source.len(),
            target_len: target.len(),
        });
    }
    source.reverse();
    target.reverse();
    let ring = table.ring();
    let zero = FieldElement::zero(ring.tower());
    let mut entries = alloc::vec![alloc::vec![zero.clone(); source.len()]; target.len()];
    let mut cache = BTreeMap::new();
    let index: BTreeMap<&Monomial, usize> = target.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut triangular = true;
    for (c, x) in source.iter().enumerate() {
        let img = table.image_of_monomial(x, &mut cache)?;
        for (m, coeff) in img.terms() {
            let r = *index.get(m).ok_or(Error::WeightMismatch {
                source_len: source.len(),
                target_len: target.len(),
            })?;
            if r < c {
                triangular = false;
            }
            entries[r][c] = coeff.clone();
        }
    }
    let diagonal_valuations = (0..source.len()).map(|i| entries[i][i].valuation()).collect();
    Ok(GammaSharpMatrix {
        weight,
        basis: source,
        entries,
        triangular,
        diagonal_valuations,
    })
}

/// Both sides of `γ(v_{jn}) ≡ (π_A/π_B^n) v_j^{(q^{jn}−1)/(q^j−1)}` modulo
/// `(π_B, v_1, …, v_{j−1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KappaReport {
    pub j: usize,
    pub e_rel: usize,
    pub index: usize,
    pub exponent: u64,
    pub lhs: ResidueGradedPoly,
    pub rhs: ResidueGradedPoly,
    /// Indices `h < jn` checked to vanish modulo the ideal.
    pub minimality_checked: Vec<usize>,
}

pub fn kappa_congruence(table: &GammaTable, j: usize, check_minimality: bool) -> Result<KappaReport> {
    require_totally_ramified(table)?;
    if j == 0 {
        return Err(Error::Precondition("j must be positive".into()));
    }
    let e_rel = table.e_rel();
    let index = j * e_rel;
    let lhs_img = table.image(index).ok_or(Error::Precondition(format!(
        "index {index} exceeds truncation {}",
        table.n()
    )))?;
    let q = table.source().q();
    let exponent = (q.pow(index as u32) - 1) / (q.pow(j as u32) - 1);
    let target = table.target();
    let ring = table.ring();
    let coeff = &FieldElement::uniformizer(table.source()).embed(target)?
        * &FieldElement::uniformizer(target).powi(-(e_rel as i64))?;
    let rhs_poly = GradedPoly::monomial(ring, Monomial::var(j).pow(exponent), coeff)?;
    let lhs = lhs_img.reduce_mod_ideal(j)?;
    let rhs = rhs_poly.reduce_mod_ideal(j)?;
    if lhs != rhs {
        return Err(Error::CongruenceFailed {
            lhs: format!("{lhs}"),
            rhs: format!("{rhs}"),
        });
    }
    let mut minimality_checked = Vec::new();
    if check_minimality {
        for h in 1..index {
            let img = table.image(h).expect("h < index ≤ N");
            if !img.reduce_mod_ideal(j)?.is_zero() {
                return Err(Error::MinimalityFailed { h });
            }
            minimality_checked.push(h);
        }
    }
    Ok(KappaReport {
        j,
        e_rel,
        index,
        exponent,
        lhs,
        rhs,
        minimality_checked,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DivisionCase {
    /// `γ(v_{n+1})^m ≡ 0`, witness `y = 0`.
    Zero,
    /// `γ(v_{n+1})^m ≡ γ(v_n) · y` with `y ≠ 0`.
    Division,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionWitness {
    pub m: u64,
    pub case: DivisionCase,
    pub y: GradedPoly,
}

/// Search for `γ(v_n) · y ≡ γ(v_{n+1})^m` modulo `p` with `v_1, …, v_{n−1}`
/// dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventualDivisionReport {
    pub n: usize,
    pub m_max: u64,
    /// Smallest `m ≤ m_max` with a witness (zero case preferred).
    pub witness: Option<DivisionWitness>,
    /// Smallest power of `p` (at most `m_max`) for which the zero case holds.
    pub zero_at_power_of_p: Option<u64>,
    /// Smallest power of `p` exceeding `e`.
    pub power_bound: u64,
    /// `γ(v_{n+1}) ≡ 0` modulo `(π_B, v_1, …, v_{n−1})`; the reduction is a
    /// polynomial ring over a field, so this decides vanishing of every power.
    pub vanishes_mod_pi: bool,
    /// Whether the divisibility statement for `V^A` is claimed in this case:
    /// always for `n ≥ 2`, and for `n = 1` only when `[B : Q_p] > 2`.
    pub claimed: bool,
}

pub fn eventual_division_witness(table: &GammaTable, n: usize, m_max: u64) -> Result<EventualDivisionReport> {
    require_totally_ramified(table)?;
    if n == 0 || n + 1 > table.n() {
        return Err(Error::Precondition(format!("need 1 ≤ n and n + 1 ≤ {}", table.n())));
    }
    let p = table.target().p();
    let e = table.target().e() as u64;
    let base = table.image(n + 1).expect("checked").reduce_mod_p_dropping(n)?;
    let divisor = table.image(n).expect("checked").reduce_mod_p_dropping(n)?;
    let divisor_coeff = match divisor.terms().next() {
        Some((m, c)) if divisor.len() == 1 && *m == Monomial::var(n) => Some(c.clone()),
        _ => None,
    };

    let mut witness = None;
    let mut zero_at_power_of_p = None;
    let mut next_power = 1u64;
    let mut acc = GradedPoly::one(table.ring());
    for m in 1..=m_max {
        acc = acc.mul_mod_p_dropping(&base, n)?;
        let found = if acc.is_zero() {
            Some((DivisionCase::Zero, GradedPoly::zero(table.ring())))
        } else {
            divisor_coeff
                .as_ref()
                .and_then(|c| divide_reduced(&acc, c, n))
                .map(|y| (DivisionCase::Division, y))
        };
        if m == next_power {
            if acc.is_zero() && zero_at_power_of_p.is_none() {
                zero_at_power_of_p = Some(m);
            }
            next_power = next_power.saturating_mul(p);
        }
        if witness.is_none() {
            if let Some((case, y)) = found {
                witness = Some(DivisionWitness { m, case, y });
            }
        }
        if acc.is_zero() {
            // every further power is zero as well
            if zero_at_power_of_p.is_none() && next_power <= m_max {
                zero_at_power_of_p = Some(next_power);
            }
            break;
        }
    }
    let mut power_bound = 1u64;
    while power_bound <= e {
        power_bound *= p;
    }
    let degree = table.target().degree();
    Ok(EventualDivisionReport {
        n,
        m_max,
        witness,
        zero_at_power_of_p,
        power_bound,
        vanishes_mod_pi: table.image(n + 1).expect("checked").reduce_mod_ideal(n)?.is_zero(),
        claimed: n >= 2 || degree > 2,
    })
}

/// `y` with `c · v_n · y = f` modulo `p`, if every term of `f` is divisible
/// by `v_n` and every coefficient has valuation at least `v(c)`.
fn divide_reduced(f: &GradedPoly, c: &FieldElement, n: usize) -> Option<GradedPoly> {
    let q = f.divide_by_var(n)?;
    let vc = c.valuation()?;
    if q.terms().any(|(_, a)| a.valuation().is_some_and(|v| v < vc)) {
        return None;
    }
    let c_inv = c.inv().ok()?;
    q.scale(&c_inv).ok()?.reduce_mod_p_dropping(n).ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSample {
    pub x: Monomial,
    pub y: Monomial,
    pub lead_x: Monomial,
    pub lead_y: Monomial,
    pub preserved: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub seed: u64,
    pub weight_bound: u64,
    pub samples: Vec<OrderSample>,
    /// Sampled monomials whose image vanished.
    pub vanishing: Vec<Monomial>,
}

impl OrderReport {
    pub fn passed(&self) -> bool {
        self.vanishing.is_empty() && self.samples.iter().all(|s| s.preserved)
    }
}

/// Draw `sample_size` seeded pairs `x ≤ y` of weight `≤ weight_bound` and
/// compare the leading monomials of `γ^♯(x)` and `γ^♯(y)`.
pub fn order_preservation_check(
    table: &GammaTable,
    sample_size: usize,
    weight_bound: u64,
    seed: u64,
) -> Result<OrderReport> {
    require_totally_ramified(table)?;
    let pool: Vec<Monomial> = graded_basis(table.source().q(), table.n(), weight_bound)
        .into_iter()
        .flatten()
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache = BTreeMap::new();
    let mut leads: BTreeMap<Monomial, Option<Monomial>> = BTreeMap::new();
    let mut samples = Vec::with_capacity(sample_size);
    for _ in 0..sample_size {
        let a = pool[rng.gen_range(0..pool.len())].clone();
        let b = pool[rng.gen_range(0..pool.len())].clone();
        let (x, y) = if a <= b { (a, b) } else { (b, a) };
        for m in [&x, &y] {
            if !leads.contains_key(m) {
                let img = table.image_of_monomial(m, &mut cache)?;
                leads.insert(m.clone(), img.leading_monomial().ok().cloned());
            }
        }
        if let (Some(lx), Some(ly)) = (leads[&x].clone(), leads[&y].clone()) {
            samples.push(OrderSample {
                preserved: lx <= ly,
                x,
                y,
                lead_x: lx,
                lead_y: ly,
            });
        }
    }
    let vanishing = leads
        .into_iter()
        .filter(|(_, lead)| lead.is_none())
        .map(|(m, _)| m)
        .collect();
    Ok(OrderReport {
        seed,
        weight_bound,
        samples,
        vanishing,
    })
}
