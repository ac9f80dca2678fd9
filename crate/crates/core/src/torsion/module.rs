use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;

use super::groebner::{groebner_basis, reduce, GroebnerBasis};
use crate::gamma::{compute_gamma, DivisionCase};
use crate::graded::{GradedPoly, Monomial, PolyRing, ResidueGradedPoly, ResidueRing};
use crate::number_ring::TowerDescriptor;
use crate::{Error, Result};

/// Where the module lives: over `BP_*` itself, or over `V^A` for a tower
/// `A`, with `v_n` acting through `γ: BP_* → V^A` reduced modulo `π`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleContext {
    Bp,
    Tower(Arc<TowerDescriptor>),
}

/// `R/J` for `R` the truncated polynomial ring of the context and `J`
/// generated by homogeneous integral polynomials.
#[derive(Clone, Debug)]
pub struct CyclicModulePresentation {
    context: ModuleContext,
    ring: Arc<PolyRing>,
    ideal_gens: Vec<GradedPoly>,
    /// Least π-valuation of a constant generator.
    constant_valuation: Option<i64>,
    finitely_presented: bool,
    weight_bound: u64,
    action: Vec<ResidueGradedPoly>,
}

impl CyclicModulePresentation {
    /// `gens` must live in `PolyRing::new(tower, n)` where `tower` is `Q_p`
    /// for the `BP` context.
    pub fn new(
        context: ModuleContext,
        p: u64,
        n: usize,
        ideal_gens: Vec<GradedPoly>,
        finitely_presented: bool,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::Precondition("truncation index must be at least 1".into()));
        }
        let tower = match &context {
            ModuleContext::Bp => TowerDescriptor::base(p)?,
            ModuleContext::Tower(t) => {
                if t.p() != p {
                    return Err(Error::TowerMismatch);
                }
                t.clone()
            }
        };
        let ring = PolyRing::new(&tower, n);
        let mut gens = Vec::with_capacity(ideal_gens.len());
        let mut constant_valuation: Option<i64> = None;
        for g in ideal_gens {
            if g.is_zero() {
                continue;
            }
            let g = g.with_ring(&ring)?;
            if g.homogeneous_weight().is_none() {
                return Err(Error::Precondition(format!("generator {g} is not homogeneous")));
            }
            if !g.is_integral() {
                return Err(Error::NotIntegral);
            }
            if let Some(c) = g.coeff(&Monomial::one()) {
                let v = c.valuation().expect("nonzero constant");
                constant_valuation = Some(constant_valuation.map_or(v, |w| w.min(v)));
            }
            gens.push(g);
        }
        let action = match &context {
            ModuleContext::Bp => (1..=n)
                .map(|k| Ok(ResidueGradedPoly::var(&ring.residue_ring(), k)))
                .collect::<Result<Vec<_>>>()?,
            ModuleContext::Tower(t) => {
                let table = compute_gamma(&TowerDescriptor::base(p)?, t, n)?;
                table
                    .images()
                    .iter()
                    .map(|img| img.with_ring(&ring)?.reduce_mod_ideal(1))
                    .collect::<Result<Vec<_>>>()?
            }
        };
        let q = ring.q();
        let weight_bound = q
            .checked_pow(n as u32)
            .and_then(|x| (x - 1).checked_mul(2))
            .ok_or(Error::WeightOverflow)?;
        Ok(CyclicModulePresentation {
            context,
            ring,
            ideal_gens: gens,
            constant_valuation,
            finitely_presented,
            weight_bound,
            action,
        })
    }

    /// `BP_*/J`.
    pub fn bp(p: u64, n: usize, ideal_gens: Vec<GradedPoly>) -> Result<Self> {
        CyclicModulePresentation::new(ModuleContext::Bp, p, n, ideal_gens, true)
    }

    /// Override the Buchberger weight bound (default `2(q^N − 1)`).
    pub fn with_weight_bound(mut self, bound: u64) -> Self {
        self.weight_bound = bound;
        self
    }

    pub fn context(&self) -> &ModuleContext {
        &self.context
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn residue_ring(&self) -> Arc<ResidueRing> {
        self.ring.residue_ring()
    }

    pub fn p(&self) -> u64 {
        self.ring.tower().p()
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn ideal_gens(&self) -> &[GradedPoly] {
        &self.ideal_gens
    }

    pub fn finitely_presented(&self) -> bool {
        self.finitely_presented
    }

    pub fn weight_bound(&self) -> u64 {
        self.weight_bound
    }

    /// Smallest `a` with `p^a ∈ J`, if `J` has a nonzero constant.
    pub fn contains_p(&self) -> Option<u64> {
        let e = self.ring.tower().e() as i64;
        self.constant_valuation.map(|v| ((v + e - 1) / e) as u64)
    }

    pub fn contains_pi(&self) -> bool {
        self.constant_valuation.is_some_and(|v| v <= 1)
    }

    /// `J` contains a unit.
    pub fn is_zero(&self) -> bool {
        self.constant_valuation == Some(0)
    }

    /// The tower context has a nontrivial unramified part.
    pub fn is_non_totally_ramified_context(&self) -> bool {
        matches!(&self.context, ModuleContext::Tower(t) if t.f() > 1)
    }

    /// How `v_n` acts modulo `π`, `1 ≤ n ≤ N`.
    pub fn action_of(&self, n: usize) -> Result<&ResidueGradedPoly> {
        n.checked_sub(1)
            .and_then(|i| self.action.get(i))
            .ok_or(Error::TruncationExceeded { index: n, n: self.n() })
    }

    fn require_pi(&self) -> Result<()> {
        if self.contains_pi() {
            return Ok(());
        }
        Err(Error::OutsideScope(match self.contains_p() {
            Some(a) if self.ring.tower().e() == 1 => format!("p^{a} lies in the ideal only for a > 1"),
            Some(_) => "the ideal contains a power of p but not the uniformizer".into(),
            None => "the ideal contains no power of p".into(),
        }))
    }

    /// Gröbner basis of `J` mod `π` together with `extra`.
    pub fn groebner(&self, extra: &[ResidueGradedPoly]) -> Result<GroebnerBasis> {
        self.require_pi()?;
        let ring = self.residue_ring();
        let mut gens = alloc::vec![ResidueGradedPoly::zero(&ring)];
        for g in &self.ideal_gens {
            gens.push(g.reduce_mod_ideal(1)?);
        }
        gens.extend(extra.iter().cloned());
        groebner_basis(&gens, self.weight_bound)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorsionResult {
    /// `v_n^k · 1 = 0` with `k` minimal.
    Yes { k: u64 },
    /// `v_n^k · 1 ≠ 0` for `k ≤ k_max`; `normal_forms[k−1]` is the normal
    /// form of `v_n^k`. `proven` is false when some nonvanishing rests on a
    /// truncated Gröbner basis.
    NoUpTo {
        k_max: u64,
        normal_forms: Vec<ResidueGradedPoly>,
        proven: bool,
    },
}

/// Is the generator (hence the cyclic module) `v_n`-power-torsion, with
/// `v_0 = p`?
pub fn is_vn_power_torsion(module: &CyclicModulePresentation, n: usize, k_max: u64) -> Result<TorsionResult> {
    if n == 0 {
        // constants of J are the only source of p-torsion in R/J
        return Ok(match module.contains_p() {
            Some(k) => TorsionResult::Yes { k },
            None => TorsionResult::NoUpTo {
                k_max,
                normal_forms: Vec::new(),
                proven: true,
            },
        });
    }
    let gb = module.groebner(&[])?;
    let v = module.action_of(n)?;
    let mut x = reduce(&ResidueGradedPoly::one(&module.residue_ring()), &gb);
    if x.is_zero() {
        return Ok(TorsionResult::Yes { k: 0 });
    }
    let mut normal_forms = Vec::new();
    let mut proven = true;
    for k in 1..=k_max {
        let prod = x.checked_mul(v)?;
        x = reduce(&prod, &gb);
        if x.is_zero() {
            return Ok(TorsionResult::Yes { k });
        }
        if !gb.complete_up_to(prod.max_weight()?) {
            proven = false;
        }
        normal_forms.push(x.clone());
    }
    Ok(TorsionResult::NoUpTo {
        k_max,
        normal_forms,
        proven,
    })
}

/// `v_s · y ≡ v_r^m` modulo `J + (p, v_1, …, v_{s−1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDivisionWitness {
    pub r: usize,
    pub s: usize,
    pub m: u64,
    pub case: DivisionCase,
    pub y: ResidueGradedPoly,
}

/// Smallest `m ≤ m_max` at which the normal form of `v_r^m` modulo
/// `J + I_s` is zero or is divisible by the (single-term) action of `v_s`.
pub fn eventual_division_module(
    module: &CyclicModulePresentation,
    r: usize,
    s: usize,
    m_max: u64,
) -> Result<Option<ModuleDivisionWitness>> {
    if s == 0 || r == 0 {
        return Err(Error::Precondition("indices start at 1".into()));
    }
    let extra = (1..s)
        .map(|i| module.action_of(i).cloned())
        .collect::<Result<Vec<_>>>()?;
    let gb = module.groebner(&extra)?;
    let vr = module.action_of(r)?;
    let vs = module.action_of(s)?;
    let divisor = match vs.len() {
        1 => Some(vs.leading_term()?),
        _ => None,
    };
    let mut x = reduce(&ResidueGradedPoly::one(&module.residue_ring()), &gb);
    for m in 1..=m_max {
        x = reduce(&x.checked_mul(vr)?, &gb);
        if x.is_zero() {
            return Ok(Some(ModuleDivisionWitness {
                r,
                s,
                m,
                case: DivisionCase::Zero,
                y: x,
            }));
        }
        if let Some((mono, c)) = divisor {
            if let Some(y) = divide_by_term(&x, mono, c) {
                return Ok(Some(ModuleDivisionWitness {
                    r,
                    s,
                    m,
                    case: DivisionCase::Division,
                    y,
                }));
            }
        }
    }
    Ok(None)
}

fn divide_by_term(
    x: &ResidueGradedPoly,
    mono: &Monomial,
    c: &crate::number_ring::ResidueElement,
) -> Option<ResidueGradedPoly> {
    let inv = c.inv()?;
    let terms = x
        .terms()
        .map(|(m, a)| Some((mono.quotient_of(m)?, a.mul(&inv))))
        .collect::<Option<Vec<_>>>()?;
    Some(ResidueGradedPoly::from_terms(x.ring(), terms))
}
