use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::fp_poly::FpPoly;
use super::residue::ResidueField;
use crate::rational::{is_p_integral, is_prime, mod_p};
use crate::{Error, Result};

/// A local number ring given as `Q_p ⊂ Q_p(ω) ⊂ Q_p(ω, θ)` with `g(ω) = 0`
/// unramified of degree `f` and `h(θ) = 0` Eisenstein of degree `e` over the
/// unramified subring.
///
/// Degenerate steps are normalized: `f = 1` stores `g = x`, `e = 1` stores
/// `h = x`, and the uniformizer is then `p`.
#[derive(Debug, Clone)]
pub struct TowerDescriptor {
    p: u64,
    unram_poly: Vec<BigInt>,
    eis_poly: Vec<Vec<BigRational>>,
    /// `eis_den · h_j` for `j < e`, integral, and the common denominator.
    eis_scaled: Vec<Vec<BigInt>>,
    eis_den: BigInt,
    label: String,
    f: usize,
    e: usize,
    q: u64,
    residue_field: Arc<ResidueField>,
}

/// How a tower sits inside a larger one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    Identity,
    /// Source is `Q_p` itself.
    Base,
    /// Source is the unramified subring of the target.
    UnramifiedPrefix,
}

impl PartialEq for TowerDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.unram_poly == other.unram_poly && self.eis_poly == other.eis_poly
    }
}

impl Eq for TowerDescriptor {}

/// Build and validate a tower.
///
/// `unram_poly` has integer coefficients (constant first); `eis_poly` lists
/// its coefficients constant first, each one a vector of `f` rational
/// coordinates in the basis `1, ω, …, ω^{f−1}`.
pub fn make_tower(
    p: u64,
    unram_poly: &[BigInt],
    eis_poly: &[Vec<BigRational>],
    label: &str,
) -> Result<Arc<TowerDescriptor>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let f = unram_poly
        .len()
        .checked_sub(1)
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidPolynomial("unramified polynomial must have degree ≥ 1".into()))?;
    if !unram_poly[f].is_one() {
        return Err(Error::InvalidPolynomial("unramified polynomial must be monic".into()));
    }
    let e = eis_poly
        .len()
        .checked_sub(1)
        .filter(|&d| d >= 1)
        .ok_or_else(|| Error::InvalidPolynomial("Eisenstein polynomial must have degree ≥ 1".into()))?;

    let unram_poly = if f == 1 {
        vec![BigInt::zero(), BigInt::one()]
    } else {
        let reduced: Vec<u64> = unram_poly
            .iter()
            .map(|c| {
                let pb = BigInt::from(p);
                ((c % &pb + &pb) % &pb).to_u64().unwrap_or(0)
            })
            .collect();
        if !FpPoly::new(p, reduced).is_irreducible() {
            return Err(Error::NotIrreducibleModP { p });
        }
        unram_poly.to_vec()
    };

    let mut eis: Vec<Vec<BigRational>> = Vec::with_capacity(e + 1);
    for (j, coeff) in eis_poly.iter().enumerate() {
        if coeff.len() > f {
            return Err(Error::InvalidPolynomial(format!(
                "coefficient of x^{j} has more than {f} coordinates"
            )));
        }
        let mut c = coeff.clone();
        c.resize(f, BigRational::zero());
        eis.push(c);
    }
    let leading_is_one = eis[e][0].is_one() && eis[e][1..].iter().all(Zero::is_zero);
    if !leading_is_one {
        return Err(Error::InvalidPolynomial("Eisenstein polynomial must be monic".into()));
    }
    let eis = if e == 1 {
        let mut unit = vec![BigRational::zero(); f];
        unit[0] = BigRational::one();
        vec![vec![BigRational::zero(); f], unit]
    } else {
        check_eisenstein(p, &eis)?;
        eis
    };

    let q = p
        .checked_pow(f as u32)
        .ok_or(Error::WeightOverflow)?;
    let modulus: Vec<u64> = unram_poly
        .iter()
        .map(|c| {
            let pb = BigInt::from(p);
            ((c % &pb + &pb) % &pb).to_u64().unwrap_or(0)
        })
        .collect();
    let label = if label.is_empty() {
        default_label(p, f, e)
    } else {
        label.to_string()
    };
    let eis_den = eis[..e]
        .iter()
        .flatten()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let eis_scaled = eis[..e]
        .iter()
        .map(|coeff| {
            coeff
                .iter()
                .map(|c| c.numer() * (&eis_den / c.denom()))
                .collect()
        })
        .collect();
    Ok(Arc::new(TowerDescriptor {
        p,
        unram_poly,
        eis_poly: eis,
        eis_scaled,
        eis_den,
        label,
        f,
        e,
        q,
        residue_field: ResidueField::new(p, modulus),
    }))
}

fn check_eisenstein(p: u64, eis: &[Vec<BigRational>]) -> Result<()> {
    let e = eis.len() - 1;
    let pr = BigRational::from_integer(BigInt::from(p));
    for (j, coeff) in eis[..e].iter().enumerate() {
        for c in coeff {
            let divided = c / &pr;
            if !is_p_integral(&divided, p) {
                return Err(Error::NotEisenstein {
                    reason: format!("coefficient of x^{j} is not divisible by {p}"),
                });
            }
        }
    }
    let unit_part: Vec<u64> = eis[0]
        .iter()
        .map(|c| mod_p(&(c / &pr), p).unwrap_or(0))
        .collect();
    if unit_part.iter().all(|&c| c == 0) {
        return Err(Error::NotEisenstein {
            reason: format!("constant term is divisible by {p}^2"),
        });
    }
    Ok(())
}

fn default_label(p: u64, f: usize, e: usize) -> String {
    match (f, e) {
        (1, 1) => format!("Q_{p}"),
        (f, 1) => format!("Q_{p}(unramified f={f})"),
        (1, e) => format!("Q_{p}(Eisenstein e={e})"),
        (f, e) => format!("Q_{p}(f={f}, e={e})"),
    }
}

impl TowerDescriptor {
    /// `Q_p` itself.
    pub fn base(p: u64) -> Result<Arc<Self>> {
        make_tower(
            p,
            &[BigInt::zero(), BigInt::one()],
            &[vec![BigRational::zero()], vec![BigRational::one()]],
            "",
        )
    }

    /// `Q_p(p^{1/e})`, cut out by `x^e − p`.
    pub fn pure_eisenstein(p: u64, e: usize) -> Result<Arc<Self>> {
        let mut h = vec![vec![BigRational::zero()]; e + 1];
        h[0][0] = -BigRational::from_integer(BigInt::from(p));
        h[e][0] = BigRational::one();
        make_tower(p, &[BigInt::zero(), BigInt::one()], &h, "")
    }

    /// Unramified extension of degree `f` using the first irreducible
    /// polynomial mod `p` in the odometer order of [`super::fp_poly::first_irreducible`].
    pub fn unramified(p: u64, f: usize) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let g: Vec<BigInt> = super::fp_poly::first_irreducible(p, f)
            .into_iter()
            .map(BigInt::from)
            .collect();
        make_tower(p, &g, &[vec![BigRational::zero()], vec![BigRational::one()]], "")
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Residue degree.
    pub fn f(&self) -> usize {
        self.f
    }

    /// Ramification degree.
    pub fn e(&self) -> usize {
        self.e
    }

    /// Size of the residue field, `p^f`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Degree over `Q_p`.
    pub fn degree(&self) -> usize {
        self.e * self.f
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn unram_poly(&self) -> &[BigInt] {
        &self.unram_poly
    }

    pub fn eis_poly(&self) -> &[Vec<BigRational>] {
        &self.eis_poly
    }

    pub(crate) fn eis_scaled(&self) -> (&[Vec<BigInt>], &BigInt) {
        (&self.eis_scaled, &self.eis_den)
    }

    pub fn residue_field(&self) -> &Arc<ResidueField> {
        &self.residue_field
    }

    pub fn is_totally_ramified(&self) -> bool {
        self.f == 1
    }

    pub fn is_unramified(&self) -> bool {
        self.e == 1
    }

    /// Name of the uniformizer in use: `θ` when ramified, else `p`.
    pub fn uniformizer_name(&self) -> &'static str {
        if self.e > 1 {
            "theta"
        } else {
            "p"
        }
    }

    /// The unramified subring as a tower of its own.
    pub fn unramified_subtower(&self) -> Arc<Self> {
        let mut one = vec![BigRational::zero(); self.f];
        one[0] = BigRational::one();
        let h = vec![vec![BigRational::zero(); self.f], one];
        make_tower(self.p, &self.unram_poly, &h, "").expect("subring of a valid tower is valid")
    }

    /// How `self` embeds structurally into `target`, if it does.
    pub fn embedding_into(&self, target: &TowerDescriptor) -> Result<Embedding> {
        if self.p != target.p {
            return Err(Error::NotSubtower);
        }
        if self == target {
            Ok(Embedding::Identity)
        } else if self.f == 1 && self.e == 1 {
            Ok(Embedding::Base)
        } else if self.e == 1 && self.unram_poly == target.unram_poly {
            Ok(Embedding::UnramifiedPrefix)
        } else {
            Err(Error::NotSubtower)
        }
    }
}
