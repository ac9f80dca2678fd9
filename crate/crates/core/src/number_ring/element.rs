use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::residue::ResidueElement;
use super::tower::{Embedding, TowerDescriptor};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::rational;
use crate::{Error, Result};

/// An exact element `Σ c_{ij} ω^i θ^j` of the fraction field of a tower.
///
/// Coordinates are stored θ-major as integer numerators over one positive
/// common denominator: `c_{ij} = num[j * f + i] / den`, with the fraction in
/// lowest terms. The representation is always reduced (degree `< f` in ω,
/// `< e` in θ), so equality is representation equality.
#[derive(Clone)]
pub struct FieldElement {
    tower: Arc<TowerDescriptor>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        same_tower(&self.tower, &other.tower) && self.den == other.den && self.num == other.num
    }
}

impl Eq for FieldElement {}

pub(crate) fn same_tower(a: &Arc<TowerDescriptor>, b: &Arc<TowerDescriptor>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElement {
    fn build(tower: &Arc<TowerDescriptor>, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for x in num.iter_mut() {
                *x = -core::mem::take(x);
            }
        }
        if !den.is_one() {
            let mut g = den.clone();
            for x in &num {
                if g.is_one() {
                    break;
                }
                if !x.is_zero() {
                    g = g.gcd(x);
                }
            }
            if num.iter().all(Zero::is_zero) {
                g = den.clone();
            }
            if !g.is_one() {
                for x in num.iter_mut() {
                    *x /= &g;
                }
                den /= &g;
            }
        }
        FieldElement {
            tower: tower.clone(),
            num,
            den,
        }
    }

    pub fn zero(tower: &Arc<TowerDescriptor>) -> Self {
        FieldElement {
            tower: tower.clone(),
            num: vec![BigInt::zero(); tower.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(tower: &Arc<TowerDescriptor>) -> Self {
        FieldElement::from_int(tower, 1)
    }

    pub fn from_rational(tower: &Arc<TowerDescriptor>, r: BigRational) -> Self {
        let (n, d) = r.into();
        let mut num = vec![BigInt::zero(); tower.degree()];
        num[0] = n;
        FieldElement::build(tower, num, d)
    }

    pub fn from_int(tower: &Arc<TowerDescriptor>, n: i64) -> Self {
        let mut z = FieldElement::zero(tower);
        z.num[0] = BigInt::from(n);
        z
    }

    /// Build from an `f × e` coordinate array `rows[i][j]` (coefficient of
    /// `ω^i θ^j`); missing entries are zero.
    pub fn from_coords(tower: &Arc<TowerDescriptor>, rows: &[Vec<BigRational>]) -> Result<Self> {
        let (f, e) = (tower.f(), tower.e());
        if rows.len() > f || rows.iter().any(|r| r.len() > e) {
            return Err(Error::InvalidPolynomial(
                "coordinate array exceeds the tower's f × e shape".into(),
            ));
        }
        let mut coords = vec![BigRational::zero(); f * e];
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                coords[j * f + i] = c.clone();
            }
        }
        Ok(FieldElement::from_rationals(tower, &coords))
    }

    fn from_rationals(tower: &Arc<TowerDescriptor>, coords: &[BigRational]) -> Self {
        let den = coords.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coords.iter().map(|c| c.numer() * (&den / c.denom())).collect();
        FieldElement::build(tower, num, den)
    }

    fn rationals(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|x| BigRational::new(x.clone(), self.den.clone()))
            .collect()
    }

    /// The `f × e` coordinate array, `rows[i][j]` for `ω^i θ^j`.
    pub fn to_coords(&self) -> Vec<Vec<BigRational>> {
        let (f, e) = (self.tower.f(), self.tower.e());
        (0..f).map(|i| (0..e).map(|j| self.coord(i, j)).collect()).collect()
    }

    /// Coefficient of `ω^i θ^j`.
    pub fn coord(&self, i: usize, j: usize) -> BigRational {
        BigRational::new(self.num[j * self.tower.f() + i].clone(), self.den.clone())
    }

    /// The Eisenstein generator θ (equal to 0 when `e = 1`).
    pub fn theta(tower: &Arc<TowerDescriptor>) -> Self {
        let mut z = FieldElement::zero(tower);
        if tower.e() > 1 {
            z.num[tower.f()] = BigInt::one();
        }
        z
    }

    /// The unramified generator ω.
    pub fn omega(tower: &Arc<TowerDescriptor>) -> Self {
        let mut z = FieldElement::zero(tower);
        if tower.f() > 1 {
            z.num[1] = BigInt::one();
        } else {
            z.num[0] = -tower.unram_poly()[0].clone();
        }
        z
    }

    /// `θ` when `e > 1`, otherwise `p`.
    pub fn uniformizer(tower: &Arc<TowerDescriptor>) -> Self {
        if tower.e() > 1 {
            FieldElement::theta(tower)
        } else {
            FieldElement::from_int(tower, tower.p() as i64)
        }
    }

    pub fn tower(&self) -> &Arc<TowerDescriptor> {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    /// `Some(r)` when the element is the rational `r`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn check_tower(&self, other: &Self) -> Result<()> {
        if same_tower(&self.tower, &other.tower) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        let mut out = self.clone();
        out.add_assign_unchecked(&-other);
        Ok(out)
    }

    pub(crate) fn add_assign_unchecked(&mut self, other: &Self) {
        if self.den == other.den {
            for (a, b) in self.num.iter_mut().zip(&other.num) {
                *a += b;
            }
            if !self.den.is_one() {
                let num = core::mem::take(&mut self.num);
                let den = core::mem::take(&mut self.den);
                *self = FieldElement::build(&self.tower, num, den);
            }
            return;
        }
        let g = self.den.gcd(&other.den);
        let sa = &other.den / &g;
        let sb = &self.den / &g;
        for (a, b) in self.num.iter_mut().zip(&other.num) {
            *a = &*a * &sa + b * &sb;
        }
        let den = &self.den * &sa;
        let num = core::mem::take(&mut self.num);
        *self = FieldElement::build(&self.tower, num, den);
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.check_tower(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        let num = self.num.iter().map(|c| c * r.numer()).collect();
        FieldElement::build(&self.tower, num, &self.den * r.denom())
    }

    fn scale_int(&self, n: &BigInt, d: &BigInt) -> Self {
        let num = self.num.iter().map(|c| c * n).collect();
        FieldElement::build(&self.tower, num, &self.den * d)
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let (f, e) = (self.tower.f(), self.tower.e());
        if self.is_rational() {
            return other.scale_int(&self.num[0], &self.den);
        }
        if other.is_rational() {
            return self.scale_int(&other.num[0], &other.den);
        }
        let g = self.tower.unram_poly();
        let (h, h_den) = self.tower.eis_scaled();
        // product as a θ-polynomial of degree ≤ 2e−2 over Z[ω]
        let mut prod: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); f]; 2 * e - 1];
        for ja in 0..e {
            let a = &self.num[ja * f..(ja + 1) * f];
            if a.iter().all(Zero::is_zero) {
                continue;
            }
            for jb in 0..e {
                let b = &other.num[jb * f..(jb + 1) * f];
                if b.iter().all(Zero::is_zero) {
                    continue;
                }
                let c = omega_mul(a, b, g);
                for (acc, x) in prod[ja + jb].iter_mut().zip(c) {
                    *acc += x;
                }
            }
        }
        let mut den = &self.den * &other.den;
        // θ^e = −Σ_j (h_j / D) θ^j; clear D by scaling everything below
        for k in (e..prod.len()).rev() {
            let top = core::mem::replace(&mut prod[k], vec![BigInt::zero(); f]);
            if top.iter().all(Zero::is_zero) {
                continue;
            }
            if !h_den.is_one() {
                for x in prod[..k].iter_mut().flatten() {
                    *x *= h_den;
                }
                den *= h_den;
            }
            for (j, hj) in h.iter().enumerate() {
                if hj.iter().all(Zero::is_zero) {
                    continue;
                }
                let c = omega_mul(&top, hj, g);
                for (acc, x) in prod[k - e + j].iter_mut().zip(c) {
                    *acc -= x;
                }
            }
        }
        prod.truncate(e);
        FieldElement::build(&self.tower, prod.into_iter().flatten().collect(), den)
    }

    /// Multiplicative inverse, via the regular representation over `Q`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut num = vec![BigInt::zero(); self.num.len()];
            num[0] = self.den.clone();
            return Ok(FieldElement::build(&self.tower, num, self.num[0].clone()));
        }
        let d = self.tower.degree();
        // column k holds self · basis_k
        let mut matrix: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); d + 1]; d];
        for k in 0..d {
            let mut basis = FieldElement::zero(&self.tower);
            basis.num[k] = BigInt::one();
            let col = self.mul_unchecked(&basis).rationals();
            for (row, c) in col.into_iter().enumerate() {
                matrix[row][k] = c;
            }
        }
        matrix[0][d] = BigRational::one();
        let solution = solve(matrix).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement::from_rationals(&self.tower, &solution))
    }

    pub fn pow(&self, mut exp: u64) -> Self {
        let mut acc = FieldElement::one(&self.tower);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Integer power, negative exponents allowed.
    pub fn powi(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            Ok(self.pow(exp as u64))
        } else {
            Ok(self.inv()?.pow(exp.unsigned_abs()))
        }
    }

    /// True iff every power-basis coordinate is `p`-integral.
    pub fn is_integral(&self) -> bool {
        !self.den.is_multiple_of(&BigInt::from(self.tower.p()))
    }

    /// Smallest `p`-adic valuation among the nonzero coordinates.
    fn min_coord_valuation(&self) -> Option<i64> {
        let p = self.tower.p();
        let vnum = self.num.iter().filter_map(|c| rational::int_valuation(c, p)).min()?;
        Some(vnum - rational::int_valuation(&self.den, p).unwrap_or(0))
    }

    /// π-adic valuation normalized so that `v(π) = 1` and `v(p) = e`;
    /// `None` stands for `+∞` (the zero element).
    ///
    /// Starting from `k = e · (min coordinate valuation)`, which is a lower
    /// bound, divide by π while the quotient stays integral. The true value
    /// is below `k + e`, which caps the loop.
    pub fn valuation(&self) -> Option<i64> {
        let vmin = self.min_coord_valuation()?;
        let e = self.tower.e() as i64;
        if e == 1 {
            return Some(vmin);
        }
        let pi_inv = FieldElement::uniformizer(&self.tower)
            .inv()
            .expect("uniformizer is nonzero");
        let mut k = e * vmin;
        let mut current = self.mul_unchecked(&pi_inv.powi(k).expect("π is invertible"));
        debug_assert!(current.is_integral());
        let cap = k + e;
        while k < cap {
            let next = current.mul_unchecked(&pi_inv);
            if !next.is_integral() {
                break;
            }
            current = next;
            k += 1;
        }
        Some(k)
    }

    fn coords_mod_p(&self) -> Result<Vec<u64>> {
        if !self.is_integral() {
            return Err(Error::NotIntegral);
        }
        let p = self.tower.p();
        let pb = BigInt::from(p);
        let den = self.den.mod_floor(&pb).to_u64().expect("reduced");
        let den_inv = rational::inv_mod(den, p);
        Ok(self
            .num
            .iter()
            .map(|c| rational::mul_mod(c.mod_floor(&pb).to_u64().expect("reduced"), den_inv, p))
            .collect())
    }

    /// Image in the residue field: θ ↦ 0, ω ↦ ω̄, rationals mod `p`.
    pub fn residue(&self) -> Result<ResidueElement> {
        let mut coeffs = self.coords_mod_p()?;
        coeffs.truncate(self.tower.f());
        Ok(ResidueElement::new(self.tower.residue_field(), coeffs))
    }

    /// Canonical representative of the class modulo `p`: every coordinate
    /// reduced into `0..p`.
    pub fn reduce_mod_p(&self) -> Result<Self> {
        let num = self.coords_mod_p()?.into_iter().map(BigInt::from).collect();
        Ok(FieldElement {
            tower: self.tower.clone(),
            num,
            den: BigInt::one(),
        })
    }

    /// Reinterpret in a tower that contains this one structurally.
    pub fn embed(&self, target: &Arc<TowerDescriptor>) -> Result<Self> {
        let kind = self.tower.embedding_into(target)?;
        let mut num = vec![BigInt::zero(); target.degree()];
        match kind {
            Embedding::Identity => num.clone_from(&self.num),
            Embedding::Base => num[0] = self.num[0].clone(),
            Embedding::UnramifiedPrefix => {
                for (i, c) in self.num.iter().enumerate() {
                    num[i] = c.clone();
                }
            }
        }
        Ok(FieldElement {
            tower: target.clone(),
            num,
            den: self.den.clone(),
        })
    }
}

/// Product of two elements of `Z[ω]` (coordinate slices of length `f`),
/// reduced by the monic integer polynomial `g`.
fn omega_mul(a: &[BigInt], b: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let f = a.len();
    if f == 1 {
        return vec![&a[0] * &b[0]];
    }
    let mut prod = vec![BigInt::zero(); 2 * f - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            prod[i + j] += x * y;
        }
    }
    for k in (f..prod.len()).rev() {
        let top = core::mem::take(&mut prod[k]);
        if top.is_zero() {
            continue;
        }
        for (j, gj) in g[..f].iter().enumerate() {
            if gj.is_zero() {
                continue;
            }
            prod[k - f + j] -= &top * gj;
        }
    }
    prod.truncate(f);
    prod
}

/// Gauss–Jordan on an augmented `d × (d+1)` system; `None` if singular.
fn solve(mut m: Vec<Vec<BigRational>>) -> Option<Vec<BigRational>> {
    let d = m.len();
    for col in 0..d {
        let pivot = (col..d).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..d {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap_or_default()).collect())
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("tower mismatch in addition")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("tower mismatch in subtraction")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("tower mismatch in multiplication")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement {
            tower: self.tower.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Human-readable form such as `1/2 + 3*w*t^2`, with `w` for ω and `t` for θ.
impl fmt::Display for FieldElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let fdeg = self.tower.f();
        let mut first = true;
        for (k, c) in self.rationals().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (i, j) = (k % fdeg, k / fdeg);
            let negative = rational::is_negative(c);
            let mag = rational::abs(c);
            if first {
                if negative {
                    out.write_str("-")?;
                }
            } else {
                out.write_str(if negative { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            if i > 0 {
                factors.push(if i == 1 { alloc::string::String::from("w") } else { alloc::format!("w^{i}") });
            }
            if j > 0 {
                factors.push(if j == 1 { alloc::string::String::from("t") } else { alloc::format!("t^{j}") });
            }
            if factors.is_empty() {
                write!(out, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(out, "{mag}*")?;
                }
                write!(out, "{}", factors.join("*"))?;
            }
        }
        if first {
            out.write_str("0")?;
        }
        Ok(())
    }
}
