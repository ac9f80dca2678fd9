//! Small helpers on arbitrary-precision rationals shared by the modules.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// `p`-adic valuation of a nonzero integer.
pub(crate) fn int_valuation(x: &BigInt, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut x = x.clone();
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational (assumed in lowest terms).
#[cfg(test)]
pub(crate) fn valuation(x: &BigRational, p: u64) -> Option<i64> {
    let num = int_valuation(x.numer(), p)?;
    let den = int_valuation(x.denom(), p).unwrap_or(0);
    Some(num - den)
}

pub(crate) fn is_p_integral(x: &BigRational, p: u64) -> bool {
    x.denom() % BigInt::from(p) != BigInt::zero()
}

/// Reduce a `p`-integral rational to `0..p`.
pub(crate) fn mod_p(x: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = x.denom().mod_floor(&pb);
    if den.is_zero() {
        return None;
    }
    let num = x.numer().mod_floor(&pb).to_u64()?;
    let den = den.to_u64()?;
    Some(mul_mod(num, inv_mod(den, p), p))
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse modulo a prime via Fermat.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
pub(crate) fn from_int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub(crate) fn pow_big(p: u64, k: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), k as usize)
}

pub(crate) fn is_negative(x: &BigRational) -> bool {
    x.numer().sign() == Sign::Minus
}

pub(crate) fn abs(x: &BigRational) -> BigRational {
    x.abs()
}
