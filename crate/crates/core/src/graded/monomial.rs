use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

/// A monomial `v_1^{a_1} ⋯ v_k^{a_k}`.
///
/// Exponents are stored densely (`exps[i]` belongs to `v_{i+1}`) with
/// trailing zeros trimmed, so the vector length is the largest index present.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<u64>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The generator `v_n`, `n ≥ 1`.
    pub fn var(n: usize) -> Self {
        assert!(n >= 1, "generators are indexed from 1");
        let mut exps = alloc::vec![0; n];
        exps[n - 1] = 1;
        Monomial { exps }
    }

    /// From `(index, exponent)` pairs; repeated indices accumulate.
    pub fn from_pairs(pairs: &[(usize, u64)]) -> Self {
        let mut exps = Vec::new();
        for &(n, a) in pairs {
            assert!(n >= 1, "generators are indexed from 1");
            if exps.len() < n {
                exps.resize(n, 0);
            }
            exps[n - 1] += a;
        }
        Monomial::from_dense(exps)
    }

    /// From a dense exponent vector (entry `i` belongs to `v_{i+1}`).
    pub fn from_dense(mut exps: Vec<u64>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        Monomial { exps }
    }

    pub fn dense(&self) -> &[u64] {
        &self.exps
    }

    pub fn exponent(&self, n: usize) -> u64 {
        n.checked_sub(1).and_then(|i| self.exps.get(i)).copied().unwrap_or(0)
    }

    /// Largest generator index present, 0 for the unit monomial.
    pub fn max_index(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Nonzero `(index, exponent)` pairs in increasing index order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| (i + 1, a))
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (long, short) = if self.exps.len() >= other.exps.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut exps = long.exps.clone();
        for (a, b) in exps.iter_mut().zip(&short.exps) {
            *a += b;
        }
        Monomial { exps }
    }

    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            exps: self.exps.iter().map(|a| a * k).collect(),
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.exps.len() <= other.exps.len() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` if `self` divides `other`.
    pub fn quotient_of(&self, other: &Self) -> Option<Self> {
        if !self.divides(other) {
            return None;
        }
        let mut exps = other.exps.clone();
        for (a, b) in exps.iter_mut().zip(&self.exps) {
            *a -= b;
        }
        Some(Monomial::from_dense(exps))
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let len = self.exps.len().max(other.exps.len());
        let exps = (0..len)
            .map(|i| {
                let a = self.exps.get(i).copied().unwrap_or(0);
                let b = other.exps.get(i).copied().unwrap_or(0);
                a.max(b)
            })
            .collect();
        Monomial { exps }
    }

    /// True if some `v_i` with `i < n` occurs.
    pub fn involves_below(&self, n: usize) -> bool {
        self.exps.iter().take(n.saturating_sub(1)).any(|&a| a > 0)
    }

    /// `Σ a_n (q^n − 1)`, or `None` on overflow.
    pub fn weight(&self, q: u64) -> Option<u64> {
        let mut total: u64 = 0;
        let mut qn: u64 = 1;
        for &a in &self.exps {
            qn = qn.checked_mul(q)?;
            total = total.checked_add(a.checked_mul(qn - 1)?)?;
        }
        Some(total)
    }
}

/// The monomial order: exponents are compared from the largest generator
/// index downwards, and the first difference decides.
pub fn compare_monomials(x: &Monomial, y: &Monomial) -> Ordering {
    x.exps
        .len()
        .cmp(&y.exps.len())
        .then_with(|| x.exps.iter().rev().cmp(y.exps.iter().rev()))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        compare_monomials(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (n, a) in self.pairs() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if a == 1 {
                write!(f, "v{n}")?;
            } else {
                write!(f, "v{n}^{a}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
