//! Polynomials over `K = GF(p)` and over `L = GF(p^n)`.
//!
//! Both types keep their coefficients lowest degree first with no trailing
//! zero, so the zero polynomial is the empty vector and equality is
//! structural.

use alloc::vec;
use alloc::vec::Vec;

use super::Elem;

/// A polynomial with coefficients in `GF(p)`.
///
/// The characteristic is not stored; arithmetic takes it as an argument.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KPoly {
    coeffs: Vec<u32>,
}

impl KPoly {
    /// Reduces every coefficient mod `p` and trims trailing zeros.
    pub fn new(mut coeffs: Vec<u32>, p: u32) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        Self::trimmed(coeffs)
    }

    fn trimmed(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self { coeffs: vec![0, 1] }
    }

    /// `c · t^k`.
    pub fn monomial(c: u32, k: usize, p: u32) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Self::new(coeffs, p)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<u32> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(1)
    }

    /// Coefficient of `t^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> u32 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self, p: u32) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| (self.coeff(k) + other.coeff(k)) % p)
            .collect();
        Self::trimmed(coeffs)
    }

    pub fn sub(&self, other: &Self, p: u32) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|k| (self.coeff(k) + p - other.coeff(k)) % p)
            .collect();
        Self::trimmed(coeffs)
    }

    pub fn scale(&self, c: u32, p: u32) -> Self {
        let c = c % p;
        Self::trimmed(
            self.coeffs
                .iter()
                .map(|&a| ((a as u64 * c as u64) % p as u64) as u32)
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self, p: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % p as u64;
            }
        }
        Self::trimmed(out.into_iter().map(|c| c as u32).collect())
    }

    /// Euclidean division; `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self, p: u32) -> Option<(Self, Self)> {
        let dd = divisor.degree()?;
        let lead_inv = inv_mod(divisor.leading()?, p);
        let mut rem: Vec<u64> = self.coeffs.iter().map(|&c| c as u64).collect();
        if rem.len() <= dd {
            return Some((Self::zero(), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        let p64 = p as u64;
        for k in (dd..rem.len()).rev() {
            let c = rem[k] % p64;
            if c == 0 {
                continue;
            }
            let f = c * lead_inv as u64 % p64;
            quot[k - dd] = f as u32;
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + j;
                rem[idx] = (rem[idx] + p64 - f * b as u64 % p64) % p64;
            }
        }
        rem.truncate(dd);
        Some((
            Self::trimmed(quot),
            Self::trimmed(rem.into_iter().map(|c| c as u32).collect()),
        ))
    }

    pub fn rem(&self, divisor: &Self, p: u32) -> Option<Self> {
        self.div_rem(divisor, p).map(|(_, r)| r)
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Self, p: u32) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p).expect("b is nonzero");
            a = b;
            b = r;
        }
        match a.leading() {
            Some(l) => a.scale(inv_mod(l, p), p),
            None => a,
        }
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Self, p: u32) -> Self {
        let mut base = self.rem(modulus, p).expect("nonzero modulus");
        let mut acc = Self::one().rem(modulus, p).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, p).rem(modulus, p).expect("nonzero modulus");
            }
            base = base.mul(&base, p).rem(modulus, p).expect("nonzero modulus");
            e >>= 1;
        }
        acc
    }

    /// Evaluates at a point of `GF(p)`.
    pub fn eval_k(&self, at: u32, p: u32) -> u32 {
        let p64 = p as u64;
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| (acc * at as u64 + c as u64) % p64) as u32
    }
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut base, mut e, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// A polynomial with coefficients in `L`; the functions `F(t)` the user
/// evaluates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LPoly {
    coeffs: Vec<Elem>,
}

impl LPoly {
    pub fn new(mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: Elem) -> Self {
        Self::new(vec![c])
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Elem {
        self.coeffs.get(k).copied().unwrap_or(Elem::ZERO)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_trims() {
        assert_eq!(KPoly::new(vec![1, 0, 2, 0], 2), KPoly::new(vec![1], 2));
        assert!(KPoly::new(vec![3, 6], 3).is_zero());
        assert_eq!(KPoly::zero().degree(), None);
        assert_eq!(LPoly::new(vec![Elem::ONE, Elem::ZERO]).degree(), Some(0));
    }

    #[test]
    fn division_identity() {
        let p = 3;
        let a = KPoly::new(vec![2, 0, 1, 1, 2, 1], p);
        let b = KPoly::new(vec![1, 2, 1], p);
        let (q, r) = a.div_rem(&b, p).unwrap();
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(q.mul(&b, p).add(&r, p), a);
    }

    #[test]
    fn gcd_of_shared_factor() {
        let p = 2;
        let f = KPoly::new(vec![1, 1, 0, 1], p); // t^3+t+1
        let a = f.mul(&KPoly::new(vec![1, 1], p), p);
        let b = f.mul(&KPoly::new(vec![0, 1], p), p);
        assert_eq!(a.gcd(&b, p), f);
    }

    #[test]
    fn inverse_mod_prime() {
        for p in [2u32, 3, 5, 7, 13] {
            for a in 1..p {
                assert_eq!(a * inv_mod(a, p) % p, 1);
            }
        }
    }
}
