//! Arithmetic in `K = GF(p)` and `L = GF(p^n) = K[t]/(m(t))`.
//!
//! An element of `L` is stored packed in a `u32`: the coefficient of `α^j`
//! (α being the class of `t`) is base-`p` digit `j`. For `p = 2` this is the
//! usual bitmask and addition is XOR. Multiplication goes through log and
//! antilog tables relative to a generator `g` of `L^×`; when the modulus is
//! primitive, `g = α`.

mod irreducible;
mod poly;
pub mod text;

use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

pub use irreducible::{find_primitive_modulus, kpoly_irreducible};
pub use poly::{KPoly, LPoly};

use crate::{Error, Result};

/// Largest field order `p^n` for which tables are built by default.
pub const DEFAULT_TABLE_CAP: u32 = 1 << 20;

/// An element of `L`, packed as base-`p` digits of its coordinates in the
/// power basis `1, α, …, α^(n-1)`.
///
/// An `Elem` is only meaningful together with the [`FieldCtx`] that made it.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn packed(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

pub(crate) fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut m: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= m as u64 {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// An extension field `GF(p^n)` with precomputed tables. Immutable once
/// built, so one context can be shared by any number of workers.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    size: u32,
    q: u32,
    modulus: KPoly,
    /// `p^j` for `j = 0..n`.
    digit_weight: Vec<u32>,
    /// Packed `-(m(t) - t^n)`: what `α^n` reduces to.
    alpha_n: u32,
    /// `log[a]` for packed `a != 0`; `log[0]` is unused.
    log: Vec<u32>,
    /// `antilog[k] = g^k` for `k` in `0..q`.
    antilog: Vec<u32>,
    generator: Elem,
    alpha_primitive: bool,
}

impl FieldCtx {
    /// Builds `GF(p^n)` from a monic irreducible modulus of degree `n`.
    pub fn new(p: u32, n: u32, modulus: KPoly) -> Result<Self> {
        Self::with_cap(p, n, modulus, DEFAULT_TABLE_CAP)
    }

    pub fn with_cap(p: u32, n: u32, modulus: KPoly, cap: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        if n < 2 {
            return Err(Error::DegreeTooSmall(n));
        }
        if modulus.degree() != Some(n as usize)
            || !modulus.is_monic()
            || modulus.coeffs().iter().any(|&c| c >= p)
        {
            return Err(Error::InvalidModulus { expected: n });
        }
        let size = (p as u64)
            .checked_pow(n)
            .filter(|&s| s <= cap as u64)
            .ok_or(Error::TableCapExceeded { p, n, cap })? as u32;
        if !kpoly_irreducible(&modulus, p) {
            return Err(Error::ReducibleModulus { p });
        }

        let digit_weight: Vec<u32> = (0..=n).map(|j| p.pow(j)).collect();
        let mut alpha_n = 0u32;
        for j in 0..n as usize {
            let c = (p - modulus.coeff(j)) % p;
            alpha_n += c * digit_weight[j];
        }
        let mut ctx = FieldCtx {
            p,
            n,
            size,
            q: size - 1,
            modulus,
            digit_weight,
            alpha_n,
            log: Vec::new(),
            antilog: Vec::new(),
            generator: Elem(p),
            alpha_primitive: false,
        };
        ctx.build_tables();
        Ok(ctx)
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let mut antilog = Vec::with_capacity(q);
        let mut a = 1u32;
        loop {
            antilog.push(a);
            a = self.mul_alpha(a);
            if a == 1 {
                break;
            }
        }
        self.alpha_primitive = antilog.len() == q;
        if !self.alpha_primitive {
            let g = self.search_generator();
            antilog.clear();
            let mut a = 1u32;
            for _ in 0..q {
                antilog.push(a);
                a = self.mul_slow(a, g);
            }
            self.generator = Elem(g);
        }
        let mut log = vec![0u32; self.size as usize];
        for (k, &a) in antilog.iter().enumerate() {
            log[a as usize] = k as u32;
        }
        self.log = log;
        self.antilog = antilog;
    }

    /// Smallest packed generator of `L^×`, using table-free arithmetic.
    fn search_generator(&self) -> u32 {
        let factors = prime_factors(self.q);
        (2..self.size)
            .find(|&c| {
                factors
                    .iter()
                    .all(|&l| self.pow_slow(c, (self.q / l) as u64) != 1)
            })
            .expect("L^× is cyclic")
    }

    fn mul_alpha(&self, a: u32) -> u32 {
        let top_w = self.digit_weight[self.n as usize - 1];
        let top = a / top_w;
        let shifted = (a % top_w) * self.p;
        if top == 0 {
            shifted
        } else {
            self.add_packed(shifted, self.scale_packed(self.alpha_n, top))
        }
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let mut acc = 0u32;
        let mut shifted = a;
        let mut rest = b;
        for _ in 0..self.n {
            let d = rest % self.p;
            rest /= self.p;
            if d != 0 {
                acc = self.add_packed(acc, self.scale_packed(shifted, d));
            }
            shifted = self.mul_alpha(shifted);
        }
        acc
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    #[inline]
    fn add_packed(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut out) = (a, b, 0u32);
        for &w in &self.digit_weight[..self.n as usize] {
            out += ((a % self.p + b % self.p) % self.p) * w;
            a /= self.p;
            b /= self.p;
        }
        out
    }

    #[inline]
    fn scale_packed(&self, a: u32, c: u32) -> u32 {
        if self.p == 2 {
            return if c & 1 == 1 { a } else { 0 };
        }
        let (mut a, mut out) = (a, 0u32);
        for &w in &self.digit_weight[..self.n as usize] {
            out += ((a % self.p) as u64 * c as u64 % self.p as u64) as u32 * w;
            a /= self.p;
        }
        out
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Order of `L^×`, `p^n - 1`.
    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of field elements, `p^n`.
    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn modulus(&self) -> &KPoly {
        &self.modulus
    }

    /// The class of `t`.
    pub fn alpha(&self) -> Elem {
        Elem(self.p)
    }

    /// The generator the log tables are built on; equals [`Self::alpha`]
    /// when the modulus is primitive.
    pub fn generator(&self) -> Elem {
        self.generator
    }

    pub fn alpha_is_primitive(&self) -> bool {
        self.alpha_primitive
    }

    /// Checked conversion from the packed encoding.
    pub fn elem(&self, packed: u32) -> Result<Elem> {
        if packed < self.size {
            Ok(Elem(packed))
        } else {
            Err(Error::InvalidElement {
                value: packed as u64,
            })
        }
    }

    /// The element with coordinates `coeffs` (missing high coordinates are zero).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() > self.n as usize {
            return Err(Error::InvalidElement {
                value: coeffs.len() as u64,
            });
        }
        let mut v = 0u32;
        for (j, &c) in coeffs.iter().enumerate() {
            if c >= self.p {
                return Err(Error::InvalidElement { value: c as u64 });
            }
            v += c * self.digit_weight[j];
        }
        Ok(Elem(v))
    }

    /// Coordinates in the power basis; always length `n`.
    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let mut v = a.0;
        (0..self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    /// Embeds `c mod p` as a constant of `L`.
    pub fn scalar(&self, c: u32) -> Elem {
        Elem(c % self.p)
    }

    /// Whether `a` lies in the prime subfield `K`.
    pub fn in_base_field(&self, a: Elem) -> bool {
        a.0 < self.p
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size).map(Elem)
    }

    /// The elements of `L^×` in packed order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.size).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.add_packed(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            a
        } else {
            Elem(self.scale_packed(a.0, self.p - 1))
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        let k = if k >= self.q { k - self.q } else { k };
        Elem(self.antilog[k as usize])
    }

    /// `a^e`, with `0^0 = 1`.
    #[inline]
    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if a.0 == 0 {
            return if e == 0 { Elem::ONE } else { Elem::ZERO };
        }
        let k = (self.log[a.0 as usize] as u64 * (e % self.q as u64)) % self.q as u64;
        Elem(self.antilog[k as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let k = (self.q - self.log[a.0 as usize]) % self.q;
        Ok(Elem(self.antilog[k as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `g^k` for the table generator, `k` taken mod `q`.
    #[inline]
    pub fn exp(&self, k: u64) -> Elem {
        Elem(self.antilog[(k % self.q as u64) as usize])
    }

    /// Discrete log to the base [`Self::generator`]; `None` for zero.
    #[inline]
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// Multiplicative order.
    pub fn order(&self, a: Elem) -> Result<u32> {
        let k = self.log(a).ok_or(Error::ZeroElement)?;
        Ok(self.q / k.gcd(&self.q))
    }

    pub fn is_primitive(&self, a: Elem) -> Result<bool> {
        Ok(self.order(a)? == self.q)
    }

    /// `a^p`.
    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.p as u64)
    }

    /// The unique `P ∈ K[t]`, `deg P < n`, with `P(α) = a`.
    pub fn repr_as_kpoly(&self, a: Elem) -> KPoly {
        KPoly::new(self.coeffs(a), self.p)
    }

    /// The element `P(α)`: coefficients of `P` reduced mod the modulus.
    pub fn kpoly_at_alpha(&self, poly: &KPoly) -> Elem {
        self.eval_kpoly(poly, self.alpha())
    }

    /// Horner evaluation of a `K`-polynomial at `at`.
    pub fn eval_kpoly(&self, poly: &KPoly, at: Elem) -> Elem {
        poly.coeffs().iter().rev().fold(Elem::ZERO, |acc, &c| {
            self.add(self.mul(acc, at), self.scalar(c))
        })
    }

    /// Horner evaluation of an `L`-polynomial at `at`.
    pub fn eval_lpoly(&self, poly: &LPoly, at: Elem) -> Elem {
        poly.coeffs()
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| self.add(self.mul(acc, at), c))
    }

    /// Lifts a `K`-polynomial to `L[t]`.
    pub fn lift(&self, poly: &KPoly) -> LPoly {
        LPoly::new(poly.coeffs().iter().map(|&c| self.scalar(c)).collect())
    }
}
