//! Irreducible-polynomial counts and the `ω(n)` / `h(n)` bound.
//!
//! `φ_n(z) = Σ z_d / Σ d·z_d` is maximized over the box `Φ_n` with
//! `0 <= z_1 <= p - 1`, `1 <= z_n <= N_p(n)` and `0 <= z_d <= N_p(d)`
//! otherwise. `z_1` counts the size-one classes inside `L^×`, which is
//! `N_p(1) - 1 = p - 1` (the root of `t` is excluded).

use alloc::vec;
use alloc::vec::Vec;

use alloc::string::String;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

use super::failure::{to_decimal, Rounding};

use crate::gf::{is_prime, KPoly};
use crate::{Error, Result};

/// Largest `p^d` the sieve will allocate.
pub const SIEVE_CAP: u64 = 1 << 22;

/// Monic irreducible counts over `GF(p)`, extended on demand by sieving
/// out every product of a lower-degree irreducible with a monic cofactor.
#[derive(Clone, Debug)]
pub struct IrreducibleCounts {
    p: u32,
    /// `counts[d]`; index 0 unused.
    counts: Vec<u64>,
    irreducibles: Vec<Vec<KPoly>>,
}

impl IrreducibleCounts {
    pub fn new(p: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeP(p));
        }
        Ok(Self {
            p,
            counts: vec![0],
            irreducibles: vec![Vec::new()],
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// `N_p(d)` for `d >= 1`.
    pub fn get(&mut self, d: u32) -> Result<u64> {
        if d == 0 {
            return Err(Error::IntractableSize(
                "irreducible counts start at degree 1",
            ));
        }
        if (self.p as u64).checked_pow(d).is_none_or(|s| s > SIEVE_CAP) {
            return Err(Error::IntractableSize("irreducible sieve exceeds its cap"));
        }
        while self.counts.len() <= d as usize {
            self.sieve_next();
        }
        Ok(self.counts[d as usize])
    }

    fn monic(&self, d: usize, mut idx: u64) -> KPoly {
        let p = self.p as u64;
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push((idx % p) as u32);
            idx /= p;
        }
        coeffs.push(1);
        KPoly::new(coeffs, self.p)
    }

    fn index(&self, poly: &KPoly, d: usize) -> u64 {
        (0..d)
            .rev()
            .fold(0u64, |acc, k| acc * self.p as u64 + poly.coeff(k) as u64)
    }

    fn sieve_next(&mut self) {
        let d = self.counts.len();
        let p = self.p as u64;
        let size = p.pow(d as u32);
        let mut reducible = vec![false; size as usize];
        for a in 1..=d / 2 {
            let cofactors = p.pow((d - a) as u32);
            for f in &self.irreducibles[a] {
                for c in 0..cofactors {
                    let prod = f.mul(&self.monic(d - a, c), self.p);
                    reducible[self.index(&prod, d) as usize] = true;
                }
            }
        }
        let found: Vec<KPoly> = (0..size)
            .filter(|&i| !reducible[i as usize])
            .map(|i| self.monic(d, i))
            .collect();
        self.counts.push(found.len() as u64);
        self.irreducibles.push(found);
    }
}

/// `N_p(d)`.
pub fn count_irreducible(p: u32, d: u32) -> Result<u64> {
    IrreducibleCounts::new(p)?.get(d)
}

/// `φ_n(z)` with `z[d - 1] = z_d`; `None` when every coordinate is zero.
pub fn phi(z: &[u64]) -> Option<Ratio<u64>> {
    let num: u64 = z.iter().sum();
    let den: u64 = z.iter().enumerate().map(|(i, &c)| (i as u64 + 1) * c).sum();
    (den != 0).then(|| Ratio::new(num, den))
}

/// The maximizer of `φ_n` and the cutoff degree that describes it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundRecord {
    pub p: u32,
    pub n: u32,
    pub h: u32,
    pub omega: Ratio<u64>,
    /// `N_p(d)` for `d = 1..=h`.
    pub counts: Vec<u64>,
    /// The optimizer: `ξ_1 = p - 1`, `ξ_d = N_p(d)` for `1 < d <= h`, `ξ_n = 1`.
    pub xi: Vec<u64>,
}

impl BoundRecord {
    pub fn omega_5dp(&self) -> String {
        to_decimal(&to_big(self.omega), 5, Rounding::HalfUp)
    }
}

pub fn to_big(r: Ratio<u64>) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

/// `ω_p(n)` and `h(n)` by the prefix search.
///
/// Appending the `N_p(d)` classes of size `d` raises the ratio iff
/// `1/d > φ`; once that fails it fails for every larger `d`, so the scan
/// stops there and the last accepted `d` is the smallest maximizing cutoff.
pub fn omega_h(p: u32, n: u32) -> Result<BoundRecord> {
    let mut counts = IrreducibleCounts::new(p)?;
    omega_h_with(&mut counts, n)
}

/// [`omega_h`] reusing a shared count cache.
pub fn omega_h_with(counts: &mut IrreducibleCounts, n: u32) -> Result<BoundRecord> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let p = counts.p();
    let z1 = p as u64 - 1;
    let (mut num, mut den) = (z1 + 1, z1 + n as u64);
    let mut found = vec![counts.get(1)?];
    let mut h = 1;
    for d in 2..n {
        if den <= d as u64 * num {
            break;
        }
        let nd = counts.get(d)?;
        num += nd;
        den += d as u64 * nd;
        found.push(nd);
        h = d;
    }
    let mut xi = vec![0u64; n as usize];
    xi[0] = z1;
    xi[1..h as usize].copy_from_slice(&found[1..]);
    xi[n as usize - 1] = 1;
    Ok(BoundRecord {
        p,
        n,
        h,
        omega: Ratio::new(num, den),
        counts: found,
        xi,
    })
}

/// Largest lattice the exhaustive optimizer accepts (`classes × Σz` steps).
pub const BRUTEFORCE_CAP: u64 = 1 << 30;

/// `max φ_n` over all of `Φ_n`, without using the prefix structure.
///
/// Every point of the box is a choice of how many classes of each size to
/// take; `φ_n` only depends on the totals `(Σ z_d, Σ d·z_d)`, so for each
/// attainable `Σ z_d` the smallest attainable `Σ d·z_d` is found by a
/// bounded knapsack over the box and the best ratio among those is returned.
pub fn omega_bruteforce(p: u32, n: u32) -> Result<Ratio<u64>> {
    if n < 2 {
        return Err(Error::DegreeTooSmall(n));
    }
    let mut counts = IrreducibleCounts::new(p)?;
    if (p as u64).checked_pow(n).is_none_or(|s| s > SIEVE_CAP) {
        return Err(Error::IntractableSize(
            "ω brute force needs N_p(n) beyond the sieve cap",
        ));
    }
    // (weight, multiplicity) beyond the forced single class of size n.
    let mut classes = vec![(1u64, p as u64 - 1)];
    for d in 2..n {
        classes.push((d as u64, counts.get(d)?));
    }
    classes.push((n as u64, counts.get(n)? - 1));
    let total: u64 = 1 + classes.iter().map(|c| c.1).sum::<u64>();
    if total.saturating_mul(total) > BRUTEFORCE_CAP {
        return Err(Error::IntractableSize(
            "ω brute force lattice exceeds its cap",
        ));
    }

    const NONE: u64 = u64::MAX;
    let mut best = vec![NONE; total as usize + 1];
    best[1] = n as u64;
    let mut reach = 1usize;
    for &(w, m) in &classes {
        let mut next = best.clone();
        for s in 1..=reach {
            if best[s] == NONE {
                continue;
            }
            for k in 1..=m as usize {
                let cand = best[s] + k as u64 * w;
                if cand < next[s + k] {
                    next[s + k] = cand;
                }
            }
        }
        reach += m as usize;
        best = next;
    }
    Ok(best
        .iter()
        .enumerate()
        .filter(|&(_, &t)| t != NONE)
        .map(|(s, &t)| Ratio::new(s as u64, t))
        .max()
        .expect("z_n = 1 alone is in the box"))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mobius(mut k: u32) -> i64 {
        let mut mu = 1;
        let mut f = 2;
        while f * f <= k {
            if k.is_multiple_of(f) {
                k /= f;
                if k.is_multiple_of(f) {
                    return 0;
                }
                mu = -mu;
            }
            f += 1;
        }
        if k > 1 {
            mu = -mu;
        }
        mu
    }

    fn necklace(p: u32, d: u32) -> u64 {
        let sum: i64 = (1..=d)
            .filter(|k| d.is_multiple_of(*k))
            .map(|k| mobius(k) * (p as i64).pow(d / k))
            .sum();
        (sum / d as i64) as u64
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_irreducible(2, 1).unwrap(), 2);
        assert_eq!(count_irreducible(2, 2).unwrap(), 1);
        assert_eq!(count_irreducible(2, 3).unwrap(), 2);
        assert_eq!(count_irreducible(2, 4).unwrap(), 3);
        assert_eq!(count_irreducible(3, 2).unwrap(), 3);
        assert!(count_irreducible(4, 2).is_err());
    }

    #[test]
    fn sieve_matches_mobius() {
        let mut c = IrreducibleCounts::new(2).unwrap();
        for d in 1..=16 {
            assert_eq!(c.get(d).unwrap(), necklace(2, d), "d={d}");
        }
        for p in [3, 5] {
            let mut c = IrreducibleCounts::new(p).unwrap();
            for d in 1..=6 {
                assert_eq!(c.get(d).unwrap(), necklace(p, d));
            }
        }
        assert!(matches!(
            IrreducibleCounts::new(2).unwrap().get(23),
            Err(Error::IntractableSize(_))
        ));
    }

    #[test]
    fn sieve_matches_ben_or() {
        let mut c = IrreducibleCounts::new(3).unwrap();
        for d in 1..=5u32 {
            let brute = (0..3u64.pow(d))
                .filter(|&i| crate::gf::kpoly_irreducible(&c.monic(d as usize, i), 3))
                .count() as u64;
            assert_eq!(c.get(d).unwrap(), brute);
        }
    }

    #[test]
    fn known_bound_values() {
        let r = omega_h(2, 2).unwrap();
        assert_eq!((r.h, r.omega), (1, Ratio::new(2, 3)));
        assert_eq!(r.xi, vec![1, 1]);
        assert_eq!(omega_h(2, 3).unwrap().h, 1);
        assert_eq!(omega_h(2, 3).unwrap().omega, Ratio::new(1, 2));
        assert_eq!(omega_h(2, 4).unwrap().omega, Ratio::new(3, 7));
        let r = omega_h(2, 6).unwrap();
        assert_eq!((r.h, r.omega), (2, Ratio::new(1, 3)));
        let r = omega_h(2, 7).unwrap();
        assert_eq!((r.h, r.omega), (3, Ratio::new(5, 16)));
        assert_eq!(r.xi, vec![1, 1, 2, 0, 0, 0, 1]);
        assert_eq!(phi(&r.xi), Some(r.omega));
    }

    fn full_scan(p: u32, n: u32) -> (u32, Ratio<u64>) {
        let mut counts = IrreducibleCounts::new(p).unwrap();
        let mut z = vec![0u64; n as usize];
        z[0] = p as u64 - 1;
        z[n as usize - 1] = 1;
        let mut best = (1, phi(&z).unwrap());
        for h in 2..n {
            z[h as usize - 1] = counts.get(h).unwrap();
            let v = phi(&z).unwrap();
            if v > best.1 {
                best = (h, v);
            }
        }
        best
    }

    #[test]
    fn early_stop_equals_full_scan() {
        for n in 2..=18 {
            let r = omega_h(2, n).unwrap();
            assert_eq!((r.h, r.omega), full_scan(2, n), "n={n}");
        }
        for (p, top) in [(3, 12), (5, 9)] {
            for n in 2..=top {
                let r = omega_h(p, n).unwrap();
                assert_eq!((r.h, r.omega), full_scan(p, n), "p={p} n={n}");
            }
        }
    }

    /// Walks every point of `Φ_n` literally.
    fn odometer(n: u32) -> Ratio<u64> {
        let mut c = IrreducibleCounts::new(2).unwrap();
        let mut lo = vec![0u64; n as usize];
        let mut hi = vec![1u64; n as usize];
        for d in 2..=n {
            hi[d as usize - 1] = c.get(d).unwrap();
        }
        lo[n as usize - 1] = 1;
        let mut z = lo.clone();
        let mut best = phi(&z).unwrap();
        'outer: loop {
            let mut i = 0;
            loop {
                if i == z.len() {
                    break 'outer;
                }
                if z[i] < hi[i] {
                    z[i] += 1;
                    break;
                }
                z[i] = lo[i];
                i += 1;
            }
            best = best.max(phi(&z).unwrap());
        }
        best
    }

    #[test]
    fn knapsack_matches_literal_box_walk() {
        for n in 2..=8 {
            assert_eq!(omega_bruteforce(2, n).unwrap(), odometer(n), "n={n}");
        }
    }

    #[test]
    fn structured_search_matches_bruteforce() {
        for n in 2..=8 {
            assert_eq!(
                omega_h(2, n).unwrap().omega,
                omega_bruteforce(2, n).unwrap()
            );
            assert_eq!(
                omega_h(3, n).unwrap().omega,
                omega_bruteforce(3, n).unwrap()
            );
        }
        for n in 2..=6 {
            assert_eq!(
                omega_h(5, n).unwrap().omega,
                omega_bruteforce(5, n).unwrap()
            );
        }
        assert!(matches!(
            omega_bruteforce(2, 30),
            Err(Error::IntractableSize(_))
        ));
    }
}
