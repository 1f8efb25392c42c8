use alloc::vec;

use super::poly::KPoly;
use super::{is_prime, prime_factors};

/// Ben-Or irreducibility test over `GF(p)`: `P` of degree `d` is irreducible
/// iff `gcd(t^(p^i) - t, P) = 1` for every `1 <= i <= d/2`.
///
/// Constants and the zero polynomial are not irreducible.
pub fn kpoly_irreducible(poly: &KPoly, p: u32) -> bool {
    let Some(d) = poly.degree() else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let t = KPoly::t();
    let mut h = t.clone();
    for _ in 1..=d / 2 {
        h = h.pow_mod(p as u64, poly, p);
        let g = h.sub(&t, p).gcd(poly, p);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// The smallest primitive monic polynomial of degree `n` over `GF(p)`, in
/// the order of its coefficient vector read as a base-`p` number.
///
/// Returns `None` if `p` is not prime, `n < 1`, or `p^n` overflows `u64`.
pub fn find_primitive_modulus(p: u32, n: u32) -> Option<KPoly> {
    if !is_prime(p) || n < 1 {
        return None;
    }
    let q = (p as u64).checked_pow(n)? - 1;
    let q32 = u32::try_from(q).ok()?;
    let factors = prime_factors(q32);
    let count = (p as u64).checked_pow(n)?;
    (0..count).find_map(|low| {
        let mut coeffs = vec![0u32; n as usize + 1];
        let mut rest = low;
        for c in coeffs.iter_mut().take(n as usize) {
            *c = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        coeffs[n as usize] = 1;
        let cand = KPoly::new(coeffs, p);
        if cand.coeff(0) == 0 || !kpoly_irreducible(&cand, p) {
            return None;
        }
        let t = KPoly::t();
        let one = KPoly::one();
        let primitive = factors
            .iter()
            .all(|&l| t.pow_mod(q / l as u64, &cand, p) != one);
        primitive.then_some(cand)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    /// Exhaustive factor search: some monic factor of degree 1..=d/2 divides.
    fn reducible_by_search(poly: &KPoly, p: u32) -> bool {
        let d = poly.degree().unwrap();
        for k in 1..=d / 2 {
            for low in 0..(p as u64).pow(k as u32) {
                let mut coeffs: Vec<u32> = Vec::new();
                let mut rest = low;
                for _ in 0..k {
                    coeffs.push((rest % p as u64) as u32);
                    rest /= p as u64;
                }
                coeffs.push(1);
                let f = KPoly::new(coeffs, p);
                if poly.rem(&f, p).unwrap().is_zero() {
                    return true;
                }
            }
        }
        false
    }

    fn monic(p: u32, d: u32) -> impl Iterator<Item = KPoly> {
        (0..(p as u64).pow(d)).map(move |low| {
            let mut coeffs = Vec::new();
            let mut rest = low;
            for _ in 0..d {
                coeffs.push((rest % p as u64) as u32);
                rest /= p as u64;
            }
            coeffs.push(1);
            KPoly::new(coeffs, p)
        })
    }

    #[test]
    fn examples() {
        assert!(kpoly_irreducible(&KPoly::new(vec![1, 1, 0, 1], 2), 2));
        assert!(!kpoly_irreducible(&KPoly::new(vec![1, 0, 1], 2), 2));
        assert!(!kpoly_irreducible(&KPoly::one(), 2));
        assert!(!kpoly_irreducible(&KPoly::zero(), 2));
    }

    #[test]
    fn degree_four_binary_count_by_factor_search() {
        let by_search = monic(2, 4).filter(|f| !reducible_by_search(f, 2)).count();
        assert_eq!(by_search, 3);
        assert_eq!(monic(2, 4).filter(|f| kpoly_irreducible(f, 2)).count(), 3);
    }

    #[test]
    fn ben_or_agrees_with_factor_search() {
        for (p, dmax) in [(2u32, 8u32), (3, 5), (5, 3)] {
            for d in 2..=dmax {
                for f in monic(p, d) {
                    assert_eq!(
                        kpoly_irreducible(&f, p),
                        !reducible_by_search(&f, p),
                        "{f:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn primitive_search() {
        assert_eq!(
            find_primitive_modulus(2, 3),
            Some(KPoly::new(vec![1, 1, 0, 1], 2))
        );
        assert_eq!(
            find_primitive_modulus(3, 2),
            Some(KPoly::new(vec![2, 1, 1], 3))
        );
        assert_eq!(find_primitive_modulus(4, 2), None);
    }
}
