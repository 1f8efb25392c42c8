use crate::gf::KPoly;

/// Extension degrees with a built-in binary modulus.
pub const BUILTIN_DEGREES: core::ops::RangeInclusive<u32> = 2..=9;

/// Exponents of the nonzero terms of each built-in modulus, highest first.
const MODULI: [&[u32]; 8] = [
    &[2, 1, 0],
    &[3, 1, 0],
    &[4, 1, 0],
    &[5, 2, 0],
    &[6, 4, 3, 1, 0],
    &[7, 1, 0],
    &[8, 4, 3, 2, 0],
    &[9, 4, 0],
];

/// The primitive binary modulus used for `GF(2^n)`, `2 <= n <= 9`.
pub fn builtin_modulus(n: u32) -> Option<KPoly> {
    if !BUILTIN_DEGREES.contains(&n) {
        return None;
    }
    let terms = MODULI[(n - 2) as usize];
    let mut coeffs = alloc::vec![0u32; n as usize + 1];
    for &e in terms {
        coeffs[e as usize] = 1;
    }
    Some(KPoly::new(coeffs, 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::FieldCtx;

    #[test]
    fn every_builtin_modulus_is_primitive() {
        for n in BUILTIN_DEGREES {
            let m = builtin_modulus(n).unwrap();
            assert_eq!(m.degree(), Some(n as usize));
            let ctx = FieldCtx::new(2, n, m).unwrap();
            assert!(ctx.alpha_is_primitive(), "n = {n}");
        }
        assert!(builtin_modulus(10).is_none());
        assert!(builtin_modulus(1).is_none());
    }
}
