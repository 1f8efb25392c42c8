//! Exact failure probabilities of the restricted protocol.
//!
//! With `V(α) = g^s`, `W(α) = y^s (F(α) + r)` and
//! `E(t) = W(t) - V(t)^x (F(t) + r)`, one execution with block `R`
//! succeeds iff `V(R) != 0` and `E(R) = 0`. Over uniform `s ∈ Z_q`,
//! `r ∈ K`, `R ∈ 𝔻_x` the failure fraction is `ε(x)`, and `η` is its mean
//! over `x ∈ Z_q`.

use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::epir::valid_blocks;
use crate::gf::{Elem, FieldCtx, KPoly, LPoly};

/// The success indicator of one restricted execution, evaluated from the
/// polynomials rather than by running the protocol.
pub fn indicator_h(ctx: &FieldCtx, x: u32, f: &LPoly, s: u32, r: u32, block: Elem) -> bool {
    let g = ctx.generator();
    let y = ctx.pow(g, x as u64);
    let shift = ctx.scalar(r);
    let v = ctx.repr_as_kpoly(ctx.pow(g, s as u64));
    let w_at_alpha = ctx.mul(
        ctx.pow(y, s as u64),
        ctx.add(ctx.eval_lpoly(f, ctx.alpha()), shift),
    );
    let w = ctx.repr_as_kpoly(w_at_alpha);
    let vr = ctx.eval_kpoly(&v, block);
    if vr.is_zero() {
        return false;
    }
    let e = ctx.sub(
        ctx.eval_kpoly(&w, block),
        ctx.mul(
            ctx.pow(vr, x as u64),
            ctx.add(ctx.eval_lpoly(f, block), shift),
        ),
    );
    e.is_zero()
}

/// Failure tally for one key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsilonCount {
    pub x: u32,
    /// `|𝔻_x|`.
    pub blocks: u64,
    pub failures: u64,
    /// `p · q · |𝔻_x|`.
    pub trials: u64,
}

impl EpsilonCount {
    pub fn value(&self) -> BigRational {
        BigRational::new(BigInt::from(self.failures), BigInt::from(self.trials))
    }
}

/// `ε(x)` by exhaustive enumeration.
///
/// For each block `R` the map `a ↦ repr(a)(R)` is `K`-linear, so it is
/// tabulated once over all of `L`; each `(s, r, R)` then costs two lookups
/// and a couple of table multiplications.
pub fn epsilon(ctx: &FieldCtx, x: u32, f: &LPoly) -> EpsilonCount {
    let blocks = valid_blocks(ctx, x);
    let (p, q) = (ctx.p(), ctx.q());
    let size = ctx.size() as usize;

    let images: Vec<Vec<Elem>> = blocks.iter().map(|&b| linear_image(ctx, b)).collect();
    let f_at: Vec<Elem> = blocks.iter().map(|&b| ctx.eval_lpoly(f, b)).collect();
    let f_alpha = ctx.eval_lpoly(f, ctx.alpha());
    debug_assert!(images.iter().all(|t| t.len() == size));

    let mut failures = 0u64;
    for s in 0..q {
        let gs = ctx.exp(s as u64);
        let ys = ctx.exp(x as u64 * s as u64);
        for r in 0..p {
            let shift = ctx.scalar(r);
            let w_alpha = ctx.mul(ys, ctx.add(f_alpha, shift));
            for (j, image) in images.iter().enumerate() {
                let vr = image[gs.packed() as usize];
                if vr.is_zero() {
                    failures += 1;
                    continue;
                }
                let wr = image[w_alpha.packed() as usize];
                let rhs = ctx.mul(ctx.pow(vr, x as u64), ctx.add(f_at[j], shift));
                if wr != rhs {
                    failures += 1;
                }
            }
        }
    }
    let n_blocks = blocks.len() as u64;
    EpsilonCount {
        x,
        blocks: n_blocks,
        failures,
        trials: p as u64 * q as u64 * n_blocks,
    }
}

/// `repr(a)(block)` for every packed `a`.
fn linear_image(ctx: &FieldCtx, block: Elem) -> Vec<Elem> {
    let p = ctx.p();
    let n = ctx.n() as usize;
    let mut powers = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    let (mut acc, mut w) = (Elem::ONE, 1u32);
    for _ in 0..n {
        powers.push(acc);
        weights.push(w);
        acc = ctx.mul(acc, block);
        w *= p;
    }
    let mut out = Vec::with_capacity(ctx.size() as usize);
    out.push(Elem::ZERO);
    for a in 1..ctx.size() {
        // Lowest nonzero digit of a.
        let mut j = 0;
        while (a / weights[j]) % p == 0 {
            j += 1;
        }
        let prev = out[(a - weights[j]) as usize];
        out.push(ctx.add(prev, powers[j]));
    }
    out
}

/// `ε` for every key together with their mean `η`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FailureStats {
    pub p: u32,
    pub n: u32,
    pub modulus: KPoly,
    pub f: LPoly,
    pub per_x: Vec<EpsilonCount>,
    pub eta: BigRational,
}

impl FailureStats {
    /// Assembles the statistics from per-key counts in any order.
    pub fn from_counts(ctx: &FieldCtx, f: &LPoly, mut per_x: Vec<EpsilonCount>) -> Self {
        per_x.sort_by_key(|c| c.x);
        let sum = per_x
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c.value());
        let eta = sum / BigRational::from_integer(BigInt::from(ctx.q()));
        Self {
            p: ctx.p(),
            n: ctx.n(),
            modulus: ctx.modulus().clone(),
            f: f.clone(),
            per_x,
            eta,
        }
    }

    pub fn eta_5dp(&self) -> String {
        to_decimal(&self.eta, 5, Rounding::HalfUp)
    }

    pub fn eta_5dp_half_even(&self) -> String {
        to_decimal(&self.eta, 5, Rounding::HalfEven)
    }
}

/// `η(F)` computed sequentially.
pub fn eta(ctx: &FieldCtx, f: &LPoly) -> FailureStats {
    let per_x = (0..ctx.q()).map(|x| epsilon(ctx, x, f)).collect();
    FailureStats::from_counts(ctx, f, per_x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rounding {
    HalfUp,
    HalfEven,
}

/// Fixed-point rendering with `places` digits after the point.
pub fn to_decimal(value: &BigRational, places: u32, mode: Rounding) -> String {
    let scale = BigInt::from(10u32).pow(places);
    let scaled = value.abs() * BigRational::from_integer(scale.clone());
    let floor = scaled.floor().to_integer();
    let frac = scaled - BigRational::from_integer(floor.clone());
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let up = match frac.cmp(&half) {
        core::cmp::Ordering::Greater => true,
        core::cmp::Ordering::Less => false,
        core::cmp::Ordering::Equal => match mode {
            Rounding::HalfUp => true,
            Rounding::HalfEven => (&floor % BigInt::from(2)) == BigInt::from(1),
        },
    };
    let units = if up { floor + 1 } else { floor };
    let int_part = &units / &scale;
    let frac_part = &units % &scale;
    let sign = if value.is_negative() && !units.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return alloc::format!("{sign}{int_part}");
    }
    let digits = alloc::format!("{frac_part}");
    let pad = places as usize - digits.len();
    alloc::format!("{sign}{int_part}.{}{digits}", "0".repeat(pad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epir::run_restricted;
    use crate::gf::text::parse_lpoly;
    use alloc::vec;

    fn ctx(n: u32) -> FieldCtx {
        FieldCtx::new(2, n, crate::builtin_modulus(n).unwrap()).unwrap()
    }

    fn rat(a: i64, b: i64) -> BigRational {
        BigRational::new(BigInt::from(a), BigInt::from(b))
    }

    #[test]
    fn indicator_examples() {
        let c = ctx(3);
        let g = LPoly::constant(c.generator());
        let bad = c.from_coeffs(&[0, 1, 1]).unwrap();
        assert!(!indicator_h(&c, 6, &g, 6, 1, bad));
        for x in 0..7 {
            for s in 0..7 {
                for r in 0..2 {
                    assert!(indicator_h(&c, x, &g, s, r, c.alpha()));
                }
            }
        }
    }

    #[test]
    fn indicator_matches_transcripts_exhaustively_q7() {
        let c = ctx(3);
        let fs = [
            LPoly::constant(c.generator()),
            parse_lpoly(&c, "g^3*t + 1").unwrap(),
        ];
        for f in &fs {
            for x in 0..7 {
                for s in 0..7 {
                    for r in 0..2 {
                        for b in c.nonzero_elements() {
                            let t = run_restricted(&c, x, f, s, r, b).unwrap();
                            if t.plaintext.is_zero() {
                                continue;
                            }
                            assert_eq!(indicator_h(&c, x, f, s, r, b), t.success);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fast_enumeration_matches_indicator() {
        for n in 2..=5 {
            let c = ctx(n);
            let fs = [
                LPoly::constant(c.generator()),
                parse_lpoly(&c, "t^2 + g^5*t + 1").unwrap(),
                parse_lpoly(&c, "t").unwrap(),
            ];
            for f in &fs {
                for x in 0..c.q() {
                    let fast = epsilon(&c, x, f);
                    let mut slow = 0u64;
                    for s in 0..c.q() {
                        for r in 0..2 {
                            for &b in &valid_blocks(&c, x) {
                                slow += !indicator_h(&c, x, f, s, r, b) as u64;
                            }
                        }
                    }
                    assert_eq!(fast.failures, slow, "n={n} x={x}");
                }
            }
        }
    }

    #[test]
    fn odd_characteristic_enumeration_matches_indicator() {
        let c = FieldCtx::new(3, 2, KPoly::new(vec![2, 1, 1], 3)).unwrap();
        let f = LPoly::constant(c.generator());
        for x in 0..c.q() {
            let fast = epsilon(&c, x, &f);
            let mut slow = 0u64;
            for s in 0..c.q() {
                for r in 0..3 {
                    for &b in &valid_blocks(&c, x) {
                        slow += !indicator_h(&c, x, &f, s, r, b) as u64;
                    }
                }
            }
            assert_eq!(fast.failures, slow);
            assert_eq!(fast.trials, 3 * 8 * fast.blocks);
        }
    }

    #[test]
    fn small_tables() {
        let stats = eta(&ctx(2), &LPoly::constant(ctx(2).generator()));
        assert_eq!(stats.eta_5dp(), "0.61111");
        assert_eq!(stats.eta, rat(11, 18));
        assert!(stats.per_x.iter().all(|c| c.failures > 0));
        let stats = eta(&ctx(3), &LPoly::constant(ctx(3).generator()));
        assert_eq!(stats.eta_5dp(), "0.74271");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&rat(1, 8), 2, Rounding::HalfUp), "0.13");
        assert_eq!(to_decimal(&rat(1, 8), 2, Rounding::HalfEven), "0.12");
        assert_eq!(to_decimal(&rat(3, 8), 2, Rounding::HalfEven), "0.38");
        assert_eq!(to_decimal(&rat(2, 3), 5, Rounding::HalfUp), "0.66667");
        assert_eq!(to_decimal(&rat(1, 1), 5, Rounding::HalfUp), "1.00000");
        assert_eq!(to_decimal(&rat(1, 40000), 5, Rounding::HalfUp), "0.00003");
        assert_eq!(to_decimal(&rat(-1, 4), 1, Rounding::HalfUp), "-0.3");
        assert_eq!(to_decimal(&rat(7, 2), 0, Rounding::HalfEven), "4");
    }
}
