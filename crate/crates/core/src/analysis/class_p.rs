//! The class `𝒫` of polynomials with exactly one primitive coefficient and
//! every other coefficient in `K`, and the per-class root property of
//! `E(t)` that the failure bounds rest on.

use alloc::vec::Vec;

use super::cosets::{decompose, CosetDecomposition};
use crate::gf::{FieldCtx, LPoly};
use crate::{Error, Result};

/// Whether `f` has exactly one coefficient outside `K` and it is primitive.
///
/// A primitive element of `L` never lies in `K` once `n >= 2`, so the
/// coefficient of the definition is necessarily that one.
pub fn in_class_p(ctx: &FieldCtx, f: &LPoly) -> bool {
    let mut outside = f.coeffs().iter().filter(|&&c| !ctx.in_base_field(c));
    match (outside.next(), outside.next()) {
        (Some(&c), None) => ctx.is_primitive(c).unwrap_or(false),
        _ => false,
    }
}

/// Tally for one conjugacy class `D_u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassRoots {
    pub rep: u32,
    pub size: usize,
    /// Members with `V(β) = 0`.
    pub v_zeros: usize,
    /// Members with `E(β) = 0`.
    pub roots: usize,
}

impl ClassRoots {
    /// `V` vanishes on the whole class, or `E` has at most one root in it.
    pub fn holds(&self) -> bool {
        self.v_zeros == self.size || self.roots <= 1
    }
}

/// Root counts of `V` and `E` on each class of `𝔻_x`, for any `f`.
pub fn root_report(
    ctx: &FieldCtx,
    decomp: &CosetDecomposition,
    f: &LPoly,
    s: u32,
    r: u32,
) -> Vec<ClassRoots> {
    let g = ctx.generator();
    let x = decomp.x;
    let shift = ctx.scalar(r);
    let v = ctx.repr_as_kpoly(ctx.pow(g, s as u64));
    let w_alpha = ctx.mul(
        ctx.pow(g, x as u64 * s as u64),
        ctx.add(ctx.eval_lpoly(f, ctx.alpha()), shift),
    );
    let w = ctx.repr_as_kpoly(w_alpha);
    decomp
        .reps
        .iter()
        .zip(&decomp.classes)
        .map(|(&rep, class)| {
            let mut tally = ClassRoots {
                rep,
                size: class.len(),
                v_zeros: 0,
                roots: 0,
            };
            for &beta in class {
                let vb = ctx.eval_kpoly(&v, beta);
                tally.v_zeros += vb.is_zero() as usize;
                let rhs = ctx.mul(
                    ctx.pow(vb, x as u64),
                    ctx.add(ctx.eval_lpoly(f, beta), shift),
                );
                tally.roots += (ctx.eval_kpoly(&w, beta) == rhs) as usize;
            }
            tally
        })
        .collect()
}

/// [`root_report`] for key `x`, failing with [`Error::LemmaViolation`] on the
/// first class where the root property breaks.
pub fn lemma_root_check(
    ctx: &FieldCtx,
    x: u32,
    f: &LPoly,
    s: u32,
    r: u32,
) -> Result<Vec<ClassRoots>> {
    let decomp = decompose(ctx, x)?;
    let report = root_report(ctx, &decomp, f, s, r);
    match report.iter().find(|c| !c.holds()) {
        Some(c) => Err(Error::LemmaViolation {
            x,
            s,
            r,
            rep: c.rep,
            roots: c.roots,
        }),
        None => Ok(report),
    }
}

/// `g`, `g·t + 1` and `t^2 + t + g^(-1)`: three members of `𝒫` that exist
/// in every field with a primitive generator.
pub fn sample_members(ctx: &FieldCtx) -> Vec<LPoly> {
    let g = ctx.generator();
    let g_inv = ctx.inv(g).expect("generator is nonzero");
    let one = crate::gf::Elem::ONE;
    alloc::vec![
        LPoly::constant(g),
        LPoly::new(alloc::vec![one, g]),
        LPoly::new(alloc::vec![g_inv, one, one]),
    ]
}
